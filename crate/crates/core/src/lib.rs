//! Finite racks, twisted homogeneous racks over alternating groups, and
//! verifiable type D certificates.

pub mod certfile;
pub mod cocycle;
pub mod constructions;
pub mod descriptor;
pub mod perm;
pub mod rack;
pub mod report;
pub mod status;
pub mod type_d;
