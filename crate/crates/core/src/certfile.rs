//! Certificate documents: JSON files carrying a type D certificate with its
//! rack descriptor, every element written as a tuple of strings.
//!
//! ```json
//! {
//!   "schema": "1",
//!   "rack": "alt6:2:iota:(1 2):(3 4)(5 6)",
//!   "generator": "iota_222",
//!   "parameters": {},
//!   "r": ["(3 4)(5 6)", "e"],
//!   "s": ["(3 4 5)", "(4 5 6)"],
//!   "R": [["(3 4)(5 6)", "e"], ...],
//!   "S": [["(3 4 5)", "(4 5 6)"], ...]
//! }
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{ConstructionError, THRack};
use crate::descriptor::{AnyRack, ElementCodec, RackDescriptor};
use crate::rack::{Rack, RackElement};
use crate::type_d::{verify_certificate, CertificateError, CertificateVerdict, Generator, TypeDCertificate};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub schema: String,
    pub rack: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(default)]
    pub parameters: BTreeMap<String, String>,
    pub r: Vec<String>,
    pub s: Vec<String>,
    #[serde(rename = "R")]
    pub r_block: Vec<Vec<String>>,
    #[serde(rename = "S")]
    pub s_block: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum CertFileError {
    #[error("malformed certificate document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate schema {0:?}")]
    UnsupportedSchema(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}

/// Result of checking a document against its rack.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DocumentVerdict {
    Valid,
    /// An element of the document is not in the rack.
    NonMember(String),
    /// A certificate invariant fails.
    Invalid(String),
}

impl DocumentVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, DocumentVerdict::Valid)
    }
}

impl CertificateDocument {
    pub fn from_certificate<E: ElementCodec>(
        cert: &TypeDCertificate<E>,
        generator: Option<Generator>,
        parameters: BTreeMap<String, String>,
    ) -> Self {
        CertificateDocument {
            schema: SCHEMA_VERSION.to_string(),
            rack: cert.rack.clone(),
            generator,
            parameters,
            r: cert.r.encode(),
            s: cert.s.encode(),
            r_block: cert.r_block.iter().map(E::encode).collect(),
            s_block: cert.s_block.iter().map(E::encode).collect(),
        }
    }

    /// A document from an already encoded certificate.
    pub fn from_encoded(cert: TypeDCertificate<Vec<String>>) -> Self {
        CertificateDocument {
            schema: SCHEMA_VERSION.to_string(),
            rack: cert.rack,
            generator: None,
            parameters: BTreeMap::new(),
            r: cert.r,
            s: cert.s,
            r_block: cert.r_block.into_iter().collect(),
            s_block: cert.s_block.into_iter().collect(),
        }
    }

    pub fn decode<E: ElementCodec + Ord>(&self, degree: usize) -> Result<TypeDCertificate<E>, ConstructionError> {
        let block = |rows: &[Vec<String>]| rows.iter().map(|p| E::decode(p, degree)).collect::<Result<BTreeSet<E>, _>>();
        Ok(TypeDCertificate {
            rack: self.rack.clone(),
            r_block: block(&self.r_block)?,
            s_block: block(&self.s_block)?,
            r: E::decode(&self.r, degree)?,
            s: E::decode(&self.s, degree)?,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self, CertFileError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        match value.get("schema").and_then(|s| s.as_str()) {
            Some(SCHEMA_VERSION) => {}
            Some(other) => return Err(CertFileError::UnsupportedSchema(other.to_string())),
            None => return Err(CertFileError::UnsupportedSchema(String::new())),
        }
        Ok(serde_json::from_value(value)?)
    }

    /// Parses the rack descriptor and checks the certificate against it.
    /// Twisted homogeneous racks are checked lazily by membership; other
    /// racks are enumerated up to `cap` elements.
    pub fn verify(&self, cap: u128) -> Result<DocumentVerdict, CertFileError> {
        let descriptor: RackDescriptor = self.rack.parse()?;
        let degree = descriptor.degree();
        match descriptor {
            RackDescriptor::TwistedHomogeneous(spec) => check(&THRack::new(spec), self.decode(degree)?),
            other => match other.build(cap)? {
                AnyRack::Integers(r) => check(&r, self.decode(degree)?),
                AnyRack::Vectors(r) => check(&r, self.decode(degree)?),
                AnyRack::Permutations(r) => check(&r, self.decode(degree)?),
                AnyRack::Tuples(r) => check(&r, self.decode(degree)?),
            },
        }
    }
}

fn check<R: Rack>(rack: &R, cert: TypeDCertificate<R::Element>) -> Result<DocumentVerdict, CertFileError>
where
    R::Element: RackElement,
{
    Ok(match verify_certificate(rack, &cert) {
        Ok(CertificateVerdict::Valid) => DocumentVerdict::Valid,
        Ok(CertificateVerdict::Invalid(v)) => DocumentVerdict::Invalid(v.to_string()),
        Err(CertificateError::NonMember(x)) => DocumentVerdict::NonMember(x),
    })
}
