//! Textual rack descriptors and racks built from them.
//!
//! ```text
//! perm:p
//! affine:p:t:c0,...,ct
//! conj:symN:<cycles>
//! twclass:altN:<theta>:<cycles>
//! altN:t:<theta>:<ell-cycles>
//! ```
//!
//! where `<theta>` is `id` or `iota:<cycles>`.

use std::fmt;
use std::str::FromStr;

use crate::constructions::{
    affine_rack, conjugation_rack_labeled, permutation_rack, sym_class, twisted_class, AffineSpec, ConstructionError,
    FpVector, THRack, THRackSpec, TupleElement, Twist,
};
use crate::perm::{Permutation, PermError};
use crate::rack::{AxiomVerdict, FiniteRack, OpTable, RackError};
use crate::type_d::{decide_type_d, Decision};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RackDescriptor {
    Permutation(u32),
    Affine(AffineSpec),
    /// `Sym_n`-conjugacy class of `x`.
    Conjugation(Permutation),
    /// Twisted class `O_x^{Alt_n, θ}`.
    TwistedClass { theta: Twist, x: Permutation },
    TwistedHomogeneous(THRackSpec),
}

fn bad(s: &str) -> ConstructionError {
    ConstructionError::InvalidSpec(format!("unrecognised rack descriptor {s:?}"))
}

fn parse_degree(text: &str, prefix: &str, whole: &str) -> Result<usize, ConstructionError> {
    text.strip_prefix(prefix).and_then(|d| d.parse().ok()).ok_or_else(|| bad(whole))
}

/// Splits `theta:rest` where `theta` is `id` or `iota:<cycles>`.
fn split_twist<'a>(text: &'a str, whole: &str) -> Result<(&'a str, &'a str), ConstructionError> {
    if let Some(rest) = text.strip_prefix("id:") {
        return Ok(("id", rest));
    }
    if let Some(after) = text.strip_prefix("iota:") {
        let cut = after.find(':').ok_or_else(|| bad(whole))?;
        return Ok((&text[..5 + cut], &after[cut + 1..]));
    }
    Err(bad(whole))
}

impl FromStr for RackDescriptor {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad(s))?;
        match kind {
            "perm" => Ok(RackDescriptor::Permutation(rest.parse().map_err(|_| bad(s))?)),
            "affine" => {
                let mut fields = rest.splitn(3, ':');
                let (Some(p), Some(t), Some(cs)) = (fields.next(), fields.next(), fields.next()) else {
                    return Err(bad(s));
                };
                let p: u32 = p.parse().map_err(|_| bad(s))?;
                let t: usize = t.parse().map_err(|_| bad(s))?;
                let coeffs = cs
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad(s))?;
                if coeffs.len() != t + 1 {
                    return Err(ConstructionError::BadPolynomial(format!(
                        "degree {t} needs {} coefficients, got {}",
                        t + 1,
                        coeffs.len()
                    )));
                }
                Ok(RackDescriptor::Affine(AffineSpec::new(p, coeffs)?))
            }
            "conj" => {
                let (group, cycles) = rest.split_once(':').ok_or_else(|| bad(s))?;
                let n = parse_degree(group, "sym", s)?;
                Ok(RackDescriptor::Conjugation(Permutation::parse_cycles(cycles, n)?))
            }
            "twclass" => {
                let (group, rest) = rest.split_once(':').ok_or_else(|| bad(s))?;
                let n = parse_degree(group, "alt", s)?;
                let (theta, cycles) = split_twist(rest, s)?;
                let theta = Twist::parse(theta, n)?;
                let x = Permutation::parse_cycles(cycles, n)?;
                if !x.is_even() {
                    return Err(ConstructionError::OddElement(x.to_string()));
                }
                Ok(RackDescriptor::TwistedClass { theta, x })
            }
            k if k.starts_with("alt") => Ok(RackDescriptor::TwistedHomogeneous(s.parse()?)),
            _ => Err(bad(s)),
        }
    }
}

impl fmt::Display for RackDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RackDescriptor::Permutation(p) => write!(f, "perm:{p}"),
            RackDescriptor::Affine(spec) => write!(f, "{spec}"),
            RackDescriptor::Conjugation(x) => write!(f, "conj:sym{}:{x}", x.degree()),
            RackDescriptor::TwistedClass { theta, x } => write!(f, "twclass:alt{}:{theta}:{x}", x.degree()),
            RackDescriptor::TwistedHomogeneous(spec) => write!(f, "{spec}"),
        }
    }
}

impl RackDescriptor {
    /// Number of elements of the described rack.
    pub fn size(&self) -> u128 {
        match self {
            RackDescriptor::Permutation(p) => *p as u128,
            RackDescriptor::Affine(spec) => (spec.p() as u128).saturating_pow(spec.degree() as u32),
            RackDescriptor::Conjugation(x) => x.cycle_type().sym_class_size(),
            RackDescriptor::TwistedClass { theta, x } => {
                let u = theta.conjugator(x.degree());
                (x * &u).cycle_type().alt_orbit_size()
            }
            RackDescriptor::TwistedHomogeneous(spec) => THRack::new(spec.clone()).size(),
        }
    }

    /// Degree context for decoding elements: `n` for permutation-valued
    /// racks, `t` for affine racks, `p` for permutation racks.
    pub fn degree(&self) -> usize {
        match self {
            RackDescriptor::Permutation(p) => *p as usize,
            RackDescriptor::Affine(spec) => spec.degree(),
            RackDescriptor::Conjugation(x) | RackDescriptor::TwistedClass { x, .. } => x.degree(),
            RackDescriptor::TwistedHomogeneous(spec) => spec.n(),
        }
    }

    /// Enumerates the rack; fails when it has more than `cap` elements.
    pub fn build(&self, cap: u128) -> Result<AnyRack, ConstructionError> {
        let size = self.size();
        if size > cap {
            return Err(ConstructionError::CapExceeded { size, cap });
        }
        Ok(match self {
            RackDescriptor::Permutation(p) => AnyRack::Integers(permutation_rack(*p)?),
            RackDescriptor::Affine(spec) => AnyRack::Vectors(affine_rack(spec)?),
            RackDescriptor::Conjugation(x) => {
                AnyRack::Permutations(conjugation_rack_labeled(self.to_string(), sym_class(x)?)?)
            }
            RackDescriptor::TwistedClass { theta, x } => AnyRack::Permutations(twisted_class(x.degree(), theta, x)?),
            RackDescriptor::TwistedHomogeneous(spec) => AnyRack::Tuples(THRack::new(spec.clone()).materialize(cap)?),
        })
    }
}

/// A materialized rack of any supported element type.
#[derive(Clone, Debug)]
pub enum AnyRack {
    Integers(FiniteRack<u32>),
    Vectors(FiniteRack<FpVector>),
    Permutations(FiniteRack<Permutation>),
    Tuples(FiniteRack<TupleElement>),
}

macro_rules! dispatch {
    ($value:expr, $rack:ident => $body:expr) => {
        match $value {
            AnyRack::Integers($rack) => $body,
            AnyRack::Vectors($rack) => $body,
            AnyRack::Permutations($rack) => $body,
            AnyRack::Tuples($rack) => $body,
        }
    };
}

/// An element written as a tuple of strings, as in certificate files.
pub trait ElementCodec: Sized {
    fn encode(&self) -> Vec<String>;
    fn decode(parts: &[String], degree: usize) -> Result<Self, ConstructionError>;
}

fn single(parts: &[String]) -> Result<&str, ConstructionError> {
    match parts {
        [one] => Ok(one),
        _ => Err(ConstructionError::InvalidSpec(format!("expected a 1-tuple, got {} parts", parts.len()))),
    }
}

impl ElementCodec for u32 {
    fn encode(&self) -> Vec<String> {
        vec![self.to_string()]
    }

    fn decode(parts: &[String], _degree: usize) -> Result<Self, ConstructionError> {
        let text = single(parts)?;
        text.trim().parse().map_err(|_| ConstructionError::InvalidSpec(format!("bad integer {text:?}")))
    }
}

impl ElementCodec for FpVector {
    fn encode(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    fn decode(parts: &[String], degree: usize) -> Result<Self, ConstructionError> {
        if parts.len() != degree {
            return Err(ConstructionError::InvalidSpec(format!("expected {degree} coordinates")));
        }
        parts
            .iter()
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(FpVector)
            .map_err(|_| ConstructionError::InvalidSpec(format!("bad vector {parts:?}")))
    }
}

impl ElementCodec for Permutation {
    fn encode(&self) -> Vec<String> {
        vec![self.to_string()]
    }

    fn decode(parts: &[String], degree: usize) -> Result<Self, ConstructionError> {
        Ok(Permutation::parse_cycles(single(parts)?, degree)?)
    }
}

impl ElementCodec for TupleElement {
    fn encode(&self) -> Vec<String> {
        self.parts().iter().map(|x| x.to_string()).collect()
    }

    fn decode(parts: &[String], degree: usize) -> Result<Self, ConstructionError> {
        if parts.is_empty() {
            return Err(PermError::Malformed { pos: 0, reason: "empty tuple" }.into());
        }
        Ok(TupleElement::parse_parts(parts, degree)?)
    }
}

/// Outcome of a type D search with the certificate in encoded form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EncodedDecision {
    TypeD(crate::type_d::TypeDCertificate<Vec<String>>),
    NotTypeD { pairs: u64 },
    BudgetExhausted { pairs: u64 },
}

fn encode_decision<E: ElementCodec>(decision: Decision<E>) -> EncodedDecision {
    match decision {
        Decision::TypeD(c) => EncodedDecision::TypeD(crate::type_d::TypeDCertificate {
            rack: c.rack,
            r_block: c.r_block.iter().map(E::encode).collect(),
            s_block: c.s_block.iter().map(E::encode).collect(),
            r: c.r.encode(),
            s: c.s.encode(),
        }),
        Decision::NotTypeD { pairs } => EncodedDecision::NotTypeD { pairs },
        Decision::BudgetExhausted { pairs } => EncodedDecision::BudgetExhausted { pairs },
    }
}

impl AnyRack {
    pub fn label(&self) -> &str {
        dispatch!(self, r => r.label())
    }

    pub fn len(&self) -> usize {
        dispatch!(self, r => r.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Element `i` of the sorted universe in display form.
    pub fn element_name(&self, i: usize) -> String {
        dispatch!(self, r => format!("{:?}", r.element(i)))
    }

    /// The operation table on element indices.
    pub fn op_table(&self) -> Result<OpTable, RackError> {
        dispatch!(self, r => r.table_or_build().map(|t| t.into_owned()))
    }

    pub fn verify_axioms(&self) -> Result<AxiomVerdict, RackError> {
        dispatch!(self, r => r.verify_axioms())
    }

    pub fn decide_type_d(&self, budget: u64) -> Result<EncodedDecision, RackError> {
        dispatch!(self, r => decide_type_d(r, budget).map(encode_decision))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for text in [
            "perm:5",
            "affine:2:2:1,1,1",
            "conj:sym5:(1 2)",
            "twclass:alt5:id:(1 2 3)",
            "twclass:alt5:iota:(1 2):e",
            "alt5:2:id:e",
            "alt6:2:iota:(1 2):(3 4)(5 6)",
        ] {
            let d: RackDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(matches!("affine:2:1:1,1".parse::<RackDescriptor>(), Err(ConstructionError::ExcludedPolynomial)));
        assert!(matches!("affine:2:2:1,1".parse::<RackDescriptor>(), Err(ConstructionError::BadPolynomial(_))));
        assert!("perm:6".parse::<RackDescriptor>().is_ok());
        assert!("perm:6".parse::<RackDescriptor>().unwrap().build(100).is_err());
        assert!("twclass:alt5:id:(1 2)".parse::<RackDescriptor>().is_err());
        assert!("nonsense".parse::<RackDescriptor>().is_err());
        assert!("conj:alt5:(1 2)".parse::<RackDescriptor>().is_err());
    }

    #[test]
    fn sizes_match_materialized_racks() {
        for text in [
            "perm:7",
            "affine:3:2:1,0,1",
            "conj:sym5:(1 2 3)",
            "twclass:alt5:iota:(1 2):e",
            "twclass:alt6:id:(1 2 3)",
            "alt5:2:id:e",
            "alt5:2:iota:(1 2):e",
        ] {
            let d: RackDescriptor = text.parse().unwrap();
            let rack = d.build(10_000).unwrap();
            assert_eq!(rack.len() as u128, d.size(), "{text}");
            assert!(rack.verify_axioms().unwrap().is_valid(), "{text}");
        }
    }

    #[test]
    fn cap_enforced() {
        let d: RackDescriptor = "alt5:3:id:e".parse().unwrap();
        assert!(matches!(d.build(1000), Err(ConstructionError::CapExceeded { size: 3600, cap: 1000 })));
    }

    #[test]
    fn codecs_round_trip() {
        let x = Permutation::parse_cycles("(1 2)(3 4 5)", 5).unwrap();
        assert_eq!(Permutation::decode(&x.encode(), 5).unwrap(), x);
        let t = TupleElement::new(vec![x.clone(), Permutation::identity(5).unwrap()]);
        assert_eq!(t.encode(), vec!["(1 2)(3 4 5)".to_string(), "e".to_string()]);
        assert_eq!(TupleElement::decode(&t.encode(), 5).unwrap(), t);
        let v = FpVector(vec![1, 0, 2]);
        assert_eq!(FpVector::decode(&v.encode(), 3).unwrap(), v);
        assert!(FpVector::decode(&v.encode(), 2).is_err());
        assert_eq!(u32::decode(&7u32.encode(), 11).unwrap(), 7);
    }
}
