//! Known type D status of twisted homogeneous racks `Ĉ_ℓ` of type
//! `(Alt_n, t, θ)`, keyed by the cycle type of `ℓu` where `θ = ι_u`.
//!
//! The table data below is reference material, not computation: which
//! classes are resolved by which certificate generator, which are known not
//! to be of type D, which remain open, and (for `t = 1`) the prior lists of
//! classes not covered by earlier classification.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::Twist;
use crate::perm::{CycleType, Parity, PermError, Permutation};
use crate::type_d::Generator;

/// The two twists considered: `id` and `ι_(1 2)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwistKind {
    #[serde(rename = "id")]
    Identity,
    #[serde(rename = "iota:(1 2)")]
    Iota12,
}

impl TwistKind {
    pub const ALL: [TwistKind; 2] = [TwistKind::Identity, TwistKind::Iota12];

    pub fn twist(self, n: usize) -> Result<Twist, PermError> {
        match self {
            TwistKind::Identity => Ok(Twist::Identity),
            TwistKind::Iota12 => Twist::iota_12(n),
        }
    }

    /// Parity of `ℓu` for even `ℓ`.
    pub fn parity(self) -> Parity {
        match self {
            TwistKind::Identity => Parity::Even,
            TwistKind::Iota12 => Parity::Odd,
        }
    }

    /// The even `ℓ` with `ℓu` equal to the canonical representative of `ty`.
    pub fn canonical_ell(self, ty: &CycleType) -> Permutation {
        let w = ty.representative();
        match self {
            TwistKind::Identity => w,
            TwistKind::Iota12 => {
                let u = Permutation::from_cycles(w.degree(), &[[1, 2]]).expect("degree at least 2");
                &w * &u
            }
        }
    }
}

impl fmt::Display for TwistKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistKind::Identity => "id",
            TwistKind::Iota12 => "iota:(1 2)",
        })
    }
}

impl FromStr for TwistKind {
    type Err = StatusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "id" => Ok(TwistKind::Identity),
            "iota:(1 2)" | "iota" | "iota_12" => Ok(TwistKind::Iota12),
            other => Err(StatusError::UnknownTwist(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "type-D-proved")]
    TypeDProved,
    #[serde(rename = "not-type-D")]
    NotTypeD,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::TypeDProved => "type-D-proved",
            Status::NotTypeD => "not-type-D",
            Status::Unknown => "unknown",
        })
    }
}

/// The five families that may fail to be of type D when `t > 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExceptionFamily {
    /// `θ = id`, `ℓ = e`, `gcd(t, n!) = 1`.
    TrivialCoprime,
    /// `θ = id`, `ℓ = e`, `n = 5`, `t = 2`.
    TrivialAlt5,
    /// `θ = id`, `ℓ = e`, `n = 6`, `t = 2`.
    TrivialAlt6,
    /// `θ = ι_(1 2)`, `s₁ ≤ 1`, `s₂ = 0`.
    TwistedNoInvolutions,
    /// `θ = ι_(1 2)`, type `(1^{s₁}, 2^{s₂}, 4^{s₄})`, `s₁ ≤ 2` or `s₂ ≥ 1`, `t = 2`.
    TwistedOneTwoFour,
}

impl ExceptionFamily {
    pub const ALL: [ExceptionFamily; 5] = [
        ExceptionFamily::TrivialCoprime,
        ExceptionFamily::TrivialAlt5,
        ExceptionFamily::TrivialAlt6,
        ExceptionFamily::TwistedNoInvolutions,
        ExceptionFamily::TwistedOneTwoFour,
    ];

    pub fn description(self) -> &'static str {
        match self {
            ExceptionFamily::TrivialCoprime => "theta = id, ell = e, gcd(t, n!) = 1",
            ExceptionFamily::TrivialAlt5 => "theta = id, ell = e, n = 5, t = 2",
            ExceptionFamily::TrivialAlt6 => "theta = id, ell = e, n = 6, t = 2",
            ExceptionFamily::TwistedNoInvolutions => {
                "theta = iota_(1 2), ell u of type (1^s1, 2^s2, ..., n^sn) with s1 <= 1, s2 = 0, any t"
            }
            ExceptionFamily::TwistedOneTwoFour => {
                "theta = iota_(1 2), ell u of type (1^s1, 2^s2, 4^s4) with s4 >= 1 and (s1 <= 2 or s2 >= 1), t = 2"
            }
        }
    }

    /// Whether `(n, t, θ, type of ℓu)` lies in this family.
    pub fn contains(self, n: usize, t: usize, theta: TwistKind, ty: &CycleType) -> bool {
        let trivial = theta == TwistKind::Identity && ty.count(1) == n;
        match self {
            ExceptionFamily::TrivialCoprime => trivial && coprime_to_factorial(t, n),
            ExceptionFamily::TrivialAlt5 => trivial && n == 5 && t == 2,
            ExceptionFamily::TrivialAlt6 => trivial && n == 6 && t == 2,
            ExceptionFamily::TwistedNoInvolutions => theta == TwistKind::Iota12 && ty.count(1) <= 1 && ty.count(2) == 0,
            ExceptionFamily::TwistedOneTwoFour => {
                theta == TwistKind::Iota12
                    && t == 2
                    && only_lengths(ty, &[1, 2, 4])
                    && ty.count(4) >= 1
                    && (ty.count(1) <= 2 || ty.count(2) >= 1)
            }
        }
    }
}

impl fmt::Display for ExceptionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// The exception family containing the given class, if any.
pub fn exception_family(n: usize, t: usize, theta: TwistKind, ty: &CycleType) -> Option<ExceptionFamily> {
    ExceptionFamily::ALL.into_iter().find(|f| f.contains(n, t, theta, ty))
}

/// The prior `t = 1` lists of cycle types of `ℓu` not covered by earlier
/// classification.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum PriorList {
    /// `(2, 3)`, `(2³)`, `(1^k, 2)`.
    A,
    /// `(3²)`, `(2², 3)`, `(1^k, 3)`, `(2⁴)`, `(1², 2²)`, `(1, 2²)`, `(1, p)`, `(p)`;
    /// these are known to collapse.
    B,
}

/// Why a class has its status.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "kebab-case")]
pub enum Source {
    /// Resolved by a certificate generator.
    Generator(Generator),
    /// Found not to be of type D in prior work; reproducible by exhaustive search.
    PriorNotTypeD(ExceptionFamily),
    /// Open: the class lies in an exception family.
    Open(ExceptionFamily),
    /// Of type D by earlier classification; not re-proved here.
    PriorClassification,
    /// `t = 1` class on one of the prior lists; open.
    PriorList(PriorList),
    /// `t = 1`, `θ = id`, `ℓ = e`: a one-element rack.
    SingletonRack,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Generator(g) => write!(f, "certificate generator {g}"),
            Source::PriorNotTypeD(family) => write!(f, "not of type D by prior exhaustive search ({family})"),
            Source::Open(family) => write!(f, "open family: {family}"),
            Source::PriorClassification => f.write_str("of type D by prior classification"),
            Source::PriorList(PriorList::A) => f.write_str("prior t = 1 list (a)"),
            Source::PriorList(PriorList::B) => f.write_str("prior t = 1 list (b), known to collapse"),
            Source::SingletonRack => f.write_str("one-element rack"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatusEntry {
    pub n: usize,
    pub t: usize,
    pub theta: TwistKind,
    pub cycle_type: CycleType,
    pub status: Status,
    pub source: Source,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatusError {
    #[error("n = {0} is outside the classified range n >= 5")]
    DegreeTooSmall(usize),
    #[error("t must be at least 1")]
    ZeroCopies,
    #[error("cycle type {ty} does not partition {n}")]
    DegreeMismatch { ty: CycleType, n: usize },
    #[error("cycle type {ty} of ell u must be {expected} for theta = {theta}")]
    WrongParity { ty: CycleType, expected: Parity, theta: TwistKind },
    #[error("unknown twist {0:?}")]
    UnknownTwist(String),
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `gcd(t, n!) = 1`, i.e. every prime factor of `t` exceeds `n`.
pub fn coprime_to_factorial(t: usize, n: usize) -> bool {
    (2..=n).all(|k| gcd(t, k) == 1)
}

fn only_lengths(ty: &CycleType, allowed: &[usize]) -> bool {
    ty.counts().all(|(len, _)| allowed.contains(&len))
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn is_type(ty: &CycleType, parts: &[(usize, usize)]) -> bool {
    let mut expected: Vec<(usize, usize)> = parts.iter().copied().filter(|&(_, c)| c > 0).collect();
    expected.sort();
    ty.counts().collect::<Vec<_>>() == expected
}

fn prior_list(ty: &CycleType) -> Option<PriorList> {
    let n = ty.degree();
    let fixed = ty.count(1);
    let moved_type = |parts: &[(usize, usize)]| is_type(ty, &[&[(1, fixed)], parts].concat());
    if is_type(ty, &[(2, 1), (3, 1)]) || is_type(ty, &[(2, 3)]) || moved_type(&[(2, 1)]) {
        return Some(PriorList::A);
    }
    let b = is_type(ty, &[(3, 2)])
        || is_type(ty, &[(2, 2), (3, 1)])
        || moved_type(&[(3, 1)])
        || is_type(ty, &[(2, 4)])
        || is_type(ty, &[(1, 2), (2, 2)])
        || is_type(ty, &[(1, 1), (2, 2)])
        || (is_prime(n) && is_type(ty, &[(n, 1)]))
        || (n >= 3 && is_prime(n - 1) && is_type(ty, &[(1, 1), (n - 1, 1)]));
    b.then_some(PriorList::B)
}

/// Known status of `Ĉ_ℓ` of type `(Alt_n, t, θ)` where `ℓu` has cycle type `ty`.
pub fn classify_status(n: usize, t: usize, theta: TwistKind, ty: &CycleType) -> Result<StatusEntry, StatusError> {
    if n < 5 {
        return Err(StatusError::DegreeTooSmall(n));
    }
    if t == 0 {
        return Err(StatusError::ZeroCopies);
    }
    if ty.degree() != n {
        return Err(StatusError::DegreeMismatch { ty: ty.clone(), n });
    }
    if ty.parity() != theta.parity() {
        return Err(StatusError::WrongParity { ty: ty.clone(), expected: theta.parity(), theta });
    }
    let (status, source) = if t == 1 {
        classify_single(n, theta, ty)
    } else {
        classify_multiple(n, t, theta, ty)
    };
    Ok(StatusEntry { n, t, theta, cycle_type: ty.clone(), status, source })
}

fn classify_single(n: usize, theta: TwistKind, ty: &CycleType) -> (Status, Source) {
    if theta == TwistKind::Identity && ty.count(1) == n {
        return (Status::NotTypeD, Source::SingletonRack);
    }
    match prior_list(ty) {
        Some(list) => (Status::Unknown, Source::PriorList(list)),
        None => (Status::TypeDProved, Source::PriorClassification),
    }
}

fn classify_multiple(n: usize, t: usize, theta: TwistKind, ty: &CycleType) -> (Status, Source) {
    let proved = |g| (Status::TypeDProved, Source::Generator(g));
    let odd = t % 2 == 1;
    match theta {
        TwistKind::Identity => {
            if n == 5 && t == 4 && is_type(ty, &[(1, 5)]) {
                return proved(Generator::Id1);
            }
            if (n == 5 && is_type(ty, &[(1, 1), (2, 2)]) && (t == 4 || odd))
                || (n == 6 && is_type(ty, &[(1, 2), (2, 2)]) && odd)
                || (n == 8 && is_type(ty, &[(2, 4)]) && odd)
            {
                return proved(Generator::Id12r);
            }
            if t == 2 && only_lengths(ty, &[1, 2, 4]) && ty.count(4) > 0 {
                return proved(if ty.count(2) > 0 { Generator::Id124 } else { Generator::Id14 });
            }
        }
        TwistKind::Iota12 => {
            if (n == 5 && is_type(ty, &[(1, 3), (2, 1)]) && (t == 2 || t == 4))
                || (n == 6 && is_type(ty, &[(1, 4), (2, 1)]) && t == 2)
            {
                return proved(Generator::Iota12);
            }
            if n == 6 && is_type(ty, &[(2, 3)]) && t == 2 {
                return proved(Generator::Iota222);
            }
            if (n == 7 && is_type(ty, &[(1, 1), (2, 3)]) && (t == 2 || odd))
                || (n == 8 && is_type(ty, &[(1, 2), (2, 3)]) && odd)
                || (n == 10 && is_type(ty, &[(2, 5)]) && odd)
            {
                return proved(Generator::Iota12r);
            }
        }
    }
    match exception_family(n, t, theta, ty) {
        Some(f @ (ExceptionFamily::TrivialAlt5 | ExceptionFamily::TrivialAlt6)) => {
            (Status::NotTypeD, Source::PriorNotTypeD(f))
        }
        Some(f) => (Status::Unknown, Source::Open(f)),
        None => (Status::TypeDProved, Source::PriorClassification),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CycleType {
        CycleType::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let e = classify_status(5, 2, TwistKind::Identity, &ty("(1^5)")).unwrap();
        assert_eq!(e.status, Status::NotTypeD);
        let e = classify_status(7, 11, TwistKind::Identity, &ty("(1^7)")).unwrap();
        assert_eq!((e.status, e.source), (Status::Unknown, Source::Open(ExceptionFamily::TrivialCoprime)));
        let e = classify_status(7, 3, TwistKind::Iota12, &ty("(1,2^3)")).unwrap();
        assert_eq!(e.source, Source::Generator(Generator::Iota12r));
    }

    #[test]
    fn scope_errors() {
        assert_eq!(
            classify_status(4, 2, TwistKind::Identity, &ty("(1^4)")),
            Err(StatusError::DegreeTooSmall(4))
        );
        assert!(matches!(
            classify_status(5, 2, TwistKind::Iota12, &ty("(1^5)")),
            Err(StatusError::WrongParity { .. })
        ));
        assert!(matches!(
            classify_status(6, 2, TwistKind::Identity, &ty("(1^5)")),
            Err(StatusError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn canonical_ell_is_even_with_requested_type() {
        for n in 5..=8 {
            for c in CycleType::all(n) {
                for theta in TwistKind::ALL {
                    if c.parity() != theta.parity() {
                        continue;
                    }
                    let ell = theta.canonical_ell(&c);
                    assert!(ell.is_even());
                    let u = theta.twist(n).unwrap().conjugator(n);
                    assert_eq!((&ell * &u).cycle_type(), c);
                }
            }
        }
    }

    #[test]
    fn prior_lists() {
        assert_eq!(prior_list(&ty("(2,3)")), Some(PriorList::A));
        assert_eq!(prior_list(&ty("(1^4,2)")), Some(PriorList::A));
        assert_eq!(prior_list(&ty("(1,6)")), None);
        assert_eq!(prior_list(&ty("(7)")), Some(PriorList::B));
        assert_eq!(prior_list(&ty("(1,7)")), Some(PriorList::B));
        assert_eq!(prior_list(&ty("(1^3,3)")), Some(PriorList::B));
        assert_eq!(prior_list(&ty("(1,2,3)")), None);
    }

    #[test]
    fn coprimality() {
        assert!(coprime_to_factorial(7, 5));
        assert!(!coprime_to_factorial(4, 5));
        assert!(coprime_to_factorial(1, 9));
    }
}
