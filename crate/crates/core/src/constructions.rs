//! Builders for conjugation racks, twisted conjugacy classes, affine racks,
//! permutation racks and twisted homogeneous racks `Ĉ_ℓ` over `Alt_n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{alt_conjugate, alternating_generators, alternating_group, PermError, Permutation};
use crate::rack::{FiniteRack, Rack, RackError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Rack(#[from] RackError),
    #[error("{0} is not an even permutation")]
    OddElement(String),
    #[error("set is not closed under conjugation: {0}")]
    NotClosed(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("polynomial is reducible over F_{0}")]
    Reducible(u32),
    #[error("polynomial X or X - 1 does not give a simple affine rack")]
    ExcludedPolynomial,
    #[error("invalid polynomial: {0}")]
    BadPolynomial(String),
    #[error("invalid rack parameters: {0}")]
    InvalidSpec(String),
    #[error("universe of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: u128, cap: u128 },
    #[error("{0} is not an element of the rack")]
    NotMember(String),
}

/// An automorphism of `Alt_n` given by conjugation by a permutation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Twist {
    Identity,
    /// `ι_u: x ↦ u x u⁻¹`; outer when `u` is odd.
    Conjugation(Permutation),
}

impl Twist {
    /// `ι_(1 2)` on `Alt_n`.
    pub fn iota_12(n: usize) -> Result<Twist, PermError> {
        Ok(Twist::Conjugation(Permutation::from_cycles(n, &[[1, 2]])?))
    }

    pub fn apply(&self, x: &Permutation) -> Permutation {
        match self {
            Twist::Identity => x.clone(),
            Twist::Conjugation(u) => u.conj_unchecked(x),
        }
    }

    /// The permutation `u` with `θ = ι_u` (identity for `θ = id`).
    pub fn conjugator(&self, n: usize) -> Permutation {
        match self {
            Twist::Identity => Permutation::identity(n).expect("valid degree"),
            Twist::Conjugation(u) => u.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Twist::Identity)
    }

    /// Parses `id` or `iota:<cycles>`.
    pub fn parse(text: &str, n: usize) -> Result<Twist, ConstructionError> {
        let text = text.trim();
        if text == "id" {
            return Ok(Twist::Identity);
        }
        match text.strip_prefix("iota:") {
            Some(cycles) => {
                let u = Permutation::parse_cycles(cycles, n)?;
                if u.is_identity() {
                    Ok(Twist::Identity)
                } else {
                    Ok(Twist::Conjugation(u))
                }
            }
            None => Err(ConstructionError::InvalidSpec(format!("unknown twist {text:?}"))),
        }
    }

    fn check_degree(&self, n: usize) -> Result<(), ConstructionError> {
        match self {
            Twist::Conjugation(u) if u.degree() != n => Err(PermError::DegreeMismatch(n, u.degree()).into()),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Identity => f.write_str("id"),
            Twist::Conjugation(u) => write!(f, "iota:{u}"),
        }
    }
}

/// `Alt_n` twisted conjugation action `g ⇀ x = g·x·θ(g⁻¹)`.
fn twisted_action(theta: &Twist, g: &Permutation, x: &Permutation) -> Permutation {
    &(g * x) * &theta.apply(&g.inverse())
}

/// Twisted conjugacy class rack operation `y ▷ z = y·θ(z·y⁻¹)`.
pub fn twisted_op(theta: &Twist, y: &Permutation, z: &Permutation) -> Permutation {
    y * &theta.apply(&(z * &y.inverse()))
}

/// Orbit of `x` under the twisted `Alt_n` action, enumerated by breadth-first
/// search over the generators `(1 2 k)`.
pub fn twisted_orbit(n: usize, theta: &Twist, x: &Permutation) -> Result<BTreeSet<Permutation>, ConstructionError> {
    if x.degree() != n {
        return Err(PermError::DegreeMismatch(n, x.degree()).into());
    }
    theta.check_degree(n)?;
    let gens = alternating_generators(n)?;
    let mut seen: HashSet<Permutation> = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for g in &gens {
            let z = twisted_action(theta, g, &y);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// The twisted conjugacy class `O_x^{Alt_n, θ}` as a rack.
pub fn twisted_class(n: usize, theta: &Twist, x: &Permutation) -> Result<FiniteRack<Permutation>, ConstructionError> {
    if !x.is_even() {
        return Err(ConstructionError::OddElement(x.to_string()));
    }
    let orbit = twisted_orbit(n, theta, x)?;
    let th = theta.clone();
    let label = format!("twclass:alt{n}:{theta}:{x}");
    Ok(FiniteRack::new(label, orbit, move |y, z| twisted_op(&th, y, z))?)
}

/// Conjugation rack `x ▷ y = x y x⁻¹` on a conjugation-closed set.
pub fn conjugation_rack(elements: impl IntoIterator<Item = Permutation>) -> Result<FiniteRack<Permutation>, ConstructionError> {
    conjugation_rack_labeled("conj", elements)
}

pub fn conjugation_rack_labeled(
    label: impl Into<String>,
    elements: impl IntoIterator<Item = Permutation>,
) -> Result<FiniteRack<Permutation>, ConstructionError> {
    let set: BTreeSet<Permutation> = elements.into_iter().collect();
    let n = set.first().ok_or(RackError::EmptySubset)?.degree();
    if let Some(g) = set.iter().find(|g| g.degree() != n) {
        return Err(PermError::DegreeMismatch(n, g.degree()).into());
    }
    for a in &set {
        for b in &set {
            let c = a.conj_unchecked(b);
            if !set.contains(&c) {
                return Err(ConstructionError::NotClosed(format!("{a} ▷ {b} = {c}")));
            }
        }
    }
    Ok(FiniteRack::new(label, set, |a: &Permutation, b: &Permutation| a.conj_unchecked(b))?)
}

/// `Sym_n`-conjugacy class of `x`, by orbit enumeration.
pub fn sym_class(x: &Permutation) -> Result<BTreeSet<Permutation>, PermError> {
    let gens = crate::perm::symmetric_generators(x.degree())?;
    let mut seen: HashSet<Permutation> = HashSet::from([x.clone()]);
    let mut queue = VecDeque::from([x.clone()]);
    while let Some(y) = queue.pop_front() {
        for g in &gens {
            let z = g.conj_unchecked(&y);
            if seen.insert(z.clone()) {
                queue.push_back(z);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Permutation rack on `F_p`: `x ▷ y = y + 1`.
pub fn permutation_rack(p: u32) -> Result<FiniteRack<u32>, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::NotPrime(p));
    }
    Ok(FiniteRack::new(format!("perm:{p}"), 0..p, move |_, y| (y + 1) % p)?)
}

/// A vector of `F_p^t` as its coordinate list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpVector(pub Vec<u32>);

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for FpVector {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        inner
            .split(',')
            .map(|c| c.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(FpVector)
            .map_err(|_| ConstructionError::InvalidSpec(format!("bad vector {s:?}")))
    }
}

/// Monic polynomial `c_0 + c_1 X + ... + c_t X^t` over `F_p` defining an
/// affine rack through its companion matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AffineSpec {
    p: u32,
    coeffs: Vec<u32>,
}

/// Remainder of `a` modulo the monic `m` over `F_p`, coefficients low to high.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * mc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

impl AffineSpec {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self, ConstructionError> {
        if !is_prime(p) {
            return Err(ConstructionError::NotPrime(p));
        }
        if coeffs.len() < 2 {
            return Err(ConstructionError::BadPolynomial("degree must be at least 1".into()));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return Err(ConstructionError::BadPolynomial(format!("coefficients must lie in 0..{p}")));
        }
        if *coeffs.last().unwrap() != 1 {
            return Err(ConstructionError::BadPolynomial("polynomial must be monic".into()));
        }
        if coeffs.len() == 2 && (coeffs[0] == 0 || coeffs[0] == p - 1) {
            return Err(ConstructionError::ExcludedPolynomial);
        }
        let spec = AffineSpec { p, coeffs };
        if !spec.is_irreducible() {
            return Err(ConstructionError::Reducible(p));
        }
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// No monic factor of degree `1..=t/2`.
    fn is_irreducible(&self) -> bool {
        let t = self.degree();
        let p = self.p;
        for d in 1..=t / 2 {
            let count = (p as u64).pow(d as u32);
            for code in 0..count {
                let mut factor = Vec::with_capacity(d + 1);
                let mut c = code;
                for _ in 0..d {
                    factor.push((c % p as u64) as u32);
                    c /= p as u64;
                }
                factor.push(1);
                if poly_rem(&self.coeffs, &factor, p).iter().all(|&r| r == 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Companion-matrix action: multiplication by `X` modulo the polynomial.
    pub fn companion_apply(&self, v: &[u32]) -> Vec<u32> {
        let t = self.degree();
        let p = self.p;
        let top = v[t - 1];
        (0..t)
            .map(|i| {
                let shifted = if i == 0 { 0 } else { v[i - 1] };
                (shifted + p - (top * self.coeffs[i]) % p) % p
            })
            .collect()
    }
}

impl fmt::Display for AffineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "affine:{}:{}:{}", self.p, self.degree(), cs.join(","))
    }
}

/// Affine rack `(F_p^t, T)`: `x ▷ y = x + T(y − x)`.
pub fn affine_rack(spec: &AffineSpec) -> Result<FiniteRack<FpVector>, ConstructionError> {
    let t = spec.degree();
    let p = spec.p;
    let size = (p as u128).pow(t as u32);
    let mut elements = Vec::with_capacity(size as usize);
    for code in 0..size as u64 {
        let mut c = code;
        let v: Vec<u32> = (0..t)
            .map(|_| {
                let d = (c % p as u64) as u32;
                c /= p as u64;
                d
            })
            .collect();
        elements.push(FpVector(v));
    }
    let sp = spec.clone();
    let op = move |x: &FpVector, y: &FpVector| {
        let diff: Vec<u32> = x.0.iter().zip(&y.0).map(|(a, b)| (b + p - a) % p).collect();
        let g = sp.companion_apply(&diff);
        FpVector(x.0.iter().zip(&g).map(|(a, b)| (a + b) % p).collect())
    };
    Ok(FiniteRack::new(spec.to_string(), elements, op)?)
}

/// An element `(x₁, …, x_t)` of `L^t`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleElement(pub Vec<Permutation>);

impl TupleElement {
    pub fn new(parts: Vec<Permutation>) -> Self {
        TupleElement(parts)
    }

    pub fn parts(&self) -> &[Permutation] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `x_t x_{t−1} ⋯ x_2 x_1`.
    pub fn reversed_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.0[0].degree()).expect("valid degree");
        for x in &self.0 {
            acc = x * &acc;
        }
        acc
    }

    /// Parses `((1 2)(3 4), e, (1 2 3))`-style text or a bare list of cycle strings.
    pub fn parse_parts<S: AsRef<str>>(parts: &[S], n: usize) -> Result<Self, PermError> {
        parts
            .iter()
            .map(|s| Permutation::parse_cycles(s.as_ref(), n))
            .collect::<Result<Vec<_>, _>>()
            .map(TupleElement)
    }
}

impl fmt::Display for TupleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for TupleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parameters `(Alt_n, t, θ)` and base element `ℓ` of a twisted homogeneous rack `Ĉ_ℓ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct THRackSpec {
    n: usize,
    t: usize,
    theta: Twist,
    ell: Permutation,
}

impl THRackSpec {
    pub fn new(n: usize, t: usize, theta: Twist, ell: Permutation) -> Result<Self, ConstructionError> {
        if n < 5 {
            return Err(ConstructionError::InvalidSpec(format!("n must be at least 5, got {n}")));
        }
        if t < 1 {
            return Err(ConstructionError::InvalidSpec("t must be at least 1".into()));
        }
        if ell.degree() != n {
            return Err(PermError::DegreeMismatch(n, ell.degree()).into());
        }
        theta.check_degree(n)?;
        if !ell.is_even() {
            return Err(ConstructionError::OddElement(ell.to_string()));
        }
        Ok(THRackSpec { n, t, theta, ell })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn theta(&self) -> &Twist {
        &self.theta
    }

    pub fn ell(&self) -> &Permutation {
        &self.ell
    }

    /// `ℓu` where `θ = ι_u`; membership in `Ĉ_ℓ` reduces to `Alt_n`-conjugacy with this element.
    pub fn ell_u(&self) -> Permutation {
        &self.ell * &self.theta.conjugator(self.n)
    }
}

impl fmt::Display for THRackSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alt{}:{}:{}:{}", self.n, self.t, self.theta, self.ell)
    }
}

impl FromStr for THRackSpec {
    type Err = ConstructionError;

    /// `altN:t:theta:ell` with `theta` either `id` or `iota:<cycles>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConstructionError::InvalidSpec(format!("bad twisted homogeneous rack {s:?}"));
        let rest = s.trim().strip_prefix("alt").ok_or_else(bad)?;
        let (n, rest) = rest.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        let (t, rest) = rest.split_once(':').ok_or_else(bad)?;
        let t: usize = t.parse().map_err(|_| bad())?;
        let (theta, ell) = if let Some(ell) = rest.strip_prefix("id:") {
            ("id", ell)
        } else if let Some(after) = rest.strip_prefix("iota:") {
            let cut = 5 + after.find(':').ok_or_else(bad)?;
            (&rest[..cut], &rest[cut + 1..])
        } else {
            return Err(bad());
        };
        let theta = Twist::parse(theta, n)?;
        let ell = Permutation::parse_cycles(ell, n)?;
        THRackSpec::new(n, t, theta, ell)
    }
}

/// The twisted homogeneous rack `Ĉ_ℓ`, evaluated lazily: a tuple belongs to
/// it iff its reversed product lies in `O_ℓ^{Alt_n, θ}`.
#[derive(Clone, Debug)]
pub struct THRack {
    spec: THRackSpec,
    u: Permutation,
    ell_u: Permutation,
}

impl THRack {
    pub fn new(spec: THRackSpec) -> Self {
        let u = spec.theta.conjugator(spec.n);
        let ell_u = spec.ell_u();
        THRack { spec, u, ell_u }
    }

    pub fn spec(&self) -> &THRackSpec {
        &self.spec
    }

    /// `|Ĉ_ℓ| = |Alt_n|^{t−1} · |O_ℓ|`.
    pub fn size(&self) -> u128 {
        let alt: u128 = (3..=self.spec.n as u128).product();
        let class = self.ell_u.cycle_type().alt_orbit_size();
        alt.saturating_pow(self.spec.t as u32 - 1).saturating_mul(class)
    }

    /// True iff the reversed product of `x` lies in the twisted class of `ℓ`.
    pub fn contains_unchecked(&self, x: &TupleElement) -> bool {
        let prod = x.reversed_product();
        alt_conjugate(&(&prod * &self.u), &self.ell_u)
    }

    /// `a ▷ b = (a₁·θ(b_t·a_t⁻¹), a₂·b₁·a₁⁻¹, …, a_t·b_{t−1}·a_{t−1}⁻¹)`.
    pub fn op_unchecked(&self, a: &TupleElement, b: &TupleElement) -> TupleElement {
        let t = self.spec.t;
        let (a, b) = (&a.0, &b.0);
        let mut out = Vec::with_capacity(t);
        let first = &a[0] * &self.spec.theta.apply(&(&b[t - 1] * &a[t - 1].inverse()));
        out.push(first);
        for i in 1..t {
            out.push(&(&a[i] * &b[i - 1]) * &a[i - 1].inverse());
        }
        TupleElement(out)
    }

    /// Enumerates the whole universe. Fails when `|Ĉ_ℓ|` exceeds `cap`.
    pub fn materialize(&self, cap: u128) -> Result<FiniteRack<TupleElement>, ConstructionError> {
        let size = self.size();
        if size > cap {
            return Err(ConstructionError::CapExceeded { size, cap });
        }
        let n = self.spec.n;
        let t = self.spec.t;
        let class: Vec<Permutation> = twisted_orbit(n, &self.spec.theta, &self.spec.ell)?.into_iter().collect();
        let alt: Vec<Permutation> = alternating_group(n)?.into_iter().collect();
        let mut elements = Vec::with_capacity(size as usize);
        let mut counters = vec![0usize; t - 1];
        loop {
            let head: Vec<Permutation> = counters.iter().map(|&i| alt[i].clone()).collect();
            let mut prod = Permutation::identity(n)?;
            for x in &head {
                prod = x * &prod;
            }
            let prod_inv = prod.inverse();
            for c in &class {
                let mut parts = head.clone();
                parts.push(c * &prod_inv);
                elements.push(TupleElement(parts));
            }
            // odometer over Alt_n^{t-1}
            let mut k = 0;
            while k < counters.len() {
                counters[k] += 1;
                if counters[k] < alt.len() {
                    break;
                }
                counters[k] = 0;
                k += 1;
            }
            if k == counters.len() {
                break;
            }
        }
        let me = self.clone();
        Ok(FiniteRack::new(self.spec.to_string(), elements, move |a, b| me.op_unchecked(a, b))?)
    }

    fn check_shape(&self, x: &TupleElement) -> Result<(), ConstructionError> {
        if x.len() != self.spec.t {
            return Err(ConstructionError::InvalidSpec(format!(
                "tuple has {} parts, expected {}",
                x.len(),
                self.spec.t
            )));
        }
        for part in x.parts() {
            if part.degree() != self.spec.n {
                return Err(PermError::DegreeMismatch(self.spec.n, part.degree()).into());
            }
            if !part.is_even() {
                return Err(ConstructionError::OddElement(part.to_string()));
            }
        }
        Ok(())
    }
}

impl Rack for THRack {
    type Element = TupleElement;

    fn contains(&self, x: &TupleElement) -> bool {
        self.check_shape(x).is_ok() && self.contains_unchecked(x)
    }

    fn op(&self, a: &TupleElement, b: &TupleElement) -> TupleElement {
        self.op_unchecked(a, b)
    }

    fn label(&self) -> String {
        self.spec.to_string()
    }
}

/// Whole `Ĉ_ℓ` as a finite rack; fails above `cap` elements.
pub fn th_rack(spec: &THRackSpec, cap: u128) -> Result<FiniteRack<TupleElement>, ConstructionError> {
    THRack::new(spec.clone()).materialize(cap)
}

/// Membership test for `Ĉ_ℓ`. Errors on wrong tuple length, degree or parity.
pub fn th_membership(spec: &THRackSpec, candidate: &TupleElement) -> Result<bool, ConstructionError> {
    let rack = THRack::new(spec.clone());
    rack.check_shape(candidate)?;
    Ok(rack.contains_unchecked(candidate))
}

/// The rack operation of `Ĉ_ℓ` on two members.
pub fn rack_op_tuple(spec: &THRackSpec, a: &TupleElement, b: &TupleElement) -> Result<TupleElement, ConstructionError> {
    let rack = THRack::new(spec.clone());
    for x in [a, b] {
        if !th_membership(spec, x)? {
            return Err(ConstructionError::NotMember(x.to_string()));
        }
    }
    Ok(rack.op_unchecked(a, b))
}
