//! Exact permutation arithmetic over `Sym_n` and `Alt_n`.
//!
//! Points are 1-based in every public entry point and in cycle notation;
//! images are stored 0-based. Products follow the right-to-left convention:
//! `(a * b)(i) = a(b(i))`, so the right factor acts first.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

/// Largest supported degree.
pub const MAX_DEGREE: usize = u8::MAX as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation at byte {pos}: {reason}")]
    Malformed { pos: usize, reason: &'static str },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree must be between 1 and {MAX_DEGREE}, got {0}")]
    InvalidDegree(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection")]
    NotBijection,
    #[error("{0} does not stabilize the basepoint set")]
    NotStabilizing(String),
    #[error("generated subgroup exceeds the cap of {0} elements")]
    CapExceeded(usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("malformed cycle type {0:?}")]
    MalformedCycleType(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity of a product.
    pub fn combine(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => f.write_str("even"),
            Parity::Odd => f.write_str("odd"),
        }
    }
}

/// A bijection of `{1..n}`.
///
/// Ordering and hashing use the image sequence, which is the canonical form
/// for element identity everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

fn check_degree(degree: usize) -> Result<(), PermError> {
    if degree == 0 || degree > MAX_DEGREE {
        Err(PermError::InvalidDegree(degree))
    } else {
        Ok(())
    }
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self, PermError> {
        check_degree(degree)?;
        Ok(Permutation {
            images: (0..degree as u8).collect(),
        })
    }

    /// Builds a permutation from 1-based images: `images[i - 1]` is the image of `i`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        check_degree(images.len())?;
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(PermError::PointOutOfRange { point: img, degree: n });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(PermError::NotBijection);
            }
            out.push((img - 1) as u8);
        }
        Ok(Permutation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds a permutation from disjoint cycles of 1-based points.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        check_degree(degree)?;
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::RepeatedPoint(p));
                }
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses cycle notation such as `(1 2)(3 4 5 6)`. `""`, `"e"` and `"()"`
    /// denote the identity; unmentioned points are fixed.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        check_degree(degree)?;
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "e" {
            return Self::identity(degree);
        }
        let bytes = text.as_bytes();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(PermError::Malformed { pos: i, reason: "nested '('" });
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                b')' => match current.take() {
                    Some(cycle) => {
                        cycles.push(cycle);
                        i += 1;
                    }
                    None => return Err(PermError::Malformed { pos: i, reason: "unmatched ')'" }),
                },
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let cycle = current
                        .as_mut()
                        .ok_or(PermError::Malformed { pos: start, reason: "point outside parentheses" })?;
                    let point: usize = text[start..i]
                        .parse()
                        .map_err(|_| PermError::Malformed { pos: start, reason: "point too large" })?;
                    cycle.push(point);
                }
                c if c.is_ascii_whitespace() => i += 1,
                _ => return Err(PermError::Malformed { pos: i, reason: "unexpected character" }),
            }
        }
        if current.is_some() {
            return Err(PermError::Malformed { pos: bytes.len(), reason: "unterminated cycle" });
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// `self * other`, with `other` applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `self * other * self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.conj_unchecked(other))
    }

    pub(crate) fn conj_unchecked(&self, other: &Permutation) -> Permutation {
        // (a b a^-1)(a(i)) = a(b(i))
        let mut out = vec![0u8; self.degree()];
        for i in 0..self.degree() {
            out[self.images[i] as usize] = self.images[other.images[i] as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, exp: u32) -> Permutation {
        let mut acc = Permutation {
            images: (0..self.degree() as u8).collect(),
        };
        for _ in 0..exp {
            acc = self.mul_unchecked(&acc);
        }
        acc
    }

    /// All cycles including fixed points, each starting at its smallest point,
    /// ordered by smallest point.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles of length at least 2.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut counts = BTreeMap::new();
        for c in self.all_cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        CycleType {
            degree: self.degree(),
            counts,
        }
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.all_cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Parity::Even
    }

    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        self.all_cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }

    /// Some `g` with `g * self * g⁻¹ == other`, if the cycle types agree.
    pub fn conjugator_to(&self, other: &Permutation) -> Option<Permutation> {
        if self.degree() != other.degree() {
            return None;
        }
        let mut mine = self.all_cycles();
        let mut theirs = other.all_cycles();
        mine.sort_by_key(|c| c.len());
        theirs.sort_by_key(|c| c.len());
        let mut images = vec![0usize; self.degree()];
        for (a, b) in mine.iter().zip(&theirs) {
            if a.len() != b.len() {
                return None;
            }
            for (&p, &q) in a.iter().zip(b) {
                images[p - 1] = q;
            }
        }
        if mine.len() != theirs.len() {
            return None;
        }
        Permutation::from_images(&images).ok()
    }

    /// Re-embeds into a larger degree, fixing the new points.
    pub fn extend_degree(&self, degree: usize) -> Result<Permutation, PermError> {
        check_degree(degree)?;
        if degree < self.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), degree));
        }
        let mut images = self.images.to_vec();
        images.extend(self.degree() as u8..degree as u8);
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Restriction to the invariant set `{1..k}`, or `None` if it is not invariant.
    pub fn restrict(&self, k: usize) -> Option<Permutation> {
        if k == 0 || k > self.degree() {
            return None;
        }
        let head = &self.images[..k];
        if head.iter().any(|&j| j as usize >= k) {
            return None;
        }
        Some(Permutation { images: head.into() })
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch in permutation product");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Multiset of cycle lengths of a permutation, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    degree: usize,
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    /// From `(length, count)` pairs; zero counts are dropped.
    pub fn from_counts(parts: &[(usize, usize)]) -> Result<Self, PermError> {
        let mut counts = BTreeMap::new();
        for &(len, count) in parts {
            if len == 0 {
                return Err(PermError::MalformedCycleType(format!("{parts:?}")));
            }
            if count > 0 {
                *counts.entry(len).or_insert(0) += count;
            }
        }
        let degree = counts.iter().map(|(h, s)| h * s).sum();
        check_degree(degree)?;
        Ok(CycleType { degree, counts })
    }

    /// Parses `(1^2,2^2)`, `1^2, 2^2`, `(2,4)` and friends.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let bad = || PermError::MalformedCycleType(text.to_string());
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for item in inner.split(',') {
            let item = item.trim();
            if item.is_empty() {
                return Err(bad());
            }
            let (len, count) = match item.split_once('^') {
                Some((l, c)) => (l.trim().parse().map_err(|_| bad())?, c.trim().parse().map_err(|_| bad())?),
                None => (item.parse().map_err(|_| bad())?, 1),
            };
            parts.push((len, count));
        }
        Self::from_counts(&parts)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `s_h`: number of cycles of length `h`.
    pub fn count(&self, len: usize) -> usize {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&h, &s)| (h, s))
    }

    /// Largest cycle length present.
    pub fn max_len(&self) -> usize {
        self.counts.keys().next_back().copied().unwrap_or(1)
    }

    pub fn parity(&self) -> Parity {
        let t: usize = self.counts.iter().map(|(h, s)| (h - 1) * s).sum();
        if t.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// True when the `Sym_n`-class splits into two `Alt_n`-classes:
    /// all cycle lengths odd and pairwise distinct.
    pub fn splits_in_alt(&self) -> bool {
        self.counts.iter().all(|(h, s)| h % 2 == 1 && *s == 1)
    }

    pub fn sym_class_size(&self) -> u128 {
        let mut size: u128 = (1..=self.degree as u128).product();
        for (&h, &s) in &self.counts {
            size /= (h as u128).pow(s as u32);
            size /= (1..=s as u128).product::<u128>();
        }
        size
    }

    /// Size of the `Alt_n`-orbit (under conjugation) of a permutation of this type.
    pub fn alt_orbit_size(&self) -> u128 {
        if self.splits_in_alt() && self.degree > 1 {
            self.sym_class_size() / 2
        } else {
            self.sym_class_size()
        }
    }

    /// Canonical representative: non-trivial cycles in increasing length on
    /// consecutive points starting at 1, fixed points last.
    pub fn representative(&self) -> Permutation {
        let mut cycles = Vec::new();
        let mut next = 1;
        for (&h, &s) in &self.counts {
            if h == 1 {
                continue;
            }
            for _ in 0..s {
                cycles.push((next..next + h).collect::<Vec<_>>());
                next += h;
            }
        }
        Permutation::from_cycles(self.degree, &cycles).expect("consecutive disjoint cycles")
    }

    /// Every cycle type of degree `n`, in a fixed order.
    pub fn all(n: usize) -> Vec<CycleType> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for part in (1..=max.min(rem)).rev() {
                cur.push(part);
                rec(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        rec(n, n, &mut Vec::new(), &mut raw);
        raw.into_iter()
            .map(|parts| {
                let pairs: Vec<(usize, usize)> = parts.iter().map(|&p| (p, 1)).collect();
                CycleType::from_counts(&pairs).expect("partition of n")
            })
            .collect()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, (&h, &s)) in self.counts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if s == 1 {
                write!(f, "{h}")?;
            } else {
                write!(f, "{h}^{s}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// True iff `a` and `b` are conjugate under `Alt_n`.
///
/// For split classes any conjugator has a fixed parity (the centralizer is
/// even), so one aligned conjugator decides the question.
pub fn alt_conjugate(a: &Permutation, b: &Permutation) -> bool {
    if a.degree() != b.degree() {
        return false;
    }
    let ct = a.cycle_type();
    if ct != b.cycle_type() {
        return false;
    }
    if !ct.splits_in_alt() {
        return true;
    }
    a.conjugator_to(b).is_some_and(|g| g.is_even())
}

/// Index permutation `j -> k` where `a * basepoints[j] * a⁻¹ == basepoints[k]`,
/// returned as a permutation of `{1..len}`.
pub fn induced_action(a: &Permutation, basepoints: &[Permutation]) -> Result<Permutation, PermError> {
    let mut images = Vec::with_capacity(basepoints.len());
    for b in basepoints {
        let c = a.conjugate(b)?;
        let k = basepoints
            .iter()
            .position(|p| *p == c)
            .ok_or_else(|| PermError::NotStabilizing(a.to_string()))?;
        images.push(k + 1);
    }
    Permutation::from_images(&images)
}

/// Closure of `generators` under composition (the finite subgroup they
/// generate). Fails once more than `cap` elements are found.
pub fn generate_subgroup(generators: &[Permutation], cap: usize) -> Result<BTreeSet<Permutation>, PermError> {
    let first = generators.first().ok_or(PermError::NoGenerators)?;
    let n = first.degree();
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(PermError::DegreeMismatch(n, g.degree()));
    }
    let id = Permutation::identity(n)?;
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.mul_unchecked(&x);
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(PermError::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Generators of `Alt_n`: the 3-cycles `(1 2 k)`.
pub fn alternating_generators(n: usize) -> Result<Vec<Permutation>, PermError> {
    check_degree(n)?;
    if n < 3 {
        return Ok(vec![Permutation::identity(n)?]);
    }
    (3..=n).map(|k| Permutation::from_cycles(n, &[[1, 2, k]])).collect()
}

/// Generators of `Sym_n`: `(1 2)` and `(1 2 ... n)`.
pub fn symmetric_generators(n: usize) -> Result<Vec<Permutation>, PermError> {
    check_degree(n)?;
    if n < 2 {
        return Ok(vec![Permutation::identity(n)?]);
    }
    Ok(vec![
        Permutation::from_cycles(n, &[[1, 2]])?,
        Permutation::from_cycles(n, &[(1..=n).collect::<Vec<_>>()])?,
    ])
}

pub fn alternating_group(n: usize) -> Result<BTreeSet<Permutation>, PermError> {
    generate_subgroup(&alternating_generators(n)?, usize::MAX)
}

pub fn symmetric_group(n: usize) -> Result<BTreeSet<Permutation>, PermError> {
    generate_subgroup(&symmetric_generators(n)?, usize::MAX)
}
