//! Scalar 2-cocycles on small racks and the braid equation for the
//! associated braiding.
//!
//! Values live in the cyclic group of `m`-th roots of unity and are stored
//! as exponents mod `m`, so every comparison is exact. Only degree one
//! (scalar) cocycles over a single block are handled. Finiteness and
//! faithfulness of cocycles are not modelled.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::rack::OpTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error("cocycle order must be positive")]
    ZeroOrder,
    #[error("expected {expected} cocycle values, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("{total} tables exceed the limit of {limit}; enable sampling to visit a random subset")]
    LimitExceeded { total: String, limit: u64 },
}

/// `q: X × X → μ_m`, row-major exponents mod `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarCocycle<'a> {
    table: &'a OpTable,
    order: u32,
    values: Vec<u32>,
}

impl<'a> ScalarCocycle<'a> {
    pub fn new(table: &'a OpTable, order: u32, values: Vec<u32>) -> Result<Self, CocycleError> {
        if order == 0 {
            return Err(CocycleError::ZeroOrder);
        }
        let expected = table.size() * table.size();
        if values.len() != expected {
            return Err(CocycleError::WrongSize { expected, got: values.len() });
        }
        let values = values.into_iter().map(|v| v % order).collect();
        Ok(ScalarCocycle { table, order, values })
    }

    /// `q ≡ ζ^k`.
    pub fn constant(table: &'a OpTable, order: u32, k: u32) -> Result<Self, CocycleError> {
        Self::new(table, order, vec![k; table.size() * table.size()])
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn table(&self) -> &OpTable {
        self.table
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.values[x * self.table.size() + y]
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.order as u64) as u32
    }

    pub fn braiding(&self) -> BraidingMatrix {
        let n = self.table.size();
        let mut images = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                images.push(((self.table.get(x, y) as u32, x as u32), self.get(x, y)));
            }
        }
        BraidingMatrix { size: n, order: self.order, images }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquationVerdict {
    Holds,
    /// First basis triple `(x, y, z)` in lexicographic order where it fails.
    Violated { x: usize, y: usize, z: usize },
}

impl EquationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, EquationVerdict::Holds)
    }
}

/// `q(x, y▷z) + q(y, z) = q(x▷y, x▷z) + q(x, z)` in exponents, for all triples.
pub fn check_cocycle(q: &ScalarCocycle) -> EquationVerdict {
    let t = q.table;
    let n = t.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = q.add(q.get(x, t.get(y, z)), q.get(y, z));
                let rhs = q.add(q.get(t.get(x, y), t.get(x, z)), q.get(x, z));
                if lhs != rhs {
                    return EquationVerdict::Violated { x, y, z };
                }
            }
        }
    }
    EquationVerdict::Holds
}

/// The monomial map `c(e_x ⊗ e_y) = q(x, y) e_{x▷y} ⊗ e_x` on `V ⊗ V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingMatrix {
    size: usize,
    order: u32,
    /// Indexed by `x·|X| + y`: target basis pair and exponent.
    images: Vec<((u32, u32), u32)>,
}

impl BraidingMatrix {
    pub fn dimension(&self) -> usize {
        self.size * self.size
    }

    /// Image of the basis vector `e_x ⊗ e_y` as a basis pair and exponent.
    pub fn apply(&self, x: usize, y: usize) -> ((usize, usize), u32) {
        let ((a, b), e) = self.images[x * self.size + y];
        ((a as usize, b as usize), e)
    }

    /// The inverse monomial map, if `c` permutes the basis pairs.
    pub fn inverse(&self) -> Option<BraidingMatrix> {
        let mut images = vec![None; self.images.len()];
        for (i, &((a, b), e)) in self.images.iter().enumerate() {
            let slot = &mut images[a as usize * self.size + b as usize];
            if slot.is_some() {
                return None;
            }
            let source = ((i / self.size) as u32, (i % self.size) as u32);
            *slot = Some((source, (self.order - e) % self.order));
        }
        Some(BraidingMatrix {
            size: self.size,
            order: self.order,
            images: images.into_iter().collect::<Option<Vec<_>>>()?,
        })
    }

    /// `self ∘ other`, both monomial.
    pub fn compose(&self, other: &BraidingMatrix) -> BraidingMatrix {
        let images = other
            .images
            .iter()
            .map(|&((a, b), e)| {
                let (target, f) = self.apply(a as usize, b as usize);
                ((target.0 as u32, target.1 as u32), ((e as u64 + f as u64) % self.order as u64) as u32)
            })
            .collect();
        BraidingMatrix { size: self.size, order: self.order, images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &((a, b), e))| e == 0 && a as usize == i / self.size && b as usize == i % self.size)
    }

    /// Applies `c` to positions `(k, k+1)` of a basis triple with a running exponent.
    fn act(&self, (mut v, e): ([usize; 3], u32), k: usize) -> ([usize; 3], u32) {
        let ((a, b), f) = self.apply(v[k], v[k + 1]);
        v[k] = a;
        v[k + 1] = b;
        (v, ((e as u64 + f as u64) % self.order as u64) as u32)
    }
}

/// Evaluates `(c⊗id)(id⊗c)(c⊗id)` and `(id⊗c)(c⊗id)(id⊗c)` on every basis
/// vector of `V⊗V⊗V`.
pub fn check_braid(q: &ScalarCocycle) -> EquationVerdict {
    let c = q.braiding();
    let n = q.table.size();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let start = ([x, y, z], 0);
                let lhs = c.act(c.act(c.act(start, 0), 1), 0);
                let rhs = c.act(c.act(c.act(start, 1), 0), 1);
                if lhs != rhs {
                    return EquationVerdict::Violated { x, y, z };
                }
            }
        }
    }
    EquationVerdict::Holds
}

/// How [`equivalence_sweep`] chooses tables when they cannot all be visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub visited: u64,
    pub exhaustive: bool,
    pub cocycles: u64,
    pub braids: u64,
    pub cocycle_not_braid: u64,
    pub braid_not_cocycle: u64,
}

impl SweepReport {
    pub fn equivalence_holds(&self) -> bool {
        self.cocycle_not_braid == 0 && self.braid_not_cocycle == 0
    }

    fn record(mut self, cocycle: bool, braid: bool) -> Self {
        self.visited += 1;
        self.cocycles += cocycle as u64;
        self.braids += braid as u64;
        self.cocycle_not_braid += (cocycle && !braid) as u64;
        self.braid_not_cocycle += (braid && !cocycle) as u64;
        self
    }

    fn merge(mut self, other: SweepReport) -> Self {
        self.visited += other.visited;
        self.cocycles += other.cocycles;
        self.braids += other.braids;
        self.cocycle_not_braid += other.cocycle_not_braid;
        self.braid_not_cocycle += other.braid_not_cocycle;
        self
    }
}

/// Number of cocycle tables of order `m` on a rack of `size` elements, if it fits.
pub fn table_count(size: usize, m: u32) -> Option<u128> {
    (m as u128).checked_pow(u32::try_from(size * size).ok()?)
}

/// Compares [`check_cocycle`] and [`check_braid`] on every table of order `m`
/// when there are at most `limit` of them, otherwise on `limit` random tables
/// if sampling is enabled.
pub fn equivalence_sweep(
    table: &OpTable,
    m: u32,
    limit: u64,
    sampling: Option<Sampling>,
) -> Result<SweepReport, CocycleError> {
    if m == 0 {
        return Err(CocycleError::ZeroOrder);
    }
    let cells = table.size() * table.size();
    let total = table_count(table.size(), m);
    let verdicts = |values: Vec<u32>| {
        let q = ScalarCocycle::new(table, m, values).expect("sized table");
        (check_cocycle(&q).holds(), check_braid(&q).holds())
    };
    match total {
        Some(total) if total <= limit as u128 => {
            let report = (0..total as u64)
                .into_par_iter()
                .map(|index| verdicts(digits(index, m, cells)))
                .fold(SweepReport::default, |acc, (c, b)| acc.record(c, b))
                .reduce(SweepReport::default, SweepReport::merge);
            Ok(SweepReport { exhaustive: true, ..report })
        }
        _ => {
            let Some(Sampling { seed }) = sampling else {
                return Err(CocycleError::LimitExceeded {
                    total: total.map_or_else(|| format!("{m}^{cells}"), |t| t.to_string()),
                    limit,
                });
            };
            let mut rng = StdRng::seed_from_u64(seed);
            let tables: Vec<Vec<u32>> =
                (0..limit).map(|_| (0..cells).map(|_| rng.gen_range(0..m)).collect()).collect();
            let report = tables
                .into_par_iter()
                .map(verdicts)
                .fold(SweepReport::default, |acc, (c, b)| acc.record(c, b))
                .reduce(SweepReport::default, SweepReport::merge);
            Ok(SweepReport { exhaustive: false, ..report })
        }
    }
}

/// The `index`-th table in base `m`, least significant cell first.
fn digits(mut index: u64, m: u32, cells: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(cells);
    for _ in 0..cells {
        out.push((index % m as u64) as u32);
        index /= m as u64;
    }
    out
}
