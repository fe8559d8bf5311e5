//! The rack abstraction: axiom checks, subracks, decompositions, pair
//! closures and morphism checks, independent of any construction.

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

/// Racks up to this many elements get a materialized operation table.
pub const DEFAULT_TABLE_THRESHOLD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RackError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("{0} is not an element of the rack")]
    NotMember(String),
    #[error("operation leaves the universe: {0}")]
    NotClosed(String),
    #[error("malformed operation table: {0}")]
    BadTable(String),
    #[error("universe of {size} elements exceeds the cap of {cap}")]
    TooLarge { size: u128, cap: u128 },
}

pub trait RackElement: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static {}
impl<T: Clone + Eq + Hash + Ord + Debug + Send + Sync + 'static> RackElement for T {}

/// Anything with a rack operation and a membership test. Lazily evaluated
/// racks (twisted homogeneous racks too large to enumerate) implement this
/// directly; [`FiniteRack`] implements it over its stored universe.
pub trait Rack {
    type Element: RackElement;

    fn contains(&self, x: &Self::Element) -> bool;

    /// `x ▷ y`.
    fn op(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;

    fn label(&self) -> String;
}

/// Row-major operation table on `{0..size}`: `get(x, y) = x ▷ y`.
#[derive(Clone, PartialEq, Eq)]
pub struct OpTable {
    size: usize,
    entries: Vec<u32>,
}

impl OpTable {
    pub fn new(size: usize, entries: Vec<u32>) -> Result<Self, RackError> {
        if size == 0 {
            return Err(RackError::BadTable("empty universe".into()));
        }
        if entries.len() != size * size {
            return Err(RackError::BadTable(format!("expected {} entries, got {}", size * size, entries.len())));
        }
        if let Some(v) = entries.iter().find(|&&v| v as usize >= size) {
            return Err(RackError::BadTable(format!("entry {v} out of range")));
        }
        Ok(OpTable { size, entries })
    }

    /// Builds a table from a closure on indices.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, RackError> {
        let mut entries = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                entries.push(f(x, y) as u32);
            }
        }
        Self::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.size + y] as usize
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u32] {
        &self.entries[x * self.size..(x + 1) * self.size]
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Overwrites one entry (used to build counterexamples).
    pub fn set(&mut self, x: usize, y: usize, value: usize) {
        assert!(value < self.size);
        self.entries[x * self.size + y] = value as u32;
    }
}

impl Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpTable").field("size", &self.size).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomVerdict {
    Valid,
    /// Row `x` sends both `y1` and `y2` to the same element.
    NotBijective { x: usize, y1: usize, y2: usize },
    /// `x ▷ (y ▷ z) != (x ▷ y) ▷ (x ▷ z)`.
    NotSelfDistributive { x: usize, y: usize, z: usize },
}

impl AxiomVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, AxiomVerdict::Valid)
    }
}

/// Checks both rack axioms, reporting the first non-bijective row or the
/// lexicographically first violating triple.
pub fn verify_axioms(table: &OpTable) -> AxiomVerdict {
    let n = table.size();
    let mut seen = vec![usize::MAX; n];
    for x in 0..n {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for (y, &v) in table.row(x).iter().enumerate() {
            let slot = &mut seen[v as usize];
            if *slot != usize::MAX {
                return AxiomVerdict::NotBijective { x, y1: *slot, y2: y };
            }
            *slot = y;
        }
    }
    // If L_a and L_b are automorphisms then so is L_{a▷b} = L_a L_b L_a⁻¹,
    // so checking a generating set proves self-distributivity.
    if generating_set(table).into_par_iter().all(|x| translation_violation(table, x).is_none()) {
        return AxiomVerdict::Valid;
    }
    let first = (0..n).into_par_iter().find_map_first(|x| translation_violation(table, x).map(|(y, z)| (x, y, z)));
    match first {
        None => AxiomVerdict::Valid,
        Some((x, y, z)) => AxiomVerdict::NotSelfDistributive { x, y, z },
    }
}

/// First `(y, z)` with `x ▷ (y ▷ z) != (x ▷ y) ▷ (x ▷ z)`.
fn translation_violation(table: &OpTable, x: usize) -> Option<(usize, usize)> {
    let n = table.size();
    let phi = table.row(x);
    for y in 0..n {
        let row_y = table.row(y);
        let row_xy = table.row(phi[y] as usize);
        for z in 0..n {
            if phi[row_y[z] as usize] != row_xy[phi[z] as usize] {
                return Some((y, z));
            }
        }
    }
    None
}

/// Elements whose closure under `▷` is the whole table. Rows are bijective, so
/// closure under `▷` is also closure under the inverse operation.
fn generating_set(table: &OpTable) -> Vec<usize> {
    let n = table.size();
    let mut inside = vec![false; n];
    let mut members = Vec::with_capacity(n);
    let mut gens = Vec::new();
    for start in 0..n {
        if inside[start] {
            continue;
        }
        gens.push(start);
        inside[start] = true;
        let mut done = members.len();
        members.push(start);
        while done < members.len() {
            let a = members[done];
            done += 1;
            for i in 0..done {
                let b = members[i];
                for c in [table.get(a, b), table.get(b, a)] {
                    if !inside[c] {
                        inside[c] = true;
                        members.push(c);
                    }
                }
            }
        }
    }
    gens
}

type OpFn<E> = Arc<dyn Fn(&E, &E) -> E + Send + Sync>;

/// A finite rack: a sorted universe plus an operation, materialized as an
/// [`OpTable`] when the universe is at most the table threshold.
#[derive(Clone)]
pub struct FiniteRack<E> {
    label: String,
    elements: Vec<E>,
    index: HashMap<E, u32>,
    op: OpFn<E>,
    table: Option<OpTable>,
}

impl<E: RackElement> FiniteRack<E> {
    pub fn new(
        label: impl Into<String>,
        elements: impl IntoIterator<Item = E>,
        op: impl Fn(&E, &E) -> E + Send + Sync + 'static,
    ) -> Result<Self, RackError> {
        Self::with_threshold(label, elements, op, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn with_threshold(
        label: impl Into<String>,
        elements: impl IntoIterator<Item = E>,
        op: impl Fn(&E, &E) -> E + Send + Sync + 'static,
        threshold: usize,
    ) -> Result<Self, RackError> {
        let mut elements: Vec<E> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        if elements.is_empty() {
            return Err(RackError::EmptySubset);
        }
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let mut rack = FiniteRack {
            label: label.into(),
            elements,
            index,
            op: Arc::new(op),
            table: None,
        };
        if rack.len() <= threshold {
            rack.table = Some(rack.build_table()?);
        }
        Ok(rack)
    }

    /// A rack given directly by its table; axioms are not checked here.
    pub fn from_table(label: impl Into<String>, elements: Vec<E>, table: OpTable) -> Result<Self, RackError> {
        if elements.len() != table.size() {
            return Err(RackError::BadTable("universe and table sizes differ".into()));
        }
        let mut sorted = elements.clone();
        sorted.sort();
        sorted.dedup();
        if sorted != elements {
            return Err(RackError::BadTable("universe must be sorted and duplicate-free".into()));
        }
        let index: HashMap<E, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
        let shared = Arc::new((elements.clone(), index.clone(), table.clone()));
        let op = move |x: &E, y: &E| {
            let (els, idx, t) = &*shared;
            els[t.get(idx[x] as usize, idx[y] as usize)].clone()
        };
        Ok(FiniteRack {
            label: label.into(),
            elements,
            index,
            op: Arc::new(op),
            table: Some(table),
        })
    }

    fn build_table(&self) -> Result<OpTable, RackError> {
        let n = self.len();
        let rows: Result<Vec<Vec<u32>>, RackError> = (0..n)
            .into_par_iter()
            .map(|x| {
                let ex = &self.elements[x];
                self.elements
                    .iter()
                    .map(|ey| {
                        let z = (self.op)(ex, ey);
                        self.index
                            .get(&z)
                            .copied()
                            .ok_or_else(|| RackError::NotClosed(format!("{ex:?} ▷ {ey:?} = {z:?}")))
                    })
                    .collect()
            })
            .collect();
        OpTable::new(n, rows?.concat())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn table(&self) -> Option<&OpTable> {
        self.table.as_ref()
    }

    /// The stored table, or a freshly built one above the threshold.
    pub fn table_or_build(&self) -> Result<Cow<'_, OpTable>, RackError> {
        match &self.table {
            Some(t) => Ok(Cow::Borrowed(t)),
            None => self.build_table().map(Cow::Owned),
        }
    }

    /// `x ▷ y` on indices. Panics if a lazily evaluated product leaves the universe.
    #[inline]
    pub fn op_index(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t.get(x, y),
            None => {
                let z = (self.op)(&self.elements[x], &self.elements[y]);
                self.index_of(&z).expect("rack operation left the universe")
            }
        }
    }

    pub fn verify_axioms(&self) -> Result<AxiomVerdict, RackError> {
        let table = self.table_or_build()?;
        Ok(verify_axioms(&table))
    }
}

impl<E: RackElement> Rack for FiniteRack<E> {
    type Element = E;

    fn contains(&self, x: &E) -> bool {
        self.index.contains_key(x)
    }

    fn op(&self, x: &E, y: &E) -> E {
        (self.op)(x, y)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

impl<E: RackElement> Debug for FiniteRack<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRack")
            .field("label", &self.label)
            .field("size", &self.len())
            .field("materialized", &self.table.is_some())
            .finish()
    }
}

fn check_members<R: Rack>(rack: &R, subset: &BTreeSet<R::Element>) -> Result<(), RackError> {
    if subset.is_empty() {
        return Err(RackError::EmptySubset);
    }
    match subset.iter().find(|x| !rack.contains(x)) {
        Some(x) => Err(RackError::NotMember(format!("{x:?}"))),
        None => Ok(()),
    }
}

/// `Y ▷ Y = Y`. Checked as `Y ▷ Y ⊆ Y`; each left translation is injective,
/// so on a finite set inclusion already forces equality.
pub fn is_subrack<R: Rack>(rack: &R, subset: &BTreeSet<R::Element>) -> Result<bool, RackError> {
    check_members(rack, subset)?;
    Ok(subset
        .iter()
        .all(|x| subset.iter().all(|y| subset.contains(&rack.op(x, y)))))
}

/// Disjoint blocks `X_i` of a subrack `Y = ⊔ X_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubrackPartition<E> {
    pub blocks: Vec<BTreeSet<E>>,
}

impl<E: RackElement> SubrackPartition<E> {
    pub fn union(&self) -> BTreeSet<E> {
        self.blocks.iter().flatten().cloned().collect()
    }
}

/// Blocks nonempty and pairwise disjoint, `Y ▷ Y = Y`, and `Y ▷ X_i = X_i` for every block.
pub fn is_decomposition<R: Rack>(rack: &R, partition: &SubrackPartition<R::Element>) -> bool {
    let total: usize = partition.blocks.iter().map(|b| b.len()).sum();
    let union = partition.union();
    if partition.blocks.iter().any(|b| b.is_empty()) || union.len() != total {
        return false;
    }
    if union.iter().any(|x| !rack.contains(x)) {
        return false;
    }
    partition
        .blocks
        .iter()
        .all(|block| union.iter().all(|a| block.iter().all(|b| block.contains(&rack.op(a, b)))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairClosure<E> {
    /// Minimal closed pair `(R₀ ∋ r, S₀ ∋ s)`, blocks in that order.
    Disjoint(SubrackPartition<E>),
    Merged,
}

const RED: u8 = 1;
const BLUE: u8 = 2;

/// Smallest pair `(R₀ ∋ r, S₀ ∋ s)` such that `a ▷ b` lies in the block of
/// `b` for every `a ∈ R₀ ∪ S₀` and every `b` in a block. Stops at the first
/// element forced into both blocks.
///
/// The minimal closed pair is unique, so the result does not depend on the
/// order in which the worklist is processed.
pub fn pair_closure<R: Rack>(rack: &R, r: &R::Element, s: &R::Element) -> PairClosure<R::Element> {
    let mut color: HashMap<R::Element, u8> = HashMap::new();
    let mut members: Vec<R::Element> = Vec::new();

    fn add<E: RackElement>(color: &mut HashMap<E, u8>, members: &mut Vec<E>, e: E, c: u8) -> bool {
        match color.get(&e) {
            Some(&old) => old == c,
            None => {
                color.insert(e.clone(), c);
                members.push(e);
                true
            }
        }
    }

    if !add(&mut color, &mut members, r.clone(), RED) || !add(&mut color, &mut members, s.clone(), BLUE) {
        return PairClosure::Merged;
    }
    let mut i = 0;
    while i < members.len() {
        let a = members[i].clone();
        let ca = color[&a];
        for j in 0..=i {
            let b = members[j].clone();
            let cb = color[&b];
            if !add(&mut color, &mut members, rack.op(&a, &b), cb) {
                return PairClosure::Merged;
            }
            if j != i && !add(&mut color, &mut members, rack.op(&b, &a), ca) {
                return PairClosure::Merged;
            }
        }
        i += 1;
    }
    let mut red = BTreeSet::new();
    let mut blue = BTreeSet::new();
    for (e, c) in color {
        if c == RED {
            red.insert(e);
        } else {
            blue.insert(e);
        }
    }
    PairClosure::Disjoint(SubrackPartition { blocks: vec![red, blue] })
}

/// Index-based [`pair_closure`] over an operation table, with reusable
/// scratch buffers for repeated calls.
pub struct IndexedClosure {
    color: Vec<u8>,
    members: Vec<u32>,
}

impl IndexedClosure {
    pub fn new(size: usize) -> Self {
        IndexedClosure {
            color: vec![0; size],
            members: Vec::new(),
        }
    }

    fn reset(&mut self) {
        for &m in &self.members {
            self.color[m as usize] = 0;
        }
        self.members.clear();
    }

    #[inline]
    fn add(&mut self, e: usize, c: u8) -> bool {
        let old = self.color[e];
        if old == 0 {
            self.color[e] = c;
            self.members.push(e as u32);
            true
        } else {
            old == c
        }
    }

    /// Returns `(R₀, S₀)` as sorted index lists, or `None` when the blocks merge.
    pub fn run(&mut self, table: &OpTable, r: usize, s: usize) -> Option<(Vec<u32>, Vec<u32>)> {
        self.reset();
        if !self.add(r, RED) || !self.add(s, BLUE) {
            return None;
        }
        let mut i = 0;
        while i < self.members.len() {
            let a = self.members[i] as usize;
            let ca = self.color[a];
            let row_a = table.row(a);
            for j in 0..=i {
                let b = self.members[j] as usize;
                let cb = self.color[b];
                if !self.add(row_a[b] as usize, cb) {
                    return None;
                }
                if j != i && !self.add(table.get(b, a), ca) {
                    return None;
                }
            }
            i += 1;
        }
        let mut red: Vec<u32> = self.members.iter().copied().filter(|&m| self.color[m as usize] == RED).collect();
        let mut blue: Vec<u32> = self.members.iter().copied().filter(|&m| self.color[m as usize] == BLUE).collect();
        red.sort_unstable();
        blue.sort_unstable();
        Some((red, blue))
    }
}

/// True iff `f(x ▷ y) = f(x) ▷ f(y)` for all `x, y` in the source universe.
pub fn check_morphism<E: RackElement, T: Rack>(
    f: impl Fn(&E) -> T::Element,
    source: &FiniteRack<E>,
    target: &T,
) -> bool {
    let images: Vec<T::Element> = source.elements().iter().map(&f).collect();
    (0..source.len()).all(|x| {
        (0..source.len()).all(|y| f(source.element(source.op_index(x, y))) == target.op(&images[x], &images[y]))
    })
}
