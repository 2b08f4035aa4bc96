//! Finite matroids given by their circuit families.
//!
//! Rank, bases and cocircuits are derived on first use and cached. Minors
//! are computed directly on circuits: the circuits of `M/F∖G` are the
//! minimal nonempty sets `C∖F` over circuits `C` of `M` avoiding `G`.

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{domain, Error, Result};
use crate::signed::{ElementSet, GroundSet};

/// Ground-set size above which the exhaustive elimination check refuses to
/// run unless the family is trusted.
pub const DEFAULT_VALIDATION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationOptions {
    pub cap: usize,
    /// Skip the elimination axiom (emptiness and incomparability are still
    /// checked).
    pub trusted: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            cap: DEFAULT_VALIDATION_CAP,
            trusted: false,
        }
    }
}

/// Why a set family is not the circuit family of a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitViolation {
    /// The empty set is a member.
    EmptyCircuit,
    /// `smaller ⊊ larger`, both members.
    Containment {
        smaller: ElementSet,
        larger: ElementSet,
    },
    /// No member `D` with `f ∈ D ⊆ (circuit ∪ ⋃ eliminators) ∖ x_set`.
    Elimination {
        circuit: ElementSet,
        x_set: ElementSet,
        eliminators: Vec<ElementSet>,
        f: usize,
    },
}

impl CircuitViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            CircuitViolation::EmptyCircuit => "C1",
            CircuitViolation::Containment { .. } => "C2",
            CircuitViolation::Elimination { .. } => "C3",
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        match self {
            CircuitViolation::EmptyCircuit => "(C1) the empty set is a circuit".into(),
            CircuitViolation::Containment { smaller, larger } => format!(
                "(C2) {} is properly contained in {}",
                ground.format_set(*smaller),
                ground.format_set(*larger)
            ),
            CircuitViolation::Elimination {
                circuit,
                x_set,
                eliminators,
                f,
            } => {
                let elim: Vec<String> = eliminators.iter().map(|c| ground.format_set(*c)).collect();
                format!(
                    "(C3) circuit {} with X = {}, eliminators [{}] and f = {}: no circuit through f inside the union avoiding X",
                    ground.format_set(*circuit),
                    ground.format_set(*x_set),
                    elim.join(", "),
                    ground.label(*f)
                )
            }
        }
    }
}

pub enum Validation {
    Valid(Matroid),
    Invalid(CircuitViolation),
}

#[derive(Debug)]
struct Derived {
    rank: usize,
    bases: Vec<ElementSet>,
    cocircuits: Vec<ElementSet>,
}

/// A matroid on a finite ground set, stored as its sorted circuit family.
#[derive(Clone)]
pub struct Matroid {
    ground: GroundSet,
    circuits: Arc<[ElementSet]>,
    derived: Arc<OnceLock<Derived>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self
            .circuits
            .iter()
            .map(|c| self.ground.format_set(*c))
            .collect();
        f.debug_struct("Matroid")
            .field("ground", &self.ground)
            .field("circuits", &cs)
            .finish()
    }
}

fn canonical_family(family: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = family.into_iter().collect();
    v.sort();
    v.dedup();
    v
}

/// Minimal members of a family of sets, sorted.
pub(crate) fn minimal_sets(family: impl IntoIterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = family.into_iter().collect();
    v.sort_by_key(|s| s.len());
    v.dedup();
    let mut out: Vec<ElementSet> = Vec::new();
    for s in v {
        if !out.iter().any(|t| t.is_subset(s)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// Checks (C1), (C2) and, unless trusted, the strong elimination axiom.
pub fn validate_circuits<I>(ground: &GroundSet, family: I, opts: ValidationOptions) -> Result<Validation>
where
    I: IntoIterator<Item = ElementSet>,
{
    let circuits = canonical_family(family);
    for c in &circuits {
        ground.check(*c)?;
    }
    if circuits.first().is_some_and(|c| c.is_empty()) {
        return Ok(Validation::Invalid(CircuitViolation::EmptyCircuit));
    }
    for &a in &circuits {
        for &b in &circuits {
            if a != b && a.is_subset(b) {
                return Ok(Validation::Invalid(CircuitViolation::Containment {
                    smaller: a,
                    larger: b,
                }));
            }
        }
    }
    if !opts.trusted {
        if ground.len() > opts.cap {
            return Err(Error::CapExceeded {
                check: "circuit validation",
                size: ground.len(),
                cap: opts.cap,
            });
        }
        if let Some(v) = find_elimination_failure(&circuits) {
            return Ok(Validation::Invalid(v));
        }
    }
    Ok(Validation::Valid(Matroid::from_parts(ground.clone(), circuits)))
}

fn find_elimination_failure(circuits: &[ElementSet]) -> Option<CircuitViolation> {
    for &c in circuits {
        for x_set in c.subsets() {
            if x_set.is_empty() {
                continue;
            }
            for f in (c - x_set).iter() {
                let targets: Vec<ElementSet> = circuits
                    .iter()
                    .copied()
                    .filter(|d| d.contains(f) && d.is_disjoint(x_set))
                    .collect();
                let xs: Vec<usize> = x_set.iter().collect();
                let options: Vec<Vec<ElementSet>> = xs
                    .iter()
                    .map(|&x| {
                        circuits
                            .iter()
                            .copied()
                            .filter(|d| (*d & x_set) == ElementSet::singleton(x) && !d.contains(f))
                            .collect()
                    })
                    .collect();
                let mut seen = HashSet::new();
                let mut chosen = Vec::new();
                if let Some(elim) =
                    elimination_dfs(c, &targets, &options, 0, ElementSet::EMPTY, &mut seen, &mut chosen)
                {
                    return Some(CircuitViolation::Elimination {
                        circuit: c,
                        x_set,
                        eliminators: elim,
                        f,
                    });
                }
            }
        }
    }
    None
}

// Searches for a choice of eliminators whose union leaves no target circuit
// inside `c ∪ union`. Reaching a union that already contains a target prunes
// the branch, since larger unions only make elimination easier.
fn elimination_dfs(
    c: ElementSet,
    targets: &[ElementSet],
    options: &[Vec<ElementSet>],
    depth: usize,
    union: ElementSet,
    seen: &mut HashSet<(usize, ElementSet)>,
    chosen: &mut Vec<ElementSet>,
) -> Option<Vec<ElementSet>> {
    let span = c | union;
    if targets.iter().any(|d| d.is_subset(span)) {
        return None;
    }
    if depth == options.len() {
        return Some(chosen.clone());
    }
    if !seen.insert((depth, union)) {
        return None;
    }
    for &cx in &options[depth] {
        chosen.push(cx);
        if let Some(w) = elimination_dfs(c, targets, options, depth + 1, union | cx, seen, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// Contracted and deleted element sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MinorSpec {
    pub contract: ElementSet,
    pub delete: ElementSet,
}

impl MinorSpec {
    pub fn new(contract: ElementSet, delete: ElementSet) -> Self {
        MinorSpec { contract, delete }
    }

    pub fn contract(set: ElementSet) -> Self {
        MinorSpec {
            contract: set,
            delete: ElementSet::EMPTY,
        }
    }

    pub fn delete(set: ElementSet) -> Self {
        MinorSpec {
            contract: ElementSet::EMPTY,
            delete: set,
        }
    }

    pub fn validate(&self, ground: &GroundSet) -> Result<()> {
        ground.check(self.contract | self.delete)?;
        if !self.contract.is_disjoint(self.delete) {
            return Err(domain(format!(
                "contracted and deleted sets overlap in {}",
                ground.format_set(self.contract & self.delete)
            )));
        }
        Ok(())
    }

    /// Elements surviving in the minor.
    pub fn kept(&self, ground: &GroundSet) -> ElementSet {
        ground.all() - self.contract - self.delete
    }

    /// Every minor spec of an `n`-element ground set (each element kept,
    /// contracted or deleted), in a fixed order.
    pub fn all(n: usize) -> impl Iterator<Item = MinorSpec> {
        let total = 3usize.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut spec = MinorSpec::default();
            for e in 0..n {
                match code % 3 {
                    1 => spec.contract = spec.contract.with(e),
                    2 => spec.delete = spec.delete.with(e),
                    _ => {}
                }
                code /= 3;
            }
            spec
        })
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        format!(
            "contract {} delete {}",
            ground.format_set(self.contract),
            ground.format_set(self.delete)
        )
    }
}

impl Matroid {
    fn from_parts(ground: GroundSet, circuits: Vec<ElementSet>) -> Self {
        Matroid {
            ground,
            circuits: circuits.into(),
            derived: Arc::new(OnceLock::new()),
        }
    }

    /// Validates with default options and turns a violation into an error.
    pub fn new<I: IntoIterator<Item = ElementSet>>(ground: &GroundSet, family: I) -> Result<Self> {
        Matroid::with_options(ground, family, ValidationOptions::default())
    }

    pub fn with_options<I: IntoIterator<Item = ElementSet>>(
        ground: &GroundSet,
        family: I,
        opts: ValidationOptions,
    ) -> Result<Self> {
        match validate_circuits(ground, family, opts)? {
            Validation::Valid(m) => Ok(m),
            Validation::Invalid(v) => Err(Error::NotAMatroid(v.describe(ground))),
        }
    }

    /// Skips the elimination axiom; for families known to be matroids.
    pub fn trusted<I: IntoIterator<Item = ElementSet>>(ground: &GroundSet, family: I) -> Result<Self> {
        Matroid::with_options(
            ground,
            family,
            ValidationOptions {
                trusted: true,
                ..ValidationOptions::default()
            },
        )
    }

    /// The uniform matroid `U_{r,n}` on `ground`.
    pub fn uniform(ground: &GroundSet, rank: usize) -> Result<Self> {
        let n = ground.len();
        if rank > n {
            return Err(domain(format!("rank {rank} exceeds ground size {n}")));
        }
        let circuits = if rank == n {
            Vec::new()
        } else {
            k_subsets(ground.all(), rank + 1)
        };
        Ok(Matroid::from_parts(ground.clone(), canonical_family(circuits)))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Circuits, sorted lexicographically.
    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    pub fn is_circuit(&self, set: ElementSet) -> bool {
        self.circuits.binary_search(&set).is_ok()
    }

    pub fn is_independent(&self, set: ElementSet) -> bool {
        !self.circuits.iter().any(|c| c.is_subset(set))
    }

    /// Rank of an arbitrary subset, by greedy extension.
    pub fn rank_of(&self, set: ElementSet) -> usize {
        self.max_independent_in(set).len()
    }

    /// A maximal independent subset of `set`, greedy in element order.
    pub fn max_independent_in(&self, set: ElementSet) -> ElementSet {
        self.extend_independent(ElementSet::EMPTY, set)
    }

    /// Greedily extends the independent set `base` by elements of `pool`.
    pub fn extend_independent(&self, base: ElementSet, pool: ElementSet) -> ElementSet {
        let mut i = base;
        for e in (pool - base).iter() {
            let j = i.with(e);
            if self.is_independent(j) {
                i = j;
            }
        }
        i
    }

    pub fn closure(&self, set: ElementSet) -> ElementSet {
        let r = self.rank_of(set);
        let mut cl = set;
        for e in (self.ground.all() - set).iter() {
            if self.rank_of(set.with(e)) == r {
                cl = cl.with(e);
            }
        }
        cl
    }

    fn derived(&self) -> &Derived {
        self.derived.get_or_init(|| {
            let all = self.ground.all();
            let rank = self.rank_of(all);
            let bases: Vec<ElementSet> = canonical_family(
                k_subsets(all, rank)
                    .into_iter()
                    .filter(|b| self.is_independent(*b)),
            );
            let cocircuits = if rank == 0 {
                Vec::new()
            } else {
                let mut hyperplanes = HashSet::new();
                for i in k_subsets(all, rank - 1) {
                    if self.is_independent(i) {
                        hyperplanes.insert(self.closure(i));
                    }
                }
                canonical_family(hyperplanes.into_iter().map(|h| all - h))
            };
            Derived {
                rank,
                bases,
                cocircuits,
            }
        })
    }

    pub fn rank(&self) -> usize {
        self.derived().rank
    }

    /// Bases, sorted lexicographically.
    pub fn bases(&self) -> &[ElementSet] {
        &self.derived().bases
    }

    pub fn is_basis(&self, set: ElementSet) -> bool {
        set.len() == self.rank() && self.is_independent(set)
    }

    /// Cocircuits (complements of hyperplanes), sorted lexicographically.
    pub fn cocircuits(&self) -> &[ElementSet] {
        &self.derived().cocircuits
    }

    pub fn dual(&self) -> Matroid {
        let d = self.derived();
        let all = self.ground.all();
        let dual_derived = Derived {
            rank: self.len() - d.rank,
            bases: canonical_family(d.bases.iter().map(|b| all - *b)),
            cocircuits: self.circuits.to_vec(),
        };
        let cell = OnceLock::new();
        let _ = cell.set(dual_derived);
        Matroid {
            ground: self.ground.clone(),
            circuits: d.cocircuits.clone().into(),
            derived: Arc::new(cell),
        }
    }

    /// The minor `M/F∖G`, on the surviving elements renumbered in order.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Matroid> {
        spec.validate(&self.ground)?;
        let kept = spec.kept(&self.ground);
        let raw = minor_circuits_raw(&self.circuits, spec);
        let circuits = raw.into_iter().map(|c| c.compress(kept));
        Ok(Matroid::from_parts(
            self.ground.subset(kept),
            canonical_family(circuits),
        ))
    }

    pub fn restrict(&self, set: ElementSet) -> Result<Matroid> {
        self.ground.check(set)?;
        self.minor(&MinorSpec::delete(self.ground.all() - set))
    }

    pub fn contract(&self, set: ElementSet) -> Result<Matroid> {
        self.minor(&MinorSpec::contract(set))
    }

    /// Whether `set` never meets a cocircuit in exactly one element, that
    /// is, whether it is a union of circuits.
    pub fn is_scrawl(&self, set: ElementSet) -> Result<bool> {
        self.ground.check(set)?;
        Ok(self.cocircuits().iter().all(|u| (*u & set).len() != 1))
    }

    /// The lexicographically least cocircuit `U` with `C ∩ U = {e, f}`.
    pub fn cocircuit_through_pair(&self, circuit: ElementSet, e: usize, f: usize) -> Result<ElementSet> {
        if !self.is_circuit(circuit) {
            return Err(domain(format!(
                "{} is not a circuit",
                self.ground.format_set(circuit)
            )));
        }
        if e == f || !circuit.contains(e) || !circuit.contains(f) {
            return Err(domain("need two distinct elements of the circuit"));
        }
        let pair = ElementSet::from_indices([e, f]);
        self.cocircuits()
            .iter()
            .copied()
            .find(|u| *u & circuit == pair)
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "no cocircuit meets {} exactly in {}",
                    self.ground.format_set(circuit),
                    self.ground.format_set(pair)
                ))
            })
    }

    /// The unique circuit inside `basis ∪ {e}`; `{e}` for a loop.
    pub fn fundamental_circuit(&self, basis: ElementSet, e: usize) -> Result<ElementSet> {
        if e >= self.len() {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        self.ground.check(basis)?;
        if !self.is_basis(basis) {
            return Err(domain(format!(
                "{} is not a basis",
                self.ground.format_set(basis)
            )));
        }
        if basis.contains(e) {
            return Err(domain(format!(
                "{} lies in the basis",
                self.ground.label(e)
            )));
        }
        let span = basis.with(e);
        self.circuits
            .iter()
            .copied()
            .find(|c| c.is_subset(span))
            .ok_or_else(|| Error::Invariant("basis plus element is independent".into()))
    }
}

/// Minor circuits in the original numbering.
pub(crate) fn minor_circuits_raw(circuits: &[ElementSet], spec: &MinorSpec) -> Vec<ElementSet> {
    minimal_sets(
        circuits
            .iter()
            .filter(|c| c.is_disjoint(spec.delete))
            .map(|c| *c - spec.contract)
            .filter(|c| !c.is_empty()),
    )
}

/// All `k`-element subsets of `set`.
pub fn k_subsets(set: ElementSet, k: usize) -> Vec<ElementSet> {
    let elems: Vec<usize> = set.iter().collect();
    let mut out = Vec::new();
    if k > elems.len() {
        return out;
    }
    let n = elems.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(ElementSet::from_indices(idx.iter().map(|&i| elems[i])));
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
