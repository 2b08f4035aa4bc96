//! Directed graphs as oriented matroids: signed cycles and bonds, Minty
//! certificates grown from arborescences, flows and their decompositions.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{domain, Error, Result};
use crate::matroid::Matroid;
use crate::oriented::{CircuitSignature, SignaturePair};
use crate::signed::{ElementSet, GroundSet, SignVector, SignedSubset};

/// A loopless directed multigraph whose arcs are the matroid elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: usize,
    arcs: Vec<(usize, usize)>,
    ground: GroundSet,
}

impl Digraph {
    /// Vertices are `0..vertices`; arcs are `(tail, head, label)`.
    pub fn new<S: Into<String>>(vertices: usize, arcs: Vec<(usize, usize, S)>) -> Result<Digraph> {
        let mut ends = Vec::with_capacity(arcs.len());
        let mut labels = Vec::with_capacity(arcs.len());
        for (t, h, l) in arcs {
            let l = l.into();
            if t >= vertices || h >= vertices {
                return Err(domain(format!("arc {l} has an endpoint outside the vertex set")));
            }
            if t == h {
                return Err(domain(format!("arc {l} is a loop; loops are not supported")));
            }
            ends.push((t, h));
            labels.push(l);
        }
        Ok(Digraph {
            vertices,
            arcs: ends,
            ground: GroundSet::new(labels)?,
        })
    }

    /// Arcs labelled `e1, e2, …` in order.
    pub fn from_arcs(vertices: usize, arcs: &[(usize, usize)]) -> Result<Digraph> {
        Digraph::new(
            vertices,
            arcs.iter()
                .enumerate()
                .map(|(i, &(t, h))| (t, h, format!("e{}", i + 1)))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn tail(&self, a: usize) -> usize {
        self.arcs[a].0
    }

    pub fn head(&self, a: usize) -> usize {
        self.arcs[a].1
    }

    fn other_end(&self, a: usize, v: usize) -> usize {
        let (t, h) = self.arcs[a];
        if t == v {
            h
        } else {
            t
        }
    }

    /// Undirected reachability from `start` using arcs in `allowed`.
    fn undirected_component(&self, start: usize, allowed: ElementSet, vertices: Option<&[bool]>) -> Vec<bool> {
        let mut seen = vec![false; self.vertices];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for a in allowed.iter() {
                let (t, h) = self.arcs[a];
                if t != v && h != v {
                    continue;
                }
                let u = self.other_end(a, v);
                if vertices.is_some_and(|vs| !vs[u]) || seen[u] {
                    continue;
                }
                seen[u] = true;
                queue.push_back(u);
            }
        }
        seen
    }

    /// Signed cycles, one per cycle, signed by a traversal that uses the
    /// smallest arc forwards.
    pub fn signed_cycles(&self) -> Vec<SignVector> {
        let mut out = Vec::new();
        for a0 in 0..self.arcs.len() {
            let (t0, h0) = self.arcs[a0];
            let mut on_path = vec![false; self.vertices];
            on_path[h0] = true;
            let mut pos = ElementSet::singleton(a0);
            let mut neg = ElementSet::EMPTY;
            self.cycle_paths(a0, h0, t0, &mut on_path, &mut pos, &mut neg, &mut out);
        }
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_paths(
        &self,
        a0: usize,
        v: usize,
        target: usize,
        on_path: &mut [bool],
        pos: &mut ElementSet,
        neg: &mut ElementSet,
        out: &mut Vec<SignVector>,
    ) {
        if v == target {
            out.push(SignVector::new(*pos, *neg));
            return;
        }
        for a in a0 + 1..self.arcs.len() {
            let (t, h) = self.arcs[a];
            let (next, forward) = if t == v {
                (h, true)
            } else if h == v {
                (t, false)
            } else {
                continue;
            };
            if on_path[next] {
                continue;
            }
            on_path[next] = true;
            if forward {
                *pos = pos.with(a);
            } else {
                *neg = neg.with(a);
            }
            self.cycle_paths(a0, next, target, on_path, pos, neg, out);
            *pos = pos.without(a);
            *neg = neg.without(a);
            on_path[next] = false;
        }
    }

    /// The cycle matroid.
    pub fn cycle_matroid(&self) -> Result<Matroid> {
        Matroid::trusted(&self.ground, self.signed_cycles().into_iter().map(|c| c.support()))
    }

    /// Signs a bond by the side of its smallest arc's tail: arcs leaving
    /// that side are positive.
    pub fn sign_bond(&self, bond: ElementSet) -> SignVector {
        let first = bond.min().expect("bonds are nonempty");
        let rest = ElementSet::full(self.arcs.len()) - bond;
        let side = self.undirected_component(self.tail(first), rest, None);
        let mut pos = ElementSet::EMPTY;
        let mut neg = ElementSet::EMPTY;
        for a in bond.iter() {
            if side[self.tail(a)] {
                pos = pos.with(a);
            } else {
                neg = neg.with(a);
            }
        }
        SignVector::new(pos, neg)
    }

    /// The arcs with exactly one end in `side`, signed positive when they
    /// leave it.
    pub fn cut(&self, side: &[bool]) -> SignVector {
        let mut pos = ElementSet::EMPTY;
        let mut neg = ElementSet::EMPTY;
        for (a, &(t, h)) in self.arcs.iter().enumerate() {
            match (side[t], side[h]) {
                (true, false) => pos = pos.with(a),
                (false, true) => neg = neg.with(a),
                _ => {}
            }
        }
        SignVector::new(pos, neg)
    }
}

/// The oriented matroid of a digraph: cycles signed by traversal, bonds
/// signed by crossing direction.
pub fn graphic_om(d: &Digraph) -> Result<SignaturePair> {
    let m = d.cycle_matroid()?;
    let circuits = CircuitSignature::from_representatives(&m, d.signed_cycles())?;
    let dual = m.dual();
    let cocircuits = CircuitSignature::from_fn(&dual, |b| d.sign_bond(b))?;
    SignaturePair::new(circuits, cocircuits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    DirectedCycle,
    DirectedBond,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::DirectedCycle => "directed-cycle",
            CertificateKind::DirectedBond => "directed-bond",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub kind: CertificateKind,
    pub arcs: ElementSet,
    /// The certificate as a signed circuit (cycle) or signed cocircuit
    /// (bond); all of its signs are positive.
    pub orientation: SignedSubset,
}

/// Either a directed cycle or a directed bond through `arc`.
///
/// Grows a breadth-first arborescence from the head of the arc (arcs
/// scanned in order). If it reaches the tail, the tree path closes a
/// directed cycle. Otherwise no arc leaves the reached set `X`; with `K` the
/// component of `X` around the head and `L` the component of the rest
/// around the tail, the arcs between `L` and `K` form a bond, all directed
/// from `L` to `K`.
pub fn minty_certificate(d: &Digraph, arc: usize) -> Result<FarkasCertificate> {
    if arc >= d.arcs.len() {
        return Err(Error::UnknownElement(format!("#{arc}")));
    }
    let (v, w) = d.arcs[arc];
    let n = d.vertices;
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut reached = vec![false; n];
    reached[w] = true;
    let mut queue = VecDeque::from([w]);
    while let Some(x) = queue.pop_front() {
        for (a, &(t, h)) in d.arcs.iter().enumerate() {
            if t == x && !reached[h] {
                reached[h] = true;
                parent[h] = Some(a);
                queue.push_back(h);
            }
        }
    }
    if reached[v] {
        let mut arcs = ElementSet::singleton(arc);
        let mut x = v;
        while x != w {
            let a = parent[x].expect("tree path");
            arcs = arcs.with(a);
            x = d.tail(a);
        }
        return Ok(FarkasCertificate {
            kind: CertificateKind::DirectedCycle,
            arcs,
            orientation: SignedSubset::from_signs(&d.ground, SignVector::positive_on(arcs))?,
        });
    }
    let all = ElementSet::full(d.arcs.len());
    let k = d.undirected_component(w, all, Some(&reached));
    let outside: Vec<bool> = k.iter().map(|&b| !b).collect();
    let l = d.undirected_component(v, all, Some(&outside));
    let cut = d.cut(&l);
    if !cut.neg().is_empty() || !cut.pos().contains(arc) {
        return Err(Error::Invariant("cut around the tail is not directed".into()));
    }
    Ok(FarkasCertificate {
        kind: CertificateKind::DirectedBond,
        arcs: cut.pos(),
        orientation: SignedSubset::from_signs(&d.ground, cut)?,
    })
}

/// An integer value on every arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowFn {
    pub values: Vec<i64>,
}

impl FlowFn {
    pub fn new(values: Vec<i64>) -> Self {
        FlowFn { values }
    }

    pub fn support(&self) -> ElementSet {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, _)| i)
            .collect()
    }
}

fn check_len(d: &Digraph, f: &FlowFn) -> Result<()> {
    if f.values.len() != d.arcs.len() {
        return Err(domain(format!(
            "flow has {} values, digraph has {} arcs",
            f.values.len(),
            d.arcs.len()
        )));
    }
    Ok(())
}

/// The first signed cocircuit `U` (in signature order) with
/// `Σ f(e) U(e) ≠ 0`.
pub fn flow_violation(d: &Digraph, f: &FlowFn) -> Result<Option<SignedSubset>> {
    check_len(d, f)?;
    let om = graphic_om(d)?;
    for u in om.cocircuits().sign_vectors() {
        let s: i64 = u.pos().iter().map(|e| f.values[e]).sum::<i64>()
            - u.neg().iter().map(|e| f.values[e]).sum::<i64>();
        if s != 0 {
            return Ok(Some(om.cocircuits().to_signed(u)));
        }
    }
    Ok(None)
}

/// Whether `f` sums to zero against every signed cocircuit, i.e. is
/// conserved at every vertex.
pub fn is_flow(d: &Digraph, f: &FlowFn) -> Result<bool> {
    Ok(flow_violation(d, f)?.is_none())
}

/// Writes a nonnegative flow as a sum of directed cycle indicators; each
/// distinct cycle appears once with its multiplicity.
pub fn decompose_nonneg_flow(d: &Digraph, f: &FlowFn) -> Result<Vec<(ElementSet, u64)>> {
    check_len(d, f)?;
    if let Some(e) = f.values.iter().position(|v| *v < 0) {
        return Err(domain(format!(
            "flow is negative on {}",
            d.ground.label(e)
        )));
    }
    if let Some(u) = flow_violation(d, f)? {
        return Err(domain(format!("not a flow: nonzero sum on cocircuit {u}")));
    }
    let mut rest = f.values.clone();
    let mut cycles: BTreeMap<ElementSet, u64> = BTreeMap::new();
    while let Some(start) = rest.iter().position(|v| *v > 0) {
        // Walk along positive arcs until a vertex repeats.
        let mut order: Vec<usize> = vec![d.tail(start)];
        let mut via: Vec<usize> = Vec::new();
        let mut arc = start;
        loop {
            via.push(arc);
            let x = d.head(arc);
            if let Some(i) = order.iter().position(|&y| y == x) {
                let cycle: Vec<usize> = via[i..].to_vec();
                let amount = cycle.iter().map(|&a| rest[a]).min().expect("nonempty cycle");
                for &a in &cycle {
                    rest[a] -= amount;
                }
                *cycles.entry(cycle.into_iter().collect()).or_default() += amount as u64;
                break;
            }
            order.push(x);
            arc = (0..d.arcs.len())
                .find(|&a| d.tail(a) == x && rest[a] > 0)
                .ok_or_else(|| Error::Invariant("conservation failed during peeling".into()))?;
        }
    }
    Ok(cycles.into_iter().collect())
}

/// Splits the support of a `±1` function `g` into disjoint signed
/// cocircuits agreeing with `g`, provided `Σ C(e) g(e) = 0` for every
/// signed circuit `C` (checked; the first failing circuit is reported).
///
/// After reorienting so that `g` is positive, cocircuits are peeled off
/// one at a time: the least positive signed cocircuit inside the remaining
/// support through its smallest element.
pub fn disjoint_cocircuit_decomposition(pair: &SignaturePair, g: &SignedSubset) -> Result<Vec<SignedSubset>> {
    if g.ground() != pair.ground() {
        return Err(Error::GroundMismatch);
    }
    let gv = g.signs();
    for c in pair.circuits().sign_vectors() {
        let s = (c.pos() & gv.pos()).len() as i64 + (c.neg() & gv.neg()).len() as i64
            - (c.pos() & gv.neg()).len() as i64
            - (c.neg() & gv.pos()).len() as i64;
        if s != 0 {
            return Err(domain(format!(
                "hypothesis fails: the sum over signed circuit {} is {s}",
                pair.circuits().to_signed(c)
            )));
        }
    }
    let flip = gv.neg();
    let cocircuits: Vec<SignVector> = pair
        .cocircuits()
        .sign_vectors()
        .into_iter()
        .map(|u| u.reorient(flip))
        .filter(|u| u.is_positive())
        .collect();
    let mut rest = gv.support();
    let mut out = Vec::new();
    while let Some(e) = rest.min() {
        let u = cocircuits
            .iter()
            .find(|u| u.support().contains(e) && u.support().is_subset(rest))
            .ok_or_else(|| {
                Error::Invariant(format!(
                    "no positive cocircuit through {} inside the remaining support",
                    pair.ground().label(e)
                ))
            })?;
        rest = rest - u.support();
        out.push(pair.cocircuits().to_signed(u.reorient(flip)));
    }
    Ok(out)
}
