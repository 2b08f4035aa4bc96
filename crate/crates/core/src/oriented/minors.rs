use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::matroid::{minimal_sets, minor_circuits_raw, MinorSpec};
use crate::signed::{ElementSet, SignVector, SignedSubset};

use super::vectors::vector_closure;
use super::{CircuitSignature, SignaturePair};

/// Which signed subsets of `M` a minor `N = M/F∖G` inherits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum InducedMode {
    /// Restrictions of signed circuits `C ⊆ E(N) ∪ F` whose restriction is
    /// supported on a circuit of `N` (dually with `G` for cocircuits).
    #[default]
    Strict,
    /// Restrictions of vectors (covectors) supported inside `E(N) ∪ F`
    /// (`E(N) ∪ G`).
    VectorRestrictions,
    /// Restrictions of signed circuits inside `E(N) ∪ F` without asking the
    /// restriction to be a circuit of `N`.
    Unfiltered,
}

/// Restrictions to `kept` of the members of `family` avoiding `avoid`; with
/// `circuits` given, only those whose support is one of them.
pub(crate) fn restricted_members(
    family: &[SignVector],
    kept: ElementSet,
    avoid: ElementSet,
    circuits: Option<&[ElementSet]>,
) -> Vec<SignVector> {
    let mut out: BTreeSet<SignVector> = BTreeSet::new();
    for x in family {
        if !x.support().is_disjoint(avoid) {
            continue;
        }
        let r = x.restrict(kept);
        if r.is_empty() {
            continue;
        }
        if let Some(cs) = circuits {
            if cs.binary_search(&r.support()).is_err() {
                continue;
            }
        }
        out.insert(r);
    }
    out.into_iter().collect()
}

/// Induced circuit and cocircuit sets of `M/F∖G` in the numbering of `M`
/// (supports inside the kept elements).
pub(crate) fn induced_raw(
    circuits: &[SignVector],
    cocircuits: &[SignVector],
    circuit_supports: &[ElementSet],
    cocircuit_supports: &[ElementSet],
    spec: &MinorSpec,
    kept: ElementSet,
) -> (Vec<SignVector>, Vec<SignVector>) {
    let nc = minor_circuits_raw(circuit_supports, spec);
    let swapped = MinorSpec::new(spec.delete, spec.contract);
    let nu = minor_circuits_raw(cocircuit_supports, &swapped);
    (
        restricted_members(circuits, kept, spec.delete, Some(&nc)),
        restricted_members(cocircuits, kept, spec.contract, Some(&nu)),
    )
}

/// The induced sets of the minor `M/F∖G`, on the ground set of the minor.
/// No axiom is assumed of the pair.
pub fn induced_sets(
    pair: &SignaturePair,
    spec: &MinorSpec,
    mode: InducedMode,
) -> Result<(Vec<SignedSubset>, Vec<SignedSubset>)> {
    let m = pair.matroid();
    spec.validate(m.ground())?;
    let kept = spec.kept(m.ground());
    let cs = pair.circuits().sign_vectors();
    let us = pair.cocircuits().sign_vectors();
    let (s, t) = match mode {
        InducedMode::Strict => induced_raw(&cs, &us, m.circuits(), m.cocircuits(), spec, kept),
        InducedMode::Unfiltered => (
            restricted_members(&cs, kept, spec.delete, None),
            restricted_members(&us, kept, spec.contract, None),
        ),
        InducedMode::VectorRestrictions => (
            restricted_members(&vector_closure(&cs), kept, spec.delete, None),
            restricted_members(&vector_closure(&us), kept, spec.contract, None),
        ),
    };
    let ground = m.ground().subset(kept);
    let convert = |v: Vec<SignVector>| -> Result<Vec<SignedSubset>> {
        let mut v: Vec<SignVector> = v
            .into_iter()
            .map(|x| SignVector::new(x.pos().compress(kept), x.neg().compress(kept)))
            .collect();
        v.sort();
        v.into_iter()
            .map(|x| SignedSubset::from_signs(&ground, x))
            .collect()
    };
    Ok((convert(s)?, convert(t)?))
}

// Lifts every circuit of the minor to signed circuits of `sig` with
// `C' ⊆ C ⊆ C' ∪ contracted` and restricts them back.
fn lift_signature(
    sig: &CircuitSignature,
    spec: &MinorSpec,
    kept: ElementSet,
) -> Result<Vec<SignVector>> {
    let m = sig.matroid();
    let targets = minimal_sets(
        m.circuits()
            .iter()
            .filter(|c| c.is_disjoint(spec.delete))
            .map(|c| *c - spec.contract)
            .filter(|c| !c.is_empty()),
    );
    let mut chosen: BTreeMap<ElementSet, (SignVector, SignVector)> = BTreeMap::new();
    for (&support, &rep) in m.circuits().iter().zip(sig.representatives()) {
        if !support.is_disjoint(spec.delete) {
            continue;
        }
        let minor = support - spec.contract;
        if targets.binary_search(&minor).is_err() {
            continue;
        }
        let r = rep.restrict(kept).canonical();
        match chosen.get(&minor) {
            None => {
                chosen.insert(minor, (r, rep));
            }
            Some(&(old, old_lift)) if old != r => {
                let n = m.len();
                return Err(Error::LiftDependent {
                    minor: m.ground().format_set(minor),
                    first: old_lift.to_sign_string(n),
                    second: rep.to_sign_string(n),
                });
            }
            Some(_) => {}
        }
    }
    if let Some(t) = targets.iter().find(|t| !chosen.contains_key(t)) {
        return Err(Error::Invariant(format!(
            "minor circuit {} has no lift",
            m.ground().format_set(*t)
        )));
    }
    Ok(chosen
        .into_values()
        .map(|(r, _)| SignVector::new(r.pos().compress(kept), r.neg().compress(kept)))
        .collect())
}

/// The signatures a minor inherits by restricting lifted signed circuits and
/// cocircuits. Fails with [`Error::LiftDependent`] when two lifts of one
/// minor circuit restrict to different signings, which happens only for
/// pairs that are not orthogonal.
pub fn induced_signature(pair: &SignaturePair, spec: &MinorSpec) -> Result<SignaturePair> {
    let m = pair.matroid();
    spec.validate(m.ground())?;
    let kept = spec.kept(m.ground());
    let n = m.minor(spec)?;
    let dual_spec = MinorSpec::new(spec.delete, spec.contract);
    let nd = pair.cocircuits().matroid().minor(&dual_spec)?;
    let cs = CircuitSignature::from_representatives(&n, lift_signature(pair.circuits(), spec, kept)?)?;
    let us = CircuitSignature::from_representatives(&nd, lift_signature(pair.cocircuits(), &dual_spec, kept)?)?;
    SignaturePair::new(cs, us)
}
