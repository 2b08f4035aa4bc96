use crate::error::{Error, Result};
use crate::matroid::{minor_circuits_raw, MinorSpec};
use crate::signed::{ElementSet, GroundSet, SignVector, SignedSubset};

use super::minors::{induced_raw, restricted_members, InducedMode};
use super::painting::{check_4p, FourPartition};
use super::vectors::vector_closure;
use super::{random_subset, CheckOptions, CheckResult, Coverage, SignaturePair, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FpFailure {
    Neither,
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpViolation {
    pub element: usize,
    pub failure: FpFailure,
}

impl FpViolation {
    pub fn describe(&self, ground: &GroundSet) -> String {
        let what = match self.failure {
            FpFailure::Neither => "lies in no positive member of either set",
            FpFailure::Both => "lies in positive members of both sets",
        };
        format!("element {} {what}", ground.label(self.element))
    }
}

fn positive_cover(family: &[SignVector]) -> ElementSet {
    family
        .iter()
        .filter(|x| x.is_positive())
        .fold(ElementSet::EMPTY, |acc, x| acc | x.support())
}

/// The Farkas property on the elements of `ground`, for sign vectors given
/// in any numbering containing `ground`.
pub fn check_fp_raw(ground: ElementSet, s: &[SignVector], t: &[SignVector]) -> Verdict<FpViolation> {
    let cs = positive_cover(s) & ground;
    let ct = positive_cover(t) & ground;
    let bad = (ground - (cs | ct)) | (cs & ct);
    match bad.min() {
        None => Verdict::Holds,
        Some(e) => Verdict::Violated(FpViolation {
            element: e,
            failure: if cs.contains(e) {
                FpFailure::Both
            } else {
                FpFailure::Neither
            },
        }),
    }
}

/// The Farkas property: every element lies in a positive member of
/// exactly one of `s` and `t`. The empty signed subset is never positive.
pub fn check_fp(ground: &GroundSet, s: &[SignedSubset], t: &[SignedSubset]) -> Result<Verdict<FpViolation>> {
    if s.iter().chain(t).any(|x| x.ground() != ground) {
        return Err(Error::GroundMismatch);
    }
    let sv: Vec<SignVector> = s.iter().map(|x| x.signs()).collect();
    let tv: Vec<SignVector> = t.iter().map(|x| x.signs()).collect();
    Ok(check_fp_raw(ground.all(), &sv, &tv))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaViolation {
    pub spec: MinorSpec,
    /// Reorientation set, in the numbering of the original ground set.
    pub reorientation: ElementSet,
    pub element: usize,
    pub failure: FpFailure,
}

impl FaViolation {
    pub fn describe(&self, ground: &GroundSet) -> String {
        let what = match self.failure {
            FpFailure::Neither => "neither induced set has a positive member through",
            FpFailure::Both => "both induced sets have positive members through",
        };
        format!(
            "minor ({}) reoriented on {}: {what} {}",
            self.spec.describe(ground),
            ground.format_set(self.reorientation),
            ground.label(self.element)
        )
    }
}

// Elements of `kept` that lie in a member of `family` which is positive after
// reorienting on `a`.
fn reoriented_cover(family: &[SignVector], a: ElementSet) -> ElementSet {
    family
        .iter()
        .filter(|x| x.support() & a == x.neg())
        .fold(ElementSet::EMPTY, |acc, x| acc | x.support())
}

struct FaContext {
    circuits: Vec<SignVector>,
    cocircuits: Vec<SignVector>,
    circuit_supports: Vec<ElementSet>,
    cocircuit_supports: Vec<ElementSet>,
    mode: InducedMode,
    all: ElementSet,
}

impl FaContext {
    fn new(pair: &SignaturePair, mode: InducedMode) -> Self {
        let (circuits, cocircuits) = match mode {
            InducedMode::VectorRestrictions => (
                vector_closure(&pair.circuits().sign_vectors()),
                vector_closure(&pair.cocircuits().sign_vectors()),
            ),
            _ => (pair.circuits().sign_vectors(), pair.cocircuits().sign_vectors()),
        };
        FaContext {
            circuits,
            cocircuits,
            circuit_supports: pair.matroid().circuits().to_vec(),
            cocircuit_supports: pair.matroid().cocircuits().to_vec(),
            mode,
            all: pair.ground().all(),
        }
    }

    fn induced(&self, spec: &MinorSpec) -> (ElementSet, Vec<SignVector>, Vec<SignVector>) {
        let kept = self.all - spec.contract - spec.delete;
        let (s, t) = match self.mode {
            InducedMode::Strict => induced_raw(
                &self.circuits,
                &self.cocircuits,
                &self.circuit_supports,
                &self.cocircuit_supports,
                spec,
                kept,
            ),
            _ => (
                restricted_members(&self.circuits, kept, spec.delete, None),
                restricted_members(&self.cocircuits, kept, spec.contract, None),
            ),
        };
        (kept, s, t)
    }

    fn failure(&self, spec: &MinorSpec, a: Option<ElementSet>) -> Option<FaViolation> {
        let (kept, s, t) = self.induced(spec);
        let check = |a: ElementSet| {
            let cs = reoriented_cover(&s, a);
            let ct = reoriented_cover(&t, a);
            let bad = (kept - (cs | ct)) | (cs & ct);
            bad.min().map(|e| FaViolation {
                spec: *spec,
                reorientation: a,
                element: e,
                failure: if cs.contains(e) {
                    FpFailure::Both
                } else {
                    FpFailure::Neither
                },
            })
        };
        match a {
            Some(a) => check(a & kept),
            None => kept.subsets().find_map(check),
        }
    }
}

/// The (FA) axiom: for every minor `N` (each element kept, contracted or
/// deleted) and every `A ⊆ E(N)`, the induced sets of `N` reoriented on `A`
/// have the Farkas property.
pub fn check_fa(pair: &SignaturePair, opts: &CheckOptions) -> Result<CheckResult<FaViolation>> {
    check_fa_with_mode(pair, opts, InducedMode::Strict)
}

/// [`check_fa`] with one of the alternative induced-set modes.
pub fn check_fa_with_mode(
    pair: &SignaturePair,
    opts: &CheckOptions,
    mode: InducedMode,
) -> Result<CheckResult<FaViolation>> {
    let n = pair.len();
    let plan = opts.plan("FA", n)?;
    let ctx = FaContext::new(pair, mode);
    match plan {
        None => {
            for spec in MinorSpec::all(n) {
                if let Some(v) = ctx.failure(&spec, None) {
                    return Ok(CheckResult {
                        verdict: Verdict::Violated(v),
                        coverage: Coverage::Exhaustive,
                    });
                }
            }
            Ok(CheckResult {
                verdict: Verdict::Holds,
                coverage: Coverage::Exhaustive,
            })
        }
        Some((mut rng, sampling)) => {
            let coverage = Coverage::Sampled {
                trials: sampling.trials,
                seed: sampling.seed,
            };
            for _ in 0..sampling.trials {
                let contract = random_subset(&mut rng, ctx.all);
                let delete = random_subset(&mut rng, ctx.all - contract);
                let a = random_subset(&mut rng, ctx.all - contract - delete);
                let spec = MinorSpec::new(contract, delete);
                if let Some(v) = ctx.failure(&spec, Some(a)) {
                    return Ok(CheckResult {
                        verdict: Verdict::Violated(v),
                        coverage,
                    });
                }
            }
            Ok(CheckResult {
                verdict: Verdict::Holds,
                coverage,
            })
        }
    }
}

/// The lifting condition under which the 4-painting property implies (FA):
/// whenever an alternative of the painting holds at `(B, W, G, R)` and `e`,
/// some witness restricts to a circuit (resp. cocircuit) of `M/G∖R`.
/// Returns the first partition and element where this fails.
pub fn lifting_condition_holds(
    pair: &SignaturePair,
    opts: &CheckOptions,
) -> Result<Verdict<(FourPartition, usize)>> {
    let n = pair.len();
    if n > opts.cap {
        return Err(Error::CapExceeded {
            check: "lifting condition",
            size: n,
            cap: opts.cap,
        });
    }
    let cs = pair.circuits().sign_vectors();
    let us = pair.cocircuits().sign_vectors();
    let m = pair.matroid();
    for code in 0..1u64 << (2 * n) {
        let mut p = FourPartition {
            black: ElementSet::EMPTY,
            white: ElementSet::EMPTY,
            green: ElementSet::EMPTY,
            red: ElementSet::EMPTY,
        };
        for e in 0..n {
            match (code >> (2 * (n - 1 - e))) & 3 {
                0 => p.black = p.black.with(e),
                1 => p.white = p.white.with(e),
                2 => p.green = p.green.with(e),
                _ => p.red = p.red.with(e),
            }
        }
        let focus = p.black | p.white;
        let spec = MinorSpec::new(p.green, p.red);
        let minor_c = minor_circuits_raw(m.circuits(), &spec);
        let minor_u = minor_circuits_raw(m.cocircuits(), &MinorSpec::new(p.red, p.green));
        for e in focus.iter() {
            let ok = |fam: &[SignVector], avoid: ElementSet, targets: &[ElementSet]| {
                let mut any = false;
                for x in fam {
                    if x.support().contains(e)
                        && x.support().is_disjoint(avoid)
                        && x.neg().is_disjoint(p.black)
                        && x.pos().is_disjoint(p.white)
                    {
                        any = true;
                        if targets.binary_search(&(x.support() & focus)).is_ok() {
                            return true;
                        }
                    }
                }
                !any
            };
            if !ok(&cs, p.red, &minor_c) || !ok(&us, p.green, &minor_u) {
                return Ok(Verdict::Violated((p, e)));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A pair with the 4-painting property that fails (FA).
#[derive(Clone, Debug)]
pub struct SearchHit {
    pub pair: SignaturePair,
    pub fa_violation: FaViolation,
    pub lifting_condition: bool,
}

/// Runs candidates through the 4-painting and (FA) checks and collects the
/// pairs that pass the first and fail the second.
pub fn search_4p_without_fa<I>(candidates: I, opts_4p: &CheckOptions, opts_fa: &CheckOptions) -> Result<Vec<SearchHit>>
where
    I: IntoIterator<Item = SignaturePair>,
{
    let mut hits = Vec::new();
    for pair in candidates {
        if !check_4p(&pair, opts_4p)?.holds() {
            continue;
        }
        if let Verdict::Violated(v) = check_fa(&pair, opts_fa)?.verdict {
            let lifting = lifting_condition_holds(&pair, opts_4p)?.holds();
            hits.push(SearchHit {
                pair,
                fa_violation: v,
                lifting_condition: lifting,
            });
        }
    }
    Ok(hits)
}
