use std::collections::HashSet;

use crate::error::{domain, Error, Result};
use crate::matroid::Matroid;
use crate::signed::{ElementSet, GroundSet, SignVector, SignedSubset};

use super::{random_subset, CheckOptions, CheckResult, CircuitSignature, Coverage, SignaturePair, Verdict};

/// A signed circuit `C`, elements `X ⊆ C` to eliminate, one eliminator
/// `C_x` per `x ∈ X`, and the element `f` to keep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationInstance {
    pub circuit: SignedSubset,
    pub x_set: ElementSet,
    /// `(x, C_x)` sorted by `x`.
    pub eliminators: Vec<(usize, SignedSubset)>,
    pub f: usize,
}

impl EliminationInstance {
    pub fn new(circuit: SignedSubset, eliminators: Vec<(usize, SignedSubset)>, f: usize) -> Self {
        let mut eliminators = eliminators;
        eliminators.sort_by_key(|(x, _)| *x);
        let x_set = eliminators.iter().map(|(x, _)| *x).collect();
        EliminationInstance {
            circuit,
            x_set,
            eliminators,
            f,
        }
    }

    /// Checks the shape conditions against a circuit signature.
    pub fn validate(&self, sig: &CircuitSignature) -> Result<()> {
        let c = self.circuit.signs();
        let n = sig.matroid().len();
        if self.circuit.ground() != sig.ground() {
            return Err(Error::GroundMismatch);
        }
        if !sig.contains(c) {
            return Err(domain(format!("{} is not a signed circuit", self.circuit)));
        }
        if !self.x_set.is_subset(c.support()) {
            return Err(domain("X is not contained in the circuit"));
        }
        let xs: ElementSet = self.eliminators.iter().map(|(x, _)| *x).collect();
        if xs != self.x_set || self.eliminators.len() != self.x_set.len() {
            return Err(domain("need exactly one eliminator per element of X"));
        }
        for (x, cx) in &self.eliminators {
            let v = cx.signs();
            if cx.ground() != sig.ground() {
                return Err(Error::GroundMismatch);
            }
            if !sig.contains(v) {
                return Err(domain(format!("{} is not a signed circuit", v.to_sign_string(n))));
            }
            if v.support() & self.x_set != ElementSet::singleton(*x) {
                return Err(domain(format!(
                    "eliminator {} must meet X exactly in {}",
                    cx,
                    sig.ground().label(*x)
                )));
            }
            if !c.separator(v).contains(*x) {
                return Err(domain(format!(
                    "{} is not in the separator of the circuit and its eliminator",
                    sig.ground().label(*x)
                )));
            }
        }
        if !c.support().contains(self.f) || self.separator_union().contains(self.f) {
            return Err(domain("f must lie in the circuit outside every separator"));
        }
        Ok(())
    }

    fn separator_union(&self) -> ElementSet {
        let c = self.circuit.signs();
        self.eliminators
            .iter()
            .fold(ElementSet::EMPTY, |acc, (_, cx)| acc | c.separator(cx.signs()))
    }

    /// `C⁺ ∪ ⋃ C_x⁺` and `C⁻ ∪ ⋃ C_x⁻`.
    pub fn sign_unions(&self) -> (ElementSet, ElementSet) {
        let c = self.circuit.signs();
        self.eliminators
            .iter()
            .fold((c.pos(), c.neg()), |(p, n), (_, cx)| (p | cx.positive(), n | cx.negative()))
    }

    /// Whether `d` has `f` in its support and signs inside the unions
    /// minus `X`.
    pub fn is_eliminant(&self, d: SignVector) -> bool {
        let (p, n) = self.sign_unions();
        d.support().contains(self.f)
            && d.pos().is_subset(p - self.x_set)
            && d.neg().is_subset(n - self.x_set)
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        let elim: Vec<String> = self
            .eliminators
            .iter()
            .map(|(x, cx)| format!("{}:{}", ground.label(*x), cx))
            .collect();
        format!(
            "C={} X={} eliminators=[{}] f={}",
            self.circuit,
            ground.format_set(self.x_set),
            elim.join(" "),
            ground.label(self.f)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationViolation {
    pub instance: EliminationInstance,
}

impl EliminationViolation {
    pub fn describe(&self, ground: &GroundSet) -> String {
        format!(
            "{}: no signed circuit through f with conforming signs",
            self.instance.describe(ground)
        )
    }
}

struct Search {
    x_set: ElementSet,
    targets: Vec<SignVector>,
    options: Vec<Vec<SignVector>>,
    seen: HashSet<(usize, ElementSet, ElementSet)>,
    chosen: Vec<SignVector>,
}

impl Search {
    fn satisfied(&self, p: ElementSet, n: ElementSet) -> bool {
        let p = p - self.x_set;
        let n = n - self.x_set;
        self.targets
            .iter()
            .any(|d| d.pos().is_subset(p) && d.neg().is_subset(n))
    }

    // Depth-first over eliminator choices; a state whose unions already admit
    // an eliminant is pruned, since unions only grow.
    fn run(&mut self, depth: usize, p: ElementSet, n: ElementSet) -> bool {
        if self.satisfied(p, n) {
            return false;
        }
        if depth == self.options.len() {
            return true;
        }
        if !self.seen.insert((depth, p, n)) {
            return false;
        }
        for i in 0..self.options[depth].len() {
            let cx = self.options[depth][i];
            self.chosen.push(cx);
            if self.run(depth + 1, p | cx.pos(), n | cx.neg()) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }
}

fn eliminator_options(all: &[SignVector], c: SignVector, x_set: ElementSet, x: usize, f: usize) -> Vec<SignVector> {
    all.iter()
        .copied()
        .filter(|cx| {
            cx.support() & x_set == ElementSet::singleton(x)
                && cx.sign(x) == -c.sign(x)
                && !c.separator(*cx).contains(f)
        })
        .collect()
}

fn failing_family(
    all: &[SignVector],
    c: SignVector,
    x_set: ElementSet,
    f: usize,
) -> Option<Vec<SignVector>> {
    let targets = all
        .iter()
        .copied()
        .filter(|d| d.support().contains(f) && d.support().is_disjoint(x_set))
        .collect();
    let options = x_set
        .iter()
        .map(|x| eliminator_options(all, c, x_set, x, f))
        .collect();
    let mut search = Search {
        x_set,
        targets,
        options,
        seen: HashSet::new(),
        chosen: Vec::new(),
    };
    search
        .run(0, c.pos(), c.neg())
        .then(|| search.chosen.clone())
}

fn instance_from(sig: &CircuitSignature, c: SignVector, x_set: ElementSet, family: Vec<SignVector>, f: usize) -> EliminationInstance {
    EliminationInstance::new(
        sig.to_signed(c),
        x_set
            .iter()
            .zip(family)
            .map(|(x, cx)| (x, sig.to_signed(cx)))
            .collect(),
        f,
    )
}

/// Strong signed circuit elimination: for every instance there is a signed
/// circuit `D` with `f ∈ D`, `D⁺ ⊆ (C⁺ ∪ ⋃C_x⁺)∖X` and
/// `D⁻ ⊆ (C⁻ ∪ ⋃C_x⁻)∖X`.
///
/// Instances for `-C` mirror those for `C`, so only representatives are
/// scanned as the main circuit.
pub fn check_ce(sig: &CircuitSignature, opts: &CheckOptions) -> Result<CheckResult<EliminationViolation>> {
    let n = sig.matroid().len();
    let all = sig.sign_vectors();
    let mut reps = sig.representatives().to_vec();
    reps.sort();
    match opts.plan("CE", n)? {
        None => {
            for &c in &reps {
                for x_set in c.support().subsets() {
                    if x_set.is_empty() {
                        continue;
                    }
                    for f in (c.support() - x_set).iter() {
                        if let Some(family) = failing_family(&all, c, x_set, f) {
                            return Ok(CheckResult {
                                verdict: Verdict::Violated(EliminationViolation {
                                    instance: instance_from(sig, c, x_set, family, f),
                                }),
                                coverage: Coverage::Exhaustive,
                            });
                        }
                    }
                }
            }
            Ok(CheckResult {
                verdict: Verdict::Holds,
                coverage: Coverage::Exhaustive,
            })
        }
        Some((mut rng, sampling)) => {
            use rand::seq::SliceRandom;
            let coverage = Coverage::Sampled {
                trials: sampling.trials,
                seed: sampling.seed,
            };
            for _ in 0..sampling.trials {
                let Some(&c) = reps.choose(&mut rng) else { break };
                let x_set = random_subset(&mut rng, c.support());
                let rest: Vec<usize> = (c.support() - x_set).iter().collect();
                let (Some(&f), false) = (rest.choose(&mut rng), x_set.is_empty()) else {
                    continue;
                };
                if let Some(family) = failing_family(&all, c, x_set, f) {
                    return Ok(CheckResult {
                        verdict: Verdict::Violated(EliminationViolation {
                            instance: instance_from(sig, c, x_set, family, f),
                        }),
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

fn coindependent_in_restriction(m: &Matroid, g: ElementSet, s: ElementSet) -> bool {
    m.rank_of(g - s) == m.rank_of(g)
}

fn eliminate_avoiding_set(pair: &SignaturePair, inst: &EliminationInstance, avoid: ElementSet) -> Result<SignedSubset> {
    let m = pair.matroid();
    let span = inst
        .eliminators
        .iter()
        .fold(inst.circuit.support(), |acc, (_, cx)| acc | cx.support());
    let keep = avoid.with(inst.f);
    if !coindependent_in_restriction(m, span, keep) {
        return Err(Error::Invariant(format!(
            "{} is not coindependent in the restriction to {}",
            m.ground().format_set(keep),
            m.ground().format_set(span)
        )));
    }
    // Grow the coindependent set to a cobasis of M|span in element order;
    // what is left is a basis avoiding it.
    let full = m.rank_of(span);
    let mut cobasis = keep;
    for e in (span - keep).iter() {
        if m.rank_of(span - cobasis.with(e)) == full {
            cobasis = cobasis.with(e);
        }
    }
    let basis = span - cobasis;
    let support = m
        .circuits()
        .iter()
        .copied()
        .find(|c| c.contains(inst.f) && c.is_subset(basis.with(inst.f)))
        .ok_or_else(|| Error::Invariant("no fundamental circuit through f".into()))?;
    let d = pair
        .circuits()
        .signing_of(support)
        .expect("fundamental circuit is a circuit");
    let d = if d.sign(inst.f) == inst.circuit.sign(inst.f) {
        d
    } else {
        d.opposite()
    };
    Ok(pair.circuits().to_signed(d))
}

/// Special elimination for orthogonal pairs: a signed circuit `D` with
/// `f ∈ D`, `D(f) = C(f)` and `D ⊆ (C ∪ ⋃C_x)∖X`, built from the
/// fundamental circuit of `f` with respect to a basis of the restriction to
/// `C ∪ ⋃C_x` that avoids `X ∪ f`. The signs of `D` need not conform.
pub fn special_eliminate(pair: &SignaturePair, inst: &EliminationInstance) -> Result<SignedSubset> {
    inst.validate(pair.circuits())?;
    eliminate_avoiding_set(pair, inst, inst.x_set)
}

/// Refinement of [`special_eliminate`]: if `e` is an element where the
/// circuit `D` returned by it breaks sign conformity (negative in `D` but
/// only positive in the unions, or the other way round), returns a signed
/// circuit through `f` with the sign of `C(f)` that also avoids `e`.
pub fn special_eliminate_avoiding(pair: &SignaturePair, inst: &EliminationInstance, e: usize) -> Result<SignedSubset> {
    let d = special_eliminate(pair, inst)?;
    let (a, b) = inst.sign_unions();
    let offending = (d.negative() & (a - b)) | (d.positive() & (b - a));
    if !offending.contains(e) {
        return Err(domain(format!(
            "{} does not break conformity of {}",
            pair.ground().label(e),
            d
        )));
    }
    eliminate_avoiding_set(pair, inst, inst.x_set.with(e))
}
