use crate::error::{domain, Result};
use crate::signed::{ElementSet, GroundSet, SignVector, SignedSubset};

use super::{random_subset, CheckOptions, CheckResult, Coverage, SignaturePair, Verdict};

/// A partition of the ground set into black, white, green and red.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FourPartition {
    pub black: ElementSet,
    pub white: ElementSet,
    pub green: ElementSet,
    pub red: ElementSet,
}

impl FourPartition {
    pub fn new(
        ground: &GroundSet,
        black: ElementSet,
        white: ElementSet,
        green: ElementSet,
        red: ElementSet,
    ) -> Result<Self> {
        let parts = [black, white, green, red];
        let mut seen = ElementSet::EMPTY;
        for p in parts {
            if !p.is_disjoint(seen) {
                return Err(domain("the four parts are not pairwise disjoint"));
            }
            seen = seen | p;
        }
        if seen != ground.all() {
            return Err(domain("the four parts do not cover the ground set"));
        }
        Ok(FourPartition {
            black,
            white,
            green,
            red,
        })
    }

    /// Decodes the `code`-th partition of `0..n` in lexicographic order,
    /// element 0 most significant and colours ordered black, white, green,
    /// red.
    fn from_code(n: usize, code: u64) -> Self {
        let mut p = FourPartition {
            black: ElementSet::EMPTY,
            white: ElementSet::EMPTY,
            green: ElementSet::EMPTY,
            red: ElementSet::EMPTY,
        };
        for e in 0..n {
            let digit = (code >> (2 * (n - 1 - e))) & 3;
            p.assign(e, digit);
        }
        p
    }

    fn assign(&mut self, e: usize, colour: u64) {
        match colour {
            0 => self.black = self.black.with(e),
            1 => self.white = self.white.with(e),
            2 => self.green = self.green.with(e),
            _ => self.red = self.red.with(e),
        }
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        format!(
            "B={} W={} G={} R={}",
            ground.format_set(self.black),
            ground.format_set(self.white),
            ground.format_set(self.green),
            ground.format_set(self.red)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaintingViolation {
    pub partition: FourPartition,
    pub element: usize,
    /// Both alternatives hold, witnessed by this circuit and cocircuit;
    /// `None` when neither holds.
    pub both: Option<(SignedSubset, SignedSubset)>,
}

impl PaintingViolation {
    pub fn describe(&self, ground: &GroundSet) -> String {
        let what = match &self.both {
            None => "neither alternative holds".to_string(),
            Some((x, y)) => format!("both alternatives hold (circuit {x}, cocircuit {y})"),
        };
        format!(
            "{} at element {}: {what}",
            self.partition.describe(ground),
            ground.label(self.element)
        )
    }
}

fn painted(x: SignVector, black: ElementSet, white: ElementSet, avoid: ElementSet) -> bool {
    x.support().is_disjoint(avoid) && x.neg().is_disjoint(black) && x.pos().is_disjoint(white)
}

fn covered(family: &[SignVector], p: &FourPartition, avoid: ElementSet) -> ElementSet {
    let focus = p.black | p.white;
    family
        .iter()
        .filter(|x| painted(**x, p.black, p.white, avoid))
        .fold(ElementSet::EMPTY, |acc, x| acc | (x.support() & focus))
}

/// First element of `B ∪ W` where the painting alternative fails.
pub(crate) fn painting_failure(
    s: &[SignVector],
    t: &[SignVector],
    p: &FourPartition,
) -> Option<(usize, Option<(SignVector, SignVector)>)> {
    let focus = p.black | p.white;
    let cs = covered(s, p, p.red);
    let ct = covered(t, p, p.green);
    let bad = (focus - (cs ^ ct)) | (cs & ct);
    let e = bad.min()?;
    let both = (cs & ct).contains(e).then(|| {
        let pick = |fam: &[SignVector], avoid| {
            *fam.iter()
                .find(|x| x.support().contains(e) && painted(**x, p.black, p.white, avoid))
                .expect("covered element has a witness")
        };
        (pick(s, p.red), pick(t, p.green))
    });
    Some((e, both))
}

/// The 4-painting property of the pair, over every 4-partition (in
/// lexicographic order) and every black or white element.
pub fn check_4p(pair: &SignaturePair, opts: &CheckOptions) -> Result<CheckResult<PaintingViolation>> {
    let n = pair.len();
    let s = pair.circuits().sign_vectors();
    let t = pair.cocircuits().sign_vectors();
    let report = |p: FourPartition, (e, both): (usize, Option<(SignVector, SignVector)>)| PaintingViolation {
        partition: p,
        element: e,
        both: both.map(|(x, y)| (pair.circuits().to_signed(x), pair.cocircuits().to_signed(y))),
    };
    match opts.plan("4P", n)? {
        None => {
            for code in 0..1u64 << (2 * n) {
                let p = FourPartition::from_code(n, code);
                if let Some(f) = painting_failure(&s, &t, &p) {
                    return Ok(CheckResult {
                        verdict: Verdict::Violated(report(p, f)),
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
            let all = pair.ground().all();
            for _ in 0..sampling.trials {
                let bw = random_subset(&mut rng, all);
                let black = random_subset(&mut rng, bw);
                let green = random_subset(&mut rng, all - bw);
                let p = FourPartition {
                    black,
                    white: bw - black,
                    green,
                    red: all - bw - green,
                };
                if let Some(f) = painting_failure(&s, &t, &p) {
                    return Ok(CheckResult {
                        verdict: Verdict::Violated(report(p, f)),
                        coverage: Coverage::Sampled {
                            trials: sampling.trials,
                            seed: sampling.seed,
                        },
                    });
                }
            }
            Ok(CheckResult {
                verdict: Verdict::Holds,
                coverage: Coverage::Sampled {
                    trials: sampling.trials,
                    seed: sampling.seed,
                },
            })
        }
    }
}
