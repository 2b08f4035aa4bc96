//! Circuit and cocircuit signatures and the axiom checkers built on them.
//!
//! A [`CircuitSignature`] stores one representative per circuit (the signing
//! whose smallest element is positive); the opposite signing is implied.
//! Cocircuit signatures are circuit signatures of the dual matroid.

mod derive;
mod elimination;
mod farkas;
mod minors;
mod orthogonality;
mod painting;
mod vectors;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::matroid::Matroid;
use crate::signed::{ElementSet, GroundSet, SignVector, SignedSubset};

pub use derive::{check_signature_uniqueness, derive_cocircuit_signature, Derivation};
pub use elimination::{
    check_ce, special_eliminate, special_eliminate_avoiding, EliminationInstance,
    EliminationViolation,
};
pub use farkas::{
    check_fa, check_fa_with_mode, check_fp, check_fp_raw, lifting_condition_holds, search_4p_without_fa, FaViolation,
    FpFailure, FpViolation, SearchHit,
};
pub use minors::{induced_sets, induced_signature, InducedMode};
pub use orthogonality::{check_orthogonality, check_orthogonality_sep, OrthogonalityViolation};
pub use painting::{check_4p, FourPartition, PaintingViolation};
pub use vectors::{conformal_decompose, vectors, vectors_by_sequences, DecompositionFailure};

pub const DEFAULT_CAP_4P: usize = 10;
pub const DEFAULT_CAP_CE: usize = 10;
pub const DEFAULT_CAP_FA: usize = 8;

/// Outcome of an axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds,
    Violated(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Violated(w) => Some(w),
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Holds => Verdict::Holds,
            Verdict::Violated(w) => Verdict::Violated(f(w)),
        }
    }
}

/// How much of the quantified family a check looked at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult<W> {
    pub verdict: Verdict<W>,
    pub coverage: Coverage,
}

impl<W> CheckResult<W> {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    pub fn witness(&self) -> Option<&W> {
        self.verdict.witness()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub seed: u64,
}

/// Size cap for an exhaustive check, with an optional sampling fallback
/// used only when the ground set exceeds the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub cap: usize,
    pub sample: Option<Sampling>,
}

impl CheckOptions {
    pub fn with_cap(cap: usize) -> Self {
        CheckOptions { cap, sample: None }
    }

    pub fn four_painting() -> Self {
        CheckOptions::with_cap(DEFAULT_CAP_4P)
    }

    pub fn elimination() -> Self {
        CheckOptions::with_cap(DEFAULT_CAP_CE)
    }

    pub fn farkas_axiom() -> Self {
        CheckOptions::with_cap(DEFAULT_CAP_FA)
    }

    #[must_use]
    pub fn sampled(mut self, trials: usize, seed: u64) -> Self {
        self.sample = Some(Sampling { trials, seed });
        self
    }

    /// `Ok(None)` for an exhaustive run, `Ok(Some(rng, trials))` for a
    /// sampled one.
    pub(crate) fn plan(&self, check: &'static str, size: usize) -> Result<Option<(ChaCha8Rng, Sampling)>> {
        if size <= self.cap {
            return Ok(None);
        }
        match self.sample {
            Some(s) => Ok(Some((ChaCha8Rng::seed_from_u64(s.seed), s))),
            None => Err(Error::CapExceeded {
                check,
                size,
                cap: self.cap,
            }),
        }
    }
}

pub(crate) fn random_subset(rng: &mut ChaCha8Rng, of: ElementSet) -> ElementSet {
    of.iter().filter(|_| rng.gen_bool(0.5)).collect()
}

/// One signing (up to sign) of every circuit of a matroid.
#[derive(Clone, PartialEq, Eq)]
pub struct CircuitSignature {
    matroid: Matroid,
    reps: Arc<[SignVector]>,
}

impl CircuitSignature {
    /// Builds a signature from a symmetric family of signed subsets: every
    /// member's opposite must be present and every circuit signed exactly
    /// once up to sign.
    pub fn new<I: IntoIterator<Item = SignedSubset>>(matroid: &Matroid, signed: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in signed {
            if s.ground() != matroid.ground() {
                return Err(Error::GroundMismatch);
            }
            set.insert(s.signs());
        }
        for v in &set {
            if !set.contains(&v.opposite()) {
                return Err(Error::InvalidSignature(format!(
                    "not symmetric: {} is present but its opposite is not",
                    v.to_sign_string(matroid.len())
                )));
            }
        }
        CircuitSignature::from_representatives(matroid, set)
    }

    /// Builds a signature from one signing per circuit (either sign);
    /// the opposites are implied.
    pub fn from_representatives<I: IntoIterator<Item = SignVector>>(matroid: &Matroid, reps: I) -> Result<Self> {
        let n = matroid.len();
        let circuits = matroid.circuits();
        let mut slots: Vec<Option<SignVector>> = vec![None; circuits.len()];
        for v in reps {
            matroid.ground().check(v.support())?;
            let idx = circuits.binary_search(&v.support()).map_err(|_| {
                Error::InvalidSignature(format!(
                    "{} is not supported on a circuit",
                    v.to_sign_string(n)
                ))
            })?;
            let v = v.canonical();
            match slots[idx] {
                Some(old) if old != v => {
                    return Err(Error::InvalidSignature(format!(
                        "circuit {} is signed both as {} and {}",
                        matroid.ground().format_set(v.support()),
                        old.to_sign_string(n),
                        v.to_sign_string(n)
                    )))
                }
                _ => slots[idx] = Some(v),
            }
        }
        let reps = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::InvalidSignature(format!(
                        "circuit {} has no signing",
                        matroid.ground().format_set(circuits[i])
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CircuitSignature {
            matroid: matroid.clone(),
            reps: reps.into(),
        })
    }

    /// Signs every circuit with `sign_of(circuit)`.
    pub fn from_fn(matroid: &Matroid, mut sign_of: impl FnMut(ElementSet) -> SignVector) -> Result<Self> {
        let reps: Vec<SignVector> = matroid.circuits().iter().map(|c| sign_of(*c)).collect();
        CircuitSignature::from_representatives(matroid, reps)
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn ground(&self) -> &GroundSet {
        self.matroid.ground()
    }

    /// One signing per circuit, in circuit order, smallest element positive.
    pub fn representatives(&self) -> &[SignVector] {
        &self.reps
    }

    /// All signed circuits (both signs), sorted.
    pub fn sign_vectors(&self) -> Vec<SignVector> {
        let mut v: Vec<SignVector> = self.reps.iter().flat_map(|r| [*r, r.opposite()]).collect();
        v.sort();
        v
    }

    pub fn signed_subsets(&self) -> Vec<SignedSubset> {
        self.sign_vectors()
            .into_iter()
            .map(|v| self.to_signed(v))
            .collect()
    }

    pub(crate) fn to_signed(&self, v: SignVector) -> SignedSubset {
        SignedSubset::from_signs(self.ground(), v).expect("sign vector lies in the ground set")
    }

    /// The representative signing of `circuit`, if it is a circuit.
    pub fn signing_of(&self, circuit: ElementSet) -> Option<SignVector> {
        self.matroid
            .circuits()
            .binary_search(&circuit)
            .ok()
            .map(|i| self.reps[i])
    }

    pub fn contains(&self, v: SignVector) -> bool {
        self.signing_of(v.support()) == Some(v.canonical())
    }

    #[must_use]
    pub fn reorient(&self, set: ElementSet) -> Self {
        CircuitSignature {
            matroid: self.matroid.clone(),
            reps: self.reps.iter().map(|r| r.reorient(set).canonical()).collect(),
        }
    }

    /// The same signature with the signing of one circuit replaced.
    pub fn with_signing(&self, v: SignVector) -> Result<Self> {
        let idx = self
            .matroid
            .circuits()
            .binary_search(&v.support())
            .map_err(|_| domain("not supported on a circuit"))?;
        let mut reps = self.reps.to_vec();
        reps[idx] = v.canonical();
        Ok(CircuitSignature {
            matroid: self.matroid.clone(),
            reps: reps.into(),
        })
    }
}

impl fmt::Debug for CircuitSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.matroid.len();
        let reps: Vec<String> = self.reps.iter().map(|r| r.to_sign_string(n)).collect();
        f.debug_struct("CircuitSignature")
            .field("ground", self.ground())
            .field("representatives", &reps)
            .finish()
    }
}

/// A circuit signature together with a cocircuit signature of the same
/// matroid. Neither orthogonality nor any other axiom is assumed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignaturePair {
    circuits: CircuitSignature,
    cocircuits: CircuitSignature,
}

impl SignaturePair {
    pub fn new(circuits: CircuitSignature, cocircuits: CircuitSignature) -> Result<Self> {
        let m = circuits.matroid();
        let d = cocircuits.matroid();
        if m.ground() != d.ground() {
            return Err(Error::GroundMismatch);
        }
        if m.cocircuits() != d.circuits() {
            return Err(Error::InvalidSignature(
                "cocircuit signature is not over the dual matroid".into(),
            ));
        }
        Ok(SignaturePair {
            circuits,
            cocircuits,
        })
    }

    pub fn matroid(&self) -> &Matroid {
        self.circuits.matroid()
    }

    pub fn ground(&self) -> &GroundSet {
        self.circuits.ground()
    }

    pub fn len(&self) -> usize {
        self.matroid().len()
    }

    pub fn is_empty(&self) -> bool {
        self.matroid().is_empty()
    }

    pub fn circuits(&self) -> &CircuitSignature {
        &self.circuits
    }

    pub fn cocircuits(&self) -> &CircuitSignature {
        &self.cocircuits
    }

    /// The pair of the dual matroid (roles swapped).
    pub fn dual(&self) -> SignaturePair {
        SignaturePair {
            circuits: self.cocircuits.clone(),
            cocircuits: self.circuits.clone(),
        }
    }

    #[must_use]
    pub fn reorient(&self, set: ElementSet) -> SignaturePair {
        SignaturePair {
            circuits: self.circuits.reorient(set),
            cocircuits: self.cocircuits.reorient(set),
        }
    }

    pub fn with_circuits(&self, circuits: CircuitSignature) -> Result<SignaturePair> {
        SignaturePair::new(circuits, self.cocircuits.clone())
    }

    pub fn with_cocircuits(&self, cocircuits: CircuitSignature) -> Result<SignaturePair> {
        SignaturePair::new(self.circuits.clone(), cocircuits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::uniform_alt;

    #[test]
    fn signature_requires_symmetry() {
        let m = Matroid::new(&GroundSet::numbered(3), [ElementSet::full(3)]).unwrap();
        let g = m.ground().clone();
        let x = SignedSubset::parse(&g, "+-+").unwrap();
        assert!(CircuitSignature::new(&m, [x.clone()]).is_err());
        let sig = CircuitSignature::new(&m, [x.clone(), x.opposite()]).unwrap();
        assert_eq!(sig.sign_vectors().len(), 2);
        assert!(sig.contains(x.opposite().signs()));
    }

    #[test]
    fn conflicting_signings_rejected() {
        let m = Matroid::new(&GroundSet::numbered(3), [ElementSet::full(3)]).unwrap();
        let a = SignVector::parse("+-+").unwrap();
        let b = SignVector::parse("+++").unwrap();
        assert!(CircuitSignature::from_representatives(&m, [a, b]).is_err());
        assert!(CircuitSignature::from_representatives(&m, []).is_err());
    }

    #[test]
    fn pair_requires_dual() {
        let p = uniform_alt(5).unwrap();
        assert!(SignaturePair::new(p.circuits().clone(), p.circuits().clone()).is_err());
        assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn caps_and_sampling_plan() {
        let o = CheckOptions::with_cap(4);
        assert!(o.plan("x", 4).unwrap().is_none());
        assert!(matches!(o.plan("x", 5), Err(Error::CapExceeded { .. })));
        assert!(o.sampled(10, 1).plan("x", 5).unwrap().is_some());
    }
}
