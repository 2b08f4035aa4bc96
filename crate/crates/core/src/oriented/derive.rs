use crate::error::{domain, Error, Result};
use crate::signed::{ElementSet, SignVector};

use super::orthogonality::{check_orthogonality, OrthogonalityViolation};
use super::{CircuitSignature, SignaturePair, Verdict};

/// Result of deriving a cocircuit signature from a circuit signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    Derived(CircuitSignature),
    /// The constructed cocircuit signature is not orthogonal to the circuit
    /// signature, so no orthogonal one exists.
    Failed(OrthogonalityViolation),
}

impl Derivation {
    pub fn succeeded(&self) -> bool {
        matches!(self, Derivation::Derived(_))
    }

    pub fn signature(&self) -> Option<&CircuitSignature> {
        match self {
            Derivation::Derived(s) => Some(s),
            Derivation::Failed(_) => None,
        }
    }
}

/// Signs every cocircuit `U` from the circuit signature: the smallest
/// element `e_U` of `U` is positive, and every other `e ∈ U` gets
/// `-C(e_U)·C(e)` for the least signed circuit `C` with `C ∩ U = {e_U, e}`.
/// The result is then checked for orthogonality.
pub fn derive_cocircuit_signature(csig: &CircuitSignature) -> Result<Derivation> {
    let m = csig.matroid();
    let dual = m.dual();
    let circuits = m.circuits();
    let reps = csig.representatives();
    let mut signed = Vec::with_capacity(dual.circuits().len());
    for &u in dual.circuits() {
        let eu = u.min().expect("cocircuits are nonempty");
        let mut pos = ElementSet::singleton(eu);
        let mut neg = ElementSet::EMPTY;
        for e in u.without(eu).iter() {
            let want = ElementSet::from_indices([eu, e]);
            let k = circuits
                .iter()
                .position(|c| *c & u == want)
                .ok_or_else(|| {
                    Error::Invariant(format!(
                        "no circuit meets cocircuit {} exactly in {}",
                        m.ground().format_set(u),
                        m.ground().format_set(want)
                    ))
                })?;
            let c = reps[k];
            let product = -(c.sign(eu).as_i8() * c.sign(e).as_i8());
            if product > 0 {
                pos = pos.with(e);
            } else {
                neg = neg.with(e);
            }
        }
        signed.push(SignVector::new(pos, neg));
    }
    let cosig = CircuitSignature::from_representatives(&dual, signed)?;
    let pair = SignaturePair::new(csig.clone(), cosig.clone())?;
    Ok(match check_orthogonality(&pair) {
        Verdict::Holds => Derivation::Derived(cosig),
        Verdict::Violated(w) => Derivation::Failed(w),
    })
}

/// Whether two cocircuit signatures, both orthogonal to `csig`, coincide.
/// Fails if either one is not orthogonal to `csig`.
pub fn check_signature_uniqueness(
    csig: &CircuitSignature,
    first: &CircuitSignature,
    second: &CircuitSignature,
) -> Result<bool> {
    for cand in [first, second] {
        let pair = SignaturePair::new(csig.clone(), cand.clone())?;
        if let Verdict::Violated(w) = check_orthogonality(&pair) {
            return Err(domain(format!(
                "candidate is not orthogonal to the circuit signature: {}",
                w.describe()
            )));
        }
    }
    Ok(first == second)
}
