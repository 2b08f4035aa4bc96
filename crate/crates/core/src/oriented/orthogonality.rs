use crate::signed::{SignVector, SignedSubset};

use super::{SignaturePair, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalityViolation {
    pub circuit: SignedSubset,
    pub cocircuit: SignedSubset,
}

impl OrthogonalityViolation {
    pub fn describe(&self) -> String {
        format!(
            "signed circuit {} is not orthogonal to signed cocircuit {}",
            self.circuit, self.cocircuit
        )
    }
}

pub(crate) fn first_non_orthogonal(circuits: &[SignVector], cocircuits: &[SignVector]) -> Option<(SignVector, SignVector)> {
    // Orthogonality is invariant under negating either side, so the
    // representatives suffice, and they are the least member of each pair.
    for &c in circuits {
        for &u in cocircuits {
            if !c.is_orthogonal_to(u) {
                return Some((c, u));
            }
        }
    }
    None
}

/// Every signed circuit is orthogonal to every signed cocircuit. The
/// reported violation is the least pair in the sign-vector order.
pub fn check_orthogonality(pair: &SignaturePair) -> Verdict<OrthogonalityViolation> {
    let mut cs = pair.circuits().representatives().to_vec();
    let mut us = pair.cocircuits().representatives().to_vec();
    cs.sort();
    us.sort();
    match first_non_orthogonal(&cs, &us) {
        None => Verdict::Holds,
        Some((c, u)) => Verdict::Violated(OrthogonalityViolation {
            circuit: pair.circuits().to_signed(c),
            cocircuit: pair.cocircuits().to_signed(u),
        }),
    }
}

/// The separator form: `sep(C,U)` is empty exactly when `sep(C,-U)` is.
pub fn check_orthogonality_sep(pair: &SignaturePair) -> Verdict<OrthogonalityViolation> {
    let cs = pair.circuits().sign_vectors();
    let us = pair.cocircuits().sign_vectors();
    for &c in &cs {
        for &u in &us {
            if c.separator(u).is_empty() != c.separator(u.opposite()).is_empty() {
                return Verdict::Violated(OrthogonalityViolation {
                    circuit: pair.circuits().to_signed(c),
                    cocircuit: pair.cocircuits().to_signed(u),
                });
            }
        }
    }
    Verdict::Holds
}
