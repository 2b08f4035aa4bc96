use std::collections::BTreeSet;

use crate::error::Error;
use crate::signed::{SignVector, SignedSubset};

use super::{CircuitSignature, SignaturePair};

/// Closure of `family` under composition, without the empty composition.
///
/// Composition is associative, so composing on the right with members of
/// `family` reaches every finite composition.
pub(crate) fn vector_closure(family: &[SignVector]) -> Vec<SignVector> {
    vector_closure_capped(family, usize::MAX)
}

fn vector_closure_capped(family: &[SignVector], cap: usize) -> Vec<SignVector> {
    let base: Vec<SignVector> = family
        .iter()
        .copied()
        .filter(|x| !x.is_empty() && x.support().len() <= cap)
        .collect();
    let mut seen: BTreeSet<SignVector> = base.iter().copied().collect();
    let mut stack: Vec<SignVector> = seen.iter().copied().collect();
    while let Some(v) = stack.pop() {
        for &c in &base {
            if c.support().is_subset(v.support()) {
                continue;
            }
            let w = v.compose(c);
            if w.support().len() <= cap && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// The vectors of a circuit signature: all compositions of signed circuits,
/// keeping those with at most `support_cap` elements. Supports only grow
/// under composition, so the cap prunes the search without losing any
/// vector below it.
pub fn vectors(sig: &CircuitSignature, support_cap: Option<usize>) -> Vec<SignedSubset> {
    vector_closure_capped(&sig.sign_vectors(), support_cap.unwrap_or(usize::MAX))
        .into_iter()
        .map(|v| sig.to_signed(v))
        .collect()
}

/// Brute-force vector enumeration: composes every sequence of signed
/// circuits in which each member adds a new element to the support (a
/// member adding nothing leaves the composition unchanged).
pub fn vectors_by_sequences(sig: &CircuitSignature) -> Vec<SignedSubset> {
    fn walk(all: &[SignVector], acc: SignVector, out: &mut BTreeSet<SignVector>) {
        for &c in all {
            if c.support().is_subset(acc.support()) {
                continue;
            }
            let next = acc.compose(c);
            out.insert(next);
            walk(all, next, out);
        }
    }
    let all = sig.sign_vectors();
    let mut out = BTreeSet::new();
    walk(&all, SignVector::EMPTY, &mut out);
    out.into_iter().map(|v| sig.to_signed(v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionFailure {
    /// The input is not orthogonal to this signed cocircuit, so it is not a
    /// vector of an orthogonal pair.
    NotOrthogonal { cocircuit: SignedSubset },
    /// No signed circuit conforming to the input contains this element.
    NoConformingCircuit { element: usize },
    Input(Error),
}

impl DecompositionFailure {
    pub fn describe(&self, pair: &SignaturePair) -> String {
        match self {
            DecompositionFailure::NotOrthogonal { cocircuit } => {
                format!("input is not orthogonal to signed cocircuit {cocircuit}")
            }
            DecompositionFailure::NoConformingCircuit { element } => format!(
                "no signed circuit conforming to the input contains {}",
                pair.ground().label(*element)
            ),
            DecompositionFailure::Input(e) => e.to_string(),
        }
    }
}

/// Writes `x` as a composition of signed circuits conforming to it: for each
/// element not yet covered, the least conforming signed circuit through it.
/// The result composes to `x` in any order.
pub fn conformal_decompose(
    pair: &SignaturePair,
    x: &SignedSubset,
) -> Result<Vec<SignedSubset>, DecompositionFailure> {
    if x.ground() != pair.ground() {
        return Err(DecompositionFailure::Input(Error::GroundMismatch));
    }
    let xv = x.signs();
    if let Some(u) = pair
        .cocircuits()
        .sign_vectors()
        .into_iter()
        .find(|u| !xv.is_orthogonal_to(*u))
    {
        return Err(DecompositionFailure::NotOrthogonal {
            cocircuit: pair.cocircuits().to_signed(u),
        });
    }
    let conforming: Vec<SignVector> = pair
        .circuits()
        .sign_vectors()
        .into_iter()
        .filter(|c| c.conforms_to(xv))
        .collect();
    let mut covered = crate::signed::ElementSet::EMPTY;
    let mut parts = Vec::new();
    for e in xv.support().iter() {
        if covered.contains(e) {
            continue;
        }
        let c = conforming
            .iter()
            .find(|c| c.support().contains(e))
            .ok_or(DecompositionFailure::NoConformingCircuit { element: e })?;
        covered = covered | c.support();
        parts.push(pair.circuits().to_signed(*c));
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::uniform_alt;
    use crate::matroid::Matroid;
    use crate::signed::{ElementSet, GroundSet};

    #[test]
    fn single_circuit_vectors() {
        let m = Matroid::new(&GroundSet::numbered(3), [ElementSet::full(3)]).unwrap();
        let sig = CircuitSignature::from_representatives(&m, [SignVector::parse("+-+").unwrap()]).unwrap();
        let v: Vec<String> = vectors(&sig, None).iter().map(|x| x.to_string()).collect();
        assert_eq!(v, vec!["+-+", "-+-"]);
    }

    #[test]
    fn closure_matches_sequences() {
        for n in 3..=5 {
            let p = uniform_alt(n).unwrap();
            assert_eq!(vectors(p.circuits(), None), vectors_by_sequences(p.circuits()));
            assert_eq!(vectors(p.cocircuits(), None), vectors_by_sequences(p.cocircuits()));
        }
    }

    #[test]
    fn positive_covector_of_truncation() {
        let p = uniform_alt(4).unwrap();
        let cov: Vec<String> = vectors(p.cocircuits(), None).iter().map(|x| x.to_string()).collect();
        assert!(cov.contains(&"++++".to_string()));
    }

    #[test]
    fn support_cap_prunes() {
        let p = uniform_alt(5).unwrap();
        let all = vectors(p.circuits(), None);
        let small = vectors(p.circuits(), Some(4));
        let expect: Vec<_> = all.into_iter().filter(|v| v.support().len() <= 4).collect();
        assert_eq!(small, expect);
    }

    #[test]
    fn decompose_circuit_and_covectors() {
        let p = uniform_alt(5).unwrap();
        let c = p.circuits().signed_subsets()[0].clone();
        assert_eq!(conformal_decompose(&p, &c).unwrap(), vec![c]);
        let dual = p.dual();
        for w in vectors(p.cocircuits(), None) {
            let parts = conformal_decompose(&dual, &w).unwrap();
            let back = SignedSubset::compose(p.ground(), &parts).unwrap();
            assert_eq!(back, w);
        }
    }

    #[test]
    fn non_vector_rejected() {
        let p = uniform_alt(4).unwrap();
        let x = SignedSubset::parse(p.ground(), "++00").unwrap();
        assert!(matches!(
            conformal_decompose(&p, &x),
            Err(DecompositionFailure::NotOrthogonal { .. })
        ));
    }
}
