//! Ready-made signature pairs, perturbations and seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::error::{domain, Result};
use crate::matroid::Matroid;
use crate::oriented::{derive_cocircuit_signature, CircuitSignature, Derivation, SignaturePair};
use crate::signed::{ElementSet, GroundSet, SignVector};

/// The rank-2 alternating pair on `1..n`: every 3-subset is signed `+−+`,
/// and the cocircuit missing `i` is positive below `i`, negative above it.
pub fn uniform_alt(n: usize) -> Result<SignaturePair> {
    if n < 3 {
        return Err(domain("uniform_alt needs at least 3 elements"));
    }
    let ground = GroundSet::numbered(n);
    let m = Matroid::uniform(&ground, 2)?;
    let circuits = CircuitSignature::from_fn(&m, |c| {
        let mid = c.iter().nth(1).expect("3-subset");
        SignVector::new(c.without(mid), ElementSet::singleton(mid))
    })?;
    let full = ElementSet::full(n);
    let cocircuits = CircuitSignature::from_fn(&m.dual(), |u| {
        let i = (full - u).min().expect("cocircuits miss one element");
        let below = ElementSet::full(i);
        SignVector::new(u & below, u - below)
    })?;
    SignaturePair::new(circuits, cocircuits)
}

/// Flips the sign of `element` in the signing of `circuit`.
pub fn flip_sign(sig: &CircuitSignature, circuit: ElementSet, element: usize) -> Result<CircuitSignature> {
    let v = sig
        .signing_of(circuit)
        .ok_or_else(|| domain("not a circuit of the signature"))?;
    if !circuit.contains(element) {
        return Err(domain("element is not in the circuit"));
    }
    let flipped = v.reorient(ElementSet::singleton(element));
    sig.with_signing(flipped)
}

/// The pair with one sign flipped in one circuit of size at least two,
/// chosen by `seed`. The cocircuit signature is kept.
pub fn mutant(pair: &SignaturePair, seed: u64) -> Result<SignaturePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizable: Vec<ElementSet> = pair
        .matroid()
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.len() >= 2)
        .collect();
    let c = *sizable
        .choose(&mut rng)
        .ok_or_else(|| domain("no circuit with two or more elements"))?;
    let elems: Vec<usize> = c.iter().collect();
    let e = elems[rng.gen_range(0..elems.len())];
    pair.with_circuits(flip_sign(pair.circuits(), c, e)?)
}

/// A uniformly random signing of every circuit.
pub fn random_circuit_signature(m: &Matroid, rng: &mut ChaCha8Rng) -> Result<CircuitSignature> {
    CircuitSignature::from_fn(m, |c| {
        let mut pos = ElementSet::EMPTY;
        for e in c.iter() {
            if rng.gen_bool(0.5) {
                pos = pos.with(e);
            }
        }
        SignVector::new(pos, c - pos)
    })
}

/// Random candidates on `m`: random circuit signings paired with their
/// derived cocircuit signature when one exists, otherwise with a random
/// cocircuit signing.
pub fn random_pairs(m: &Matroid, count: usize, seed: u64) -> Result<Vec<SignaturePair>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dual = m.dual();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let cs = random_circuit_signature(m, &mut rng)?;
        let us = match derive_cocircuit_signature(&cs)? {
            Derivation::Derived(us) => us,
            Derivation::Failed(_) => random_circuit_signature(&dual, &mut rng)?,
        };
        out.push(SignaturePair::new(cs, us)?);
    }
    Ok(out)
}

/// A random loopless digraph on `vertices` vertices with `arcs` arcs.
pub fn random_digraph(vertices: usize, arcs: usize, seed: u64) -> Result<Digraph> {
    if vertices < 2 && arcs > 0 {
        return Err(domain("arcs need two distinct vertices"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list = Vec::with_capacity(arcs);
    for _ in 0..arcs {
        let t = rng.gen_range(0..vertices);
        let mut h = rng.gen_range(0..vertices - 1);
        if h >= t {
            h += 1;
        }
        list.push((t, h));
    }
    Digraph::from_arcs(vertices, &list)
}
