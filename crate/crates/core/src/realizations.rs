//! Lines through the origin in three-space with exact integer arithmetic,
//! and the oriented uniform matroid of rank 3 they realize.
//!
//! Every predicate here reduces to the sign of an integer determinant, so
//! nothing is rounded.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Result};
use crate::matroid::{k_subsets, Matroid};
use crate::oriented::{CircuitSignature, SignaturePair, Verdict};
use crate::signed::{ElementSet, GroundSet, SignVector};

pub type Vec3 = [BigInt; 3];

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Vec3, b: &Vec3) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> BigInt {
    dot(&cross(a, b), c)
}

fn is_zero(v: &Vec3) -> bool {
    v.iter().all(Zero::is_zero)
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// A line through the origin, stored as its direction with coprime integer
/// entries and first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line(Vec3);

impl Line {
    pub fn from_ints(x: i64, y: i64, z: i64) -> Result<Line> {
        Line::from_integer_vector([x.into(), y.into(), z.into()])
    }

    pub fn from_integer_vector(v: Vec3) -> Result<Line> {
        if is_zero(&v) {
            return Err(domain("the zero vector spans no line"));
        }
        let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let mut v = v.map(|x| x / &g);
        if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
            v = v.map(|x| -x);
        }
        Ok(Line(v))
    }

    pub fn direction(&self) -> &Vec3 {
        &self.0
    }

    /// The opposite direction, whose first nonzero entry is negative.
    pub fn negative_direction(&self) -> Vec3 {
        self.0.clone().map(|x| -x)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({} {} {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0[0], self.0[1], self.0[2])
    }
}

/// The lexicographically positive, coprime integer representative of the
/// line spanned by a rational vector.
pub fn lex_canonical(v: &[BigRational; 3]) -> Result<Line> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints = v
        .clone()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer());
    Line::from_integer_vector(ints)
}

/// An ordered list of pairwise non-parallel lines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineSet {
    lines: Vec<Line>,
}

impl LineSet {
    pub fn new(lines: Vec<Line>) -> Result<LineSet> {
        for (i, a) in lines.iter().enumerate() {
            if let Some(j) = lines[..i].iter().position(|b| b == a) {
                return Err(domain(format!("lines {} and {} are parallel", j + 1, i + 1)));
            }
        }
        Ok(LineSet { lines })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// The sub-arrangement on the lines in `kept`, in order.
    pub fn subset(&self, kept: ElementSet) -> LineSet {
        LineSet {
            lines: kept.iter().map(|i| self.lines[i].clone()).collect(),
        }
    }
}

/// No three lines are coplanar; the witness is the first coplanar triple
/// of indices in lexicographic order.
pub fn is_free(q: &LineSet) -> Verdict<[usize; 3]> {
    let l = q.lines();
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let n = cross(l[i].direction(), l[j].direction());
            for k in j + 1..l.len() {
                if dot(&n, l[k].direction()).is_zero() {
                    return Verdict::Violated([i, j, k]);
                }
            }
        }
    }
    Verdict::Holds
}

fn plane_normal(a: &Line, b: &Line) -> Result<Vec3> {
    let n = cross(a.direction(), b.direction());
    if is_zero(&n) {
        return Err(domain("a pair of parallel lines spans no plane"));
    }
    Ok(n)
}

/// Whether the planes spanned by `ab`, `cd` and `ef` share a line.
pub fn triple_plane_concurrency(a: &Line, b: &Line, c: &Line, d: &Line, e: &Line, f: &Line) -> Result<bool> {
    let p = plane_normal(a, b)?;
    let q = plane_normal(c, d)?;
    let r = plane_normal(e, f)?;
    Ok(det3(&p, &q, &r).is_zero())
}

/// Six distinct lines whose three pair planes share a line, if any (the
/// finite part of messiness).
pub fn concurrent_plane_triple(q: &LineSet) -> Result<Option<[usize; 6]>> {
    let n = q.len();
    let l = q.lines();
    for idx in k_subsets(ElementSet::full(n), 6) {
        let six: Vec<usize> = idx.iter().collect();
        // The 15 ways to split six lines into three pairs.
        for a in 1..6 {
            let rest: Vec<usize> = (1..6).filter(|&x| x != a).collect();
            for b in 1..4 {
                let r2: Vec<usize> = rest[1..].iter().copied().filter(|&x| x != rest[b]).collect();
                let t = [six[0], six[a], six[rest[0]], six[rest[b]], six[r2[0]], six[r2[1]]];
                if triple_plane_concurrency(&l[t[0]], &l[t[1]], &l[t[2]], &l[t[3]], &l[t[4]], &l[t[5]])? {
                    return Ok(Some(t));
                }
            }
        }
    }
    Ok(None)
}

fn require_free(q: &LineSet) -> Result<()> {
    if let Verdict::Violated([i, j, k]) = is_free(q) {
        return Err(domain(format!(
            "lines {}, {} and {} are coplanar",
            i + 1,
            j + 1,
            k + 1
        )));
    }
    Ok(())
}

fn u3_matroid(n: usize) -> Result<Matroid> {
    Matroid::uniform(&GroundSet::numbered(n), 3.min(n))
}

fn sign_vector_from(signs: impl IntoIterator<Item = (usize, i8)>) -> SignVector {
    let mut pos = ElementSet::EMPTY;
    let mut neg = ElementSet::EMPTY;
    for (e, s) in signs {
        match s {
            1 => pos = pos.with(e),
            -1 => neg = neg.with(e),
            _ => {}
        }
    }
    SignVector::new(pos, neg)
}

/// Which of the two antipodal points of each line is used for signing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Points {
    LexPositive,
    LexNegative,
}

/// The signed cocircuit `Q_{a,b}` on `Q∖{a,b}`: each line gets the sign of
/// the side of the plane `ab` (normal `lex_canonical(a×b)`) containing its
/// chosen point.
pub fn plane_cocircuit(q: &LineSet, a: usize, b: usize, points: Points) -> Result<SignVector> {
    let n = q.len();
    if a >= n || b >= n || a == b {
        return Err(domain("need two distinct lines of the set"));
    }
    let l = q.lines();
    let normal = Line::from_integer_vector(plane_normal(&l[a], &l[b])?)?;
    let mut signs = Vec::new();
    for c in (0..n).filter(|&c| c != a && c != b) {
        let point = match points {
            Points::LexPositive => l[c].direction().clone(),
            Points::LexNegative => l[c].negative_direction(),
        };
        let s = sign_of(&dot(normal.direction(), &point));
        if s == 0 {
            return Err(domain(format!(
                "lines {}, {} and {} are coplanar",
                a + 1,
                b + 1,
                c + 1
            )));
        }
        signs.push((c, s));
    }
    Ok(sign_vector_from(signs))
}

fn cocircuit_signature(q: &LineSet) -> Result<CircuitSignature> {
    require_free(q)?;
    let n = q.len();
    let dual = u3_matroid(n)?.dual();
    let mut reps = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            reps.push(plane_cocircuit(q, a, b, Points::LexPositive)?);
        }
    }
    CircuitSignature::from_representatives(&dual, reps)
}

/// The signature pair of the rank-3 uniform matroid on a free line set:
/// cocircuits are the [`plane_cocircuit`]s from lexicographically positive
/// points, and each 4-circuit carries the signs of its linear dependency.
pub fn u3_signature(q: &LineSet) -> Result<SignaturePair> {
    let n = q.len();
    if n < 4 {
        return Err(domain("need at least four lines"));
    }
    let cosig = cocircuit_signature(q)?;
    let m = cosig.matroid().dual();
    let l = q.lines();
    let csig = CircuitSignature::from_fn(&m, |c| {
        let idx: Vec<usize> = c.iter().collect();
        let v = |i: usize| l[idx[i]].direction();
        let coeffs = [
            det3(v(1), v(2), v(3)),
            -det3(v(0), v(2), v(3)),
            det3(v(0), v(1), v(3)),
            -det3(v(0), v(1), v(2)),
        ];
        sign_vector_from(idx.iter().zip(coeffs.iter()).map(|(&e, x)| (e, sign_of(x))))
    })?;
    SignaturePair::new(csig, cosig)
}

fn step_order(k: u64) -> i64 {
    // 1, -1, 2, -2, ...
    let k = k as i64;
    if k % 2 == 0 {
        k / 2 + 1
    } else {
        -(k / 2 + 1)
    }
}

/// Integer normals in order of growing max-norm, then lexicographically;
/// only lexicographically positive ones.
fn normals() -> impl Iterator<Item = Vec3> {
    (1i64..).flat_map(|r| {
        let mut out = Vec::new();
        for x in -r..=r {
            for y in -r..=r {
                for z in -r..=r {
                    let m = x.abs().max(y.abs()).max(z.abs());
                    if m != r {
                        continue;
                    }
                    let v: Vec3 = [x.into(), y.into(), z.into()];
                    if let Ok(l) = Line::from_integer_vector(v.clone()) {
                        if l.direction() == &v {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out
    })
}

fn spanning_pair(normal: &Vec3) -> (Vec3, Vec3) {
    let axes: [Vec3; 3] = [
        [1.into(), 0.into(), 0.into()],
        [0.into(), 1.into(), 0.into()],
        [0.into(), 0.into(), 1.into()],
    ];
    let u = axes
        .iter()
        .map(|a| cross(normal, a))
        .find(|u| !is_zero(u))
        .expect("normal is nonzero");
    let w = cross(normal, &u);
    (u, w)
}

/// A free set of `n` lines following the recursive construction of a neat
/// set: the `i`-th line goes into the plane through `l_{p5}` and the meet of
/// the planes `l_{p1}l_{p2}` and `l_{p3}l_{p4}` for a 5-tuple `p` of earlier
/// indices (drawn with the seeded generator), unless some earlier line
/// already completes that configuration or no tuple exists, in which case a
/// generic plane containing no earlier line is used. Inside the chosen
/// plane the line avoids every plane spanned by two earlier lines.
///
/// Density conditions of the infinite construction have no finite
/// counterpart and are not modelled.
pub fn neat_prefix(n: usize, seed: u64) -> Result<LineSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lines: Vec<Line> = Vec::new();
    let mut used: BTreeSet<[usize; 5]> = BTreeSet::new();
    for i in 0..n {
        let mut tuples = Vec::new();
        for p1 in 0..i {
            for p2 in 0..i {
                for p3 in 0..i {
                    for p4 in 0..i {
                        if p1 == p2 || p3 == p4 || (p1 == p3 || p1 == p4) && (p2 == p3 || p2 == p4) {
                            continue;
                        }
                        for p5 in 0..i {
                            let t = [p1, p2, p3, p4, p5];
                            if !t[..4].contains(&p5) && !used.contains(&t) {
                                tuples.push(t);
                            }
                        }
                    }
                }
            }
        }
        let plane = match tuples.choose(&mut rng) {
            Some(&t) => {
                used.insert(t);
                determined_plane(&lines, t)?
            }
            None => None,
        };
        let (u, w) = match plane {
            Some(pair) => pair,
            None => {
                let normal = normals()
                    .find(|nv| lines.iter().all(|l| !dot(nv, l.direction()).is_zero()))
                    .expect("finitely many lines exclude finitely many normals");
                spanning_pair(&normal)
            }
        };
        let line = place_in_plane(&lines, &u, &w)?;
        lines.push(line);
    }
    let q = LineSet::new(lines)?;
    require_free(&q)?;
    Ok(q)
}

// The plane through `l_{p5}` and the meet of `l_{p1}l_{p2}` and
// `l_{p3}l_{p4}`, returned as two spanning vectors, or `None` if an earlier
// line already makes the three planes concurrent.
fn determined_plane(lines: &[Line], t: [usize; 5]) -> Result<Option<(Vec3, Vec3)>> {
    let [p1, p2, p3, p4, p5] = t;
    let n12 = plane_normal(&lines[p1], &lines[p2])?;
    let n34 = plane_normal(&lines[p3], &lines[p4])?;
    let meet = cross(&n12, &n34);
    for (j, lj) in lines.iter().enumerate() {
        if j == p5 {
            continue;
        }
        let n5j = plane_normal(&lines[p5], lj)?;
        if det3(&n12, &n34, &n5j).is_zero() {
            return Ok(None);
        }
    }
    Ok(Some((lines[p5].direction().clone(), meet)))
}

fn place_in_plane(lines: &[Line], u: &Vec3, w: &Vec3) -> Result<Line> {
    let pair_normals: Vec<Vec3> = (0..lines.len())
        .flat_map(|j| (j + 1..lines.len()).map(move |k| (j, k)))
        .map(|(j, k)| cross(lines[j].direction(), lines[k].direction()))
        .collect();
    for k in 0.. {
        let t = BigInt::from(step_order(k));
        let cand: Vec3 = [&u[0] + &t * &w[0], &u[1] + &t * &w[1], &u[2] + &t * &w[2]];
        if is_zero(&cand) {
            continue;
        }
        let line = Line::from_integer_vector(cand)?;
        let parallel = lines.iter().any(|l| l == &line);
        let coplanar = pair_normals.iter().any(|nv| dot(nv, line.direction()).is_zero());
        if !parallel && !coplanar {
            return Ok(line);
        }
    }
    unreachable!("the search over t is unbounded")
}
