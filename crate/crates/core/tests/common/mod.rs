//! Test oracles that share no operator or classification code with the
//! crate: dense row-major matrices built straight from the generator
//! definitions, and a brute-force SLOCC classifier over small integers.
#![allow(dead_code)]

use std::collections::HashSet;

use bhqc::circuit::claims::{Claim, Step};
use bhqc::operator::{Generator, OpExpr};
use bhqc::{GaussianRational, Ket, SymbolicAmplitude};
use num::{One, Zero};

pub type Mat = Vec<Vec<GaussianRational>>;

fn gr(n: i64) -> GaussianRational {
    GaussianRational::from_integer(n)
}

fn from_ints(rows: &[&[i64]]) -> Mat {
    rows.iter().map(|r| r.iter().map(|&x| gr(x)).collect()).collect()
}

/// Generator matrices written out from their defining actions, rows indexed
/// by output basis state.
pub fn generator(g: Generator) -> Mat {
    match g {
        Generator::Identity => from_ints(&[&[1, 0], &[0, 1]]),
        Generator::Star => from_ints(&[&[-1, 0], &[0, 1]]),
        Generator::Raise => from_ints(&[&[0, 0], &[1, 0]]),
        Generator::Lower => from_ints(&[&[0, 1], &[0, 0]]),
    }
}

pub fn identity(dim: usize) -> Mat {
    (0..dim).map(|r| (0..dim).map(|c| gr(i64::from(r == c))).collect()).collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut acc = GaussianRational::zero();
                    for k in 0..n {
                        acc += &(&a[r][k] * &b[k][c]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn matadd(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect()).collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (na, nb) = (a.len(), b.len());
    let mut out = vec![vec![GaussianRational::zero(); na * nb]; na * nb];
    for (ar, arow) in a.iter().enumerate() {
        for (ac, x) in arow.iter().enumerate() {
            for (br, brow) in b.iter().enumerate() {
                for (bc, y) in brow.iter().enumerate() {
                    out[ar * nb + br][ac * nb + bc] = x * y;
                }
            }
        }
    }
    out
}

pub fn eval(e: &OpExpr) -> Mat {
    match e {
        OpExpr::Gen(g) => generator(*g),
        OpExpr::Identity(k) => identity(1 << k),
        OpExpr::Projector(b) => {
            let i = usize::from(*b);
            let mut m = vec![vec![GaussianRational::zero(); 2]; 2];
            m[i][i] = GaussianRational::one();
            m
        }
        OpExpr::Scale(s, inner) => eval(inner).into_iter().map(|r| r.iter().map(|x| s * x).collect()).collect(),
        OpExpr::Sum(es) => es.iter().map(eval).reduce(|a, b| matadd(&a, &b)).expect("nonempty"),
        OpExpr::Product(es) => es.iter().map(eval).reduce(|a, b| matmul(&a, &b)).expect("nonempty"),
        OpExpr::Tensor(es) => es.iter().map(eval).reduce(|a, b| kron(&a, &b)).expect("nonempty"),
    }
}

fn bit(idx: usize, q: usize, n: usize) -> usize {
    (idx >> (n - 1 - q)) & 1
}

/// Full `2^n` matrix acting as `m` on `targets` (in order) and as the
/// identity elsewhere.
pub fn embed(m: &Mat, targets: &[usize], n: usize) -> Mat {
    let k = targets.len();
    let dim = 1 << n;
    let sub = |idx: usize| targets.iter().fold(0, |acc, &q| (acc << 1) | bit(idx, q, n));
    let rest = |idx: usize| (0..n).filter(|q| !targets.contains(q)).map(|q| bit(idx, q, n)).collect::<Vec<_>>();
    assert_eq!(m.len(), 1 << k);
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| if rest(r) == rest(c) { m[sub(r)][sub(c)].clone() } else { GaussianRational::zero() })
                .collect()
        })
        .collect()
}

pub fn dense(k: &Ket) -> Vec<SymbolicAmplitude> {
    (0..k.dim()).map(|i| k.amplitude(i)).collect()
}

pub fn sparse(n: usize, v: &[SymbolicAmplitude]) -> Ket {
    Ket::from_indexed(n, v.iter().cloned().enumerate()).expect("valid size")
}

pub fn apply(m: &Mat, v: &[SymbolicAmplitude]) -> Vec<SymbolicAmplitude> {
    m.iter()
        .map(|row| {
            let mut acc = SymbolicAmplitude::zero();
            for (x, a) in row.iter().zip(v) {
                if !x.is_zero() {
                    acc = &acc + &a.scale(x);
                }
            }
            acc
        })
        .collect()
}

pub fn project(v: &[SymbolicAmplitude], n: usize, targets: &[usize], bits: &str) -> Vec<SymbolicAmplitude> {
    let want: Vec<usize> = bits.chars().map(|c| usize::from(c == '1')).collect();
    v.iter()
        .enumerate()
        .map(|(idx, a)| {
            let keep = targets.iter().zip(&want).all(|(&q, &b)| bit(idx, q, n) == b);
            if keep { a.clone() } else { SymbolicAmplitude::zero() }
        })
        .collect()
}

/// Re-derives a ledger claim with dense matrices.
pub fn derive_dense(claim: &Claim) -> Ket {
    let n = claim.input.n_qubits();
    let mut v = dense(&claim.input);
    for step in &claim.steps {
        v = match step {
            Step::Apply(e, targets) => apply(&embed(&eval(e), targets, n), &v),
            Step::Project(bits, targets) => project(&v, n, targets, bits),
        };
    }
    sparse(n, &v)
}

/// Builds a ket from `(bits, integer)` pairs.
pub fn ket(terms: &[(&str, i64)]) -> Ket {
    let n = terms[0].0.len();
    Ket::from_terms(n, terms.iter().map(|(b, c)| (*b, SymbolicAmplitude::integer(*c)))).unwrap()
}

// ---------------------------------------------------------------------------
// brute-force SLOCC oracle on 3-qubit integer states, amplitudes a[4i+2j+k]

pub type Amps = [i64; 8];

const TRITS: [i64; 3] = [-1, 0, 1];

fn vectors(len: usize) -> Vec<Vec<i64>> {
    (0..3usize.pow(len as u32))
        .map(|mut x| {
            (0..len)
                .map(|_| {
                    let t = TRITS[x % 3];
                    x /= 3;
                    t
                })
                .collect()
        })
        .collect()
}

/// Every `a ⊗ b ⊗ c` with entries in {-1,0,1}. If a product state has
/// amplitudes in {-1,0,1}, all amplitude ratios are ±1, so factors can be
/// rescaled into that range and this search is exhaustive.
pub fn product_states() -> HashSet<Amps> {
    let v2 = vectors(2);
    let mut out = HashSet::new();
    for a in &v2 {
        for b in &v2 {
            for c in &v2 {
                let mut x = [0i64; 8];
                for i in 0..2 {
                    for j in 0..2 {
                        for k in 0..2 {
                            x[4 * i + 2 * j + k] = a[i] * b[j] * c[k];
                        }
                    }
                }
                out.insert(x);
            }
        }
    }
    out
}

/// Every state where `party` factors off: `v ⊗ M` with `v` on the party and
/// `M` on the other two qubits in their original order.
pub fn split_states(party: usize) -> HashSet<Amps> {
    let (v2, v4) = (vectors(2), vectors(4));
    let mut out = HashSet::new();
    for v in &v2 {
        for m in &v4 {
            let mut x = [0i64; 8];
            for (idx, slot) in x.iter_mut().enumerate() {
                let bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1];
                let others: Vec<usize> = (0..3).filter(|&q| q != party).map(|q| bits[q]).collect();
                *slot = v[bits[party]] * m[2 * others[0] + others[1]];
            }
            out.insert(x);
        }
    }
    out
}

/// `b² − 4ac` for `det(A0 + t·A1) = a + b·t + c·t²`, slices taken on the
/// first qubit. This discriminant equals Cayley's hyperdeterminant.
pub fn discriminant(x: &Amps) -> i64 {
    let (a0, a1) = ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]]);
    let det = |m: [i64; 4]| m[0] * m[3] - m[1] * m[2];
    let c0 = det(a0);
    let c2 = det(a1);
    let c1 = a0[0] * a1[3] + a1[0] * a0[3] - a0[1] * a1[2] - a1[1] * a0[2];
    c1 * c1 - 4 * c0 * c2
}

pub struct BruteForce {
    product: HashSet<Amps>,
    split: [HashSet<Amps>; 3],
}

impl BruteForce {
    pub fn new() -> Self {
        BruteForce { product: product_states(), split: [split_states(0), split_states(1), split_states(2)] }
    }

    /// Class label in the crate's rendering.
    pub fn class(&self, x: &Amps) -> String {
        if x.iter().all(|&a| a == 0) {
            return "NULL".into();
        }
        if self.product.contains(x) {
            return "SEPARABLE(A-B-C)".into();
        }
        let splits: Vec<usize> = (0..3).filter(|&p| self.split[p].contains(x)).collect();
        match splits.as_slice() {
            [0] => "BISEPARABLE(A-BC)".into(),
            [1] => "BISEPARABLE(B-CA)".into(),
            [2] => "BISEPARABLE(C-AB)".into(),
            [] if discriminant(x) != 0 => "GHZ".into(),
            [] => "W".into(),
            more => panic!("state splits along {more:?} but is not a product"),
        }
    }
}

/// All 6561 states with amplitudes in {-1,0,1}, first amplitude most
/// significant.
pub fn all_trit_states() -> Vec<Amps> {
    (0..6561usize)
        .map(|mut code| {
            let mut x = [0i64; 8];
            for slot in x.iter_mut().rev() {
                *slot = TRITS[code % 3];
                code /= 3;
            }
            x
        })
        .collect()
}

pub fn amps_to_ket(x: &Amps) -> Ket {
    Ket::from_indexed(3, x.iter().enumerate().map(|(i, &a)| (i, SymbolicAmplitude::integer(a)))).unwrap()
}
