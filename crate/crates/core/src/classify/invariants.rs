//! Exact local invariants of 2- and 3-qubit states.

use num::{BigRational, ToPrimitive, Zero};

use super::ClassifyError;
use crate::ket::{bit_of, Ket};
use crate::linalg;
use crate::scalar::GaussianRational;

/// Dense constant amplitudes of an `n`-qubit ket, or the matching error.
pub(crate) fn constant_amplitudes(x: &Ket, n: usize) -> Result<Vec<GaussianRational>, ClassifyError> {
    if x.n_qubits() != n {
        return Err(ClassifyError::QubitCount { expected: n, found: x.n_qubits() });
    }
    x.constant_amplitudes().ok_or(ClassifyError::Symbolic)
}

/// Rank of the `2 × 2^(n-1)` matrix obtained by splitting qubit `party` from
/// the rest.
pub(crate) fn flattening_rank(amps: &[GaussianRational], n: usize, party: usize) -> usize {
    let mut rows = vec![Vec::with_capacity(amps.len() / 2), Vec::with_capacity(amps.len() / 2)];
    for (idx, a) in amps.iter().enumerate() {
        rows[usize::from(bit_of(idx, party, n))].push(a.clone());
    }
    linalg::rank(&rows)
}

pub(crate) fn flattening_ranks_of(amps: &[GaussianRational], n: usize) -> Vec<usize> {
    (0..n).map(|p| flattening_rank(amps, n, p)).collect()
}

/// Per-party flattening ranks `(r_A, r_B, r_C)` of a 3-qubit ket.
pub fn flattening_ranks(x: &Ket) -> Result<[usize; 3], ClassifyError> {
    let amps = constant_amplitudes(x, 3)?;
    let r = flattening_ranks_of(&amps, 3);
    Ok([r[0], r[1], r[2]])
}

/// Cayley's 2×2×2 hyperdeterminant of the amplitude tensor `a_ijk`.
pub fn hyperdeterminant_of(a: &[GaussianRational]) -> GaussianRational {
    let at = |i: usize, j: usize, k: usize| &a[(i << 2) | (j << 1) | k];
    let prod = |xs: [&GaussianRational; 4]| xs[0] * xs[1] * xs[2] * xs[3];
    let sq = |x: &GaussianRational, y: &GaussianRational| {
        let p = x * y;
        &p * &p
    };

    let squares = sq(at(0, 0, 0), at(1, 1, 1))
        + sq(at(0, 0, 1), at(1, 1, 0))
        + sq(at(0, 1, 0), at(1, 0, 1))
        + sq(at(1, 0, 0), at(0, 1, 1));
    let pairs = prod([at(0, 0, 0), at(0, 0, 1), at(1, 1, 0), at(1, 1, 1)])
        + prod([at(0, 0, 0), at(0, 1, 0), at(1, 0, 1), at(1, 1, 1)])
        + prod([at(0, 0, 0), at(1, 0, 0), at(0, 1, 1), at(1, 1, 1)])
        + prod([at(0, 0, 1), at(0, 1, 0), at(1, 0, 1), at(1, 1, 0)])
        + prod([at(0, 0, 1), at(1, 0, 0), at(0, 1, 1), at(1, 1, 0)])
        + prod([at(0, 1, 0), at(1, 0, 0), at(0, 1, 1), at(1, 0, 1)]);
    let quads = prod([at(0, 0, 0), at(0, 1, 1), at(1, 0, 1), at(1, 1, 0)])
        + prod([at(0, 0, 1), at(0, 1, 0), at(1, 0, 0), at(1, 1, 1)]);

    let two = GaussianRational::from_integer(2);
    let four = GaussianRational::from_integer(4);
    squares - &pairs * &two + &quads * &four
}

pub fn hyperdeterminant(x: &Ket) -> Result<GaussianRational, ClassifyError> {
    Ok(hyperdeterminant_of(&constant_amplitudes(x, 3)?))
}

/// Determinant `a00·a11 − a01·a10` of a 2-qubit amplitude matrix.
pub(crate) fn pair_determinant(a: &[GaussianRational]) -> GaussianRational {
    &(&a[0] * &a[3]) - &(&a[1] * &a[2])
}

/// The 3-tangle. `squared` is the exact `τ₃² = 16·|Det|²/<x|x>⁴`, with
/// `τ₃ = 4|Det|` on normalized amplitudes; `display` is `τ₃` as a float.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreeTangle {
    pub squared: BigRational,
    pub display: f64,
}

pub(crate) fn three_tangle_of(amps: &[GaussianRational], det: &GaussianRational) -> Option<ThreeTangle> {
    let norm: BigRational = amps.iter().map(GaussianRational::norm_sqr).sum();
    if norm.is_zero() {
        return None;
    }
    let norm2 = &norm * &norm;
    let squared = BigRational::from_integer(16.into()) * det.norm_sqr() / (&norm2 * &norm2);
    let display = squared.to_f64().unwrap_or(f64::NAN).sqrt();
    Some(ThreeTangle { squared, display })
}

pub fn three_tangle(x: &Ket) -> Result<ThreeTangle, ClassifyError> {
    let amps = constant_amplitudes(x, 3)?;
    let det = hyperdeterminant_of(&amps);
    three_tangle_of(&amps, &det).ok_or(ClassifyError::ZeroState)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{Symbol, SymbolicAmplitude};

    fn lin(terms: &[(&str, i64)]) -> Ket {
        let n = terms[0].0.len();
        Ket::from_terms(n, terms.iter().map(|(b, c)| (*b, SymbolicAmplitude::integer(*c)))).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(flattening_ranks(&lin(&[("000", 1), ("111", 1)])).unwrap(), [2, 2, 2]);
        assert_eq!(flattening_ranks(&lin(&[("000", 1)])).unwrap(), [1, 1, 1]);
        assert_eq!(flattening_ranks(&lin(&[("101", 1), ("110", 1)])).unwrap(), [1, 2, 2]);
        assert_eq!(flattening_ranks(&Ket::zero(3).unwrap()).unwrap(), [0, 0, 0]);
    }

    #[test]
    fn hyperdeterminants() {
        let one = GaussianRational::from_integer(1);
        assert_eq!(hyperdeterminant(&lin(&[("000", 1), ("111", 1)])).unwrap(), one);
        assert!(hyperdeterminant(&lin(&[("001", 1), ("010", 1), ("100", 1)])).unwrap().is_zero());
        assert!(hyperdeterminant(&lin(&[("000", 1)])).unwrap().is_zero());
    }

    #[test]
    fn tangles() {
        let ghz = three_tangle(&lin(&[("000", 1), ("111", 1)])).unwrap();
        assert_eq!(ghz.squared, BigRational::from_integer(1.into()));
        assert_eq!(ghz.display, 1.0);
        let w = three_tangle(&lin(&[("001", 1), ("010", 1), ("100", 1)])).unwrap();
        assert!(w.squared.is_zero());
        let scaled = three_tangle(&lin(&[("000", 3), ("111", 3)])).unwrap();
        assert_eq!(scaled.squared, BigRational::from_integer(1.into()));
        assert!(matches!(three_tangle(&Ket::zero(3).unwrap()), Err(ClassifyError::ZeroState)));
    }

    #[test]
    fn errors() {
        let a = SymbolicAmplitude::symbol(Symbol::new("alpha").unwrap());
        let sym = Ket::from_terms(3, [("000", a)]).unwrap();
        assert!(matches!(hyperdeterminant(&sym), Err(ClassifyError::Symbolic)));
        assert!(matches!(
            flattening_ranks(&lin(&[("00", 1)])),
            Err(ClassifyError::QubitCount { expected: 3, found: 2 })
        ));
    }
}
