use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{DenseOperator, VerifyError};
use crate::scalar::Scalar;

/// Largest qubit count for which every permutation is tried.
pub const MAX_PERMUTATION_QUBITS: usize = 6;

/// Result of comparing two operators.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarComparison {
    pub equal: bool,
    /// `s` with `B ≈ s·A`, when one exists.
    pub scalar: Option<Complex64>,
    /// `max |B − s·A|`, or `max |B|` when `A` vanishes.
    pub residual: f64,
}

/// Tests `B = s·A` for some nonzero `s`. The scalar is read off at the
/// largest-magnitude entry of `A`; the check passes when
/// `max |B − s·A| ≤ tol · max |B|`. An `A` whose entries all fall below
/// `tol · max(|A|∞, |B|∞)` counts as zero and only matches a zero `B`.
pub fn equal_up_to_scalar<T: Scalar>(
    a: &DenseOperator<T>,
    b: &DenseOperator<T>,
    tol: f64,
) -> Result<ScalarComparison, VerifyError> {
    check_dims(a, b)?;
    let (na, nb) = (a.max_abs().to_f64(), b.max_abs().to_f64());
    let scale = na.max(nb);
    if na <= tol * scale || scale == 0.0 {
        let equal = nb <= tol * scale;
        return Ok(ScalarComparison {
            equal,
            scalar: equal.then_some(Complex64::new(1.0, 0.0)),
            residual: nb,
        });
    }
    let pivot = a
        .data()
        .iter()
        .map(|z| z.norm())
        .position_max_by(|x, y| x.partial_cmp(y).expect("finite entries"))
        .expect("nonempty operator");
    let s = b.data()[pivot] / a.data()[pivot];
    let residual = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| (y - s * x).norm().to_f64())
        .fold(0.0, f64::max);
    let s64 = Complex64::new(s.re.to_f64(), s.im.to_f64());
    let equal = s64.norm() > 0.0 && residual <= tol * nb;
    Ok(ScalarComparison {
        equal,
        scalar: equal.then_some(s64),
        residual,
    })
}

/// Like [`equal_up_to_scalar`], also allowing one relabelling of qubits
/// applied to both the inputs and outputs of `B`. The identity is tried
/// first; the full search runs for at most
/// [`MAX_PERMUTATION_QUBITS`] qubits and only when the fingerprints agree.
/// Returns the comparison and the permutation used.
pub fn equal_up_to_qubit_permutation<T: Scalar>(
    a: &DenseOperator<T>,
    b: &DenseOperator<T>,
    tol: f64,
) -> Result<(ScalarComparison, Vec<usize>), VerifyError> {
    check_dims(a, b)?;
    let n = a.num_inputs();
    let identity: Vec<usize> = (0..n).collect();
    let first = equal_up_to_scalar(a, b, tol)?;
    if first.equal || !a.is_square() || !(2..=MAX_PERMUTATION_QUBITS).contains(&n) {
        return Ok((first, identity));
    }
    if !operator_fingerprint(a, 0).singular_values_match(&operator_fingerprint(b, 0), tol) {
        return Ok((first, identity));
    }
    for sigma in (0..n).permutations(n).skip(1) {
        let cmp = equal_up_to_scalar(a, &b.permute_qubits(&sigma), tol)?;
        if cmp.equal {
            return Ok((cmp, sigma));
        }
    }
    Ok((first, identity))
}

fn check_dims<T: Scalar>(a: &DenseOperator<T>, b: &DenseOperator<T>) -> Result<(), VerifyError> {
    if a.num_inputs() != b.num_inputs() || a.num_outputs() != b.num_outputs() {
        return Err(VerifyError::DimensionMismatch {
            left: (a.num_outputs(), a.num_inputs()),
            right: (b.num_outputs(), b.num_inputs()),
        });
    }
    Ok(())
}

/// Invariants of an operator under qubit relabelling.
#[derive(Clone, Debug, PartialEq)]
pub struct Fingerprint {
    /// `tr(A^k)` for `k = 1..=k_max`; empty for non-square operators.
    pub traces: Vec<Complex64>,
    /// Descending.
    pub singular_values: Vec<f64>,
}

impl Fingerprint {
    /// Compares singular values after normalizing each list by its largest
    /// entry, so the check is blind to a global scalar.
    pub fn singular_values_match(&self, other: &Fingerprint, tol: f64) -> bool {
        if self.singular_values.len() != other.singular_values.len() {
            return false;
        }
        let ma = self.singular_values.first().copied().unwrap_or(0.0);
        let mb = other.singular_values.first().copied().unwrap_or(0.0);
        if ma == 0.0 || mb == 0.0 {
            return ma == mb;
        }
        let slack = tol.max(1e-9) * self.singular_values.len() as f64;
        self.singular_values
            .iter()
            .zip(&other.singular_values)
            .all(|(x, y)| (x / ma - y / mb).abs() <= slack)
    }
}

/// Singular values and the first `k_max` power traces of `a`.
pub fn operator_fingerprint<T: Scalar>(a: &DenseOperator<T>, k_max: usize) -> Fingerprint {
    let a = a.to_f64();
    let m = DMatrix::from_fn(a.rows(), a.cols(), |r, c| a.get(r, c));
    let mut singular_values: Vec<f64> = m.singular_values().iter().copied().collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    let mut traces = Vec::new();
    if a.is_square() && k_max > 0 {
        let mut p = a.clone();
        traces.push(p.trace());
        for _ in 1..k_max {
            p = p.matmul(&a);
            traces.push(p.trace());
        }
    }
    Fingerprint {
        traces,
        singular_values,
    }
}
