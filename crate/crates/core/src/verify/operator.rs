use num_complex::Complex;

use crate::scalar::Scalar;

/// A dense linear map from `2^inputs` to `2^outputs` dimensions, stored
/// row-major. Qubit 0 is the most significant bit of a row or column index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<T> {
    inputs: usize,
    outputs: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> DenseOperator<T> {
    /// Panics unless `data.len() == 2^outputs · 2^inputs`.
    pub fn new(outputs: usize, inputs: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), 1 << (inputs + outputs), "operator data has wrong length");
        DenseOperator {
            inputs,
            outputs,
            data,
        }
    }

    /// Builds a square operator on `n` qubits from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len().trailing_zeros() as usize;
        assert_eq!(1 << n, rows.len(), "row count must be a power of two");
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), rows.len(), "operator must be square");
                r.iter().map(|&x| Complex::new(T::from_f64(x), T::zero()))
            })
            .collect();
        DenseOperator::new(n, n, data)
    }

    pub fn identity(qubits: usize) -> Self {
        let dim = 1 << qubits;
        let mut data = vec![Complex::new(T::zero(), T::zero()); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        DenseOperator::new(qubits, qubits, data)
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs
    }

    pub fn num_outputs(&self) -> usize {
        self.outputs
    }

    pub fn rows(&self) -> usize {
        1 << self.outputs
    }

    pub fn cols(&self) -> usize {
        1 << self.inputs
    }

    pub fn is_square(&self) -> bool {
        self.inputs == self.outputs
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.cols() + c]
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn scaled(&self, s: Complex<T>) -> Self {
        DenseOperator {
            data: self.data.iter().map(|&z| z * s).collect(),
            ..*self
        }
    }

    /// `self · other`, i.e. `other` first.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.inputs, other.outputs, "inner dimensions differ");
        let (n, k, m) = (self.rows(), self.cols(), other.cols());
        let zero = Complex::new(T::zero(), T::zero());
        let mut data = vec![zero; n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l];
                if a == zero {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                for (out, &b) in data[i * m..(i + 1) * m].iter_mut().zip(row) {
                    *out = *out + a * b;
                }
            }
        }
        DenseOperator::new(self.outputs, other.inputs, data)
    }

    pub fn trace(&self) -> Complex<T> {
        assert!(self.is_square(), "trace of a non-square operator");
        (0..self.rows())
            .map(|i| self.get(i, i))
            .fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    /// Relabels qubits on both sides: qubit `k` of the result is qubit
    /// `sigma[k]` of `self`.
    pub fn permute_qubits(&self, sigma: &[usize]) -> Self {
        assert!(self.is_square() && sigma.len() == self.inputs, "permutation needs a square operator");
        let n = self.inputs;
        let map = |idx: usize| -> usize {
            (0..n).fold(0, |acc, k| {
                let bit = (idx >> (n - 1 - k)) & 1;
                acc | (bit << (n - 1 - sigma[k]))
            })
        };
        let dim = self.rows();
        let old: Vec<usize> = (0..dim).map(map).collect();
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(self.get(old[r], old[c]));
            }
        }
        DenseOperator::new(n, n, data)
    }

    pub fn to_f64(&self) -> DenseOperator<f64> {
        DenseOperator {
            inputs: self.inputs,
            outputs: self.outputs,
            data: self
                .data
                .iter()
                .map(|z| Complex::new(z.re.to_f64(), z.im.to_f64()))
                .collect(),
        }
    }
}
