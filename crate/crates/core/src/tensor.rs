//! Tensor-product bookkeeping: factor dimensions, partial traces onto a
//! single factor, embedding of local operators and product states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, ZERO};

/// Tolerance on `| ‖ψ‖ − 1 |` for vectors that must be normalized.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Ordered factor dimensions `(M_1, …, M_N)` of `H = ⊗ H_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorSpace {
    dims: Vec<usize>,
}

impl TensorSpace {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidSpace { dims });
        }
        Ok(Self { dims })
    }

    pub fn bipartite(m1: usize, m2: usize) -> Result<Self> {
        Self::new(vec![m1, m2])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Number of factors `N`.
    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self, i: usize) -> Result<usize> {
        self.dims.get(i).copied().ok_or(Error::IndexOutOfRange {
            index: i,
            factors: self.dims.len(),
        })
    }

    /// `∏ M_i`.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Flat-index stride of factor `i` (product of the dimensions to its right).
    pub fn stride(&self, i: usize) -> usize {
        self.dims[i + 1..].iter().product()
    }
}

/// An operator on a factorized space.
#[derive(Debug, Clone, PartialEq)]
pub struct MultipartiteOperator {
    space: TensorSpace,
    matrix: ComplexMatrix,
}

impl MultipartiteOperator {
    pub fn new(space: TensorSpace, matrix: ComplexMatrix) -> Result<Self> {
        let n = space.total_dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                op: "operator/space",
                left_rows: matrix.rows(),
                left_cols: matrix.cols(),
                right_rows: n,
                right_cols: n,
            });
        }
        Ok(Self { space, matrix })
    }

    /// Tensor product `⊗ A_i` of single-factor operators.
    pub fn product(factors: &[ComplexMatrix]) -> Result<Self> {
        let mut dims = Vec::with_capacity(factors.len());
        for f in factors {
            if !f.is_square() {
                return Err(Error::NonSquare {
                    rows: f.rows(),
                    cols: f.cols(),
                });
            }
            dims.push(f.rows());
        }
        let space = TensorSpace::new(dims)?;
        let matrix = factors.iter().skip(1).fold(factors[0].clone(), |acc, f| acc.kron(f));
        Self::new(space, matrix)
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Same space, transformed matrix.
    pub fn map_matrix(&self, f: impl FnOnce(&ComplexMatrix) -> ComplexMatrix) -> Result<Self> {
        Self::new(self.space.clone(), f(&self.matrix))
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace().expect("operator matrices are square")
    }

    pub fn hs_norm(&self) -> f64 {
        self.matrix.hs_norm()
    }

    pub fn partial_trace(&self, keep: usize) -> Result<MultipartiteOperator> {
        partial_trace(self, keep)
    }
}

/// Reduces `op` onto factor `keep` by tracing out every other factor.
///
/// With the left-outer layout a flat index is `outer·(M_keep·s) + k·s + inner`
/// where `s` is the stride of `keep`; the complement runs over all
/// `(outer, inner)` pairs.
pub fn partial_trace(op: &MultipartiteOperator, keep: usize) -> Result<MultipartiteOperator> {
    let space = op.space();
    let m = space.dim(keep)?;
    let stride = space.stride(keep);
    let outer_count = space.total_dim() / (m * stride);
    let block = m * stride;
    let a = op.matrix();

    let mut out = vec![ZERO; m * m];
    for outer in 0..outer_count {
        for inner in 0..stride {
            let base = outer * block + inner;
            for r in 0..m {
                let row = base + r * stride;
                for c in 0..m {
                    out[r * m + c] += a[(row, base + c * stride)];
                }
            }
        }
    }
    MultipartiteOperator::new(TensorSpace::new(vec![m])?, ComplexMatrix::new(m, m, out)?)
}

/// Places `local` on factor `at`, with identities on every other factor.
pub fn embed_local(local: &ComplexMatrix, space: &TensorSpace, at: usize) -> Result<MultipartiteOperator> {
    let m = space.dim(at)?;
    if local.rows() != m || local.cols() != m {
        return Err(Error::DimensionMismatch {
            op: "embed_local",
            left_rows: local.rows(),
            left_cols: local.cols(),
            right_rows: m,
            right_cols: m,
        });
    }
    let left: usize = space.dims()[..at].iter().product();
    let right = space.stride(at);
    let matrix = ComplexMatrix::identity(left)
        .kron(local)
        .kron(&ComplexMatrix::identity(right));
    MultipartiteOperator::new(space.clone(), matrix)
}

/// A state vector on a factorized space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    space: TensorSpace,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(space: TensorSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::InvalidLength {
                len: amplitudes.len(),
                expected: space.total_dim(),
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { space, amplitudes })
    }

    /// Single-factor state.
    pub fn single(amplitudes: Vec<Complex64>) -> Result<Self> {
        let space = TensorSpace::new(vec![amplitudes.len()])?;
        Self::new(space, amplitudes)
    }

    pub fn basis(space: TensorSpace, index: usize) -> Result<Self> {
        let n = space.total_dim();
        if index >= n {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {n}"
            )));
        }
        let mut amplitudes = vec![ZERO; n];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self::new(space, amplitudes)
    }

    pub fn space(&self) -> &TensorSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORMALIZATION_TOLERANCE
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Self::new(self.space.clone(), self.amplitudes.iter().map(|z| z / n).collect())
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.amplitudes.len() != other.amplitudes.len() {
            return Err(Error::InvalidLength {
                len: other.amplitudes.len(),
                expected: self.amplitudes.len(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `op |self⟩`.
    pub fn apply(&self, op: &ComplexMatrix) -> Result<StateVector> {
        let n = self.amplitudes.len();
        if op.cols() != n || op.rows() != n {
            return Err(Error::DimensionMismatch {
                op: "apply",
                left_rows: op.rows(),
                left_cols: op.cols(),
                right_rows: n,
                right_cols: 1,
            });
        }
        let out = (0..n)
            .map(|i| (0..n).map(|j| op[(i, j)] * self.amplitudes[j]).sum())
            .collect();
        Self::new(self.space.clone(), out)
    }
}

/// Kronecker-ordered product state of the factors.
///
/// With `strict` set, every factor must be normalized; otherwise factors are
/// taken as given.
pub fn product_state(factors: &[StateVector], strict: bool) -> Result<StateVector> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter(
            "product_state needs at least one factor".into(),
        ));
    }
    if strict {
        if let Some(bad) = factors.iter().find(|f| !f.is_normalized()) {
            return Err(Error::NotNormalized { norm: bad.norm() });
        }
    }
    let dims: Vec<usize> = factors.iter().flat_map(|f| f.space().dims().iter().copied()).collect();
    let mut amplitudes = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        amplitudes = amplitudes
            .iter()
            .flat_map(|a| f.amplitudes().iter().map(move |b| a * b))
            .collect();
    }
    StateVector::new(TensorSpace::new(dims)?, amplitudes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample(n: usize, seed: f64) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |i, j| {
            let x = seed + (i * n + j) as f64;
            c((1.1 * x).sin(), (0.3 * x - 0.5).cos())
        })
    }

    fn op(dims: &[usize], seed: f64) -> MultipartiteOperator {
        let space = TensorSpace::new(dims.to_vec()).unwrap();
        let n = space.total_dim();
        MultipartiteOperator::new(space, sample(n, seed)).unwrap()
    }

    /// Direct double loop over the traced index for N = 2.
    fn naive_bipartite(a: &ComplexMatrix, m1: usize, m2: usize, keep: usize) -> ComplexMatrix {
        match keep {
            0 => ComplexMatrix::from_fn(m1, m1, |r, s| (0..m2).map(|k| a[(r * m2 + k, s * m2 + k)]).sum()),
            _ => ComplexMatrix::from_fn(m2, m2, |r, s| (0..m1).map(|k| a[(k * m2 + r, k * m2 + s)]).sum()),
        }
    }

    #[test]
    fn space_validation() {
        assert!(TensorSpace::new(vec![]).is_err());
        assert!(TensorSpace::new(vec![2, 0]).is_err());
        let s = TensorSpace::new(vec![2, 3, 4]).unwrap();
        assert_eq!(s.total_dim(), 24);
        assert_eq!((s.stride(0), s.stride(1), s.stride(2)), (12, 4, 1));
        assert!(matches!(s.dim(3), Err(Error::IndexOutOfRange { index: 3, factors: 3 })));
    }

    #[test]
    fn operator_must_match_space() {
        let space = TensorSpace::bipartite(2, 3).unwrap();
        assert!(MultipartiteOperator::new(space.clone(), ComplexMatrix::identity(5)).is_err());
        assert!(MultipartiteOperator::new(space, ComplexMatrix::identity(6)).is_ok());
    }

    #[test]
    fn partial_trace_of_product() {
        let a = sample(2, 0.2);
        let b = sample(2, 3.3);
        let ab = MultipartiteOperator::product(&[a.clone(), b.clone()]).unwrap();
        let reduced = ab.partial_trace(0).unwrap();
        let expected = a.scale(b.trace().unwrap());
        assert!(reduced.matrix().max_abs_diff(&expected).unwrap() < 1e-14);
        let reduced = ab.partial_trace(1).unwrap();
        let expected = b.scale(a.trace().unwrap());
        assert!(reduced.matrix().max_abs_diff(&expected).unwrap() < 1e-14);
    }

    #[test]
    fn partial_trace_of_identity() {
        let id = MultipartiteOperator::new(TensorSpace::bipartite(2, 2).unwrap(), ComplexMatrix::identity(4)).unwrap();
        let r = id.partial_trace(0).unwrap();
        assert_eq!(r.matrix(), &ComplexMatrix::identity(2).scale_real(2.0));
        assert_eq!(r.space().dims(), &[2]);
    }

    #[test]
    fn partial_trace_matches_naive_loop() {
        for seed in [0.0, 1.7, 4.2] {
            let o = op(&[3, 2], seed);
            for keep in 0..2 {
                let fast = o.partial_trace(keep).unwrap();
                let slow = naive_bipartite(o.matrix(), 3, 2, keep);
                assert!(fast.matrix().max_abs_diff(&slow).unwrap() < 1e-13);
            }
        }
    }

    #[test]
    fn partial_trace_tripartite_product() {
        let (a, b, cm) = (sample(2, 0.1), sample(3, 1.2), sample(2, 2.3));
        let abc = MultipartiteOperator::product(&[a.clone(), b.clone(), cm.clone()]).unwrap();
        let (ta, tb, tc) = (a.trace().unwrap(), b.trace().unwrap(), cm.trace().unwrap());
        let expect = [a.scale(tb * tc), b.scale(ta * tc), cm.scale(ta * tb)];
        for (keep, e) in expect.iter().enumerate() {
            let r = abc.partial_trace(keep).unwrap();
            assert!(r.matrix().max_abs_diff(e).unwrap() < 1e-13);
        }
        assert!(matches!(
            abc.partial_trace(3),
            Err(Error::IndexOutOfRange { index: 3, factors: 3 })
        ));
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let o = op(&[2, 2, 3], 0.9);
        for keep in 0..3 {
            let r = o.partial_trace(keep).unwrap();
            assert!((r.trace() - o.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn embed_local_cases() {
        let sz = ComplexMatrix::from_real_diagonal(&[0.5, -0.5]);
        let space = TensorSpace::bipartite(2, 2).unwrap();
        let e = embed_local(&sz, &space, 0).unwrap();
        assert_eq!(e.matrix(), &sz.kron(&ComplexMatrix::identity(2)));

        let x = sample(2, 0.6);
        let e = embed_local(&x, &space, 0).unwrap();
        let r = e.partial_trace(0).unwrap();
        assert!(r.matrix().max_abs_diff(&x.scale_real(2.0)).unwrap() < 1e-15);

        let space3 = TensorSpace::new(vec![2, 3, 4]).unwrap();
        let y = sample(3, 1.1);
        let e = embed_local(&y, &space3, 1).unwrap();
        assert!((e.trace() - y.trace().unwrap() * 8.0).norm() < 1e-13);
        assert!(embed_local(&y, &space3, 0).is_err());
        assert!(embed_local(&y, &space3, 5).is_err());
    }

    #[test]
    fn product_states() {
        let up = StateVector::single(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let down = StateVector::single(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let uu = product_state(&[up.clone(), up.clone()], true).unwrap();
        assert_eq!(
            uu,
            StateVector::basis(TensorSpace::bipartite(2, 2).unwrap(), 0).unwrap()
        );
        let ud = product_state(&[up, down], true).unwrap();
        assert_eq!(ud.amplitudes()[1], c(1.0, 0.0));

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = StateVector::single(vec![c(h, 0.0), c(h, 0.0)]).unwrap();
        let pp = product_state(&[plus.clone(), plus], true).unwrap();
        for a in pp.amplitudes() {
            assert!((a - c(0.5, 0.0)).norm() < 1e-15);
        }
        assert!(pp.is_normalized());

        let unnorm = StateVector::single(vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            product_state(std::slice::from_ref(&unnorm), true),
            Err(Error::NotNormalized { .. })
        ));
        assert!(product_state(&[unnorm], false).is_ok());
    }
}
