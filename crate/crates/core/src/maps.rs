//! Linear maps on Φ: plain maps, orthogonal maps (canonical transformations)
//! and anti-hermitian generators.

use crate::linalg::Matrix;
use crate::metric::Metric;
use crate::{Error, Result, MAX_DIM};

/// Tolerance for the orthogonality and anti-hermiticity checks.
pub const MAP_TOLERANCE: f64 = 1e-10;

/// A linear map Φ → Φ, `(Mη)^a = M[a][b] η^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::from_matrix(Matrix::from_rows(rows)?)
    }

    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        let n = matrix.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimTooLarge(n));
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(LinearMap { matrix })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            matrix: Matrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[f64]) -> alloc::vec::Vec<f64> {
        self.matrix.apply(v)
    }

    /// Adjoint with respect to g: `M† = G⁻¹ Mᵀ G`.
    pub fn adjoint(&self, metric: &Metric) -> Result<Matrix> {
        metric.check_dim(self.dim())?;
        Ok(metric
            .inverse()
            .mul(&self.matrix.transpose())
            .mul(metric.gram()))
    }
}

/// A canonical transformation: `Uᵀ G U = G`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthogonalMap {
    map: LinearMap,
    metric: Metric,
}

impl OrthogonalMap {
    pub fn new(map: LinearMap, metric: &Metric) -> Result<Self> {
        let residual = orthogonality_residual(map.matrix(), metric)?;
        if residual > MAP_TOLERANCE {
            return Err(Error::NotOrthogonal(residual));
        }
        Ok(OrthogonalMap {
            map,
            metric: metric.clone(),
        })
    }

    pub fn identity(metric: &Metric) -> Self {
        OrthogonalMap {
            map: LinearMap::identity(metric.dim()),
            metric: metric.clone(),
        }
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.matrix()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn apply(&self, v: &[f64]) -> alloc::vec::Vec<f64> {
        self.map.apply(v)
    }

    /// `‖Uᵀ G U − G‖∞` for this map.
    pub fn residual(&self) -> f64 {
        orthogonality_residual(self.matrix(), &self.metric).unwrap_or(f64::INFINITY)
    }
}

/// `‖Uᵀ G U − G‖∞`, the largest entry of the defect.
pub fn orthogonality_residual(u: &Matrix, metric: &Metric) -> Result<f64> {
    metric.check_dim(u.dim())?;
    let g = metric.gram();
    Ok(u.transpose().mul(g).mul(u).sub(g).norm_max())
}

/// An anti-hermitian generator, `H† = −H` with respect to g.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    map: LinearMap,
    metric: Metric,
}

impl Generator {
    pub fn new(map: LinearMap, metric: &Metric) -> Result<Self> {
        let adj = map.adjoint(metric)?;
        let residual = adj.add(map.matrix()).norm_max();
        if residual > MAP_TOLERANCE {
            return Err(Error::NotAntiHermitian(residual));
        }
        Ok(Generator {
            map,
            metric: metric.clone(),
        })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R], metric: &Metric) -> Result<Self> {
        Self::new(LinearMap::new(rows)?, metric)
    }

    pub fn zero(metric: &Metric) -> Self {
        Generator {
            map: LinearMap {
                matrix: Matrix::zeros(metric.dim()),
            },
            metric: metric.clone(),
        }
    }

    /// Generator of the rotation in the (i, j) plane (1-based) for the
    /// identity metric: `e_i ↦ rate·e_j`, `e_j ↦ −rate·e_i`.
    pub fn plane_rotation(metric: &Metric, i: usize, j: usize, rate: f64) -> Result<Self> {
        let n = metric.dim();
        let mut m = Matrix::zeros(n);
        m[(j - 1, i - 1)] = rate;
        m[(i - 1, j - 1)] = -rate;
        Self::new(LinearMap::from_matrix(m)?, metric)
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    pub fn matrix(&self) -> &Matrix {
        self.map.matrix()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    /// Linear-map commutator `[self, other] = HG − GH`.
    pub fn commutator(&self, other: &Generator) -> Result<Matrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimMismatch(self.dim(), other.dim()));
        }
        let (h, g) = (self.matrix(), other.matrix());
        Ok(h.mul(g).sub(&g.mul(h)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_is_orthogonal() {
        let m = Metric::identity(2);
        let u = LinearMap::new(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        assert!(OrthogonalMap::new(u, &m).is_ok());
        let shear = LinearMap::new(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(
            OrthogonalMap::new(shear, &m),
            Err(Error::NotOrthogonal(_))
        ));
    }

    #[test]
    fn generator_adjoint_uses_metric() {
        let m = Metric::new(&[[2.0, 0.0], [0.0, 1.0]]).unwrap();
        // G H = [[0,-2],[2,0]] is antisymmetric
        assert!(Generator::from_rows(&[[0.0, -1.0], [2.0, 0.0]], &m).is_ok());
        // antisymmetric as a matrix, but not anti-hermitian for this g
        assert!(matches!(
            Generator::from_rows(&[[0.0, -1.0], [1.0, 0.0]], &m),
            Err(Error::NotAntiHermitian(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let m = Metric::identity(3);
        let err = Generator::from_rows(&[[0.0, -1.0], [1.0, 0.0]], &m).unwrap_err();
        assert_eq!(err, Error::DimMismatch(3, 2));
    }
}
