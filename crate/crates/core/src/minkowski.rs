//! Linear algebra on Minkowski space ℝ^{n+2} with signature (n+1, 1).
//!
//! Coordinates are fixed once and for all: the metric is `diag(1, …, 1, -1)`,
//! timelike coordinate last. Vectors and endomorphisms are plain nalgebra
//! `DVector`/`DMatrix` values; the functions here supply the Minkowski
//! structure on top.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Element of ℝ^{n+2} (timelike coordinate last).
pub type MinkVector = DVector<f64>;
/// Dense endomorphism of ℝ^{n+2}.
pub type MinkEndo = DMatrix<f64>;

/// Relative tolerance used by the classification predicates.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Smallest supported ambient dimension (n = 2).
pub const MIN_DIM: usize = 4;

pub fn check_dim(dim: usize) -> Result<()> {
    if dim < MIN_DIM {
        return Err(Error::DimensionTooSmall(dim));
    }
    Ok(())
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// The metric as a diagonal matrix.
pub fn metric(dim: usize) -> MinkEndo {
    let mut eta = DMatrix::identity(dim, dim);
    eta[(dim - 1, dim - 1)] = -1.0;
    eta
}

/// Lowers the index: returns η x.
pub fn lower(x: &MinkVector) -> MinkVector {
    let mut y = x.clone();
    let last = y.len() - 1;
    y[last] = -y[last];
    y
}

/// Minkowski inner product. Panics on a dimension mismatch; see
/// [`try_mink_inner`] for the checked variant.
#[inline]
pub fn mink_inner(x: &MinkVector, y: &MinkVector) -> f64 {
    assert_eq!(x.len(), y.len(), "mink_inner: dimension mismatch");
    let n = x.len() - 1;
    let mut s = -x[n] * y[n];
    for i in 0..n {
        s += x[i] * y[i];
    }
    s
}

pub fn try_mink_inner(x: &MinkVector, y: &MinkVector) -> Result<f64> {
    check_same(x.len(), y.len())?;
    check_dim(x.len())?;
    Ok(mink_inner(x, y))
}

/// ‖x‖², which may have any sign.
#[inline]
pub fn mink_sq(x: &MinkVector) -> f64 {
    mink_inner(x, x)
}

/// Lightlike test relative to the Euclidean size of `x`.
pub fn is_lightlike(x: &MinkVector, tol: f64) -> bool {
    mink_sq(x).abs() <= tol * x.norm_squared()
}

/// The skew map x ↦ ⟨v,x⟩w − ⟨w,x⟩v.
pub fn wedge(v: &MinkVector, w: &MinkVector) -> MinkEndo {
    w * lower(v).transpose() - v * lower(w).transpose()
}

/// The map x ↦ ⟨x,w⟩v, written v w* in the text.
pub fn rank_one(v: &MinkVector, w: &MinkVector) -> MinkEndo {
    v * lower(w).transpose()
}

/// Adjoint with respect to the Minkowski inner product: η Aᵀ η.
pub fn mink_adjoint(a: &MinkEndo) -> MinkEndo {
    let mut b = a.transpose();
    let n = b.nrows() - 1;
    for j in 0..n {
        b[(n, j)] = -b[(n, j)];
        b[(j, n)] = -b[(j, n)];
    }
    b
}

/// Euclidean (Frobenius) norm of a vector or endomorphism.
pub fn euclid_norm<R, C, S>(a: &nalgebra::Matrix<f64, R, C, S>) -> f64
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::Storage<f64, R, C>,
{
    a.norm()
}

/// ‖A* + A‖ relative to ‖A‖.
pub fn skew_defect(a: &MinkEndo) -> f64 {
    let n = a.norm();
    if n == 0.0 {
        return 0.0;
    }
    (mink_adjoint(a) + a).norm() / n
}

pub fn is_skew(a: &MinkEndo, tol: f64) -> bool {
    skew_defect(a) <= tol
}

/// ‖A* A − id‖: how far `a` is from the Lorentz group.
pub fn lorentz_defect(a: &MinkEndo) -> f64 {
    let n = a.nrows();
    (mink_adjoint(a) * a - DMatrix::identity(n, n)).norm()
}

/// Matrix commutator [a, b] = ab − ba.
pub fn commutator(a: &MinkEndo, b: &MinkEndo) -> MinkEndo {
    a * b - b * a
}

/// Signature of the metric restricted to a 2-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaneSignature {
    Minkowski,
    Degenerate,
    Spacelike,
}

/// Gram determinant ‖v‖²‖w‖² − ⟨v,w⟩² of span(v, w).
pub fn gram_determinant(v: &MinkVector, w: &MinkVector) -> f64 {
    mink_sq(v) * mink_sq(w) - mink_inner(v, w).powi(2)
}

/// Classifies span(v, w) by the sign of its Gram determinant. The
/// tolerance is relative to |v|²|w|².
pub fn plane_signature(v: &MinkVector, w: &MinkVector, tol: f64) -> Result<PlaneSignature> {
    check_same(v.len(), w.len())?;
    let scale = v.norm() * w.norm();
    if scale == 0.0 || wedge(v, w).norm() <= tol * scale {
        return Err(Error::DegenerateWedge);
    }
    let g = gram_determinant(v, w);
    let t = tol * scale * scale;
    Ok(if g < -t {
        PlaneSignature::Minkowski
    } else if g > t {
        PlaneSignature::Spacelike
    } else {
        PlaneSignature::Degenerate
    })
}

/// Unit basis vector e_i.
pub fn basis_vector(dim: usize, i: usize) -> MinkVector {
    let mut e = DVector::zeros(dim);
    e[i] = 1.0;
    e
}

/// The fixed pseudo-orthonormal basis {o, ι, 𝔱, 𝔫₁, …, 𝔫_{n−1}} with
/// ⟨o, ι⟩ = −1, o and ι null, and 𝔱, 𝔫_i orthonormal spacelike.
#[derive(Debug, Clone, PartialEq)]
pub struct NullBasis {
    pub o: MinkVector,
    pub iota: MinkVector,
    pub tangent: MinkVector,
    pub normals: Vec<MinkVector>,
}

impl NullBasis {
    /// o = e_n + e_{n+1}, ι = (e_{n+1} − e_n)/2, 𝔱 = e_0, 𝔫_i = e_i.
    pub fn standard(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let n = dim - 2;
        let o = basis_vector(dim, n) + basis_vector(dim, n + 1);
        let iota = (basis_vector(dim, n + 1) - basis_vector(dim, n)) * 0.5;
        let tangent = basis_vector(dim, 0);
        let normals = (1..n).map(|i| basis_vector(dim, i)).collect();
        Ok(Self { o, iota, tangent, normals })
    }

    pub fn dim(&self) -> usize {
        self.o.len()
    }

    /// Columns [o, ι, 𝔱, 𝔫…].
    pub fn matrix(&self) -> MinkEndo {
        let mut cols = vec![self.o.clone(), self.iota.clone(), self.tangent.clone()];
        cols.extend(self.normals.iter().cloned());
        DMatrix::from_columns(&cols)
    }

    /// Inverse of [`NullBasis::matrix`], via J Bᵀ η where J is the Gram of
    /// the basis (J is its own inverse).
    pub fn inverse_matrix(&self) -> MinkEndo {
        let b = self.matrix();
        let dim = self.dim();
        pseudo_orthonormal_gram(dim) * b.transpose() * metric(dim)
    }
}

/// Gram matrix of a pseudo-orthonormal frame ordered (null, null, spacelike…):
/// −1 in the (0,1) slots, identity on the rest.
pub fn pseudo_orthonormal_gram(dim: usize) -> MinkEndo {
    let mut j = DMatrix::identity(dim, dim);
    j[(0, 0)] = 0.0;
    j[(1, 1)] = 0.0;
    j[(0, 1)] = -1.0;
    j[(1, 0)] = -1.0;
    j
}

/// Minkowski Gram matrix of a list of column vectors.
pub fn gram_matrix(cols: &MinkEndo) -> MinkEndo {
    cols.transpose() * metric(cols.nrows()) * cols
}
