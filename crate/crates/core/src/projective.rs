//! The projectivized light cone: points of Sⁿ as null lines, projective
//! maps (including rank-one boundary points of the Möbius group), chordal
//! distances, stereographic charts and circles.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::minkowski::{
    basis_vector, is_lightlike, metric, mink_inner, mink_sq, MinkEndo, MinkVector, NullBasis,
    DEFAULT_TOL,
};

/// Distance between the lines spanned by two nonzero vectors of any shape:
/// the sine of the principal angle, computed as |x̂ − (x̂·ŷ)ŷ| for
/// accuracy near zero.
fn line_distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    let nx = x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let ny = y.iter().map(|a| a * a).sum::<f64>().sqrt();
    if nx == 0.0 || ny == 0.0 || !nx.is_finite() || !ny.is_finite() {
        return Err(Error::ZeroRepresentative);
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| (a / nx) * (b / ny)).sum();
    let d2: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = a / nx - dot * b / ny;
            r * r
        })
        .sum();
    Ok(d2.sqrt().min(1.0))
}

/// Distance between ⟨x⟩ and ⟨y⟩ for raw vectors.
pub fn vector_line_distance(x: &MinkVector, y: &MinkVector) -> Result<f64> {
    line_distance(x.as_slice(), y.as_slice())
}

/// A point of Sⁿ: the line through a nonzero null vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    rep: MinkVector,
}

impl ProjectivePoint {
    /// Wraps a nonzero representative. Lightness is not enforced here since
    /// integrated representatives carry O(tol) drift; use
    /// [`ProjectivePoint::is_lightlike`] to check.
    pub fn new(rep: MinkVector) -> Result<Self> {
        let n = rep.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroRepresentative);
        }
        Ok(Self { rep })
    }

    /// Like [`ProjectivePoint::new`] but also rejects non-null vectors.
    pub fn lightlike(rep: MinkVector, tol: f64) -> Result<Self> {
        let p = Self::new(rep)?;
        if !is_lightlike(&p.rep, tol) {
            return Err(Error::InvalidArgument(format!(
                "representative is not lightlike (|x|^2 = {:e})",
                mink_sq(&p.rep)
            )));
        }
        Ok(p)
    }

    pub fn rep(&self) -> &MinkVector {
        &self.rep
    }

    pub fn into_rep(self) -> MinkVector {
        self.rep
    }

    /// Representative of unit Euclidean length.
    pub fn normalized(&self) -> MinkVector {
        &self.rep / self.rep.norm()
    }

    pub fn is_lightlike(&self, tol: f64) -> bool {
        is_lightlike(&self.rep, tol)
    }

    pub fn dim(&self) -> usize {
        self.rep.len()
    }
}

/// A projective endomorphism ⟨A⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMap {
    rep: MinkEndo,
}

impl ProjectiveMap {
    pub fn new(rep: MinkEndo) -> Result<Self> {
        let n = rep.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroRepresentative);
        }
        Ok(Self { rep })
    }

    pub fn rep(&self) -> &MinkEndo {
        &self.rep
    }

    pub fn normalized(&self) -> MinkEndo {
        &self.rep / self.rep.norm()
    }
}

/// Chordal distance between two points of Sⁿ (sine of the angle between
/// the representative lines, Euclidean metric).
pub fn proj_point_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<f64> {
    vector_line_distance(&p.rep, &q.rep)
}

/// Same construction on End(ℝ^{n+2}) with the Frobenius inner product.
pub fn proj_map_distance(a: &ProjectiveMap, b: &ProjectiveMap) -> Result<f64> {
    if a.rep.shape() != b.rep.shape() {
        return Err(Error::DimensionMismatch { expected: a.rep.len(), found: b.rep.len() });
    }
    line_distance(a.rep.as_slice(), b.rep.as_slice())
}

/// ⟨A⟩⟨x⟩ = ⟨Ax⟩. Fails with `KernelHit` when |Ax| ≤ tol |A| |x|.
pub fn proj_apply_tol(m: &ProjectiveMap, p: &ProjectivePoint, tol: f64) -> Result<ProjectivePoint> {
    if m.rep.ncols() != p.rep.len() {
        return Err(Error::DimensionMismatch { expected: m.rep.ncols(), found: p.rep.len() });
    }
    let img = &m.rep * &p.rep;
    if img.norm() <= tol * m.rep.norm() * p.rep.norm() {
        return Err(Error::KernelHit);
    }
    ProjectivePoint::new(img)
}

pub fn proj_apply(m: &ProjectiveMap, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    proj_apply_tol(m, p, DEFAULT_TOL)
}

/// Stereographic chart Sⁿ∖{⟨ι⟩} → ℝⁿ centred at ⟨o⟩.
///
/// The inverse is x ↦ o + Σ xᵢ eᵢ + ½|x|² ι, which is lightlike because
/// ⟨o, ι⟩ = −1.
#[derive(Debug, Clone, PartialEq)]
pub struct StereoChart {
    pub o: MinkVector,
    pub iota: MinkVector,
    /// Minkowski-orthonormal basis of span(o, ι)^⊥.
    pub spatial: Vec<MinkVector>,
}

impl StereoChart {
    /// Chart built from the standard null basis: eᵢ are the first n
    /// coordinate vectors.
    pub fn standard(dim: usize) -> Result<Self> {
        let b = NullBasis::standard(dim)?;
        let mut spatial = vec![b.tangent];
        spatial.extend(b.normals);
        Ok(Self { o: b.o, iota: b.iota, spatial })
    }

    /// Chart for an arbitrary null pair with ⟨o, ι⟩ = −1.
    pub fn new(o: MinkVector, iota: MinkVector) -> Result<Self> {
        let dim = o.len();
        crate::minkowski::check_dim(dim)?;
        if iota.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: iota.len() });
        }
        let scale = o.norm() * iota.norm();
        if (mink_inner(&o, &iota) + 1.0).abs() > 1e-9 * scale.max(1.0)
            || !is_lightlike(&o, 1e-9)
            || !is_lightlike(&iota, 1e-9)
        {
            return Err(Error::InvalidArgument("(o, iota) must be a null pair with <o,iota> = -1".into()));
        }
        let mut spatial: Vec<MinkVector> = Vec::with_capacity(dim - 2);
        for i in 0..dim {
            if spatial.len() == dim - 2 {
                break;
            }
            // Project onto span(o, ι)^⊥ and orthogonalize against what we have.
            let e = basis_vector(dim, i);
            let mut v = &e + &o * mink_inner(&e, &iota) + &iota * mink_inner(&e, &o);
            for s in &spatial {
                v -= s * mink_inner(&v, s);
            }
            let n2 = mink_sq(&v);
            if n2 > 1e-8 {
                spatial.push(v / n2.sqrt());
            }
        }
        if spatial.len() != dim - 2 {
            return Err(Error::InvalidArgument("could not complete the chart basis".into()));
        }
        Ok(Self { o, iota, spatial })
    }

    pub fn dim(&self) -> usize {
        self.o.len()
    }

    pub fn project(&self, p: &ProjectivePoint) -> Result<DVector<f64>> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.dim() });
        }
        let r = p.rep();
        let k = mink_inner(r, &self.iota);
        if k.abs() <= DEFAULT_TOL * r.norm() * self.iota.norm() {
            return Err(Error::PointAtInfinity);
        }
        let r = r / (-k);
        Ok(DVector::from_iterator(
            self.spatial.len(),
            self.spatial.iter().map(|e| mink_inner(&r, e)),
        ))
    }

    pub fn lift(&self, x: &DVector<f64>) -> Result<MinkVector> {
        if x.len() != self.spatial.len() {
            return Err(Error::DimensionMismatch { expected: self.spatial.len(), found: x.len() });
        }
        let mut v = &self.o + &self.iota * (0.5 * x.norm_squared());
        for (xi, e) in x.iter().zip(&self.spatial) {
            v += e * *xi;
        }
        Ok(v)
    }
}

pub fn stereo_project(p: &ProjectivePoint, o: &MinkVector, iota: &MinkVector) -> Result<DVector<f64>> {
    StereoChart::new(o.clone(), iota.clone())?.project(p)
}

pub fn stereo_lift(x: &DVector<f64>, o: &MinkVector, iota: &MinkVector) -> Result<ProjectivePoint> {
    ProjectivePoint::new(StereoChart::new(o.clone(), iota.clone())?.lift(x)?)
}

/// A linear subspace of ℝ^{n+2}, stored by a Euclidean-orthonormal basis.
/// Circles are the 3-dimensional subspaces of signature (2, 1); their
/// points are the null lines they contain.
///
/// Distances to the subspace use the Minkowski-orthogonal projection when
/// the restricted metric is nondegenerate (so vectors Minkowski-orthogonal
/// to the subspace are at distance 1), and the Euclidean one otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleSubspace {
    basis: DMatrix<f64>,
    gram_inv: Option<DMatrix<f64>>,
}

/// Counts of positive, negative and zero eigenvalues of a restricted metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl CircleSubspace {
    /// Subspace spanned by the given vectors; fails if they are dependent.
    pub fn span(vectors: &[MinkVector]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidArgument("empty span".into()));
        }
        let m = DMatrix::from_columns(vectors);
        let scale = vectors.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let svd = m.clone().svd(true, false);
        let smin = svd.singular_values.iter().cloned().fold(f64::INFINITY, f64::min);
        if smin <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::InvalidArgument("spanning vectors are linearly dependent".into()));
        }
        let q = m.qr().q();
        let g = q.transpose() * metric(q.nrows()) * &q;
        let gmin = SymmetricEigen::new(g.clone()).eigenvalues.iter().fold(f64::INFINITY, |a, &b| a.min(b.abs()));
        let gram_inv = if gmin > 1e-9 { g.try_inverse() } else { None };
        Ok(Self { basis: q, gram_inv })
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthogonal projection onto the subspace (Minkowski when possible).
    pub fn project(&self, x: &MinkVector) -> MinkVector {
        match &self.gram_inv {
            Some(gi) => &self.basis * (gi * (self.basis.transpose() * crate::minkowski::lower(x))),
            None => &self.basis * (self.basis.transpose() * x),
        }
    }

    /// Distance of the unit representative of ⟨x⟩ to the subspace.
    pub fn distance(&self, x: &MinkVector) -> Result<f64> {
        let n = x.norm();
        if n == 0.0 {
            return Err(Error::ZeroRepresentative);
        }
        let u = x / n;
        Ok((&u - self.project(&u)).norm())
    }

    pub fn point_distance(&self, p: &ProjectivePoint) -> Result<f64> {
        self.distance(p.rep())
    }

    /// Signature of the Minkowski metric restricted to the subspace.
    pub fn signature(&self, tol: f64) -> Signature {
        let g = self.basis.transpose() * metric(self.basis.nrows()) * &self.basis;
        let eig = SymmetricEigen::new(g);
        let mut s = Signature { positive: 0, negative: 0, zero: 0 };
        for &l in eig.eigenvalues.iter() {
            if l > tol {
                s.positive += 1;
            } else if l < -tol {
                s.negative += 1;
            } else {
                s.zero += 1;
            }
        }
        s
    }

    pub fn is_circle(&self) -> bool {
        self.rank() == 3 && self.signature(1e-9) == Signature { positive: 2, negative: 1, zero: 0 }
    }

    /// Image under an invertible map.
    pub fn mapped(&self, a: &MinkEndo) -> Result<Self> {
        let cols: Vec<MinkVector> = (0..self.rank()).map(|j| a * self.basis.column(j)).collect();
        Self::span(&cols)
    }

    /// A point on a circle is a null line inside it.
    pub fn contains(&self, p: &ProjectivePoint, tol: f64) -> Result<bool> {
        Ok(p.is_lightlike(tol) && self.point_distance(p)? <= tol)
    }

    /// `count` points of the circle, equally spaced in the angle of a
    /// diagonalizing frame of the restricted metric.
    pub fn sample_points(&self, count: usize) -> Result<Vec<ProjectivePoint>> {
        if !self.is_circle() {
            return Err(Error::InvalidArgument("subspace is not a circle".into()));
        }
        let g = self.basis.transpose() * metric(self.basis.nrows()) * &self.basis;
        let eig = SymmetricEigen::new(g);
        let mut order: Vec<usize> = (0..3).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
        let axis = |k: usize| {
            let i = order[k];
            &self.basis * eig.eigenvectors.column(i) / eig.eigenvalues[i].abs().sqrt()
        };
        let (e1, e2, e3) = (axis(0), axis(1), axis(2));
        (0..count)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                ProjectivePoint::new(&e1 * th.cos() + &e2 * th.sin() + &e3)
            })
            .collect()
    }
}
