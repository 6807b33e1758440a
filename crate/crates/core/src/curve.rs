//! Polarized curves in the light-cone model, their associated 1-forms and
//! adapted frames.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::jet::{jet_inner, Jet};
use crate::minkowski::{
    check_dim, gram_matrix, mink_adjoint, mink_inner, mink_sq, pseudo_orthonormal_gram, wedge,
    MinkEndo, MinkVector, NullBasis, DEFAULT_TOL,
};
use crate::primitive::{integrate_linear, OneForm, Side, StepOptions};
use crate::projective::CircleSubspace;

/// Jet-valued light-cone lift: t ↦ Taylor jets of the n+2 coordinates at t.
pub type LiftFn = Arc<dyn Fn(f64) -> Vec<Jet> + Send + Sync>;
/// Real function of t.
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Order of the pole of Q at t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PoleOrder {
    Regular,
    First,
    Second,
}

impl PoleOrder {
    pub fn as_u8(self) -> u8 {
        match self {
            PoleOrder::Regular => 0,
            PoleOrder::First => 1,
            PoleOrder::Second => 2,
        }
    }

    pub fn from_u8(k: u8) -> Result<Self> {
        match k {
            0 => Ok(PoleOrder::Regular),
            1 => Ok(PoleOrder::First),
            2 => Ok(PoleOrder::Second),
            _ => Err(Error::InvalidArgument(format!("pole order {k} not supported (0, 1 or 2)"))),
        }
    }
}

/// A curve ⟨c⟩ in Sⁿ on (0, b) with polarization Q(t) dt².
///
/// The lift is given analytically as a jet closure so that derivatives of
/// any needed order are exact and t can approach 0 freely. The closure
/// must also be valid slightly beyond the domain, in particular at t = 0.
#[derive(Clone)]
pub struct PolarizedCurve {
    lift: LiftFn,
    q: ScalarFn,
    dim: usize,
    domain_b: f64,
    pole_order: PoleOrder,
    flat: bool,
}

impl std::fmt::Debug for PolarizedCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolarizedCurve")
            .field("dim", &self.dim)
            .field("domain_b", &self.domain_b)
            .field("pole_order", &self.pole_order)
            .field("flat", &self.flat)
            .finish()
    }
}

impl PolarizedCurve {
    pub fn new(dim: usize, lift: LiftFn, q: ScalarFn, domain_b: f64, pole_order: PoleOrder) -> Result<Self> {
        check_dim(dim)?;
        if !(domain_b > 0.0) {
            return Err(Error::InvalidArgument(format!("domain end b = {domain_b} must be positive")));
        }
        let probe = lift(0.5 * domain_b);
        if probe.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: probe.len() });
        }
        Ok(Self { lift, q, dim, domain_b, pole_order, flat: false })
    }

    /// Lifts a curve x(t) in ℝⁿ through the standard stereographic chart:
    /// c = o + x + ½|x|² ι.
    pub fn from_euclidean_curve(
        dim: usize,
        x: impl Fn(Jet) -> Vec<Jet> + Send + Sync + 'static,
        q: ScalarFn,
        domain_b: f64,
        pole_order: PoleOrder,
    ) -> Result<Self> {
        check_dim(dim)?;
        let n = dim - 2;
        let lift: LiftFn = Arc::new(move |t| {
            let xs = x(Jet::variable(t));
            assert_eq!(xs.len(), n, "euclidean curve has wrong dimension");
            let mut r2 = Jet::constant(0.0);
            for xi in &xs {
                r2 = r2 + *xi * *xi;
            }
            let mut c = xs;
            // o = e_n + e_{n+1}, ι = (e_{n+1} − e_n)/2.
            let quarter = r2 * 0.25;
            c.push(-quarter + 1.0);
            c.push(quarter + 1.0);
            c
        });
        Self::new(dim, lift, q, domain_b, pole_order)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain_b(&self) -> f64 {
        self.domain_b
    }

    pub fn pole_order(&self) -> PoleOrder {
        self.pole_order
    }

    pub fn is_flat(&self) -> bool {
        self.flat
    }

    pub fn lift_fn(&self) -> LiftFn {
        self.lift.clone()
    }

    pub fn q_fn(&self) -> ScalarFn {
        self.q.clone()
    }

    pub fn jets(&self, t: f64) -> Vec<Jet> {
        (self.lift)(t)
    }

    /// c(t).
    pub fn point(&self, t: f64) -> MinkVector {
        self.derivative(t, 0)
    }

    /// c⁽ᵏ⁾(t).
    pub fn derivative(&self, t: f64, k: usize) -> MinkVector {
        let j = self.jets(t);
        DVector::from_iterator(self.dim, j.iter().map(|x| x.derivative_value(k)))
    }

    /// c, c′, …, c⁽ᵏ⁾ from one jet evaluation.
    pub fn derivatives(&self, t: f64, k: usize) -> Vec<MinkVector> {
        let j = self.jets(t);
        (0..=k)
            .map(|d| DVector::from_iterator(self.dim, j.iter().map(|x| x.derivative_value(d))))
            .collect()
    }

    /// Q(t), the coefficient of the polarization.
    pub fn q(&self, t: f64) -> f64 {
        (self.q)(t)
    }

    /// 𝔔 = Q/‖c′‖².
    pub fn qend(&self, t: f64) -> Result<f64> {
        let dc = self.derivative(t, 1);
        let s = mink_sq(&dc);
        if s <= DEFAULT_TOL * dc.norm_squared() || s <= 0.0 {
            return Err(Error::ZeroSpeed { t });
        }
        Ok(self.q(t) / s)
    }

    /// tᵏ Q(t), used to read off pole orders.
    pub fn leading_coefficient(&self, k: i32, t: f64) -> f64 {
        t.powi(k) * self.q(t)
    }

    /// Same projective curve with lift h(t) c(t).
    pub fn rescaled(&self, h: impl Fn(Jet) -> Jet + Send + Sync + 'static) -> Self {
        let lift = self.lift.clone();
        let new: LiftFn = Arc::new(move |t| {
            let hj = h(Jet::variable(t));
            lift(t).into_iter().map(|c| c * hj).collect()
        });
        Self { lift: new, flat: false, ..self.clone() }
    }

    /// The curve G c for a fixed linear map G (a Möbius transformation when
    /// G is Lorentz).
    pub fn transformed(&self, g: &MinkEndo) -> Self {
        let lift = self.lift.clone();
        let keeps_flat = self.flat && crate::minkowski::lorentz_defect(g) < 1e-12;
        let g = g.clone();
        let dim = self.dim;
        let new: LiftFn = Arc::new(move |t| {
            let c = lift(t);
            (0..dim)
                .map(|i| {
                    let mut acc = Jet::constant(0.0);
                    for (j, cj) in c.iter().enumerate() {
                        let gij = g[(i, j)];
                        if gij != 0.0 {
                            acc = acc + *cj * gij;
                        }
                    }
                    acc
                })
                .collect()
        });
        Self { lift: new, flat: keeps_flat, ..self.clone() }
    }

    /// The same projective curve with a polarization coefficient replaced.
    pub fn with_polarization(&self, q: ScalarFn, pole_order: PoleOrder) -> Self {
        Self { q, pole_order, ..self.clone() }
    }

    /// Maximum of |‖c(t)‖²| / |c(t)|² over `samples` points of (0, b).
    pub fn lightlike_defect(&self, samples: usize) -> f64 {
        (1..=samples)
            .map(|i| {
                let t = self.domain_b * i as f64 / (samples + 1) as f64;
                let c = self.point(t);
                mink_sq(&c).abs() / c.norm_squared()
            })
            .fold(0.0, f64::max)
    }
}

/// Half ellipse (a cos θ, b_axis sin θ), θ = π t / b, on S² (n = 2), with
/// Q(t) = −1/t (first order) or 1/t² (second order). t = 0 is the end
/// (a, 0) of the half ellipse.
pub fn ellipse_polarized_curve(a: f64, b_axis: f64, pole_order: PoleOrder, domain_b: f64) -> Result<PolarizedCurve> {
    ellipse_polarized_curve_in(4, a, b_axis, pole_order, domain_b)
}

/// As [`ellipse_polarized_curve`], in Sⁿ with n = dim − 2 (the ellipse lies
/// in the first two coordinates).
pub fn ellipse_polarized_curve_in(
    dim: usize,
    a: f64,
    b_axis: f64,
    pole_order: PoleOrder,
    domain_b: f64,
) -> Result<PolarizedCurve> {
    if !(a > 0.0 && b_axis > 0.0 && a.is_finite() && b_axis.is_finite()) {
        return Err(Error::InvalidAxes { a, b: b_axis });
    }
    check_dim(dim)?;
    let q: ScalarFn = match pole_order {
        PoleOrder::Regular => Arc::new(|_| 1.0),
        PoleOrder::First => Arc::new(|t| -1.0 / t),
        PoleOrder::Second => Arc::new(|t| 1.0 / (t * t)),
    };
    let n = dim - 2;
    let k = std::f64::consts::PI / domain_b;
    PolarizedCurve::from_euclidean_curve(
        dim,
        move |t| {
            let (s, c) = (t * k).sin_cos();
            let mut x = vec![c * a, s * b_axis];
            x.resize(n, Jet::constant(0.0));
            x
        },
        q,
        domain_b,
        pole_order,
    )
}

/// Ω(t) = 𝔔(t) c(t) ∧ c′(t), the orthogonal lift of the associated 1-form.
pub fn associated_one_form(pc: &PolarizedCurve, t: f64) -> Result<MinkEndo> {
    let d = pc.derivatives(t, 1);
    let s = mink_sq(&d[1]);
    if s <= DEFAULT_TOL * d[1].norm_squared() || s <= 0.0 {
        return Err(Error::ZeroSpeed { t });
    }
    Ok(wedge(&d[0], &d[1]) * (pc.q(t) / s))
}

/// Ω as a [`OneForm`]. Evaluation at a point of zero speed yields NaNs.
pub fn associated_form(pc: &PolarizedCurve) -> OneForm {
    let pc2 = pc.clone();
    let dim = pc.dim();
    OneForm::new(dim, move |t| {
        associated_one_form(&pc2, t).unwrap_or_else(|_| DMatrix::from_element(dim, dim, f64::NAN))
    })
    .with_pole(pc.pole_order().as_u8())
}

/// The lift normalized to ‖c′‖² = 1. For a lightlike lift c,
/// ‖(h c)′‖² = h² ‖c′‖², so c/‖c′‖ is already flat.
pub fn flat_lift(pc: &PolarizedCurve) -> Result<PolarizedCurve> {
    if pc.flat {
        return Ok(pc.clone());
    }
    let b = pc.domain_b;
    for i in 1..8 {
        let t = b * i as f64 / 8.0;
        pc.qend(t)?;
    }
    let lift = pc.lift.clone();
    let new: LiftFn = Arc::new(move |t| {
        let c = lift(t);
        let dc: Vec<Jet> = c.iter().map(|x| x.derivative()).collect();
        let speed = jet_inner(&dc, &dc).sqrt().recip();
        c.into_iter().map(|x| x * speed).collect()
    });
    Ok(PolarizedCurve { lift: new, flat: true, ..pc.clone() })
}

/// Frame (c, c̄, c′, N₁, …, N_{n−1}) at a parameter t of a flat lift.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedFrame {
    pub t: f64,
    pub c: MinkVector,
    pub cbar: MinkVector,
    pub dc: MinkVector,
    pub normals: Vec<MinkVector>,
}

impl AdaptedFrame {
    /// Columns [c, c̄, c′, N…].
    pub fn matrix(&self) -> MinkEndo {
        let mut cols = vec![self.c.clone(), self.cbar.clone(), self.dc.clone()];
        cols.extend(self.normals.iter().cloned());
        DMatrix::from_columns(&cols)
    }

    /// ‖Gram − J‖ where J is the pseudo-orthonormal Gram matrix.
    pub fn gram_defect(&self) -> f64 {
        let m = self.matrix();
        (gram_matrix(&m) - pseudo_orthonormal_gram(m.ncols())).norm()
    }

    /// The Lorentz map F sending the null basis to this frame.
    pub fn to_map(&self, basis: &NullBasis) -> MinkEndo {
        self.matrix() * basis.inverse_matrix()
    }
}

/// span(c, c̄, c′): the curvature circle of the curve at the frame's point.
pub fn curvature_circle(frame: &AdaptedFrame) -> Result<CircleSubspace> {
    CircleSubspace::span(&[frame.c.clone(), frame.cbar.clone(), frame.dc.clone()])
}

// Projection of x onto span(c, c̄, c′)^⊥, with c, c̄ a null pair (⟨c,c̄⟩ = −1)
// and c′ a unit vector orthogonal to both.
fn normal_part(x: &MinkVector, c: &MinkVector, cbar: &MinkVector, dc: &MinkVector) -> MinkVector {
    x + c * mink_inner(x, cbar) + cbar * mink_inner(x, c) - dc * mink_inner(x, dc)
}

fn orthonormalize_normals(
    raw: &[MinkVector],
    c: &MinkVector,
    cbar: &MinkVector,
    dc: &MinkVector,
) -> Result<Vec<MinkVector>> {
    let mut out: Vec<MinkVector> = Vec::with_capacity(raw.len());
    for x in raw {
        let mut v = normal_part(x, c, cbar, dc);
        for u in &out {
            v -= u * mink_inner(&v, u);
        }
        let n2 = mink_sq(&v);
        if !(n2 > 1e-12) {
            return Err(Error::FrameFailure("normal fields became degenerate".into()));
        }
        out.push(v / n2.sqrt());
    }
    Ok(out)
}

/// Pointwise data of the flat lift: c, c̄, c′, c″, c̄′.
#[derive(Debug, Clone)]
struct FlatData {
    c: MinkVector,
    cbar: MinkVector,
    dc: MinkVector,
    ddc: MinkVector,
    dcbar: MinkVector,
}

fn flat_data(pc: &PolarizedCurve, t: f64) -> FlatData {
    let d = pc.derivatives(t, 3);
    let k = 0.5 * mink_sq(&d[2]);
    let cbar = &d[2] + &d[0] * k;
    // c̄′ = c‴ + ⟨c″, c‴⟩ c + ½‖c″‖² c′
    let dcbar = &d[3] + &d[0] * mink_inner(&d[2], &d[3]) + &d[1] * k;
    let mut it = d.into_iter();
    let c = it.next().unwrap();
    let dc = it.next().unwrap();
    let ddc = it.next().unwrap();
    FlatData { c, cbar, dc, ddc, dcbar }
}

const CHECKPOINTS: usize = 64;

/// Adapted frames along a flat lift. Parallel normal fields satisfy
/// N′ = ⟨N, c̄′⟩ c, i.e. N′ = (c̄′ ∧ c) N; for n > 2 they are transported
/// with the Lie-group integrator from checkpoints spaced b/64 apart, each
/// re-orthonormalized against span(c, c̄, c′). For n = 2 the unit normal is
/// determined up to sign and computed directly.
#[derive(Clone)]
pub struct FrameField {
    curve: PolarizedCurve,
    basis: NullBasis,
    basis_inv: MinkEndo,
    orientation: f64,
    checkpoints: Vec<(f64, Vec<MinkVector>)>,
    opts: StepOptions,
}

impl std::fmt::Debug for FrameField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FrameField").field("curve", &self.curve).field("checkpoints", &self.checkpoints.len()).finish()
    }
}

impl FrameField {
    /// Builds the frame field of the flat lift of `pc`, starting from a
    /// pseudo-orthonormal completion at the interior base point `p0`.
    pub fn new(pc: &PolarizedCurve, p0: f64, opts: &StepOptions) -> Result<Self> {
        let curve = flat_lift(pc)?;
        let dim = curve.dim();
        let b = curve.domain_b();
        if !(p0 > 0.0 && p0 < b) {
            return Err(Error::InvalidArgument(format!("base point {p0} outside (0, {b})")));
        }
        let basis = NullBasis::standard(dim)?;
        let basis_inv = basis.inverse_matrix();
        let d0 = flat_data(&curve, p0);
        let seeds: Vec<MinkVector> = (0..dim).map(|i| crate::minkowski::basis_vector(dim, i)).collect();
        let mut initial: Vec<MinkVector> = Vec::with_capacity(dim - 3);
        for s in &seeds {
            if initial.len() == dim - 3 {
                break;
            }
            let mut v = normal_part(s, &d0.c, &d0.cbar, &d0.dc);
            for u in &initial {
                v -= u * mink_inner(&v, u);
            }
            let n2 = mink_sq(&v);
            if n2 > 1e-6 {
                initial.push(v / n2.sqrt());
            }
        }
        if initial.len() != dim - 3 {
            return Err(Error::FrameFailure("could not complete the initial frame".into()));
        }
        let mut cols = vec![d0.c.clone(), d0.cbar.clone(), d0.dc.clone()];
        cols.extend(initial.iter().cloned());
        let orientation = DMatrix::from_columns(&cols).determinant().signum();

        let mut field = Self { curve, basis, basis_inv, orientation, checkpoints: Vec::new(), opts: *opts };
        if dim > 4 {
            field.checkpoints = field.build_checkpoints(p0, initial)?;
        }
        Ok(field)
    }

    fn transport(&self, normals: &[MinkVector], from: f64, to: f64) -> Result<Vec<MinkVector>> {
        if from == to {
            return Ok(normals.to_vec());
        }
        let curve = self.curve.clone();
        let a = move |t: f64| {
            let d = flat_data(&curve, t);
            wedge(&d.dcbar, &d.c)
        };
        let y0 = DMatrix::from_columns(normals);
        let y = integrate_linear(&a, Side::Left, y0, from, &[to], &self.opts)?.remove(0);
        let d = flat_data(&self.curve, to);
        let raw: Vec<MinkVector> = (0..y.ncols()).map(|j| y.column(j).into_owned()).collect();
        orthonormalize_normals(&raw, &d.c, &d.cbar, &d.dc)
    }

    fn build_checkpoints(&self, p0: f64, initial: Vec<MinkVector>) -> Result<Vec<(f64, Vec<MinkVector>)>> {
        let b = self.curve.domain_b();
        let grid: Vec<f64> = (0..=CHECKPOINTS).map(|j| b * j as f64 / CHECKPOINTS as f64).collect();
        let split = grid.partition_point(|&g| g < p0);
        let mut pts: Vec<(f64, Vec<MinkVector>)> = Vec::with_capacity(grid.len());
        let mut cur = (p0, initial.clone());
        let mut up = Vec::new();
        for &g in &grid[split..] {
            let n = self.transport(&cur.1, cur.0, g)?;
            cur = (g, n.clone());
            up.push((g, n));
        }
        let mut cur = (p0, initial);
        let mut down = Vec::new();
        for &g in grid[..split].iter().rev() {
            let n = self.transport(&cur.1, cur.0, g)?;
            cur = (g, n.clone());
            down.push((g, n));
        }
        down.reverse();
        pts.extend(down);
        pts.extend(up);
        Ok(pts)
    }

    pub fn curve(&self) -> &PolarizedCurve {
        &self.curve
    }

    pub fn basis(&self) -> &NullBasis {
        &self.basis
    }

    fn normals_at(&self, t: f64, d: &FlatData) -> Result<Vec<MinkVector>> {
        let dim = self.curve.dim();
        if dim == 4 {
            // The normal is the Minkowski-unit vector orthogonal to c, c̄, c′.
            let mut best: Option<MinkVector> = None;
            for i in 0..dim {
                let v = normal_part(&crate::minkowski::basis_vector(dim, i), &d.c, &d.cbar, &d.dc);
                if best.as_ref().map_or(true, |b| mink_sq(&v) > mink_sq(b)) {
                    best = Some(v);
                }
            }
            let v = best.expect("dim >= 4");
            let n2 = mink_sq(&v);
            if !(n2 > 1e-12) {
                return Err(Error::FrameFailure(format!("no unit normal at t = {t}")));
            }
            let mut n = v / n2.sqrt();
            let det = DMatrix::from_columns(&[d.c.clone(), d.cbar.clone(), d.dc.clone(), n.clone()]).determinant();
            if det.signum() != self.orientation {
                n = -n;
            }
            return Ok(vec![n]);
        }
        let b = self.curve.domain_b();
        let idx = ((t / b) * CHECKPOINTS as f64).round().clamp(0.0, CHECKPOINTS as f64) as usize;
        let (t0, n0) = &self.checkpoints[idx];
        self.transport(n0, *t0, t)
    }

    pub fn frame(&self, t: f64) -> Result<AdaptedFrame> {
        let d = flat_data(&self.curve, t);
        let normals = self.normals_at(t, &d)?;
        Ok(AdaptedFrame { t, c: d.c, cbar: d.cbar, dc: d.dc, normals })
    }

    /// F(t), F′(t) and the frame, where F maps (o, ι, 𝔱, 𝔫…) to (c, c̄, c′, N…).
    pub fn map_and_derivative(&self, t: f64) -> Result<(MinkEndo, MinkEndo, AdaptedFrame)> {
        let d = flat_data(&self.curve, t);
        let normals = self.normals_at(t, &d)?;
        let mut dcols = vec![d.dc.clone(), d.dcbar.clone(), d.ddc.clone()];
        for n in &normals {
            dcols.push(&d.c * mink_inner(n, &d.dcbar));
        }
        let frame = AdaptedFrame { t, c: d.c, cbar: d.cbar, dc: d.dc, normals };
        let f = frame.matrix() * &self.basis_inv;
        let df = DMatrix::from_columns(&dcols) * &self.basis_inv;
        Ok((f, df, frame))
    }

    /// F⁻¹F′ at t.
    pub fn maurer_cartan(&self, t: f64) -> Result<MinkEndo> {
        let (f, df, _) = self.map_and_derivative(t)?;
        Ok(mink_adjoint(&f) * df)
    }

    /// 𝓕^⊥(t) = −(⟨c̄′, c′⟩ 𝔱 + Σ ⟨c̄′, Nᵢ⟩ 𝔫ᵢ), so that
    /// F⁻¹F′ = −ι∧𝔱 + o∧𝓕^⊥.
    pub fn perp_part(&self, t: f64) -> Result<MinkVector> {
        let d = flat_data(&self.curve, t);
        let normals = self.normals_at(t, &d)?;
        let mut v = &self.basis.tangent * -mink_inner(&d.dcbar, &d.dc);
        for (n, e) in normals.iter().zip(&self.basis.normals) {
            v -= e * mink_inner(&d.dcbar, n);
        }
        Ok(v)
    }
}

/// Adapted frame at t, built with a frame field based at `p0`.
pub fn adapted_frame(pc: &PolarizedCurve, p0: f64, t: f64, opts: &StepOptions) -> Result<AdaptedFrame> {
    FrameField::new(pc, p0, opts)?.frame(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{ProjectivePoint, StereoChart};

    fn ellipse(order: PoleOrder) -> PolarizedCurve {
        ellipse_polarized_curve(1.5, 0.8, order, 1.0).unwrap()
    }

    #[test]
    fn ellipse_is_lightlike_and_polarized() {
        let pc = ellipse_polarized_curve(1.0, 1.0, PoleOrder::First, 1.0).unwrap();
        for i in 1..=50 {
            let t = i as f64 / 51.0;
            assert!(mink_sq(&pc.point(t)).abs() <= 1e-12);
        }
        assert!(pc.lightlike_defect(100) <= 1e-10);
        for k in 1..30 {
            let t = 2f64.powi(-k);
            assert!((pc.leading_coefficient(1, t) + 1.0).abs() < 1e-15);
        }
        let pc2 = ellipse(PoleOrder::Second);
        for k in 1..30 {
            let t = 2f64.powi(-k);
            assert_eq!(pc2.leading_coefficient(2, t), 1.0);
            // neighbouring orders blow up or vanish
            assert!(pc2.leading_coefficient(1, t).abs() > 1.0);
            assert!(pc2.leading_coefficient(3, t).abs() < 1.0);
        }
        assert_eq!(ellipse_polarized_curve(0.0, 1.0, PoleOrder::First, 1.0).unwrap_err(), Error::InvalidAxes { a: 0.0, b: 1.0 });
    }

    #[test]
    fn ellipse_projects_to_ellipse() {
        let pc = ellipse(PoleOrder::First);
        let chart = StereoChart::standard(4).unwrap();
        let t = 0.3;
        let x = chart.project(&ProjectivePoint::new(pc.point(t)).unwrap()).unwrap();
        let th = std::f64::consts::PI * t;
        assert!((x[0] - 1.5 * th.cos()).abs() < 1e-14);
        assert!((x[1] - 0.8 * th.sin()).abs() < 1e-14);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let pc = ellipse(PoleOrder::First);
        let t = 0.37;
        let h = 1e-5;
        let d = pc.derivatives(t, 2);
        let fd1 = (pc.point(t + h) - pc.point(t - h)) / (2.0 * h);
        let fd2 = (pc.point(t + h) - pc.point(t) * 2.0 + pc.point(t - h)) / (h * h);
        assert!((&d[1] - fd1).norm() < 1e-8);
        assert!((&d[2] - fd2).norm() < 1e-4);
    }

    #[test]
    fn one_form_is_skew_and_has_simple_pole() {
        let pc = ellipse(PoleOrder::First);
        let om = associated_one_form(&pc, 0.2).unwrap();
        assert!((mink_adjoint(&om) + &om).norm() < 1e-13 * om.norm());
        let mut prev = f64::NAN;
        let mut last_gap = f64::INFINITY;
        for k in 1..=20 {
            let t = 2f64.powi(-k);
            let v = (associated_one_form(&pc, t).unwrap() * t).norm();
            if k > 1 {
                last_gap = (v - prev).abs();
            }
            prev = v;
        }
        assert!(prev > 0.1 && last_gap < 1e-5);
    }

    #[test]
    fn flat_lift_properties() {
        let pc = ellipse(PoleOrder::Second);
        let fl = flat_lift(&pc).unwrap();
        for i in 1..=100 {
            let t = i as f64 / 101.0;
            let dc = fl.derivative(t, 1);
            assert!((mink_sq(&dc) - 1.0).abs() <= 1e-8);
            let d = crate::projective::vector_line_distance(&fl.point(t), &pc.point(t)).unwrap();
            assert!(d < 1e-14);
        }
        let twice = flat_lift(&fl.with_polarization(fl.q_fn(), PoleOrder::Second)).unwrap();
        let mut un = fl.clone();
        un.flat = false;
        let again = flat_lift(&un).unwrap();
        for t in [0.1, 0.5, 0.9] {
            assert!((twice.point(t) - fl.point(t)).norm() < 1e-10);
            assert!((again.point(t) - fl.point(t)).norm() < 1e-10);
        }
    }

    #[test]
    fn frame_is_pseudo_orthonormal_and_parallel() {
        let pc = ellipse(PoleOrder::Second);
        let ff = FrameField::new(&pc, 0.5, &StepOptions::default()).unwrap();
        for i in 0..=20 {
            let t = 0.01 + 0.98 * i as f64 / 20.0;
            let fr = ff.frame(t).unwrap();
            assert!(fr.gram_defect() < 1e-8, "gram defect at {t}");
        }
        // ⟨N′, c′⟩ = 0: differentiate numerically.
        let t = 0.3;
        let h = 1e-5;
        let np = (&ff.frame(t + h).unwrap().normals[0] - &ff.frame(t - h).unwrap().normals[0]) / (2.0 * h);
        let fr = ff.frame(t).unwrap();
        assert!(mink_inner(&np, &fr.dc).abs() < 1e-8);
    }

    fn check_maurer_cartan(ff: &FrameField, t: f64) {
        let mc = ff.maurer_cartan(t).unwrap();
        let b = ff.basis();
        let expected = -wedge(&b.iota, &b.tangent) + wedge(&b.o, &ff.perp_part(t).unwrap());
        assert!((&mc - &expected).norm() < 1e-6, "MC mismatch {:e}", (&mc - &expected).norm());
        // and F′ matches finite differences of F
        let h = 1e-5;
        let (fp, _, _) = ff.map_and_derivative(t + h).unwrap();
        let (fm, _, _) = ff.map_and_derivative(t - h).unwrap();
        let (_, df, _) = ff.map_and_derivative(t).unwrap();
        assert!(((fp - fm) / (2.0 * h) - df).norm() < 1e-6);
    }

    #[test]
    fn maurer_cartan_structure() {
        let pc = ellipse(PoleOrder::Second);
        let ff = FrameField::new(&pc, 0.5, &StepOptions::default()).unwrap();
        for t in [0.05, 0.3, 0.77] {
            check_maurer_cartan(&ff, t);
        }
    }

    #[test]
    fn higher_dimensional_frames() {
        // A space curve in S³ (twisted so the normal bundle rotates).
        let q: ScalarFn = Arc::new(|t| 1.0 / (t * t));
        let pc = PolarizedCurve::from_euclidean_curve(
            6,
            |t| {
                let (s, c) = t.sin_cos();
                vec![c * 1.2, s * 0.7, t * t * 0.3, (t * 2.0).sin() * 0.2]
            },
            q,
            1.0,
            PoleOrder::Second,
        )
        .unwrap();
        let ff = FrameField::new(&pc, 0.4, &StepOptions::default()).unwrap();
        for t in [0.0, 0.013, 0.2, 0.61, 0.99] {
            let fr = ff.frame(t).unwrap();
            assert!(fr.gram_defect() < 1e-7, "drift {:e} at {t}", fr.gram_defect());
        }
        for t in [0.02, 0.45, 0.8] {
            check_maurer_cartan(&ff, t);
        }
    }

    #[test]
    fn curvature_circle_of_plane_ellipse_is_osculating() {
        let (a, bax) = (1.5, 0.8);
        let pc = ellipse(PoleOrder::Second);
        let ff = FrameField::new(&pc, 0.5, &StepOptions::default()).unwrap();
        let chart = StereoChart::standard(4).unwrap();
        for t in [0.15, 0.4, 0.7] {
            let fr = ff.frame(t).unwrap();
            let circ = curvature_circle(&fr).unwrap();
            assert!(circ.is_circle());
            assert!(circ.distance(&fr.c).unwrap() < 1e-14);
            assert!((circ.distance(&fr.normals[0]).unwrap() - 1.0).abs() < 1e-12);
            // three points of the circle, projected
            let pts: Vec<DVector<f64>> = [0.0, 0.7, -1.3]
                .iter()
                .map(|&s| {
                    let v = &fr.c + &fr.dc * s + &fr.cbar * (0.5 * s * s);
                    chart.project(&ProjectivePoint::new(v).unwrap()).unwrap()
                })
                .collect();
            let (cx, cy, r) = circumcircle(&pts[0], &pts[1], &pts[2]);
            let th = std::f64::consts::PI * t;
            let (s, c) = th.sin_cos();
            let kappa = a * bax / (a * a * s * s + bax * bax * c * c).powf(1.5);
            let (px, py) = (a * c, bax * s);
            let (tx, ty) = (-a * s, bax * c);
            let tn = (tx * tx + ty * ty).sqrt();
            let (nx, ny) = (-ty / tn, tx / tn);
            let (ex, ey) = (px + nx / kappa, py + ny / kappa);
            assert!((r - 1.0 / kappa).abs() < 1e-9, "radius at {t}");
            assert!((cx - ex).abs() < 1e-9 && (cy - ey).abs() < 1e-9);
        }
    }

    fn circumcircle(p: &DVector<f64>, q: &DVector<f64>, r: &DVector<f64>) -> (f64, f64, f64) {
        let (ax, ay, bx, by, cx, cy) = (p[0], p[1], q[0], q[1], r[0], r[1]);
        let d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        let a2 = ax * ax + ay * ay;
        let b2 = bx * bx + by * by;
        let c2 = cx * cx + cy * cy;
        let ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
        let uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
        (ux, uy, ((ax - ux).powi(2) + (ay - uy).powi(2)).sqrt())
    }
}
