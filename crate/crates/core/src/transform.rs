//! Darboux and Calapso transforms of polarized curves, and their behaviour
//! at the end point t = 0 where the polarization has a pole.
//!
//! For a first-order pole the associated form λΩ is integrated directly in
//! the log chart. For a second-order pole the curve is first gauged by the
//! singular frame g = F R, which lowers the pole order to one; transforms
//! are then recovered from Γ_p^t(λΩ) = g(p) Γ_p^t(g⋉λΩ) g(t)⁻¹.

use nalgebra::DMatrix;

use crate::curve::{associated_form, curvature_circle, flat_lift, FrameField, PoleOrder, PolarizedCurve};
use crate::error::{Error, Result};
use crate::minkowski::{
    mink_adjoint, mink_inner, mink_sq, plane_signature, rank_one, wedge, MinkEndo, MinkVector, NullBasis,
    PlaneSignature, DEFAULT_TOL,
};
use crate::poleform::{
    classify_pure_pole_form, pure_primitive_closed_form, PoleForm, PoleFormData, PurePoleForm,
};
use crate::primitive::{inverse_primitive_track, primitive_track, Chart, Gauge, OneForm, StepOptions};
use crate::projective::{vector_line_distance, CircleSubspace, ProjectivePoint};

/// Sampling and verdict thresholds for limit reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformOptions {
    /// Samples are taken at t_k = p 2⁻ᵏ, k = 0..=k_max.
    pub k_max: u32,
    pub limit_tol: f64,
    pub cauchy_tol: f64,
    /// Initial points closer than this to the limit circle count as on it.
    pub circle_tol: f64,
    pub cluster_radius: f64,
    pub step: StepOptions,
}

impl Default for TransformOptions {
    fn default() -> Self {
        Self { k_max: 22, limit_tol: 1e-3, cauchy_tol: 1e-4, circle_tol: 1e-6, cluster_radius: 0.05, step: StepOptions::default() }
    }
}

impl TransformOptions {
    pub fn sample_times(&self, p: f64) -> Vec<f64> {
        (0..=self.k_max).map(|k| p * 2f64.powi(-(k as i32))).collect()
    }
}

/// Gap above which consecutive samples count as "not Cauchy".
pub const NON_CAUCHY_GAP: f64 = 0.1;

fn line_dist(a: &MinkVector, b: &MinkVector) -> f64 {
    vector_line_distance(a, b).unwrap_or(f64::NAN)
}

/// lim tᵏ Q(t) for a pole of order k, by Richardson extrapolation of tᵏQ
/// at t = b 2⁻³⁰ and b 2⁻³¹.
pub fn pole_residue(pc: &PolarizedCurve) -> Result<f64> {
    let k = pc.pole_order().as_u8() as i32;
    if k == 0 {
        return Err(Error::InvalidArgument("curve has no pole at 0".into()));
    }
    let t1 = pc.domain_b() * 2f64.powi(-30);
    let t2 = t1 / 2.0;
    let f1 = t1.powi(k) * pc.q(t1);
    let f2 = t2.powi(k) * pc.q(t2);
    let r = 2.0 * f2 - f1;
    if !r.is_finite() || r == 0.0 {
        return Err(Error::InvalidArgument("polarization has no pole of the stated order".into()));
    }
    Ok(r)
}

/// λΩ for a first-order pole as a pole form with pure part
/// −(1/t) c(0)∧(−λ r c′(0)) on the flat lift, r = lim tQ.
pub fn first_order_pole_form(pc: &PolarizedCurve, lambda: f64) -> Result<PoleForm> {
    if pc.pole_order() != PoleOrder::First {
        return Err(Error::InvalidArgument("first-order pole form needs pole_order = 1".into()));
    }
    let flat = flat_lift(pc)?;
    let r = pole_residue(pc)?;
    let d = flat.derivatives(0.0, 1);
    let pure = PurePoleForm::new(d[0].clone(), &d[1] * (-lambda * r))?;
    PoleForm::new(associated_form(pc).scaled(lambda), pure, pc.domain_b() / 2.0)
}

// ---------------------------------------------------------------------------
// Singular gauge

/// R(t): o ↦ o/t, ι ↦ tι, identity on span(o, ι)^⊥.
pub fn r_map(basis: &NullBasis, t: f64) -> MinkEndo {
    let n = basis.dim();
    DMatrix::identity(n, n) - rank_one(&basis.o, &basis.iota) * (1.0 / t - 1.0) - rank_one(&basis.iota, &basis.o) * (t - 1.0)
}

fn r_map_derivative(basis: &NullBasis, t: f64) -> MinkEndo {
    rank_one(&basis.o, &basis.iota) * (1.0 / (t * t)) - rank_one(&basis.iota, &basis.o)
}

/// The singular frame g = F R of a curve with a second-order pole.
#[derive(Debug, Clone)]
pub struct SingularGauge {
    field: FrameField,
    residue: f64,
}

impl SingularGauge {
    pub fn frame_field(&self) -> &FrameField {
        &self.field
    }

    pub fn basis(&self) -> &NullBasis {
        self.field.basis()
    }

    /// lim t² Q(t).
    pub fn residue(&self) -> f64 {
        self.residue
    }

    pub fn r(&self, t: f64) -> MinkEndo {
        r_map(self.basis(), t)
    }

    pub fn frame_map(&self, t: f64) -> Result<MinkEndo> {
        Ok(self.field.map_and_derivative(t)?.0)
    }

    pub fn g(&self, t: f64) -> Result<MinkEndo> {
        Ok(self.frame_map(t)? * self.r(t))
    }

    /// g(t)⁻¹ as the Minkowski adjoint.
    pub fn g_inv(&self, t: f64) -> Result<MinkEndo> {
        Ok(mink_adjoint(&self.g(t)?))
    }

    /// g′ = F′R + FR′.
    pub fn dg(&self, t: f64) -> Result<MinkEndo> {
        let (f, df, _) = self.field.map_and_derivative(t)?;
        let b = self.basis();
        Ok(df * r_map(b, t) + f * r_map_derivative(b, t))
    }

    /// The gauge as a [`Gauge`] for the generic gauge transformation.
    /// Failures evaluate to NaN.
    pub fn as_gauge(&self) -> Gauge {
        let dim = self.basis().dim();
        let nan = move || DMatrix::from_element(dim, dim, f64::NAN);
        let s1 = self.clone();
        let s2 = self.clone();
        Gauge {
            g: std::sync::Arc::new(move |t| s1.g(t).unwrap_or_else(|_| nan())),
            dg: std::sync::Arc::new(move |t| s2.dg(t).unwrap_or_else(|_| nan())),
            lorentz: true,
        }
    }
}

/// Builds g = F R from the adapted frame of the flat lift.
pub fn build_singular_gauge(pc: &PolarizedCurve, opts: &StepOptions) -> Result<SingularGauge> {
    if pc.pole_order() != PoleOrder::Second {
        return Err(Error::InvalidArgument("singular gauge needs pole_order = 2".into()));
    }
    let residue = pole_residue(pc)?;
    let field = FrameField::new(pc, pc.domain_b() / 2.0, opts)?;
    Ok(SingularGauge { field, residue })
}

/// g⋉(λΩ) in closed form on the adapted frame:
/// λtQ o∧𝔱 − (1/t) ι∧𝔱 − (1/t) o∧ι + t o∧𝓕^⊥.
pub fn gauged_one_form(gauge: &SingularGauge, lambda: f64) -> OneForm {
    let b = gauge.basis().clone();
    let field = gauge.field.clone();
    let q = field.curve().q_fn();
    let dim = b.dim();
    let ot = wedge(&b.o, &b.tangent);
    let it = wedge(&b.iota, &b.tangent);
    let oi = wedge(&b.o, &b.iota);
    OneForm::new(dim, move |t| {
        let perp = match field.perp_part(t) {
            Ok(v) => v,
            Err(_) => return DMatrix::from_element(dim, dim, f64::NAN),
        };
        &ot * (lambda * t * q(t)) - (&it + &oi) * (1.0 / t) + wedge(&b.o, &perp) * t
    })
    .with_pole(1)
}

/// The gauged form as a pole form with pure part ξ = −(1/t)(o − 𝔱)∧(ι − λr𝔱);
/// the remainder is certified to be O(t).
pub fn gauged_form(gauge: &SingularGauge, lambda: f64) -> Result<PoleForm> {
    let b = gauge.basis();
    let lr = lambda * gauge.residue();
    let pure = PurePoleForm::new(&b.o - &b.tangent, &b.iota - &b.tangent * lr)?;
    let data = xi_lambda_data(b, lr)?;
    PoleForm::with_data(gauged_one_form(gauge, lambda), pure, data, gauge.field.curve().domain_b() / 2.0, 1)
}

/// Which reading of the eigenvector formula was tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateReading {
    /// v± = √(1−2λ)(λo − ι) ± (λo + ι − 2λ𝔱).
    LambdaO,
    /// The same formula with o in place of λo.
    PlainO,
}

/// Eigenvector candidates (a u, vv) with v± = a u ± vv, a = √|1−2λ|.
pub fn eigen_candidates(basis: &NullBasis, lambda: f64, reading: CandidateReading) -> (MinkVector, MinkVector) {
    let lo = match reading {
        CandidateReading::LambdaO => &basis.o * lambda,
        CandidateReading::PlainO => basis.o.clone(),
    };
    let a = (1.0 - 2.0 * lambda).abs().sqrt();
    let u = (&lo - &basis.iota) * a;
    let vv = &lo + &basis.iota - &basis.tangent * (2.0 * lambda);
    (u, vv)
}

/// Relative eigen-residual of the candidates against (o−𝔱)∧(ι−λ𝔱). In the
/// real case a u ± vv must have eigenvalues ±a; in the complex case
/// vv + i a u must have eigenvalue i a, i.e. X vv = −a (a u), X (a u) = a vv.
pub fn candidate_residual(basis: &NullBasis, lambda: f64, reading: CandidateReading) -> f64 {
    let x = wedge(&(&basis.o - &basis.tangent), &(&basis.iota - &basis.tangent * lambda));
    let (au, vv) = eigen_candidates(basis, lambda, reading);
    let a = (1.0 - 2.0 * lambda).abs().sqrt();
    let scale = x.norm() * (au.norm() + vv.norm());
    if 1.0 - 2.0 * lambda > 0.0 {
        let vp = &au + &vv;
        let vm = &au - &vv;
        let r1 = (&x * &vp - &vp * a).norm();
        let r2 = (&x * &vm + &vm * a).norm();
        r1.max(r2) / scale
    } else {
        let r1 = (&x * &vv + &au * a).norm();
        let r2 = (&x * &au - &vv * a).norm();
        r1.max(r2) / scale
    }
}

/// Tolerance on the candidate eigen-residual.
pub const CANDIDATE_TOL: f64 = 1e-10;

/// Verified candidate eigenvectors for ξ_λ, or `EigenResidualTooLarge`.
pub fn verified_candidates(basis: &NullBasis, lambda: f64, reading: CandidateReading) -> Result<(MinkVector, MinkVector)> {
    let residual = candidate_residual(basis, lambda, reading);
    if !(residual <= CANDIDATE_TOL) {
        return Err(Error::EigenResidualTooLarge { residual });
    }
    Ok(eigen_candidates(basis, lambda, reading))
}

fn unit_first_positive(x: &MinkVector) -> MinkVector {
    let mut y = x / x.norm();
    if let Some(&c) = y.iter().find(|c| c.abs() > 1e-12) {
        if c < 0.0 {
            y = -y;
        }
    }
    y
}

/// Classification of ξ_λ = −(1/t)(o−𝔱)∧(ι−λ𝔱). Minkowski eigenvectors come
/// from the verified closed-form candidates when they pass the residual
/// check, otherwise from the generic solver.
pub fn xi_lambda_data(basis: &NullBasis, lambda: f64) -> Result<PoleFormData> {
    let xi = PurePoleForm::new(&basis.o - &basis.tangent, &basis.iota - &basis.tangent * lambda)?;
    let generic = classify_pure_pole_form(&xi, DEFAULT_TOL)?;
    let disc = 1.0 - 2.0 * lambda;
    if disc <= DEFAULT_TOL {
        return Ok(generic);
    }
    for reading in [CandidateReading::LambdaO, CandidateReading::PlainO] {
        if let Ok((au, vv)) = verified_candidates(basis, lambda, reading) {
            let zeta = disc.sqrt();
            let vp = unit_first_positive(&(&au + &vv));
            let vm0 = unit_first_positive(&(&au - &vv));
            let vm = &vm0 * (zeta / mink_inner(&vp, &vm0));
            return Ok(PoleFormData { zeta, v_plus: Some(vp), v_minus: Some(vm), first_kind: zeta < 1.0, ..generic });
        }
    }
    Ok(generic)
}

// ---------------------------------------------------------------------------
// Transforms

/// Runs `run` on the parameters below p (descending) and above p
/// (ascending) and returns results in the order of `ts`.
fn split_track<T: Clone>(p: f64, ts: &[f64], mut run: impl FnMut(&[f64]) -> Result<Vec<T>>) -> Result<Vec<T>> {
    let mut below: Vec<(usize, f64)> = ts.iter().cloned().enumerate().filter(|&(_, t)| t <= p).collect();
    let mut above: Vec<(usize, f64)> = ts.iter().cloned().enumerate().filter(|&(_, t)| t > p).collect();
    below.sort_by(|a, b| b.1.total_cmp(&a.1));
    above.sort_by(|a, b| a.1.total_cmp(&b.1));
    let mut out: Vec<Option<T>> = vec![None; ts.len()];
    for part in [below, above] {
        if part.is_empty() {
            continue;
        }
        let list: Vec<f64> = part.iter().map(|x| x.1).collect();
        for ((i, _), v) in part.iter().zip(run(&list)?) {
            out[*i] = Some(v);
        }
    }
    Ok(out.into_iter().map(|v| v.expect("every parameter is covered")).collect())
}

#[derive(Clone)]
enum Route {
    Direct(OneForm),
    Gauged { gauge: SingularGauge, eta: OneForm },
}

impl Route {
    fn new(pc: &PolarizedCurve, lambda: f64, opts: &StepOptions) -> Result<Self> {
        if pc.pole_order() == PoleOrder::Second && lambda != 0.0 {
            let gauge = build_singular_gauge(pc, opts)?;
            let eta = gauged_one_form(&gauge, lambda);
            Ok(Route::Gauged { gauge, eta })
        } else {
            Ok(Route::Direct(associated_form(pc).scaled(lambda)))
        }
    }

    /// M(t) with ĉ(t) = M(t) ĉ_p.
    fn darboux_maps(&self, p: f64, ts: &[f64], opts: &StepOptions) -> Result<Vec<MinkEndo>> {
        match self {
            Route::Direct(form) => split_track(p, ts, |l| inverse_primitive_track(form, p, l, Chart::Log, opts)),
            Route::Gauged { gauge, eta } => {
                let ginv_p = gauge.g_inv(p)?;
                let inv = split_track(p, ts, |l| inverse_primitive_track(eta, p, l, Chart::Log, opts))?;
                inv.into_iter().zip(ts).map(|(m, &t)| Ok(gauge.g(t)? * m * &ginv_p)).collect()
            }
        }
    }

    fn calapso_reps(&self, pc: &PolarizedCurve, p: f64, ts: &[f64], opts: &StepOptions) -> Result<Vec<MinkVector>> {
        match self {
            Route::Direct(form) => {
                let gam = split_track(p, ts, |l| primitive_track(form, p, l, Chart::Log, opts))?;
                Ok(gam.into_iter().zip(ts).map(|(m, &t)| m * pc.point(t)).collect())
            }
            Route::Gauged { gauge, eta } => {
                // g(t)⁻¹ c(t) = t o on the flat lift.
                let gp = gauge.g(p)?;
                let o = gauge.basis().o.clone();
                let gam = split_track(p, ts, |l| primitive_track(eta, p, l, Chart::Log, opts))?;
                Ok(gam.into_iter().map(|m| &gp * (m * &o)).collect())
            }
        }
    }
}

fn check_param(pc: &PolarizedCurve, t: f64, what: &str) -> Result<()> {
    let b = pc.domain_b();
    if !(t > 0.0 && t < b) {
        return Err(Error::InvalidArgument(format!("{what} = {t} outside (0, {b})")));
    }
    Ok(())
}

/// A λ-Darboux transform t ↦ Γ_t^p(λΩ) ĉ_p.
#[derive(Clone)]
pub struct DarbouxTransform {
    pc: PolarizedCurve,
    lambda: f64,
    p: f64,
    initial: ProjectivePoint,
    route: Route,
    opts: StepOptions,
}

impl DarbouxTransform {
    pub fn new(pc: &PolarizedCurve, lambda: f64, p: f64, initial: &ProjectivePoint, opts: &StepOptions) -> Result<Self> {
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::InvalidArgument("Darboux transforms need λ ≠ 0".into()));
        }
        check_param(pc, p, "p")?;
        if !initial.is_lightlike(DEFAULT_TOL) {
            return Err(Error::InvalidArgument("initial point is not lightlike".into()));
        }
        let route = Route::new(pc, lambda, opts)?;
        Ok(Self { pc: pc.clone(), lambda, p, initial: initial.clone(), route, opts: *opts })
    }

    pub fn curve(&self) -> &PolarizedCurve {
        &self.pc
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> f64 {
        self.p
    }

    pub fn initial(&self) -> &ProjectivePoint {
        &self.initial
    }

    /// Representatives Γ_t^p(λΩ) ĉ_p (lift fixed by the given ĉ_p).
    pub fn track_reps(&self, ts: &[f64]) -> Result<Vec<MinkVector>> {
        for &t in ts {
            check_param(&self.pc, t, "t")?;
        }
        let maps = self.route.darboux_maps(self.p, ts, &self.opts)?;
        Ok(maps.into_iter().map(|m| m * self.initial.rep()).collect())
    }

    pub fn track(&self, ts: &[f64]) -> Result<Vec<ProjectivePoint>> {
        self.track_reps(ts)?.into_iter().map(ProjectivePoint::new).collect()
    }

    pub fn eval(&self, t: f64) -> Result<ProjectivePoint> {
        Ok(self.track(&[t])?.remove(0))
    }
}

/// A λ-Calapso transform t ↦ Γ_p^t(λΩ) c(t), normalized at p.
#[derive(Clone)]
pub struct CalapsoTransform {
    pc: PolarizedCurve,
    lambda: f64,
    p: f64,
    route: Route,
    opts: StepOptions,
}

impl CalapsoTransform {
    pub fn new(pc: &PolarizedCurve, lambda: f64, p: f64, opts: &StepOptions) -> Result<Self> {
        if !lambda.is_finite() {
            return Err(Error::InvalidArgument("λ must be finite".into()));
        }
        check_param(pc, p, "p")?;
        let route = Route::new(pc, lambda, opts)?;
        Ok(Self { pc: pc.clone(), lambda, p, route, opts: *opts })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn base(&self) -> f64 {
        self.p
    }

    pub fn track_reps(&self, ts: &[f64]) -> Result<Vec<MinkVector>> {
        for &t in ts {
            check_param(&self.pc, t, "t")?;
        }
        self.route.calapso_reps(&self.pc, self.p, ts, &self.opts)
    }

    pub fn track(&self, ts: &[f64]) -> Result<Vec<ProjectivePoint>> {
        self.track_reps(ts)?.into_iter().map(ProjectivePoint::new).collect()
    }

    pub fn eval(&self, t: f64) -> Result<ProjectivePoint> {
        Ok(self.track(&[t])?.remove(0))
    }
}

/// ⟨Γ_t^p(λΩ) ĉ_p⟩.
pub fn darboux(
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    initial: &ProjectivePoint,
    t: f64,
    opts: &StepOptions,
) -> Result<ProjectivePoint> {
    DarbouxTransform::new(pc, lambda, p, initial, opts)?.eval(t)
}

/// ⟨Γ_p^t(λΩ) c(t)⟩.
pub fn calapso(pc: &PolarizedCurve, lambda: f64, p: f64, t: f64, opts: &StepOptions) -> Result<ProjectivePoint> {
    CalapsoTransform::new(pc, lambda, p, opts)?.eval(t)
}

// ---------------------------------------------------------------------------
// Limit circle (spacelike regime 1 − 2λ < 0)

/// Data of the spacelike regime at a base point p: the bounded gauged form
/// Φ = ξ⋉_p(g⋉λΩ) integrated upward from t_min ≈ 0.
#[derive(Clone)]
pub struct SpacelikeRegime {
    pub gauge: SingularGauge,
    pub pole_form: PoleForm,
    pub lambda: f64,
    pub p: f64,
    pub t_min: f64,
    phi: OneForm,
    opts: StepOptions,
    /// Γ_{t_min}^p(Φ).
    u_p: MinkEndo,
}

/// t_min / p for the upward integration of Φ.
pub const T_MIN_RATIO: f64 = 1e-16;

impl SpacelikeRegime {
    pub fn new(pc: &PolarizedCurve, lambda: f64, p: f64, opts: &StepOptions) -> Result<Self> {
        check_param(pc, p, "p")?;
        let gauge = build_singular_gauge(pc, opts)?;
        let lr = lambda * gauge.residue();
        if 1.0 - 2.0 * lr >= -DEFAULT_TOL {
            return Err(Error::NotSpacelikeRegime { lambda });
        }
        let pole_form = gauged_form(&gauge, lambda)?;
        let phi = pole_form.bounded_gauged_form(p);
        let t_min = p * T_MIN_RATIO;
        let u_p = primitive_track(&phi, t_min, &[p], Chart::Log, opts)?.remove(0);
        Ok(Self { gauge, pole_form, lambda, p, t_min, phi, opts: *opts, u_p })
    }

    /// Γ_{t_min}^t(Φ) for an ascending list of t ≥ t_min.
    pub fn upward(&self, ts: &[f64]) -> Result<Vec<MinkEndo>> {
        primitive_track(&self.phi, self.t_min, ts, Chart::Log, &self.opts)
    }

    /// Γ_p^0(Φ), approximated by Γ_p^{t_min}(Φ).
    pub fn bounded_limit(&self) -> MinkEndo {
        mink_adjoint(&self.u_p)
    }

    /// Gap between Γ_p^{t_min}(Φ) and the estimate started at 100 t_min.
    pub fn limit_cauchy_gap(&self) -> Result<f64> {
        let alt = primitive_track(&self.phi, self.t_min * 100.0, &[self.p], Chart::Log, &self.opts)?.remove(0);
        Ok((&alt - &self.u_p).norm() / self.u_p.norm())
    }

    /// g(p) Γ_p^0(Φ), mapping span(o, ι, 𝔱) onto the limit circle.
    pub fn circle_map(&self) -> Result<MinkEndo> {
        Ok(self.gauge.g(self.p)? * self.bounded_limit())
    }

    pub fn limit_circle(&self) -> Result<CircleSubspace> {
        let m = self.circle_map()?;
        let b = self.gauge.basis();
        CircleSubspace::span(&[&m * &b.o, &m * &b.iota, &m * &b.tangent])
    }

    /// The point of the limit circle with parameter s, image of
    /// o + s𝔱 + (s²/2)ι; s = ∞ gives the image of ι.
    pub fn circle_point(&self, s: f64) -> Result<ProjectivePoint> {
        let w = self.w_of(s);
        ProjectivePoint::new(self.circle_map()? * w)
    }

    fn w_of(&self, s: f64) -> MinkVector {
        let b = self.gauge.basis();
        if s.is_infinite() {
            b.iota.clone()
        } else {
            &b.o + &b.tangent * s + &b.iota * (s * s / 2.0)
        }
    }

    /// Preimage W ∈ span(o, ι, 𝔱) of a point of the limit circle.
    pub fn circle_preimage(&self, point: &ProjectivePoint) -> Result<MinkVector> {
        let minv = mink_adjoint(&self.circle_map()?);
        let y = minv * point.rep();
        let b = self.gauge.basis();
        let co = -mink_inner(&y, &b.iota);
        let ci = -mink_inner(&y, &b.o);
        let ct = mink_inner(&y, &b.tangent);
        Ok(&b.o * co + &b.iota * ci + &b.tangent * ct)
    }

    /// The pure rotation Γ_t^p(ξ).
    pub fn pure_inverse(&self, t: f64) -> Result<MinkEndo> {
        pure_primitive_closed_form(&self.pole_form.data, t, self.p)
    }

    /// x(t) = Γ_t^p(ξ) Γ_t^0(Φ) W for an ascending list of t, so that the
    /// exceptional Darboux transform through g(p)Γ_p^0(Φ)W is ⟨g(t) x(t)⟩.
    pub fn exceptional_frame_reps(&self, w: &MinkVector, ts: &[f64]) -> Result<Vec<MinkVector>> {
        let us = self.upward(ts)?;
        us.into_iter()
            .zip(ts)
            .map(|(u, &t)| Ok(self.pure_inverse(t)? * (mink_adjoint(&u) * w)))
            .collect()
    }

    /// The exceptional Darboux transform ⟨g(t) x(t)⟩ at ascending t.
    pub fn exceptional_darboux_reps(&self, w: &MinkVector, ts: &[f64]) -> Result<Vec<MinkVector>> {
        let xs = self.exceptional_frame_reps(w, ts)?;
        xs.into_iter().zip(ts).map(|(x, &t)| Ok(self.gauge.g(t)? * x)).collect()
    }

    /// Rotation angle of Γ_p^t(ξ) read off from a representative y of
    /// Γ_p^t(ξ)⟨o⟩ (up to scale).
    pub fn rotation_angle(&self, y: &MinkVector) -> f64 {
        let b = self.gauge.basis();
        let lr = self.lambda * self.gauge.residue();
        let x = &self.pole_form.data.generator;
        let zeta = self.pole_form.data.zeta;
        let plane = [&b.o - &b.tangent, &b.iota - &b.tangent * lr];
        let proj = |v: &MinkVector| plane_projection(&plane, v);
        let o_p = proj(&b.o);
        let o_perp = &b.o - &o_p;
        let y_p = proj(y);
        let y_perp = y - &y_p;
        let mu = mink_inner(&y_perp, &o_perp) / mink_sq(&o_perp);
        let e1 = &o_p / mink_sq(&o_p).sqrt();
        let e2 = (x * &e1) / zeta;
        let yp = y_p / mu;
        mink_inner(&yp, &e2).atan2(mink_inner(&yp, &e1))
    }
}

// Minkowski-orthogonal projection onto a nondegenerate plane.
fn plane_projection(plane: &[MinkVector; 2], v: &MinkVector) -> MinkVector {
    let a = mink_sq(&plane[0]);
    let b = mink_inner(&plane[0], &plane[1]);
    let c = mink_sq(&plane[1]);
    let det = a * c - b * b;
    let r0 = mink_inner(&plane[0], v);
    let r1 = mink_inner(&plane[1], v);
    let x0 = (c * r0 - b * r1) / det;
    let x1 = (a * r1 - b * r0) / det;
    &plane[0] * x0 + &plane[1] * x1
}

/// The limit circle of the λ-Calapso transform normalized at p
/// (second-order pole, 1 − 2λ < 0).
pub fn limit_circle_calapso(pc: &PolarizedCurve, lambda: f64, p: f64, opts: &TransformOptions) -> Result<CircleSubspace> {
    let regime = SpacelikeRegime::new(pc, lambda, p, &opts.step)?;
    if regime.limit_cauchy_gap()? > opts.cauchy_tol {
        return Err(Error::NoLimit);
    }
    regime.limit_circle()
}

// ---------------------------------------------------------------------------
// Limit reports

/// Per-track verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConvergesToC0,
    Converges,
    NonconvergentRotating,
    NoLimitSpacelike,
    Failed,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ConvergesToC0 => "CONVERGES_TO_C0",
            Verdict::Converges => "CONVERGES",
            Verdict::NonconvergentRotating => "NONCONVERGENT_ROTATING",
            Verdict::NoLimitSpacelike => "NO_LIMIT_SPACELIKE",
            Verdict::Failed => "FAILED",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackKind {
    Darboux,
    Calapso,
}

impl TrackKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TrackKind::Darboux => "darboux",
            TrackKind::Calapso => "calapso",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    /// Euclidean-unit representative.
    pub point: MinkVector,
    pub distance_to_c0: f64,
    pub distance_to_circle: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct Track {
    pub id: usize,
    pub kind: TrackKind,
    pub lambda: f64,
    pub initial: Option<MinkVector>,
    pub on_limit_circle: bool,
    /// Samples at t_k = p 2⁻ᵏ, k = 0..=k_max.
    pub samples: Vec<Sample>,
    /// Extra samples at local minima of the o-coefficient (rotating tracks).
    pub extra_samples: Vec<Sample>,
    /// Projective distances between consecutive samples.
    pub gaps: Vec<f64>,
    /// Cluster representatives of the late samples.
    pub clusters: Vec<MinkVector>,
    /// Rotation rate |Δangle / Δ ln t| (spacelike Calapso tracks).
    pub rotation_rate: Option<f64>,
    pub verdict: Verdict,
    pub note: String,
}

impl Track {
    fn empty(id: usize, kind: TrackKind, lambda: f64, initial: Option<MinkVector>) -> Self {
        Self {
            id,
            kind,
            lambda,
            initial,
            on_limit_circle: false,
            samples: Vec::new(),
            extra_samples: Vec::new(),
            gaps: Vec::new(),
            clusters: Vec::new(),
            rotation_rate: None,
            verdict: Verdict::Failed,
            note: String::new(),
        }
    }

    fn failed(mut self, msg: impl Into<String>) -> Self {
        self.verdict = Verdict::Failed;
        self.note = msg.into();
        self
    }

    pub fn final_distance(&self) -> Option<f64> {
        self.samples.last().map(|s| s.distance_to_c0)
    }

    pub fn final_gap(&self) -> Option<f64> {
        self.gaps.last().copied()
    }

    pub fn limit_estimate(&self) -> Option<&MinkVector> {
        self.samples.last().map(|s| &s.point)
    }
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub pole_order: PoleOrder,
    pub lambda: f64,
    pub p: f64,
    pub c0: MinkVector,
    pub cbar0: Option<MinkVector>,
    pub curvature_circle0: Option<CircleSubspace>,
    pub limit_circle: Option<CircleSubspace>,
    pub tracks: Vec<Track>,
}

/// Last `n` values nonincreasing up to rounding.
pub fn tail_nonincreasing(d: &[f64], n: usize) -> bool {
    if d.len() < n {
        return false;
    }
    d[d.len() - n..].windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9) + 1e-15)
}

pub fn consecutive_gaps(points: &[MinkVector]) -> Vec<f64> {
    points.windows(2).map(|w| line_dist(&w[0], &w[1])).collect()
}

/// Greedy clustering by projective distance; returns cluster centers.
pub fn cluster_points(points: &[MinkVector], radius: f64) -> Vec<MinkVector> {
    let mut centers: Vec<MinkVector> = Vec::new();
    for p in points {
        if !centers.iter().any(|c| line_dist(c, p) <= radius) {
            centers.push(p.clone());
        }
    }
    centers
}

fn make_samples(ts: &[f64], reps: Vec<MinkVector>, c0: &MinkVector, circle: Option<&CircleSubspace>) -> Vec<Sample> {
    ts.iter()
        .zip(reps)
        .map(|(&t, r)| {
            let point = &r / r.norm();
            Sample {
                t,
                distance_to_c0: line_dist(&point, c0),
                distance_to_circle: circle.map(|c| c.distance(&point).unwrap_or(f64::NAN)),
                point,
            }
        })
        .collect()
}

fn converge_to_c0(mut track: Track, opts: &TransformOptions) -> Track {
    let d: Vec<f64> = track.samples.iter().map(|s| s.distance_to_c0).collect();
    let last = *d.last().unwrap_or(&f64::NAN);
    track.gaps = consecutive_gaps(&track.samples.iter().map(|s| s.point.clone()).collect::<Vec<_>>());
    if !(last <= opts.limit_tol) {
        return track.failed(format!("final distance to c(0) {last:.3e} exceeds {:.1e}", opts.limit_tol));
    }
    if !tail_nonincreasing(&d, 5) {
        return track.failed("distance tail is not nonincreasing");
    }
    track.verdict = Verdict::ConvergesToC0;
    track
}

fn cauchy(mut track: Track, opts: &TransformOptions) -> Track {
    track.gaps = consecutive_gaps(&track.samples.iter().map(|s| s.point.clone()).collect::<Vec<_>>());
    let g = track.final_gap().unwrap_or(f64::NAN);
    if !(g <= opts.cauchy_tol) {
        return track.failed(format!("final Cauchy gap {g:.3e} exceeds {:.1e}", opts.cauchy_tol));
    }
    track.verdict = Verdict::Converges;
    track
}

fn darboux_direct_track(
    id: usize,
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    initial: &ProjectivePoint,
    c0: &MinkVector,
    circle: Option<&CircleSubspace>,
    opts: &TransformOptions,
) -> Track {
    let track = Track::empty(id, TrackKind::Darboux, lambda, Some(initial.normalized()));
    let ts = opts.sample_times(p);
    match DarbouxTransform::new(pc, lambda, p, initial, &opts.step).and_then(|d| d.track_reps(&ts)) {
        Ok(reps) => {
            let track = Track { samples: make_samples(&ts, reps, c0, circle), ..track };
            converge_to_c0(track, opts)
        }
        Err(e) => track.failed(e.to_string()),
    }
}

fn calapso_track(
    id: usize,
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    c0: &MinkVector,
    circle: Option<&CircleSubspace>,
    opts: &TransformOptions,
) -> std::result::Result<Track, Track> {
    let track = Track::empty(id, TrackKind::Calapso, lambda, None);
    let ts = opts.sample_times(p);
    match CalapsoTransform::new(pc, lambda, p, &opts.step).and_then(|c| c.track_reps(&ts)) {
        Ok(reps) => Ok(Track { samples: make_samples(&ts, reps, c0, circle), ..track }),
        Err(e) => Err(track.failed(e.to_string())),
    }
}

/// Limit analysis at a first-order pole: Darboux tracks for each initial
/// point and one Calapso track, sampled at t_k = p 2⁻ᵏ.
pub fn limit_report_first_order(
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    initials: &[ProjectivePoint],
    opts: &TransformOptions,
) -> Result<LimitReport> {
    if pc.pole_order() != PoleOrder::First {
        return Err(Error::InvalidArgument("first-order report needs pole_order = 1".into()));
    }
    check_param(pc, p, "p")?;
    let c0 = pc.point(0.0);
    let mut tracks = Vec::new();
    for (i, init) in initials.iter().enumerate() {
        tracks.push(darboux_direct_track(i, pc, lambda, p, init, &c0, None, opts));
    }
    let id = tracks.len();
    tracks.push(match calapso_track(id, pc, lambda, p, &c0, None, opts) {
        Ok(t) => cauchy(t, opts),
        Err(t) => t,
    });
    Ok(LimitReport {
        pole_order: PoleOrder::First,
        lambda,
        p,
        c0,
        cbar0: None,
        curvature_circle0: None,
        limit_circle: None,
        tracks,
    })
}

/// Fraction of gaps that must reach [`NON_CAUCHY_GAP`] for a track to count
/// as recurrently non-Cauchy.
pub const RECURRENT_FRACTION: f64 = 1.0 / 3.0;

/// Number of final samples checked for limit-circle adherence and
/// recurrence in the spacelike Calapso verdict.
pub const CIRCLE_WINDOW: usize = 7;

fn spacelike_calapso(mut track: Track, regime: &SpacelikeRegime, opts: &TransformOptions) -> Track {
    let n = track.samples.len();
    let window = &track.samples[n.saturating_sub(CIRCLE_WINDOW)..];
    track.gaps = consecutive_gaps(&track.samples.iter().map(|s| s.point.clone()).collect::<Vec<_>>());
    // Rotation rate from the angle of M⁻¹ y, M = circle map.
    if let Ok(m) = regime.circle_map() {
        let minv = mink_adjoint(&m);
        let angles: Vec<f64> = window.iter().map(|s| regime.rotation_angle(&(&minv * &s.point))).collect();
        let mut total = 0.0;
        for w in angles.windows(2) {
            let mut d = w[1] - w[0];
            while d > std::f64::consts::PI {
                d -= 2.0 * std::f64::consts::PI;
            }
            while d < -std::f64::consts::PI {
                d += 2.0 * std::f64::consts::PI;
            }
            total += d;
        }
        let dl = (window[window.len() - 1].t / window[0].t).ln();
        track.rotation_rate = Some((total / dl).abs());
    }
    let max_circle = window.iter().map(|s| s.distance_to_circle.unwrap_or(f64::NAN)).fold(0.0, f64::max);
    let late_gaps = &track.gaps[track.gaps.len() - (window.len() - 1)..];
    let big = late_gaps.iter().filter(|&&g| g >= NON_CAUCHY_GAP).count();
    if !(max_circle <= opts.limit_tol) {
        return track.failed(format!("distance to limit circle {max_circle:.3e} exceeds {:.1e}", opts.limit_tol));
    }
    if (big as f64) < RECURRENT_FRACTION * late_gaps.len() as f64 {
        return track.failed("late gaps are not recurrently large");
    }
    track.verdict = Verdict::NoLimitSpacelike;
    track
}

/// Number of octaves before k_max searched for accumulation points.
pub const LATE_OCTAVES: u32 = 12;
const GRID_PER_OCTAVE: usize = 24;

fn golden_min(f: &mut dyn FnMut(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// Local minima of |x_o| / |x| over the late window, refined by golden
/// section in ln t. These are the parameters where the exceptional track
/// comes closest to ⟨c̄(0)⟩.
fn phase_locked_times(regime: &SpacelikeRegime, w: &MinkVector, t_lo: f64, t_hi: f64) -> Result<Vec<f64>> {
    let b = regime.gauge.basis().clone();
    let octaves = (t_hi / t_lo).log2();
    let n = (octaves * GRID_PER_OCTAVE as f64).ceil() as usize + 1;
    let grid: Vec<f64> = (0..n).map(|j| t_lo * (t_hi / t_lo).powf(j as f64 / (n - 1) as f64)).collect();
    let xs = regime.exceptional_frame_reps(w, &grid)?;
    let ratio = |x: &MinkVector| mink_inner(x, &b.iota).abs() / x.norm();
    let f: Vec<f64> = xs.iter().map(ratio).collect();
    let mut out = Vec::new();
    for j in 1..n - 1 {
        if f[j] <= f[j - 1] && f[j] <= f[j + 1] {
            let (la, lb) = (grid[j - 1].ln(), grid[j + 1].ln());
            let mut err = None;
            let mut obj = |s: f64| -> f64 {
                match regime.exceptional_frame_reps(w, &[s.exp()]) {
                    Ok(x) => ratio(&x[0]),
                    Err(e) => {
                        err = Some(e);
                        f64::INFINITY
                    }
                }
            };
            let s = golden_min(&mut obj, la, lb, 60);
            if let Some(e) = err {
                return Err(e);
            }
            out.push(s.exp());
        }
    }
    Ok(out)
}

fn exceptional_track(
    mut track: Track,
    regime: &SpacelikeRegime,
    initial: &ProjectivePoint,
    c0: &MinkVector,
    cbar0: &MinkVector,
    circle0: &CircleSubspace,
    opts: &TransformOptions,
) -> Track {
    let p = regime.p;
    let ts = opts.sample_times(p);
    let w = match regime.circle_preimage(initial) {
        Ok(w) => w,
        Err(e) => return track.failed(e.to_string()),
    };
    let mut asc: Vec<f64> = ts.clone();
    asc.reverse();
    let reps = match regime.exceptional_darboux_reps(&w, &asc) {
        Ok(mut r) => {
            r.reverse();
            r
        }
        Err(e) => return track.failed(e.to_string()),
    };
    track.samples = make_samples(&ts, reps, c0, Some(circle0));
    track.gaps = consecutive_gaps(&track.samples.iter().map(|s| s.point.clone()).collect::<Vec<_>>());

    let k_lo = opts.k_max.saturating_sub(LATE_OCTAVES);
    let t_hi = p * 2f64.powi(-(k_lo as i32));
    let t_lo = p * 2f64.powi(-(opts.k_max as i32));
    let extra = phase_locked_times(regime, &w, t_lo, t_hi)
        .and_then(|times| Ok((regime.exceptional_darboux_reps(&w, &times)?, times)));
    match extra {
        Ok((reps, times)) => track.extra_samples = make_samples(&times, reps, c0, Some(circle0)),
        Err(e) => return track.failed(e.to_string()),
    }

    let mut late: Vec<&Sample> = track.samples[k_lo as usize..].iter().chain(track.extra_samples.iter()).collect();
    late.sort_by(|a, b| b.t.total_cmp(&a.t));
    let late_points: Vec<MinkVector> = late.iter().map(|s| s.point.clone()).collect();
    track.clusters = cluster_points(&late_points, opts.cluster_radius);

    // (a) adherence to the curvature circle at 0 over the last octaves.
    let t_a = p * 2f64.powi(-(opts.k_max.saturating_sub(4) as i32));
    let adherence = late
        .iter()
        .filter(|s| s.t <= t_a * (1.0 + 1e-12))
        .map(|s| s.distance_to_circle.unwrap_or(f64::NAN))
        .fold(0.0, f64::max);
    // (c) within the last rotation period the track still moves by ≥ 0.1.
    let zeta = regime.pole_form.data.zeta;
    let period = 2.0 * std::f64::consts::PI / zeta;
    let last = track.samples.last().expect("samples").clone();
    let spread = late
        .iter()
        .filter(|s| (s.t / last.t).ln() <= period)
        .map(|s| line_dist(&s.point, &last.point))
        .fold(0.0, f64::max);
    let near_cbar = track.clusters.iter().any(|c| line_dist(c, cbar0) <= opts.cluster_radius);
    track.note = format!(
        "curvature-circle distance {adherence:.3e}, {} clusters, c̄(0) cluster {near_cbar}, spread in last period {spread:.3e}",
        track.clusters.len()
    );
    if !(adherence <= opts.limit_tol) {
        track.verdict = Verdict::Failed;
        return track;
    }
    if track.clusters.len() < 2 || !(spread >= NON_CAUCHY_GAP) {
        track.verdict = Verdict::Failed;
        return track;
    }
    track.verdict = Verdict::NonconvergentRotating;
    track
}

/// Off-circle Darboux tracks in the spacelike regime approach ⟨c(0)⟩ with a
/// prefactor modulated by the rotation, so instead of a monotone tail the
/// worst distance over the last rotation period must be below the worst
/// distance over the period before it.
fn rotating_envelope_verdict(mut track: Track, zeta: f64, opts: &TransformOptions) -> Track {
    if track.samples.is_empty() {
        return track;
    }
    let last = track.samples.last().expect("nonempty");
    let final_d = last.distance_to_c0;
    let t_end = last.t;
    let period = 2.0 * std::f64::consts::PI / zeta;
    let envelope = |lo: f64, hi: f64| {
        track
            .samples
            .iter()
            .filter(|s| {
                let l = (s.t / t_end).ln();
                l >= lo && l < hi
            })
            .map(|s| s.distance_to_c0)
            .fold(f64::NAN, f64::max)
    };
    let recent = envelope(0.0, period);
    let before = envelope(period, 2.0 * period);
    if !(final_d <= opts.limit_tol) {
        return track.failed(format!("final distance to c(0) {final_d:.3e} exceeds {:.1e}", opts.limit_tol));
    }
    if !(recent < before) {
        return track.failed(format!("rotation-period envelope not decreasing ({recent:.3e} vs {before:.3e})"));
    }
    track.verdict = Verdict::ConvergesToC0;
    track.note = format!("envelope over last period {recent:.3e}, previous {before:.3e}");
    track
}

/// Limit analysis at a second-order pole. For 1 − 2λr ≥ 0 Darboux tracks
/// should converge to ⟨c(0)⟩ and the Calapso track should be Cauchy. For
/// 1 − 2λr < 0 the Calapso track adheres to the limit circle; Darboux
/// tracks through points off the limit circle converge to ⟨c(0)⟩ and those
/// on it rotate, accumulating at ⟨c(0)⟩ and ⟨c̄(0)⟩.
pub fn limit_report_second_order(
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    initials: &[ProjectivePoint],
    opts: &TransformOptions,
) -> Result<LimitReport> {
    if pc.pole_order() != PoleOrder::Second {
        return Err(Error::InvalidArgument("second-order report needs pole_order = 2".into()));
    }
    check_param(pc, p, "p")?;
    let gauge = build_singular_gauge(pc, &opts.step)?;
    let frame0 = gauge.frame_field().frame(0.0)?;
    let c0 = frame0.c.clone();
    let cbar0 = frame0.cbar.clone();
    let circle0 = curvature_circle(&frame0)?;
    let lr = lambda * gauge.residue();
    let mut report = LimitReport {
        pole_order: PoleOrder::Second,
        lambda,
        p,
        c0: c0.clone(),
        cbar0: Some(cbar0.clone()),
        curvature_circle0: Some(circle0.clone()),
        limit_circle: None,
        tracks: Vec::new(),
    };

    if 1.0 - 2.0 * lr >= -DEFAULT_TOL {
        for (i, init) in initials.iter().enumerate() {
            report.tracks.push(darboux_direct_track(i, pc, lambda, p, init, &c0, None, opts));
        }
        let id = report.tracks.len();
        report.tracks.push(match calapso_track(id, pc, lambda, p, &c0, None, opts) {
            Ok(t) => cauchy(t, opts),
            Err(t) => t,
        });
        return Ok(report);
    }

    let regime = SpacelikeRegime::new(pc, lambda, p, &opts.step)?;
    let circle = regime.limit_circle()?;
    report.limit_circle = Some(circle.clone());
    for (i, init) in initials.iter().enumerate() {
        let d = circle.point_distance(init).unwrap_or(f64::NAN);
        if d <= opts.circle_tol {
            let mut track = Track::empty(i, TrackKind::Darboux, lambda, Some(init.normalized()));
            track.on_limit_circle = true;
            report.tracks.push(exceptional_track(track, &regime, init, &c0, &cbar0, &circle0, opts));
        } else {
            let track = darboux_direct_track(i, pc, lambda, p, init, &c0, Some(&circle0), opts);
            report.tracks.push(rotating_envelope_verdict(track, regime.pole_form.data.zeta, opts));
        }
    }
    let id = report.tracks.len();
    report.tracks.push(match calapso_track(id, pc, lambda, p, &c0, Some(&circle), opts) {
        Ok(t) => spacelike_calapso(t, &regime, opts),
        Err(t) => t,
    });
    Ok(report)
}

/// Dispatches on the pole order.
pub fn limit_report(
    pc: &PolarizedCurve,
    lambda: f64,
    p: f64,
    initials: &[ProjectivePoint],
    opts: &TransformOptions,
) -> Result<LimitReport> {
    match pc.pole_order() {
        PoleOrder::First => limit_report_first_order(pc, lambda, p, initials, opts),
        PoleOrder::Second => limit_report_second_order(pc, lambda, p, initials, opts),
        PoleOrder::Regular => Err(Error::InvalidArgument("limit reports need a pole at 0".into())),
    }
}

/// Signature of span(v, w) for ξ_λ, used to cross-check classifications.
pub fn xi_lambda_signature(basis: &NullBasis, lambda: f64) -> Result<PlaneSignature> {
    plane_signature(&(&basis.o - &basis.tangent), &(&basis.iota - &basis.tangent * lambda), DEFAULT_TOL)
}
