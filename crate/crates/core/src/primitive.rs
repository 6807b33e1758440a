//! Primitives Γ_p(ψ) of 𝔬(ℝ^{n+2}₁)-valued 1-forms.
//!
//! Γ_p^t solves dΓ = Γ ψ with Γ_p^p = id. Integration uses a fourth-order
//! Runge–Kutta–Munthe-Kaas scheme: every step multiplies by the exponential
//! of a Lie-algebra increment, so Lorentz-ness is kept to rounding error.
//! Steps are controlled by step doubling. The log chart s = ln τ turns a
//! first-order pole at τ = 0 into a bounded coefficient.

use std::sync::Arc;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::minkowski::{commutator, lorentz_defect, mink_adjoint, MinkEndo};

/// Matrix-valued function of a real parameter.
pub type MatFn = Arc<dyn Fn(f64) -> MinkEndo + Send + Sync>;

/// A 1-form Ψ(t) dt given by its orthogonal-lift coefficient.
#[derive(Clone)]
pub struct OneForm {
    coeff: MatFn,
    dim: usize,
    pub singular_at_zero: bool,
    pub pole_order_hint: u8,
}

impl std::fmt::Debug for OneForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OneForm")
            .field("dim", &self.dim)
            .field("singular_at_zero", &self.singular_at_zero)
            .field("pole_order_hint", &self.pole_order_hint)
            .finish()
    }
}

impl OneForm {
    pub fn new(dim: usize, coeff: impl Fn(f64) -> MinkEndo + Send + Sync + 'static) -> Self {
        Self { coeff: Arc::new(coeff), dim, singular_at_zero: false, pole_order_hint: 0 }
    }

    pub fn from_arc(dim: usize, coeff: MatFn) -> Self {
        Self { coeff, dim, singular_at_zero: false, pole_order_hint: 0 }
    }

    pub fn with_pole(mut self, order: u8) -> Self {
        self.singular_at_zero = order > 0;
        self.pole_order_hint = order;
        self
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, move |_| DMatrix::zeros(dim, dim))
    }

    pub fn constant(a: MinkEndo) -> Self {
        let dim = a.nrows();
        Self::new(dim, move |_| a.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeff(&self, t: f64) -> MinkEndo {
        (self.coeff)(t)
    }

    pub fn coeff_fn(&self) -> MatFn {
        self.coeff.clone()
    }

    /// λψ.
    pub fn scaled(&self, lambda: f64) -> Self {
        let f = self.coeff.clone();
        Self { coeff: Arc::new(move |t| f(t) * lambda), ..self.clone() }
    }

    /// ψ − φ.
    pub fn minus(&self, other: &OneForm) -> Self {
        let f = self.coeff.clone();
        let g = other.coeff.clone();
        Self { coeff: Arc::new(move |t| f(t) - g(t)), ..self.clone() }
    }
}

/// Integration controls. `tol` bounds the local error of each step's
/// propagator per unit of the integration variable (s = ln τ in the log
/// chart); `min_step` is measured in the same variable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOptions {
    pub tol: f64,
    pub min_step: f64,
    pub max_steps: usize,
}

impl Default for StepOptions {
    fn default() -> Self {
        Self { tol: 1e-10, min_step: 1e-14, max_steps: 10_000_000 }
    }
}

/// Which side the coefficient multiplies: Y' = Y A or Y' = A Y.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// Parametrization used for integration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Linear,
    /// s = ln τ; requires all parameters positive.
    Log,
}

// dexp⁻¹ truncated after the second commutator. For Y' = Y A the increment
// satisfies Θ' = dexp⁻¹_{−Θ}(A), hence the sign flip.
fn dexpinv(side: Side, theta: &MinkEndo, a: &MinkEndo) -> MinkEndo {
    let c1 = commutator(theta, a);
    let c2 = commutator(theta, &c1);
    match side {
        Side::Left => a - &c1 * 0.5 + c2 / 12.0,
        Side::Right => a + &c1 * 0.5 + c2 / 12.0,
    }
}

fn rkmk4_increment(side: Side, h: f64, a0: &MinkEndo, am: &MinkEndo, a1: &MinkEndo) -> MinkEndo {
    let k1 = a0 * h;
    let k2 = dexpinv(side, &(&k1 * 0.5), am) * h;
    let k3 = dexpinv(side, &(&k2 * 0.5), am) * h;
    let k4 = dexpinv(side, &k3, a1) * h;
    (k1 + (k2 + k3) * 2.0 + k4) / 6.0
}

fn compose(side: Side, first: &MinkEndo, second: &MinkEndo) -> MinkEndo {
    match side {
        Side::Right => first * second,
        Side::Left => second * first,
    }
}

fn apply(side: Side, y: &MinkEndo, step: &MinkEndo) -> MinkEndo {
    match side {
        Side::Right => y * step,
        Side::Left => step * y,
    }
}

/// Integrates Y' = Y A(s) (or A(s) Y) from `s0` through the monotone list of
/// `targets`, returning Y at each target.
pub fn integrate_linear(
    a: &(dyn Fn(f64) -> MinkEndo + Sync),
    side: Side,
    y0: MinkEndo,
    s0: f64,
    targets: &[f64],
    opts: &StepOptions,
) -> Result<Vec<MinkEndo>> {
    let mut out = Vec::with_capacity(targets.len());
    let Some(&last) = targets.last() else {
        return Ok(out);
    };
    let dir = if last >= s0 { 1.0 } else { -1.0 };
    let mut prev = s0;
    for &t in targets {
        if !t.is_finite() || (t - prev) * dir < 0.0 {
            return Err(Error::InvalidArgument("integration targets must be finite and monotone".into()));
        }
        prev = t;
    }

    let mut y = y0;
    let mut s = s0;
    let mut a_s = a(s);
    let span = (last - s0).abs();
    let mut h = if span == 0.0 { 0.0 } else { (0.1 / (1.0 + a_s.norm())).min(span) };
    let mut steps = 0usize;

    for &target in targets {
        while (target - s) * dir > 0.0 {
            if steps >= opts.max_steps {
                return Err(Error::ToleranceNotMet { steps });
            }
            steps += 1;
            let remaining = (target - s).abs();
            let hs = h.min(remaining);
            let hd = hs * dir;

            let a_q1 = a(s + 0.25 * hd);
            let a_m = a(s + 0.5 * hd);
            let a_q3 = a(s + 0.75 * hd);
            let a_e = a(s + hd);

            let full = expm(&rkmk4_increment(side, hd, &a_s, &a_m, &a_e));
            let half1 = expm(&rkmk4_increment(side, 0.5 * hd, &a_s, &a_q1, &a_m));
            let half2 = expm(&rkmk4_increment(side, 0.5 * hd, &a_m, &a_q3, &a_e));
            let fine = compose(side, &half1, &half2);
            let err = (&full - &fine).norm() / 15.0;
            // Error per unit step, so that accumulated error stays near tol
            // over an interval of unit length.
            let scale = fine.norm().max(1.0);
            let allowed = (opts.tol * hs.min(1.0)).max(16.0 * f64::EPSILON) * scale;

            if err <= allowed || hs <= opts.min_step {
                if err > allowed {
                    return Err(Error::StepUnderflow { at: s, step: hs });
                }
                y = apply(side, &y, &fine);
                s = if hs == remaining { target } else { s + hd };
                a_s = a_e;
                let grow = if err == 0.0 { 4.0 } else { (0.9 * (allowed / err).powf(0.25)).clamp(0.2, 4.0) };
                // Keep the controller's step when we were only clipped by a target.
                if hs == h || grow < 1.0 {
                    h = hs * grow;
                }
            } else {
                let shrink = (0.9 * (allowed / err).powf(0.25)).clamp(0.1, 0.9);
                h = (hs * shrink).max(opts.min_step);
            }
            if !y.iter().all(|v| v.is_finite()) {
                return Err(Error::StepUnderflow { at: s, step: h });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

fn chart_coords(chart: Chart, ts: &[f64]) -> Result<Vec<f64>> {
    match chart {
        Chart::Linear => Ok(ts.to_vec()),
        Chart::Log => ts
            .iter()
            .map(|&t| {
                if t > 0.0 {
                    Ok(t.ln())
                } else {
                    Err(Error::InvalidArgument(format!("log chart needs t > 0, got {t}")))
                }
            })
            .collect(),
    }
}

/// Γ_p^t at each t of a monotone list moving away from p.
pub fn primitive_track(psi: &OneForm, p: f64, ts: &[f64], chart: Chart, opts: &StepOptions) -> Result<Vec<MinkEndo>> {
    let dim = psi.dim();
    let s = chart_coords(chart, &[p])?[0];
    let targets = chart_coords(chart, ts)?;
    let f = psi.coeff.clone();
    let id = DMatrix::identity(dim, dim);
    match chart {
        Chart::Linear => integrate_linear(&move |t| f(t), Side::Right, id, s, &targets, opts),
        Chart::Log => integrate_linear(
            &move |s: f64| {
                let t = s.exp();
                f(t) * t
            },
            Side::Right,
            id,
            s,
            &targets,
            opts,
        ),
    }
}

/// Γ_p^t in the linear chart.
pub fn integrate_primitive(psi: &OneForm, p: f64, t: f64, opts: &StepOptions) -> Result<MinkEndo> {
    Ok(primitive_track(psi, p, &[t], Chart::Linear, opts)?.remove(0))
}

/// Γ_p^t integrated in s = ln τ.
pub fn integrate_primitive_log(psi: &OneForm, p: f64, t: f64, opts: &StepOptions) -> Result<MinkEndo> {
    Ok(primitive_track(psi, p, &[t], Chart::Log, opts)?.remove(0))
}

/// How to obtain Γ_t^p = (Γ_p^t)⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InverseRoute {
    /// Minkowski adjoint of Γ_p^t (valid because Γ is Lorentz).
    Adjoint,
    /// Integrate dΓ^p = −ψ Γ^p directly.
    Ode,
}

pub fn inverse_primitive(
    psi: &OneForm,
    p: f64,
    t: f64,
    chart: Chart,
    route: InverseRoute,
    opts: &StepOptions,
) -> Result<MinkEndo> {
    match route {
        InverseRoute::Adjoint => Ok(mink_adjoint(&primitive_track(psi, p, &[t], chart, opts)?.remove(0))),
        InverseRoute::Ode => Ok(inverse_primitive_track(psi, p, &[t], chart, opts)?.remove(0)),
    }
}

/// Γ_t^p at each t of a monotone list moving away from p, obtained by
/// integrating dΓ^p = −ψ Γ^p.
pub fn inverse_primitive_track(
    psi: &OneForm,
    p: f64,
    ts: &[f64],
    chart: Chart,
    opts: &StepOptions,
) -> Result<Vec<MinkEndo>> {
    let dim = psi.dim();
    let f = psi.coeff.clone();
    let s0 = chart_coords(chart, &[p])?[0];
    let targets = chart_coords(chart, ts)?;
    let id = DMatrix::identity(dim, dim);
    match chart {
        Chart::Linear => integrate_linear(&move |t| -f(t), Side::Left, id, s0, &targets, opts),
        Chart::Log => integrate_linear(
            &move |s: f64| {
                let t = s.exp();
                f(t) * (-t)
            },
            Side::Left,
            id,
            s0,
            &targets,
            opts,
        ),
    }
}

/// A gauge t ↦ g(t) together with its derivative.
#[derive(Clone)]
pub struct Gauge {
    pub g: MatFn,
    pub dg: MatFn,
    /// When set, g(t)⁻¹ is computed as the Minkowski adjoint.
    pub lorentz: bool,
}

impl Gauge {
    pub fn constant(g: MinkEndo) -> Self {
        let dim = g.nrows();
        let lorentz = lorentz_defect(&g) <= 1e-9 * g.norm_squared().max(1.0);
        Self { g: Arc::new(move |_| g.clone()), dg: Arc::new(move |_| DMatrix::zeros(dim, dim)), lorentz }
    }

    pub fn inverse_at(&self, t: f64) -> Result<MinkEndo> {
        let g = (self.g)(t);
        if self.lorentz {
            Ok(mink_adjoint(&g))
        } else {
            g.try_inverse().ok_or(Error::NonInvertibleGauge { t })
        }
    }
}

/// g ⋉ ψ = g⁻¹ ψ g + g⁻¹ dg. The gauge is checked for invertibility (and
/// Lorentz-ness, if claimed) at the `probe` parameters.
pub fn gauge_transform(psi: &OneForm, gauge: &Gauge, probe: &[f64]) -> Result<OneForm> {
    for &t in probe {
        let g = (gauge.g)(t);
        if gauge.lorentz {
            if lorentz_defect(&g) > 1e-7 * g.norm_squared().max(1.0) {
                return Err(Error::NonInvertibleGauge { t });
            }
        } else {
            let inv = g.clone().try_inverse().ok_or(Error::NonInvertibleGauge { t })?;
            if !inv.iter().all(|v| v.is_finite()) {
                return Err(Error::NonInvertibleGauge { t });
            }
        }
    }
    let f = psi.coeff.clone();
    let gauge = gauge.clone();
    let dim = psi.dim();
    let out = OneForm::new(dim, move |t| {
        let g = (gauge.g)(t);
        let ginv = gauge.inverse_at(t).unwrap_or_else(|_| DMatrix::from_element(dim, dim, f64::NAN));
        &ginv * f(t) * &g + &ginv * (gauge.dg)(t)
    });
    Ok(OneForm { singular_at_zero: psi.singular_at_zero, pole_order_hint: psi.pole_order_hint, ..out })
}

/// ‖Γ_p^t − id − ∫_p^t Γ_p^τ Ψ(τ) dτ‖ with composite Simpson quadrature on
/// `quad_points` intervals (rounded up to even).
pub fn verify_integral_equation(psi: &OneForm, p: f64, t: f64, quad_points: usize, opts: &StepOptions) -> Result<f64> {
    let dim = psi.dim();
    if t == p {
        return Ok(0.0);
    }
    let m = (quad_points.max(2) + 1) / 2 * 2;
    let h = (t - p) / m as f64;
    let nodes: Vec<f64> = (1..=m).map(|i| p + h * i as f64).collect();
    let gammas = primitive_track(psi, p, &nodes, Chart::Linear, opts)?;
    let mut integral = psi.coeff(p); // Γ_p^p = id
    for (i, (tau, g)) in nodes.iter().zip(&gammas).enumerate() {
        let idx = i + 1;
        let w = if idx == m { 1.0 } else if idx % 2 == 1 { 4.0 } else { 2.0 };
        integral += g * psi.coeff(*tau) * w;
    }
    integral *= h / 3.0;
    let gt = gammas.last().expect("nonempty");
    Ok((gt - DMatrix::identity(dim, dim) - integral).norm())
}
