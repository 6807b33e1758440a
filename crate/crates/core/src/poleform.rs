//! Pure pole forms ξ = −(dt/t) v∧w and pole forms ψ = ξ + bounded.
//!
//! The signature of span(v, w) decides everything: Minkowski planes give
//! real eigenvalues ±ζ of v∧w and power-law primitives, degenerate planes
//! give nilpotent generators and log² growth, spacelike planes give
//! rotations with no limit at t = 0.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::minkowski::{
    gram_determinant, mink_adjoint, mink_inner, mink_sq, plane_signature, rank_one, wedge, MinkEndo,
    MinkVector, PlaneSignature, DEFAULT_TOL,
};
use crate::primitive::{primitive_track, Chart, OneForm, StepOptions};
use crate::projective::ProjectiveMap;

/// Signature kind of a pure pole form.
pub type PoleKind = PlaneSignature;

/// The pure pole form −(dt/t) v∧w.
#[derive(Debug, Clone, PartialEq)]
pub struct PurePoleForm {
    pub v: MinkVector,
    pub w: MinkVector,
}

impl PurePoleForm {
    pub fn new(v: MinkVector, w: MinkVector) -> Result<Self> {
        if v.len() != w.len() {
            return Err(Error::DimensionMismatch { expected: v.len(), found: w.len() });
        }
        let scale = v.norm() * w.norm();
        if scale == 0.0 || wedge(&v, &w).norm() <= DEFAULT_TOL * scale {
            return Err(Error::DegenerateWedge);
        }
        Ok(Self { v, w })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// v∧w.
    pub fn generator(&self) -> MinkEndo {
        wedge(&self.v, &self.w)
    }

    /// Coefficient −(1/t) v∧w.
    pub fn coeff(&self, t: f64) -> MinkEndo {
        self.generator() * (-1.0 / t)
    }

    pub fn one_form(&self) -> OneForm {
        let x = self.generator();
        OneForm::new(self.dim(), move |t| &x * (-1.0 / t)).with_pole(1)
    }
}

/// Classification record of a pure pole form.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleFormData {
    pub kind: PoleKind,
    /// ζ for Minkowski, |imaginary eigenvalue| for spacelike, 0 if degenerate.
    pub zeta: f64,
    /// Null eigenvectors (Minkowski case), ⟨v₊, v₋⟩ = ζ.
    pub v_plus: Option<MinkVector>,
    pub v_minus: Option<MinkVector>,
    /// Null direction and spacelike complement (degenerate case).
    pub v0: Option<MinkVector>,
    pub w_tilde: Option<MinkVector>,
    pub first_kind: bool,
    /// v∧w.
    pub generator: MinkEndo,
}

fn first_nonzero_positive(mut x: MinkVector) -> MinkVector {
    let n = x.norm();
    x /= n;
    if let Some(&c) = x.iter().find(|c| c.abs() > 1e-12) {
        if c < 0.0 {
            x = -x;
        }
    }
    x
}

/// Classifies a pure pole form and extracts its eigen-data from the 2×2
/// restriction of v∧w to span(v, w).
pub fn classify_pure_pole_form(xi: &PurePoleForm, tol: f64) -> Result<PoleFormData> {
    let (v, w) = (&xi.v, &xi.w);
    let kind = plane_signature(v, w, tol)?;
    let generator = xi.generator();
    let a = mink_sq(v);
    let b = mink_inner(v, w);
    let c = mink_sq(w);
    let g = gram_determinant(v, w);
    // On the basis (v, w) the generator acts by [[−b, −c], [a, b]].
    let mut data = PoleFormData {
        kind,
        zeta: 0.0,
        v_plus: None,
        v_minus: None,
        v0: None,
        w_tilde: None,
        first_kind: true,
        generator,
    };
    match kind {
        PlaneSignature::Minkowski => {
            let zeta = (-g).sqrt();
            let eig = |lam: f64| -> MinkVector {
                // Null vectors of [[−b−λ, −c], [a, b−λ]]; take the better row.
                let r1 = (c, -b - lam);
                let r2 = (lam - b, a);
                let (x1, x2) = if r1.0.hypot(r1.1) >= r2.0.hypot(r2.1) { r1 } else { r2 };
                first_nonzero_positive(v * x1 + w * x2)
            };
            let vp = eig(zeta);
            let vm0 = eig(-zeta);
            let s = mink_inner(&vp, &vm0);
            let vm = vm0 * (zeta / s);
            data.zeta = zeta;
            data.v_plus = Some(vp);
            data.v_minus = Some(vm);
            data.first_kind = zeta < 1.0;
        }
        PlaneSignature::Degenerate => {
            // Kernel of the Gram matrix [[a, b], [b, c]].
            let k1 = (c, -b);
            let k2 = (-b, a);
            let (x1, x2) = if k1.0.hypot(k1.1) >= k2.0.hypot(k2.1) { k1 } else { k2 };
            let v0 = first_nonzero_positive(v * x1 + w * x2);
            // Complement u ∈ {v, w} least parallel to v0; then v∧w = κ v0∧u.
            let fv = wedge(&v0, v);
            let fw = wedge(&v0, w);
            let (u, f) = if fv.norm() / v.norm() >= fw.norm() / w.norm() { (v, fv) } else { (w, fw) };
            let kappa = data.generator.dot(&f) / f.norm_squared();
            data.w_tilde = Some(u * kappa);
            data.v0 = Some(v0);
        }
        PlaneSignature::Spacelike => {
            data.zeta = g.sqrt();
        }
    }
    Ok(data)
}

impl PoleFormData {
    /// Largest eigen-residual of the stored eigenvectors (Minkowski case).
    pub fn eigen_residual(&self) -> f64 {
        match (&self.v_plus, &self.v_minus) {
            (Some(vp), Some(vm)) => {
                let r1 = (&self.generator * vp - vp * self.zeta).norm() / vp.norm();
                let r2 = (&self.generator * vm + vm * self.zeta).norm() / vm.norm();
                r1.max(r2)
            }
            _ => 0.0,
        }
    }
}

fn check_times(p: f64, t: f64) -> Result<()> {
    if !(p > 0.0 && t > 0.0) {
        return Err(Error::InvalidArgument(format!("closed form needs p, t > 0 (p = {p}, t = {t})")));
    }
    Ok(())
}

/// Exact Γ_p^t of a pure pole form, i.e. exp(−ln(t/p) v∧w) evaluated in
/// closed form for each signature.
pub fn pure_primitive_closed_form(data: &PoleFormData, p: f64, t: f64) -> Result<MinkEndo> {
    check_times(p, t)?;
    let n = data.generator.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let l = (t / p).ln();
    match data.kind {
        PlaneSignature::Minkowski => {
            let vp = data.v_plus.as_ref().expect("Minkowski data has v+");
            let vm = data.v_minus.as_ref().expect("Minkowski data has v-");
            let z = data.zeta;
            let pm = rank_one(vp, vm) / z;
            let mp = rank_one(vm, vp) / z;
            Ok(&id - &pm - &mp + pm * (-z * l).exp() + mp * (z * l).exp())
        }
        PlaneSignature::Degenerate => {
            let v0 = data.v0.as_ref().expect("degenerate data has v0");
            let wt = data.w_tilde.as_ref().expect("degenerate data has w~");
            Ok(id - wedge(v0, wt) * l - rank_one(v0, v0) * (l * l * mink_sq(wt) / 2.0))
        }
        PlaneSignature::Spacelike => {
            // X³ = −ζ² X on ℝ^{n+2}.
            let x = &data.generator;
            let z = data.zeta;
            let s = -l;
            Ok(id + x * ((s * z).sin() / z) + (x * x) * ((1.0 - (s * z).cos()) / (z * z)))
        }
    }
}

/// Normalization used to extract a limit of Γ_p^t as t → 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleKind {
    /// Multiply by (t/p)^ζ.
    PowerScale(f64),
    /// Divide by ℓ(p, t) = 1 + ln(t/p)².
    LogSquareScale,
    /// No normalization converges.
    NoLimit,
}

impl ScaleKind {
    /// The scalar applied to Γ_p^t at (p, t).
    pub fn factor(&self, p: f64, t: f64) -> Option<f64> {
        match *self {
            ScaleKind::PowerScale(z) => Some((t / p).powf(z)),
            ScaleKind::LogSquareScale => Some(1.0 / (1.0 + (t / p).ln().powi(2))),
            ScaleKind::NoLimit => None,
        }
    }
}

/// Scaling and rank-one limit of the closed-form primitive as t → 0.
pub fn pure_primitive_scaled_limit(data: &PoleFormData, _p: f64) -> (ScaleKind, Option<MinkEndo>) {
    match data.kind {
        PlaneSignature::Minkowski => {
            let vp = data.v_plus.as_ref().expect("Minkowski data has v+");
            let vm = data.v_minus.as_ref().expect("Minkowski data has v-");
            (ScaleKind::PowerScale(data.zeta), Some(rank_one(vp, vm) / data.zeta))
        }
        PlaneSignature::Degenerate => {
            let v0 = data.v0.as_ref().expect("degenerate data has v0");
            let wt = data.w_tilde.as_ref().expect("degenerate data has w~");
            (ScaleKind::LogSquareScale, Some(rank_one(v0, v0) * (-mink_sq(wt) / 2.0)))
        }
        PlaneSignature::Spacelike => (ScaleKind::NoLimit, None),
    }
}

/// A 1-form ψ together with a pure part ξ such that ψ − ξ is bounded near 0.
#[derive(Debug, Clone)]
pub struct PoleForm {
    pub form: OneForm,
    pub pure_part: PurePoleForm,
    pub data: PoleFormData,
    /// Sampled sup of |ψ − ξ| / t^power over t = b 2⁻ᵏ, k ≤ 30.
    pub remainder_bound: f64,
}

/// Samples |ψ(t) − ξ(t)| / tᵐ at t = b 2⁻ᵏ (k = 1..=30) and fails if the
/// tail grows by more than a factor 8 over the head. Returns the sampled sup.
pub fn certify_remainder(form: &OneForm, pure: &PurePoleForm, b: f64, power: i32) -> Result<f64> {
    let vals: Vec<f64> = (1..=30)
        .map(|k| {
            let t = b * 2f64.powi(-k);
            (form.coeff(t) - pure.coeff(t)).norm() / t.powi(power)
        })
        .collect();
    if vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::RemainderUnbounded { growth: f64::INFINITY });
    }
    let head = vals[..10].iter().cloned().fold(0.0, f64::max);
    let tail = vals[20..].iter().cloned().fold(0.0, f64::max);
    let floor = 1e-12 * pure.generator().norm();
    let growth = tail / head.max(floor);
    if tail > floor && growth > 8.0 {
        return Err(Error::RemainderUnbounded { growth });
    }
    Ok(vals.into_iter().fold(0.0, f64::max))
}

impl PoleForm {
    /// Certifies that ψ − ξ stays bounded on (0, b] by geometric sampling.
    pub fn new(form: OneForm, pure_part: PurePoleForm, b: f64) -> Result<Self> {
        Self::with_remainder_power(form, pure_part, b, 0)
    }

    /// As [`PoleForm::new`] but certifies |ψ − ξ| / tᵐ instead.
    pub fn with_remainder_power(form: OneForm, pure_part: PurePoleForm, b: f64, power: i32) -> Result<Self> {
        let remainder_bound = certify_remainder(&form, &pure_part, b, power)?;
        let data = classify_pure_pole_form(&pure_part, DEFAULT_TOL)?;
        Ok(Self { form, pure_part, data, remainder_bound })
    }

    /// Builds from precomputed classification data (e.g. verified candidate
    /// eigenvectors), still certifying the remainder.
    pub fn with_data(form: OneForm, pure_part: PurePoleForm, data: PoleFormData, b: f64, power: i32) -> Result<Self> {
        let remainder_bound = certify_remainder(&form, &pure_part, b, power)?;
        Ok(Self { form, pure_part, data, remainder_bound })
    }

    /// The bounded gauged form ξ⋉_p ψ = Γ_p(ξ)(Ψ − Ξ)Γ^p(ξ).
    pub fn bounded_gauged_form(&self, p: f64) -> OneForm {
        let data = self.data.clone();
        let psi = self.form.coeff_fn();
        let x = self.data.generator.clone();
        OneForm::new(self.form.dim(), move |t| {
            let g = pure_primitive_closed_form(&data, p, t).expect("t > 0");
            let ginv = pure_primitive_closed_form(&data, t, p).expect("t > 0");
            let rem = psi(t) + &x * (1.0 / t);
            g * rem * ginv
        })
    }
}

/// Bounded and pure factors of Γ_p^t(ψ) at each t of a decreasing list.
pub fn factorize_track(pf: &PoleForm, p: f64, ts: &[f64], opts: &StepOptions) -> Result<Vec<(MinkEndo, MinkEndo)>> {
    if !pf.data.first_kind {
        return Err(Error::NotFirstKind);
    }
    let phi = pf.bounded_gauged_form(p);
    let bounded = primitive_track(&phi, p, ts, Chart::Log, opts)?;
    bounded
        .into_iter()
        .zip(ts)
        .map(|(b, &t)| Ok((b, pure_primitive_closed_form(&pf.data, p, t)?)))
        .collect()
}

/// Γ_p^t(ψ) = Γ_p^t(ξ⋉_p ψ) Γ_p^t(ξ): returns (bounded factor, pure factor).
pub fn factorize_primitive(pf: &PoleForm, p: f64, t: f64, opts: &StepOptions) -> Result<(MinkEndo, MinkEndo)> {
    Ok(factorize_track(pf, p, &[t], opts)?.remove(0))
}

/// Rank-one limits of Γ_p^t(ψ) and Γ_t^p(ψ) as t → 0.
#[derive(Debug, Clone)]
pub struct RankOneLimit {
    pub k_p: MinkVector,
    /// v₀ (degenerate) or v₋ (Minkowski).
    pub direction: MinkVector,
    /// ⟨k(p) v*⟩.
    pub limit_fwd: ProjectiveMap,
    /// ⟨v k(p)*⟩, obtained as the adjoint of the forward limit.
    pub limit_bwd: ProjectiveMap,
    /// Gap between the last two estimates of k(p) (Euclidean, normalized).
    pub cauchy_gap: f64,
}

/// Parameters at which k(p) is estimated.
pub const RANK_ONE_SAMPLES: [f64; 2] = [1e-10, 1e-12];

/// Estimates k(p) for a degenerate or Minkowski pole form:
/// degenerate k(p) = lim B(t) v₀ with B the bounded factor; Minkowski
/// k(p) = lim (t/p)^ζ Γ_p^t(ψ) v₊/ζ.
pub fn rank_one_limit_of_primitive(pf: &PoleForm, p: f64, opts: &StepOptions) -> Result<RankOneLimit> {
    let ts: Vec<f64> = RANK_ONE_SAMPLES.iter().map(|r| p * r).collect();
    let (ks, direction) = match pf.data.kind {
        PlaneSignature::Spacelike => return Err(Error::NoLimit),
        PlaneSignature::Degenerate => {
            let v0 = pf.data.v0.clone().expect("degenerate data has v0");
            let track = factorize_track(pf, p, &ts, opts)?;
            (track.into_iter().map(|(b, _)| b * &v0).collect::<Vec<_>>(), v0)
        }
        PlaneSignature::Minkowski => {
            let vp = pf.data.v_plus.clone().expect("Minkowski data has v+");
            let vm = pf.data.v_minus.clone().expect("Minkowski data has v-");
            let z = pf.data.zeta;
            let track = primitive_track(&pf.form, p, &ts, Chart::Log, opts)?;
            (
                track.into_iter().zip(&ts).map(|(g, &t)| g * &vp * ((t / p).powf(z) / z)).collect(),
                vm,
            )
        }
    };
    let k_p = ks.last().expect("two samples").clone();
    let prev = &ks[0];
    let cauchy_gap = crate::projective::vector_line_distance(prev, &k_p)?;
    let fwd = rank_one(&k_p, &direction);
    let limit_bwd = ProjectiveMap::new(mink_adjoint(&fwd))?;
    Ok(RankOneLimit { k_p, direction, limit_fwd: ProjectiveMap::new(fwd)?, limit_bwd, cauchy_gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::{basis_vector, lorentz_defect, NullBasis};
    use crate::projective::proj_map_distance;
    use nalgebra::DVector;

    fn series_expm(a: &MinkEndo) -> MinkEndo {
        let n = a.nrows();
        let s = (a.norm() / 0.25).log2().ceil().max(0.0) as i32;
        let x = a * 2f64.powi(-s);
        let mut term = DMatrix::identity(n, n);
        let mut sum = term.clone();
        for k in 1..30 {
            term = &term * &x / k as f64;
            sum += &term;
        }
        for _ in 0..s {
            sum = &sum * &sum;
        }
        sum
    }

    fn nb() -> NullBasis {
        NullBasis::standard(4).unwrap()
    }

    #[test]
    fn classify_null_pair() {
        let b = nb();
        let xi = PurePoleForm::new(b.o.clone(), b.iota.clone()).unwrap();
        let d = classify_pure_pole_form(&xi, DEFAULT_TOL).unwrap();
        assert_eq!(d.kind, PlaneSignature::Minkowski);
        assert!((d.zeta - 1.0).abs() < 1e-15);
        assert!(!d.first_kind);
        assert!(d.eigen_residual() < 1e-12);
        let vp = d.v_plus.unwrap();
        let vm = d.v_minus.unwrap();
        assert!((mink_inner(&vp, &vm) - d.zeta).abs() < 1e-14);
        assert!((wedge(&vm, &vp) - &d.generator).norm() < 1e-14);
        assert!((vp.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn classify_degenerate_and_spacelike() {
        let b = nb();
        let w = &b.tangent * 2.0;
        let d = classify_pure_pole_form(&PurePoleForm::new(b.o.clone(), w.clone()).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(d.kind, PlaneSignature::Degenerate);
        let v0 = d.v0.clone().unwrap();
        let wt = d.w_tilde.clone().unwrap();
        assert!(crate::projective::vector_line_distance(&v0, &b.o).unwrap() < 1e-15);
        assert!((wedge(&v0, &wt) - &d.generator).norm() < 1e-14);
        assert!(mink_inner(&v0, &wt).abs() < 1e-15);
        assert!(d.first_kind);

        let e1 = basis_vector(4, 0);
        let e2 = basis_vector(4, 1);
        let d = classify_pure_pole_form(&PurePoleForm::new(e1, e2).unwrap(), DEFAULT_TOL).unwrap();
        assert_eq!(d.kind, PlaneSignature::Spacelike);
        assert!((d.zeta - 1.0).abs() < 1e-15);
        assert!(d.first_kind);
        assert!(PurePoleForm::new(b.o.clone(), &b.o * 2.0).is_err());
    }

    fn random_pure(rng: &mut rand_chacha::ChaCha8Rng, kind: PlaneSignature) -> PurePoleForm {
        use rand::Rng;
        let b = nb();
        loop {
            let r = |rng: &mut rand_chacha::ChaCha8Rng| DVector::from_fn(4, |_, _| rng.gen_range(-1.0..1.0));
            let (v, w) = match kind {
                PlaneSignature::Degenerate => {
                    // null v0 and a spacelike vector orthogonal to it
                    let g = series_expm(&(wedge(&r(rng), &r(rng)) * 0.5));
                    let v0 = &g * &b.o * rng.gen_range(0.5..2.0);
                    let x = &g * (&b.tangent * rng.gen_range(0.3..2.0) + &b.o * rng.gen_range(-1.0..1.0));
                    (v0 + &x * 0.3, x)
                }
                _ => (r(rng), r(rng)),
            };
            if let Ok(xi) = PurePoleForm::new(v, w) {
                if plane_signature(&xi.v, &xi.w, 1e-6).ok() == Some(kind) {
                    return xi;
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_series() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for kind in [PlaneSignature::Minkowski, PlaneSignature::Degenerate, PlaneSignature::Spacelike] {
            for _ in 0..30 {
                let xi = random_pure(&mut rng, kind);
                let d = classify_pure_pole_form(&xi, 1e-9).unwrap();
                assert_eq!(d.kind, kind);
                let ratio = 10f64.powf(rng.gen_range(-3.0..3.0));
                let p = 0.7;
                let t = p * ratio;
                let cf = pure_primitive_closed_form(&d, p, t).unwrap();
                let oracle = series_expm(&(&d.generator * (-(t / p).ln())));
                assert!((&cf - &oracle).norm() <= 1e-10 * oracle.norm().max(1.0), "{kind:?}");
            }
        }
    }

    #[test]
    fn closed_form_group_property() {
        let b = nb();
        let xi = PurePoleForm::new(&b.o + &b.tangent * 0.2, &b.iota * 0.6 + &b.tangent).unwrap();
        let d = classify_pure_pole_form(&xi, DEFAULT_TOL).unwrap();
        let (p, t, q) = (0.9, 0.013, 0.2);
        let lhs = pure_primitive_closed_form(&d, p, t).unwrap() * pure_primitive_closed_form(&d, t, q).unwrap();
        let rhs = pure_primitive_closed_form(&d, p, q).unwrap();
        assert!((lhs - &rhs).norm() < 1e-12 * rhs.norm().max(1.0));
        let id = pure_primitive_closed_form(&d, p, p).unwrap();
        assert!((id - DMatrix::identity(4, 4)).norm() < 1e-13);
        assert!(lorentz_defect(&pure_primitive_closed_form(&d, p, t).unwrap()) < 1e-10);
        assert!(pure_primitive_closed_form(&d, 0.0, 1.0).is_err());
    }

    #[test]
    fn minkowski_scaled_limit() {
        let b = nb();
        // ⟨v, w⟩² − ‖v‖²‖w‖² = 1/4 ⇒ ζ = 1/2
        let xi = PurePoleForm::new(b.o.clone(), &b.iota * 0.5).unwrap();
        let d = classify_pure_pole_form(&xi, DEFAULT_TOL).unwrap();
        assert!((d.zeta - 0.5).abs() < 1e-15);
        let (scale, lim) = pure_primitive_scaled_limit(&d, 1.0);
        let lim = lim.unwrap();
        let mut prev = f64::INFINITY;
        for k in [4, 6, 8] {
            let t = 10f64.powi(-k);
            let g = pure_primitive_closed_form(&d, 1.0, t).unwrap() * scale.factor(1.0, t).unwrap();
            let r = (g - &lim).norm();
            assert!(r < prev);
            prev = r;
        }
        assert!(prev <= 1e-3);
        let g = ProjectiveMap::new(pure_primitive_closed_form(&d, 1.0, 1e-8).unwrap()).unwrap();
        assert!(proj_map_distance(&g, &ProjectiveMap::new(lim).unwrap()).unwrap() <= 1e-3);
    }

    #[test]
    fn spacelike_has_no_scaled_limit() {
        let xi = PurePoleForm::new(basis_vector(4, 0), basis_vector(4, 1) * 1.5).unwrap();
        let d = classify_pure_pole_form(&xi, DEFAULT_TOL).unwrap();
        assert_eq!(pure_primitive_scaled_limit(&d, 1.0), (ScaleKind::NoLimit, None));
    }

    #[test]
    fn pure_pole_form_factorizes_trivially() {
        let b = nb();
        let xi = PurePoleForm::new(b.o.clone(), &b.tangent * 1.3).unwrap();
        let pf = PoleForm::new(xi.one_form(), xi.clone(), 1.0).unwrap();
        let (bf, pure) = factorize_primitive(&pf, 0.5, 1e-6, &StepOptions::default()).unwrap();
        assert!((bf - DMatrix::identity(4, 4)).norm() < 1e-12);
        assert!((pure - pure_primitive_closed_form(&pf.data, 0.5, 1e-6).unwrap()).norm() < 1e-15);
    }

    #[test]
    fn pure_minkowski_k_is_seed() {
        let b = nb();
        let xi = PurePoleForm::new(&b.o + &b.tangent * 0.3, &b.iota * 0.4).unwrap();
        let pf = PoleForm::new(xi.one_form(), xi, 1.0).unwrap();
        let lim = rank_one_limit_of_primitive(&pf, 0.5, &StepOptions::default()).unwrap();
        let vp = pf.data.v_plus.clone().unwrap();
        let expected = &vp / pf.data.zeta;
        assert!((&lim.k_p - &expected).norm() < 1e-8 * expected.norm());
        assert!(mink_sq(&lim.k_p).abs() <= 1e-8 * lim.k_p.norm_squared());
        let adj = ProjectiveMap::new(mink_adjoint(lim.limit_fwd.rep())).unwrap();
        assert!(proj_map_distance(&adj, &lim.limit_bwd).unwrap() < 1e-15);
    }

    #[test]
    fn spacelike_rank_one_limit_is_refused() {
        let xi = PurePoleForm::new(basis_vector(4, 0), basis_vector(4, 1)).unwrap();
        let pf = PoleForm::new(xi.one_form(), xi, 1.0).unwrap();
        assert!(matches!(rank_one_limit_of_primitive(&pf, 0.5, &StepOptions::default()), Err(Error::NoLimit)));
    }

    #[test]
    fn second_kind_is_not_factorized() {
        let b = nb();
        let xi = PurePoleForm::new(b.o.clone(), b.iota.clone() * 2.0).unwrap();
        let pf = PoleForm::new(xi.one_form(), xi, 1.0).unwrap();
        assert!(!pf.data.first_kind);
        assert!(matches!(factorize_primitive(&pf, 0.5, 0.1, &StepOptions::default()), Err(Error::NotFirstKind)));
    }

    #[test]
    fn unbounded_remainder_is_rejected() {
        let b = nb();
        let xi = PurePoleForm::new(b.o.clone(), b.tangent.clone()).unwrap();
        let extra = wedge(&b.iota, &b.tangent);
        let x = xi.generator();
        let form = OneForm::new(4, move |t| &x * (-1.0 / t) + &extra * (1.0 / (t * t)));
        assert!(matches!(PoleForm::new(form, xi, 1.0), Err(Error::RemainderUnbounded { .. })));
    }
}
