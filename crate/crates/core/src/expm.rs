//! Matrix exponential by scaling and squaring with a diagonal [6/6] Padé
//! approximant.

use nalgebra::DMatrix;

// Coefficients b_k = (12-k)! 6! / (12! k! (6-k)!) of the [6/6] approximant.
const PADE6: [f64; 7] = [
    1.0,
    0.5,
    5.0 / 44.0,
    1.0 / 66.0,
    1.0 / 792.0,
    1.0 / 15840.0,
    1.0 / 665280.0,
];

fn one_norm(a: &DMatrix<f64>) -> f64 {
    (0..a.ncols()).map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// exp(A). The argument is scaled by 2⁻ˢ until its 1-norm is at most ½,
/// where the [6/6] approximant is accurate to well below machine precision.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm: matrix must be square");
    let norm = one_norm(a);
    if norm == 0.0 {
        return DMatrix::identity(n, n);
    }
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let x = a * 2f64.powi(-s);

    let id = DMatrix::<f64>::identity(n, n);
    let x2 = &x * &x;
    let x4 = &x2 * &x2;
    let x6 = &x4 * &x2;
    let even = &id * PADE6[0] + &x2 * PADE6[2] + &x4 * PADE6[4] + &x6 * PADE6[6];
    let odd = &x * (&id * PADE6[1] + &x2 * PADE6[3] + &x4 * PADE6[5]);
    let num = &even + &odd;
    let den = &even - &odd;
    let mut r = den.lu().solve(&num).expect("Padé denominator is invertible for |X| <= 1/2");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: truncated Taylor series after scaling.
    fn series_expm(a: &DMatrix<f64>) -> DMatrix<f64> {
        let n = a.nrows();
        let norm = a.norm();
        let s = if norm > 0.25 { (norm / 0.25).log2().ceil() as i32 } else { 0 };
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

    #[test]
    fn zero_and_diagonal() {
        let z = DMatrix::<f64>::zeros(4, 4);
        assert_eq!(expm(&z), DMatrix::identity(4, 4));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&[1.0, -2.0, 0.5, 3.0]));
        let e = expm(&d);
        for (i, v) in [1.0f64, -2.0, 0.5, 3.0].iter().enumerate() {
            assert!((e[(i, i)] - v.exp()).abs() < 1e-13 * v.exp());
        }
    }

    #[test]
    fn rotation_generator() {
        let mut a = DMatrix::<f64>::zeros(4, 4);
        let th = 2.3;
        a[(1, 0)] = th;
        a[(0, 1)] = -th;
        let e = expm(&a);
        assert!((e[(0, 0)] - th.cos()).abs() < 1e-14);
        assert!((e[(1, 0)] - th.sin()).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_series() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let scale = rng.gen_range(0.01..6.0);
            let a = DMatrix::from_fn(5, 5, |_, _| rng.gen_range(-1.0..1.0)) * scale;
            let e1 = expm(&a);
            let e2 = series_expm(&a);
            assert!((&e1 - &e2).norm() <= 1e-12 * e2.norm());
        }
    }
}
