//! Truncated Taylor arithmetic.
//!
//! A [`Jet`] holds the first [`JET_LEN`] Taylor coefficients of a function
//! at a point, `c[k] = f⁽ᵏ⁾(t₀)/k!`. Curves are written once as closures over
//! jets; evaluating them at [`Jet::variable`] yields exact derivatives up to
//! the truncation order, which the frame and gauge constructions need to
//! third and fourth order.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub const JET_LEN: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub c: [f64; JET_LEN],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = v;
        Self { c }
    }

    /// The independent variable at t₀: t₀ + ε.
    pub fn variable(t0: f64) -> Self {
        let mut c = [0.0; JET_LEN];
        c[0] = t0;
        c[1] = 1.0;
        Self { c }
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// k-th derivative at the expansion point.
    pub fn derivative_value(&self, k: usize) -> f64 {
        let mut f = 1.0;
        for i in 2..=k {
            f *= i as f64;
        }
        self.c[k] * f
    }

    /// Jet of the derivative. The top coefficient is lost and set to zero.
    pub fn derivative(&self) -> Self {
        let mut c = [0.0; JET_LEN];
        for k in 0..JET_LEN - 1 {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self { c }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut c = self.c;
        c.iter_mut().for_each(|x| *x *= s);
        Self { c }
    }

    pub fn recip(&self) -> Self {
        let a0 = self.c[0];
        let mut r = [0.0; JET_LEN];
        r[0] = 1.0 / a0;
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += self.c[j] * r[k - j];
            }
            r[k] = -s / a0;
        }
        Self { c: r }
    }

    pub fn sqrt(&self) -> Self {
        let a0 = self.c[0];
        let mut r = [0.0; JET_LEN];
        r[0] = a0.sqrt();
        for k in 1..JET_LEN {
            let mut s = self.c[k];
            for j in 1..k {
                s -= r[j] * r[k - j];
            }
            r[k] = s / (2.0 * r[0]);
        }
        Self { c: r }
    }

    pub fn exp(&self) -> Self {
        // f' = a' f, solved coefficientwise.
        let mut r = [0.0; JET_LEN];
        r[0] = self.c[0].exp();
        for k in 1..JET_LEN {
            let mut s = 0.0;
            for j in 1..=k {
                s += j as f64 * self.c[j] * r[k - j];
            }
            r[k] = s / k as f64;
        }
        Self { c: r }
    }

    pub fn ln(&self) -> Self {
        // f' = a'/a.
        let a0 = self.c[0];
        let mut r = [0.0; JET_LEN];
        r[0] = a0.ln();
        for k in 1..JET_LEN {
            let mut s = k as f64 * self.c[k];
            for j in 1..k {
                s -= j as f64 * r[j] * self.c[k - j];
            }
            r[k] = s / (k as f64 * a0);
        }
        Self { c: r }
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = [0.0; JET_LEN];
        let mut c = [0.0; JET_LEN];
        s[0] = self.c[0].sin();
        c[0] = self.c[0].cos();
        for k in 1..JET_LEN {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let a = j as f64 * self.c[j];
                ss += a * c[k - j];
                cc -= a * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = cc / k as f64;
        }
        (Self { c: s }, Self { c })
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn powi(&self, n: i32) -> Self {
        if n < 0 {
            return self.powi(-n).recip();
        }
        let mut r = Jet::constant(1.0);
        for _ in 0..n {
            r = r * *self;
        }
        r
    }
}

impl From<f64> for Jet {
    fn from(v: f64) -> Self {
        Jet::constant(v)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for k in 0..JET_LEN {
            self.c[k] += rhs.c[k];
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for k in 0..JET_LEN {
            self.c[k] -= rhs.c[k];
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut r = [0.0; JET_LEN];
        for i in 0..JET_LEN {
            if self.c[i] == 0.0 {
                continue;
            }
            for j in 0..JET_LEN - i {
                r[i + j] += self.c[i] * rhs.c[j];
            }
        }
        Jet { c: r }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: f64) -> Jet {
        self.c[0] -= rhs;
        self
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self.scale(1.0 / rhs)
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs.scale(self)
    }
}

/// Minkowski inner product of two jet-valued vectors (timelike last).
pub fn jet_inner(x: &[Jet], y: &[Jet]) -> Jet {
    let n = x.len() - 1;
    let mut s = -(x[n] * y[n]);
    for i in 0..n {
        s = s + x[i] * y[i];
    }
    s
}
