//! Slow arbitrary-precision reference evaluators (640-bit floats).
//!
//! These share nothing with the runtime special-function code: ₁F₁ and J_ν are
//! summed from their defining power series, Γ comes from a shifted Stirling
//! series, and K_ν from the trapezoid rule on
//! K_ν(z) = ∫₀^∞ exp(−z cosh t) cosh(νt) dt.

use std::cell::RefCell;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

pub const PREC: usize = 640;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CC: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

#[derive(Clone, Debug)]
pub struct Mp(BigFloat);

impl Mp {
    pub fn f(x: f64) -> Self {
        Mp(BigFloat::from_f64(x, PREC))
    }

    pub fn int(n: i64) -> Self {
        Mp(BigFloat::from_i64(n, PREC))
    }

    pub fn to_f64(&self) -> f64 {
        format!("{}", self.0).parse().expect("decimal rendering parses")
    }

    pub fn pi() -> Self {
        CC.with(|c| Mp(c.borrow_mut().pi(PREC, RM)))
    }

    pub fn exp(&self) -> Self {
        CC.with(|c| Mp(self.0.exp(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn ln(&self) -> Self {
        CC.with(|c| Mp(self.0.ln(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn sin(&self) -> Self {
        CC.with(|c| Mp(self.0.sin(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn cos(&self) -> Self {
        CC.with(|c| Mp(self.0.cos(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn cosh(&self) -> Self {
        CC.with(|c| Mp(self.0.cosh(PREC, RM, &mut c.borrow_mut())))
    }

    pub fn abs(&self) -> Self {
        Mp(self.0.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// |self| < |other| · 2^-bits
    pub fn negligible_against(&self, other: &Mp, bits: i32) -> bool {
        if self.0.is_zero() {
            return true;
        }
        if other.0.is_zero() {
            return false;
        }
        let es = self.0.exponent().unwrap() as i64;
        let eo = other.0.exponent().unwrap() as i64;
        es < eo - bits as i64
    }
}

impl Add for &Mp {
    type Output = Mp;
    fn add(self, o: &Mp) -> Mp {
        Mp(self.0.add(&o.0, PREC, RM))
    }
}
impl Sub for &Mp {
    type Output = Mp;
    fn sub(self, o: &Mp) -> Mp {
        Mp(self.0.sub(&o.0, PREC, RM))
    }
}
impl Mul for &Mp {
    type Output = Mp;
    fn mul(self, o: &Mp) -> Mp {
        Mp(self.0.mul(&o.0, PREC, RM))
    }
}
impl Div for &Mp {
    type Output = Mp;
    fn div(self, o: &Mp) -> Mp {
        Mp(self.0.div(&o.0, PREC, RM))
    }
}
impl Neg for &Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(self.0.clone().neg())
    }
}

/// B_2 .. B_20
const BERNOULLI: [(i64, i64); 10] = [
    (1, 6),
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
];

/// Γ(x) for real x that is not a non-positive integer, x > −90.
pub fn gamma(x: f64) -> Mp {
    const SHIFT: i64 = 100;
    let xm = Mp::f(x);
    let y = &xm + &Mp::int(SHIFT);
    // ln Γ(y) ≈ (y − ½) ln y − y + ½ ln 2π + Σ B_2k / (2k(2k−1) y^{2k−1})
    let half = Mp::f(0.5);
    let two_pi = &Mp::pi() * &Mp::int(2);
    let mut lg = &(&(&y - &half) * &y.ln()) - &y;
    lg = &lg + &(&half * &two_pi.ln());
    let y2 = &y * &y;
    let mut ypow = y.clone();
    for (k, &(num, den)) in BERNOULLI.iter().enumerate() {
        let k2 = 2 * (k as i64 + 1);
        let coef = &Mp::int(num) / &Mp::int(den * k2 * (k2 - 1));
        lg = &lg + &(&coef / &ypow);
        ypow = &ypow * &y2;
    }
    let mut g = lg.exp();
    for j in 0..SHIFT {
        g = &g / &(&xm + &Mp::int(j));
    }
    g
}

/// ₁F₁(a; b; z) by direct summation.
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Mp {
    let (am, bm, zm) = (Mp::f(a), Mp::f(b), Mp::f(z));
    let mut term = Mp::int(1);
    let mut sum = Mp::int(1);
    for k in 0..20_000i64 {
        let km = Mp::int(k);
        let num = &(&am + &km) * &zm;
        let den = &(&bm + &km) * &Mp::int(k + 1);
        term = &(&term * &num) / &den;
        sum = &sum + &term;
        if term.is_zero() {
            break;
        }
        if (k as f64) > z.abs() + a.abs() && term.negligible_against(&sum, 200) {
            break;
        }
    }
    sum
}

/// J_ν(z) from its power series, z > 0.
pub fn bessel_j(nu: f64, z: f64) -> Mp {
    let zm = Mp::f(z);
    let half_z = &zm / &Mp::int(2);
    let q = &(&half_z * &half_z).neg() * &Mp::int(1);
    let num = Mp::f(nu);
    // (z/2)^ν / Γ(ν+1)
    let lead = &(&num * &half_z.ln()).exp() / &gamma(nu + 1.0);
    let mut term = lead;
    let mut sum = term.clone();
    for k in 1..20_000i64 {
        let km = Mp::int(k);
        term = &(&term * &q) / &(&km * &(&km + &num));
        sum = &sum + &term;
        if (k as f64) > z && term.negligible_against(&sum, 220) {
            break;
        }
    }
    sum
}

/// Y_ν(z) = (J_ν cos νπ − J_{−ν}) / sin νπ, for non-integer ν.
pub fn bessel_y(nu: f64, z: f64) -> Mp {
    assert!(nu != nu.round(), "reference Y needs a non-integer order");
    let arg = &Mp::f(nu) * &Mp::pi();
    let jp = bessel_j(nu, z);
    let jm = bessel_j(-nu, z);
    &(&(&jp * &arg.cos()) - &jm) / &arg.sin()
}

/// K_ν(z) by the trapezoid rule on the cosh integral (exponentially convergent).
pub fn bessel_k(nu: f64, z: f64) -> Mp {
    let h = Mp::f(1.0 / 64.0);
    let (zm, num) = (Mp::f(z), Mp::f(nu.abs()));
    let f = |t: &Mp| -> Mp { &(&zm * &t.cosh()).neg().exp() * &(&num * t).cosh() };
    let mut sum = &f(&Mp::int(0)) / &Mp::int(2);
    let mut k = 1i64;
    loop {
        let t = &h * &Mp::int(k);
        let v = f(&t);
        sum = &sum + &v;
        // integrand is decreasing once z cosh t dominates ν t
        let tf = k as f64 / 64.0;
        if z * tf.sinh() > nu.abs() && v.negligible_against(&sum, 230) {
            break;
        }
        k += 1;
        assert!(k < 400_000, "trapezoid did not terminate");
    }
    &sum * &h
}
