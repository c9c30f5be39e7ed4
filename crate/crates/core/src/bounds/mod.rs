//! Closed-form counts and the numeric side of the upper-bound argument.
//!
//! The exact formulas return integers (or exact fractions where the printed
//! expression is not integral). The bound functions `f0..f3` are evaluated in
//! double precision; a value within `NEAR_ZERO` of zero is recomputed with
//! [`precise::Fixed`] before its sign is trusted.

pub mod precise;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use precise::Fixed;

/// Values in `(-NEAR_ZERO, NEAR_ZERO]` are re-evaluated at high precision.
pub const NEAR_ZERO: f64 = 1e-9;

/// Fixed parameters of the upper-bound argument.
pub const EPSILON: f64 = 0.053;
pub const BETA: f64 = 0.8;

const MAX_FORMULA_N: usize = 200;

fn check_n(n: usize, lo: usize, what: &str) -> Result<()> {
    if n < lo || n > MAX_FORMULA_N {
        return Err(Error::Domain(format!("{what} is stated for {lo} <= n <= {MAX_FORMULA_N}, got {n}")));
    }
    Ok(())
}

/// Maximum number of maximal independent sets on `n >= 2` vertices:
/// `3^(n/3)`, `4·3^(⌊n/3⌋-1)` or `2·3^⌊n/3⌋` by `n mod 3`.
pub fn moon_moser(n: usize) -> Result<u128> {
    check_n(n, 2, "the Moon–Moser count")?;
    let q = (n / 3) as u32;
    Ok(match n % 3 {
        0 => 3u128.pow(q),
        1 => 4 * 3u128.pow(q - 1),
        _ => 2 * 3u128.pow(q),
    })
}

/// Maximum over trees on `n >= 1` vertices: `2^(n/2-1) + 1` for even `n`,
/// `2^⌊n/2⌋` for odd `n`.
pub fn tree_formula(n: usize) -> Result<u128> {
    check_n(n, 1, "the tree count")?;
    let h = (n / 2) as u32;
    Ok(if n.is_multiple_of(2) { (1u128 << (h - 1)) + 1 } else { 1u128 << h })
}

/// Maximum over triangle-free graphs on `n >= 4` vertices: `2^(n/2)` for
/// even `n`, `5·2^((n-5)/2)` for odd `n`.
pub fn triangle_free_formula(n: usize) -> Result<u128> {
    check_n(n, 4, "the triangle-free count")?;
    Ok(if n.is_multiple_of(2) { 1u128 << (n / 2) } else { 5u128 << ((n - 5) / 2) })
}

/// The connected-graph expression exactly as printed, which is not always an
/// integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrintedValue {
    pub numerator: u128,
    pub denominator: u128,
}

impl PrintedValue {
    pub fn is_integer(&self) -> bool {
        self.denominator == 1
    }

    pub fn as_integer(&self) -> Option<u128> {
        self.is_integer().then_some(self.numerator)
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

/// Printed case split, with `q = ⌊n/3⌋`:
/// `2/3·3^q + 1/2·2^q`, `3^q + 1/2·3^q`, `4/3·3^q + 4/3·3^q`.
pub fn connected_formula_printed(n: usize) -> Result<PrintedValue> {
    check_n(n, 1, "the connected-graph expression")?;
    let q = (n / 3) as u32;
    let p3 = Ratio::from_integer(3u128.pow(q));
    let r = |a: u128, b: u128| Ratio::new(a, b);
    let v = match n % 3 {
        0 => r(2, 3) * p3 + r(1, 2) * Ratio::from_integer(1u128 << q),
        1 => p3 + r(1, 2) * p3,
        _ => r(4, 3) * p3 + r(4, 3) * p3,
    };
    Ok(PrintedValue {
        numerator: *v.numer(),
        denominator: *v.denom(),
    })
}

/// Parameters `(k, ε, β)` together with the derived base `c`,
/// where `c^k = (2+ε)^(1/(1+ε+1/k))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub k: u64,
    pub epsilon: f64,
    pub beta: f64,
    pub c: f64,
}

impl BoundParams {
    pub fn new(k: u64, epsilon: f64, beta: f64) -> Result<Self> {
        if k < 3 {
            return Err(Error::Domain(format!("bound parameters need k >= 3, got {k}")));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!("epsilon must be finite and >= 0, got {epsilon}")));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!("beta must lie in (0, 1], got {beta}")));
        }
        Ok(BoundParams {
            k,
            epsilon,
            beta,
            c: c_of_k(k, epsilon).powf(1.0 / k as f64),
        })
    }

    /// `ε = EPSILON`, `β = BETA`.
    pub fn with_defaults(k: u64) -> Result<Self> {
        BoundParams::new(k, EPSILON, BETA)
    }

    /// `c^k`.
    pub fn c_pow_k(&self) -> f64 {
        c_of_k(self.k, self.epsilon)
    }

    /// Component-size threshold `B = βk`.
    pub fn threshold(&self) -> f64 {
        self.beta * self.k as f64
    }
}

/// `c^k = (2+ε)^(1/(1+ε+1/k))`.
pub fn c_of_k(k: u64, epsilon: f64) -> f64 {
    (2.0 + epsilon).powf(1.0 / (1.0 + epsilon + 1.0 / k as f64))
}

/// Which of the four bound functions to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundFn {
    F0,
    F1,
    F2,
    F3,
}

impl BoundFn {
    pub const ALL: [BoundFn; 4] = [BoundFn::F0, BoundFn::F1, BoundFn::F2, BoundFn::F3];

    pub fn name(self) -> &'static str {
        match self {
            BoundFn::F0 => "f0",
            BoundFn::F1 => "f1",
            BoundFn::F2 => "f2",
            BoundFn::F3 => "f3",
        }
    }

    pub fn eval(self, k: u64, epsilon: f64, beta: f64) -> f64 {
        match self {
            BoundFn::F0 => f0(k, epsilon, beta),
            BoundFn::F1 => f1(k, epsilon, beta),
            BoundFn::F2 => f2(k, epsilon, beta),
            BoundFn::F3 => f3(k, epsilon, beta),
        }
    }

    pub fn eval_precise(self, k: u64, epsilon: f64, beta: f64) -> Fixed {
        Terms::precise(k, epsilon, beta).combine(self)
    }
}

impl std::str::FromStr for BoundFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BoundFn::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown bound function `{s}`")))
    }
}

/// Shared arithmetic for the f64 and fixed-point evaluations, so both
/// routes read the same transcription.
trait Real: Sized {
    fn lit(num: i64, den: i64) -> Self;
    fn param(x: f64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn powf(&self, y: &Self) -> Self;
}

impl Real for f64 {
    fn lit(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn param(x: f64) -> Self {
        x
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn powf(&self, y: &Self) -> Self {
        f64::powf(*self, *y)
    }
}

impl Real for Fixed {
    fn lit(num: i64, den: i64) -> Self {
        Fixed::from_ratio(num, den)
    }
    fn param(x: f64) -> Self {
        Fixed::from_f64(x)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn powf(&self, y: &Self) -> Self {
        Fixed::powf(self, y)
    }
}

struct Terms<R> {
    k: R,
    eps: R,
    beta: R,
    /// `c^k`
    ck: R,
}

impl Terms<Fixed> {
    fn precise(k: u64, epsilon: f64, beta: f64) -> Self {
        Terms::build(k, epsilon, beta)
    }
}

impl<R: Real> Terms<R> {
    fn build(k: u64, epsilon: f64, beta: f64) -> Self {
        let one = R::lit(1, 1);
        let kr = R::lit(k as i64, 1);
        let eps = R::param(epsilon);
        let ck = R::lit(2, 1)
            .add(&eps)
            .powf(&one.div(&one.add(&eps).add(&one.div(&kr))));
        Terms {
            k: kr,
            eps,
            beta: R::param(beta),
            ck,
        }
    }

    /// `c^p = (c^k)^(p/k)`.
    fn c_pow(&self, p: &R) -> R {
        self.ck.powf(&p.div(&self.k))
    }

    fn combine(&self, which: BoundFn) -> R {
        let one = R::lit(1, 1);
        let (k, eps, beta, ck) = (&self.k, &self.eps, &self.beta, &self.ck);
        let ck2 = ck.mul(ck);
        let ope = one.add(eps); // 1 + ε
        let k_m1 = k.sub(&one); // k - 1
        let bk_m1 = beta.mul(k).sub(&one); // βk - 1
        let k_over = k.div(&k_m1); // k / (k-1)
        match which {
            BoundFn::F0 => {
                // c^{2k} - c^{k-1} - (1+ε)(βk-1)/(k-1)·c^{k-2} - (1+ε)(1+ε-β)·k/(k-1)
                let t1 = self.c_pow(&k_m1);
                let t2 = ope.mul(&bk_m1).div(&k_m1).mul(&self.c_pow(&k.sub(&R::lit(2, 1))));
                let t3 = ope.mul(&ope.sub(beta)).mul(&k_over);
                ck2.sub(&t1).sub(&t2).sub(&t3)
            }
            BoundFn::F1 => {
                // c^{2k} - c^k - (1+ε)β·c^k - (1+ε)(1+ε-β)(1+1/1000)
                let t2 = ope.mul(beta).mul(ck);
                let t3 = ope.mul(&ope.sub(beta)).mul(&R::lit(1001, 1000));
                ck2.sub(ck).sub(&t2).sub(&t3)
            }
            BoundFn::F2 => {
                // c^{2k} - c^k - (1+ε-β)(βk-1)/(k-1)·c^k - (1+ε-β)(1+ε)·k/(k-1)
                //   - (1+ε)(k(1+ε)-1)/(k-1)·c^{k-βk}
                let omb = ope.sub(beta);
                let t2 = omb.mul(&bk_m1).div(&k_m1).mul(ck);
                let t3 = omb.mul(&ope).mul(&k_over);
                let t4 = ope
                    .mul(&k.mul(&ope).sub(&one))
                    .div(&k_m1)
                    .mul(&self.c_pow(&k.sub(&beta.mul(k))));
                ck2.sub(ck).sub(&t2).sub(&t3).sub(&t4)
            }
            BoundFn::F3 => {
                // c^{2k} - c^k - (1+ε-β)β·c^k - (1+ε-β)(1+ε+2/1000)
                //   - (1+ε)(1+ε(1+1/1000))·c^{(1-β)k}
                let omb = ope.sub(beta);
                let t2 = omb.mul(beta).mul(ck);
                let t3 = omb.mul(&ope.add(&R::lit(2, 1000)));
                let t4 = ope
                    .mul(&one.add(&eps.mul(&R::lit(1001, 1000))))
                    .mul(&ck.powf(&one.sub(beta)));
                ck2.sub(ck).sub(&t2).sub(&t3).sub(&t4)
            }
        }
    }
}

pub fn f0(k: u64, epsilon: f64, beta: f64) -> f64 {
    Terms::<f64>::build(k, epsilon, beta).combine(BoundFn::F0)
}

pub fn f1(k: u64, epsilon: f64, beta: f64) -> f64 {
    Terms::<f64>::build(k, epsilon, beta).combine(BoundFn::F1)
}

pub fn f2(k: u64, epsilon: f64, beta: f64) -> f64 {
    Terms::<f64>::build(k, epsilon, beta).combine(BoundFn::F2)
}

pub fn f3(k: u64, epsilon: f64, beta: f64) -> f64 {
    Terms::<f64>::build(k, epsilon, beta).combine(BoundFn::F3)
}

/// Double-precision value, replaced by the fixed-point value when it falls
/// in `(-NEAR_ZERO, NEAR_ZERO]`. The flag reports whether that happened.
pub fn eval_certified(which: BoundFn, k: u64, epsilon: f64, beta: f64) -> (f64, bool) {
    let v = which.eval(k, epsilon, beta);
    if v > -NEAR_ZERO && v <= NEAR_ZERO {
        (which.eval_precise(k, epsilon, beta).to_f64(), true)
    } else {
        (v, false)
    }
}

/// Minimum of one bound function over an integer range of `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub function: BoundFn,
    pub k_lo: u64,
    pub k_hi: u64,
    pub epsilon: f64,
    pub beta: f64,
    pub min_value: f64,
    pub argmin_k: u64,
    pub all_positive: bool,
    /// Values of `k` whose sign was settled at high precision.
    pub refined: Vec<u64>,
}

pub fn sweep_positivity(which: BoundFn, k_lo: u64, k_hi: u64, epsilon: f64, beta: f64) -> Result<SweepReport> {
    if k_lo < 3 {
        return Err(Error::Domain(format!("sweeps start at k >= 3, got {k_lo}")));
    }
    if k_hi < k_lo {
        return Err(Error::Domain(format!("empty range {k_lo}..={k_hi}")));
    }
    let (min_value, argmin_k, refined) = (k_lo..=k_hi)
        .into_par_iter()
        .map(|k| {
            let (v, precise) = eval_certified(which, k, epsilon, beta);
            (v, k, if precise { vec![k] } else { vec![] })
        })
        .reduce(
            || (f64::INFINITY, u64::MAX, Vec::new()),
            |a, b| {
                let mut refined = a.2;
                refined.extend(b.2);
                let keep_a = a.0 < b.0 || (a.0 == b.0 && a.1 <= b.1);
                let (v, k) = if keep_a { (a.0, a.1) } else { (b.0, b.1) };
                (v, k, refined)
            },
        );
    let mut refined = refined;
    refined.sort_unstable();
    Ok(SweepReport {
        function: which,
        k_lo,
        k_hi,
        epsilon,
        beta,
        min_value,
        argmin_k,
        all_positive: min_value > 0.0,
        refined,
    })
}

/// Per-`k` values, for CSV export.
pub fn sweep_values(which: BoundFn, k_lo: u64, k_hi: u64, epsilon: f64, beta: f64) -> Vec<(u64, f64)> {
    (k_lo..=k_hi)
        .into_par_iter()
        .map(|k| (k, eval_certified(which, k, epsilon, beta).0))
        .collect()
}

/// `2^ε > (1+ε/2)^(1+1/k)`.
pub fn remark_inequality(epsilon: f64, k: u64) -> bool {
    2f64.powf(epsilon) > (1.0 + epsilon / 2.0).powf(1.0 + 1.0 / k as f64)
}

/// `1+ε+1/k <= (2+ε)·ln(2+ε)`, the sign condition for `f'(ε) <= 0`.
pub fn appendix_condition(epsilon: f64, k: u64) -> bool {
    1.0 + epsilon + 1.0 / k as f64 <= (2.0 + epsilon) * (2.0 + epsilon).ln()
}

/// Samples `f(ε) = (2+ε)^(1/(1+ε+1/k))` on `grid` (sorted ascending) and
/// checks it never increases.
pub fn f_eps_monotone_check(k: u64, grid: &[f64]) -> bool {
    let values: Vec<f64> = grid.iter().map(|&e| c_of_k(k, e)).collect();
    grid.windows(2).all(|w| w[0] <= w[1]) && values.windows(2).all(|w| w[1] <= w[0])
}

/// `t^(k/m)`: the lower bound on `ζ_k^k` from `m(k,t) <= m`.
pub fn construction_rate(k: u64, t: u64, m_value: u64) -> f64 {
    (t as f64).powf(k as f64 / m_value as f64)
}

/// `((k+δ)/k)^(n/(δ+1))`.
pub fn nagy_degree_bound(k: u64, delta: u64, n: u64) -> f64 {
    ((k + delta) as f64 / k as f64).powf(n as f64 / (delta + 1) as f64)
}

/// Where `c^k` first exceeds `threshold` for fixed ε, if it does below `k_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossover {
    pub epsilon: f64,
    pub threshold: f64,
    /// `lim c^k = (2+ε)^(1/(1+ε))`, printed to 30 digits.
    pub limit: String,
    pub max_value: f64,
    pub first_k_above: Option<u64>,
}

/// `c^k` is increasing in `k`, so a binary search on the high-precision value
/// finds the first `k` with `c^k > threshold`.
pub fn ck_crossover(epsilon: f64, threshold: f64, k_lo: u64, k_max: u64) -> Crossover {
    let above = |k: u64| Terms::<Fixed>::build(k, epsilon, 0.5).ck > Fixed::from_f64(threshold);
    let first_k_above = if !above(k_max) {
        None
    } else if above(k_lo) {
        Some(k_lo)
    } else {
        let (mut lo, mut hi) = (k_lo, k_max);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if above(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Some(hi)
    };
    let eps = Fixed::from_f64(epsilon);
    let limit = (&Fixed::from_int(2) + &eps).powf(&(&Fixed::one() / &(&Fixed::one() + &eps)));
    Crossover {
        epsilon,
        threshold,
        limit: limit.to_decimal(30),
        max_value: (k_lo..=k_max).step_by(((k_max - k_lo) / 1000).max(1) as usize)
            .chain(std::iter::once(k_max))
            .map(|k| c_of_k(k, epsilon))
            .fold(f64::MIN, f64::max),
        first_k_above,
    }
}
