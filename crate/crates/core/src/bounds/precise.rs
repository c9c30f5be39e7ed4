//! Binary fixed-point reals with a few hundred fractional bits.
//!
//! Enough for re-checking the sign of a bound expression whose double
//! precision value lands too close to zero: `ln` and `exp` are evaluated by
//! series to far beyond 30 significant digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Fractional bits carried by every value.
pub const FRAC_BITS: u64 = 320;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn one() -> Self {
        Fixed(BigInt::one() << FRAC_BITS)
    }

    pub fn from_int(v: i64) -> Self {
        Fixed(BigInt::from(v) << FRAC_BITS)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Fixed((BigInt::from(num) << FRAC_BITS) / BigInt::from(den))
    }

    /// Parses a plain decimal such as `0.053` or `-12.5` exactly (up to the
    /// final truncation to `FRAC_BITS`).
    pub fn from_decimal(text: &str) -> Option<Self> {
        let (neg, body) = match text.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int}{frac}0").parse().ok()?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32 + 1);
        let v = Fixed((digits << FRAC_BITS) / scale);
        Some(if neg { -v } else { v })
    }

    /// Exact decimal reading of a double through its shortest round-trip form,
    /// so `0.053` means 53/1000 rather than the nearest binary fraction.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite input");
        let text = format!("{x}");
        if let Some(v) = Fixed::from_decimal(&text) {
            return v;
        }
        // exponent notation never appears for `{}` on f64, but keep a fallback
        let scaled = (x * (1u64 << 52) as f64).round() as i64;
        Fixed((BigInt::from(scaled) << FRAC_BITS) >> 52u32)
    }

    pub fn to_f64(&self) -> f64 {
        let shifted: BigInt = &self.0 >> (FRAC_BITS - 64);
        shifted.to_f64().unwrap_or(f64::NAN) / 2f64.powi(64)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn signum(&self) -> Ordering {
        self.0.sign().cmp(&num_bigint::Sign::NoSign)
    }

    fn raw(v: BigInt) -> Self {
        Fixed(v)
    }

    pub fn ln2() -> Fixed {
        static LN2: OnceLock<Fixed> = OnceLock::new();
        LN2.get_or_init(|| atanh_series(&Fixed::from_ratio(1, 3)).scale_int(2)).clone()
    }

    fn scale_int(&self, m: i64) -> Fixed {
        Fixed(&self.0 * m)
    }

    /// Natural logarithm; panics unless positive.
    pub fn ln(&self) -> Fixed {
        assert!(self.0.is_positive(), "ln of a non-positive value");
        // self = m * 2^e with m in [1, 2)
        let e = self.0.bits() as i64 - 1 - FRAC_BITS as i64;
        let m = if e >= 0 {
            Fixed(&self.0 >> e as u64)
        } else {
            Fixed(&self.0 << (-e) as u64)
        };
        let z = (&m - &Fixed::one()) / (&m + &Fixed::one());
        atanh_series(&z).scale_int(2) + Fixed::ln2().scale_int(e)
    }

    pub fn exp(&self) -> Fixed {
        // self = q ln2 + r with |r| <= ln2 / 2, then r is halved further
        let ln2 = Fixed::ln2();
        let q = (self / &ln2).round_to_int();
        let r = self - &ln2.scale_int(q);
        const HALVINGS: u64 = 24;
        let small = Fixed(&r.0 >> HALVINGS);
        let mut sum = Fixed::one();
        let mut term = Fixed::one();
        let mut i = 1i64;
        loop {
            term = Fixed::raw(&(&term * &small).0 / i);
            if term.0.is_zero() {
                break;
            }
            sum = &sum + &term;
            i += 1;
        }
        for _ in 0..HALVINGS {
            sum = &sum * &sum;
        }
        if q >= 0 {
            Fixed(sum.0 << q as u64)
        } else {
            Fixed(sum.0 >> (-q) as u64)
        }
    }

    /// `self^y` for positive `self`.
    pub fn powf(&self, y: &Fixed) -> Fixed {
        (&self.ln() * y).exp()
    }

    fn round_to_int(&self) -> i64 {
        let half = BigInt::one() << (FRAC_BITS - 1);
        ((&self.0 + half) >> FRAC_BITS)
            .to_i64()
            .expect("exponent fits in i64")
    }
}

/// `atanh(z) = z + z^3/3 + z^5/5 + ...`, for `|z| <= 1/3`.
fn atanh_series(z: &Fixed) -> Fixed {
    let z2 = z * z;
    let mut power = z.clone();
    let mut sum = Fixed::zero();
    let mut d = 1i64;
    loop {
        let term = Fixed::raw(&power.0 / d);
        if term.0.is_zero() {
            break;
        }
        sum = &sum + &term;
        power = &power * &z2;
        d += 2;
    }
    sum
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 + &rhs.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        Fixed((&self.0 * &rhs.0) >> FRAC_BITS)
    }
}

impl Div for &Fixed {
    type Output = Fixed;
    fn div(self, rhs: &Fixed) -> Fixed {
        Fixed((&self.0 << FRAC_BITS) / &rhs.0)
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-self.0)
    }
}

macro_rules! by_value {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Fixed {
            type Output = Fixed;
            fn $m(self, rhs: Fixed) -> Fixed {
                (&self).$m(&rhs)
            }
        }
    )*};
}
by_value!(Add add, Sub sub, Mul mul, Div div);

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fixed({})", self.to_decimal(40))
    }
}

impl Fixed {
    /// Decimal expansion truncated to `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.0.is_negative();
        let mag = self.0.abs();
        let int = &mag >> FRAC_BITS;
        let frac_mask = (BigInt::one() << FRAC_BITS) - 1;
        let frac: BigInt = ((&mag & frac_mask) * BigInt::from(10u32).pow(digits as u32)) >> FRAC_BITS;
        let frac = frac.to_string();
        format!(
            "{}{}.{}{}",
            if neg { "-" } else { "" },
            int,
            "0".repeat(digits.saturating_sub(frac.len())),
            frac
        )
    }
}
