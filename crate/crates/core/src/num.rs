//! Ground-field scalars and interned variable symbols.
//!
//! [`Rat`] is an exact arbitrary-precision rational (always stored reduced,
//! denominator positive — `num_rational` maintains both invariants).

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

/// Exact rational scalar: the ground field for the whole crate.
pub type Rat = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Rational a/b.
pub fn ratq(a: i64, b: i64) -> Rat {
    Rat::new(BigInt::from(a), BigInt::from(b))
}

/// Rational from a big integer.
pub fn rat_big(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// Exact factorial.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Exact binomial coefficient, zero outside `0 <= k <= n` handled by caller.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Integer power of a rational (negative exponents invert).
pub fn rat_pow(base: &Rat, exp: i64) -> Rat {
    base.pow(exp as i32)
}

/// Convert to f64 without overflowing on huge numerators/denominators.
///
/// `Ratio::to_f64` is fine for moderate values but the binomials here exceed
/// f64 range, so scale by powers of two first.
pub fn rat_to_f64(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let num = x.numer();
    let den = x.denom();
    let shift = num.bits() as i64 - den.bits() as i64;
    // bring the ratio near 1, convert, then restore the exponent
    let (scaled_num, scaled_den) = if shift >= 0 {
        (num.clone(), den.clone() << shift as u64)
    } else {
        (num.clone() << (-shift) as u64, den.clone())
    };
    // both now have comparable bit length; take 80-bit prefixes
    let bits = scaled_num.bits().max(scaled_den.bits());
    let drop = bits.saturating_sub(80);
    let n_small = (&scaled_num >> drop).to_f64().unwrap_or(f64::NAN);
    let d_small = (&scaled_den >> drop).to_f64().unwrap_or(f64::NAN);
    (n_small / d_small) * 2f64.powi(shift as i32)
}

/// Parse "a/b" or "a" into a rational.
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let num = BigInt::from_str(a.trim()).ok()?;
        let den = BigInt::from_str(b.trim()).ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    } else {
        BigInt::from_str(s).ok().map(Rat::from_integer)
    }
}

/// Decimal rendering with `digits` places, exact truncation toward zero.
pub fn rat_to_decimal(x: &Rat, digits: usize) -> String {
    let neg = x.is_negative();
    let ax = x.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (ax.numer() * &scale) / ax.denom();
    let s = scaled.to_string();
    let (int_part, frac_part) = if s.len() > digits {
        (s[..s.len() - digits].to_string(), s[s.len() - digits..].to_string())
    } else {
        ("0".to_string(), format!("{:0>width$}", s, width = digits))
    };
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

/// Continued-fraction rational reconstruction: best rational approximation of
/// `x` with denominator at most `den_bound`, via convergents.
pub fn rat_reconstruct(x: &Rat, den_bound: &BigInt) -> Rat {
    let mut a = x.numer().clone();
    let mut b = x.denom().clone();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (x.to_integer(), BigInt::one());
    // seed: p1/q1 = floor(x)
    a -= &p1 * &b;
    if a.sign() == Sign::Minus {
        // floor for negatives
        p1 -= 1;
        a += &b;
    }
    loop {
        if a.is_zero() {
            return Rat::new(p1, q1);
        }
        std::mem::swap(&mut a, &mut b);
        let quot = &a / &b;
        a -= &quot * &b;
        let p2 = &quot * &p1 + &p0;
        let q2 = &quot * &q1 + &q0;
        if &q2 > den_bound {
            return Rat::new(p1, q1);
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
    }
}

static SYMBOLS: Lazy<RwLock<Vec<String>>> = Lazy::new(|| RwLock::new(Vec::new()));

/// Interned variable name; cheap to copy and compare.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(u32);

impl Symbol {
    pub fn new(name: &str) -> Symbol {
        {
            let table = SYMBOLS.read().unwrap();
            if let Some(i) = table.iter().position(|s| s == name) {
                return Symbol(i as u32);
            }
        }
        let mut table = SYMBOLS.write().unwrap();
        if let Some(i) = table.iter().position(|s| s == name) {
            return Symbol(i as u32);
        }
        table.push(name.to_string());
        Symbol((table.len() - 1) as u32)
    }

    pub fn name(&self) -> String {
        SYMBOLS.read().unwrap()[self.0 as usize].clone()
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}
