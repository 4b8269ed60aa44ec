//! Truncated power series in x whose coefficients are polynomials in a
//! second variable z (stored as plain coefficient vectors).
//!
//! The one nonstandard operation is [`TruncatedSeries::substitute_dilate`]:
//! the substitution x -> x + x*z used by the tree-height functional
//! equation, which multiplies the n-th x-coefficient by (1+z)^n truncated
//! at the z-order.

use num_traits::Zero;

use crate::num::{rat_big, Rat};
use num_bigint::BigInt;

/// Polynomial in z as a dense coefficient vector, truncated at z^k.
pub type ZPoly = Vec<Rat>;

#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries {
    /// truncation order in x: coefficients 0..=x_order are meaningful
    pub x_order: usize,
    /// truncation order in z: each coefficient vector has length z_order+1
    pub z_order: usize,
    /// coeffs[n][r] = coefficient of x^n z^r
    pub coeffs: Vec<ZPoly>,
}

impl TruncatedSeries {
    pub fn zero(x_order: usize, z_order: usize) -> TruncatedSeries {
        TruncatedSeries {
            x_order,
            z_order,
            coeffs: vec![vec![Rat::zero(); z_order + 1]; x_order + 1],
        }
    }

    /// Series with rational x-coefficients (no z part).
    pub fn from_x_coeffs(cs: &[Rat], z_order: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(cs.len().saturating_sub(1), z_order);
        for (n, c) in cs.iter().enumerate() {
            s.coeffs[n][0] = c.clone();
        }
        s
    }

    pub fn add(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let x_order = self.x_order.min(other.x_order);
        let z_order = self.z_order.min(other.z_order);
        let mut out = TruncatedSeries::zero(x_order, z_order);
        for n in 0..=x_order {
            for r in 0..=z_order {
                out.coeffs[n][r] = &self.coeffs[n][r] + &other.coeffs[n][r];
            }
        }
        out
    }

    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let x_order = self.x_order.min(other.x_order);
        let z_order = self.z_order.min(other.z_order);
        let mut out = TruncatedSeries::zero(x_order, z_order);
        for n in 0..=x_order {
            for m in 0..=x_order - n {
                zpoly_mul_acc(&self.coeffs[n], &other.coeffs[m], &mut out.coeffs[n + m]);
            }
        }
        out
    }

    /// x -> x + x*z: coefficient n gets multiplied by (1+z)^n mod z^{k+1}.
    pub fn substitute_dilate(&self, k: usize) -> TruncatedSeries {
        let z_order = self.z_order.min(k);
        let mut out = TruncatedSeries::zero(self.x_order, z_order);
        for n in 0..=self.x_order {
            out.coeffs[n] = dilate_coeff(&self.coeffs[n], n as u64, z_order);
        }
        out
    }
}

/// c(z) * (1+z)^n mod z^{k+1}.
pub fn dilate_coeff(c: &[Rat], n: u64, k: usize) -> ZPoly {
    let mut out = vec![Rat::zero(); k + 1];
    // binomial row C(n, 0..k)
    let mut binom = BigInt::from(1u8);
    for r in 0..=k as u64 {
        if r > 0 {
            if n + 1 >= r {
                binom = &binom * (n + 1 - r) / r;
            } else {
                binom = BigInt::zero();
            }
        }
        if binom.is_zero() && r > n {
            break;
        }
        let b = rat_big(binom.clone());
        for (i, ci) in c.iter().enumerate() {
            if i + (r as usize) > k {
                break;
            }
            if !ci.is_zero() {
                out[i + r as usize] += ci * &b;
            }
        }
    }
    out
}

fn zpoly_mul_acc(a: &[Rat], b: &[Rat], acc: &mut [Rat]) {
    let k = acc.len();
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() || i >= k {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= k {
                break;
            }
            if !bj.is_zero() {
                acc[i + j] += ai * bj;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    #[test]
    fn dilate_single_x() {
        // s = x, k = 2 -> x(1+z)
        let s = TruncatedSeries::from_x_coeffs(&[rat(0), rat(1)], 2);
        let d = s.substitute_dilate(2);
        assert_eq!(d.coeffs[1], vec![rat(1), rat(1), rat(0)]);
    }

    #[test]
    fn dilate_x_squared() {
        // s = x^2, k = 1 -> x^2 (1+2z)
        let s = TruncatedSeries::from_x_coeffs(&[rat(0), rat(0), rat(1)], 1);
        let d = s.substitute_dilate(1);
        assert_eq!(d.coeffs[2], vec![rat(1), rat(2)]);
    }

    #[test]
    fn dilate_matches_bruteforce_bivariate_expansion() {
        // s = sum_{n<=5} x^n, k = 3: compare against expanding sum (x+xz)^n
        let cs: Vec<Rat> = (0..=5).map(|_| rat(1)).collect();
        let s = TruncatedSeries::from_x_coeffs(&cs, 3);
        let d = s.substitute_dilate(3);
        // brute force: (x+xz)^n = x^n (1+z)^n; expand (1+z)^n by repeated
        // multiplication, no truncation
        for n in 0..=5usize {
            let mut full = vec![rat(1)];
            for _ in 0..n {
                let mut next = vec![rat(0); full.len() + 1];
                for (i, c) in full.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += c;
                }
                full = next;
            }
            for r in 0..=3usize {
                let expect = full.get(r).cloned().unwrap_or_else(Rat::zero);
                assert_eq!(d.coeffs[n][r], expect, "x^{} z^{}", n, r);
            }
        }
    }

    #[test]
    fn mul_truncates_consistently() {
        let a = TruncatedSeries::from_x_coeffs(&[rat(1), rat(1)], 1);
        let b = TruncatedSeries::from_x_coeffs(&[rat(1), rat(2)], 1);
        let p = a.mul(&b);
        assert_eq!(p.coeffs[0][0], rat(1));
        assert_eq!(p.coeffs[1][0], rat(3));
    }
}
