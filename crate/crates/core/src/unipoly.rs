//! Univariate polynomials over the rationals.
//!
//! Coefficients are stored by increasing degree with no trailing zeros, so
//! the leading coefficient of a nonzero polynomial is always nonzero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{rat, Rat, Symbol};

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    pub var: Symbol,
    /// coefficient of x^i at index i; empty means the zero polynomial
    pub coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(var: Symbol, mut coeffs: Vec<Rat>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { var, coeffs }
    }

    pub fn zero(var: Symbol) -> UniPoly {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Symbol, c: Rat) -> UniPoly {
        UniPoly::new(var, vec![c])
    }

    pub fn monomial(var: Symbol, c: Rat, deg: usize) -> UniPoly {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::new(var, coeffs)
    }

    /// The variable itself, x.
    pub fn var_poly(var: Symbol) -> UniPoly {
        UniPoly::monomial(var, Rat::one(), 1)
    }

    /// Polynomial from integer coefficients, lowest degree first.
    pub fn from_ints(var: Symbol, cs: &[i64]) -> UniPoly {
        UniPoly::new(var, cs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = vec![Rat::zero(); self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        UniPoly::new(self.var, out)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.var);
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        UniPoly::new(self.var, out)
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(self.var);
        }
        UniPoly {
            var: self.var,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::constant(self.var, Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics if `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d.coeffs.len()) + 1];
        let dl = d.leading();
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = rem.degree() - d.degree();
            let factor = rem.leading() / &dl;
            quot[shift] = factor.clone();
            let sub = d.mul(&UniPoly::monomial(self.var, factor, shift));
            rem = rem.sub(&sub);
        }
        (UniPoly::new(self.var, quot), rem)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; gcd(0,0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.var);
        }
        UniPoly::new(
            self.var,
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute x -> x + shift.
    pub fn shift(&self, shift: &Rat) -> UniPoly {
        let mut acc = UniPoly::zero(self.var);
        let xs = UniPoly::new(self.var, vec![shift.clone(), Rat::one()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&xs).add(&UniPoly::constant(self.var, c.clone()));
        }
        acc
    }

    /// Scale to integer coefficients with content 1 and positive leading
    /// coefficient; returns the scaled polynomial.
    pub fn primitive_normalized(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * &den / c.denom()).collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if self.leading().is_negative() {
            content = -content;
        }
        for v in &mut ints {
            *v = &*v / &content;
        }
        UniPoly::new(self.var, ints.into_iter().map(Rat::from_integer).collect())
    }

    /// Coefficients as integers, when all of them are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(self.coeffs.iter().map(|c| c.to_integer()).collect())
        } else {
            None
        }
    }
}

impl fmt::Display for UniPoly {
    /// Canonical text form: descending powers, explicit `*`, `^` for powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let var = self.var.name();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "{}", var)?;
                if i > 1 {
                    write!(f, "^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratq;

    fn n() -> Symbol {
        Symbol::new("n")
    }

    #[test]
    fn gcd_shared_root() {
        // (x^2-1, x^2-2x+1) -> x-1
        let p = UniPoly::from_ints(n(), &[-1, 0, 1]);
        let q = UniPoly::from_ints(n(), &[1, -2, 1]);
        assert_eq!(p.gcd(&q), UniPoly::from_ints(n(), &[-1, 1]));
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let p = UniPoly::from_ints(n(), &[2, 4]);
        let z = UniPoly::zero(n());
        assert_eq!(p.gcd(&z), p.monic());
        assert_eq!(p.gcd(&z), UniPoly::new(n(), vec![ratq(1, 2), rat(1)]));
        assert_eq!(z.gcd(&z), z);
    }

    #[test]
    fn gcd_coprime() {
        // (x^3+2x, x^2+1) are coprime
        let p = UniPoly::from_ints(n(), &[0, 2, 0, 1]);
        let q = UniPoly::from_ints(n(), &[1, 0, 1]);
        let g = p.gcd(&q);
        assert_eq!(g, UniPoly::from_ints(n(), &[1]));
        // cross-checked by a brute-force resultant (Sylvester determinant)
        assert!(!resultant_bruteforce(&p, &q).is_zero());
    }

    /// Independent oracle: resultant via cofactor expansion of the Sylvester matrix.
    fn resultant_bruteforce(p: &UniPoly, q: &UniPoly) -> Rat {
        let m = p.degree();
        let k = q.degree();
        let size = m + k;
        let mut mat = vec![vec![Rat::zero(); size]; size];
        for row in 0..k {
            for (j, c) in p.coeffs.iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in q.coeffs.iter().rev().enumerate() {
                mat[k + row][row + j] = c.clone();
            }
        }
        det_cofactor(&mat)
    }

    fn det_cofactor(m: &[Vec<Rat>]) -> Rat {
        let n = m.len();
        if n == 0 {
            return Rat::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rat::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rat>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn gcd_divides_both() {
        let p = UniPoly::from_ints(n(), &[6, 11, 6, 1]); // (x+1)(x+2)(x+3)
        let q = UniPoly::from_ints(n(), &[2, 3, 1]); // (x+1)(x+2)
        let g = p.gcd(&q);
        assert!(g.divides(&p));
        assert!(g.divides(&q));
        assert_eq!(g, UniPoly::from_ints(n(), &[2, 3, 1]));
    }

    #[test]
    fn shift_and_eval_agree() {
        let p = UniPoly::from_ints(n(), &[3, -1, 2]);
        let s = p.shift(&rat(2));
        for x in -4..4 {
            assert_eq!(s.eval(&rat(x)), p.eval(&(rat(x) + rat(2))));
        }
    }

    #[test]
    fn display_canonical() {
        let p = UniPoly::from_ints(n(), &[250, 175, 40, 3]);
        assert_eq!(p.to_string(), "3*n^3 + 40*n^2 + 175*n + 250");
        let q = UniPoly::new(n(), vec![ratq(-1, 2), rat(1)]);
        assert_eq!(q.to_string(), "n - 1/2");
    }

    #[test]
    fn primitive_normalization() {
        let p = UniPoly::new(n(), vec![ratq(-2, 3), ratq(-4, 3)]);
        let q = p.primitive_normalized();
        assert_eq!(q, UniPoly::from_ints(n(), &[1, 2]));
    }
}
