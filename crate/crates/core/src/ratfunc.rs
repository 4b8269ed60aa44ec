//! Rational functions: quotients of multivariate polynomials, kept reduced.
//!
//! Invariants: denominator nonzero, numerator/denominator coprime, and the
//! denominator's leading graded-lex coefficient normalized to 1.

use std::fmt;

use num_traits::{One, Zero};

use crate::multipoly::MultiPoly;
use crate::num::{Rat, Symbol};

#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let mut rf = RatFunc { num, den };
        rf.reduce();
        rf
    }

    pub fn from_poly(p: MultiPoly) -> RatFunc {
        let den = MultiPoly::one(p.vars.clone());
        RatFunc { num: p, den }
    }

    pub fn zero(vars: Vec<Symbol>) -> RatFunc {
        RatFunc::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: Vec<Symbol>) -> RatFunc {
        RatFunc::from_poly(MultiPoly::one(vars))
    }

    pub fn constant(vars: Vec<Symbol>, c: Rat) -> RatFunc {
        RatFunc::from_poly(MultiPoly::constant(vars, c))
    }

    pub fn var(vars: Vec<Symbol>, v: Symbol) -> RatFunc {
        RatFunc::from_poly(MultiPoly::var(vars, v))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = MultiPoly::one(self.num.vars.clone());
            return;
        }
        let g = self.num.gcd(&self.den);
        if !g.is_constant() {
            self.num = self.num.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        // normalize denominator leading coefficient to 1
        let lc = self.den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            self.den = self.den.scale(&inv);
            self.num = self.num.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> RatFunc {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.num.vars.clone());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: usize) -> RatFunc {
        let mut acc = RatFunc::one(self.num.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute a rational for one variable. None if the denominator
    /// vanishes identically after substitution.
    pub fn eval_var(&self, v: Symbol, x: &Rat) -> Option<RatFunc> {
        let den = self.den.eval_var(v, x);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(self.num.eval_var(v, x), den))
    }

    /// Full evaluation; None at a pole.
    pub fn eval_all(&self, xs: &[Rat]) -> Option<Rat> {
        let d = self.den.eval_all(xs);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_all(xs) / d)
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_constant() && self.num.is_constant() {
            Some(self.num.constant_value().unwrap() / self.den.constant_value().unwrap())
        } else {
            None
        }
    }

    /// Substitute polynomials for every variable (e.g. shifts like n -> n+1).
    /// `subs` maps each variable of `self` to a polynomial over `new_vars`.
    pub fn substitute(&self, new_vars: &[Symbol], subs: &[(Symbol, MultiPoly)]) -> RatFunc {
        let sub_poly = |p: &MultiPoly| -> MultiPoly {
            let mut acc = MultiPoly::zero(new_vars.to_vec());
            for (e, c) in &p.terms {
                let mut term = MultiPoly::constant(new_vars.to_vec(), c.clone());
                for (i, &d) in e.iter().enumerate() {
                    if d > 0 {
                        let v = p.vars[i];
                        let rep = subs
                            .iter()
                            .find(|(s, _)| *s == v)
                            .map(|(_, q)| q.clone())
                            .unwrap_or_else(|| MultiPoly::var(new_vars.to_vec(), v));
                        term = term.mul(&rep.pow(d as usize));
                    }
                }
                acc = acc.add(&term);
            }
            acc
        };
        RatFunc::new(sub_poly(&self.num), sub_poly(&self.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_value().unwrap().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn vars() -> Vec<Symbol> {
        vec![Symbol::new("n"), Symbol::new("k")]
    }

    fn n() -> RatFunc {
        RatFunc::var(vars(), Symbol::new("n"))
    }

    fn k() -> RatFunc {
        RatFunc::var(vars(), Symbol::new("k"))
    }

    #[test]
    fn reduction() {
        // (n^2-k^2)/(n+k) = n-k
        let f = RatFunc::new(
            n().num.mul(&n().num).sub(&k().num.mul(&k().num)),
            n().num.add(&k().num),
        );
        assert_eq!(f, n().sub(&k()));
    }

    #[test]
    fn field_laws() {
        let a = n().div(&k().add(&RatFunc::one(vars())));
        let b = k().sub(&n()).div(&n().add(&RatFunc::constant(vars(), rat(2))));
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b).div(&b), a);
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn substitution_shift() {
        // f = 1/(n+k); substitute n -> n+1 gives 1/(n+1+k)
        let f = RatFunc::one(vars()).div(&n().add(&k()));
        let np1 = MultiPoly::var(vars(), Symbol::new("n"))
            .add(&MultiPoly::one(vars()));
        let shifted = f.substitute(&vars(), &[(Symbol::new("n"), np1)]);
        for x in 0..5 {
            for y in 0..5 {
                let direct = f.eval_all(&[rat(x + 1), rat(y)]);
                let via = shifted.eval_all(&[rat(x), rat(y)]);
                assert_eq!(direct, via);
            }
        }
    }
}
