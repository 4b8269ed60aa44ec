//! Multivariate polynomials over the rationals.
//!
//! Terms are a map from exponent vectors to nonzero coefficients. Canonical
//! ordering for display and normalization is graded lexicographic in the
//! fixed variable order. GCDs are computed recursively (primitive part /
//! content in the last variable) so rational functions can be kept reduced.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::num::{rat, Rat, Symbol};
use crate::unipoly::UniPoly;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    pub vars: Vec<Symbol>,
    /// exponent vector (len = vars.len()) -> nonzero coefficient
    pub terms: BTreeMap<Vec<u16>, Rat>,
}

fn grlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MultiPoly {
    pub fn zero(vars: Vec<Symbol>) -> MultiPoly {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<Symbol>, c: Rat) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(vars: Vec<Symbol>) -> MultiPoly {
        MultiPoly::constant(vars, Rat::one())
    }

    /// The monomial c * prod vars[i]^exps[i].
    pub fn monomial(vars: Vec<Symbol>, c: Rat, exps: Vec<u16>) -> MultiPoly {
        assert_eq!(vars.len(), exps.len());
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The variable `v` as a polynomial in the ambient variable list.
    pub fn var(vars: Vec<Symbol>, v: Symbol) -> MultiPoly {
        let i = vars.iter().position(|&s| s == v).expect("variable not in scope");
        let mut e = vec![0u16; vars.len()];
        e[i] = 1;
        MultiPoly::monomial(vars, Rat::one(), e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Symbol) -> u16 {
        let Some(i) = self.vars.iter().position(|&s| s == v) else { return 0 };
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    fn insert_term(&mut self, e: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = MultiPoly::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.insert_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars.clone());
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under graded lex.
    pub fn leading_term(&self) -> Option<(&Vec<u16>, &Rat)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    /// Leading coefficient under graded lex.
    pub fn leading_coeff(&self) -> Rat {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    /// Substitute a rational value for one variable; result keeps the
    /// remaining variables.
    pub fn eval_var(&self, v: Symbol, x: &Rat) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|&s| s == v) else {
            return self.clone();
        };
        let new_vars: Vec<Symbol> = self.vars.iter().copied().filter(|&s| s != v).collect();
        let mut out = MultiPoly::zero(new_vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let deg = ne.remove(i);
            out.insert_term(ne, c * crate::num::rat_pow(x, deg as i64));
        }
        out
    }

    /// Full evaluation at a point given in variable order.
    pub fn eval_all(&self, xs: &[Rat]) -> Rat {
        assert_eq!(xs.len(), self.vars.len());
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    t *= crate::num::rat_pow(&xs[i], d as i64);
                }
            }
            acc += t;
        }
        acc
    }

    /// View as a univariate polynomial in `vars[pos]` with MultiPoly
    /// coefficients in the remaining variables.
    pub fn as_univariate(&self, pos: usize) -> Vec<MultiPoly> {
        let rest: Vec<Symbol> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != pos)
            .map(|(_, &s)| s)
            .collect();
        let deg = self.terms.keys().map(|e| e[pos]).max().unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(rest.clone()); deg + 1];
        for (e, c) in &self.terms {
            let d = e[pos] as usize;
            let mut ne = e.clone();
            ne.remove(pos);
            out[d].insert_term(ne, c.clone());
        }
        out
    }

    /// Inverse of `as_univariate`.
    pub fn from_univariate(vars: &[Symbol], pos: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars.to_vec());
        for (d, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = e.clone();
                ne.insert(pos, d as u16);
                out.insert_term(ne, a.clone());
            }
        }
        out
    }

    /// Convert to a plain UniPoly; panics unless effectively univariate in `v`.
    pub fn to_unipoly(&self, v: Symbol) -> UniPoly {
        let pos = self.vars.iter().position(|&s| s == v).expect("variable not present");
        let coeffs = self.as_univariate(pos);
        UniPoly::new(
            v,
            coeffs
                .iter()
                .map(|c| c.constant_value().expect("polynomial is not univariate"))
                .collect(),
        )
    }

    pub fn from_unipoly(vars: Vec<Symbol>, p: &UniPoly) -> MultiPoly {
        let i = vars.iter().position(|&s| s == p.var).expect("variable not in scope");
        let mut out = MultiPoly::zero(vars);
        for (d, c) in p.coeffs.iter().enumerate() {
            let mut e = vec![0u16; out.vars.len()];
            e[i] = d as u16;
            out.insert_term(e, c.clone());
        }
        out
    }

    /// Exact division; panics if not divisible.
    pub fn div_exact(&self, d: &MultiPoly) -> MultiPoly {
        self.try_div_exact(d).expect("inexact multivariate division")
    }

    /// Exact division, or None if `d` does not divide `self`.
    pub fn try_div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MultiPoly::zero(self.vars.clone()));
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.vars.clone());
        let (dle, dlc) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rle, rlc) = {
                let (e, c) = rem.leading_term().unwrap();
                (e.clone(), c.clone())
            };
            let mut qe = Vec::with_capacity(rle.len());
            for (a, b) in rle.iter().zip(&dle) {
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let qc = rlc / &dlc;
            let qt = MultiPoly::monomial(self.vars.clone(), qc, qe);
            quot = quot.add(&qt);
            rem = rem.sub(&qt.mul(d));
        }
        Some(quot)
    }

    /// Content of the polynomial viewed in `vars[pos]`: gcd of coefficients.
    fn content_wrt(coeffs: &[MultiPoly]) -> MultiPoly {
        let mut g: Option<MultiPoly> = None;
        for c in coeffs {
            if c.is_zero() {
                continue;
            }
            g = Some(match g {
                None => c.clone(),
                Some(acc) => acc.gcd(c),
            });
        }
        g.expect("content of zero polynomial")
    }

    /// Recursive multivariate GCD (primitive PRS). Normalized so the leading
    /// grlex coefficient is positive and the result is integer-primitive.
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.vars, other.vars);
        if self.is_zero() {
            return other.normalized_sign();
        }
        if other.is_zero() {
            return self.normalized_sign();
        }
        if self.is_constant() || other.is_constant() {
            return MultiPoly::one(self.vars.clone());
        }
        // pick the first variable actually appearing in either
        let pos = (0..self.vars.len())
            .find(|&i| {
                self.terms.keys().any(|e| e[i] > 0) || other.terms.keys().any(|e| e[i] > 0)
            })
            .unwrap();
        let a = self.as_univariate(pos);
        let b = other.as_univariate(pos);
        if a.len() == 1 || b.len() == 1 {
            // one of them is free of vars[pos]: gcd of contents
            let ca = Self::content_wrt(&a);
            let cb = Self::content_wrt(&b);
            let g = ca.gcd(&cb);
            return Self::reinsert(&self.vars, pos, g).normalized_sign();
        }
        let ca = Self::content_wrt(&a);
        let cb = Self::content_wrt(&b);
        let cont_gcd = ca.gcd(&cb);
        let pa: Vec<MultiPoly> = a.iter().map(|c| c.div_exact(&ca)).collect();
        let pb: Vec<MultiPoly> = b.iter().map(|c| c.div_exact(&cb)).collect();
        // primitive Euclidean PRS with pseudo-remainders
        let (mut u, mut v) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
        loop {
            if v.is_empty() {
                break;
            }
            let r = pseudo_rem(&u, &v);
            if r.is_empty() {
                u = v;
                break;
            }
            let cr = Self::content_wrt(&r);
            let pr: Vec<MultiPoly> = r.iter().map(|c| c.div_exact(&cr)).collect();
            u = std::mem::replace(&mut v, pr);
        }
        let g_prim = Self::reinsert_univariate(&self.vars, pos, &u);
        let g_cont = Self::reinsert(&self.vars, pos, cont_gcd);
        g_prim.mul(&g_cont).normalized_sign()
    }

    fn reinsert(vars: &[Symbol], pos: usize, p: MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(vars.to_vec());
        for (e, c) in &p.terms {
            let mut ne = e.clone();
            ne.insert(pos, 0);
            out.insert_term(ne, c.clone());
        }
        out
    }

    fn reinsert_univariate(vars: &[Symbol], pos: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(vars.to_vec());
        for (d, c) in coeffs.iter().enumerate() {
            for (e, a) in &c.terms {
                let mut ne = e.clone();
                ne.insert(pos, d as u16);
                out.insert_term(ne, a.clone());
            }
        }
        out
    }

    /// Scale so integer coefficients, content 1, positive leading grlex
    /// coefficient.
    pub fn normalized_sign(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            content = content.gcd(&(c.numer() * &den / c.denom()));
        }
        let mut factor = Rat::new(den, content);
        if self.leading_coeff().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }
}

/// Pseudo-remainder of u by v (both as coefficient vectors in one variable
/// over MultiPoly), standard multiply-through-by-leading-coefficient form.
fn pseudo_rem(u: &[MultiPoly], v: &[MultiPoly]) -> Vec<MultiPoly> {
    let dv = v.len() - 1;
    let lv = v.last().unwrap();
    let mut r: Vec<MultiPoly> = u.to_vec();
    while r.len() > dv {
        let lr = r.last().unwrap().clone();
        let dr = r.len() - 1;
        let mut nr: Vec<MultiPoly> = r.iter().map(|c| c.mul(lv)).collect();
        for (j, vc) in v.iter().enumerate() {
            let idx = dr - dv + j;
            nr[idx] = nr[idx].sub(&vc.mul(&lr));
        }
        nr.pop();
        while nr.last().is_some_and(|c| c.is_zero()) {
            nr.pop();
        }
        r = nr;
        if r.is_empty() {
            break;
        }
    }
    r
}

impl fmt::Display for MultiPoly {
    /// Canonical text form: graded-lex descending, explicit `*`, `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by(|a, b| grlex(b, a));
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
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
            let is_const_term = e.iter().all(|&x| x == 0);
            let show_coeff = !mag.is_one() || is_const_term;
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            let mut printed = show_coeff;
            for (i, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.vars[i].name())?;
                if d > 1 {
                    write!(f, "^{}", d)?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Stirling numbers of the second kind S(i, r).
pub fn stirling2(i: usize, r: usize) -> Rat {
    if i == 0 && r == 0 {
        return Rat::one();
    }
    if r == 0 || r > i {
        return Rat::zero();
    }
    rat(r as i64) * stirling2(i - 1, r) + stirling2(i - 1, r - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratq;

    fn vars() -> Vec<Symbol> {
        vec![Symbol::new("n"), Symbol::new("k")]
    }

    fn pv(v: &str) -> MultiPoly {
        MultiPoly::var(vars(), Symbol::new(v))
    }

    #[test]
    fn arithmetic_and_display() {
        let n = pv("n");
        let k = pv("k");
        let p = n.mul(&n).add(&n.mul(&k).scale(&rat(2))).add(&MultiPoly::constant(vars(), rat(-3)));
        assert_eq!(p.to_string(), "n^2 + 2*n*k - 3");
        assert_eq!(p.eval_all(&[rat(2), rat(5)]), rat(4 + 20 - 3));
    }

    #[test]
    fn exact_division() {
        let n = pv("n");
        let k = pv("k");
        let a = n.add(&k);
        let b = n.sub(&k);
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a), b);
        assert!(prod.try_div_exact(&n.add(&MultiPoly::one(vars()))).is_none());
    }

    #[test]
    fn gcd_bivariate() {
        let n = pv("n");
        let k = pv("k");
        let g = n.add(&k); // n + k
        let a = g.mul(&n.sub(&k)); // (n+k)(n-k)
        let b = g.mul(&g).mul(&k); // (n+k)^2 k
        let got = a.gcd(&b);
        assert_eq!(got, g);
    }

    #[test]
    fn gcd_univariate_matches_unipoly() {
        let nvars = vec![Symbol::new("n")];
        let n = MultiPoly::var(nvars.clone(), Symbol::new("n"));
        let one = MultiPoly::one(nvars.clone());
        // (n^2+n+1)(n^2-n+1) and (n^2+n+1)(n+1)
        let q1 = n.pow(2).add(&n).add(&one);
        let q2 = n.pow(2).sub(&n).add(&one);
        let a = q1.mul(&q2);
        let b = q1.mul(&n.add(&one));
        assert_eq!(a.gcd(&b), q1.normalized_sign());
    }

    #[test]
    fn gcd_coprime_is_one() {
        let n = pv("n");
        let k = pv("k");
        let g = n.add(&MultiPoly::one(vars())).gcd(&k);
        assert_eq!(g, MultiPoly::one(vars()));
    }

    #[test]
    fn normalization_sign_and_content() {
        let n = pv("n");
        let p = n.scale(&ratq(-2, 3)).add(&MultiPoly::constant(vars(), ratq(-4, 3)));
        assert_eq!(p.normalized_sign().to_string(), "n + 2");
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(2, 1), rat(1));
        assert_eq!(stirling2(2, 2), rat(1));
        assert_eq!(stirling2(4, 2), rat(7));
        assert_eq!(stirling2(5, 3), rat(25));
    }
}
