//! Partial fraction decomposition of univariate rational functions over Q.
//!
//! The denominator is split by square-free decomposition followed by
//! rational-root extraction and Kronecker-style interpolation splitting
//! (attempted for factor degree <= 4, total degree <= 8). Callers with
//! deeper knowledge can pass factor hints that are divided out first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::num::{rat, rat_big, Rat, Symbol};
use crate::unipoly::UniPoly;

/// One term `numerator / factor^multiplicity` of a decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionTerm {
    pub factor: UniPoly,
    pub multiplicity: usize,
    pub numerator: UniPoly,
}

#[derive(Clone, Debug)]
pub struct PartialFractions {
    pub polynomial_part: UniPoly,
    pub terms: Vec<PartialFractionTerm>,
}

/// Square-free decomposition by Yun's algorithm: returns `[(g_i, i)]` with
/// `p = prod g_i^i`, all `g_i` square-free and pairwise coprime.
pub fn squarefree_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    if p.is_zero() || p.degree() == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let d = p.derivative();
    let mut a = p.gcd(&d);
    let mut b = p.div_exact(&a);
    let mut c = d.div_exact(&a);
    let mut i = 1;
    loop {
        let z = c.sub(&b.derivative());
        if z.is_zero() {
            if b.degree() > 0 {
                out.push((b.monic(), i));
            }
            break;
        }
        a = b.gcd(&z);
        if a.degree() > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a);
        c = z.div_exact(&a);
        i += 1;
    }
    out
}

/// All rational roots of `p`, by divisor search on the primitive form.
pub fn rational_roots(p: &UniPoly) -> Vec<Rat> {
    let q = p.primitive_normalized();
    if q.is_zero() {
        return Vec::new();
    }
    let ints = q.integer_coeffs().expect("primitive form is integral");
    // strip trailing zero constant terms: root 0
    let mut roots = Vec::new();
    let mut low = 0;
    while low < ints.len() && ints[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        roots.push(Rat::zero());
    }
    if low >= ints.len().saturating_sub(1) {
        return roots;
    }
    let a0 = ints[low].abs();
    let an = ints.last().unwrap().abs();
    let p_divs = divisors(&a0);
    let q_divs = divisors(&an);
    for pd in &p_divs {
        for qd in &q_divs {
            for sign in [1i64, -1] {
                let cand = Rat::new(pd * sign, qd.clone());
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // divisor enumeration is only used on content-stripped leading/trailing
    // coefficients, which stay small enough in practice for trial division
    let mut out = Vec::new();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let other = n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
        if out.len() > 4000 {
            break; // give up on pathological inputs; factors just stay coarse
        }
    }
    out.sort();
    out
}

/// Factor a square-free polynomial into irreducible (or unsplit) monic
/// factors: rational roots first, then Kronecker interpolation for factor
/// degree <= 4 while total degree <= 8.
pub fn factor_squarefree(p: &UniPoly) -> Vec<UniPoly> {
    let mut out = Vec::new();
    let mut rem = p.monic();
    if rem.degree() == 0 {
        return out;
    }
    // linear factors
    for r in rational_roots(&rem) {
        let lin = UniPoly::new(p.var, vec![-r, Rat::one()]);
        while lin.divides(&rem) {
            rem = rem.div_exact(&lin);
            out.push(lin.clone());
        }
    }
    // Kronecker splitting on what is left
    loop {
        if rem.degree() <= 1 {
            break;
        }
        if rem.degree() > 8 {
            break;
        }
        match kronecker_split(&rem) {
            Some((f, g)) => {
                out.extend(factor_squarefree(&f));
                rem = g;
            }
            None => break,
        }
    }
    if rem.degree() > 0 {
        out.push(rem.monic());
    }
    out.sort_by_key(|f| f.degree());
    out
}

/// One Kronecker splitting step: find a monic factor of degree 2..=4 by
/// interpolating through divisors of integer evaluations.
fn kronecker_split(p: &UniPoly) -> Option<(UniPoly, UniPoly)> {
    let prim = p.primitive_normalized();
    let half = p.degree() / 2;
    for d in 2..=half.min(4) {
        // evaluation points 0, 1, -1, 2, -2, ...
        let points: Vec<Rat> = (0..=d as i64)
            .map(|i| if i % 2 == 0 { rat(i / 2) } else { rat(-(i / 2) - 1) })
            .collect();
        let values: Vec<BigInt> = points.iter().map(|x| prim.eval(x).to_integer()).collect();
        if values.iter().any(|v| v.is_zero()) {
            // a rational root slipped through; caller already stripped them
            continue;
        }
        let divisor_lists: Vec<Vec<BigInt>> = values
            .iter()
            .map(|v| {
                let mut ds = divisors(&v.abs());
                let negs: Vec<BigInt> = ds.iter().map(|d| -d).collect();
                ds.extend(negs);
                ds
            })
            .collect();
        if divisor_lists.iter().map(|l| l.len()).product::<usize>() > 4_000_000 {
            continue;
        }
        let mut idx = vec![0usize; d + 1];
        'odometer: loop {
            let cand_vals: Vec<Rat> = idx
                .iter()
                .zip(&divisor_lists)
                .map(|(&i, l)| rat_big(l[i].clone()))
                .collect();
            if let Some(f) = interpolate(&points, &cand_vals, p.var) {
                if f.degree() == d && f.divides(&prim) {
                    let g = prim.div_exact(&f);
                    return Some((f.monic(), g.monic()));
                }
            }
            let mut pos = 0;
            loop {
                if pos > d {
                    break 'odometer; // exhausted this degree
                }
                idx[pos] += 1;
                if idx[pos] < divisor_lists[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
        }
    }
    None
}

fn interpolate(xs: &[Rat], ys: &[Rat], var: Symbol) -> Option<UniPoly> {
    // Lagrange interpolation
    let mut acc = UniPoly::zero(var);
    for i in 0..xs.len() {
        let mut basis = UniPoly::constant(var, Rat::one());
        let mut denom = Rat::one();
        for j in 0..xs.len() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::new(var, vec![-xs[j].clone(), Rat::one()]));
            denom *= &xs[i] - &xs[j];
        }
        acc = acc.add(&basis.scale(&(&ys[i] / denom)));
    }
    if acc.is_zero() {
        None
    } else {
        Some(acc)
    }
}

/// Full denominator factorization used by `partial_fractions`: square-free
/// decomposition, then splitting of each square-free part. `hints` are
/// candidate factors divided out first at each multiplicity.
pub fn factor_denominator(d: &UniPoly, hints: &[UniPoly]) -> Vec<(UniPoly, usize)> {
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(d) {
        let mut part = sf;
        for h in hints {
            let hm = h.monic();
            while hm.degree() > 0 && hm.divides(&part) {
                part = part.div_exact(&hm);
                merge_factor(&mut out, hm.clone(), mult);
            }
        }
        for f in factor_squarefree(&part) {
            merge_factor(&mut out, f, mult);
        }
    }
    out
}

fn merge_factor(out: &mut Vec<(UniPoly, usize)>, f: UniPoly, mult: usize) {
    for (g, m) in out.iter_mut() {
        if *g == f && *m == mult {
            // same factor at same multiplicity cannot happen from square-free
            // parts, but hints may repeat; fold them
            *m += mult;
            return;
        }
    }
    out.push((f, mult));
}

/// Exact partial fraction decomposition of `num/den`.
///
/// The result always recombines to the input exactly (checked), with
/// denominators as fine as the factorization managed to split.
pub fn partial_fractions(num: &UniPoly, den: &UniPoly, hints: &[UniPoly]) -> PartialFractions {
    assert!(!den.is_zero(), "zero denominator");
    let var = den.var;
    // strip gcd
    let g = num.gcd(den);
    let (num, den) = if g.degree() > 0 {
        (num.div_exact(&g), den.div_exact(&g))
    } else {
        (num.clone(), den.clone())
    };
    // normalize denominator monic
    let lead = den.leading();
    let den = den.monic();
    let num = num.scale(&lead.recip());

    let (poly_part, rem) = num.div_rem(&den);
    if den.degree() == 0 {
        return PartialFractions { polynomial_part: poly_part, terms: Vec::new() };
    }
    let factors = factor_denominator(&den, hints);
    // unknowns: for each factor q with multiplicity m, numerators A_e of
    // degree < deg q for e = 1..=m; solve rem = sum A_e * den / q^e
    let mut unknown_cols: Vec<(usize, usize, usize)> = Vec::new(); // (factor idx, power, coeff idx)
    for (fi, (q, m)) in factors.iter().enumerate() {
        for e in 1..=*m {
            for c in 0..q.degree() {
                unknown_cols.push((fi, e, c));
            }
        }
    }
    let ncols = unknown_cols.len();
    let nrows = den.degree();
    let mut matrix = vec![vec![Rat::zero(); ncols]; nrows];
    for (col, &(fi, e, c)) in unknown_cols.iter().enumerate() {
        let (q, _) = &factors[fi];
        let carrier = den.div_exact(&q.pow(e)); // den / q^e
        let coeff_poly = carrier.mul(&UniPoly::monomial(var, Rat::one(), c));
        for (row, item) in matrix.iter_mut().enumerate() {
            item[col] = coeff_poly.coeff(row);
        }
    }
    let rhs: Vec<Rat> = (0..nrows).map(|i| rem.coeff(i)).collect();
    let (sol, _) = crate::linalg::solve_linear(&matrix, Some(&rhs)).unwrap_solution();
    let mut terms = Vec::new();
    for (fi, (q, m)) in factors.iter().enumerate() {
        for e in 1..=*m {
            let coeffs: Vec<Rat> = unknown_cols
                .iter()
                .zip(&sol)
                .filter(|((f2, e2, _), _)| *f2 == fi && *e2 == e)
                .map(|(_, v)| v.clone())
                .collect();
            let a = UniPoly::new(var, coeffs);
            if !a.is_zero() {
                terms.push(PartialFractionTerm { factor: q.clone(), multiplicity: e, numerator: a });
            }
        }
    }
    let result = PartialFractions { polynomial_part: poly_part, terms };
    debug_assert!(recombine_matches(&result, &num, &den));
    result
}

/// Oracle-style check: recombining the terms over the common denominator
/// reproduces the (monic-denominator) input exactly.
pub fn recombine_matches(pf: &PartialFractions, num: &UniPoly, den: &UniPoly) -> bool {
    let mut acc_num = pf.polynomial_part.mul(den);
    for t in &pf.terms {
        let carrier = den.div_exact(&t.factor.pow(t.multiplicity));
        acc_num = acc_num.add(&t.numerator.mul(&carrier));
    }
    acc_num.sub(num).is_zero()
}
