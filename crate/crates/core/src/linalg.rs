//! Exact linear solving by fraction-free (Bareiss) elimination.
//!
//! Entries live in a field (rationals or rational functions). Each row is
//! first cleared to the underlying integral domain (integers or
//! polynomials), eliminated with the one-step Bareiss rule so every division
//! is exact, and the triangular system is then back-substituted over the
//! field. This keeps intermediate polynomial coefficients from exploding,
//! which matters for the Celine systems over Q(n).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::multipoly::MultiPoly;
use crate::num::Rat;
use crate::ratfunc::RatFunc;

/// Outcome of `solve_linear`: either the full affine solution set or a
/// witness that the system is inconsistent.
#[derive(Clone, Debug)]
pub enum SolveResult<F> {
    Solution { particular: Vec<F>, nullspace: Vec<Vec<F>> },
    NoSolution,
}

impl<F> SolveResult<F> {
    pub fn unwrap_solution(self) -> (Vec<F>, Vec<Vec<F>>) {
        match self {
            SolveResult::Solution { particular, nullspace } => (particular, nullspace),
            SolveResult::NoSolution => panic!("system is inconsistent"),
        }
    }
}

/// Ring operations needed by the elimination core.
pub trait Domain: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    /// Exact division; only ever called on exact multiples.
    fn exact_div(&self, o: &Self) -> Self;
}

impl Domain for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn exact_div(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

impl Domain for MultiPoly {
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn mul(&self, o: &Self) -> Self {
        MultiPoly::mul(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        MultiPoly::sub(self, o)
    }
    fn exact_div(&self, o: &Self) -> Self {
        MultiPoly::div_exact(self, o)
    }
}

/// Row echelon form over the domain produced by Bareiss elimination.
struct Echelon<D> {
    rows: Vec<Vec<D>>,
    /// pivot column of each leading row, in order
    pivots: Vec<usize>,
}

/// `ncols` is the number of coefficient columns; any extra columns are
/// augmented right-hand sides that get eliminated but never pivoted on.
fn bareiss<D: Domain>(mut rows: Vec<Vec<D>>, ncols: usize, one: D) -> Echelon<D> {
    let m = rows.len();
    if m == 0 {
        return Echelon { rows, pivots: Vec::new() };
    }
    let width = rows[0].len();
    let mut prev_pivot = one;
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(pr) = (rank..m).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pr);
        let pivot = rows[rank][col].clone();
        for r in rank + 1..m {
            let factor = rows[r][col].clone();
            for c in 0..width {
                let t = pivot.mul(&rows[r][c]).sub(&factor.mul(&rows[rank][c]));
                rows[r][c] = t.exact_div(&prev_pivot);
            }
        }
        prev_pivot = pivot;
        pivots.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    Echelon { rows, pivots }
}

/// Field operations needed by back-substitution.
pub trait FieldElem: Clone + PartialEq {
    fn f_zero(&self) -> Self;
    fn f_one(&self) -> Self;
    fn f_add(&self, o: &Self) -> Self;
    fn f_sub(&self, o: &Self) -> Self;
    fn f_mul(&self, o: &Self) -> Self;
    fn f_div(&self, o: &Self) -> Self;
    fn f_is_zero(&self) -> bool;
}

impl FieldElem for Rat {
    fn f_zero(&self) -> Self {
        Rat::zero()
    }
    fn f_one(&self) -> Self {
        Rat::one()
    }
    fn f_add(&self, o: &Self) -> Self {
        self + o
    }
    fn f_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn f_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn f_div(&self, o: &Self) -> Self {
        self / o
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl FieldElem for RatFunc {
    fn f_zero(&self) -> Self {
        RatFunc::zero(self.num.vars.clone())
    }
    fn f_one(&self) -> Self {
        RatFunc::one(self.num.vars.clone())
    }
    fn f_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn f_sub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn f_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn f_div(&self, o: &Self) -> Self {
        self.div(o)
    }
    fn f_is_zero(&self) -> bool {
        self.is_zero()
    }
}

fn back_substitute<D: Domain, F: FieldElem>(
    ech: &Echelon<D>,
    ncols: usize,
    has_rhs: bool,
    embed: impl Fn(&D) -> F,
    sample: &F,
) -> SolveResult<F> {
    let zero = sample.f_zero();
    let one = sample.f_one();
    // rows in field form
    let rows: Vec<Vec<F>> = ech.rows.iter().map(|r| r.iter().map(&embed).collect()).collect();
    let rank = ech.pivots.len();
    // consistency: a row with zero coefficients but nonzero rhs
    if has_rhs {
        for row in rows.iter().skip(rank) {
            if row[..ncols].iter().all(|v| v.f_is_zero()) && !row[ncols].f_is_zero() {
                return SolveResult::NoSolution;
            }
        }
    }
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; ncols];
        for (r, &c) in ech.pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let free_cols: Vec<usize> = (0..ncols).filter(|c| pivot_of_col[*c].is_none()).collect();

    // solve with given values for free variables and rhs selector
    let solve_with = |free_vals: &dyn Fn(usize) -> F, rhs_col: bool| -> Vec<F> {
        let mut x = vec![zero.clone(); ncols];
        for &c in &free_cols {
            x[c] = free_vals(c);
        }
        for r in (0..rank).rev() {
            let pc = ech.pivots[r];
            let mut acc = if rhs_col { rows[r][ncols].clone() } else { zero.clone() };
            for c in pc + 1..ncols {
                if !rows[r][c].f_is_zero() && !x[c].f_is_zero() {
                    acc = acc.f_sub(&rows[r][c].f_mul(&x[c]));
                }
            }
            x[pc] = acc.f_div(&rows[r][pc]);
        }
        x
    };

    let particular = if has_rhs {
        solve_with(&|_| zero.clone(), true)
    } else {
        vec![zero.clone(); ncols]
    };
    let mut nullspace = Vec::new();
    for &fc in &free_cols {
        let one_ = one.clone();
        let zero_ = zero.clone();
        let basis = solve_with(
            &move |c| if c == fc { one_.clone() } else { zero_.clone() },
            false,
        );
        nullspace.push(basis);
    }
    SolveResult::Solution { particular, nullspace }
}

/// Exact solve over the rationals. `rhs = None` treats the system as
/// homogeneous and returns the nullspace with a zero particular solution.
pub fn solve_linear(matrix: &[Vec<Rat>], rhs: Option<&[Rat]>) -> SolveResult<Rat> {
    let ncols = matrix.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        let mut full: Vec<Rat> = row.clone();
        if let Some(rhs) = rhs {
            full.push(rhs[i].clone());
        }
        let mut den = BigInt::one();
        for v in &full {
            den = den.lcm(v.denom());
        }
        rows.push(full.iter().map(|v| v.numer() * &den / v.denom()).collect());
    }
    let ech = bareiss(rows, ncols, BigInt::one());
    back_substitute(&ech, ncols, rhs.is_some(), |d| Rat::from_integer(d.clone()), &Rat::zero())
}

/// Exact solve over rational functions (any number of variables).
pub fn solve_linear_rf(matrix: &[Vec<RatFunc>], rhs: Option<&[RatFunc]>) -> SolveResult<RatFunc> {
    assert!(!matrix.is_empty() && !matrix[0].is_empty(), "empty system");
    let vars = matrix[0][0].num.vars.clone();
    let ncols = matrix[0].len();
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        let mut full: Vec<RatFunc> = row.clone();
        if let Some(rhs) = rhs {
            full.push(rhs[i].clone());
        }
        // common denominator of the row
        let mut den = MultiPoly::one(vars.clone());
        for v in &full {
            let g = den.gcd(&v.den);
            den = den.mul(&v.den.div_exact(&g));
        }
        rows.push(
            full.iter()
                .map(|v| v.num.mul(&den.div_exact(&v.den)))
                .collect(),
        );
    }
    let ech = bareiss(rows, ncols, MultiPoly::one(vars.clone()));
    let zero = RatFunc::zero(vars);
    back_substitute(&ech, ncols, rhs.is_some(), |d| RatFunc::from_poly(d.clone()), &zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{rat, ratq, Symbol};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn identity_system() {
        let a = m(&[&[1, 0], &[0, 1]]);
        let rhs = vec![rat(1), rat(2)];
        let (p, ns) = solve_linear(&a, Some(&rhs)).unwrap_solution();
        assert_eq!(p, vec![rat(1), rat(2)]);
        assert!(ns.is_empty());
    }

    #[test]
    fn underdetermined_symmetry() {
        let a = m(&[&[1, 1]]);
        let rhs = vec![rat(0)];
        let (p, ns) = solve_linear(&a, Some(&rhs)).unwrap_solution();
        assert_eq!(p, vec![rat(0), rat(0)]);
        assert_eq!(ns.len(), 1);
        // nullspace spanned by (1,-1) up to scale
        let v = &ns[0];
        assert_eq!(&v[0] + &v[1], rat(0));
        assert!(!v[0].is_zero());
    }

    #[test]
    fn inconsistent() {
        let a = m(&[&[1, 1], &[1, 1]]);
        let rhs = vec![rat(0), rat(1)];
        assert!(matches!(solve_linear(&a, Some(&rhs)), SolveResult::NoSolution));
    }

    #[test]
    fn random_5x5_vs_cramer() {
        // fixed pseudo-random rational matrix; oracle = Cramer determinants by
        // cofactor expansion
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            ((seed % 19) as i64) - 9
        };
        let a: Vec<Vec<Rat>> = (0..5)
            .map(|_| (0..5).map(|_| ratq(next(), (next().abs() + 1).max(1))).collect())
            .collect();
        let rhs: Vec<Rat> = (0..5).map(|_| rat(next())).collect();
        let det = det_cofactor(&a);
        assert!(!det.is_zero());
        let (p, ns) = solve_linear(&a, Some(&rhs)).unwrap_solution();
        assert!(ns.is_empty());
        for i in 0..5 {
            let mut ai = a.clone();
            for r in 0..5 {
                ai[r][i] = rhs[r].clone();
            }
            assert_eq!(p[i], det_cofactor(&ai) / &det, "component {}", i);
        }
        // substitution check
        for r in 0..5 {
            let got: Rat = (0..5).map(|c| &a[r][c] * &p[c]).sum();
            assert_eq!(got, rhs[r]);
        }
    }

    fn det_cofactor(m: &[Vec<Rat>]) -> Rat {
        let n = m.len();
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
            let t = &m[0][j] * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        acc
    }

    #[test]
    fn rational_function_kernel() {
        // over Q(n): rows [n, n^2] and [1, n] have rank 1; kernel (n, -1)
        let vars = vec![Symbol::new("n")];
        let n = RatFunc::var(vars.clone(), Symbol::new("n"));
        let one = RatFunc::one(vars.clone());
        let a = vec![
            vec![n.clone(), n.mul(&n)],
            vec![one.clone(), n.clone()],
        ];
        let (_, ns) = solve_linear_rf(&a, None).unwrap_solution();
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // v0 + n*v1 = 0
        assert!(v[0].add(&n.mul(&v[1])).is_zero());
    }
}
