//! P-recursive recurrence operators: guessing, unrolling, verification.
//!
//! An operator is `sum_{i=0}^{I} c_i(n) x_{n+i} = 0` with polynomial
//! coefficients, stored content-free: the coefficients share no polynomial
//! factor, are integer with content 1, and the leading polynomial's leading
//! coefficient is positive. Equality up to unit is equality of normal forms.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{solve_linear, SolveResult};
use crate::num::{rat, rat_parse, Rat, Symbol};
use crate::unipoly::UniPoly;

/// Contiguous sample of a sequence starting at index `offset`.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceSample {
    pub offset: i64,
    pub values: Vec<Rat>,
}

impl SequenceSample {
    pub fn new(offset: i64, values: Vec<Rat>) -> SequenceSample {
        SequenceSample { offset, values }
    }

    pub fn from_ints(offset: i64, vals: &[i64]) -> SequenceSample {
        SequenceSample::new(offset, vals.iter().map(|&v| rat(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at absolute index n, if sampled.
    pub fn get(&self, n: i64) -> Option<&Rat> {
        if n < self.offset {
            return None;
        }
        self.values.get((n - self.offset) as usize)
    }

    /// One value per line, exact integers/rationals.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for v in &self.values {
            s.push_str(&v.to_string());
            s.push('\n');
        }
        s
    }

    pub fn parse_text(offset: i64, text: &str) -> Option<SequenceSample> {
        let mut values = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            values.push(rat_parse(line)?);
        }
        Some(SequenceSample { offset, values })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct RecurrenceOperator {
    /// coefficient of x_{n+i} at index i; last entry nonzero
    pub coeffs: Vec<UniPoly>,
}

#[derive(Debug, Error, PartialEq)]
pub enum RecurrenceError {
    #[error("no recurrence found within the given caps")]
    NotFound,
    #[error("need at least {needed} data points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("leading coefficient vanishes at n = {0}")]
    SingularPoint(i64),
}

/// Result of [`verify`]: pass, or the first index where the relation breaks.
#[derive(Debug, Clone, PartialEq)]
pub enum Verification {
    Pass,
    Fail { first_bad_index: i64 },
}

impl Verification {
    pub fn passed(&self) -> bool {
        matches!(self, Verification::Pass)
    }
}

impl RecurrenceOperator {
    /// Build from coefficients (index i multiplies x_{n+i}) and normalize.
    pub fn new(coeffs: Vec<UniPoly>) -> RecurrenceOperator {
        let mut op = RecurrenceOperator { coeffs };
        op.normalize();
        op
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn var(&self) -> Symbol {
        self.coeffs
            .first()
            .map(|c| c.var)
            .unwrap_or_else(|| Symbol::new("n"))
    }

    /// Content-free normal form: trim zero leading coefficients, divide out
    /// the common polynomial factor, scale to integer content 1, and make
    /// the leading coefficient's leading rational positive.
    pub fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            return;
        }
        let var = self.coeffs[0].var;
        // common polynomial factor
        let mut g = UniPoly::zero(var);
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        if g.degree() > 0 {
            for c in &mut self.coeffs {
                *c = c.div_exact(&g);
            }
        }
        // integer-primitive scaling with positive leading sign
        use num_bigint::BigInt;
        use num_integer::Integer;
        let mut den = BigInt::one();
        for c in &self.coeffs {
            for q in &c.coeffs {
                den = den.lcm(q.denom());
            }
        }
        let mut content = BigInt::zero();
        for c in &self.coeffs {
            for q in &c.coeffs {
                content = content.gcd(&(q.numer() * &den / q.denom()));
            }
        }
        if content.is_zero() {
            return;
        }
        let mut factor = Rat::new(den, content);
        if self.coeffs.last().unwrap().leading().is_negative() {
            factor = -factor;
        }
        for c in &mut self.coeffs {
            *c = c.scale(&factor);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Apply the operator at index n: `sum_i c_i(n) x_{n+i}` over the sample.
    /// None if the window isn't fully sampled.
    pub fn apply_at(&self, data: &SequenceSample, n: i64) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let x = data.get(n + i as i64)?;
            if !x.is_zero() {
                acc += c.eval(&rat(n)) * x;
            }
        }
        Some(acc)
    }

    /// Shift indices: returns the operator with coefficients c_i(n + s).
    pub fn shifted(&self, s: i64) -> RecurrenceOperator {
        RecurrenceOperator::new(self.coeffs.iter().map(|c| c.shift(&rat(s))).collect())
    }

    /// Operator text format `(c_I(n))*N^I + ... + (c_0(n))`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let head = format!("({})", c);
            let part = match i {
                0 => head,
                1 => format!("{}*N", head),
                _ => format!("{}*N^{}", head, i),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// JSON alternative: coefficient arrays by shift, each an array of
    /// rational strings by degree.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "variable": self.var().name(),
            "order": self.order(),
            "coefficients": self
                .coeffs
                .iter()
                .map(|c| c.coeffs.iter().map(|q| q.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Option<RecurrenceOperator> {
        let var = Symbol::new(v.get("variable")?.as_str()?);
        let coeffs = v.get("coefficients")?.as_array()?;
        let mut out = Vec::new();
        for c in coeffs {
            let arr = c.as_array()?;
            let mut cs = Vec::new();
            for q in arr {
                cs.push(rat_parse(q.as_str()?)?);
            }
            out.push(UniPoly::new(var, cs));
        }
        Some(RecurrenceOperator::new(out))
    }
}

impl fmt::Display for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Debug for RecurrenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Serializable description used by the CLI (`--format json`).
#[derive(Serialize, Deserialize)]
pub struct OperatorJson {
    pub variable: String,
    pub order: usize,
    pub coefficients: Vec<Vec<String>>,
}

/// Extra verification windows held out beyond the solve, to reject
/// overfitted candidates.
pub const GUESS_MARGIN: usize = 10;
/// Extra rows added to the solve itself so spurious kernel vectors are cut
/// down before verification.
const GUESS_EXTRA_ROWS: usize = 5;

/// Search for a P-recursive operator annihilating `data`, trying shapes
/// (order, degree) in increasing order+degree up to the caps, returning the
/// first success. The returned operator annihilates every sampled window,
/// including the held-out margin.
pub fn guess_recurrence(
    data: &SequenceSample,
    max_order: usize,
    max_degree: usize,
) -> Result<RecurrenceOperator, RecurrenceError> {
    let mut any_feasible = false;
    let mut best_needed = usize::MAX;
    for total in 1..=max_order + max_degree {
        for order in 1..=total.min(max_order) {
            let degree = total - order;
            if degree > max_degree {
                continue;
            }
            let needed = (order + 1) * (degree + 1) + order + GUESS_MARGIN;
            best_needed = best_needed.min(needed);
            if data.len() < needed {
                continue;
            }
            any_feasible = true;
            if let Some(op) = try_guess(data, order, degree) {
                return Ok(op);
            }
        }
    }
    if any_feasible {
        Err(RecurrenceError::NotFound)
    } else {
        Err(RecurrenceError::InsufficientData { needed: best_needed, got: data.len() })
    }
}

fn try_guess(data: &SequenceSample, order: usize, degree: usize) -> Option<RecurrenceOperator> {
    let unknowns = (order + 1) * (degree + 1);
    let solve_rows = (unknowns + GUESS_EXTRA_ROWS).min(data.len() - order - GUESS_MARGIN);
    let var = Symbol::new("n");
    let mut matrix = Vec::with_capacity(solve_rows);
    for w in 0..solve_rows {
        let n = data.offset + w as i64;
        let mut row = Vec::with_capacity(unknowns);
        let nr = rat(n);
        for i in 0..=order {
            let x = &data.values[w + i];
            let mut npow = Rat::one();
            for _ in 0..=degree {
                row.push(&npow * x);
                npow *= &nr;
            }
        }
        matrix.push(row);
    }
    let SolveResult::Solution { nullspace, .. } = solve_linear(&matrix, None) else {
        return None;
    };
    'cand: for v in &nullspace {
        let coeffs: Vec<UniPoly> = (0..=order)
            .map(|i| {
                UniPoly::new(var, v[i * (degree + 1)..(i + 1) * (degree + 1)].to_vec())
            })
            .collect();
        let op = RecurrenceOperator::new(coeffs);
        if op.is_zero() || op.order() == 0 {
            continue;
        }
        // must hold on every sampled window, including held-out margin
        for w in 0..data.len() - op.order() {
            let n = data.offset + w as i64;
            if !op.apply_at(data, n).unwrap().is_zero() {
                continue 'cand;
            }
        }
        return Some(op);
    }
    None
}

/// Generate `count` terms from `initial` (which must cover the order).
pub fn unroll(
    op: &RecurrenceOperator,
    initial: &SequenceSample,
    count: usize,
) -> Result<SequenceSample, RecurrenceError> {
    let order = op.order();
    assert!(
        initial.len() >= order,
        "need {} initial values, got {}",
        order,
        initial.len()
    );
    let mut values = initial.values.clone();
    values.truncate(order.max(initial.len().min(count)));
    let lead = &op.coeffs[order];
    while values.len() < count {
        let n = initial.offset + (values.len() - order) as i64;
        let ln = lead.eval(&rat(n));
        if ln.is_zero() {
            return Err(RecurrenceError::SingularPoint(n));
        }
        let mut acc = Rat::zero();
        for i in 0..order {
            let x = &values[values.len() - order + i];
            acc += op.coeffs[i].eval(&rat(n)) * x;
        }
        values.push(-acc / ln);
    }
    values.truncate(count);
    Ok(SequenceSample { offset: initial.offset, values })
}

/// Check the relation at every admissible index of the sample.
pub fn verify(op: &RecurrenceOperator, data: &SequenceSample) -> Verification {
    let order = op.order();
    if data.len() <= order {
        return Verification::Pass;
    }
    for w in 0..data.len() - order {
        let n = data.offset + w as i64;
        if !op.apply_at(data, n).unwrap().is_zero() {
            return Verification::Fail { first_bad_index: n };
        }
    }
    Verification::Pass
}

/// Accept a quoted operator against data if any constant index shift in
/// `-range..=range` makes it verify; returns the working shift.
pub fn verify_with_shift(
    op: &RecurrenceOperator,
    data: &SequenceSample,
    range: i64,
) -> Option<i64> {
    (-range..=range).find(|&s| verify(&op.shifted(s), data).passed())
}

/// True iff the normalized forms coincide.
pub fn operators_equal_up_to_unit(a: &RecurrenceOperator, b: &RecurrenceOperator) -> bool {
    a.coeffs == b.coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{binomial, rat_big};

    fn op_from_ints(coeffs: &[&[i64]]) -> RecurrenceOperator {
        let n = Symbol::new("n");
        RecurrenceOperator::new(coeffs.iter().map(|c| UniPoly::from_ints(n, c)).collect())
    }

    fn powers_of_two(len: usize) -> SequenceSample {
        SequenceSample::new(0, (0..len).map(|i| rat(1) * rat_big(num_bigint::BigInt::from(2u8).pow(i as u32))).collect())
    }

    #[test]
    fn guess_geometric() {
        let data = powers_of_two(30);
        let op = guess_recurrence(&data, 1, 0).unwrap();
        // x_{n+1} - 2 x_n = 0
        assert_eq!(op, op_from_ints(&[&[-2], &[1]]));
    }

    #[test]
    fn guess_catalan_and_check_against_formula() {
        // Catalan numbers from the binomial formula: C(2n,n)/(n+1)
        let cat: Vec<Rat> = (0..50u64)
            .map(|n| Rat::new(binomial(2 * n, n), (n + 1).into()))
            .collect();
        let data = SequenceSample::new(0, cat.clone());
        let op = guess_recurrence(&data, 1, 1).unwrap();
        // (n+2) x_{n+1} - (4n+2) x_n = 0
        assert_eq!(op, op_from_ints(&[&[-2, -4], &[2, 1]]));
        assert!(verify(&op, &data).passed());
        // unroll from x_0 = 1 and compare against the formula oracle
        let rolled = unroll(&op, &SequenceSample::from_ints(0, &[1]), 30).unwrap();
        for (n, v) in rolled.values.iter().enumerate() {
            assert_eq!(*v, cat[n]);
        }
    }

    #[test]
    fn guess_motzkin_matches_paper_after_shift() {
        // Motzkin numbers by their standard recurrence
        let mut m = vec![rat(1), rat(1)];
        for n in 2..60i64 {
            let v = (rat(2 * n + 1) * &m[(n - 1) as usize] + rat(3 * n - 3) * &m[(n - 2) as usize])
                / rat(n + 2);
            m.push(v);
        }
        let data = SequenceSample::new(0, m);
        let op = guess_recurrence(&data, 2, 1).unwrap();
        assert_eq!(op.order(), 2);
        assert!(verify(&op, &data).passed());
        // the thesis display "(n+2)M_{n+2} = (2n+1)M_{n+1} + (3n-3)M_n" uses a
        // drifted index convention; a shift of +2 aligns it
        let paper = op_from_ints(&[&[3, -3], &[-1, -2], &[2, 1]]);
        assert!(verify_with_shift(&paper, &data, 2).is_some());
        assert_eq!(op, paper.shifted(2));
    }

    #[test]
    fn insufficient_data() {
        let data = SequenceSample::from_ints(0, &[1, 2, 4]);
        let e = guess_recurrence(&data, 1, 0).unwrap_err();
        assert!(matches!(e, RecurrenceError::InsufficientData { .. }));
    }

    #[test]
    fn not_found_for_nonholonomic_shape() {
        // data with no order-1 constant-coefficient relation: n! + 1 at top cap (1,0)
        let mut vals = Vec::new();
        let mut f = rat(1);
        for n in 0..25i64 {
            if n > 0 {
                f *= rat(n);
            }
            vals.push(&f + rat(1));
        }
        let data = SequenceSample::new(0, vals);
        assert_eq!(guess_recurrence(&data, 1, 0).unwrap_err(), RecurrenceError::NotFound);
    }

    #[test]
    fn unroll_fibonacci() {
        let op = op_from_ints(&[&[1], &[1], &[-1]]); // x_{n+2} = x_{n+1} + x_n
        let out = unroll(&op, &SequenceSample::from_ints(0, &[0, 1]), 10).unwrap();
        assert_eq!(out, SequenceSample::from_ints(0, &[0, 1, 1, 2, 3, 5, 8, 13, 21, 34]));
    }

    #[test]
    fn unroll_singular_point() {
        // leading coefficient (n-3) vanishes at n=3
        let op = op_from_ints(&[&[-2, -2], &[-3, 1]]);
        let e = unroll(&op, &SequenceSample::from_ints(0, &[1]), 10).unwrap_err();
        assert_eq!(e, RecurrenceError::SingularPoint(3));
    }

    #[test]
    fn verify_pass_and_fail() {
        let data = powers_of_two(20);
        let good = op_from_ints(&[&[-2], &[1]]);
        let bad = op_from_ints(&[&[-3], &[1]]);
        assert!(verify(&good, &data).passed());
        assert_eq!(
            verify(&bad, &data),
            Verification::Fail { first_bad_index: 0 }
        );
    }

    #[test]
    fn equality_up_to_unit() {
        let a = op_from_ints(&[&[-2], &[1]]);
        let b = op_from_ints(&[&[-4], &[2]]);
        let c = op_from_ints(&[&[-3], &[1]]);
        let neg = op_from_ints(&[&[2], &[-1]]);
        assert!(operators_equal_up_to_unit(&a, &b));
        assert!(!operators_equal_up_to_unit(&a, &c));
        assert!(operators_equal_up_to_unit(&a, &neg));
    }

    #[test]
    fn normalization_idempotent() {
        let mut op = op_from_ints(&[&[0, 2, 2], &[2, 2]]); // common factor (n+1), content 2
        let once = op.clone();
        op.normalize();
        assert_eq!(op, once);
        // common factor divided out
        assert_eq!(once, op_from_ints(&[&[0, 2], &[2]]));
        assert_eq!(once, op_from_ints(&[&[0, 1], &[1]]));
    }

    #[test]
    fn text_and_json_round_trip() {
        let op = op_from_ints(&[&[250, 175, 40, 3], &[-1, 0, 2]]);
        assert_eq!(
            op.to_text(),
            "(2*n^2 - 1)*N + (3*n^3 + 40*n^2 + 175*n + 250)"
        );
        let j = op.to_json();
        let back = RecurrenceOperator::from_json(&j).unwrap();
        assert!(operators_equal_up_to_unit(&op, &back));
    }
}
