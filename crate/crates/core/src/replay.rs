//! Exact replay of the arithmetic behind the induction on `n + a`.
//!
//! For `X_(n,1,a,b)` with `n >= 2`, `a >= 2`, the step from smaller cases is
//! valid when
//!
//! ```text
//! (1)  q(n-1,a,b) = e(n-1,a,b)
//! (2)  q(n,a,b)  >= q(n-1,a,b) + r(n-1,a,b)        (2*) same with q*(n,a,b)
//! (3)  e(n,a-1,b) >= q(n,a,b) - q(n-1,a,b)         (3*) same with q*(n,a,b)
//! (4)  e*(n,a-2,b) <= q(n,a,b) - q(n-1,a,b) - r(n-1,a,b)
//!                                                  (4*) same with q*(n,a,b)
//! ```
//!
//! and (1), (3*), (4) together suffice. Here `q, r, q*` are taken at `m = 1`
//! and `e, e*` come from the closed-form classification. Nothing in this
//! module uses floating point.

use num_integer::binomial;
use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerology::{closed_form_e, closed_form_estar, numerology_of, Rule};
use crate::terracini::MonteCarloPlan;
use crate::variety::SegreVeroneseSpec;

fn q(n: i64, a: i64, b: i64) -> i64 {
    numerology_of(n as u64, 1, a as u64, b as u64).q as i64
}

fn r(n: i64, a: i64, b: i64) -> i64 {
    numerology_of(n as u64, 1, a as u64, b as u64).r as i64
}

fn qstar(n: i64, a: i64, b: i64) -> i64 {
    numerology_of(n as u64, 1, a as u64, b as u64).qstar as i64
}

fn e(n: i64, a: i64, b: i64) -> Result<i64> {
    closed_form_e(n as u64, a as u64, b as u64).map(|v| v as i64)
}

fn estar(n: i64, a: i64, b: i64) -> Result<i64> {
    closed_form_estar(n as u64, a as u64, b as u64).map(|v| v as i64)
}

fn binom(n: i64, k: i64) -> i64 {
    binomial(n, k)
}

fn ratio(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

/// Both sides of one inequality. `lhs` is absent when the quantity is not
/// defined (`e*` of `X_(n,1,0,b)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: Option<i64>,
    pub rhs: i64,
    pub holds: bool,
}

impl Comparison {
    fn eq(lhs: i64, rhs: i64) -> Self {
        Comparison { lhs: Some(lhs), rhs, holds: lhs == rhs }
    }

    fn ge(lhs: i64, rhs: i64) -> Self {
        Comparison { lhs: Some(lhs), rhs, holds: lhs >= rhs }
    }

    fn le(lhs: Option<i64>, rhs: i64) -> Self {
        Comparison {
            lhs,
            rhs,
            holds: lhs.is_some_and(|l| l <= rhs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaWitnesses {
    pub cond1: Comparison,
    pub cond2: Comparison,
    pub cond3: Comparison,
    pub cond4: Comparison,
    pub cond2star: Comparison,
    pub cond3star: Comparison,
    pub cond4star: Comparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaConditionReport {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    /// `n < 3` or `a < 4`: settled by the base cases rather than the inductive step.
    pub base_case: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub cond4: bool,
    pub cond2star: bool,
    pub cond3star: bool,
    pub cond4star: bool,
    pub witnesses: LemmaWitnesses,
}

impl LemmaConditionReport {
    /// (1), (3*) and (4): enough for every `σ_s` to have the expected dimension.
    pub fn sufficient(&self) -> bool {
        self.cond1 && self.cond3star && self.cond4
    }

    /// (4) => (2), (4) => (4*), (2) => (2*), (3*) => (3).
    pub fn implications_hold(&self) -> bool {
        (!self.cond4 || self.cond2)
            && (!self.cond4 || self.cond4star)
            && (!self.cond2 || self.cond2star)
            && (!self.cond3star || self.cond3)
    }
}

/// Evaluates every hypothesis with closed-form `e` and `e*`.
pub fn check_lemma_conditions(n: i64, a: i64, b: i64) -> Result<LemmaConditionReport> {
    if n < 2 || a < 2 || b < 1 {
        return Err(Error::OutsideHypotheses(format!(
            "need n >= 2, a >= 2, b >= 1, got ({n},{a},{b})"
        )));
    }
    let (qn, qsn) = (q(n, a, b), qstar(n, a, b));
    let (qp, rp) = (q(n - 1, a, b), r(n - 1, a, b));
    let e_prev = e(n - 1, a, b)?;
    let e_lower = e(n, a - 1, b)?;
    let estar_lower = if a >= 3 { Some(estar(n, a - 2, b)?) } else { None };

    let w = LemmaWitnesses {
        cond1: Comparison::eq(qp, e_prev),
        cond2: Comparison::ge(qn, qp + rp),
        cond3: Comparison::ge(e_lower, qn - qp),
        cond4: Comparison::le(estar_lower, qn - qp - rp),
        cond2star: Comparison::ge(qsn, qp + rp),
        cond3star: Comparison::ge(e_lower, qsn - qp),
        cond4star: Comparison::le(estar_lower, qsn - qp - rp),
    };
    Ok(LemmaConditionReport {
        n,
        a,
        b,
        base_case: n < 3 || a < 4,
        cond1: w.cond1.holds,
        cond2: w.cond2.holds,
        cond3: w.cond3.holds,
        cond4: w.cond4.holds,
        cond2star: w.cond2star.holds,
        cond3star: w.cond3star.holds,
        cond4star: w.cond4star.holds,
        witnesses: w,
    })
}

/// `f(b,n,a) = (b+1) C(n-2+a, n-1) (n - (n-1)/a) - (n+1)(n+2) - r(n-1,a,b) n (n+2)`.
/// `f >= 0` implies (‡) in cases (a) and (b).
pub fn f_value(b: i64, n: i64, a: i64) -> Rational64 {
    let lead = ratio((b + 1) * binom(n - 2 + a, n - 1), 1) * (ratio(n, 1) - ratio(n - 1, a));
    lead - ratio((n + 1) * (n + 2), 1) - ratio(r(n - 1, a, b) * n * (n + 2), 1)
}

/// `g(n,4,2d) = (d+1)(n+1) + q(n-1,4,2d) + r(n-1,4,2d) - C(n+4,4)(2d+1)/(n+2)`,
/// with `e*(n,1,2,2d) = (d+1)(n+1)`. Condition (4) at `(n,4,2d)` is `g <= 0`.
pub fn g_value(n: i64, d: i64) -> Rational64 {
    let b = 2 * d;
    ratio((d + 1) * (n + 1) + q(n - 1, 4, b) + r(n - 1, 4, b), 1) - ratio(binom(n + 4, 4) * (2 * d + 1), n + 2)
}

/// Left side of (†): `q(n,a-1,b) - q*(n,a,b) + q(n-1,a,b)`, which must be `>= 0`.
pub fn dagger_value(n: i64, a: i64, b: i64) -> i64 {
    q(n, a - 1, b) - qstar(n, a, b) + q(n - 1, a, b)
}

/// The lower bound `(3(b+1) - 3)/4` for (†) at `(n,a) = (3,4)`.
pub fn dagger_bound_n3_a4(b: i64) -> Rational64 {
    ratio(3 * (b + 1) - 3, 4)
}

/// (†) at `(n,a) = (3,4)` written out: `4(b+1) - 7(b+1) + (15(b+1) - r(2,4,b))/4`.
pub fn dagger_expanded_n3_a4(b: i64) -> Rational64 {
    ratio(4 * (b + 1) - 7 * (b + 1), 1) + ratio(15 * (b + 1) - r(2, 4, b), 4)
}

/// `C(n+a-1,n-1)(b+1) - 2(n+1)(n+2)`, nonnegative whenever (†) holds for `(n,a) != (3,4)`.
pub fn dagger_sufficient(n: i64, a: i64, b: i64) -> i64 {
    binom(n + a - 1, n - 1) * (b + 1) - 2 * (n + 1) * (n + 2)
}

/// Left side of (‡): `q*(n,a-2,b) - q(n,a,b) + q(n-1,a,b) + r(n-1,a,b)`, which must be `<= 0`.
pub fn ddagger_value(n: i64, a: i64, b: i64) -> i64 {
    qstar(n, a - 2, b) - q(n, a, b) + q(n - 1, a, b) + r(n - 1, a, b)
}

/// Lower bound for `f` in case (a): `(n+2)/60 (n(n+1)(4n^2+13n+3-60) - 60)`.
pub fn case_a_bound(n: i64) -> Rational64 {
    ratio(n + 2, 60) * ratio(n * (n + 1) * (4 * n * n + 13 * n + 3 - 60) - 60, 1)
}

/// Lower bound for `f` in case (b): `(n+2)/12 (n(n+1)(3n+1-12) - 12)`.
pub fn case_b_bound(n: i64) -> Rational64 {
    ratio(n + 2, 12) * ratio(n * (n + 1) * (3 * n + 1 - 12) - 12, 1)
}

/// (‡) in case (c), `(n,a) = (3,4)`: `(-5(b+1) + 3 r(2,4,b))/4`.
pub fn case_c_value(b: i64) -> Rational64 {
    ratio(-5 * (b + 1) + 3 * r(2, 4, b), 4)
}

/// `g(3,4,2d)`: `(12 - 10d)/4` for even `d`, `(6 - 10d)/4` for odd `d`.
pub fn case_d_value(d: i64) -> Rational64 {
    if d % 2 == 0 {
        ratio(12 - 10 * d, 4)
    } else {
        ratio(6 - 10 * d, 4)
    }
}

/// Upper bound for `g(n,4,2d)` in case (e): `-(n-4)(3n+1)/8 - n/(n+1)`.
pub fn case_e_bound(n: i64) -> Rational64 {
    -ratio((n - 4) * (3 * n + 1), 8) - ratio(n, n + 1)
}

/// The five ways condition (4) is established for `n >= 3`, `a >= 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProofCase {
    /// `a > 4`
    A,
    /// `a = 4`, `n > 3`, `b` odd
    B,
    /// `a = 4`, `n = 3`, `b` odd
    C,
    /// `a = 4`, `n = 3`, `b` even
    D,
    /// `a = 4`, `n > 3`, `b` even
    E,
}

pub fn proof_case(n: i64, a: i64, b: i64) -> Option<ProofCase> {
    if n < 3 || a < 4 {
        return None;
    }
    Some(match (a > 4, n > 3, b % 2 == 1) {
        (true, _, _) => ProofCase::A,
        (false, true, true) => ProofCase::B,
        (false, false, true) => ProofCase::C,
        (false, false, false) => ProofCase::D,
        (false, true, false) => ProofCase::E,
    })
}

/// How (3*) and (4) were certified at one cell, with every value used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteWitness {
    pub dagger: i64,
    /// `(3(b+1)-3)/4` at `(n,a) = (3,4)`, else `C(n+a-1,n-1)(b+1) - 2(n+1)(n+2)`.
    pub dagger_bound: Rational64,
    /// `e*(n,a-2,b)` as the route assumes it: `q*(n,a-2,b)` in cases (a)-(c),
    /// `(d+1)(n+1)` in cases (d), (e).
    pub estar_premise: i64,
    pub estar_closed_form: i64,
    /// (‡) in cases (a)-(c).
    pub ddagger: Option<i64>,
    pub f: Option<Rational64>,
    /// Case bound for `f` (a, b), for (‡) (c), or for `g` (d, e).
    pub case_bound: Option<Rational64>,
    pub g: Option<Rational64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayCell {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub case: ProofCase,
    pub conditions: LemmaConditionReport,
    pub route: RouteWitness,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// A cell below the inductive region and the result covering it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCell {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub n_max: i64,
    pub a_max: i64,
    pub b_max: i64,
    pub cells: Vec<ReplayCell>,
    pub base_cells: Vec<BaseCell>,
    pub all_pass: bool,
}

impl ReplayReport {
    pub fn failures(&self) -> impl Iterator<Item = &ReplayCell> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

fn base_rule(n: i64, a: i64) -> Rule {
    match (n, a) {
        (1, _) => Rule::CggP1p1,
        (2, _) => Rule::BaurDraisma,
        (_, 1) => Rule::ChiantiniCiliberto,
        (_, 2) => Rule::Abrescia2b,
        _ => Rule::Abrescia3b,
    }
}

/// Replays one inductive cell (`n >= 3`, `a >= 4`).
pub fn replay_cell(n: i64, a: i64, b: i64) -> Result<ReplayCell> {
    let case = proof_case(n, a, b)
        .ok_or_else(|| Error::OutsideHypotheses(format!("({n},{a},{b}) is a base cell")))?;
    let conditions = check_lemma_conditions(n, a, b)?;
    let mut failures = Vec::new();
    let mut require = |ok: bool, what: String| {
        if !ok {
            failures.push(what);
        }
    };

    // (3*) through (†), using e(n,a-1,b) = q(n,a-1,b) from the induction.
    let dagger = dagger_value(n, a, b);
    require(dagger >= 0, format!("(†) = {dagger} < 0"));
    require(
        e(n, a - 1, b)? == q(n, a - 1, b),
        "e(n,a-1,b) != q(n,a-1,b)".to_string(),
    );
    let dagger_bound = if (n, a) == (3, 4) {
        let bound = dagger_bound_n3_a4(b);
        require(
            dagger_expanded_n3_a4(b) == ratio(dagger, 1),
            "(†) expansion at (3,4) disagrees".to_string(),
        );
        require(ratio(dagger, 1) >= bound, format!("(†) = {dagger} below {bound}"));
        require(bound >= ratio(0, 1), "(3,4) bound negative".to_string());
        bound
    } else {
        let suff = dagger_sufficient(n, a, b);
        require(suff >= 0, format!("C(n+a-1,n-1)(b+1) - 2(n+1)(n+2) = {suff} < 0"));
        ratio(suff, 1)
    };

    // (4) along the proof's case split.
    let estar_closed_form = estar(n, a - 2, b)?;
    let mut route = RouteWitness {
        dagger,
        dagger_bound,
        estar_premise: 0,
        estar_closed_form,
        ddagger: None,
        f: None,
        case_bound: None,
        g: None,
    };
    match case {
        ProofCase::A | ProofCase::B | ProofCase::C => {
            route.estar_premise = qstar(n, a - 2, b);
            let dd = ddagger_value(n, a, b);
            route.ddagger = Some(dd);
            require(dd <= 0, format!("(‡) = {dd} > 0"));
            if case == ProofCase::C {
                let v = case_c_value(b);
                route.case_bound = Some(v);
                require(v == ratio(dd, 1), format!("case (c) value {v} != (‡) = {dd}"));
                require(v <= ratio(-1, 4), format!("case (c) value {v} > -1/4"));
            } else {
                let f = f_value(b, n, a);
                let bound = if case == ProofCase::A { case_a_bound(n) } else { case_b_bound(n) };
                route.f = Some(f);
                route.case_bound = Some(bound);
                require(f >= bound, format!("f = {f} below case bound {bound}"));
                require(bound >= ratio(0, 1), format!("case bound {bound} < 0"));
            }
        }
        ProofCase::D | ProofCase::E => {
            let d = b / 2;
            route.estar_premise = (d + 1) * (n + 1);
            let g = g_value(n, d);
            route.g = Some(g);
            require(g < ratio(0, 1), format!("g = {g} >= 0"));
            let bound = if case == ProofCase::D { case_d_value(d) } else { case_e_bound(n) };
            route.case_bound = Some(bound);
            if case == ProofCase::D {
                require(g == bound, format!("g = {g} but the parity formula gives {bound}"));
            } else {
                require(g <= bound, format!("g = {g} above {bound}"));
                require(bound < ratio(0, 1), format!("case (e) bound {bound} >= 0"));
            }
        }
    }
    require(
        route.estar_premise == estar_closed_form,
        format!("e* premise {} != closed form {}", route.estar_premise, estar_closed_form),
    );
    require(conditions.cond1, "(1) fails".to_string());
    require(conditions.cond3star, "(3*) fails".to_string());
    require(conditions.cond4, "(4) fails".to_string());
    require(conditions.implications_hold(), "implication chain broken".to_string());

    let pass = failures.is_empty();
    Ok(ReplayCell {
        n,
        a,
        b,
        case,
        conditions,
        route,
        pass,
        failures,
    })
}

/// Replays every inductive cell `3 <= n <= n_max`, `4 <= a <= a_max`,
/// `1 <= b <= b_max` and lists the base cells in range.
pub fn replay_main_theorem(n_max: i64, a_max: i64, b_max: i64) -> Result<ReplayReport> {
    if n_max < 3 || a_max < 4 || b_max < 1 {
        return Err(Error::InvalidArgument(format!(
            "the inductive region starts at n = 3, a = 4, b = 1; got bounds ({n_max},{a_max},{b_max})"
        )));
    }
    let coords: Vec<(i64, i64, i64)> = (3..=n_max)
        .flat_map(|n| (4..=a_max).flat_map(move |a| (1..=b_max).map(move |b| (n, a, b))))
        .collect();
    let cells = coords
        .par_iter()
        .map(|&(n, a, b)| replay_cell(n, a, b))
        .collect::<Result<Vec<_>>>()?;
    let base_cells = (1..=n_max)
        .flat_map(|n| (1..=a_max).flat_map(move |a| (1..=b_max).map(move |b| (n, a, b))))
        .filter(|&(n, a, _)| n < 3 || a < 4)
        .map(|(n, a, b)| BaseCell {
            n,
            a,
            b,
            rule: base_rule(n, a),
        })
        .collect();
    let all_pass = cells.iter().all(|c| c.pass);
    Ok(ReplayReport {
        n_max,
        a_max,
        b_max,
        cells,
        base_cells,
        all_pass,
    })
}

/// Closed-form against Monte-Carlo `e`, `e*` at one `(n, a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdCheck {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub closed_e: i64,
    pub closed_estar: i64,
    pub computed_e: i64,
    pub computed_estar: i64,
}

impl ThresholdCheck {
    pub fn agrees(&self) -> bool {
        self.closed_e == self.computed_e && self.closed_estar == self.computed_estar
    }
}

/// Compares the `e`, `e*` used by the lemma conditions with values measured
/// by the tangent-space engine.
pub fn cross_check_thresholds(cells: &[(i64, i64, i64)], plan: &MonteCarloPlan) -> Result<Vec<ThresholdCheck>> {
    cells
        .par_iter()
        .map(|&(n, a, b)| {
            let spec = SegreVeroneseSpec::new(n as usize, 1, a as usize, b as usize)?;
            let closed_e = e(n, a, b)?;
            let closed_estar = estar(n, a, b)?;
            let budget = (qstar(n, a, b) + n + 2) as usize;
            let (ce, cs) = crate::numerology::computed_thresholds(&spec, budget, plan)?;
            Ok(ThresholdCheck {
                n,
                a,
                b,
                closed_e,
                closed_estar,
                computed_e: ce as i64,
                computed_estar: cs as i64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerology::classify;

    #[test]
    fn spot_values() {
        assert_eq!(g_value(3, 1), ratio(-1, 1));
        assert_eq!(g_value(3, 2), ratio(-2, 1));
        assert_eq!(case_b_bound(4), ratio(4, 1));
        assert_eq!(case_e_bound(4), ratio(-4, 5));
        assert!(g_value(4, 1) < case_e_bound(4));
        for b in 1..20 {
            assert_eq!(dagger_expanded_n3_a4(b), ratio(dagger_value(3, 4, b), 1));
            assert!(ratio(dagger_value(3, 4, b), 1) >= dagger_bound_n3_a4(b));
        }
    }

    #[test]
    fn f_against_raw_binomials() {
        // f(1,3,5) = 2 C(6,2) (3 - 2/5) - 20 - r(2,1,5,1) * 15, with r = C(7,2)*2 mod 4 = 2.
        let r2 = (binom(7, 2) * 2) % 4;
        assert_eq!(r2, 2);
        let direct = ratio(2 * binom(6, 2), 1) * ratio(13, 5) - ratio(20, 1) - ratio(r2 * 3 * 5, 1);
        assert_eq!(f_value(1, 3, 5), direct);
        assert_eq!(f_value(1, 3, 5), ratio(28, 1));
        assert!(f_value(1, 4, 4) >= case_b_bound(4));
    }

    #[test]
    fn quantities_at_three_four() {
        for b in 1..10 {
            assert_eq!(q(3, 4, b), 7 * (b + 1));
            assert_eq!(qstar(3, 4, b), 7 * (b + 1));
            assert_eq!(q(3, 3, b), 4 * (b + 1));
        }
        for d in 1..10 {
            assert_eq!(r(2, 4, 2 * d), if d % 2 == 1 { 1 } else { 3 });
        }
    }

    #[test]
    fn lemma_conditions_examples() {
        let rep = check_lemma_conditions(3, 4, 1).unwrap();
        assert!(rep.cond1 && rep.cond3star && !rep.base_case);
        let rep = check_lemma_conditions(3, 5, 1).unwrap();
        assert!(rep.cond4);
        assert!(f_value(1, 3, 5) >= ratio(0, 1));
        let rep = check_lemma_conditions(2, 4, 2).unwrap();
        assert!(rep.base_case);
        assert!(check_lemma_conditions(1, 4, 2).is_err());
        assert!(check_lemma_conditions(3, 1, 2).is_err());
        // e* of X_(n,1,0,b) is undefined.
        let rep = check_lemma_conditions(3, 2, 1).unwrap();
        assert_eq!(rep.witnesses.cond4.lhs, None);
        assert!(!rep.cond4 && !rep.cond4star);
    }

    #[test]
    fn implication_chain_and_consistency() {
        for n in 2..8 {
            for a in 2..9 {
                for b in 1..8 {
                    let rep = check_lemma_conditions(n, a, b).unwrap();
                    assert!(rep.implications_hold(), "({n},{a},{b})");
                    if rep.sufficient() {
                        let top = qstar(n, a, b) + n + 3;
                        for s in 1..=top {
                            let v = classify(n as u64, a as u64, b as u64, s as u64).unwrap();
                            assert!(!v.defective, "({n},{a},{b},{s})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn case_routing() {
        assert_eq!(proof_case(3, 5, 2), Some(ProofCase::A));
        assert_eq!(proof_case(4, 4, 1), Some(ProofCase::B));
        assert_eq!(proof_case(3, 4, 3), Some(ProofCase::C));
        assert_eq!(proof_case(3, 4, 2), Some(ProofCase::D));
        assert_eq!(proof_case(4, 4, 2), Some(ProofCase::E));
        assert_eq!(proof_case(2, 4, 2), None);
        assert_eq!(proof_case(3, 3, 2), None);
    }

    #[test]
    fn case_d_and_e_cells() {
        let c = replay_cell(3, 4, 2).unwrap();
        assert_eq!(c.case, ProofCase::D);
        assert_eq!(c.route.g, Some(ratio(-1, 1)));
        assert!(c.pass, "{:?}", c.failures);
        let c = replay_cell(4, 4, 2).unwrap();
        assert_eq!(c.case, ProofCase::E);
        assert!(c.route.g.unwrap() < ratio(0, 1));
        assert!(c.pass, "{:?}", c.failures);
    }

    #[test]
    fn default_grid_replays() {
        let rep = replay_main_theorem(6, 8, 6).unwrap();
        assert_eq!(rep.cells.len(), 4 * 5 * 6);
        let bad: Vec<_> = rep.failures().map(|c| (c.n, c.a, c.b, c.failures.clone())).collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(rep.all_pass);
        assert!(rep.base_cells.iter().all(|c| c.n < 3 || c.a < 4));
        assert!(replay_main_theorem(2, 8, 6).is_err());
        assert!(replay_main_theorem(6, 3, 6).is_err());
    }

    #[test]
    fn thresholds_match_monte_carlo() {
        let cells = [(2, 2, 1), (2, 3, 1), (3, 2, 2), (3, 4, 1), (2, 2, 2)];
        for c in cross_check_thresholds(&cells, &MonteCarloPlan::default()).unwrap() {
            assert!(c.agrees(), "{c:?}");
        }
    }
}
