//! Closed-form layer: the integers `q`, `r`, `q*`, expected dimensions, the
//! defectivity classification of `X_(n,1,a,b)`, and the thresholds `e`, `e*`.

use num_integer::binomial;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terracini::{terracini_profile, MonteCarloPlan};
use crate::variety::SegreVeroneseSpec;

/// `N + 1 = q (n+m+1) + r` with `0 <= r < n+m+1`, and `q* = ceil((N+1)/(n+m+1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Numerology {
    pub q: u64,
    pub r: u64,
    pub qstar: u64,
}

/// Monomial count `C(n+a,n) C(m+b,m)`; degree zero factors are allowed here.
pub fn monomial_count(n: u64, m: u64, a: u64, b: u64) -> u64 {
    binomial(n + a, n) * binomial(m + b, m)
}

/// Numerology without validating the parameters.
pub fn numerology_of(n: u64, m: u64, a: u64, b: u64) -> Numerology {
    let size = monomial_count(n, m, a, b);
    let k = n + m + 1;
    let (q, r) = (size / k, size % k);
    Numerology {
        q,
        r,
        qstar: if r == 0 { q } else { q + 1 },
    }
}

pub fn invariants(spec: &SegreVeroneseSpec) -> Numerology {
    numerology_of(spec.n as u64, spec.m as u64, spec.a as u64, spec.b as u64)
}

/// `min{N, s(n+m+1) - 1}`.
pub fn expected_dimension(spec: &SegreVeroneseSpec, s: usize) -> Result<usize> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    Ok(spec.ambient_dim.min(s * (spec.dim() + 1) - 1))
}

/// The result governing a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    MainTheorem,
    CggP1p1,
    BaurDraisma,
    ChiantiniCiliberto,
    #[serde(rename = "abrescia-2b")]
    Abrescia2b,
    #[serde(rename = "abrescia-3b")]
    Abrescia3b,
}

impl Rule {
    pub fn as_str(&self) -> &'static str {
        match self {
            Rule::MainTheorem => "main-theorem",
            Rule::CggP1p1 => "cgg-p1p1",
            Rule::BaurDraisma => "baur-draisma",
            Rule::ChiantiniCiliberto => "chiantini-ciliberto",
            Rule::Abrescia2b => "abrescia-2b",
            Rule::Abrescia3b => "abrescia-3b",
        }
    }

    /// Attribution of a nondefective cell, following the base cases of the
    /// induction on `n + a`.
    fn regular(n: u64, a: u64) -> Rule {
        match (n, a) {
            (1, _) => Rule::CggP1p1,
            (2, _) => Rule::BaurDraisma,
            (_, 1) => Rule::ChiantiniCiliberto,
            (_, 2) => Rule::Abrescia2b,
            (_, 3) => Rule::Abrescia3b,
            _ => Rule::MainTheorem,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationVerdict {
    pub defective: bool,
    pub defect: u64,
    /// Closed-form `dim σ_s(X_(n,1,a,b))`.
    pub dim: u64,
    pub rule: Rule,
}

/// `C(d(n+1),2) + C(s+1,2) - s d (n+1)` for `(a,b) = (2,2d)` and
/// `d(n+1)+1 <= s <= (d+1)(n+1)-1`; `None` outside that range.
///
/// The value is the drop below the naive count `s(n+2) - 1`, so the secant
/// dimension is `s(n+2) - 1 - δ_s`. When `s(n+2) - 1 > N` the defect relative
/// to `min{N, s(n+2)-1}` is smaller than `δ_s`.
pub fn abrescia_delta(n: u64, d: u64, s: u64) -> Option<u64> {
    let k = d * (n + 1);
    if n == 0 || d == 0 || s < k + 1 || s > (d + 1) * (n + 1) - 1 {
        return None;
    }
    Some(binomial(k, 2) + binomial(s + 1, 2) - s * k)
}

/// Defectivity of `σ_s(X_(n,1,a,b))` in closed form.
///
/// Defective exactly for `n = 2, (a,b) = (3,1), s = 5` (defect 1) and for
/// `(a,b) = (2,2d)` with `d(n+1)+1 <= s <= (d+1)(n+1)-1`; for `n = 1` the
/// shape `(2d,2)` is the same variety with the factors exchanged.
pub fn classify(n: u64, a: u64, b: u64, s: u64) -> Result<ClassificationVerdict> {
    if n == 0 || a == 0 || b == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!(
            "n, a, b, s must be positive, got ({n},{a},{b},{s})"
        )));
    }
    let ambient = monomial_count(n, 1, a, b) - 1;
    let naive = s * (n + 2) - 1;
    let expected = ambient.min(naive);

    let swapped = n == 1 && b == 2 && a.is_multiple_of(2) && a != 2;
    let (a_c, b_c) = if swapped { (b, a) } else { (a, b) };

    if n == 2 && a == 3 && b == 1 && s == 5 {
        return Ok(ClassificationVerdict {
            defective: true,
            defect: 1,
            dim: expected - 1,
            rule: Rule::MainTheorem,
        });
    }
    if a_c == 2 && b_c % 2 == 0 {
        if let Some(delta) = abrescia_delta(n, b_c / 2, s) {
            let dim = naive - delta;
            debug_assert!(dim < expected);
            return Ok(ClassificationVerdict {
                defective: true,
                defect: expected - dim,
                dim,
                rule: if n == 1 { Rule::CggP1p1 } else { Rule::Abrescia2b },
            });
        }
    }
    Ok(ClassificationVerdict {
        defective: false,
        defect: 0,
        dim: expected,
        rule: Rule::regular(n, a),
    })
}

fn scan_bound(n: u64, a: u64, b: u64) -> u64 {
    numerology_of(n, 1, a, b).qstar + n + 2
}

/// Largest `s` with `dim σ_s = s(n+2) - 1`, from [`classify`].
pub fn closed_form_e(n: u64, a: u64, b: u64) -> Result<u64> {
    let mut e = 0;
    for s in 1..=scan_bound(n, a, b) {
        if classify(n, a, b, s)?.dim == s * (n + 2) - 1 {
            e = s;
        }
    }
    Ok(e)
}

/// Smallest `s` with `dim σ_s = N`, from [`classify`].
pub fn closed_form_estar(n: u64, a: u64, b: u64) -> Result<u64> {
    let ambient = monomial_count(n, 1, a, b) - 1;
    for s in 1..=scan_bound(n, a, b) {
        if classify(n, a, b, s)?.dim == ambient {
            return Ok(s);
        }
    }
    Err(Error::BudgetExceeded {
        budget: scan_bound(n, a, b) as usize,
        what: "e*",
    })
}

/// `(e, e*)` from Monte-Carlo dimensions for `s = 1..=budget`.
pub fn computed_thresholds(spec: &SegreVeroneseSpec, budget: usize, plan: &MonteCarloPlan) -> Result<(usize, usize)> {
    if budget == 0 {
        return Err(Error::BudgetExceeded { budget, what: "e" });
    }
    let profile = terracini_profile(spec, budget, plan)?;
    let k = spec.dim() + 1;
    let estar = (1..=budget)
        .find(|&s| profile.dim(s) == spec.ambient_dim)
        .ok_or(Error::BudgetExceeded { budget, what: "e*" })?;
    // Equality must fail somewhere in range for e to be final.
    if (1..=budget).all(|s| profile.dim(s) == s * k - 1) {
        return Err(Error::BudgetExceeded { budget, what: "e" });
    }
    let e = (1..=budget).filter(|&s| profile.dim(s) == s * k - 1).max().unwrap_or(0);
    Ok((e, estar))
}

pub fn computed_e(spec: &SegreVeroneseSpec, budget: usize, plan: &MonteCarloPlan) -> Result<usize> {
    computed_thresholds(spec, budget, plan).map(|(e, _)| e)
}

pub fn computed_estar(spec: &SegreVeroneseSpec, budget: usize, plan: &MonteCarloPlan) -> Result<usize> {
    computed_thresholds(spec, budget, plan).map(|(_, e)| e)
}
