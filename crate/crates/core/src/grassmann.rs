//! Grassmann secant varieties `Sec_(k,s-1)(ν_a(P^n))`.
//!
//! `ν_a(P^n)` is `(k,s-1)`-defective with defect `δ` exactly when the Segre
//! product `P^k × ν_a(P^n) = X_(n,k,a,1)` has `σ_s` of defect `δ`, where `σ_s`
//! is spanned by `s` points. For `k = 1` this is read from [`classify`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{point_stream, sample_point, PrimeField};
use crate::matrix::EchelonBasis;
use crate::monomial::exponents;
use crate::numerology::{classify, expected_dimension};
use crate::terracini::{check_budget, terracini_profile, MonteCarloPlan};
use crate::variety::SegreVeroneseSpec;

use num_integer::binomial;

/// `Sec_(k,s-1)(ν_a(P^n))` inside `G(k,N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannQuery {
    pub n: usize,
    pub a: usize,
    pub k: usize,
    pub s: usize,
    #[serde(rename = "N")]
    pub ambient_dim: usize,
}

impl GrassmannQuery {
    /// Requires `n, a >= 1` and `0 <= k <= s-1 < N`.
    pub fn new(n: usize, a: usize, k: usize, s: usize) -> Result<Self> {
        if n == 0 || a == 0 {
            return Err(Error::InvalidSpec(format!("n and a must be positive, got n={n}, a={a}")));
        }
        let ambient_dim = binomial(n + a, n) - 1;
        if s == 0 || k >= s || s > ambient_dim {
            return Err(Error::InvalidArgument(format!(
                "need 0 <= k <= s-1 < N, got k={k}, s={s}, N={ambient_dim}"
            )));
        }
        Ok(GrassmannQuery {
            n,
            a,
            k,
            s,
            ambient_dim,
        })
    }

    /// The Segre product `P^k × ν_a(P^n)` as a Segre-Veronese variety; `None` for `k = 0`.
    pub fn segre_product(&self) -> Option<SegreVeroneseSpec> {
        SegreVeroneseSpec::new(self.n, self.k, self.a, 1).ok()
    }
}

/// `min{sn + (k+1)(s-1-k), (k+1)(N-k)}`.
pub fn grassmann_expected_dim(q: &GrassmannQuery) -> usize {
    let (n, k, s, big_n) = (q.n, q.k, q.s, q.ambient_dim);
    (s * n + (k + 1) * (s - 1 - k)).min((k + 1) * (big_n - k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrassmannMethod {
    /// `k = 1` through the closed-form classification.
    Classified,
    /// `k = 0`: tangent spaces of `ν_a(P^n)` directly.
    VeroneseTangent,
    /// Tangent spaces of `X_(n,k,a,1)` by Monte-Carlo.
    SegreTangent,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannReport {
    pub query: GrassmannQuery,
    pub expected_dim: usize,
    pub dim: usize,
    pub defect: usize,
    pub method: GrassmannMethod,
    /// `"classified"` when a closed-form verdict backs the number, else `"unclassified"`.
    pub verdict: String,
}

fn report(q: &GrassmannQuery, defect: usize, method: GrassmannMethod, classified: bool) -> Result<GrassmannReport> {
    let expected_dim = grassmann_expected_dim(q);
    let dim = expected_dim.checked_sub(defect).ok_or_else(|| {
        Error::MalformedMatrix(format!("defect {defect} exceeds expected dimension {expected_dim}"))
    })?;
    Ok(GrassmannReport {
        query: *q,
        expected_dim,
        dim,
        defect,
        method,
        verdict: if classified { "classified" } else { "unclassified" }.to_string(),
    })
}

/// Defect of `σ_s(X_(n,k,a,1))` from the tangent-space engine.
fn segre_defect(q: &GrassmannQuery, plan: &MonteCarloPlan) -> Result<usize> {
    let spec = q
        .segre_product()
        .ok_or_else(|| Error::InvalidArgument("k = 0 has no Segre factor".into()))?;
    let profile = terracini_profile(&spec, q.s, plan)?;
    Ok(expected_dimension(&spec, q.s)? - profile.dim(q.s))
}

/// `dim σ_s(ν_a(P^n))`: rank of the stacked gradients of all degree-`a`
/// monomials at `s` random points, minus one, best over the plan.
pub fn veronese_secant_dimension(n: usize, a: usize, s: usize, plan: &MonteCarloPlan) -> Result<usize> {
    if n == 0 || a == 0 || s == 0 {
        return Err(Error::InvalidArgument(format!(
            "n, a, s must be positive, got ({n},{a},{s})"
        )));
    }
    let basis = exponents(n + 1, a);
    let cols = basis.len();
    let label = format!("ν_{a}(P^{n})");
    check_budget(&label, cols, (s * (n + 1)) as u128, plan.budget)?;
    let mut best = 0;
    for field in plan.fields()? {
        for t in 0..plan.trials {
            let mut rng = point_stream(plan.seed, t as u64);
            let mut echelon = EchelonBasis::new(cols, field);
            for _ in 0..s {
                let p = sample_point(n, &field, &mut rng);
                for row in veronese_gradient(&basis, &p, a, &field) {
                    echelon.insert(&row);
                }
            }
            best = best.max(echelon.rank());
        }
    }
    Ok(best - 1)
}

fn veronese_gradient(basis: &[Vec<u32>], p: &[u64], a: usize, field: &PrimeField) -> Vec<Vec<u64>> {
    let powers: Vec<Vec<u64>> = p
        .iter()
        .map(|&c| {
            let mut row = vec![1u64; a + 1];
            for e in 1..=a {
                row[e] = field.mul(row[e - 1], c);
            }
            row
        })
        .collect();
    (0..p.len())
        .map(|var| {
            basis
                .iter()
                .map(|alpha| {
                    if alpha[var] == 0 {
                        return 0;
                    }
                    alpha.iter().enumerate().fold(field.reduce(alpha[var] as u64), |acc, (i, &e)| {
                        let e = if i == var { e - 1 } else { e };
                        field.mul(acc, powers[i][e as usize])
                    })
                })
                .collect()
        })
        .collect()
}

/// Defect and dimension of `Sec_(k,s-1)(ν_a(P^n))`.
pub fn grassmann_defect(q: &GrassmannQuery, plan: &MonteCarloPlan) -> Result<GrassmannReport> {
    match q.k {
        0 => {
            let dim = veronese_secant_dimension(q.n, q.a, q.s, plan)?;
            let expected = grassmann_expected_dim(q);
            report(q, expected.saturating_sub(dim), GrassmannMethod::VeroneseTangent, false)
        }
        1 => {
            let v = classify(q.n as u64, q.a as u64, 1, q.s as u64)?;
            report(q, v.defect as usize, GrassmannMethod::Classified, true)
        }
        _ => report(q, segre_defect(q, plan)?, GrassmannMethod::SegreTangent, false),
    }
}

/// Forces the Monte-Carlo route on `X_(n,k,a,1)`, for cross-checking `k = 1`.
pub fn grassmann_defect_monte_carlo(q: &GrassmannQuery, plan: &MonteCarloPlan) -> Result<GrassmannReport> {
    if q.k == 0 {
        return grassmann_defect(q, plan);
    }
    report(q, segre_defect(q, plan)?, GrassmannMethod::SegreTangent, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryCell {
    pub n: usize,
    pub a: usize,
    pub s: usize,
    pub expected_dim: usize,
    pub dim: usize,
    pub defect: usize,
    pub monte_carlo_defect: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub n_max: usize,
    pub a_max: usize,
    pub cells: usize,
    pub defective: Vec<CorollaryCell>,
    /// Cells where the Monte-Carlo defect differs from the classified one.
    pub disagreements: Vec<CorollaryCell>,
    pub holds: bool,
}

/// Sweeps `k = 1`, `1 <= n <= n_max`, `1 <= a <= a_max` and every valid `s`.
/// Holds when the only defective cell is `(n,a,s) = (2,3,5)` with defect 1
/// and, if requested, the Monte-Carlo route agrees everywhere.
pub fn check_corollary(n_max: usize, a_max: usize, monte_carlo: Option<&MonteCarloPlan>) -> Result<CorollaryReport> {
    if n_max < 2 || a_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "bounds must be at least 2, got n_max={n_max}, a_max={a_max}"
        )));
    }
    let mut cells = 0;
    let mut defective = Vec::new();
    let mut disagreements = Vec::new();
    for n in 1..=n_max {
        for a in 1..=a_max {
            let big_n = binomial(n + a, n) - 1;
            let mc_dims = match monte_carlo {
                Some(plan) if big_n >= 2 => {
                    let spec = SegreVeroneseSpec::new(n, 1, a, 1)?;
                    Some(terracini_profile(&spec, big_n, plan)?)
                }
                _ => None,
            };
            for s in 2..=big_n {
                let q = GrassmannQuery::new(n, a, 1, s)?;
                let rep = grassmann_defect(&q, &MonteCarloPlan::default())?;
                let monte_carlo_defect = match &mc_dims {
                    Some(profile) => {
                        let spec = SegreVeroneseSpec::new(n, 1, a, 1)?;
                        Some(expected_dimension(&spec, s)? - profile.dim(s))
                    }
                    None => None,
                };
                let cell = CorollaryCell {
                    n,
                    a,
                    s,
                    expected_dim: rep.expected_dim,
                    dim: rep.dim,
                    defect: rep.defect,
                    monte_carlo_defect,
                };
                cells += 1;
                if monte_carlo_defect.is_some_and(|d| d != rep.defect) {
                    disagreements.push(cell.clone());
                }
                if rep.defect > 0 {
                    defective.push(cell);
                }
            }
        }
    }
    let expected_only = defective.len() == 1 && {
        let c = &defective[0];
        (c.n, c.a, c.s, c.defect) == (2, 3, 5, 1)
    };
    let in_range = n_max >= 2 && a_max >= 3;
    let holds = disagreements.is_empty() && if in_range { expected_only } else { defective.is_empty() };
    Ok(CorollaryReport {
        n_max,
        a_max,
        cells,
        defective,
        disagreements,
        holds,
    })
}
