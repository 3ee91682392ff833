//! Second route to secant dimensions through `P^(n+m)`.
//!
//! Bidegree-`(a,b)` forms singular at `s` points of `P^n x P^m` correspond to
//! degree-`(a+b)` forms on `P^(n+m)` in `I_H1^b ∩ I_H2^a` singular at `s`
//! generic points, so `dim σ_s = N - dim (I_{bH1 + aH2 + 2P_1 + ... + 2P_s})_(a+b)`.
//!
//! Points live in the chart `z_(n+m) = 1`, which misses `H1`; a draw with
//! `z_0 = ... = z_n = 0` lies on `H2` and is redrawn.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{point_stream, sample_point, PointStream, PrimeField};
use crate::matrix::EchelonBasis;
use crate::monomial::{split_basis, SplitExponent};
use crate::terracini::{check_budget, Method, MonteCarloPlan, SecantReport, DEFAULT_BUDGET};
use crate::variety::SegreVeroneseSpec;

/// Redraws allowed before a point on `H1 ∪ H2` is reported as an error.
pub const MAX_REDRAWS: usize = 16;

/// The scheme `bH1 + aH2 + 2P_1 + ... + 2P_s + P'_1 + ... + P'_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSchemeSpec {
    pub n: usize,
    pub m: usize,
    pub a: usize,
    pub b: usize,
    /// Double points.
    pub s: usize,
    /// Additional reduced points.
    pub simple_points: usize,
}

impl AffineSchemeSpec {
    pub fn new(spec: &SegreVeroneseSpec, s: usize) -> Self {
        AffineSchemeSpec {
            n: spec.n,
            m: spec.m,
            a: spec.a,
            b: spec.b,
            s,
            simple_points: 0,
        }
    }

    pub fn variety(&self) -> Result<SegreVeroneseSpec> {
        SegreVeroneseSpec::new(self.n, self.m, self.a, self.b)
    }
}

/// A chart point of `P^(n+m)` off `H1 ∪ H2`; the last coordinate is 1.
fn sample_off_fat_spaces(n: usize, m: usize, field: &PrimeField, rng: &mut PointStream, seed: u64) -> Result<Vec<u64>> {
    for _ in 0..MAX_REDRAWS {
        let mut z = sample_point(n + m, field, rng);
        z.rotate_left(1);
        let on_h1 = z[n..].iter().all(|&c| c == 0);
        let on_h2 = z[..=n].iter().all(|&c| c == 0);
        if !on_h1 && !on_h2 {
            return Ok(z);
        }
    }
    Err(Error::GenericityExhausted {
        attempts: MAX_REDRAWS,
        seed,
    })
}

/// Value of `z^gamma` and of its chart partials `d/dz_0 .. d/dz_(n+m-1)`.
fn point_rows(basis: &[SplitExponent], z: &[u64], max_deg: usize, field: &PrimeField, double: bool) -> Vec<Vec<u64>> {
    let powers: Vec<Vec<u64>> = z
        .iter()
        .map(|&c| {
            let mut row = vec![1u64; max_deg + 1];
            for e in 1..=max_deg {
                row[e] = field.mul(row[e - 1], c);
            }
            row
        })
        .collect();
    let eval = |gamma: &[u32], lowered: Option<usize>| {
        gamma.iter().enumerate().fold(1, |acc, (k, &e)| {
            let e = if lowered == Some(k) { e - 1 } else { e };
            field.mul(acc, powers[k][e as usize])
        })
    };
    let mut rows = vec![basis.iter().map(|g| eval(&g.gamma, None)).collect::<Vec<_>>()];
    if double {
        for var in 0..z.len() - 1 {
            rows.push(
                basis
                    .iter()
                    .map(|g| match g.gamma[var] {
                        0 => 0,
                        c => field.mul(c as u64 % field.modulus(), eval(&g.gamma, Some(var))),
                    })
                    .collect(),
            );
        }
    }
    rows
}

/// Simple points of trial `t` come from stream `SIMPLE_STREAM + t`, so the
/// double points of a trial do not depend on how many simple points there are.
const SIMPLE_STREAM: u64 = 1 << 32;

/// Ideal dimensions after `s = 0..=s_max` double points (plus the scheme's
/// simple points), minimized over `trials`.
fn ideal_dimension_profile(
    scheme: &AffineSchemeSpec,
    s_max: usize,
    trials: usize,
    field: PrimeField,
    seed: u64,
    budget: u128,
) -> Result<Vec<usize>> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let spec = scheme.variety()?;
    let basis = split_basis(&spec);
    let (n, m) = (scheme.n, scheme.m);
    let rows = (s_max * (n + m + 1) + scheme.simple_points) as u128;
    check_budget(&spec, basis.len(), rows, budget)?;
    let deg = scheme.a + scheme.b;
    let cols = basis.len();

    let per_trial: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut echelon = EchelonBasis::new(cols, field);
            let mut simple_rng = point_stream(seed, SIMPLE_STREAM + t as u64);
            for _ in 0..scheme.simple_points {
                let z = sample_off_fat_spaces(n, m, &field, &mut simple_rng, seed)?;
                for row in point_rows(&basis, &z, deg, &field, false) {
                    echelon.insert(&row);
                }
            }
            let mut rng = point_stream(seed, t as u64);
            let mut dims = Vec::with_capacity(s_max + 1);
            dims.push(cols - echelon.rank());
            for _ in 0..s_max {
                let z = sample_off_fat_spaces(n, m, &field, &mut rng, seed)?;
                for row in point_rows(&basis, &z, deg, &field, true) {
                    echelon.insert(&row);
                }
                dims.push(cols - echelon.rank());
            }
            Ok(dims)
        })
        .collect::<Result<_>>()?;
    Ok((0..=s_max)
        .map(|i| per_trial.iter().map(|d| d[i]).min().unwrap_or(cols))
        .collect())
}

/// `dim (I_{bH1 + aH2 + 2P_1 + ... + 2P_s + P'_1 + ...})_(a+b)` for one draw of
/// points: the size of the split basis minus the rank of the value and chart
/// partial rows at each double point and the value row at each simple point.
pub fn ideal_dimension(scheme: &AffineSchemeSpec, field: &PrimeField, seed: u64) -> Result<usize> {
    let dims = ideal_dimension_profile(scheme, scheme.s, 1, *field, seed, DEFAULT_BUDGET)?;
    Ok(dims[scheme.s])
}

/// `dim σ_s = N - dim (I_{bH1 + aH2 + 2P_1 + ... + 2P_s})_(a+b)`, best of `trials`.
pub fn secant_dimension_via_reduction(
    spec: &SegreVeroneseSpec,
    s: usize,
    trials: usize,
    field: &PrimeField,
    seed: u64,
) -> Result<SecantReport> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let dims = ideal_dimension_profile(&AffineSchemeSpec::new(spec, s), s, trials, *field, seed, DEFAULT_BUDGET)?;
    SecantReport::new(
        *spec,
        s,
        spec.ambient_dim - dims[s],
        field.modulus(),
        seed,
        trials,
        Method::AffineReduction,
    )
}

/// Reduction-route dimensions for `s = 1..=s_max` under `plan`.
pub fn reduction_profile(
    spec: &SegreVeroneseSpec,
    s_max: usize,
    plan: &MonteCarloPlan,
) -> Result<crate::terracini::DimensionProfile> {
    if s_max == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let scheme = AffineSchemeSpec::new(spec, s_max);
    let per_prime = plan
        .fields()?
        .into_iter()
        .map(|f| {
            ideal_dimension_profile(&scheme, s_max, plan.trials, f, plan.seed, plan.budget)
                .map(|d| (f.modulus(), d[1..].iter().map(|&k| spec.monomial_count() - k).collect()))
        })
        .collect::<Result<Vec<(u64, Vec<usize>)>>>()?;
    Ok(crate::terracini::DimensionProfile::from_ranks(&per_prime, |r| r - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn spec(n: usize, m: usize, a: usize, b: usize) -> SegreVeroneseSpec {
        SegreVeroneseSpec::new(n, m, a, b).unwrap()
    }

    #[test]
    fn empty_scheme_has_full_count() {
        let f = PrimeField::default();
        for (n, m, a, b) in [(1, 1, 1, 1), (2, 1, 3, 1), (2, 3, 2, 2), (4, 1, 5, 5)] {
            let scheme = AffineSchemeSpec::new(&spec(n, m, a, b), 0);
            let count = binomial(n + a, n) * binomial(m + b, m);
            assert_eq!(ideal_dimension(&scheme, &f, 0).unwrap(), count);
        }
    }

    #[test]
    fn known_ideal_dimensions() {
        let f = PrimeField::default();
        assert_eq!(ideal_dimension(&AffineSchemeSpec::new(&spec(2, 1, 2, 1), 1), &f, 0).unwrap(), 8);
        assert_eq!(ideal_dimension(&AffineSchemeSpec::new(&spec(2, 1, 3, 1), 5), &f, 0).unwrap(), 1);
    }

    #[test]
    fn reduction_dimensions() {
        let f = PrimeField::default();
        let r = secant_dimension_via_reduction(&spec(1, 1, 2, 2), 3, 3, &f, 0).unwrap();
        assert_eq!((r.computed_dim, r.method), (7, Method::AffineReduction));
        assert_eq!(secant_dimension_via_reduction(&spec(2, 1, 3, 1), 5, 3, &f, 0).unwrap().computed_dim, 18);
        let r = secant_dimension_via_reduction(&spec(3, 1, 3, 1), 8, 3, &f, 0).unwrap();
        assert_eq!((r.computed_dim, r.defect), (39, 0));
    }

    #[test]
    fn simple_points_impose_one_condition_each() {
        let f = PrimeField::default();
        for (sp, s) in [(spec(2, 1, 3, 1), 3), (spec(1, 2, 2, 2), 2), (spec(2, 2, 2, 1), 1), (spec(3, 1, 2, 2), 5)] {
            let mut scheme = AffineSchemeSpec::new(&sp, s);
            let mut prev = ideal_dimension(&scheme, &f, 9).unwrap();
            while prev > 0 {
                scheme.simple_points += 1;
                let next = ideal_dimension(&scheme, &f, 9).unwrap();
                assert_eq!(next + 1, prev, "{sp} with {} simple points", scheme.simple_points);
                prev = next;
            }
        }
    }

    #[test]
    fn rejects_s_zero_and_oversized() {
        let f = PrimeField::default();
        assert!(secant_dimension_via_reduction(&spec(1, 1, 1, 1), 0, 1, &f, 0).is_err());
        let plan = MonteCarloPlan {
            budget: 10,
            ..Default::default()
        };
        assert!(matches!(reduction_profile(&spec(2, 1, 2, 1), 3, &plan), Err(Error::Sizing { .. })));
    }

    #[test]
    fn sampled_points_avoid_the_fat_spaces() {
        let f = PrimeField::new(2).unwrap();
        let mut rng = point_stream(1, 0);
        // Over F_2 the chance of landing on H2 is 1/4 per draw.
        for _ in 0..200 {
            match sample_off_fat_spaces(2, 1, &f, &mut rng, 1) {
                Ok(z) => {
                    assert_eq!(z[3], 1);
                    assert!(z[..=2].iter().any(|&c| c != 0));
                }
                Err(e) => assert!(matches!(e, Error::GenericityExhausted { .. })),
            }
        }
    }
}
