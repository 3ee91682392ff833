//! Secant dimensions from tangent spaces at random points.
//!
//! `dim σ_s(X) = rank(T) - 1` where `T` stacks, for each of `s` random points
//! of `P^n x P^m`, the gradients of the monomial parametrization
//! `(x, y) -> (x^alpha y^beta)`. Random evaluation can only lose rank, so
//! every computed dimension is a lower bound for the generic one and trials
//! are aggregated by maximum.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{point_stream, sample_point, PointStream, PrimeField, DEFAULT_PRIME, RNG_DESCRIPTION, VERIFICATION_PRIME};
use crate::matrix::{ConditionMatrix, EchelonBasis};
use crate::monomial::{bigraded_basis, BiExponent};
use crate::numerology::expected_dimension;
use crate::variety::SegreVeroneseSpec;

/// Matrix entries allowed per computation unless configured otherwise.
pub const DEFAULT_BUDGET: u128 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Terracini,
    DoublePoints,
    AffineReduction,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Terracini => "terracini",
            Method::DoublePoints => "double-points",
            Method::AffineReduction => "affine-reduction",
        }
    }
}

/// One computed secant dimension with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantReport {
    pub spec: SegreVeroneseSpec,
    pub s: usize,
    pub expected_dim: usize,
    pub computed_dim: usize,
    pub defect: usize,
    /// Modulus of the run that attained `computed_dim`.
    pub prime: u64,
    pub seed: u64,
    pub trials: usize,
    pub method: Method,
    pub rng: String,
}

impl SecantReport {
    pub fn new(
        spec: SegreVeroneseSpec,
        s: usize,
        computed_dim: usize,
        prime: u64,
        seed: u64,
        trials: usize,
        method: Method,
    ) -> Result<Self> {
        let expected_dim = expected_dimension(&spec, s)?;
        if computed_dim > expected_dim {
            // Terracini bounds the rank by min(N+1, s(n+m+1)); exceeding it is a bug.
            return Err(Error::InvalidArgument(format!(
                "computed dimension {computed_dim} exceeds expected {expected_dim} for {spec}, s = {s}"
            )));
        }
        Ok(SecantReport {
            spec,
            s,
            expected_dim,
            computed_dim,
            defect: expected_dim - computed_dim,
            prime,
            seed,
            trials,
            method,
            rng: RNG_DESCRIPTION.to_string(),
        })
    }
}

/// A point of `P^n x P^m` given by coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPoint {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

/// Samples a point in the chart `x_0 = y_0 = 1`.
pub fn sample_bipoint(spec: &SegreVeroneseSpec, field: &PrimeField, rng: &mut PointStream) -> BiPoint {
    let x = sample_point(spec.n, field, rng);
    let y = sample_point(spec.m, field, rng);
    BiPoint { x, y }
}

/// Randomization parameters shared by every Monte-Carlo computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloPlan {
    pub trials: usize,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub budget: u128,
}

impl Default for MonteCarloPlan {
    fn default() -> Self {
        MonteCarloPlan {
            trials: 3,
            primes: vec![DEFAULT_PRIME, VERIFICATION_PRIME],
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl MonteCarloPlan {
    pub fn with_seed(seed: u64) -> Self {
        MonteCarloPlan {
            seed,
            ..Default::default()
        }
    }

    pub fn fields(&self) -> Result<Vec<PrimeField>> {
        if self.primes.is_empty() {
            return Err(Error::InvalidArgument("at least one prime is required".into()));
        }
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        self.primes.iter().map(|&p| PrimeField::new(p)).collect()
    }
}

/// Maximum dimension per `s = 1..=s_max`, aggregated over primes and trials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionProfile {
    /// `dims[s - 1]` is the computed dimension for `s` points.
    pub dims: Vec<usize>,
    /// First prime in plan order attaining each maximum.
    pub witness_prime: Vec<u64>,
}

impl DimensionProfile {
    pub fn dim(&self, s: usize) -> usize {
        self.dims[s - 1]
    }

    /// Combines per-prime rank profiles (`ranks[s - 1]`) into dimensions.
    pub(crate) fn from_ranks(per_prime: &[(u64, Vec<usize>)], offset: impl Fn(usize) -> usize) -> Self {
        let len = per_prime.first().map_or(0, |(_, r)| r.len());
        let mut dims = Vec::with_capacity(len);
        let mut witness_prime = Vec::with_capacity(len);
        for i in 0..len {
            let (p, best) = per_prime
                .iter()
                .map(|(p, r)| (*p, r[i]))
                .fold((0, None::<usize>), |acc, (p, r)| match acc.1 {
                    Some(b) if b >= r => acc,
                    _ => (p, Some(r)),
                });
            dims.push(offset(best.unwrap_or(0)));
            witness_prime.push(p);
        }
        DimensionProfile { dims, witness_prime }
    }
}

pub(crate) fn check_budget(label: &dyn std::fmt::Display, cols: usize, rows: u128, budget: u128) -> Result<()> {
    let entries = cols as u128 * rows;
    if entries > budget {
        return Err(Error::Sizing {
            spec: label.to_string(),
            entries,
            budget,
        });
    }
    Ok(())
}

/// Max over trials of the rank after each of `s_max` nested point blocks.
///
/// Trial `t` draws its points from stream `t` of the generator seeded with
/// `seed`, so the first `s` blocks of a trial are the same for every `s`.
pub(crate) fn nested_rank_profile<F>(
    cols: usize,
    s_max: usize,
    trials: usize,
    field: PrimeField,
    seed: u64,
    block: F,
) -> Result<Vec<usize>>
where
    F: Fn(&mut PointStream) -> Result<Vec<Vec<u64>>> + Sync,
{
    let per_trial: Vec<Vec<usize>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = point_stream(seed, t as u64);
            let mut basis = EchelonBasis::new(cols, field);
            let mut ranks = Vec::with_capacity(s_max);
            for _ in 0..s_max {
                for row in block(&mut rng)? {
                    basis.insert(&row);
                }
                ranks.push(basis.rank());
            }
            Ok(ranks)
        })
        .collect::<Result<_>>()?;
    Ok((0..s_max)
        .map(|i| per_trial.iter().map(|r| r[i]).max().unwrap_or(0))
        .collect())
}

struct PowerTable {
    powers: Vec<Vec<u64>>,
}

impl PowerTable {
    fn new(coords: &[u64], max_deg: usize, field: &PrimeField) -> Self {
        let powers = coords
            .iter()
            .map(|&c| {
                let mut row = Vec::with_capacity(max_deg + 1);
                let mut acc = 1;
                for _ in 0..=max_deg {
                    row.push(acc);
                    acc = field.mul(acc, c);
                }
                row
            })
            .collect();
        PowerTable { powers }
    }

    /// `coords^exps`, with the exponent at `lowered` decreased by one.
    fn eval(&self, exps: &[u32], lowered: Option<usize>, field: &PrimeField) -> u64 {
        let mut acc = 1;
        for (k, &e) in exps.iter().enumerate() {
            let e = if lowered == Some(k) { e - 1 } else { e };
            acc = field.mul(acc, self.powers[k][e as usize]);
        }
        acc
    }
}

/// Partial derivative of `x^alpha y^beta`; `var < n+1` is `x_var`, the rest
/// index `y`.
fn partial(e: &BiExponent, var: usize, px: &PowerTable, py: &PowerTable, field: &PrimeField) -> u64 {
    let nx = e.alpha.len();
    let (coef, xl, yl) = if var < nx {
        (e.alpha[var], Some(var), None)
    } else {
        (e.beta[var - nx], None, Some(var - nx))
    };
    if coef == 0 {
        return 0;
    }
    let v = field.mul(px.eval(&e.alpha, xl, field), py.eval(&e.beta, yl, field));
    field.mul(coef as u64 % field.modulus(), v)
}

fn check_point(spec: &SegreVeroneseSpec, p: &BiPoint, field: &PrimeField, chart: bool) -> Result<()> {
    if p.x.len() != spec.n + 1 || p.y.len() != spec.m + 1 {
        return Err(Error::InvalidPoint(format!(
            "expected coordinate vectors of lengths {} and {}, got {} and {}",
            spec.n + 1,
            spec.m + 1,
            p.x.len(),
            p.y.len()
        )));
    }
    if chart && (field.reduce(p.x[0]) != 1 || field.reduce(p.y[0]) != 1) {
        return Err(Error::InvalidPoint("leading coordinates must be 1".into()));
    }
    if !chart && (p.x.iter().all(|&c| field.reduce(c) == 0) || p.y.iter().all(|&c| field.reduce(c) == 0)) {
        return Err(Error::InvalidPoint("zero coordinate vector".into()));
    }
    Ok(())
}

/// All `n+m+2` gradient rows of the parametrization at `p`.
fn tangent_block(basis: &[BiExponent], spec: &SegreVeroneseSpec, p: &BiPoint, field: &PrimeField) -> Vec<Vec<u64>> {
    let px = PowerTable::new(&p.x, spec.a, field);
    let py = PowerTable::new(&p.y, spec.b, field);
    (0..spec.n + spec.m + 2)
        .map(|var| basis.iter().map(|e| partial(e, var, &px, &py, field)).collect())
        .collect()
}

/// Value row plus the chart partials `d/dx_1..d/dx_n, d/dy_1..d/dy_m` at a
/// point with `x_0 = y_0 = 1`: the conditions for a form to contain `2P`.
fn double_point_block(basis: &[BiExponent], spec: &SegreVeroneseSpec, p: &BiPoint, field: &PrimeField) -> Vec<Vec<u64>> {
    let px = PowerTable::new(&p.x, spec.a, field);
    let py = PowerTable::new(&p.y, spec.b, field);
    let mut rows = Vec::with_capacity(spec.n + spec.m + 1);
    rows.push(
        basis
            .iter()
            .map(|e| field.mul(px.eval(&e.alpha, None, field), py.eval(&e.beta, None, field)))
            .collect(),
    );
    let chart_vars = (1..=spec.n).chain(spec.n + 2..spec.n + spec.m + 2);
    for var in chart_vars {
        rows.push(basis.iter().map(|e| partial(e, var, &px, &py, field)).collect());
    }
    rows
}

type BlockFn = fn(&[BiExponent], &SegreVeroneseSpec, &BiPoint, &PrimeField) -> Vec<Vec<u64>>;

fn stack(
    spec: &SegreVeroneseSpec,
    points: &[BiPoint],
    field: &PrimeField,
    chart: bool,
    block: BlockFn,
) -> Result<ConditionMatrix> {
    if points.is_empty() {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    let basis = bigraded_basis(spec);
    let mut rows = Vec::new();
    for p in points {
        check_point(spec, p, field, chart)?;
        rows.extend(block(&basis, spec, p, field));
    }
    ConditionMatrix::from_rows(&rows, basis.len(), *field)
}

/// Tangent matrix at chart points: `s(n+m+2)` rows, `N+1` columns ordered by
/// `bigraded_basis`.
pub fn tangent_matrix(spec: &SegreVeroneseSpec, points: &[BiPoint], field: &PrimeField) -> Result<ConditionMatrix> {
    stack(spec, points, field, true, tangent_block)
}

/// Same rows as [`tangent_matrix`] for arbitrary nonzero homogeneous coordinates.
pub fn tangent_matrix_projective(
    spec: &SegreVeroneseSpec,
    points: &[BiPoint],
    field: &PrimeField,
) -> Result<ConditionMatrix> {
    stack(spec, points, field, false, tangent_block)
}

/// Conditions for a bidegree-`(a,b)` form to be singular at every point:
/// `n+m+1` rows per point, kernel `(I_Z)_(a,b)` for `Z` the double points.
pub fn double_point_conditions(
    spec: &SegreVeroneseSpec,
    points: &[BiPoint],
    field: &PrimeField,
) -> Result<ConditionMatrix> {
    stack(spec, points, field, true, double_point_block)
}

fn single_prime_profile(
    spec: &SegreVeroneseSpec,
    s_max: usize,
    trials: usize,
    field: PrimeField,
    seed: u64,
    budget: u128,
    method: Method,
) -> Result<Vec<usize>> {
    if s_max == 0 {
        return Err(Error::InvalidArgument("s must be at least 1".into()));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let rows_per_point = match method {
        Method::DoublePoints => spec.n + spec.m + 1,
        _ => spec.n + spec.m + 2,
    };
    check_budget(spec, spec.monomial_count(), (s_max * rows_per_point) as u128, budget)?;
    let basis = bigraded_basis(spec);
    nested_rank_profile(basis.len(), s_max, trials, field, seed, |rng| {
        let p = sample_bipoint(spec, &field, rng);
        Ok(match method {
            Method::DoublePoints => double_point_block(&basis, spec, &p, &field),
            _ => tangent_block(&basis, spec, &p, &field),
        })
    })
}

fn secant_report(
    spec: &SegreVeroneseSpec,
    s: usize,
    trials: usize,
    field: &PrimeField,
    seed: u64,
    method: Method,
) -> Result<SecantReport> {
    let ranks = single_prime_profile(spec, s, trials, *field, seed, DEFAULT_BUDGET, method)?;
    let rank = ranks[s - 1];
    SecantReport::new(*spec, s, rank.saturating_sub(1), field.modulus(), seed, trials, method)
}

/// `dim σ_s` as the best of `trials` tangent-matrix ranks, minus one.
pub fn secant_dimension(
    spec: &SegreVeroneseSpec,
    s: usize,
    trials: usize,
    field: &PrimeField,
    seed: u64,
) -> Result<SecantReport> {
    secant_report(spec, s, trials, field, seed, Method::Terracini)
}

/// `dim σ_s = H(Z,(a,b)) - 1` with the Hilbert function read off the
/// double-point condition matrix.
pub fn secant_dimension_by_double_points(
    spec: &SegreVeroneseSpec,
    s: usize,
    trials: usize,
    field: &PrimeField,
    seed: u64,
) -> Result<SecantReport> {
    secant_report(spec, s, trials, field, seed, Method::DoublePoints)
}

/// Tangent-matrix dimensions for every `s = 1..=s_max` under `plan`.
pub fn terracini_profile(spec: &SegreVeroneseSpec, s_max: usize, plan: &MonteCarloPlan) -> Result<DimensionProfile> {
    let fields = plan.fields()?;
    let per_prime = fields
        .iter()
        .map(|f| {
            single_prime_profile(spec, s_max, plan.trials, *f, plan.seed, plan.budget, Method::Terracini)
                .map(|r| (f.modulus(), r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DimensionProfile::from_ranks(&per_prime, |r| r.saturating_sub(1)))
}

/// Report for a single `s` under a multi-prime plan.
pub fn secant_dimension_with_plan(spec: &SegreVeroneseSpec, s: usize, plan: &MonteCarloPlan) -> Result<SecantReport> {
    let profile = terracini_profile(spec, s, plan)?;
    SecantReport::new(
        *spec,
        s,
        profile.dim(s),
        profile.witness_prime[s - 1],
        plan.seed,
        plan.trials,
        Method::Terracini,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, m: usize, a: usize, b: usize) -> SegreVeroneseSpec {
        SegreVeroneseSpec::new(n, m, a, b).unwrap()
    }

    fn points(spec: &SegreVeroneseSpec, s: usize, seed: u64, field: &PrimeField) -> Vec<BiPoint> {
        let mut rng = point_stream(seed, 0);
        (0..s).map(|_| sample_bipoint(spec, field, &mut rng)).collect()
    }

    #[test]
    fn one_point_spans_the_tangent_cone() {
        let f = PrimeField::default();
        for (n, m, a, b) in [(1, 1, 1, 1), (2, 1, 3, 1), (3, 2, 2, 3), (1, 3, 4, 1)] {
            let sp = spec(n, m, a, b);
            let t = tangent_matrix(&sp, &points(&sp, 1, 3, &f), &f).unwrap();
            assert_eq!(t.rows(), n + m + 2);
            assert_eq!(t.cols(), sp.monomial_count());
            assert_eq!(t.rank(), n + m + 1);
        }
    }

    #[test]
    fn known_defective_ranks() {
        let f = PrimeField::default();
        let sp = spec(1, 1, 2, 2);
        assert_eq!(tangent_matrix(&sp, &points(&sp, 3, 1, &f), &f).unwrap().rank(), 8);
        let sp = spec(2, 1, 3, 1);
        assert_eq!(tangent_matrix(&sp, &points(&sp, 5, 1, &f), &f).unwrap().rank(), 19);
    }

    #[test]
    fn double_point_kernels() {
        let f = PrimeField::default();
        for ((n, m, a, b), s, kernel) in [((1, 1, 1, 1), 1, 1), ((2, 1, 3, 1), 5, 1), ((1, 1, 2, 2), 3, 1)] {
            let sp = spec(n, m, a, b);
            let c = double_point_conditions(&sp, &points(&sp, s, 8, &f), &f).unwrap();
            assert_eq!(c.rows(), s * (n + m + 1));
            assert_eq!(c.kernel_dimension(), kernel, "{sp}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = PrimeField::default();
        let sp = spec(2, 1, 2, 1);
        assert!(tangent_matrix(&sp, &[], &f).is_err());
        let bad = BiPoint { x: vec![1, 2], y: vec![1, 3] };
        assert!(matches!(tangent_matrix(&sp, &[bad], &f), Err(Error::InvalidPoint(_))));
        let off_chart = BiPoint { x: vec![2, 2, 2], y: vec![1, 3] };
        assert!(tangent_matrix(&sp, std::slice::from_ref(&off_chart), &f).is_err());
        assert!(tangent_matrix_projective(&sp, &[off_chart], &f).is_ok());
        assert!(secant_dimension(&sp, 0, 3, &f, 0).is_err());
        assert!(secant_dimension(&sp, 1, 0, &f, 0).is_err());
    }

    #[test]
    fn secant_reports() {
        let f = PrimeField::default();
        let r = secant_dimension(&spec(1, 1, 1, 1), 2, 3, &f, 0).unwrap();
        assert_eq!((r.expected_dim, r.computed_dim, r.defect), (3, 3, 0));
        assert_eq!(r.method, Method::Terracini);

        let r = secant_dimension(&spec(3, 1, 2, 2), 5, 3, &f, 0).unwrap();
        assert_eq!((r.expected_dim, r.computed_dim, r.defect), (24, 23, 1));

        let r = secant_dimension_by_double_points(&spec(2, 1, 3, 1), 5, 3, &f, 0).unwrap();
        assert_eq!((r.expected_dim, r.computed_dim, r.defect), (19, 18, 1));
        assert_eq!(r.method, Method::DoublePoints);
    }

    #[test]
    fn filling_case_agrees_across_primes() {
        let sp = spec(3, 1, 4, 1);
        for p in [DEFAULT_PRIME, VERIFICATION_PRIME] {
            let r = secant_dimension(&sp, 14, 3, &PrimeField::new(p).unwrap(), 0).unwrap();
            assert_eq!(r.computed_dim, 69);
            assert_eq!(r.defect, 0);
        }
    }

    #[test]
    fn sizing_guard_names_the_spec() {
        let sp = spec(3, 1, 4, 1);
        let plan = MonteCarloPlan {
            budget: 1000,
            ..Default::default()
        };
        match terracini_profile(&sp, 14, &plan) {
            Err(Error::Sizing { spec, entries, budget }) => {
                assert_eq!(spec, "X(3,1,4,1)");
                assert_eq!(entries, 70 * 14 * 6);
                assert_eq!(budget, 1000);
            }
            other => panic!("expected sizing error, got {other:?}"),
        }
    }

    #[test]
    fn chart_invariance() {
        let f = PrimeField::default();
        let sp = spec(2, 2, 2, 3);
        let pts = points(&sp, 4, 21, &f);
        let scaled: Vec<BiPoint> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let (l, m) = (7 + i as u64, 1_000_003 * (i as u64 + 2));
                BiPoint {
                    x: p.x.iter().map(|&c| f.mul(c, l)).collect(),
                    y: p.y.iter().map(|&c| f.mul(c, m)).collect(),
                }
            })
            .collect();
        let r1 = tangent_matrix(&sp, &pts, &f).unwrap().rank();
        let r2 = tangent_matrix_projective(&sp, &scaled, &f).unwrap().rank();
        assert_eq!(r1, r2);
    }

    #[test]
    fn profile_matches_single_reports() {
        let sp = spec(2, 1, 2, 2);
        let plan = MonteCarloPlan::with_seed(4);
        let prof = terracini_profile(&sp, 7, &plan).unwrap();
        assert_eq!(prof.dims, vec![3, 7, 11, 14, 16, 17, 17]);
        let single = secant_dimension_with_plan(&sp, 5, &plan).unwrap();
        assert_eq!(single.computed_dim, 16);
        assert_eq!(single.defect, 1);
    }
}
