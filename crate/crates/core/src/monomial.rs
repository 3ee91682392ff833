//! Monomial bases on both sides of the affine-projective dictionary.
//!
//! Bidegree-`(a,b)` monomials `x^alpha y^beta` on `P^n x P^m` correspond to
//! degree-`(a+b)` monomials `z^gamma` on `P^(n+m)` lying in `I_H1^b ∩ I_H2^a`,
//! where `H1 = V(z_n, ..., z_(n+m))` and `H2 = V(z_0, ..., z_n)`. The variable
//! `z_n` belongs to both blocks.
//!
//! All lists are in lexicographic order with the first variable's exponent
//! decreasing; for a fixed total degree this is graded lex.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::variety::SegreVeroneseSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiExponent {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplitExponent {
    pub gamma: Vec<u32>,
}

/// All exponent vectors of length `vars` summing to `degree`, lex descending.
pub fn exponents(vars: usize, degree: usize) -> Vec<Vec<u32>> {
    fn go(vars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            go(vars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(vars, degree as u32, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Basis of bidegree-`(a,b)` forms: `C(n+a,n) C(m+b,m)` exponents.
pub fn bigraded_basis(spec: &SegreVeroneseSpec) -> Vec<BiExponent> {
    let xs = exponents(spec.n + 1, spec.a);
    let ys = exponents(spec.m + 1, spec.b);
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for alpha in &xs {
        for beta in &ys {
            out.push(BiExponent {
                alpha: alpha.clone(),
                beta: beta.clone(),
            });
        }
    }
    out
}

impl SplitExponent {
    /// Degree in `z_0, ..., z_n`.
    pub fn first_block_degree(&self, n: usize) -> u32 {
        self.gamma[..=n].iter().sum()
    }

    /// Degree in `z_n, ..., z_(n+m)`.
    pub fn second_block_degree(&self, n: usize) -> u32 {
        self.gamma[n..].iter().sum()
    }
}

/// Degree-`(a+b)` monomials of `P^(n+m)` in `I_H1^b ∩ I_H2^a`.
pub fn split_basis(spec: &SegreVeroneseSpec) -> Vec<SplitExponent> {
    let (n, a, b) = (spec.n, spec.a as u32, spec.b as u32);
    exponents(spec.n + spec.m + 1, spec.a + spec.b)
        .into_iter()
        .map(|gamma| SplitExponent { gamma })
        .filter(|g| g.first_block_degree(n) >= a && g.second_block_degree(n) >= b)
        .collect()
}

/// `gamma -> (alpha, beta)`: the overlap exponent `gamma_n` splits as
/// `alpha_n + beta_0` with both block degrees forced.
pub fn split_to_bigraded(spec: &SegreVeroneseSpec, g: &SplitExponent) -> Result<BiExponent> {
    let (n, m) = (spec.n, spec.m);
    if g.gamma.len() != n + m + 1 {
        return Err(Error::InvalidArgument(format!(
            "split exponent has length {}, expected {}",
            g.gamma.len(),
            n + m + 1
        )));
    }
    let head: u32 = g.gamma[..n].iter().sum();
    let tail: u32 = g.gamma[n + 1..].iter().sum();
    let (a, b) = (spec.a as u32, spec.b as u32);
    if head > a || tail > b || head + g.gamma[n] + tail != a + b {
        return Err(Error::InvalidArgument(format!(
            "{:?} is not in the degree-{} part of I_H1^{b} ∩ I_H2^{a}",
            g.gamma,
            a + b
        )));
    }
    let mut alpha = g.gamma[..n].to_vec();
    alpha.push(a - head);
    let mut beta = vec![b - tail];
    beta.extend_from_slice(&g.gamma[n + 1..]);
    Ok(BiExponent { alpha, beta })
}

pub fn bigraded_to_split(spec: &SegreVeroneseSpec, e: &BiExponent) -> Result<SplitExponent> {
    let (n, m) = (spec.n, spec.m);
    let ok = e.alpha.len() == n + 1
        && e.beta.len() == m + 1
        && e.alpha.iter().sum::<u32>() == spec.a as u32
        && e.beta.iter().sum::<u32>() == spec.b as u32;
    if !ok {
        return Err(Error::InvalidArgument(format!(
            "{e:?} is not a bidegree ({},{}) exponent",
            spec.a, spec.b
        )));
    }
    let mut gamma = e.alpha[..n].to_vec();
    gamma.push(e.alpha[n] + e.beta[0]);
    gamma.extend_from_slice(&e.beta[1..]);
    Ok(SplitExponent { gamma })
}

/// Index-level matching between `bigraded_basis` and `split_basis`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisBijection {
    pub bigraded: Vec<BiExponent>,
    pub split: Vec<SplitExponent>,
    /// `split_index_of[i]` is the split-basis position matched to bigraded position `i`.
    pub split_index_of: Vec<usize>,
}

/// Builds the matching and checks that it is a bijection.
pub fn basis_bijection(spec: &SegreVeroneseSpec) -> Result<BasisBijection> {
    let bigraded = bigraded_basis(spec);
    let split = split_basis(spec);
    if bigraded.len() != split.len() {
        return Err(Error::InvalidArgument(format!(
            "basis sizes differ for {spec}: {} vs {}",
            bigraded.len(),
            split.len()
        )));
    }
    let position: HashMap<&SplitExponent, usize> = split.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut hit = vec![false; split.len()];
    let mut split_index_of = Vec::with_capacity(bigraded.len());
    for e in &bigraded {
        let g = bigraded_to_split(spec, e)?;
        let &j = position
            .get(&g)
            .ok_or_else(|| Error::InvalidArgument(format!("{g:?} missing from the split basis")))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::InvalidArgument(format!("{g:?} hit twice")));
        }
        if split_to_bigraded(spec, &split[j])? != *e {
            return Err(Error::InvalidArgument(format!("maps disagree at {e:?}")));
        }
        split_index_of.push(j);
    }
    Ok(BasisBijection {
        bigraded,
        split,
        split_index_of,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    fn spec(n: usize, m: usize, a: usize, b: usize) -> SegreVeroneseSpec {
        SegreVeroneseSpec::new(n, m, a, b).unwrap()
    }

    #[test]
    fn segre_of_two_lines() {
        let basis = bigraded_basis(&spec(1, 1, 1, 1));
        let got: Vec<(Vec<u32>, Vec<u32>)> = basis.into_iter().map(|e| (e.alpha, e.beta)).collect();
        assert_eq!(
            got,
            vec![
                (vec![1, 0], vec![1, 0]),
                (vec![1, 0], vec![0, 1]),
                (vec![0, 1], vec![1, 0]),
                (vec![0, 1], vec![0, 1]),
            ]
        );
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(bigraded_basis(&spec(2, 1, 3, 1)).len(), 20);
        assert_eq!(bigraded_basis(&spec(3, 1, 4, 1)).len(), 70);
        assert_eq!(split_basis(&spec(2, 1, 2, 1)).len(), 12);
        assert_eq!(split_basis(&spec(3, 1, 4, 1)).len(), 70);
    }

    #[test]
    fn split_basis_of_two_lines() {
        let got: Vec<Vec<u32>> = split_basis(&spec(1, 1, 1, 1)).into_iter().map(|g| g.gamma).collect();
        // z0z1, z0z2, z1^2, z1z2
        assert_eq!(got, vec![vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1]]);
    }

    #[test]
    fn split_count_by_exhaustive_filter() {
        // Independent count: every degree-5 monomial in 5 variables, tested by brute force.
        let mut count = 0;
        for g0 in 0..=5u32 {
            for g1 in 0..=5 - g0 {
                for g2 in 0..=5 - g0 - g1 {
                    for g3 in 0..=5 - g0 - g1 - g2 {
                        let g4 = 5 - g0 - g1 - g2 - g3;
                        if g0 + g1 + g2 + g3 >= 4 && g3 + g4 >= 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(count, 70);
        assert_eq!(split_basis(&spec(3, 1, 4, 1)).len(), count);
    }

    #[test]
    fn forced_correspondences() {
        let s = spec(1, 1, 1, 1);
        let z1sq = SplitExponent { gamma: vec![0, 2, 0] };
        assert_eq!(
            split_to_bigraded(&s, &z1sq).unwrap(),
            BiExponent { alpha: vec![0, 1], beta: vec![1, 0] }
        );
        let z0z2 = SplitExponent { gamma: vec![1, 0, 1] };
        assert_eq!(
            split_to_bigraded(&s, &z0z2).unwrap(),
            BiExponent { alpha: vec![1, 0], beta: vec![0, 1] }
        );
        assert!(split_to_bigraded(&s, &SplitExponent { gamma: vec![2, 0, 0] }).is_err());
    }

    #[test]
    fn full_matching_for_plane_cubics() {
        let bij = basis_bijection(&spec(2, 1, 3, 1)).unwrap();
        assert_eq!(bij.split_index_of.len(), 20);
        let mut seen = bij.split_index_of.clone();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 20);
    }

    #[test]
    fn exhaustive_sweep_of_small_specs() {
        for n in 1..=5 {
            for m in 1..=6 - n {
                for a in 1..=9 {
                    for b in 1..=10 - a {
                        let s = spec(n, m, a, b);
                        let expected = (binomial(n + a, n) * binomial(m + b, m)) as usize;
                        let bij = basis_bijection(&s).unwrap();
                        assert_eq!(bij.bigraded.len(), expected, "{s}");
                        assert_eq!(bij.split.len(), expected, "{s}");
                        for (e, &j) in bij.bigraded.iter().zip(&bij.split_index_of) {
                            let back = split_to_bigraded(&s, &bij.split[j]).unwrap();
                            assert_eq!(&back, e);
                            assert_eq!(back.alpha.iter().sum::<u32>(), a as u32);
                            assert_eq!(back.beta.iter().sum::<u32>(), b as u32);
                        }
                    }
                }
            }
        }
    }
}
