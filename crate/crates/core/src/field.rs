//! Prime-field arithmetic and seeded point sampling.
//!
//! Elements are `u64` values reduced into `[0, p)`. Products of two reduced
//! elements are formed in `u64` when `p < 2^32` (the product stays below
//! `2^64`) and in `u128` otherwise, so every modulus in the 64-bit range is
//! supported without overflow.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default modulus, `2^31 - 1`.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;
/// Second modulus used to confirm ranks.
pub const VERIFICATION_PRIME: u64 = 2_147_483_629;
/// Third modulus, consulted when the first two disagree.
pub const TIEBREAK_PRIME: u64 = 2_147_483_587;

/// Description of the point stream, recorded in every report.
pub const RNG_DESCRIPTION: &str =
    "ChaCha8Rng (rand_chacha 0.3) seeded by seed_from_u64(seed), stream = trial index; coordinates via gen_range(0..p)";

const SMALL_LIMIT: u64 = 1 << 32;

/// The field `Z/pZ` for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.p as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= self.p {
            s.wrapping_sub(self.p)
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a.wrapping_add(self.p.wrapping_sub(b))
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < SMALL_LIMIT {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    /// `acc + f * x`, reduced.
    #[inline]
    pub fn mul_add(&self, acc: u64, f: u64, x: u64) -> u64 {
        if self.p < SMALL_LIMIT {
            // f * x <= (p-1)^2 and acc < p keep the sum below 2^64.
            (acc + f * x) % self.p
        } else {
            ((acc as u128 + f as u128 * x as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let (mut old_r, mut r) = (a as i128, self.p as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Some(old_s.rem_euclid(self.p as i128) as u64)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The generator behind every random point.
pub type PointStream = ChaCha8Rng;

/// Opens stream `stream` of the generator seeded with `seed`.
pub fn point_stream(seed: u64, stream: u64) -> PointStream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples a point of `P^dim` in the affine chart where the first
/// coordinate is 1; the remaining `dim` coordinates are uniform in `[0, p)`.
pub fn sample_point<R: Rng + ?Sized>(dim: usize, field: &PrimeField, rng: &mut R) -> Vec<u64> {
    let mut v = Vec::with_capacity(dim + 1);
    v.push(1);
    for _ in 0..dim {
        v.push(rng.gen_range(0..field.modulus()));
    }
    v
}
