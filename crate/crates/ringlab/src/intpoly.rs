//! Integer-ideal claims decided through residues, and polynomial
//! membership witnesses over prime fields.
//!
//! For an ideal `nZ` of `Z`, every condition in the absorbing-ideal
//! definitions (`a^3 - b^3 in I`, `a - b in I`, `a^2+ab+b^2 in I`) is a
//! congruence mod `n`, so quantifying over `Z` is the same as
//! quantifying over residues, i.e. over the zero ideal of `Z_n`.

use crate::error::RingError;
use crate::ideal::zero_ideal;
use crate::predicates::{self, Mode, Verdict};
use crate::ring::make_zn;

/// Predicate results for `nZ`, with witnesses as residues in `0..n-1`.
/// Negative representatives from hand calculations normalize to
/// residues (`b = -2` appears as `n - 2`).
#[derive(Debug, Clone)]
pub struct IntegerIdealReport {
    pub n: u64,
    pub cdf: Verdict,
    pub sdf: Verdict,
    pub prime: Verdict,
    pub star_prime: Verdict,
    pub cube_condition: Verdict,
}

pub fn classify_integer_ideal(n: u64) -> Result<IntegerIdealReport, RingError> {
    classify_integer_ideal_jobs(n, 1)
}

pub fn classify_integer_ideal_jobs(n: u64, jobs: usize) -> Result<IntegerIdealReport, RingError> {
    let ring = make_zn(n)?;
    let zero = zero_ideal(&ring);
    Ok(IntegerIdealReport {
        n,
        cdf: predicates::is_cdf(&zero, Mode::AllPairs, jobs)?,
        sdf: predicates::is_sdf(&zero, Mode::NonzeroPairs, jobs)?,
        prime: predicates::is_prime(&zero, jobs)?,
        star_prime: predicates::is_star_prime(&zero, Mode::AllPairs, jobs)?,
        cube_condition: predicates::cube_condition(&zero)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntPredicate {
    Cdf,
    Sdf,
    Prime,
    StarPrime,
    CubeCondition,
}

impl IntPredicate {
    pub fn as_str(&self) -> &'static str {
        match self {
            IntPredicate::Cdf => "cdf",
            IntPredicate::Sdf => "sdf",
            IntPredicate::Prime => "prime",
            IntPredicate::StarPrime => "star-prime",
            IntPredicate::CubeCondition => "cube-condition",
        }
    }
}

impl std::str::FromStr for IntPredicate {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cdf" => Ok(IntPredicate::Cdf),
            "sdf" => Ok(IntPredicate::Sdf),
            "prime" => Ok(IntPredicate::Prime),
            "star-prime" | "star_prime" => Ok(IntPredicate::StarPrime),
            "cube-condition" | "cube_condition" => Ok(IntPredicate::CubeCondition),
            other => Err(format!("unknown predicate: {other}")),
        }
    }
}

/// All `n` in `lo..=hi` whose ideal `nZ` satisfies the predicate,
/// ascending.
pub fn search_integer_ideals(
    lo: u64,
    hi: u64,
    predicate: IntPredicate,
) -> Result<Vec<u64>, RingError> {
    search_integer_ideals_jobs(lo, hi, predicate, 1)
}

pub fn search_integer_ideals_jobs(
    lo: u64,
    hi: u64,
    predicate: IntPredicate,
    jobs: usize,
) -> Result<Vec<u64>, RingError> {
    if lo < 2 || lo > hi {
        return Err(RingError::InvalidOrder(lo));
    }
    let mut out = Vec::new();
    for n in lo..=hi {
        let report = classify_integer_ideal_jobs(n, jobs)?;
        let holds = match predicate {
            IntPredicate::Cdf => report.cdf.holds,
            IntPredicate::Sdf => report.sdf.holds,
            IntPredicate::Prime => report.prime.holds,
            IntPredicate::StarPrime => report.star_prime.holds,
            IntPredicate::CubeCondition => report.cube_condition.holds,
        };
        if holds {
            out.push(n);
        }
    }
    Ok(out)
}

/// Dense polynomial over `Z_p`, little-endian coefficients, normalized
/// (no trailing zeros; the zero polynomial is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(p: u64, coeffs: &[u64]) -> Self {
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { p, coeffs: c }
    }

    pub fn zero(p: u64) -> Self {
        Poly { p, coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % p;
            }
        }
        Poly::new(p, &out)
    }

    /// Remainder of `self` divided by monic-leading `divisor`.
    pub fn rem(&self, divisor: &Poly) -> Result<Poly, RingError> {
        if divisor.is_zero() {
            return Err(RingError::InvalidModulus);
        }
        let p = self.p;
        let d = divisor.coeffs.len() - 1;
        let lead = divisor.coeffs[d];
        let lead_inv = mod_inverse(lead, p).ok_or(RingError::InvalidModulus)?;
        let mut r = self.coeffs.clone();
        while r.len() > d {
            let k = r.len() - 1;
            let factor = r[k] * lead_inv % p;
            if factor != 0 {
                for j in 0..=d {
                    let idx = k - d + j;
                    r[idx] = (r[idx] + p - factor * divisor.coeffs[j] % p) % p;
                }
            }
            r.pop();
        }
        Ok(Poly::new(p, &r))
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    (1..p).find(|&x| a * x % p == 1)
}

/// True iff `g` lies in the principal ideal `(f)` of `Z_p[X]`, i.e. the
/// remainder of `g` by `f` vanishes. `f` must be nonzero.
pub fn poly_principal_witness(p: u64, f: &Poly, g: &Poly) -> Result<bool, RingError> {
    if f.is_zero() {
        return Err(RingError::InvalidModulus);
    }
    debug_assert_eq!(f.p, p);
    debug_assert_eq!(g.p, p);
    Ok(g.rem(f)?.is_zero())
}
