//! Exhaustive-scan decision procedures for the ideal predicates.
//!
//! Every scan walks element pairs in lexicographic `(a, b)` index order
//! and reports the first failing pair, so witnesses are deterministic
//! and independent of the worker count: partitions are merged by taking
//! the global lexicographic minimum of the partition-local minima.

use crate::error::RingError;
use crate::ideal::Ideal;
use crate::ring::ElementId;
use serde::Serialize;

/// Pair-quantifier range. The definitions quantify over all pairs; the
/// sdf definition (and some theorem statements) exclude zero, so both
/// modes are first-class and never silently merged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    AllPairs,
    NonzeroPairs,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::AllPairs => "all-pairs",
            Mode::NonzeroPairs => "nonzero-pairs",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Pair(ElementId, ElementId),
    Single(ElementId),
}

/// Outcome of a predicate scan.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub pairs_scanned: u64,
    pub mode: Mode,
}

impl Verdict {
    fn pass(pairs_scanned: u64, mode: Mode) -> Self {
        Verdict {
            holds: true,
            witness: None,
            pairs_scanned,
            mode,
        }
    }
}

fn require_proper(ideal: &Ideal) -> Result<(), RingError> {
    if ideal.is_proper() {
        Ok(())
    } else {
        Err(RingError::NotProper)
    }
}

/// Scan pairs in lexicographic order for the first `fails(a, b)`.
/// `jobs > 1` partitions rows into contiguous blocks; the reported
/// witness is the minimum over blocks, which equals the global first
/// failure.
fn scan_pairs<F>(ideal: &Ideal, mode: Mode, jobs: usize, fails: F) -> Verdict
where
    F: Fn(ElementId, ElementId) -> bool + Sync,
{
    let ring = ideal.ring();
    let n = ring.order();
    let zero = ring.zero();
    let skip = |x: ElementId| mode == Mode::NonzeroPairs && x == zero;
    let jobs = jobs.max(1).min(n as usize);

    let scan_rows = |lo: u32, hi: u32| -> Option<(u32, u32)> {
        for a in lo..hi {
            let a = ElementId(a);
            if skip(a) {
                continue;
            }
            for b in 0..n {
                let b = ElementId(b);
                if skip(b) {
                    continue;
                }
                if fails(a, b) {
                    return Some((a.0, b.0));
                }
            }
        }
        None
    };

    let found: Option<(u32, u32)> = if jobs == 1 {
        scan_rows(0, n)
    } else {
        let chunk = n.div_ceil(jobs as u32);
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for k in 0..jobs as u32 {
                let lo = k * chunk;
                let hi = (lo + chunk).min(n);
                let scan = &scan_rows;
                handles.push(scope.spawn(move || scan(lo, hi)));
            }
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("scan worker panicked"))
                .min()
        })
    };

    // deterministic pair count: position in the mode's enumeration
    let row_len = match mode {
        Mode::AllPairs => n as u64,
        Mode::NonzeroPairs => (n - 1) as u64,
    };
    let rank = |x: u32| -> u64 {
        match mode {
            Mode::AllPairs => x as u64,
            Mode::NonzeroPairs => (x - u32::from(x > zero.0)) as u64,
        }
    };
    match found {
        None => Verdict::pass(row_len * row_len, mode),
        Some((a, b)) => Verdict {
            holds: false,
            witness: Some(Witness::Pair(ElementId(a), ElementId(b))),
            pairs_scanned: rank(a) * row_len + rank(b) + 1,
            mode,
        },
    }
}

fn scan_singles<F>(ideal: &Ideal, fails: F) -> Verdict
where
    F: Fn(ElementId) -> bool,
{
    let ring = ideal.ring();
    for a in ring.elements() {
        if fails(a) {
            return Verdict {
                holds: false,
                witness: Some(Witness::Single(a)),
                pairs_scanned: a.0 as u64 + 1,
                mode: Mode::AllPairs,
            };
        }
    }
    Verdict::pass(ring.order() as u64, Mode::AllPairs)
}

/// Cubes-difference factor absorbing: `a^3 - b^3 in I` implies
/// `a - b in I` or `a^2 + ab + b^2 in I`.
pub fn is_cdf(ideal: &Ideal, mode: Mode, jobs: usize) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_pairs(ideal, mode, jobs, |a, b| {
        ideal.contains(r.sub(r.cube(a), r.cube(b)))
            && !ideal.contains(r.sub(a, b))
            && !ideal.contains(r.cdf_quadratic(a, b))
    }))
}

/// Sum form: `a^3 + b^3 in I` implies `a + b in I` or
/// `a^2 - ab + b^2 in I`. Equivalent to [`is_cdf`] via `b -> -b`.
pub fn is_cdf_sumform(ideal: &Ideal, mode: Mode, jobs: usize) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_pairs(ideal, mode, jobs, |a, b| {
        let quad = r.add(r.sub(r.mul(a, a), r.mul(a, b)), r.mul(b, b));
        ideal.contains(r.add(r.cube(a), r.cube(b)))
            && !ideal.contains(r.add(a, b))
            && !ideal.contains(quad)
    }))
}

/// Prime: `ab in I` implies `a in I` or `b in I`.
pub fn is_prime(ideal: &Ideal, jobs: usize) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_pairs(ideal, Mode::AllPairs, jobs, |a, b| {
        ideal.contains(r.mul(a, b)) && !ideal.contains(a) && !ideal.contains(b)
    }))
}

/// Squares-difference factor absorbing, quantified over nonzero pairs
/// by its definition: `a^2 - b^2 in I` implies `a + b in I` or
/// `a - b in I`.
pub fn is_sdf(ideal: &Ideal, mode: Mode, jobs: usize) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_pairs(ideal, mode, jobs, |a, b| {
        ideal.contains(r.sub(r.mul(a, a), r.mul(b, b)))
            && !ideal.contains(r.add(a, b))
            && !ideal.contains(r.sub(a, b))
    }))
}

/// Star-prime: `b(a^2 + ab + b^2) in I` implies `b in I` or
/// `a^2 + ab + b^2 in I`.
pub fn is_star_prime(ideal: &Ideal, mode: Mode, jobs: usize) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_pairs(ideal, mode, jobs, |a, b| {
        let q = r.cdf_quadratic(a, b);
        ideal.contains(r.mul(b, q)) && !ideal.contains(b) && !ideal.contains(q)
    }))
}

/// n-semi-absorbing: `x^{n+1} in I` implies `x^n in I`.
pub fn is_semi_absorbing(ideal: &Ideal, n: u32) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_singles(ideal, |x| {
        ideal.contains(r.pow(x, n + 1)) && !ideal.contains(r.pow(x, n))
    }))
}

/// `a^3 in I` implies `a^2 in I` or `a in I`.
pub fn cube_condition(ideal: &Ideal) -> Result<Verdict, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    Ok(scan_singles(ideal, |a| {
        ideal.contains(r.cube(a)) && !ideal.contains(r.mul(a, a)) && !ideal.contains(a)
    }))
}

/// Additive order of `1 + I` in `R/I`: the least `k >= 1` with
/// `k * 1 in I`.
pub fn quotient_char(ideal: &Ideal) -> Result<u64, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    let mut x = r.one();
    let mut k = 1u64;
    while !ideal.contains(x) {
        x = r.add(x, r.one());
        k += 1;
    }
    Ok(k)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThreeStatus {
    pub three_in_ideal: bool,
    pub three_is_unit: bool,
}

/// Where the element 3 = 1+1+1 sits: in the ideal, and/or in U(R).
pub fn three_status(ideal: &Ideal) -> Result<ThreeStatus, RingError> {
    require_proper(ideal)?;
    let r = ideal.ring();
    let three = r.int_embed(3);
    Ok(ThreeStatus {
        three_in_ideal: ideal.contains(three),
        three_is_unit: r.is_unit(three),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{enumerate_ideals, ideal_from_generators, whole_ring_ideal, zero_ideal};
    use crate::ring::{make_product, make_zn, ElementId};

    #[test]
    fn cdf_zero_ideal_of_z8() {
        let z8 = make_zn(8).unwrap();
        let v = is_cdf(&zero_ideal(&z8), Mode::AllPairs, 1).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Pair(ElementId(0), ElementId(2))));
    }

    #[test]
    fn cdf_product_named_pair() {
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9]).unwrap();
        let g01 = p.product_encode(&[ElementId(0), ElementId(1)]).unwrap();
        let i = ideal_from_generators(&p, &[g01]); // {0} x Z9
        let v = is_cdf(&i, Mode::AllPairs, 1).unwrap();
        assert!(!v.holds);
        // a concrete pair that fails the raw definition
        let a = p.product_encode(&[ElementId(4), ElementId(0)]).unwrap();
        let b = p.product_encode(&[ElementId(1), ElementId(0)]).unwrap();
        assert!(i.contains(p.sub(p.cube(a), p.cube(b))));
        assert!(!i.contains(p.sub(a, b)));
        assert!(!i.contains(p.cdf_quadratic(a, b)));
    }

    #[test]
    fn cdf_positive_cases() {
        let z6 = make_zn(6).unwrap();
        assert!(is_cdf(&zero_ideal(&z6), Mode::AllPairs, 1).unwrap().holds);
        let z8 = make_zn(8).unwrap();
        let i4 = ideal_from_generators(&z8, &[ElementId(4)]);
        assert!(is_cdf(&i4, Mode::AllPairs, 1).unwrap().holds);
        let i2 = ideal_from_generators(&z8, &[ElementId(2)]);
        assert!(is_cdf(&i2, Mode::AllPairs, 1).unwrap().holds);
    }

    #[test]
    fn improper_rejected() {
        let z8 = make_zn(8).unwrap();
        let whole = whole_ring_ideal(&z8);
        assert!(matches!(
            is_cdf(&whole, Mode::AllPairs, 1),
            Err(RingError::NotProper)
        ));
        assert!(matches!(is_prime(&whole, 1), Err(RingError::NotProper)));
    }

    #[test]
    fn sumform_matches_cdf() {
        for n in 2..30u64 {
            let zn = make_zn(n).unwrap();
            for i in enumerate_ideals(&zn).unwrap() {
                if !i.is_proper() {
                    continue;
                }
                let a = is_cdf(&i, Mode::AllPairs, 1).unwrap().holds;
                let b = is_cdf_sumform(&i, Mode::AllPairs, 1).unwrap().holds;
                assert_eq!(a, b, "n={n} ideal={}", i.describe());
            }
        }
    }

    #[test]
    fn prime_cases() {
        let z8 = make_zn(8).unwrap();
        let i2 = ideal_from_generators(&z8, &[ElementId(2)]);
        assert!(is_prime(&i2, 1).unwrap().holds);
        let i4 = ideal_from_generators(&z8, &[ElementId(4)]);
        let v = is_prime(&i4, 1).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Pair(ElementId(2), ElementId(2))));
        let z7 = make_zn(7).unwrap();
        assert!(is_prime(&zero_ideal(&z7), 1).unwrap().holds);
    }

    #[test]
    fn sdf_cases() {
        let z8 = make_zn(8).unwrap();
        let i2 = ideal_from_generators(&z8, &[ElementId(2)]);
        assert!(is_sdf(&i2, Mode::NonzeroPairs, 1).unwrap().holds);
        let v = is_sdf(&zero_ideal(&z8), Mode::NonzeroPairs, 1).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Pair(ElementId(1), ElementId(3))));
        let z2 = make_zn(2).unwrap();
        assert!(is_sdf(&zero_ideal(&z2), Mode::NonzeroPairs, 1).unwrap().holds);
    }

    #[test]
    fn star_prime_cases() {
        let z39 = make_zn(39).unwrap();
        let v = is_star_prime(&zero_ideal(&z39), Mode::AllPairs, 1).unwrap();
        assert!(!v.holds);
        // the named witness a=1, b=3 fails the raw definition
        let (a, b) = (ElementId(1), ElementId(3));
        let q = z39.cdf_quadratic(a, b);
        assert_eq!(z39.mul(b, q), z39.zero());
        let z8 = make_zn(8).unwrap();
        assert!(!is_star_prime(&zero_ideal(&z8), Mode::AllPairs, 1)
            .unwrap()
            .holds);
        let z5 = make_zn(5).unwrap();
        assert!(is_star_prime(&zero_ideal(&z5), Mode::AllPairs, 1)
            .unwrap()
            .holds);
    }

    #[test]
    fn semi_absorbing_cases() {
        let z8 = make_zn(8).unwrap();
        let v = is_semi_absorbing(&zero_ideal(&z8), 2).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Single(ElementId(2))));
        let z4 = make_zn(4).unwrap();
        assert!(is_semi_absorbing(&zero_ideal(&z4), 2).unwrap().holds);
        // radical ideals are n-semi-absorbing for every n
        let z12 = make_zn(12).unwrap();
        let i6 = ideal_from_generators(&z12, &[ElementId(6)]);
        for n in 1..=4 {
            assert!(is_semi_absorbing(&i6, n).unwrap().holds);
        }
    }

    #[test]
    fn cube_condition_cases() {
        let z35 = make_zn(35).unwrap();
        assert!(cube_condition(&zero_ideal(&z35)).unwrap().holds);
        let z8 = make_zn(8).unwrap();
        let v = cube_condition(&zero_ideal(&z8)).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(Witness::Single(ElementId(2))));
        let z7 = make_zn(7).unwrap();
        assert!(cube_condition(&zero_ideal(&z7)).unwrap().holds);
    }

    #[test]
    fn quotient_char_cases() {
        let z9 = make_zn(9).unwrap();
        let i3 = ideal_from_generators(&z9, &[ElementId(3)]);
        assert_eq!(quotient_char(&i3).unwrap(), 3);
        assert_eq!(quotient_char(&zero_ideal(&z9)).unwrap(), 9);
        let z8 = make_zn(8).unwrap();
        let i2 = ideal_from_generators(&z8, &[ElementId(2)]);
        assert_eq!(quotient_char(&i2).unwrap(), 2);
    }

    #[test]
    fn three_status_cases() {
        let z8 = make_zn(8).unwrap();
        assert!(three_status(&zero_ideal(&z8)).unwrap().three_is_unit);
        let z9 = make_zn(9).unwrap();
        let i3 = ideal_from_generators(&z9, &[ElementId(3)]);
        assert!(three_status(&i3).unwrap().three_in_ideal);
        let z12 = make_zn(12).unwrap();
        let s = three_status(&zero_ideal(&z12)).unwrap();
        assert!(!s.three_in_ideal && !s.three_is_unit);
    }

    #[test]
    fn witness_independent_of_jobs() {
        for n in [8u64, 9, 35, 64] {
            let zn = make_zn(n).unwrap();
            let i = zero_ideal(&zn);
            let v1 = is_cdf(&i, Mode::AllPairs, 1).unwrap();
            let v4 = is_cdf(&i, Mode::AllPairs, 4).unwrap();
            assert_eq!(v1.holds, v4.holds);
            assert_eq!(v1.witness, v4.witness);
            assert_eq!(v1.pairs_scanned, v4.pairs_scanned);
        }
    }

    #[test]
    fn mode_monotonicity() {
        // failure under NonzeroPairs implies failure under AllPairs
        for n in 2..40u64 {
            let zn = make_zn(n).unwrap();
            for i in enumerate_ideals(&zn).unwrap() {
                if !i.is_proper() {
                    continue;
                }
                let nz = is_cdf(&i, Mode::NonzeroPairs, 1).unwrap();
                if !nz.holds {
                    assert!(!is_cdf(&i, Mode::AllPairs, 1).unwrap().holds);
                }
            }
        }
    }
}
