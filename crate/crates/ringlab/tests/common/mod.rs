//! Naive reference oracles, coded independently of the scan engine.

use ringlab::ideal::Ideal;
use ringlab::ring::{make_quotient, ElementId};

/// Direct quantifier loop over every (a, b): if a^3 - b^3 lands in the
/// ideal, one of a - b or a^2 + ab + b^2 must too.
pub fn naive_cdf(ideal: &Ideal) -> bool {
    let r = ideal.ring();
    for ai in 0..r.order() {
        for bi in 0..r.order() {
            let a = ElementId(ai);
            let b = ElementId(bi);
            let a3 = r.mul(r.mul(a, a), a);
            let b3 = r.mul(r.mul(b, b), b);
            if !ideal.contains(r.sub(a3, b3)) {
                continue;
            }
            let diff = r.sub(a, b);
            let quad = r.add(r.add(r.mul(a, a), r.mul(a, b)), r.mul(b, b));
            if !ideal.contains(diff) && !ideal.contains(quad) {
                return false;
            }
        }
    }
    true
}

/// Primality via the quotient: R/I is an integral domain iff it has no
/// zero divisors.
pub fn naive_prime(ideal: &Ideal) -> bool {
    let (q, _) = make_quotient(ideal.ring(), ideal.members()).expect("quotient builds");
    let zero = q.zero();
    for ai in 0..q.order() {
        for bi in 0..q.order() {
            let a = ElementId(ai);
            let b = ElementId(bi);
            if a != zero && b != zero && q.mul(a, b) == zero {
                return false;
            }
        }
    }
    true
}
