//! Ideals of finite rings: generation, enumeration, transforms.
//!
//! An ideal is stored as a membership table over element indices.
//! Equality is membership-table equality; generator lists are kept only
//! as provenance.

use crate::error::RingError;
use crate::ring::{ElementId, FiniteRing, RingHom};

/// Default bound on the order of rings whose full ideal lattice is
/// enumerated. Override with [`enumerate_ideals_with_cutoff`] or the
/// `RINGLAB_CUTOFF` environment variable at the CLI.
pub const DEFAULT_ENUMERATION_CUTOFF: u64 = 512;

#[derive(Clone)]
pub struct Ideal {
    ring: FiniteRing,
    members: Vec<bool>,
    generators: Option<Vec<ElementId>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.members == other.members
    }
}
impl Eq for Ideal {}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal({} of {})", self.describe(), self.ring.name())
    }
}

impl Ideal {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn contains(&self, a: ElementId) -> bool {
        self.members[a.0 as usize]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn cardinality(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn element_ids(&self) -> Vec<ElementId> {
        (0..self.ring.order())
            .filter(|&i| self.members[i as usize])
            .map(ElementId)
            .collect()
    }

    pub fn is_proper(&self) -> bool {
        !self.members[self.ring.one().0 as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.cardinality() == 1
    }

    pub fn generators(&self) -> Option<&[ElementId]> {
        self.generators.as_deref()
    }

    /// Short rendering: `zero`, `whole`, or `gen(a,b,...)` / `{l1,...}`.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "zero".to_string();
        }
        if !self.is_proper() && self.cardinality() == self.ring.order() as usize {
            return "whole".to_string();
        }
        if let Some(gens) = &self.generators {
            let parts: Vec<&str> = gens.iter().map(|&g| self.ring.label(g)).collect();
            return format!("gen({})", parts.join(","));
        }
        let parts: Vec<&str> = self
            .element_ids()
            .iter()
            .map(|&e| self.ring.label(e))
            .collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Build directly from a membership table, validating closure.
    pub fn from_members(ring: &FiniteRing, members: Vec<bool>) -> Result<Self, RingError> {
        if members.len() != ring.order() as usize {
            return Err(RingError::RingMismatch);
        }
        if !members[ring.zero().0 as usize] {
            return Err(RingError::AxiomViolation("ideal must contain zero".into()));
        }
        for i in 0..ring.order() {
            if !members[i as usize] {
                continue;
            }
            let a = ElementId(i);
            for j in 0..ring.order() {
                if members[j as usize] && !members[ring.add(a, ElementId(j)).0 as usize] {
                    return Err(RingError::AxiomViolation("not closed under addition".into()));
                }
                if !members[ring.mul(a, ElementId(j)).0 as usize] {
                    return Err(RingError::AxiomViolation(
                        "not closed under ring multiples".into(),
                    ));
                }
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            members,
            generators: None,
        })
    }
}

/// Smallest ideal containing `gens`: closure under addition, negation,
/// and ring multiples to fixpoint.
pub fn ideal_from_generators(ring: &FiniteRing, gens: &[ElementId]) -> Ideal {
    let n = ring.order() as usize;
    let mut members = vec![false; n];
    members[ring.zero().0 as usize] = true;
    let mut worklist: Vec<ElementId> = vec![ring.zero()];
    let push = |members: &mut Vec<bool>, worklist: &mut Vec<ElementId>, x: ElementId| {
        if !members[x.0 as usize] {
            members[x.0 as usize] = true;
            worklist.push(x);
        }
    };
    for &g in gens {
        push(&mut members, &mut worklist, g);
    }
    while let Some(x) = worklist.pop() {
        push(&mut members, &mut worklist, ring.neg(x));
        for r in ring.elements() {
            push(&mut members, &mut worklist, ring.mul(r, x));
        }
        for i in 0..n {
            if members[i] {
                let s = ring.add(x, ElementId(i as u32));
                push(&mut members, &mut worklist, s);
            }
        }
    }
    Ideal {
        ring: ring.clone(),
        members,
        generators: Some(gens.to_vec()),
    }
}

pub fn zero_ideal(ring: &FiniteRing) -> Ideal {
    ideal_from_generators(ring, &[])
}

pub fn whole_ring_ideal(ring: &FiniteRing) -> Ideal {
    ideal_from_generators(ring, &[ring.one()])
}

/// Sort key: cardinality, then membership table lexicographic.
fn ideal_sort_key(i: &Ideal) -> (usize, Vec<bool>) {
    (i.cardinality(), i.members.clone())
}

/// All ideals of `ring`: the closure of the principal ideals under
/// pairwise ideal-sum, sorted by (cardinality, membership lexicographic).
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>, RingError> {
    enumerate_ideals_with_cutoff(ring, DEFAULT_ENUMERATION_CUTOFF)
}

pub fn enumerate_ideals_with_cutoff(
    ring: &FiniteRing,
    cutoff: u64,
) -> Result<Vec<Ideal>, RingError> {
    if ring.order() as u64 > cutoff {
        return Err(RingError::TooLarge {
            order: ring.order() as u64,
            cutoff,
        });
    }
    let mut principals: Vec<Ideal> = Vec::new();
    for g in ring.elements() {
        let i = ideal_from_generators(ring, &[g]);
        if !principals.iter().any(|p| p.members == i.members) {
            principals.push(i);
        }
    }
    let mut ideals: Vec<Ideal> = principals.clone();
    let mut changed = true;
    while changed {
        changed = false;
        let snapshot: Vec<Vec<bool>> = ideals.iter().map(|i| i.members.clone()).collect();
        for a in &snapshot {
            for p in &principals {
                let ia = Ideal {
                    ring: ring.clone(),
                    members: a.clone(),
                    generators: None,
                };
                let s = ideal_sum(&ia, p).expect("same ring");
                if !ideals.iter().any(|i| i.members == s.members) {
                    ideals.push(s);
                    changed = true;
                }
            }
        }
    }
    ideals.sort_by(|a, b| ideal_sort_key(a).cmp(&ideal_sort_key(b)));
    Ok(ideals)
}

/// `{ i + j : i in I, j in J }`.
pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal, RingError> {
    if !i.ring.same_ring(&j.ring) {
        return Err(RingError::RingMismatch);
    }
    let ring = &i.ring;
    let n = ring.order() as usize;
    let mut members = vec![false; n];
    for a in 0..n {
        if !i.members[a] {
            continue;
        }
        for b in 0..n {
            if j.members[b] {
                members[ring.add(ElementId(a as u32), ElementId(b as u32)).0 as usize] = true;
            }
        }
    }
    Ok(Ideal {
        ring: ring.clone(),
        members,
        generators: None,
    })
}

/// `{ a : h(a) in J }`; always an ideal of the domain.
pub fn ideal_preimage(h: &RingHom, j: &Ideal) -> Result<Ideal, RingError> {
    if !j.ring.same_ring(h.codomain()) {
        return Err(RingError::RingMismatch);
    }
    let members: Vec<bool> = h
        .domain()
        .elements()
        .map(|a| j.contains(h.apply(a)))
        .collect();
    Ok(Ideal {
        ring: h.domain().clone(),
        members,
        generators: None,
    })
}

/// `{ h(i) : i in I }`; an ideal of the codomain when `h` is surjective.
pub fn ideal_image(h: &RingHom, i: &Ideal) -> Result<Ideal, RingError> {
    if !i.ring.same_ring(h.domain()) {
        return Err(RingError::RingMismatch);
    }
    if !h.is_surjective() {
        return Err(RingError::NotSurjective);
    }
    let mut members = vec![false; h.codomain().order() as usize];
    for a in h.domain().elements() {
        if i.contains(a) {
            members[h.apply(a).0 as usize] = true;
        }
    }
    Ok(Ideal {
        ring: h.codomain().clone(),
        members,
        generators: None,
    })
}

/// `{ a : a^k in I for some k <= order }`.
pub fn radical(i: &Ideal) -> Ideal {
    let ring = &i.ring;
    let mut members = vec![false; ring.order() as usize];
    for a in ring.elements() {
        let mut p = a;
        for _ in 0..ring.order() {
            if i.contains(p) {
                members[a.0 as usize] = true;
                break;
            }
            p = ring.mul(p, a);
        }
    }
    Ideal {
        ring: ring.clone(),
        members,
        generators: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_product, make_quotient, make_zn, product_projection};

    #[test]
    fn generators_closure() {
        let z12 = make_zn(12).unwrap();
        let i = ideal_from_generators(&z12, &[ElementId(4)]);
        assert_eq!(
            i.element_ids(),
            vec![ElementId(0), ElementId(4), ElementId(8)]
        );
        let z = ideal_from_generators(&z12, &[]);
        assert!(z.is_zero());
        let whole = ideal_from_generators(&z12, &[ElementId(1)]);
        assert_eq!(whole.cardinality(), 12);
        assert!(!whole.is_proper());
    }

    #[test]
    fn enumerate_z8_chain() {
        let z8 = make_zn(8).unwrap();
        let ideals = enumerate_ideals(&z8).unwrap();
        assert_eq!(ideals.len(), 4);
        let cards: Vec<usize> = ideals.iter().map(|i| i.cardinality()).collect();
        assert_eq!(cards, vec![1, 2, 4, 8]);
    }

    #[test]
    fn enumerate_primes_and_products() {
        let z7 = make_zn(7).unwrap();
        assert_eq!(enumerate_ideals(&z7).unwrap().len(), 2);
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9]).unwrap();
        assert_eq!(enumerate_ideals(&p).unwrap().len(), 9);
    }

    #[test]
    fn enumeration_contains_generated() {
        let z12 = make_zn(12).unwrap();
        let ideals = enumerate_ideals(&z12).unwrap();
        for g in z12.elements() {
            let i = ideal_from_generators(&z12, &[g]);
            assert_eq!(ideals.iter().filter(|j| j.members() == i.members()).count(), 1);
        }
        // each ideal exactly once
        for (k, i) in ideals.iter().enumerate() {
            for j in &ideals[k + 1..] {
                assert_ne!(i.members(), j.members());
            }
        }
    }

    #[test]
    fn cutoff_respected() {
        let z9 = make_zn(9).unwrap();
        let p3 = make_product(vec![z9.clone(), z9.clone(), z9]).unwrap();
        assert!(matches!(
            enumerate_ideals(&p3),
            Err(RingError::TooLarge { order: 729, .. })
        ));
        assert!(enumerate_ideals_with_cutoff(&p3, 1000).is_ok());
    }

    #[test]
    fn sums() {
        let z12 = make_zn(12).unwrap();
        let i4 = ideal_from_generators(&z12, &[ElementId(4)]);
        let i6 = ideal_from_generators(&z12, &[ElementId(6)]);
        let s = ideal_sum(&i4, &i6).unwrap();
        let i2 = ideal_from_generators(&z12, &[ElementId(2)]);
        assert_eq!(s.members(), i2.members());
        let z = zero_ideal(&z12);
        assert_eq!(ideal_sum(&i4, &z).unwrap().members(), i4.members());
        let whole = whole_ring_ideal(&z12);
        assert_eq!(ideal_sum(&i4, &whole).unwrap().cardinality(), 12);
    }

    #[test]
    fn preimage_and_image() {
        let z12 = make_zn(12).unwrap();
        let i4 = ideal_from_generators(&z12, &[ElementId(4)]);
        let (_q, pi) = make_quotient(&z12, i4.members()).unwrap();
        let pre = ideal_preimage(&pi, &zero_ideal(pi.codomain())).unwrap();
        assert_eq!(pre.members(), i4.members());
        let pre_whole = ideal_preimage(&pi, &whole_ring_ideal(pi.codomain())).unwrap();
        assert_eq!(pre_whole.cardinality(), 12);

        let i2 = ideal_from_generators(&z12, &[ElementId(2)]);
        let img = ideal_image(&pi, &i2).unwrap();
        assert_eq!(img.cardinality(), 2);
        let img_ker = ideal_image(&pi, &i4).unwrap();
        assert!(img_ker.is_zero());

        // a non-surjective hom is rejected
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9.clone()]).unwrap();
        let pr = product_projection(&p, 0).unwrap();
        assert!(pr.is_surjective());
        // build a genuinely non-surjective hom: Z2 -> Z2 x Z2, diagonal
        let z2 = make_zn(2).unwrap();
        let p22 = make_product(vec![z2.clone(), z2.clone()]).unwrap();
        let diag: Vec<u32> = (0..2)
            .map(|a| p22.product_encode(&[ElementId(a), ElementId(a)]).unwrap().0)
            .collect();
        let h = crate::ring::RingHom::new(z2.clone(), p22, diag).unwrap();
        assert!(!h.is_surjective());
        assert!(matches!(
            ideal_image(&h, &zero_ideal(&z2)),
            Err(RingError::NotSurjective)
        ));
    }

    #[test]
    fn radicals() {
        let z8 = make_zn(8).unwrap();
        let r = radical(&zero_ideal(&z8));
        let i2 = ideal_from_generators(&z8, &[ElementId(2)]);
        assert_eq!(r.members(), i2.members());

        let z12 = make_zn(12).unwrap();
        let r12 = radical(&ideal_from_generators(&z12, &[ElementId(4)]));
        let i2_12 = ideal_from_generators(&z12, &[ElementId(2)]);
        assert_eq!(r12.members(), i2_12.members());

        // radical of a prime ideal is itself; radical is idempotent
        let z6 = make_zn(6).unwrap();
        let p = ideal_from_generators(&z6, &[ElementId(2)]);
        assert_eq!(radical(&p).members(), p.members());
        for ring in [z8, z12, z6] {
            for i in enumerate_ideals(&ring).unwrap() {
                let r = radical(&i);
                assert_eq!(radical(&r).members(), r.members());
                for e in i.element_ids() {
                    assert!(r.contains(e));
                }
            }
        }
    }
}
