//! Finite commutative rings with identity.
//!
//! Every ring is a table (or lazily computed) structure over canonical
//! element indices `0..order`. Constructors fix a documented encoding so
//! that witnesses and reports are reproducible:
//!
//! * `Z_n`: element `i` is the residue `i`, ascending.
//! * products: mixed-radix index, leftmost factor most significant.
//! * polynomial quotients: little-endian coefficient vectors, index
//!   `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.
//! * quotients: cosets ordered by minimal representative index.
//! * idealizations `R(+)M` with `M = R/J`: index `r * |M| + m`.
//! * amalgamations: pairs `(a, f(a)+j)` in lexicographic `(a, j)` order.

use crate::error::RingError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Index of an element within one specific ring.
///
/// An `ElementId` is only meaningful relative to the ring it was minted
/// for; operations that mix rings return [`RingError::RingMismatch`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Operation tables are materialized for small rings and computed on
/// demand above [`MATERIALIZE_CUTOFF`].
pub const MATERIALIZE_CUTOFF: u32 = 256;

type OpFn = Box<dyn Fn(u32, u32) -> u32 + Send + Sync>;

enum OpTables {
    Dense { add: Vec<u32>, mul: Vec<u32> },
    Lazy { add: OpFn, mul: OpFn },
}

/// How a ring was built. Carries enough structure to decode elements
/// (tuple shapes, coset representatives) for parsing and labeling.
#[derive(Clone)]
pub enum Construction {
    Zn(u64),
    Product(Vec<FiniteRing>),
    PolyQuotient { p: u64, modulus: Vec<u64> },
    Quotient(QuotientData),
    Idealization { base: FiniteRing, module: FiniteRing },
    Amalgamation(AmalgData),
    Localization(QuotientData),
    /// Raw tables supplied directly (relabeling experiments, tests).
    Opaque,
}

#[derive(Clone)]
pub struct QuotientData {
    pub base: FiniteRing,
    /// Minimal representative of coset `c` in the base ring.
    pub reps: Vec<u32>,
    /// Coset index of each base element.
    pub elem_to_coset: Vec<u32>,
}

#[derive(Clone)]
pub struct AmalgData {
    pub a_ring: FiniteRing,
    pub b_ring: FiniteRing,
    /// Pair `(a, b)` of component indices for each element.
    pub pairs: Vec<(u32, u32)>,
    pub index: HashMap<(u32, u32), u32>,
}

struct RingData {
    order: u32,
    ops: OpTables,
    neg: Vec<u32>,
    zero: u32,
    one: u32,
    labels: Vec<String>,
    construction: Construction,
    name: String,
}

/// A finite commutative ring with identity `1 != 0`.
///
/// Cheap to clone (shared immutable payload); safe to share across
/// threads for read-only use.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, order {})", self.0.name, self.0.order)
    }
}

impl FiniteRing {
    fn build(
        order: u32,
        add: impl Fn(u32, u32) -> u32 + Send + Sync + 'static,
        mul: impl Fn(u32, u32) -> u32 + Send + Sync + 'static,
        zero: u32,
        one: u32,
        labels: Vec<String>,
        construction: Construction,
        name: String,
    ) -> Self {
        let ops = if order <= MATERIALIZE_CUTOFF {
            let n = order as usize;
            let mut at = vec![0u32; n * n];
            let mut mt = vec![0u32; n * n];
            for a in 0..order {
                for b in 0..order {
                    at[(a * order + b) as usize] = add(a, b);
                    mt[(a * order + b) as usize] = mul(a, b);
                }
            }
            OpTables::Dense { add: at, mul: mt }
        } else {
            OpTables::Lazy {
                add: Box::new(add),
                mul: Box::new(mul),
            }
        };
        let mut data = RingData {
            order,
            ops,
            neg: Vec::new(),
            zero,
            one,
            labels,
            construction,
            name,
        };
        let mut neg = vec![0u32; order as usize];
        for a in 0..order {
            for b in 0..order {
                if raw_add(&data, a, b) == zero {
                    neg[a as usize] = b;
                    break;
                }
            }
        }
        data.neg = neg;
        FiniteRing(Arc::new(data))
    }

    /// Build a ring from explicit operation tables. Axioms are verified.
    pub fn from_tables(
        order: u32,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Vec<String>,
        name: &str,
    ) -> Result<Self, RingError> {
        if order < 2 {
            return Err(RingError::InvalidOrder(order as u64));
        }
        let n = order as usize;
        if add.len() != n * n || mul.len() != n * n || labels.len() != n {
            return Err(RingError::AxiomViolation("table size mismatch".into()));
        }
        let get = |t: &Vec<u32>, a: u32, b: u32| t[(a * order + b) as usize];
        let zero = (0..order)
            .find(|&z| (0..order).all(|a| get(&add, z, a) == a))
            .ok_or_else(|| RingError::AxiomViolation("no additive identity".into()))?;
        let one = (0..order)
            .find(|&e| e != zero && (0..order).all(|a| get(&mul, e, a) == a))
            .ok_or_else(|| RingError::AxiomViolation("no multiplicative identity".into()))?;
        let add2 = add.clone();
        let mul2 = mul.clone();
        let ring = Self::build(
            order,
            move |a, b| add2[(a * order + b) as usize],
            move |a, b| mul2[(a * order + b) as usize],
            zero,
            one,
            labels,
            Construction::Opaque,
            name.to_string(),
        );
        ring.verify_axioms()?;
        Ok(ring)
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// The same ring under a new display name (fresh identity, so
    /// ideals of the original do not transfer).
    pub fn renamed(&self, name: &str) -> FiniteRing {
        let (ra, rm) = (self.clone(), self.clone());
        FiniteRing::build(
            self.order(),
            move |a, b| ra.add(ElementId(a), ElementId(b)).0,
            move |a, b| rm.mul(ElementId(a), ElementId(b)).0,
            self.0.zero,
            self.0.one,
            self.0.labels.clone(),
            self.0.construction.clone(),
            name.to_string(),
        )
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn zero(&self) -> ElementId {
        ElementId(self.0.zero)
    }

    pub fn one(&self) -> ElementId {
        ElementId(self.0.one)
    }

    pub fn construction(&self) -> &Construction {
        &self.0.construction
    }

    pub fn label(&self, a: ElementId) -> &str {
        &self.0.labels[a.0 as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    /// Identity of the underlying shared payload; two handles to the
    /// same constructed ring compare equal.
    pub fn same_ring(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.0.order).map(ElementId)
    }

    pub fn add(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(raw_add(&self.0, a.0, b.0))
    }

    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        ElementId(raw_mul(&self.0, a.0, b.0))
    }

    pub fn neg(&self, a: ElementId) -> ElementId {
        ElementId(self.0.neg[a.0 as usize])
    }

    pub fn sub(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: ElementId, k: u32) -> ElementId {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn cube(&self, a: ElementId) -> ElementId {
        self.mul(self.mul(a, a), a)
    }

    /// a^2 + ab + b^2, the quadratic factor of a^3 - b^3.
    pub fn cdf_quadratic(&self, a: ElementId, b: ElementId) -> ElementId {
        self.add(self.add(self.mul(a, a), self.mul(a, b)), self.mul(b, b))
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        let mut x = self.one();
        let mut k = 1u64;
        while x != self.zero() {
            x = self.add(x, self.one());
            k += 1;
        }
        k
    }

    /// The image of the integer `k` under the canonical map Z -> R.
    pub fn int_embed(&self, k: i64) -> ElementId {
        let mut acc = self.zero();
        let m = k.rem_euclid(self.characteristic() as i64) as u64;
        for _ in 0..m {
            acc = self.add(acc, self.one());
        }
        acc
    }

    pub fn units(&self) -> Vec<ElementId> {
        self.elements()
            .filter(|&a| self.elements().any(|b| self.mul(a, b) == self.one()))
            .collect()
    }

    pub fn is_unit(&self, a: ElementId) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one())
    }

    /// True iff every `a` satisfies `a = a^2 x` for some `x`.
    pub fn is_von_neumann_regular(&self) -> bool {
        self.elements().all(|a| {
            let sq = self.mul(a, a);
            self.elements().any(|x| self.mul(sq, x) == a)
        })
    }

    /// All `c` with `c^3 = y`.
    pub fn cube_roots(&self, y: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&c| self.cube(c) == y).collect()
    }

    /// Exhaustive axiom audit for order <= 512, randomized sampling
    /// (at least 10^5 triples, fixed seed) above.
    pub fn verify_axioms(&self) -> Result<(), RingError> {
        let n = self.order();
        let viol = |m: &str| Err(RingError::AxiomViolation(m.to_string()));
        if self.zero() == self.one() {
            return viol("1 = 0");
        }
        let check_triple = |a: ElementId, b: ElementId, c: ElementId| -> Option<&'static str> {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Some("addition not associative");
            }
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Some("multiplication not associative");
            }
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Some("multiplication does not distribute over addition");
            }
            None
        };
        for a in self.elements() {
            if self.add(a, self.zero()) != a {
                return viol("zero is not an additive identity");
            }
            if self.mul(a, self.one()) != a {
                return viol("one is not a multiplicative identity");
            }
            if self.add(a, self.neg(a)) != self.zero() {
                return viol("missing additive inverse");
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) {
                    return viol("addition not commutative");
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return viol("multiplication not commutative");
                }
            }
        }
        if n <= 512 {
            for a in self.elements() {
                for b in self.elements() {
                    for c in self.elements() {
                        if let Some(m) = check_triple(a, b, c) {
                            return Err(RingError::AxiomViolation(m.to_string()));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SAMPLE_SEED);
            for _ in 0..100_000 {
                let a = ElementId(rng.gen_range(0..n));
                let b = ElementId(rng.gen_range(0..n));
                let c = ElementId(rng.gen_range(0..n));
                if let Some(m) = check_triple(a, b, c) {
                    return Err(RingError::AxiomViolation(m.to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Fixed seed for the sampled axiom audit on large rings.
const AXIOM_SAMPLE_SEED: u64 = 0x5eed;

fn raw_add(d: &RingData, a: u32, b: u32) -> u32 {
    match &d.ops {
        OpTables::Dense { add, .. } => add[(a * d.order + b) as usize],
        OpTables::Lazy { add, .. } => add(a, b),
    }
}

fn raw_mul(d: &RingData, a: u32, b: u32) -> u32 {
    match &d.ops {
        OpTables::Dense { mul, .. } => mul[(a * d.order + b) as usize],
        OpTables::Lazy { mul, .. } => mul(a, b),
    }
}

/// The ring of integers modulo `n`.
pub fn make_zn(n: u64) -> Result<FiniteRing, RingError> {
    if n < 2 {
        return Err(RingError::InvalidOrder(n));
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(FiniteRing::build(
        n as u32,
        move |a, b| ((a as u64 + b as u64) % n) as u32,
        move |a, b| ((a as u64 * b as u64) % n) as u32,
        0,
        1,
        labels,
        Construction::Zn(n),
        format!("Z{n}"),
    ))
}

/// Direct product with componentwise operations. Elements are tuples
/// encoded mixed-radix, leftmost factor most significant.
pub fn make_product(factors: Vec<FiniteRing>) -> Result<FiniteRing, RingError> {
    if factors.is_empty() {
        return Err(RingError::InvalidArity);
    }
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().unwrap());
    }
    let orders: Vec<u32> = factors.iter().map(|r| r.order()).collect();
    let order: u64 = orders.iter().map(|&o| o as u64).product();
    if order > u32::MAX as u64 {
        return Err(RingError::TooLarge {
            order,
            cutoff: u32::MAX as u64,
        });
    }
    let order = order as u32;
    let dec = {
        let orders = orders.clone();
        move |mut i: u32| -> Vec<u32> {
            let mut t = vec![0u32; orders.len()];
            for (k, &o) in orders.iter().enumerate().rev() {
                t[k] = i % o;
                i /= o;
            }
            t
        }
    };
    let enc = {
        let orders = orders.clone();
        move |t: &[u32]| -> u32 {
            let mut i = 0u32;
            for (k, &o) in orders.iter().enumerate() {
                i = i * o + t[k];
            }
            i
        }
    };
    let labels: Vec<String> = (0..order)
        .map(|i| {
            let t = dec(i);
            let parts: Vec<&str> = factors
                .iter()
                .zip(&t)
                .map(|(r, &v)| r.label(ElementId(v)))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let zero = enc(&factors.iter().map(|r| r.zero().0).collect::<Vec<_>>());
    let one = enc(&factors.iter().map(|r| r.one().0).collect::<Vec<_>>());
    let name = factors
        .iter()
        .map(|r| r.name().to_string())
        .collect::<Vec<_>>()
        .join(" x ");
    let fs_add = factors.clone();
    let fs_mul = factors.clone();
    let dec_a = dec.clone();
    let dec_m = dec;
    let enc_a = enc.clone();
    let enc_m = enc;
    Ok(FiniteRing::build(
        order,
        move |a, b| {
            let (ta, tb) = (dec_a(a), dec_a(b));
            let t: Vec<u32> = fs_add
                .iter()
                .zip(ta.iter().zip(&tb))
                .map(|(r, (&x, &y))| r.add(ElementId(x), ElementId(y)).0)
                .collect();
            enc_a(&t)
        },
        move |a, b| {
            let (ta, tb) = (dec_m(a), dec_m(b));
            let t: Vec<u32> = fs_mul
                .iter()
                .zip(ta.iter().zip(&tb))
                .map(|(r, (&x, &y))| r.mul(ElementId(x), ElementId(y)).0)
                .collect();
            enc_m(&t)
        },
        zero,
        one,
        labels,
        Construction::Product(factors),
        name,
    ))
}

impl FiniteRing {
    /// Decode a product-ring element into component ids. Errors unless
    /// the ring was built by [`make_product`].
    pub fn product_decode(&self, a: ElementId) -> Result<Vec<ElementId>, RingError> {
        let factors = match self.construction() {
            Construction::Product(f) => f,
            _ => return Err(RingError::RingMismatch),
        };
        let mut i = a.0;
        let mut t = vec![ElementId(0); factors.len()];
        for (k, r) in factors.iter().enumerate().rev() {
            t[k] = ElementId(i % r.order());
            i /= r.order();
        }
        Ok(t)
    }

    pub fn product_encode(&self, t: &[ElementId]) -> Result<ElementId, RingError> {
        let factors = match self.construction() {
            Construction::Product(f) => f,
            _ => return Err(RingError::RingMismatch),
        };
        if t.len() != factors.len() {
            return Err(RingError::InvalidArity);
        }
        let mut i = 0u32;
        for (k, r) in factors.iter().enumerate() {
            if t[k].0 >= r.order() {
                return Err(RingError::IndexOutOfRange(t[k].0 as usize));
            }
            i = i * r.order() + t[k].0;
        }
        Ok(ElementId(i))
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Render a little-endian coefficient vector as a polynomial in `x`.
pub fn poly_label(coeffs: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (k, 1) => format!("x^{k}"),
            (k, c) => format!("{c}x^{k}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

/// `Z_p[x]/(f)` for `p` prime and `f` monic of degree >= 1, given as a
/// little-endian coefficient list.
pub fn make_poly_quotient(p: u64, f: &[u64]) -> Result<FiniteRing, RingError> {
    if !is_prime_u64(p) {
        return Err(RingError::NotPrime(p));
    }
    let f: Vec<u64> = f.iter().map(|&c| c % p).collect();
    let d = f.len().saturating_sub(1);
    if d == 0 || f[d] != 1 {
        return Err(RingError::InvalidModulus);
    }
    let order = p.checked_pow(d as u32).filter(|&o| o <= u32::MAX as u64);
    let order = order.ok_or(RingError::TooLarge {
        order: 0,
        cutoff: u32::MAX as u64,
    })? as u32;
    let dec = move |mut i: u32| -> Vec<u64> {
        let mut c = vec![0u64; d];
        for ck in c.iter_mut() {
            *ck = (i as u64) % p;
            i = (i as u64 / p) as u32;
        }
        c
    };
    let enc = move |c: &[u64]| -> u32 {
        let mut i = 0u64;
        for &v in c.iter().rev() {
            i = i * p + v;
        }
        i as u32
    };
    let labels: Vec<String> = (0..order).map(|i| poly_label(&dec(i))).collect();
    let fm = f.clone();
    let mul = move |a: u32, b: u32| -> u32 {
        let (ca, cb) = (dec(a), dec(b));
        let mut r = vec![0u64; 2 * d];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        for k in (d..2 * d).rev() {
            let coef = r[k];
            if coef != 0 {
                r[k] = 0;
                for j in 0..d {
                    // subtract coef * f * x^{k-d}
                    r[k - d + j] = (r[k - d + j] + p * p - coef * fm[j] % p) % p;
                }
            }
        }
        enc(&r[..d])
    };
    let add = move |a: u32, b: u32| -> u32 {
        let (ca, cb) = (dec(a), dec(b));
        let c: Vec<u64> = ca.iter().zip(&cb).map(|(&x, &y)| (x + y) % p).collect();
        enc(&c)
    };
    Ok(FiniteRing::build(
        order,
        add,
        mul,
        0,
        1,
        labels,
        Construction::PolyQuotient {
            p,
            modulus: f.clone(),
        },
        format!("Z{p}[x]/({})", poly_label(&f)),
    ))
}

fn quotient_with_tag(
    ring: &FiniteRing,
    members: &[bool],
    localization: bool,
) -> Result<(FiniteRing, RingHom), RingError> {
    let n = ring.order();
    if members.iter().all(|&m| m) {
        return Err(RingError::NotProper);
    }
    let mut elem_to_coset = vec![u32::MAX; n as usize];
    let mut reps: Vec<u32> = Vec::new();
    for a in 0..n {
        if elem_to_coset[a as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(a);
        for i in 0..n {
            if members[i as usize] {
                let x = ring.add(ElementId(a), ElementId(i));
                if elem_to_coset[x.0 as usize] == u32::MAX {
                    elem_to_coset[x.0 as usize] = c;
                }
            }
        }
        debug_assert_eq!(elem_to_coset[a as usize], c);
    }
    // reps were discovered in ascending order, so coset order is already
    // by minimal representative.
    let order = reps.len() as u32;
    let labels: Vec<String> = reps
        .iter()
        .map(|&r| ring.label(ElementId(r)).to_string())
        .collect();
    let base = ring.clone();
    let data = QuotientData {
        base: base.clone(),
        reps: reps.clone(),
        elem_to_coset: elem_to_coset.clone(),
    };
    let (b_add, b_mul) = (base.clone(), base.clone());
    let (e_add, e_mul) = (elem_to_coset.clone(), elem_to_coset.clone());
    let (r_add, r_mul) = (reps.clone(), reps.clone());
    let zero = elem_to_coset[ring.zero().0 as usize];
    let one = elem_to_coset[ring.one().0 as usize];
    let name = if localization {
        format!("loc({})", ring.name())
    } else {
        format!("{}/I", ring.name())
    };
    let q = FiniteRing::build(
        order,
        move |a, b| {
            e_add[b_add
                .add(ElementId(r_add[a as usize]), ElementId(r_add[b as usize]))
                .0 as usize]
        },
        move |a, b| {
            e_mul[b_mul
                .mul(ElementId(r_mul[a as usize]), ElementId(r_mul[b as usize]))
                .0 as usize]
        },
        zero,
        one,
        labels,
        if localization {
            Construction::Localization(data)
        } else {
            Construction::Quotient(data)
        },
        name,
    );
    let map: Vec<u32> = elem_to_coset.clone();
    let hom = RingHom::new_unchecked(ring.clone(), q.clone(), map);
    Ok((q, hom))
}

/// Quotient `R/I` with the surjective projection. Cosets are addressed
/// by minimal representative, ascending.
pub fn make_quotient(
    ring: &FiniteRing,
    members: &[bool],
) -> Result<(FiniteRing, RingHom), RingError> {
    quotient_with_tag(ring, members, false)
}

/// Idealization `R(+)M` with `M = R/J` (so `J = {0}` gives `M = R`).
pub fn make_idealization(ring: &FiniteRing, j_members: &[bool]) -> Result<FiniteRing, RingError> {
    if j_members.iter().all(|&m| m) {
        return Err(RingError::ZeroModule);
    }
    let (module, _) = quotient_with_tag(ring, j_members, false)?;
    let mo = module.order();
    let order = ring
        .order()
        .checked_mul(mo)
        .ok_or(RingError::TooLarge {
            order: ring.order() as u64 * mo as u64,
            cutoff: u32::MAX as u64,
        })?;
    let enc = move |r: u32, m: u32| r * mo + m;
    let dec = move |i: u32| (i / mo, i % mo);
    let labels: Vec<String> = (0..order)
        .map(|i| {
            let (r, m) = dec(i);
            format!(
                "({},{})",
                ring.label(ElementId(r)),
                module.label(ElementId(m))
            )
        })
        .collect();
    // r acts on the coset m through any representative
    let act = {
        let base = ring.clone();
        let module = module.clone();
        move |r: u32, m: u32| -> u32 {
            let qd = match module.construction() {
                Construction::Quotient(q) => q,
                _ => unreachable!(),
            };
            qd.elem_to_coset[base.mul(ElementId(r), ElementId(qd.reps[m as usize])).0 as usize]
        }
    };
    let (base_a, mod_a) = (ring.clone(), module.clone());
    let (base_m, mod_m, act_m) = (ring.clone(), module.clone(), act);
    let zero = enc(ring.zero().0, module.zero().0);
    let one = enc(ring.one().0, module.zero().0);
    let name = format!("{}(+)M", ring.name());
    Ok(FiniteRing::build(
        order,
        move |x, y| {
            let ((r1, m1), (r2, m2)) = (dec(x), dec(y));
            enc(
                base_a.add(ElementId(r1), ElementId(r2)).0,
                mod_a.add(ElementId(m1), ElementId(m2)).0,
            )
        },
        move |x, y| {
            let ((r1, m1), (r2, m2)) = (dec(x), dec(y));
            enc(
                base_m.mul(ElementId(r1), ElementId(r2)).0,
                mod_m
                    .add(ElementId(act_m(r1, m2)), ElementId(act_m(r2, m1)))
                    .0,
            )
        },
        zero,
        one,
        labels,
        Construction::Idealization {
            base: ring.clone(),
            module,
        },
        name,
    ))
}

/// Amalgamation `A ><_J B` along a homomorphism `f`: the subring
/// `{(a, f(a)+j) : a in A, j in J}` of `A x B`. `J` may be the whole
/// ring. Elements are enumerated lexicographically by `(a, j)`.
pub fn make_amalgamation(f: &RingHom, j_members: &[bool]) -> Result<FiniteRing, RingError> {
    let a_ring = f.domain().clone();
    let b_ring = f.codomain().clone();
    if j_members.len() != b_ring.order() as usize {
        return Err(RingError::RingMismatch);
    }
    let j_sorted: Vec<u32> = (0..b_ring.order())
        .filter(|&j| j_members[j as usize])
        .collect();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut index: HashMap<(u32, u32), u32> = HashMap::new();
    for a in 0..a_ring.order() {
        let fa = f.apply(ElementId(a));
        for &j in &j_sorted {
            let b = b_ring.add(fa, ElementId(j));
            let p = (a, b.0);
            index.insert(p, pairs.len() as u32);
            pairs.push(p);
        }
    }
    let order = pairs.len() as u32;
    let labels: Vec<String> = pairs
        .iter()
        .map(|&(a, b)| {
            format!(
                "({},{})",
                a_ring.label(ElementId(a)),
                b_ring.label(ElementId(b))
            )
        })
        .collect();
    let zero = index[&(a_ring.zero().0, b_ring.zero().0)];
    let one = index[&(a_ring.one().0, b_ring.one().0)];
    let data = AmalgData {
        a_ring: a_ring.clone(),
        b_ring: b_ring.clone(),
        pairs: pairs.clone(),
        index: index.clone(),
    };
    let (pa, ia, ra, rb_a) = (pairs.clone(), index.clone(), a_ring.clone(), b_ring.clone());
    let (pm, im, rm, rb_m) = (pairs, index, a_ring.clone(), b_ring.clone());
    let name = format!("amalg({})", a_ring.name());
    Ok(FiniteRing::build(
        order,
        move |x, y| {
            let ((a1, b1), (a2, b2)) = (pa[x as usize], pa[y as usize]);
            ia[&(
                ra.add(ElementId(a1), ElementId(a2)).0,
                rb_a.add(ElementId(b1), ElementId(b2)).0,
            )]
        },
        move |x, y| {
            let ((a1, b1), (a2, b2)) = (pm[x as usize], pm[y as usize]);
            im[&(
                rm.mul(ElementId(a1), ElementId(a2)).0,
                rb_m.mul(ElementId(b1), ElementId(b2)).0,
            )]
        },
        zero,
        one,
        labels,
        Construction::Amalgamation(data),
        name,
    ))
}

/// Localization at a multiplicative set, realized for finite rings as
/// the quotient by the annihilator kernel `{r : sr = 0 for some s in
/// closure(S)}`. Every image of `S` is a unit in the result.
pub fn make_localization(
    ring: &FiniteRing,
    s: &[ElementId],
) -> Result<(FiniteRing, RingHom), RingError> {
    let n = ring.order() as usize;
    // multiplicative closure of S (with 1 adjoined)
    let mut closure = vec![false; n];
    closure[ring.one().0 as usize] = true;
    let mut frontier: Vec<ElementId> = vec![ring.one()];
    for &x in s {
        if !closure[x.0 as usize] {
            closure[x.0 as usize] = true;
            frontier.push(x);
        }
    }
    while let Some(x) = frontier.pop() {
        for y in 0..n {
            if closure[y] {
                let z = ring.mul(x, ElementId(y as u32));
                if !closure[z.0 as usize] {
                    closure[z.0 as usize] = true;
                    frontier.push(z);
                }
            }
        }
    }
    if closure[ring.zero().0 as usize] {
        return Err(RingError::CollapsesToZero);
    }
    let mut kernel = vec![false; n];
    for r in 0..n {
        let r = ElementId(r as u32);
        if (0..n).any(|s| closure[s] && ring.mul(ElementId(s as u32), r) == ring.zero()) {
            kernel[r.0 as usize] = true;
        }
    }
    quotient_with_tag(ring, &kernel, true)
}

/// A unital homomorphism between two finite rings, stored elementwise.
#[derive(Clone)]
pub struct RingHom {
    domain: FiniteRing,
    codomain: FiniteRing,
    map: Vec<u32>,
    surjective: bool,
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingHom({} -> {})", self.domain.name(), self.codomain.name())
    }
}

impl RingHom {
    pub fn new(
        domain: FiniteRing,
        codomain: FiniteRing,
        map: Vec<u32>,
    ) -> Result<Self, RingError> {
        if map.len() != domain.order() as usize {
            return Err(RingError::NotAHom("map length mismatch".into()));
        }
        let get = |a: ElementId| -> ElementId { ElementId(map[a.0 as usize]) };
        if get(domain.zero()) != codomain.zero() {
            return Err(RingError::NotAHom("f(0) != 0".into()));
        }
        if get(domain.one()) != codomain.one() {
            return Err(RingError::NotAHom("f(1) != 1".into()));
        }
        for a in domain.elements() {
            if get(a).0 >= codomain.order() {
                return Err(RingError::NotAHom("image out of range".into()));
            }
            for b in domain.elements() {
                if get(domain.add(a, b)) != codomain.add(get(a), get(b)) {
                    return Err(RingError::NotAHom("additivity fails".into()));
                }
                if get(domain.mul(a, b)) != codomain.mul(get(a), get(b)) {
                    return Err(RingError::NotAHom("multiplicativity fails".into()));
                }
            }
        }
        Ok(Self::new_unchecked(domain, codomain, map))
    }

    fn new_unchecked(domain: FiniteRing, codomain: FiniteRing, map: Vec<u32>) -> Self {
        let mut hit = vec![false; codomain.order() as usize];
        for &v in &map {
            hit[v as usize] = true;
        }
        let surjective = hit.iter().all(|&h| h);
        RingHom {
            domain,
            codomain,
            map,
            surjective,
        }
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        Self::new_unchecked(ring.clone(), ring.clone(), (0..ring.order()).collect())
    }

    pub fn domain(&self) -> &FiniteRing {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteRing {
        &self.codomain
    }

    pub fn apply(&self, a: ElementId) -> ElementId {
        ElementId(self.map[a.0 as usize])
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// Membership table of the kernel.
    pub fn kernel_members(&self) -> Vec<bool> {
        self.map
            .iter()
            .map(|&v| ElementId(v) == self.codomain.zero())
            .collect()
    }
}

/// Projection of a product ring onto factor `i`.
pub fn product_projection(product: &FiniteRing, i: usize) -> Result<RingHom, RingError> {
    let factors = match product.construction() {
        Construction::Product(f) => f.clone(),
        _ => return Err(RingError::RingMismatch),
    };
    if i >= factors.len() {
        return Err(RingError::IndexOutOfRange(i));
    }
    let map: Vec<u32> = product
        .elements()
        .map(|a| product.product_decode(a).unwrap()[i].0)
        .collect();
    Ok(RingHom::new_unchecked(
        product.clone(),
        factors[i].clone(),
        map,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zn_basics() {
        let z8 = make_zn(8).unwrap();
        assert_eq!(z8.order(), 8);
        assert_eq!(z8.characteristic(), 8);
        let z2 = make_zn(2).unwrap();
        assert_eq!(z2.order(), 2);
        assert!(matches!(make_zn(1), Err(RingError::InvalidOrder(1))));
        z8.verify_axioms().unwrap();
    }

    #[test]
    fn product_orders() {
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9.clone()]).unwrap();
        assert_eq!(p.order(), 81);
        let p3 = make_product(vec![z9.clone(), z9.clone(), z9]).unwrap();
        assert_eq!(p3.order(), 729);
        let z2 = make_zn(2).unwrap();
        let b = make_product(vec![z2.clone(), z2.clone(), z2]).unwrap();
        assert_eq!(b.order(), 8);
        // boolean: x^2 = x componentwise
        assert!(b.elements().all(|x| b.mul(x, x) == x));
        assert!(matches!(make_product(vec![]), Err(RingError::InvalidArity)));
    }

    #[test]
    fn product_char_is_lcm() {
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9]).unwrap();
        assert_eq!(p.characteristic(), 9);
    }

    #[test]
    fn poly_quotient_field_and_local() {
        // x^2+1 is irreducible mod 3: brute check there is no root
        for a in 0..3u64 {
            assert_ne!((a * a + 1) % 3, 0);
        }
        let f9 = make_poly_quotient(3, &[1, 0, 1]).unwrap();
        assert_eq!(f9.order(), 9);
        assert_eq!(f9.characteristic(), 3);
        assert_eq!(f9.units().len(), 8);
        f9.verify_axioms().unwrap();

        let local = make_poly_quotient(3, &[0, 0, 1]).unwrap();
        assert_eq!(local.order(), 9);
        // x is nilpotent: x^2 = 0
        let x = ElementId(3); // coefficient vector (0,1)
        assert_eq!(local.label(x), "x");
        assert_eq!(local.mul(x, x), local.zero());

        let z2iso = make_poly_quotient(2, &[1, 1]).unwrap();
        assert_eq!(z2iso.order(), 2);
        assert!(matches!(
            make_poly_quotient(4, &[1, 1]),
            Err(RingError::NotPrime(4))
        ));
        assert!(matches!(
            make_poly_quotient(3, &[2]),
            Err(RingError::InvalidModulus)
        ));
        assert!(matches!(
            make_poly_quotient(3, &[1, 2, 2]),
            Err(RingError::InvalidModulus)
        ));
    }

    #[test]
    fn quotient_of_z12() {
        let z12 = make_zn(12).unwrap();
        let members: Vec<bool> = (0..12).map(|i| i % 4 == 0).collect();
        let (q, pi) = make_quotient(&z12, &members).unwrap();
        assert_eq!(q.order(), 4);
        assert!(pi.is_surjective());
        assert_eq!(pi.apply(ElementId(5)), pi.apply(ElementId(9)));
        q.verify_axioms().unwrap();

        let all = vec![true; 12];
        assert!(matches!(
            make_quotient(&z12, &all),
            Err(RingError::NotProper)
        ));
    }

    #[test]
    fn idealization_identity_and_order() {
        let z8 = make_zn(8).unwrap();
        let zero_ideal: Vec<bool> = (0..8).map(|i| i == 0).collect();
        let r = make_idealization(&z8, &zero_ideal).unwrap();
        assert_eq!(r.order(), 64);
        assert_eq!(r.label(r.one()), "(1,0)");
        r.verify_axioms().unwrap();
        // (r,m)(s,n) = (rs, rn+sm): (2,3)(3,1) = (6, 2+9=2+1)
        let x = ElementId(2 * 8 + 3);
        let y = ElementId(3 * 8 + 1);
        assert_eq!(r.mul(x, y), ElementId(6 * 8 + ((2 * 1 + 3 * 3) % 8) as u32));

        let g4: Vec<bool> = (0..8).map(|i| i % 4 == 0).collect();
        let r2 = make_idealization(&z8, &g4).unwrap();
        // M = Z8/(4) has 4 cosets
        assert_eq!(r2.order(), 32);

        let whole = vec![true; 8];
        assert!(matches!(
            make_idealization(&z8, &whole),
            Err(RingError::ZeroModule)
        ));
    }

    #[test]
    fn amalgamation_orders() {
        let z8 = make_zn(8).unwrap();
        let f = RingHom::identity(&z8);
        let whole = vec![true; 8];
        let a = make_amalgamation(&f, &whole).unwrap();
        assert_eq!(a.order(), 64);
        a.verify_axioms().unwrap();

        let g4: Vec<bool> = (0..8).map(|i| i % 4 == 0).collect();
        let a2 = make_amalgamation(&f, &g4).unwrap();
        assert_eq!(a2.order(), 16);

        let zero: Vec<bool> = (0..8).map(|i| i == 0).collect();
        let diag = make_amalgamation(&f, &zero).unwrap();
        assert_eq!(diag.order(), 8);
        // diagonal is isomorphic to Z8
        assert_eq!(diag.characteristic(), 8);
    }

    #[test]
    fn localization_cases() {
        let z6 = make_zn(6).unwrap();
        let (l, pi) = make_localization(&z6, &[ElementId(3)]).unwrap();
        assert_eq!(l.order(), 2);
        // image of 3 is a unit
        assert!(l.is_unit(pi.apply(ElementId(3))));

        let z8 = make_zn(8).unwrap();
        let (l8, _) = make_localization(&z8, &[ElementId(1)]).unwrap();
        assert_eq!(l8.order(), 8);
        assert!(matches!(
            make_localization(&z8, &[ElementId(2)]),
            Err(RingError::CollapsesToZero)
        ));
    }

    #[test]
    fn units_and_vnr() {
        let z8 = make_zn(8).unwrap();
        let u: Vec<u32> = z8.units().iter().map(|e| e.0).collect();
        assert_eq!(u, vec![1, 3, 5, 7]);
        assert!(!z8.is_von_neumann_regular());

        let z3 = make_zn(3).unwrap();
        let f9 = make_poly_quotient(3, &[1, 0, 1]).unwrap();
        let p = make_product(vec![z3, f9]).unwrap();
        assert!(p.is_von_neumann_regular());
        assert_eq!(p.characteristic(), 3);

        let z2 = make_zn(2).unwrap();
        let b = make_product(vec![z2.clone(), z2.clone(), z2]).unwrap();
        assert!(b.is_von_neumann_regular());
    }

    #[test]
    fn cube_roots_scan() {
        let z9 = make_zn(9).unwrap();
        let r: Vec<u32> = z9.cube_roots(ElementId(1)).iter().map(|e| e.0).collect();
        assert_eq!(r, vec![1, 4, 7]);
        let z8 = make_zn(8).unwrap();
        let r8: Vec<u32> = z8.cube_roots(ElementId(1)).iter().map(|e| e.0).collect();
        assert_eq!(r8, vec![1]);
        let f9 = make_poly_quotient(3, &[1, 0, 1]).unwrap();
        assert_eq!(f9.cube_roots(f9.zero()), vec![f9.zero()]);
    }

    #[test]
    fn projections() {
        let z9 = make_zn(9).unwrap();
        let p = make_product(vec![z9.clone(), z9]).unwrap();
        let pr0 = product_projection(&p, 0).unwrap();
        let a = p.product_encode(&[ElementId(4), ElementId(0)]).unwrap();
        assert_eq!(pr0.apply(a), ElementId(4));
        assert_eq!(pr0.apply(p.one()), ElementId(1));
        assert!(pr0.is_surjective());
        for x in p.elements() {
            let t = p.product_decode(x).unwrap();
            assert_eq!(p.product_encode(&t).unwrap(), x);
        }
        assert!(product_projection(&p, 2).is_err());
    }

    #[test]
    fn hom_validation() {
        let z8 = make_zn(8).unwrap();
        let z4 = make_zn(4).unwrap();
        let good: Vec<u32> = (0..8).map(|i| i % 4).collect();
        assert!(RingHom::new(z8.clone(), z4.clone(), good).is_ok());
        let bad: Vec<u32> = (0..8).map(|i| (i + 1) % 4).collect();
        assert!(RingHom::new(z8, z4, bad).is_err());
    }

    #[test]
    fn large_ring_lazy_tables() {
        let z9 = make_zn(9).unwrap();
        let p3 = make_product(vec![z9.clone(), z9.clone(), z9]).unwrap();
        assert_eq!(p3.order(), 729);
        p3.verify_axioms().unwrap();
        let a = p3
            .product_encode(&[ElementId(2), ElementId(1), ElementId(0)])
            .unwrap();
        assert_eq!(p3.label(a), "(2,1,0)");
    }
}
