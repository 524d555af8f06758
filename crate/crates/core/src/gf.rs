//! Exact arithmetic in GF(p^k).
//!
//! A field is `F_p[x]` modulo a monic irreducible polynomial; elements are
//! length-`k` little-endian digit vectors over `F_p`. Construction without
//! an explicit modulus picks the lexicographically smallest monic
//! irreducible of the requested degree, so a field is determined by the
//! spec string `"p^k"` alone and every derived object is replayable.
//!
//! Subfield membership is decided by the Frobenius fixed-point test
//! `y^{p^k} = y` rather than by linear algebra over a stored image basis.

use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::linalg;
use crate::MAX_FIELD_ORDER;

/// Characteristics the crate supports. Everything downstream assumes
/// enumeration at desk scale, which these guarantee.
pub const SUPPORTED_PRIMES: [u8; 3] = [2, 3, 5];

pub type Field = Arc<FiniteField>;

// ---------------------------------------------------------------------------
// Dense polynomial helpers over F_p (little-endian digit vectors).

fn poly_trim(v: &mut Vec<u8>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(p: u8, a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pw = p as u32;
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai as u32 * bj as u32;
        }
    }
    let mut out: Vec<u8> = out.into_iter().map(|d| (d % pw) as u8).collect();
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(p: u8, a: &[u8], m: &[u8]) -> Vec<u8> {
    let deg_m = m.len() - 1;
    let mut r: Vec<u8> = a.to_vec();
    poly_trim(&mut r);
    let pw = p as u16;
    while r.len() > deg_m {
        let lead = r[r.len() - 1] as u16;
        let shift = r.len() - 1 - deg_m;
        if lead != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = shift + j;
                let sub = (pw - lead) * mj as u16 % pw;
                r[idx] = ((r[idx] as u16 + sub) % pw) as u8;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_gcd_is_constant(p: u8, a: &[u8], b: &[u8]) -> bool {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    poly_trim(&mut f);
    poly_trim(&mut g);
    while !g.is_empty() {
        // Make g monic so poly_rem applies.
        let lead = *g.last().unwrap();
        if lead != 1 {
            let s = linalg::inv_mod(p, lead) as u16;
            for d in g.iter_mut() {
                *d = (*d as u16 * s % p as u16) as u8;
            }
        }
        let r = poly_rem(p, &f, &g);
        f = g;
        g = r;
    }
    f.len() == 1
}

/// `g^p mod m` for small `p`.
fn poly_pow_p_mod(p: u8, g: &[u8], m: &[u8]) -> Vec<u8> {
    let mut acc = vec![1u8];
    for _ in 0..p {
        acc = poly_rem(p, &poly_mul(p, &acc, g), m);
    }
    acc
}

/// Irreducibility over F_p: a monic polynomial of degree k >= 2 is
/// irreducible iff it shares no factor with `x^{p^d} - x` for any
/// `d <= k/2` (any proper factorization contains a factor of such a
/// degree). Degree-1 polynomials are always irreducible.
fn is_irreducible(p: u8, f: &[u8]) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    let mut g = vec![0u8, 1]; // x
    for _ in 1..=(k / 2) {
        g = poly_pow_p_mod(p, &g, f); // g = x^{p^d} mod f
        let mut h = g.clone();
        // h = g - x
        if h.len() < 2 {
            h.resize(2, 0);
        }
        h[1] = ((h[1] as u16 + p as u16 - 1) % p as u16) as u8;
        poly_trim(&mut h);
        if h.is_empty() || !poly_gcd_is_constant(p, &h, f) {
            return false;
        }
    }
    true
}

fn check_prime(p: u64) -> Result<u8, Error> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
        return Err(Error::NotPrime(p));
    }
    if !SUPPORTED_PRIMES.contains(&(p as u8)) {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    Ok(p as u8)
}

/// The lexicographically smallest (by little-endian coefficient vector)
/// monic irreducible polynomial of degree `k` over `F_p`.
pub fn find_irreducible(p: u64, k: u64) -> Result<Vec<u8>, Error> {
    let p = check_prime(p)?;
    if k < 1 {
        return Err(Error::InvalidDegree(k));
    }
    let k = k as usize;
    let requested = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if requested > MAX_FIELD_ORDER {
        return Err(Error::BoundExceeded {
            what: "field order",
            limit: MAX_FIELD_ORDER,
            requested,
        });
    }
    let order = requested;
    // Lex order on [c_0, ..., c_{k-1}] puts c_0 in the most significant
    // position.
    let mut cand = vec![0u8; k + 1];
    cand[k] = 1;
    for n in 0..order {
        let mut m = n;
        for i in (0..k).rev() {
            cand[i] = (m % p as u64) as u8;
            m /= p as u64;
        }
        if is_irreducible(p, &cand) {
            return Ok(cand);
        }
    }
    Err(Error::Internal(format!(
        "no irreducible of degree {k} over F_{p}"
    )))
}

// ---------------------------------------------------------------------------

/// GF(p^k) presented as F_p[x] / (modulus).
pub struct FiniteField {
    p: u8,
    k: usize,
    modulus: Vec<u8>,
    /// frob[j] = (x^j)^p reduced mod the modulus; the p-power map is
    /// F_p-linear, so one application is a matrix-vector product.
    frob: Vec<Vec<u8>>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteField({})", self.spec_string())
    }
}

impl FiniteField {
    /// GF(p^k) with the canonical (lex-smallest irreducible) modulus.
    pub fn new(p: u64, k: u64) -> Result<Field, Error> {
        let modulus = find_irreducible(p, k)?;
        Self::from_validated(p as u8, k as usize, modulus)
    }

    /// GF(p^k) with an explicit modulus, which must be monic irreducible of
    /// degree k with digits below p.
    pub fn with_modulus(p: u64, modulus: Vec<u8>) -> Result<Field, Error> {
        let p = check_prime(p)?;
        if modulus.len() < 2 {
            return Err(Error::InvalidDegree(modulus.len() as u64));
        }
        let k = modulus.len() - 1;
        let requested = (p as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        if requested > MAX_FIELD_ORDER {
            return Err(Error::BoundExceeded {
                what: "field order",
                limit: MAX_FIELD_ORDER,
                requested,
            });
        }
        if modulus[k] != 1 || modulus.iter().any(|&d| d >= p) {
            return Err(Error::Malformed(format!(
                "modulus {:?} is not a monic digit vector over F_{}",
                modulus, p
            )));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::NotIrreducible(format!("{:?}", modulus), p));
        }
        Self::from_validated(p, k, modulus)
    }

    fn from_validated(p: u8, k: usize, modulus: Vec<u8>) -> Result<Field, Error> {
        let mut frob = Vec::with_capacity(k);
        for j in 0..k {
            let mut xjp = vec![0u8; j * p as usize + 1];
            *xjp.last_mut().unwrap() = 1;
            let mut col = poly_rem(p, &xjp, &modulus);
            col.resize(k, 0);
            frob.push(col);
        }
        Ok(Arc::new(FiniteField {
            p,
            k,
            modulus,
            frob,
        }))
    }

    /// Parse `"p^k"` or `"p^k/[c0,c1,...,1]"`.
    pub fn parse_spec(spec: &str) -> Result<Field, Error> {
        let bad = |s: &str| Error::Malformed(format!("bad field spec {s:?}"));
        let (head, modulus) = match spec.split_once('/') {
            Some((h, m)) => (h, Some(m)),
            None => (spec, None),
        };
        let (p_str, k_str) = head.split_once('^').ok_or_else(|| bad(spec))?;
        let p: u64 = p_str.trim().parse().map_err(|_| bad(spec))?;
        let k: u64 = k_str.trim().parse().map_err(|_| bad(spec))?;
        match modulus {
            None => FiniteField::new(p, k),
            Some(m) => {
                let m = m.trim();
                let inner = m
                    .strip_prefix('[')
                    .and_then(|m| m.strip_suffix(']'))
                    .ok_or_else(|| bad(spec))?;
                let digits: Result<Vec<u8>, _> =
                    inner.split(',').map(|d| d.trim().parse::<u8>()).collect();
                let digits = digits.map_err(|_| bad(spec))?;
                if digits.len() as u64 != k + 1 {
                    return Err(bad(spec));
                }
                FiniteField::with_modulus(p, digits)
            }
        }
    }

    /// Canonical spec string with the modulus spelled out.
    pub fn spec_string(&self) -> String {
        let digits: Vec<String> = self.modulus.iter().map(|d| d.to_string()).collect();
        format!("{}^{}/[{}]", self.p, self.k, digits.join(","))
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.k as u32)
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }
}

/// Operations that need the `Arc` handle to mint elements.
pub trait FieldOps {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    /// The residue class of x. For k = 1 this is the zero element (the
    /// canonical degree-1 modulus is x itself).
    fn generator(&self) -> FieldElement;
    fn from_prime(&self, c: u8) -> FieldElement;
    fn element(&self, coeffs: Vec<u8>) -> Result<FieldElement, Error>;
    /// All elements in lexicographic order of their digit vectors.
    fn elements(&self) -> ElementIter;
}

impl FieldOps for Field {
    fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            coeffs: vec![0; self.k],
        }
    }

    fn one(&self) -> FieldElement {
        self.from_prime(1)
    }

    fn generator(&self) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        if self.k >= 2 {
            coeffs[1] = 1;
        } else {
            // x mod (x + c0) is the constant -c0.
            coeffs[0] = (self.p - self.modulus[0]) % self.p;
        }
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    fn from_prime(&self, c: u8) -> FieldElement {
        assert!(c < self.p, "digit {c} out of range for F_{}", self.p);
        let mut coeffs = vec![0; self.k];
        coeffs[0] = c;
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    fn element(&self, coeffs: Vec<u8>) -> Result<FieldElement, Error> {
        if coeffs.len() != self.k {
            return Err(Error::Malformed(format!(
                "element has {} digits, field {} needs {}",
                coeffs.len(),
                self.spec_string(),
                self.k
            )));
        }
        if coeffs.iter().any(|&d| d >= self.p) {
            return Err(Error::Malformed(format!(
                "element digits {:?} out of range for F_{}",
                coeffs, self.p
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs,
        })
    }

    fn elements(&self) -> ElementIter {
        ElementIter {
            field: self.clone(),
            next: 0,
            order: self.order(),
        }
    }
}

pub struct ElementIter {
    field: Field,
    next: u64,
    order: u64,
}

impl Iterator for ElementIter {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.order {
            return None;
        }
        let f = &self.field;
        let mut coeffs = vec![0u8; f.k];
        let mut m = self.next;
        // Digit 0 is most significant so iteration follows lex order.
        for i in (0..f.k).rev() {
            coeffs[i] = (m % f.p as u64) as u8;
            m /= f.p as u64;
        }
        self.next += 1;
        Some(FieldElement {
            field: f.clone(),
            coeffs,
        })
    }
}

// ---------------------------------------------------------------------------

/// An element of a [`FiniteField`], always reduced.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u8>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (
            self.field.p,
            self.field.k,
            &self.field.modulus,
            &self.coeffs,
        )
            .cmp(&(
                other.field.p,
                other.field.k,
                &other.field.modulus,
                &other.coeffs,
            ))
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits: Vec<String> = self.coeffs.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", digits.join(","))
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&d| d == 0)
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), Error> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(rhs)?;
        Ok(self.add_unchecked(rhs))
    }

    pub fn checked_sub(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(rhs)?;
        Ok(self.sub_unchecked(rhs))
    }

    pub fn checked_mul(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(rhs)?;
        Ok(self.mul_unchecked(rhs))
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement, Error> {
        self.same_field(rhs)?;
        Ok(self.mul_unchecked(&rhs.inv()?))
    }

    fn add_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn sub_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let p = self.field.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| ((a as u16 + p - b as u16) % p) as u8)
            .collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn mul_unchecked(&self, rhs: &FieldElement) -> FieldElement {
        let f = &self.field;
        let prod = poly_mul(f.p, &self.coeffs, &rhs.coeffs);
        let mut red = poly_rem(f.p, &prod, &f.modulus);
        red.resize(f.k, 0);
        FieldElement {
            field: f.clone(),
            coeffs: red,
        }
    }

    pub fn neg(&self) -> FieldElement {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// coefficient polynomial and the field modulus.
    pub fn inv(&self) -> Result<FieldElement, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let p = f.p;
        let pw = p as u16;
        // Invariants: r0 = s0 * self (mod modulus), r1 = s1 * self.
        let mut r0: Vec<u8> = f.modulus.clone();
        let mut r1: Vec<u8> = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<u8> = vec![];
        let mut s1: Vec<u8> = vec![1];
        while !r1.is_empty() {
            // Divide r0 by r1.
            let lead = *r1.last().unwrap();
            let lead_inv = linalg::inv_mod(p, lead) as u16;
            let mut q = vec![0u8; r0.len().saturating_sub(r1.len()) + 1];
            let mut rem = r0.clone();
            while rem.len() >= r1.len() && !rem.is_empty() {
                let d = rem.len() - r1.len();
                let c = (*rem.last().unwrap() as u16 * lead_inv % pw) as u8;
                q[d] = c;
                for (j, &bj) in r1.iter().enumerate() {
                    let sub = (pw - c as u16) * bj as u16 % pw;
                    rem[d + j] = ((rem[d + j] as u16 + sub) % pw) as u8;
                }
                poly_trim(&mut rem);
            }
            let qs1 = poly_mul(p, &q, &s1);
            // s_next = s0 - q*s1
            let len = s0.len().max(qs1.len());
            let mut s_next = vec![0u8; len];
            for i in 0..len {
                let a = *s0.get(i).unwrap_or(&0) as u16;
                let b = *qs1.get(i).unwrap_or(&0) as u16;
                s_next[i] = ((a + pw - b) % pw) as u8;
            }
            poly_trim(&mut s_next);
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s_next;
        }
        // r0 is a nonzero constant gcd; scale s0 by its inverse.
        debug_assert_eq!(r0.len(), 1);
        let scale = linalg::inv_mod(p, r0[0]) as u16;
        let scaled: Vec<u8> = s0.iter().map(|&c| (c as u16 * scale % pw) as u8).collect();
        let mut red = poly_rem(p, &scaled, &f.modulus);
        red.resize(f.k, 0);
        Ok(FieldElement {
            field: f.clone(),
            coeffs: red,
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElement {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// `x^{p^i}` by iterating the precomputed Frobenius matrix. On
    /// GF(p^k) the map has order k, so `i` is reduced mod k.
    pub fn frobenius(&self, i: u64) -> FieldElement {
        let f = &self.field;
        let steps = (i % f.k as u64) as usize;
        let mut cur = self.coeffs.clone();
        let p = f.p as u16;
        for _ in 0..steps {
            let mut next = vec![0u8; f.k];
            for (j, &d) in cur.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                for (t, &m) in f.frob[j].iter().enumerate() {
                    next[t] = ((next[t] as u16 + d as u16 * m as u16) % p) as u8;
                }
            }
            cur = next;
        }
        FieldElement {
            field: f.clone(),
            coeffs: cur,
        }
    }

    /// The absolute trace `sum_{i<k} x^{p^i}`, an element of F_p.
    pub fn trace_to_prime(&self) -> u8 {
        let f = &self.field;
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..f.k {
            cur = cur.frobenius(1);
            acc = acc.add_unchecked(&cur);
        }
        debug_assert!(
            acc.coeffs[1..].iter().all(|&d| d == 0),
            "trace left the prime field"
        );
        acc.coeffs[0]
    }

    /// Position of this element in the lex enumeration of its field.
    pub fn lex_index(&self) -> u64 {
        let p = self.field.p as u64;
        self.coeffs.iter().fold(0, |acc, &d| acc * p + d as u64)
    }
}

macro_rules! bin_op {
    ($trait:ident, $method:ident, $raw:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                assert!(
                    *self.field == *rhs.field,
                    "cross-field arithmetic: {} vs {}",
                    self.field.spec_string(),
                    rhs.field.spec_string()
                );
                self.$raw(rhs)
            }
        }
    };
}
bin_op!(Add, add, add_unchecked);
bin_op!(Sub, sub, sub_unchecked);
bin_op!(Mul, mul, mul_unchecked);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

// ---------------------------------------------------------------------------

/// A concrete subfield embedding GF(p^k) into GF(p^m), k | m, sending the
/// source residue generator to a chosen root of the source modulus.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    gen_image: FieldElement,
    /// gen_image^i for i < k; the embedding is the F_p-linear map with
    /// these basis images.
    basis_images: Vec<FieldElement>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Embedding({} -> {}, x -> {})",
            self.source.spec_string(),
            self.target.spec_string(),
            self.gen_image
        )
    }
}

impl Embedding {
    /// Deterministic embedding: the chosen image of the generator is the
    /// lex-smallest root of the source modulus in the target.
    pub fn new(source: &Field, target: &Field) -> Result<Embedding, Error> {
        if source.p != target.p {
            return Err(Error::FieldMismatch);
        }
        if !target.k.is_multiple_of(source.k) {
            return Err(Error::DegreeNotDivisible {
                src: source.k,
                dst: target.k,
            });
        }
        let root = target
            .elements()
            .find(|y| eval_digit_poly(target, &source.modulus, y).is_zero())
            .ok_or_else(|| Error::Internal("subfield modulus has no root in the target".into()))?;
        Self::from_generator_image(source, target, root)
    }

    /// Rebuild an embedding from a stored generator image, validating that
    /// it is a root of the source modulus.
    pub fn from_generator_image(
        source: &Field,
        target: &Field,
        gen_image: FieldElement,
    ) -> Result<Embedding, Error> {
        if source.p != target.p || **gen_image.field() != **target {
            return Err(Error::FieldMismatch);
        }
        if !target.k.is_multiple_of(source.k) {
            return Err(Error::DegreeNotDivisible {
                src: source.k,
                dst: target.k,
            });
        }
        if !eval_digit_poly(target, &source.modulus, &gen_image).is_zero() {
            return Err(Error::Malformed(
                "generator image is not a root of the source modulus".into(),
            ));
        }
        let mut basis_images = Vec::with_capacity(source.k);
        let mut pow = target.one();
        for _ in 0..source.k {
            basis_images.push(pow.clone());
            pow = pow.mul_unchecked(&gen_image);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            gen_image,
            basis_images,
        })
    }

    pub fn identity(field: &Field) -> Embedding {
        Embedding::from_generator_image(field, field, field.generator())
            .expect("generator is a root of its own modulus")
    }

    /// The embedding K -> M through L, given K -> L and L -> M.
    pub fn compose(outer: &Embedding, inner: &Embedding) -> Result<Embedding, Error> {
        if *inner.target != *outer.source {
            return Err(Error::FieldMismatch);
        }
        Embedding::from_generator_image(
            &inner.source,
            &outer.target,
            outer.apply_ref(&inner.gen_image)?,
        )
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn generator_image(&self) -> &FieldElement {
        &self.gen_image
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        self.apply_ref(x).expect("element not in the source field")
    }

    pub fn apply_ref(&self, x: &FieldElement) -> Result<FieldElement, Error> {
        if **x.field() != *self.source {
            return Err(Error::FieldMismatch);
        }
        let p = self.target.p as u16;
        let mut out = vec![0u8; self.target.k];
        for (digit, img) in x.coeffs.iter().zip(&self.basis_images) {
            if *digit == 0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(&img.coeffs) {
                *o = ((*o as u16 + *digit as u16 * c as u16) % p) as u8;
            }
        }
        Ok(FieldElement {
            field: self.target.clone(),
            coeffs: out,
        })
    }

    /// Frobenius fixed-point test: y lies in the embedded copy of the
    /// source iff `y^{p^k} = y`.
    pub fn contains(&self, y: &FieldElement) -> Result<bool, Error> {
        if **y.field() != *self.target {
            return Err(Error::FieldMismatch);
        }
        Ok(y.frobenius(self.source.k as u64) == *y)
    }

    /// The unique source element mapping to `y`, if `y` is in the image.
    pub fn preimage(&self, y: &FieldElement) -> Result<Option<FieldElement>, Error> {
        if **y.field() != *self.target {
            return Err(Error::FieldMismatch);
        }
        let cols: Vec<Vec<u8>> = self.basis_images.iter().map(|b| b.coeffs.clone()).collect();
        match linalg::solve(self.source.p, &cols, &y.coeffs) {
            None => Ok(None),
            Some(x) => Ok(Some(FieldElement {
                field: self.source.clone(),
                coeffs: x,
            })),
        }
    }
}

/// Evaluate a digit-vector polynomial over F_p at a point of `field`.
fn eval_digit_poly(field: &Field, poly: &[u8], x: &FieldElement) -> FieldElement {
    let mut acc = field.zero();
    for &c in poly.iter().rev() {
        acc = acc.mul_unchecked(x);
        if c != 0 {
            acc = acc.add_unchecked(&field.from_prime(c));
        }
    }
    acc
}

/// Deterministic embedding constructor, spec-level name.
pub fn build_embedding(source: &Field, target: &Field) -> Result<Embedding, Error> {
    Embedding::new(source, target)
}

/// Subfield membership by the Frobenius fixed-point test.
pub fn in_subfield(e: &Embedding, y: &FieldElement) -> Result<bool, Error> {
    e.contains(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u64) -> Field {
        FiniteField::new(p, k).unwrap()
    }

    /// Independent irreducibility oracle: trial division by every monic
    /// polynomial of degree 1..=deg/2.
    fn irreducible_by_trial_division(p: u8, f: &[u8]) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for n in 0..count {
                let mut div = vec![0u8; d + 1];
                div[d] = 1;
                let mut m = n;
                for digit in div.iter_mut().take(d) {
                    *digit = (m % p as u64) as u8;
                    m /= p as u64;
                }
                if poly_rem(p, f, &div).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(find_irreducible(2, 1).unwrap(), vec![0, 1]);
        assert_eq!(find_irreducible(2, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(find_irreducible(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(find_irreducible(2, 3).unwrap(), vec![1, 0, 1, 1]);
        assert_eq!(find_irreducible(2, 4).unwrap(), vec![1, 0, 0, 1, 1]);
    }

    #[test]
    fn canonical_modulus_is_lex_first_by_oracle() {
        for (p, k) in [(2u64, 2u64), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let found = find_irreducible(p, k).unwrap();
            let pb = p as u8;
            // Everything lex-before must be reducible per the oracle.
            let mut cand = vec![0u8; k as usize + 1];
            cand[k as usize] = 1;
            'outer: for n in 0..p.pow(k as u32) {
                let mut m = n;
                for i in (0..k as usize).rev() {
                    cand[i] = (m % p) as u8;
                    m /= p;
                }
                if cand == found {
                    assert!(irreducible_by_trial_division(pb, &cand));
                    break 'outer;
                }
                assert!(
                    !irreducible_by_trial_division(pb, &cand),
                    "{cand:?} is irreducible but lex-before {found:?}"
                );
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(find_irreducible(4, 2), Err(Error::NotPrime(4))));
        assert!(matches!(
            find_irreducible(7, 2),
            Err(Error::UnsupportedCharacteristic(7))
        ));
        assert!(matches!(
            find_irreducible(2, 0),
            Err(Error::InvalidDegree(0))
        ));
        assert!(matches!(
            FiniteField::new(2, 17),
            Err(Error::BoundExceeded { .. })
        ));
        assert!(matches!(
            FiniteField::with_modulus(2, vec![0, 0, 1]),
            Err(Error::NotIrreducible(..))
        ));
    }

    #[test]
    fn gf4_arithmetic_examples() {
        let f = gf(2, 2);
        let w = f.element(vec![0, 1]).unwrap();
        let w1 = f.element(vec![1, 1]).unwrap();
        assert_eq!(&w * &w, w1); // w^2 = w + 1
        assert_eq!(&w + &f.zero(), w);
        assert_eq!(w.inv().unwrap(), w1); // w * (w+1) = 1
        assert!(matches!(f.zero().inv(), Err(Error::DivisionByZero)));
        let g8 = gf(2, 3);
        assert!(matches!(
            w.checked_add(&g8.one()),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn frobenius_examples() {
        let f = gf(2, 2);
        let w = f.element(vec![0, 1]).unwrap();
        assert_eq!(w.frobenius(1), f.element(vec![1, 1]).unwrap());
        assert_eq!(w.frobenius(2), w);
        let f3 = gf(3, 1);
        for x in f3.elements() {
            assert_eq!(x.frobenius(1), x);
        }
    }

    #[test]
    fn trace_examples() {
        let f = gf(2, 2);
        let w = f.element(vec![0, 1]).unwrap();
        assert_eq!(w.trace_to_prime(), 1);
        assert_eq!(f.one().trace_to_prime(), 0);
        assert_eq!(f.zero().trace_to_prime(), 0);
    }

    #[test]
    fn embedding_examples() {
        let f2 = gf(2, 1);
        let f4 = gf(2, 2);
        let f16 = gf(2, 4);
        let e = build_embedding(&f2, &f4).unwrap();
        assert_eq!(e.apply(&f2.one()), f4.one());

        // GF(4) -> GF(16): exactly two roots of x^2+x+1, lex-smaller chosen.
        let roots: Vec<FieldElement> = f16
            .elements()
            .filter(|y| {
                let y2 = y.frobenius(1);
                (&(&y2 + y) + &f16.one()).is_zero()
            })
            .collect();
        assert_eq!(roots.len(), 2);
        let e = build_embedding(&f4, &f16).unwrap();
        assert_eq!(e.generator_image(), &roots[0]);

        let f8 = gf(2, 3);
        assert!(matches!(
            build_embedding(&f4, &f8),
            Err(Error::DegreeNotDivisible { .. })
        ));
    }

    #[test]
    fn subfield_membership() {
        let f2 = gf(2, 1);
        let f4 = gf(2, 2);
        let e = build_embedding(&f2, &f4).unwrap();
        assert!(in_subfield(&e, &f4.zero()).unwrap());
        let w = f4.element(vec![0, 1]).unwrap();
        assert!(!in_subfield(&e, &w).unwrap());
        for x in f2.elements() {
            assert!(in_subfield(&e, &e.apply(&x)).unwrap());
        }
    }

    #[test]
    fn preimage_round_trip() {
        let f4 = gf(2, 2);
        let f16 = gf(2, 4);
        let e = build_embedding(&f4, &f16).unwrap();
        for x in f4.elements() {
            let y = e.apply(&x);
            assert_eq!(e.preimage(&y).unwrap(), Some(x));
        }
        let outside = f16.elements().find(|y| !e.contains(y).unwrap()).unwrap();
        assert_eq!(e.preimage(&outside).unwrap(), None);
    }

    #[test]
    fn spec_round_trip() {
        let f = FiniteField::parse_spec("2^4").unwrap();
        assert_eq!(f.spec_string(), "2^4/[1,0,0,1,1]");
        let g = FiniteField::parse_spec(&f.spec_string()).unwrap();
        assert_eq!(*f, *g);
        assert!(FiniteField::parse_spec("2^4/[1,1]").is_err());
        assert!(FiniteField::parse_spec("nope").is_err());
    }
}
