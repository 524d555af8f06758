//! Contrary tuples and replayable witness certificates.
//!
//! A tuple (b_1,...,b_n) in K is contrary for an Artin-Schreier extension
//! L/K when for every slot i the set `b_i * wp(L \ K)` meets every
//! `b_j * wp(K)`, j != i. The brute-force checker decides this by
//! enumerating L once; the generator instead produces, from any
//! F_p-independent tuple (a_1,...,a_n), scale factors b_i and explicit
//! witnesses
//!
//! ```text
//!   y_i = b_j^p * wp(x_{i,j})      for all j,
//!   x_{i,j} in K  iff  i != j,
//! ```
//!
//! packaged as a certificate that replays with O(n^2) field operations and
//! no enumeration of L. Verification pins every stored value to the
//! construction: since `wp` is invariant under shifts by F_p, the displayed
//! equations alone would not notice `x_{i,j} + 1`, so the verifier also
//! recomputes `beta_i = a_i * alpha`, `x_{i,j} = f_{W_j}(beta_i) / b_j` and
//! `y_i = f_T(beta_i)` exactly.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::addpoly::{by_one, AdditivePolynomial, FpSubspace};
use crate::asext::{wp, wp_image, wp_outside_image, ArtinSchreierExtension};
use crate::error::Error;
use crate::gf::{Field, FieldElement, FieldOps};

/// Permutation/subtuple closure is factorial; keep it tiny.
pub const MAX_CLOSURE_N: usize = 4;

/// Per-slot witness data.
#[derive(Clone, Debug)]
pub struct CertificateSlot {
    /// beta_i = a_i * alpha, in L.
    pub beta: FieldElement,
    /// y_i = f_T(beta_i), expressed in K.
    pub y: FieldElement,
    /// x_{i,j} = f_{W_j}(beta_i) / b_j, in L; in K exactly when i != j.
    pub x: Vec<FieldElement>,
}

/// A replayable witness that `b = (b_1^p, ..., b_n^p)` is contrary.
#[derive(Clone, Debug)]
pub struct ContraryCertificate {
    ext: ArtinSchreierExtension,
    a: Vec<FieldElement>,
    b_base: Vec<FieldElement>,
    b: Vec<FieldElement>,
    slots: Vec<CertificateSlot>,
}

impl ContraryCertificate {
    /// Assemble from parts, validating shape only (lengths and ambient
    /// fields); the mathematical content is judged by
    /// [`verify_certificate`].
    pub fn from_parts(
        ext: ArtinSchreierExtension,
        a: Vec<FieldElement>,
        b_base: Vec<FieldElement>,
        b: Vec<FieldElement>,
        slots: Vec<CertificateSlot>,
    ) -> Result<Self, Error> {
        let n = a.len();
        if n == 0 || b_base.len() != n || b.len() != n || slots.len() != n {
            return Err(Error::Malformed(
                "certificate component lengths disagree".into(),
            ));
        }
        let base = ext.base();
        let l = ext.ext();
        let in_base = |v: &FieldElement| **v.field() == **base;
        let in_ext = |v: &FieldElement| **v.field() == **l;
        if !a.iter().all(in_base) || !b_base.iter().all(in_base) || !b.iter().all(in_base) {
            return Err(Error::Malformed(
                "tuple entries do not live in the base field".into(),
            ));
        }
        for s in &slots {
            if !in_ext(&s.beta) || !in_base(&s.y) || s.x.len() != n || !s.x.iter().all(in_ext) {
                return Err(Error::Malformed("slot witnesses are malformed".into()));
            }
        }
        Ok(ContraryCertificate {
            ext,
            a,
            b_base,
            b,
            slots,
        })
    }

    pub fn ext(&self) -> &ArtinSchreierExtension {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn b_base(&self) -> &[FieldElement] {
        &self.b_base
    }

    /// The contrary tuple itself: entries b_i^p.
    pub fn b(&self) -> &[FieldElement] {
        &self.b
    }

    pub fn slots(&self) -> &[CertificateSlot] {
        &self.slots
    }
}

fn independent(field: &Field, tuple: &[FieldElement]) -> bool {
    FpSubspace::from_generators_in(field, tuple)
        .map(|s| s.dim() == tuple.len())
        .unwrap_or(false)
}

/// Span of all a_j with j != i.
fn w_subspace(field: &Field, a: &[FieldElement], i: usize) -> Result<FpSubspace, Error> {
    let others: Vec<FieldElement> = a
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != i)
        .map(|(_, v)| v.clone())
        .collect();
    FpSubspace::from_generators_in(field, &others)
}

/// Brute-force contrariness: build `A = wp(K)` and `U = wp(L \ K) ∩ K`
/// once, then test every slot's intersection condition on scaled copies.
/// For n = 1 the empty intersection over j != i is read as all of K.
pub fn is_contrary_bruteforce(
    b: &[FieldElement],
    ext: &ArtinSchreierExtension,
) -> Result<bool, Error> {
    if b.is_empty() {
        return Err(Error::InvalidInput("empty tuple".into()));
    }
    for v in b {
        if **v.field() != **ext.base() {
            return Err(Error::FieldMismatch);
        }
        if v.is_zero() {
            return Err(Error::InvalidInput("tuple entries must be nonzero".into()));
        }
    }
    let a_set = wp_image(ext.base())?;
    let u_set = wp_outside_image(ext)?;
    let scale = |c: &FieldElement, set: &BTreeSet<FieldElement>| -> BTreeSet<FieldElement> {
        set.iter().map(|v| c * v).collect()
    };
    for (i, bi) in b.iter().enumerate() {
        let mut candidates = scale(bi, &u_set);
        for (j, bj) in b.iter().enumerate() {
            if i == j {
                continue;
            }
            let scaled_a = scale(bj, &a_set);
            candidates = candidates.intersection(&scaled_a).cloned().collect();
            if candidates.is_empty() {
                return Ok(false);
            }
        }
        if candidates.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The explicit generator: from an independent tuple (a_1,...,a_n) build
/// W_i, T and the twist scales b_i with `f_T = b_i^p wp(f_{W_i}(x)/b_i)`,
/// then materialize all n slots of witnesses at `beta_i = a_i * alpha`.
/// Every certificate invariant is asserted before returning, and the
/// resulting tuple is confirmed by the brute-force checker.
pub fn generate_contrary(
    ext: &ArtinSchreierExtension,
    a: &[FieldElement],
) -> Result<ContraryCertificate, Error> {
    let base = ext.base();
    let n = a.len();
    if n < 2 {
        return Err(Error::InvalidInput("need a tuple of length >= 2".into()));
    }
    if n > base.degree() {
        return Err(Error::InvalidInput(format!(
            "tuple length {n} exceeds the F_p-dimension {} of the base field",
            base.degree()
        )));
    }
    for v in a {
        if **v.field() != **base {
            return Err(Error::FieldMismatch);
        }
    }
    if !independent(base, a) {
        return Err(Error::DependentTuple);
    }

    let t = FpSubspace::from_generators_in(base, a)?;
    let f_t = AdditivePolynomial::from_subgroup(&t)?;
    let e = ext.embedding();

    let mut b_base = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut w_polys = Vec::with_capacity(n);
    for i in 0..n {
        let w_i = w_subspace(base, a, i)?;
        let b_i = by_one(&w_i, &t)?;
        b.push(b_i.pow(base.characteristic() as u64));
        b_base.push(b_i);
        w_polys.push(AdditivePolynomial::from_subgroup(&w_i)?);
    }

    let mut slots = Vec::with_capacity(n);
    for i in 0..n {
        let beta = &e.apply(&a[i]) * ext.alpha();
        let y_in_l = f_t.eval_via(e, &beta)?;
        let y = e.preimage(&y_in_l)?.ok_or_else(|| {
            Error::falsified(
                "existence of contrary witnesses from an independent tuple",
                format!("f_T(beta_{i}) is not in the base field"),
            )
        })?;
        let mut x = Vec::with_capacity(n);
        for (j, w_poly) in w_polys.iter().enumerate() {
            let val = w_poly.eval_via(e, &beta)?;
            x.push(val.checked_div(&e.apply(&b_base[j]))?);
        }
        slots.push(CertificateSlot { beta, y, x });
    }

    let cert = ContraryCertificate::from_parts(ext.clone(), a.to_vec(), b_base, b, slots)?;
    for (name, ok) in certificate_checks(&cert)? {
        if !ok {
            return Err(Error::falsified(
                "existence of contrary witnesses from an independent tuple",
                format!("generated certificate fails its own invariant {name:?}"),
            ));
        }
    }
    if !is_contrary_bruteforce(cert.b(), ext)? {
        return Err(Error::falsified(
            "existence of contrary witnesses from an independent tuple",
            "brute-force check rejects the generated tuple",
        ));
    }
    Ok(cert)
}

/// The named checks behind [`verify_certificate`], for reporting. All are
/// exact replays; none enumerates L.
pub fn certificate_checks(cert: &ContraryCertificate) -> Result<Vec<(String, bool)>, Error> {
    let ext = &cert.ext;
    let base = ext.base();
    let e = ext.embedding();
    let p = base.characteristic() as u64;
    let n = cert.n();
    let mut out = Vec::new();

    out.push(("a_tuple_independent".into(), independent(base, &cert.a)));
    out.push((
        "extension_generator_valid".into(),
        ext.a().trace_to_prime() != 0
            && wp(ext.alpha()) == e.apply(ext.a())
            && !e.contains(ext.alpha())?,
    ));
    for j in 0..n {
        out.push((
            format!("b[{j}]_is_pth_power_of_base"),
            !cert.b_base[j].is_zero() && cert.b[j] == cert.b_base[j].pow(p),
        ));
    }

    // The twist identity f_T = b_j^p wp(x / b_j) . f_{W_j} as polynomials.
    let t = FpSubspace::from_generators_in(base, &cert.a)?;
    let f_t = AdditivePolynomial::from_subgroup(&t)?;
    let mut w_polys = Vec::with_capacity(n);
    for j in 0..n {
        let w_j = w_subspace(base, &cert.a, j)?;
        let f_w = AdditivePolynomial::from_subgroup(&w_j)?;
        let ok = if cert.b_base[j].is_zero() {
            false
        } else {
            let twist = AdditivePolynomial::twist_of_line(&cert.b_base[j])?;
            AdditivePolynomial::compose(&twist, &f_w)? == f_t
        };
        out.push((format!("twist_identity_slot_{j}"), ok));
        w_polys.push(f_w);
    }

    for (i, slot) in cert.slots.iter().enumerate() {
        let beta_expected = &e.apply(&cert.a[i]) * ext.alpha();
        out.push((
            format!("beta[{i}]_is_a_times_alpha"),
            slot.beta == beta_expected,
        ));

        out.push((
            format!("y[{i}]_is_f_T_at_beta"),
            e.apply(&slot.y) == f_t.eval_via(e, &slot.beta)?,
        ));

        for j in 0..n {
            let pinned = if cert.b_base[j].is_zero() {
                false
            } else {
                let val = w_polys[j].eval_via(e, &slot.beta)?;
                slot.x[j] == val.checked_div(&e.apply(&cert.b_base[j]))?
            };
            out.push((format!("x[{i}][{j}]_is_f_W_over_b"), pinned));

            out.push((
                format!("y[{i}]_eq_b[{j}]_wp_x[{i}][{j}]"),
                e.apply(&slot.y) == &e.apply(&cert.b[j]) * &wp(&slot.x[j]),
            ));

            out.push((
                format!("x[{i}][{j}]_membership_pattern"),
                e.contains(&slot.x[j])? == (i != j),
            ));
        }
    }
    Ok(out)
}

/// Replay a certificate with exact arithmetic; true iff every equation and
/// membership holds. Cost is O(n^2) field operations, independent of |L|.
pub fn verify_certificate(cert: &ContraryCertificate) -> Result<bool, Error> {
    Ok(certificate_checks(cert)?.iter().all(|(_, ok)| *ok))
}

/// Brute-force closure report: every permutation and every nonempty
/// subtuple of a contrary tuple must itself be contrary.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ClosureReport {
    /// Keyed by the 1-based index order of the permutation.
    pub permutations: BTreeMap<String, bool>,
    /// Keyed by the 1-based indices kept.
    pub subtuples: BTreeMap<String, bool>,
    pub all_pass: bool,
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    fn heap(k: usize, idx: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(idx.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, idx, out);
            if k.is_multiple_of(2) {
                idx.swap(i, k - 1);
            } else {
                idx.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut idx, &mut out);
    out.sort();
    out
}

fn index_key(indices: &[usize]) -> String {
    let parts: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Check permutation and subtuple closure of a brute-force-confirmed
/// contrary tuple.
pub fn closure_check(
    b: &[FieldElement],
    ext: &ArtinSchreierExtension,
) -> Result<ClosureReport, Error> {
    let n = b.len();
    if n > MAX_CLOSURE_N {
        return Err(Error::BoundExceeded {
            what: "closure tuple length",
            limit: MAX_CLOSURE_N as u64,
            requested: n as u64,
        });
    }
    if !is_contrary_bruteforce(b, ext)? {
        return Err(Error::InvalidInput(
            "closure_check requires a contrary tuple".into(),
        ));
    }
    let mut permutations = BTreeMap::new();
    for perm in permutations_of(n) {
        let tuple: Vec<FieldElement> = perm.iter().map(|&i| b[i].clone()).collect();
        permutations.insert(index_key(&perm), is_contrary_bruteforce(&tuple, ext)?);
    }
    let mut subtuples = BTreeMap::new();
    for mask in 1u32..(1 << n) {
        let kept: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let tuple: Vec<FieldElement> = kept.iter().map(|&i| b[i].clone()).collect();
        subtuples.insert(index_key(&kept), is_contrary_bruteforce(&tuple, ext)?);
    }
    let all_pass = permutations.values().all(|&v| v) && subtuples.values().all(|&v| v);
    Ok(ClosureReport {
        permutations,
        subtuples,
        all_pass,
    })
}

/// Seeded sampling of F_p-independent n-tuples from a field; repetition
/// across draws is allowed (small fields do not have many independent
/// tuples), rejection keeps each draw independent.
pub fn sample_independent_tuples(
    field: &Field,
    n: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<FieldElement>>, Error> {
    if n == 0 || n > field.degree() {
        return Err(Error::InvalidInput(format!(
            "no independent {n}-tuples in a field of F_p-dimension {}",
            field.degree()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.characteristic();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let tuple: Vec<FieldElement> = (0..n)
            .map(|_| {
                let digits: Vec<u8> = (0..field.degree()).map(|_| rng.gen_range(0..p)).collect();
                field.element(digits).unwrap()
            })
            .collect();
        if independent(field, &tuple) {
            out.push(tuple);
        }
    }
    Ok(out)
}
