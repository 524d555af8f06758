//! F_p-subspaces of a field's additive group and linearized polynomials.
//!
//! The central object is the subgroup polynomial `f_G(x) = prod_{a in G}
//! (x - a)` of a finite additive subgroup `G`. It is built literally as
//! that product and then converted to linearized form `sum c_i x^{p^i}`,
//! with a hard failure if any non-p-power monomial survives — the
//! additivity of `f_G` is checked at construction time, not assumed.
//!
//! `decompose` realizes the factorization `f_H = f_C . f_G` for a nested
//! pair `G <= H`, `by_one` specializes it to index p (where the outer
//! factor is a twist `b^p wp(x/b)` of the Artin-Schreier map), and
//! `descend` replays the subfield-descent argument that an element whose
//! subgroup-polynomial values all land in the base field is itself in the
//! base field.

use std::fmt;

use crate::error::Error;
use crate::gf::{Embedding, Field, FieldElement, FieldOps};
use crate::linalg::Echelon;

/// Enumeration guard for subgroup-polynomial expansion.
pub const MAX_SUBGROUP_DIM: usize = 12;

/// Enumeration guard for kernel computation.
pub const MAX_KERNEL_FIELD: u64 = 1 << 16;

// ---------------------------------------------------------------------------

/// An F_p-linear subspace of the additive group of a finite field, stored
/// as a reduced-echelon basis (unique, so equality is basis equality).
#[derive(Clone, PartialEq, Eq)]
pub struct FpSubspace {
    ambient: Field,
    basis: Vec<FieldElement>,
}

impl fmt::Debug for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FpSubspace(dim {} of {})",
            self.dim(),
            self.ambient.spec_string()
        )
    }
}

impl FpSubspace {
    pub fn zero(ambient: &Field) -> FpSubspace {
        FpSubspace {
            ambient: ambient.clone(),
            basis: Vec::new(),
        }
    }

    /// The whole field as an F_p-space.
    pub fn full(ambient: &Field) -> FpSubspace {
        let gens: Vec<FieldElement> = (0..ambient.degree())
            .map(|i| {
                let mut c = vec![0u8; ambient.degree()];
                c[i] = 1;
                ambient.element(c).unwrap()
            })
            .collect();
        FpSubspace::from_generators_in(ambient, &gens).unwrap()
    }

    /// Echelonized span of the given generators (dependent and zero
    /// entries are fine). Mixed ambient fields are rejected.
    pub fn from_generators(gens: &[FieldElement]) -> Result<FpSubspace, Error> {
        let first = gens
            .first()
            .ok_or_else(|| Error::InvalidInput("empty generator list".into()))?;
        FpSubspace::from_generators_in(first.field(), gens)
    }

    pub fn from_generators_in(ambient: &Field, gens: &[FieldElement]) -> Result<FpSubspace, Error> {
        let mut ech = Echelon::new(ambient.characteristic(), ambient.degree());
        for g in gens {
            if **g.field() != **ambient {
                return Err(Error::FieldMismatch);
            }
            ech.insert(g.coeffs());
        }
        let basis = ech
            .rows()
            .iter()
            .map(|r| ambient.element(r.clone()).unwrap())
            .collect();
        Ok(FpSubspace {
            ambient: ambient.clone(),
            basis,
        })
    }

    pub fn ambient(&self) -> &Field {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order(&self) -> u64 {
        (self.ambient.characteristic() as u64).pow(self.dim() as u32)
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    fn echelon(&self) -> Echelon {
        let mut ech = Echelon::new(self.ambient.characteristic(), self.ambient.degree());
        for b in &self.basis {
            ech.insert(b.coeffs());
        }
        ech
    }

    pub fn contains(&self, x: &FieldElement) -> Result<bool, Error> {
        if **x.field() != *self.ambient {
            return Err(Error::FieldMismatch);
        }
        Ok(self.echelon().contains(x.coeffs()))
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> Result<bool, Error> {
        if *self.ambient != *other.ambient {
            return Err(Error::FieldMismatch);
        }
        let ech = other.echelon();
        Ok(self.basis.iter().all(|b| ech.contains(b.coeffs())))
    }

    /// All `p^dim` elements, sorted.
    pub fn elements(&self) -> Vec<FieldElement> {
        let p = self.ambient.characteristic() as u64;
        let mut out = Vec::with_capacity(self.order() as usize);
        for n in 0..self.order() {
            let mut acc = self.ambient.zero();
            let mut m = n;
            for b in self.basis.iter().rev() {
                let digit = (m % p) as u8;
                m /= p;
                for _ in 0..digit {
                    acc = &acc + b;
                }
            }
            out.push(acc);
        }
        out.sort();
        out
    }

    pub fn intersect(&self, other: &FpSubspace) -> Result<FpSubspace, Error> {
        if *self.ambient != *other.ambient {
            return Err(Error::FieldMismatch);
        }
        let (small, big) = if self.dim() <= other.dim() {
            (self, other)
        } else {
            (other, self)
        };
        let ech = big.echelon();
        let members: Vec<FieldElement> = small
            .elements()
            .into_iter()
            .filter(|x| ech.contains(x.coeffs()))
            .collect();
        FpSubspace::from_generators_in(&self.ambient, &members)
    }

    /// Deterministic complement of `self` in `larger`: echelon-extend this
    /// basis by `larger`'s basis vectors in stored order; the fully reduced
    /// forms of the vectors that extend the span generate the complement.
    pub fn complement_in(&self, larger: &FpSubspace) -> Result<FpSubspace, Error> {
        if !self.is_subspace_of(larger)? {
            return Err(Error::NotSubspaceChain);
        }
        let mut ech = self.echelon();
        let mut added = Vec::new();
        for h in &larger.basis {
            if let Some(reduced) = ech.insert(h.coeffs()) {
                added.push(self.ambient.element(reduced).unwrap());
            }
        }
        FpSubspace::from_generators_in(&self.ambient, &added)
    }

    /// Every subspace of the ambient field, by enumerating reduced-echelon
    /// bases. Guarded to small degrees.
    pub fn enumerate_all(ambient: &Field) -> Result<Vec<FpSubspace>, Error> {
        let k = ambient.degree();
        if k > 6 {
            return Err(Error::BoundExceeded {
                what: "subspace enumeration degree",
                limit: 6,
                requested: k as u64,
            });
        }
        let p = ambient.characteristic() as u64;
        let mut out = vec![FpSubspace::zero(ambient)];
        for d in 1..=k {
            for pivots in pivot_combinations(k, d) {
                // Free positions: row i, column j with j > pivots[i] and j
                // not itself a pivot column.
                let mut free = Vec::new();
                for (i, &pi) in pivots.iter().enumerate() {
                    for j in (pi + 1)..k {
                        if !pivots.contains(&j) {
                            free.push((i, j));
                        }
                    }
                }
                for n in 0..p.pow(free.len() as u32) {
                    let mut rows = vec![vec![0u8; k]; d];
                    for (i, &pi) in pivots.iter().enumerate() {
                        rows[i][pi] = 1;
                    }
                    let mut m = n;
                    for &(i, j) in &free {
                        rows[i][j] = (m % p) as u8;
                        m /= p;
                    }
                    let basis = rows
                        .into_iter()
                        .map(|r| ambient.element(r).unwrap())
                        .collect();
                    out.push(FpSubspace {
                        ambient: ambient.clone(),
                        basis,
                    });
                }
            }
        }
        Ok(out)
    }
}

fn pivot_combinations(k: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next d-combination of {0..k-1}.
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + (d - i) < k {
                cur[i] += 1;
                for t in (i + 1)..d {
                    cur[t] = cur[t - 1] + 1;
                }
                break;
            }
        }
    }
}

// ---------------------------------------------------------------------------

/// A linearized polynomial `sum_i coeffs[i] * x^{p^i}` over a fixed
/// coefficient field. Trailing zero coefficients are trimmed, so the
/// representation is canonical; the empty vector is the zero polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditivePolynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for AdditivePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*x^{}^{i}", self.field.characteristic()))
            .collect();
        write!(f, "AddPoly({})", terms.join(" + "))
    }
}

impl AdditivePolynomial {
    pub fn new(field: &Field, mut coeffs: Vec<FieldElement>) -> Result<Self, Error> {
        if coeffs.iter().any(|c| **c.field() != **field) {
            return Err(Error::FieldMismatch);
        }
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(AdditivePolynomial {
            field: field.clone(),
            coeffs,
        })
    }

    pub fn zero(field: &Field) -> Self {
        AdditivePolynomial {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    /// The identity polynomial x.
    pub fn identity(field: &Field) -> Self {
        AdditivePolynomial {
            field: field.clone(),
            coeffs: vec![field.one()],
        }
    }

    /// The Artin-Schreier polynomial `x^p - x`.
    pub fn wp(field: &Field) -> Self {
        AdditivePolynomial {
            field: field.clone(),
            coeffs: vec![field.one().neg(), field.one()],
        }
    }

    /// The twist `b^p * wp(x/b) = x^p - b^{p-1} x` for nonzero `b`; this is
    /// the subgroup polynomial of the line `b * F_p`.
    pub fn twist_of_line(b: &FieldElement) -> Result<Self, Error> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = b.field().clone();
        let p = field.characteristic();
        let c0 = b.pow(p as u64 - 1).neg();
        let one = field.one();
        Ok(AdditivePolynomial {
            field,
            coeffs: vec![c0, one],
        })
    }

    /// The subgroup polynomial `f_G(x) = prod_{a in G} (x - a)`, expanded
    /// as a dense product over the enumerated subgroup and converted to
    /// linearized form. Fails loudly if a non-p-power coefficient is
    /// nonzero, which would contradict additivity of f_G.
    pub fn from_subgroup(g: &FpSubspace) -> Result<Self, Error> {
        if g.dim() > MAX_SUBGROUP_DIM {
            return Err(Error::BoundExceeded {
                what: "subgroup dimension",
                limit: MAX_SUBGROUP_DIM as u64,
                requested: g.dim() as u64,
            });
        }
        let field = g.ambient().clone();
        // Dense product, sequential in subgroup enumeration order.
        let mut dense: Vec<FieldElement> = vec![field.one()];
        for a in g.elements() {
            let mut next = vec![field.zero(); dense.len() + 1];
            let neg_a = a.neg();
            for (i, c) in dense.iter().enumerate() {
                next[i + 1] = &next[i + 1] + c;
                if !neg_a.is_zero() {
                    next[i] = &next[i] + &(c * &neg_a);
                }
            }
            dense = next;
        }
        // Collect coefficients at p-power exponents; everything else must
        // vanish.
        let p = field.characteristic() as usize;
        let mut powers = vec![1usize];
        while *powers.last().unwrap() < dense.len() - 1 {
            powers.push(powers.last().unwrap() * p);
        }
        let mut coeffs = vec![field.zero(); powers.len()];
        for (e, c) in dense.iter().enumerate() {
            if e == 0 {
                if !c.is_zero() {
                    return Err(Error::Internal(
                        "subgroup polynomial has a constant term".into(),
                    ));
                }
                continue;
            }
            match powers.iter().position(|&q| q == e) {
                Some(i) => coeffs[i] = c.clone(),
                None => {
                    if !c.is_zero() {
                        return Err(Error::falsified(
                            "additivity of the subgroup polynomial",
                            format!("nonzero coefficient at exponent {e}"),
                        ));
                    }
                }
            }
        }
        let f = AdditivePolynomial::new(&field, coeffs)?;
        debug_assert!(f.is_monic());
        Ok(f)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in the Frobenius variable: `f = sum_{i<=d} c_i x^{p^i}`.
    pub fn p_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == self.field.one())
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, Error> {
        if **x.field() != *self.field {
            return Err(Error::FieldMismatch);
        }
        let mut acc = x.field().zero();
        let mut xi = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = xi.frobenius(1);
            }
            if !c.is_zero() {
                acc = &acc + &(c * &xi);
            }
        }
        Ok(acc)
    }

    /// Evaluate at a point of an extension field, mapping the coefficients
    /// through the given embedding.
    pub fn eval_via(&self, e: &Embedding, x: &FieldElement) -> Result<FieldElement, Error> {
        self.embed(e)?.eval(x)
    }

    /// The same polynomial with coefficients pushed through an embedding.
    pub fn embed(&self, e: &Embedding) -> Result<AdditivePolynomial, Error> {
        if **e.source() != *self.field {
            return Err(Error::FieldMismatch);
        }
        let coeffs = self.coeffs.iter().map(|c| e.apply(c)).collect();
        AdditivePolynomial::new(e.target(), coeffs)
    }

    /// Linearized composition `outer(inner(x))`: the coefficient of
    /// `x^{p^{i+j}}` accumulates `c_out[i] * c_in[j]^{p^i}`.
    pub fn compose(outer: &AdditivePolynomial, inner: &AdditivePolynomial) -> Result<Self, Error> {
        if *outer.field != *inner.field {
            return Err(Error::FieldMismatch);
        }
        let field = &outer.field;
        if outer.is_zero() || inner.is_zero() {
            return Ok(AdditivePolynomial::zero(field));
        }
        let mut coeffs = vec![field.zero(); outer.coeffs.len() + inner.coeffs.len() - 1];
        for (i, co) in outer.coeffs.iter().enumerate() {
            if co.is_zero() {
                continue;
            }
            for (j, ci) in inner.coeffs.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                let term = co * &ci.frobenius(i as u64);
                coeffs[i + j] = &coeffs[i + j] + &term;
            }
        }
        AdditivePolynomial::new(field, coeffs)
    }

    /// Kernel inside the polynomial's own field, by enumeration.
    pub fn kernel(&self) -> Result<FpSubspace, Error> {
        self.kernel_in(&Embedding::identity(&self.field))
    }

    /// Kernel inside the target of `e`, by enumeration over that field.
    pub fn kernel_in(&self, e: &Embedding) -> Result<FpSubspace, Error> {
        if **e.source() != *self.field {
            return Err(Error::FieldMismatch);
        }
        let target = e.target().clone();
        if target.order() > MAX_KERNEL_FIELD {
            return Err(Error::BoundExceeded {
                what: "kernel enumeration field",
                limit: MAX_KERNEL_FIELD,
                requested: target.order(),
            });
        }
        let f = self.embed(e)?;
        let roots: Vec<FieldElement> = target
            .elements()
            .filter(|x| f.eval(x).unwrap().is_zero())
            .collect();
        let kernel = FpSubspace::from_generators_in(&target, &roots)?;
        if kernel.order() != roots.len() as u64 {
            return Err(Error::Internal(
                "kernel root set is not an F_p-subspace".into(),
            ));
        }
        Ok(kernel)
    }
}

// ---------------------------------------------------------------------------

/// Result of factoring `f_H = f_C . f_G` across a nested pair `G <= H`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// The deterministic complement `C_0` of G in H.
    pub complement: FpSubspace,
    /// `C = f_G(C_0)`, of order |H : G|.
    pub c: FpSubspace,
    /// The subgroup polynomial of C; satisfies `f_C . f_G = f_H`.
    pub f_c: AdditivePolynomial,
}

/// Factor `f_H` through `f_G`: find `C` with `|C| = |H:G|` and
/// `f_H = f_C(f_G(x))`, the composition identity checked coefficient-wise
/// before returning.
pub fn decompose(g: &FpSubspace, h: &FpSubspace) -> Result<Decomposition, Error> {
    if !g.is_subspace_of(h)? {
        return Err(Error::NotSubspaceChain);
    }
    let complement = g.complement_in(h)?;
    let f_g = AdditivePolynomial::from_subgroup(g)?;
    let images: Vec<FieldElement> = complement
        .basis()
        .iter()
        .map(|v| f_g.eval(v))
        .collect::<Result<_, _>>()?;
    let c = FpSubspace::from_generators_in(g.ambient(), &images)?;
    if c.dim() != complement.dim() {
        return Err(Error::falsified(
            "decomposition of nested subgroup polynomials",
            "f_G is not injective on the complement",
        ));
    }
    let f_c = AdditivePolynomial::from_subgroup(&c)?;
    let f_h = AdditivePolynomial::from_subgroup(h)?;
    if AdditivePolynomial::compose(&f_c, &f_g)? != f_h {
        return Err(Error::falsified(
            "decomposition of nested subgroup polynomials",
            format!("f_C . f_G != f_H for dims {} <= {}", g.dim(), h.dim()),
        ));
    }
    Ok(Decomposition { complement, c, f_c })
}

/// For an index-p pair `G < H`, the unique echelon-basis vector `b` of the
/// decomposition's `C`, which satisfies `f_H = (b^p wp(x/b)) . f_G`.
pub fn by_one(g: &FpSubspace, h: &FpSubspace) -> Result<FieldElement, Error> {
    if h.dim() != g.dim() + 1 {
        return Err(Error::IndexNotP);
    }
    let d = decompose(g, h)?;
    let b = d.c.basis()[0].clone();
    let twist = AdditivePolynomial::twist_of_line(&b)?;
    let f_g = AdditivePolynomial::from_subgroup(g)?;
    let f_h = AdditivePolynomial::from_subgroup(h)?;
    if AdditivePolynomial::compose(&twist, &f_g)? != f_h {
        return Err(Error::falsified(
            "index-p twist factorization",
            "twist composition does not reproduce f_H",
        ));
    }
    Ok(b)
}

/// Why the hypotheses of the descent lemma were not met. These are legal
/// inputs, distinguished from a falsification of the lemma itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisFailure {
    NonzeroIntersection,
    ValueOutsideBase { subgroup_index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescendOutcome {
    /// Hypotheses held and the element is in the base field, as the lemma
    /// demands.
    InBase,
    HypothesesNotMet(HypothesisFailure),
}

/// Subfield descent: if subgroups `G_i <= (K,+)` intersect trivially and
/// every `f_{G_i}(a)` lies in K, then `a` lies in K. A run where the
/// hypotheses hold but the conclusion fails is a hard error.
pub fn descend(
    subgroups: &[FpSubspace],
    a: &FieldElement,
    e: &Embedding,
) -> Result<DescendOutcome, Error> {
    if subgroups.is_empty() {
        return Err(Error::InvalidInput("need at least one subgroup".into()));
    }
    if **a.field() != **e.target() {
        return Err(Error::FieldMismatch);
    }
    let mut meet = subgroups[0].clone();
    for g in subgroups {
        if **g.ambient() != **e.source() {
            return Err(Error::FieldMismatch);
        }
        meet = meet.intersect(g)?;
    }
    if meet.dim() != 0 {
        return Ok(DescendOutcome::HypothesesNotMet(
            HypothesisFailure::NonzeroIntersection,
        ));
    }
    for (i, g) in subgroups.iter().enumerate() {
        let value = AdditivePolynomial::from_subgroup(g)?.eval_via(e, a)?;
        if !e.contains(&value)? {
            return Ok(DescendOutcome::HypothesesNotMet(
                HypothesisFailure::ValueOutsideBase { subgroup_index: i },
            ));
        }
    }
    if e.contains(a)? {
        Ok(DescendOutcome::InBase)
    } else {
        Err(Error::falsified(
            "subfield descent across a trivially-intersecting family",
            format!("{a} passed all membership hypotheses but is not in the base field"),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{build_embedding, FiniteField};

    fn gf(p: u64, k: u64) -> Field {
        FiniteField::new(p, k).unwrap()
    }

    fn el(f: &Field, digits: &[u8]) -> FieldElement {
        f.element(digits.to_vec()).unwrap()
    }

    #[test]
    fn span_examples() {
        let f4 = gf(2, 2);
        let one = f4.one();
        let w = el(&f4, &[0, 1]);

        let s = FpSubspace::from_generators(std::slice::from_ref(&one)).unwrap();
        assert_eq!(s.dim(), 1);
        assert_eq!(s.elements(), vec![f4.zero(), one.clone()]);

        let s = FpSubspace::from_generators(&[w.clone(), &w + &one, one.clone()]).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.elements().len(), 4);

        let s = FpSubspace::from_generators(&[f4.zero()]).unwrap();
        assert_eq!(s.dim(), 0);

        let g8 = gf(2, 3);
        assert!(matches!(
            FpSubspace::from_generators(&[one, g8.one()]),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn complement_examples() {
        let f4 = gf(2, 2);
        let w = el(&f4, &[0, 1]);
        let h = FpSubspace::full(&f4);
        let g = FpSubspace::from_generators(&[f4.one()]).unwrap();

        let c0 = g.complement_in(&h).unwrap();
        assert_eq!(c0.basis(), std::slice::from_ref(&w));

        assert_eq!(g.complement_in(&g).unwrap().dim(), 0);
        assert_eq!(FpSubspace::zero(&f4).complement_in(&h).unwrap(), h);

        let line_w = FpSubspace::from_generators(&[w]).unwrap();
        assert!(matches!(
            h.complement_in(&line_w),
            Err(Error::NotSubspaceChain)
        ));
    }

    #[test]
    fn subgroup_polynomial_examples() {
        let f4 = gf(2, 2);
        // G = F_p gives the Artin-Schreier polynomial.
        let fp = FpSubspace::from_generators(&[f4.one()]).unwrap();
        assert_eq!(
            AdditivePolynomial::from_subgroup(&fp).unwrap(),
            AdditivePolynomial::wp(&f4)
        );
        // G = 0 gives x.
        assert_eq!(
            AdditivePolynomial::from_subgroup(&FpSubspace::zero(&f4)).unwrap(),
            AdditivePolynomial::identity(&f4)
        );
        // G = span{w} in GF(4): x^2 + w x.
        let w = el(&f4, &[0, 1]);
        let line = FpSubspace::from_generators(std::slice::from_ref(&w)).unwrap();
        let f = AdditivePolynomial::from_subgroup(&line).unwrap();
        assert_eq!(f.coeffs(), &[w.clone(), f4.one()]);
    }

    #[test]
    fn twist_examples() {
        let f4 = gf(2, 2);
        assert_eq!(
            AdditivePolynomial::twist_of_line(&f4.one()).unwrap(),
            AdditivePolynomial::wp(&f4)
        );
        let w = el(&f4, &[0, 1]);
        let line = FpSubspace::from_generators(std::slice::from_ref(&w)).unwrap();
        assert_eq!(
            AdditivePolynomial::twist_of_line(&w).unwrap(),
            AdditivePolynomial::from_subgroup(&line).unwrap()
        );
        // b = 2 in GF(3): x^3 - 2^2 x = x^3 - x.
        let f3 = gf(3, 1);
        let two = f3.from_prime(2);
        let t = AdditivePolynomial::twist_of_line(&two).unwrap();
        assert_eq!(t, AdditivePolynomial::wp(&f3));
        assert!(matches!(
            AdditivePolynomial::twist_of_line(&f3.zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn eval_examples() {
        let f4 = gf(2, 2);
        let w = el(&f4, &[0, 1]);
        let wp = AdditivePolynomial::wp(&f4);
        assert_eq!(wp.eval(&w).unwrap(), f4.one());
        assert!(wp.eval(&f4.zero()).unwrap().is_zero());

        // f = x^4 + x over GF(4) evaluated at alpha in GF(16) with
        // wp(alpha) = w: alpha^4 + alpha = 1.
        let f16 = gf(2, 4);
        let e = build_embedding(&f4, &f16).unwrap();
        let target = e.apply(&w);
        let alpha = f16
            .elements()
            .find(|y| (&y.frobenius(1) - y) == target)
            .unwrap();
        let f_t = AdditivePolynomial::new(&f4, vec![f4.one(), f4.zero(), f4.one()]).unwrap();
        assert_eq!(f_t.eval_via(&e, &alpha).unwrap(), f16.one());
    }

    #[test]
    fn compose_examples() {
        let f4 = gf(2, 2);
        let wp = AdditivePolynomial::wp(&f4);
        let sq = AdditivePolynomial::compose(&wp, &wp).unwrap();
        // (x^2+x)^2 + (x^2+x) = x^4 + x in characteristic 2.
        assert_eq!(
            sq,
            AdditivePolynomial::new(&f4, vec![f4.one(), f4.zero(), f4.one()]).unwrap()
        );
        let id = AdditivePolynomial::identity(&f4);
        assert_eq!(AdditivePolynomial::compose(&wp, &id).unwrap(), wp);
        assert_eq!(AdditivePolynomial::compose(&id, &wp).unwrap(), wp);

        let f9 = gf(3, 2);
        let wp3 = AdditivePolynomial::wp(&f9);
        let sq3 = AdditivePolynomial::compose(&wp3, &wp3).unwrap();
        // x^9 - 2x^3 + x = x^9 + x^3 + x mod 3.
        assert_eq!(
            sq3,
            AdditivePolynomial::new(&f9, vec![f9.one(), f9.one(), f9.one()]).unwrap()
        );
    }

    #[test]
    fn kernel_examples() {
        let f4 = gf(2, 2);
        let wp = AdditivePolynomial::wp(&f4);
        let ker = wp.kernel().unwrap();
        assert_eq!(ker.elements(), vec![f4.zero(), f4.one()]);

        let id = AdditivePolynomial::identity(&f4);
        assert_eq!(id.kernel().unwrap().dim(), 0);

        let w = el(&f4, &[0, 1]);
        let line = FpSubspace::from_generators(std::slice::from_ref(&w)).unwrap();
        let f = AdditivePolynomial::from_subgroup(&line).unwrap();
        assert_eq!(f.kernel().unwrap(), line);
    }

    #[test]
    fn decompose_examples() {
        let f4 = gf(2, 2);
        let h = FpSubspace::full(&f4);
        let g = FpSubspace::from_generators(&[f4.one()]).unwrap();
        let d = decompose(&g, &h).unwrap();
        assert_eq!(d.c.elements(), vec![f4.zero(), f4.one()]);
        assert_eq!(d.f_c, AdditivePolynomial::wp(&f4));

        let d = decompose(&h, &h).unwrap();
        assert_eq!(d.c.dim(), 0);
        assert_eq!(d.f_c, AdditivePolynomial::identity(&f4));

        let d = decompose(&FpSubspace::zero(&f4), &h).unwrap();
        assert_eq!(d.c, h);
    }

    #[test]
    fn by_one_examples() {
        let f4 = gf(2, 2);
        let w = el(&f4, &[0, 1]);
        let h = FpSubspace::full(&f4);

        let g = FpSubspace::from_generators(&[f4.one()]).unwrap();
        assert_eq!(by_one(&g, &h).unwrap(), f4.one());

        let g = FpSubspace::from_generators(std::slice::from_ref(&w)).unwrap();
        assert_eq!(by_one(&g, &h).unwrap(), el(&f4, &[1, 1])); // w^2

        let f2 = gf(2, 1);
        let b = by_one(&FpSubspace::zero(&f2), &FpSubspace::full(&f2)).unwrap();
        assert_eq!(b, f2.one());

        assert!(matches!(
            by_one(&FpSubspace::zero(&f4), &h),
            Err(Error::IndexNotP)
        ));
    }

    #[test]
    fn descend_examples() {
        let f4 = gf(2, 2);
        let f16 = gf(2, 4);
        let e = build_embedding(&f4, &f16).unwrap();
        let w = el(&f4, &[0, 1]);
        let g1 = FpSubspace::from_generators(&[f4.one()]).unwrap();
        let g2 = FpSubspace::from_generators(std::slice::from_ref(&w)).unwrap();

        // alpha with wp(alpha) = w: f_{g1}(alpha) in K but f_{g2}(alpha)
        // is not, so the hypotheses fail.
        let target = e.apply(&w);
        let alpha = f16
            .elements()
            .find(|y| (&y.frobenius(1) - y) == target)
            .unwrap();
        assert_eq!(
            descend(&[g1.clone(), g2.clone()], &alpha, &e).unwrap(),
            DescendOutcome::HypothesesNotMet(HypothesisFailure::ValueOutsideBase {
                subgroup_index: 1
            })
        );

        // An element of K passes any valid family.
        assert_eq!(
            descend(&[g1.clone(), g2.clone()], &e.apply(&w), &e).unwrap(),
            DescendOutcome::InBase
        );

        // The zero subgroup alone forces a in K whenever f_0(a) = a in K.
        let zero = FpSubspace::zero(&f4);
        assert_eq!(
            descend(std::slice::from_ref(&zero), &e.apply(&f4.one()), &e).unwrap(),
            DescendOutcome::InBase
        );
        assert_eq!(
            descend(&[zero], &alpha, &e).unwrap(),
            DescendOutcome::HypothesesNotMet(HypothesisFailure::ValueOutsideBase {
                subgroup_index: 0
            })
        );

        // Nonzero intersection is reported, not asserted against.
        assert_eq!(
            descend(&[g1.clone(), g1.clone()], &alpha, &e).unwrap(),
            DescendOutcome::HypothesesNotMet(HypothesisFailure::NonzeroIntersection)
        );
    }

    #[test]
    fn enumerate_all_matches_galois_numbers() {
        // Independent count: sums of Gaussian binomials.
        fn gaussian_total(p: u64, k: u32) -> u64 {
            let mut total = 0u64;
            for d in 0..=k {
                let mut num = 1u64;
                let mut den = 1u64;
                for i in 0..d {
                    num *= p.pow(k - i) - 1;
                    den *= p.pow(d - i) - 1;
                }
                total += num / den;
            }
            total
        }
        let f16 = gf(2, 4);
        let all = FpSubspace::enumerate_all(&f16).unwrap();
        assert_eq!(all.len() as u64, gaussian_total(2, 4)); // 67
        let f81 = gf(3, 4);
        let all3 = FpSubspace::enumerate_all(&f81).unwrap();
        assert_eq!(all3.len() as u64, gaussian_total(3, 4)); // 212
                                                             // All distinct (canonical bases).
        let mut keys: Vec<Vec<Vec<u8>>> = all
            .iter()
            .map(|s| s.basis().iter().map(|b| b.coeffs().to_vec()).collect())
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), 67);
    }
}
