//! Artin-Schreier extensions of finite fields.
//!
//! An extension is a pair K = GF(p^k) inside L = GF(p^{kp}) together with
//! a generator `alpha` of L over K satisfying `alpha^p - alpha = a` for a
//! base element `a` of nonzero absolute trace. `x^p - x - a` is
//! irreducible over GF(p^k) exactly when the trace of `a` is nonzero, so
//! such an `alpha` always generates a proper degree-p extension.
//!
//! L is always realized as GF(p^{kp}) with its canonical modulus plus an
//! explicit embedding, never as a quotient K[x]/(x^p - x - a); `alpha` is
//! recovered as the lex-smallest root.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::gf::{Embedding, Field, FieldElement, FieldOps, FiniteField};
use crate::MAX_FIELD_ORDER;

/// The Artin-Schreier map `x -> x^p - x`.
pub fn wp(x: &FieldElement) -> FieldElement {
    &x.frobenius(1) - x
}

/// K inside L = GF(p^{kp}) with a chosen Artin-Schreier generator.
#[derive(Clone)]
pub struct ArtinSchreierExtension {
    base: Field,
    ext: Field,
    embedding: Embedding,
    a: FieldElement,
    alpha: FieldElement,
}

impl fmt::Debug for ArtinSchreierExtension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ArtinSchreierExtension({} = {}(alpha), wp(alpha) = {})",
            self.ext.spec_string(),
            self.base.spec_string(),
            self.a
        )
    }
}

impl ArtinSchreierExtension {
    /// Deterministic construction over K: `a` is the lex-smallest element
    /// of nonzero trace, L is the canonical GF(p^{kp}), and `alpha` is the
    /// lex-smallest root of `x^p - x - a` in L.
    pub fn build(base: &Field) -> Result<Self, Error> {
        let p = base.characteristic() as u64;
        let ext_degree = base.degree() as u64 * p;
        let ext_order = p.checked_pow(ext_degree as u32).unwrap_or(u64::MAX);
        if ext_order > MAX_FIELD_ORDER {
            return Err(Error::BoundExceeded {
                what: "extension field order",
                limit: MAX_FIELD_ORDER,
                requested: ext_order,
            });
        }
        let a = base
            .elements()
            .find(|x| x.trace_to_prime() != 0)
            .expect("absolute trace is surjective onto F_p");
        let ext = FiniteField::new(p, ext_degree)?;
        let embedding = Embedding::new(base, &ext)?;
        let target = embedding.apply(&a);
        let alpha = ext
            .elements()
            .find(|y| wp(y) == target)
            .ok_or_else(|| Error::Internal("x^p - x - a has no root in GF(p^{kp})".into()))?;
        Self::assemble(base.clone(), ext, embedding, a, alpha)
    }

    /// Rebuild from stored parts, revalidating every invariant; this is the
    /// entry point used when loading serialized extensions.
    pub fn from_parts(
        base: Field,
        ext: Field,
        generator_image: FieldElement,
        a: FieldElement,
        alpha: FieldElement,
    ) -> Result<Self, Error> {
        if ext.degree() != base.degree() * base.characteristic() as usize {
            return Err(Error::Malformed(format!(
                "{} is not a degree-p extension of {}",
                ext.spec_string(),
                base.spec_string()
            )));
        }
        let embedding = Embedding::from_generator_image(&base, &ext, generator_image)?;
        Self::assemble(base, ext, embedding, a, alpha)
    }

    fn assemble(
        base: Field,
        ext: Field,
        embedding: Embedding,
        a: FieldElement,
        alpha: FieldElement,
    ) -> Result<Self, Error> {
        if **a.field() != *base || **alpha.field() != *ext {
            return Err(Error::FieldMismatch);
        }
        if a.trace_to_prime() == 0 {
            return Err(Error::Malformed(
                "base element has zero trace, x^p - x - a is reducible".into(),
            ));
        }
        if wp(&alpha) != embedding.apply(&a) {
            return Err(Error::Malformed("wp(alpha) != a".into()));
        }
        if embedding.contains(&alpha)? {
            return Err(Error::Malformed("alpha lies in the base field".into()));
        }
        Ok(ArtinSchreierExtension {
            base,
            ext,
            embedding,
            a,
            alpha,
        })
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }
}

/// Deterministic construction, spec-level name.
pub fn build_as_extension(base: &Field) -> Result<ArtinSchreierExtension, Error> {
    ArtinSchreierExtension::build(base)
}

/// `A = wp(K)`, the image of the Artin-Schreier map on K, as a sorted set.
/// Cross-checked against the kernel of the absolute trace.
pub fn wp_image(k: &Field) -> Result<BTreeSet<FieldElement>, Error> {
    let image: BTreeSet<FieldElement> = k.elements().map(|x| wp(&x)).collect();
    let trace_kernel: BTreeSet<FieldElement> =
        k.elements().filter(|x| x.trace_to_prime() == 0).collect();
    if image != trace_kernel {
        return Err(Error::Internal(
            "wp image differs from the trace kernel".into(),
        ));
    }
    let expected = k.order() / k.characteristic() as u64;
    debug_assert_eq!(image.len() as u64, expected);
    Ok(image)
}

/// `U = wp(L \ K) ∩ K`, pulled back to base-field elements and sorted.
/// Asserted disjoint from `wp(K)`.
pub fn wp_outside_image(ext: &ArtinSchreierExtension) -> Result<BTreeSet<FieldElement>, Error> {
    let e = ext.embedding();
    let mut out = BTreeSet::new();
    for y in ext.ext().elements() {
        if e.contains(&y)? {
            continue;
        }
        let w = wp(&y);
        if e.contains(&w)? {
            let pre = e
                .preimage(&w)?
                .ok_or_else(|| Error::Internal("membership and preimage disagree".into()))?;
            out.insert(pre);
        }
    }
    let a_set = wp_image(ext.base())?;
    if !out.is_disjoint(&a_set) {
        return Err(Error::falsified(
            "disjointness of wp(K) and wp(L \\ K) in K",
            "the two sets share an element",
        ));
    }
    Ok(out)
}

/// Whether `wp` is surjective on K. Always false for a finite field, since
/// the kernel has order p; the check exists to anchor what fails at finite
/// level.
pub fn is_as_closed(k: &Field) -> Result<bool, Error> {
    Ok(wp_image(k)?.len() as u64 == k.order())
}
