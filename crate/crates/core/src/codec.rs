//! Canonical JSON wire formats.
//!
//! Elements are little-endian digit arrays, fields are spec strings with
//! the modulus spelled out, subsets are sorted 1-based index lists like
//! `{1,3}`. Canonical serialization goes through `serde_json::Value`,
//! whose object maps are ordered, so keys come out sorted and two equal
//! objects produce byte-identical text. Loading revalidates everything:
//! subspaces are re-echelonized, polynomials re-trimmed, extensions and
//! hypercubes rebuilt through their validating constructors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::addpoly::{AdditivePolynomial, FpSubspace};
use crate::asext::ArtinSchreierExtension;
use crate::contrary::{CertificateSlot, ContraryCertificate};
use crate::error::Error;
use crate::gf::{Field, FieldElement, FieldOps, FiniteField};
use crate::hypercube::{parse_subset_key, subset_key, BottomUpHypercube, Subset};

/// Serialize any value as canonical JSON: sorted keys, two-space indent,
/// trailing newline, no timestamps anywhere.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String, Error> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialWire {
    pub field: String,
    pub coeffs: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceWire {
    pub field: String,
    pub basis: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionWire {
    #[serde(rename = "K")]
    pub base: String,
    #[serde(rename = "L")]
    pub ext: String,
    pub embedding_generator_image: Vec<u8>,
    pub a: Vec<u8>,
    pub alpha: Vec<u8>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlotWire {
    pub beta: Vec<u8>,
    pub y: Vec<u8>,
    pub x: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateWire {
    pub ext: ExtensionWire,
    pub a: Vec<Vec<u8>>,
    pub b_base: Vec<Vec<u8>>,
    pub b: Vec<Vec<u8>>,
    pub slots: Vec<SlotWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HypercubeWire {
    pub n: usize,
    pub a: Vec<Vec<u8>>,
    pub nodes: BTreeMap<String, PolynomialWire>,
    pub edges: BTreeMap<String, PolynomialWire>,
}

// ---------------------------------------------------------------------------

fn elements_to_wire(items: &[FieldElement]) -> Vec<Vec<u8>> {
    items.iter().map(|v| v.coeffs().to_vec()).collect()
}

fn elements_from_wire(field: &Field, items: &[Vec<u8>]) -> Result<Vec<FieldElement>, Error> {
    items.iter().map(|d| field.element(d.clone())).collect()
}

pub fn polynomial_to_wire(f: &AdditivePolynomial) -> PolynomialWire {
    PolynomialWire {
        field: f.field().spec_string(),
        coeffs: elements_to_wire(f.coeffs()),
    }
}

pub fn polynomial_from_wire(wire: &PolynomialWire) -> Result<AdditivePolynomial, Error> {
    let field = FiniteField::parse_spec(&wire.field)?;
    let coeffs = elements_from_wire(&field, &wire.coeffs)?;
    AdditivePolynomial::new(&field, coeffs)
}

pub fn subspace_to_wire(s: &FpSubspace) -> SubspaceWire {
    SubspaceWire {
        field: s.ambient().spec_string(),
        basis: elements_to_wire(s.basis()),
    }
}

/// Non-echelon input is echelonized on load, so re-emitting is canonical.
pub fn subspace_from_wire(wire: &SubspaceWire) -> Result<FpSubspace, Error> {
    let field = FiniteField::parse_spec(&wire.field)?;
    let gens = elements_from_wire(&field, &wire.basis)?;
    FpSubspace::from_generators_in(&field, &gens)
}

pub fn extension_to_wire(ext: &ArtinSchreierExtension) -> ExtensionWire {
    ExtensionWire {
        base: ext.base().spec_string(),
        ext: ext.ext().spec_string(),
        embedding_generator_image: ext.embedding().generator_image().coeffs().to_vec(),
        a: ext.a().coeffs().to_vec(),
        alpha: ext.alpha().coeffs().to_vec(),
    }
}

pub fn extension_from_wire(wire: &ExtensionWire) -> Result<ArtinSchreierExtension, Error> {
    let base = FiniteField::parse_spec(&wire.base)?;
    let ext = FiniteField::parse_spec(&wire.ext)?;
    let gen_image = ext.element(wire.embedding_generator_image.clone())?;
    let a = base.element(wire.a.clone())?;
    let alpha = ext.element(wire.alpha.clone())?;
    ArtinSchreierExtension::from_parts(base, ext, gen_image, a, alpha)
}

pub fn certificate_to_wire(cert: &ContraryCertificate) -> CertificateWire {
    CertificateWire {
        ext: extension_to_wire(cert.ext()),
        a: elements_to_wire(cert.a()),
        b_base: elements_to_wire(cert.b_base()),
        b: elements_to_wire(cert.b()),
        slots: cert
            .slots()
            .iter()
            .map(|s| SlotWire {
                beta: s.beta.coeffs().to_vec(),
                y: s.y.coeffs().to_vec(),
                x: elements_to_wire(&s.x),
            })
            .collect(),
    }
}

/// Shape is validated here (and the extension's invariants by its own
/// loader); the witness equations are judged by `verify_certificate`.
pub fn certificate_from_wire(wire: &CertificateWire) -> Result<ContraryCertificate, Error> {
    let ext = extension_from_wire(&wire.ext)?;
    let base = ext.base().clone();
    let l = ext.ext().clone();
    let a = elements_from_wire(&base, &wire.a)?;
    let b_base = elements_from_wire(&base, &wire.b_base)?;
    let b = elements_from_wire(&base, &wire.b)?;
    let slots = wire
        .slots
        .iter()
        .map(|s| {
            Ok(CertificateSlot {
                beta: l.element(s.beta.clone())?,
                y: base.element(s.y.clone())?,
                x: elements_from_wire(&l, &s.x)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    ContraryCertificate::from_parts(ext, a, b_base, b, slots)
}

pub fn hypercube_to_wire(cube: &BottomUpHypercube) -> HypercubeWire {
    HypercubeWire {
        n: cube.n(),
        a: elements_to_wire(cube.a()),
        nodes: cube
            .nodes()
            .iter()
            .map(|(&m, f)| (subset_key(m), polynomial_to_wire(f)))
            .collect(),
        edges: cube
            .edges()
            .iter()
            .map(|(&(from, to), f)| {
                (
                    format!("{}->{}", subset_key(from), subset_key(to)),
                    polynomial_to_wire(f),
                )
            })
            .collect(),
    }
}

pub fn hypercube_from_wire(wire: &HypercubeWire) -> Result<BottomUpHypercube, Error> {
    let empty = wire
        .nodes
        .get("{}")
        .ok_or_else(|| Error::Malformed("hypercube is missing the empty node".into()))?;
    let field = FiniteField::parse_spec(&empty.field)?;
    let a = elements_from_wire(&field, &wire.a)?;
    if a.len() != wire.n {
        return Err(Error::Malformed("tuple length disagrees with n".into()));
    }
    let mut nodes = BTreeMap::new();
    for (key, poly) in &wire.nodes {
        nodes.insert(parse_subset_key(key)?, polynomial_from_wire(poly)?);
    }
    let mut edges: BTreeMap<(Subset, Subset), AdditivePolynomial> = BTreeMap::new();
    for (key, poly) in &wire.edges {
        let (from, to) = key
            .split_once("->")
            .ok_or_else(|| Error::Malformed(format!("bad edge key {key:?}")))?;
        edges.insert(
            (parse_subset_key(from)?, parse_subset_key(to)?),
            polynomial_from_wire(poly)?,
        );
    }
    BottomUpHypercube::from_parts(a, nodes, edges)
}
