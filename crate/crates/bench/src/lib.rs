//! Shared fixtures for the benchmark targets.

use aspoly::gf::FieldOps;
use aspoly::{
    build_as_extension, ArtinSchreierExtension, Field, FieldElement, FiniteField, FpSubspace,
};

pub fn field(p: u64, k: u64) -> Field {
    FiniteField::new(p, k).unwrap()
}

/// All elements, materialized once so benches measure arithmetic only.
pub fn elements(f: &Field) -> Vec<FieldElement> {
    f.elements().collect()
}

/// The whole field viewed as an F_p-subspace.
pub fn full_subspace(f: &Field) -> FpSubspace {
    FpSubspace::full(f)
}

pub fn extension(p: u64, k: u64) -> ArtinSchreierExtension {
    build_as_extension(&field(p, k)).unwrap()
}

/// A contrary pair over the given base field.
pub fn contrary_pair(p: u64, k: u64) -> (ArtinSchreierExtension, Vec<FieldElement>) {
    let f = field(p, k);
    let ext = build_as_extension(&f).unwrap();
    let a = vec![f.one(), f.generator()];
    (ext, a)
}
