//! Certificate locality: a verified certificate is pinned down by its
//! serialized bytes. Perturbing any single element field of the JSON by
//! +1 (adding the field's one to that element) must either fail to load or
//! verify as false — never remain a valid certificate. The Artin-Schreier
//! map is insensitive to shifts by F_p, so this is only achievable because
//! verification re-derives every witness from beta and the tuple.

use aspoly::codec::{canonical_json, certificate_from_wire, certificate_to_wire, CertificateWire};
use aspoly::gf::FieldOps;
use aspoly::{
    build_as_extension, generate_contrary, verify_certificate, AdditivePolynomial, Field,
    FieldElement, FiniteField, FpSubspace,
};

fn gf(p: u64, k: u64) -> Field {
    FiniteField::new(p, k).unwrap()
}

fn golden_certificate() -> CertificateWire {
    let f4 = gf(2, 2);
    let ext = build_as_extension(&f4).unwrap();
    let w = f4.element(vec![0, 1]).unwrap();
    let cert = generate_contrary(&ext, &[f4.one(), w]).unwrap();
    certificate_to_wire(&cert)
}

/// Add 1 to an element encoded as a digit vector over F_p (digit 0 is the
/// coefficient of 1).
fn bump(digits: &mut [u8], p: u8) {
    digits[0] = (digits[0] + 1) % p;
}

fn still_verifies(wire: &CertificateWire) -> bool {
    match certificate_from_wire(wire) {
        Err(_) => false,
        Ok(cert) => verify_certificate(&cert).unwrap(),
    }
}

#[test]
fn every_single_field_perturbation_invalidates() {
    let base = golden_certificate();
    assert!(still_verifies(&base));
    let p = 2;

    let mut mutants: Vec<(String, CertificateWire)> = Vec::new();

    let mut m = base.clone();
    bump(&mut m.ext.embedding_generator_image, p);
    mutants.push(("ext.embedding_generator_image".into(), m));

    let mut m = base.clone();
    bump(&mut m.ext.a, p);
    mutants.push(("ext.a".into(), m));

    let mut m = base.clone();
    bump(&mut m.ext.alpha, p);
    mutants.push(("ext.alpha".into(), m));

    for i in 0..base.a.len() {
        let mut m = base.clone();
        bump(&mut m.a[i], p);
        mutants.push((format!("a[{i}]"), m));

        let mut m = base.clone();
        bump(&mut m.b_base[i], p);
        mutants.push((format!("b_base[{i}]"), m));

        let mut m = base.clone();
        bump(&mut m.b[i], p);
        mutants.push((format!("b[{i}]"), m));
    }

    for s in 0..base.slots.len() {
        let mut m = base.clone();
        bump(&mut m.slots[s].beta, p);
        mutants.push((format!("slots[{s}].beta"), m));

        let mut m = base.clone();
        bump(&mut m.slots[s].y, p);
        mutants.push((format!("slots[{s}].y"), m));

        for j in 0..base.slots[s].x.len() {
            let mut m = base.clone();
            bump(&mut m.slots[s].x[j], p);
            mutants.push((format!("slots[{s}].x[{j}]"), m));
        }
    }

    assert_eq!(mutants.len(), 3 + 3 * 2 + 2 * (2 + 2));
    for (name, mutant) in mutants {
        assert!(
            !still_verifies(&mutant),
            "perturbing {name} left the certificate valid"
        );
    }
}

#[test]
fn malformed_shapes_are_distinguished_from_invalid_witnesses() {
    let base = golden_certificate();

    // Wrong digit range: rejected as malformed at load.
    let mut m = base.clone();
    m.slots[0].y = vec![7, 0];
    assert!(certificate_from_wire(&m).is_err());

    // Wrong length: rejected as malformed at load.
    let mut m = base.clone();
    m.slots[0].x.pop();
    assert!(certificate_from_wire(&m).is_err());

    // A broken witness equation loads fine but verifies false.
    let mut m = base.clone();
    bump(&mut m.slots[0].y, 2);
    let cert = certificate_from_wire(&m).unwrap();
    assert!(!verify_certificate(&cert).unwrap());
}

#[test]
fn witness_membership_pattern_is_off_diagonal() {
    for (p, k) in [(2u64, 2u64), (2, 3), (3, 2)] {
        let field = gf(p, k);
        let ext = build_as_extension(&field).unwrap();
        let tuples = aspoly::sample_independent_tuples(&field, 2, 5, 99).unwrap();
        for a in tuples {
            let cert = generate_contrary(&ext, &a).unwrap();
            let e = cert.ext().embedding();
            for (i, slot) in cert.slots().iter().enumerate() {
                for (j, x) in slot.x.iter().enumerate() {
                    assert_eq!(e.contains(x).unwrap(), i != j);
                }
            }
        }
    }
}

#[test]
fn twist_identity_holds_as_polynomials() {
    // For every generated certificate, f_T equals the twist of f_{W_i} by
    // b_i, coefficient-wise.
    let field = gf(2, 3);
    let ext = build_as_extension(&field).unwrap();
    let tuples = aspoly::sample_independent_tuples(&field, 3, 5, 4).unwrap();
    for a in tuples {
        let cert = generate_contrary(&ext, &a).unwrap();
        let t = FpSubspace::from_generators_in(&field, cert.a()).unwrap();
        let f_t = AdditivePolynomial::from_subgroup(&t).unwrap();
        for i in 0..cert.n() {
            let others: Vec<FieldElement> = cert
                .a()
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            let w_i = FpSubspace::from_generators_in(&field, &others).unwrap();
            let f_w = AdditivePolynomial::from_subgroup(&w_i).unwrap();
            let twist = AdditivePolynomial::twist_of_line(&cert.b_base()[i]).unwrap();
            assert_eq!(AdditivePolynomial::compose(&twist, &f_w).unwrap(), f_t);
        }
    }
}

#[test]
fn canonical_json_is_stable_under_reload() {
    let wire = golden_certificate();
    let json = canonical_json(&wire).unwrap();
    let parsed: CertificateWire = serde_json::from_str(&json).unwrap();
    let cert = certificate_from_wire(&parsed).unwrap();
    assert_eq!(canonical_json(&certificate_to_wire(&cert)).unwrap(), json);
}
