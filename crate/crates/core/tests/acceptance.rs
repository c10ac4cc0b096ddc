//! One test per acceptance criterion; each prints a PASS/FAIL line.

use std::sync::OnceLock;

use tycat_core::io::Certificate;
use tycat_core::verify::{self, CriterionOutcome, DEFAULT_SEED};
use tycat_core::Caps;

fn report(o: CriterionOutcome) {
    println!("{}", o.line());
    assert!(o.passed(), "{}", o.line());
}

/// Certificates from criteria 2-4, computed once for criterion 8.
fn certificates() -> &'static Vec<(String, Certificate)> {
    static CERTS: OnceLock<Vec<(String, Certificate)>> = OnceLock::new();
    CERTS.get_or_init(|| {
        let caps = Caps::default();
        [
            verify::criterion_2(&caps),
            verify::criterion_3(&caps),
            verify::criterion_4(&caps),
        ]
        .into_iter()
        .flat_map(|c| c.unwrap().certificates)
        .collect()
    })
}

#[test]
fn criterion_1_form_counts() {
    report(verify::criterion_1(&Caps::default()).unwrap());
}

#[test]
fn criterion_2_s4_structure() {
    report(verify::criterion_2(&Caps::default()).unwrap());
}

#[test]
fn criterion_3_element_verdicts() {
    report(verify::criterion_3(&Caps::default()).unwrap());
}

#[test]
fn criterion_4_lifting_residues() {
    report(verify::criterion_4(&Caps::default()).unwrap());
}

#[test]
fn criterion_5_symplectic_data() {
    report(verify::criterion_5(&Caps::default(), None).unwrap());
}

#[test]
fn criterion_6_cohomology_ledger() {
    report(verify::criterion_6(&Caps::default()).unwrap());
}

#[test]
fn criterion_7_symplecticity_gate() {
    report(verify::criterion_7(&Caps::default()).unwrap());
}

#[test]
fn criterion_8a_associativity() {
    report(verify::property_associativity(DEFAULT_SEED).unwrap());
}

#[test]
fn criterion_8b_commutativity() {
    report(verify::property_commutativity(DEFAULT_SEED).unwrap());
}

#[test]
fn criterion_8c_certificates() {
    report(verify::property_certificates(certificates(), &Caps::default()).unwrap());
}

#[test]
fn criterion_8d_condensation() {
    report(verify::property_condensation(DEFAULT_SEED, &Caps::default()).unwrap());
}

#[test]
fn criterion_8e_quadratic_identity() {
    report(verify::property_quadratic_identity(DEFAULT_SEED).unwrap());
}
