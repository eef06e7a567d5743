use nalgebra::DMatrix;
use poly_core::{catalog, rat, ratio, BigRational, Monomial, Polynomial};
use sos_engine::{certificate_validate, CertificateDoc, GramBasis, GramCertificate};

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn lin(terms: &[(BigRational, &[u32])]) -> Polynomial {
    let mut p = Polynomial::zero(2);
    for (c, e) in terms {
        p.add_term(mono(e), c.clone());
    }
    p
}

fn motzkin_squares() -> (GramBasis, Vec<(BigRational, Polynomial)>) {
    let basis = GramBasis::new(
        2,
        vec![
            mono(&[0, 0]),
            mono(&[1, 0]),
            mono(&[0, 1]),
            mono(&[1, 1]),
            mono(&[2, 0]),
            mono(&[0, 2]),
            mono(&[2, 1]),
            mono(&[1, 2]),
        ],
    )
    .unwrap();
    let squares = vec![
        (rat(37), lin(&[(rat(1), &[0, 0]), (ratio(-11, 148), &[2, 0]), (ratio(-11, 148), &[0, 2])])),
        (ratio(71, 2), lin(&[(rat(1), &[1, 0]), (ratio(-4, 71), &[1, 2])])),
        (ratio(71, 2), lin(&[(rat(1), &[0, 1]), (ratio(-4, 71), &[2, 1])])),
        (ratio(57, 2), lin(&[(rat(1), &[1, 1])])),
        (ratio(1063, 592), lin(&[(rat(1), &[2, 0]), (ratio(27, 1063), &[0, 2])])),
        (ratio(3815, 2126), lin(&[(rat(1), &[0, 2])])),
        (ratio(63, 71), lin(&[(rat(1), &[2, 1])])),
        (ratio(63, 71), lin(&[(rat(1), &[1, 2])])),
    ];
    (basis, squares)
}

#[test]
fn motzkin_at_one_explicit_decomposition_validates() {
    let target = heat_flow::evolve_at(&catalog::motzkin(), &rat(1));
    let (basis, squares) = motzkin_squares();
    let mut cert = GramCertificate::from_squares(basis, &squares).unwrap();
    assert_eq!(cert.polynomial().unwrap(), target);
    assert!(certificate_validate(&target, &mut cert).unwrap());
    assert!(cert.validated);
}

#[test]
fn perturbed_decomposition_is_rejected() {
    let target = heat_flow::evolve_at(&catalog::motzkin(), &rat(1));
    let (basis, mut squares) = motzkin_squares();
    squares[3].0 = ratio(55, 2);
    let mut cert = GramCertificate::from_squares(basis, &squares).unwrap();
    assert!(!certificate_validate(&target, &mut cert).unwrap());
    assert!(!cert.validated);
}

#[test]
fn single_square_certificate() {
    let p = Polynomial::from_int_terms(1, &[(1, &[2])]);
    let basis = GramBasis::new(1, vec![mono(&[1])]).unwrap();
    let mut cert = GramCertificate::numeric(basis, DMatrix::from_element(1, 1, 1.0), Vec::new());
    assert!(certificate_validate(&p, &mut cert).unwrap());
}

#[test]
fn motzkin_itself_never_validates() {
    let f = catalog::motzkin();
    let basis = GramBasis::new(2, poly_core::monomials_up_to(2, 3)).unwrap();
    let n = basis.len();
    for scale in [1.0, 1e-3, 10.0] {
        let mut cert = GramCertificate::numeric(basis.clone(), DMatrix::identity(n, n) * scale, Vec::new());
        assert!(!certificate_validate(&f, &mut cert).unwrap());
    }
    let verdict = sos_engine::sos_feasibility(&f, 1e-9).unwrap();
    assert!(verdict.certificate.is_none());
}

#[test]
fn dimension_mismatch_is_structural_error() {
    let p = Polynomial::from_int_terms(1, &[(1, &[2])]);
    let basis = GramBasis::new(1, vec![mono(&[0]), mono(&[1])]).unwrap();
    let mut cert = GramCertificate::numeric(basis, DMatrix::identity(3, 3), Vec::new());
    assert!(certificate_validate(&p, &mut cert).is_err());
}

#[test]
fn validated_certificate_json_round_trip() {
    let target = heat_flow::evolve_at(&catalog::motzkin(), &rat(1));
    let verdict = sos_engine::sos_feasibility(&target, 1e-9).unwrap();
    let mut cert = verdict.certificate.unwrap();
    assert!(certificate_validate(&target, &mut cert).unwrap());
    let json = serde_json::to_string(&cert.to_doc()).unwrap();
    let doc: CertificateDoc = serde_json::from_str(&json).unwrap();
    assert!(doc.validated);
    // the flag is not trusted on load; the exact matrix is checked again
    let mut back = doc.to_certificate().unwrap();
    assert!(!back.validated);
    assert_eq!(back.polynomial().unwrap(), target);
    assert!(certificate_validate(&target, &mut back).unwrap());
}
