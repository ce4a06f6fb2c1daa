use adw_core::algebra::{
    basis_vector, center_ad, center_assoc, multiply, nilpotency_index, power_filtration, quotient_by_ideal,
    sum_product, is_ideal, Algebra,
};
use adw_core::catalog::{parse_params, Catalog, EntryFilter, Kind, Params};
use adw_core::identities::{check_2nilpotent_ad, check_2nilpotent_assoc, check_anti_dendriform, check_associative};
use adw_core::iso::{fingerprint, search_witness, verify_iso_witness, SearchOutcome, Strategy, DEFAULT_BUDGET};
use adw_core::verify::{probe_case, run_contradiction_probe, run_suite, Status};
use adw_core::{AdAlgebra, AssocAlgebra, LinearMap, Scalar, SubspaceBasis};

fn cat() -> &'static Catalog {
    Catalog::builtin()
}

fn p(text: &str) -> Params {
    parse_params(text).unwrap()
}

fn assoc(id: &str, params: &str) -> AssocAlgebra {
    cat().instantiate_assoc(id, &p(params)).unwrap()
}

fn ad(id: &str, params: &str) -> AdAlgebra {
    cat().instantiate_ad(id, &p(params)).unwrap()
}

fn e(n: usize, i: usize) -> Vec<Scalar> {
    basis_vector(n, i - 1)
}

fn span(n: usize, idx: &[usize]) -> SubspaceBasis {
    let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
    SubspaceBasis::standard(n, &zero_based)
}

#[test]
fn products_of_basis_vectors() {
    let a = assoc("As3.6", "");
    assert_eq!(multiply(&a.mul, &e(3, 1), &e(3, 2)).unwrap(), e(3, 3));
    assert_eq!(multiply(&a.mul, &vec![Scalar::zero(); 3], &e(3, 2)).unwrap(), vec![Scalar::zero(); 3]);
    let a = assoc("As4.3", "");
    assert_eq!(multiply(&a.mul, &e(4, 3), &e(4, 1)).unwrap(), e(4, 4));
}

#[test]
fn sum_products() {
    assert_eq!(sum_product(&ad("AD4.1", "")), assoc("As4.3", ""));
    assert!(sum_product(&AdAlgebra::trivial(3).unwrap()).mul.is_zero());
    assert_eq!(sum_product(&ad("AD3.1", "")), assoc("As3.6", ""));
}

#[test]
fn filtrations_and_indices() {
    let dims = |a: &AssocAlgebra| power_filtration(a, a.dim() + 2).iter().map(SubspaceBasis::dim).collect::<Vec<_>>();
    let a16 = assoc("As4.16", "");
    assert_eq!(dims(&a16), [4, 3, 2, 1, 0]);
    assert_eq!(nilpotency_index(&a16), Some(5));
    let zero = AssocAlgebra::zero(3).unwrap();
    assert_eq!(dims(&zero), [3, 0]);
    assert_eq!(nilpotency_index(&zero), Some(2));
    let a6 = assoc("As3.6", "");
    assert_eq!(dims(&a6), [3, 2, 1, 0]);
    assert_eq!(nilpotency_index(&a6), Some(4));
    assert_eq!(nilpotency_index(&assoc("As4.3", "")), Some(3));
}

#[test]
fn centers() {
    assert_eq!(center_assoc(&assoc("As4.3", "")), span(4, &[4]));
    assert_eq!(center_assoc(&assoc("As4.2", "")), span(4, &[3, 4]));
    assert_eq!(center_assoc(&AssocAlgebra::zero(4).unwrap()), SubspaceBasis::full(4));
    assert_eq!(center_ad(&ad("AD4.1", "")), span(4, &[4]));
    assert_eq!(center_ad(&AdAlgebra::trivial(3).unwrap()), SubspaceBasis::full(3));
    assert_eq!(center_ad(&ad("AD3.5", "")), span(3, &[2, 3]));
}

#[test]
fn ideals() {
    let d = ad("AD4.1", "");
    assert!(is_ideal(&d, &center_ad(&d)).unwrap());
    assert!(is_ideal(&d, &SubspaceBasis::full(4)).unwrap());
    assert!(!is_ideal(&d, &span(4, &[1])).unwrap());
}

#[test]
fn quotients() {
    let q = quotient_by_ideal(&ad("AD4.9", "alpha=2,beta=-1"), &span(4, &[4])).unwrap();
    assert_eq!(q, ad("AD3.5", ""));
    let d = ad("AD4.9", "alpha=2,beta=-1");
    assert_eq!(quotient_by_ideal(&d, &SubspaceBasis::zero(4)).unwrap(), d);
    let q = quotient_by_ideal(&ad("AD4.1", ""), &span(4, &[4])).unwrap();
    assert_eq!(q, AdAlgebra::trivial(3).unwrap());
}

#[test]
fn associativity_checks() {
    assert!(check_associative(&assoc("As4.8", "")).is_empty());
    assert!(check_associative(&AssocAlgebra::zero(3).unwrap()).is_empty());
}

#[test]
fn identity_checks() {
    assert!(check_anti_dendriform(&ad("AD3.5", "")).is_empty());
    assert!(check_anti_dendriform(&AdAlgebra::trivial(4).unwrap()).is_empty());
    assert!(check_anti_dendriform(&ad("AD4.13", "alpha=0,beta=0,gamma=0,lambda=1")).is_empty());
}

#[test]
fn two_nilpotency() {
    assert!(check_2nilpotent_assoc(&assoc("As4.3", "")));
    assert!(!check_2nilpotent_assoc(&assoc("As4.16", "")));
    assert!(check_2nilpotent_assoc(&AssocAlgebra::zero(2).unwrap()));
    let d = cat().instantiate_unchecked("AD4.5", &p("alpha=0")).unwrap();
    assert!(check_2nilpotent_ad(d.as_ad().unwrap()));
    assert!(check_2nilpotent_ad(&AdAlgebra::trivial(3).unwrap()));
    assert!(!check_2nilpotent_ad(&ad("AD3.1", "")));
}

#[test]
fn instantiation() {
    let a = assoc("As3.5", "lambda=0");
    let mut want = adw_core::ProductTensor::zeros(3).unwrap();
    want.set(0, 0, 2, Scalar::one());
    want.set(1, 1, 2, Scalar::one());
    assert_eq!(a.mul, want);
    let lhs = cat().instantiate_unchecked("AD4.38", &p("alpha=0")).unwrap();
    let rhs = cat().instantiate("AD4.39", &p("alpha=0,beta=-1/2")).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(cat().instantiate("AD3.3", &Params::new()).unwrap(), Algebra::Ad(AdAlgebra::trivial(3).unwrap()));
}

#[test]
fn automorphism_instances() {
    let id = cat().instantiate_automorphism("As4.3", 1, &p("a=1,b=1,c=0,d=0,e=0,f=0")).unwrap();
    assert_eq!(id, LinearMap::identity(4));
    let m = cat().instantiate_automorphism("As4.3", 1, &p("a=2,b=1,c=0,d=0,e=0,f=0")).unwrap();
    assert_eq!(m.column(3), {
        let mut v = e(4, 4);
        v[3] = Scalar::from(2);
        v
    });
}

#[test]
fn listing() {
    let ids = |f: EntryFilter| cat().list_entries(&f).iter().map(|e| e.id.clone()).collect::<Vec<_>>();
    let ad3 = ids(EntryFilter {
        dim: Some(3),
        kind: Some(Kind::Ad),
        ..Default::default()
    });
    assert_eq!(ad3, (1..=23).map(|k| format!("AD3.{k}")).collect::<Vec<_>>());
    let as4 = ids(EntryFilter {
        dim: Some(4),
        kind: Some(Kind::Assoc),
        ..Default::default()
    });
    assert_eq!(as4, (2..=16).map(|k| format!("As4.{k}")).collect::<Vec<_>>());
    let over3 = ids(EntryFilter {
        base: Some("As4.3".into()),
        ..Default::default()
    });
    assert_eq!(over3, (1..=13).map(|k| format!("AD4.{k}")).collect::<Vec<_>>());
}

#[test]
fn witness_verification() {
    let a = cat().instantiate_unchecked("AD4.38", &p("alpha=0")).unwrap();
    let b = ad("AD4.39", "alpha=0,beta=-1/2");
    assert!(verify_iso_witness(a.as_ad().unwrap(), &b, &LinearMap::identity(4)).unwrap());
    let d = ad("AD3.8", "alpha=2,beta=1/2");
    assert!(verify_iso_witness(&d, &d, &LinearMap::identity(3)).unwrap());
}

#[test]
fn trivial_fingerprint() {
    let f = fingerprint(&ad("AD3.3", ""));
    assert_eq!((f.dim_image_r, f.dim_image_l), (0, 0));
    assert_eq!((f.dim_center_ad, f.dim_center_assoc), (3, 3));
    assert!(f.two_nilpotent);
    assert_eq!(fingerprint(&ad("AD4.1", "")).power_dims, [4, 1, 0]);
}

#[test]
fn grid_search() {
    let s = |a: &str, pa: &str, b: &str, pb: &str| {
        search_witness(cat(), &ad(a, pa), &ad(b, pb), &Strategy::StructuredGrid, DEFAULT_BUDGET).unwrap()
    };
    let found = s("AD3.8", "alpha=1,beta=0", "AD3.8", "alpha=0,beta=-1");
    let m = found.witness().expect("witness");
    assert!(verify_iso_witness(&ad("AD3.8", "alpha=1,beta=0"), &ad("AD3.8", "alpha=0,beta=-1"), m).unwrap());
    assert_eq!(
        s("AD3.8", "alpha=1,beta=1/2", "AD3.8", "alpha=1,beta=1/2"),
        SearchOutcome::Found {
            map: LinearMap::identity(3),
            index: 0
        }
    );
    assert!(s("AD3.15", "alpha=1,beta=1,gamma=1,lambda=0", "AD3.15", "alpha=1,beta=-1,gamma=-1,lambda=0")
        .witness()
        .is_some());
    let d = ad("AD4.20", "alpha=3");
    let base = Strategy::AutFamilyGrid {
        base: "As4.8".into(),
        base_params: Params::new(),
    };
    match search_witness(cat(), &d, &d, &base, DEFAULT_BUDGET).unwrap() {
        SearchOutcome::Found { map, index } => {
            assert_eq!(map, LinearMap::identity(4));
            assert_eq!(index, 0);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn suite_examples() {
    let r = run_suite("as4", 0, 5).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for id in (2..=16).map(|k| format!("As4.{k}")) {
        for what in ["is associative", "is nilpotent", "has center"] {
            assert!(r.checks.iter().any(|c| c.claim.starts_with(&format!("{id} {what}"))), "{id} {what}");
        }
    }
    let r = run_suite("ad4-thm2", 0, 5).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    for k in 14..=18 {
        let id = format!("AD4.{k}");
        assert!(r.checks.iter().any(|c| c.claim == format!("{id} satisfies the seven identities") && c.status == Status::Pass));
        assert!(r.checks.iter().any(|c| c.claim == format!("{id} sums to As4.6") && c.status == Status::Pass));
    }
    let r = run_suite("coincidences", 0, 3).unwrap();
    assert_eq!(r.summary.pass, 8);
    assert!(matches!(run_suite("ad4-thm9", 0, 5), Err(adw_core::Error::UnknownSuite(_))));
}

#[test]
fn probe_examples() {
    for (id, detail) in [
        ("As4.6/AD3.4", "(e_2,e_1,e_3) forces a_33 = 0; (e_3,e_1,e_2) forces a_33 = -1"),
        ("As4.8/AD3.19", "(e_1,e_1,e_1) forces a_13 = 0; (e_1,e_2,e_1) forces a_13 = -1"),
        ("As4.15/AD3.7", "(e_1,e_1,e_3) forces a_33 = 0; (e_3,e_1,e_1) forces a_33 = -1"),
    ] {
        let r = run_contradiction_probe(id).unwrap();
        assert_eq!(r.checks[0].status, Status::EvidenceOnly);
        assert_eq!(r.checks[0].detail, detail);
    }
    assert_eq!(probe_case("As4.15/AD3.7").unwrap().quotient_params, "lambda=2/3");
    assert!(matches!(run_contradiction_probe("As4.3/AD3.1"), Err(adw_core::Error::UnknownCase(_))));
}
