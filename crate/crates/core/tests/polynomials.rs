use std::path::PathBuf;

use proptest::prelude::*;
use rptree::experiments::{lhs_indegree, lhs_main, lhs_main_with, prufer_trees};
use rptree::poly::Coefficient;
use rptree::{
    pn, product_formula, rhs_indegree, rhs_main, BivariatePolynomial, UnivariatePolynomial,
};

fn bivariate() -> impl Strategy<Value = BivariatePolynomial> {
    prop::collection::vec(((0u32..4, 0u32..4), -20i128..20), 0..6).prop_map(|terms| {
        BivariatePolynomial::from_terms(2, terms.into_iter().map(|((a, b), c)| ([a, b], c)))
            .unwrap()
    })
}

proptest! {
    #[test]
    fn ring_laws(p in bivariate(), q in bivariate(), r in bivariate()) {
        prop_assert_eq!(p.add(&q).unwrap(), q.add(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        prop_assert_eq!(
            p.mul(&q.add(&r).unwrap()).unwrap(),
            p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap()
        );
        prop_assert_eq!(
            p.mul(&q).unwrap().mul(&r).unwrap(),
            p.mul(&q.mul(&r).unwrap()).unwrap()
        );
        prop_assert!(p.sub(&p).unwrap().is_zero());
        prop_assert_eq!(p.mul(&BivariatePolynomial::int(1)).unwrap(), p.clone());
        prop_assert_eq!(p.pow(2).unwrap(), p.mul(&p).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in bivariate(), q in bivariate(), x in -5i128..5, y in -5i128..5) {
        let at = |f: &BivariatePolynomial| f.evaluate(&[x, y]).unwrap();
        prop_assert_eq!(at(&p.add(&q).unwrap()), at(&p) + at(&q));
        prop_assert_eq!(at(&p.mul(&q).unwrap()), at(&p) * at(&q));
    }

    #[test]
    fn golden_text_round_trip(p in bivariate()) {
        prop_assert_eq!(BivariatePolynomial::from_golden(2, &p.to_golden()).unwrap(), p);
    }
}

#[test]
fn pn_counts_rooted_forests() {
    let one = UnivariatePolynomial::int(1);
    for n in 1..=10usize {
        let value = pn(n, &one, &one, &one).unwrap();
        assert_eq!(
            value,
            UnivariatePolynomial::int(((n + 1) as Coefficient).pow(n as u32 - 1))
        );
    }
}

#[test]
fn closed_forms_agree() {
    for n in 2..=12 {
        assert_eq!(product_formula(n).unwrap(), rhs_main(n).unwrap(), "n={n}");
        let at_one = rhs_main(n).unwrap().evaluate(&[1, 1]).unwrap();
        assert_eq!(at_one, (n as Coefficient).pow(n as u32 - 2));
    }
    assert_eq!(
        rhs_main(3).unwrap().to_string(),
        "1 u^2 c^1 + 1 u^3 c^1 + 1 u^3 c^2"
    );
    assert!(rhs_main(1).is_err());
}

/// Leader/degree sum computed over the classic Prüfer enumeration with
/// leaders found by scanning descendants, sharing nothing with the RP path.
fn independent_lhs(n: usize) -> BivariatePolynomial {
    let terms = prufer_trees(n).unwrap().into_iter().map(|t| {
        let lead = (1..=n)
            .filter(|&v| t.descendants(v).unwrap().iter().all(|&d| d >= v))
            .count() as u32;
        let deg1 = (2..=n).filter(|&v| t.parent(v).unwrap() == Some(1)).count() as u32;
        ([lead, deg1], 1)
    });
    BivariatePolynomial::from_terms(2, terms).unwrap()
}

#[test]
fn enumeration_matches_independent_oracle() {
    for n in 2..=7 {
        let lhs = lhs_main(n).unwrap();
        assert_eq!(lhs, independent_lhs(n), "n={n}");
        assert_eq!(lhs, lhs_main_with(n, 9, false).unwrap());
        assert_eq!(lhs, rhs_main(n).unwrap());
    }
}

#[test]
fn indegree_matches_independent_oracle() {
    for n in 2..=5 {
        let terms = prufer_trees(n).unwrap().into_iter().map(|t| {
            (
                t.indegree_vector()
                    .into_iter()
                    .map(|d| d as u32)
                    .collect::<Vec<u32>>(),
                1,
            )
        });
        let oracle = rptree::MultivariatePolynomial::from_terms(n, terms).unwrap();
        assert_eq!(lhs_indegree(n, 6).unwrap(), oracle);
        assert_eq!(oracle, rhs_indegree(n).unwrap());
    }
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Frozen leader/degree sums for small n. Regenerate with
/// `RPTREE_BLESS=1 cargo test --test polynomials`.
#[test]
fn lead_degree_goldens() {
    let bless = std::env::var_os("RPTREE_BLESS").is_some();
    for n in 2..=5 {
        let path = golden_path(&format!("lead_degree_n{n}.txt"));
        let computed = lhs_main(n).unwrap();
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, computed.to_golden()).unwrap();
        }
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            BivariatePolynomial::from_golden(2, &text).unwrap(),
            computed,
            "n={n}"
        );
    }
}
