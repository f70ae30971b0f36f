//! Algebraic property suites: exhaustive for q ≤ 16, seeded samples above.

mod common;

use common::*;
use cycdes_core::design::BlockSet;
use cycdes_core::gf::Field;
use cycdes_core::linearized::{span, Subspace};
use cycdes_core::{design_identity_check, two_design_lambda, FieldElement};
use proptest::prelude::*;

fn run_all(name: &str, check: impl Fn(u64, u32) -> Check) {
    for &(p, m) in FIELDS {
        if let Err(e) = check(p, m) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn field_axioms_hold() {
    run_all("field axioms", field_axioms);
}

#[test]
fn frobenius_is_additive_and_multiplicative() {
    run_all("Frobenius", frobenius_additivity);
}

#[test]
fn null_sets_are_empty_or_kernel_cosets() {
    run_all("coset law", coset_law);
}

#[test]
fn gaussian_binomial_symmetry_and_pascal() {
    gaussian_identities(&[2, 3, 5, 7, 11, 13], 16).unwrap();
}

#[test]
fn subspace_enumeration_matches_gaussian_binomial() {
    run_all("subspace counts", subspace_counts);
}

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop::sample::select(FIELDS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tau_round_trips((p, m) in field_strategy(), i in 1u64..4096) {
        let f = Field::new(p, m).unwrap();
        let i = (i - 1) % f.q() + 1;
        prop_assert_eq!(f.tau_inv(f.tau(i).unwrap()), i);
    }

    #[test]
    fn span_is_closed_and_sized((p, m) in field_strategy(), codes in prop::collection::vec(any::<u32>(), 0..4)) {
        let f = Field::new(p, m).unwrap();
        let gens: Vec<FieldElement> = codes.iter().map(|&c| FieldElement::from_code(c % f.q() as u32)).collect();
        let u: Subspace = span(&f, &gens);
        let elems = u.elements(&f);
        prop_assert_eq!(elems.len() as u64, u.size(&f));
        prop_assert!(u.dim() <= gens.len());
        for &g in &gens {
            prop_assert!(u.contains(&f, g));
        }
        for &x in elems.iter().take(8) {
            for &y in elems.iter().take(8) {
                prop_assert!(u.contains(&f, f.add(x, y)));
            }
        }
        // the canonical form does not depend on generator order
        let mut rev = gens.clone();
        rev.reverse();
        prop_assert_eq!(span(&f, &rev), u);
    }

    #[test]
    fn two_design_parameters_are_consistent(
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        (m, h, j) in (1u32..9).prop_flat_map(|m| (Just(m), 0..m)).prop_flat_map(|(m, h)| (Just(m), Just(h), 0..=h)),
    ) {
        let d = two_design_lambda(p, m, h, j).unwrap();
        prop_assert!(design_identity_check(&d));
        prop_assert_eq!(d.k, d.n - p.pow(j));
    }

    #[test]
    fn design_text_round_trips(n in 3u64..40, raw in prop::collection::btree_set(prop::collection::btree_set(1u64..40, 3), 1..20)) {
        let blocks: Vec<Vec<u64>> = raw
            .into_iter()
            .map(|b| b.into_iter().map(|x| (x - 1) % n + 1).collect::<std::collections::BTreeSet<_>>())
            .filter(|b| b.len() == 3)
            .map(|b| b.into_iter().collect())
            .collect::<std::collections::BTreeSet<Vec<u64>>>()
            .into_iter()
            .collect();
        prop_assume!(!blocks.is_empty());
        let set = BlockSet::from_blocks(n, blocks).unwrap();
        let text = set.to_design_text();
        prop_assert_eq!(BlockSet::parse_design_text(&text).unwrap(), set);
    }
}
