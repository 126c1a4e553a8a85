use ecc_core::blocks::{ecc, lemma_moves, linked, Factor, TensorSpec};
use ecc_core::cartan::{cartan_data, LieType};
use ecc_core::divisor::xi_divisor;
use proptest::prelude::*;

fn t(s: &str) -> LieType {
    s.parse().unwrap()
}

fn spec(s: &str) -> TensorSpec {
    TensorSpec::parse(s, None).unwrap()
}

#[test]
fn examples() {
    assert!(ecc(&TensorSpec::empty(t("E8"))).unwrap().is_zero());
    assert!(linked(&spec("A3: V2@0"), &spec("A3: V2@8")).unwrap());
    assert!(linked(&spec("B4:"), &spec("B4: V4@1, V4@15")).unwrap());
    assert!(!linked(&spec("A2: V1"), &spec("A2: V1@2")).unwrap());
    let g2 = cartan_data(t("G2"));
    let one = ecc(&spec("G2: V1")).unwrap();
    assert_eq!(one.get(1, "default", 24), xi_divisor(&g2, 1, 1).unwrap());
}

#[test]
fn orbits_are_independent() {
    // The same factor on two different orbits does not cancel against its dual.
    assert!(!linked(&spec("E8:"), &spec("E8: V1@0 | orbit=b: V1@30")).unwrap());
    assert!(linked(&spec("E8:"), &spec("E8: orbit=b: V1@0, V1@30")).unwrap());
}

#[test]
fn d_even_uses_both_half_spins() {
    let cd = cartan_data(t("D6"));
    assert_eq!(cd.black_nodes, vec![5, 6]);
    // ξ_{++} and ξ_{−−} agree, so a half-spin swap is only visible through the other probe.
    assert!(!linked(&spec("D6: V5"), &spec("D6: V6")).unwrap());
}

#[test]
fn type_mismatch_is_an_error() {
    assert!(linked(&spec("A2: V1"), &spec("A3: V1")).is_err());
}

fn type_and_spec() -> impl Strategy<Value = (LieType, Vec<(usize, bool, i64)>)> {
    let types: Vec<LieType> = ["A3", "B3", "C4", "D4", "D5", "G2", "F4", "E6"].iter().map(|s| t(s)).collect();
    (prop::sample::select(types), prop::collection::vec((1usize..=8, any::<bool>(), -60i64..60), 0..5))
}

fn build(lt: LieType, raw: &[(usize, bool, i64)]) -> TensorSpec {
    let n = lt.rank();
    let factors = raw
        .iter()
        .map(|&(k, side, e)| Factor::in_orbit((k - 1) % n + 1, if side { "b" } else { "default" }, e))
        .collect();
    TensorSpec::new(lt, factors).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linked_is_an_equivalence((lt, a) in type_and_spec(), b in prop::collection::vec((1usize..=8, any::<bool>(), -60i64..60), 0..4), w in -40i64..40) {
        let a = build(lt, &a);
        let b = build(lt, &b);
        prop_assert!(linked(&a, &a).unwrap());
        prop_assert_eq!(linked(&a, &b).unwrap(), linked(&b, &a).unwrap());
        // c is a, moved by the first lemma move at base w: linked to a, so (a~b) iff (c~b).
        let m = &lemma_moves(&cartan_data(lt))[0].shifted(w);
        let c = a.clone().with(m.adds.iter().cloned());
        prop_assert!(linked(&a, &c).unwrap());
        prop_assert_eq!(linked(&a, &b).unwrap(), linked(&c, &b).unwrap());
    }

    #[test]
    fn factor_order_is_irrelevant((lt, raw) in type_and_spec()) {
        let a = build(lt, &raw);
        let mut rev = raw.clone();
        rev.reverse();
        prop_assert_eq!(ecc(&a).unwrap(), ecc(&build(lt, &rev)).unwrap());
    }

    #[test]
    fn text_grammar_round_trips((lt, raw) in type_and_spec()) {
        let a = build(lt, &raw);
        let back = TensorSpec::parse(&a.to_string(), None).unwrap();
        prop_assert_eq!(ecc(&a).unwrap(), ecc(&back).unwrap());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(TensorSpec::from_json(&json).unwrap(), a);
    }
}
