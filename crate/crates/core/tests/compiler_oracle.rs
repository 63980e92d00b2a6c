mod support;

use proptest::prelude::*;

use etr::logic::{compile, denote, denote_oracle, parse_formula, satisfies};
use etr::{Formula, Index, Value};
use support::{formula, interpretation, logic_case, VARIABLES};

fn unused_variable(f: &Formula) -> String {
    let free = f.free_vars();
    VARIABLES
        .iter()
        .chain(["u"].iter())
        .find(|v| !free.contains(&Index::new(v)))
        .unwrap()
        .to_string()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn compiled_denotation_equals_oracle(case in logic_case()) {
        let compiled = denote(&case.formula, &case.m).unwrap();
        let oracle = denote_oracle(&case.m, &case.formula).unwrap();
        prop_assert_eq!(compiled, oracle, "{}", case.formula);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn double_negation(case in logic_case()) {
        let nn = Formula::not(Formula::not(case.formula.clone()));
        prop_assert_eq!(denote(&nn, &case.m).unwrap(), denote(&case.formula, &case.m).unwrap());
    }

    #[test]
    fn vacuous_quantifier(case in logic_case()) {
        let v = unused_variable(&case.formula);
        let q = Formula::exists([v.as_str()], case.formula.clone());
        let plain = denote(&case.formula, &case.m).unwrap();
        prop_assert_eq!(&denote(&q, &case.m).unwrap(), &plain);
        prop_assert_eq!(&denote_oracle(&case.m, &q).unwrap(), &plain);
    }

    #[test]
    fn assignments_outside_free_variables_are_ignored(case in logic_case(), pad in any::<usize>()) {
        let m = &case.m;
        let denoted = denote_oracle(m, &case.formula).unwrap();
        let values: Vec<Value> = m.domain().values().collect();
        let free = case.formula.free_vars();
        let all: etr::Signature = VARIABLES
            .iter()
            .map(|v| (Index::new(v), m.domain_id().clone()))
            .collect();
        let registry = etr::Registry::with_domains([m.domain().clone()]).unwrap();
        for t in registry.cart_iter(&all).unwrap().skip(pad % 7).step_by(5)
        {
            let minimal = t.restrict(&free);
            let mut padded = t.clone();
            padded.insert(Index::new("extra"), values[pad % values.len()].clone());
            prop_assert_eq!(satisfies(m, &padded, &case.formula).unwrap(), denoted.contains(&minimal));
        }
    }

    #[test]
    fn closed_formula_bridge(case in logic_case()) {
        let free: Vec<String> = case.formula.free_vars().iter().map(|i| i.to_string()).collect();
        let closed = if free.is_empty() {
            case.formula.clone()
        } else {
            Formula::exists(free.iter().map(String::as_str), case.formula.clone())
        };
        let denoted = denote_oracle(&case.m, &closed).unwrap();
        prop_assert!(denoted.signature().is_empty());
        let truth = satisfies(&case.m, &etr::Tuple::new(), &closed).unwrap();
        prop_assert_eq!(!denoted.is_empty(), truth);
        prop_assert_eq!(denote(&closed, &case.m).unwrap(), denoted);
    }

    #[test]
    fn one_projection_equals_nested_quantifiers(case in logic_case()) {
        let joint = Formula::exists(["x", "y"], case.formula.clone());
        let nested = Formula::exists(["x"], Formula::exists(["y"], case.formula.clone()));
        let a = denote(&joint, &case.m).unwrap();
        prop_assert_eq!(&a, &denote(&nested, &case.m).unwrap());
        prop_assert_eq!(&a, &denote_oracle(&case.m, &nested).unwrap());
    }

    #[test]
    fn conjunction_of_compound_formulas(
        (m, f, g) in (1usize..=3, prop::collection::vec(0usize..=2, 1..=3))
            .prop_flat_map(|(size, arities)| {
                let extents = prop::collection::vec(prop::collection::vec(any::<u32>(), 0..=12), arities.len());
                (Just(size), Just(arities.clone()), extents, formula(arities.clone()), formula(arities))
            })
            .prop_map(|(size, arities, extents, f, g)| (interpretation(size, &arities, &extents), f, g))
    ) {
        let f = Formula::not(f);
        let g = Formula::exists(["z"], g);
        let both = Formula::conjunction(vec![f.clone(), g.clone()]);
        let joined = denote(&f, &m).unwrap().join(&denote(&g, &m).unwrap()).unwrap();
        prop_assert_eq!(&joined, &denote_oracle(&m, &both).unwrap());
        prop_assert_eq!(joined, denote(&both, &m).unwrap());
    }

    #[test]
    fn printed_formulas_parse_back(case in logic_case()) {
        let text = case.formula.to_string();
        prop_assert_eq!(parse_formula(&text).unwrap(), case.formula.normalized(), "{}", text);
    }

    #[test]
    fn compiled_expression_is_well_typed(case in logic_case()) {
        let e = compile(&case.formula, &case.m).unwrap();
        let sig = e.signature(&case.m).unwrap();
        prop_assert_eq!(sig.key_set(), case.formula.free_vars());
    }
}
