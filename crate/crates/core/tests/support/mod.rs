//! Random small instances shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::subsequence;

use etr::{
    Domain, Formula, Index, Interpretation, LogicTerm, Registry, Relation, Signature, Tuple,
};

pub const UNIVERSE: [&str; 4] = ["a", "b", "c", "d"];
pub const VARIABLES: [&str; 4] = ["x", "y", "z", "w"];

/// Disjoint domains of one to three literals each and a global typing of
/// the index universe.
#[derive(Clone, Debug)]
pub struct World {
    pub registry: Registry,
    pub typing: Signature,
}

/// A subset of the universe (bit mask) and up to ten tuple choices.
#[derive(Clone, Debug)]
pub struct RelSpec {
    pub mask: u8,
    pub picks: Vec<u32>,
}

pub fn world() -> impl Strategy<Value = World> {
    (
        prop::collection::vec(1usize..=3, 1..=2),
        prop::collection::vec(any::<usize>(), UNIVERSE.len()),
    )
        .prop_map(|(sizes, choice)| {
            let domains: Vec<Domain> = sizes
                .iter()
                .enumerate()
                .map(|(n, &size)| {
                    let lits: Vec<String> = (0..size).map(|k| format!("v{n}_{k}")).collect();
                    Domain::new(etr::DomainId::new(format!("d{n}")), lits).unwrap()
                })
                .collect();
            let typing = UNIVERSE
                .iter()
                .zip(choice)
                .map(|(i, c)| (Index::new(i), domains[c % domains.len()].id().clone()))
                .collect();
            World {
                registry: Registry::with_domains(domains).unwrap(),
                typing,
            }
        })
}

pub fn rel_spec() -> impl Strategy<Value = RelSpec> {
    (0u8..16, prop::collection::vec(any::<u32>(), 0..=10))
        .prop_map(|(mask, picks)| RelSpec { mask, picks })
}

pub fn mask_indexes(mask: u8) -> Vec<Index> {
    UNIVERSE
        .iter()
        .enumerate()
        .filter(|(n, _)| mask & (1 << n) != 0)
        .map(|(_, i)| Index::new(i))
        .collect()
}

impl World {
    pub fn signature(&self, mask: u8) -> Signature {
        self.typing.restrict(&mask_indexes(mask))
    }

    pub fn relation(&self, spec: &RelSpec) -> Relation {
        self.relation_over(self.signature(spec.mask), &spec.picks)
    }

    pub fn relation_over(&self, signature: Signature, picks: &[u32]) -> Relation {
        let cart: Vec<Tuple> = self.registry.cart_iter(&signature).unwrap().collect();
        let extent = picks.iter().map(|p| cart[*p as usize % cart.len()].clone());
        Relation::new(signature, extent).unwrap()
    }

    pub fn full(&self, signature: Signature) -> Relation {
        Relation::full(signature, &self.registry).unwrap()
    }
}

/// An interpretation over D = {e0, ..} and a formula over its predicates.
#[derive(Clone, Debug)]
pub struct LogicCase {
    pub m: Interpretation,
    pub formula: Formula,
}

fn term() -> impl Strategy<Value = LogicTerm> {
    prop_oneof![
        5 => prop::sample::select(VARIABLES.to_vec()).prop_map(LogicTerm::var),
        1 => Just(LogicTerm::constant("e0")),
    ]
}

/// Formulas of depth at most four over predicates `p0..` with the given
/// arities and at most four variables.
pub fn formula(arities: Vec<usize>) -> impl Strategy<Value = Formula> {
    let leaf = (0..arities.len()).prop_flat_map(move |p| {
        prop::collection::vec(term(), arities[p])
            .prop_map(move |args| Formula::atom(&format!("p{p}"), args))
    });
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Formula::conjunction),
            (subsequence(VARIABLES.to_vec(), 1..=2), inner.clone())
                .prop_map(|(bound, body)| Formula::exists(bound, body)),
            inner.prop_map(Formula::not),
        ]
    })
}

pub fn interpretation(size: usize, arities: &[usize], extents: &[Vec<u32>]) -> Interpretation {
    let lits: Vec<String> = (0..size).map(|k| format!("e{k}")).collect();
    let mut m = Interpretation::new(Domain::new("d", &lits).unwrap());
    for (p, (&arity, picks)) in arities.iter().zip(extents).enumerate() {
        let total = size.pow(arity as u32);
        let rows = picks.iter().map(|pick| {
            let mut code = *pick as usize % total;
            let mut row = Vec::with_capacity(arity);
            for _ in 0..arity {
                row.push(lits[code % size].clone());
                code /= size;
            }
            row
        });
        m.add_predicate_rows(&format!("p{p}"), arity, rows).unwrap();
    }
    m
}

/// |D| ≤ 4, one to three predicates of arity ≤ 3 with random extents, and
/// a random formula over them.
pub fn logic_case() -> impl Strategy<Value = LogicCase> {
    (1usize..=4, prop::collection::vec(0usize..=3, 1..=3)).prop_flat_map(|(size, arities)| {
        let extents =
            prop::collection::vec(prop::collection::vec(any::<u32>(), 0..=24), arities.len());
        (Just(size), Just(arities.clone()), extents, formula(arities)).prop_map(
            |(size, arities, extents, formula)| LogicCase {
                m: interpretation(size, &arities, &extents),
                formula,
            },
        )
    })
}
