//! Compilation of formulas to relational algebra.
//!
//! Each connective maps to one operation: an atom filters its predicate's
//! relation by the argument pattern, a conjunction joins the denotations of
//! its conjuncts, an existential projects its bound variables away, and a
//! negation complements within the free variables of its body.

use crate::algebra::Expr;
use crate::error::Result;
use crate::pattern::{Pattern, Term};
use crate::relation::Relation;

use super::formula::{Formula, LogicTerm};
use super::semantics::Interpretation;

pub fn compile(formula: &Formula, m: &Interpretation) -> Result<Expr> {
    m.check(formula)?;
    compile_checked(formula, m)
}

fn compile_checked(formula: &Formula, m: &Interpretation) -> Result<Expr> {
    Ok(match formula {
        Formula::Atom { predicate, args } => {
            let terms = args
                .iter()
                .map(|a| match a {
                    LogicTerm::Var(x) => Ok(Term::Indeterminate(x.clone())),
                    LogicTerm::Const(c) => m.constant(c).map(Term::Ground),
                })
                .collect::<Result<Vec<_>>>()?;
            Expr::base(predicate.clone()).filter(Pattern::positional(terms, m.domain_id()))
        }
        Formula::Conjunction(cs) => Expr::Join(
            cs.iter()
                .map(|c| compile_checked(c, m))
                .collect::<Result<_>>()?,
        ),
        Formula::Exists { bound, body } => {
            let kept = body.free_vars().into_iter().filter(|x| !bound.contains(x));
            compile_checked(body, m)?.project(kept)
        }
        Formula::Not(body) => compile_checked(body, m)?.complement(),
    })
}

/// The relation denoted by `formula`, computed through the algebra.
pub fn denote(formula: &Formula, m: &Interpretation) -> Result<Relation> {
    compile(formula, m)?.evaluate(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Domain, Index, Value};
    use crate::logic::{denote_oracle, parse_formula};

    fn rho_sigma() -> Interpretation {
        let mut m = Interpretation::new(Domain::new("D", ["a", "b", "c"]).unwrap());
        m.add_predicate_rows("r", 2, [["a", "c"], ["c", "b"], ["b", "a"], ["b", "b"]])
            .unwrap();
        m.add_predicate_rows("s", 2, [["a", "b"], ["b", "c"], ["c", "a"]])
            .unwrap();
        m.add_predicate_rows("q", 2, [["a", "a"], ["b", "a"], ["c", "b"]])
            .unwrap();
        m
    }

    #[test]
    fn conjunction_compiles_to_join() {
        let m = rho_sigma();
        let e = compile(&parse_formula("r(x,y) & s(y,z)").unwrap(), &m).unwrap();
        assert_eq!(e.to_string(), "r:[x,y] |x| s:[y,z]");
    }

    #[test]
    fn exists_compiles_to_projection() {
        let m = rho_sigma();
        let e = compile(&parse_formula("exists y. r(x,y) & r(y,z)").unwrap(), &m).unwrap();
        assert_eq!(e.to_string(), "project{x,z}(r:[x,y] |x| r:[y,z])");
    }

    #[test]
    fn constant_becomes_ground_term() {
        let m = rho_sigma();
        let e = compile(&parse_formula("q(x,'a')").unwrap(), &m).unwrap();
        match &e {
            Expr::Filter { input, pattern } => {
                assert_eq!(**input, Expr::base("q"));
                assert_eq!(
                    pattern.entries().get(&Index::position(1)),
                    Some(&Term::Ground(Value::new("D", "a")))
                );
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(e.to_string(), "q:[x,'a']");
        let r = e.evaluate(&m).unwrap();
        assert_eq!(r.len(), 2);
    }

    #[test]
    fn negation_compiles_to_complement() {
        let m = rho_sigma();
        let f = parse_formula("!r(x,y)").unwrap();
        assert_eq!(compile(&f, &m).unwrap().to_string(), "~r:[x,y]");
        assert_eq!(denote(&f, &m).unwrap().len(), 5);
    }

    #[test]
    fn compile_errors() {
        let m = rho_sigma();
        assert!(compile(&parse_formula("t(x)").unwrap(), &m).is_err());
        assert!(compile(&parse_formula("r(x)").unwrap(), &m).is_err());
        assert!(compile(&parse_formula("r(x,'zz')").unwrap(), &m).is_err());
    }

    #[test]
    fn agrees_with_oracle_on_samples() {
        let m = rho_sigma();
        for src in [
            "r(x,y) & s(y,z)",
            "exists y. r(x,y) & !s(y,x)",
            "!(exists x y. r(x,y) & q(y,x))",
            "r(x,x)",
            "exists z. r(x,y)",
            "q(x,'a') & !r(x,'c')",
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(
                denote(&f, &m).unwrap(),
                denote_oracle(&m, &f).unwrap(),
                "{src}"
            );
        }
    }
}
