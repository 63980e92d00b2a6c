use std::fmt::Write;

use etr::logic::{denote, denote_oracle, parse_formula};
use etr::{Error, Instance, JoinStrategy, Relation};

use crate::algebra::parse_algebra;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Logic,
    Algebra,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Output {
    #[default]
    Table,
    Count,
}

#[derive(Clone, Debug, Default)]
pub struct QueryRequest {
    pub source: String,
    pub mode: Mode,
    pub check_oracle: bool,
    pub output: Output,
    /// Domain of quantification for logic queries over a multi-domain
    /// instance.
    pub domain: Option<String>,
}

impl QueryRequest {
    pub fn logic(source: impl Into<String>) -> Self {
        QueryRequest {
            source: source.into(),
            mode: Mode::Logic,
            ..Default::default()
        }
    }

    pub fn algebra(source: impl Into<String>) -> Self {
        QueryRequest {
            source: source.into(),
            mode: Mode::Algebra,
            ..Default::default()
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum QueryError {
    #[error("{message}")]
    Engine { error: Error, message: String },
    #[error("oracle mismatch: engine returned {engine} rows, oracle returned {oracle} rows")]
    OracleMismatch { engine: usize, oracle: usize },
}

impl QueryError {
    fn engine(error: Error, source: &str) -> Self {
        let message = match &error {
            Error::Syntax(e) => e.render(source),
            other => other.to_string(),
        };
        QueryError::Engine { error, message }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            QueryError::Engine { error, .. } if error.is_syntax() => 1,
            QueryError::Engine { .. } => 2,
            QueryError::OracleMismatch { .. } => 3,
        }
    }
}

/// Evaluates a request and returns its answer without rendering.
pub fn evaluate(instance: &Instance, request: &QueryRequest) -> Result<Relation, QueryError> {
    let src = request.source.as_str();
    let wrap = |e| QueryError::engine(e, src);
    let (result, check) = match request.mode {
        Mode::Logic => {
            let formula = parse_formula(src).map_err(|e| wrap(e.into()))?;
            let m = instance
                .as_interpretation(request.domain.as_deref())
                .map_err(wrap)?;
            let result = denote(&formula, &m).map_err(wrap)?;
            let check = match request.check_oracle {
                true => Some(denote_oracle(&m, &formula).map_err(wrap)?),
                false => None,
            };
            (result, check)
        }
        Mode::Algebra => {
            let expr = parse_algebra(src, instance).map_err(wrap)?;
            let result = expr.evaluate(instance).map_err(wrap)?;
            let check = match request.check_oracle {
                true => Some(
                    expr.evaluate_with(instance, JoinStrategy::Cylinder)
                        .map_err(wrap)?,
                ),
                false => None,
            };
            (result, check)
        }
    };
    if let Some(oracle) = check {
        if oracle != result {
            return Err(QueryError::OracleMismatch {
                engine: result.len(),
                oracle: oracle.len(),
            });
        }
    }
    Ok(result)
}

pub fn run_query(instance: &Instance, request: &QueryRequest) -> Result<String, QueryError> {
    let result = evaluate(instance, request)?;
    Ok(match request.output {
        Output::Table => render_table(&result),
        Output::Count => format!("{}\n", result.len()),
    })
}

/// Aligned columns: the indexes in sorted order, a rule, then the rows
/// sorted by their rendered values.
pub fn render_table(relation: &Relation) -> String {
    let (columns, rows) = relation.sorted_rows();
    let header: Vec<String> = columns.iter().map(|c| c.to_string()).collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(&header)).unwrap();
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    writeln!(out, "{}", rule.join("-+-")).unwrap();
    for row in &rows {
        writeln!(out, "{}", line(row)).unwrap();
    }
    let n = rows.len();
    writeln!(out, "({n} {})", if n == 1 { "row" } else { "rows" }).unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use etr::Scheme;

    fn family() -> Instance {
        let scheme = Scheme::parse(
            "[domains]\nperson = [\"mary\", \"john\", \"alan\", \"joan\"]\n\
             [attributes]\nparent = \"person\"\nchild = \"person\"\n\
             [relations]\npc = [\"parent\", \"child\"]\n",
        )
        .unwrap();
        let mut inst = Instance::new(scheme).unwrap();
        let rows = "parent,child\nmary,john\njohn,alan\nmary,joan\n";
        inst.load_relation_from("pc", rows.as_bytes(), b',')
            .unwrap();
        inst
    }

    #[test]
    fn table_layout() {
        let out = run_query(&family(), &QueryRequest::algebra("pc")).unwrap();
        assert_eq!(
            out,
            "child | parent\n------+-------\nalan  | john\njoan  | mary\njohn  | mary\n(3 rows)\n"
        );
    }

    #[test]
    fn nullary_results() {
        let inst = family();
        let yes = run_query(&inst, &QueryRequest::logic("pc('mary', 'john')")).unwrap();
        assert_eq!(yes, "\n\n\n(1 row)\n");
        let no = run_query(&inst, &QueryRequest::logic("pc('john', 'mary')")).unwrap();
        assert_eq!(no, "\n\n(0 rows)\n");
    }

    #[test]
    fn oracle_check_agrees() {
        let inst = family();
        let mut req = QueryRequest::logic("exists y. pc(x,y) & pc(y,z)");
        let plain = run_query(&inst, &req).unwrap();
        req.check_oracle = true;
        assert_eq!(run_query(&inst, &req).unwrap(), plain);
        assert!(plain.contains("mary | alan"));
    }

    #[test]
    fn count_and_exit_codes() {
        let inst = family();
        let mut req = QueryRequest::algebra("~pc");
        req.output = Output::Count;
        assert_eq!(run_query(&inst, &req).unwrap(), "13\n");
        assert_eq!(
            run_query(&inst, &QueryRequest::logic("pc(x,"))
                .unwrap_err()
                .exit_code(),
            1
        );
        assert_eq!(
            run_query(&inst, &QueryRequest::logic("pc(x)"))
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            run_query(&inst, &QueryRequest::algebra("zz"))
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            QueryError::OracleMismatch {
                engine: 1,
                oracle: 2
            }
            .exit_code(),
            3
        );
    }

    #[test]
    fn syntax_errors_show_position() {
        let err = run_query(&family(), &QueryRequest::logic("pc(x y)")).unwrap_err();
        assert!(err.to_string().contains("column 6"), "{err}");
        assert!(err.to_string().contains("pc(x y)"));
    }
}
