use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use indexmap::IndexMap;

use crate::algebra::Environment;
use crate::domain::{DomainId, Index, Registry, Tuple, Value};
use crate::error::{Error, Result};
use crate::logic::Interpretation;
use crate::pattern::{Pattern, Term};
use crate::relation::Relation;

use super::builtin::materialize_builtin;
use super::scheme::Scheme;

/// Name of the scheme file inside a directory written by [`Instance::write_dir`].
pub const SCHEME_FILE: &str = "scheme.toml";

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// A scheme populated with extents. Builtins are materialized when the
/// instance is created.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    scheme: Scheme,
    extents: IndexMap<String, Relation>,
    builtins: IndexMap<String, Relation>,
}

impl Instance {
    /// An instance with every stored relation empty.
    pub fn new(scheme: Scheme) -> Result<Self> {
        let mut extents = IndexMap::new();
        for (name, _) in scheme.relations() {
            extents.insert(
                name.to_string(),
                Relation::empty(scheme.relation_signature(name)?),
            );
        }
        let mut builtins = IndexMap::new();
        for decl in scheme.builtins() {
            builtins.insert(
                decl.name.clone(),
                materialize_builtin(decl, scheme.registry())?,
            );
        }
        Ok(Instance {
            scheme,
            extents,
            builtins,
        })
    }

    /// Loads `scheme` and, for every stored relation `r`, the file
    /// `data_dir/r.csv` if present.
    pub fn load(
        scheme: impl AsRef<Path>,
        data_dir: impl AsRef<Path>,
        delimiter: u8,
    ) -> Result<Self> {
        let mut instance = Instance::new(Scheme::load(scheme)?)?;
        let names: Vec<String> = instance
            .scheme
            .relations()
            .map(|(n, _)| n.to_string())
            .collect();
        for name in names {
            let path = data_dir.as_ref().join(format!("{name}.csv"));
            if path.exists() {
                instance.load_relation(&name, &path, delimiter)?;
            }
        }
        Ok(instance)
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn extent(&self, name: &str) -> Option<&Relation> {
        self.extents.get(name).or_else(|| self.builtins.get(name))
    }

    pub fn load_relation(
        &mut self,
        name: &str,
        path: impl AsRef<Path>,
        delimiter: u8,
    ) -> Result<()> {
        let path = path.as_ref();
        let file = fs::File::open(path).map_err(|e| io_error(path, e))?;
        self.load_relation_from(name, file, delimiter)
    }

    /// Replaces the extent of `name` with the rows of a delimited file whose
    /// first row names the relation's attributes in any order.
    pub fn load_relation_from(
        &mut self,
        name: &str,
        reader: impl Read,
        delimiter: u8,
    ) -> Result<()> {
        let attrs = match self.scheme.relations().find(|(n, _)| *n == name) {
            Some((_, attrs)) => attrs.to_vec(),
            None => return Err(Error::UnknownRelation(name.to_string())),
        };
        let parse_error = |e: csv::Error| Error::DataParse {
            relation: name.to_string(),
            message: e.to_string(),
        };
        let mut rdr = csv::ReaderBuilder::new()
            .delimiter(delimiter)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let header: Vec<Index> = rdr
            .headers()
            .map_err(parse_error)?
            .iter()
            .map(Index::new)
            .collect();
        let mut sorted_header = header.clone();
        sorted_header.sort();
        let mut sorted_attrs = attrs.clone();
        sorted_attrs.sort();
        if sorted_header != sorted_attrs {
            let join = |v: &[Index]| {
                v.iter()
                    .map(Index::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::HeaderMismatch {
                relation: name.to_string(),
                expected: join(&attrs),
                found: join(&header),
            });
        }
        let domains: Vec<DomainId> = header
            .iter()
            .map(|a| self.scheme.attributes()[a].clone())
            .collect();
        let registry = self.scheme.registry();
        let mut extent = Vec::new();
        for (n, record) in rdr.records().enumerate() {
            let record = record.map_err(parse_error)?;
            let mut t = Tuple::new();
            for ((attr, domain), cell) in header.iter().zip(&domains).zip(record.iter()) {
                if !registry.domain(domain)?.contains(cell) {
                    return Err(Error::ValueOutOfDomain {
                        row: n + 1,
                        column: attr.to_string(),
                        value: cell.to_string(),
                        domain: domain.to_string(),
                    });
                }
                t.insert(attr.clone(), Value::new(domain.clone(), cell));
            }
            extent.push(t);
        }
        let relation = Relation::new(self.scheme.relation_signature(name)?, extent)?;
        self.extents.insert(name.to_string(), relation);
        Ok(())
    }

    /// Writes one relation as delimited text: the attribute header in scheme
    /// order, then the rows sorted.
    pub fn write_relation(&self, name: &str, writer: impl Write, delimiter: u8) -> Result<()> {
        let relation = self
            .extents
            .get(name)
            .ok_or_else(|| Error::UnknownRelation(name.to_string()))?;
        let attrs = self
            .scheme
            .attribute_order(name)
            .expect("stored relation has attributes");
        let mut rows: Vec<Vec<&str>> = relation
            .extent()
            .iter()
            .map(|t| attrs.iter().map(|a| t.get(a).unwrap().literal()).collect())
            .collect();
        rows.sort();
        let mut w = csv::WriterBuilder::new()
            .delimiter(delimiter)
            .from_writer(writer);
        let out_err = |e: csv::Error| Error::Io {
            path: name.to_string(),
            message: e.to_string(),
        };
        w.write_record(attrs.iter().map(Index::as_str))
            .map_err(out_err)?;
        for row in rows {
            w.write_record(row).map_err(out_err)?;
        }
        w.flush().map_err(|e| io_error(Path::new(name), e))?;
        Ok(())
    }

    /// Writes `scheme.toml` and one `<relation>.csv` per stored relation.
    pub fn write_dir(&self, dir: impl AsRef<Path>, delimiter: u8) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
        let scheme_path = dir.join(SCHEME_FILE);
        fs::write(&scheme_path, self.scheme.to_toml()).map_err(|e| io_error(&scheme_path, e))?;
        for name in self.extents.keys() {
            let path = dir.join(format!("{name}.csv"));
            let file = fs::File::create(&path).map_err(|e| io_error(&path, e))?;
            self.write_relation(name, file, delimiter)?;
        }
        Ok(())
    }

    /// The instance as a single-domain interpretation. Each relation whose
    /// attributes all range over the chosen domain becomes a predicate
    /// indexed 0..k-1 in scheme attribute order.
    ///
    /// With `domain` unset the instance must declare exactly one domain.
    pub fn as_interpretation(&self, domain: Option<&str>) -> Result<Interpretation> {
        let registry = self.scheme.registry();
        let chosen = match domain {
            Some(name) => registry.domain(&DomainId::new(name))?.clone(),
            None if registry.len() == 1 => registry.domains().next().unwrap().clone(),
            None => {
                let names: Vec<&str> = registry.domains().map(|d| d.id().as_str()).collect();
                return Err(Error::MixedDomains(format!(
                    "the instance declares {} domains ({})",
                    names.len(),
                    names.join(", ")
                )));
            }
        };
        let mut m = Interpretation::new(chosen.clone());
        for (name, relation) in self.extents.iter().chain(&self.builtins) {
            if relation.signature().values().any(|d| d != chosen.id()) {
                continue;
            }
            let attrs = self
                .scheme
                .attribute_order(name)
                .expect("relation has attributes");
            let entries = attrs
                .iter()
                .enumerate()
                .map(|(n, a)| (a.clone(), Term::Indeterminate(Index::position(n))))
                .collect();
            let renumber = Pattern::infer(entries, relation.signature())?;
            m.add_predicate(name, relation.rename(&renumber)?)?;
        }
        for (symbol, value) in self.scheme.constants() {
            if value.domain == *chosen.id() {
                m.add_constant(symbol, value.literal())?;
            }
        }
        Ok(m)
    }
}

impl Environment for Instance {
    fn relation(&self, name: &str) -> Option<&Relation> {
        self.extent(name)
    }

    fn registry(&self) -> &Registry {
        self.scheme.registry()
    }
}
