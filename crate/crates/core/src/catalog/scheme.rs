use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::domain::{Domain, DomainId, Index, Registry, Signature, Value};
use crate::error::{Error, Result};

use super::builtin::{BuiltinDecl, BuiltinKind};

/// Scheme file layout, as written on disk.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    domains: IndexMap<String, Vec<Literal>>,
    #[serde(default)]
    attributes: IndexMap<String, String>,
    #[serde(default)]
    relations: IndexMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "IndexMap::is_empty")]
    constants: IndexMap<String, ConstantEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    builtins: Vec<BuiltinEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum Literal {
    Int(i64),
    Str(String),
}

impl Literal {
    fn into_string(self) -> String {
        match self {
            Literal::Int(n) => n.to_string(),
            Literal::Str(s) => s,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantEntry {
    domain: String,
    literal: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuiltinEntry {
    name: String,
    kind: BuiltinKind,
    attributes: Vec<String>,
}

/// A validated database scheme: disjoint domains, the global attribute
/// typing, the attribute list of each relation, constants and builtins.
#[derive(Clone, Debug, PartialEq)]
pub struct Scheme {
    registry: Registry,
    attributes: IndexMap<Index, DomainId>,
    relations: IndexMap<String, Vec<Index>>,
    constants: IndexMap<String, Value>,
    builtins: Vec<BuiltinDecl>,
}

impl Scheme {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Scheme::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: SchemeFile =
            toml::from_str(text).map_err(|e| Error::SchemeParse(e.to_string()))?;

        let mut registry = Registry::new();
        for (name, literals) in file.domains {
            let literals: Vec<String> = literals.into_iter().map(Literal::into_string).collect();
            registry.register(Domain::new(name.as_str(), literals)?)?;
        }

        let mut attributes = IndexMap::new();
        for (attr, domain) in file.attributes {
            let id = DomainId::new(&domain);
            if registry.domain(&id).is_err() {
                return Err(Error::UnknownDomainRef {
                    attribute: attr,
                    domain,
                });
            }
            attributes.insert(Index::new(&attr), id);
        }

        let mut relations = IndexMap::new();
        for (name, attrs) in file.relations {
            let mut list: Vec<Index> = Vec::with_capacity(attrs.len());
            for a in attrs {
                let idx = Index::new(&a);
                if !attributes.contains_key(&idx) {
                    return Err(Error::UnknownAttribute {
                        relation: name,
                        attribute: a,
                    });
                }
                if list.contains(&idx) {
                    return Err(Error::DuplicateAttribute {
                        relation: name,
                        attribute: a,
                    });
                }
                list.push(idx);
            }
            relations.insert(name, list);
        }

        let mut constants = IndexMap::new();
        for (symbol, entry) in file.constants {
            let value = registry
                .value(&DomainId::new(&entry.domain), &entry.literal)
                .map_err(|e| Error::InvalidConstant {
                    symbol: symbol.clone(),
                    message: e.to_string(),
                })?;
            constants.insert(symbol, value);
        }

        let mut builtins: Vec<BuiltinDecl> = Vec::new();
        for entry in file.builtins {
            if relations.contains_key(&entry.name) || builtins.iter().any(|b| b.name == entry.name)
            {
                return Err(Error::DuplicateRelation(entry.name));
            }
            let attrs: Vec<Index> = entry.attributes.iter().map(Index::new).collect();
            let decl = BuiltinDecl::new(&entry.name, entry.kind, &attrs, &attributes)?;
            builtins.push(decl);
        }

        Ok(Scheme {
            registry,
            attributes,
            relations,
            constants,
            builtins,
        })
    }

    /// The scheme in its file syntax. Parsing the result gives back an
    /// equal scheme.
    pub fn to_toml(&self) -> String {
        let file = SchemeFile {
            domains: self
                .registry
                .domains()
                .map(|d| {
                    let lits = d.literals().map(|l| Literal::Str(l.to_string())).collect();
                    (d.id().to_string(), lits)
                })
                .collect(),
            attributes: self
                .attributes
                .iter()
                .map(|(a, d)| (a.to_string(), d.to_string()))
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(r, attrs)| (r.clone(), attrs.iter().map(Index::to_string).collect()))
                .collect(),
            constants: self
                .constants
                .iter()
                .map(|(s, v)| {
                    let entry = ConstantEntry {
                        domain: v.domain.to_string(),
                        literal: v.literal().to_string(),
                    };
                    (s.clone(), entry)
                })
                .collect(),
            builtins: self
                .builtins
                .iter()
                .map(|b| BuiltinEntry {
                    name: b.name.clone(),
                    kind: b.kind,
                    attributes: b.attributes.iter().map(Index::to_string).collect(),
                })
                .collect(),
        };
        toml::to_string(&file).expect("scheme serializes")
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    /// The global typing of attributes, in declaration order.
    pub fn attributes(&self) -> &IndexMap<Index, DomainId> {
        &self.attributes
    }

    pub fn attribute_domain(&self, attribute: &Index) -> Option<&DomainId> {
        self.attributes.get(attribute)
    }

    /// Stored relations and their attribute lists, in declaration order.
    pub fn relations(&self) -> impl Iterator<Item = (&str, &[Index])> {
        self.relations
            .iter()
            .map(|(n, a)| (n.as_str(), a.as_slice()))
    }

    pub fn builtins(&self) -> &[BuiltinDecl] {
        &self.builtins
    }

    pub fn constants(&self) -> &IndexMap<String, Value> {
        &self.constants
    }

    /// Attribute order of a stored relation or builtin.
    pub fn attribute_order(&self, relation: &str) -> Option<&[Index]> {
        self.relations.get(relation).map(Vec::as_slice).or_else(|| {
            self.builtins
                .iter()
                .find(|b| b.name == relation)
                .map(|b| b.attributes.as_slice())
        })
    }

    /// τ restricted to the attributes of `relation`.
    pub fn relation_signature(&self, relation: &str) -> Result<Signature> {
        let attrs = self
            .attribute_order(relation)
            .ok_or_else(|| Error::UnknownRelation(relation.to_string()))?;
        Ok(attrs
            .iter()
            .map(|a| (a.clone(), self.attributes[a].clone()))
            .collect())
    }
}
