use serde::{Deserialize, Serialize};

use super::closure;
use super::perm::Perm;
use crate::error::{Error, Result};

/// A small group given by permutation generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogGroup {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
}

impl CatalogGroup {
    /// Builds the group and checks its order against `declared_order` when given.
    pub fn new(
        name: impl Into<String>,
        degree: usize,
        generators: Vec<Perm>,
        declared_order: Option<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "{name}: generator {g} has degree {} instead of {degree}",
                g.degree()
            )));
        }
        let elements = closure(degree, &generators, usize::MAX)?;
        if let Some(order) = declared_order {
            if elements.len() != order {
                return Err(Error::InvalidPermutation(format!(
                    "{name}: declared order {order}, generated order {}",
                    elements.len()
                )));
            }
        }
        Ok(CatalogGroup {
            name,
            degree,
            generators,
            elements,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Search space of small groups for homomorphism enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCatalog {
    groups: Vec<CatalogGroup>,
}

fn cycle(n: usize) -> Perm {
    Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("cycle")
}

fn entry(name: &str, degree: usize, gens: &[&str], order: usize) -> CatalogGroup {
    let gens = gens
        .iter()
        .map(|g| Perm::parse(degree, g).expect("builtin permutation"))
        .collect();
    CatalogGroup::new(name, degree, gens, Some(order)).expect("builtin group")
}

impl GroupCatalog {
    pub fn new(groups: Vec<CatalogGroup>) -> Self {
        GroupCatalog { groups }
    }

    pub fn groups(&self) -> &[CatalogGroup] {
        &self.groups
    }

    pub fn cyclic(q: usize) -> CatalogGroup {
        CatalogGroup::new(format!("C{q}"), q, vec![cycle(q)], Some(q)).expect("cyclic group")
    }

    /// `C_p × C_p` acting on two disjoint p-cycles' worth of points.
    pub fn elementary_abelian_square(p: usize) -> CatalogGroup {
        let n = 2 * p;
        let a = Perm::from_images(
            (0..n as u32)
                .map(|i| if (i as usize) < p { (i + 1) % p as u32 } else { i })
                .collect(),
        )
        .expect("first factor");
        let b = Perm::from_images(
            (0..n as u32)
                .map(|i| {
                    if (i as usize) < p {
                        i
                    } else {
                        p as u32 + (i - p as u32 + 1) % p as u32
                    }
                })
                .collect(),
        )
        .expect("second factor");
        CatalogGroup::new(format!("C{p}xC{p}"), n, vec![a, b], Some(p * p)).expect("square")
    }

    /// Parses a manifest with one group per line: `name degree perm1 perm2 …`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse_manifest(text: &str) -> Result<Self> {
        let mut groups = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Catalog { line: line_no, msg };
            let mut head = line.splitn(3, char::is_whitespace);
            let name = head.next().ok_or_else(|| err("missing name".into()))?;
            let degree: usize = head
                .next()
                .ok_or_else(|| err("missing degree".into()))?
                .parse()
                .map_err(|_| err("degree is not a number".into()))?;
            let rest = head.next().unwrap_or("").trim();
            let gens = split_permutations(rest)
                .map_err(err)?
                .into_iter()
                .map(|s| Perm::parse(degree, &s).map_err(|e| err(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            let group =
                CatalogGroup::new(name, degree, gens, None).map_err(|e| err(e.to_string()))?;
            groups.push(group);
        }
        Ok(GroupCatalog { groups })
    }

    /// Keeps the groups of order at most `max_order`.
    pub fn restricted(&self, max_order: usize) -> Self {
        GroupCatalog {
            groups: self
                .groups
                .iter()
                .filter(|g| g.order() <= max_order)
                .cloned()
                .collect(),
        }
    }

    pub fn by_name(&self, name: &str) -> Option<&CatalogGroup> {
        self.groups.iter().find(|g| g.name == name)
    }
}

/// Splits `(1 2) (3 4)(5 6) ()` into one string per generator. Adjacent
/// cycles without whitespace belong to the same generator.
fn split_permutations(text: &str) -> std::result::Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut depth = 0;
    for c in text.chars() {
        match c {
            '(' if depth == 0 => {
                depth = 1;
                current.push(c);
            }
            ')' if depth == 1 => {
                depth = 0;
                current.push(c);
            }
            '(' | ')' => return Err("unbalanced parentheses".into()),
            c if c.is_whitespace() && depth == 0 => {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
            c if depth == 0 => return Err(format!("unexpected `{c}` outside a cycle")),
            c => current.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

impl Default for GroupCatalog {
    fn default() -> Self {
        let mut groups: Vec<CatalogGroup> = (2..=12).map(GroupCatalog::cyclic).collect();
        groups.extend([2, 3, 5].map(GroupCatalog::elementary_abelian_square));
        groups.push(entry("D4", 4, &["(1 2 3 4)", "(1 3)"], 8));
        groups.push(entry("D5", 5, &["(1 2 3 4 5)", "(2 5)(3 4)"], 10));
        groups.push(entry("S3", 3, &["(1 2)", "(1 2 3)"], 6));
        groups.push(entry("S4", 4, &["(1 2)", "(1 2 3 4)"], 24));
        groups.push(entry("A4", 4, &["(1 2 3)", "(2 3 4)"], 12));
        GroupCatalog { groups }
    }
}
