//! Finite quotients of free groups given by permutation images, and a search
//! for such quotients over a catalog of small groups.

mod catalog;
mod perm;

pub use catalog::{CatalogGroup, GroupCatalog};
pub use perm::Perm;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::FinitePresentation;
use crate::words::Word;

pub const DEFAULT_ORDER_BOUND: usize = 100;

/// Elements of the group generated by `gens`, identity first, in breadth-first
/// order of right multiplication by the generators.
pub(crate) fn closure(degree: usize, gens: &[Perm], bound: usize) -> Result<Vec<Perm>> {
    Ok(regular_action(degree, gens, bound)?.0)
}

/// Closure plus the right-regular action table `table[g][i] = index(e_i · g)`.
fn regular_action(
    degree: usize,
    gens: &[Perm],
    bound: usize,
) -> Result<(Vec<Perm>, Vec<Vec<u32>>)> {
    let id = Perm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut table = vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gen) in gens.iter().enumerate() {
            let next = elements[i].then(gen);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if elements.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    let j = elements.len();
                    index.insert(next.clone(), j);
                    elements.push(next);
                    queue.push_back(j);
                    j
                }
            };
            table[g].push(j as u32);
        }
    }
    Ok((elements, table))
}

/// A homomorphism from a free group onto the permutation group generated by
/// the generator images.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    degree: usize,
    images: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Vec<Vec<u32>>,
}

impl PartialEq for FiniteQuotient {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.images == other.images
    }
}

impl Eq for FiniteQuotient {}

impl FiniteQuotient {
    pub fn new(degree: usize, images: Vec<Perm>) -> Result<Self> {
        FiniteQuotient::with_bound(degree, images, DEFAULT_ORDER_BOUND)
    }

    pub fn with_bound(degree: usize, images: Vec<Perm>, bound: usize) -> Result<Self> {
        if let Some(p) = images.iter().find(|p| p.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "{p} has degree {} instead of {degree}",
                p.degree()
            )));
        }
        let (elements, table) = regular_action(degree, &images, bound)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(FiniteQuotient {
            degree,
            images,
            elements,
            index,
            table,
        })
    }

    /// The map onto `C_q` (acting regularly on `q` points) sending generator
    /// `i` to the `exponents[i]`-th power of the shift.
    pub fn cyclic(q: usize, exponents: &[i64]) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidPermutation("cyclic group of order 0".into()));
        }
        let shift = Perm::from_images((0..q as u32).map(|i| (i + 1) % q as u32).collect())?;
        let images = exponents.iter().map(|&a| shift.pow(a)).collect();
        FiniteQuotient::with_bound(q, images, q.max(1))
    }

    /// Parses `x:(1 2),y:(1 2 3 4 5)`. Unlisted generators map to the
    /// identity; the degree is the largest point mentioned.
    pub fn parse_assignment(text: &str, generators: &[String], bound: usize) -> Result<Self> {
        let bad = |msg: String| Error::InvalidPermutation(msg);
        let mut parts = Vec::new();
        let (mut depth, mut start) = (0, 0);
        for (i, c) in text.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    parts.push(&text[start..i]);
                    start = i + 1;
                }
                _ => {}
            }
        }
        parts.push(&text[start..]);
        let mut assigned: Vec<Option<&str>> = vec![None; generators.len()];
        let mut degree = 1;
        for part in parts.into_iter().map(str::trim).filter(|s| !s.is_empty()) {
            let (name, cycles) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("`{part}` is not of the form name:cycles")))?;
            let name = name.trim();
            let g = generators
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| bad(format!("unknown generator `{name}`")))?;
            if assigned[g].is_some() {
                return Err(bad(format!("generator `{name}` assigned twice")));
            }
            for tok in cycles.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()) {
                let pt: usize = tok.parse().map_err(|_| bad(format!("bad point `{tok}`")))?;
                degree = degree.max(pt);
            }
            assigned[g] = Some(cycles.trim());
        }
        let images = assigned
            .into_iter()
            .map(|c| c.map_or(Ok(Perm::identity(degree)), |c| Perm::parse(degree, c)))
            .collect::<Result<Vec<_>>>()?;
        FiniteQuotient::with_bound(degree, images, bound)
    }

    /// Inverse of [`FiniteQuotient::parse_assignment`].
    pub fn describe(&self, generators: &[String]) -> String {
        generators
            .iter()
            .zip(&self.images)
            .map(|(n, p)| format!("{n}:{p}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &[Perm] {
        &self.images
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Image group elements, identity first.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element_index(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `e_i · φ(x_g)` for the element with index `i`.
    pub fn right_multiply(&self, i: usize, g: usize) -> usize {
        self.table[g][i] as usize
    }

    /// Right-regular action of the image group labelled breadth-first from
    /// the identity. Two maps from the same free group have equal tables
    /// exactly when their kernels coincide.
    pub fn kernel_key(&self) -> Vec<u32> {
        self.table.iter().flatten().copied().collect()
    }

    fn check_alphabet(&self, w: &Word) -> Result<()> {
        if w.alphabet() != self.images.len() {
            return Err(Error::AlphabetMismatch {
                expected: self.images.len(),
                found: w.alphabet(),
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, w: &Word) -> Result<Perm> {
        self.check_alphabet(w)?;
        Ok(w.runs().iter().fold(Perm::identity(self.degree), |acc, &(g, e)| {
            acc.then(&self.images[g].pow(e))
        }))
    }

    pub fn is_quotient_of(&self, p: &FinitePresentation) -> Result<bool> {
        for r in p.relators() {
            if !self.evaluate(r)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn order_of_image(&self, w: &Word) -> Result<u64> {
        Ok(self.evaluate(w)?.order())
    }

    /// Index of the kernel, i.e. the order of the image group.
    pub fn kernel_index(&self, p: &FinitePresentation) -> Result<usize> {
        if p.rank() != self.rank() {
            return Err(Error::AlphabetMismatch {
                expected: self.rank(),
                found: p.rank(),
            });
        }
        for (index, r) in p.relators().iter().enumerate() {
            if !self.evaluate(r)?.is_identity() {
                return Err(Error::RelatorNotKilled { index });
            }
        }
        Ok(self.order())
    }
}

/// Limits on a quotient search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_order: usize,
    pub max_assignments: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_order: 24,
            max_assignments: 1_000_000,
        }
    }
}

/// Lazy enumeration of the quotients of a presented group onto subgroups of
/// catalog groups, one per kernel, in assignment order.
pub struct QuotientSearch<'a> {
    presentation: &'a FinitePresentation,
    groups: Vec<&'a CatalogGroup>,
    budget: Budget,
    group: usize,
    counter: Option<Vec<usize>>,
    examined: u64,
    exhausted: bool,
    seen: HashSet<Vec<u32>>,
}

impl<'a> QuotientSearch<'a> {
    pub fn new(p: &'a FinitePresentation, catalog: &'a GroupCatalog, budget: Budget) -> Self {
        let groups: Vec<_> = catalog
            .groups()
            .iter()
            .filter(|g| g.order() <= budget.max_order)
            .collect();
        let counter = (!groups.is_empty()).then(|| vec![0; p.rank()]);
        QuotientSearch {
            presentation: p,
            groups,
            budget,
            group: 0,
            counter,
            examined: 0,
            exhausted: false,
            seen: HashSet::new(),
        }
    }

    pub fn assignments_examined(&self) -> u64 {
        self.examined
    }

    /// True when the search stopped because the assignment budget ran out.
    pub fn budget_exhausted(&self) -> bool {
        self.exhausted
    }

    fn advance(&mut self) {
        let order = self.groups[self.group].order();
        let counter = self.counter.as_mut().expect("active");
        for c in counter.iter_mut() {
            *c += 1;
            if *c < order {
                return;
            }
            *c = 0;
        }
        self.group += 1;
        self.counter = (self.group < self.groups.len()).then(|| vec![0; counter.len()]);
    }

    fn kills_relators(&self, images: &[Perm], degree: usize) -> bool {
        self.presentation.relators().iter().all(|r| {
            r.runs()
                .iter()
                .fold(Perm::identity(degree), |acc, &(g, e)| acc.then(&images[g].pow(e)))
                .is_identity()
        })
    }
}

impl Iterator for QuotientSearch<'_> {
    type Item = FiniteQuotient;

    fn next(&mut self) -> Option<FiniteQuotient> {
        while let Some(counter) = &self.counter {
            if self.examined >= self.budget.max_assignments {
                self.exhausted = true;
                self.counter = None;
                return None;
            }
            self.examined += 1;
            let group = self.groups[self.group];
            let images: Vec<Perm> = counter.iter().map(|&i| group.elements()[i].clone()).collect();
            self.advance();
            if !self.kills_relators(&images, group.degree()) {
                continue;
            }
            let q = FiniteQuotient::with_bound(group.degree(), images, group.order())
                .expect("subgroup of a catalog group");
            if self.seen.insert(q.kernel_key()) {
                return Some(q);
            }
        }
        None
    }
}

/// Outcome of an exhaustive-or-budgeted quotient search.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub quotients: Vec<FiniteQuotient>,
    pub assignments_examined: u64,
    pub budget_exhausted: bool,
}

pub fn enumerate_quotients(
    p: &FinitePresentation,
    catalog: &GroupCatalog,
    budget: Budget,
) -> SearchReport {
    let mut search = QuotientSearch::new(p, catalog, budget);
    let quotients = search.by_ref().collect();
    SearchReport {
        quotients,
        assignments_examined: search.assignments_examined(),
        budget_exhausted: search.budget_exhausted(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> FinitePresentation {
        FinitePresentation::parse(s).unwrap()
    }

    fn names(p: &FinitePresentation) -> Vec<String> {
        p.generators().to_vec()
    }

    fn only(groups: &[&str]) -> GroupCatalog {
        let def = GroupCatalog::default();
        GroupCatalog::new(groups.iter().map(|n| def.by_name(n).unwrap().clone()).collect())
    }

    #[test]
    fn evaluate_examples() {
        let p = pres("<x,y|>");
        let q = FiniteQuotient::parse_assignment("x:(1 2),y:(2 3)", &names(&p), 100).unwrap();
        assert_eq!(q.degree(), 3);
        assert!(q.evaluate(&p.word("x^2").unwrap()).unwrap().is_identity());
        assert_eq!(q.evaluate(&p.word("x*y*x").unwrap()).unwrap().to_string(), "(1 3)");
        let c5 = FiniteQuotient::cyclic(5, &[1, 1]).unwrap();
        assert!(c5.evaluate(&p.word("(x*y)^5").unwrap()).unwrap().is_identity());
        assert_eq!(c5.order_of_image(&p.word("x*y").unwrap()).unwrap(), 5);
        assert_eq!(c5.order_of_image(&Word::identity(2)).unwrap(), 1);
        assert!(c5.evaluate(&Word::identity(3)).is_err());
    }

    #[test]
    fn quotient_and_kernel_index() {
        let p = pres("<x|x^2>");
        let good = FiniteQuotient::parse_assignment("x:(1 2)", &names(&p), 100).unwrap();
        let bad = FiniteQuotient::parse_assignment("x:(1 2 3)", &names(&p), 100).unwrap();
        assert!(good.is_quotient_of(&p).unwrap());
        assert!(!bad.is_quotient_of(&p).unwrap());
        assert_eq!(bad.kernel_index(&p), Err(Error::RelatorNotKilled { index: 0 }));

        let tri = pres("<x,y|x^2, y^5, (x*y)^5>");
        let q = FiniteQuotient::cyclic(5, &[0, 1]).unwrap();
        assert!(q.is_quotient_of(&tri).unwrap());
        assert_eq!(q.kernel_index(&tri).unwrap(), 5);

        let free = pres("<x,y|>");
        let q = FiniteQuotient::parse_assignment("x:(1 2)", &names(&free), 100).unwrap();
        assert_eq!(q.kernel_index(&free).unwrap(), 2);
        let dinf = pres("<x,y|x^2,y^2>");
        let q = FiniteQuotient::parse_assignment("x:(1 2),y:(1 2)", &names(&dinf), 100).unwrap();
        assert_eq!(q.kernel_index(&dinf).unwrap(), 2);
    }

    #[test]
    fn assignment_round_trip_and_errors() {
        let n = vec!["x".to_string(), "y".to_string()];
        let q = FiniteQuotient::parse_assignment("x:(1 2)(3 4),y:(1,3)", &n, 100).unwrap();
        assert_eq!(q.describe(&n), "x:(1 2)(3 4),y:(1 3)");
        let back = FiniteQuotient::parse_assignment(&q.describe(&n), &n, 100).unwrap();
        assert_eq!(back, q);
        assert!(FiniteQuotient::parse_assignment("z:(1 2)", &n, 100).is_err());
        assert!(FiniteQuotient::parse_assignment("x(1 2)", &n, 100).is_err());
        assert!(FiniteQuotient::parse_assignment("x:(1 2),x:()", &n, 100).is_err());
        let s5 = "x:(1 2),y:(1 2 3 4 5)";
        assert_eq!(
            FiniteQuotient::parse_assignment(s5, &n, 100).unwrap_err(),
            Error::OrderBoundExceeded { bound: 100 }
        );
    }

    #[test]
    fn search_examples() {
        let r = enumerate_quotients(&pres("<x|x^2>"), &only(&["C2"]), Budget::default());
        let orders: Vec<usize> = r.quotients.iter().map(FiniteQuotient::order).collect();
        assert_eq!(orders, vec![1, 2]);
        assert!(!r.budget_exhausted);

        let r = enumerate_quotients(&pres("<x,y|>"), &only(&["C2"]), Budget::default());
        assert_eq!(r.quotients.iter().filter(|q| q.order() > 1).count(), 3);

        let tri = pres("<x,y|x^2, y^5, (x*y)^5>");
        let r = enumerate_quotients(&tri, &only(&["C5"]), Budget::default());
        assert!(r
            .quotients
            .iter()
            .any(|q| !q.evaluate(&tri.word("y").unwrap()).unwrap().is_identity()));
    }

    #[test]
    fn search_deduplicates_across_groups() {
        // Every map F_1 -> C4 or C2 has one of three kernels: F, 2Z, 4Z.
        let r = enumerate_quotients(&pres("<x|>"), &only(&["C2", "C4", "D4"]), Budget::default());
        let mut orders: Vec<usize> = r.quotients.iter().map(FiniteQuotient::order).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 4]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let budget = Budget {
            max_order: 24,
            max_assignments: 10,
        };
        let r = enumerate_quotients(&pres("<x,y|>"), &GroupCatalog::default(), budget);
        assert!(r.budget_exhausted);
        assert_eq!(r.assignments_examined, 10);
    }
}
