//! Reidemeister–Schreier rewriting for kernels of finite quotients, conjugacy
//! class splitting of relators, p-size bounds and the supermultiplicity check.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::FinitePresentation;
use crate::quotient::{FiniteQuotient, Perm};
use crate::scalar::{nu_p_int, Prime};
use crate::words::{Letter, Valuation, Word};
use crate::ExactRational;

/// Right action of the generators on the cosets `0..d`; coset 0 is the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetTable {
    actions: Vec<Perm>,
    degree: usize,
}

impl CosetTable {
    /// Requires every action to have degree `degree` and the action to be
    /// transitive.
    pub fn from_action(degree: usize, actions: Vec<Perm>) -> Result<Self> {
        if let Some(p) = actions.iter().find(|p| p.degree() != degree) {
            return Err(Error::InconsistentAction(format!(
                "{p} has degree {} instead of {degree}",
                p.degree()
            )));
        }
        let table = CosetTable { actions, degree };
        if degree == 0 || table.orbit_of_base().len() != degree {
            return Err(Error::NotTransitive);
        }
        Ok(table)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn actions(&self) -> &[Perm] {
        &self.actions
    }

    pub fn rank(&self) -> usize {
        self.actions.len()
    }

    pub fn act(&self, coset: usize, letter: Letter) -> usize {
        let p = &self.actions[letter.generator];
        if letter.inverse {
            p.images().iter().position(|&j| j as usize == coset).expect("bijection")
        } else {
            p.apply(coset)
        }
    }

    /// Coset reached from `coset` by reading `w`.
    pub fn act_word(&self, coset: usize, w: &Word) -> usize {
        w.runs().iter().fold(coset, |c, &(g, e)| {
            self.actions[g].pow(e).apply(c)
        })
    }

    fn orbit_of_base(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            for g in 0..self.rank() {
                for inverse in [false, true] {
                    let c = self.act(out[i], Letter::new(g, inverse));
                    if !seen[c] {
                        seen[c] = true;
                        out.push(c);
                    }
                }
            }
            i += 1;
        }
        out
    }
}

/// Coset table of the kernel of `q`: the image group acting on itself by
/// right multiplication, with cosets labelled by element index.
pub fn coset_table(q: &FiniteQuotient, p: &FinitePresentation) -> Result<CosetTable> {
    q.kernel_index(p)?;
    Ok(regular_table(q))
}

fn regular_table(q: &FiniteQuotient) -> CosetTable {
    let d = q.order();
    let actions = (0..q.rank())
        .map(|g| {
            Perm::from_images((0..d).map(|i| q.right_multiply(i, g) as u32).collect())
                .expect("right multiplication is a bijection")
        })
        .collect();
    CosetTable { actions, degree: d }
}

/// Shortlex transversal and Schreier free basis of a finite-index subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierData {
    table: CosetTable,
    transversal: Vec<Word>,
    /// `edge_index[g][c]`: basis index of the edge `c --x_g--> c·x_g`, if any.
    edge_index: Vec<Vec<Option<usize>>>,
    basis: Vec<(usize, usize)>,
}

pub fn schreier(table: &CosetTable) -> Result<SchreierData> {
    let d = table.degree();
    let n = table.rank();
    if d == 0 {
        return Err(Error::NotTransitive);
    }
    let mut transversal: Vec<Option<Word>> = vec![None; d];
    transversal[0] = Some(Word::identity(n));
    let mut tree = vec![vec![false; d]; n];
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..n {
            for inverse in [false, true] {
                let letter = Letter::new(g, inverse);
                let next = table.act(c, letter);
                if transversal[next].is_some() {
                    continue;
                }
                let step = Word::from_runs(n, [(g, letter.sign())])?;
                transversal[next] = Some(transversal[c].as_ref().expect("visited").mul(&step)?);
                tree[g][if inverse { next } else { c }] = true;
                queue.push_back(next);
            }
        }
    }
    let transversal = transversal
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or(Error::NotTransitive)?;
    let mut edge_index = vec![vec![None; d]; n];
    let mut basis = Vec::new();
    for g in 0..n {
        for c in 0..d {
            if !tree[g][c] {
                edge_index[g][c] = Some(basis.len());
                basis.push((c, g));
            }
        }
    }
    Ok(SchreierData {
        table: table.clone(),
        transversal,
        edge_index,
        basis,
    })
}

impl SchreierData {
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    /// Basis edges `(coset, generator)`, generator-major.
    pub fn basis_edges(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> Vec<String> {
        FinitePresentation::numbered_names("s", self.basis.len())
    }

    /// `t_c · x_g · t_{c·x_g}⁻¹` for basis element `i`.
    pub fn basis_word(&self, i: usize) -> Word {
        let (c, g) = self.basis[i];
        let n = self.table.rank();
        let target = self.table.act(c, Letter::new(g, false));
        self.transversal[c]
            .mul(&Word::generator(n, g).expect("valid generator"))
            .and_then(|w| w.mul(&self.transversal[target].inverse()))
            .expect("shared alphabet")
    }

    /// Substitutes each basis letter by its word in the ambient free group.
    pub fn expand(&self, w: &Word) -> Result<Word> {
        if w.alphabet() != self.basis.len() {
            return Err(Error::AlphabetMismatch {
                expected: self.basis.len(),
                found: w.alphabet(),
            });
        }
        let mut out = Word::identity(self.table.rank());
        for &(i, e) in w.runs() {
            out = out.mul(&self.basis_word(i).pow(e))?;
        }
        Ok(out)
    }

    /// Letters emitted and coset reached when reading `letter` at `coset`.
    fn step(&self, coset: usize, letter: Letter) -> (Option<(usize, i64)>, usize) {
        let g = letter.generator;
        if letter.inverse {
            let prev = self.table.act(coset, letter);
            (self.edge_index[g][prev].map(|i| (i, -1)), prev)
        } else {
            let next = self.table.act(coset, letter);
            (self.edge_index[g][coset].map(|i| (i, 1)), next)
        }
    }
}

/// Rewrites a word of the subgroup in the Schreier basis.
pub fn rewrite_word(sd: &SchreierData, w: &Word) -> Result<Word> {
    let n = sd.table.rank();
    if w.alphabet() != n {
        return Err(Error::AlphabetMismatch {
            expected: n,
            found: w.alphabet(),
        });
    }
    let m = sd.basis.len();
    let mut out = Word::identity(m);
    let mut coset = 0;
    for &(g, e) in w.runs() {
        let letter = Letter::new(g, e < 0);
        // One trip around the cycle of `coset` under this letter.
        let mut loop_runs = Vec::new();
        let mut c = coset;
        loop {
            let (emit, next) = sd.step(c, letter);
            loop_runs.extend(emit);
            c = next;
            if c == coset {
                break;
            }
        }
        let cycle_len = sd.table.actions()[g].cycles().into_iter()
            .find(|cy| cy.contains(&coset))
            .map_or(1, |cy| cy.len()) as u64;
        let count = e.unsigned_abs();
        let full = (count / cycle_len) as i64;
        let loop_word = Word::from_runs(m, loop_runs)?;
        out = out.mul(&loop_word.pow(full))?;
        for _ in 0..count % cycle_len {
            let (emit, next) = sd.step(coset, letter);
            if let Some(run) = emit {
                out = out.mul(&Word::from_runs(m, [run])?)?;
            }
            coset = next;
        }
    }
    if coset != 0 {
        return Err(Error::NotInSubgroup);
    }
    Ok(out)
}

/// Index of the centralizer of `g` in `F` over its centralizer in the kernel,
/// i.e. the order of the image of the maximal root of `g`.
pub fn centralizer_index(q: &FiniteQuotient, g: &Word) -> Result<u64> {
    let rd = g.maximal_root()?;
    q.order_of_image(&rd.root)
}

/// Which conjugates of a relator enter a subgroup presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ClassMode {
    /// One conjugate per kernel-conjugacy class: `d/k` of them.
    #[default]
    Refined,
    /// All `d` transversal conjugates.
    Naive,
}

/// Conjugating elements `t` (as shortlex transversal words) such that the
/// words `t g t⁻¹` meet every kernel-conjugacy class in the `F`-class of `g`
/// exactly once.
pub fn class_conjugators(q: &FiniteQuotient, g: &Word, mode: ClassMode) -> Result<Vec<Word>> {
    if !q.evaluate(g)?.is_identity() {
        return Err(Error::NotInSubgroup);
    }
    let table = regular_table(q);
    let sd = schreier(&table)?;
    if mode == ClassMode::Naive {
        return Ok(sd.transversal.clone());
    }
    let rd = g.maximal_root()?;
    let h = q.evaluate(&rd.root.conjugate_by(&rd.conjugator)?)?;
    let d = q.order();
    let mut covered = vec![false; d];
    let mut out = Vec::new();
    // Cosets of the image group are its elements; sweep in transversal order.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        let (ta, tb) = (&sd.transversal[a], &sd.transversal[b]);
        (ta.len(), ta.letters()).cmp(&(tb.len(), tb.letters()))
    });
    for c in order {
        if covered[c] {
            continue;
        }
        out.push(sd.transversal[c].clone());
        let mut e = q.elements()[c].clone();
        loop {
            let idx = q.element_index(&e).expect("closed");
            if covered[idx] {
                break;
            }
            covered[idx] = true;
            e = e.then(&h);
        }
    }
    Ok(out)
}

/// Representatives `t g t⁻¹` of the kernel-conjugacy classes inside the
/// `F`-conjugacy class of `g`.
pub fn conjugate_class_reps(q: &FiniteQuotient, g: &Word) -> Result<Vec<Word>> {
    conjugate_class_reps_with(q, g, ClassMode::Refined)
}

pub fn conjugate_class_reps_with(
    q: &FiniteQuotient,
    g: &Word,
    mode: ClassMode,
) -> Result<Vec<Word>> {
    class_conjugators(q, g, mode)?
        .iter()
        .map(|t| g.conjugate_by(t))
        .collect()
}

pub fn subgroup_presentation(
    p: &FinitePresentation,
    q: &FiniteQuotient,
) -> Result<FinitePresentation> {
    subgroup_presentation_with(p, q, ClassMode::Refined)
}

pub fn subgroup_presentation_with(
    p: &FinitePresentation,
    q: &FiniteQuotient,
    mode: ClassMode,
) -> Result<FinitePresentation> {
    let sd = schreier(&coset_table(q, p)?)?;
    let mut relators = Vec::new();
    for r in p.relators() {
        for rep in conjugate_class_reps_with(q, r, mode)? {
            relators.push(rewrite_word(&sd, &rep)?);
        }
    }
    FinitePresentation::new(sd.basis_names(), relators)
}

/// Contribution of one relator to the p-size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeTerm {
    pub relator: usize,
    pub k: u64,
    pub classes: u64,
    pub nu_free: u32,
    pub nu_k: u32,
    pub contribution: ExactRational,
    /// Exact valuations of the rewritten class representatives.
    pub rewritten_valuations: Vec<Valuation>,
    pub exact: ExactRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBound {
    /// `Σ (d/k_i) p^{-ν(r_i) + ν_p(k_i)}`.
    pub value: ExactRational,
    /// `Σ p^{-ν}` over the rewritten class representatives.
    pub exact: ExactRational,
    pub index: u64,
    pub terms: Vec<SizeTerm>,
}

fn signed_power(p: Prime, exp: i64) -> ExactRational {
    let base = BigInt::from(p.get());
    if exp >= 0 {
        Ratio::from_integer(num_traits::pow(base, exp as usize))
    } else {
        Ratio::new(BigInt::from(1), num_traits::pow(base, exp.unsigned_abs() as usize))
    }
}

pub fn p_size_bound(p: &FinitePresentation, q: &FiniteQuotient, prime: Prime) -> Result<SizeBound> {
    let sd = schreier(&coset_table(q, p)?)?;
    let d = q.order() as u64;
    let mut terms = Vec::new();
    for (index, r) in p.relators().iter().enumerate() {
        let k = centralizer_index(q, r)?;
        let nu_free = r.nu_p(prime).finite().expect("relators are nontrivial");
        let nu_k = nu_p_int(&(k as i128), prime)?;
        let classes = d / k;
        let contribution = Ratio::from_integer(BigInt::from(classes))
            * signed_power(prime, nu_k as i64 - nu_free as i64);
        let rewritten_valuations = conjugate_class_reps(q, r)?
            .iter()
            .map(|rep| rewrite_word(&sd, rep).map(|w| w.nu_p(prime)))
            .collect::<Result<Vec<_>>>()?;
        let exact = rewritten_valuations
            .iter()
            .fold(ExactRational::zero(), |acc, v| acc + v.weight::<BigInt>(prime));
        terms.push(SizeTerm {
            relator: index,
            k,
            classes,
            nu_free,
            nu_k,
            contribution,
            rewritten_valuations,
            exact,
        });
    }
    Ok(SizeBound {
        value: terms.iter().map(|t| t.contribution.clone()).sum(),
        exact: terms.iter().map(|t| t.exact.clone()).sum(),
        index: d,
        terms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupermultReport {
    pub index: u64,
    pub de_sub: ExactRational,
    pub de_orig: ExactRational,
    pub scaled_de_orig: ExactRational,
    pub holds: bool,
}

/// Compares the p-deficiency of the rewritten kernel presentation with the
/// index times the p-deficiency of the original presentation.
pub fn supermultiplicity_check(
    p: &FinitePresentation,
    q: &FiniteQuotient,
    prime: Prime,
) -> Result<SupermultReport> {
    let sub = subgroup_presentation(p, q)?;
    let index = q.order() as u64;
    let de_sub = sub.p_deficiency(prime);
    let de_orig = p.p_deficiency(prime);
    let scaled = Ratio::from_integer(BigInt::from(index)) * de_orig.clone();
    Ok(SupermultReport {
        index,
        holds: de_sub >= scaled,
        de_sub,
        de_orig,
        scaled_de_orig: scaled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> FinitePresentation {
        FinitePresentation::parse(s).unwrap()
    }

    fn quot(p: &FinitePresentation, spec: &str) -> FiniteQuotient {
        FiniteQuotient::parse_assignment(spec, p.generators(), 100).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        Ratio::new(n.into(), d.into())
    }

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn dinf() -> (FinitePresentation, FiniteQuotient) {
        let p = pres("<x,y|x^2, y^2>");
        let qq = quot(&p, "x:(1 2),y:(1 2)");
        (p, qq)
    }

    fn order_ten_fixture() -> (FinitePresentation, FiniteQuotient) {
        (pres("<x,y|x^2, y^5, (x*y)^5>"), FiniteQuotient::cyclic(5, &[0, 1]).unwrap())
    }

    #[test]
    fn coset_tables() {
        let (p, qq) = dinf();
        let t = coset_table(&qq, &p).unwrap();
        assert_eq!(t.degree(), 2);
        assert!(t.actions().iter().all(|a| a.to_string() == "(1 2)"));
        let p4 = pres("<x|x^4>");
        assert_eq!(coset_table(&quot(&p4, "x:(1 2)"), &p4).unwrap().degree(), 2);
        let (p, qq) = order_ten_fixture();
        let t = coset_table(&qq, &p).unwrap();
        assert_eq!((t.degree(), t.actions()[1].order()), (5, 5));
        assert!(t.actions()[0].is_identity());
        let bad = quot(&p4, "x:(1 2 3)");
        assert!(coset_table(&bad, &p4).is_err());
        let two = Perm::identity(2);
        assert_eq!(CosetTable::from_action(2, vec![two]), Err(Error::NotTransitive));
    }

    #[test]
    fn schreier_bases() {
        let (p, qq) = dinf();
        let sd = schreier(&coset_table(&qq, &p).unwrap()).unwrap();
        let t: Vec<String> = sd.transversal().iter().map(|w| p.word_text(w)).collect();
        assert_eq!(t, vec!["1", "x"]);
        let basis: Vec<String> = (0..3).map(|i| p.word_text(&sd.basis_word(i))).collect();
        assert_eq!(basis, vec!["x^2", "y*x^-1", "x*y"]);

        let f2 = pres("<x,y|>");
        let sd = schreier(&coset_table(&quot(&f2, "x:(1 2)"), &f2).unwrap()).unwrap();
        assert_eq!(sd.basis_len(), 3);
        let f1 = pres("<x|>");
        let sd = schreier(&coset_table(&quot(&f1, "x:(1 2)"), &f1).unwrap()).unwrap();
        assert_eq!(sd.basis_len(), 1);
        assert_eq!(f1.word_text(&sd.basis_word(0)), "x^2");
    }

    #[test]
    fn rewriting() {
        let (p, qq) = dinf();
        let sd = schreier(&coset_table(&qq, &p).unwrap()).unwrap();
        let names = sd.basis_names();
        let rw = |s: &str| rewrite_word(&sd, &p.word(s).unwrap());
        assert_eq!(rw("x^2").unwrap().to_text(&names), "s1");
        assert_eq!(rw("y^2").unwrap().to_text(&names), "s2*s3");
        assert!(rw("1").unwrap().is_identity());
        assert_eq!(rw("x"), Err(Error::NotInSubgroup));
        let w = p.word("x^1000000000000").unwrap();
        let r = rewrite_word(&sd, &w).unwrap();
        assert_eq!(r.to_text(&names), "s1^500000000000");
        assert_eq!(sd.expand(&r).unwrap(), w);
    }

    #[test]
    fn centralizer_indices() {
        let (p, qq) = dinf();
        assert_eq!(centralizer_index(&qq, &p.word("x^2").unwrap()).unwrap(), 2);
        assert_eq!(centralizer_index(&qq, &p.word("(x*y)^3").unwrap()).unwrap(), 1);
        let (p, qq) = order_ten_fixture();
        assert_eq!(centralizer_index(&qq, &p.word("y^5").unwrap()).unwrap(), 5);
        assert_eq!(centralizer_index(&qq, &Word::identity(2)), Err(Error::TrivialWord));
    }

    #[test]
    fn class_representatives() {
        let (p, qq) = dinf();
        assert_eq!(conjugate_class_reps(&qq, &p.word("x^2").unwrap()).unwrap().len(), 1);
        let f2 = pres("<x,y|>");
        let qq = quot(&f2, "x:(1 2)");
        let reps: Vec<String> = conjugate_class_reps(&qq, &f2.word("y").unwrap())
            .unwrap()
            .iter()
            .map(|w| f2.word_text(w))
            .collect();
        assert_eq!(reps, vec!["y", "x*y*x^-1"]);
        assert_eq!(
            conjugate_class_reps(&qq, &f2.word("x").unwrap()),
            Err(Error::NotInSubgroup)
        );
        let (p, qq) = order_ten_fixture();
        assert_eq!(conjugate_class_reps(&qq, &p.word("y^5").unwrap()).unwrap().len(), 1);
        let naive = conjugate_class_reps_with(&qq, &p.word("y^5").unwrap(), ClassMode::Naive);
        assert_eq!(naive.unwrap().len(), 5);
    }

    #[test]
    fn subgroup_presentations() {
        let (p, qq) = dinf();
        assert_eq!(
            subgroup_presentation(&p, &qq).unwrap().to_string(),
            "< s1, s2, s3 | s1, s2*s3 >"
        );
        let p4 = pres("<x|x^4>");
        assert_eq!(
            subgroup_presentation(&p4, &quot(&p4, "x:(1 2)")).unwrap().to_string(),
            "< s1 | s1^2 >"
        );
        let (p, qq) = order_ten_fixture();
        let sub = subgroup_presentation(&p, &qq).unwrap();
        assert_eq!(sub.rank(), 6);
        assert!(p_size_bound(&p, &qq, pr(2)).unwrap().value < q(5, 1));
    }

    #[test]
    fn size_bounds() {
        let (p, qq) = order_ten_fixture();
        let b = p_size_bound(&p, &qq, pr(2)).unwrap();
        assert_eq!(b.value, q(9, 2));
        assert!(b.exact <= b.value);
        let p2 = pres("<x|x^2>");
        let b = p_size_bound(&p2, &quot(&p2, "x:(1 2)"), pr(2)).unwrap();
        assert_eq!((b.terms[0].k, b.terms[0].contribution.clone()), (2, q(1, 1)));
        let (p, qq) = dinf();
        assert_eq!(p_size_bound(&p, &qq, pr(2)).unwrap().exact, q(2, 1));
    }

    #[test]
    fn supermultiplicity() {
        let (p, qq) = dinf();
        let r = supermultiplicity_check(&p, &qq, pr(2)).unwrap();
        assert_eq!((r.de_sub, r.scaled_de_orig, r.holds), (q(0, 1), q(0, 1), true));
        let p4 = pres("<x|x^4>");
        let r = supermultiplicity_check(&p4, &quot(&p4, "x:(1 2)"), pr(2)).unwrap();
        assert_eq!((r.de_sub, r.scaled_de_orig, r.holds), (q(-1, 2), q(-1, 2), true));
        let (p, qq) = order_ten_fixture();
        let r = supermultiplicity_check(&p, &qq, pr(2)).unwrap();
        assert!(r.de_sub >= q(1, 2));
        assert_eq!(r.de_orig, q(-3, 2));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::quotient::GroupCatalog;
    use crate::words::{reduce, Letter};
    use proptest::prelude::*;

    fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 1..max_len).prop_map(move |ls| {
            let letters: Vec<Letter> = ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect();
            reduce(gens, &letters).unwrap()
        })
    }

    fn quotient(gens: usize) -> impl Strategy<Value = FiniteQuotient> {
        let groups = GroupCatalog::default().restricted(12).groups().to_vec();
        (prop::sample::select(groups), prop::collection::vec(any::<prop::sample::Index>(), gens))
            .prop_map(|(g, idx)| {
                let images = idx.iter().map(|i| i.get(g.elements()).clone()).collect();
                FiniteQuotient::with_bound(g.degree(), images, 100).unwrap()
            })
    }

    /// Multiplies `w` by the inverse transversal word of its coset so it lands in the kernel.
    fn into_kernel(sd: &SchreierData, w: &Word) -> Word {
        let c = sd.table().act_word(0, w);
        w.mul(&sd.transversal()[c].inverse()).unwrap()
    }

    proptest! {
        #[test]
        fn nielsen_schreier_rank(q in quotient(3)) {
            let p = FinitePresentation::free(["a", "b", "c"]).unwrap();
            let sd = schreier(&coset_table(&q, &p).unwrap()).unwrap();
            prop_assert_eq!(sd.basis_len(), q.order() * 2 + 1);
        }

        #[test]
        fn rewrite_round_trip(q in quotient(2), w in word(2, 14)) {
            let p = FinitePresentation::free(["x", "y"]).unwrap();
            let sd = schreier(&coset_table(&q, &p).unwrap()).unwrap();
            let k = into_kernel(&sd, &w);
            let rewritten = rewrite_word(&sd, &k).unwrap();
            prop_assert_eq!(sd.expand(&rewritten).unwrap(), k);
        }

        #[test]
        fn huge_powers_rewrite_like_small_ones(q in quotient(2), w in word(2, 6)) {
            let p = FinitePresentation::free(["x", "y"]).unwrap();
            let sd = schreier(&coset_table(&q, &p).unwrap()).unwrap();
            let o = q.order_of_image(&w).unwrap() as i64;
            let direct = rewrite_word(&sd, &w.pow(o * 3)).unwrap();
            let stepwise = rewrite_word(&sd, &w.pow(o)).unwrap().pow(3);
            prop_assert_eq!(direct, stepwise);
        }

        #[test]
        fn supermultiplicativity(q in quotient(2), r in word(2, 10), e in 1i64..5, prime in prop::sample::select(vec![2u64, 3])) {
            prop_assume!(!r.is_identity());
            let o = q.order_of_image(&r).unwrap() as i64;
            let p = FinitePresentation::new(vec!["x".into(), "y".into()], vec![r.pow(o * e)]).unwrap();
            let report = supermultiplicity_check(&p, &q, Prime::new(prime).unwrap()).unwrap();
            prop_assert!(report.holds);
            prop_assert!(report.de_sub >= report.scaled_de_orig);
            let size = p_size_bound(&p, &q, Prime::new(prime).unwrap()).unwrap();
            prop_assert!(size.exact <= size.value);
        }
    }
}
