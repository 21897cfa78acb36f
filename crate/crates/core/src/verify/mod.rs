//! Reference checks for the toolkit. Each criterion compares library output
//! with an independent computation from [`oracles`] or with a known value.

pub mod oracles;
pub mod random;

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_invariants, smith_normal_form, upper_bound_de};
use crate::error::Result;
use crate::fuchsian::{kernel_construction, Case, DeExact, FuchsianSignature};
use crate::invariants::{chi_p_estimate, lemma_power_witness, quotient_dp_drop, subgroup_upper_bound};
use crate::presentation::FinitePresentation;
use crate::quotient::{Budget, FiniteQuotient, GroupCatalog, QuotientSearch};
use crate::rewrite::{
    centralizer_index, coset_table, conjugate_class_reps, p_size_bound, rewrite_word, schreier,
    subgroup_presentation, supermultiplicity_check,
};
use crate::scalar::{rational_string, Prime};
use crate::words::{Valuation, Word};
use crate::{ExactRational, IntMatrix};

use oracles::Letters;
use random::{letters_to_word, random_presentation, random_word, rng, word_to_letters};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: String,
    pub number: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<(bool, String)>;

pub struct Criterion {
    pub id: &'static str,
    pub number: usize,
    pub title: &'static str,
    run: Check,
}

impl Criterion {
    pub fn run(&self) -> CriterionReport {
        let (passed, detail) = (self.run)().unwrap_or_else(|e| (false, format!("error: {e}")));
        CriterionReport {
            id: self.id.to_string(),
            number: self.number,
            title: self.title.to_string(),
            passed,
            detail,
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let table: [(&'static str, &'static str, Check); 12] = [
        ("intro", "zero 2-deficiency of D_inf and the (2,4,4) triangle group", check_intro),
        ("free-product", "free products of cyclic groups: presentation meets group value", check_free_products),
        ("supermult", "supermultiplicity on random kernels", check_supermult),
        ("class-split", "relator class counts and valuations in kernels", check_class_split),
        ("snf", "Smith normal form against determinantal divisors", check_snf),
        ("nu-p", "p-valuation of words against exhaustive roots", check_nu_p),
        ("triangle-6-12-12", "Delta(6,12,12) has zero 2- and 3-deficiency", check_triangle),
        ("singerman", "signature transfer for the case (a) and (d) kernels", check_singerman),
        ("size-bound", "p-size bound for <x,y|x^2,y^5,(xy)^5>", check_size_bound),
        ("chi", "chi_p estimates for free and surface groups", check_chi),
        ("power-witness", "positive p-deficiency from a surviving root", check_power_witness),
        ("dp-drop", "d_p drop under normal quotients", check_dp_drop),
    ];
    table
        .into_iter()
        .enumerate()
        .map(|(i, (id, title, run))| Criterion { id, number: i + 1, title, run })
        .collect()
}

pub fn run_all() -> Vec<CriterionReport> {
    criteria().iter().map(Criterion::run).collect()
}

/// Runs the criteria whose ids are listed; unknown ids are returned as errors.
pub fn run_selected<S: AsRef<str>>(ids: &[S]) -> std::result::Result<Vec<CriterionReport>, String> {
    let all = criteria();
    ids.iter()
        .map(|id| {
            all.iter()
                .find(|c| c.id == id.as_ref())
                .map(Criterion::run)
                .ok_or_else(|| format!("unknown criterion `{}`", id.as_ref()))
        })
        .collect()
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("prime literal")
}

fn rat(n: i64, d: i64) -> ExactRational {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

fn rs(r: &ExactRational) -> String {
    rational_string(r)
}

fn exponent_rows(p: &FinitePresentation) -> Vec<Vec<i64>> {
    p.relators().iter().map(Word::exponent_sums).collect()
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

/// Abelian bound recomputed from determinantal divisors.
fn oracle_upper_bound(p: &FinitePresentation, prime: u64) -> (String, ExactRational) {
    let (free, factors) = oracles::invariants_by_minors(&big_rows(&exponent_rows(p)), p.rank());
    let mut value = rat(free as i64 - 1, 1);
    for f in &factors {
        let mut f = f.clone();
        let mut pk = BigInt::one();
        while (&f % prime).is_zero() {
            f /= prime;
            pk *= prime;
        }
        value += ExactRational::one() - Ratio::new(BigInt::one(), pk);
    }
    let shown: Vec<String> = factors.iter().map(ToString::to_string).collect();
    (format!("Z^{free} + [{}]", shown.join(",")), value)
}

fn check_intro() -> Result<(bool, String)> {
    let two = prime(2);
    let mut ok = true;
    let mut detail = String::new();
    for text in ["<x,y|x^2,y^2>", "<x,y,z|x^2,y^4,z^4,x*y*z>"] {
        let p = FinitePresentation::parse(text)?;
        let lower = p.p_deficiency(two);
        let upper = upper_bound_de(&p, two);
        let (inv, oracle) = oracle_upper_bound(&p, 2);
        let refined = subgroup_upper_bound(&p, two, &GroupCatalog::default(), Budget::default())?;
        let this = lower.is_zero() && upper.is_zero() && oracle == upper;
        ok &= this;
        let _ = write!(
            detail,
            "{text}: presentation {}, abelian bound {} (minors {inv}: {}), best kernel bound {} at index {}; ",
            rs(&lower),
            rs(&upper),
            rs(&oracle),
            rs(&refined.value),
            refined.index
        );
    }
    Ok((ok, detail.trim_end_matches("; ").to_string()))
}

fn check_free_products() -> Result<(bool, String)> {
    let mut g = rng(0xC0F5);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let s = g.gen_range(0..=4);
        let r = g.gen_range(if s == 0 { 1 } else { 0 }..=3);
        let orders: Vec<u64> = (0..s).map(|_| g.gen_range(2..=36)).collect();
        let p = *[2u64, 3, 5].choose(&mut g).expect("nonempty");
        let pres = FinitePresentation::free_product_of_cyclics(&orders, r)?;
        let lower = pres.p_deficiency(prime(p));
        let upper = upper_bound_de(&pres, prime(p));
        let formula = oracles::cyclic_sum_formula(r, &orders, p);
        if lower != upper || lower != formula {
            bad.push(format!("{orders:?} r={r} p={p}: {} vs {} vs {}", rs(&lower), rs(&upper), rs(&formula)));
        }
    }
    Ok((bad.is_empty(), if bad.is_empty() { "200 tuples agree".into() } else { bad.join("; ") }))
}

fn check_supermult() -> Result<(bool, String)> {
    let mut g = rng(0x5E9E);
    let catalog = GroupCatalog::default().restricted(12);
    let budget = Budget { max_order: 12, max_assignments: 4_000 };
    let (mut checked, mut presentations) = (0, 0);
    let mut bad = Vec::new();
    while presentations < 100 {
        let pres = random_presentation(&mut g, 3, 4, 12);
        let mut found: Vec<FiniteQuotient> = QuotientSearch::new(&pres, &catalog, budget).collect();
        if found.is_empty() {
            continue;
        }
        presentations += 1;
        found.shuffle(&mut g);
        for q in found.iter().take(2) {
            let p = *[2u64, 3, 5].choose(&mut g).expect("nonempty");
            let report = supermultiplicity_check(&pres, q, prime(p))?;
            let sd = schreier(&coset_table(q, &pres)?)?;
            let schreier_rank = q.order() * (pres.rank() - 1) + 1;
            let lhs_ok = report.de_sub >= report.scaled_de_orig;
            if !report.holds || !lhs_ok || sd.basis_len() != schreier_rank {
                bad.push(format!("{pres} / {}", q.describe(pres.generators())));
            }
            checked += 1;
        }
    }
    Ok((
        bad.is_empty(),
        format!("{checked} kernels over {presentations} presentations; failures: {}", bad.len()),
    ))
}

fn check_class_split() -> Result<(bool, String)> {
    let mut g = rng(0xC1A5);
    let catalog = GroupCatalog::default().restricted(6);
    let mut instances = 0;
    let mut bad = Vec::new();
    let mut attempts = 0;
    while instances < 60 && attempts < 100_000 {
        attempts += 1;
        let group = catalog.groups().choose(&mut g).expect("nonempty catalog");
        let images = (0..2).map(|_| group.elements().choose(&mut g).expect("nonempty").clone()).collect();
        let q = FiniteQuotient::with_bound(group.degree(), images, 100)?;
        let len = g.gen_range(1..=8);
        let letters = random::reduced_letters(&mut g, 2, len);
        let r = letters_to_word(2, &letters);
        if !q.evaluate(&r)?.is_identity() {
            continue;
        }
        instances += 1;
        let d = q.order();
        let k = centralizer_index(&q, &r)? as usize;
        let naive = oracles::NaiveKernel::new(&q);
        // Kernel-conjugacy classes of the d conjugates t r t^-1.
        let mut classes = HashSet::new();
        for t in naive.coset_words() {
            let conj = oracles::free_reduce(&[t.clone(), letters.clone(), oracles::invert(t)].concat());
            let rewritten = naive.rewrite(&conj).expect("conjugate of a relator lies in the kernel");
            classes.insert(oracles::cyclic_canonical(&rewritten));
        }
        let reps = conjugate_class_reps(&q, &r)?;
        let rep_classes: HashSet<Letters> = reps
            .iter()
            .map(|w| oracles::cyclic_canonical(&naive.rewrite(&word_to_letters(w)).expect("in kernel")))
            .collect();
        let label = format!("{} r={} d={d} k={k}", q.describe(&["x".into(), "y".into()]), r.to_text(&["x", "y"]));
        if classes.len() != d / k || d % k != 0 || reps.len() != d / k || rep_classes != classes {
            bad.push(format!("{label}: oracle {} classes, reps {}", classes.len(), reps.len()));
            continue;
        }
        let sd = schreier(&coset_table(&q, &FinitePresentation::new(vec!["x".into(), "y".into()], vec![r.clone()])?)?)?;
        for p in [2u64, 3] {
            let pp = prime(p);
            let nu_free = r.nu_p(pp).finite().expect("nontrivial");
            let nu_k = (k as u64).trailing_zeros_by(p);
            for rep in &reps {
                let rewritten = rewrite_word(&sd, rep)?;
                if sd.expand(&rewritten)? != *rep {
                    bad.push(format!("{label}: expand round trip"));
                }
                let oracle_nu = oracles::cyclic_power(&naive.rewrite(&word_to_letters(rep)).expect("in kernel"))
                    .trailing_zeros_by(p);
                let lib_nu = rewritten.nu_p(pp).finite().expect("nontrivial");
                if lib_nu != oracle_nu || (lib_nu as i64) < nu_free as i64 - nu_k as i64 {
                    bad.push(format!("{label} p={p}: nu {lib_nu} (oracle {oracle_nu}) vs {nu_free} - {nu_k}"));
                }
            }
        }
    }
    let ok = bad.is_empty() && instances == 60;
    Ok((ok, format!("{instances} instances; failures: {}", if bad.is_empty() { "none".into() } else { bad.join("; ") })))
}

trait PrimeExponent {
    fn trailing_zeros_by(self, p: u64) -> u32;
}

impl PrimeExponent for u64 {
    fn trailing_zeros_by(mut self, p: u64) -> u32 {
        let mut k = 0;
        while self != 0 && self.is_multiple_of(p) {
            self /= p;
            k += 1;
        }
        k
    }
}

impl PrimeExponent for usize {
    fn trailing_zeros_by(self, p: u64) -> u32 {
        (self as u64).trailing_zeros_by(p)
    }
}

fn check_snf() -> Result<(bool, String)> {
    let mut g = rng(0x5AF);
    let mut bad = 0;
    for _ in 0..500 {
        let (rows, cols) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let a: Vec<Vec<BigInt>> = (0..rows)
            .map(|_| (0..cols).map(|_| BigInt::from(g.gen_range(-9..=9))).collect())
            .collect();
        let m = IntMatrix::from_rows(&a);
        let snf = smith_normal_form(&m);
        let recomposed = snf.u.mul(&m).mul(&snf.v) == snf.s && snf.s.is_diagonal();
        let to_rows = |x: &IntMatrix| (0..x.rows()).map(|i| x.row(i).to_vec()).collect::<Vec<_>>();
        let unimodular = oracles::det(&to_rows(&snf.u)).abs().is_one() && oracles::det(&to_rows(&snf.v)).abs().is_one();
        let diag = snf.diagonal();
        let mut product = BigInt::one();
        let mut divisors = true;
        for k in 1..=rows.min(cols) {
            product *= diag[k - 1].abs();
            divisors &= product == oracles::gcd_of_minors(&a, k);
        }
        if !(recomposed && unimodular && divisors) {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("500 matrices, {bad} mismatches")))
}

fn check_nu_p() -> Result<(bool, String)> {
    let table = oracles::power_table(2, 10);
    let mut words = 0;
    let mut bad = Vec::new();
    for w in oracles::all_reduced_words(2, 10) {
        if w.is_empty() {
            continue;
        }
        words += 1;
        let word = letters_to_word(2, &w);
        let mask = table.get(&w).copied().unwrap_or(0);
        for p in [2u64, 3] {
            let expected = Valuation::Finite(oracles::nu_from_powers(mask, p));
            if word.nu_p(prime(p)) != expected {
                bad.push(format!("{w:?} p={p}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{words} words; mismatches: {}", bad.len())))
}

fn check_triangle() -> Result<(bool, String)> {
    let sig: FuchsianSignature = "(0; 6,12,12)".parse()?;
    let mut ok = true;
    let mut detail = Vec::new();
    for (p, case) in [(2u64, Case::D), (3, Case::B)] {
        let exact = sig.de_exact(prime(p));
        let presented = sig.standard_presentation().p_deficiency(prime(p));
        let oracle = oracles::classify_by_labelings(sig.genus(), sig.periods(), p);
        let this = exact == DeExact::Exact { case, value: ExactRational::zero() }
            && oracle == Some(case.letter())
            && presented.is_zero()
            && sig.de_standard(prime(p)).is_zero();
        ok &= this;
        let shown = match &exact {
            DeExact::Exact { case, value } => format!("case {case}, de = {}", rs(value)),
            DeExact::Negative { lower, upper } => format!("negative in [{}, {}]", rs(lower), rs(upper)),
        };
        let oracle_shown = oracle.map_or("none".to_string(), String::from);
        detail.push(format!("p={p}: {shown}, labelling oracle {oracle_shown}, presentation {}", rs(&presented)));
    }
    Ok((ok, detail.join("; ")))
}

fn check_singerman() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (text, p, case, expected) in [
        ("(1; 2,3)", 2u64, Case::A, "(1; 2,2,2,2,3,3,3,3)"),
        ("(0; 4,4,4)", 2, Case::D, "(0; 2,2,4,4)"),
    ] {
        let sig: FuchsianSignature = text.parse()?;
        let (act, sub) = kernel_construction(&sig, prime(p), case)?;
        let n = rat(act.degree() as i64, 1);
        let mut this = sub == expected.parse::<FuchsianSignature>()?
            && sub.volume() == &n * sig.volume()
            && sub.de_standard(prime(p)) == &n * sig.de_standard(prime(p));
        // The action is regular, so the kernel is the subgroup; compare abelianisations.
        let q = act.to_quotient(100)?;
        let std = sig.standard_presentation();
        let via_rs = abelian_invariants(&subgroup_presentation(&std, &q)?);
        let via_sig = abelian_invariants(&sub.standard_presentation());
        this &= via_rs == via_sig;
        ok &= this;
        detail.push(format!("{text} case {case} -> {sub} (index {}, abelianisation {via_rs})", act.degree()));
    }
    Ok((ok, detail.join("; ")))
}

fn check_size_bound() -> Result<(bool, String)> {
    let two = prime(2);
    let p = FinitePresentation::parse("<x,y|x^2,y^5,(x*y)^5>")?;
    let q = FiniteQuotient::cyclic(5, &[0, 1])?;
    let bound = p_size_bound(&p, &q, two)?;
    let report = supermultiplicity_check(&p, &q, two)?;
    let upper = upper_bound_de(&p, two);
    let ok = bound.value <= rat(9, 2)
        && bound.value < rat(5, 1)
        && report.de_sub >= rat(1, 2)
        && report.de_orig == rat(-3, 2)
        && upper == rat(-1, 1)
        && oracle_upper_bound(&p, 2).1 == upper;
    Ok((
        ok,
        format!(
            "size bound {}, kernel de_2 {}, presentation de_2 {}, abelian bound {}",
            rs(&bound.value),
            rs(&report.de_sub),
            rs(&report.de_orig),
            rs(&upper)
        ),
    ))
}

fn check_chi() -> Result<(bool, String)> {
    let two = prime(2);
    let catalog = GroupCatalog::default().restricted(12);
    let budget = Budget { max_order: 12, ..Budget::default() };
    let f2 = FinitePresentation::parse("<x,y|>")?;
    let est_f2 = chi_p_estimate(&f2, two, &catalog, budget)?;
    let f2_ok = !est_f2.samples.is_empty() && est_f2.samples.iter().all(|s| s.ratio == rat(1, 1));

    let surface = FinitePresentation::parse("<a,b,c,d|a*b*a^-1*b^-1*c*d*c^-1*d^-1>")?;
    let small = GroupCatalog::default().restricted(6);
    let est_s = chi_p_estimate(&surface, two, &small, Budget { max_order: 6, ..Budget::default() })?;
    let surface_ok = est_s.samples.iter().all(|s| s.ratio <= rat(2, 1))
        && surface.p_deficiency(two) == rat(2, 1)
        && est_s.best_ratio == rat(2, 1);

    let f3 = subgroup_presentation(&f2, &FiniteQuotient::cyclic(2, &[1, 0])?)?;
    let est_f3 = chi_p_estimate(&f3, two, &catalog, budget)?;
    let mult_ok = f3.rank() == 3 && est_f3.best_ratio == rat(2, 1) * &est_f2.best_ratio;
    Ok((
        f2_ok && surface_ok && mult_ok,
        format!(
            "F2: {} kernels, best {}; genus 2: {} kernels, max ratio {}; index-2 kernel of F2: best {}",
            est_f2.subgroups_examined,
            rs(&est_f2.best_ratio),
            est_s.subgroups_examined,
            rs(&est_s.best_ratio),
            rs(&est_f3.best_ratio)
        ),
    ))
}

fn check_power_witness() -> Result<(bool, String)> {
    let two = prime(2);
    let p = FinitePresentation::parse("<x,y|x^6,y^12,(x*y)^12>")?;
    let de = p.p_deficiency(two);
    let report = supermultiplicity_check(&p, &FiniteQuotient::cyclic(3, &[1, 0])?, two)?;
    let witness = lemma_power_witness(&p, two, &GroupCatalog::default(), Budget::default())?;
    let witness_ok = witness.as_ref().is_some_and(|w| {
        w.relator == 0 && p.word_text(&w.root) == "x^2" && w.exponent == 3 && w.is_positive()
    });
    Ok((
        de.is_zero() && report.de_sub > ExactRational::zero() && witness_ok,
        format!(
            "presentation de_2 {}, index-3 kernel de_2 {}, witness {}",
            rs(&de),
            rs(&report.de_sub),
            witness.map_or("none".into(), |w| format!(
                "{} = ({})^{} via {}",
                p.word_text(&p.relators()[w.relator]),
                p.word_text(&w.root),
                w.exponent,
                w.quotient.describe(p.generators())
            ))
        ),
    ))
}

fn check_dp_drop() -> Result<(bool, String)> {
    let mut g = rng(0xD9D);
    let mut bad = Vec::new();
    for _ in 0..200 {
        let pres = random_presentation(&mut g, 3, 3, 8);
        let count = g.gen_range(1..=3);
        let n = pres.rank();
        let normal: Vec<Word> = (0..count)
            .map(|_| {
                let w = random_word(&mut g, n, 6);
                let e = *[1i64, 1, 2, 3, 4].choose(&mut g).expect("nonempty");
                w.pow(e)
            })
            .collect();
        let p = *[2u64, 3, 5].choose(&mut g).expect("nonempty");
        let report = quotient_dp_drop(&pres, &normal, prime(p))?;
        let before = n - oracles::rank_mod_p(&exponent_rows(&pres), p as i64);
        let after_rows: Vec<Vec<i64>> =
            exponent_rows(&pres).into_iter().chain(normal.iter().map(Word::exponent_sums)).collect();
        let after = n - oracles::rank_mod_p(&after_rows, p as i64);
        if !report.holds || report.d_before != before || report.d_after != after || after + report.ell < before {
            bad.push(format!("{pres} + {} gens, p={p}", normal.len()));
        }
    }
    Ok((bad.is_empty(), format!("200 instances; failures: {}", if bad.is_empty() { "none".into() } else { bad.join("; ") })))
}
