//! Search-based invariants over kernels of finite quotients: lower bounds for
//! `-χ_p`, windows of `d_p`-gradients, the `d_p` drop under a normal quotient
//! and witnesses of positive p-deficiency in finite-index subgroups.

use num_bigint::BigInt;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::abelian::{abelian_invariants, upper_bound_de};
use crate::error::{Error, Result};
use crate::presentation::FinitePresentation;
use crate::quotient::{Budget, FiniteQuotient, GroupCatalog, QuotientSearch};
use crate::rewrite::{subgroup_presentation, supermultiplicity_check, SupermultReport};
use crate::scalar::{rational_string, Prime};
use crate::words::{Valuation, Word};
use crate::ExactRational;

/// Largest `de(Δ)/(Γ:Δ)` found over kernels of catalog quotients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiEstimate {
    pub best_ratio: ExactRational,
    pub best_index: usize,
    /// Assignment text of the quotient attaining `best_ratio`.
    pub witness: String,
    pub subgroups_examined: usize,
    pub assignments_examined: u64,
    pub budget_exhausted: bool,
    /// One entry per kernel examined, in search order.
    pub samples: Vec<RatioSample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioSample {
    pub index: usize,
    pub de: ExactRational,
    pub ratio: ExactRational,
    pub quotient: String,
}

fn index_ratio(value: ExactRational, index: usize) -> ExactRational {
    value / Ratio::from_integer(BigInt::from(index))
}

/// Kernels are visited in search order; the first maximiser is kept.
pub fn chi_p_estimate(
    p: &FinitePresentation,
    prime: Prime,
    catalog: &GroupCatalog,
    budget: Budget,
) -> Result<ChiEstimate> {
    let mut search = QuotientSearch::new(p, catalog, budget);
    let mut best: Option<(ExactRational, usize, String)> = None;
    let mut samples = Vec::new();
    for q in search.by_ref() {
        let de = subgroup_presentation(p, &q)?.p_deficiency(prime);
        let ratio = index_ratio(de.clone(), q.order());
        let quotient = q.describe(p.generators());
        if best.as_ref().is_none_or(|(b, _, _)| ratio > *b) {
            best = Some((ratio.clone(), q.order(), quotient.clone()));
        }
        samples.push(RatioSample {
            index: q.order(),
            de,
            ratio,
            quotient,
        });
    }
    // The identity map is always a candidate, even with an empty catalog.
    let (best_ratio, best_index, witness) = match best {
        Some(b) if b.0 >= p.p_deficiency(prime) => b,
        _ => (p.p_deficiency(prime), 1, String::new()),
    };
    Ok(ChiEstimate {
        best_ratio,
        best_index,
        witness,
        subgroups_examined: samples.len(),
        assignments_examined: search.assignments_examined(),
        budget_exhausted: search.budget_exhausted(),
        samples,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradientSample {
    pub index: usize,
    pub d_p: usize,
    pub ratio: ExactRational,
    pub quotient: String,
}

/// `d_p(Δ)/(Γ:Δ)` over the kernels examined. The extremes are taken over
/// this finite window only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradientWindow {
    pub samples: Vec<GradientSample>,
    pub min_ratio: Option<ExactRational>,
    pub max_ratio: Option<ExactRational>,
    pub budget_exhausted: bool,
}

pub fn gradient_window(
    p: &FinitePresentation,
    prime: Prime,
    catalog: &GroupCatalog,
    budget: Budget,
) -> Result<GradientWindow> {
    let mut search = QuotientSearch::new(p, catalog, budget);
    let mut samples = Vec::new();
    for q in search.by_ref() {
        let d_p = abelian_invariants(&subgroup_presentation(p, &q)?).d_p(prime);
        samples.push(GradientSample {
            index: q.order(),
            d_p,
            ratio: Ratio::new(BigInt::from(d_p), BigInt::from(q.order())),
            quotient: q.describe(p.generators()),
        });
    }
    Ok(GradientWindow {
        min_ratio: samples.iter().map(|s| s.ratio.clone()).min(),
        max_ratio: samples.iter().map(|s| s.ratio.clone()).max(),
        samples,
        budget_exhausted: search.budget_exhausted(),
    })
}

/// Smallest `ub(Δ)/(Γ:Δ)` over the kernels examined, where `ub` is the
/// abelianisation bound of the kernel presentation. Each value bounds the
/// p-deficiency of the whole group from above.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupUpperBound {
    pub value: ExactRational,
    pub index: usize,
    pub quotient: String,
    pub budget_exhausted: bool,
}

pub fn subgroup_upper_bound(
    p: &FinitePresentation,
    prime: Prime,
    catalog: &GroupCatalog,
    budget: Budget,
) -> Result<SubgroupUpperBound> {
    let mut search = QuotientSearch::new(p, catalog, budget);
    let mut best = SubgroupUpperBound {
        value: upper_bound_de(p, prime),
        index: 1,
        quotient: String::new(),
        budget_exhausted: false,
    };
    for q in search.by_ref() {
        let bound = index_ratio(upper_bound_de(&subgroup_presentation(p, &q)?, prime), q.order());
        if bound < best.value {
            best.value = bound;
            best.index = q.order();
            best.quotient = q.describe(p.generators());
        }
    }
    best.budget_exhausted = search.budget_exhausted();
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DpDropReport {
    pub d_before: usize,
    pub d_after: usize,
    /// Number of added relators that are not p-th powers.
    pub ell: usize,
    pub holds: bool,
}

/// Compares `d_p` before and after adding `normal_gens` as relators.
pub fn quotient_dp_drop(
    p: &FinitePresentation,
    normal_gens: &[Word],
    prime: Prime,
) -> Result<DpDropReport> {
    let d_before = abelian_invariants(p).d_p(prime);
    let after = p.with_relators(normal_gens.iter().cloned())?;
    let d_after = abelian_invariants(&after).d_p(prime);
    let ell = normal_gens
        .iter()
        .filter(|w| w.nu_p(prime) == Valuation::Finite(0))
        .count();
    Ok(DpDropReport {
        d_before,
        d_after,
        ell,
        holds: d_after + ell >= d_before,
    })
}

/// A relator `r = g^e` with `p ∤ e` whose root survives in a finite quotient,
/// together with the exact p-deficiency of the kernel presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWitness {
    pub relator: usize,
    pub root: Word,
    pub exponent: u64,
    pub quotient: FiniteQuotient,
    pub report: SupermultReport,
}

impl PowerWitness {
    pub fn is_positive(&self) -> bool {
        self.report.de_sub > ExactRational::from_integer(BigInt::from(0))
    }
}

/// Searches for a kernel of positive p-deficiency certified by a relator
/// whose p′-root is not killed. Requires `p_deficiency(P, p) = 0`.
pub fn lemma_power_witness(
    p: &FinitePresentation,
    prime: Prime,
    catalog: &GroupCatalog,
    budget: Budget,
) -> Result<Option<PowerWitness>> {
    let de = p.p_deficiency(prime);
    if de != ExactRational::from_integer(BigInt::from(0)) {
        return Err(Error::NonzeroDeficiency(rational_string(&de)));
    }
    let roots = p
        .relators()
        .iter()
        .map(|r| r.p_prime_root(prime))
        .collect::<Result<Vec<_>>>()?;
    for q in QuotientSearch::new(p, catalog, budget) {
        for (relator, (root, exponent)) in roots.iter().enumerate() {
            if q.evaluate(root)?.is_identity() {
                continue;
            }
            let report = supermultiplicity_check(p, &q, prime)?;
            return Ok(Some(PowerWitness {
                relator,
                root: root.clone(),
                exponent: *exponent,
                quotient: q,
                report,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> FinitePresentation {
        FinitePresentation::parse(s).unwrap()
    }

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        Ratio::new(n.into(), d.into())
    }

    fn only(groups: &[&str]) -> GroupCatalog {
        let def = GroupCatalog::default();
        GroupCatalog::new(groups.iter().map(|n| def.by_name(n).unwrap().clone()).collect())
    }

    #[test]
    fn chi_estimates() {
        let f2 = pres("<x,y|>");
        let est = chi_p_estimate(&f2, pr(2), &only(&["C2", "C3", "S3"]), Budget::default()).unwrap();
        assert_eq!(est.best_ratio, q(1, 1));
        assert!(est.subgroups_examined > 5);

        let surface = pres("<a,b,c,d|a*b*a^-1*b^-1*c*d*c^-1*d^-1>");
        let est = chi_p_estimate(&surface, pr(3), &only(&["C2", "C3"]), Budget::default()).unwrap();
        assert_eq!(est.best_ratio, q(2, 1));

        let tri = pres("<x,y,z|x^2, y^4, z^4, x*y*z>");
        let est = chi_p_estimate(&tri, pr(2), &only(&["C2", "C4"]), Budget::default()).unwrap();
        assert!(est.best_ratio >= q(0, 1));
    }

    #[test]
    fn gradients() {
        let f2 = pres("<x,y|>");
        let w = gradient_window(&f2, pr(2), &only(&["C2", "C3"]), Budget::default()).unwrap();
        for s in &w.samples {
            assert_eq!(s.ratio, q(s.index as i64 + 1, s.index as i64));
        }
        assert!(w.samples.iter().any(|s| s.index == 2 && s.d_p == 3));
        let dinf = pres("<x,y|x^2,y^2>");
        let w = gradient_window(&dinf, pr(2), &only(&["C2"]), Budget::default()).unwrap();
        let via_xy = w.samples.iter().find(|s| s.quotient == "x:(1 2),y:(1 2)").unwrap();
        assert_eq!((via_xy.d_p, via_xy.ratio.clone()), (1, q(1, 2)));
    }

    #[test]
    fn subgroup_bounds_tighten() {
        let tri = pres("<x,y,z|x^2, y^4, z^4, x*y*z>");
        let b = subgroup_upper_bound(&tri, pr(2), &only(&["C2"]), Budget::default()).unwrap();
        assert_eq!((b.value.clone(), b.index), (q(1, 8), 2));
        let wide = subgroup_upper_bound(&tri, pr(2), &only(&["C2", "C4", "D4"]), Budget::default());
        let wide = wide.unwrap();
        assert!(wide.value <= b.value && wide.value > q(0, 1));
    }

    #[test]
    fn dp_drop() {
        let f2 = pres("<x,y|>");
        let w = |s: &str| f2.word(s).unwrap();
        let r = quotient_dp_drop(&f2, &[w("x^2")], pr(2)).unwrap();
        assert_eq!((r.d_before, r.d_after, r.ell, r.holds), (2, 2, 0, true));
        let r = quotient_dp_drop(&f2, &[w("x^4")], pr(2)).unwrap();
        assert_eq!((r.d_after, r.ell), (2, 0));
        let r = quotient_dp_drop(&f2, &[w("x"), w("y")], pr(3)).unwrap();
        assert_eq!((r.d_before, r.d_after, r.ell, r.holds), (2, 0, 2, true));
        let r = quotient_dp_drop(&f2, &[w("x^3")], pr(2)).unwrap();
        assert_eq!((r.d_after, r.ell), (1, 1));
    }

    #[test]
    fn power_witnesses() {
        let p = pres("<x,y|x^6, y^12, (x*y)^12>");
        let w = lemma_power_witness(&p, pr(2), &GroupCatalog::default(), Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!((w.relator, p.word_text(&w.root), w.exponent), (0, "x^2".into(), 3));
        assert_eq!(w.quotient.describe(p.generators()), "x:(1 2 3),y:()");
        assert!(w.is_positive());

        let tri = pres("<x,y,z|x^2, y^4, z^4, x*y*z>");
        let budget = Budget { max_order: 12, ..Budget::default() };
        assert_eq!(lemma_power_witness(&tri, pr(2), &GroupCatalog::default(), budget), Ok(None));

        let cubed = tri.power_up(3).unwrap();
        assert_eq!(cubed.p_deficiency(pr(2)), q(0, 1));
        let w = lemma_power_witness(&cubed, pr(2), &only(&["C3"]), Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.exponent, 3);
        assert!(w.is_positive());

        assert!(matches!(
            lemma_power_witness(&pres("<x|x^2>"), pr(2), &only(&["C2"]), Budget::default()),
            Err(Error::NonzeroDeficiency(_))
        ));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::words::{reduce, Letter};
    use proptest::prelude::*;

    fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 1..max_len).prop_map(move |ls| {
            let letters: Vec<Letter> = ls.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect();
            reduce(gens, &letters).unwrap()
        })
        .prop_filter("nontrivial", |w| !w.is_identity())
    }

    fn names(n: usize) -> Vec<String> {
        FinitePresentation::numbered_names("x", n)
    }

    proptest! {
        #[test]
        fn dp_drop_inequality(
            rels in prop::collection::vec(word(3, 8), 0..3),
            extra in prop::collection::vec((word(3, 6), 1i64..5), 1..4),
            p in prop::sample::select(vec![2u64, 3, 5]),
        ) {
            let pres = FinitePresentation::new(names(3), rels).unwrap();
            let gens: Vec<Word> = extra.iter().map(|(w, e)| w.pow(*e)).collect();
            let r = quotient_dp_drop(&pres, &gens, Prime::new(p).unwrap()).unwrap();
            prop_assert!(r.holds && r.d_after <= r.d_before);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn chi_monotone_in_budget(rels in prop::collection::vec(word(2, 8), 0..2), cut in 2usize..8) {
            let pres = FinitePresentation::new(names(2), rels).unwrap();
            let two = Prime::new(2).unwrap();
            let catalog = GroupCatalog::default().restricted(8);
            let small = Budget { max_order: cut, ..Budget::default() };
            let large = Budget { max_order: 8, ..Budget::default() };
            let a = chi_p_estimate(&pres, two, &catalog, small).unwrap();
            let b = chi_p_estimate(&pres, two, &catalog, large).unwrap();
            prop_assert!(a.best_ratio <= b.best_ratio);
            prop_assert!(a.best_ratio >= pres.p_deficiency(two));
        }

        #[test]
        fn fuchsian_ratios_bounded_by_volume(es in prop::collection::vec(2u64..7, 3..4)) {
            let Ok(sig) = crate::fuchsian::FuchsianSignature::new(0, es) else { return Ok(()); };
            let pres = sig.standard_presentation();
            let two = Prime::new(2).unwrap();
            let est = chi_p_estimate(&pres, two, &GroupCatalog::default().restricted(8), Budget::default()).unwrap();
            for s in &est.samples {
                prop_assert!(s.ratio <= sig.volume());
            }
        }
    }
}
