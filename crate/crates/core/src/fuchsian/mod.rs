//! Cocompact orientable Fuchsian groups: signatures, standard presentations,
//! hyperbolic volume, p-deficiency bounds, the exact-value classifier and
//! signature transfer to finite-index subgroups.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::FinitePresentation;
use crate::quotient::{FiniteQuotient, Perm};
use crate::rewrite::CosetTable;
use crate::scalar::{nu_p_int, one_minus, ratio_int, rational_string, Prime};
use crate::words::Word;
use crate::ExactRational;

/// `(s; e_1, …, e_r)` with periods stored in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct FuchsianSignature {
    genus: u64,
    periods: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    genus: u64,
    periods: Vec<u64>,
}

impl TryFrom<RawSignature> for FuchsianSignature {
    type Error = Error;

    fn try_from(raw: RawSignature) -> Result<Self> {
        FuchsianSignature::new(raw.genus, raw.periods)
    }
}

impl From<FuchsianSignature> for RawSignature {
    fn from(sig: FuchsianSignature) -> Self {
        RawSignature {
            genus: sig.genus,
            periods: sig.periods,
        }
    }
}

fn mu(genus: u64, periods: &[u64]) -> ExactRational {
    periods.iter().fold(ratio_int(2 * genus as i64 - 2), |acc, &e| {
        acc + one_minus(Ratio::new(BigInt::one(), BigInt::from(e)))
    })
}

impl FuchsianSignature {
    pub fn new(genus: u64, mut periods: Vec<u64>) -> Result<Self> {
        if let Some(e) = periods.iter().find(|&&e| e < 2) {
            return Err(Error::InvalidSignature(format!("period {e} is below 2")));
        }
        periods.sort_unstable();
        let volume = mu(genus, &periods);
        if volume <= ExactRational::zero() {
            return Err(Error::NotHyperbolic {
                volume: rational_string(&volume),
            });
        }
        Ok(FuchsianSignature { genus, periods })
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn periods(&self) -> &[u64] {
        &self.periods
    }

    /// `2s - 2 + Σ (1 - 1/e_i)`.
    pub fn volume(&self) -> ExactRational {
        mu(self.genus, &self.periods)
    }

    /// Generator names: `x1..xr` then `u1, v1, u2, v2, …`.
    pub fn generator_names(&self) -> Vec<String> {
        let mut names = FinitePresentation::numbered_names("x", self.periods.len());
        for j in 1..=self.genus {
            names.push(format!("u{j}"));
            names.push(format!("v{j}"));
        }
        names
    }

    /// `⟨x_i, u_j, v_j | x_i^{e_i}, x_1⋯x_r [u_1,v_1]⋯[u_s,v_s]⟩` with
    /// `[u,v] = u v u⁻¹ v⁻¹`.
    pub fn standard_presentation(&self) -> FinitePresentation {
        let r = self.periods.len();
        let n = r + 2 * self.genus as usize;
        let mut relators: Vec<Word> = self
            .periods
            .iter()
            .enumerate()
            .map(|(i, &e)| Word::from_runs(n, [(i, e as i64)]).expect("valid generator"))
            .collect();
        let mut long: Vec<(usize, i64)> = (0..r).map(|i| (i, 1)).collect();
        for j in 0..self.genus as usize {
            let (u, v) = (r + 2 * j, r + 2 * j + 1);
            long.extend([(u, 1), (v, 1), (u, -1), (v, -1)]);
        }
        relators.push(Word::from_runs(n, long).expect("valid generators"));
        FinitePresentation::new(self.generator_names(), relators)
            .expect("standard presentation is well formed")
    }

    /// `2s - 2 + Σ (1 - p^{-ν_p(e_i)})`.
    pub fn de_standard(&self, p: Prime) -> ExactRational {
        self.periods.iter().fold(ratio_int(2 * self.genus as i64 - 2), |acc, e| {
            acc + one_minus(p.inverse_power::<BigInt>(nu(*e, p)))
        })
    }

    /// `2s - 1 + Σ_{i≥2} (1 - p^{-ν_p(e_i)})` with periods ordered by
    /// decreasing valuation.
    pub fn de_upper(&self, p: Prime) -> ExactRational {
        let mut vals: Vec<u32> = self.periods.iter().map(|&e| nu(e, p)).collect();
        vals.sort_unstable_by(|a, b| b.cmp(a));
        vals.iter().skip(1).fold(ratio_int(2 * self.genus as i64 - 1), |acc, &k| {
            acc + one_minus(p.inverse_power::<BigInt>(k))
        })
    }

    pub fn classify(&self, p: Prime) -> Option<Classification> {
        classify(self, p)
    }

    pub fn de_exact(&self, p: Prime) -> DeExact {
        match classify(self, p) {
            Some(c) => DeExact::Exact {
                case: c.case,
                value: self.de_standard(p),
            },
            None => DeExact::Negative {
                lower: self.de_standard(p),
                upper: self.de_upper(p),
            },
        }
    }
}

fn nu(e: u64, p: Prime) -> u32 {
    nu_p_int(&(e as i128), p).expect("periods are positive")
}

impl fmt::Display for FuchsianSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let periods: Vec<String> = self.periods.iter().map(u64::to_string).collect();
        write!(f, "({}; {})", self.genus, periods.join(","))
    }
}

impl FromStr for FuchsianSignature {
    type Err = Error;

    /// Accepts `(s; e1,e2,…)`; the period list may be empty or `-`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::InvalidSignature(format!("`{text}` is not of the form (s; e1,e2,...)"));
        let body = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (genus, periods) = body.split_once(';').ok_or_else(bad)?;
        let genus: u64 = genus.trim().parse().map_err(|_| bad())?;
        let periods = periods.trim();
        let periods = if periods.is_empty() || periods == "-" {
            Vec::new()
        } else {
            periods
                .split(',')
                .map(|e| e.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        FuchsianSignature::new(genus, periods)
    }
}

/// The four sufficient conditions for the standard presentation to realise
/// the p-deficiency of the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
    D,
}

impl Case {
    pub fn letter(self) -> char {
        match self {
            Case::A => 'a',
            Case::B => 'b',
            Case::C => 'c',
            Case::D => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Case> {
        match c.to_ascii_lowercase() {
            'a' => Some(Case::A),
            'b' => Some(Case::B),
            'c' => Some(Case::C),
            'd' => Some(Case::D),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A satisfied case together with a labelling of the periods that witnesses
/// it: `labeling[k]` is the index (into the sorted periods) playing `e_{k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub case: Case,
    pub labeling: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DeExact {
    Exact { case: Case, value: ExactRational },
    /// The p-deficiency is negative; the standard bounds still apply.
    Negative { lower: ExactRational, upper: ExactRational },
}

/// Puts the indices selected by `first` in front, then the rest in order.
fn labeling_with(r: usize, first: &[usize]) -> Vec<usize> {
    let mut out = first.to_vec();
    out.extend((0..r).filter(|i| !first.contains(i)));
    out
}

fn indices_where(sig: &FuchsianSignature, pred: impl Fn(u64) -> bool) -> Vec<usize> {
    (0..sig.periods.len()).filter(|&i| pred(sig.periods[i])).collect()
}

/// Labelling witnessing `case`, if the case holds for some ordering of the
/// periods.
pub fn case_labeling(sig: &FuchsianSignature, p: Prime, case: Case) -> Option<Vec<usize>> {
    let r = sig.periods.len();
    let q = p.get();
    match case {
        Case::A => (sig.genus >= 1).then(|| (0..r).collect()),
        Case::B => {
            let div = indices_where(sig, |e| e % q == 0);
            (q >= 3 && div.len() >= 3).then(|| labeling_with(r, &div[..3]))
        }
        Case::C => {
            let even = indices_where(sig, |e| e % 2 == 0);
            (q == 2 && even.len() >= 4).then(|| labeling_with(r, &even[..4]))
        }
        Case::D => {
            let four = indices_where(sig, |e| e % 4 == 0);
            if q != 2 || four.len() < 2 {
                return None;
            }
            let third = (0..r).find(|&i| i != four[0] && i != four[1] && sig.periods[i].is_multiple_of(2))?;
            Some(labeling_with(r, &[four[0], four[1], third]))
        }
    }
}

/// First case among (a)–(d) that holds for some labelling of the periods.
pub fn classify(sig: &FuchsianSignature, p: Prime) -> Option<Classification> {
    [Case::A, Case::B, Case::C, Case::D]
        .into_iter()
        .find_map(|case| case_labeling(sig, p, case).map(|labeling| Classification { case, labeling }))
}

/// Permutation images of the standard generators, in the order
/// `x_1..x_r, u_1, v_1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticAction {
    degree: usize,
    elliptic: Vec<Perm>,
    hyperbolic: Vec<(Perm, Perm)>,
}

impl EllipticAction {
    pub fn new(degree: usize, elliptic: Vec<Perm>, hyperbolic: Vec<(Perm, Perm)>) -> Result<Self> {
        let all = elliptic.iter().chain(hyperbolic.iter().flat_map(|(u, v)| [u, v]));
        if let Some(p) = all.clone().find(|p| p.degree() != degree) {
            return Err(Error::InconsistentAction(format!(
                "{p} has degree {} instead of {degree}",
                p.degree()
            )));
        }
        CosetTable::from_action(degree, all.cloned().collect())?;
        Ok(EllipticAction {
            degree,
            elliptic,
            hyperbolic,
        })
    }

    /// Parses one cycle-notation permutation per standard generator.
    pub fn parse(degree: usize, sig: &FuchsianSignature, perms: &[&str]) -> Result<Self> {
        let r = sig.periods.len();
        let expected = r + 2 * sig.genus as usize;
        if perms.len() != expected {
            return Err(Error::InconsistentAction(format!(
                "expected {expected} permutations, got {}",
                perms.len()
            )));
        }
        let perms = perms
            .iter()
            .map(|s| Perm::parse(degree, s))
            .collect::<Result<Vec<_>>>()?;
        let hyperbolic = perms[r..].chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
        EllipticAction::new(degree, perms[..r].to_vec(), hyperbolic)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elliptic(&self) -> &[Perm] {
        &self.elliptic
    }

    pub fn hyperbolic(&self) -> &[(Perm, Perm)] {
        &self.hyperbolic
    }

    /// All images in standard generator order.
    pub fn images(&self) -> Vec<Perm> {
        self.elliptic
            .iter()
            .cloned()
            .chain(self.hyperbolic.iter().flat_map(|(u, v)| [u.clone(), v.clone()]))
            .collect()
    }

    /// The action viewed as a homomorphism onto its image group; only a
    /// regular action makes the cosets correspond to the image elements.
    pub fn to_quotient(&self, bound: usize) -> Result<FiniteQuotient> {
        FiniteQuotient::with_bound(self.degree, self.images(), bound)
    }

    fn check(&self, sig: &FuchsianSignature) -> Result<()> {
        if self.elliptic.len() != sig.periods.len() || self.hyperbolic.len() != sig.genus as usize {
            return Err(Error::InconsistentAction(
                "number of images does not match the signature".into(),
            ));
        }
        for (i, (x, &e)) in self.elliptic.iter().zip(&sig.periods).enumerate() {
            if e % x.order() != 0 {
                return Err(Error::InconsistentAction(format!(
                    "image of x{} has order {} not dividing {e}",
                    i + 1,
                    x.order()
                )));
            }
        }
        let id = Perm::identity(self.degree);
        let product = self.elliptic.iter().fold(id, |acc, x| acc.then(x));
        let product = self.hyperbolic.iter().fold(product, |acc, (u, v)| {
            acc.then(u).then(v).then(&u.inverse()).then(&v.inverse())
        });
        if !product.is_identity() {
            return Err(Error::InconsistentAction(
                "long relation is not mapped to the identity".into(),
            ));
        }
        Ok(())
    }
}

/// Signature of the subgroup whose coset action is `act`.
pub fn singerman_transfer(sig: &FuchsianSignature, act: &EllipticAction) -> Result<FuchsianSignature> {
    act.check(sig)?;
    let mut periods = Vec::new();
    for (x, &e) in act.elliptic.iter().zip(&sig.periods) {
        for len in x.cycle_lengths() {
            let len = len as u64;
            if len < e {
                periods.push(e / len);
            }
        }
    }
    let n = ratio_int(act.degree as i64);
    let elliptic_part = periods.iter().fold(ExactRational::zero(), |acc, &f| {
        acc + one_minus(Ratio::new(BigInt::one(), BigInt::from(f)))
    });
    // 2s' - 2 = n·μ - Σ (1 - 1/f_j)
    let twice_genus = n * sig.volume() - elliptic_part + ratio_int(2);
    let inconsistent = || {
        Error::InconsistentAction(format!(
            "Riemann–Hurwitz gives 2s' = {}",
            rational_string(&twice_genus)
        ))
    };
    if !twice_genus.is_integer() || twice_genus < ExactRational::zero() {
        return Err(inconsistent());
    }
    let twice: BigInt = twice_genus.to_integer();
    if &twice % 2 != BigInt::zero() {
        return Err(inconsistent());
    }
    let genus = u64::try_from(twice / 2).map_err(|_| inconsistent())?;
    FuchsianSignature::new(genus, periods)
}

fn regular_klein_four() -> (Perm, Perm) {
    (
        Perm::parse(4, "(1 2)(3 4)").expect("static"),
        Perm::parse(4, "(1 3)(2 4)").expect("static"),
    )
}

fn cyclic_shift(n: usize) -> Perm {
    Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("shift")
}

/// Action of `C_n` (regular on `n` points) sending `x_{i}` to the `exps[i]`-th
/// power of the shift and every hyperbolic generator to the identity.
fn cyclic_elliptic_action(sig: &FuchsianSignature, n: usize, exps: &[(usize, i64)]) -> Result<EllipticAction> {
    let shift = cyclic_shift(n);
    let mut elliptic = vec![Perm::identity(n); sig.periods.len()];
    for &(i, e) in exps {
        elliptic[i] = shift.pow(e);
    }
    let id = Perm::identity(n);
    EllipticAction::new(n, elliptic, vec![(id.clone(), id); sig.genus as usize])
}

/// Normal subgroup realising the given case: `C_2²` killing the elliptic
/// generators for (a), `C_p` with `x_{e_1} ↦ 1`, `x_{e_2} ↦ -1` otherwise.
pub fn kernel_construction(
    sig: &FuchsianSignature,
    p: Prime,
    case: Case,
) -> Result<(EllipticAction, FuchsianSignature)> {
    let labeling = case_labeling(sig, p, case).ok_or(Error::CaseNotApplicable(case.letter()))?;
    let act = match case {
        Case::A => {
            let (a, b) = regular_klein_four();
            let id = Perm::identity(4);
            let mut hyperbolic = vec![(id.clone(), id.clone()); sig.genus as usize];
            hyperbolic[0] = (a, b);
            EllipticAction::new(4, vec![id; sig.periods.len()], hyperbolic)?
        }
        _ => {
            let n = p.get() as usize;
            cyclic_elliptic_action(sig, n, &[(labeling[0], 1), (labeling[1], -1)])?
        }
    };
    let sub = singerman_transfer(sig, &act)?;
    Ok((act, sub))
}

/// For `p = 2`, a signature of genus 0 outside (a)–(d) with exactly three even
/// periods: the index-2 subgroup sending the two periods `≡ 2 mod 4` (or any
/// two when fewer exist) to the generator. The result has exactly two even
/// periods and genus 0.
pub fn parity_descent(sig: &FuchsianSignature) -> Result<(EllipticAction, FuchsianSignature)> {
    let two = Prime::new(2).expect("prime");
    let even = indices_where(sig, |e| e % 2 == 0);
    if classify(sig, two).is_some() || even.len() != 3 {
        return Err(Error::InvalidSignature(format!(
            "{sig}: descent needs genus 0, exactly three even periods and no applicable case"
        )));
    }
    let mut chosen: Vec<usize> = even.iter().copied().filter(|&i| sig.periods[i] % 4 == 2).collect();
    chosen.truncate(2);
    let act = cyclic_elliptic_action(sig, 2, &[(chosen[0], 1), (chosen[1], 1)])?;
    let sub = singerman_transfer(sig, &act)?;
    Ok((act, sub))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> FuchsianSignature {
        s.parse().unwrap()
    }

    fn pr(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn q(n: i64, d: i64) -> ExactRational {
        Ratio::new(n.into(), d.into())
    }

    #[test]
    fn parsing_and_hyperbolicity() {
        assert_eq!(sig("(0; 12,6,12)").periods(), &[6, 12, 12]);
        assert_eq!(sig("(0; 6,12,12)").to_string(), "(0; 6,12,12)");
        assert_eq!(sig("(2;)").genus(), 2);
        assert_eq!(sig("(2; -)"), sig("(2; )"));
        assert!(matches!("(1;)".parse::<FuchsianSignature>(), Err(Error::NotHyperbolic { .. })));
        assert!(matches!("(0; 3,3,3)".parse::<FuchsianSignature>(), Err(Error::NotHyperbolic { .. })));
        assert!("(0; 1,7,7)".parse::<FuchsianSignature>().is_err());
        assert!("0; 2,3,7".parse::<FuchsianSignature>().is_err());
    }

    #[test]
    fn standard_presentations() {
        assert_eq!(
            sig("(0; 6,12,12)").standard_presentation().to_string(),
            "< x1, x2, x3 | x1^6, x2^12, x3^12, x1*x2*x3 >"
        );
        assert_eq!(
            sig("(2;)").standard_presentation().to_string(),
            "< u1, v1, u2, v2 | u1*v1*u1^-1*v1^-1*u2*v2*u2^-1*v2^-1 >"
        );
        let p = sig("(1; 2,3)").standard_presentation();
        assert_eq!((p.rank(), p.relators().len()), (4, 3));
    }

    #[test]
    fn volumes_and_bounds() {
        assert_eq!(sig("(0; 6,12,12)").volume(), q(2, 3));
        assert_eq!(sig("(2;)").volume(), q(2, 1));
        assert_eq!(sig("(0; 2,3,7)").volume(), q(1, 42));
        let t = sig("(0; 6,12,12)");
        assert_eq!(t.de_standard(pr(2)), q(0, 1));
        assert_eq!(t.de_standard(pr(3)), q(0, 1));
        assert_eq!(t.de_upper(pr(2)), q(1, 4));
        assert_eq!(sig("(2;)").de_standard(pr(5)), q(2, 1));
        assert_eq!(sig("(2;)").de_upper(pr(5)), q(3, 1));
        assert_eq!(sig("(0; 2,3,7)").de_upper(pr(2)), q(-1, 1));
    }

    #[test]
    fn standard_formula_matches_presentation() {
        for s in ["(0; 6,12,12)", "(2;)", "(1; 2,3)", "(0; 4,4,4)"] {
            let g = sig(s);
            for p in [2, 3, 5] {
                assert_eq!(g.de_standard(pr(p)), g.standard_presentation().p_deficiency(pr(p)));
            }
        }
    }

    #[test]
    fn classification() {
        assert_eq!(sig("(1; 7)").classify(pr(5)).unwrap().case, Case::A);
        let c = sig("(0; 6,12,12)").classify(pr(2)).unwrap();
        assert_eq!(c.case, Case::D);
        let labelled: Vec<u64> = c.labeling.iter().map(|&i| [6, 12, 12][i]).collect();
        assert_eq!(labelled, vec![12, 12, 6]);
        assert_eq!(sig("(0; 2,3,7)").classify(pr(2)), None);
        assert_eq!(sig("(0; 3,3,4)").classify(pr(3)), None);
        assert_eq!(sig("(0; 3,3,3,2)").classify(pr(3)).unwrap().case, Case::B);
        assert_eq!(sig("(0; 2,2,2,2,2)").classify(pr(2)).unwrap().case, Case::C);
    }

    #[test]
    fn exact_values() {
        assert_eq!(
            sig("(0; 6,12,12)").de_exact(pr(2)),
            DeExact::Exact { case: Case::D, value: q(0, 1) }
        );
        assert!(matches!(sig("(0; 3,3,4)").de_exact(pr(3)), DeExact::Negative { .. }));
        assert_eq!(
            sig("(0; 4,4,4)").de_exact(pr(2)),
            DeExact::Exact { case: Case::D, value: q(1, 4) }
        );
    }

    #[test]
    fn transfers() {
        let g = sig("(0; 4,4,4)");
        let act = EllipticAction::parse(2, &g, &["(1 2)", "(1 2)", "()"]).unwrap();
        assert_eq!(singerman_transfer(&g, &act).unwrap(), sig("(0; 2,2,4,4)"));

        let bad = EllipticAction::parse(2, &g, &["(1 2)", "()", "()"]).unwrap();
        assert!(matches!(singerman_transfer(&g, &bad), Err(Error::InconsistentAction(_))));
        let g7 = sig("(0; 2,3,7)");
        let wrong_order = EllipticAction::parse(3, &g7, &["(1 2 3)", "(1 3 2)", "()"]).unwrap();
        assert!(singerman_transfer(&g7, &wrong_order).is_err());
        assert_eq!(
            EllipticAction::parse(2, &g, &["()", "()", "()"]),
            Err(Error::NotTransitive)
        );
    }

    #[test]
    fn kernel_constructions() {
        let (act, sub) = kernel_construction(&sig("(1; 2,3)"), pr(2), Case::A).unwrap();
        assert_eq!(act.degree(), 4);
        assert_eq!(sub, sig("(1; 2,2,2,2,3,3,3,3)"));

        let g = sig("(0; 4,4,4)");
        let (act, sub) = kernel_construction(&g, pr(2), Case::D).unwrap();
        assert_eq!((act.degree(), sub.clone()), (2, sig("(0; 2,2,4,4)")));
        assert_eq!((g.de_standard(pr(2)), sub.de_standard(pr(2))), (q(1, 4), q(1, 2)));

        let (act, sub) = kernel_construction(&sig("(0; 3,3,3,2)"), pr(3), Case::B).unwrap();
        assert_eq!((act.degree(), sub), (3, sig("(0; 3,3,3,2,2,2)")));

        assert_eq!(
            kernel_construction(&sig("(0; 2,3,7)"), pr(2), Case::C),
            Err(Error::CaseNotApplicable('c'))
        );
        let (_, sub) = kernel_construction(&sig("(2; 5)"), pr(3), Case::A).unwrap();
        assert_eq!(sub, sig("(5; 5,5,5,5)"));
    }

    #[test]
    fn descent_for_two_periods_two_mod_four() {
        let g = sig("(0; 2,6,10)");
        assert_eq!(g.classify(pr(2)), None);
        let (act, sub) = parity_descent(&g).unwrap();
        assert_eq!(act.degree(), 2);
        assert_eq!(sub.genus(), 0);
        assert_eq!(sub.periods().iter().filter(|&&e| e % 2 == 0).count(), 2);
        assert!(parity_descent(&sig("(0; 4,4,4)")).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn signature() -> impl Strategy<Value = FuchsianSignature> {
        (0u64..3, prop::collection::vec(2u64..=24, 0..6))
            .prop_filter_map("hyperbolic", |(g, es)| FuchsianSignature::new(g, es).ok())
    }

    proptest! {
        #[test]
        fn upper_within_one_of_standard(sig in signature(), p in prop::sample::select(vec![2u64, 3, 5])) {
            let p = Prime::new(p).unwrap();
            let (lo, hi) = (sig.de_standard(p), sig.de_upper(p));
            prop_assert!(lo <= hi && hi <= &lo + ratio_int(1));
            prop_assert_eq!(sig.standard_presentation().p_deficiency(p), lo);
        }

        #[test]
        fn kernels_scale_volume_and_deficiency(sig in signature(), p in prop::sample::select(vec![2u64, 3, 5])) {
            let p = Prime::new(p).unwrap();
            let Some(class) = sig.classify(p) else { return Ok(()); };
            let (act, sub) = kernel_construction(&sig, p, class.case).unwrap();
            let n = ratio_int(act.degree() as i64);
            // Riemann–Hurwitz
            prop_assert_eq!(sub.volume(), &n * sig.volume());
            prop_assert_eq!(sub.de_standard(p), &n * sig.de_standard(p));
            if let DeExact::Exact { value, .. } = sig.de_exact(p) {
                prop_assert_eq!(value, sig.de_standard(p));
            }
        }

        #[test]
        fn display_round_trips(sig in signature()) {
            prop_assert_eq!(sig.to_string().parse::<FuchsianSignature>().unwrap(), sig);
        }
    }
}
