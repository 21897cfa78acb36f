use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use pdef::abelian::{abelian_invariants, upper_bound_de};
use pdef::fuchsian::{
    kernel_construction, singerman_transfer, Case, DeExact, EllipticAction, FuchsianSignature,
};
use pdef::invariants::{chi_p_estimate, gradient_window, lemma_power_witness};
use pdef::presentation::FinitePresentation;
use pdef::quotient::{Budget, FiniteQuotient, GroupCatalog};
use pdef::rewrite::{p_size_bound, subgroup_presentation, supermultiplicity_check};
use pdef::scalar::{rational_string as rs, Prime};
use pdef::verify;
use pdef::ExactRational;

use crate::{QuotientArgs, SearchArgs};

/// Text for the terminal, JSON for `--json`/`-o`, and whether every check passed.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn prime(p: u64) -> Result<Prime> {
    Ok(Prime::new(p)?)
}

fn parse_presentation(text: &str) -> Result<FinitePresentation> {
    FinitePresentation::parse(text).with_context(|| format!("parsing presentation {text:?}"))
}

fn opt(r: &Option<ExactRational>) -> Value {
    r.as_ref().map_or(Value::Null, |r| Value::String(rs(r)))
}

pub fn presentation_and_quotient(
    text: &str,
    args: &QuotientArgs,
) -> Result<(FinitePresentation, FiniteQuotient)> {
    let pres = parse_presentation(text)?;
    let q = match (&args.quotient, &args.hom_cyclic) {
        (Some(spec), _) => FiniteQuotient::parse_assignment(spec, pres.generators(), args.max_image)?,
        (None, Some(parts)) => {
            let order: usize = parts[0].parse().context("cyclic order")?;
            let exps = parts[1]
                .split(',')
                .map(|s| s.trim().parse::<i64>().context("cyclic exponent"))
                .collect::<Result<Vec<_>>>()?;
            if exps.len() != pres.rank() {
                bail!("{} exponents given for {} generators", exps.len(), pres.rank());
            }
            FiniteQuotient::cyclic(order, &exps)?
        }
        (None, None) => bail!("a quotient is required: use --quotient or --hom-cyclic"),
    };
    if !q.is_quotient_of(&pres)? {
        bail!("the assignment does not kill every relator");
    }
    Ok((pres, q))
}

fn catalog(search: &SearchArgs) -> Result<GroupCatalog> {
    match &search.catalog {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            Ok(GroupCatalog::parse_manifest(&text)?)
        }
        None => Ok(GroupCatalog::default()),
    }
}

fn budget(search: &SearchArgs) -> Budget {
    Budget {
        max_order: search.max_order,
        max_assignments: search.max_assignments,
    }
}

pub fn def(text: &str, p: u64) -> Result<Output> {
    let pres = parse_presentation(text)?;
    let pp = prime(p)?;
    let lower = pres.p_deficiency(pp);
    let upper = upper_bound_de(&pres, pp);
    let text = format!(
        "de_p(presentation) = {}; group de_{p} ∈ [{}, {}]\n",
        rs(&lower),
        rs(&lower),
        rs(&upper)
    );
    let json = json!({
        "command": "def",
        "presentation": pres.to_string(),
        "p": p,
        "presentation_de": rs(&lower),
        "group_de_lower": rs(&lower),
        "group_de_upper": rs(&upper),
    });
    Ok(Output::new(text, json))
}

pub fn abdef(text: &str, p: u64) -> Result<Output> {
    let pres = parse_presentation(text)?;
    let pp = prime(p)?;
    let inv = abelian_invariants(&pres);
    let ab = inv.abelian_p_deficiency(pp);
    let d = inv.d_p(pp);
    let text = format!(
        "abelianisation: {inv}\nabelian p-deficiency = {}\nd_{p} = {d}\n",
        rs(&ab)
    );
    let json = json!({
        "command": "abdef",
        "presentation": pres.to_string(),
        "p": p,
        "free_rank": inv.rank(),
        "torsion": inv.divisors().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "abelian_de": rs(&ab),
        "d_p": d,
    });
    Ok(Output::new(text, json))
}

pub fn subgroup(pres: &FinitePresentation, q: &FiniteQuotient, p: u64) -> Result<Output> {
    let pp = prime(p)?;
    let sub = subgroup_presentation(pres, q)?;
    let report = supermultiplicity_check(pres, q, pp)?;
    let mut text = format!("index {}\n{sub}\n", report.index);
    let _ = writeln!(
        text,
        "de_p(subgroup) = {} ≥ index·de_p(presentation) = {}: {}",
        rs(&report.de_sub),
        rs(&report.scaled_de_orig),
        if report.holds { "holds" } else { "FAILS" }
    );
    let json = json!({
        "command": "subgroup",
        "quotient": q.describe(pres.generators()),
        "p": p,
        "index": report.index,
        "subgroup": sub.to_string(),
        "de_sub": rs(&report.de_sub),
        "de_orig": rs(&report.de_orig),
        "scaled_de_orig": rs(&report.scaled_de_orig),
        "holds": report.holds,
    });
    Ok(Output { ok: report.holds, ..Output::new(text, json) })
}

pub fn psize(pres: &FinitePresentation, q: &FiniteQuotient, p: u64) -> Result<Output> {
    let bound = p_size_bound(pres, q, prime(p)?)?;
    let mut text = format!("index {}\n", bound.index);
    let mut terms = Vec::new();
    for t in &bound.terms {
        let r = pres.word_text(&pres.relators()[t.relator]);
        let _ = writeln!(
            text,
            "  {r}: k = {}, classes = {}, nu = {}, nu_p(k) = {}, bound {}, exact {}",
            t.k,
            t.classes,
            t.nu_free,
            t.nu_k,
            rs(&t.contribution),
            rs(&t.exact)
        );
        terms.push(json!({
            "relator": r,
            "k": t.k,
            "classes": t.classes,
            "nu_free": t.nu_free,
            "nu_k": t.nu_k,
            "contribution": rs(&t.contribution),
            "rewritten_valuations": t.rewritten_valuations.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "exact": rs(&t.exact),
        }));
    }
    let _ = writeln!(text, "p-size bound = {}; exact rewritten sum = {}", rs(&bound.value), rs(&bound.exact));
    let json = json!({
        "command": "psize",
        "quotient": q.describe(pres.generators()),
        "p": p,
        "index": bound.index,
        "value": rs(&bound.value),
        "exact": rs(&bound.exact),
        "terms": terms,
    });
    Ok(Output::new(text, json))
}

fn de_exact_json(d: &DeExact) -> (String, Value) {
    match d {
        DeExact::Exact { case, value } => (
            format!("{} (case {case})", rs(value)),
            json!({ "kind": "exact", "case": case.letter().to_string(), "value": rs(value) }),
        ),
        DeExact::Negative { lower, upper } => (
            format!("negative, in [{}, {}]", rs(lower), rs(upper)),
            json!({ "kind": "negative", "lower": rs(lower), "upper": rs(upper) }),
        ),
    }
}

pub fn fuchsian(text: &str, p: u64) -> Result<Output> {
    let sig: FuchsianSignature = text.parse()?;
    let pp = prime(p)?;
    let class = sig.classify(pp);
    let (exact_text, exact_json) = de_exact_json(&sig.de_exact(pp));
    let case = class.as_ref().map_or("none".to_string(), |c| c.case.letter().to_string());
    let text = format!(
        "{sig}\nvolume = {}\nde_standard = {}\nde_upper = {}\ncase = {case}\nde_exact = {exact_text}\n",
        rs(&sig.volume()),
        rs(&sig.de_standard(pp)),
        rs(&sig.de_upper(pp)),
    );
    let json = json!({
        "command": "fuchsian",
        "signature": sig.to_string(),
        "p": p,
        "volume": rs(&sig.volume()),
        "de_standard": rs(&sig.de_standard(pp)),
        "de_upper": rs(&sig.de_upper(pp)),
        "case": class.as_ref().map(|c| c.case.letter().to_string()),
        "labeling": class.as_ref().map(|c| c.labeling.clone()),
        "de_exact": exact_json,
    });
    Ok(Output::new(text, json))
}

pub fn singerman(
    text: &str,
    case: Option<char>,
    degree: Option<usize>,
    perms: &[String],
    p: u64,
) -> Result<Output> {
    let sig: FuchsianSignature = text.parse()?;
    let (act, sub) = match (case, degree) {
        (Some(c), _) => {
            let case = Case::from_letter(c).ok_or_else(|| anyhow!("unknown case {c:?}"))?;
            kernel_construction(&sig, prime(p)?, case)?
        }
        (None, Some(n)) => {
            let refs: Vec<&str> = perms.iter().map(String::as_str).collect();
            let act = EllipticAction::parse(n, &sig, &refs)?;
            let sub = singerman_transfer(&sig, &act)?;
            (act, sub)
        }
        (None, None) => bail!("give --case, or --degree with one --perm per generator"),
    };
    let images: Vec<String> = act.images().iter().map(ToString::to_string).collect();
    let names = sig.generator_names();
    let mut text = format!("{sig} -> {sub} (index {})\n", act.degree());
    for (name, img) in names.iter().zip(&images) {
        let _ = writeln!(text, "  {name} ↦ {img}");
    }
    let _ = writeln!(text, "volume {} -> {}", rs(&sig.volume()), rs(&sub.volume()));
    let json = json!({
        "command": "singerman",
        "signature": sig.to_string(),
        "index": act.degree(),
        "action": names.iter().zip(&images).map(|(n, i)| json!({ "generator": n, "image": i })).collect::<Vec<_>>(),
        "subgroup": sub.to_string(),
        "volume": rs(&sig.volume()),
        "subgroup_volume": rs(&sub.volume()),
    });
    Ok(Output::new(text, json))
}

pub fn chi(text: &str, p: u64, search: &SearchArgs) -> Result<Output> {
    let pres = parse_presentation(text)?;
    let est = chi_p_estimate(&pres, prime(p)?, &catalog(search)?, budget(search))?;
    let mut out = String::from("index  de         ratio      quotient\n");
    for s in &est.samples {
        let _ = writeln!(out, "{:<6} {:<10} {:<10} {}", s.index, rs(&s.de), rs(&s.ratio), s.quotient);
    }
    let _ = writeln!(
        out,
        "-chi_p ≥ {} (index {}); {} kernels, {} assignments{}",
        rs(&est.best_ratio),
        est.best_index,
        est.subgroups_examined,
        est.assignments_examined,
        if est.budget_exhausted { ", budget exhausted" } else { "" }
    );
    let json = json!({
        "command": "chi",
        "presentation": pres.to_string(),
        "p": p,
        "best_ratio": rs(&est.best_ratio),
        "best_index": est.best_index,
        "witness": est.witness,
        "subgroups_examined": est.subgroups_examined,
        "assignments_examined": est.assignments_examined,
        "budget_exhausted": est.budget_exhausted,
        "samples": est.samples.iter().map(|s| json!({
            "index": s.index, "de": rs(&s.de), "ratio": rs(&s.ratio), "quotient": s.quotient,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::new(out, json))
}

pub fn gradient(text: &str, p: u64, search: &SearchArgs) -> Result<Output> {
    let pres = parse_presentation(text)?;
    let w = gradient_window(&pres, prime(p)?, &catalog(search)?, budget(search))?;
    let mut out = String::from("index  d_p    ratio      quotient\n");
    for s in &w.samples {
        let _ = writeln!(out, "{:<6} {:<6} {:<10} {}", s.index, s.d_p, rs(&s.ratio), s.quotient);
    }
    let show = |r: &Option<ExactRational>| r.as_ref().map_or("n/a".to_string(), rs);
    let _ = writeln!(
        out,
        "window over {} kernels: min {}, max {}{}",
        w.samples.len(),
        show(&w.min_ratio),
        show(&w.max_ratio),
        if w.budget_exhausted { ", budget exhausted" } else { "" }
    );
    let json = json!({
        "command": "gradient",
        "presentation": pres.to_string(),
        "p": p,
        "window_min": opt(&w.min_ratio),
        "window_max": opt(&w.max_ratio),
        "budget_exhausted": w.budget_exhausted,
        "samples": w.samples.iter().map(|s| json!({
            "index": s.index, "d_p": s.d_p, "ratio": rs(&s.ratio), "quotient": s.quotient,
        })).collect::<Vec<_>>(),
    });
    Ok(Output::new(out, json))
}

pub fn witness(text: &str, p: u64, search: &SearchArgs) -> Result<Output> {
    let pres = parse_presentation(text)?;
    let found = lemma_power_witness(&pres, prime(p)?, &catalog(search)?, budget(search))?;
    let Some(w) = found else {
        let json = json!({ "command": "witness", "presentation": pres.to_string(), "p": p, "witness": null });
        return Ok(Output::new("no witness found\n".into(), json));
    };
    let relator = pres.word_text(&pres.relators()[w.relator]);
    let root = pres.word_text(&w.root);
    let quotient = w.quotient.describe(pres.generators());
    let text = format!(
        "{relator} = ({root})^{} with {root} surviving in {quotient}\nindex {}: de_p(kernel) = {} (positive: {})\n",
        w.exponent,
        w.report.index,
        rs(&w.report.de_sub),
        w.is_positive()
    );
    let json = json!({
        "command": "witness",
        "presentation": pres.to_string(),
        "p": p,
        "witness": {
            "relator": relator,
            "root": root,
            "exponent": w.exponent,
            "quotient": quotient,
            "index": w.report.index,
            "de_sub": rs(&w.report.de_sub),
            "positive": w.is_positive(),
        },
    });
    Ok(Output { ok: w.is_positive(), ..Output::new(text, json) })
}

pub fn verify(only: &[String]) -> Result<Output> {
    let reports = if only.is_empty() {
        verify::run_all()
    } else {
        verify::run_selected(only).map_err(|e| anyhow!(e))?
    };
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "{} {:>2} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.number,
            r.id,
            r.detail
        );
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "{passed}/{} passed", reports.len());
    let ok = passed == reports.len();
    let json = json!({
        "command": "verify",
        "passed": passed,
        "total": reports.len(),
        "criteria": serde_json::to_value(&reports)?,
    });
    Ok(Output { ok, ..Output::new(text, json) })
}
