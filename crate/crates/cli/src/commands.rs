//! Subcommand bodies. Each returns a [`Report`]; rendering happens in main.

use std::sync::atomic::{AtomicUsize, Ordering};

use anyhow::{bail, ensure, Result};
use rayon::prelude::*;
use scatpoly::families::{classify_m, find_witness_m, fqt_nonzero, in_fqt, PhiParams, TheoryVerdict};
use scatpoly::rankcode::{is_mrd, RankCode};
use scatpoly::scatter::{is_r_partial, is_scattered, linear_set};
use scatpoly::symmetry::{
    are_equivalent, graph_stabilizer, nonequivalence_certificate, right_idealizer_cardinality,
    stabilizer_formula_phi, Equivalence, InvariantValue, Mat2,
};
use scatpoly::{Error, FieldCtx, LinPoly};
use serde_json::json;

use crate::config::PolyArgs;
use crate::formats::{field_descriptor, qpoly_to_string, Family};
use crate::output::{Report, Table};

fn kv<K: ToString, V: ToString>(k: K, v: V) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn within_budget(field: &FieldCtx, budget: u64, what: &str) -> Result<()> {
    if field.size() > budget {
        return Err(Error::Resource(format!(
            "{what} enumerates {} field elements, over the budget of {budget}",
            field.size()
        ))
        .into());
    }
    Ok(())
}

/// Prints `label: done/total` to stderr roughly every tenth of the way.
struct Progress {
    label: &'static str,
    total: usize,
    done: AtomicUsize,
}

impl Progress {
    fn new(label: &'static str, total: usize) -> Self {
        Progress { label, total, done: AtomicUsize::new(0) }
    }

    fn tick(&self) {
        let d = self.done.fetch_add(1, Ordering::Relaxed) + 1;
        let step = (self.total / 10).max(1);
        if self.total >= 100 && (d.is_multiple_of(step) || d == self.total) {
            eprintln!("{}: {d}/{}", self.label, self.total);
        }
    }
}

fn theory_name(v: TheoryVerdict) -> &'static str {
    match v {
        TheoryVerdict::Scattered => "scattered",
        TheoryVerdict::NotScattered => "not_scattered",
        TheoryVerdict::Undetermined => "undetermined",
    }
}

pub fn sweep_m(field: &FieldCtx, t: usize, j: usize, m_index: Option<u64>, budget: u64) -> Result<Report> {
    within_budget(field, budget, "the scatteredness check")?;
    let ms = match m_index {
        Some(i) => {
            let m = field.elem(i)?;
            ensure!(!m.is_zero() && in_fqt(field, t, m), "m-index {i} is not a nonzero element of F_{{q^t}}");
            vec![m]
        }
        None => fqt_nonzero(field, t),
    };
    PhiParams::new(field, t, j, ms[0])?;
    let progress = Progress::new("sweep-m", ms.len());
    let rows: Vec<Result<_>> = ms
        .par_iter()
        .map(|&m| {
            let c = classify_m(field, t, j, m)?;
            let g = scatpoly::families::phi(field, &PhiParams::new(field, t, j, m)?)?;
            let s = is_scattered(&g)?.holds;
            let r = is_r_partial(&g, t)?.holds;
            progress.tick();
            Ok((m, c, s, r))
        })
        .collect();
    let mut table = Table::new(&[
        "m_index", "in_S_q-1", "in_S_q+1", "in_S_sigma+1", "norm_one", "theory", "scattered", "r_partial", "agree",
    ]);
    let mut failures = Vec::new();
    let (mut n_scattered, mut n_guaranteed, mut n_excluded, mut n_undetermined) = (0u64, 0u64, 0u64, 0u64);
    let mut json_rows = Vec::new();
    for row in rows {
        let (m, c, s, r) = row?;
        let theory = c.theory_verdict();
        let agree = r && match theory {
            TheoryVerdict::Scattered => s,
            TheoryVerdict::NotScattered => !s,
            TheoryVerdict::Undetermined => true,
        };
        let idx = field.index(m);
        if !agree {
            failures.push(format!(
                "m-index {idx}: theory says {}, check says scattered={s}, R-partial={r}",
                theory_name(theory)
            ));
        }
        n_scattered += s as u64;
        match theory {
            TheoryVerdict::Scattered => n_guaranteed += 1,
            TheoryVerdict::NotScattered => n_excluded += 1,
            TheoryVerdict::Undetermined => n_undetermined += 1,
        }
        table.push([
            idx.to_string(),
            c.in_s_q_minus_1.to_string(),
            c.in_s_q_plus_1.to_string(),
            c.in_s_sigma_plus_1.to_string(),
            c.norm_one.to_string(),
            theory_name(theory).to_string(),
            s.to_string(),
            r.to_string(),
            agree.to_string(),
        ]);
        json_rows.push(json!({
            "m_index": idx,
            "in_s_q_minus_1": c.in_s_q_minus_1,
            "in_s_q_plus_1": c.in_s_q_plus_1,
            "in_s_sigma_plus_1": c.in_s_sigma_plus_1,
            "norm_one": c.norm_one,
            "theory": theory_name(theory),
            "scattered": s,
            "r_partial": r,
            "agree": agree,
        }));
    }
    // existence of a scattered φ_{m,q} is claimed for t ≥ 3 and q > 3
    let existence = if m_index.is_none() && j == 1 && t >= 3 && field.q() > 3 {
        if n_scattered == 0 {
            failures.push(format!("no scattered φ_(m,q) found although q = {} > 3 and t = {t} >= 3", field.q()));
            "fail"
        } else {
            "pass"
        }
    } else {
        "not_applicable"
    };
    let summary = vec![
        kv("rows", ms.len()),
        kv("scattered", n_scattered),
        kv("theory_scattered", n_guaranteed),
        kv("theory_not_scattered", n_excluded),
        kv("theory_undetermined", n_undetermined),
        kv("disagreements", failures.len() - (existence == "fail") as usize),
        kv("existence_check", existence),
    ];
    let json = json!({
        "t": t,
        "J": j,
        "rows": json_rows,
        "counts": {
            "rows": ms.len(),
            "scattered": n_scattered,
            "theory_scattered": n_guaranteed,
            "theory_not_scattered": n_excluded,
            "theory_undetermined": n_undetermined,
        },
        "existence_check": existence,
    });
    Ok(Report { summary, table: Some(table), json, failures })
}

/// The polynomial selected by `--family` or by `--J/--m-index`, with the φ
/// parameters when it is a φ.
pub fn select_poly<'f>(field: &'f FieldCtx, t: usize, p: &PolyArgs) -> Result<(LinPoly<'f>, Option<PhiParams>)> {
    match (&p.family, p.m_index) {
        (Some(fam), _) => {
            let g = fam.build(field)?;
            let params = match *fam {
                Family::Phi { t, j, m } => Some(PhiParams::new(field, t, j, field.elem(m)?)?),
                _ => None,
            };
            Ok((g, params))
        }
        (None, Some(i)) => {
            let params = PhiParams::new(field, t, p.j, field.elem(i)?)?;
            Ok((scatpoly::families::phi(field, &params)?, Some(params)))
        }
        (None, None) => bail!("give --family or --m-index"),
    }
}

fn mat_json(field: &FieldCtx, m: &Mat2) -> serde_json::Value {
    json!([[field.index(m.a), field.index(m.b)], [field.index(m.c), field.index(m.d)]])
}

fn mat_text(field: &FieldCtx, m: &Mat2) -> String {
    format!("[{} {}; {} {}]", field.index(m.a), field.index(m.b), field.index(m.c), field.index(m.d))
}

pub fn stabilizer(field: &FieldCtx, g: &LinPoly<'_>, params: Option<PhiParams>) -> Result<Report> {
    let s = graph_stabilizer(g)?;
    let ideal = right_idealizer_cardinality(g)?;
    let mut failures = Vec::new();
    if ideal != s.cardinality {
        failures.push(format!("stabilizer has {} elements but the right idealizer has {ideal}", s.cardinality));
    }
    let mut formula = "not_applicable".to_string();
    if let Some(pp) = params {
        match stabilizer_formula_phi(field, &pp) {
            Ok(fs) => {
                let same = fs.basis.len() == s.basis.len()
                    && fs.cardinality == s.cardinality
                    && fs.b_value_count == s.b_value_count
                    && fs.members == s.members;
                formula = if same { "agrees" } else { "differs" }.into();
                if !same {
                    failures.push(format!(
                        "closed form gives {} elements with b-count {}, the linear system {} with b-count {}",
                        fs.cardinality, fs.b_value_count, s.cardinality, s.b_value_count
                    ));
                }
            }
            Err(Error::OutOfRange(_)) => formula = "out_of_range".into(),
            Err(e) => return Err(e.into()),
        }
    }
    let inv = s.invertible_count.map_or("not_enumerated".to_string(), |c| c.to_string());
    let summary = vec![
        kv("polynomial", qpoly_to_string(g)),
        kv("cardinality", s.cardinality),
        kv("dimension_over_Fp", s.dimension()),
        kv("invertible", &inv),
        kv("b_count", s.b_value_count),
        kv("right_idealizer", ideal),
        kv("closed_form", &formula),
    ];
    let mut table = Table::new(&["basis", "a", "b", "c", "d"]);
    for (i, m) in s.basis.iter().enumerate() {
        table.push([i as u64, field.index(m.a), field.index(m.b), field.index(m.c), field.index(m.d)]);
    }
    let json = json!({
        "polynomial": qpoly_to_string(g),
        "cardinality": s.cardinality.to_string(),
        "dimension_over_fp": s.dimension(),
        "invertible": s.invertible_count,
        "b_count": s.b_value_count.to_string(),
        "right_idealizer": ideal.to_string(),
        "closed_form": formula,
        "basis": s.basis.iter().map(|m| mat_json(field, m)).collect::<Vec<_>>(),
    });
    Ok(Report { summary, table: Some(table), json, failures })
}

pub fn equiv(field: &FieldCtx, f: &LinPoly<'_>, g: &LinPoly<'_>, budget: u64) -> Result<Report> {
    let e = are_equivalent(f, g)?;
    let mut summary = vec![kv("left", qpoly_to_string(f)), kv("right", qpoly_to_string(g))];
    let json = match &e {
        Equivalence::Equivalent(w) => {
            summary.push(kv("verdict", "EQUIVALENT"));
            summary.push(kv("frobenius_exponent", w.k));
            summary.push(kv("matrix", mat_text(field, &w.m)));
            json!({"verdict": "equivalent", "k": w.k, "matrix": mat_json(field, &w.m)})
        }
        Equivalence::Inequivalent(cert) => {
            summary.push(kv("verdict", "NONEQUIVALENT (certified)"));
            let dims: Vec<String> = cert.solution_dims.iter().map(|d| d.to_string()).collect();
            summary.push(kv("solution_dims_by_k", dims.join(" ")));
            let mut j = json!({"verdict": "nonequivalent", "solution_dims": cert.solution_dims});
            if field.size() <= budget {
                if let Some(mm) = nonequivalence_certificate(f, g)? {
                    let show = |v: &InvariantValue| match v {
                        InvariantValue::Count(c) => c.to_string(),
                        InvariantValue::Histogram(h) => {
                            h.iter().map(|(w, c)| format!("{w}:{c}")).collect::<Vec<_>>().join(" ")
                        }
                    };
                    summary.push(kv("separating_invariant", format!("{}: {} vs {}", mm.invariant, show(&mm.left), show(&mm.right))));
                    j["separating_invariant"] = json!({"name": mm.invariant, "left": show(&mm.left), "right": show(&mm.right)});
                }
            }
            j
        }
    };
    Ok(Report { summary, table: None, json, failures: Vec::new() })
}

pub fn rank_spectrum(field: &FieldCtx, g: &LinPoly<'_>, budget: u64) -> Result<Report> {
    within_budget(field, budget, "the rank spectrum")?;
    let rep = is_mrd(&RankCode::new(g.clone())?);
    let mut table = Table::new(&["rank", "projective", "count"]);
    for (r, c) in &rep.spectrum.full {
        table.push([r.to_string(), rep.spectrum.projective[r].to_string(), c.to_string()]);
    }
    let summary = vec![
        kv("polynomial", qpoly_to_string(g)),
        kv("n", field.n()),
        kv("min_rank", rep.min_rank),
        kv("is_mrd", rep.is_mrd),
        kv("codewords", rep.spectrum.total()),
    ];
    let json = json!({
        "polynomial": qpoly_to_string(g),
        "min_rank": rep.min_rank,
        "is_mrd": rep.is_mrd,
        "spectrum": rep.spectrum.full.iter().map(|(r, c)| json!({
            "rank": r, "projective": rep.spectrum.projective[r].to_string(), "count": c.to_string()
        })).collect::<Vec<_>>(),
    });
    Ok(Report { summary, table: Some(table), json, failures: Vec::new() })
}

pub fn weights(field: &FieldCtx, g: &LinPoly<'_>, budget: u64) -> Result<Report> {
    within_budget(field, budget, "the linear set")?;
    let ls = linear_set(g)?;
    let q = field.q() as u128;
    let full = (q.pow(field.n()) - 1) / (q - 1);
    let mut table = Table::new(&["weight", "count"]);
    for (w, c) in &ls.weight_histogram {
        table.push([w.to_string(), c.to_string()]);
    }
    let summary = vec![
        kv("polynomial", qpoly_to_string(g)),
        kv("size", ls.size),
        kv("max_weight", ls.max_weight),
        kv("maximum_size", full),
        kv("scattered", ls.size as u128 == full),
    ];
    let json = json!({
        "polynomial": qpoly_to_string(g),
        "size": ls.size,
        "max_weight": ls.max_weight,
        "scattered": ls.size as u128 == full,
        "weights": ls.weight_histogram.iter().map(|(w, c)| json!({"weight": w, "count": c})).collect::<Vec<_>>(),
    });
    Ok(Report { summary, table: Some(table), json, failures: Vec::new() })
}

pub fn witness(field: &FieldCtx, t: usize) -> Result<Report> {
    let w = find_witness_m(field, t)?;
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    let mut json = json!({
        "union_size": w.union_size,
        "group_size": w.group_size,
        "bound": format!("{}/{}", w.bound_num, w.bound_den),
        "bound_below_group": w.bound_holds,
    });
    match w.m {
        Some(m) => {
            let c = classify_m(field, t, 1, m)?;
            summary.push(kv("m_index", field.index(m)));
            summary.push(kv("in_S_q-1", c.in_s_q_minus_1));
            summary.push(kv("in_S_q+1", c.in_s_q_plus_1));
            summary.push(kv("norm_one", c.norm_one));
            json["m_index"] = json!(field.index(m));
            json["in_s_q_minus_1"] = json!(c.in_s_q_minus_1);
            json["in_s_q_plus_1"] = json!(c.in_s_q_plus_1);
            json["norm_one"] = json!(c.norm_one);
            if c.in_s_q_minus_1 || c.in_s_q_plus_1 || c.norm_one {
                failures.push(format!("m-index {} fails its own exclusion flags", field.index(m)));
            }
        }
        None => {
            summary.push(kv("m_index", "none"));
            json["m_index"] = serde_json::Value::Null;
            if w.bound_holds {
                failures.push(format!(
                    "the union bound {}/{} of q^t − 1 is below 1 but all {} elements are covered",
                    w.bound_num, w.bound_den, w.group_size
                ));
            }
        }
    }
    summary.push(kv("union_size", w.union_size));
    summary.push(kv("group_size", w.group_size));
    summary.push(kv("bound", format!("{}/{} of q^t - 1", w.bound_num, w.bound_den)));
    summary.push(kv("bound_below_group", w.bound_holds));
    Ok(Report { summary, table: None, json, failures })
}

pub fn field_info(field: &FieldCtx) -> Result<Report> {
    let g = field.generator();
    let summary = vec![
        kv("descriptor", field_descriptor(field)),
        kv("p", field.p()),
        kv("eps", field.eps()),
        kv("q", field.q()),
        kv("n", field.n()),
        kv("size", field.size()),
        kv("log_tables", field.has_tables()),
        kv("generator_index", field.index(g)),
    ];
    let json = json!({
        "descriptor": field_descriptor(field),
        "p": field.p(),
        "eps": field.eps(),
        "q": field.q(),
        "n": field.n(),
        "size": field.size(),
        "log_tables": field.has_tables(),
        "generator_index": field.index(g),
    });
    Ok(Report { summary, table: None, json, failures: Vec::new() })
}
