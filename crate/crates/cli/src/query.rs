//! Single-shot queries.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use schubert_core::loci::{
    certified_pattern_points, classify_point, is_p_stable, one_string_critical_index, singular_locus_one_string,
    singular_locus_p_stable,
};
use schubert_core::patterns::{apply_pattern, find_patterns, pattern_certificates, PatternKind, SingularWitness};
use schubert_core::reflections::curve_set;
use schubert_core::tangent::{tangent_bounds_general, tangent_dim_one_string};
use schubert_core::{codim as codim_of, dim_schubert, leq as leq_of, Exactness, Point, TangentReport};

use crate::{context_json, parse_point, Host, Output, Pair};

pub(crate) fn with_pair(p: Pair, f: fn(&Point, &Point) -> Result<Output>) -> Result<Output> {
    let c = p.ctx.build()?;
    let (x, w) = (parse_point(c, &p.x)?, parse_point(c, &p.w)?);
    f(&x, &w)
}

pub(crate) fn with_host(h: Host, f: fn(&Point) -> Result<Output>) -> Result<Output> {
    let c = h.ctx.build()?;
    f(&parse_point(c, &h.w)?)
}

fn pair_query(command: &str, x: &Point, w: &Point) -> serde_json::Value {
    json!({ "command": command, "x": x.lengths(), "w": w.lengths() })
}

pub(crate) fn point(p: Point, diagram: bool) -> Result<Output> {
    let r = p.representations();
    let csv = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
    let mut text = format!(
        "{p} in {}\ntuple  {}\nc      {}\nL      {}\nheads  {}",
        p.ctx(),
        csv(&r.i_tuple),
        csv(&r.c_vector),
        csv(&r.l_vector),
        csv(&r.heads)
    );
    let mut result = serde_json::to_value(&r)?;
    result["lengths"] = json!(p.lengths());
    if diagram {
        let drawing = p.render(true);
        write!(text, "\n{drawing}")?;
        result["diagram"] = json!(drawing);
    }
    Output::new(context_json(p.ctx()), json!({ "command": "point", "lengths": p.lengths() }), result, text)
}

pub(crate) fn leq(x: &Point, w: &Point) -> Result<Output> {
    let holds = leq_of(x, w)?;
    let text = format!("{x} {} {w}", if holds { "≤" } else { "≰" });
    Output::new(context_json(x.ctx()), pair_query("leq", x, w), json!({ "leq": holds }), text)
}

pub(crate) fn dim(w: &Point) -> Result<Output> {
    let d = dim_schubert(w);
    Output::new(
        context_json(w.ctx()),
        json!({ "command": "dim", "w": w.lengths() }),
        json!({ "dim": d }),
        d.to_string(),
    )
}

pub(crate) fn codim(x: &Point, w: &Point) -> Result<Output> {
    let c = codim_of(x, w)?;
    Output::new(context_json(x.ctx()), pair_query("codim", x, w), json!({ "codim": c }), c.to_string())
}

pub(crate) fn curves(x: &Point, w: &Point) -> Result<Output> {
    let set = curve_set(x, w)?;
    let dim = dim_schubert(w);
    let listed: Vec<String> = set.iter().map(ToString::to_string).collect();
    let text = format!("{} curves, dim X(w) = {dim}\n{}", set.len(), listed.join(" "));
    let result = json!({ "count": set.len(), "dim": dim, "reflections": set });
    Output::new(context_json(x.ctx()), pair_query("curves", x, w), result, text)
}

fn tangent_text(r: &TangentReport) -> String {
    let imag: Vec<String> =
        r.imaginary_dims.iter().filter(|(_, &v)| v > 0).map(|(h, v)| format!("-{h}δ:{v}")).collect();
    let imag = if imag.is_empty() { "none".to_string() } else { imag.join(" ") };
    let kind = match r.exactness {
        Exactness::Exact => "exact".to_string(),
        Exactness::Bounds { lower, upper } => format!("bounds {lower}..={upper}"),
    };
    format!("real {}, imaginary {imag}, total {} ({kind})", r.real_dim, r.total)
}

pub(crate) fn tangent(x: &Point, w: &Point) -> Result<Output> {
    let report = if one_string_critical_index(w).is_some() {
        tangent_dim_one_string(x, w)?
    } else {
        tangent_bounds_general(x, w)?
    };
    let text = tangent_text(&report);
    Output::new(context_json(x.ctx()), pair_query("tangent", x, w), &report, text)
}

#[derive(Serialize)]
struct PatternResult {
    kind: PatternKind,
    indices: Vec<usize>,
    points: Vec<Point>,
    certificates: Vec<serde_json::Value>,
}

pub(crate) fn patterns(h: Host, kinds: Option<&str>) -> Result<Output> {
    let c = h.ctx.build()?;
    let w = parse_point(c, &h.w)?;
    let kinds: Vec<PatternKind> = match kinds {
        Some(list) => list.split(',').map(|k| k.trim().parse()).collect::<Result<_, _>>()?,
        None => PatternKind::ALL.to_vec(),
    };
    let mut results = Vec::new();
    let mut text = String::new();
    for p in find_patterns(&w, &kinds) {
        let points = apply_pattern(&p)?;
        let certificates: Vec<serde_json::Value> = pattern_certificates(&p)?
            .into_iter()
            .map(|c| match c {
                Ok(wit) => serde_json::to_value(wit),
                Err(e) => Ok(json!({ "kind": "unavailable", "reason": e.to_string() })),
            })
            .collect::<Result<_, _>>()?;
        let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
        writeln!(text, "{p} -> {}", shown.join(", "))?;
        results.push(PatternResult { kind: p.kind(), indices: p.indices().to_vec(), points, certificates });
    }
    if results.is_empty() {
        text.push_str("no patterns");
    }
    let query = json!({ "command": "patterns", "w": w.lengths(), "kinds": kinds });
    Output::new(context_json(c), query, json!({ "patterns": results }), text.trim_end().to_string())
}

pub(crate) fn locus(w: &Point) -> Result<Output> {
    let (method, exact, points, extra) = if one_string_critical_index(w).is_some() {
        let l = singular_locus_one_string(w)?;
        let extra = json!({ "critical_index": l.critical_index, "codim": l.codim });
        ("ONE_STRING_EXACT", true, l.phi_point.into_iter().collect(), extra)
    } else if is_p_stable(w) {
        ("P_STABLE_EXACT", true, singular_locus_p_stable(w)?, json!({}))
    } else {
        // Certified singular points only; the true locus may be larger.
        ("CERTIFICATE_ONLY", false, certified_pattern_points(w), json!({}))
    };
    let shown: Vec<String> = points.iter().map(ToString::to_string).collect();
    let text = format!(
        "{method}{}: {}",
        if exact { "" } else { " (lower bound)" },
        if shown.is_empty() { "smooth".to_string() } else { shown.join(", ") }
    );
    let mut result = json!({ "method": method, "exact": exact, "maximal_singular_points": points });
    if let (Some(obj), Some(more)) = (result.as_object_mut(), extra.as_object()) {
        obj.extend(more.clone());
    }
    Output::new(context_json(w.ctx()), json!({ "command": "locus", "w": w.lengths() }), result, text)
}

fn witness_text(w: &SingularWitness) -> String {
    match w {
        SingularWitness::ExcessCurves { curves, dim } => format!("{curves} curves > dim {dim}"),
        SingularWitness::LargeReflection { reflection, image } => format!("large reflection {reflection} to {image}"),
        SingularWitness::ImaginaryTangent { level, residues } => {
            format!("imaginary tangent at level {level} from strings {residues:?}")
        }
    }
}

pub(crate) fn classify(x: &Point, w: &Point) -> Result<Output> {
    let c = classify_point(x, w)?;
    let name = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
    let mut text = format!("{} ({})", name(serde_json::to_value(c.status)?), name(serde_json::to_value(c.method)?));
    for wit in &c.witnesses {
        write!(text, "\n  {}", witness_text(wit))?;
    }
    Output::new(context_json(x.ctx()), pair_query("classify", x, w), &c, text)
}
