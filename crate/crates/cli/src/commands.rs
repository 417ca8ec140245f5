//! Subcommand implementations: slice CSV export, dihedral reports,
//! order construction and verification, affine two-sided orders, and
//! SVG figures.

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use serde_json::json;

use reflab_core::affine::{standard_words, two_sided_order, AffineModel};
use reflab_core::error::{Error, Result};
use reflab_core::matrix::CoxeterMatrix;
use reflab_core::orders::{
    build_near_cone_intervals, sort_truncation, verify_reflection_order, OrderSpec, TruncatedOrder,
};
use reflab_core::planes::PlaneIndex;
use reflab_core::projective::{normalize, qform};
use reflab_core::roots::{RootId, RootSlice};
use reflab_core::scalar::{parse_scalar, Appx, Rat, Scalar, ScalarMode, Sign};
use reflab_core::subgroups::{dihedral_closure, Classification};
use reflab_core::svg::{render_svg, SvgOptions};

use crate::{resolve_matrix, Config};

fn write_output(path: Option<&Path>, contents: &str) -> Result<()> {
    match path {
        Some(path) => std::fs::write(path, contents)?,
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
        }
    }
    Ok(())
}

fn effective_mode(config: &Config, file_mode: ScalarMode) -> ScalarMode {
    config.mode_override.unwrap_or(file_mode)
}

fn parse_id_pair(text: &str) -> Result<(RootId, RootId)> {
    let bad = || Error::Parse { detail: format!("bad id pair {text:?}; expected \"a,b\"") };
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    Ok((RootId(a), RootId(b)))
}

fn parse_order_spec<S: Scalar>(text: &str, rank: usize) -> Result<OrderSpec<S>> {
    if let Some(perm) = text.strip_prefix("lex:") {
        let indices: Vec<usize> = perm
            .split(',')
            .map(|p| {
                p.trim().parse::<usize>().ok().and_then(|i| i.checked_sub(1)).ok_or(Error::Parse {
                    detail: format!("bad basis position {p:?} in {text:?}"),
                })
            })
            .collect::<Result<_>>()?;
        let mut seen = vec![false; rank];
        for &i in &indices {
            if i >= rank || seen[i] {
                return Err(Error::Parse {
                    detail: format!("{text:?} is not a permutation of 1..{rank}"),
                });
            }
            seen[i] = true;
        }
        if indices.len() != rank {
            return Err(Error::Parse {
                detail: format!("{text:?} needs {rank} positions"),
            });
        }
        return Ok(OrderSpec::lex_permutation(rank, &indices));
    }
    if let Some(n) = text.strip_prefix("ainf:") {
        let n_max: usize = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse { detail: format!("bad block rank in {text:?}") })?;
        return Ok(OrderSpec::AInfinityBlock { n_max });
    }
    match text {
        "two-sided" => Ok(OrderSpec::AffineTwoSided { swap_sides: false }),
        "two-sided-swapped" => Ok(OrderSpec::AffineTwoSided { swap_sides: true }),
        _ => Err(Error::Parse { detail: format!("unknown order spec {text:?}") }),
    }
}

fn roots_csv<S: Scalar>(slice: &RootSlice<S>) -> String {
    let n = slice.rank();
    let mut out = String::from("id,depth");
    for i in 1..=n {
        out.push_str(&format!(",coeff_{i}"));
    }
    out.push_str(",parent_id,parent_letter\n");
    for id in slice.ids() {
        let root = slice.root(id);
        out.push_str(&format!("{},{}", id, root.depth));
        for c in &root.coeffs {
            out.push_str(&format!(",{c}"));
        }
        match root.parent {
            Some((parent, letter)) => out.push_str(&format!(",{},{}\n", parent, letter + 1)),
            None => out.push_str(",,\n"),
        }
    }
    out
}

pub fn roots(config: &Config, matrix_spec: &str, depth: u32, out: Option<&Path>) -> Result<i32> {
    let (matrix, file_mode) = resolve_matrix(matrix_spec)?;
    match effective_mode(config, file_mode) {
        ScalarMode::Exact => roots_impl::<Rat>(config, &matrix, depth, out),
        ScalarMode::Approx => roots_impl::<Appx>(config, &matrix, depth, out),
    }
}

fn roots_impl<S: Scalar>(
    config: &Config,
    matrix: &CoxeterMatrix,
    depth: u32,
    out: Option<&Path>,
) -> Result<i32> {
    let slice = RootSlice::<S>::generate(matrix, depth, config.cap)?;
    write_output(out, &roots_csv(&slice))?;
    Ok(0)
}

pub fn dihedral(config: &Config, matrix_spec: &str, depth: u32, pair: &str) -> Result<i32> {
    let (matrix, file_mode) = resolve_matrix(matrix_spec)?;
    let pair = parse_id_pair(pair)?;
    match effective_mode(config, file_mode) {
        ScalarMode::Exact => dihedral_impl::<Rat>(config, &matrix, depth, pair),
        ScalarMode::Approx => dihedral_impl::<Appx>(config, &matrix, depth, pair),
    }
}

fn dihedral_impl<S: Scalar>(
    config: &Config,
    matrix: &CoxeterMatrix,
    depth: u32,
    (a, b): (RootId, RootId),
) -> Result<i32> {
    let slice = RootSlice::<S>::generate(matrix, depth, config.cap)?;
    if a.idx() >= slice.len() {
        return Err(Error::RootNotInSlice { id: a });
    }
    if b.idx() >= slice.len() {
        return Err(Error::RootNotInSlice { id: b });
    }
    let sub = dihedral_closure(a, b, &slice)?;
    let classification = match sub.classification {
        Classification::Infinite => json!("infinite"),
        Classification::Finite(m) => json!({ "finite": m }),
    };
    let report = json!({
        "canonical_pair": [sub.canonical_pair.0, sub.canonical_pair.1],
        "bform": sub.bform.to_string(),
        "classification": classification,
        "positive_roots_in_slice": sub.members,
    });
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    Ok(0)
}

fn order_csv<S: Scalar>(t: &TruncatedOrder<S>) -> String {
    let slice = t.slice();
    let n = slice.rank();
    let mut out = String::from("position,root_id");
    for i in 1..=n {
        out.push_str(&format!(",coeff_{i}"));
    }
    out.push('\n');
    for (pos, &id) in t.sorted().iter().enumerate() {
        out.push_str(&format!("{pos},{id}"));
        for c in slice.coeffs(id) {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    out
}

fn violations_json<S: Scalar>(t: &TruncatedOrder<S>, planes: &PlaneIndex<S>) -> (usize, String) {
    let report = verify_reflection_order(t, planes);
    let mut list = Vec::new();
    for v in &report.betweenness_violations {
        list.push(json!({
            "kind": "betweenness",
            "lower": v.lower, "middle": v.middle, "upper": v.upper,
        }));
    }
    for v in &report.dihedral_violations {
        list.push(json!({
            "kind": "dihedral-restriction",
            "extremes": [v.extremes.0, v.extremes.1],
            "detail": v.detail,
        }));
    }
    let count = list.len();
    (count, serde_json::to_string_pretty(&serde_json::Value::Array(list)).expect("serializes"))
}

pub fn order(
    config: &Config,
    matrix_spec: &str,
    depth: u32,
    spec: &str,
    verify: bool,
    out: Option<&Path>,
) -> Result<i32> {
    let (matrix, file_mode) = resolve_matrix(matrix_spec)?;
    match effective_mode(config, file_mode) {
        ScalarMode::Exact => order_impl::<Rat>(config, &matrix, depth, spec, verify, out),
        ScalarMode::Approx => order_impl::<Appx>(config, &matrix, depth, spec, verify, out),
    }
}

fn order_impl<S: Scalar>(
    config: &Config,
    matrix: &CoxeterMatrix,
    depth: u32,
    spec_text: &str,
    verify: bool,
    out: Option<&Path>,
) -> Result<i32> {
    let spec = parse_order_spec::<S>(spec_text, matrix.rank())?;
    let slice = Arc::new(RootSlice::<S>::generate(matrix, depth, config.cap)?);
    let t = sort_truncation(&slice, &spec)?;
    if let Some(path) = out {
        std::fs::write(path, order_csv(&t))?;
    } else if !verify {
        print!("{}", order_csv(&t));
    }
    if verify {
        let planes = PlaneIndex::build(&slice);
        let (count, json) = violations_json(&t, &planes);
        println!("{json}");
        return Ok(if count == 0 { 0 } else { 1 });
    }
    Ok(0)
}

pub fn affine_order(
    config: &Config,
    affine_type: &str,
    depth: u32,
    verify: bool,
    out: Option<&Path>,
) -> Result<i32> {
    let matrix = match affine_type.to_ascii_lowercase().as_str() {
        "a1~" | "atilde1" => CoxeterMatrix::affine_a1(),
        "a2~" | "atilde2" => CoxeterMatrix::affine_a2(),
        other => {
            return Err(Error::Parse {
                detail: format!("unknown affine type {other:?}; expected a1~ or a2~"),
            })
        }
    };
    let slice = Arc::new(RootSlice::<Rat>::generate(&matrix, depth, config.cap)?);
    let (pos_word, neg_word) = standard_words(&slice)?;
    let t = two_sided_order(&slice, &pos_word, &neg_word)?;
    let model = AffineModel::<Rat>::build(&matrix)?;

    let mut csv = String::from("beta_id,level");
    for i in 1..=matrix.rank() {
        csv.push_str(&format!(",coeff_{i}"));
    }
    csv.push('\n');
    for &id in t.sorted() {
        let root = model.loop_coords(slice.coeffs(id))?;
        csv.push_str(&format!("{},{}", root.beta.label(), root.level));
        for c in slice.coeffs(id) {
            csv.push_str(&format!(",{c}"));
        }
        csv.push('\n');
    }
    write_output(out, &csv)?;

    if verify {
        let planes = PlaneIndex::build(&slice);
        let (count, json) = violations_json(&t, &planes);
        println!("{json}");
        return Ok(if count == 0 { 0 } else { 1 });
    }
    Ok(0)
}

fn parse_fiber<S: Scalar>(text: &str) -> Result<(usize, S)> {
    // "axis=1,c=2/3"
    let bad = || Error::Parse { detail: format!("bad fiber spec {text:?}; expected axis=1,c=2/3") };
    let mut axis = None;
    let mut value = None;
    for part in text.split(',') {
        let (key, val) = part.split_once('=').ok_or_else(bad)?;
        match key.trim() {
            "axis" => {
                let i: usize = val.trim().parse().map_err(|_| bad())?;
                axis = i.checked_sub(1);
            }
            "c" => value = Some(parse_scalar::<S>(val)?),
            _ => return Err(bad()),
        }
    }
    Ok((axis.ok_or_else(bad)?, value.ok_or_else(bad)?))
}

fn normroots_csv<S: Scalar>(slice: &RootSlice<S>) -> String {
    let n = slice.rank();
    let mut out = String::from("id");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    out.push_str(",qsign\n");
    for id in slice.ids() {
        let nr = normalize(id, slice);
        out.push_str(&id.to_string());
        for c in &nr.coords {
            out.push_str(&format!(",{c}"));
        }
        let sign = match qform(&nr.coords, slice.gram()).sign() {
            Sign::Positive => "1",
            Sign::Zero => "0",
            Sign::Negative => "-1",
        };
        out.push_str(&format!(",{sign}\n"));
    }
    out
}

#[allow(clippy::too_many_arguments)]
pub fn svg(
    config: &Config,
    matrix_spec: &str,
    depth: u32,
    fibers: &[String],
    segments: &[String],
    near_pair: Option<&str>,
    out: &Path,
    normroots: Option<&Path>,
) -> Result<i32> {
    let (matrix, file_mode) = resolve_matrix(matrix_spec)?;
    match effective_mode(config, file_mode) {
        ScalarMode::Exact => {
            svg_impl::<Rat>(config, &matrix, depth, fibers, segments, near_pair, out, normroots)
        }
        ScalarMode::Approx => {
            svg_impl::<Appx>(config, &matrix, depth, fibers, segments, near_pair, out, normroots)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn svg_impl<S: Scalar>(
    config: &Config,
    matrix: &CoxeterMatrix,
    depth: u32,
    fibers: &[String],
    segments: &[String],
    near_pair: Option<&str>,
    out: &Path,
    normroots: Option<&Path>,
) -> Result<i32> {
    let slice = Arc::new(RootSlice::<S>::generate(matrix, depth, config.cap)?);
    let mut options = SvgOptions::default();
    for f in fibers {
        options.highlight_fibers.push(parse_fiber::<S>(f)?);
    }
    for s in segments {
        let (a, b) = parse_id_pair(s)?;
        options.highlight_segments.push((a, b));
    }
    if let Some(closeness) = near_pair {
        let closeness = parse_scalar::<S>(closeness)?;
        let t = sort_truncation(&slice, &OrderSpec::lex_standard(matrix.rank()))?;
        let built = build_near_cone_intervals(&t, 1, &closeness)?;
        options.highlight_segments.push((built.chosen[0], built.chosen[1]));
    }
    options.edge_midpoint_labels = true;
    let svg = render_svg(slice.as_ref(), &options)?;
    std::fs::write(out, svg)?;
    if let Some(path) = normroots {
        std::fs::write(path, normroots_csv(slice.as_ref()))?;
    }
    Ok(0)
}
