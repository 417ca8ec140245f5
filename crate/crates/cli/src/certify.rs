//! The certify and certify-all subcommands: run the structural
//! certifiers, aggregate pass/inconclusive/fail, and emit deterministic
//! JSON reports.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use reflab_core::affine::{check_inversion_identity, standard_words, two_sided_order, AffineModel, Side};
use reflab_core::analysis::{
    block_decompose_universal, certify_coordinate_range, certify_density,
    dihedral_interval_growth, restriction_stability, stability,
};
use reflab_core::error::{Error, Result};
use reflab_core::matrix::CoxeterMatrix;
use reflab_core::orders::{sort_truncation, verify_reflection_order, OrderSpec, TruncatedOrder};
use reflab_core::planes::PlaneIndex;
use reflab_core::roots::RootSlice;
use reflab_core::scalar::{Rat, Scalar};
use reflab_core::subgroups::{dihedral_closure, maximal_dihedral, observed_fibers};

use crate::{resolve_matrix, Config};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        }
    }
}

fn report_json(
    lemma: &str,
    params: Value,
    status: Status,
    violations: Vec<Value>,
    counts: Map<String, Value>,
) -> Value {
    json!({
        "lemma": lemma,
        "params": params,
        "status": status.as_str(),
        "violations": violations,
        "counts": counts,
    })
}

fn parse_depths(text: &str) -> Result<(u32, Option<u32>)> {
    let bad = || Error::Parse { detail: format!("bad depths {text:?}; expected \"d\" or \"d,D\"") };
    match text.split_once(',') {
        None => Ok((text.trim().parse().map_err(|_| bad())?, None)),
        Some((d, big)) => {
            let d = d.trim().parse().map_err(|_| bad())?;
            let big = big.trim().parse().map_err(|_| bad())?;
            if big < d {
                return Err(bad());
            }
            Ok((d, Some(big)))
        }
    }
}

fn counts(entries: &[(&str, Value)]) -> Map<String, Value> {
    entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn universal_lex_order(
    matrix: &CoxeterMatrix,
    depth: u32,
    cap: usize,
) -> Result<TruncatedOrder<Rat>> {
    let slice = Arc::new(RootSlice::<Rat>::generate(matrix, depth, cap)?);
    sort_truncation(&slice, &OrderSpec::lex_standard(matrix.rank()))
}

fn is_affine(matrix: &CoxeterMatrix) -> bool {
    AffineModel::<Rat>::build(matrix).is_ok()
}

fn order_at(matrix: &CoxeterMatrix, depth: u32, cap: usize) -> Result<TruncatedOrder<Rat>> {
    let slice = Arc::new(RootSlice::<Rat>::generate(matrix, depth, cap)?);
    let spec = if is_affine(matrix) {
        OrderSpec::AffineTwoSided { swap_sides: false }
    } else {
        OrderSpec::lex_standard(matrix.rank())
    };
    sort_truncation(&slice, &spec)
}

fn run_c_range(matrix: &CoxeterMatrix, depth: u32, cap: usize) -> Result<Value> {
    let slice = RootSlice::<Rat>::generate(matrix, depth, cap)?;
    let report = certify_coordinate_range(&slice);
    let status = if report.pass { Status::Pass } else { Status::Fail };
    let violations = report.violations.iter().map(|id| json!(id)).collect();
    Ok(report_json(
        "c-range",
        json!({ "depth": depth }),
        status,
        violations,
        counts(&[
            ("total_roots", json!(report.total_roots)),
            ("distinct_coordinates", json!(report.observed.len())),
        ]),
    ))
}

fn run_density(matrix: &CoxeterMatrix, d_lo: u32, d_hi: u32, cap: usize) -> Result<Value> {
    let slice = RootSlice::<Rat>::generate(matrix, d_hi, cap)?;
    let report = certify_density(&slice, d_lo, d_hi);
    let status = if !report.strictly_increasing_counts() {
        Status::Fail
    } else if report.all_witnessed() {
        Status::Pass
    } else {
        Status::Inconclusive
    };
    let violations = report
        .unwitnessed
        .iter()
        .map(|(a, b)| json!({ "between": [a.to_string(), b.to_string()] }))
        .collect();
    let distinct: Vec<Value> =
        report.distinct_by_depth.iter().map(|(d, n)| json!([d, n])).collect();
    Ok(report_json(
        "density",
        json!({ "depth_lo": d_lo, "depth_hi": d_hi }),
        status,
        violations,
        counts(&[
            ("pairs_total", json!(report.pairs_total)),
            ("witnessed", json!(report.witnessed)),
            ("distinct_by_depth", Value::Array(distinct)),
        ]),
    ))
}

fn run_blocks(matrix: &CoxeterMatrix, depth: u32, cap: usize) -> Result<Value> {
    let t = universal_lex_order(matrix, depth, cap)?;
    match block_decompose_universal(&t) {
        Ok(blocks) => Ok(report_json(
            "blocks",
            json!({ "depth": depth }),
            Status::Pass,
            Vec::new(),
            counts(&[
                ("blocks", json!(blocks.blocks.len())),
                (
                    "parabolic_size",
                    json!(blocks.blocks.first().map(|(_, ids)| ids.len()).unwrap_or(0)),
                ),
            ]),
        )),
        Err(e) => Ok(report_json(
            "blocks",
            json!({ "depth": depth }),
            Status::Fail,
            vec![json!({ "detail": e.to_string() })],
            Map::new(),
        )),
    }
}

fn run_stability(matrix: &CoxeterMatrix, d: u32, big_d: u32, cap: usize) -> Result<Value> {
    let report = stability(|depth| order_at(matrix, depth, cap), d, big_d)?;
    Ok(report_json(
        "stability",
        json!({ "base_depth": d, "probe_depth": big_d }),
        Status::Pass,
        Vec::new(),
        counts(&[
            ("adjacencies", json!(report.adjacencies.len())),
            ("splits", json!(report.split_count)),
        ]),
    ))
}

fn run_interval_growth(matrix: &CoxeterMatrix, d: u32, big_d: u32, cap: usize) -> Result<Value> {
    let base = order_at(matrix, d, cap)?;
    let probe = order_at(matrix, big_d, cap)?;
    let members = if is_affine(matrix) {
        // Fixed subgroup: the ladder over the first finite simple root.
        let model = AffineModel::<Rat>::build(matrix)?;
        let g1 = model.affine_vector(reflab_core::affine::alpha0(
            reflab_core::affine::BetaRef::Pos(0),
        ));
        let g2 = model.affine_vector(reflab_core::affine::alpha0(
            reflab_core::affine::BetaRef::Neg(0),
        ));
        let slice = base.slice();
        let a = slice.lookup(&g1).ok_or(Error::Parse { detail: "ladder root beyond slice".into() })?;
        let b = slice.lookup(&g2).ok_or(Error::Parse { detail: "ladder root beyond slice".into() })?;
        dihedral_closure(a, b, slice.as_ref())?.members
    } else {
        // A transverse fiber of the base slice.
        let slice = base.slice();
        let fibers = observed_fibers(slice.as_ref(), matrix.rank().min(2) - 1);
        let hi = Rat::new(2, 3);
        let (_, members) = fibers
            .iter()
            .find(|(c, ids)| {
                ids.len() >= 2
                    && c.is_positive()
                    && c.compare(&hi) != std::cmp::Ordering::Greater
            })
            .ok_or(Error::Parse { detail: "no usable fiber at this depth".into() })?;
        maximal_dihedral(members[0], members[1], slice.as_ref())?.members
    };
    let growth = dihedral_interval_growth(&base, &probe, &members);
    Ok(report_json(
        "char3",
        json!({ "base_depth": d, "probe_depth": big_d }),
        Status::Pass,
        Vec::new(),
        counts(&[
            ("consecutive_pairs", json!(growth.total())),
            ("growing", json!(growth.growing)),
        ]),
    ))
}

pub fn certify(
    config: &Config,
    matrix_spec: &str,
    lemma: &str,
    depths: &str,
    json_out: Option<&Path>,
) -> Result<i32> {
    let (matrix, _) = resolve_matrix(matrix_spec)?;
    let (d, big_d) = parse_depths(depths)?;
    let need_ladder = || {
        big_d.ok_or(Error::Parse {
            detail: format!("lemma {lemma:?} needs a depth ladder \"d,D\""),
        })
    };
    let report = match lemma {
        "c-range" => run_c_range(&matrix, d, config.cap)?,
        "density" => {
            let big = need_ladder()?;
            run_density(&matrix, d, big, config.cap)?
        }
        "blocks" => run_blocks(&matrix, d, config.cap)?,
        "stability" => {
            let big = need_ladder()?;
            run_stability(&matrix, d, big, config.cap)?
        }
        "char3" => {
            let big = need_ladder()?;
            run_interval_growth(&matrix, d, big, config.cap)?
        }
        other => {
            return Err(Error::Parse {
                detail: format!(
                    "unknown lemma {other:?}; expected c-range|density|blocks|stability|char3"
                ),
            })
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match json_out {
        Some(path) => std::fs::write(path, &text)?,
        None => println!("{text}"),
    }
    let failed = report["status"] == "fail";
    Ok(if failed { 1 } else { 0 })
}

struct CertifierOutcome {
    name: String,
    matrix: String,
    status: Status,
    counts: Map<String, Value>,
    detail: String,
}

impl CertifierOutcome {
    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "matrix": self.matrix,
            "status": self.status.as_str(),
            "counts": self.counts,
            "detail": self.detail,
        })
    }
}

/// Runs the full certifier battery: coordinate range, density, blocks,
/// stability trend and fiber interval growth on the rank-3 universal
/// group, plus two-sided order verification, inversion identities and
/// junction stability on the two affine types. Exit 0 only when nothing
/// fails; inconclusive outcomes are listed but do not fail the run.
pub fn certify_all(
    config: &Config,
    universal_depth: u32,
    affine_depth: u32,
    json_out: Option<&Path>,
) -> Result<i32> {
    let cap = config.cap;
    let mut outcomes: Vec<CertifierOutcome> = Vec::new();
    let universal = CoxeterMatrix::universal(3);

    // Coordinate range at the configured depth.
    {
        let slice = RootSlice::<Rat>::generate(&universal, universal_depth, cap)?;
        let report = certify_coordinate_range(&slice);
        outcomes.push(CertifierOutcome {
            name: "c-range".into(),
            matrix: "universal3".into(),
            status: if report.pass { Status::Pass } else { Status::Fail },
            counts: counts(&[
                ("total_roots", json!(report.total_roots)),
                ("violations", json!(report.violations.len())),
            ]),
            detail: "no first coordinate in (2/3, 1)".into(),
        });

        // Density over the ladder 4 -> configured depth.
        let density = certify_density(&slice, 4, universal_depth);
        let status = if !density.strictly_increasing_counts() {
            Status::Fail
        } else if density.all_witnessed() {
            Status::Pass
        } else {
            Status::Inconclusive
        };
        outcomes.push(CertifierOutcome {
            name: "density".into(),
            matrix: "universal3".into(),
            status,
            counts: counts(&[
                ("pairs_total", json!(density.pairs_total)),
                ("witnessed", json!(density.witnessed)),
            ]),
            detail: "adjacent coordinate pairs acquire intermediate witnesses".into(),
        });
    }

    // Block decomposition at every depth from 4 to the configured depth.
    {
        let mut ok = true;
        let mut detail = String::new();
        for depth in 4..=universal_depth {
            let t = universal_lex_order(&universal, depth, cap)?;
            if let Err(e) = block_decompose_universal(&t) {
                ok = false;
                detail = format!("depth {depth}: {e}");
                break;
            }
        }
        if ok {
            detail = format!("contiguous ordered blocks at depths 4..={universal_depth}");
        }
        outcomes.push(CertifierOutcome {
            name: "blocks".into(),
            matrix: "universal3".into(),
            status: if ok { Status::Pass } else { Status::Fail },
            counts: Map::new(),
            detail,
        });
    }

    // Stability trend: split counts grow with depth for the universal
    // lexicographic order.
    {
        let shallow = stability(|d| universal_lex_order(&universal, d, cap), 4, 7)?;
        let deeper = stability(|d| universal_lex_order(&universal, d, cap), 5, 8)?;
        let ok = deeper.split_count > shallow.split_count;
        outcomes.push(CertifierOutcome {
            name: "stability-trend".into(),
            matrix: "universal3".into(),
            status: if ok { Status::Pass } else { Status::Fail },
            counts: counts(&[
                ("splits_4_7", json!(shallow.split_count)),
                ("splits_5_8", json!(deeper.split_count)),
            ]),
            detail: "split count strictly grows along the depth ladder".into(),
        });
    }

    // Interval growth over a transverse fiber: every consecutive pair.
    {
        let base = universal_lex_order(&universal, 4, cap)?;
        let probe = universal_lex_order(&universal, 7, cap)?;
        let fibers = observed_fibers(base.slice().as_ref(), 1);
        let hi = Rat::new(2, 3);
        let picked = fibers.iter().find(|(c, ids)| {
            ids.len() >= 2 && c.is_positive() && c.compare(&hi) != std::cmp::Ordering::Greater
        });
        match picked {
            Some((_, members)) => {
                let sub = maximal_dihedral(members[0], members[1], base.slice().as_ref())?;
                let growth = dihedral_interval_growth(&base, &probe, &sub.members);
                let ok = growth.total() > 0 && growth.all_grow();
                outcomes.push(CertifierOutcome {
                    name: "char3-fiber".into(),
                    matrix: "universal3".into(),
                    status: if ok { Status::Pass } else { Status::Fail },
                    counts: counts(&[
                        ("consecutive_pairs", json!(growth.total())),
                        ("growing", json!(growth.growing)),
                    ]),
                    detail: "every consecutive fiber pair's interval grows".into(),
                });
            }
            None => outcomes.push(CertifierOutcome {
                name: "char3-fiber".into(),
                matrix: "universal3".into(),
                status: Status::Fail,
                counts: Map::new(),
                detail: "no transverse fiber found".into(),
            }),
        }
    }

    // Affine certifiers.
    for (name, matrix) in [("a1~", CoxeterMatrix::affine_a1()), ("a2~", CoxeterMatrix::affine_a2())]
    {
        let slice = Arc::new(RootSlice::<Rat>::generate(&matrix, affine_depth, cap)?);
        let (pos_word, neg_word) = standard_words(&slice)?;
        let t = two_sided_order(&slice, &pos_word, &neg_word)?;
        let planes = PlaneIndex::build(&slice);
        let verification = verify_reflection_order(&t, &planes);
        outcomes.push(CertifierOutcome {
            name: "two-sided-verify".into(),
            matrix: name.into(),
            status: if verification.is_clean() { Status::Pass } else { Status::Fail },
            counts: counts(&[
                (
                    "violations",
                    json!(
                        verification.betweenness_violations.len()
                            + verification.dihedral_violations.len()
                    ),
                ),
                ("families", json!(verification.families_checked)),
            ]),
            detail: format!("axioms on the depth-{affine_depth} two-sided order"),
        });

        let model = AffineModel::<Rat>::build(&matrix)?;
        let level = affine_depth.min(6);
        let pos_ok = check_inversion_identity(&model, &pos_word, Side::Positive, level)?.ok;
        let neg_ok = check_inversion_identity(&model, &neg_word, Side::Negative, level)?.ok;
        outcomes.push(CertifierOutcome {
            name: "inversion-identity".into(),
            matrix: name.into(),
            status: if pos_ok && neg_ok { Status::Pass } else { Status::Fail },
            counts: counts(&[("level", json!(level))]),
            detail: format!(
                "{} and {} exhaust the two sides of the loop extension",
                pos_word.label(),
                neg_word.label()
            ),
        });

        // Junction stability of a fixed dihedral restriction.
        let model_g1 = model.affine_vector(reflab_core::affine::alpha0(
            reflab_core::affine::BetaRef::Pos(0),
        ));
        let model_g2 = model.affine_vector(reflab_core::affine::alpha0(
            reflab_core::affine::BetaRef::Neg(0),
        ));
        let order_for = |d: u32| -> Result<TruncatedOrder<Rat>> {
            let s = Arc::new(RootSlice::<Rat>::generate(&matrix, d, cap)?);
            let (p, n) = standard_words(&s)?;
            two_sided_order(&s, &p, &n)
        };
        let base = order_for(4)?;
        let probe = order_for(7)?;
        let members_of = |t: &TruncatedOrder<Rat>| -> Result<Vec<reflab_core::roots::RootId>> {
            let s = t.slice();
            let a = s.lookup(&model_g1).ok_or(Error::Parse { detail: "ladder escapes".into() })?;
            let b = s.lookup(&model_g2).ok_or(Error::Parse { detail: "ladder escapes".into() })?;
            Ok(dihedral_closure(a, b, s.as_ref())?.members)
        };
        let report = restriction_stability(&base, &members_of(&base)?, &probe, &members_of(&probe)?);
        outcomes.push(CertifierOutcome {
            name: "junction-stability".into(),
            matrix: name.into(),
            status: if report.split_count == 1 { Status::Pass } else { Status::Fail },
            counts: counts(&[
                ("splits", json!(report.split_count)),
                ("adjacencies", json!(report.adjacencies.len())),
            ]),
            detail: "restriction to a dihedral ladder splits only at its junction".into(),
        });
    }

    let fail_count = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    let inconclusive_count =
        outcomes.iter().filter(|o| o.status == Status::Inconclusive).count();
    let summary = json!({
        "config": {
            "universal_depth": universal_depth,
            "affine_depth": affine_depth,
            "cap": cap,
        },
        "certifiers": outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
        "inconclusive": inconclusive_count,
        "failures": fail_count,
        "overall": if fail_count == 0 { "pass" } else { "fail" },
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match json_out {
        Some(path) => std::fs::write(path, &text)?,
        None => println!("{text}"),
    }
    Ok(if fail_count == 0 { 0 } else { 1 })
}
