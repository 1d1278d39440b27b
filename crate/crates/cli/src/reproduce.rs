//! Canned pipelines whose reports are frozen as golden files. `reproduce`
//! re-runs a pipeline and byte-compares the fresh report against the
//! committed golden; it is a regression gate, not a proof.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::json;

use rbforge_core::braces::{
    brace_from_rb, brace_from_rrb, is_homomorphic_postgroup, is_lambda_homomorphic,
    nilpotent_postgroup, postgroup_to_brace,
};
use rbforge_core::group::{build_group, find_isomorphism, identify, CarrierMap};
use rbforge_core::operators::{check_rb, check_rrb, enumerate_rb, RbOperator, RrbOperator, Weight};
use rbforge_core::ybe::matrix::classify_matrices_mod;
use rbforge_core::ybe::verbal::classify_verbal;
use rbforge_core::zp2::{build_zp2_action, classify_zp2};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReproduceId {
    S3Rb,
    Z4RrbBrace,
    Heis3N2,
    Zp2P3,
    MatrixZ5,
    VerbalBox2,
}

impl ReproduceId {
    fn slug(self) -> &'static str {
        match self {
            ReproduceId::S3Rb => "s3-rb",
            ReproduceId::Z4RrbBrace => "z4-rrb-brace",
            ReproduceId::Heis3N2 => "heis3-n2",
            ReproduceId::Zp2P3 => "zp2-p3",
            ReproduceId::MatrixZ5 => "matrix-z5",
            ReproduceId::VerbalBox2 => "verbal-box2",
        }
    }
}

pub fn run(id: ReproduceId, emit: bool, golden_dir: Option<&Path>, workers: usize) -> Result<u8> {
    let report = build_report(id, workers)?;
    let rendered = format!("{}\n", serde_json::to_string_pretty(&report)?);
    if emit {
        print!("{rendered}");
        return Ok(0);
    }
    let path = resolve_golden_dir(golden_dir).join(format!("{}.json", id.slug()));
    let golden = std::fs::read_to_string(&path).with_context(|| {
        format!(
            "reading golden file {} (bootstrap with `reproduce {} --emit`)",
            path.display(),
            id.slug()
        )
    })?;
    if rendered == golden {
        println!("reproduce {}: ok ({} bytes)", id.slug(), rendered.len());
        Ok(0)
    } else {
        let line = first_differing_line(&rendered, &golden);
        println!("reproduce {}: MISMATCH at line {}", id.slug(), line.0);
        println!("  fresh : {}", line.1);
        println!("  golden: {}", line.2);
        Ok(1)
    }
}

fn resolve_golden_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    if let Ok(dir) = std::env::var("RBFORGE_GOLDEN") {
        return PathBuf::from(dir);
    }
    PathBuf::from("crates/cli/golden")
}

fn first_differing_line(fresh: &str, golden: &str) -> (usize, String, String) {
    let mut fresh_lines = fresh.lines();
    let mut golden_lines = golden.lines();
    let mut n = 0;
    loop {
        n += 1;
        match (fresh_lines.next(), golden_lines.next()) {
            (Some(a), Some(b)) if a == b => continue,
            (a, b) => {
                return (
                    n,
                    a.unwrap_or("<end of report>").to_string(),
                    b.unwrap_or("<end of golden>").to_string(),
                )
            }
        }
    }
}

fn build_report(id: ReproduceId, workers: usize) -> Result<serde_json::Value> {
    match id {
        ReproduceId::S3Rb => s3_rb(workers),
        ReproduceId::Z4RrbBrace => z4_rrb_brace(workers),
        ReproduceId::Heis3N2 => heis3_n2(),
        ReproduceId::Zp2P3 => zp2_p3(workers),
        ReproduceId::MatrixZ5 => Ok(serde_json::to_value(classify_matrices_mod(5, workers))?),
        ReproduceId::VerbalBox2 => Ok(serde_json::to_value(classify_verbal(2, 3, workers)?)?),
    }
}

/// The order-6 symmetric group carries the operator sending the two
/// 2-cycles fixing the rightmost point to the identity and everything else
/// to a 3-cycle; composing with the retraction onto the subgroup generated
/// by one of them shows operators need not descend along retractions.
fn s3_rb(workers: usize) -> Result<serde_json::Value> {
    let g = Arc::new(build_group("S3")?);
    let image = vec![0, 0, 3, 4, 3, 4];
    let map = CarrierMap::new(image.clone(), g.order())?;
    if let Err(v) = check_rb(&g, &map, Weight::Plus) {
        bail!("showcase operator unexpectedly fails: {v}");
    }
    let b = RbOperator::new(g.clone(), map, Weight::Plus)?;

    let pi = CarrierMap { image: vec![0, 2, 2, 0, 0, 2] };
    if !pi.is_homomorphism(&g, &g) {
        bail!("retraction is not a homomorphism");
    }
    let source = 2usize;
    let pi_after_b = pi.apply(b.apply(source));
    let b_after_pi = b.apply(pi.apply(source));

    let ops = enumerate_rb(&g, Weight::Plus, workers)?;
    Ok(json!({
        "group_spec": "S3",
        "operator": { "weight": 1, "image": image, "status": "ok" },
        "projection_witness": {
            "retraction": pi.image,
            "source": source,
            "pi_after_b": pi_after_b,
            "b_after_pi": b_after_pi,
            "commutes": pi_after_b == b_after_pi,
        },
        "enumeration": {
            "weight": 1,
            "count": ops.len(),
            "operators": ops.into_iter().map(|m| m.image).collect::<Vec<_>>(),
        },
    }))
}

/// The relative operator Z4 → Z2×Z2 whose brace has Klein circle group,
/// against the backdrop that every ordinary weight +1 operator on Z4
/// induces only the trivial brace.
fn z4_rrb_brace(workers: usize) -> Result<serde_json::Value> {
    let action = Arc::new(build_zp2_action(2, 1, 0)?);
    let image = vec![0, 2, 1, 3];
    let map = CarrierMap::new(image.clone(), action.actor().order())?;
    if let Err(v) = check_rrb(&action, &map, Weight::Plus) {
        bail!("relative operator unexpectedly fails: {v}");
    }
    let q = RrbOperator::new(action, map, Weight::Plus)?;
    let brace = brace_from_rrb(&q)?;

    let z4 = Arc::new(build_group("Z4")?);
    let rb_maps = enumerate_rb(&z4, Weight::Plus, workers)?;
    let mut all_trivial = true;
    let rb_count = rb_maps.len();
    for map in rb_maps {
        let op = RbOperator::new(z4.clone(), map, Weight::Plus)?;
        all_trivial &= brace_from_rb(&op)?.is_trivial();
    }

    Ok(json!({
        "space_spec": "Z4",
        "actor_spec": "Z2xZ2",
        "operator": { "weight": 1, "image": image, "status": "ok" },
        "brace": {
            "trivial": brace.is_trivial(),
            "two_sided": brace.is_two_sided(),
            "circ_name": identify(brace.circ())?,
        },
        "plain_rb_on_z4": { "count": rb_count, "all_braces_trivial": all_trivial },
    }))
}

/// Conjugation by squares on the Heisenberg group of order 27 produces a
/// post-group whose circle group is elementary abelian — not isomorphic to
/// the group it came from.
fn heis3_n2() -> Result<serde_json::Value> {
    let g = build_group("Heis3")?;
    let pg = nilpotent_postgroup(&g, 2)?;
    let brace = postgroup_to_brace(&pg)?;
    Ok(json!({
        "group_spec": "Heis3",
        "n": 2,
        "homomorphic": is_homomorphic_postgroup(&pg),
        "lambda_homomorphic": is_lambda_homomorphic(&brace),
        "circ_name": identify(brace.circ())?,
        "circ_abelian": brace.circ().is_abelian(),
        "circ_isomorphic_to_dot": find_isomorphism(brace.circ(), brace.dot())?.is_some(),
    }))
}

fn zp2_p3(workers: usize) -> Result<serde_json::Value> {
    let report = classify_zp2(3, false, workers)?;
    Ok(json!({
        "valid_count": report.valid_count(),
        "all_valid_are_homomorphisms": report.all_valid_are_homomorphisms(),
        "report": report,
    }))
}
