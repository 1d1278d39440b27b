//! Command-line front end for the rbforge library: verify and enumerate
//! (relative) Rota–Baxter operators, build the induced braces and
//! post-groups, and run the Yang–Baxter checks and classification sweeps.
//!
//! Exit codes: 0 = all checks passed / classification clean, 1 = a check
//! failed or a classification left something unexplained (a certificate is
//! printed), 2 = usage, parse, or I/O error.

mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use rbforge_core::braces::{
    brace_from_rb, brace_from_rrb, brace_to_postgroup, is_homomorphic_postgroup, lambda_of,
    nilpotent_postgroup, postgroup_to_brace, BraceError, BraceJson, PostGroupJson, SkewBrace,
    TripleViolation,
};
use rbforge_core::group::{
    build_group, identify, semidirect, Action, CarrierMap, FiniteGroup, SemidirectProduct,
};
use rbforge_core::operators::{
    check_rb, check_rrb, enumerate_rb_budgeted, enumerate_rrb_budgeted, lift_to_semidirect,
    project_to_rrb, OperatorError, OperatorJson, RbOperator, RrbOperator, Violation, Weight,
    DEFAULT_NODE_BUDGET,
};
use rbforge_core::ybe::matrix::{classify_matrices_box, classify_matrices_mod, MatrixDomain};
use rbforge_core::ybe::verbal::{check_verbal, classify_verbal, VerbalSolution, VerbalVerdict};
use rbforge_core::ybe::{check_braid_finite, solution_from_brace, FiniteSolution};
use rbforge_core::zp2::{build_zp2_action, classify_zp2};

#[derive(Parser)]
#[command(name = "rbforge", version, about = "Rota-Baxter operators, skew braces and Yang-Baxter solutions on finite groups", propagate_version = true)]
struct Cli {
    /// Worker threads for parallel sweeps (overrides RBFORGE_WORKERS; default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output format; csv applies only to list-shaped reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a Rota-Baxter operator file against its axiom
    VerifyRb {
        /// Operator file: {"group_spec", "weight", "image"}
        #[arg(long)]
        op: PathBuf,
        /// Cross-check: fail unless the file's group spec equals this
        #[arg(long)]
        group: Option<String>,
    },
    /// Check a relative Rota-Baxter operator file against its axiom
    VerifyRrb {
        /// Operator file: {"space_spec", "actor_spec", "action", "weight", "image"}
        #[arg(long)]
        op: PathBuf,
    },
    /// List every Rota-Baxter operator on a group
    EnumerateRb {
        /// Group spec, e.g. Z4, S3, D4, Q8, Heis3, Z2xZ2
        #[arg(long)]
        group: String,
        /// Operator weight, 1 or -1
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        weight: i8,
        /// Search-node budget (default 50 million)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// List every relative Rota-Baxter operator along an action
    EnumerateRrb {
        /// Action file: {"space_spec", "actor_spec", "action"}
        #[arg(long, conflicts_with = "zp2")]
        action: Option<PathBuf>,
        /// Built-in action of Zp x Zp on Zp^2: three values p k1 k2
        #[arg(long, num_args = 3, value_names = ["P", "K1", "K2"])]
        zp2: Option<Vec<usize>>,
        /// Operator weight, 1 or -1
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        weight: i8,
        /// Search-node budget (default 50 million)
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Lift a relative operator to an ordinary one on the semidirect product
    Lift {
        /// Relative operator file
        #[arg(long)]
        op: PathBuf,
    },
    /// Project an operator on a semidirect product back to a relative one
    Project {
        /// Lifted operator file: {"semidirect_of", "weight", "image"}
        #[arg(long)]
        op: PathBuf,
    },
    /// Build the skew brace induced by a weight +1 Rota-Baxter operator
    BraceFromRb {
        #[arg(long)]
        op: PathBuf,
    },
    /// Build the skew brace induced by a weight +1 relative operator
    BraceFromRrb {
        #[arg(long)]
        op: PathBuf,
    },
    /// Build a post-group, either from a brace file or by n-fold conjugation
    /// on a two-step nilpotent group
    Postgroup {
        /// Brace file: {"n", "dot_table", "circ_table"}
        #[arg(long, conflicts_with_all = ["group", "n"])]
        brace: Option<PathBuf>,
        /// Group spec for the conjugation construction
        #[arg(long, requires = "n")]
        group: Option<String>,
        /// Conjugation exponent (any nonzero integer)
        #[arg(long, requires = "group", allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// Check whether a brace's lambda map is a homomorphism
    LambdaCheck {
        /// Brace file: {"n", "dot_table", "circ_table"}
        #[arg(long)]
        brace: PathBuf,
    },
    /// Check a finite map table against the braid relation
    YbeCheck {
        /// Solution file: {"f", "g"} (two n x n tables)
        #[arg(long)]
        solution: PathBuf,
    },
    /// Emit the Yang-Baxter solution attached to a skew brace
    YbeFromBrace {
        /// Brace file: {"n", "dot_table", "circ_table"}
        #[arg(long)]
        brace: PathBuf,
    },
    /// Sweep 2x2 matrices for the braid identity, mod q or over a box in Z
    MatrixYbe {
        /// Work mod q (entries 0..q)
        #[arg(long, conflicts_with = "bound")]
        modulus: Option<i64>,
        /// Work over Z with entries in [-bound, bound]
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Check one verbal candidate S(x,y) = (x^a y^b [y,x]^m, x^c y^d [y,x]^n)
    VerbalCheck {
        /// Six comma-separated exponents a,b,m,c,d,n
        #[arg(long, allow_hyphen_values = true)]
        tuple: String,
    },
    /// Classify all verbal candidates with exponents in [-k, k]
    VerbalClassify {
        /// Exponent box half-width
        #[arg(long, default_value_t = 2)]
        k: i64,
        /// Family parameter sweep half-width
        #[arg(long, default_value_t = 3)]
        param_bound: i64,
    },
    /// Classify relative operators Zp^2 -> Zp x Zp over all diagonal actions
    Zp2Classify {
        /// The prime, 2, 3 or (with --allow-p5) 5
        #[arg(long)]
        p: usize,
        /// Permit the large p = 5 sweep
        #[arg(long, default_value_t = false)]
        allow_p5: bool,
    },
    /// Re-run a named pipeline and diff its report against the golden file
    Reproduce {
        #[arg(value_enum)]
        id: reproduce::ReproduceId,
        /// Print the freshly computed report instead of diffing
        #[arg(long, default_value_t = false)]
        emit: bool,
        /// Directory holding the golden files (default: $RBFORGE_GOLDEN or crates/cli/golden)
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

/// On-disk form of an action, mirroring the relative-operator file minus
/// the operator fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct ActionFileJson {
    space_spec: String,
    actor_spec: String,
    action: Vec<Vec<usize>>,
}

impl ActionFileJson {
    fn build(&self) -> Result<Action> {
        let space = Arc::new(build_group(&self.space_spec)?);
        let actor = Arc::new(build_group(&self.actor_spec)?);
        Ok(Action::new(actor, space, self.action.clone())?)
    }
}

/// On-disk form of an operator living on a semidirect product, which the
/// plain group-spec grammar cannot name.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct LiftedJson {
    semidirect_of: ActionFileJson,
    weight: Weight,
    image: Vec<usize>,
}

#[derive(Serialize)]
struct CheckReport {
    check: &'static str,
    weight: i8,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<Violation>,
}

#[derive(Serialize)]
struct EnumerationReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    group_spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    space_spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    actor_spec: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    action: Option<Vec<Vec<usize>>>,
    weight: i8,
    count: usize,
    operators: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct BraceReport {
    brace: BraceJson,
    dot_name: Option<String>,
    circ_name: Option<String>,
    trivial: bool,
    two_sided: bool,
    lambda_homomorphic: bool,
}

#[derive(Serialize)]
struct PostgroupReport {
    postgroup: PostGroupJson,
    circ_name: Option<String>,
    homomorphic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let workers = resolve_workers(cli.workers)?;
    let format = cli.format;
    match cli.command {
        Command::VerifyRb { op, group } => verify_rb(&op, group.as_deref(), format),
        Command::VerifyRrb { op } => verify_rrb(&op, format),
        Command::EnumerateRb { group, weight, budget } => {
            enumerate_rb_cmd(&group, weight, budget, workers, format)
        }
        Command::EnumerateRrb { action, zp2, weight, budget } => {
            enumerate_rrb_cmd(action.as_deref(), zp2.as_deref(), weight, budget, workers, format)
        }
        Command::Lift { op } => lift_cmd(&op, format),
        Command::Project { op } => project_cmd(&op, format),
        Command::BraceFromRb { op } => brace_from_rb_cmd(&op, format),
        Command::BraceFromRrb { op } => brace_from_rrb_cmd(&op, format),
        Command::Postgroup { brace, group, n } => {
            postgroup_cmd(brace.as_deref(), group.as_deref(), n, format)
        }
        Command::LambdaCheck { brace } => lambda_check_cmd(&brace, format),
        Command::YbeCheck { solution } => ybe_check_cmd(&solution, format),
        Command::YbeFromBrace { brace } => ybe_from_brace_cmd(&brace, format),
        Command::MatrixYbe { modulus, bound } => matrix_ybe_cmd(modulus, bound, workers, format),
        Command::VerbalCheck { tuple } => verbal_check_cmd(&tuple, format),
        Command::VerbalClassify { k, param_bound } => {
            verbal_classify_cmd(k, param_bound, workers, format)
        }
        Command::Zp2Classify { p, allow_p5 } => zp2_classify_cmd(p, allow_p5, workers, format),
        Command::Reproduce { id, emit, golden_dir } => {
            reproduce::run(id, emit, golden_dir.as_deref(), workers)
        }
    }
}

fn resolve_workers(flag: Option<usize>) -> Result<usize> {
    let workers = match flag {
        Some(w) => w,
        None => match std::env::var("RBFORGE_WORKERS") {
            Ok(raw) => raw
                .parse::<usize>()
                .map_err(|_| anyhow!("RBFORGE_WORKERS must be a positive integer, got {raw:?}"))?,
            Err(_) => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        },
    };
    if workers == 0 {
        bail!("worker count must be at least 1");
    }
    Ok(workers)
}

fn parse_weight(raw: i8) -> Result<Weight> {
    match raw {
        1 => Ok(Weight::Plus),
        -1 => Ok(Weight::Minus),
        other => bail!("weight must be 1 or -1, got {other}"),
    }
}

fn weight_to_i8(w: Weight) -> i8 {
    match w {
        Weight::Plus => 1,
        Weight::Minus => -1,
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let raw = std::fs::read_to_string(path)
        .with_context(|| format!("reading {} file {}", what, path.display()))?;
    serde_json::from_str(&raw).with_context(|| format!("parsing {} file {}", what, path.display()))
}

fn emit_json<T: Serialize>(report: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(report)?);
    Ok(())
}

fn csv_not_supported() -> Result<u8> {
    bail!("csv output applies only to list-shaped reports; use json or text")
}

fn load_rb_file(path: &Path) -> Result<(String, Arc<FiniteGroup>, CarrierMap, Weight)> {
    match read_json::<OperatorJson>(path, "operator")? {
        OperatorJson::Rb { group_spec, weight, image } => {
            let g = Arc::new(build_group(&group_spec)?);
            let map = CarrierMap::new(image, g.order())
                .with_context(|| format!("operator image in {}", path.display()))?;
            if map.len() != g.order() {
                bail!("operator image has {} entries but {} has order {}", map.len(), group_spec, g.order());
            }
            Ok((group_spec, g, map, weight))
        }
        OperatorJson::Rrb { .. } => {
            bail!("{} holds a relative operator; use the rrb commands", path.display())
        }
    }
}

fn load_rrb_file(path: &Path) -> Result<(String, String, Arc<Action>, CarrierMap, Weight)> {
    match read_json::<OperatorJson>(path, "operator")? {
        OperatorJson::Rrb { space_spec, actor_spec, action, weight, image } => {
            let space = Arc::new(build_group(&space_spec)?);
            let actor = Arc::new(build_group(&actor_spec)?);
            let act = Arc::new(Action::new(actor.clone(), space.clone(), action)?);
            let map = CarrierMap::new(image, actor.order())
                .with_context(|| format!("operator image in {}", path.display()))?;
            if map.len() != space.order() {
                bail!("operator image has {} entries but the space {} has order {}", map.len(), space_spec, space.order());
            }
            Ok((space_spec, actor_spec, act, map, weight))
        }
        OperatorJson::Rb { .. } => {
            bail!("{} holds an ordinary operator; use the rb commands", path.display())
        }
    }
}

fn report_check(
    check: &'static str,
    weight: Weight,
    outcome: Result<(), Violation>,
    format: Format,
) -> Result<u8> {
    let report = CheckReport {
        check,
        weight: weight_to_i8(weight),
        status: if outcome.is_ok() { "ok" } else { "violation" },
        violation: outcome.err(),
    };
    match format {
        Format::Json => emit_json(&report)?,
        Format::Text => match report.violation {
            None => println!("ok"),
            Some(v) => println!("violation: {v}"),
        },
        Format::Csv => return csv_not_supported(),
    }
    Ok(if report.violation.is_none() { 0 } else { 1 })
}

fn verify_rb(path: &Path, expect_group: Option<&str>, format: Format) -> Result<u8> {
    let (group_spec, g, map, weight) = load_rb_file(path)?;
    if let Some(expect) = expect_group {
        if expect != group_spec {
            bail!("operator file is over {group_spec}, not {expect}");
        }
    }
    report_check("rb", weight, check_rb(&g, &map, weight), format)
}

fn verify_rrb(path: &Path, format: Format) -> Result<u8> {
    let (_, _, action, map, weight) = load_rrb_file(path)?;
    report_check("rrb", weight, check_rrb(&action, &map, weight), format)
}

fn emit_enumeration(report: &EnumerationReport, format: Format) -> Result<u8> {
    match format {
        Format::Json => emit_json(report)?,
        Format::Csv => {
            println!("index,weight,image");
            for (i, image) in report.operators.iter().enumerate() {
                let joined: Vec<String> = image.iter().map(|v| v.to_string()).collect();
                println!("{i},{},{}", report.weight, joined.join(" "));
            }
        }
        Format::Text => {
            println!("{} operators of weight {}", report.count, report.weight);
            for image in &report.operators {
                println!("  {image:?}");
            }
        }
    }
    Ok(0)
}

fn enumerate_rb_cmd(
    spec: &str,
    raw_weight: i8,
    budget: Option<u64>,
    workers: usize,
    format: Format,
) -> Result<u8> {
    let weight = parse_weight(raw_weight)?;
    let g = build_group(spec)?;
    let ops = enumerate_rb_budgeted(&g, weight, budget.unwrap_or(DEFAULT_NODE_BUDGET), workers)?;
    let report = EnumerationReport {
        group_spec: Some(spec.to_string()),
        space_spec: None,
        actor_spec: None,
        action: None,
        weight: raw_weight,
        count: ops.len(),
        operators: ops.into_iter().map(|m| m.image).collect(),
    };
    emit_enumeration(&report, format)
}

fn enumerate_rrb_cmd(
    action_path: Option<&Path>,
    zp2: Option<&[usize]>,
    raw_weight: i8,
    budget: Option<u64>,
    workers: usize,
    format: Format,
) -> Result<u8> {
    let weight = parse_weight(raw_weight)?;
    let (space_spec, actor_spec, action) = match (action_path, zp2) {
        (Some(path), None) => {
            let file: ActionFileJson = read_json(path, "action")?;
            let action = file.build()?;
            (file.space_spec, file.actor_spec, action)
        }
        (None, Some(&[p, k1, k2])) => {
            let action = build_zp2_action(p, k1, k2)?;
            (format!("Z{}", p * p), format!("Z{p}xZ{p}"), action)
        }
        _ => bail!("provide exactly one of --action FILE or --zp2 P K1 K2"),
    };
    let ops =
        enumerate_rrb_budgeted(&action, weight, budget.unwrap_or(DEFAULT_NODE_BUDGET), workers)?;
    let report = EnumerationReport {
        group_spec: None,
        space_spec: Some(space_spec),
        actor_spec: Some(actor_spec),
        action: Some(action.auts().to_vec()),
        weight: raw_weight,
        count: ops.len(),
        operators: ops.into_iter().map(|m| m.image).collect(),
    };
    emit_enumeration(&report, format)
}

fn lift_cmd(path: &Path, format: Format) -> Result<u8> {
    let (space_spec, actor_spec, action, map, weight) = load_rrb_file(path)?;
    if let Err(v) = check_rrb(&action, &map, weight) {
        return report_check("rrb", weight, Err(v), format);
    }
    let q = RrbOperator::new(action.clone(), map, weight)?;
    let (_, lifted) = lift_to_semidirect(&q)?;
    let out = LiftedJson {
        semidirect_of: ActionFileJson {
            space_spec,
            actor_spec,
            action: action.auts().to_vec(),
        },
        weight,
        image: lifted.map().image.clone(),
    };
    match format {
        Format::Json => emit_json(&out)?,
        Format::Text => {
            println!(
                "lifted to {} x| {}: order {}, image {:?}",
                out.semidirect_of.space_spec,
                out.semidirect_of.actor_spec,
                out.image.len(),
                out.image
            );
        }
        Format::Csv => return csv_not_supported(),
    }
    Ok(0)
}

fn build_semidirect(file: &ActionFileJson) -> Result<SemidirectProduct> {
    let action = Arc::new(file.build()?);
    Ok(semidirect(action)?)
}

fn project_cmd(path: &Path, format: Format) -> Result<u8> {
    let lifted: LiftedJson = read_json(path, "lifted operator")?;
    let sp = build_semidirect(&lifted.semidirect_of)?;
    let group = Arc::new(sp.group().clone());
    let map = CarrierMap::new(lifted.image, group.order())
        .with_context(|| format!("operator image in {}", path.display()))?;
    if map.len() != group.order() {
        bail!("operator image has {} entries but the product has order {}", map.len(), group.order());
    }
    if let Err(v) = check_rb(&group, &map, lifted.weight) {
        return report_check("rb", lifted.weight, Err(v), format);
    }
    let b = RbOperator::new(group, map, lifted.weight)?;
    match project_to_rrb(&sp, &b) {
        Ok(q) => {
            let out = OperatorJson::Rrb {
                space_spec: lifted.semidirect_of.space_spec,
                actor_spec: lifted.semidirect_of.actor_spec,
                action: lifted.semidirect_of.action,
                weight: q.weight(),
                image: q.map().image.clone(),
            };
            match format {
                Format::Json => emit_json(&out)?,
                Format::Text => println!("projected: {:?}", q.map().image),
                Format::Csv => return csv_not_supported(),
            }
            Ok(0)
        }
        Err(err @ OperatorError::CenterConditionViolated { .. }) => {
            match format {
                Format::Json => emit_json(&serde_json::json!({
                    "status": "not-projectable",
                    "reason": err.to_string(),
                }))?,
                Format::Text => println!("not projectable: {err}"),
                Format::Csv => return csv_not_supported(),
            }
            Ok(1)
        }
        Err(err) => Err(err.into()),
    }
}

fn brace_report(brace: &SkewBrace) -> Result<BraceReport> {
    Ok(BraceReport {
        brace: BraceJson::from(brace),
        dot_name: identify(brace.dot())?,
        circ_name: identify(brace.circ())?,
        trivial: brace.is_trivial(),
        two_sided: brace.is_two_sided(),
        lambda_homomorphic: rbforge_core::braces::is_lambda_homomorphic(brace),
    })
}

fn emit_brace_report(report: &BraceReport, format: Format) -> Result<u8> {
    match format {
        Format::Json => emit_json(report)?,
        Format::Text => {
            println!(
                "brace on {} elements: dot {}, circ {}, trivial {}, two-sided {}, lambda homomorphic {}",
                report.brace.n,
                report.dot_name.as_deref().unwrap_or("?"),
                report.circ_name.as_deref().unwrap_or("?"),
                report.trivial,
                report.two_sided,
                report.lambda_homomorphic
            );
        }
        Format::Csv => return csv_not_supported(),
    }
    Ok(0)
}

fn brace_from_rb_cmd(path: &Path, format: Format) -> Result<u8> {
    let (_, g, map, weight) = load_rb_file(path)?;
    if let Err(v) = check_rb(&g, &map, weight) {
        return report_check("rb", weight, Err(v), format);
    }
    let b = RbOperator::new(g, map, weight)?;
    let brace = brace_from_rb(&b)?;
    emit_brace_report(&brace_report(&brace)?, format)
}

fn brace_from_rrb_cmd(path: &Path, format: Format) -> Result<u8> {
    let (_, _, action, map, weight) = load_rrb_file(path)?;
    if let Err(v) = check_rrb(&action, &map, weight) {
        return report_check("rrb", weight, Err(v), format);
    }
    let q = RrbOperator::new(action, map, weight)?;
    let brace = brace_from_rrb(&q)?;
    emit_brace_report(&brace_report(&brace)?, format)
}

fn load_brace_file(path: &Path) -> Result<SkewBrace> {
    let json: BraceJson = read_json(path, "brace")?;
    match SkewBrace::try_from(json) {
        Ok(brace) => Ok(brace),
        Err(err) => Err(anyhow!(err).context(format!("validating brace file {}", path.display()))),
    }
}

fn postgroup_cmd(
    brace_path: Option<&Path>,
    group: Option<&str>,
    n: Option<i64>,
    format: Format,
) -> Result<u8> {
    let pg = match (brace_path, group, n) {
        (Some(path), None, None) => brace_to_postgroup(&load_brace_file(path)?)?,
        (None, Some(spec), Some(n)) => {
            let g = build_group(spec)?;
            match nilpotent_postgroup(&g, n) {
                Ok(pg) => pg,
                Err(err @ (BraceError::NotTwoStepNilpotent | BraceError::ZeroExponent)) => {
                    match format {
                        Format::Json => emit_json(&serde_json::json!({
                            "status": "violation",
                            "reason": err.to_string(),
                        }))?,
                        Format::Text => println!("violation: {err}"),
                        Format::Csv => return csv_not_supported(),
                    }
                    return Ok(1);
                }
                Err(err) => return Err(err.into()),
            }
        }
        _ => bail!("provide either --brace FILE or --group SPEC --n N"),
    };
    let brace = postgroup_to_brace(&pg)?;
    let report = PostgroupReport {
        postgroup: PostGroupJson::from(&pg),
        circ_name: identify(brace.circ())?,
        homomorphic: is_homomorphic_postgroup(&pg),
    };
    match format {
        Format::Json => emit_json(&report)?,
        Format::Text => {
            println!(
                "post-group on {} elements: circ {}, homomorphic {}",
                report.postgroup.n,
                report.circ_name.as_deref().unwrap_or("?"),
                report.homomorphic
            );
        }
        Format::Csv => return csv_not_supported(),
    }
    Ok(0)
}

fn lambda_check_cmd(path: &Path, format: Format) -> Result<u8> {
    let brace = load_brace_file(path)?;
    let lam = lambda_of(&brace);
    let mut violation: Option<TripleViolation> = None;
    'outer: for a in 0..brace.n() {
        for b in 0..brace.n() {
            let ab = brace.circ().mul(a, b);
            for x in 0..brace.n() {
                let lhs = lam.apply(ab, x);
                let rhs = lam.apply(a, lam.apply(b, x));
                if lhs != rhs {
                    violation = Some(TripleViolation { triple: (a, b, x), lhs, rhs });
                    break 'outer;
                }
            }
        }
    }
    match format {
        Format::Json => emit_json(&serde_json::json!({
            "check": "lambda-homomorphism",
            "status": if violation.is_none() { "ok" } else { "violation" },
            "violation": violation,
        }))?,
        Format::Text => match violation {
            None => println!("ok"),
            Some(v) => println!("violation: {v}"),
        },
        Format::Csv => return csv_not_supported(),
    }
    Ok(if violation.is_none() { 0 } else { 1 })
}

#[derive(Deserialize)]
struct SolutionFileJson {
    f: Vec<Vec<usize>>,
    g: Vec<Vec<usize>>,
}

fn ybe_check_cmd(path: &Path, format: Format) -> Result<u8> {
    let raw: SolutionFileJson = read_json(path, "solution")?;
    let s = FiniteSolution::new(raw.f, raw.g)
        .map_err(|err| anyhow!(err).context(format!("validating solution file {}", path.display())))?;
    let outcome = check_braid_finite(&s);
    match format {
        Format::Json => emit_json(&serde_json::json!({
            "check": "braid",
            "n": s.n,
            "status": if outcome.is_ok() { "ok" } else { "violation" },
            "violation": outcome.err(),
        }))?,
        Format::Text => match outcome {
            Ok(()) => println!("ok"),
            Err(v) => println!("violation: {v:?}"),
        },
        Format::Csv => return csv_not_supported(),
    }
    Ok(if outcome.is_ok() { 0 } else { 1 })
}

fn ybe_from_brace_cmd(path: &Path, format: Format) -> Result<u8> {
    let brace = load_brace_file(path)?;
    let s = solution_from_brace(&brace);
    if let Err(v) = check_braid_finite(&s) {
        bail!("internal error: brace solution fails the braid relation at {v:?}");
    }
    match format {
        Format::Json => emit_json(&serde_json::json!({ "f": s.f, "g": s.g }))?,
        Format::Text => println!("braid-valid solution on {} elements", s.n),
        Format::Csv => return csv_not_supported(),
    }
    Ok(0)
}

fn matrix_ybe_cmd(
    modulus: Option<i64>,
    bound: Option<i64>,
    workers: usize,
    format: Format,
) -> Result<u8> {
    let report = match (modulus, bound) {
        (Some(q), None) => {
            if q < 2 {
                bail!("modulus must be at least 2");
            }
            classify_matrices_mod(q, workers)
        }
        (None, Some(b)) => {
            if b < 0 {
                bail!("bound must be nonnegative");
            }
            classify_matrices_box(b, workers)
        }
        _ => bail!("provide exactly one of --modulus Q or --bound B"),
    };
    match format {
        Format::Json => emit_json(&report)?,
        Format::Csv => {
            println!("a,b,c,d");
            for m in &report.passing {
                println!("{},{},{},{}", m.a, m.b, m.c, m.d);
            }
        }
        Format::Text => {
            println!(
                "{} of {} matrices satisfy the braid identity; {} outside the four families",
                report.passing_count(),
                report.total,
                report.outside_families.len()
            );
        }
    }
    let claims_families = match report.domain {
        MatrixDomain::Mod { prime, .. } => prime,
        MatrixDomain::Box { .. } => true,
    };
    Ok(if claims_families && !report.outside_families.is_empty() { 1 } else { 0 })
}

fn parse_tuple(raw: &str) -> Result<[i64; 6]> {
    let parts: Vec<i64> = raw
        .split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| anyhow!("bad exponent {s:?}")))
        .collect::<Result<_>>()?;
    let arr: [i64; 6] =
        parts.try_into().map_err(|v: Vec<i64>| anyhow!("expected 6 exponents, got {}", v.len()))?;
    Ok(arr)
}

fn verbal_check_cmd(raw: &str, format: Format) -> Result<u8> {
    let tuple = parse_tuple(raw)?;
    let s = VerbalSolution::from_tuple(tuple);
    let verdict = check_verbal(&s)?;
    let residue = match verdict {
        VerbalVerdict::Ok => None,
        VerbalVerdict::Fails(r) => Some(r),
    };
    match format {
        Format::Json => emit_json(&serde_json::json!({
            "check": "verbal-braid",
            "tuple": tuple,
            "form": s.to_string(),
            "status": if residue.is_none() { "ok" } else { "violation" },
            "residue": residue,
        }))?,
        Format::Text => match residue {
            None => println!("ok: {s}"),
            Some(r) => println!("violation: {s} leaves residue {r:?}"),
        },
        Format::Csv => return csv_not_supported(),
    }
    Ok(if residue.is_none() { 0 } else { 1 })
}

fn verbal_classify_cmd(k: i64, param_bound: i64, workers: usize, format: Format) -> Result<u8> {
    if k < 0 || param_bound < 0 {
        bail!("bounds must be nonnegative");
    }
    let report = classify_verbal(k, param_bound, workers)?;
    match format {
        Format::Json => emit_json(&report)?,
        Format::Text => {
            println!(
                "box {}: {} passing tuples, {} unmatched, {} failing family instances",
                k,
                report.passing_count,
                report.unmatched_passing.len(),
                report.failing_family_instances.len()
            );
            for t in &report.unmatched_passing {
                println!("  unmatched {t:?}");
            }
        }
        Format::Csv => return csv_not_supported(),
    }
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn zp2_classify_cmd(p: usize, allow_p5: bool, workers: usize, format: Format) -> Result<u8> {
    let report = classify_zp2(p, allow_p5, workers)?;
    match format {
        Format::Json => emit_json(&report)?,
        Format::Csv => {
            println!("k1,k2,b1,bp,status,is_homomorphism");
            for action in &report.actions {
                for e in &action.entries {
                    let status = match e.status {
                        rbforge_core::zp2::Zp2Status::Valid => "valid",
                        rbforge_core::zp2::Zp2Status::Inconsistent => "inconsistent",
                    };
                    println!(
                        "{},{},{}:{},{}:{},{},{}",
                        action.k1, action.k2, e.b1.0, e.b1.1, e.bp.0, e.bp.1, status,
                        e.is_homomorphism
                    );
                }
            }
        }
        Format::Text => {
            println!("p = {}: {} valid operators across {} actions", report.p, report.valid_count(), report.actions.len());
            for action in &report.actions {
                println!("  (k1,k2) = ({},{}): {} valid", action.k1, action.k2, action.valid_entries().count());
            }
        }
    }
    // the homomorphism statement holds for odd primes; p = 2 is report-only
    Ok(if p > 2 && report.has_non_homomorphic_valid() { 1 } else { 0 })
}
