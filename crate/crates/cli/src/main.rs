mod config;
mod errors;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gorbit_core::catalog::{
    condition, expected_go, verify_row, CampaignConfig, RowCampaign, RowSetup,
};
use gorbit_core::gocheck::{
    bracket_structure_check, check_go, linear_graph_fit, GoReport, GoVerdict,
    LinearGraphCertificate, MetricSpec, StructureReport,
};
use gorbit_core::natred::{certify, decompose_ideals, NatRedCertificate, NatRedRequest};
use gorbit_core::repmod::{decompose_space, DecompositionDoc};
use gorbit_core::{build_chain, HomogeneousSpace, SpaceId, Table1Row, TolerancePolicy};
use serde::Serialize;

use config::{Flags, Settings};
use errors::{Failure, Outcome};
use report::{Report, SeedField, SpaceDoc};

const DEFAULT_SAMPLES: usize = 200;

#[derive(Parser)]
#[command(
    name = "gorbit",
    version,
    about = "Geodesic-orbit and naturally reductive metric checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isotropy decomposition of m into irreducible and isotypic pieces.
    Decompose(Flags),
    /// Sampled GO check of the metric given by --alpha.
    CheckGo(Flags),
    /// Naturally reductive metric from --gamma (optionally --ideal).
    NatRed(Flags),
    /// Positive, normal and negative instances for Table 1 rows.
    Campaign(Flags),
    /// Every space id the tool can build.
    ListSpaces(Flags),
}

fn parse_space(id: &str, tol: &TolerancePolicy) -> Result<(SpaceId, HomogeneousSpace), Failure> {
    let sid: SpaceId = id.parse().map_err(Failure::from_build)?;
    let chain = build_chain(sid, tol).map_err(Failure::from_build)?;
    let space = chain.space(tol).map_err(Failure::from_build)?;
    Ok((sid, space))
}

#[derive(Serialize)]
struct BlueprintDoc {
    labels: Vec<String>,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct DecomposeBody {
    space: SpaceDoc,
    decomposition: DecompositionDoc,
    /// The table's eigenspace shapes, for Table 1 rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    blueprint: Option<BlueprintDoc>,
}

fn cmd_decompose(s: &Settings) -> Result<Outcome, Failure> {
    let seed = s.single_seed().map_err(Failure::Validation)?;
    let id = s.single_space().map_err(Failure::Validation)?;
    let (sid, space) = parse_space(id, &s.tol)?;
    let dec = decompose_space(&space, seed, &s.tol).map_err(Failure::computation)?;
    let blueprint = match sid {
        SpaceId::Table1(row) => {
            let setup = RowSetup::new(row, &s.tol).map_err(Failure::from_catalog)?;
            Some(BlueprintDoc {
                labels: setup.blueprint.labels.clone(),
                dims: setup.blueprint.dims(),
            })
        }
        _ => None,
    };
    let body = DecomposeBody {
        space: SpaceDoc::new(&sid, &space),
        decomposition: dec.to_doc(),
        blueprint,
    };
    Ok(Outcome::new(
        "gorbit.decompose/1",
        SeedField::One(seed),
        body,
        0,
    ))
}

#[derive(Serialize)]
struct MetricDoc {
    labels: Vec<String>,
    eigenspace_dims: Vec<usize>,
    alphas: Vec<f64>,
}

#[derive(Serialize)]
struct CheckGoBody {
    space: SpaceDoc,
    metric: MetricDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_go: Option<bool>,
    report: GoReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear_graph: Option<LinearGraphCertificate>,
}

/// A single α gives the normal metric. Otherwise Table 1 rows take one α
/// per eigenspace of the table's blueprint and other spaces one α per
/// isotypic component.
fn resolve_metric(
    sid: &SpaceId,
    space: &HomogeneousSpace,
    alphas: &[f64],
    seed: u64,
    tol: &TolerancePolicy,
) -> Result<(MetricSpec, Option<Table1Row>), Failure> {
    if let Some((index, value)) = alphas
        .iter()
        .enumerate()
        .find(|(_, a)| !(a.is_finite() && **a > 0.0))
    {
        return Err(Failure::Validation(anyhow::anyhow!(
            "alpha {index} is {value}; eigenvalues must be positive"
        )));
    }
    let row = match sid {
        SpaceId::Table1(r) => Some(*r),
        _ => None,
    };
    if alphas.len() == 1 {
        let a = MetricSpec::normal(space.dim_m(), alphas[0], tol).map_err(Failure::from_go)?;
        return Ok((a, row));
    }
    let a = match row {
        Some(r) => {
            let setup = RowSetup::new(r, tol).map_err(Failure::from_catalog)?;
            setup
                .blueprint
                .metric(alphas, tol)
                .map_err(Failure::from_catalog)?
        }
        None => {
            let dec = decompose_space(space, seed, tol).map_err(Failure::computation)?;
            let groups: Vec<Vec<usize>> =
                dec.components.iter().map(|c| c.members.clone()).collect();
            MetricSpec::from_groups(&dec, &groups, alphas, tol).map_err(Failure::from_go)?
        }
    };
    Ok((a, row))
}

fn cmd_check_go(s: &Settings) -> Result<Outcome, Failure> {
    let seed = s.single_seed().map_err(Failure::Validation)?;
    let id = s.single_space().map_err(Failure::Validation)?;
    let samples = s.samples.unwrap_or(DEFAULT_SAMPLES);
    let alphas = s
        .alpha
        .clone()
        .ok_or_else(|| Failure::Validation(anyhow::anyhow!("--alpha is required")))?;
    let (sid, space) = parse_space(id, &s.tol)?;
    let (a, row) = resolve_metric(&sid, &space, &alphas, seed, &s.tol)?;
    let (cond, expected) = match row {
        Some(r) if alphas.len() == gorbit_core::catalog::arity(r) => (
            Some(condition(r, &alphas, &s.tol).map_err(Failure::from_catalog)?),
            Some(expected_go(r, &alphas, &s.tol).map_err(Failure::from_catalog)?),
        ),
        _ => (None, None),
    };
    let report = check_go(&space, &a, samples, seed, &s.tol).map_err(Failure::from_go)?;
    let (structure, linear_graph) = if report.verdict == GoVerdict::GoConsistent {
        (
            Some(bracket_structure_check(&space, &a, seed, &s.tol)),
            Some(linear_graph_fit(&space, &a, seed, &s.tol)),
        )
    } else {
        (None, None)
    };
    let code = match report.verdict {
        GoVerdict::GoConsistent => 0,
        GoVerdict::NotGo => 4,
        GoVerdict::Inconclusive => 5,
    };
    let body = CheckGoBody {
        space: SpaceDoc::new(&sid, &space),
        metric: MetricDoc {
            labels: a.eigenspaces().iter().map(|e| e.label.clone()).collect(),
            eigenspace_dims: a.eigenspaces().iter().map(|e| e.dim()).collect(),
            alphas: a.alphas(),
        },
        condition: cond,
        expected_go: expected,
        report,
        structure,
        linear_graph,
    };
    Ok(Outcome::new(
        "gorbit.check-go/1",
        SeedField::One(seed),
        body,
        code,
    ))
}

#[derive(Serialize)]
struct NatRedBody {
    space: SpaceDoc,
    certificate: NatRedCertificate,
}

fn cmd_nat_red(s: &Settings) -> Result<Outcome, Failure> {
    let seed = s.single_seed().map_err(Failure::Validation)?;
    let id = s.single_space().map_err(Failure::Validation)?;
    let gammas = s
        .gamma
        .clone()
        .ok_or_else(|| Failure::Validation(anyhow::anyhow!("--gamma is required")))?;
    let (sid, space) = parse_space(id, &s.tol)?;
    let dec = decompose_ideals(&space, &s.tol).map_err(Failure::from_natred)?;
    let request = match s.ideal {
        Some(j) => NatRedRequest::CaseA { j, betas: &gammas },
        None => NatRedRequest::CaseB { gammas: &gammas },
    };
    let certificate = certify(&space, &dec, request, seed, &s.tol).map_err(Failure::from_natred)?;
    let code = if certificate.accepted { 0 } else { 4 };
    let body = NatRedBody {
        space: SpaceDoc::new(&sid, &space),
        certificate,
    };
    Ok(Outcome::new(
        "gorbit.nat-red/1",
        SeedField::One(seed),
        body,
        code,
    ))
}

#[derive(Serialize)]
struct Disagreement {
    row: String,
    seed: u64,
    instance: usize,
    blueprint: String,
}

#[derive(Serialize)]
struct CampaignBody {
    samples: usize,
    positives: usize,
    negatives: usize,
    agreement: bool,
    instances: usize,
    disagreements: Vec<Disagreement>,
    rows: Vec<RowCampaign>,
}

fn cmd_campaign(s: &Settings) -> Result<Outcome, Failure> {
    let rows: Vec<Table1Row> = if s.spaces.is_empty() {
        Table1Row::all()
    } else {
        s.spaces
            .iter()
            .map(
                |id| match id.parse::<SpaceId>().map_err(Failure::from_build)? {
                    SpaceId::Table1(r) => Ok(r),
                    other => Err(Failure::Validation(anyhow::anyhow!(
                        "{other} is not a Table 1 row"
                    ))),
                },
            )
            .collect::<Result<_, _>>()?
    };
    let seeds = if s.seeds.is_empty() {
        vec![0]
    } else {
        s.seeds.clone()
    };
    let cfg = CampaignConfig {
        samples: s.samples.unwrap_or(DEFAULT_SAMPLES),
        ..CampaignConfig::default()
    };
    if cfg.samples < 100 {
        return Err(Failure::Validation(anyhow::anyhow!(
            "at least 100 samples are required, got {}",
            cfg.samples
        )));
    }
    let mut campaigns = Vec::new();
    for row in rows {
        let setup = RowSetup::new(row, &s.tol).map_err(Failure::from_catalog)?;
        for &seed in &seeds {
            campaigns.push(verify_row(&setup, seed, &cfg, &s.tol).map_err(Failure::from_catalog)?);
        }
    }
    let disagreements: Vec<Disagreement> = campaigns
        .iter()
        .flat_map(|c| {
            c.instances
                .iter()
                .enumerate()
                .filter(|(_, i)| !i.agrees)
                .map(|(k, i)| Disagreement {
                    row: c.row.clone(),
                    seed: c.seed,
                    instance: k,
                    blueprint: i.blueprint.clone(),
                })
        })
        .collect();
    let agreement = disagreements.is_empty() && campaigns.iter().all(|c| c.agreement);
    let body = CampaignBody {
        samples: cfg.samples,
        positives: cfg.positives,
        negatives: cfg.negatives,
        agreement,
        instances: campaigns.iter().map(|c| c.instances.len()).sum(),
        disagreements,
        rows: campaigns,
    };
    let code = if agreement { 0 } else { 4 };
    Ok(Outcome::new(
        "gorbit.campaign/1",
        SeedField::Many(seeds),
        body,
        code,
    ))
}

#[derive(Serialize)]
struct ListBody {
    spaces: Vec<SpaceDoc>,
}

fn cmd_list_spaces(s: &Settings) -> Result<Outcome, Failure> {
    let mut spaces = Vec::new();
    for sid in SpaceId::catalog() {
        let chain = build_chain(sid, &s.tol).map_err(Failure::from_build)?;
        let space = chain.space(&s.tol).map_err(Failure::from_build)?;
        spaces.push(SpaceDoc::new(&sid, &space));
    }
    Ok(Outcome::new(
        "gorbit.list-spaces/1",
        SeedField::None,
        ListBody { spaces },
        0,
    ))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let start = Instant::now();
    let flags = match &cli.command {
        Command::Decompose(f)
        | Command::CheckGo(f)
        | Command::NatRed(f)
        | Command::Campaign(f)
        | Command::ListSpaces(f) => f,
    };
    let settings = Settings::resolve(flags).map_err(Failure::Validation)?;
    let outcome = match cli.command {
        Command::Decompose(_) => cmd_decompose(&settings),
        Command::CheckGo(_) => cmd_check_go(&settings),
        Command::NatRed(_) => cmd_nat_red(&settings),
        Command::Campaign(_) => cmd_campaign(&settings),
        Command::ListSpaces(_) => cmd_list_spaces(&settings),
    }?;
    let wall = settings.timing.then(|| start.elapsed().as_secs_f64());
    let report = Report::new(
        outcome.schema,
        outcome.seed,
        settings.tol,
        outcome.body,
        wall,
    );
    report::emit(&report, settings.out.as_deref()).map_err(Failure::Computation)?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error());
            ExitCode::from(f.code())
        }
    }
}
