//! Command line front end: runs verification suites, decides conjugacy of
//! parameter configurations, evaluates the abelianization map, and prints
//! catalog and class-lattice data.
//!
//! Exit codes: 0 when every executed check passes, 1 when a check fails,
//! 2 for usage and configuration errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use cremona::config::{load_config, FamilyConfig};
use cremona::conjugacy::{conjugate_fibre_sets, conjugate_pairs};
use cremona::family::Family;
use cremona::gauss::{fmt_rat, GaussRat};
use cremona::map::RationalMap;
use cremona::model::ModelId;
use cremona::picard::{self, DihedralClass};
use cremona::report::{self, SuiteReport};
use cremona::{catalog, Rat};

#[derive(Parser)]
#[command(name = "cremona", version, about = "Exact verification of the maximal algebraic subgroup families of the real plane Cremona group")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the verification suite for one family (1 through 8).
    Verify {
        /// Family index.
        #[arg(long)]
        family: u8,
        /// Parameter configuration, required for families 7 and 8.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Emit the suite as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two parameter configurations give conjugate subgroups.
    Conjugate {
        /// Family index, 7 or 8.
        #[arg(long)]
        family: u8,
        /// First configuration file.
        #[arg(long)]
        a: PathBuf,
        /// Second configuration file.
        #[arg(long)]
        b: PathBuf,
    },
    /// Image of a named element under the abelianization homomorphism.
    Abelianize {
        /// Parameter configuration for family 7 or 8.
        #[arg(long)]
        config: PathBuf,
        /// Element name: "phi" or a kernel generator listed by `catalog`.
        #[arg(long)]
        element: String,
        /// Key the image on the fibrewise coset instead of the section swap.
        #[arg(long)]
        literal_remark: bool,
    },
    /// Hexagon table, real-structure action and invariant rank of a model.
    Picard {
        /// Model id, e.g. X4 or X3F0.
        #[arg(long)]
        surface: String,
    },
    /// List the builtin models with their curves, points and generators.
    Catalog,
    /// Run every builtin suite and emit a single JSON report.
    ReportAll {
        /// Accepted for symmetry; the report is always JSON.
        #[arg(long)]
        json: bool,
        /// Swap a deliberately broken fixture into each suite.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> anyhow::Result<ExitCode> {
    match cmd {
        Cmd::Verify { family, config, json } => cmd_verify(family, config.as_deref(), json),
        Cmd::Conjugate { family, a, b } => cmd_conjugate(family, &a, &b),
        Cmd::Abelianize { config, element, literal_remark } => {
            cmd_abelianize(&config, &element, literal_remark)
        }
        Cmd::Picard { surface } => cmd_picard(&surface),
        Cmd::Catalog => cmd_catalog(),
        Cmd::ReportAll { json: _, corrupt } => cmd_report_all(corrupt),
    }
}

fn print_sorted_json<T: Serialize>(v: &T) -> anyhow::Result<()> {
    // Routing through Value sorts object keys, which keeps output diffable.
    let val = serde_json::to_value(v)?;
    println!("{}", serde_json::to_string_pretty(&val)?);
    Ok(())
}

fn read_config(path: &Path) -> anyhow::Result<FamilyConfig> {
    load_config(path).with_context(|| format!("reading config {}", path.display()))
}

fn cmd_verify(family: u8, config: Option<&Path>, json: bool) -> anyhow::Result<ExitCode> {
    let cfg = match config {
        Some(p) => {
            let cfg = read_config(p)?;
            if cfg.family != family {
                bail!("config {} is for family {}, not {family}", p.display(), cfg.family);
            }
            cfg
        }
        None => FamilyConfig::bare(family),
    };
    let suite = report::family_suite(&cfg).context("building the family")?;
    let failed = print_suite(&suite, json)?;
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn print_suite(suite: &SuiteReport, json: bool) -> anyhow::Result<bool> {
    let mut fail = 0usize;
    let mut inconclusive = 0usize;
    for c in &suite.checks {
        match c.status.as_str() {
            "fail" => fail += 1,
            "pass" => {}
            _ => inconclusive += 1,
        }
    }
    if json {
        print_sorted_json(suite)?;
    } else {
        println!("suite {}", suite.suite);
        for c in &suite.checks {
            if c.detail.is_empty() {
                println!("  {:<12} {}", c.status, c.id);
            } else {
                println!("  {:<12} {}  [{}]", c.status, c.id, c.detail);
            }
        }
        println!(
            "{} checks: {} pass, {fail} fail, {inconclusive} inconclusive",
            suite.checks.len(),
            suite.checks.len() - fail - inconclusive,
        );
    }
    Ok(fail > 0)
}

fn mixed_values(cfg: &FamilyConfig) -> Vec<GaussRat> {
    let mut vals: Vec<GaussRat> = cfg.reals.iter().cloned().map(GaussRat::from_rat).collect();
    vals.extend(cfg.pairs.iter().cloned());
    vals
}

fn cmd_conjugate(family: u8, a: &Path, b: &Path) -> anyhow::Result<ExitCode> {
    let ca = read_config(a)?;
    let cb = read_config(b)?;
    if ca.family != family || cb.family != family {
        bail!("both configs must be for family {family}");
    }
    let out = match family {
        7 => match conjugate_pairs(&ca.pairs, &cb.pairs)? {
            Some(w) => json!({
                "conjugate": true,
                "witness": {
                    "lambda": fmt_rat(&w.lambda),
                    "inverted": w.inverted,
                }
            }),
            None => json!({ "conjugate": false }),
        },
        8 => match conjugate_fibre_sets(&mixed_values(&ca), &mixed_values(&cb))? {
            Some(m) => json!({
                "conjugate": true,
                "witness": {
                    "a": fmt_rat(&m.a),
                    "b": fmt_rat(&m.b),
                    "c": fmt_rat(&m.c),
                    "d": fmt_rat(&m.d),
                    "formula": m.to_string(),
                }
            }),
            None => json!({ "conjugate": false }),
        },
        _ => bail!("conjugacy of parameter configurations is decided for families 7 and 8"),
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_abelianize(config: &Path, element: &str, literal: bool) -> anyhow::Result<ExitCode> {
    let cfg = read_config(config)?;
    let fam = Family::build(&cfg).context("building the family")?;
    let elt: RationalMap = if element == "phi" {
        match &fam {
            Family::Pairs(p) => p.phi().clone(),
            Family::Fibres(f) => f.phi().clone(),
            _ => bail!("the abelianization map is defined for families 7 and 8"),
        }
    } else {
        fam.kernel_generators()?
            .into_iter()
            .find(|g| g.name == element)
            .map(|g| g.map)
            .with_context(|| format!("unknown element {element:?}; use \"phi\" or a kernel generator name"))?
    };
    let image = match &fam {
        Family::Pairs(p) => p.abelian_support(&elt, literal)?,
        Family::Fibres(f) => f.abelian_support(&elt, literal)?,
        _ => bail!("the abelianization map is defined for families 7 and 8"),
    };
    let mut support: Vec<String> = image.0.iter().map(fmt_rat).collect();
    support.sort();
    println!("{}", serde_json::to_string_pretty(&json!({ "support": support }))?);
    Ok(ExitCode::SUCCESS)
}

fn class_label(c: &DihedralClass) -> String {
    match c {
        DihedralClass::Rotation { order } => format!("rotation of order {order}"),
        DihedralClass::ReflectionVertices { fixed } => {
            format!("reflection fixing {} and {}", fixed[0], fixed[1])
        }
        DihedralClass::ReflectionEdges => "reflection exchanging opposite edges".into(),
    }
}

fn matrix_strings(m: &[Vec<Rat>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(fmt_rat).collect()).collect()
}

fn cmd_picard(surface: &str) -> anyhow::Result<ExitCode> {
    let id: ModelId = surface.parse().map_err(|e: cremona::Error| anyhow::anyhow!(e))?;
    let m = catalog::model(id)?;
    let cycle = picard::hexagon_cycle(&m)
        .with_context(|| format!("{id} carries no hexagon of named curves"))?;
    let sigma = picard::sigma_action(&m)?;
    let mut gens = serde_json::Map::new();
    for (name, g) in &m.generators {
        let act = picard::automorphism_action(&m, g)?;
        gens.insert(
            name.clone(),
            json!({
                "permutation": act.perm,
                "class": class_label(&picard::classify_dihedral(&act)?),
            }),
        );
    }
    let out = json!({
        "model": id.to_string(),
        "hexagon": cycle,
        "sigma": {
            "permutation": sigma.perm,
            "matrix": matrix_strings(&sigma.matrix),
            "invariant_rank": sigma.invariant_rank(),
            "class": class_label(&picard::classify_dihedral(&sigma)?),
        },
        "generators": gens,
    });
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog() -> anyhow::Result<ExitCode> {
    for id in ModelId::catalog() {
        let m = catalog::model(id)?;
        println!("{id}");
        if !m.curves.is_empty() {
            let names: Vec<&str> = m.curves.iter().map(|c| c.name.as_str()).collect();
            println!("  curves: {}", names.join(", "));
        }
        if !m.aliases.is_empty() {
            let names: Vec<String> =
                m.aliases.iter().map(|(a, b)| format!("{a} -> {b}")).collect();
            println!("  aliases: {}", names.join(", "));
        }
        if !m.points.is_empty() {
            let names: Vec<&str> = m.points.iter().map(|(n, _)| n.as_str()).collect();
            println!("  points: {}", names.join(", "));
        }
        if !m.generators.is_empty() {
            let names: Vec<&str> = m.generators.iter().map(|(n, _)| n.as_str()).collect();
            println!("  generators: {}", names.join(", "));
        }
    }
    println!();
    println!("families:");
    for k in 1..=8u8 {
        let cfg = sample_config(k);
        let fam = Family::build(&cfg)?;
        let kernels: Vec<&str> = fam.kernel_generators()?.iter().map(|g| g.name).collect();
        println!(
            "  {k}: model {}, identity component {}, component group {}, kernel generators: {}",
            fam.model_id(),
            fam.identity_component(),
            fam.component_group(),
            if kernels.is_empty() { "none".to_string() } else { kernels.join(", ") },
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn sample_config(family: u8) -> FamilyConfig {
    let mut cfg = FamilyConfig::bare(family);
    match family {
        7 => cfg.pairs = vec![GaussRat::from_parts(1, 1)],
        8 => {
            cfg.reals = vec![Rat::from_integer(0.into()), Rat::from_integer(1.into())];
            cfg.pairs = vec![GaussRat::from_parts(2, 1)];
        }
        _ => {}
    }
    cfg
}

fn cmd_report_all(corrupt: bool) -> anyhow::Result<ExitCode> {
    let full = report::run_all(corrupt)?;
    let val = serde_json::to_value(&full)?;
    println!("{}", serde_json::to_string_pretty(&val)?);
    Ok(if full.summary.fail > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
}
