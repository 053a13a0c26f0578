//! `maxmin`: calibration, recovery, evaluation and axiom checks from JSON
//! files.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when the input
//! turns out to be mathematically inconsistent. In the last case a JSON
//! witness goes to stderr.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use maxmin_core::axioms::{
    check_all, check_weak_order, AxiomReport, CheckConfig, OracleFile, PreferenceDataset, PreferenceOracle,
};
use maxmin_core::credal::{
    default_directions, probability_check, variant_dualize, vertex_count, CredalSet, Variant,
};
use maxmin_core::ellsberg::ellsberg_table;
use maxmin_core::functional::{
    certainty_equivalent, check_linearity, check_midpoint, check_monotonicity, check_normalization,
    check_positive_homogeneity, check_translation, eval_from_credal, homogeneity_samples, linearity_samples,
    pair_samples, translation_samples, FunctionalKind, FunctionalSpec, Mode, Shape, UtilityAct,
};
use maxmin_core::sampling::{random_vector, seeded};
use maxmin_core::utility::{calibrate_from_dataset, calibrate_utility, utility_act};
use maxmin_core::{Error, Tolerances};

#[derive(Parser)]
#[command(name = "maxmin", version, about = "Maxmin expected utility toolkit")]
struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance override, e.g. `--tol bisection=1e-10`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    tol: Vec<String>,
    /// Worker threads for trial and direction maps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recover a vNM utility from an oracle or a comparison dataset.
    Calibrate {
        #[arg(long, required_unless_present = "dataset", conflicts_with = "dataset")]
        oracle: Option<PathBuf>,
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Certainty equivalent of an act under an oracle, by bisection.
    CertaintyEquivalent {
        #[arg(long)]
        oracle: PathBuf,
        /// Utility vector `[..]` or act `{state: {prize: prob}}`.
        #[arg(long)]
        act: PathBuf,
    },
    /// Homogeneity, translation, midpoint shape, monotonicity and
    /// normalization of a functional on random samples.
    CheckFunctional {
        #[arg(long)]
        functional: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Recover the credal set of a functional.
    RecoverSet {
        #[arg(long)]
        functional: PathBuf,
        /// `auto` or a JSON file with a list of direction vectors.
        #[arg(long, default_value = "auto")]
        directions: String,
        /// A5, A5p or A5pp; defaults to the functional's expected shape.
        #[arg(long)]
        variant: Option<Variant>,
        /// Random utility acts used to measure the round-trip residual.
        #[arg(long, default_value_t = 1000)]
        validation: usize,
    },
    /// Minimum or maximum expected utility of a utility act over a set.
    Evaluate {
        #[arg(long)]
        set: PathBuf,
        /// Utility vector `[..]`.
        #[arg(long)]
        act: PathBuf,
        #[arg(long, default_value = "min", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Run the axiom checkers against an oracle, or the weak-order check
    /// against a dataset.
    CheckAxioms {
        #[arg(long, required_unless_present = "dataset", conflicts_with = "dataset")]
        oracle: Option<PathBuf>,
        #[arg(long)]
        dataset: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value = "A5")]
        variant: Variant,
    },
    /// The two-color ambiguous urn under maxmin, maxmax and expected utility.
    EllsbergDemo,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "min" => Ok(Mode::Min),
        "max" => Ok(Mode::Max),
        _ => Err(format!("expected `min` or `max`, got `{s}`")),
    }
}

/// What a command produced: a JSON report, a table for stdout, and, when
/// the input is inconsistent, the witness for stderr.
struct Outcome {
    report: Value,
    table: String,
    inconsistency: Option<Value>,
}

impl Outcome {
    fn ok(report: Value, table: String) -> Self {
        Self { report, table, inconsistency: None }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_as<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_value(read_json(path)?).with_context(|| format!("decoding {}", path.display()))
}

fn tolerances(overrides: &[String]) -> anyhow::Result<Tolerances> {
    let mut value = serde_json::to_value(Tolerances::default())?;
    for item in overrides {
        let (key, raw) = item.split_once('=').with_context(|| format!("`--tol {item}` is not KEY=VALUE"))?;
        let parsed: Value = serde_json::from_str(raw).with_context(|| format!("`{raw}` is not a number"))?;
        value[key.trim()] = parsed;
    }
    serde_json::from_value(value).context("invalid tolerance override")
}

fn row(table: &mut String, key: &str, value: impl std::fmt::Display) {
    let _ = writeln!(table, "{key:<28} {value}");
}

fn calibrate(oracle: Option<PathBuf>, dataset: Option<PathBuf>, tol: &Tolerances) -> anyhow::Result<Outcome> {
    let (universe, u) = match (oracle, dataset) {
        (Some(path), _) => {
            let file: OracleFile = read_as(&path)?;
            let o = file.build()?;
            let u = calibrate_utility(&o, &file.universe, tol)?;
            (file.universe, u)
        }
        (None, Some(path)) => {
            let data = PreferenceDataset::from_json(&read_json(&path)?)?;
            let u = calibrate_from_dataset(&data)?;
            (data.universe().clone(), u)
        }
        (None, None) => bail!("one of --oracle or --dataset is required"),
    };
    let map = u.to_map(&universe);
    let mut table = String::new();
    for (prize, v) in &map {
        row(&mut table, prize, format!("{v:.12}"));
    }
    Ok(Outcome::ok(json!({ "utility": map }), table))
}

fn read_utility_act(path: &Path, file: &OracleFile, oracle: &maxmin_core::axioms::RepresentedOracle) -> anyhow::Result<UtilityAct> {
    let value = read_json(path)?;
    if value.is_array() {
        return Ok(serde_json::from_value(value)?);
    }
    let act = file.universe.act_from_json(&value)?;
    Ok(utility_act(oracle.utility(), &act))
}

fn cmd_certainty_equivalent(oracle: PathBuf, act: PathBuf, tol: &Tolerances) -> anyhow::Result<Outcome> {
    let file: OracleFile = read_as(&oracle)?;
    let o = file.build()?;
    let b = read_utility_act(&act, &file, &o)?;
    if b.len() != file.universe.num_states() {
        bail!("act has {} states, universe has {}", b.len(), file.universe.num_states());
    }
    let u = o.utility();
    if b.lo() < u.k_lo() || b.hi() > u.k_hi() {
        return Err(Error::OutOfDomain { lo: u.k_lo(), hi: u.k_hi() }.into());
    }
    let ce = certainty_equivalent(&o, u, &b, tol)?;
    let represented = u
        .act_with_utilities(b.values())
        .ok()
        .and_then(|f| o.value(&f));
    let mut table = String::new();
    row(&mut table, "utility act", format!("{:?}", b.values()));
    row(&mut table, "certainty equivalent", format!("{:.12}", ce.value));
    row(&mut table, "lambda", format!("{:.12}", ce.lambda));
    row(&mut table, "bisection steps", ce.steps);
    if let Some(v) = represented {
        row(&mut table, "represented value", format!("{v:.12}"));
    }
    Ok(Outcome::ok(
        json!({ "act": b, "certainty_equivalent": ce, "represented_value": represented }),
        table,
    ))
}

fn cmd_check_functional(path: PathBuf, samples: usize, seed: u64, tol: Tolerances) -> anyhow::Result<Outcome> {
    let spec: FunctionalSpec = read_as(&path)?;
    let i = spec.build(tol)?;
    let n = spec.num_states();
    let domain = i.domain();
    let shape = i.expected_shape();
    let mut rng = seeded(seed);
    let mut reports = vec![
        check_positive_homogeneity(&i, &homogeneity_samples(&mut rng, n, domain, samples))?,
        check_translation(&i, &translation_samples(&mut rng, n, domain, samples))?,
        check_midpoint(&i, &pair_samples(&mut rng, n, domain, samples), shape)?,
        check_monotonicity(&i, &pair_samples(&mut rng, n, domain, samples))?,
        check_normalization(&i, n)?,
    ];
    if shape == Shape::Linear {
        reports.push(check_linearity(&i, &linearity_samples(&mut rng, n, domain, samples))?);
    }
    let mut table = String::new();
    for r in &reports {
        row(
            &mut table,
            &r.property,
            format!("{}  max violation {:.3e} over {}", if r.passed { "PASS" } else { "FAIL" }, r.max_violation, r.samples),
        );
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let inconsistency = (!failed.is_empty()).then(|| json!({ "failed": failed }));
    Ok(Outcome {
        report: json!({ "kind": i.kind_name(), "shape": shape, "reports": reports }),
        table,
        inconsistency,
    })
}

fn cmd_recover(
    path: PathBuf,
    directions: String,
    variant: Option<Variant>,
    validation: usize,
    seed: u64,
    tol: Tolerances,
) -> anyhow::Result<Outcome> {
    let spec: FunctionalSpec = read_as(&path)?;
    let i = spec.build(tol)?;
    let n = spec.num_states();
    let mut rng = seeded(seed);
    let mut dirs = if directions == "auto" {
        default_directions(n, &mut rng)
    } else {
        read_as::<Vec<UtilityAct>>(Path::new(&directions))?
    };
    if let FunctionalKind::CredalMin(set) | FunctionalKind::CredalMax(set) = i.kind() {
        for h in set.hrep() {
            let d = UtilityAct::new(h.normal.clone())?;
            dirs.push(d.scale(-1.0));
            dirs.push(d);
        }
    }
    let variant = variant.unwrap_or(match i.expected_shape() {
        Shape::Superlinear => Variant::A5,
        Shape::Sublinear => Variant::A5Prime,
        Shape::Linear => Variant::A5DoublePrime,
    });
    let (set, mode) = variant_dualize(&i, variant, &dirs, &mut rng, 1000)?;
    let probe: Vec<UtilityAct> = (0..validation)
        .map(|_| UtilityAct::new(random_vector(&mut rng, n, -1.0, 1.0)))
        .collect::<Result<_, _>>()?;
    let mut residual: f64 = 0.0;
    for b in &probe {
        residual = residual.max((eval_from_credal(&set, b, mode)? - i.eval(b)?).abs());
    }
    let check = probability_check(&set, (mode == Mode::Min).then_some(&i))?;
    let mut table = String::new();
    row(&mut table, "functional", i.kind_name());
    row(&mut table, "variant", format!("{variant:?}"));
    row(&mut table, "mode", format!("{mode:?}").to_lowercase());
    row(&mut table, "directions", dirs.len());
    row(&mut table, "irredundant half-spaces", set.core().len());
    if let Some(k) = vertex_count(&set) {
        row(&mut table, "vertices", k);
    }
    row(&mut table, "probability check", if check.passed { "PASS" } else { "FAIL" });
    row(&mut table, "round-trip residual", format!("{residual:.3e}"));
    let inconsistency = (!check.passed).then(|| json!({ "probability_check": check }));
    Ok(Outcome {
        report: json!({
            "variant": variant,
            "mode": mode,
            "set": set,
            "probability_check": check,
            "residual": residual,
            "validation_directions": validation,
        }),
        table,
        inconsistency,
    })
}

fn cmd_evaluate(set: PathBuf, act: PathBuf, mode: Mode) -> anyhow::Result<Outcome> {
    let set: CredalSet = read_as(&set)?;
    let b: UtilityAct = read_as(&act)?;
    let (value, prior) = set.optimize(b.values(), mode)?;
    let mut table = String::new();
    row(&mut table, "value", format!("{value:.12}"));
    row(&mut table, "attained at", format!("{prior:?}"));
    Ok(Outcome::ok(json!({ "mode": mode, "value": value, "prior": prior }), table))
}

fn summary_line(r: &AxiomReport) -> String {
    let mut s = format!(
        "{}  tested {}  violations {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.tested,
        r.violation_count
    );
    if r.boundary_count > 0 {
        let _ = write!(s, "  boundary {}", r.boundary_count);
    }
    if r.inconclusive_count > 0 {
        let _ = write!(s, "  inconclusive {}", r.inconclusive_count);
    }
    if r.unknown > 0 {
        let _ = write!(s, "  unknown {}", r.unknown);
    }
    if let Some(c) = r.completeness {
        let _ = write!(s, "  completeness {c:.3}");
    }
    s
}

fn cmd_check_axioms(
    oracle: Option<PathBuf>,
    dataset: Option<PathBuf>,
    trials: usize,
    variant: Variant,
    seed: u64,
    tol: Tolerances,
) -> anyhow::Result<Outcome> {
    let (describe, reports) = match (oracle, dataset) {
        (Some(path), _) => {
            let file: OracleFile = read_as(&path)?;
            let o = Arc::new(file.build()?);
            let mut cfg = CheckConfig::new(trials, seed);
            cfg.tol = tol;
            (o.describe(), check_all(o.as_ref(), &file.universe, &cfg, variant)?)
        }
        (None, Some(path)) => {
            let data = PreferenceDataset::from_json(&read_json(&path)?)?;
            (data.oracle().describe(), vec![check_weak_order(&data)])
        }
        (None, None) => bail!("one of --oracle or --dataset is required"),
    };
    let mut table = String::new();
    row(&mut table, "oracle", &describe);
    for r in &reports {
        row(&mut table, &r.axiom, summary_line(r));
    }
    let failed: Vec<_> = reports.iter().filter(|r| !r.passed).collect();
    let inconsistency = (!failed.is_empty()).then(|| {
        json!(failed
            .iter()
            .map(|r| json!({
                "axiom": r.axiom,
                "violations": r.violations,
                "inconclusive": r.inconclusive,
            }))
            .collect::<Vec<_>>())
    });
    Ok(Outcome { report: json!({ "oracle": describe, "reports": reports }), table, inconsistency })
}

fn cmd_ellsberg() -> anyhow::Result<Outcome> {
    let t = ellsberg_table()?;
    let mut table = format!("{:<10} {:>10} {:>10} {:>10}\n", "model", "bet red", "bet black", "hedge");
    for r in &t.rows {
        let _ = writeln!(table, "{:<10} {:>10.6} {:>10.6} {:>10.6}", r.model, r.bet_red, r.bet_black, r.hedge);
    }
    Ok(Outcome::ok(serde_json::to_value(&t)?, table))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
        .context("starting worker pool")?;
    let tol = tolerances(&cli.tol)?;
    match cli.command {
        Command::Calibrate { oracle, dataset } => calibrate(oracle, dataset, &tol),
        Command::CertaintyEquivalent { oracle, act } => cmd_certainty_equivalent(oracle, act, &tol),
        Command::CheckFunctional { functional, samples } => cmd_check_functional(functional, samples, cli.seed, tol),
        Command::RecoverSet { functional, directions, variant, validation } => {
            cmd_recover(functional, directions, variant, validation, cli.seed, tol)
        }
        Command::Evaluate { set, act, mode } => cmd_evaluate(set, act, mode),
        Command::CheckAxioms { oracle, dataset, trials, variant } => {
            cmd_check_axioms(oracle, dataset, trials, variant, cli.seed, tol)
        }
        Command::EllsbergDemo => cmd_ellsberg(),
    }
}

fn inconsistency_witness(e: &Error) -> Value {
    match e {
        Error::NotARepresentation { constraints } => json!({ "error": e.to_string(), "constraints": constraints }),
        Error::ShapeMismatch { expected, witness } => json!({ "error": e.to_string(), "expected": expected, "witness": witness }),
        _ => json!({ "error": e.to_string() }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.table);
            if let Some(path) = output {
                let text = serde_json::to_string_pretty(&outcome.report).expect("serializable") + "\n";
                if let Err(e) = fs::write(&path, text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            match outcome.inconsistency {
                Some(w) => {
                    eprintln!("{}", serde_json::to_string(&w).expect("serializable"));
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => match e.downcast_ref::<Error>() {
            Some(core) if core.is_inconsistency() => {
                eprintln!("{}", serde_json::to_string(&inconsistency_witness(core)).expect("serializable"));
                ExitCode::from(2)
            }
            _ => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
