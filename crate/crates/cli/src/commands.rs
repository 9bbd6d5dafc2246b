//! The four subcommands. All files are written from the calling thread.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use segdp::grid::{consensus_of_restarts, run_restarts};
use segdp::io::{
    format_float, read_assignment, read_series, write_assignment, write_grid, write_series,
};
use segdp::simulator::generate_dataset;
use segdp::{
    ari, confusion_matrix, grid_search, select_region, Assignment, Constraints, ModelAdapter,
    RunResult, SelectionMode, SelectionPolicy, SeriesMatrix,
};

use crate::config::{read_text, sha256_hex, RunConfig, SimulateSpec};
use crate::error::{CliError, CliResult};
use crate::svg::grid_plot;

#[derive(Debug, Serialize)]
struct Manifest<'a, T: Serialize> {
    command: &'a str,
    version: &'a str,
    config_path: String,
    config_sha256: String,
    inputs: Vec<String>,
    outputs: Vec<&'a str>,
    created_unix: u64,
    details: T,
}

fn create(out: &Path, name: &str) -> CliResult<BufWriter<File>> {
    let path = out.join(name);
    File::create(&path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(out: &Path, name: &str, value: &T) -> CliResult<()> {
    let mut w = create(out, name)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()?;
    Ok(())
}

fn write_manifest<T: Serialize>(
    out: &Path,
    command: &str,
    config_path: &Path,
    config_text: &str,
    inputs: &[&Path],
    outputs: Vec<&str>,
    details: T,
) -> CliResult<()> {
    let manifest = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        config_path: config_path.display().to_string(),
        config_sha256: sha256_hex(config_text.as_bytes()),
        inputs: inputs.iter().map(|p| p.display().to_string()).collect(),
        outputs,
        created_unix: SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs()),
        details,
    };
    write_json(out, "manifest.json", &manifest)
}

fn prepare_out(out: &Path) -> CliResult<()> {
    std::fs::create_dir_all(out).map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))
}

fn open(path: &Path) -> CliResult<File> {
    File::open(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn load_series(path: &Path) -> CliResult<SeriesMatrix> {
    read_series(open(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn load_assignment(path: &Path) -> CliResult<Assignment> {
    read_assignment(open(path)?).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// Writes `series.csv`, `truth.csv` and `manifest.json`.
pub fn simulate(spec_path: &Path, out: &Path) -> CliResult<()> {
    let text = read_text(spec_path)?;
    let spec = SimulateSpec::parse(&text)?.resolve()?;
    let data = generate_dataset(&spec)?;
    prepare_out(out)?;
    let mut w = create(out, "series.csv")?;
    write_series(&mut w, &data.series)?;
    w.flush()?;
    let mut w = create(out, "truth.csv")?;
    write_assignment(&mut w, &data.truth)?;
    w.flush()?;
    write_manifest(
        out,
        "simulate",
        spec_path,
        &text,
        &[],
        vec!["series.csv", "truth.csv"],
        &data.manifest,
    )?;
    log::info!(
        "simulated {} rows of {:?} into {}",
        data.series.len(),
        spec.name,
        out.display()
    );
    Ok(())
}

fn checked_constraints(cfg: &RunConfig, series: &SeriesMatrix) -> CliResult<Constraints> {
    let constraints = cfg.constraints()?;
    constraints.check_feasible(series.len())?;
    Ok(constraints)
}

#[derive(Debug, Serialize)]
struct FitDetails<'a> {
    config: &'a RunConfig,
    consensus_seed: u64,
    cost: f64,
    n_effective: usize,
    c_effective: usize,
    failed_restarts: usize,
}

/// Runs `n_init` restarts at the configured `(N, C)` and keeps their consensus.
pub fn fit(config_path: &Path, series_path: &Path, out: &Path) -> CliResult<()> {
    let text = read_text(config_path)?;
    let cfg = RunConfig::parse(&text)?;
    let series = load_series(series_path)?;
    let adapter = cfg.adapter(&series)?;
    let constraints = checked_constraints(&cfg, &series)?;
    let runs = run_restarts(
        &series,
        adapter.as_ref(),
        &constraints,
        cfg.n_init,
        cfg.max_outer_iters,
        cfg.seed,
    );

    prepare_out(out)?;
    let mut w = csv::Writer::from_writer(create(out, "restarts.csv")?);
    w.write_record([
        "restart",
        "seed",
        "cost",
        "iterations",
        "converged",
        "n_effective",
        "c_effective",
        "error",
    ])
    .map_err(csv_err)?;
    let mut failed = 0;
    for (r, run) in runs.iter().enumerate() {
        let record = match run {
            Ok(res) => vec![
                r.to_string(),
                res.seed.to_string(),
                format_float(res.cost),
                res.iterations.to_string(),
                res.converged.to_string(),
                res.assignment.n_transitions().to_string(),
                res.assignment.n_distinct().to_string(),
                String::new(),
            ],
            Err(e) => {
                failed += 1;
                let mut rec = vec![r.to_string()];
                rec.extend(std::iter::repeat_n(String::new(), 6));
                rec.push(e.to_string());
                rec
            }
        };
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush()?;

    let best = consensus_of_restarts(runs)?;
    best.assignment.check(&constraints)?;
    let mut w = create(out, "assignment.csv")?;
    write_assignment(&mut w, &best.assignment)?;
    w.flush()?;
    write_json(out, "weights.json", &best.weights)?;
    let details = FitDetails {
        config: &cfg,
        consensus_seed: best.seed,
        cost: best.cost,
        n_effective: best.assignment.n_transitions(),
        c_effective: best.assignment.n_distinct(),
        failed_restarts: failed,
    };
    write_manifest(
        out,
        "fit",
        config_path,
        &text,
        &[series_path],
        vec!["restarts.csv", "assignment.csv", "weights.json"],
        details,
    )?;
    log::info!(
        "fit: consensus cost {:.6e} from restart seed {}",
        best.cost,
        best.seed
    );
    Ok(())
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Runtime(format!("csv error: {e}"))
}

/// One retained answer as recorded in `selection.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChosenPoint {
    pub index: usize,
    pub n_grid: usize,
    pub c_grid: usize,
    pub cost: f64,
    pub file: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionFile {
    pub mode: SelectionMode,
    pub most_common: Option<ChosenPoint>,
    pub lowest_cost: ChosenPoint,
    pub region: Option<(f64, f64)>,
    pub region_members: Vec<usize>,
    pub policy: SelectionPolicy,
    pub min_block: usize,
    pub epsilon: f64,
}

/// Objective of the truth labels with weights characterized on them.
fn true_cost(
    adapter: &dyn ModelAdapter,
    series: &SeriesMatrix,
    truth: &Assignment,
    min_block: usize,
) -> Option<f64> {
    let n_clusters = truth.labels().iter().max().map_or(1, |m| m + 1);
    let cost = adapter
        .characterize(series, truth, n_clusters, min_block)
        .and_then(|w| adapter.objective(series, truth, &w));
    match cost {
        Ok(c) => Some(c),
        Err(e) => {
            log::warn!("cost of the truth labels is unavailable: {e}");
            None
        }
    }
}

fn write_confusion(out: &Path, name: &str, pred: &Assignment, truth: &Assignment) -> CliResult<()> {
    let counts = confusion_matrix(pred, truth)?;
    let n_truth = truth.labels().iter().max().map_or(0, |m| m + 1);
    let mut w = csv::Writer::from_writer(create(out, name)?);
    let mut header = vec!["pred\\truth".to_string()];
    header.extend((0..n_truth).map(|j| j.to_string()));
    w.write_record(&header).map_err(csv_err)?;
    for (i, row) in counts.iter().enumerate() {
        let mut record = vec![i.to_string()];
        record.extend(row.iter().map(|c| c.to_string()));
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

pub const SUMMARY_HEADER: [&str; 7] = [
    "dataset",
    "mode",
    "n_grid",
    "c_grid",
    "cost_pred",
    "cost_true",
    "ari",
];

/// Grid search, region selection and reports.
pub fn grid(
    config_path: &Path,
    series_path: &Path,
    truth_path: Option<&Path>,
    out: &Path,
) -> CliResult<()> {
    let text = read_text(config_path)?;
    let cfg = RunConfig::parse(&text)?;
    let series = load_series(series_path)?;
    let truth = truth_path.map(load_assignment).transpose()?;
    if let Some(t) = &truth {
        if t.len() != series.len() {
            return Err(CliError::Config(format!(
                "truth has {} rows, series has {}",
                t.len(),
                series.len()
            )));
        }
    }
    let adapter = cfg.adapter(&series)?;
    checked_constraints(&cfg, &series)?;
    let grid_cfg = cfg.grid_config();
    log::info!(
        "grid: n in 0..={}, c in 1..={}, {} restarts per point",
        grid_cfg.n_max_grid,
        grid_cfg.c_max_grid,
        grid_cfg.n_init
    );
    let points = grid_search(&series, adapter.as_ref(), &grid_cfg);
    for p in points.iter().filter(|p| p.result.is_none()) {
        log::warn!(
            "grid point (n={}, c={}) failed: {}",
            p.n_grid,
            p.c_grid,
            p.failure.as_deref().unwrap_or("?")
        );
    }
    let report = select_region(&points, &cfg.selection)?;

    prepare_out(out)?;
    let mut w = create(out, "grid.csv")?;
    write_grid(&mut w, &points)?;
    w.flush()?;

    let chosen = |index: usize, file: &str| -> CliResult<(ChosenPoint, &RunResult)> {
        let p = &points[index];
        let r = p.result.as_ref().expect("selected points have results");
        let constraints =
            Constraints::new(p.c_grid, p.n_grid, grid_cfg.min_block, grid_cfg.epsilon)?;
        r.assignment.check(&constraints)?;
        let point = ChosenPoint {
            index,
            n_grid: p.n_grid,
            c_grid: p.c_grid,
            cost: r.cost,
            file: file.into(),
        };
        Ok((point, r))
    };
    let lowest = chosen(report.lowest_cost, "lowest_cost.csv")?;
    let most_common = report
        .most_common
        .map(|i| chosen(i, "most_common.csv"))
        .transpose()?;
    let mut outputs = vec![
        "grid.csv",
        "selection.json",
        "lowest_cost.csv",
        "grid.svg",
        "summary.csv",
    ];
    for (point, result) in most_common.iter().chain(std::iter::once(&lowest)) {
        let mut w = create(out, &point.file)?;
        write_assignment(&mut w, &result.assignment)?;
        w.flush()?;
    }
    if most_common.is_some() {
        outputs.push("most_common.csv");
    }

    let selection = SelectionFile {
        mode: report.mode,
        most_common: most_common.as_ref().map(|m| m.0.clone()),
        lowest_cost: lowest.0.clone(),
        region: report.region,
        region_members: report.region_members.clone(),
        policy: report.policy,
        min_block: grid_cfg.min_block,
        epsilon: grid_cfg.epsilon,
    };
    write_json(out, "selection.json", &selection)?;
    std::fs::write(out.join("grid.svg"), grid_plot(&points, &report))?;

    let name = cfg.name.clone().unwrap_or_else(|| {
        series_path
            .file_stem()
            .map_or_else(|| "series".into(), |s| s.to_string_lossy().into_owned())
    });
    let cost_true = truth
        .as_ref()
        .and_then(|t| true_cost(adapter.as_ref(), &series, t, grid_cfg.min_block));
    let na = || "n/a".to_string();
    let mut w = csv::Writer::from_writer(create(out, "summary.csv")?);
    w.write_record(SUMMARY_HEADER).map_err(csv_err)?;
    for (mode, entry) in [
        ("MostCommon", most_common.as_ref()),
        ("LowestCost", Some(&lowest)),
    ] {
        let record = match entry {
            Some((point, result)) => {
                let ari_value = match &truth {
                    Some(t) => format_float(ari(&result.assignment, t)?),
                    None => na(),
                };
                vec![
                    name.clone(),
                    mode.to_string(),
                    point.n_grid.to_string(),
                    point.c_grid.to_string(),
                    format_float(point.cost),
                    cost_true.map_or_else(na, format_float),
                    ari_value,
                ]
            }
            None => {
                let mut r = vec![name.clone(), mode.to_string()];
                r.extend(std::iter::repeat_n(na(), 5));
                r
            }
        };
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush()?;

    if let Some(t) = &truth {
        write_confusion(out, "confusion_lowest_cost.csv", &lowest.1.assignment, t)?;
        outputs.push("confusion_lowest_cost.csv");
        if let Some((_, r)) = &most_common {
            write_confusion(out, "confusion_most_common.csv", &r.assignment, t)?;
            outputs.push("confusion_most_common.csv");
        }
    }

    let mut inputs = vec![series_path];
    inputs.extend(truth_path);
    #[derive(Serialize)]
    struct GridDetails<'a> {
        config: &'a RunConfig,
        n_max_grid: usize,
        c_max_grid: usize,
        failed_points: usize,
    }
    let details = GridDetails {
        config: &cfg,
        n_max_grid: grid_cfg.n_max_grid,
        c_max_grid: grid_cfg.c_max_grid,
        failed_points: points.iter().filter(|p| p.result.is_none()).count(),
    };
    write_manifest(out, "grid", config_path, &text, &inputs, outputs, details)?;
    log::info!(
        "grid: mode {:?}, chosen point {}",
        report.mode,
        report.chosen
    );
    Ok(())
}

/// Re-reads a grid run directory, re-validates its assignments and returns
/// the summary rows (header first).
pub fn report_rows(run: &Path) -> CliResult<Vec<Vec<String>>> {
    let selection_path = run.join("selection.json");
    let selection: SelectionFile = serde_json::from_reader(open(&selection_path)?)
        .map_err(|e| CliError::Config(format!("{}: {e}", selection_path.display())))?;
    for point in selection
        .most_common
        .iter()
        .chain(std::iter::once(&selection.lowest_cost))
    {
        let a = load_assignment(&run.join(&point.file))?;
        let constraints = Constraints::new(
            point.c_grid,
            point.n_grid,
            selection.min_block,
            selection.epsilon,
        )?;
        a.check(&constraints)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", point.file)))?;
    }
    let summary_path = run.join("summary.csv");
    let mut rdr = csv::Reader::from_reader(open(&summary_path)?);
    let mut rows = vec![rdr
        .headers()
        .map_err(csv_err)?
        .iter()
        .map(String::from)
        .collect::<Vec<_>>()];
    for record in rdr.records() {
        rows.push(record.map_err(csv_err)?.iter().map(String::from).collect());
    }
    Ok(rows)
}

/// Prints the summary as an aligned table.
pub fn report(run: &Path) -> CliResult<()> {
    let rows = report_rows(run)?;
    let keep = [0usize, 1, 4, 5, 6];
    let widths: Vec<usize> = keep
        .iter()
        .map(|&k| rows.iter().map(|r| r[k].len()).max().unwrap_or(0))
        .collect();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for row in &rows {
        let line: Vec<String> = keep
            .iter()
            .zip(&widths)
            .map(|(&k, &w)| format!("{:<w$}", row[k]))
            .collect();
        writeln!(out, "{}", line.join("  ").trim_end())?;
    }
    Ok(())
}
