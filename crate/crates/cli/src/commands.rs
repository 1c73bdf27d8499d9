use std::fs;
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use firsweep_core::dataset::{
    generate_synthetic, load_csv, load_prediction_input, save_csv, split,
};
use firsweep_core::models::{LinearConfig, DEFAULT_SIGMA_GRID};
use firsweep_core::sweep::{emit_scatter, format_hms, format_rms, render_table};
use firsweep_core::training::{evaluate, rmse, train_grnn, train_linear, train_mlfn};
use firsweep_core::{
    run_sweep, CancelToken, Model, StopReason, SweepConfig, TableFormat, Target, TrainConfig,
};

use crate::{FormatArg, GenArgs, ModelArg, PredictArgs, SweepArgs, TrainArgs};

const INTERRUPTED: u8 = 130;

/// A token that Ctrl-C (SIGINT) cancels.
fn interrupt_token() -> Result<CancelToken> {
    let token = CancelToken::new();
    let hook = token.clone();
    ctrlc::set_handler(move || hook.cancel()).context("installing the interrupt handler")?;
    Ok(token)
}

/// Refuses to write `out` when it names the same file as `input`.
fn guard_input(input: &Path, out: &Path) -> Result<()> {
    if let (Ok(a), Ok(b)) = (fs::canonicalize(input), fs::canonicalize(out)) {
        if a == b {
            bail!("output {} would overwrite input", out.display());
        }
    }
    Ok(())
}

fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn gen(a: GenArgs) -> Result<ExitCode> {
    let d = generate_synthetic(a.n as usize, a.noise, a.seed);
    save_csv(&d, &a.out)?;
    eprintln!("wrote {} stands to {}", d.len(), a.out.display());
    Ok(ExitCode::SUCCESS)
}

pub fn train(a: TrainArgs) -> Result<ExitCode> {
    let cancel = interrupt_token()?;
    let target: Target = a.target.into();
    if let Some(path) = &a.model_out {
        guard_input(&a.data, path)?;
    }
    let data = load_csv(&a.data)?;
    let (train, test) = split(&data, a.split, a.seed)?;

    let started = Instant::now();
    let (model, reason, elapsed) = match a.model {
        ModelArg::Linear => (
            train_linear(&train, target, LinearConfig::default())?,
            StopReason::AutoStopped,
            started.elapsed(),
        ),
        ModelArg::Grnn => (
            train_grnn(&train, target, &DEFAULT_SIGMA_GRID)?,
            StopReason::AutoStopped,
            started.elapsed(),
        ),
        ModelArg::Mlfn => {
            let nodes = a.nodes.expect("checked by argument validation") as usize;
            let cfg = TrainConfig {
                seed: a.seed,
                ..TrainConfig::default()
            };
            let (m, out) = train_mlfn(&train, target, nodes, &cfg, &cancel)?;
            (m, out.stop_reason, out.wall_time)
        }
    };

    let test_rmse = evaluate(&model, &test, target)?;
    let train_rmse = evaluate(&model, &train, target)?;
    println!(
        "{}  RMS {}  {}  {}",
        model.label(),
        format_rms(test_rmse),
        format_hms(elapsed),
        reason
    );
    println!("test RMSE: {test_rmse}");
    println!("train RMSE: {train_rmse}");

    if let Some(path) = &a.model_out {
        write_file(path, model.serialize())?;
        eprintln!("model written to {}", path.display());
    }
    Ok(if reason == StopReason::UserStopped {
        ExitCode::from(INTERRUPTED)
    } else {
        ExitCode::SUCCESS
    })
}

pub fn sweep(a: SweepArgs) -> Result<ExitCode> {
    let cancel = interrupt_token()?;
    if let Some(path) = &a.report_out {
        guard_input(&a.data, path)?;
    }
    let data = load_csv(&a.data)?;
    let cfg = SweepConfig {
        target: a.target.into(),
        nodes_min: a.nodes_min as usize,
        nodes_max: a.nodes_max as usize,
        trials: a.trials as usize,
        train_fraction: a.split,
        seed: a.seed,
        ..SweepConfig::default()
    };
    let out = run_sweep(&data, &cfg, &cancel)?;

    let format = match a.format {
        FormatArg::Text => TableFormat::Text,
        FormatArg::Csv => TableFormat::Csv,
    };
    let table = render_table(&out.report, format);
    match &a.report_out {
        Some(path) => write_file(path, &table)?,
        None => print!("{table}"),
    }
    if let Some(dir) = &a.scatter_dir {
        emit_scatter(&out.scatter, dir)?;
    }
    let best = out.report.best_row();
    println!(
        "Best: {} (RMS {})",
        best.model_label,
        format_rms(best.rms_error)
    );

    if cancel.is_cancelled() {
        eprintln!("interrupted; partial report written");
        return Ok(ExitCode::from(INTERRUPTED));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn predict(a: PredictArgs) -> Result<ExitCode> {
    guard_input(&a.input, &a.out)?;
    guard_input(&a.model, &a.out)?;
    let bytes = fs::read(&a.model).with_context(|| format!("reading {}", a.model.display()))?;
    let model = Model::deserialize(&bytes)
        .with_context(|| format!("decoding model file {}", a.model.display()))?;
    let data = load_prediction_input(&a.input)?;

    let mut rdr = csv::Reader::from_path(&a.input)
        .with_context(|| format!("reading {}", a.input.display()))?;
    let header = rdr.headers()?.clone();
    let has = |col: &str| header.iter().any(|h| h == col);
    let want = model.target.column();
    let other = match model.target {
        Target::Height => Target::StockVolume,
        Target::StockVolume => Target::Height,
    };
    if !has(want) && has(other.column()) {
        bail!(
            "model predicts {want} but {} only carries {}",
            a.input.display(),
            other.column()
        );
    }

    let predictions = model.predict_all(&data);
    let mut wtr = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&a.out)
        .with_context(|| format!("writing {}", a.out.display()))?;
    let mut out_header = header.clone();
    out_header.push_field(&format!("predicted_{want}"));
    wtr.write_record(&out_header)?;
    for (record, p) in rdr.records().zip(&predictions) {
        let mut record = record?;
        record.push_field(&p.to_string());
        wtr.write_record(&record)?;
    }
    wtr.flush()?;

    if has(want) {
        match data.targets(model.target) {
            Ok(actual) => println!("RMSE: {}", rmse(&predictions, &actual)?),
            Err(e) => eprintln!("RMSE skipped: {e}"),
        }
    }
    eprintln!(
        "{} predictions written to {}",
        predictions.len(),
        a.out.display()
    );
    Ok(ExitCode::SUCCESS)
}
