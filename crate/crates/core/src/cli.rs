//! The `kdd-ffr` command line.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufRead, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::classifiers::{ClassifierConfig, ClassifierKind, DEFAULT_EPSILON, DEFAULT_K};
use crate::clustering::{select_by_clustering, ClusterSelectionParams};
use crate::dataset::kdd::open_text;
use crate::dataset::{
    apply_minmax, fit_minmax, load_kdd, load_kdd_lines, shuffled_folds, stratified_folds,
    stratified_subsample, CategoryMap, LabeledDataset,
};
use crate::error::{Error, Result};
use crate::evaluation::{cross_validate, emit_report, run_grid, CvOptions, EvalReport, GridConfig, ReportFormat};
use crate::ffr::{class_means, ffr_scores, ffr_select, write_scores_csv};
use crate::selection::{SelectionResult, SelectorConfig, SelectorKind};
use crate::similarity::{build_similarity_matrix, Measure, Symmetrize};

#[derive(Debug, Parser)]
#[command(name = "kdd-ffr", version, about = "Feature reduction and classifier benchmarks for KDD-99 data")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "KDD_FFR_THREADS")]
    threads: Option<usize>,

    /// Progress messages on stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse, encode and normalize a KDD file, writing the matrix as CSV.
    Ingest {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the pairwise feature dissimilarity matrix as CSV.
    Similarity {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "cc")]
        measure: Measure,
        #[arg(long)]
        out: PathBuf,
    },
    /// Select features with one method and write the choice as JSON.
    Select {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        method: SelectorKind,
        #[arg(long)]
        count: usize,
        /// Fold the asymmetric LSRE matrix before clustering.
        #[arg(long)]
        symmetrize: Option<Symmetrize>,
        /// FFR only: per-class means and scores as CSV.
        #[arg(long)]
        dump_scores: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Predict categories with KNN or naive Bayes.
    Classify {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value = "knn")]
        classifier: ClassifierKind,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Selection JSON from `select`; all features when absent.
        #[arg(long)]
        features: Option<PathBuf>,
        /// Held-out file to predict. Without it, out-of-fold predictions of
        /// a cross-validation over `--data` are written.
        #[arg(long)]
        test: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-validate every selector, count and classifier.
    Bench {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_delimiter = ',', default_value = "10,20,30")]
        counts: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "knn,bayes")]
        classifiers: Vec<ClassifierKind>,
        #[arg(long, value_delimiter = ',', default_value = "cc,lsre,mici,ffr")]
        selectors: Vec<SelectorKind>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        /// Select once on all rows instead of per training split.
        #[arg(long)]
        select_global: bool,
        #[arg(long)]
        no_stratify: bool,
        #[arg(long)]
        symmetrize: Option<Symmetrize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Render a bench report as JSON, CSV or Markdown.
    Report {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "markdown")]
        format: ReportFormat,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct DataArgs {
    /// KDD-99 file, plain or gzip.
    #[arg(long)]
    data: PathBuf,
    /// Extra `subcategory,category` lines for labels outside the built-in table.
    #[arg(long)]
    category_map: Option<PathBuf>,
    /// Stratified subsample size.
    #[arg(long)]
    subsample: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Skip min-max normalization.
    #[arg(long)]
    raw: bool,
}

impl DataArgs {
    fn category_map(&self) -> Result<CategoryMap> {
        match &self.category_map {
            Some(p) => CategoryMap::from_file(p),
            None => Ok(CategoryMap::default()),
        }
    }

    fn subsample(&self, ds: LabeledDataset) -> Result<LabeledDataset> {
        match self.subsample {
            Some(n) if n < ds.n_samples() => stratified_subsample(&ds, n, self.seed),
            _ => Ok(ds),
        }
    }

    /// Loaded and subsampled, not normalized.
    fn load(&self, verbose: bool) -> Result<LabeledDataset> {
        let ds = load_kdd(&self.data, &self.category_map()?)?;
        if verbose {
            eprintln!("loaded {} rows from {}", ds.n_samples(), self.data.display());
        }
        self.subsample(ds)
    }

    fn load_normalized(&self, verbose: bool) -> Result<LabeledDataset> {
        let ds = self.load(verbose)?;
        if self.raw {
            Ok(ds)
        } else {
            normalize_all(&ds)
        }
    }

    fn echo(&self) -> DataEcho {
        DataEcho {
            data: self.data.display().to_string(),
            category_map: self.category_map.as_ref().map(|p| p.display().to_string()),
            subsample: self.subsample,
            seed: self.seed,
            normalized: !self.raw,
        }
    }
}

/// Resolved input settings, echoed into every artifact.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DataEcho {
    data: String,
    category_map: Option<String>,
    subsample: Option<usize>,
    seed: u64,
    normalized: bool,
}

#[derive(Debug, Serialize, Deserialize)]
struct SelectionFile {
    method: String,
    count: usize,
    kept: Vec<usize>,
    names: Vec<String>,
    scores: Vec<f64>,
    elapsed_seconds: f64,
    config: serde_json::Value,
}

fn normalize_all(ds: &LabeledDataset) -> Result<LabeledDataset> {
    let params = fit_minmax(&ds.matrix)?;
    ds.with_matrix(apply_minmax(&ds.matrix, &params)?)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path).map_err(|e| Error::io(path, e))?))
}

fn finish(mut w: impl Write, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))
}

fn comment_line(w: &mut impl Write, path: &Path, label: &str, echo: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string(echo)?;
    writeln!(w, "# kdd-ffr {label} {text}").map_err(|e| Error::io(path, e))
}

/// Runs the CLI and returns the process exit code: 0 on success, 1 for
/// usage errors, 2 for data errors.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.threads {
        Some(0) => Err(Error::invalid("--threads must be at least 1")),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::invalid(format!("cannot start {n} threads: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<()> {
    let verbose = cli.verbose;
    match &cli.command {
        Command::Ingest { data, out } => ingest(data, out, verbose),
        Command::Similarity { data, measure, out } => {
            let ds = data.load_normalized(verbose)?;
            let sim = build_similarity_matrix(&ds.matrix, *measure)?;
            let mut w = create(out)?;
            comment_line(&mut w, out, "similarity", &serde_json::json!({"measure": measure, "input": data.echo()}))?;
            sim.write_csv(&mut w)?;
            finish(w, out)
        }
        Command::Select {
            data,
            method,
            count,
            symmetrize,
            dump_scores,
            out,
        } => select(data, *method, *count, *symmetrize, dump_scores.as_deref(), out, verbose),
        Command::Classify {
            data,
            classifier,
            k,
            epsilon,
            features,
            test,
            folds,
            out,
        } => {
            let config = ClassifierConfig {
                kind: *classifier,
                k: *k,
                epsilon: *epsilon,
            };
            classify(data, &config, features.as_deref(), test.as_deref(), *folds, out, verbose)
        }
        Command::Bench {
            data,
            counts,
            classifiers,
            selectors,
            folds,
            k,
            epsilon,
            select_global,
            no_stratify,
            symmetrize,
            out,
        } => {
            let ds = data.load(verbose)?;
            let config = GridConfig {
                selectors: selectors.clone(),
                counts: counts.clone(),
                classifiers: classifiers.clone(),
                knn_k: *k,
                epsilon: *epsilon,
                n_folds: *folds,
                seed: data.seed,
                stratify: !no_stratify,
                normalize: !data.raw,
                select_global: *select_global,
                symmetrize: *symmetrize,
            };
            if verbose {
                eprintln!("running {} cells", config.cell_keys(ds.n_features()).len());
            }
            let mut report = run_grid(&ds, &config)?;
            report.dataset.source = Some(data.data.display().to_string());
            report.dataset.subsample = data.subsample;
            let mut w = create(out)?;
            w.write_all(emit_report(&report, ReportFormat::Json)?.as_bytes())
                .map_err(|e| Error::io(out, e))?;
            finish(w, out)
        }
        Command::Report { input, format, out } => {
            let text = std::fs::read_to_string(input).map_err(|e| Error::io(input, e))?;
            let report: EvalReport = serde_json::from_str(&text)?;
            let rendered = emit_report(&report, *format)?;
            match out {
                Some(path) => std::fs::write(path, rendered).map_err(|e| Error::io(path, e)),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            }
        }
    }
}

fn ingest(data: &DataArgs, out: &Path, verbose: bool) -> Result<()> {
    let ds = data.load_normalized(verbose)?;
    let mut w = create(out)?;
    comment_line(&mut w, out, "ingest", &data.echo())?;
    {
        let mut csv = csv::Writer::from_writer(&mut w);
        let mut header: Vec<&str> = ds.matrix.feature_names().iter().map(String::as_str).collect();
        header.extend(["category", "subcategory"]);
        csv.write_record(&header)?;
        for i in 0..ds.n_samples() {
            let mut rec: Vec<String> = ds.matrix.row(i).iter().map(|v| v.to_string()).collect();
            rec.push(ds.categories[ds.labels[i]].clone());
            rec.push(ds.subcategory[i].clone());
            csv.write_record(&rec)?;
        }
        csv.flush().map_err(|e| Error::io(out, e))?;
    }
    finish(w, out)
}

fn select(
    data: &DataArgs,
    method: SelectorKind,
    count: usize,
    symmetrize: Option<Symmetrize>,
    dump_scores: Option<&Path>,
    out: &Path,
    verbose: bool,
) -> Result<()> {
    if dump_scores.is_some() && method != SelectorKind::Ffr {
        return Err(Error::invalid("--dump-scores applies to --method ffr only"));
    }
    // FFR times its own normalization separately, so hand it raw rows.
    let ds = if method == SelectorKind::Ffr {
        data.load(verbose)?
    } else {
        data.load_normalized(verbose)?
    };
    let result: SelectionResult = match method {
        SelectorKind::Ffr => ffr_select(&ds, count, !data.raw)?,
        SelectorKind::All => SelectorConfig::new(SelectorKind::All, count).build().select(&ds)?,
        kind => select_by_clustering(
            &ds.matrix,
            &ClusterSelectionParams {
                measure: kind.measure().expect("similarity selector"),
                k: None,
                target_count: count,
                symmetrize,
            },
        )?,
    };
    if let Some(path) = dump_scores {
        let scored = if data.raw { ds.clone() } else { normalize_all(&ds)? };
        let table = class_means(&scored)?;
        let scores = ffr_scores(&table)?;
        let w = create(path)?;
        write_scores_csv(w, &table, &scores, scored.matrix.feature_names(), &scored.categories)?;
    }
    if verbose {
        eprintln!("{} kept {:?} in {:.6}s", method, result.kept, result.elapsed_seconds);
    }
    let names = ds.matrix.feature_names();
    let file = SelectionFile {
        method: method.to_string(),
        count,
        names: result.kept.iter().map(|&f| names[f].clone()).collect(),
        kept: result.kept,
        scores: result.scores,
        elapsed_seconds: result.elapsed_seconds,
        config: serde_json::json!({ "input": data.echo(), "symmetrize": symmetrize }),
    };
    let mut w = create(out)?;
    serde_json::to_writer_pretty(&mut w, &file)?;
    writeln!(w).map_err(|e| Error::io(out, e))?;
    finish(w, out)
}

fn read_lines(path: &Path) -> Result<Vec<String>> {
    open_text(path)?
        .lines()
        .map(|l| l.map_err(|e| Error::io(path, e)))
        .filter(|l| l.as_ref().map_or(true, |s| !s.trim().is_empty()))
        .collect()
}

fn classify(
    data: &DataArgs,
    config: &ClassifierConfig,
    features: Option<&Path>,
    test: Option<&Path>,
    folds: usize,
    out: &Path,
    verbose: bool,
) -> Result<()> {
    let kept = match features {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            let sel: SelectionFile = serde_json::from_str(&text)?;
            Some(sel.kept)
        }
        None => None,
    };
    let map = data.category_map()?;
    let mut w = create(out)?;
    comment_line(
        &mut w,
        out,
        "classify",
        &serde_json::json!({
            "input": data.echo(),
            "classifier": config,
            "features": kept,
            "test": test.map(|p| p.display().to_string()),
            "folds": folds,
        }),
    )?;
    writeln!(w, "sample_index,true_category,predicted_category").map_err(|e| Error::io(out, e))?;

    match test {
        Some(test_path) => {
            // one load for both files so symbolic codes agree
            let mut lines = read_lines(&data.data)?;
            let n_train = lines.len();
            lines.extend(read_lines(test_path)?);
            let all = load_kdd_lines(&lines, &map)?;
            let train = data.subsample(all.subset(&(0..n_train).collect::<Vec<_>>()))?;
            let held = all.subset(&(n_train..all.n_samples()).collect::<Vec<_>>());
            let cols = kept.clone().unwrap_or_else(|| (0..all.n_features()).collect());
            let mut train_x = train.matrix.select_columns(&cols)?;
            let mut test_x = held.matrix.select_columns(&cols)?;
            if !data.raw {
                let params = fit_minmax(&train_x)?;
                train_x = apply_minmax(&train_x, &params)?;
                test_x = apply_minmax(&test_x, &params)?;
            }
            if verbose {
                eprintln!("training on {} rows, predicting {}", train.n_samples(), held.n_samples());
            }
            let model = config.fit(&train_x, &train.labels, all.n_categories())?;
            let predicted = model.predict_batch(&test_x)?;
            for (i, p) in predicted.iter().enumerate() {
                writeln!(w, "{i},{},{}", all.categories[held.labels[i]], all.categories[*p])
                    .map_err(|e| Error::io(out, e))?;
            }
        }
        None => {
            let ds = data.load(verbose)?;
            let ds = match &kept {
                Some(cols) => ds.select_features(cols)?,
                None => ds,
            };
            let plan = stratified_folds(&ds.labels, folds, data.seed)
                .or_else(|_| shuffled_folds(ds.n_samples(), folds, data.seed))?;
            let options = CvOptions {
                normalize: !data.raw,
                select_global: false,
            };
            let selector = SelectorConfig::new(SelectorKind::All, ds.n_features());
            let preds = cross_validate(&ds, &selector, config, &plan, &options)?;
            for (i, p) in preds.predicted.iter().enumerate() {
                writeln!(w, "{i},{},{}", ds.categories[ds.labels[i]], ds.categories[*p])
                    .map_err(|e| Error::io(out, e))?;
            }
        }
    }
    finish(w, out)
}
