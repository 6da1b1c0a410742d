//! `ltda` command-line tool.
//!
//! Exit codes: 0 success, 1 invalid input or other failure, 2 malformed
//! file, 3 search budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ltda::gh::{gh_k_exact, gh_lower_bound_diam, gh_perm_exact, gh_plain, gh_stab_exact, GhOptions, DEFAULT_BUDGET};
use ltda::io::{barcode_csv, format_mask, landscape_csv, landscape_metadata, parse_mask, read_point_csv, SpaceDocument};
use ltda::{
    barcode, compare, generalized_landscape, pairwise, vietoris_rips, CompareConfig, GhResult, LandscapeOptions,
    PairwiseConfig, Poset, Slice, Space, Weighting,
};

#[derive(Parser)]
#[command(name = "ltda", version, about = "Labeled Gromov-Hausdorff distances and generalized persistence landscapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a space document is a valid labeled metric space.
    Validate { input: PathBuf },
    /// Labeled Gromov-Hausdorff distance between two spaces.
    Gh(GhArgs),
    /// Generalized landscape of labeled Vietoris-Rips homology.
    Landscape(LandscapeArgs),
    /// Barcode of the union of a set of labels.
    Barcode(BarcodeArgs),
    /// Class-aware union slice versus the class-naive landscape.
    Compare(LandscapeArgs),
    /// Compare every selected pair of classes from a directory of point CSVs.
    Pairwise(PairwiseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    K,
    Perm,
    Stab,
    Plain,
    LowerBound,
}

#[derive(Clone, Copy, ValueEnum)]
enum WeightingKind {
    Constant,
    Diameter,
    Hausdorff,
}

#[derive(Args)]
struct GhArgs {
    x: PathBuf,
    y: PathBuf,
    #[arg(long, value_enum, default_value = "k")]
    variant: Variant,
    /// Largest number of map tables the exact search may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: f64,
    /// Write the optimal maps as JSON.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Shared {
    #[arg(long, default_value_t = 0)]
    degree: usize,
    /// Number of landscape levels; defaults to the number of points.
    #[arg(long)]
    levels: Option<usize>,
    /// Number of grid values over `[0, diam]`.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long, value_enum, default_value = "hausdorff")]
    weighting: WeightingKind,
    /// Constant weight, or fraction of the Hausdorff distance.
    #[arg(long, default_value_t = 0.1)]
    weight_param: f64,
    /// Largest number of poset paths to enumerate.
    #[arg(long, default_value_t = 1e7)]
    budget: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct LandscapeArgs {
    input: PathBuf,
    #[command(flatten)]
    shared: Shared,
    /// Output prefix; writes `<out>.csv` and `<out>.json`. Prints CSV when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BarcodeArgs {
    input: PathBuf,
    #[arg(long, default_value_t = 0)]
    degree: usize,
    /// Labels whose union is filtered, as `{1,2}`; all labels by default.
    #[arg(long)]
    labels: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PairwiseArgs {
    /// Directory of `<class>.csv` files with one point per row.
    dir: PathBuf,
    #[command(flatten)]
    shared: Shared,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Class pairs by position, as `0-1,2-3`; all pairs by default.
    #[arg(long)]
    pairs: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure carrying a specific exit status.
#[derive(Debug)]
struct Exit(u8);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if let Some(Exit(c)) = e.downcast_ref::<Exit>() {
        return *c;
    }
    match e.downcast_ref::<ltda::Error>() {
        Some(ltda::Error::Format(_)) => 2,
        Some(ltda::Error::BudgetExceeded { .. }) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("LTDA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().ok();
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if e.downcast_ref::<Exit>().is_none() {
                eprintln!("error: {e:#}");
                if matches!(e.downcast_ref::<ltda::Error>(), Some(ltda::Error::BudgetExceeded { .. })) {
                    eprintln!("hint: rerun with --variant lower-bound for a cheap bound");
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { input } => validate(&input),
        Command::Gh(a) => gh(a),
        Command::Landscape(a) => landscape(a),
        Command::Barcode(a) => bars(a),
        Command::Compare(a) => compare_cmd(a),
        Command::Pairwise(a) => pairwise_cmd(a),
    }
}

fn load(path: &Path) -> Result<Space> {
    let doc = SpaceDocument::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(doc.to_space()?)
}

fn validate(input: &Path) -> Result<()> {
    let doc = SpaceDocument::read(input).with_context(|| format!("reading {}", input.display()))?;
    let report = doc.validate()?;
    if report.is_valid() {
        println!("valid");
        Ok(())
    } else {
        println!("{report}");
        Err(Exit(1).into())
    }
}

/// `v` with 12 significant digits.
fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (11 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

#[derive(Serialize)]
struct Witness {
    variant: &'static str,
    value: f64,
    /// Per label, the image of each point of `X_i` in `Y`, 1-based.
    phi: Vec<Vec<usize>>,
    psi: Vec<Vec<usize>>,
    sigma: Option<Vec<usize>>,
    correspondence: Option<Vec<(usize, usize)>>,
}

fn gh(a: GhArgs) -> Result<()> {
    let (x, y) = (load(&a.x)?, load(&a.y)?);
    let opts = GhOptions { budget: a.budget };
    let (name, result): (&str, Option<GhResult<f64>>) = match a.variant {
        Variant::K => ("k", Some(gh_k_exact(&x, &y, &opts)?)),
        Variant::Perm => ("perm", Some(gh_perm_exact(&x, &y, &opts)?)),
        Variant::Stab => ("stab", Some(gh_stab_exact(&x, &y, &opts)?)),
        Variant::Plain => ("plain", Some(gh_plain(&x, &y, &opts)?)),
        Variant::LowerBound => {
            println!("{}", sig12(gh_lower_bound_diam(&x, &y)?));
            if a.witness.is_some() {
                bail!("the lower bound has no witness");
            }
            return Ok(());
        }
    };
    let r = result.expect("exact variant");
    println!("{}", sig12(r.value));
    if let Some(path) = a.witness {
        let one = |v: &Vec<Vec<usize>>| v.iter().map(|m| m.iter().map(|p| p + 1).collect()).collect();
        let w = Witness {
            variant: name,
            value: r.value,
            phi: one(&r.witness.phi),
            psi: one(&r.witness.psi),
            sigma: r.sigma.map(|s| s.iter().map(|i| i + 1).collect()),
            correspondence: r.correspondence.map(|c| c.iter().map(|&(i, j)| (i + 1, j + 1)).collect()),
        };
        std::fs::write(&path, serde_json::to_string_pretty(&w)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

impl Shared {
    fn weighting(&self) -> Result<Weighting<f64>> {
        if !(self.weight_param >= 0.0) || !self.weight_param.is_finite() {
            bail!("--weight-param must be finite and nonnegative");
        }
        Ok(match self.weighting {
            WeightingKind::Constant => Weighting::Constant(self.weight_param),
            WeightingKind::Diameter => Weighting::Diameter,
            WeightingKind::Hausdorff => Weighting::Hausdorff(self.weight_param),
        })
    }

    fn options(&self) -> Result<LandscapeOptions> {
        if self.grid == 0 || self.levels == Some(0) {
            bail!("--grid and --levels must be positive");
        }
        Ok(LandscapeOptions { grid_size: self.grid, path_budget: self.budget })
    }

    fn config(&self) -> Result<CompareConfig<f64>> {
        Ok(CompareConfig {
            degree: self.degree,
            n_max: self.levels,
            weighting: self.weighting()?,
            options: self.options()?,
            ..CompareConfig::default()
        })
    }

    fn json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "degree": self.degree,
            "levels": self.levels,
            "grid": self.grid,
            "weighting": self.weighting()?.describe(),
            "budget": self.budget,
            "seed": self.seed,
        }))
    }
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn landscape(a: LandscapeArgs) -> Result<()> {
    let s = load(&a.input)?;
    let poset = a.shared.weighting()?.apply(Poset::power(s.k())?, &s)?;
    let gl = generalized_landscape(&s, &poset, a.shared.degree, None, a.shared.levels, &a.shared.options()?)?;
    let csv = landscape_csv(&gl);
    match a.out {
        Some(prefix) => {
            let mut config = a.shared.json()?;
            config["input"] = serde_json::json!(a.input.display().to_string());
            let meta = landscape_metadata(&gl, config);
            write_out(&with_ext(&prefix, ".csv"), &csv)?;
            write_out(&with_ext(&prefix, ".json"), &serde_json::to_string_pretty(&meta)?)?;
            let top = gl.restrict_to(poset.top())?;
            let peak = (0..gl.z.len()).map(|t| top.at(1, t)).fold(0.0, f64::max);
            println!(
                "{} levels x {} grid values x {} elements; level-1 peak at {} is {}",
                gl.n_max,
                gl.z.len(),
                gl.elements().len(),
                format_mask(poset.top()),
                sig12(peak)
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn bars(a: BarcodeArgs) -> Result<()> {
    let s = load(&a.input)?;
    let mask = match &a.labels {
        Some(m) => parse_mask(m)?,
        None => s.full_mask(),
    };
    if mask == 0 || mask & !s.full_mask() != 0 {
        bail!("labels must be a nonempty subset of 1..={}", s.k());
    }
    let bc = barcode(&vietoris_rips(&s, mask, a.degree + 1, None)?, a.degree)?;
    let csv = barcode_csv(&[bc]);
    match a.out {
        Some(p) => write_out(&p, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn slice_csv(s: &Slice<f64>) -> String {
    let mut out = String::from("level,r,value\n");
    for n in 1..=s.n_levels() {
        for (t, r) in s.z.iter().enumerate() {
            out.push_str(&format!("{n},{r},{}\n", s.at(n, t)));
        }
    }
    out
}

fn compare_cmd(a: LandscapeArgs) -> Result<()> {
    let s = load(&a.input)?;
    let r = compare(&s, &a.shared.config()?)?;
    println!("mse {}", sig12(r.mse));
    println!("sup {}", sig12(r.sup));
    if let Some(prefix) = a.out {
        let header = format!("# {}\n", serde_json::to_string(&a.shared.json()?)?);
        write_out(&with_ext(&prefix, ".aware.csv"), &(header.clone() + &slice_csv(&r.aware)))?;
        write_out(&with_ext(&prefix, ".naive.csv"), &(header + &slice_csv(&r.naive)))?;
    }
    Ok(())
}

fn parse_pairs(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|p| {
            let (a, b) = p.trim().split_once('-').with_context(|| format!("bad pair `{p}`"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn pairwise_cmd(a: PairwiseArgs) -> Result<()> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(&a.dir)
        .with_context(|| format!("reading {}", a.dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    files.sort();
    if files.len() < 2 {
        bail!("pairwise comparison needs at least two class files in {}", a.dir.display());
    }
    let mut classes = Vec::new();
    for f in &files {
        let name = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
        classes.push((name, read_point_csv(f).with_context(|| format!("reading {}", f.display()))?));
    }
    let cfg = PairwiseConfig {
        compare: a.shared.config()?,
        samples_per_class: a.samples,
        seed: a.shared.seed,
        pairs: a.pairs.as_deref().map(parse_pairs).transpose()?,
    };
    let csv = pairwise(&classes, &cfg)?.to_csv();
    match a.out {
        Some(p) => write_out(&p, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}
