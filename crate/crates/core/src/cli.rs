//! Command-line front end. `run` is the whole program; the binary only
//! forwards `argv` and the process streams.
//!
//! Exit codes: 0 success, 1 parse error (flags, model file, JSON), 2 engine
//! error (with the offending order when known), 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{AlgebraTag, LieBracketKind};
use crate::config::ModelConfig;
use crate::diagram::enumerate_paths;
use crate::engine::{kamiltonian, EngineError, GaugeChoice};
use crate::floquet::{amplitude_grid, compare, FloquetNumericModel, Observable};
use crate::freelie::{generate_closed_form, instantiate, render_series, FreeLieError, Instance, RenderOptions, Target};
use crate::models::{duffing_build, kapitza_build, DuffingParams, Flavor, KapitzaParams};
use crate::render::{self, Ordering, Style};
use crate::serial::{freelie_to_json, gauge_to_json, Expansion, FreeLieJson, FreeLieOrderJson};

/// Default for `KAMILTONIAN_MAX_ORDER`.
pub const DEFAULT_ORDER_CAP: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "kamiltonian", version, about = "High-frequency expansion of periodically driven systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Expansion order N.
    #[arg(long)]
    pub order: Option<usize>,
    /// van-vleck or floquet-magnus.
    #[arg(long)]
    pub gauge: Option<String>,
    /// Floquet-Magnus reference time as a fraction of the period.
    #[arg(long)]
    pub t0: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print quantum results in Weyl order.
    #[arg(long)]
    pub weyl: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expand a model file (or re-render a JSON result).
    Expand {
        #[arg(long)]
        model: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form expansion in terms of the Fourier components `H_m`.
    Vanvleck {
        #[command(flatten)]
        common: Common,
        /// `k` for the Kamiltonian, `s` for the micromotion generator.
        #[arg(long, default_value = "k")]
        target: String,
        /// Check the closed forms on random Hermitian matrices from this seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Paths contributing to the grid cell `K^(n)_[k]`.
    Diagram {
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        node: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Floquet numerics against the series for the driven Duffing oscillator.
    DuffingCompare {
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Highest series order compared.
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, default_value_t = 9)]
        points: usize,
        #[arg(long, default_value_t = 0.8)]
        max_amplitude: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Kapitza pendulum expansion.
    Kapitza {
        #[arg(long)]
        quantum: bool,
        #[command(flatten)]
        common: Common,
    },
}

enum Failure {
    Parse(String),
    Engine(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Engine(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Engine(m) | Failure::Io(m) => m,
        }
    }
}

fn engine_failure(e: &EngineError) -> Failure {
    match e.order() {
        Some(n) => Failure::Engine(format!("engine error at order {n}: {}", e.root())),
        None => Failure::Engine(format!("engine error: {e}")),
    }
}

fn order_cap() -> usize {
    std::env::var("KAMILTONIAN_MAX_ORDER").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_ORDER_CAP)
}

fn check_cap(order: usize) -> Result<(), Failure> {
    let max = order_cap();
    if order > max {
        return Err(engine_failure(&EngineError::OrderLimit { requested: order, max }));
    }
    Ok(())
}

fn gauge(common: &Common, fallback: Option<&GaugeChoice>) -> Result<GaugeChoice, Failure> {
    match &common.gauge {
        Some(g) => GaugeChoice::parse(g, common.t0.as_deref()).map_err(|e| Failure::Parse(e.to_string())),
        None => match (fallback, &common.t0) {
            (Some(GaugeChoice::FloquetMagnus { .. }), Some(t0)) => {
                GaugeChoice::parse("floquet-magnus", Some(t0)).map_err(|e| Failure::Parse(e.to_string()))
            }
            (Some(g), _) => Ok(g.clone()),
            (None, _) => Ok(GaugeChoice::VanVleck),
        },
    }
}

fn style(format: Format, weyl: bool) -> Style {
    Style { latex: format == Format::Latex, ordering: if weyl { Ordering::Weyl } else { Ordering::Normal } }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn render_expansion(doc: &Expansion, format: Format, weyl: bool) -> String {
    match format {
        Format::Json => doc.to_string_pretty() + "\n",
        f => render::expansion(&doc.k, &doc.s, style(f, weyl)),
    }
}

fn run_expansion(tag: AlgebraTag, h: &crate::fourier::FourierElement, order: usize, gauge: &GaugeChoice) -> Result<Expansion, Failure> {
    check_cap(order)?;
    let kind: LieBracketKind = tag.bracket_kind();
    let r = kamiltonian(&kind, h, order, gauge).map_err(|e| engine_failure(&e))?;
    Ok(Expansion::from_result(&r, tag))
}

fn expand(model: &PathBuf, common: &Common, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let src = std::fs::read_to_string(model).map_err(|e| Failure::Io(format!("{}: {e}", model.display())))?;
    if src.trim_start().starts_with('{') {
        let doc = Expansion::parse(&src).map_err(|e| Failure::Parse(format!("{}: {e}", model.display())))?;
        let text = render_expansion(&doc, common.format.unwrap_or(Format::Text), common.weyl);
        return emit(&common.out, &text, stdout);
    }
    let cfg = ModelConfig::parse(&src).map_err(|e| Failure::Parse(format!("{}: {e}", model.display())))?;
    for w in &cfg.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let order = common.order.or(cfg.order).unwrap_or(2);
    let g = gauge(common, cfg.gauge.as_ref())?;
    let format = match (common.format, cfg.format.as_deref()) {
        (Some(f), _) => f,
        (None, Some(f)) => Format::from_str(f, true).map_err(|_| Failure::Parse(format!("unknown format `{f}`")))?,
        (None, None) => Format::Text,
    };
    let doc = run_expansion(cfg.algebra, &cfg.hamiltonian, order, &g)?;
    emit(&common.out, &render_expansion(&doc, format, common.weyl), stdout)
}

fn freelie_failure(e: FreeLieError) -> Failure {
    match e {
        FreeLieError::Engine(e) => engine_failure(&e),
        e => Failure::Engine(format!("engine error: {e}")),
    }
}

fn vanvleck(common: &Common, target: &str, seed: Option<u64>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let order = common.order.unwrap_or(2);
    let cap = order_cap();
    let target = match target {
        "k" | "K" => Target::K,
        "s" | "S" => Target::S,
        t => return Err(Failure::Parse(format!("unknown target `{t}` (expected k or s)"))),
    };
    let g = gauge(common, None)?;
    let series = generate_closed_form(order, target, &g, cap).map_err(freelie_failure)?;
    let first = if target == Target::K { 0 } else { 1 };
    let format = common.format.unwrap_or(Format::Text);
    let name = if target == Target::K { "K" } else { "S/(iħ)" };
    let mut text = String::new();
    match format {
        Format::Json => {
            let doc = FreeLieJson {
                target: if target == Target::K { "k".into() } else { "s".into() },
                gauge: gauge_to_json(&g),
                orders: series.iter().enumerate().map(|(i, x)| FreeLieOrderJson { order: i + first, terms: freelie_to_json(x) }).collect(),
            };
            text = serde_json::to_string_pretty(&doc).expect("plain data serializes") + "\n";
        }
        f => {
            let opts = RenderOptions { latex: f == Format::Latex, divide_by_i_hbar: target == Target::S, show_constraints: false };
            for (i, x) in series.iter().enumerate() {
                let n = i + first;
                let body = render_series(x, &opts);
                if f == Format::Latex {
                    let lhs = if target == Target::K { format!("\\hat{{K}}^{{({n})}}") } else { format!("\\frac{{\\hat{{S}}^{{({n})}}}}{{i\\hbar}}") };
                    text.push_str(&format!("{lhs} = {body}\n"));
                } else {
                    text.push_str(&format!("{name}^({n}) = {body}\n"));
                }
            }
        }
    }
    if let Some(seed) = seed {
        let inst = Instance::random(4, 2, 1.0, seed);
        for (i, x) in series.iter().enumerate() {
            let m = instantiate(x, &inst, 0.0).map_err(freelie_failure)?;
            let herm = (&m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let size = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if format != Format::Json {
                text.push_str(&format!("# order {}: seed {seed}, max |entry| {size:e}, Hermiticity residual {herm:e}\n", i + first));
            }
        }
    }
    emit(&common.out, &text, stdout)
}

fn diagram(node: &[usize], out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let [n, k] = node else {
        return Err(Failure::Parse("--node takes two integers: n k".into()));
    };
    let paths = enumerate_paths(*n, *k).map_err(|e| Failure::Parse(e.to_string()))?;
    let mut text = format!("K^({n})_[{k}]: {} paths\n", paths.len());
    for p in &paths {
        let nodes: Vec<String> = p.nodes().iter().map(|(a, b)| format!("({a},{b})")).collect();
        text.push_str(&format!("{p}    via {}\n", nodes.join(" -> ")));
    }
    emit(out, &text, stdout)
}

fn duffing_compare(
    csv: &Option<PathBuf>,
    order: usize,
    points: usize,
    max_amplitude: f64,
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    check_cap(order)?;
    let p = DuffingParams::reference();
    let r = kamiltonian(&LieBracketKind::QuantumLadder, &duffing_build(&p), order, &GaugeChoice::VanVleck).map_err(|e| engine_failure(&e))?;
    let orders: Vec<usize> = (0..=order).collect();
    let model = FloquetNumericModel::new(p);
    let rep = compare(&model, &r, &orders, &amplitude_grid(max_amplitude, points.max(2)))
        .map_err(|e| Failure::Engine(format!("floquet error: {e}")))?;
    if let Some(path) = csv {
        std::fs::write(path, rep.to_csv()).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    let mut text = String::from("order  max_rel_err_stark_shift  max_rel_err_kerr_shift\n");
    let es = rep.max_relative_errors(Observable::Stark);
    let ek = rep.max_relative_errors(Observable::Kerr);
    for (i, o) in orders.iter().enumerate() {
        text.push_str(&format!("{o}  {:e}  {:e}\n", es[i], ek[i]));
    }
    if csv.is_none() {
        text.push('\n');
        text.push_str(&rep.to_csv());
    }
    emit(out, &text, stdout)
}

fn kapitza(quantum: bool, common: &Common, stdout: &mut dyn Write) -> Result<(), Failure> {
    let flavor = if quantum { Flavor::Quantum } else { Flavor::Classical };
    let order = common.order.unwrap_or(4);
    let g = gauge(common, None)?;
    let doc = run_expansion(flavor.cylinder_tag(), &kapitza_build(&KapitzaParams::symbolic(flavor)), order, &g)?;
    emit(&common.out, &render_expansion(&doc, common.format.unwrap_or(Format::Text), common.weyl), stdout)
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Expand { model, common } => expand(model, common, stdout, stderr),
        Command::Vanvleck { common, target, seed } => vanvleck(common, target, *seed, stdout),
        Command::Diagram { node, out } => diagram(node, out, stdout),
        Command::DuffingCompare { csv, order, points, max_amplitude, out } => {
            duffing_compare(csv, *order, *points, *max_amplitude, out, stdout)
        }
        Command::Kapitza { quantum, common } => kapitza(*quantum, common, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}
