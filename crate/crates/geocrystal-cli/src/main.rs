use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use geocrystal::b_infinity::{BElt, BInfinity};
use geocrystal::cartan::{cartan_data, Family, TypeLabel};
use geocrystal::crystal_core::{graph_dot, EdgeLabel};
use geocrystal::geom_crystal::{geometry, Chart, ChartPoint, Geometry};
use geocrystal::harness::{run_check, Settings, CHECKS};
use geocrystal::posrat::parse;
use geocrystal::report::Mode;
use geocrystal::tropic::tropicalize;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

#[derive(Parser)]
#[command(name = "geocrystal", version, about = "Affine geometric crystals and their tropicalization")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Label {
    /// Family: A1, B1, C1, D1, A2odd, A2even, D2 or A2dag.
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
}

impl Label {
    fn get(self) -> Result<TypeLabel> {
        Ok(TypeLabel::new(self.family, self.rank)?)
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::from_str(s).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Cartan record as JSON.
    Cartan(Label),
    /// Tropicalize a subtraction-free expression.
    Trop { expr: String },
    /// Evaluate chart data at a point.
    #[command(subcommand)]
    Geom(GeomCmd),
    /// Run a verification check; exits 0 iff it passes.
    Verify(VerifyArgs),
    /// Crystal graph of B_infinity around the zero element.
    Graph {
        #[command(flatten)]
        label: Label,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        /// Colour edges by index instead of labelling them.
        #[arg(long)]
        colour: bool,
    },
}

#[derive(Subcommand)]
enum GeomCmd {
    /// v(x), eps_i and gamma_i on every chart.
    Eval {
        #[command(flatten)]
        label: Label,
        /// JSON object of coordinates, e.g. '{"x1": 2, "xb1": "1/3"}'.
        #[arg(long)]
        point: String,
    },
    /// a(x) and y = sigma_bar(x).
    Sigma {
        #[command(flatten)]
        label: Label,
        #[arg(long)]
        point: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of verma, axioms, sigma, chart, schubert, ud, mu, binf.
    check: String,
    #[command(flatten)]
    label: Label,
    #[arg(long, value_enum, default_value_t = ModeArg::Symbolic)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Half-width of the lattice box.
    #[arg(long = "box", default_value_t = 8)]
    lattice_box: i64,
    /// Lattice points or crystal elements per lattice check.
    #[arg(long, default_value_t = 2000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Cartan(l) => print_json(&serde_json::to_value(cartan_data(l.get()?)?)?),
        Cmd::Trop { expr } => println!("{}", tropicalize(&parse(&expr)?)),
        Cmd::Geom(GeomCmd::Eval { label, point }) => {
            let g = charted(label)?;
            print_json(&geom_eval(&g, &read_point(&point)?)?)
        }
        Cmd::Geom(GeomCmd::Sigma { label, point }) => {
            let g = charted(label)?;
            let x = read_point(&point)?;
            check_keys(&g.main, &x)?;
            let (a, y) = g.sigma_at(&x)?;
            print_json(&json!({ "a": a.to_string(), "y": rationals(&y) }))
        }
        Cmd::Verify(v) => return verify(v),
        Cmd::Graph { label, radius, format: Format::Dot, colour } => {
            let t = label.get()?;
            if t.family == Family::A2dag {
                bail!("A2dag has no B_infinity; use A2even");
            }
            let binf = BInfinity::new(t)?;
            let mode = if colour { EdgeLabel::Colour } else { EdgeLabel::Index };
            print!("{}", graph_dot(&binf, &[BElt::zero(t)], radius, mode, |b| b.to_string()));
        }
    }
    Ok(true)
}

fn verify(v: VerifyArgs) -> Result<bool> {
    if !CHECKS.contains(&v.check.as_str()) {
        bail!("unknown check `{}`; expected one of {}", v.check, CHECKS.join(", "));
    }
    let mode = match v.mode {
        ModeArg::Symbolic => Mode::Symbolic,
        ModeArg::Sampled => Mode::Sampled,
    };
    let s = Settings { mode, trials: v.trials, lattice_box: v.lattice_box, samples: v.samples, seed: v.seed };
    let report = run_check(&v.check, v.label.get()?, &s)?;
    let text = serde_json::to_string_pretty(&report)?;
    if let Some(path) = &v.out {
        std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{text}");
    Ok(report.pass)
}

fn charted(l: Label) -> Result<Geometry> {
    let t = l.get()?;
    if !t.family.has_chart() {
        bail!("{t} has no chart");
    }
    Ok(geometry(&cartan_data(t)?))
}

fn read_point(text: &str) -> Result<ChartPoint> {
    let v: Map<String, Value> = serde_json::from_str(text).context("point must be a JSON object")?;
    v.into_iter()
        .map(|(k, v)| {
            let q = match &v {
                Value::Number(n) => BigRational::from_str(&n.to_string()),
                Value::String(s) => BigRational::from_str(s.trim()),
                _ => return Err(anyhow!("{k}: expected a number or a string like \"3/4\"")),
            }
            .map_err(|_| anyhow!("{k}: `{v}` is not an exact rational"))?;
            Ok((k, q))
        })
        .collect()
}

fn check_keys(ch: &Chart, x: &ChartPoint) -> Result<()> {
    let want: Vec<&String> = ch.vars.iter().collect();
    let got: Vec<&String> = x.keys().collect();
    let mut want_sorted = want.clone();
    want_sorted.sort();
    if want_sorted != got {
        bail!("chart {} expects coordinates {}", ch.chart, ch.vars.join(", "));
    }
    Ok(())
}

fn rationals(x: &ChartPoint) -> Value {
    Value::Object(x.iter().map(|(k, v)| (k.clone(), Value::String(v.to_string()))).collect())
}

fn chart_values(ch: &Chart, x: &ChartPoint) -> Result<Value> {
    let v: BTreeMap<String, String> =
        ch.v_closed_at(x)?.into_iter().map(|(b, q)| (b.to_string(), q.to_string())).collect();
    let mut eps = Map::new();
    let mut gamma = Map::new();
    for (i, e, g) in ch.geom_stats(x)? {
        eps.insert(i.to_string(), Value::String(e.to_string()));
        gamma.insert(i.to_string(), Value::String(g.to_string()));
    }
    Ok(json!({ "chart": ch.chart, "point": rationals(x), "v": v, "eps": eps, "gamma": gamma }))
}

/// Evaluates on the chart the point belongs to and, for types with a second
/// chart, on the other chart at the image under `sigma_bar` or its inverse.
fn geom_eval(g: &Geometry, x: &ChartPoint) -> Result<Value> {
    let mut charts = Vec::new();
    match &g.second {
        Some(second) if check_keys(second, x).is_ok() => {
            let back = g.sigma_inv_at(x)?;
            charts.push(chart_values(&g.main, &back)?);
            charts.push(chart_values(second, x)?);
        }
        Some(second) => {
            check_keys(&g.main, x)?;
            let (_, y) = g.sigma_at(x)?;
            charts.push(chart_values(&g.main, x)?);
            charts.push(chart_values(second, &y)?);
        }
        None => {
            check_keys(&g.main, x)?;
            charts.push(chart_values(&g.main, x)?);
        }
    }
    Ok(json!({ "type": g.label.family.name(), "rank": g.label.rank, "charts": charts }))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}
