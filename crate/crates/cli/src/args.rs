use clap::{Args, Parser, Subcommand, ValueEnum};
use curvelab_core::mc::PerturbationKind;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Parser, Debug)]
#[command(
    name = "curvelab",
    version,
    about = "Level-curvature distributions of GUE matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Base seed for Monte Carlo streams.
    #[arg(long, global = true, env = "CURVELAB_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Cap on worker threads (default: available parallelism). Results do not depend on it.
    #[arg(long, global = true, value_parser = positive)]
    pub threads: Option<usize>,
    /// CSV destination (default: stdout).
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// JSON summary destination (default: stderr).
    #[arg(long, global = true)]
    pub summary: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ai, Ai′, Bi, Bi′ and the soft-edge density ρ̃ on a ζ grid.
    Airy(AiryArgs),
    /// Bulk (Lorentzian-squared) curvature density and CDF at x.
    PdfBulk(PdfBulkArgs),
    /// Soft-edge curvature density P = P^(I) + P^(II) at ζ.
    PdfEdge(PdfEdgeArgs),
    /// Finite-N characteristic function on an ω grid.
    CharfnFinite(FiniteArgs),
    /// Finite-N curvature density by Fourier inversion.
    DensityFinite(DensityFiniteArgs),
    /// Monte Carlo curvatures in a bulk window.
    McBulk(McArgs),
    /// Monte Carlo curvatures in a soft-edge window.
    McEdge(McArgs),
    /// Monte Carlo characteristic function of the extreme-eigenvalue curvature.
    McExtreme(McExtremeArgs),
    /// Extreme-eigenvalue characteristic function by direct quadrature (N = 2, 3).
    ExtremeDirect(ExtremeDirectArgs),
    /// Large-N approximation errors of polynomials and kernels against exact values.
    Asymptotics(AsymptoticsArgs),
    /// One distribution by several routes on a common grid.
    Compare(CompareArgs),
    /// Run the acceptance checks.
    Validate(ValidateArgs),
}

/// Monte Carlo arguments with the per-command defaults filled in.
fn mc_json(a: &McArgs, (kind, grid): (PerturbationKind, Grid)) -> Value {
    let mut v = json!(a);
    v["kind"] = json!(a.kind.unwrap_or(kind).name());
    v["grid"] = json!(a.grid.unwrap_or(grid));
    v
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Airy(_) => "airy",
            Command::PdfBulk(_) => "pdf-bulk",
            Command::PdfEdge(_) => "pdf-edge",
            Command::CharfnFinite(_) => "charfn-finite",
            Command::DensityFinite(_) => "density-finite",
            Command::McBulk(_) => "mc-bulk",
            Command::McEdge(_) => "mc-edge",
            Command::McExtreme(_) => "mc-extreme",
            Command::ExtremeDirect(_) => "extreme-direct",
            Command::Asymptotics(_) => "asymptotics",
            Command::Compare(_) => "compare",
            Command::Validate(_) => "validate",
        }
    }

    /// Echoed configuration: the subcommand arguments plus the seed where it matters.
    pub fn config_json(&self, common: &Common) -> Value {
        let mut v = match self {
            Command::Airy(a) => json!(a),
            Command::PdfBulk(a) => json!(a),
            Command::PdfEdge(a) => json!(a),
            Command::CharfnFinite(a) => json!(a),
            Command::DensityFinite(a) => json!(a),
            Command::McBulk(a) => mc_json(a, crate::montecarlo::BULK_DEFAULTS),
            Command::McEdge(a) => mc_json(a, crate::montecarlo::EDGE_DEFAULTS),
            Command::McExtreme(a) => json!(a),
            Command::ExtremeDirect(a) => json!(a),
            Command::Asymptotics(a) => json!(a),
            Command::Compare(a) => json!(a),
            Command::Validate(a) => json!(a),
        };
        if matches!(
            self,
            Command::McBulk(_) | Command::McEdge(_) | Command::McExtreme(_) | Command::Validate(_)
        ) {
            v["seed"] = json!(common.seed);
        }
        v
    }
}

/// `lo:hi:points`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected lo:hi:points, got {s:?}"));
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("bad lower bound {:?}", parts[0]))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad upper bound {:?}", parts[1]))?;
        let points: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad point count {:?}", parts[2]))?;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err("grid needs finite lo < hi".into());
        }
        if points < 16 {
            return Err("grid needs at least 16 points".into());
        }
        Ok(Grid { lo, hi, points })
    }
}

/// `center:half_width`
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub center: f64,
    pub half_width: f64,
}

impl FromStr for Window {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected center:half_width, got {s:?}"))?;
        let center: f64 = a.trim().parse().map_err(|_| format!("bad center {a:?}"))?;
        let half_width: f64 = b
            .trim()
            .parse()
            .map_err(|_| format!("bad half width {b:?}"))?;
        if !(center.is_finite() && half_width > 0.0 && half_width.is_finite()) {
            return Err("window needs a finite center and half_width > 0".into());
        }
        Ok(Window { center, half_width })
    }
}

fn parse_kind(s: &str) -> Result<PerturbationKind, String> {
    PerturbationKind::parse(s).ok_or_else(|| {
        format!(
            "unknown perturbation {s:?} (diag_rademacher, fixed_gue_draw, resampled_gue, identity)"
        )
    })
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(format!("expected a positive integer, got {s:?}")),
    }
}

fn dimension(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(v) if v >= 2 => Ok(v),
        _ => Err(format!("matrix size must be an integer >= 2, got {s:?}")),
    }
}

#[derive(Args, Debug, Serialize)]
pub struct AiryArgs {
    #[arg(long, default_value = "-10:8:181", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Serialize)]
pub struct PdfBulkArgs {
    /// Spectral point, |x| < 2.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    #[arg(long, default_value = "-10:10:401", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Serialize)]
pub struct PdfEdgeArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub zeta: f64,
    #[arg(long, default_value = "-8:8:401", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Serialize)]
pub struct Point {
    /// Matrix size.
    #[arg(long, default_value = "100", value_parser = dimension)]
    pub n: usize,
    /// Spectral point; ignored when --zeta is given.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub mu: f64,
    /// Soft-edge coordinate; sets μ = 2 + ζN^{−2/3} and the c_sc scaling.
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
pub struct FiniteArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub point: Point,
    #[arg(long, default_value_t = 10.0)]
    pub omega_max: f64,
    #[arg(long, default_value = "201", value_parser = positive)]
    pub points: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct DensityFiniteArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub point: Point,
    #[arg(long, default_value = "-8:8:321", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Serialize)]
pub struct McArgs {
    #[arg(long, default_value = "100", value_parser = dimension)]
    pub n: usize,
    #[arg(long, default_value = "2000", value_parser = positive)]
    pub trials: usize,
    /// center:half_width in λ (mc-bulk) or ζ (mc-edge).
    #[arg(long, default_value = "0:0.5", allow_hyphen_values = true)]
    pub window: Window,
    /// diag_rademacher, fixed_gue_draw or resampled_gue [default: diag_rademacher
    /// for mc-bulk, fixed_gue_draw for mc-edge].
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<PerturbationKind>,
    /// Histogram range and bin count.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Grid>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Min,
    Max,
}

#[derive(Args, Debug, Serialize)]
pub struct McExtremeArgs {
    #[arg(long, default_value = "2", value_parser = dimension)]
    pub n: usize,
    #[arg(long, default_value = "100000", value_parser = positive)]
    pub trials: usize,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0.5,1,2",
        allow_hyphen_values = true
    )]
    pub omega: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Side::Min)]
    pub side: Side,
    #[arg(long, default_value = "resampled_gue", value_parser = parse_kind)]
    pub kind: PerturbationKind,
}

#[derive(Args, Debug, Serialize)]
pub struct ExtremeDirectArgs {
    #[arg(long, default_value = "2", value_parser = dimension)]
    pub n: usize,
    #[arg(long, default_value_t = 4.0)]
    pub omega_max: f64,
    #[arg(long, default_value = "41", value_parser = positive)]
    pub points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Bulk,
    Edge,
}

#[derive(Args, Debug, Serialize)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum, default_value_t = Regime::Bulk)]
    pub regime: Regime,
    /// Bulk point.
    #[arg(long, default_value_t = 0.4, allow_hyphen_values = true)]
    pub mu: f64,
    /// Edge point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub zeta: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub omega: f64,
    #[arg(long, value_delimiter = ',', default_value = "100,200,400", value_parser = dimension)]
    pub n_list: Vec<usize>,
}

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value_t = Regime::Edge)]
    pub frame: Regime,
    /// Bulk point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub x: f64,
    /// Edge point.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub zeta: f64,
    /// Matrix size for the finite-N route.
    #[arg(long, default_value = "200", value_parser = dimension)]
    pub n: usize,
    #[arg(long, default_value = "-6:6:121", allow_hyphen_values = true)]
    pub grid: Grid,
}

#[derive(Args, Debug, Serialize)]
pub struct ValidateArgs {
    /// Also run the slow soft-edge Monte Carlo check.
    #[arg(long)]
    pub full: bool,
}
