//! `moebius` — Dirichlet spectrum, Courant-sharp screening, and nodal
//! analysis of the square flat Möbius strip.
//!
//! Exit codes: 0 when every assertion holds, 1 when a mathematical check
//! fails, 2 on usage errors.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use moebius::bifurcation;
use moebius::critical;
use moebius::eigenfunction::{stern_spec, EigenfunctionSpec, Family, FamilyParams};
use moebius::euler;
use moebius::nodal;
use moebius::pipeline::{reproduce_theorem, ReproduceConfig};
use moebius::render;
use moebius::screening::{self, BesselConstant};
use moebius::spectrum;
use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

// Like out!, but a closed pipe is not an error for a CLI.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "moebius",
    about = "Spectral and nodal analysis on the square flat Möbius strip",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FunctionArgs {
    /// Eigenspace family pair, e.g. "2,3".
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    /// Phase offset β of the family.
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Mixing angle θ ∈ [0, π/2] of the family.
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// JSON eigenfunction spec file (alternative to --family).
    #[arg(long, value_name = "FILE")]
    spec: Option<PathBuf>,
    /// Pure mode sin(m·x) with odd m (alternative to --family).
    #[arg(long, value_name = "M")]
    sin: Option<u32>,
}

impl FunctionArgs {
    fn build(&self) -> Result<(EigenfunctionSpec, Option<FamilyParams>)> {
        match (&self.family, &self.spec, self.sin) {
            (Some(f), None, None) => {
                let params = FamilyParams::new(*f, self.beta, self.theta);
                Ok((params.spec()?, Some(params)))
            }
            (None, Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let spec: EigenfunctionSpec = serde_json::from_str(&text)?;
                let spec = EigenfunctionSpec::new(spec.modes)?;
                Ok((spec, None))
            }
            (None, None, Some(m)) => Ok((EigenfunctionSpec::pure_sine_x(m)?, None)),
            _ => bail!("choose exactly one of --family, --spec, --sin"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the Dirichlet spectrum up to a bound.
    Spectrum {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 65.0)]
        lambda_max: f64,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Human-readable table (the default).
        #[arg(long)]
        table: bool,
    },
    /// Run the Courant-sharp screening filters.
    Screen {
        #[arg(long, default_value_t = 65.0)]
        lambda_max: f64,
        /// Override the Bessel constant j₀₁ (fault-injection guard).
        #[arg(long)]
        j01: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Count nodal domains and report orientability.
    Nodal {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long, default_value_t = nodal::DEFAULT_RESOLUTION, value_parser = parse_resolution)]
        resolution: usize,
        #[arg(long, default_value_t = nodal::DEFAULT_ZERO_TOL)]
        zero_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Locate and classify critical zeros of a family eigenfunction.
    Critical {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        json: bool,
    },
    /// Solve the bifurcation equations (y_β, m_β, θ_β).
    Bifurcation {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, default_value_t = PI / 6.0)]
        beta: f64,
        /// Print a sweep table of N values over the canonical β interval.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Verify the Euler-type identity for one eigenfunction or a sweep.
    Euler {
        #[command(flatten)]
        function: FunctionArgs,
        /// Sweep an interior parameter grid instead of a single point.
        #[arg(long)]
        sweep: bool,
        #[arg(long, default_value_t = 8)]
        sweep_size: usize,
        /// Include grid points at the bifurcation angle θ_β.
        #[arg(long)]
        include_bifurcation: bool,
        #[arg(long, default_value_t = 400, value_parser = parse_resolution)]
        resolution: usize,
        #[arg(long, default_value_t = nodal::DEFAULT_ZERO_TOL)]
        zero_tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Plot the nodal set in the fundamental rectangle (SVG).
    Render {
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 400, value_parser = parse_resolution)]
        resolution: usize,
        /// Label the nodal domains at their centroids.
        #[arg(long)]
        labels: bool,
    },
    /// Export the embedded strip as an OBJ mesh.
    Mesh {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Also export the nodal curves of an eigenfunction.
        #[arg(long)]
        with_nodal: bool,
        #[command(flatten)]
        function: FunctionArgs,
    },
    /// Stern-type eigenfunction with two nodal domains at high energy.
    Stern {
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[arg(long, default_value_t = nodal::DEFAULT_RESOLUTION, value_parser = parse_resolution)]
        resolution: usize,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the Courant-sharp classification end to end.
    ReproduceTheorem {
        #[arg(long, default_value_t = nodal::DEFAULT_RESOLUTION, value_parser = parse_resolution)]
        resolution: usize,
        /// Interior sweep size per axis for the λ₇ eigenspace.
        #[arg(long, default_value_t = 5)]
        sweep: usize,
        /// Override the Bessel constant j₀₁ (fault-injection guard).
        #[arg(long)]
        j01: Option<f64>,
        /// Seed for the randomized spot checks.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_resolution(text: &str) -> Result<usize, String> {
    let n: usize = text.parse().map_err(|e| format!("{e}"))?;
    if n < 64 {
        return Err("resolution must be at least 64".into());
    }
    Ok(n)
}

fn parse_family(text: &str) -> Result<Family, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("family must be \"m,n\"".into());
    }
    let m: u32 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let n: u32 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    match (m, n) {
        (1, 2) => Ok(Family::OneTwo),
        (2, 3) => Ok(Family::TwoThree),
        _ if m != n && m >= 1 && n >= 1 && (m + n) % 2 == 1 => Ok(Family::General { m, n }),
        _ => Err(format!("({m},{n}) is not an admissible family pair")),
    }
}

/// Resolve an output path against `MOEBIUS_OUT_DIR` when it is relative.
fn resolve_out(path: PathBuf) -> PathBuf {
    if path.is_absolute() {
        return path;
    }
    match std::env::var_os("MOEBIUS_OUT_DIR") {
        Some(dir) => PathBuf::from(dir).join(path),
        None => path,
    }
}

/// Small deterministic generator for seeded spot checks.
struct SplitMix(u64);

impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Spectrum { a, lambda_max, json, table: _ } => {
            let table = spectrum::enumerate_spectrum(a, lambda_max)?;
            if json {
                out!("{}", serde_json::to_string_pretty(&table)?);
            } else {
                out!("{:>10}  {:<28} {:>4}  labels", "value", "modes (m,n)", "mult");
                for c in &table.clusters {
                    let modes: Vec<String> =
                        c.modes.iter().map(|p| format!("({},{})", p.m, p.n)).collect();
                    out!(
                        "{:>10.6}  {:<28} {:>4}  {}–{}",
                        c.value,
                        modes.join(" "),
                        c.multiplicity,
                        c.first_label,
                        c.last_label
                    );
                }
            }
            Ok(true)
        }
        Command::Screen { lambda_max, j01, json } => {
            let constant = j01.map(BesselConstant::new).unwrap_or_default();
            constant
                .validate(1e-9)
                .map_err(|e| anyhow!("Bessel constant rejected: {e}"))?;
            let table = spectrum::enumerate_spectrum(1.0, lambda_max)?;
            let report = screening::screen_with(&table, constant)?;
            if json {
                out!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                out!("candidates after multiplicity: {:?}", report.candidates_after_multiplicity);
                out!("counting cutoff: λ < {} (quadratic root {:.4})", report.weyl_cutoff, report.quadratic_root);
                for (k, ratio) in &report.fk_ratios {
                    let lambda = spectrum::eigenvalue_at_label(&table, *k)?;
                    let verdict = if (*k as f64) <= *ratio { "keeps" } else { "excludes" };
                    out!("  k={k:<3} λ={lambda:<4} λπ/j01² = {ratio:.4} → {verdict}");
                }
                out!("survivors: {:?}", report.survivors);
            }
            Ok(true)
        }
        Command::Nodal { function, resolution, zero_tol, json } => {
            let (spec, _) = function.build()?;
            let analysis = nodal::analyze_stable(&spec, resolution, zero_tol)?;
            let curves = nodal::extract_curves(&spec, &analysis.grid)?;
            let orient = analysis.domains.orientable.clone().unwrap_or_default();
            if json {
                let value = serde_json::json!({
                    "count": analysis.domains.count,
                    "orientable": orient,
                    "b0": curves.b0,
                    "b1": curves.b1,
                    "areas": analysis.domains.areas,
                    "resolution": analysis.resolution,
                    "refinement_depth": analysis.refinement_depth,
                });
                out!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                out!("nodal domains: {}", analysis.domains.count);
                out!("orientable:    {orient:?}");
                out!("b0 = {}, b1 = {}", curves.b0, curves.b1);
                out!("areas: {:?}", analysis.domains.areas);
            }
            Ok(true)
        }
        Command::Critical { family, beta, theta, json } => {
            let params = FamilyParams::new(family, beta, theta);
            let mut zeros = critical::find_interior_critical_zeros(&params)?;
            zeros.extend(critical::find_boundary_critical_zeros(&params)?);
            if json {
                out!("{}", serde_json::to_string_pretty(&zeros)?);
            } else {
                for z in &zeros {
                    out!(
                        "({:.6}, {:.6})  {:?}  order {}  ν={:?} ρ={:?}",
                        z.x, z.y, z.kind, z.order, z.nu, z.rho
                    );
                }
                if zeros.is_empty() {
                    out!("no critical zeros");
                }
            }
            Ok(true)
        }
        Command::Bifurcation { family, beta, sweep, json } => {
            if let Some(n) = sweep {
                let hi = family.beta_period();
                let mut rows = Vec::new();
                for i in 0..n {
                    let b = (i as f64 + 0.5) * hi / n as f64;
                    rows.push(bifurcation::solve_theta_beta(family, b)?);
                }
                if json {
                    out!("{}", serde_json::to_string_pretty(&rows)?);
                } else {
                    out!("{:>12} {:>12} {:>12} {:>12}", "beta", "y_beta", "m_beta", "theta_beta");
                    for r in &rows {
                        out!(
                            "{:>12.8} {:>12.8} {:>12.8} {:>12.8}",
                            r.beta,
                            r.y_beta,
                            r.m_beta.unwrap_or(f64::NAN),
                            r.theta_beta
                        );
                    }
                }
            } else {
                let r = bifurcation::solve_theta_beta(family, beta)?;
                if json {
                    out!("{}", serde_json::to_string_pretty(&r)?);
                } else {
                    out!(
                        "y_β = {:.12}\nm_β = {:.12}\nθ_β = {:.12} (cot θ_β = {:.12})\nresiduals = {:?}",
                        r.y_beta,
                        r.m_beta.unwrap_or(f64::NAN),
                        r.theta_beta,
                        r.cot_theta_beta,
                        r.residuals
                    );
                }
            }
            Ok(true)
        }
        Command::Euler {
            function,
            sweep,
            sweep_size,
            include_bifurcation,
            resolution,
            zero_tol,
            json,
        } => {
            if sweep {
                let family = function
                    .family
                    .ok_or_else(|| anyhow!("--sweep needs --family"))?;
                let report = euler::euler_sweep(
                    family,
                    sweep_size,
                    sweep_size,
                    resolution,
                    zero_tol,
                    include_bifurcation,
                )?;
                if json {
                    out!("{}", serde_json::to_string_pretty(&report)?);
                } else {
                    out!("{} ledgers, all balanced", report.entries.len());
                    for ((k, omega), n) in &report.phases {
                        out!("  k={k} ω={omega}: {n} grid points");
                    }
                }
            } else {
                let (spec, params) = function.build()?;
                let ledger = euler::euler_check(&spec, params.as_ref(), resolution, zero_tol)?;
                if json {
                    out!("{}", serde_json::to_string_pretty(&ledger)?);
                } else {
                    out!(
                        "k = {} = ω({}) + b1({}) − b0({}) + interior {} + boundary {}",
                        ledger.k,
                        ledger.omega,
                        ledger.b1,
                        ledger.b0,
                        ledger.interior_term,
                        ledger.boundary_term
                    );
                }
            }
            Ok(true)
        }
        Command::Render { function, out, resolution, labels } => {
            let out = resolve_out(out);
            let (spec, _) = function.build()?;
            let grid = nodal::sample_grid(&spec, resolution, resolution, nodal::DEFAULT_ZERO_TOL)?;
            let domains = nodal::count_nodal_domains(&grid);
            let curves = nodal::extract_curves(&spec, &grid)?;
            let style = render::PlotStyle {
                domain_labels: labels,
                ..Default::default()
            };
            render::plot_fundamental_domain(&curves, &style, Some((&grid, &domains)), &out)?;
            out!("wrote {}", out.display());
            Ok(true)
        }
        Command::Mesh { out, radius, samples, with_nodal, function } => {
            let out = resolve_out(out);
            let params = render::EmbeddingParams {
                r: radius,
                u_samples: samples,
                v_samples: samples,
            };
            let curves = if with_nodal {
                let (spec, _) = function.build()?;
                let grid = nodal::sample_grid(&spec, 400, 400, nodal::DEFAULT_ZERO_TOL)?;
                Some(nodal::extract_curves(&spec, &grid)?)
            } else {
                None
            };
            let mesh = render::export_mesh(&params, curves.as_ref(), &out)?;
            out!(
                "wrote {} ({} vertices, χ = {}, {} boundary loop)",
                out.display(),
                mesh.vertices.len(),
                mesh.euler_characteristic(),
                mesh.boundary_loops()
            );
            Ok(true)
        }
        Command::Stern { r, epsilon, resolution, json } => {
            if epsilon == 0.0 {
                eprintln!("warning: ε = 0 is the degenerate symmetric combination");
            }
            let spec = stern_spec(r, epsilon)?;
            let analysis = nodal::analyze_stable(&spec, resolution, nodal::DEFAULT_ZERO_TOL)?;
            if json {
                let value = serde_json::json!({
                    "eigenvalue": spec.eigenvalue,
                    "modes": spec.modes,
                    "count": analysis.domains.count,
                });
                out!("{}", serde_json::to_string_pretty(&value)?);
            } else {
                out!(
                    "eigenvalue {} → {} nodal domains",
                    spec.eigenvalue, analysis.domains.count
                );
            }
            Ok(analysis.domains.count == 2)
        }
        Command::ReproduceTheorem { resolution, sweep, j01, seed, json } => {
            let config = ReproduceConfig {
                resolution,
                sweep,
                j01: j01.map(BesselConstant::new).unwrap_or_default(),
                ..Default::default()
            };
            let mut report = reproduce_theorem(&config);

            // Seeded spot check: interior critical zeros must be absent at
            // random interior parameters of the λ₇ family.
            let mut rng = SplitMix(seed);
            let mut spot_ok = true;
            for _ in 0..5 {
                let beta = 1e-3 + (PI / 3.0 - 2e-3) * rng.next_f64();
                let theta = 1e-2 + (PI / 2.0 - 2e-2) * rng.next_f64();
                let params = FamilyParams::new(Family::TwoThree, beta, theta);
                match critical::find_interior_critical_zeros(&params) {
                    Ok(zeros) => spot_ok &= zeros.is_empty(),
                    Err(_) => spot_ok = false,
                }
            }
            report.stages.push(moebius::pipeline::StageResult {
                name: "interior-zero-spot-check".into(),
                pass: spot_ok,
                detail: format!("5 random interior parameter points, seed {seed}"),
            });
            report.pass &= spot_ok;

            if json {
                out!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for s in &report.stages {
                    out!("[{}] {}: {}", if s.pass { "PASS" } else { "FAIL" }, s.name, s.detail);
                }
                out!(
                    "conclusion: Courant-sharp eigenvalue labels {:?}",
                    report.courant_sharp
                );
            }
            Ok(report.pass)
        }
    }
}
