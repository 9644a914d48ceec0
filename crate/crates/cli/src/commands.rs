use anyhow::Result;
use clap::{Args, Subcommand, ValueEnum};
use serde::Serialize;

use dirac_squaring::algebra::{numerical_rank, C64};
use dirac_squaring::basis_maps::{map_report, MapReport};
use dirac_squaring::boundary::{
    build_covariant_g, g_agreement, quantize_dirac_with, spectrum_distance, weyl_quantize_with, BoundaryPhases,
    CovariantG, GAgreement, GridOptions, MatrixVariant, SlabGeometry, Spectrum,
};
use dirac_squaring::clifford::{build_gammas, Representation};
use dirac_squaring::majorana::{
    linear_map_nonexistence, majorana_report, squared_majorana_sets, MajoranaFamily, MajoranaReport, NonexistenceReport,
};
use dirac_squaring::reference::{reference_report, ReferenceReport};
use dirac_squaring::serial::{format_float, to_json};
use dirac_squaring::solutions::{
    make_mode, phi_basis, squared_set, squared_set_primed, transform_set, u_sets, w_sets, Event, ModeParams,
    SolutionSet,
};
use dirac_squaring::tolerances::{MAP_DIFFERENCE_TOL, RANK_TAU};

use crate::config::{merged, required, ConfigFile};
use crate::{Format, UsageError};

const SPECTRUM_MATCH_TOL: f64 = 1e-6;

#[derive(Args)]
pub struct ModeArgs {
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    /// Longitudinal momentum.
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
}

impl ModeArgs {
    fn resolve(&self, cfg: &ConfigFile) -> Result<ModeParams> {
        let k1 = required(self.k1, cfg, "k1")?;
        let k2 = required(self.k2, cfg, "k2")?;
        let k = required(self.k, cfg, "k")?;
        let mass = required(self.mass, cfg, "mass")?;
        Ok(make_mode(k1, k2, k, mass)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetKind {
    /// Seed `sin(kz + γ)`.
    Squared,
    /// Seed `−cos kz`.
    Primed,
    /// Plane-wave seeds `e^{±ikz}`.
    U,
    /// Standard-basis sin and cos sets.
    W,
    /// Momentum–helicity plane waves.
    Phi,
    All,
}

#[derive(Args)]
pub struct BasesArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// spinor, standard or majorana.
    #[arg(long)]
    rep: Option<String>,
    /// Seed phase γ of the squared set.
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_enum)]
    set: Option<SetKind>,
    /// Add residual, rank and determinant checks.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
pub struct MapsArgs {
    #[command(flatten)]
    mode: ModeArgs,
}

#[derive(Args)]
pub struct MajoranaArgs {
    #[command(flatten)]
    mode: ModeArgs,
    /// First sample point as `t,x,y,z`.
    #[arg(long)]
    x1: Option<String>,
    /// Second sample point as `t,x,y,z`.
    #[arg(long)]
    x2: Option<String>,
}

#[derive(Args)]
pub struct PhaseArgs {
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    sigma: Option<f64>,
}

#[derive(Args)]
pub struct GridArgs {
    /// Plate half-separation.
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    kmax: Option<f64>,
    /// Phase advance of the boundary factor per grid step.
    #[arg(long)]
    phase_step: Option<f64>,
    /// Acceptance tolerance on root residuals.
    #[arg(long)]
    accept_tol: Option<f64>,
}

impl GridArgs {
    fn resolve(&self, cfg: &ConfigFile) -> Result<(SlabGeometry, f64, GridOptions)> {
        let geom = SlabGeometry::new(required(self.a, cfg, "a")?)?;
        let kmax = required(self.kmax, cfg, "kmax")?;
        let mut options = GridOptions::default();
        if let Some(step) = merged(self.phase_step, cfg, "phase_step")? {
            options.phase_step = step;
        }
        if let Some(tol) = merged(self.accept_tol, cfg, "accept_tol")? {
            options.accept_tol = tol;
        }
        Ok((geom, kmax, options))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisChoice {
    Planewave,
    Squared,
    Both,
}

#[derive(Args)]
pub struct DiracArgs {
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
    #[command(flatten)]
    phases: PhaseArgs,
    #[arg(long)]
    mu: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    /// Use this one phase on both plates for ρ, σ, μ and ν.
    #[arg(long, value_name = "THETA")]
    equal_phases: Option<f64>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum)]
    basis: Option<BasisChoice>,
}

#[derive(Args)]
pub struct WeylArgs {
    #[arg(long)]
    k1: Option<f64>,
    #[arg(long)]
    k2: Option<f64>,
    #[command(flatten)]
    phases: PhaseArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Subcommand)]
pub enum QuantizeCommand {
    /// Massive Dirac particle.
    #[command(allow_negative_numbers = true)]
    Dirac(DiracArgs),
    /// Massless two-component particle.
    #[command(allow_negative_numbers = true)]
    Weyl(WeylArgs),
}

#[derive(Args)]
pub struct CovariantArgs {
    #[command(flatten)]
    phases: PhaseArgs,
    #[arg(long)]
    rep: Option<String>,
}

#[derive(Serialize)]
struct WithReference<'a, T: Serialize> {
    #[serde(flatten)]
    result: &'a T,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference_check: Option<ReferenceReport>,
}

pub fn render<T: Serialize>(value: &T) -> Result<String> {
    Ok(to_json(value)?)
}

fn emit<T: Serialize>(value: &T, format: Format, reference: Option<ReferenceReport>) -> Result<String> {
    if format == Format::Csv {
        return Err(UsageError("CSV output is available for single-basis spectra only".into()).into());
    }
    render(&WithReference { result: value, reference_check: reference })
}

fn string_option(flag: &Option<String>, cfg: &ConfigFile, key: &str) -> Option<String> {
    flag.clone().or_else(|| cfg.string(key))
}

fn value_enum<T: ValueEnum>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => match cfg.string(key) {
            None => Ok(None),
            Some(s) => {
                T::from_str(&s, true).map(Some).map_err(|e| UsageError(format!("config key '{key}': {e}")).into())
            }
        },
    }
}

fn representation(flag: &Option<String>, cfg: &ConfigFile) -> Result<Representation> {
    Ok(Representation::parse(&string_option(flag, cfg, "rep").unwrap_or_else(|| "spinor".into()))?)
}

fn parse_event(text: &str) -> Result<Event> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| UsageError(format!("'{text}' is not a list of numbers")))?;
    match <[f64; 4]>::try_from(parts) {
        Ok(v) if v.iter().all(|x| x.is_finite()) => Ok(Event::from_coords(v)),
        _ => Err(UsageError(format!("sample point '{text}' needs four finite coordinates t,x,y,z")).into()),
    }
}

/// Mode and phases for the comparison report; config values override the defaults.
pub fn reference(cfg: &ConfigFile) -> Result<ReferenceReport> {
    let get = |key: &str, default: f64| -> Result<f64> { Ok(cfg.float(key)?.unwrap_or(default)) };
    let m = make_mode(get("k1", 0.3)?, get("k2", 0.4)?, get("k", 1.2)?, get("mass", 1.0)?)?;
    let ph = BoundaryPhases::new(get("rho", 0.4)?, get("sigma", -1.1)?, get("mu", 2.3)?, get("nu", 0.9)?)?;
    Ok(reference_report(&m, &ph)?)
}

#[derive(Serialize)]
struct NamedSet {
    name: &'static str,
    set: SolutionSet,
}

#[derive(Serialize)]
struct Verification {
    name: &'static str,
    sample: Event,
    max_residual: f64,
    rank: usize,
    det: C64,
}

#[derive(Serialize)]
struct BasesOutput {
    mode: ModeParams,
    rep: Representation,
    sets: Vec<NamedSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Vec<Verification>>,
}

pub fn bases(args: &BasesArgs, cfg: &ConfigFile, format: Format, reference: Option<ReferenceReport>) -> Result<String> {
    let m = args.mode.resolve(cfg)?;
    let rep = representation(&args.rep, cfg)?;
    let gamma = merged(args.gamma, cfg, "gamma")?.unwrap_or(0.0);
    if !gamma.is_finite() {
        return Err(UsageError("--gamma must be finite".into()).into());
    }
    let kind = value_enum(args.set, cfg, "set")?.unwrap_or(SetKind::Squared);
    let wanted = |k: SetKind| kind == k || kind == SetKind::All;
    let mut sets = Vec::new();
    if wanted(SetKind::Squared) {
        sets.push(NamedSet { name: "squared", set: squared_set(&m, rep, gamma) });
    }
    if wanted(SetKind::Primed) {
        sets.push(NamedSet { name: "primed", set: squared_set_primed(&m, rep) });
    }
    if wanted(SetKind::U) {
        let (u, u_prime) = u_sets(&m, rep);
        sets.push(NamedSet { name: "u", set: u });
        sets.push(NamedSet { name: "u_prime", set: u_prime });
    }
    if wanted(SetKind::W) {
        let (w, w_prime) = w_sets(&m);
        sets.push(NamedSet { name: "w", set: w });
        sets.push(NamedSet { name: "w_prime", set: w_prime });
    }
    if wanted(SetKind::Phi) {
        sets.push(NamedSet { name: "phi", set: transform_set(&rep.from_spinor(), &phi_basis(&m)?) });
    }
    let verification = if cfg.flag("verify") || args.verify {
        let sample = Event::new(0.13, -0.4, 0.25, 0.9);
        let checks = sets
            .iter()
            .map(|s| {
                let g = build_gammas(s.set.rep());
                let at = s.set.evaluate(&sample);
                Ok(Verification {
                    name: s.name,
                    sample,
                    max_residual: s.set.max_residual(&g)?,
                    rank: numerical_rank(&at, RANK_TAU),
                    det: at.det(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Some(checks)
    } else {
        None
    };
    emit(&BasesOutput { mode: m, rep, sets, verification }, format, reference)
}

pub fn maps(args: &MapsArgs, cfg: &ConfigFile, format: Format, reference: Option<ReferenceReport>) -> Result<String> {
    let report: MapReport = map_report(&args.mode.resolve(cfg)?)?;
    emit(&report, format, reference)
}

#[derive(Serialize)]
struct MajoranaOutput {
    real: MajoranaFamily,
    imaginary: MajoranaFamily,
    nonexistence: NonexistenceReport,
    report: MajoranaReport,
}

pub fn majorana(
    args: &MajoranaArgs,
    cfg: &ConfigFile,
    format: Format,
    reference: Option<ReferenceReport>,
) -> Result<String> {
    let m = args.mode.resolve(cfg)?;
    let x1 = string_option(&args.x1, cfg, "x1").unwrap_or_else(|| "0,0,0,0".into());
    let x2 = string_option(&args.x2, cfg, "x2").unwrap_or_else(|| "0.3,0.1,-0.2,0.5".into());
    let points = [parse_event(&x1)?, parse_event(&x2)?];
    let (real, imaginary) = squared_majorana_sets(&m)?;
    let nonexistence = linear_map_nonexistence(&real, &imaginary, points, MAP_DIFFERENCE_TOL)?;
    let report = majorana_report(&m, &points)?;
    emit(&MajoranaOutput { real, imaginary, nonexistence, report }, format, reference)
}

#[derive(Serialize)]
struct SpectrumOutput {
    variant: &'static str,
    parameters: QuantizeParameters,
    spectrum: Spectrum,
}

#[derive(Serialize)]
struct ComparedSpectra {
    parameters: QuantizeParameters,
    planewave: Spectrum,
    squared: Spectrum,
    /// Largest k difference between matched roots; absent when the counts differ.
    max_k_difference: Option<f64>,
    identical_spectra: bool,
}

#[derive(Clone, Copy, Serialize)]
struct QuantizeParameters {
    k1: f64,
    k2: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass: Option<f64>,
    a: f64,
    rho: f64,
    sigma: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nu: Option<f64>,
    kmax: f64,
    grid: GridOptions,
}

fn warn_if_empty(label: &str, s: &Spectrum) {
    if s.roots.is_empty() {
        eprintln!("warning: no allowed momenta found for {label}");
    }
}

fn spectrum_csv(s: &Spectrum) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["branch", "k", "Re K", "Im K", "det_residual", "unit_modulus_dev"])?;
    for r in &s.roots {
        w.write_record([
            r.branch_index.to_string(),
            format_float(r.k),
            format_float(r.big_k.re),
            format_float(r.big_k.im),
            format_float(r.det_residual),
            format_float(r.unit_modulus_dev),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn single_spectrum(
    variant: &'static str,
    parameters: QuantizeParameters,
    spectrum: Spectrum,
    format: Format,
    reference: Option<ReferenceReport>,
) -> Result<String> {
    warn_if_empty(variant, &spectrum);
    match format {
        Format::Csv => spectrum_csv(&spectrum),
        Format::Json => emit(&SpectrumOutput { variant, parameters, spectrum }, format, reference),
    }
}

pub fn quantize(
    cmd: &QuantizeCommand,
    cfg: &ConfigFile,
    format: Format,
    reference: Option<ReferenceReport>,
) -> Result<String> {
    match cmd {
        QuantizeCommand::Dirac(args) => quantize_dirac_cmd(args, cfg, format, reference),
        QuantizeCommand::Weyl(args) => {
            let k1 = required(args.k1, cfg, "k1")?;
            let k2 = required(args.k2, cfg, "k2")?;
            let rho = required(args.phases.rho, cfg, "rho")?;
            let sigma = required(args.phases.sigma, cfg, "sigma")?;
            let (geom, kmax, grid) = args.grid.resolve(cfg)?;
            let spectrum = weyl_quantize_with(k1, k2, geom, rho, sigma, kmax, grid)?;
            let parameters =
                QuantizeParameters { k1, k2, mass: None, a: geom.a, rho, sigma, mu: None, nu: None, kmax, grid };
            single_spectrum("weyl", parameters, spectrum, format, reference)
        }
    }
}

fn quantize_dirac_cmd(
    args: &DiracArgs,
    cfg: &ConfigFile,
    format: Format,
    reference: Option<ReferenceReport>,
) -> Result<String> {
    let k1 = required(args.k1, cfg, "k1")?;
    let k2 = required(args.k2, cfg, "k2")?;
    let mass = required(args.mass, cfg, "mass")?;
    let ph = match merged(args.equal_phases, cfg, "equal_phases")? {
        Some(theta) => BoundaryPhases::uniform(theta)?,
        None => BoundaryPhases::new(
            required(args.phases.rho, cfg, "rho")?,
            required(args.phases.sigma, cfg, "sigma")?,
            required(args.mu, cfg, "mu")?,
            required(args.nu, cfg, "nu")?,
        )?,
    };
    let (geom, kmax, grid) = args.grid.resolve(cfg)?;
    let parameters = QuantizeParameters {
        k1,
        k2,
        mass: Some(mass),
        a: geom.a,
        rho: ph.rho,
        sigma: ph.sigma,
        mu: Some(ph.mu),
        nu: Some(ph.nu),
        kmax,
        grid,
    };
    let solve = |v: MatrixVariant| quantize_dirac_with(k1, k2, mass, geom, &ph, kmax, v, grid);
    match value_enum(args.basis, cfg, "basis")?.unwrap_or(BasisChoice::Both) {
        BasisChoice::Planewave => {
            single_spectrum("planewave", parameters, solve(MatrixVariant::PlaneWave)?, format, reference)
        }
        BasisChoice::Squared => {
            single_spectrum("squared", parameters, solve(MatrixVariant::Squared)?, format, reference)
        }
        BasisChoice::Both => {
            if format == Format::Csv {
                return Err(UsageError("CSV output needs --basis planewave or --basis squared".into()).into());
            }
            let (planewave, squared) = (solve(MatrixVariant::PlaneWave)?, solve(MatrixVariant::Squared)?);
            warn_if_empty("planewave", &planewave);
            warn_if_empty("squared", &squared);
            let max_k_difference = spectrum_distance(&planewave, &squared);
            let identical_spectra = max_k_difference.is_some_and(|d| d <= SPECTRUM_MATCH_TOL);
            emit(
                &ComparedSpectra { parameters, planewave, squared, max_k_difference, identical_spectra },
                format,
                reference,
            )
        }
    }
}

#[derive(Serialize)]
struct CovariantOutput {
    operator: CovariantG,
    agreement: GAgreement,
}

pub fn covariant_g(
    args: &CovariantArgs,
    cfg: &ConfigFile,
    format: Format,
    reference: Option<ReferenceReport>,
) -> Result<String> {
    let rho = required(args.phases.rho, cfg, "rho")?;
    let sigma = required(args.phases.sigma, cfg, "sigma")?;
    let rep = representation(&args.rep, cfg)?;
    let operator = build_covariant_g(rho, sigma, &build_gammas(rep));
    emit(&CovariantOutput { operator, agreement: g_agreement(rho, sigma) }, format, reference)
}
