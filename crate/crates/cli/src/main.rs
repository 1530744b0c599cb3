//! Command-line front end: series expansion, verification suites, star
//! products, noncommutative coordinates, and the binomial-identity sweep.
//!
//! Exit codes: 0 when every requested check passes, 1 when any check fails,
//! 2 on usage errors. All numeric inputs are exact rationals (`a/b`);
//! floating point is rejected by parsing.

use clap::{Args, Parser, Subcommand, ValueEnum};
use jtwist_core::{
    binomid, hopfcheck, scalar, starprod, twists, weylreal, GeneratorContext, HopfGen, PlaneWave,
    PolyFunction, Report, SpaceConfig, TensorElem, TwistFamily, UMode,
};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "jtwist",
    about = "Exact verification engine for a one-parameter family of Jordanian twists",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a truncated twist or R-matrix series.
    Expand(ExpandArgs),
    /// Run one verification suite (or all of them) and stream JSON reports.
    Verify(VerifyArgs),
    /// Star-multiply two plane waves or two polynomials.
    Star(StarArgs),
    /// Print a noncommutative-coordinate realization in normal order.
    Xhat(XhatArgs),
    /// Sweep the binomial identity and print a JSON summary.
    Lemma(LemmaArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TwistName {
    #[value(name = "f0_inv")]
    F0Inv,
    #[value(name = "f1_inv")]
    F1Inv,
    #[value(name = "fgz_inv")]
    FgzInv,
    #[value(name = "fru_inv")]
    FruInv,
    #[value(name = "R0")]
    R0,
    #[value(name = "R_gz")]
    RGz,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cocycle,
    Counital,
    Equality,
    Ode,
    Coproduct,
    Antipode,
    Coassoc,
    Qybe,
    Minkowski,
    StarAssoc,
    StarAgree,
    Jets,
    Lemma,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Gz,
    R,
}

impl From<FamilyArg> for TwistFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gz => TwistFamily::Gz,
            FamilyArg::R => TwistFamily::R,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum XhatSource {
    Closed,
    Gz,
    R,
}

fn parse_umode(s: &str) -> Result<UMode, String> {
    UMode::from_str(s)
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|_| format!("expected an exact rational `a/b`, got `{s}`"))
}

/// Comma-separated exact rationals, e.g. `1,0` or `1/2,-3`.
#[derive(Clone, Debug)]
struct RationalVec(Vec<BigRational>);

impl FromStr for RationalVec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|part| parse_rational(part.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map(RationalVec)
    }
}

#[derive(Args)]
struct ExpandArgs {
    /// Which series to expand.
    #[arg(value_enum)]
    twist: TwistName,
    /// Gauge parameter: `symbolic` or an exact rational.
    #[arg(long, default_value = "symbolic", value_parser = parse_umode)]
    u: UMode,
    /// Truncation order in the deformation scale t = 1/kappa.
    #[arg(long = "N", default_value_t = 4)]
    order: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run.
    #[arg(value_enum)]
    suite: Suite,
    /// Gauge parameter: `symbolic` or an exact rational.
    #[arg(long, value_parser = parse_umode, allow_hyphen_values = true)]
    u: Option<UMode>,
    /// Truncation order.
    #[arg(long = "N")]
    order: Option<u32>,
    /// Deformation parameter kappa (exact rational, nonzero).
    #[arg(long, value_parser = parse_rational)]
    kappa: Option<BigRational>,
    /// Momentum contraction vector, comma-separated exact rationals.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<RationalVec>,
    /// Sample count for the plane-wave checks.
    #[arg(long)]
    samples: Option<usize>,
    /// Base RNG seed for sampled checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Sweep bound for the binomial-identity suite.
    #[arg(long)]
    max_k: Option<i64>,
    /// Run the suite against its built-in corrupted fixture (expected to fail).
    #[arg(long, default_value_t = false)]
    corrupted: bool,
    /// Optional JSON config file; command-line flags win on conflict.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long, default_value = "1/2", value_parser = parse_rational, allow_hyphen_values = true)]
    u: BigRational,
    #[arg(long, default_value = "1", value_parser = parse_rational, allow_hyphen_values = true)]
    kappa: BigRational,
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    v: RationalVec,
    /// First plane-wave momentum (comma-separated rationals).
    #[arg(long, conflicts_with = "f", allow_hyphen_values = true)]
    k: Option<RationalVec>,
    /// Second plane-wave momentum.
    #[arg(long, requires = "k", allow_hyphen_values = true)]
    q: Option<RationalVec>,
    /// First polynomial as JSON {"terms":[{"exps":[..],"coeff":"a/b"}]}.
    #[arg(long, conflicts_with = "k")]
    f: Option<String>,
    /// Second polynomial as JSON.
    #[arg(long, requires = "f")]
    g: Option<String>,
    /// Twist construction used for the polynomial product.
    #[arg(long, value_enum, default_value = "gz")]
    family: FamilyArg,
}

#[derive(Args)]
struct XhatArgs {
    /// Coordinate index.
    #[arg(long)]
    mu: usize,
    #[arg(long, default_value = "symbolic", value_parser = parse_umode)]
    u: UMode,
    #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
    v: RationalVec,
    /// Where the realization comes from: the closed form or a twist.
    #[arg(long, value_enum, default_value = "closed")]
    source: XhatSource,
    /// Truncation order for twist-derived realizations.
    #[arg(long = "N", default_value_t = 2)]
    order: u32,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct LemmaArgs {
    /// Largest k and l in the sweep.
    #[arg(long, default_value_t = 4)]
    max: i64,
}

/// Effective verify parameters after merging flags, config file, defaults.
struct Params {
    u: UMode,
    order: u32,
    kappa: BigRational,
    config: SpaceConfig,
    samples: usize,
    seed: u64,
    max_k: i64,
}

fn merge_params(args: &VerifyArgs) -> Result<Params, String> {
    let file: BTreeMap<String, serde_json::Value> = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("invalid config JSON: {e}"))?
        }
        None => BTreeMap::new(),
    };
    let from_file_str = |key: &str| -> Option<String> {
        file.get(key).and_then(|v| match v {
            serde_json::Value::String(s) => Some(s.clone()),
            serde_json::Value::Number(n) => Some(n.to_string()),
            _ => None,
        })
    };

    let u = match (&args.u, from_file_str("u")) {
        (Some(u), _) => u.clone(),
        (None, Some(s)) => parse_umode(&s)?,
        (None, None) => UMode::Symbolic,
    };
    let order = match (args.order, from_file_str("N")) {
        (Some(n), _) => n,
        (None, Some(s)) => s.parse().map_err(|_| format!("invalid N `{s}`"))?,
        (None, None) => 4,
    };
    let kappa = match (&args.kappa, from_file_str("kappa")) {
        (Some(k), _) => k.clone(),
        (None, Some(s)) => parse_rational(&s)?,
        (None, None) => BigRational::from_integer(1.into()),
    };
    let v = match (&args.v, from_file_str("v")) {
        (Some(v), _) => v.0.clone(),
        (None, Some(s)) => RationalVec::from_str(&s)?.0,
        (None, None) => RationalVec::from_str("1,0")?.0,
    };
    let samples = match (args.samples, from_file_str("samples")) {
        (Some(n), _) => n,
        (None, Some(s)) => s.parse().map_err(|_| format!("invalid samples `{s}`"))?,
        (None, None) => 100,
    };
    let seed = match (args.seed, from_file_str("seed")) {
        (Some(n), _) => n,
        (None, Some(s)) => s.parse().map_err(|_| format!("invalid seed `{s}`"))?,
        (None, None) => 0,
    };
    let max_k = match (args.max_k, from_file_str("max_k")) {
        (Some(n), _) => n,
        (None, Some(s)) => s.parse().map_err(|_| format!("invalid max_k `{s}`"))?,
        (None, None) => 4,
    };
    Ok(Params {
        u,
        order,
        kappa,
        config: SpaceConfig::new(v),
        samples,
        seed,
        max_k,
    })
}

/// The gauge parameter as a concrete rational for checks that sample.
fn concrete_u(u: &UMode, fallback: (i64, i64)) -> BigRational {
    match u {
        UMode::Rational(r) => r.clone(),
        UMode::Symbolic => BigRational::new(fallback.0.into(), fallback.1.into()),
    }
}

fn run_suite(
    suite: Suite,
    p: &Params,
    corrupted: bool,
) -> Result<Vec<Report>, jtwist_core::Error> {
    let ctx = GeneratorContext::standard();
    let mut reports = Vec::new();
    match suite {
        Suite::Cocycle => {
            if corrupted {
                let bad = hopfcheck::fixtures::corrupted_twist(&ctx, p.order.max(2));
                reports.push(hopfcheck::check_cocycle(&bad, "corrupted")?);
            } else {
                let f = twists::fgz_inv(&ctx, &p.u, p.order);
                reports.push(hopfcheck::check_cocycle(&f, "fgz_inv")?);
            }
        }
        Suite::Counital => {
            if corrupted {
                let bad = hopfcheck::fixtures::corrupted_counital(&ctx, p.order.max(1));
                reports.push(hopfcheck::check_counital(&bad, "corrupted")?);
            } else {
                reports.push(hopfcheck::check_counital(
                    &twists::f0_inv(&ctx, p.order),
                    "f0_inv",
                )?);
                reports.push(hopfcheck::check_counital(
                    &twists::f1_inv(&ctx, p.order),
                    "f1_inv",
                )?);
                reports.push(hopfcheck::check_counital(
                    &twists::fgz_inv(&ctx, &p.u, p.order),
                    "fgz_inv",
                )?);
                reports.push(hopfcheck::check_counital(
                    &twists::fru_inv(&ctx, &p.u, p.order)?,
                    "fru_inv",
                )?);
            }
        }
        Suite::Equality => {
            if corrupted {
                let start = Instant::now();
                let gz = twists::fgz_inv(&ctx, &p.u, p.order.max(2));
                let bad = hopfcheck::fixtures::corrupted_fru_inv(&ctx, &p.u, p.order.max(2))?;
                let residual = gz.sub_ref(&bad);
                reports.push(Report::from_residual(
                    "equality",
                    report_params(&[("u", p.u.to_string()), ("fixture", "corrupted".into())]),
                    &residual,
                    start,
                ));
            } else {
                reports.push(hopfcheck::check_equality_gz_r(&ctx, &p.u, p.order)?);
                reports.push(hopfcheck::check_cochain(&ctx, &p.u, p.order)?);
            }
        }
        Suite::Ode => {
            if corrupted {
                let start = Instant::now();
                let bad = hopfcheck::fixtures::corrupted_fru_inv(&ctx, &UMode::Symbolic, p.order.max(3))?;
                let residual = hopfcheck::ode_residual(&bad)?;
                reports.push(Report::from_residual(
                    "ode",
                    report_params(&[("fixture", "corrupted".into())]),
                    &residual,
                    start,
                ));
            } else {
                reports.push(hopfcheck::check_ode(&ctx, TwistFamily::Gz, p.order)?);
                reports.push(hopfcheck::check_ode(&ctx, TwistFamily::R, p.order)?);
            }
        }
        Suite::Coproduct => {
            if corrupted {
                let start = Instant::now();
                let f = twists::fgz_inv(&ctx, &p.u, p.order.max(1));
                let probe = jtwist_core::AlgElem::momentum(&ctx, "p").expect("probe");
                let residual = hopfcheck::twisted_coproduct(&f, &probe)?.sub_ref(
                    &hopfcheck::fixtures::corrupted_coproduct_p(&ctx, &p.u, p.order.max(1))?,
                );
                reports.push(Report::from_residual(
                    "coproduct",
                    report_params(&[("fixture", "corrupted".into())]),
                    &residual,
                    start,
                ));
            } else {
                reports.push(hopfcheck::check_coproduct(&ctx, &p.u, p.order)?);
            }
        }
        Suite::Antipode => {
            if corrupted {
                let start = Instant::now();
                let residual =
                    hopfcheck::fixtures::corrupted_antipode_residual(&ctx, &p.u, p.order.max(1))?;
                reports.push(Report::from_residual(
                    "antipode",
                    report_params(&[("fixture", "corrupted".into())]),
                    &residual,
                    start,
                ));
            } else {
                reports.push(hopfcheck::check_antipode_axiom(&ctx, HopfGen::P, &p.u, p.order)?);
                reports.push(hopfcheck::check_antipode_axiom(&ctx, HopfGen::D, &p.u, p.order)?);
            }
        }
        Suite::Coassoc => {
            if corrupted {
                let start = Instant::now();
                let f = twists::fgz_inv(&ctx, &p.u, p.order.max(1));
                let bad =
                    hopfcheck::fixtures::corrupted_coproduct_p(&ctx, &p.u, p.order.max(1))?;
                let residual = hopfcheck::coassoc_residual_for(&f, &bad)?;
                reports.push(Report::from_residual(
                    "coassoc",
                    report_params(&[("fixture", "corrupted".into())]),
                    &residual,
                    start,
                ));
            } else {
                reports.push(hopfcheck::check_coassoc(&ctx, &p.u, p.order)?);
            }
        }
        Suite::Qybe => {
            if corrupted {
                let bad = hopfcheck::fixtures::corrupted_qybe_r(&ctx, p.order.max(2));
                reports.push(hopfcheck::check_qybe(&bad, "corrupted")?);
            } else {
                let r = twists::r_matrix(&twists::fgz_inv(&ctx, &p.u, p.order))?;
                reports.push(hopfcheck::check_qybe(&r, "R(fgz_inv)")?);
            }
        }
        Suite::Minkowski => {
            if corrupted {
                let start = Instant::now();
                let xhats: Vec<_> = (0..p.config.dim())
                    .map(|mu| weylreal::corrupted_xhat(&p.config, mu, &p.u))
                    .collect::<Result<_, _>>()?;
                let residuals = weylreal::minkowski_residuals(&p.config, &xhats)?;
                let failures: Vec<String> = residuals
                    .iter()
                    .flat_map(|((mu, nu), r)| {
                        r.render_terms()
                            .into_iter()
                            .map(move |t| format!("[xhat_{mu}, xhat_{nu}]: {t}"))
                    })
                    .collect();
                reports.push(Report::from_failures(
                    "minkowski",
                    report_params(&[("fixture", "corrupted".into())]),
                    failures,
                    start,
                ));
            } else {
                reports.push(weylreal::check_kappa_minkowski(&p.config, &p.u)?);
                reports.push(weylreal::check_p_xhat(&p.config, &p.u)?);
            }
        }
        Suite::StarAssoc => {
            if corrupted {
                reports.push(starprod::check_assoc_planewave_with(
                    starprod::star_planewave_corrupted,
                    &concrete_u(&p.u, (1, 2)),
                    &p.kappa,
                    &p.config,
                    p.samples.min(32),
                    p.seed,
                ));
            } else {
                match &p.u {
                    UMode::Rational(r) => reports.push(starprod::check_assoc_planewave(
                        r, &p.kappa, &p.config, p.samples, p.seed,
                    )),
                    UMode::Symbolic => {
                        // default sweep over the interpolation-relevant values
                        for (num, den) in [(0i64, 1i64), (1, 3), (1, 2), (1, 1)] {
                            let u = BigRational::new(num.into(), den.into());
                            reports.push(starprod::check_assoc_planewave(
                                &u, &p.kappa, &p.config, p.samples, p.seed,
                            ));
                        }
                    }
                }
            }
        }
        Suite::StarAgree => {
            let u = concrete_u(&p.u, (2, 3));
            if corrupted {
                fn flipped(
                    u: &BigRational,
                    kappa: &BigRational,
                    config: &SpaceConfig,
                    a: &PlaneWave,
                    b: &PlaneWave,
                ) -> jtwist_core::Result<PlaneWave> {
                    let minus = -u.clone();
                    starprod::star_planewave_alt(&minus, kappa, config, a, b)
                }
                reports.push(starprod::check_star_forms_agree_with(
                    flipped,
                    &u,
                    &p.kappa,
                    &p.config,
                    p.samples.min(32),
                    p.seed,
                ));
            } else {
                reports.push(starprod::check_star_forms_agree(
                    &u, &p.kappa, &p.config, p.samples, p.seed,
                ));
            }
        }
        Suite::Jets => {
            let u = concrete_u(&p.u, (1, 2));
            if corrupted {
                let gz = twists::fgz_inv(&ctx, &UMode::Rational(u.clone()), 4);
                let bad = hopfcheck::fixtures::corrupted_fru_inv(
                    &ctx,
                    &UMode::Rational(u.clone()),
                    4,
                )?;
                reports.push(starprod::check_star_jets_with(
                    &gz, &bad, &u, &p.config, 2, 2, 2, p.seed,
                )?);
            } else {
                reports.push(starprod::check_star_jets(&u, &p.config, 3, 2, 3, p.seed)?);
            }
        }
        Suite::Lemma => {
            if corrupted {
                reports.push(binomid::check_lemma_corrupted(p.max_k.min(3)));
            } else {
                reports.push(binomid::check_lemma(p.max_k));
                reports.push(binomid::check_reduced_c0(p.max_k + 2));
                reports.push(binomid::check_simple_identity(p.max_k));
                reports.push(binomid::check_vandermonde_steps(p.max_k));
                reports.push(binomid::check_termwise_y_factor(p.max_k));
            }
        }
        Suite::All => {
            for s in [
                Suite::Cocycle,
                Suite::Counital,
                Suite::Equality,
                Suite::Ode,
                Suite::Coproduct,
                Suite::Antipode,
                Suite::Coassoc,
                Suite::Qybe,
                Suite::Minkowski,
                Suite::StarAssoc,
                Suite::StarAgree,
                Suite::Jets,
                Suite::Lemma,
            ] {
                reports.extend(run_suite(s, p, corrupted)?);
            }
        }
    }
    Ok(reports)
}

fn report_params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn cmd_expand(args: &ExpandArgs) -> Result<(), String> {
    let ctx = GeneratorContext::standard();
    let elem: TensorElem = match args.twist {
        TwistName::F0Inv => twists::f0_inv(&ctx, args.order),
        TwistName::F1Inv => twists::f1_inv(&ctx, args.order),
        TwistName::FgzInv => twists::fgz_inv(&ctx, &args.u, args.order),
        TwistName::FruInv => twists::fru_inv(&ctx, &args.u, args.order).map_err(|e| e.to_string())?,
        TwistName::R0 => twists::r0_series(&ctx, args.order),
        TwistName::RGz => twists::r_matrix(&twists::fgz_inv(&ctx, &args.u, args.order))
            .map_err(|e| e.to_string())?,
    };
    match args.format {
        Format::Text => println!("{elem}"),
        Format::Latex => println!("{}", elem.latex()),
        Format::Json => {
            let terms: Vec<serde_json::Value> = elem
                .terms()
                .map(|(key, s)| {
                    serde_json::json!({
                        "legs": key.iter().map(|m| m.fmt_with(elem.ctx())).collect::<Vec<_>>(),
                        "scalar": s.to_string(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "series": format!("{:?}", args.twist),
                "u": args.u.to_string(),
                "N": args.order,
                "terms": terms,
            });
            println!("{doc}");
        }
    }
    Ok(())
}

fn parse_poly_json(text: &str, dim: usize) -> Result<PolyFunction, String> {
    #[derive(serde::Deserialize)]
    struct TermIn {
        exps: Vec<u16>,
        coeff: String,
    }
    #[derive(serde::Deserialize)]
    struct PolyIn {
        terms: Vec<TermIn>,
    }
    let parsed: PolyIn = serde_json::from_str(text).map_err(|e| format!("invalid polynomial JSON: {e}"))?;
    let mut f = PolyFunction::zero(dim);
    for term in parsed.terms {
        if term.exps.len() != dim {
            return Err(format!(
                "exponent vector length {} does not match dimension {dim}",
                term.exps.len()
            ));
        }
        let coeff: jtwist_core::GaussianRational = term.coeff.parse()?;
        f = f.add_ref(&PolyFunction::monomial(dim, term.exps, scalar::gauss(coeff)));
    }
    Ok(f)
}

fn poly_to_json(f: &PolyFunction) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms()
        .map(|(exps, s)| {
            let coeff = s
                .constant_value()
                .map(|c| c.to_string())
                .unwrap_or_else(|| s.to_string());
            serde_json::json!({ "exps": exps, "coeff": coeff })
        })
        .collect();
    serde_json::json!({ "terms": terms })
}

fn cmd_star(args: &StarArgs) -> Result<(), String> {
    let config = SpaceConfig::new(args.v.0.clone());
    match (&args.k, &args.q, &args.f, &args.g) {
        (Some(k), Some(q), None, None) => {
            if k.0.len() != config.dim() || q.0.len() != config.dim() {
                return Err("momentum dimension does not match v".to_string());
            }
            let a = PlaneWave::unit(k.0.clone());
            let b = PlaneWave::unit(q.0.clone());
            let out = starprod::star_planewave(&args.u, &args.kappa, &config, &a, &b)
                .map_err(|e| e.to_string())?;
            let doc = serde_json::json!({
                "momentum": out.momentum.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "prefactor": out.prefactor.to_string(),
            });
            println!("{doc}");
            Ok(())
        }
        (None, None, Some(f), Some(g)) => {
            let f = parse_poly_json(f, config.dim())?;
            let g = parse_poly_json(g, config.dim())?;
            let out = starprod::star_poly(
                args.family.into(),
                &args.u,
                &args.kappa,
                &config,
                &f,
                &g,
            )
            .map_err(|e| e.to_string())?;
            println!("{}", poly_to_json(&out));
            Ok(())
        }
        _ => Err("provide either --k and --q (plane waves) or --f and --g (polynomials)".into()),
    }
}

fn cmd_xhat(args: &XhatArgs) -> Result<(), String> {
    let config = SpaceConfig::new(args.v.0.clone());
    let ctx = GeneratorContext::standard();
    let elem = match args.source {
        XhatSource::Closed => weylreal::xhat(&config, args.mu, &args.u),
        XhatSource::Gz => weylreal::xhat_from_twist(
            &twists::fgz_inv(&ctx, &args.u, args.order.max(2)),
            &config,
            args.mu,
        ),
        XhatSource::R => twists::fru_inv(&ctx, &args.u, args.order.max(2))
            .and_then(|f| weylreal::xhat_from_twist(&f, &config, args.mu)),
    }
    .map_err(|e| e.to_string())?;
    match args.format {
        Format::Text => println!("{elem}"),
        Format::Json => {
            let doc = serde_json::json!({
                "mu": args.mu,
                "u": args.u.to_string(),
                "terms": elem.render_terms(),
            });
            println!("{doc}");
        }
        Format::Latex => return Err("latex output is only available for expand".to_string()),
    }
    Ok(())
}

fn cmd_lemma(args: &LemmaArgs) -> ExitCode {
    let report = binomid::check_lemma(args.max);
    let doc = serde_json::json!({
        "tuples_checked": report.params["tuples_checked"].parse::<u64>().unwrap_or(0),
        "failures": report.residual_terms.len(),
    });
    println!("{doc}");
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Expand(args) => match cmd_expand(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Verify(args) => {
            let params = match merge_params(&args) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match run_suite(args.suite, &params, args.corrupted) {
                Ok(mut reports) => {
                    reports.sort_by(|a, b| {
                        (a.check.clone(), format!("{:?}", a.params))
                            .cmp(&(b.check.clone(), format!("{:?}", b.params)))
                    });
                    let all_pass = reports.iter().all(|r| r.pass);
                    for r in &reports {
                        println!("{}", r.to_json());
                    }
                    if all_pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Star(args) => match cmd_star(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Xhat(args) => match cmd_xhat(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Lemma(args) => cmd_lemma(&args),
    }
}
