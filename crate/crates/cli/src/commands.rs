use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};

use placer_core::dp_scaled::{self, ScaledOutcome};
use placer_core::generate::{self, LengthModel, RandomFamily};
use placer_core::io;
use placer_core::model::{Instance, Outcome};
use placer_core::oracle::{self, OracleBudget, OracleError};
use placer_core::page_placement;
use placer_core::rational::{self, Rational};
use placer_core::report::{self, Mode, Parameters, ReportFile, ScaledParts, Status};
use placer_core::{dp_uniform, Parallelism, SolverOptions};

use crate::{CapsArgs, Family, GenArgs, ModeArg, OracleArgs, SolveArgs, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_INFEASIBLE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

const SEED_ENV: &str = "PLACER_SEED";

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    io::parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn parallelism(sequential: bool) -> Parallelism {
    if sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

fn read_caps(args: &CapsArgs, instance: &Instance) -> Result<Option<Vec<usize>>> {
    if let Some(k) = args.replica_cap {
        return Ok(Some(vec![k; instance.num_objects()]));
    }
    let Some(path) = &args.caps_file else {
        return Ok(None);
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let caps: Vec<usize> =
        serde_json::from_str(&text).with_context(|| format!("{} must hold a JSON array of integers", path.display()))?;
    Ok(Some(caps))
}

fn parse_epsilon(text: &str) -> Result<Rational> {
    rational::parse_exact(text).context("--epsilon")
}

pub fn solve(args: SolveArgs) -> Result<u8> {
    let instance = read_instance(&args.input)?;
    let caps = read_caps(&args.caps, &instance)?;
    let epsilon = args.epsilon.as_deref().map(parse_epsilon).transpose()?;
    let opts = SolverOptions {
        max_clients: args.max_clients,
        parallelism: parallelism(args.sequential),
        ..SolverOptions::default()
    };
    if epsilon.is_none() && !instance.is_uniform_length() {
        bail!("object lengths differ; pass --epsilon to use the scaled solver");
    }
    let mut parameters = Parameters {
        epsilon: epsilon.as_ref().map(rational::format_exact),
        replica_caps: caps.clone(),
        max_clients: Some(args.max_clients),
        oracle_budget: None,
    };

    let started = Instant::now();
    let mut report = match args.mode {
        ModeArg::Dp => solve_dp(&instance, epsilon.as_ref(), caps.as_deref(), &opts, parameters)?,
        ModeArg::Pp => {
            if caps.is_some() {
                bail!("replica caps apply to --mode dp only");
            }
            if !instance.has_client_limits() {
                bail!("no client has a client_limit; use --mode dp for instances without limits");
            }
            parameters.replica_caps = None;
            solve_pp(&instance, epsilon.as_ref(), &opts, parameters)?
        }
    };
    report.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    emit(&report.to_json(), args.out.as_deref())?;
    Ok(match report.status {
        Status::Solved => EXIT_OK,
        Status::Infeasible | Status::CertifiedInfeasible => EXIT_INFEASIBLE,
    })
}

fn solve_dp(
    instance: &Instance,
    epsilon: Option<&Rational>,
    caps: Option<&[usize]>,
    opts: &SolverOptions,
    parameters: Parameters,
) -> Result<ReportFile> {
    match epsilon {
        Some(eps) => {
            let solver = "dp_scaled";
            Ok(match dp_scaled::solve_nu(instance, eps, caps, opts)? {
                ScaledOutcome::Solved(nu) => {
                    let parts = ScaledParts {
                        scaled: &nu.scaled,
                        scaled_loads: &nu.scaled_loads,
                        bound: &nu.blowup_bound,
                    };
                    ReportFile::from_dp(solver, instance, parameters, &nu.solution, Some(parts))
                }
                ScaledOutcome::CertifiedInfeasible => {
                    ReportFile::unsolved(solver, Mode::Dp, instance, parameters, Status::CertifiedInfeasible)
                }
            })
        }
        None => {
            let solver = "dp_uniform";
            Ok(match dp_uniform::solve(instance, caps, opts)? {
                Outcome::Solved(s) => ReportFile::from_dp(solver, instance, parameters, &s, None),
                Outcome::Infeasible => ReportFile::unsolved(solver, Mode::Dp, instance, parameters, Status::Infeasible),
            })
        }
    }
}

fn solve_pp(
    instance: &Instance,
    epsilon: Option<&Rational>,
    opts: &SolverOptions,
    parameters: Parameters,
) -> Result<ReportFile> {
    match epsilon {
        Some(eps) => {
            let solver = "page_placement_scaled";
            Ok(match page_placement::solve_pp_nu(instance, eps, opts)? {
                ScaledOutcome::Solved(nu) => {
                    let parts = ScaledParts {
                        scaled: &nu.scaled,
                        scaled_loads: &nu.scaled_loads,
                        bound: &nu.blowup_bound,
                    };
                    ReportFile::from_pp(solver, instance, parameters, &nu.solution, Some(parts))
                }
                ScaledOutcome::CertifiedInfeasible => {
                    ReportFile::unsolved(solver, Mode::Pp, instance, parameters, Status::CertifiedInfeasible)
                }
            })
        }
        None => {
            let solver = "page_placement";
            Ok(match page_placement::solve_pp(instance, opts)? {
                Outcome::Solved(s) => ReportFile::from_pp(solver, instance, parameters, &s, None),
                Outcome::Infeasible => ReportFile::unsolved(solver, Mode::Pp, instance, parameters, Status::Infeasible),
            })
        }
    }
}

fn parse_range(text: &str, what: &str) -> Result<(String, String)> {
    let (lo, hi) = text
        .split_once(':')
        .with_context(|| format!("{what} must look like LO:HI, got {text:?}"))?;
    Ok((lo.trim().to_string(), hi.trim().to_string()))
}

fn hundredths(text: &str) -> Result<u32> {
    let value = rational::parse_exact(text)? * rational::from_u64(100);
    if !value.is_integer() {
        bail!("length bound {text} is not a multiple of 0.01");
    }
    rational::floor_to_u64(&value)
        .and_then(|v| u32::try_from(v).ok())
        .with_context(|| format!("length bound {text} out of range"))
}

fn length_model(text: &str) -> Result<LengthModel> {
    if text == "unit" {
        return Ok(LengthModel::Unit);
    }
    let (lo, hi) = parse_range(text, "--lengths")?;
    Ok(LengthModel::Hundredths(hundredths(&lo)?, hundredths(&hi)?))
}

fn seed(flag: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer")),
        Err(_) => Ok(flag),
    }
}

pub fn gen(args: GenArgs) -> Result<u8> {
    let instance = match args.family {
        Family::Random => {
            let client_limits = match &args.client_limits {
                None => None,
                Some(text) => {
                    let (lo, hi) = parse_range(text, "--client-limits")?;
                    Some((lo.parse().context("--client-limits")?, hi.parse().context("--client-limits")?))
                }
            };
            let family = RandomFamily {
                clients: args.clients,
                objects: args.objects,
                capacity: (args.min_capacity, args.max_capacity),
                lengths: length_model(&args.lengths)?,
                max_demand: args.max_demand,
                max_distance: args.max_distance,
                max_install: args.max_install,
                client_limits,
            };
            generate::random_instance(&family, seed(args.seed)?)?
        }
        Family::Tightness => {
            let n = args.objects;
            if n < 3 {
                bail!("the tightness family needs --objects >= 3");
            }
            let epsilon = parse_epsilon(&args.epsilon)?;
            let delta = match &args.delta {
                Some(text) => rational::parse_exact(text).context("--delta")?,
                None => Rational::new(1.into(), (n as i64 - 1).into()),
            };
            generate::tightness(n, &epsilon, &delta)?
        }
    };
    emit(&io::instance_to_json(&instance), args.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn verify(args: VerifyArgs) -> Result<u8> {
    let instance = read_instance(&args.input)?;
    let text = fs::read_to_string(&args.report).with_context(|| format!("reading {}", args.report.display()))?;
    let report = ReportFile::from_json(&text).with_context(|| format!("parsing {}", args.report.display()))?;
    let verification = report::verify_report(&instance, &report)?;
    for check in &verification.checks {
        let tag = if check.passed { "ok  " } else { "FAIL" };
        println!("{tag} {:<14} {}", check.name, check.detail);
    }
    if verification.passed() {
        println!("PASS");
        Ok(EXIT_OK)
    } else {
        println!("FAIL");
        Ok(EXIT_ERROR)
    }
}

pub fn oracle(args: OracleArgs) -> Result<u8> {
    let instance = read_instance(&args.input)?;
    let caps = read_caps(&args.caps, &instance)?;
    let time_limit = match args.time_limit {
        Some(secs) if secs.is_finite() && secs > 0.0 => Some(Duration::from_secs_f64(secs)),
        Some(secs) => bail!("--time-limit must be positive, got {secs}"),
        None => None,
    };
    let budget = OracleBudget {
        max_assignments: args.budget,
        time_limit,
    };
    let par = parallelism(args.sequential);
    let parameters = Parameters {
        epsilon: None,
        replica_caps: caps.clone(),
        max_clients: None,
        oracle_budget: Some(args.budget.to_string()),
    };

    let started = Instant::now();
    let result = match args.mode {
        ModeArg::Dp => oracle::oracle_dp(&instance, caps.as_deref(), &budget, par).map(|outcome| match outcome {
            Outcome::Solved(s) => ReportFile::from_dp("oracle_dp", &instance, parameters.clone(), &s, None),
            Outcome::Infeasible => {
                ReportFile::unsolved("oracle_dp", Mode::Dp, &instance, parameters.clone(), Status::Infeasible)
            }
        }),
        ModeArg::Pp => {
            if caps.is_some() {
                bail!("replica caps apply to --mode dp only");
            }
            oracle::oracle_pp(&instance, &budget, par).map(|outcome| match outcome {
                Outcome::Solved(s) => ReportFile::from_pp("oracle_pp", &instance, parameters.clone(), &s, None),
                Outcome::Infeasible => {
                    ReportFile::unsolved("oracle_pp", Mode::Pp, &instance, parameters.clone(), Status::Infeasible)
                }
            })
        }
    };
    let mut report = match result {
        Ok(r) => r,
        Err(e @ (OracleError::BudgetExceeded { .. } | OracleError::TimeExceeded(_))) => {
            eprintln!("error: {e}");
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    report.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    emit(&report.to_json(), args.out.as_deref())?;
    Ok(match report.status {
        Status::Solved => EXIT_OK,
        _ => EXIT_INFEASIBLE,
    })
}
