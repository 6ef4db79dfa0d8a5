//! Machine-readable solve reports and their independent verification.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dp_scaled::{self, ScaledInstance};
use crate::model::{self, Config, Instance, Solution};
use crate::page_placement::{self, ConnectionPattern, PpSolution};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dp,
    Pp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solved,
    Infeasible,
    CertifiedInfeasible,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replica_caps: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_clients: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_budget: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection {
    pub client: usize,
    pub server: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub object: usize,
    pub clients: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub servers: Option<Vec<Connection>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledView {
    pub alpha: String,
    pub scaled_lengths: Vec<u64>,
    pub scaled_capacities: Vec<u64>,
    pub scaled_loads: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub solver: String,
    pub mode: Mode,
    pub instance_hash: String,
    pub parameters: Parameters,
    pub status: Status,
    #[serde(default)]
    pub assignment: Vec<Placement>,
    #[serde(default)]
    pub total_cost: Option<f64>,
    #[serde(default)]
    pub loads: Vec<String>,
    pub capacities: Vec<String>,
    #[serde(default)]
    pub slacks: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup_bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub serve_counts: Option<Vec<u32>>,
    pub wall_time_ms: f64,
    pub states_visited: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub layer_states: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scaled: Option<ScaledView>,
}

/// Scaled-side data attached to reports of scaled solves.
pub struct ScaledParts<'a> {
    pub scaled: &'a ScaledInstance,
    pub scaled_loads: &'a [u64],
    pub bound: &'a Rational,
}

impl ScaledParts<'_> {
    fn view(&self) -> ScaledView {
        ScaledView {
            alpha: rational::format_exact(&self.scaled.alpha),
            scaled_lengths: self.scaled.scaled_lengths.clone(),
            scaled_capacities: self.scaled.scaled_capacities.clone(),
            scaled_loads: self.scaled_loads.to_vec(),
        }
    }
}

fn capacities(instance: &Instance) -> Vec<String> {
    instance
        .clients
        .iter()
        .map(|c| rational::format_exact(&c.capacity))
        .collect()
}

fn slacks(instance: &Instance, loads: &[Rational]) -> Vec<f64> {
    loads
        .iter()
        .zip(&instance.clients)
        .map(|(l, c)| rational::to_f64(&(l - &c.capacity)))
        .collect()
}

impl ReportFile {
    fn base(solver: &str, mode: Mode, instance: &Instance, parameters: Parameters, status: Status) -> ReportFile {
        ReportFile {
            solver: solver.to_string(),
            mode,
            instance_hash: crate::io::instance_hash(instance),
            parameters,
            status,
            assignment: Vec::new(),
            total_cost: None,
            loads: Vec::new(),
            capacities: capacities(instance),
            slacks: Vec::new(),
            blowup_bound: None,
            serve_counts: None,
            wall_time_ms: 0.0,
            states_visited: 0,
            layer_states: Vec::new(),
            scaled: None,
        }
    }

    pub fn unsolved(solver: &str, mode: Mode, instance: &Instance, parameters: Parameters, status: Status) -> ReportFile {
        ReportFile::base(solver, mode, instance, parameters, status)
    }

    pub fn from_dp(
        solver: &str,
        instance: &Instance,
        parameters: Parameters,
        solution: &Solution,
        scaled: Option<ScaledParts<'_>>,
    ) -> ReportFile {
        let mut r = ReportFile::base(solver, Mode::Dp, instance, parameters, Status::Solved);
        r.assignment = solution
            .assignment
            .iter()
            .enumerate()
            .map(|(object, c)| Placement {
                object,
                clients: c.members().collect(),
                servers: None,
            })
            .collect();
        r.total_cost = Some(solution.total_cost);
        r.loads = solution.loads.iter().map(rational::format_exact).collect();
        r.slacks = slacks(instance, &solution.loads);
        r.states_visited = solution.states_visited;
        if let Some(parts) = scaled {
            r.blowup_bound = Some(rational::format_exact(parts.bound));
            r.scaled = Some(parts.view());
        }
        r
    }

    pub fn from_pp(
        solver: &str,
        instance: &Instance,
        parameters: Parameters,
        solution: &PpSolution,
        scaled: Option<ScaledParts<'_>>,
    ) -> ReportFile {
        let mut r = ReportFile::base(solver, Mode::Pp, instance, parameters, Status::Solved);
        r.assignment = solution
            .assignment
            .iter()
            .enumerate()
            .map(|(object, (c, rho))| Placement {
                object,
                clients: c.members().collect(),
                servers: Some(
                    rho.pairs()
                        .map(|(client, server)| Connection { client, server })
                        .collect(),
                ),
            })
            .collect();
        r.total_cost = Some(solution.total_cost);
        r.loads = solution.loads.iter().map(rational::format_exact).collect();
        r.slacks = slacks(instance, &solution.loads);
        r.serve_counts = Some(solution.serve_counts.clone());
        r.states_visited = solution.states_visited;
        r.layer_states = solution.layer_states.clone();
        if let Some(parts) = scaled {
            r.blowup_bound = Some(rational::format_exact(parts.bound));
            r.scaled = Some(parts.view());
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<ReportFile, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn epsilon(&self) -> Result<Option<Rational>, VerifyError> {
        self.parameters
            .epsilon
            .as_deref()
            .map(rational::parse_exact)
            .transpose()
            .map_err(|e| VerifyError::Malformed(e.to_string()))
    }

    /// Configurations per object, checked against the instance shape.
    pub fn configs(&self, instance: &Instance) -> Result<Vec<Config>, VerifyError> {
        let n = instance.num_objects();
        let m = instance.num_clients();
        if self.assignment.len() != n {
            return Err(VerifyError::Malformed(format!(
                "assignment lists {} objects, instance has {n}",
                self.assignment.len()
            )));
        }
        self.assignment
            .iter()
            .enumerate()
            .map(|(o, p)| {
                if p.object != o {
                    return Err(VerifyError::Malformed(format!("entry {o} names object {}", p.object)));
                }
                if p.clients.iter().any(|&j| j >= m) {
                    return Err(VerifyError::Malformed(format!("object {o} placed on an unknown client")));
                }
                Config::from_members(p.clients.iter().copied())
                    .ok_or_else(|| VerifyError::Malformed(format!("object {o} is placed nowhere")))
            })
            .collect()
    }

    pub fn pp_assignment(&self, instance: &Instance) -> Result<Vec<(Config, ConnectionPattern)>, VerifyError> {
        let m = instance.num_clients();
        let configs = self.configs(instance)?;
        configs
            .into_iter()
            .zip(&self.assignment)
            .map(|(c, p)| {
                let servers = p.servers.as_ref().ok_or_else(|| {
                    VerifyError::Malformed(format!("object {} lacks a connection pattern", p.object))
                })?;
                if servers.iter().any(|s| s.client >= m || s.server >= m) {
                    return Err(VerifyError::Malformed(format!(
                        "object {} connects an unknown client",
                        p.object
                    )));
                }
                let pairs: Vec<(usize, usize)> = servers.iter().map(|s| (s.client, s.server)).collect();
                Ok((c, ConnectionPattern::from_pairs(m, &pairs)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("report was produced for a different instance (hash {found}, expected {expected})")]
    HashMismatch { expected: String, found: String },
    #[error("malformed report: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub const COST_RELATIVE_TOLERANCE: f64 = 1e-9;

/// Re-scores a report against its instance.
pub fn verify_report(instance: &Instance, report: &ReportFile) -> Result<Verification, VerifyError> {
    let expected = crate::io::instance_hash(instance);
    if report.instance_hash != expected {
        return Err(VerifyError::HashMismatch {
            expected,
            found: report.instance_hash.clone(),
        });
    }
    let mut out = Verification { checks: Vec::new() };
    if report.status != Status::Solved {
        out.push("status", true, format!("{:?} report carries no assignment", report.status));
        return Ok(out);
    }
    let epsilon = report.epsilon()?;

    let (configs, pp) = match report.mode {
        Mode::Dp => (report.configs(instance)?, None),
        Mode::Pp => {
            let assignment = report.pp_assignment(instance)?;
            (assignment.iter().map(|(c, _)| *c).collect(), Some(assignment))
        }
    };
    out.push("assignment", true, format!("{} objects placed", configs.len()));

    let recomputed = match &pp {
        None => model::score_solution(instance, &configs, &Rational::zero())
            .map(|s| s.total_cost)
            .map_err(|e| VerifyError::Malformed(e.to_string()))?,
        Some(assignment) => page_placement::score_pp(instance, assignment, &Rational::zero())
            .map(|s| s.total_cost)
            .map_err(|e| VerifyError::Malformed(e.to_string()))?,
    };
    match report.total_cost {
        Some(reported) if (reported - recomputed).abs() <= COST_RELATIVE_TOLERANCE * recomputed.abs().max(1.0) => {
            out.push("cost", true, format!("total cost {recomputed}"))
        }
        Some(reported) => out.push(
            "cost",
            false,
            format!("cost mismatch: reported {reported}, recomputed {recomputed}"),
        ),
        None => out.push("cost", false, "cost mismatch: no total cost reported".into()),
    }

    let loads = model::loads_of(instance, &configs);
    let load_text: Vec<String> = loads.iter().map(rational::format_exact).collect();
    if load_text == report.loads {
        out.push("loads", true, format!("loads [{}]", load_text.join(", ")));
    } else {
        out.push(
            "loads",
            false,
            format!("load mismatch: reported [{}], recomputed [{}]", report.loads.join(", "), load_text.join(", ")),
        );
    }

    match &epsilon {
        Some(eps) => match dp_scaled::verify_blowup(instance, eps, &configs) {
            Ok(slack) => out.push(
                "blow-up",
                true,
                format!(
                    "max overload {} within {}",
                    rational::format_exact(&slack.max_slack()),
                    rational::format_exact(&slack.bound)
                ),
            ),
            Err(e) => out.push("blow-up", false, format!("blow-up exceeded: {e}")),
        },
        None => {
            let over = model::over_capacity(instance, &loads, &Rational::zero());
            if over.is_empty() {
                out.push("capacity", true, "every load within capacity".into());
            } else {
                out.push("capacity", false, format!("capacity exceeded on clients {over:?}"));
            }
        }
    }

    if let Some(assignment) = &pp {
        let score = page_placement::score_pp(instance, assignment, &Rational::zero())
            .map_err(|e| VerifyError::Malformed(e.to_string()))?;
        if score.bad_patterns.is_empty() {
            out.push("patterns", true, "every demander served by a replica holder".into());
        } else {
            out.push(
                "patterns",
                false,
                format!("invalid connection pattern for objects {:?}", score.bad_patterns),
            );
        }
        if score.over_limit.is_empty() {
            out.push("client limits", true, format!("serve counts {:?}", score.serve_counts));
        } else {
            out.push(
                "client limits",
                false,
                format!("client limit exceeded on clients {:?}", score.over_limit),
            );
        }
    }
    Ok(out)
}
