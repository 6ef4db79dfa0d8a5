//! Page placement: data placement where each client `i` may serve at most
//! `k_i` distinct other clients.
//!
//! Every object gets a configuration and a connection pattern naming, for
//! each demanding non-member, the member it reads from. A client that
//! reads several objects from the same server counts once against that
//! server's limit, so the DP state carries the remaining capacities `r`,
//! the remaining serve slots `t` and the directed history `s` of
//! connections already made:
//!
//! ```text
//! f_k(r, t, s) = min over c, rho of cost(o_k, c, rho) + f_{k-1}(r - l_k * profile(c), t - delta(rho, s), s | rho)
//! ```
//!
//! where `delta(rho, s)[i]` counts the clients connecting to `i` for the
//! first time. Clients with zero demand for an object never connect for it.

use std::collections::HashMap;

use num_traits::Zero;

use crate::dp_scaled::{self, ScaledInstance, ScaledOutcome};
use crate::dp_uniform;
use crate::error::SolveError;
use crate::exec::{self, Parallelism};
use crate::model::{self, Config, Instance, Outcome, UnitProblem};
use crate::rational::{self, Rational};
use crate::state::MixedRadix;
use crate::SolverOptions;

/// History patterns are `M x M` bit matrices packed into a `u64`.
pub const MAX_PP_CLIENTS: usize = 8;

/// Which member serves each demanding non-member, indexed by client.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionPattern {
    server_of: Vec<Option<usize>>,
}

impl ConnectionPattern {
    pub fn empty(m: usize) -> ConnectionPattern {
        ConnectionPattern {
            server_of: vec![None; m],
        }
    }

    /// Builds a pattern from `(client, server)` pairs.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> ConnectionPattern {
        let mut p = ConnectionPattern::empty(m);
        for &(j, i) in pairs {
            p.server_of[j] = Some(i);
        }
        p
    }

    pub fn server_of(&self, j: usize) -> Option<usize> {
        self.server_of.get(j).copied().flatten()
    }

    /// `(client, server)` pairs in ascending client order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.server_of
            .iter()
            .enumerate()
            .filter_map(|(j, s)| s.map(|i| (j, i)))
    }

    pub fn num_clients(&self) -> usize {
        self.server_of.len()
    }

    /// Bit `i * M + j` is set when server `i` serves client `j`.
    pub fn bits(&self) -> u64 {
        let m = self.server_of.len();
        self.pairs().fold(0u64, |acc, (j, i)| acc | 1 << (i * m + j))
    }
}

/// Directed record of past connections: bit `(i, j)` means `j` has read from `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HistoryPattern {
    bits: u64,
}

impl HistoryPattern {
    pub fn from_bits(bits: u64) -> HistoryPattern {
        HistoryPattern { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn get(self, m: usize, server: usize, client: usize) -> bool {
        self.bits & (1 << (server * m + client)) != 0
    }
}

/// Every way of giving each demander one server in `c`, in lexicographic order.
///
/// The first demander varies slowest and servers are tried in ascending order.
pub fn enumerate_patterns(m: usize, c: Config, demanders: &[usize]) -> Vec<ConnectionPattern> {
    let servers: Vec<usize> = c.members().collect();
    let mut out = vec![ConnectionPattern::empty(m)];
    for &j in demanders {
        out = out
            .into_iter()
            .flat_map(|p| {
                servers.iter().map(move |&i| {
                    let mut next = p.clone();
                    next.server_of[j] = Some(i);
                    next
                })
            })
            .collect();
    }
    out
}

/// Per-server count of clients that connect for the first time.
pub fn delta(rho: &ConnectionPattern, s: HistoryPattern) -> Vec<u32> {
    delta_bits(rho.num_clients(), rho.bits(), s.bits)
}

fn delta_bits(m: usize, rho: u64, s: u64) -> Vec<u32> {
    let fresh = rho & !s;
    let row = (1u64 << m) - 1;
    (0..m).map(|i| ((fresh >> (i * m)) & row).count_ones()).collect()
}

pub fn merge_history(s: HistoryPattern, rho: &ConnectionPattern) -> HistoryPattern {
    HistoryPattern {
        bits: s.bits | rho.bits(),
    }
}

/// Clients outside `c` with positive demand for object `o`, ascending.
pub fn demanders(instance: &Instance, o: usize, c: Config) -> Vec<usize> {
    (0..instance.num_clients())
        .filter(|&j| !c.contains(j) && instance.objects[o].demands[j] > 0.0)
        .collect()
}

/// Access cost through the chosen servers plus installation cost on `c`.
pub fn pp_cost(instance: &Instance, o: usize, c: Config, rho: &ConnectionPattern) -> f64 {
    let obj = &instance.objects[o];
    let length = rational::to_f64(&obj.length);
    let mut access = 0.0;
    for (j, i) in rho.pairs() {
        access += obj.demands[j] * length * instance.distances[i][j];
    }
    let mut install = 0.0;
    for i in c.members() {
        install += obj.install_costs[i];
    }
    access + install
}

/// One per-object choice: configuration, pattern and their cost.
#[derive(Debug, Clone)]
pub(crate) struct PpOption {
    pub config: Config,
    pub pattern: ConnectionPattern,
    pub rho: u64,
    pub cost: f64,
}

/// All `(c, rho)` choices for object `o` in tie-break order.
pub(crate) fn pp_options(instance: &Instance, o: usize) -> Vec<PpOption> {
    let m = instance.num_clients();
    model::enumerate_configs(m, None)
        .into_iter()
        .flat_map(|c| {
            let dem = demanders(instance, o, c);
            enumerate_patterns(m, c, &dem).into_iter().map(move |pattern| PpOption {
                config: c,
                rho: pattern.bits(),
                cost: pp_cost(instance, o, c, &pattern),
                pattern,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpSolution {
    pub assignment: Vec<(Config, ConnectionPattern)>,
    pub total_cost: f64,
    pub loads: Vec<Rational>,
    /// Distinct clients served by each client across all objects.
    pub serve_counts: Vec<u32>,
    pub states_visited: u64,
    /// Number of `(r, t, s)` states evaluated per object layer.
    pub layer_states: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpScore {
    pub total_cost: f64,
    pub loads: Vec<Rational>,
    pub serve_counts: Vec<u32>,
    pub over_capacity: Vec<usize>,
    pub over_limit: Vec<usize>,
    /// Objects whose pattern does not serve exactly the demanding non-members from members.
    pub bad_patterns: Vec<usize>,
}

impl PpScore {
    pub fn is_feasible(&self) -> bool {
        self.over_capacity.is_empty() && self.over_limit.is_empty() && self.bad_patterns.is_empty()
    }
}

pub fn serve_counts(m: usize, assignment: &[(Config, ConnectionPattern)]) -> Vec<u32> {
    let union = assignment.iter().fold(0u64, |acc, (_, p)| acc | p.bits());
    delta_bits(m, union, 0)
}

pub fn pattern_is_valid(instance: &Instance, o: usize, c: Config, rho: &ConnectionPattern) -> bool {
    let m = instance.num_clients();
    rho.num_clients() == m
        && (0..m).all(|j| {
            let demanding = !c.contains(j) && instance.objects[o].demands[j] > 0.0;
            match rho.server_of(j) {
                Some(i) => demanding && c.contains(i),
                None => !demanding,
            }
        })
}

/// Recomputes cost, loads and serve counts of a page placement from scratch.
pub fn score_pp(
    instance: &Instance,
    assignment: &[(Config, ConnectionPattern)],
    slack: &Rational,
) -> Result<PpScore, SolveError> {
    let configs: Vec<Config> = assignment.iter().map(|(c, _)| *c).collect();
    model::check_assignment_shape(instance, &configs)?;
    let m = instance.num_clients();
    if let Some(o) = assignment.iter().position(|(_, p)| p.num_clients() != m) {
        return Err(SolveError::Structural(format!("pattern of object {o} has the wrong width")));
    }
    let mut total_cost = 0.0;
    for (o, (c, rho)) in assignment.iter().enumerate() {
        total_cost += pp_cost(instance, o, *c, rho);
    }
    let loads = model::loads_of(instance, &configs);
    let over_capacity = model::over_capacity(instance, &loads, slack);
    let serve_counts = serve_counts(m, assignment);
    let over_limit = (0..m)
        .filter(|&i| serve_counts[i] > instance.client_limit(i))
        .collect();
    let bad_patterns = assignment
        .iter()
        .enumerate()
        .filter(|(o, (c, rho))| !pattern_is_valid(instance, *o, *c, rho))
        .map(|(o, _)| o)
        .collect();
    Ok(PpScore {
        total_cost,
        loads,
        serve_counts,
        over_capacity,
        over_limit,
        bad_patterns,
    })
}

pub(crate) fn check_pp_guard(instance: &Instance, opts: &SolverOptions) -> Result<(), SolveError> {
    dp_uniform::check_guard(instance, opts)?;
    if instance.num_clients() > MAX_PP_CLIENTS {
        return Err(SolveError::PagePlacementLimit {
            clients: instance.num_clients(),
            limit: MAX_PP_CLIENTS,
        });
    }
    Ok(())
}

/// Upper bound on states per layer: `prod(C_j + 1) * prod(k_j + 1) * 2^(M(M-1))`.
pub fn layer_state_bound(capacities: &[u64], limits: &[u32]) -> u128 {
    let m = capacities.len() as u32;
    let caps: u128 = capacities.iter().map(|&c| c as u128 + 1).product();
    let lims: u128 = limits.iter().map(|&k| k as u128 + 1).product();
    caps.saturating_mul(lims).saturating_mul(1u128 << (m * m.saturating_sub(1)))
}

/// Exact page placement on the lossless integer-unit view of `instance`.
pub fn solve_pp(instance: &Instance, opts: &SolverOptions) -> Result<Outcome<PpSolution>, SolveError> {
    model::ensure_valid(instance)?;
    check_pp_guard(instance, opts)?;
    let units = dp_uniform::normalize_capacities(&UnitProblem::exact(instance)?);
    solve_pp_units(instance, &units, opts)
}

pub fn solve_pp_units(
    instance: &Instance,
    units: &UnitProblem,
    opts: &SolverOptions,
) -> Result<Outcome<PpSolution>, SolveError> {
    check_pp_guard(instance, opts)?;
    let m = instance.num_clients();
    let limits: Vec<u32> = (0..m).map(|j| instance.client_limit(j)).collect();
    let layers: Vec<PpLayer> = (0..instance.num_objects())
        .map(|o| PpLayer {
            length: units.lengths[o],
            options: pp_options(instance, o),
        })
        .collect();
    let engine = PpEngine {
        m,
        caps: MixedRadix::new(&units.capacities)?,
        slots: MixedRadix::new(&limits.iter().map(|&k| k as u64).collect::<Vec<_>>())?,
        start_r: units.capacities.clone(),
        start_t: limits.iter().map(|&k| k as u64).collect(),
    };
    let Some(run) = engine.run(&layers, opts.parallelism) else {
        return Ok(Outcome::Infeasible);
    };
    let assignment: Vec<(Config, ConnectionPattern)> = run
        .choices
        .iter()
        .zip(&layers)
        .map(|(&idx, layer)| {
            let opt = &layer.options[idx];
            (opt.config, opt.pattern.clone())
        })
        .collect();
    let score = score_pp(instance, &assignment, &Rational::zero())?;
    debug_assert_eq!(score.total_cost.to_bits(), run.cost.to_bits());
    debug_assert!(score.over_limit.is_empty() && score.bad_patterns.is_empty());
    Ok(Outcome::Solved(PpSolution {
        assignment,
        total_cost: score.total_cost,
        loads: score.loads,
        serve_counts: score.serve_counts,
        states_visited: run.layer_states.iter().sum(),
        layer_states: run.layer_states,
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpNuSolution {
    pub solution: PpSolution,
    pub scaled: ScaledInstance,
    pub scaled_loads: Vec<u64>,
    pub blowup_bound: Rational,
}

/// Page placement with scaled lengths: capacities may be exceeded by up to
/// `epsilon * l_max`, client limits are kept exactly.
pub fn solve_pp_nu(
    instance: &Instance,
    epsilon: &Rational,
    opts: &SolverOptions,
) -> Result<ScaledOutcome<PpNuSolution>, SolveError> {
    check_pp_guard(instance, opts)?;
    let scaled = dp_scaled::scale(instance, epsilon)?;
    let units = dp_uniform::normalize_capacities(&scaled.units());
    match solve_pp_units(instance, &units, opts)? {
        Outcome::Infeasible => Ok(ScaledOutcome::CertifiedInfeasible),
        Outcome::Solved(solution) => {
            let configs: Vec<Config> = solution.assignment.iter().map(|(c, _)| *c).collect();
            let scaled_loads = scaled.units().loads(&configs);
            Ok(ScaledOutcome::Solved(PpNuSolution {
                solution,
                blowup_bound: dp_scaled::blowup_bound(instance, epsilon),
                scaled,
                scaled_loads,
            }))
        }
    }
}

struct PpLayer {
    length: u64,
    options: Vec<PpOption>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PpKey {
    r: u128,
    t: u128,
    s: u64,
}

struct PpRun {
    choices: Vec<usize>,
    cost: f64,
    layer_states: Vec<u64>,
}

struct PpEngine {
    m: usize,
    caps: MixedRadix,
    slots: MixedRadix,
    start_r: Vec<u64>,
    start_t: Vec<u64>,
}

impl PpEngine {
    /// Successor of `key` under option `opt`, if it respects capacities and slots.
    fn step(&self, key: PpKey, r: &[u64], t: &[u64], length: u64, opt: &PpOption) -> Option<PpKey> {
        if !opt.config.members().all(|j| r[j] >= length) {
            return None;
        }
        let d = delta_bits(self.m, opt.rho, key.s);
        if d.iter().zip(t).any(|(&need, &have)| need as u64 > have) {
            return None;
        }
        let t_off: u128 = (0..self.m)
            .filter(|&i| d[i] > 0)
            .map(|i| self.slots.offset(1 << i, d[i] as u64))
            .sum();
        Some(PpKey {
            r: key.r - self.caps.offset(opt.config.bits(), length),
            t: key.t - t_off,
            s: key.s | opt.rho,
        })
    }

    fn decode(&self, key: PpKey) -> (Vec<u64>, Vec<u64>) {
        (self.caps.decode(key.r), self.slots.decode(key.t))
    }

    fn run(&self, layers: &[PpLayer], par: Parallelism) -> Option<PpRun> {
        let n = layers.len();
        let mut keys: Vec<Vec<PpKey>> = vec![Vec::new(); n + 1];
        keys[n] = vec![PpKey {
            r: self.caps.encode(&self.start_r),
            t: self.slots.encode(&self.start_t),
            s: 0,
        }];
        for k in (1..=n).rev() {
            let layer = &layers[k - 1];
            let mut next = exec::flat_map_slice(&keys[k], par, |&key| {
                let (r, t) = self.decode(key);
                layer
                    .options
                    .iter()
                    .filter_map(|opt| self.step(key, &r, &t, layer.length, opt))
                    .collect()
            });
            exec::sort_dedup(&mut next, par);
            keys[k - 1] = next;
        }

        let mut values: Vec<Option<f64>> = vec![Some(0.0); keys[0].len()];
        let mut choices: Vec<Vec<u32>> = Vec::with_capacity(n);
        let mut layer_states = Vec::with_capacity(n);
        for k in 1..=n {
            let layer = &layers[k - 1];
            let prev: HashMap<PpKey, u32> = keys[k - 1]
                .iter()
                .enumerate()
                .map(|(p, &key)| (key, p as u32))
                .collect();
            let prev_values = &values;
            let evaluated: Vec<(Option<f64>, u32)> = exec::map_slice(&keys[k], par, |&key| {
                let (r, t) = self.decode(key);
                let mut best: Option<f64> = None;
                let mut choice = u32::MAX;
                for (idx, opt) in layer.options.iter().enumerate() {
                    let Some(succ) = self.step(key, &r, &t, layer.length, opt) else {
                        continue;
                    };
                    let pos = prev[&succ] as usize;
                    if let Some(rest) = prev_values[pos] {
                        let candidate = opt.cost + rest;
                        if best.is_none_or(|b| candidate < b) {
                            best = Some(candidate);
                            choice = idx as u32;
                        }
                    }
                }
                (best, choice)
            });
            layer_states.push(keys[k].len() as u64);
            values = evaluated.iter().map(|&(v, _)| v).collect();
            choices.push(evaluated.into_iter().map(|(_, c)| c).collect());
        }

        let cost = values[0]?;
        let mut key = keys[n][0];
        let mut picked = vec![0usize; n];
        for k in (1..=n).rev() {
            let pos = keys[k].binary_search(&key).expect("state on optimal path");
            let idx = choices[k - 1][pos] as usize;
            let layer = &layers[k - 1];
            let (r, t) = self.decode(key);
            key = self
                .step(key, &r, &t, layer.length, &layer.options[idx])
                .expect("chosen option is feasible");
            picked[k - 1] = idx;
        }
        Some(PpRun {
            choices: picked,
            cost,
            layer_states,
        })
    }
}
