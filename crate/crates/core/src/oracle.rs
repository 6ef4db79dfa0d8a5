//! Brute-force reference solvers.
//!
//! Every assignment of one choice per object is enumerated as a
//! mixed-radix counter whose least significant digit is the first object.
//! Counting upwards therefore visits assignments in lexicographic order
//! from the last object to the first, which is the same order in which the
//! dynamic programs break ties, so optima agree assignment for assignment.
//! The index range is split into contiguous chunks that may run in
//! parallel; chunk winners are reduced left to right.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::SolveError;
use crate::exec::{self, Parallelism};
use crate::model::{self, Config, CostTable, Instance, Outcome, Solution, UnitProblem};
use crate::page_placement::{self, ConnectionPattern, PpSolution};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleBudget {
    pub max_assignments: u128,
    pub time_limit: Option<Duration>,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_assignments: 100_000_000,
            time_limit: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {needed} assignments needed, {limit} allowed")]
    BudgetExceeded { needed: u128, limit: u128 },
    #[error("oracle budget exceeded: time limit of {0:?} reached")]
    TimeExceeded(Duration),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

const CHUNKS: u128 = 256;
const CLOCK_EVERY: u64 = 4096;

/// Lowest-cost assignment over the full product space, first one wins on ties.
fn exhaustive_min<F>(
    radices: &[usize],
    budget: &OracleBudget,
    par: Parallelism,
    eval: F,
) -> Result<Option<(Vec<usize>, f64, u128)>, OracleError>
where
    F: Fn(&[usize]) -> Option<f64> + Sync + Send,
{
    let total = radices
        .iter()
        .try_fold(1u128, |acc, &r| acc.checked_mul(r as u128))
        .unwrap_or(u128::MAX);
    if total > budget.max_assignments {
        return Err(OracleError::BudgetExceeded {
            needed: total,
            limit: budget.max_assignments,
        });
    }
    if total == 0 {
        return Ok(None);
    }
    let started = Instant::now();
    let aborted = AtomicBool::new(false);
    let chunk_len = total.div_ceil(CHUNKS).max(1);
    let chunks = total.div_ceil(chunk_len) as usize;

    let winners: Vec<Option<(u128, f64)>> = exec::map_range(chunks, par, |chunk| {
        let start = chunk as u128 * chunk_len;
        let end = (start + chunk_len).min(total);
        let mut digits = decode(start, radices);
        let mut best: Option<(u128, f64)> = None;
        for (steps, index) in (start..end).enumerate() {
            if (steps as u64).is_multiple_of(CLOCK_EVERY) {
                if aborted.load(Ordering::Relaxed) {
                    return None;
                }
                if budget.time_limit.is_some_and(|limit| started.elapsed() > limit) {
                    aborted.store(true, Ordering::Relaxed);
                    return None;
                }
            }
            if let Some(cost) = eval(&digits) {
                if best.is_none_or(|(_, b)| cost < b) {
                    best = Some((index, cost));
                }
            }
            increment(&mut digits, radices);
        }
        best
    });
    if aborted.load(Ordering::Relaxed) {
        return Err(OracleError::TimeExceeded(budget.time_limit.unwrap_or_default()));
    }
    let mut best: Option<(u128, f64)> = None;
    for (index, cost) in winners.into_iter().flatten() {
        if best.is_none_or(|(_, b)| cost < b) {
            best = Some((index, cost));
        }
    }
    Ok(best.map(|(index, cost)| (decode(index, radices), cost, total)))
}

fn decode(mut index: u128, radices: &[usize]) -> Vec<usize> {
    radices
        .iter()
        .map(|&r| {
            let d = (index % r as u128) as usize;
            index /= r as u128;
            d
        })
        .collect()
}

fn increment(digits: &mut [usize], radices: &[usize]) {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return;
        }
        *d = 0;
    }
}

fn allowed_configs(instance: &Instance, caps: &[usize]) -> Vec<Vec<Config>> {
    caps.iter()
        .map(|&cap| model::enumerate_configs(instance.num_clients(), Some(cap)))
        .collect()
}

fn check_size(instance: &Instance, limit: usize) -> Result<(), SolveError> {
    if instance.num_clients() > limit {
        return Err(SolveError::TooManyClients {
            clients: instance.num_clients(),
            guard: limit,
        });
    }
    Ok(())
}

/// Exact data placement optimum by exhaustive enumeration.
pub fn oracle_dp(
    instance: &Instance,
    replica_caps: Option<&[usize]>,
    budget: &OracleBudget,
    par: Parallelism,
) -> Result<Outcome<Solution>, OracleError> {
    model::ensure_valid(instance)?;
    check_size(instance, model::MAX_BITMASK_CLIENTS)?;
    let caps = model::check_replica_caps(instance, replica_caps)?;
    let units = UnitProblem::exact(instance)?;
    let table = CostTable::new(instance);
    let configs = allowed_configs(instance, &caps);
    let radices: Vec<usize> = configs.iter().map(Vec::len).collect();
    let m = instance.num_clients();

    let eval = |digits: &[usize]| {
        let mut loads = [0u64; model::MAX_BITMASK_CLIENTS];
        for (o, &d) in digits.iter().enumerate() {
            let mut bits = configs[o][d].bits();
            while bits != 0 {
                loads[bits.trailing_zeros() as usize] += units.lengths[o];
                bits &= bits - 1;
            }
        }
        if loads[..m].iter().zip(&units.capacities).any(|(l, c)| l > c) {
            return None;
        }
        let mut total = 0.0;
        for (o, &d) in digits.iter().enumerate() {
            total += table.costs[o][CostTable::index_of(configs[o][d])];
        }
        Some(total)
    };

    let Some((digits, cost, enumerated)) = exhaustive_min(&radices, budget, par, eval)? else {
        return Ok(Outcome::Infeasible);
    };
    let assignment: Vec<Config> = digits.iter().enumerate().map(|(o, &d)| configs[o][d]).collect();
    let score = model::score_solution(instance, &assignment, &Rational::zero())?;
    debug_assert_eq!(score.total_cost.to_bits(), cost.to_bits());
    Ok(Outcome::Solved(Solution {
        assignment,
        total_cost: score.total_cost,
        loads: score.loads,
        states_visited: enumerated.min(u64::MAX as u128) as u64,
    }))
}

/// Exact page placement optimum by exhaustive enumeration of `(c, rho)` per object.
pub fn oracle_pp(instance: &Instance, budget: &OracleBudget, par: Parallelism) -> Result<Outcome<PpSolution>, OracleError> {
    model::ensure_valid(instance)?;
    check_size(instance, page_placement::MAX_PP_CLIENTS)?;
    let units = UnitProblem::exact(instance)?;
    let m = instance.num_clients();
    let limits: Vec<u32> = (0..m).map(|j| instance.client_limit(j)).collect();
    let options: Vec<_> = (0..instance.num_objects())
        .map(|o| page_placement::pp_options(instance, o))
        .collect();
    let radices: Vec<usize> = options.iter().map(Vec::len).collect();
    let row = (1u64 << m) - 1;

    let eval = |digits: &[usize]| {
        let mut loads = [0u64; page_placement::MAX_PP_CLIENTS];
        let mut union = 0u64;
        for (o, &d) in digits.iter().enumerate() {
            let opt = &options[o][d];
            let mut bits = opt.config.bits();
            while bits != 0 {
                loads[bits.trailing_zeros() as usize] += units.lengths[o];
                bits &= bits - 1;
            }
            union |= opt.rho;
        }
        if loads[..m].iter().zip(&units.capacities).any(|(l, c)| l > c) {
            return None;
        }
        if (0..m).any(|i| ((union >> (i * m)) & row).count_ones() > limits[i]) {
            return None;
        }
        let mut total = 0.0;
        for (o, &d) in digits.iter().enumerate() {
            total += options[o][d].cost;
        }
        Some(total)
    };

    let Some((digits, cost, enumerated)) = exhaustive_min(&radices, budget, par, eval)? else {
        return Ok(Outcome::Infeasible);
    };
    let assignment: Vec<(Config, ConnectionPattern)> = digits
        .iter()
        .enumerate()
        .map(|(o, &d)| (options[o][d].config, options[o][d].pattern.clone()))
        .collect();
    let score = page_placement::score_pp(instance, &assignment, &Rational::zero())?;
    debug_assert_eq!(score.total_cost.to_bits(), cost.to_bits());
    Ok(Outcome::Solved(PpSolution {
        assignment,
        total_cost: score.total_cost,
        loads: score.loads,
        serve_counts: score.serve_counts,
        states_visited: enumerated.min(u64::MAX as u128) as u64,
        layer_states: Vec::new(),
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleSample {
    pub assignments: Vec<Vec<Config>>,
    /// No assignment fits the capacities.
    pub infeasible: bool,
    /// Rejection sampling was too slow and the feasible set was enumerated instead.
    pub enumerated: bool,
}

/// Draws `count` capacity-feasible assignments, deterministically for a given seed.
///
/// Each draw picks a uniformly random configuration per object and keeps it
/// if it fits. When fewer than `count` draws succeed within the attempt
/// budget, all feasible assignments are enumerated and sampled from directly.
pub fn sample_feasible_assignments(
    instance: &Instance,
    count: usize,
    seed: u64,
    budget: &OracleBudget,
) -> Result<FeasibleSample, OracleError> {
    model::ensure_valid(instance)?;
    check_size(instance, model::MAX_BITMASK_CLIENTS)?;
    let units = UnitProblem::exact(instance)?;
    let configs = model::enumerate_configs(instance.num_clients(), None);
    let n = instance.num_objects();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let max_attempts = 1_000usize.max(200 * count);
    let mut found = Vec::with_capacity(count);
    for _ in 0..max_attempts {
        if found.len() == count {
            break;
        }
        let candidate: Vec<Config> = (0..n).map(|_| configs[rng.random_range(0..configs.len())]).collect();
        if units.fits(&candidate) {
            found.push(candidate);
        }
    }
    if found.len() == count {
        return Ok(FeasibleSample {
            assignments: found,
            infeasible: false,
            enumerated: false,
        });
    }

    let radices = vec![configs.len(); n];
    let total = (configs.len() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > budget.max_assignments {
        return Err(OracleError::BudgetExceeded {
            needed: total,
            limit: budget.max_assignments,
        });
    }
    let mut all = Vec::new();
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let candidate: Vec<Config> = digits.iter().map(|&d| configs[d]).collect();
        if units.fits(&candidate) {
            all.push(candidate);
        }
        increment(&mut digits, &radices);
    }
    if all.is_empty() {
        return Ok(FeasibleSample {
            assignments: Vec::new(),
            infeasible: true,
            enumerated: true,
        });
    }
    let assignments = (0..count).map(|_| all[rng.random_range(0..all.len())].clone()).collect();
    Ok(FeasibleSample {
        assignments,
        infeasible: false,
        enumerated: true,
    })
}
