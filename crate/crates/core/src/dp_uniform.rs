//! Exact dynamic program over remaining-capacity vectors.
//!
//! For objects `o_1..o_K` and remaining capacities `r`, the optimal cost
//! of placing the first `k` objects is
//!
//! ```text
//! f_k(r) = min over c with r - l_k * profile(c) >= 0 of cost(o_k, c) + f_{k-1}(r - l_k * profile(c))
//! f_0(r) = 0
//! ```
//!
//! and the answer is `f_K(C)`. Only the capacity vectors reachable from `C`
//! are materialized: a forward pass collects each layer's reachable keys,
//! then a backward pass fills values layer by layer keeping two value
//! layers alive. Argmin choices are kept for every layer so the assignment
//! can be rebuilt from `C` downwards.
//!
//! Ties go to the first configuration in ascending bitmask order, which
//! makes the returned assignment the lexicographically smallest optimum
//! when compared from the last object to the first.

use crate::error::SolveError;
use crate::exec::{self, Parallelism};
use crate::model::{self, Config, CostTable, Instance, Outcome, Solution, UnitProblem};
use crate::rational::Rational;
use crate::state::{LayerIndex, MixedRadix};
use crate::SolverOptions;

/// Caps every capacity at the total length of all objects.
///
/// A client never stores the same object twice, so capacity beyond the
/// total length is unusable and dropping it leaves the set of feasible
/// assignments unchanged.
pub fn normalize_capacities(units: &UnitProblem) -> UnitProblem {
    let total: u64 = units.lengths.iter().sum();
    UnitProblem {
        unit: units.unit.clone(),
        lengths: units.lengths.clone(),
        capacities: units.capacities.iter().map(|&c| c.min(total)).collect(),
    }
}

pub(crate) fn check_guard(instance: &Instance, opts: &SolverOptions) -> Result<(), SolveError> {
    let m = instance.num_clients();
    if m > opts.max_clients || m > model::MAX_BITMASK_CLIENTS {
        return Err(SolveError::TooManyClients {
            clients: m,
            guard: opts.max_clients.min(model::MAX_BITMASK_CLIENTS),
        });
    }
    Ok(())
}

/// Solves an instance exactly, with optional per-object caps on the replica count.
///
/// Lengths are converted to integer units without loss (see
/// [`UnitProblem::exact`]), so any rational lengths are accepted; the state
/// space grows with the capacities measured in those units.
pub fn solve(
    instance: &Instance,
    replica_caps: Option<&[usize]>,
    opts: &SolverOptions,
) -> Result<Outcome<Solution>, SolveError> {
    model::ensure_valid(instance)?;
    check_guard(instance, opts)?;
    let units = normalize_capacities(&UnitProblem::exact(instance)?);
    solve_units(instance, &units, replica_caps, opts)
}

/// Runs the DP on a given integer-unit view while charging the instance's own costs.
///
/// `units` may come from a lossy transform (see [`crate::dp_scaled`]);
/// objects whose unit length is zero take no capacity and are placed on
/// their cheapest allowed configuration outside the DP.
pub fn solve_units(
    instance: &Instance,
    units: &UnitProblem,
    replica_caps: Option<&[usize]>,
    opts: &SolverOptions,
) -> Result<Outcome<Solution>, SolveError> {
    check_guard(instance, opts)?;
    let caps = model::check_replica_caps(instance, replica_caps)?;
    let table = CostTable::new(instance);
    let n = instance.num_objects();

    let allowed: Vec<Vec<usize>> = caps
        .iter()
        .map(|&cap| {
            (0..table.configs.len())
                .filter(|&ci| table.configs[ci].len() <= cap)
                .collect()
        })
        .collect();

    let mut assignment: Vec<Option<Config>> = vec![None; n];
    let mut dp_objects = Vec::new();
    for o in 0..n {
        if units.lengths[o] == 0 {
            let mut best: Option<(f64, usize)> = None;
            for &ci in &allowed[o] {
                let cost = table.costs[o][ci];
                if best.is_none_or(|(b, _)| cost < b) {
                    best = Some((cost, ci));
                }
            }
            assignment[o] = best.map(|(_, ci)| table.configs[ci]);
        } else {
            dp_objects.push(o);
        }
    }

    let layers: Vec<LayerOptions> = dp_objects
        .iter()
        .map(|&o| LayerOptions {
            length: units.lengths[o],
            options: allowed[o]
                .iter()
                .map(|&ci| (table.configs[ci], table.costs[o][ci]))
                .collect(),
        })
        .collect();

    let engine = Engine::new(&units.capacities, opts)?;
    let Some(run) = engine.run(&layers, opts.parallelism) else {
        return Ok(Outcome::Infeasible);
    };
    for (&o, c) in dp_objects.iter().zip(run.configs) {
        assignment[o] = Some(c);
    }
    let assignment: Vec<Config> = assignment.into_iter().map(|c| c.expect("every object placed")).collect();

    let score = model::score_solution(instance, &assignment, &Rational::default())?;
    if dp_objects.len() == n {
        debug_assert_eq!(score.total_cost.to_bits(), run.cost.to_bits());
    }
    Ok(Outcome::Solved(Solution {
        assignment,
        total_cost: score.total_cost,
        loads: score.loads,
        states_visited: run.states_visited,
    }))
}

pub(crate) struct LayerOptions {
    pub length: u64,
    /// Allowed configurations with their costs, in ascending bitmask order.
    pub options: Vec<(Config, f64)>,
}

pub(crate) struct EngineRun {
    pub configs: Vec<Config>,
    pub cost: f64,
    pub states_visited: u64,
}

pub(crate) struct Engine {
    space: MixedRadix,
    start: Vec<u64>,
    dense_budget: usize,
}

const NO_CHOICE: u16 = u16::MAX;

impl Engine {
    pub fn new(capacities: &[u64], opts: &SolverOptions) -> Result<Engine, SolveError> {
        Ok(Engine {
            space: MixedRadix::new(capacities)?,
            start: capacities.to_vec(),
            dense_budget: opts.dense_budget,
        })
    }

    /// Reachable keys per layer; `keys[k]` holds states of `f_k`.
    fn reachable(&self, layers: &[LayerOptions], par: Parallelism) -> Vec<Vec<u128>> {
        let m = self.start.len();
        let mut keys = vec![Vec::new(); layers.len() + 1];
        keys[layers.len()] = vec![self.space.encode(&self.start)];
        for k in (1..=layers.len()).rev() {
            let layer = &layers[k - 1];
            let offsets: Vec<u128> = layer
                .options
                .iter()
                .map(|(c, _)| self.space.offset(c.bits(), layer.length))
                .collect();
            let mut next = exec::flat_map_slice(&keys[k], par, |&key| {
                let mut r = vec![0u64; m];
                self.space.decode_into(key, &mut r);
                layer
                    .options
                    .iter()
                    .zip(&offsets)
                    .filter(|((c, _), _)| fits(&r, *c, layer.length))
                    .map(|(_, &off)| key - off)
                    .collect()
            });
            exec::sort_dedup(&mut next, par);
            keys[k - 1] = next;
        }
        keys
    }

    pub fn run(&self, layers: &[LayerOptions], par: Parallelism) -> Option<EngineRun> {
        let m = self.start.len();
        let keys = self.reachable(layers, par);
        let mut values: Vec<Option<f64>> = vec![Some(0.0); keys[0].len()];
        let mut choices: Vec<Vec<u16>> = Vec::with_capacity(layers.len());
        let mut states_visited = 0u64;

        for k in 1..=layers.len() {
            let layer = &layers[k - 1];
            let prev_index = LayerIndex::build(&keys[k - 1], self.space.size(), self.dense_budget);
            let offsets: Vec<u128> = layer
                .options
                .iter()
                .map(|(c, _)| self.space.offset(c.bits(), layer.length))
                .collect();
            let prev_values = &values;
            let evaluated: Vec<(Option<f64>, u16)> = exec::map_slice(&keys[k], par, |&key| {
                let mut r = vec![0u64; m];
                self.space.decode_into(key, &mut r);
                let mut best: Option<f64> = None;
                let mut choice = NO_CHOICE;
                for (idx, ((c, cost), &off)) in layer.options.iter().zip(&offsets).enumerate() {
                    if !fits(&r, *c, layer.length) {
                        continue;
                    }
                    let pos = prev_index.get(key - off).expect("reachable predecessor");
                    if let Some(rest) = prev_values[pos] {
                        let candidate = cost + rest;
                        if best.is_none_or(|b| candidate < b) {
                            best = Some(candidate);
                            choice = idx as u16;
                        }
                    }
                }
                (best, choice)
            });
            states_visited += keys[k].len() as u64;
            values = evaluated.iter().map(|&(v, _)| v).collect();
            choices.push(evaluated.into_iter().map(|(_, c)| c).collect());
        }

        let cost = values[0]?;
        let mut key = keys[layers.len()][0];
        let mut configs = vec![None; layers.len()];
        for k in (1..=layers.len()).rev() {
            let pos = keys[k].binary_search(&key).expect("state on optimal path");
            let idx = choices[k - 1][pos];
            debug_assert_ne!(idx, NO_CHOICE);
            let layer = &layers[k - 1];
            let (c, _) = layer.options[idx as usize];
            key -= self.space.offset(c.bits(), layer.length);
            configs[k - 1] = Some(c);
        }
        Some(EngineRun {
            configs: configs.into_iter().map(Option::unwrap).collect(),
            cost,
            states_visited,
        })
    }
}

fn fits(r: &[u64], c: Config, length: u64) -> bool {
    c.members().all(|j| r[j] >= length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;

    fn opts() -> SolverOptions {
        SolverOptions::default()
    }

    fn cfg(members: &[usize]) -> Config {
        Config::from_members(members.iter().copied()).unwrap()
    }

    #[test]
    fn normalization_examples() {
        let units = UnitProblem {
            unit: q("1"),
            lengths: vec![1; 5],
            capacities: vec![100, 3],
        };
        assert_eq!(normalize_capacities(&units).capacities, vec![5, 3]);

        let units = UnitProblem {
            unit: q("1"),
            lengths: vec![2, 3],
            capacities: vec![99],
        };
        let once = normalize_capacities(&units);
        assert_eq!(once.capacities, vec![5]);
        assert_eq!(normalize_capacities(&once), once);
    }

    #[test]
    fn single_client_takes_everything() {
        let inst = unit_instance(
            &[2],
            &[vec![3.0], vec![1.0]],
            &[vec![0.0], vec![0.0]],
            &[vec![0.0]],
        );
        let sol = solve(&inst, None, &opts()).unwrap().solved().unwrap();
        assert_eq!(sol.assignment, vec![cfg(&[0]), cfg(&[0])]);
        assert_eq!(sol.total_cost, 0.0);
        assert_eq!(sol.loads, vec![q("2")]);
    }

    #[test]
    fn pigeonhole_is_infeasible() {
        let inst = unit_instance(
            &[1, 1],
            &vec![vec![1.0, 1.0]; 3],
            &vec![vec![0.0, 0.0]; 3],
            &[vec![0.0, 1.0], vec![1.0, 0.0]],
        );
        assert!(solve(&inst, None, &opts()).unwrap().is_infeasible());
    }

    #[test]
    fn two_client_example_prefers_full_replication() {
        let inst = two_client();
        let sol = solve(&inst, None, &opts()).unwrap().solved().unwrap();
        assert_eq!(sol.assignment, vec![cfg(&[0, 1])]);
        assert_eq!(sol.total_cost, 10.0);
    }

    #[test]
    fn replica_cap_forces_single_copy() {
        let inst = two_client();
        let sol = solve(&inst, Some(&[1]), &opts()).unwrap().solved().unwrap();
        // {0}: 5*2 + 4 = 14, {1}: 3*2 + 6 = 12.
        assert_eq!(sol.assignment, vec![cfg(&[1])]);
        assert_eq!(sol.total_cost, 12.0);
        assert!(matches!(
            solve(&inst, Some(&[0]), &opts()),
            Err(SolveError::InvalidReplicaCaps(_))
        ));
        assert!(matches!(
            solve(&inst, Some(&[1, 1]), &opts()),
            Err(SolveError::InvalidReplicaCaps(_))
        ));
    }

    #[test]
    fn guard_rejects_large_networks() {
        let m = 9;
        let inst = unit_instance(
            &vec![1; m],
            &[vec![1.0; m]],
            &[vec![0.0; m]],
            &vec![vec![0.0; m]; m],
        );
        let err = solve(&inst, None, &opts()).unwrap_err();
        assert_eq!(err, SolveError::TooManyClients { clients: 9, guard: 8 });
        assert!(err.to_string().contains("--max-clients"));
        let relaxed = SolverOptions {
            max_clients: 9,
            ..opts()
        };
        assert!(solve(&inst, None, &relaxed).is_ok());
    }

    #[test]
    fn ties_resolve_to_smallest_bitmask() {
        // Zero costs everywhere: every configuration ties, so {0} must win.
        let inst = unit_instance(&[1, 1], &[vec![1.0, 0.0]], &[vec![0.0, 0.0]], &vec![vec![0.0; 2]; 2]);
        let sol = solve(&inst, None, &opts()).unwrap().solved().unwrap();
        assert_eq!(sol.assignment, vec![cfg(&[0])]);
    }

    #[test]
    fn zero_length_objects_pay_installation() {
        let inst = two_client();
        let units = UnitProblem {
            unit: q("1"),
            lengths: vec![0],
            capacities: vec![0, 0],
        };
        let sol = solve_units(&inst, &units, None, &opts()).unwrap().solved().unwrap();
        // Replicating everywhere would cost 10; {1} costs 3*2 + 6 = 12; {0} costs 14.
        assert_eq!(sol.assignment, vec![cfg(&[0, 1])]);
        let mut cheap_remote = inst.clone();
        cheap_remote.objects[0].install_costs = vec![100.0, 1.0];
        let sol = solve_units(&cheap_remote, &units, None, &opts()).unwrap().solved().unwrap();
        assert_eq!(sol.assignment, vec![cfg(&[1])]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let inst = unit_instance(
            &[2, 3, 1],
            &[
                vec![1.0, 4.0, 2.0],
                vec![3.0, 0.0, 5.0],
                vec![2.0, 2.0, 2.0],
                vec![7.0, 1.0, 0.0],
            ],
            &vec![vec![1.0, 2.0, 3.0]; 4],
            &[vec![0.0, 3.0, 1.0], vec![2.0, 0.0, 4.0], vec![5.0, 1.0, 0.0]],
        );
        let seq = SolverOptions {
            parallelism: Parallelism::Sequential,
            ..opts()
        };
        let sparse = SolverOptions {
            dense_budget: 0,
            ..opts()
        };
        let a = solve(&inst, None, &seq).unwrap();
        let b = solve(&inst, None, &opts()).unwrap();
        let c = solve(&inst, None, &sparse).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}
