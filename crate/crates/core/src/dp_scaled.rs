//! Length scaling for non-uniform objects.
//!
//! Lengths and capacities are divided by `alpha = epsilon * l_max / N` and
//! floored, the resulting integer instance is solved exactly with the
//! original costs, and the assignment is reported under original lengths.
//! Any assignment feasible for the original capacities stays feasible after
//! flooring, so the returned cost never exceeds the true optimum, while
//! every client may end up over capacity by at most `epsilon * l_max`.
//! If the scaled program is infeasible the original one is too.
//!
//! All flooring happens on exact rationals.

use num_traits::Zero;

use crate::dp_uniform;
use crate::error::SolveError;
use crate::model::{self, Config, Instance, Solution, UnitProblem};
use crate::rational::{self, Rational};
use crate::SolverOptions;

/// Integer view of an instance produced by length scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledInstance {
    pub alpha: Rational,
    pub epsilon: Rational,
    /// Capacities after capping at `N * l_max`, before scaling.
    pub capped_capacities: Vec<Rational>,
    pub scaled_lengths: Vec<u64>,
    pub scaled_capacities: Vec<u64>,
}

impl ScaledInstance {
    pub fn units(&self) -> UnitProblem {
        UnitProblem {
            unit: self.alpha.clone(),
            lengths: self.scaled_lengths.clone(),
            capacities: self.scaled_capacities.clone(),
        }
    }
}

pub(crate) fn check_epsilon(epsilon: &Rational) -> Result<(), SolveError> {
    if *epsilon <= Rational::zero() {
        return Err(SolveError::InvalidEpsilon(rational::format_exact(epsilon)));
    }
    Ok(())
}

/// Allowed per-client overload, `epsilon * l_max`.
pub fn blowup_bound(instance: &Instance, epsilon: &Rational) -> Rational {
    epsilon * instance.l_max()
}

pub fn scale(instance: &Instance, epsilon: &Rational) -> Result<ScaledInstance, SolveError> {
    check_epsilon(epsilon)?;
    model::ensure_valid(instance)?;
    let n = rational::from_u64(instance.num_objects() as u64);
    let l_max = instance.l_max();
    let alpha = epsilon * &l_max / &n;
    let cap_bound = &n * &l_max;

    let floor_div = |x: &Rational| rational::floor_to_u64(&(x / &alpha)).ok_or(SolveError::UnitOverflow);
    let scaled_lengths = instance
        .objects
        .iter()
        .map(|o| floor_div(&o.length))
        .collect::<Result<Vec<_>, _>>()?;
    let capped_capacities: Vec<Rational> = instance
        .clients
        .iter()
        .map(|c| c.capacity.clone().min(cap_bound.clone()))
        .collect();
    let scaled_capacities = capped_capacities
        .iter()
        .map(floor_div)
        .collect::<Result<Vec<_>, _>>()?;

    debug_assert!(scaled_capacities
        .iter()
        .all(|&c| rational::from_u64(c) <= &n * &n / epsilon));
    Ok(ScaledInstance {
        alpha,
        epsilon: epsilon.clone(),
        capped_capacities,
        scaled_lengths,
        scaled_capacities,
    })
}

/// A scaled solve together with its scaled-side audit trail.
#[derive(Debug, Clone, PartialEq)]
pub struct NuSolution {
    /// Cost and loads under the original lengths.
    pub solution: Solution,
    pub scaled: ScaledInstance,
    /// Loads in scaled units; each is within the matching scaled capacity.
    pub scaled_loads: Vec<u64>,
    pub blowup_bound: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ScaledOutcome<S> {
    Solved(S),
    /// The scaled program has no solution, which proves the original has none.
    CertifiedInfeasible,
}

impl<S> ScaledOutcome<S> {
    pub fn solved(self) -> Option<S> {
        match self {
            ScaledOutcome::Solved(s) => Some(s),
            ScaledOutcome::CertifiedInfeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, ScaledOutcome::CertifiedInfeasible)
    }
}

pub fn solve_nu(
    instance: &Instance,
    epsilon: &Rational,
    replica_caps: Option<&[usize]>,
    opts: &SolverOptions,
) -> Result<ScaledOutcome<NuSolution>, SolveError> {
    dp_uniform::check_guard(instance, opts)?;
    let scaled = scale(instance, epsilon)?;
    let units = dp_uniform::normalize_capacities(&scaled.units());
    match dp_uniform::solve_units(instance, &units, replica_caps, opts)? {
        model::Outcome::Infeasible => Ok(ScaledOutcome::CertifiedInfeasible),
        model::Outcome::Solved(solution) => {
            let scaled_loads = scaled.units().loads(&solution.assignment);
            debug_assert!(scaled_loads.iter().zip(&scaled.scaled_capacities).all(|(l, c)| l <= c));
            Ok(ScaledOutcome::Solved(NuSolution {
                solution,
                blowup_bound: blowup_bound(instance, epsilon),
                scaled,
                scaled_loads,
            }))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlackReport {
    /// `loads[j] - C_j` per client, exact.
    pub slacks: Vec<Rational>,
    pub bound: Rational,
}

impl SlackReport {
    pub fn max_slack(&self) -> Rational {
        self.slacks.iter().max().cloned().unwrap_or_default()
    }

    pub fn slacks_f64(&self) -> Vec<f64> {
        self.slacks.iter().map(rational::to_f64).collect()
    }
}

/// Absolute tolerance applied on top of the overload bound.
pub fn blowup_tolerance() -> Rational {
    Rational::new(1.into(), 1_000_000_000.into())
}

/// Checks that no client is over capacity by more than `epsilon * l_max` (plus `1e-9`).
pub fn verify_blowup(instance: &Instance, epsilon: &Rational, assignment: &[Config]) -> Result<SlackReport, SolveError> {
    check_epsilon(epsilon)?;
    model::check_assignment_shape(instance, assignment)?;
    let loads = model::loads_of(instance, assignment);
    let slacks: Vec<Rational> = loads
        .iter()
        .zip(&instance.clients)
        .map(|(load, client)| load - &client.capacity)
        .collect();
    let bound = blowup_bound(instance, epsilon);
    let limit = &bound + blowup_tolerance();
    if let Some((client, slack)) = slacks.iter().enumerate().find(|(_, s)| **s > limit) {
        return Err(SolveError::BlowupExceeded {
            client,
            slack: rational::format_exact(slack),
            bound: rational::format_exact(&bound),
        });
    }
    Ok(SlackReport { slacks, bound })
}

/// Whether `assignment` satisfies the scaled capacity constraints.
///
/// Holds for every assignment that fits the original capacities; an
/// assignment that does not fit may go either way.
pub fn check_lemma1(instance: &Instance, epsilon: &Rational, assignment: &[Config]) -> Result<bool, SolveError> {
    model::check_assignment_shape(instance, assignment)?;
    let scaled = scale(instance, epsilon)?;
    Ok(scaled.units().fits(assignment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::tightness;
    use crate::model::fixtures::*;

    fn tight10() -> Instance {
        tightness(10, &q("0.5"), &q("1/9")).unwrap()
    }

    #[test]
    fn tightness_scaling_values() {
        let scaled = scale(&tight10(), &q("0.5")).unwrap();
        assert_eq!(scaled.alpha, q("0.1"));
        assert_eq!(&scaled.scaled_lengths[..9], &[0; 9]);
        assert_eq!(scaled.scaled_lengths[9], 20);
        assert_eq!(scaled.scaled_capacities, vec![10, 20]);
    }

    #[test]
    fn integer_lengths_with_unit_alpha_are_unchanged() {
        let mut inst = two_client();
        inst.objects.push(inst.objects[0].clone());
        inst.objects[1].length = q("3");
        inst.clients[0].capacity = q("4");
        inst.clients[1].capacity = q("0");
        // alpha = eps * l_max / N = 1 when eps = N / l_max = 2/3.
        let scaled = scale(&inst, &q("2/3")).unwrap();
        assert_eq!(scaled.alpha, q("1"));
        assert_eq!(scaled.scaled_lengths, vec![1, 3]);
        assert_eq!(scaled.scaled_capacities, vec![4, 0]);
    }

    #[test]
    fn rejects_non_positive_epsilon() {
        assert!(matches!(scale(&tight10(), &q("0")), Err(SolveError::InvalidEpsilon(_))));
        assert!(matches!(scale(&tight10(), &q("-1")), Err(SolveError::InvalidEpsilon(_))));
    }

    #[test]
    fn tightness_overload_is_one_minus_two_over_n() {
        let inst = tight10();
        let eps = q("0.5");
        let nu = solve_nu(&inst, &eps, None, &SolverOptions::default())
            .unwrap()
            .solved()
            .unwrap();
        let all = Config::from_members([0, 1]).unwrap();
        let second = Config::from_members([1]).unwrap();
        assert!(nu.solution.assignment[..9].iter().all(|&c| c == all));
        assert_eq!(nu.solution.assignment[9], second);
        let report = verify_blowup(&inst, &eps, &nu.solution.assignment).unwrap();
        assert_eq!(report.slacks[1], q("0.8"));
        assert_eq!(report.max_slack(), q("0.8"));
        assert_eq!(report.bound, q("1"));
        assert_eq!(nu.blowup_bound, q("1"));
    }

    #[test]
    fn exact_solutions_have_no_slack() {
        let inst = two_client();
        let sol = dp_uniform::solve(&inst, None, &SolverOptions::default())
            .unwrap()
            .solved()
            .unwrap();
        let report = verify_blowup(&inst, &q("0.5"), &sol.assignment).unwrap();
        assert!(report.slacks.iter().all(|s| *s <= Rational::zero()));
    }

    #[test]
    fn overload_beyond_bound_is_an_error() {
        let mut inst = two_client();
        inst.clients[0].capacity = q("0");
        let all = Config::from_members([0, 1]).unwrap();
        // Overload of 1 on client 0; bound is eps * 1.
        assert!(verify_blowup(&inst, &q("1"), &[all]).is_ok());
        assert!(matches!(
            verify_blowup(&inst, &q("0.5"), &[all]),
            Err(SolveError::BlowupExceeded { client: 0, .. })
        ));
    }

    #[test]
    fn feasible_single_object_fits_after_scaling() {
        let inst = two_client();
        for bits in 1..4 {
            let c = Config::from_bits(bits).unwrap();
            assert!(check_lemma1(&inst, &q("0.3"), &[c]).unwrap());
        }
    }

    #[test]
    fn infeasible_scaled_program_is_certified() {
        let mut inst = two_client();
        inst.clients[0].capacity = q("0");
        inst.clients[1].capacity = q("0.5");
        let out = solve_nu(&inst, &q("0.25"), None, &SolverOptions::default()).unwrap();
        assert!(out.is_infeasible());
    }
}
