//! Problem data model shared by every solver: instances, configurations,
//! the per-object placement cost and independent re-scoring of solutions.
//!
//! Client and object indices are zero-based. `distances[i][j]` is the
//! distance from client `j` to client `i`, i.e. the price per unit of
//! demand and length paid by `j` when it reads an object stored at `i`.
//! The matrix may be asymmetric and need not obey any triangle inequality.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::rational::{self, Rational};

/// Hard ceiling on the number of clients a configuration bitmask can address.
pub const MAX_BITMASK_CLIENTS: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct Client {
    pub capacity: Rational,
    pub client_limit: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectSpec {
    pub length: Rational,
    pub demands: Vec<f64>,
    pub install_costs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub clients: Vec<Client>,
    pub objects: Vec<ObjectSpec>,
    pub distances: Vec<Vec<f64>>,
}

impl Instance {
    pub fn num_clients(&self) -> usize {
        self.clients.len()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn l_max(&self) -> Rational {
        self.objects
            .iter()
            .map(|o| o.length.clone())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_length(&self) -> Rational {
        self.objects.iter().map(|o| &o.length).sum()
    }

    pub fn is_uniform_length(&self) -> bool {
        self.objects.windows(2).all(|w| w[0].length == w[1].length)
    }

    pub fn has_client_limits(&self) -> bool {
        self.clients.iter().any(|c| c.client_limit.is_some())
    }

    /// Effective client limit; an absent limit is the largest meaningful one.
    pub fn client_limit(&self, j: usize) -> u32 {
        let m = self.num_clients() as u32;
        self.clients[j]
            .client_limit
            .unwrap_or(m.saturating_sub(1))
            .min(m.saturating_sub(1))
    }

    /// Same instance with the object list reordered; `order[k]` is the old index of new object `k`.
    pub fn permute_objects(&self, order: &[usize]) -> Instance {
        Instance {
            clients: self.clients.clone(),
            objects: order.iter().map(|&o| self.objects[o].clone()).collect(),
            distances: self.distances.clone(),
        }
    }
}

/// A non-empty set of clients holding replicas of one object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Config(u32);

impl Config {
    /// Builds a configuration from a raw bitmask. Bit `j` set means client `j` is a member.
    pub fn from_bits(bits: u32) -> Option<Config> {
        (bits != 0).then_some(Config(bits))
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Option<Config> {
        let mut bits = 0u32;
        for j in members {
            if j >= 32 {
                return None;
            }
            bits |= 1 << j;
        }
        Config::from_bits(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, j: usize) -> bool {
        j < 32 && self.0 & (1 << j) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |&j| bits & (1 << j) != 0)
    }

    /// Members as a 0/1 vector of length `m`.
    pub fn profile(self, m: usize) -> Vec<u8> {
        (0..m).map(|j| self.contains(j) as u8).collect()
    }

    pub fn fits(self, m: usize) -> bool {
        m >= 32 || self.0 >> m == 0
    }
}

impl fmt::Display for Config {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let members: Vec<String> = self.members().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", members.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub field: String,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.rule)
    }
}

pub fn validate(instance: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |field: String, rule: &str| {
        out.push(Violation {
            field,
            rule: rule.to_string(),
        })
    };
    let m = instance.num_clients();
    if m == 0 {
        push("clients".into(), "at least one client is required");
    }
    if instance.objects.is_empty() {
        push("objects".into(), "at least one object is required");
    }

    for (j, client) in instance.clients.iter().enumerate() {
        if client.capacity.is_negative() {
            push(format!("clients[{j}].capacity"), "capacity must be non-negative");
        }
        if let Some(k) = client.client_limit {
            if m > 0 && k as usize > m - 1 {
                push(
                    format!("clients[{j}].client_limit"),
                    "client limit must not exceed the number of other clients",
                );
            }
        }
    }

    for (o, obj) in instance.objects.iter().enumerate() {
        if !obj.length.is_positive() {
            push(format!("objects[{o}].length"), "length must be positive");
        }
        for (name, values) in [("demands", &obj.demands), ("install_costs", &obj.install_costs)] {
            if values.len() != m {
                push(format!("objects[{o}].{name}"), "must have one entry per client");
            }
            for (j, v) in values.iter().enumerate() {
                if !v.is_finite() || *v < 0.0 {
                    push(format!("objects[{o}].{name}[{j}]"), "must be a finite non-negative number");
                }
            }
        }
        if !obj.demands.iter().any(|&w| w > 0.0) {
            push(format!("objects[{o}].demands"), "object requested by no user");
        }
    }

    if instance.distances.len() != m {
        push("distances".into(), "distance matrix must have one row per client");
    }
    for (i, row) in instance.distances.iter().enumerate() {
        if row.len() != m {
            push(format!("distances[{i}]"), "distance matrix must be square");
        }
        for (j, d) in row.iter().enumerate() {
            if !d.is_finite() {
                push(format!("distances[{i}][{j}]"), "distance must be finite");
            } else if *d < 0.0 {
                push(format!("distances[{i}][{j}]"), "distance must be non-negative");
            }
        }
    }
    out
}

pub(crate) fn ensure_valid(instance: &Instance) -> Result<(), SolveError> {
    let report = validate(instance);
    if report.is_empty() {
        Ok(())
    } else {
        Err(SolveError::InvalidInstance(report))
    }
}

/// Whether the clients together could hold one copy of every object.
///
/// Necessary but not sufficient for a feasible placement: an object cannot
/// be split across clients.
pub fn collective_capacity_feasible(instance: &Instance) -> bool {
    let capacity: Rational = instance.clients.iter().map(|c| &c.capacity).sum();
    capacity >= instance.total_length()
}

/// Distance from client `j` to its nearest member of `c`.
pub fn nearest_distance(instance: &Instance, c: Config, j: usize) -> f64 {
    c.members()
        .map(|i| instance.distances[i][j])
        .fold(f64::INFINITY, f64::min)
}

/// Access plus installation cost of storing object `o` on exactly the clients in `c`.
pub fn config_cost(instance: &Instance, o: usize, c: Config) -> f64 {
    let obj = &instance.objects[o];
    let length = rational::to_f64(&obj.length);
    config_cost_with_length(instance, o, c, length)
}

pub(crate) fn config_cost_with_length(instance: &Instance, o: usize, c: Config, length: f64) -> f64 {
    let obj = &instance.objects[o];
    let m = instance.num_clients();
    let mut access = 0.0;
    for j in 0..m {
        if !c.contains(j) {
            access += obj.demands[j] * length * nearest_distance(instance, c, j);
        }
    }
    let mut install = 0.0;
    for j in 0..m {
        if c.contains(j) {
            install += obj.install_costs[j];
        }
    }
    access + install
}

/// All non-empty client subsets of size at most `replica_cap`, in ascending bitmask order.
pub fn enumerate_configs(m: usize, replica_cap: Option<usize>) -> Vec<Config> {
    assert!(m <= MAX_BITMASK_CLIENTS, "too many clients for a configuration bitmask");
    let cap = replica_cap.unwrap_or(m);
    (1u32..(1u32 << m))
        .filter(|b| b.count_ones() as usize <= cap)
        .map(Config)
        .collect()
}

/// Per-object cost of every configuration, indexed like [`enumerate_configs`]`(m, None)`.
#[derive(Debug, Clone)]
pub struct CostTable {
    pub configs: Vec<Config>,
    pub costs: Vec<Vec<f64>>,
}

impl CostTable {
    pub fn new(instance: &Instance) -> CostTable {
        let configs = enumerate_configs(instance.num_clients(), None);
        let costs = (0..instance.num_objects())
            .map(|o| configs.iter().map(|&c| config_cost(instance, o, c)).collect())
            .collect();
        CostTable { configs, costs }
    }

    /// Index of `c` in `configs`.
    pub fn index_of(c: Config) -> usize {
        c.bits() as usize - 1
    }
}

/// Validated per-object replica caps, one entry per object, each in `1..=M`.
pub fn check_replica_caps(instance: &Instance, caps: Option<&[usize]>) -> Result<Vec<usize>, SolveError> {
    let m = instance.num_clients();
    match caps {
        None => Ok(vec![m; instance.num_objects()]),
        Some(caps) => {
            if caps.len() != instance.num_objects() {
                return Err(SolveError::InvalidReplicaCaps(format!(
                    "expected {} caps, got {}",
                    instance.num_objects(),
                    caps.len()
                )));
            }
            if let Some(o) = caps.iter().position(|&k| k == 0) {
                return Err(SolveError::InvalidReplicaCaps(format!("cap for object {o} must be at least 1")));
            }
            Ok(caps.iter().map(|&k| k.min(m)).collect())
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub assignment: Vec<Config>,
    pub total_cost: f64,
    pub loads: Vec<Rational>,
    /// Number of DP states evaluated (zero for solvers that do not count them).
    pub states_visited: u64,
}

impl Solution {
    pub fn loads_f64(&self) -> Vec<f64> {
        self.loads.iter().map(rational::to_f64).collect()
    }
}

/// Result of a solve that may legitimately find no feasible placement.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<S> {
    Solved(S),
    Infeasible,
}

impl<S> Outcome<S> {
    pub fn solved(self) -> Option<S> {
        match self {
            Outcome::Solved(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    pub fn as_solved(&self) -> Option<&S> {
        match self {
            Outcome::Solved(s) => Some(s),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, Outcome::Infeasible)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Score {
    pub total_cost: f64,
    pub loads: Vec<Rational>,
    /// Clients whose load exceeds capacity plus the allowed slack.
    pub over_capacity: Vec<usize>,
}

pub(crate) fn check_assignment_shape(instance: &Instance, assignment: &[Config]) -> Result<(), SolveError> {
    if assignment.len() != instance.num_objects() {
        return Err(SolveError::Structural(format!(
            "assignment covers {} objects, instance has {}",
            assignment.len(),
            instance.num_objects()
        )));
    }
    let m = instance.num_clients();
    if let Some(o) = assignment.iter().position(|c| !c.fits(m)) {
        return Err(SolveError::Structural(format!("object {o} placed on a client outside 0..{m}")));
    }
    Ok(())
}

/// Per-client stored length of an assignment.
pub fn loads_of(instance: &Instance, assignment: &[Config]) -> Vec<Rational> {
    let mut loads = vec![Rational::zero(); instance.num_clients()];
    for (obj, c) in instance.objects.iter().zip(assignment) {
        for j in c.members() {
            loads[j] += &obj.length;
        }
    }
    loads
}

/// Recomputes cost and loads of `assignment` from scratch.
///
/// Costs are summed in object order, which is the order every solver uses,
/// so the total matches solver output bit for bit.
pub fn score_solution(instance: &Instance, assignment: &[Config], slack: &Rational) -> Result<Score, SolveError> {
    check_assignment_shape(instance, assignment)?;
    let mut total_cost = 0.0;
    for (o, &c) in assignment.iter().enumerate() {
        total_cost += config_cost(instance, o, c);
    }
    let loads = loads_of(instance, assignment);
    let over_capacity = over_capacity(instance, &loads, slack);
    Ok(Score {
        total_cost,
        loads,
        over_capacity,
    })
}

pub(crate) fn over_capacity(instance: &Instance, loads: &[Rational], slack: &Rational) -> Vec<usize> {
    loads
        .iter()
        .zip(&instance.clients)
        .enumerate()
        .filter(|(_, (load, client))| **load > &client.capacity + slack)
        .map(|(j, _)| j)
        .collect()
}

/// Integer-unit view of an instance: every length and capacity divided by a common unit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitProblem {
    pub unit: Rational,
    pub lengths: Vec<u64>,
    pub capacities: Vec<u64>,
}

impl UnitProblem {
    /// Exact conversion using the largest unit dividing every object length.
    ///
    /// Capacities are floored, which loses nothing since every load is an
    /// integer number of units. Uniform-length instances become unit-length.
    pub fn exact(instance: &Instance) -> Result<UnitProblem, SolveError> {
        let lengths: Vec<Rational> = instance.objects.iter().map(|o| o.length.clone()).collect();
        let unit = rational::rational_gcd(&lengths).ok_or_else(|| {
            SolveError::InvalidInstance(vec![Violation {
                field: "objects".into(),
                rule: "lengths must be positive".into(),
            }])
        })?;
        let lengths = lengths
            .iter()
            .map(|l| rational::floor_to_u64(&(l / &unit)).ok_or(SolveError::UnitOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        let capacities = instance
            .clients
            .iter()
            .map(|c| rational::floor_to_u64(&(&c.capacity / &unit)).ok_or(SolveError::UnitOverflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UnitProblem {
            unit,
            lengths,
            capacities,
        })
    }

    pub fn loads(&self, assignment: &[Config]) -> Vec<u64> {
        let mut loads = vec![0u64; self.capacities.len()];
        for (&l, c) in self.lengths.iter().zip(assignment) {
            for j in c.members() {
                loads[j] += l;
            }
        }
        loads
    }

    pub fn fits(&self, assignment: &[Config]) -> bool {
        self.loads(assignment)
            .iter()
            .zip(&self.capacities)
            .all(|(load, cap)| load <= cap)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::rational::from_u64;

    pub fn q(s: &str) -> Rational {
        rational::parse_exact(s).unwrap()
    }

    /// Instance with unit lengths; `d[i][j]` given row-major.
    pub fn unit_instance(capacities: &[u64], demands: &[Vec<f64>], installs: &[Vec<f64>], d: &[Vec<f64>]) -> Instance {
        Instance {
            clients: capacities
                .iter()
                .map(|&c| Client {
                    capacity: from_u64(c),
                    client_limit: None,
                })
                .collect(),
            objects: demands
                .iter()
                .zip(installs)
                .map(|(w, f)| ObjectSpec {
                    length: from_u64(1),
                    demands: w.clone(),
                    install_costs: f.clone(),
                })
                .collect(),
            distances: d.to_vec(),
        }
    }

    /// Two clients, one unit object with w=(3,5), f=(4,6), d[0][1]=2, d[1][0]=2.
    pub fn two_client() -> Instance {
        unit_instance(
            &[1, 1],
            &[vec![3.0, 5.0]],
            &[vec![4.0, 6.0]],
            &[vec![0.0, 2.0], vec![2.0, 0.0]],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn cfg(members: &[usize]) -> Config {
        Config::from_members(members.iter().copied()).unwrap()
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = unit_instance(&[1], &[vec![1.0]], &[vec![0.0]], &[vec![0.0]]);
        assert!(validate(&inst).is_empty());
    }

    #[test]
    fn unrequested_object_is_reported() {
        let inst = unit_instance(&[1], &[vec![0.0]], &[vec![0.0]], &[vec![0.0]]);
        let report = validate(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rule, "object requested by no user");
        assert_eq!(report[0].field, "objects[0].demands");
    }

    #[test]
    fn negative_distance_is_reported() {
        let mut inst = two_client();
        inst.distances[0][1] = -1.0;
        let report = validate(&inst);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].rule, "distance must be non-negative");
        assert_eq!(report[0].field, "distances[0][1]");
    }

    #[test]
    fn shape_and_limit_violations() {
        let mut inst = two_client();
        inst.clients[0].client_limit = Some(2);
        inst.objects[0].demands.pop();
        inst.objects[0].length = q("0");
        inst.distances[1].pop();
        let fields: Vec<String> = validate(&inst).into_iter().map(|v| v.field).collect();
        assert!(fields.contains(&"clients[0].client_limit".to_string()));
        assert!(fields.contains(&"objects[0].demands".to_string()));
        assert!(fields.contains(&"objects[0].length".to_string()));
        assert!(fields.contains(&"distances[1]".to_string()));
    }

    #[test]
    fn collective_capacity() {
        let mk = |caps: &[&str], lens: &[&str]| Instance {
            clients: caps
                .iter()
                .map(|c| Client {
                    capacity: q(c),
                    client_limit: None,
                })
                .collect(),
            objects: lens
                .iter()
                .map(|l| ObjectSpec {
                    length: q(l),
                    demands: vec![1.0; caps.len()],
                    install_costs: vec![0.0; caps.len()],
                })
                .collect(),
            distances: vec![vec![0.0; caps.len()]; caps.len()],
        };
        assert!(collective_capacity_feasible(&mk(&["3", "2"], &["1"; 5])));
        assert!(!collective_capacity_feasible(&mk(&["1", "1"], &["3"])));
        // Enough room in total, yet the length-3 object fits on no single client.
        let split = mk(&["2", "2"], &["3", "1"]);
        assert!(collective_capacity_feasible(&split));
        let units = UnitProblem::exact(&split).unwrap();
        assert!(!units.lengths.iter().any(|&l| l == 3 && units.capacities.iter().any(|&c| c >= 3)));
    }

    #[test]
    fn nearest_distance_examples() {
        let inst = two_client();
        assert_eq!(nearest_distance(&inst, cfg(&[0]), 1), 2.0);

        let mut three = unit_instance(
            &[1, 1, 1],
            &[vec![1.0, 1.0, 1.0]],
            &[vec![0.0; 3]],
            &[vec![0.0, 9.0, 5.0], vec![9.0, 0.0, 1.0], vec![9.0, 9.0, 0.0]],
        );
        assert_eq!(nearest_distance(&three, cfg(&[0, 1]), 2), 1.0);
        three.distances[1][2] = 7.0;
        assert_eq!(nearest_distance(&three, cfg(&[0, 1]), 2), 5.0);
    }

    #[test]
    fn config_cost_examples() {
        let inst = two_client();
        assert_eq!(config_cost(&inst, 0, cfg(&[0, 1])), 10.0);
        assert_eq!(config_cost(&inst, 0, cfg(&[0])), 14.0);
        let single = unit_instance(&[1], &[vec![42.0]], &[vec![7.0]], &[vec![3.0]]);
        assert_eq!(config_cost(&single, 0, cfg(&[0])), 7.0);
    }

    #[test]
    fn config_enumeration() {
        assert_eq!(enumerate_configs(2, None), vec![cfg(&[0]), cfg(&[1]), cfg(&[0, 1])]);
        assert_eq!(enumerate_configs(3, Some(1)), vec![cfg(&[0]), cfg(&[1]), cfg(&[2])]);
        assert_eq!(enumerate_configs(3, None).len(), 7);
        for m in 1..=6 {
            for cap in 1..=m {
                let expected: usize = (1..=cap).map(|s| binomial(m, s)).sum();
                assert_eq!(enumerate_configs(m, Some(cap)).len(), expected);
            }
            assert_eq!(enumerate_configs(m, None).len(), (1 << m) - 1);
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn scoring_recomputes_cost_and_loads() {
        let inst = two_client();
        let score = score_solution(&inst, &[cfg(&[0, 1])], &Rational::zero()).unwrap();
        assert_eq!(score.total_cost, 10.0);
        assert_eq!(score.loads, vec![q("1"), q("1")]);
        assert!(score.over_capacity.is_empty());

        assert!(matches!(
            score_solution(&inst, &[], &Rational::zero()),
            Err(SolveError::Structural(_))
        ));
        assert!(matches!(
            score_solution(&inst, &[cfg(&[3])], &Rational::zero()),
            Err(SolveError::Structural(_))
        ));
    }

    #[test]
    fn scoring_flags_overloads() {
        let mut inst = two_client();
        inst.clients[1].capacity = q("0.5");
        let score = score_solution(&inst, &[cfg(&[0, 1])], &Rational::zero()).unwrap();
        assert_eq!(score.over_capacity, vec![1]);
        let score = score_solution(&inst, &[cfg(&[0, 1])], &q("0.5")).unwrap();
        assert!(score.over_capacity.is_empty());
    }

    #[test]
    fn exact_units_use_the_length_gcd() {
        let mut inst = two_client();
        inst.objects.push(inst.objects[0].clone());
        inst.objects[0].length = q("0.5");
        inst.objects[1].length = q("0.75");
        inst.clients[0].capacity = q("1.3");
        let units = UnitProblem::exact(&inst).unwrap();
        assert_eq!(units.unit, q("0.25"));
        assert_eq!(units.lengths, vec![2, 3]);
        assert_eq!(units.capacities, vec![5, 4]);
    }

    #[test]
    fn client_limit_defaults_to_everyone_else() {
        let mut inst = two_client();
        assert_eq!(inst.client_limit(0), 1);
        inst.clients[0].client_limit = Some(0);
        assert_eq!(inst.client_limit(0), 0);
    }

    proptest::proptest! {
        #[test]
        fn adding_replicas_never_raises_access_cost(
            w in proptest::collection::vec(0u32..10, 4),
            d in proptest::collection::vec(0u32..10, 16),
            small in 1u32..16,
            extra in 0u32..16,
        ) {
            let m = 4;
            let dist: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| d[i * m + j] as f64).collect()).collect();
            let inst = unit_instance(
                &[1; 4],
                &[w.iter().map(|&x| x as f64).collect()],
                &[vec![0.0; 4]],
                &dist,
            );
            let c = Config::from_bits(small).unwrap();
            let bigger = Config::from_bits(small | extra).unwrap();
            proptest::prop_assert!(config_cost(&inst, 0, bigger) <= config_cost(&inst, 0, c));
            proptest::prop_assert!(config_cost(&inst, 0, c) >= 0.0);
        }

        #[test]
        fn distance_scaling_scales_cost(
            w in proptest::collection::vec(0u32..10, 3),
            d in proptest::collection::vec(0u32..10, 9),
            bits in 1u32..8,
        ) {
            let m = 3;
            let dist: Vec<Vec<f64>> = (0..m).map(|i| (0..m).map(|j| d[i * m + j] as f64).collect()).collect();
            let inst = unit_instance(&[1; 3], &[w.iter().map(|&x| x as f64).collect()], &[vec![0.0; 3]], &dist);
            let mut scaled = inst.clone();
            for row in &mut scaled.distances {
                for x in row.iter_mut() {
                    *x *= 4.0;
                }
            }
            let c = Config::from_bits(bits).unwrap();
            proptest::prop_assert_eq!(config_cost(&scaled, 0, c), 4.0 * config_cost(&inst, 0, c));
        }
    }
}
