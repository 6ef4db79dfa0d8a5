//! Instance generators: seeded random families and the two-client family
//! on which the scaled solver's capacity overload is asymptotically tight.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Client, Instance, ObjectSpec};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator parameter: {0}")]
pub struct GenError(pub String);

/// Object length model for random instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthModel {
    Unit,
    /// Uniform in `[lo, hi]` hundredths, e.g. `(25, 400)` gives 0.25 to 4.00.
    Hundredths(u32, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomFamily {
    pub clients: usize,
    pub objects: usize,
    /// Integer capacities drawn uniformly from this inclusive range.
    pub capacity: (u64, u64),
    pub lengths: LengthModel,
    pub max_demand: u32,
    pub max_distance: u32,
    pub max_install: u32,
    /// Client limits drawn from this inclusive range (clamped to `M - 1`); `None` leaves them unset.
    pub client_limits: Option<(u32, u32)>,
}

impl Default for RandomFamily {
    fn default() -> Self {
        RandomFamily {
            clients: 3,
            objects: 6,
            capacity: (1, 4),
            lengths: LengthModel::Unit,
            max_demand: 9,
            max_distance: 9,
            max_install: 9,
            client_limits: None,
        }
    }
}

impl RandomFamily {
    pub fn check(&self) -> Result<(), GenError> {
        if self.clients == 0 || self.objects == 0 {
            return Err(GenError("clients and objects must be at least 1".into()));
        }
        if self.capacity.0 > self.capacity.1 {
            return Err(GenError("capacity range is empty".into()));
        }
        if let LengthModel::Hundredths(lo, hi) = self.lengths {
            if lo == 0 || lo > hi {
                return Err(GenError("length range must be positive and non-empty".into()));
            }
        }
        if self.max_demand == 0 {
            return Err(GenError("max demand must be at least 1".into()));
        }
        if let Some((lo, hi)) = self.client_limits {
            if lo > hi {
                return Err(GenError("client limit range is empty".into()));
            }
        }
        Ok(())
    }
}

/// Draws an instance; identical `(family, seed)` pairs give identical instances.
pub fn random_instance(family: &RandomFamily, seed: u64) -> Result<Instance, GenError> {
    family.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = family.clients;
    let max_limit = (m - 1) as u32;

    let clients = (0..m)
        .map(|_| Client {
            capacity: rational::from_u64(rng.random_range(family.capacity.0..=family.capacity.1)),
            client_limit: family
                .client_limits
                .map(|(lo, hi)| rng.random_range(lo..=hi).min(max_limit)),
        })
        .collect();

    let objects = (0..family.objects)
        .map(|_| {
            let length = match family.lengths {
                LengthModel::Unit => Rational::one(),
                LengthModel::Hundredths(lo, hi) => {
                    Rational::new(rng.random_range(lo..=hi).into(), 100.into())
                }
            };
            let mut demands: Vec<f64> = (0..m)
                .map(|_| rng.random_range(0..=family.max_demand) as f64)
                .collect();
            if demands.iter().all(|&w| w == 0.0) {
                let j = rng.random_range(0..m);
                demands[j] = rng.random_range(1..=family.max_demand) as f64;
            }
            let install_costs = (0..m)
                .map(|_| rng.random_range(0..=family.max_install) as f64)
                .collect();
            ObjectSpec {
                length,
                demands,
                install_costs,
            }
        })
        .collect();

    let distances = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        rng.random_range(0..=family.max_distance) as f64
                    }
                })
                .collect()
        })
        .collect();

    Ok(Instance {
        clients,
        objects,
        distances,
    })
}

/// Two clients, `n` objects: `n - 1` short objects of length `(1 - delta) / n`
/// wanted once by both clients, and one long object of length `1 / epsilon`
/// wanted `n` times by the second client only. Capacities are `1` and
/// `1 / epsilon`, installation is free and both distances are 1.
pub fn tightness(n: usize, epsilon: &Rational, delta: &Rational) -> Result<Instance, GenError> {
    let zero = Rational::zero();
    let one = Rational::one();
    if n < 3 {
        return Err(GenError("tightness family needs at least 3 objects".into()));
    }
    if *epsilon <= zero || *epsilon >= one {
        return Err(GenError("epsilon must lie strictly between 0 and 1".into()));
    }
    if *delta <= zero || *delta >= one {
        return Err(GenError("delta must lie strictly between 0 and 1".into()));
    }
    let n_q = rational::from_u64(n as u64);
    let short = (&one - delta) / &n_q;
    let long = &one / epsilon;

    let mut objects: Vec<ObjectSpec> = (0..n - 1)
        .map(|_| ObjectSpec {
            length: short.clone(),
            demands: vec![1.0, 1.0],
            install_costs: vec![0.0, 0.0],
        })
        .collect();
    objects.push(ObjectSpec {
        length: long.clone(),
        demands: vec![0.0, n as f64],
        install_costs: vec![0.0, 0.0],
    });

    Ok(Instance {
        clients: vec![
            Client {
                capacity: epsilon * &long,
                client_limit: None,
            },
            Client {
                capacity: long,
                client_limit: None,
            },
        ],
        objects,
        distances: vec![vec![0.0, 1.0], vec![1.0, 0.0]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;
    use crate::model::fixtures::q;

    #[test]
    fn tightness_matches_construction() {
        let inst = tightness(10, &q("0.5"), &q("1/9")).unwrap();
        assert!(validate(&inst).is_empty());
        assert_eq!(inst.objects[9].length, q("2"));
        assert_eq!(inst.objects[0].length, q("8/90"));
        assert_eq!(inst.clients[0].capacity, q("1"));
        assert_eq!(inst.clients[1].capacity, q("2"));
        for o in 0..9 {
            assert_eq!(inst.objects[o].demands, vec![1.0, 1.0]);
        }
        assert_eq!(inst.objects[9].demands, vec![0.0, 10.0]);
        assert!(inst.objects.iter().all(|o| o.install_costs == vec![0.0, 0.0]));
    }

    #[test]
    fn tightness_rejects_bad_parameters() {
        assert!(tightness(2, &q("0.5"), &q("0.5")).is_err());
        assert!(tightness(5, &q("1"), &q("0.5")).is_err());
        assert!(tightness(5, &q("0.5"), &q("0")).is_err());
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let family = RandomFamily::default();
        let a = random_instance(&family, 7).unwrap();
        let b = random_instance(&family, 7).unwrap();
        let c = random_instance(&family, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(validate(&a).is_empty());
        assert_eq!(a.num_clients(), 3);
        assert_eq!(a.num_objects(), 6);
    }

    #[test]
    fn random_limits_are_clamped() {
        let family = RandomFamily {
            client_limits: Some((5, 9)),
            ..RandomFamily::default()
        };
        let inst = random_instance(&family, 1).unwrap();
        assert!(inst.clients.iter().all(|c| c.client_limit == Some(2)));
        assert!(validate(&inst).is_empty());
    }

    #[test]
    fn random_nonuniform_lengths() {
        let family = RandomFamily {
            lengths: LengthModel::Hundredths(25, 400),
            ..RandomFamily::default()
        };
        let inst = random_instance(&family, 3).unwrap();
        assert!(inst
            .objects
            .iter()
            .all(|o| o.length >= q("0.25") && o.length <= q("4")));
    }
}
