//! JSON instance files.
//!
//! ```json
//! {
//!   "version": 1,
//!   "clients": [{"capacity": "1"}, {"capacity": "2", "client_limit": 1}],
//!   "objects": [{"length": "4/45", "demands": [1, 1], "install_costs": [0, 0]}],
//!   "distances": [[0, 1], [1, 0]]
//! }
//! ```
//!
//! Lengths and capacities are exact: they may be written as decimal or
//! fraction strings (or plain JSON numbers, read through their shortest
//! decimal form) and are always written back as strings. Demands,
//! installation costs and distances are binary floating point.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{Client, Instance, ObjectSpec};
use crate::rational::{self, ParseNumberError, Rational};

pub const INSTANCE_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Number(#[from] ParseNumberError),
    #[error("unsupported instance version {0} (expected {INSTANCE_VERSION})")]
    Version(u32),
    #[error("{0}")]
    Schema(String),
}

/// A JSON number or a numeric string.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberText {
    Text(String),
    Number(serde_json::Number),
}

impl NumberText {
    fn exact(&self) -> Result<Rational, ParseNumberError> {
        match self {
            NumberText::Text(s) => rational::parse_exact(s),
            NumberText::Number(n) => rational::parse_exact(&n.to_string()),
        }
    }

    fn real(&self) -> Result<f64, ParseNumberError> {
        match self {
            NumberText::Number(n) => n.as_f64().ok_or_else(|| ParseNumberError {
                text: n.to_string(),
                reason: "not representable as f64",
            }),
            NumberText::Text(s) => match s.trim().parse::<f64>() {
                Ok(v) => Ok(v),
                Err(_) => rational::parse_exact(s).map(|q| rational::to_f64(&q)),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClientEntry {
    pub capacity: NumberText,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub client_limit: Option<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub length: NumberText,
    pub demands: Vec<NumberText>,
    pub install_costs: Vec<NumberText>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub clients: Vec<ClientEntry>,
    pub objects: Vec<ObjectEntry>,
    pub distances: Vec<Vec<NumberText>>,
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> InstanceFile {
        let real = |x: f64| {
            NumberText::Number(serde_json::Number::from_f64(x).expect("finite instance values"))
        };
        InstanceFile {
            version: INSTANCE_VERSION,
            clients: instance
                .clients
                .iter()
                .map(|c| ClientEntry {
                    capacity: NumberText::Text(rational::format_exact(&c.capacity)),
                    client_limit: c.client_limit,
                })
                .collect(),
            objects: instance
                .objects
                .iter()
                .map(|o| ObjectEntry {
                    length: NumberText::Text(rational::format_exact(&o.length)),
                    demands: o.demands.iter().map(|&w| real(w)).collect(),
                    install_costs: o.install_costs.iter().map(|&f| real(f)).collect(),
                })
                .collect(),
            distances: instance
                .distances
                .iter()
                .map(|row| row.iter().map(|&d| real(d)).collect())
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, FormatError> {
        if self.version != INSTANCE_VERSION {
            return Err(FormatError::Version(self.version));
        }
        let reals = |v: &[NumberText]| v.iter().map(NumberText::real).collect::<Result<Vec<_>, _>>();
        let clients = self
            .clients
            .iter()
            .map(|c| {
                Ok(Client {
                    capacity: c.capacity.exact()?,
                    client_limit: c.client_limit,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let objects = self
            .objects
            .iter()
            .map(|o| {
                Ok(ObjectSpec {
                    length: o.length.exact()?,
                    demands: reals(&o.demands)?,
                    install_costs: reals(&o.install_costs)?,
                })
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        let distances = self
            .distances
            .iter()
            .map(|row| reals(row))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance {
            clients,
            objects,
            distances,
        })
    }
}

/// Parses and structurally checks an instance document.
///
/// Semantic rules (non-negative values, requested objects, ...) are left
/// to [`crate::model::validate`].
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    let instance = file.to_instance()?;
    let m = instance.clients.len();
    for (o, obj) in instance.objects.iter().enumerate() {
        if obj.demands.len() != m || obj.install_costs.len() != m {
            return Err(FormatError::Schema(format!(
                "objects[{o}] must list one demand and one installation cost per client"
            )));
        }
    }
    if instance.distances.len() != m || instance.distances.iter().any(|row| row.len() != m) {
        return Err(FormatError::Schema(format!("distances must be a {m}x{m} matrix")));
    }
    Ok(instance)
}

pub fn instance_to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(instance)).expect("serializable")
}

/// SHA-256 of the canonical compact serialization, hex encoded.
pub fn instance_hash(instance: &Instance) -> String {
    let canonical = serde_json::to_string(&InstanceFile::from_instance(instance)).expect("serializable");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}
