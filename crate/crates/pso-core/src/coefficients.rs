//! Velocity-update coefficients and the named general-purpose presets.

use serde::{Deserialize, Serialize};

/// The three coefficients of the velocity update rule.
///
/// `inertia` scales the particle's tendency to keep its current velocity,
/// `individuality` scales the pull towards its own best experience, and
/// `sociality` scales the pull towards the best experience in its
/// neighbourhood. The sum of the last two is the acceleration weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficients {
    pub inertia: f64,
    pub individuality: f64,
    pub sociality: f64,
}

impl Coefficients {
    pub const fn new(inertia: f64, individuality: f64, sociality: f64) -> Self {
        Self {
            inertia,
            individuality,
            sociality,
        }
    }

    /// Acceleration weight: the aggregate of the two learning weights.
    pub fn acceleration(&self) -> f64 {
        self.individuality + self.sociality
    }

    pub fn is_valid(&self) -> bool {
        self.inertia >= 0.0
            && self.individuality >= 0.0
            && self.sociality >= 0.0
            && self.inertia.is_finite()
            && self.individuality.is_finite()
            && self.sociality.is_finite()
    }
}

/// One coefficient set together with the fraction of the swarm it drives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSet {
    pub coefficients: Coefficients,
    pub fraction: f64,
}

impl CoefficientSet {
    pub const fn whole_swarm(coefficients: Coefficients) -> Self {
        Self {
            coefficients,
            fraction: 1.0,
        }
    }
}

pub const TRELEA1: Coefficients = Coefficients::new(0.6, 1.7, 1.7);
pub const TRELEA2: Coefficients = Coefficients::new(0.729, 1.494, 1.494);
pub const ORIGINAL: Coefficients = Coefficients::new(1.0, 2.0, 2.0);
/// Explorative companion set used by the three-sub-swarm preset.
pub const EXPLORATIVE: Coefficients = Coefficients::new(0.9, 2.0, 2.0);

/// Names accepted by [`preset`], in listing order.
pub const PRESET_NAMES: [&str; 4] = ["trelea1", "trelea2", "original", "gp3"];

/// Looks up a named preset.
///
/// Single-set presets drive the whole swarm with one coefficient set. The
/// `gp3` preset splits the swarm into three equal sub-swarms with
/// complementary behaviour: an exploitative one (trelea2), a balanced one
/// (trelea1) and an explorative one.
pub fn preset(name: &str) -> Option<Vec<CoefficientSet>> {
    match name {
        "trelea1" => Some(vec![CoefficientSet::whole_swarm(TRELEA1)]),
        "trelea2" => Some(vec![CoefficientSet::whole_swarm(TRELEA2)]),
        "original" => Some(vec![CoefficientSet::whole_swarm(ORIGINAL)]),
        "gp3" => Some(vec![
            CoefficientSet {
                coefficients: TRELEA2,
                fraction: 1.0 / 3.0,
            },
            CoefficientSet {
                coefficients: TRELEA1,
                fraction: 1.0 / 3.0,
            },
            CoefficientSet {
                coefficients: EXPLORATIVE,
                fraction: 1.0 / 3.0,
            },
        ]),
        _ => None,
    }
}
