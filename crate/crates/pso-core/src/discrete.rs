//! Discrete search modes: rounded continuous trajectories and the binary
//! (bit-string) optimizer.
//!
//! The rounded mode keeps the continuous update rule untouched; particles fly
//! in real space and are snapped onto the admissible values only when a point
//! is evaluated or stored as a best experience. The binary optimizer replaces
//! the position update entirely: velocities turn into bit probabilities
//! through a sigmoid and each bit is resampled every step.

use crate::problem::VariableKind;
use crate::rng::{particle_stream, INIT_STEP};
use rand::Rng;

/// Snaps every discrete dimension of `x` to its nearest admissible value,
/// ties towards the smaller value. Continuous dimensions pass through.
pub fn round_to_domain(x: &[f64], kinds: &[VariableKind]) -> Vec<f64> {
    debug_assert_eq!(x.len(), kinds.len());
    x.iter()
        .zip(kinds)
        .map(|(&v, kind)| match kind {
            VariableKind::Continuous => v,
            VariableKind::Binary => {
                if v > 0.5 {
                    1.0
                } else {
                    0.0
                }
            }
            VariableKind::DiscreteSet(values) => snap_to_set(v, values),
        })
        .collect()
}

/// Nearest member of a sorted value set, ties towards the smaller value.
fn snap_to_set(v: f64, values: &[f64]) -> f64 {
    debug_assert!(!values.is_empty());
    match values.binary_search_by(|probe| probe.partial_cmp(&v).expect("finite values")) {
        Ok(i) => values[i],
        Err(i) => {
            if i == 0 {
                values[0]
            } else if i == values.len() {
                values[values.len() - 1]
            } else {
                let below = values[i - 1];
                let above = values[i];
                // Strict inequality keeps midpoints on the smaller value.
                if v - below > above - v {
                    above
                } else {
                    below
                }
            }
        }
    }
}

/// Probability of a bit adopting state 1 for a given velocity component.
pub fn sigmoid(v: f64) -> f64 {
    1.0 / (1.0 + (-v).exp())
}

/// Draws one bit that is 1 with probability `p`, using exactly one draw.
///
/// Draws come from the half-open interval `[0, 1)`, so `p = 1` always yields
/// 1 and `p = 0` always yields 0.
pub fn sample_bit(p: f64, rng: &mut impl Rng) -> bool {
    debug_assert!((0.0..=1.0).contains(&p));
    rng.random::<f64>() < p
}

/// One member of a binary swarm.
#[derive(Debug, Clone, PartialEq)]
pub struct BitParticle {
    pub position: Vec<bool>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<bool>,
    pub pbest_conflict: f64,
}

/// Velocity update of the binary optimizer.
///
/// There is no inertia coefficient; the old velocity enters with weight one
/// and each component is clamped to `[-vmax, vmax]` to keep bit probabilities
/// away from 0 and 1. Each dimension consumes two draws: first the
/// individuality term, then the sociality term.
pub fn binary_update_velocity(
    particle: &BitParticle,
    gbest: &[bool],
    individuality: f64,
    sociality: f64,
    vmax: f64,
    rng: &mut impl Rng,
) -> Vec<f64> {
    debug_assert_eq!(particle.position.len(), gbest.len());
    let bit = |b: bool| if b { 1.0 } else { 0.0 };
    particle
        .velocity
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let own = bit(particle.pbest_position[j]) - bit(particle.position[j]);
            let social = bit(gbest[j]) - bit(particle.position[j]);
            let r_ind = rng.random::<f64>();
            let r_soc = rng.random::<f64>();
            let updated = v + individuality * r_ind * own + sociality * r_soc * social;
            updated.clamp(-vmax, vmax)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BinarySwarmConfig {
    pub swarm_size: usize,
    pub individuality: f64,
    pub sociality: f64,
    /// Symmetric velocity clamp. The default of 4 keeps bit probabilities
    /// within roughly [0.018, 0.982], so bits stay mutable.
    pub vmax: f64,
    pub max_time_steps: usize,
    pub conflict_target: Option<f64>,
    pub rng_seed: u64,
}

impl Default for BinarySwarmConfig {
    fn default() -> Self {
        Self {
            swarm_size: 30,
            individuality: 2.0,
            sociality: 2.0,
            vmax: 4.0,
            max_time_steps: 1000,
            conflict_target: None,
            rng_seed: 0,
        }
    }
}

/// Outcome of a binary run.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryRunResult {
    pub gbest_position: Vec<bool>,
    pub gbest_conflict: f64,
    pub time_steps_used: usize,
    pub target_met: bool,
}

/// Minimizes a conflict function over bit-strings with a fully connected
/// neighbourhood and synchronous best updates.
pub struct BinarySwarm<F: Fn(&[bool]) -> f64> {
    n_bits: usize,
    conflict: F,
    config: BinarySwarmConfig,
    particles: Vec<BitParticle>,
    gbest_position: Vec<bool>,
    gbest_conflict: f64,
    step_count: usize,
}

impl<F: Fn(&[bool]) -> f64> BinarySwarm<F> {
    pub fn new(n_bits: usize, conflict: F, config: BinarySwarmConfig) -> Self {
        assert!(n_bits > 0, "bit-string length must be at least 1");
        assert!(config.swarm_size > 0, "swarm size must be at least 1");
        let mut particles = Vec::with_capacity(config.swarm_size);
        for i in 0..config.swarm_size {
            let mut rng = particle_stream(config.rng_seed, i, INIT_STEP);
            let position: Vec<bool> = (0..n_bits).map(|_| sample_bit(0.5, &mut rng)).collect();
            let value = guard(conflict(&position));
            particles.push(BitParticle {
                pbest_position: position.clone(),
                position,
                velocity: vec![0.0; n_bits],
                pbest_conflict: value,
            });
        }
        let best = particles
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.pbest_conflict.total_cmp(&b.pbest_conflict))
            .map(|(i, _)| i)
            .expect("non-empty swarm");
        let gbest_position = particles[best].pbest_position.clone();
        let gbest_conflict = particles[best].pbest_conflict;
        Self {
            n_bits,
            conflict,
            config,
            particles,
            gbest_position,
            gbest_conflict,
            step_count: 0,
        }
    }

    pub fn particles(&self) -> &[BitParticle] {
        &self.particles
    }

    pub fn step(&mut self) {
        self.step_count += 1;
        let gbest = self.gbest_position.clone();
        for i in 0..self.particles.len() {
            let mut rng = particle_stream(self.config.rng_seed, i, self.step_count as u64);
            let velocity = binary_update_velocity(
                &self.particles[i],
                &gbest,
                self.config.individuality,
                self.config.sociality,
                self.config.vmax,
                &mut rng,
            );
            let position: Vec<bool> = velocity
                .iter()
                .map(|&v| sample_bit(sigmoid(v), &mut rng))
                .collect();
            let value = guard((self.conflict)(&position));
            let p = &mut self.particles[i];
            p.velocity = velocity;
            p.position = position;
            if value < p.pbest_conflict {
                p.pbest_conflict = value;
                p.pbest_position = p.position.clone();
            }
        }
        for p in &self.particles {
            if p.pbest_conflict < self.gbest_conflict {
                self.gbest_conflict = p.pbest_conflict;
                self.gbest_position = p.pbest_position.clone();
            }
        }
    }

    pub fn run(mut self) -> BinaryRunResult {
        let met = |best: f64, cfg: &BinarySwarmConfig| cfg.conflict_target.is_some_and(|t| best <= t);
        while self.step_count < self.config.max_time_steps
            && !met(self.gbest_conflict, &self.config)
        {
            self.step();
        }
        BinaryRunResult {
            target_met: met(self.gbest_conflict, &self.config),
            gbest_position: self.gbest_position,
            gbest_conflict: self.gbest_conflict,
            time_steps_used: self.step_count,
        }
    }
}

fn guard(value: f64) -> f64 {
    if value.is_nan() {
        f64::INFINITY
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::particle_stream;
    use approx::assert_relative_eq;

    #[test]
    fn rounding_snaps_to_nearest_lattice_value() {
        let lattice: Vec<f64> = (1..=99).map(|k| k as f64 * 0.0625).collect();
        let kinds = vec![VariableKind::DiscreteSet(lattice)];
        // 0.80 is 0.0125 away from 0.8125 and 0.05 away from 0.75.
        assert_eq!(round_to_domain(&[0.80], &kinds), vec![0.8125]);
        // Already on the grid: unchanged.
        assert_eq!(round_to_domain(&[0.75], &kinds), vec![0.75]);
        // Exact midpoint 0.78125 resolves towards the smaller value.
        assert_eq!(round_to_domain(&[0.78125], &kinds), vec![0.75]);
    }

    #[test]
    fn rounding_clips_to_the_value_range() {
        let kinds = vec![VariableKind::DiscreteSet(vec![0.0, 1.0, 2.0])];
        assert_eq!(round_to_domain(&[-7.3], &kinds), vec![0.0]);
        assert_eq!(round_to_domain(&[9.9], &kinds), vec![2.0]);
    }

    #[test]
    fn continuous_dimensions_pass_through() {
        let kinds = vec![VariableKind::Continuous, VariableKind::Binary];
        assert_eq!(round_to_domain(&[0.815, 0.4], &kinds), vec![0.815, 0.0]);
    }

    #[test]
    fn sigmoid_reference_values() {
        assert_eq!(sigmoid(0.0), 0.5);
        assert_relative_eq!(sigmoid(4.0), 0.9820137900379085, max_relative = 1e-15);
        let v = 1.7;
        assert_relative_eq!(sigmoid(-v), 1.0 - sigmoid(v), epsilon = 1e-15);
    }

    #[test]
    fn sample_bit_endpoints_are_deterministic() {
        let mut rng = particle_stream(0, 0, 1);
        for _ in 0..1000 {
            assert!(!sample_bit(0.0, &mut rng));
            assert!(sample_bit(1.0, &mut rng));
        }
    }

    #[test]
    fn sample_bit_mean_matches_probability() {
        let mut rng = particle_stream(7, 0, 1);
        let n = 100_000;
        let ones = (0..n).filter(|_| sample_bit(0.5, &mut rng)).count();
        let mean = ones as f64 / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn velocity_unchanged_when_position_matches_both_bests() {
        let p = BitParticle {
            position: vec![true, false],
            velocity: vec![0.3, -1.2],
            pbest_position: vec![true, false],
            pbest_conflict: 0.0,
        };
        let mut rng = particle_stream(1, 0, 1);
        let v = binary_update_velocity(&p, &[true, false], 2.0, 2.0, 4.0, &mut rng);
        assert_eq!(v, vec![0.3, -1.2]);
    }

    #[test]
    fn velocity_bounds_when_both_bests_disagree_with_position() {
        let p = BitParticle {
            position: vec![false],
            velocity: vec![0.0],
            pbest_position: vec![true],
            pbest_conflict: 0.0,
        };
        let mut rng = particle_stream(2, 0, 1);
        for _ in 0..200 {
            let v = binary_update_velocity(&p, &[true], 2.0, 2.0, 4.0, &mut rng);
            assert!(v[0] > 0.0 && v[0] < 4.0, "v = {}", v[0]);
        }
    }

    #[test]
    fn velocity_matches_recorded_draws_on_one_bit() {
        // Replay the same stream the update consumed and redo the arithmetic.
        let p = BitParticle {
            position: vec![false],
            velocity: vec![0.25],
            pbest_position: vec![true],
            pbest_conflict: 0.0,
        };
        let mut rng = particle_stream(9, 3, 5);
        let v = binary_update_velocity(&p, &[false], 1.3, 0.7, 4.0, &mut rng);

        let mut replay = particle_stream(9, 3, 5);
        let r_ind = replay.random::<f64>();
        let r_soc = replay.random::<f64>();
        let expected = 0.25 + 1.3 * r_ind * 1.0 + 0.7 * r_soc * 0.0;
        assert_eq!(v[0], expected.clamp(-4.0, 4.0));
    }

    #[test]
    fn positions_stay_binary_and_run_finds_all_ones() {
        // Count of zero bits: minimized by the all-ones string.
        let conflict = |bits: &[bool]| bits.iter().filter(|&&b| !b).count() as f64;
        let config = BinarySwarmConfig {
            swarm_size: 20,
            max_time_steps: 200,
            conflict_target: Some(0.0),
            rng_seed: 11,
            ..Default::default()
        };
        let mut swarm = BinarySwarm::new(12, conflict, config);
        for _ in 0..50 {
            swarm.step();
            for p in swarm.particles() {
                assert_eq!(p.position.len(), 12);
            }
        }
        let result = BinarySwarm::new(
            12,
            conflict,
            BinarySwarmConfig {
                swarm_size: 20,
                max_time_steps: 200,
                conflict_target: Some(0.0),
                rng_seed: 11,
                ..Default::default()
            },
        )
        .run();
        assert!(result.target_met);
        assert_eq!(result.gbest_conflict, 0.0);
        assert!(result.gbest_position.iter().all(|&b| b));
    }

    #[test]
    fn empirical_bit_frequency_tracks_sigmoid() {
        // Hold the velocity fixed and compare observed bit frequencies with
        // the sigmoid probability via a one-degree chi-square statistic.
        // Critical value for p = 0.001 with 1 dof is 10.828.
        let n = 100_000usize;
        let mut rng = particle_stream(13, 0, 1);
        for &v in &[-4.0, -1.5, 0.0, 0.7, 2.0, 4.0] {
            let p = sigmoid(v);
            let ones = (0..n).filter(|_| sample_bit(p, &mut rng)).count() as f64;
            let zeros = n as f64 - ones;
            let expected_ones = p * n as f64;
            let expected_zeros = (1.0 - p) * n as f64;
            let chi2 = (ones - expected_ones).powi(2) / expected_ones
                + (zeros - expected_zeros).powi(2) / expected_zeros;
            assert!(chi2 < 10.828, "v = {v}: chi2 = {chi2}");
        }
    }
}
