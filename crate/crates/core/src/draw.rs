//! Source of uniform variates consumed by the engine.
//!
//! Every random decision in a run reduces to one uniform draw on `[0, 1)`,
//! so the engine only needs this one primitive. Any `rand` generator works;
//! [`ScriptedDraws`] replays a fixed list for hand-traced scenarios.

use std::collections::VecDeque;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Generator used for seeded runs. ChaCha output is specified bit-for-bit,
/// so a seed reproduces the same trajectory on every platform.
pub type RunRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub trait Draw {
    /// Uniform variate on `[0, 1)`.
    fn unit(&mut self) -> f64;

    fn coin(&mut self) -> bool {
        self.unit() < 0.5
    }
}

impl<T: RngCore> Draw for T {
    #[inline]
    fn unit(&mut self) -> f64 {
        self.gen::<f64>()
    }
}

/// Replays a fixed sequence of uniforms. Panics when exhausted, which in a
/// scripted test means the trace consumed more randomness than planned.
#[derive(Debug, Clone, Default)]
pub struct ScriptedDraws {
    queue: VecDeque<f64>,
    consumed: usize,
}

impl ScriptedDraws {
    pub fn new(values: impl IntoIterator<Item = f64>) -> Self {
        let queue: VecDeque<f64> = values.into_iter().collect();
        assert!(
            queue.iter().all(|u| (0.0..1.0).contains(u)),
            "scripted draws must lie in [0, 1)"
        );
        Self { queue, consumed: 0 }
    }

    /// `n` copies of the same value.
    pub fn repeat(value: f64, n: usize) -> Self {
        Self::new(std::iter::repeat(value).take(n))
    }

    pub fn consumed(&self) -> usize {
        self.consumed
    }

    pub fn remaining(&self) -> usize {
        self.queue.len()
    }
}

impl Draw for ScriptedDraws {
    fn unit(&mut self) -> f64 {
        self.consumed += 1;
        self.queue
            .pop_front()
            .unwrap_or_else(|| panic!("scripted draw #{} requested but none left", self.consumed))
    }
}
