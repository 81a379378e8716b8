//! The deterministic case generator.
//!
//! Everything random in the harness derives from a 64-bit seed through a
//! splittable counter-based mixer, specified bit-exactly so that an
//! independent implementation reproduces identical case sequences:
//!
//! * `mix(z)`: `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!   z *= 0x94D049BB133111EB; z ^= z >> 31` (wrapping arithmetic);
//! * stream splitting: `split(seed, i) = mix(seed ^ mix(i * GAMMA + GAMMA))`
//!   with `GAMMA = 0x9E3779B97F4A7C15`;
//! * a stream started at seed `s` yields `mix(s + GAMMA)`,
//!   `mix(s + 2*GAMMA)`, … .
//!
//! Case `i` of a law run draws only from stream `seed.split(i)`, so a
//! single case replays standalone and the sequence is independent of how
//! cases are scheduled across workers.

pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A 64-bit seed for the splittable generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

impl Seed {
    /// Derive the seed of an independent stream.
    pub fn split(self, stream: u64) -> Seed {
        Seed(mix(self.0 ^ mix(stream.wrapping_mul(GAMMA).wrapping_add(GAMMA))))
    }
}

/// A sequential stream of the generator.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: Seed) -> Rng {
        Rng { state: seed.0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GAMMA);
        mix(self.state)
    }

    /// Uniform draw from `0..n`. Modulo bias is negligible at the tiny
    /// ranges the harness uses.
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }

    /// Draw from `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    /// True with probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        (self.next_u64() >> 11) as f64 / ((1u64 << 53) as f64) < p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let a: Vec<u64> = {
            let mut r = Rng::new(Seed(42).split(7));
            (0..8).map(|_| r.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut r = Rng::new(Seed(42).split(7));
            (0..8).map(|_| r.next_u64()).collect()
        };
        assert_eq!(a, b);
        let c: Vec<u64> = {
            let mut r = Rng::new(Seed(42).split(8));
            (0..8).map(|_| r.next_u64()).collect()
        };
        assert_ne!(a, c);
    }

    #[test]
    fn mix_reference_values() {
        // frozen so alternate implementations can cross-check the stream
        let mut r = Rng::new(Seed(0));
        assert_eq!(r.next_u64(), 0xE220A8397B1DCDAF);
        assert_eq!(r.next_u64(), 0x6E789E6AA1B965F4);
        assert_eq!(r.next_u64(), 0x06C45D188009454F);
    }
}
