//! Seeded sampling of gambles, events and scalars for the property suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{int, ratio, Rational};
use crate::space::{Event, Gamble, Space};

pub const COORD_MIN: i64 = -3;
pub const COORD_MAX: i64 = 3;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    /// Coordinates uniform in `{-3..3}`.
    pub fn gamble(&mut self, space: &Space) -> Gamble {
        self.gamble_in(space, COORD_MIN, COORD_MAX)
    }

    pub fn gamble_in(&mut self, space: &Space, lo: i64, hi: i64) -> Gamble {
        let values: Vec<Rational> = (0..space.len()).map(|_| int(self.int(lo, hi))).collect();
        Gamble::new(space, values).expect("length matches space")
    }

    pub fn nonzero_gamble(&mut self, space: &Space) -> Gamble {
        loop {
            let g = self.gamble(space);
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// A gamble in L⁺ with coordinates in `{0..3}`.
    pub fn nonneg_nonzero(&mut self, space: &Space) -> Gamble {
        loop {
            let g = self.gamble_in(space, 0, COORD_MAX);
            if !g.is_zero() {
                return g;
            }
        }
    }

    /// `p/q` with `p, q` in `1..=5`.
    pub fn positive_rational(&mut self) -> Rational {
        ratio(self.int(1, 5), self.int(1, 5))
    }

    pub fn event(&mut self, space: &Space) -> Event {
        let mask = self.rng.gen_range(0..(1u64 << space.len()));
        Event::from_mask(space, mask)
    }

    pub fn nonempty_event(&mut self, space: &Space) -> Event {
        loop {
            let e = self.event(space);
            if !e.is_empty() {
                return e;
            }
        }
    }

    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            p.swap(i, self.rng.gen_range(0..=i));
        }
        p
    }
}

/// All gambles with integer coordinates in `lo..=hi`, in lexicographic order.
pub fn grid(space: &Space, lo: i64, hi: i64) -> Vec<Gamble> {
    let n = space.len();
    let width = (hi - lo + 1) as usize;
    let total = width.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let mut values = vec![int(0); n];
            for v in values.iter_mut().rev() {
                *v = int(lo + (code % width) as i64);
                code /= width;
            }
            Gamble::new(space, values).expect("length matches space")
        })
        .collect()
}
