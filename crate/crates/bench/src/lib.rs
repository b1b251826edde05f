//! Shared inputs for the criterion benches.

use surface_homotopy::gen::{conjugate_by, random_cyclic_word, random_word, rng};
use surface_homotopy::{Dart, Surface};

/// Genus of the benchmark surface.
pub const GENUS: u32 = 2;

/// Preprocessed surface with seeded query walks of length `k`.
pub struct Inputs {
    pub surface: Surface,
    /// Random reduced word, almost surely not contractible.
    pub word: Vec<Dart>,
    /// Cyclically reduced word and a conjugate of it.
    pub pair: (Vec<Dart>, Vec<Dart>),
}

impl Inputs {
    pub fn new(k: usize, seed: u64) -> Self {
        let surface = Surface::canonical(GENUS, true).expect("canonical surface");
        let rank = 2 * GENUS as usize;
        let mut r = rng(seed);
        let word = surface.word_walk(&random_word(&mut r, rank, k, true)).expect("walk");
        let c = random_cyclic_word(&mut r, rank, k);
        let g = random_word(&mut r, rank, 8, true);
        let d = conjugate_by(&c, &g);
        let pair = (surface.word_walk(&c).expect("walk"), surface.word_walk(&d).expect("walk"));
        Inputs { surface, word, pair }
    }
}
