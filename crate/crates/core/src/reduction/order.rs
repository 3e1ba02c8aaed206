use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Resolves the choices the reduction leaves open: which droppable vertex is
/// tested first, which anchor is selected, and in which order the closed
/// neighborhood of the anchor is probed.
pub trait SelectionOrder {
    /// Order in which the members of the current set are tested for
    /// droppability. `members` arrives in ascending id order.
    fn scan_order(&mut self, members: Vec<usize>) -> Vec<usize>;

    /// Picks the next uncommitted vertex from a nonempty ascending list.
    fn pick_anchor(&mut self, uncommitted: &[usize]) -> usize;

    /// Order of the probe candidates: `center` (if present in `candidates`)
    /// and the ascending remainder.
    fn probe_order(&mut self, center: usize, candidates: Vec<usize>) -> Vec<usize>;
}

/// Smallest id first everywhere; the anchor itself leads its probe list.
#[derive(Debug, Default, Clone, Copy)]
pub struct SmallestId;

impl SelectionOrder for SmallestId {
    fn scan_order(&mut self, members: Vec<usize>) -> Vec<usize> {
        members
    }

    fn pick_anchor(&mut self, uncommitted: &[usize]) -> usize {
        uncommitted[0]
    }

    fn probe_order(&mut self, center: usize, mut candidates: Vec<usize>) -> Vec<usize> {
        if let Some(pos) = candidates.iter().position(|&v| v == center) {
            candidates.remove(pos);
            candidates.insert(0, center);
        }
        candidates
    }
}

/// Uniformly shuffled choices driven by a seeded ChaCha8 stream.
#[derive(Debug, Clone)]
pub struct Seeded {
    rng: ChaCha8Rng,
}

impl Seeded {
    pub fn new(seed: u64) -> Self {
        Seeded { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl SelectionOrder for Seeded {
    fn scan_order(&mut self, mut members: Vec<usize>) -> Vec<usize> {
        members.shuffle(&mut self.rng);
        members
    }

    fn pick_anchor(&mut self, uncommitted: &[usize]) -> usize {
        *uncommitted.choose(&mut self.rng).expect("pick_anchor on empty list")
    }

    fn probe_order(&mut self, _center: usize, mut candidates: Vec<usize>) -> Vec<usize> {
        candidates.shuffle(&mut self.rng);
        candidates
    }
}
