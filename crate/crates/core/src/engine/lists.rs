//! Colour lists and singleton propagation.

use std::fmt;

use crate::graph::Graph;

/// A colour in `1..=3`.
pub type Colour = u8;

/// Subset of `{1, 2, 3}`; bit `c - 1` stands for colour `c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColourMask(u8);

impl ColourMask {
    pub const EMPTY: ColourMask = ColourMask(0);
    pub const FULL: ColourMask = ColourMask(0b111);

    pub fn from_bits(bits: u8) -> Self {
        ColourMask(bits & 0b111)
    }

    pub fn single(c: Colour) -> Self {
        debug_assert!((1..=3).contains(&c));
        ColourMask(1 << (c - 1))
    }

    pub fn from_colours<I: IntoIterator<Item = Colour>>(it: I) -> Self {
        it.into_iter().fold(ColourMask::EMPTY, |m, c| m.with(c))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: Colour) -> bool {
        (1..=3).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    pub fn with(self, c: Colour) -> Self {
        ColourMask(self.0 | ColourMask::single(c).0)
    }

    pub fn without(self, c: Colour) -> Self {
        ColourMask(self.0 & !ColourMask::single(c).0)
    }

    pub fn intersect(self, other: ColourMask) -> Self {
        ColourMask(self.0 & other.0)
    }

    pub fn union(self, other: ColourMask) -> Self {
        ColourMask(self.0 | other.0)
    }

    pub fn complement(self) -> Self {
        ColourMask(!self.0 & 0b111)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_full(self) -> bool {
        self.0 == 0b111
    }

    /// The colour of a singleton mask.
    pub fn single_colour(self) -> Option<Colour> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as Colour + 1)
    }

    pub fn min(self) -> Option<Colour> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as Colour + 1)
    }

    pub fn colours(self) -> impl Iterator<Item = Colour> {
        (1..=3).filter(move |&c| self.contains(c))
    }
}

impl fmt::Debug for ColourMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.colours().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cause {
    Seed,
    /// Removed because this neighbour was fixed to the colour.
    Neighbour(usize),
    /// Fixed by safe-vertex elimination.
    Safe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailEntry {
    pub vertex: usize,
    pub removed: Colour,
    pub cause: Cause,
}

/// A vertex whose list emptied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub vertex: usize,
}

/// Per-vertex lists plus the set of singleton vertices already propagated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListState {
    masks: Vec<ColourMask>,
    assigned: Vec<Option<Colour>>,
    pending: Vec<usize>,
    trail: Vec<TrailEntry>,
    propagations: u64,
}

impl ListState {
    pub fn new(masks: Vec<ColourMask>) -> Self {
        let n = masks.len();
        let pending = (0..n).filter(|&v| masks[v].len() == 1).collect();
        ListState { masks, assigned: vec![None; n], pending, trail: Vec::new(), propagations: 0 }
    }

    pub fn masks(&self) -> &[ColourMask] {
        &self.masks
    }

    pub fn mask(&self, v: usize) -> ColourMask {
        self.masks[v]
    }

    pub fn assigned(&self, v: usize) -> Option<Colour> {
        self.assigned[v]
    }

    pub fn trail(&self) -> &[TrailEntry] {
        &self.trail
    }

    /// Number of colour deletions performed by propagation so far.
    pub fn propagations(&self) -> u64 {
        self.propagations
    }

    fn restrict(&mut self, v: usize, keep: ColourMask, cause: Cause) -> Result<(), Conflict> {
        let old = self.masks[v];
        let new = old.intersect(keep);
        if new == old {
            return Ok(());
        }
        for c in old.intersect(keep.complement()).colours() {
            self.trail.push(TrailEntry { vertex: v, removed: c, cause });
        }
        self.masks[v] = new;
        match new.len() {
            0 => Err(Conflict { vertex: v }),
            1 => {
                self.pending.push(v);
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Narrows `v` to the single colour `c`.
    pub fn seed(&mut self, v: usize, c: Colour) -> Result<(), Conflict> {
        if !self.masks[v].contains(c) {
            // Record the emptying for diagnostics before reporting.
            let _ = self.restrict(v, ColourMask::EMPTY, Cause::Seed);
            return Err(Conflict { vertex: v });
        }
        self.restrict(v, ColourMask::single(c), Cause::Seed)
    }

    /// Runs singleton propagation to a fixpoint: every vertex with a
    /// one-colour list deletes that colour from its neighbours' lists.
    pub fn propagate(&mut self, g: &Graph) -> Result<(), Conflict> {
        while let Some(v) = self.pending.pop() {
            if self.assigned[v].is_some() {
                continue;
            }
            let Some(c) = self.masks[v].single_colour() else {
                return Err(Conflict { vertex: v });
            };
            self.assigned[v] = Some(c);
            for &w in g.neighbours(v) {
                if self.masks[w].contains(c) {
                    self.propagations += 1;
                    self.restrict(w, ColourMask::single(c).complement(), Cause::Neighbour(v))?;
                }
            }
        }
        Ok(())
    }

    /// Fixes every full-list vertex whose neighbours all miss a common colour
    /// to the smallest such colour. Returns the assignments made.
    ///
    /// Neighbours already miss the chosen colour, so one pass reaches the
    /// fixpoint and no propagation is needed afterwards.
    pub fn eliminate_safe(&mut self, g: &Graph) -> Vec<(usize, Colour)> {
        let mut out = Vec::new();
        for v in 0..self.masks.len() {
            if !self.masks[v].is_full() {
                continue;
            }
            let seen = g.neighbours(v).iter().fold(ColourMask::EMPTY, |m, &w| m.union(self.masks[w]));
            if let Some(j) = seen.complement().min() {
                self.restrict(v, ColourMask::single(j), Cause::Safe).expect("safe colour is in a full list");
                self.pending.retain(|&x| x != v);
                self.assigned[v] = Some(j);
                out.push((v, j));
            }
        }
        out
    }

    pub fn full_mask_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.masks.len()).filter(|&v| self.masks[v].is_full())
    }

    /// Replays the trail against `initial`, reproducing the current lists.
    pub fn replay(initial: &[ColourMask], trail: &[TrailEntry]) -> Vec<ColourMask> {
        let mut masks = initial.to_vec();
        for e in trail {
            masks[e.vertex] = masks[e.vertex].without(e.removed);
        }
        masks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::named;

    fn m(cs: &[Colour]) -> ColourMask {
        ColourMask::from_colours(cs.iter().copied())
    }

    #[test]
    fn mask_basics() {
        assert_eq!(m(&[1, 3]).len(), 2);
        assert_eq!(m(&[2]).single_colour(), Some(2));
        assert_eq!(m(&[1, 3]).complement(), m(&[2]));
        assert_eq!(format!("{:?}", m(&[1, 3])), "{1,3}");
    }

    #[test]
    fn propagate_edge() {
        let k2 = named::complete(2);
        let mut st = ListState::new(vec![m(&[1]), m(&[1, 2])]);
        st.propagate(&k2).unwrap();
        assert_eq!(st.masks(), &[m(&[1]), m(&[2])]);

        let mut st = ListState::new(vec![m(&[1]), m(&[1])]);
        assert!(st.propagate(&k2).is_err());
    }

    #[test]
    fn propagate_on_c5() {
        let c5 = named::cycle(5);
        let mut masks = vec![ColourMask::FULL; 5];
        masks[4] = m(&[3]);
        let mut st = ListState::new(masks);
        st.propagate(&c5).unwrap();
        assert_eq!(st.mask(0), m(&[1, 2]));
        assert_eq!(st.mask(3), m(&[1, 2]));
        assert_eq!(st.mask(1), ColourMask::FULL);
        assert_eq!(st.mask(2), ColourMask::FULL);
    }

    #[test]
    fn safe_elimination() {
        let p3 = named::path(3);
        let mut st = ListState::new(vec![m(&[1, 2]), ColourMask::FULL, m(&[1, 2])]);
        assert_eq!(st.eliminate_safe(&p3), vec![(1, 3)]);

        let mut st = ListState::new(vec![m(&[1, 2]), ColourMask::FULL, m(&[2, 3])]);
        assert!(st.eliminate_safe(&p3).is_empty());

        let isolated = named::empty(1);
        let mut st = ListState::new(vec![ColourMask::FULL]);
        assert_eq!(st.eliminate_safe(&isolated), vec![(0, 1)]);
    }

    #[test]
    fn trail_replay_matches() {
        let c5 = named::cycle(5);
        let initial = vec![ColourMask::FULL; 5];
        let mut st = ListState::new(initial.clone());
        st.seed(0, 1).unwrap();
        st.seed(2, 2).unwrap();
        st.propagate(&c5).unwrap();
        assert_eq!(ListState::replay(&initial, st.trail()), st.masks());
    }
}
