//! Colourings of the anchor cycle and the partial-colouring branches on the
//! two open `T` sets and the three free `D` sets.

use crate::graph::Graph;
use crate::skeleton::{md, Chain, Skeleton};

use super::lists::{Colour, ColourMask, Conflict, ListState};

/// Proper colourings of the five-cycle with `c_i`'s colour drawn from
/// `lists[i]`, in lexicographic order.
pub fn enumerate_c5_colourings(lists: &[ColourMask; 5]) -> Vec<[Colour; 5]> {
    let mut out = Vec::new();
    let mut cur = [0 as Colour; 5];
    fn rec(i: usize, lists: &[ColourMask; 5], cur: &mut [Colour; 5], out: &mut Vec<[Colour; 5]>) {
        if i == 5 {
            if cur[4] != cur[0] {
                out.push(*cur);
            }
            return;
        }
        for c in lists[i].colours() {
            if i == 0 || cur[i - 1] != c {
                cur[i] = c;
                rec(i + 1, lists, cur, out);
            }
        }
    }
    rec(0, lists, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TPalette {
    /// Both cycle neighbours have distinct colours; the third is forced.
    Forced(Colour),
    /// Both cycle neighbours share a colour; two options remain.
    Open(ColourMask),
}

/// What a colouring of the anchor cycle leaves for each `T_i` and `D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palettes {
    pub t: [TPalette; 5],
    /// `{1,2,3} \ {colour(c_i)}`.
    pub d: [ColourMask; 5],
    /// The two consecutive indices with open `T` palettes.
    pub open: [usize; 2],
    /// The colour used exactly once on the cycle; both open palettes contain it.
    pub shared: Colour,
    /// The three `D` indices that get branched on: all but the open ones.
    pub free_d: [usize; 3],
}

impl Palettes {
    /// The other colour of the open palette at `i`, which equals `colour(c_i)`.
    pub fn primary(&self, i: usize) -> Colour {
        match self.t[i] {
            TPalette::Open(m) => m.without(self.shared).single_colour().unwrap(),
            TPalette::Forced(c) => c,
        }
    }
}

pub fn palette_analysis(col: &[Colour; 5]) -> Palettes {
    let at = |i: usize| col[md(i)];
    let t = std::array::from_fn(|i| {
        let (a, b) = (at(i + 4), at(i + 1));
        if a != b {
            TPalette::Forced(6 - a - b)
        } else {
            TPalette::Open(ColourMask::single(a).complement())
        }
    });
    let d = std::array::from_fn(|i| ColourMask::single(col[i]).complement());
    let once = (0..5).find(|&j| col.iter().filter(|&&c| c == col[j]).count() == 1).expect("proper colouring of C5 uses one colour once");
    let open = [md(once + 2), md(once + 3)];
    debug_assert!(open.iter().all(|&i| matches!(t[i], TPalette::Open(_))));
    let mut free = (0..5).filter(|i| !open.contains(i));
    let free_d = [free.next().unwrap(), free.next().unwrap(), free.next().unwrap()];
    Palettes { t, d, open, shared: col[once], free_d }
}

/// Case on an open `T_i` with options `{p, q}` (`q` the shared colour).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TCase {
    /// `T_i` is empty.
    Empty,
    /// All of `T_i` gets `p`.
    AllPrimary,
    /// All of `T_i` gets `q`.
    AllShared,
    /// `N_k` gets `p` and `w ∈ N_{k+1} \ N_k` gets `q`.
    PrimaryThenShared { k: usize, w: usize },
    /// `N_k` gets `q` and `w ∈ N_{k+1} \ N_k` gets `p`.
    SharedThenPrimary { k: usize, w: usize },
}

impl TCase {
    pub fn tag(self) -> Option<char> {
        match self {
            TCase::Empty => None,
            TCase::PrimaryThenShared { .. } => Some('a'),
            TCase::SharedThenPrimary { .. } => Some('b'),
            TCase::AllPrimary => Some('c'),
            TCase::AllShared => Some('d'),
        }
    }
}

/// Case on a free `D_i` with options `{a, b}`, `a < b`, anchor `v_i = min D_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DCase {
    Empty,
    AllLow,
    AllHigh,
    /// `v_i` gets `a`, `v'` gets `b`.
    AnchorLow { other: usize },
    /// `v_i` gets `b`, `v'` gets `a`.
    AnchorHigh { other: usize },
}

impl DCase {
    pub fn tag(self) -> Option<char> {
        match self {
            DCase::Empty => None,
            DCase::AnchorLow { .. } => Some('e'),
            DCase::AnchorHigh { .. } => Some('f'),
            DCase::AllLow => Some('g'),
            DCase::AllHigh => Some('h'),
        }
    }
}

/// One partial colouring: a cycle colouring plus a case on each open `T`
/// index and each free `D` index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchDescriptor {
    pub c5_colouring: [Colour; 5],
    pub t_cases: [(usize, TCase); 2],
    pub d_cases: [(usize, DCase); 3],
}

/// A single coordinate of a branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Choice {
    T(usize, TCase),
    D(usize, DCase),
}

/// Per-coordinate choice lists for one cycle colouring; the branches are
/// their Cartesian product in lexicographic order.
#[derive(Debug, Clone)]
pub struct BranchSpace {
    pub colouring: [Colour; 5],
    pub palettes: Palettes,
    pub coords: Vec<Vec<Choice>>,
}

impl BranchSpace {
    pub fn new(sk: &Skeleton, colouring: [Colour; 5]) -> Self {
        let palettes = palette_analysis(&colouring);
        let mut coords = Vec::with_capacity(5);
        for &i in &palettes.open {
            let mut list = Vec::new();
            match sk.chain(i) {
                None => list.push(Choice::T(i, TCase::Empty)),
                Some(chain) => {
                    list.push(Choice::T(i, TCase::AllPrimary));
                    list.push(Choice::T(i, TCase::AllShared));
                    for k in 0..=chain.r {
                        for w in chain.step(k).iter() {
                            list.push(Choice::T(i, TCase::PrimaryThenShared { k, w }));
                        }
                    }
                    for k in 0..=chain.r {
                        for w in chain.step(k).iter() {
                            list.push(Choice::T(i, TCase::SharedThenPrimary { k, w }));
                        }
                    }
                }
            }
            coords.push(list);
        }
        for &i in &palettes.free_d {
            let di = &sk.d[i];
            let mut list = Vec::new();
            match di.first() {
                None => list.push(Choice::D(i, DCase::Empty)),
                Some(anchor) => {
                    list.push(Choice::D(i, DCase::AllLow));
                    list.push(Choice::D(i, DCase::AllHigh));
                    list.extend(di.iter().filter(|&v| v != anchor).map(|other| Choice::D(i, DCase::AnchorLow { other })));
                    list.extend(di.iter().filter(|&v| v != anchor).map(|other| Choice::D(i, DCase::AnchorHigh { other })));
                }
            }
            coords.push(list);
        }
        BranchSpace { colouring, palettes, coords }
    }

    /// Number of branches: the product of the coordinate list lengths.
    pub fn len(&self) -> u128 {
        self.coords.iter().map(|c| c.len() as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn descriptor(&self, picks: &[Choice]) -> BranchDescriptor {
        let t = |c: Choice| match c {
            Choice::T(i, tc) => (i, tc),
            Choice::D(..) => unreachable!(),
        };
        let d = |c: Choice| match c {
            Choice::D(i, dc) => (i, dc),
            Choice::T(..) => unreachable!(),
        };
        BranchDescriptor {
            c5_colouring: self.colouring,
            t_cases: [t(picks[0]), t(picks[1])],
            d_cases: [d(picks[2]), d(picks[3]), d(picks[4])],
        }
    }

    /// Lazy stream of all branches in order.
    pub fn iter(&self) -> Branches<'_> {
        Branches { done: self.coords.iter().any(Vec::is_empty), idx: vec![0; self.coords.len()], space: self }
    }
}

/// Odometer over a [`BranchSpace`]; the last coordinate varies fastest.
pub struct Branches<'a> {
    space: &'a BranchSpace,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Branches<'_> {
    type Item = BranchDescriptor;

    fn next(&mut self) -> Option<BranchDescriptor> {
        if self.done {
            return None;
        }
        let coords = &self.space.coords;
        let picks: Vec<Choice> = self.idx.iter().zip(coords).map(|(&i, c)| c[i]).collect();
        let out = self.space.descriptor(&picks);
        let mut pos = self.idx.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < coords[pos].len() {
                break;
            }
            self.idx[pos] = 0;
        }
        Some(out)
    }
}

/// Closed-form branch count for one cycle colouring: `2·|T_i|` per non-empty
/// open `T_i` and `2·|D_i|` per non-empty free `D_i`.
pub fn branch_count_formula(sk: &Skeleton, colouring: &[Colour; 5]) -> u128 {
    let p = palette_analysis(colouring);
    let t: u128 = p
        .open
        .iter()
        .map(|&i| match sk.chain(i) {
            None => 1,
            Some(ch) => 2 + 2 * (0..=ch.r).map(|k| ch.step(k).len() as u128).sum::<u128>(),
        })
        .product();
    let d: u128 = p
        .free_d
        .iter()
        .map(|&i| if sk.d[i].is_empty() { 1 } else { 2 + 2 * (sk.d[i].len() as u128 - 1) })
        .product();
    t * d
}

/// Seeds fixed by the cycle colouring alone: the cycle itself and every
/// forced `T_i`.
pub fn base_seeds(sk: &Skeleton, colouring: &[Colour; 5], palettes: &Palettes) -> Vec<(usize, Colour)> {
    let mut out: Vec<(usize, Colour)> = sk.c.iter().copied().zip(colouring.iter().copied()).collect();
    for (i, p) in palettes.t.iter().enumerate() {
        if let TPalette::Forced(c) = *p {
            out.extend(sk.t[i].iter().map(|v| (v, c)));
        }
    }
    out
}

/// Seeds contributed by one coordinate choice.
pub fn choice_seeds(sk: &Skeleton, palettes: &Palettes, choice: Choice) -> Vec<(usize, Colour)> {
    match choice {
        Choice::T(i, tc) => {
            let (p, q) = (palettes.primary(i), palettes.shared);
            let chain: Option<&Chain> = sk.chain(i);
            let all = |c: Colour| sk.t[i].iter().map(|v| (v, c)).collect::<Vec<_>>();
            let level = |k: usize, c: Colour| chain.unwrap().levels[k].iter().map(move |v| (v, c));
            match tc {
                TCase::Empty => vec![],
                TCase::AllPrimary => all(p),
                TCase::AllShared => all(q),
                TCase::PrimaryThenShared { k, w } => level(k, p).chain([(w, q)]).collect(),
                TCase::SharedThenPrimary { k, w } => level(k, q).chain([(w, p)]).collect(),
            }
        }
        Choice::D(i, dc) => {
            let pair = palettes.d[i];
            let a = pair.min().unwrap();
            let b = pair.without(a).min().unwrap();
            let di = &sk.d[i];
            match dc {
                DCase::Empty => vec![],
                DCase::AllLow => di.iter().map(|v| (v, a)).collect(),
                DCase::AllHigh => di.iter().map(|v| (v, b)).collect(),
                DCase::AnchorLow { other } => vec![(di.first().unwrap(), a), (other, b)],
                DCase::AnchorHigh { other } => vec![(di.first().unwrap(), b), (other, a)],
            }
        }
    }
}

/// Every seed assignment of a branch (cycle, forced `T` sets, cases).
pub fn branch_seeds(sk: &Skeleton, b: &BranchDescriptor) -> Vec<(usize, Colour)> {
    let palettes = palette_analysis(&b.c5_colouring);
    let mut out = base_seeds(sk, &b.c5_colouring, &palettes);
    for &(i, tc) in &b.t_cases {
        out.extend(choice_seeds(sk, &palettes, Choice::T(i, tc)));
    }
    for &(i, dc) in &b.d_cases {
        out.extend(choice_seeds(sk, &palettes, Choice::D(i, dc)));
    }
    out
}

/// Seeds a branch into `st`, failing when a seed colour is not in a list.
pub fn apply_branch(st: &mut ListState, b: &BranchDescriptor, sk: &Skeleton) -> Result<(), Conflict> {
    for (v, c) in branch_seeds(sk, b) {
        st.seed(v, c)?;
    }
    Ok(())
}

/// `apply_branch` followed by propagation.
pub fn apply_and_propagate(st: &mut ListState, b: &BranchDescriptor, sk: &Skeleton, g: &Graph) -> Result<(), Conflict> {
    apply_branch(st, b, sk)?;
    st.propagate(g)
}
