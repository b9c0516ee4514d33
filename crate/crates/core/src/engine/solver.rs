//! Optimal chip play on a single board.
//!
//! A round's two inventories always draw from the same fixed pool (the chips
//! both agents were dealt), so every post-trade inventory is a sub-multiset of
//! that pool. [`PathSolver`] enumerates the simple paths affordable from the
//! pool once, then folds them into a table indexed by sub-multiset. Each
//! lookup afterwards is O(1).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::board::{Board, Move, Position};
use crate::chips::{ChipMultiset, Color};

/// A game score held as an integer number of half-points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Score(u16);

impl Score {
    pub const ZERO: Score = Score(0);

    pub const fn from_halves(halves: u16) -> Self {
        Score(halves)
    }

    pub const fn halves(self) -> u16 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Parses an exact multiple of 0.5.
    pub fn from_f64(v: f64) -> Option<Score> {
        let h = v * 2.0;
        (h >= 0.0 && h.fract() == 0.0 && h <= f64::from(u16::MAX)).then_some(Score(h as u16))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}.5", self.0 / 2)
        }
    }
}

impl Serialize for Score {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

impl<'de> Deserialize<'de> for Score {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        Score::from_f64(v).ok_or_else(|| serde::de::Error::custom(format!("{v} is not a score")))
    }
}

/// `n + 1.5·u·(1 + g)` for `n` unused chips, `u` used chips and goal flag `g`.
pub fn score(unused: u8, used: u8, reached_goal: bool) -> Score {
    let g = u16::from(reached_goal);
    Score(2 * u16::from(unused) + 3 * u16::from(used) * (1 + g))
}

/// Up to eight moves packed two bits each, first move most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSeq {
    code: u16,
    len: u8,
}

impl MoveSeq {
    pub const MAX_LEN: u8 = 8;

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn push(self, mv: Move) -> MoveSeq {
        debug_assert!(self.len < Self::MAX_LEN);
        MoveSeq { code: (self.code << 2) | mv as u16, len: self.len + 1 }
    }

    pub fn moves(&self) -> Vec<Move> {
        (0..self.len)
            .map(|i| {
                let shift = 2 * (self.len - 1 - i);
                Move::ALL[((self.code >> shift) & 3) as usize]
            })
            .collect()
    }

    pub fn from_moves(moves: &[Move]) -> MoveSeq {
        moves.iter().fold(MoveSeq::default(), |s, &m| s.push(m))
    }

    fn padded(&self) -> u16 {
        if self.len == 0 {
            0
        } else {
            self.code << (2 * (Self::MAX_LEN - self.len))
        }
    }
}

impl Ord for MoveSeq {
    /// Lexicographic in Up < Down < Left < Right; a prefix sorts first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.padded().cmp(&other.padded()).then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for MoveSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The outcome of an agent spending its chips optimally.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlayResult {
    pub score: Score,
    pub reached_goal: bool,
    pub chips_used: u8,
    pub chips_unused: u8,
    pub final_pos: Position,
    pub path: MoveSeq,
}

#[derive(Clone, Copy, Debug)]
struct PathInfo {
    cost: ChipMultiset,
    used: u8,
    reached_goal: bool,
    dist: u8,
    end: Position,
    moves: MoveSeq,
}

impl PathInfo {
    /// Score gain over leaving every chip unused, in half-points.
    #[inline]
    fn gain(&self) -> u16 {
        let u = u16::from(self.used);
        u + 3 * u * u16::from(self.reached_goal)
    }

    /// `Greater` means `self` is the preferred play. With the inventory fixed,
    /// score order equals gain order.
    fn preference(&self, other: &PathInfo) -> Ordering {
        self.gain()
            .cmp(&other.gain())
            .then(other.dist.cmp(&self.dist))
            .then(other.used.cmp(&self.used))
            .then(other.moves.cmp(&self.moves))
    }
}

const NONE: u16 = u16::MAX;

/// Best-play table for one (board, start, goal) over every sub-multiset of a chip pool.
#[derive(Clone, Debug)]
pub struct PathSolver {
    pool: ChipMultiset,
    strides: [usize; 4],
    paths: Vec<PathInfo>,
    best: Vec<u16>,
}

impl PathSolver {
    pub fn new(board: &Board, start: Position, goal: Position, pool: ChipMultiset) -> Self {
        let counts = pool.counts();
        let mut strides = [0usize; 4];
        let mut size = 1usize;
        for i in 0..4 {
            strides[i] = size;
            size *= counts[i] as usize + 1;
        }

        let mut paths = Vec::new();
        let mut walker = Walker { board, goal, pool, paths: &mut paths };
        walker.walk(start, 1u16 << start.index(), ChipMultiset::EMPTY, MoveSeq::default());

        let index_of = |m: &ChipMultiset| -> usize {
            m.counts().iter().zip(strides).map(|(&c, s)| c as usize * s).sum()
        };

        let mut best = vec![NONE; size];
        for (i, p) in paths.iter().enumerate() {
            let slot = &mut best[index_of(&p.cost)];
            if *slot == NONE || p.preference(&paths[*slot as usize]) == Ordering::Greater {
                *slot = i as u16;
            }
        }
        // Fold in the best play of every one-chip-smaller inventory; ascending
        // index order visits all subsets first.
        for idx in 0..size {
            let mut cur = best[idx];
            let mut rest = idx;
            for c in (0..4).rev() {
                let digit = rest / strides[c];
                rest %= strides[c];
                if digit == 0 {
                    continue;
                }
                let cand = best[idx - strides[c]];
                if cand != NONE
                    && (cur == NONE
                        || paths[cand as usize].preference(&paths[cur as usize]) == Ordering::Greater)
                {
                    cur = cand;
                }
            }
            best[idx] = cur;
        }

        PathSolver { pool, strides, paths, best }
    }

    pub fn pool(&self) -> ChipMultiset {
        self.pool
    }

    /// Number of distinct simple paths affordable from the pool (empty path included).
    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Panics if `chips` is not drawn from the pool.
    pub fn play(&self, chips: ChipMultiset) -> PlayResult {
        assert!(chips.is_subset_of(&self.pool), "{chips} is not within pool {}", self.pool);
        let idx: usize = chips.counts().iter().zip(self.strides).map(|(&c, s)| c as usize * s).sum();
        let p = &self.paths[self.best[idx] as usize];
        let unused = chips.total() - p.used;
        PlayResult {
            score: score(unused, p.used, p.reached_goal),
            reached_goal: p.reached_goal,
            chips_used: p.used,
            chips_unused: unused,
            final_pos: p.end,
            path: p.moves,
        }
    }
}

struct Walker<'a> {
    board: &'a Board,
    goal: Position,
    pool: ChipMultiset,
    paths: &'a mut Vec<PathInfo>,
}

impl Walker<'_> {
    fn walk(&mut self, at: Position, visited: u16, cost: ChipMultiset, moves: MoveSeq) {
        self.paths.push(PathInfo {
            cost,
            used: moves.len() as u8,
            reached_goal: at == self.goal,
            dist: at.manhattan(self.goal),
            end: at,
            moves,
        });
        if moves.len() as u8 == MoveSeq::MAX_LEN {
            return;
        }
        for mv in Move::ALL {
            let Some(next) = at.step(mv) else { continue };
            let bit = 1u16 << next.index();
            if visited & bit != 0 {
                continue;
            }
            let color: Color = self.board.tile(next);
            if cost.count(color) >= self.pool.count(color) {
                continue;
            }
            self.walk(next, visited | bit, cost.with(color), moves.push(mv));
        }
    }
}

/// Highest-scoring play from `start` with `chips`.
///
/// Ties on score go to the play ending nearest the goal, then the one using
/// fewer chips, then the lexicographically smallest move sequence.
pub fn best_play(board: &Board, start: Position, goal: Position, chips: ChipMultiset) -> PlayResult {
    PathSolver::new(board, start, goal, chips).play(chips)
}
