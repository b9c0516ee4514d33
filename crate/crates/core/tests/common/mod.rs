//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the solver or the ranking code under test: paths are
//! enumerated from scratch and criteria are recomputed from raw scores.

#![allow(dead_code)]

use std::collections::HashMap;

use rand::Rng;
use svoie_core::engine::{Board, GameSetup, Move, Position};
use svoie_core::{ChipMultiset, Color, PolicyKind};

#[derive(Clone, Debug, PartialEq)]
pub struct OraclePlay {
    pub score: f64,
    pub reached_goal: bool,
    pub used: usize,
    pub dist: u8,
    pub moves: Vec<Move>,
}

fn neighbours(p: Position) -> Vec<(Move, Position)> {
    let (r, c) = (p.row as i32, p.col as i32);
    [(Move::Up, r - 1, c), (Move::Down, r + 1, c), (Move::Left, r, c - 1), (Move::Right, r, c + 1)]
        .into_iter()
        .filter(|&(_, r, c)| (0..4).contains(&r) && (0..4).contains(&c))
        .map(|(m, r, c)| (m, Position { row: r as u8, col: c as u8 }))
        .collect()
}

/// Every simple path from `start` with at most `max_len` moves, colors ignored.
pub fn simple_paths(start: Position, max_len: usize) -> Vec<(Vec<Move>, Vec<Position>)> {
    fn go(
        cells: &mut Vec<Position>,
        moves: &mut Vec<Move>,
        max_len: usize,
        out: &mut Vec<(Vec<Move>, Vec<Position>)>,
    ) {
        out.push((moves.clone(), cells.clone()));
        if moves.len() == max_len {
            return;
        }
        let at = *cells.last().unwrap();
        for (m, next) in neighbours(at) {
            if cells.contains(&next) {
                continue;
            }
            cells.push(next);
            moves.push(m);
            go(cells, moves, max_len, out);
            cells.pop();
            moves.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut vec![start], &mut Vec::new(), max_len, &mut out);
    out
}

fn manhattan(a: Position, b: Position) -> u8 {
    a.row.abs_diff(b.row) + a.col.abs_diff(b.col)
}

/// Best play by exhaustive search: score, then nearest end to the goal,
/// then fewest chips, then lexicographically smallest moves.
pub fn oracle_best_play(board: &Board, start: Position, goal: Position, chips: ChipMultiset) -> OraclePlay {
    let total = chips.total() as usize;
    let mut best: Option<OraclePlay> = None;
    for (moves, cells) in simple_paths(start, total) {
        let mut need = [0u8; 4];
        for c in &cells[1..] {
            need[board.tile(*c).index()] += 1;
        }
        if need.iter().zip(chips.counts()).any(|(n, have)| *n > have) {
            continue;
        }
        let end = *cells.last().unwrap();
        let used = moves.len();
        let reached = end == goal;
        let score = (total - used) as f64 + 1.5 * used as f64 * (1.0 + if reached { 1.0 } else { 0.0 });
        let cand = OraclePlay { score, reached_goal: reached, used, dist: manhattan(end, goal), moves };
        let better = match &best {
            None => true,
            Some(b) => {
                (cand.score, std::cmp::Reverse(cand.dist), std::cmp::Reverse(cand.used))
                    > (b.score, std::cmp::Reverse(b.dist), std::cmp::Reverse(b.used))
                    || ((cand.score, cand.dist, cand.used) == (b.score, b.dist, b.used)
                        && cand.moves < b.moves)
            }
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("the empty path is always feasible")
}

fn sub_counts(c: [u8; 4]) -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..=c[0] {
        for b in 0..=c[1] {
            for g in 0..=c[2] {
                for y in 0..=c[3] {
                    out.push([a, b, g, y]);
                }
            }
        }
    }
    out
}

/// Criterion, own score, negated chips moved, offer, request.
type Candidate = (f64, f64, i32, [u8; 4], [u8; 4]);

/// Proposal chosen by an exhaustive criterion scan, as (offer, request) counts.
pub fn oracle_rank(policy: PolicyKind, setup: &GameSetup) -> ([u8; 4], [u8; 4]) {
    let mut memo: HashMap<(bool, [u8; 4]), f64> = HashMap::new();
    let mut play = |proposer: bool, inv: [u8; 4]| -> f64 {
        *memo.entry((proposer, inv)).or_insert_with(|| {
            let start = if proposer { setup.pos_p } else { setup.pos_r };
            oracle_best_play(&setup.board, start, setup.goal, ChipMultiset::from_counts(inv)).score
        })
    };
    let p = setup.chips_p.counts();
    let r = setup.chips_r.counts();
    let mut best: Option<Candidate> = None;
    for offer in sub_counts(p) {
        for request in sub_counts(r) {
            let mut post_p = [0u8; 4];
            let mut post_r = [0u8; 4];
            for i in 0..4 {
                post_p[i] = p[i] - offer[i] + request[i];
                post_r[i] = r[i] - request[i] + offer[i];
            }
            let sp = play(true, post_p);
            let sr = play(false, post_r);
            let crit = match policy {
                PolicyKind::Selfish => sp,
                PolicyKind::Cooperative => sp + sr,
                PolicyKind::Altruistic => sr,
                PolicyKind::PositiveIe => -(sp - sr).abs(),
                PolicyKind::NegativeIe => sp - sr,
            };
            let moved = -(offer.iter().chain(request.iter()).map(|&x| x as i32).sum::<i32>());
            let better = match &best {
                None => true,
                Some(b) => {
                    (crit, sp, moved) > (b.0, b.1, b.2)
                        || ((crit, sp, moved) == (b.0, b.1, b.2) && (offer, request) < (b.3, b.4))
                }
            };
            if better {
                best = Some((crit, sp, moved, offer, request));
            }
        }
    }
    let b = best.unwrap();
    (b.3, b.4)
}

pub fn random_chips<R: Rng>(rng: &mut R, n: usize) -> ChipMultiset {
    (0..n).fold(ChipMultiset::EMPTY, |m, _| m.with(Color::ALL[rng.random_range(0..4)]))
}

pub fn chips(s: &str) -> ChipMultiset {
    s.parse().unwrap()
}

/// Two agents stranded until they swap a red for a yellow.
pub fn stranded_pair() -> GameSetup {
    let board = Board::filled(Color::Blue)
        .with_tile(Position::new(0, 1), Color::Yellow)
        .with_tile(Position::new(0, 2), Color::Green)
        .with_tile(Position::new(1, 2), Color::Red);
    GameSetup {
        board,
        pos_p: Position::new(0, 0),
        pos_r: Position::new(2, 2),
        goal: Position::new(0, 2),
        chips_p: chips("RGRR"),
        chips_r: chips("YGYY"),
    }
}
