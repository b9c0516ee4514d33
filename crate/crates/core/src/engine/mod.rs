//! Colored Trails game engine: board generation, optimal play and exchange scoring.

mod board;
mod exchange;
mod solver;

pub use board::{
    generate_board, generate_chips, generate_setup, goal_is_valid, Board, GameSetup, Move, Position,
    BOARD_CELLS, BOARD_SIDE, CHIPS_PER_AGENT,
};
pub use exchange::{enumerate_exchanges, outcome_scores, ExchangeOutcome, RoundEvaluator};
pub use solver::{best_play, score, MoveSeq, PathSolver, PlayResult, Score};
