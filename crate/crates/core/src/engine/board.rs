use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::chips::{ChipMultiset, Color};

pub const BOARD_SIDE: u8 = 4;
pub const BOARD_CELLS: usize = (BOARD_SIDE as usize) * (BOARD_SIDE as usize);
pub const CHIPS_PER_AGENT: u8 = 4;

/// A cell on the 4×4 board.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub row: u8,
    pub col: u8,
}

impl Position {
    /// Panics when either coordinate is off the board.
    pub fn new(row: u8, col: u8) -> Self {
        assert!(row < BOARD_SIDE && col < BOARD_SIDE, "position ({row},{col}) off board");
        Position { row, col }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.row as usize * BOARD_SIDE as usize + self.col as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        Position { row: (i / BOARD_SIDE as usize) as u8, col: (i % BOARD_SIDE as usize) as u8 }
    }

    #[inline]
    pub fn manhattan(self, other: Position) -> u8 {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }

    /// Orthogonal neighbours share an edge.
    #[inline]
    pub fn is_adjacent(self, other: Position) -> bool {
        self.manhattan(other) == 1
    }

    /// The neighbour reached by `mv`, if it is on the board.
    #[inline]
    pub fn step(self, mv: Move) -> Option<Position> {
        let (row, col) = match mv {
            Move::Up => (self.row.checked_sub(1)?, self.col),
            Move::Down => (self.row + 1, self.col),
            Move::Left => (self.row, self.col.checked_sub(1)?),
            Move::Right => (self.row, self.col + 1),
        };
        (row < BOARD_SIDE && col < BOARD_SIDE).then_some(Position { row, col })
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A single orthogonal move. Declaration order is the lexicographic move order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Up,
    Down,
    Left,
    Right,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Up, Move::Down, Move::Left, Move::Right];
}

/// A 4×4 grid of colored tiles, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Board {
    tiles: [Color; BOARD_CELLS],
}

impl Board {
    pub fn from_tiles(tiles: [Color; BOARD_CELLS]) -> Self {
        Board { tiles }
    }

    pub fn filled(color: Color) -> Self {
        Board { tiles: [color; BOARD_CELLS] }
    }

    pub fn with_tile(mut self, pos: Position, color: Color) -> Self {
        self.tiles[pos.index()] = color;
        self
    }

    #[inline]
    pub fn tile(&self, pos: Position) -> Color {
        self.tiles[pos.index()]
    }

    pub fn tiles(&self) -> &[Color; BOARD_CELLS] {
        &self.tiles
    }
}

/// A complete randomized round: board, both starts, the goal and both allocations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSetup {
    pub board: Board,
    pub pos_p: Position,
    pub pos_r: Position,
    pub goal: Position,
    pub chips_p: ChipMultiset,
    pub chips_r: ChipMultiset,
}

impl GameSetup {
    /// The same round seen with the two agents' roles exchanged.
    pub fn swapped(&self) -> GameSetup {
        GameSetup {
            board: self.board,
            pos_p: self.pos_r,
            pos_r: self.pos_p,
            goal: self.goal,
            chips_p: self.chips_r,
            chips_r: self.chips_p,
        }
    }

    /// Start and goal placement rules.
    pub fn placement_is_valid(&self) -> bool {
        goal_is_valid(self.goal, self.pos_p, self.pos_r) && self.pos_p != self.pos_r
    }
}

/// Goal must differ from both starts and not share an edge with either.
pub fn goal_is_valid(goal: Position, pos_p: Position, pos_r: Position) -> bool {
    goal != pos_p && goal != pos_r && !goal.is_adjacent(pos_p) && !goal.is_adjacent(pos_r)
}

fn random_color<R: Rng + ?Sized>(rng: &mut R) -> Color {
    Color::from_index(rng.random_range(0..4usize))
}

fn random_position<R: Rng + ?Sized>(rng: &mut R) -> Position {
    Position::from_index(rng.random_range(0..BOARD_CELLS))
}

/// Each tile drawn independently and uniformly from the four colors.
pub fn generate_board<R: Rng + ?Sized>(rng: &mut R) -> Board {
    let mut tiles = [Color::Red; BOARD_CELLS];
    for t in tiles.iter_mut() {
        *t = random_color(rng);
    }
    Board { tiles }
}

pub fn generate_chips<R: Rng + ?Sized>(rng: &mut R, n: u8) -> ChipMultiset {
    (0..n).fold(ChipMultiset::EMPTY, |m, _| m.with(random_color(rng)))
}

/// Draws a fresh round. Starts and goal are placed by rejection sampling so
/// each is uniform over the cells that satisfy the placement rules.
pub fn generate_setup<R: Rng + ?Sized>(rng: &mut R) -> GameSetup {
    let board = generate_board(rng);
    let pos_p = random_position(rng);
    let pos_r = loop {
        let p = random_position(rng);
        if p != pos_p {
            break p;
        }
    };
    let goal = loop {
        let g = random_position(rng);
        if goal_is_valid(g, pos_p, pos_r) {
            break g;
        }
    };
    let chips_p = generate_chips(rng, CHIPS_PER_AGENT);
    let chips_r = generate_chips(rng, CHIPS_PER_AGENT);
    GameSetup { board, pos_p, pos_r, goal, chips_p, chips_r }
}
