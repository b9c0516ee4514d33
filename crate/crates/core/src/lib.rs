//! Societies of agents negotiating in repeated Colored Trails games.
//!
//! Agents hold a social value orientation (altruistic, cooperative or
//! selfish). In `svoie` societies they also carry an integral-emotion valence
//! that rises when they reach the goal and falls when they miss it; its
//! magnitude is the chance of switching to an inequity-averse (positive) or
//! competitive (negative) policy for a single decision.
//!
//! - [`engine`]: boards, optimal play, exchange enumeration and scoring
//! - [`preferences`]: utilities and the five decision policies
//! - [`emotion`]: valence state and per-decision policy selection
//! - [`society`]: pairing, two-round games and the seeded experiment loop
//! - [`stats`]: welfare, CoV, Welch t-test and Cohen's d
//! - [`io`]: config, round logs, summaries, manifests and comparison tables

pub mod chips;
pub mod emotion;
pub mod engine;
pub mod error;
pub mod io;
pub mod preferences;
pub mod society;
pub mod stats;

pub use chips::{ChipMultiset, Color};
pub use emotion::{select_policy, update_emotion, AgentProfile, EmotionState, Mode};
pub use engine::{
    best_play, enumerate_exchanges, generate_board, generate_setup, outcome_scores, score, Board,
    ExchangeOutcome, GameSetup, PlayResult, Position, RoundEvaluator, Score,
};
pub use error::{Error, Result, StatsError};
pub use preferences::{accept, rank_proposals, PolicyKind, Proposal, Role, SvoTrait, UtilityView};
pub use society::{
    negotiate, pair_agents, play_game, run_simulation, simulate, Negotiation, RoundRecord, SimulationConfig,
    SocietyConfig, SocietyPreset, TraitCounts,
};
pub use stats::{
    cohens_d, collective_welfare, cov, individual_welfare, summarize, two_sample_t_test, ComparisonResult,
    WelfareSample, WelfareTable,
};
