//! Society construction and the experiment loop: random pairing each time
//! step, two-round games with swapped roles, emotion updates and logging.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chips::ChipMultiset;
use crate::emotion::{select_policy, AgentProfile, EmotionState, Mode};
use crate::engine::{generate_setup, GameSetup, PlayResult, RoundEvaluator, Score};
use crate::error::{Error, Result};
use crate::preferences::{accept, rank_proposals, PolicyKind, Proposal, SvoTrait};

pub const DEFAULT_STEPS: u32 = 1000;
pub const DEFAULT_REPEATS: u32 = 3;
pub const FULL_POPULATION: u32 = 300;
pub const DESK_POPULATION: u32 = 60;
pub const DESK_STEPS: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SocietyPreset {
    #[serde(rename = "altr-coop")]
    AltrCoop,
    #[serde(rename = "altr-self")]
    AltrSelf,
    #[serde(rename = "coop-self")]
    CoopSelf,
    #[serde(rename = "mixed")]
    Mixed,
}

impl SocietyPreset {
    pub const ALL: [SocietyPreset; 4] =
        [SocietyPreset::AltrCoop, SocietyPreset::AltrSelf, SocietyPreset::CoopSelf, SocietyPreset::Mixed];

    pub fn name(self) -> &'static str {
        match self {
            SocietyPreset::AltrCoop => "altr-coop",
            SocietyPreset::AltrSelf => "altr-self",
            SocietyPreset::CoopSelf => "coop-self",
            SocietyPreset::Mixed => "mixed",
        }
    }

    pub fn traits(self) -> &'static [SvoTrait] {
        use SvoTrait::*;
        match self {
            SocietyPreset::AltrCoop => &[Altruistic, Cooperative],
            SocietyPreset::AltrSelf => &[Altruistic, Selfish],
            SocietyPreset::CoopSelf => &[Cooperative, Selfish],
            SocietyPreset::Mixed => &[Altruistic, Cooperative, Selfish],
        }
    }

    /// Equal shares of the preset's traits. `population` must split evenly.
    pub fn counts(self, population: u32) -> TraitCounts {
        let traits = self.traits();
        let share = population / traits.len() as u32;
        let mut counts = TraitCounts::default();
        for &t in traits {
            *counts.get_mut(t) = share;
        }
        counts
    }
}

impl fmt::Display for SocietyPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SocietyPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SocietyPreset::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            Error::Config(format!(
                "unknown society preset {s:?} (expected altr-coop, altr-self, coop-self or mixed)"
            ))
        })
    }
}

/// Number of agents holding each SVO trait.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraitCounts {
    #[serde(default)]
    pub altr: u32,
    #[serde(default)]
    pub coop: u32,
    #[serde(default, rename = "self")]
    pub selfish: u32,
}

impl TraitCounts {
    pub fn total(&self) -> u32 {
        self.altr + self.coop + self.selfish
    }

    pub fn get(&self, t: SvoTrait) -> u32 {
        match t {
            SvoTrait::Altruistic => self.altr,
            SvoTrait::Cooperative => self.coop,
            SvoTrait::Selfish => self.selfish,
        }
    }

    fn get_mut(&mut self, t: SvoTrait) -> &mut u32 {
        match t {
            SvoTrait::Altruistic => &mut self.altr,
            SvoTrait::Cooperative => &mut self.coop,
            SvoTrait::Selfish => &mut self.selfish,
        }
    }

    /// Traits with at least one agent, in canonical order.
    pub fn present(&self) -> Vec<SvoTrait> {
        SvoTrait::ALL.into_iter().filter(|&t| self.get(t) > 0).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocietyConfig {
    pub name: SocietyPreset,
    pub counts: TraitCounts,
    pub mode: Mode,
}

impl SocietyConfig {
    pub fn preset(name: SocietyPreset, mode: Mode) -> Self {
        SocietyConfig { name, counts: name.counts(FULL_POPULATION), mode }
    }

    pub fn desk(name: SocietyPreset, mode: Mode) -> Self {
        SocietyConfig { name, counts: name.counts(DESK_POPULATION), mode }
    }

    pub fn population(&self) -> u32 {
        self.counts.total()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.population();
        if n == 0 {
            return Err(Error::Config("population is empty".into()));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::Config(format!("population must be even for pairing, got {n}")));
        }
        Ok(())
    }

    /// Agents numbered from 0: altruistic first, then cooperative, then selfish.
    /// Both modes build identical id/trait layouts.
    pub fn build_population(&self) -> Vec<AgentProfile> {
        let mut agents = Vec::with_capacity(self.population() as usize);
        for t in SvoTrait::ALL {
            for _ in 0..self.counts.get(t) {
                agents.push(AgentProfile::new(agents.len() as u32, t, self.mode));
            }
        }
        agents
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub society: SocietyConfig,
    pub steps: u32,
    pub repeats: u32,
    pub master_seed: u64,
}

impl SimulationConfig {
    pub fn new(society: SocietyConfig, master_seed: u64) -> Self {
        SimulationConfig { society, steps: DEFAULT_STEPS, repeats: DEFAULT_REPEATS, master_seed }
    }

    pub fn validate(&self) -> Result<()> {
        self.society.validate()?;
        if self.steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be at least 1".into()));
        }
        Ok(())
    }

    pub fn record_count(&self) -> u64 {
        u64::from(self.repeats) * u64::from(self.steps) * u64::from(self.society.population())
    }
}

/// One negotiation round as logged.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub repeat: u32,
    pub step: u32,
    /// 1 or 2 within a game.
    pub round: u8,
    pub society: SocietyPreset,
    pub mode: Mode,
    pub proposer: u32,
    pub responder: u32,
    pub proposer_svo: SvoTrait,
    pub responder_svo: SvoTrait,
    pub proposer_policy: PolicyKind,
    pub responder_policy: PolicyKind,
    pub offer: ChipMultiset,
    pub request: ChipMultiset,
    pub accepted: bool,
    pub score_p: Score,
    pub score_r: Score,
    pub goal_p: bool,
    pub goal_r: bool,
    /// Proposer valence after this round's update.
    pub emotion_p: EmotionState,
    pub emotion_r: EmotionState,
}

impl RoundRecord {
    pub fn proposal(&self) -> Proposal {
        Proposal { offer: self.offer, request: self.request }
    }
}

const STREAM_PAIRING: u64 = 1;
const STREAM_GAME: u64 = 2;
const STREAM_POLICY: u64 = 3;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of an independent substream addressed by `path` under `master`.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter().fold(splitmix(master), |h, &x| splitmix(h ^ splitmix(x)))
}

fn substream(master: u64, path: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(master, path))
}

/// A uniform random perfect matching: shuffle, then pair neighbours.
///
/// Returns index pairs into `population`. Panics on an odd population; configs
/// reject that at load time.
pub fn pair_agents<R: Rng + ?Sized>(population: &[AgentProfile], rng: &mut R) -> Vec<(usize, usize)> {
    assert!(population.len().is_multiple_of(2), "cannot pair an odd population");
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.shuffle(rng);
    order.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Where a game sits in the run, for labelling its records.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameContext {
    pub repeat: u32,
    pub step: u32,
    pub society: SocietyPreset,
}

/// How one round's negotiation and play resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Negotiation {
    pub proposal: Proposal,
    pub accepted: bool,
    pub play_p: PlayResult,
    pub play_r: PlayResult,
}

/// Resolves a round on a fixed setup: the proposer ranks every exchange, the
/// responder accepts or rejects, and both agents play their final chips.
pub fn negotiate(
    setup: &GameSetup,
    proposer_policy: PolicyKind,
    responder_policy: PolicyKind,
) -> Negotiation {
    let eval = RoundEvaluator::new(setup);
    let proposal = rank_proposals(proposer_policy, &eval, &eval.exchanges());
    let accepted = accept(responder_policy, &eval, &proposal);
    let outcome = if accepted {
        proposal.outcome(setup).expect("ranked proposals are feasible")
    } else {
        eval.no_trade()
    };
    Negotiation {
        proposal,
        accepted,
        play_p: eval.play_proposer(outcome.post_chips_p),
        play_r: eval.play_responder(outcome.post_chips_r),
    }
}

fn play_round(
    ctx: &GameContext,
    round: u8,
    proposer: &mut AgentProfile,
    responder: &mut AgentProfile,
    game_rng: &mut ChaCha8Rng,
    policy_rng: &mut ChaCha8Rng,
) -> RoundRecord {
    let setup = generate_setup(game_rng);
    let proposer_policy = select_policy(proposer, policy_rng);
    let responder_policy = select_policy(responder, policy_rng);
    let Negotiation { proposal, accepted, play_p, play_r } =
        negotiate(&setup, proposer_policy, responder_policy);
    proposer.record_round(play_p.reached_goal);
    responder.record_round(play_r.reached_goal);

    RoundRecord {
        repeat: ctx.repeat,
        step: ctx.step,
        round,
        society: ctx.society,
        mode: proposer.mode,
        proposer: proposer.id,
        responder: responder.id,
        proposer_svo: proposer.svo,
        responder_svo: responder.svo,
        proposer_policy,
        responder_policy,
        offer: proposal.offer,
        request: proposal.request,
        accepted,
        score_p: play_p.score,
        score_r: play_r.score,
        goal_p: play_p.reached_goal,
        goal_r: play_r.reached_goal,
        emotion_p: proposer.emotion,
        emotion_r: responder.emotion,
    }
}

/// Plays one two-round game. A fair coin picks the first proposer; roles swap
/// for the second round. Each round draws a fresh setup from `game_rng`;
/// policy draws come from `policy_rng`.
pub fn play_game(
    ctx: &GameContext,
    a: &mut AgentProfile,
    b: &mut AgentProfile,
    game_rng: &mut ChaCha8Rng,
    policy_rng: &mut ChaCha8Rng,
) -> [RoundRecord; 2] {
    let a_first = game_rng.random_bool(0.5);
    let (first, second) = if a_first { (a, b) } else { (b, a) };
    let r1 = play_round(ctx, 1, first, second, game_rng, policy_rng);
    let r2 = play_round(ctx, 2, second, first, game_rng, policy_rng);
    [r1, r2]
}

fn run_step(
    config: &SimulationConfig,
    repeat: u32,
    step: u32,
    agents: &mut [AgentProfile],
    pool: Option<&rayon::ThreadPool>,
) -> Vec<RoundRecord> {
    let seed = config.master_seed;
    let path = [u64::from(repeat), u64::from(step)];
    let pairs = pair_agents(agents, &mut substream(seed, &[path[0], path[1], STREAM_PAIRING]));
    let ctx = GameContext { repeat, step, society: config.society.name };

    let play = |(k, &(i, j)): (usize, &(usize, usize))| {
        let mut a = agents[i];
        let mut b = agents[j];
        let mut game_rng = substream(seed, &[path[0], path[1], STREAM_GAME, k as u64]);
        let mut policy_rng = substream(seed, &[path[0], path[1], STREAM_POLICY, k as u64]);
        let records = play_game(&ctx, &mut a, &mut b, &mut game_rng, &mut policy_rng);
        (records, a, b)
    };
    let results: Vec<_> = match pool {
        Some(pool) => pool.install(|| pairs.par_iter().enumerate().map(play).collect()),
        None => pairs.iter().enumerate().map(play).collect(),
    };

    // Barrier: all emotion updates commit before the next pairing.
    let mut records = Vec::with_capacity(results.len() * 2);
    for (rs, a, b) in results {
        agents[a.id as usize] = a;
        agents[b.id as usize] = b;
        records.extend(rs);
    }
    records
}

/// Runs every repeat and step, handing records to `sink` in canonical order
/// (repeat, step, pair, round). Output is identical for any `threads`;
/// `threads == 0` uses the rayon default.
pub fn simulate<F: FnMut(&RoundRecord)>(
    config: &SimulationConfig,
    threads: usize,
    mut sink: F,
) -> Result<()> {
    config.validate()?;
    let pool = if threads == 1 {
        None
    } else {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?,
        )
    };
    for repeat in 0..config.repeats {
        let mut agents = config.society.build_population();
        for step in 0..config.steps {
            for r in run_step(config, repeat, step, &mut agents, pool.as_ref()) {
                sink(&r);
            }
        }
    }
    Ok(())
}

/// All records of a run, in canonical order.
pub fn run_simulation(config: &SimulationConfig) -> Result<Vec<RoundRecord>> {
    let mut out = Vec::with_capacity(config.record_count() as usize);
    simulate(config, 1, |r| out.push(*r))?;
    Ok(out)
}
