//! Integral-emotion valence and per-decision policy selection.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::preferences::{PolicyKind, SvoTrait};

/// Valence on the five-point lattice {-1, -0.5, 0, 0.5, 1}, stored in half steps.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmotionState(i8);

impl EmotionState {
    pub const NEUTRAL: EmotionState = EmotionState(0);
    pub const ALL: [EmotionState; 5] =
        [EmotionState(-2), EmotionState(-1), EmotionState(0), EmotionState(1), EmotionState(2)];

    /// `None` unless `v` is one of the five lattice values.
    pub fn from_f64(v: f64) -> Option<Self> {
        EmotionState::ALL.into_iter().find(|e| e.value() == v)
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// Probability of acting on an emotion policy at the next decision.
    pub fn intensity(self) -> f64 {
        self.value().abs()
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// One step up on reaching the goal, one step down otherwise, clamped to [-1, 1].
    pub fn updated(self, goal_achieved: bool) -> Self {
        let step = if goal_achieved { 1 } else { -1 };
        EmotionState((self.0 + step).clamp(-2, 2))
    }
}

impl fmt::Display for EmotionState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for EmotionState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.value())
    }
}

impl<'de> Deserialize<'de> for EmotionState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        EmotionState::from_f64(v)
            .ok_or_else(|| serde::de::Error::custom(format!("{v} is not an emotion state")))
    }
}

pub fn update_emotion(e: EmotionState, goal_achieved: bool) -> EmotionState {
    e.updated(goal_achieved)
}

/// Whether a society's agents may deviate from their SVO.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Agents always follow their SVO policy.
    Stable,
    /// Agents carry an emotion state that can substitute an emotion policy.
    Svoie,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Stable => "stable",
            Mode::Svoie => "svoie",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stable" => Ok(Mode::Stable),
            "svoie" => Ok(Mode::Svoie),
            other => Err(format!("unknown mode {other:?} (expected stable or svoie)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentProfile {
    pub id: u32,
    pub svo: SvoTrait,
    pub mode: Mode,
    pub emotion: EmotionState,
}

impl AgentProfile {
    pub fn new(id: u32, svo: SvoTrait, mode: Mode) -> Self {
        AgentProfile { id, svo, mode, emotion: EmotionState::NEUTRAL }
    }

    /// Applies the end-of-round update; stable agents stay neutral.
    pub fn record_round(&mut self, goal_achieved: bool) {
        if self.mode == Mode::Svoie {
            self.emotion = update_emotion(self.emotion, goal_achieved);
        }
    }
}

/// Picks the policy for one decision.
///
/// Svoie agents draw exactly one uniform variate per decision regardless of
/// their state, so the stream position does not depend on emotion history.
pub fn select_policy<R: Rng + ?Sized>(profile: &AgentProfile, rng: &mut R) -> PolicyKind {
    if profile.mode == Mode::Stable {
        return profile.svo.policy();
    }
    let draw: f64 = rng.random();
    let e = profile.emotion;
    if draw < e.intensity() {
        if e.is_positive() {
            PolicyKind::PositiveIe
        } else {
            PolicyKind::NegativeIe
        }
    } else {
        profile.svo.policy()
    }
}
