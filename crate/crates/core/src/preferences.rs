//! Social-preference utilities and the five decision policies.
//!
//! Utilities are always evaluated from the deciding agent's own perspective:
//! "self" is the proposer when ranking and the responder when accepting.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chips::ChipMultiset;
use crate::engine::{ExchangeOutcome, GameSetup, RoundEvaluator, Score};

/// A decision policy: the three SVO policies plus the two integral-emotion policies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolicyKind {
    Selfish,
    Cooperative,
    Altruistic,
    /// Inequity aversion.
    PositiveIe,
    /// Competitive equity aversion.
    NegativeIe,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 5] = [
        PolicyKind::Selfish,
        PolicyKind::Cooperative,
        PolicyKind::Altruistic,
        PolicyKind::PositiveIe,
        PolicyKind::NegativeIe,
    ];

    pub fn is_emotion(self) -> bool {
        matches!(self, PolicyKind::PositiveIe | PolicyKind::NegativeIe)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PolicyKind::Selfish => "selfish",
            PolicyKind::Cooperative => "cooperative",
            PolicyKind::Altruistic => "altruistic",
            PolicyKind::PositiveIe => "positive_ie",
            PolicyKind::NegativeIe => "negative_ie",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolicyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyKind::ALL.into_iter().find(|p| p.as_str() == s).ok_or_else(|| format!("unknown policy {s:?}"))
    }
}

/// A stable social value orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SvoTrait {
    #[serde(rename = "altr")]
    Altruistic,
    #[serde(rename = "coop")]
    Cooperative,
    #[serde(rename = "self")]
    Selfish,
}

impl SvoTrait {
    pub const ALL: [SvoTrait; 3] = [SvoTrait::Altruistic, SvoTrait::Cooperative, SvoTrait::Selfish];

    pub fn policy(self) -> PolicyKind {
        match self {
            SvoTrait::Altruistic => PolicyKind::Altruistic,
            SvoTrait::Cooperative => PolicyKind::Cooperative,
            SvoTrait::Selfish => PolicyKind::Selfish,
        }
    }

    /// Short label used in presets, logs and tables.
    pub fn label(self) -> &'static str {
        match self {
            SvoTrait::Altruistic => "altr",
            SvoTrait::Cooperative => "coop",
            SvoTrait::Selfish => "self",
        }
    }
}

impl fmt::Display for SvoTrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SvoTrait {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SvoTrait::ALL.into_iter().find(|t| t.label() == s).ok_or_else(|| format!("unknown SVO trait {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Proposer,
    Responder,
}

/// What the proposer sends (`offer`) and asks for (`request`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Proposal {
    pub offer: ChipMultiset,
    pub request: ChipMultiset,
}

impl Proposal {
    pub fn outcome(&self, setup: &GameSetup) -> Option<ExchangeOutcome> {
        ExchangeOutcome::new(setup.chips_p, setup.chips_r, self.offer, self.request)
    }

    pub fn is_empty(&self) -> bool {
        self.offer.is_empty() && self.request.is_empty()
    }
}

impl From<&ExchangeOutcome> for Proposal {
    fn from(o: &ExchangeOutcome) -> Self {
        Proposal { offer: o.offer, request: o.request }
    }
}

/// Scores of an outcome `x` and of no-trade `x̄`, seen by one agent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UtilityView {
    pub s_self: f64,
    pub s_other: f64,
    pub s_self_bar: f64,
    pub s_other_bar: f64,
}

impl UtilityView {
    pub fn new(s_self: f64, s_other: f64, s_self_bar: f64, s_other_bar: f64) -> Self {
        UtilityView { s_self, s_other, s_self_bar, s_other_bar }
    }

    /// The same scores seen by the counterpart.
    pub fn swapped(&self) -> Self {
        UtilityView {
            s_self: self.s_other,
            s_other: self.s_self,
            s_self_bar: self.s_other_bar,
            s_other_bar: self.s_self_bar,
        }
    }

    fn from_scores(role: Role, x: (Score, Score), bar: (Score, Score)) -> Self {
        let v = UtilityView::new(x.0.as_f64(), x.1.as_f64(), bar.0.as_f64(), bar.1.as_f64());
        match role {
            Role::Proposer => v,
            Role::Responder => v.swapped(),
        }
    }
}

pub fn u_self(v: &UtilityView) -> f64 {
    v.s_self
}

pub fn u_other(v: &UtilityView) -> f64 {
    v.s_other
}

pub fn u_aggregate(v: &UtilityView) -> f64 {
    v.s_self + v.s_other
}

/// How far ahead of the counterpart this agent ends up.
pub fn u_advantage(v: &UtilityView) -> f64 {
    v.s_self - v.s_other
}

/// This agent's gain from trading minus the counterpart's gain.
pub fn u_trade_advantage(v: &UtilityView) -> f64 {
    (v.s_self - v.s_self_bar) - (v.s_other - v.s_other_bar)
}

/// Proposer ranking criterion; larger is better.
///
/// Inequity aversion maximises `-|advantage|`, which orders outcomes exactly
/// as maximising `1/(1+|advantage|)` does.
pub fn ranking_criterion(policy: PolicyKind, v: &UtilityView) -> f64 {
    match policy {
        PolicyKind::Selfish => u_self(v),
        PolicyKind::Cooperative => u_aggregate(v),
        PolicyKind::Altruistic => u_other(v),
        PolicyKind::PositiveIe => -u_advantage(v).abs(),
        PolicyKind::NegativeIe => u_advantage(v),
    }
}

/// Responder acceptance test. All comparisons are strict.
pub fn acceptance_criterion(policy: PolicyKind, v: &UtilityView) -> bool {
    let bar = UtilityView::new(v.s_self_bar, v.s_other_bar, v.s_self_bar, v.s_other_bar);
    match policy {
        PolicyKind::Selfish => u_self(v) > u_self(&bar),
        PolicyKind::Cooperative => u_aggregate(v) > u_aggregate(&bar),
        PolicyKind::Altruistic => u_other(v) > u_other(&bar),
        PolicyKind::PositiveIe => u_trade_advantage(v) < 0.0,
        PolicyKind::NegativeIe => u_trade_advantage(v) > 0.0,
    }
}

struct Ranked<'a> {
    outcome: &'a ExchangeOutcome,
    criterion: f64,
    own: Score,
}

impl Ranked<'_> {
    /// `Greater` means `self` is the better proposal.
    fn cmp(&self, other: &Ranked<'_>) -> Ordering {
        self.criterion
            .total_cmp(&other.criterion)
            .then(self.own.cmp(&other.own))
            .then(other.outcome.chips_moved().cmp(&self.outcome.chips_moved()))
            .then(other.outcome.offer.cmp(&self.outcome.offer))
            .then(other.outcome.request.cmp(&self.outcome.request))
    }
}

/// The proposer's choice among `outcomes` under `policy`.
///
/// Ties on the policy criterion go to the higher own score, then to fewer
/// chips changing hands, then to the canonically smallest (offer, request).
/// The result does not depend on the order of `outcomes`.
///
/// Panics if `outcomes` is empty.
pub fn rank_proposals(policy: PolicyKind, eval: &RoundEvaluator, outcomes: &[ExchangeOutcome]) -> Proposal {
    let bar = eval.outcome_scores(&eval.no_trade());
    let best = outcomes
        .iter()
        .map(|o| {
            let x = eval.outcome_scores(o);
            let v = UtilityView::from_scores(Role::Proposer, x, bar);
            Ranked { outcome: o, criterion: ranking_criterion(policy, &v), own: x.0 }
        })
        .max_by(|a, b| a.cmp(b))
        .expect("rank_proposals needs at least one outcome");
    Proposal::from(best.outcome)
}

/// The responder's decision on `proposal` under `policy`.
///
/// Panics if the proposal asks for or offers chips that are not held.
pub fn accept(policy: PolicyKind, eval: &RoundEvaluator, proposal: &Proposal) -> bool {
    let x = proposal.outcome(eval.setup()).expect("proposal is infeasible for this setup");
    let v = UtilityView::from_scores(
        Role::Responder,
        eval.outcome_scores(&x),
        eval.outcome_scores(&eval.no_trade()),
    );
    acceptance_criterion(policy, &v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn view(s_self: f64, s_other: f64) -> UtilityView {
        UtilityView::new(s_self, s_other, 0.0, 0.0)
    }

    #[test]
    fn individual_utilities() {
        assert_eq!(u_self(&view(10.0, 6.0)), 10.0);
        assert_eq!(u_self(&view(4.0, 4.0)), 4.0);
        assert_eq!(u_self(&view(10.0, 99.0)), 10.0);
        assert_eq!(u_other(&view(10.0, 6.0)), 6.0);
        assert_eq!(u_other(&view(0.0, 7.0)), 7.0);
        assert_eq!(u_other(&view(-3.0, 7.0)), 7.0);
    }

    #[test]
    fn aggregate_and_advantage() {
        assert_eq!(u_aggregate(&view(10.0, 6.0)), 16.0);
        assert_eq!(u_aggregate(&view(0.0, 0.0)), 0.0);
        assert_eq!(u_aggregate(&view(6.0, 10.0)), u_aggregate(&view(10.0, 6.0)));
        assert_eq!(u_advantage(&view(10.0, 6.0)), 4.0);
        assert_eq!(u_advantage(&view(6.0, 10.0)), -4.0);
    }

    #[test]
    fn trade_advantage() {
        let v = UtilityView::new(6.0, 10.0, 8.0, 8.0);
        assert_eq!(u_trade_advantage(&v), -4.0);
        assert_eq!(u_trade_advantage(&v.swapped()), 4.0);
        let identity = UtilityView::new(5.0, 7.5, 5.0, 7.5);
        assert_eq!(u_trade_advantage(&identity), 0.0);
        let shifted = UtilityView::new(9.0, 11.0, 11.0, 11.0);
        let shifted_all = UtilityView::new(9.0 + 3.0, 11.0 + 3.0, 11.0 + 3.0, 11.0 + 3.0);
        assert_eq!(u_trade_advantage(&shifted), u_trade_advantage(&shifted_all));
    }

    #[test]
    fn strict_acceptance() {
        let unchanged = UtilityView::new(8.0, 12.0, 8.0, 8.0);
        assert!(!acceptance_criterion(PolicyKind::Selfish, &unchanged));
        assert!(acceptance_criterion(PolicyKind::Cooperative, &unchanged));
        let plus_two = UtilityView::new(10.0, 8.0, 8.0, 8.0);
        assert_eq!(u_trade_advantage(&plus_two), 2.0);
        assert!(acceptance_criterion(PolicyKind::NegativeIe, &plus_two));
        assert!(!acceptance_criterion(PolicyKind::PositiveIe, &plus_two));
        let balanced = UtilityView::new(9.0, 9.0, 8.0, 8.0);
        assert!(!acceptance_criterion(PolicyKind::PositiveIe, &balanced));
        assert!(!acceptance_criterion(PolicyKind::NegativeIe, &balanced));
    }

    #[test]
    fn no_trade_is_never_accepted() {
        let v = UtilityView::new(7.0, 5.5, 7.0, 5.5);
        for p in PolicyKind::ALL {
            assert!(!acceptance_criterion(p, &v), "{p}");
        }
    }

    #[test]
    fn names_round_trip() {
        for p in PolicyKind::ALL {
            assert_eq!(p.as_str().parse::<PolicyKind>().unwrap(), p);
        }
        for t in SvoTrait::ALL {
            assert_eq!(t.label().parse::<SvoTrait>().unwrap(), t);
            assert!(!t.policy().is_emotion());
        }
    }
}
