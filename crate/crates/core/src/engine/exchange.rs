use serde::{Deserialize, Serialize};

use super::board::GameSetup;
use super::solver::{PathSolver, PlayResult, Score};
use crate::chips::ChipMultiset;

/// A possible post-trade state and the offer/request pair that produces it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExchangeOutcome {
    /// Chips the proposer sends.
    pub offer: ChipMultiset,
    /// Chips the proposer receives.
    pub request: ChipMultiset,
    pub post_chips_p: ChipMultiset,
    pub post_chips_r: ChipMultiset,
}

impl ExchangeOutcome {
    /// Returns `None` if either side would give away chips it does not hold.
    pub fn new(
        chips_p: ChipMultiset,
        chips_r: ChipMultiset,
        offer: ChipMultiset,
        request: ChipMultiset,
    ) -> Option<Self> {
        let post_chips_p = chips_p.checked_sub(&offer)? + request;
        let post_chips_r = chips_r.checked_sub(&request)? + offer;
        Some(ExchangeOutcome { offer, request, post_chips_p, post_chips_r })
    }

    /// The no-exchange outcome.
    pub fn no_trade(chips_p: ChipMultiset, chips_r: ChipMultiset) -> Self {
        ExchangeOutcome {
            offer: ChipMultiset::EMPTY,
            request: ChipMultiset::EMPTY,
            post_chips_p: chips_p,
            post_chips_r: chips_r,
        }
    }

    pub fn is_no_trade(&self) -> bool {
        self.offer.is_empty() && self.request.is_empty()
    }

    pub fn chips_moved(&self) -> u8 {
        self.offer.total() + self.request.total()
    }
}

/// Every (offer, request) pair, offer-major in canonical sub-multiset order.
/// The first element is always the no-exchange outcome.
pub fn enumerate_exchanges(chips_p: ChipMultiset, chips_r: ChipMultiset) -> Vec<ExchangeOutcome> {
    let offers = chips_p.sub_multisets();
    let requests = chips_r.sub_multisets();
    let mut out = Vec::with_capacity(offers.len() * requests.len());
    for &offer in &offers {
        for &request in &requests {
            out.push(ExchangeOutcome {
                offer,
                request,
                post_chips_p: chips_p - offer + request,
                post_chips_r: chips_r - request + offer,
            });
        }
    }
    out
}

/// Scores any exchange outcome of one round.
///
/// Both agents' solvers are built once over the pooled chips, so repeated
/// inventories are never solved twice within the round.
#[derive(Clone, Debug)]
pub struct RoundEvaluator {
    setup: GameSetup,
    proposer: PathSolver,
    responder: PathSolver,
}

impl RoundEvaluator {
    pub fn new(setup: &GameSetup) -> Self {
        let pool = setup.chips_p + setup.chips_r;
        RoundEvaluator {
            setup: *setup,
            proposer: PathSolver::new(&setup.board, setup.pos_p, setup.goal, pool),
            responder: PathSolver::new(&setup.board, setup.pos_r, setup.goal, pool),
        }
    }

    pub fn setup(&self) -> &GameSetup {
        &self.setup
    }

    pub fn play_proposer(&self, chips: ChipMultiset) -> PlayResult {
        self.proposer.play(chips)
    }

    pub fn play_responder(&self, chips: ChipMultiset) -> PlayResult {
        self.responder.play(chips)
    }

    /// `(proposer score, responder score)` under `outcome`.
    pub fn outcome_scores(&self, outcome: &ExchangeOutcome) -> (Score, Score) {
        (self.proposer.play(outcome.post_chips_p).score, self.responder.play(outcome.post_chips_r).score)
    }

    pub fn no_trade(&self) -> ExchangeOutcome {
        ExchangeOutcome::no_trade(self.setup.chips_p, self.setup.chips_r)
    }

    pub fn exchanges(&self) -> Vec<ExchangeOutcome> {
        enumerate_exchanges(self.setup.chips_p, self.setup.chips_r)
    }
}

/// One-off scoring of an outcome; prefer [`RoundEvaluator`] for many outcomes.
pub fn outcome_scores(setup: &GameSetup, outcome: &ExchangeOutcome) -> (Score, Score) {
    RoundEvaluator::new(setup).outcome_scores(outcome)
}
