mod common;

use common::{chips, oracle_best_play, random_chips, stranded_pair};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svoie_core::engine::{
    best_play, generate_board, generate_setup, outcome_scores, Board, ExchangeOutcome, Move, PathSolver,
    Position, RoundEvaluator, Score,
};
use svoie_core::{ChipMultiset, Color};

#[test]
fn best_play_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let setup = generate_setup(&mut rng);
        let n = rng.random_range(0..=8);
        let inv = random_chips(&mut rng, n);
        let got = best_play(&setup.board, setup.pos_p, setup.goal, inv);
        let want = oracle_best_play(&setup.board, setup.pos_p, setup.goal, inv);
        assert_eq!(got.score.as_f64(), want.score, "{setup:?} {inv}");
        assert_eq!(got.reached_goal, want.reached_goal);
        assert_eq!(usize::from(got.chips_used), want.used);
        assert_eq!(usize::from(got.chips_unused), inv.total() as usize - want.used);
        assert_eq!(got.final_pos.manhattan(setup.goal), want.dist);
        assert_eq!(got.path.moves(), want.moves);
    }
}

#[test]
fn pooled_solver_agrees_with_direct_solves() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let setup = generate_setup(&mut rng);
        let pool = setup.chips_p + setup.chips_r;
        let solver = PathSolver::new(&setup.board, setup.pos_r, setup.goal, pool);
        for sub in pool.sub_multisets() {
            assert_eq!(solver.play(sub), best_play(&setup.board, setup.pos_r, setup.goal, sub));
        }
    }
}

#[test]
fn straight_run_to_goal() {
    let board = Board::filled(Color::Blue)
        .with_tile(Position::new(0, 1), Color::Red)
        .with_tile(Position::new(0, 2), Color::Red);
    let play = best_play(&board, Position::new(0, 0), Position::new(0, 2), chips("RRGG"));
    assert_eq!(play.score, Score::from_halves(16));
    assert!(play.reached_goal);
    assert_eq!(play.path.moves(), vec![Move::Right, Move::Right]);
}

#[test]
fn stranded_agents_keep_their_chips() {
    let setup = stranded_pair();
    let eval = RoundEvaluator::new(&setup);
    let (sp, sr) = eval.outcome_scores(&eval.no_trade());
    assert_eq!((sp.as_f64(), sr.as_f64()), (4.0, 4.0));
    let swap = ExchangeOutcome::new(setup.chips_p, setup.chips_r, chips("R"), chips("Y")).unwrap();
    let (sp, sr) = eval.outcome_scores(&swap);
    assert_eq!((sp.as_f64(), sr.as_f64()), (8.0, 8.0));
    assert!(eval.play_proposer(swap.post_chips_p).reached_goal);
    assert!(eval.play_responder(swap.post_chips_r).reached_goal);
}

#[test]
fn swapping_roles_swaps_scores() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let setup = generate_setup(&mut rng);
        let mirror = setup.swapped();
        for o in RoundEvaluator::new(&setup).exchanges() {
            let m = ExchangeOutcome::new(mirror.chips_p, mirror.chips_r, o.request, o.offer).unwrap();
            let (a, b) = outcome_scores(&setup, &o);
            assert_eq!(outcome_scores(&mirror, &m), (b, a));
        }
    }
}

#[test]
fn board_colors_are_uniform() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut counts = [0u32; 4];
    for _ in 0..10_000 {
        for t in generate_board(&mut rng).tiles() {
            counts[t.index()] += 1;
        }
    }
    for c in counts {
        let f = f64::from(c) / 160_000.0;
        assert!((f - 0.25).abs() < 0.01, "{counts:?}");
    }
}

#[test]
fn goal_is_uniform_over_valid_cells() {
    let (p, r) = (Position::new(0, 0), Position::new(3, 3));
    let valid: Vec<Position> =
        (0..16).map(Position::from_index).filter(|&g| svoie_core::engine::goal_is_valid(g, p, r)).collect();
    assert_eq!(valid.len(), 10);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut hits = [0u32; 16];
    let mut n = 0u32;
    for _ in 0..400_000 {
        let s = generate_setup(&mut rng);
        assert!(s.placement_is_valid());
        if s.pos_p == p && s.pos_r == r {
            hits[s.goal.index()] += 1;
            n += 1;
        }
    }
    let expected = f64::from(n) / valid.len() as f64;
    let chi2: f64 = valid.iter().map(|g| (f64::from(hits[g.index()]) - expected).powi(2) / expected).sum();
    // 9 degrees of freedom, 0.1% critical value.
    assert!(chi2 < 27.88, "chi2 {chi2} over {n} samples");
    assert_eq!(hits.iter().sum::<u32>(), n);
}

fn arb_board() -> impl Strategy<Value = Board> {
    prop::array::uniform16(0usize..4).prop_map(|t| Board::from_tiles(t.map(Color::from_index)))
}

fn arb_chips(max: u8) -> impl Strategy<Value = ChipMultiset> {
    prop::collection::vec(0usize..4, 0..=max as usize)
        .prop_map(|v| v.into_iter().fold(ChipMultiset::EMPTY, |m, c| m.with(Color::from_index(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extra_chip_adds_at_least_one_point(
        board in arb_board(),
        start in 0usize..16,
        goal in 0usize..16,
        inv in arb_chips(7),
        extra in 0usize..4,
    ) {
        let (start, goal) = (Position::from_index(start), Position::from_index(goal));
        let before = best_play(&board, start, goal, inv).score;
        let after = best_play(&board, start, goal, inv.with(Color::from_index(extra))).score;
        prop_assert!(after.halves() >= before.halves() + 2);
    }

    #[test]
    fn play_is_consistent(board in arb_board(), start in 0usize..16, goal in 0usize..16, inv in arb_chips(8)) {
        let (start, goal) = (Position::from_index(start), Position::from_index(goal));
        let play = best_play(&board, start, goal, inv);
        prop_assert_eq!(play.chips_used + play.chips_unused, inv.total());
        prop_assert_eq!(play.path.len(), usize::from(play.chips_used));
        prop_assert_eq!(play.reached_goal, play.final_pos == goal);
        let mut at = start;
        let mut spent = ChipMultiset::EMPTY;
        let mut seen = vec![start];
        for m in play.path.moves() {
            at = at.step(m).expect("path stays on the board");
            prop_assert!(!seen.contains(&at));
            seen.push(at);
            spent = spent.with(board.tile(at));
        }
        prop_assert_eq!(at, play.final_pos);
        prop_assert!(spent.is_subset_of(&inv));
        let want = svoie_core::score(play.chips_unused, play.chips_used, play.reached_goal);
        prop_assert_eq!(play.score, want);
    }
}
