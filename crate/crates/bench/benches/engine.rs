use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;
use svoie_core::engine::{generate_setup, GameSetup, PathSolver};
use svoie_core::{
    best_play, negotiate, run_simulation, Mode, PolicyKind, SimulationConfig, SocietyConfig, SocietyPreset,
};

fn setups(n: usize) -> Vec<GameSetup> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..n).map(|_| generate_setup(&mut rng)).collect()
}

fn solver(c: &mut Criterion) {
    let setups = setups(64);
    c.bench_function("path_solver_build", |b| {
        let mut i = 0;
        b.iter(|| {
            let s = &setups[i % setups.len()];
            i += 1;
            PathSolver::new(&s.board, s.pos_p, s.goal, s.chips_p + s.chips_r)
        })
    });
    c.bench_function("best_play", |b| {
        let mut i = 0;
        b.iter(|| {
            let s = &setups[i % setups.len()];
            i += 1;
            best_play(&s.board, s.pos_p, s.goal, black_box(s.chips_p))
        })
    });
}

fn round(c: &mut Criterion) {
    let setups = setups(64);
    c.bench_function("negotiate_round", |b| {
        let mut i = 0;
        b.iter(|| {
            let s = &setups[i % setups.len()];
            i += 1;
            negotiate(s, PolicyKind::Cooperative, PolicyKind::Selfish)
        })
    });
}

fn simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulation");
    group.sample_size(10);
    let config = SimulationConfig {
        society: SocietyConfig::desk(SocietyPreset::Mixed, Mode::Svoie),
        steps: 20,
        repeats: 1,
        master_seed: 7,
    };
    group.bench_function("desk_20_steps", |b| {
        b.iter_batched(|| config, |cfg| run_simulation(&cfg).unwrap(), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(benches, solver, round, simulation);
criterion_main!(benches);
