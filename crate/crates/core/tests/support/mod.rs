// Seeded randomized suites, shared by the property tests and the acceptance run.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use domineering::rules::{propagate_with, RuleKind, Schedule};
use domineering::solver::{Solver, SolverConfig, SumPosition};
use domineering::workbench::derive_table;
use domineering::workbench::verify::{shipped_bounds, shipped_facts};
use domineering::{DyadicRational, GameStore, GameValue, OutcomeClass, Position};

pub type Outcome = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// A random game of small depth, canonical by construction.
pub fn random_game(store: &GameStore, rng: &mut StdRng, depth: u32) -> GameValue {
    // mostly numbers at the leaves, mostly not at the top
    if depth == 0 || rng.gen_bool(0.1 * (4 - depth.min(3)) as f64) {
        let x = DyadicRational::new(rng.gen_range(-4..=4), rng.gen_range(0..=2));
        return store.number(x).unwrap();
    }
    let side = |rng: &mut StdRng| -> Vec<GameValue> {
        let k = rng.gen_range(0..=3);
        (0..k).map(|_| random_game(store, rng, depth - 1)).collect()
    };
    let (l, r) = (side(rng), side(rng));
    store.from_options(l, r).unwrap()
}

pub fn algebra_laws(count: usize, seed: u64) -> Outcome {
    let s = GameStore::new();
    let mut rng = StdRng::seed_from_u64(seed);
    let games: Vec<GameValue> = (0..count).map(|_| random_game(&s, &mut rng, 3)).collect();
    for (i, &g) in games.iter().enumerate() {
        let h = games[(i * 7 + 1) % count];
        let k = games[(i * 13 + 5) % count];
        let shown = || format!("g={} h={} k={}", s.display(g), s.display(h), s.display(k));
        ensure!(s.leq(g, g), "reflexivity: {}", shown());
        ensure!(!(s.leq(g, h) && s.leq(h, k)) || s.leq(g, k), "transitivity: {}", shown());
        ensure!(!(s.leq(g, h) && s.leq(h, g)) || g == h, "antisymmetry: {}", shown());
        ensure!(s.add(g, h).unwrap() == s.add(h, g).unwrap(), "commutativity: {}", shown());
        let left = s.add(s.add(g, h).unwrap(), k).unwrap();
        let right = s.add(g, s.add(h, k).unwrap()).unwrap();
        ensure!(left == right, "associativity: {}", shown());
        let (ng, nh) = (s.negate(g).unwrap(), s.negate(h).unwrap());
        ensure!(s.add(g, ng).unwrap() == GameValue::ZERO, "inverse: {}", shown());
        ensure!(s.add(g, GameValue::ZERO).unwrap() == g, "identity: {}", shown());
        ensure!(s.leq(g, h) == s.leq(nh, ng), "duality: {}", shown());
        ensure!(s.negate(ng).unwrap() == g, "double negation: {}", shown());
        ensure!(s.from_options(s.left_options(g), s.right_options(g)).unwrap() == g, "idempotence: {}", shown());
        ensure!(s.parse(&s.display(g)).unwrap() == g, "round trip: {}", shown());
    }
    Ok(())
}

/// A solver that never folds components into values, so search and value
/// computation stay independent.
pub fn plain_solver(store: &GameStore) -> Solver<'_> {
    let config = SolverConfig {
        fold_cells: 0,
        ..SolverConfig::default()
    };
    Solver::with_config(store, config)
}

/// A random board with at most `cells` empty cells.
pub fn random_board(rng: &mut StdRng, max_side: usize, cells: usize) -> Position {
    let (h, w) = (rng.gen_range(1..=max_side), rng.gen_range(1..=max_side));
    let mut p = Position::rect(h, w).unwrap();
    let density = rng.gen_range(0.0..0.5);
    let mut free = Vec::new();
    for r in 0..h {
        for c in 0..w {
            if rng.gen_bool(density) {
                p = p.with_blocked(r, c);
            } else {
                free.push((r, c));
            }
        }
    }
    free.shuffle(rng);
    for &(r, c) in free.iter().skip(cells) {
        p = p.with_blocked(r, c);
    }
    p
}

pub fn search_matches_values(masks: usize, seed: u64) -> Outcome {
    let store = GameStore::new();
    let mut solver = plain_solver(&store);
    let mut boards: Vec<Position> = (1..=4)
        .flat_map(|m| (1..=4).map(move |n| Position::rect(m, n).unwrap()))
        .collect();
    let mut rng = StdRng::seed_from_u64(seed);
    boards.extend((0..masks).map(|_| random_board(&mut rng, 7, 20)));
    for p in boards {
        let v = solver.value_of_position(&p).map_err(|e| e.to_string())?;
        let searched = solver.outcome_class(&p.clone().into()).map_err(|e| e.to_string())?;
        ensure!(searched == store.outcome(v), "search {searched} vs value {} on\n{}", store.display(v), p.to_ascii());
    }
    Ok(())
}

/// Each board beside its quarter turn (the same board with the players
/// exchanged): whoever moves first loses to the copying strategy.
pub fn mirror_pairs(count: usize, seed: u64) -> Outcome {
    let store = GameStore::new();
    let mut solver = plain_solver(&store);
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..count {
        let p = random_board(&mut rng, 5, 10);
        let sum = SumPosition::new(vec![p.clone(), p.rotate_90()], vec![]);
        let c = solver.outcome_class(&sum).map_err(|e| e.to_string())?;
        ensure!(c == OutcomeClass::Second, "{c} on\n{}", p.to_ascii());
    }
    Ok(())
}

pub fn propagation_sound() -> Outcome {
    let store = GameStore::new();
    let mut solver = Solver::new(&store);
    let bounds = shipped_bounds(&store);
    let t = derive_table(&mut solver, &shipped_facts(), &bounds, 32, 32, &Schedule::default()).map_err(|e| e.to_string())?;
    for m in 1..=6 {
        for n in 1..=6 {
            let found = solver.solve_rect_outcome(m, n).map_err(|e| e.to_string())?;
            ensure!(t.get(m, n).contains(found), "{m}x{n}: table {} but search {found}", t.get(m, n));
        }
    }
    Ok(())
}

pub fn propagation_confluent(schedules: usize, seed: u64) -> Outcome {
    let facts = shipped_facts();
    let reference = propagate_with(&facts, 32, 32, &Schedule::default()).map_err(|e| e.to_string())?.grid();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..schedules {
        let mut rules = RuleKind::STANDARD.to_vec();
        rules.shuffle(&mut rng);
        let schedule = Schedule { rules, reverse: rng.gen() };
        let t = propagate_with(&facts, 32, 32, &schedule).map_err(|e| e.to_string())?;
        ensure!(t.grid() == reference, "{schedule:?} reached a different table");
    }
    Ok(())
}
