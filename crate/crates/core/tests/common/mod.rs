#![allow(dead_code)]

use afsolve::bench::{GeneratorSpec, Model};
use afsolve::ArgumentationFramework;

fn spec(model: Model, seed: u64) -> GeneratorSpec {
    GeneratorSpec::new(model, seed).expect("valid spec")
}

/// Seeded frameworks with at most `max_n` arguments: Erdős–Rényi graphs at
/// p in {0.1, 0.2, 0.4} (self-attacks on odd seeds), chains, SCC ladders
/// and small grids.
pub fn corpus(
    max_n: usize,
    er_seeds: u64,
    ladder_seeds: u64,
) -> Vec<(String, ArgumentationFramework)> {
    let mut specs = Vec::new();
    for seed in 0..er_seeds {
        for p in [0.1, 0.2, 0.4] {
            for n in 1..=max_n {
                specs.push(spec(
                    Model::ErdosRenyi {
                        n,
                        p,
                        loops: seed % 2 == 1,
                    },
                    seed,
                ));
            }
        }
    }
    for n in 1..=max_n {
        specs.push(spec(Model::Chain { n }, 0));
    }
    for seed in 0..ladder_seeds {
        for k in 1..=3 {
            for size in 1..=4 {
                if k * size > max_n {
                    continue;
                }
                for p_intra in [0.2, 0.5] {
                    specs.push(spec(
                        Model::SccLadder {
                            k,
                            size,
                            p_intra,
                            p_inter: 0.2,
                        },
                        seed,
                    ));
                }
            }
        }
    }
    for (w, h) in [(2, 2), (2, 3), (3, 3)] {
        if w * h <= max_n {
            specs.push(spec(Model::Grid { w, h }, 0));
        }
    }
    specs
        .iter()
        .map(|s| (s.to_string(), s.generate()))
        .collect()
}

pub fn example1() -> ArgumentationFramework {
    ArgumentationFramework::build(
        ["a", "b", "c", "d", "e", "f"],
        [
            ("a", "b"),
            ("b", "d"),
            ("c", "b"),
            ("c", "d"),
            ("c", "e"),
            ("d", "c"),
            ("d", "e"),
            ("e", "f"),
        ],
    )
    .unwrap()
}
