//! Exact sparse elimination on the degree lifts of the six-generator double,
//! sequential against the rayon row updates.

use std::hint::black_box;

use braided_pbw::catalog::build_example;
use braided_pbw::freealg::{NcPoly, Word};
use braided_pbw::linalg::{rank, SparseVec, UpdateMode};
use braided_pbw::parse::Params;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn words(gens: u8, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..gens).map(move |g| {
                    let mut v = w.clone();
                    v.push(g);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every row a.r.b with |a| + |b| = degree - 2, over all relations r.
fn lift_rows(degree: usize) -> Vec<SparseVec> {
    let bundle = build_example("sklyanin-c2-R", &Params::new()).unwrap();
    let alg = bundle.module.alg();
    let g = alg.gens().len() as u8;
    let mut rows = vec![];
    for r in alg.relations() {
        for split in 0..=(degree - 2) {
            for a in words(g, split) {
                for b in words(g, degree - 2 - split) {
                    let mut p = NcPoly::zero(alg.gens(), alg.field());
                    for (w, c) in r.terms() {
                        let mut letters = a.clone();
                        letters.extend(&w.0);
                        letters.extend(&b);
                        p.add_term(Word(letters), c.clone());
                    }
                    rows.push(p.to_sparse(degree).unwrap());
                }
            }
        }
    }
    rows
}

fn bench_elimination(c: &mut Criterion) {
    let mut group = c.benchmark_group("six-generator double rank");
    group.sample_size(10);
    for degree in [3usize, 4] {
        let rows = lift_rows(degree);
        group.bench_with_input(
            BenchmarkId::new("sequential", degree),
            &rows,
            |bench, rows| bench.iter(|| black_box(rank(rows.clone(), UpdateMode::Sequential))),
        );
        #[cfg(feature = "parallel")]
        group.bench_with_input(
            BenchmarkId::new("parallel", degree),
            &rows,
            |bench, rows| bench.iter(|| black_box(rank(rows.clone(), UpdateMode::Parallel))),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_elimination);
criterion_main!(benches);
