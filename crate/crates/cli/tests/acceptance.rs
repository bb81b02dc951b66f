//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use itertools::Itertools;
use kuni::codes::{mds_code, singleton_array};
use kuni::dense::{
    apply_pauli, graph_state, hierarchy_state, max_deviation_for_size, rank_of_reduction, state_from_code,
    support_count, to_graph_form, uniformity_by_oracle,
};
use kuni::graph::{bipartite_adjacency, general_adjacency, hierarchy_adjacency, random_symmetric_b};
use kuni::stabilizer::{graph_generators, uniformity_index};
use kuni::{analysis, Adjacency, HierarchySpec, Level, LinearCode, MatrixGF, PrimeField, State};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn code_6_2() -> LinearCode {
    LinearCode::from_a(MatrixGF::from_rows(gf(5), &[&[1i64, 1, 1, 1], &[1, 2, 3, 4]]).unwrap()).unwrap()
}

fn sub_code(n: usize) -> LinearCode {
    let ones = vec![1i64; n - 1];
    LinearCode::from_a(MatrixGF::from_rows(gf(5), &[ones]).unwrap()).unwrap()
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, format!("took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

fn c1_singleton() -> Outcome {
    let f = gf(5);
    let gamma = f.elem(3);
    // warm-up keeps allocator start-up out of the timing
    let _ = singleton_array(f, gamma);
    let t = Instant::now();
    let s = singleton_array(f, gamma).map_err(|e| e.to_string())?;
    let a: Vec<Option<u32>> = (1..=3).map(|i| s.a(i)).collect();
    let e = within(t, Duration::from_millis(1))?;
    let expect: Vec<Vec<u32>> = vec![vec![1, 1, 1, 1, 1], vec![1, 2, 3, 4], vec![1, 3, 4], vec![1, 4], vec![1]];
    ensure(s.rows() == expect.as_slice(), format!("rows {:?}", s.rows()))?;
    ensure(a == [Some(2), Some(3), Some(4)], format!("a_1..a_3 = {a:?}"))?;
    Ok(format!("S_5 rows and a_1..a_3 exact, {e:?}"))
}

fn c2_two_uniform() -> Outcome {
    let t = Instant::now();
    let code = code_6_2();
    let adj = bipartite_adjacency(&code).map_err(|e| e.to_string())?;
    let stab = uniformity_index(&adj).map_err(|e| e.to_string())?;
    ensure(stab.k == 2, format!("stabilizer k = {}", stab.k))?;
    let phi: State = state_from_code(&code).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for size in 1..=2 {
        worst = worst.max(max_deviation_for_size(&phi, size).map_err(|e| e.to_string())?.0);
    }
    ensure(worst < 1e-8, format!("max deviation {worst:e}"))?;
    let (dev3, _) = max_deviation_for_size(&phi, 3).map_err(|e| e.to_string())?;
    ensure(dev3 >= 1e-8, "a 3-qudit reduction is also maximally mixed")?;
    let oracle = uniformity_by_oracle(&phi).map_err(|e| e.to_string())?;
    ensure(oracle.k == stab.k, format!("dense k = {}, stabilizer k = {}", oracle.k, stab.k))?;
    let e = within(t, Duration::from_secs(10))?;
    Ok(format!("k = 2 by both methods, max deviation {worst:.1e}, {e:?}"))
}

fn c3_random_b() -> Outcome {
    let t = Instant::now();
    let code = code_6_2();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 50;
    let mut failures = 0;
    for _ in 0..trials {
        let b = random_symmetric_b(gf(5), 4, &mut rng);
        let adj = general_adjacency(&code, &b).map_err(|e| e.to_string())?;
        if uniformity_index(&adj).map_err(|e| e.to_string())?.k < 2 {
            failures += 1;
        }
    }
    ensure(failures == 0, format!("{failures} of {trials} instances below k = 2"))?;
    let e = within(t, Duration::from_secs(60))?;
    Ok(format!("{trials} random B, zero failures, {e:?}"))
}

fn c4_hierarchy() -> Outcome {
    let mut notes = Vec::new();
    for n_star in [2usize, 3] {
        let spec = HierarchySpec::new(gf(5), vec![Level::new(6, 2), Level::new(n_star, 1)]).map_err(|e| e.to_string())?;
        let hier: State = hierarchy_state(&code_6_2(), &sub_code(n_star)).map_err(|e| e.to_string())?;
        let graph: State =
            graph_state(&hierarchy_adjacency(&spec).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let mapped = to_graph_form(&hier, 2, n_star, 1).map_err(|e| e.to_string())?;
        let ov = mapped.overlap(&graph).map_err(|e| e.to_string())?;
        ensure(ov >= 1.0 - 1e-8, format!("n* = {n_star}: overlap {ov}"))?;
        let k = uniformity_by_oracle(&hier).map_err(|e| e.to_string())?.k;
        ensure(k == 2, format!("n* = {n_star}: dense k = {k}"))?;
        notes.push(format!("n*={n_star} overlap {ov:.12}"));
    }
    Ok(format!("{}, both 2-UNI", notes.join(", ")))
}

fn c5_rank_test() -> Outcome {
    let base: State = state_from_code(&code_6_2()).map_err(|e| e.to_string())?;
    let hier: State = hierarchy_state(&code_6_2(), &sub_code(2)).map_err(|e| e.to_string())?;
    let s = [0usize, 1, 4];
    let (rb, rh) = (
        rank_of_reduction(&base, &s).map_err(|e| e.to_string())?,
        rank_of_reduction(&hier, &s).map_err(|e| e.to_string())?,
    );
    ensure(rb <= 25 && rh == 125, format!("ranks {rb} vs {rh}"))?;
    let rep = analysis::schmidt_rank_check(&base, &hier, 2, 2, 1).map_err(|e| e.to_string())?;
    ensure(rep.verdict == analysis::Verdict::Distinguished, format!("verdict {:?}", rep.verdict))?;
    Ok(format!("rank at {{1,2,5}}: {rb} vs {rh}, distinguished"))
}

fn c6_support_test() -> Outcome {
    let f = gf(5);
    let code = mds_code(f, 5, 2).map_err(|e| e.to_string())?;
    let spec = HierarchySpec::new(f, vec![Level::new(5, 2), Level::new(2, 1)]).map_err(|e| e.to_string())?;
    let base: State = state_from_code(&code).map_err(|e| e.to_string())?;
    let hier: State = hierarchy_state(&code, &sub_code(2)).map_err(|e| e.to_string())?;
    let adjs = [bipartite_adjacency(&code), hierarchy_adjacency(&spec)];
    for (name, st, adj) in [("phi_{5,0}", &base, &adjs[0]), ("phi_{5,2}", &hier, &adjs[1])] {
        let adj = adj.as_ref().map_err(|e| e.to_string())?;
        let ks = uniformity_index(adj).map_err(|e| e.to_string())?.k;
        let kd = uniformity_by_oracle(st).map_err(|e| e.to_string())?.k;
        ensure(ks == 2 && kd == 2, format!("{name}: stabilizer {ks}, dense {kd}"))?;
    }
    let sup = [support_count(&base), support_count(&hier)];
    ensure(sup == [25, 125], format!("supports {sup:?}"))?;
    Ok("both AME (k = 2), supports 25 and 125".into())
}

fn c7_row_combinations() -> Outcome {
    let mut checked = 0usize;
    let mut counterexamples = 0usize;
    for (p, gamma) in [(5u64, 3i64), (7, 3)] {
        let f = gf(p);
        let s = singleton_array(f, f.elem(gamma)).map_err(|e| e.to_string())?;
        for a in s.all_rectangles().into_iter().filter(|a| a.rows() <= 3) {
            ensure(a.all_square_submatrices_nonsingular(), "rectangle is not MDS")?;
            for t in 1..=a.rows() {
                for rows in (0..a.rows()).combinations(t) {
                    for coeffs in (0..t).map(|_| 1..p as u32).multi_cartesian_product() {
                        let zeros = (0..a.cols())
                            .filter(|&j| {
                                rows.iter().zip(&coeffs).map(|(&r, &c)| c as u64 * a.raw(r, j) as u64).sum::<u64>() % p
                                    == 0
                            })
                            .count();
                        checked += 1;
                        if zeros > t - 1 {
                            counterexamples += 1;
                        }
                    }
                }
            }
        }
    }
    ensure(counterexamples == 0, format!("{counterexamples} counterexamples"))?;
    Ok(format!("{checked} combinations, zero counterexamples"))
}

fn corpus_adjacencies() -> Result<Vec<(String, Adjacency)>, String> {
    let f = gf(5);
    let e = |x: kuni::Error| x.to_string();
    let mut out = vec![
        ("bell".to_string(), bipartite_adjacency(&sub_code(2)).map_err(e)?),
        ("6:2".to_string(), bipartite_adjacency(&code_6_2()).map_err(e)?),
        ("5:2".to_string(), bipartite_adjacency(&mds_code(f, 5, 2).map_err(e)?).map_err(e)?),
    ];
    for levels in [vec![(6, 2), (2, 1)], vec![(6, 2), (3, 1)], vec![(5, 2), (2, 1)], vec![(6, 2), (4, 2), (2, 1)]] {
        let spec = HierarchySpec::new(f, levels.iter().map(|&(n, k)| Level::new(n, k)).collect()).map_err(e)?;
        out.push((format!("{levels:?}"), hierarchy_adjacency(&spec).map_err(e)?));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let b = random_symmetric_b(f, 4, &mut rng);
        out.push((format!("random B #{i}"), general_adjacency(&code_6_2(), &b).map_err(e)?));
    }
    Ok(out)
}

fn c8_eigen() -> Outcome {
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for (name, adj) in corpus_adjacencies()? {
        let g: State = graph_state(&adj).map_err(|e| e.to_string())?;
        for s in graph_generators(&adj).generators() {
            let r = apply_pauli(&g, s).map_err(|e| e.to_string())?.max_abs_diff(&g).map_err(|e| e.to_string())?;
            worst = worst.max(r);
            ensure(r < 1e-9, format!("{name}: residual {r:e}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} generators, max residual {worst:.1e}"))
}

fn cli_corpus() -> Vec<Vec<&'static str>> {
    vec![
        vec!["build", "--p", "5", "--n", "6", "--k", "2", "--state"],
        vec!["build", "--p", "5", "--levels", "6:2,2:1"],
        vec!["verify", "--p", "5", "--n", "6", "--k", "2", "--method", "all"],
        vec!["verify", "--p", "5", "--n", "6", "--k", "2", "--random-b", "--seed", "7", "--trials", "5"],
        vec!["verify", "--p", "5", "--levels", "6:2,3:1", "--method", "all"],
        vec!["hierarchy", "--p", "5", "--levels", "6:2,4:2,2:1"],
        vec!["slocc", "--p", "5", "--pair", "6:2 vs 6:2+2:1"],
        vec!["slocc", "--p", "5", "--pair", "5:2 vs 5:2+2:1"],
        vec!["export", "--p", "5", "--levels", "6:2,2:1", "--format", "dot"],
        vec!["export", "--p", "5", "--n", "6", "--k", "2", "--random-b", "--seed", "3", "--format", "sparse-state"],
    ]
}

fn run_corpus(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut out = Vec::new();
    for (i, args) in cli_corpus().into_iter().enumerate() {
        let o = Command::new(env!("CARGO_BIN_EXE_kuni")).args(&args).output().map_err(|e| e.to_string())?;
        ensure(o.status.success(), format!("`{}` exited with {}", args.join(" "), o.status))?;
        out.push((format!("#{i} stdout"), o.stdout));
    }
    let built = dir.join("build");
    let o = Command::new(env!("CARGO_BIN_EXE_kuni"))
        .args(["build", "--p", "5", "--levels", "6:2,3:1", "--state", "--out"])
        .arg(&built)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(o.status.success(), "build --out failed")?;
    for name in ["code.json", "adjacency.json", "graph.dot", "state.json"] {
        out.push((name.to_string(), std::fs::read(built.join(name)).map_err(|e| e.to_string())?));
    }
    Ok(out)
}

fn c9_determinism() -> Outcome {
    let (d1, d2) = (tempfile::tempdir().map_err(|e| e.to_string())?, tempfile::tempdir().map_err(|e| e.to_string())?);
    let (a, b) = (run_corpus(d1.path())?, run_corpus(d2.path())?);
    for ((name, x), (_, y)) in a.iter().zip(&b) {
        ensure(x == y, format!("{name} differs between runs"))?;
    }
    let bytes: usize = a.iter().map(|(_, x)| x.len()).sum();
    Ok(format!("{} outputs, {bytes} bytes, byte-identical", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("singleton array reproduction", c1_singleton),
        ("phi_{6,0} exactly 2-uniform", c2_two_uniform),
        ("random-B property suite", c3_random_b),
        ("hierarchy cross-validation", c4_hierarchy),
        ("Schmidt-rank discrimination", c5_rank_test),
        ("AME support discrimination", c6_support_test),
        ("row-combination zero bound", c7_row_combinations),
        ("stabilizer eigen-invariance", c8_eigen),
        ("CLI determinism", c9_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
