use itertools::Itertools;
use kuni::analysis::rank_spectrum;
use kuni::dense::{apply_local, apply_pauli, graph_state, rank_of_reduction, uniformity_by_oracle, LocalOp};
use kuni::graph::{general_adjacency, hierarchy_adjacency, random_symmetric_b};
use kuni::stabilizer::{graph_generators, uniformity_index};
use kuni::{mds_code, Adjacency, HierarchySpec, Level, MatrixGF, PrimeField, StabilizerGroupDesc, State};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRIMES: [u64; 26] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101];

/// Random weighted graph with `p^n <= 5^6`.
fn adjacency() -> impl Strategy<Value = Adjacency> {
    prop_oneof![(Just(2u64), 2usize..=8), (Just(3u64), 2usize..=6), (Just(5u64), 2usize..=5)]
        .prop_flat_map(|(p, n)| (Just(p), Just(n), proptest::collection::vec(0..p as i64, n * (n - 1) / 2)))
        .prop_map(|(p, n, upper)| {
            let mut rows = vec![vec![0i64; n]; n];
            for ((i, j), v) in (0..n).tuple_combinations().zip(upper) {
                rows[i][j] = v;
                rows[j][i] = v;
            }
            Adjacency::new(MatrixGF::from_rows(PrimeField::new(p).unwrap(), &rows).unwrap()).unwrap()
        })
}

/// Random valid hierarchy over GF(5) or GF(7).
fn hierarchy() -> impl Strategy<Value = HierarchySpec> {
    (prop_oneof![Just(5u64), Just(7)], 4usize..=8, any::<u64>()).prop_filter_map("no room", |(p, n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut levels = vec![Level::new(n, rand::Rng::random_range(&mut rng, 1..=n / 2))];
        loop {
            let prev = *levels.last().unwrap();
            let room = prev.n - prev.k;
            if room < 2 || rand::Rng::random_bool(&mut rng, 0.3) {
                break;
            }
            let m = rand::Rng::random_range(&mut rng, 2..=room);
            levels.push(Level::new(m, rand::Rng::random_range(&mut rng, 1..=m / 2)));
        }
        let spec = HierarchySpec::new(PrimeField::new(p).unwrap(), levels).ok()?;
        spec.level_codes().ok()?;
        Some(spec)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_divides_group_order(pi in 0usize..PRIMES.len(), a in 1u64..1000) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let x = f.elem((a % (f.p() as u64 - 1).max(1) + 1) as i64 % f.p() as i64);
        prop_assume!(!x.is_zero());
        let ord = f.order(x).unwrap();
        prop_assert_eq!((f.p() - 1) % ord, 0);
        prop_assert_eq!(f.is_primitive(x), ord == f.p() - 1);
    }

    #[test]
    fn row_combinations_of_mds_blocks(p in prop_oneof![Just(5u64), Just(7)], k in 1usize..=3, m in 1usize..=4,
                                      entries in proptest::collection::vec(1i64..7, 12), coeffs in proptest::collection::vec(1u64..7, 3)) {
        let f = PrimeField::new(p).unwrap();
        let rows: Vec<Vec<i64>> = (0..k).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect();
        let a = MatrixGF::from_rows(f, &rows).unwrap();
        prop_assume!(a.all_square_submatrices_nonsingular());
        for t in 1..=k {
            for sel in (0..k).combinations(t) {
                let zeros = (0..m)
                    .filter(|&j| sel.iter().zip(&coeffs).map(|(&r, &c)| (c % p).max(1) * a.raw(r, j) as u64).sum::<u64>() % p == 0)
                    .count();
                prop_assert!(zeros < t, "{} zeros from {} rows", zeros, t);
            }
        }
    }

    #[test]
    fn random_b_keeps_adjacency_invariants(seed: u64, k in 1usize..=3) {
        let f = PrimeField::new(7).unwrap();
        let code = mds_code(f, 2 * k + 1, k).unwrap();
        let b = random_symmetric_b(f, k + 1, &mut ChaCha8Rng::seed_from_u64(seed));
        let adj = general_adjacency(&code, &b).unwrap();
        prop_assert!(adj.matrix().is_symmetric());
        prop_assert!(adj.matrix().has_zero_diagonal());
    }

    #[test]
    fn hierarchy_levels_add_edges(spec in hierarchy()) {
        let mut prev = 0;
        for depth in 1..=spec.levels.len() {
            let sub = HierarchySpec::new(spec.field, spec.levels[..depth].to_vec()).unwrap();
            let adj = hierarchy_adjacency(&sub).unwrap();
            prop_assert!(adj.matrix().is_symmetric() && adj.matrix().has_zero_diagonal());
            prop_assert!(adj.edge_count() > prev);
            prev = adj.edge_count();
        }
    }

    #[test]
    fn hierarchy_states_are_k_uniform(spec in hierarchy()) {
        let n = spec.n() as u32;
        prop_assume!((spec.field.p() as u64).pow(n) <= 5u64.pow(6));
        let adj = hierarchy_adjacency(&spec).unwrap();
        prop_assert!(uniformity_index(&adj).unwrap().k >= spec.k());
    }

    #[test]
    fn generators_form_a_stabilizer_group(adj in adjacency()) {
        let g = graph_generators(&adj);
        prop_assert!(StabilizerGroupDesc::new(adj.field(), g.generators().to_vec()).is_ok());
    }

    #[test]
    fn stabilizer_and_dense_agree(adj in adjacency()) {
        let st: State = graph_state(&adj).unwrap();
        let ks = uniformity_index(&adj).unwrap().k;
        let kd = uniformity_by_oracle(&st).unwrap().k;
        prop_assert_eq!(ks, kd);
        for s in graph_generators(&adj).generators() {
            prop_assert!(apply_pauli(&st, s).unwrap().max_abs_diff(&st).unwrap() < 1e-9);
        }
        let q = adj.field().p() as usize;
        for size in 1..=kd {
            for sub in (0..adj.n()).combinations(size) {
                prop_assert_eq!(rank_of_reduction(&st, &sub).unwrap(), q.pow(size as u32));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn rank_spectrum_is_local_unitary_invariant(adj in adjacency(), ops in proptest::collection::vec((0usize..8, 0u32..4, 0u32..5), 1..10)) {
        let st: State = graph_state(&adj).unwrap();
        let before = rank_spectrum(&st).unwrap();
        let q = adj.field().p();
        let mut s = st;
        for (qudit, kind, a) in ops {
            let op = match kind {
                0 => LocalOp::X(a % q),
                1 => LocalOp::Z(a % q),
                2 => LocalOp::F,
                _ => LocalOp::FInv,
            };
            s = apply_local(&s, qudit % adj.n(), op).unwrap();
        }
        prop_assert_eq!(rank_spectrum(&s).unwrap(), before);
    }
}
