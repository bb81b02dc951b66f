//! SLOCC discrimination by Schmidt ranks and computational-basis support.
//!
//! Subsets are 0-based in the API and 1-based in serialized reports.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dense::{rank_of_reduction, support_count, uniformity_by_oracle, StateVector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `rank(rho_S)` for every subset with `|S| <= n / 2`, keyed by the sorted
/// 0-based subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankSpectrum {
    pub n: usize,
    pub q: u32,
    pub ranks: BTreeMap<Vec<usize>, usize>,
}

#[derive(Serialize)]
struct RankEntry {
    subset: Vec<usize>,
    rank: usize,
}

impl Serialize for RankSpectrum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            n: usize,
            q: u32,
            ranks: Vec<RankEntry>,
        }
        Wire {
            n: self.n,
            q: self.q,
            ranks: self.ranks.iter().map(|(k, &rank)| RankEntry { subset: one_based(k), rank }).collect(),
        }
        .serialize(s)
    }
}

impl RankSpectrum {
    pub fn rank(&self, subset: &[usize]) -> Option<usize> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.ranks.get(&s).copied()
    }

    /// Subsets (in lexicographic size-then-content order) whose ranks
    /// differ between the two spectra.
    pub fn differences(&self, other: &Self) -> Vec<(Vec<usize>, usize, usize)> {
        self.ranks
            .iter()
            .filter_map(|(s, &r)| other.ranks.get(s).filter(|&&o| o != r).map(|&o| (s.clone(), r, o)))
            .collect()
    }
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (1..=n / 2).flat_map(|size| (0..n).combinations(size)).collect()
}

pub fn rank_spectrum<T: Scalar>(state: &StateVector<T>) -> Result<RankSpectrum> {
    let subsets = all_subsets(state.n());
    let ranks: Vec<Result<(Vec<usize>, usize)>> = subsets
        .into_par_iter()
        .map(|s| Ok((s.clone(), rank_of_reduction(state, &s)?)))
        .collect();
    Ok(RankSpectrum { n: state.n(), q: state.q(), ranks: ranks.into_iter().collect::<Result<_>>()? })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishingSubset {
    /// 1-based qudit labels.
    pub subset: Vec<usize>,
    /// Rank of the reduction for each of the two states.
    pub ranks: [usize; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// A Schmidt rank differs, so the states are SLOCC inequivalent.
    Distinguished,
    /// Supports differ between AME states; inequivalence rests on the
    /// analytic argument that an SLOCC map between such states is monomial,
    /// which preserves support. Not proven numerically here.
    SupportsDiffer,
    NotDistinguishedByThisTest,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SloccReport {
    pub states: [String; 2],
    pub test: &'static str,
    pub subsets_checked: usize,
    pub distinguishing_subsets: Vec<DistinguishingSubset>,
    pub supports: [usize; 2],
    pub verdict: Verdict,
}

impl SloccReport {
    pub fn with_labels(mut self, a: impl Into<String>, b: impl Into<String>) -> Self {
        self.states = [a.into(), b.into()];
        self
    }

    pub fn distinguished(&self) -> bool {
        self.verdict != Verdict::NotDistinguishedByThisTest
    }
}

fn same_space<T: Scalar>(a: &StateVector<T>, b: &StateVector<T>) -> Result<()> {
    if a.n() != b.n() || a.q() != b.q() {
        return Err(Error::Dimension("states live in different spaces".into()));
    }
    Ok(())
}

/// Rank test on `S = S_1 ∪ S_2` with `S_1` a `k`-subset of the first
/// `n - n*` qudits and `S_2` a `k*`-subset of the last `n*`. The base state
/// has rank at most `q^k` on every such `S` while the hierarchy state is
/// maximally mixed there, rank `q^{k+k*}`.
pub fn schmidt_rank_check<T: Scalar>(
    base: &StateVector<T>,
    hier: &StateVector<T>,
    n_star: usize,
    k: usize,
    k_star: usize,
) -> Result<SloccReport> {
    same_space(base, hier)?;
    let n = base.n();
    if k == 0 || k_star == 0 || 2 * (k + k_star) > n {
        return Err(Error::Precondition(format!("need 1 <= k, k* and k + k* <= n/2, got k={k}, k*={k_star}, n={n}")));
    }
    if n_star < k_star || n_star > n || n - n_star < k {
        return Err(Error::Precondition(format!("cannot pick {k} + {k_star} qudits with n*={n_star}, n={n}")));
    }
    let subsets: Vec<Vec<usize>> = (0..n - n_star)
        .combinations(k)
        .cartesian_product((n - n_star..n).combinations(k_star).collect::<Vec<_>>())
        .map(|(a, b)| a.into_iter().chain(b).collect())
        .collect();
    let ranks: Vec<Result<[usize; 2]>> = subsets
        .par_iter()
        .map(|s| Ok([rank_of_reduction(base, s)?, rank_of_reduction(hier, s)?]))
        .collect();
    let mut distinguishing = Vec::new();
    for (s, r) in subsets.iter().zip(ranks) {
        let r = r?;
        if r[0] != r[1] {
            distinguishing.push(DistinguishingSubset { subset: one_based(s), ranks: r });
        }
    }
    let verdict = if distinguishing.is_empty() { Verdict::NotDistinguishedByThisTest } else { Verdict::Distinguished };
    Ok(SloccReport {
        states: ["base".into(), "hierarchy".into()],
        test: "schmidt_rank",
        subsets_checked: subsets.len(),
        distinguishing_subsets: distinguishing,
        supports: [support_count(base), support_count(hier)],
        verdict,
    })
}

/// Support comparison for two AME states on an odd number of qudits.
/// Differing supports are reported as [`Verdict::SupportsDiffer`], never
/// as a numerical proof.
pub fn ame_support_check<T: Scalar>(base: &StateVector<T>, hier: &StateVector<T>) -> Result<SloccReport> {
    same_space(base, hier)?;
    let n = base.n();
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("support test needs odd n, got {n}")));
    }
    let mut checked = 0;
    for (name, st) in [("base", base), ("hierarchy", hier)] {
        let rep = uniformity_by_oracle(st)?;
        checked += rep.subsets_checked;
        if rep.k != n / 2 {
            return Err(Error::Precondition(format!("{name} state is {}-uniform, not AME", rep.k)));
        }
    }
    let supports = [support_count(base), support_count(hier)];
    let verdict = if supports[0] != supports[1] { Verdict::SupportsDiffer } else { Verdict::NotDistinguishedByThisTest };
    Ok(SloccReport {
        states: ["base".into(), "hierarchy".into()],
        test: "support",
        subsets_checked: checked,
        distinguishing_subsets: Vec::new(),
        supports,
        verdict,
    })
}

/// Full rank-spectrum comparison. Makes no claim beyond "a Schmidt rank
/// differs"; equal spectra leave the question open.
pub fn compare_spectra<T: Scalar>(a: &StateVector<T>, b: &StateVector<T>) -> Result<SloccReport> {
    same_space(a, b)?;
    let (sa, sb) = (rank_spectrum(a)?, rank_spectrum(b)?);
    let distinguishing: Vec<DistinguishingSubset> = sa
        .differences(&sb)
        .into_iter()
        .map(|(s, x, y)| DistinguishingSubset { subset: one_based(&s), ranks: [x, y] })
        .collect();
    let verdict = if distinguishing.is_empty() { Verdict::NotDistinguishedByThisTest } else { Verdict::Distinguished };
    Ok(SloccReport {
        states: ["a".into(), "b".into()],
        test: "rank_spectrum",
        subsets_checked: sa.ranks.len(),
        distinguishing_subsets: distinguishing,
        supports: [support_count(a), support_count(b)],
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{mds_code, LinearCode};
    use crate::dense::{apply_local, hierarchy_state, state_from_code, LocalOp};
    use crate::field::PrimeField;
    use crate::matrix::MatrixGF;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type S = StateVector<f64>;

    fn gf5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn code(a: &[&[i64]]) -> LinearCode {
        LinearCode::from_a(MatrixGF::from_rows(gf5(), a).unwrap()).unwrap()
    }

    fn phi60() -> S {
        state_from_code(&code(&[&[1, 1, 1, 1], &[1, 2, 3, 4]])).unwrap()
    }

    fn phi62() -> S {
        hierarchy_state(&code(&[&[1, 1, 1, 1], &[1, 2, 3, 4]]), &code(&[&[1]])).unwrap()
    }

    #[test]
    fn spectra() {
        let sp = rank_spectrum(&phi60()).unwrap();
        assert_eq!(sp.ranks.len(), 6 + 15 + 20);
        for (s, &r) in &sp.ranks {
            let cap = 5usize.pow(s.len().min(2) as u32);
            assert!(r >= 1 && r <= cap, "{s:?} {r}");
            if s.len() <= 2 {
                assert_eq!(r, 5usize.pow(s.len() as u32));
            }
        }
        assert_eq!(rank_spectrum(&phi62()).unwrap().rank(&[4, 0, 1]), Some(125));
        let ghz: S = state_from_code(&code(&[&[1, 1, 1, 1]])).unwrap();
        assert!(rank_spectrum(&ghz).unwrap().ranks.values().all(|&r| r == 5));
    }

    #[test]
    fn rank_test() {
        let rep = schmidt_rank_check(&phi60(), &phi62(), 2, 2, 1).unwrap();
        assert_eq!(rep.verdict, Verdict::Distinguished);
        assert_eq!(rep.subsets_checked, 6 * 2);
        let first = &rep.distinguishing_subsets[0];
        assert_eq!(first.subset, vec![1, 2, 5]);
        assert_eq!(first.ranks, [25, 125]);
        let same = schmidt_rank_check(&phi60(), &phi60(), 2, 2, 1).unwrap();
        assert_eq!(same.verdict, Verdict::NotDistinguishedByThisTest);
        assert!(schmidt_rank_check(&phi60(), &phi62(), 2, 2, 2).is_err());
        let json = serde_json::to_string(&rep.with_labels("6:2", "6:2+2:1")).unwrap();
        assert!(json.contains(r#""verdict":"distinguished""#));
        assert!(json.contains(r#""states":["6:2","6:2+2:1"]"#));
    }

    #[test]
    fn support_test() {
        let c = mds_code(gf5(), 5, 2).unwrap();
        let base: S = state_from_code(&c).unwrap();
        let hier: S = hierarchy_state(&c, &code(&[&[1]])).unwrap();
        let rep = ame_support_check(&base, &hier).unwrap();
        assert_eq!(rep.supports, [25, 125]);
        assert_eq!(rep.verdict, Verdict::SupportsDiffer);
        let same = ame_support_check(&base, &base).unwrap();
        assert_eq!(same.verdict, Verdict::NotDistinguishedByThisTest);
        assert!(ame_support_check(&phi60(), &phi62()).is_err());
        let ghz: S = state_from_code(&code(&[&[1, 1, 1, 1]])).unwrap();
        assert!(ame_support_check(&ghz, &ghz).is_err());
    }

    #[test]
    fn spectrum_invariant_under_local_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for st in [phi60(), phi62()] {
            let before = rank_spectrum(&st).unwrap();
            let mut s = st.clone();
            for _ in 0..12 {
                let op = match rng.random_range(0..4) {
                    0 => LocalOp::X(rng.random_range(0..5)),
                    1 => LocalOp::Z(rng.random_range(0..5)),
                    2 => LocalOp::F,
                    _ => LocalOp::FInv,
                };
                s = apply_local(&s, rng.random_range(0..6), op).unwrap();
            }
            assert_eq!(rank_spectrum(&s).unwrap(), before);
        }
    }

    #[test]
    fn compare_identical_and_different() {
        assert!(!compare_spectra(&phi60(), &phi60()).unwrap().distinguished());
        let rep = compare_spectra(&phi60(), &phi62()).unwrap();
        assert!(rep.distinguished());
        assert_eq!(rep.distinguishing_subsets[0].subset, vec![1, 2, 5]);
    }
}
