//! Dense state-vector oracle.
//!
//! Amplitudes are stored for every computational basis state; qudit 0 is the
//! most significant base-q digit of the index, matching codeword order.
//! Everything here is deliberately brute force so it can serve as ground
//! truth for the symplectic routines in [`crate::stabilizer`].

use itertools::Itertools;
use nalgebra::DMatrix;
use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{guard_pow, Error, Result};
use crate::graph::Adjacency;
use crate::scalar::Scalar;
use crate::stabilizer::PauliProduct;

/// Largest number of amplitudes a dense state may hold.
pub const AMPLITUDE_LIMIT: u128 = 1 << 24;

pub type C<T> = Complex<T>;

fn abs_c<T: Scalar>(z: C<T>) -> f64 {
    z.norm_sqr().sqrt().as_f64()
}

/// `omega^j = exp(2 pi i j / q)` for `j in 0..q`, evaluated in f64.
fn roots<T: Scalar>(q: u32) -> Vec<C<T>> {
    (0..q)
        .map(|j| {
            let th = 2.0 * std::f64::consts::PI * j as f64 / q as f64;
            C::new(T::of(th.cos()), T::of(th.sin()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T: Scalar> {
    n: usize,
    q: u32,
    amps: Vec<C<T>>,
}

/// Single-qudit operators understood by [`apply_local`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalOp {
    /// `X^a |j> = |j + a>`
    X(u32),
    /// `Z^a |j> = omega^{a j} |j>`
    Z(u32),
    /// `F |i> = q^{-1/2} sum_j omega^{i j} |j>`
    F,
    FInv,
}

impl<T: Scalar> StateVector<T> {
    pub fn from_amplitudes(n: usize, q: u32, amps: Vec<C<T>>) -> Result<Self> {
        let dim = guard_pow("state vector", q, n, AMPLITUDE_LIMIT)?;
        if amps.len() as u128 != dim {
            return Err(Error::Dimension(format!("expected {dim} amplitudes, got {}", amps.len())));
        }
        Ok(Self { n, q, amps })
    }

    /// `|d_0 d_1 ... d_{n-1}>`.
    pub fn basis(n: usize, q: u32, digits: &[u32]) -> Result<Self> {
        if digits.len() != n || digits.iter().any(|&d| d >= q) {
            return Err(Error::Dimension("basis digits do not match n and q".into()));
        }
        let dim = guard_pow("state vector", q, n, AMPLITUDE_LIMIT)? as usize;
        let mut amps = vec![C::new(T::zero(), T::zero()); dim];
        amps[index_of(q, digits)] = C::new(T::one(), T::zero());
        Ok(Self { n, q, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    pub fn normalized(mut self) -> Self {
        let nrm = self.norm();
        if nrm > T::zero() {
            for a in &mut self.amps {
                *a = a.unscale(nrm);
            }
        }
        self
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C<T>> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::Dimension("states live in different spaces".into()));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b))
    }

    /// `|<self|other>|`.
    pub fn overlap(&self, other: &Self) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr().sqrt())
    }

    /// Equality up to a global phase: `|<a|b>| >= 1 - tol`.
    pub fn equal_up_to_phase(&self, other: &Self) -> Result<bool> {
        Ok(self.overlap(other)?.as_f64() >= 1.0 - T::OVERLAP_TOL)
    }

    /// Largest entry-wise distance `| self - other |`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension("states live in different spaces".into()));
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| abs_c(a - b)).fold(0.0, f64::max))
    }

    pub fn digits(&self, index: usize) -> Vec<u32> {
        digits_of(self.q, self.n, index)
    }

    fn stride(&self, qudit: usize) -> usize {
        (self.q as usize).pow((self.n - 1 - qudit) as u32)
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            q: self.q,
            n: self.n,
            amplitudes: Some(self.amps.iter().map(|a| [a.re.as_f64(), a.im.as_f64()]).collect()),
            sparse: None,
        }
    }

    /// Sparse form listing `[index, re, im]` for amplitudes above the
    /// support tolerance.
    pub fn to_sparse_json(&self) -> StateJson {
        StateJson {
            q: self.q,
            n: self.n,
            amplitudes: None,
            sparse: Some(
                self.amps
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| abs_c(**a) > T::SUPPORT_TOL)
                    .map(|(i, a)| (i as u64, a.re.as_f64(), a.im.as_f64()))
                    .collect(),
            ),
        }
    }

    pub fn from_json(json: &StateJson) -> Result<Self> {
        let dim = guard_pow("state vector", json.q, json.n, AMPLITUDE_LIMIT)? as usize;
        let mut amps = vec![C::new(T::zero(), T::zero()); dim];
        match (&json.amplitudes, &json.sparse) {
            (Some(dense), None) => {
                if dense.len() != dim {
                    return Err(Error::Dimension(format!("expected {dim} amplitudes, got {}", dense.len())));
                }
                for (a, [re, im]) in amps.iter_mut().zip(dense) {
                    *a = C::new(T::of(*re), T::of(*im));
                }
            }
            (None, Some(sparse)) => {
                for &(i, re, im) in sparse {
                    let slot = amps
                        .get_mut(i as usize)
                        .ok_or(Error::IndexOutOfRange { index: i as usize, bound: dim })?;
                    *slot = C::new(T::of(re), T::of(im));
                }
            }
            _ => return Err(Error::Parse("state JSON needs exactly one of amplitudes, sparse".into())),
        }
        Ok(Self { n: json.n, q: json.q, amps })
    }
}

/// Wire form `{"q", "n", "amplitudes": [[re, im]]}` or, sparse,
/// `{"q", "n", "sparse": [[index, re, im]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub q: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sparse: Option<Vec<(u64, f64, f64)>>,
}

fn index_of(q: u32, digits: &[u32]) -> usize {
    digits.iter().fold(0usize, |acc, &d| acc * q as usize + d as usize)
}

fn digits_of(q: u32, n: usize, mut index: usize) -> Vec<u32> {
    let mut d = vec![0u32; n];
    for slot in d.iter_mut().rev() {
        *slot = (index % q as usize) as u32;
        index /= q as usize;
    }
    d
}

/// `q^{-k/2} sum_c |c>` over all codewords.
pub fn state_from_code<T: Scalar>(code: &LinearCode) -> Result<StateVector<T>> {
    let q = code.field().p();
    let dim = guard_pow("state vector", q, code.n(), AMPLITUDE_LIMIT)? as usize;
    let words = code.enumerate_codewords()?;
    let amp = T::one() / T::of(words.len() as f64).sqrt();
    let mut amps = vec![C::new(T::zero(), T::zero()); dim];
    for w in &words {
        amps[index_of(q, w.symbols())] += C::new(amp, T::zero());
    }
    Ok(StateVector { n: code.n(), q, amps })
}

/// `prod_{i<j} CZ_ij^{Gamma_ij} |+>^n` with `CZ |a, b> = omega^{ab} |a, b>`.
pub fn graph_state<T: Scalar>(adj: &Adjacency) -> Result<StateVector<T>> {
    let (n, q) = (adj.n(), adj.field().p());
    let dim = guard_pow("state vector", q, n, AMPLITUDE_LIMIT)? as usize;
    let w = roots::<T>(q);
    let f = adj.field();
    let scale = T::one() / T::of(dim as f64).sqrt();
    let edges = adj.edges();
    let amps = (0..dim)
        .into_par_iter()
        .map(|idx| {
            let d = digits_of(q, n, idx);
            let e = edges
                .iter()
                .fold(0u32, |acc, &(i, j, g)| f.add_raw(acc, f.mul_raw(g, f.mul_raw(d[i], d[j]))));
            w[e as usize].scale(scale)
        })
        .collect();
    Ok(StateVector { n, q, amps })
}

/// Applies a single-qudit operator to `qudit` (0-based).
pub fn apply_local<T: Scalar>(state: &StateVector<T>, qudit: usize, op: LocalOp) -> Result<StateVector<T>> {
    if qudit >= state.n {
        return Err(Error::IndexOutOfRange { index: qudit, bound: state.n });
    }
    let q = state.q as usize;
    let stride = state.stride(qudit);
    let w = roots::<T>(state.q);
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![zero; state.dim()];
    let digit = |idx: usize| (idx / stride) % q;
    match op {
        LocalOp::X(a) | LocalOp::Z(a) if a >= state.q => {
            return Err(Error::Precondition(format!("exponent {a} not in Z_{q}")));
        }
        LocalOp::X(a) => {
            let a = a as usize;
            for (idx, &amp) in state.amps.iter().enumerate() {
                let d = digit(idx);
                let nd = (d + a) % q;
                out[idx - d * stride + nd * stride] = amp;
            }
        }
        LocalOp::Z(a) => {
            for (idx, (&amp, o)) in state.amps.iter().zip(out.iter_mut()).enumerate() {
                *o = amp * w[(a as usize * digit(idx)) % q];
            }
        }
        LocalOp::F | LocalOp::FInv => {
            let norm = T::one() / T::of(q as f64).sqrt();
            let inverse = matches!(op, LocalOp::FInv);
            for (idx, o) in out.iter_mut().enumerate() {
                let j = digit(idx);
                let base = idx - j * stride;
                let mut acc = zero;
                for i in 0..q {
                    let e = if inverse { (q - (i * j) % q) % q } else { (i * j) % q };
                    acc += state.amps[base + i * stride] * w[e];
                }
                *o = acc.scale(norm);
            }
        }
    }
    Ok(StateVector { n: state.n, q: state.q, amps: out })
}

/// Applies the same local operator to several qudits.
pub fn apply_local_many<T: Scalar>(state: &StateVector<T>, qudits: &[usize], op: LocalOp) -> Result<StateVector<T>> {
    qudits.iter().try_fold(state.clone(), |s, &i| apply_local(&s, i, op))
}

/// `omega^phase ⊗_i X^{x_i} Z^{z_i}` applied to the state.
pub fn apply_pauli<T: Scalar>(state: &StateVector<T>, op: &PauliProduct) -> Result<StateVector<T>> {
    if op.n() != state.n || op.field().p() != state.q {
        return Err(Error::Dimension("Pauli product does not match the state".into()));
    }
    let mut s = state.clone();
    for i in 0..state.n {
        if op.z_exponents()[i] != 0 {
            s = apply_local(&s, i, LocalOp::Z(op.z_exponents()[i]))?;
        }
        if op.x_exponents()[i] != 0 {
            s = apply_local(&s, i, LocalOp::X(op.x_exponents()[i]))?;
        }
    }
    let ph = roots::<T>(state.q)[op.phase() as usize];
    for a in &mut s.amps {
        *a *= ph;
    }
    Ok(s)
}

/// `Z^{-e_1} ⊗ ... ⊗ Z^{-e_{k*}} ⊗ X^{e_{k*+1}} ⊗ ... ⊗ X^{e_{n*}} |phi_{n*,0}>`
/// for the standard-form code `sub_code` of dimension `k*`.
pub fn operator_basis_state<T: Scalar>(sub_code: &LinearCode, exponents: &[u32]) -> Result<StateVector<T>> {
    let base = state_from_code::<T>(sub_code)?;
    shifted_code_state(&base, sub_code.k(), exponents)
}

fn shifted_code_state<T: Scalar>(base: &StateVector<T>, k_star: usize, e: &[u32]) -> Result<StateVector<T>> {
    if e.len() != base.n {
        return Err(Error::Dimension("exponent tuple length differs from n*".into()));
    }
    let mut s = base.clone();
    for (i, &ei) in e.iter().enumerate() {
        if ei == 0 {
            continue;
        }
        let op = if i < k_star { LocalOp::Z((base.q - ei) % base.q) } else { LocalOp::X(ei) };
        s = apply_local(&s, i, op)?;
    }
    Ok(s)
}

/// `1^{(n - n*)} ⊗ O_{n*}`, extended linearly: the basis labels of the last
/// `n*` qudits become Z and X exponents acting on the code state of
/// `sub_code`. The result is renormalized.
pub fn apply_o<T: Scalar>(state: &StateVector<T>, n_star: usize, sub_code: &LinearCode) -> Result<StateVector<T>> {
    Ok(apply_o_raw(state, n_star, sub_code)?.normalized())
}

/// [`apply_o`] without renormalization, together with the norm of the raw
/// image. `O_{n*}` maps an orthonormal basis to an orthonormal basis, so the
/// norm is 1 for any normalized input.
pub fn apply_o_with_norm<T: Scalar>(
    state: &StateVector<T>,
    n_star: usize,
    sub_code: &LinearCode,
) -> Result<(StateVector<T>, T)> {
    let raw = apply_o_raw(state, n_star, sub_code)?;
    let norm = raw.norm();
    Ok((raw, norm))
}

fn apply_o_raw<T: Scalar>(state: &StateVector<T>, n_star: usize, sub_code: &LinearCode) -> Result<StateVector<T>> {
    if n_star < 2 || n_star > state.n {
        return Err(Error::Precondition(format!("need 2 <= n* <= {}, got {n_star}", state.n)));
    }
    if sub_code.n() != n_star {
        return Err(Error::Precondition(format!("sub-code length {} differs from n* = {n_star}", sub_code.n())));
    }
    if sub_code.field().p() != state.q {
        return Err(Error::FieldMismatch(state.q, sub_code.field().p()));
    }
    if !sub_code.is_standard_form() {
        return Err(Error::NotStandardForm);
    }
    let q = state.q;
    let tail = (q as usize).pow(n_star as u32);
    let base = state_from_code::<T>(sub_code)?;
    let k_star = sub_code.k();
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![zero; state.dim()];
    let mut cache: Vec<Option<StateVector<T>>> = vec![None; tail];
    for (idx, &amp) in state.amps.iter().enumerate() {
        if amp == zero {
            continue;
        }
        let (prefix, suffix) = (idx / tail, idx % tail);
        if cache[suffix].is_none() {
            cache[suffix] = Some(shifted_code_state(&base, k_star, &digits_of(q, n_star, suffix))?);
        }
        let psi = cache[suffix].as_ref().expect("filled above");
        for (b, &v) in psi.amps.iter().enumerate() {
            if v != zero {
                out[prefix * tail + b] += amp * v;
            }
        }
    }
    Ok(StateVector { n: state.n, q, amps: out })
}

/// `|phi_{n,n*}>` from the base code and the level-one sub-code, checking
/// `2 <= n* <= n - k`.
pub fn hierarchy_state<T: Scalar>(code: &LinearCode, sub_code: &LinearCode) -> Result<StateVector<T>> {
    let n_star = sub_code.n();
    if n_star < 2 || n_star > code.n() - code.k() {
        return Err(Error::Precondition(format!(
            "need 2 <= n* <= n - k = {}, got {n_star}",
            code.n() - code.k()
        )));
    }
    apply_o(&state_from_code::<T>(code)?, n_star, sub_code)
}

/// Qudits (0-based) that take a local Fourier transform to carry
/// `|phi_{n,n*}>` to the graph state of the hierarchy adjacency: the last
/// `n - k` qudits, except the `k*` qudits that receive Z-type exponents from
/// the operator `O_{n*}`. With `n_star = 0` this is the plain last `n - k`.
pub fn graph_form_qudits(n: usize, k: usize, n_star: usize, k_star: usize) -> Vec<usize> {
    let skip = (n - n_star)..(n - n_star + k_star);
    (k..n).filter(|i| n_star == 0 || !skip.contains(i)).collect()
}

/// Applies the inverse Fourier transform on [`graph_form_qudits`].
///
/// With `X|j> = |j+1>`, `Z|j> = omega^j |j>` and the CZ convention of
/// [`graph_state`], it is `F^{-1}` (not `F`) that carries the code state to
/// the graph state with `-A` off-diagonal blocks exactly.
pub fn to_graph_form<T: Scalar>(state: &StateVector<T>, k: usize, n_star: usize, k_star: usize) -> Result<StateVector<T>> {
    apply_local_many(state, &graph_form_qudits(state.n, k, n_star, k_star), LocalOp::FInv)
}

/// Reduced density matrix on a sorted subset of qudits.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensity<T: Scalar> {
    pub subset: Vec<usize>,
    pub q: u32,
    pub matrix: DMatrix<C<T>>,
}

impl<T: Scalar> ReducedDensity<T> {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> C<T> {
        self.matrix.diagonal().iter().fold(C::new(T::zero(), T::zero()), |a, &b| a + b)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let d = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                worst = worst.max(abs_c(self.matrix[(i, j)] - self.matrix[(j, i)].conj()));
            }
        }
        worst
    }

    /// `max_ij | rho_ij - delta_ij / d |`.
    pub fn deviation_from_mixed(&self) -> f64 {
        let d = self.dim();
        let target = 1.0 / d as f64;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let mut v = self.matrix[(i, j)];
                if i == j {
                    v.re -= T::of(target);
                }
                worst = worst.max(abs_c(v));
            }
        }
        worst
    }

    pub fn is_maximally_mixed(&self) -> bool {
        self.deviation_from_mixed() < T::MIXED_TOL
    }

    /// Number of singular values above `T::RANK_TOL * sigma_max`.
    pub fn rank(&self) -> usize {
        let sv = self.matrix.clone().singular_values();
        let max = sv.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
        if max <= T::zero() {
            return 0;
        }
        let cut = max * T::of(T::RANK_TOL);
        sv.iter().filter(|&&s| s > cut).count()
    }
}

fn check_subset(subset: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    for w in s.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicateIndex(w[0]));
        }
    }
    if let Some(&bad) = s.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, bound: n });
    }
    Ok(s)
}

/// `Tr_{S^c} |psi><psi|`; `subset` holds 0-based qudit indices.
pub fn reduced_density<T: Scalar>(state: &StateVector<T>, subset: &[usize]) -> Result<ReducedDensity<T>> {
    let s = check_subset(subset, state.n)?;
    let q = state.q as usize;
    let rest: Vec<usize> = (0..state.n).filter(|i| !s.contains(i)).collect();
    let dim_s = q.pow(s.len() as u32);
    let dim_r = q.pow(rest.len() as u32);
    let mut m = DMatrix::from_element(dim_s, dim_r, C::new(T::zero(), T::zero()));
    for (idx, &amp) in state.amps.iter().enumerate() {
        let d = digits_of(state.q, state.n, idx);
        let si = s.iter().fold(0usize, |acc, &i| acc * q + d[i] as usize);
        let ri = rest.iter().fold(0usize, |acc, &i| acc * q + d[i] as usize);
        m[(si, ri)] = amp;
    }
    let matrix = &m * m.adjoint();
    Ok(ReducedDensity { subset: s, q: state.q, matrix })
}

/// Numerical rank of `rho_S`.
pub fn rank_of_reduction<T: Scalar>(state: &StateVector<T>, subset: &[usize]) -> Result<usize> {
    Ok(reduced_density(state, subset)?.rank())
}

/// Number of amplitudes with modulus above `T::SUPPORT_TOL`.
pub fn support_count<T: Scalar>(state: &StateVector<T>) -> usize {
    state.amps.iter().filter(|a| abs_c(**a) > T::SUPPORT_TOL).count()
}

/// Largest deviation from `I / q^size` over every reduction of the given
/// size, with the subset that attains it.
pub fn max_deviation_for_size<T: Scalar>(state: &StateVector<T>, size: usize) -> Result<(f64, Vec<usize>)> {
    let subsets: Vec<Vec<usize>> = (0..state.n).combinations(size).collect();
    let devs: Vec<Result<(f64, Vec<usize>)>> = subsets
        .into_par_iter()
        .map(|s| Ok((reduced_density(state, &s)?.deviation_from_mixed(), s)))
        .collect();
    let mut worst = (0.0, Vec::new());
    for d in devs {
        let d = d?;
        if d.0 > worst.0 || worst.1.is_empty() {
            worst = d;
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub k: usize,
    /// Worst deviation from maximal mixedness for each reduction size
    /// checked, starting at size 1.
    pub max_deviation: Vec<f64>,
    pub subsets_checked: usize,
    /// First subset (0-based) whose reduction is not maximally mixed, if
    /// the sweep stopped on one.
    pub failing_subset: Option<Vec<usize>>,
}

/// Largest `k` such that every reduction to `<= k` qudits is maximally
/// mixed within `T::MIXED_TOL`. Sizes above `n / 2` are never checked: a
/// pure state cannot have a maximally mixed reduction on more than half of
/// its qudits.
pub fn uniformity_by_oracle<T: Scalar>(state: &StateVector<T>) -> Result<OracleReport> {
    let mut report = OracleReport { k: 0, max_deviation: Vec::new(), subsets_checked: 0, failing_subset: None };
    for size in 1..=state.n / 2 {
        let (dev, subset) = max_deviation_for_size(state, size)?;
        report.max_deviation.push(dev);
        report.subsets_checked += binomial(state.n, size);
        if dev >= T::MIXED_TOL {
            report.failing_subset = Some(subset);
            return Ok(report);
        }
        report.k = size;
    }
    Ok(report)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
