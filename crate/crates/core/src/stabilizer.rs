//! Pauli products in symplectic form, graph-state stabilizer generators and
//! the exact k-uniformity test by sweeping every generator product.
//!
//! A product `S_1^{w_1} ... S_n^{w_n}` of graph-state generators has X
//! exponents `w` and Z exponents `Gamma w`, so its support is
//! `supp(w) ∪ supp(Gamma w)`. A stabilizer state is k-uniform iff every
//! nontrivial product acts nontrivially on at least `k + 1` qudits.

use rayon::prelude::*;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{guard_pow, Error, Result};
use crate::field::PrimeField;
use crate::graph::{general_adjacency, Adjacency};
use crate::matrix::MatrixGF;

/// Largest number of exponent vectors a uniformity sweep will visit.
pub const SWEEP_LIMIT: u128 = 1 << 26;

/// `omega^phase X_1^{x_1} Z_1^{z_1} ⊗ ... ⊗ X_n^{x_n} Z_n^{z_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    field: PrimeField,
    phase: u32,
    x: Vec<u32>,
    z: Vec<u32>,
}

impl PauliProduct {
    pub fn new(field: PrimeField, phase: u32, x: Vec<u32>, z: Vec<u32>) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension("x and z exponent vectors differ in length".into()));
        }
        let p = field.p();
        if phase >= p || x.iter().chain(&z).any(|&e| e >= p) {
            return Err(Error::Parse(format!("exponent outside Z_{p}")));
        }
        Ok(Self { field, phase, x, z })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self { field, phase: 0, x: vec![0; n], z: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn z_exponents(&self) -> &[u32] {
        &self.z
    }

    /// Identity up to phase.
    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&e| e == 0)
    }

    /// Number of qudits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(&a, &b)| a != 0 || b != 0).count()
    }

    /// `x · z' - z · x' mod p`; zero iff the two operators commute.
    pub fn symplectic_product(&self, other: &PauliProduct) -> u32 {
        let f = self.field;
        let mut acc = 0;
        for i in 0..self.n() {
            acc = f.add_raw(acc, f.mul_raw(self.x[i], other.z[i]));
            acc = f.sub_raw(acc, f.mul_raw(self.z[i], other.x[i]));
        }
        acc
    }

    pub fn commutes_with(&self, other: &PauliProduct) -> bool {
        self.symplectic_product(other) == 0
    }

    /// Operator product `self · other`, using `Z X = omega X Z`.
    pub fn mul(&self, other: &PauliProduct) -> Result<PauliProduct> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.n() != other.n() {
            return Err(Error::Dimension("Pauli products act on different qudit counts".into()));
        }
        let f = self.field;
        let mut phase = f.add_raw(self.phase, other.phase);
        for i in 0..self.n() {
            // X^a Z^b X^c Z^d = omega^{bc} X^{a+c} Z^{b+d}
            phase = f.add_raw(phase, f.mul_raw(self.z[i], other.x[i]));
        }
        let x = self.x.iter().zip(&other.x).map(|(&a, &b)| f.add_raw(a, b)).collect();
        let z = self.z.iter().zip(&other.z).map(|(&a, &b)| f.add_raw(a, b)).collect();
        Ok(PauliProduct { field: f, phase, x, z })
    }

    pub fn pow(&self, e: u32) -> PauliProduct {
        let mut acc = PauliProduct::identity(self.field, self.n());
        for _ in 0..e {
            acc = acc.mul(self).expect("same field and size");
        }
        acc
    }
}

/// `n` independent, pairwise commuting generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerGroupDesc {
    field: PrimeField,
    generators: Vec<PauliProduct>,
}

impl StabilizerGroupDesc {
    pub fn new(field: PrimeField, generators: Vec<PauliProduct>) -> Result<Self> {
        let n = generators.len();
        if generators.iter().any(|g| g.n() != n || g.field != field) {
            return Err(Error::InvalidStabilizer(format!("need {n} generators on {n} qudits over {field}")));
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate().skip(i + 1) {
                if !a.commutes_with(b) {
                    return Err(Error::InvalidStabilizer(format!("generators {i} and {j} do not commute")));
                }
            }
        }
        let mut data = Vec::with_capacity(2 * n * n);
        for g in &generators {
            data.extend_from_slice(&g.x);
            data.extend_from_slice(&g.z);
        }
        if MatrixGF::from_raw(field, n, 2 * n, data).rank() != n {
            return Err(Error::InvalidStabilizer("generators are not independent".into()));
        }
        Ok(Self { field, generators })
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[PauliProduct] {
        &self.generators
    }

    /// `S_1^{w_1} ... S_n^{w_n}` with full phase tracking.
    pub fn product(&self, w: &[u32]) -> Result<PauliProduct> {
        if w.len() != self.n() {
            return Err(Error::Dimension("exponent vector length differs from n".into()));
        }
        let mut acc = PauliProduct::identity(self.field, self.n());
        for (g, &e) in self.generators.iter().zip(w) {
            acc = acc.mul(&g.pow(e))?;
        }
        Ok(acc)
    }
}

/// `S_i = X_i ∏_j Z_j^{Gamma_ij}`.
pub fn graph_generators(adj: &Adjacency) -> StabilizerGroupDesc {
    let n = adj.n();
    let f = adj.field();
    let gens = (0..n)
        .map(|i| {
            let mut x = vec![0; n];
            x[i] = 1 % f.p();
            PauliProduct { field: f, phase: 0, x, z: adj.matrix().row(i).to_vec() }
        })
        .collect();
    StabilizerGroupDesc::new(f, gens).expect("graph-state generators are valid for any adjacency")
}

/// `|supp(w) ∪ supp(Gamma w mod p)|`.
pub fn support_weight(w: &[u32], adj: &Adjacency) -> Result<usize> {
    let n = adj.n();
    if w.len() != n {
        return Err(Error::Dimension(format!("exponent vector has length {}, expected {n}", w.len())));
    }
    let f = adj.field();
    Ok((0..n)
        .filter(|&i| {
            w[i] != 0 || {
                let mut s = 0;
                for (j, &wj) in w.iter().enumerate() {
                    s = f.add_raw(s, f.mul_raw(adj.weight(i, j), wj % f.p()));
                }
                s != 0
            }
        })
        .count())
}

/// Result of a full uniformity sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    /// Largest `k` for which the state is k-uniform.
    pub k: usize,
    /// First exponent vector (lexicographic) of minimum support weight; it
    /// has weight `k + 1` and so rules out (k+1)-uniformity.
    pub witness: Vec<u32>,
    pub min_weight: usize,
}

/// Lowest-weight nonzero `w` within one block of the sweep, the block being
/// all vectors whose leading symbol is `lead`.
fn sweep_block(adj: &Adjacency, lead: u32, stop_at: usize) -> Option<(usize, Vec<u32>)> {
    let n = adj.n();
    let f = adj.field();
    let p = f.p();
    let cols: Vec<Vec<u32>> = (0..n).map(|j| (0..n).map(|i| adj.weight(i, j)).collect()).collect();
    let mut w = vec![0u32; n];
    w[0] = lead;
    let mut s: Vec<u32> = cols[0].iter().map(|&c| f.mul_raw(c, lead)).collect();
    let mut best: Option<(usize, Vec<u32>)> = None;
    loop {
        if w.iter().any(|&x| x != 0) {
            let weight = (0..n).filter(|&i| w[i] != 0 || s[i] != 0).count();
            if best.as_ref().is_none_or(|(b, _)| weight < *b) {
                best = Some((weight, w.clone()));
                if weight <= stop_at {
                    return best;
                }
            }
        }
        // odometer over positions 1..n; each +1 step on digit j adds column j
        let mut pos = n;
        loop {
            if pos == 1 {
                return best;
            }
            pos -= 1;
            w[pos] += 1;
            for (si, &c) in s.iter_mut().zip(&cols[pos]) {
                *si = f.add_raw(*si, c);
            }
            if w[pos] < p {
                break;
            }
            w[pos] = 0;
        }
    }
}

fn sweep(adj: &Adjacency, stop_at: usize) -> Result<Option<(usize, Vec<u32>)>> {
    let n = adj.n();
    guard_pow("stabilizer sweep", adj.field().p(), n, SWEEP_LIMIT)?;
    if n == 0 {
        return Ok(None);
    }
    let blocks: Vec<Option<(usize, Vec<u32>)>> = (0..adj.field().p())
        .into_par_iter()
        .map(|lead| sweep_block(adj, lead, stop_at))
        .collect();
    // blocks are in lexicographic order, so the first strict minimum is the
    // lexicographically first minimum-weight vector
    Ok(blocks.into_iter().flatten().fold(None, |acc: Option<(usize, Vec<u32>)>, cur| match acc {
        Some(a) if a.0 <= cur.0 => Some(a),
        _ => Some(cur),
    }))
}

/// Exact uniformity by sweeping all `p^n - 1` nontrivial generator products.
pub fn uniformity_index(adj: &Adjacency) -> Result<UniformityReport> {
    match sweep(adj, 0)? {
        Some((min_weight, witness)) => Ok(UniformityReport { k: min_weight - 1, witness, min_weight }),
        None => Ok(UniformityReport { k: 0, witness: Vec::new(), min_weight: 0 }),
    }
}

/// Whether the graph state is at least `k`-uniform; stops at the first
/// product of weight `<= k`.
pub fn is_k_uniform(adj: &Adjacency, k: usize) -> Result<bool> {
    Ok(match sweep(adj, k)? {
        Some((w, _)) => w > k,
        None => true,
    })
}

/// Builds `[[0, -A], [-A^T, B]]` and confirms it is `k`-uniform for the
/// code dimension `k`.
pub fn verify_general_block(code: &LinearCode, b: &MatrixGF) -> Result<bool> {
    let adj = general_adjacency(code, b)?;
    is_k_uniform(&adj, code.k())
}
