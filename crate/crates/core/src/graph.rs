//! Weighted-graph adjacency matrices: the complete bipartite graph of a
//! code, its generalization with an arbitrary lower-right block, and the
//! hierarchical nesting of smaller bipartite blocks.

use std::fmt::Write as _;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::{mds_a_matrix, LinearCode};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::matrix::MatrixGF;

/// Symmetric, zero-diagonal `n x n` adjacency matrix over GF(p).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    gamma: MatrixGF,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub p: u64,
    pub n: usize,
    pub gamma: Vec<Vec<i64>>,
}

impl Adjacency {
    pub fn new(gamma: MatrixGF) -> Result<Self> {
        if !gamma.is_square() {
            return Err(Error::Dimension(format!(
                "adjacency must be square, got {}x{}",
                gamma.rows(),
                gamma.cols()
            )));
        }
        if !gamma.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        if !gamma.has_zero_diagonal() {
            return Err(Error::NonZeroDiagonal);
        }
        Ok(Self { gamma })
    }

    pub fn empty(field: PrimeField, n: usize) -> Self {
        Self { gamma: MatrixGF::zeros(field, n, n) }
    }

    pub fn n(&self) -> usize {
        self.gamma.rows()
    }

    pub fn field(&self) -> PrimeField {
        self.gamma.field()
    }

    pub fn matrix(&self) -> &MatrixGF {
        &self.gamma
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.gamma.raw(i, j)
    }

    /// Edges `(i, j, weight)` with `i < j`, row-major.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let w = self.weight(i, j);
                (w != 0).then_some((i, j, w))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Undirected DOT graph; vertices are numbered from 1.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 1..=self.n() {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j, w) in self.edges() {
            let _ = writeln!(out, "  {} -- {} [label={w}];", i + 1, j + 1);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> AdjacencyJson {
        AdjacencyJson {
            p: self.field().p() as u64,
            n: self.n(),
            gamma: self.gamma.to_json().entries,
        }
    }

    pub fn from_json(json: &AdjacencyJson) -> Result<Self> {
        let field = PrimeField::new(json.p)?;
        Self::new(MatrixGF::from_shape(field, json.n, json.n, &json.gamma)?)
    }
}

impl Serialize for Adjacency {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Adjacency {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_json(&AdjacencyJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Writes the bipartite block `[[0, -A], [-A^T, 0]]` with its top-left corner
/// at `(offset, offset)`.
fn place_bipartite(out: &mut MatrixGF, offset: usize, a: &MatrixGF) {
    let f = out.field();
    let k = a.rows();
    for i in 0..k {
        for j in 0..a.cols() {
            let v = f.neg_raw(a.raw(i, j));
            out.set_raw(offset + i, offset + k + j, v);
            out.set_raw(offset + k + j, offset + i, v);
        }
    }
}

/// `[[0, -A], [-A^T, 0]]` for a standard-form code.
pub fn bipartite_adjacency(code: &LinearCode) -> Result<Adjacency> {
    let a = code.a_matrix()?;
    let mut g = MatrixGF::zeros(code.field(), code.n(), code.n());
    place_bipartite(&mut g, 0, &a);
    Adjacency::new(g)
}

/// `[[0, -A], [-A^T, B]]`.
///
/// `B` must be a symmetric zero-diagonal `(n-k) x (n-k)` matrix and `A`
/// must have every square submatrix nonsingular.
pub fn general_adjacency(code: &LinearCode, b: &MatrixGF) -> Result<Adjacency> {
    let a = code.a_matrix()?;
    let (n, k) = (code.n(), code.k());
    if b.field() != code.field() {
        return Err(Error::FieldMismatch(code.field().p(), b.field().p()));
    }
    if b.shape() != (n - k, n - k) {
        return Err(Error::Dimension(format!(
            "B must be {0}x{0}, got {1}x{2}",
            n - k,
            b.rows(),
            b.cols()
        )));
    }
    if !b.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !b.has_zero_diagonal() {
        return Err(Error::NonZeroDiagonal);
    }
    if !a.all_square_submatrices_nonsingular() {
        return Err(Error::NotMds);
    }
    let mut g = MatrixGF::zeros(code.field(), n, n);
    place_bipartite(&mut g, 0, &a);
    for i in 0..n - k {
        for j in 0..n - k {
            g.set_raw(k + i, k + j, b.raw(i, j));
        }
    }
    Adjacency::new(g)
}

/// Uniformly random symmetric zero-diagonal `size x size` matrix.
pub fn random_symmetric_b<R: Rng + ?Sized>(field: PrimeField, size: usize, rng: &mut R) -> MatrixGF {
    let mut b = MatrixGF::zeros(field, size, size);
    for i in 0..size {
        for j in i + 1..size {
            let v = rng.random_range(0..field.p());
            b.set_raw(i, j, v);
            b.set_raw(j, i, v);
        }
    }
    b
}

/// One level of a hierarchy: `n` qudits carrying an `[n, k]` bipartite block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub n: usize,
    pub k: usize,
}

impl Level {
    pub fn new(n: usize, k: usize) -> Self {
        Self { n, k }
    }
}

/// Nested levels `(n, k), (n*, k*), (n**, k**), ...` over one field.
///
/// Each level after the first sits flush in the bottom-right corner of the
/// previous level's zero block, so `n_l <= n_{l-1} - k_{l-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HierarchySpec {
    pub field: PrimeField,
    pub levels: Vec<Level>,
}

impl HierarchySpec {
    pub fn new(field: PrimeField, levels: Vec<Level>) -> Result<Self> {
        let spec = Self { field, levels };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.levels.first() else {
            return Err(Error::InvalidHierarchy("no levels".into()));
        };
        if first.k == 0 || 2 * first.k > first.n {
            return Err(Error::InvalidHierarchy(format!(
                "level 0: need 1 <= k <= n/2, got n={}, k={}",
                first.n, first.k
            )));
        }
        for (l, pair) in self.levels.windows(2).enumerate() {
            let (prev, cur) = (pair[0], pair[1]);
            let region = prev.n - prev.k;
            if cur.n < 2 || cur.n > region {
                return Err(Error::InvalidHierarchy(format!(
                    "level {}: need 2 <= n <= {region}, got n={}",
                    l + 1,
                    cur.n
                )));
            }
            if cur.k == 0 || 2 * cur.k > cur.n {
                return Err(Error::InvalidHierarchy(format!(
                    "level {}: need 1 <= k <= n/2, got n={}, k={}",
                    l + 1,
                    cur.n,
                    cur.k
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.levels[0].n
    }

    pub fn k(&self) -> usize {
        self.levels[0].k
    }

    /// First qudit (0-based) touched by level `l`.
    pub fn offset(&self, l: usize) -> usize {
        self.n() - self.levels[l].n
    }

    /// The standard-form MDS code used at every level.
    pub fn level_codes(&self) -> Result<Vec<LinearCode>> {
        self.levels
            .iter()
            .map(|lv| LinearCode::from_a(mds_a_matrix(self.field, lv.k, lv.n - lv.k)?))
            .collect()
    }
}

/// Hierarchy adjacency with explicit codes for each level.
pub fn hierarchy_adjacency_with_codes(spec: &HierarchySpec, codes: &[LinearCode]) -> Result<Adjacency> {
    spec.validate()?;
    if codes.len() != spec.levels.len() {
        return Err(Error::InvalidHierarchy(format!(
            "{} levels but {} codes",
            spec.levels.len(),
            codes.len()
        )));
    }
    let n = spec.n();
    let mut g = MatrixGF::zeros(spec.field, n, n);
    for (l, (lv, code)) in spec.levels.iter().zip(codes).enumerate() {
        if code.field() != spec.field || code.n() != lv.n || code.k() != lv.k {
            return Err(Error::InvalidHierarchy(format!(
                "level {l}: code is [{}, {}] over GF({}), expected [{}, {}]",
                code.n(),
                code.k(),
                code.field().p(),
                lv.n,
                lv.k
            )));
        }
        let a = code.a_matrix()?;
        if !a.all_square_submatrices_nonsingular() {
            return Err(Error::NotMds);
        }
        place_bipartite(&mut g, spec.offset(l), &a);
    }
    Adjacency::new(g)
}

/// Hierarchy adjacency with each level's `A` taken from [`mds_a_matrix`].
pub fn hierarchy_adjacency(spec: &HierarchySpec) -> Result<Adjacency> {
    hierarchy_adjacency_with_codes(spec, &spec.level_codes()?)
}

/// The lower-right `(n-k) x (n-k)` block of a hierarchy adjacency, i.e. the
/// `B` that makes it an instance of [`general_adjacency`].
pub fn hierarchy_b_matrix(spec: &HierarchySpec) -> Result<MatrixGF> {
    let g = hierarchy_adjacency(spec)?;
    let (n, k) = (spec.n(), spec.k());
    let rows: Vec<usize> = (k..n).collect();
    if rows.is_empty() {
        return Ok(MatrixGF::zeros(spec.field, 0, 0));
    }
    g.matrix().submatrix(&rows, &rows)
}
