//! Linear codes over GF(p) and the Singleton-array construction of MDS
//! `A` blocks.

use serde::{Deserialize, Serialize};

use crate::error::{guard_pow, Error, Result};
use crate::field::{Fp, PrimeField};
use crate::matrix::MatrixGF;

/// Largest number of codewords the enumerating operations will visit.
pub const CODEWORD_LIMIT: u128 = 1 << 24;

/// A linear `[n, k]_p` code given by a full-rank `k x n` generator matrix.
///
/// Codes built with [`LinearCode::from_a`] are in standard form `[I_k | A]`;
/// duals are stored with the generator `[-A^T | I]` and report
/// [`Error::NotStandardForm`] from [`a_matrix`](Self::a_matrix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: MatrixGF,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Codeword(pub Vec<u32>);

impl Codeword {
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }
}

/// Wire form `{"p", "n", "k", "A": [[int]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub p: u64,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<i64>>,
}

impl LinearCode {
    /// Standard-form code with generator `[I_k | A]`.
    pub fn from_a(a: MatrixGF) -> Result<Self> {
        if a.rows() == 0 {
            return Err(Error::Precondition("code dimension k must be at least 1".into()));
        }
        let id = MatrixGF::identity(a.field(), a.rows());
        Ok(Self { generator: id.hstack(&a)? })
    }

    pub fn from_generator(generator: MatrixGF) -> Result<Self> {
        if generator.rows() == 0 || generator.rows() > generator.cols() {
            return Err(Error::Precondition("generator must be k x n with 1 <= k <= n".into()));
        }
        if generator.rank() != generator.rows() {
            return Err(Error::Precondition("generator rows are linearly dependent".into()));
        }
        Ok(Self { generator })
    }

    pub fn field(&self) -> PrimeField {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.generator
    }

    pub fn is_standard_form(&self) -> bool {
        let k = self.k();
        (0..k).all(|i| (0..k).all(|j| self.generator.raw(i, j) == u32::from(i == j)))
    }

    /// The `k x (n-k)` block `A` of a standard-form generator.
    pub fn a_matrix(&self) -> Result<MatrixGF> {
        if !self.is_standard_form() {
            return Err(Error::NotStandardForm);
        }
        let (k, n) = (self.k(), self.n());
        let data = (0..k).flat_map(|i| self.generator.row(i)[k..].to_vec()).collect();
        Ok(MatrixGF::from_raw(self.field(), k, n - k, data))
    }

    pub fn encode(&self, message: &[u32]) -> Result<Codeword> {
        if message.len() != self.k() {
            return Err(Error::Dimension(format!(
                "message has {} symbols, code dimension is {}",
                message.len(),
                self.k()
            )));
        }
        let p = self.field().p();
        if let Some(&bad) = message.iter().find(|&&x| x >= p) {
            return Err(Error::Parse(format!("symbol {bad} not in GF({p})")));
        }
        Ok(Codeword(self.generator.left_mul_vec(message)))
    }

    /// Every codeword, ordered by message vector read as a base-p number
    /// with the first symbol most significant.
    pub fn enumerate_codewords(&self) -> Result<Vec<Codeword>> {
        let count = guard_pow("codeword enumeration", self.field().p(), self.k(), CODEWORD_LIMIT)?;
        let mut out = Vec::with_capacity(count as usize);
        for_each_message(self.field().p(), self.k(), |x| {
            out.push(Codeword(self.generator.left_mul_vec(x)));
        });
        Ok(out)
    }

    /// Minimum Hamming weight over nonzero codewords.
    pub fn min_distance(&self) -> Result<usize> {
        guard_pow("minimum distance", self.field().p(), self.k(), CODEWORD_LIMIT)?;
        let mut best = self.n();
        for_each_message(self.field().p(), self.k(), |x| {
            if x.iter().any(|&s| s != 0) {
                let w = self.generator.left_mul_vec(x).iter().filter(|&&s| s != 0).count();
                best = best.min(w);
            }
        });
        Ok(best)
    }

    /// Dual code, generated by the parity-check matrix `H = [-A^T | I]`.
    ///
    /// A dual of dimension zero (when `k = n`) cannot be represented and is
    /// reported as a precondition error.
    pub fn dual_code(&self) -> Result<LinearCode> {
        let a = self.a_matrix()?;
        let r = self.n() - self.k();
        if r == 0 {
            return Err(Error::Precondition("the dual of an [n, n] code is the zero code".into()));
        }
        let h = a.transpose().neg().hstack(&MatrixGF::identity(self.field(), r))?;
        Ok(LinearCode { generator: h })
    }

    /// Whether both generators span the same subspace.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.field() == other.field()
            && self.n() == other.n()
            && self.k() == other.k()
            && self
                .generator
                .vstack(&other.generator)
                .map(|s| s.rank() == self.k())
                .unwrap_or(false)
    }

    pub fn is_mds(&self) -> Result<bool> {
        Ok(self.min_distance()? == self.n() - self.k() + 1)
    }

    pub fn to_json(&self) -> Result<CodeJson> {
        let a = self.a_matrix()?;
        Ok(CodeJson {
            p: self.field().p() as u64,
            n: self.n(),
            k: self.k(),
            a: a.to_json().entries,
        })
    }

    pub fn from_json(json: &CodeJson) -> Result<Self> {
        let field = PrimeField::new(json.p)?;
        if json.k == 0 || json.k > json.n {
            return Err(Error::Precondition(format!("invalid code parameters n={}, k={}", json.n, json.k)));
        }
        let a = MatrixGF::from_shape(field, json.k, json.n - json.k, &json.a)?;
        Self::from_a(a)
    }
}

/// Calls `f` on every vector in `GF(p)^len` in lexicographic order.
pub(crate) fn for_each_message(p: u32, len: usize, mut f: impl FnMut(&[u32])) {
    let mut x = vec![0u32; len];
    loop {
        f(&x);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            x[pos] += 1;
            if x[pos] < p {
                break;
            }
            x[pos] = 0;
        }
    }
}

/// The triangular Singleton array of a prime field.
///
/// Row 0 has `p` entries, row `i >= 1` has `p - i`; the first row and
/// column are all ones and the interior entry `(i, j)` is
/// `a_{i+j-1} = 1 / (1 - gamma^(i+j-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingletonArray {
    #[serde(skip)]
    field: PrimeField,
    gamma: u32,
    rows: Vec<Vec<u32>>,
}

impl SingletonArray {
    pub fn new(field: PrimeField, gamma: Fp) -> Result<Self> {
        if gamma.field() != field {
            return Err(Error::FieldMismatch(field.p(), gamma.field().p()));
        }
        if !field.is_primitive(gamma) {
            return Err(Error::NotPrimitive(gamma.value(), field.p()));
        }
        let q = field.p() as usize;
        // a[i] for i in 1..=q-2; 1 - gamma^i is nonzero below the order q-1
        let a: Vec<u32> = (0..q.saturating_sub(1))
            .map(|i| {
                if i == 0 {
                    return 0;
                }
                let d = field.one() - gamma.pow(i as u64);
                d.inv().expect("gamma^i != 1 below its order").value()
            })
            .collect();
        let rows = (0..q)
            .map(|i| {
                let len = if i == 0 { q } else { q - i };
                (0..len)
                    .map(|j| if i == 0 || j == 0 { 1 } else { a[i + j - 1] })
                    .collect()
            })
            .collect();
        Ok(Self { field, gamma: gamma.value(), rows })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn gamma(&self) -> Fp {
        self.field.elem(self.gamma as i64)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// `a_i` for `1 <= i <= p - 2`.
    pub fn a(&self, i: usize) -> Option<u32> {
        if i == 0 {
            return None;
        }
        self.rows.get(1).and_then(|r| r.get(i)).copied()
    }

    /// Whether a `rows x cols` rectangle anchored at `(r0, c0)` lies inside
    /// the triangle.
    pub fn fits(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> bool {
        if rows == 0 {
            return false;
        }
        let last = r0 + rows - 1;
        last < self.rows.len() && c0 + cols <= self.rows[last].len()
    }

    pub fn rectangle(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Result<MatrixGF> {
        if !self.fits(r0, c0, rows, cols) {
            return Err(Error::DoesNotFit { p: self.field.p(), rows, cols });
        }
        let data = (r0..r0 + rows).flat_map(|i| self.rows[i][c0..c0 + cols].to_vec()).collect();
        Ok(MatrixGF::from_raw(self.field, rows, cols, data))
    }

    /// Every rectangle that fits, anchored anywhere.
    pub fn all_rectangles(&self) -> Vec<MatrixGF> {
        let q = self.rows.len();
        let mut out = Vec::new();
        for r0 in 0..q {
            for c0 in 0..self.rows[r0].len() {
                for rows in 1..=q - r0 {
                    for cols in 1..=self.rows[r0].len() - c0 {
                        if self.fits(r0, c0, rows, cols) {
                            out.push(self.rectangle(r0, c0, rows, cols).expect("fits"));
                        }
                    }
                }
            }
        }
        out
    }
}

pub fn singleton_array(field: PrimeField, gamma: Fp) -> Result<SingletonArray> {
    SingletonArray::new(field, gamma)
}

/// Length bound of the MDS conjecture: `q + 2` for `k = 3` or `k = q - 1`
/// with `q` even, `q + 1` otherwise.
pub fn mds_conjecture_length(q: u32, k: usize) -> usize {
    let q = q as usize;
    if q.is_multiple_of(2) && (k == 3 || k + 1 == q) {
        q + 2
    } else {
        q + 1
    }
}

/// Top-left `k x m` block of the Singleton array built from `gamma`,
/// checked to have every square submatrix nonsingular.
pub fn mds_a_matrix_with_gamma(field: PrimeField, gamma: Fp, k: usize, m: usize) -> Result<MatrixGF> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let n = k + m;
    if n > mds_conjecture_length(field.p(), k) {
        log::warn!(
            "[{n},{k}] over {field} is outside the MDS-conjecture length range; attempting anyway"
        );
    }
    if m == 0 {
        return Ok(MatrixGF::zeros(field, k, 0));
    }
    let s = SingletonArray::new(field, gamma)?;
    let a = s.rectangle(0, 0, k, m)?;
    if let Some((r, c)) = a.first_singular_submatrix() {
        return Err(Error::Precondition(format!(
            "Singleton block has singular minor rows {r:?} cols {c:?}"
        )));
    }
    Ok(a)
}

/// MDS `A` block of shape `k x m`.
///
/// Among all primitive elements, the one whose block is lexicographically
/// smallest (row-major) is used, so the output does not depend on which
/// primitive element a search happens to hit first.
pub fn mds_a_matrix(field: PrimeField, k: usize, m: usize) -> Result<MatrixGF> {
    let mut best: Option<MatrixGF> = None;
    let mut last_err = None;
    for g in field.elements().skip(1).filter(|&g| field.is_primitive(g)) {
        match mds_a_matrix_with_gamma(field, g, k, m) {
            Ok(a) => {
                if best.as_ref().is_none_or(|b| a.to_rows() < b.to_rows()) {
                    best = Some(a);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.expect("at least one primitive element"))
}

/// Standard-form MDS code `[k + m, k]` from [`mds_a_matrix`].
pub fn mds_code(field: PrimeField, n: usize, k: usize) -> Result<LinearCode> {
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("invalid code parameters n={n}, k={k}")));
    }
    LinearCode::from_a(mds_a_matrix(field, k, n - k)?)
}
