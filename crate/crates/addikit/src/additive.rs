//! Additive codes over F_{q^h} that are linear over F_q: the code is the
//! F_q-row-span of a k×n matrix over F_{q^h}, so it has q^k codewords and
//! F_{q^h}-dimension k/h, which need not be integral.

use crate::budget::Budget;
use crate::enumerate::{self, ProjectiveReps};
use crate::error::{Error, Result};
use crate::field::{Extension, Field, FieldSpec};
use crate::linalg::Matrix;
use crate::linear::weight;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// An additive code: k×n generator over F_{q^h} whose rows are independent
/// over the embedded F_q, so v ↦ vG is injective on F_q^k.
#[derive(Clone)]
pub struct AdditiveCode {
    gen: Matrix,
    ext: Arc<Extension>,
}

/// Serialized additive generator: `{q: {p,m,modulus}, h, k, n, rows}` with
/// entries as representatives in F_{q^h}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AdditiveCodeJson {
    pub q: FieldSpec,
    pub h: u32,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

/// The parameter record [n, k/h, d]_q^h.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveParams {
    pub n: usize,
    pub k: usize,
    pub h: u32,
    /// k/h as a reduced fraction, e.g. "5" or "7/2".
    pub dim: String,
    pub d: usize,
    pub q: u64,
}

/// Renders k/h as a reduced fraction.
pub fn dim_display(k: usize, h: u32) -> String {
    let g = {
        let (mut a, mut b) = (k as u64, h as u64);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let (num, den) = (k as u64 / g, h as u64 / g);
    if den == 1 {
        format!("{num}")
    } else {
        format!("{num}/{den}")
    }
}

impl std::fmt::Debug for AdditiveCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "AdditiveCode(n={}, k={}, h={}, q={})",
            self.n(),
            self.k(),
            self.h(),
            self.q()
        )
    }
}

impl AdditiveCode {
    /// Wraps a generator over F_{q^h}; rejects row sets that are dependent
    /// over F_q rather than silently reducing k.
    pub fn new(gen: Matrix, ext: Arc<Extension>) -> Result<AdditiveCode> {
        if **gen.field() != **ext.top() {
            return Err(Error::FieldMismatch);
        }
        if gen.rows() == 0 || gen.cols() == 0 {
            return Err(Error::InvalidParams("empty generator matrix".into()));
        }
        let code = AdditiveCode { gen, ext };
        if code.fq_expansion().rank() != code.k() {
            return Err(Error::DependentRows);
        }
        Ok(code)
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// The F_q ⊂ F_{q^h} extension the code is defined over.
    pub fn extension(&self) -> &Arc<Extension> {
        &self.ext
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn h(&self) -> u32 {
        self.ext.degree() as u32
    }

    pub fn q(&self) -> u64 {
        self.ext.base().size() as u64
    }

    /// The k×(n·h) matrix over F_q obtained by expanding every entry into
    /// its h coordinates; used for rank and injectivity checks.
    pub fn fq_expansion(&self) -> Matrix {
        let h = self.ext.degree();
        let mut rows = Vec::with_capacity(self.k());
        for r in 0..self.k() {
            let mut row = Vec::with_capacity(self.n() * h);
            for c in 0..self.n() {
                row.extend(self.ext.coordinates(self.gen.get(r, c)));
            }
            rows.push(row);
        }
        Matrix::from_rows(Arc::clone(self.ext.base()), &rows).expect("rectangular")
    }

    /// The codeword for v ∈ F_q^k: the F_q-combination of the rows with
    /// scalars embedded into F_{q^h}.
    pub fn codeword(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", self.k()),
                got: format!("{}", v.len()),
            });
        }
        let top = self.ext.top();
        let mut out = vec![0u32; self.n()];
        for (r, &vr) in v.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            let scalar = self.ext.embed(vr);
            for c in 0..self.n() {
                out[c] = top.add(out[c], top.mul(scalar, self.gen.get(r, c)));
            }
        }
        Ok(out)
    }

    /// Exhaustive minimum distance. Only F_q-scalar classes can be
    /// deduplicated (the code need not be F_{q^h}-linear), so the scan runs
    /// over the (q^k - 1)/(q - 1) projective representatives of F_q^k.
    pub fn min_distance(&self, budget: Budget) -> Result<usize> {
        self.min_distance_jobs(budget, 1)
    }

    pub fn min_distance_jobs(&self, budget: Budget, jobs: usize) -> Result<usize> {
        let words = (self.q() as u128).checked_pow(self.k() as u32);
        budget.check("codeword enumeration q^k", words.unwrap_or(u128::MAX))?;
        let reps = ProjectiveReps::new(self.k(), self.q());
        let min = enumerate::chunked_min(reps.count(), jobs, |range| {
            let mut v = vec![0u32; self.k()];
            let mut best: Option<u64> = None;
            for i in range {
                reps.decode(i, &mut v);
                let w = weight(&self.codeword(&v).expect("dims fixed")) as u64;
                best = Some(best.map_or(w, |b| b.min(w)));
            }
            best
        });
        Ok(min.expect("nonempty code") as usize)
    }

    pub fn params(&self, budget: Budget) -> Result<AdditiveParams> {
        Ok(AdditiveParams {
            n: self.n(),
            k: self.k(),
            h: self.h(),
            dim: dim_display(self.k(), self.h()),
            d: self.min_distance(budget)?,
            q: self.q(),
        })
    }

    pub fn to_json(&self) -> AdditiveCodeJson {
        AdditiveCodeJson {
            q: self.ext.base().spec(),
            h: self.h(),
            k: self.k(),
            n: self.n(),
            rows: self.gen.row_vecs(),
        }
    }

    pub fn from_json(json: &AdditiveCodeJson) -> Result<AdditiveCode> {
        let base = Field::from_spec(&json.q)?;
        let top = Field::new(base.characteristic(), base.degree() * json.h)?;
        let ext = Arc::new(Extension::new(base, top)?);
        let gen = Matrix::from_rows(Arc::clone(ext.top()), &json.rows)?;
        let code = AdditiveCode::new(gen, ext)?;
        if code.k() != json.k || code.n() != json.n {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", json.k, json.n),
                got: format!("{}x{}", code.k(), code.n()),
            });
        }
        Ok(code)
    }
}
