//! Linear [n,k,d]_q codes given by full-rank generator matrices: exhaustive
//! minimum distance, subcode supports, generalised Hamming weights, and the
//! projective-point view of generator columns.

use crate::budget::Budget;
use crate::enumerate::{self, gaussian_binomial, ProjectiveReps};
use crate::error::{Error, Result};
use crate::field::{Field, FieldRef, FieldSpec};
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};

/// Number of nonzero coordinates.
pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// Union of the nonzero coordinate positions over a set of words.
pub fn support(words: &[Vec<u32>]) -> Vec<usize> {
    let n = words.first().map_or(0, |w| w.len());
    (0..n)
        .filter(|&i| words.iter().any(|w| w[i] != 0))
        .collect()
}

/// A linear code presented by a full-rank k×n generator matrix over F_q.
#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: Matrix,
}

/// Serialized generator matrix: `{q: {p,m,modulus}, k, n, rows}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearCodeJson {
    pub q: FieldSpec,
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
}

/// Columns of a generator matrix as points of PG(k-1, q), each normalised so
/// its first nonzero coordinate is 1. Repeated points are kept (the column
/// multiset matters for hyperplane counts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePointSet {
    pub points: Vec<Vec<u32>>,
}

impl LinearCode {
    /// Wraps a generator matrix, requiring full row rank and n ≥ 1.
    pub fn new(gen: Matrix) -> Result<LinearCode> {
        if gen.rows() == 0 || gen.cols() == 0 {
            return Err(Error::InvalidParams("empty generator matrix".into()));
        }
        if gen.rank() != gen.rows() {
            return Err(Error::DependentRows);
        }
        Ok(LinearCode { gen })
    }

    pub fn from_rows(field: FieldRef, rows: &[Vec<u32>]) -> Result<LinearCode> {
        LinearCode::new(Matrix::from_rows(field, rows)?)
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn field(&self) -> &FieldRef {
        self.gen.field()
    }

    pub fn k(&self) -> usize {
        self.gen.rows()
    }

    pub fn n(&self) -> usize {
        self.gen.cols()
    }

    pub fn q(&self) -> u64 {
        self.field().size() as u64
    }

    /// The codeword v·G.
    pub fn codeword(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.gen.left_mul_vec(v)
    }

    /// Exhaustive minimum distance over one representative per 1-dimensional
    /// subspace (scalar multiples have equal weight, so this is exact).
    pub fn min_distance(&self, budget: Budget) -> Result<usize> {
        self.min_distance_jobs(budget, 1)
    }

    /// Same as [`LinearCode::min_distance`] with the scan split over
    /// `jobs` worker threads; the result is identical for every job count.
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
        Ok(min.expect("code has at least one nonzero word") as usize)
    }

    /// The j-th generalised Hamming weight: the smallest support size over
    /// j-dimensional subcodes, by exhaustive RREF subspace enumeration.
    pub fn ghw(&self, j: usize, budget: Budget) -> Result<usize> {
        let k = self.k();
        if j < 1 || j > k {
            return Err(Error::InvalidDimension { j, k });
        }
        let count = gaussian_binomial(k, j, self.q()).unwrap_or(u128::MAX);
        budget.check("subspace enumeration [k choose j]_q", count)?;
        let mut best = self.n();
        enumerate::for_each_rref_subspace(k, j, self.q(), |basis| {
            // support of the subcode is the union of the basis codewords'
            // supports
            let rows: Vec<Vec<u32>> = basis
                .iter()
                .map(|v| self.codeword(v).expect("dims fixed"))
                .collect();
            let mut size = 0;
            for c in 0..self.n() {
                if rows.iter().any(|r| r[c] != 0) {
                    size += 1;
                }
            }
            best = best.min(size);
            true
        });
        Ok(best)
    }

    /// d_1..d_k in one sweep.
    pub fn ghw_hierarchy(&self, budget: Budget) -> Result<Vec<usize>> {
        (1..=self.k()).map(|j| self.ghw(j, budget)).collect()
    }

    /// Generator columns as normalised projective points; zero columns are
    /// rejected.
    pub fn columns_as_points(&self) -> Result<ProjectivePointSet> {
        let f = self.field();
        let mut points = Vec::with_capacity(self.n());
        for c in 0..self.n() {
            let col = self.gen.col(c);
            points.push(normalize_point(f, &col).ok_or(Error::ZeroColumn(c))?);
        }
        Ok(ProjectivePointSet { points })
    }

    pub fn to_json(&self) -> LinearCodeJson {
        LinearCodeJson {
            q: self.field().spec(),
            k: self.k(),
            n: self.n(),
            rows: self.gen.row_vecs(),
        }
    }

    pub fn from_json(json: &LinearCodeJson) -> Result<LinearCode> {
        let field = Field::from_spec(&json.q)?;
        let code = LinearCode::from_rows(field, &json.rows)?;
        if code.k() != json.k || code.n() != json.n {
            return Err(Error::DimensionMismatch {
                expected: format!("{}x{}", json.k, json.n),
                got: format!("{}x{}", code.k(), code.n()),
            });
        }
        Ok(code)
    }

    /// Weight distribution over all q^k codewords: `dist[w]` counts words of
    /// weight w (the zero word included at w = 0).
    pub fn weight_distribution(&self, budget: Budget) -> Result<Vec<u64>> {
        let words = (self.q() as u128).checked_pow(self.k() as u32);
        budget.check("codeword enumeration q^k", words.unwrap_or(u128::MAX))?;
        let mut dist = vec![0u64; self.n() + 1];
        dist[0] = 1;
        let reps = ProjectiveReps::new(self.k(), self.q());
        let mut v = vec![0u32; self.k()];
        for i in 0..reps.count() {
            reps.decode(i, &mut v);
            let w = weight(&self.codeword(&v)?);
            dist[w] += self.q() - 1;
        }
        Ok(dist)
    }
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize_point(field: &FieldRef, v: &[u32]) -> Option<Vec<u32>> {
    let first = v.iter().position(|&x| x != 0)?;
    let inv = field.inv(v[first]).expect("nonzero");
    Some(v.iter().map(|&x| field.mul(inv, x)).collect())
}

/// The [7,4,3] binary Hamming code.
pub fn hamming74() -> LinearCode {
    let f2 = Field::new(2, 1).expect("F_2");
    LinearCode::from_rows(
        f2,
        &[
            vec![1, 0, 0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1, 0, 1],
            vec![0, 0, 1, 0, 0, 1, 1],
            vec![0, 0, 0, 1, 1, 1, 1],
        ],
    )
    .expect("full rank")
}

/// The [7,3,4] binary simplex code (columns are the 7 nonzero vectors of
/// F_2^3, low bit in the first row).
pub fn simplex73() -> LinearCode {
    let f2 = Field::new(2, 1).expect("F_2");
    let mut rows = vec![vec![0u32; 7]; 3];
    for col in 0..7u32 {
        let v = col + 1;
        for (bit, row) in rows.iter_mut().enumerate() {
            row[col as usize] = (v >> bit) & 1;
        }
    }
    LinearCode::from_rows(f2, &rows).expect("full rank")
}

/// The [4,2,3] tetracode over F_3.
pub fn tetracode() -> LinearCode {
    let f3 = Field::new(3, 1).expect("F_3");
    LinearCode::from_rows(f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).expect("full rank")
}

/// Looks up a built-in code by name.
pub fn named_code(name: &str) -> Option<LinearCode> {
    match name {
        "hamming74" => Some(hamming74()),
        "simplex73" => Some(simplex73()),
        "tetracode" => Some(tetracode()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn weight_basics() {
        assert_eq!(weight(&[0; 7]), 0);
        assert_eq!(weight(&[1; 7]), 7);
        // (1, 0, w, 0, 1) over F_4
        assert_eq!(weight(&[1, 0, 2, 0, 1]), 3);
    }

    #[test]
    fn support_basics() {
        assert_eq!(support(&[vec![0, 0, 0]]), Vec::<usize>::new());
        assert_eq!(support(&[vec![1, 0, 0], vec![0, 1, 0]]), vec![0, 1]);
    }

    #[test]
    fn hamming74_min_distance() {
        assert_eq!(hamming74().min_distance(b()).unwrap(), 3);
    }

    #[test]
    fn simplex73_all_weights_equal_4() {
        let c = simplex73();
        assert_eq!(c.min_distance(b()).unwrap(), 4);
        let dist = c.weight_distribution(b()).unwrap();
        assert_eq!(dist[4], 7);
        assert_eq!(dist.iter().sum::<u64>(), 8);
    }

    #[test]
    fn identity_code_min_distance_is_1() {
        let f3 = Field::new(3, 1).unwrap();
        let c = LinearCode::new(Matrix::identity(f3, 4)).unwrap();
        assert_eq!(c.min_distance(b()).unwrap(), 1);
    }

    #[test]
    fn hamming74_ghw_hierarchy() {
        assert_eq!(hamming74().ghw_hierarchy(b()).unwrap(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn simplex73_ghw_hierarchy() {
        assert_eq!(simplex73().ghw_hierarchy(b()).unwrap(), vec![4, 6, 7]);
    }

    #[test]
    fn ghw_d1_equals_min_distance() {
        for c in [hamming74(), simplex73(), tetracode()] {
            assert_eq!(c.ghw(1, b()).unwrap(), c.min_distance(b()).unwrap());
        }
    }

    #[test]
    fn full_support_code_has_dk_equal_n() {
        let c = hamming74();
        assert_eq!(c.ghw(4, b()).unwrap(), 7);
    }

    #[test]
    fn ghw_via_hyperplane_counts_agrees() {
        // independent oracle: d_j = n - max |V^perp ∩ X| over j-dim V
        let c = hamming74();
        let points = c.columns_as_points().unwrap();
        let f = Arc::clone(c.field());
        for j in 1..=c.k() {
            let mut max_contained = 0usize;
            enumerate::for_each_rref_subspace(c.k(), j, c.q(), |basis| {
                let contained = points
                    .points
                    .iter()
                    .filter(|x| {
                        basis.iter().all(|v| {
                            let mut acc = 0u32;
                            for (a, b) in v.iter().zip(x.iter()) {
                                acc = f.add(acc, f.mul(*a, *b));
                            }
                            acc == 0
                        })
                    })
                    .count();
                max_contained = max_contained.max(contained);
                true
            });
            assert_eq!(c.ghw(j, b()).unwrap(), c.n() - max_contained);
        }
    }

    #[test]
    fn hyperplane_identity_for_codewords() {
        // weight(vG) = n - |v^perp ∩ X| for every nonzero v
        for c in [hamming74(), simplex73(), tetracode()] {
            let f = Arc::clone(c.field());
            let points = c.columns_as_points().unwrap();
            let reps = ProjectiveReps::new(c.k(), c.q());
            let mut v = vec![0u32; c.k()];
            for i in 0..reps.count() {
                reps.decode(i, &mut v);
                let w = weight(&c.codeword(&v).unwrap());
                let contained = points
                    .points
                    .iter()
                    .filter(|x| {
                        let mut acc = 0u32;
                        for (a, b) in v.iter().zip(x.iter()) {
                            acc = f.add(acc, f.mul(*a, *b));
                        }
                        acc == 0
                    })
                    .count();
                assert_eq!(w, c.n() - contained);
            }
        }
    }

    #[test]
    fn columns_as_points_normalised() {
        let f3 = Field::new(3, 1).unwrap();
        let c = LinearCode::from_rows(
            Arc::clone(&f3),
            &[vec![0, 1, 0], vec![2, 0, 0], vec![1, 1, 1]],
        )
        .unwrap();
        let pts = c.columns_as_points().unwrap();
        // column (0,2,1) normalises to (0,1,2) by scaling with 2
        assert_eq!(pts.points[0], vec![0, 1, 2]);
        assert_eq!(pts.points[1], vec![1, 0, 1]);
        assert_eq!(pts.points[2], vec![0, 0, 1]);
    }

    #[test]
    fn hamming74_points_distinct() {
        let pts = hamming74().columns_as_points().unwrap().points;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert_ne!(pts[i], pts[j]);
            }
        }
    }

    #[test]
    fn zero_column_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let c = LinearCode::from_rows(f2, &[vec![1, 0], vec![0, 0]]);
        // full-rank constructor already rejects this shape; use a rank-2
        // matrix with an inner zero column instead
        assert!(c.is_err());
        let f2 = Field::new(2, 1).unwrap();
        let c = LinearCode::from_rows(f2, &[vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        assert_eq!(c.columns_as_points().unwrap_err(), Error::ZeroColumn(1));
    }

    #[test]
    fn dependent_rows_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let r = LinearCode::from_rows(f2, &[vec![1, 1, 0], vec![1, 1, 0]]);
        assert_eq!(r.unwrap_err(), Error::DependentRows);
    }

    #[test]
    fn budget_exceeded_is_reported() {
        let c = hamming74();
        let tiny = Budget::new(4);
        assert!(matches!(
            c.min_distance(tiny),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(c.ghw(2, tiny), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn min_distance_parallel_matches_serial() {
        let c = hamming74();
        let serial = c.min_distance_jobs(b(), 1).unwrap();
        for jobs in [2, 3, 5] {
            assert_eq!(c.min_distance_jobs(b(), jobs).unwrap(), serial);
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = hamming74();
        let js = serde_json::to_string(&c.to_json()).unwrap();
        let back = LinearCode::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back.generator(), c.generator());
    }
}
