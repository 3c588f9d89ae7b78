//! Construction A: an additive [n, k/h, ≥ d_h(C)]_q^h code from a linear
//! [n,k,d]_q code and a partial semifield (a set of h matrices of size k×k
//! whose nonzero F_q-combinations are all nonsingular).

use crate::additive::AdditiveCode;
use crate::budget::Budget;
use crate::bounds::ghw_lower_bound;
use crate::enumerate::ProjectiveReps;
use crate::error::{Error, Result};
use crate::field::{Field, FieldRef, FieldSpec, TowerContext};
use crate::linalg::Matrix;
use crate::linear::LinearCode;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// An ordered set A_1..A_h of k×k matrices over F_q, every nonzero
/// F_q-combination of which is nonsingular. With h = k this encodes a
/// semifield multiplication.
#[derive(Clone, Debug)]
pub struct PartialSemifield {
    mats: Vec<Matrix>,
}

/// Serialized partial semifield `{q, k, h, matrices}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialSemifieldJson {
    pub q: FieldSpec,
    pub k: usize,
    pub h: usize,
    pub matrices: Vec<Vec<Vec<u32>>>,
}

/// Outcome of the nonsingularity sweep: either every projective combination
/// class is nonsingular, or a witness combination whose matrix is singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemifieldCheck {
    Valid,
    Singular { witness: Vec<u32> },
}

impl PartialSemifield {
    /// Validates and wraps the matrix set; the nonsingularity sweep runs one
    /// determinant per projective combination class.
    pub fn new(mats: Vec<Matrix>) -> Result<PartialSemifield> {
        match check_partial_semifield(&mats)? {
            SemifieldCheck::Valid => Ok(PartialSemifield { mats }),
            SemifieldCheck::Singular { witness } => Err(Error::InvalidParams(format!(
                "combination {witness:?} is singular"
            ))),
        }
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn h(&self) -> usize {
        self.mats.len()
    }

    pub fn k(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn field(&self) -> &FieldRef {
        self.mats[0].field()
    }

    pub fn to_json(&self) -> PartialSemifieldJson {
        PartialSemifieldJson {
            q: self.field().spec(),
            k: self.k(),
            h: self.h(),
            matrices: self.mats.iter().map(|m| m.row_vecs()).collect(),
        }
    }

    pub fn from_json(json: &PartialSemifieldJson) -> Result<PartialSemifield> {
        let field = Field::from_spec(&json.q)?;
        let mats = json
            .matrices
            .iter()
            .map(|rows| Matrix::from_rows(Arc::clone(&field), rows))
            .collect::<Result<Vec<_>>>()?;
        let s = PartialSemifield::new(mats)?;
        if s.k() != json.k || s.h() != json.h {
            return Err(Error::DimensionMismatch {
                expected: format!("k={}, h={}", json.k, json.h),
                got: format!("k={}, h={}", s.k(), s.h()),
            });
        }
        Ok(s)
    }
}

/// Checks the partial-semifield property, returning a singular witness
/// combination if one exists. Scalar classes coincide, so one combination
/// per projective class suffices.
pub fn check_partial_semifield(mats: &[Matrix]) -> Result<SemifieldCheck> {
    if mats.is_empty() {
        return Err(Error::InvalidParams("no matrices".into()));
    }
    let k = mats[0].rows();
    let field = Arc::clone(mats[0].field());
    for m in mats {
        if m.rows() != k || m.cols() != k {
            return Err(Error::DimensionMismatch {
                expected: format!("{k}x{k}"),
                got: format!("{}x{}", m.rows(), m.cols()),
            });
        }
        if **m.field() != *field {
            return Err(Error::FieldMismatch);
        }
    }
    let h = mats.len();
    if h > k {
        return Err(Error::InvalidParams(format!("h={h} exceeds k={k}")));
    }
    let reps = ProjectiveReps::new(h, field.size() as u64);
    let mut lambda = vec![0u32; h];
    for i in 0..reps.count() {
        reps.decode(i, &mut lambda);
        let mut sum = Matrix::zeros(Arc::clone(&field), k, k);
        for (j, m) in mats.iter().enumerate() {
            if lambda[j] == 0 {
                continue;
            }
            for r in 0..k {
                for c in 0..k {
                    let v = field.add(sum.get(r, c), field.mul(lambda[j], m.get(r, c)));
                    sum.set(r, c, v);
                }
            }
        }
        if !sum.is_nonsingular() {
            return Ok(SemifieldCheck::Singular {
                witness: lambda.clone(),
            });
        }
    }
    Ok(SemifieldCheck::Valid)
}

/// The standard partial semifield: A_j is the matrix of multiplication by
/// the j-th polynomial basis element of F_{q^k}, written in the polynomial
/// basis over F_q. Any nonzero combination is multiplication by a nonzero
/// field element, hence nonsingular; the constructor re-verifies anyway.
pub fn desarguesian_partial_semifield(
    field: &FieldRef,
    k: usize,
    h: usize,
) -> Result<PartialSemifield> {
    if h == 0 || h > k {
        return Err(Error::InvalidParams(format!(
            "need 1 <= h <= k, got h={h}, k={k}"
        )));
    }
    let big = Field::new(field.characteristic(), field.degree() * k as u32)?;
    let ext = crate::field::Extension::new(Arc::clone(field), big)?;
    let basis = ext.basis().to_vec();
    let top = Arc::clone(ext.top());
    let mut mats = Vec::with_capacity(h);
    for b in basis.iter().take(h) {
        // row i holds the coordinates of b * g^i, so v -> vA is
        // multiplication by b in coordinates
        let rows: Vec<Vec<u32>> = basis
            .iter()
            .map(|&gi| ext.coordinates(top.mul(*b, gi)))
            .collect();
        mats.push(Matrix::from_rows(Arc::clone(field), &rows)?);
    }
    PartialSemifield::new(mats)
}

/// Which guarantee backs `guaranteed_d` in a construction result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// d_h(C) computed exhaustively.
    ExactGhw,
    /// The Griesmer-style fallback sum of ceilings ⌈d/q^i⌉.
    GriesmerGhw,
}

/// The built code together with its provenance and distance guarantee.
#[derive(Clone, Debug)]
pub struct ConstructionAResult {
    pub code: AdditiveCode,
    pub source: LinearCode,
    pub semifield: PartialSemifield,
    pub guaranteed_d: usize,
    pub bound_kind: BoundKind,
    /// Brute-forced distance when the enumeration fits the budget.
    pub actual_d: Option<usize>,
}

/// Parameter report `{n, k, h, dim, d, q, lower_bound, bound_met}`; `d` and
/// `bound_met` are null when the distance enumeration was over budget.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionAReport {
    pub n: usize,
    pub k: usize,
    pub h: u32,
    pub dim: String,
    pub d: Option<usize>,
    pub q: u64,
    pub lower_bound: usize,
    pub bound_met: Option<bool>,
    pub bound_kind: BoundKind,
}

impl ConstructionAResult {
    pub fn report(&self) -> ConstructionAReport {
        ConstructionAReport {
            n: self.code.n(),
            k: self.code.k(),
            h: self.code.h(),
            dim: crate::additive::dim_display(self.code.k(), self.code.h()),
            d: self.actual_d,
            q: self.code.q(),
            lower_bound: self.guaranteed_d,
            bound_met: self.actual_d.map(|d| d >= self.guaranteed_d),
            bound_kind: self.bound_kind,
        }
    }
}

/// Builds the additive code whose i-th generator column is
/// Σ_j (A_j x_i) e_j, where x_i is the i-th column of G and e_1..e_h is the
/// fixed F_q-basis of F_{q^h}.
pub fn construct_a(
    code: &LinearCode,
    semifield: &PartialSemifield,
    ctx: &TowerContext,
    budget: Budget,
) -> Result<ConstructionAResult> {
    construct_a_inner(code, semifield, ctx, budget, None)
}

/// Construction A applied to the generator BG for a nonsingular B. The row
/// space (hence d_h) is unchanged but the column multiset, and with it the
/// additive code, may differ.
pub fn construct_a_with_basis_change(
    code: &LinearCode,
    semifield: &PartialSemifield,
    ctx: &TowerContext,
    basis_change: &Matrix,
    budget: Budget,
) -> Result<ConstructionAResult> {
    if basis_change.rows() != code.k() || basis_change.cols() != code.k() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{} basis change", code.k(), code.k()),
            got: format!("{}x{}", basis_change.rows(), basis_change.cols()),
        });
    }
    if !basis_change.is_nonsingular() {
        return Err(Error::SingularMatrix);
    }
    construct_a_inner(code, semifield, ctx, budget, Some(basis_change))
}

fn construct_a_inner(
    code: &LinearCode,
    semifield: &PartialSemifield,
    ctx: &TowerContext,
    budget: Budget,
    basis_change: Option<&Matrix>,
) -> Result<ConstructionAResult> {
    let k = code.k();
    let n = code.n();
    if semifield.k() != k {
        return Err(Error::DimensionMismatch {
            expected: format!("semifield of size k={k}"),
            got: format!("k={}", semifield.k()),
        });
    }
    if **semifield.field() != **code.field() || **ctx.f_q() != **code.field() {
        return Err(Error::FieldMismatch);
    }
    if ctx.h() as usize != semifield.h() {
        return Err(Error::DimensionMismatch {
            expected: format!("tower with h={}", semifield.h()),
            got: format!("h={}", ctx.h()),
        });
    }
    let gen_matrix = match basis_change {
        Some(b) => b.mul(code.generator())?,
        None => code.generator().clone(),
    };
    // zero columns have no projective-point interpretation
    for c in 0..n {
        if (0..k).all(|r| gen_matrix.get(r, c) == 0) {
            return Err(Error::ZeroColumn(c));
        }
    }
    let ext = Arc::clone(&ctx.ext_q_qh);
    let top = Arc::clone(ext.top());
    let e_basis = ctx.e_basis();
    let mut add_gen = Matrix::zeros(Arc::clone(&top), k, n);
    for i in 0..n {
        let x_i = gen_matrix.col(i);
        for (j, a_j) in semifield.matrices().iter().enumerate() {
            let ax = a_j.mul_vec(&x_i)?;
            for r in 0..k {
                if ax[r] == 0 {
                    continue;
                }
                let term = top.mul(ext.embed(ax[r]), e_basis[j]);
                add_gen.set(r, i, top.add(add_gen.get(r, i), term));
            }
        }
    }
    let additive = AdditiveCode::new(add_gen, ext)?;

    let h = semifield.h();
    let (guaranteed_d, bound_kind) = match code.ghw(h, budget) {
        Ok(dh) => (dh, BoundKind::ExactGhw),
        Err(Error::BudgetExceeded { .. }) => {
            let d = code.min_distance(budget)?;
            (
                ghw_lower_bound(h as u64, d as u64, code.q()) as usize,
                BoundKind::GriesmerGhw,
            )
        }
        Err(e) => return Err(e),
    };
    let actual_d = match additive.min_distance(budget) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(d) = actual_d {
        if d < guaranteed_d {
            return Err(Error::BoundViolated {
                claimed: guaranteed_d as u64,
                actual: d as u64,
            });
        }
    }
    Ok(ConstructionAResult {
        code: additive,
        source: code.clone(),
        semifield: semifield.clone(),
        guaranteed_d,
        bound_kind,
        actual_d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::VectorReps;
    use crate::linear::{hamming74, simplex73, weight};

    fn b() -> Budget {
        Budget::default()
    }

    fn f2() -> FieldRef {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn identity_alone_is_a_partial_semifield() {
        let id = Matrix::identity(f2(), 3);
        assert_eq!(
            check_partial_semifield(&[id]).unwrap(),
            SemifieldCheck::Valid
        );
    }

    #[test]
    fn multiplication_by_omega_matrix() {
        // q=2, k=2, h=2: multiplication by the basis 1, w of F_4
        let s = desarguesian_partial_semifield(&f2(), 2, 2).unwrap();
        assert_eq!(s.matrices()[0], Matrix::identity(f2(), 2));
        let m_omega =
            Matrix::from_rows(f2(), &[vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(s.matrices()[1], m_omega);
        // the three projective combinations I, M, I+M are all nonsingular
        assert_eq!(
            check_partial_semifield(s.matrices()).unwrap(),
            SemifieldCheck::Valid
        );
    }

    #[test]
    fn duplicate_identity_fails_with_witness() {
        let id = Matrix::identity(f2(), 2);
        let out = check_partial_semifield(&[id.clone(), id]).unwrap();
        assert_eq!(
            out,
            SemifieldCheck::Singular {
                witness: vec![1, 1]
            }
        );
    }

    #[test]
    fn desarguesian_families_verify() {
        for (p, k, h) in [(2u32, 4usize, 2usize), (2, 3, 2), (3, 2, 1), (3, 2, 2), (2, 4, 4)] {
            let f = Field::new(p, 1).unwrap();
            let s = desarguesian_partial_semifield(&f, k, h).unwrap();
            assert_eq!(s.h(), h);
            assert_eq!(s.k(), k);
        }
    }

    #[test]
    fn construct_a_on_hamming74() {
        let code = hamming74();
        let s = desarguesian_partial_semifield(&f2(), 4, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let r = construct_a(&code, &s, &ctx, b()).unwrap();
        assert_eq!(r.code.n(), 7);
        assert_eq!(r.code.k(), 4);
        assert_eq!(r.guaranteed_d, 5); // d_2 of the Hamming code
        assert_eq!(r.bound_kind, BoundKind::ExactGhw);
        assert!(r.actual_d.unwrap() >= 5);
    }

    #[test]
    fn construct_a_on_simplex73() {
        let code = simplex73();
        let s = desarguesian_partial_semifield(&f2(), 3, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let r = construct_a(&code, &s, &ctx, b()).unwrap();
        assert_eq!(r.guaranteed_d, 6);
        assert!(r.actual_d.unwrap() >= 6);
    }

    #[test]
    fn construct_a_on_identity_code() {
        // d_h of the [k,k] identity code is h
        let code = LinearCode::new(Matrix::identity(f2(), 4)).unwrap();
        let s = desarguesian_partial_semifield(&f2(), 4, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let r = construct_a(&code, &s, &ctx, b()).unwrap();
        assert_eq!(r.guaranteed_d, 2);
        assert!(r.actual_d.unwrap() >= 2);
    }

    #[test]
    fn weight_identity_and_rank_h() {
        // for every nonzero v: weight(vG_add) = n - |V^perp ∩ X| where
        // V = <vA_1, ..., vA_h>, and rank V = h
        let code = hamming74();
        let s = desarguesian_partial_semifield(&f2(), 4, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let r = construct_a(&code, &s, &ctx, b()).unwrap();
        let f = f2();
        let points = code.columns_as_points().unwrap();
        let reps = VectorReps::new(4, 2);
        let mut v = vec![0u32; 4];
        for i in 1..reps.count() {
            reps.decode(i, &mut v);
            let spans: Vec<Vec<u32>> = s
                .matrices()
                .iter()
                .map(|a| {
                    // v A_j as a row vector
                    let mut row = vec![0u32; 4];
                    for c in 0..4 {
                        let mut acc = 0;
                        for rr in 0..4 {
                            acc = f.add(acc, f.mul(v[rr], a.get(rr, c)));
                        }
                        row[c] = acc;
                    }
                    row
                })
                .collect();
            let vmat = Matrix::from_rows(f2(), &spans).unwrap();
            assert_eq!(vmat.rank(), 2);
            let contained = points
                .points
                .iter()
                .filter(|x| {
                    spans.iter().all(|row| {
                        let mut acc = 0;
                        for (a, b) in row.iter().zip(x.iter()) {
                            acc = f.add(acc, f.mul(*a, *b));
                        }
                        acc == 0
                    })
                })
                .count();
            let w = weight(&r.code.codeword(&v).unwrap());
            assert_eq!(w, code.n() - contained);
        }
    }

    #[test]
    fn coordinate_zero_criterion() {
        // coordinate i of vG_add is zero iff vA_j x_i = 0 for all j
        let code = simplex73();
        let s = desarguesian_partial_semifield(&f2(), 3, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let r = construct_a(&code, &s, &ctx, b()).unwrap();
        let f = f2();
        let reps = VectorReps::new(3, 2);
        let mut v = vec![0u32; 3];
        for i in 1..reps.count() {
            reps.decode(i, &mut v);
            let word = r.code.codeword(&v).unwrap();
            for col in 0..code.n() {
                let x_i = code.generator().col(col);
                let all_zero = s.matrices().iter().all(|a| {
                    let av = a.mul_vec(&x_i).unwrap();
                    let mut acc = 0;
                    for (vv, aa) in v.iter().zip(av.iter()) {
                        acc = f.add(acc, f.mul(*vv, *aa));
                    }
                    acc == 0
                });
                assert_eq!(word[col] == 0, all_zero);
            }
        }
    }

    #[test]
    fn basis_change_identity_is_noop() {
        let code = hamming74();
        let s = desarguesian_partial_semifield(&f2(), 4, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        let base = construct_a(&code, &s, &ctx, b()).unwrap();
        let id = Matrix::identity(f2(), 4);
        let changed = construct_a_with_basis_change(&code, &s, &ctx, &id, b()).unwrap();
        assert_eq!(changed.code.generator(), base.code.generator());
    }

    #[test]
    fn basis_change_keeps_the_bound() {
        let code = hamming74();
        let s = desarguesian_partial_semifield(&f2(), 4, 2).unwrap();
        let ctx = TowerContext::new(2, 1, 1, 1, 2).unwrap();
        // a nonsingular 4x4 over F_2
        let bmat = Matrix::from_rows(
            f2(),
            &[
                vec![1, 1, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 1, 1, 0],
                vec![1, 0, 1, 1],
            ],
        )
        .unwrap();
        let r = construct_a_with_basis_change(&code, &s, &ctx, &bmat, b()).unwrap();
        assert_eq!(r.guaranteed_d, 5);
        assert!(r.actual_d.unwrap() >= 5);
        // singular B rejected
        let singular =
            Matrix::from_rows(f2(), &[vec![1; 4], vec![1; 4], vec![0, 1, 0, 0], vec![0, 0, 1, 0]])
                .unwrap();
        assert_eq!(
            construct_a_with_basis_change(&code, &s, &ctx, &singular, b()).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn semifield_json_roundtrip() {
        let s = desarguesian_partial_semifield(&f2(), 3, 2).unwrap();
        let js = serde_json::to_string(&s.to_json()).unwrap();
        let back = PartialSemifield::from_json(&serde_json::from_str(&js).unwrap()).unwrap();
        assert_eq!(back.matrices(), s.matrices());
    }
}
