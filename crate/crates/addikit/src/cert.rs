//! Non-linearity certification. An additive [n, k/h, d]_q^h code is
//! equivalent to a linear code over F_{q^h} exactly when its subspace family
//! sits inside a Desarguesian spread, and members of such a spread only ever
//! span ranks divisible by h. A small union of members with rank not a
//! multiple of h is therefore a certificate of non-linearity; absence of one
//! is merely inconclusive.

use crate::budget::Budget;
use crate::enumerate::for_each_subset;
use crate::error::{Error, Result};
use crate::field::{Extension, FieldRef};
use crate::linalg::Matrix;
use crate::linear::LinearCode;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A list of F_q-subspaces of F_q^ambient, each given by generator rows.
#[derive(Debug, Clone)]
pub struct SubspaceFamily {
    field: FieldRef,
    ambient: usize,
    members: Vec<Vec<Vec<u32>>>,
}

impl SubspaceFamily {
    pub fn new(
        field: FieldRef,
        ambient: usize,
        members: Vec<Vec<Vec<u32>>>,
    ) -> Result<SubspaceFamily> {
        for m in &members {
            for g in m {
                if g.len() != ambient {
                    return Err(Error::DimensionMismatch {
                        expected: format!("generators of length {ambient}"),
                        got: format!("{}", g.len()),
                    });
                }
            }
        }
        Ok(SubspaceFamily {
            field,
            ambient,
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn member(&self, i: usize) -> &[Vec<u32>] {
        &self.members[i]
    }
}

/// True when s(t+1) ≡ −1 (mod h), the divisibility condition a linear
/// [q^{st}−1, (st+s+1)/h] code must satisfy; a false return alone certifies
/// non-linearity, because the F_{q^h}-dimension would be fractional.
pub fn divisibility_precheck(s: u64, t: u64, h: u64) -> bool {
    (s * (t + 1)) % h == (h - 1) % h
}

/// F_q-rank of the union of the chosen members' generators.
pub fn union_rank(family: &SubspaceFamily, indices: &[usize]) -> Result<usize> {
    let mut rows = Vec::new();
    for &i in indices {
        if i >= family.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: family.len(),
            });
        }
        rows.extend(family.member(i).iter().cloned());
    }
    Ok(Matrix::from_rows(Arc::clone(&family.field), &rows)?.rank())
}

/// How a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    /// s(t+1) ≢ −1 (mod h): dimension alone rules out linearity.
    DimensionPrecheck,
    /// A member subset whose union rank is not a multiple of h.
    RankWitness,
}

/// The verdict: `nonlinear` with a reproducible witness, or `inconclusive`
/// (which is not a proof of linearity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonlinearityCertificate {
    pub verdict: String,
    pub method: Option<CertificateMethod>,
    /// Member indices whose union has the offending rank.
    pub witness: Option<Vec<usize>>,
    pub rank: Option<usize>,
    pub max_m: usize,
    pub subsets_searched: u64,
}

impl NonlinearityCertificate {
    pub fn is_nonlinear(&self) -> bool {
        self.verdict == "nonlinear"
    }
}

/// Searches subsets of 2..=max_m members in lexicographic order for a union
/// rank not divisible by h, stopping at the first witness.
pub fn certify_nonlinear(
    family: &SubspaceFamily,
    h: usize,
    max_m: usize,
    budget: Budget,
) -> Result<NonlinearityCertificate> {
    if max_m < 2 {
        return Err(Error::InvalidParams("max_m must be at least 2".into()));
    }
    let n = family.len();
    let mut total: u128 = 0;
    for size in 2..=max_m.min(n) {
        let mut c: u128 = 1;
        for i in 0..size {
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        total += c;
    }
    budget.check("subset search", total)?;
    let mut searched = 0u64;
    for size in 2..=max_m.min(n) {
        let mut found: Option<(Vec<usize>, usize)> = None;
        for_each_subset(n, size, |idx| {
            searched += 1;
            let rank = union_rank(family, idx).expect("indices in range");
            if rank % h != 0 {
                found = Some((idx.to_vec(), rank));
                false
            } else {
                true
            }
        });
        if let Some((witness, rank)) = found {
            return Ok(NonlinearityCertificate {
                verdict: "nonlinear".into(),
                method: Some(CertificateMethod::RankWitness),
                witness: Some(witness),
                rank: Some(rank),
                max_m,
                subsets_searched: searched,
            });
        }
    }
    Ok(NonlinearityCertificate {
        verdict: "inconclusive".into(),
        method: None,
        witness: None,
        rank: None,
        max_m,
        subsets_searched: searched,
    })
}

/// The negative control: a genuinely F_{q^h}-linear code expanded to F_q.
/// Each generator column spans an F_{q^h}-point, i.e. a rank-h member of the
/// Desarguesian spread of F_q^{kh}; every union of members then has rank
/// divisible by h.
pub fn spread_family_from_linear_code(
    code: &LinearCode,
    ext: &Extension,
) -> Result<SubspaceFamily> {
    if **code.field() != **ext.top() {
        return Err(Error::FieldMismatch);
    }
    let h = ext.degree();
    let k = code.k();
    let top = ext.top();
    let ambient = k * h;
    let mut members = Vec::with_capacity(code.n());
    for c in 0..code.n() {
        let col = code.generator().col(c);
        if col.iter().all(|&x| x == 0) {
            return Err(Error::ZeroColumn(c));
        }
        // generators e_j * col, coordinatised entry-wise over F_q
        let mut gens = Vec::with_capacity(h);
        for &e in ext.basis() {
            let mut row = Vec::with_capacity(ambient);
            for &entry in &col {
                row.extend(ext.coordinates(top.mul(e, entry)));
            }
            gens.push(row);
        }
        members.push(gens);
    }
    SubspaceFamily::new(Arc::clone(ext.base()), ambient, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, TowerContext};
    use crate::normtrace::{build_family, ConstructionBParams};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn precheck_arithmetic() {
        // s(t+1) = 9 ≡ 1 ≡ -1 (mod 2): holds, search needed
        assert!(divisibility_precheck(3, 2, 2));
        // s(t+1) = 6 ≡ 0 (mod 2) but -1 ≡ 1: fails, nonlinear by dimension
        assert!(!divisibility_precheck(2, 2, 2));
        // h = 1: always holds
        for (s, t) in [(1, 2), (3, 2), (4, 5)] {
            assert!(divisibility_precheck(s, t, 1));
        }
    }

    #[test]
    fn single_member_rank_is_h() {
        let ctx = TowerContext::new(2, 1, 3, 2, 2).unwrap();
        let params = ConstructionBParams::standard(&ctx).unwrap();
        let fam = build_family(&ctx, &params).unwrap();
        for i in 0..5 {
            assert_eq!(union_rank(fam.subspace_family(), &[i]).unwrap(), 2);
        }
        assert!(matches!(
            union_rank(fam.subspace_family(), &[999]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn full_family_rank_is_k() {
        let ctx = TowerContext::new(2, 1, 2, 2, 2).unwrap();
        let params = ConstructionBParams::standard(&ctx).unwrap();
        let fam = build_family(&ctx, &params).unwrap();
        let all: Vec<usize> = (0..fam.len()).collect();
        assert_eq!(union_rank(fam.subspace_family(), &all).unwrap(), 7);
    }

    #[test]
    fn norm_trace_63_code_has_a_witness() {
        let ctx = TowerContext::new(2, 1, 3, 2, 2).unwrap();
        let params = ConstructionBParams::standard(&ctx).unwrap();
        let fam = build_family(&ctx, &params).unwrap();
        let cert = certify_nonlinear(fam.subspace_family(), 2, 3, b()).unwrap();
        assert!(cert.is_nonlinear());
        assert_eq!(cert.method, Some(CertificateMethod::RankWitness));
        let witness = cert.witness.unwrap();
        let rank = cert.rank.unwrap();
        assert!(rank % 2 != 0);
        // independent recomputation reproduces the rank
        assert_eq!(
            union_rank(fam.subspace_family(), &witness).unwrap(),
            rank
        );
    }

    #[test]
    fn spread_control_yields_no_witness() {
        // a linear [5,2]_4 code whose columns are all of PG(1,4)
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let ext = Extension::new(f2, Arc::clone(&f4)).unwrap();
        let w = f4.generator();
        let code = LinearCode::from_rows(
            Arc::clone(&f4),
            &[vec![1, 0, 1, 1, 1], vec![0, 1, 1, w, f4.mul(w, w)]],
        )
        .unwrap();
        let fam = spread_family_from_linear_code(&code, &ext).unwrap();
        let cert = certify_nonlinear(&fam, 2, 3, b()).unwrap();
        assert!(!cert.is_nonlinear());
        assert_eq!(cert.verdict, "inconclusive");
        // exhaustive: every union rank is a multiple of h
        for size in 1..=3usize {
            for_each_subset(fam.len(), size, |idx| {
                assert_eq!(union_rank(&fam, idx).unwrap() % 2, 0);
                true
            });
        }
    }

    #[test]
    fn budget_caps_subset_search() {
        let ctx = TowerContext::new(2, 1, 3, 2, 2).unwrap();
        let params = ConstructionBParams::standard(&ctx).unwrap();
        let fam = build_family(&ctx, &params).unwrap();
        let tiny = Budget::new(10);
        assert!(matches!(
            certify_nonlinear(fam.subspace_family(), 2, 3, tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
