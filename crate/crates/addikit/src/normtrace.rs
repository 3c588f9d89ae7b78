//! Construction B: a [q^{st}−1, (st+s+1)/h, d]_q^h additive code with
//! d ≥ q^{st}−1 − ((q^{st}−1)/(q^s−1))·q^{s−h}, built from the family of
//! rank-h subspaces ⟨(1, λ_j N(x), λ_j x)⟩ of F_q × F_{q^s} × F_{q^{st}},
//! one member per nonzero x.

use crate::additive::AdditiveCode;
use crate::budget::Budget;
use crate::cert::SubspaceFamily;
use crate::error::{Error, Result};
use crate::field::TowerContext;
use crate::linalg::Matrix;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Parameters of one Construction B run. `lambdas` are representatives in
/// F_{q^s}; the default choice is the polynomial basis prefix 1, g, ...,
/// g^{h-1}, which is automatically F_q-independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionBParams {
    pub s: u32,
    pub t: u32,
    pub h: u32,
    pub lambdas: Vec<u32>,
}

impl ConstructionBParams {
    /// Default lambdas for the given tower.
    pub fn standard(ctx: &TowerContext) -> Result<ConstructionBParams> {
        let lambdas = choose_lambdas(ctx)?;
        Ok(ConstructionBParams {
            s: ctx.s(),
            t: ctx.t(),
            h: ctx.h(),
            lambdas,
        })
    }

    /// User-supplied lambdas, validated through the Moore matrix.
    pub fn with_lambdas(ctx: &TowerContext, lambdas: Vec<u32>) -> Result<ConstructionBParams> {
        validate_lambdas(ctx, &lambdas)?;
        Ok(ConstructionBParams {
            s: ctx.s(),
            t: ctx.t(),
            h: ctx.h(),
            lambdas,
        })
    }

    fn check_shape(&self, ctx: &TowerContext) -> Result<()> {
        if self.s != ctx.s() || self.t != ctx.t() || self.h != ctx.h() {
            return Err(Error::InvalidParams(format!(
                "params (s,t,h)=({},{},{}) do not match tower {:?}",
                self.s, self.t, self.h, ctx
            )));
        }
        if self.h > self.s {
            return Err(Error::InvalidParams(format!(
                "need h <= s, got h={}, s={}",
                self.h, self.s
            )));
        }
        if self.t < 2 {
            return Err(Error::InvalidParams(format!(
                "need t >= 2, got t={}",
                self.t
            )));
        }
        Ok(())
    }
}

/// The default lambda choice: the first h polynomial basis elements of
/// F_{q^s} over F_q, checked for independence and Moore nonsingularity.
pub fn choose_lambdas(ctx: &TowerContext) -> Result<Vec<u32>> {
    let h = ctx.h() as usize;
    if h > ctx.s() as usize {
        return Err(Error::InvalidParams(format!(
            "need h <= s, got h={}, s={}",
            ctx.h(),
            ctx.s()
        )));
    }
    let lambdas: Vec<u32> = ctx.ext_q_qs.basis().iter().take(h).copied().collect();
    validate_lambdas(ctx, &lambdas)?;
    Ok(lambdas)
}

/// Checks nonzero entries, F_q-independence, and Moore nonsingularity.
pub fn validate_lambdas(ctx: &TowerContext, lambdas: &[u32]) -> Result<()> {
    let h = ctx.h() as usize;
    if lambdas.len() != h {
        return Err(Error::InvalidParams(format!(
            "expected {h} lambdas, got {}",
            lambdas.len()
        )));
    }
    if lambdas.iter().any(|&l| l == 0) {
        return Err(Error::InvalidParams("lambdas must be nonzero".into()));
    }
    // independence over F_q via coordinates
    let coords: Vec<Vec<u32>> = lambdas
        .iter()
        .map(|&l| ctx.ext_q_qs.coordinates(l))
        .collect();
    let mat = Matrix::from_rows(Arc::clone(ctx.f_q()), &coords)?;
    if mat.rank() != h {
        return Err(Error::DependentLambdas);
    }
    let moore = moore_matrix(ctx, lambdas);
    if !moore.is_nonsingular() {
        let witness = moore
            .nullspace()
            .into_iter()
            .next()
            .unwrap_or_default();
        return Err(Error::SingularMoore { witness });
    }
    Ok(())
}

/// The h×h Moore matrix Λ with entry (i, j) = λ_j^{q^{s−1−i}}.
pub fn moore_matrix(ctx: &TowerContext, lambdas: &[u32]) -> Matrix {
    let h = lambdas.len();
    let fqs = ctx.f_qs();
    let q = ctx.q();
    let s = ctx.s();
    let mut m = Matrix::zeros(Arc::clone(fqs), h, h);
    for i in 0..h {
        let e = q.pow(s - 1 - i as u32);
        for (j, &l) in lambdas.iter().enumerate() {
            m.set(i, j, fqs.pow(l, e));
        }
    }
    m
}

/// Solves the homogeneous system Σ_j θ_j λ_j^{q^{s−1−i}} = 0 for
/// i = 0..h−2 over F_{q^s}; the nullspace is one-dimensional when the Moore
/// matrix is nonsingular. Returns the vector scaled so its first nonzero
/// coordinate is 1, after asserting the side condition
/// Σ_j θ_j λ_j^{q^{s−h}} ≠ 0.
pub fn solve_thetas(ctx: &TowerContext, lambdas: &[u32]) -> Result<Vec<u32>> {
    let h = lambdas.len();
    let fqs = Arc::clone(ctx.f_qs());
    if h == 1 {
        // vacuous system; the side condition is lambda_1^{q^{s-1}} != 0
        if lambdas[0] == 0 {
            return Err(Error::InvalidParams("lambda must be nonzero".into()));
        }
        return Ok(vec![1]);
    }
    let moore = moore_matrix(ctx, lambdas);
    if !moore.is_nonsingular() {
        let witness = moore.nullspace().into_iter().next().unwrap_or_default();
        return Err(Error::SingularMoore { witness });
    }
    let mut sys = Matrix::zeros(Arc::clone(&fqs), h - 1, h);
    for i in 0..h - 1 {
        for j in 0..h {
            sys.set(i, j, moore.get(i, j));
        }
    }
    let null = sys.nullspace();
    if null.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "theta nullspace has dimension {}, expected 1",
            null.len()
        )));
    }
    let mut theta = null.into_iter().next().unwrap();
    let first = theta
        .iter()
        .position(|&x| x != 0)
        .ok_or_else(|| Error::InternalInconsistency("zero theta".into()))?;
    let inv = fqs.inv(theta[first])?;
    for x in theta.iter_mut() {
        *x = fqs.mul(inv, *x);
    }
    // side condition: the last Moore row (exponent q^{s-h}) must not
    // annihilate theta, otherwise Λ would be singular
    let q = ctx.q();
    let e = q.pow(ctx.s() - ctx.h());
    let mut acc = 0u32;
    for (j, &l) in lambdas.iter().enumerate() {
        acc = fqs.add(acc, fqs.mul(theta[j], fqs.pow(l, e)));
    }
    if acc == 0 {
        return Err(Error::InternalInconsistency(
            "theta side condition failed despite nonsingular Moore matrix".into(),
        ));
    }
    Ok(theta)
}

/// The family X: one rank-h subspace of F_q^{1+s+st} per nonzero
/// x ∈ F_{q^{st}}, with x running over powers of the canonical generator.
#[derive(Debug, Clone)]
pub struct NormTraceSubspaceFamily {
    pub params: ConstructionBParams,
    family: SubspaceFamily,
    /// The field elements x, in enumeration order.
    xs: Vec<u32>,
}

impl NormTraceSubspaceFamily {
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[u32] {
        &self.xs
    }

    /// The coordinatised generators of member `i` (h rows of length k).
    pub fn member(&self, i: usize) -> &[Vec<u32>] {
        self.family.member(i)
    }

    pub fn subspace_family(&self) -> &SubspaceFamily {
        &self.family
    }
}

/// Builds the subspace family for the given parameters, asserting each
/// member has F_q-rank exactly h.
pub fn build_family(
    ctx: &TowerContext,
    params: &ConstructionBParams,
) -> Result<NormTraceSubspaceFamily> {
    params.check_shape(ctx)?;
    validate_lambdas(ctx, &params.lambdas)?;
    let fqst = ctx.f_qst();
    let fqs = ctx.f_qs();
    let n = fqst.size() as usize - 1;
    let s = ctx.s() as usize;
    let st = (ctx.s() * ctx.t()) as usize;
    let k = 1 + s + st;
    let g = fqst.generator();
    let lambdas_in_qst: Vec<u32> = params
        .lambdas
        .iter()
        .map(|&l| ctx.ext_qs_qst.embed(l))
        .collect();
    let mut xs = Vec::with_capacity(n);
    let mut members = Vec::with_capacity(n);
    let mut x = 1u32; // g^0
    for idx in 0..n {
        let norm_x = ctx.ext_qs_qst.norm(x)?;
        let mut gens = Vec::with_capacity(params.lambdas.len());
        for (j, &l) in params.lambdas.iter().enumerate() {
            let mut v = Vec::with_capacity(k);
            v.push(1u32);
            v.extend(ctx.ext_q_qs.coordinates(fqs.mul(l, norm_x)));
            v.extend(ctx.ext_q_qst.coordinates(fqst.mul(lambdas_in_qst[j], x)));
            gens.push(v);
        }
        let rank = Matrix::from_rows(Arc::clone(ctx.f_q()), &gens)?.rank();
        if rank != params.lambdas.len() {
            return Err(Error::RankDeficientMember { index: idx });
        }
        xs.push(x);
        members.push(gens);
        x = fqst.mul(x, g);
    }
    let family = SubspaceFamily::new(Arc::clone(ctx.f_q()), k, members)?;
    Ok(NormTraceSubspaceFamily {
        params: params.clone(),
        family,
        xs,
    })
}

/// Bound report for a Construction B code: `{n, k, h, q, dim, bound_d,
/// exact_d, family_size}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionBReport {
    pub n: usize,
    pub k: usize,
    pub h: u32,
    pub q: u64,
    pub dim: String,
    pub bound_d: u64,
    pub exact_d: Option<usize>,
    pub family_size: usize,
}

/// The built code with its family and distance report.
#[derive(Debug, Clone)]
pub struct ConstructionBResult {
    pub code: AdditiveCode,
    pub family: NormTraceSubspaceFamily,
    pub bound_d: u64,
    pub exact_d: Option<usize>,
}

impl ConstructionBResult {
    pub fn report(&self) -> ConstructionBReport {
        ConstructionBReport {
            n: self.code.n(),
            k: self.code.k(),
            h: self.code.h(),
            q: self.code.q(),
            dim: crate::additive::dim_display(self.code.k(), self.code.h()),
            bound_d: self.bound_d,
            exact_d: self.exact_d,
            family_size: self.family.len(),
        }
    }
}

/// The guaranteed distance bound q^{st}−1 − ((q^{st}−1)/(q^s−1))·q^{s−h}.
pub fn distance_bound(q: u64, s: u32, t: u32, h: u32) -> u64 {
    let n = q.pow(s * t) - 1;
    let cap = hyperplane_count_cap(q, s, t, h);
    n.saturating_sub(cap)
}

/// The degree-argument cap ((q^{st}−1)/(q^s−1))·q^{s−h} on the number of
/// family members inside one hyperplane.
pub fn hyperplane_count_cap(q: u64, s: u32, t: u32, h: u32) -> u64 {
    let n = q.pow(s * t) - 1;
    (n / (q.pow(s) - 1)) * q.pow(s - h)
}

/// Builds the additive code: the column for x is Σ_j e_j g_j(x) with g_j(x)
/// the coordinatised j-th generator, i.e. the entry in row r is the element
/// of F_{q^h} with e-basis coordinates (g_1(x)_r, ..., g_h(x)_r).
pub fn build_code(
    ctx: &TowerContext,
    params: &ConstructionBParams,
    budget: Budget,
) -> Result<ConstructionBResult> {
    let family = build_family(ctx, params)?;
    build_code_from_family(ctx, family, budget)
}

fn build_code_from_family(
    ctx: &TowerContext,
    family: NormTraceSubspaceFamily,
    budget: Budget,
) -> Result<ConstructionBResult> {
    let n = family.len();
    let s = ctx.s() as usize;
    let st = (ctx.s() * ctx.t()) as usize;
    let k = 1 + s + st;
    let h = ctx.h() as usize;
    let ext = Arc::clone(&ctx.ext_q_qh);
    let top = Arc::clone(ext.top());
    let e_basis = ctx.e_basis().to_vec();
    let mut gen = Matrix::zeros(Arc::clone(&top), k, n);
    for col in 0..n {
        let gens = family.member(col);
        for r in 0..k {
            let mut acc = 0u32;
            for j in 0..h {
                let c = gens[j][r];
                if c != 0 {
                    acc = top.add(acc, top.mul(ext.embed(c), e_basis[j]));
                }
            }
            gen.set(r, col, acc);
        }
    }
    let code = AdditiveCode::new(gen, ext).map_err(|e| match e {
        Error::DependentRows => Error::RankDeficientCode {
            expected_rank: k,
            got: 0,
        },
        other => other,
    })?;
    let code = {
        // recompute the honest rank for the loud error path above
        if code.k() != k {
            return Err(Error::RankDeficientCode {
                expected_rank: k,
                got: code.k(),
            });
        }
        code
    };
    let bound_d = distance_bound(ctx.q(), ctx.s(), ctx.t(), ctx.h());
    let exact_d = match code.min_distance(budget) {
        Ok(d) => Some(d),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if let Some(d) = exact_d {
        if (d as u64) < bound_d {
            return Err(Error::BoundViolated {
                claimed: bound_d,
                actual: d as u64,
            });
        }
    }
    Ok(ConstructionBResult {
        code,
        family,
        bound_d,
        exact_d,
    })
}

/// Evaluates the bilinear form a·(1, λ_j N(x), λ_j x) for all j directly
/// through trace and norm, decoding a ∈ F_q^k into (a_1, a_2, a_3) with the
/// trace-dual bases so the form agrees coordinate-by-coordinate with the
/// code's codeword map.
pub struct HyperplaneCounter<'a> {
    ctx: &'a TowerContext,
    lambdas: Vec<u32>,
    lambdas_in_qst: Vec<u32>,
    dual_qs: Vec<u32>,
    dual_qst: Vec<u32>,
    xs: Vec<u32>,
    norms: Vec<u32>,
}

impl<'a> HyperplaneCounter<'a> {
    pub fn new(ctx: &'a TowerContext, params: &ConstructionBParams) -> Result<Self> {
        params.check_shape(ctx)?;
        validate_lambdas(ctx, &params.lambdas)?;
        let fqst = ctx.f_qst();
        let n = fqst.size() as usize - 1;
        let g = fqst.generator();
        let mut xs = Vec::with_capacity(n);
        let mut norms = Vec::with_capacity(n);
        let mut x = 1u32;
        for _ in 0..n {
            xs.push(x);
            norms.push(ctx.ext_qs_qst.norm(x)?);
            x = fqst.mul(x, g);
        }
        Ok(HyperplaneCounter {
            ctx,
            lambdas: params.lambdas.clone(),
            lambdas_in_qst: params
                .lambdas
                .iter()
                .map(|&l| ctx.ext_qs_qst.embed(l))
                .collect(),
            dual_qs: ctx.ext_q_qs.trace_dual_basis()?,
            dual_qst: ctx.ext_q_qst.trace_dual_basis()?,
            xs,
            norms,
        })
    }

    /// Splits a ∈ F_q^{1+s+st} into (a_1, a_2, a_3) with a_2, a_3 assembled
    /// from the dual bases, so that a·g_j(x) (dot product of coordinates)
    /// equals a_1 + tr(a_2 λ_j N(x)) + Tr(a_3 λ_j x).
    pub fn components(&self, a: &[u32]) -> Result<(u32, u32, u32)> {
        let s = self.ctx.s() as usize;
        let st = (self.ctx.s() * self.ctx.t()) as usize;
        if a.len() != 1 + s + st {
            return Err(Error::DimensionMismatch {
                expected: format!("vector of length {}", 1 + s + st),
                got: format!("{}", a.len()),
            });
        }
        let fqs = self.ctx.f_qs();
        let fqst = self.ctx.f_qst();
        let a1 = a[0];
        let mut a2 = 0u32;
        for i in 0..s {
            if a[1 + i] != 0 {
                let scaled = fqs.mul(self.ctx.ext_q_qs.embed(a[1 + i]), self.dual_qs[i]);
                a2 = fqs.add(a2, scaled);
            }
        }
        let mut a3 = 0u32;
        for i in 0..st {
            if a[1 + s + i] != 0 {
                let scaled =
                    fqst.mul(self.ctx.ext_q_qst.embed(a[1 + s + i]), self.dual_qst[i]);
                a3 = fqst.add(a3, scaled);
            }
        }
        Ok((a1, a2, a3))
    }

    /// The number of nonzero x whose whole member subspace lies in the
    /// hyperplane a^⊥, by direct evaluation of the h trace forms.
    pub fn zero_count(&self, a: &[u32]) -> Result<u64> {
        let (a1, a2, a3) = self.components(a)?;
        let fq = self.ctx.f_q();
        let fqs = self.ctx.f_qs();
        let fqst = self.ctx.f_qst();
        let mut count = 0u64;
        for (idx, &x) in self.xs.iter().enumerate() {
            let nx = self.norms[idx];
            let mut all_zero = true;
            for j in 0..self.lambdas.len() {
                let mid = fqs.mul(a2, fqs.mul(self.lambdas[j], nx));
                let tr_mid = self.ctx.ext_q_qs.trace(mid)?;
                let topv = fqst.mul(a3, fqst.mul(self.lambdas_in_qst[j], x));
                let tr_top = self.ctx.ext_q_qst.trace(topv)?;
                let total = fq.add(a1, fq.add(tr_mid, tr_top));
                if total != 0 {
                    all_zero = false;
                    break;
                }
            }
            if all_zero {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Exhaustive maximum of [`HyperplaneCounter::zero_count`] over all
    /// nonzero a, with one maximising vector.
    pub fn max_zero_count(&self) -> Result<(u64, Vec<u32>)> {
        let s = self.ctx.s() as usize;
        let st = (self.ctx.s() * self.ctx.t()) as usize;
        let k = 1 + s + st;
        let q = self.ctx.q();
        let reps = crate::enumerate::VectorReps::new(k, q);
        let mut best = 0u64;
        let mut arg = vec![0u32; k];
        let mut a = vec![0u32; k];
        for i in 1..reps.count() {
            reps.decode(i, &mut a);
            let c = self.zero_count(&a)?;
            if c > best {
                best = c;
                arg = a.clone();
            }
        }
        Ok((best, arg))
    }
}

/// Full certification flow for a Construction B code: the divisibility
/// precheck first (its failure alone certifies non-linearity), then the
/// rank-witness search over the family.
pub fn certify_nonlinear_b(
    ctx: &TowerContext,
    params: &ConstructionBParams,
    max_m: usize,
    budget: Budget,
) -> Result<crate::cert::NonlinearityCertificate> {
    use crate::cert::{self, CertificateMethod, NonlinearityCertificate};
    if !cert::divisibility_precheck(params.s as u64, params.t as u64, params.h as u64) {
        return Ok(NonlinearityCertificate {
            verdict: "nonlinear".into(),
            method: Some(CertificateMethod::DimensionPrecheck),
            witness: None,
            rank: None,
            max_m,
            subsets_searched: 0,
        });
    }
    let family = build_family(ctx, params)?;
    cert::certify_nonlinear(family.subspace_family(), params.h as usize, max_m, budget)
}
