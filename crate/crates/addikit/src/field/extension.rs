//! Subfield embeddings and field towers F_q ⊂ F_{q^s} ⊂ F_{q^{st}}.
//!
//! The embedding K → L maps the fixed generator of K* to a power of the
//! generator of L* chosen so the map is also additive; the choice is
//! deterministic (smallest valid exponent multiplier) and verified at
//! construction. Coordinates use the polynomial basis 1, g, ..., g^{d-1} of L
//! over the embedded K, which is automatically K-independent.

use super::{Field, FieldElement, FieldRef};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use std::collections::HashMap;
use std::sync::Arc;

/// A verified subfield embedding K ⊂ L with coordinate maps.
pub struct Extension {
    base: FieldRef,
    top: FieldRef,
    degree: usize,
    embed: Vec<u32>,
    retract: HashMap<u32, u32>,
    basis: Vec<u32>,
    /// Inverse of the F_p-linear map (c_0..c_{d-1}) -> sum embed(c_i) g^i.
    coord_inv: Matrix,
}

impl std::fmt::Debug for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Extension(F{} in F{}, degree {})",
            self.base.size(),
            self.top.size(),
            self.degree
        )
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

impl Extension {
    /// The canonical embedding of `base` into `top`.
    pub fn new(base: FieldRef, top: FieldRef) -> Result<Extension> {
        if base.characteristic() != top.characteristic()
            || top.degree() % base.degree() != 0
        {
            return Err(Error::NotASubfield);
        }
        let table = canonical_embedding_table(&base, &top)?;
        Extension::from_embedding(base, top, table)
    }

    /// Builds the K ⊂ L extension through a given embedding table
    /// (used for tower-composed embeddings).
    fn from_embedding(base: FieldRef, top: FieldRef, embed: Vec<u32>) -> Result<Extension> {
        let degree = (top.degree() / base.degree()) as usize;
        let retract: HashMap<u32, u32> = embed
            .iter()
            .enumerate()
            .map(|(src, &img)| (img, src as u32))
            .collect();
        if retract.len() != base.size() as usize {
            return Err(Error::InternalInconsistency(
                "embedding table is not injective".into(),
            ));
        }
        // polynomial basis of L over the embedded K
        let g = if top.degree() == 1 {
            1
        } else {
            top.generator()
        };
        let mut basis = Vec::with_capacity(degree);
        let mut acc = 1u32;
        for _ in 0..degree {
            basis.push(acc);
            acc = top.mul(acc, g);
        }
        let prime = Field::new(top.characteristic(), 1)?;
        let p = top.characteristic();
        let ml = top.degree() as usize;
        let e = base.degree() as usize;
        // columns: F_p digits of embed(x_K^u) * g^i
        let mut cols = Matrix::zeros(Arc::clone(&prime), ml, ml);
        for i in 0..degree {
            for u in 0..e {
                let k_basis_rep = p.pow(u as u32); // x_K^u
                let v = top.mul(embed[k_basis_rep as usize], basis[i]);
                for row in 0..ml {
                    cols.set(row, i * e + u, top.digit(v, row as u32));
                }
            }
        }
        let coord_inv = cols.inverse().map_err(|_| {
            Error::InternalInconsistency("polynomial basis failed to span".into())
        })?;
        Ok(Extension {
            base,
            top,
            degree,
            embed,
            retract,
            basis,
            coord_inv,
        })
    }

    /// The composite embedding K ⊂ M ⊂ L, coherent with the two legs.
    pub fn compose(lower: &Extension, upper: &Extension) -> Result<Extension> {
        if *lower.top != *upper.base {
            return Err(Error::NotASubfield);
        }
        let embed: Vec<u32> = lower
            .embed
            .iter()
            .map(|&mid| upper.embed[mid as usize])
            .collect();
        Extension::from_embedding(Arc::clone(&lower.base), Arc::clone(&upper.top), embed)
    }

    pub fn base(&self) -> &FieldRef {
        &self.base
    }

    pub fn top(&self) -> &FieldRef {
        &self.top
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The polynomial basis 1, g, ..., g^{d-1} of L over K (reps in L).
    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn embed(&self, rep: u32) -> u32 {
        self.embed[rep as usize]
    }

    /// Maps an element of the image subfield back to K.
    pub fn retract(&self, rep: u32) -> Result<u32> {
        self.retract
            .get(&rep)
            .copied()
            .ok_or(Error::ResultNotInSubfield)
    }

    pub fn contains(&self, rep: u32) -> bool {
        self.retract.contains_key(&rep)
    }

    /// K-coordinates of y with respect to the polynomial basis.
    pub fn coordinates(&self, y: u32) -> Vec<u32> {
        let ml = self.top.degree() as usize;
        let e = self.base.degree() as usize;
        let digits: Vec<u32> = (0..ml).map(|i| self.top.digit(y, i as u32)).collect();
        let z = self.coord_inv.mul_vec(&digits).expect("square system");
        (0..self.degree)
            .map(|i| {
                let mut rep = 0u32;
                for u in (0..e).rev() {
                    rep = rep * self.base.characteristic() + z[i * e + u];
                }
                rep
            })
            .collect()
    }

    /// Inverse of [`Extension::coordinates`]: sum of embed(c_i) * g^i.
    pub fn evaluate(&self, coords: &[u32]) -> u32 {
        debug_assert_eq!(coords.len(), self.degree);
        let mut acc = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            acc = self
                .top
                .add(acc, self.top.mul(self.embed[c as usize], self.basis[i]));
        }
        acc
    }

    /// Trace of y down to K: sum of y^{|K|^i} for i in 0..d, retracted.
    pub fn trace(&self, y: u32) -> Result<u32> {
        let k_size = self.base.size() as u64;
        let mut term = y;
        let mut acc = 0u32;
        for _ in 0..self.degree {
            acc = self.top.add(acc, term);
            term = self.top.pow(term, k_size);
        }
        self.retract(acc)
    }

    /// Norm of y down to K: y^{(|L|-1)/(|K|-1)}, retracted; N(0) = 0.
    pub fn norm(&self, y: u32) -> Result<u32> {
        if y == 0 {
            return Ok(0);
        }
        let e = (self.top.size() as u64 - 1) / (self.base.size() as u64 - 1);
        self.retract(self.top.pow(y, e))
    }

    /// The basis dual to the polynomial basis under the trace form:
    /// tr(dual[i] * basis[j]) = [i == j].
    pub fn trace_dual_basis(&self) -> Result<Vec<u32>> {
        let d = self.degree;
        let mut gram = Matrix::zeros(Arc::clone(&self.base), d, d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.top.mul(self.basis[i], self.basis[j]);
                gram.set(i, j, self.trace(prod)?);
            }
        }
        let inv = gram
            .inverse()
            .map_err(|_| Error::InternalInconsistency("trace form degenerate".into()))?;
        // dual[i] = sum_j inv[j][i] basis[j]
        Ok((0..d)
            .map(|i| {
                let coords: Vec<u32> = (0..d).map(|j| inv.get(j, i)).collect();
                self.evaluate(&coords)
            })
            .collect())
    }

}

/// Finds the canonical additive-and-multiplicative embedding table.
fn canonical_embedding_table(base: &FieldRef, top: &FieldRef) -> Result<Vec<u32>> {
    let k_size = base.size() as u64;
    let l_size = top.size() as u64;
    if base.degree() == 1 {
        // prime subfield: a -> a * 1, which is the constant digit a
        return Ok((0..base.size()).collect());
    }
    if *base.as_ref() == *top.as_ref() {
        return Ok((0..base.size()).collect());
    }
    let stride = (l_size - 1) / (k_size - 1);
    let g_k = base.generator();
    for j in 1..k_size - 1 + 1 {
        if gcd_u64(j, k_size - 1) != 1 {
            continue;
        }
        let image_gen = top.pow(top.generator(), (j * stride) % (l_size - 1));
        let mut table = vec![0u32; base.size() as usize];
        let (mut a, mut b) = (1u32, 1u32);
        for _ in 0..k_size - 1 {
            table[a as usize] = b;
            a = base.mul(a, g_k);
            b = top.mul(b, image_gen);
        }
        // additive check phi(a + 1) == phi(a) + 1 suffices given
        // multiplicativity
        let additive = (0..base.size()).all(|a| {
            table[base.add(a, 1) as usize] == top.add(table[a as usize], 1)
        });
        if additive {
            return Ok(table);
        }
    }
    Err(Error::InternalInconsistency(
        "no additive embedding found".into(),
    ))
}

/// The field tower F_q ⊂ F_{q^s} ⊂ F_{q^{st}} together with F_q ⊂ F_{q^h},
/// with coherent embeddings (the F_q ⊂ F_{q^{st}} leg is the composite) and
/// polynomial bases for coordinatisation.
pub struct TowerContext {
    q: u64,
    s: u32,
    t: u32,
    h: u32,
    f_q: FieldRef,
    f_qs: FieldRef,
    f_qst: FieldRef,
    f_qh: FieldRef,
    pub ext_q_qs: Arc<Extension>,
    pub ext_qs_qst: Arc<Extension>,
    pub ext_q_qst: Arc<Extension>,
    pub ext_q_qh: Arc<Extension>,
}

impl std::fmt::Debug for TowerContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "TowerContext(q={}, s={}, t={}, h={})",
            self.q, self.s, self.t, self.h
        )
    }
}

impl TowerContext {
    /// Builds the tower for q = p^e. `s` and `t` may be 1 when only the
    /// F_q ⊂ F_{q^h} leg is needed (Construction A).
    pub fn new(p: u32, e: u32, s: u32, t: u32, h: u32) -> Result<TowerContext> {
        if s == 0 || t == 0 || h == 0 {
            return Err(Error::InvalidParams("s, t, h must be >= 1".into()));
        }
        let f_q = Field::new(p, e)?;
        let f_qs = Field::new(p, e * s)?;
        let f_qst = Field::new(p, e * s * t)?;
        let f_qh = Field::new(p, e * h)?;
        let ext_q_qs = Arc::new(Extension::new(Arc::clone(&f_q), Arc::clone(&f_qs))?);
        let ext_qs_qst = Arc::new(Extension::new(Arc::clone(&f_qs), Arc::clone(&f_qst))?);
        let ext_q_qst = Arc::new(Extension::compose(&ext_q_qs, &ext_qs_qst)?);
        let ext_q_qh = Arc::new(Extension::new(Arc::clone(&f_q), Arc::clone(&f_qh))?);
        Ok(TowerContext {
            q: (p as u64).pow(e),
            s,
            t,
            h,
            f_q,
            f_qs,
            f_qst,
            f_qh,
            ext_q_qs,
            ext_qs_qst,
            ext_q_qst,
            ext_q_qh,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn f_q(&self) -> &FieldRef {
        &self.f_q
    }

    pub fn f_qs(&self) -> &FieldRef {
        &self.f_qs
    }

    pub fn f_qst(&self) -> &FieldRef {
        &self.f_qst
    }

    pub fn f_qh(&self) -> &FieldRef {
        &self.f_qh
    }

    /// The fixed F_q-basis e_1, ..., e_h of F_{q^h} (polynomial basis).
    pub fn e_basis(&self) -> &[u32] {
        self.ext_q_qh.basis()
    }

    fn extension_for(&self, base: &FieldRef, top: &FieldRef) -> Result<&Arc<Extension>> {
        for ext in [
            &self.ext_q_qs,
            &self.ext_qs_qst,
            &self.ext_q_qst,
            &self.ext_q_qh,
        ] {
            if *ext.base() == *base && *ext.top() == *top {
                return Ok(ext);
            }
        }
        Err(Error::NotASubfield)
    }

    /// Embeds `x` into `target` along one of the tower's legs.
    pub fn embed(&self, x: &FieldElement, target: &FieldRef) -> Result<FieldElement> {
        if *x.field() == *target {
            return Ok(target.element(x.rep()));
        }
        let ext = self.extension_for(x.field(), target)?;
        Ok(target.element(ext.embed(x.rep())))
    }

    /// Trace of `x` down to the subfield `down_to` along a tower leg.
    pub fn trace(&self, x: &FieldElement, down_to: &FieldRef) -> Result<FieldElement> {
        let ext = self.extension_for(down_to, x.field())?;
        Ok(down_to.element(ext.trace(x.rep())?))
    }

    /// Norm from F_{q^{st}} down to F_{q^s}.
    pub fn norm(&self, x: &FieldElement) -> Result<FieldElement> {
        if **x.field() != *self.f_qst {
            return Err(Error::NotASubfield);
        }
        Ok(self.f_qs.element(self.ext_qs_qst.norm(x.rep())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_subfield_embeds_as_constants() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let ext = Extension::new(f2, f4).unwrap();
        assert_eq!(ext.embed(0), 0);
        assert_eq!(ext.embed(1), 1);
    }

    #[test]
    fn f4_into_f16_is_a_ring_homomorphism() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let ext = Extension::new(Arc::clone(&f4), Arc::clone(&f16)).unwrap();
        for a in 0..4u32 {
            for b in 0..4u32 {
                assert_eq!(
                    ext.embed(f4.add(a, b)),
                    f16.add(ext.embed(a), ext.embed(b))
                );
                assert_eq!(
                    ext.embed(f4.mul(a, b)),
                    f16.mul(ext.embed(a), ext.embed(b))
                );
            }
        }
    }

    #[test]
    fn trace_f4_over_f2_values() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        let ext = Extension::new(f2, Arc::clone(&f4)).unwrap();
        assert_eq!(ext.trace(0).unwrap(), 0);
        assert_eq!(ext.trace(1).unwrap(), 0); // 1 + 1 in characteristic 2
        let w = f4.generator();
        assert_eq!(ext.trace(w).unwrap(), 1); // w + w^2 = 1
    }

    #[test]
    fn trace_f9_over_f3_fibers() {
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let ext = Extension::new(f3, f9).unwrap();
        let mut fibers = [0usize; 3];
        for y in 0..9 {
            fibers[ext.trace(y).unwrap() as usize] += 1;
        }
        assert_eq!(fibers, [3, 3, 3]);
    }

    #[test]
    fn norm_f16_over_f4_multiplicative_exhaustive() {
        let f4 = Field::new(2, 2).unwrap();
        let f16 = Field::new(2, 4).unwrap();
        let ext = Extension::new(Arc::clone(&f4), Arc::clone(&f16)).unwrap();
        assert_eq!(ext.norm(1).unwrap(), 1);
        // N(g) = g^5 has order 3, hence lies in F_4
        let g = f16.generator();
        assert_eq!(ext.embed(ext.norm(g).unwrap()), f16.pow(g, 5));
        for x in 0..16u32 {
            for y in 0..16u32 {
                assert_eq!(
                    ext.norm(f16.mul(x, y)).unwrap(),
                    f4.mul(ext.norm(x).unwrap(), ext.norm(y).unwrap())
                );
            }
        }
    }

    #[test]
    fn coordinates_roundtrip_f64_over_f8() {
        let f8 = Field::new(2, 3).unwrap();
        let f64 = Field::new(2, 6).unwrap();
        let ext = Extension::new(f8, f64).unwrap();
        assert_eq!(ext.degree(), 2);
        for y in 0..64u32 {
            let c = ext.coordinates(y);
            assert_eq!(ext.evaluate(&c), y);
        }
    }

    #[test]
    fn tower_composite_is_coherent() {
        let ctx = TowerContext::new(2, 1, 2, 2, 2).unwrap();
        for a in 0..2u32 {
            let via_mid = ctx
                .ext_qs_qst
                .embed(ctx.ext_q_qs.embed(a));
            assert_eq!(ctx.ext_q_qst.embed(a), via_mid);
        }
        // transitivity of trace: Tr_{L/K} = tr_{M/K} . Tr_{L/M}
        for y in 0..16u32 {
            let down_two = ctx.ext_q_qst.trace(y).unwrap();
            let mid = ctx.ext_qs_qst.trace(y).unwrap();
            let down_one = ctx.ext_q_qs.trace(mid).unwrap();
            assert_eq!(down_two, down_one);
        }
    }

    #[test]
    fn dual_basis_property() {
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let ext = Extension::new(f3, f9).unwrap();
        let dual = ext.trace_dual_basis().unwrap();
        for (i, &d) in dual.iter().enumerate() {
            for (j, &b) in ext.basis().iter().enumerate() {
                let tr = ext.trace(ext.top().mul(d, b)).unwrap();
                assert_eq!(tr, (i == j) as u32);
            }
        }
    }

    #[test]
    fn not_a_subfield() {
        let f4 = Field::new(2, 2).unwrap();
        let f8 = Field::new(2, 3).unwrap();
        assert!(matches!(
            Extension::new(f4, f8),
            Err(Error::NotASubfield)
        ));
    }
}
