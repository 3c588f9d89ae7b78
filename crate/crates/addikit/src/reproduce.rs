//! The reproduction suite: one runner per headline claim the library is
//! expected to reproduce, shared by the `addikit reproduce` subcommand and
//! the acceptance test target. Each runner is deterministic and reports a
//! pass/fail verdict with an audit string.

use crate::additive::dim_display;
use crate::bounds::{additive_griesmer_check, additive_griesmer_max_d, ghw_lower_bound};
use crate::budget::Budget;
use crate::cert::{self, CertificateMethod};
use crate::enumerate::VectorReps;
use crate::error::Result;
use crate::field::{Extension, Field, TowerContext};
use crate::linear::{hamming74, simplex73, tetracode, weight, LinearCode};
use crate::normtrace::{
    build_code, certify_nonlinear_b, hyperplane_count_cap, ConstructionBParams,
    HyperplaneCounter,
};
use crate::semifield::{construct_a, desarguesian_partial_semifield};
use serde::{Deserialize, Serialize};
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

/// Deterministic 64-bit mixer used where a criterion calls for sampled
/// vectors; fixed seed, so every run sees the same sample.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

struct Checker {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if !ok {
            self.failures.push(what);
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn finish(self, id: u32, name: &str, started: Instant) -> CriterionResult {
        let mut detail = self.notes.join("; ");
        if !self.failures.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("FAILED: {}", self.failures.join(" | ")));
        }
        CriterionResult {
            id,
            name: name.to_string(),
            passed: self.failures.is_empty(),
            detail,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

fn run<F>(id: u32, name: &str, body: F) -> CriterionResult
where
    F: FnOnce(&mut Checker) -> Result<()>,
{
    let started = Instant::now();
    let mut c = Checker::new();
    if let Err(e) = body(&mut c) {
        c.expect(false, format!("error: {e}"));
    }
    c.finish(id, name, started)
}

/// Criterion 1: the (2,3,2,2) norm-trace code is a [63, 5, d]_2^2 additive
/// code with F_2-rank 10 and brute-forced d ≥ 45, inside 5 seconds.
pub fn criterion_1(budget: Budget) -> CriterionResult {
    run(1, "example-63 reproduction", |c| {
        let t0 = Instant::now();
        let ctx = TowerContext::new(2, 1, 3, 2, 2)?;
        let params = ConstructionBParams::standard(&ctx)?;
        let r = build_code(&ctx, &params, budget)?;
        c.expect(r.code.n() == 63, format!("n = {}", r.code.n()));
        c.expect(r.code.k() == 10, format!("k = {}", r.code.k()));
        let rank = r.code.fq_expansion().rank();
        c.expect(rank == 10, format!("F_2-rank = {rank}"));
        c.expect(
            dim_display(r.code.k(), r.code.h()) == "5",
            "dimension over F_4 should be 5",
        );
        let d = r.exact_d.expect("within budget");
        c.expect(d >= 45, format!("d = {d} < 45"));
        c.note(format!("[63, 5, {d}]_2^2, bound 45"));
        let secs = t0.elapsed().as_secs_f64();
        c.expect(secs < 5.0, format!("runtime {secs:.2}s >= 5s"));
        Ok(())
    })
}

/// Criterion 2: brute-forced d meets the construction bound on the whole
/// parameter grid, inside 2 minutes.
pub fn criterion_2(budget: Budget) -> CriterionResult {
    run(2, "norm-trace bound on the (q,s,t,h) grid", |c| {
        let t0 = Instant::now();
        for (p, s, t, h) in [
            (2u32, 2u32, 2u32, 1u32),
            (2, 2, 2, 2),
            (2, 3, 2, 2),
            (2, 3, 2, 3),
            (3, 2, 2, 2),
        ] {
            let ctx = TowerContext::new(p, 1, s, t, h)?;
            let params = ConstructionBParams::standard(&ctx)?;
            let r = build_code(&ctx, &params, budget)?;
            let d = r.exact_d.expect("within budget") as u64;
            c.expect(
                d >= r.bound_d,
                format!("({p},{s},{t},{h}): d = {d} < bound {}", r.bound_d),
            );
            c.note(format!("({p},{s},{t},{h}): d={d} >= {}", r.bound_d));
        }
        let secs = t0.elapsed().as_secs_f64();
        c.expect(secs < 120.0, format!("runtime {secs:.1}s >= 120s"));
        Ok(())
    })
}

/// Criterion 3: the additive Griesmer bound at (q,h) = (2,2): the d = 12
/// instance is infeasible with the pinned intermediates; the spec expects
/// additive_griesmer_max_d(15,7,2,2) = 11, although the same formula already
/// rejects d = 11 (rhs 16 > 15), making 10 the faithful value; the
/// constructed (2,2,2,2) code's exact d is reported and checked ≤ 11.
pub fn criterion_3(budget: Budget) -> CriterionResult {
    run(3, "additive Griesmer optimality at (q,h)=(2,2)", |c| {
        let v = additive_griesmer_check(15, 7, 2, 2, 12)?;
        c.expect(!v.feasible, "d=12 must be infeasible");
        c.expect(v.m == 3, format!("m = {}", v.m));
        c.expect(v.k == 4, format!("k = {}", v.k));
        c.expect(v.r0 == 1, format!("r_0 = {}", v.r0));
        c.expect(
            v.ceil_d_over_f == 4,
            format!("ceil(d/f) = {}", v.ceil_d_over_f),
        );
        c.note(format!("check(15,7,2,2,12): rhs={} infeasible", v.rhs));
        let max_d = additive_griesmer_max_d(15, 7, 2, 2)?;
        let v11 = additive_griesmer_check(15, 7, 2, 2, 11)?;
        c.note(format!(
            "max_d = {max_d} (d=11 gives rhs {} > 15, so the stated value 11 \
             is unattainable under the same formula that fixes the d=12 \
             intermediates above)",
            v11.rhs
        ));
        c.expect(max_d == 11, format!("max_d = {max_d}, spec states 11"));
        let ctx = TowerContext::new(2, 1, 2, 2, 2)?;
        let params = ConstructionBParams::standard(&ctx)?;
        let r = build_code(&ctx, &params, budget)?;
        let d = r.exact_d.expect("within budget");
        c.expect(d <= 11, format!("constructed d = {d} > 11"));
        c.note(format!(
            "constructed (2,2,2,2) code has exact d = {d}: the Theorem \
             formula value q^(2h)-q^h-2 = 10 is attained, not the prose \
             claim q^(2h)-q^h-1 = 11"
        ));
        Ok(())
    })
}

/// Criterion 4: the Mathon [21, 3, 18]_3^2 parameters meet the additive
/// Griesmer bound with equality.
pub fn criterion_4(_budget: Budget) -> CriterionResult {
    run(4, "Mathon parameters meet the bound with equality", |c| {
        let v = additive_griesmer_check(21, 6, 2, 3, 18)?;
        c.expect(v.feasible, "must be feasible");
        c.expect(v.rhs == 21, format!("rhs = {}", v.rhs));
        c.note(format!(
            "check(21,6,2,3,18): k={} r0={} m={} f={} rhs={} feasible",
            v.k, v.r0, v.m, v.f, v.rhs
        ));
        Ok(())
    })
}

/// Criterion 5: Construction A on the [7,4,3] Hamming code with the
/// Desarguesian partial semifield (2,4,2): built d ≥ ghw(C,2) = 5, the GHW
/// hierarchy is (3,5,6,7), and the ceiling-sum lower bounds match it
/// componentwise, inside 10 seconds.
pub fn criterion_5(budget: Budget) -> CriterionResult {
    run(5, "Construction A guarantee on Hamming [7,4,3]", |c| {
        let t0 = Instant::now();
        let code = hamming74();
        let f2 = Field::new(2, 1)?;
        let semifield = desarguesian_partial_semifield(&f2, 4, 2)?;
        let ctx = TowerContext::new(2, 1, 1, 1, 2)?;
        let r = construct_a(&code, &semifield, &ctx, budget)?;
        let d = r.actual_d.expect("within budget");
        c.expect(r.guaranteed_d == 5, format!("ghw(C,2) = {}", r.guaranteed_d));
        c.expect(d >= 5, format!("built d = {d} < 5"));
        let hierarchy = code.ghw_hierarchy(budget)?;
        c.expect(
            hierarchy == vec![3, 5, 6, 7],
            format!("hierarchy = {hierarchy:?}"),
        );
        for (j, &exact) in hierarchy.iter().enumerate() {
            let lower = ghw_lower_bound(j as u64 + 1, 3, 2);
            c.expect(
                lower <= exact as u64,
                format!("bound d_{} = {lower} exceeds exact {exact}", j + 1),
            );
            c.expect(
                lower == [3u64, 5, 6, 7][j],
                format!("bound d_{} = {lower}", j + 1),
            );
        }
        c.note(format!("built [7, 2, {d}]_2^2; ghw = {hierarchy:?}"));
        let secs = t0.elapsed().as_secs_f64();
        c.expect(secs < 10.0, format!("runtime {secs:.2}s >= 10s"));
        Ok(())
    })
}

/// Criterion 6: the weight identity weight(vG_add) = n − |V^⊥ ∩ X| holds
/// with zero mismatches: exhaustively where q^k ≤ 2^10, plus 200 sampled v
/// on a larger instance.
pub fn criterion_6(budget: Budget) -> CriterionResult {
    run(6, "Construction A weight identity", |c| {
        let mut checked = 0u64;
        let mut check_instance =
            |code: &LinearCode, h: usize, sample: Option<u64>, c: &mut Checker| -> Result<()> {
                let f = Arc::clone(code.field());
                let semifield = desarguesian_partial_semifield(&f, code.k(), h)?;
                let ctx = TowerContext::new(
                    f.characteristic(),
                    f.degree(),
                    1,
                    1,
                    h as u32,
                )?;
                let r = construct_a(code, &semifield, &ctx, budget)?;
                let points = code.columns_as_points()?;
                let reps = VectorReps::new(code.k(), code.q());
                let mut v = vec![0u32; code.k()];
                let mut indices: Vec<u64> = Vec::new();
                match sample {
                    None => indices.extend(1..reps.count()),
                    Some(count) => {
                        let mut rng = SplitMix64::new(0x5eed_0001);
                        while indices.len() < count as usize {
                            let i = rng.below(reps.count());
                            if i != 0 {
                                indices.push(i);
                            }
                        }
                    }
                }
                for i in indices {
                    reps.decode(i, &mut v);
                    // left side: weight of the built codeword
                    let w = weight(&r.code.codeword(&v)?);
                    // right side: hyperplane count for V = <vA_1, ..., vA_h>
                    let spans: Vec<Vec<u32>> = semifield
                        .matrices()
                        .iter()
                        .map(|a| {
                            let mut row = vec![0u32; code.k()];
                            for col in 0..code.k() {
                                let mut acc = 0;
                                for rr in 0..code.k() {
                                    acc = f.add(acc, f.mul(v[rr], a.get(rr, col)));
                                }
                                row[col] = acc;
                            }
                            row
                        })
                        .collect();
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
                    c.expect(
                        w == code.n() - contained,
                        format!("mismatch at v={v:?}: {w} vs {}", code.n() - contained),
                    );
                    checked += 1;
                }
                Ok(())
            };
        // exhaustive instances (q^k <= 2^10)
        check_instance(&hamming74(), 2, None, c)?;
        check_instance(&simplex73(), 2, None, c)?;
        check_instance(&tetracode(), 2, None, c)?;
        // sampled instance with q^k = 3^7 = 2187 > 2^10
        let f3 = Field::new(3, 1)?;
        let big = seeded_code(&f3, 7, 10);
        check_instance(&big, 2, Some(200), c)?;
        c.note(format!("{checked} vectors checked, zero mismatches"));
        Ok(())
    })
}

/// A deterministic full-rank k×n code over the given field, built from the
/// fixed-seed sampler (used only to provide a larger test instance).
fn seeded_code(field: &crate::field::FieldRef, k: usize, n: usize) -> LinearCode {
    let mut rng = SplitMix64::new(0x5eed_c0de);
    loop {
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                (0..n)
                    .map(|_| rng.below(field.size() as u64) as u32)
                    .collect()
            })
            .collect();
        if let Ok(code) = LinearCode::from_rows(Arc::clone(field), &rows) {
            if code.columns_as_points().is_ok() {
                return code;
            }
        }
    }
}

/// Criterion 7: the hyperplane zero-count cap holds exhaustively for
/// (2,2,2,2) and (2,3,2,2): max over nonzero a is at most 5 and 18.
pub fn criterion_7(_budget: Budget) -> CriterionResult {
    run(7, "hyperplane-count cap", |c| {
        for (p, s, t, h, cap) in [(2u32, 2u32, 2u32, 2u32, 5u64), (2, 3, 2, 2, 18)] {
            let ctx = TowerContext::new(p, 1, s, t, h)?;
            let params = ConstructionBParams::standard(&ctx)?;
            let hc = HyperplaneCounter::new(&ctx, &params)?;
            let (max, _) = hc.max_zero_count()?;
            c.expect(
                cap == hyperplane_count_cap(p as u64, s, t, h),
                "cap formula mismatch",
            );
            c.expect(max <= cap, format!("({p},{s},{t},{h}): max {max} > cap {cap}"));
            c.note(format!("({p},{s},{t},{h}): max count {max} <= {cap}"));
        }
        Ok(())
    })
}

/// Criterion 8: non-linearity certificates on the q=2, t=2, s ≤ 4 grid
/// (rank witness for (2,3,2,2), dimension precheck elsewhere), and the
/// expanded F_4-linear control yields no witness; inside 2 minutes.
pub fn criterion_8(budget: Budget) -> CriterionResult {
    run(8, "non-linearity certificates", |c| {
        let t0 = Instant::now();
        for s in 2..=4u32 {
            for h in 2..=s {
                let ctx = TowerContext::new(2, 1, s, 2, h)?;
                let params = ConstructionBParams::standard(&ctx)?;
                let cert = certify_nonlinear_b(&ctx, &params, 3, budget)?;
                c.expect(
                    cert.is_nonlinear(),
                    format!("(2,{s},2,{h}) not certified"),
                );
                if s == 3 && h == 2 {
                    c.expect(
                        cert.method == Some(CertificateMethod::RankWitness),
                        "(2,3,2,2) should need the rank search",
                    );
                    let rank = cert.rank.unwrap_or(0);
                    c.expect(rank % 2 != 0, format!("witness rank {rank} divisible by h"));
                    c.note(format!(
                        "(2,3,2,2): witness {:?} with rank {rank}",
                        cert.witness.as_deref().unwrap_or(&[])
                    ));
                } else {
                    c.expect(
                        cert.method == Some(CertificateMethod::DimensionPrecheck),
                        format!("(2,{s},2,{h}) should fail the precheck"),
                    );
                }
            }
        }
        // negative control: all of PG(1,4) as columns of a [5,2]_4 code
        let f2 = Field::new(2, 1)?;
        let f4 = Field::new(2, 2)?;
        let ext = Extension::new(f2, Arc::clone(&f4))?;
        let w = f4.generator();
        let control = LinearCode::from_rows(
            Arc::clone(&f4),
            &[vec![1, 0, 1, 1, 1], vec![0, 1, 1, w, f4.mul(w, w)]],
        )?;
        let fam = cert::spread_family_from_linear_code(&control, &ext)?;
        let verdict = cert::certify_nonlinear(&fam, 2, 3, budget)?;
        c.expect(
            !verdict.is_nonlinear(),
            "control must stay inconclusive",
        );
        c.note(format!(
            "control searched {} subsets, no witness",
            verdict.subsets_searched
        ));
        let secs = t0.elapsed().as_secs_f64();
        c.expect(secs < 120.0, format!("runtime {secs:.1}s >= 120s"));
        Ok(())
    })
}

/// Criterion 9: field-engine properties: exhaustive field axioms for every
/// field of size ≤ 2^8; trace/norm surjectivity and fiber sizes for towers
/// with q^{st} ≤ 2^12; embedding homomorphism checks. Zero failures.
pub fn criterion_9(_budget: Budget) -> CriterionResult {
    run(9, "field-engine properties", |c| {
        let mut fields = 0;
        for p in 2u32..=256 {
            if !crate::field::poly::is_prime(p as u64) {
                continue;
            }
            let mut m = 1u32;
            while (p as u64).pow(m) <= 256 {
                let f = Field::new(p, m)?;
                let q = f.size();
                let mut ok = true;
                for a in 0..q {
                    ok &= f.add(a, 0) == a && f.mul(a, 1) == a;
                    ok &= f.add(a, f.neg(a)) == 0;
                    if a != 0 {
                        ok &= f.mul(a, f.inv(a)?) == 1;
                    }
                    for bb in 0..q {
                        let ab = f.add(a, bb);
                        let mab = f.mul(a, bb);
                        ok &= ab == f.add(bb, a) && mab == f.mul(bb, a);
                        for cc in 0..q {
                            ok &= f.add(ab, cc) == f.add(a, f.add(bb, cc));
                            ok &= f.mul(mab, cc) == f.mul(a, f.mul(bb, cc));
                            ok &= f.mul(a, f.add(bb, cc)) == f.add(mab, f.mul(a, cc));
                        }
                    }
                    if !ok {
                        break;
                    }
                }
                c.expect(ok, format!("axioms failed in F_{{{p}^{m}}}"));
                fields += 1;
                m += 1;
            }
        }
        c.note(format!("{fields} fields swept exhaustively"));
        // towers with q^{st} <= 2^12; (p, e, s, t) with q = p^e
        for (p, e, s, t) in [
            (2u32, 1u32, 2u32, 2u32),
            (2, 1, 2, 3),
            (2, 1, 3, 2),
            (2, 1, 2, 5),
            (2, 1, 3, 4),
            (2, 2, 2, 2),
            (3, 1, 2, 2),
            (3, 1, 2, 3),
            (3, 1, 3, 2),
            (5, 1, 2, 2),
            (7, 1, 2, 2),
        ] {
            let ctx = TowerContext::new(p, e, s, t, 1)?;
            let fq = ctx.f_q();
            let fqs = ctx.f_qs();
            let fqst = ctx.f_qst();
            // trace surjectivity and fiber sizes on both tower legs
            for (ext, top, base) in [
                (&ctx.ext_q_qs, fqs, fq),
                (&ctx.ext_qs_qst, fqst, fqs),
                (&ctx.ext_q_qst, fqst, fq),
            ] {
                let mut fibers = vec![0u64; base.size() as usize];
                for y in 0..top.size() {
                    fibers[ext.trace(y)? as usize] += 1;
                }
                let expect = (top.size() / base.size()) as u64;
                c.expect(
                    fibers.iter().all(|&f| f == expect),
                    format!("trace fibers wrong for {ext:?}"),
                );
                // embed . trace agrees with the in-top Frobenius sum
                for y in 0..top.size() {
                    let direct = {
                        let mut acc = 0u32;
                        let mut term = y;
                        for _ in 0..ext.degree() {
                            acc = top.add(acc, term);
                            term = top.pow(term, base.size() as u64);
                        }
                        acc
                    };
                    c.expect(
                        ext.embed(ext.trace(y)?) == direct,
                        format!("embed(trace) mismatch in {ext:?}"),
                    );
                }
            }
            // norm multiplicativity and fiber sizes (q^{st} over q^s)
            let ext = &ctx.ext_qs_qst;
            let mut fibers = vec![0u64; fqs.size() as usize];
            for y in 1..fqst.size() {
                fibers[ext.norm(y)? as usize] += 1;
            }
            let expect = ((fqst.size() as u64) - 1) / ((fqs.size() as u64) - 1);
            c.expect(fibers[0] == 0, "norm of a unit cannot be zero");
            c.expect(
                fibers[1..].iter().all(|&f| f == expect),
                format!("norm fibers wrong for tower q={} s={s} t={t}", ctx.q()),
            );
            for x in 0..fqst.size().min(64) {
                for y in 0..fqst.size().min(64) {
                    c.expect(
                        ext.norm(fqst.mul(x, y))?
                            == fqs.mul(ext.norm(x)?, ext.norm(y)?),
                        "norm not multiplicative",
                    );
                }
            }
            // embeddings are ring homomorphisms fixing the prime subfield
            for ext in [&ctx.ext_q_qs, &ctx.ext_qs_qst, &ctx.ext_q_qst] {
                let base = ext.base();
                let top = ext.top();
                let lim = base.size().min(64);
                for a in 0..lim {
                    for bb in 0..lim {
                        c.expect(
                            ext.embed(base.add(a, bb)) == top.add(ext.embed(a), ext.embed(bb)),
                            "embedding not additive",
                        );
                        c.expect(
                            ext.embed(base.mul(a, bb)) == top.mul(ext.embed(a), ext.embed(bb)),
                            "embedding not multiplicative",
                        );
                    }
                }
                for a in 0..base.characteristic() {
                    c.expect(
                        ext.embed(a) == a,
                        "prime subfield must embed as constants",
                    );
                }
            }
        }
        c.note("towers checked: trace/norm fibers, embeddings");
        Ok(())
    })
}

/// Runs the whole suite in order.
pub fn run_all(budget: Budget) -> Vec<CriterionResult> {
    vec![
        criterion_1(budget),
        criterion_2(budget),
        criterion_3(budget),
        criterion_4(budget),
        criterion_5(budget),
        criterion_6(budget),
        criterion_7(budget),
        criterion_8(budget),
        criterion_9(budget),
    ]
}

/// Runs one named criterion; names are `example-63`, `grid`,
/// `optimality-15`, `mathon`, `construction-a`, `weight-identity`,
/// `hyperplane-cap`, `nonlinearity`, `field-engine`.
pub fn run_named(name: &str, budget: Budget) -> Option<CriterionResult> {
    match name {
        "example-63" => Some(criterion_1(budget)),
        "grid" => Some(criterion_2(budget)),
        "optimality-15" => Some(criterion_3(budget)),
        "mathon" => Some(criterion_4(budget)),
        "construction-a" => Some(criterion_5(budget)),
        "weight-identity" => Some(criterion_6(budget)),
        "hyperplane-cap" => Some(criterion_7(budget)),
        "nonlinearity" => Some(criterion_8(budget)),
        "field-engine" => Some(criterion_9(budget)),
        _ => None,
    }
}

pub const CRITERION_NAMES: [&str; 9] = [
    "example-63",
    "grid",
    "optimality-15",
    "mathon",
    "construction-a",
    "weight-identity",
    "hyperplane-cap",
    "nonlinearity",
    "field-engine",
];
