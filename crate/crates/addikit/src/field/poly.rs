//! Polynomial arithmetic over F_p used to bootstrap extension fields:
//! irreducibility (Rabin's test), primitivity, and the canonical-modulus
//! search. Polynomials are coefficient vectors, little-endian, reduced mod p.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(c: &mut Vec<u32>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

pub fn deg(c: &[u32]) -> Option<usize> {
    c.iter().rposition(|&x| x != 0)
}

/// Remainder of `a` modulo the monic polynomial `f`, coefficients mod p.
pub fn rem(a: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let df = deg(f).expect("modulus must be nonzero");
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    while let Some(dr) = deg(&r) {
        if dr < df {
            break;
        }
        let lead = r[dr];
        let shift = dr - df;
        for i in 0..=df {
            let sub = (lead as u64 * f[i] as u64) % p as u64;
            let cur = r[shift + i] as u64;
            r[shift + i] = ((cur + p as u64 - sub) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

pub fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    rem(&prod, f, p)
}

pub fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut result = vec![1u32];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, f, p);
        }
        b = mulmod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, a != 0
    let mut result = 1u64;
    let mut b = a as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    result as u32
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // make b monic so `rem` applies
        let db = deg(&b).unwrap();
        let lead_inv = inv_mod_p(b[db], p);
        let monic: Vec<u32> = b
            .iter()
            .map(|&c| (c as u64 * lead_inv as u64 % p as u64) as u32)
            .collect();
        let r = rem(&a, &monic, p);
        a = b;
        b = r;
    }
    a
}

/// Rabin's irreducibility test for a monic polynomial of degree m over F_p:
/// x^(p^m) == x mod f, and gcd(x^(p^(m/r)) - x, f) = 1 for each prime r | m.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = match deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false; // divisible by x
    }
    let x = vec![0u32, 1];
    // t = x^(p^e) mod f computed by e successive p-th powers
    let frobenius_power = |e: usize| -> Vec<u32> {
        let mut t = x.clone();
        for _ in 0..e {
            t = powmod(&t, p as u64, f, p);
        }
        t
    };
    let xpm = frobenius_power(m);
    if xpm != x {
        return false;
    }
    for r in prime_factors(m as u64) {
        let t = frobenius_power(m / r as usize);
        // t - x
        let mut diff = t;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = gcd(&diff, f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Whether the class of x generates the multiplicative group of F_p[x]/(f).
/// `f` must already be irreducible of degree m ≥ 2.
pub fn is_primitive(f: &[u32], p: u32) -> bool {
    let m = deg(f).unwrap() as u32;
    let order = (p as u64).pow(m) - 1;
    let x = vec![0u32, 1];
    for r in prime_factors(order) {
        let t = powmod(&x, order / r, f, p);
        if t == vec![1u32] {
            return false;
        }
    }
    true
}

/// The canonical modulus for F_{p^m}: the monic irreducible primitive
/// polynomial whose coefficient list (constant term upward) is
/// lexicographically smallest. Degree 1 uses the trivial modulus x.
pub fn canonical_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    let m = m as usize;
    // Lex order on (c_0, ..., c_{m-1}) means c_0 varies slowest.
    let mut coeffs = vec![0u32; m];
    loop {
        // constant term 0 would make the candidate divisible by x
        if coeffs[0] != 0 {
            let mut f = coeffs.clone();
            f.push(1);
            if is_irreducible(&f, p) && is_primitive(&f, p) {
                return f;
            }
        }
        // odometer with c_{m-1} fastest
        let mut i = m;
        loop {
            if i == 0 {
                unreachable!("no primitive polynomial of degree {m} over F_{p}");
            }
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(127));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert_eq!(prime_factors(63), vec![3, 7]);
    }

    #[test]
    fn f4_modulus_is_unique_quadratic() {
        // x^2 + x + 1 is the only irreducible quadratic over F_2
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
    }

    #[test]
    fn f9_modulus_matches_exhaustive_search() {
        // independent oracle: scan all monic quadratics over F_3 in lex
        // order, testing irreducibility by root counting and primitivity by
        // direct order computation
        let p = 3u32;
        let mut best: Option<Vec<u32>> = None;
        'outer: for c0 in 0..p {
            for c1 in 0..p {
                let f = vec![c0, c1, 1];
                let has_root = (0..p)
                    .any(|x| (c0 as u64 + c1 as u64 * x as u64 + x as u64 * x as u64) % 3 == 0);
                if has_root {
                    continue;
                }
                // order of x in (F_9)* must be 8
                let mut t = vec![0u32, 1];
                let mut ord = 1;
                while t != vec![1u32] && ord <= 9 {
                    t = mulmod(&t, &[0, 1], &f, p);
                    ord += 1;
                }
                if t == vec![1u32] && ord == 8 {
                    best = Some(f);
                    break 'outer;
                }
            }
        }
        assert_eq!(canonical_modulus(3, 2), best.unwrap());
        assert_eq!(canonical_modulus(3, 2), vec![2, 1, 1]);
    }

    #[test]
    fn irreducibility_agrees_with_trial_division_small() {
        // all monic cubics over F_2 and F_3
        for p in [2u32, 3] {
            let total = p.pow(3);
            for enc in 0..total {
                let f = vec![enc % p, (enc / p) % p, (enc / p / p) % p, 1];
                // trial division by monic linears and the polynomial's roots
                let mut reducible = false;
                for r in 0..p {
                    let val = (f[0] as u64
                        + f[1] as u64 * r as u64
                        + f[2] as u64 * (r as u64).pow(2)
                        + (r as u64).pow(3))
                        % p as u64;
                    if val == 0 {
                        reducible = true;
                    }
                }
                assert_eq!(is_irreducible(&f, p), !reducible, "f={f:?} p={p}");
            }
        }
    }
}
