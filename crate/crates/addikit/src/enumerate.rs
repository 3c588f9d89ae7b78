//! Deterministic enumeration helpers: projective representatives of F_q^k,
//! RREF canonical forms of j-dimensional subspaces, and counting utilities.
//! All orders are fixed so re-runs (and partitioned parallel runs) agree.

/// Representatives of the 1-dimensional subspaces of F_q^k: vectors whose
/// first nonzero coordinate is 1, indexable for chunked scans.
///
/// Representative `i` is decoded as: pivot position `piv` such that the
/// vector is 0 before `piv`, 1 at `piv`, and the remaining k-piv-1
/// coordinates are the base-q digits of the local index (first following
/// coordinate varies slowest).
pub struct ProjectiveReps {
    k: usize,
    q: u64,
    counts: Vec<u64>,
    total: u64,
}

impl ProjectiveReps {
    pub fn new(k: usize, q: u64) -> Self {
        let counts: Vec<u64> = (0..k).map(|i| q.pow((k - 1 - i) as u32)).collect();
        let total = counts.iter().sum();
        ProjectiveReps { k, q, counts, total }
    }

    /// (q^k - 1) / (q - 1)
    pub fn count(&self) -> u64 {
        self.total
    }

    /// Writes representative `idx` into `out` (length k).
    pub fn decode(&self, mut idx: u64, out: &mut [u32]) {
        debug_assert_eq!(out.len(), self.k);
        out.fill(0);
        let mut piv = 0;
        while idx >= self.counts[piv] {
            idx -= self.counts[piv];
            piv += 1;
        }
        out[piv] = 1;
        // digits of idx, last coordinate fastest
        for pos in (piv + 1..self.k).rev() {
            out[pos] = (idx % self.q) as u32;
            idx /= self.q;
        }
    }
}

/// All vectors of F_q^k in odometer order (last coordinate fastest),
/// including zero.
pub struct VectorReps {
    k: usize,
    q: u64,
    total: u64,
}

impl VectorReps {
    pub fn new(k: usize, q: u64) -> Self {
        VectorReps {
            k,
            q,
            total: q.pow(k as u32),
        }
    }

    pub fn count(&self) -> u64 {
        self.total
    }

    pub fn decode(&self, mut idx: u64, out: &mut [u32]) {
        debug_assert_eq!(out.len(), self.k);
        for pos in (0..self.k).rev() {
            out[pos] = (idx % self.q) as u32;
            idx /= self.q;
        }
    }
}

/// Gaussian binomial [k choose j]_q; None on overflow.
pub fn gaussian_binomial(k: usize, j: usize, q: u64) -> Option<u128> {
    if j > k {
        return Some(0);
    }
    // product of (q^(k-i) - 1) / (q^(i+1) - 1); compute as exact integer by
    // alternating multiply/divide over the q-factorial form
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..j {
        num = num.checked_mul((q as u128).checked_pow((k - i) as u32)? - 1)?;
        den = den.checked_mul((q as u128).checked_pow((i + 1) as u32)? - 1)?;
    }
    Some(num / den)
}

/// Visits every j-dimensional subspace of F_q^k exactly once, as the rows of
/// its canonical RREF basis matrix. Pivot-column sets are visited in
/// lexicographic order; free entries odometer with the last free slot
/// fastest. The callback may return `false` to stop early.
pub fn for_each_rref_subspace<F>(k: usize, j: usize, q: u64, mut visit: F)
where
    F: FnMut(&[Vec<u32>]) -> bool,
{
    if j == 0 || j > k {
        return;
    }
    let mut pivots: Vec<usize> = (0..j).collect();
    loop {
        // free positions: (row, col) with col > pivots[row], col not a pivot
        let mut free = Vec::new();
        for (row, &p) in pivots.iter().enumerate() {
            for col in p + 1..k {
                if !pivots.contains(&col) {
                    free.push((row, col));
                }
            }
        }
        let mut basis = vec![vec![0u32; k]; j];
        for (row, &p) in pivots.iter().enumerate() {
            basis[row][p] = 1;
        }
        let mut vals = vec![0u32; free.len()];
        loop {
            for (slot, &(row, col)) in free.iter().enumerate() {
                basis[row][col] = vals[slot];
            }
            if !visit(&basis) {
                return;
            }
            // odometer
            let mut slot = free.len();
            loop {
                if slot == 0 {
                    break;
                }
                slot -= 1;
                vals[slot] += 1;
                if (vals[slot] as u64) < q {
                    break;
                }
                vals[slot] = 0;
            }
            if vals.iter().all(|&v| v == 0) {
                break;
            }
        }
        // next pivot combination in lexicographic order
        let mut i = j;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] + 1 <= k - (j - i) {
                pivots[i] += 1;
                for l in i + 1..j {
                    pivots[l] = pivots[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Visits index subsets of `{0..n}` of exactly `size` in lexicographic
/// order; the callback may return `false` to stop early.
pub fn for_each_subset<F>(n: usize, size: usize, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    if size == 0 || size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        let mut i = size;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 <= n - (size - i) {
                idx[i] += 1;
                for l in i + 1..size {
                    idx[l] = idx[l - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Splits `0..total` into `jobs` contiguous chunks, maps each chunk on its
/// own thread, and folds the results in chunk order, so the outcome is
/// identical for every `jobs` value.
pub fn chunked_min<F>(total: u64, jobs: usize, eval: F) -> Option<u64>
where
    F: Fn(std::ops::Range<u64>) -> Option<u64> + Sync,
{
    let jobs = jobs.max(1).min(total.max(1) as usize);
    if jobs == 1 {
        return eval(0..total);
    }
    let chunk = total.div_ceil(jobs as u64);
    let ranges: Vec<_> = (0..jobs as u64)
        .map(|i| (i * chunk)..((i + 1) * chunk).min(total))
        .collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| scope.spawn(|| eval(r)))
            .collect();
        handles
            .into_iter()
            .filter_map(|h| h.join().expect("enumeration worker panicked"))
            .min()
    })
}
