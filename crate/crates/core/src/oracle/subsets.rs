//! Lexicographic k-subsets of `{0, ..., n-1}`.

/// `C(n, k)`, or `None` on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Streams the k-subsets of `{0, ..., n-1}` in lexicographic order, holding
/// one subset at a time.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
    remaining: Option<u128>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self {
            n,
            current,
            remaining: binomial(n as u64, k as u64),
        }
    }

    /// Starts at the subset of lexicographic rank `rank`; empty if out of range.
    pub fn starting_at(n: usize, k: usize, rank: u128) -> Self {
        let remaining = binomial(n as u64, k as u64).map(|b| b.saturating_sub(rank));
        Self {
            n,
            current: unrank(n, k, rank),
            remaining,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in (i + 1)..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        if let Some(r) = self.remaining.as_mut() {
            *r = r.saturating_sub(1);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        match self.remaining.and_then(|r| usize::try_from(r).ok()) {
            Some(r) => (r, Some(r)),
            None => (0, None),
        }
    }
}

/// The k-subset with lexicographic rank `rank`.
pub fn unrank(n: usize, k: usize, mut rank: u128) -> Option<Vec<usize>> {
    if k > n || rank >= binomial(n as u64, k as u64)? {
        return None;
    }
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        let left = k - slot - 1;
        loop {
            // subsets whose element at this slot is `next`
            let count = binomial((n - next - 1) as u64, left as u64)?;
            if rank < count {
                break;
            }
            rank -= count;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    Some(out)
}
