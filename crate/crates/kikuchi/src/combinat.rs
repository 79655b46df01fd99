//! Exact combinatorics: binomials, multinomials, subset ranking and the
//! moment formulas used by the trace oracles.
//!
//! Subset indexing is colexicographic (combinadic). The rank of a k-subset
//! `{s_0 < s_1 < ... < s_{k-1}}` is `sum_i C(s_i, i+1)`, which does not
//! depend on the ambient dimension. Unranking is greedy from the largest
//! element and needs no precomputed tables.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Exact binomial coefficient C(n, k). Returns 0 when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * BigUint::from(n - k + i) / BigUint::from(i);
    }
    acc
}

/// C(n, k) in machine-word arithmetic. Panics on overflow; intended for the
/// index computations where results are vector dimensions, not counts of walks.
pub fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc
            .checked_mul((n - k + i) as u128)
            .expect("binomial overflow") / i as u128;
    }
    usize::try_from(acc).expect("binomial exceeds usize")
}

/// Exact multinomial coefficient n! / prod(parts!). The parts must sum to n.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigUint, CombinatError> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(CombinatError::InvalidArgument(format!(
            "multinomial parts sum to {total}, expected {n}"
        )));
    }
    let mut acc = BigUint::one();
    let mut remaining = n;
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

/// E[g^t] for g standard normal: 0 for odd t, (t-1)!! for even t.
pub fn gaussian_moment(t: u64) -> BigUint {
    if t % 2 == 1 {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    let mut f = 1u64;
    while f < t {
        acc *= BigUint::from(f);
        f += 2;
    }
    acc
}

/// E[g^t] for g uniform on {-1, +1}: 1 for even t (including t = 0), 0 otherwise.
pub fn rademacher_moment(t: u64) -> BigUint {
    if t % 2 == 0 {
        BigUint::one()
    } else {
        BigUint::zero()
    }
}

/// A k-subset of {0, .., n-1} with strictly increasing elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    elements: Vec<usize>,
    n: usize,
}

impl Subset {
    /// Builds a subset, validating that elements are strictly increasing and in [0, n).
    pub fn new(elements: Vec<usize>, n: usize) -> Result<Self, CombinatError> {
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(CombinatError::InvalidArgument(format!(
                    "elements not strictly increasing: {:?}",
                    elements
                )));
            }
        }
        if let Some(&last) = elements.last() {
            if last >= n {
                return Err(CombinatError::InvalidArgument(format!(
                    "element {last} out of range [0, {n})"
                )));
            }
        }
        Ok(Subset { elements, n })
    }

    /// Builds a subset from elements in any order; duplicates are an error.
    pub fn from_unsorted(mut elements: Vec<usize>, n: usize) -> Result<Self, CombinatError> {
        elements.sort_unstable();
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(CombinatError::InvalidArgument(format!(
                "duplicate element in {:?}",
                elements
            )));
        }
        Subset::new(elements, n)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank(&self) -> usize {
        rank_elements(&self.elements)
    }
}

/// Colex rank of a sorted element slice: sum_i C(s_i, i+1).
pub fn rank_elements(sorted: &[usize]) -> usize {
    let mut rank = 0usize;
    for (i, &s) in sorted.iter().enumerate() {
        rank += binomial_usize(s, i + 1);
    }
    rank
}

/// Colex rank of a subset.
pub fn rank_subset(s: &Subset) -> usize {
    s.rank()
}

/// Inverse of `rank_subset`: the k-subset of {0, .., n-1} with the given colex rank.
pub fn unrank_subset(idx: usize, k: usize, n: usize) -> Result<Subset, CombinatError> {
    let total = binomial_usize(n, k);
    if idx >= total {
        return Err(CombinatError::InvalidArgument(format!(
            "rank {idx} out of range [0, {total}) for C({n},{k})"
        )));
    }
    let mut elements = vec![0usize; k];
    let mut rem = idx;
    let mut hi = n;
    for pos in (1..=k).rev() {
        let mut c = hi - 1;
        while binomial_usize(c, pos) > rem {
            c -= 1;
        }
        rem -= binomial_usize(c, pos);
        elements[pos - 1] = c;
        hi = c;
    }
    Subset::new(elements, n)
}

/// Flat Pascal table up to (max_n, max_k), for the hot indexing paths.
#[derive(Debug, Clone)]
pub struct BinomTable {
    max_n: usize,
    max_k: usize,
    table: Vec<usize>,
}

impl BinomTable {
    pub fn new(max_n: usize, max_k: usize) -> Self {
        let w = max_k + 1;
        let mut table = vec![0usize; (max_n + 1) * w];
        for n in 0..=max_n {
            table[n * w] = 1;
            for k in 1..=max_k.min(n) {
                let above = table[(n - 1) * w + k];
                let diag = table[(n - 1) * w + k - 1];
                table[n * w + k] = above.checked_add(diag).expect("BinomTable overflow");
            }
        }
        BinomTable { max_n, max_k, table }
    }

    #[inline(always)]
    pub fn get(&self, n: usize, k: usize) -> usize {
        debug_assert!(n <= self.max_n && k <= self.max_k);
        self.table[n * (self.max_k + 1) + k]
    }

    /// Colex rank of a sorted element slice using table lookups.
    #[inline(always)]
    pub fn rank(&self, sorted: &[usize]) -> usize {
        let mut rank = 0usize;
        for (i, &s) in sorted.iter().enumerate() {
            if s >= i + 1 {
                rank += self.get(s, i + 1);
            }
        }
        rank
    }
}

/// Visits all k-subsets of `pool` (a sorted slice), reusing one scratch buffer.
/// The visitor receives the chosen elements in increasing order.
pub fn for_each_combination<F: FnMut(&[usize])>(pool: &[usize], k: usize, mut visit: F) {
    let n = pool.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut chosen: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    if k == 0 {
        visit(&chosen);
        return;
    }
    loop {
        visit(&chosen);
        // Advance the index vector in lexicographic order.
        let mut i = k - 1;
        while idx[i] == i + n - k {
            if i == 0 {
                return;
            }
            i -= 1;
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..k {
            chosen[j] = pool[idx[j]];
        }
    }
}
