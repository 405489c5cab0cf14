//! Index bookkeeping: sorted tuples, sign-on-sort, binomials and shuffles.

use std::collections::HashMap;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All strictly increasing `k`-tuples drawn from `0..m`, in lexicographic order.
pub fn sorted_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// All `k`-tuples drawn from `0..m` (with repetition), lexicographic.
pub fn all_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Nondecreasing `k`-tuples drawn from `0..m`, lexicographic.
pub fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    all_tuples(m, k)
        .into_iter()
        .filter(|t| t.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// Sorts `idx` in place and returns the sign of the sorting permutation, or
/// `None` when an index repeats (the wedge vanishes).
pub fn sort_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    // insertion sort; tuples are short
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && idx[j - 1] == idx[j] {
            return None;
        }
    }
    for w in idx.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some(sign)
}

/// Dense ranking of the sorted `k`-subsets of `0..m`.
#[derive(Debug, Clone)]
pub struct TupleIndex {
    tuples: Vec<Vec<usize>>,
    rank: HashMap<Vec<usize>, usize>,
}

impl TupleIndex {
    pub fn new(m: usize, k: usize) -> Self {
        let tuples = sorted_tuples(m, k);
        let rank = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { tuples, rank }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Rank of an already sorted tuple.
    pub fn rank(&self, t: &[usize]) -> Option<usize> {
        self.rank.get(t).copied()
    }

    /// Rank and sign of an arbitrary tuple, `None` on repeated indices.
    pub fn rank_signed(&self, t: &[usize]) -> Option<(usize, i32)> {
        let mut s = t.to_vec();
        let sign = sort_sign(&mut s)?;
        self.rank(&s).map(|r| (r, sign))
    }
}

/// A `(k, q)`-shuffle: a permutation of `0..k+q` increasing on the first `k`
/// and on the last `q` positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shuffle {
    pub k: usize,
    pub q: usize,
    /// `perm[i]` is the image of position `i`.
    pub perm: Vec<usize>,
    pub sign: i32,
}

/// All `C(k+q, k)` shuffles with their parity signs, in lexicographic order
/// of the first block.
pub fn shuffles(k: usize, q: usize) -> Vec<Shuffle> {
    let total = k + q;
    sorted_tuples(total, k)
        .into_iter()
        .map(|first| {
            let mut rest = Vec::with_capacity(q);
            let mut j = 0;
            for i in 0..total {
                if j < first.len() && first[j] == i {
                    j += 1;
                } else {
                    rest.push(i);
                }
            }
            // inversions: each element of the first block passes over the
            // smaller elements of the second
            let inv: usize = first.iter().enumerate().map(|(pos, &v)| v - pos).sum();
            let mut perm = first;
            perm.extend(rest);
            Shuffle {
                k,
                q,
                perm,
                sign: if inv.is_multiple_of(2) { 1 } else { -1 },
            }
        })
        .collect()
}

/// Parity of an arbitrary permutation given as images.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
