use std::collections::HashMap;

use rayon::prelude::*;

/// Points of GF(p)^len as residue vectors, in lexicographic order.
pub(crate) fn all_vectors(p: u64, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p as u32).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonzero vectors whose first nonzero coordinate is 1.
pub(crate) fn projective_vectors(p: u64, len: usize) -> Vec<Vec<u32>> {
    all_vectors(p, len)
        .into_iter()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

pub(crate) fn nonzero_vectors(p: u64, len: usize) -> Vec<Vec<u32>> {
    all_vectors(p, len)
        .into_iter()
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// C(n, k), saturating.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

pub(crate) enum Outcome {
    /// Lexicographically least index set of the given size whose terms sum
    /// to the target.
    Found(Vec<usize>),
    /// No set of size ≤ `max_rank` works.
    NotWithin,
    /// Every size below `lower_bound` was ruled out before the combination
    /// budget ran out.
    OutOfBudget { lower_bound: usize },
}

struct Search<'a> {
    p: u32,
    candidates: &'a [Vec<u32>],
    lookup: HashMap<&'a [u32], usize>,
}

impl Search<'_> {
    fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + self.p - y) % self.p).collect()
    }

    /// Extends `chosen` by `depth` more increasing indices from `start`,
    /// then asks whether the residual is a single later candidate.
    fn dfs(&self, residual: &[u32], start: usize, depth: usize, chosen: &mut Vec<usize>) -> bool {
        if depth == 0 {
            return match self.lookup.get(residual) {
                Some(&i) if i >= start => {
                    chosen.push(i);
                    true
                }
                _ => false,
            };
        }
        for i in start..self.candidates.len() {
            let next = self.sub(residual, &self.candidates[i]);
            chosen.push(i);
            if self.dfs(&next, i + 1, depth - 1, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// Smallest set of distinct candidates summing to `target` (all vectors are
/// residues mod p of equal length).
pub(crate) fn subset_search(
    p: u64,
    target: &[u32],
    candidates: &[Vec<u32>],
    max_rank: usize,
    max_combinations: u64,
) -> Outcome {
    if target.iter().all(|&x| x == 0) {
        return Outcome::Found(Vec::new());
    }
    let mut lookup = HashMap::with_capacity(candidates.len());
    for (i, c) in candidates.iter().enumerate() {
        lookup.entry(c.as_slice()).or_insert(i);
    }
    let search = Search {
        p: p as u32,
        candidates,
        lookup,
    };
    for r in 1..=max_rank {
        if binomial(candidates.len(), r - 1) > max_combinations as u128 {
            return Outcome::OutOfBudget { lower_bound: r };
        }
        let found = if r == 1 {
            let mut chosen = Vec::new();
            search.dfs(target, 0, 0, &mut chosen).then_some(chosen)
        } else {
            (0..candidates.len()).into_par_iter().find_map_first(|i| {
                let mut chosen = vec![i];
                let residual = search.sub(target, &candidates[i]);
                search
                    .dfs(&residual, i + 1, r - 2, &mut chosen)
                    .then_some(chosen)
            })
        };
        if let Some(chosen) = found {
            return Outcome::Found(chosen);
        }
    }
    Outcome::NotWithin
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerations() {
        assert_eq!(all_vectors(3, 2).len(), 9);
        assert_eq!(projective_vectors(11, 2).len(), 12);
        assert_eq!(nonzero_vectors(2, 3).len(), 7);
        assert_eq!(binomial(63, 3), 39711);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn finds_least_subset() {
        let c = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        match subset_search(2, &[1, 1], &c, 3, 100) {
            Outcome::Found(s) => assert_eq!(s, vec![2]),
            _ => panic!(),
        }
        match subset_search(2, &[1, 0], &c[1..], 3, 100) {
            Outcome::Found(s) => assert_eq!(s, vec![0, 1]),
            _ => panic!(),
        }
    }
}
