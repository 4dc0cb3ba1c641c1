//! Brute-force cross-checks, independent of the greedy implementation paths
//! they certify: breadth-first minimization over automorphism sequences,
//! drill/fill roundtrips, and slide-stage comparisons.


use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::free_group::{CyclicWord, Letter};
use crate::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Minimal total length over the automorphism orbit, found by breadth-first
/// search through every type II Whitehead automorphism, never assuming the
/// peak-reduction theorem the greedy minimizer relies on. States are cyclic
/// word multisets of total length at most the starting length; the search
/// runs on a packed byte representation (letters as bit indices, Booth
/// canonical rotations) to keep each transition allocation-light.
pub fn exhaustive_min_length(set: &[CyclicWord], cap: usize) -> Result<usize> {
    let rank = set.first().map(CyclicWord::rank).unwrap_or(0);
    let images = type_ii_images(rank);
    let start = pack_state(set);
    let start_len: usize = start.iter().map(Vec::len).sum();
    let mut visited: std::collections::HashSet<Vec<u8>> = std::collections::HashSet::new();
    visited.insert(state_key(&start));
    let mut frontier = vec![start];
    let mut best = start_len;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for state in &frontier {
            for table in &images {
                let mut image: Vec<Vec<u8>> = Vec::with_capacity(state.len());
                let mut len = 0usize;
                for w in state {
                    let mapped = apply_packed(table, w);
                    len += mapped.len();
                    image.push(mapped);
                }
                if len > start_len {
                    continue;
                }
                image.sort();
                let key = state_key(&image);
                if visited.contains(&key) {
                    continue;
                }
                if visited.len() >= cap {
                    return Err(Error::CapExceeded {
                        what: "exhaustive minimization state count".into(),
                        cap,
                    });
                }
                best = best.min(len);
                visited.insert(key);
                next.push(image);
            }
        }
        frontier = next;
    }
    Ok(best)
}

fn pack_state(set: &[CyclicWord]) -> Vec<Vec<u8>> {
    let mut state: Vec<Vec<u8>> = set
        .iter()
        .map(|w| w.letters().iter().map(|l| l.bit() as u8).collect())
        .collect();
    state.sort();
    state
}

fn state_key(state: &[Vec<u8>]) -> Vec<u8> {
    let mut key = Vec::with_capacity(state.iter().map(|w| w.len() + 1).sum());
    for w in state {
        key.extend_from_slice(w);
        key.push(u8::MAX);
    }
    key
}

fn inv(bit: u8) -> u8 {
    bit ^ 1
}

/// letter-image tables of every type II automorphism
fn type_ii_images(rank: usize) -> Vec<Vec<Vec<u8>>> {
    let n = 2 * rank;
    let mut out = Vec::new();
    for a in 0..n as u8 {
        let others: Vec<u8> = (0..n as u8).filter(|&b| b != a && b != inv(a)).collect();
        for mask in 1u64..(1 << others.len()) {
            let mut in_set = vec![false; n];
            in_set[a as usize] = true;
            for (i, &b) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    in_set[b as usize] = true;
                }
            }
            let mut table: Vec<Vec<u8>> = Vec::with_capacity(n);
            for y in 0..n as u8 {
                if y == a || y == inv(a) {
                    table.push(vec![y]);
                } else {
                    table.push(match (in_set[y as usize], in_set[inv(y) as usize]) {
                        (true, false) => vec![y, a],
                        (false, true) => vec![inv(a), y],
                        (true, true) => vec![inv(a), y, a],
                        (false, false) => vec![y],
                    });
                }
            }
            out.push(table);
        }
    }
    out
}

/// apply a letter-image table to a packed cyclic word: substitute, freely and
/// cyclically reduce, then take the least rotation
fn apply_packed(table: &[Vec<u8>], w: &[u8]) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(w.len() * 2);
    for &l in w {
        for &m in &table[l as usize] {
            if out.last() == Some(&inv(m)) {
                out.pop();
            } else {
                out.push(m);
            }
        }
    }
    // cyclic reduction
    let mut start = 0usize;
    let mut end = out.len();
    while end > start + 1 && out[start] == inv(out[end - 1]) {
        start += 1;
        end -= 1;
    }
    least_rotation(&out[start..end])
}

/// Booth's algorithm for the lexicographically least rotation.
fn least_rotation(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    if n <= 1 {
        return w.to_vec();
    }
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = w[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && sj != w[(k + i as usize + 1) % n] {
            if sj < w[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        let cmp = w[(k + (i + 1) as usize) % n];
        if sj != cmp {
            if sj < cmp {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    (0..n).map(|i| w[(k + i) % n]).collect()
}

/// Deterministic sampler for random cyclically reduced word sets.
pub struct WordSampler {
    rng: ChaCha8Rng,
}

impl WordSampler {
    pub fn new(seed: u64) -> WordSampler {
        WordSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A random cyclically reduced nonempty word of length at most `max_len`.
    pub fn cyclic_word(&mut self, rank: usize, max_len: usize) -> CyclicWord {
        loop {
            let len = self.rng.gen_range(1..=max_len);
            let mut letters: Vec<Letter> = Vec::with_capacity(len);
            for _ in 0..len {
                loop {
                    let l = Letter::from_bit(self.rng.gen_range(0..2 * rank));
                    if letters.last() != Some(&l.inverse()) {
                        letters.push(l);
                        break;
                    }
                }
            }
            if letters.len() > 1 && letters[0] == letters[letters.len() - 1].inverse() {
                continue;
            }
            if let Ok(w) = CyclicWord::new(letters, rank) {
                return w;
            }
        }
    }

    /// A set of one or two words with total length at most `max_total`.
    pub fn word_set(&mut self, rank: usize, max_total: usize) -> Vec<CyclicWord> {
        let count = self.rng.gen_range(1..=2usize);
        let mut budget = max_total;
        let mut out = Vec::new();
        for i in 0..count {
            let remaining = count - i - 1;
            let max_len = budget.saturating_sub(remaining).max(1);
            let w = self.cyclic_word(rank, max_len);
            budget = budget.saturating_sub(w.len());
            out.push(w);
        }
        out
    }
}

/// Compare greedy minimization against the exhaustive search on `samples`
/// random word sets; returns the number of agreements.
pub fn minimize_agreement(
    rank: usize,
    max_total: usize,
    seed: u64,
    samples: usize,
    cap: usize,
) -> Result<usize> {
    let mut sampler = WordSampler::new(seed);
    let mut agree = 0;
    for _ in 0..samples {
        let set = sampler.word_set(rank, max_total);
        let greedy = crate::free_group::whitehead_minimize(&set)?;
        let greedy_len = crate::free_group::total_length(&greedy.words);
        let oracle_len = exhaustive_min_length(&set, cap)?;
        if greedy_len == oracle_len {
            agree += 1;
        }
    }
    Ok(agree)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str, rank: usize) -> CyclicWord {
        CyclicWord::parse(s, rank).unwrap()
    }

    #[test]
    fn exhaustive_matches_known_minima() {
        assert_eq!(exhaustive_min_length(&[cw("x2 x2 x2 X1", 2)], 100_000).unwrap(), 1);
        assert_eq!(exhaustive_min_length(&[cw("x1 x2 X1 X2", 2)], 100_000).unwrap(), 4);
        assert_eq!(
            exhaustive_min_length(&[cw("x1", 2), cw("x2", 2)], 100_000).unwrap(),
            2
        );
    }

    #[test]
    fn greedy_agrees_with_oracle_on_small_samples() {
        let agree = minimize_agreement(2, 8, 7, 40, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(agree, 40);
        let agree = minimize_agreement(3, 7, 11, 15, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(agree, 15);
    }
}
