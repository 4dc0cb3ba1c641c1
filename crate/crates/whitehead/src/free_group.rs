//! Words in finite-rank free groups and Whitehead automorphisms.
//!
//! Generators of a rank-`g` free group are indexed `0..g` and rendered as
//! `x1,...,xg`; capital letters denote inverses, so `x2 x2 x2 X1` is
//! `x2^3 x1^-1`. All operations treat words as immutable values.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// A signed generator. Ordering is `x1 < X1 < x2 < X2 < ...`, which fixes the
/// enumeration order of automorphisms and therefore the greedy minimization.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    gen: usize,
    inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn gen(&self) -> usize {
        self.gen
    }

    pub fn is_inverse(&self) -> bool {
        self.inverse
    }

    pub fn inverse(&self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Index into `0..2*rank`: `x_i -> 2i`, `x_i^-1 -> 2i+1`.
    pub fn bit(&self) -> usize {
        2 * self.gen + usize::from(self.inverse)
    }

    pub fn from_bit(bit: usize) -> Letter {
        Letter { gen: bit / 2, inverse: bit % 2 == 1 }
    }

    fn check_rank(&self, rank: usize) -> Result<()> {
        if self.gen >= rank {
            Err(Error::GeneratorOutOfRange { index: self.gen + 1, rank })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "X{}", self.gen + 1)
        } else {
            write!(f, "x{}", self.gen + 1)
        }
    }
}

/// Parse a single token of the form `x3` or `X3`.
pub fn parse_letter(tok: &str) -> Result<Letter> {
    let mut chars = tok.chars();
    let head = chars.next().ok_or_else(|| Error::BadWordToken(tok.into()))?;
    let inverse = match head {
        'x' => false,
        'X' => true,
        _ => return Err(Error::BadWordToken(tok.into())),
    };
    let idx: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::BadWordToken(tok.into()))?;
    if idx == 0 {
        return Err(Error::BadWordToken(tok.into()));
    }
    Ok(Letter::new(idx - 1, inverse))
}

fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// A freely reduced word with an explicit ambient rank.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    letters: Vec<Letter>,
    rank: usize,
}

impl Word {
    /// Build a word from raw letters, performing free reduction.
    pub fn reduce(raw: impl IntoIterator<Item = Letter>, rank: usize) -> Result<Word> {
        let raw: Vec<Letter> = raw.into_iter().collect();
        for l in &raw {
            l.check_rank(rank)?;
        }
        Ok(Word { letters: free_reduce(raw), rank })
    }

    pub fn empty(rank: usize) -> Word {
        Word { letters: Vec::new(), rank }
    }

    pub fn parse(s: &str, rank: usize) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            letters.push(parse_letter(tok)?);
        }
        Word::reduce(letters, rank)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
            rank: self.rank,
        }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        Word::reduce(
            self.letters.iter().chain(other.letters.iter()).copied(),
            self.rank,
        )
    }
}

fn fmt_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.letters, f)
    }
}

/// A cyclically reduced word up to rotation. The stored representative is the
/// lexicographically least rotation, so equality is conjugacy of cyclic words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CyclicWord {
    letters: Vec<Letter>,
    rank: usize,
}

impl CyclicWord {
    /// Canonicalize a cyclically reduced letter sequence. Fails if the input
    /// is not cyclically reduced.
    pub fn new(letters: Vec<Letter>, rank: usize) -> Result<CyclicWord> {
        for l in &letters {
            l.check_rank(rank)?;
        }
        let w = free_reduce(letters.clone());
        if w != letters {
            return Err(Error::InvalidInput(format!(
                "not freely reduced: {}",
                Word { letters, rank }
            )));
        }
        if let (Some(first), Some(last)) = (letters.first(), letters.last()) {
            if letters.len() > 1 && *first == last.inverse() {
                return Err(Error::InvalidInput(format!(
                    "not cyclically reduced: {}",
                    Word { letters, rank }
                )));
            }
        }
        Ok(CyclicWord { letters: canonical_rotation(&letters), rank })
    }

    pub fn parse(s: &str, rank: usize) -> Result<CyclicWord> {
        let w = Word::parse(s, rank)?;
        Ok(cyclic_reduce(&w).0)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The same conjugacy class viewed in a larger ambient rank.
    pub fn embed(&self, rank: usize) -> Result<CyclicWord> {
        if rank < self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: rank });
        }
        Ok(CyclicWord { letters: self.letters.clone(), rank })
    }

    pub fn to_word(&self) -> Word {
        Word { letters: self.letters.clone(), rank: self.rank }
    }

    pub fn repeat(&self, n: usize) -> Result<CyclicWord> {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        CyclicWord::new(letters, self.rank)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_letters(&self.letters, f)
    }
}

fn canonical_rotation(letters: &[Letter]) -> Vec<Letter> {
    if letters.len() <= 1 {
        return letters.to_vec();
    }
    let n = letters.len();
    let mut best = 0usize;
    for start in 1..n {
        for k in 0..n {
            let a = letters[(start + k) % n];
            let b = letters[(best + k) % n];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    best = start;
                    break;
                }
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => continue,
            }
        }
    }
    (0..n).map(|k| letters[(best + k) % n]).collect()
}

/// Cyclic reduction: returns the cyclic word and a conjugator `c` with
/// `c * cyclic * c^-1 = w`.
pub fn cyclic_reduce(w: &Word) -> (CyclicWord, Word) {
    let mut letters = w.letters.clone();
    let mut conj: Vec<Letter> = Vec::new();
    while letters.len() > 1 && letters.first().unwrap().inverse() == *letters.last().unwrap() {
        conj.push(letters[0]);
        letters.remove(0);
        letters.pop();
    }
    (
        CyclicWord { letters: canonical_rotation(&letters), rank: w.rank },
        Word { letters: conj, rank: w.rank },
    )
}

/// A bitmask over the letters `0..2*rank`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub fn empty() -> LetterSet {
        LetterSet(0)
    }

    pub fn contains(&self, l: Letter) -> bool {
        self.0 >> l.bit() & 1 == 1
    }

    pub fn insert(&mut self, l: Letter) {
        self.0 |= 1 << l.bit();
    }

    pub fn remove(&mut self, l: Letter) {
        self.0 &= !(1 << l.bit());
    }

    pub fn iter(&self, rank: usize) -> impl Iterator<Item = Letter> + '_ {
        let bits = self.0;
        (0..2 * rank).filter_map(move |b| (bits >> b & 1 == 1).then(|| Letter::from_bit(b)))
    }
}

/// A Whitehead automorphism of the rank-`g` free group.
///
/// Type I permutes generators and inverts some of them. Type II is determined
/// by a multiplier letter `a` and a set `A` of letters with `a in A`,
/// `a^-1 not in A`; a letter `y in A` with `y^-1 not in A` maps to `y a`,
/// `y` with `y^-1 in A` (and `y not in A`) maps to `a^-1 y`, and letters with
/// both `y, y^-1 in A` are conjugated. This right-multiplication convention
/// is enforced by the inverse-roundtrip tests.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum WhiteheadAutomorphism {
    TypeI {
        rank: usize,
        /// generator `i` maps to `x_{perm[i]}` (possibly inverted)
        perm: Vec<usize>,
        invert: Vec<bool>,
    },
    TypeII {
        rank: usize,
        multiplier: Letter,
        affected: LetterSet,
    },
}

impl WhiteheadAutomorphism {
    pub fn type_i(perm: Vec<usize>, invert: Vec<bool>) -> Result<WhiteheadAutomorphism> {
        let rank = perm.len();
        if invert.len() != rank {
            return Err(Error::MalformedAutomorphism("perm/invert length mismatch".into()));
        }
        let mut seen = vec![false; rank];
        for &p in &perm {
            if p >= rank || seen[p] {
                return Err(Error::MalformedAutomorphism("perm is not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(WhiteheadAutomorphism::TypeI { rank, perm, invert })
    }

    /// Build a type II automorphism; the multiplier is inserted into the
    /// affected set, and the multiplier's inverse must not appear.
    pub fn type_ii(
        rank: usize,
        multiplier: Letter,
        affected: impl IntoIterator<Item = Letter>,
    ) -> Result<WhiteheadAutomorphism> {
        multiplier.check_rank(rank)?;
        let mut set = LetterSet::empty();
        set.insert(multiplier);
        for l in affected {
            l.check_rank(rank)?;
            set.insert(l);
        }
        if set.contains(multiplier.inverse()) {
            return Err(Error::MalformedAutomorphism(format!(
                "affected set contains both {multiplier} and its inverse"
            )));
        }
        Ok(WhiteheadAutomorphism::TypeII { rank, multiplier, affected: set })
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAutomorphism::TypeI { rank, .. } => *rank,
            WhiteheadAutomorphism::TypeII { rank, .. } => *rank,
        }
    }

    fn image(&self, y: Letter) -> Vec<Letter> {
        match self {
            WhiteheadAutomorphism::TypeI { perm, invert, .. } => {
                let l = Letter::new(perm[y.gen()], invert[y.gen()] ^ y.is_inverse());
                vec![l]
            }
            WhiteheadAutomorphism::TypeII { multiplier, affected, .. } => {
                let a = *multiplier;
                if y == a || y == a.inverse() {
                    return vec![y];
                }
                match (affected.contains(y), affected.contains(y.inverse())) {
                    (true, false) => vec![y, a],
                    (false, true) => vec![a.inverse(), y],
                    (true, true) => vec![a.inverse(), y, a],
                    (false, false) => vec![y],
                }
            }
        }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch { left: w.rank(), right: self.rank() });
        }
        Word::reduce(
            w.letters().iter().flat_map(|&l| self.image(l)),
            w.rank(),
        )
    }

    pub fn apply_cyclic(&self, w: &CyclicWord) -> Result<CyclicWord> {
        let lin = self.apply(&w.to_word())?;
        Ok(cyclic_reduce(&lin).0)
    }

    pub fn inverse(&self) -> WhiteheadAutomorphism {
        match self {
            WhiteheadAutomorphism::TypeI { rank, perm, invert } => {
                let mut iperm = vec![0; *rank];
                let mut iinv = vec![false; *rank];
                for i in 0..*rank {
                    iperm[perm[i]] = i;
                    iinv[perm[i]] = invert[i];
                }
                WhiteheadAutomorphism::TypeI { rank: *rank, perm: iperm, invert: iinv }
            }
            WhiteheadAutomorphism::TypeII { rank, multiplier, affected } => {
                let mut set = *affected;
                set.remove(*multiplier);
                set.insert(multiplier.inverse());
                WhiteheadAutomorphism::TypeII {
                    rank: *rank,
                    multiplier: multiplier.inverse(),
                    affected: set,
                }
            }
        }
    }

    /// Compact serializable description, e.g. `(a=x1, A={x1 x2})`.
    pub fn describe(&self) -> String {
        match self {
            WhiteheadAutomorphism::TypeI { rank, perm, invert } => {
                let images: Vec<String> = (0..*rank)
                    .map(|i| Letter::new(perm[i], invert[i]).to_string())
                    .collect();
                format!("typeI[{}]", images.join(" "))
            }
            WhiteheadAutomorphism::TypeII { rank, multiplier, affected } => {
                let set: Vec<String> =
                    affected.iter(*rank).map(|l| l.to_string()).collect();
                format!("(a={multiplier}, A={{{}}})", set.join(" "))
            }
        }
    }
}

impl fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// Apply a Whitehead automorphism to a word.
pub fn apply_automorphism(a: &WhiteheadAutomorphism, w: &Word) -> Result<Word> {
    a.apply(w)
}

pub fn total_length(set: &[CyclicWord]) -> usize {
    set.iter().map(CyclicWord::len).sum()
}

fn common_rank(set: &[CyclicWord]) -> Result<usize> {
    let rank = set.first().map(CyclicWord::rank).unwrap_or(0);
    for w in set {
        if w.rank() != rank {
            return Err(Error::RankMismatch { left: rank, right: w.rank() });
        }
    }
    Ok(rank)
}

/// All type II automorphisms of the given rank, in the fixed lexicographic
/// order: multiplier letter first, then the affected-set bitmask over the
/// remaining letters. The identity-like masks are skipped.
fn type_ii_in_order(rank: usize) -> impl Iterator<Item = WhiteheadAutomorphism> {
    let free: Vec<Vec<Letter>> = (0..2 * rank)
        .map(|bit| {
            let a = Letter::from_bit(bit);
            (0..2 * rank)
                .filter(|&b| b != a.bit() && b != a.inverse().bit())
                .map(Letter::from_bit)
                .collect()
        })
        .collect();
    (0..2 * rank).flat_map(move |bit| {
        let a = Letter::from_bit(bit);
        let others = free[bit].clone();
        let n = others.len();
        (1u64..(1 << n)).map(move |mask| {
            let affected = others
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l);
            WhiteheadAutomorphism::type_ii(rank, a, affected)
                .expect("enumeration produces well-formed automorphisms")
        })
    })
}

/// Result of the greedy Whitehead minimization.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub words: Vec<CyclicWord>,
    pub trace: Vec<WhiteheadAutomorphism>,
}

/// Greedy Whitehead minimization of a set of cyclic words: repeatedly apply
/// the first type II automorphism (in the fixed enumeration order) that
/// strictly decreases total length. By the Higgins-Lyndon peak reduction
/// theorem the descent terminates at the minimal total length of the orbit.
pub fn whitehead_minimize(set: &[CyclicWord]) -> Result<Minimized> {
    let rank = common_rank(set)?;
    let mut words: Vec<CyclicWord> = set.to_vec();
    let mut trace = Vec::new();
    'outer: loop {
        let current = total_length(&words);
        if current == 0 {
            break;
        }
        for aut in type_ii_in_order(rank) {
            let candidate: Vec<CyclicWord> = words
                .iter()
                .map(|w| aut.apply_cyclic(w))
                .collect::<Result<_>>()?;
            if total_length(&candidate) < current {
                words = candidate;
                trace.push(aut);
                continue 'outer;
            }
        }
        break;
    }
    Ok(Minimized { words, trace })
}

/// Replay an automorphism trace on a set of cyclic words.
pub fn replay(trace: &[WhiteheadAutomorphism], set: &[CyclicWord]) -> Result<Vec<CyclicWord>> {
    let mut words = set.to_vec();
    for aut in trace {
        words = words
            .iter()
            .map(|w| aut.apply_cyclic(w))
            .collect::<Result<_>>()?;
    }
    Ok(words)
}

/// Outcome of an (associated-)primitivity test, with a replayable witness.
#[derive(Clone, Debug, Serialize)]
pub struct Primitivity {
    pub primitive: bool,
    /// Automorphism descriptions sending the conjugacy classes of the input
    /// to the single generators in `images`.
    #[serde(skip)]
    pub trace: Vec<WhiteheadAutomorphism>,
    /// Final single-generator images (up to inversion), one per input word.
    pub images: Vec<String>,
    pub reason: String,
}

/// Decide whether the elements of `set` are associated primitive, i.e.
/// contained in a common basis of the rank-`rank` free group. True exactly
/// when minimization sends the conjugacy classes to pairwise distinct single
/// generators (up to inversion).
pub fn is_primitive_set(set: &[Word], rank: usize) -> Result<Primitivity> {
    if set.len() > rank {
        return Ok(Primitivity {
            primitive: false,
            trace: Vec::new(),
            images: Vec::new(),
            reason: format!("{} elements cannot embed in a basis of rank {rank}", set.len()),
        });
    }
    let mut cyclic = Vec::with_capacity(set.len());
    for w in set {
        if w.rank() != rank {
            return Err(Error::RankMismatch { left: w.rank(), right: rank });
        }
        let (c, _) = cyclic_reduce(w);
        if c.is_empty() {
            return Ok(Primitivity {
                primitive: false,
                trace: Vec::new(),
                images: Vec::new(),
                reason: "a trivial element is never primitive".into(),
            });
        }
        cyclic.push(c);
    }
    let min = whitehead_minimize(&cyclic)?;
    let mut gens = BTreeSet::new();
    let all_single = min.words.iter().all(|w| w.len() == 1);
    let distinct = min
        .words
        .iter()
        .filter(|w| w.len() == 1)
        .all(|w| gens.insert(w.letters()[0].gen()));
    if all_single && distinct {
        Ok(Primitivity {
            primitive: true,
            images: min.words.iter().map(|w| w.to_string()).collect(),
            trace: min.trace,
            reason: "minimization reaches distinct single generators".into(),
        })
    } else {
        let reason = if !all_single {
            format!(
                "minimal total length {} exceeds the element count",
                total_length(&min.words)
            )
        } else {
            "minimized images repeat a generator".into()
        };
        Ok(Primitivity {
            primitive: false,
            images: min.words.iter().map(|w| w.to_string()).collect(),
            trace: min.trace,
            reason,
        })
    }
}

/// Maximal root extraction: `w = root^n` with `n` maximal.
pub fn power_root(w: &CyclicWord) -> Result<(CyclicWord, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let n = w.len();
    let letters = w.letters();
    for t in 1..=n {
        if n % t != 0 {
            continue;
        }
        if (0..n).all(|i| letters[i] == letters[i % t]) {
            let root = CyclicWord::new(letters[..t].to_vec(), w.rank())?;
            return Ok((root, n / t));
        }
    }
    unreachable!("period n always matches");
}

/// Separability of a set of conjugacy classes across a free splitting:
/// minimize, then check whether the genuine Whitehead graph on all `2*rank`
/// vertices is disconnected (an untouched generator pair counts as its own
/// components). Sound and complete at minimal length.
pub fn is_separable(set: &[CyclicWord], rank: usize) -> Result<bool> {
    for w in set {
        if w.rank() != rank {
            return Err(Error::RankMismatch { left: w.rank(), right: rank });
        }
    }
    let nonempty: Vec<CyclicWord> = set.iter().filter(|w| !w.is_empty()).cloned().collect();
    if nonempty.is_empty() {
        return Ok(rank >= 2);
    }
    let min = whitehead_minimize(&nonempty)?;
    let graph = crate::graph::genuine_graph_unlabeled(&min.words, rank)?;
    Ok(graph.component_count() > 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, rank: usize) -> Word {
        Word::parse(s, rank).unwrap()
    }

    fn cw(s: &str, rank: usize) -> CyclicWord {
        CyclicWord::parse(s, rank).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w("x1 X1", 2).is_empty());
        assert_eq!(w("x2 x2 X1", 2).to_string(), "x2 x2 X1");
        assert_eq!(w("x1 x2 X2 x1", 2).to_string(), "x1 x1");
    }

    #[test]
    fn reduce_is_idempotent_and_checks_rank() {
        let once = w("x1 x2 X2 x1", 2);
        let twice = Word::reduce(once.letters().to_vec(), 2).unwrap();
        assert_eq!(once, twice);
        assert!(Word::parse("x3", 2).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, conj) = cyclic_reduce(&w("x1 x2 X1", 2));
        assert_eq!(c.to_string(), "x2");
        assert_eq!(conj.to_string(), "x1");
        let (c, conj) = cyclic_reduce(&w("x2 x2 X1", 2));
        assert_eq!(c.len(), 3);
        assert!(conj.is_empty());
        let (c, conj) = cyclic_reduce(&Word::empty(2));
        assert!(c.is_empty() && conj.is_empty());
        // conjugator * cyclic * conjugator^-1 recovers the input
        let input = w("x1 x2 x1 X2 X1", 2);
        let (c, conj) = cyclic_reduce(&input);
        let back = conj.concat(&c.to_word()).unwrap().concat(&conj.inverse()).unwrap();
        assert_eq!(back, input);
    }

    #[test]
    fn canonical_rotation_is_rotation_invariant() {
        let a = CyclicWord::new(w("x1 x2 x2", 2).letters().to_vec(), 2).unwrap();
        let b = CyclicWord::new(w("x2 x2 x1", 2).letters().to_vec(), 2).unwrap();
        let c = CyclicWord::new(w("x2 x1 x2", 2).letters().to_vec(), 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(b, c);
    }

    #[test]
    fn type_i_swap() {
        let swap = WhiteheadAutomorphism::type_i(vec![1, 0], vec![false, false]).unwrap();
        assert_eq!(swap.apply(&w("x1 x2", 2)).unwrap().to_string(), "x2 x1");
    }

    #[test]
    fn type_ii_right_multiplication() {
        // (a=x1, A={x2}): x2 -> x2 x1
        let a = WhiteheadAutomorphism::type_ii(
            2,
            Letter::new(0, false),
            [Letter::new(1, false)],
        )
        .unwrap();
        assert_eq!(a.apply(&w("x2", 2)).unwrap().to_string(), "x2 x1");
        assert_eq!(a.apply(&Word::empty(2)).unwrap(), Word::empty(2));
    }

    #[test]
    fn automorphisms_invert() {
        let auts: Vec<WhiteheadAutomorphism> = type_ii_in_order(3).collect();
        let sample = w("x1 x2 X3 x2 x2 X1", 3);
        for a in auts.iter().step_by(7) {
            let round = a.inverse().apply(&a.apply(&sample).unwrap()).unwrap();
            assert_eq!(round, sample, "failed for {a}");
        }
        let swap = WhiteheadAutomorphism::type_i(vec![2, 0, 1], vec![true, false, true]).unwrap();
        let round = swap.inverse().apply(&swap.apply(&sample).unwrap()).unwrap();
        assert_eq!(round, sample);
    }

    #[test]
    fn minimize_spec_examples() {
        // x2^3 x1^-1 is primitive: minimal total length 1
        let m = whitehead_minimize(&[cw("x2 x2 x2 X1", 2)]).unwrap();
        assert_eq!(total_length(&m.words), 1);
        // replaying the trace reproduces the minimized set
        let replayed = replay(&m.trace, &[cw("x2 x2 x2 X1", 2)]).unwrap();
        assert_eq!(replayed, m.words);

        // already minimal sets are unchanged
        let basis = [cw("x1", 2), cw("x2", 2)];
        let m = whitehead_minimize(&basis).unwrap();
        assert_eq!(m.words, basis.to_vec());
        assert!(m.trace.is_empty());

        // the commutator is Whitehead-minimal at length 4
        let m = whitehead_minimize(&[cw("x1 x2 X1 X2", 2)]).unwrap();
        assert_eq!(total_length(&m.words), 4);
        assert!(m.trace.is_empty());
    }

    #[test]
    fn minimize_is_monotone() {
        let start = vec![cw("x2 x2 x2 X1", 2), cw("x1 x1 x2", 2)];
        let m = whitehead_minimize(&start).unwrap();
        let mut words = start.clone();
        let mut last = total_length(&words);
        for aut in &m.trace {
            words = words.iter().map(|w| aut.apply_cyclic(w).unwrap()).collect();
            let now = total_length(&words);
            assert!(now < last);
            last = now;
        }
        assert_eq!(words, m.words);
    }

    #[test]
    fn primitivity_spec_examples() {
        // pretzel P(3,5,5) curve with its companion: a basis
        let p = is_primitive_set(&[w("x2 x2 x2 X1", 2), w("x2", 2)], 2).unwrap();
        assert!(p.primitive);
        // proper powers are never primitive
        let p = is_primitive_set(&[w("x1 x1", 2)], 2).unwrap();
        assert!(!p.primitive);
        let p = is_primitive_set(&[w("x1", 3), w("x2", 3), w("x3", 3)], 3).unwrap();
        assert!(p.primitive);
        // too many elements
        let p = is_primitive_set(&[w("x1", 1), w("x1", 1)], 1).unwrap();
        assert!(!p.primitive);
    }

    #[test]
    fn primitivity_invariant_under_conjugation_and_inversion() {
        let base = w("x2 x2 x2 X1", 2);
        let conj = w("x1 x2", 2)
            .concat(&base)
            .unwrap()
            .concat(&w("x1 x2", 2).inverse())
            .unwrap();
        for cand in [base.clone(), conj, base.inverse()] {
            assert!(is_primitive_set(&[cand], 2).unwrap().primitive);
        }
    }

    #[test]
    fn primitive_witness_replays() {
        let p = is_primitive_set(&[w("x2 x2 x2 X1", 2), w("x2", 2)], 2).unwrap();
        assert!(p.primitive);
        let start = [cw("x2 x2 x2 X1", 2), cw("x2", 2)];
        let end = replay(&p.trace, &start).unwrap();
        assert!(end.iter().all(|w| w.len() == 1));
        let gens: BTreeSet<usize> = end.iter().map(|w| w.letters()[0].gen()).collect();
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn power_root_examples() {
        let (root, n) = power_root(&cw("x2 x1 x2 x1 x2 x1", 2)).unwrap();
        assert_eq!((root.to_string().as_str(), n), ("x1 x2", 3));
        let (root, n) = power_root(&cw("x2 x2 X1", 2)).unwrap();
        assert_eq!((root.len(), n), (3, 1));
        let (root, n) = power_root(&cw("x1 x1 x1 x1", 2)).unwrap();
        assert_eq!((root.to_string().as_str(), n), ("x1", 4));
        assert!(power_root(&CyclicWord::new(vec![], 2).unwrap()).is_err());
    }

    #[test]
    fn separability_spec_examples() {
        assert!(is_separable(&[cw("x1", 2)], 2).unwrap());
        assert!(!is_separable(&[cw("x1 x2 X1 X2", 2)], 2).unwrap());
        for n in 1..=6 {
            let word = cw("x1", 2).repeat(n).unwrap();
            assert!(is_separable(&[word], 2).unwrap(), "x1^{n} should be separable");
        }
        // rank 1 admits no nontrivial splitting
        assert!(!is_separable(&[cw("x1", 1)], 1).unwrap());
    }
}
