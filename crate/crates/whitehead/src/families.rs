//! Knot family generators and classifiers: rational knots encoded by even
//! continued fractions `[2b1,...,2bg]` and pretzel knots `P(p,q,r)` with odd
//! parameters, producing spine words, full Whitehead diagrams, and handle
//! reports.

use std::collections::BTreeMap;

use crate::diagram::{Crossing, Diagram, EndRef};
use crate::free_group::{is_primitive_set, CyclicWord, Letter, Word};
use crate::handle_search::{
    decide, Assumptions, DecideOptions, Fibered, HandleReport, Witness,
};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// rational knots

/// A rational knot or 2-component link `[2b1, 2b2, ..., 2bg]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalKnot {
    coefficients: Vec<i64>,
}

impl RationalKnot {
    /// From the halved coefficients `b1..bg`, all nonzero.
    pub fn new(b: Vec<i64>) -> Result<RationalKnot> {
        if b.is_empty() {
            return Err(Error::InvalidInput("need at least one coefficient".into()));
        }
        if b.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput("all coefficients must be nonzero".into()));
        }
        Ok(RationalKnot { coefficients: b })
    }

    /// From the even continued fraction entries `2b1..2bg`.
    pub fn from_even(c: &[i64]) -> Result<RationalKnot> {
        let b: Vec<i64> = c
            .iter()
            .map(|&x| {
                if x == 0 || x % 2 != 0 {
                    Err(Error::InvalidInput(format!("coefficient {x} is not even and nonzero")))
                } else {
                    Ok(x / 2)
                }
            })
            .collect::<Result<_>>()?;
        RationalKnot::new(b)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn genus_count(&self) -> usize {
        self.coefficients.len()
    }

    /// The knot is connected exactly when the coefficient count is even.
    pub fn is_connected(&self) -> bool {
        self.coefficients.len() % 2 == 0
    }
}

fn power_word(gen: usize, exp: i64, rank: usize) -> Result<Word> {
    let letter = Letter::new(gen, exp < 0);
    Word::reduce(std::iter::repeat(letter).take(exp.unsigned_abs() as usize), rank)
}

/// Spine words of the rational template: `a1 = x1^b1`, `ai = xi^bi x_{i-1}`.
pub fn rational_spine(k: &RationalKnot) -> Result<Vec<(String, CyclicWord)>> {
    let g = k.genus_count();
    let mut out = Vec::with_capacity(g);
    for (i, &b) in k.coefficients.iter().enumerate() {
        let mut w = power_word(i, b, g)?;
        if i > 0 {
            w = w.concat(&Word::reduce([Letter::new(i - 1, false)], g)?)?;
        }
        out.push((format!("a{}", i + 1), crate::free_group::cyclic_reduce(&w).0));
    }
    Ok(out)
}

/// Classify a rational knot: fibered exactly when every `|bi| = 1`; otherwise
/// handle number one, witnessed by the associated-primitive curves
/// `a2, ..., ag`, with `cw = 2g` for connected knots and `2g + 1` otherwise.
pub fn rational_classify(k: &RationalKnot) -> Result<HandleReport> {
    let g = k.genus_count();
    let words = rational_spine(k)?;
    let as_words: Vec<Word> = words.iter().map(|(_, w)| w.to_word()).collect();
    let mut notes = vec![
        "the twisted-band surface of the even continued fraction is free and of minimal genus"
            .to_string(),
    ];
    let full = is_primitive_set(&as_words, g)?;
    let all_units = k.coefficients.iter().all(|&b| b.abs() == 1);
    if full.primitive != all_units {
        return Err(Error::InvalidInput(
            "basis test disagrees with the unit-coefficient criterion".into(),
        ));
    }
    if full.primitive {
        return Ok(HandleReport {
            fibered: Fibered::Yes {
                trace: full.trace.iter().map(|a| a.describe()).collect(),
                images: full.images.clone(),
            },
            h_lower: 0,
            h_upper: 0,
            h: Some(0),
            cw: None,
            cw_note: Some("fibered: no handles, width not defined".into()),
            witness: Some(Witness::SpineBasis {
                trace: full.trace.iter().map(|a| a.describe()).collect(),
                images: full.images,
            }),
            assumptions: notes,
            per_arc: Vec::new(),
        });
    }

    // the curves a2..ag are associated primitive: {xg, x2^b2 x1, ...} is a basis
    let tail: Vec<Word> = as_words[1..].to_vec();
    let prim = if tail.is_empty() {
        None
    } else {
        let p = is_primitive_set(&tail, g)?;
        if !p.primitive {
            return Err(Error::InvalidInput(
                "expected a2..ag to be associated primitive".into(),
            ));
        }
        Some(p)
    };
    notes.push("a knot of this family with some |bi| >= 2 is not fibered".into());
    let cw = if k.is_connected() { 2 * g as u32 } else { 2 * g as u32 + 1 };
    Ok(HandleReport {
        fibered: Fibered::No {
            assumption: "non-fiberedness of the non-unit coefficient case".into(),
        },
        h_lower: 1,
        h_upper: 1,
        h: Some(1),
        cw: Some(cw),
        cw_note: Some(if k.is_connected() {
            "connected: cw = 2g".into()
        } else {
            "two components: cw = 2g + 1".into()
        }),
        witness: prim.map(|p| Witness::PrimitiveSubset {
            curves: (2..=g).map(|i| format!("a{i}")).collect(),
            trace: p.trace.iter().map(|a| a.describe()).collect(),
            images: p.images,
        }),
        assumptions: notes,
        per_arc: Vec::new(),
    })
}

// ---------------------------------------------------------------------------
// pretzel knots

/// Sign case of a normalized pretzel knot.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PretzelCase {
    /// all parameters positive
    Positive,
    /// first parameter negative, the others positive
    OneNegative,
}

/// A normalized pretzel knot `P(p,q,r)`: parameters odd with absolute value
/// at least 3, at most one negative (listed first), positives ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretzelKnot {
    p: i64,
    q: i64,
    r: i64,
    case: PretzelCase,
}

/// Normalize via permutations and the global reflection
/// `P(p,q,r) ~ P(-p,-q,-r)`.
pub fn pretzel_normalize(p: i64, q: i64, r: i64) -> Result<PretzelKnot> {
    for v in [p, q, r] {
        if v.abs() < 3 {
            return Err(Error::InvalidInput(format!("parameter {v} has |.| < 3")));
        }
        if v % 2 == 0 {
            return Err(Error::InvalidInput(format!("parameter {v} is even")));
        }
    }
    let mut params = [p, q, r];
    let negatives = params.iter().filter(|&&v| v < 0).count();
    if negatives >= 2 {
        for v in &mut params {
            *v = -*v;
        }
    }
    let negatives = params.iter().filter(|&&v| v < 0).count();
    match negatives {
        0 => {
            params.sort_unstable();
            Ok(PretzelKnot {
                p: params[0],
                q: params[1],
                r: params[2],
                case: PretzelCase::Positive,
            })
        }
        1 => {
            let neg = *params.iter().find(|&&v| v < 0).unwrap();
            let mut pos: Vec<i64> = params.iter().copied().filter(|&v| v > 0).collect();
            pos.sort_unstable();
            Ok(PretzelKnot { p: neg, q: pos[0], r: pos[1], case: PretzelCase::OneNegative })
        }
        _ => unreachable!("reflection leaves at most one negative"),
    }
}

impl PretzelKnot {
    pub fn params(&self) -> (i64, i64, i64) {
        (self.p, self.q, self.r)
    }

    pub fn case(&self) -> PretzelCase {
        self.case
    }
}

/// Spine words on the rank-2 handlebody.
///
/// Positive case: `a1 = x2^((r+1)/2) x1^(-(p-1)/2)`,
/// `a2 = x1^((p+1)/2) (x2 x1)^((q-1)/2)`.
/// One-negative case (`P = |p|`): `a1 = x2^((r+1)/2) x1^((P+1)/2)`,
/// `a2 = x1^(-(P-3)/2) (x2 x1)^((q-3)/2) x2`.
pub fn pretzel_spine(k: &PretzelKnot) -> Result<Vec<(String, CyclicWord)>> {
    let (p, q, r) = (k.p, k.q, k.r);
    let (a1, a2) = match k.case {
        PretzelCase::Positive => {
            let a1 = power_word(1, (r + 1) / 2, 2)?.concat(&power_word(0, -(p - 1) / 2, 2)?)?;
            let mut a2 = power_word(0, (p + 1) / 2, 2)?;
            for _ in 0..(q - 1) / 2 {
                a2 = a2.concat(&Word::parse("x2 x1", 2)?)?;
            }
            (a1, a2)
        }
        PretzelCase::OneNegative => {
            let pp = p.abs();
            let a1 = power_word(1, (r + 1) / 2, 2)?.concat(&power_word(0, (pp + 1) / 2, 2)?)?;
            let mut a2 = power_word(0, -(pp - 3) / 2, 2)?;
            for _ in 0..(q - 3) / 2 {
                a2 = a2.concat(&Word::parse("x2 x1", 2)?)?;
            }
            a2 = a2.concat(&Word::parse("x2", 2)?)?;
            (a1, a2)
        }
    };
    Ok(vec![
        ("a1".to_string(), crate::free_group::cyclic_reduce(&a1).0),
        ("a2".to_string(), crate::free_group::cyclic_reduce(&a2).0),
    ])
}

// ---------------------------------------------------------------------------
// diagram realization from passage orders
//
// Slot k of x_i and slot k of X_i are the two sides of one handle passage,
// so a diagram is determined by a cyclic order of passages per handle (plus
// the base-point crossings). Tracing is automatic; the only geometric
// constraint left is sphericity, which the validator checks, so the builder
// searches a small space of block arrangements until one embeds.

/// A letter occurrence: (curve, position). The arc after it is gap
/// (curve, position).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Pass {
    curve: usize,
    pos: usize,
}

struct WordSystem {
    rank: usize,
    labels: Vec<String>,
    letters: Vec<Vec<Letter>>,
    /// edge id of the arc after letter (curve, pos)
    edge_of_gap: BTreeMap<(usize, usize), usize>,
    edge_curves: Vec<usize>,
}

impl WordSystem {
    fn new(rank: usize, words: &[(String, Vec<Letter>)]) -> WordSystem {
        let mut edge_of_gap = BTreeMap::new();
        let mut edge_curves = Vec::new();
        for (c, (_, w)) in words.iter().enumerate() {
            for k in 0..w.len() {
                edge_of_gap.insert((c, k), edge_curves.len());
                edge_curves.push(c);
            }
        }
        WordSystem {
            rank,
            labels: words.iter().map(|(l, _)| l.clone()).collect(),
            letters: words.iter().map(|(_, w)| w.clone()).collect(),
            edge_of_gap,
            edge_curves,
        }
    }

    fn letter(&self, p: Pass) -> Letter {
        self.letters[p.curve][p.pos]
    }

    /// arc leaving the exit vertex of the passage
    fn out_edge(&self, p: Pass) -> usize {
        self.edge_of_gap[&(p.curve, p.pos)]
    }

    /// arc arriving at the entry vertex of the passage
    fn in_edge(&self, p: Pass) -> usize {
        let len = self.letters[p.curve].len();
        self.edge_of_gap[&(p.curve, (p.pos + len - 1) % len)]
    }

    /// Assemble a diagram from per-handle cyclic passage orders.
    fn build(
        &self,
        orders: &[Vec<Pass>],
        crossings: &[Crossing],
    ) -> Result<Diagram> {
        let mut slots = Vec::with_capacity(self.rank);
        for (g, order) in orders.iter().enumerate() {
            let mut unbarred = Vec::with_capacity(order.len());
            let mut barred = Vec::with_capacity(order.len());
            for &p in order {
                let l = self.letter(p);
                debug_assert_eq!(l.gen(), g);
                if l.is_inverse() {
                    // negative passage: enters x, exits X
                    unbarred.push(EndRef { edge: self.in_edge(p), end: 1 });
                    barred.push(EndRef { edge: self.out_edge(p), end: 0 });
                } else {
                    // positive passage: enters X, exits x
                    unbarred.push(EndRef { edge: self.out_edge(p), end: 0 });
                    barred.push(EndRef { edge: self.in_edge(p), end: 1 });
                }
            }
            slots.push([unbarred, barred]);
        }
        Diagram::new(
            self.rank,
            self.labels.clone(),
            self.edge_curves.clone(),
            slots,
            None,
            crossings.to_vec(),
        )
    }
}

/// The Whitehead diagram of a pretzel spine.
///
/// Around the `x1` handle the two curves interleave: the fan opens with the
/// first pass of `a1`'s `x1` block, runs through `a2`'s passes in cyclic
/// word order, and closes with the remaining `a1` passes alternating into
/// `a2`'s leading passes; the base point sits where `a1`'s diagonal into its
/// `x1` block crosses one of `a2`'s arcs between `x1` and `X1`. Around `x2`
/// both curves stay in blocks. The arrangement is forced: it is the unique
/// one (up to sliding the base point) that embeds in the sphere and traces
/// to the spine words.
pub fn pretzel_diagram(k: &PretzelKnot) -> Result<Diagram> {
    let expected = pretzel_spine(k)?;
    let (p, q, r) = (k.p, k.q, k.r);
    let (raw, h0, h1, crossing) = match k.case {
        PretzelCase::Positive => {
            let big_r = ((r + 1) / 2) as usize;
            let pm = ((p - 1) / 2) as usize; // a1 x1-passes
            let pp = ((p + 1) / 2) as usize; // a2 x1-block
            let m2 = ((q - 1) / 2) as usize; // alternating tail length
            let a1 = power_word(1, (r + 1) / 2, 2)?.concat(&power_word(0, -(p - 1) / 2, 2)?)?;
            let mut a2 = power_word(0, (p + 1) / 2, 2)?;
            for _ in 0..m2 {
                a2 = a2.concat(&Word::parse("x2 x1", 2)?)?;
            }
            let raw = vec![
                ("a1".to_string(), a1.letters().to_vec()),
                ("a2".to_string(), a2.letters().to_vec()),
            ];
            let a_pass = |j: usize| Pass { curve: 0, pos: big_r + j };
            // a2's x1 passes in cyclic word order: the block, then the tail
            let b_list: Vec<Pass> = (0..pp)
                .map(|j| Pass { curve: 1, pos: j })
                .chain((0..m2).map(|t| Pass { curve: 1, pos: pp + 2 * t + 1 }))
                .collect();
            let m = pm - 1; // = (p-3)/2
            let mut h0 = vec![a_pass(0)];
            h0.extend(b_list[m..].iter().copied());
            for k in (1..=m).rev() {
                h0.push(a_pass(k));
                h0.push(b_list[m - k]);
            }
            let h1: Vec<Pass> = (0..big_r)
                .map(|j| Pass { curve: 0, pos: j })
                .chain((0..m2).map(|t| Pass { curve: 1, pos: pp + 2 * t }))
                .collect();
            let len1 = raw[0].1.len();
            let crossing = Crossing { e1: big_r - 1, e2: len1 + m };
            (raw, h0, h1, crossing)
        }
        PretzelCase::OneNegative => {
            let pp = p.abs();
            let a = ((r + 1) / 2) as usize;
            let b = ((pp + 1) / 2) as usize;
            let c = ((pp - 3) / 2) as usize;
            debug_assert_eq!(b, c + 2, "the x1 block exceeds the negative block by two");
            let d = ((q - 3) / 2) as usize;
            let a1 = power_word(1, (r + 1) / 2, 2)?.concat(&power_word(0, (pp + 1) / 2, 2)?)?;
            let mut a2 = power_word(0, -(pp - 3) / 2, 2)?;
            for _ in 0..d {
                a2 = a2.concat(&Word::parse("x2 x1", 2)?)?;
            }
            a2 = a2.concat(&Word::parse("x2", 2)?)?;
            let raw = vec![
                ("a1".to_string(), a1.letters().to_vec()),
                ("a2".to_string(), a2.letters().to_vec()),
            ];
            let a_pass = |j: usize| Pass { curve: 0, pos: a + j };
            let neg = |j: usize| Pass { curve: 1, pos: j };
            let single = |t: usize| Pass { curve: 1, pos: c + 2 * t + 1 };
            let mut h0 = vec![a_pass(0), a_pass(1)];
            for k in 0..c {
                h0.push(neg(c - 1 - k));
                h0.push(a_pass(2 + k));
            }
            for t in (0..d).rev() {
                h0.push(single(t));
            }
            let mut h1 = vec![
                Pass { curve: 0, pos: 0 },
                Pass { curve: 1, pos: c + 2 * d }, // the closing x2
            ];
            for t in (0..d).rev() {
                h1.push(Pass { curve: 1, pos: c + 2 * t });
            }
            for j in (1..a).rev() {
                h1.push(Pass { curve: 0, pos: j });
            }
            let len1 = raw[0].1.len();
            let len2 = raw[1].1.len();
            let a2_gap = if c >= 1 { c - 1 } else { len2 - 1 };
            let crossing = Crossing { e1: len1 + a2_gap, e2: a };
            (raw, h0, h1, crossing)
        }
    };
    let system = WordSystem::new(2, &raw);
    let d = system.build(&[h0, h1], &[crossing])?;
    let traced = d.trace_words()?;
    if traced != expected {
        return Err(Error::InvalidDiagram("pretzel template traced to wrong words".into()));
    }
    Ok(d)
}

/// The Whitehead diagram of a rational chain spine: each handle carries its
/// curve's power block in word order followed by the next curve's single
/// passage, with one base-point crossing per consecutive curve pair. The
/// crossing arcs are found by a bounded scan over arc pairs.
pub fn rational_diagram(k: &RationalKnot) -> Result<Diagram> {
    let g = k.genus_count();
    let expected = rational_spine(k)?;
    let mut raw: Vec<(String, Vec<Letter>)> = Vec::new();
    for (i, &b) in k.coefficients.iter().enumerate() {
        let mut w = power_word(i, b, g)?;
        if i > 0 {
            w = w.concat(&Word::reduce([Letter::new(i - 1, false)], g)?)?;
        }
        raw.push((format!("a{}", i + 1), w.letters().to_vec()));
    }
    let lens: Vec<usize> = raw.iter().map(|(_, w)| w.len()).collect();
    let base: Vec<usize> = lens
        .iter()
        .scan(0usize, |acc, &l| {
            let s = *acc;
            *acc += l;
            Some(s)
        })
        .collect();
    let orders: Vec<Vec<Pass>> = (0..g)
        .map(|gen| {
            let mut order: Vec<Pass> = (0..k.coefficients[gen].unsigned_abs() as usize)
                .map(|pos| Pass { curve: gen, pos })
                .collect();
            if gen + 1 < g {
                order.push(Pass { curve: gen + 1, pos: lens[gen + 1] - 1 });
            }
            order
        })
        .collect();
    let system = WordSystem::new(g, &raw);
    // scan crossing-arc pairs per joint, natural candidates first
    let joint_pairs: Vec<Vec<(usize, usize)>> = (0..g.saturating_sub(1))
        .map(|i| {
            let mut pairs = Vec::new();
            for e1 in base[i]..base[i] + lens[i] {
                for e2 in base[i + 1]..base[i + 1] + lens[i + 1] {
                    pairs.push((e1, e2));
                    pairs.push((e2, e1));
                }
            }
            pairs
        })
        .collect();
    let mut choice = vec![0usize; g.saturating_sub(1)];
    loop {
        let crossings: Vec<Crossing> = (0..g - 1)
            .map(|i| {
                let (a, b) = joint_pairs[i][choice[i]];
                Crossing { e1: a, e2: b }
            })
            .collect();
        if let Ok(d) = system.build(&orders, &crossings) {
            if d.trace_words()? == expected {
                return Ok(d);
            }
        }
        let mut i = 0;
        loop {
            if i == g - 1 || g == 1 {
                if g == 1 {
                    // a single curve needs no crossing
                    let d = system.build(&orders, &[])?;
                    if d.trace_words()? == expected {
                        return Ok(d);
                    }
                }
                return Err(Error::InvalidDiagram(
                    "no crossing placement embeds the rational chain".into(),
                ));
            }
            choice[i] += 1;
            if choice[i] < joint_pairs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Classify a pretzel knot through its diagram: a parameter of absolute value
/// 3 yields handle number one via a primitive spine curve; all parameters of
/// absolute value at least 5 exhaust the arc search and give handle number
/// two with circular width 6.
pub fn pretzel_classify(k: &PretzelKnot, opts: &DecideOptions) -> Result<HandleReport> {
    let d = pretzel_diagram(k)?;
    let assumptions = Assumptions {
        minimal_genus: true,
        non_fibered: true,
        unique_incompressible: true,
        connected: true,
        notes: vec![
            "the pretzel black surface is the unique incompressible Seifert surface".into(),
            "odd pretzel knots with parameters of absolute value at least 3 are not fibered"
                .into(),
        ],
    };
    decide(&d, &assumptions, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_spines() {
        let k = RationalKnot::from_even(&[2, 2]).unwrap();
        let words = rational_spine(&k).unwrap();
        assert_eq!(words[0].1.to_string(), "x1");
        assert_eq!(words[1].1.to_string(), "x1 x2");
        let k = RationalKnot::from_even(&[4, 2]).unwrap();
        let words = rational_spine(&k).unwrap();
        assert_eq!(words[0].1.to_string(), "x1 x1");
        assert_eq!(words[1].1.to_string(), "x1 x2");
        let k = RationalKnot::from_even(&[4]).unwrap();
        assert!(!k.is_connected());
        assert!(RationalKnot::from_even(&[3, 2]).is_err());
        assert!(RationalKnot::from_even(&[2, 0]).is_err());
    }

    #[test]
    fn rational_classification() {
        let fibered = rational_classify(&RationalKnot::from_even(&[2, 2]).unwrap()).unwrap();
        assert_eq!(fibered.h, Some(0));
        let h1 = rational_classify(&RationalKnot::from_even(&[4, 2]).unwrap()).unwrap();
        assert_eq!(h1.h, Some(1));
        assert_eq!(h1.cw, Some(4));
        let link = rational_classify(&RationalKnot::from_even(&[4]).unwrap()).unwrap();
        assert_eq!(link.h, Some(1));
        assert_eq!(link.cw, Some(3));
    }

    #[test]
    fn pretzel_normalization() {
        let k = pretzel_normalize(5, 5, -3).unwrap();
        assert_eq!(k.params(), (-3, 5, 5));
        assert_eq!(k.case(), PretzelCase::OneNegative);
        let k = pretzel_normalize(7, 9, 9).unwrap();
        assert_eq!(k.params(), (7, 9, 9));
        assert_eq!(k.case(), PretzelCase::Positive);
        // two negatives reflect to one
        let k = pretzel_normalize(-5, -5, 3).unwrap();
        assert_eq!(k.params(), (-3, 5, 5));
        // three negatives reflect to none
        let k = pretzel_normalize(-5, -7, -5).unwrap();
        assert_eq!(k.params(), (5, 5, 7));
        assert!(pretzel_normalize(4, 5, 5).is_err());
        assert!(pretzel_normalize(1, 5, 5).is_err());
    }

    #[test]
    fn pretzel_spines_match_formulas() {
        let k = pretzel_normalize(5, 5, 5).unwrap();
        let words = pretzel_spine(&k).unwrap();
        assert_eq!(words[0].1, CyclicWord::parse("x2 x2 x2 X1 X1", 2).unwrap());
        assert_eq!(
            words[1].1,
            CyclicWord::parse("x1 x1 x1 x2 x1 x2 x1", 2).unwrap()
        );
        let k = pretzel_normalize(3, 5, 5).unwrap();
        let words = pretzel_spine(&k).unwrap();
        assert_eq!(words[0].1, CyclicWord::parse("x2 x2 x2 X1", 2).unwrap());
        let k = pretzel_normalize(-5, 5, 5).unwrap();
        let words = pretzel_spine(&k).unwrap();
        assert_eq!(words[0].1, CyclicWord::parse("x2 x2 x2 x1 x1 x1", 2).unwrap());
        assert_eq!(words[1].1, CyclicWord::parse("X1 x2 x1 x2", 2).unwrap());
    }

    #[test]
    fn pretzel_diagram_positive_traces() {
        let k = pretzel_normalize(5, 5, 5).unwrap();
        let d = pretzel_diagram(&k).unwrap();
        assert_eq!(d.trace_words().unwrap(), pretzel_spine(&k).unwrap());
        // edge inventory: 2+2 horizontals, 2 verticals, 2 diagonals, 4 arcs x1-X1
        assert_eq!(d.edge_count(), 12);
        let gw = d.gw_graph();
        let from_words =
            crate::graph::genuine_graph(&d.trace_words().unwrap(), 2).unwrap();
        assert_eq!(gw.signature(), from_words.signature());
    }

    #[test]
    fn pretzel_diagram_negative_traces() {
        let k = pretzel_normalize(-5, 5, 5).unwrap();
        let d = pretzel_diagram(&k).unwrap();
        assert_eq!(d.trace_words().unwrap(), pretzel_spine(&k).unwrap());
    }
}
