//! Exact Jones polynomials of plat closures from the Kauffman bracket state
//! sum. Independent of every other numerical path in the crate.

use std::collections::HashMap;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::braid::{annotate, writhe, BraidWord};
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::qnum::LaurentPoly;

pub const DEFAULT_CROSSING_LIMIT: usize = 20;

/// One crossing between strand positions `i-1` and `i`. Ports are segment
/// ids; a positive crossing carries the over-strand from `bottom_left` to
/// `top_right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub bottom_left: usize,
    pub bottom_right: usize,
    pub top_left: usize,
    pub top_right: usize,
    pub positive: bool,
}

/// Closed 4-valent diagram: cups, crossings in braid order, caps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarDiagram {
    pub segments: usize,
    pub cups: Vec<(usize, usize)>,
    pub crossings: Vec<Crossing>,
    pub caps: Vec<(usize, usize)>,
}

impl PlanarDiagram {
    /// How many times each segment is referenced; 2 for a closed diagram.
    pub fn endpoint_counts(&self) -> Vec<usize> {
        let mut count = vec![0; self.segments];
        for &(a, b) in self.cups.iter().chain(&self.caps) {
            count[a] += 1;
            count[b] += 1;
        }
        for c in &self.crossings {
            for s in [c.bottom_left, c.bottom_right, c.top_left, c.top_right] {
                count[s] += 1;
            }
        }
        count
    }

    /// Number of closed loops in the state `a_mask` (bit `k` set means
    /// crossing `k` gets its A-smoothing).
    fn loops(&self, a_mask: u64, uf: &mut UnionFind) -> usize {
        uf.reset(self.segments);
        for &(a, b) in self.cups.iter().chain(&self.caps) {
            uf.union(a, b);
        }
        for (k, c) in self.crossings.iter().enumerate() {
            let a_smoothing = a_mask >> k & 1 == 1;
            // The A-smoothing of a positive crossing joins the segments
            // vertically; of a negative one, horizontally.
            if a_smoothing == c.positive {
                uf.union(c.bottom_left, c.top_left);
                uf.union(c.bottom_right, c.top_right);
            } else {
                uf.union(c.bottom_left, c.bottom_right);
                uf.union(c.top_left, c.top_right);
            }
        }
        uf.sets()
    }
}

/// Diagram of the plat closure. Segment ids are assigned bottom to top:
/// first the `2n` cup ends, then two per crossing.
pub fn plat_diagram(word: &BraidWord) -> Result<PlanarDiagram> {
    annotate(word)?;
    let m = word.strands();
    let mut current: Vec<usize> = (0..m).collect();
    let mut segments = m;
    let cups = (0..m).step_by(2).map(|i| (i, i + 1)).collect();
    let mut crossings = Vec::with_capacity(word.crossing_count());
    for s in word.syllables() {
        let (l, r) = (s.index - 1, s.index);
        for _ in 0..s.power.abs() {
            let c = Crossing {
                bottom_left: current[l],
                bottom_right: current[r],
                top_left: segments,
                top_right: segments + 1,
                positive: s.power > 0,
            };
            current[l] = segments;
            current[r] = segments + 1;
            segments += 2;
            crossings.push(c);
        }
    }
    let caps = (0..m).step_by(2).map(|i| (current[i], current[i + 1])).collect();
    Ok(PlanarDiagram {
        segments,
        cups,
        crossings,
        caps,
    })
}

/// `⟨K⟩ = Σ_states A^{#A - #B} d^{loops - 1}` with `d = -A² - A⁻²`, as a
/// Laurent polynomial in `A`.
pub fn kauffman_bracket(diagram: &PlanarDiagram, limit: usize) -> Result<LaurentPoly> {
    let c = diagram.crossings.len();
    if c > limit || c >= 63 {
        return Err(Error::TooManyCrossings { crossings: c, limit });
    }
    let tally: HashMap<(i32, usize), i64> = (0u64..1 << c)
        .into_par_iter()
        .fold(
            || (HashMap::new(), UnionFind::new(diagram.segments)),
            |(mut map, mut uf), mask| {
                let a = mask.count_ones() as i32;
                let key = (2 * a - c as i32, diagram.loops(mask, &mut uf));
                *map.entry(key).or_insert(0i64) += 1;
                (map, uf)
            },
        )
        .map(|(map, _)| map)
        .reduce(HashMap::new, |mut acc, map| {
            for (k, v) in map {
                *acc.entry(k).or_insert(0) += v;
            }
            acc
        });

    let d = LaurentPoly::from_int_terms([(2, -1), (-2, -1)]);
    let mut bracket = LaurentPoly::zero();
    let mut keys: Vec<_> = tally.into_iter().collect();
    keys.sort();
    for ((exp, loops), count) in keys {
        let term = d.pow(loops as u32 - 1).shift(exp).scale(Rational64::from_integer(count));
        bracket = &bracket + &term;
    }
    Ok(bracket)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    /// In `x = t^{1/2}`.
    pub jones: LaurentPoly,
    /// In `A`.
    pub bracket: LaurentPoly,
    pub writhe: i64,
}

/// `V(t) = (-A³)^{-w} ⟨K⟩` at `t = A⁻⁴`, returned in `x = t^{1/2}`.
pub fn jones_exact_with_limit(word: &BraidWord, limit: usize) -> Result<OracleReport> {
    let annotated = annotate(word)?;
    let w = writhe(&annotated.word)?;
    let bracket = kauffman_bracket(&plat_diagram(word)?, limit)?;
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let v = bracket
        .shift(-3 * w as i32)
        .scale(Rational64::from_integer(sign));
    let jones = v
        .divide_exponents(2)
        .expect("bracket exponents of a normalized link are even")
        .invert_variable();
    Ok(OracleReport {
        jones,
        bracket,
        writhe: w,
    })
}

pub fn jones_exact(word: &BraidWord) -> Result<LaurentPoly> {
    Ok(jones_exact_with_limit(word, DEFAULT_CROSSING_LIMIT)?.jones)
}
