//! Braid words on `2n` strands, closed into plats by `n` cups below and `n`
//! caps above, with strand orientations tracked through the word.
//!
//! Positions are 1-based in generator indices (`b_i` crosses positions `i`
//! and `i+1`) and 0-based everywhere else.

mod parse;

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};

pub use parse::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Parallel,
    Antiparallel,
    /// Left to orientation propagation.
    Auto,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Parallel => "parallel",
            Orientation::Antiparallel => "antiparallel",
            Orientation::Auto => "auto",
        }
    }

    fn letter(self) -> char {
        match self {
            Orientation::Parallel => 'b',
            Orientation::Antiparallel => 'h',
            Orientation::Auto => 'g',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    /// Generator index `i ∈ [1, 2n-1]`.
    pub index: usize,
    /// Nonzero; positive powers are right-handed half twists.
    pub power: i32,
    pub orientation: Orientation,
}

impl Syllable {
    pub fn new(index: usize, power: i32, orientation: Orientation) -> Self {
        Self {
            index,
            power,
            orientation,
        }
    }

    pub fn crossings(&self) -> usize {
        self.power.unsigned_abs() as usize
    }
}

impl fmt::Display for Syllable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.orientation.letter(), self.index)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    syllables: Vec<Syllable>,
    flips: Option<Vec<bool>>,
}

impl BraidWord {
    pub fn new(strands: usize, syllables: Vec<Syllable>) -> Result<Self> {
        if strands < 2 || !strands.is_multiple_of(2) {
            return Err(Error::InvalidStrandCount(strands));
        }
        for s in &syllables {
            if s.index == 0 || s.index >= strands {
                return Err(Error::IndexOutOfRange {
                    index: s.index,
                    strands,
                });
            }
            if s.power == 0 {
                return Err(Error::ZeroPower { index: s.index });
            }
        }
        Ok(Self {
            strands,
            syllables,
            flips: None,
        })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Attaches cup flips (one per cup, `true` = flipped).
    pub fn with_flips(mut self, flips: Vec<bool>) -> Result<Self> {
        if flips.len() != self.n() {
            return Err(Error::FlipCount {
                expected: self.n(),
                got: flips.len(),
            });
        }
        self.flips = Some(flips);
        Ok(self)
    }

    pub fn without_flips(mut self) -> Self {
        self.flips = None;
        self
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Number of cups, `strands / 2`.
    pub fn n(&self) -> usize {
        self.strands / 2
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn flips(&self) -> Option<&[bool]> {
        self.flips.as_deref()
    }

    pub fn crossing_count(&self) -> usize {
        self.syllables.iter().map(Syllable::crossings).sum()
    }

    pub fn is_annotated(&self) -> bool {
        self.syllables
            .iter()
            .all(|s| s.orientation != Orientation::Auto)
    }

    /// `perm[p]` is the top position reached by the strand starting at
    /// bottom position `p`. Even powers contribute nothing.
    pub fn permutation(&self) -> Vec<usize> {
        // at[q] = bottom position of the strand currently at q
        let mut at: Vec<usize> = (0..self.strands).collect();
        for s in &self.syllables {
            if s.power % 2 != 0 {
                at.swap(s.index - 1, s.index);
            }
        }
        let mut perm = vec![0; self.strands];
        for (q, &p) in at.iter().enumerate() {
            perm[p] = q;
        }
        perm
    }

    /// Negates every power; annotations and flips are kept.
    pub fn mirror(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.syllables {
            s.power = -s.power;
        }
        out
    }

    /// Syllables reversed with powers negated; flips are dropped.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    power: -s.power,
                    ..*s
                })
                .collect(),
            flips: None,
        }
    }

    /// `self` followed by `other`; flips are taken from `self`.
    pub fn concat(&self, other: &BraidWord) -> Self {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut out = self.clone();
        out.syllables.extend_from_slice(&other.syllables);
        out
    }

    /// Forgets every orientation label.
    pub fn unannotated(&self) -> Self {
        let mut out = self.clone();
        for s in &mut out.syllables {
            s.orientation = Orientation::Auto;
        }
        out
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "strands={};", self.strands)?;
        if let Some(flips) = &self.flips {
            let bits: String = flips.iter().map(|&b| if b { '1' } else { '0' }).collect();
            write!(f, " flips={bits};")?;
        }
        for s in &self.syllables {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    fn reversed(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

/// Directions just above the cups: `2i` Up and `2i+1` Down, swapped for flipped cups.
pub fn cup_directions(flips: &[bool]) -> Vec<Direction> {
    flips
        .iter()
        .flat_map(|&flip| {
            let first = if flip { Direction::Down } else { Direction::Up };
            [first, first.reversed()]
        })
        .collect()
}

/// Result of walking the cup orientations through a word.
#[derive(Debug, Clone, PartialEq)]
pub struct Annotated {
    /// Fully annotated word carrying the flips used; antiparallel syllables
    /// with `|k| > 1` are split into unit crossings.
    pub word: BraidWord,
    pub bottom: Vec<Direction>,
    pub top: Vec<Direction>,
    /// Per cap, whether its two strands are oppositely oriented.
    pub caps: Vec<bool>,
}

struct Walk {
    syllables: Vec<Syllable>,
    top: Vec<Direction>,
    conflict: Option<Error>,
}

fn walk(word: &BraidWord, flips: &[bool]) -> Walk {
    let mut dirs = cup_directions(flips);
    let mut syllables = Vec::with_capacity(word.syllables.len());
    let mut conflict = None;
    for (k, s) in word.syllables.iter().enumerate() {
        let (i, j) = (s.index - 1, s.index);
        let propagated = if dirs[i] == dirs[j] {
            Orientation::Parallel
        } else {
            Orientation::Antiparallel
        };
        if s.orientation != Orientation::Auto && s.orientation != propagated && conflict.is_none()
        {
            conflict = Some(Error::AnnotationConflict {
                syllable: k,
                annotated: s.orientation.name(),
                propagated: propagated.name(),
            });
        }
        // A crossing swaps the two directions; parallel and antiparallel
        // pairs both keep their type, so the label is constant along a syllable.
        if propagated == Orientation::Antiparallel && s.power.abs() > 1 {
            let unit = s.power.signum();
            for _ in 0..s.power.abs() {
                syllables.push(Syllable::new(s.index, unit, propagated));
            }
        } else {
            syllables.push(Syllable::new(s.index, s.power, propagated));
        }
        if s.power % 2 != 0 {
            dirs.swap(i, j);
        }
    }
    Walk {
        syllables,
        top: dirs,
        conflict,
    }
}

/// Labels every crossing by the relative direction of its two strands.
pub fn propagate_orientations(word: &BraidWord, flips: &[bool]) -> Result<Annotated> {
    if flips.len() != word.n() {
        return Err(Error::FlipCount {
            expected: word.n(),
            got: flips.len(),
        });
    }
    let w = walk(word, flips);
    if let Some(e) = w.conflict {
        return Err(e);
    }
    let caps: Vec<bool> = w.top.chunks(2).map(|p| p[0] != p[1]).collect();
    if let Some(cap) = caps.iter().position(|ok| !ok) {
        return Err(Error::CapMismatch { cap });
    }
    Ok(Annotated {
        word: BraidWord {
            strands: word.strands,
            syllables: w.syllables,
            flips: Some(flips.to_vec()),
        },
        bottom: cup_directions(flips),
        top: w.top,
        caps,
    })
}

/// All flip vectors (lexicographic, all-zero first) under which propagation
/// succeeds.
pub fn find_consistent_flips(word: &BraidWord) -> Vec<Vec<bool>> {
    let n = word.n();
    (0u64..1 << n)
        .map(|bits| (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect::<Vec<_>>())
        .filter(|f| propagate_orientations(word, f).is_ok())
        .collect()
}

/// The word's own flips, or else the first consistent flip vector.
pub fn default_flips(word: &BraidWord) -> Result<Vec<bool>> {
    if let Some(f) = word.flips() {
        return Ok(f.to_vec());
    }
    match find_consistent_flips(word).into_iter().next() {
        Some(f) => Ok(f),
        // Report why the plain cup orientation fails.
        None => {
            let zeros = vec![false; word.n()];
            propagate_orientations(word, &zeros).map(|_| zeros)
        }
    }
}

/// Propagates with [`default_flips`].
pub fn annotate(word: &BraidWord) -> Result<Annotated> {
    let flips = default_flips(word)?;
    propagate_orientations(word, &flips)
}

/// Signed crossing count: a right-handed crossing of co-oriented strands is +1,
/// so parallel syllables contribute `k` and antiparallel ones `-k`.
pub fn writhe(word: &BraidWord) -> Result<i64> {
    word.syllables
        .iter()
        .enumerate()
        .map(|(k, s)| match s.orientation {
            Orientation::Parallel => Ok(s.power as i64),
            Orientation::Antiparallel => Ok(-(s.power as i64)),
            Orientation::Auto => Err(Error::UnannotatedSyllable(k)),
        })
        .sum()
}

/// Number of link components of the plat closure.
pub fn components(word: &BraidWord) -> usize {
    let m = word.strands;
    let perm = word.permutation();
    let mut inv = vec![0; m];
    for (p, &q) in perm.iter().enumerate() {
        inv[q] = p;
    }
    let mut uf = UnionFind::new(m);
    for i in (0..m).step_by(2) {
        uf.union(i, i + 1);
        uf.union(inv[i], inv[i + 1]);
    }
    uf.sets()
}

/// Random unannotated word: syllables uniform over indices and powers
/// `1 ≤ |k| ≤ 3`, stopping once the crossing budget is spent. The total
/// crossing count is uniform-ish in `[0, max_crossings]`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, strands: usize, max_crossings: usize) -> BraidWord {
    assert!(strands >= 2 && strands.is_multiple_of(2), "strand count must be even");
    let target = rng.random_range(0..=max_crossings);
    let mut syllables = Vec::new();
    let mut used = 0;
    while used < target {
        let cap = (target - used).min(3) as i32;
        let mag = rng.random_range(1..=cap);
        let power = if rng.random_bool(0.5) { mag } else { -mag };
        let index = rng.random_range(1..strands);
        syllables.push(Syllable::new(index, power, Orientation::Auto));
        used += mag as usize;
    }
    BraidWord {
        strands,
        syllables,
        flips: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const BA: &str = "strands=4; b2^3 h1^-2 h3^-2 b2^3";
    const BB: &str = "strands=6; b2^-1 b4 h1^-2 h3^-3 h5^-2 h2 h4^2 b1 h2";

    fn w(s: &str) -> BraidWord {
        s.parse().unwrap()
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(w("strands=2;").permutation(), vec![0, 1]);
        assert_eq!(w("strands=2; g1").permutation(), vec![1, 0]);
        // b2^3 twice: the two odd syllables cancel, the even ones do nothing.
        assert_eq!(w(BA).permutation(), vec![0, 1, 2, 3]);
        assert_eq!(w("strands=4; g1 g2").permutation(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(w("strands=4;").mirror(), w("strands=4;"));
        assert_eq!(w("strands=4; b2^3").mirror(), w("strands=4; b2^-3"));
    }

    #[test]
    fn identity_caps_are_valid() {
        for strands in [2, 4, 6, 8] {
            let word = BraidWord::identity(strands).unwrap();
            let a = propagate_orientations(&word, &vec![false; strands / 2]).unwrap();
            assert!(a.caps.iter().all(|&c| c));
        }
    }

    #[test]
    fn even_twist_splits_into_antiparallel_crossings() {
        let a = propagate_orientations(&w("strands=4; g2^2"), &[false, false]).unwrap();
        assert_eq!(
            a.word.syllables(),
            &[
                Syllable::new(2, 1, Orientation::Antiparallel),
                Syllable::new(2, 1, Orientation::Antiparallel)
            ]
        );
        assert_eq!(
            &a.bottom[1..3],
            &[Direction::Down, Direction::Up],
            "positions 2,3 start Down, Up"
        );
    }

    #[test]
    fn parallel_syllables_stay_whole() {
        let a = propagate_orientations(&w("strands=4; g2^3"), &[true, false]).unwrap();
        assert_eq!(a.word.syllables(), &[Syllable::new(2, 3, Orientation::Parallel)]);
        assert_eq!(writhe(&a.word), Ok(3));
    }

    #[test]
    fn odd_twist_without_flips_cannot_be_capped() {
        assert_eq!(
            propagate_orientations(&w("strands=4; g2^3"), &[false, false]),
            Err(Error::CapMismatch { cap: 0 })
        );
        assert_eq!(
            find_consistent_flips(&w("strands=4; g2^3")),
            vec![vec![false, true], vec![true, false]]
        );
    }

    #[test]
    fn ten_crossing_word_has_consistent_flips() {
        let word = w(BA);
        assert_eq!(
            propagate_orientations(&word, &[false, false]),
            Err(Error::AnnotationConflict {
                syllable: 0,
                annotated: "parallel",
                propagated: "antiparallel"
            })
        );
        let ok = find_consistent_flips(&word);
        assert_eq!(ok, vec![vec![false, true], vec![true, false]]);
        let a = propagate_orientations(&word, &ok[0]).unwrap();
        // h1^-2 and h3^-2 are split, b2^3 are not.
        assert_eq!(a.word.syllables().len(), 6);
        assert_eq!(writhe(&a.word), Ok(3 + 2 + 2 + 3));
    }

    #[test]
    fn fourteen_crossing_word_annotation() {
        let word = w(BB);
        assert_eq!(
            find_consistent_flips(&word),
            vec![vec![false, true, false], vec![true, false, true]]
        );
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&w("strands=2;")), Ok(0));
        assert_eq!(writhe(&w("strands=2; b1")), Ok(1));
        assert_eq!(writhe(&w("strands=2; h1^2")), Ok(-2));
        assert_eq!(writhe(&w("strands=2; g1")), Err(Error::UnannotatedSyllable(0)));
        let trefoil = annotate(&w("strands=4; g2^-3")).unwrap();
        assert_eq!(writhe(&trefoil.word), Ok(-3));
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(&w("strands=2;")), 1);
        assert_eq!(components(&w("strands=6;")), 3);
        assert_eq!(components(&w("strands=4; g2")), 1);
        assert_eq!(components(&w("strands=4; g2^2")), 2);
        assert_eq!(components(&w("strands=4; g2^3")), 1);
    }

    #[test]
    fn explicit_flips_win() {
        let word = w("strands=4; flips=10; g2^3");
        assert_eq!(default_flips(&word), Ok(vec![true, false]));
        assert_eq!(default_flips(&word.clone().without_flips()), Ok(vec![false, true]));
        assert!(matches!(
            word.with_flips(vec![true]),
            Err(Error::FlipCount { expected: 2, got: 1 })
        ));
    }

    /// Independent cap check: follow each strand with the permutation.
    fn caps_by_permutation(word: &BraidWord, flips: &[bool]) -> bool {
        let bottom = cup_directions(flips);
        let perm = word.permutation();
        let mut top = vec![Direction::Up; word.strands()];
        for (p, &q) in perm.iter().enumerate() {
            top[q] = bottom[p];
        }
        top.chunks(2).all(|c| c[0] != c[1])
    }

    #[test]
    fn cap_mismatch_matches_permutation_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for strands in [2, 4, 6] {
            for _ in 0..200 {
                let word = random_word(&mut rng, strands, 9);
                let n = strands / 2;
                for bits in 0u32..1 << n {
                    let flips: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                    let valid = propagate_orientations(&word, &flips).is_ok();
                    assert_eq!(valid, caps_by_permutation(&word, &flips), "{word} {flips:?}");
                }
                // Every plat has an orientation.
                assert!(!find_consistent_flips(&word).is_empty());
                // Consistent flip vectors are exactly the 2^components orientations.
                assert_eq!(find_consistent_flips(&word).len(), 1 << components(&word));
            }
        }
    }

    #[test]
    fn random_words_respect_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let word = random_word(&mut rng, 6, 10);
            assert!(word.crossing_count() <= 10);
            assert!(word.syllables().iter().all(|s| (1..=3).contains(&s.power.abs())));
        }
    }

    fn word_strategy() -> impl Strategy<Value = BraidWord> {
        (1usize..4).prop_flat_map(|n| {
            let strands = 2 * n;
            prop::collection::vec((1..strands, prop_oneof![-3i32..0, 1i32..4]), 0..8).prop_map(
                move |v| {
                    let syl = v
                        .into_iter()
                        .map(|(i, k)| Syllable::new(i, k, Orientation::Auto))
                        .collect();
                    BraidWord::new(strands, syl).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn word_times_inverse_is_pure(word in word_strategy()) {
            let both = word.concat(&word.inverse());
            let id: Vec<usize> = (0..word.strands()).collect();
            prop_assert_eq!(both.permutation(), id);
        }

        #[test]
        fn mirror_is_involution(word in word_strategy()) {
            prop_assert_eq!(word.mirror().mirror(), word);
        }

        #[test]
        fn display_round_trips(word in word_strategy()) {
            prop_assert_eq!(parse(&word.to_string()).unwrap(), word);
        }

        #[test]
        fn propagation_is_deterministic_and_total(word in word_strategy()) {
            for flips in find_consistent_flips(&word) {
                let a = propagate_orientations(&word, &flips).unwrap();
                prop_assert!(a.word.is_annotated());
                prop_assert_eq!(a.word.crossing_count(), word.crossing_count());
                // Re-propagating the annotated output reproduces it.
                let again = propagate_orientations(&a.word, &flips).unwrap();
                prop_assert_eq!(again.word, a.word);
            }
        }
    }
}
