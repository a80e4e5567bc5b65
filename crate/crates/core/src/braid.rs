//! Braid words in Artin generators, half-twists along combinatorial paths,
//! and the Artin action on the free group used to decide equality.
//!
//! A letter `i > 0` is `σ_i` (1-based, exchanging positions `i` and `i+1`),
//! `-i` its inverse. A word acts on the free group `F_m` by the homomorphism
//! `σ_i : x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i`, and the action of a
//! word `s_1 s_2 ... s_k` is the composition `φ(s_1) ∘ ... ∘ φ(s_k)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::FreeWord;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    /// `σ_i`, 1-based.
    pub fn generator(strands: usize, i: usize) -> Self {
        assert!(i >= 1 && i < strands, "σ_{i} not in B_{strands}");
        BraidWord { strands, letters: vec![i as i32] }
    }

    pub fn from_letters(strands: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let letters: Vec<i32> = letters.into_iter().collect();
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::GeneratorOutOfRange { index: l as i64, rank: strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }.free_reduced()
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }.free_reduced()
    }

    /// `w * self * w^-1`.
    pub fn conjugated_by(&self, w: &BraidWord) -> BraidWord {
        w.mul(self).mul(&w.inverse())
    }

    /// Cancels adjacent `σ_i σ_i^-1` pairs.
    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Positive half twist `Δ` on all strands.
    pub fn half_twist(strands: usize) -> BraidWord {
        Self::block_half_twist(strands, 1, strands)
    }

    /// Full twist `Δ^2`, the generator of the center.
    pub fn full_twist(strands: usize) -> BraidWord {
        Self::half_twist(strands).pow(2)
    }

    /// Positive half twist of the consecutive positions `first..=last`.
    pub fn block_half_twist(strands: usize, first: usize, last: usize) -> BraidWord {
        assert!(first >= 1 && last <= strands && first <= last);
        let mut letters = Vec::new();
        for top in (first..last).rev() {
            for i in first..=top {
                letters.push(i as i32);
            }
        }
        BraidWord { strands, letters }
    }

    /// Reinterprets the word in `B_strands` with every index shifted by
    /// `offset`.
    pub fn embedded(&self, strands: usize, offset: usize) -> BraidWord {
        assert!(self.strands + offset <= strands);
        BraidWord {
            strands,
            letters: self
                .letters
                .iter()
                .map(|&l| l.signum() * (l.unsigned_abs() as usize + offset) as i32)
                .collect(),
        }
    }

    /// Replaces each strand by two parallel strands (blackboard framing).
    pub fn cabled(&self) -> BraidWord {
        let mut letters = Vec::with_capacity(4 * self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as i32;
            // ribbon i occupies 2i-1, 2i; ribbon i+1 occupies 2i+1, 2i+2
            let block = [2 * i, 2 * i - 1, 2 * i + 1, 2 * i];
            if l > 0 {
                letters.extend_from_slice(&block);
            } else {
                letters.extend(block.iter().rev().map(|x| -x));
            }
        }
        BraidWord { strands: 2 * self.strands, letters }
    }

    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self)
    }
}

/// Signed integer sequence, e.g. `1 -2 1`; the empty word prints as `e`.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses a signed integer sequence (`e` or empty for the identity).
pub fn parse_braid_word(strands: usize, text: &str) -> Result<BraidWord> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(BraidWord::identity(strands));
    }
    let letters = text
        .split_whitespace()
        .map(|t| t.parse::<i32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    BraidWord::from_letters(strands, letters)
}

/// Images of the free generators under the Artin action of a braid word.
pub fn artin_images(w: &BraidWord) -> Vec<FreeWord> {
    let m = w.strands;
    let mut t: Vec<FreeWord> = (1..=m).map(|i| FreeWord::generator(m, i)).collect();
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (a, b) = (t[i].clone(), t[i + 1].clone());
        if l > 0 {
            t[i] = a.mul(&b).mul(&a.inverse());
            t[i + 1] = a;
        } else {
            t[i] = b.clone();
            t[i + 1] = b.inverse().mul(&a).mul(&b);
        }
    }
    t
}

/// Image of a single element, applying the letters of `w` from the right;
/// cheaper than `artin_images` when few images are needed.
pub fn artin_image(w: &BraidWord, g: &FreeWord) -> FreeWord {
    let mut cur: Vec<i32> = g.letters().to_vec();
    for &l in w.letters.iter().rev() {
        let i = l.unsigned_abs() as i32;
        let mut next: Vec<i32> = Vec::with_capacity(cur.len() + 4);
        let mut push = |x: i32| {
            if next.last() == Some(&-x) {
                next.pop();
            } else {
                next.push(x);
            }
        };
        for &x in &cur {
            let (g, s) = (x.abs(), x.signum());
            let image: &[i32] = if l > 0 {
                if g == i {
                    &[i, i + 1, -i]
                } else if g == i + 1 {
                    &[i]
                } else {
                    &[g]
                }
            } else if g == i {
                &[i + 1]
            } else if g == i + 1 {
                &[-(i + 1), i, i + 1]
            } else {
                &[g]
            };
            if s > 0 {
                image.iter().for_each(|&y| push(y));
            } else {
                image.iter().rev().for_each(|&y| push(-y));
            }
        }
        cur = next;
    }
    FreeWord::from_letters(g.rank(), cur).expect("letters stay in range")
}

/// Applies the Artin action of `w` to the free group element `g`.
pub fn artin_act(w: &BraidWord, g: &FreeWord) -> Result<FreeWord> {
    if w.strands != g.rank() {
        return Err(Error::RankMismatch { left: w.strands, right: g.rank() });
    }
    Ok(g.substitute(&artin_images(w)))
}

/// Decides equality in `B_m` through the faithful Artin representation.
///
/// The unreduced Burau matrix at a fixed point of `F_p` is compared first;
/// it is a homomorphism, so a mismatch proves inequality cheaply and keeps
/// the free-group computation to the cases that are likely equal.
pub fn braid_equal(u: &BraidWord, v: &BraidWord) -> bool {
    if u.strands != v.strands {
        return false;
    }
    let w = u.mul(&v.inverse());
    if burau_mod_p(&w, BURAU_POINT) != burau_mod_p(&BraidWord::identity(w.strands), BURAU_POINT) {
        return false;
    }
    artin_images(&w).iter().enumerate().all(|(i, g)| g.letters() == [i as i32 + 1])
}

pub const BURAU_PRIME: u64 = 2_147_483_647;
const BURAU_POINT: u64 = 1_234_567;

fn pow_mod(mut x: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * x % BURAU_PRIME;
        }
        x = x * x % BURAU_PRIME;
        e >>= 1;
    }
    r
}

/// Unreduced Burau matrix of `w` evaluated at `t` modulo `BURAU_PRIME`, with
/// `burau(uv) = burau(u) · burau(v)`.
pub fn burau_mod_p(w: &BraidWord, t: u64) -> Vec<Vec<u64>> {
    let p = BURAU_PRIME;
    let m = w.strands;
    let t = t % p;
    let ti = pow_mod(t, p - 2);
    let mut mat = vec![vec![0u64; m]; m];
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        for row in mat.iter_mut() {
            let (a, b) = (row[i], row[i + 1]);
            if l > 0 {
                row[i] = (a * ((1 + p - t) % p) % p + b) % p;
                row[i + 1] = a * t % p;
            } else {
                row[i] = b * ti % p;
                row[i + 1] = (a + b * ((1 + p - ti) % p) % p) % p;
            }
        }
    }
    mat
}

/// The three abelian-ish shadows of a braid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidShadow {
    /// Exponent sum.
    pub degree: i64,
    /// Sends the strand starting at position `p` to its final position.
    pub permutation: Permutation,
    /// `linking[p][q]` for strands labelled by starting position; symmetric
    /// with zero diagonal.
    pub linking: Vec<Vec<i64>>,
}

impl BraidShadow {
    pub fn linking_total(&self) -> i64 {
        let n = self.linking.len();
        (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).map(|(p, q)| self.linking[p][q]).sum()
    }
}

/// Degree, permutation and pairwise linking by strand-position tracking.
pub fn homomorphisms(w: &BraidWord) -> BraidShadow {
    let m = w.strands;
    // label[pos] = strand currently at pos
    let mut label: Vec<usize> = (0..m).collect();
    let mut linking = vec![vec![0i64; m]; m];
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (p, q) = (label[i], label[i + 1]);
        linking[p][q] += l.signum() as i64;
        linking[q][p] += l.signum() as i64;
        label.swap(i, i + 1);
    }
    let mut images = vec![0; m];
    for (pos, &strand) in label.iter().enumerate() {
        images[strand] = pos;
    }
    BraidShadow {
        degree: w.degree(),
        permutation: Permutation::from_images(images).expect("tracking yields a bijection"),
        linking,
    }
}

/// How a half-twist path passes a puncture lying strictly between its
/// endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Passage {
    Above,
    Below,
}

/// An x-monotone path between two punctures on the real line, described by
/// which side of every intermediate puncture it passes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfTwistPath {
    pub start: usize,
    pub end: usize,
    pub shape: Vec<Passage>,
}

impl HalfTwistPath {
    /// Path passing below every intermediate puncture. Endpoints are 1-based
    /// and may be given in either order.
    pub fn below(p: usize, q: usize) -> Self {
        Self::uniform(p, q, Passage::Below)
    }

    pub fn above(p: usize, q: usize) -> Self {
        Self::uniform(p, q, Passage::Above)
    }

    pub fn uniform(p: usize, q: usize, side: Passage) -> Self {
        let (start, end) = (p.min(q), p.max(q));
        HalfTwistPath { start, end, shape: vec![side; end - start - 1] }
    }

    /// Path with an explicit side for each puncture strictly between the
    /// endpoints (listed left to right).
    pub fn with_shape(p: usize, q: usize, shape: Vec<Passage>) -> Result<Self> {
        let (start, end) = (p.min(q), p.max(q));
        if start == end || start == 0 {
            return Err(Error::MalformedPath(format!("bad endpoints ({p},{q})")));
        }
        if shape.len() != end - start - 1 {
            return Err(Error::MalformedPath(format!(
                "{} passages given for {} intermediate punctures",
                shape.len(),
                end - start - 1
            )));
        }
        Ok(HalfTwistPath { start, end, shape })
    }

    pub fn validate(&self, strands: usize) -> Result<()> {
        if self.start == 0 || self.start >= self.end || self.end > strands {
            return Err(Error::MalformedPath(format!(
                "endpoints ({},{}) outside 1..={strands}",
                self.start, self.end
            )));
        }
        if self.shape.len() != self.end - self.start - 1 {
            return Err(Error::MalformedPath("shape length mismatch".into()));
        }
        Ok(())
    }

    /// The braid `C σ_start C^-1` with `C = c_{end-1} ... c_{start+1}` where
    /// `c_j = σ_j` for a passage below puncture `j` and `σ_j^-1` above it.
    pub fn conjugator(&self, strands: usize) -> Result<BraidWord> {
        self.validate(strands)?;
        let letters = (self.start + 1..self.end).rev().map(|j| {
            let s = j as i32;
            match self.shape[j - self.start - 1] {
                Passage::Below => s,
                Passage::Above => -s,
            }
        });
        BraidWord::from_letters(strands, letters)
    }

    pub fn to_word(&self, strands: usize) -> Result<BraidWord> {
        let c = self.conjugator(strands)?;
        Ok(BraidWord::generator(strands, self.start).conjugated_by(&c))
    }

    pub fn shape_string(&self) -> String {
        self.shape
            .iter()
            .map(|p| match p {
                Passage::Above => 'a',
                Passage::Below => 'b',
            })
            .collect()
    }
}

pub fn half_twist_word(path: &HalfTwistPath, strands: usize) -> Result<BraidWord> {
    path.to_word(strands)
}

/// A half-twist with an ordered pair of endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedHalfTwist {
    pub path: HalfTwistPath,
    pub origin: usize,
    pub target: usize,
}

impl PolarizedHalfTwist {
    pub fn new(path: HalfTwistPath, origin: usize, target: usize) -> Result<Self> {
        let ends = (origin.min(target), origin.max(target));
        if ends != (path.start, path.end) {
            return Err(Error::MalformedPath(format!(
                "polarization ({origin},{target}) does not match endpoints ({},{})",
                path.start, path.end
            )));
        }
        Ok(PolarizedHalfTwist { path, origin, target })
    }

    pub fn reversed(&self) -> Self {
        PolarizedHalfTwist { path: self.path.clone(), origin: self.target, target: self.origin }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(m: usize, l: &[i32]) -> BraidWord {
        BraidWord::from_letters(m, l.iter().copied()).unwrap()
    }

    fn f(m: usize, l: &[i32]) -> FreeWord {
        FreeWord::from_letters(m, l.iter().copied()).unwrap()
    }

    #[test]
    fn generator_action() {
        assert_eq!(artin_act(&b(2, &[1]), &f(2, &[1])).unwrap(), f(2, &[1, 2, -1]));
        assert_eq!(artin_act(&b(2, &[1, 1]), &f(2, &[1, 2])).unwrap(), f(2, &[1, 2]));
    }

    #[test]
    fn full_twist_is_conjugation_by_boundary() {
        let d2 = BraidWord::full_twist(3);
        assert!(braid_equal(&d2, &b(3, &[1, 2, 1, 2, 1, 2])));
        let boundary = f(3, &[1, 2, 3]);
        for i in 1..=3 {
            let x = FreeWord::generator(3, i);
            assert_eq!(artin_act(&d2, &x).unwrap(), x.conjugate_by(&boundary));
        }
    }

    #[test]
    fn braid_relations() {
        assert!(braid_equal(&b(3, &[1, 2, 1]), &b(3, &[2, 1, 2])));
        assert!(braid_equal(&b(4, &[1, 3]), &b(4, &[3, 1])));
        assert!(!braid_equal(&b(2, &[1]), &b(2, &[-1])));
        assert!(!braid_equal(&b(3, &[1, 2]), &b(3, &[2, 1])));
    }

    #[test]
    fn single_image_matches_all_images() {
        let w = b(5, &[1, -2, 3, 4, 4, -1, 2, -3, 1]);
        let all = artin_images(&w);
        for (i, img) in all.iter().enumerate() {
            assert_eq!(&artin_image(&w, &FreeWord::generator(5, i + 1)), img);
        }
        let g = f(5, &[2, -4, 1]);
        assert_eq!(artin_image(&w, &g), artin_act(&w, &g).unwrap());
    }

    #[test]
    fn rank_mismatch() {
        assert!(artin_act(&b(3, &[1]), &f(2, &[1])).is_err());
    }

    #[test]
    fn shadows() {
        let s = homomorphisms(&b(2, &[1, 1, 1]));
        assert_eq!(s.degree, 3);
        assert_eq!(s.permutation, Permutation::transposition(2, 0, 1));
        assert_eq!(s.linking[0][1], 3);

        let s = homomorphisms(&BraidWord::full_twist(3));
        assert_eq!(s.degree, 6);
        assert!(s.permutation.is_identity());
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(s.linking[p][q], if p == q { 0 } else { 2 });
            }
        }

        let w = b(4, &[1, -3, 2, 2, -1]);
        let s = homomorphisms(&w.mul(&w.inverse()));
        assert_eq!(s.degree, 0);
        assert!(s.permutation.is_identity());
        assert!(s.linking.iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn half_twist_paths() {
        let h = HalfTwistPath::below(3, 4).to_word(5).unwrap();
        assert_eq!(h, b(5, &[3]));
        let below = HalfTwistPath::below(1, 3).to_word(3).unwrap();
        assert_eq!(below, b(3, &[2, 1, -2]));
        let above = HalfTwistPath::above(1, 3).to_word(3).unwrap();
        assert_eq!(above, b(3, &[-2, 1, 2]));
        for w in [below, above] {
            let s = homomorphisms(&w);
            assert_eq!(s.degree, 1);
            assert_eq!(s.permutation, Permutation::transposition(3, 0, 2));
        }
        // the two paths differ by conjugation with σ_1^2
        let above = HalfTwistPath::above(1, 3).to_word(3).unwrap();
        let below = HalfTwistPath::below(1, 3).to_word(3).unwrap();
        assert!(!braid_equal(&above, &below));
    }

    #[test]
    fn malformed_paths() {
        assert!(HalfTwistPath::with_shape(1, 4, vec![Passage::Above]).is_err());
        assert!(HalfTwistPath::below(2, 6).to_word(5).is_err());
        let p = HalfTwistPath::below(1, 3);
        assert!(PolarizedHalfTwist::new(p.clone(), 3, 1).is_ok());
        assert!(PolarizedHalfTwist::new(p, 1, 2).is_err());
    }

    #[test]
    fn cabling_full_twist() {
        // Δ²_{2n} = cable(Δ²_n) · ∏ σ_{2i-1}²
        for n in 2..=4 {
            let mut w = BraidWord::full_twist(n).cabled();
            for i in 0..n {
                w = w.mul(&BraidWord::generator(2 * n, 2 * i + 1).pow(2));
            }
            assert!(braid_equal(&w, &BraidWord::full_twist(2 * n)));
        }
    }

    #[test]
    fn burau_is_multiplicative() {
        let p = BURAU_PRIME;
        let (u, v) = (b(4, &[1, -2, 3, 3, -1]), b(4, &[2, 1, -3, 2]));
        let (mu, mv, muv) = (burau_mod_p(&u, 99), burau_mod_p(&v, 99), burau_mod_p(&u.mul(&v), 99));
        for i in 0..4 {
            for j in 0..4 {
                let x = (0..4).fold(0, |acc, k| (acc + mu[i][k] * mv[k][j]) % p);
                assert_eq!(x, muv[i][j]);
            }
        }
        assert_eq!(burau_mod_p(&b(3, &[1, 2, 1]), 7), burau_mod_p(&b(3, &[2, 1, 2]), 7));
    }

    #[test]
    fn parse_round_trip() {
        let w = b(4, &[1, -2, 3]);
        assert_eq!(parse_braid_word(4, &w.to_string()).unwrap(), w);
        assert!(parse_braid_word(4, "e").unwrap().is_empty());
        assert!(parse_braid_word(4, "1 x").is_err());
    }
}
