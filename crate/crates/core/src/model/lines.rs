//! Half-twists, prime elements and squares attached to every line of
//! `K(a,b)`, including the horizontal lines outside the tree.

use std::collections::BTreeMap;

use super::action::Model;
use super::group::Element;
use super::twists::{concat, inverse_word, Letter, TwistSystem, TwistWord};
use crate::complex::{DegenerationComplex, EdgeKind, EdgeLabel};
use crate::error::{Error, Result};

pub fn diag(r: i64, k: i64) -> EdgeLabel {
    EdgeLabel::new(EdgeKind::Diagonal, r, k)
}

pub fn vert(r: i64, k: i64) -> EdgeLabel {
    EdgeLabel::new(EdgeKind::Vertical, r, k)
}

pub fn horiz(r: i64, k: i64) -> EdgeLabel {
    EdgeLabel::new(EdgeKind::Horizontal, r, k)
}

/// A model over the tree of `K(a,b)` with words for all lines.
#[derive(Clone, Debug)]
pub struct LineModel {
    pub complex: DegenerationComplex,
    pub model: Model,
    words: BTreeMap<EdgeLabel, TwistWord>,
    transports: BTreeMap<EdgeLabel, TwistWord>,
    square_words: BTreeMap<EdgeLabel, TwistWord>,
}

impl LineModel {
    pub fn combined(c: &DegenerationComplex) -> Self {
        Self::build(c, Model::combined(TwistSystem::from_complex(c)))
    }

    pub fn g0(c: &DegenerationComplex) -> Self {
        Self::build(c, Model::g0(TwistSystem::from_complex(c)))
    }

    fn build(c: &DegenerationComplex, model: Model) -> Self {
        let sys = &model.system;
        let a = c.params.a;
        let letter = |l: EdgeLabel, s: i8| -> Letter { (sys.index_of_line(&l).expect("tree line"), s) };
        let mut words = BTreeMap::new();
        for (i, t) in sys.twists.iter().enumerate() {
            words.insert(t.line.expect("tree twist has a line"), vec![(i, 1)]);
        }
        let mut transports = BTreeMap::new();
        for k in 1..c.params.b {
            for r in (1..a + k).rev() {
                // (z_{r+1,k})_w = z_{r,k}
                let w = vec![letter(diag(r + 1, k + 1), -1), letter(vert(r, k + 1), 1), letter(vert(r, k), -1), letter(diag(r, k), 1)];
                let inner = words[&horiz(r + 1, k)].clone();
                words.insert(horiz(r, k), concat(&[&inverse_word(&w), &inner, &w]));
                transports.insert(horiz(r, k), w);
            }
        }
        let mut square_words = BTreeMap::new();
        if let Some((_, t0)) = model.square {
            let mut seen = vec![false; sys.len()];
            let mut queue = std::collections::VecDeque::from([t0]);
            let mut tree_words: Vec<TwistWord> = vec![Vec::new(); sys.len()];
            seen[t0] = true;
            while let Some(e) = queue.pop_front() {
                for f in 0..sys.len() {
                    if !seen[f] && sys.adjacent(e, f) {
                        seen[f] = true;
                        // (e)_{f e} = f
                        tree_words[f] = concat(&[&tree_words[e], &[(f, 1), (e, 1)]]);
                        queue.push_back(f);
                    }
                }
            }
            for (i, t) in sys.twists.iter().enumerate() {
                square_words.insert(t.line.expect("tree line"), tree_words[i].clone());
            }
            for k in 1..c.params.b {
                for r in (1..a + k).rev() {
                    let sw = concat(&[&square_words[&horiz(r + 1, k)], &transports[&horiz(r, k)]]);
                    square_words.insert(horiz(r, k), sw);
                }
            }
        }
        LineModel { complex: c.clone(), model, words, transports, square_words }
    }

    pub fn lines(&self) -> impl Iterator<Item = &EdgeLabel> {
        self.words.keys()
    }

    pub fn has(&self, l: EdgeLabel) -> bool {
        self.words.contains_key(&l)
    }

    /// Word in the tree twists for the half-twist of `l`.
    pub fn word(&self, l: EdgeLabel) -> Result<&TwistWord> {
        self.words.get(&l).ok_or_else(|| Error::UnknownSymbol(l.to_string()))
    }

    /// Word for `l^{sign}`.
    pub fn letter(&self, l: EdgeLabel, sign: i8) -> Result<TwistWord> {
        let w = self.word(l)?;
        Ok(if sign > 0 { w.clone() } else { inverse_word(w) })
    }

    /// Concatenated word for a product of line half-twists.
    pub fn line_word(&self, letters: &[(EdgeLabel, i8)]) -> Result<TwistWord> {
        let mut out = Vec::new();
        for &(l, s) in letters {
            out.extend(self.letter(l, s)?);
        }
        Ok(out)
    }

    /// `(e)_{l_1^{±1} l_2^{±1} ...}`.
    pub fn act(&self, e: &Element, letters: &[(EdgeLabel, i8)]) -> Result<Element> {
        Ok(self.model.act(e, &self.line_word(letters)?))
    }

    /// Prime element of family `family` with supporting half-twist `l`.
    pub fn prime(&self, family: usize, l: EdgeLabel) -> Result<Element> {
        if let Some(t) = self.model.system.index_of_line(&l) {
            return Ok(self.model.prime(family, t));
        }
        let w = self.transports.get(&l).ok_or_else(|| Error::UnknownSymbol(l.to_string()))?;
        let inner = self.prime(family, horiz(l.r + 1, l.k))?;
        Ok(self.model.act(&inner, w))
    }

    /// `l^2` as an element of the model.
    pub fn square(&self, l: EdgeLabel) -> Result<Element> {
        let s = self.model.square_element().ok_or_else(|| Error::UnknownSymbol("square".into()))?;
        let w = self.square_words.get(&l).ok_or_else(|| Error::UnknownSymbol(l.to_string()))?;
        Ok(self.model.act(&s, w))
    }
}
