//! Words in a free group of finite rank.
//!
//! Letters are non-zero `i32`: `i` stands for the generator `x_i` (1-based)
//! and `-i` for its inverse. Every constructor returns a freely reduced word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<i32>,
}

fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, letters: Vec::new() }
    }

    /// The generator `x_i`, 1-based.
    pub fn generator(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "generator {i} out of range for rank {rank}");
        FreeWord { rank, letters: vec![i as i32] }
    }

    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = i32>) -> Result<Self> {
        let mut out = Vec::new();
        for l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(Error::GeneratorOutOfRange { index: l as i64, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(FreeWord { rank, letters: out })
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        FreeWord { rank: self.rank, letters: out }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `w * self * w^-1`.
    pub fn conjugate_by(&self, w: &FreeWord) -> FreeWord {
        w.mul(self).mul(&w.inverse())
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// `<a, b> = a b a b^-1 a^-1 b^-1`.
    pub fn triple(a: &FreeWord, b: &FreeWord) -> FreeWord {
        a.mul(b).mul(a).mul(&b.inverse()).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Removes matching letters from both ends; the result is a conjugate.
    pub fn cyclically_reduced(&self) -> FreeWord {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j >= i + 2 && l[i] == -l[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord { rank: self.rank, letters: l[i..j].to_vec() }
    }

    /// Replaces each generator `x_i` by `images[i-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> FreeWord {
        let rank = images.first().map_or(self.rank, |w| w.rank);
        let mut out = Vec::new();
        for &l in &self.letters {
            let img = &images[l.unsigned_abs() as usize - 1];
            if l > 0 {
                for &m in &img.letters {
                    push_reduced(&mut out, m);
                }
            } else {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out, -m);
                }
            }
        }
        FreeWord { rank, letters: out }
    }

    /// Renames generators: `x_i -> x_{map[i-1]}` (map is 1-based targets).
    pub fn rename(&self, new_rank: usize, map: &[usize]) -> FreeWord {
        let letters = self
            .letters
            .iter()
            .map(|&l| l.signum() * map[l.unsigned_abs() as usize - 1] as i32);
        FreeWord::from_letters(new_rank, letters).expect("rename target in range")
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.rank];
        for &l in &self.letters {
            v[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        v
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}
