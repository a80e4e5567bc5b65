//! Van Kampen presentations of the affine and projective complements.
//!
//! The free generators `x_p` are loops around the punctures of the base
//! fiber in puncture order, taken as small positively oriented circles
//! connected to a base point below the real axis. For a factor
//! `W σ_p^e W^-1` (with `W` the full conjugator, including the one
//! straightening the core path) the two loops are `A = Φ_W(x_p)` and
//! `B = Φ_W(x_{p+1})`, and the relator is `A B^-1`, `[A, B]` or
//! `A B A B^-1 A^-1 B^-1` for a branch point, node or cusp.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::braid::{artin_image, BraidWord};
use crate::complex::Puncture;
use crate::error::{Error, Result};
use crate::factorization::{certify, Factor, Factorization, SingType};
use crate::free::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// The puncture whose loop the generator is (or is built from).
    pub puncture: Option<Puncture>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<FreeWord>,
    pub kind: PresentationKind,
}

fn generator_name(prefix: char, p: &Puncture) -> String {
    format!("{prefix}{}_{}_{}_{}", p.line.kind.epsilon(), p.line.r, p.line.k, p.delta)
}

impl Presentation {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Relator text in `a*b^-1` notation.
    pub fn word_text(&self, w: &FreeWord) -> String {
        if w.is_identity() {
            return "One(F)".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = &self.generators[letters[i].unsigned_abs() as usize - 1].name;
            let e = (j - i) as i64 * letters[i].signum() as i64;
            parts.push(if e == 1 { name.clone() } else { format!("{name}^{e}") });
            i = j;
        }
        parts.join("*")
    }

    /// A GAP-readable presentation, one relator per line.
    pub fn to_gap(&self) -> String {
        let names: Vec<String> = self.generators.iter().map(|g| format!("\"{}\"", g.name)).collect();
        let mut out = format!("F := FreeGroup({});;\nAssignGeneratorVariables(F);;\nrels := [\n", names.join(", "));
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i + 1 == self.relators.len() { "" } else { "," };
            out.push_str(&format!("  {}{sep}\n", self.word_text(r)));
        }
        out.push_str("];;\nG := F / rels;;\n");
        out
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.relators.iter().map(|r| r.exponent_sums()).collect()
    }
}

/// Full conjugator `W` of a factor, so that the factor is `W σ_p^e W^-1`.
pub fn full_conjugator(f: &Factor) -> Result<BraidWord> {
    Ok(f.conjugator.mul(&f.core.conjugator(f.strands())?))
}

/// The two Van Kampen loops `(A, B)` of a factor.
pub fn van_kampen_pair(f: &Factor) -> Result<(FreeWord, FreeWord)> {
    let m = f.strands();
    let w = full_conjugator(f)?;
    let a = artin_image(&w, &FreeWord::generator(m, f.core.start));
    let b = artin_image(&w, &FreeWord::generator(m, f.core.start + 1));
    Ok((a, b))
}

pub fn relator(t: SingType, a: &FreeWord, b: &FreeWord) -> FreeWord {
    match t {
        SingType::Branch => a.mul(&b.inverse()),
        SingType::Node => FreeWord::commutator(a, b),
        SingType::Cusp => FreeWord::triple(a, b),
    }
}

pub fn relations_from_factor(f: &Factor) -> Result<FreeWord> {
    let (a, b) = van_kampen_pair(f)?;
    Ok(relator(f.sing_type(), &a, &b))
}

/// Presentation of a factorization that passed the `Δ^2` certificate.
pub fn presentation(fz: &Factorization, kind: PresentationKind) -> Result<Presentation> {
    let cert = certify(fz, 0);
    if let Some(why) = cert.first_violation() {
        return Err(Error::Certificate(why));
    }
    presentation_unchecked(fz, kind)
}

/// The same presentation without the certificate; for diagnostics of
/// factorizations that fail it.
pub fn presentation_unchecked(fz: &Factorization, kind: PresentationKind) -> Result<Presentation> {
    let m = fz.strands();
    let generators = fz
        .puncture_set
        .punctures()
        .iter()
        .map(|p| Generator { name: generator_name('g', p), puncture: Some(*p) })
        .collect();
    let mut relators = fz.factors.iter().map(relations_from_factor).collect::<Result<Vec<_>>>()?;
    if kind == PresentationKind::Projective {
        relators.push(FreeWord::from_letters(m, 1..=m as i32)?);
    }
    Ok(Presentation { generators, relators, kind })
}

/// Exponents `ℓ^{(ε)}_{r,k}` of the generator change.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorChange {
    /// One exponent per doubled pair, in puncture order.
    pub exponents: Vec<i64>,
}

pub fn ell(epsilon: u8, r: i64, k: i64) -> i64 {
    match epsilon {
        1 if r >= k => 1 - k,
        1 => 1 - r,
        2 => k - 1,
        _ => 0,
    }
}

impl GeneratorChange {
    pub fn for_presentation(p: &Presentation) -> Result<Self> {
        let mut exponents = Vec::new();
        for pair in p.generators.chunks(2) {
            let (Some(q0), Some(q1)) = (pair[0].puncture, pair.get(1).and_then(|g| g.puncture)) else {
                return Err(Error::UnknownSymbol("generator without a puncture".into()));
            };
            if q0.line != q1.line || q0.delta != 0 || q1.delta != 1 {
                return Err(Error::UnknownSymbol(format!("{} {} is not a doubled pair", pair[0].name, pair[1].name)));
            }
            exponents.push(ell(q0.line.kind.epsilon(), q0.line.r, q0.line.k));
        }
        Ok(GeneratorChange { exponents })
    }

    /// Images of the old generators `γ` written in the new ones: with
    /// `e = (γ)_{ρ^ℓ}`, `γ = (e)_{ρ^-ℓ}`, the action of the power of the
    /// half-twist `ρ` of the doubled pair.
    fn images(&self, rank: usize, sign: i64) -> Vec<FreeWord> {
        let mut rho = BraidWord::identity(rank);
        for (i, &l) in self.exponents.iter().enumerate() {
            rho = rho.mul(&BraidWord::generator(rank, 2 * i + 1).pow(sign * l));
        }
        (1..=rank).map(|i| artin_image(&rho, &FreeWord::generator(rank, i))).collect()
    }
}

fn rewrite(p: &Presentation, change: &GeneratorChange, sign: i64, prefix: char) -> Presentation {
    let images = change.images(p.rank(), sign);
    Presentation {
        generators: p
            .generators
            .iter()
            .map(|g| Generator {
                name: g.puncture.map_or_else(|| g.name.clone(), |q| generator_name(prefix, &q)),
                puncture: g.puncture,
            })
            .collect(),
        relators: p.relators.iter().map(|r| r.substitute(&images)).collect(),
        kind: p.kind,
    }
}

/// Rewrites a presentation on the loops `γ` to the generators
/// `e = (γ)_{ρ^ℓ}`.
pub fn change_generators(p: &Presentation) -> Result<Presentation> {
    let change = GeneratorChange::for_presentation(p)?;
    Ok(rewrite(p, &change, -1, 'e'))
}

/// Inverse of `change_generators`.
pub fn unchange_generators(p: &Presentation) -> Result<Presentation> {
    let change = GeneratorChange::for_presentation(p)?;
    Ok(rewrite(p, &change, 1, 'g'))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TietzeReport {
    pub steps: usize,
    pub eliminated: usize,
    pub exhausted: bool,
}

/// Canonical representative of a relator up to cyclic permutation and
/// inversion.
fn canonical(w: &FreeWord) -> Vec<i32> {
    let w = w.cyclically_reduced();
    let mut best: Option<Vec<i32>> = None;
    for cand in [w.letters().to_vec(), w.inverse().letters().to_vec()] {
        for s in 0..cand.len().max(1) {
            let rot: Vec<i32> = cand[s..].iter().chain(&cand[..s]).copied().collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}

fn tidy(rank: usize, relators: &[FreeWord]) -> Vec<FreeWord> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in relators {
        let c = canonical(r);
        if !c.is_empty() && seen.insert(c.clone()) {
            out.push(FreeWord::from_letters(rank, c).expect("same rank"));
        }
    }
    out
}

/// Tietze moves: cyclic reduction, removal of trivial and duplicate
/// relators, and elimination of a generator occurring exactly once in some
/// relator (smallest generator first, shortest relator first). Every step
/// counts against `budget`; `max_len` bounds the length of a substituted
/// word.
pub fn tietze_simplify(p: &Presentation, budget: usize, max_len: usize) -> (Presentation, TietzeReport) {
    let mut gens = p.generators.clone();
    let mut rels = tidy(gens.len(), &p.relators);
    let mut report = TietzeReport { steps: 0, eliminated: 0, exhausted: false };
    loop {
        if report.steps >= budget {
            report.exhausted = true;
            break;
        }
        let rank = gens.len();
        let mut choice: Option<(usize, usize)> = None;
        'gen: for g in 1..=rank as i32 {
            let mut cands: Vec<(usize, usize)> = rels
                .iter()
                .enumerate()
                .filter(|(_, r)| r.letters().iter().filter(|l| l.abs() == g).count() == 1 && r.len() <= max_len + 1)
                .map(|(i, r)| (r.len(), i))
                .collect();
            cands.sort();
            if let Some(&(_, i)) = cands.first() {
                choice = Some((g as usize, i));
                break 'gen;
            }
        }
        let Some((g, ri)) = choice else { break };
        report.steps += 1;
        report.eliminated += 1;

        // r = u g^s v  =>  g = (v u)^-s
        let r = rels[ri].letters().to_vec();
        let pos = r.iter().position(|l| l.unsigned_abs() as usize == g).unwrap();
        let s = r[pos].signum();
        let rest: Vec<i32> = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let mut value = FreeWord::from_letters(rank, rest).unwrap();
        if s > 0 {
            value = value.inverse();
        }
        let map: Vec<usize> = (1..=rank).map(|i| if i < g { i } else { i - 1 }).collect();
        let mut images: Vec<FreeWord> = (1..=rank)
            .map(|i| if i == g { FreeWord::identity(rank - 1) } else { FreeWord::generator(rank - 1, map[i - 1]) })
            .collect();
        let value = value.substitute(&images);
        images[g - 1] = value;
        let new_rels: Vec<FreeWord> =
            rels.iter().enumerate().filter(|&(i, _)| i != ri).map(|(_, w)| w.substitute(&images)).collect();
        gens.remove(g - 1);
        rels = tidy(gens.len(), &new_rels);
    }
    (Presentation { generators: gens, relators: rels, kind: p.kind }, report)
}

/// Generator names grouped by the line of their puncture; used for reports.
pub fn generators_by_line(p: &Presentation) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for g in &p.generators {
        if let Some(q) = g.puncture {
            out.entry(q.line.to_string()).or_default().push(g.name.clone());
        }
    }
    out
}
