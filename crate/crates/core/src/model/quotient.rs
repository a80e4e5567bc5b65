//! The normal subgroup `N(a,b)` of the combined model and membership in it.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::group::{Central, CentralExtGroup, Element, MU, NU};
use super::lines::{vert, LineModel};
use crate::complex::DegenerationComplex;
use crate::error::{Error, Result};
use crate::grouptheory::{cokernel_invariants, AbelianInvariants, IntMatrix};

/// `λ(k) = k(k-1)/2`.
pub fn lambda(k: i64) -> i64 {
    k * (k - 1) / 2
}

/// Which central element of the combined model carries `c = [x^2, y^2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// `c ↦ μ`, `τ ↦ ν`.
    CToMu,
    /// `c ↦ ν`, `τ ↦ ν`.
    CToTau,
}

impl Reading {
    pub fn c(self) -> Central {
        match self {
            Reading::CToMu => MU,
            Reading::CToTau => NU,
        }
    }
}

/// Subgroup of a class-two group: a lattice in Hermite form with group
/// representatives, plus a subgroup of the centre.
#[derive(Clone, Debug, Default)]
pub struct Subgroup {
    rows: BTreeMap<usize, Element>,
    central: Vec<Central>,
}

fn central_span(gens: &[Central]) -> Vec<Central> {
    let mut span = vec![0];
    for &g in gens {
        if !span.contains(&g) {
            let more: Vec<Central> = span.iter().map(|s| s ^ g).collect();
            span.extend(more);
        }
    }
    span
}

impl Subgroup {
    pub fn central_contains(&self, c: Central) -> bool {
        central_span(&self.central).contains(&c)
    }

    fn add_central(&mut self, c: Central) -> bool {
        if self.central_contains(c) {
            return false;
        }
        self.central.push(c);
        true
    }

    /// Representative of `e` modulo the lattice part, or `None` when the
    /// abelian image of `e` is outside the lattice.
    fn reduce(&self, g: &CentralExtGroup, e: &Element) -> Option<Element> {
        let mut x = e.clone();
        for (&c, r) in &self.rows {
            let q = x.exps[c];
            if q == 0 {
                continue;
            }
            let p = r.exps[c];
            if q % p != 0 {
                return None;
            }
            x = g.mul(&x, &g.pow(r, -q / p));
        }
        x.is_central().then_some(x)
    }

    pub fn contains(&self, g: &CentralExtGroup, e: &Element) -> bool {
        self.reduce(g, e).is_some_and(|x| self.central_contains(x.central))
    }

    /// Adds `e` and its commutators with the basis; returns whether the
    /// subgroup grew.
    pub fn insert(&mut self, g: &CentralExtGroup, e: &Element) -> bool {
        if self.contains(g, e) {
            return false;
        }
        for i in 0..g.rank() {
            self.add_central(g.commutator(e, &g.gen(i)));
        }
        let mut x = e.clone();
        loop {
            let Some(c) = x.exps.iter().position(|&v| v != 0) else {
                self.add_central(x.central);
                return true;
            };
            match self.rows.get(&c).cloned() {
                None => {
                    if x.exps[c] < 0 {
                        x = g.inv(&x);
                    }
                    self.rows.insert(c, x);
                    return true;
                }
                Some(r) => {
                    let (p, q) = (r.exps[c], x.exps[c]);
                    if q % p == 0 {
                        x = g.mul(&x, &g.pow(&r, -q / p));
                    } else {
                        let e = p.extended_gcd(&q);
                        let d = e.gcd;
                        let mut nr = g.mul(&g.pow(&r, e.x), &g.pow(&x, e.y));
                        if nr.exps[c] < 0 {
                            nr = g.inv(&nr);
                        }
                        x = g.mul(&g.pow(&r, -q / d), &g.pow(&x, p / d));
                        self.rows.insert(c, nr);
                    }
                }
            }
        }
    }

    pub fn lattice_rows(&self) -> Vec<Vec<i64>> {
        self.rows.values().map(|r| r.exps.clone()).collect()
    }
}

/// Generators `n_1, ..., n_4` of `N(a,b)` in the combined model, with
/// `B_{1,1} ↦ b_{1,1}` and `u ↦ η_{1,1}`.
pub fn n_generators(lm: &LineModel, reading: Reading) -> Result<Vec<(String, Element)>> {
    let g = &lm.model.group;
    let (a, b) = (lm.complex.params.a, lm.complex.params.b);
    let bb = lm.prime(1, vert(1, 1))?;
    let u = lm.prime(0, vert(1, 1))?;
    let c = g.central(reading.c());
    let ct = g.central(reading.c() ^ NU);
    let pw = |e: &Element, k: i64| g.pow(e, k);
    let ct_pow = |k: i64| pw(&ct, lambda(k));
    let bu = g.mul(&bb, &g.inv(&u));
    let head = g.mul(&pw(&bu, a - b), &g.inv(&u));
    Ok(vec![
        ("n1".into(), g.product([&pw(&bb, b), &pw(&u, 2 - b), &c, &ct_pow(b + 1)])),
        ("n2".into(), pw(&ct, b)),
        ("n3".into(), g.product([&head, &c, &ct_pow(b - a + 1)])),
        ("n4".into(), g.product([&head, &g.central(NU), &ct_pow(b - a)])),
    ])
}

#[derive(Clone, Debug)]
pub struct NQuotient {
    pub lines: LineModel,
    pub reading: Reading,
    pub subgroup: Subgroup,
    pub insertions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub a: i64,
    pub b: i64,
    pub reading: Reading,
    pub mu_trivial: bool,
    pub nu_trivial: bool,
    pub shadow: AbelianInvariants,
    pub insertions: usize,
}

impl NQuotient {
    pub fn group(&self) -> &CentralExtGroup {
        &self.lines.model.group
    }

    pub fn equal(&self, x: &Element, y: &Element) -> bool {
        let g = self.group();
        self.subgroup.contains(g, &g.mul(x, &g.inv(y)))
    }

    pub fn is_trivial(&self, x: &Element) -> bool {
        self.subgroup.contains(self.group(), x)
    }

    /// Abelian shadow of the family part `⟨ξ, η, ζ, a, b, c⟩ / N`.
    pub fn shadow(&self) -> AbelianInvariants {
        let cols: Vec<usize> = self.lines.model.families.iter().flat_map(|f| f.offset..f.offset + self.lines.model.system.len()).collect();
        let rows: Vec<Vec<i64>> = self.subgroup.lattice_rows().iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        if rows.is_empty() {
            return AbelianInvariants { free_rank: cols.len(), torsion: vec![] };
        }
        cokernel_invariants(&IntMatrix::from_i64(&rows, cols.len()))
    }

    pub fn summary(&self) -> QuotientSummary {
        let g = self.group();
        QuotientSummary {
            a: self.lines.complex.params.a,
            b: self.lines.complex.params.b,
            reading: self.reading,
            mu_trivial: self.is_trivial(&g.central(MU)),
            nu_trivial: self.is_trivial(&g.central(NU)),
            shadow: self.shadow(),
            insertions: self.insertions,
        }
    }
}

/// Normal closure of `n_1..n_4` under the generator actions and
/// conjugation, saturated to a fixed point.
pub fn build_n_quotient(c: &DegenerationComplex, reading: Reading, budget: usize) -> Result<NQuotient> {
    let lines = LineModel::combined(c);
    let model = &lines.model;
    let g = &model.group;
    let mut sub = Subgroup::default();
    let mut work: Vec<Element> = n_generators(&lines, reading)?.into_iter().map(|(_, e)| e).collect();
    let mut insertions = 0;
    while let Some(e) = work.pop() {
        if !sub.insert(g, &e) {
            continue;
        }
        insertions += 1;
        if insertions > budget {
            return Err(Error::BudgetExhausted(format!("orbit saturation exceeded {budget} insertions")));
        }
        for t in 0..model.system.len() {
            for s in [1, -1] {
                work.push(model.action(t, s).apply(g, &e));
            }
        }
    }
    Ok(NQuotient { lines, reading, subgroup: sub, insertions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, ComplexParams};
    use crate::grouptheory::AbelianInvariants;

    fn quotient(a: i64, b: i64) -> NQuotient {
        let c = build_complex(ComplexParams::new(a, b).unwrap()).unwrap();
        build_n_quotient(&c, Reading::CToMu, 100_000).unwrap()
    }

    #[test]
    fn lambda_table() {
        assert_eq!([lambda(2), lambda(3), lambda(4)], [1, 3, 6]);
        for a in -6..10 {
            assert_eq!(lambda(a + 1), a + lambda(a));
        }
    }

    #[test]
    fn per_edge_lattice() {
        for (a, b) in [(1, 2), (1, 3), (2, 3), (1, 5), (3, 2)] {
            let m = IntMatrix::from_i64(&[vec![b, 2], vec![a - b, -1]], 2);
            assert_eq!(cokernel_invariants(&m), AbelianInvariants::cyclic(b - 2 * a));
        }
    }

    #[test]
    fn subgroup_membership() {
        let q = quotient(1, 2);
        let g = q.group();
        for (_, n) in n_generators(&q.lines, Reading::CToMu).unwrap() {
            assert!(q.is_trivial(&n));
            for t in 0..q.lines.model.system.len() {
                assert!(q.is_trivial(&q.lines.model.act(&n, &[(t, 1)])));
            }
        }
        assert!(!q.is_trivial(&g.gen(0)));
    }

    #[test]
    fn shadows() {
        let n = |a: i64, b: i64| (2 * a * b + b * b - 1) as usize;
        assert_eq!(quotient(1, 2).shadow(), AbelianInvariants::cyclic_power(0, n(1, 2)));
        assert!(quotient(1, 3).shadow().is_trivial());
        assert_eq!(quotient(1, 4).shadow(), AbelianInvariants::cyclic_power(2, n(1, 4)));
    }
}
