//! Class-two nilpotent groups whose commutator subgroup lies in the
//! central Klein group `<μ, ν>`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `<μ, ν> ≅ Z_2 x Z_2`: bit 0 is `μ`, bit 1 is `ν`.
pub type Central = u8;

pub const MU: Central = 1;
pub const NU: Central = 2;

/// Group with ordered basis `S`, commutator form `β` and central part
/// `<μ, ν>`; elements have the unique normal form
/// `μ^{ε_μ} ν^{ε_ν} g_1^{v_1} ... g_k^{v_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtGroup {
    pub names: Vec<String>,
    pub central_names: [String; 2],
    /// `beta[i][j] = [g_i, g_j]`, symmetric with zero diagonal.
    pub beta: Vec<Vec<Central>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element {
    pub central: Central,
    pub exps: Vec<i64>,
}

impl Element {
    pub fn is_central(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.central == 0 && self.is_central()
    }

    fn odd_support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e & 1 == 1).map(|(i, _)| i)
    }
}

impl CentralExtGroup {
    pub fn new(names: Vec<String>, central_names: [String; 2]) -> Self {
        let n = names.len();
        CentralExtGroup { names, central_names, beta: vec![vec![0; n]; n] }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn set_commutator(&mut self, i: usize, j: usize, c: Central) {
        if i != j {
            self.beta[i][j] = c;
            self.beta[j][i] = c;
        }
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownSymbol(name.into()))
    }

    pub fn identity(&self) -> Element {
        Element { central: 0, exps: vec![0; self.rank()] }
    }

    pub fn central(&self, c: Central) -> Element {
        Element { central: c, exps: vec![0; self.rank()] }
    }

    pub fn gen(&self, i: usize) -> Element {
        let mut e = self.identity();
        e.exps[i] = 1;
        e
    }

    /// `Σ_{p>q} v_p w_q β(p,q)`: the central correction of `v * w`.
    fn cross(&self, v: &Element, w: &Element) -> Central {
        let mut c = 0;
        let vs: Vec<usize> = v.odd_support().collect();
        for q in w.odd_support() {
            for &p in vs.iter().filter(|&&p| p > q) {
                c ^= self.beta[p][q];
            }
        }
        c
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        Element {
            central: a.central ^ b.central ^ self.cross(a, b),
            exps: a.exps.iter().zip(&b.exps).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn inv(&self, a: &Element) -> Element {
        let neg = Element { central: 0, exps: a.exps.iter().map(|x| -x).collect() };
        Element { central: a.central ^ self.cross(a, &neg), exps: neg.exps }
    }

    pub fn pow(&self, a: &Element, k: i64) -> Element {
        let (mut base, mut e) = if k < 0 { (self.inv(a), -k) } else { (a.clone(), k) };
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a Element>) -> Element {
        items.into_iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// `[a, b] = a b a^-1 b^-1`, always central.
    pub fn commutator(&self, a: &Element, b: &Element) -> Central {
        let mut c = 0;
        let asup: Vec<usize> = a.odd_support().collect();
        for q in b.odd_support() {
            for &p in &asup {
                c ^= self.beta[p][q];
            }
        }
        c
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        out.central ^= self.commutator(a, b);
        out
    }

    pub fn format(&self, e: &Element) -> String {
        let mut parts = Vec::new();
        for (bit, name) in [(MU, &self.central_names[0]), (NU, &self.central_names[1])] {
            if e.central & bit != 0 {
                parts.push(name.clone());
            }
        }
        for (i, &x) in e.exps.iter().enumerate() {
            match x {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], x)),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for CentralExtGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}; {}, {}>", self.names.join(", "), self.central_names[0], self.central_names[1])
    }
}

/// Endomorphism given by the images of the basis; the central part is
/// fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    pub images: Vec<Element>,
}

impl Automorphism {
    pub fn identity(g: &CentralExtGroup) -> Self {
        Automorphism { images: (0..g.rank()).map(|i| g.gen(i)).collect() }
    }

    pub fn apply(&self, g: &CentralExtGroup, e: &Element) -> Element {
        let mut acc = g.central(e.central);
        for (i, &x) in e.exps.iter().enumerate() {
            if x != 0 {
                acc = g.mul(&acc, &g.pow(&self.images[i], x));
            }
        }
        acc
    }

    /// `self` first, then `other`.
    pub fn then(&self, g: &CentralExtGroup, other: &Automorphism) -> Automorphism {
        Automorphism { images: self.images.iter().map(|x| other.apply(g, x)).collect() }
    }

    /// Whether the images satisfy the commutator form, i.e. the map is a
    /// well-defined endomorphism.
    pub fn preserves_form(&self, g: &CentralExtGroup) -> bool {
        (0..g.rank()).all(|i| (0..g.rank()).all(|j| g.commutator(&self.images[i], &self.images[j]) == g.beta[i][j]))
    }

    pub fn is_identity(&self, g: &CentralExtGroup) -> bool {
        self.images.iter().enumerate().all(|(i, x)| *x == g.gen(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> CentralExtGroup {
        let mut g = CentralExtGroup::new((0..5).map(|i| format!("g{i}")).collect(), ["mu".into(), "nu".into()]);
        g.set_commutator(0, 1, MU);
        g.set_commutator(1, 2, MU);
        g.set_commutator(2, 4, NU);
        g.set_commutator(0, 4, MU | NU);
        g
    }

    fn elem() -> impl Strategy<Value = Element> {
        (0u8..4, prop::collection::vec(-4i64..=4, 5)).prop_map(|(central, exps)| Element { central, exps })
    }

    proptest! {
        #[test]
        fn group_laws(a in elem(), b in elem(), c in elem()) {
            let g = sample();
            prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)));
            prop_assert!(g.mul(&a, &g.inv(&a)).is_identity());
            prop_assert!(g.mul(&g.inv(&a), &a).is_identity());
            let comm = g.product([&a, &b, &g.inv(&a), &g.inv(&b)]);
            prop_assert_eq!(comm, g.central(g.commutator(&a, &b)));
            prop_assert_eq!(g.pow(&a, 3), g.product([&a, &a, &a]));
            prop_assert_eq!(g.pow(&a, -2), g.inv(&g.mul(&a, &a)));
        }
    }

    #[test]
    fn basis_commutators() {
        let g = sample();
        let (x, y) = (g.gen(0), g.gen(1));
        assert_eq!(g.commutator(&x, &y), MU);
        assert_eq!(g.format(&g.mul(&y, &x)), "mu*g0*g1");
        assert_eq!(g.conj(&y, &x), g.mul(&g.central(MU), &y));
    }
}
