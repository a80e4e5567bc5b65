//! The action of the half-twist generators on central-extension models of
//! `P̃_n`, `G_0(n)` and of the group generated by both.

use serde::{Deserialize, Serialize};

use super::group::{Automorphism, Central, CentralExtGroup, Element, MU, NU};
use super::twists::{Adjacency, Letter, TwistSystem};

/// One basis element `L_f(t)` per twist `t`, prime with supporting
/// half-twist `t` and central element `central`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub central: Central,
    pub offset: usize,
    pub prefix: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Model {
    pub system: TwistSystem,
    pub group: CentralExtGroup,
    /// Basis index of `T_0^2` and the twist `T_0`.
    pub square: Option<(usize, usize)>,
    pub families: Vec<Family>,
    forward: Vec<Automorphism>,
    backward: Vec<Automorphism>,
}

fn twist_suffix(system: &TwistSystem, t: usize) -> String {
    let name = &system.twists[t].name;
    match name.split_once('_') {
        Some((_, rest)) => rest.to_string(),
        None => name.trim_start_matches(|c: char| c.is_alphabetic()).to_string(),
    }
}

fn kind_index(system: &TwistSystem, t: usize) -> usize {
    match system.twists[t].name.chars().next() {
        Some('y') => 1,
        Some('z') => 2,
        _ => 0,
    }
}

impl Model {
    /// `square`: include `T_0^2` for the given twist. `families`: central
    /// element and name prefixes (per diagonal/vertical/horizontal twist)
    /// of each family. `mixed`: commutator of adjacent basis elements from
    /// different families.
    pub fn new(
        system: TwistSystem,
        square: Option<(usize, String)>,
        families: &[(Central, [&str; 3])],
        mixed: Central,
        central_names: [&str; 2],
    ) -> Self {
        let m = system.len();
        let mut names = Vec::new();
        let sq = square.map(|(t0, name)| {
            names.push(name);
            (0, t0)
        });
        let mut fams = Vec::new();
        for (central, prefix) in families {
            let offset = names.len();
            for t in 0..m {
                names.push(format!("{}{}", prefix[kind_index(&system, t)], twist_suffix(&system, t)));
            }
            fams.push(Family { central: *central, offset, prefix: prefix.iter().map(|s| s.to_string()).collect() });
        }
        let mut group = CentralExtGroup::new(names, central_names.map(String::from));
        for (fi, f) in fams.iter().enumerate() {
            for (gi, g) in fams.iter().enumerate() {
                for s in 0..m {
                    for t in 0..m {
                        if system.adjacent(s, t) {
                            let c = if fi == gi { f.central } else { mixed };
                            group.set_commutator(f.offset + s, g.offset + t, c);
                        }
                    }
                }
            }
        }
        if let Some((si, t0)) = sq {
            for f in &fams {
                for t in 0..m {
                    if system.adjacent(t0, t) {
                        group.set_commutator(si, f.offset + t, f.central);
                    }
                }
            }
        }
        let mut model = Model { system, group, square: sq, families: fams, forward: vec![], backward: vec![] };
        model.forward = (0..m).map(|t| model.generator_action(t)).collect();
        model.backward = model
            .forward
            .iter()
            .map(|a| a.then(&model.group, a).then(&model.group, a))
            .collect();
        model
    }

    /// `P̃_n` on the standard path: `s_1 = X_1^2` and `u_i` prime with
    /// supporting half-twist `X_i`, all with central element `c`.
    pub fn pure_braid(n: usize) -> Self {
        Model::new(TwistSystem::path(n), Some((0, "s1".into())), &[(MU, ["u", "u", "u"])], MU, ["c", "nu"])
    }

    /// `G_0(n)` on the tree of `K(a,b)` with central element `τ`.
    pub fn g0(system: TwistSystem) -> Self {
        Model::new(system, None, &[(NU, ["A_", "B_", "C_"])], NU, ["mu", "tau"])
    }

    /// `P̃_n` and `G_0(n)` together: `ξ, η, ζ` with `μ`, `a, b, c` with
    /// `ν`, and `T_0^2` for `T_0 = y_{1,1}`.
    pub fn combined(system: TwistSystem) -> Self {
        let t0 = system.index_of_name("y_1_1").expect("tree contains y_1_1");
        Model::new(
            system,
            Some((t0, "y_1_1^2".into())),
            &[(MU, ["xi_", "eta_", "zeta_"]), (NU, ["a_", "b_", "c_"])],
            NU,
            ["mu", "nu"],
        )
    }

    pub fn prime(&self, family: usize, twist: usize) -> Element {
        self.group.gen(self.families[family].offset + twist)
    }

    pub fn square_element(&self) -> Option<Element> {
        self.square.map(|(i, _)| self.group.gen(i))
    }

    fn generator_action(&self, t: usize) -> Automorphism {
        let g = &self.group;
        let mut images: Vec<Element> = (0..g.rank()).map(|i| g.gen(i)).collect();
        for f in &self.families {
            let l = self.prime_of(f, t);
            let tau = g.central(f.central);
            for e in 0..self.system.len() {
                let d = g.gen(f.offset + e);
                images[f.offset + e] = match self.system.adjacency(t, e) {
                    Adjacency::Same => g.mul(&g.inv(&d), &tau),
                    Adjacency::Disjoint => d,
                    Adjacency::Adjacent { orderly: true, .. } => g.mul(&l, &d),
                    Adjacency::Adjacent { orderly: false, .. } => g.product([&g.inv(&l), &d, &tau]),
                };
            }
        }
        if let Some((si, t0)) = self.square {
            let f = &self.families[0];
            let s = g.gen(si);
            let l = self.prime_of(f, t);
            if let Adjacency::Adjacent { point, .. } = self.system.adjacency(t0, t) {
                images[si] = if self.system.twists[t].origin == point {
                    g.mul(&s, &g.inv(&l))
                } else {
                    g.product([&s, &l, &g.central(f.central)])
                };
            }
        }
        Automorphism { images }
    }

    fn prime_of(&self, f: &Family, t: usize) -> Element {
        self.group.gen(f.offset + t)
    }

    pub fn action(&self, t: usize, sign: i8) -> &Automorphism {
        if sign > 0 {
            &self.forward[t]
        } else {
            &self.backward[t]
        }
    }

    /// `(e)_w`, letters applied left to right.
    pub fn act(&self, e: &Element, word: &[Letter]) -> Element {
        word.iter().fold(e.clone(), |acc, &(t, s)| self.action(t, s).apply(&self.group, &acc))
    }

    pub fn word_automorphism(&self, word: &[Letter]) -> Automorphism {
        let mut acc = Automorphism::identity(&self.group);
        for &(t, s) in word {
            acc = acc.then(&self.group, self.action(t, s));
        }
        acc
    }

    /// Relators of the twist system acting non-trivially.
    pub fn relator_failures(&self) -> Vec<String> {
        self.system
            .relators()
            .into_iter()
            .filter(|(_, w)| !self.word_automorphism(w).is_identity(&self.group))
            .map(|(n, _)| n)
            .collect()
    }

    /// Generators whose action is not an automorphism.
    pub fn form_failures(&self) -> Vec<usize> {
        (0..self.system.len()).filter(|&t| !self.forward[t].preserves_form(&self.group)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, ComplexParams};

    #[test]
    fn pure_braid_action_table() {
        let m = Model::pure_braid(6);
        let g = &m.group;
        let u = |i: usize| g.gen(i);
        let (s1, c) = (g.gen(0), g.central(MU));
        // x_2 on s_1 and the u_j
        let x2 = 1;
        assert_eq!(m.act(&s1, &[(x2, 1)]), g.mul(&s1, &g.inv(&u(2))));
        assert_eq!(m.act(&u(2), &[(x2, 1)]), g.mul(&g.inv(&u(2)), &c));
        assert_eq!(m.act(&u(1), &[(x2, 1)]), g.mul(&u(2), &u(1)));
        assert_eq!(m.act(&u(3), &[(x2, 1)]), g.mul(&u(2), &u(3)));
        assert_eq!(m.act(&u(4), &[(x2, 1)]), u(4));
        assert_eq!(m.act(&s1, &[(0, 1)]), s1);
        assert_eq!(g.commutator(&s1, &u(2)), MU);
        assert_eq!(g.commutator(&s1, &u(1)), 0);
        assert_eq!(g.commutator(&u(1), &u(2)), MU);
    }

    #[test]
    fn pure_braid_is_representation() {
        for n in 3..=7 {
            let m = Model::pure_braid(n);
            assert!(m.form_failures().is_empty());
            assert!(m.relator_failures().is_empty(), "{:?}", m.relator_failures());
        }
    }

    #[test]
    fn generator_order_four() {
        let m = Model::pure_braid(5);
        for t in 0..4 {
            let w = vec![(t, 1); 4];
            assert!(m.word_automorphism(&w).is_identity(&m.group));
            assert!(m.word_automorphism(&[(t, 1), (t, -1)]).is_identity(&m.group));
        }
    }

    #[test]
    fn squares_transport() {
        // x_2^2 = (s_1)_{x_2 x_1} = s_1 u_2^-1 u_1^-1, so u_1 = (x_2^2)_{x_1} x_2^-2
        let m = Model::pure_braid(5);
        let g = &m.group;
        let s1 = g.gen(0);
        let x2sq = m.act(&s1, &[(1, 1), (0, 1)]);
        assert_eq!(x2sq, g.product([&s1, &g.inv(&g.gen(2)), &g.inv(&g.gen(1))]));
        let u1 = g.mul(&m.act(&x2sq, &[(0, 1)]), &g.inv(&x2sq));
        assert_eq!(u1, g.gen(1));
        // coherent pairs are transported: (u_1)_{x_2 x_1} = u_2
        assert_eq!(m.act(&g.gen(1), &[(1, 1), (0, 1)]), g.gen(2));
    }

    #[test]
    fn tree_models_are_representations() {
        for (a, b) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            let c = build_complex(ComplexParams::new(a, b).unwrap()).unwrap();
            for m in [Model::g0(TwistSystem::from_complex(&c)), Model::combined(TwistSystem::from_complex(&c))] {
                assert!(m.form_failures().is_empty(), "({a},{b})");
                assert!(m.relator_failures().is_empty(), "({a},{b}) {:?}", m.relator_failures());
            }
        }
    }
}
