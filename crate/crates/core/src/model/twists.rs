//! Systems of polarized half-twists: the standard path of `B_n` and the
//! spanning tree of the triangles of `K(a,b)`.

use serde::{Deserialize, Serialize};

use crate::complex::{DegenerationComplex, EdgeKind, EdgeLabel};

/// Half-twist along a simple arc from `origin` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub name: String,
    pub origin: usize,
    pub end: usize,
    pub line: Option<EdgeLabel>,
}

impl Twist {
    pub fn endpoints(&self) -> [usize; 2] {
        [self.origin, self.end]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Adjacency {
    Same,
    Disjoint,
    /// Common endpoint `point`; orderly when it is the end of one arc and
    /// the origin of the other.
    Adjacent { point: usize, orderly: bool },
}

/// Letter `t^{±1}` of a word in the twist generators.
pub type Letter = (usize, i8);
pub type TwistWord = Vec<Letter>;

pub fn inverse_word(w: &[Letter]) -> TwistWord {
    w.iter().rev().map(|&(t, s)| (t, -s)).collect()
}

pub fn concat(parts: &[&[Letter]]) -> TwistWord {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwistSystem {
    pub points: usize,
    pub twists: Vec<Twist>,
    /// Planar positions of the points, used to order arcs around a point.
    pub positions: Vec<(f64, f64)>,
}

impl TwistSystem {
    /// `X_i` from point `i-1` to point `i`, `i = 1..n-1`.
    pub fn path(n: usize) -> Self {
        TwistSystem {
            points: n,
            twists: (1..n).map(|i| Twist { name: format!("x{i}"), origin: i - 1, end: i, line: None }).collect(),
            positions: (0..n).map(|i| (i as f64, 0.0)).collect(),
        }
    }

    /// Tree on the triangles of `K(a,b)`: every diagonal and vertical line
    /// and the horizontal lines `q3_{a+k,k}`. Diagonals and horizontals run
    /// from the upper-type triangle, verticals from the lower-type one.
    pub fn from_complex(c: &DegenerationComplex) -> Self {
        let a = c.params.a;
        let mut twists = Vec::new();
        for line in c.lines() {
            let tree = match line.kind {
                EdgeKind::Diagonal | EdgeKind::Vertical => true,
                EdgeKind::Horizontal => line.r == a + line.k,
            };
            if !tree {
                continue;
            }
            let tris = c.adjacent_triangles(&line);
            let (up, low) = if c.triangles[tris[0] - 1].upper { (tris[0], tris[1]) } else { (tris[1], tris[0]) };
            let (origin, end) = match line.kind {
                EdgeKind::Vertical => (low - 1, up - 1),
                _ => (up - 1, low - 1),
            };
            let prefix = ["x", "y", "z"][line.kind.epsilon() as usize - 1];
            twists.push(Twist { name: format!("{prefix}_{}_{}", line.r, line.k), origin, end, line: Some(line) });
        }
        let positions = c
            .triangles
            .iter()
            .map(|t| {
                let (sx, sy) = t.vertices.iter().fold((0.0, 0.0), |(x, y), v| (x + v.r as f64, y + v.k as f64));
                (sx / 3.0, sy / 3.0)
            })
            .collect();
        TwistSystem { points: c.triangle_count(), twists, positions }
    }

    pub fn len(&self) -> usize {
        self.twists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn index_of_line(&self, line: &EdgeLabel) -> Option<usize> {
        self.twists.iter().position(|t| t.line.as_ref() == Some(line))
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.twists.iter().position(|t| t.name == name)
    }

    pub fn adjacency(&self, i: usize, j: usize) -> Adjacency {
        if i == j {
            return Adjacency::Same;
        }
        let (s, t) = (&self.twists[i], &self.twists[j]);
        for p in s.endpoints() {
            if t.endpoints().contains(&p) {
                let orderly = (s.end == p) != (t.end == p);
                return Adjacency::Adjacent { point: p, orderly };
            }
        }
        Adjacency::Disjoint
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        matches!(self.adjacency(i, j), Adjacency::Adjacent { .. })
    }

    /// The arcs form a spanning tree of the points.
    pub fn is_tree(&self) -> bool {
        if self.twists.len() + 1 != self.points {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.points).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for t in &self.twists {
            let (x, y) = (find(&mut parent, t.origin), find(&mut parent, t.end));
            if x == y {
                return false;
            }
            parent[x] = y;
        }
        true
    }

    /// Arcs at `p` in counter-clockwise order of their other endpoints.
    pub fn arcs_at(&self, p: usize) -> Vec<usize> {
        let (px, py) = self.positions[p];
        let mut arcs: Vec<(f64, usize)> = self
            .twists
            .iter()
            .enumerate()
            .filter(|(_, t)| t.endpoints().contains(&p))
            .map(|(i, t)| {
                let q = if t.origin == p { t.end } else { t.origin };
                let (qx, qy) = self.positions[q];
                ((qy - py).atan2(qx - px), i)
            })
            .collect();
        arcs.sort_by(|x, y| x.0.total_cmp(&y.0));
        arcs.into_iter().map(|(_, i)| i).collect()
    }

    /// Defining relators of the group generated by the twists: braid
    /// relations for adjacent arcs, commutation for disjoint ones, the
    /// triple relation `[X, Z Y Z^-1]` at every point of valence three
    /// (`X, Y, Z` counter-clockwise) and `[X_2, (X_2)_{X_1 X_3}]` for every
    /// chain `X_1, X_2, X_3`.
    pub fn relators(&self) -> Vec<(String, TwistWord)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (ni, nj) = (&self.twists[i].name, &self.twists[j].name);
                if self.adjacent(i, j) {
                    out.push((format!("braid({ni},{nj})"), vec![(i, 1), (j, 1), (i, 1), (j, -1), (i, -1), (j, -1)]));
                } else {
                    out.push((format!("commute({ni},{nj})"), vec![(i, 1), (j, 1), (i, -1), (j, -1)]));
                }
            }
        }
        for p in 0..self.points {
            let arcs = self.arcs_at(p);
            if arcs.len() == 3 {
                let (x, y, z) = (arcs[0], arcs[1], arcs[2]);
                let conj = vec![(z, 1), (y, 1), (z, -1)];
                let w = concat(&[&[(x, 1)], &conj, &[(x, -1)], &inverse_word(&conj)]);
                out.push((format!("triple({})", p + 1), w));
            }
        }
        for j in 0..n {
            for i in 0..n {
                for k in i + 1..n {
                    if self.adjacent(i, j) && self.adjacent(j, k) && !self.adjacent(i, k) {
                        let shared_i = self.shared_point(i, j);
                        if shared_i == self.shared_point(j, k) {
                            continue;
                        }
                        let c = vec![(k, -1), (i, -1), (j, 1), (i, 1), (k, 1)];
                        let w = concat(&[&[(j, 1)], &c, &[(j, -1)], &inverse_word(&c)]);
                        let names = [i, j, k].map(|t| self.twists[t].name.clone());
                        out.push((format!("chain({})", names.join(",")), w));
                    }
                }
            }
        }
        out
    }

    fn shared_point(&self, i: usize, j: usize) -> Option<usize> {
        match self.adjacency(i, j) {
            Adjacency::Adjacent { point, .. } => Some(point),
            _ => None,
        }
    }
}
