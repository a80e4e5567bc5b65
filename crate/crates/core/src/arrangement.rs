//! A real line arrangement realizing the lines of `K(a,b)`: every vertex is
//! placed on the parabola `y = -x^2`, every interior edge becomes the real
//! line through its two endpoints, and the singular fibers of the projection
//! `(x, y) -> x` are listed from left to right.
//!
//! Points on a parabola are never collinear, so the only multiple points are
//! the vertices; every other pair of lines meets once, transversally (a
//! parasitic intersection). Abscissas increase with the `(k, r)` order of the
//! vertices, which makes the fiber order of the lines through a vertex, just
//! to its left, coincide with their puncture order.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};

use crate::complex::{DegenerationComplex, EdgeLabel, Vertex};
use crate::error::{Error, Result};

/// Exact ordered field used for the realization.
pub trait OrderedField: Clone + Debug + Ord + Num + Signed + FromPrimitive {}

impl<T: Clone + Debug + Ord + Num + Signed + FromPrimitive> OrderedField for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EventKind {
    Vertex(Vertex),
    /// Two lines (puncture-order indices) without a common vertex.
    Crossing(usize, usize),
}

#[derive(Clone, Debug)]
pub struct Event<T> {
    pub x: T,
    pub kind: EventKind,
    /// 1-based fiber position of the lowest line of the event.
    pub first: usize,
    /// Lines through the point, bottom to top just left of it.
    pub lines: Vec<usize>,
}

impl<T> Event<T> {
    pub fn last(&self) -> usize {
        self.first + self.lines.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct LineArrangement<T> {
    pub lines: Vec<EdgeLabel>,
    /// Abscissa of each vertex carrying a line, in `(k, r)` order.
    pub abscissas: Vec<(Vertex, T)>,
    /// `base_order[p]` is the line at fiber position `p + 1` left of all
    /// events.
    pub base_order: Vec<usize>,
    pub events: Vec<Event<T>>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn abscissa<T: OrderedField>(i: usize, seed: u64) -> T {
    const DENOM: i64 = 1_000_003;
    let wobble = (splitmix((seed << 32) ^ i as u64) % DENOM as u64) as i64;
    T::from_i64(i as i64).unwrap() + T::from_i64(wobble).unwrap() / T::from_i64(DENOM).unwrap()
}

/// Places the vertices and computes the singular fibers, retrying with a new
/// perturbation until the realization is generic.
pub fn realize<T: OrderedField>(c: &DegenerationComplex) -> Result<LineArrangement<T>> {
    let mut last = String::new();
    for seed in 0..64 {
        match realize_with_seed(c, seed) {
            Ok(r) => return Ok(r),
            Err(Error::NonGeneric(why)) => last = why,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonGeneric(last))
}

pub fn realize_with_seed<T: OrderedField>(c: &DegenerationComplex, seed: u64) -> Result<LineArrangement<T>> {
    let lines = c.lines();
    let mut carriers: Vec<Vertex> = lines.iter().flat_map(|l| l.endpoints()).collect();
    carriers.sort_by_key(|v| (v.k, v.r));
    carriers.dedup();
    let abscissas: Vec<(Vertex, T)> =
        carriers.iter().enumerate().map(|(i, &v)| (v, abscissa(i, seed))).collect();
    let t_of = |v: Vertex| abscissas.iter().find(|(w, _)| *w == v).map(|(_, t)| t.clone()).unwrap();

    // y = slope * x + intercept through (t_u, -t_u^2) and (t_w, -t_w^2)
    let coeffs: Vec<(T, T)> = lines
        .iter()
        .map(|l| {
            let [u, w] = l.endpoints();
            let (tu, tw) = (t_of(u), t_of(w));
            (-(tu.clone() + tw.clone()), tu * tw)
        })
        .collect();
    let y_at = |i: usize, x: &T| coeffs[i].0.clone() * x.clone() + coeffs[i].1.clone();

    let mut raw: Vec<(T, EventKind, Vec<usize>)> = Vec::new();
    for (v, t) in &abscissas {
        let through: Vec<usize> = (0..lines.len()).filter(|&i| lines[i].endpoints().contains(v)).collect();
        raw.push((t.clone(), EventKind::Vertex(*v), through));
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (ei, ej) = (lines[i].endpoints(), lines[j].endpoints());
            if ei.iter().any(|v| ej.contains(v)) {
                continue;
            }
            let ds = coeffs[i].0.clone() - coeffs[j].0.clone();
            if ds.is_zero() {
                return Err(Error::NonGeneric(format!("lines {} and {} are parallel", lines[i], lines[j])));
            }
            let x = (coeffs[j].1.clone() - coeffs[i].1.clone()) / ds;
            raw.push((x, EventKind::Crossing(i, j), vec![i, j]));
        }
    }
    raw.sort_by(|p, q| p.0.cmp(&q.0));
    if raw.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::NonGeneric("two singular points share a fiber".into()));
    }

    let x0 = raw[0].0.clone() - T::one();
    let mut order: Vec<usize> = (0..lines.len()).collect();
    order.sort_by_key(|&i| y_at(i, &x0));
    if order.windows(2).any(|w| y_at(w[0], &x0) == y_at(w[1], &x0)) {
        return Err(Error::NonGeneric("base fiber has a double point".into()));
    }
    let base_order = order.clone();

    let mut events = Vec::with_capacity(raw.len());
    for (x, kind, members) in raw {
        let mut pos: Vec<usize> =
            members.iter().map(|m| order.iter().position(|o| o == m).unwrap()).collect();
        pos.sort_unstable();
        if pos.windows(2).any(|w| w[1] != w[0] + 1) {
            return Err(Error::NonGeneric(format!("lines of {kind:?} are not adjacent in the fiber")));
        }
        let first = pos[0];
        let block: Vec<usize> = order[first..first + pos.len()].to_vec();
        order[first..first + pos.len()].reverse();
        events.push(Event { x, kind, first: first + 1, lines: block });
    }
    Ok(LineArrangement { lines, abscissas, base_order, events })
}
