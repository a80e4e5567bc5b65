//! The planar 2-complex `K(a,b)`: lattice points of the polygon with corners
//! `(0,0), (a,0), (a+b,b), (0,b)`, its diagonal/vertical/horizontal edges,
//! the triangulation, vertex classification and the doubled puncture set.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComplexParams {
    pub a: i64,
    pub b: i64,
}

impl ComplexParams {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < 1 || b <= 1 {
            return Err(Error::InvalidParams { a, b });
        }
        Ok(ComplexParams { a, b })
    }

    /// Number of lattice points in row `k`, minus one.
    pub fn row_end(&self, k: i64) -> i64 {
        self.a + k
    }
}

/// Lattice point `ω_{r,k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vertex {
    pub r: i64,
    pub k: i64,
}

impl Vertex {
    pub const fn new(r: i64, k: i64) -> Self {
        Vertex { r, k }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.k)
    }
}

/// Edge direction; the discriminant is the index `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    Diagonal = 1,
    Vertical = 2,
    Horizontal = 3,
}

impl EdgeKind {
    pub fn epsilon(self) -> u8 {
        self as u8
    }

    pub fn from_epsilon(e: u8) -> Option<Self> {
        match e {
            1 => Some(EdgeKind::Diagonal),
            2 => Some(EdgeKind::Vertical),
            3 => Some(EdgeKind::Horizontal),
            _ => None,
        }
    }
}

/// Label `q^{(ε)}_{r,k}` of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeLabel {
    pub kind: EdgeKind,
    pub r: i64,
    pub k: i64,
}

impl EdgeLabel {
    pub const fn new(kind: EdgeKind, r: i64, k: i64) -> Self {
        EdgeLabel { kind, r, k }
    }

    /// Sort key `(k, r, ε)` of the puncture order.
    pub fn order_key(&self) -> (i64, i64, u8) {
        (self.k, self.r, self.kind.epsilon())
    }

    /// The segment associated with the label.
    pub fn endpoints(&self) -> [Vertex; 2] {
        let (r, k) = (self.r, self.k);
        match self.kind {
            EdgeKind::Diagonal => [Vertex::new(r - 1, k - 1), Vertex::new(r, k)],
            EdgeKind::Vertical => [Vertex::new(r, k - 1), Vertex::new(r, k)],
            EdgeKind::Horizontal => [Vertex::new(r - 1, k), Vertex::new(r, k)],
        }
    }
}

impl PartialOrd for EdgeLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EdgeLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}_{{{},{}}}", self.kind.epsilon(), self.r, self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub label: EdgeLabel,
    pub endpoints: [Vertex; 2],
    pub boundary: bool,
}

/// Triangle with vertices listed counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    /// 1-based sheet index.
    pub index: usize,
    pub vertices: [Vertex; 3],
    pub upper: bool,
}

impl Triangle {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    TwoPoint,
    ThreePoint,
    SixPoint,
    CornerUnclassified,
}

impl VertexKind {
    pub fn name(self) -> &'static str {
        match self {
            VertexKind::TwoPoint => "2-point",
            VertexKind::ThreePoint => "3-point",
            VertexKind::SixPoint => "6-point",
            VertexKind::CornerUnclassified => "corner",
        }
    }

    /// Expected number of incident interior edges.
    pub fn valence(self) -> usize {
        match self {
            VertexKind::TwoPoint => 1,
            VertexKind::ThreePoint => 2,
            VertexKind::SixPoint => 6,
            VertexKind::CornerUnclassified => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexClass {
    pub vertex: Vertex,
    pub kind: VertexKind,
    /// Number of punctures of `K` near the vertex, `2 * |incident_lines|`.
    pub multiplicity: usize,
    /// Interior edges through the vertex, in puncture order.
    pub incident_lines: Vec<EdgeLabel>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegenerationComplex {
    pub params: ComplexParams,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub triangles: Vec<Triangle>,
}

pub fn build_complex(params: ComplexParams) -> Result<DegenerationComplex> {
    let ComplexParams { a, b } = ComplexParams::new(params.a, params.b)?;
    let mut vertices = Vec::new();
    for k in 0..=b {
        for r in 0..=a + k {
            vertices.push(Vertex::new(r, k));
        }
    }

    let mut edges = Vec::new();
    let mut push = |kind, r, k, boundary| {
        let label = EdgeLabel::new(kind, r, k);
        edges.push(Edge { label, endpoints: label.endpoints(), boundary });
    };
    for k in 0..=b {
        for r in 0..=a + k {
            if k >= 1 {
                // diagonal from (r-1,k-1): interior unless on the slanted side
                if r >= 1 {
                    push(EdgeKind::Diagonal, r, k, r == a + k);
                }
                if r < a + k {
                    push(EdgeKind::Vertical, r, k, r == 0);
                }
            }
            if r >= 1 {
                push(EdgeKind::Horizontal, r, k, k == 0 || k == b);
            }
        }
    }
    edges.sort_by_key(|e| (e.boundary, e.label));

    let mut triangles = Vec::new();
    for k in 0..b {
        for r in 0..=a + k {
            if r < a + k {
                triangles.push(Triangle {
                    index: triangles.len() + 1,
                    vertices: [Vertex::new(r, k), Vertex::new(r + 1, k), Vertex::new(r + 1, k + 1)],
                    upper: false,
                });
            }
            triangles.push(Triangle {
                index: triangles.len() + 1,
                vertices: [Vertex::new(r, k), Vertex::new(r + 1, k + 1), Vertex::new(r, k + 1)],
                upper: true,
            });
        }
    }

    Ok(DegenerationComplex { params: ComplexParams { a, b }, vertices, edges, triangles })
}

impl DegenerationComplex {
    /// Interior edges (the lines of the degenerated branch curve) in
    /// puncture order.
    pub fn lines(&self) -> Vec<EdgeLabel> {
        let mut v: Vec<EdgeLabel> =
            self.edges.iter().filter(|e| !e.boundary).map(|e| e.label).collect();
        v.sort();
        v
    }

    pub fn vertex_kind(&self, v: Vertex) -> VertexKind {
        let ComplexParams { a, b } = self.params;
        if v == Vertex::new(0, b) || v == Vertex::new(a + b, b) {
            VertexKind::CornerUnclassified
        } else if v == Vertex::new(0, 0) || v == Vertex::new(a, 0) {
            VertexKind::TwoPoint
        } else if v.k > 0 && v.k < b && v.r > 0 && v.r < a + v.k {
            VertexKind::SixPoint
        } else {
            VertexKind::ThreePoint
        }
    }

    /// Interior edges incident to `v`, in puncture order.
    pub fn incident_lines(&self, v: Vertex) -> Vec<EdgeLabel> {
        self.lines().into_iter().filter(|l| l.endpoints().contains(&v)).collect()
    }

    /// The two triangles sharing an edge (one for a boundary edge).
    pub fn adjacent_triangles(&self, e: &EdgeLabel) -> Vec<usize> {
        let [p, q] = e.endpoints();
        self.triangles.iter().filter(|t| t.contains(p) && t.contains(q)).map(|t| t.index).collect()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn line_count(&self) -> usize {
        self.edges.iter().filter(|e| !e.boundary).count()
    }

    /// Pairs of lines with no common endpoint, in lexicographic puncture
    /// order.
    pub fn parasitic_pairs(&self) -> Vec<(EdgeLabel, EdgeLabel)> {
        let lines = self.lines();
        let mut out = Vec::new();
        for (i, l) in lines.iter().enumerate() {
            for m in &lines[i + 1..] {
                let (le, me) = (l.endpoints(), m.endpoints());
                if !le.iter().any(|v| me.contains(v)) {
                    out.push((*l, *m));
                }
            }
        }
        out
    }

    pub fn puncture_set(&self) -> PunctureSet {
        PunctureSet::new(&self.lines())
    }
}

/// Every vertex with its kind and incident interior edges, in `(k, r)` order.
pub fn classify_vertices(c: &DegenerationComplex) -> Vec<VertexClass> {
    let lines = c.lines();
    let mut by_vertex: BTreeMap<(i64, i64), Vec<EdgeLabel>> = BTreeMap::new();
    for v in &c.vertices {
        by_vertex.insert((v.k, v.r), Vec::new());
    }
    for l in &lines {
        for v in l.endpoints() {
            by_vertex.get_mut(&(v.k, v.r)).expect("endpoint is a lattice point").push(*l);
        }
    }
    by_vertex
        .into_iter()
        .map(|((k, r), incident_lines)| {
            let vertex = Vertex::new(r, k);
            VertexClass {
                vertex,
                kind: c.vertex_kind(vertex),
                multiplicity: 2 * incident_lines.len(),
                incident_lines,
            }
        })
        .collect()
}

/// Puncture `q^{(ε)}_{r,k,δ}` of the doubled set `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Puncture {
    pub line: EdgeLabel,
    pub delta: u8,
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q{}_{{{},{},{}}}",
            self.line.kind.epsilon(),
            self.line.r,
            self.line.k,
            self.delta
        )
    }
}

/// The ordered puncture set; position `p` (1-based) is the `p`-th point on
/// the real line of the base fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureSet {
    punctures: Vec<Puncture>,
}

impl PunctureSet {
    pub fn new(lines: &[EdgeLabel]) -> Self {
        let mut lines = lines.to_vec();
        lines.sort();
        let punctures = lines
            .iter()
            .flat_map(|&line| [0, 1].map(|delta| Puncture { line, delta }))
            .collect();
        PunctureSet { punctures }
    }

    pub fn len(&self) -> usize {
        self.punctures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.punctures.is_empty()
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }

    /// 1-based position of a puncture.
    pub fn position(&self, line: EdgeLabel, delta: u8) -> Option<usize> {
        self.punctures.iter().position(|p| p.line == line && p.delta == delta).map(|i| i + 1)
    }

    pub fn get(&self, position: usize) -> Option<&Puncture> {
        position.checked_sub(1).and_then(|i| self.punctures.get(i))
    }

    /// Index of the line among the lines, 0-based.
    pub fn line_index(&self, line: EdgeLabel) -> Option<usize> {
        self.position(line, 0).map(|p| (p - 1) / 2)
    }
}

/// Closed-form counts for `K(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsReport {
    pub a: i64,
    pub b: i64,
    /// Number of planes (triangles).
    pub n: i64,
    /// Number of interior edges.
    pub lines: i64,
    /// Number of punctures, `2 * lines`.
    pub m: i64,
    pub m1: i64,
    /// Degree of the projective branch curve, `2 * m1`.
    pub degree: i64,
    pub b_minus_2a: i64,
    pub two_points: i64,
    pub three_points: i64,
    pub six_points: i64,
}

pub fn closed_form_counts(params: ComplexParams) -> CountsReport {
    let ComplexParams { a, b } = params;
    let lines = 3 * a * b - a + 3 * b * (b - 1) / 2;
    let m1 = 3 * a * b - a - b + (3 * b * b - 3 * b) / 2;
    CountsReport {
        a,
        b,
        n: 2 * a * b + b * b,
        lines,
        m: 2 * lines,
        m1,
        degree: 2 * m1,
        b_minus_2a: b - 2 * a,
        two_points: 2,
        // boundary lattice points minus the two 2-points and two corners
        three_points: 2 * a + 3 * b - 4,
        // interior lattice points
        six_points: (1..b).map(|k| a + k - 1).sum(),
    }
}

/// Counts obtained by enumerating the complex.
pub fn census(params: ComplexParams) -> Result<CountsReport> {
    let c = build_complex(params)?;
    let classes = classify_vertices(&c);
    let count = |kind| classes.iter().filter(|v| v.kind == kind).count() as i64;
    let closed = closed_form_counts(params);
    let lines = c.line_count() as i64;
    Ok(CountsReport {
        n: c.triangle_count() as i64,
        lines,
        m: c.puncture_set().len() as i64,
        two_points: count(VertexKind::TwoPoint),
        three_points: count(VertexKind::ThreePoint),
        six_points: count(VertexKind::SixPoint),
        ..closed
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(a: i64, b: i64) -> DegenerationComplex {
        build_complex(ComplexParams::new(a, b).unwrap()).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ComplexParams::new(0, 2).is_err());
        assert!(ComplexParams::new(1, 1).is_err());
        assert!(build_complex(ComplexParams { a: 2, b: 1 }).is_err());
    }

    #[test]
    fn small_counts() {
        let c = complex(1, 2);
        assert_eq!(c.triangle_count(), 8);
        assert_eq!(c.line_count(), 8);
        assert_eq!(c.vertices.len(), 9);
        let c = complex(2, 3);
        assert_eq!(c.triangle_count(), 21);
        assert_eq!(c.line_count(), 25);
    }

    #[test]
    fn classification_1_2() {
        let c = complex(1, 2);
        let classes = classify_vertices(&c);
        let kind = |r, k| classes.iter().find(|v| v.vertex == Vertex::new(r, k)).unwrap().clone();
        for (r, k) in [(0, 0), (1, 0)] {
            assert_eq!(kind(r, k).kind, VertexKind::TwoPoint);
        }
        for (r, k) in [(0, 1), (2, 1), (1, 2), (2, 2)] {
            assert_eq!(kind(r, k).kind, VertexKind::ThreePoint);
        }
        for (r, k) in [(0, 2), (3, 2)] {
            let v = kind(r, k);
            assert_eq!(v.kind, VertexKind::CornerUnclassified);
            assert!(v.incident_lines.is_empty());
        }
        use EdgeKind::*;
        let six = kind(1, 1);
        assert_eq!(six.kind, VertexKind::SixPoint);
        assert_eq!(six.multiplicity, 12);
        let mut expected = vec![
            EdgeLabel::new(Diagonal, 1, 1),
            EdgeLabel::new(Diagonal, 2, 2),
            EdgeLabel::new(Vertical, 1, 1),
            EdgeLabel::new(Vertical, 1, 2),
            EdgeLabel::new(Horizontal, 1, 1),
            EdgeLabel::new(Horizontal, 2, 1),
        ];
        expected.sort();
        assert_eq!(six.incident_lines, expected);
        assert_eq!(
            kind(2, 1).incident_lines,
            vec![EdgeLabel::new(Horizontal, 2, 1), EdgeLabel::new(Vertical, 2, 2)]
        );
        assert_eq!(kind(0, 0).incident_lines, vec![EdgeLabel::new(Diagonal, 1, 1)]);
    }

    #[test]
    fn incidence_pairs_1_2() {
        let c = complex(1, 2);
        let shared: usize = classify_vertices(&c)
            .iter()
            .map(|v| v.incident_lines.len() * v.incident_lines.len().saturating_sub(1) / 2)
            .sum();
        assert_eq!(shared, 19);
        assert_eq!(c.parasitic_pairs().len(), 28 - 19);
        use EdgeKind::*;
        let pairs = c.parasitic_pairs();
        let d11 = EdgeLabel::new(Diagonal, 1, 1);
        assert!(pairs.contains(&(d11, EdgeLabel::new(Vertical, 2, 2))));
        assert!(!pairs.contains(&(d11, EdgeLabel::new(Vertical, 1, 1))));
    }

    #[test]
    fn puncture_order() {
        let c = complex(1, 2);
        let k = c.puncture_set();
        assert_eq!(k.len(), 16);
        let keys: Vec<_> =
            k.punctures().iter().map(|p| (p.line.order_key(), p.delta)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(k.position(EdgeLabel::new(EdgeKind::Diagonal, 1, 1), 1), Some(2));
    }

    #[test]
    fn edges_have_two_triangles() {
        let c = complex(2, 3);
        for e in &c.edges {
            let t = c.adjacent_triangles(&e.label);
            assert_eq!(t.len(), if e.boundary { 1 } else { 2 }, "{}", e.label);
        }
    }

    #[test]
    fn census_examples() {
        let r = census(ComplexParams::new(1, 2).unwrap()).unwrap();
        assert_eq!((r.n, r.lines, r.m, r.m1, r.degree, r.b_minus_2a), (8, 8, 16, 6, 12, 0));
        let r = census(ComplexParams::new(1, 3).unwrap()).unwrap();
        assert_eq!((r.n, r.lines, r.m1, r.b_minus_2a), (15, 17, 14, 1));
        let r = census(ComplexParams::new(2, 2).unwrap()).unwrap();
        assert_eq!((r.n, r.b_minus_2a), (12, -2));
    }
}
