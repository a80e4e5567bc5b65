//! Braid monodromy factorization of the regenerated branch curve.
//!
//! Each vertex of `K(a,b)` contributes a local factorization in a disc
//! around it, each pair of lines without a common vertex contributes four
//! node factors, and the pieces are glued along a real line arrangement
//! realizing the lines (see `arrangement`). Every line is doubled into two
//! punctures, so the braids of the arrangement are cabled.
//!
//! Notation in the local models: positions are 1-based inside the block of
//! the vertex, line `l` (numbered in puncture order) occupies `2l-1` (`l`)
//! and `2l` (`l'`). `Z_{p,q}` is the half-twist along the path passing
//! above every intermediate puncture, `Z̄_{p,q}` the one passing below, and
//! `(X)_Y` is `Y X Y^-1`. The triple
//! `Z^{(3)}_{i i', j} = Z^3_{i',j} Z^3_{i,j} (Z^3_{i,j})_{Z_{i,i'}}`
//! is taken with `j` the member of the other line adjacent to the pair.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::{realize, EventKind, LineArrangement, OrderedField};
use crate::braid::{braid_equal, homomorphisms, BraidWord, HalfTwistPath, Passage};
use crate::complex::{
    classify_vertices, DegenerationComplex, EdgeLabel, PunctureSet, Vertex, VertexClass, VertexKind,
};
use crate::error::{Error, Result};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingType {
    Branch,
    Node,
    Cusp,
}

impl SingType {
    pub fn from_exponent(e: u8) -> Option<Self> {
        match e {
            1 => Some(SingType::Branch),
            2 => Some(SingType::Node),
            3 => Some(SingType::Cusp),
            _ => None,
        }
    }

    pub fn exponent(self) -> u8 {
        match self {
            SingType::Branch => 1,
            SingType::Node => 2,
            SingType::Cusp => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SingType::Branch => "branch",
            SingType::Node => "node",
            SingType::Cusp => "cusp",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FactorOrigin {
    Vertex(Vertex),
    Parasitic(EdgeLabel, EdgeLabel),
}

impl fmt::Display for FactorOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorOrigin::Vertex(v) => write!(f, "vertex{v}"),
            FactorOrigin::Parasitic(l, m) => write!(f, "parasitic({l},{m})"),
        }
    }
}

/// `conjugator · H(core)^exponent · conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub conjugator: BraidWord,
    pub core: HalfTwistPath,
    pub exponent: u8,
    pub origin: FactorOrigin,
}

impl Factor {
    pub fn new(conjugator: BraidWord, core: HalfTwistPath, exponent: u8, origin: FactorOrigin) -> Result<Self> {
        core.validate(conjugator.strands())?;
        if SingType::from_exponent(exponent).is_none() {
            return Err(Error::MalformedPath(format!("exponent {exponent} not in 1..=3")));
        }
        Ok(Factor { conjugator, core, exponent, origin })
    }

    pub fn sing_type(&self) -> SingType {
        SingType::from_exponent(self.exponent).expect("exponent checked at construction")
    }

    pub fn strands(&self) -> usize {
        self.conjugator.strands()
    }

    pub fn word(&self) -> BraidWord {
        let core = self.core.to_word(self.strands()).expect("core validated at construction");
        core.pow(self.exponent as i64).conjugated_by(&self.conjugator)
    }

    /// The half-twist `conjugator · H(core) · conjugator^-1` whose power the
    /// factor is.
    pub fn half_twist(&self) -> BraidWord {
        let core = self.core.to_word(self.strands()).expect("core validated at construction");
        core.conjugated_by(&self.conjugator)
    }

    /// `w · factor · w^-1`.
    pub fn conjugated_by(&self, w: &BraidWord) -> Factor {
        Factor { conjugator: w.mul(&self.conjugator), ..self.clone() }
    }

    /// The same factor on `strands` strands, shifted up by `offset`.
    pub fn embedded(&self, strands: usize, offset: usize) -> Factor {
        Factor {
            conjugator: self.conjugator.embedded(strands, offset),
            core: HalfTwistPath {
                start: self.core.start + offset,
                end: self.core.end + offset,
                shape: self.core.shape.clone(),
            },
            exponent: self.exponent,
            origin: self.origin,
        }
    }
}

fn product(strands: usize, factors: &[Factor]) -> BraidWord {
    factors.iter().fold(BraidWord::identity(strands), |acc, f| acc.mul(&f.word()))
}

/// Factors of one vertex or one parasitic crossing, in the local block of
/// punctures of its lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactors {
    pub origin: FactorOrigin,
    /// Lines of the block in puncture order; line `i` owns local positions
    /// `2i+1` and `2i+2`.
    pub lines: Vec<EdgeLabel>,
    pub factors: Vec<Factor>,
}

impl LocalFactors {
    pub fn strands(&self) -> usize {
        2 * self.lines.len()
    }

    pub fn product(&self) -> BraidWord {
        product(self.strands(), &self.factors)
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.exponent as i64).sum()
    }

    /// The braid the block has to produce: the cabled full twist of its
    /// lines followed by a half-twist inside every doubled pair.
    pub fn target(&self) -> BraidWord {
        let s = self.lines.len();
        match self.origin {
            FactorOrigin::Parasitic(..) => BraidWord::full_twist(s).cabled(),
            FactorOrigin::Vertex(_) => (0..s).fold(BraidWord::full_twist(s).cabled(), |acc, i| {
                acc.mul(&BraidWord::generator(2 * s, 2 * i + 1))
            }),
        }
    }
}

struct Block {
    strands: usize,
    origin: FactorOrigin,
    factors: Vec<Factor>,
}

impl Block {
    fn new(strands: usize, origin: FactorOrigin) -> Self {
        Block { strands, origin, factors: Vec::new() }
    }

    fn id(&self) -> BraidWord {
        BraidWord::identity(self.strands)
    }

    fn word(&self, letters: &[i32]) -> BraidWord {
        BraidWord::from_letters(self.strands, letters.iter().copied()).expect("letters within the block")
    }

    fn push(&mut self, conjugator: &BraidWord, core: HalfTwistPath, exponent: u8) {
        self.factors.push(Factor::new(conjugator.clone(), core, exponent, self.origin).expect("local factor"));
    }

    fn z(&mut self, conjugator: &BraidWord, p: usize, q: usize, side: Passage, exponent: u8) {
        self.push(conjugator, HalfTwistPath::uniform(p, q, side), exponent);
    }

    /// `Z^{(3)}` between the single puncture `s` and the pair `(q, q+1)`.
    fn cusp_triple(&mut self, conjugator: &BraidWord, s: usize, q: usize, side: Passage) {
        let pair = HalfTwistPath::uniform(q, q + 1, side).to_word(self.strands).expect("adjacent pair");
        self.z(conjugator, s, q + 1, side, 3);
        self.z(conjugator, s, q, side, 3);
        self.z(&conjugator.mul(&pair), s, q, side, 3);
    }

    /// `Z^{(2)}_{i i', j}` with `i = q`: `Z^2_{i',j} Z^2_{i,j}`.
    fn node_pair(&mut self, conjugator: &BraidWord, q: usize, s: usize, side: Passage) {
        self.z(conjugator, q + 1, s, side, 2);
        self.z(conjugator, q, s, side, 2);
    }

    /// Branch point of the pair `(p, p+1)` whose path first circles the
    /// neighbouring pair on the given side.
    fn circling_branch(&mut self, conjugator: &BraidWord, p: usize, neighbour_left: bool) {
        let p = p as i32;
        let lasso = if neighbour_left {
            self.word(&[p - 1, p - 2, p - 2, p - 1])
        } else {
            self.word(&[p + 1, p + 2, p + 2, p + 1])
        };
        self.push(&conjugator.mul(&lasso.inverse()), HalfTwistPath::below(p as usize, p as usize + 1), 1);
    }
}

fn expect_kind(v: &VertexClass, kind: VertexKind) -> Result<()> {
    if v.kind != kind {
        return Err(Error::WrongVertexKind {
            r: v.vertex.r,
            k: v.vertex.k,
            found: v.kind.name(),
            expected: kind.name(),
        });
    }
    Ok(())
}

/// A 2-point: the branch point of the doubled pair of its line.
pub fn local_factors_2pt(v: &VertexClass) -> Result<LocalFactors> {
    expect_kind(v, VertexKind::TwoPoint)?;
    let mut b = Block::new(2, FactorOrigin::Vertex(v.vertex));
    b.z(&b.id(), 1, 2, Passage::Above, 1);
    Ok(LocalFactors { origin: b.origin, lines: v.incident_lines.clone(), factors: b.factors })
}

/// Which line of a 3-point regenerates first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreePointCase {
    /// `Z^{(3)}_{i i', j} Z̃_{j j'(i)}` with `i` the lower line.
    LowerFirst,
    /// `Z^{(3)}_{j j', i} Z̃_{i i'(j)}` with `j` the upper line.
    UpperFirst,
}

/// The bottom and left sides of the polygon regenerate the lower line
/// first, the top and slanted sides the upper one.
pub fn three_point_case(c: &DegenerationComplex, v: Vertex) -> ThreePointCase {
    if v.k == 0 || v.r == 0 {
        ThreePointCase::LowerFirst
    } else {
        debug_assert!(v.k == c.params.b || v.r == c.params.a + v.k);
        ThreePointCase::UpperFirst
    }
}

pub fn local_factors_3pt_case(v: &VertexClass, case: ThreePointCase) -> Result<LocalFactors> {
    expect_kind(v, VertexKind::ThreePoint)?;
    let mut b = Block::new(4, FactorOrigin::Vertex(v.vertex));
    let id = b.id();
    match case {
        ThreePointCase::LowerFirst => {
            b.cusp_triple_pair_first(&id, 1, 3, Passage::Above);
            b.circling_branch(&id, 3, true);
        }
        ThreePointCase::UpperFirst => {
            b.cusp_triple(&id, 2, 3, Passage::Above);
            b.circling_branch(&id, 1, false);
        }
    }
    Ok(LocalFactors { origin: b.origin, lines: v.incident_lines.clone(), factors: b.factors })
}

impl Block {
    /// `Z^{(3)}_{i i', j}` with the pair `(q, q+1)` below the single `s`:
    /// `Z^3_{i',j} Z^3_{i,j} (Z^3_{i,j})_{Z_{i,i'}}`.
    fn cusp_triple_pair_first(&mut self, conjugator: &BraidWord, q: usize, s: usize, side: Passage) {
        let pair = HalfTwistPath::uniform(q, q + 1, side).to_word(self.strands).expect("adjacent pair");
        self.z(conjugator, q + 1, s, side, 3);
        self.z(conjugator, q, s, side, 3);
        self.z(&conjugator.mul(&pair), q, s, side, 3);
    }
}

/// A 3-point with the case taken from its position on the boundary.
pub fn local_factors_3pt(c: &DegenerationComplex, v: &VertexClass) -> Result<LocalFactors> {
    local_factors_3pt_case(v, three_point_case(c, v.vertex))
}

/// Model used for the 6-points.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SixPointModel {
    /// The regeneration formula with the path conventions of this module.
    #[default]
    Transcribed,
    /// Six lines in general position, cabled, plus a branch point per
    /// line. It has the correct local product but not the singularities of
    /// the regenerated curve; it exists to test the gluing independently.
    Reference,
}

/// The braid `( )^•` conjugates by. Identity: no motion beyond the
/// surrounding factors is applied.
pub fn bullet_motion(strands: usize) -> BraidWord {
    BraidWord::identity(strands)
}

/// The 6-point formula
///
/// `Z^{(3)}_{1',2 2'} Z̃_{6 6'} Z^{(2)}_{3 3',6'} (Z^{(2)}_{2 2',6'})^•
/// Z̄^{(3)}_{4 4',6} (Z^{(2)}_{3 3',6})^• (Z^{(2)}_{2 2',6})^• (F̂ (F̂)_{ρ^-1})^•
/// Z^{(3)}_{5 5',6} (∏_{i=6',6,5',5,4',4} Z^2_{1',i})^• Z̄^{(3)}_{1',3 3'}
/// ∏_{i=6',6,5',5,4',4} Z^2_{1,i} Z̃_{1 1'}`
///
/// with `ρ = Z_{2 2'} Z_{5 5'}` and
/// `F̂ = Z^{(3)}_{2',3 3'} Z^{(3)}_{4 4',5} Ž_{3',4} Ž_{3,4'} Z^2_{2',5} Z̄^2_{2',5'}`.
///
/// Conventions: `Z̃_{6 6'}` and `Z̃_{1 1'}` first circle the neighbouring
/// pair (`5 5'`, resp. `2 2'`); `Ž` are simple branch points along plain
/// paths; the node `Z^2_{2',5}` marked `(3-3')` passes below `3` and above
/// `3'`, `4`, `4'`.
pub fn local_factors_6pt(v: &VertexClass) -> Result<LocalFactors> {
    local_factors_6pt_model(v, SixPointModel::Transcribed)
}

pub fn local_factors_6pt_model(v: &VertexClass, model: SixPointModel) -> Result<LocalFactors> {
    expect_kind(v, VertexKind::SixPoint)?;
    let origin = FactorOrigin::Vertex(v.vertex);
    let factors = match model {
        SixPointModel::Transcribed => six_point_transcribed(origin),
        SixPointModel::Reference => six_point_reference(origin),
    };
    Ok(LocalFactors { origin, lines: v.incident_lines.clone(), factors })
}

const fn p(line: usize) -> usize {
    2 * line - 1
}

const fn pp(line: usize) -> usize {
    2 * line
}

fn six_point_transcribed(origin: FactorOrigin) -> Vec<Factor> {
    use Passage::{Above, Below};
    let mut b = Block::new(12, origin);
    let id = b.id();
    let bullet = bullet_motion(12);

    b.cusp_triple(&id, pp(1), p(2), Above);
    b.circling_branch(&id, p(6), true);
    b.node_pair(&id, p(3), pp(6), Above);
    b.node_pair(&bullet, p(2), pp(6), Above);
    b.cusp_triple_pair_first(&id, p(4), p(6), Below);
    b.node_pair(&bullet, p(3), p(6), Above);
    b.node_pair(&bullet, p(2), p(6), Above);

    let mut f_hat = Block::new(12, origin);
    f_hat.cusp_triple(&id, pp(2), p(3), Above);
    f_hat.cusp_triple_pair_first(&id, p(4), p(5), Above);
    f_hat.z(&id, pp(3), p(4), Above, 1);
    f_hat.z(&id, p(3), pp(4), Above, 1);
    let between = HalfTwistPath::with_shape(pp(2), p(5), vec![Below, Above, Above, Above]).expect("four passages");
    f_hat.push(&id, between, 2);
    f_hat.z(&id, pp(2), pp(5), Below, 2);
    let rho = b.word(&[p(2) as i32, p(5) as i32]);
    let rho_inv = rho.inverse();
    let shifted: Vec<Factor> = f_hat.factors.iter().map(|f| f.conjugated_by(&rho_inv)).collect();
    for f in f_hat.factors.iter().chain(&shifted) {
        b.factors.push(f.conjugated_by(&bullet));
    }

    b.cusp_triple_pair_first(&id, p(5), p(6), Above);
    for i in [pp(6), p(6), pp(5), p(5), pp(4), p(4)] {
        b.z(&bullet, pp(1), i, Above, 2);
    }
    b.cusp_triple(&id, pp(1), p(3), Below);
    for i in [pp(6), p(6), pp(5), p(5), pp(4), p(4)] {
        b.z(&id, p(1), i, Above, 2);
    }
    b.circling_branch(&id, p(1), false);
    b.factors
}

/// Nodes realizing the cabled `Z^2` of two lines: the strands `(1, 2)` of
/// the first and `(3, 4)` of the second meet pairwise, in the order
/// `(1,3) (1,4) (2,3) (2,4)`, along paths passing below.
fn cabled_node(b: &mut Block, conjugator: &BraidWord, q: usize) {
    for (s, t) in [(q, q + 2), (q, q + 3), (q + 1, q + 2), (q + 1, q + 3)] {
        b.z(conjugator, s, t, Passage::Below, 2);
    }
}

fn six_point_reference(origin: FactorOrigin) -> Vec<Factor> {
    let mut b = Block::new(12, origin);
    // Δ^2_6 = ∏_j σ_{j-1} ... σ_1 σ_1 ... σ_{j-1}, each term a sequence of
    // full twists of line j with lines j-1, ..., 1 conjugated along the way
    for j in 2..=6usize {
        for i in 1..j {
            let path: Vec<i32> = (i + 1..j).rev().map(|t| t as i32).collect();
            let c = BraidWord::from_letters(6, path).expect("in B_6").cabled();
            cabled_node(&mut b, &c, p(i));
        }
    }
    let id = b.id();
    for l in 1..=6 {
        b.z(&id, p(l), pp(l), Passage::Above, 1);
    }
    b.factors
}

/// Four node factors of a parasitic crossing, the lower line on `(1, 2)`.
pub fn local_factors_parasitic(lower: EdgeLabel, upper: EdgeLabel) -> LocalFactors {
    let mut b = Block::new(4, FactorOrigin::Parasitic(lower.min(upper), lower.max(upper)));
    let id = b.id();
    cabled_node(&mut b, &id, 1);
    LocalFactors { origin: b.origin, lines: vec![lower, upper], factors: b.factors }
}

/// All parasitic blocks of the complex, in lexicographic puncture order.
pub fn parasitic_factors(c: &DegenerationComplex) -> Vec<LocalFactors> {
    c.parasitic_pairs().into_iter().map(|(l, m)| local_factors_parasitic(l, m)).collect()
}

/// Where the factors of a block ended up in the global list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockRecord {
    pub origin: FactorOrigin,
    pub range: std::ops::Range<usize>,
    pub local: LocalFactors,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub puncture_set: PunctureSet,
    pub factors: Vec<Factor>,
    pub blocks: Vec<BlockRecord>,
}

impl Factorization {
    pub fn strands(&self) -> usize {
        self.puncture_set.len()
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(|f| f.exponent as i64).sum()
    }

    pub fn product(&self) -> BraidWord {
        product(self.strands(), &self.factors)
    }

    pub fn count(&self, t: SingType) -> usize {
        self.factors.iter().filter(|f| f.sing_type() == t).count()
    }

    /// One line per factor: origin, type, exponent, conjugator, core path.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for f in &self.factors {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{} {} {}\n",
                f.origin,
                f.sing_type().name(),
                f.exponent,
                f.conjugator,
                f.core.start,
                f.core.end,
                if f.core.shape.is_empty() { "-".to_string() } else { f.core.shape_string() },
            ));
        }
        out
    }
}

/// Local factors of a classified vertex.
pub fn local_factors(c: &DegenerationComplex, v: &VertexClass, model: SixPointModel) -> Result<LocalFactors> {
    match v.kind {
        VertexKind::TwoPoint => local_factors_2pt(v),
        VertexKind::ThreePoint => local_factors_3pt(c, v),
        VertexKind::SixPoint => local_factors_6pt_model(v, model),
        VertexKind::CornerUnclassified => {
            Ok(LocalFactors { origin: FactorOrigin::Vertex(v.vertex), lines: Vec::new(), factors: Vec::new() })
        }
    }
}

/// Assembles the factorization with the transcribed 6-point model over the
/// exact rationals.
pub fn assemble(c: &DegenerationComplex) -> Result<Factorization> {
    assemble_with::<Rational>(c, SixPointModel::Transcribed)
}

/// Concatenates `C(r,k) H(r,k)` over the vertices in `(k, r)` order.
///
/// With `Δ_j` the half twist of the lines through the `j`-th singular
/// fiber of the arrangement, the `j`-th block is conjugated by the cable of
/// `c_j = Δ_1^-1 ... Δ_{j-1}^-1`; the product of the blocks is then the
/// full twist in the base fiber of the arrangement, and a final positive
/// permutation braid carries that fiber to the puncture order.
pub fn assemble_with<T: OrderedField>(c: &DegenerationComplex, model: SixPointModel) -> Result<Factorization> {
    let arr: LineArrangement<T> = realize(c)?;
    let l = arr.lines.len();
    let m = 2 * l;
    let classes = classify_vertices(c);

    let to_k = base_to_puncture_order(&arr.base_order).cabled().inverse();
    let mut c_j = BraidWord::identity(l);
    let mut factors = Vec::new();
    let mut blocks = Vec::new();
    for event in &arr.events {
        let local = match &event.kind {
            EventKind::Vertex(v) => {
                let class = classes.iter().find(|x| x.vertex == *v).expect("vertex is classified");
                local_factors(c, class, model)?
            }
            EventKind::Crossing(i, j) => {
                let (lower, upper) = (arr.lines[event.lines[0]], arr.lines[event.lines[1]]);
                debug_assert!(lower == arr.lines[*i].min(arr.lines[*j]) || upper == arr.lines[*i].min(arr.lines[*j]));
                local_factors_parasitic(lower, upper)
            }
        };
        let outer = to_k.mul(&c_j.cabled());
        let start = factors.len();
        for f in &local.factors {
            factors.push(f.embedded(m, 2 * (event.first - 1)).conjugated_by(&outer));
        }
        blocks.push(BlockRecord { origin: local.origin, range: start..factors.len(), local });
        c_j = c_j.mul(&BraidWord::block_half_twist(l, event.first, event.last()).inverse());
    }
    Ok(Factorization { puncture_set: c.puncture_set(), factors, blocks })
}

/// Positive permutation braid whose strand starting at position `p` ends at
/// the puncture-order position of the line there.
fn base_to_puncture_order(base_order: &[usize]) -> BraidWord {
    let mut cur = base_order.to_vec();
    let mut letters = Vec::new();
    for pass in 0..cur.len() {
        for i in 0..cur.len() - 1 - pass {
            if cur[i] > cur[i + 1] {
                cur.swap(i, i + 1);
                letters.push(i as i32 + 1);
            }
        }
    }
    BraidWord::from_letters(base_order.len(), letters).expect("bubble sort swaps")
}

/// First block whose local product differs from its target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFailure {
    pub origin: FactorOrigin,
    /// The offending prefix ends with this factor (exclusive bound).
    pub prefix_end: usize,
    pub local_degree: i64,
    pub target_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub strands: usize,
    pub degree: i64,
    pub expected_degree: i64,
    pub permutation_identity: bool,
    pub linking_pairs: usize,
    pub linking_ok_pairs: usize,
    /// First pair `(p, q)` (1-based, `p < q`) whose linking is not 2.
    pub first_bad_pair: Option<(usize, usize, i64)>,
    /// Artin-oracle equality with `Δ^2`, when it was run.
    pub artin: Option<bool>,
    pub first_bad_block: Option<BlockFailure>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.degree == self.expected_degree
            && self.permutation_identity
            && self.first_bad_pair.is_none()
            && self.artin != Some(false)
    }

    /// Names the first violated invariant, in the order degree,
    /// permutation, linking, Artin equality.
    pub fn first_violation(&self) -> Option<String> {
        let where_ = match &self.first_bad_block {
            Some(b) => format!(
                "; first offending block {} (prefix of {} factors, local degree {} vs {})",
                b.origin, b.prefix_end, b.local_degree, b.target_degree
            ),
            None => String::new(),
        };
        if self.degree != self.expected_degree {
            Some(format!("degree {} != {}{where_}", self.degree, self.expected_degree))
        } else if !self.permutation_identity {
            Some(format!("permutation of the product is not the identity{where_}"))
        } else if let Some((p, q, l)) = self.first_bad_pair {
            Some(format!("linking of punctures {p},{q} is {l}, not 2{where_}"))
        } else if self.artin == Some(false) {
            Some(format!("product differs from the full twist{where_}"))
        } else {
            None
        }
    }
}

/// Degree, permutation and linking of the product against `Δ^2`; the
/// Artin oracle additionally runs when `m <= artin_limit`.
pub fn certify(fz: &Factorization, artin_limit: usize) -> Certificate {
    let m = fz.strands();
    let prod = fz.product();
    let shadow = homomorphisms(&prod);
    let mut first_bad_pair = None;
    let mut ok = 0;
    for p in 0..m {
        for q in p + 1..m {
            if shadow.linking[p][q] == 2 {
                ok += 1;
            } else if first_bad_pair.is_none() {
                first_bad_pair = Some((p + 1, q + 1, shadow.linking[p][q]));
            }
        }
    }
    let degree = fz.degree();
    let expected_degree = (m * (m - 1)) as i64;
    let permutation_identity = shadow.permutation.is_identity();
    let shadows_ok = degree == expected_degree && permutation_identity && first_bad_pair.is_none();
    let artin = (m <= artin_limit && shadows_ok).then(|| braid_equal(&prod, &BraidWord::full_twist(m)));
    let first_bad_block = if shadows_ok && artin != Some(false) {
        None
    } else {
        fz.blocks.iter().find_map(|b| {
            let (local, target) = (b.local.product(), b.local.target());
            (!braid_equal(&local, &target)).then(|| BlockFailure {
                origin: b.origin,
                prefix_end: b.range.end,
                local_degree: local.degree(),
                target_degree: target.degree(),
            })
        })
    };
    Certificate {
        strands: m,
        degree,
        expected_degree,
        permutation_identity,
        linking_pairs: m * (m - 1) / 2,
        linking_ok_pairs: ok,
        first_bad_pair,
        artin,
        first_bad_block,
    }
}

/// `assemble` followed by `certify`; a failed certificate is an error.
pub fn assemble_certified(c: &DegenerationComplex, artin_limit: usize) -> Result<(Factorization, Certificate)> {
    let fz = assemble(c)?;
    let cert = certify(&fz, artin_limit);
    match cert.first_violation() {
        Some(why) => Err(Error::Certificate(why)),
        None => Ok((fz, cert)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, ComplexParams};

    fn complex(a: i64, b: i64) -> DegenerationComplex {
        build_complex(ComplexParams::new(a, b).unwrap()).unwrap()
    }

    fn class(c: &DegenerationComplex, r: i64, k: i64) -> VertexClass {
        classify_vertices(c).into_iter().find(|v| v.vertex == Vertex::new(r, k)).unwrap()
    }

    #[test]
    fn two_point_is_a_single_branch() {
        let c = complex(1, 2);
        let lf = local_factors_2pt(&class(&c, 0, 0)).unwrap();
        assert_eq!(lf.factors.len(), 1);
        assert_eq!(lf.factors[0].sing_type(), SingType::Branch);
        assert!(braid_equal(&lf.product(), &lf.target()));
        assert!(local_factors_2pt(&class(&c, 1, 1)).is_err());
    }

    #[test]
    fn three_point_cases_have_the_local_product() {
        let c = complex(1, 2);
        let v = class(&c, 2, 1);
        for case in [ThreePointCase::LowerFirst, ThreePointCase::UpperFirst] {
            let lf = local_factors_3pt_case(&v, case).unwrap();
            assert_eq!(lf.degree(), 10);
            let cusps = lf.factors.iter().filter(|f| f.sing_type() == SingType::Cusp).count();
            assert_eq!(cusps, 3);
            assert!(braid_equal(&lf.product(), &lf.target()));
        }
    }

    #[test]
    fn parasitic_block_is_the_cabled_node() {
        let c = complex(1, 2);
        let (l, m) = c.parasitic_pairs()[0];
        let lf = local_factors_parasitic(l, m);
        assert_eq!(lf.degree(), 8);
        assert!(braid_equal(&lf.product(), &BraidWord::generator(2, 1).pow(2).cabled()));
    }

    #[test]
    fn reference_six_point_has_the_local_product() {
        let c = complex(1, 2);
        let lf = local_factors_6pt_model(&class(&c, 1, 1), SixPointModel::Reference).unwrap();
        assert_eq!(lf.degree(), 126);
        assert!(braid_equal(&lf.product(), &lf.target()));
    }

    #[test]
    fn transcribed_six_point_census() {
        let c = complex(1, 2);
        let lf = local_factors_6pt(&class(&c, 1, 1)).unwrap();
        let count = |t| lf.factors.iter().filter(|f| f.sing_type() == t).count();
        assert_eq!(count(SingType::Cusp), 24);
        assert_eq!(count(SingType::Node), 24);
        assert_eq!(count(SingType::Branch), 6);
        assert_eq!(lf.degree(), 126);
        let shadow = homomorphisms(&lf.product());
        assert_eq!(shadow.permutation, homomorphisms(&lf.target()).permutation);
    }

    #[test]
    fn gluing_with_the_reference_model_gives_the_full_twist() {
        for (a, b) in [(1, 2), (2, 2), (1, 3)] {
            let c = complex(a, b);
            let fz = assemble_with::<Rational>(&c, SixPointModel::Reference).unwrap();
            let cert = certify(&fz, 16);
            assert!(cert.passed(), "({a},{b}): {:?}", cert.first_violation());
        }
    }

    #[test]
    fn factors_stay_on_their_lines() {
        let c = complex(1, 2);
        let fz = assemble(&c).unwrap();
        let ps = &fz.puncture_set;
        for f in &fz.factors {
            let lines: Vec<EdgeLabel> = match f.origin {
                FactorOrigin::Vertex(v) => c.incident_lines(v),
                FactorOrigin::Parasitic(l, m) => vec![l, m],
            };
            let own: Vec<usize> =
                lines.iter().flat_map(|&l| [0, 1].map(|d| ps.position(l, d).unwrap() - 1)).collect();
            let perm = homomorphisms(&f.half_twist()).permutation;
            let (s, t) = perm.as_transposition().expect("half-twist");
            assert!(own.contains(&s) && own.contains(&t), "{} moves {s},{t}", f.origin);
        }
    }
}
