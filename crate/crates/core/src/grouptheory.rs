//! Exact computations with finitely presented groups: Smith normal form and
//! abelianization, permutation quotients, Todd-Coxeter coset enumeration and
//! Reidemeister-Schreier presentations.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::DegenerationComplex;
use crate::error::{Error, Result};
use crate::free::FreeWord;
use crate::perm::Permutation;
use crate::vankampen::{Generator, Presentation, PresentationKind};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let data = rows.iter().map(|r| (0..cols).map(|j| BigInt::from(*r.get(j).unwrap_or(&0))).collect()).collect();
        IntMatrix { rows: rows.len(), cols, data }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        out
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.data.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.data {
            r.swap(i, j);
        }
    }

    /// `row_i += q * row_j`.
    fn add_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[j][c] * q;
            self.data[i][c] += v;
        }
    }

    /// `col_i += q * col_j`.
    fn add_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for r in &mut self.data {
            let v = &r[j] * q;
            r[i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for v in &mut self.data[i] {
            *v = -&*v;
        }
    }
}

/// Smith normal form `D = U * M * V` with `U`, `V` unimodular and the
/// diagonal of `D` a non-negative divisibility chain.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if !d.data[i][j].is_zero()
                        && best.is_none_or(|(bi, bj)| d.data[i][j].abs() < d.data[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { return (d, u, v) };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                if !d.data[i][t].is_zero() {
                    let q = -d.data[i][t].div_floor(&d.data[t][t]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clean &= d.data[i][t].is_zero();
                }
            }
            for j in t + 1..d.cols {
                if !d.data[t][j].is_zero() {
                    let q = -d.data[t][j].div_floor(&d.data[t][t]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clean &= d.data[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..d.rows).find(|&i| (t + 1..d.cols).any(|j| !d.data[i][j].is_multiple_of(&d.data[t][t])));
            if let Some(i) = bad {
                let one = BigInt::one();
                d.add_row(t, i, &one);
                u.add_row(t, i, &one);
                continue;
            }
            break;
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Finitely generated abelian group `Z^free_rank x Z_{d1} x ... x Z_{dk}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Invariant factors, each dividing the next, none equal to 1.
    #[serde(with = "decimal")]
    pub torsion: Vec<BigInt>,
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|t| t.parse().map_err(D::Error::custom)).collect()
    }
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { free_rank: 0, torsion: vec![] }
    }

    /// `Z_m`, with `Z_0` read as `Z` and `Z_{-m}` as `Z_m`.
    pub fn cyclic(m: i64) -> Self {
        match m.unsigned_abs() {
            0 => AbelianInvariants { free_rank: 1, torsion: vec![] },
            1 => Self::trivial(),
            k => AbelianInvariants { free_rank: 0, torsion: vec![BigInt::from(k)] },
        }
    }

    /// The `k`-th power of `Z_m`.
    pub fn cyclic_power(m: i64, k: usize) -> Self {
        let one = Self::cyclic(m);
        AbelianInvariants { free_rank: one.free_rank * k, torsion: one.torsion.iter().flat_map(|t| vec![t.clone(); k]).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z_{}", self.torsion[i]) } else { format!("(Z_{})^{}", self.torsion[i], j - i) });
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Invariants of `Z^cols / rowspace(m)`.
pub fn cokernel_invariants(m: &IntMatrix) -> AbelianInvariants {
    let (d, _, _) = smith_normal_form(m);
    let mut rank = 0;
    let mut torsion = Vec::new();
    for i in 0..m.rows.min(m.cols) {
        let x = &d.data[i][i];
        if x.is_zero() {
            break;
        }
        rank += 1;
        if !x.is_one() {
            torsion.push(x.clone());
        }
    }
    AbelianInvariants { free_rank: m.cols - rank, torsion }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    cokernel_invariants(&IntMatrix::from_i64(&p.relation_matrix(), p.rank()))
}

/// Rank of an integer matrix over `F_p`, by sparse elimination.
pub fn rank_mod_p(rows: &[BTreeMap<usize, i64>], p: i64) -> usize {
    let norm = |x: i64| x.rem_euclid(p);
    let inv = |x: i64| {
        let (mut t, mut nt, mut r, mut nr) = (0i64, 1i64, p, x);
        while nr != 0 {
            let q = r / nr;
            (t, nt) = (nt, t - q * nt);
            (r, nr) = (nr, r - q * nr);
        }
        t.rem_euclid(p)
    };
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i64>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, i64> = row.iter().map(|(&c, &v)| (c, norm(v))).filter(|&(_, v)| v != 0).collect();
        while let Some((&c, &v)) = r.iter().next() {
            match pivots.get(&c) {
                Some(pr) => {
                    let f = v;
                    for (&cc, &pv) in pr {
                        let e = r.entry(cc).or_insert(0);
                        *e = norm(*e - f * pv);
                        if *e == 0 {
                            r.remove(&cc);
                        }
                    }
                }
                None => {
                    let iv = inv(v);
                    let normed = r.iter().map(|(&cc, &x)| (cc, norm(x * iv))).collect();
                    pivots.insert(c, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Relator exponent sums as sparse rows.
pub fn sparse_relation_rows(p: &Presentation) -> Vec<BTreeMap<usize, i64>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = BTreeMap::new();
            for &l in r.letters() {
                *row.entry(l.unsigned_abs() as usize - 1).or_insert(0) += l.signum() as i64;
            }
            row.retain(|_, v| *v != 0);
            row
        })
        .collect()
}

/// `rank - rank_p(relation matrix)`: an upper bound for the free rank of
/// the abelianization, exact when `p` divides no torsion coefficient.
pub fn free_rank_mod_p(p: &Presentation, prime: i64) -> usize {
    p.rank() - rank_mod_p(&sparse_relation_rows(p), prime)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermQuotientReport {
    pub degree: usize,
    /// Index of the first relator not mapped to the identity.
    pub first_violation: Option<usize>,
    pub violations: usize,
    pub transitive: bool,
    pub full_symmetric: bool,
}

impl PermQuotientReport {
    pub fn relators_ok(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn passed(&self) -> bool {
        self.relators_ok() && self.full_symmetric
    }
}

/// Image of a word, letters applied left to right.
pub fn eval_perm(assignment: &[Permutation], w: &FreeWord) -> Permutation {
    let n = assignment.first().map_or(0, |p| p.degree());
    w.letters().iter().fold(Permutation::identity(n), |acc, &l| {
        let g = &assignment[l.unsigned_abs() as usize - 1];
        acc.then(&if l > 0 { g.clone() } else { g.inverse() })
    })
}

fn orbit_of_zero(gens: &[Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Minimal block containing `0` and `b` (union-find closure).
fn minimal_block(gens: &[Permutation], n: usize, b: usize) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let nx = p[x];
            p[x] = r;
            x = nx;
        }
        r
    }
    let mut queue = VecDeque::from([(0usize, b)]);
    while let Some((x, y)) = queue.pop_front() {
        let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
        if rx == ry {
            continue;
        }
        parent[ry] = rx;
        for g in gens {
            queue.push_back((g.apply(x), g.apply(y)));
        }
    }
    let r = find(&mut parent, 0);
    (0..n).filter(|&x| find(&mut parent, x) == r).count()
}

fn group_order_bounded(gens: &[Permutation], n: usize, limit: usize) -> Option<usize> {
    let mut seen = std::collections::HashSet::new();
    let id = Permutation::identity(n);
    let mut queue = VecDeque::from([id.clone()]);
    seen.insert(id);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

/// Checks that `assignment` defines a homomorphism onto `S_n`. Fullness is
/// decided as transitive + primitive + containing a transposition, or by
/// direct enumeration for `n <= 8`.
pub fn check_perm_quotient(p: &Presentation, assignment: &[Permutation]) -> Result<PermQuotientReport> {
    if assignment.len() != p.rank() {
        return Err(Error::RankMismatch { left: assignment.len(), right: p.rank() });
    }
    let n = assignment.first().map_or(0, |g| g.degree());
    let mut first_violation = None;
    let mut violations = 0;
    for (i, r) in p.relators.iter().enumerate() {
        if !eval_perm(assignment, r).is_identity() {
            violations += 1;
            first_violation.get_or_insert(i);
        }
    }
    let gens: Vec<Permutation> = assignment.iter().filter(|g| !g.is_identity()).cloned().collect();
    let transitive = n > 0 && orbit_of_zero(&gens, n).iter().all(|&s| s);
    let full_symmetric = if !transitive {
        n <= 1
    } else if n <= 8 {
        let order: usize = (1..=n).product();
        group_order_bounded(&gens, n, order) == Some(order)
    } else {
        let primitive = (1..n).all(|b| minimal_block(&gens, n, b) == n);
        let transposition = gens.iter().any(|g| g.as_transposition().is_some());
        primitive && transposition
    };
    Ok(PermQuotientReport { degree: n, first_violation, violations, transitive, full_symmetric })
}

/// Sends every generator to the transposition of the two triangles
/// adjacent to the line of its puncture.
pub fn triangle_assignment(c: &DegenerationComplex, p: &Presentation) -> Result<Vec<Permutation>> {
    let n = c.triangle_count();
    p.generators
        .iter()
        .map(|g| {
            let q = g.puncture.ok_or_else(|| Error::UnknownSymbol(g.name.clone()))?;
            match c.adjacent_triangles(&q.line)[..] {
                [s, t] => Ok(Permutation::transposition(n, s - 1, t - 1)),
                _ => Err(Error::UnknownSymbol(format!("{} is not an interior line", q.line))),
            }
        })
        .collect()
}

/// Complete coset table; row `c`, column `2i` is the action of `x_{i+1}`,
/// column `2i+1` of its inverse. Coset 0 is the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub rank: usize,
    pub table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    /// Coset reached from `c` by `w`.
    pub fn trace(&self, c: usize, w: &FreeWord) -> usize {
        w.letters().iter().fold(c, |x, &l| self.table[x][letter_col(l)])
    }
}

fn letter_col(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

fn col_letter(c: usize) -> i32 {
    let g = (c / 2 + 1) as i32;
    if c.is_multiple_of(2) {
        g
    } else {
        -g
    }
}

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    max_cosets: usize,
    queue: Vec<u32>,
}

const UNDEF: u32 = 0;

impl Enumerator {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.ncols + x] = d;
    }

    fn count(&self) -> usize {
        self.parent.len() - 1
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.count() >= self.max_cosets {
            return Err(Error::BudgetExhausted(format!("coset ceiling {} reached", self.max_cosets)));
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ncols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let nx = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = nx;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k != l {
            let (m, big) = (k.min(l), k.max(l));
            self.parent[big as usize] = m;
            self.queue.push(big);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let t = self.get(e1, x);
                if t != UNDEF {
                    self.merge(f1, t);
                } else {
                    let s = self.get(f1, x ^ 1);
                    if s != UNDEF {
                        self.merge(e1, s);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != UNDEF {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != c {
                    self.coincidence(f, c);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != UNDEF {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Hasselgrove-Leech-Trotter coset enumeration of the subgroup generated
/// by `subgroup` in the group presented by `p`. `max_cosets` bounds the
/// number of cosets ever defined.
pub fn todd_coxeter(p: &Presentation, subgroup: &[FreeWord], max_cosets: usize) -> Result<CosetTable> {
    let ncols = 2 * p.rank();
    let cols = |w: &FreeWord| -> Vec<usize> { w.letters().iter().map(|&l| letter_col(l)).collect() };
    let relators: Vec<Vec<usize>> = p.relators.iter().map(cols).collect();
    let mut e = Enumerator {
        ncols,
        table: vec![UNDEF; 2 * ncols],
        parent: vec![0, 1],
        max_cosets: max_cosets.max(1),
        queue: Vec::new(),
    };
    for h in subgroup {
        e.scan_and_fill(1, &cols(h))?;
    }
    let mut c = 1u32;
    while (c as usize) < e.parent.len() {
        for r in &relators {
            if !e.live(c) {
                break;
            }
            e.scan_and_fill(c, r)?;
        }
        for x in 0..ncols {
            if e.live(c) && e.get(c, x) == UNDEF {
                e.define(c, x)?;
            }
        }
        c += 1;
    }
    let live: Vec<u32> = (1..e.parent.len() as u32).filter(|&c| e.live(c)).collect();
    let mut number = vec![usize::MAX; e.parent.len()];
    for (i, &c) in live.iter().enumerate() {
        number[c as usize] = i;
    }
    let table = live
        .iter()
        .map(|&c| {
            (0..ncols)
                .map(|x| {
                    let d = e.get(c, x);
                    if d == UNDEF {
                        Err(Error::IncompleteCosetTable)
                    } else {
                        Ok(number[e.rep(d) as usize])
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetTable { rank: p.rank(), table })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transversal {
    BreadthFirst,
    DepthFirst,
}

/// Spanning tree of the coset graph: for each coset its parent edge
/// `(coset, column)`.
fn schreier_tree(t: &CosetTable, strategy: Transversal) -> Vec<Option<(usize, usize)>> {
    let n = t.index();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut work = VecDeque::from([0usize]);
    while let Some(c) = match strategy {
        Transversal::BreadthFirst => work.pop_front(),
        Transversal::DepthFirst => work.pop_back(),
    } {
        for x in 0..2 * t.rank {
            let d = t.table[c][x];
            if !seen[d] {
                seen[d] = true;
                parent[d] = Some((c, x));
                work.push_back(d);
            }
        }
    }
    parent
}

/// Reidemeister-Schreier presentation of the subgroup whose coset table is
/// given, on the Schreier generators `s_{c,i}` of non-tree edges.
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable, strategy: Transversal) -> Result<Presentation> {
    if t.rank != p.rank() {
        return Err(Error::RankMismatch { left: t.rank, right: p.rank() });
    }
    let n = t.index();
    let parent = schreier_tree(t, strategy);
    let mut symbol = vec![vec![0i32; p.rank()]; n];
    let mut generators = Vec::new();
    for (c, row) in symbol.iter_mut().enumerate() {
        for (i, s) in row.iter_mut().enumerate() {
            let d = t.table[c][2 * i];
            let tree = parent[d] == Some((c, 2 * i)) || parent[c] == Some((d, 2 * i + 1));
            if !tree {
                generators.push(Generator { name: format!("s{}_{}", c, p.generators[i].name), puncture: None });
                *s = generators.len() as i32;
            }
        }
    }
    let rank = generators.len();
    let mut relators = Vec::new();
    for r in &p.relators {
        for c in 0..n {
            let mut letters = Vec::new();
            let mut x = c;
            for &l in r.letters() {
                let i = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    if symbol[x][i] != 0 {
                        letters.push(symbol[x][i]);
                    }
                    x = t.table[x][2 * i];
                } else {
                    let y = t.table[x][2 * i + 1];
                    if symbol[y][i] != 0 {
                        letters.push(-symbol[y][i]);
                    }
                    x = y;
                }
            }
            if x != c {
                return Err(Error::IncompleteCosetTable);
            }
            let w = FreeWord::from_letters(rank, letters)?;
            if !w.is_identity() {
                relators.push(w);
            }
        }
    }
    Ok(Presentation { generators, relators, kind: p.kind })
}

/// Words generating the kernel of a homomorphism to a permutation group,
/// read off a Schreier transversal of the image (Cayley graph of the
/// image). Fails when the image exceeds `limit` elements.
pub fn kernel_generators(p: &Presentation, assignment: &[Permutation], limit: usize) -> Result<Vec<FreeWord>> {
    let m = p.rank();
    let n = assignment.first().map_or(0, |g| g.degree());
    let mut index: std::collections::HashMap<Permutation, usize> = std::collections::HashMap::new();
    let mut elems = vec![Permutation::identity(n)];
    let mut words = vec![FreeWord::identity(m)];
    index.insert(elems[0].clone(), 0);
    let mut out = Vec::new();
    let mut i = 0;
    while i < elems.len() {
        for (g, a) in assignment.iter().enumerate() {
            let y = elems[i].then(a);
            let gw = words[i].mul(&FreeWord::generator(m, g + 1));
            match index.get(&y) {
                Some(&j) => {
                    let s = gw.mul(&words[j].inverse());
                    if !s.is_identity() {
                        out.push(s);
                    }
                }
                None => {
                    if elems.len() >= limit {
                        return Err(Error::BudgetExhausted(format!("permutation image larger than {limit}")));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                    words.push(gw);
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

/// The free abelian presentation `<x_1..x_k | [x_i, x_j]>` used in tests
/// and reports.
pub fn free_abelian(k: usize) -> Presentation {
    let generators = (1..=k).map(|i| Generator { name: format!("x{i}"), puncture: None }).collect();
    let mut relators = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            relators.push(FreeWord::commutator(&FreeWord::generator(k, i), &FreeWord::generator(k, j)));
        }
    }
    Presentation { generators, relators, kind: PresentationKind::Affine }
}

/// Rewrites a word given as column indices; used by the coset-table
/// diagnostics.
pub fn word_from_cols(rank: usize, cols: &[usize]) -> Result<FreeWord> {
    FreeWord::from_letters(rank, cols.iter().map(|&c| col_letter(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invariants_serialize_as_decimal_strings() {
        let g = AbelianInvariants::cyclic_power(12, 2);
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"free_rank":0,"torsion":["12","12"]}"#);
        assert_eq!(serde_json::from_str::<AbelianInvariants>(&text).unwrap(), g);
    }

    fn pres(rank: usize, rels: &[&[i32]]) -> Presentation {
        Presentation {
            generators: (0..rank).map(|i| Generator { name: format!("g{i}"), puncture: None }).collect(),
            relators: rels.iter().map(|r| FreeWord::from_letters(rank, r.iter().copied()).unwrap()).collect(),
            kind: PresentationKind::Affine,
        }
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        let m = IntMatrix::from_i64(&[vec![4, 2], vec![-3, -1]], 2);
        let (d, _, _) = smith_normal_form(&m);
        assert_eq!(d.data[0][0], BigInt::from(1));
        assert_eq!(d.data[1][1], BigInt::from(2));
        let (d, _, _) = smith_normal_form(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]], 2));
        assert_eq!(d.data.iter().enumerate().map(|(i, r)| r[i].clone()).collect::<Vec<_>>(), big(&[1, 6]));
        let z = IntMatrix::zero(2, 2);
        assert_eq!(cokernel_invariants(&z), AbelianInvariants { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn snf_is_a_unimodular_diagonalization() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (r, c) = (rng.gen_range(1..12), rng.gen_range(1..12));
            let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
            let m = IntMatrix::from_i64(&rows, c);
            let (d, u, v) = smith_normal_form(&m);
            assert_eq!(u.mul(&m).mul(&v), d);
            assert!(u.determinant().abs().is_one());
            assert!(v.determinant().abs().is_one());
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        assert!(d.data[i][j].is_zero());
                    }
                }
            }
            let diag: Vec<BigInt> = (0..r.min(c)).map(|i| d.data[i][i].clone()).collect();
            for w in diag.windows(2) {
                assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
            }
        }
    }

    #[test]
    fn abelianization_examples() {
        let p = pres(2, &[&[1, 2, -1, -2], &[1, 1]]);
        assert_eq!(abelianization(&p).to_string(), "Z x Z_2");
        let p = pres(2, &[&[1, -2], &[1, 2, -1, -2]]);
        assert_eq!(abelianization(&p), AbelianInvariants::cyclic(0));
        assert_eq!(AbelianInvariants::cyclic_power(2, 3).to_string(), "(Z_2)^3");
        assert_eq!(AbelianInvariants::cyclic(-1), AbelianInvariants::trivial());
    }

    #[test]
    fn perm_quotient_reports() {
        // S_3 = <x, y | x^2, y^2, (xy)^3>
        let p = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let good = vec![Permutation::transposition(3, 0, 1), Permutation::transposition(3, 1, 2)];
        let r = check_perm_quotient(&p, &good).unwrap();
        assert!(r.passed());
        let trivial = vec![Permutation::identity(3); 2];
        let r = check_perm_quotient(&p, &trivial).unwrap();
        assert!(r.relators_ok() && !r.transitive && !r.full_symmetric);
        let bad = vec![Permutation::transposition(3, 0, 1), Permutation::from_images(vec![1, 2, 0]).unwrap()];
        let r = check_perm_quotient(&p, &bad).unwrap();
        assert_eq!(r.first_violation, Some(1));
    }

    #[test]
    fn full_symmetric_by_primitivity() {
        let n = 10;
        let gens: Vec<Permutation> = (0..n - 1).map(|i| Permutation::transposition(n, i, i + 1)).collect();
        let p = pres(n - 1, &[]);
        assert!(check_perm_quotient(&p, &gens).unwrap().full_symmetric);
        let blocks: Vec<Permutation> =
            vec![Permutation::from_images((0..n).map(|i| (i + 2) % n).collect()).unwrap(), Permutation::transposition(n, 0, 2)];
        let r = check_perm_quotient(&pres(2, &[]), &blocks).unwrap();
        assert!(!r.transitive && !r.full_symmetric);
    }

    #[test]
    fn coset_enumeration_examples() {
        let p = pres(1, &[&[1, 1, 1, 1, 1]]);
        assert_eq!(todd_coxeter(&p, &[], 100).unwrap().index(), 5);
        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let x = FreeWord::generator(2, 1);
        assert_eq!(todd_coxeter(&s3, &[x], 100).unwrap().index(), 3);
        assert_eq!(todd_coxeter(&s3, &[], 100).unwrap().index(), 6);
        assert!(matches!(todd_coxeter(&pres(1, &[]), &[], 50), Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn coset_table_is_a_permutation_action() {
        // A_4 ~ <a, b | a^2, b^3, (ab)^3>
        let p = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2, 1, 2]]);
        let t = todd_coxeter(&p, &[], 1000).unwrap();
        assert_eq!(t.index(), 12);
        for c in 0..t.index() {
            for r in &p.relators {
                assert_eq!(t.trace(c, r), c);
            }
            for x in 0..4 {
                assert_eq!(t.table[t.table[c][x]][x ^ 1], c);
            }
        }
    }

    #[test]
    fn reidemeister_schreier_examples() {
        let p = pres(1, &[&[1, 1, 1, 1]]);
        let sq = FreeWord::from_letters(1, [1, 1]).unwrap();
        let t = todd_coxeter(&p, &[sq], 100).unwrap();
        assert_eq!(t.index(), 2);
        let h = reidemeister_schreier(&p, &t, Transversal::BreadthFirst).unwrap();
        assert_eq!(abelianization(&h), AbelianInvariants::cyclic(2));

        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let t = todd_coxeter(&s3, &[], 100).unwrap();
        for strategy in [Transversal::BreadthFirst, Transversal::DepthFirst] {
            let h = reidemeister_schreier(&s3, &t, strategy).unwrap();
            assert_eq!(abelianization(&h), AbelianInvariants::trivial());
        }
    }

    #[test]
    fn kernel_of_a_permutation_quotient() {
        let s3 = pres(2, &[&[1, 1], &[2, 2], &[1, 2, 1, 2, 1, 2]]);
        let a = vec![Permutation::transposition(3, 0, 1), Permutation::transposition(3, 1, 2)];
        let k = kernel_generators(&s3, &a, 100).unwrap();
        assert_eq!(todd_coxeter(&s3, &k, 100).unwrap().index(), 6);
        // Z^2 onto S_2 x S_2: the kernel is 2Z x 2Z, with abelianization Z^2.
        let z2 = free_abelian(2);
        let a = vec![Permutation::transposition(4, 0, 1), Permutation::transposition(4, 2, 3)];
        let k = kernel_generators(&z2, &a, 100).unwrap();
        let t = todd_coxeter(&z2, &k, 100).unwrap();
        assert_eq!(t.index(), 4);
        let h = reidemeister_schreier(&z2, &t, Transversal::DepthFirst).unwrap();
        assert_eq!(abelianization(&h), AbelianInvariants { free_rank: 2, torsion: vec![] });
        assert_eq!(free_rank_mod_p(&h, 3), 2);
    }

    #[test]
    fn modular_rank() {
        let rows: Vec<BTreeMap<usize, i64>> =
            vec![[(0, 2), (1, 4)].into_iter().collect(), [(0, 1), (1, 2)].into_iter().collect(), [(2, 3)].into_iter().collect()];
        assert_eq!(rank_mod_p(&rows, 5), 2);
        assert_eq!(rank_mod_p(&rows, 3), 1);
    }
}
