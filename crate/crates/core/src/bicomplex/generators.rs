//! Indecomposable building blocks (dots, squares, zigzags), direct sums and
//! coordinate scrambling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::linalg::{integer, Matrix};

/// One arrow of a zigzag word, seen from the vertex it is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Arrow {
    /// `∂` leaves the vertex.
    DelOut,
    /// `∂̄` leaves the vertex.
    DelbarOut,
    /// `∂` arrives at the vertex.
    DelIn,
    /// `∂̄` arrives at the vertex.
    DelbarIn,
}

impl Arrow {
    pub fn is_out(self) -> bool {
        matches!(self, Arrow::DelOut | Arrow::DelbarOut)
    }

    pub fn is_del(self) -> bool {
        matches!(self, Arrow::DelOut | Arrow::DelIn)
    }

    /// Offset of the neighbouring vertex.
    pub fn step(self) -> (i64, i64) {
        match self {
            Arrow::DelOut => (1, 0),
            Arrow::DelbarOut => (0, 1),
            Arrow::DelIn => (-1, 0),
            Arrow::DelbarIn => (0, -1),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Arrow::DelOut => "d-out",
            Arrow::DelbarOut => "dbar-out",
            Arrow::DelIn => "d-in",
            Arrow::DelbarIn => "dbar-in",
        }
    }

    pub const ALL: [Arrow; 4] = [
        Arrow::DelOut,
        Arrow::DelbarOut,
        Arrow::DelIn,
        Arrow::DelbarIn,
    ];
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Arrow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "d-out" | "∂-out" => Ok(Arrow::DelOut),
            "dbar-out" | "∂̄-out" => Ok(Arrow::DelbarOut),
            "d-in" | "∂-in" => Ok(Arrow::DelIn),
            "dbar-in" | "∂̄-in" => Ok(Arrow::DelbarIn),
            other => Err(Error::BadShape(format!("unknown arrow `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    Dot,
    Square,
    Zigzag,
    RandomSum,
    Iwasawa,
    SteinLike,
    Counterexample,
}

impl GeneratorKind {
    pub const ALL: [GeneratorKind; 7] = [
        GeneratorKind::Dot,
        GeneratorKind::Square,
        GeneratorKind::Zigzag,
        GeneratorKind::RandomSum,
        GeneratorKind::Iwasawa,
        GeneratorKind::SteinLike,
        GeneratorKind::Counterexample,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Dot => "dot",
            GeneratorKind::Square => "square",
            GeneratorKind::Zigzag => "zigzag",
            GeneratorKind::RandomSum => "random_sum",
            GeneratorKind::Iwasawa => "iwasawa",
            GeneratorKind::SteinLike => "stein_like",
            GeneratorKind::Counterexample => "counterexample",
        }
    }
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GeneratorKind::Dot),
            "square" => Ok(GeneratorKind::Square),
            "zigzag" => Ok(GeneratorKind::Zigzag),
            "random_sum" | "random-sum" => Ok(GeneratorKind::RandomSum),
            "iwasawa" => Ok(GeneratorKind::Iwasawa),
            "stein_like" | "stein-like" => Ok(GeneratorKind::SteinLike),
            "counterexample" => Ok(GeneratorKind::Counterexample),
            other => Err(Error::BadSpec(format!("unknown generator kind `{other}`"))),
        }
    }
}

/// Parameters for every model generator. Fields irrelevant to `kind` are
/// ignored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub placement: Bidegree,
    pub zigzag_shape: Vec<Arrow>,
    pub block_count: usize,
    /// Inclusive rectangle `[lo, hi]` for random blocks.
    pub bounds: (Bidegree, Bidegree),
    pub seed: u64,
    /// Random sums only: pair every block with its conjugate mirror image and
    /// attach the swapping real structure.
    pub symmetric: bool,
    /// Declared dimension `n`; required by `stein_like`, optional elsewhere.
    pub dimension: Option<usize>,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind) -> Self {
        GeneratorSpec {
            kind,
            placement: Bidegree::new(0, 0),
            zigzag_shape: Vec::new(),
            block_count: 0,
            bounds: (Bidegree::new(0, 0), Bidegree::new(4, 4)),
            seed: 0,
            symmetric: false,
            dimension: None,
        }
    }

    pub fn dot(p: i64, q: i64) -> Self {
        GeneratorSpec {
            placement: Bidegree::new(p, q),
            ..Self::new(GeneratorKind::Dot)
        }
    }

    pub fn square(p: i64, q: i64) -> Self {
        GeneratorSpec {
            placement: Bidegree::new(p, q),
            ..Self::new(GeneratorKind::Square)
        }
    }

    pub fn zigzag(p: i64, q: i64, shape: &[Arrow]) -> Self {
        GeneratorSpec {
            placement: Bidegree::new(p, q),
            zigzag_shape: shape.to_vec(),
            ..Self::new(GeneratorKind::Zigzag)
        }
    }

    pub fn random_sum(seed: u64, block_count: usize, bounds: (Bidegree, Bidegree)) -> Self {
        GeneratorSpec {
            seed,
            block_count,
            bounds,
            ..Self::new(GeneratorKind::RandomSum)
        }
    }
}

fn unit() -> Matrix {
    Matrix::identity(1)
}

pub fn build_dot(p: i64, q: i64) -> DoubleComplex {
    let mut c = DoubleComplex::new(format!("dot({p},{q})"));
    c.set_dim(Bidegree::new(p, q), 1);
    c
}

/// The acyclic square `a → ∂a = u, ∂̄a = v, ∂̄u = w, ∂v = −w`.
pub fn build_square(p: i64, q: i64) -> DoubleComplex {
    let a = Bidegree::new(p, q);
    let mut c = DoubleComplex::new(format!("square({p},{q})"));
    for at in [a, a.del(), a.delbar(), a.del().delbar()] {
        c.set_dim(at, 1);
    }
    c.set_del(a, unit());
    c.set_delbar(a, unit());
    c.set_delbar(a.del(), unit());
    c.set_del(a.delbar(), unit().neg());
    c
}

/// `(source, target, is_del)` between vertex indices.
type Edge = (usize, usize, bool);

/// Vertex positions and arrows `(source, target, is_del)` of a zigzag word.
///
/// The first letter attaches a tail vertex to the anchor; the remaining
/// letters walk away from the anchor on the other side, each one read from
/// the vertex the previous letter reached. So `[d-out, dbar-out]` at `a` is
/// `∂a ← a → ∂̄a`, and `[dbar-in, d-in, dbar-out]` at `x` is the staircase
/// `y → x ← z → ∂̄z` with `∂̄y = x` and `∂z = x`.
fn zigzag_layout(anchor: Bidegree, shape: &[Arrow]) -> Result<(Vec<Bidegree>, Vec<Edge>)> {
    let Some((&first, rest)) = shape.split_first() else {
        return Err(Error::BadShape("empty zigzag word".into()));
    };
    let mut verts = vec![anchor];
    let mut arrows = Vec::new();

    let mut attach = |verts: &mut Vec<Bidegree>, from: usize, arrow: Arrow| {
        let (dp, dq) = arrow.step();
        let at = verts[from].shift(dp, dq);
        verts.push(at);
        let new = verts.len() - 1;
        if arrow.is_out() {
            arrows.push((from, new, arrow.is_del()));
        } else {
            arrows.push((new, from, arrow.is_del()));
        }
        new
    };

    attach(&mut verts, 0, first);
    let mut current = 0;
    let mut previous = first;
    for (i, &arrow) in rest.iter().enumerate() {
        // Seen from `current`, the previous arrow had direction
        // `previous.is_out()` when `current` is the anchor, and the reverse
        // otherwise. A zigzag vertex is either a pure source or a pure sink,
        // and its two arrows use different operators.
        let prev_out_here = if i == 0 {
            previous.is_out()
        } else {
            !previous.is_out()
        };
        if arrow.is_out() != prev_out_here {
            return Err(Error::BadShape(format!(
                "letter {} ({arrow}) mixes incoming and outgoing arrows at one vertex",
                i + 2
            )));
        }
        if arrow.is_del() == previous.is_del() {
            return Err(Error::BadShape(format!(
                "letter {} ({arrow}) repeats the operator of the previous arrow",
                i + 2
            )));
        }
        current = attach(&mut verts, current, arrow);
        previous = arrow;
    }

    let mut seen = verts.clone();
    seen.sort();
    seen.dedup();
    if seen.len() != verts.len() {
        return Err(Error::BadShape("zigzag revisits a bidegree".into()));
    }
    Ok((verts, arrows))
}

/// Zigzag with unit arrows; see [`GeneratorSpec`] for how words are read.
pub fn zigzag(anchor: Bidegree, shape: &[Arrow]) -> Result<DoubleComplex> {
    let (verts, arrows) = zigzag_layout(anchor, shape)?;
    let word: Vec<&str> = shape.iter().map(|a| a.as_str()).collect();
    let mut c = DoubleComplex::new(format!("zigzag{anchor}[{}]", word.join(",")));
    for &v in &verts {
        c.set_dim(v, 1);
    }
    for &(s, _, is_del) in &arrows {
        if is_del {
            c.set_del(verts[s], unit());
        } else {
            c.set_delbar(verts[s], unit());
        }
    }
    if !c.is_valid() {
        return Err(Error::BadShape(c.validate().to_string()));
    }
    Ok(c)
}

pub fn build_zigzag(spec: &GeneratorSpec) -> Result<DoubleComplex> {
    if spec.kind != GeneratorKind::Zigzag {
        return Err(Error::BadSpec("build_zigzag needs kind = zigzag".into()));
    }
    zigzag(spec.placement, &spec.zigzag_shape)
}

fn sum_pair(a: &DoubleComplex, b: &DoubleComplex) -> DoubleComplex {
    let mut c = DoubleComplex::new(format!("{}+{}", a.name(), b.name()));
    c.set_n(match (a.n(), b.n()) {
        (Some(x), Some(y)) => Some(x.max(y)),
        _ => None,
    });
    let mut support: Vec<Bidegree> = a.support().chain(b.support()).collect();
    support.sort();
    support.dedup();
    for &at in &support {
        c.set_dim(at, a.dim(at) + b.dim(at));
    }
    for &at in &support {
        c.set_del(at, Matrix::block_diagonal(&a.del(at), &b.del(at)));
        c.set_delbar(at, Matrix::block_diagonal(&a.delbar(at), &b.delbar(at)));
    }
    if a.has_conj() && b.has_conj() {
        c.enable_conj();
        for &at in &support {
            let m = Matrix::block_diagonal(
                &a.conj(at).expect("conj present"),
                &b.conj(at).expect("conj present"),
            );
            c.set_conj(at, m);
        }
    }
    c
}

/// Block-diagonal sum. Empty summands are dropped, so summing with the
/// empty complex returns the other summand unchanged.
pub fn direct_sum(parts: &[DoubleComplex]) -> DoubleComplex {
    let mut nonempty = parts.iter().filter(|c| !c.is_empty());
    let Some(first) = nonempty.next() else {
        return DoubleComplex::new("empty");
    };
    nonempty.fold(first.clone(), |acc, c| sum_pair(&acc, c))
}

/// Conjugates every map by the given per-bidegree changes of basis
/// (`x' = P x`); bidegrees without an entry keep their coordinates.
pub fn change_basis(
    c: &DoubleComplex,
    changes: &BTreeMap<Bidegree, Matrix>,
) -> Result<DoubleComplex> {
    let mut inverses = BTreeMap::new();
    for (&at, p) in changes {
        if p.rows() != c.dim(at) || p.cols() != c.dim(at) {
            return Err(Error::DimensionMismatch(format!(
                "basis change at {at} has the wrong size"
            )));
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch(format!("basis change at {at} is singular")))?;
        inverses.insert(at, inv);
    }
    let fwd = |at: Bidegree| {
        changes
            .get(&at)
            .cloned()
            .unwrap_or_else(|| Matrix::identity(c.dim(at)))
    };
    let back = |at: Bidegree| {
        inverses
            .get(&at)
            .cloned()
            .unwrap_or_else(|| Matrix::identity(c.dim(at)))
    };
    let conjugate = |target: Bidegree, source: Bidegree, m: &Matrix| -> Result<Matrix> {
        fwd(target).mul(m)?.mul(&back(source))
    };

    let mut out = c.clone();
    for (&at, m) in c.stored_del() {
        out.set_del(at, conjugate(at.del(), at, m)?);
    }
    for (&at, m) in c.stored_delbar() {
        out.set_delbar(at, conjugate(at.delbar(), at, m)?);
    }
    if let Some(conj) = c.stored_conj() {
        for (&at, m) in conj {
            out.set_conj(at, conjugate(at.conjugate(), at, m)?);
        }
    }
    Ok(out)
}

/// Draws `n x n` matrices with entries in `-3..=3` until one is invertible.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, integer(rng.gen_range(-3..=3)));
            }
        }
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// An isomorphic copy of `c` in seeded random coordinates.
pub fn random_basis_change(c: &DoubleComplex, seed: u64) -> DoubleComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let changes: BTreeMap<Bidegree, Matrix> = c
        .support()
        .map(|at| (at, random_invertible(&mut rng, c.dim(at))))
        .collect();
    change_basis(c, &changes).expect("random changes are invertible and correctly sized")
}
