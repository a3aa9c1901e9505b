//! Bounded double complexes with exact rational coordinates.
//!
//! A [`DoubleComplex`] stores the dimension of every nonzero space
//! `A^{p,q}` together with the coordinate matrices of
//! `∂: A^{p,q} → A^{p+1,q}` and `∂̄: A^{p,q} → A^{p,q+1}`. Absent maps are
//! zero maps of the right shape. The operators anticommute and the total
//! differential is `d = ∂ + ∂̄` with no interleaved signs.
//!
//! An optional real structure `σ: A^{p,q} → A^{q,p}` can be attached; it
//! must be an involution with `σ∂ = ∂̄σ`.

mod format;
mod generators;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;

pub use format::{parse_text, to_text};
pub use generators::{
    build_dot, build_square, build_zigzag, change_basis, direct_sum, random_basis_change,
    random_invertible, zigzag, Arrow, GeneratorKind, GeneratorSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn total(self) -> i64 {
        self.p + self.q
    }

    /// Target bidegree of `∂`.
    pub fn del(self) -> Self {
        Bidegree::new(self.p + 1, self.q)
    }

    /// Target bidegree of `∂̄`.
    pub fn delbar(self) -> Self {
        Bidegree::new(self.p, self.q + 1)
    }

    pub fn conjugate(self) -> Self {
        Bidegree::new(self.q, self.p)
    }

    pub fn shift(self, dp: i64, dq: i64) -> Self {
        Bidegree::new(self.p + dp, self.q + dq)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleComplex {
    name: String,
    n: Option<usize>,
    dims: BTreeMap<Bidegree, usize>,
    del: BTreeMap<Bidegree, Matrix>,
    delbar: BTreeMap<Bidegree, Matrix>,
    conj: Option<BTreeMap<Bidegree, Matrix>>,
}

impl DoubleComplex {
    pub fn new(name: impl Into<String>) -> Self {
        DoubleComplex {
            name: name.into(),
            n: None,
            dims: BTreeMap::new(),
            del: BTreeMap::new(),
            delbar: BTreeMap::new(),
            conj: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Declared complex dimension.
    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn set_n(&mut self, n: Option<usize>) {
        self.n = n;
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn dim(&self, at: Bidegree) -> usize {
        self.dims.get(&at).copied().unwrap_or(0)
    }

    pub fn set_dim(&mut self, at: Bidegree, dim: usize) {
        if dim == 0 {
            self.dims.remove(&at);
        } else {
            self.dims.insert(at, dim);
        }
    }

    /// Bidegrees with a nonzero space, in ascending `(p, q)` order.
    pub fn support(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.dims.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &BTreeMap<Bidegree, usize> {
        &self.dims
    }

    /// Smallest rectangle `[lo.p, hi.p] x [lo.q, hi.q]` containing the support.
    pub fn hull(&self) -> Option<(Bidegree, Bidegree)> {
        let mut it = self.dims.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), b| {
            (
                Bidegree::new(lo.p.min(b.p), lo.q.min(b.q)),
                Bidegree::new(hi.p.max(b.p), hi.q.max(b.q)),
            )
        }))
    }

    /// Total degrees `p + q` spanned by the support.
    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.dims.keys().map(|b| b.total());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), k| (lo.min(k), hi.max(k))))
    }

    /// `∂` out of `A^{p,q}`; the zero map of the right shape when unset.
    pub fn del(&self, at: Bidegree) -> Matrix {
        self.del
            .get(&at)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(at.del()), self.dim(at)))
    }

    /// `∂̄` out of `A^{p,q}`; the zero map of the right shape when unset.
    pub fn delbar(&self, at: Bidegree) -> Matrix {
        self.delbar
            .get(&at)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(at.delbar()), self.dim(at)))
    }

    /// `σ` out of `A^{p,q}`, if a real structure is attached.
    pub fn conj(&self, at: Bidegree) -> Option<Matrix> {
        self.conj.as_ref().map(|c| {
            c.get(&at)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(self.dim(at.conjugate()), self.dim(at)))
        })
    }

    pub fn has_conj(&self) -> bool {
        self.conj.is_some()
    }

    pub fn set_del(&mut self, at: Bidegree, m: Matrix) {
        if m.is_zero() {
            self.del.remove(&at);
        } else {
            self.del.insert(at, m);
        }
    }

    pub fn set_delbar(&mut self, at: Bidegree, m: Matrix) {
        if m.is_zero() {
            self.delbar.remove(&at);
        } else {
            self.delbar.insert(at, m);
        }
    }

    /// Attaches an (initially zero) real structure.
    pub fn enable_conj(&mut self) {
        self.conj.get_or_insert_with(BTreeMap::new);
    }

    pub fn clear_conj(&mut self) {
        self.conj = None;
    }

    pub fn set_conj(&mut self, at: Bidegree, m: Matrix) {
        let conj = self.conj.get_or_insert_with(BTreeMap::new);
        if m.is_zero() {
            conj.remove(&at);
        } else {
            conj.insert(at, m);
        }
    }

    pub(crate) fn stored_del(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.del
    }

    pub(crate) fn stored_delbar(&self) -> &BTreeMap<Bidegree, Matrix> {
        &self.delbar
    }

    pub(crate) fn stored_conj(&self) -> Option<&BTreeMap<Bidegree, Matrix>> {
        self.conj.as_ref()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    DelShape,
    DelbarShape,
    ConjShape,
    DelSquared,
    DelbarSquared,
    Anticommutation,
    OutsideDimension,
    ConjInvolution,
    ConjIntertwining,
}

impl ViolationKind {
    pub fn describe(self) -> &'static str {
        match self {
            ViolationKind::DelShape => "∂ matrix has the wrong shape",
            ViolationKind::DelbarShape => "∂̄ matrix has the wrong shape",
            ViolationKind::ConjShape => "σ matrix has the wrong shape",
            ViolationKind::DelSquared => "∂∘∂ ≠ 0",
            ViolationKind::DelbarSquared => "∂̄∘∂̄ ≠ 0",
            ViolationKind::Anticommutation => "∂∂̄ + ∂̄∂ ≠ 0",
            ViolationKind::OutsideDimension => "space outside [0,n]²",
            ViolationKind::ConjInvolution => "σ∘σ ≠ id",
            ViolationKind::ConjIntertwining => "σ∂ ≠ ∂̄σ",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub at: Bidegree,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.kind.describe(), self.at)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn shape_ok(m: &Matrix, rows: usize, cols: usize) -> bool {
    m.rows() == rows && m.cols() == cols
}

/// Checks every identity a double complex must satisfy. Violations are
/// reported per bidegree, sorted, never as an error.
pub fn validate(c: &DoubleComplex) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |kind, at| out.push(Violation { kind, at });

    let mut bad_shape = false;
    for (&at, m) in &c.del {
        if !shape_ok(m, c.dim(at.del()), c.dim(at)) {
            push(ViolationKind::DelShape, at);
            bad_shape = true;
        }
    }
    for (&at, m) in &c.delbar {
        if !shape_ok(m, c.dim(at.delbar()), c.dim(at)) {
            push(ViolationKind::DelbarShape, at);
            bad_shape = true;
        }
    }
    if let Some(conj) = &c.conj {
        for (&at, m) in conj {
            if !shape_ok(m, c.dim(at.conjugate()), c.dim(at)) {
                push(ViolationKind::ConjShape, at);
                bad_shape = true;
            }
        }
    }

    if let Some(n) = c.n {
        let n = n as i64;
        for at in c.support() {
            if at.p < 0 || at.q < 0 || at.p > n || at.q > n {
                push(ViolationKind::OutsideDimension, at);
            }
        }
    }

    // Products are meaningless once a stored map has the wrong shape.
    if !bad_shape {
        for at in c.support() {
            let del = c.del(at);
            let delbar = c.delbar(at);
            let dd = c.del(at.del()).mul(&del).expect("shapes checked");
            if !dd.is_zero() {
                push(ViolationKind::DelSquared, at);
            }
            let bb = c.delbar(at.delbar()).mul(&delbar).expect("shapes checked");
            if !bb.is_zero() {
                push(ViolationKind::DelbarSquared, at);
            }
            let db = c.del(at.delbar()).mul(&delbar).expect("shapes checked");
            let bd = c.delbar(at.del()).mul(&del).expect("shapes checked");
            if !db.add(&bd).expect("shapes checked").is_zero() {
                push(ViolationKind::Anticommutation, at);
            }
            if c.conj.is_some() {
                let sigma = c.conj(at).expect("conj present");
                let back = c.conj(at.conjugate()).expect("conj present");
                if back.mul(&sigma).expect("shapes checked") != Matrix::identity(c.dim(at)) {
                    push(ViolationKind::ConjInvolution, at);
                }
                let lhs = c.conj(at.del()).expect("conj present").mul(&del);
                let rhs = c.delbar(at.conjugate()).mul(&sigma);
                if lhs.expect("shapes checked") != rhs.expect("shapes checked") {
                    push(ViolationKind::ConjIntertwining, at);
                }
            }
        }
    }

    out.sort_by_key(|v| (v.at, v.kind));
    ValidationReport { violations: out }
}
