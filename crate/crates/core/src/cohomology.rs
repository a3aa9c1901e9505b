//! Dolbeault (both operators), Bott-Chern, Aeppli and de Rham cohomology,
//! plus the comparison maps induced by the identity on representatives.
//!
//! Every group is a quotient `span S / span T` of coordinate subspaces:
//!
//! | theory   | numerator `S` at `(p,q)`      | denominator `T`                    |
//! |----------|-------------------------------|------------------------------------|
//! | `∂̄`      | `ker ∂̄`                       | `im ∂̄` from `(p,q-1)`              |
//! | `∂`      | `ker ∂`                       | `im ∂` from `(p-1,q)`              |
//! | BC       | `ker ∂ ∩ ker ∂̄`               | `im ∂∂̄` from `(p-1,q-1)`           |
//! | Aeppli   | `ker ∂∂̄`                      | `im ∂` + `im ∂̄`                    |
//! | de Rham  | `ker d` on `T^k`              | `im d` from `T^{k-1}`              |
//!
//! The total space `T^k = ⊕_{p+q=k} A^{p,q}` stacks its blocks in ascending
//! `p`. Bidegrees outside the support give zero groups.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theory {
    DolbeaultDbar,
    DolbeaultDel,
    BottChern,
    Aeppli,
}

impl Theory {
    pub const ALL: [Theory; 4] = [
        Theory::DolbeaultDbar,
        Theory::DolbeaultDel,
        Theory::BottChern,
        Theory::Aeppli,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Theory::DolbeaultDbar => "dbar",
            Theory::DolbeaultDel => "del",
            Theory::BottChern => "BC",
            Theory::Aeppli => "A",
        }
    }
}

/// Either one of the bigraded theories or de Rham cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Functor {
    Bigraded(Theory),
    DeRham,
}

impl fmt::Display for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Functor::Bigraded(t) => f.write_str(t.symbol()),
            Functor::DeRham => f.write_str("dR"),
        }
    }
}

impl FromStr for Functor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "dbar" => Functor::Bigraded(Theory::DolbeaultDbar),
            "del" => Functor::Bigraded(Theory::DolbeaultDel),
            "bc" | "BC" => Functor::Bigraded(Theory::BottChern),
            "a" | "A" => Functor::Bigraded(Theory::Aeppli),
            "dr" | "dR" => Functor::DeRham,
            other => return Err(Error::BadSpec(format!("unknown theory `{other}`"))),
        })
    }
}

/// Where a cohomology group lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Location {
    Bigraded { theory: Theory, p: i64, q: i64 },
    DeRham { degree: i64 },
}

impl Location {
    pub fn bigraded(theory: Theory, at: Bidegree) -> Self {
        Location::Bigraded {
            theory,
            p: at.p,
            q: at.q,
        }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Bigraded { theory, p, q } => write!(f, "H_{}^{{{p},{q}}}", theory.symbol()),
            Location::DeRham { degree } => write!(f, "H_dR^{{{degree}}}"),
        }
    }
}

/// A computed group: its dimension, canonical representatives, and enough
/// of the quotient to express further cocycles in the representative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub location: Location,
    pub dimension: usize,
    /// Columns are cocycle coordinates in `A^{p,q}` or in `T^k`.
    pub representatives: Matrix,
    boundaries: Matrix,
}

impl CohomologyGroup {
    fn from_quotient(location: Location, cycles: &Matrix, boundaries: &Matrix) -> Result<Self> {
        let representatives = linalg::quotient_representatives(cycles, boundaries)?;
        Ok(CohomologyGroup {
            location,
            dimension: representatives.cols(),
            representatives,
            boundaries: boundaries.image_basis(),
        })
    }

    /// Basis of the boundary subspace that the representatives complete.
    pub fn boundaries(&self) -> &Matrix {
        &self.boundaries
    }

    /// Coordinates of the classes of `cocycles` (columns) in the
    /// representative basis. Fails if a column is not a cocycle.
    pub fn coordinates(&self, cocycles: &Matrix) -> Result<Matrix> {
        let basis = Matrix::concat_horizontal(&self.boundaries, &self.representatives)?;
        let all = linalg::coordinates(&basis, cocycles)?;
        Ok(all.block(self.boundaries.cols(), 0, self.dimension, cocycles.cols()))
    }
}

/// The induced map between two groups in the chosen representative bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalMapReport {
    pub source: Location,
    pub target: Location,
    pub source_dim: usize,
    pub target_dim: usize,
    /// `target_dim x source_dim`.
    pub matrix: Matrix,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl NaturalMapReport {
    fn new(source: &CohomologyGroup, target: &CohomologyGroup, matrix: Matrix) -> Self {
        let rank = matrix.rank();
        NaturalMapReport {
            source: source.location,
            target: target.location,
            source_dim: source.dimension,
            target_dim: target.dimension,
            rank,
            injective: rank == source.dimension,
            surjective: rank == target.dimension,
            matrix,
        }
    }

    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Blocks of `T^k`, ascending in `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalSpace {
    pub degree: i64,
    pub blocks: Vec<(Bidegree, usize, usize)>,
    pub dim: usize,
}

impl TotalSpace {
    fn new(c: &DoubleComplex, degree: i64) -> Self {
        let mut blocks = Vec::new();
        let mut dim = 0;
        for at in c.support().filter(|b| b.total() == degree) {
            let d = c.dim(at);
            blocks.push((at, dim, d));
            dim += d;
        }
        TotalSpace {
            degree,
            blocks,
            dim,
        }
    }

    pub fn offset(&self, at: Bidegree) -> Option<usize> {
        self.blocks
            .iter()
            .find(|(b, _, _)| *b == at)
            .map(|&(_, off, _)| off)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum DimKey {
    Bigraded(Theory, Bidegree),
    DeRham(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: i64,
    pub q: i64,
    pub dbar: usize,
    pub del: usize,
    pub bott_chern: usize,
    pub aeppli: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrolicherReport {
    pub degree: i64,
    pub betti: usize,
    pub dolbeault_sum: usize,
}

impl FrolicherReport {
    pub fn margin(&self) -> i64 {
        self.dolbeault_sum as i64 - self.betti as i64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<TableRow>,
    pub degrees: Vec<FrolicherReport>,
}

impl Table {
    pub fn row(&self, p: i64, q: i64) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.p == p && r.q == q)
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.degrees
            .iter()
            .find(|d| d.degree == degree)
            .map_or(0, |d| d.betti)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DdbarLemma {
    pub holds: bool,
    pub witness: Option<Bidegree>,
}

/// Cohomology of one validated complex. Dimensions are memoized.
pub struct Cohomology<'a> {
    complex: &'a DoubleComplex,
    dims: Mutex<HashMap<DimKey, usize>>,
}

impl<'a> Cohomology<'a> {
    pub fn new(complex: &'a DoubleComplex) -> Result<Self> {
        let report = complex.validate();
        if !report.is_valid() {
            return Err(Error::InvalidComplex(report));
        }
        Ok(Cohomology {
            complex,
            dims: Mutex::new(HashMap::new()),
        })
    }

    pub fn complex(&self) -> &'a DoubleComplex {
        self.complex
    }

    fn ddbar_from(&self, at: Bidegree) -> Matrix {
        // ∂∂̄ : A^{p,q} → A^{p+1,q+1}
        let c = self.complex;
        c.del(at.delbar())
            .mul(&c.delbar(at))
            .expect("validated shapes")
    }

    fn quotient_spaces(&self, theory: Theory, at: Bidegree) -> (Matrix, Matrix) {
        let c = self.complex;
        match theory {
            Theory::DolbeaultDbar => (c.delbar(at).kernel_basis(), c.delbar(at.shift(0, -1))),
            Theory::DolbeaultDel => (c.del(at).kernel_basis(), c.del(at.shift(-1, 0))),
            Theory::BottChern => {
                let stacked =
                    Matrix::stack_vertical(&c.del(at), &c.delbar(at)).expect("same source");
                (stacked.kernel_basis(), self.ddbar_from(at.shift(-1, -1)))
            }
            Theory::Aeppli => {
                let image =
                    Matrix::concat_horizontal(&c.del(at.shift(-1, 0)), &c.delbar(at.shift(0, -1)))
                        .expect("same target");
                (self.ddbar_from(at).kernel_basis(), image)
            }
        }
    }

    pub fn bigraded(&self, theory: Theory, at: Bidegree) -> Result<CohomologyGroup> {
        let (cycles, boundaries) = self.quotient_spaces(theory, at);
        debug_assert!(
            linalg::quotient_dim(&cycles, &boundaries).is_ok(),
            "boundaries escape the cycles of {theory:?} at {at}"
        );
        CohomologyGroup::from_quotient(Location::bigraded(theory, at), &cycles, &boundaries)
    }

    pub fn total_space(&self, degree: i64) -> TotalSpace {
        TotalSpace::new(self.complex, degree)
    }

    /// `d = ∂ + ∂̄ : T^k → T^{k+1}`.
    pub fn total_differential(&self, degree: i64) -> Matrix {
        let c = self.complex;
        let src = self.total_space(degree);
        let dst = self.total_space(degree + 1);
        let mut d = Matrix::zeros(dst.dim, src.dim);
        for &(at, off, _) in &src.blocks {
            if let Some(row) = dst.offset(at.del()) {
                d.place(row, off, &c.del(at));
            }
            if let Some(row) = dst.offset(at.delbar()) {
                d.place(row, off, &c.delbar(at));
            }
        }
        d
    }

    pub fn de_rham(&self, degree: i64) -> Result<CohomologyGroup> {
        let cycles = self.total_differential(degree).kernel_basis();
        let boundaries = self.total_differential(degree - 1);
        CohomologyGroup::from_quotient(Location::DeRham { degree }, &cycles, &boundaries)
    }

    pub fn group(&self, functor: Functor, at: Bidegree) -> Result<CohomologyGroup> {
        match functor {
            Functor::Bigraded(t) => self.bigraded(t, at),
            Functor::DeRham => self.de_rham(at.total()),
        }
    }

    fn cached(&self, key: DimKey, compute: impl FnOnce() -> usize) -> usize {
        if let Some(&d) = self.dims.lock().expect("cache lock").get(&key) {
            return d;
        }
        let d = compute();
        self.dims.lock().expect("cache lock").insert(key, d);
        d
    }

    /// `dim H^{p,q}` from ranks alone (no representatives).
    pub fn dim(&self, theory: Theory, at: Bidegree) -> usize {
        self.cached(DimKey::Bigraded(theory, at), || {
            let (cycles, boundaries) = self.quotient_spaces(theory, at);
            cycles.cols() - boundaries.rank()
        })
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.cached(DimKey::DeRham(degree), || {
            let d = self.total_differential(degree);
            d.cols() - d.rank() - self.total_differential(degree - 1).rank()
        })
    }

    /// Embeds columns of `A^{p,q}` into `T^{p+q}`.
    pub fn embed(&self, at: Bidegree, vectors: &Matrix) -> Matrix {
        let total = self.total_space(at.total());
        let mut out = Matrix::zeros(total.dim, vectors.cols());
        if let Some(off) = total.offset(at) {
            out.place(off, 0, vectors);
        }
        out
    }

    /// The `A^{p,q}` component of columns of `T^{p+q}`.
    pub fn project(&self, at: Bidegree, vectors: &Matrix) -> Matrix {
        let total = self.total_space(at.total());
        match total.offset(at) {
            Some(off) => vectors.block(off, 0, self.complex.dim(at), vectors.cols()),
            None => Matrix::zeros(0, vectors.cols()),
        }
    }

    pub fn natural_map_bc_to_dr(&self, at: Bidegree) -> Result<NaturalMapReport> {
        self.natural_map(Functor::Bigraded(Theory::BottChern), Functor::DeRham, at)
    }

    /// Map induced by the identity on representatives; `dR → A` takes the
    /// `(p,q)` component of a total cocycle of degree `p + q`.
    pub fn natural_map(
        &self,
        source: Functor,
        target: Functor,
        at: Bidegree,
    ) -> Result<NaturalMapReport> {
        use Theory::*;
        let supported = matches!(
            (source, target),
            (Functor::Bigraded(BottChern), Functor::DeRham)
                | (
                    Functor::Bigraded(BottChern),
                    Functor::Bigraded(DolbeaultDbar)
                )
                | (
                    Functor::Bigraded(BottChern),
                    Functor::Bigraded(DolbeaultDel)
                )
                | (Functor::Bigraded(BottChern), Functor::Bigraded(Aeppli))
                | (Functor::Bigraded(DolbeaultDbar), Functor::Bigraded(Aeppli))
                | (Functor::Bigraded(DolbeaultDel), Functor::Bigraded(Aeppli))
                | (Functor::DeRham, Functor::Bigraded(Aeppli))
        );
        if !supported {
            return Err(Error::UnsupportedPair {
                source_kind: source.to_string(),
                target_kind: target.to_string(),
            });
        }
        let src = self.group(source, at)?;
        let dst = self.group(target, at)?;
        let vectors = match (source, target) {
            (Functor::Bigraded(_), Functor::DeRham) => self.embed(at, &src.representatives),
            (Functor::DeRham, Functor::Bigraded(_)) => self.project(at, &src.representatives),
            _ => src.representatives.clone(),
        };
        let matrix = dst.coordinates(&vectors)?;
        Ok(NaturalMapReport::new(&src, &dst, matrix))
    }

    /// Every supported comparison map at one bidegree, in a fixed order.
    pub fn all_natural_maps(&self, at: Bidegree) -> Result<Vec<NaturalMapReport>> {
        use Theory::*;
        let bc = Functor::Bigraded(BottChern);
        let a = Functor::Bigraded(Aeppli);
        [
            (bc, Functor::Bigraded(DolbeaultDbar)),
            (bc, Functor::Bigraded(DolbeaultDel)),
            (bc, Functor::DeRham),
            (bc, a),
            (Functor::Bigraded(DolbeaultDbar), a),
            (Functor::Bigraded(DolbeaultDel), a),
            (Functor::DeRham, a),
        ]
        .into_iter()
        .map(|(s, t)| self.natural_map(s, t, at))
        .collect()
    }

    /// `BC → A` injective at every bidegree of the support; the witness is
    /// the first failing bidegree in `(p, q)` order.
    pub fn ddbar_lemma(&self) -> Result<DdbarLemma> {
        for at in self.complex.support() {
            let map = self.natural_map(
                Functor::Bigraded(Theory::BottChern),
                Functor::Bigraded(Theory::Aeppli),
                at,
            )?;
            if !map.injective {
                return Ok(DdbarLemma {
                    holds: false,
                    witness: Some(at),
                });
            }
        }
        Ok(DdbarLemma {
            holds: true,
            witness: None,
        })
    }

    pub fn dolbeault_sum(&self, degree: i64) -> usize {
        self.complex
            .support()
            .filter(|b| b.total() == degree)
            .map(|b| self.dim(Theory::DolbeaultDbar, b))
            .sum()
    }

    pub fn frolicher(&self, degree: i64) -> Result<FrolicherReport> {
        let report = FrolicherReport {
            degree,
            betti: self.betti(degree),
            dolbeault_sum: self.dolbeault_sum(degree),
        };
        if report.betti > report.dolbeault_sum {
            return Err(Error::InequalityViolated {
                degree,
                betti: report.betti,
                dolbeault_sum: report.dolbeault_sum,
            });
        }
        Ok(report)
    }

    pub fn table(&self) -> Result<Table> {
        let Some((lo, hi)) = self.complex.hull() else {
            return Ok(Table::default());
        };
        let mut rows = Vec::new();
        for p in lo.p..=hi.p {
            for q in lo.q..=hi.q {
                let at = Bidegree::new(p, q);
                rows.push(TableRow {
                    p,
                    q,
                    dbar: self.dim(Theory::DolbeaultDbar, at),
                    del: self.dim(Theory::DolbeaultDel, at),
                    bott_chern: self.dim(Theory::BottChern, at),
                    aeppli: self.dim(Theory::Aeppli, at),
                });
            }
        }
        let (k0, k1) = self.complex.total_degree_range().expect("nonempty");
        let degrees = (k0..=k1)
            .map(|k| self.frolicher(k))
            .collect::<Result<_>>()?;
        Ok(Table { rows, degrees })
    }
}

pub fn bigraded_cohomology(
    c: &DoubleComplex,
    theory: Theory,
    p: i64,
    q: i64,
) -> Result<CohomologyGroup> {
    Cohomology::new(c)?.bigraded(theory, Bidegree::new(p, q))
}

pub fn de_rham(c: &DoubleComplex, degree: i64) -> Result<CohomologyGroup> {
    Cohomology::new(c)?.de_rham(degree)
}

pub fn natural_map_bc_to_dr(c: &DoubleComplex, p: i64, q: i64) -> Result<NaturalMapReport> {
    Cohomology::new(c)?.natural_map_bc_to_dr(Bidegree::new(p, q))
}

pub fn natural_map(
    c: &DoubleComplex,
    source: Functor,
    target: Functor,
    p: i64,
    q: i64,
) -> Result<NaturalMapReport> {
    Cohomology::new(c)?.natural_map(source, target, Bidegree::new(p, q))
}

pub fn ddbar_lemma_holds(c: &DoubleComplex) -> Result<DdbarLemma> {
    Cohomology::new(c)?.ddbar_lemma()
}

pub fn full_table(c: &DoubleComplex) -> Result<Table> {
    Cohomology::new(c)?.table()
}

pub fn frolicher_inequality_check(c: &DoubleComplex, degree: i64) -> Result<FrolicherReport> {
    Cohomology::new(c)?.frolicher(degree)
}
