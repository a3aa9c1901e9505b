//! Concrete complexes with known answers, and seeded random block sums that
//! carry their own expected table.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{
    build_dot, build_square, build_zigzag, direct_sum, random_basis_change, zigzag, Arrow,
    Bidegree, DoubleComplex, GeneratorKind, GeneratorSpec,
};
use crate::cohomology::Theory;
use crate::error::{Error, Result};
use crate::linalg::{integer, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    BlockSum,
    HandComputed,
    CrossChecked,
}

/// Expected dimensions. Locations not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleTable {
    /// Indexed like [`Theory::ALL`].
    pub dims: BTreeMap<Bidegree, [usize; 4]>,
    pub betti: BTreeMap<i64, usize>,
    pub provenance: Provenance,
}

impl OracleTable {
    pub fn empty(provenance: Provenance) -> Self {
        OracleTable {
            dims: BTreeMap::new(),
            betti: BTreeMap::new(),
            provenance,
        }
    }

    pub fn dim(&self, theory: Theory, at: Bidegree) -> usize {
        self.dims.get(&at).map_or(0, |d| d[theory as usize])
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.betti.get(&degree).copied().unwrap_or(0)
    }

    pub fn add(&mut self, other: &OracleTable) {
        for (&at, d) in &other.dims {
            let e = self.dims.entry(at).or_insert([0; 4]);
            for i in 0..4 {
                e[i] += d[i];
            }
        }
        for (&k, &b) in &other.betti {
            *self.betti.entry(k).or_insert(0) += b;
        }
        self.prune();
    }

    fn prune(&mut self) {
        self.dims.retain(|_, d| d.iter().any(|&x| x != 0));
        self.betti.retain(|_, b| *b != 0);
    }

    /// Table of one unscrambled dot, square or zigzag, read off its arrows.
    ///
    /// Every space is one-dimensional, so a vertex carries a class exactly
    /// when the relevant arrows are absent: `∂̄` needs no `∂̄` arrow in or
    /// out; BC needs no arrow out and no `∂∂̄` path in; Aeppli needs no arrow
    /// in and no `∂∂̄` path out. The total complex of a zigzag is a path
    /// between two adjacent degrees, so it has full rank and leaves the
    /// surplus vertex count on the larger side.
    pub fn of_block(block: &DoubleComplex) -> Self {
        let verts: Vec<Bidegree> = block.support().collect();
        debug_assert!(verts.iter().all(|&v| block.dim(v) == 1));
        let has = |m: Matrix| !m.is_zero();
        let del_out = |v: Bidegree| has(block.del(v));
        let dbar_out = |v: Bidegree| has(block.delbar(v));
        let del_in = |v: Bidegree| has(block.del(v.shift(-1, 0)));
        let dbar_in = |v: Bidegree| has(block.delbar(v.shift(0, -1)));
        // ∂̄ then ∂, i.e. a corner-to-corner path of a square.
        let ddbar_out = |v: Bidegree| dbar_out(v) && del_out(v.delbar());
        let ddbar_in = |v: Bidegree| ddbar_out(v.shift(-1, -1));

        let mut table = OracleTable::empty(Provenance::BlockSum);
        for &v in &verts {
            let d = [
                usize::from(!dbar_out(v) && !dbar_in(v)),
                usize::from(!del_out(v) && !del_in(v)),
                usize::from(!del_out(v) && !dbar_out(v) && !ddbar_in(v)),
                usize::from(!del_in(v) && !dbar_in(v) && !ddbar_out(v)),
            ];
            table.dims.insert(v, d);
        }
        let square = verts.iter().any(|&v| ddbar_out(v));
        if !square {
            let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
            for v in &verts {
                *counts.entry(v.total()).or_insert(0) += 1;
            }
            let lo = *counts.keys().next().expect("nonempty block");
            let (a, b) = (counts[&lo], counts.get(&(lo + 1)).copied().unwrap_or(0));
            table.betti.insert(lo, (a - b).max(0) as usize);
            table.betti.insert(lo + 1, (b - a).max(0) as usize);
        }
        table.prune();
        table
    }
}

/// The conjugate mirror: spaces move to `(q,p)` and `∂`, `∂̄` trade places.
pub fn mirror(c: &DoubleComplex) -> DoubleComplex {
    let mut m = DoubleComplex::new(format!("conj({})", c.name()));
    for (&at, &d) in c.dims() {
        m.set_dim(at.conjugate(), d);
    }
    for at in c.support() {
        m.set_del(at.conjugate(), c.delbar(at));
        m.set_delbar(at.conjugate(), c.del(at));
    }
    m
}

/// `c ⊕ mirror(c)` with the real structure that swaps the two summands.
pub fn symmetrize(c: &DoubleComplex) -> DoubleComplex {
    if c.is_empty() {
        return c.clone();
    }
    let mut s = direct_sum(&[c.clone(), mirror(c)]);
    s.set_n(c.n());
    s.enable_conj();
    let support: Vec<Bidegree> = s.support().collect();
    for at in support {
        let (a, b) = (c.dim(at), c.dim(at.conjugate()));
        let mut m = Matrix::zeros(a + b, a + b);
        m.place(0, a, &Matrix::identity(b));
        m.place(b, 0, &Matrix::identity(a));
        s.set_conj(at, m);
    }
    s
}

/// A coefficient times a sorted wedge word.
type Term = (i64, Vec<usize>);

/// Monomial exterior algebra on degree-one generators with prescribed
/// differentials, extended by the graded Leibniz rule.
struct ExteriorModel {
    /// Bidegree of each generator; generators are ordered by index.
    gens: Vec<Bidegree>,
    /// `∂g` and `∂̄g` as lists of `(coefficient, a, b)` meaning `c·g_a∧g_b`.
    del: Vec<Vec<(i64, usize, usize)>>,
    delbar: Vec<Vec<(i64, usize, usize)>>,
}

fn subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in subsets(&pool[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Sorts a word of generators, returning the permutation sign, or `None`
/// when a generator repeats.
fn sort_word(mut w: Vec<usize>) -> Option<(i64, Vec<usize>)> {
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                w.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if w.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((sign, w))
}

impl ExteriorModel {
    fn bidegree(&self, word: &[usize]) -> Bidegree {
        word.iter().fold(Bidegree::new(0, 0), |acc, &g| {
            acc.shift(self.gens[g].p, self.gens[g].q)
        })
    }

    fn basis(&self) -> BTreeMap<Bidegree, Vec<Vec<usize>>> {
        let holo: Vec<usize> = (0..self.gens.len())
            .filter(|&g| self.gens[g].p == 1)
            .collect();
        let anti: Vec<usize> = (0..self.gens.len())
            .filter(|&g| self.gens[g].q == 1)
            .collect();
        let mut out = BTreeMap::new();
        for p in 0..=holo.len() {
            for q in 0..=anti.len() {
                let mut words = Vec::new();
                for i in subsets(&holo, p) {
                    for j in subsets(&anti, q) {
                        words.push([i.clone(), j].concat());
                    }
                }
                out.insert(Bidegree::new(p as i64, q as i64), words);
            }
        }
        out
    }

    fn apply(table: &[Vec<(i64, usize, usize)>], word: &[usize]) -> Vec<Term> {
        let mut out = Vec::new();
        for (i, &g) in word.iter().enumerate() {
            let koszul = if i % 2 == 0 { 1 } else { -1 };
            for &(c, a, b) in &table[g] {
                let w = [&word[..i], &[a, b], &word[i + 1..]].concat();
                if let Some((s, w)) = sort_word(w) {
                    out.push((koszul * c * s, w));
                }
            }
        }
        out
    }

    fn build(&self, name: &str, conj: Option<&[usize]>) -> DoubleComplex {
        let basis = self.basis();
        let index: HashMap<Vec<usize>, usize> = basis
            .values()
            .flat_map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)))
            .collect();
        let mut c = DoubleComplex::new(name);
        for (&at, ws) in &basis {
            c.set_dim(at, ws.len());
        }
        let matrix = |at: Bidegree, target: Bidegree, f: &dyn Fn(&[usize]) -> Vec<Term>| {
            let mut m = Matrix::zeros(c.dim(target), c.dim(at));
            for (col, w) in basis[&at].iter().enumerate() {
                for (coef, image) in f(w) {
                    debug_assert_eq!(self.bidegree(&image), target);
                    let row = index[&image];
                    let v = m.get(row, col) + integer(coef);
                    m.set(row, col, v);
                }
            }
            m
        };
        let mut maps = Vec::new();
        for &at in basis.keys() {
            let del = matrix(at, at.del(), &|w| Self::apply(&self.del, w));
            let delbar = matrix(at, at.delbar(), &|w| Self::apply(&self.delbar, w));
            let sigma = conj.map(|perm| {
                matrix(at, at.conjugate(), &|w| {
                    let image: Vec<usize> = w.iter().map(|&g| perm[g]).collect();
                    sort_word(image)
                        .map(|(s, w)| vec![(s, w)])
                        .unwrap_or_default()
                })
            });
            maps.push((at, del, delbar, sigma));
        }
        if conj.is_some() {
            c.enable_conj();
        }
        for (at, del, delbar, sigma) in maps {
            c.set_del(at, del);
            c.set_delbar(at, delbar);
            if let Some(s) = sigma {
                c.set_conj(at, s);
            }
        }
        c
    }
}

/// Bigraded forms of the Iwasawa manifold: `φ1, φ2, φ3` of bidegree (1,0),
/// their conjugates `ψ1, ψ2, ψ3` of bidegree (0,1), with `∂φ3 = −φ1∧φ2` and
/// `∂̄ψ3 = −ψ1∧ψ2`. Basis monomials are `φ_I∧ψ_J` in lexicographic order of
/// `(I | J)`; `n = 3`; `conj` swaps `φi` and `ψi`.
pub fn iwasawa() -> DoubleComplex {
    let (h, a) = (Bidegree::new(1, 0), Bidegree::new(0, 1));
    let mut del = vec![Vec::new(); 6];
    let mut delbar = vec![Vec::new(); 6];
    del[2] = vec![(-1, 0, 1)];
    delbar[5] = vec![(-1, 3, 4)];
    let model = ExteriorModel {
        gens: vec![h, h, h, a, a, a],
        del,
        delbar,
    };
    model.build("iwasawa", Some(&[3, 4, 5, 0, 1, 2])).with_n(3)
}

/// `a(1,1)` with `∂a(2,1)` and `∂̄a(1,2)`: Aeppli class at (1,1) while both
/// Dolbeault groups there vanish.
pub fn thm_1_2_counterexample() -> DoubleComplex {
    let mut c =
        zigzag(Bidegree::new(1, 1), &[Arrow::DelOut, Arrow::DelbarOut]).expect("legal word");
    c.set_name("counterexample");
    c
}

/// Dots at `(r,0)` for `r ∈ 0..=n` plus squares along the antidiagonal
/// `r + s = n − 1`, in scrambled coordinates. `∂̄`-cohomology sits in `s = 0`.
pub fn stein_like(n: usize) -> Result<DoubleComplex> {
    if !(1..=4).contains(&n) {
        return Err(Error::BadDimension(n));
    }
    let n_i = n as i64;
    let mut parts: Vec<DoubleComplex> = (0..=n_i).map(|r| build_dot(r, 0)).collect();
    parts.extend((0..n_i).map(|r| build_square(r, n_i - 1 - r)));
    let mut c = random_basis_change(&direct_sum(&parts), 0x5eed_0000 + n as u64);
    c.set_name(format!("stein_like({n})"));
    Ok(c.with_n(n))
}

const MAX_BLOCKS: usize = 64;
const MAX_BOUND: i64 = 6;

/// Draws one block placed inside `bounds`. Zigzags have 2 to 6 vertices;
/// a shape that does not fit is redrawn, and after a few misses a dot is
/// used instead.
fn draw_block(rng: &mut ChaCha8Rng, (lo, hi): (Bidegree, Bidegree)) -> DoubleComplex {
    let at_random = |rng: &mut ChaCha8Rng, from: Bidegree, to: Bidegree| {
        Bidegree::new(rng.gen_range(from.p..=to.p), rng.gen_range(from.q..=to.q))
    };
    for _ in 0..8 {
        let origin = Bidegree::new(0, 0);
        let shape = match rng.gen_range(0..3) {
            0 => return build_dot(rng.gen_range(lo.p..=hi.p), rng.gen_range(lo.q..=hi.q)),
            1 => None,
            _ => {
                let first = Arrow::ALL[rng.gen_range(0..4)];
                Some(zigzag_word(first, rng.gen_range(1..=5)))
            }
        };
        let probe = match &shape {
            None => build_square(0, 0),
            Some(word) => zigzag(origin, word).expect("staircase words are legal"),
        };
        let (plo, phi) = probe.hull().expect("nonempty block");
        let from = Bidegree::new(lo.p - plo.p, lo.q - plo.q);
        let to = Bidegree::new(hi.p - phi.p, hi.q - phi.q);
        if from.p > to.p || from.q > to.q {
            continue;
        }
        let anchor = at_random(rng, from, to);
        return match shape {
            None => build_square(anchor.p, anchor.q),
            Some(word) => zigzag(anchor, &word).expect("staircase words are legal"),
        };
    }
    build_dot(rng.gen_range(lo.p..=hi.p), rng.gen_range(lo.q..=hi.q))
}

/// The unique legal word of the given length starting with `first`.
pub fn zigzag_word(first: Arrow, len: usize) -> Vec<Arrow> {
    let mut word = vec![first];
    while word.len() < len {
        let prev = *word.last().expect("nonempty");
        let out = if word.len() == 1 {
            prev.is_out()
        } else {
            !prev.is_out()
        };
        word.push(match (prev.is_del(), out) {
            (true, true) => Arrow::DelbarOut,
            (true, false) => Arrow::DelbarIn,
            (false, true) => Arrow::DelOut,
            (false, false) => Arrow::DelIn,
        });
    }
    word
}

fn check_random_spec(spec: &GeneratorSpec) -> Result<()> {
    if spec.kind != GeneratorKind::RandomSum {
        return Err(Error::BadSpec("random_sum needs kind = random_sum".into()));
    }
    if spec.block_count > MAX_BLOCKS {
        return Err(Error::BadSpec(format!("at most {MAX_BLOCKS} blocks")));
    }
    let (lo, hi) = spec.bounds;
    let inside = |b: Bidegree| (0..=MAX_BOUND).contains(&b.p) && (0..=MAX_BOUND).contains(&b.q);
    if !inside(lo) || !inside(hi) || lo.p > hi.p || lo.q > hi.q {
        return Err(Error::BadSpec(format!(
            "bounds {lo}..{hi} must be a rectangle inside (0,0)..({MAX_BOUND},{MAX_BOUND})"
        )));
    }
    if spec.symmetric && (lo.p != lo.q || hi.p != hi.q) {
        return Err(Error::BadSpec(
            "symmetric sums need bounds symmetric under (p,q) -> (q,p)".into(),
        ));
    }
    Ok(())
}

/// Seeded sum of dots, squares and zigzags inside `spec.bounds`, scrambled
/// by a random change of basis. The table is summed over the blocks before
/// scrambling. With `spec.symmetric` each block comes with its mirror and
/// the complex carries a real structure.
pub fn random_sum(spec: &GeneratorSpec) -> Result<(DoubleComplex, OracleTable)> {
    check_random_spec(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut oracle = OracleTable::empty(Provenance::BlockSum);
    let mut parts = Vec::with_capacity(spec.block_count);
    for _ in 0..spec.block_count {
        let block = draw_block(&mut rng, spec.bounds);
        oracle.add(&OracleTable::of_block(&block));
        if spec.symmetric {
            oracle.add(&OracleTable::of_block(&mirror(&block)));
            parts.push(symmetrize(&block));
        } else {
            parts.push(block);
        }
    }
    let scramble_seed = rng.gen::<u64>();
    let mut c = random_basis_change(&direct_sum(&parts), scramble_seed);
    c.set_name(format!(
        "random_sum(seed={},blocks={}{})",
        spec.seed,
        spec.block_count,
        if spec.symmetric { ",symmetric" } else { "" }
    ));
    c.set_n(spec.dimension);
    Ok((c, oracle))
}

/// Builds the model a spec describes.
pub fn generate(spec: &GeneratorSpec) -> Result<DoubleComplex> {
    let mut c = match spec.kind {
        GeneratorKind::Dot => build_dot(spec.placement.p, spec.placement.q),
        GeneratorKind::Square => build_square(spec.placement.p, spec.placement.q),
        GeneratorKind::Zigzag => build_zigzag(spec).map_err(|e| Error::BadSpec(e.to_string()))?,
        GeneratorKind::RandomSum => random_sum(spec)?.0,
        GeneratorKind::Iwasawa => iwasawa(),
        GeneratorKind::SteinLike => {
            let n = spec
                .dimension
                .ok_or_else(|| Error::BadSpec("stein_like needs a dimension".into()))?;
            stein_like(n)?
        }
        GeneratorKind::Counterexample => thm_1_2_counterexample(),
    };
    if let Some(n) = spec.dimension {
        c.set_n(Some(n));
    }
    let report = c.validate();
    if !report.is_valid() {
        return Err(Error::BadSpec(format!(
            "generated model is invalid: {report}"
        )));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::Cohomology;

    fn b(p: i64, q: i64) -> Bidegree {
        Bidegree::new(p, q)
    }

    fn assert_matches_oracle(c: &DoubleComplex, oracle: &OracleTable) {
        let h = Cohomology::new(c).unwrap();
        let Some((lo, hi)) = c.hull() else {
            assert!(oracle.dims.is_empty() && oracle.betti.is_empty());
            return;
        };
        for p in lo.p - 1..=hi.p + 1 {
            for q in lo.q - 1..=hi.q + 1 {
                for t in Theory::ALL {
                    assert_eq!(
                        h.dim(t, b(p, q)),
                        oracle.dim(t, b(p, q)),
                        "{t:?} at ({p},{q}) of {}",
                        c.name()
                    );
                }
            }
        }
        for k in lo.total() - 1..=hi.total() + 1 {
            assert_eq!(h.betti(k), oracle.betti(k), "b_{k} of {}", c.name());
        }
    }

    #[test]
    fn block_rules_match_direct_computation() {
        assert_matches_oracle(&build_dot(2, 3), &OracleTable::of_block(&build_dot(2, 3)));
        assert_matches_oracle(
            &build_square(1, 2),
            &OracleTable::of_block(&build_square(1, 2)),
        );
        for first in Arrow::ALL {
            for len in 1..=5 {
                let z = zigzag(b(5, 5), &zigzag_word(first, len)).unwrap();
                assert_matches_oracle(&z, &OracleTable::of_block(&z));
                let m = mirror(&z);
                assert_matches_oracle(&m, &OracleTable::of_block(&m));
            }
        }
    }

    #[test]
    fn zigzag_words_are_staircases() {
        use Arrow::*;
        assert_eq!(zigzag_word(DelOut, 3), vec![DelOut, DelbarOut, DelIn]);
        assert_eq!(zigzag_word(DelbarIn, 2), vec![DelbarIn, DelIn]);
        for first in Arrow::ALL {
            for len in 1..=5 {
                let z = zigzag(b(0, 0), &zigzag_word(first, len)).unwrap();
                assert_eq!(z.dims().len(), len + 1);
            }
        }
    }

    #[test]
    fn iwasawa_shape() {
        let c = iwasawa();
        assert_eq!(c.dims().values().sum::<usize>(), 64);
        assert_eq!(c.dim(b(1, 2)), 9);
        assert_eq!(c.n(), Some(3));
        assert!(c.has_conj());
        assert!(c.validate().is_valid(), "{}", c.validate());
    }

    #[test]
    fn iwasawa_low_degree() {
        let c = iwasawa();
        let h = Cohomology::new(&c).unwrap();
        assert_eq!(h.dim(Theory::DolbeaultDbar, b(1, 0)), 3);
        assert_eq!(h.dim(Theory::DolbeaultDbar, b(0, 1)), 2);
        assert_eq!(h.betti(1), 4);
        assert_eq!(h.dim(Theory::DolbeaultDbar, b(3, 3)), 1);
        assert_eq!(h.dim(Theory::BottChern, b(3, 3)), 1);
    }

    #[test]
    fn random_sum_examples() {
        let bounds = (b(0, 0), b(4, 4));
        let (c, o) = random_sum(&GeneratorSpec::random_sum(3, 0, bounds)).unwrap();
        assert!(c.is_empty());
        assert!(o.dims.is_empty() && o.betti.is_empty());

        for seed in 0..20 {
            let (c, o) = random_sum(&GeneratorSpec::random_sum(seed, 10, bounds)).unwrap();
            assert!(c.is_valid());
            let (lo, hi) = c.hull().unwrap();
            assert!(lo.p >= 0 && lo.q >= 0 && hi.p <= 4 && hi.q <= 4);
            assert_matches_oracle(&c, &o);
        }
        let a = random_sum(&GeneratorSpec::random_sum(7, 10, bounds)).unwrap();
        assert_eq!(
            a,
            random_sum(&GeneratorSpec::random_sum(7, 10, bounds)).unwrap()
        );
    }

    #[test]
    fn random_sum_rejects_bad_specs() {
        let ok = (b(0, 0), b(4, 4));
        assert!(random_sum(&GeneratorSpec::random_sum(0, 65, ok)).is_err());
        assert!(random_sum(&GeneratorSpec::random_sum(0, 1, (b(0, 0), b(7, 2)))).is_err());
        assert!(random_sum(&GeneratorSpec::random_sum(0, 1, (b(2, 0), b(1, 2)))).is_err());
        let mut s = GeneratorSpec::random_sum(0, 1, (b(0, 0), b(3, 2)));
        s.symmetric = true;
        assert!(random_sum(&s).is_err());
        assert!(random_sum(&GeneratorSpec::dot(0, 0)).is_err());
    }

    #[test]
    fn symmetric_sums_carry_a_real_structure() {
        for seed in 0..10 {
            let mut s = GeneratorSpec::random_sum(seed, 6, (b(0, 0), b(3, 3)));
            s.symmetric = true;
            let (c, o) = random_sum(&s).unwrap();
            assert!(c.has_conj());
            assert!(c.validate().is_valid(), "{}", c.validate());
            assert_matches_oracle(&c, &o);
        }
    }

    #[test]
    fn counterexample_groups() {
        let c = thm_1_2_counterexample();
        let h = Cohomology::new(&c).unwrap();
        assert_eq!(h.dim(Theory::Aeppli, b(1, 1)), 1);
        assert_eq!(h.dim(Theory::DolbeaultDbar, b(1, 1)), 0);
        assert_eq!(h.dim(Theory::DolbeaultDel, b(1, 1)), 0);
    }

    #[test]
    fn stein_like_models() {
        for n in 1..=4 {
            let c = stein_like(n).unwrap();
            assert!(c.is_valid());
            let h = Cohomology::new(&c).unwrap();
            let (_, hi) = c.hull().unwrap();
            assert!(hi.p <= n as i64 && hi.q <= n as i64);
            for at in c.support().filter(|at| at.q >= 1) {
                assert_eq!(h.dim(Theory::DolbeaultDbar, at), 0);
            }
        }
        assert!(matches!(stein_like(0), Err(Error::BadDimension(0))));
        assert!(matches!(stein_like(5), Err(Error::BadDimension(5))));
    }

    #[test]
    fn generate_dispatches() {
        for kind in GeneratorKind::ALL {
            let mut spec = GeneratorSpec::new(kind);
            spec.zigzag_shape = vec![Arrow::DelOut];
            spec.block_count = 3;
            spec.dimension = Some(4);
            let c = generate(&spec).unwrap();
            assert!(c.is_valid(), "{kind:?}");
        }
        assert!(generate(&GeneratorSpec::new(GeneratorKind::SteinLike)).is_err());
        let mut dot = GeneratorSpec::dot(2, 2);
        dot.dimension = Some(1);
        assert!(generate(&dot).is_err());
    }
}
