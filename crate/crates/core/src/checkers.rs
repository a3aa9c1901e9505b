//! Implication checks: each statement is a hypothesis list of vanishing
//! groups plus a conclusion, evaluated exactly on a finite complex.
//!
//! A verdict is three-valued. `Violation` means every hypothesis held and
//! the conclusion failed.
//!
//! Two hypothesis modes exist. `PaperLiteral` states vanishing in terms of
//! `H_∂̄` only, which tacitly uses a real structure to trade `H_∂^{p,q}` for
//! `H_∂̄^{q,p}`. `Direct` lists the `H_∂` and `H_∂̄` groups an argument
//! actually consumes, so it is the right mode for complexes without `conj`.
//! On complexes with a valid `conj` the two modes agree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bidegree, DoubleComplex};
use crate::cohomology::{Cohomology, Location, NaturalMapReport, Theory};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HypothesisMode {
    PaperLiteral,
    #[default]
    Direct,
}

impl HypothesisMode {
    pub fn as_str(self) -> &'static str {
        match self {
            HypothesisMode::PaperLiteral => "literal",
            HypothesisMode::Direct => "direct",
        }
    }
}

impl FromStr for HypothesisMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "paper-literal" | "paper_literal" => Ok(HypothesisMode::PaperLiteral),
            "direct" => Ok(HypothesisMode::Direct),
            other => Err(Error::BadSpec(format!("unknown hypothesis mode `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StatementId {
    #[serde(rename = "thm1.1a")]
    Thm11A,
    #[serde(rename = "thm1.1b")]
    Thm11B,
    #[serde(rename = "thm1.2")]
    Thm12,
    #[serde(rename = "cor1.3")]
    Cor13,
    #[serde(rename = "prop2.1")]
    Prop21,
    #[serde(rename = "prop2.2")]
    Prop22,
    #[serde(rename = "cor3.3")]
    Cor33,
    #[serde(rename = "cor3.4")]
    Cor34,
    #[serde(rename = "cor3.5")]
    Cor35,
}

impl StatementId {
    pub const ALL: [StatementId; 9] = [
        StatementId::Thm11A,
        StatementId::Thm11B,
        StatementId::Thm12,
        StatementId::Cor13,
        StatementId::Prop21,
        StatementId::Prop22,
        StatementId::Cor33,
        StatementId::Cor34,
        StatementId::Cor35,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::Thm11A => "thm1.1a",
            StatementId::Thm11B => "thm1.1b",
            StatementId::Thm12 => "thm1.2",
            StatementId::Cor13 => "cor1.3",
            StatementId::Prop21 => "prop2.1",
            StatementId::Prop22 => "prop2.2",
            StatementId::Cor33 => "cor3.3",
            StatementId::Cor34 => "cor3.4",
            StatementId::Cor35 => "cor3.5",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::UnknownStatement(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    HypothesesNotMet,
    Verified,
    Violation,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HypothesesNotMet => "HYPOTHESES_NOT_MET",
            Verdict::Verified => "VERIFIED",
            Verdict::Violation => "VIOLATION",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A group whose dimension is required (hypothesis) or observed (conclusion).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupValue {
    pub location: Location,
    pub required: usize,
    pub actual: usize,
}

impl GroupValue {
    pub fn holds(&self) -> bool {
        self.required == self.actual
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub claim: String,
    pub holds: bool,
    pub groups: Vec<GroupValue>,
    pub maps: Vec<NaturalMapReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremVerdict {
    pub statement: StatementId,
    pub mode: HypothesisMode,
    /// Where the statement was evaluated; `None` for global statements.
    pub at: Option<Bidegree>,
    pub hypotheses: Vec<GroupValue>,
    pub hypotheses_met: bool,
    pub conclusion: Conclusion,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl TheoremVerdict {
    fn new(
        statement: StatementId,
        mode: HypothesisMode,
        at: Option<Bidegree>,
        hypotheses: Vec<GroupValue>,
        conclusion: Conclusion,
    ) -> Self {
        let hypotheses_met = hypotheses.iter().all(GroupValue::holds);
        let verdict = match (hypotheses_met, conclusion.holds) {
            (false, _) => Verdict::HypothesesNotMet,
            (true, true) => Verdict::Verified,
            (true, false) => Verdict::Violation,
        };
        TheoremVerdict {
            statement,
            mode,
            at,
            hypotheses,
            hypotheses_met,
            conclusion,
            verdict,
            warnings: Vec::new(),
        }
    }

    /// Hypotheses that failed, in listed order.
    pub fn failed_hypotheses(&self) -> impl Iterator<Item = &GroupValue> {
        self.hypotheses.iter().filter(|h| !h.holds())
    }
}

/// Result of one of the q-completeness predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QCompleteness {
    pub q: i64,
    pub bott_chern: bool,
    pub holds: bool,
    pub witnesses: Vec<Bidegree>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Part {
    Injective,
    Surjective,
}

const NO_CONJ_WARNING: &str =
    "complex carries no real structure; the literal hypotheses presuppose one";

/// Runs checks against one validated complex, sharing memoized dimensions.
pub struct Checker<'a> {
    h: Cohomology<'a>,
}

impl<'a> Checker<'a> {
    pub fn new(complex: &'a DoubleComplex) -> Result<Self> {
        Ok(Checker {
            h: Cohomology::new(complex)?,
        })
    }

    pub fn cohomology(&self) -> &Cohomology<'a> {
        &self.h
    }

    fn complex(&self) -> &'a DoubleComplex {
        self.h.complex()
    }

    fn vanish(&self, theory: Theory, p: i64, q: i64) -> GroupValue {
        let at = Bidegree::new(p, q);
        GroupValue {
            location: Location::bigraded(theory, at),
            required: 0,
            actual: self.h.dim(theory, at),
        }
    }

    fn observe(&self, theory: Theory, at: Bidegree) -> GroupValue {
        self.vanish(theory, at.p, at.q)
    }

    fn literal_warnings(&self, mode: HypothesisMode) -> Vec<String> {
        if mode == HypothesisMode::PaperLiteral && !self.complex().has_conj() {
            vec![NO_CONJ_WARNING.to_string()]
        } else {
            Vec::new()
        }
    }

    /// `h_∂̄^{r,s}` over `r + s = degree`, `r ≥ 0`, `s ≥ s_min`.
    fn dbar_diagonal(&self, degree: i64, s_min: i64) -> Vec<GroupValue> {
        (s_min.max(0)..=degree)
            .map(|s| self.vanish(Theory::DolbeaultDbar, degree - s, s))
            .collect()
    }

    fn thm_1_1_hypotheses(
        &self,
        p: i64,
        q: i64,
        part: Part,
        mode: HypothesisMode,
    ) -> Vec<GroupValue> {
        use Theory::{DolbeaultDbar as Dbar, DolbeaultDel as Del};
        let k = p + q;
        match (mode, part) {
            (HypothesisMode::PaperLiteral, Part::Injective) => self.dbar_diagonal(k - 1, p.min(q)),
            (HypothesisMode::PaperLiteral, Part::Surjective) => self.dbar_diagonal(k, p.min(q) + 1),
            (HypothesisMode::Direct, part) => {
                // (a) lives in total degree k - 1, (b) in degree k.
                let (shift, first) = match part {
                    Part::Injective => (1, (p, q - 1)),
                    Part::Surjective => (0, (p + 1, q - 1)),
                };
                let mut out = vec![self.vanish(Del, first.0, first.1)];
                out.extend((0..=q - 2).map(|l| self.vanish(Del, k - l - shift, l)));
                out.extend((0..=p - 1).map(|l| self.vanish(Dbar, l, k - l - shift)));
                out
            }
        }
    }

    fn require_positive(p: i64, q: i64) -> Result<()> {
        if p < 1 || q < 1 {
            return Err(Error::BadBidegree(Bidegree::new(p, q)));
        }
        Ok(())
    }

    fn bc_to_dr(&self, at: Bidegree) -> Result<NaturalMapReport> {
        self.h.natural_map_bc_to_dr(at)
    }

    pub fn thm_1_1(
        &self,
        p: i64,
        q: i64,
        injective: bool,
        mode: HypothesisMode,
    ) -> Result<TheoremVerdict> {
        Self::require_positive(p, q)?;
        let at = Bidegree::new(p, q);
        let part = if injective {
            Part::Injective
        } else {
            Part::Surjective
        };
        let hypotheses = self.thm_1_1_hypotheses(p, q, part, mode);
        let map = self.bc_to_dr(at)?;
        let (statement, claim, holds) = match part {
            Part::Injective => (
                StatementId::Thm11A,
                "BC to de Rham map is injective",
                map.injective,
            ),
            Part::Surjective => (
                StatementId::Thm11B,
                "BC to de Rham map is surjective",
                map.surjective,
            ),
        };
        let conclusion = Conclusion {
            claim: claim.to_string(),
            holds,
            groups: Vec::new(),
            maps: vec![map],
        };
        let mut v = TheoremVerdict::new(statement, mode, Some(at), hypotheses, conclusion);
        v.warnings = self.literal_warnings(mode);
        Ok(v)
    }

    pub fn thm_1_2(&self, p: i64, q: i64, mode: HypothesisMode) -> Result<TheoremVerdict> {
        Self::require_positive(p, q)?;
        let at = Bidegree::new(p, q);
        let hypotheses = match mode {
            HypothesisMode::PaperLiteral => vec![
                self.vanish(Theory::DolbeaultDbar, p, q),
                self.vanish(Theory::DolbeaultDbar, q, p),
            ],
            HypothesisMode::Direct => vec![
                self.vanish(Theory::DolbeaultDbar, p, q),
                self.vanish(Theory::DolbeaultDel, p, q),
            ],
        };
        let aeppli = self.observe(Theory::Aeppli, at);
        let conclusion = Conclusion {
            claim: "Aeppli group vanishes".to_string(),
            holds: aeppli.holds(),
            groups: vec![aeppli],
            maps: Vec::new(),
        };
        let mut v = TheoremVerdict::new(StatementId::Thm12, mode, Some(at), hypotheses, conclusion);
        v.warnings = self.literal_warnings(mode);
        Ok(v)
    }

    fn resolve_n(&self, n: Option<usize>) -> Result<usize> {
        n.or(self.complex().n()).ok_or(Error::MissingDimension)
    }

    /// One verdict per `(r, s)` with `q ≤ r, s ≤ n`.
    pub fn cor_1_3(
        &self,
        q: i64,
        n: Option<usize>,
        mode: HypothesisMode,
    ) -> Result<Vec<TheoremVerdict>> {
        let n = self.resolve_n(n)? as i64;
        let mut hypotheses = self.q_complete_groups(q, Theory::DolbeaultDbar);
        if mode == HypothesisMode::Direct {
            hypotheses.extend(self.q_complete_groups(q, Theory::DolbeaultDel));
        }
        let warnings = self.literal_warnings(mode);
        let mut out = Vec::new();
        for r in q.max(1)..=n {
            for s in q.max(1)..=n {
                let aeppli = self.vanish(Theory::Aeppli, r, s);
                let conclusion = Conclusion {
                    claim: "Aeppli group vanishes".to_string(),
                    holds: aeppli.holds(),
                    groups: vec![aeppli],
                    maps: Vec::new(),
                };
                let mut v = TheoremVerdict::new(
                    StatementId::Cor13,
                    mode,
                    Some(Bidegree::new(r, s)),
                    hypotheses.clone(),
                    conclusion,
                );
                v.warnings = warnings.clone();
                out.push(v);
            }
        }
        Ok(out)
    }

    pub fn prop_2_1(&self, p: i64, q: i64) -> Result<TheoremVerdict> {
        if p < 0 || q < 1 {
            return Err(Error::BadBidegree(Bidegree::new(p, q)));
        }
        let hypotheses = vec![
            self.vanish(Theory::BottChern, p, q),
            self.vanish(Theory::BottChern, p + 1, q),
        ];
        Ok(self.dbar_conclusion(StatementId::Prop21, p, q, hypotheses))
    }

    pub fn prop_2_2(&self, p: i64, q: i64) -> Result<TheoremVerdict> {
        if p < 0 || q < 1 {
            return Err(Error::BadBidegree(Bidegree::new(p, q)));
        }
        let hypotheses = vec![
            self.vanish(Theory::Aeppli, p - 1, q),
            self.vanish(Theory::Aeppli, p, q),
        ];
        Ok(self.dbar_conclusion(StatementId::Prop22, p, q, hypotheses))
    }

    fn dbar_conclusion(
        &self,
        id: StatementId,
        p: i64,
        q: i64,
        hypotheses: Vec<GroupValue>,
    ) -> TheoremVerdict {
        let at = Bidegree::new(p, q);
        let dbar = self.observe(Theory::DolbeaultDbar, at);
        let conclusion = Conclusion {
            claim: "Dolbeault group vanishes".to_string(),
            holds: dbar.holds(),
            groups: vec![dbar],
            maps: Vec::new(),
        };
        TheoremVerdict::new(id, HypothesisMode::Direct, Some(at), hypotheses, conclusion)
    }

    /// In direct mode the hypotheses are collected at every `(h, k)` the
    /// conclusion inspects, so that each inspected map is covered.
    pub fn cor_3_3(&self, p: i64, q: i64, mode: HypothesisMode) -> Result<TheoremVerdict> {
        Self::require_positive(p, q)?;
        let (lo, hi) = (p.min(q), p.max(q));
        let targets: Vec<Bidegree> = (lo..=hi).map(|h| Bidegree::new(h, p + q - h)).collect();
        let mut hypotheses: Vec<GroupValue> = Vec::new();
        let sources: Vec<Bidegree> = match mode {
            HypothesisMode::PaperLiteral => vec![Bidegree::new(p, q)],
            HypothesisMode::Direct => targets.clone(),
        };
        for at in sources {
            for part in [Part::Injective, Part::Surjective] {
                for g in self.thm_1_1_hypotheses(at.p, at.q, part, mode) {
                    if !hypotheses.iter().any(|x| x.location == g.location) {
                        hypotheses.push(g);
                    }
                }
            }
        }
        let maps = targets
            .iter()
            .map(|&at| self.bc_to_dr(at))
            .collect::<Result<Vec<_>>>()?;
        let conclusion = Conclusion {
            claim: "BC to de Rham maps are isomorphisms along the diagonal".to_string(),
            holds: maps.iter().all(NaturalMapReport::bijective),
            groups: Vec::new(),
            maps,
        };
        let mut v = TheoremVerdict::new(
            StatementId::Cor33,
            mode,
            Some(Bidegree::new(p, q)),
            hypotheses,
            conclusion,
        );
        v.warnings = self.literal_warnings(mode);
        Ok(v)
    }

    pub fn cor_3_4(&self, p: i64, q: i64) -> Result<TheoremVerdict> {
        Self::require_positive(p, q)?;
        let at = Bidegree::new(p, q);
        let mut hypotheses = self.dbar_diagonal(p + q - 1, q);
        hypotheses.extend(self.dbar_diagonal(p + q, 0));
        let frolicher = self.h.frolicher(p + q)?;
        let map = self.bc_to_dr(at)?;
        let bc = self.observe(Theory::BottChern, at);
        let conclusion = Conclusion {
            claim: "Bott-Chern group vanishes".to_string(),
            holds: bc.holds(),
            groups: vec![
                bc,
                GroupValue {
                    location: Location::DeRham { degree: p + q },
                    required: 0,
                    actual: frolicher.betti,
                },
            ],
            maps: vec![map],
        };
        let mut v = TheoremVerdict::new(
            StatementId::Cor34,
            HypothesisMode::PaperLiteral,
            Some(at),
            hypotheses,
            conclusion,
        );
        if q > p {
            v.warnings.push(
                "first hypothesis range uses s >= q, narrower than the s >= min(p,q) an injectivity argument needs"
                    .to_string(),
            );
        }
        v.warnings
            .extend(self.literal_warnings(HypothesisMode::PaperLiteral));
        Ok(v)
    }

    pub fn cor_3_5(&self, q: i64) -> Result<TheoremVerdict> {
        let hypothesis = self.q_complete(q)?;
        let conclusion_pred = self.bc_q_complete(q)?;
        let hypotheses = self.q_complete_groups(q, Theory::DolbeaultDbar);
        debug_assert_eq!(hypotheses.iter().all(GroupValue::holds), hypothesis.holds);
        let conclusion = Conclusion {
            claim: "complex is Bott-Chern q-complete".to_string(),
            holds: conclusion_pred.holds,
            groups: conclusion_pred
                .witnesses
                .iter()
                .map(|&w| self.observe(Theory::BottChern, w))
                .collect(),
            maps: Vec::new(),
        };
        let mut v = TheoremVerdict::new(
            StatementId::Cor35,
            HypothesisMode::PaperLiteral,
            None,
            hypotheses,
            conclusion,
        );
        v.warnings
            .extend(self.literal_warnings(HypothesisMode::PaperLiteral));
        Ok(v)
    }

    /// Groups `h^{r,s}` of `theory` over the support hull with `r ≥ 0` and
    /// `s ≥ q` (for `∂̄`), or with roles swapped (for `∂`).
    fn q_complete_groups(&self, q: i64, theory: Theory) -> Vec<GroupValue> {
        let Some((lo, hi)) = self.complex().hull() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for r in lo.p.max(0)..=hi.p {
            for s in lo.q.max(0)..=hi.q {
                let graded = if theory == Theory::DolbeaultDel { r } else { s };
                if graded >= q {
                    out.push(self.vanish(theory, r, s));
                }
            }
        }
        out
    }

    pub fn q_complete(&self, q: i64) -> Result<QCompleteness> {
        let witnesses = self
            .q_complete_groups(q, Theory::DolbeaultDbar)
            .into_iter()
            .filter(|g| !g.holds())
            .map(|g| location_bidegree(&g.location))
            .collect::<Vec<_>>();
        Ok(QCompleteness {
            q,
            bott_chern: false,
            holds: witnesses.is_empty(),
            witnesses,
        })
    }

    pub fn bc_q_complete(&self, q: i64) -> Result<QCompleteness> {
        let n = self.resolve_n(None)?;
        if q < 1 || q > n as i64 {
            return Err(Error::BadQ { q, n });
        }
        let mut witnesses = Vec::new();
        if let Some((_, hi)) = self.complex().hull() {
            for r in 1..=hi.p {
                for s in 1..=hi.q {
                    let at = Bidegree::new(r, s);
                    if r + s >= n as i64 + q && self.h.dim(Theory::BottChern, at) != 0 {
                        witnesses.push(at);
                    }
                }
            }
        }
        Ok(QCompleteness {
            q,
            bott_chern: true,
            holds: witnesses.is_empty(),
            witnesses,
        })
    }

    /// Dispatches on a statement id. `p` and `q` are required where the
    /// statement is bidegree-local; `cor1.3` and `cor3.5` read `q` only.
    pub fn check(
        &self,
        id: StatementId,
        p: Option<i64>,
        q: Option<i64>,
        mode: HypothesisMode,
    ) -> Result<Vec<TheoremVerdict>> {
        let need = |v: Option<i64>, name: &str| {
            v.ok_or_else(|| Error::BadSpec(format!("statement {id} needs --{name}")))
        };
        Ok(match id {
            StatementId::Thm11A => vec![self.thm_1_1(need(p, "p")?, need(q, "q")?, true, mode)?],
            StatementId::Thm11B => vec![self.thm_1_1(need(p, "p")?, need(q, "q")?, false, mode)?],
            StatementId::Thm12 => vec![self.thm_1_2(need(p, "p")?, need(q, "q")?, mode)?],
            StatementId::Cor13 => self.cor_1_3(need(q, "q")?, None, mode)?,
            StatementId::Prop21 => vec![self.prop_2_1(need(p, "p")?, need(q, "q")?)?],
            StatementId::Prop22 => vec![self.prop_2_2(need(p, "p")?, need(q, "q")?)?],
            StatementId::Cor33 => vec![self.cor_3_3(need(p, "p")?, need(q, "q")?, mode)?],
            StatementId::Cor34 => vec![self.cor_3_4(need(p, "p")?, need(q, "q")?)?],
            StatementId::Cor35 => vec![self.cor_3_5(need(q, "q")?)?],
        })
    }
}

fn location_bidegree(l: &Location) -> Bidegree {
    match *l {
        Location::Bigraded { p, q, .. } => Bidegree::new(p, q),
        Location::DeRham { degree } => Bidegree::new(degree, 0),
    }
}

pub fn check_thm_1_1(
    c: &DoubleComplex,
    p: i64,
    q: i64,
    injective: bool,
    mode: HypothesisMode,
) -> Result<TheoremVerdict> {
    Checker::new(c)?.thm_1_1(p, q, injective, mode)
}

pub fn check_thm_1_2(
    c: &DoubleComplex,
    p: i64,
    q: i64,
    mode: HypothesisMode,
) -> Result<TheoremVerdict> {
    Checker::new(c)?.thm_1_2(p, q, mode)
}

pub fn check_cor_1_3(
    c: &DoubleComplex,
    q: i64,
    n: Option<usize>,
    mode: HypothesisMode,
) -> Result<Vec<TheoremVerdict>> {
    Checker::new(c)?.cor_1_3(q, n, mode)
}

pub fn check_prop_2_1(c: &DoubleComplex, p: i64, q: i64) -> Result<TheoremVerdict> {
    Checker::new(c)?.prop_2_1(p, q)
}

pub fn check_prop_2_2(c: &DoubleComplex, p: i64, q: i64) -> Result<TheoremVerdict> {
    Checker::new(c)?.prop_2_2(p, q)
}

pub fn check_cor_3_3(
    c: &DoubleComplex,
    p: i64,
    q: i64,
    mode: HypothesisMode,
) -> Result<TheoremVerdict> {
    Checker::new(c)?.cor_3_3(p, q, mode)
}

pub fn check_cor_3_4(c: &DoubleComplex, p: i64, q: i64) -> Result<TheoremVerdict> {
    Checker::new(c)?.cor_3_4(p, q)
}

pub fn check_cor_3_5(c: &DoubleComplex, q: i64) -> Result<TheoremVerdict> {
    Checker::new(c)?.cor_3_5(q)
}

pub fn is_cohomologically_q_complete(c: &DoubleComplex, q: i64) -> Result<QCompleteness> {
    Checker::new(c)?.q_complete(q)
}

pub fn is_cohomologically_bc_q_complete(c: &DoubleComplex, q: i64) -> Result<QCompleteness> {
    Checker::new(c)?.bc_q_complete(q)
}
