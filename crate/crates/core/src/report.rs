//! Text and JSON reports. Both renderings carry the same numbers, contain
//! no timestamps, and are stamped with a digest of the canonical input.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::bicomplex::{to_text, Bidegree, DoubleComplex, ValidationReport};
use crate::checkers::{GroupValue, QCompleteness, TheoremVerdict};
use crate::cohomology::{DdbarLemma, Location, NaturalMapReport, Table};
use crate::error::Error;
use crate::linalg::{format_rational, Matrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::BadSpec(format!("unknown report format `{other}`"))),
        }
    }
}

/// Hex SHA-256 of the canonical text serialization.
pub fn digest(c: &DoubleComplex) -> String {
    hex::encode(Sha256::digest(to_text(c).as_bytes()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Section {
    Validation(ValidationReport),
    Table(Table),
    Maps(Vec<NaturalMapReport>),
    DdbarLemma(DdbarLemma),
    Verdicts(Vec<TheoremVerdict>),
    QComplete(Vec<QCompleteness>),
}

impl Section {
    /// The JSON object this section contributes to a report.
    pub fn to_json(&self) -> Value {
        section_json(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub complex: String,
    pub digest: String,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn new(command: impl Into<String>, c: &DoubleComplex) -> Self {
        Report {
            command: command.into(),
            complex: c.name().to_string(),
            digest: digest(c),
            sections: Vec::new(),
        }
    }

    pub fn with(mut self, section: Section) -> Self {
        self.sections.push(section);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("plain JSON values");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "complex": self.complex,
            "digest": self.digest,
            "sections": self.sections.iter().map(section_json).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "complex: {}", self.complex).unwrap();
        writeln!(out, "digest: {}", self.digest).unwrap();
        for s in &self.sections {
            out.push('\n');
            section_text(&mut out, s);
        }
        out
    }
}

fn bidegree_json(b: Bidegree) -> Value {
    json!({ "p": b.p, "q": b.q })
}

fn location_json(l: &Location) -> Value {
    serde_json::to_value(l).expect("plain enum")
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| format_rational(&m.get(r, c)))
                .collect()
        })
        .collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

fn map_json(m: &NaturalMapReport) -> Value {
    json!({
        "source": location_json(&m.source),
        "target": location_json(&m.target),
        "source_dim": m.source_dim,
        "target_dim": m.target_dim,
        "rank": m.rank,
        "injective": m.injective,
        "surjective": m.surjective,
        "matrix": matrix_json(&m.matrix),
    })
}

fn group_json(g: &GroupValue) -> Value {
    json!({ "location": location_json(&g.location), "required": g.required, "actual": g.actual })
}

fn verdict_json(v: &TheoremVerdict) -> Value {
    json!({
        "statement": v.statement.as_str(),
        "mode": v.mode.as_str(),
        "at": v.at.map(bidegree_json),
        "hypotheses": v.hypotheses.iter().map(group_json).collect::<Vec<_>>(),
        "hypotheses_met": v.hypotheses_met,
        "conclusion": {
            "claim": v.conclusion.claim,
            "holds": v.conclusion.holds,
            "groups": v.conclusion.groups.iter().map(group_json).collect::<Vec<_>>(),
            "maps": v.conclusion.maps.iter().map(map_json).collect::<Vec<_>>(),
        },
        "verdict": v.verdict.as_str(),
        "warnings": v.warnings,
    })
}

fn section_json(s: &Section) -> Value {
    match s {
        Section::Validation(r) => json!({
            "kind": "validation",
            "valid": r.is_valid(),
            "violations": r.violations.iter().map(|v| json!({
                "kind": v.kind,
                "at": bidegree_json(v.at),
                "description": v.kind.describe(),
            })).collect::<Vec<_>>(),
        }),
        Section::Table(t) => json!({
            "kind": "table",
            "rows": t.rows,
            "degrees": t.degrees.iter().map(|d| json!({
                "degree": d.degree,
                "betti": d.betti,
                "dolbeault_sum": d.dolbeault_sum,
                "margin": d.margin(),
            })).collect::<Vec<_>>(),
        }),
        Section::Maps(ms) => json!({
            "kind": "maps",
            "maps": ms.iter().map(map_json).collect::<Vec<_>>(),
        }),
        Section::DdbarLemma(l) => json!({
            "kind": "ddbar_lemma",
            "holds": l.holds,
            "witness": l.witness.map(bidegree_json),
        }),
        Section::Verdicts(vs) => json!({
            "kind": "verdicts",
            "verdicts": vs.iter().map(verdict_json).collect::<Vec<_>>(),
        }),
        Section::QComplete(qs) => json!({
            "kind": "q_complete",
            "results": qs.iter().map(|r| json!({
                "q": r.q,
                "bott_chern": r.bott_chern,
                "holds": r.holds,
                "witnesses": r.witnesses.iter().copied().map(bidegree_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn matrix_text(out: &mut String, m: &Matrix, indent: &str) {
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| format_rational(&m.get(r, c)))
            .collect();
        writeln!(out, "{indent}[{}]", row.join(" ")).unwrap();
    }
}

fn map_text(out: &mut String, m: &NaturalMapReport, indent: &str) {
    writeln!(
        out,
        "{indent}map {} -> {}: dims {} -> {}, rank {}, injective {}, surjective {}, matrix {}x{}",
        m.source,
        m.target,
        m.source_dim,
        m.target_dim,
        m.rank,
        m.injective,
        m.surjective,
        m.matrix.rows(),
        m.matrix.cols()
    )
    .unwrap();
    matrix_text(out, &m.matrix, &format!("{indent}  "));
}

fn group_text(out: &mut String, g: &GroupValue, indent: &str) {
    let mark = if g.holds() { "ok" } else { "FAILS" };
    writeln!(
        out,
        "{indent}{}: required {}, actual {} {mark}",
        g.location, g.required, g.actual
    )
    .unwrap();
}

fn section_text(out: &mut String, s: &Section) {
    match s {
        Section::Validation(r) => {
            writeln!(out, "== validation ==").unwrap();
            writeln!(out, "valid: {}", r.is_valid()).unwrap();
            for v in &r.violations {
                writeln!(
                    out,
                    "violation {} at {}: {}",
                    serde_name(&v.kind),
                    v.at,
                    v.kind.describe()
                )
                .unwrap();
            }
        }
        Section::Table(t) => {
            writeln!(out, "== table ==").unwrap();
            writeln!(out, "p q dbar del BC A").unwrap();
            for r in &t.rows {
                writeln!(
                    out,
                    "{} {} {} {} {} {}",
                    r.p, r.q, r.dbar, r.del, r.bott_chern, r.aeppli
                )
                .unwrap();
            }
            writeln!(out, "== degrees ==").unwrap();
            writeln!(out, "k betti dbar_sum margin").unwrap();
            for d in &t.degrees {
                writeln!(
                    out,
                    "{} {} {} {}",
                    d.degree,
                    d.betti,
                    d.dolbeault_sum,
                    d.margin()
                )
                .unwrap();
            }
        }
        Section::Maps(ms) => {
            writeln!(out, "== maps ==").unwrap();
            for m in ms {
                map_text(out, m, "");
            }
        }
        Section::DdbarLemma(l) => {
            writeln!(out, "== ddbar lemma ==").unwrap();
            writeln!(out, "holds: {}", l.holds).unwrap();
            if let Some(w) = l.witness {
                writeln!(out, "witness: {w}").unwrap();
            }
        }
        Section::Verdicts(vs) => {
            for v in vs {
                writeln!(out, "== verdict ==").unwrap();
                writeln!(out, "statement: {}", v.statement).unwrap();
                writeln!(out, "mode: {}", v.mode.as_str()).unwrap();
                if let Some(at) = v.at {
                    writeln!(out, "at: {at}").unwrap();
                }
                writeln!(out, "hypotheses met: {}", v.hypotheses_met).unwrap();
                for h in &v.hypotheses {
                    group_text(out, h, "  ");
                }
                writeln!(
                    out,
                    "conclusion: {}: {}",
                    v.conclusion.claim, v.conclusion.holds
                )
                .unwrap();
                for g in &v.conclusion.groups {
                    group_text(out, g, "  ");
                }
                for m in &v.conclusion.maps {
                    map_text(out, m, "  ");
                }
                for w in &v.warnings {
                    writeln!(out, "warning: {w}").unwrap();
                }
                writeln!(out, "verdict: {}", v.verdict).unwrap();
            }
        }
        Section::QComplete(qs) => {
            writeln!(out, "== q-completeness ==").unwrap();
            for r in qs {
                let kind = if r.bott_chern { "BC" } else { "dbar" };
                let ws: Vec<String> = r.witnesses.iter().map(|w| w.to_string()).collect();
                writeln!(
                    out,
                    "{kind} q={}: {} witnesses [{}]",
                    r.q,
                    r.holds,
                    ws.join(" ")
                )
                .unwrap();
            }
        }
    }
}

fn serde_name<T: serde::Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}
