//! Line-oriented text format.
//!
//! ```text
//! bicomplex <name>
//! n <nat>
//! space <p> <q> <dim>
//! del <p> <q> <row> <col> <num>/<den>
//! delbar <p> <q> <row> <col> <num>/<den>
//! conj <p> <q> <row> <col> <num>/<den>
//! ```
//!
//! `#` starts a comment line. Entries may come in any order; [`to_text`]
//! always writes the canonical order (header, `n`, spaces, then `del`,
//! `delbar`, `conj` entries sorted by bidegree, row, column).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{Bidegree, DoubleComplex};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Matrix, Rational};

pub fn to_text(c: &DoubleComplex) -> String {
    let mut out = String::new();
    if c.name().is_empty() {
        out.push_str("bicomplex\n");
    } else {
        writeln!(out, "bicomplex {}", c.name()).unwrap();
    }
    if let Some(n) = c.n() {
        writeln!(out, "n {n}").unwrap();
    }
    for (at, dim) in c.dims() {
        writeln!(out, "space {} {} {dim}", at.p, at.q).unwrap();
    }
    let mut write_maps = |tag: &str, maps: &BTreeMap<Bidegree, Matrix>| {
        for (at, m) in maps {
            for (r, col, v) in m.entries() {
                writeln!(
                    out,
                    "{tag} {} {} {r} {col} {}",
                    at.p,
                    at.q,
                    format_rational(v)
                )
                .unwrap();
            }
        }
    };
    write_maps("del", c.stored_del());
    write_maps("delbar", c.stored_delbar());
    if let Some(conj) = c.stored_conj() {
        write_maps("conj", conj);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum MapTag {
    Del,
    Delbar,
    Conj,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn int<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found `{tok}`")))
}

pub fn parse_text(text: &str) -> Result<DoubleComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (first_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing `bicomplex <name>` header"))?;
    let name = match header.strip_prefix("bicomplex") {
        Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => rest.trim(),
        _ => return Err(parse_err(first_no, "expected `bicomplex <name>` header")),
    };
    let mut c = DoubleComplex::new(name);

    let mut entries: Vec<(usize, MapTag, Bidegree, usize, usize, Rational)> = Vec::new();
    let mut seen_spaces = BTreeSet::new();
    for (no, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "n" => {
                if toks.len() != 2 {
                    return Err(parse_err(no, "expected `n <nat>`"));
                }
                if c.n().is_some() {
                    return Err(parse_err(no, "duplicate `n` line"));
                }
                c.set_n(Some(int(toks[1], no, "a natural number")?));
            }
            "space" => {
                if toks.len() != 4 {
                    return Err(parse_err(no, "expected `space <p> <q> <dim>`"));
                }
                let at = Bidegree::new(int(toks[1], no, "p")?, int(toks[2], no, "q")?);
                if !seen_spaces.insert(at) {
                    return Err(parse_err(no, format!("duplicate space {at}")));
                }
                c.set_dim(at, int(toks[3], no, "a dimension")?);
            }
            tag @ ("del" | "delbar" | "conj") => {
                if toks.len() != 6 {
                    return Err(parse_err(
                        no,
                        format!("expected `{tag} <p> <q> <row> <col> <num>/<den>`"),
                    ));
                }
                let tag = match tag {
                    "del" => MapTag::Del,
                    "delbar" => MapTag::Delbar,
                    _ => MapTag::Conj,
                };
                let at = Bidegree::new(int(toks[1], no, "p")?, int(toks[2], no, "q")?);
                let row = int(toks[3], no, "a row index")?;
                let col = int(toks[4], no, "a column index")?;
                let value = parse_rational(toks[5])
                    .ok_or_else(|| parse_err(no, format!("bad rational `{}`", toks[5])))?;
                entries.push((no, tag, at, row, col, value));
            }
            other => return Err(parse_err(no, format!("unknown record `{other}`"))),
        }
    }

    let mut maps: BTreeMap<(MapTag, Bidegree), Matrix> = BTreeMap::new();
    let mut seen_entries = BTreeSet::new();
    for (no, tag, at, row, col, value) in entries {
        let target = match tag {
            MapTag::Del => at.del(),
            MapTag::Delbar => at.delbar(),
            MapTag::Conj => at.conjugate(),
        };
        let (rows, cols) = (c.dim(target), c.dim(at));
        if row >= rows || col >= cols {
            return Err(parse_err(
                no,
                format!("entry ({row},{col}) outside the {rows}x{cols} map out of {at}"),
            ));
        }
        if !seen_entries.insert((tag, at, row, col)) {
            return Err(parse_err(
                no,
                format!("duplicate entry ({row},{col}) at {at}"),
            ));
        }
        maps.entry((tag, at))
            .or_insert_with(|| Matrix::zeros(rows, cols))
            .set(row, col, value);
    }
    if maps.keys().any(|(tag, _)| *tag == MapTag::Conj) {
        c.enable_conj();
    }
    for ((tag, at), m) in maps {
        match tag {
            MapTag::Del => c.set_del(at, m),
            MapTag::Delbar => c.set_delbar(at, m),
            MapTag::Conj => c.set_conj(at, m),
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bicomplex::{build_dot, build_square};
    use crate::linalg::rational;

    #[test]
    fn dot_file() {
        let c = parse_text("bicomplex d\nspace 1 1 1\n").unwrap();
        assert_eq!(c.dims().len(), 1);
        assert_eq!(c.dim(Bidegree::new(1, 1)), 1);
        assert_eq!(
            to_text(&build_dot(1, 1)),
            "bicomplex dot(1,1)\nspace 1 1 1\n"
        );
    }

    #[test]
    fn empty_after_header() {
        let c = parse_text("# nothing here\nbicomplex\n").unwrap();
        assert!(c.is_empty());
        assert_eq!(c.name(), "");
    }

    #[test]
    fn canonicalizes_order_and_values() {
        let text = "bicomplex s\n\
                    del 0 1 0 0 -2/2\n\
                    space 1 1 1\nspace 0 0 1\nspace 1 0 1\nspace 0 1 1\n\
                    delbar 1 0 0 0 1\n\
                    delbar 0 0 0 0 1/1\n\
                    # comment\n\
                    del 0 0 0 0 3/3\n";
        let c = parse_text(text).unwrap();
        let mut expected = build_square(0, 0);
        expected.set_name("s");
        assert_eq!(c, expected);
        assert_eq!(
            to_text(&c),
            "bicomplex s\nspace 0 0 1\nspace 0 1 1\nspace 1 0 1\nspace 1 1 1\n\
             del 0 0 0 0 1/1\ndel 0 1 0 0 -1/1\ndelbar 0 0 0 0 1/1\ndelbar 1 0 0 0 1/1\n"
        );
    }

    #[test]
    fn rationals_and_conj() {
        let text = "bicomplex r\nn 2\nspace 1 1 2\nconj 1 1 0 1 6/4\nconj 1 1 1 0 2/3\n";
        let c = parse_text(text).unwrap();
        assert_eq!(c.n(), Some(2));
        assert_eq!(
            c.conj(Bidegree::new(1, 1)).unwrap().get(0, 1),
            rational(3, 2)
        );
        assert_eq!(parse_text(&to_text(&c)).unwrap(), c);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("complex x\n", 1),
            ("bicomplex x\nspace 0 0\n", 2),
            ("bicomplex x\nspace 0 0 1\nspace 0 0 1\n", 3),
            ("bicomplex x\nspace 0 0 1\n\ndel 0 0 0 0 1/1\n", 4),
            (
                "bicomplex x\nspace 0 0 1\nspace 1 0 1\ndel 0 0 0 0 1/0\n",
                4,
            ),
            (
                "bicomplex x\nspace 0 0 1\nspace 1 0 1\ndel 0 0 0 0 1\ndel 0 0 0 0 2\n",
                5,
            ),
            ("bicomplex x\nwat\n", 2),
        ];
        for (text, line) in cases {
            match parse_text(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }
}
