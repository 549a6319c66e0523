//! Line-oriented text formats for groups and witnesses.
//!
//! A group file:
//!
//! ```text
//! sectionkit-group 1
//! name D18
//! degree 9
//! gen (0 1 2 3 4 5 6 7 8)
//! gen (1 8)(2 7)(3 6)(4 5)
//! ```
//!
//! Statements may also be separated by `;` on one line, `#` starts a
//! comment, the header line is optional on input, and a generator may be
//! given as an image list `gen [1 2 0]`. The identity is `()`.
//!
//! A witness file:
//!
//! ```text
//! sectionkit-witness 1
//! side X
//! ambient-name D18
//! ambient-degree 9
//! ambient-order 18
//! target-degree 9
//! target-order 18
//! k-gen (0 1 2 3 4 5 6 7 8)
//! k-gen (1 8)(2 7)(3 6)(4 5)
//! iso (0 1 2 3 4 5 6 7 8) -> (0 1 2 3 4 5 6 7 8)
//! iso (1 8)(2 7)(3 6)(4 5) -> (1 8)(2 7)(3 6)(4 5)
//! trace-digest none
//! ```
//!
//! `n-gen` lines list generators of the normal subgroup; `iso` lines map
//! coset representatives in `K` to elements of `D`.

use std::fmt::Write as _;

use crate::construct::Side;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::witness::{verify_witness, Reason, Section, Verdict};

pub const GROUP_HEADER: &str = "sectionkit-group 1";
pub const WITNESS_HEADER: &str = "sectionkit-witness 1";
const MAX_DEGREE: usize = 1 << 20;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// One `;`-separated statement with its 1-based line and column.
struct Statement<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

fn statements(text: &str) -> Vec<Statement<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let body = raw.split('#').next().unwrap_or("");
        let mut offset = 0;
        for piece in body.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let trimmed = piece.trim();
            if !trimmed.is_empty() {
                out.push(Statement {
                    line: i + 1,
                    column: offset + lead + 1,
                    text: trimmed,
                });
            }
            offset += piece.len() + 1;
        }
    }
    out
}

/// Parses `(0 1 2)(3 4)`, `()` or `[1 2 0]` over `0..degree`; positions
/// in errors are relative to `line`/`column`.
fn parse_perm_at(text: &str, degree: usize, line: usize, column: usize) -> Result<Permutation> {
    let err = |off: usize, m: String| parse_err(line, column + off, m);
    let text_trim = text.trim_start();
    let base = text.len() - text_trim.len();
    if let Some(rest) = text_trim.strip_prefix('[') {
        let inner = rest
            .strip_suffix(']')
            .ok_or_else(|| err(base, "unterminated image list".into()))?;
        let images = inner
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| err(base, format!("bad point `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if images.len() != degree {
            return Err(err(
                base,
                format!("image list has {} entries, degree is {degree}", images.len()),
            ));
        }
        return Permutation::from_images(images)
            .map_err(|_| err(base, "image list is not a bijection".into()));
    }
    let bytes = text.as_bytes();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut used = vec![false; degree];
    let mut i = 0;
    let mut any = false;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                any = true;
                let start = i;
                i += 1;
                let mut cycle: Vec<usize> = Vec::new();
                loop {
                    while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t' || bytes[i] == b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(err(start, "unterminated cycle".into()));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let tok_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if tok_start == i {
                        return Err(err(tok_start, format!("unexpected `{}`", bytes[i] as char)));
                    }
                    let x: usize = text[tok_start..i]
                        .parse()
                        .map_err(|_| err(tok_start, "point out of range".into()))?;
                    if x >= degree {
                        return Err(err(tok_start, format!("point {x} outside 0..{degree}")));
                    }
                    if used[x] {
                        return Err(err(tok_start, format!("point {x} repeated")));
                    }
                    used[x] = true;
                    cycle.push(x);
                }
                for (k, &x) in cycle.iter().enumerate() {
                    images[x] = cycle[(k + 1) % cycle.len()] as u32;
                }
            }
            c => return Err(err(i, format!("unexpected `{}`", c as char))),
        }
    }
    if !any {
        return Err(err(0, "expected a permutation".into()));
    }
    Permutation::from_images(images).map_err(|_| err(0, "not a bijection".into()))
}

/// Parses a single permutation in cycle or image-list notation.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    parse_perm_at(text, degree, 1, 1)
}

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: Option<String>,
    pub group: PermGroup,
}

pub fn parse_group(text: &str) -> Result<NamedGroup> {
    let mut name = None;
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    let mut last = (1, 1);
    for (idx, st) in statements(text).into_iter().enumerate() {
        last = (st.line, st.column);
        let (word, rest) = st.text.split_once(char::is_whitespace).unwrap_or((st.text, ""));
        let rest_col = st.column + word.len() + (st.text.len() - word.len() - rest.len()).min(1);
        match word {
            "sectionkit-group" => {
                if idx != 0 {
                    return Err(parse_err(st.line, st.column, "header must come first"));
                }
                if rest.trim() != "1" {
                    return Err(parse_err(
                        st.line,
                        rest_col,
                        format!("unsupported version `{}`", rest.trim()),
                    ));
                }
            }
            "name" => name = Some(rest.trim().to_string()),
            "degree" => {
                if degree.is_some() {
                    return Err(parse_err(st.line, st.column, "degree given twice"));
                }
                let d: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(st.line, rest_col, "degree must be a positive integer"))?;
                if d == 0 {
                    return Err(parse_err(st.line, rest_col, "degree must be positive"));
                }
                if d > MAX_DEGREE {
                    return Err(parse_err(
                        st.line,
                        rest_col,
                        format!("degree {d} exceeds {MAX_DEGREE}"),
                    ));
                }
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| parse_err(st.line, st.column, "gen before degree"))?;
                gens.push(parse_perm_at(rest, d, st.line, rest_col)?);
            }
            other => {
                return Err(parse_err(
                    st.line,
                    st.column,
                    format!("unknown statement `{other}`"),
                ))
            }
        }
    }
    let degree = degree.ok_or_else(|| parse_err(last.0, last.1, "missing degree"))?;
    Ok(NamedGroup {
        name,
        group: PermGroup::new(degree, gens)?,
    })
}

pub fn render_group(g: &PermGroup, name: Option<&str>) -> String {
    let mut out = String::new();
    out.push_str(GROUP_HEADER);
    out.push('\n');
    if let Some(n) = name {
        writeln!(out, "name {n}").unwrap();
    }
    writeln!(out, "degree {}", g.degree()).unwrap();
    for x in g.generators() {
        writeln!(out, "gen {x}").unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessFile {
    pub side: Option<Side>,
    pub ambient_name: Option<String>,
    pub ambient_degree: usize,
    pub ambient_order: u64,
    pub target_degree: usize,
    pub target_order: u64,
    pub k_gens: Vec<Permutation>,
    pub n_gens: Vec<Permutation>,
    pub iso: Vec<(Permutation, Permutation)>,
    pub trace_digest: Option<String>,
}

impl WitnessFile {
    pub fn new(
        section: &Section,
        side: Option<Side>,
        ambient: &PermGroup,
        ambient_name: Option<&str>,
        target: &PermGroup,
        trace_digest: Option<String>,
    ) -> WitnessFile {
        WitnessFile {
            side,
            ambient_name: ambient_name.map(str::to_string),
            ambient_degree: ambient.degree(),
            ambient_order: ambient.order(),
            target_degree: target.degree(),
            target_order: target.order(),
            k_gens: section.k.generators().to_vec(),
            n_gens: section.n.generators().to_vec(),
            iso: section.iso.clone(),
            trace_digest,
        }
    }

    pub fn section(&self) -> Result<Section> {
        Ok(Section {
            k: PermGroup::new(self.ambient_degree, self.k_gens.clone())?,
            n: PermGroup::new(self.ambient_degree, self.n_gens.clone())?,
            iso: self.iso.clone(),
        })
    }

    /// Checks the recorded sizes against the supplied groups, then the
    /// section itself.
    pub fn verify(&self, ambient: &PermGroup, target: &PermGroup) -> Verdict {
        if ambient.degree() != self.ambient_degree
            || ambient.order() != self.ambient_order
            || target.degree() != self.target_degree
            || target.order() != self.target_order
        {
            return Verdict::Invalid(Reason::Degree);
        }
        match self.section() {
            Ok(s) => verify_witness(&s, ambient, target),
            Err(_) => Verdict::Invalid(Reason::Degree),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(WITNESS_HEADER);
        out.push('\n');
        let side = self.side.map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(out, "side {side}").unwrap();
        if let Some(n) = &self.ambient_name {
            writeln!(out, "ambient-name {n}").unwrap();
        }
        writeln!(out, "ambient-degree {}", self.ambient_degree).unwrap();
        writeln!(out, "ambient-order {}", self.ambient_order).unwrap();
        writeln!(out, "target-degree {}", self.target_degree).unwrap();
        writeln!(out, "target-order {}", self.target_order).unwrap();
        for g in &self.k_gens {
            writeln!(out, "k-gen {g}").unwrap();
        }
        for g in &self.n_gens {
            writeln!(out, "n-gen {g}").unwrap();
        }
        for (k, d) in &self.iso {
            writeln!(out, "iso {k} -> {d}").unwrap();
        }
        writeln!(
            out,
            "trace-digest {}",
            self.trace_digest.as_deref().unwrap_or("none")
        )
        .unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<WitnessFile> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')));
        match lines.next() {
            Some((_, l)) if l.trim() == WITNESS_HEADER => {}
            Some((n, _)) => return Err(parse_err(n, 1, "expected witness header")),
            None => return Err(parse_err(1, 1, "empty witness file")),
        }
        let mut w = WitnessFile {
            side: None,
            ambient_name: None,
            ambient_degree: 0,
            ambient_order: 0,
            target_degree: 0,
            target_order: 0,
            k_gens: Vec::new(),
            n_gens: Vec::new(),
            iso: Vec::new(),
            trace_digest: None,
        };
        let mut seen_side = false;
        for (n, line) in lines {
            let body = line.split('#').next().unwrap_or("").trim_end();
            if body.trim().is_empty() {
                continue;
            }
            let lead = body.len() - body.trim_start().len();
            let body = body.trim_start();
            let (word, rest) = body.split_once(' ').unwrap_or((body, ""));
            let col = lead + word.len() + 2;
            let number = |s: &str| -> Result<u64> {
                s.trim()
                    .parse()
                    .map_err(|_| parse_err(n, col, format!("`{word}` needs an integer")))
            };
            let need_degree = |d: usize| -> Result<usize> {
                if d == 0 {
                    Err(parse_err(
                        n,
                        1,
                        "ambient-degree and target-degree must precede permutations",
                    ))
                } else {
                    Ok(d)
                }
            };
            match word {
                "side" => {
                    w.side = match rest.trim() {
                        "X" => Some(Side::X),
                        "Y" => Some(Side::Y),
                        "none" => None,
                        other => return Err(parse_err(n, col, format!("bad side `{other}`"))),
                    };
                    seen_side = true;
                }
                "ambient-name" => w.ambient_name = Some(rest.trim().to_string()),
                "ambient-degree" => w.ambient_degree = number(rest)? as usize,
                "ambient-order" => w.ambient_order = number(rest)?,
                "target-degree" => w.target_degree = number(rest)? as usize,
                "target-order" => w.target_order = number(rest)?,
                "k-gen" => w
                    .k_gens
                    .push(parse_perm_at(rest, need_degree(w.ambient_degree)?, n, col)?),
                "n-gen" => w
                    .n_gens
                    .push(parse_perm_at(rest, need_degree(w.ambient_degree)?, n, col)?),
                "iso" => {
                    let (a, b) = rest
                        .split_once("->")
                        .ok_or_else(|| parse_err(n, col, "expected `rep -> image`"))?;
                    let k = parse_perm_at(a, need_degree(w.ambient_degree)?, n, col)?;
                    let d = parse_perm_at(b, need_degree(w.target_degree)?, n, col + a.len() + 2)?;
                    w.iso.push((k, d));
                }
                "trace-digest" => {
                    w.trace_digest = match rest.trim() {
                        "none" => None,
                        h if h.len() == 64 && h.bytes().all(|c| c.is_ascii_hexdigit()) => Some(h.to_string()),
                        other => return Err(parse_err(n, col, format!("bad digest `{other}`"))),
                    }
                }
                other => return Err(parse_err(n, lead + 1, format!("unknown field `{other}`"))),
            }
        }
        if !seen_side || w.ambient_degree == 0 || w.target_degree == 0 {
            return Err(parse_err(
                text.lines().count().max(1),
                1,
                "missing side or degrees",
            ));
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::dihedral;

    #[test]
    fn inline_group_example() {
        let g = parse_group("degree 9; gen (0 1 2 3 4 5 6 7 8); gen (1 8)(2 7)(3 6)(4 5)").unwrap();
        assert_eq!(g.group.order(), 18);
        assert!(!g.group.is_abelian());
    }

    #[test]
    fn degree_only_is_trivial() {
        let g = parse_group("degree 1").unwrap();
        assert_eq!(g.group.order(), 1);
    }

    #[test]
    fn repeated_point_reports_position() {
        let e = parse_group("degree 3; gen (0 1)(1 2)").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 1,
                column: 21,
                message: "point 1 repeated".into()
            }
        );
        assert!(matches!(
            parse_group("sectionkit-group 1\ndegree 3\ngen [0 0 1]").unwrap_err(),
            Error::Parse { line: 3, .. }
        ));
        assert!(parse_group("gen (0 1)").is_err());
        assert!(parse_group("degree 2\ngen (0 2)").is_err());
        assert!(parse_group("degree 2\nbogus").is_err());
    }

    #[test]
    fn render_round_trip() {
        let g = dihedral(5);
        let text = render_group(&g, Some("D10"));
        let back = parse_group(&text).unwrap();
        assert_eq!(back.name.as_deref(), Some("D10"));
        assert!(back.group.same_as(&g));
        let id = PermGroup::new(3, vec![Permutation::identity(3)]).unwrap();
        let back = parse_group(&render_group(&id, None)).unwrap();
        assert_eq!(back.group.generators(), id.generators());
    }

    #[test]
    fn witness_round_trip() {
        let g = dihedral(9);
        let s = Section {
            k: g.clone(),
            n: PermGroup::trivial(9),
            iso: g.generators().iter().map(|x| (x.clone(), x.clone())).collect(),
        };
        let w = WitnessFile::new(&s, Some(Side::Y), &g, Some("D18"), &g, Some("ab".repeat(32)));
        let text = w.render();
        let back = WitnessFile::parse(&text).unwrap();
        assert_eq!(back, w);
        assert!(back.verify(&g, &g).is_valid());
        assert!(WitnessFile::parse("sectionkit-witness 1\nside Z\n").is_err());
    }
}
