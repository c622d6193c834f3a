//! Plain-text file formats for operators, voltage graphs, and fragmentation
//! requests, plus the corresponding renderers.
//!
//! Files are line-oriented UTF-8; `#` starts a comment.  Every line is a
//! keyword followed by arguments:
//!
//! ```text
//! kind operator            # operator (default) | voltage_graph | fragmentation
//! p 2                      # characteristic, required
//! degree 2                 # field degree over GF(p), default 1
//! modulus [1,1,1]          # optional; must match the canonical modulus
//! rank 1                   # lattice rank s
//! size 2                   # operator: matrix size n
//! entry 0 1 d(0) + g^1*d(-1)
//! ```
//!
//! Voltage graphs replace `size`/`entry` with `vertices` and
//! `edge tail head (l1,…,ls) weight`; fragmentation files carry a scalar
//! kernel (`op <terms>`) and the fragmentation sublattice (`sub <spec>`).
//! Terms are `coeff*d(v1,…,vs)` with the coefficient literal optional;
//! coefficients use the field element syntax of the CLI (integers, `g^k`,
//! or `[c0,c1,…]` vectors).

use std::collections::BTreeSet;

use crate::algebra::GroupAlgebraElement;
use crate::error::{Error, Result};
use crate::field::{parse_element, Field, FieldElement};
use crate::fragment::{EdgeRecord, VoltageGraph};
use crate::lattice::Sublattice;
use crate::matrix::MatrixOperator;

/// A fragmentation request: a scalar kernel on the ambient lattice and the
/// finite-index sublattice to fragment along.
#[derive(Debug, Clone)]
pub struct FragmentationSpec {
    pub sub: Sublattice,
    pub scalar: GroupAlgebraElement,
}

/// The three kinds of object an input file can describe.
#[derive(Debug, Clone)]
pub enum ParsedFile {
    Operator(MatrixOperator),
    Voltage(VoltageGraph),
    Fragmentation(FragmentationSpec),
}

fn err_at(file: &str, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        file: file.to_string(),
        line,
        col: 1,
        msg: msg.into(),
    }
}

/// First n whitespace-separated tokens of a line, plus the trimmed rest.
fn split_head(line: &str, n: usize) -> Option<(Vec<&str>, &str)> {
    let mut rest = line;
    let mut tokens = Vec::with_capacity(n);
    for _ in 0..n {
        rest = rest.trim_start();
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        tokens.push(&rest[..end]);
        rest = &rest[end..];
    }
    Some((tokens, rest.trim()))
}

/// Parses a `+`-separated list of `coeff*d(v1,…,vs)` terms.  Duplicate
/// lattice points are rejected; omitted coefficients default to 1.
fn parse_terms(
    field: &Field,
    rank: usize,
    text: &str,
    file: &str,
    line: usize,
) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(field, rank);
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(err_at(file, line, "empty term"));
        }
        let (coeff_text, delta_text) = match term.split_once('*') {
            Some((c, d)) => (Some(c.trim()), d.trim()),
            None => (None, term),
        };
        let inner = delta_text
            .strip_prefix("d(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| err_at(file, line, format!("expected d(…) in term {term:?}")))?;
        let lambda: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err_at(file, line, format!("bad lattice point in {term:?}")))?
        };
        if lambda.len() != rank {
            return Err(err_at(
                file,
                line,
                format!("lattice point arity {} does not match rank {rank}", lambda.len()),
            ));
        }
        let coeff = match coeff_text {
            Some(c) => parse_element(field, c).map_err(|e| match e {
                Error::Parse { msg, .. } => err_at(file, line, msg),
                other => other,
            })?,
            None => field.one(),
        };
        if !seen.insert(lambda.clone()) {
            return Err(err_at(file, line, format!("duplicate lattice point in {term:?}")));
        }
        out.add_term(lambda, coeff);
    }
    Ok(out)
}

/// Parses a sublattice specification: rows of generators separated by `;`,
/// entries by `,`.  A single row of the right length is taken as the
/// diagonal, so `3` means 3Z and `4,6` means 4Z × 6Z.
pub fn parse_sublattice(text: &str, rank: usize) -> Result<Sublattice> {
    let bad = |msg: String| Error::Parse {
        file: String::new(),
        line: 0,
        col: 1,
        msg,
    };
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| bad(format!("bad sublattice spec {text:?}")))?;
    if rows.len() == 1 && rows[0].len() == rank {
        let diag: Vec<u64> = rows[0]
            .iter()
            .map(|&d| u64::try_from(d).map_err(|_| bad(format!("nonpositive period in {text:?}"))))
            .collect::<Result<_>>()?;
        return Sublattice::diagonal(&diag);
    }
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(bad(format!(
            "sublattice spec {text:?} is not {rank} generators of length {rank}"
        )));
    }
    // Rows are generators; the basis matrix wants them as columns.
    let basis: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| rows[j][i]).collect())
        .collect();
    Sublattice::new(basis)
}

struct RawFile<'a> {
    kind: &'a str,
    p: Option<u64>,
    degree: u32,
    modulus: Option<(usize, &'a str)>,
    rank: Option<usize>,
    size: Option<usize>,
    vertices: Option<usize>,
    entries: Vec<(usize, usize, usize, &'a str)>,
    edges: Vec<(usize, &'a str)>,
    sub: Option<(usize, &'a str)>,
    op: Option<(usize, &'a str)>,
}

/// Parses one input file into an operator, a voltage graph, or a
/// fragmentation request.  `file` names the source in error messages.
pub fn parse_operator_file(text: &str, file: &str) -> Result<ParsedFile> {
    let mut raw = RawFile {
        kind: "operator",
        p: None,
        degree: 1,
        modulus: None,
        rank: None,
        size: None,
        vertices: None,
        entries: Vec::new(),
        edges: Vec::new(),
        sub: None,
        op: None,
    };
    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = full_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (kw, rest) = split_head(line, 1)
            .map(|(t, r)| (t[0], r))
            .expect("nonempty line has a first token");
        let int = |tok: &str, what: &str| -> Result<usize> {
            tok.parse::<usize>()
                .map_err(|_| err_at(file, line_no, format!("bad {what} {tok:?}")))
        };
        match kw {
            "kind" => match rest {
                "operator" | "voltage_graph" | "fragmentation" => raw.kind = rest,
                other => {
                    return Err(err_at(file, line_no, format!("unknown kind {other:?}")));
                }
            },
            "p" => {
                raw.p = Some(
                    rest.parse::<u64>()
                        .map_err(|_| err_at(file, line_no, format!("bad characteristic {rest:?}")))?,
                );
            }
            "degree" => {
                raw.degree = rest
                    .parse::<u32>()
                    .map_err(|_| err_at(file, line_no, format!("bad degree {rest:?}")))?;
            }
            "modulus" => raw.modulus = Some((line_no, rest)),
            "rank" => raw.rank = Some(int(rest, "rank")?),
            "size" => raw.size = Some(int(rest, "size")?),
            "vertices" => raw.vertices = Some(int(rest, "vertex count")?),
            "entry" => {
                let (toks, terms) = split_head(rest, 2)
                    .ok_or_else(|| err_at(file, line_no, "entry needs row, column, and terms"))?;
                raw.entries
                    .push((int(toks[0], "row")?, int(toks[1], "column")?, line_no, terms));
            }
            "edge" => raw.edges.push((line_no, rest)),
            "sub" => raw.sub = Some((line_no, rest)),
            "op" => raw.op = Some((line_no, rest)),
            other => {
                return Err(err_at(file, line_no, format!("unknown keyword {other:?}")));
            }
        }
    }
    let p = raw
        .p
        .ok_or_else(|| err_at(file, 1, "missing characteristic (p)"))?;
    let field = Field::new(p, raw.degree)?;
    if let Some((line_no, text)) = raw.modulus {
        let canonical = format!(
            "[{}]",
            field
                .modulus()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        );
        if text.replace(' ', "") != canonical {
            return Err(err_at(
                file,
                line_no,
                format!("modulus {text:?} is not the canonical {canonical}"),
            ));
        }
    }
    let rank = raw
        .rank
        .ok_or_else(|| err_at(file, 1, "missing lattice rank"))?;
    match raw.kind {
        "operator" => {
            let n = raw
                .size
                .ok_or_else(|| err_at(file, 1, "missing operator size"))?;
            if n == 0 {
                return Err(err_at(file, 1, "operator size must be positive"));
            }
            let mut grid = vec![vec![GroupAlgebraElement::zero(&field, rank); n]; n];
            let mut seen = BTreeSet::new();
            for (i, j, line_no, terms) in &raw.entries {
                if *i >= n || *j >= n {
                    return Err(err_at(
                        file,
                        *line_no,
                        format!("entry ({i},{j}) outside a {n}×{n} operator"),
                    ));
                }
                if !seen.insert((*i, *j)) {
                    return Err(err_at(file, *line_no, format!("duplicate entry ({i},{j})")));
                }
                grid[*i][*j] = parse_terms(&field, rank, terms, file, *line_no)?;
            }
            Ok(ParsedFile::Operator(MatrixOperator::new(grid)?))
        }
        "voltage_graph" => {
            let vertices = raw
                .vertices
                .ok_or_else(|| err_at(file, 1, "missing vertex count"))?;
            let mut arcs = Vec::new();
            for (line_no, rest) in &raw.edges {
                let (toks, tail_rest) = split_head(rest, 2)
                    .ok_or_else(|| err_at(file, *line_no, "edge needs tail, head, label, weight"))?;
                let tail = toks[0]
                    .parse::<usize>()
                    .map_err(|_| err_at(file, *line_no, format!("bad tail {:?}", toks[0])))?;
                let head = toks[1]
                    .parse::<usize>()
                    .map_err(|_| err_at(file, *line_no, format!("bad head {:?}", toks[1])))?;
                let close = tail_rest
                    .strip_prefix('(')
                    .and_then(|r| r.find(')').map(|k| (r, k)))
                    .ok_or_else(|| err_at(file, *line_no, "edge label must be (l1,…,ls)"))?;
                let (inner, k) = close;
                let label: Vec<i64> = if inner[..k].trim().is_empty() {
                    Vec::new()
                } else {
                    inner[..k]
                        .split(',')
                        .map(|x| x.trim().parse::<i64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| err_at(file, *line_no, "bad edge label"))?
                };
                let weight_text = inner[k + 1..].trim();
                let weight = if weight_text.is_empty() {
                    field.one()
                } else {
                    parse_element(&field, weight_text).map_err(|e| match e {
                        Error::Parse { msg, .. } => err_at(file, *line_no, msg),
                        other => other,
                    })?
                };
                arcs.push(EdgeRecord {
                    tail,
                    head,
                    label,
                    weight,
                });
            }
            Ok(ParsedFile::Voltage(VoltageGraph::new(
                vertices, rank, &field, arcs,
            )?))
        }
        "fragmentation" => {
            let (sub_line, sub_text) = raw
                .sub
                .ok_or_else(|| err_at(file, 1, "missing fragmentation sublattice (sub)"))?;
            let sub = parse_sublattice(sub_text, rank).map_err(|e| match e {
                Error::Parse { msg, .. } => err_at(file, sub_line, msg),
                other => other,
            })?;
            let (op_line, op_text) = raw
                .op
                .ok_or_else(|| err_at(file, 1, "missing scalar kernel (op)"))?;
            let scalar = parse_terms(&field, rank, op_text, file, op_line)?;
            Ok(ParsedFile::Fragmentation(FragmentationSpec { sub, scalar }))
        }
        _ => unreachable!("kind is validated at parse time"),
    }
}

/// Canonical literal for a field element: a plain integer in prime fields,
/// a `[c0,c1,…]` coefficient vector in extensions.
pub fn render_element(x: &FieldElement) -> String {
    if x.field().degree() == 1 {
        x.coeffs()[0].to_string()
    } else {
        format!(
            "[{}]",
            x.coeffs()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// Canonical text for a group-algebra element, or None if it is zero.
pub fn render_terms(a: &GroupAlgebraElement) -> Option<String> {
    if a.is_zero() {
        return None;
    }
    let terms: Vec<String> = a
        .support()
        .map(|(v, c)| {
            let point = v
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            if c.is_one() {
                format!("d({point})")
            } else {
                format!("{}*d({point})", render_element(c))
            }
        })
        .collect();
    Some(terms.join(" + "))
}

/// Renders an operator in the input file format; parsing the result yields
/// the same operator.
pub fn render_operator_file(a: &MatrixOperator) -> String {
    let field = a.field();
    let mut out = String::new();
    out.push_str("kind operator\n");
    out.push_str(&format!("p {}\n", field.characteristic()));
    if field.degree() > 1 {
        out.push_str(&format!("degree {}\n", field.degree()));
        out.push_str(&format!(
            "modulus [{}]\n",
            field
                .modulus()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    out.push_str(&format!("rank {}\n", a.rank()));
    out.push_str(&format!("size {}\n", a.size()));
    for i in 0..a.size() {
        for j in 0..a.size() {
            if let Some(terms) = render_terms(a.entry(i, j)) {
                out.push_str(&format!("entry {i} {j} {terms}\n"));
            }
        }
    }
    out
}

/// Renders a voltage graph in the input file format.
pub fn render_voltage_file(vg: &VoltageGraph) -> String {
    let field = vg.field();
    let mut out = String::new();
    out.push_str("kind voltage_graph\n");
    out.push_str(&format!("p {}\n", field.characteristic()));
    if field.degree() > 1 {
        out.push_str(&format!("degree {}\n", field.degree()));
    }
    out.push_str(&format!("rank {}\n", vg.rank()));
    out.push_str(&format!("vertices {}\n", vg.vertices()));
    for arc in vg.arcs() {
        let label = arc
            .label
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&format!(
            "edge {} {} ({label}) {}\n",
            arc.tail,
            arc.head,
            render_element(&arc.weight)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fragment::voltage_operator;

    #[test]
    fn parses_the_symmetric_walk_file() {
        let text = "\
# three-point symmetric walk
p 2
rank 1
size 1
entry 0 0 d(-1) + d(0) + d(1)
";
        let ParsedFile::Operator(op) = parse_operator_file(text, "walk.op").unwrap() else {
            panic!("expected an operator");
        };
        assert_eq!(op.size(), 1);
        assert_eq!(op.entry(0, 0).support_len(), 3);
        assert_eq!(op.field().characteristic(), 2);
    }

    #[test]
    fn empty_entries_give_the_zero_operator() {
        let text = "p 3\nrank 2\nsize 2\n";
        let ParsedFile::Operator(op) = parse_operator_file(text, "zero.op").unwrap() else {
            panic!("expected an operator");
        };
        assert!(op.entry(0, 0).is_zero() && op.entry(1, 1).is_zero());
        assert_eq!(op.rank(), 2);
    }

    #[test]
    fn extension_coefficients_and_modulus_validation() {
        let good = "p 2\ndegree 2\nmodulus [1,1,1]\nrank 1\nsize 1\nentry 0 0 g^1*d(0) + [1,1]*d(1)\n";
        let ParsedFile::Operator(op) = parse_operator_file(good, "ext.op").unwrap() else {
            panic!("expected an operator");
        };
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(op.entry(0, 0).coeff(&[0]), f4.generator());
        let bad = "p 2\ndegree 2\nmodulus [1,0,1]\nrank 1\nsize 1\n";
        assert!(matches!(
            parse_operator_file(bad, "bad.op"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn malformed_input_is_reported_with_the_line() {
        let cases = [
            ("p 2\nrank 1\nsize 1\nentry 0 0 d(1) + d(1)\n", 4),
            ("p 2\nrank 1\nsize 1\nentry 0 0 d(1,2)\n", 4),
            ("p 2\nrank 1\nsize 1\nentry 0 2 d(0)\n", 4),
            ("p 2\nrank 1\nsize 1\nentry 0 0 x(0)\n", 4),
            ("p 2\nrank 1\nsize 1\nentry 0 0 d(0)\nentry 0 0 d(1)\n", 5),
            ("p 2\nrank 1\nwibble 3\n", 3),
        ];
        for (text, want_line) in cases {
            match parse_operator_file(text, "case.op") {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want_line, "input: {text:?}"),
                other => panic!("expected a parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn voltage_files_parse_and_build_operators() {
        let text = "\
kind voltage_graph
p 2
rank 1
vertices 1
edge 0 0 (1) 1
edge 0 0 (-1) 1
edge 0 0 (0) 1
";
        let ParsedFile::Voltage(vg) = parse_operator_file(text, "loop.vg").unwrap() else {
            panic!("expected a voltage graph");
        };
        assert_eq!(vg.vertices(), 1);
        let op = voltage_operator(&vg, false).unwrap();
        assert_eq!(op.entry(0, 0).support_len(), 3);
    }

    #[test]
    fn fragmentation_files_carry_kernel_and_sublattice() {
        let text = "kind fragmentation\np 5\nrank 1\nsub 3\nop d(1)\n";
        let ParsedFile::Fragmentation(spec) = parse_operator_file(text, "frag.op").unwrap() else {
            panic!("expected a fragmentation request");
        };
        assert_eq!(spec.sub.index(), 3);
        assert_eq!(spec.scalar.support_len(), 1);
    }

    #[test]
    fn sublattice_specs_cover_diagonal_and_general_forms() {
        assert_eq!(parse_sublattice("3", 1).unwrap().index(), 3);
        assert_eq!(parse_sublattice("4,6", 2).unwrap().index(), 24);
        let general = parse_sublattice("2,0;1,3", 2).unwrap();
        assert_eq!(general.index(), 6);
        assert!(general.contains(&[2, 0]) && general.contains(&[1, 3]));
        assert!(parse_sublattice("2,0", 1).is_err());
        assert!(parse_sublattice("x", 1).is_err());
    }

    #[test]
    fn rendering_round_trips_operators_and_graphs() {
        let f9 = Field::new(3, 2).unwrap();
        let g = f9.generator();
        let a = GroupAlgebraElement::from_terms(
            &f9,
            2,
            vec![
                (vec![1, 0], g.clone()),
                (vec![0, -2], f9.one()),
                (vec![-1, 1], g.pow(3).unwrap()),
            ],
        )
        .unwrap();
        let zero = GroupAlgebraElement::zero(&f9, 2);
        let op = MatrixOperator::new(vec![
            vec![a.clone(), zero.clone()],
            vec![zero.clone(), a.clone()],
        ])
        .unwrap();
        let text = render_operator_file(&op);
        let ParsedFile::Operator(back) = parse_operator_file(&text, "rt.op").unwrap() else {
            panic!("expected an operator");
        };
        assert!(back == op);

        let vg = crate::fragment::max_abelian_cover(2, &[(0, 1), (0, 1)], &f9).unwrap();
        let text = render_voltage_file(&vg);
        let ParsedFile::Voltage(back) = parse_operator_file(&text, "rt.vg").unwrap() else {
            panic!("expected a voltage graph");
        };
        assert_eq!(back.arcs().len(), vg.arcs().len());
        assert!(voltage_operator(&back, false).unwrap() == voltage_operator(&vg, false).unwrap());
    }
}
