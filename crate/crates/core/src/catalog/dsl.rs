//! Line-oriented parser for the catalog text format (see `data/catalog.txt`).

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::expr::{parse_expr, RatFunc};
use super::{AutomorphismFamily, CatalogEntry, Constraint, FamilyRef, Kind, Op, ParamSpec, ProductRow};

pub(super) struct Parsed {
    pub entries: Vec<(usize, CatalogEntry)>,
    pub automorphisms: Vec<(usize, AutomorphismFamily)>,
}

enum Block {
    None,
    Entry(usize, EntryBuilder),
    Aut(usize, AutomorphismFamily),
}

struct EntryBuilder {
    id: String,
    dim: Option<usize>,
    kind: Option<Kind>,
    entry: CatalogEntry,
}

fn err(line: usize, reason: impl Into<String>) -> Error {
    Error::Catalog {
        line,
        reason: reason.into(),
    }
}

fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| err(line, e.to_string()))
}

fn quoted(line: usize, s: &str) -> Result<String> {
    let s = s.trim();
    s.strip_prefix('"')
        .and_then(|s| s.strip_suffix('"'))
        .map(str::to_string)
        .ok_or_else(|| err(line, format!("expected a quoted string, found `{s}`")))
}

fn constant(line: usize, text: &str) -> Result<Scalar> {
    at(line, parse_expr(text))?
        .as_constant()
        .ok_or_else(|| err(line, format!("`{text}` is not a constant")))
}

/// Splits on commas that are not nested in parentheses.
fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn parse_constraint(line: usize, text: &str) -> Result<Constraint> {
    let text = text.trim();
    if text == "any" {
        Ok(Constraint::Any)
    } else if text == "nonzero" {
        Ok(Constraint::Nonzero)
    } else if let Some(v) = text.strip_prefix("!=") {
        Ok(Constraint::NotEqual(constant(line, v)?))
    } else if let Some(set) = text.strip_prefix("in") {
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| err(line, format!("malformed set `{set}`")))?;
        let values = split_top_level(inner)
            .into_iter()
            .map(|v| constant(line, v))
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(err(line, "empty value set"));
        }
        Ok(Constraint::In(values))
    } else if let Some(note) = text.strip_prefix("note-only") {
        Ok(Constraint::NoteOnly(quoted(line, note)?))
    } else {
        Err(err(line, format!("unknown constraint `{text}`")))
    }
}

fn parse_param(line: usize, rest: &str) -> Result<ParamSpec> {
    let (name, constraint) = rest
        .trim()
        .split_once(char::is_whitespace)
        .ok_or_else(|| err(line, "param needs a name and a constraint"))?;
    if name == "i" {
        return Err(err(line, "`i` is reserved for the imaginary unit"));
    }
    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || name.starts_with(|c: char| c.is_ascii_digit()) {
        return Err(err(line, format!("invalid parameter name `{name}`")));
    }
    Ok(ParamSpec {
        name: name.to_string(),
        constraint: parse_constraint(line, constraint)?,
    })
}

fn parse_ref(line: usize, text: &str) -> Result<FamilyRef> {
    let text = text.trim();
    match text.split_once('(') {
        None => Ok(FamilyRef {
            id: text.to_string(),
            args: Vec::new(),
        }),
        Some((id, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| err(line, format!("missing `)` in `{text}`")))?;
            let args = split_top_level(inner)
                .into_iter()
                .map(|a| at(line, parse_expr(a)))
                .collect::<Result<Vec<_>>>()?;
            Ok(FamilyRef {
                id: id.trim().to_string(),
                args,
            })
        }
    }
}

fn basis_index(line: usize, tok: &str, dim: usize) -> Result<usize> {
    let k: usize = tok
        .strip_prefix('e')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| err(line, format!("expected a basis vector, found `{tok}`")))?;
    if k == 0 || k > dim {
        return Err(err(line, format!("`{tok}` is outside e1..e{dim}")));
    }
    Ok(k - 1)
}

fn parse_row(line: usize, text: &str, dim: usize) -> Result<ProductRow> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| err(line, format!("expected `ei op ej = ...`, found `{text}`")))?;
    let parts: Vec<&str> = lhs.split_whitespace().collect();
    let [a, op, b] = parts[..] else {
        return Err(err(line, format!("malformed product `{}`", lhs.trim())));
    };
    let op = match op {
        "." => Op::Mul,
        ">" => Op::Right,
        "<" => Op::Left,
        other => return Err(err(line, format!("unknown product symbol `{other}`"))),
    };
    let terms = at(line, at(line, parse_expr(rhs))?.linear_combination(dim))?;
    Ok(ProductRow {
        op,
        i: basis_index(line, a, dim)?,
        j: basis_index(line, b, dim)?,
        terms,
    })
}

fn is_row(text: &str) -> bool {
    text.starts_with('e') && text.contains('=') && !text.contains("->")
}

pub(super) fn parse(text: &str) -> Result<Parsed> {
    let mut parsed = Parsed {
        entries: Vec::new(),
        automorphisms: Vec::new(),
    };
    let mut block = Block::None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (head, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        block = match block {
            Block::None => match head {
                "entry" => {
                    if rest.is_empty() {
                        return Err(err(line, "entry needs an id"));
                    }
                    Block::Entry(
                        line,
                        EntryBuilder {
                            id: rest.to_string(),
                            dim: None,
                            kind: None,
                            entry: CatalogEntry::empty(rest),
                        },
                    )
                }
                "automorphism" => {
                    let words: Vec<&str> = rest.split_whitespace().collect();
                    let (base, which, printed) = match words[..] {
                        [b, w] => (b, w, false),
                        [b, w, "printed"] => (b, w, true),
                        _ => return Err(err(line, "expected `automorphism <base> <n> [printed]`")),
                    };
                    let which = which
                        .parse()
                        .map_err(|_| err(line, format!("bad family number `{which}`")))?;
                    Block::Aut(line, AutomorphismFamily::empty(base, which, printed))
                }
                _ => return Err(err(line, format!("unexpected `{head}` outside a block"))),
            },
            Block::Entry(start, mut b) => {
                if head == "end" {
                    parsed.entries.push((start, finish_entry(start, b)?));
                    Block::None
                } else {
                    entry_line(line, &mut b, head, rest, t)?;
                    Block::Entry(start, b)
                }
            }
            Block::Aut(start, mut a) => {
                if head == "end" {
                    parsed.automorphisms.push((start, a));
                    Block::None
                } else {
                    aut_line(line, &mut a, head, rest, t)?;
                    Block::Aut(start, a)
                }
            }
        };
    }
    match block {
        Block::None => Ok(parsed),
        Block::Entry(l, _) | Block::Aut(l, _) => Err(err(l, "block is not closed by `end`")),
    }
}

fn entry_line(line: usize, b: &mut EntryBuilder, head: &str, rest: &str, full: &str) -> Result<()> {
    let need_dim = |b: &EntryBuilder| b.dim.ok_or_else(|| err(line, "`dim` must come before products"));
    match head {
        "dim" => {
            let d: usize = rest.parse().map_err(|_| err(line, format!("bad dimension `{rest}`")))?;
            if d == 0 {
                return Err(err(line, "dimension must be positive"));
            }
            b.dim = Some(d);
        }
        "kind" => {
            b.kind = Some(match rest {
                "assoc" => Kind::Assoc,
                "ad" => Kind::Ad,
                other => return Err(err(line, format!("unknown kind `{other}`"))),
            })
        }
        "param" => b.entry.params.push(parse_param(line, rest)?),
        "assoc" => b.entry.assoc = Some(parse_ref(line, rest)?),
        "quotient" => b.entry.quotient = Some(parse_ref(line, rest)?),
        "center" => {
            let d = need_dim(b)?;
            let idx = rest
                .split_whitespace()
                .map(|tok| basis_index(line, tok, d))
                .collect::<Result<Vec<_>>>()?;
            b.entry.center = Some(idx);
        }
        "alias" => b.entry.alias = Some(rest.to_string()),
        "note" => b.entry.notes.push(quoted(line, rest)?),
        "printed" => {
            let row = parse_row(line, rest, need_dim(b)?)?;
            b.entry.printed_rows.push(row);
        }
        _ if is_row(full) => {
            let row = parse_row(line, full, need_dim(b)?)?;
            if b.entry.rows.iter().any(|r| (r.op, r.i, r.j) == (row.op, row.i, row.j)) {
                return Err(err(line, "product defined twice"));
            }
            b.entry.rows.push(row);
        }
        _ => return Err(err(line, format!("unknown keyword `{head}`"))),
    }
    Ok(())
}

fn finish_entry(line: usize, b: EntryBuilder) -> Result<CatalogEntry> {
    let mut e = b.entry;
    e.id = b.id;
    e.dim = b.dim.ok_or_else(|| err(line, format!("{} has no `dim`", e.id)))?;
    e.kind = b.kind.ok_or_else(|| err(line, format!("{} has no `kind`", e.id)))?;
    for r in &e.rows {
        let ok = match e.kind {
            Kind::Assoc => r.op == Op::Mul,
            Kind::Ad => r.op != Op::Mul,
        };
        if !ok {
            return Err(err(line, format!("{}: product symbol does not match the kind", e.id)));
        }
    }
    for p in &e.printed_rows {
        if !e.rows.iter().any(|r| (r.op, r.i, r.j) == (p.op, p.i, p.j)) {
            return Err(err(line, format!("{}: printed row has no corrected counterpart", e.id)));
        }
    }
    if e.kind == Kind::Ad && e.assoc.is_none() {
        return Err(err(line, format!("{} has no associated algebra", e.id)));
    }
    let names: Vec<&str> = e.params.iter().map(|p| p.name.as_str()).collect();
    let mut symbols: Vec<String> = Vec::new();
    for r in e.rows.iter().chain(&e.printed_rows) {
        for (_, c) in &r.terms {
            symbols.extend(c.variables());
        }
    }
    for f in e.assoc.iter().chain(&e.quotient) {
        for a in &f.args {
            symbols.extend(a.variables());
        }
    }
    if let Some(s) = symbols.iter().find(|s| !names.contains(&s.as_str())) {
        return Err(err(line, format!("{}: undeclared symbol `{s}`", e.id)));
    }
    Ok(e)
}

fn aut_line(line: usize, a: &mut AutomorphismFamily, head: &str, rest: &str, full: &str) -> Result<()> {
    match head {
        "base-param" => a.base_params.push(parse_param(line, rest)?),
        "param" => {
            let p = parse_param(line, rest)?;
            if matches!(p.constraint, Constraint::NotEqual(_) | Constraint::NoteOnly(_)) {
                return Err(err(line, "automorphism parameters take any, nonzero or in {..}"));
            }
            a.params.push(p);
        }
        "nonzero" => a.nonzero.push(at(line, parse_expr(rest))?),
        _ if full.contains("->") => {
            let (lhs, rhs) = full.split_once("->").expect("checked");
            let j = basis_index(line, lhs.trim(), 64)?;
            let image: RatFunc = at(line, parse_expr(rhs))?;
            a.raw_images.push((line, j, image));
        }
        _ => return Err(err(line, format!("unknown keyword `{head}`"))),
    }
    Ok(())
}
