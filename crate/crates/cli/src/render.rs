//! Human-readable tables: `e_1▷e_2=αe_3+e_4, e_2◁e_1=-e_4`.

use adw_core::algebra::Algebra;
use adw_core::catalog::{CatalogEntry, Op, Params, RatFunc};
use adw_core::{LinearMap, ProductTensor, Scalar};

const GREEK: [(&str, &str); 8] = [
    ("alpha", "α"),
    ("beta", "β"),
    ("gamma", "γ"),
    ("delta", "δ"),
    ("lambda", "λ"),
    ("mu", "μ"),
    ("nu", "ν"),
    ("epsilon", "ε"),
];

/// Replaces whole-word parameter names by their Greek letters.
pub fn greek(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut String| {
        let w = std::mem::take(word);
        out.push_str(GREEK.iter().find(|(n, _)| *n == w).map_or(w.as_str(), |(_, g)| g));
    };
    for ch in text.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
        } else {
            flush(&mut word, &mut out);
            out.push(ch);
        }
    }
    flush(&mut word, &mut out);
    out
}

pub fn params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{}={v}", greek(k)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn is_atom(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && body.chars().all(|c| !"+-*/() ".contains(c))
}

/// `c e_k` with the coefficient dropped when it is 1.
fn term(coeff: &str, k: usize) -> String {
    match coeff {
        "1" => format!("e_{}", k + 1),
        "-1" => format!("-e_{}", k + 1),
        c if is_atom(c) => format!("{c}e_{}", k + 1),
        c => format!("({c})e_{}", k + 1),
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut out = String::new();
    for (n, t) in terms.iter().enumerate() {
        if n > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}

fn product(op: Op, i: usize, j: usize, rhs: &str) -> String {
    format!("e_{}{}e_{}={rhs}", i + 1, op.symbol(), j + 1)
}

/// Symbolic rows of a catalog entry, one line per product.
pub fn entry_rows(e: &CatalogEntry) -> Vec<String> {
    let ops: &[Op] = match e.kind {
        adw_core::catalog::Kind::Assoc => &[Op::Mul],
        adw_core::catalog::Kind::Ad => &[Op::Right, Op::Left],
    };
    ops.iter()
        .map(|&op| {
            let rows: Vec<String> = e
                .rows
                .iter()
                .filter(|r| r.op == op)
                .map(|r| {
                    let terms: Vec<String> = r
                        .terms
                        .iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c): &(usize, RatFunc)| term(&greek(&c.to_string()), *k))
                        .collect();
                    product(op, r.i, r.j, &join_terms(&terms))
                })
                .collect();
            if rows.is_empty() {
                "all products zero".to_string()
            } else {
                rows.join(", ")
            }
        })
        .collect()
}

fn tensor_row(op: Op, t: &ProductTensor) -> String {
    let n = t.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let terms: Vec<String> = t
                .basis_product(i, j)
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| term(&c.to_string(), k))
                .collect();
            if !terms.is_empty() {
                rows.push(product(op, i, j, &join_terms(&terms)));
            }
        }
    }
    if rows.is_empty() {
        "all products zero".to_string()
    } else {
        rows.join(", ")
    }
}

/// Nonzero basis products of an instantiated algebra.
pub fn algebra_rows(a: &Algebra) -> Vec<String> {
    match a {
        Algebra::Assoc(a) => vec![tensor_row(Op::Mul, &a.mul)],
        Algebra::Ad(d) => vec![tensor_row(Op::Right, &d.rprod), tensor_row(Op::Left, &d.lprod)],
    }
}

pub fn matrix(m: &LinearMap) -> String {
    let cells = m.to_strings();
    let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
    cells
        .iter()
        .map(|row| {
            let cols: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            format!("[ {} ]", cols.join("  "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn scalars(v: &[Scalar]) -> String {
    adw_core::identities::render_vector(v)
}
