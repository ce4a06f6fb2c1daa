//! The catalogued families: parametrized structure constants, their claimed
//! associated algebras, centers and quotients, and the automorphism families
//! of the four-dimensional associative algebras.

mod dsl;
pub mod expr;
mod grid;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::algebra::{AdAlgebra, Algebra, AssocAlgebra, LinearMap, ProductTensor, SubspaceBasis, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use expr::{Poly, RatFunc};
pub use grid::{automorphism_points, base_grid, generic_value, param_values, sample_points};

/// Parameter assignment, keyed by name.
pub type Params = BTreeMap<String, Scalar>;

const BUILTIN: &str = include_str!("../../data/catalog.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Assoc,
    Ad,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Assoc => "assoc",
            Kind::Ad => "ad",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "assoc" => Ok(Kind::Assoc),
            "ad" => Ok(Kind::Ad),
            _ => Err(Error::parse(s, "expected `assoc` or `ad`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    Any,
    Nonzero,
    NotEqual(Scalar),
    In(Vec<Scalar>),
    /// Recorded but not enforced.
    NoteOnly(String),
}

impl Constraint {
    pub fn admits(&self, v: &Scalar) -> bool {
        match self {
            Constraint::Any | Constraint::NoteOnly(_) => true,
            Constraint::Nonzero => !v.is_zero(),
            Constraint::NotEqual(x) => v != x,
            Constraint::In(xs) => xs.contains(v),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Any => f.write_str("any"),
            Constraint::Nonzero => f.write_str("nonzero"),
            Constraint::NotEqual(x) => write!(f, "!= {x}"),
            Constraint::In(xs) => {
                let xs: Vec<String> = xs.iter().map(ToString::to_string).collect();
                write!(f, "in {{{}}}", xs.join(", "))
            }
            Constraint::NoteOnly(t) => write!(f, "note-only \"{t}\""),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: String,
    pub constraint: Constraint,
}

/// Reference to another family, with arguments expressed in this entry's parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRef {
    pub id: String,
    pub args: Vec<RatFunc>,
}

impl fmt::Display for FamilyRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)?;
        if !self.args.is_empty() {
            let args: Vec<String> = self.args.iter().map(ToString::to_string).collect();
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Op {
    Mul,
    Right,
    Left,
}

impl Op {
    pub fn json_name(self) -> &'static str {
        match self {
            Op::Mul => "mul",
            Op::Right => "rprod",
            Op::Left => "lprod",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Op::Mul => "",
            Op::Right => "▷",
            Op::Left => "◁",
        }
    }
}

/// `e_i op e_j = sum_k c_k e_k`, indices 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductRow {
    pub op: Op,
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, RatFunc)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub dim: usize,
    pub kind: Kind,
    pub params: Vec<ParamSpec>,
    pub assoc: Option<FamilyRef>,
    pub quotient: Option<FamilyRef>,
    /// Claimed center, as 0-based standard basis indices.
    pub center: Option<Vec<usize>>,
    pub alias: Option<String>,
    pub notes: Vec<String>,
    pub rows: Vec<ProductRow>,
    /// Rows as originally tabulated where a corrected row is used instead.
    pub printed_rows: Vec<ProductRow>,
}

impl CatalogEntry {
    fn empty(id: &str) -> Self {
        CatalogEntry {
            id: id.to_string(),
            dim: 0,
            kind: Kind::Assoc,
            params: Vec::new(),
            assoc: None,
            quotient: None,
            center: None,
            alias: None,
            notes: Vec::new(),
            rows: Vec::new(),
            printed_rows: Vec::new(),
        }
    }

    pub fn param(&self, name: &str) -> Option<&ParamSpec> {
        self.params.iter().find(|p| p.name == name)
    }

    pub fn claimed_center(&self) -> Option<SubspaceBasis> {
        self.center.as_ref().map(|c| SubspaceBasis::standard(self.dim, c))
    }

    /// Sort key giving As3.*, AD3.*, As4.*, AD4.* in numeric order.
    pub fn sort_key(&self) -> (usize, Kind, u32, String) {
        id_sort_key(&self.id, self.dim, self.kind)
    }

    /// Ordinary entries only; aliases are variant readings of another entry.
    pub fn is_alias(&self) -> bool {
        self.alias.is_some()
    }
}

fn id_sort_key(id: &str, dim: usize, kind: Kind) -> (usize, Kind, u32, String) {
    let tail = id.split_once('.').map_or("", |(_, t)| t);
    let digits: String = tail.chars().take_while(char::is_ascii_digit).collect();
    let suffix = tail[digits.len()..].to_string();
    (dim, kind, digits.parse().unwrap_or(0), suffix)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismFamily {
    pub base: String,
    pub which: usize,
    /// The originally tabulated form of a corrected family.
    pub printed: bool,
    pub base_params: Vec<ParamSpec>,
    pub params: Vec<ParamSpec>,
    /// Extra validity conditions `expr != 0`.
    pub nonzero: Vec<RatFunc>,
    /// `images[j]` is the image of `e_j` as `(k, coefficient)` terms.
    pub images: Vec<Vec<(usize, RatFunc)>>,
    raw_images: Vec<(usize, usize, RatFunc)>,
}

impl AutomorphismFamily {
    fn empty(base: &str, which: usize, printed: bool) -> Self {
        AutomorphismFamily {
            base: base.to_string(),
            which,
            printed,
            base_params: Vec::new(),
            params: Vec::new(),
            nonzero: Vec::new(),
            images: Vec::new(),
            raw_images: Vec::new(),
        }
    }

    /// `As4.3 #1`, with a `(printed)` marker where applicable.
    pub fn label(&self) -> String {
        if self.printed {
            format!("{} #{} (printed)", self.base, self.which)
        } else {
            format!("{} #{}", self.base, self.which)
        }
    }

    pub fn all_params(&self) -> impl Iterator<Item = &ParamSpec> {
        self.base_params.iter().chain(&self.params)
    }
}

/// Which entries to list.
#[derive(Clone, Debug, Default)]
pub struct EntryFilter {
    pub dim: Option<usize>,
    pub kind: Option<Kind>,
    /// Associated algebra id, e.g. `As4.3`.
    pub base: Option<String>,
    pub include_aliases: bool,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    automorphisms: Vec<AutomorphismFamily>,
    index: HashMap<String, usize>,
}

fn env_of(params: &Params) -> HashMap<&str, &Scalar> {
    params.iter().map(|(k, v)| (k.as_str(), v)).collect()
}

fn eval_terms(terms: &[(usize, RatFunc)], env: &HashMap<&str, &Scalar>, dim: usize) -> Result<Vector> {
    let mut v = vec![Scalar::zero(); dim];
    for (k, c) in terms {
        v[*k] += &c.eval(env)?;
    }
    Ok(v)
}

impl Catalog {
    /// The catalog compiled into the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("built-in catalog parses"))
    }

    pub fn source_text() -> &'static str {
        BUILTIN
    }

    pub fn parse(text: &str) -> Result<Catalog> {
        let parsed = dsl::parse(text)?;
        let mut index = HashMap::new();
        let mut entries = Vec::new();
        for (line, e) in parsed.entries {
            if index.insert(e.id.clone(), entries.len()).is_some() {
                return Err(Error::Catalog {
                    line,
                    reason: format!("duplicate id {}", e.id),
                });
            }
            entries.push(e);
        }
        let mut cat = Catalog {
            entries,
            automorphisms: Vec::new(),
            index,
        };
        cat.link_entries()?;
        for (line, mut a) in parsed.automorphisms {
            cat.link_automorphism(line, &mut a)?;
            cat.automorphisms.push(a);
        }
        cat.entries.sort_by_key(CatalogEntry::sort_key);
        cat.index = cat.entries.iter().enumerate().map(|(k, e)| (e.id.clone(), k)).collect();
        Ok(cat)
    }

    fn link_entries(&self) -> Result<()> {
        let bad = |id: &str, reason: String| Error::Catalog {
            line: 0,
            reason: format!("{id}: {reason}"),
        };
        for e in &self.entries {
            for (what, r) in [("assoc", &e.assoc), ("quotient", &e.quotient)] {
                let Some(r) = r else { continue };
                let target = self.entry(&r.id).map_err(|_| bad(&e.id, format!("{what} refers to unknown {}", r.id)))?;
                if target.params.len() != r.args.len() {
                    return Err(bad(&e.id, format!("{} takes {} arguments", r.id, target.params.len())));
                }
                let expected_dim = if what == "assoc" { e.dim } else { e.dim.saturating_sub(1) };
                if target.dim != expected_dim {
                    return Err(bad(&e.id, format!("{what} {} has dimension {}", r.id, target.dim)));
                }
            }
            if let Some(a) = &e.alias {
                self.entry(a).map_err(|_| bad(&e.id, format!("alias of unknown {a}")))?;
            }
        }
        Ok(())
    }

    fn link_automorphism(&self, line: usize, a: &mut AutomorphismFamily) -> Result<()> {
        let fail = |reason: String| Error::Catalog { line, reason };
        let base = self
            .entry(&a.base)
            .map_err(|_| fail(format!("unknown base {}", a.base)))?;
        if base.kind != Kind::Assoc {
            return Err(fail(format!("{} is not associative", a.base)));
        }
        for bp in &a.base_params {
            if base.param(&bp.name).is_none() {
                return Err(fail(format!("{} has no parameter {}", a.base, bp.name)));
            }
        }
        let n = base.dim;
        let mut images = vec![None; n];
        for (l, j, img) in std::mem::take(&mut a.raw_images) {
            if j >= n {
                return Err(Error::Catalog {
                    line: l,
                    reason: format!("e{} is outside e1..e{n}", j + 1),
                });
            }
            let terms = img.linear_combination(n).map_err(|e| Error::Catalog {
                line: l,
                reason: e.to_string(),
            })?;
            images[j] = Some(terms);
        }
        a.images = images
            .into_iter()
            .enumerate()
            .map(|(j, t)| t.ok_or_else(|| fail(format!("image of e{} is missing", j + 1))))
            .collect::<Result<_>>()?;
        let names: Vec<&str> = a.all_params().map(|p| p.name.as_str()).collect();
        let mut symbols: Vec<String> = a.nonzero.iter().flat_map(RatFunc::variables).collect();
        for img in &a.images {
            symbols.extend(img.iter().flat_map(|(_, c)| c.variables()));
        }
        if let Some(s) = symbols.iter().find(|s| !names.contains(&s.as_str())) {
            return Err(fail(format!("undeclared symbol `{s}`")));
        }
        if self
            .automorphisms
            .iter()
            .any(|b| (b.base.as_str(), b.which, b.printed) == (a.base.as_str(), a.which, a.printed))
        {
            return Err(fail(format!("duplicate automorphism family {}", a.label())));
        }
        Ok(())
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, id: &str) -> Result<&CatalogEntry> {
        self.index
            .get(id)
            .map(|&k| &self.entries[k])
            .ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn list_entries(&self, filter: &EntryFilter) -> Vec<&CatalogEntry> {
        self.entries
            .iter()
            .filter(|e| filter.include_aliases || !e.is_alias())
            .filter(|e| filter.dim.is_none_or(|d| e.dim == d))
            .filter(|e| filter.kind.is_none_or(|k| e.kind == k))
            .filter(|e| {
                filter
                    .base
                    .as_ref()
                    .is_none_or(|b| e.assoc.as_ref().is_some_and(|a| &a.id == b))
            })
            .collect()
    }

    fn check_params(&self, e: &CatalogEntry, params: &Params, enforce: bool) -> Result<()> {
        check_param_set(&e.id, e.params.iter(), params, enforce)
    }

    fn build(&self, e: &CatalogEntry, params: &Params, printed: bool) -> Result<Algebra> {
        let env = env_of(params);
        let n = e.dim;
        let mut tensors: BTreeMap<Op, ProductTensor> = BTreeMap::new();
        for op in [Op::Mul, Op::Right, Op::Left] {
            tensors.insert(op, ProductTensor::zeros(n)?);
        }
        for row in &e.rows {
            let row = if printed {
                e.printed_rows
                    .iter()
                    .find(|p| (p.op, p.i, p.j) == (row.op, row.i, row.j))
                    .unwrap_or(row)
            } else {
                row
            };
            let v = eval_terms(&row.terms, &env, n)?;
            let t = tensors.get_mut(&row.op).expect("all ops present");
            for (k, c) in v.into_iter().enumerate() {
                t.set(row.i, row.j, k, c);
            }
        }
        let mut take = |op| tensors.remove(&op).expect("all ops present");
        Ok(match e.kind {
            Kind::Assoc => Algebra::Assoc(AssocAlgebra::new(take(Op::Mul))),
            Kind::Ad => Algebra::Ad(AdAlgebra::new(take(Op::Right), take(Op::Left))?),
        })
    }

    /// Structure constants at a parameter point satisfying the entry's constraints.
    pub fn instantiate(&self, id: &str, params: &Params) -> Result<Algebra> {
        let e = self.entry(id)?;
        self.check_params(e, params, true)?;
        self.build(e, params, false)
    }

    /// Like [`Catalog::instantiate`] but ignores the value constraints. Used for
    /// the boundary points where two families are claimed to coincide.
    pub fn instantiate_unchecked(&self, id: &str, params: &Params) -> Result<Algebra> {
        let e = self.entry(id)?;
        self.check_params(e, params, false)?;
        self.build(e, params, false)
    }

    /// The table with every corrected row replaced by its originally tabulated form.
    pub fn instantiate_printed(&self, id: &str, params: &Params) -> Result<Algebra> {
        let e = self.entry(id)?;
        self.check_params(e, params, true)?;
        self.build(e, params, true)
    }

    pub fn instantiate_ad(&self, id: &str, params: &Params) -> Result<AdAlgebra> {
        match self.instantiate(id, params)? {
            Algebra::Ad(d) => Ok(d),
            Algebra::Assoc(_) => Err(Error::parse(id, "not an anti-dendriform family")),
        }
    }

    pub fn instantiate_assoc(&self, id: &str, params: &Params) -> Result<AssocAlgebra> {
        match self.instantiate(id, params)? {
            Algebra::Assoc(a) => Ok(a),
            Algebra::Ad(_) => Err(Error::parse(id, "not an associative family")),
        }
    }

    /// Parameters of a referenced family, evaluated at this entry's point.
    pub fn ref_params(&self, r: &FamilyRef, params: &Params) -> Result<Params> {
        let target = self.entry(&r.id)?;
        let env = env_of(params);
        target
            .params
            .iter()
            .zip(&r.args)
            .map(|(p, a)| Ok((p.name.clone(), a.eval(&env)?)))
            .collect()
    }

    pub fn instantiate_ref(&self, r: &FamilyRef, params: &Params) -> Result<Algebra> {
        self.instantiate(&r.id, &self.ref_params(r, params)?)
    }

    /// Families of the given base in file order, excluding printed forms.
    pub fn automorphism_families(&self, base: &str) -> Vec<&AutomorphismFamily> {
        self.automorphisms
            .iter()
            .filter(|a| a.base == base && !a.printed)
            .collect()
    }

    pub fn all_automorphism_families(&self) -> &[AutomorphismFamily] {
        &self.automorphisms
    }

    pub fn automorphism_family(&self, base: &str, which: usize, printed: bool) -> Result<&AutomorphismFamily> {
        self.entry(base)?;
        self.automorphisms
            .iter()
            .find(|a| a.base == base && a.which == which && a.printed == printed)
            .ok_or_else(|| Error::UnknownAutomorphism {
                base: base.to_string(),
                which,
            })
    }

    /// The map of one automorphism family at a parameter point, checked on
    /// construction to preserve the base product.
    pub fn instantiate_automorphism(&self, base: &str, which: usize, params: &Params) -> Result<LinearMap> {
        let fam = self.automorphism_family(base, which, false)?;
        self.instantiate_family_map(fam, params)
    }

    /// Instantiates and verifies any family, including printed forms.
    pub fn instantiate_family_map(&self, fam: &AutomorphismFamily, params: &Params) -> Result<LinearMap> {
        let p = self.family_map_unverified(fam, params)?;
        let base = self.instantiate_assoc(&fam.base, &base_params_of(fam, params))?;
        if let Some(detail) = automorphism_defect(&base, &p) {
            return Err(Error::NotAutomorphism {
                base: fam.base.clone(),
                which: fam.which,
                detail,
            });
        }
        Ok(p)
    }

    /// Evaluates the template after checking validity and invertibility, without
    /// the product check.
    pub fn family_map_unverified(&self, fam: &AutomorphismFamily, params: &Params) -> Result<LinearMap> {
        let label = fam.label();
        check_param_set(&label, fam.all_params(), params, true)?;
        let env = env_of(params);
        for cond in &fam.nonzero {
            if cond.eval(&env)?.is_zero() {
                return Err(Error::ConstraintViolated {
                    id: label.clone(),
                    param: cond.to_string(),
                    constraint: "nonzero".to_string(),
                    value: "0".to_string(),
                });
            }
        }
        let n = fam.images.len();
        let cols = fam
            .images
            .iter()
            .map(|img| eval_terms(img, &env, n))
            .collect::<Result<Vec<_>>>()?;
        let p = LinearMap::from_columns(&cols)?;
        if !p.is_invertible() {
            return Err(Error::SingularMap);
        }
        Ok(p)
    }

    /// Every entry and automorphism template with coefficients as canonical
    /// polynomial strings.
    pub fn export_json(&self) -> Value {
        let entries: Vec<Value> = self.entries.iter().map(entry_json).collect();
        let auts: Vec<Value> = self.automorphisms.iter().map(automorphism_json).collect();
        json!({ "entries": entries, "automorphisms": auts })
    }
}

fn base_params_of(fam: &AutomorphismFamily, params: &Params) -> Params {
    fam.base_params
        .iter()
        .filter_map(|p| params.get(&p.name).map(|v| (p.name.clone(), v.clone())))
        .collect()
}

fn check_param_set<'a>(
    id: &str,
    specs: impl Iterator<Item = &'a ParamSpec>,
    params: &Params,
    enforce: bool,
) -> Result<()> {
    let specs: Vec<&ParamSpec> = specs.collect();
    if let Some(extra) = params.keys().find(|k| !specs.iter().any(|p| &p.name == *k)) {
        return Err(Error::UnknownParam {
            id: id.to_string(),
            param: extra.clone(),
        });
    }
    for p in specs {
        let v = params.get(&p.name).ok_or_else(|| Error::MissingParam {
            id: id.to_string(),
            param: p.name.clone(),
        })?;
        if enforce && !p.constraint.admits(v) {
            return Err(Error::ConstraintViolated {
                id: id.to_string(),
                param: p.name.clone(),
                constraint: p.constraint.to_string(),
                value: v.to_string(),
            });
        }
    }
    Ok(())
}

/// `None` if `p(e_i e_j) = p(e_i) p(e_j)` for all basis pairs, otherwise the first failure.
pub fn automorphism_defect(a: &AssocAlgebra, p: &LinearMap) -> Option<String> {
    let n = a.dim();
    let cols: Vec<Vector> = (0..n).map(|j| p.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = p.apply(a.mul.basis_product(i, j));
            let rhs = a.mul.multiply(&cols[i], &cols[j]).expect("same dimension");
            if lhs != rhs {
                return Some(format!(
                    "phi(e_{a}e_{b}) = {} but phi(e_{a})phi(e_{b}) = {}",
                    crate::identities::render_vector(&lhs),
                    crate::identities::render_vector(&rhs),
                    a = i + 1,
                    b = j + 1
                ));
            }
        }
    }
    None
}

fn params_json(ps: &[ParamSpec]) -> Vec<Value> {
    ps.iter()
        .map(|p| json!({ "name": p.name, "constraint": p.constraint.to_string() }))
        .collect()
}

fn rows_json(rows: &[ProductRow]) -> BTreeMap<&'static str, Vec<Value>> {
    let mut out: BTreeMap<&'static str, Vec<Value>> = BTreeMap::new();
    for r in rows {
        for (k, c) in &r.terms {
            out.entry(r.op.json_name()).or_default().push(json!({
                "i": r.i + 1, "j": r.j + 1, "k": k + 1, "c": c.to_string()
            }));
        }
    }
    out
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "id": e.id,
        "dim": e.dim,
        "kind": e.kind.as_str(),
        "params": params_json(&e.params),
        "assoc": e.assoc.as_ref().map(ToString::to_string),
        "quotient": e.quotient.as_ref().map(ToString::to_string),
        "center": e.center.as_ref().map(|c| c.iter().map(|k| k + 1).collect::<Vec<_>>()),
        "alias": e.alias,
        "notes": e.notes,
        "products": rows_json(&e.rows),
        "printed": rows_json(&e.printed_rows),
    })
}

fn automorphism_json(a: &AutomorphismFamily) -> Value {
    let images: Vec<Value> = a
        .images
        .iter()
        .map(|img| {
            Value::Array(
                img.iter()
                    .map(|(k, c)| json!({ "k": k + 1, "c": c.to_string() }))
                    .collect(),
            )
        })
        .collect();
    json!({
        "base": a.base,
        "which": a.which,
        "printed": a.printed,
        "base_params": params_json(&a.base_params),
        "params": params_json(&a.params),
        "nonzero": a.nonzero.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "images": images,
    })
}

/// Parses `k=v,k2=v2` with values in the scalar text form.
pub fn parse_params(text: &str) -> Result<Params> {
    let mut out = Params::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::parse(part, "expected name=value"))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::parse(part, "empty parameter name"));
        }
        let v: Scalar = v.trim().parse()?;
        if out.insert(k.to_string(), v).is_some() {
            return Err(Error::parse(k, "parameter given twice"));
        }
    }
    Ok(out)
}

/// `alpha=1, beta=-1/2`.
pub fn format_params(params: &Params) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}
