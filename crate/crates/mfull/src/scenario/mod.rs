//! Scenario files and the suites built on them.
//!
//! A scenario declares a ring, names ideals and modules over it and lists
//! checks. Loading validates everything that can be validated without
//! computing: sections, keys, check names and argument shapes. Objects are
//! parsed against the ring when the scenario runs, and parse failures are
//! reported with the line and column of the offending text.
//! The grammar is in `docs/scenario-grammar.md`.

mod builtin;
mod eval;
mod report;
mod suites;

pub use builtin::{builtin, builtin_names};
pub use report::{CheckOutcome, Report, Settings, Verdict};
pub use suites::{jorgensen_suite, suite_names, theorem_suite, SuiteParams};

use crate::error::{Error, Result};
use crate::field::{Fp, Q};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Q,
    P(u32),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Option<FieldSpec> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            return Some(FieldSpec::Q);
        }
        let p = s.strip_prefix("p:").or_else(|| s.strip_prefix("P:"))?;
        let p: u32 = p.trim().parse().ok()?;
        Fp::new(p).map(|_| FieldSpec::P(p))
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::Q => "QQ".into(),
            FieldSpec::P(p) => format!("GF({p})"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum RingKind {
    Semigroup { gens: Vec<u32>, extra: Vec<(String, i32)>, names: Option<Vec<String>> },
    Explicit { vars: Vec<String>, weights: Vec<i32>, relations: Vec<Located> },
}

/// Text with the position where it starts in the file (1-based).
#[derive(Clone, Debug)]
pub struct Located {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Located {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    /// Shifts a parse error from inside the text to file coordinates.
    fn relocate(&self, e: Error) -> Error {
        match e {
            Error::Parse { col, msg, .. } => Error::Parse { line: self.line, col: self.col + col.saturating_sub(1), msg },
            e => Error::Parse { line: self.line, col: self.col, msg: e.to_string() },
        }
    }
}

#[derive(Clone, Debug)]
pub struct RingSpec {
    pub kind: RingKind,
    pub field: FieldSpec,
    /// Monomial ideals over this ring may use the lowest-term argument in
    /// the m-full search. Semigroup rings are toric by construction.
    pub toric: bool,
}

#[derive(Clone, Debug)]
pub struct ObjDef {
    pub name: String,
    pub expr: Located,
}

#[derive(Clone, Debug)]
pub struct CheckDef {
    pub name: String,
    pub args: Vec<Located>,
    pub kv: BTreeMap<String, Located>,
    pub line: usize,
    /// The check line as written, used as its label in reports.
    pub text: String,
}

impl CheckDef {
    pub fn get(&self, k: &str) -> Option<&str> {
        self.kv.get(k).map(|l| l.text.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub ring: RingSpec,
    pub objects: Vec<ObjDef>,
    pub checks: Vec<CheckDef>,
    pub settings: Settings,
}

/// (name, positional argument count range, allowed keys).
const CHECKS: &[(&str, usize, usize, &[&str])] = &[
    ("weakly_mfull", 1, 1, &["expect"]),
    ("mfull", 1, 1, &["expect", "budget"]),
    ("depth_zero", 1, 1, &["expect"]),
    ("burch", 1, 1, &["expect"]),
    ("socle", 1, 1, &["expect"]),
    ("colon", 2, 2, &["expect"]),
    ("integral_witness", 1, 1, &["expect", "r", "coeffs"]),
    ("assume", 2, 2, &[]),
    ("celwag", 1, 1, &["expect", "window", "samples"]),
    ("depth", 1, 1, &["expect", "bound"]),
    ("grade", 1, 1, &["expect", "bound"]),
    ("pd", 1, 1, &["expect", "bound"]),
    ("id", 1, 1, &["expect", "bound"]),
    ("ext", 3, 3, &["expect", "detail"]),
    ("tor", 3, 3, &["expect", "detail"]),
    ("lhom", 2, 2, &["expect", "detail"]),
    ("betti", 1, 1, &["expect", "steps"]),
    ("hilbert", 1, 1, &["expect", "degrees"]),
    ("cm_type", 0, 0, &["expect"]),
    ("exactness", 3, 3, &["expect"]),
    ("rigidity", 1, 1, &["expect", "samples", "window"]),
];

pub const ASSUMPTIONS: &[&str] = &["integrally_closed"];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Splits on whitespace outside brackets; returns (token, 1-based column).
fn tokens(s: &str, col0: usize) -> Vec<(String, usize)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut start = 0;
    for (i, c) in s.chars().enumerate() {
        if c.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push((std::mem::take(&mut cur), col0 + start));
            }
            continue;
        }
        if cur.is_empty() {
            start = i;
        }
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        out.push((cur, col0 + start));
    }
    out
}

/// Comma separated list inside optional brackets, with column offsets.
pub(crate) fn list_items(l: &Located) -> Vec<Located> {
    let t = l.text.trim_end();
    let (body, off) = match t.strip_prefix('[') {
        Some(b) => (b.strip_suffix(']').unwrap_or(b), 1),
        None => (t, 0),
    };
    crate::parse::split_list(body)
        .into_iter()
        .map(|(s, c)| {
            let pad = s.len() - s.trim_start().len();
            Located { text: s.trim().to_string(), line: l.line, col: l.col + off + c + pad }
        })
        .collect()
}

fn parse_window(l: &Located) -> Result<(usize, usize)> {
    let (a, b) = l.text.split_once("..").ok_or_else(|| l.err("expected a range a..b"))?;
    let a: usize = a.trim().parse().map_err(|_| l.err("bad range start"))?;
    let b: usize = b.trim().parse().map_err(|_| l.err("bad range end"))?;
    if a > b {
        return Err(l.err("empty range"));
    }
    Ok((a, b))
}

fn parse_usize(l: &Located) -> Result<usize> {
    l.text.trim().parse().map_err(|_| l.err("expected a non-negative integer"))
}

#[derive(PartialEq)]
enum Section {
    None,
    Ring,
    Objects,
    Checks,
    Settings,
}

/// Parses scenario text. Errors carry 1-based line and column.
pub fn load(text: &str, name: &str) -> Result<Scenario> {
    let mut sec = Section::None;
    let mut ring_kv: BTreeMap<String, Located> = BTreeMap::new();
    let mut objects: Vec<ObjDef> = Vec::new();
    let mut checks: Vec<CheckDef> = Vec::new();
    let mut settings = Settings::default();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        let lead = body.len() - body.trim_start().len();
        let t = body.trim();
        if t.is_empty() {
            continue;
        }
        let col = lead + 1;
        if t.starts_with('[') {
            sec = match t {
                "[ring]" => Section::Ring,
                "[objects]" => Section::Objects,
                "[checks]" => Section::Checks,
                "[settings]" => Section::Settings,
                _ => return Err(Error::Parse { line, col, msg: format!("unknown section {t}") }),
            };
            continue;
        }
        let kv = |t: &str| -> Result<(String, Located)> {
            let (k, v) = t.split_once('=').ok_or_else(|| Error::Parse { line, col, msg: "expected key = value".into() })?;
            let vcol = col + k.len() + 1 + (v.len() - v.trim_start().len());
            Ok((k.trim().to_string(), Located { text: v.trim().to_string(), line, col: vcol }))
        };
        match sec {
            Section::None => return Err(Error::Parse { line, col, msg: "entry outside of a section".into() }),
            Section::Ring => {
                let (k, v) = kv(t)?;
                const KEYS: [&str; 8] = ["semigroup", "extra", "names", "vars", "weights", "relations", "field", "toric"];
                if !KEYS.contains(&k.as_str()) {
                    return Err(Error::Parse { line, col, msg: format!("unknown ring key {k}") });
                }
                if ring_kv.insert(k.clone(), v).is_some() {
                    return Err(Error::Parse { line, col, msg: format!("duplicate ring key {k}") });
                }
            }
            Section::Objects => {
                let (k, v) = kv(t)?;
                let ok = !k.is_empty() && k.chars().all(|c| c.is_alphanumeric() || c == '_') && !k.chars().next().unwrap().is_ascii_digit();
                if !ok {
                    return Err(Error::Parse { line, col, msg: format!("bad object name {k:?}") });
                }
                if objects.iter().any(|o| o.name == k) {
                    return Err(Error::Parse { line, col, msg: format!("object {k} defined twice") });
                }
                objects.push(ObjDef { name: k, expr: v });
            }
            Section::Settings => {
                let (k, v) = kv(t)?;
                match k.as_str() {
                    "seed" => settings.seed = v.text.parse().map_err(|_| v.err("expected an integer seed"))?,
                    "bound" => settings.bound = parse_usize(&v)?,
                    "degrees" => settings.degrees = parse_usize(&v)?,
                    "budget" => settings.budget = parse_usize(&v)?,
                    "window" => settings.window = parse_window(&v)?,
                    _ => return Err(Error::Parse { line, col, msg: format!("unknown setting {k}") }),
                }
            }
            Section::Checks => {
                let toks = tokens(t, col);
                let (cname, ccol) = toks[0].clone();
                let Some(spec) = CHECKS.iter().find(|c| c.0 == cname) else {
                    return Err(Error::Parse { line, col: ccol, msg: format!("unknown check {cname}") });
                };
                let mut args = Vec::new();
                let mut kvs = BTreeMap::new();
                for (tok, c) in toks.into_iter().skip(1) {
                    match tok.split_once('=') {
                        Some((k, v)) if !k.contains('(') && !k.contains('[') => {
                            if !spec.3.contains(&k) {
                                return Err(Error::Parse { line, col: c, msg: format!("check {cname} takes no key {k}") });
                            }
                            kvs.insert(k.to_string(), Located { text: v.to_string(), line, col: c + k.len() + 1 });
                        }
                        _ => args.push(Located { text: tok, line, col: c }),
                    }
                }
                if args.len() < spec.1 || args.len() > spec.2 {
                    return Err(Error::Parse { line, col: ccol, msg: format!("check {cname} takes {} argument(s), got {}", spec.1, args.len()) });
                }
                let cd = CheckDef { name: cname.clone(), args, kv: kvs, line, text: t.to_string() };
                validate_check(&cd)?;
                checks.push(cd);
            }
        }
    }
    let ring = ring_spec(&ring_kv)?;
    let sc = Scenario { name: name.to_string(), ring, objects, checks, settings };
    validate_refs(&sc)?;
    Ok(sc)
}

fn validate_check(c: &CheckDef) -> Result<()> {
    if let Some(w) = c.kv.get("window") {
        parse_window(w)?;
    }
    for k in ["bound", "steps", "degrees", "budget", "samples"] {
        if let Some(v) = c.kv.get(k) {
            parse_usize(v)?;
        }
    }
    if c.name == "ext" || c.name == "tor" {
        let l = &c.args[2];
        if l.text.contains("..") {
            parse_window(l)?;
        } else {
            parse_usize(l)?;
        }
    }
    if c.name == "exactness" {
        let n = parse_usize(&c.args[2])?;
        if n == 0 {
            return Err(c.args[2].err("the sequence needs n ≥ 1"));
        }
    }
    if c.name == "integral_witness" && (c.kv.get("r").is_none() || c.kv.get("coeffs").is_none()) {
        return Err(Error::Parse { line: c.line, col: 1, msg: "integral_witness needs r= and coeffs=".into() });
    }
    if c.name == "assume" && !ASSUMPTIONS.contains(&c.args[1].text.as_str()) {
        return Err(c.args[1].err(format!("unknown assumption {}", c.args[1].text)));
    }
    if let Some(d) = c.get("detail") {
        if d != "full" && d != "zero" {
            return Err(c.kv["detail"].err("detail is full or zero"));
        }
    }
    Ok(())
}

/// Object names used by checks must be defined; `celwag` needs a prior
/// integrally closed assumption on its ideal.
fn validate_refs(sc: &Scenario) -> Result<()> {
    let defined = |n: &str| sc.objects.iter().any(|o| o.name == n);
    let mut assumed: Vec<String> = Vec::new();
    for c in &sc.checks {
        let refs: &[usize] = match c.name.as_str() {
            "cm_type" => &[],
            "ext" | "tor" | "exactness" => &[0, 1],
            "lhom" | "colon" | "assume" => &[0, 1],
            _ => &[0],
        };
        for &k in refs {
            if c.name == "assume" && k == 1 {
                continue;
            }
            let a = &c.args[k];
            if !defined(&a.text) {
                return Err(a.err(format!("undefined object {}", a.text)));
            }
        }
        if c.name == "assume" {
            assumed.push(c.args[0].text.clone());
        }
        if c.name == "celwag" && !assumed.contains(&c.args[0].text) {
            return Err(c.args[0].err(format!("celwag needs `assume {} integrally_closed` first", c.args[0].text)));
        }
    }
    Ok(())
}

fn ring_spec(kv: &BTreeMap<String, Located>) -> Result<RingSpec> {
    let field = match kv.get("field") {
        Some(l) => FieldSpec::parse(&l.text).ok_or_else(|| l.err("field is q or p:PRIME"))?,
        None => FieldSpec::Q,
    };
    let toric_flag = match kv.get("toric") {
        Some(l) => Some(match l.text.as_str() {
            "true" => true,
            "false" => false,
            _ => return Err(l.err("toric is true or false")),
        }),
        None => None,
    };
    let names = |l: &Located| -> Vec<String> { list_items(l).into_iter().map(|x| x.text).collect() };
    if let Some(sg) = kv.get("semigroup") {
        for k in ["vars", "weights", "relations"] {
            if let Some(l) = kv.get(k) {
                return Err(l.err(format!("{k} does not combine with semigroup")));
            }
        }
        let gens = list_items(sg)
            .iter()
            .map(|x| x.text.parse::<u32>().map_err(|_| x.err("semigroup generators are positive integers")))
            .collect::<Result<Vec<_>>>()?;
        let mut extra = Vec::new();
        if let Some(l) = kv.get("extra") {
            for it in list_items(l) {
                let (n, w) = match it.text.split_once(':') {
                    Some((n, w)) => (n.trim().to_string(), w.trim().parse::<i32>().map_err(|_| it.err("weight must be an integer"))?),
                    None => (it.text.clone(), 1),
                };
                extra.push((n, w));
            }
        }
        let nm = kv.get("names").map(names);
        return Ok(RingSpec { kind: RingKind::Semigroup { gens, extra, names: nm }, field, toric: toric_flag.unwrap_or(true) });
    }
    let Some(vl) = kv.get("vars") else {
        return Err(Error::Parse { line: 1, col: 1, msg: "ring section needs semigroup or vars".into() });
    };
    for k in ["extra", "names"] {
        if let Some(l) = kv.get(k) {
            return Err(l.err(format!("{k} only applies to semigroup rings")));
        }
    }
    let vars = names(vl);
    let weights = match kv.get("weights") {
        Some(l) => list_items(l).iter().map(|x| x.text.parse::<i32>().map_err(|_| x.err("weights are integers"))).collect::<Result<Vec<_>>>()?,
        None => vec![1; vars.len()],
    };
    if weights.len() != vars.len() {
        return Err(kv.get("weights").unwrap().err("one weight per variable"));
    }
    let relations = kv.get("relations").map(list_items).unwrap_or_default();
    Ok(RingSpec { kind: RingKind::Explicit { vars, weights, relations }, field, toric: toric_flag.unwrap_or(false) })
}

/// Loads and runs a scenario; `field` overrides the file's field.
pub fn run_scenario(text: &str, name: &str, field: Option<FieldSpec>) -> Result<Report> {
    let mut sc = load(text, name)?;
    if let Some(f) = field {
        sc.ring.field = f;
    }
    match sc.ring.field {
        FieldSpec::Q => eval::run(&sc, Q),
        FieldSpec::P(p) => eval::run(&sc, Fp::new(p).unwrap()),
    }
}

/// Ring data for a scenario file: presentation, Hilbert function up to
/// `degrees`, and semigroup invariants when the ring is a semigroup ring.
pub fn ring_summary(text: &str, name: &str, field: Option<FieldSpec>, degrees: usize) -> Result<serde_json::Value> {
    let mut sc = load(text, name)?;
    if let Some(f) = field {
        sc.ring.field = f;
    }
    match sc.ring.field {
        FieldSpec::Q => eval::ring_info(&sc, Q, degrees),
        FieldSpec::P(p) => eval::ring_info(&sc, Fp::new(p).unwrap(), degrees),
    }
}
