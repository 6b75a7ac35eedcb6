//! Batch front end: a small session language for rings, gradings, ideals and
//! points, and the dispatch of subcommands to the library.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cone::{
    linear_part, make_homogeneous_ideal, minimal_embedding, singular_locus_ideal, smooth_at_origin,
    HomogeneousIdeal,
};
use crate::error::{Error, Result};
use crate::grading::{homogeneous_components, induced_term_order, Degree, GradingMap};
use crate::ideal::{krull_dimension, IdealPresentation};
use crate::poly::parse_polynomial_at;
use crate::poly::{format_rational, Polynomial, Ring, TermOrder};
use crate::strata::{reduced_stratum, MonomialIdealSpec, TailMode};
use crate::torus::{
    cross_section, find_one_dim_orbit, low_orbit_stratum, max_orbit_dimension, orbit_closure_ideal,
    orbit_dimension, rational_curve_through, RationalPoint,
};

/// A parsed input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionInput {
    pub ring: Arc<Ring>,
    /// `λ(y_i)` per variable; `None` means the standard grading.
    pub grading: Option<Vec<Vec<i64>>>,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub points: Vec<(String, RationalPoint)>,
}

impl SessionInput {
    pub fn grading_map(&self) -> Result<GradingMap> {
        match &self.grading {
            None => Ok(GradingMap::standard(&self.ring)),
            Some(cols) => {
                let rank = cols.first().map_or(0, Vec::len);
                GradingMap::new(&self.ring, rank, cols.clone())
            }
        }
    }

    pub fn ideal(&self, name: &str) -> Option<&[Polynomial]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }

    pub fn point(&self, name: &str) -> Option<&RationalPoint> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

impl fmt::Display for SessionInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {};", self.ring.names().join(" "))?;
        if let Some(cols) = &self.grading {
            writeln!(f, "grading {};", serde_json::to_string(cols).map_err(|_| fmt::Error)?)?;
        }
        for (name, gens) in &self.ideals {
            let body: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            writeln!(f, "ideal {name} = {};", body.join(", "))?;
        }
        for (name, p) in &self.points {
            writeln!(f, "point {name} = {p};")?;
        }
        Ok(())
    }
}

/// Source text with comments blanked out and a position for every char.
struct Source {
    chars: Vec<char>,
    pos: Vec<(usize, usize)>,
    end: (usize, usize),
}

impl Source {
    fn new(text: &str) -> Self {
        let mut chars = Vec::new();
        let mut pos = Vec::new();
        let (mut line, mut col) = (1, 1);
        let mut in_comment = false;
        for c in text.chars() {
            if c == '#' {
                in_comment = true;
            }
            if c == '\n' {
                in_comment = false;
            }
            chars.push(if in_comment { ' ' } else { c });
            pos.push((line, col));
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Source {
            chars,
            pos,
            end: (line, col),
        }
    }

    fn at(&self, i: usize) -> (usize, usize) {
        self.pos.get(i).copied().unwrap_or(self.end)
    }

    fn text(&self, a: usize, b: usize) -> String {
        self.chars[a..b].iter().collect()
    }

    fn skip_ws(&self, mut i: usize, end: usize) -> usize {
        while i < end && self.chars[i].is_whitespace() {
            i += 1;
        }
        i
    }

    fn ident(&self, i: usize, end: usize) -> usize {
        let mut j = i;
        while j < end && (self.chars[j].is_alphanumeric() || self.chars[j] == '_') {
            j += 1;
        }
        j
    }

    fn error(&self, i: usize, msg: impl Into<String>) -> Error {
        let (l, c) = self.at(i);
        Error::parse(l, c, msg)
    }

    /// Top-level comma-separated pieces of `[a, b)`.
    fn split_commas(&self, a: usize, b: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut depth = 0i32;
        let mut start = a;
        for i in a..b {
            match self.chars[i] {
                '(' | '[' => depth += 1,
                ')' | ']' => depth -= 1,
                ',' if depth == 0 => {
                    out.push((start, i));
                    start = i + 1;
                }
                _ => {}
            }
        }
        out.push((start, b));
        out
    }
}

pub fn parse_session(text: &str) -> Result<SessionInput> {
    let src = Source::new(text);
    let n = src.chars.len();
    let mut ring: Option<Arc<Ring>> = None;
    let mut grading = None;
    let mut ideals: Vec<(String, Vec<Polynomial>)> = Vec::new();
    let mut points: Vec<(String, RationalPoint)> = Vec::new();

    let mut i = 0;
    loop {
        i = src.skip_ws(i, n);
        if i >= n {
            break;
        }
        let Some(end) = (i..n).find(|&k| src.chars[k] == ';') else {
            return Err(src.error(n, "missing ';' at end of statement"));
        };
        let kw_end = src.ident(i, end);
        let keyword = src.text(i, kw_end);
        match keyword.as_str() {
            "ring" => {
                if ring.is_some() {
                    return Err(src.error(i, "ring declared twice"));
                }
                let mut names: Vec<String> = Vec::new();
                let mut k = kw_end;
                loop {
                    k = src.skip_ws(k, end);
                    if k < end && src.chars[k] == ',' {
                        k += 1;
                        continue;
                    }
                    if k >= end {
                        break;
                    }
                    let e = src.ident(k, end);
                    if e == k || !src.chars[k].is_alphabetic() {
                        return Err(src.error(k, "expected a variable name"));
                    }
                    let name = src.text(k, e);
                    if names.contains(&name) {
                        return Err(src.error(k, format!("variable {name} declared twice")));
                    }
                    names.push(name);
                    k = e;
                }
                ring = Some(Ring::new(names));
            }
            "grading" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| src.error(i, "grading before ring declaration"))?;
                let body = src.skip_ws(kw_end, end);
                let cols = crate::grading::parse_columns(src.text(body, end).trim())
                    .map_err(|e| src.error(body, format!("bad grading: {e}")))?;
                if cols.len() != r.nvars() {
                    return Err(src.error(
                        body,
                        format!("grading has {} columns for {} variables", cols.len(), r.nvars()),
                    ));
                }
                if let Some(first) = cols.first() {
                    if cols.iter().any(|c| c.len() != first.len()) {
                        return Err(src.error(body, "degree vectors of different lengths"));
                    }
                }
                grading = Some(cols);
            }
            "ideal" | "point" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| src.error(i, format!("{keyword} before ring declaration")))?;
                let name_start = src.skip_ws(kw_end, end);
                let name_end = src.ident(name_start, end);
                if name_end == name_start {
                    return Err(src.error(name_start, format!("expected a name after '{keyword}'")));
                }
                let name = src.text(name_start, name_end);
                if ideals.iter().any(|(n, _)| *n == name) || points.iter().any(|(n, _)| *n == name) {
                    return Err(src.error(name_start, format!("name {name} declared twice")));
                }
                let eq = src.skip_ws(name_end, end);
                if eq >= end || src.chars[eq] != '=' {
                    return Err(src.error(eq, "expected '='"));
                }
                let body = src.skip_ws(eq + 1, end);
                if keyword == "ideal" {
                    let mut gens = Vec::new();
                    if body < end {
                        for (a, b) in src.split_commas(body, end) {
                            let (l, c) = src.at(a);
                            gens.push(parse_polynomial_at(&src.text(a, b), r, l, c)?);
                        }
                    }
                    ideals.push((name, gens));
                } else {
                    let close = (body..end).rev().find(|&k| !src.chars[k].is_whitespace());
                    if body >= end || src.chars[body] != '(' || close.map(|k| src.chars[k]) != Some(')') {
                        return Err(src.error(body, "expected a point '(a1, ..., as)'"));
                    }
                    let close = close.expect("checked");
                    let empty = Ring::new(Vec::<String>::new());
                    let mut coords = Vec::new();
                    if src.skip_ws(body + 1, close) < close {
                        for (a, b) in src.split_commas(body + 1, close) {
                            let (l, c) = src.at(a);
                            coords.push(parse_polynomial_at(&src.text(a, b), &empty, l, c)?.constant_term());
                        }
                    }
                    if coords.len() != r.nvars() {
                        return Err(src.error(
                            body,
                            format!("point has {} coordinates for {} variables", coords.len(), r.nvars()),
                        ));
                    }
                    points.push((name, RationalPoint::new(coords)));
                }
            }
            "" => return Err(src.error(i, "expected a statement")),
            other => return Err(src.error(i, format!("unknown statement '{other}'"))),
        }
        i = end + 1;
    }
    let ring = ring.ok_or_else(|| Error::parse(1, 1, "missing ring declaration"))?;
    Ok(SessionInput {
        ring,
        grading,
        ideals,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Check,
    Decompose,
    Embed,
    Smooth,
    Singular,
    OrbitDim,
    OrbitClosure,
    StratumMu,
    CrossSection,
    Curve,
    OneDimOrbit,
    Stratum,
    Gb,
    Dim,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Decompose => "decompose",
            Command::Embed => "embed",
            Command::Smooth => "smooth",
            Command::Singular => "singular",
            Command::OrbitDim => "orbit-dim",
            Command::OrbitClosure => "orbit-closure",
            Command::StratumMu => "stratum-mu",
            Command::CrossSection => "cross-section",
            Command::Curve => "curve",
            Command::OneDimOrbit => "one-dim-orbit",
            Command::Stratum => "stratum",
            Command::Gb => "gb",
            Command::Dim => "dim",
        }
    }
}

/// Flags shared by all subcommands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    /// `lex`, `degrevlex` or `weighted`.
    pub order: Option<String>,
    /// Name of the ideal to use; defaults to the first one declared.
    pub ideal: Option<String>,
    /// A point name or a literal `(a1, ..., as)`.
    pub point: Option<String>,
    pub mu: Option<usize>,
    /// Comma- or space-separated variable names.
    pub vars: Option<String>,
    pub kept: Option<String>,
    /// `homogeneous` or `full`.
    pub mode: Option<String>,
    pub json: bool,
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Rejected,
    ParseError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Rejected => 1,
            Status::ParseError => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub result: Value,
    pub diagnostics: Vec<String>,
    /// Wall time in microseconds, only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_us: Option<u64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_human(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, status_word(self.status));
        render(&self.result, 1, &mut out);
        for d in &self.diagnostics {
            out.push_str(&format!("  ! {d}\n"));
        }
        if let Some(t) = self.timing_us {
            out.push_str(&format!("  time: {t} us\n"));
        }
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Rejected => "rejected",
        Status::ParseError => "parse error",
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_))) => {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for x in items {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

/// Parses `text` and runs `cmd`; parse failures become a report too.
pub fn execute(text: &str, cmd: Command, opts: &Options) -> Report {
    let start = Instant::now();
    let mut report = match parse_session(text) {
        Ok(session) => run(cmd, &session, opts),
        Err(e) => failure(cmd, &e),
    };
    if opts.timing {
        report.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    report
}

fn failure(cmd: Command, e: &Error) -> Report {
    Report {
        command: cmd.name().into(),
        status: if e.is_parse() {
            Status::ParseError
        } else {
            Status::Rejected
        },
        result: Value::Null,
        diagnostics: vec![e.to_string()],
        timing_us: None,
    }
}

pub fn run(cmd: Command, session: &SessionInput, opts: &Options) -> Report {
    let ctx = Context { session, opts };
    match ctx.dispatch(cmd) {
        Ok((status, result, diagnostics)) => Report {
            command: cmd.name().into(),
            status,
            result,
            diagnostics,
            timing_us: None,
        },
        Err(e) => failure(cmd, &e),
    }
}

type Outcome = (Status, Value, Vec<String>);

fn ok(v: Value) -> Result<Outcome> {
    Ok((Status::Ok, v, Vec::new()))
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

struct Context<'a> {
    session: &'a SessionInput,
    opts: &'a Options,
}

impl Context<'_> {
    fn ring(&self) -> &Arc<Ring> {
        &self.session.ring
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.ring().name(i).to_string()).collect()
    }

    fn flag_error(&self, msg: impl Into<String>) -> Error {
        Error::parse(0, 0, msg)
    }

    fn ideal(&self) -> Result<IdealPresentation> {
        let gens = match &self.opts.ideal {
            Some(name) => self
                .session
                .ideal(name)
                .ok_or_else(|| self.flag_error(format!("undeclared ideal {name}")))?,
            None => self
                .session
                .ideals
                .first()
                .map(|(_, g)| g.as_slice())
                .ok_or_else(|| self.flag_error("no ideal declared"))?,
        };
        IdealPresentation::new(self.ring(), gens.to_vec())
    }

    fn grading(&self) -> Result<GradingMap> {
        self.session.grading_map()
    }

    fn homogeneous(&self) -> Result<HomogeneousIdeal> {
        make_homogeneous_ideal(&self.ideal()?, &self.grading()?)
    }

    fn point(&self) -> Result<RationalPoint> {
        let spec = self
            .opts
            .point
            .as_deref()
            .or_else(|| self.session.points.first().map(|(n, _)| n.as_str()))
            .ok_or_else(|| self.flag_error("no point given"))?;
        if let Some(p) = self.session.point(spec) {
            return Ok(p.clone());
        }
        if !spec.trim_start().starts_with('(') {
            return Err(self.flag_error(format!("undeclared point {spec}")));
        }
        let doc = format!("ring {};\npoint P = {spec};", self.ring().names().join(" "));
        let parsed = parse_session(&doc).map_err(|e| self.flag_error(format!("bad point {spec}: {e}")))?;
        Ok(parsed.points[0].1.clone())
    }

    fn variables(&self, text: Option<&str>, flag: &str) -> Result<Vec<usize>> {
        let text = text.ok_or_else(|| self.flag_error(format!("--{flag} is required")))?;
        text.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                self.ring()
                    .index_of(s)
                    .ok_or_else(|| self.flag_error(format!("undeclared variable {s}")))
            })
            .collect()
    }

    fn order(&self, default: &str) -> Result<TermOrder> {
        let name = self.opts.order.as_deref().unwrap_or(default);
        if name == "weighted" {
            let g = self.grading()?;
            let w = g.require_positive()?.clone();
            return induced_term_order(&g, &w, TermOrder::degrevlex());
        }
        TermOrder::from_name(name).ok_or_else(|| self.flag_error(format!("unknown term order {name}")))
    }

    fn dispatch(&self, cmd: Command) -> Result<Outcome> {
        match cmd {
            Command::Check => self.check(),
            Command::Decompose => self.decompose(),
            Command::Embed => self.embed(),
            Command::Smooth => {
                let r = smooth_at_origin(&self.homogeneous()?)?;
                ok(json!({
                    "smooth": r.smooth,
                    "dim_v": r.dim_v,
                    "dim_linear_part": r.dim_l,
                    "ambient": r.ambient,
                }))
            }
            Command::Singular => {
                let s = singular_locus_ideal(&self.homogeneous()?)?;
                let empty = s.is_empty()?;
                ok(json!({
                    "generators": strings(s.ideal.generators()),
                    "degrees": s.degrees,
                    "exact": s.exact,
                    "codimension": s.codimension,
                    "empty": empty,
                }))
            }
            Command::OrbitDim => {
                let info = orbit_dimension(&self.point()?, &self.grading()?)?;
                ok(json!({
                    "point": info.point.to_string(),
                    "support": self.names(&info.support),
                    "orbit_dimension": info.rank,
                }))
            }
            Command::OrbitClosure => {
                let p = self.point()?;
                let c = orbit_closure_ideal(&p, &self.grading()?)?;
                ok(json!({
                    "point": p.to_string(),
                    "generators": strings(c.generators()),
                    "degrees": c.degrees(),
                }))
            }
            Command::StratumMu => {
                let mu = self.opts.mu.ok_or_else(|| self.flag_error("--mu is required"))?;
                let u = low_orbit_stratum(&self.grading()?, mu)?;
                let comps: Vec<Value> = u
                    .components
                    .iter()
                    .map(|c| {
                        let zero: Vec<usize> = (0..self.ring().nvars()).filter(|i| !c.contains(i)).collect();
                        json!({ "nonzero": self.names(c), "vanishing": self.names(&zero) })
                    })
                    .collect();
                ok(json!({ "mu": mu, "components": comps }))
            }
            Command::CrossSection => {
                let a = self.homogeneous()?;
                let chosen = self.variables(self.opts.vars.as_deref(), "vars")?;
                let mu = max_orbit_dimension(&a)?;
                let chart = cross_section(&a, &chosen)?;
                ok(json!({
                    "max_orbit_dimension": mu,
                    "chosen": self.names(&chart.chosen),
                    "index": chart.index_r.to_string(),
                    "unique_intersection": chart.unique_intersection(),
                    "slice": strings(chart.slice_ideal.generators()),
                }))
            }
            Command::Curve => {
                let g = self.grading()?;
                let p = self.point()?;
                let c = rational_curve_through(&p, &g)?;
                let w = g.require_positive()?;
                let param: Vec<String> = (0..p.len())
                    .map(|i| format!("{} = {}*t^{}", self.ring().name(i), format_rational(&p.coords[i]), c.exponents[i]))
                    .collect();
                ok(json!({
                    "point": p.to_string(),
                    "omega": w.omega,
                    "exponents": c.exponents,
                    "parametrization": param,
                }))
            }
            Command::OneDimOrbit => {
                let a = self.homogeneous()?;
                let p = find_one_dim_orbit(&a)?;
                let info = orbit_dimension(&p, a.grading())?;
                ok(json!({ "point": p.to_string(), "support": self.names(&info.support) }))
            }
            Command::Stratum => self.stratum(),
            Command::Gb => {
                let order = self.order("degrevlex")?;
                let gb = self.ideal()?.groebner_basis(&order)?;
                let elems: Vec<String> = gb.elements().iter().map(|f| f.to_string_with(&order)).collect();
                ok(json!({ "order": order.to_string(), "basis": elems }))
            }
            Command::Dim => ok(json!({ "dimension": krull_dimension(&self.ideal()?)? })),
        }
    }

    fn check(&self) -> Result<Outcome> {
        let ideal = self.ideal()?;
        let g = self.grading()?;
        let mut degrees = Vec::new();
        let mut diagnostics = Vec::new();
        for f in ideal.generators() {
            let comps = homogeneous_components(f, &g)?;
            if comps.len() == 1 {
                degrees.push(json!(comps.keys().next().expect("one")));
            } else {
                degrees.push(Value::Null);
                let ds: Vec<String> = comps.keys().map(Degree::to_string).collect();
                diagnostics.push(
                    Error::NotHomogeneous {
                        generator: f.to_string(),
                        degrees: ds.join(", "),
                    }
                    .to_string(),
                );
            }
        }
        let homogeneous = diagnostics.is_empty();
        let positive = g.is_positive();
        if !positive {
            diagnostics.push("grading is not positive".into());
        }
        let status = if homogeneous && positive {
            Status::Ok
        } else {
            Status::Rejected
        };
        Ok((
            status,
            json!({
                "homogeneous": homogeneous,
                "degrees": degrees,
                "positivity": g.positivity(),
            }),
            diagnostics,
        ))
    }

    fn decompose(&self) -> Result<Outcome> {
        let g = self.grading()?;
        let mut out = Vec::new();
        for f in self.ideal()?.generators() {
            let comps: Vec<Value> = homogeneous_components(f, &g)?
                .iter()
                .map(|(d, p)| json!({ "degree": d, "component": p.to_string() }))
                .collect();
            out.push(json!({ "generator": f.to_string(), "components": comps }));
        }
        ok(json!({ "generators": out }))
    }

    fn embed(&self) -> Result<Outcome> {
        let a = self.homogeneous()?;
        let kept = match &self.opts.kept {
            Some(text) => Some(self.variables(Some(text), "kept")?),
            None => None,
        };
        let l = linear_part(&a);
        let e = minimal_embedding(&a, kept.as_deref())?;
        let subs: Vec<String> = e
            .substitution
            .iter()
            .map(|(p, q)| format!("{} = {}", self.ring().name(*p), q))
            .collect();
        ok(json!({
            "linear_part": strings(&l.forms),
            "kept": self.names(&e.kept),
            "eliminated": self.names(&e.eliminated),
            "substitution": subs,
            "embedded": strings(e.embedded.generators()),
            "tangent_dimension": e.tangent_dim,
        }))
    }

    fn stratum(&self) -> Result<Outcome> {
        let order = self.order("lex")?;
        let mode = match self.opts.mode.as_deref() {
            None => TailMode::default(),
            Some(m) => TailMode::from_name(m).ok_or_else(|| self.flag_error(format!("unknown mode {m}")))?,
        };
        let ideal = self.ideal()?;
        let mut monomials = Vec::new();
        for f in ideal.generators() {
            if !f.is_monomial() {
                return Err(Error::InvalidInput(format!("{f} is not a monomial")));
            }
            monomials.push(f.terms().next().expect("nonzero").0.clone());
        }
        let spec = MonomialIdealSpec::new(self.ring(), monomials, order)?;
        let r = reduced_stratum(&spec, mode)?;
        let x = self.ring();
        let cring = &r.scheme.coefficient_ring;
        let coefficients: Vec<Value> = r
            .scheme
            .coefficients
            .iter()
            .zip(r.scheme.coefficient_degrees())
            .enumerate()
            .map(|(k, (c, d))| {
                let head = Polynomial::term(x, spec.generators()[c.head].clone(), num_traits::One::one());
                let tail = Polynomial::term(x, c.tail.clone(), num_traits::One::one());
                json!({
                    "name": cring.name(k),
                    "head": head.to_string(),
                    "tail": tail.to_string(),
                    "degree": d,
                })
            })
            .collect();
        let reduced = r.reduced.as_ref().map(|e| {
            json!({
                "eliminated": e.eliminated.iter().map(|&i| cring.name(i).to_string()).collect::<Vec<_>>(),
                "kept": e.kept.iter().map(|&i| cring.name(i).to_string()).collect::<Vec<_>>(),
                "embedded": strings(e.embedded.generators()),
            })
        });
        let mut diagnostics = Vec::new();
        if reduced.is_none() {
            diagnostics.push("coefficient grading is not positive; stratum left unreduced".into());
        }
        Ok((
            Status::Ok,
            json!({
                "monomial_ideal": strings(&spec.generator_polynomials()),
                "mode": mode,
                "coefficients": coefficients,
                "grading": r.grading.matrix(),
                "stratum_ideal": strings(r.stratum_ideal.generators()),
                "positivity": r.positivity(),
                "reduced": reduced,
            }),
            diagnostics,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX: &str = "# weighted example\n\
        ring y1 y2 y3 y4;\n\
        grading [[1,2],[1,0],[0,1],[2,3]];\n\
        ideal F = y1^2*y2*y3 + y1*y4 + y2*y3^2*y4;\n\
        point P = (1, 1, 1, 1);\n";

    #[test]
    fn session_round_trip() {
        let s = parse_session(EX).unwrap();
        assert_eq!(s.ring.nvars(), 4);
        assert_eq!(s.ideals[0].1.len(), 1);
        let again = parse_session(&s.to_string()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn empty_ideal_body_is_zero() {
        let s = parse_session("ring a b; ideal Z = ;").unwrap();
        assert!(s.ideal("Z").unwrap().is_empty());
    }

    #[test]
    fn errors_have_positions() {
        match parse_session("ring y1 y2;\npoint P = (1, 2, 3);") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 11)),
            other => panic!("{other:?}"),
        }
        match parse_session("ring y1 y2;\nideal A = y1 + z;") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 16)),
            other => panic!("{other:?}"),
        }
        assert!(parse_session("ring y1; ideal A = y1").is_err());
        assert!(parse_session("ideal A = 1;").is_err());
        assert!(parse_session("ring y1; grading [1,2];").is_err());
    }

    fn exec(cmd: Command, opts: Options) -> Report {
        execute(EX, cmd, &opts)
    }

    #[test]
    fn check_reports_degree_and_witness() {
        let r = exec(Command::Check, Options::default());
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.result["degrees"][0], json!([3, 5]));
        assert_eq!(r.result["positivity"]["witness"]["omega"], json!([1, 1]));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn orbit_closure_command() {
        let r = exec(Command::OrbitClosure, Options::default());
        assert_eq!(r.result["generators"], json!(["y1 - y2*y3^2", "-y2^2*y3^3 + y4"]));
        let opts = Options {
            point: Some("(0, 1, 0, 0)".into()),
            ..Options::default()
        };
        assert_eq!(exec(Command::OrbitDim, opts).result["orbit_dimension"], json!(1));
    }

    #[test]
    fn exit_codes() {
        let zero = execute("ring a b c d; ideal Z = ;", Command::Dim, &Options::default());
        assert_eq!(zero.result["dimension"], json!(4));
        assert_eq!(zero.exit_code(), 0);
        let bad = execute("ring a b; ideal A = a + b^2;", Command::Check, &Options::default());
        assert_eq!(bad.exit_code(), 1);
        assert_eq!(execute("ring a; ideal A = b;", Command::Dim, &Options::default()).exit_code(), 2);
    }

    #[test]
    fn every_command_runs_on_the_example() {
        let opts = Options {
            mu: Some(1),
            vars: Some("y2,y3".into()),
            ..Options::default()
        };
        for cmd in [
            Command::Check,
            Command::Decompose,
            Command::Embed,
            Command::Smooth,
            Command::Singular,
            Command::OrbitDim,
            Command::OrbitClosure,
            Command::StratumMu,
            Command::CrossSection,
            Command::Curve,
            Command::OneDimOrbit,
            Command::Gb,
            Command::Dim,
        ] {
            let r = exec(cmd, opts.clone());
            assert_eq!(r.status, Status::Ok, "{}: {:?}", cmd.name(), r.diagnostics);
            assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
            assert_eq!(exec(cmd, opts.clone()).to_json(), r.to_json());
        }
    }

    #[test]
    fn stratum_command() {
        let r = execute("ring x y; ideal J = x^2, x*y;", Command::Stratum, &Options::default());
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.result["stratum_ideal"], json!(["C1 + C2^2"]));
        assert_eq!(r.result["reduced"]["kept"], json!(["C2"]));
        assert!(r.to_human().contains("C1 + C2^2"));
    }
}
