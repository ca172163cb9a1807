//! Line-oriented text format for surface/divisor/plan descriptions.
//!
//! A document is a sequence of blocks:
//!
//! ```text
//! surface {
//!   basis f c
//!   gram 0 1
//!   gram 1 0
//!   canonical 2 2
//!   q 4
//!   kodaira 2
//!   minimal true
//!   pg 4            # optional
//!   product true    # optional
//!   h0 1 1 = 2      # optional, repeatable: class = dimension
//! }
//! curve f {
//!   class 1 0
//!   irreducible true
//!   reduced true
//! }
//! divisor L 1 1
//! configuration {
//!   component f 1
//!   cluster p {
//!     on f
//!     at f c 1
//!   }
//! }
//! plan {
//!   event e1 {
//!     center point p
//!     pass f 1
//!     exc e0
//!   }
//! }
//! declare {
//!   nef true
//!   big true
//!   h0 2
//!   l-minimal true
//! }
//! ```
//!
//! `#` starts a comment; integers only, no floats.

use std::fmt;

use qpsurf_core::{
    BlowupEvent, BlowupPlan, Center, Configuration, CurveId, CurveRecord, Declarations,
    DivisorClass, Error, EventId, KodairaDim, PointCluster, PointId, SurfaceData, SurfaceModel,
};

/// A diagnostic anchored to the 1-based source line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SurfaceSpec {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub q: i64,
    pub kodaira: i64,
    pub minimal: bool,
    pub pg: Option<i64>,
    pub product: bool,
    pub h0: Vec<(Vec<i64>, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub id: String,
    pub class: Vec<i64>,
    pub irreducible: bool,
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterSpec {
    pub id: String,
    pub on: Vec<String>,
    pub at: Vec<(String, String, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConfigSpec {
    pub components: Vec<(String, i64)>,
    pub clusters: Vec<ClusterSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterSpec {
    Point(String),
    Near(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSpec {
    pub id: String,
    pub center: CenterSpec,
    pub pass: Vec<(String, i64)>,
    pub exc: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeclSpec {
    pub nef: Option<bool>,
    pub big: Option<bool>,
    pub h0: Option<i64>,
    pub l_minimal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InputDocument {
    pub surface: SurfaceSpec,
    pub curves: Vec<CurveSpec>,
    pub divisor: Option<(String, Vec<i64>)>,
    pub configuration: Option<ConfigSpec>,
    pub plan: Option<Vec<EventSpec>>,
    pub declare: DeclSpec,
}

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    at: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            items.push((i + 1, line.split_whitespace().collect()));
        }
        Lines { items, at: 0 }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.items.get(self.at)
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.at).cloned();
        self.at += 1;
        item
    }

    fn last_line(&self) -> usize {
        self.items.last().map(|(n, _)| *n).unwrap_or(0)
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn parse_int(line: usize, tok: &str) -> Result<i64, ParseError> {
    tok.parse::<i64>()
        .map_err(|_| ParseError {
            line,
            message: format!("expected an integer, got `{tok}`"),
        })
}

fn parse_ints(line: usize, toks: &[&str]) -> Result<Vec<i64>, ParseError> {
    toks.iter().map(|t| parse_int(line, t)).collect()
}

fn parse_bool(line: usize, tok: &str) -> Result<bool, ParseError> {
    match tok {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => err(line, format!("expected true or false, got `{tok}`")),
    }
}

fn expect_open(lines: &mut Lines, opened: bool, what: &str) -> Result<(), ParseError> {
    if opened {
        return Ok(());
    }
    match lines.next() {
        Some((_, toks)) if toks == ["{"] => Ok(()),
        Some((n, _)) => err(n, format!("expected `{{` to open the {what} block")),
        None => err(0, format!("unexpected end of file in {what} block")),
    }
}

/// Strip a trailing `{` from a block header line.
fn split_head<'a>(toks: &'a [&'a str]) -> (&'a [&'a str], bool) {
    if toks.last() == Some(&"{") {
        (&toks[..toks.len() - 1], true)
    } else {
        (toks, false)
    }
}

/// Block bodies end at a bare `}`; each call parses one `key args...` line.
fn parse_block<F>(lines: &mut Lines, what: &str, mut on_line: F) -> Result<(), ParseError>
where
    F: FnMut(usize, &[&str]) -> Result<(), ParseError>,
{
    loop {
        match lines.next() {
            Some((_, toks)) if toks == ["}"] => return Ok(()),
            Some((n, toks)) => on_line(n, &toks)?,
            None => return err(lines.last_line(), format!("unclosed {what} block")),
        }
    }
}

fn parse_surface(lines: &mut Lines, opened: bool) -> Result<SurfaceSpec, ParseError> {
    let mut s = SurfaceSpec::default();
    let mut saw = (false, false, false, false); // q, kodaira, minimal, canonical
    expect_open(lines, opened, "surface")?;
    parse_block(lines, "surface", |n, toks| match toks[0] {
        "basis" => {
            s.basis = toks[1..].iter().map(|t| t.to_string()).collect();
            if s.basis.is_empty() {
                return err(n, "basis needs at least one name");
            }
            Ok(())
        }
        "gram" => {
            s.gram.push(parse_ints(n, &toks[1..])?);
            Ok(())
        }
        "canonical" => {
            s.canonical = parse_ints(n, &toks[1..])?;
            saw.3 = true;
            Ok(())
        }
        "q" if toks.len() == 2 => {
            s.q = parse_int(n, toks[1])?;
            saw.0 = true;
            Ok(())
        }
        "kodaira" if toks.len() == 2 => {
            s.kodaira = parse_int(n, toks[1])?;
            saw.1 = true;
            Ok(())
        }
        "minimal" if toks.len() == 2 => {
            s.minimal = parse_bool(n, toks[1])?;
            saw.2 = true;
            Ok(())
        }
        "pg" if toks.len() == 2 => {
            s.pg = Some(parse_int(n, toks[1])?);
            Ok(())
        }
        "product" if toks.len() == 2 => {
            s.product = parse_bool(n, toks[1])?;
            Ok(())
        }
        "h0" => {
            let eq = toks.iter().position(|t| *t == "=");
            let Some(eq) = eq else {
                return err(n, "h0 line needs the form `h0 <class> = <dim>`");
            };
            if eq + 2 != toks.len() {
                return err(n, "h0 line needs exactly one value after `=`");
            }
            let class = parse_ints(n, &toks[1..eq])?;
            let dim = parse_int(n, toks[eq + 1])?;
            s.h0.push((class, dim));
            Ok(())
        }
        other => err(n, format!("unknown surface key `{other}`")),
    })?;
    let end = lines.last_line();
    if s.basis.is_empty() {
        return err(end, "surface block is missing `basis`");
    }
    if s.gram.len() != s.basis.len() {
        return err(
            end,
            format!(
                "surface gram has {} rows but the basis has {} names",
                s.gram.len(),
                s.basis.len()
            ),
        );
    }
    for (what, seen) in [
        ("q", saw.0),
        ("kodaira", saw.1),
        ("minimal", saw.2),
        ("canonical", saw.3),
    ] {
        if !seen {
            return err(end, format!("surface block is missing `{what}`"));
        }
    }
    Ok(s)
}

fn parse_curve(lines: &mut Lines, opened: bool, id: &str, head: usize) -> Result<CurveSpec, ParseError> {
    let mut c = CurveSpec {
        id: id.to_string(),
        class: Vec::new(),
        irreducible: true,
        reduced: true,
    };
    expect_open(lines, opened, "curve")?;
    parse_block(lines, "curve", |n, toks| match toks[0] {
        "class" => {
            c.class = parse_ints(n, &toks[1..])?;
            Ok(())
        }
        "irreducible" if toks.len() == 2 => {
            c.irreducible = parse_bool(n, toks[1])?;
            Ok(())
        }
        "reduced" if toks.len() == 2 => {
            c.reduced = parse_bool(n, toks[1])?;
            Ok(())
        }
        other => err(n, format!("unknown curve key `{other}`")),
    })?;
    if c.class.is_empty() {
        return err(head, format!("curve {id} is missing `class`"));
    }
    Ok(c)
}

fn parse_cluster(lines: &mut Lines, opened: bool, id: &str) -> Result<ClusterSpec, ParseError> {
    let mut cl = ClusterSpec {
        id: id.to_string(),
        on: Vec::new(),
        at: Vec::new(),
    };
    expect_open(lines, opened, "cluster")?;
    parse_block(lines, "cluster", |n, toks| match toks[0] {
        "on" if toks.len() == 2 => {
            cl.on.push(toks[1].to_string());
            Ok(())
        }
        "at" if toks.len() == 4 => {
            cl.at
                .push((toks[1].to_string(), toks[2].to_string(), parse_int(n, toks[3])?));
            Ok(())
        }
        other => err(n, format!("unknown cluster key `{other}`")),
    })?;
    Ok(cl)
}

fn parse_configuration(lines: &mut Lines, opened: bool) -> Result<ConfigSpec, ParseError> {
    let mut cfg = ConfigSpec::default();
    expect_open(lines, opened, "configuration")?;
    loop {
        match lines.next() {
            Some((_, toks)) if toks == ["}"] => return Ok(cfg),
            Some((n, toks)) => match toks[0] {
                "component" if toks.len() == 3 => {
                    cfg.components
                        .push((toks[1].to_string(), parse_int(n, toks[2])?));
                }
                "cluster" => {
                    let (head, opened) = split_head(&toks);
                    if head.len() != 2 {
                        return err(n, "cluster needs exactly one name");
                    }
                    cfg.clusters.push(parse_cluster(lines, opened, head[1])?);
                }
                other => return err(n, format!("unknown configuration key `{other}`")),
            },
            None => return err(lines.last_line(), "unclosed configuration block"),
        }
    }
}

fn parse_event(lines: &mut Lines, opened: bool, id: &str, head: usize) -> Result<EventSpec, ParseError> {
    let mut center = None;
    let mut pass = Vec::new();
    let mut exc = Vec::new();
    expect_open(lines, opened, "event")?;
    parse_block(lines, "event", |n, toks| match toks[0] {
        "center" if toks.len() == 3 && toks[1] == "point" => {
            center = Some(CenterSpec::Point(toks[2].to_string()));
            Ok(())
        }
        "center" if toks.len() == 3 && toks[1] == "near" => {
            center = Some(CenterSpec::Near(toks[2].to_string()));
            Ok(())
        }
        "pass" if toks.len() == 3 => {
            pass.push((toks[1].to_string(), parse_int(n, toks[2])?));
            Ok(())
        }
        "exc" if toks.len() == 2 => {
            exc.push(toks[1].to_string());
            Ok(())
        }
        other => err(n, format!("unknown event key `{other}`")),
    })?;
    let Some(center) = center else {
        return err(head, format!("event {id} is missing `center`"));
    };
    Ok(EventSpec {
        id: id.to_string(),
        center,
        pass,
        exc,
    })
}

fn parse_plan(lines: &mut Lines, opened: bool) -> Result<Vec<EventSpec>, ParseError> {
    let mut events = Vec::new();
    expect_open(lines, opened, "plan")?;
    loop {
        match lines.next() {
            Some((_, toks)) if toks == ["}"] => return Ok(events),
            Some((n, toks)) if toks[0] == "event" => {
                let (head, opened) = split_head(&toks);
                if head.len() != 2 {
                    return err(n, "event needs exactly one name");
                }
                events.push(parse_event(lines, opened, head[1], n)?);
            }
            Some((n, toks)) => return err(n, format!("unknown plan key `{}`", toks[0])),
            None => return err(lines.last_line(), "unclosed plan block"),
        }
    }
}

fn parse_declare(lines: &mut Lines, opened: bool) -> Result<DeclSpec, ParseError> {
    let mut d = DeclSpec::default();
    expect_open(lines, opened, "declare")?;
    parse_block(lines, "declare", |n, toks| match toks[0] {
        "nef" if toks.len() == 2 => {
            d.nef = Some(parse_bool(n, toks[1])?);
            Ok(())
        }
        "big" if toks.len() == 2 => {
            d.big = Some(parse_bool(n, toks[1])?);
            Ok(())
        }
        "h0" if toks.len() == 2 => {
            d.h0 = Some(parse_int(n, toks[1])?);
            Ok(())
        }
        "l-minimal" if toks.len() == 2 => {
            d.l_minimal = Some(parse_bool(n, toks[1])?);
            Ok(())
        }
        other => err(n, format!("unknown declare key `{other}`")),
    })?;
    Ok(d)
}

pub fn parse_document(text: &str) -> Result<InputDocument, ParseError> {
    let mut lines = Lines::new(text);
    let mut doc = InputDocument::default();
    let mut saw_surface = false;
    while let Some((n, toks)) = lines.peek().cloned() {
        lines.next();
        let (head, opened) = split_head(&toks);
        match head[0] {
            "surface" if head.len() == 1 => {
                doc.surface = parse_surface(&mut lines, opened)?;
                saw_surface = true;
            }
            "curve" if head.len() == 2 => {
                doc.curves.push(parse_curve(&mut lines, opened, head[1], n)?);
            }
            "divisor" if head.len() >= 3 && !opened => {
                doc.divisor = Some((head[1].to_string(), parse_ints(n, &head[2..])?));
            }
            "configuration" if head.len() == 1 => {
                doc.configuration = Some(parse_configuration(&mut lines, opened)?);
            }
            "plan" if head.len() == 1 => {
                doc.plan = Some(parse_plan(&mut lines, opened)?);
            }
            "declare" if head.len() == 1 => {
                doc.declare = parse_declare(&mut lines, opened)?;
            }
            other => return err(n, format!("unknown block `{other}`")),
        }
    }
    if !saw_surface {
        return err(lines.last_line(), "document has no surface block");
    }
    Ok(doc)
}

fn join(v: &[i64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Canonical serialization; `parse_document` of the result reproduces the
/// document exactly.
pub fn serialize_document(doc: &InputDocument) -> String {
    let mut out = String::new();
    let s = &doc.surface;
    out.push_str("surface {\n");
    out.push_str(&format!("  basis {}\n", s.basis.join(" ")));
    for row in &s.gram {
        out.push_str(&format!("  gram {}\n", join(row)));
    }
    out.push_str(&format!("  canonical {}\n", join(&s.canonical)));
    out.push_str(&format!("  q {}\n  kodaira {}\n  minimal {}\n", s.q, s.kodaira, s.minimal));
    if let Some(pg) = s.pg {
        out.push_str(&format!("  pg {pg}\n"));
    }
    if s.product {
        out.push_str("  product true\n");
    }
    for (class, dim) in &s.h0 {
        out.push_str(&format!("  h0 {} = {dim}\n", join(class)));
    }
    out.push_str("}\n");
    for c in &doc.curves {
        out.push_str(&format!(
            "curve {} {{\n  class {}\n  irreducible {}\n  reduced {}\n}}\n",
            c.id,
            join(&c.class),
            c.irreducible,
            c.reduced
        ));
    }
    if let Some((name, class)) = &doc.divisor {
        out.push_str(&format!("divisor {name} {}\n", join(class)));
    }
    if let Some(cfg) = &doc.configuration {
        out.push_str("configuration {\n");
        for (id, r) in &cfg.components {
            out.push_str(&format!("  component {id} {r}\n"));
        }
        for cl in &cfg.clusters {
            out.push_str(&format!("  cluster {} {{\n", cl.id));
            for c in &cl.on {
                out.push_str(&format!("    on {c}\n"));
            }
            for (a, b, m) in &cl.at {
                out.push_str(&format!("    at {a} {b} {m}\n"));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    if let Some(events) = &doc.plan {
        out.push_str("plan {\n");
        for e in events {
            out.push_str(&format!("  event {} {{\n", e.id));
            match &e.center {
                CenterSpec::Point(p) => out.push_str(&format!("    center point {p}\n")),
                CenterSpec::Near(h) => out.push_str(&format!("    center near {h}\n")),
            }
            for (c, m) in &e.pass {
                out.push_str(&format!("    pass {c} {m}\n"));
            }
            for x in &e.exc {
                out.push_str(&format!("    exc {x}\n"));
            }
            out.push_str("  }\n");
        }
        out.push_str("}\n");
    }
    let d = &doc.declare;
    if d.nef.is_some() || d.big.is_some() || d.h0.is_some() || d.l_minimal.is_some() {
        out.push_str("declare {\n");
        if let Some(v) = d.nef {
            out.push_str(&format!("  nef {v}\n"));
        }
        if let Some(v) = d.big {
            out.push_str(&format!("  big {v}\n"));
        }
        if let Some(v) = d.h0 {
            out.push_str(&format!("  h0 {v}\n"));
        }
        if let Some(v) = d.l_minimal {
            out.push_str(&format!("  l-minimal {v}\n"));
        }
        out.push_str("}\n");
    }
    out
}

impl InputDocument {
    /// Realize the surface block (and curve blocks) as a lattice model.
    pub fn to_model(&self) -> Result<SurfaceModel, Error> {
        let s = &self.surface;
        let kodaira = match s.kodaira {
            0 => KodairaDim::Zero,
            1 => KodairaDim::One,
            2 => KodairaDim::Two,
            k => {
                return Err(Error::UnsupportedModel(format!(
                    "kodaira dimension {k} is outside {{0, 1, 2}}"
                )))
            }
        };
        let curves = self
            .curves
            .iter()
            .map(|c| CurveRecord {
                id: CurveId::new(c.id.clone()),
                class: DivisorClass::new(c.class.clone()),
                irreducible: c.irreducible,
                reduced: c.reduced,
            })
            .collect();
        SurfaceModel::new(SurfaceData {
            gram: s.gram.clone(),
            canonical: DivisorClass::new(s.canonical.clone()),
            irregularity: s.q,
            kodaira,
            minimal: s.minimal,
            geom_genus: s.pg,
            is_curve_product: s.product,
            curves,
            h0: s
                .h0
                .iter()
                .map(|(class, dim)| (DivisorClass::new(class.clone()), *dim))
                .collect(),
        })
    }

    /// Realize the configuration block against a realized model.
    pub fn to_configuration(&self, model: &SurfaceModel) -> Result<Option<Configuration>, Error> {
        let Some(cfg) = &self.configuration else {
            return Ok(None);
        };
        let mut components = Vec::new();
        for (id, r) in &cfg.components {
            let rec = model.curve(&CurveId::new(id.clone())).ok_or_else(|| {
                Error::ModelInconsistency(format!("configuration references unknown curve {id}"))
            })?;
            components.push((rec.clone(), *r));
        }
        let clusters = cfg
            .clusters
            .iter()
            .map(|cl| {
                let mut participants: Vec<CurveId> =
                    cl.on.iter().map(|c| CurveId::new(c.clone())).collect();
                for (a, b, _) in &cl.at {
                    for c in [a, b] {
                        let id = CurveId::new(c.clone());
                        if !participants.contains(&id) {
                            participants.push(id);
                        }
                    }
                }
                PointCluster {
                    id: PointId::new(cl.id.clone()),
                    participants,
                    pair_mults: cl
                        .at
                        .iter()
                        .map(|(a, b, m)| (CurveId::new(a.clone()), CurveId::new(b.clone()), *m))
                        .collect(),
                }
            })
            .collect();
        Configuration::new(model.clone(), components, clusters).map(Some)
    }

    /// Realize the plan block against a realized configuration.
    pub fn to_plan(&self, cfg: &Configuration) -> Result<Option<BlowupPlan>, Error> {
        let Some(events) = &self.plan else {
            return Ok(None);
        };
        let events = events
            .iter()
            .map(|e| BlowupEvent {
                id: EventId::new(e.id.clone()),
                center: match &e.center {
                    CenterSpec::Point(p) => Center::Point(PointId::new(p.clone())),
                    CenterSpec::Near(h) => Center::InfinitelyNear(EventId::new(h.clone())),
                },
                passing: e
                    .pass
                    .iter()
                    .map(|(c, m)| (CurveId::new(c.clone()), *m))
                    .collect(),
                exc_passing: e.exc.iter().map(|x| EventId::new(x.clone())).collect(),
            })
            .collect();
        Ok(Some(BlowupPlan {
            base: cfg.clone(),
            events,
        }))
    }

    pub fn declarations(&self) -> Declarations {
        Declarations {
            nef: self.declare.nef,
            big: self.declare.big,
            h0: self.declare.h0,
            l_minimal: self.declare.l_minimal,
        }
    }

    /// The divisor block as a class, falling back to the configuration's
    /// total class when no divisor is given.
    pub fn divisor_class(&self) -> Option<DivisorClass> {
        self.divisor
            .as_ref()
            .map(|(_, class)| DivisorClass::new(class.clone()))
    }
}
