//! The scenario language: one declaration per line, `#` starts a comment.
//!
//! ```text
//! field p=2
//! quiver vertices=3
//! arrow a: 1 -> 2
//! relation a;b
//! bound 2
//! module S1 = simple 1
//! module A = sum [P1, P2, P3]
//! module X = matrices [1, 1, 0] { a = [[1]] }
//! subcat M = [S1]
//! universe = closure([S1, S2], cap=64)
//! side right
//! task verify-right
//! ```
//!
//! Vertices are numbered from 1. A path `a;b` traverses `a` and then `b`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{CliError, Result};

pub const DEFAULT_CLOSURE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    /// 1-based.
    pub source: usize,
    /// 1-based.
    pub target: usize,
}

/// `c1*p1 + c2*p2 + ...`, each path a list of arrow names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub terms: Vec<(i64, Vec<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleCtor {
    Simple(usize),
    Proj(usize),
    Inj(usize),
    Sum(Vec<String>),
    Matrices {
        dims: Vec<usize>,
        maps: Vec<(String, Vec<Vec<i64>>)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub ctor: ModuleCtor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcatDecl {
    pub name: String,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseDecl {
    List(Vec<String>),
    Closure { seeds: Vec<String>, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideSpec {
    Right,
    Left,
    Both,
}

impl SideSpec {
    pub fn name(self) -> &'static str {
        match self {
            SideSpec::Right => "right",
            SideSpec::Left => "left",
            SideSpec::Both => "both",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Rigid,
    Axioms,
    Star,
    VerifyRight,
    VerifyLeft,
    QuotientDims,
}

impl Task {
    pub const ALL: [Task; 6] = [
        Task::Rigid,
        Task::Axioms,
        Task::Star,
        Task::VerifyRight,
        Task::VerifyLeft,
        Task::QuotientDims,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Rigid => "rigid",
            Task::Axioms => "axioms",
            Task::Star => "star",
            Task::VerifyRight => "verify-right",
            Task::VerifyLeft => "verify-left",
            Task::QuotientDims => "quotient-dims",
        }
    }

    pub fn parse(s: &str) -> Option<Task> {
        Task::ALL.into_iter().find(|t| t.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub field: u32,
    pub vertices: usize,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<RelationDecl>,
    pub bound: Option<usize>,
    pub modules: Vec<ModuleDecl>,
    pub subcat: Option<SubcatDecl>,
    pub universe: Option<UniverseDecl>,
    pub side: SideSpec,
    pub tasks: Vec<Task>,
}

impl Scenario {
    pub fn module(&self, name: &str) -> Option<&ModuleDecl> {
        self.modules.iter().find(|m| m.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

const SYMBOLS: [&str; 14] = ["->", "=", ":", ";", ",", "[", "]", "{", "}", "(", ")", "+", "-", "*"];

fn lex(line: &str, lineno: usize) -> Result<Vec<Token>> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'' || (chars[i] == '-' && i + 1 < chars.len() && chars[i + 1].is_ascii_alphabetic() && i > start)) {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                col,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<i64>().map_err(|_| CliError::Parse {
                line: lineno,
                col,
                msg: format!("integer `{text}` is too large"),
                hint: "use a smaller number".into(),
            })?;
            out.push(Token { tok: Tok::Int(v), col });
            continue;
        }
        let rest: String = chars[i..].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                out.push(Token { tok: Tok::Sym(s), col });
                i += s.len();
            }
            None => {
                return Err(CliError::Parse {
                    line: lineno,
                    col,
                    msg: format!("unexpected character `{c}`"),
                    hint: "names are letters, digits, `_` and `'`; comments start with `#`".into(),
                })
            }
        }
    }
    Ok(out)
}

struct Line<'a> {
    toks: Vec<Token>,
    pos: usize,
    lineno: usize,
    len: usize,
    names: &'a BTreeSet<String>,
}

impl<'a> Line<'a> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len + 1, |t| t.col)
    }

    fn err(&self, msg: impl Into<String>, hint: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.lineno,
            col: self.col(),
            msg: msg.into(),
            hint: hint.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn describe(&self) -> String {
        match self.peek() {
            None => "end of line".into(),
            Some(Tok::Ident(s)) => format!("`{s}`"),
            Some(Tok::Int(v)) => format!("`{v}`"),
            Some(Tok::Sym(s)) => format!("`{s}`"),
        }
    }

    fn sym(&mut self, s: &'static str, hint: &str) -> Result<()> {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{s}`, found {}", self.describe()), hint))
        }
    }

    fn eat(&mut self, s: &'static str) -> bool {
        if self.peek() == Some(&Tok::Sym(s)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str, hint: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}, found {}", self.describe()), hint)),
        }
    }

    fn keyword(&mut self, kw: &str, hint: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected `{kw}`, found {}", self.describe()), hint)),
        }
    }

    fn int(&mut self, what: &str, hint: &str) -> Result<i64> {
        let neg = self.eat("-");
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.err(format!("expected {what}, found {}", self.describe()), hint)),
        }
    }

    fn count(&mut self, what: &str, hint: &str) -> Result<usize> {
        let col = self.col();
        let v = self.int(what, hint)?;
        usize::try_from(v).map_err(|_| CliError::Parse {
            line: self.lineno,
            col,
            msg: format!("{what} must not be negative"),
            hint: hint.into(),
        })
    }

    fn end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err(
                format!("unexpected {} after the declaration", self.describe()),
                "put one declaration per line",
            ))
        }
    }

    fn known_name(&mut self, hint: &str) -> Result<String> {
        let col = self.col();
        let name = self.ident("a module name", hint)?;
        if !self.names.contains(&name) {
            return Err(CliError::UnknownName {
                line: self.lineno,
                col,
                name,
                hint: "declare it with `module <Name> = ...` on an earlier line".into(),
            });
        }
        Ok(name)
    }

    fn name_list(&mut self) -> Result<Vec<String>> {
        let hint = "write a bracketed list such as `[S1, S2]`";
        self.sym("[", hint)?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.known_name(hint)?);
            if self.eat("]") {
                return Ok(out);
            }
            self.sym(",", hint)?;
        }
    }

    fn int_list(&mut self, hint: &str) -> Result<Vec<i64>> {
        self.sym("[", hint)?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.int("an integer", hint)?);
            if self.eat("]") {
                return Ok(out);
            }
            self.sym(",", hint)?;
        }
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>> {
        let hint = "write a matrix as a list of rows, e.g. `[[1, 0], [0, 1]]`";
        self.sym("[", hint)?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(rows);
        }
        loop {
            rows.push(self.int_list(hint)?);
            if self.eat("]") {
                return Ok(rows);
            }
            self.sym(",", hint)?;
        }
    }
}

struct Builder {
    field: Option<u32>,
    vertices: Option<usize>,
    arrows: Vec<ArrowDecl>,
    relations: Vec<RelationDecl>,
    bound: Option<usize>,
    modules: Vec<ModuleDecl>,
    subcat: Option<SubcatDecl>,
    universe: Option<UniverseDecl>,
    side: Option<SideSpec>,
    tasks: Vec<Task>,
    names: BTreeSet<String>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

const KEYWORDS: &str = "field, quiver, arrow, relation, bound, module, subcat, universe, side, task";

/// Parses a scenario. Errors carry the line and column and a hint.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut b = Builder {
        field: None,
        vertices: None,
        arrows: Vec::new(),
        relations: Vec::new(),
        bound: None,
        modules: Vec::new(),
        subcat: None,
        universe: None,
        side: None,
        tasks: Vec::new(),
        names: BTreeSet::new(),
    };
    let mut last = 0;
    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        last = lineno;
        let toks = lex(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let names = b.names.clone();
        let mut l = Line {
            toks,
            pos: 0,
            lineno,
            len: raw.chars().count(),
            names: &names,
        };
        let kw = l.ident("a keyword", &format!("lines start with one of: {KEYWORDS}"))?;
        match kw.as_str() {
            "field" => parse_field(&mut b, &mut l)?,
            "quiver" => parse_quiver(&mut b, &mut l)?,
            "arrow" => parse_arrow(&mut b, &mut l)?,
            "relation" => parse_relation(&mut b, &mut l)?,
            "bound" => {
                let col = l.col();
                let v = l.count("a bound", "write `bound <n>` with n at least 2")?;
                if v < 2 {
                    return Err(CliError::Parse {
                        line: lineno,
                        col,
                        msg: format!("bound {v} is below 2"),
                        hint: "paths of length at least the bound vanish; use 2 or more".into(),
                    });
                }
                b.bound = Some(v);
            }
            "module" => parse_module(&mut b, &mut l)?,
            "subcat" => {
                let name = l.ident("a subcategory name", "write `subcat M = [Names]`")?;
                l.sym("=", "write `subcat M = [Names]`")?;
                let members = l.name_list()?;
                if b.subcat.is_some() {
                    return Err(l.err("a second subcategory", "a scenario declares one subcategory"));
                }
                b.subcat = Some(SubcatDecl { name, members });
            }
            "universe" => parse_universe(&mut b, &mut l)?,
            "side" => {
                let hint = "write `side right`, `side left` or `side both`";
                let col = l.col();
                let s = l.ident("a side", hint)?;
                b.side = Some(match s.as_str() {
                    "right" => SideSpec::Right,
                    "left" => SideSpec::Left,
                    "both" => SideSpec::Both,
                    _ => {
                        return Err(CliError::Parse {
                            line: lineno,
                            col,
                            msg: format!("unknown side `{s}`"),
                            hint: hint.into(),
                        })
                    }
                });
            }
            "task" => {
                let hint = "tasks are rigid, axioms, star, verify-right, verify-left, quotient-dims";
                let col = l.col();
                let s = l.ident("a task name", hint)?;
                let t = Task::parse(&s).ok_or_else(|| CliError::Parse {
                    line: lineno,
                    col,
                    msg: format!("unknown task `{s}`"),
                    hint: hint.into(),
                })?;
                if !b.tasks.contains(&t) {
                    b.tasks.push(t);
                }
            }
            other => {
                return Err(CliError::Parse {
                    line: lineno,
                    col: 1,
                    msg: format!("unknown keyword `{other}`"),
                    hint: format!("lines start with one of: {KEYWORDS}"),
                })
            }
        }
        l.end()?;
    }
    let field = b.field.ok_or_else(|| CliError::Parse {
        line: last.max(1),
        col: 1,
        msg: "missing field declaration".into(),
        hint: "add `field p=2` at the top".into(),
    })?;
    let vertices = b.vertices.ok_or_else(|| CliError::Parse {
        line: last.max(1),
        col: 1,
        msg: "missing quiver declaration".into(),
        hint: "add `quiver vertices=<n>` after the field".into(),
    })?;
    if let Some(SubcatDecl { members, .. }) = &b.subcat {
        if let Some(UniverseDecl::List(u)) = &b.universe {
            if let Some(missing) = members.iter().find(|m| !u.contains(m)) {
                return Err(CliError::Scenario(format!(
                    "subcategory member `{missing}` is not in the universe"
                )));
            }
        }
    }
    Ok(Scenario {
        field,
        vertices,
        arrows: b.arrows,
        relations: b.relations,
        bound: b.bound,
        modules: b.modules,
        subcat: b.subcat,
        universe: b.universe,
        side: b.side.unwrap_or(SideSpec::Both),
        tasks: b.tasks,
    })
}

fn parse_field(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write `field p=<prime>`, e.g. `field p=2`";
    l.keyword("p", hint)?;
    l.sym("=", hint)?;
    let col = l.col();
    let p = l.count("a prime", hint)?;
    let p = u32::try_from(p).ok().filter(|&p| is_prime(p) && p <= quotcat_core::FieldPrime::MAX);
    match p {
        Some(p) => {
            b.field = Some(p);
            Ok(())
        }
        None => Err(CliError::Parse {
            line: l.lineno,
            col,
            msg: "the field characteristic is not a supported prime".into(),
            hint: "use a prime such as 2, 3 or 5 (at most 65521)".into(),
        }),
    }
}

fn parse_quiver(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write `quiver vertices=<n>`";
    l.keyword("vertices", hint)?;
    l.sym("=", hint)?;
    let col = l.col();
    let n = l.count("a vertex count", hint)?;
    if n == 0 {
        return Err(CliError::Parse {
            line: l.lineno,
            col,
            msg: "a quiver needs at least one vertex".into(),
            hint: hint.into(),
        });
    }
    b.vertices = Some(n);
    Ok(())
}

fn vertex(b: &Builder, l: &mut Line<'_>, hint: &str) -> Result<usize> {
    let col = l.col();
    let v = l.count("a vertex number", hint)?;
    let n = b.vertices.ok_or_else(|| l.err("vertices used before the quiver", "declare `quiver vertices=<n>` first"))?;
    if v == 0 || v > n {
        return Err(CliError::Parse {
            line: l.lineno,
            col,
            msg: format!("vertex {v} is outside 1..={n}"),
            hint: "vertices are numbered from 1".into(),
        });
    }
    Ok(v)
}

fn parse_arrow(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write `arrow <name>: <from> -> <to>`";
    let col = l.col();
    let name = l.ident("an arrow name", hint)?;
    if b.arrows.iter().any(|a| a.name == name) {
        return Err(CliError::Parse {
            line: l.lineno,
            col,
            msg: format!("arrow `{name}` is declared twice"),
            hint: "arrow names must be distinct".into(),
        });
    }
    l.sym(":", hint)?;
    let source = vertex(b, l, hint)?;
    l.sym("->", hint)?;
    let target = vertex(b, l, hint)?;
    b.arrows.push(ArrowDecl { name, source, target });
    Ok(())
}

fn parse_relation(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write a sum of paths such as `a;b - 2*c;d`";
    let mut terms = Vec::new();
    let mut sign = if l.eat("-") { -1 } else { 1 };
    loop {
        let coeff = match l.peek() {
            Some(Tok::Int(_)) => {
                let c = l.int("a coefficient", hint)?;
                l.sym("*", hint)?;
                c
            }
            _ => 1,
        };
        let mut path = Vec::new();
        loop {
            let col = l.col();
            let a = l.ident("an arrow name", hint)?;
            if a.contains('-') {
                return Err(CliError::Parse {
                    line: l.lineno,
                    col,
                    msg: format!("`{a}` is not an arrow name"),
                    hint: "put spaces around `-` between terms".into(),
                });
            }
            if !b.arrows.iter().any(|x| x.name == a) {
                return Err(CliError::UnknownName {
                    line: l.lineno,
                    col,
                    name: a,
                    hint: "declare arrows with `arrow <name>: <from> -> <to>` before relations".into(),
                });
            }
            path.push(a);
            if !l.eat(";") {
                break;
            }
        }
        terms.push((sign * coeff, path));
        if l.eat("+") {
            sign = 1;
        } else if l.eat("-") {
            sign = -1;
        } else {
            break;
        }
    }
    b.relations.push(RelationDecl { terms });
    Ok(())
}

fn parse_module(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write `module <Name> = simple|proj|inj <vertex>`, `sum [..]` or `matrices [dims] { arrow = [[..]] }`";
    let col = l.col();
    let name = l.ident("a module name", hint)?;
    if b.names.contains(&name) {
        return Err(CliError::Parse {
            line: l.lineno,
            col,
            msg: format!("module `{name}` is declared twice"),
            hint: "module names must be distinct".into(),
        });
    }
    l.sym("=", hint)?;
    let kcol = l.col();
    let kind = l.ident("a constructor", hint)?;
    let ctor = match kind.as_str() {
        "simple" => ModuleCtor::Simple(vertex(b, l, hint)?),
        "proj" => ModuleCtor::Proj(vertex(b, l, hint)?),
        "inj" => ModuleCtor::Inj(vertex(b, l, hint)?),
        "sum" => ModuleCtor::Sum(l.name_list()?),
        "matrices" => {
            let n = b.vertices.ok_or_else(|| l.err("matrices before the quiver", "declare `quiver vertices=<n>` first"))?;
            let dcol = l.col();
            let dims = l.int_list("write the dimension vector as `[d1, d2, ...]`")?;
            if dims.len() != n || dims.iter().any(|&d| d < 0) {
                return Err(CliError::Parse {
                    line: l.lineno,
                    col: dcol,
                    msg: format!("dimension vector needs {n} nonnegative entries"),
                    hint: "one entry per vertex".into(),
                });
            }
            let mhint = "write `{ a = [[..]]; b = [[..]] }`; omitted arrows are zero";
            l.sym("{", mhint)?;
            let mut maps = Vec::new();
            if !l.eat("}") {
                loop {
                    let acol = l.col();
                    let a = l.ident("an arrow name", mhint)?;
                    if !b.arrows.iter().any(|x| x.name == a) {
                        return Err(CliError::UnknownName {
                            line: l.lineno,
                            col: acol,
                            name: a,
                            hint: "use an arrow declared with `arrow`".into(),
                        });
                    }
                    l.sym("=", mhint)?;
                    maps.push((a, l.matrix()?));
                    if l.eat("}") {
                        break;
                    }
                    l.sym(";", mhint)?;
                }
            }
            ModuleCtor::Matrices {
                dims: dims.into_iter().map(|d| d as usize).collect(),
                maps,
            }
        }
        other => {
            return Err(CliError::Parse {
                line: l.lineno,
                col: kcol,
                msg: format!("unknown module constructor `{other}`"),
                hint: hint.into(),
            })
        }
    };
    b.names.insert(name.clone());
    b.modules.push(ModuleDecl { name, ctor });
    Ok(())
}

fn parse_universe(b: &mut Builder, l: &mut Line<'_>) -> Result<()> {
    let hint = "write `universe = [Names]` or `universe = closure([Names], cap=64)`";
    l.sym("=", hint)?;
    if l.peek() == Some(&Tok::Sym("[")) {
        b.universe = Some(UniverseDecl::List(l.name_list()?));
        return Ok(());
    }
    l.keyword("closure", hint)?;
    l.sym("(", hint)?;
    let seeds = l.name_list()?;
    let mut cap = DEFAULT_CLOSURE_CAP;
    if l.eat(",") {
        l.keyword("cap", hint)?;
        l.sym("=", hint)?;
        let col = l.col();
        cap = l.count("a cap", hint)?;
        if cap == 0 {
            return Err(CliError::Parse {
                line: l.lineno,
                col,
                msg: "closure cap must be positive".into(),
                hint: hint.into(),
            });
        }
    }
    l.sym(")", hint)?;
    b.universe = Some(UniverseDecl::Closure { seeds, cap });
    Ok(())
}

fn list(names: &[String]) -> String {
    format!("[{}]", names.join(", "))
}

pub fn format_relation(r: &RelationDecl) -> String {
    let mut out = String::new();
    for (k, (c, path)) in r.terms.iter().enumerate() {
        let (neg, mag) = (*c < 0, c.unsigned_abs());
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != 1 {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(&path.join(";"));
    }
    out
}

/// Canonical text of a scenario; parsing it gives the scenario back.
pub fn print_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "field p={}", s.field);
    let _ = writeln!(out, "quiver vertices={}", s.vertices);
    for a in &s.arrows {
        let _ = writeln!(out, "arrow {}: {} -> {}", a.name, a.source, a.target);
    }
    for r in &s.relations {
        let _ = writeln!(out, "relation {}", format_relation(r));
    }
    if let Some(b) = s.bound {
        let _ = writeln!(out, "bound {b}");
    }
    for m in &s.modules {
        let rhs = match &m.ctor {
            ModuleCtor::Simple(i) => format!("simple {i}"),
            ModuleCtor::Proj(i) => format!("proj {i}"),
            ModuleCtor::Inj(i) => format!("inj {i}"),
            ModuleCtor::Sum(names) => format!("sum {}", list(names)),
            ModuleCtor::Matrices { dims, maps } => {
                let dims: Vec<String> = dims.iter().map(usize::to_string).collect();
                let maps: Vec<String> = maps
                    .iter()
                    .map(|(a, rows)| {
                        let rows: Vec<String> = rows
                            .iter()
                            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")))
                            .collect();
                        format!("{a} = [{}]", rows.join(", "))
                    })
                    .collect();
                if maps.is_empty() {
                    format!("matrices [{}] {{}}", dims.join(", "))
                } else {
                    format!("matrices [{}] {{ {} }}", dims.join(", "), maps.join("; "))
                }
            }
        };
        let _ = writeln!(out, "module {} = {rhs}", m.name);
    }
    if let Some(sc) = &s.subcat {
        let _ = writeln!(out, "subcat {} = {}", sc.name, list(&sc.members));
    }
    match &s.universe {
        Some(UniverseDecl::List(names)) => {
            let _ = writeln!(out, "universe = {}", list(names));
        }
        Some(UniverseDecl::Closure { seeds, cap }) => {
            let _ = writeln!(out, "universe = closure({}, cap={cap})", list(seeds));
        }
        None => {}
    }
    let _ = writeln!(out, "side {}", s.side.name());
    for t in &s.tasks {
        let _ = writeln!(out, "task {}", t.name());
    }
    out
}
