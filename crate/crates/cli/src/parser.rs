//! Recursive-descent parser with name resolution.

use std::collections::BTreeMap;
use std::fmt;

use crate::ast::*;
use crate::commands::{signature, ArgKind, Kind};
use crate::lexer::{tokenize, Pos, Tok, Token};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    UnknownName(String),
    DuplicateName(String),
    UnknownVariable(String),
    WrongKind { name: String, expected: String, found: String },
    RingMismatch(String),
    UnknownCommand(String),
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.pos.line, self.pos.col)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected, found } => write!(f, "expected one of {}, found {found}", expected.join(", ")),
            ParseErrorKind::UnknownName(n) => write!(f, "unknown name {n}"),
            ParseErrorKind::DuplicateName(n) => write!(f, "duplicate name {n}"),
            ParseErrorKind::UnknownVariable(v) => write!(f, "unknown variable {v}"),
            ParseErrorKind::WrongKind { name, expected, found } => write!(f, "{name} is a {found}, expected a {expected}"),
            ParseErrorKind::RingMismatch(m) => write!(f, "ring mismatch: {m}"),
            ParseErrorKind::UnknownCommand(c) => write!(f, "unknown command {c}"),
            ParseErrorKind::Invalid(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

/// What the resolver knows about a declared name.
#[derive(Clone, Debug)]
struct Entry {
    kind: Kind,
    /// Ring the value lives in; for rings, the ring itself.
    ring: Option<String>,
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
    names: BTreeMap<String, Entry>,
    ring_vars: BTreeMap<String, Vec<String>>,
    active: Option<String>,
}

/// Name of the ring `k[t, xs]` synthesised for families over ring `r`.
pub fn family_ring_name(r: &str) -> String {
    format!("{r}[t]")
}

pub const RESERVED: &[&str] = &["maxideal", "in", "at", "par", "use", "ring", "ideal", "module", "family", "matrix", "Gr", "QQ", "GF"];

pub fn parse_script(src: &str) -> PResult<Script> {
    let toks = tokenize(src).map_err(|e| ParseError {
        pos: e.pos,
        kind: ParseErrorKind::Syntax { expected: vec!["a token".into()], found: format!("`{}`", e.found) },
    })?;
    let mut p = Parser { toks, at: 0, names: BTreeMap::new(), ring_vars: BTreeMap::new(), active: None };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        Err(ParseError {
            pos: self.pos(),
            kind: ParseErrorKind::Syntax { expected: expected.iter().map(|s| s.to_string()).collect(), found: self.peek().to_string() },
        })
    }

    fn fail<T>(&self, pos: Pos, kind: ParseErrorKind) -> PResult<T> {
        Err(ParseError { pos, kind })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == &Tok::Sym(c)
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.is_sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{c}`")])
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.error(&[&format!("`{w}`")])
        }
    }

    fn ident(&mut self) -> PResult<(String, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, pos))
            }
            _ => self.error(&["identifier"]),
        }
    }

    fn uint(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Int(s) => match s.parse::<u64>() {
                Ok(v) => {
                    self.bump();
                    Ok(v)
                }
                Err(_) => self.fail(self.pos(), ParseErrorKind::Invalid(format!("integer {s} is too large"))),
            },
            _ => self.error(&["integer"]),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = if self.is_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.pos();
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| ParseError { pos, kind: ParseErrorKind::Invalid("integer out of range".into()) })?;
        Ok(if neg { -v } else { v })
    }

    fn number(&mut self) -> PResult<Number> {
        let negative = if self.is_sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let num = match self.peek().clone() {
            Tok::Int(s) => {
                self.bump();
                s
            }
            _ => return self.error(&["number"]),
        };
        let den = if self.is_sym('/') {
            self.bump();
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Int(s) if s.trim_start_matches('0').is_empty() => {
                    return self.fail(pos, ParseErrorKind::Invalid("zero denominator".into()));
                }
                Tok::Int(s) => {
                    self.bump();
                    Some(s)
                }
                _ => return self.error(&["denominator"]),
            }
        } else {
            None
        };
        Ok(Number { negative, num, den })
    }

    fn list<T>(&mut self, open: char, close: char, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect_sym(open)?;
        let mut out = Vec::new();
        if self.is_sym(close) {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.is_sym(',') {
                self.bump();
            } else if self.is_sym(close) {
                self.bump();
                return Ok(out);
            } else {
                return self.error(&["`,`", &format!("`{close}`")]);
            }
        }
    }

    fn field(&mut self) -> PResult<FieldSpec> {
        if self.is_word("QQ") {
            self.bump();
            return Ok(FieldSpec::Rationals);
        }
        if self.is_word("GF") {
            self.bump();
            self.expect_sym('(')?;
            let pos = self.pos();
            let p = self.uint()?;
            if !gradalg::field::Field::prime(p).is_ok() {
                return self.fail(pos, ParseErrorKind::Invalid(format!("{p} is not a supported prime")));
            }
            self.expect_sym(')')?;
            return Ok(FieldSpec::Prime(p));
        }
        self.error(&["`QQ`", "`GF`"])
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let pos = self.pos();
        let word = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return self.error(&["declaration", "command", "`par`", "`use`"]),
        };
        match word.as_str() {
            "ring" | "ideal" | "module" | "family" | "matrix" => self.declaration(),
            "use" => {
                self.bump();
                let (r, rpos) = self.ident()?;
                self.lookup(&r, rpos, Kind::Ring)?;
                self.expect_sym(';')?;
                self.active = Some(r.clone());
                Ok(Stmt::Use { ring: r, pos })
            }
            "par" => {
                self.bump();
                self.expect_sym('{')?;
                let mut cmds = Vec::new();
                while !self.is_sym('}') {
                    if self.peek() == &Tok::Eof {
                        return self.error(&["command", "`}`"]);
                    }
                    cmds.push(self.command()?);
                }
                self.bump();
                if self.is_sym(';') {
                    self.bump();
                }
                Ok(Stmt::Par(cmds, pos))
            }
            _ => Ok(Stmt::Command(self.command()?)),
        }
    }

    fn lookup(&self, name: &str, pos: Pos, want: Kind) -> PResult<Entry> {
        match self.names.get(name) {
            None => self.fail(pos, ParseErrorKind::UnknownName(name.into())),
            Some(e) if e.kind != want => self.fail(
                pos,
                ParseErrorKind::WrongKind { name: name.into(), expected: want.to_string(), found: e.kind.to_string() },
            ),
            Some(e) => Ok(e.clone()),
        }
    }

    fn active_ring(&self, pos: Pos) -> PResult<String> {
        match &self.active {
            Some(r) => Ok(r.clone()),
            None => self.fail(pos, ParseErrorKind::Invalid("no ring declared yet".into())),
        }
    }

    fn declaration(&mut self) -> PResult<Stmt> {
        let pos = self.pos();
        let (kw, _) = self.ident()?;
        let (name, npos) = self.ident()?;
        if RESERVED.contains(&name.as_str()) {
            return self.fail(npos, ParseErrorKind::Invalid(format!("{name} is reserved")));
        }
        if self.names.contains_key(&name) {
            return self.fail(npos, ParseErrorKind::DuplicateName(name));
        }
        self.expect_sym('=')?;
        let (decl, kind, ring) = match kw.as_str() {
            "ring" => {
                let field = self.field()?;
                let vars = self.list('[', ']', |p| {
                    let (v, vpos) = p.ident()?;
                    if RESERVED.contains(&v.as_str()) {
                        return p.fail(vpos, ParseErrorKind::Invalid(format!("{v} is reserved")));
                    }
                    Ok(v)
                })?;
                if vars.is_empty() {
                    return self.fail(npos, ParseErrorKind::Invalid("a ring needs at least one variable".into()));
                }
                for (i, v) in vars.iter().enumerate() {
                    if vars[..i].contains(v) {
                        return self.fail(npos, ParseErrorKind::Invalid(format!("variable {v} repeated")));
                    }
                }
                let weights = if self.is_word("weights") {
                    self.bump();
                    let wpos = self.pos();
                    let w = self.list('(', ')', |p| p.uint().map(|x| x as u32))?;
                    if w.len() != vars.len() {
                        return self.fail(wpos, ParseErrorKind::Invalid("one weight per variable is required".into()));
                    }
                    Some(w)
                } else {
                    None
                };
                self.ring_vars.insert(name.clone(), vars.clone());
                let mut fam = vec!["t".to_string()];
                fam.extend(vars.iter().cloned());
                self.ring_vars.insert(family_ring_name(&name), fam);
                self.active = Some(name.clone());
                (Decl::Ring { field, vars, weights }, Kind::Ring, Some(name.clone()))
            }
            "ideal" => {
                let r = self.active_ring(pos)?;
                let gens = self.poly_list(&r)?;
                (Decl::Ideal(gens), Kind::Ideal, Some(r))
            }
            "family" => {
                let r = self.active_ring(pos)?;
                if self.ring_vars[&r].iter().any(|v| v == "t") {
                    return self.fail(npos, ParseErrorKind::Invalid("the ring already has a variable t".into()));
                }
                let fr = family_ring_name(&r);
                let gens = self.poly_list(&fr)?;
                (Decl::Family(gens), Kind::Family, Some(fr))
            }
            "module" => {
                let r = self.active_ring(pos)?;
                let (def, ring) = self.module_def(&r)?;
                (Decl::Module(def), Kind::Module, Some(ring))
            }
            "matrix" => {
                let (field, rows) = self.matrix_literal()?;
                (Decl::Matrix { field, rows }, Kind::Matrix, None)
            }
            _ => unreachable!(),
        };
        self.expect_sym(';')?;
        self.names.insert(name.clone(), Entry { kind, ring: ring.clone() });
        let ring = if kind == Kind::Ring { None } else { ring };
        Ok(Stmt::Decl { name, decl, pos, ring })
    }

    fn module_def(&mut self, r: &str) -> PResult<(ModuleDef, String)> {
        let (form, fpos) = self.ident()?;
        match form.as_str() {
            "coker" => {
                self.expect_sym('(')?;
                self.expect_word("targets")?;
                self.expect_sym('=')?;
                let targets = self.list('[', ']', |p| p.int())?;
                self.expect_sym(',')?;
                let sources = if self.is_word("sources") {
                    self.bump();
                    self.expect_sym('=')?;
                    let s = self.list('[', ']', |p| p.int())?;
                    self.expect_sym(',')?;
                    Some(s)
                } else {
                    None
                };
                self.expect_word("matrix")?;
                self.expect_sym('=')?;
                let mpos = self.pos();
                let matrix = self.list('[', ']', |p| p.list('[', ']', |q| q.poly(r)))?;
                self.expect_sym(')')?;
                if matrix.len() != targets.len() {
                    return self.fail(mpos, ParseErrorKind::Invalid(format!("matrix has {} rows for {} targets", matrix.len(), targets.len())));
                }
                let ncols = matrix.first().map_or(0, Vec::len);
                if matrix.iter().any(|row| row.len() != ncols) {
                    return self.fail(mpos, ParseErrorKind::Invalid("ragged matrix".into()));
                }
                if let Some(s) = &sources {
                    if s.len() != ncols {
                        return self.fail(mpos, ParseErrorKind::Invalid(format!("matrix has {ncols} columns for {} sources", s.len())));
                    }
                }
                Ok((ModuleDef::Coker { targets, sources, matrix }, r.to_string()))
            }
            "quotient" | "ideal" => {
                self.expect_sym('(')?;
                let (i, ipos) = self.ident()?;
                let e = self.lookup(&i, ipos, Kind::Ideal)?;
                self.expect_sym(')')?;
                let ring = e.ring.unwrap();
                let def = if form == "quotient" { ModuleDef::Quotient(i) } else { ModuleDef::Ideal(i) };
                Ok((def, ring))
            }
            "free" => {
                self.expect_sym('(')?;
                let t = self.list('[', ']', |p| p.int())?;
                self.expect_sym(')')?;
                Ok((ModuleDef::Free(t), r.to_string()))
            }
            _ => self.fail(fpos, ParseErrorKind::Syntax {
                expected: vec!["`coker`".into(), "`quotient`".into(), "`ideal`".into(), "`free`".into()],
                found: format!("`{form}`"),
            }),
        }
    }

    fn matrix_literal(&mut self) -> PResult<(Option<FieldSpec>, Vec<Vec<Number>>)> {
        let field = if self.is_word("QQ") || self.is_word("GF") { Some(self.field()?) } else { None };
        let pos = self.pos();
        let rows = self.list('[', ']', |p| p.list('[', ']', |q| q.number()))?;
        let n = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || n == 0 || rows.iter().any(|r| r.len() != n) {
            return self.fail(pos, ParseErrorKind::Invalid("matrix must be a nonempty rectangle".into()));
        }
        Ok((field, rows))
    }

    fn poly_list(&mut self, r: &str) -> PResult<Vec<Poly>> {
        self.list('(', ')', |p| p.poly(r))
    }

    fn poly(&mut self, r: &str) -> PResult<Poly> {
        let mut acc = self.term(r)?;
        loop {
            if self.is_sym('+') {
                self.bump();
                acc = Poly::Add(Box::new(acc), Box::new(self.term(r)?));
            } else if self.is_sym('-') {
                self.bump();
                acc = Poly::Sub(Box::new(acc), Box::new(self.term(r)?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, r: &str) -> PResult<Poly> {
        if self.is_sym('-') {
            self.bump();
            return Ok(Poly::Neg(Box::new(self.term(r)?)));
        }
        let mut acc = self.power(r)?;
        while self.is_sym('*') {
            self.bump();
            acc = Poly::Mul(Box::new(acc), Box::new(self.power(r)?));
        }
        Ok(acc)
    }

    fn power(&mut self, r: &str) -> PResult<Poly> {
        let base = self.atom(r)?;
        if self.is_sym('^') {
            self.bump();
            let pos = self.pos();
            let e = self.uint()?;
            let e = u32::try_from(e).ok().filter(|&e| e <= u16::MAX as u32).ok_or(ParseError {
                pos,
                kind: ParseErrorKind::Invalid("exponent too large".into()),
            })?;
            return Ok(Poly::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self, r: &str) -> PResult<Poly> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(_) => Ok(Poly::Num(self.number()?)),
            Tok::Ident(v) => {
                self.bump();
                if !self.ring_vars[r].contains(&v) {
                    return self.fail(pos, ParseErrorKind::UnknownVariable(v));
                }
                Ok(Poly::Var(v, pos))
            }
            Tok::Sym('(') => {
                self.bump();
                let p = self.poly(r)?;
                self.expect_sym(')')?;
                Ok(p)
            }
            _ => self.error(&["number", "variable", "`(`"]),
        }
    }

    fn command(&mut self) -> PResult<Command> {
        let (name, pos) = self.ident()?;
        let Some(sig) = signature(&name) else {
            return self.fail(pos, ParseErrorKind::UnknownCommand(name));
        };
        let call = self.is_sym('(');
        if call {
            self.bump();
        }
        let mut args = Vec::new();
        let mut ring: Option<(String, String)> = None;
        for (k, kind) in sig.iter().enumerate() {
            if call && k > 0 && !(kind.is_optional() && self.is_sym(')')) {
                self.expect_sym(',')?;
            }
            if kind.is_optional() && (self.is_sym(';') || (call && self.is_sym(')'))) {
                continue;
            }
            let apos = self.pos();
            let arg = self.argument(*kind, ring.as_ref().map(|(r, _)| r.clone()))?;
            if let Arg::Name(n) = &arg {
                if let Some(e) = self.names.get(n) {
                    if let Some(r) = &e.ring {
                        if matches!(e.kind, Kind::Ideal | Kind::Module) {
                            match &ring {
                                Some((r0, n0)) if r0 != r => {
                                    return self.fail(apos, ParseErrorKind::RingMismatch(format!("{n} lives in {r}, {n0} in {r0}")));
                                }
                                None => ring = Some((r.clone(), n.clone())),
                                _ => {}
                            }
                        }
                    }
                }
            }
            args.push(arg);
        }
        if call {
            self.expect_sym(')')?;
        }
        self.expect_sym(';')?;
        let ring = ring.map(|(r, _)| r).or_else(|| self.active.clone());
        if ring.is_none() && args.iter().any(|a| matches!(a, Arg::Name(n) if n == "maxideal")) {
            return self.fail(pos, ParseErrorKind::Invalid("maxideal needs a ring".into()));
        }
        Ok(Command { name, args, pos, ring })
    }

    fn argument(&mut self, kind: ArgKind, ring: Option<String>) -> PResult<Arg> {
        match kind {
            ArgKind::Int => Ok(Arg::Int(self.int()?)),
            ArgKind::Object(k) | ArgKind::OptObject(k) => {
                let (n, pos) = self.ident()?;
                if n == "maxideal" && k == Kind::Ideal {
                    return Ok(Arg::Name(n));
                }
                self.lookup(&n, pos, k)?;
                Ok(Arg::Name(n))
            }
            ArgKind::Window | ArgKind::OptWindow => {
                if self.is_word("in") {
                    self.bump();
                }
                let pos = self.pos();
                let v = self.list('[', ']', |p| p.int())?;
                match v[..] {
                    [lo, hi] if lo <= hi => Ok(Arg::Window(lo, hi)),
                    _ => self.fail(pos, ParseErrorKind::Invalid("a window is [lo, hi] with lo <= hi".into())),
                }
            }
            ArgKind::Points => {
                self.expect_word("at")?;
                Ok(Arg::Points(self.list('(', ')', |p| p.number())?))
            }
            ArgKind::Subset => {
                let pos = self.pos();
                let v = self.list('(', ')', |p| p.uint())?;
                if v.iter().any(|&j| j == 0) {
                    return self.fail(pos, ParseErrorKind::Invalid("column indices start at 1".into()));
                }
                Ok(Arg::Subset(v.into_iter().map(|j| j as usize - 1).collect()))
            }
            ArgKind::Matrix => {
                if let Tok::Ident(n) = self.peek().clone() {
                    if n != "QQ" && n != "GF" {
                        let pos = self.pos();
                        self.bump();
                        self.lookup(&n, pos, Kind::Matrix)?;
                        return Ok(Arg::Name(n));
                    }
                }
                let (f, rows) = self.matrix_literal()?;
                Ok(Arg::Matrix(f, rows))
            }
            ArgKind::Pluecker => {
                self.expect_word("Gr")?;
                self.expect_sym('(')?;
                let pos = self.pos();
                let d = self.uint()? as usize;
                self.expect_sym(',')?;
                let n = self.uint()? as usize;
                self.expect_sym(')')?;
                if d == 0 || d > n {
                    return self.fail(pos, ParseErrorKind::Invalid("need 1 <= d <= n".into()));
                }
                let coords = self.list('{', '}', |p| {
                    let spos = p.pos();
                    let s = p.list('(', ')', |q| q.uint())?;
                    let mut idx: Vec<usize> = s.iter().map(|&j| j as usize).collect();
                    idx.sort();
                    idx.dedup();
                    if idx.len() != d || idx[0] == 0 || idx[d - 1] > n || s.len() != d {
                        return p.fail(spos, ParseErrorKind::Invalid(format!("index set must be {d} distinct values in 1..={n}")));
                    }
                    p.expect_sym(':')?;
                    Ok((idx.into_iter().map(|j| j - 1).collect(), p.number()?))
                })?;
                Ok(Arg::Pluecker { d, n, coords })
            }
            ArgKind::Poly => {
                let r = match ring.or_else(|| self.active.clone()) {
                    Some(r) => r,
                    None => return self.fail(self.pos(), ParseErrorKind::Invalid("no ring declared yet".into())),
                };
                Ok(Arg::Poly(self.poly(&r)?))
            }
        }
    }
}
