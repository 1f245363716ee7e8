//! Script syntax tree and its canonical pretty-printer.

use std::fmt;

use crate::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A rational literal `num / den`, `den > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Number {
    pub negative: bool,
    pub num: String,
    pub den: Option<String>,
}

impl fmt::Display for Number {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.num)?;
        if let Some(d) = &self.den {
            write!(f, "/{d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Poly {
    Num(Number),
    Var(String, Pos),
    Neg(Box<Poly>),
    Add(Box<Poly>, Box<Poly>),
    Sub(Box<Poly>, Box<Poly>),
    Mul(Box<Poly>, Box<Poly>),
    Pow(Box<Poly>, u32),
}

impl Poly {
    fn prec(&self) -> u8 {
        match self {
            Poly::Add(..) | Poly::Sub(..) => 1,
            Poly::Neg(_) => 2,
            Poly::Mul(..) => 3,
            Poly::Pow(..) => 4,
            Poly::Num(n) if n.negative || n.den.is_some() => 2,
            Poly::Num(_) | Poly::Var(..) => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let p = self.prec();
        if p < min {
            write!(f, "(")?;
        }
        match self {
            Poly::Num(n) => write!(f, "{n}")?,
            Poly::Var(v, _) => write!(f, "{v}")?,
            Poly::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 3)?;
            }
            Poly::Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)?;
            }
            Poly::Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)?;
            }
            Poly::Mul(a, b) => {
                a.write_at(f, 3)?;
                write!(f, "*")?;
                b.write_at(f, 4)?;
            }
            Poly::Pow(a, e) => {
                a.write_at(f, 5)?;
                write!(f, "^{e}")?;
            }
        }
        if p < min {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDef {
    Coker { targets: Vec<i64>, sources: Option<Vec<i64>>, matrix: Vec<Vec<Poly>> },
    Quotient(String),
    Ideal(String),
    Free(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Ring { field: FieldSpec, vars: Vec<String>, weights: Option<Vec<u32>> },
    Ideal(Vec<Poly>),
    Module(ModuleDef),
    Family(Vec<Poly>),
    Matrix { field: Option<FieldSpec>, rows: Vec<Vec<Number>> },
}

impl Decl {
    pub fn keyword(&self) -> &'static str {
        match self {
            Decl::Ring { .. } => "ring",
            Decl::Ideal(_) => "ideal",
            Decl::Module(_) => "module",
            Decl::Family(_) => "family",
            Decl::Matrix { .. } => "matrix",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Int(i64),
    Window(i64, i64),
    /// `at (c, ...)`
    Points(Vec<Number>),
    /// 0-based column indices, written 1-based.
    Subset(Vec<usize>),
    Matrix(Option<FieldSpec>, Vec<Vec<Number>>),
    /// `Gr(d, n) {(i, ...): c, ...}`; indices are stored 0-based and written 1-based.
    Pluecker { d: usize, n: usize, coords: Vec<(Vec<usize>, Number)> },
    Poly(Poly),
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_matrix(f: &mut fmt::Formatter<'_>, field: &Option<FieldSpec>, rows: &[Vec<Number>]) -> fmt::Result {
    if let Some(fs) = field {
        write!(f, "{fs} ")?;
    }
    let rs: Vec<String> = rows.iter().map(|r| format!("[{}]", join(r))).collect();
    write!(f, "[{}]", rs.join(", "))
}

fn one_based(s: &[usize]) -> Vec<usize> {
    s.iter().map(|j| j + 1).collect()
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => write!(f, "{n}"),
            Arg::Int(i) => write!(f, "{i}"),
            Arg::Window(lo, hi) => write!(f, "in [{lo}, {hi}]"),
            Arg::Points(ps) => write!(f, "at ({})", join(ps)),
            Arg::Subset(s) => write!(f, "({})", join(&one_based(s))),
            Arg::Matrix(fs, rows) => write_matrix(f, fs, rows),
            Arg::Pluecker { d, n, coords } => {
                let cs: Vec<String> = coords.iter().map(|(s, c)| format!("({}): {c}", join(&one_based(s)))).collect();
                write!(f, "Gr({d}, {n}) {{{}}}", cs.join(", "))
            }
            Arg::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub name: String,
    pub args: Vec<Arg>,
    pub pos: Pos,
    /// The ring active when the command was written.
    pub ring: Option<String>,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for a in &self.args {
            write!(f, " {a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Decl { name: String, decl: Decl, pos: Pos, ring: Option<String> },
    Use { ring: String, pos: Pos },
    Command(Command),
    Par(Vec<Command>, Pos),
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Decl { name, decl, .. } => {
                write!(f, "{} {name} = ", decl.keyword())?;
                match decl {
                    Decl::Ring { field, vars, weights } => {
                        write!(f, "{field}[{}]", vars.join(", "))?;
                        if let Some(w) = weights {
                            write!(f, " weights ({})", join(w))?;
                        }
                    }
                    Decl::Ideal(gens) | Decl::Family(gens) => write!(f, "({})", join(gens))?,
                    Decl::Module(ModuleDef::Coker { targets, sources, matrix }) => {
                        write!(f, "coker(targets=[{}]", join(targets))?;
                        if let Some(s) = sources {
                            write!(f, ", sources=[{}]", join(s))?;
                        }
                        let rs: Vec<String> = matrix.iter().map(|r| format!("[{}]", join(r))).collect();
                        write!(f, ", matrix=[{}])", rs.join(", "))?;
                    }
                    Decl::Module(ModuleDef::Quotient(i)) => write!(f, "quotient({i})")?,
                    Decl::Module(ModuleDef::Ideal(i)) => write!(f, "ideal({i})")?,
                    Decl::Module(ModuleDef::Free(t)) => write!(f, "free([{}])", join(t))?,
                    Decl::Matrix { field, rows } => write_matrix(f, field, rows)?,
                }
                write!(f, ";")
            }
            Stmt::Use { ring, .. } => write!(f, "use {ring};"),
            Stmt::Command(c) => write!(f, "{c};"),
            Stmt::Par(cs, _) => {
                writeln!(f, "par {{")?;
                for c in cs {
                    writeln!(f, "    {c};")?;
                }
                write!(f, "}}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Stmt>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
