//! Turning declarations into engine values.

use std::collections::{BTreeMap, HashMap};

use gradalg::families::FamilyModule;
use gradalg::grassmann::{ChartMatrix, PlueckerVector};
use gradalg::homology::{GradedFreeModule, GradedMap, PresentedModule};
use gradalg::{Field, MonomialOrder, MultiPoly, PolyRing, RingRef, Scalar, Submodule};
use num_bigint::BigInt;

use crate::ast::{Arg, Decl, FieldSpec, ModuleDef, Number, Poly};
use crate::parser::family_ring_name;

fn e<T>(r: gradalg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

#[derive(Clone, Debug)]
pub enum Value {
    Ring(RingRef),
    Ideal(Submodule),
    Module(PresentedModule),
    Family(FamilyModule),
    Matrix(ChartMatrix),
}

/// Declared values plus the rings they live in.
#[derive(Clone, Debug, Default)]
pub struct Env {
    values: HashMap<String, Value>,
    rings: HashMap<String, RingRef>,
    pub active: Option<String>,
}

pub fn field_of(spec: &FieldSpec) -> Result<Field, String> {
    match spec {
        FieldSpec::Rationals => Ok(Field::Rationals),
        FieldSpec::Prime(p) => Field::prime(*p).map_err(|e| e.to_string()),
    }
}

pub fn scalar(field: Field, n: &Number) -> Result<Scalar, String> {
    let parse = |s: &str| s.parse::<BigInt>().map_err(|e| e.to_string());
    let mut num = parse(&n.num)?;
    if n.negative {
        num = -num;
    }
    let den = match &n.den {
        Some(d) => parse(d)?,
        None => BigInt::from(1),
    };
    field.from_ratio(&num, &den).map_err(|e| e.to_string())
}

pub fn poly(ring: &RingRef, p: &Poly) -> Result<MultiPoly, String> {
    Ok(match p {
        Poly::Num(n) => ring.constant(scalar(ring.field(), n)?),
        Poly::Var(v, _) => e(ring.var(v))?,
        Poly::Neg(a) => -poly(ring, a)?,
        Poly::Add(a, b) => e(poly(ring, a)?.try_add(&poly(ring, b)?))?,
        Poly::Sub(a, b) => e(poly(ring, a)?.try_sub(&poly(ring, b)?))?,
        Poly::Mul(a, b) => e(poly(ring, a)?.try_mul(&poly(ring, b)?))?,
        Poly::Pow(a, k) => poly(ring, a)?.pow(*k),
    })
}

pub fn matrix(field: Field, rows: &[Vec<Number>]) -> Result<ChartMatrix, String> {
    let rows = rows.iter().map(|r| r.iter().map(|x| scalar(field, x)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
    ChartMatrix::new(field, rows).map_err(|e| e.to_string())
}

impl Env {
    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn ring(&self, name: &str) -> Option<&RingRef> {
        self.rings.get(name)
    }

    fn active_ring(&self) -> Result<RingRef, String> {
        self.active.as_ref().and_then(|r| self.rings.get(r)).cloned().ok_or_else(|| "no ring declared yet".to_string())
    }

    fn active_field(&self) -> Field {
        self.active_ring().map_or(Field::Rationals, |r| r.field())
    }

    pub fn use_ring(&mut self, name: &str) {
        self.active = Some(name.to_string());
    }

    pub fn ideal_arg(&self, name: &str, ring: Option<&str>) -> Result<Submodule, String> {
        if name == "maxideal" {
            let r = ring.and_then(|r| self.rings.get(r)).cloned().map_or_else(|| self.active_ring(), Ok)?;
            return Ok(Submodule::irrelevant_ideal(&r));
        }
        match self.values.get(name) {
            Some(Value::Ideal(i)) => Ok(i.clone()),
            _ => Err(format!("{name} is not an ideal")),
        }
    }

    pub fn matrix_arg(&self, arg: &Arg) -> Result<ChartMatrix, String> {
        match arg {
            Arg::Name(n) => match self.values.get(n) {
                Some(Value::Matrix(m)) => Ok(m.clone()),
                _ => Err(format!("{n} is not a matrix")),
            },
            Arg::Matrix(f, rows) => {
                let field = match f {
                    Some(f) => field_of(f)?,
                    None => self.active_field(),
                };
                matrix(field, rows)
            }
            _ => Err("expected a matrix".into()),
        }
    }

    pub fn pluecker_arg(&self, d: usize, n: usize, coords: &[(Vec<usize>, Number)]) -> Result<PlueckerVector, String> {
        let field = self.active_field();
        let mut map = BTreeMap::new();
        for (s, c) in coords {
            map.insert(s.clone(), scalar(field, c)?);
        }
        PlueckerVector::new(field, d, n, map).map_err(|e| e.to_string())
    }

    fn family_ring(&mut self, base: &str) -> Result<RingRef, String> {
        let name = family_ring_name(base);
        if let Some(r) = self.rings.get(&name) {
            return Ok(r.clone());
        }
        let r = self.rings[base].clone();
        let mut vars = vec!["t".to_string()];
        vars.extend(r.vars().iter().cloned());
        let mut weights = vec![0];
        weights.extend(r.weights().iter().copied());
        let fr = PolyRing::with_options(r.field(), vars, weights, MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
        self.rings.insert(name, fr.clone());
        Ok(fr)
    }

    /// Evaluate and bind a declaration.
    pub fn declare(&mut self, name: &str, decl: &Decl) -> Result<(), String> {
        let value = match decl {
            Decl::Ring { field, vars, weights } => {
                let field = field_of(field)?;
                let w = weights.clone().unwrap_or_else(|| vec![1; vars.len()]);
                let r = e(PolyRing::with_options(field, vars.clone(), w, MonomialOrder::GrevLex))?;
                self.rings.insert(name.to_string(), r.clone());
                self.active = Some(name.to_string());
                Value::Ring(r)
            }
            Decl::Ideal(gens) => {
                let r = self.active_ring()?;
                let gens = gens.iter().map(|g| poly(&r, g)).collect::<Result<Vec<_>, _>>()?;
                Value::Ideal(e(Submodule::ideal(&r, gens))?)
            }
            Decl::Family(gens) => {
                let base = self.active.clone().ok_or("no ring declared yet")?;
                let r = self.family_ring(&base)?;
                let gens = gens.iter().map(|g| poly(&r, g)).collect::<Result<Vec<_>, _>>()?;
                Value::Family(e(FamilyModule::quotient(&e(Submodule::ideal(&r, gens))?))?)
            }
            Decl::Module(def) => Value::Module(self.module(def)?),
            Decl::Matrix { field, rows } => {
                let field = match field {
                    Some(f) => field_of(f)?,
                    None => self.active_field(),
                };
                Value::Matrix(matrix(field, rows)?)
            }
        };
        self.values.insert(name.to_string(), value);
        Ok(())
    }

    fn module(&self, def: &ModuleDef) -> Result<PresentedModule, String> {
        match def {
            ModuleDef::Free(t) => Ok(PresentedModule::free(&self.active_ring()?, t.clone())),
            ModuleDef::Quotient(i) => e(PresentedModule::quotient(&self.ideal_arg(i, None)?)),
            ModuleDef::Ideal(i) => e(PresentedModule::ideal_module(&self.ideal_arg(i, None)?)),
            ModuleDef::Coker { targets, sources, matrix } => {
                let r = self.active_ring()?;
                let rows = matrix.iter().map(|row| row.iter().map(|p| poly(&r, p)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
                let target = GradedFreeModule::new(targets.clone());
                let map = match sources {
                    Some(s) => e(GradedMap::new(&r, GradedFreeModule::new(s.clone()), target, rows))?,
                    None => {
                        let ncols = rows.first().map_or(0, Vec::len);
                        let cols = (0..ncols).map(|j| rows.iter().map(|row| row[j].clone()).collect()).collect();
                        e(GradedMap::from_columns(&r, target, cols))?
                    }
                };
                Ok(PresentedModule::new(map))
            }
        }
    }
}
