//! Shared-hyperplane normal forms for piecewise-linear relations.
//!
//! Every cell of a [`PLNormalForm`] is described by a sign per shared
//! hyperplane `H`: `H = 0`, `H >= 0` or `H <= 0`. Valuations are kept
//! minimal, so a `NonNeg` entry means `H` takes a strictly positive value
//! somewhere in the cell.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedron::{format_affine, Constraint, Interval, LinExpr, Polyhedron};
use crate::rat::{self, Rat};
use crate::semantics::PLRelation;
use crate::term::Arity;

/// A nonzero affine form, stored integer-primitive with its first nonzero
/// coefficient positive. `H` and `-H` are the same hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    expr: LinExpr,
}

impl Hyperplane {
    pub fn new(expr: LinExpr) -> Result<Self> {
        if expr.is_constant() {
            if expr.constant.is_zero() {
                return Err(Error::ZeroHyperplane);
            }
            let mut e = expr;
            e.constant = rat::one();
            return Ok(Hyperplane { expr: e });
        }
        let c = Constraint::eq(expr)
            .normalized()
            .expect("nonconstant rows normalize to themselves");
        Ok(Hyperplane { expr: c.expr })
    }

    pub fn expr(&self) -> &LinExpr {
        &self.expr
    }

    pub fn dim(&self) -> usize {
        self.expr.dim()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        self.expr.eval(point)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_affine(&self.expr))
    }
}

/// Sign condition of one hyperplane on a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    NonNeg,
    NonPos,
}

impl Sign {
    /// Containment order: `Zero` lies below both other signs.
    pub fn refines(self, other: Sign) -> bool {
        self == Sign::Zero || self == other
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::NonNeg => '+',
            Sign::NonPos => '-',
        }
    }

    /// The constraint `H ⋈ 0` this sign imposes.
    pub fn constraint(self, h: &Hyperplane) -> Constraint {
        match self {
            Sign::Zero => Constraint::eq(h.expr.clone()),
            Sign::NonNeg => Constraint::ge(h.expr.clone()),
            Sign::NonPos => Constraint::ge(h.expr.neg()),
        }
    }

    fn of_interval(range: &Interval) -> Option<Sign> {
        if range.is_zero_point() {
            Some(Sign::Zero)
        } else if range.is_nonneg() {
            Some(Sign::NonNeg)
        } else if range.is_nonpos() {
            Some(Sign::NonPos)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cell {
    pub valuation: Vec<Sign>,
}

impl Cell {
    pub fn signs(&self) -> String {
        self.valuation.iter().map(|s| s.symbol()).collect()
    }
}

/// Pointwise-least valuation of `p` over `hs`.
///
/// Fails with [`Error::NotRepresentable`] when some hyperplane crosses `p`,
/// or when the sign conditions describe a strictly larger set than `p`.
pub fn minimal_valuation(p: &Polyhedron, hs: &[Hyperplane]) -> Result<Vec<Sign>> {
    let val = valuation_of(p, hs)?;
    if !cell_of(p.dim(), hs, &val).is_subset_of(p)? {
        return Err(Error::NotRepresentable);
    }
    Ok(val)
}

/// Per-hyperplane range test without the representability check.
fn valuation_of(p: &Polyhedron, hs: &[Hyperplane]) -> Result<Vec<Sign>> {
    if p.is_empty() {
        return Err(Error::EmptyInput);
    }
    hs.iter()
        .map(|h| {
            let range = p.range_of(&h.expr)?;
            Sign::of_interval(&range).ok_or(Error::NotRepresentable)
        })
        .collect()
}

fn cell_of(dim: usize, hs: &[Hyperplane], val: &[Sign]) -> Polyhedron {
    let rows = hs.iter().zip(val).map(|(h, s)| s.constraint(h)).collect();
    Polyhedron::new(dim, rows).expect("hyperplanes share the cell dimension")
}

/// Hyperplanes taken from the rows of `p`, with its minimal valuation.
pub fn poly_nf(p: &Polyhedron) -> Result<(Vec<Hyperplane>, Vec<Sign>)> {
    if p.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut hs: Vec<Hyperplane> = Vec::new();
    for c in p.constraints() {
        let h = Hyperplane::new(c.expr.clone())?;
        if !hs.contains(&h) {
            hs.push(h);
        }
    }
    let val = valuation_of(p, &hs)?;
    Ok((hs, val))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLNormalForm {
    arity: Arity,
    hyperplanes: Vec<Hyperplane>,
    cells: Vec<Cell>,
}

impl PLNormalForm {
    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell_polyhedron(&self, c: &Cell) -> Polyhedron {
        cell_of(self.arity.dim(), &self.hyperplanes, &c.valuation)
    }

    /// Whether some cell contains `point`.
    pub fn member(&self, point: &[Rat]) -> Result<bool> {
        for c in &self.cells {
            if self.cell_polyhedron(c).contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The denoted relation, one polyhedron per cell.
    pub fn to_relation(&self) -> PLRelation {
        let polys = self.cells.iter().map(|c| self.cell_polyhedron(c)).collect();
        PLRelation::new(self.arity, polys).expect("cells share the arity dimension")
    }

    /// Refines every cell along `h`; a no-op when `h` is already shared.
    pub fn add_hyperplane(&self, h: &Hyperplane) -> Result<PLNormalForm> {
        if h.dim() != self.arity.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.arity.dim(),
                got: h.dim(),
            });
        }
        if self.hyperplanes.contains(h) {
            return Ok(self.clone());
        }
        let mut hyperplanes = self.hyperplanes.clone();
        hyperplanes.push(h.clone());
        let mut cells: Vec<Cell> = Vec::new();
        for c in &self.cells {
            let poly = self.cell_polyhedron(c);
            for side in [Sign::NonNeg, Sign::NonPos] {
                let part = poly.with(side.constraint(h))?;
                if part.is_empty() {
                    continue;
                }
                let cell = Cell {
                    valuation: valuation_of(&part, &hyperplanes)?,
                };
                if !cells.contains(&cell) {
                    cells.push(cell);
                }
            }
        }
        Ok(PLNormalForm {
            arity: self.arity,
            hyperplanes,
            cells,
        })
    }

    /// Adds the missing members of `hs` and reorders valuations to follow
    /// `hs` exactly. `hs` must include every current hyperplane.
    pub fn extend_to(&self, hs: &[Hyperplane]) -> Result<PLNormalForm> {
        let mut nf = self.clone();
        for h in hs {
            nf = nf.add_hyperplane(h)?;
        }
        let order: Vec<usize> = hs
            .iter()
            .map(|h| {
                nf.hyperplanes
                    .iter()
                    .position(|g| g == h)
                    .expect("just added")
            })
            .collect();
        if order.len() != nf.hyperplanes.len() {
            return Err(Error::Internal(
                "extend_to target omits an existing hyperplane".into(),
            ));
        }
        let mut cells: Vec<Cell> = Vec::new();
        for c in &nf.cells {
            let cell = Cell {
                valuation: order.iter().map(|&i| c.valuation[i]).collect(),
            };
            if !cells.contains(&cell) {
                cells.push(cell);
            }
        }
        Ok(PLNormalForm {
            arity: self.arity,
            hyperplanes: hs.to_vec(),
            cells,
        })
    }

    /// A point of the cell where every non-`Zero` entry holds strictly.
    pub fn interior_point(&self, c: &Cell) -> Result<Vec<Rat>> {
        let poly = self.cell_polyhedron(c);
        let mut witnesses: Vec<Vec<Rat>> = Vec::new();
        for (h, s) in self.hyperplanes.iter().zip(&c.valuation) {
            let f = match s {
                Sign::Zero => continue,
                Sign::NonNeg => h.expr.clone(),
                Sign::NonPos => h.expr.neg(),
            };
            let w = poly.strict_witness(&f)?.ok_or_else(|| {
                Error::Internal(format!("no strict witness for `{h}` in cell {}", c.signs()))
            })?;
            witnesses.push(w);
        }
        let point = if witnesses.is_empty() {
            poly.sample_point()
                .ok_or_else(|| Error::Internal(format!("cell {} is empty", c.signs())))?
        } else {
            let k = rat::int(witnesses.len() as i64);
            (0..self.arity.dim())
                .map(|i| witnesses.iter().map(|w| w[i].clone()).sum::<Rat>() / &k)
                .collect()
        };
        for (h, s) in self.hyperplanes.iter().zip(&c.valuation) {
            let v = h.eval(&point);
            let ok = match s {
                Sign::Zero => v.is_zero(),
                Sign::NonNeg => v.is_positive(),
                Sign::NonPos => v.is_negative(),
            };
            if !ok {
                return Err(Error::Internal(format!(
                    "interior point {} violates `{h}` in cell {}",
                    rat::show_point(&point),
                    c.signs()
                )));
            }
        }
        Ok(point)
    }
}

impl fmt::Display for PLNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arity {}", self.arity)?;
        writeln!(f, "hyperplanes {}", self.hyperplanes.len())?;
        for (i, h) in self.hyperplanes.iter().enumerate() {
            writeln!(f, "  h{i}: {h}")?;
        }
        writeln!(f, "cells {}", self.cells.len())?;
        for c in &self.cells {
            writeln!(f, "  {}", c.signs())?;
        }
        Ok(())
    }
}

/// Normal form of a relation over one shared hyperplane list.
pub fn pl_nf(r: &PLRelation) -> Result<PLNormalForm> {
    let mut locals: Vec<(Vec<Hyperplane>, Vec<Sign>)> = Vec::new();
    let mut shared: Vec<Hyperplane> = Vec::new();
    for p in r.polys() {
        if p.is_empty() {
            continue;
        }
        let (hs, val) = poly_nf(p)?;
        for h in &hs {
            if !shared.contains(h) {
                shared.push(h.clone());
            }
        }
        locals.push((hs, val));
    }
    let mut cells: Vec<Cell> = Vec::new();
    for (hs, val) in locals {
        let local = PLNormalForm {
            arity: r.arity(),
            hyperplanes: hs,
            cells: vec![Cell { valuation: val }],
        };
        for c in local.extend_to(&shared)?.cells {
            if !cells.contains(&c) {
                cells.push(c);
            }
        }
    }
    Ok(PLNormalForm {
        arity: r.arity(),
        hyperplanes: shared,
        cells,
    })
}
