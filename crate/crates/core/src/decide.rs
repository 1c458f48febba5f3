//! Inclusion and equality of piecewise-linear relations.
//!
//! Both sides are brought into normal form over one shared hyperplane
//! arrangement. A cell of the left side is then contained in the right side
//! exactly when its interior point is, so one membership test per cell
//! decides inclusion and a failing test yields an exact counterexample.

use crate::error::{Error, Result};
use crate::normalform::{pl_nf, Hyperplane};
use crate::rat::{self, Rat};
use crate::semantics::{eval, PLRelation};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// A point of the left relation missing from the right one.
    Fails(Vec<Rat>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn counterexample(&self) -> Option<&[Rat]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(x) => Some(x),
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Holds => write!(f, "holds"),
            Verdict::Fails(x) => write!(f, "fails at {}", rat::show_point(x)),
        }
    }
}

/// Decides `d ⊆ c`.
pub fn subset(d: &PLRelation, c: &PLRelation) -> Result<Verdict> {
    if d.arity() != c.arity() {
        return Err(Error::ArityMismatch {
            left: d.arity(),
            right: c.arity(),
        });
    }
    let dn = pl_nf(d)?;
    if dn.cells().is_empty() {
        return Ok(Verdict::Holds);
    }
    let cn = pl_nf(c)?;
    let mut shared: Vec<Hyperplane> = dn.hyperplanes().to_vec();
    for h in cn.hyperplanes() {
        if !shared.contains(h) {
            shared.push(h.clone());
        }
    }
    let dn = dn.extend_to(&shared)?;
    let cn = cn.extend_to(&shared)?;
    for cell in dn.cells() {
        let x = dn.interior_point(cell)?;
        let mut container = None;
        for other in cn.cells() {
            if cn.cell_polyhedron(other).contains(&x)? {
                container = Some(other);
                break;
            }
        }
        match container {
            Some(other) => {
                let dominated = cell
                    .valuation
                    .iter()
                    .zip(&other.valuation)
                    .all(|(a, b)| a.refines(*b));
                if !dominated {
                    return Err(Error::Internal(format!(
                        "cell {} holds {} but is not dominated by cell {}",
                        cell.signs(),
                        rat::show_point(&x),
                        other.signs()
                    )));
                }
            }
            None => {
                if !d.member(&x)? || c.member(&x)? {
                    return Err(Error::Internal(format!(
                        "counterexample {} does not separate the relations",
                        rat::show_point(&x)
                    )));
                }
                return Ok(Verdict::Fails(x));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// Decides `d = c` as two inclusions, left to right first.
pub fn equal(d: &PLRelation, c: &PLRelation) -> Result<Verdict> {
    match subset(d, c)? {
        Verdict::Holds => subset(c, d),
        fails => Ok(fails),
    }
}

pub fn subset_terms(t: &Term, u: &Term) -> Result<Verdict> {
    subset(&eval(t)?, &eval(u)?)
}

pub fn equal_terms(t: &Term, u: &Term) -> Result<Verdict> {
    equal(&eval(t)?, &eval(u)?)
}
