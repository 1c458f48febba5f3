//! Evaluation of terms to piecewise-linear relations.
//!
//! A relation of arity `n -> m` is a finite union of polyhedra in
//! `Q^(n+m)`; coordinates `0..n` are the left ports and `n..n+m` the right
//! ports, each read top to bottom.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyhedron::{Constraint, LinExpr, Polyhedron, Rel};
use crate::rat::{self, Rat};
use crate::term::{Arity, Generator, Term};

/// A finite union of polyhedra sharing one arity. No cells means `∅`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLRelation {
    arity: Arity,
    polys: Vec<Polyhedron>,
}

impl PLRelation {
    pub fn new(arity: Arity, polys: Vec<Polyhedron>) -> Result<Self> {
        if let Some(p) = polys.iter().find(|p| p.dim() != arity.dim()) {
            return Err(Error::DimensionMismatch {
                expected: arity.dim(),
                got: p.dim(),
            });
        }
        Ok(PLRelation { arity, polys })
    }

    pub fn empty(arity: Arity) -> Self {
        PLRelation {
            arity,
            polys: Vec::new(),
        }
    }

    pub fn single(arity: Arity, poly: Polyhedron) -> Result<Self> {
        PLRelation::new(arity, vec![poly])
    }

    /// The full relation `Q^n x Q^m`.
    pub fn full(arity: Arity) -> Self {
        PLRelation {
            arity,
            polys: vec![Polyhedron::full(arity.dim())],
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.arity.dim()
    }

    pub fn polys(&self) -> &[Polyhedron] {
        &self.polys
    }

    /// Denotes the empty set.
    pub fn is_empty(&self) -> bool {
        self.polys.iter().all(Polyhedron::is_empty)
    }

    pub fn member(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: point.len(),
            });
        }
        for p in &self.polys {
            if p.contains(point)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Relational composition `{(x,z) | ∃y. (x,y) ∈ self ∧ (y,z) ∈ next}`,
    /// computed cell by cell. Empty and duplicate result cells are dropped.
    pub fn compose(&self, next: &PLRelation) -> Result<PLRelation> {
        if self.arity.right != next.arity.left {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: next.arity,
            });
        }
        let (n, m, l) = (self.arity.left, self.arity.right, next.arity.right);
        let total = n + m + l;
        let middle: Vec<usize> = (n..n + m).collect();
        let mut polys: Vec<Polyhedron> = Vec::new();
        for a in &self.polys {
            let a = a.lift(total, 0);
            for b in &next.polys {
                let joint = a.intersect(&b.lift(total, n))?;
                let cell = joint.project_out(&middle);
                if !cell.is_empty() && !polys.contains(&cell) {
                    polys.push(cell);
                }
            }
        }
        PLRelation::new(Arity::new(n, l), polys)
    }

    /// Parallel composition; `self` occupies the upper wires.
    pub fn tensor(&self, below: &PLRelation) -> PLRelation {
        let (n1, m1) = (self.arity.left, self.arity.right);
        let (n2, m2) = (below.arity.left, below.arity.right);
        // direct_sum lays out (l1, r1, l2, r2); ports want (l1, l2, r1, r2).
        let dest: Vec<usize> = (0..n1)
            .chain((0..m1).map(|j| n1 + n2 + j))
            .chain((0..n2).map(|i| n1 + i))
            .chain((0..m2).map(|j| n1 + n2 + m1 + j))
            .collect();
        let polys = self
            .polys
            .iter()
            .flat_map(|a| {
                below
                    .polys
                    .iter()
                    .map(|b| {
                        a.direct_sum(b)
                            .reindex(&dest)
                            .expect("interleaving is a permutation")
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        PLRelation {
            arity: Arity::new(n1 + n2, m1 + m2),
            polys,
        }
    }

    /// Concatenation of cell lists.
    pub fn union(&self, other: &PLRelation) -> Result<PLRelation> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        let polys = self.polys.iter().chain(&other.polys).cloned().collect();
        PLRelation::new(self.arity, polys)
    }

    /// The converse relation, swapping the left and right port blocks.
    pub fn opposite(&self) -> PLRelation {
        let (n, m) = (self.arity.left, self.arity.right);
        let dest: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        let polys = self
            .polys
            .iter()
            .map(|p| p.reindex(&dest).expect("block swap is a permutation"))
            .collect();
        PLRelation {
            arity: self.arity.reversed(),
            polys,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RelationDoc::from(self)).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<PLRelation> {
        let doc: RelationDoc =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        doc.try_into()
    }
}

pub fn compose_rel(r: &PLRelation, s: &PLRelation) -> Result<PLRelation> {
    r.compose(s)
}

pub fn tensor_rel(r: &PLRelation, s: &PLRelation) -> PLRelation {
    r.tensor(s)
}

pub fn union_rel(r: &PLRelation, s: &PLRelation) -> Result<PLRelation> {
    r.union(s)
}

pub fn opposite_rel(r: &PLRelation) -> PLRelation {
    r.opposite()
}

pub fn member(point: &[Rat], r: &PLRelation) -> Result<bool> {
    r.member(point)
}

/// Evaluates a well-typed term.
pub fn eval(t: &Term) -> Result<PLRelation> {
    t.arity()?;
    eval_typed(t)
}

fn eval_typed(t: &Term) -> Result<PLRelation> {
    match t {
        Term::Gen(g) => Ok(generator_relation(g)),
        Term::Id(n) => Ok(identity(*n)),
        Term::Swap => {
            let rows = vec![
                Constraint::eq(LinExpr::from_ints(&[1, 0, 0, -1], 0)),
                Constraint::eq(LinExpr::from_ints(&[0, 1, -1, 0], 0)),
            ];
            Ok(cell(Arity::new(2, 2), rows))
        }
        Term::Seq(a, b) => eval_typed(a)?.compose(&eval_typed(b)?),
        Term::Par(a, b) => Ok(eval_typed(a)?.tensor(&eval_typed(b)?)),
        Term::Union(a, b) => eval_typed(a)?.union(&eval_typed(b)?),
    }
}

fn identity(n: usize) -> PLRelation {
    let rows = (0..n)
        .map(|i| {
            let mut e = LinExpr::var(2 * n, i);
            e.coeffs[n + i] = -Rat::from_integer(1.into());
            Constraint::eq(e)
        })
        .collect();
    cell(Arity::new(n, n), rows)
}

fn cell(arity: Arity, rows: Vec<Constraint>) -> PLRelation {
    let poly = Polyhedron::new(arity.dim(), rows).expect("generator rows match arity");
    PLRelation {
        arity,
        polys: vec![poly],
    }
}

/// The single polyhedron denoted by a generator.
pub fn generator_relation(g: &Generator) -> PLRelation {
    use Generator::*;
    let eq = |a: &[i64], b: i64| Constraint::eq(LinExpr::from_ints(a, b));
    let ge = |a: &[i64], b: i64| Constraint::ge(LinExpr::from_ints(a, b));
    let rows = match g {
        Dup => vec![eq(&[1, -1, 0], 0), eq(&[1, 0, -1], 0)],
        Codup => vec![eq(&[1, 0, -1], 0), eq(&[0, 1, -1], 0)],
        Del | Codel => vec![],
        Add => vec![eq(&[1, 1, -1], 0)],
        Coadd => vec![eq(&[1, -1, -1], 0)],
        Zero | Cozero => vec![eq(&[1], 0)],
        One | Coone => vec![eq(&[1], -1)],
        Geq => vec![ge(&[1, -1], 0)],
        Leq => vec![ge(&[-1, 1], 0)],
        Scalar(r) => vec![Constraint::eq(LinExpr::new(
            vec![r.clone(), rat::int(-1)],
            rat::zero(),
        ))],
        Coscalar(r) => vec![Constraint::eq(LinExpr::new(
            vec![rat::int(1), -r.clone()],
            rat::zero(),
        ))],
    };
    cell(g.arity(), rows)
}

#[derive(Serialize, Deserialize)]
struct RelationDoc {
    left: usize,
    right: usize,
    polyhedra: Vec<Vec<RowDoc>>,
}

#[derive(Serialize, Deserialize)]
struct RowDoc {
    coeffs: Vec<String>,
    #[serde(rename = "const")]
    constant: String,
    rel: RelDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RelDoc {
    Ge,
    Eq,
}

impl From<&PLRelation> for RelationDoc {
    fn from(r: &PLRelation) -> Self {
        RelationDoc {
            left: r.arity.left,
            right: r.arity.right,
            polyhedra: r
                .polys
                .iter()
                .map(|p| {
                    p.constraints()
                        .iter()
                        .map(|c| RowDoc {
                            coeffs: c.expr.coeffs.iter().map(rat::show).collect(),
                            constant: rat::show(&c.expr.constant),
                            rel: match c.rel {
                                Rel::Ge => RelDoc::Ge,
                                Rel::Eq => RelDoc::Eq,
                            },
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<RelationDoc> for PLRelation {
    type Error = Error;

    fn try_from(doc: RelationDoc) -> Result<Self> {
        let arity = Arity::new(doc.left, doc.right);
        let number = |s: &str| {
            rat::parse(s.trim()).ok_or_else(|| Error::Document(format!("bad rational `{s}`")))
        };
        let mut polys = Vec::new();
        for rows in doc.polyhedra {
            let mut cs = Vec::new();
            for row in rows {
                let coeffs = row
                    .coeffs
                    .iter()
                    .map(|s| number(s))
                    .collect::<Result<Vec<_>>>()?;
                let expr = LinExpr::new(coeffs, number(&row.constant)?);
                cs.push(match row.rel {
                    RelDoc::Ge => Constraint::ge(expr),
                    RelDoc::Eq => Constraint::eq(expr),
                });
            }
            polys.push(Polyhedron::new(arity.dim(), cs)?);
        }
        PLRelation::new(arity, polys)
    }
}
