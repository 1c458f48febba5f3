//! Abstract syntax of diagrams with union, their typing rules, duality and
//! wiring builders.

use std::fmt;

use crate::error::{Error, ParseError, Result};
use crate::rat::{self, Rat};
use crate::stdlib;
use crate::syntax::{self, Expr, Parser, Tok};

/// Number of left and right ports of a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arity {
    pub left: usize,
    pub right: usize,
}

impl Arity {
    pub const fn new(left: usize, right: usize) -> Self {
        Arity { left, right }
    }

    pub const fn reversed(self) -> Self {
        Arity::new(self.right, self.left)
    }

    /// Total number of coordinates of the denoted relation.
    pub const fn dim(self) -> usize {
        self.left + self.right
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.left, self.right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    /// Black comultiplication, copies its input.
    Dup,
    /// Black counit, discards its input.
    Del,
    Codup,
    Codel,
    /// White multiplication, sums its inputs.
    Add,
    /// White unit, the constant 0.
    Zero,
    Coadd,
    Cozero,
    /// The constant 1.
    One,
    Coone,
    Geq,
    Leq,
    Scalar(Rat),
    Coscalar(Rat),
}

impl Generator {
    pub fn arity(&self) -> Arity {
        use Generator::*;
        match self {
            Dup | Coadd => Arity::new(1, 2),
            Codup | Add => Arity::new(2, 1),
            Del | Cozero | Coone => Arity::new(1, 0),
            Codel | Zero | One => Arity::new(0, 1),
            Geq | Leq | Scalar(_) | Coscalar(_) => Arity::new(1, 1),
        }
    }

    /// The mirror-image generator.
    pub fn mirror(&self) -> Generator {
        use Generator::*;
        match self {
            Dup => Codup,
            Codup => Dup,
            Del => Codel,
            Codel => Del,
            Add => Coadd,
            Coadd => Add,
            Zero => Cozero,
            Cozero => Zero,
            One => Coone,
            Coone => One,
            Geq => Leq,
            Leq => Geq,
            Scalar(r) => Coscalar(r.clone()),
            Coscalar(r) => Scalar(r.clone()),
        }
    }

    fn name(&self) -> String {
        use Generator::*;
        match self {
            Dup => "dup".into(),
            Del => "del".into(),
            Codup => "codup".into(),
            Codel => "codel".into(),
            Add => "add".into(),
            Zero => "zero".into(),
            Coadd => "coadd".into(),
            Cozero => "cozero".into(),
            One => "one".into(),
            Coone => "coone".into(),
            Geq => "geq".into(),
            Leq => "leq".into(),
            Scalar(r) => format!("scl({})", rat::show(r)),
            Coscalar(r) => format!("coscl({})", rat::show(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(Generator),
    Id(usize),
    Swap,
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
    Union(Box<Term>, Box<Term>),
}

impl From<Generator> for Term {
    fn from(g: Generator) -> Self {
        Term::Gen(g)
    }
}

impl Term {
    pub fn gen(g: Generator) -> Term {
        Term::Gen(g)
    }

    pub fn id(n: usize) -> Term {
        Term::Id(n)
    }

    pub fn scalar(r: Rat) -> Term {
        Term::Gen(Generator::Scalar(r))
    }

    /// Checked sequential composition.
    pub fn seq(first: Term, second: Term) -> Result<Term> {
        let a = first.arity()?;
        let b = second.arity()?;
        let t = first.then(second);
        if a.right != b.left {
            return Err(type_error(&t, a, b, "sequential composition"));
        }
        Ok(t)
    }

    /// Checked parallel composition.
    pub fn par(top: Term, bottom: Term) -> Result<Term> {
        top.arity()?;
        bottom.arity()?;
        Ok(top.beside(bottom))
    }

    /// Checked union.
    pub fn union(left: Term, right: Term) -> Result<Term> {
        let a = left.arity()?;
        let b = right.arity()?;
        let t = left.or(right);
        if a != b {
            return Err(type_error(&t, a, b, "union"));
        }
        Ok(t)
    }

    /// Unchecked `self ; next`; typing is verified by [`Term::arity`].
    pub fn then(self, next: Term) -> Term {
        Term::Seq(Box::new(self), Box::new(next))
    }

    /// Unchecked `self & other`.
    pub fn beside(self, other: Term) -> Term {
        Term::Par(Box::new(self), Box::new(other))
    }

    /// Unchecked `self | other`.
    pub fn or(self, other: Term) -> Term {
        Term::Union(Box::new(self), Box::new(other))
    }

    /// Right-nested sequence of terms; empty input gives `id(width)`.
    pub fn seq_all(width: usize, terms: impl IntoIterator<Item = Term>) -> Term {
        right_nest(terms.into_iter().collect(), Term::then).unwrap_or(Term::Id(width))
    }

    /// Right-nested tensor of terms; empty input gives `id(0)`.
    pub fn par_all(terms: impl IntoIterator<Item = Term>) -> Term {
        right_nest(terms.into_iter().collect(), Term::beside).unwrap_or(Term::Id(0))
    }

    /// Right-nested union. Panics on an empty list: syntactic unions are nonempty.
    pub fn union_all(terms: impl IntoIterator<Item = Term>) -> Term {
        right_nest(terms.into_iter().collect(), Term::or).expect("union of no terms")
    }

    pub fn arity(&self) -> Result<Arity> {
        match self {
            Term::Gen(g) => Ok(g.arity()),
            Term::Id(n) => Ok(Arity::new(*n, *n)),
            Term::Swap => Ok(Arity::new(2, 2)),
            Term::Seq(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                if x.right != y.left {
                    return Err(type_error(self, x, y, "sequential composition"));
                }
                Ok(Arity::new(x.left, y.right))
            }
            Term::Par(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                Ok(Arity::new(x.left + y.left, x.right + y.right))
            }
            Term::Union(a, b) => {
                let (x, y) = (a.arity()?, b.arity()?);
                if x != y {
                    return Err(type_error(self, x, y, "union"));
                }
                Ok(x)
            }
        }
    }

    /// Mirror image: left ports become right ports.
    pub fn dual(&self) -> Term {
        match self {
            Term::Gen(g) => Term::Gen(g.mirror()),
            Term::Id(n) => Term::Id(*n),
            Term::Swap => Term::Swap,
            Term::Seq(a, b) => b.dual().then(a.dual()),
            Term::Par(a, b) => a.dual().beside(b.dual()),
            Term::Union(a, b) => a.dual().or(b.dual()),
        }
    }

    /// Number of generator occurrences.
    pub fn generator_count(&self) -> usize {
        match self {
            Term::Gen(_) => 1,
            Term::Id(_) | Term::Swap => 0,
            Term::Seq(a, b) | Term::Par(a, b) | Term::Union(a, b) => {
                a.generator_count() + b.generator_count()
            }
        }
    }

    pub fn union_count(&self) -> usize {
        match self {
            Term::Gen(_) | Term::Id(_) | Term::Swap => 0,
            Term::Seq(a, b) | Term::Par(a, b) => a.union_count() + b.union_count(),
            Term::Union(a, b) => 1 + a.union_count() + b.union_count(),
        }
    }

    /// Wiring that sends input wire `i` to output wire `dest[i]`, built from
    /// adjacent swaps.
    pub fn permutation(dest: &[usize]) -> Result<Term> {
        let n = dest.len();
        let mut seen = vec![false; n];
        for &d in dest {
            if d >= n || seen[d] {
                return Err(Error::InvalidPermutation(dest.to_vec()));
            }
            seen[d] = true;
        }
        // Bubble sort the destinations; every adjacent exchange is one layer.
        let mut cur = dest.to_vec();
        let mut layers = Vec::new();
        for pass in 0..n {
            for k in 0..n.saturating_sub(1 + pass) {
                if cur[k] > cur[k + 1] {
                    cur.swap(k, k + 1);
                    layers.push(swap_at(k, n));
                }
            }
        }
        Ok(Term::seq_all(n, layers))
    }

    /// Block symmetry `n + m -> m + n`.
    pub fn sym(n: usize, m: usize) -> Term {
        let dest: Vec<usize> = (0..n).map(|i| m + i).chain(0..m).collect();
        Term::permutation(&dest).expect("block swap is a permutation")
    }

    /// Half turn `2n -> 0` identifying the two blocks, `{(x, x)}`.
    pub fn cup(n: usize) -> Term {
        if n == 0 {
            return Term::Id(0);
        }
        let single = Term::Gen(Generator::Codup).then(Term::Gen(Generator::Del));
        if n == 1 {
            return single;
        }
        // (x_1..x_n, y_1..y_n) -> (x_1, y_1, ..., x_n, y_n)
        let dest: Vec<usize> = (0..n)
            .map(|i| 2 * i)
            .chain((0..n).map(|i| 2 * i + 1))
            .collect();
        let interleave = Term::permutation(&dest).expect("interleaving is a permutation");
        interleave.then(Term::par_all(std::iter::repeat_n(single, n)))
    }

    /// Half turn `0 -> 2n`, `{(x, x)}`.
    pub fn cap(n: usize) -> Term {
        if n == 0 {
            return Term::Id(0);
        }
        let single = Term::Gen(Generator::Codel).then(Term::Gen(Generator::Dup));
        if n == 1 {
            return single;
        }
        // (x_1, x_1', ..., x_n, x_n') -> (x_1..x_n, x_1'..x_n')
        let dest: Vec<usize> = (0..2 * n)
            .map(|k| if k % 2 == 0 { k / 2 } else { n + k / 2 })
            .collect();
        let split = Term::permutation(&dest).expect("deinterleaving is a permutation");
        Term::par_all(std::iter::repeat_n(single, n)).then(split)
    }

    pub fn parse(text: &str) -> Result<Term, ParseError> {
        let expr = syntax::parse_all(text, &mut term_atom)?;
        Ok(from_expr(expr))
    }
}

fn right_nest(mut items: Vec<Term>, join: fn(Term, Term) -> Term) -> Option<Term> {
    let mut acc = items.pop()?;
    while let Some(prev) = items.pop() {
        acc = join(prev, acc);
    }
    Some(acc)
}

fn swap_at(k: usize, width: usize) -> Term {
    let mut parts = Vec::new();
    if k > 0 {
        parts.push(Term::Id(k));
    }
    parts.push(Term::Swap);
    if width - k - 2 > 0 {
        parts.push(Term::Id(width - k - 2));
    }
    Term::par_all(parts)
}

fn type_error(t: &Term, a: Arity, b: Arity, what: &str) -> Error {
    Error::Type {
        term: t.to_string(),
        reason: format!("{what} of {a} with {b}"),
    }
}

fn from_expr(e: Expr<Term>) -> Term {
    match e {
        Expr::Atom(t) => t,
        Expr::Seq(a, b) => from_expr(*a).then(from_expr(*b)),
        Expr::Par(a, b) => from_expr(*a).beside(from_expr(*b)),
        Expr::Union(a, b) => from_expr(*a).or(from_expr(*b)),
    }
}

const ATOMS: &[&str] = &[
    "dup",
    "del",
    "codup",
    "codel",
    "add",
    "zero",
    "coadd",
    "cozero",
    "one",
    "coone",
    "geq",
    "leq",
    "scl(..)",
    "coscl(..)",
    "id",
    "id(..)",
    "sw",
    "cup(..)",
    "cap(..)",
    "max",
    "abs",
    "relu",
    "plus",
    "dupabs",
    "L",
    "diode",
    "unionN(..)",
    "mat(..)",
];

fn term_atom(p: &mut Parser) -> Result<Term, ParseError> {
    use Generator::*;
    let pos = p.pos();
    let name = p.ident()?;
    let paren_nat = |p: &mut Parser| -> Result<usize, ParseError> {
        p.expect(Tok::LParen)?;
        let n = p.nat()?;
        p.expect(Tok::RParen)?;
        Ok(n)
    };
    let paren_rat = |p: &mut Parser| -> Result<Rat, ParseError> {
        p.expect(Tok::LParen)?;
        let r = p.rat()?;
        p.expect(Tok::RParen)?;
        Ok(r)
    };
    let t = match name.as_str() {
        "dup" => Term::Gen(Dup),
        "del" => Term::Gen(Del),
        "codup" => Term::Gen(Codup),
        "codel" => Term::Gen(Codel),
        "add" => Term::Gen(Add),
        "zero" => Term::Gen(Zero),
        "coadd" => Term::Gen(Coadd),
        "cozero" => Term::Gen(Cozero),
        "one" => Term::Gen(One),
        "coone" => Term::Gen(Coone),
        "geq" => Term::Gen(Geq),
        "leq" => Term::Gen(Leq),
        "scl" => Term::Gen(Scalar(paren_rat(p)?)),
        "coscl" => Term::Gen(Coscalar(paren_rat(p)?)),
        "id" => {
            if p.peek() == Some(&Tok::LParen) {
                Term::Id(paren_nat(p)?)
            } else {
                Term::Id(1)
            }
        }
        "sw" => Term::Swap,
        "cup" => Term::cup(paren_nat(p)?),
        "cap" => Term::cap(paren_nat(p)?),
        "max" => stdlib::max_term(),
        "abs" => stdlib::abs_term(),
        "relu" => stdlib::relu_term(),
        "plus" => stdlib::plus_gen(),
        "dupabs" => stdlib::dup_abs(),
        "L" => stdlib::l_gen(),
        "diode" => stdlib::diode_term(),
        "unionN" => {
            let n = paren_nat(p)?;
            if n == 0 {
                return Err(ParseError {
                    pos,
                    expected: vec!["positive block size".into()],
                    found: "0".into(),
                });
            }
            stdlib::union_gen(n)
        }
        "mat" => stdlib::matrix_term(&parse_matrix(p)?),
        _ => {
            return Err(ParseError {
                pos,
                expected: ATOMS.iter().map(|s| s.to_string()).collect(),
                found: format!("`{name}`"),
            })
        }
    };
    Ok(t)
}

/// `mat(a, b, c; d, e, f)`: rows separated by `;`, entries by `,`.
fn parse_matrix(p: &mut Parser) -> Result<stdlib::Matrix, ParseError> {
    let start = p.pos();
    p.expect(Tok::LParen)?;
    let mut rows: Vec<Vec<Rat>> = vec![vec![p.rat()?]];
    loop {
        if p.eat(&Tok::Comma) {
            rows.last_mut().expect("nonempty").push(p.rat()?);
        } else if p.eat(&Tok::Semi) {
            rows.push(vec![p.rat()?]);
        } else {
            p.expect(Tok::RParen)?;
            break;
        }
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err(ParseError {
            pos: start,
            expected: vec!["rows of equal length".into()],
            found: "ragged matrix".into(),
        });
    }
    Ok(stdlib::Matrix::from_rows(rows))
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => write!(f, "{}", g.name()),
            Term::Id(n) => write!(f, "id({n})"),
            Term::Swap => write!(f, "sw"),
            Term::Seq(a, b) => write!(f, "({a} ; {b})"),
            Term::Par(a, b) => write!(f, "({a} & {b})"),
            Term::Union(a, b) => write!(f, "({a} | {b})"),
        }
    }
}
