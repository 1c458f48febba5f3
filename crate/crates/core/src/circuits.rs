//! Electrical circuits compiled to GPLA terms.
//!
//! An electrical wire becomes two GPLA wires, voltage above current; a
//! signal wire stays a single wire. Current is positive when it flows
//! from left to right.
//!
//! ```text
//!   electrical port  ──E──   ↦   ── v ──
//!                                ── i ──
//!   signal port      ──S──   ↦   ── s ──
//! ```
//!
//! Elements with a signal port put it above the electrical one.

use std::fmt;

use num_traits::Signed;

use crate::error::{Error, ParseError, Result};
use crate::rat::{self, Rat};
use crate::semantics::{eval, PLRelation};
use crate::stdlib;
use crate::syntax::{self, Expr, Parser, Tok};
use crate::term::{Generator::*, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Port {
    Electrical,
    Signal,
}

impl Port {
    pub fn width(self) -> usize {
        match self {
            Port::Electrical => 2,
            Port::Signal => 1,
        }
    }

    fn code(self) -> char {
        match self {
            Port::Electrical => 'e',
            Port::Signal => 's',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    /// `v1 - v2 = R i`, with `R >= 0`.
    Resistor(Rat),
    /// Conducts with no drop when `i >= 0`; blocks (`i = 0`) when `v1 <= v2`.
    Diode,
    /// `[S, E] -> [E]`: `v2 - v1 = s`, current passes through.
    VSource,
    /// `[S, E] -> [E]`: `i1 = i2 = s`, voltages free.
    ISource,
    /// `[E] -> [S, E]`: passes through, `s = i`.
    Ammeter,
    /// `[E] -> [S, E]`: no current, `s = v1 - v2`.
    Voltmeter,
    /// `[E] -> [E, E]`: one node, `i0 = i1 + i2`.
    Split,
    /// `[E, E] -> [E]`
    Merge,
    /// `[E] -> []`: dangling terminal, no current.
    OpenEnd,
    /// `[] -> [E]`
    Start,
    /// `[S] -> [S]`: multiplies a signal by a constant.
    Gain(Rat),
}

impl Element {
    pub fn ports(&self) -> (Vec<Port>, Vec<Port>) {
        use Port::{Electrical as E, Signal as S};
        match self {
            Element::Resistor(_) | Element::Diode => (vec![E], vec![E]),
            Element::VSource | Element::ISource => (vec![S, E], vec![E]),
            Element::Ammeter | Element::Voltmeter => (vec![E], vec![S, E]),
            Element::Split => (vec![E], vec![E, E]),
            Element::Merge => (vec![E, E], vec![E]),
            Element::OpenEnd => (vec![E], vec![]),
            Element::Start => (vec![], vec![E]),
            Element::Gain(_) => (vec![S], vec![S]),
        }
    }

    /// The GPLA term of a single element.
    pub fn compile(&self) -> Result<Term> {
        let g = Term::gen;
        let id = Term::id;
        let neg = || Term::scalar(rat::int(-1));
        Ok(match self {
            Element::Resistor(r) => {
                if r.is_negative() {
                    return Err(Error::Type {
                        term: self.to_string(),
                        reason: "resistance must be nonnegative".into(),
                    });
                }
                // (v1, i) ↦ (v1 - R i, i)
                id(1).beside(g(Dup)).then(
                    id(1)
                        .beside(Term::scalar(-r.clone()))
                        .then(g(Add))
                        .beside(id(1)),
                )
            }
            Element::Diode => {
                // v2 = v1 + e where (-i, e) lies on the diode graph
                let drop = neg().then(stdlib::diode_term());
                id(1)
                    .beside(g(Dup))
                    .then(id(1).beside(drop).then(g(Add)).beside(id(1)))
            }
            Element::VSource => g(Add).beside(id(1)),
            Element::ISource => g(Dup)
                .beside(g(Del))
                .beside(id(1))
                .then(id(1).beside(Term::cup(1)))
                .then(g(Codel).beside(id(1))),
            Element::Ammeter => id(1).beside(g(Dup)).then(Term::Swap.beside(id(1))),
            Element::Voltmeter => g(Coadd).beside(g(Cozero)).then(id(2).beside(g(Zero))),
            Element::Split => g(Dup)
                .beside(g(Coadd))
                .then(id(1).beside(Term::Swap).beside(id(1))),
            Element::Merge => id(1)
                .beside(Term::Swap)
                .beside(id(1))
                .then(g(Codup).beside(g(Add))),
            Element::OpenEnd => g(Del).beside(g(Cozero)),
            Element::Start => g(Codel).beside(g(Zero)),
            Element::Gain(r) => Term::scalar(r.clone()),
        })
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Resistor(r) => write!(f, "res({})", rat::show(r)),
            Element::Diode => write!(f, "diode"),
            Element::VSource => write!(f, "vsrc"),
            Element::ISource => write!(f, "isrc"),
            Element::Ammeter => write!(f, "amm"),
            Element::Voltmeter => write!(f, "vmm"),
            Element::Split => write!(f, "split"),
            Element::Merge => write!(f, "merge"),
            Element::OpenEnd => write!(f, "open"),
            Element::Start => write!(f, "start"),
            Element::Gain(r) => write!(f, "gain({})", rat::show(r)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitTerm {
    Elem(Element),
    /// Electrical wire.
    EId,
    /// Signal wire.
    SId,
    /// Crossing of two electrical wires.
    ESwap,
    /// Crossing of two wires of the given types; the first starts on top.
    Cross(Port, Port),
    ESeq(Box<CircuitTerm>, Box<CircuitTerm>),
    EPar(Box<CircuitTerm>, Box<CircuitTerm>),
    /// The same circuit traversed right to left; currents change sign.
    Reverse(Box<CircuitTerm>),
}

impl From<Element> for CircuitTerm {
    fn from(e: Element) -> Self {
        CircuitTerm::Elem(e)
    }
}

impl CircuitTerm {
    pub fn then(self, next: impl Into<CircuitTerm>) -> CircuitTerm {
        CircuitTerm::ESeq(Box::new(self), Box::new(next.into()))
    }

    pub fn beside(self, other: impl Into<CircuitTerm>) -> CircuitTerm {
        CircuitTerm::EPar(Box::new(self), Box::new(other.into()))
    }

    pub fn reversed(self) -> CircuitTerm {
        CircuitTerm::Reverse(Box::new(self))
    }

    /// Left and right boundary port types.
    pub fn ports(&self) -> Result<(Vec<Port>, Vec<Port>)> {
        use Port::{Electrical as E, Signal as S};
        match self {
            CircuitTerm::Elem(e) => Ok(e.ports()),
            CircuitTerm::EId => Ok((vec![E], vec![E])),
            CircuitTerm::SId => Ok((vec![S], vec![S])),
            CircuitTerm::ESwap => Ok((vec![E, E], vec![E, E])),
            CircuitTerm::Cross(a, b) => Ok((vec![*a, *b], vec![*b, *a])),
            CircuitTerm::ESeq(a, b) => {
                let (l, m1) = a.ports()?;
                let (m2, r) = b.ports()?;
                if m1 != m2 {
                    return Err(Error::Type {
                        term: self.to_string(),
                        reason: format!(
                            "right ports {} of the first circuit meet left ports {}",
                            port_list(&m1),
                            port_list(&m2)
                        ),
                    });
                }
                Ok((l, r))
            }
            CircuitTerm::EPar(a, b) => {
                let (mut l, mut r) = a.ports()?;
                let (l2, r2) = b.ports()?;
                l.extend(l2);
                r.extend(r2);
                Ok((l, r))
            }
            CircuitTerm::Reverse(c) => {
                let (l, r) = c.ports()?;
                Ok((r, l))
            }
        }
    }

    /// Translates to a GPLA term after checking port types.
    pub fn compile(&self) -> Result<Term> {
        self.ports()?;
        self.compile_typed()
    }

    fn compile_typed(&self) -> Result<Term> {
        match self {
            CircuitTerm::Elem(e) => e.compile(),
            CircuitTerm::EId => Ok(Term::id(2)),
            CircuitTerm::SId => Ok(Term::id(1)),
            CircuitTerm::ESwap => Ok(Term::sym(2, 2)),
            CircuitTerm::Cross(a, b) => Ok(Term::sym(a.width(), b.width())),
            CircuitTerm::ESeq(a, b) => Ok(a.compile_typed()?.then(b.compile_typed()?)),
            CircuitTerm::EPar(a, b) => Ok(a.compile_typed()?.beside(b.compile_typed()?)),
            CircuitTerm::Reverse(c) => {
                let (l, r) = c.ports()?;
                let t = c.compile_typed()?;
                Ok(flip_currents(&r).then(t.dual()).then(flip_currents(&l)))
            }
        }
    }

    /// The relation between boundary voltages, currents and signals.
    pub fn solve(&self) -> Result<PLRelation> {
        eval(&self.compile()?)
    }

    pub fn parse(text: &str) -> Result<CircuitTerm, ParseError> {
        let e = syntax::parse_all(text, &mut circuit_atom)?;
        from_expr(e).map_err(|()| ParseError {
            pos: syntax::find_token(text, &Tok::Bar).unwrap_or(0),
            expected: vec!["`;`".into(), "`&`".into(), "end of input".into()],
            found: "`|` (circuits have no union)".into(),
        })
    }
}

/// Negates the current wire of every electrical port.
fn flip_currents(ports: &[Port]) -> Term {
    Term::par_all(ports.iter().map(|p| match p {
        Port::Electrical => Term::id(1).beside(Term::scalar(rat::int(-1))),
        Port::Signal => Term::id(1),
    }))
}

fn port_list(ps: &[Port]) -> String {
    let s: String = ps.iter().map(|p| p.code()).collect();
    format!("[{s}]")
}

impl fmt::Display for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitTerm::Elem(e) => write!(f, "{e}"),
            CircuitTerm::EId => write!(f, "ewire"),
            CircuitTerm::SId => write!(f, "swire"),
            CircuitTerm::ESwap => write!(f, "esw"),
            CircuitTerm::Cross(a, b) => write!(f, "sw({}{})", a.code(), b.code()),
            CircuitTerm::ESeq(a, b) => write!(f, "({a} ; {b})"),
            CircuitTerm::EPar(a, b) => write!(f, "({a} & {b})"),
            CircuitTerm::Reverse(c) => write!(f, "rev({c})"),
        }
    }
}

fn from_expr(e: Expr<CircuitTerm>) -> Result<CircuitTerm, ()> {
    Ok(match e {
        Expr::Atom(c) => c,
        Expr::Seq(a, b) => from_expr(*a)?.then(from_expr(*b)?),
        Expr::Par(a, b) => from_expr(*a)?.beside(from_expr(*b)?),
        Expr::Union(..) => return Err(()),
    })
}

const ATOMS: &[&str] = &[
    "res(..)",
    "diode",
    "vsrc",
    "isrc",
    "amm",
    "vmm",
    "split",
    "merge",
    "open",
    "start",
    "gain(..)",
    "ewire",
    "swire",
    "esw",
    "sw(ee|es|se|ss)",
    "rev(..)",
    "transistor",
];

fn circuit_atom(p: &mut Parser) -> Result<CircuitTerm, ParseError> {
    let pos = p.pos();
    let name = p.ident()?;
    let paren_rat = |p: &mut Parser| -> Result<Rat, ParseError> {
        p.expect(Tok::LParen)?;
        let r = p.rat()?;
        p.expect(Tok::RParen)?;
        Ok(r)
    };
    Ok(match name.as_str() {
        "res" => {
            let r = paren_rat(p)?;
            if r.is_negative() {
                return Err(ParseError {
                    pos,
                    expected: vec!["nonnegative resistance".into()],
                    found: rat::show(&r),
                });
            }
            Element::Resistor(r).into()
        }
        "diode" => Element::Diode.into(),
        "vsrc" => Element::VSource.into(),
        "isrc" => Element::ISource.into(),
        "amm" => Element::Ammeter.into(),
        "vmm" => Element::Voltmeter.into(),
        "split" => Element::Split.into(),
        "merge" => Element::Merge.into(),
        "open" => Element::OpenEnd.into(),
        "start" => Element::Start.into(),
        "gain" => Element::Gain(paren_rat(p)?).into(),
        "ewire" => CircuitTerm::EId,
        "swire" => CircuitTerm::SId,
        "esw" => CircuitTerm::ESwap,
        "sw" => {
            p.expect(Tok::LParen)?;
            let kind_pos = p.pos();
            let kind = p.ident()?;
            p.expect(Tok::RParen)?;
            let port = |c: char| match c {
                'e' => Some(Port::Electrical),
                's' => Some(Port::Signal),
                _ => None,
            };
            let mut cs = kind.chars();
            match (
                cs.next().and_then(port),
                cs.next().and_then(port),
                cs.next(),
            ) {
                (Some(a), Some(b), None) => CircuitTerm::Cross(a, b),
                _ => {
                    return Err(ParseError {
                        pos: kind_pos,
                        expected: vec!["ee".into(), "es".into(), "se".into(), "ss".into()],
                        found: format!("`{kind}`"),
                    })
                }
            }
        }
        "rev" => {
            p.expect(Tok::LParen)?;
            let inner_pos = p.pos();
            let inner = p.expr(&mut circuit_atom)?;
            p.expect(Tok::RParen)?;
            let c = from_expr(inner).map_err(|()| ParseError {
                pos: inner_pos,
                expected: vec!["circuit without `|`".into()],
                found: "union".into(),
            })?;
            c.reversed()
        }
        "transistor" => transistor(),
        _ => {
            return Err(ParseError {
                pos,
                expected: ATOMS.iter().map(|s| s.to_string()).collect(),
                found: format!("`{name}`"),
            })
        }
    })
}

/// Idealized transistor, `[emitter, collector] -> [base]`.
///
/// The emitter branch is an ammeter followed by a diode; the collector
/// branch is a current source driven by the negated ammeter reading. Both
/// branches meet at the base node, so whatever current enters through the
/// emitter leaves through the collector.
pub fn transistor() -> CircuitTerm {
    use Port::{Electrical as E, Signal as S};
    let emitter = CircuitTerm::from(Element::Ammeter).beside(CircuitTerm::EId);
    let route = CircuitTerm::Cross(S, E).beside(CircuitTerm::EId);
    let collector = CircuitTerm::from(Element::Gain(rat::int(-1)))
        .beside(CircuitTerm::EId)
        .then(Element::ISource);
    emitter
        .then(route)
        .then(CircuitTerm::from(Element::Diode).beside(collector))
        .then(Element::Merge)
}
