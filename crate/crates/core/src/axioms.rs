//! The axioms of GPLA as term pairs, checked semantically.
//!
//! Each diagrammatic axiom is transcribed once into the term syntax. Wire
//! order is top to bottom; the comment above each entry records the
//! reading of the picture. Scalar families are instantiated at sample
//! values that satisfy their side condition.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::decide::{equal_terms, subset_terms, Verdict};
use crate::error::Result;
use crate::rat::{self, Rat};
use crate::stdlib;
use crate::term::{Generator::*, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Eq,
    /// `lhs ⊆ rhs`
    Leq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarCondition {
    None,
    NonZero,
    Positive,
    Negative,
}

impl ScalarCondition {
    pub fn admits(self, r: &Rat) -> bool {
        match self {
            ScalarCondition::None => true,
            ScalarCondition::NonZero => !r.is_zero(),
            ScalarCondition::Positive => r.is_positive(),
            ScalarCondition::Negative => r.is_negative(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Axiom {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub kind: Kind,
    pub condition: ScalarCondition,
    /// Scalars this instance was built with, in order.
    pub scalars: Vec<Rat>,
}

impl Axiom {
    fn plain(name: &str, lhs: Term, rhs: Term, kind: Kind) -> Self {
        Axiom {
            name: name.to_string(),
            lhs,
            rhs,
            kind,
            condition: ScalarCondition::None,
            scalars: Vec::new(),
        }
    }

    /// Name with its scalar instantiation, e.g. `×[2, -1]`.
    pub fn label(&self) -> String {
        if self.scalars.is_empty() {
            self.name.clone()
        } else {
            let rs: Vec<String> = self.scalars.iter().map(rat::show).collect();
            format!("{}[{}]", self.name, rs.join(", "))
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            Kind::Eq => "=",
            Kind::Leq => "<=",
        };
        write!(f, "{}: {} {op} {}", self.label(), self.lhs, self.rhs)
    }
}

/// Scalars used when no other samples are given: positive, negative,
/// zero, integral and non-integral values.
pub fn default_scalars() -> Vec<Rat> {
    vec![
        rat::int(2),
        rat::int(-1),
        rat::frac(1, 2),
        rat::frac(-3, 5),
        rat::int(0),
    ]
}

fn g(gen: crate::term::Generator) -> Term {
    Term::gen(gen)
}

fn id() -> Term {
    Term::id(1)
}

fn s(r: &Rat) -> Term {
    Term::scalar(r.clone())
}

fn cs(r: &Rat) -> Term {
    g(Coscalar(r.clone()))
}

/// `id ⊕ sw ⊕ id`, the middle exchange on four wires.
fn middle_swap() -> Term {
    id().beside(Term::Swap).beside(id())
}

/// Names of the one-scalar families, with their side conditions.
const ONE_SCALAR: &[(&str, ScalarCondition)] = &[
    ("add", ScalarCondition::None),
    ("zero", ScalarCondition::None),
    ("dup", ScalarCondition::None),
    ("del", ScalarCondition::None),
    ("r-inv", ScalarCondition::NonZero),
    ("r-coinv", ScalarCondition::NonZero),
    ("≤r+", ScalarCondition::Positive),
    ("≤r−", ScalarCondition::Negative),
];

/// The one-scalar axiom `name` at `r`, ignoring its side condition. Used
/// to show that the side conditions are necessary.
pub fn scalar_axiom(name: &str, r: &Rat) -> Option<Axiom> {
    let (lhs, rhs, kind) = match name {
        // (r ⊕ r) ; add = add ; r
        "add" => (s(r).beside(s(r)).then(g(Add)), g(Add).then(s(r)), Kind::Eq),
        // zero ; r = zero
        "zero" => (g(Zero).then(s(r)), g(Zero), Kind::Eq),
        // r ; dup = dup ; (r ⊕ r)
        "dup" => (s(r).then(g(Dup)), g(Dup).then(s(r).beside(s(r))), Kind::Eq),
        // r ; del = del
        "del" => (s(r).then(g(Del)), g(Del), Kind::Eq),
        // r ; r⁻ = id, where r⁻ is the mirrored scalar
        "r-inv" => (s(r).then(cs(r)), id(), Kind::Eq),
        // id = r⁻ ; r
        "r-coinv" => (id(), cs(r).then(s(r)), Kind::Eq),
        // r ; ≤ = ≤ ; r
        "≤r+" => (s(r).then(g(Leq)), g(Leq).then(s(r)), Kind::Eq),
        // r ; ≤ = ≥ ; r
        "≤r−" => (s(r).then(g(Leq)), g(Geq).then(s(r)), Kind::Eq),
        _ => return None,
    };
    let condition = ONE_SCALAR.iter().find(|(n, _)| *n == name)?.1;
    Some(Axiom {
        name: name.to_string(),
        lhs,
        rhs,
        kind,
        condition,
        scalars: vec![r.clone()],
    })
}

fn two_scalar(name: &str, r: &Rat, q: &Rat) -> Axiom {
    let (lhs, rhs) = match name {
        // r ; q = (rq)
        "×" => (s(r).then(s(q)), s(&(r * q))),
        // dup ; (r ⊕ q) ; add = (r + q)
        "+" => (g(Dup).then(s(r).beside(s(q))).then(g(Add)), s(&(r + q))),
        _ => unreachable!("unknown two-scalar family"),
    };
    Axiom {
        name: name.to_string(),
        lhs,
        rhs,
        kind: Kind::Eq,
        condition: ScalarCondition::None,
        scalars: vec![r.clone(), q.clone()],
    }
}

fn matrix_block() -> Vec<Axiom> {
    use Kind::Eq;
    vec![
        // copy is a commutative comonoid
        Axiom::plain(
            "●-coas",
            g(Dup).then(g(Dup).beside(id())),
            g(Dup).then(id().beside(g(Dup))),
            Eq,
        ),
        Axiom::plain("●-coco", g(Dup).then(Term::Swap), g(Dup), Eq),
        Axiom::plain("●-counl", g(Dup).then(g(Del).beside(id())), id(), Eq),
        // addition is a commutative monoid
        Axiom::plain(
            "○-as",
            g(Add).beside(id()).then(g(Add)),
            id().beside(g(Add)).then(g(Add)),
            Eq,
        ),
        Axiom::plain("○-co", Term::Swap.then(g(Add)), g(Add), Eq),
        Axiom::plain("○-unl", g(Zero).beside(id()).then(g(Add)), id(), Eq),
        // add ; dup = (dup ⊕ dup) ; (id ⊕ sw ⊕ id) ; (add ⊕ add)
        Axiom::plain(
            "○●-bi",
            g(Add).then(g(Dup)),
            g(Dup)
                .beside(g(Dup))
                .then(middle_swap())
                .then(g(Add).beside(g(Add))),
            Eq,
        ),
        Axiom::plain("○●-biun", g(Zero).then(g(Dup)), g(Zero).beside(g(Zero)), Eq),
        Axiom::plain("●○-biun", g(Add).then(g(Del)), g(Del).beside(g(Del)), Eq),
        Axiom::plain("○●-bo", g(Zero).then(g(Del)), Term::id(0), Eq),
        // the zero scalar factors through the empty wire
        Axiom::plain("0", s(&rat::zero()), g(Del).then(g(Zero)), Eq),
    ]
}

fn ih_block() -> Vec<Axiom> {
    use Kind::Eq;
    let black_cup = || g(Codup).then(g(Del));
    let white_cup = || g(Add).then(g(Cozero));
    let cup_lhs = id().beside(s(&rat::int(-1))).then(black_cup());
    vec![
        // copy and cocopy form a special Frobenius algebra
        Axiom::plain(
            "●-fr1",
            g(Dup).beside(id()).then(id().beside(g(Codup))),
            g(Codup).then(g(Dup)),
            Eq,
        ),
        Axiom::plain(
            "●-fr2",
            g(Codup).then(g(Dup)),
            id().beside(g(Dup)).then(g(Codup).beside(id())),
            Eq,
        ),
        Axiom::plain("●-sp", g(Dup).then(g(Codup)), id(), Eq),
        Axiom::plain("●-bo", g(Codel).then(g(Del)), Term::id(0), Eq),
        // cocopy is a commutative monoid
        Axiom::plain(
            "●-as",
            g(Codup).beside(id()).then(g(Codup)),
            id().beside(g(Codup)).then(g(Codup)),
            Eq,
        ),
        Axiom::plain("●-co", Term::Swap.then(g(Codup)), g(Codup), Eq),
        Axiom::plain("●-unl", g(Codel).beside(id()).then(g(Codup)), id(), Eq),
        // coadd and add form a special Frobenius algebra
        Axiom::plain(
            "○-fr1",
            g(Coadd).beside(id()).then(id().beside(g(Add))),
            g(Add).then(g(Coadd)),
            Eq,
        ),
        Axiom::plain(
            "○-fr2",
            g(Add).then(g(Coadd)),
            id().beside(g(Coadd)).then(g(Add).beside(id())),
            Eq,
        ),
        Axiom::plain("○-sp", g(Coadd).then(g(Add)), id(), Eq),
        Axiom::plain("○-bo", g(Zero).then(g(Cozero)), Term::id(0), Eq),
        // coadd is a commutative comonoid
        Axiom::plain(
            "○-coas",
            g(Coadd).then(g(Coadd).beside(id())),
            g(Coadd).then(id().beside(g(Coadd))),
            Eq,
        ),
        Axiom::plain("○-coco", g(Coadd).then(Term::Swap), g(Coadd), Eq),
        Axiom::plain("○-counl", g(Coadd).then(g(Cozero).beside(id())), id(), Eq),
        // black cup after a -1 on the lower wire is the white cup
        Axiom::plain("cup-1", cup_lhs.clone(), white_cup(), Eq),
        Axiom::plain("cap-1", cup_lhs.dual(), white_cup().dual(), Eq),
        Axiom::plain("○⊆●", g(Zero), g(Codel), Kind::Leq),
    ]
}

fn order_block() -> Vec<Axiom> {
    use Kind::Eq;
    let leq4 = Term::par_all(std::iter::repeat_n(g(Leq), 4));
    vec![
        Axiom::plain(
            "≤dup",
            g(Geq).then(g(Dup)),
            g(Dup).then(g(Geq).beside(g(Geq))),
            Kind::Leq,
        ),
        Axiom::plain(
            "≤add",
            g(Geq).beside(g(Geq)).then(g(Add)),
            g(Add).then(g(Geq)),
            Eq,
        ),
        Axiom::plain("≤del", g(Geq).then(g(Del)), g(Del), Eq),
        Axiom::plain("≤zero", g(Zero), g(Zero).then(g(Leq)), Kind::Leq),
        // x ≥ y and x ≤ y on copies of x, joined again
        Axiom::plain(
            "antisym",
            g(Dup).then(g(Geq).beside(g(Leq))).then(g(Codup)),
            id(),
            Kind::Leq,
        ),
        // read as: add ; ≤ ; coadd = (coadd ⊕ coadd) ; ≤⁴ ; (id ⊕ sw ⊕ id) ; (add ⊕ add)
        Axiom::plain(
            "Riesz",
            g(Add).then(g(Leq)).then(g(Coadd)),
            g(Coadd)
                .beside(g(Coadd))
                .then(leq4)
                .then(middle_swap())
                .then(g(Add).beside(g(Add))),
            Eq,
        ),
        // ≥ ; ≤ is the full relation
        Axiom::plain("direct", g(Geq).then(g(Leq)), g(Del).then(g(Codel)), Eq),
    ]
}

fn affine_block() -> Vec<Axiom> {
    use Kind::Eq;
    let false_ = || g(One).then(g(Cozero));
    vec![
        Axiom::plain("1-dup", g(One).then(g(Dup)), g(One).beside(g(One)), Eq),
        Axiom::plain("1-del", g(One).then(g(Del)), Term::id(0), Eq),
        // the false diagram disconnects any wire next to it
        Axiom::plain(
            "∅",
            false_().beside(id()),
            false_().beside(g(Del).then(g(Codel))),
            Eq,
        ),
        Axiom::plain("0≤1", g(Zero).then(g(Leq)).then(g(Coone)), Term::id(0), Eq),
    ]
}

/// `codel = zero ; ≤ ∪ zero ; ≥`
pub fn total() -> Axiom {
    Axiom::plain(
        "total",
        g(Codel),
        g(Zero).then(g(Leq)).or(g(Zero).then(g(Geq))),
        Kind::Eq,
    )
}

/// Every axiom, with scalar families instantiated at each admissible
/// sample (pairs of samples for the two-scalar families).
pub fn all_axioms(scalars: &[Rat]) -> Vec<Axiom> {
    let mut out = matrix_block();
    for (name, cond) in ONE_SCALAR {
        for r in scalars.iter().filter(|r| cond.admits(r)) {
            out.push(scalar_axiom(name, r).expect("listed family"));
        }
    }
    for name in ["×", "+"] {
        for r in scalars {
            for q in scalars {
                out.push(two_scalar(name, r, q));
            }
        }
    }
    out.extend(ih_block());
    out.extend(order_block());
    out.extend(affine_block());
    out.push(total());
    out
}

pub fn check_axiom(a: &Axiom) -> Result<Verdict> {
    match a.kind {
        Kind::Eq => equal_terms(&a.lhs, &a.rhs),
        Kind::Leq => subset_terms(&a.lhs, &a.rhs),
    }
}

/// Outcome of one derived law.
#[derive(Debug, Clone)]
pub struct LawCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn law(name: String, verdict: Verdict) -> LawCheck {
    LawCheck {
        name,
        passed: verdict.holds(),
        detail: verdict.to_string(),
    }
}

/// Snake equations, duality invariance on sample pairs, and every step of
/// the derived constructions in [`stdlib::chains`].
pub fn check_derived_laws() -> Result<Vec<LawCheck>> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let z = Term::id(n)
            .beside(Term::cap(n))
            .then(Term::cup(n).beside(Term::id(n)));
        let s = Term::cap(n)
            .beside(Term::id(n))
            .then(Term::id(n).beside(Term::cup(n)));
        out.push(law(
            format!("snake z, n = {n}"),
            equal_terms(&z, &Term::id(n))?,
        ));
        out.push(law(
            format!("snake s, n = {n}"),
            equal_terms(&s, &Term::id(n))?,
        ));
    }
    let pairs = [
        (g(Geq), g(Geq).or(g(Leq))),
        (g(Zero).then(g(Leq)), g(Codel)),
        (g(Codel), g(Zero).then(g(Leq))),
        (g(Dup).then(g(Add)), s(&rat::int(2))),
        (stdlib::relu_term(), stdlib::abs_term()),
        (g(Geq).then(g(Dup)), g(Dup).then(g(Geq).beside(g(Geq)))),
    ];
    for (t, u) in pairs {
        let direct = subset_terms(&t, &u)?;
        let mirrored = subset_terms(&t.dual(), &u.dual())?;
        out.push(LawCheck {
            name: format!("duality {t} <= {u}"),
            passed: direct.holds() == mirrored.holds(),
            detail: format!("{direct} / {mirrored}"),
        });
    }
    for chain in stdlib::chains() {
        for (i, pair) in chain.steps.windows(2).enumerate() {
            out.push(law(
                format!("{} step {}", chain.name, i + 1),
                equal_terms(&pair[0], &pair[1])?,
            ));
        }
    }
    Ok(out)
}
