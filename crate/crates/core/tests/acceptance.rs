//! Acceptance checks. Prints one `criterion N: PASS|FAIL` line per
//! criterion and exits nonzero when any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gpla::axioms::{
    all_axioms, check_axiom, default_scalars, scalar_axiom, Axiom, Kind, ScalarCondition,
};
use gpla::circuits::{transistor, CircuitTerm};
use gpla::normalform::{minimal_valuation, Sign};
use gpla::rat::{frac, int, Rat};
use gpla::semantics::compose_rel;
use gpla::stdlib::{self, matrix_term, union_gen, Matrix};
use gpla::testkit::{check_chain, corpus_pairs, grid_compare, random_term_with_arity, GridOracle};
use gpla::{
    equal, equal_terms, eval, pl_nf, subset, Arity, Constraint, Generator, LinExpr, PLRelation,
    Polyhedron, Term,
};

type Check = Result<String, String>;

const CORPUS_SEEDS: std::ops::Range<u64> = 0..60;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent <= budget, || {
        format!("{what} took {spent:?}, budget {budget:?}")
    })
}

fn g(gen: Generator) -> Term {
    Term::gen(gen)
}

fn corpus() -> Vec<(Term, Term)> {
    corpus_pairs(CORPUS_SEEDS)
}

/// Every axiom instance holds; a corrupted axiom and a scalar family
/// outside its side condition fail.
fn criterion_1() -> Check {
    let start = Instant::now();
    let axioms = all_axioms(&default_scalars());
    ensure(axioms.len() >= 50, || {
        format!("only {} instances", axioms.len())
    })?;
    for a in &axioms {
        let v = check_axiom(a).map_err(|e| format!("{}: {e}", a.label()))?;
        ensure(v.holds(), || format!("{} {v}", a.label()))?;
    }
    let corrupted = Axiom {
        name: "direct, corrupted".into(),
        lhs: g(Generator::Leq).then(g(Generator::Leq)),
        rhs: g(Generator::Del).then(g(Generator::Codel)),
        kind: Kind::Eq,
        condition: ScalarCondition::None,
        scalars: Vec::new(),
    };
    let v = check_axiom(&corrupted).map_err(err)?;
    ensure(!v.holds(), || "corrupted axiom was accepted".into())?;
    let r_inv = scalar_axiom("r-inv", &int(0)).expect("known family");
    ensure(!check_axiom(&r_inv).map_err(err)?.holds(), || {
        "r-inv accepted at 0".into()
    })?;
    let pos = scalar_axiom("≤r+", &int(-1)).expect("known family");
    ensure(!check_axiom(&pos).map_err(err)?.holds(), || {
        "≤r+ accepted at -1".into()
    })?;
    within(start, Duration::from_secs(30), "axiom suite")?;
    Ok(format!("{} instances", axioms.len()))
}

/// Decide agrees with the grid oracle on the random corpus and every
/// counterexample re-verifies by membership.
fn criterion_2() -> Check {
    let start = Instant::now();
    let oracle = GridOracle::default();
    let pairs = corpus();
    ensure(pairs.len() >= 200, || format!("only {} pairs", pairs.len()))?;
    let (mut holds, mut fails) = (0, 0);
    for (t, u) in &pairs {
        let a = t.arity().map_err(err)?;
        ensure(a.left + a.right <= 3, || format!("{t}: arity {a} too wide"))?;
        for x in [t, u] {
            ensure(x.generator_count() <= 8 && x.union_count() <= 2, || {
                format!("{x}: outside the generator or union bounds")
            })?;
        }
        let (r, s) = (eval(t).map_err(err)?, eval(u).map_err(err)?);
        let v = subset(&r, &s).map_err(err)?;
        let report = grid_compare(&r, &s, &oracle).map_err(err)?;
        match v.counterexample() {
            None => {
                holds += 1;
                ensure(report.left_only.is_empty(), || {
                    format!(
                        "{t} <= {u} holds but the grid finds {:?}",
                        report.left_only[0]
                    )
                })?;
            }
            Some(x) => {
                fails += 1;
                let ok = r.member(x).map_err(err)? && !s.member(x).map_err(err)?;
                ensure(ok, || {
                    format!("{t} <= {u}: counterexample does not re-verify")
                })?;
            }
        }
    }
    within(start, Duration::from_secs(120), "corpus")?;
    Ok(format!("{} pairs, {holds} hold, {fails} fail", pairs.len()))
}

fn distinct_terms(pairs: &[(Term, Term)]) -> Vec<Term> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (t, u) in pairs {
        for x in [t, u] {
            if seen.insert(x.to_string()) {
                out.push(x.clone());
            }
        }
    }
    out
}

/// Normal forms preserve denotation, valuations are minimal and interior
/// points meet every strict sign condition.
fn criterion_3() -> Check {
    let oracle = GridOracle::default();
    let terms = distinct_terms(&corpus());
    let mut cells = 0;
    for t in &terms {
        let r = eval(t).map_err(err)?;
        let nf = pl_nf(&r).map_err(err)?;
        let back = nf.to_relation();
        ensure(
            grid_compare(&r, &back, &oracle).map_err(err)?.agrees(),
            || format!("{t}: grid disagreement after normalising"),
        )?;
        ensure(equal(&r, &back).map_err(err)?.holds(), || {
            format!("{t}: normal form changes the relation")
        })?;
        for cell in nf.cells() {
            cells += 1;
            let poly = nf.cell_polyhedron(cell);
            let least = minimal_valuation(&poly, nf.hyperplanes()).map_err(err)?;
            ensure(least == cell.valuation, || {
                format!("{t}: cell {} is not minimal", cell.signs())
            })?;
            let x = nf.interior_point(cell).map_err(err)?;
            ensure(r.member(&x).map_err(err)?, || {
                format!("{t}: interior point outside")
            })?;
            for (h, sign) in nf.hyperplanes().iter().zip(&cell.valuation) {
                // a signed entry needs a witness with the strict sign
                let range = poly.range_of(h.expr()).map_err(err)?;
                let v = h.eval(&x);
                let zero = int(0);
                let ok = match sign {
                    Sign::Zero => v == zero,
                    Sign::NonNeg => v > zero && !range.is_zero_point(),
                    Sign::NonPos => v < zero && !range.is_zero_point(),
                };
                ensure(ok, || format!("{t}: cell {} fails at {h}", cell.signs()))?;
            }
        }
    }
    Ok(format!("{} terms, {cells} cells", terms.len()))
}

/// Nonempty random states and effects of width `n`.
fn samples(n: usize, arity: Arity, count: usize) -> Result<Vec<(Term, PLRelation)>, String> {
    let mut out = Vec::new();
    let mut seed = 1000 * n as u64 + arity.left as u64;
    while out.len() < count {
        seed += 1;
        let t = random_term_with_arity(seed, arity, 5, 1);
        let r = eval(&t).map_err(err)?;
        if !r.is_empty() && r.polys().iter().any(|p| !p.is_empty()) {
            out.push((t, r));
        }
    }
    Ok(out)
}

/// Union composition law, the dupabs laws, the recovered generators and
/// the max/abs/relu identities.
fn criterion_4() -> Check {
    let mut laws = 0;
    for n in 1..=2 {
        let u = union_gen(n);
        let u_rel = eval(&u).map_err(err)?;
        let states = samples(n, Arity::new(0, n), 4)?;
        for (c, rc) in &states {
            for (d, rd) in &states {
                let lhs = c.clone().beside(d.clone()).then(u.clone());
                let v = equal(&eval(&lhs).map_err(err)?, &rc.union(rd).map_err(err)?);
                ensure(v.map_err(err)?.holds(), || {
                    format!("union law fails for {c}, {d}")
                })?;
                laws += 1;
            }
        }
        // mirrored: effects composed after the opposite generator
        let effects = samples(n, Arity::new(n, 0), 3)?;
        for (c, rc) in &effects {
            for (d, rd) in &effects {
                let cd = eval(&c.clone().beside(d.clone())).map_err(err)?;
                let lhs = compose_rel(&u_rel.opposite(), &cd).map_err(err)?;
                let v = equal(&lhs, &rc.union(rd).map_err(err)?).map_err(err)?;
                ensure(v.holds(), || {
                    format!("union law fails for effects {c}, {d}")
                })?;
                laws += 1;
            }
        }
    }
    for chain in stdlib::chains() {
        if let Some((i, v)) = check_chain(&chain.steps).map_err(err)? {
            return Err(format!("{} step {}: {v}", chain.name, i + 1));
        }
        laws += chain.steps.len() - 1;
    }
    let recovered = [
        (stdlib::geq_from_l(), g(Generator::Geq)),
        (stdlib::l_from_max(), stdlib::l_gen()),
    ];
    for (a, b) in &recovered {
        ensure(equal_terms(a, b).map_err(err)?.holds(), || {
            format!("{a} != {b}")
        })?;
        laws += 1;
    }
    // the functions themselves, against integer arithmetic
    let max = eval(&stdlib::max_term()).map_err(err)?;
    let abs = eval(&stdlib::abs_term()).map_err(err)?;
    let relu = eval(&stdlib::relu_term()).map_err(err)?;
    for x in -3i64..=3 {
        for (rel, y) in [(&abs, x.abs()), (&relu, x.max(0))] {
            ensure(rel.member(&[int(x), int(y)]).map_err(err)?, || {
                format!("f({x}) != {y}")
            })?;
            ensure(!rel.member(&[int(x), int(y + 1)]).map_err(err)?, || {
                format!("f({x}) has two values")
            })?;
        }
        for z in -3..=3 {
            let m = x.max(z);
            let at = |v: i64| [int(x), int(z), int(v)];
            ensure(max.member(&at(m)).map_err(err)?, || {
                format!("max({x}, {z})")
            })?;
            ensure(!max.member(&at(m - 1)).map_err(err)?, || {
                format!("max({x}, {z})")
            })?;
        }
    }
    Ok(format!("{laws} identities"))
}

fn snake(n: usize) -> [Term; 2] {
    let z = Term::id(n)
        .beside(Term::cap(n))
        .then(Term::cup(n).beside(Term::id(n)));
    let s = Term::cap(n)
        .beside(Term::id(n))
        .then(Term::id(n).beside(Term::cup(n)));
    [z, s]
}

/// Snake equations and duality invariance over the corpus.
fn criterion_5() -> Check {
    for n in 1..=3 {
        for t in snake(n) {
            ensure(equal_terms(&t, &Term::id(n)).map_err(err)?.holds(), || {
                format!("snake fails at n = {n}")
            })?;
        }
    }
    let pairs = corpus();
    for (t, u) in &pairs {
        let direct = subset(&eval(t).map_err(err)?, &eval(u).map_err(err)?).map_err(err)?;
        let (td, ud) = (eval(&t.dual()).map_err(err)?, eval(&u.dual()).map_err(err)?);
        let mirrored = subset(&td, &ud).map_err(err)?;
        ensure(direct.holds() == mirrored.holds(), || {
            format!("{t} <= {u}: {direct} but mirrored {mirrored}")
        })?;
        let opp = eval(t).map_err(err)?.opposite();
        ensure(equal(&td, &opp).map_err(err)?.holds(), || {
            format!("{t}: dual is not the opposite relation")
        })?;
    }
    Ok(format!("3 snake sizes, {} dual pairs", pairs.len()))
}

fn solve(src: &str) -> Result<PLRelation, String> {
    CircuitTerm::parse(src).map_err(err)?.solve().map_err(err)
}

/// Drives `c` from ground, probes the first output node without load and
/// ties the second output to ground.
fn grounded(src: &str) -> Result<Term, String> {
    use Generator::*;
    let c = CircuitTerm::parse(src)
        .map_err(err)?
        .compile()
        .map_err(err)?;
    let source = Term::id(1).beside(g(Zero)).beside(g(Codel));
    let sink = Term::id(1)
        .beside(g(Cozero))
        .beside(g(Cozero))
        .beside(g(Del));
    Ok(source.then(c).then(sink))
}

fn coordinate(dim: usize, k: usize) -> LinExpr {
    let mut c = vec![0; dim];
    c[k] = 1;
    LinExpr::from_ints(&c, 0)
}

fn circuit_diode() -> Result<(), String> {
    let d = solve("diode")?;
    ensure(pl_nf(&d).map_err(err)?.cells().len() == 2, || {
        "diode cell count".into()
    })?;
    ensure(d.polys().len() == 2, || "diode polyhedron count".into())?;
    // coordinates (v1, i, v2, i')
    let drop = LinExpr::from_ints(&[1, 0, -1, 0], 0);
    for p in d.polys() {
        let i = p.range_of(&coordinate(4, 1)).map_err(err)?;
        let dv = p.range_of(&drop).map_err(err)?;
        ensure(i.is_zero_point() || dv.is_zero_point(), || {
            format!("diode cell with current {i} and drop {dv}")
        })?;
    }
    Ok(())
}

fn circuit_transistor() -> Result<(), String> {
    let rel = transistor().solve().map_err(err)?;
    // (ve, ie, vc, ic, vb, ib); every row is homogeneous, so the relation is
    // a union of cones and the region vb - ve >= 1 stands for vb > ve
    for p in rel.polys() {
        for c in p.constraints() {
            ensure(c.expr.is_constant() || c.expr.constant == int(0), || {
                "transistor relation is not conic".into()
            })?;
        }
        let blocking = p
            .with(Constraint::ge(LinExpr::from_ints(&[-1, 0, 0, 0, 1, 0], -1)))
            .map_err(err)?;
        if blocking.is_empty() {
            continue;
        }
        for k in [1, 3, 5] {
            let r = blocking.range_of(&coordinate(6, k)).map_err(err)?;
            ensure(r.is_zero_point(), || {
                format!("blocking current {k} ranges over {r}")
            })?;
        }
    }
    ensure(
        rel.member(&[int(-2), int(0), int(5), int(0), int(0), int(0)])
            .map_err(err)?,
        || "blocked transistor missing".into(),
    )?;
    Ok(())
}

/// Diode cells, divider, half-wave rectifier and transistor.
fn criterion_6() -> Check {
    let budget = Duration::from_secs(5);
    let start = Instant::now();
    circuit_diode()?;
    within(start, budget, "diode")?;
    let start = Instant::now();
    let divider = grounded("vsrc ; res(1) ; split ; (ewire & res(1))")?;
    let half = Term::scalar(frac(1, 2));
    ensure(equal_terms(&divider, &half).map_err(err)?.holds(), || {
        "divider".into()
    })?;
    within(start, budget, "divider")?;
    let start = Instant::now();
    let rectifier = grounded("vsrc ; diode ; split ; (ewire & res(1))")?;
    ensure(
        equal_terms(&rectifier, &stdlib::relu_term())
            .map_err(err)?
            .holds(),
        || "half-wave rectifier".into(),
    )?;
    within(start, budget, "rectifier")?;
    let start = Instant::now();
    circuit_transistor()?;
    within(start, budget, "transistor")?;
    Ok("4 circuits".into())
}

/// The 4x3 matrix with r = 2, s = 3.
fn criterion_7() -> Check {
    let (r, s) = (2, 3);
    let rows: [[i64; 3]; 4] = [[r, 0, 0], [s, 1, 0], [1, 0, 0], [0, 0, 0]];
    let a = Matrix::from_ints(&rows.iter().map(|row| &row[..]).collect::<Vec<_>>());
    let rel = eval(&matrix_term(&a)).map_err(err)?;
    ensure(rel.arity() == Arity::new(3, 4), || {
        format!("arity {}", rel.arity())
    })?;
    let xs: [[i64; 3]; 5] = [[1, 1, 1], [0, 0, 0], [-2, 5, 7], [3, -1, 0], [1, 2, -3]];
    for x in xs {
        let y: Vec<i64> = rows
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        let point: Vec<Rat> = x.iter().chain(&y).map(|&v| int(v)).collect();
        ensure(rel.member(&point).map_err(err)?, || {
            format!("{x:?} -> {y:?} missing")
        })?;
        let mut off = point.clone();
        off[3] += int(1);
        ensure(!rel.member(&off).map_err(err)?, || {
            format!("{x:?} has a second image")
        })?;
    }
    ensure(
        rel.member(&[1, 1, 1, 2, 4, 1, 0].map(int)).map_err(err)?,
        || "(1,1,1) must map to (2,4,1,0)".into(),
    )?;
    // y_i - (A x)_i = 0 written out row by row
    let graph: Vec<Constraint> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut c: Vec<i64> = row.iter().map(|v| -v).collect();
            c.extend((0..4).map(|j| i64::from(i == j)));
            Constraint::eq(LinExpr::from_ints(&c, 0))
        })
        .collect();
    let direct = PLRelation::single(Arity::new(3, 4), Polyhedron::new(7, graph).map_err(err)?)
        .map_err(err)?;
    ensure(equal(&rel, &direct).map_err(err)?.holds(), || {
        "matrix relation differs".into()
    })?;
    Ok("5 sample points".into())
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check); 7] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
    ];
    let mut failed = 0;
    for (n, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let spent = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {n}: PASS ({note}, {spent:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
