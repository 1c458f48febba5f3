//! Random terms, an exhaustive grid oracle and a chain checker, shared by
//! the property suites.
//!
//! The grid oracle only sees grid points, so it can miss thin cells. It is
//! a one-sided check: the exact decision procedure is authoritative.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decide::{equal_terms, Verdict};
use crate::error::{Error, Result};
use crate::rat::{self, Rat};
use crate::semantics::PLRelation;
use crate::term::{Arity, Generator, Term};

/// Rational grid `{-radius, -radius + step, ..., radius}^dim`.
#[derive(Debug, Clone)]
pub struct GridOracle {
    radius: Rat,
    step: Rat,
}

impl Default for GridOracle {
    fn default() -> Self {
        GridOracle {
            radius: rat::int(3),
            step: rat::frac(1, 2),
        }
    }
}

impl GridOracle {
    pub fn new(radius: Rat, step: Rat) -> Result<Self> {
        if step <= rat::zero() || radius < rat::zero() {
            return Err(Error::Internal(
                "grid needs step > 0 and radius >= 0".into(),
            ));
        }
        Ok(GridOracle { radius, step })
    }

    /// Grid values along one axis, in increasing order.
    pub fn axis(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        let mut x = -self.radius.clone();
        while x <= self.radius {
            out.push(x.clone());
            x += &self.step;
        }
        out
    }

    /// Every grid point of dimension `dim`, in lexicographic order.
    pub fn points(&self, dim: usize) -> Vec<Vec<Rat>> {
        let axis = self.axis();
        let mut out: Vec<Vec<Rat>> = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |x| {
                        let mut q = p.clone();
                        q.push(x.clone());
                        q
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct GridReport {
    pub both: usize,
    pub neither: usize,
    pub left_only: Vec<Vec<Rat>>,
    pub right_only: Vec<Vec<Rat>>,
}

impl GridReport {
    pub fn agrees(&self) -> bool {
        self.left_only.is_empty() && self.right_only.is_empty()
    }
}

/// Classifies every grid point by exact membership in `r` and `s`.
pub fn grid_compare(r: &PLRelation, s: &PLRelation, oracle: &GridOracle) -> Result<GridReport> {
    if r.arity() != s.arity() {
        return Err(Error::ArityMismatch {
            left: r.arity(),
            right: s.arity(),
        });
    }
    let mut report = GridReport::default();
    for p in oracle.points(r.dim()) {
        match (r.member(&p)?, s.member(&p)?) {
            (true, true) => report.both += 1,
            (false, false) => report.neither += 1,
            (true, false) => report.left_only.push(p),
            (false, true) => report.right_only.push(p),
        }
    }
    Ok(report)
}

/// Checks that consecutive steps denote the same relation. Returns the
/// index of the first failing step with its verdict.
pub fn check_chain(steps: &[Term]) -> Result<Option<(usize, Verdict)>> {
    for (i, pair) in steps.windows(2).enumerate() {
        let v = equal_terms(&pair[0], &pair[1])?;
        if !v.holds() {
            return Ok(Some((i, v)));
        }
    }
    Ok(None)
}

const SCALARS: &[(i64, i64)] = &[(2, 1), (-1, 1), (1, 2), (-3, 5), (3, 1)];

fn any_generator(rng: &mut ChaCha8Rng) -> Generator {
    use Generator::*;
    let pick = |rng: &mut ChaCha8Rng| {
        let (n, d) = *SCALARS.choose(rng).expect("nonempty");
        rat::frac(n, d)
    };
    match rng.gen_range(0..14) {
        0 => Dup,
        1 => Del,
        2 => Codup,
        3 => Codel,
        4 => Add,
        5 => Zero,
        6 => Coadd,
        7 => Cozero,
        8 => One,
        9 => Coone,
        10 => Geq,
        11 => Leq,
        12 => Scalar(pick(rng)),
        _ => Coscalar(pick(rng)),
    }
}

/// A random generator of the given arity.
fn generator_of(rng: &mut ChaCha8Rng, arity: Arity) -> Generator {
    loop {
        let g = any_generator(rng);
        if g.arity() == arity {
            return g;
        }
    }
}

/// A random generator, possibly replaced by a union of two generators of
/// the same arity. Returns the term and its generator count.
fn slot(rng: &mut ChaCha8Rng, g: Generator, unions_left: &mut usize, room: usize) -> (Term, usize) {
    if *unions_left > 0 && room >= 2 && rng.gen_bool(0.35) {
        *unions_left -= 1;
        let other = generator_of(rng, g.arity());
        (Term::gen(g).or(Term::gen(other)), 2)
    } else {
        (Term::gen(g), 1)
    }
}

/// `id(p) ⊕ t ⊕ id(rest)`, omitting empty identities.
fn place(p: usize, t: Term, rest: usize) -> Term {
    let mut parts = Vec::new();
    if p > 0 {
        parts.push(Term::id(p));
    }
    parts.push(t);
    if rest > 0 {
        parts.push(Term::id(rest));
    }
    Term::par_all(parts)
}

/// Layered random term of exactly the given arity. Widths stay within
/// `max(n, m, 3)`. `max_gens` bounds the generator count provided it is at
/// least `|n - m|`.
pub fn random_term_with_arity(seed: u64, arity: Arity, max_gens: usize, max_unions: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (n, m) = (arity.left, arity.right);
    let cap = n.max(m).max(3);
    let mut width = n;
    let mut used = 0;
    let mut unions_left = max_unions;
    let mut layers: Vec<Term> = Vec::new();
    let target_gens = rng.gen_range(0..=max_gens);
    let mut attempts = 0;
    while used < target_gens && attempts < 200 {
        attempts += 1;
        if width >= 2 && rng.gen_bool(0.2) {
            let p = rng.gen_range(0..width - 1);
            layers.push(place(p, Term::Swap, width - p - 2));
        }
        let g = any_generator(&mut rng);
        let a = g.arity();
        if a.left > width {
            continue;
        }
        let next = width - a.left + a.right;
        if next > cap || used + 1 + next.abs_diff(m) > max_gens {
            continue;
        }
        let room = max_gens - used - next.abs_diff(m);
        let (t, cost) = slot(&mut rng, g, &mut unions_left, room);
        let p = rng.gen_range(0..=width - a.left);
        layers.push(place(p, t, width - a.left - p));
        used += cost;
        width = next;
    }
    // close the gap to the target width
    while width != m {
        let (g, l) = if width > m {
            let shrink: &[Generator] = if width >= 2 {
                &[
                    Generator::Add,
                    Generator::Codup,
                    Generator::Del,
                    Generator::Cozero,
                ]
            } else {
                &[Generator::Del, Generator::Cozero, Generator::Coone]
            };
            let g = shrink.choose(&mut rng).expect("nonempty").clone();
            let l = g.arity().left;
            (g, l)
        } else if width >= 1 && rng.gen_bool(0.5) {
            let g = [Generator::Dup, Generator::Coadd]
                .choose(&mut rng)
                .expect("nonempty")
                .clone();
            (g, 1)
        } else {
            let g = [Generator::Codel, Generator::Zero, Generator::One]
                .choose(&mut rng)
                .expect("nonempty")
                .clone();
            (g, 0)
        };
        let p = rng.gen_range(0..=width - l);
        let a = g.arity();
        layers.push(place(p, Term::gen(g), width - l - p));
        width = width - a.left + a.right;
    }
    Term::seq_all(n, layers)
}

/// Random well-typed term with `left + right <= max_arity`, at most
/// `max_gens` generators and at most `max_unions` unions. Deterministic
/// per seed.
pub fn random_term(seed: u64, max_gens: usize, max_arity: usize, max_unions: usize) -> Term {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0fa2);
    let arity = loop {
        let n = rng.gen_range(0..=max_arity);
        let m = rng.gen_range(0..=max_arity - n);
        if n.abs_diff(m) <= max_gens {
            break Arity::new(n, m);
        }
    };
    random_term_with_arity(seed, arity, max_gens, max_unions)
}

/// Four same-arity term pairs per seed: a term `t` with at most one union,
/// a union-free term `u`, and the pairs `(t, u)`, `(u, t)`, `(t, t | u)`,
/// `(u, t | u)`.
pub fn corpus_pairs(seeds: std::ops::Range<u64>) -> Vec<(Term, Term)> {
    let mut out = Vec::new();
    for seed in seeds {
        let t = random_term(seed, 4, 3, 1);
        let arity = t.arity().expect("generated terms are well typed");
        let u = random_term_with_arity(seed.wrapping_mul(0x9e37_79b9) + 1, arity, 4, 0);
        let tu = t.clone().or(u.clone());
        out.push((t.clone(), u.clone()));
        out.push((u.clone(), t.clone()));
        out.push((t, tu.clone()));
        out.push((u, tu));
    }
    out
}
