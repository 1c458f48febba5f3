//! Exact rational polyhedra in H-representation.
//!
//! A [`Polyhedron`] is a finite conjunction of affine constraints
//! `a·x + b >= 0` and `a·x + b = 0`. Projection is Fourier–Motzkin
//! elimination, with equalities used as Gaussian pivots first. Every
//! operation is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    /// `expr >= 0`
    Ge,
    /// `expr = 0`
    Eq,
}

/// The affine form `coeffs · x + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinExpr {
    pub coeffs: Vec<Rat>,
    pub constant: Rat,
}

impl LinExpr {
    pub fn new(coeffs: Vec<Rat>, constant: Rat) -> Self {
        LinExpr { coeffs, constant }
    }

    pub fn zero(dim: usize) -> Self {
        LinExpr::new(vec![Rat::zero(); dim], Rat::zero())
    }

    /// The coordinate function `x_i` in dimension `dim`.
    pub fn var(dim: usize, i: usize) -> Self {
        let mut e = LinExpr::zero(dim);
        e.coeffs[i] = Rat::one();
        e
    }

    /// Builds an expression from small integer coefficients.
    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        LinExpr::new(
            coeffs.iter().map(|&c| rat::int(c)).collect(),
            rat::int(constant),
        )
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        debug_assert_eq!(point.len(), self.coeffs.len());
        let mut acc = self.constant.clone();
        for (a, x) in self.coeffs.iter().zip(point) {
            if !a.is_zero() {
                acc += a * x;
            }
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> LinExpr {
        LinExpr::new(self.coeffs.iter().map(|c| -c).collect(), -&self.constant)
    }

    pub fn scale(&self, k: &Rat) -> LinExpr {
        LinExpr::new(
            self.coeffs.iter().map(|c| c * k).collect(),
            &self.constant * k,
        )
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &Rat, other: &LinExpr) -> LinExpr {
        LinExpr::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + k * b)
                .collect(),
            &self.constant + k * &other.constant,
        )
    }

    /// Places this expression at coordinates `offset..offset+dim` of a
    /// `total`-dimensional space.
    pub fn lift(&self, total: usize, offset: usize) -> LinExpr {
        let mut coeffs = vec![Rat::zero(); total];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        LinExpr::new(coeffs, self.constant.clone())
    }

    /// Positive factor and sign making the coefficient vector
    /// integer-primitive with its first nonzero entry positive. `None` when
    /// all coefficients vanish.
    fn direction_factor(&self) -> Option<Rat> {
        let first = self.coeffs.iter().find(|c| !c.is_zero())?;
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let gcd = self
            .coeffs
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let f = Rat::new(lcm, gcd);
        Some(if first.is_negative() { -f } else { f })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constraint {
    pub expr: LinExpr,
    pub rel: Rel,
}

impl Constraint {
    pub fn ge(expr: LinExpr) -> Self {
        Constraint { expr, rel: Rel::Ge }
    }

    pub fn eq(expr: LinExpr) -> Self {
        Constraint { expr, rel: Rel::Eq }
    }

    /// The unsatisfiable constraint `-1 >= 0`.
    pub fn falsum(dim: usize) -> Self {
        Constraint::ge(LinExpr::new(vec![Rat::zero(); dim], -Rat::one()))
    }

    pub fn dim(&self) -> usize {
        self.expr.dim()
    }

    pub fn holds(&self, point: &[Rat]) -> bool {
        let v = self.expr.eval(point);
        match self.rel {
            Rel::Ge => !v.is_negative(),
            Rel::Eq => v.is_zero(),
        }
    }

    /// Normal form of a single row: integer-primitive coefficients, and for
    /// equalities a positive leading coefficient. `Ok(None)` for a trivially
    /// true row; a trivially false row becomes [`Constraint::falsum`].
    pub fn normalized(&self) -> Option<Constraint> {
        match self.expr.direction_factor() {
            None => {
                let c = &self.expr.constant;
                let trivial = match self.rel {
                    Rel::Ge => !c.is_negative(),
                    Rel::Eq => c.is_zero(),
                };
                (!trivial).then(|| Constraint::falsum(self.dim()))
            }
            Some(f) => {
                let f = match self.rel {
                    Rel::Ge => f.abs(),
                    Rel::Eq => f,
                };
                Some(Constraint {
                    expr: self.expr.scale(&f),
                    rel: self.rel,
                })
            }
        }
    }

    fn is_falsum(&self) -> bool {
        self.expr.is_constant() && !self.holds(&vec![Rat::zero(); self.dim()])
    }
}

/// Image of a polyhedron under an affine form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Interval {
    Empty,
    /// `None` endpoints are infinite; finite endpoints are attained.
    Range {
        lo: Option<Rat>,
        hi: Option<Rat>,
    },
}

impl Interval {
    pub fn full() -> Self {
        Interval::Range { lo: None, hi: None }
    }

    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            Interval::Empty => false,
            Interval::Range { lo, hi } => {
                lo.as_ref().is_none_or(|l| l <= x) && hi.as_ref().is_none_or(|h| x <= h)
            }
        }
    }

    /// Interval is `{0}`.
    pub fn is_zero_point(&self) -> bool {
        matches!(self, Interval::Range { lo: Some(l), hi: Some(h) } if l.is_zero() && h.is_zero())
    }

    /// Interval lies in `[0, +inf)`.
    pub fn is_nonneg(&self) -> bool {
        match self {
            Interval::Empty => true,
            Interval::Range { lo, .. } => lo.as_ref().is_some_and(|l| !l.is_negative()),
        }
    }

    /// Interval lies in `(-inf, 0]`.
    pub fn is_nonpos(&self) -> bool {
        match self {
            Interval::Empty => true,
            Interval::Range { hi, .. } => hi.as_ref().is_some_and(|h| !h.is_positive()),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Empty => write!(f, "empty"),
            Interval::Range { lo, hi } => {
                match lo {
                    Some(l) => write!(f, "[{}", rat::show(l))?,
                    None => write!(f, "(-inf")?,
                }
                match hi {
                    Some(h) => write!(f, ", {}]", rat::show(h)),
                    None => write!(f, ", +inf)"),
                }
            }
        }
    }
}

/// Closed convex set `{x in Q^dim | all constraints hold}`.
///
/// Constraints are kept simplified: one equality or at most one pair of
/// opposite inequalities per direction, and an infeasible system collapses
/// to the single row `-1 >= 0`. An empty polyhedron has no other canonical
/// form, so callers test emptiness with [`Polyhedron::is_empty`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyhedron {
    dim: usize,
    constraints: Vec<Constraint>,
}

impl Polyhedron {
    pub fn new(dim: usize, constraints: Vec<Constraint>) -> Result<Self> {
        if let Some(c) = constraints.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: c.dim(),
            });
        }
        Ok(Polyhedron {
            dim,
            constraints: simplify(dim, constraints),
        })
    }

    pub fn full(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: Vec::new(),
        }
    }

    pub fn empty(dim: usize) -> Self {
        Polyhedron {
            dim,
            constraints: vec![Constraint::falsum(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn contains(&self, point: &[Rat]) -> Result<bool> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        Ok(self.constraints.iter().all(|c| c.holds(point)))
    }

    pub fn with(&self, extra: Constraint) -> Result<Self> {
        let mut rows = self.constraints.clone();
        rows.push(extra);
        Polyhedron::new(self.dim, rows)
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let rows = self
            .constraints
            .iter()
            .chain(&other.constraints)
            .cloned()
            .collect();
        Polyhedron::new(self.dim, rows)
    }

    /// Places this polyhedron on coordinates `offset..offset+dim` of a
    /// `total`-dimensional space, leaving the other coordinates free.
    pub fn lift(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.dim <= total, "lift out of range");
        let constraints = self
            .constraints
            .iter()
            .map(|c| Constraint {
                expr: c.expr.lift(total, offset),
                rel: c.rel,
            })
            .collect();
        Polyhedron::new(total, constraints).expect("lifted rows have the target dimension")
    }

    /// Cartesian product; `self`'s coordinates come first.
    pub fn direct_sum(&self, other: &Polyhedron) -> Self {
        let total = self.dim + other.dim;
        self.lift(total, 0)
            .intersect(&other.lift(total, self.dim))
            .expect("same dimension")
    }

    /// Moves old coordinate `i` to new position `dest[i]`.
    pub fn reindex(&self, dest: &[usize]) -> Result<Self> {
        check_permutation(dest, self.dim)?;
        let constraints = self
            .constraints
            .iter()
            .map(|c| {
                let mut coeffs = vec![Rat::zero(); self.dim];
                for (i, a) in c.expr.coeffs.iter().enumerate() {
                    coeffs[dest[i]] = a.clone();
                }
                Constraint {
                    expr: LinExpr::new(coeffs, c.expr.constant.clone()),
                    rel: c.rel,
                }
            })
            .collect();
        Polyhedron::new(self.dim, constraints)
    }

    /// Projection forgetting coordinate `var`: `x` is in the result iff
    /// some value `v` inserted at position `var` gives a point of `self`.
    pub fn eliminate(&self, var: usize) -> Self {
        assert!(var < self.dim, "eliminated coordinate out of range");
        self.project_out(&[var])
    }

    /// Eliminates several coordinates and removes them from the space.
    pub fn project_out(&self, vars: &[usize]) -> Self {
        let rows = eliminate_greedy(self.dim, self.constraints.clone(), vars);
        let keep: Vec<usize> = (0..self.dim).filter(|i| !vars.contains(i)).collect();
        let constraints = rows
            .into_iter()
            .map(|c| Constraint {
                expr: LinExpr::new(
                    keep.iter().map(|&i| c.expr.coeffs[i].clone()).collect(),
                    c.expr.constant,
                ),
                rel: c.rel,
            })
            .collect();
        Polyhedron::new(keep.len(), constraints).expect("projected rows have the kept dimension")
    }

    pub fn is_empty(&self) -> bool {
        if self.constraints.iter().any(Constraint::is_falsum) {
            return true;
        }
        let all: Vec<usize> = (0..self.dim).collect();
        let rows = eliminate_greedy(self.dim, self.constraints.clone(), &all);
        rows.iter().any(Constraint::is_falsum)
    }

    /// Exact image `{f(x) | x in self}`.
    pub fn range_of(&self, f: &LinExpr) -> Result<Interval> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: f.dim(),
            });
        }
        // Adjoin t = f(x) as coordinate `dim` and project onto it.
        let total = self.dim + 1;
        let mut rows: Vec<Constraint> = self
            .constraints
            .iter()
            .map(|c| Constraint {
                expr: c.expr.lift(total, 0),
                rel: c.rel,
            })
            .collect();
        let mut def = f.lift(total, 0);
        def.coeffs[self.dim] = -Rat::one();
        rows.push(Constraint::eq(def));
        let rows = simplify(total, rows);
        let originals: Vec<usize> = (0..self.dim).collect();
        let rows = eliminate_greedy(total, rows, &originals);
        Ok(interval_of(&rows, self.dim, |_| Rat::zero()))
    }

    /// `self ⊆ other`, decided row by row on `other`'s constraints.
    pub fn is_subset_of(&self, other: &Polyhedron) -> Result<bool> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.is_empty() {
            return Ok(true);
        }
        for c in &other.constraints {
            let range = self.range_of(&c.expr)?;
            let ok = match c.rel {
                Rel::Ge => range.is_nonneg(),
                Rel::Eq => range.is_zero_point(),
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A deterministic rational point, or `None` when empty.
    ///
    /// Coordinates are eliminated from the last to the first and then
    /// chosen in order inside their feasible interval: the midpoint of a
    /// bounded interval, one past the bound of a half-line, 0 when free.
    pub fn sample_point(&self) -> Option<Vec<Rat>> {
        let n = self.dim;
        let mut levels: Vec<Vec<Constraint>> = vec![Vec::new(); n + 1];
        levels[n] = self.constraints.clone();
        for k in (0..n).rev() {
            levels[k] = eliminate_column(n, &levels[k + 1], k);
        }
        if levels[0].iter().any(Constraint::is_falsum) {
            return None;
        }
        let mut point: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let known = &point;
            let interval = interval_of(&levels[k + 1], k, |j| known[j].clone());
            let value = match interval {
                Interval::Empty => unreachable!("projection was nonempty"),
                Interval::Range {
                    lo: Some(l),
                    hi: Some(h),
                } => (l + h) / rat::int(2),
                Interval::Range {
                    lo: Some(l),
                    hi: None,
                } => l + Rat::one(),
                Interval::Range {
                    lo: None,
                    hi: Some(h),
                } => h - Rat::one(),
                Interval::Range { lo: None, hi: None } => Rat::zero(),
            };
            point.push(value);
        }
        debug_assert!(self.contains(&point).unwrap_or(false));
        Some(point)
    }

    /// A point of `self` where `f` is strictly positive, if any.
    pub fn strict_witness(&self, f: &LinExpr) -> Result<Option<Vec<Rat>>> {
        let (lo, hi) = match self.range_of(f)? {
            Interval::Empty => return Ok(None),
            Interval::Range { lo, hi } => (lo, hi),
        };
        let target = match hi {
            Some(h) if !h.is_positive() => return Ok(None),
            Some(h) => h,
            None => lo.map_or_else(Rat::zero, |l| rat::max(&l, &Rat::zero())) + Rat::one(),
        };
        let level = Constraint::eq(LinExpr::new(f.coeffs.clone(), &f.constant - target));
        Ok(self.with(level)?.sample_point())
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.constraints.is_empty() {
            return write!(f, "{{}} (dim {})", self.dim);
        }
        let rows: Vec<String> = self
            .constraints
            .iter()
            .map(|c| {
                let op = match c.rel {
                    Rel::Ge => ">=",
                    Rel::Eq => "=",
                };
                format!("{} {op} 0", format_affine(&c.expr))
            })
            .collect();
        write!(f, "{{{}}}", rows.join(", "))
    }
}

/// Renders `a·x + b` as e.g. `x0 - 2*x1 + 1/2`.
pub fn format_affine(e: &LinExpr) -> String {
    let mut out = String::new();
    for (i, a) in e.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mag = a.abs();
        let sign = if a.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if a.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if mag.is_one() {
            out.push_str(&format!("x{i}"));
        } else {
            out.push_str(&format!("{}*x{i}", rat::show(&mag)));
        }
    }
    let c = &e.constant;
    if out.is_empty() {
        out = rat::show(c);
    } else if !c.is_zero() {
        let sign = if c.is_negative() { "-" } else { "+" };
        out.push_str(&format!(" {sign} {}", rat::show(&c.abs())));
    }
    out
}

pub(crate) fn check_permutation(dest: &[usize], dim: usize) -> Result<()> {
    let mut seen = vec![false; dim];
    if dest.len() != dim {
        return Err(Error::InvalidPermutation(dest.to_vec()));
    }
    for &d in dest {
        if d >= dim || seen[d] {
            return Err(Error::InvalidPermutation(dest.to_vec()));
        }
        seen[d] = true;
    }
    Ok(())
}

/// Bounds on the value `s = d·x` of one primitive direction `d`.
#[derive(Default)]
struct Bounds {
    lo: Option<Rat>,
    hi: Option<Rat>,
}

/// Canonical simplification: trivial rows dropped, parallel rows merged
/// into one equality or one lower/upper pair, infeasibility collapsed to a
/// single false row.
fn simplify(dim: usize, rows: Vec<Constraint>) -> Vec<Constraint> {
    let mut by_direction: BTreeMap<Vec<Rat>, Bounds> = BTreeMap::new();
    for c in rows {
        let Some(f) = c.expr.direction_factor() else {
            if c.is_falsum() {
                return vec![Constraint::falsum(dim)];
            }
            continue;
        };
        let scaled = c.expr.scale(&f);
        // scaled = d·x + b', and the row says f·(d·x + b') ⋈ 0.
        let value = -scaled.constant;
        let b = by_direction.entry(scaled.coeffs).or_default();
        let raise_lo = |b: &mut Bounds, v: &Rat| {
            if b.lo.as_ref().is_none_or(|l| l < v) {
                b.lo = Some(v.clone());
            }
        };
        let lower_hi = |b: &mut Bounds, v: &Rat| {
            if b.hi.as_ref().is_none_or(|h| h > v) {
                b.hi = Some(v.clone());
            }
        };
        match c.rel {
            Rel::Eq => {
                raise_lo(b, &value);
                lower_hi(b, &value);
            }
            Rel::Ge if f.is_positive() => raise_lo(b, &value),
            Rel::Ge => lower_hi(b, &value),
        }
    }
    let mut out = Vec::new();
    for (d, b) in by_direction {
        match (b.lo, b.hi) {
            (Some(l), Some(h)) if l > h => return vec![Constraint::falsum(dim)],
            (Some(l), Some(h)) if l == h => {
                out.push(Constraint::eq(LinExpr::new(d, -l)));
            }
            (lo, hi) => {
                if let Some(l) = lo {
                    out.push(Constraint::ge(LinExpr::new(d.clone(), -l)));
                }
                if let Some(h) = hi {
                    out.push(Constraint::ge(LinExpr::new(
                        d.into_iter().map(|x| -x).collect(),
                        h,
                    )));
                }
            }
        }
    }
    out
}

/// One elimination step on column `var`, keeping the ambient dimension
/// (the column becomes zero).
fn eliminate_column(dim: usize, rows: &[Constraint], var: usize) -> Vec<Constraint> {
    if rows.iter().any(Constraint::is_falsum) {
        return vec![Constraint::falsum(dim)];
    }
    if let Some(pivot) = rows
        .iter()
        .position(|c| c.rel == Rel::Eq && !c.expr.coeffs[var].is_zero())
    {
        let p = &rows[pivot];
        let pv = p.expr.coeffs[var].clone();
        let out = rows
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, c)| {
                let a = &c.expr.coeffs[var];
                if a.is_zero() {
                    c.clone()
                } else {
                    let k = -(a / &pv);
                    Constraint {
                        expr: c.expr.add_scaled(&k, &p.expr),
                        rel: c.rel,
                    }
                }
            })
            .collect();
        return simplify(dim, out);
    }
    let mut out = Vec::new();
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for c in rows {
        let a = &c.expr.coeffs[var];
        if a.is_zero() {
            out.push(c.clone());
        } else if a.is_positive() {
            pos.push(c);
        } else {
            neg.push(c);
        }
    }
    for p in &pos {
        for n in &neg {
            let pa = p.expr.coeffs[var].clone();
            let na = -n.expr.coeffs[var].clone();
            let combined = p.expr.scale(&na).add_scaled(&pa, &n.expr);
            out.push(Constraint::ge(combined));
        }
    }
    simplify(dim, out)
}

/// Eliminates `vars` in a greedy order: equality pivots first, then the
/// column with the fewest generated pairs.
fn eliminate_greedy(dim: usize, mut rows: Vec<Constraint>, vars: &[usize]) -> Vec<Constraint> {
    let mut remaining: Vec<usize> = vars.to_vec();
    while !remaining.is_empty() {
        if rows.iter().any(Constraint::is_falsum) {
            return vec![Constraint::falsum(dim)];
        }
        let cost = |v: usize| -> (u8, usize) {
            if rows
                .iter()
                .any(|c| c.rel == Rel::Eq && !c.expr.coeffs[v].is_zero())
            {
                return (0, 0);
            }
            let p = rows
                .iter()
                .filter(|c| c.expr.coeffs[v].is_positive())
                .count();
            let n = rows
                .iter()
                .filter(|c| c.expr.coeffs[v].is_negative())
                .count();
            (1, p * n)
        };
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| cost(v))
            .expect("nonempty");
        let v = remaining.swap_remove(idx);
        rows = eliminate_column(dim, &rows, v);
    }
    rows
}

/// Feasible interval of coordinate `var` given rows that only mention
/// coordinates `<= var`, with earlier coordinates fixed by `known`.
fn interval_of(rows: &[Constraint], var: usize, known: impl Fn(usize) -> Rat) -> Interval {
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for c in rows {
        let mut rest = c.expr.constant.clone();
        for (j, a) in c.expr.coeffs.iter().enumerate() {
            if j != var && !a.is_zero() {
                rest += a * known(j);
            }
        }
        let a = &c.expr.coeffs[var];
        if a.is_zero() {
            let ok = match c.rel {
                Rel::Ge => !rest.is_negative(),
                Rel::Eq => rest.is_zero(),
            };
            if !ok {
                return Interval::Empty;
            }
            continue;
        }
        let bound = -(&rest / a);
        let (is_lo, is_hi) = match c.rel {
            Rel::Eq => (true, true),
            Rel::Ge => (a.is_positive(), a.is_negative()),
        };
        if is_lo && lo.as_ref().is_none_or(|l| *l < bound) {
            lo = Some(bound.clone());
        }
        if is_hi && hi.as_ref().is_none_or(|h| *h > bound) {
            hi = Some(bound);
        }
    }
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => Interval::Empty,
        _ => Interval::Range { lo, hi },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn poly(dim: usize, rows: &[(&[i64], i64, Rel)]) -> Polyhedron {
        let cs = rows
            .iter()
            .map(|(a, b, r)| Constraint {
                expr: LinExpr::from_ints(a, *b),
                rel: *r,
            })
            .collect();
        Polyhedron::new(dim, cs).unwrap()
    }

    use Rel::{Eq as E, Ge as G};

    #[test]
    fn normalization_is_primitive_and_idempotent() {
        let c = Constraint::ge(LinExpr::new(vec![frac(2, 3), frac(-4, 3)], frac(1, 2)));
        let n = c.normalized().unwrap();
        assert_eq!(n.expr.coeffs, vec![int(1), int(-2)]);
        assert_eq!(n.expr.constant, frac(3, 4));
        assert_eq!(n.normalized().unwrap(), n);

        let e = Constraint::eq(LinExpr::from_ints(&[0, -3], 6));
        let n = e.normalized().unwrap();
        assert_eq!(n.expr, LinExpr::from_ints(&[0, 1], -2));

        assert_eq!(
            Constraint::ge(LinExpr::from_ints(&[0], 2)).normalized(),
            None
        );
        assert_eq!(
            Constraint::eq(LinExpr::from_ints(&[0], 2)).normalized(),
            Some(Constraint::falsum(1))
        );
    }

    #[test]
    fn opposite_inequalities_merge_into_equality() {
        let p = poly(1, &[(&[1], 0, G), (&[-1], 0, G)]);
        assert_eq!(
            p.constraints(),
            &[Constraint::eq(LinExpr::from_ints(&[1], 0))]
        );
        let q = poly(1, &[(&[2], 0, G), (&[1], 3, G)]);
        assert_eq!(
            q.constraints(),
            &[Constraint::ge(LinExpr::from_ints(&[1], 0))]
        );
    }

    #[test]
    fn intersect_examples() {
        let a = poly(1, &[(&[1], 0, G)]);
        let b = poly(1, &[(&[-1], 1, G)]);
        let ab = a.intersect(&b).unwrap();
        assert_eq!(ab.constraints().len(), 2);
        assert!(ab.contains(&[frac(1, 2)]).unwrap());
        assert_eq!(a.intersect(&Polyhedron::full(1)).unwrap(), a);
        let gap = poly(1, &[(&[1], -1, G)])
            .intersect(&poly(1, &[(&[-1], 0, G)]))
            .unwrap();
        assert!(gap.is_empty());
        assert!(a.intersect(&Polyhedron::full(2)).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let a = poly(1, &[(&[1], 0, G)]);
        let b = poly(1, &[(&[1], -1, E)]);
        let s = a.direct_sum(&b);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[int(3), int(1)]).unwrap());
        assert_eq!(a.direct_sum(&Polyhedron::full(0)), a);
        let quad = a.direct_sum(&a);
        assert!(quad.contains(&[int(1), int(1)]).unwrap());
        assert!(!quad.contains(&[int(-1), int(1)]).unwrap());
    }

    #[test]
    fn reindex_examples() {
        let p = poly(2, &[(&[1, 0], 0, G), (&[0, 1], -1, E)]);
        assert_eq!(p.reindex(&[0, 1]).unwrap(), p);
        let q = p.reindex(&[1, 0]).unwrap();
        assert_eq!(q, poly(2, &[(&[0, 1], 0, G), (&[1, 0], -1, E)]));
        assert!(p.reindex(&[0, 0]).is_err());
        let r = poly(3, &[(&[1, 2, 3], 0, G)]);
        let once = r.reindex(&[1, 2, 0]).unwrap().reindex(&[2, 0, 1]).unwrap();
        assert_eq!(once, r);
    }

    #[test]
    fn eliminate_examples() {
        let p = poly(2, &[(&[-1, 1], 0, G), (&[0, -1], 1, G)]);
        assert_eq!(p.eliminate(1), poly(1, &[(&[-1], 1, G)]));
        let q = poly(2, &[(&[0, 1], 0, E)]);
        assert_eq!(q.eliminate(1), Polyhedron::full(1));
        let r = poly(2, &[(&[1, -1], 0, G), (&[-1, 1], -1, G)]);
        assert_eq!(r.eliminate(1), Polyhedron::empty(1));
    }

    #[test]
    fn emptiness_examples() {
        assert!(poly(1, &[(&[1], 0, G), (&[-1], -1, G)]).is_empty());
        assert!(!Polyhedron::full(3).is_empty());
        assert!(!poly(1, &[(&[1], 0, E)]).is_empty());
    }

    #[test]
    fn range_examples() {
        let seg = poly(1, &[(&[1], 0, G), (&[-1], 1, G)]);
        assert_eq!(
            seg.range_of(&LinExpr::from_ints(&[1], 0)).unwrap(),
            Interval::Range {
                lo: Some(int(0)),
                hi: Some(int(1))
            }
        );
        let half = poly(1, &[(&[1], 0, G)]);
        assert_eq!(
            half.range_of(&LinExpr::from_ints(&[-1], 0)).unwrap(),
            Interval::Range {
                lo: None,
                hi: Some(int(0))
            }
        );
        let tri = poly(2, &[(&[1, 0], 0, G), (&[0, 1], 0, G), (&[-1, -1], 1, G)]);
        // vertices (0,0), (1,0), (0,1) give x + 2y in {0, 1, 2}
        assert_eq!(
            tri.range_of(&LinExpr::from_ints(&[1, 2], 0)).unwrap(),
            Interval::Range {
                lo: Some(int(0)),
                hi: Some(int(2))
            }
        );
        assert_eq!(
            Polyhedron::empty(2)
                .range_of(&LinExpr::from_ints(&[1, 0], 0))
                .unwrap(),
            Interval::Empty
        );
    }

    #[test]
    fn sample_point_examples() {
        let p = poly(1, &[(&[2], -1, E)]);
        assert_eq!(p.sample_point(), Some(vec![frac(1, 2)]));
        assert_eq!(
            Polyhedron::full(2).sample_point(),
            Some(vec![int(0), int(0)])
        );
        let q = poly(2, &[(&[1, 0], 0, G), (&[-1, 0], 1, G), (&[-1, 1], 0, E)]);
        let x = q.sample_point().unwrap();
        assert!(q.contains(&x).unwrap());
        assert_eq!(Polyhedron::empty(2).sample_point(), None);
    }

    #[test]
    fn strict_witness_examples() {
        let half = poly(1, &[(&[1], 0, G)]);
        assert_eq!(
            half.strict_witness(&LinExpr::from_ints(&[1], 0)).unwrap(),
            Some(vec![int(1)])
        );
        let line = poly(1, &[(&[1], 0, E)]);
        assert_eq!(
            line.strict_witness(&LinExpr::from_ints(&[1], 0)).unwrap(),
            None
        );
        let tri = poly(2, &[(&[1, 0], 0, G), (&[0, 1], 0, G), (&[-1, -1], 1, G)]);
        assert_eq!(
            tri.strict_witness(&LinExpr::from_ints(&[1, 1], -1))
                .unwrap(),
            None
        );
    }

    #[test]
    fn subset_examples() {
        let seg = poly(1, &[(&[1], 0, G), (&[-1], 1, G)]);
        let half = poly(1, &[(&[1], 0, G)]);
        assert!(seg.is_subset_of(&half).unwrap());
        assert!(!half.is_subset_of(&seg).unwrap());
        assert!(Polyhedron::empty(1).is_subset_of(&seg).unwrap());
        assert!(poly(1, &[(&[1], 0, E)]).is_subset_of(&seg).unwrap());
    }

    #[test]
    fn affine_forms_render() {
        assert_eq!(
            format_affine(&LinExpr::from_ints(&[1, -2, 0], 3)),
            "x0 - 2*x1 + 3"
        );
        assert_eq!(format_affine(&LinExpr::from_ints(&[0, -1], 0)), "-x1");
        assert_eq!(format_affine(&LinExpr::from_ints(&[0], -1)), "-1");
    }
}
