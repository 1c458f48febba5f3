//! Derived diagrams: matrix and affine encodings, union generators, the
//! non-convex `plus`, `L` and diode relations, and `max`/`abs`/`relu`.

use std::iter::repeat_n;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::normalform::Hyperplane;
use crate::rat::{self, Rat};
use crate::term::{Generator::*, Term};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat::int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rat::one();
        }
        m
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    /// `A x`
    pub fn apply(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }
}

fn g(gen: crate::term::Generator) -> Term {
    Term::gen(gen)
}

/// `n` copies of one wire: 1 -> n.
fn copies(n: usize) -> Term {
    match n {
        0 => g(Del),
        1 => Term::id(1),
        _ => g(Dup).then(Term::id(1).beside(copies(n - 1))),
    }
}

/// Sum of `n` wires: n -> 1.
fn sums(n: usize) -> Term {
    match n {
        0 => g(Zero),
        1 => Term::id(1),
        _ => Term::id(1).beside(sums(n - 1)).then(g(Add)),
    }
}

fn scale_by(r: &Rat) -> Term {
    if r.is_zero() {
        g(Del).then(g(Zero))
    } else if r.is_one() {
        Term::id(1)
    } else {
        Term::scalar(r.clone())
    }
}

/// The linear map `x ↦ A x` as an `n -> m` term for an `m x n` matrix.
pub fn matrix_term(a: &Matrix) -> Term {
    let (m, n) = (a.rows, a.cols);
    let fan_out = Term::par_all(repeat_n(copies(m), n));
    // wire (j, i) carries x_j on its way to output i
    let weights = Term::par_all((0..n).flat_map(|j| (0..m).map(move |i| scale_by(a.get(i, j)))));
    let dest: Vec<usize> = (0..n * m).map(|k| (k % m) * n + k / m).collect();
    let regroup = Term::permutation(&dest).expect("block transpose is a permutation");
    let fan_in = Term::par_all(repeat_n(sums(n), m));
    Term::seq_all(n, [fan_out, weights, regroup, fan_in])
}

/// `x ↦ A x + b`.
pub fn affine_term(a: &Matrix, b: &[Rat]) -> Result<Term> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            got: b.len(),
        });
    }
    let offsets = Term::par_all(b.iter().map(|bi| {
        if bi.is_zero() {
            Term::id(1)
        } else {
            Term::id(1).beside(g(One).then(scale_by(bi))).then(g(Add))
        }
    }));
    Ok(matrix_term(a).then(offsets))
}

/// The `n -> 1` affine map of a hyperplane.
pub fn hyperplane_term(h: &Hyperplane) -> Term {
    let e = h.expr();
    let a = Matrix::from_rows(vec![e.coeffs.clone()]);
    affine_term(&a, std::slice::from_ref(&e.constant)).expect("one row, one constant")
}

/// `n`-fold union generator, `2n -> n`: keeps either block of `n` wires.
pub fn union_gen(n: usize) -> Term {
    assert!(n >= 1, "union generator needs a positive block size");
    let drop = || Term::par_all(repeat_n(g(Del), n));
    Term::id(n).beside(drop()).or(drop().beside(Term::id(n)))
}

/// The state `{0, 1}`, exposed for experiments; nothing is claimed about
/// what it generates.
pub fn zero_or_one() -> Term {
    g(Zero).or(g(One))
}

/// `{(x, y) | x = 0 ∨ y = 0}`.
pub fn plus_gen() -> Term {
    g(Cozero).then(g(Codel)).or(g(Del).then(g(Zero)))
}

/// `{(x, y) | |y| <= |x|}`.
fn abs_bound() -> Term {
    let neg = || Term::scalar(rat::int(-1));
    let positive = g(Dup)
        .then(g(Geq).beside(neg().then(g(Leq))))
        .then(g(Codup));
    let negative = g(Dup)
        .then(g(Leq).beside(neg().then(g(Geq))))
        .then(g(Codup));
    positive.or(negative)
}

/// A `1 -> 2` relation that duplicates both the white and the black unit:
/// `{(x, (y, z)) | |y| <= |x|, |z| <= |x|}`.
pub fn dup_abs() -> Term {
    g(Dup).then(abs_bound().beside(abs_bound()))
}

/// `{x >= 0, y = 0} ∪ {x = 0, y >= 0}`.
pub fn l_gen() -> Term {
    g(Geq)
        .then(g(Cozero))
        .then(g(Zero))
        .or(g(Cozero).then(g(Zero)).then(g(Leq)))
}

/// Current/voltage graph of the ideal diode:
/// `{x <= 0, y = 0} ∪ {x = 0, y >= 0}`.
pub fn diode_term() -> Term {
    g(Leq)
        .then(g(Cozero))
        .then(g(Zero))
        .or(g(Cozero).then(g(Zero)).then(g(Leq)))
}

/// `x >= y` as a `2 -> 0` effect.
fn ge_effect() -> Term {
    g(Geq).beside(Term::id(1)).then(Term::cup(1))
}

fn le_effect() -> Term {
    g(Leq).beside(Term::id(1)).then(Term::cup(1))
}

/// `{((x, y), x) | x >= y} ∪ {((x, y), y) | y >= x}`.
pub fn max_term() -> Term {
    let left = g(Dup)
        .beside(Term::id(1))
        .then(Term::id(1).beside(ge_effect()));
    let right = Term::id(1)
        .beside(g(Dup))
        .then(le_effect().beside(Term::id(1)));
    left.or(right)
}

/// `x ↦ max(x, -x)`.
pub fn abs_term() -> Term {
    g(Dup)
        .then(Term::id(1).beside(Term::scalar(rat::int(-1))))
        .then(max_term())
}

/// `x ↦ max(0, x)`.
pub fn relu_term() -> Term {
    g(Zero).beside(Term::id(1)).then(max_term())
}

/// Affine layers, each followed by a coordinatewise `relu`. An empty
/// layer list is the identity on `inputs` wires.
pub fn relu_network(inputs: usize, layers: &[(Matrix, Vec<Rat>)]) -> Result<Term> {
    let mut width = inputs;
    let mut parts = Vec::new();
    for (a, b) in layers {
        if a.cols != width {
            return Err(Error::DimensionMismatch {
                expected: width,
                got: a.cols,
            });
        }
        parts.push(affine_term(a, b)?);
        parts.push(Term::par_all(repeat_n(relu_term(), a.rows)));
        width = a.rows;
    }
    Ok(Term::seq_all(inputs, parts))
}

/// `≥` rebuilt from `L` with white structure only.
pub fn geq_from_l() -> Term {
    g(Coadd)
        .then(Term::id(1).beside(l_gen()))
        .then(Term::id(1).beside(g(Cozero)))
}

/// `L` rebuilt from `max`.
pub fn l_from_max() -> Term {
    let neg = || Term::scalar(rat::int(-1));
    Term::id(1).beside(Term::cap(1)).then(
        neg()
            .beside(neg())
            .then(max_term())
            .then(g(Cozero))
            .beside(Term::id(1)),
    )
}

/// A sequence of terms that should all denote the same relation.
#[derive(Debug, Clone)]
pub struct Chain {
    pub name: &'static str,
    pub steps: Vec<Term>,
}

/// The stepwise constructions showing that `L`, `plus` and `max` each
/// recover the others, plus the identities relating `max`, `abs`, `relu`.
pub fn chains() -> Vec<Chain> {
    let neg = || Term::scalar(rat::int(-1));
    let id = || Term::id(1);
    // cells of L
    let l_a = || g(Geq).then(g(Cozero)).then(g(Zero));
    let l_b = || g(Cozero).then(g(Zero)).then(g(Leq));
    // {x = 0, y <= 0} and {x = 0, y free}
    let zero_geq = || g(Cozero).then(g(Zero)).then(g(Geq));
    let axis = || g(Cozero).then(g(Codel));
    let conv_bw = |a: Term, b: Term| g(Dup).then(a.beside(b.then(neg()))).then(g(Add));
    let vdash = || l_a().or(axis());
    // cells of ⊢
    let v_c = l_a;
    let v_d = axis;
    let conv_wb = |a: Term, b: Term| g(Coadd).then(a.beside(neg().then(b))).then(g(Codup));
    let max_cozero_cells = || {
        g(Leq)
            .then(g(Cozero))
            .beside(g(Cozero))
            .or(g(Cozero).beside(g(Leq).then(g(Cozero))))
    };

    vec![
        Chain {
            name: "geq from L",
            steps: vec![
                geq_from_l(),
                Term::union_all([
                    g(Coadd)
                        .then(id().beside(l_a()))
                        .then(id().beside(g(Cozero))),
                    g(Coadd)
                        .then(id().beside(l_b()))
                        .then(id().beside(g(Cozero))),
                ]),
                g(Geq).or(id()),
                g(Geq),
            ],
        },
        Chain {
            name: "vdash from L",
            steps: vec![
                conv_bw(l_gen(), l_gen()),
                Term::union_all([
                    conv_bw(l_a(), l_a()),
                    conv_bw(l_a(), l_b()),
                    conv_bw(l_b(), l_a()),
                    conv_bw(l_b(), l_b()),
                ]),
                Term::union_all([l_a(), zero_geq(), l_b(), axis()]),
                vdash(),
            ],
        },
        Chain {
            name: "plus from vdash",
            steps: vec![
                conv_wb(vdash(), vdash()),
                Term::union_all([
                    conv_wb(v_c(), v_c()),
                    conv_wb(v_c(), v_d()),
                    conv_wb(v_d(), v_c()),
                    conv_wb(v_d(), v_d()),
                ]),
                Term::union_all([
                    g(Del).then(g(Zero)),
                    l_a(),
                    g(Leq).then(g(Cozero)).then(g(Zero)),
                    axis(),
                ]),
                g(Del).then(g(Zero)).or(axis()),
                plus_gen(),
            ],
        },
        Chain {
            name: "max then cozero",
            steps: vec![max_term().then(g(Cozero)), max_cozero_cells()],
        },
        Chain {
            name: "L from max",
            steps: vec![
                l_from_max(),
                id().beside(Term::cap(1))
                    .then(neg().beside(neg()).then(max_cozero_cells()).beside(id())),
                l_a().or(l_b()),
                l_gen(),
            ],
        },
        Chain {
            name: "max via relu",
            steps: vec![
                max_term(),
                g(Dup)
                    .beside(id())
                    .then(id().beside(neg().beside(id()).then(g(Add)).then(relu_term())))
                    .then(g(Add)),
            ],
        },
        Chain {
            name: "relu via abs",
            steps: vec![
                relu_term(),
                g(Dup)
                    .then(id().beside(abs_term()))
                    .then(g(Add))
                    .then(Term::scalar(rat::frac(1, 2))),
            ],
        },
        Chain {
            name: "dupabs duplicates the white unit",
            steps: vec![g(Zero).then(dup_abs()), g(Zero).beside(g(Zero))],
        },
        Chain {
            name: "dupabs duplicates the black unit",
            steps: vec![g(Codel).then(dup_abs()), g(Codel).beside(g(Codel))],
        },
    ]
}
