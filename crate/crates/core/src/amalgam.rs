//! The amalgamated product A⋆B and its two determinant expansions: the
//! tableau-pair sum with Φ coefficients, and the full permutation sum
//! normalized by the hook product.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_core::{ExactMatrix, Rat, Scalar};
use crate::fayers::{phi_matrix, PairingMatrix};
use crate::tableaux::{trivial_tableau, Tableau};

/// Permutation sums iterate (mn)! terms; 10! is already 3.6 million.
pub const PERM_CAP: usize = 10;

/// An mn×m matrix A and an mn×n matrix B, ready to be amalgamated.
#[derive(Debug, Clone)]
pub struct AmalgamPair<S: Scalar> {
    m: usize,
    n: usize,
    a: ExactMatrix<S>,
    b: ExactMatrix<S>,
}

impl<S: Scalar> AmalgamPair<S> {
    pub fn new(m: usize, n: usize, a: ExactMatrix<S>, b: ExactMatrix<S>) -> Result<Self> {
        if a.rows() != m * n || b.rows() != m * n || a.cols() != m || b.cols() != n {
            return Err(Error::Dimension(format!(
                "amalgam of ({m},{n}) needs A {mn}x{m} and B {mn}x{n}, got {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols(),
                mn = m * n,
            )));
        }
        Ok(AmalgamPair { m, n, a, b })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &ExactMatrix<S> {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix<S> {
        &self.b
    }
}

/// The mn×mn matrix whose row i is the Kronecker product of row i of A with
/// row i of B: column j + k·m (0-based) holds a_{i,j}·b_{i,k}. The A index
/// varies fastest; the same convention is applied everywhere downstream.
pub fn star<S: Scalar>(p: &AmalgamPair<S>) -> ExactMatrix<S> {
    let (m, mn) = (p.m, p.m * p.n);
    ExactMatrix::from_fn(mn, mn, |i, c| {
        let (j, k) = (c % m, c / m);
        p.a.get(i, j).mul(p.b.get(i, k))
    })
}

/// Represents C⊗D as an amalgam: A stacks n copies of C and B repeats each
/// row of D m times, so star of the result is the Kronecker product with
/// row/column index (j,k) ↦ j + (k-1)m.
pub fn kron_embed<S: Scalar>(c: &ExactMatrix<S>, d: &ExactMatrix<S>) -> Result<AmalgamPair<S>> {
    if c.rows() != c.cols() || d.rows() != d.cols() {
        return Err(Error::Dimension("Kronecker factors must be square".into()));
    }
    let (m, n) = (c.rows(), d.rows());
    let a = ExactMatrix::from_fn(m * n, m, |i, j| c.get(i % m, j).clone());
    let b = ExactMatrix::from_fn(m * n, n, |i, k| d.get(i / m, k).clone());
    AmalgamPair::new(m, n, a, b)
}

/// ∏ over columns i of t of the determinant of the rows of M indexed by
/// col_i(t), in positional order. For a standard tableau the columns are
/// ascending; for permuted tableaux the orientation carries a sign.
pub fn tableau_minor_product<S: Scalar>(mat: &ExactMatrix<S>, t: &Tableau) -> Result<S> {
    let width = t.shape().parts()[0];
    let mut acc: Option<S> = None;
    for i in 1..=width {
        let col = t.col(i)?;
        if col.len() != mat.cols() {
            return Err(Error::Shape(format!(
                "tableau column of length {} against a {}-column matrix",
                col.len(),
                mat.cols()
            )));
        }
        let d = mat.det_minor_ordered(&col)?;
        acc = Some(match acc {
            None => d,
            Some(v) => v.mul(&d),
        });
    }
    Ok(acc.expect("shape has at least one column"))
}

/// One term of a determinant expansion: an integer coefficient, the tableau
/// pair labelling it, and the evaluated product of minors.
#[derive(Debug, Clone)]
pub struct Term<S: Scalar> {
    pub coef: i64,
    pub alpha: Tableau,
    pub beta: Tableau,
    pub value: S,
}

#[derive(Debug, Clone)]
pub struct TermExpansion<S: Scalar> {
    pub terms: Vec<Term<S>>,
    pub total: S,
}

fn scale<S: Scalar>(v: &S, c: i64) -> S {
    let mut acc = v.zero_like();
    for _ in 0..c.unsigned_abs() {
        acc = acc.add(v);
    }
    if c < 0 {
        acc.neg()
    } else {
        acc
    }
}

/// det(A⋆B) as the sum Σ Φ_{i,j}·A_{α_i}·B_{β_j} over nonzero entries of Φ,
/// where β_j is the conjugate of α_j.
pub fn det_via_theorem3<S: Scalar>(p: &AmalgamPair<S>) -> Result<TermExpansion<S>> {
    let phi = phi_matrix(p.m, p.n)?;
    det_via_theorem3_with_phi(p, &phi)
}

/// As [`det_via_theorem3`] with a caller-supplied coefficient matrix; used
/// by the corrupted-coefficient negative control.
pub fn det_via_theorem3_with_phi<S: Scalar>(
    p: &AmalgamPair<S>,
    phi: &PairingMatrix,
) -> Result<TermExpansion<S>> {
    if phi.m() != p.m || phi.n() != p.n {
        return Err(Error::Shape("coefficient matrix shape mismatch".into()));
    }
    let s = phi.size();
    let a_vals: Vec<S> = (0..s)
        .map(|i| tableau_minor_product(&p.a, phi.row_basis().get(i)))
        .collect::<Result<_>>()?;
    let b_vals: Vec<S> = (0..s)
        .map(|j| tableau_minor_product(&p.b, &phi.col_tableau(j)))
        .collect::<Result<_>>()?;
    let zero = p.a.get(0, 0).zero_like();
    let mut terms = Vec::new();
    let mut total = zero;
    for i in 0..s {
        for j in 0..s {
            let c = phi.entry(i, j);
            if c == 0 {
                continue;
            }
            let value = a_vals[i].mul(&b_vals[j]);
            total = total.add(&scale(&value, c));
            terms.push(Term {
                coef: c,
                alpha: phi.row_basis().get(i).clone(),
                beta: phi.col_tableau(j),
                value,
            });
        }
    }
    Ok(TermExpansion { terms, total })
}

/// Advances `word` to its lexicographic successor in place, returning the
/// sign change of the step, or None at the last permutation.
fn next_permutation(word: &mut [usize]) -> Option<i64> {
    let n = word.len();
    let mut i = n.checked_sub(1)?;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    // one swap plus floor(suffix/2) swaps from the reversal
    let swaps = 1 + (n - i) / 2;
    Some(if swaps % 2 == 0 { 1 } else { -1 })
}

/// Σ_{σ∈Σ_{mn}} ε(σ)·A_{σα}·B_{σβ}, the full permutation sum; equals
/// κ_{α,β}·det(A⋆B) with κ an integer depending only on (α,β).
pub fn perm_sum_theorem4<S: Scalar>(
    p: &AmalgamPair<S>,
    alpha: &Tableau,
    beta: &Tableau,
) -> Result<S> {
    let mn = p.m * p.n;
    if mn > PERM_CAP {
        return Err(Error::ResourceCap {
            count: mn as u64,
            cap: PERM_CAP as u64,
        });
    }
    if alpha.size() != mn || beta.size() != mn {
        return Err(Error::Shape("tableau entry count must be mn".into()));
    }
    // cache minor determinants by sorted row set; a permuted column is the
    // sorted minor times the orientation sign
    let mut a_cache: std::collections::HashMap<Vec<usize>, S> = std::collections::HashMap::new();
    let mut b_cache: std::collections::HashMap<Vec<usize>, S> = std::collections::HashMap::new();
    let oriented = |mat: &ExactMatrix<S>,
                        cache: &mut std::collections::HashMap<Vec<usize>, S>,
                        col: &[usize]|
     -> Result<S> {
        let mut sorted = col.to_vec();
        sorted.sort_unstable();
        let base = match cache.get(&sorted) {
            Some(v) => v.clone(),
            None => {
                let v = mat.det_minor_ordered(&sorted)?;
                cache.insert(sorted, v.clone());
                v
            }
        };
        Ok(if crate::tableaux::perm_sign(col) == 1 {
            base
        } else {
            base.neg()
        })
    };
    let zero = p.a.get(0, 0).zero_like();
    let mut total = zero;
    let mut word: Vec<usize> = (1..=mn).collect();
    let mut sign = 1i64;
    loop {
        let sa = alpha.apply_perm(&word);
        let sb = beta.apply_perm(&word);
        let mut v = p.a.get(0, 0).one_like();
        for i in 1..=sa.shape().parts()[0] {
            v = v.mul(&oriented(&p.a, &mut a_cache, &sa.col(i)?)?);
        }
        for i in 1..=sb.shape().parts()[0] {
            v = v.mul(&oriented(&p.b, &mut b_cache, &sb.col(i)?)?);
        }
        total = if sign == 1 {
            total.add(&v)
        } else {
            total.sub(&v)
        };
        match next_permutation(&mut word) {
            Some(ds) => sign *= ds,
            None => break,
        }
    }
    Ok(total)
}

/// A fully indeterminate pair over entry variables a{i}_{j} and b{i}_{k},
/// 1-based; the shared variable set lists all A entries then all B entries.
pub fn symbolic_pair(m: usize, n: usize) -> AmalgamPair<crate::exact_core::MultiPoly> {
    use crate::exact_core::{MultiPoly, VarSet};
    let mut names = Vec::new();
    for i in 1..=m * n {
        for j in 1..=m {
            names.push(format!("a{i}_{j}"));
        }
    }
    for i in 1..=m * n {
        for k in 1..=n {
            names.push(format!("b{i}_{k}"));
        }
    }
    let vars = VarSet::new(names);
    let a = ExactMatrix::from_fn(m * n, m, |i, j| {
        MultiPoly::var(&vars, &format!("a{}_{}", i + 1, j + 1)).unwrap()
    });
    let b = ExactMatrix::from_fn(m * n, n, |i, k| {
        MultiPoly::var(&vars, &format!("b{}_{}", i + 1, k + 1)).unwrap()
    });
    AmalgamPair::new(m, n, a, b).expect("dimensions by construction")
}

/// A seeded random pair with integer entries in [-9, 9].
pub fn random_pair(m: usize, n: usize, seed: u64) -> AmalgamPair<Rat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |rows: usize, cols: usize| {
        ExactMatrix::from_fn(rows, cols, |_, _| {
            Rat::from_integer(BigInt::from(rng.random_range(-9i64..=9)))
        })
    };
    let a = draw(m * n, m);
    let b = draw(m * n, n);
    AmalgamPair::new(m, n, a, b).expect("dimensions by construction")
}

/// The integer κ_{α,β} with perm_sum = κ·det(A⋆B), measured on random
/// nonsingular draws and cross-checked across two independent draws.
pub fn kappa(m: usize, n: usize, alpha: &Tableau, beta: &Tableau, seed: u64) -> Result<BigInt> {
    let one = kappa_single(m, n, alpha, beta, seed)?;
    let other = kappa_single(m, n, alpha, beta, seed.wrapping_add(0x9e3779b97f4a7c15))?;
    if one != other {
        return Err(Error::Inconsistent(format!(
            "kappa disagreement across draws: {one} vs {other}"
        )));
    }
    Ok(one)
}

fn kappa_single(m: usize, n: usize, alpha: &Tableau, beta: &Tableau, seed: u64) -> Result<BigInt> {
    for retry in 0..20u64 {
        let p = random_pair(m, n, seed.wrapping_add(retry));
        let d = star(&p).det()?;
        if Zero::is_zero(&d) {
            continue;
        }
        let sum = perm_sum_theorem4(&p, alpha, beta)?;
        let q = sum / d;
        if !q.denom().is_one() {
            return Err(Error::Inconsistent(format!(
                "non-integer permutation-sum ratio {q}"
            )));
        }
        return Ok(q.numer().clone());
    }
    Err(Error::Degenerate(
        "no nonsingular amalgam found in 20 draws".into(),
    ))
}

/// κ for the trivial pair (1, 1′); provided for symmetry with `kappa`.
pub fn trivial_pair(m: usize, n: usize) -> (Tableau, Tableau) {
    let t = trivial_tableau(m, n);
    let c = t.conjugate();
    (t, c)
}

/// Checks that perm_sum equals hook_product times det(star) for a pair.
pub fn hook_identity_holds(p: &AmalgamPair<Rat>) -> Result<bool> {
    let (alpha, beta) = trivial_pair(p.m, p.n);
    let lhs = perm_sum_theorem4(p, &alpha, &beta)?;
    let h = crate::fayers::hook_product(p.m, p.n);
    let rhs = star(p).det()? * Rat::from_integer(h);
    Ok(lhs == rhs)
}

/// Serializes an expansion per the interchange format: a JSON list of
/// {"coef", "alpha", "beta", "value"} with tableaux in text form.
pub fn expansion_to_json(e: &TermExpansion<Rat>) -> serde_json::Value {
    serde_json::Value::Array(
        e.terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "coef": t.coef,
                    "alpha": t.alpha.to_text(),
                    "beta": t.beta.to_text(),
                    "value": t.value.to_string(),
                })
            })
            .collect(),
    )
}
