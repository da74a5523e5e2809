//! Multivariable and homogeneous Vandermonde matrices, their factorization
//! as amalgams of smaller Vandermonde matrices, and the determinant
//! expansions that factorization yields.

use std::collections::HashMap;

use num_integer::binomial;
use num_traits::{One, Zero};

use crate::amalgam::{
    det_via_theorem3, perm_sum_theorem4, star, symbolic_pair, tableau_minor_product, trivial_pair,
    AmalgamPair, Term, TermExpansion,
};
use crate::error::{Error, Result};
use crate::exact_core::{parse_rat, ExactMatrix, MultiPoly, Rat, Scalar};
use crate::fayers::{hook_product, phi_matrix};
use crate::tableaux::perm_sign;

/// Column orders for the rectangular Vandermonde matrix.
///
/// Kron is mixed-radix with the first variable's exponent varying fastest;
/// it is the only order in which the matrix is entrywise an amalgam of the
/// two coordinate-split factors. Deglex (ascending total degree, descending
/// lexicographic within a degree) differs from it by a column permutation
/// whose sign is tracked explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Kron,
    Deglex,
}

#[derive(Debug, Clone)]
pub struct VdmSpec {
    pub degrees: Vec<usize>,
    pub split: Option<usize>,
    pub order: MonomialOrder,
}

impl VdmSpec {
    pub fn new(degrees: Vec<usize>, split: Option<usize>, order: MonomialOrder) -> Result<Self> {
        if degrees.is_empty() || degrees.iter().any(|&d| d == 0) {
            return Err(Error::Argument("degrees must be positive".into()));
        }
        if let Some(k) = split {
            if k == 0 || k >= degrees.len() {
                return Err(Error::Argument(format!(
                    "split {k} outside 1..{}",
                    degrees.len()
                )));
            }
        }
        Ok(VdmSpec {
            degrees,
            split,
            order,
        })
    }

    pub fn kron(degrees: Vec<usize>) -> Result<Self> {
        VdmSpec::new(degrees, None, MonomialOrder::Kron)
    }

    pub fn num_cols(&self) -> usize {
        self.degrees.iter().product()
    }

    pub fn num_vars(&self) -> usize {
        self.degrees.len()
    }
}

/// Exponent vectors in a fixed column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialList {
    pub exps: Vec<Vec<u32>>,
    pub order: MonomialOrder,
}

impl MonomialList {
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Human-readable monomial against variable names, e.g. "x^2*y".
    pub fn display(&self, idx: usize, var_names: &[String]) -> String {
        let e = &self.exps[idx];
        let mut parts = Vec::new();
        for (k, &p) in e.iter().enumerate() {
            match p {
                0 => {}
                1 => parts.push(var_names[k].clone()),
                _ => parts.push(format!("{}^{p}", var_names[k])),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn kron_exps(degrees: &[usize]) -> Vec<Vec<u32>> {
    let total: usize = degrees.iter().product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut e = Vec::with_capacity(degrees.len());
        for &d in degrees {
            e.push((idx % d) as u32);
            idx /= d;
        }
        out.push(e);
    }
    out
}

/// The full exponent grid 0 ≤ i_k ≤ N_k−1 in the spec's order.
pub fn monomials(spec: &VdmSpec) -> MonomialList {
    let mut exps = kron_exps(&spec.degrees);
    if spec.order == MonomialOrder::Deglex {
        sort_deglex(&mut exps);
    }
    MonomialList {
        exps,
        order: spec.order,
    }
}

fn sort_deglex(exps: &mut [Vec<u32>]) {
    exps.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
}

/// Sign of the column permutation carrying the kron order to deglex;
/// det under deglex = this sign times det under kron.
pub fn kron_to_deglex_sign(degrees: &[usize]) -> i64 {
    let kron = kron_exps(degrees);
    let mut deglex = kron.clone();
    sort_deglex(&mut deglex);
    let pos: HashMap<&Vec<u32>, usize> = kron.iter().zip(1..).collect();
    let word: Vec<usize> = deglex.iter().map(|e| pos[e]).collect();
    perm_sign(&word)
}

fn eval_monomial<S: Scalar>(point: &[S], exp: &[u32]) -> S {
    let mut acc = point[0].one_like();
    for (z, &p) in point.iter().zip(exp) {
        for _ in 0..p {
            acc = acc.mul(z);
        }
    }
    acc
}

/// Row i holds the monomials evaluated at point i. The row count may be
/// smaller than the column count (rectangular variant).
pub fn build_vdm<S: Scalar>(spec: &VdmSpec, pts: &[Vec<S>]) -> Result<ExactMatrix<S>> {
    let r = spec.num_vars();
    if pts.is_empty() {
        return Err(Error::Shape("no points".into()));
    }
    if pts.iter().any(|p| p.len() != r) {
        return Err(Error::Shape(format!("points must have {r} coordinates")));
    }
    let cols = monomials(spec);
    Ok(ExactMatrix::from_fn(pts.len(), cols.len(), |i, j| {
        eval_monomial(&pts[i], &cols.exps[j])
    }))
}

/// Splits the coordinates at k and rebuilds the matrix as an amalgam of the
/// two partial Vandermonde matrices; entrywise equal to `build_vdm` in the
/// kron order.
pub fn vdm_amalgam<S: Scalar>(spec: &VdmSpec, pts: &[Vec<S>]) -> Result<AmalgamPair<S>> {
    if spec.order != MonomialOrder::Kron {
        return Err(Error::UnsupportedOrder(
            "the amalgam factorization is entrywise only in the kron column order".into(),
        ));
    }
    let Some(k) = spec.split else {
        return Err(Error::Argument("split point required".into()));
    };
    let m: usize = spec.degrees[..k].iter().product();
    let n: usize = spec.degrees[k..].iter().product();
    if pts.len() != m * n {
        return Err(Error::Shape(format!(
            "need {} points for the square case, got {}",
            m * n,
            pts.len()
        )));
    }
    let left = VdmSpec::kron(spec.degrees[..k].to_vec())?;
    let right = VdmSpec::kron(spec.degrees[k..].to_vec())?;
    let lpts: Vec<Vec<S>> = pts.iter().map(|p| p[..k].to_vec()).collect();
    let rpts: Vec<Vec<S>> = pts.iter().map(|p| p[k..].to_vec()).collect();
    AmalgamPair::new(m, n, build_vdm(&left, &lpts)?, build_vdm(&right, &rpts)?)
}

/// The tableau-pair expansion of det V via the amalgam factorization.
pub fn vdm_theorem1<S: Scalar>(spec: &VdmSpec, pts: &[Vec<S>]) -> Result<TermExpansion<S>> {
    det_via_theorem3(&vdm_amalgam(spec, pts)?)
}

/// det V as the hook-normalized full permutation sum over Σ_{mn}.
pub fn vdm_theorem2<S: Scalar>(spec: &VdmSpec, pts: &[Vec<S>]) -> Result<S> {
    let p = vdm_amalgam(spec, pts)?;
    let (alpha, beta) = trivial_pair(p.m(), p.n());
    let sum = perm_sum_theorem4(&p, &alpha, &beta)?;
    let h: i64 = hook_product(p.m(), p.n())
        .try_into()
        .map_err(|_| Error::ResourceCap {
            count: u64::MAX,
            cap: crate::amalgam::PERM_CAP as u64,
        })?;
    let one = sum.one_like();
    let mut hs = one.zero_like();
    for _ in 0..h {
        hs = hs.add(&one);
    }
    Ok(sum.exact_div(&hs))
}

/// All monomials of total degree ≤ N in r variables: ascending total
/// degree, descending lexicographic within a degree. The count is
/// binomial(N+r, r).
pub fn hom_monomials(n_max: usize, r: usize) -> MonomialList {
    let mut exps = Vec::new();
    let mut cur = vec![0u32; r];
    gen_bounded(&mut exps, &mut cur, 0, n_max as u32);
    sort_deglex(&mut exps);
    MonomialList {
        exps,
        order: MonomialOrder::Deglex,
    }
}

fn gen_bounded(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, k: usize, budget: u32) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for v in 0..=budget {
        cur[k] = v;
        gen_bounded(out, cur, k + 1, budget - v);
    }
    cur[k] = 0;
}

/// The square Vandermonde matrix over all monomials of total degree ≤ N.
pub fn build_vdm_hom<S: Scalar>(n_max: usize, r: usize, pts: &[Vec<S>]) -> Result<ExactMatrix<S>> {
    let cols = hom_monomials(n_max, r);
    let ell = binomial(n_max + r, r);
    debug_assert_eq!(cols.len(), ell);
    if pts.len() != ell {
        return Err(Error::Shape(format!(
            "need {ell} points for degree {n_max} in {r} variables, got {}",
            pts.len()
        )));
    }
    if pts.iter().any(|p| p.len() != r) {
        return Err(Error::Shape(format!("points must have {r} coordinates")));
    }
    Ok(ExactMatrix::from_fn(ell, ell, |i, j| {
        eval_monomial(&pts[i], &cols.exps[j])
    }))
}

/// Exact rational kernel basis; each vector against `hom_monomials` is an
/// interpolating polynomial vanishing at every input point.
pub fn hom_kernel(mat: &ExactMatrix<Rat>) -> Vec<Vec<Rat>> {
    mat.kernel()
}

/// One row of a coefficient extraction: in amalgam row `row` (1-based),
/// take the coefficient of a_{row,a_col}·b_{row,b_col}. The extracted rows
/// of det(A⋆B) collapse to unit vectors at column a_col + (b_col-1)m, so
/// the result is a signed minor of the amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractedRow {
    pub row: usize,
    pub a_col: usize,
    pub b_col: usize,
}

#[derive(Debug, Clone)]
pub struct CoeffExtraction {
    pub rows: Vec<ExtractedRow>,
}

impl CoeffExtraction {
    pub fn new(rows: Vec<ExtractedRow>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for e in &rows {
            if !seen.insert(e.row) {
                return Err(Error::Argument(format!("row {} extracted twice", e.row)));
            }
        }
        Ok(CoeffExtraction { rows })
    }
}

/// A factored expansion of a homogeneous Vandermonde-type minor.
///
/// Builds the fully symbolic amalgam of shape (m,n), expands det(A⋆B) over
/// tableau pairs, takes the coefficient of the extraction variables
/// factor-by-factor (the a-variables live in A_α only and the b-variables
/// in B_β only), substitutes the remaining entries from `a_vals`/`b_vals`,
/// and drops terms that evaluate to zero. The total equals the minor of the
/// substituted amalgam with the extracted rows replaced by unit vectors.
pub fn hom_via_amalgam_minor(
    m: usize,
    n: usize,
    ext: &CoeffExtraction,
    a_vals: &ExactMatrix<Rat>,
    b_vals: &ExactMatrix<Rat>,
) -> Result<TermExpansion<Rat>> {
    let mn = m * n;
    if a_vals.rows() != mn || a_vals.cols() != m || b_vals.rows() != mn || b_vals.cols() != n {
        return Err(Error::Dimension(format!(
            "substitution tables must be {mn}x{m} and {mn}x{n}"
        )));
    }
    for e in &ext.rows {
        if e.row < 1 || e.row > mn || e.a_col < 1 || e.a_col > m || e.b_col < 1 || e.b_col > n {
            return Err(Error::Index(format!("extraction {e:?} out of range")));
        }
    }
    let sym = symbolic_pair(m, n);
    let phi = phi_matrix(m, n)?;
    let s = phi.size();

    let a_ext: Vec<(String, u32)> = ext
        .rows
        .iter()
        .map(|e| (format!("a{}_{}", e.row, e.a_col), 1))
        .collect();
    let b_ext: Vec<(String, u32)> = ext
        .rows
        .iter()
        .map(|e| (format!("b{}_{}", e.row, e.b_col), 1))
        .collect();
    let extracted_rows: std::collections::HashSet<usize> =
        ext.rows.iter().map(|e| e.row).collect();
    let mut a_subst: HashMap<String, Rat> = HashMap::new();
    let mut b_subst: HashMap<String, Rat> = HashMap::new();
    for i in 1..=mn {
        if extracted_rows.contains(&i) {
            continue;
        }
        for j in 1..=m {
            a_subst.insert(format!("a{i}_{j}"), a_vals.get(i - 1, j - 1).clone());
        }
        for k in 1..=n {
            b_subst.insert(format!("b{i}_{k}"), b_vals.get(i - 1, k - 1).clone());
        }
    }

    let eval_side = |mat: &ExactMatrix<MultiPoly>,
                     t: &crate::tableaux::Tableau,
                     picks: &[(String, u32)],
                     subst: &HashMap<String, Rat>|
     -> Result<Rat> {
        let poly = tableau_minor_product(mat, t)?;
        let picks_ref: Vec<(&str, u32)> = picks.iter().map(|(s, e)| (s.as_str(), *e)).collect();
        let coeff = poly.coeff(&picks_ref)?;
        let reduced = coeff.eval_partial(subst)?;
        reduced.as_constant().ok_or_else(|| {
            Error::UnknownVariable(format!("unassigned variables remain in {reduced}"))
        })
    };

    let mut a_cache: Vec<Option<Rat>> = vec![None; s];
    let mut b_cache: Vec<Option<Rat>> = vec![None; s];
    let mut terms = Vec::new();
    let mut total = Rat::zero();
    for i in 0..s {
        for j in 0..s {
            let c = phi.entry(i, j);
            if c == 0 {
                continue;
            }
            if a_cache[i].is_none() {
                a_cache[i] =
                    Some(eval_side(sym.a(), phi.row_basis().get(i), &a_ext, &a_subst)?);
            }
            let av = a_cache[i].as_ref().unwrap();
            if Zero::is_zero(av) {
                continue;
            }
            if b_cache[j].is_none() {
                b_cache[j] = Some(eval_side(sym.b(), &phi.col_tableau(j), &b_ext, &b_subst)?);
            }
            let bv = b_cache[j].as_ref().unwrap();
            if Zero::is_zero(bv) {
                continue;
            }
            let value = av * bv;
            total += &value * Rat::from_integer(c.into());
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

/// Independent value of the same extraction: determinant of the substituted
/// amalgam with each extracted row replaced by the unit vector at its
/// collapsed column. Multilinearity of det in rows makes this exactly the
/// iterated partial derivative.
pub fn extraction_oracle(
    m: usize,
    n: usize,
    ext: &CoeffExtraction,
    a_vals: &ExactMatrix<Rat>,
    b_vals: &ExactMatrix<Rat>,
) -> Result<Rat> {
    let p = AmalgamPair::new(m, n, a_vals.clone(), b_vals.clone())?;
    let mut s = star(&p);
    for e in &ext.rows {
        let unit_col = (e.a_col - 1) + (e.b_col - 1) * m;
        for c in 0..m * n {
            s.set(
                e.row - 1,
                c,
                if c == unit_col { Rat::one() } else { Rat::zero() },
            );
        }
    }
    s.det()
}

/// Rational point lists: the JSON interchange form is
/// `[{"z": ["rational", ...]}, ...]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    pub points: Vec<Vec<Rat>>,
}

impl PointSet {
    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.points
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "z": p.iter().map(Rat::to_string).collect::<Vec<_>>()
                    })
                })
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("points file must be a JSON array".into()))?;
        let mut points = Vec::with_capacity(arr.len());
        for item in arr {
            let z = item
                .get("z")
                .and_then(|z| z.as_array())
                .ok_or_else(|| Error::Parse("each point needs a \"z\" array".into()))?;
            let coords = z
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| Error::Parse("coordinates are rational strings".into()))
                        .and_then(parse_rat)
                })
                .collect::<Result<Vec<Rat>>>()?;
            points.push(coords);
        }
        let set = PointSet { points };
        if let Some(d) = set.dim() {
            if set.points.iter().any(|p| p.len() != d) {
                return Err(Error::Shape("points have mixed dimensions".into()));
            }
        }
        Ok(set)
    }
}
