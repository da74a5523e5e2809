use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{parse_rat, Rat, Scalar};
use crate::error::{Error, Result};

/// A fixed, ordered universe of variable names. Every polynomial carries a
/// handle to its universe; referring to a name outside it is an error rather
/// than a silent zero, so index typos in entry plumbing surface immediately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<I, S>(names: I) -> Arc<VarSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            assert!(seen.insert(n.clone()), "duplicate variable name `{n}`");
        }
        Arc::new(VarSet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

/// Sparse multivariate polynomial over exact rationals. Terms map exponent
/// vectors (one entry per universe variable) to nonzero coefficients.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Arc<VarSet>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.vars.names == other.vars.names && self.terms == other.terms
    }
}

impl MultiPoly {
    pub fn zero(vars: &Arc<VarSet>) -> Self {
        MultiPoly {
            vars: Arc::clone(vars),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<VarSet>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !Zero::is_zero(&c) {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &Arc<VarSet>, name: &str) -> Result<Self> {
        let idx = vars.index_of(name)?;
        let mut exp = vec![0u32; vars.len()];
        exp[idx] = 1;
        let mut p = Self::zero(vars);
        p.terms.insert(exp, Rat::one());
        Ok(p)
    }

    pub fn from_terms(vars: &Arc<VarSet>, terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (exp, coef) in terms {
            if exp.len() != vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector length {} != variable count {}",
                    exp.len(),
                    vars.len()
                )));
            }
            p.add_term(exp, coef);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, name: &str) -> Result<u32> {
        let idx = self.vars.index_of(name)?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (exp, c) = self.terms.iter().next().unwrap();
            if exp.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term(&mut self, exp: Vec<u32>, coef: Rat) {
        if Zero::is_zero(&coef) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coef);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &coef;
                if Zero::is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_universe(&self, other: &Self) {
        assert!(
            self.vars.names == other.vars.names,
            "polynomials from different variable universes"
        );
    }

    /// Formal partial derivative.
    pub fn diff(&self, name: &str) -> Result<Self> {
        let idx = self.vars.index_of(name)?;
        let mut out = Self::zero(&self.vars);
        for (exp, coef) in &self.terms {
            if exp[idx] == 0 {
                continue;
            }
            let mut e = exp.clone();
            let k = e[idx];
            e[idx] -= 1;
            out.add_term(e, coef * Rat::from_integer(k.into()));
        }
        Ok(out)
    }

    /// Iterated coefficient extraction: the coefficient of
    /// `v_1^{d_1} … v_k^{d_k}`, as a polynomial free of the listed variables.
    pub fn coeff(&self, assignments: &[(&str, u32)]) -> Result<Self> {
        let mut idxs = Vec::with_capacity(assignments.len());
        for (name, deg) in assignments {
            let idx = self.vars.index_of(name)?;
            assert!(
                !idxs.iter().any(|&(i, _)| i == idx),
                "repeated variable `{name}` in coefficient extraction"
            );
            idxs.push((idx, *deg));
        }
        let mut out = Self::zero(&self.vars);
        for (exp, coef) in &self.terms {
            if idxs.iter().all(|&(i, d)| exp[i] == d) {
                let mut e = exp.clone();
                for &(i, _) in &idxs {
                    e[i] = 0;
                }
                out.add_term(e, coef.clone());
            }
        }
        Ok(out)
    }

    /// Exact evaluation; every universe variable must be assigned.
    pub fn eval(&self, point: &std::collections::HashMap<String, Rat>) -> Result<Rat> {
        for name in self.vars.names() {
            if !point.contains_key(name) {
                return Err(Error::UnknownVariable(format!("{name} (unassigned)")));
            }
        }
        let values: Vec<&Rat> = self
            .vars
            .names()
            .iter()
            .map(|n| point.get(n).unwrap())
            .collect();
        let mut acc = Rat::zero();
        for (exp, coef) in &self.terms {
            let mut t = coef.clone();
            for (i, &e) in exp.iter().enumerate() {
                for _ in 0..e {
                    t *= values[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation of a subset of the variables; the result lives in the same
    /// universe but no longer depends on the assigned variables.
    pub fn eval_partial(&self, point: &std::collections::HashMap<String, Rat>) -> Result<Self> {
        let mut assigned: Vec<Option<&Rat>> = vec![None; self.vars.len()];
        for (name, v) in point {
            let idx = self.vars.index_of(name)?;
            assigned[idx] = Some(v);
        }
        let mut out = Self::zero(&self.vars);
        for (exp, coef) in &self.terms {
            let mut t = coef.clone();
            let mut e = exp.clone();
            for (i, slot) in assigned.iter().enumerate() {
                if let Some(v) = slot {
                    for _ in 0..e[i] {
                        t *= *v;
                    }
                    e[i] = 0;
                }
            }
            out.add_term(e, t);
        }
        Ok(out)
    }

    /// Leading (lex-greatest) term, if nonzero.
    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }
}

impl Scalar for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(&self.vars)
    }

    fn one_like(&self) -> Self {
        Self::constant(&self.vars, Rat::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.check_same_universe(rhs);
        let mut out = self.clone();
        for (exp, coef) in &rhs.terms {
            out.add_term(exp.clone(), coef.clone());
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.check_same_universe(rhs);
        let mut out = self.clone();
        for (exp, coef) in &rhs.terms {
            out.add_term(exp.clone(), -coef.clone());
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.check_same_universe(rhs);
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        let mut out = self.clone();
        for coef in out.terms.values_mut() {
            *coef = -coef.clone();
        }
        out
    }

    /// Division known to be exact (Bareiss pivots). Long division in lex
    /// order; panics if a remainder step fails to divide.
    fn exact_div(&self, rhs: &Self) -> Self {
        self.check_same_universe(rhs);
        let (lead_exp, lead_coef) = rhs.leading().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rexp, rcoef)) = rem.leading() {
            let qexp: Vec<u32> = rexp
                .iter()
                .zip(lead_exp)
                .map(|(r, l)| {
                    r.checked_sub(*l)
                        .expect("inexact polynomial division (exponent underflow)")
                })
                .collect();
            let qcoef = rcoef / lead_coef;
            let mut t = Self::zero(&self.vars);
            t.terms.insert(qexp, qcoef);
            rem = rem.sub(&t.mul(rhs));
            quot = quot.add(&t);
        }
        quot
    }

    fn prefer_cofactor(&self, n: usize) -> bool {
        n <= 6
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coef) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (i, &e) in exp.iter().enumerate() {
                if e == 1 {
                    factors.push(self.vars.names()[i].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.vars.names()[i], e));
                }
            }
            let mono = factors.join("*");
            let is_neg = coef < &Rat::zero();
            let abs = if is_neg { -coef.clone() } else { coef.clone() };
            if first {
                if is_neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if is_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyTermJson {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<PolyTermJson>,
}

impl MultiPoly {
    pub fn to_json(&self) -> serde_json::Value {
        let terms = self
            .terms
            .iter()
            .map(|(exp, coef)| PolyTermJson {
                exp: exp.clone(),
                coef: coef.to_string(),
            })
            .collect();
        serde_json::to_value(PolyJson {
            vars: self.vars.names().to_vec(),
            terms,
        })
        .expect("polynomial serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let vars = VarSet::new(parsed.vars);
        let terms = parsed
            .terms
            .into_iter()
            .map(|t| Ok((t.exp, parse_rat(&t.coef)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(&vars, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::scalar::{rat, rat_from};

    fn xy() -> Arc<VarSet> {
        VarSet::new(["x", "y"])
    }

    fn var(vs: &Arc<VarSet>, n: &str) -> MultiPoly {
        MultiPoly::var(vs, n).unwrap()
    }

    #[test]
    fn diff_examples() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        // d/dx (x^2 y) = 2xy
        let p = x.mul(&x).mul(&y);
        let expect = x.mul(&y).mul(&MultiPoly::constant(&vs, rat(2)));
        assert_eq!(p.diff("x").unwrap(), expect);
        // d/dx (y) = 0
        assert!(y.diff("x").unwrap().is_zero());
        // d/da (a b + a^2) = b + 2a, relabelled to x, y
        let p = x.mul(&y).add(&x.mul(&x));
        let expect = y.add(&x.mul(&MultiPoly::constant(&vs, rat(2))));
        assert_eq!(p.diff("x").unwrap(), expect);
        assert!(matches!(
            p.diff("z"),
            Err(crate::error::Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn coeff_examples() {
        let vs = VarSet::new(["a", "b", "c"]);
        let a = var(&vs, "a");
        let b = var(&vs, "b");
        let c = var(&vs, "c");
        let p = a.mul(&b).add(&c);
        assert_eq!(p.coeff(&[("a", 1)]).unwrap(), b);
        assert_eq!(
            a.mul(&b).coeff(&[("a", 1), ("b", 1)]).unwrap(),
            MultiPoly::constant(&vs, rat(1))
        );
        assert!(a.mul(&b).coeff(&[("a", 2)]).unwrap().is_zero());
        assert!(p.coeff(&[("z", 1)]).is_err());
    }

    #[test]
    fn eval_examples() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let p = x.sub(&y);
        let mut pt = std::collections::HashMap::new();
        pt.insert("x".to_string(), rat(3));
        pt.insert("y".to_string(), rat(1));
        assert_eq!(p.eval(&pt).unwrap(), rat(2));
        assert_eq!(MultiPoly::zero(&vs).eval(&pt).unwrap(), rat(0));

        pt.insert("x".to_string(), rat_from(1, 2));
        pt.insert("y".to_string(), rat_from(2, 3));
        assert_eq!(x.mul(&y).eval(&pt).unwrap(), rat_from(1, 3));

        let mut partial = std::collections::HashMap::new();
        partial.insert("y".to_string(), rat(2));
        assert!(x.sub(&y).eval(&partial).is_err());
    }

    #[test]
    fn exact_division_roundtrip() {
        let vs = xy();
        let x = var(&vs, "x");
        let y = var(&vs, "y");
        let p = x.add(&y); // x + y
        let q = x.sub(&y); // x - y
        let prod = p.mul(&q);
        assert_eq!(prod.exact_div(&p), q);
        assert_eq!(prod.exact_div(&q), p);
    }

    #[test]
    fn json_roundtrip() {
        let vs = xy();
        let p = var(&vs, "x")
            .mul(&var(&vs, "y"))
            .add(&MultiPoly::constant(&vs, rat_from(-5, 7)));
        let j = p.to_json();
        assert_eq!(MultiPoly::from_json(&j).unwrap(), p);
    }
}
