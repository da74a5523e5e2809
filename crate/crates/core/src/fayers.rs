//! The sign-valued pairing between standard tableaux of conjugate
//! rectangular shapes, the matrices F and Φ built from it, and the hook
//! length product H_{m,n}.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exact_core::{ExactMatrix, Rat};
use crate::tableaux::{enumerate_syt, Tableau, TableauBasis};

/// ⟨α,β⟩ for α of shape n^m and β of shape m^n on the same entry set.
///
/// The candidate tableau γ of shape n^m has γ[i][j] = the unique element of
/// col_j(α) ∩ col_i(β); if some intersection does not have size exactly 1
/// the pairing is 0, otherwise it is the sign of γ.
pub fn pairing(alpha: &Tableau, beta: &Tableau) -> Result<i64> {
    let (sa, sb) = (alpha.shape(), beta.shape());
    if !sa.is_rectangular() || !sb.is_rectangular() || &sa.conjugate() != sb {
        return Err(Error::Shape(format!(
            "pairing needs conjugate rectangles, got {:?} and {:?}",
            sa.parts(),
            sb.parts()
        )));
    }
    let m = sa.num_rows();
    let n = sa.parts()[0];
    let acols: Vec<Vec<usize>> = (1..=n).map(|j| alpha.col(j).unwrap()).collect();
    let bcols: Vec<Vec<usize>> = (1..=m).map(|i| beta.col(i).unwrap()).collect();
    let mut rows = vec![vec![0usize; n]; m];
    for i in 0..m {
        for j in 0..n {
            let mut hits = acols[j].iter().filter(|e| bcols[i].contains(e));
            match (hits.next(), hits.next()) {
                (Some(&e), None) => rows[i][j] = e,
                _ => return Ok(0),
            }
        }
    }
    let gamma = Tableau::new(rows).expect("intersections partition the entry set");
    Ok(gamma.sign())
}

/// A square integer matrix indexed by the canonical tableau basis of shape
/// n^m (rows) and its conjugates (columns).
#[derive(Debug, Clone)]
pub struct PairingMatrix {
    m: usize,
    n: usize,
    basis: TableauBasis,
    entries: Vec<i64>,
}

pub type FayersMatrix = PairingMatrix;
pub type PhiMatrix = PairingMatrix;

impl PairingMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// The row basis: standard tableaux of shape n^m in canonical order.
    pub fn row_basis(&self) -> &TableauBasis {
        &self.basis
    }

    /// The i-th column label β_i = α_i′.
    pub fn col_tableau(&self, i: usize) -> Tableau {
        self.basis.get(i).conjugate()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.basis.len() + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let s = self.basis.len();
        &self.entries[i * s..(i + 1) * s]
    }

    /// Overwrites one entry. Negative-control hook: deliberately corrupting
    /// Φ must break the determinant expansion on the first random trial.
    pub fn corrupt_entry(&mut self, i: usize, j: usize, v: i64) {
        let s = self.basis.len();
        self.entries[i * s + j] = v;
    }
}

/// F_{i,j} = ⟨α_i, α_j′⟩ in the canonical bases.
pub fn fayers_matrix(m: usize, n: usize) -> Result<FayersMatrix> {
    let basis = enumerate_syt(m, n)?;
    let s = basis.len();
    let conj: Vec<Tableau> = (0..s).map(|j| basis.get(j).conjugate()).collect();
    let mut entries = Vec::with_capacity(s * s);
    for i in 0..s {
        for c in conj.iter() {
            entries.push(pairing(basis.get(i), c)?);
        }
    }
    Ok(PairingMatrix {
        m,
        n,
        basis,
        entries,
    })
}

/// Φ = (EFE)^{-T}, where E is the diagonal matrix of tableau signs.
///
/// Both conjugating sign matrices carry ε(α_i): the sign attached to the
/// column label β_i is the sign of its conjugate α_i. EFE is unimodular, so
/// the inverse transpose is integral.
pub fn phi_matrix(m: usize, n: usize) -> Result<PhiMatrix> {
    let f = fayers_matrix(m, n)?;
    let s = f.size();
    let signs: Vec<i64> = (0..s).map(|i| f.basis.get(i).sign()).collect();
    let efe = ExactMatrix::from_fn(s, s, |i, j| {
        Rat::from_integer(BigInt::from(signs[i] * f.entry(i, j) * signs[j]))
    });
    let inv = efe.inverse().map_err(|_| {
        Error::Inconsistent("sign-conjugated pairing matrix is singular".into())
    })?;
    let mut entries = Vec::with_capacity(s * s);
    for i in 0..s {
        for j in 0..s {
            let e = inv.get(j, i);
            if !e.denom().is_one() {
                return Err(Error::Inconsistent(format!(
                    "non-integer entry {e} in inverse of sign-conjugated pairing matrix"
                )));
            }
            let v: i64 = e
                .numer()
                .try_into()
                .map_err(|_| Error::Inconsistent("pairing inverse entry overflows i64".into()))?;
            entries.push(v);
        }
    }
    Ok(PairingMatrix {
        m,
        n,
        basis: f.basis,
        entries,
    })
}

/// H_{m,n} = ∏_{i=0}^{n-1} (m+i)!/i! with m ≥ n (arguments swapped
/// otherwise); the product of the hook lengths of the rectangle n^m.
pub fn hook_product(m: usize, n: usize) -> BigInt {
    let (m, n) = (m.max(n), m.min(n));
    let mut h = BigInt::one();
    for i in 0..n {
        for k in i + 1..=m + i {
            h *= BigInt::from(k);
        }
    }
    h
}
