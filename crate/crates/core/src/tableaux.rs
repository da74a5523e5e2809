//! Rectangular Young shapes, standard tableau enumeration, conjugation,
//! signs, and the dominance order on tableaux.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Default cap on the number of standard tableaux an enumeration may
/// produce. The pairing-matrix inversion downstream is quadratic in the
/// basis size; (4,4) already has 24024 tableaux.
pub const DEFAULT_SYT_CAP: u64 = 10_000;

/// Partition shape: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Shape {
    parts: Vec<usize>,
}

impl Shape {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Shape("parts must be non-empty and positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Shape("parts must be weakly decreasing".into()));
        }
        Ok(Shape { parts })
    }

    /// The rectangle n^m: m rows of n boxes.
    pub fn rectangle(m: usize, n: usize) -> Self {
        Shape { parts: vec![n; m] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_rectangular(&self) -> bool {
        self.parts.iter().all(|&p| p == self.parts[0])
    }

    pub fn conjugate(&self) -> Shape {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Shape { parts }
    }
}

/// A filling of a Young diagram with 1..=|λ|, each entry used once.
/// Not necessarily standard: permuted tableaux carry orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau {
    shape: Shape,
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Shape::new(rows.iter().map(Vec::len).collect())?;
        let n = shape.size();
        let mut seen = vec![false; n + 1];
        for row in &rows {
            for &e in row {
                if e < 1 || e > n {
                    return Err(Error::Shape(format!("entry {e} outside 1..={n}")));
                }
                if seen[e] {
                    return Err(Error::Shape(format!("entry {e} repeated")));
                }
                seen[e] = true;
            }
        }
        Ok(Tableau { shape, rows })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Entries of column i (1-based), top to bottom in positional order.
    pub fn col(&self, i: usize) -> Result<Vec<usize>> {
        if i < 1 || i > self.shape.parts[0] {
            return Err(Error::Index(format!(
                "column {i} outside 1..={}",
                self.shape.parts[0]
            )));
        }
        Ok(self
            .rows
            .iter()
            .filter(|r| r.len() >= i)
            .map(|r| r[i - 1])
            .collect())
    }

    /// Entries of row j (1-based), left to right in positional order.
    pub fn row(&self, j: usize) -> Result<Vec<usize>> {
        if j < 1 || j > self.rows.len() {
            return Err(Error::Index(format!(
                "row {j} outside 1..={}",
                self.rows.len()
            )));
        }
        Ok(self.rows[j - 1].clone())
    }

    /// Column-major reading: column 1 top to bottom, then column 2, ...
    /// For the trivial tableau this is 1, 2, ..., |λ| in order, so the
    /// column word of any filling is the one-line form of the permutation
    /// carrying 1_λ to it.
    pub fn column_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.size());
        for i in 1..=self.shape.parts[0] {
            word.extend(self.col(i).expect("column in range"));
        }
        word
    }

    pub fn is_standard(&self) -> bool {
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        for i in 1..=self.shape.parts[0] {
            let c = self.col(i).expect("column in range");
            if c.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
        }
        true
    }

    /// Transposed filling; an involution that preserves standardness.
    pub fn conjugate(&self) -> Tableau {
        let shape = self.shape.conjugate();
        let rows = (0..shape.num_rows())
            .map(|j| {
                self.rows
                    .iter()
                    .filter(|r| r.len() > j)
                    .map(|r| r[j])
                    .collect()
            })
            .collect();
        Tableau { shape, rows }
    }

    /// Sign of the permutation carrying the trivial tableau of this shape
    /// to this filling.
    pub fn sign(&self) -> i64 {
        perm_sign(&self.column_word())
    }

    /// Cell-wise relabelling e ↦ σ(e); σ is a 1-based one-line permutation
    /// of {1..|λ|} (σ(v) = perm[v-1]).
    pub fn apply_perm(&self, perm: &[usize]) -> Tableau {
        assert_eq!(perm.len(), self.size(), "permutation length mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&e| perm[e - 1]).collect())
            .collect();
        Tableau {
            shape: self.shape.clone(),
            rows,
        }
    }

    /// Per-row entry sums; the lexicographic order on these keys refines the
    /// dominance order on standard tableaux of a rectangle.
    pub fn row_sum_lex_key(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Shape of the sub-tableau holding the entries 1..=k.
    fn truncated_shape(&self, k: usize) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| r.iter().filter(|&&e| e <= k).count())
            .filter(|&c| c > 0)
            .collect()
    }

    /// Dominance order lifted to tableaux: every entry-truncation of `self`
    /// dominates the corresponding truncation of `other`.
    pub fn dominates(&self, other: &Tableau) -> Result<bool> {
        if self.shape != other.shape {
            return Err(Error::Shape("dominance needs equal shapes".into()));
        }
        for k in 1..=self.size() {
            if !shape_dominates(&self.truncated_shape(k), &other.truncated_shape(k)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Text form: rows separated by ";", entries by ",".
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn from_text(s: &str) -> Result<Tableau> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|e| {
                        e.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad tableau entry `{e}`")))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Tableau::new(rows)
    }
}

/// Sign of a permutation given in one-line form (1-based word), by
/// inversion-count parity.
pub fn perm_sign(word: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The trivial tableau 1_{n^m}: boxes filled consecutively first top to
/// bottom, then left to right; cell (i,j) holds i + (j-1)m.
pub fn trivial_tableau(m: usize, n: usize) -> Tableau {
    assert!(m >= 1 && n >= 1);
    let rows = (1..=m)
        .map(|i| (0..n).map(|j| i + j * m).collect())
        .collect();
    Tableau {
        shape: Shape::rectangle(m, n),
        rows,
    }
}

/// Number of standard tableaux of shape n^m, by the hook length formula.
pub fn syt_count(m: usize, n: usize) -> BigUint {
    let mn = (m * n) as u64;
    let mut numer = BigUint::from(1u32);
    for k in 1..=mn {
        numer *= BigUint::from(k);
    }
    let mut hooks = BigUint::from(1u32);
    for i in 0..m {
        for j in 0..n {
            hooks *= BigUint::from((m - 1 - i) + (n - 1 - j) + 1);
        }
    }
    numer / hooks
}

/// The standard tableaux of a rectangular shape in canonical order:
/// ascending lexicographic on the column-reading word.
#[derive(Debug, Clone)]
pub struct TableauBasis {
    m: usize,
    n: usize,
    tableaux: Vec<Tableau>,
    index: HashMap<Vec<usize>, usize>,
}

impl TableauBasis {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.tableaux.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tableaux.is_empty()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn get(&self, i: usize) -> &Tableau {
        &self.tableaux[i]
    }

    pub fn index_of(&self, t: &Tableau) -> Option<usize> {
        self.index.get(&t.column_word()).copied()
    }
}

/// All standard tableaux of shape n^m in canonical order.
pub fn enumerate_syt(m: usize, n: usize) -> Result<TableauBasis> {
    enumerate_syt_capped(m, n, DEFAULT_SYT_CAP)
}

/// As [`enumerate_syt`] with an explicit cap on the tableau count.
pub fn enumerate_syt_capped(m: usize, n: usize, cap: u64) -> Result<TableauBasis> {
    assert!(m >= 1 && n >= 1);
    let count = syt_count(m, n);
    if count > BigUint::from(cap) {
        return Err(Error::ResourceCap {
            count: count.to_string().parse().unwrap_or(u64::MAX),
            cap,
        });
    }
    // Backtracking over cells in column-major order, trying values in
    // ascending order, emits ascending column-word order natively.
    let mn = m * n;
    let mut grid = vec![vec![0usize; n]; m];
    let mut used = vec![false; mn + 1];
    let mut out = Vec::new();
    fill(&mut grid, &mut used, 0, m, n, &mut out);
    let tableaux: Vec<Tableau> = out
        .into_iter()
        .map(|rows| Tableau {
            shape: Shape::rectangle(m, n),
            rows,
        })
        .collect();
    debug_assert_eq!(BigUint::from(tableaux.len() as u64), count);
    let index = tableaux
        .iter()
        .enumerate()
        .map(|(i, t)| (t.column_word(), i))
        .collect();
    Ok(TableauBasis {
        m,
        n,
        tableaux,
        index,
    })
}

fn fill(
    grid: &mut Vec<Vec<usize>>,
    used: &mut Vec<bool>,
    cell: usize,
    m: usize,
    n: usize,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if cell == m * n {
        out.push(grid.clone());
        return;
    }
    // column-major cell order
    let (j, i) = (cell / m, cell % m);
    let lower = {
        let above = if i > 0 { grid[i - 1][j] } else { 0 };
        let left = if j > 0 { grid[i][j - 1] } else { 0 };
        above.max(left)
    };
    for v in lower + 1..=m * n {
        if used[v] {
            continue;
        }
        used[v] = true;
        grid[i][j] = v;
        fill(grid, used, cell + 1, m, n, out);
        grid[i][j] = 0;
        used[v] = false;
    }
}



/// Dominance of partitions by prefix sums (trailing zeros implied).
fn shape_dominates(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    let mut sa = 0usize;
    let mut sb = 0usize;
    for i in 0..len {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}
