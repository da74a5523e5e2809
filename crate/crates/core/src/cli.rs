//! Batch command-line front door: tableau enumeration, pairing-matrix
//! printing, identity verification, Vandermonde expansion, and Fekete-point
//! estimation.
//!
//! Exit codes: 0 success / identity verified, 1 identity mismatch (both
//! sides printed), 2 usage or input error, 3 resource cap exceeded.

use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::amalgam::{
    det_via_theorem3_with_phi, expansion_to_json, kappa, perm_sum_theorem4, random_pair, star,
    symbolic_pair, trivial_pair, AmalgamPair,
};
use crate::error::{Error, Result};
use crate::exact_core::{parse_rat, ExactMatrix, MultiPoly, Rat, Scalar, VarSet};
use crate::fayers::{fayers_matrix, hook_product, phi_matrix, PairingMatrix};
use crate::fekete::{multiplicativity_check, transfinite_estimate, CompactSet};
use crate::tableaux::{enumerate_syt_capped, syt_count, Tableau, DEFAULT_SYT_CAP};
use crate::vandermonde::{
    build_vdm, build_vdm_hom, hom_kernel, vdm_theorem1, vdm_theorem2, MonomialOrder, PointSet,
    VdmSpec,
};

/// Largest mn for which symbolic (indeterminate-entry) verification runs
/// without an explicit override; the expansions blow up combinatorially
/// past (3,2).
const SYMBOLIC_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "vdm-amalgam",
    version,
    about = "Determinant identities for amalgamated matrices, Vandermonde specializations, and Fekete-point estimates",
    max_term_width = 100
)]
struct Cli {
    /// Reject randomized verification without an explicit --seed.
    #[arg(long, global = true)]
    ci: bool,

    /// Cap worker parallelism (computations here run on one thread; the
    /// flag is accepted for interface stability).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the standard Young tableaux of the m-row, n-column rectangle in
    /// canonical (ascending column-word) order, one per line.
    Syt { m: usize, n: usize },

    /// Print the pairing matrix F for the (m, n) rectangle: basis tableaux
    /// in text form, then the matrix as JSON integers.
    Fayers { m: usize, n: usize },

    /// Print the expansion-coefficient matrix Φ (inverse transpose of the
    /// sign-conjugated F) in the same layout as `fayers`.
    Phi { m: usize, n: usize },

    /// Check det(A⋆B) against the Φ-weighted tableau-pair expansion.
    #[command(name = "verify-t3")]
    VerifyT3 {
        m: usize,
        n: usize,
        /// Seed for random integer test matrices.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of seeded trials (seed, seed+1, ...).
        #[arg(long, default_value_t = 1)]
        trials: u64,
        /// JSON matrix file for A (mn x m); requires --B.
        #[arg(long = "A", value_name = "FILE", requires = "b_file")]
        a_file: Option<String>,
        /// JSON matrix file for B (mn x n); requires --A.
        #[arg(long = "B", value_name = "FILE", requires = "a_file")]
        b_file: Option<String>,
        /// Verify with indeterminate entries (zero-polynomial check).
        #[arg(long)]
        symbolic: bool,
        /// Negative-control hook: corrupt one Φ entry before verifying.
        #[arg(long)]
        corrupt_phi: bool,
    },

    /// Check the full permutation sum Σ ε(σ) A_{σα} B_{σβ} against
    /// κ·det(A⋆B) (κ = hook product for the trivial pair).
    #[command(name = "verify-t4")]
    VerifyT4 {
        m: usize,
        n: usize,
        /// Tableau text form, e.g. "1,4;2,5;3,6" (default: trivial).
        #[arg(long)]
        alpha: Option<String>,
        /// Conjugate-shape tableau text form (default: trivial conjugate).
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Print the integer κ relating the permutation sum for (α, β) to
    /// det(A⋆B).
    Kappa {
        m: usize,
        n: usize,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long)]
        seed: Option<u64>,
    },

    /// Multivariable Vandermonde determinants and their tableau-pair
    /// expansions.
    Vdm {
        /// Comma-separated degree tuple, e.g. 2,2 or 2,2,2.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        /// Coordinate split (1..r-1) for the amalgam factorization.
        #[arg(long)]
        split: Option<usize>,
        /// Points file: JSON [{"z": ["rational", ...]}, ...].
        #[arg(long)]
        points: Option<String>,
        /// Also verify via an expansion: t1 (tableau pairs) or t2
        /// (hook-normalized permutation sum).
        #[arg(long, value_parser = ["t1", "t2"])]
        expand: Option<String>,
        /// Print the factored symbolic expansion in indeterminate points
        /// (two-variable specs only).
        #[arg(long)]
        symbolic: bool,
    },

    /// Homogeneous Vandermonde over all monomials of total degree <= N.
    #[command(name = "vdm-hom")]
    VdmHom {
        #[arg(long = "N")]
        n: usize,
        #[arg(long = "r")]
        r: usize,
        #[arg(long)]
        points: String,
        /// Print a kernel basis when the determinant vanishes.
        #[arg(long)]
        kernel: bool,
    },

    /// Per-N transfinite-diameter estimates from seeded Fekete-point
    /// searches; emits CSV (N, D, log|det|, estimate).
    Fekete {
        /// Compact-set descriptor file (JSON).
        #[arg(long)]
        set: String,
        /// Comma-separated positive rational weights, one per coordinate.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<String>,
        #[arg(long = "N-list", alias = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Compare the transfinite estimate of a product set against the
    /// weighted product of factor estimates, with an exact spot check of
    /// the paired-configuration determinant identity.
    Multiplicativity {
        #[arg(long)]
        set1: String,
        #[arg(long)]
        set2: String,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        w1: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        w2: Vec<String>,
        #[arg(long = "N", default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 6)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if cli.threads == Some(0) {
        eprintln!("error: --threads must be positive");
        return 2;
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceCap { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn tableau_cap() -> u64 {
    std::env::var("AMALGAM_SYT_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SYT_CAP)
}

fn guard_tableau_count(m: usize, n: usize) -> Result<()> {
    use num_traits::ToPrimitive;
    let cap = tableau_cap();
    let count = syt_count(m, n);
    if count.to_u64().map_or(true, |c| c > cap) {
        return Err(Error::ResourceCap {
            count: count.to_u64().unwrap_or(u64::MAX),
            cap,
        });
    }
    Ok(())
}

fn require_seed(seed: Option<u64>, ci: bool) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if ci => Err(Error::Argument(
            "--ci requires an explicit --seed for randomized verification".into(),
        )),
        None => {
            let s: u64 = rand::random();
            eprintln!("note: no --seed given, using {s}");
            Ok(s)
        }
    }
}

fn print_pairing(pm: &PairingMatrix) {
    println!("# basis");
    for t in pm.row_basis().tableaux() {
        println!("{}", t.to_text());
    }
    println!("# matrix");
    let rows: Vec<&[i64]> = (0..pm.size()).map(|i| pm.row(i)).collect();
    println!("{}", serde_json::to_string(&rows).expect("integer matrix"));
}

fn read_json(path: &str) -> Result<serde_json::Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{path}: {e}")))
}

fn standard_tableau(text: &str, m: usize, n: usize, conjugate_shape: bool) -> Result<Tableau> {
    let t = Tableau::from_text(text)?;
    let want = if conjugate_shape {
        crate::tableaux::Shape::rectangle(n, m)
    } else {
        crate::tableaux::Shape::rectangle(m, n)
    };
    if t.shape() != &want {
        return Err(Error::Shape(format!(
            "tableau `{text}` does not have shape {:?}",
            want.parts()
        )));
    }
    if !t.is_standard() {
        return Err(Error::Argument(format!("tableau `{text}` is not standard")));
    }
    Ok(t)
}

/// The minors of a univariate Vandermonde factor over the rows named by one
/// tableau column split into linear factors; this prints a term of the
/// two-variable expansion in that fully factored style, e.g.
/// "(x2-x1)(x4-x3)(y3-y1)(y4-y2)".
fn factored_term(alpha: &Tableau, beta: &Tableau) -> Result<String> {
    let mut out = String::new();
    for (t, var) in [(alpha, "x"), (beta, "y")] {
        let cols = t.shape().parts()[0];
        for c in 1..=cols {
            let col = t.col(c)?;
            for i in 0..col.len() {
                for j in i + 1..col.len() {
                    out.push_str(&format!("({var}{}-{var}{})", col[j], col[i]));
                }
            }
        }
    }
    Ok(out)
}

fn symbolic_points(count: usize) -> Vec<Vec<MultiPoly>> {
    let names: Vec<String> = (1..=count)
        .map(|i| format!("x{i}"))
        .chain((1..=count).map(|i| format!("y{i}")))
        .collect();
    let vars: Arc<VarSet> = VarSet::new(names);
    (1..=count)
        .map(|i| {
            vec![
                MultiPoly::var(&vars, &format!("x{i}")).expect("declared"),
                MultiPoly::var(&vars, &format!("y{i}")).expect("declared"),
            ]
        })
        .collect()
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Syt { m, n } => {
            let basis = enumerate_syt_capped(*m, *n, tableau_cap())?;
            for t in basis.tableaux() {
                println!("{}", t.to_text());
            }
            Ok(0)
        }
        Command::Fayers { m, n } => {
            guard_tableau_count(*m, *n)?;
            print_pairing(&fayers_matrix(*m, *n)?);
            Ok(0)
        }
        Command::Phi { m, n } => {
            guard_tableau_count(*m, *n)?;
            print_pairing(&phi_matrix(*m, *n)?);
            Ok(0)
        }
        Command::VerifyT3 {
            m,
            n,
            seed,
            trials,
            a_file,
            b_file,
            symbolic,
            corrupt_phi,
        } => {
            guard_tableau_count(*m, *n)?;
            if *symbolic {
                return verify_t3_symbolic(*m, *n);
            }
            let mut phi = phi_matrix(*m, *n)?;
            if *corrupt_phi {
                let v = phi.entry(0, 0);
                phi.corrupt_entry(0, 0, v + 1);
                eprintln!("note: corrupted Phi[1,1] from {v} to {}", v + 1);
            }
            if let (Some(af), Some(bf)) = (a_file, b_file) {
                let a = ExactMatrix::from_json(&read_json(af)?)?;
                let b = ExactMatrix::from_json(&read_json(bf)?)?;
                let pair = AmalgamPair::new(*m, *n, a, b)?;
                return verify_t3_once(&pair, &phi, "input matrices");
            }
            let seed0 = require_seed(*seed, cli.ci)?;
            for t in 0..(*trials).max(1) {
                let s = seed0.wrapping_add(t);
                let pair = random_pair(*m, *n, s);
                let code = verify_t3_once(&pair, &phi, &format!("seed {s}"))?;
                if code != 0 {
                    return Ok(code);
                }
            }
            Ok(0)
        }
        Command::VerifyT4 {
            m,
            n,
            alpha,
            beta,
            seed,
        } => {
            guard_tableau_count(*m, *n)?;
            let (ta, tb) = trivial_pair(*m, *n);
            let a = match alpha {
                Some(s) => standard_tableau(s, *m, *n, false)?,
                None => ta.clone(),
            };
            let b = match beta {
                Some(s) => standard_tableau(s, *m, *n, true)?,
                None => tb.clone(),
            };
            let s = require_seed(*seed, cli.ci)?;
            let pair = random_pair(*m, *n, s);
            let sum = perm_sum_theorem4(&pair, &a, &b)?;
            let det = star(&pair).det()?;
            if a == ta && b == tb {
                let h = Rat::from_integer(hook_product(*m, *n));
                let rhs = det.clone() * h.clone();
                if sum == rhs {
                    println!("verified: perm sum = H * det = {sum} (H = {h})");
                    return Ok(0);
                }
                println!("MISMATCH\nperm sum = {sum}\nH * det  = {rhs}");
                return Ok(1);
            }
            let k = kappa(*m, *n, &a, &b, s)?;
            let rhs = det.clone() * Rat::from_integer(k.clone());
            if sum == rhs {
                println!("verified: perm sum = kappa * det, kappa = {k}");
                Ok(0)
            } else {
                println!("MISMATCH\nperm sum    = {sum}\nkappa * det = {rhs}");
                Ok(1)
            }
        }
        Command::Kappa {
            m,
            n,
            alpha,
            beta,
            seed,
        } => {
            guard_tableau_count(*m, *n)?;
            let a = standard_tableau(alpha, *m, *n, false)?;
            let b = standard_tableau(beta, *m, *n, true)?;
            let s = require_seed(*seed, cli.ci)?;
            println!("{}", kappa(*m, *n, &a, &b, s)?);
            Ok(0)
        }
        Command::Vdm {
            degrees,
            split,
            points,
            expand,
            symbolic,
        } => {
            let spec = VdmSpec::new(degrees.clone(), *split, MonomialOrder::Kron)?;
            if *symbolic {
                return vdm_symbolic(&spec, expand.as_deref());
            }
            let Some(pf) = points else {
                return Err(Error::Argument("need --points or --symbolic".into()));
            };
            let pts = PointSet::from_json(&read_json(pf)?)?.points;
            let det = build_vdm(&spec, &pts)?.det()?;
            println!("det = {det}");
            match expand.as_deref() {
                None => Ok(0),
                Some("t1") => {
                    let e = vdm_theorem1(&spec, &pts)?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&expansion_to_json(&e)).expect("json")
                    );
                    if e.total == det {
                        println!("verified: expansion total = det = {det}");
                        Ok(0)
                    } else {
                        println!("MISMATCH\nexpansion total = {}\ndet             = {det}", e.total);
                        Ok(1)
                    }
                }
                Some("t2") => {
                    let v = vdm_theorem2(&spec, &pts)?;
                    if v == det {
                        println!("verified: normalized perm sum = det = {det}");
                        Ok(0)
                    } else {
                        println!("MISMATCH\nnormalized perm sum = {v}\ndet                 = {det}");
                        Ok(1)
                    }
                }
                Some(other) => Err(Error::Argument(format!("unknown expansion `{other}`"))),
            }
        }
        Command::VdmHom {
            n,
            r,
            points,
            kernel,
        } => {
            let pts = PointSet::from_json(&read_json(points)?)?.points;
            let mat = build_vdm_hom(*n, *r, &pts)?;
            let det = mat.det()?;
            println!("det = {det}");
            if *kernel {
                for v in hom_kernel(&mat) {
                    let coords: Vec<String> = v.iter().map(Rat::to_string).collect();
                    println!("kernel: ({})", coords.join(", "));
                }
            }
            Ok(0)
        }
        Command::Fekete {
            set,
            degrees,
            n_list,
            budget,
            seed,
        } => {
            let k = CompactSet::from_json(&read_json(set)?)?;
            let weights: Vec<Rat> = degrees.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            let t = transfinite_estimate(&k, &weights, n_list, *budget, *seed)?;
            print!("{}", t.csv());
            Ok(0)
        }
        Command::Multiplicativity {
            set1,
            set2,
            w1,
            w2,
            n,
            budget,
            seed,
        } => {
            let k1 = CompactSet::from_json(&read_json(set1)?)?;
            let k2 = CompactSet::from_json(&read_json(set2)?)?;
            let pw = |ws: &[String]| -> Result<Vec<Rat>> {
                ws.iter().map(|s| parse_rat(s)).collect()
            };
            let rep = multiplicativity_check(&k1, &k2, &pw(w1)?, &pw(w2)?, *n, *budget, *seed)?;
            println!("lhs estimate (product set)   = {:.6}", rep.lhs_estimate);
            println!("rhs estimate (factor blend)  = {:.6}", rep.rhs_estimate);
            println!("ratio lhs/rhs                = {:.6}", rep.lhs_estimate / rep.rhs_estimate);
            println!(
                "factor estimates             = {:.6}, {:.6}",
                rep.factor_estimates.0, rep.factor_estimates.1
            );
            println!(
                "weight fractions             = {:.6} + {:.6}",
                rep.weight_fractions.0, rep.weight_fractions.1
            );
            println!("paired config log|det|       = {:.6}", rep.paired_log_abs_det);
            if rep.kronecker_identity_exact {
                println!("paired-configuration determinant identity: exact");
                Ok(0)
            } else {
                println!("paired-configuration determinant identity: FAILED");
                Ok(1)
            }
        }
    }
}

fn verify_t3_once(pair: &AmalgamPair<Rat>, phi: &PairingMatrix, label: &str) -> Result<i32> {
    let e = det_via_theorem3_with_phi(pair, phi)?;
    let det = star(pair).det()?;
    if e.total == det {
        println!("{label}: verified (det = {det})");
        Ok(0)
    } else {
        println!("{label}: MISMATCH");
        println!("expansion total = {}", e.total);
        println!("det             = {det}");
        Ok(1)
    }
}

fn verify_t3_symbolic(m: usize, n: usize) -> Result<i32> {
    if m * n > SYMBOLIC_CAP {
        return Err(Error::Argument(format!(
            "symbolic verification is guarded to mn <= {SYMBOLIC_CAP}; ({m},{n}) has mn = {}",
            m * n
        )));
    }
    let pair = symbolic_pair(m, n);
    let e = crate::amalgam::det_via_theorem3(&pair)?;
    let det = star(&pair).det()?;
    let diff = e.total.sub(&det);
    if diff.num_terms() == 0 {
        println!(
            "symbolic: verified for ({m},{n}); {} expansion terms, det has {} monomials",
            e.terms.len(),
            det.num_terms()
        );
        Ok(0)
    } else {
        println!("symbolic: MISMATCH for ({m},{n})");
        println!("expansion total = {}", e.total);
        println!("det             = {det}");
        Ok(1)
    }
}

fn vdm_symbolic(spec: &VdmSpec, expand: Option<&str>) -> Result<i32> {
    if spec.degrees.len() != 2 || spec.split != Some(1) {
        return Err(Error::Argument(
            "the factored symbolic display needs a two-variable spec with --split 1".into(),
        ));
    }
    if let Some(e) = expand {
        if e != "t1" {
            return Err(Error::Argument(
                "symbolic mode prints the tableau-pair (t1) expansion".into(),
            ));
        }
    }
    let count = spec.num_cols();
    if count > SYMBOLIC_CAP {
        return Err(Error::Argument(format!(
            "symbolic verification is guarded to mn <= {SYMBOLIC_CAP}; got {count} points"
        )));
    }
    let pts = symbolic_points(count);
    let e = vdm_theorem1(spec, &pts)?;
    let det = build_vdm(spec, &pts)?.det()?;
    let mut line = String::new();
    for t in &e.terms {
        debug_assert!(t.coef.abs() == 1, "pairing coefficients are signs here");
        if line.is_empty() {
            if t.coef < 0 {
                line.push('-');
            }
        } else {
            line.push_str(if t.coef < 0 { " - " } else { " + " });
        }
        line.push_str(&factored_term(&t.alpha, &t.beta)?);
    }
    println!("det V = {line}");
    if e.total == det {
        println!("verified: expansion total = det ({} terms)", e.terms.len());
        Ok(0)
    } else {
        println!("MISMATCH\nexpansion total = {}\ndet             = {det}", e.total);
        Ok(1)
    }
}
