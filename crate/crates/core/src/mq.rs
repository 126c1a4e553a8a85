//! The quantized matrices `B(q)`, `D(q)`, `M(q) = D(q) B(q)⁻¹ D(q)` and the
//! per-pair data read off from `M(q)`.
//!
//! Every entry of `M(q)` has the shape `π(q) / ((q−q⁻¹)(1−q^p))` with `π` a
//! Laurent polynomial with integer coefficients, `p` the period. The
//! monomials `c·q^m` of `π` are the exponents of the scalar factor
//! `ϱ(z) = ∏ (1−q^m z)^{−c}`.
//!
//! ```
//! use ecc_core::cartan::cartan_data;
//! use ecc_core::mq::{pi_poly, rho_factorization};
//!
//! let sl2 = cartan_data("A1".parse().unwrap());
//! assert_eq!(pi_poly(&sl2, 1, 1).unwrap().to_string(), "−q⁴+2q²−1");
//! assert_eq!(rho_factorization(&sl2, 1, 1).unwrap().to_string(), "(1−z)(1−q⁴z)/(1−q²z)²");
//! ```
//!
//! `π` need not be invariant under `q ↦ q⁻¹` (the `sl₂` case above is
//! symmetric about `q²`), so no such property is asserted anywhere.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cache::Cache;
use crate::cartan::{cartan_data, CartanData, LieType, Node};
use crate::error::{Error, Result};
use crate::qpoly::{quantum_integer, superscript, LaurentPoly, RationalFn};

/// A square matrix over `RationalFn`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<RationalFn>,
}

impl QMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> RationalFn) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        QMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: bad.len() });
        }
        Ok(QMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { RationalFn::one() } else { RationalFn::zero() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &RationalFn {
        &self.entries[i * self.n + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.n, rhs.n, "matrix sizes differ");
        QMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(RationalFn::zero(), |acc, k| acc + self.get(i, k) * rhs.get(k, j))
        })
    }

    /// Clears denominators row by row: returns polynomial rows and the row scalings used.
    fn polynomial_rows(&self) -> (Vec<Vec<LaurentPoly>>, Vec<LaurentPoly>) {
        let mut rows = Vec::with_capacity(self.n);
        let mut scales = Vec::with_capacity(self.n);
        for i in 0..self.n {
            let mut s = LaurentPoly::one();
            for j in 0..self.n {
                let d = self.get(i, j).den();
                if !d.is_one() {
                    s = &s * d;
                }
            }
            let row = (0..self.n)
                .map(|j| self.get(i, j).mul_to_poly(&s).expect("row scaling clears denominators"))
                .collect();
            rows.push(row);
            scales.push(s);
        }
        (rows, scales)
    }

    pub fn det(&self) -> Result<RationalFn> {
        let (rows, scales) = self.polynomial_rows();
        let elim = eliminate(rows, self.n)?;
        let mut d = RationalFn::from_poly(elim.last_pivot);
        if elim.swaps % 2 == 1 {
            d = -d;
        }
        for s in scales {
            d = d.checked_div(&RationalFn::from_poly(s))?;
        }
        Ok(d)
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

struct Elimination {
    /// The augmented matrix `[det·I | adj]` up to the sign of `det`.
    rows: Vec<Vec<LaurentPoly>>,
    last_pivot: LaurentPoly,
    swaps: usize,
}

/// Fraction-free Gauss–Jordan on `[A | I]`. After step `k` every entry is a
/// `(k+1)`-minor, so the division by the previous pivot is exact.
fn eliminate(a: Vec<Vec<LaurentPoly>>, n: usize) -> Result<Elimination> {
    let width = 2 * n;
    let mut rows: Vec<Vec<LaurentPoly>> = a
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }));
            r
        })
        .collect();
    let mut prev = LaurentPoly::one();
    let mut chain: Vec<String> = Vec::new();
    let mut swaps = 0;
    for k in 0..n {
        let Some(r) = (k..n).find(|&r| !rows[r][k].is_zero()) else {
            return Err(Error::SingularMatrix {
                column: k + 1,
                chain: if chain.is_empty() { "none".into() } else { chain.join(" → ") },
            });
        };
        if r != k {
            rows.swap(r, k);
            swaps += 1;
        }
        let pivot_row = rows[k].clone();
        let pivot = pivot_row[k].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..width {
                let v = &(&pivot * &row[j]) - &(&factor * &pivot_row[j]);
                row[j] = v.exact_div(&prev)?;
            }
        }
        chain.push(pivot.to_string());
        prev = pivot;
    }
    Ok(Elimination {
        rows,
        last_pivot: prev,
        swaps,
    })
}

/// Exact inverse by fraction-free elimination.
pub fn invert(m: &QMatrix) -> Result<QMatrix> {
    let n = m.n;
    if n == 0 {
        return Ok(m.clone());
    }
    let (rows, scales) = m.polynomial_rows();
    let elim = eliminate(rows, n)?;
    let det = &elim.last_pivot;
    // (S A)⁻¹ = adj / det, and A⁻¹ = (S A)⁻¹ S with S = diag(scales).
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let entry = RationalFn::new(&elim.rows[i][n + j] * &scales[j], det.clone())?;
            row.push(entry);
        }
        out.push(row);
    }
    QMatrix::from_rows(out)
}

/// `B(q)` with entries `[d_i c_ij]_q`.
pub fn build_bq(cd: &CartanData) -> QMatrix {
    let b = cd.symmetrized();
    QMatrix::from_fn(cd.rank(), |i, j| quantum_integer(b[i][j]).into())
}

/// `D(q) = diag([d_i]_q)`.
pub fn build_dq(cd: &CartanData) -> QMatrix {
    QMatrix::from_fn(cd.rank(), |i, j| {
        if i == j {
            quantum_integer(cd.symmetrizers[i]).into()
        } else {
            RationalFn::zero()
        }
    })
}

/// `M(q) = D(q) B(q)⁻¹ D(q)`, computed from scratch.
pub fn compute_mq(cd: &CartanData) -> Result<QMatrix> {
    let d = build_dq(cd);
    let bt = invert(&build_bq(cd))?;
    Ok(d.mul(&bt).mul(&d))
}

/// `(q − q⁻¹)(1 − q^p)`.
pub fn pi_denominator(period: i64) -> LaurentPoly {
    let q = LaurentPoly::q();
    let a = &q - &q.pow(-1);
    let b = &LaurentPoly::one() - &q.pow(period);
    a * b
}

/// All `π_ij` of one type, with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiTable {
    pub lie_type: LieType,
    pub period: i64,
    /// `pi[i][j]` for 0-based nodes.
    pub pi: Vec<Vec<LaurentPoly>>,
    coeffs: Vec<Vec<BTreeMap<i64, i64>>>,
}

impl PiTable {
    pub fn from_polys(lie_type: LieType, period: i64, pi: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let coeffs = pi
            .iter()
            .map(|row| row.iter().map(|p| p.integer_coeffs()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(PiTable {
            lie_type,
            period,
            pi,
            coeffs,
        })
    }

    pub fn compute(cd: &CartanData) -> Result<Self> {
        let m = compute_mq(cd)?;
        let den = pi_denominator(cd.period);
        let n = cd.rank();
        let mut pi = vec![Vec::with_capacity(n); n];
        for (i, row) in pi.iter_mut().enumerate() {
            for j in 0..n {
                let p = m.get(i, j).mul_to_poly(&den).map_err(|e| {
                    Error::InexactDivision(format!("{} m_{}{}: {e}", cd.lie_type, i + 1, j + 1))
                })?;
                row.push(p);
            }
        }
        Self::from_polys(cd.lie_type, cd.period, pi)
    }

    pub fn rank(&self) -> usize {
        self.pi.len()
    }

    /// `π_ij` for 1-based nodes.
    pub fn poly(&self, i: Node, j: Node) -> &LaurentPoly {
        &self.pi[i - 1][j - 1]
    }

    /// Integer coefficients `c_m` of `π_ij` for 1-based nodes.
    pub fn coeffs(&self, i: Node, j: Node) -> &BTreeMap<i64, i64> {
        &self.coeffs[i - 1][j - 1]
    }

    /// `m_ij = π_ij / ((q−q⁻¹)(1−q^p))`.
    pub fn m_entry(&self, i: Node, j: Node) -> Result<RationalFn> {
        RationalFn::new(self.poly(i, j).clone(), pi_denominator(self.period))
    }
}

fn memo() -> &'static Mutex<HashMap<LieType, Arc<PiTable>>> {
    static MEMO: OnceLock<Mutex<HashMap<LieType, Arc<PiTable>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The `π` table of a type, memoized for the life of the process.
pub fn pi_table(cd: &CartanData) -> Result<Arc<PiTable>> {
    pi_table_cached(cd, None)
}

/// As [`pi_table`], consulting and filling the on-disk cache when given.
pub fn pi_table_cached(cd: &CartanData, cache: Option<&Cache>) -> Result<Arc<PiTable>> {
    if let Some(t) = memo().lock().unwrap().get(&cd.lie_type) {
        return Ok(Arc::clone(t));
    }
    let table = match cache {
        Some(c) => c.load_or_compute(cd)?,
        None => PiTable::compute(cd)?,
    };
    let table = Arc::new(table);
    memo().lock().unwrap().insert(cd.lie_type, Arc::clone(&table));
    Ok(table)
}

fn check_pair(cd: &CartanData, i: Node, j: Node) -> Result<()> {
    cd.check_node(i)?;
    cd.check_node(j)
}

/// `π_ij = m_ij (q−q⁻¹)(1−q^p)`.
pub fn pi_poly(cd: &CartanData, i: Node, j: Node) -> Result<LaurentPoly> {
    check_pair(cd, i, j)?;
    Ok(pi_table(cd)?.poly(i, j).clone())
}

/// `ϱ(z) = ∏_m (1 − q^m z)^{e_m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoFactorization {
    pub factors: BTreeMap<i64, i64>,
}

impl RhoFactorization {
    pub fn from_pi_coeffs(coeffs: &BTreeMap<i64, i64>) -> Self {
        RhoFactorization {
            factors: coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    /// Exponents `k` with a pole of `ϱ` at `z = q^k`.
    pub fn poles(&self) -> BTreeSet<i64> {
        self.factors.iter().filter(|(_, e)| **e < 0).map(|(m, _)| -m).collect()
    }
}

fn factor_label(m: i64) -> String {
    match m {
        0 => "(1−z)".into(),
        1 => "(1−qz)".into(),
        _ => format!("(1−q{}z)", superscript(m)),
    }
}

fn power_label(e: i64) -> String {
    if e == 1 {
        String::new()
    } else {
        superscript(e)
    }
}

impl fmt::Display for RhoFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |sign: i64| -> String {
            self.factors
                .iter()
                .filter(|(_, e)| e.signum() == sign)
                .map(|(m, e)| format!("{}{}", factor_label(*m), power_label(e.abs())))
                .collect()
        };
        let num = side(1);
        let den = side(-1);
        let num = if num.is_empty() { "1".to_string() } else { num };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

pub fn rho_factorization(cd: &CartanData, i: Node, j: Node) -> Result<RhoFactorization> {
    check_pair(cd, i, j)?;
    Ok(RhoFactorization::from_pi_coeffs(pi_table(cd)?.coeffs(i, j)))
}

/// `P_ij` and `S_ij = P_ij ∪ −P_ij`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleSets {
    pub p: BTreeSet<i64>,
    pub s: BTreeSet<i64>,
}

/// Poles of `ϱ_ij` at `z = q^k` with `2 ≤ k ≤ r∨h∨`.
///
/// A pole at `q^k` comes from a factor `(1−q^{−k}z)^{e}` with `e < 0`; with
/// the factor convention `(1−q^m z)` used here the relevant factors are the
/// monomials of `π` with positive coefficient and exponent `k` in range.
pub fn pole_sets(cd: &CartanData, i: Node, j: Node) -> Result<PoleSets> {
    check_pair(cd, i, j)?;
    let table = pi_table(cd)?;
    let hi = cd.dual_shift();
    let p: BTreeSet<i64> = table
        .coeffs(i, j)
        .iter()
        .filter(|(m, c)| **c > 0 && (2..=hi).contains(*m))
        .map(|(m, _)| *m)
        .collect();
    let s = p.iter().flat_map(|k| [*k, -k]).collect();
    Ok(PoleSets { p, s })
}

/// Convenience for callers holding only a type.
pub fn pi_table_for(t: LieType) -> Result<Arc<PiTable>> {
    pi_table(&cartan_data(t))
}
