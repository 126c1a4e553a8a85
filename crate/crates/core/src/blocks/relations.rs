//! T matrices: rows are divisor vectors of shifted `ξ`, and integer row
//! relations among them are the multiplicative relations among the shifted
//! characters. The relation lattice is compared against the lemma moves.

use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanData, Family, LieType};
use crate::divisor::divisor_vectors;
use crate::error::Result;
use crate::linalg::{det, hnf, left_kernel_basis, rank, vec_mat, IntMatrix};

/// A T matrix together with how it was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMatrix {
    pub lie_type: LieType,
    pub rows: IntMatrix,
    /// Row labels: `v3` for the fourth shift, `+3`/`-3` for the two half-spin blocks of D even.
    pub row_labels: Vec<String>,
    pub recipe: String,
}

fn labels(prefix: &str, count: usize) -> Vec<String> {
    (0..count).map(|s| format!("{prefix}{s}")).collect()
}

/// The matrix preset used for each type.
pub fn build_t(cd: &CartanData) -> Result<TMatrix> {
    let n = cd.rank();
    let h = cd.h_dual as usize;
    let simple = |node: usize, size: usize| -> Result<TMatrix> {
        Ok(TMatrix {
            lie_type: cd.lie_type,
            rows: divisor_vectors(cd, node, node, size, size)?,
            row_labels: labels("v", size),
            recipe: format!("ξ_{node}{node}, window {size}, count {size}"),
        })
    };
    match cd.lie_type.family() {
        Family::A => simple(1, h - 1),
        Family::B => simple(n, h),
        Family::C => simple(1, h),
        Family::D if n % 2 == 1 => {
            // ξ_nn on all even residues of p = 2h∨.
            simple(n, h)
        }
        Family::D => {
            let half = h / 2;
            let v = divisor_vectors(cd, n - 1, n - 1, half, half)?;
            let w = divisor_vectors(cd, n - 1, n, half, half)?;
            let mut rows = Vec::with_capacity(2 * half);
            for s in 0..half {
                rows.push([v[s].clone(), w[s].clone()].concat());
            }
            for s in 0..half {
                rows.push([w[s].clone(), v[s].clone()].concat());
            }
            let mut row_labels = labels("+", half);
            row_labels.extend(labels("-", half));
            Ok(TMatrix {
                lie_type: cd.lie_type,
                rows,
                row_labels,
                recipe: format!(
                    "V_{p} shifts (v_s | w_s), V_{n} shifts (w_s | v_s); v from ξ_{p}{p}, w from ξ_{p}{n}, window {half}",
                    p = n - 1
                ),
            })
        }
        Family::E => match n {
            6 => simple(1, 12),
            7 => simple(1, 9),
            _ => simple(1, 15),
        },
        Family::F => simple(1, 9),
        Family::G => simple(1, 6),
    }
}

/// What the lemma moves predict for a type's T matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub det: Option<i64>,
    pub rank: usize,
    /// Row-coefficient vectors spanning the relation lattice.
    pub relations: IntMatrix,
    pub family: String,
}

fn combo(len: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; len];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

pub fn expected(cd: &CartanData) -> Expected {
    let n = cd.rank();
    let h = cd.h_dual as usize;
    let none = |det: i64, rank: usize, family: &str| Expected {
        det: Some(det),
        rank,
        relations: Vec::new(),
        family: family.into(),
    };
    match cd.lie_type.family() {
        Family::A => none(n as i64 + 1, h - 1, "no relations; det T = n+1"),
        Family::B => none(2 * n as i64, h, "no relations; det T = h∨+1 = 2n"),
        Family::C => none(4, h, "no relations; det T = 4"),
        Family::D if n % 2 == 1 => {
            let half = h / 2;
            let relations = (1..half)
                .map(|k| {
                    let s = if k % 2 == 1 { 1 } else { -1 };
                    combo(h, &[(0, 1), (half, 1), (k, s), (half + k, s)])
                })
                .collect();
            Expected {
                det: None,
                rank: n,
                relations,
                family: "u_0 + u_{h∨/2} + (−1)^{k+1}(u_k + u_{h∨/2+k}) = 0, k = 1..h∨/2−1".into(),
            }
        }
        Family::D => {
            let half = h / 2;
            let relations = (1..half)
                .map(|l| {
                    let s = if l % 2 == 1 { 1 } else { -1 };
                    combo(2 * half, &[(0, 1), (l, s), (half, -1), (half + l, -s)])
                })
                .collect();
            Expected {
                det: None,
                rank: n,
                relations,
                family: "a_s = a'_s with Σ_s (−1)^s a_s = 0".into(),
            }
        }
        Family::E if n == 6 => {
            let mut relations: IntMatrix = (0..4).map(|k| combo(12, &[(k, 1), (k + 4, 1), (k + 8, 1)])).collect();
            relations.extend(
                (0..2).map(|k| combo(12, &[(k + 3, 1), (k, -1), (k + 1, -1), (k + 5, -1), (k + 6, -1)])),
            );
            Expected {
                det: None,
                rank: 6,
                relations,
                family: "v_k+v_{k+4}+v_{k+8} = 0 (k=0..3); v_{k+3} = v_k+v_{k+1}+v_{k+5}+v_{k+6} (k=0,1)".into(),
            }
        }
        Family::E if n == 7 => Expected {
            det: None,
            rank: 7,
            relations: (0..2)
                .map(|k| combo(9, &[(k, 1), (k + 1, 1), (k + 6, 1), (k + 7, 1), (k + 3, -1), (k + 4, -1)]))
                .collect(),
            family: "v_k+v_{k+1}+v_{k+6}+v_{k+7}−v_{k+3}−v_{k+4} = 0 (k=0,1)".into(),
        },
        Family::E => {
            let mut relations: IntMatrix = (0..5).map(|j| combo(15, &[(j, 1), (j + 10, 1), (j + 5, -1)])).collect();
            relations.extend(
                (0..2).map(|k| combo(15, &[(k, 1), (k + 6, 1), (k + 12, 1), (k + 3, -1), (k + 9, -1)])),
            );
            Expected {
                det: None,
                rank: 8,
                relations,
                family: "v_j+v_{j+10}−v_{j+5} = 0 (j=0..4); v_k+v_{k+6}+v_{k+12}−v_{k+3}−v_{k+9} = 0 (k=0,1)".into(),
            }
        }
        Family::F => Expected {
            det: None,
            rank: 6,
            relations: (0..3).map(|k| combo(9, &[(k, 1), (k + 6, 1), (k + 3, -1)])).collect(),
            family: "v_k+v_{k+6}−v_{k+3} = 0 (k=0..2)".into(),
        },
        Family::G => Expected {
            det: None,
            rank: 4,
            relations: (0..2).map(|k| combo(6, &[(k + 2, 1), (k, -1), (k + 4, -1)])).collect(),
            family: "v_{k+2} = v_k+v_{k+4} (k=0,1)".into(),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Match,
    Mismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub t: TMatrix,
    pub det: Option<i64>,
    pub rank: usize,
    /// HNF basis of the integer row relations of `T`.
    pub kernel_basis: IntMatrix,
    pub expected: Expected,
    /// For D even: determinants of the `v` and `w` blocks.
    pub block_dets: Option<(i64, i64)>,
    pub verdict: Verdict,
}

pub fn verify_relations(cd: &CartanData) -> Result<RelationReport> {
    let t = build_t(cd)?;
    let square = t.rows.len() == t.rows.first().map_or(0, |r| r.len());
    let d = if square { Some(det(&t.rows)?) } else { None };
    let r = rank(&t.rows);
    let kernel = left_kernel_basis(&t.rows)?;
    for k in &kernel {
        debug_assert!(vec_mat(k, &t.rows).iter().all(|x| *x == 0));
    }
    let exp = expected(cd);
    let block_dets = if cd.lie_type.family() == Family::D && cd.rank().is_multiple_of(2) {
        let half = t.rows.len() / 2;
        let v: IntMatrix = t.rows[..half].iter().map(|row| row[..half].to_vec()).collect();
        let w: IntMatrix = t.rows[..half].iter().map(|row| row[half..].to_vec()).collect();
        Some((det(&v)?, det(&w)?))
    } else {
        None
    };
    let mut problems = Vec::new();
    if let (Some(want), Some(got)) = (exp.det, d) {
        if want != got.abs() {
            problems.push(format!("det {got}, expected ±{want}"));
        }
    }
    if r != exp.rank {
        problems.push(format!("rank {r}, expected {}", exp.rank));
    }
    let annihilated = exp.relations.iter().all(|v| vec_mat(v, &t.rows).iter().all(|x| *x == 0));
    if !annihilated {
        problems.push("a listed relation does not annihilate T".into());
    }
    if hnf(&kernel)? != hnf(&exp.relations)? {
        problems.push(format!(
            "relation lattice differs: kernel rank {}, listed rank {}",
            kernel.len(),
            rank(&exp.relations)
        ));
    }
    let verdict = if problems.is_empty() {
        Verdict::Match
    } else {
        Verdict::Mismatch(problems.join("; "))
    };
    Ok(RelationReport {
        t,
        det: d,
        rank: r,
        kernel_basis: kernel,
        expected: exp,
        block_dets,
        verdict,
    })
}

/// Renders a coefficient vector as `v0+v4−v8`.
pub fn render_relation(coeffs: &[i64], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in coeffs.iter().zip(labels) {
        if *c == 0 {
            continue;
        }
        let sign = if *c < 0 { "−" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        if mag == 1 {
            out.push_str(&format!("{sign}{l}"));
        } else {
            out.push_str(&format!("{sign}{mag}{l}"));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type {}: T from {}", self.t.lie_type, self.t.recipe)?;
        let width = self
            .t
            .rows
            .iter()
            .flatten()
            .map(|x| x.to_string().len())
            .max()
            .unwrap_or(1);
        let lw = self.t.row_labels.iter().map(|l| l.len()).max().unwrap_or(1);
        for (row, label) in self.t.rows.iter().zip(&self.t.row_labels) {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "  {label:<lw$}  [{}]", cells.join(" "))?;
        }
        match self.det {
            Some(d) => writeln!(f, "det {d}; rank {}", self.rank)?,
            None => writeln!(f, "rank {}", self.rank)?,
        }
        if let Some((v, w)) = self.block_dets {
            writeln!(f, "block determinants: v {v}, w {w}")?;
        }
        if self.kernel_basis.is_empty() {
            writeln!(f, "relations: none")?;
        } else {
            writeln!(f, "relations (HNF basis):")?;
            for k in &self.kernel_basis {
                writeln!(f, "  {} = 0", render_relation(k, &self.t.row_labels))?;
            }
        }
        writeln!(f, "expected: {}", self.expected.family)?;
        match &self.verdict {
            Verdict::Match => writeln!(f, "verdict: match"),
            Verdict::Mismatch(d) => writeln!(f, "verdict: MISMATCH ({d})"),
        }
    }
}
