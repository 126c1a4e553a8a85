//! Searches over shifts: which fundamental characters a product `V_i ⊗ V_j(q^k)`
//! can share, and exhaustive product-versus-target comparisons.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::cartan::{CartanData, Node};
use crate::divisor::{xi_divisor, Divisor};
use crate::error::{Error, Result};
use crate::mq::pole_sets;

/// What a combined character coincides with.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Target {
    /// The zero divisor at every probe: the character of `ℂ`.
    Trivial,
    Fundamental { node: Node, shift: i64 },
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Trivial => "ℂ".into(),
            Target::Fundamental { node, .. } => format!("V{node}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundMatch {
    /// The exponent `k` of `w = q^k`.
    pub k: i64,
    pub targets: Vec<Target>,
}

/// All divisors `ξ_mk` for every probe `m` and node `k`.
fn all_xi(cd: &CartanData) -> Result<Vec<Vec<Divisor>>> {
    cd.nodes()
        .map(|m| cd.nodes().map(|k| xi_divisor(cd, m, k)).collect())
        .collect()
}

/// For each `k ∈ P_ij`, the fundamental characters (or `ℂ`) equal to that of `V_i ⊗ V_j(q^k)`
/// at every probe node.
pub fn fund_match(cd: &CartanData, i: Node, j: Node) -> Result<Vec<FundMatch>> {
    cd.check_node(i)?;
    cd.check_node(j)?;
    let xi = all_xi(cd)?;
    let n = cd.rank();
    let mut out = Vec::new();
    for k in pole_sets(cd, i, j)?.p {
        let combined: Vec<Divisor> = (0..n)
            .map(|m| xi[m][i - 1].add(&xi[m][j - 1].shift(k)))
            .collect::<Result<_>>()?;
        let mut targets = Vec::new();
        if combined.iter().all(Divisor::is_zero) {
            targets.push(Target::Trivial);
        } else {
            for r in 0..n {
                for u in 0..cd.period {
                    if (0..n).all(|m| xi[m][r].shift(u) == combined[m]) {
                        targets.push(Target::Fundamental { node: r + 1, shift: u });
                    }
                }
            }
        }
        out.push(FundMatch { k, targets });
    }
    Ok(out)
}

/// A solution of `Σ_a shift(ξ_{b,i_a}, s_a) = shift(ξ_{b,target}, u)` on one orbit,
/// normalized so the first main-orbit factor has shift 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ProductMatch {
    pub shifts: Vec<i64>,
    pub target_shift: i64,
    /// Factor indices moved to a side orbit where they cancel.
    pub side_orbit: Vec<usize>,
}

impl fmt::Display for ProductMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.shifts.iter().map(|x| x.to_string()).collect();
        write!(f, "shifts ({}) → target shift {}", s.join(", "), self.target_shift)?;
        if !self.side_orbit.is_empty() {
            let idx: Vec<String> = self.side_orbit.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, " with factors {} on a side orbit", idx.join(", "))?;
        }
        Ok(())
    }
}

/// Searches the full shift grid of up to three factors for a product whose
/// character equals a shift of `ξ_{target}`. Candidates found with the first
/// black node are confirmed at every probe node. With `multi_orbit`, two
/// factors may also be split off to a separate orbit where they must cancel.
pub fn product_match_search(
    cd: &CartanData,
    factor_nodes: &[Node],
    target: Node,
    multi_orbit: bool,
) -> Result<Vec<ProductMatch>> {
    if factor_nodes.is_empty() || factor_nodes.len() > 3 {
        return Err(Error::FactorCount(factor_nodes.len()));
    }
    for &k in factor_nodes.iter().chain([&target]) {
        cd.check_node(k)?;
    }
    let xi = all_xi(cd)?;
    let mut out = single_orbit(cd, &xi, factor_nodes, target)?;
    if multi_orbit && factor_nodes.len() >= 2 {
        let f = factor_nodes.len();
        for a in 0..f {
            for b in a + 1..f {
                let cancel = cancelling_shifts(cd, &xi, factor_nodes[a], factor_nodes[b])?;
                if cancel.is_empty() {
                    continue;
                }
                let rest: Vec<usize> = (0..f).filter(|x| *x != a && *x != b).collect();
                let main: Vec<Node> = rest.iter().map(|x| factor_nodes[*x]).collect();
                let main_matches = if main.is_empty() {
                    Vec::new()
                } else {
                    single_orbit(cd, &xi, &main, target)?
                };
                for m in &main_matches {
                    for &d in &cancel {
                        let mut shifts = vec![0; f];
                        for (slot, s) in rest.iter().zip(&m.shifts) {
                            shifts[*slot] = *s;
                        }
                        shifts[b] = d;
                        out.push(ProductMatch {
                            shifts,
                            target_shift: m.target_shift,
                            side_orbit: vec![a, b],
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Shifts `d` with `ξ_{m,x} + shift(ξ_{m,y}, d) = 0` at every probe.
fn cancelling_shifts(cd: &CartanData, xi: &[Vec<Divisor>], x: Node, y: Node) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for d in 0..cd.period {
        let mut ok = true;
        for m in 0..cd.rank() {
            if !xi[m][x - 1].add(&xi[m][y - 1].shift(d))?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(d);
        }
    }
    Ok(out)
}

fn single_orbit(cd: &CartanData, xi: &[Vec<Divisor>], nodes: &[Node], target: Node) -> Result<Vec<ProductMatch>> {
    let p = cd.period;
    let probe = cd.black_nodes[0] - 1;
    let mut shifts_of_target: HashMap<&[i64], Vec<i64>> = HashMap::new();
    let target_shifts: Vec<Divisor> = (0..p).map(|u| xi[probe][target - 1].shift(u)).collect();
    for (u, d) in target_shifts.iter().enumerate() {
        shifts_of_target.entry(d.dense()).or_default().push(u as i64);
    }
    let mut out = Vec::new();
    let rest = nodes.len() - 1;
    let combos = (p as usize).pow(rest as u32);
    let base = &xi[probe][nodes[0] - 1];
    for c in 0..combos {
        let mut shifts = vec![0i64; nodes.len()];
        let mut code = c;
        for slot in shifts.iter_mut().skip(1) {
            *slot = (code % p as usize) as i64;
            code /= p as usize;
        }
        let mut sum = base.clone();
        for (a, s) in shifts.iter().enumerate().skip(1) {
            sum.add_shifted(&xi[probe][nodes[a] - 1], *s);
        }
        let Some(us) = shifts_of_target.get(sum.dense()) else {
            continue;
        };
        for &u in us {
            if confirm_all_probes(cd, xi, nodes, &shifts, target, u)? {
                out.push(ProductMatch {
                    shifts: shifts.clone(),
                    target_shift: u,
                    side_orbit: Vec::new(),
                });
            }
        }
    }
    Ok(out)
}

fn confirm_all_probes(
    cd: &CartanData,
    xi: &[Vec<Divisor>],
    nodes: &[Node],
    shifts: &[i64],
    target: Node,
    u: i64,
) -> Result<bool> {
    for m in 0..cd.rank() {
        let mut sum = Divisor::zero(cd.period_len());
        for (k, s) in nodes.iter().zip(shifts) {
            sum.add_shifted(&xi[m][k - 1], *s);
        }
        if sum != xi[m][target - 1].shift(u) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The node pairs tabulated for `E8`.
pub const TABLE2_PAIRS: [(Node, Node); 13] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 6),
    (1, 7),
    (1, 8),
    (2, 2),
    (2, 7),
    (2, 8),
    (3, 7),
    (7, 7),
    (7, 8),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub pair: (Node, Node),
    pub poles: Vec<i64>,
    /// One label per pole, `?` when nothing matches.
    pub labels: Vec<String>,
}

impl Table2Row {
    /// `(1,1)  {q^2,q^12,q^20,q^30}  V2,V7,V1,ℂ`
    pub fn render(&self) -> String {
        let poles: Vec<String> = self.poles.iter().map(|k| format!("q^{k}")).collect();
        format!(
            "({},{})  {{{}}}  {}",
            self.pair.0,
            self.pair.1,
            poles.join(","),
            self.labels.join(",")
        )
    }
}

pub fn table2_rows(cd: &CartanData, pairs: &[(Node, Node)]) -> Result<Vec<Table2Row>> {
    pairs
        .iter()
        .map(|&(i, j)| {
            let matches = fund_match(cd, i, j)?;
            Ok(Table2Row {
                pair: (i, j),
                poles: matches.iter().map(|m| m.k).collect(),
                labels: matches
                    .iter()
                    .map(|m| {
                        if m.targets.is_empty() {
                            "?".to_string()
                        } else {
                            m.targets.iter().map(Target::label).collect::<Vec<_>>().join("/")
                        }
                    })
                    .collect(),
            })
        })
        .collect()
}

/// The tabulated pairs for `E8`; for other types every pair `i ≤ j`.
pub fn table2(cd: &CartanData) -> Result<Vec<Table2Row>> {
    if cd.lie_type.to_string() == "E8" {
        table2_rows(cd, &TABLE2_PAIRS)
    } else {
        let pairs: Vec<(Node, Node)> = cd.nodes().flat_map(|i| (i..=cd.rank()).map(move |j| (i, j))).collect();
        table2_rows(cd, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::cartan_data;

    fn cd(s: &str) -> CartanData {
        cartan_data(s.parse().unwrap())
    }

    fn fm(k: i64, node: Node, shift: i64) -> FundMatch {
        FundMatch {
            k,
            targets: vec![Target::Fundamental { node, shift }],
        }
    }

    #[test]
    fn e8_row_11() {
        let got = fund_match(&cd("E8"), 1, 1).unwrap();
        let want = vec![
            fm(2, 2, 1),
            fm(12, 7, 6),
            fm(20, 1, 10),
            FundMatch {
                k: 30,
                targets: vec![Target::Trivial],
            },
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn e8_row_78() {
        let got: Vec<String> = fund_match(&cd("E8"), 7, 8)
            .unwrap()
            .iter()
            .map(|m| format!("{}:{}", m.k, m.targets[0].label()))
            .collect();
        assert_eq!(got, ["5:V4", "23:V7", "27:V1"]);
    }

    #[test]
    fn sl2_row() {
        let got = fund_match(&cd("A1"), 1, 1).unwrap();
        assert_eq!(
            got,
            vec![FundMatch {
                k: 2,
                targets: vec![Target::Trivial]
            }]
        );
    }

    #[test]
    fn table_rows() {
        let rows = table2_rows(&cd("E8"), &[(1, 3), (2, 7)]).unwrap();
        assert_eq!(rows[0].render(), "(1,3)  {q^4,q^14,q^22,q^28}  V4,V6,V8,V2");
        assert_eq!(rows[1].render(), "(2,7)  {q^9,q^19,q^25}  V6,V2,V1");
    }

    #[test]
    fn single_factor_matches_itself() {
        let g2 = cd("G2");
        let m = product_match_search(&g2, &[2], 2, false).unwrap();
        assert_eq!(
            m,
            vec![ProductMatch {
                shifts: vec![0],
                target_shift: 0,
                side_orbit: vec![]
            }]
        );
    }

    #[test]
    fn a2_pair_finds_v2() {
        let m = product_match_search(&cd("A2"), &[1, 1], 2, false).unwrap();
        let found: Vec<(i64, i64)> = m.iter().map(|x| (x.shifts[1], x.target_shift)).collect();
        assert_eq!(found, vec![(2, 1), (4, 5)]);
    }

    #[test]
    fn multi_orbit_split() {
        // V1 ⊗ V1 ⊗ V2 in A2: the V1 pair can't cancel (1* = 2), but V1, V2 can.
        let m = product_match_search(&cd("A2"), &[1, 1, 2], 1, true).unwrap();
        assert!(m.iter().any(|x| x.side_orbit == vec![1, 2] || x.side_orbit == vec![0, 2]));
        for x in &m {
            if !x.side_orbit.is_empty() {
                assert_eq!(x.target_shift, 0);
            }
        }
    }

    #[test]
    fn factor_bounds() {
        assert!(matches!(product_match_search(&cd("A2"), &[], 1, false), Err(Error::FactorCount(0))));
        assert!(matches!(
            product_match_search(&cd("A2"), &[1, 1, 1, 1], 1, false),
            Err(Error::FactorCount(4))
        ));
    }
}
