//! Root-system data for the simple Lie types A_n through G_2.
//!
//! Node labels follow the diagrams used throughout this crate (see the
//! book chapter on conventions). For the exceptional types the labeling is
//! fixed as constants; relative to Bourbaki numbering it is
//!
//! | type | node here -> Bourbaki node |
//! |------|-----------------------------|
//! | E6   | 1->1, 2->3, 3->4, 4->5, 5->6, 6->2 |
//! | E7   | 1->7, 2->6, 3->5, 4->4, 5->3, 6->1, 7->2 |
//! | E8   | 1->8, 2->7, 3->6, 4->5, 5->4, 6->3, 7->1, 8->2 |
//! | F4   | 1->4, 2->3, 3->2, 4->1 |
//! | G2   | identity |
//!
//! E6 is the chain 1-2-3-4-5 with 6 attached to 3, E7 the chain 1-...-6
//! with 7 attached to 4, and E8 the chain 1-...-7 with 8 attached to 5.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fundamental node, labelled from 1.
pub type Node = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type with an admissible rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieType {
    family: Family,
    rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<LieType> {
        let constraint = match family {
            Family::A if rank < 1 => Some("A_n requires n >= 1"),
            Family::B if rank < 2 => Some("B_n requires n >= 2"),
            Family::C if rank < 2 => Some("C_n requires n >= 2"),
            Family::D if rank < 4 => Some("D_n requires n >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_n requires n in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F_n requires n = 4"),
            Family::G if rank != 2 => Some("G_n requires n = 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::InadmissibleRank {
                family: family.letter(),
                rank,
                constraint,
            }),
            None => Ok(LieType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every admissible type of rank at most `max_rank`, in a fixed order.
    pub fn all_up_to(max_rank: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for (family, lo) in [(Family::A, 1), (Family::B, 2), (Family::C, 2), (Family::D, 4)] {
            for n in lo..=max_rank {
                out.push(LieType { family, rank: n });
            }
        }
        for (family, n) in [(Family::E, 6), (Family::E, 7), (Family::E, 8), (Family::F, 4), (Family::G, 2)] {
            if n <= max_rank {
                out.push(LieType { family, rank: n });
            }
        }
        out
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownType(s.to_string()))?;
        let digits = chars.as_str().trim_start_matches('_');
        let rank: usize = digits
            .parse()
            .map_err(|_| Error::UnknownType(s.to_string()))?;
        LieType::new(family, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

const E6_EDGES: [(Node, Node); 5] = [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)];
const E7_EDGES: [(Node, Node); 6] = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)];
const E8_EDGES: [(Node, Node); 7] = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)];

// 1, 2 short; 3, 4 long.
const F4_CARTAN: [[i64; 4]; 4] = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]];
const F4_SYMMETRIZERS: [i64; 4] = [1, 1, 2, 2];

// 1 short, 2 long.
const G2_CARTAN: [[i64; 2]; 2] = [[2, -3], [-1, 2]];
const G2_SYMMETRIZERS: [i64; 2] = [1, 3];

/// Cartan matrix, symmetrizers and the duality data for one Lie type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanData {
    pub lie_type: LieType,
    /// `cartan_matrix[i][j]` is c_{i+1, j+1}.
    pub cartan_matrix: Vec<Vec<i64>>,
    /// d_i, with D C symmetric.
    pub symmetrizers: Vec<i64>,
    /// Lacing number r∨ (largest symmetrizer).
    pub r_dual: i64,
    /// Dual Coxeter number h∨.
    pub h_dual: i64,
    /// Ellipticity period p = 2 r∨ h∨ in powers of q.
    pub period: i64,
    pub black_nodes: Vec<Node>,
    dual: Vec<Node>,
}

impl CartanData {
    pub fn rank(&self) -> usize {
        self.lie_type.rank()
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<Node> {
        1..=self.rank()
    }

    pub fn check_node(&self, node: Node) -> Result<()> {
        if node == 0 || node > self.rank() {
            return Err(Error::NodeOutOfRange { node, rank: self.rank() });
        }
        Ok(())
    }

    /// The node i* with V_i dual to V_{i*} up to a shift.
    pub fn dual_node(&self, node: Node) -> Result<Node> {
        self.check_node(node)?;
        Ok(self.dual[node - 1])
    }

    /// r∨ h∨, the shift relating V_i(z)^* to V_{i*}.
    pub fn dual_shift(&self) -> i64 {
        self.r_dual * self.h_dual
    }

    pub fn period_len(&self) -> usize {
        self.period as usize
    }

    /// The symmetrized matrix B = D C.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        self.cartan_matrix
            .iter()
            .zip(&self.symmetrizers)
            .map(|(row, d)| row.iter().map(|c| d * c).collect())
            .collect()
    }
}

fn chain(n: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    c
}

fn from_edges(n: usize, edges: &[(Node, Node)]) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    }
    c
}

pub fn cartan_data(t: LieType) -> CartanData {
    let n = t.rank();
    let identity: Vec<Node> = (1..=n).collect();
    let (cartan_matrix, symmetrizers, r_dual, h_dual, black_nodes, dual) = match t.family() {
        Family::A => {
            let dual = (1..=n).map(|i| n + 1 - i).collect();
            (chain(n), vec![1; n], 1, n as i64 + 1, vec![1], dual)
        }
        Family::B => {
            let mut c = chain(n);
            c[n - 2][n - 1] = -1;
            c[n - 1][n - 2] = -2;
            let mut d = vec![2; n];
            d[n - 1] = 1;
            (c, d, 2, 2 * n as i64 - 1, vec![n], identity)
        }
        Family::C => {
            let mut c = chain(n);
            c[n - 2][n - 1] = -2;
            c[n - 1][n - 2] = -1;
            let mut d = vec![1; n];
            d[n - 1] = 2;
            (c, d, 2, n as i64 + 1, vec![1], identity)
        }
        Family::D => {
            let mut c = chain(n);
            c[n - 2][n - 1] = 0;
            c[n - 1][n - 2] = 0;
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
            let mut dual = identity;
            let black = if n.is_multiple_of(2) {
                vec![n - 1, n]
            } else {
                dual.swap(n - 2, n - 1);
                vec![n]
            };
            (c, vec![1; n], 1, 2 * n as i64 - 2, black, dual)
        }
        Family::E => {
            let (edges, h): (&[(Node, Node)], i64) = match n {
                6 => (&E6_EDGES, 12),
                7 => (&E7_EDGES, 18),
                _ => (&E8_EDGES, 30),
            };
            let mut dual = identity;
            if n == 6 {
                dual = vec![5, 4, 3, 2, 1, 6];
            }
            (from_edges(n, edges), vec![1; n], 1, h, vec![1], dual)
        }
        Family::F => (
            F4_CARTAN.iter().map(|r| r.to_vec()).collect(),
            F4_SYMMETRIZERS.to_vec(),
            2,
            9,
            vec![1],
            identity,
        ),
        Family::G => (
            G2_CARTAN.iter().map(|r| r.to_vec()).collect(),
            G2_SYMMETRIZERS.to_vec(),
            3,
            4,
            vec![1],
            identity,
        ),
    };
    CartanData {
        lie_type: t,
        cartan_matrix,
        symmetrizers,
        r_dual,
        h_dual,
        period: 2 * r_dual * h_dual,
        black_nodes,
        dual,
    }
}

pub fn black_nodes(t: LieType) -> Vec<Node> {
    cartan_data(t).black_nodes
}

pub fn dual_node(t: LieType, node: Node) -> Result<Node> {
    cartan_data(t).dual_node(node)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn a3_period_and_black_node() {
        let cd = cartan_data(ty("A3"));
        assert_eq!((cd.r_dual, cd.h_dual, cd.period), (1, 4, 8));
        assert_eq!(cd.black_nodes, vec![1]);
    }

    #[test]
    fn g2_period() {
        let cd = cartan_data(ty("G2"));
        assert_eq!((cd.r_dual, cd.h_dual, cd.period), (3, 4, 24));
    }

    #[test]
    fn a1_is_rank_one() {
        let cd = cartan_data(ty("A1"));
        assert_eq!(cd.cartan_matrix, vec![vec![2]]);
        assert_eq!(cd.symmetrizers, vec![1]);
        assert_eq!(cd.dual_node(1).unwrap(), 1);
    }

    #[test]
    fn black_node_table() {
        assert_eq!(black_nodes(ty("D6")), vec![5, 6]);
        assert_eq!(black_nodes(ty("D5")), vec![5]);
        assert_eq!(black_nodes(ty("B4")), vec![4]);
        assert_eq!(black_nodes(ty("A5")), vec![1]);
        assert_eq!(black_nodes(ty("C3")), vec![1]);
        for t in ["E6", "E7", "E8", "F4", "G2"] {
            assert_eq!(black_nodes(ty(t)), vec![1]);
        }
    }

    #[test]
    fn dual_nodes() {
        assert_eq!(dual_node(ty("A4"), 2).unwrap(), 3);
        assert_eq!(dual_node(ty("E6"), 1).unwrap(), 5);
        assert_eq!(dual_node(ty("E6"), 2).unwrap(), 4);
        assert_eq!(dual_node(ty("E6"), 6).unwrap(), 6);
        assert_eq!(dual_node(ty("E7"), 1).unwrap(), 1);
        assert_eq!(dual_node(ty("D5"), 4).unwrap(), 5);
        assert_eq!(dual_node(ty("D6"), 5).unwrap(), 5);
        assert!(matches!(dual_node(ty("A4"), 5), Err(Error::NodeOutOfRange { .. })));
        assert!(matches!(dual_node(ty("A4"), 0), Err(Error::NodeOutOfRange { .. })));
    }

    #[test]
    fn dual_coxeter_numbers() {
        let expect = [
            ("A5", 1, 6),
            ("B4", 2, 7),
            ("C4", 2, 5),
            ("D6", 1, 10),
            ("E6", 1, 12),
            ("E7", 1, 18),
            ("E8", 1, 30),
            ("F4", 2, 9),
            ("G2", 3, 4),
        ];
        for (t, r, h) in expect {
            let cd = cartan_data(ty(t));
            assert_eq!((cd.r_dual, cd.h_dual), (r, h), "{t}");
        }
    }

    #[test]
    fn structural_invariants_hold_for_every_type() {
        for t in LieType::all_up_to(9) {
            let cd = cartan_data(t);
            let n = cd.rank();
            let b = cd.symmetrized();
            for i in 0..n {
                assert_eq!(cd.cartan_matrix[i][i], 2);
                for j in 0..n {
                    if i != j {
                        assert!(cd.cartan_matrix[i][j] <= 0);
                    }
                    assert_eq!(b[i][j], b[j][i], "{t}: DC not symmetric");
                }
            }
            assert!(cd.symmetrizers.iter().all(|d| (1..=3).contains(d)));
            assert_eq!(*cd.symmetrizers.iter().max().unwrap(), cd.r_dual, "{t}");
            for i in cd.nodes() {
                let j = cd.dual_node(i).unwrap();
                assert_eq!(cd.dual_node(j).unwrap(), i, "{t}: duality not an involution");
            }
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(ty("e8").to_string(), "E8");
        assert_eq!(ty(" d_6 ").to_string(), "D6");
        assert!(matches!("H3".parse::<LieType>(), Err(Error::UnknownType(_))));
        assert!(matches!("A".parse::<LieType>(), Err(Error::UnknownType(_))));
        let err = "D3".parse::<LieType>().unwrap_err();
        assert!(err.to_string().contains("n >= 4"), "{err}");
        assert!(matches!("E9".parse::<LieType>(), Err(Error::InadmissibleRank { .. })));
        assert!(matches!("B1".parse::<LieType>(), Err(Error::InadmissibleRank { .. })));
        assert!(matches!("A0".parse::<LieType>(), Err(Error::InadmissibleRank { .. })));
    }
}
