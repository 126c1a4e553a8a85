//! Elementary moves on tensor products that leave the elliptic central
//! character unchanged: adding one list of factors and removing another.

use std::fmt;

use serde::Serialize;

use crate::blocks::tensor::{linked, Factor, TensorSpec};
use crate::cartan::{CartanData, Family, Node};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Move {
    pub adds: Vec<Factor>,
    pub removes: Vec<Factor>,
}

fn at(node: Node, exps: &[i64]) -> Vec<Factor> {
    exps.iter().map(|&e| Factor::new(node, e)).collect()
}

impl Move {
    fn appending(factors: Vec<Factor>) -> Self {
        Move {
            adds: factors,
            removes: Vec::new(),
        }
    }

    /// The move with every exponent shifted by `w`.
    pub fn shifted(&self, w: i64) -> Move {
        let sh = |fs: &[Factor]| {
            fs.iter()
                .map(|f| Factor::in_orbit(f.node, &f.orbit, f.exp + w))
                .collect()
        };
        Move {
            adds: sh(&self.adds),
            removes: sh(&self.removes),
        }
    }

    /// `base ⊗ adds` and `base ⊗ removes`.
    pub fn apply(&self, base: &TensorSpec) -> (TensorSpec, TensorSpec) {
        (
            base.clone().with(self.adds.iter().cloned()),
            base.clone().with(self.removes.iter().cloned()),
        )
    }

    /// Whether applying the move to `base` keeps the character.
    pub fn preserves(&self, base: &TensorSpec) -> Result<bool> {
        let (a, b) = self.apply(base);
        linked(&a, &b)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |fs: &[Factor]| {
            if fs.is_empty() {
                "∅".to_string()
            } else {
                fs.iter()
                    .map(|x| format!("V{}@{}", x.node, x.exp))
                    .collect::<Vec<_>>()
                    .join(", ")
            }
        };
        write!(f, "{} → {}", side(&self.adds), side(&self.removes))
    }
}

/// The moves generating block linkage for a type, at base exponent 0.
pub fn lemma_moves(cd: &CartanData) -> Vec<Move> {
    let n = cd.rank();
    let h = cd.h_dual;
    match cd.lie_type.family() {
        Family::A => {
            let exps: Vec<i64> = (0..h).map(|s| 2 * s).collect();
            vec![Move::appending(at(1, &exps))]
        }
        Family::B | Family::C => vec![Move::appending(at(cd.black_nodes[0], &[0, cd.dual_shift()]))],
        Family::D if n.is_multiple_of(2) => {
            let mut mixed = at(n - 1, &[0, 2]);
            mixed.extend(at(n, &[h, h + 2]));
            vec![
                Move::appending(at(n - 1, &[0, h])),
                Move::appending(at(n, &[0, h])),
                Move::appending(mixed),
            ]
        }
        Family::D => vec![Move::appending(at(n, &[0, 2, h, h + 2]))],
        Family::E => match n {
            6 => vec![
                Move::appending(at(1, &[0, 8, 16])),
                Move {
                    adds: at(1, &[0, 2, 10, 12]),
                    removes: at(1, &[6]),
                },
            ],
            7 => vec![
                Move::appending(at(1, &[0, 18])),
                Move::appending(at(1, &[0, 2, 12, 14, 24, 26])),
            ],
            _ => vec![
                Move::appending(at(1, &[0, 30])),
                Move::appending(at(1, &[0, 20, 40])),
                Move::appending(at(1, &[0, 12, 24, 36, 48])),
            ],
        },
        Family::F => vec![
            Move::appending(at(1, &[0, 18])),
            Move::appending(at(1, &[0, 12, 24])),
        ],
        Family::G => vec![
            Move::appending(at(1, &[0, 12])),
            Move::appending(at(1, &[0, 8, 16])),
        ],
    }
}
