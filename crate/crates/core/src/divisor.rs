//! Divisors of `ξ_ij(z) = f_ij(z) f_ij(z⁻¹)` on `E = ℂ*/q^{pℤ}`.
//!
//! A divisor is an integer order at each residue `s ∈ ℤ/p`, standing for the
//! point `q^s`: positive for zeros, negative for poles. With `c_m` the
//! coefficients of `π_ij`, the order at a representative `t` is
//!
//! ```text
//! ord(t) = −Σ{ c_m : m ≡ −t (mod p), m ≤ −t } − Σ{ c_m : m ≡ t (mod p), m ≤ t }
//! ```
//!
//! ```
//! use ecc_core::cartan::cartan_data;
//! use ecc_core::divisor::xi_divisor;
//!
//! let sl2 = cartan_data("A1".parse().unwrap());
//! let d = xi_divisor(&sl2, 1, 1).unwrap();
//! assert_eq!(d.period(), 4);
//! assert_eq!(d.support(), vec![(0, 2), (2, -2)]);
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, Node};
use crate::error::{Error, Result};
use crate::mq::pi_table;

/// An integer-valued function on `ℤ/p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor {
    orders: Vec<i64>,
}

impl Divisor {
    pub fn zero(period: usize) -> Self {
        assert!(period > 0, "period must be positive");
        Divisor { orders: vec![0; period] }
    }

    /// From a dense vector of orders indexed by residue.
    pub fn from_dense(orders: Vec<i64>) -> Self {
        assert!(!orders.is_empty(), "period must be positive");
        Divisor { orders }
    }

    /// From `(residue, order)` pairs; residues are reduced mod `period` and added up.
    pub fn from_points(period: usize, points: &[(i64, i64)]) -> Self {
        let mut d = Self::zero(period);
        for &(s, o) in points {
            let r = s.rem_euclid(period as i64) as usize;
            d.orders[r] += o;
        }
        d
    }

    pub fn period(&self) -> usize {
        self.orders.len()
    }

    /// Order at residue `s` (any integer representative).
    pub fn order(&self, s: i64) -> i64 {
        self.orders[s.rem_euclid(self.period() as i64) as usize]
    }

    pub fn dense(&self) -> &[i64] {
        &self.orders
    }

    /// Nonzero `(residue, order)` pairs in ascending residue order.
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.orders
            .iter()
            .enumerate()
            .filter(|(_, o)| **o != 0)
            .map(|(s, o)| (s as i64, *o))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.orders.iter().all(|o| *o == 0)
    }

    pub fn degree(&self) -> i64 {
        self.orders.iter().sum()
    }

    /// `orders'(s) = orders(s − k)`: the divisor seen by a factor shifted by `q^k`.
    pub fn shift(&self, k: i64) -> Divisor {
        let p = self.period() as i64;
        Divisor {
            orders: (0..p).map(|s| self.order(s - k)).collect(),
        }
    }

    pub fn add(&self, other: &Divisor) -> Result<Divisor> {
        if self.period() != other.period() {
            return Err(Error::PeriodMismatch {
                left: self.period(),
                right: other.period(),
            });
        }
        Ok(Divisor {
            orders: self.orders.iter().zip(&other.orders).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn negate(&self) -> Divisor {
        Divisor {
            orders: self.orders.iter().map(|o| -o).collect(),
        }
    }

    /// In-place `self += other.shift(k)`; periods must agree.
    pub fn add_shifted(&mut self, other: &Divisor, k: i64) {
        assert_eq!(self.period(), other.period(), "divisor periods differ");
        for (s, slot) in self.orders.iter_mut().enumerate() {
            *slot += other.order(s as i64 - k);
        }
    }

    /// Two aligned rows: points `q^s` on top, orders below. Empty for the zero divisor.
    pub fn render_table(&self) -> String {
        let pts = self.support();
        if pts.is_empty() {
            return String::new();
        }
        let labels: Vec<String> = pts.iter().map(|(s, _)| format!("q^{s}")).collect();
        let values: Vec<String> = pts.iter().map(|(_, o)| o.to_string()).collect();
        let widths: Vec<usize> = labels.iter().zip(&values).map(|(a, b)| a.len().max(b.len())).collect();
        let row = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        format!("{}\n{}\n", row(&labels), row(&values))
    }

    pub fn to_json(&self) -> DivisorJson {
        DivisorJson {
            period: self.period(),
            orders: self.support().into_iter().map(|(s, o)| [s, o]).collect(),
        }
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.support().iter().map(|(s, o)| format!("{s}:{o}")).collect();
        write!(f, "{{{}}} mod {}", pts.join(", "), self.period())
    }
}

/// Structured form: `{"period": p, "orders": [[residue, order], ...]}`, ascending residues.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub period: usize,
    pub orders: Vec<[i64; 2]>,
}

impl DivisorJson {
    pub fn to_divisor(&self) -> Result<Divisor> {
        if self.period == 0 {
            return Err(Error::InvalidArgument("divisor period must be positive".into()));
        }
        let pts: Vec<(i64, i64)> = self.orders.iter().map(|[s, o]| (*s, *o)).collect();
        Ok(Divisor::from_points(self.period, &pts))
    }
}

/// The order formula at one representative `t`, given the coefficients of `π`.
pub fn order_at(coeffs: &BTreeMap<i64, i64>, t: i64, period: i64) -> i64 {
    let side = |target: i64| -> i64 {
        coeffs
            .iter()
            .filter(|(m, _)| **m <= target && (**m - target).rem_euclid(period) == 0)
            .map(|(_, c)| *c)
            .sum()
    };
    -side(-t) - side(t)
}

/// The divisor of `ξ_ij`.
pub fn xi_divisor(cd: &CartanData, i: Node, j: Node) -> Result<Divisor> {
    cd.check_node(i)?;
    cd.check_node(j)?;
    let table = pi_table(cd)?;
    let coeffs = table.coeffs(i, j);
    Ok(Divisor {
        orders: (0..cd.period).map(|t| order_at(coeffs, t, cd.period)).collect(),
    })
}

/// Picture of `ξ_ij`: points `q^s` with nonzero order, ascending.
pub fn singularity_table(cd: &CartanData, i: Node, j: Node) -> Result<String> {
    Ok(xi_divisor(cd, i, j)?.render_table())
}

/// Row `s` holds the orders of `ξ_ij(z q^{−2s})` at `1, q², …, q^{2(window−1)}`.
pub fn divisor_vectors(cd: &CartanData, i: Node, j: Node, window: usize, count: usize) -> Result<Vec<Vec<i64>>> {
    if window == 0 || count == 0 {
        return Err(Error::InvalidArgument("window and count must be at least 1".into()));
    }
    let d = xi_divisor(cd, i, j)?;
    Ok((0..count as i64)
        .map(|s| (0..window as i64).map(|t| d.order(2 * t - 2 * s)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{cartan_data, LieType};
    use proptest::prelude::*;

    fn cd(s: &str) -> CartanData {
        cartan_data(s.parse().unwrap())
    }

    #[test]
    fn sl2_picture() {
        let d = xi_divisor(&cd("A1"), 1, 1).unwrap();
        assert_eq!(d, Divisor::from_points(4, &[(0, 2), (2, -2)]));
    }

    #[test]
    fn an_picture() {
        for n in 2..=8 {
            let t = cd(&format!("A{n}"));
            let h = t.h_dual;
            let expect = Divisor::from_points(2 * h as usize, &[(0, 2), (2, -1), (2 * (h - 1), -1)]);
            assert_eq!(xi_divisor(&t, 1, 1).unwrap(), expect, "A{n}");
        }
    }

    #[test]
    fn g2_xi12_lives_on_odd_residues() {
        let d = xi_divisor(&cd("G2"), 1, 2).unwrap();
        let pts: Vec<(i64, i64)> = [1, 5, 19, 23].map(|s| (s, 1)).into_iter().chain([7, 11, 13, 17].map(|s| (s, -1))).collect();
        assert_eq!(d, Divisor::from_points(24, &pts));
    }

    #[test]
    fn shift_laws() {
        let d = xi_divisor(&cd("E6"), 1, 2).unwrap();
        assert_eq!(d.shift(0), d);
        assert_eq!(d.shift(5).shift(-3), d.shift(2));
        assert_eq!(d.shift(24), d);
        assert_eq!(d.shift(3).order(3), d.order(0));
    }

    #[test]
    fn add_and_negate() {
        let a = xi_divisor(&cd("F4"), 1, 2).unwrap();
        let b = xi_divisor(&cd("F4"), 3, 3).unwrap();
        assert!(a.add(&a.negate()).unwrap().is_zero());
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let g = xi_divisor(&cd("G2"), 1, 1).unwrap();
        assert!(matches!(a.add(&g), Err(Error::PeriodMismatch { left: 36, right: 24 })));
    }

    #[test]
    fn tables() {
        let d = xi_divisor(&cd("A1"), 1, 1).unwrap();
        assert_eq!(d.render_table(), "q^0  q^2\n  2   -2\n");
        assert_eq!(Divisor::zero(8).render_table(), "");
        let e7 = xi_divisor(&cd("E7"), 1, 6).unwrap();
        let odd: Vec<i64> = e7.support().iter().map(|(s, _)| *s).collect();
        assert_eq!(odd, vec![5, 7, 11, 13, 23, 25, 29, 31]);
        assert!(e7.support().iter().all(|(_, o)| o.abs() == 1));
    }

    #[test]
    fn b_nn_endpoints() {
        for n in 2..=6 {
            let t = cd(&format!("B{n}"));
            let d = xi_divisor(&t, n, n).unwrap();
            assert_eq!(d.order(0), 2);
            assert_eq!(d.order(2 * t.h_dual), -2);
        }
    }

    #[test]
    fn vectors() {
        let e6 = divisor_vectors(&cd("E6"), 1, 1, 12, 12).unwrap();
        assert_eq!(e6[0], vec![2, -1, 0, 1, -1, 0, 0, 0, -1, 1, 0, -1]);
        for s in 1..12 {
            let mut rot = e6[0].clone();
            rot.rotate_right(s);
            assert_eq!(e6[s], rot);
        }
        let g2 = divisor_vectors(&cd("G2"), 1, 1, 6, 6).unwrap();
        assert_eq!(g2[0], vec![2, -1, 1, 0, -1, 1]);
        let a4 = divisor_vectors(&cd("A4"), 1, 1, 4, 4).unwrap();
        assert_eq!(a4[0], vec![2, -1, 0, 0]);
        assert!(divisor_vectors(&cd("A4"), 1, 1, 0, 4).is_err());
    }

    #[test]
    fn json_round_trip() {
        let d = xi_divisor(&cd("D5"), 5, 5).unwrap();
        let j = d.to_json();
        assert_eq!(j.period, 16);
        let text = serde_json::to_string(&j).unwrap();
        let back: DivisorJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_divisor().unwrap(), d);
    }

    fn some_type() -> impl Strategy<Value = LieType> {
        prop::sample::select(LieType::all_up_to(8))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn shift_composes(t in some_type(), a in -100i64..100, b in -100i64..100) {
            let cd = cartan_data(t);
            let d = xi_divisor(&cd, 1, cd.rank()).unwrap();
            prop_assert_eq!(d.shift(a).shift(b), d.shift(a + b));
            prop_assert_eq!(d.shift(a).degree(), 0);
        }

        #[test]
        fn add_is_associative(t in some_type(), a in 0i64..60, b in 0i64..60) {
            let cd = cartan_data(t);
            let x = xi_divisor(&cd, 1, 1).unwrap();
            let y = x.shift(a);
            let z = x.shift(b);
            prop_assert_eq!(x.add(&y).unwrap().add(&z).unwrap(), x.add(&y.add(&z).unwrap()).unwrap());
        }
    }
}
