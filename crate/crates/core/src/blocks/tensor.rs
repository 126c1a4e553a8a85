//! Tensor products of shifted fundamental representations and their
//! elliptic central characters.
//!
//! A [`TensorSpec`] is a multiset of factors `V_node(u_orbit · q^exp)`. The
//! orbit is a name for a base point `u`; factors whose base points differ by
//! an integer power of `q` belong in the same orbit with adjusted exponents.
//!
//! Text grammar:
//!
//! ```text
//! E8: V1@0, V1@12 | orbit=b: V7@3
//! ```
//!
//! The type prefix is optional when the type is known from elsewhere, `@exp`
//! defaults to `@0`, and factors before the first `|` sit in the default orbit.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{cartan_data, CartanData, LieType, Node};
use crate::divisor::{xi_divisor, Divisor, DivisorJson};
use crate::error::{Error, Result};

pub const DEFAULT_ORBIT: &str = "default";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub node: Node,
    pub orbit: String,
    pub exp: i64,
}

impl Factor {
    pub fn new(node: Node, exp: i64) -> Self {
        Factor {
            node,
            orbit: DEFAULT_ORBIT.to_string(),
            exp,
        }
    }

    pub fn in_orbit(node: Node, orbit: &str, exp: i64) -> Self {
        Factor {
            node,
            orbit: orbit.to_string(),
            exp,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorSpec {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub factors: Vec<Factor>,
}

impl TensorSpec {
    pub fn new(lie_type: LieType, factors: Vec<Factor>) -> Result<Self> {
        let spec = TensorSpec { lie_type, factors };
        spec.validate()?;
        Ok(spec)
    }

    pub fn empty(lie_type: LieType) -> Self {
        TensorSpec {
            lie_type,
            factors: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let cd = cartan_data(self.lie_type);
        for f in &self.factors {
            cd.check_node(f.node)?;
            if f.orbit.is_empty() {
                return Err(Error::Parse("empty orbit name".into()));
            }
        }
        Ok(())
    }

    /// Parses the text grammar; `default_type` is used when the prefix is absent.
    pub fn parse(s: &str, default_type: Option<LieType>) -> Result<Self> {
        let (prefix, body) = match s.split_once(':') {
            Some((head, rest)) if !head.contains('|') && !head.contains("orbit") => (Some(head.trim()), rest),
            _ => (None, s),
        };
        let lie_type = match (prefix, default_type) {
            (Some(p), Some(t)) => {
                let parsed: LieType = p.parse()?;
                if parsed != t {
                    return Err(Error::TypeMismatch {
                        left: parsed.to_string(),
                        right: t.to_string(),
                    });
                }
                t
            }
            (Some(p), None) => p.parse()?,
            (None, Some(t)) => t,
            (None, None) => return Err(Error::Parse(format!("missing Lie type prefix in `{s}`"))),
        };
        let mut factors = Vec::new();
        for (k, group) in body.split('|').enumerate() {
            let group = group.trim();
            let (orbit, list) = match group.strip_prefix("orbit") {
                Some(rest) => {
                    let rest = rest.trim_start().strip_prefix('=').ok_or_else(|| {
                        Error::Parse(format!("expected `orbit=NAME:` in `{group}`"))
                    })?;
                    let (name, list) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::Parse(format!("missing `:` after orbit name in `{group}`")))?;
                    (name.trim().to_string(), list)
                }
                None if k == 0 => (DEFAULT_ORBIT.to_string(), group),
                None => return Err(Error::Parse(format!("group `{group}` needs an `orbit=NAME:` header"))),
            };
            if orbit.is_empty() || orbit.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("bad orbit name `{orbit}`")));
            }
            for item in list.split(',').map(str::trim).filter(|x| !x.is_empty()) {
                factors.push(parse_factor(item, &orbit)?);
            }
        }
        TensorSpec::new(lie_type, factors)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: TensorSpec = serde_json::from_str(s)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn with(mut self, more: impl IntoIterator<Item = Factor>) -> Self {
        self.factors.extend(more);
        self
    }

    fn orbits(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for f in &self.factors {
            if !out.contains(&f.orbit.as_str()) {
                out.push(&f.orbit);
            }
        }
        out.sort_by_key(|o| (*o != DEFAULT_ORBIT, *o));
        out
    }
}

fn parse_factor(item: &str, orbit: &str) -> Result<Factor> {
    let err = || Error::Parse(format!("bad factor `{item}` (expected e.g. V3@-2)"));
    let rest = item.strip_prefix(['V', 'v']).ok_or_else(err)?;
    let (node, exp) = match rest.split_once('@') {
        Some((n, e)) => (n.trim(), e.trim()),
        None => (rest.trim(), "0"),
    };
    Ok(Factor::in_orbit(
        node.parse().map_err(|_| err())?,
        orbit,
        exp.parse().map_err(|_| err())?,
    ))
}

impl fmt::Display for TensorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.lie_type)?;
        for (k, orbit) in self.orbits().into_iter().enumerate() {
            if k > 0 || orbit != DEFAULT_ORBIT {
                if k > 0 {
                    f.write_str(" |")?;
                }
                write!(f, " orbit={orbit}:")?;
            }
            let items: Vec<String> = self
                .factors
                .iter()
                .filter(|x| x.orbit == orbit)
                .map(|x| format!("V{}@{}", x.node, x.exp))
                .collect();
            if !items.is_empty() {
                write!(f, " {}", items.join(", "))?;
            }
        }
        Ok(())
    }
}

/// Per probe node and orbit, the divisor of `ξ_{V_probe}` restricted to the product.
/// Zero divisors are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ecc {
    pub lie_type: LieType,
    pub entries: BTreeMap<(Node, String), Divisor>,
}

impl Ecc {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, probe: Node, orbit: &str, period: usize) -> Divisor {
        self.entries
            .get(&(probe, orbit.to_string()))
            .cloned()
            .unwrap_or_else(|| Divisor::zero(period))
    }

    pub fn to_json(&self) -> EccJson {
        EccJson {
            lie_type: self.lie_type,
            entries: self
                .entries
                .iter()
                .map(|((probe, orbit), d)| EccEntryJson {
                    probe: *probe,
                    orbit: orbit.clone(),
                    divisor: d.to_json(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for Ecc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "{}: zero", self.lie_type);
        }
        for ((probe, orbit), d) in &self.entries {
            writeln!(f, "probe V{probe}, orbit {orbit}: {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EccJson {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub entries: Vec<EccEntryJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EccEntryJson {
    pub probe: Node,
    pub orbit: String,
    pub divisor: DivisorJson,
}

/// The `ξ` divisors of every probe against every node, computed once.
pub(crate) struct ProbeTable {
    /// `xi[probe_index][node - 1]`.
    pub xi: Vec<Vec<Divisor>>,
}

impl ProbeTable {
    pub fn new(cd: &CartanData) -> Result<Self> {
        let xi = cd
            .black_nodes
            .iter()
            .map(|&b| cd.nodes().map(|k| xi_divisor(cd, b, k)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ProbeTable { xi })
    }
}

pub fn ecc(spec: &TensorSpec) -> Result<Ecc> {
    spec.validate()?;
    let cd = cartan_data(spec.lie_type);
    let table = ProbeTable::new(&cd)?;
    let mut entries: BTreeMap<(Node, String), Divisor> = BTreeMap::new();
    for (pi, &probe) in cd.black_nodes.iter().enumerate() {
        for f in &spec.factors {
            entries
                .entry((probe, f.orbit.clone()))
                .or_insert_with(|| Divisor::zero(cd.period_len()))
                .add_shifted(&table.xi[pi][f.node - 1], f.exp);
        }
    }
    entries.retain(|_, d| !d.is_zero());
    Ok(Ecc {
        lie_type: spec.lie_type,
        entries,
    })
}

/// Whether the two products have the same elliptic central character.
pub fn linked(a: &TensorSpec, b: &TensorSpec) -> Result<bool> {
    if a.lie_type != b.lie_type {
        return Err(Error::TypeMismatch {
            left: a.lie_type.to_string(),
            right: b.lie_type.to_string(),
        });
    }
    Ok(ecc(a)? == ecc(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_grammar() {
        let s = TensorSpec::parse("E8: V1@0, V1@12 | orbit=b: V7@3", None).unwrap();
        assert_eq!(s.lie_type, t("E8"));
        assert_eq!(
            s.factors,
            vec![Factor::new(1, 0), Factor::new(1, 12), Factor::in_orbit(7, "b", 3)]
        );
        assert_eq!(s.to_string(), "E8: V1@0, V1@12 | orbit=b: V7@3");
        assert_eq!(TensorSpec::parse(&s.to_string(), None).unwrap(), s);
        let bare = TensorSpec::parse("V2@-4, v1", Some(t("A3"))).unwrap();
        assert_eq!(bare.factors, vec![Factor::new(2, -4), Factor::new(1, 0)]);
        let only_orbit = TensorSpec::parse("G2: orbit=w: V1@2", None).unwrap();
        assert_eq!(only_orbit.to_string(), "G2: orbit=w: V1@2");
        assert_eq!(TensorSpec::parse("G2:", None).unwrap().factors, vec![]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(TensorSpec::parse("V1@0", None), Err(Error::Parse(_))));
        assert!(matches!(TensorSpec::parse("A2: V3@0", None), Err(Error::NodeOutOfRange { .. })));
        assert!(matches!(TensorSpec::parse("A2: W1@0", None), Err(Error::Parse(_))));
        assert!(matches!(TensorSpec::parse("A2: V1@x", None), Err(Error::Parse(_))));
        assert!(matches!(TensorSpec::parse("A2: V1 | V2", None), Err(Error::Parse(_))));
        assert!(matches!(TensorSpec::parse("A2: V1@0", Some(t("A3"))), Err(Error::TypeMismatch { .. })));
        assert!(matches!(TensorSpec::parse("Q2: V1@0", None), Err(Error::UnknownType(_))));
    }

    #[test]
    fn json_schema() {
        let s = TensorSpec::parse("D4: V3@0 | orbit=x: V4@2", None).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"type":"D4","factors":[{"node":3,"orbit":"default","exp":0},{"node":4,"orbit":"x","exp":2}]}"#
        );
        assert_eq!(TensorSpec::from_json(&j).unwrap(), s);
        assert!(TensorSpec::from_json(r#"{"type":"A2","factors":[{"node":9,"orbit":"o","exp":0}]}"#).is_err());
    }

    #[test]
    fn empty_and_single() {
        assert!(ecc(&TensorSpec::empty(t("E7"))).unwrap().is_zero());
        let g2 = cartan_data(t("G2"));
        let e = ecc(&TensorSpec::parse("G2: V1@0", None).unwrap()).unwrap();
        assert_eq!(e.get(1, DEFAULT_ORBIT, 24), xi_divisor(&g2, 1, 1).unwrap());
        assert_eq!(e.entries.len(), 1);
    }

    #[test]
    fn an_relation_is_zero() {
        for n in 1..=8 {
            let ty = t(&format!("A{n}"));
            let h = cartan_data(ty).h_dual;
            let spec = TensorSpec::new(ty, (0..h).map(|s| Factor::new(1, 2 * s)).collect()).unwrap();
            assert!(ecc(&spec).unwrap().is_zero(), "A{n}");
        }
    }

    #[test]
    fn linkage_examples() {
        let a3 = t("A3");
        let h = cartan_data(a3).h_dual;
        let y = TensorSpec::parse("V1@0", Some(a3)).unwrap();
        let y2 = TensorSpec::new(a3, vec![Factor::new(1, 2 * h)]).unwrap();
        assert!(linked(&y, &y2).unwrap());

        let b3 = cartan_data(t("B3"));
        let pair = TensorSpec::new(b3.lie_type, vec![Factor::new(3, 5), Factor::new(3, 5 + b3.dual_shift())]).unwrap();
        assert!(linked(&TensorSpec::empty(b3.lie_type), &pair).unwrap());

        let a2 = t("A2");
        let l = TensorSpec::parse("V1@0", Some(a2)).unwrap();
        let r = TensorSpec::parse("V1@2", Some(a2)).unwrap();
        assert!(!linked(&l, &r).unwrap());
        assert!(matches!(linked(&l, &TensorSpec::empty(t("A3"))), Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn orbits_do_not_mix() {
        let a1 = t("A1");
        let same = TensorSpec::parse("V1@0, V1@2", Some(a1)).unwrap();
        let split = TensorSpec::parse("V1@0 | orbit=b: V1@2", Some(a1)).unwrap();
        assert!(ecc(&same).unwrap().is_zero());
        assert!(!ecc(&split).unwrap().is_zero());
    }

    fn random_spec(ty: LieType) -> impl Strategy<Value = TensorSpec> {
        let n = ty.rank();
        prop::collection::vec((1..=n, prop::sample::select(vec!["default", "b"]), -40i64..40), 0..5).prop_map(
            move |fs| TensorSpec {
                lie_type: ty,
                factors: fs.into_iter().map(|(k, o, e)| Factor::in_orbit(k, o, e)).collect(),
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn linked_is_an_equivalence(a in random_spec(t("D4")), b in random_spec(t("D4")), c in random_spec(t("D4"))) {
            prop_assert!(linked(&a, &a).unwrap());
            prop_assert_eq!(linked(&a, &b).unwrap(), linked(&b, &a).unwrap());
            if linked(&a, &b).unwrap() && linked(&b, &c).unwrap() {
                prop_assert!(linked(&a, &c).unwrap());
            }
        }

        #[test]
        fn factor_order_is_irrelevant(mut a in random_spec(t("F4"))) {
            let before = ecc(&a).unwrap();
            a.factors.reverse();
            prop_assert_eq!(ecc(&a).unwrap(), before);
        }

        #[test]
        fn text_round_trip(a in random_spec(t("C3"))) {
            let back = TensorSpec::parse(&a.to_string(), None).unwrap();
            prop_assert_eq!(ecc(&back).unwrap(), ecc(&a).unwrap());
        }
    }
}
