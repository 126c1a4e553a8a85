//! Exact Laurent polynomials in `q` over ℚ and reduced fractions of them.
//!
//! Both types are kept in canonical form, so `==` is structural equality.
//!
//! ```
//! use ecc_core::qpoly::{quantum_integer, LaurentPoly};
//!
//! let q = LaurentPoly::q();
//! let p = (&q + &q.pow(-1)) * (&q - &q.pow(-1));
//! assert_eq!(p.to_string(), "q²−q⁻²");
//! assert_eq!(quantum_integer(-3), -quantum_integer(3));
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A finite sum of `c·q^e` with `c ∈ ℚ \ {0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    /// `q^e`.
    pub fn pow(&self, e: i64) -> Self {
        if let Some((exp, c)) = self.single_term() {
            if c.is_one() {
                return Self::monomial(rat(1), exp * e);
            }
        }
        assert!(e >= 0, "negative power of a non-monomial");
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Builds a polynomial from `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (e, c) in terms {
            *out.entry(e).or_insert_with(BigRational::zero) += rat(c);
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn single_term(&self) -> Option<(i64, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// The ring map `q ↦ q^k`.
    pub fn substitute(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroSubstitution);
        }
        Ok(LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        })
    }

    /// `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        self.substitute(-1).expect("nonzero substitution")
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients keyed by exponent; fails on a non-integer or oversized coefficient.
    pub fn integer_coeffs(&self) -> Result<BTreeMap<i64, i64>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                if !c.is_integer() {
                    return Err(Error::InexactDivision(format!("coefficient {c} of q^{e} is not an integer")));
                }
                c.to_integer()
                    .to_i64()
                    .map(|v| (*e, v))
                    .ok_or_else(|| Error::Overflow(c.to_string()))
            })
            .collect()
    }

    /// Split into `q^shift · dense` with `dense[0] ≠ 0`.
    fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.min_exp() else {
            return (0, Vec::new());
        };
        let hi = self.max_exp().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: &[BigRational]) -> Self {
        LaurentPoly {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (shift + i as i64, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in the Laurent ring; fails unless `other` divides `self`.
    pub fn exact_div(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((e, c)) = other.single_term() {
            let inv = c.recip();
            return Ok(self.shift(-e).scale(&inv));
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = other.to_dense();
        let (quot, rem) = dense_divrem(&a, &b);
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision(format!("{self} is not divisible by {other}")));
        }
        Ok(Self::from_dense(sa - sb, &quot))
    }

    /// Monic gcd of the two polynomials shifted to minimal exponent 0.
    pub fn gcd(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::GcdOfZeros);
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        let g = dense_gcd(a, b);
        Ok(Self::from_dense(0, &g))
    }

    /// Sorted `[exponent, numerator, denominator]` triples (ascending exponent).
    pub fn to_triples(&self) -> Result<Vec<[i64; 3]>> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let n = c.numer().to_i64().ok_or_else(|| Error::Overflow(c.numer().to_string()))?;
                let d = c.denom().to_i64().ok_or_else(|| Error::Overflow(c.denom().to_string()))?;
                Ok([*e, n, d])
            })
            .collect()
    }

    pub fn from_triples(triples: &[[i64; 3]]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for &[e, n, d] in triples {
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator at exponent {e}")));
            }
            let c = BigRational::new(BigInt::from(n), BigInt::from(d));
            let slot = terms.entry(e).or_insert_with(BigRational::zero);
            *slot += c;
        }
        terms.retain(|_, c: &mut BigRational| !c.is_zero());
        Ok(LaurentPoly { terms })
    }

    /// ASCII rendering accepted by [`FromStr`], ascending exponents: `-1+2q^2-q^4`.
    pub fn to_ascii(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let a = c.abs();
            let unit = a.is_one();
            if !unit || *e == 0 {
                out.push_str(&a.to_string());
                if *e != 0 {
                    out.push('*');
                }
            }
            match e {
                0 => {}
                1 => out.push('q'),
                _ => out.push_str(&format!("q^{e}")),
            }
        }
        out
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

pub(crate) fn superscript(e: i64) -> String {
    let mut s = String::new();
    if e < 0 {
        s.push('⁻');
    }
    for d in e.unsigned_abs().to_string().bytes() {
        s.push(SUPERSCRIPTS[(d - b'0') as usize]);
    }
    s
}

/// Descending exponents, Unicode minus and superscripts: `−q⁴+2q²−1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                f.write_str("−")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if *e == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                if a.is_integer() {
                    write!(f, "{a}")?;
                } else {
                    write!(f, "({a})")?;
                }
            }
            f.write_str("q")?;
            if *e != 1 {
                f.write_str(&superscript(*e))?;
            }
        }
        Ok(())
    }
}

fn normalize_unicode(s: &str) -> String {
    let mut out = String::new();
    let mut in_sup = false;
    for ch in s.chars() {
        let sup = match ch {
            '⁻' => Some('-'),
            c => SUPERSCRIPTS.iter().position(|&x| x == c).map(|d| (b'0' + d as u8) as char),
        };
        match sup {
            Some(c) => {
                if !in_sup {
                    out.push('^');
                    in_sup = true;
                }
                out.push(c);
            }
            None => {
                in_sup = false;
                match ch {
                    '−' => out.push('-'),
                    c if c.is_whitespace() || c == '{' || c == '}' || c == '(' || c == ')' => {}
                    c => out.push(c),
                }
            }
        }
    }
    out
}

fn parse_coeff(s: &str, whole: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("bad coefficient `{s}` in `{whole}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Accepts ASCII (`-1+2q^2-q^{4}`, `3/2*q^-1`) and the Unicode display form.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = normalize_unicode(s);
        if t.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in t.chars() {
            if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        let mut out = LaurentPoly::zero();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (coeff, exp) = match body.find('q') {
                None => (parse_coeff(&body, s)?, 0),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    let c = if c.is_empty() { rat(1) } else { parse_coeff(c, s)? };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|x| x.parse::<i64>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad exponent in `{body}`")))?
                    };
                    (c, e)
                }
            };
            let coeff = if neg { -coeff } else { coeff };
            out = out + LaurentPoly::monomial(coeff, exp);
        }
        Ok(out)
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                r[k + i] -= &c * bi;
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    trim(&mut r);
    (q, r)
}

fn dense_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = dense_divrem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().cloned().expect("gcd of zeros");
    a.iter().map(|c| c / &lead).collect()
}

/// `[m]_q = q^{m−1} + q^{m−3} + … + q^{1−m}`, with `[−m]_q = −[m]_q`.
pub fn quantum_integer(m: i64) -> LaurentPoly {
    let sign = if m < 0 { -1 } else { 1 };
    let m = m.abs();
    LaurentPoly::from_terms((0..m).map(|k| (m - 1 - 2 * k, sign)))
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let slot = terms.entry(*e).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(e);
            }
        }
        LaurentPoly { terms }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *terms.entry(ea + eb).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly { terms }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident :: $f:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { (&self).$f(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $f(self, rhs: &$t) -> $t { (&self).$f(rhs) }
        }
        impl $tr<$t> for &$t {
            type Output = $t;
            fn $f(self, rhs: $t) -> $t { self.$f(&rhs) }
        }
    )*};
}

forward_owned!(LaurentPoly, Add::add, Sub::sub, Mul::mul);

/// A reduced fraction `num / den` of Laurent polynomials.
///
/// Canonical form: `gcd(num, den) = 1`, `den` has lowest exponent 0 with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den).expect("den nonzero");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let lo = den.min_exp().unwrap();
        let lead = den.coeff(lo).recip();
        RationalFn {
            num: num.shift(-lo).scale(&lead),
            den: den.shift(-lo).scale(&lead),
        }
    }

    pub fn zero() -> Self {
        RationalFn {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial itself when the denominator is 1.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RationalFn) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn substitute(&self, k: i64) -> Result<Self> {
        Self::new(self.num.substitute(k)?, self.den.substitute(k)?)
    }

    /// Multiplies by a polynomial and demands a polynomial result.
    pub fn mul_to_poly(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        (&self.num * p).exact_div(&self.den)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        -&self
    }
}

impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::canonical(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_owned!(RationalFn, Add::add, Sub::sub, Mul::mul);
