//! Exact multivariate Laurent polynomials with integer coefficients.
//!
//! Every polynomial algebra in the crate carries its values in [`LaurentPoly`].
//! Generators belong to one of six families (`x`, `y`, `z` and their primed
//! variants) and carry an index; index `0` is the plain unindexed symbol used
//! by the two- and three-variable algebras. Only `x`, `x'` and `y`/`y1` may
//! appear with negative exponents.
//!
//! # Text form
//!
//! ```text
//! poly    := "0" | ["-"] term (("+" | "-") term)*
//! term    := integer | [integer "*"] monomial
//! monomial:= factor ("*" factor)*
//! factor  := var ["^" ["-"] integer]
//! var     := ("x" | "y" | "z") ["'"] [index]
//! ```
//!
//! Terms are printed in canonical order: monomials compare factor by factor on
//! `(family, index, exponent)`, and a monomial that runs out of factors sorts
//! after any monomial that still has one. The constant term is therefore last:
//! `x^-1*y^-1 - x^-1*y - x*y^-1 - 1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("divisor is not a unit monomial: {0}")]
    NonUnitDivisor(String),
    #[error("negative exponent on non-invertible generator {0}")]
    NotInvertible(VarId),
    #[error("variable {0} has no binding")]
    UnboundVariable(VarId),
    #[error("zero substituted for invertible generator {0}")]
    ZeroSubstitutedForUnit(VarId),
    #[error("substituted value for {0} is not a unit and appears with a negative exponent")]
    NonUnitSubstitution(VarId),
    #[error("specialization does not clear denominators")]
    NonLaurentResult,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    X,
    Y,
    Z,
    XPrime,
    YPrime,
    ZPrime,
}

impl Family {
    fn symbol(self) -> &'static str {
        match self {
            Family::X => "x",
            Family::Y => "y",
            Family::Z => "z",
            Family::XPrime => "x'",
            Family::YPrime => "y'",
            Family::ZPrime => "z'",
        }
    }
}

/// A polynomial generator. Index `0` denotes the plain symbol (`x`, `y`, `z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub family: Family,
    pub index: u32,
}

impl VarId {
    pub const X: VarId = VarId::new(Family::X, 0);
    pub const Y: VarId = VarId::new(Family::Y, 0);
    pub const Z: VarId = VarId::new(Family::Z, 0);

    pub const fn new(family: Family, index: u32) -> Self {
        VarId { family, index }
    }

    pub fn is_invertible(&self) -> bool {
        match self.family {
            Family::X | Family::XPrime => true,
            Family::Y => self.index <= 1,
            Family::Z | Family::YPrime | Family::ZPrime => false,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 0 {
            write!(f, "{}", self.family.symbol())
        } else {
            write!(f, "{}{}", self.family.symbol(), self.index)
        }
    }
}

/// Sparse exponent vector, sorted by generator, without zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(VarId, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn factors(&self) -> &[(VarId, i32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: VarId) -> i32 {
        self.0
            .iter()
            .find(|(v, _)| *v == var)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn from_unsorted(mut factors: Vec<(VarId, i32)>) -> Self {
        factors.sort_by_key(|(v, _)| *v);
        let mut out: Vec<(VarId, i32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match out.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Monomial(out)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    fn map_vars(&self, f: &impl Fn(VarId) -> VarId) -> Monomial {
        Monomial::from_unsorted(self.0.iter().map(|&(v, e)| (f(v), e)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        // a monomial with fewer factors sorts later
        other.0.len().cmp(&self.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate Laurent polynomial in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_term(Monomial::one(), BigInt::from(c))
    }

    pub fn var(v: VarId) -> Self {
        Self::from_term(Monomial(vec![(v, 1)]), BigInt::one())
    }

    /// `v^exp`; negative powers are only allowed for invertible generators.
    pub fn var_pow(v: VarId, exp: i32) -> Result<Self, PolyError> {
        if exp < 0 && !v.is_invertible() {
            return Err(PolyError::NotInvertible(v));
        }
        Ok(Self::from_term(Monomial::from_unsorted(vec![(v, exp)]), BigInt::one()))
    }

    pub fn from_term(m: Monomial, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// Builds a polynomial from `(coefficient, [(var, exp)])` pairs.
    pub fn from_terms<I>(terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (i64, Vec<(VarId, i32)>)>,
    {
        let mut p = LaurentPoly::zero();
        for (c, factors) in terms {
            for &(v, e) in &factors {
                if e < 0 && !v.is_invertible() {
                    return Err(PolyError::NotInvertible(v));
                }
            }
            p.add_term(Monomial::from_unsorted(factors), BigInt::from(c));
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| *v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Exact division by a unit monomial (single term, coefficient ±1, only
    /// invertible generators).
    pub fn div_monomial(&self, divisor: &LaurentPoly) -> Result<Self, PolyError> {
        let (m, c) = divisor
            .as_unit_monomial()
            .ok_or_else(|| PolyError::NonUnitDivisor(divisor.to_string()))?;
        let inv = m.inverse();
        Ok(LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, k)| (t.mul(&inv), if c.is_negative() { -k } else { k.clone() }))
                .collect(),
        })
    }

    fn as_unit_monomial(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !(c.is_one() || (-c).is_one()) {
            return None;
        }
        if m.0.iter().any(|(v, _)| !v.is_invertible()) {
            return None;
        }
        Some((m, c))
    }

    /// Renames generators; used for the mirror identity (`x <-> y`).
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f), c.clone());
        }
        out
    }

    pub fn swap_vars(&self, a: VarId, b: VarId) -> Self {
        self.map_vars(|v| {
            if v == a {
                b
            } else if v == b {
                a
            } else {
                v
            }
        })
    }

    /// Exact evaluation at rational points.
    pub fn substitute_numeric(
        &self,
        bindings: &BTreeMap<VarId, BigRational>,
    ) -> Result<BigRational, PolyError> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for &(v, e) in &m.0 {
                let val = bindings.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                if val.is_zero() && (e < 0 || v.is_invertible()) {
                    return Err(PolyError::ZeroSubstitutedForUnit(v));
                }
                term *= num_traits::pow::Pow::pow(val, e);
            }
            total += term;
        }
        Ok(total)
    }

    /// Evaluation into a one-variable Laurent ring where every generator is
    /// bound to `numerator / denominator^k` for one shared `denominator`.
    pub fn substitute_univariate(&self, subst: &UnivariateSubstitution) -> Result<UniLaurent, PolyError> {
        let mut pieces: Vec<(UniLaurent, i64)> = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut num = UniLaurent::constant(c.clone());
            let mut den_power: i64 = 0;
            for &(v, e) in &m.0 {
                let (bn, bk) = subst.bindings.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                if bn.is_zero() {
                    return Err(PolyError::ZeroSubstitutedForUnit(v));
                }
                if e >= 0 {
                    num = &num * &bn.pow(e as u32);
                } else {
                    let inv = bn.unit_inverse().ok_or(PolyError::NonUnitSubstitution(v))?;
                    num = &num * &inv.pow((-e) as u32);
                }
                den_power += (*bk as i64) * e as i64;
            }
            pieces.push((num, den_power));
        }
        let kmax = pieces.iter().map(|(_, k)| *k).max().unwrap_or(0).max(0);
        let mut acc = UniLaurent::zero();
        for (num, k) in pieces {
            let lift = subst.denominator.pow((kmax - k) as u32);
            acc = &acc + &(&num * &lift);
        }
        for _ in 0..kmax {
            acc = acc
                .div_exact(&subst.denominator)
                .ok_or(PolyError::NonLaurentResult)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let bytes = compact.as_bytes();
        let mut out = LaurentPoly::zero();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if !first {
                return Err(PolyError::Parse(format!("expected sign at offset {pos}")));
            }
            first = false;
            // term ends at the next top-level '+' or '-' not following '^'
            let start = pos;
            while pos < bytes.len() {
                let b = bytes[pos];
                if (b == b'+' || b == b'-') && pos > start && bytes[pos - 1] != b'^' {
                    break;
                }
                pos += 1;
            }
            let (m, c) = parse_term(&compact[start..pos])?;
            out.add_term(m, c * sign);
        }
        Ok(out)
    }
}

fn parse_term(t: &str) -> Result<(Monomial, BigInt), PolyError> {
    if t.is_empty() {
        return Err(PolyError::Parse("empty term".into()));
    }
    let mut coef = BigInt::one();
    let mut factors = Vec::new();
    for (i, part) in t.split('*').enumerate() {
        if part.is_empty() {
            return Err(PolyError::Parse(format!("bad term {t:?}")));
        }
        if part.as_bytes()[0].is_ascii_digit() {
            if i != 0 {
                return Err(PolyError::Parse(format!("coefficient must lead term {t:?}")));
            }
            coef = part
                .parse::<BigInt>()
                .map_err(|_| PolyError::Parse(format!("bad coefficient {part:?}")))?;
            continue;
        }
        let (var_txt, exp) = match part.split_once('^') {
            Some((v, e)) => (
                v,
                e.parse::<i32>()
                    .map_err(|_| PolyError::Parse(format!("bad exponent {e:?}")))?,
            ),
            None => (part, 1),
        };
        let var = parse_var(var_txt)?;
        if exp < 0 && !var.is_invertible() {
            return Err(PolyError::NotInvertible(var));
        }
        factors.push((var, exp));
    }
    Ok((Monomial::from_unsorted(factors), coef))
}

fn parse_var(v: &str) -> Result<VarId, PolyError> {
    let mut chars = v.chars();
    let base = chars.next().ok_or_else(|| PolyError::Parse("empty variable".into()))?;
    let rest: &str = &v[1..];
    let (primed, digits) = match rest.strip_prefix('\'') {
        Some(d) => (true, d),
        None => (false, rest),
    };
    let family = match (base, primed) {
        ('x', false) => Family::X,
        ('y', false) => Family::Y,
        ('z', false) => Family::Z,
        ('x', true) => Family::XPrime,
        ('y', true) => Family::YPrime,
        ('z', true) => Family::ZPrime,
        _ => return Err(PolyError::Parse(format!("unknown variable {v:?}"))),
    };
    let index = if digits.is_empty() {
        0
    } else {
        digits
            .parse::<u32>()
            .map_err(|_| PolyError::Parse(format!("bad index in {v:?}")))?
    };
    Ok(VarId::new(family, index))
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Laurent polynomial in one formal variable (`z` for Conway, `s = t^(1/2)`
/// for Jones).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

impl UniLaurent {
    pub fn zero() -> Self {
        UniLaurent::default()
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        UniLaurent { coeffs }
    }

    pub fn from_coeffs(pairs: &[(i64, i64)]) -> Self {
        let mut out = UniLaurent::zero();
        for &(e, c) in pairs {
            out.add_term(e, BigInt::from(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = UniLaurent::constant(BigInt::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn unit_inverse(&self) -> Option<UniLaurent> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next()?;
        if c.is_one() || (-c).is_one() {
            Some(UniLaurent::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    /// Exact division; `None` if the divisor does not divide.
    pub fn div_exact(&self, divisor: &UniLaurent) -> Option<UniLaurent> {
        if divisor.is_zero() {
            return None;
        }
        let (&dlo, _) = divisor.coeffs.iter().next()?;
        let (&dhi, dlead) = divisor.coeffs.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = UniLaurent::zero();
        while let Some((&rhi, rlead)) = rem.coeffs.iter().next_back() {
            let rlo = *rem.coeffs.keys().next()?;
            if rhi - rlo < dhi - dlo {
                return None;
            }
            if !(rlead % dlead).is_zero() {
                return None;
            }
            let q = UniLaurent::monomial(rlead / dlead, rhi - dhi);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Some(quot)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * at.powi(*e as i32))
            .sum()
    }

    /// Display with the given variable name, highest power first.
    pub fn display_with(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            s.push_str(match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mono = match *e {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{abs}*{mono}"));
            }
        }
        s
    }
}

impl<'a> Add<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn add(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn sub(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<'a> Mul<&'a UniLaurent> for &'a UniLaurent {
    type Output = UniLaurent;
    fn mul(self, rhs: &UniLaurent) -> UniLaurent {
        let mut out = UniLaurent::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

/// Bindings `v -> numerator / denominator^k` sharing a single denominator.
#[derive(Clone, Debug)]
pub struct UnivariateSubstitution {
    pub denominator: UniLaurent,
    pub bindings: BTreeMap<VarId, (UniLaurent, u32)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels_and_has_identity() {
        assert_eq!(&p("x + y") + &p("-x"), p("y"));
        assert_eq!(&p("x + y") + &LaurentPoly::zero(), p("x + y"));
    }

    #[test]
    fn binomial_square() {
        let s = p("x + y");
        assert_eq!(&s * &s, p("x^2 + 2*x*y + y^2"));
        assert!((&(&s * &s) - &p("x^2+2*x*y+y^2")).is_zero());
    }

    #[test]
    fn invertible_generators_cancel() {
        assert!((&p("x") * &p("x^-1")).is_one());
        assert!((&p("x+y") * &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn div_monomial_examples() {
        let q = p("1 - x*y - y^2").div_monomial(&p("x")).unwrap();
        assert_eq!(q, p("x^-1 - y - x^-1*y^2"));
        assert_eq!(&q * &p("x"), p("1 - x*y - y^2"));
        assert_eq!(p("x + 3").div_monomial(&LaurentPoly::one()).unwrap(), p("x + 3"));
        assert_eq!(p("x1*x'2").div_monomial(&p("x1")).unwrap(), p("x'2"));
        assert_eq!(p("x").div_monomial(&p("-x")).unwrap(), p("-1"));
    }

    #[test]
    fn div_monomial_rejects_non_units() {
        assert!(matches!(p("x").div_monomial(&p("2*x")), Err(PolyError::NonUnitDivisor(_))));
        assert!(matches!(p("x").div_monomial(&p("z")), Err(PolyError::NonUnitDivisor(_))));
        assert!(matches!(p("x").div_monomial(&p("x + y")), Err(PolyError::NonUnitDivisor(_))));
    }

    #[test]
    fn z_family_cannot_be_inverted() {
        assert!(matches!(LaurentPoly::var_pow(VarId::Z, -1), Err(PolyError::NotInvertible(_))));
        assert!("z^-1".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn canonical_display() {
        let v = p("-1 - x*y^-1 + x^-1*y^-1 - x^-1*y");
        assert_eq!(v.to_string(), "x^-1*y^-1 - x^-1*y - x*y^-1 - 1");
        assert_eq!(p("x'2*x1 + z'3").to_string(), "x1*x'2 + z'3");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-2*x^3").to_string(), "-2*x^3");
    }

    #[test]
    fn numeric_substitution() {
        let mut b = BTreeMap::new();
        b.insert(VarId::X, BigRational::from_integer(2.into()));
        b.insert(VarId::Y, BigRational::from_integer(3.into()));
        assert_eq!(p("x + y").substitute_numeric(&b).unwrap(), BigRational::from_integer(5.into()));
        assert!(matches!(p("z").substitute_numeric(&b), Err(PolyError::UnboundVariable(_))));
        b.insert(VarId::X, BigRational::zero());
        assert!(matches!(
            p("x^-1").substitute_numeric(&b),
            Err(PolyError::ZeroSubstitutedForUnit(_))
        ));
    }

    #[test]
    fn univariate_division() {
        let a = UniLaurent::from_coeffs(&[(4, 1), (0, -1)]);
        let q = UniLaurent::from_coeffs(&[(2, 1), (0, -1)]);
        assert_eq!(a.div_exact(&q).unwrap(), UniLaurent::from_coeffs(&[(2, 1), (0, 1)]));
        assert!(UniLaurent::from_coeffs(&[(1, 1)]).div_exact(&q).is_none());
        assert_eq!(a.display_with("s"), "s^4 - 1");
    }
}
