use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use rand::rngs::StdRng;
use rand::Rng;
use serde::Serialize;

use crate::algebra::{AlgebraError, ConwayAlgebra};
use crate::poly::{Family, LaurentPoly, Monomial, VarId};

/// An element `(n, F)`: a component count and a polynomial in infinitely
/// many generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiValue {
    pub n: u64,
    pub poly: LaurentPoly,
}

impl fmt::Display for QuasiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n, self.poly)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConstraintCheck {
    pub condition: &'static str,
    pub n: usize,
    pub holds: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Derived {
    Y,
    XPrime,
    YPrime,
    ZPrime,
}

/// Quasi algebra whose operations are defined only when the component counts
/// differ by one. Free generators are `x_i^{±1}`, `z_i` (i >= 1), `y_1^{±1}`,
/// `x'_2^{±1}` and `z'_2`; the others are derived:
///
/// ```text
/// y_i      = x_i y_1 / x_1
/// x'_i     = x'_2 x_1 / x_{i-1}
/// y'_i     = x'_i y_1 / x_1
/// z'_{i+1} = z_{i-1} + x_1 x'_2 (1 + y_1/x_1) (z'_i/x'_i - z_i/x_i)
/// ```
#[derive(Debug, Default)]
pub struct QuasiInfinite {
    cache: RwLock<HashMap<(Derived, u32), LaurentPoly>>,
}

fn var(f: Family, i: u32) -> LaurentPoly {
    LaurentPoly::var(VarId::new(f, i))
}

fn div(p: &LaurentPoly, m: &LaurentPoly) -> LaurentPoly {
    p.div_monomial(m).expect("derived generators are unit monomials")
}

impl QuasiInfinite {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn x(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        if i == 0 {
            return Err(AlgebraError::NoSuchGenerator("x0".into()));
        }
        Ok(var(Family::X, i))
    }

    pub fn z(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        if i == 0 {
            return Err(AlgebraError::NoSuchGenerator("z0".into()));
        }
        Ok(var(Family::Z, i))
    }

    fn cached(
        &self,
        key: (Derived, u32),
        make: impl FnOnce() -> Result<LaurentPoly, AlgebraError>,
    ) -> Result<LaurentPoly, AlgebraError> {
        if let Some(p) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(p.clone());
        }
        let p = make()?;
        self.cache
            .write()
            .expect("cache lock")
            .entry(key)
            .or_insert_with(|| p.clone());
        Ok(p)
    }

    pub fn y(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        match i {
            0 => Err(AlgebraError::NoSuchGenerator("y0".into())),
            1 => Ok(var(Family::Y, 1)),
            _ => self.cached((Derived::Y, i), || {
                Ok(div(&(&self.x(i)? * &self.y(1)?), &self.x(1)?))
            }),
        }
    }

    pub fn x_prime(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        match i {
            0 | 1 => Err(AlgebraError::NoSuchGenerator(format!("x'{i}"))),
            2 => Ok(var(Family::XPrime, 2)),
            _ => self.cached((Derived::XPrime, i), || {
                Ok(div(&(&var(Family::XPrime, 2) * &self.x(1)?), &self.x(i - 1)?))
            }),
        }
    }

    pub fn y_prime(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        if i < 2 {
            return Err(AlgebraError::NoSuchGenerator(format!("y'{i}")));
        }
        self.cached((Derived::YPrime, i), || {
            Ok(div(&(&self.x_prime(i)? * &self.y(1)?), &self.x(1)?))
        })
    }

    pub fn z_prime(&self, i: u32) -> Result<LaurentPoly, AlgebraError> {
        match i {
            0 | 1 => Err(AlgebraError::NoSuchGenerator(format!("z'{i}"))),
            2 => Ok(var(Family::ZPrime, 2)),
            _ => self.cached((Derived::ZPrime, i), || {
                let k = i - 1;
                let (x1, y1) = (self.x(1)?, self.y(1)?);
                let factor = &(&x1 * &self.x_prime(2)?) + &(&y1 * &self.x_prime(2)?);
                let diff = &div(&self.z_prime(k)?, &self.x_prime(k)?) - &div(&self.z(k)?, &self.x(k)?);
                Ok(&self.z(k - 1)? + &(&factor * &diff))
            }),
        }
    }

    fn solve(
        &self,
        op: &'static str,
        u: &QuasiValue,
        v: &QuasiValue,
    ) -> Result<QuasiValue, AlgebraError> {
        let n = u.n;
        let i = n as u32;
        let outside = || AlgebraError::OutsideDomain { op, left: u.to_string(), right: v.to_string() };
        // coefficient of the unknown, coefficient of u, constant term
        let (a, b, c) = if n + 1 == v.n {
            let (x, y) = (self.x(i)?, self.y(i)?);
            if op == "|" { (x, y, self.z(i)?) } else { (y, x, self.z(i)?) }
        } else if v.n + 1 == n {
            let (x, y) = (self.x_prime(i)?, self.y_prime(i)?);
            if op == "|" { (x, y, self.z_prime(i)?) } else { (y, x, self.z_prime(i)?) }
        } else {
            return Err(outside());
        };
        let rhs = &(&v.poly - &c) - &(&b * &u.poly);
        Ok(QuasiValue { n, poly: rhs.div_monomial(&a)? })
    }

    /// Checks the conditions
    ///
    /// ```text
    /// (i)   x_{n-1} x'_n = x_n x'_{n+1}
    /// (ii)  y'_{n+1}/x'_{n+1} = y'_n/x'_n
    /// (iii) y_n/x_n = y_{n-1}/x_{n-1}
    /// (iv)  z'_{n+1}/(x_n x'_{n+1}) + z_n/x_n - y_n z'_n/(x_n x'_n)
    ///         = z_{n-1}/(x'_n x_{n-1}) + z'_n/x'_n - y'_n z_n/(x_n x'_n)
    /// (v)   y_n/x_n = y'_{n+1}/x'_{n+1}
    /// ```
    ///
    /// for `2 <= n <= max_n`.
    pub fn verify_constraints(&self, max_n: usize) -> Result<Vec<ConstraintCheck>, AlgebraError> {
        let mut out = Vec::new();
        for n in 2..=max_n as u32 {
            let (x, xm, xp, xpp) = (self.x(n)?, self.x(n - 1)?, self.x_prime(n)?, self.x_prime(n + 1)?);
            let (y, ym, yp, ypp) = (self.y(n)?, self.y(n - 1)?, self.y_prime(n)?, self.y_prime(n + 1)?);
            let (z, zm, zp, zpp) = (self.z(n)?, self.z(n - 1)?, self.z_prime(n)?, self.z_prime(n + 1)?);
            let i = &xm * &xp == &x * &xpp;
            let ii = div(&ypp, &xpp) == div(&yp, &xp);
            let iii = div(&y, &x) == div(&ym, &xm);
            let x_xp = &x * &xp;
            let lhs = &(&div(&zpp, &(&x * &xpp)) + &div(&z, &x)) - &div(&(&y * &zp), &x_xp);
            let rhs = &(&div(&zm, &(&xp * &xm)) + &div(&zp, &xp)) - &div(&(&yp * &z), &x_xp);
            let iv = lhs == rhs;
            let v = div(&y, &x) == div(&ypp, &xpp);
            for (condition, holds) in [("i", i), ("ii", ii), ("iii", iii), ("iv", iv), ("v", v)] {
                out.push(ConstraintCheck { condition, n: n as usize, holds });
            }
        }
        Ok(out)
    }

    fn random_poly(&self, rng: &mut StdRng) -> LaurentPoly {
        let gens = [
            VarId::new(Family::X, 1),
            VarId::new(Family::X, 2),
            VarId::new(Family::X, 3),
            VarId::new(Family::Y, 1),
            VarId::new(Family::XPrime, 2),
            VarId::new(Family::Z, 1),
            VarId::new(Family::Z, 2),
            VarId::new(Family::ZPrime, 2),
        ];
        let mut p = LaurentPoly::zero();
        for _ in 0..rng.gen_range(1..4) {
            let f: Vec<(VarId, i32)> = (0..2)
                .map(|_| {
                    let g = gens[rng.gen_range(0..gens.len())];
                    let e = if g.is_invertible() { rng.gen_range(-1..3) } else { rng.gen_range(0..2) };
                    (g, e)
                })
                .collect();
            let c: i64 = rng.gen_range(-2..3);
            p = &p + &LaurentPoly::from_term(Monomial::from_unsorted(f), c.into());
        }
        p
    }
}

impl ConwayAlgebra for QuasiInfinite {
    type Value = QuasiValue;

    fn name(&self) -> &'static str {
        "quasi"
    }

    /// `a_1 = (1, 1)`, `a_n = (n, (x_{n-1} + y_{n-1}) F_{n-1} + z_{n-1})`.
    fn constant(&self, n: usize) -> Result<QuasiValue, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::NoSuchConstant(0));
        }
        let mut f = LaurentPoly::one();
        for k in 1..n as u32 {
            f = &(&(&self.x(k)? + &self.y(k)?) * &f) + &self.z(k)?;
        }
        Ok(QuasiValue { n: n as u64, poly: f })
    }

    fn pipe(&self, u: &QuasiValue, v: &QuasiValue) -> Result<QuasiValue, AlgebraError> {
        self.solve("|", u, v)
    }

    fn star(&self, u: &QuasiValue, v: &QuasiValue) -> Result<QuasiValue, AlgebraError> {
        self.solve("*", u, v)
    }

    fn random_element(&self, rng: &mut StdRng) -> QuasiValue {
        QuasiValue { n: rng.gen_range(1..5), poly: self.random_poly(rng) }
    }

    fn random_quadruple(&self, rng: &mut StdRng) -> [QuasiValue; 4] {
        let n: i64 = rng.gen_range(3..6);
        // component counts of (a, b, c, d) for which both sides can be defined
        let shapes: [[i64; 4]; 6] = [
            [0, -1, 1, 0],
            [0, 1, -1, 0],
            [0, 1, 1, 0],
            [0, 1, 1, 2],
            [0, -1, -1, -2],
            [0, -1, -1, 0],
        ];
        let s = shapes[rng.gen_range(0..shapes.len())];
        s.map(|d| QuasiValue { n: (n + d) as u64, poly: self.random_poly(rng) })
    }
}
