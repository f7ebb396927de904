use rand::rngs::StdRng;
use rand::Rng;

use crate::algebra::{AlgebraError, ConwayAlgebra};
use crate::poly::{LaurentPoly, Monomial, VarId};

fn x() -> LaurentPoly {
    LaurentPoly::var(VarId::X)
}

fn y() -> LaurentPoly {
    LaurentPoly::var(VarId::Y)
}

/// `a_1 = 1`, `a_n = (x + y) a_{n-1} + z`.
fn constant(n: usize, z: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::NoSuchConstant(0));
    }
    let s = &x() + &y();
    let mut a = LaurentPoly::one();
    for _ in 1..n {
        a = &(&s * &a) + z;
    }
    Ok(a)
}

// x w1 + y w2 = w0 - z, where w1 = u | w0 and w2 = u * w0 solve for the
// missing argument
fn pipe(u: &LaurentPoly, v: &LaurentPoly, z: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    Ok((&(v - z) - &(&y() * u)).div_monomial(&x())?)
}

fn star(u: &LaurentPoly, v: &LaurentPoly, z: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
    Ok((&(v - z) - &(&x() * u)).div_monomial(&y())?)
}

/// A small random Laurent polynomial in `x`, `y` and, if `with_z`, `z`.
pub fn random_poly(rng: &mut StdRng, with_z: bool) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for _ in 0..rng.gen_range(1..4) {
        let mut f = vec![(VarId::X, rng.gen_range(-2..3)), (VarId::Y, rng.gen_range(-2..3))];
        if with_z {
            f.push((VarId::Z, rng.gen_range(0..3)));
        }
        let c: i64 = rng.gen_range(-3..4);
        p = &p + &LaurentPoly::from_term(Monomial::from_unsorted(f), c.into());
    }
    p
}

/// Two-variable polynomial algebra: `x w_1 + y w_2 = w_0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TwoVar;

impl ConwayAlgebra for TwoVar {
    type Value = LaurentPoly;

    fn name(&self) -> &'static str {
        "P2"
    }

    fn constant(&self, n: usize) -> Result<LaurentPoly, AlgebraError> {
        constant(n, &LaurentPoly::zero())
    }

    fn pipe(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        pipe(u, v, &LaurentPoly::zero())
    }

    fn star(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        star(u, v, &LaurentPoly::zero())
    }

    fn circle(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        Ok(&(&x() * u) + &(&y() * v))
    }

    fn random_element(&self, rng: &mut StdRng) -> LaurentPoly {
        random_poly(rng, false)
    }
}

/// Three-variable polynomial algebra: `x w_1 + y w_2 = w_0 - z`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ThreeVar;

impl ConwayAlgebra for ThreeVar {
    type Value = LaurentPoly;

    fn name(&self) -> &'static str {
        "P3"
    }

    fn constant(&self, n: usize) -> Result<LaurentPoly, AlgebraError> {
        constant(n, &LaurentPoly::var(VarId::Z))
    }

    fn pipe(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        pipe(u, v, &LaurentPoly::var(VarId::Z))
    }

    fn star(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        star(u, v, &LaurentPoly::var(VarId::Z))
    }

    fn circle(&self, u: &LaurentPoly, v: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        Ok(&(&(&x() * u) + &(&y() * v)) + &LaurentPoly::var(VarId::Z))
    }

    fn random_element(&self, rng: &mut StdRng) -> LaurentPoly {
        random_poly(rng, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_axioms, AxiomOptions};

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn twovar_pipe_example() {
        let r = TwoVar.pipe(&p("x + y"), &p("1")).unwrap();
        assert_eq!(r, p("x^-1 - y - x^-1*y^2"));
        // back-substitution
        assert!((&(&p("x") * &r) + &(&p("y") * &p("x + y"))).is_one());
        assert_eq!(TwoVar.star(&p("1"), &p("1")).unwrap(), p("y^-1 - x*y^-1"));
    }

    #[test]
    fn threevar_circle_gives_a2() {
        let one = LaurentPoly::one();
        assert_eq!(ThreeVar.circle(&one, &one).unwrap(), ThreeVar.constant(2).unwrap());
        assert_eq!(ThreeVar.constant(2).unwrap(), p("x + y + z"));
    }

    #[test]
    fn polynomial_axioms() {
        let o = AxiomOptions { samples: 60, ..Default::default() };
        for r in [verify_axioms(&TwoVar, &o), verify_axioms(&ThreeVar, &o)] {
            assert!(r.passed(), "{}", r.to_json());
        }
    }
}
