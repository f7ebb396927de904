//! Concrete Conway algebras.

mod polys;
mod quasi;
mod specialize;

use std::fmt;

use rand::rngs::StdRng;
use rand::Rng;

use crate::algebra::{AlgebraError, ConwayAlgebra};

pub use polys::{random_poly, ThreeVar, TwoVar};
pub use quasi::{ConstraintCheck, QuasiInfinite, QuasiValue};
pub use specialize::{conway, conway_substitution, jones, jones_substitution, referee_identity_holds};

fn nonzero(n: usize) -> Result<(), AlgebraError> {
    if n == 0 {
        Err(AlgebraError::NoSuchConstant(0))
    } else {
        Ok(())
    }
}

/// Number of components: `a_i = i`, `i | j = i * j = i`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Components;

impl ConwayAlgebra for Components {
    type Value = u64;

    fn name(&self) -> &'static str {
        "components"
    }

    fn constant(&self, n: usize) -> Result<u64, AlgebraError> {
        nonzero(n)?;
        Ok(n as u64)
    }

    fn pipe(&self, u: &u64, _v: &u64) -> Result<u64, AlgebraError> {
        Ok(*u)
    }

    fn star(&self, u: &u64, _v: &u64) -> Result<u64, AlgebraError> {
        Ok(*u)
    }

    fn random_element(&self, rng: &mut StdRng) -> u64 {
        rng.gen_range(1..8)
    }
}

/// Three elements, `*` equal to `|`, `a_i = i mod 3`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Mod3;

const MOD3_TABLE: [[u8; 3]; 3] = [
    // row u, column v: u | v
    [1, 0, 2],
    [0, 2, 1],
    [2, 1, 0],
];

impl ConwayAlgebra for Mod3 {
    type Value = u8;

    fn name(&self) -> &'static str {
        "mod3"
    }

    fn constant(&self, n: usize) -> Result<u8, AlgebraError> {
        nonzero(n)?;
        Ok((n % 3) as u8)
    }

    fn pipe(&self, u: &u8, v: &u8) -> Result<u8, AlgebraError> {
        Ok(MOD3_TABLE[*u as usize][*v as usize])
    }

    fn star(&self, u: &u8, v: &u8) -> Result<u8, AlgebraError> {
        self.pipe(u, v)
    }

    fn circle(&self, u: &u8, v: &u8) -> Result<u8, AlgebraError> {
        let hits: Vec<u8> = (0..3)
            .filter(|w| MOD3_TABLE[*v as usize][*w as usize] == *u && MOD3_TABLE[*u as usize][*w as usize] == *v)
            .collect();
        match hits.as_slice() {
            [w] => Ok(*w),
            _ => Err(AlgebraError::OutsideDomain { op: "circle", left: u.to_string(), right: v.to_string() }),
        }
    }

    fn elements(&self) -> Option<Vec<u8>> {
        Some(vec![0, 1, 2])
    }

    fn random_element(&self, rng: &mut StdRng) -> u8 {
        rng.gen_range(0..3)
    }
}

/// Pair (number of components, linking weight).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkValue {
    pub components: u64,
    pub weight: i64,
}

impl fmt::Display for LinkValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.components, self.weight)
    }
}

/// `a_i = (i, 0)`; `(a,b)|(c,d) = (a, b-1)` and `(a,b)*(c,d) = (a, b+1)`
/// when `a > c`, otherwise the left argument.
#[derive(Clone, Copy, Debug, Default)]
pub struct Linking;

impl ConwayAlgebra for Linking {
    type Value = LinkValue;

    fn name(&self) -> &'static str {
        "linking"
    }

    fn constant(&self, n: usize) -> Result<LinkValue, AlgebraError> {
        nonzero(n)?;
        Ok(LinkValue { components: n as u64, weight: 0 })
    }

    fn pipe(&self, u: &LinkValue, v: &LinkValue) -> Result<LinkValue, AlgebraError> {
        let d = if u.components > v.components { -1 } else { 0 };
        Ok(LinkValue { components: u.components, weight: u.weight + d })
    }

    fn star(&self, u: &LinkValue, v: &LinkValue) -> Result<LinkValue, AlgebraError> {
        let d = if u.components > v.components { 1 } else { 0 };
        Ok(LinkValue { components: u.components, weight: u.weight + d })
    }

    fn random_element(&self, rng: &mut StdRng) -> LinkValue {
        LinkValue { components: rng.gen_range(1..6), weight: rng.gen_range(-4..5) }
    }
}

/// Names accepted on the command line.
pub const ALGEBRA_NAMES: [&str; 6] = ["components", "mod3", "P2", "P3", "linking", "quasi"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{verify_axioms, AxiomOptions};

    #[test]
    fn mod3_table_matches_listing() {
        // 0|0=1, 1|0=0, 2|0=2, 0|1=0, 1|1=2, 2|1=1, 0|2=2, 1|2=1, 2|2=0
        let listed = [(0, 0, 1), (1, 0, 0), (2, 0, 2), (0, 1, 0), (1, 1, 2), (2, 1, 1), (0, 2, 2), (1, 2, 1), (2, 2, 0)];
        for (u, v, w) in listed {
            assert_eq!(Mod3.pipe(&u, &v).unwrap(), w, "{u}|{v}");
        }
    }

    #[test]
    fn mod3_exhaustive_axioms() {
        let r = verify_axioms(&Mod3, &AxiomOptions { exhaustive: true, ..Default::default() });
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.exhaustive);
        assert_eq!(r.checks[2].trials, 81);
    }

    #[test]
    fn mod3_circle_recovers_constants() {
        // a_n = a_{n-1} o a_{n-1}
        for n in 2..8 {
            let p = Mod3.constant(n - 1).unwrap();
            assert_eq!(Mod3.circle(&p, &p).unwrap(), Mod3.constant(n).unwrap());
        }
    }

    #[test]
    fn components_and_linking_pass() {
        let o = AxiomOptions::default();
        assert!(verify_axioms(&Components, &o).passed());
        let r = verify_axioms(&Linking, &o);
        assert!(r.passed(), "{}", r.to_json());
    }

    #[test]
    fn linking_case_split() {
        let a = LinkValue { components: 2, weight: 0 };
        let b = LinkValue { components: 1, weight: 5 };
        assert_eq!(Linking.pipe(&a, &b).unwrap().weight, -1);
        assert_eq!(Linking.star(&a, &b).unwrap().weight, 1);
        assert_eq!(Linking.pipe(&b, &a).unwrap(), b);
        assert_eq!(Linking.star(&b, &a).unwrap(), b);
    }
}
