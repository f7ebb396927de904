//! One-variable specializations of the two-variable invariant.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::poly::{LaurentPoly, PolyError, UniLaurent, UnivariateSubstitution, VarId};

/// `x = -1/z`, `y = 1/z`; the result is a Laurent polynomial in `z`.
pub fn conway_substitution() -> UnivariateSubstitution {
    UnivariateSubstitution {
        denominator: UniLaurent::constant(BigInt::from(1)),
        bindings: BTreeMap::from([
            (VarId::X, (UniLaurent::from_coeffs(&[(-1, -1)]), 0)),
            (VarId::Y, (UniLaurent::from_coeffs(&[(-1, 1)]), 0)),
        ]),
    }
}

/// `x = t^-1 / (t^1/2 - t^-1/2)`, `y = -t / (t^1/2 - t^-1/2)`, written in
/// `s = t^1/2` as `x = s^-1 / (s^2 - 1)` and `y = -s^3 / (s^2 - 1)`.
pub fn jones_substitution() -> UnivariateSubstitution {
    UnivariateSubstitution {
        denominator: UniLaurent::from_coeffs(&[(2, 1), (0, -1)]),
        bindings: BTreeMap::from([
            (VarId::X, (UniLaurent::from_coeffs(&[(-1, 1)]), 1)),
            (VarId::Y, (UniLaurent::from_coeffs(&[(3, -1)]), 1)),
        ]),
    }
}

pub fn conway(p: &LaurentPoly) -> Result<UniLaurent, PolyError> {
    p.substitute_univariate(&conway_substitution())
}

/// Jones value as a Laurent polynomial in `s = t^1/2`.
pub fn jones(p: &LaurentPoly) -> Result<UniLaurent, PolyError> {
    p.substitute_univariate(&jones_substitution())
}

/// `(1 - x - y) w = (1 - x - y - z) w' + z` for the three-variable value `w`
/// and two-variable value `w'` of one link.
pub fn referee_identity_holds(three: &LaurentPoly, two: &LaurentPoly) -> bool {
    let s = &LaurentPoly::var(VarId::X) + &LaurentPoly::var(VarId::Y);
    let base = &LaurentPoly::one() - &s;
    let z = LaurentPoly::var(VarId::Z);
    &base * three == &(&(&base - &z) * two) + &z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_specializes_to_one() {
        let one = LaurentPoly::one();
        assert_eq!(conway(&one).unwrap(), UniLaurent::constant(1.into()));
        assert_eq!(jones(&one).unwrap(), UniLaurent::constant(1.into()));
        assert!(referee_identity_holds(&one, &one));
    }

    #[test]
    fn two_unknots() {
        // a_2 = x + y: Conway 0, Jones -(s + s^-1)
        let a2: LaurentPoly = "x + y".parse().unwrap();
        assert!(conway(&a2).unwrap().is_zero());
        assert_eq!(jones(&a2).unwrap(), UniLaurent::from_coeffs(&[(1, -1), (-1, -1)]));
    }
}
