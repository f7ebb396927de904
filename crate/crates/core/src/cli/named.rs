//! Algebras selected by name.

use serde_json::{json, Value as Json};

use crate::algebra::{verify_axioms, AxiomOptions, AxiomReport};
use crate::diagram::Diagram;
use crate::invariants::{evaluate, simplex_equivalent, weighted_simplex, EvalOptions};
use crate::skein::SkeinError;
use crate::zoo::{Components, Linking, Mod3, QuasiInfinite, ThreeVar, TwoVar, ALGEBRA_NAMES};

pub struct Zoo {
    quasi: QuasiInfinite,
}

macro_rules! with_algebra {
    ($zoo:expr, $name:expr, $alg:ident => $body:expr) => {
        match $name {
            "components" => {
                let $alg = &Components;
                $body
            }
            "mod3" => {
                let $alg = &Mod3;
                $body
            }
            "P2" => {
                let $alg = &TwoVar;
                $body
            }
            "P3" => {
                let $alg = &ThreeVar;
                $body
            }
            "linking" => {
                let $alg = &Linking;
                $body
            }
            "quasi" => {
                let $alg = &$zoo.quasi;
                $body
            }
            other => unreachable!("algebra names are validated by the parser: {other}"),
        }
    };
}

pub fn parse_algebra(s: &str) -> Result<String, String> {
    if ALGEBRA_NAMES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!("unknown algebra {s:?}; expected one of {}", ALGEBRA_NAMES.join(", ")))
    }
}

/// Weighted simplex of one diagram, plus the equivalence verdict against a
/// second one.
pub struct SimplexResult {
    pub first: Json,
    pub second: Option<Json>,
    pub equivalent: Option<bool>,
}

impl Zoo {
    pub fn new() -> Self {
        Zoo { quasi: QuasiInfinite::new() }
    }

    pub fn evaluate(&self, name: &str, d: &Diagram, opts: EvalOptions) -> Result<String, SkeinError> {
        with_algebra!(self, name, a => Ok(evaluate(a, d, opts)?.to_string()))
    }

    pub fn axioms(&self, name: &str, opts: &AxiomOptions) -> AxiomReport {
        with_algebra!(self, name, a => verify_axioms(a, opts))
    }

    /// Conditions on the generators of the quasi algebra, as JSON.
    pub fn quasi_constraints(&self, max_n: usize) -> Result<Json, SkeinError> {
        let checks = self.quasi.verify_constraints(max_n)?;
        let ok = checks.iter().all(|c| c.holds);
        Ok(json!({ "algebra": "quasi", "constraints": checks, "passed": ok }))
    }

    pub fn simplex(
        &self,
        name: &str,
        d: &Diagram,
        other: Option<&Diagram>,
        opts: EvalOptions,
    ) -> Result<SimplexResult, SkeinError> {
        with_algebra!(self, name, a => {
            let s = weighted_simplex(a, d, opts)?;
            let t = other.map(|o| weighted_simplex(a, o, opts)).transpose()?;
            Ok(SimplexResult {
                first: s.to_json(),
                second: t.as_ref().map(|t| t.to_json()),
                equivalent: t.as_ref().map(|t| simplex_equivalent(&s, t)),
            })
        })
    }
}

impl Default for Zoo {
    fn default() -> Self {
        Zoo::new()
    }
}
