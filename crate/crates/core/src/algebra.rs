//! Conway algebras: a set with constants `a_1, a_2, ...` and two binary
//! operations `|` and `*`.
//!
//! The operations may be partial (quasi algebras); an operation outside its
//! domain returns [`AlgebraError::OutsideDomain`].

use std::fmt;
use std::hash::Hash;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use thiserror::Error;

use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{op} is not defined on ({left}, {right})")]
    OutsideDomain {
        op: &'static str,
        left: String,
        right: String,
    },
    #[error("no constant a_{0}")]
    NoSuchConstant(usize),
    #[error("no generator {0}")]
    NoSuchGenerator(String),
    #[error("{0} is not supported by this algebra")]
    Unsupported(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub trait ConwayAlgebra: Sync {
    type Value: Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn name(&self) -> &'static str;

    /// `a_n` for `n >= 1`: the value of the trivial link with `n` components.
    fn constant(&self, n: usize) -> Result<Self::Value, AlgebraError>;

    fn pipe(&self, u: &Self::Value, v: &Self::Value) -> Result<Self::Value, AlgebraError>;

    fn star(&self, u: &Self::Value, v: &Self::Value) -> Result<Self::Value, AlgebraError>;

    /// The unique `w` with `v | w = u` and `u * w = v`, where it exists.
    fn circle(&self, _u: &Self::Value, _v: &Self::Value) -> Result<Self::Value, AlgebraError> {
        Err(AlgebraError::Unsupported("circle"))
    }

    /// Every element, for finite algebras.
    fn elements(&self) -> Option<Vec<Self::Value>> {
        None
    }

    /// A random element for axiom sampling.
    fn random_element(&self, rng: &mut StdRng) -> Self::Value;

    /// Four elements for the transposition laws. Partial algebras override
    /// this to land inside their domain often.
    fn random_quadruple(&self, rng: &mut StdRng) -> [Self::Value; 4] {
        [
            self.random_element(rng),
            self.random_element(rng),
            self.random_element(rng),
            self.random_element(rng),
        ]
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: String,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub algebra: String,
    pub exhaustive: bool,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0 && c.trials > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AxiomOptions {
    /// In-domain samples wanted per law.
    pub samples: usize,
    /// Constants `a_1..=a_max_n` used for the first two laws.
    pub max_n: usize,
    pub seed: u64,
    /// Enumerate all tuples when the algebra is finite.
    pub exhaustive: bool,
}

impl Default for AxiomOptions {
    fn default() -> Self {
        AxiomOptions { samples: 200, max_n: 6, seed: 0x5eed, exhaustive: false }
    }
}

struct Tally {
    check: AxiomCheck,
}

impl Tally {
    fn new(axiom: &str) -> Self {
        Tally {
            check: AxiomCheck { axiom: axiom.into(), trials: 0, failures: 0, counterexample: None },
        }
    }

    /// Records one instance; `None` means a side was undefined.
    fn record<V: PartialEq + fmt::Display>(&mut self, sides: Option<(V, V)>, inputs: &[&V]) {
        let Some((l, r)) = sides else { return };
        self.check.trials += 1;
        if l != r {
            self.check.failures += 1;
            if self.check.counterexample.is_none() {
                let args: Vec<String> = inputs.iter().map(|v| v.to_string()).collect();
                self.check.counterexample = Some(format!("inputs [{}]: {l} != {r}", args.join(", ")));
            }
        }
    }
}

type Quad<A> = [<A as ConwayAlgebra>::Value; 4];

fn transposition<A: ConwayAlgebra>(alg: &A, q: &Quad<A>) -> [Option<(A::Value, A::Value)>; 3] {
    let [a, b, c, d] = q;
    let p = |u: &A::Value, v: &A::Value| alg.pipe(u, v).ok();
    let s = |u: &A::Value, v: &A::Value| alg.star(u, v).ok();
    let l3 = (|| Some((p(&p(a, b)?, &p(c, d)?)?, p(&p(a, c)?, &p(b, d)?)?)))();
    let l4 = (|| Some((s(&p(a, b)?, &p(c, d)?)?, p(&s(a, c)?, &s(b, d)?)?)))();
    let l5 = (|| Some((s(&s(a, b)?, &s(c, d)?)?, s(&s(a, c)?, &s(b, d)?)?)))();
    [l3, l4, l5]
}

fn inverse_laws<A: ConwayAlgebra>(alg: &A, a: &A::Value, b: &A::Value) -> [Option<(A::Value, A::Value)>; 2] {
    let l6 = alg.pipe(a, b).and_then(|ab| alg.star(&ab, b)).ok().map(|v| (v, a.clone()));
    let l7 = alg.star(a, b).and_then(|ab| alg.pipe(&ab, b)).ok().map(|v| (v, a.clone()));
    [l6, l7]
}

pub const LAWS: [&str; 7] = [
    "a_n|a_n+1 = a_n",
    "a_n*a_n+1 = a_n",
    "(a|b)|(c|d) = (a|c)|(b|d)",
    "(a|b)*(c|d) = (a*c)|(b*d)",
    "(a*b)*(c*d) = (a*c)*(b*d)",
    "(a|b)*b = a",
    "(a*b)|b = a",
];

/// Checks the seven Conway algebra laws, each reported under its own
/// statement.
///
/// Instances where some operation is undefined are skipped; a law with no
/// defined instance counts as failed.
pub fn verify_axioms<A: ConwayAlgebra>(alg: &A, opts: &AxiomOptions) -> AxiomReport {
    let mut t: Vec<Tally> = LAWS
        .iter()
        .map(|a| Tally::new(a))
        .collect();
    for n in 1..=opts.max_n {
        let (Ok(an), Ok(an1)) = (alg.constant(n), alg.constant(n + 1)) else { continue };
        let l1 = alg.pipe(&an, &an1).ok().map(|v| (v, an.clone()));
        let l2 = alg.star(&an, &an1).ok().map(|v| (v, an.clone()));
        t[0].record(l1, &[&an, &an1]);
        t[1].record(l2, &[&an, &an1]);
    }
    let elems = if opts.exhaustive { alg.elements() } else { None };
    let exhaustive = elems.is_some();
    if let Some(el) = elems {
        for a in &el {
            for b in &el {
                for (k, r) in inverse_laws(alg, a, b).into_iter().enumerate() {
                    t[5 + k].record(r, &[a, b]);
                }
                for c in &el {
                    for d in &el {
                        let q = [a.clone(), b.clone(), c.clone(), d.clone()];
                        for (k, r) in transposition(alg, &q).into_iter().enumerate() {
                            t[2 + k].record(r, &[a, b, c, d]);
                        }
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(opts.seed);
        let budget = opts.samples * 50;
        let mut tries = 0;
        while tries < budget && t[2..].iter().any(|x| x.check.trials < opts.samples) {
            tries += 1;
            let q = alg.random_quadruple(&mut rng);
            for (k, r) in transposition(alg, &q).into_iter().enumerate() {
                if t[2 + k].check.trials < opts.samples {
                    t[2 + k].record(r, &[&q[0], &q[1], &q[2], &q[3]]);
                }
            }
            let (a, b) = if rng.gen_bool(0.5) { (&q[0], &q[1]) } else { (&q[2], &q[3]) };
            for (k, r) in inverse_laws(alg, a, b).into_iter().enumerate() {
                if t[5 + k].check.trials < opts.samples {
                    t[5 + k].record(r, &[a, b]);
                }
            }
        }
    }
    AxiomReport {
        algebra: alg.name().to_string(),
        exhaustive,
        checks: t.into_iter().map(|x| x.check).collect(),
    }
}

/// Formal expressions in the constants and the two operations; folding a
/// resolving tree over this algebra yields its symbolic formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Const(usize),
    Pipe(Box<Term>, Box<Term>),
    Star(Box<Term>, Box<Term>),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn operand(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                Term::Const(_) => write!(f, "{t}"),
                _ => write!(f, "({t})"),
            }
        }
        match self {
            Term::Const(n) => write!(f, "a{n}"),
            Term::Pipe(a, b) => {
                operand(a, f)?;
                f.write_str("|")?;
                operand(b, f)
            }
            Term::Star(a, b) => {
                operand(a, f)?;
                f.write_str("*")?;
                operand(b, f)
            }
        }
    }
}

/// The free algebra on the signature; satisfies none of the laws.
#[derive(Clone, Copy, Debug, Default)]
pub struct TermAlgebra;

impl ConwayAlgebra for TermAlgebra {
    type Value = Term;

    fn name(&self) -> &'static str {
        "terms"
    }

    fn constant(&self, n: usize) -> Result<Term, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::NoSuchConstant(0));
        }
        Ok(Term::Const(n))
    }

    fn pipe(&self, u: &Term, v: &Term) -> Result<Term, AlgebraError> {
        Ok(Term::Pipe(Box::new(u.clone()), Box::new(v.clone())))
    }

    fn star(&self, u: &Term, v: &Term) -> Result<Term, AlgebraError> {
        Ok(Term::Star(Box::new(u.clone()), Box::new(v.clone())))
    }

    fn random_element(&self, rng: &mut StdRng) -> Term {
        Term::Const(rng.gen_range(1..4))
    }
}
