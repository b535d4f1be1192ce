use crate::numeric::Rational;
use crate::symexpr::{Poly, VarId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub value: Poly,
    pub multiplicity: u32,
}

impl Root {
    pub fn as_rational(&self) -> Option<Rational> {
        self.value.constant_value()
    }
}

/// What solving a condition produced. Degenerate outcomes are results, not
/// errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Solved(Vec<Root>),
    /// Degree above two, or roots not expressible exactly; the condition
    /// stands unsolved.
    Symbolic,
    /// The condition is identically zero.
    Vacuous,
    /// The condition is a nonzero constant.
    Inconsistent,
}

impl Outcome {
    pub fn roots(&self) -> &[Root] {
        match self {
            Outcome::Solved(r) => r,
            _ => &[],
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Outcome::Solved(_) => "solved",
            Outcome::Symbolic => "symbolic",
            Outcome::Vacuous => "vacuous",
            Outcome::Inconsistent => "inconsistent",
        }
    }

    pub fn describe(&self, unknown: VarId) -> String {
        match self {
            Outcome::Solved(roots) => roots
                .iter()
                .map(|r| {
                    if r.multiplicity > 1 {
                        format!("{unknown} = {} (multiplicity {})", r.value, r.multiplicity)
                    } else {
                        format!("{unknown} = {}", r.value)
                    }
                })
                .collect::<Vec<_>>()
                .join(", "),
            other => other.tag().to_string(),
        }
    }
}

fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|x, y| match (x.as_rational(), y.as_rational()) {
        (Some(p), Some(q)) => p.cmp(&q),
        _ => x.value.cmp(&y.value),
    });
}

/// Solves `c = 0` for `unknown` when its degree there is at most two and
/// the roots are exact; anything else is reported as symbolic.
pub fn solve_condition(c: &Poly, unknown: VarId) -> Outcome {
    if c.is_zero() {
        return Outcome::Vacuous;
    }
    if c.is_constant() {
        return Outcome::Inconsistent;
    }
    let coeff = |k: u32| {
        c.coefficients_in(unknown)
            .into_iter()
            .find(|(d, _)| *d == k)
            .map_or_else(Poly::zero, |(_, p)| p)
    };
    let (c0, c1, c2) = (coeff(0), coeff(1), coeff(2));
    let mut roots = match c.degree_in(unknown) {
        1 => match (-&c0).div_exact(&c1) {
            Some(value) => vec![Root {
                value,
                multiplicity: 1,
            }],
            None => return Outcome::Symbolic,
        },
        2 => {
            let disc = &c1.pow(2) - &(&Poly::constant(4) * &(&c2 * &c0));
            let Some(s) = disc.sqrt_exact() else {
                return Outcome::Symbolic;
            };
            let two_a = &c2 * &Poly::constant(2);
            if s.is_zero() {
                match (-&c1).div_exact(&two_a) {
                    Some(value) => vec![Root {
                        value,
                        multiplicity: 2,
                    }],
                    None => return Outcome::Symbolic,
                }
            } else {
                let plus = (&s - &c1).div_exact(&two_a);
                let minus = (-&(&s + &c1)).div_exact(&two_a);
                match (plus, minus) {
                    (Some(p), Some(m)) => vec![
                        Root {
                            value: p,
                            multiplicity: 1,
                        },
                        Root {
                            value: m,
                            multiplicity: 1,
                        },
                    ],
                    _ => return Outcome::Symbolic,
                }
            }
        }
        _ => return Outcome::Symbolic,
    };
    sort_roots(&mut roots);
    Outcome::Solved(roots)
}
