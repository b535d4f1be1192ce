//! Sums of rational squares with a bound on every square, by perturbing a
//! preliminary decomposition along the line towards `(b, …, b)`.
//!
//! With `c_i = b − a_i`, the points `a_i + t·c_i` satisfy `Σ(a_i + t·c_i)² = N`
//! for `t = 0` and one more root, linear after dividing by `t`:
//! `t0 = −2·Σ a_i c_i / Σ c_i²`. When `k·b²` is close to `N` the second root
//! is close to 1, so every side lands near `b` and `b²` meets the bound.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::kernel::{DerivationTrace, Rule};
use crate::numeric::{Integer, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophantusError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("no decomposition into rational squares with denominator up to {search_bound}; supply a preliminary decomposition")]
    NoDecomposition { search_bound: u32 },
    #[error("invalid preliminary decomposition: {0}")]
    InvalidPreliminary(String),
    #[error("degenerate perturbation: {0}")]
    Degenerate(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    GreaterThan,
    LessThan,
}

impl BoundKind {
    pub fn holds(self, square: &Rational, bound: &Rational) -> bool {
        match self {
            BoundKind::GreaterThan => square > bound,
            BoundKind::LessThan => square < bound,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            BoundKind::GreaterThan => ">",
            BoundKind::LessThan => "<",
        }
    }
}

/// Write `total` as a sum of `count` rational squares, each `> bound` or
/// `< bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaresProblem {
    total: Rational,
    count: usize,
    bound_kind: BoundKind,
    bound: Rational,
}

impl SquaresProblem {
    pub fn new(
        total: Rational,
        count: usize,
        bound_kind: BoundKind,
        bound: Rational,
    ) -> Result<Self, DiophantusError> {
        if !total.is_positive() {
            return Err(DiophantusError::InvalidProblem(format!(
                "sum must be positive, got {total}"
            )));
        }
        if !(2..=3).contains(&count) {
            return Err(DiophantusError::InvalidProblem(format!(
                "count must be 2 or 3, got {count}"
            )));
        }
        let kb = Rational::from(count as i64) * &bound;
        let feasible = match bound_kind {
            BoundKind::GreaterThan => kb < total,
            BoundKind::LessThan => kb > total,
        };
        if !feasible {
            return Err(DiophantusError::InvalidProblem(format!(
                "{count} squares each {} {bound} cannot sum to {total}",
                bound_kind.symbol()
            )));
        }
        Ok(SquaresProblem {
            total,
            count,
            bound_kind,
            bound,
        })
    }

    pub fn total(&self) -> &Rational {
        &self.total
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn bound_kind(&self) -> BoundKind {
        self.bound_kind
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }
}

impl fmt::Display for SquaresProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = sum of {} squares, each {} {}",
            self.total,
            self.count,
            self.bound_kind.symbol(),
            self.bound
        )
    }
}

fn isqrt_floor(x: &Rational) -> Integer {
    if x.is_negative() {
        return Integer::zero();
    }
    x.floor().sqrt()
}

/// The positive `b` with denominator at most `den_bound` that minimises
/// `|b² − total/count|`. Ties go to the smaller denominator, then the
/// smaller numerator.
pub fn target_fraction(total: &Rational, count: usize, den_bound: u32) -> Rational {
    let goal = total / &Rational::from(count as i64);
    let mut best: Option<(Rational, Rational)> = None;
    for q in 1..=den_bound.max(1) {
        let qq = Rational::from(i64::from(q));
        let p0 = isqrt_floor(&(&goal * &qq * &qq));
        for p in [p0.clone(), p0 + 1] {
            if !p.is_positive() {
                continue;
            }
            let b = Rational::new(p, q).expect("q >= 1");
            let err = (&b * &b - &goal).abs();
            if best.as_ref().is_none_or(|(e, _)| err < *e) {
                best = Some((err, b));
            }
        }
    }
    best.map(|(_, b)| b)
        .expect("den_bound >= 1 yields a candidate")
}

/// Integer solutions of `Σ x_i² = m` with `x_1 ≥ x_2 ≥ … ≥ 0`, first found
/// with the largest leading component.
fn integer_squares(m: &BigInt, k: usize, cap: &BigInt) -> Option<Vec<BigInt>> {
    if k == 0 {
        return m.is_zero().then(Vec::new);
    }
    if m.is_negative() {
        return None;
    }
    let top = m.sqrt().min(cap.clone());
    let mut x = top;
    loop {
        let rest = m - &x * &x;
        if k == 1 {
            return rest.is_zero().then(|| vec![x]);
        }
        // remaining k−1 squares are each at most x²
        if rest <= BigInt::from(k as u64 - 1) * &x * &x {
            if let Some(mut tail) = integer_squares(&rest, k - 1, &x) {
                tail.insert(0, x);
                return Some(tail);
            }
        } else {
            return None;
        }
        if x.is_zero() {
            return None;
        }
        x -= 1;
    }
}

/// An exact decomposition `total = Σ a_i²` with `a_1 ≥ … ≥ a_k ≥ 0`, searched
/// over common denominators `1..=search_bound`.
pub fn preliminary_decomposition(
    total: &Rational,
    count: usize,
    search_bound: u32,
) -> Result<Vec<Rational>, DiophantusError> {
    if !total.is_positive() || count == 0 {
        return Err(DiophantusError::InvalidProblem(format!(
            "cannot decompose {total} into {count} squares"
        )));
    }
    for q in 1..=search_bound {
        let qq = Rational::from(i64::from(q) * i64::from(q));
        let m = total * &qq;
        if !m.is_integer() {
            continue;
        }
        let m = m.numer().clone();
        let cap = m.sqrt();
        if let Some(xs) = integer_squares(&m, count, &cap) {
            return Ok(xs
                .into_iter()
                .map(|x| Rational::new(x, q).expect("q >= 1"))
                .collect());
        }
    }
    Err(DiophantusError::NoDecomposition { search_bound })
}

/// Second intersection of the line `a + t·c` with the sphere through `a`.
/// Returns `(t0, sides)`.
pub fn perturb(
    prelim: &[Rational],
    directions: &[Rational],
) -> Result<(Rational, Vec<Rational>), DiophantusError> {
    if prelim.len() != directions.len() {
        return Err(DiophantusError::InvalidPreliminary(format!(
            "{} components but {} directions",
            prelim.len(),
            directions.len()
        )));
    }
    let cc: Rational = directions.iter().map(|c| c * c).sum();
    if cc.is_zero() {
        return Err(DiophantusError::Degenerate(
            "every direction c_i = b - a_i is zero",
        ));
    }
    let ac: Rational = prelim.iter().zip(directions).map(|(a, c)| a * c).sum();
    if ac.is_zero() {
        return Err(DiophantusError::Degenerate(
            "the line only meets the sphere at t = 0",
        ));
    }
    let t0 = -(Rational::from(2) * ac) / cc;
    let sides = prelim
        .iter()
        .zip(directions)
        .map(|(a, c)| a + &(&t0 * c))
        .collect();
    Ok((t0, sides))
}

/// Per-constraint outcome of checking candidate sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub sum_of_squares: Rational,
    pub sum_ok: bool,
    pub squares: Vec<Rational>,
    pub bounds_ok: Vec<bool>,
    pub count_ok: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.count_ok && self.sum_ok && self.bounds_ok.iter().all(|&b| b)
    }

    pub fn bounds_satisfied(&self) -> bool {
        self.bounds_ok.iter().all(|&b| b)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "pass" } else { "fail" };
        writeln!(
            f,
            "sum of squares = {} [{}]",
            self.sum_of_squares,
            mark(self.sum_ok)
        )?;
        if !self.count_ok {
            writeln!(f, "wrong number of sides [fail]")?;
        }
        for (i, (sq, ok)) in self.squares.iter().zip(&self.bounds_ok).enumerate() {
            writeln!(f, "square {} = {} [{}]", i + 1, sq, mark(*ok))?;
        }
        write!(f, "overall: {}", mark(self.passed()))
    }
}

/// Exact check of `Σ sides² = total` and of the bound on every square.
pub fn verify_solution(sides: &[Rational], problem: &SquaresProblem) -> VerificationReport {
    let squares: Vec<Rational> = sides.iter().map(|s| s * s).collect();
    let sum: Rational = squares.iter().sum();
    let bounds_ok = squares
        .iter()
        .map(|sq| problem.bound_kind.holds(sq, &problem.bound))
        .collect();
    VerificationReport {
        sum_ok: sum == problem.total,
        sum_of_squares: sum,
        squares,
        bounds_ok,
        count_ok: sides.len() == problem.count,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParisotesSolution {
    pub sides: Vec<Rational>,
    pub t0: Rational,
    pub b: Rational,
    pub prelim: Vec<Rational>,
    pub report: VerificationReport,
}

impl ParisotesSolution {
    /// False when the perturbed sides miss the bound; the sum is exact either way.
    pub fn bound_satisfied(&self) -> bool {
        self.report.bounds_satisfied()
    }
}

/// Perturbs `prelim` towards `(b, …, b)` and verifies the result.
pub fn parisotes_solve(
    problem: &SquaresProblem,
    b: &Rational,
    prelim: &[Rational],
) -> Result<ParisotesSolution, DiophantusError> {
    if prelim.len() != problem.count {
        return Err(DiophantusError::InvalidPreliminary(format!(
            "expected {} components, got {}",
            problem.count,
            prelim.len()
        )));
    }
    let s: Rational = prelim.iter().map(|a| a * a).sum();
    if s != problem.total {
        return Err(DiophantusError::InvalidPreliminary(format!(
            "squares sum to {s}, not {}",
            problem.total
        )));
    }
    let directions: Vec<Rational> = prelim.iter().map(|a| b - a).collect();
    let (t0, sides) = perturb(prelim, &directions)?;
    let report = verify_solution(&sides, problem);
    debug_assert!(report.sum_ok);
    Ok(ParisotesSolution {
        sides,
        t0,
        b: b.clone(),
        prelim: prelim.to_vec(),
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub den_bound: u32,
    pub search_bound: u32,
    pub target: Option<Rational>,
    pub prelim: Option<Vec<Rational>>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            den_bound: 10,
            search_bound: 12,
            target: None,
            prelim: None,
        }
    }
}

/// Picks the target and preliminary (unless supplied) and runs
/// [`parisotes_solve`].
pub fn solve_problem(
    problem: &SquaresProblem,
    opts: &SolveOptions,
) -> Result<ParisotesSolution, DiophantusError> {
    let b = match &opts.target {
        Some(b) => b.clone(),
        None => target_fraction(&problem.total, problem.count, opts.den_bound),
    };
    let prelim = match &opts.prelim {
        Some(p) => p.clone(),
        None => preliminary_decomposition(&problem.total, problem.count, opts.search_bound)?,
    };
    parisotes_solve(problem, &b, &prelim)
}

fn join(xs: &[Rational]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Step-by-step record of a [`parisotes_solve`] run.
pub fn parisotes_trace(problem: &SquaresProblem, sol: &ParisotesSolution) -> DerivationTrace {
    let mut trace = DerivationTrace::new();
    let k = Rational::from(problem.count as i64);
    trace.push(Rule::Annotate, "", problem.to_string(), "");
    trace.push(
        Rule::Annotate,
        format!(
            "{} / {} = {}",
            problem.total,
            problem.count,
            &problem.total / &k
        ),
        format!("b = {}, b^2 = {}", sol.b, &sol.b * &sol.b),
        "target square close to an equal share",
    );
    let squares = sol
        .prelim
        .iter()
        .map(|a| format!("({a})^2"))
        .collect::<Vec<_>>()
        .join(" + ");
    trace.push(
        Rule::Assume,
        "",
        format!("{squares} = {}", problem.total),
        "preliminary decomposition; the bound need not hold for it",
    );
    let directions: Vec<Rational> = sol.prelim.iter().map(|a| &sol.b - a).collect();
    trace.push(
        Rule::Substitute,
        format!("a = ({})", join(&sol.prelim)),
        format!("a + t*c, c = b - a = ({})", join(&directions)),
        "move along the line towards (b, ..., b)",
    );
    let ac: Rational = sol.prelim.iter().zip(&directions).map(|(a, c)| a * c).sum();
    let cc: Rational = directions.iter().map(|c| c * c).sum();
    trace.push(
        Rule::Divide,
        format!("sum (a_i + t*c_i)^2 = {}", problem.total),
        format!("{} + {}*t = 0", Rational::from(2) * &ac, cc),
        "divide by t; t = 0 gives back the preliminary",
    );
    trace.push(Rule::Solve, "", format!("t0 = {}", sol.t0), "");
    trace.push(
        Rule::Annotate,
        format!("sides = ({})", join(&sol.sides)),
        format!("sum of squares = {}", sol.report.sum_of_squares),
        if sol.report.passed() {
            format!(
                "every square {} {}",
                problem.bound_kind.symbol(),
                problem.bound
            )
        } else {
            format!(
                "bound {} {} violated",
                problem.bound_kind.symbol(),
                problem.bound
            )
        },
    );
    trace
}

/// `|t0 − 1| · Σ c_i²`, which equals `|k·b² − N|` exactly.
pub fn t0_deviation_scaled(sol: &ParisotesSolution) -> Rational {
    let cc: Rational = sol.prelim.iter().map(|a| (&sol.b - a).pow(2)).sum();
    (&sol.t0 - &Rational::one()).abs() * cc
}

/// Floating-point view of sides, for display.
pub fn sides_f64(sides: &[Rational]) -> Vec<f64> {
    sides
        .iter()
        .map(|s| s.as_big().to_f64().unwrap_or(f64::NAN))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn qs(v: &[&str]) -> Vec<Rational> {
        v.iter().map(|s| q(s)).collect()
    }

    fn v14() -> SquaresProblem {
        SquaresProblem::new(q("10"), 3, BoundKind::GreaterThan, q("3")).unwrap()
    }

    /// Exhaustive scan over every numerator, independent of the floor/ceil shortcut.
    fn brute_target(total: &Rational, k: usize, den_bound: i64) -> Rational {
        let goal = total / &Rational::from(k as i64);
        let mut best: Option<(Rational, Rational)> = None;
        for d in 1..=den_bound {
            let top = (goal.to_f64().sqrt() * d as f64).ceil() as i64 + 2;
            for n in 1..=top {
                let b = Rational::new(n, d).unwrap();
                let err = (&b * &b - &goal).abs();
                if best.as_ref().is_none_or(|(e, _)| err < *e) {
                    best = Some((err, b));
                }
            }
        }
        best.unwrap().1
    }

    #[test]
    fn targets() {
        let b = target_fraction(&q("10"), 3, 6);
        assert_eq!(b, q("11/6"));
        assert_eq!((&b * &b - q("10/3")).abs(), q("1/36"));
        assert_eq!(target_fraction(&q("8"), 2, 1), q("2"));
        for (n, k) in [("13", 2), ("10", 3), ("17", 2), ("5", 3), ("1/2", 2)] {
            for d in [1, 3, 10, 17] {
                assert_eq!(
                    target_fraction(&q(n), k, d as u32),
                    brute_target(&q(n), k, d),
                    "{n} {k} {d}"
                );
            }
        }
        assert_eq!(target_fraction(&q("10"), 3, 10), q("11/6"));
    }

    #[test]
    fn preliminaries() {
        assert_eq!(
            preliminary_decomposition(&q("10"), 3, 12).unwrap(),
            qs(&["3", "1", "0"])
        );
        assert_eq!(
            preliminary_decomposition(&q("13"), 2, 12).unwrap(),
            qs(&["3", "2"])
        );
        assert_eq!(
            preliminary_decomposition(&q("17"), 2, 12).unwrap(),
            qs(&["4", "1"])
        );
        // 3 is not a sum of two rational squares
        assert_eq!(
            preliminary_decomposition(&q("3"), 2, 12),
            Err(DiophantusError::NoDecomposition { search_bound: 12 })
        );
        let p = preliminary_decomposition(&q("25/4"), 2, 12).unwrap();
        assert_eq!(p.iter().map(|a| a * a).sum::<Rational>(), q("25/4"));
    }

    #[test]
    fn recipe_on_v14() {
        let sol = parisotes_solve(&v14(), &q("11/6"), &qs(&["3", "1", "0"])).unwrap();
        assert_eq!(sol.t0, q("64/65"));
        assert_eq!(sol.sides, qs(&["361/195", "71/39", "352/195"]));
        assert!(sol.report.passed());
        assert_eq!(sol.report.sum_of_squares, q("10"));
        assert_eq!(q("380250/38025"), q("10"));
        let t = parisotes_trace(&v14(), &sol);
        assert_eq!(t.steps()[4].after, "-16/3 + 65/12*t = 0");
        assert_eq!(t.steps()[5].after, "t0 = 64/65");
    }

    #[test]
    fn recorded_triple_passes() {
        let r = verify_solution(&qs(&["1321/711", "1288/711", "1285/711"]), &v14());
        assert!(r.passed());
        let r = verify_solution(&qs(&["3", "1", "0"]), &v14());
        assert!(r.sum_ok);
        assert_eq!(r.bounds_ok, vec![true, false, false]);
        assert!(!r.passed());
    }

    #[test]
    fn degenerate_and_invalid() {
        let p = SquaresProblem::new(q("8"), 2, BoundKind::GreaterThan, q("3")).unwrap();
        assert!(matches!(
            parisotes_solve(&p, &q("2"), &qs(&["2", "2"])),
            Err(DiophantusError::Degenerate(_))
        ));
        assert!(matches!(
            parisotes_solve(&v14(), &q("2"), &qs(&["3", "1", "1"])),
            Err(DiophantusError::InvalidPreliminary(_))
        ));
        assert!(SquaresProblem::new(q("10"), 3, BoundKind::GreaterThan, q("4")).is_err());
        assert!(SquaresProblem::new(q("10"), 3, BoundKind::LessThan, q("3")).is_err());
        assert!(SquaresProblem::new(q("10"), 4, BoundKind::LessThan, q("5")).is_err());
        assert!(SquaresProblem::new(q("-1"), 2, BoundKind::LessThan, q("5")).is_err());
    }

    #[test]
    fn scaling_directions() {
        let a = qs(&["3", "1", "0"]);
        let c: Vec<Rational> = a.iter().map(|x| q("11/6") - x).collect();
        let c6: Vec<Rational> = c.iter().map(|x| x * &q("6")).collect();
        let (t, s) = perturb(&a, &c).unwrap();
        let (t6, s6) = perturb(&a, &c6).unwrap();
        assert_eq!(s, s6);
        assert_eq!(t6, t / q("6"));
    }

    #[test]
    fn canonical_problems_default() {
        let problems = [
            SquaresProblem::new(q("13"), 2, BoundKind::GreaterThan, q("6")).unwrap(),
            v14(),
            SquaresProblem::new(q("17"), 2, BoundKind::LessThan, q("10")).unwrap(),
        ];
        for p in &problems {
            let sol = solve_problem(p, &SolveOptions::default()).unwrap();
            assert!(sol.report.passed(), "{p}: {}", sol.report);
            let k = Rational::from(p.count() as i64);
            assert_eq!(
                t0_deviation_scaled(&sol),
                (k * &sol.b * &sol.b - p.total()).abs()
            );
        }
        let sol = solve_problem(&problems[0], &SolveOptions::default()).unwrap();
        assert_eq!(sol.b, q("23/9"));
        assert_eq!(sol.sides, qs(&["107/41", "102/41"]));
        let sol = solve_problem(&problems[2], &SolveOptions::default()).unwrap();
        assert_eq!(sol.b, q("29/10"));
        assert_eq!(sol.t0, q("250/241"));
        assert_eq!(sol.sides, qs(&["689/241", "716/241"]));
    }
}
