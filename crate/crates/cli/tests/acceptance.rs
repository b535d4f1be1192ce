//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use adaequalitas::applications::{
    cycloid_tangent_slope, least_time_oracle, order_of_contact, parabola_double_root,
    parabola_subtangent, sine_ratio, snell_condition, tangent_line, Angle, ParabolaPoint,
    RefractionScene,
};
use adaequalitas::diophantus::{
    parisotes_solve, solve_problem, verify_solution, BoundKind, SolveOptions, SquaresProblem,
};
use adaequalitas::infinitesimal::{
    derivative_via_dual, parse_graded, product_rule_tlh, tlh_reduce, Quantity,
};
use adaequalitas::kernel::{lowest_e_power, Derivation, KernelError, Multiplicity, Rule};
use adaequalitas::numeric::Rational;
use adaequalitas::symexpr::{
    parse_canonical, substitute_increment, Monomial, Poly, RationalForm, VarId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const A: VarId = VarId::new('a');
const E: VarId = VarId::new('e');

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(s: &str) -> Rational {
    s.parse().unwrap()
}

fn poly(s: &str) -> Poly {
    parse_canonical(s).unwrap().as_poly().unwrap().clone()
}

fn form(s: &str) -> RationalForm {
    parse_canonical(s).unwrap()
}

fn random_poly(rng: &mut ChaCha8Rng, min_deg: u32) -> Poly {
    loop {
        let deg = rng.gen_range(min_deg..=8);
        let p = Poly::from_terms((0..=deg).map(|k| {
            let c = Rational::new(rng.gen_range(-50i64..=50), rng.gen_range(1i64..=20)).unwrap();
            (Monomial::from_powers([(A, k)]), c)
        }));
        if p.degree_in(A) >= min_deg {
            return p;
        }
    }
}

fn within(limit: Duration, elapsed: Duration) -> Check {
    if elapsed < limit {
        Ok(format!("{elapsed:.2?} < {limit:?}"))
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn printed_triple() -> Check {
    let p = SquaresProblem::new(q("10"), 3, BoundKind::GreaterThan, q("3")).unwrap();
    let sides = [q("1321/711"), q("1288/711"), q("1285/711")];
    let start = Instant::now();
    let report = verify_solution(&sides, &p);
    let elapsed = start.elapsed();
    ensure!(report.passed(), "verification failed:\n{report}");
    let nums: i64 = [1321i64, 1288, 1285].iter().map(|n| n * n).sum();
    ensure!(nums == 10 * 711 * 711, "numerators give {nums}");
    within(Duration::from_millis(1), elapsed)
        .map(|t| format!("numerators^2 sum to {nums} = 10*711^2, each square > 3, {t}"))
}

fn parisotes_recipe() -> Check {
    let start = Instant::now();
    let p = SquaresProblem::new(q("10"), 3, BoundKind::GreaterThan, q("3")).unwrap();
    let sol =
        parisotes_solve(&p, &q("11/6"), &[q("3"), q("1"), q("0")]).map_err(|e| e.to_string())?;
    ensure!(sol.t0 == q("64/65"), "t0 = {}", sol.t0);
    ensure!(
        sol.sides == [q("361/195"), q("71/39"), q("352/195")],
        "sides {:?}",
        sol.sides
    );
    let sum: Rational = sol.sides.iter().map(|s| s * s).sum();
    ensure!(sum == q("10"), "sum {sum}");
    ensure!(sol.sides.iter().all(|s| s * s > q("3")), "bound missed");
    let mut others = Vec::new();
    for (n, k, kind, bound) in [
        (q("13"), 2, BoundKind::GreaterThan, q("6")),
        (q("17"), 2, BoundKind::LessThan, q("10")),
    ] {
        let p = SquaresProblem::new(n, k, kind, bound).unwrap();
        let s = solve_problem(&p, &SolveOptions::default()).map_err(|e| format!("{p}: {e}"))?;
        ensure!(verify_solution(&s.sides, &p).passed(), "{p}: {}", s.report);
        others.push(
            s.sides
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", "),
        );
    }
    within(Duration::from_secs(1), start.elapsed()).map(|t| {
        format!(
            "t0 = 64/65; V.12 ({}); V.17 ({}); {t}",
            others[0], others[1]
        )
    })
}

/// substitute, adequate, cancel, divide, suppress.
fn six_step(f: &Poly) -> Result<Poly, KernelError> {
    let mut d = Derivation::new(A, E)?;
    let shifted = substitute_increment(f, A, E)?;
    let adq = d.adequate(
        RationalForm::from_poly(shifted),
        RationalForm::from_poly(f.clone()),
    );
    let diff = d.cancel_common(&adq)?;
    let quotient = d.divide_by_e(&diff, 1)?;
    d.suppress_e_terms(&quotient)
}

fn kernel_equals_dual() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let start = Instant::now();
    for i in 0..200 {
        let f = random_poly(&mut rng, 0);
        let k = six_step(&f).map_err(|e| format!("#{i} {f}: {e}"))?;
        let d = derivative_via_dual(&f, A);
        ensure!(k == d, "#{i} {f}: kernel {k}, dual {d}");
    }
    within(Duration::from_secs(5), start.elapsed()).map(|t| format!("200 polynomials, {t}"))
}

fn first_power() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let f = random_poly(&mut rng, 1);
        let diff = &substitute_increment(&f, A, E).unwrap() - &f;
        let k = lowest_e_power(&diff, E).map_err(|e| e.to_string())?;
        ensure!(k == 1, "#{i} {f}: lowest power {k}");
    }
    Ok("lowest power 1 for 200 nonconstant polynomials".into())
}

fn e_squared_division() -> Check {
    let mut d = Derivation::new(A, E).map_err(|e| e.to_string())?;
    let adq = d.adequate(form("sqrt(a + e) + sqrt(a - e)"), form("2*sqrt(a)"));
    let eliminated = d.eliminate_radicals(&adq).map_err(|e| e.to_string())?;
    ensure!(
        eliminated.lhs == form("a^2 - e^2") && eliminated.rhs == form("a^2"),
        "eliminated to {eliminated}"
    );
    let diff = d.cancel_common(&eliminated).map_err(|e| e.to_string())?;
    let k = lowest_e_power(&diff, E).map_err(|e| e.to_string())?;
    ensure!(k == 2, "lowest power {k}");
    let quotient = d.divide_by_e(&diff, k).map_err(|e| e.to_string())?;
    let condition = d.suppress_e_terms(&quotient).map_err(|e| e.to_string())?;
    let outcome = d.solve_condition(&condition);
    let trace = d.trace();
    let div = trace.position(Rule::Divide).ok_or("no divide step")?;
    let sup = trace.position(Rule::Suppress).ok_or("no suppress step")?;
    ensure!(div < sup, "divide at {div}, suppress at {sup}");
    ensure!(
        trace.steps()[div].note.contains("e^2"),
        "divide note: {}",
        trace.steps()[div].note
    );
    Ok(format!(
        "{eliminated}, lowest power 2, divide (step {}) before suppress (step {}), outcome {}",
        div + 1,
        sup + 1,
        outcome.tag()
    ))
}

fn parabola() -> Check {
    let t = parabola_subtangent(&ParabolaPoint::symbolic()).map_err(|e| e.to_string())?;
    ensure!(t.r == poly("y"), "r = {}", t.r);
    let m = parabola_double_root(&poly("y"), &t.r).map_err(|e| e.to_string())?;
    ensure!(m >= Multiplicity::Finite(2), "multiplicity {m}");
    let curve = poly("x^2 - y");
    let x0 = q("3/2");
    let tangent = tangent_line(&x0).map_err(|e| e.to_string())?;
    let order = order_of_contact(&curve, &tangent, &x0).map_err(|e| e.to_string())?;
    ensure!(order == 2, "tangent {tangent} has order {order}");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (x, y) = (Poly::var(VarId::new('x')), Poly::var(VarId::new('y')));
    let mut secants = 0;
    while secants < 20 {
        let slope = Rational::new(rng.gen_range(-60i64..=60), rng.gen_range(1i64..=8)).unwrap();
        if slope == q("3") {
            continue;
        }
        let line = &(&y - &x.scale(&slope)) + &Poly::constant(&(&slope * &x0) - &(&x0 * &x0));
        let o = order_of_contact(&curve, &line, &x0).map_err(|e| e.to_string())?;
        ensure!(o == 1, "secant {line} has order {o}");
        secants += 1;
    }
    Ok(format!(
        "r = y, multiplicity {m}, tangent order 2, 20 secants order 1"
    ))
}

fn cycloid() -> Check {
    let mut worst = 0.0f64;
    for s in ["pi/6", "pi/3", "pi/2", "2*pi/3", "5*pi/6"] {
        let angle: Angle = s.parse().map_err(|e| format!("{s}: {e}"))?;
        let theta = angle.radians();
        let got = cycloid_tangent_slope(&angle)
            .map_err(|e| e.to_string())?
            .slope
            .value();
        let want = (theta.cos() - 1.0) / theta.sin();
        let err = (got - want).abs();
        ensure!(err < 1e-10, "{s}: {got} vs {want}");
        worst = worst.max(err);
    }
    let half = cycloid_tangent_slope(&"pi/2".parse().unwrap()).map_err(|e| e.to_string())?;
    ensure!(
        half.slope.to_string() == "-1" && half.slope.value() == -1.0,
        "pi/2 gives {}",
        half.slope
    );
    Ok(format!(
        "5 angles, max error {worst:.1e}; pi/2 gives exactly -1"
    ))
}

fn refraction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for i in 0..25 {
        let s = RefractionScene::new(
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..5.0),
            rng.gen_range(0.2..8.0),
            rng.gen_range(0.2..3.0),
            rng.gen_range(0.2..3.0),
        )
        .unwrap();
        let xs = snell_condition(&s).map_err(|e| e.to_string())?.x_star;
        let xt = least_time_oracle(&s);
        ensure!((xs - xt).abs() < 1e-8, "scene #{i} {s:?}: {xs} vs {xt}");
        for x in [xs, xt] {
            let r = (sine_ratio(&s, x) - s.v1 / s.v2).abs();
            ensure!(r < 1e-9, "scene #{i}: sine ratio off by {r}");
        }
        worst = worst.max((xs - xt).abs());
    }
    let sym = RefractionScene::new(1.5, 1.5, 3.0, 2.0, 2.0).unwrap();
    let x = snell_condition(&sym).map_err(|e| e.to_string())?.x_star;
    ensure!((x - 1.5).abs() < 1e-12, "symmetric scene gives {x}");
    Ok(format!(
        "25 scenes, max |x_snell - x_time| {worst:.1e}; symmetric x* = d/2"
    ))
}

fn tlh() -> Check {
    for (input, want) in [("a + dx", "a"), ("dx + ddy", "dx")] {
        let got = tlh_reduce(&parse_graded(input).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        ensure!(got.to_string() == want, "{input} gave {got}");
    }
    let (u, v) = (VarId::new('u'), VarId::new('v'));
    let got = product_rule_tlh(&Quantity::Symbol(u), &Quantity::Symbol(v));
    let want = parse_graded("u*dv + v*du").map_err(|e| e.to_string())?;
    ensure!(got == want, "product rule gave {got}");
    Ok(format!("a + dx = a, dx + ddy = dx, d(uv) = {got}"))
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name]
        .iter()
        .collect();
    std::fs::read_to_string(path).unwrap_or_default()
}

fn trace_ordering() -> Check {
    let mut d = Derivation::new(A, E).map_err(|e| e.to_string())?;
    let err = d.suppress_e_terms(&poly("b - 2*a + e"));
    ensure!(
        err == Err(KernelError::SuppressBeforeDivide),
        "suppress before divide gave {err:?}"
    );
    let message = KernelError::SuppressBeforeDivide.to_string();
    let commands: [(&str, &[&str]); 4] = [
        ("maxmin.jsonl", &["maxmin", "b*a - a^2"]),
        ("tangent_parabola.jsonl", &["tangent-parabola"]),
        (
            "dioph.jsonl",
            &[
                "dioph",
                "--sum",
                "10",
                "--count",
                "3",
                "--each-greater-than",
                "3",
            ],
        ),
        ("cycloid.jsonl", &["cycloid", "--theta", "pi/2"]),
    ];
    for (file, args) in commands {
        let expected = golden(file);
        ensure!(!expected.is_empty(), "golden file {file} missing");
        for run in 0..2 {
            let out = Command::new(env!("CARGO_BIN_EXE_adaequalitas"))
                .args(["--format", "machine"])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure!(
                out.status.success(),
                "{file} run {run}: exit {:?}",
                out.status.code()
            );
            ensure!(
                out.stdout == expected.as_bytes(),
                "{file} run {run} differs from golden file"
            );
        }
    }
    Ok(format!(
        "rejected with \"{message}\"; 4 golden traces byte-stable"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("printed triple verifies exactly", printed_triple),
        (
            "perturbation recipe and problems V.12, V.17",
            parisotes_recipe,
        ),
        (
            "adequality condition equals dual derivative",
            kernel_equals_dual,
        ),
        ("lowest increment power is 1", first_power),
        ("division by e^2 precedes suppression", e_squared_division),
        ("parabola tangent and contact order", parabola),
        ("cycloid slope", cycloid),
        ("refraction agrees with least time", refraction),
        ("graded infinitesimal identities", tlh),
        ("trace ordering and golden traces", trace_ordering),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
