//! One function per subcommand. Each calls the library and packages what
//! it returns; none of them computes anything itself.

use adaequalitas::applications::{
    cycloid_tangent_slope, least_time_oracle, parabola_double_root, parabola_subtangent,
    parametric_slope, sine_ratio, snell_condition, Angle, ApplicationError, CycloidSlope,
    ParabolaPoint, RefractionScene,
};
use adaequalitas::diophantus::{
    parisotes_trace, solve_problem, BoundKind, DiophantusError, SolveOptions, SquaresProblem,
};
use adaequalitas::infinitesimal::{
    derivative_via_dual, parse_graded, tlh_reduce, InfinitesimalError,
};
use adaequalitas::kernel::{fermat_max_min, DerivationTrace, KernelError, Rule};
use adaequalitas::numeric::Rational;
use adaequalitas::symexpr::{parse_canonical, parse_expr, SymError, VarId};
use serde_json::Value;
use thiserror::Error;

use crate::document::TraceDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Solved,
    /// A result was produced but it is not a clean solution.
    Degenerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub doc: TraceDocument,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Degenerate(String),
}

impl From<KernelError> for CliError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::DegenerateAdequality | KernelError::NothingToDivide => {
                CliError::Degenerate(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<SymError> for CliError {
    fn from(e: SymError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ApplicationError> for CliError {
    fn from(e: ApplicationError) -> Self {
        match e {
            ApplicationError::Kernel(k) => k.into(),
            ApplicationError::DegenerateTangent
            | ApplicationError::NoRoot(_)
            | ApplicationError::LineMissesCurve => CliError::Degenerate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<DiophantusError> for CliError {
    fn from(e: DiophantusError) -> Self {
        match e {
            DiophantusError::Degenerate(_) => CliError::Degenerate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<InfinitesimalError> for CliError {
    fn from(e: InfinitesimalError) -> Self {
        match e {
            InfinitesimalError::EmptySum => CliError::Degenerate(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn var(c: char, role: &str) -> Result<VarId, CliError> {
    VarId::try_new(c)
        .ok_or_else(|| CliError::Input(format!("{role} must be a single ASCII letter, got `{c}`")))
}

fn rational(text: &str, what: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|_| CliError::Input(format!("{what}: `{text}` is not a rational number")))
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    Value::from(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
}

fn assumptions_of(trace: &DerivationTrace) -> Vec<String> {
    trace
        .steps()
        .iter()
        .filter(|s| s.rule == Rule::Assume)
        .map(|s| s.note.clone())
        .collect()
}

pub fn maxmin(expr: &str, unknown: char, increment: char) -> Result<Report, CliError> {
    let (a, e) = (var(unknown, "unknown")?, var(increment, "increment")?);
    let f = parse_expr(expr).map_err(SymError::from)?;
    let r = fermat_max_min(&f, a, e)?;
    let mut doc = TraceDocument::new("maxmin", expr).with_trace(&r.trace);
    doc.assumptions = assumptions_of(&r.trace);
    let doc = doc
        .set("unknown", a.to_string())
        .set("increment", e.to_string())
        .set("condition", r.condition.to_string())
        .set("e_power_divided", r.e_power_divided)
        .set("outcome", r.outcome.tag())
        .set(
            "roots",
            Value::from(
                r.outcome
                    .roots()
                    .iter()
                    .map(|x| x.value.to_string())
                    .collect::<Vec<_>>(),
            ),
        )
        .summary(r.outcome.describe(a));
    let status = if r.outcome.is_solved() {
        Status::Solved
    } else {
        Status::Degenerate
    };
    Ok(Report { doc, status })
}

pub fn tangent_parabola(y: Option<&str>) -> Result<Report, CliError> {
    let pt = match y {
        Some(text) => ParabolaPoint::numeric(rational(text, "--y")?)?,
        None => ParabolaPoint::symbolic(),
    };
    let t = parabola_subtangent(&pt)?;
    let mult = parabola_double_root(pt.y(), &t.r)?;
    let input = match y {
        Some(_) => format!("x^2 = y at y = {}", pt.y()),
        None => "x^2 = y at symbolic y".to_string(),
    };
    let mut doc = TraceDocument::new("tangent-parabola", input).with_trace(&t.trace);
    doc.assumptions = assumptions_of(&t.trace);
    let doc = doc
        .assume("parabola x^2 = y; r measured from the vertex along the axis")
        .set("r", t.r.to_string())
        .set("condition", t.condition.to_string())
        .set("double_root_multiplicity", mult.to_string())
        .summary(format!("r = {}", t.r));
    Ok(Report {
        doc,
        status: Status::Solved,
    })
}

pub fn cycloid(theta: &str) -> Result<Report, CliError> {
    let angle: Angle = theta.parse()?;
    let t = cycloid_tangent_slope(&angle)?;
    let exact = matches!(t.slope, CycloidSlope::Exact(_));
    let doc = TraceDocument::new("cycloid", format!("theta = {angle}"))
        .with_trace(&t.trace)
        .assume("unit generating circle; slope measured against the axis of symmetry")
        .set("theta", angle.to_string())
        .set("slope", t.slope.to_string())
        .set("slope_value", t.slope.value())
        .set("exact", exact)
        .set("parametric_oracle", parametric_slope(angle.radians()))
        .summary(format!("slope = {}", t.slope));
    Ok(Report {
        doc,
        status: Status::Solved,
    })
}

#[derive(Debug, Clone, Default)]
pub struct DiophArgs<'a> {
    pub sum: &'a str,
    pub count: usize,
    pub greater_than: Option<&'a str>,
    pub less_than: Option<&'a str>,
    pub target: Option<&'a str>,
    pub prelim: Option<&'a str>,
    pub den_bound: u32,
    pub search_bound: u32,
}

pub fn dioph(args: &DiophArgs) -> Result<Report, CliError> {
    let total = rational(args.sum, "--sum")?;
    let (kind, bound, flag) = match (args.greater_than, args.less_than) {
        (Some(b), None) => (
            BoundKind::GreaterThan,
            rational(b, "--each-greater-than")?,
            "--each-greater-than",
        ),
        (None, Some(b)) => (
            BoundKind::LessThan,
            rational(b, "--each-less-than")?,
            "--each-less-than",
        ),
        _ => {
            return Err(CliError::Input(
                "give exactly one of --each-greater-than, --each-less-than".into(),
            ))
        }
    };
    let problem = SquaresProblem::new(total, args.count, kind, bound.clone())?;
    let target = args.target.map(|t| rational(t, "--target")).transpose()?;
    let prelim = args
        .prelim
        .map(|p| {
            p.split(',')
                .map(|x| rational(x.trim(), "--prelim"))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    let opts = SolveOptions {
        den_bound: args.den_bound,
        search_bound: args.search_bound,
        target,
        prelim,
    };
    let sol = solve_problem(&problem, &opts)?;
    let trace = parisotes_trace(&problem, &sol);
    let mut input = format!("--sum {} --count {} {flag} {bound}", args.sum, args.count);
    if let Some(t) = args.target {
        input.push_str(&format!(" --target {t}"));
    }
    if let Some(p) = args.prelim {
        input.push_str(&format!(" --prelim {p}"));
    }
    let squares = sol
        .sides
        .iter()
        .map(|s| format!("({s})^2"))
        .collect::<Vec<_>>()
        .join(" + ");
    let verified = sol.report.passed();
    let doc = TraceDocument::new("dioph", input)
        .with_trace(&trace)
        .assume("t = 0 discarded: it returns the preliminary decomposition")
        .set("b", sol.b.to_string())
        .set("prelim", strings(&sol.prelim))
        .set("t0", sol.t0.to_string())
        .set("sides", strings(&sol.sides))
        .set("squares", strings(&sol.report.squares))
        .set("sum_of_squares", sol.report.sum_of_squares.to_string())
        .set("bounds_ok", Value::from(sol.report.bounds_ok.clone()))
        .set("verified", verified)
        .summary(if verified {
            format!("{} = {squares}", problem.total())
        } else {
            format!("bound violated: {} = {squares}", problem.total())
        });
    Ok(Report {
        doc,
        status: if verified {
            Status::Solved
        } else {
            Status::Degenerate
        },
    })
}

pub fn snell(h1: f64, h2: f64, d: f64, v1: f64, v2: f64) -> Result<Report, CliError> {
    let scene = RefractionScene::new(h1, h2, d, v1, v2)?;
    let sol = snell_condition(&scene)?;
    let oracle = least_time_oracle(&scene);
    let mut doc = TraceDocument::new(
        "snell",
        format!("h1 = {h1}, h2 = {h2}, d = {d}, v1 = {v1}, v2 = {v2}"),
    )
    .with_trace(&sol.trace);
    doc.assumptions = assumptions_of(&sol.trace);
    let doc = doc
        .assume("n = 1, b = sin(theta1), a = sin(theta2), m = b*v2/v1")
        .set("condition", sol.symbolic.condition.to_string())
        .set("law", format!("a = {}", sol.symbolic.root))
        .set("x_star", sol.x_star)
        .set("least_time_x", oracle)
        .set("sine_ratio", sine_ratio(&scene, sol.x_star))
        .set("speed_ratio", v1 / v2)
        .summary(format!("x* = {:.12}", sol.x_star));
    Ok(Report {
        doc,
        status: Status::Solved,
    })
}

pub fn tlh(expr: &str) -> Result<Report, CliError> {
    let s = parse_graded(expr)?;
    let mut trace = DerivationTrace::new();
    for (c, tag, grade) in s.terms() {
        let tag_text = tag
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join("*");
        trace.push(
            Rule::Annotate,
            "",
            format!("coefficient {c}, differentials [{tag_text}]"),
            format!("grade {grade}"),
        );
    }
    let reduced = tlh_reduce(&s)?;
    let g = reduced.min_grade().unwrap_or(0);
    trace.push(
        Rule::Annotate,
        s.to_string(),
        reduced.to_string(),
        format!("keep only the terms of lowest grade {g}"),
    );
    let doc = TraceDocument::new("tlh", expr)
        .with_trace(&trace)
        .assume("grade(dX) = 1, grade(ddX) = 2; grades add under multiplication")
        .set("reduced", reduced.to_string())
        .set("grade", g)
        .summary(reduced.to_string());
    Ok(Report {
        doc,
        status: Status::Solved,
    })
}

pub fn dual(expr: &str, unknown: char) -> Result<Report, CliError> {
    let x = var(unknown, "unknown")?;
    let form = parse_canonical(expr)?;
    let p = form
        .as_poly()
        .ok_or_else(|| CliError::Input("dual needs a polynomial".into()))?;
    let q = derivative_via_dual(p, x);
    let mut trace = DerivationTrace::new();
    trace.push(
        Rule::Substitute,
        format!("p({x}) = {p}"),
        format!("p({x} + eps) = {p} + ({q})*eps"),
        "expand with eps^2 = 0",
    );
    trace.push(
        Rule::Solve,
        "",
        format!("p'({x}) = {q}"),
        "coefficient of eps",
    );
    let doc = TraceDocument::new("dual", expr)
        .with_trace(&trace)
        .set("unknown", x.to_string())
        .set("derivative", q.to_string())
        .summary(q.to_string());
    Ok(Report {
        doc,
        status: Status::Solved,
    })
}
