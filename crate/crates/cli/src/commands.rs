use serde::Serialize;

use acp_core::algebra::{self, aid_defect, banach_norm, membership, membership_from_derivative, MembershipReport};
use acp_core::battery::{self, BATTERY_VERSION};
use acp_core::multipliers::{
    self, direct_check_with, dyadic_profile, growth_fit, log_damped_witness, operator_norm_bounds_with, verdict_with,
    DirectOutcome, DirectReport, EngineConfig, MultiplierVerdict, OperatorNormBounds, Verdict,
};
use acp_core::quadrature::hardy_ratio;
use acp_core::{parse, AsymptoticOrder, Exponent, PiecewiseFunction};

use crate::output::{num6, opt17, opt6, sci17, to_json, yes_no, Format, Table};

pub const EXIT_NOT_MEMBER: i32 = 3;
pub const EXIT_NOT_MULTIPLIER: i32 = 10;
pub const EXIT_INCONCLUSIVE: i32 = 11;
pub const EXIT_MISMATCH: i32 = 1;

/// Raised before any report is written; maps to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub struct Run {
    pub p: Exponent,
    pub r: Option<Exponent>,
    pub deriv: bool,
    pub engine: EngineConfig,
    pub format: Format,
    pub expr: String,
    pub witness: Option<String>,
}

pub struct Emitted {
    pub body: String,
    pub code: i32,
}

#[derive(Serialize)]
struct Tolerances {
    order: f64,
    continuity: f64,
    pointwise_slack: f64,
}

#[derive(Serialize)]
struct ConfigEcho {
    #[serde(serialize_with = "exponent")]
    p: Exponent,
    #[serde(serialize_with = "opt_exponent")]
    r: Option<Exponent>,
    deriv: bool,
    depth: usize,
    window: (u32, u32),
    tolerances: Tolerances,
}

#[derive(Serialize)]
struct Envelope<'a, T> {
    schema: u32,
    command: &'a str,
    config: ConfigEcho,
    result: T,
}

fn exponent<S: serde::Serializer>(e: &Exponent, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&e.to_string())
}

fn opt_exponent<S: serde::Serializer>(e: &Option<Exponent>, s: S) -> Result<S::Ok, S::Error> {
    match e {
        Some(e) => s.serialize_str(&e.to_string()),
        None => s.serialize_none(),
    }
}

impl Run {
    fn r(&self) -> Result<Exponent, UsageError> {
        self.r.ok_or_else(|| UsageError("this command needs --r".into()))
    }

    fn function(&self) -> Result<PiecewiseFunction, UsageError> {
        Ok(parse(&self.expr)?)
    }

    fn no_deriv(&self, command: &str) -> Result<(), UsageError> {
        if self.deriv {
            return Err(UsageError(format!("--deriv is only accepted by norm and membership, not {command}")));
        }
        Ok(())
    }

    fn emit<T: Serialize>(
        &self,
        command: &str,
        result: &T,
        text: impl FnOnce() -> String,
        csv: impl FnOnce() -> Table,
        code: i32,
    ) -> Emitted {
        let body = match self.format {
            Format::Json => to_json(&Envelope {
                schema: 1,
                command,
                config: ConfigEcho {
                    p: self.p,
                    r: self.r,
                    deriv: self.deriv,
                    depth: self.engine.depth,
                    window: self.engine.window,
                    tolerances: Tolerances {
                        order: multipliers::ORDER_TOL,
                        continuity: algebra::CONTINUITY_TOL,
                        pointwise_slack: algebra::EQ1_SLACK,
                    },
                },
                result,
            }),
            Format::Csv => csv().to_csv(),
            Format::Text => text(),
        };
        Emitted { body, code }
    }
}

pub fn order_text(o: &AsymptoticOrder) -> String {
    match *o {
        AsymptoticOrder::Zero => "0".into(),
        AsymptoticOrder::PowLog { coeff, a, b } => {
            let mut s = format!("{coeff}");
            if a != 0.0 {
                s += &format!(" t^{a}");
            }
            if b != 0.0 {
                s += &format!(" L^{b}");
            }
            s
        }
    }
}

fn membership_row(t: &mut Table, expr: &str, p: Exponent, input: &str, m: &MembershipReport) {
    t.push(vec![
        expr.into(),
        p.to_string(),
        input.into(),
        m.is_member.to_string(),
        m.limit_at_zero_ok.to_string(),
        m.continuity_ok.to_string(),
        m.derivative_in_lp.to_string(),
        sci17(m.norm),
    ]);
}

const MEMBERSHIP_HEADER: [&str; 8] = [
    "expr",
    "p",
    "input",
    "is_member",
    "limit_at_zero_ok",
    "continuity_ok",
    "derivative_in_lp",
    "norm",
];

fn diagnosis(m: &MembershipReport, deriv: bool) -> Vec<&'static str> {
    let mut out = Vec::new();
    if !m.limit_at_zero_ok {
        out.push(if deriv { "f' is not integrable at 0" } else { "f(0+) is not 0" });
    }
    if !deriv && !m.continuity_ok {
        out.push("f jumps at a breakpoint");
    }
    if !m.derivative_in_lp {
        out.push("f' is not in L^p near 0");
    }
    out
}

#[derive(Serialize)]
struct NormResult {
    expr: String,
    input: &'static str,
    membership: MembershipReport,
    f_order: Option<AsymptoticOrder>,
    f_prime_order: AsymptoticOrder,
    diagnosis: Vec<&'static str>,
}

fn norm_result(run: &Run) -> Result<NormResult, UsageError> {
    let f = run.function()?;
    let (report, f_order, f_prime_order) = if run.deriv {
        (membership_from_derivative(&f, run.p), None, f.dominant_order())
    } else {
        (membership(&f, run.p), Some(f.dominant_order()), f.derivative().dominant_order())
    };
    Ok(NormResult {
        expr: f.to_string(),
        input: if run.deriv { "f_prime" } else { "f" },
        diagnosis: diagnosis(&report, run.deriv),
        membership: report,
        f_order,
        f_prime_order,
    })
}

fn member_code(m: &MembershipReport) -> i32 {
    if m.is_member {
        0
    } else {
        EXIT_NOT_MEMBER
    }
}

pub fn norm(run: &Run) -> Result<Emitted, UsageError> {
    let res = norm_result(run)?;
    let m = &res.membership;
    let text = || {
        let mut s = format!("|||f||| = {}  (p = {})\n", num6(m.norm), run.p);
        s += &format!("member of AC_{}: {}\n", run.p, yes_no(m.is_member));
        for d in &res.diagnosis {
            s += &format!("  {d}\n");
        }
        if let Some(o) = &res.f_order {
            s += &format!("dominant order of f:  {}\n", order_text(o));
        }
        s += &format!("dominant order of f': {}\n", order_text(&res.f_prime_order));
        s
    };
    let csv = || {
        let mut t = Table::new(&MEMBERSHIP_HEADER);
        membership_row(&mut t, &res.expr, run.p, res.input, m);
        t
    };
    Ok(run.emit("norm", &res, text, csv, member_code(m)))
}

#[derive(Serialize)]
struct MembershipResult {
    #[serde(flatten)]
    base: NormResult,
    by_exponent: Vec<ExponentMembership>,
}

#[derive(Serialize)]
struct ExponentMembership {
    #[serde(serialize_with = "exponent")]
    p: Exponent,
    is_member: bool,
}

pub fn membership_cmd(run: &Run) -> Result<Emitted, UsageError> {
    let base = norm_result(run)?;
    let f = run.function()?;
    let by_exponent = [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY]
        .into_iter()
        .map(|p| {
            let p = Exponent::new(p).unwrap();
            let m = if run.deriv {
                membership_from_derivative(&f, p)
            } else {
                membership(&f, p)
            };
            ExponentMembership { p, is_member: m.is_member }
        })
        .collect();
    let res = MembershipResult { base, by_exponent };
    let m = &res.base.membership;
    let text = || {
        let mut s = format!("{}: member of AC_{}: {}\n", res.base.expr, run.p, yes_no(m.is_member));
        s += &format!("  f(0+) = 0:      {}\n", yes_no(m.limit_at_zero_ok));
        s += &format!("  continuous:     {}\n", yes_no(m.continuity_ok));
        s += &format!("  f' in L^p:      {}\n", yes_no(m.derivative_in_lp));
        s += &format!("  |||f|||:        {}\n", num6(m.norm));
        let mut t = Table::new(&["p", "member"]);
        for e in &res.by_exponent {
            t.push(vec![e.p.to_string(), yes_no(e.is_member).into()]);
        }
        s + "\n" + &t.to_text()
    };
    let csv = || {
        let mut t = Table::new(&MEMBERSHIP_HEADER);
        membership_row(&mut t, &res.base.expr, run.p, res.base.input, m);
        t
    };
    Ok(run.emit("membership", &res, text, csv, member_code(m)))
}

#[derive(Serialize)]
struct VerdictResult {
    expr: String,
    #[serde(flatten)]
    verdict: MultiplierVerdict,
    operator_norm: Option<OperatorNormBounds>,
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Multiplier => 0,
        Verdict::NotMultiplier => EXIT_NOT_MULTIPLIER,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn verdict(run: &Run) -> Result<Emitted, UsageError> {
    run.no_deriv("verdict")?;
    let m = run.function()?;
    let r = run.r()?;
    let v = verdict_with(&m, run.p, r, &run.engine)?;
    let operator_norm = if r == run.p && v.verdict == Verdict::Multiplier {
        operator_norm_bounds_with(&m, run.p, &run.engine).ok()
    } else {
        None
    };
    let res = VerdictResult {
        expr: m.to_string(),
        verdict: v,
        operator_norm,
    };
    let v = &res.verdict;
    let text = || {
        let mut s = format!("m = {}, p = {}, r = {}\n", res.expr, run.p, r);
        s += &format!("verdict: {:?} (route {})\n\n", v.verdict, v.route.label());
        let mut t = Table::new(&["condition", "pass", "analytic", "empirical"]);
        for c in &v.conditions {
            t.push(vec![c.name.clone(), yes_no(c.pass).into(), opt6(c.analytic), opt6(c.empirical)]);
        }
        s += &t.to_text();
        if let Some(b) = &res.operator_norm {
            s += &format!("\noperator norm in [{}, {}]\n", num6(b.lower), num6(b.upper));
        }
        s
    };
    let csv = || {
        let mut t = Table::new(&["verdict", "route", "condition", "pass", "analytic", "empirical"]);
        for c in &v.conditions {
            t.push(vec![
                format!("{:?}", v.verdict),
                v.route.label().into(),
                c.name.clone(),
                c.pass.to_string(),
                opt17(c.analytic),
                opt17(c.empirical),
            ]);
        }
        t
    };
    Ok(run.emit("verdict", &res, text, csv, verdict_code(v.verdict)))
}

#[derive(Serialize)]
struct ProfileRow {
    n: usize,
    #[serde(serialize_with = "finite_or_text")]
    block_norm: f64,
    #[serde(serialize_with = "finite_or_text")]
    weighted: f64,
    #[serde(serialize_with = "finite_or_text")]
    partial_sum: f64,
}

#[derive(Serialize)]
struct ProfileResult {
    expr: String,
    rows: Vec<ProfileRow>,
    fitted_slope: f64,
    analytic_slope: f64,
    weighted_rate: Option<f64>,
    weighted_log_power: Option<f64>,
    weighted_sup_finite: bool,
}

fn finite_or_text<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_str(&sci17(*x))
    }
}

pub fn profile(run: &Run) -> Result<Emitted, UsageError> {
    run.no_deriv("profile")?;
    let m = run.function()?;
    let r = run.r()?;
    let prof = dyadic_profile(&m, run.p, r, run.engine.depth)?;
    let fit = growth_fit(&m.derivative(), run.p, &run.engine);
    let rates = prof.weighted_rates();
    let rows = prof
        .block_norms
        .iter()
        .zip(&prof.weighted)
        .zip(prof.partial_sums())
        .enumerate()
        .map(|(i, ((&block_norm, &weighted), partial_sum))| ProfileRow {
            n: i + 1,
            block_norm,
            weighted,
            partial_sum,
        })
        .collect();
    let res = ProfileResult {
        expr: m.to_string(),
        rows,
        fitted_slope: fit.slope,
        analytic_slope: fit.analytic_slope,
        weighted_rate: rates.map(|x| x.rate),
        weighted_log_power: rates.map(|x| x.log_power),
        weighted_sup_finite: prof.weighted_sup_finite(),
    };
    let text = || {
        let mut s = format!("m = {}, p = {}, r = {}, depth {}\n", res.expr, run.p, r, run.engine.depth);
        s += &format!(
            "growth slope: fitted {}, analytic {}\n",
            num6(res.fitted_slope),
            num6(res.analytic_slope)
        );
        s += &format!(
            "weighted terms: rate {}, log power {}, bounded {}\n\n",
            opt6(res.weighted_rate),
            opt6(res.weighted_log_power),
            yes_no(res.weighted_sup_finite)
        );
        let mut t = Table::new(&["n", "block_norm", "weighted", "partial_sum"]);
        for row in &res.rows {
            t.push(vec![row.n.to_string(), num6(row.block_norm), num6(row.weighted), num6(row.partial_sum)]);
        }
        s + &t.to_text()
    };
    let csv = || {
        let mut t = Table::new(&["n", "block_norm", "weighted", "partial_sum", "fitted_slope"]);
        for row in &res.rows {
            t.push(vec![
                row.n.to_string(),
                sci17(row.block_norm),
                sci17(row.weighted),
                sci17(row.partial_sum),
                sci17(res.fitted_slope),
            ]);
        }
        t
    };
    Ok(run.emit("profile", &res, text, csv, 0))
}

#[derive(Serialize)]
struct AidResult {
    expr: String,
    norm: f64,
    rows: Vec<algebra::AidReport>,
}

pub fn aid(run: &Run) -> Result<Emitted, UsageError> {
    run.no_deriv("aid")?;
    let g = run.function()?;
    if run.p.is_infinite() {
        let w = algebra::no_aid_witness(&g)?;
        return Err(UsageError(format!(
            "AC_inf has no approximate identity: ||t g' + g - 1||_inf = {}",
            num6(w)
        )));
    }
    let report = membership(&g, run.p);
    if !report.is_member {
        let why = format!("{g} is not in AC_{}: {}", run.p, diagnosis(&report, false).join("; "));
        return Ok(not_member(run, "aid", &g, report, why));
    }
    let rows = (1..=20)
        .map(|k| aid_defect(&g, run.p, 2f64.powi(-k)))
        .collect::<Result<Vec<_>, _>>()?;
    let res = AidResult {
        expr: g.to_string(),
        norm: report.norm,
        rows,
    };
    let text = || {
        let mut s = format!("g = {}, p = {}, |||g||| = {}\n\n", res.expr, run.p, num6(res.norm));
        let mut t = Table::new(&["k", "alpha", "defect", "bound"]);
        for (k, row) in res.rows.iter().enumerate() {
            t.push(vec![(k + 1).to_string(), num6(row.alpha), num6(row.defect), num6(row.bound)]);
        }
        s += &t.to_text();
        s
    };
    let csv = || {
        let mut t = Table::new(&["k", "alpha", "defect", "bound"]);
        for (k, row) in res.rows.iter().enumerate() {
            t.push(vec![(k + 1).to_string(), sci17(row.alpha), sci17(row.defect), sci17(row.bound)]);
        }
        t
    };
    Ok(run.emit("aid", &res, text, csv, 0))
}

#[derive(Serialize)]
struct NotMember {
    expr: String,
    membership: MembershipReport,
    diagnosis: String,
}

fn not_member(run: &Run, command: &str, f: &PiecewiseFunction, membership: MembershipReport, diagnosis: String) -> Emitted {
    eprintln!("{diagnosis}");
    let res = NotMember {
        expr: f.to_string(),
        membership,
        diagnosis,
    };
    let text = || format!("{}\n", res.diagnosis);
    let csv = || {
        let mut t = Table::new(&MEMBERSHIP_HEADER);
        membership_row(&mut t, &res.expr, run.p, "f", &res.membership);
        t
    };
    run.emit(command, &res, text, csv, EXIT_NOT_MEMBER)
}

#[derive(Serialize)]
struct DirectResult {
    expr: String,
    #[serde(flatten)]
    report: DirectReport,
}

pub fn direct(run: &Run) -> Result<Emitted, UsageError> {
    run.no_deriv("direct-check")?;
    let m = run.function()?;
    let r = run.r()?;
    let g_prime = match &run.witness {
        Some(w) => parse(w)?,
        None => log_damped_witness(r),
    };
    let report = direct_check_with(&m, &g_prime, run.p, r, &run.engine)?;
    let code = match report.outcome {
        DirectOutcome::Member => 0,
        DirectOutcome::NotMember => EXIT_NOT_MULTIPLIER,
        DirectOutcome::NumericInconclusive => EXIT_INCONCLUSIVE,
    };
    let res = DirectResult {
        expr: m.to_string(),
        report,
    };
    let rep = &res.report;
    let text = || {
        let mut s = format!("m = {}, g' = {}, p = {}, r = {}\n", res.expr, rep.witness, run.p, r);
        s += &format!("m g in AC_p: {:?}\n", rep.outcome);
        s += &format!(
            "  (mg)' order: {}{}\n",
            rep.product_order.as_ref().map(order_text).unwrap_or_else(|| "-".into()),
            if rep.cancellation { " (leading terms cancel)" } else { "" }
        );
        s += &format!("  limit at 0 ok: {}, continuous: {}\n", yes_no(rep.limit_ok), yes_no(rep.continuity_ok));
        s += &format!(
            "  numeric: {:?}, block rate {}, log power {}\n",
            rep.numeric_outcome,
            opt6(rep.numeric.map(|x| x.rate)),
            opt6(rep.numeric.map(|x| x.log_power))
        );
        s
    };
    let csv = || {
        let mut t = Table::new(&["n", "block_mass"]);
        for (i, b) in rep.block_masses.iter().enumerate() {
            t.push(vec![(i + 1).to_string(), sci17(*b)]);
        }
        t
    };
    Ok(run.emit("direct-check", &res, text, csv, code))
}

#[derive(Serialize)]
struct ReproRow {
    case: String,
    expected: String,
    observed: String,
    pass: bool,
}

#[derive(Serialize)]
struct ReproResult {
    experiment: String,
    battery_version: u32,
    rows: Vec<ReproRow>,
    mismatches: usize,
}

fn row(case: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) -> ReproRow {
    ReproRow {
        case: case.into(),
        expected: expected.into(),
        observed: observed.into(),
        pass,
    }
}

fn exp(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

fn boundary_power(p: Exponent, r: Exponent, delta: f64) -> PiecewiseFunction {
    PiecewiseFunction::term(1.0, -(p.recip() - r.recip()) + delta, 0.0)
}

fn repro_ex1(run: &Run) -> Result<Vec<ReproRow>, UsageError> {
    let p = run.p;
    let r = run.r.unwrap_or(exp(4.0));
    if !(r.value() > p.value() && p.value() > 1.0) {
        return Err(UsageError("ex1 needs r > p > 1".into()));
    }
    let mut rows = Vec::new();
    for delta in [0.05, 0.1, 0.2] {
        let m = boundary_power(p, r, delta);
        let v = verdict_with(&m, p, r, &run.engine)?;
        let observed = format!("{:?}/{}", v.verdict, v.route.label());
        rows.push(row(
            format!("delta = {delta}, p = {p}, r = {r}"),
            "Multiplier/Thm6_sufficient_passed",
            observed.clone(),
            observed == "Multiplier/Thm6_sufficient_passed",
        ));
    }
    Ok(rows)
}

fn repro_ex2(run: &Run) -> Result<Vec<ReproRow>, UsageError> {
    let p = exp(2.0);
    let mut rows = Vec::new();
    for r in [3.0, 4.0] {
        let r = exp(r);
        let m = boundary_power(p, r, 0.0);
        let w = log_damped_witness(r);

        let d = direct_check_with(&m, &w, p, r, &run.engine)?;
        rows.push(row(
            format!("r = {r}: m g in AC_2 for g' = t^(-1/r) L^(-2/r)"),
            "NotMember",
            format!("{:?}", d.outcome),
            d.outcome == DirectOutcome::NotMember,
        ));
        let v = verdict_with(&m, p, r, &run.engine)?;
        rows.push(row(
            format!("r = {r}: verdict for m = t^(-1/v)"),
            "NotMultiplier",
            format!("{:?}/{}", v.verdict, v.route.label()),
            v.verdict == Verdict::NotMultiplier,
        ));
    }
    let r = exp(5.0);
    let m = boundary_power(p, r, 0.0);
    let v = verdict_with(&m, p, r, &run.engine)?;
    rows.push(row(
        format!("r = {r}: verdict for m = t^(-1/v)"),
        "Inconclusive",
        format!("{:?}/{}", v.verdict, v.route.label()),
        v.verdict == Verdict::Inconclusive,
    ));
    Ok(rows)
}

fn repro_aid() -> Result<Vec<ReproRow>, UsageError> {
    let mut rows = Vec::new();
    for p in [1.0, 1.5, 2.0, 4.0] {
        let p = exp(p);
        for (name, g) in battery::members(p) {
            if g.is_zero() {
                continue;
            }
            let norm = banach_norm(&g, p)?;
            let mut within_bound = true;
            let mut last = None;
            for k in 1..=20 {
                let rep = aid_defect(&g, p, 2f64.powi(-k))?;
                within_bound &= rep.defect <= rep.bound * (1.0 + 1e-12);
                last = Some(rep);
            }
            let last = last.unwrap();
            let rel = last.defect / norm;
            rows.push(row(
                format!("g = {name}, p = {p}"),
                "defect <= bound; defect(2^-20) < 1e-3 |||g|||",
                format!("bound held: {}; defect(2^-20)/|||g||| = {}", yes_no(within_bound), num6(rel)),
                within_bound && rel < 1e-3,
            ));
        }
    }
    Ok(rows)
}

fn repro_hardy() -> Result<Vec<ReproRow>, UsageError> {
    let mut rows = Vec::new();
    for p in [1.5, 2.0, 4.0] {
        let limit = p / (p - 1.0);
        let p = exp(p);
        for (name, g) in battery::members(p) {
            if g.is_zero() {
                continue;
            }
            let ratio = hardy_ratio(&g.derivative(), p)?;
            rows.push(row(
                format!("g = {name}, p = {p}"),
                format!("ratio <= {}", num6(limit)),
                num6(ratio),
                ratio <= limit + 1e-6,
            ));
        }
    }
    let g_prime = PiecewiseFunction::term(1.0, -0.25, 0.0);
    let ratio = hardy_ratio(&g_prime, exp(2.0))?;
    rows.push(row(
        "g' = t^-0.25, p = 2",
        format!("ratio = {}", num6(4.0 / 3.0)),
        num6(ratio),
        (ratio - 4.0 / 3.0).abs() <= 1e-8,
    ));
    Ok(rows)
}

pub fn reproduce(run: &Run) -> Result<Emitted, UsageError> {
    run.no_deriv("reproduce")?;
    let experiment = run.expr.trim();
    let rows = match experiment {
        "ex1" => repro_ex1(run)?,
        "ex2" => repro_ex2(run)?,
        "aid" => repro_aid()?,
        "hardy" => repro_hardy()?,
        other => return Err(UsageError(format!("unknown experiment '{other}' (expected ex1, ex2, aid or hardy)"))),
    };
    let mismatches = rows.iter().filter(|r| !r.pass).count();
    let res = ReproResult {
        experiment: experiment.into(),
        battery_version: BATTERY_VERSION,
        rows,
        mismatches,
    };
    let table = |full: bool| {
        let mut t = Table::new(&["case", "expected", "observed", "status"]);
        for r in &res.rows {
            let status = if r.pass { "ok" } else { "MISMATCH" };
            t.push(vec![r.case.clone(), r.expected.clone(), r.observed.clone(), status.into()]);
        }
        if !full {
            t.header[3] = "pass".into();
            for (cells, r) in t.rows.iter_mut().zip(&res.rows) {
                cells[3] = r.pass.to_string();
            }
        }
        t
    };
    let text = || {
        let mut s = table(true).to_text();
        s += &format!("\n{} of {} cases match\n", res.rows.len() - mismatches, res.rows.len());
        for r in res.rows.iter().filter(|r| !r.pass) {
            s += &format!("- {}\n  expected: {}\n  observed: {}\n", r.case, r.expected, r.observed);
        }
        s
    };
    let code = if mismatches == 0 { 0 } else { EXIT_MISMATCH };
    Ok(run.emit("reproduce", &res, text, || table(false), code))
}
