use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use subrings_core::bounds::bound_report;
use subrings_core::closure::{count_solutions, extract_conditions, Substitution};
use subrings_core::subgroups::sandwich_subring_audit;
use subrings_core::subring::{
    count_by_diagonal, count_irreducible, count_subrings, interpolate_count, CountKind, Interpolation,
};
use subrings_core::verify::{run_all, run_check, CheckReport};
use subrings_core::zeta::{local_coefficients, table1};
use subrings_core::{Composition, EnumConfig, Error, PolyP};

use crate::output::{csv, json, table, Format};
use crate::{Command, Common, Kind};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }

    /// Exit status 2 when a comparison found a disagreement.
    fn compared(text: String, agrees: bool) -> Self {
        Output { text, code: if agrees { 0 } else { 2 } }
    }
}

pub enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Res = std::result::Result<Output, Failure>;

fn no_csv(command: &str) -> Failure {
    Failure::Usage(format!("{command} output is nested; use --format json or text"))
}

fn small(x: &BigInt) -> std::result::Result<i64, Failure> {
    x.to_i64().ok_or_else(|| Failure::Usage(format!("{x} does not fit in a 64-bit output field")))
}

fn coefficients(poly: &PolyP) -> std::result::Result<Vec<i64>, Failure> {
    poly.coeffs().iter().map(small).collect()
}

pub fn run(command: &Command, common: &Common) -> Res {
    let cfg = EnumConfig::with_budget(common.node_budget);
    let fmt = common.format;
    match command {
        Command::Count { n, e, p, kind, alpha } => count(*n, *e, *p, *kind, alpha.as_deref(), fmt, &cfg),
        Command::Interp { n, e, primes, degree_cap, kind } => interp(*n, *e, primes, *degree_cap, *kind, fmt, &cfg),
        Command::Bounds { n, e } => bounds(*n, *e, fmt),
        Command::Table1 { strict } => table_one(*strict, fmt),
        Command::ZetaCoeff { n, e, p } => zeta_coeff(*n, *e, *p, fmt),
        Command::Closure { alpha, p, subst } => closure(alpha, *p, subst, fmt, &cfg),
        Command::AuditSandwich { n, m } => audit(*n, *m, fmt),
        Command::Verify { check } => verify(*check, fmt, &cfg),
    }
}

fn count(n: Option<usize>, e: Option<usize>, p: u64, kind: Kind, alpha: Option<&[usize]>, fmt: Format, cfg: &EnumConfig) -> Res {
    let (key, label, value) = match alpha {
        Some(parts) => {
            let a = Composition::new(parts.to_vec())?;
            ("g_alpha", format!("g_{a}({p})"), count_by_diagonal(&a, p, cfg)?)
        }
        None => {
            let (n, e) = match (n, e) {
                (Some(n), Some(e)) => (n, e),
                _ => return Err(Failure::Usage("count needs --n and --e, or --alpha".into())),
            };
            match kind {
                Kind::F => ("f", format!("f_{n}({p}^{e})"), count_subrings(n, e, p, cfg)?),
                Kind::G => ("g", format!("g_{n}({p}^{e})"), count_irreducible(n, e, p, cfg)?),
            }
        }
    };
    let text = match fmt {
        Format::Json => json(&serde_json::json!({ key: value })),
        Format::Csv => format!("{key}\n{value}\n"),
        Format::Text => format!("{label} = {value}\n"),
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct InterpOut<'a> {
    kind: &'a str,
    n: usize,
    e: usize,
    primes: &'a [u64],
    degree_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
    /// Coefficients of `p^0, p^1, ...`.
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inconsistent: Option<InconsistentOut>,
}

#[derive(Serialize)]
struct InconsistentOut {
    prime: u64,
    observed: String,
    predicted: String,
    reason: String,
}

fn interp(n: usize, e: usize, primes: &[u64], cap: usize, kind: Kind, fmt: Format, cfg: &EnumConfig) -> Res {
    if fmt == Format::Csv {
        return Err(no_csv("interp"));
    }
    let (count_kind, name) = match kind {
        Kind::F => (CountKind::Subrings, "f"),
        Kind::G => (CountKind::Irreducible, "g"),
    };
    let fit = interpolate_count(count_kind, n, e, primes, cap, cfg)?;
    let mut out =
        InterpOut { kind: name, n, e, primes, degree_cap: cap, polynomial: None, coefficients: None, inconsistent: None };
    match &fit {
        Interpolation::Fit(poly) => {
            out.polynomial = Some(poly.to_string());
            out.coefficients = Some(coefficients(poly)?);
        }
        Interpolation::Inconsistent(r) => {
            out.inconsistent = Some(InconsistentOut {
                prime: r.prime,
                observed: r.observed.to_string(),
                predicted: r.predicted.clone(),
                reason: r.reason.clone(),
            });
        }
    }
    let text = match fmt {
        Format::Text => match &fit {
            Interpolation::Fit(poly) => format!("{name}_{n}(p^{e}) = {poly}\n"),
            Interpolation::Inconsistent(r) => format!(
                "no polynomial of degree <= {cap}: at p = {} observed {}, predicted {} ({})\n",
                r.prime, r.observed, r.predicted, r.reason
            ),
        },
        _ => json(&out),
    };
    Ok(Output::compared(text, out.inconsistent.is_none()))
}

fn bounds(n: usize, e: usize, fmt: Format) -> Res {
    let r = bound_report(n, e)?;
    let text = match fmt {
        Format::Json => json(&r),
        Format::Csv => csv(&[&r]),
        Format::Text => {
            let t = r.h_witness_t.map_or("-".to_string(), |t| t.to_string());
            format!(
                "n = {n}, e = {e}\nh = {} (t = {t})\nb = {} (d = {})\nc = {:.6} (C = {:.6})\ncap = {:.6}\n",
                r.h, r.b, r.b_witness_d, r.c, r.c_argmax, r.cap
            )
        }
    };
    Ok(Output::ok(text))
}

fn table_one(strict: bool, fmt: Format) -> Res {
    let rows = table1()?;
    let text = match fmt {
        Format::Json => json(&rows),
        Format::Csv => csv(&rows),
        Format::Text => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.e.to_string(),
                        r.h_computed.to_string(),
                        r.b_computed.to_string(),
                        r.h_printed.to_string(),
                        r.b_printed.to_string(),
                        if r.matches() { "match".into() } else { "MISMATCH".into() },
                    ]
                })
                .collect();
            table(&["n", "e", "h", "b", "h printed", "b printed", ""], &body)
        }
    };
    let agrees = !strict || rows.iter().all(|r| r.matches());
    Ok(Output::compared(text, agrees))
}

#[derive(Serialize)]
struct CoeffOut {
    e: usize,
    coefficient: String,
    coefficients: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

fn zeta_coeff(n: usize, max_e: usize, p: Option<u64>, fmt: Format) -> Res {
    if let Some(p) = p {
        if !subrings_core::subring::is_prime(p) {
            return Err(Failure::Usage(format!("{p} is not prime")));
        }
    }
    let coeffs = local_coefficients(n, max_e)?;
    let rows: Vec<CoeffOut> = coeffs
        .iter()
        .enumerate()
        .map(|(e, c)| {
            Ok(CoeffOut {
                e,
                coefficient: c.to_string(),
                coefficients: coefficients(c)?,
                value: p.map(|p| c.eval_u64(p).to_string()),
            })
        })
        .collect::<std::result::Result<_, Failure>>()?;
    let text = match fmt {
        Format::Json => json(&rows),
        Format::Csv => {
            let width = rows.iter().map(|r| r.coefficients.len()).max().unwrap_or(0);
            let mut header: Vec<String> = vec!["e".into()];
            header.extend((0..width).map(|i| format!("p{i}")));
            if p.is_some() {
                header.push("value".into());
            }
            let mut w = ::csv::Writer::from_writer(Vec::new());
            w.write_record(&header).map_err(|e| Failure::Usage(e.to_string()))?;
            for r in &rows {
                let mut rec = vec![r.e.to_string()];
                rec.extend((0..width).map(|i| r.coefficients.get(i).copied().unwrap_or(0).to_string()));
                rec.extend(r.value.clone());
                w.write_record(&rec).map_err(|e| Failure::Usage(e.to_string()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?).expect("utf-8")
        }
        Format::Text => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.e.to_string(), r.coefficient.clone()];
                    row.extend(r.value.clone());
                    row
                })
                .collect();
            let mut header = vec!["e", "f_n(p^e)"];
            if p.is_some() {
                header.push("value");
            }
            table(&header, &body)
        }
    };
    Ok(Output::ok(text))
}

#[derive(Serialize)]
struct VariableOut {
    name: String,
    range_exponent: u32,
}

#[derive(Serialize)]
struct ConditionOut {
    condition: String,
    modulus_exponent: u32,
    source_pair: (usize, usize),
    row: usize,
}

#[derive(Serialize)]
struct ClosureOut {
    alpha: Vec<usize>,
    p: u64,
    substitutions: Vec<Substitution>,
    variables: Vec<VariableOut>,
    conditions: Vec<ConditionOut>,
    solutions: u64,
    count_by_diagonal: u64,
    agrees: bool,
}

fn closure(alpha: &[usize], p: u64, subs: &[Substitution], fmt: Format, cfg: &EnumConfig) -> Res {
    if fmt == Format::Csv {
        return Err(no_csv("closure"));
    }
    let a = Composition::new(alpha.to_vec())?;
    if !subrings_core::subring::is_prime(p) {
        return Err(Failure::Usage(format!("{p} is not prime")));
    }
    let system = extract_conditions(&a, subs)?;
    let solutions = count_solutions(&system, p, cfg.node_budget)?;
    let direct = count_by_diagonal(&a, p, cfg)?;
    let out = ClosureOut {
        alpha: alpha.to_vec(),
        p,
        substitutions: subs.to_vec(),
        variables: system
            .variables
            .iter()
            .map(|v| VariableOut { name: v.var.to_string(), range_exponent: v.range_exponent })
            .collect(),
        conditions: system
            .conditions
            .iter()
            .map(|c| ConditionOut {
                condition: c.to_string(),
                modulus_exponent: c.r,
                source_pair: c.source_pair,
                row: c.row,
            })
            .collect(),
        solutions,
        count_by_diagonal: direct,
        agrees: solutions == direct,
    };
    let text = match fmt {
        Format::Text => {
            let mut s = format!("alpha = {a}, p = {p}\n");
            for c in &out.conditions {
                s.push_str(&format!("  {}   [pair {:?}, row {}]\n", c.condition, c.source_pair, c.row));
            }
            s.push_str(&format!("solutions = {solutions}\nenumerated = {direct}\n"));
            s
        }
        _ => json(&out),
    };
    Ok(Output::compared(text, out.agrees))
}

fn audit(n: usize, m: u64, fmt: Format) -> Res {
    let a = sandwich_subring_audit(n, m)?;
    let text = match fmt {
        Format::Json => json(&a),
        Format::Csv => csv(&a.rows),
        Format::Text => {
            let body: Vec<Vec<String>> = a
                .rows
                .iter()
                .map(|r| vec![format!("{}^{}", a.prime, r.index_exponent), r.subgroup_count.to_string(), r.violations.to_string()])
                .collect();
            table(&["index", "subgroups", "violations"], &body)
        }
    };
    Ok(Output::compared(text, a.total_violations() == 0))
}

fn verify(check: Option<usize>, fmt: Format, cfg: &EnumConfig) -> Res {
    if fmt == Format::Csv {
        return Err(no_csv("verify"));
    }
    let reports: Vec<CheckReport> = match check {
        Some(id) => vec![run_check(id, cfg)?],
        None => run_all(cfg),
    };
    let text = match fmt {
        Format::Text => {
            let mut s: String = reports.iter().map(|r| format!("{}\n", r.line())).collect();
            let passed = reports.iter().filter(|r| r.passed).count();
            s.push_str(&format!("{passed} of {} checks passed\n", reports.len()));
            s
        }
        _ => json(&reports),
    };
    Ok(Output::compared(text, reports.iter().all(|r| r.passed)))
}
