use markov_nikolskii::analysis::{
    key_inequality_suite, oracle_suite, qseries_suite, remez_suite, Check, SuiteReport,
};
use markov_nikolskii::{
    bernstein_qazi, kroo_szabados_l1, kroo_szabados_sup, sweep_and_fit, Family,
};
use serde_json::{json, Value};

use crate::args::{ConstantsArgs, FamilyName, Format, Suite, SweepArgs, VerifyArgs};
use crate::grid::sig12;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Rendered output of a command; `failed` maps to exit code 1.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

fn ok(text: String) -> Outcome {
    Outcome {
        text,
        failed: false,
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn constants(args: &ConstantsArgs) -> Result<Outcome, String> {
    if args.k.is_none() && !args.bernstein {
        return Err("nothing to compute: pass --k and/or --bernstein".into());
    }
    if let Some(k) = args.k {
        if k == 0 {
            return Err("--k must be at least 1".into());
        }
        if k > args.n.lo {
            return Err(format!("--k {k} exceeds the degree n = {}", args.n.lo));
        }
    }
    let mut header = vec!["n"];
    if args.k.is_some() {
        header.push("k");
    }
    if args.bernstein {
        header.push("bernstein_qazi");
    }
    if args.k.is_some() {
        header.extend(["kroo_szabados_sup", "kroo_szabados_l1"]);
    }

    let mut rows = Vec::new();
    let mut records = Vec::new();
    for n in args.n.iter() {
        let mut row = vec![n.to_string()];
        let mut rec = serde_json::Map::new();
        rec.insert("n".into(), json!(n));
        if let Some(k) = args.k {
            row.push(k.to_string());
            rec.insert("k".into(), json!(k));
        }
        if args.bernstein {
            let b = bernstein_qazi(n as u64).map_err(|e| e.to_string())?;
            row.push(b.to_string());
            rec.insert("bernstein_qazi".into(), json!(b.to_string()));
        }
        if let Some(k) = args.k {
            // The sup-norm constant needs k >= 2.
            let sup = if k >= 2 {
                Some(kroo_szabados_sup(n, k).map_err(|e| e.to_string())?)
            } else {
                None
            };
            let l1 = kroo_szabados_l1(n, k).map_err(|e| e.to_string())?;
            row.push(sup.map(sig12).unwrap_or_default());
            row.push(sig12(l1));
            rec.insert("kroo_szabados_sup".into(), json!(sup));
            rec.insert("kroo_szabados_l1".into(), json!(l1));
        }
        rows.push(row);
        records.push(Value::Object(rec));
    }
    Ok(ok(match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => csv(&header, &rows),
        Format::Json => pretty(&json!({
            "command": "constants",
            "rows": records,
            "seed": args.common.seed,
            "version": VERSION,
        })),
    }))
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, String> {
    let seed = args.common.seed;
    let run = |suite: Suite| -> markov_nikolskii::Result<SuiteReport> {
        match suite {
            Suite::Remez => remez_suite(args.trials.unwrap_or(500), seed),
            Suite::KeyInequality => key_inequality_suite(args.trials.unwrap_or(200), seed),
            Suite::Oracle => oracle_suite(args.n, args.budget, seed),
            Suite::Qseries => qseries_suite(),
            Suite::All => unreachable!("expanded by the caller"),
        }
    };
    if args.suite == Suite::Oracle || args.suite == Suite::All {
        if args.n == 0 {
            return Err("--n must be at least 1 for the oracle suite".into());
        }
        if args.budget == 0 {
            return Err("--budget must be at least 1".into());
        }
    }
    if args.trials == Some(0) {
        return Err("--trials must be at least 1".into());
    }
    let (name, parts) = match args.suite {
        Suite::All => (
            "all",
            vec![
                Suite::Remez,
                Suite::KeyInequality,
                Suite::Oracle,
                Suite::Qseries,
            ],
        ),
        Suite::Remez => ("remez", vec![Suite::Remez]),
        Suite::KeyInequality => ("key-inequality", vec![Suite::KeyInequality]),
        Suite::Oracle => ("oracle", vec![Suite::Oracle]),
        Suite::Qseries => ("qseries", vec![Suite::Qseries]),
    };
    let mut checks: Vec<Check> = Vec::new();
    for s in parts {
        checks.extend(run(s).map_err(|e| e.to_string())?.checks);
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    let failed = checks.iter().any(|c| !c.pass);

    let text = match args.common.format.unwrap_or(Format::Json) {
        Format::Json => pretty(&json!({
            "suite": name,
            "checks": checks,
            "seed": seed,
            "version": VERSION,
        })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .flat_map(|c| {
                    c.values.iter().map(move |(k, v)| {
                        vec![c.name.clone(), c.pass.to_string(), k.clone(), sig12(*v)]
                    })
                })
                .collect();
            csv(&["check", "pass", "quantity", "value"], &rows)
        }
    };
    Ok(Outcome { text, failed })
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, String> {
    if args.grid.0.len() < 5 {
        return Err(format!(
            "grid has {} points; at least 5 are needed",
            args.grid.0.len()
        ));
    }
    let family = match args.family {
        FamilyName::Lower => Family::Lower {
            k: args.k,
            m: args.m,
        },
        FamilyName::Powerramp => Family::PowerRamp,
        FamilyName::Chebybump => Family::ChebyshevBump { k: args.k },
        FamilyName::KsExact => Family::KrooSzabados { k: args.k },
    };
    let sweep =
        sweep_and_fit(family, args.l, args.p, args.q, &args.grid.0).map_err(|e| e.to_string())?;
    let predicted = sweep
        .predicted
        .map(|r| r.to_string())
        .unwrap_or_else(|| "none".into());
    let text = match args.common.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = sweep
                .samples
                .iter()
                .map(|s| {
                    let mut r = vec![
                        "sample".to_string(),
                        s.n.to_string(),
                        s.degree.to_string(),
                        sig12(s.ratio),
                    ];
                    r.extend(std::iter::repeat_n(String::new(), 5));
                    r
                })
                .collect();
            let f = &sweep.fit;
            let mut fit_row = vec![
                "fit".to_string(),
                String::new(),
                String::new(),
                String::new(),
            ];
            fit_row.extend([
                sig12(f.n_exponent),
                sig12(f.log_exponent),
                sig12(f.residual),
                predicted,
                sweep.upper_bound_only.to_string(),
            ]);
            rows.push(fit_row);
            csv(
                &[
                    "record",
                    "n",
                    "degree",
                    "ratio",
                    "n_exponent",
                    "log_exponent",
                    "residual",
                    "predicted",
                    "upper_bound_only",
                ],
                &rows,
            )
        }
        Format::Json => pretty(&json!({
            "command": "sweep",
            "family": family.to_string(),
            "l": args.l,
            "p": args.p,
            "q": args.q,
            "samples": sweep.samples.iter().map(|s| json!({
                "n": s.n,
                "degree": s.degree,
                "ratio": s.ratio,
            })).collect::<Vec<_>>(),
            "fit": sweep.fit,
            "predicted": predicted,
            "upper_bound_only": sweep.upper_bound_only,
            "seed": args.common.seed,
            "version": VERSION,
        })),
    };
    Ok(ok(text))
}
