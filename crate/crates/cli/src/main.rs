//! `resurf`: residues, residue formulas and surface codes from the command
//! line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input out
//! of scope.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use resurf::agcodes::{
    check_delta_convenient, construct_convenient_pair, demo_p1xp1, differential_code, functional_code,
    verify_diff_equals_functional, verify_inclusion_orthogonal, ConveniencePair, RiemannRoch, ZeroCycle,
};
use resurf::codes::{rs_code, tensor_hull, LinearCode};
use resurf::fuzz::{case_rng, random_code};
use resurf::laurent::{default_v_precision, AnySeries, Mode};
use resurf::parse;
use resurf::surface::{res1, res2, res2_truncated, verify_rf1, verify_rf2, verify_rf3, weak_pair, RfReport, Surface, TwoForm};
use resurf::{Error, Field};

#[derive(Parser)]
#[command(name = "resurf", version, about = "Residues of 2-forms on P2 and P1xP1 over finite fields, and surface codes")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum SurfaceArg {
    P2,
    P1xp1,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Truncated,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeKind {
    Functional,
    Differential,
    Rs,
    Random,
}

#[derive(Args, Clone)]
struct Common {
    /// Field order q = p^m.
    #[arg(long)]
    q: Option<u64>,
    /// Characteristic (with --m-ext, instead of --q).
    #[arg(long)]
    p: Option<u32>,
    /// Extension degree over F_p.
    #[arg(long = "m-ext", default_value_t = 1)]
    m_ext: u32,
    #[arg(long, value_enum, default_value = "p1xp1")]
    surface: SurfaceArg,
    /// Emit JSON with sorted keys.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Verb {
    /// Field parameters and element enumeration.
    FieldInfo(Common),
    /// Laurent expansion of a rational function in k((u))((v)), u = x, v = y.
    Expand {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        form: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// v-precision (relative to the leading exponent).
        #[arg(long)]
        precision: Option<i64>,
        #[arg(long = "u-precision", default_value_t = 16)]
        u_precision: i64,
    },
    /// 2-residue of h·dx∧dy along a curve at a point.
    Res2 {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        form: String,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Starting window for the truncated mode.
        #[arg(long, default_value_t = 4)]
        precision: i64,
    },
    /// Sum of residues along a curve.
    VerifyRf1 {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        form: String,
        #[arg(long)]
        curve: String,
    },
    /// Sum of residues around a point.
    VerifyRf2 {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        form: String,
        #[arg(long)]
        point: String,
    },
    /// Sum of residues over D_a ∩ D_b.
    VerifyRf3 {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        form: String,
        #[arg(long)]
        da: String,
        #[arg(long)]
        db: String,
    },
    /// Basis of L(G) for a line-supported divisor.
    RrBasis {
        #[command(flatten)]
        c: Common,
        #[arg(long)]
        divisor: String,
    },
    /// Build a code as a generator matrix.
    CodeBuild {
        #[command(flatten)]
        c: Common,
        #[arg(long, value_enum, default_value = "functional")]
        kind: CodeKind,
        #[arg(long, default_value = "grid")]
        delta: String,
        /// G.
        #[arg(long, default_value = "0")]
        divisor: String,
        #[arg(long)]
        da: Option<String>,
        #[arg(long)]
        db: Option<String>,
        /// Dimension for rs and random codes.
        #[arg(long)]
        k: Option<usize>,
        /// Length for random codes.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the minimum distance by enumeration.
        #[arg(long)]
        distance: bool,
    },
    /// Dual of a code given as matrix JSON (inline or @file).
    CodeDual {
        #[arg(long)]
        code: String,
        #[arg(long)]
        json: bool,
    },
    /// Tensor product of two codes, or the tensor hull of one code.
    CodeTensor {
        #[arg(long, num_args = 1..=2, required = true)]
        code: Vec<String>,
        /// Length of the first factor (hull mode).
        #[arg(long)]
        na: Option<usize>,
        /// Length of the second factor (hull mode).
        #[arg(long)]
        nb: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the convenience criterion for (D_a, D_b) and Δ, or construct a
    /// pair when neither is given.
    CheckConvenient {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value = "grid")]
        delta: String,
        #[arg(long)]
        da: Option<String>,
        #[arg(long)]
        db: Option<String>,
    },
    /// Differential code inside the dual of the functional code.
    VerifyOrth {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value = "grid")]
        delta: String,
        #[arg(long, default_value = "0")]
        divisor: String,
        #[arg(long)]
        da: Option<String>,
        #[arg(long)]
        db: Option<String>,
    },
    /// Differential code equal to the functional code of K − G + D.
    VerifyDiffFunc {
        #[command(flatten)]
        c: Common,
        #[arg(long, default_value = "grid")]
        delta: String,
        #[arg(long, default_value = "0")]
        divisor: String,
        #[arg(long)]
        da: Option<String>,
        #[arg(long)]
        db: Option<String>,
    },
    /// The P1xP1 pipeline for G = mE + nF on the full grid.
    DemoP1xp1 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        json: bool,
    },
}

/// Result of a verb: the data, whether it reports a pass, and an optional
/// plain rendering.
struct Out {
    value: Value,
    pass: bool,
    plain: Option<String>,
}

impl Out {
    fn ok(value: Value) -> Out {
        Out { value, pass: true, plain: None }
    }
}

fn field(c: &Common) -> Result<Field, Error> {
    match (c.q, c.p) {
        (Some(q), None) => Field::with_order(q),
        (None, Some(p)) => Field::new(p, c.m_ext, None),
        _ => Err(Error::Parse("give exactly one of --q or --p".into())),
    }
}

fn surface(c: &Common) -> Result<Surface, Error> {
    let f = field(c)?;
    Ok(match c.surface {
        SurfaceArg::P2 => Surface::p2(f),
        SurfaceArg::P1xp1 => Surface::p1xp1(f),
    })
}

fn form(s: &Surface, text: &str) -> Result<TwoForm, Error> {
    TwoForm::new(*s, parse::rational(s.field, text)?)
}

fn rf_json(r: &RfReport) -> Value {
    json!({
        "sum": r.sum.to_string(),
        "pass": r.pass,
        "points": r.points.iter().map(|p| {
            let mut v = json!({"at": p.point, "degree": p.degree, "residue": p.residue.to_string()});
            if let Some(b) = p.residue_b {
                v["residue_b"] = json!(b.to_string());
            }
            v
        }).collect::<Vec<_>>(),
    })
}

fn pair(s: &Surface, delta: &ZeroCycle, da: &Option<String>, db: &Option<String>) -> Result<ConveniencePair, Error> {
    match (da, db) {
        (Some(a), Some(b)) => check_delta_convenient(s, &parse::divisor(s, a)?, &parse::divisor(s, b)?, delta),
        (None, None) => construct_convenient_pair(s, delta),
        _ => Err(Error::Parse("give both --da and --db, or neither".into())),
    }
}

fn read_code(arg: &str) -> Result<LinearCode, Error> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    LinearCode::from_json(&v)
}

fn code_json(c: &LinearCode) -> Value {
    json!({"code": c.to_json(), "dim": c.dim(), "length": c.len()})
}

fn run(verb: Verb) -> Result<(Out, bool), Error> {
    let out = match verb {
        Verb::FieldInfo(c) => {
            let f = field(&c)?;
            let json = c.json;
            let v = json!({
                "q": f.q(), "p": f.p(), "m": f.m(),
                "modulus": f.modulus(),
                "generator": f.generator().to_string(),
                "elements": f.elements().map(|a| a.to_string()).collect::<Vec<_>>(),
            });
            return Ok((Out::ok(v), json));
        }
        Verb::Expand { c, form: text, mode, precision, u_precision } => {
            let f = field(&c)?;
            let h = parse::rational(f, &text)?;
            let mode = match mode {
                ModeArg::Exact => Mode::Exact,
                ModeArg::Truncated => Mode::Truncated { u_precision },
            };
            let vp = precision.unwrap_or_else(|| default_v_precision(h.den().rows().len() as i64 - 1));
            let s = AnySeries::expand(h.num(), h.den(), mode, vp)?;
            let residue = s.residue2_coeff().map(|r| r.to_string()).map_err(|e| e.to_string());
            let v = json!({
                "series": s.to_string(),
                "rho": s.rho_string().unwrap_or_default(),
                "residue2": residue.clone().ok(),
                "residue2_error": residue.err(),
            });
            (Out::ok(v), c.json)
        }
        Verb::Res2 { c, form: text, curve, point, mode, precision } => {
            let s = surface(&c)?;
            let w = form(&s, &text)?;
            let cv = parse::curve(&s, &curve)?;
            let p = parse::point(&s, &point)?;
            let r = match mode {
                ModeArg::Exact => res2(&w, &cv, &p)?,
                ModeArg::Truncated => res2_truncated(&w, &cv, &p, precision, false)?,
            };
            let wp = weak_pair(&s, &cv, &p)?;
            let (u, v) = wp.describe();
            let r1 = res1(&w, &cv, &p)?;
            let value = json!({
                "residue": r.to_string(),
                "res1": r1.to_string(),
                "u": u, "v": v,
                "curve": cv.to_string(),
                "point": s.fmt_point(&p),
            });
            (Out { value, pass: true, plain: Some(r.to_string()) }, c.json)
        }
        Verb::VerifyRf1 { c, form: text, curve } => {
            let s = surface(&c)?;
            let r = verify_rf1(&form(&s, &text)?, &parse::curve(&s, &curve)?)?;
            (Out { value: rf_json(&r), pass: r.pass, plain: None }, c.json)
        }
        Verb::VerifyRf2 { c, form: text, point } => {
            let s = surface(&c)?;
            let r = verify_rf2(&form(&s, &text)?, &parse::point(&s, &point)?)?;
            (Out { value: rf_json(&r), pass: r.pass, plain: None }, c.json)
        }
        Verb::VerifyRf3 { c, form: text, da, db } => {
            let s = surface(&c)?;
            let r = verify_rf3(&form(&s, &text)?, &parse::divisor(&s, &da)?, &parse::divisor(&s, &db)?)?;
            (Out { value: rf_json(&r), pass: r.pass, plain: None }, c.json)
        }
        Verb::RrBasis { c, divisor } => {
            let s = surface(&c)?;
            let rr = RiemannRoch::new(&s, &parse::divisor(&s, &divisor)?)?;
            let basis: Vec<String> = rr.basis().iter().map(|f| f.to_string()).collect();
            (Out::ok(json!({"dim": basis.len(), "basis": basis})), c.json)
        }
        Verb::CodeBuild { c, kind, delta, divisor, da, db, k, n, seed, distance } => {
            let s = surface(&c)?;
            let need = |x: Option<usize>, name: &str| x.ok_or_else(|| Error::Parse(format!("--{name} is required")));
            let code = match kind {
                CodeKind::Functional => {
                    functional_code(&s, &parse::zero_cycle(&s, &delta)?, &parse::divisor(&s, &divisor)?)?
                }
                CodeKind::Differential => {
                    let z = parse::zero_cycle(&s, &delta)?;
                    let pr = pair(&s, &z, &da, &db)?;
                    differential_code(&s, &z, &pr, &parse::divisor(&s, &divisor)?)?.code
                }
                CodeKind::Rs => rs_code(s.field, need(k, "k")?)?,
                CodeKind::Random => random_code(&mut case_rng(seed, 0), s.field, need(n, "n")?, need(k, "k")?),
            };
            let mut v = code_json(&code);
            if distance {
                v["min_distance"] = json!(code.min_distance()?);
            }
            (Out::ok(v), c.json)
        }
        Verb::CodeDual { code, json } => (Out::ok(code_json(&read_code(&code)?.dual())), json),
        Verb::CodeTensor { code, na, nb, json } => {
            let a = read_code(&code[0])?;
            match (code.get(1), na, nb) {
                (Some(b), None, None) => (Out::ok(code_json(&a.tensor(&read_code(b)?)?)), json),
                (None, Some(na), Some(nb)) => {
                    let (u, v, el) = tensor_hull(&a, na, nb)?;
                    (Out::ok(json!({"u": code_json(&u), "v": code_json(&v), "elementary": el})), json)
                }
                _ => return Err(Error::Parse("give two codes, or one code with --na and --nb".into())),
            }
        }
        Verb::CheckConvenient { c, delta, da, db } => {
            let s = surface(&c)?;
            let z = parse::zero_cycle(&s, &delta)?;
            let pr = pair(&s, &z, &da, &db)?;
            (Out::ok(json!({"pass": true, "certificate": pr.to_json(&s)})), c.json)
        }
        Verb::VerifyOrth { c, delta, divisor, da, db } => {
            let s = surface(&c)?;
            let z = parse::zero_cycle(&s, &delta)?;
            let pr = pair(&s, &z, &da, &db)?;
            let r = verify_inclusion_orthogonal(&s, &z, &pr, &parse::divisor(&s, &divisor)?)?;
            (Out { pass: r.pass, value: json!(r), plain: None }, c.json)
        }
        Verb::VerifyDiffFunc { c, delta, divisor, da, db } => {
            let s = surface(&c)?;
            let z = parse::zero_cycle(&s, &delta)?;
            let pr = pair(&s, &z, &da, &db)?;
            let r = verify_diff_equals_functional(&s, &z, &pr, &parse::divisor(&s, &divisor)?)?;
            (Out { pass: r.pass, value: json!(r), plain: None }, c.json)
        }
        Verb::DemoP1xp1 { q, m, n, json } => {
            let reports = demo_p1xp1(Field::with_order(q)?, m, n)?;
            let pass = reports.iter().all(|r| r.pass);
            (Out { pass, value: json!({"q": q, "m": m, "n": n, "pass": pass, "claims": reports}), plain: None }, json)
        }
    };
    Ok(out)
}

/// Indented key: value lines.
fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    Value::Array(a) if a.iter().any(|e| e.is_object() || e.is_array()) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if x.is_object() || x.is_array() {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(x)));
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotConvenient(_) => 1,
        e if e.is_out_of_scope() || matches!(e, Error::Precision(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((out, as_json)) => {
            if as_json {
                println!("{}", serde_json::to_string_pretty(&out.value).expect("serializable"));
            } else if let Some(p) = out.plain {
                println!("{p}");
            } else {
                let mut s = String::new();
                render(&out.value, 0, &mut s);
                print!("{s}");
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            let code = exit_code(&e);
            if code == 1 {
                let v = json!({"pass": false, "witness": {"violation": e.to_string()}});
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
