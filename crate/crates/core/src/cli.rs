//! Verb-style command line over the library.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use wittforge::bounds::{self, BoundReport, Parity, RangePolicy};
use wittforge::io::{self, AnyForm, FieldSpec, PfisterRecord};
use wittforge::selftest::{run_selftest, DEFAULT_SEED};
use wittforge::{
    cliff_mul, group_summary, pair_commutator, render_table, BaseField, CliffordElement, DiagonalForm, FieldElem,
    IdealLevel, PfisterSlots, TableKind,
};

/// Environment variable that seeds `selftest`.
pub const SEED_VAR: &str = "WITTFORGE_SEED";

/// Malformed invocation that clap cannot see (missing operand, unreadable file).
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// 2 for usage and parse errors, 1 for domain errors.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match e.downcast_ref::<wittforge::Error>() {
        Some(wittforge::Error::Parse { .. }) => 2,
        _ => 1,
    }
}

#[derive(Parser, Debug)]
#[command(name = "wittforge", version, about = "Quadratic forms, Pfister forms, Clifford 2-groups and spin bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Args, Debug)]
pub struct FormArgs {
    /// Form as inline JSON or a path to a JSON file.
    #[arg(long)]
    form: Option<String>,
    /// `Q` or `Fp:<p>`; must agree with the form's own field.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Dimension, signed discriminant, signature and local symbols.
    Invariants(FormArgs),
    /// Whether two forms are Witt-equivalent (pass --form twice).
    WittEquiv {
        #[arg(long, num_args = 1)]
        form: Vec<String>,
        #[arg(long)]
        field: Option<String>,
    },
    /// Whether a form is hyperbolic.
    Hyperbolic(FormArgs),
    /// Whether the Witt class of a form lies in I^level.
    Ideal {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
        level: u8,
    },
    /// Diagonal expansion of Pfister forms given as JSON records.
    PfisterExpand {
        /// One record or a list, inline or from a file.
        #[arg(long)]
        pfister: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Signed Pfister decomposition of a form in I^1 or I^2.
    Decompose {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        level: u8,
    },
    /// The form φ assembled from 3-fold Pfister records.
    Phi {
        #[arg(long)]
        pfister: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Structure of the Clifford 2-group G_n; optionally multiply two elements.
    Clifford {
        #[arg(long)]
        n: u32,
        /// Two elements like "+e{1,2}" to multiply.
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        mul: Option<Vec<String>>,
    },
    /// Essential dimension of G_n from its group structure.
    Ed {
        #[arg(long)]
        n: u32,
    },
    /// Every bound that applies at n.
    Bounds {
        #[arg(long)]
        n: u32,
        /// Evaluate formulas outside their stated validity ranges.
        #[arg(long)]
        explore: bool,
    },
    /// TSV table of bound values.
    Table {
        #[arg(long, default_value = "all")]
        kind: String,
    },
    /// Property suites at reduced scale, seeded by WITTFORGE_SEED.
    Selftest,
}

fn read_source(arg: &str, what: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| usage(format!("--{what} {arg:?}: {e}")))
}

fn load_form(args: &FormArgs) -> Result<AnyForm> {
    let src = args.form.as_deref().ok_or_else(|| usage("--form is required"))?;
    load_form_str(src, args.field.as_deref())
}

fn load_form_str(src: &str, field: Option<&str>) -> Result<AnyForm> {
    let f = io::parse_form_json(&read_source(src, "form")?)?;
    if let Some(spec) = field {
        let spec: FieldSpec = spec.parse()?;
        if spec.base_field()? != f.field() {
            return Err(wittforge::Error::Parse {
                field: "field".into(),
                msg: format!("--field {spec} disagrees with the form's field {}", f.field()),
            }
            .into());
        }
    }
    Ok(f)
}

/// Applies a generic body to whichever field the form lives over.
macro_rules! with_form {
    ($f:expr, |$q:ident| $body:expr) => {
        match $f {
            AnyForm::Q($q) => $body,
            AnyForm::Fp($q) => $body,
        }
    };
}

struct Out {
    format: Format,
    text: String,
}

impl Out {
    /// Human text or a JSON value, depending on the format.
    fn emit(&mut self, human: impl FnOnce() -> String, machine: impl FnOnce() -> Value) {
        match self.format {
            Format::Human => self.text.push_str(&human()),
            Format::Machine => {
                self.text.push_str(&serde_json::to_string_pretty(&machine()).expect("json"));
                self.text.push('\n');
            }
        }
    }
}

fn places_json<K>(m: &std::collections::BTreeMap<wittforge::Place, K>) -> Vec<String> {
    m.keys().map(|p| p.to_string()).collect()
}

fn invariants<K: FieldElem>(q: &DiagonalForm<K>, out: &mut Out) {
    let inv = q.invariants();
    let hasse = places_json(&inv.hasse_symbols);
    let witt = places_json(&inv.clifford_symbols);
    out.emit(
        || {
            let mut s =
                format!("form: {q}\ndimension: {}\nsigned discriminant: {}\n", inv.dimension, inv.signed_discriminant);
            if let Some(sig) = inv.signature {
                let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
                writeln!(s, "signature: {sig}").unwrap();
                writeln!(s, "hasse -1 at: {}", list(&hasse)).unwrap();
                writeln!(s, "witt invariant -1 at: {}", list(&witt)).unwrap();
            }
            s
        },
        || {
            json!({
                "form": io::form_to_record(q),
                "dimension": inv.dimension,
                "signed_discriminant": inv.signed_discriminant.to_string(),
                "signature": inv.signature,
                "hasse_minus": hasse,
                "witt_minus": witt,
            })
        },
    );
}

fn boolean(out: &mut Out, key: &str, v: bool) {
    out.emit(|| format!("{v}\n"), || json!({ key: v }));
}

fn parse_pfisters<K: FieldElem>(field: &BaseField, src: &str) -> Result<Vec<PfisterSlots<K>>> {
    let recs = io::parse_pfister_json(&read_source(src, "pfister")?)?;
    Ok(recs.iter().map(|r| io::pfister_from_record(field, r)).collect::<wittforge::Result<_>>()?)
}

fn pfister_expand<K: FieldElem>(field: &BaseField, src: &str, out: &mut Out) -> Result<()> {
    let ps = parse_pfisters::<K>(field, src)?;
    let forms: Vec<DiagonalForm<K>> = ps.iter().map(PfisterSlots::signed_expansion).collect();
    out.emit(
        || ps.iter().zip(&forms).map(|(p, f)| format!("{p} = {f}\n")).collect(),
        || json!(forms.iter().map(io::form_to_record).collect::<Vec<_>>()),
    );
    Ok(())
}

fn decompose<K: FieldElem>(q: &DiagonalForm<K>, level: u8, out: &mut Out) -> Result<()> {
    let terms = if level == 1 { wittforge::decompose_i1(q)? } else { wittforge::decompose_i2(q)? };
    let recs: Vec<PfisterRecord> = terms.iter().map(io::pfister_to_record).collect();
    out.emit(
        || {
            let mut s = format!("{} terms\n", terms.len());
            for t in &terms {
                writeln!(s, "{t}").unwrap();
            }
            s
        },
        || json!({ "count": terms.len(), "terms": recs }),
    );
    Ok(())
}

fn phi<K: FieldElem>(field: &BaseField, src: &str, out: &mut Out) -> Result<()> {
    let ps = parse_pfisters::<K>(field, src)?;
    let phi = wittforge::assemble_phi(&ps)?;
    let in_i3 = wittforge::ideal_membership(&phi, IdealLevel::new(3)?);
    out.emit(
        || format!("phi: {phi}\ndimension: {}\nin I^3: {in_i3}\n", phi.dim()),
        || json!({ "phi": io::form_to_record(&phi), "dimension": phi.dim(), "in_i3": in_i3 }),
    );
    Ok(())
}

fn report_json(r: &BoundReport) -> Value {
    let details: serde_json::Map<String, Value> =
        r.details.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect();
    let value = match &r.value {
        bounds::BoundValue::Exact(q) => json!({ "exact": q.to_string() }),
        bounds::BoundValue::Enclosed(w) => json!({ "lo": w.lo.to_string(), "hi": w.hi.to_string() }),
    };
    json!({
        "name": r.name, "n": r.n, "value": value, "vacuous": r.vacuous,
        "validity": r.validity, "details": details,
    })
}

fn report_line(r: &BoundReport) -> String {
    let mut s = format!("{}: {}", r.name, r.value);
    if r.vacuous {
        s.push_str(" (vacuous)");
    }
    for (k, v) in &r.details {
        write!(s, ", {k} {v}").unwrap();
    }
    writeln!(s, "  [{}]", r.validity).unwrap();
    s
}

fn bounds_at(n: u32, explore: bool, out: &mut Out) -> Result<()> {
    let policy = if explore { RangePolicy::Explore } else { RangePolicy::Enforce };
    let mut reports = Vec::new();
    let mut push = |r: wittforge::Result<BoundReport>| {
        if let Ok(r) = r {
            reports.push(r);
        }
    };
    push(bounds::spin_lower(n));
    if n.is_multiple_of(4) {
        push(bounds::merkurjev_lower(n));
    }
    push(bounds::spin_upper_with(n, policy));
    push(bounds::chernousov_serre_lower_with(n, policy));
    if n.is_multiple_of(4) {
        push(bounds::hspin_value_with(n, policy));
    }
    if n >= 15 {
        let (lo, hi) = bounds::tn_interval(n)?;
        push(Ok(lo));
        push(Ok(hi));
    }
    if n.is_multiple_of(2) {
        push(bounds::pfister3_lower_bound(n));
    }
    if reports.is_empty() {
        return Err(wittforge::Error::OutOfRange { what: "bounds", n: n as i64, range: "n >= 3" }.into());
    }
    let rost = bounds::rost_table(n).ok();
    let roots: Vec<(Parity, bounds::RealWitness)> = if n >= 12 && n.is_multiple_of(2) {
        [Parity::Even, Parity::Odd].into_iter().map(|p| Ok((p, bounds::r_plus(n, p)?))).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    // Best lower and upper bounds for ed(Spin_n) among the reports.
    let int = |name: &str| reports.iter().find(|r| r.name == name).and_then(BoundReport::integer);
    let lower = int("merkurjev_lower").or_else(|| int("spin_lower"));
    let upper = int("spin_upper");
    out.emit(
        || {
            let mut s = String::new();
            if let Some(v) = rost {
                writeln!(s, "ed(Spin_{n}) = {v} (exact table value)").unwrap();
            } else if let (Some(l), Some(u)) = (&lower, &upper) {
                writeln!(s, "ed(Spin_{n}): lower {l}, upper {u}").unwrap();
            }
            for r in &reports {
                s.push_str(&report_line(r));
            }
            for (p, w) in &roots {
                writeln!(s, "r_plus ({p} r): {w}").unwrap();
            }
            s
        },
        || {
            json!({
                "n": n,
                "rost_table": rost,
                "lower": lower.as_ref().map(ToString::to_string),
                "upper": upper.as_ref().map(ToString::to_string),
                "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
                "r_plus": roots.iter().map(|(p, w)| json!({
                    "parity": p.to_string(), "lo": w.lo.to_string(), "hi": w.hi.to_string(),
                })).collect::<Vec<_>>(),
            })
        },
    );
    Ok(())
}

fn clifford(n: u32, mul: Option<&[String]>, out: &mut Out) -> Result<()> {
    if let Some([a, b]) = mul {
        let x = CliffordElement::parse(a, n)?;
        let y = CliffordElement::parse(b, n)?;
        let p = cliff_mul(&x, &y)?;
        let c = pair_commutator(&x, &y)?;
        out.emit(
            || format!("{x} * {y} = {p}\ncommutator: {c}1\n"),
            || json!({ "product": p.to_string(), "commutator": c.to_i8() }),
        );
        return Ok(());
    }
    let s = group_summary(n)?;
    let center: Vec<String> = s.center_elements.iter().map(ToString::to_string).collect();
    out.emit(
        || {
            format!(
                "order: {}\ncenter: {} {{{}}}\ncommutator subgroup order: {}\nexponent: {}\ned: {}\n",
                s.order,
                s.center_kind,
                center.join(", "),
                s.commutator_subgroup_order,
                s.exponent,
                s.ed_value
            )
        },
        || {
            json!({
                "n": n, "order": s.order, "center_kind": s.center_kind.to_string(), "center": center,
                "commutator_subgroup_order": s.commutator_subgroup_order, "exponent": s.exponent, "ed": s.ed_value,
            })
        },
    );
    Ok(())
}

fn seed() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_VAR}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn field_of(spec: &str) -> Result<BaseField> {
    Ok(spec.parse::<FieldSpec>()?.base_field()?)
}

pub fn run(cli: &Cli) -> Result<()> {
    let mut out = Out { format: cli.format, text: String::new() };
    let mut failed = None;
    match &cli.verb {
        Verb::Invariants(a) => with_form!(&load_form(a)?, |q| invariants(q, &mut out)),
        Verb::WittEquiv { form, field } => {
            let [a, b] = form.as_slice() else {
                return Err(usage("witt-equiv needs exactly two --form arguments"));
            };
            let v = match (load_form_str(a, field.as_deref())?, load_form_str(b, field.as_deref())?) {
                (AnyForm::Q(x), AnyForm::Q(y)) => wittforge::witt_equivalent(&x, &y)?,
                (AnyForm::Fp(x), AnyForm::Fp(y)) => wittforge::witt_equivalent(&x, &y)?,
                (x, y) => {
                    return Err(wittforge::Error::FieldMismatch(x.field().to_string(), y.field().to_string()).into())
                }
            };
            boolean(&mut out, "witt_equivalent", v);
        }
        Verb::Hyperbolic(a) => {
            let v = with_form!(&load_form(a)?, |q| wittforge::is_hyperbolic(q));
            boolean(&mut out, "hyperbolic", v);
        }
        Verb::Ideal { form, level } => {
            let level = IdealLevel::new(*level)?;
            let v = with_form!(&load_form(form)?, |q| wittforge::ideal_membership(q, level));
            boolean(&mut out, "in_ideal", v);
        }
        Verb::PfisterExpand { pfister, field } => match field_of(field)? {
            f @ BaseField::Rationals => pfister_expand::<wittforge::Rational>(&f, pfister, &mut out)?,
            f => pfister_expand::<wittforge::Fp>(&f, pfister, &mut out)?,
        },
        Verb::Decompose { form, level } => with_form!(&load_form(form)?, |q| decompose(q, *level, &mut out)?),
        Verb::Phi { pfister, field } => match field_of(field)? {
            f @ BaseField::Rationals => phi::<wittforge::Rational>(&f, pfister, &mut out)?,
            f => phi::<wittforge::Fp>(&f, pfister, &mut out)?,
        },
        Verb::Clifford { n, mul } => clifford(*n, mul.as_deref(), &mut out)?,
        Verb::Ed { n } => {
            let s = group_summary(*n)?;
            out.emit(|| format!("{}\n", s.ed_value), || json!({ "n": n, "ed": s.ed_value }));
        }
        Verb::Bounds { n, explore } => bounds_at(*n, *explore, &mut out)?,
        Verb::Table { kind } => {
            let kind: TableKind = kind.parse()?;
            out.text = render_table(kind)?;
        }
        Verb::Selftest => {
            let seed = seed()?;
            let reports = run_selftest(seed);
            let bad = reports.iter().filter(|r| !r.passed()).count();
            out.emit(
                || {
                    let mut s = format!("seed {seed}\n");
                    for r in &reports {
                        writeln!(s, "{r}").unwrap();
                    }
                    s
                },
                || {
                    json!({ "seed": seed, "suites": reports.iter().map(|r| json!({
                        "name": r.name, "cases": r.cases, "failures": r.failures,
                    })).collect::<Vec<_>>() })
                },
            );
            if bad > 0 {
                failed = Some(anyhow!("{bad} selftest suite(s) failed"));
            }
        }
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &out.text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", out.text),
    }
    if let Some(e) = failed {
        bail!(e);
    }
    Ok(())
}
