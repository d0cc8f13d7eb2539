use puiseux::classify::{classify_seeded, witness_chain, PropertyVerdict};
use puiseux::closure::{conductor, iso_check, root_closure, ConductorDesc, Iso};
use puiseux::exact::Rat;
use puiseux::factor::{
    atoms, factorizations_windowed, member_bounded, pr_decompose, AtomCount, FactorList, Membership,
};
use puiseux::model::{meta, parse, MonoidExpr};
use puiseux::numsg::NumericalMonoid;
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::CliConfig;

/// A command result in both renderings.
pub struct Output {
    pub text: String,
    pub json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Output {
        Output {
            text: text.into(),
            json,
        }
    }
}

pub fn monoid(text: &str) -> Result<MonoidExpr, CliError> {
    Ok(parse(text)?)
}

pub fn rational(text: &str) -> Result<Rat, CliError> {
    Ok(text.trim().parse::<Rat>()?)
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(Rat::to_string).collect()
}

pub fn parse_cmd(m: &MonoidExpr) -> Output {
    let info = meta(m);
    let json = json!({
        "expr": m.print(),
        "finitely_generated": info.finitely_generated,
        "zero_limit_point": info.zero_limit_point,
        "increasing": info.increasing,
        "nonempty_conductor": info.nonempty_conductor.as_str(),
    });
    Output::new(m.print(), json)
}

pub fn atoms_cmd(m: &MonoidExpr, cfg: &CliConfig) -> Output {
    let desc = atoms(m);
    let (count, size) = match desc.count() {
        AtomCount::Finite(n) => ("finite", Some(n)),
        AtomCount::Infinite => ("infinite", None),
        AtomCount::Unknown => ("unknown", None),
    };
    let first = desc.first(cfg.depth as usize);
    let mut text = desc.to_string();
    if size.is_none() && !first.is_empty() {
        text.push_str(&format!(
            "\nfirst {}: {}",
            first.len(),
            rats(&first).join(", ")
        ));
    }
    let json =
        json!({ "atoms": desc.to_string(), "count": count, "size": size, "first": rats(&first) });
    Output::new(text, json)
}

pub fn member_cmd(m: &MonoidExpr, x: &Rat, cfg: &CliConfig) -> Output {
    let got = member_bounded(m, x, cfg.depth);
    let mut json = json!({ "element": x.to_string(), "member": got.tri().as_str() });
    let text = match &got {
        Membership::Yes(w) => {
            let terms: Vec<Value> = w
                .terms()
                .iter()
                .map(|(a, c)| json!({ "atom": a.to_string(), "count": c.to_string() }))
                .collect();
            json["witness"] = Value::Array(terms);
            format!("yes: {x} = {w}")
        }
        other => other.tri().as_str().to_string(),
    };
    Output::new(text, json)
}

fn factor_list(m: &MonoidExpr, x: &Rat, cfg: &CliConfig) -> Result<FactorList, CliError> {
    Ok(factorizations_windowed(m, x, cfg.depth, cfg.max_prime)?)
}

fn window_note(f: &FactorList) -> &'static str {
    if f.complete {
        ""
    } else {
        " (window only)"
    }
}

pub fn factorize_cmd(m: &MonoidExpr, x: &Rat, cfg: &CliConfig) -> Result<Output, CliError> {
    let f = factor_list(m, x, cfg)?;
    let mut text = format!("atoms: {}{}", rats(&f.atoms).join(", "), window_note(&f));
    for z in &f.factorizations {
        let counts: Vec<String> = z.iter().map(u64::to_string).collect();
        text.push_str(&format!("\n({})", counts.join(", ")));
    }
    let json = json!({
        "element": x.to_string(),
        "atoms": rats(&f.atoms),
        "factorizations": f.factorizations,
        "complete": f.complete,
    });
    Ok(Output::new(text, json))
}

pub fn lengths_cmd(m: &MonoidExpr, x: &Rat, cfg: &CliConfig) -> Result<Output, CliError> {
    let f = factor_list(m, x, cfg)?;
    let ls = f.lengths();
    let shown: Vec<String> = ls.iter().map(u64::to_string).collect();
    let text = format!("{{{}}}{}", shown.join(", "), window_note(&f));
    Ok(Output::new(
        text,
        json!({ "element": x.to_string(), "lengths": ls, "complete": f.complete }),
    ))
}

pub fn closure_cmd(m: &MonoidExpr) -> Result<Output, CliError> {
    let desc = root_closure(m)?;
    let json = json!({
        "n": desc.n.to_string(),
        "s": desc.s.to_string(),
        "finitely_generated": desc.is_finitely_generated(),
    });
    Ok(Output::new(desc.to_string(), json))
}

pub fn conductor_cmd(m: &MonoidExpr) -> Output {
    let c = conductor(m);
    let mut json = json!({ "kind": c.kind() });
    if let ConductorDesc::Tail(sigma) = &c {
        json["sigma"] = json!(sigma.to_string());
    }
    Output::new(c.to_string(), json)
}

fn verdict_json(v: &PropertyVerdict) -> Value {
    json!({
        "property": v.property.name(),
        "holds": v.holds.as_str(),
        "certificate": v.certificate.as_ref().map(|c| c.to_string()),
    })
}

fn verdict_line(v: &PropertyVerdict) -> String {
    match &v.certificate {
        Some(c) => format!("{:<18} {:<8} {c}", v.property.name(), v.holds.as_str()),
        None => format!("{:<18} {}", v.property.name(), v.holds.as_str()),
    }
}

pub fn classify_cmd(m: &MonoidExpr, cfg: &CliConfig) -> Result<Output, CliError> {
    let vs = classify_seeded(m, cfg.seed)?;
    let text: Vec<String> = vs.iter().map(verdict_line).collect();
    Ok(Output::new(
        text.join("\n"),
        Value::Array(vs.iter().map(verdict_json).collect()),
    ))
}

pub fn witness_chain_cmd() -> Result<Output, CliError> {
    let rows = witness_chain()?;
    let mut lines = Vec::new();
    let mut json = Vec::new();
    for w in &rows {
        let vs = classify_seeded(&w.monoid, 0)?;
        let find = |p| {
            vs.iter()
                .find(|v| v.property == p)
                .expect("every property has a verdict")
        };
        let (h, f) = (find(w.holds), find(w.fails));
        let cert = |v: &PropertyVerdict| {
            v.certificate
                .as_ref()
                .map(|c| c.to_string())
                .unwrap_or_default()
        };
        lines.push(format!(
            "{:<8} {} and not {}",
            w.monoid.print(),
            w.holds,
            w.fails
        ));
        lines.push(format!("  {}", cert(h)));
        lines.push(format!("  {}", cert(f)));
        json.push(json!({
            "monoid": w.monoid.print(),
            "holds": w.holds.name(),
            "fails": w.fails.name(),
            "certificates": [verdict_json(h), verdict_json(f)],
        }));
    }
    Ok(Output::new(lines.join("\n"), Value::Array(json)))
}

fn numerical(m: &MonoidExpr, what: &str) -> Result<NumericalMonoid, CliError> {
    let gens = m
        .finite_generators()
        .ok_or_else(|| CliError::not_finitely_generated(what))?;
    Ok(NumericalMonoid::normalize(&gens)?)
}

pub fn frobenius_cmd(m: &MonoidExpr) -> Result<Output, CliError> {
    let nm = numerical(m, "frobenius")?;
    Ok(match nm.frobenius() {
        Some(f) => {
            let f = nm.to_original(f);
            Output::new(f.to_string(), json!({ "frobenius": f.to_string() }))
        }
        None => Output::new("none", json!({ "frobenius": null })),
    })
}

pub fn apery_cmd(m: &MonoidExpr, n: &Rat) -> Result<Output, CliError> {
    let nm = numerical(m, "apery")?;
    let internal = nm
        .to_internal(n)
        .filter(|k| !n.is_zero() && nm.member_big(k));
    let k = internal
        .and_then(|k| Rat::integer(k).to_u64())
        .ok_or_else(|| {
            CliError::new(
                "E-NOT-MEMBER",
                format!("{n} is not a nonzero element of the monoid"),
            )
        })?;
    let set: Vec<Rat> = nm
        .apery(k)?
        .into_iter()
        .map(|w| nm.to_original(w))
        .collect();
    let text = format!("{{{}}}", rats(&set).join(", "));
    Ok(Output::new(
        text,
        json!({ "modulus": n.to_string(), "set": rats(&set) }),
    ))
}

pub fn iso_cmd(a: &MonoidExpr, b: &MonoidExpr) -> Output {
    match iso_check(a, b) {
        Iso::Yes(q) => Output::new(
            format!("yes: {b} = {q} * ({a})"),
            json!({ "isomorphic": "yes", "multiplier": q.to_string() }),
        ),
        Iso::No => Output::new("no", json!({ "isomorphic": "no" })),
        Iso::Unknown => Output::new("unknown", json!({ "isomorphic": "unknown" })),
    }
}

pub fn decompose_cmd(x: &Rat) -> Result<Output, CliError> {
    let d = pr_decompose(x)?;
    let mut text = d.integer_part.to_string();
    let mut coeffs = Map::new();
    for (p, a) in &d.coeffs {
        text.push_str(&format!(" + {a}/{p}"));
        coeffs.insert(p.to_string(), json!(a));
    }
    let n = match Rat::integer(d.integer_part.clone()).to_u64() {
        Some(n) => json!(n),
        None => json!(d.integer_part.to_string()),
    };
    Ok(Output::new(text, json!({ "n": n, "coeffs": coeffs })))
}
