//! Command-line surface.
//!
//! ```text
//! bockstein [--json] <verb> <args...>
//!
//!   eval <D> <G>              D(G) for a basis member G (Q, Z/p, Z(pinf), Z_(p))
//!   dim <D>                   dim D
//!   star <D>                  D*
//!   boxplus <D1> <D2>         D1 [+] D2
//!   oplus <D1> <D2>           D1 (+) D2
//!   add <D> <k>               D + k
//!   leq <D1> <D2>             pointwise order
//!   classify <D>              boltyanskii/standard, critical primes, realizability
//!   sigma <G>                 Bockstein basis of a group expression
//!   dimg <D> <G>              dim_G D
//!   search-decomposition <n>  witness pairs for a decomposition in dimension n
//!   search-map <n> <m>        witness pairs for a map problem
//!   verify-paper              replay ledger
//!
//! flags: --json, --max-value <n>, --allow-exceptions <p,...>,
//!        --include-unrealizable, --workers <n>, --max-n <n>, --assert
//! ```
//!
//! Exit codes: 0 success, 1 a replayed check failed (or `--assert` on an
//! empty search), 2 usage error.

use std::fmt;

use serde_json::{json, Value};

use crate::decorated::ExtNat;
use crate::dimtype::{parse_dimtype, BocksteinGroup, DimensionType, Prime};
use crate::exotic::{self, LedgerConfig, PrimePolicy, SearchBounds, WitnessCertificate};
use crate::groups::{dim_g, parse_group, GroupAtom, GroupExpr};

pub const USAGE: &str = "usage: bockstein [--json] <eval|dim|star|boxplus|oplus|add|leq|classify|sigma|dimg|search-decomposition|search-map|verify-paper> <args...>";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputEnvelope {
    pub format: Format,
    pub body: String,
    pub exit_code: i32,
}

impl OutputEnvelope {
    fn usage(format: Format, msg: String) -> Self {
        OutputEnvelope {
            format,
            body: format!("error: {msg}"),
            exit_code: 2,
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

type Result<T> = std::result::Result<T, UsageError>;

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(UsageError(msg.into()))
}

#[derive(Debug, Default)]
struct Flags {
    json: bool,
    max_value: Option<u64>,
    exceptions: Option<Vec<Prime>>,
    include_unrealizable: bool,
    workers: Option<usize>,
    max_n: Option<u64>,
    assert: bool,
}

fn number<T: std::str::FromStr>(what: &str, tok: &str) -> Result<T> {
    tok.parse()
        .or_else(|_| usage(format!("invalid {what} '{tok}'")))
}

fn split_args(args: &[String]) -> Result<(Flags, Vec<String>)> {
    let mut flags = Flags::default();
    let mut positional = Vec::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut value = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| UsageError(format!("flag '{name}' needs a value")))
        };
        match arg.as_str() {
            "--json" => flags.json = true,
            "--include-unrealizable" => flags.include_unrealizable = true,
            "--assert" => flags.assert = true,
            "--max-value" => flags.max_value = Some(number("max value", &value(arg)?)?),
            "--workers" => flags.workers = Some(number("worker count", &value(arg)?)?),
            "--max-n" => flags.max_n = Some(number("max n", &value(arg)?)?),
            "--allow-exceptions" => {
                let list = value(arg)?;
                let primes = list
                    .split(',')
                    .map(|p| number::<u64>("prime", p.trim()))
                    .collect::<Result<Vec<_>>>()?;
                flags.exceptions = Some(primes);
            }
            s if s.starts_with("--") => return usage(format!("unknown flag '{s}'")),
            _ => positional.push(arg.clone()),
        }
    }
    Ok((flags, positional))
}

/// Parses a dimension-type literal, naming the offending token on failure.
pub fn parse_dimtype_arg(text: &str) -> std::result::Result<DimensionType, String> {
    parse_dimtype(text).map_err(|e| format!("invalid dimension type '{text}': {e}"))
}

fn dimtype_arg(text: &str) -> Result<DimensionType> {
    parse_dimtype_arg(text).map_err(UsageError)
}

fn group_arg(text: &str) -> Result<GroupExpr> {
    parse_group(text).map_err(|e| UsageError(format!("invalid group '{text}': {e}")))
}

fn basis_arg(text: &str) -> Result<BocksteinGroup> {
    let g = group_arg(text)?;
    match g.atoms() {
        [GroupAtom::Q] => Ok(BocksteinGroup::Q),
        [GroupAtom::ZmodPk(p, 1)] => Ok(BocksteinGroup::Zp(*p)),
        [GroupAtom::ZpInf(p)] => Ok(BocksteinGroup::ZpInfinity(*p)),
        [GroupAtom::ZLoc(p)] => Ok(BocksteinGroup::ZLocalized(*p)),
        _ => usage(format!("'{text}' is not a Bockstein basis member (use dimg for general groups)")),
    }
}

fn arity(verb: &str, args: &[String], n: usize) -> Result<()> {
    match args.len().cmp(&n) {
        std::cmp::Ordering::Equal => Ok(()),
        std::cmp::Ordering::Less => usage(format!("'{verb}' expects {n} argument(s), got {}", args.len())),
        std::cmp::Ordering::Greater => usage(format!("unexpected argument '{}'", args[n])),
    }
}

struct Output {
    text: String,
    json: Value,
    exit_code: i32,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            exit_code: 0,
        }
    }
}

fn ext_json(x: ExtNat) -> Value {
    serde_json::to_value(x).expect("serializes")
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<S: AsRef<str>>(args: &[S]) -> OutputEnvelope {
    let args: Vec<String> = args.iter().map(|a| a.as_ref().to_string()).collect();
    if args.iter().any(|a| a == "--help" || a == "-h") {
        return OutputEnvelope {
            format: Format::Text,
            body: USAGE.to_string(),
            exit_code: 0,
        };
    }
    let format = if args.iter().any(|a| a == "--json") {
        Format::Json
    } else {
        Format::Text
    };
    let result = split_args(&args).and_then(|(flags, positional)| dispatch(&flags, &positional));
    match result {
        Ok(out) => OutputEnvelope {
            format,
            body: match format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializes"),
            },
            exit_code: out.exit_code,
        },
        Err(e) => OutputEnvelope::usage(format, e.0),
    }
}

fn search_bounds(flags: &Flags, default_max: u64) -> SearchBounds {
    SearchBounds {
        max_value: flags.max_value.unwrap_or(default_max),
        prime_policy: match &flags.exceptions {
            Some(ps) => PrimePolicy::Exceptions(ps.clone()),
            None => PrimePolicy::Uniform,
        },
        realizable_only: !flags.include_unrealizable,
        workers: flags.workers,
    }
}

fn search_output(
    flags: &Flags,
    problem: Value,
    found: Vec<WitnessCertificate>,
) -> Output {
    let mut text: Vec<String> = found.iter().map(|c| c.to_text()).collect();
    text.push(format!("{} certificate(s)", found.len()));
    let json = json!({
        "problem": problem,
        "count": found.len(),
        "certificates": found.iter().map(WitnessCertificate::to_json).collect::<Vec<_>>(),
    });
    let mut out = Output::new(text.join("\n\n"), json);
    if flags.assert && found.is_empty() {
        out.exit_code = 1;
    }
    out
}

fn dispatch(flags: &Flags, positional: &[String]) -> Result<Output> {
    let Some((verb, args)) = positional.split_first() else {
        return usage(USAGE);
    };
    let verb = verb.as_str();
    let unary = |f: fn(&DimensionType) -> DimensionType| -> Result<Output> {
        arity(verb, args, 1)?;
        let r = f(&dimtype_arg(&args[0])?);
        Ok(Output::new(r.to_string(), json!({ "result": r })))
    };
    let binary = |f: fn(&DimensionType, &DimensionType) -> DimensionType| -> Result<Output> {
        arity(verb, args, 2)?;
        let r = f(&dimtype_arg(&args[0])?, &dimtype_arg(&args[1])?);
        Ok(Output::new(r.to_string(), json!({ "result": r })))
    };

    match verb {
        "eval" => {
            arity(verb, args, 2)?;
            let d = dimtype_arg(&args[0])?;
            let g = basis_arg(&args[1])?;
            let v = d.evaluate(g);
            Ok(Output::new(v.to_string(), json!({ "group": g, "value": ext_json(v) })))
        }
        "dim" => {
            arity(verb, args, 1)?;
            let v = dimtype_arg(&args[0])?.dim();
            Ok(Output::new(v.to_string(), json!({ "dim": ext_json(v) })))
        }
        "star" => unary(DimensionType::star),
        "boxplus" => binary(DimensionType::boxplus),
        "oplus" => binary(DimensionType::oplus),
        "add" => {
            arity(verb, args, 2)?;
            let d = dimtype_arg(&args[0])?;
            let k: u64 = number("constant", &args[1])?;
            let r = d.add_const(k);
            Ok(Output::new(r.to_string(), json!({ "result": r })))
        }
        "leq" => {
            arity(verb, args, 2)?;
            let r = dimtype_arg(&args[0])?.leq(&dimtype_arg(&args[1])?);
            Ok(Output::new(r.to_string(), json!({ "leq": r })))
        }
        "classify" => {
            arity(verb, args, 1)?;
            let d = dimtype_arg(&args[0])?;
            let class = d
                .classify()
                .map_err(|e| UsageError(format!("cannot classify '{}': {e}", args[0])))?;
            let critical = d.critical_primes().ok();
            let validity = d.validity();
            let critical_text = critical.as_ref().map_or("none".to_string(), |c| c.to_string());
            let text = format!(
                "dim: {}\nclass: {class}\ncritical primes: {critical_text}\nrealizable: {}",
                d.dim(),
                validity.realizable
            );
            Ok(Output::new(
                text,
                json!({
                    "type": d,
                    "dim": ext_json(d.dim()),
                    "class": class,
                    "critical_primes": critical,
                    "realizable": validity.realizable,
                    "violations": validity.violations,
                }),
            ))
        }
        "sigma" => {
            arity(verb, args, 1)?;
            let g = group_arg(&args[0])?;
            let s = g.sigma();
            Ok(Output::new(s.to_string(), json!({ "group": g, "sigma": s })))
        }
        "dimg" => {
            arity(verb, args, 2)?;
            let d = dimtype_arg(&args[0])?;
            let g = group_arg(&args[1])?;
            let r = dim_g(&d, &g);
            let text = if r.degenerate {
                format!("{} (degenerate: zero group)", r.value)
            } else {
                r.value.to_string()
            };
            Ok(Output::new(
                text,
                json!({ "value": ext_json(r.value), "degenerate": r.degenerate }),
            ))
        }
        "search-decomposition" => {
            arity(verb, args, 1)?;
            let n: u64 = number("dimension", &args[0])?;
            let bounds = search_bounds(flags, n.max(1));
            let found = exotic::search_decomposition(n, &bounds).map_err(|e| UsageError(e.to_string()))?;
            Ok(search_output(flags, json!({ "kind": "decomposition", "n": n }), found))
        }
        "search-map" => {
            arity(verb, args, 2)?;
            let n: u64 = number("dimension", &args[0])?;
            let m: u64 = number("target dimension", &args[1])?;
            let bounds = search_bounds(flags, n.max(1));
            let found = exotic::search_map(n, m, &bounds).map_err(|e| UsageError(e.to_string()))?;
            Ok(search_output(flags, json!({ "kind": "map", "n": n, "m": m }), found))
        }
        "verify-paper" => {
            arity(verb, args, 0)?;
            let config = LedgerConfig {
                max_n: flags.max_n.unwrap_or(12),
                ..LedgerConfig::default()
            };
            let report = exotic::verify_paper_with(&config);
            let mut out = Output::new(report.to_string(), report.to_json());
            if !report.all_pass() {
                out.exit_code = 1;
            }
            Ok(out)
        }
        other => usage(format!("unknown verb '{other}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(args: &[&str]) -> String {
        let out = run(args);
        assert_eq!(out.exit_code, 0, "{}", out.body);
        out.body
    }

    #[test]
    fn examples() {
        assert_eq!(text(&["dim", "q=2 all=3+"]), "4");
        assert_eq!(text(&["sigma", "Z"]), "Z_(p) for all p");
        let body = text(&["search-decomposition", "5"]);
        assert!(body.contains("D1\tq=1 all=2-\nD2\tq=2 all=1+"));
    }

    #[test]
    fn calculus_verbs() {
        assert_eq!(text(&["eval", "q=1 all=2-", "Z(3inf)"]), "1");
        assert_eq!(text(&["eval", "q=4 all=4+", "Z_(3)"]), "5");
        assert_eq!(text(&["star", "q=1 all=2-"]), "q=1 all=2+");
        assert_eq!(text(&["boxplus", "q=1 all=2-", "q=2 all=1+"]), "q=3 all=3-");
        assert_eq!(text(&["oplus", "q=1 all=2-", "q=2 all=1+"]), "q=3 all=3+");
        assert_eq!(text(&["add", "q=2 all=1+", "1"]), "q=3 all=2+");
        assert_eq!(text(&["leq", "q=3 all=3+", "q=4 all=4+"]), "true");
        assert_eq!(text(&["leq", "q=4 all=4+", "q=3 all=3+"]), "false");
        assert_eq!(
            text(&["classify", "q=4 all=4+"]),
            "dim: 5\nclass: boltyanskii\ncritical primes: all primes\nrealizable: true"
        );
        assert_eq!(text(&["dimg", "q=1 all=2-", "Z/2^2 + Z/3"]), "2");
        assert_eq!(text(&["dimg", "q=1 all=2-", "0"]), "0 (degenerate: zero group)");
    }

    #[test]
    fn json_matches_text() {
        let out = run(&["--json", "dim", "q=2 all=3+"]);
        assert_eq!(out.format, Format::Json);
        let v: Value = serde_json::from_str(&out.body).unwrap();
        assert_eq!(v["dim"], 4);
        let v: Value = serde_json::from_str(&run(&["oplus", "q=1 all=2-", "q=2 all=1+", "--json"]).body).unwrap();
        assert_eq!(v["result"], "q=3 all=3+");
    }

    #[test]
    fn help() {
        let out = run(&["--help"]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.body, USAGE);
    }

    #[test]
    fn usage_errors() {
        for (args, token) in [
            (vec!["frobnicate"], "frobnicate"),
            (vec!["dim", "q=1 all=2"], "q=1 all=2"),
            (vec!["dim"], "dim"),
            (vec!["dim", "q=1", "extra"], "extra"),
            (vec!["sigma", "Z/6^1"], "Z/6^1"),
            (vec!["eval", "q=1", "Z/2^2"], "Z/2^2"),
            (vec!["search-map", "5", "4"], "m=4"),
            (vec!["search-decomposition", "five"], "five"),
            (vec!["--bogus", "dim", "q=1"], "--bogus"),
            (vec!["search-decomposition", "5", "--allow-exceptions", "4"], "4 is not prime"),
            (vec!["classify", "q=inf"], "q=inf"),
        ] {
            let out = run(&args);
            assert_eq!(out.exit_code, 2, "{args:?}");
            assert!(out.body.contains(token), "{args:?}: {}", out.body);
            assert_eq!(out.body.lines().count(), 1);
        }
        assert_eq!(run::<&str>(&[]).exit_code, 2);
    }

    #[test]
    fn assert_flag() {
        assert_eq!(run(&["search-decomposition", "4", "--assert"]).exit_code, 1);
        assert_eq!(run(&["search-decomposition", "5", "--assert"]).exit_code, 0);
        assert_eq!(run(&["search-decomposition", "4"]).exit_code, 0);
    }
}
