//! Command-line front end: construct fields, extensions, certificates and
//! hypercubes, run the verification suites, and emit canonical JSON.
//!
//! Exit codes: 0 = everything verified, 1 = a verification failed (for
//! generated objects this means a runtime assertion mirroring a proved
//! statement was falsified and should never happen), 2 = usage or input
//! error, 3 = a resource bound was exceeded.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use aspoly::codec::{
    canonical_json, certificate_from_wire, certificate_to_wire, extension_to_wire,
    hypercube_from_wire, hypercube_to_wire, CertificateWire, HypercubeWire,
};
use aspoly::contrary::certificate_checks;
use aspoly::gf::FieldOps;
use aspoly::{
    baldwin_saxl_failure, build_as_extension, build_bottom_up, generate_contrary,
    is_contrary_bruteforce, sample_independent_tuples, verify_geometric_surjectivity,
    verify_pullback, wp_image, wp_outside_image, Error, Field, FieldElement, FiniteField,
};

const MAX_CENSUS_TUPLES: u64 = 1_000_000;

#[derive(Parser)]
#[command(
    name = "aspoly",
    version,
    about = "Exact additive-polynomial algebra over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for sampled constructions (identical seeds give byte-identical
    /// output).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the output to this path instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Output rendering.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a finite field (canonical modulus if none is given).
    Field {
        /// Field spec, "p^k" or "p^k/[c0,...,1]".
        #[arg(long)]
        field: String,
    },
    /// Build the canonical Artin-Schreier extension of a field.
    Asext {
        #[arg(long)]
        field: String,
    },
    /// Generate a contrary-tuple certificate (emits the certificate JSON).
    ContraryGen {
        #[arg(long)]
        field: String,
        /// Tuple length.
        #[arg(long)]
        n: usize,
        /// Explicit independent tuple, e.g. "[1,0];[0,1]"; sampled from the
        /// seed when omitted.
        #[arg(long)]
        a: Option<String>,
    },
    /// Replay a certificate file and report each check.
    ContraryVerify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Build a bottom-up hypercube (emits the hypercube JSON).
    HypercubeBuild {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
        /// Explicit independent tuple; defaults to successive powers of the
        /// residue generator.
        #[arg(long)]
        a: Option<String>,
    },
    /// Run verification suites against a hypercube file.
    HypercubeVerify {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated subset of
        /// pullback,functorial,edges,surjective,baldwin-saxl (default all).
        #[arg(long)]
        checks: Option<String>,
        /// Evaluation field for the point-level checks; defaults to the
        /// cube's own field.
        #[arg(long)]
        eval_field: Option<String>,
    },
    /// The image structure of the Artin-Schreier map on a field.
    WpImage {
        #[arg(long)]
        field: String,
    },
    /// Exhaustive census of contrary n-tuples over a field.
    Census {
        #[arg(long)]
        field: String,
        #[arg(long)]
        n: usize,
    },
}

struct Outcome {
    body: Value,
    /// False turns exit status 0 into 1 after the report is written.
    verified: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            let rendered = match cli.format {
                Format::Json => match canonical_json(&outcome.body) {
                    Ok(s) => s,
                    Err(err) => return fail(&err),
                },
                Format::Text => render_text(&outcome.body),
            };
            let write_result = match &cli.output {
                Some(path) => std::fs::write(path, rendered),
                None => {
                    print!("{rendered}");
                    Ok(())
                }
            };
            if let Err(err) = write_result {
                return fail(&Error::Io(err));
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => fail(&err),
    }
}

fn fail(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    let code = match err {
        Error::LemmaFalsified { .. } => 1,
        Error::BoundExceeded { .. } => 3,
        _ => 2,
    };
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Field { field } => field_report(field),
        Command::Asext { field } => asext_report(field),
        Command::ContraryGen { field, n, a } => contrary_gen(field, *n, a.as_deref(), cli.seed),
        Command::ContraryVerify { cert } => contrary_verify(cert),
        Command::HypercubeBuild { field, n, a } => hypercube_build(field, *n, a.as_deref()),
        Command::HypercubeVerify {
            file,
            checks,
            eval_field,
        } => hypercube_verify(file, checks.as_deref(), eval_field.as_deref()),
        Command::WpImage { field } => wp_image_report(field),
        Command::Census { field, n } => census(field, *n),
    }
}

// ---------------------------------------------------------------------------

fn parse_tuple(field: &Field, text: &str) -> Result<Vec<FieldElement>, Error> {
    let mut out = Vec::new();
    for part in text.split(';') {
        let part = part.trim();
        let inner = part
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Malformed(format!("bad element {part:?}")))?;
        let digits: Result<Vec<u8>, _> = inner.split(',').map(|d| d.trim().parse::<u8>()).collect();
        let digits = digits.map_err(|_| Error::Malformed(format!("bad element {part:?}")))?;
        out.push(field.element(digits)?);
    }
    Ok(out)
}

fn digits(v: &FieldElement) -> Value {
    json!(v.coeffs())
}

fn digit_list<'a, I: IntoIterator<Item = &'a FieldElement>>(items: I) -> Value {
    Value::Array(items.into_iter().map(digits).collect())
}

fn field_report(spec: &str) -> Result<Outcome, Error> {
    let field = FiniteField::parse_spec(spec)?;
    Ok(Outcome {
        body: json!({
            "command": "field",
            "spec": field.spec_string(),
            "p": field.characteristic(),
            "k": field.degree(),
            "modulus": field.modulus(),
            "order": field.order(),
        }),
        verified: true,
    })
}

fn asext_report(spec: &str) -> Result<Outcome, Error> {
    let base = FiniteField::parse_spec(spec)?;
    let ext = build_as_extension(&base)?;
    let wire = extension_to_wire(&ext);
    Ok(Outcome {
        body: json!({
            "command": "asext",
            "extension": serde_json::to_value(&wire)?,
            "checks": {
                "alpha_outside_base": true,
                "wp_alpha_equals_a": true,
                "trace_of_a_nonzero": true,
            },
        }),
        verified: true,
    })
}

fn contrary_gen(spec: &str, n: usize, a: Option<&str>, seed: u64) -> Result<Outcome, Error> {
    let base = FiniteField::parse_spec(spec)?;
    let ext = build_as_extension(&base)?;
    let tuple = match a {
        Some(text) => {
            let tuple = parse_tuple(&base, text)?;
            if tuple.len() != n {
                return Err(Error::InvalidInput(format!(
                    "--a supplies {} elements but --n is {n}",
                    tuple.len()
                )));
            }
            tuple
        }
        None => sample_independent_tuples(&base, n, 1, seed)?.remove(0),
    };
    let cert = generate_contrary(&ext, &tuple)?;
    let wire = certificate_to_wire(&cert);
    Ok(Outcome {
        body: serde_json::to_value(&wire)?,
        verified: true,
    })
}

fn contrary_verify(path: &PathBuf) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(path)?;
    let wire: CertificateWire = serde_json::from_str(&text)?;
    let cert = certificate_from_wire(&wire)?;
    let checks = certificate_checks(&cert)?;
    let valid = checks.iter().all(|(_, ok)| *ok);
    let check_map: BTreeMap<String, bool> = checks.into_iter().collect();
    Ok(Outcome {
        body: json!({
            "command": "contrary-verify",
            "valid": valid,
            "checks": check_map,
        }),
        verified: valid,
    })
}

fn hypercube_build(spec: &str, n: usize, a: Option<&str>) -> Result<Outcome, Error> {
    let field = FiniteField::parse_spec(spec)?;
    let tuple = match a {
        Some(text) => {
            let tuple = parse_tuple(&field, text)?;
            if tuple.len() != n {
                return Err(Error::InvalidInput(format!(
                    "--a supplies {} elements but --n is {n}",
                    tuple.len()
                )));
            }
            tuple
        }
        None => (0..n as u64).map(|i| field.generator().pow(i)).collect(),
    };
    let cube = build_bottom_up(&tuple)?;
    let wire = hypercube_to_wire(&cube);
    Ok(Outcome {
        body: serde_json::to_value(&wire)?,
        verified: true,
    })
}

fn hypercube_verify(
    path: &PathBuf,
    checks: Option<&str>,
    eval_field: Option<&str>,
) -> Result<Outcome, Error> {
    let text = std::fs::read_to_string(path)?;
    let wire: HypercubeWire = serde_json::from_str(&text)?;
    // Loading reruns construction-time assertions (functoriality, twists,
    // covering surjectivity) by rebuilding from the tuple.
    let cube = hypercube_from_wire(&wire)?;
    let eval = match eval_field {
        Some(spec) => FiniteField::parse_spec(spec)?,
        None => cube.field().clone(),
    };
    let selected: Vec<String> = match checks {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => [
            "pullback",
            "functorial",
            "edges",
            "surjective",
            "baldwin-saxl",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    };

    let mut results = BTreeMap::new();
    let mut all_pass = true;
    for name in &selected {
        let entry = match name.as_str() {
            "pullback" => {
                let report = verify_pullback(&cube, &eval)?;
                let pass = report.pass;
                (serde_json::to_value(&report)?, pass)
            }
            // The load above rebuilt the cube and re-asserted these two;
            // reaching this point means they hold.
            "functorial" => (json!({"pass": true, "revalidated_on_load": true}), true),
            "edges" => (json!({"pass": true, "revalidated_on_load": true}), true),
            "surjective" => {
                let report = verify_geometric_surjectivity(&cube, &eval)?;
                let pass = report.pass;
                (serde_json::to_value(&report)?, pass)
            }
            "baldwin-saxl" => {
                let report = baldwin_saxl_failure(&cube, &eval)?;
                let pass = report.failure_for_all;
                (serde_json::to_value(&report)?, pass)
            }
            other => {
                return Err(Error::InvalidInput(format!("unknown check {other:?}")));
            }
        };
        all_pass &= entry.1;
        results.insert(name.clone(), entry.0);
    }

    Ok(Outcome {
        body: json!({
            "command": "hypercube-verify",
            "eval_field": eval.spec_string(),
            "checks": results,
            "pass": all_pass,
        }),
        verified: all_pass,
    })
}

fn wp_image_report(spec: &str) -> Result<Outcome, Error> {
    let field = FiniteField::parse_spec(spec)?;
    let image = wp_image(&field)?;
    let p = field.characteristic() as u64;
    let ext_order = p.checked_pow((field.degree() as u64 * p) as u32);

    let (extension, outside, disjoint, union_is_field) =
        if ext_order.is_some_and(|o| o <= aspoly::MAX_FIELD_ORDER) {
            let ext = build_as_extension(&field)?;
            let outside = wp_outside_image(&ext)?;
            let disjoint = image.is_disjoint(&outside);
            let union_is_field = (image.len() + outside.len()) as u64 == field.order();
            (
                Some(serde_json::to_value(extension_to_wire(&ext))?),
                Some(digit_list(&outside)),
                Some(disjoint),
                Some(union_is_field),
            )
        } else {
            (None, None, None, None)
        };

    let verified = disjoint.unwrap_or(true);
    Ok(Outcome {
        body: json!({
            "command": "wp-image",
            "field": field.spec_string(),
            "image": digit_list(&image),
            "image_size": image.len(),
            "extension": extension,
            "outside_image": outside,
            "disjoint": disjoint,
            "union_is_field": union_is_field,
        }),
        verified,
    })
}

fn census(spec: &str, n: usize) -> Result<Outcome, Error> {
    let field = FiniteField::parse_spec(spec)?;
    let requested = field.order().checked_pow(n as u32).unwrap_or(u64::MAX);
    if requested > MAX_CENSUS_TUPLES {
        return Err(Error::BoundExceeded {
            what: "census tuple space",
            limit: MAX_CENSUS_TUPLES,
            requested,
        });
    }
    let ext = build_as_extension(&field)?;
    let nonzero: Vec<FieldElement> = field.elements().filter(|x| !x.is_zero()).collect();

    let mut contrary = Vec::new();
    let mut candidates = 0u64;
    let mut index = vec![0usize; n];
    'outer: loop {
        let tuple: Vec<FieldElement> = index.iter().map(|&i| nonzero[i].clone()).collect();
        candidates += 1;
        if is_contrary_bruteforce(&tuple, &ext)? {
            contrary.push(Value::Array(tuple.iter().map(digits).collect()));
        }
        // Odometer over the nonzero elements, last position fastest.
        for pos in (0..n).rev() {
            index[pos] += 1;
            if index[pos] < nonzero.len() {
                continue 'outer;
            }
            index[pos] = 0;
        }
        break;
    }

    Ok(Outcome {
        body: json!({
            "command": "census",
            "field": field.spec_string(),
            "n": n,
            "candidates": candidates,
            "contrary_count": contrary.len(),
            "contrary": contrary,
        }),
        verified: true,
    })
}

// ---------------------------------------------------------------------------

fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_into(value, 0, &mut out);
    out
}

fn is_scalar_array(items: &[Value]) -> bool {
    items
        .iter()
        .all(|v| v.is_number() || v.is_string() || v.is_boolean() || v.is_null())
}

fn render_into(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(v, indent + 1, out);
                    }
                    Value::Array(items) if !is_scalar_array(items) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_into(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", compact(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) if !matches!(v, Value::Array(a) if is_scalar_array(a)) =>
                    {
                        out.push_str(&format!("{pad}-\n"));
                        render_into(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", compact(v))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", compact(value))),
    }
}

fn compact(value: &Value) -> String {
    serde_json::to_string(value).unwrap_or_else(|_| "?".into())
}
