use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};

use omball::bounded::AffineOM;
use omball::io::{format_arrangement_file, format_covector_file, Input};
use omball::realization::{random_generic, realize};
use omball::report::{verify, Verdict, VerifyOptions};
use omball::svg::{render, Bounds};
use omball::topology::collapse::DEFAULT_BUDGET;
use omball::Error;

#[derive(Parser)]
#[command(name = "omball", version, about = "Bounded complexes of affine oriented matroids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Arrangement file (`dim d` header) or covector file.
    input: PathBuf,
    /// Label of the affine element `g`.
    #[arg(long = "g")]
    g: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the covector axioms.
    Axioms {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Enumerate the covectors of an arrangement.
    Realize {
        arrangement: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List the bounded complex and its f-vector.
    Bounded {
        #[command(flatten)]
        input: InputArgs,
        /// Also write the order complex, one facet per line.
        #[arg(long)]
        complex: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the full ball verification pipeline.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Node budget for each collapse search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Exit 0 on evidence-only verdicts too.
        #[arg(long)]
        allow_evidence: bool,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Draw a planar arrangement as SVG.
    Svg {
        arrangement: PathBuf,
        /// Window as `xmin,xmax,ymin,ymax`.
        #[arg(long, value_parser = parse_bounds, allow_hyphen_values = true)]
        bounds: Option<Bounds>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a random generic arrangement.
    Generate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        d: usize,
        #[arg(long, default_value_t = 1000)]
        max_tries: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [xmin, xmax, ymin, ymax] if xmin < xmax && ymin < ymax => Ok(Bounds { xmin, xmax, ymin, ymax }),
        _ => Err("expected xmin,xmax,ymin,ymax with min < max".into()),
    }
}

enum Failure {
    Input(Error),
    Budget(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Budget(e),
            e => Failure::Input(e),
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(args: &InputArgs) -> Result<(Input, omball::CovectorSet), Failure> {
    let input = Input::read(&args.input)?;
    if let (Input::Arrangement(_), Some(g)) = (&input, &args.g) {
        if g != omball::realization::G_LABEL {
            return Err(Failure::Input(Error::Precondition(format!(
                "arrangement inputs use `{}` as the affine element, not `{g}`",
                omball::realization::G_LABEL
            ))));
        }
    }
    let om = input.covectors(args.g.as_deref())?;
    Ok((input, om))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Axioms { input, json } => {
            let (_, om) = load(&input)?;
            let r = om.verify_covector_axioms();
            for (name, ok) in [("L0", r.l0_ok), ("L1", r.l1_ok), ("L2", r.l2_ok), ("L3", r.l3_ok)] {
                println!("{name}: {}", if ok { "ok" } else { "FAIL" });
            }
            if let Some((x, y)) = r.l2_witnesses.first() {
                println!("composition {x} o {y} is missing");
            }
            if let Some((x, y, e)) = r.l3_witnesses.first() {
                println!("no elimination of {x}, {y} at {}", om.ground().label(*e));
            }
            if let Some(p) = json {
                write_out(Some(&p), &serde_json::to_string_pretty(&r).expect("serializes"))?;
            }
            Ok(if r.all_ok() { 0 } else { 1 })
        }
        Command::Realize { arrangement, output } => {
            let Input::Arrangement(arr) = Input::read(&arrangement)? else {
                return Err(Failure::Input(Error::Validation("expected an arrangement file".into())));
            };
            write_out(output.as_deref(), &format_covector_file(&realize(&arr)?))?;
            Ok(0)
        }
        Command::Bounded { input, complex, json } => {
            let (_, om) = load(&input)?;
            let aom = AffineOM::new(om)?;
            let bc = aom.bounded_complex();
            println!("f-vector: {:?}", bc.f_vector());
            println!("pure: {}", bc.is_pure());
            for (i, x) in bc.cells().iter().enumerate() {
                println!("{x} dim {}", bc.cell_dim(i));
            }
            if let Some(p) = complex {
                write_out(Some(&p), &bc.order_complex().to_text())?;
            }
            if let Some(p) = json {
                let v = serde_json::json!({
                    "f_vector": bc.f_vector(),
                    "pure": bc.is_pure(),
                    "cells": bc.cells(),
                });
                write_out(Some(&p), &serde_json::to_string_pretty(&v).expect("serializes"))?;
            }
            Ok(0)
        }
        Command::Verify {
            input,
            json,
            budget,
            allow_evidence,
            no_timestamp,
        } => {
            let (parsed, om) = load(&input)?;
            let opts = VerifyOptions {
                source: input.input.display().to_string(),
                budget,
                timestamp: (!no_timestamp).then(|| {
                    SystemTime::now()
                        .duration_since(UNIX_EPOCH)
                        .map(|d| d.as_secs())
                        .unwrap_or(0)
                }),
            };
            let r = verify(om, parsed.arrangement(), &opts)?;
            println!("uniform: {}", r.instance.is_uniform);
            if let Some(b) = &r.bounded {
                println!("f-vector: {:?}  dim: {:?}  pure: {}  euler: {}", b.f_vector, b.dim, b.pure, b.euler_characteristic);
            }
            if let Some(o) = &r.order_complex {
                let found = o.collapse.certificate().is_some();
                println!("collapse: {}", if found { "certificate found" } else { "budget exhausted" });
            }
            if let Some(l) = &r.links {
                for v in &l.other {
                    println!("vertex {v}: link is neither a sphere nor a ball");
                }
            }
            if let Some(ok) = r.local_checks_passed {
                println!("local checks: {}", if ok { "passed" } else { "FAILED" });
            }
            for n in &r.notes {
                println!("note: {n}");
            }
            println!("verdict: {}", serde_json::to_value(r.verdict).expect("serializes").as_str().unwrap_or(""));
            if let Some(p) = json {
                write_out(Some(&p), &r.to_json())?;
            }
            Ok(match r.verdict {
                Verdict::BallCertified => 0,
                Verdict::EvidenceOnly if r.checks_passed && allow_evidence => 0,
                Verdict::EvidenceOnly if r.checks_passed && r.budget_exhausted() => 3,
                _ => 1,
            })
        }
        Command::Svg {
            arrangement,
            bounds,
            output,
        } => {
            let Input::Arrangement(arr) = Input::read(&arrangement)? else {
                return Err(Failure::Input(Error::Validation("expected an arrangement file".into())));
            };
            write_out(output.as_deref(), &render(&arr, bounds)?)?;
            Ok(0)
        }
        Command::Generate {
            seed,
            n,
            d,
            max_tries,
            output,
        } => {
            let arr = random_generic(seed, n, d, max_tries)?;
            write_out(output.as_deref(), &format_arrangement_file(&arr))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
