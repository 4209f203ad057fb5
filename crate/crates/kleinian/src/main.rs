//! Command-line front end: classify elements, approximate limit sets,
//! render chart images, and run the verification suite.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition failure,
//! 4 verification failure.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use kleinian::element::{classify, element_limit_set};
use kleinian::limit_set::{accumulate, classify_group, orbit_oracle};
use kleinian::projective::C;
use kleinian::render::{render_chart, RenderOptions};
use kleinian::verify;
use kleinian::{io as kio, Error, GroupSpec};

#[derive(Parser)]
#[command(name = "kleinian", about = "Limit sets of discrete subgroups of PSL(3, C)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Path to a JSON group spec ("-" for stdin).
    #[arg(long)]
    spec: Option<String>,
    /// Inline JSON group spec.
    #[arg(long)]
    json: Option<String>,
}

impl SpecArg {
    fn load(&self) -> Result<GroupSpec, Error> {
        let text = match (&self.spec, &self.json) {
            (_, Some(j)) => j.clone(),
            (Some(path), None) if path == "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Parse(e.to_string()))?;
                buf
            }
            (Some(path), None) => {
                std::fs::read_to_string(path).map_err(|e| Error::Parse(e.to_string()))?
            }
            (None, None) => return Err(Error::Parse("need --spec or --json".into())),
        };
        kio::parse_spec(&text)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a single element (a one-generator spec).
    Classify {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Approximate the limit set over a word ball.
    Limitset {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 5)]
        radius: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
        /// Also write an orbit-oracle point cloud as CSV.
        #[arg(long)]
        cloud: Option<String>,
    },
    /// Render limit-set lines and points in an affine chart (binary PPM).
    Render {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value = "z3")]
        chart: String,
        /// Two axis selectors from re1, im1, re2, im2.
        #[arg(long, default_value = "re1,re2")]
        axes: String,
        /// Half-width R of the [-R, R]^2 window.
        #[arg(long, default_value_t = 2.0)]
        window: f64,
        #[arg(long, default_value_t = 256)]
        px: usize,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        #[arg(long)]
        out: String,
    },
    /// Run the acceptance criteria ("all" or a name filter).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn complex_json(z: C) -> serde_json::Value {
    json!([z.re, z.im])
}

fn vec3_json(v: &kleinian::projective::CVec3) -> serde_json::Value {
    json!([complex_json(v[0]), complex_json(v[1]), complex_json(v[2])])
}

fn run() -> Result<(), Error> {
    match Cli::parse().command {
        Command::Classify { spec } => {
            let spec = spec.load()?;
            if spec.generators.len() != 1 {
                return Err(Error::Parse("classify expects exactly one generator".into()));
            }
            let class = classify(&spec.generators[0]);
            let ls = element_limit_set(&class)?;
            let mut report = json!({
                "kind": class.kind.name(),
                "eigenvalues": class.eigenvalues.iter().map(|&z| complex_json(z)).collect::<Vec<_>>(),
                "fixed_points": class.fixed_points.iter().map(|p| vec3_json(p.rep())).collect::<Vec<_>>(),
                "invariant_lines": class.invariant_lines.iter().map(|l| vec3_json(l.rep())).collect::<Vec<_>>(),
                "boundary": class.boundary,
                "limit_set": {
                    "lines": ls.lines.len(),
                    "points": ls.points.len(),
                    "is_empty": ls.is_empty,
                    "is_everything": ls.is_everything,
                },
            });
            if let kleinian::ElementKind::EllipticFiniteOrder(n) = class.kind {
                report["order"] = json!(n);
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Limitset {
            spec,
            radius,
            out,
            cloud,
        } => {
            let spec = spec.load()?;
            let a = accumulate(&spec, radius);
            let verdict = classify_group(&spec, radius.max(1));
            let lambda = match a.lambda_estimate {
                kleinian::LambdaEstimate::Exact(n) => json!({"Exact": n}),
                kleinian::LambdaEstimate::AtLeast(n) => json!({"AtLeast": n}),
            };
            let report = json!({
                "family": spec.name,
                "radius": radius,
                "lines": a.lines.len(),
                "isolated_points": a.isolated_points.len(),
                "lambda": lambda,
                "mu": a.mu_estimate,
                "mu_estimate": a.mu_estimate,
                "vertices": a.vertices.iter()
                    .map(|(p, n)| json!({"point": vec3_json(p.rep()), "incident_lines": n}))
                    .collect::<Vec<_>>(),
                "line_duals": a.lines.iter().map(|t| vec3_json(t.line.rep())).collect::<Vec<_>>(),
                "isolated_point_list": a.isolated_points.iter()
                    .map(|p| vec3_json(p.rep())).collect::<Vec<_>>(),
                "verdict": format!("{:?}", verdict.kind),
            });
            let text = serde_json::to_string_pretty(&report).unwrap();
            match out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| Error::Parse(e.to_string()))?
                }
                None => println!("{text}"),
            }
            if let Some(path) = cloud {
                let pts = orbit_oracle(&spec, radius, 200, verify::oracle_seed());
                let mut csv = String::from("re1,im1,re2,im2,re3,im3\n");
                for p in pts {
                    let v = p.rep();
                    csv.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im
                    ));
                }
                std::fs::write(path, csv).map_err(|e| Error::Parse(e.to_string()))?;
            }
            Ok(())
        }
        Command::Render {
            spec,
            chart,
            axes,
            window,
            px,
            radius,
            out,
        } => {
            let spec = spec.load()?;
            let opts = RenderOptions::parse(&chart, &axes, window, px)?;
            let a = accumulate(&spec, radius);
            let ppm = render_chart(&a.plain_lines(), &a.isolated_points, &opts);
            std::fs::write(out, ppm).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(())
        }
        Command::Verify { suite } => {
            let rows = verify::run_suite(&suite);
            if rows.is_empty() {
                eprintln!("no criteria match suite {suite:?}");
                return Err(Error::Parse(format!("unknown suite {suite:?}")));
            }
            let mut all_ok = true;
            for r in &rows {
                all_ok &= r.passed;
                println!(
                    "[{}] criterion {:2} {:<45} {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id,
                    r.name,
                    r.detail
                );
            }
            if all_ok {
                Ok(())
            } else {
                std::process::exit(4);
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::Parse(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
