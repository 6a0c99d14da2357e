use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sturm_core::ball::{ball_anatomy, is_sturm_3ball, is_three_meander_template};
use sturm_core::complex::{infer_decorations, CellComplex};
use sturm_core::designer::{planar_roundtrip, roundtrip_orders, szs_pair, zs_pair, PathPair};
use sturm_core::invariants::Invariants;
use sturm_core::meander::{
    enumerate_sturm_jobs, is_sturm, morse_numbers, Orders, Permutation, DEFAULT_MAX_N,
};
use sturm_core::render::render_svg;
use sturm_core::report::analyze;
use sturm_core::surgery::{find_noses, retract_nose, scoop, ScoopSide};
use sturm_core::Error;

#[derive(Parser)]
#[command(
    name = "sturm",
    version,
    about = "Sturm permutations, 3-meander templates and 3-cell templates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Permutation as one line, e.g. "1 4 3 2 5"
    perm: Option<String>,
    /// Order file: one line for a bare permutation, two lines for labeled h0 and h1
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    East,
    West,
}

#[derive(Subcommand)]
enum Command {
    /// Sturm verdict; with --ball also the 3-meander template verdict
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        ball: bool,
        #[arg(long)]
        json: bool,
    },
    /// Full analysis: Morse numbers, zero numbers, connections, hemispheres, ball anatomy
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Add wall time to the report
        #[arg(long)]
        timing: bool,
    },
    /// Design the permutation of a cell complex given as JSON
    Design {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// List noses, or retract the nose given by --nose
    Retract {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["V1", "V2"])]
        nose: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Remove O and one open hemisphere of a 3-meander template
    Scoop {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        side: Side,
        #[arg(long)]
        json: bool,
    },
    /// Rebuild the complex and design it again
    Roundtrip {
        #[command(flatten)]
        input: Input,
        /// Planar round trip for Morse numbers at most 2
        #[arg(long)]
        planar: bool,
    },
    /// All Sturm permutations of size N
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Keep only 3-meander templates
        #[arg(long)]
        ball: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Draw the meander as SVG
    Render {
        #[command(flatten)]
        input: Input,
        /// Output path; stdout when absent
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Pass,
    Fail,
}

fn parse_orders(text: &str) -> Result<Orders> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect();
    match lines.as_slice() {
        [one] => Ok(Orders::from_permutation(&one.parse::<Permutation>()?)),
        [a, b] => {
            let h0: Permutation = a.parse()?;
            let h1: Permutation = b.parse()?;
            Ok(Orders::new(h0.into(), h1.into())?)
        }
        _ => bail!(Error::Parse(format!(
            "expected 1 or 2 lines, found {}",
            lines.len()
        ))),
    }
}

impl Input {
    fn orders(&self) -> Result<Orders> {
        match (&self.perm, &self.file) {
            (Some(p), None) => parse_orders(p),
            (None, Some(f)) => {
                let text =
                    fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
                parse_orders(&text)
            }
            _ => bail!(Error::Parse("give exactly one of PERM or --file".into())),
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn write_svg(path: &PathBuf, orders: &Orders) -> Result<()> {
    let morse = morse_numbers(orders).ok();
    fs::write(path, render_svg(orders, morse.as_ref()))
        .with_context(|| format!("writing {}", path.display()))
}

fn require_invariants(orders: &Orders) -> Result<Option<Invariants>> {
    match Invariants::new(orders) {
        Ok(inv) => Ok(Some(inv)),
        Err(e) => {
            eprintln!("{e}");
            Ok(None)
        }
    }
}

fn design_one(c: &CellComplex) -> sturm_core::Result<PathPair> {
    if c.ball.is_some() {
        szs_pair(c)
    } else {
        zs_pair(c)
    }
}

fn run(cli: Cli) -> Result<Verdict> {
    match cli.command {
        Command::Check { input, ball, json } => {
            let orders = input.orders()?;
            let verdict = is_sturm(&orders);
            let template = if ball && verdict.is_sturm() {
                Some(is_three_meander_template(&Invariants::new(&orders)?))
            } else {
                None
            };
            let pass = verdict.is_sturm() && (!ball || template.is_some_and(|t| t.passed()));
            if json {
                print_json(
                    &json!({ "verdict": verdict, "sturm": verdict.is_sturm(), "template": template, "pass": pass }),
                )?;
            } else {
                println!(
                    "odd={} dissipative={} meander={} morse={} sturm={}",
                    verdict.odd,
                    verdict.dissipative,
                    verdict.meander,
                    verdict.morse,
                    verdict.is_sturm()
                );
                if let Some(t) = template {
                    println!(
                        "single_center={} serpent_overlap={} polar_arcs={} neighbor_sources={} template={}",
                        t.single_center,
                        t.serpent_overlap,
                        t.polar_arcs,
                        t.neighbor_sources,
                        t.passed()
                    );
                }
            }
            Ok(if pass { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Analyze {
            input,
            json,
            svg,
            timing,
        } => {
            let orders = input.orders()?;
            let report = analyze(&orders, timing);
            if let Some(path) = &svg {
                write_svg(path, &orders)?;
            }
            if json {
                println!("{}", report.to_json());
            } else {
                println!("sigma: {}", report.input.sigma);
                println!("sturm: {}", report.sturm);
                if let Some(m) = &report.morse {
                    println!(
                        "morse: {}",
                        m.as_slice()
                            .iter()
                            .map(i64::to_string)
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                if let Some(b) = &report.ball {
                    println!("3-meander template: {}", b.template.passed());
                    println!("Sturm 3-ball: {}", b.sturm_3ball);
                    if let Some(a) = &b.anatomy {
                        println!("center: {} poles: {} {}", a.center, a.north, a.south);
                    }
                }
                if let Some(ms) = report.millis {
                    println!("time: {ms:.3} ms");
                }
            }
            Ok(Verdict::Pass)
        }
        Command::Design { complex, json, svg } => {
            let text = fs::read_to_string(&complex)
                .with_context(|| format!("reading {}", complex.display()))?;
            let c = CellComplex::from_json(&text)?;
            let candidates: Vec<CellComplex> = if c.ball.is_some() && c.decoration.is_none() {
                let decs = infer_decorations(&c)?;
                eprintln!("inferred {} decoration(s)", decs.len());
                decs.into_iter()
                    .map(|d| CellComplex {
                        decoration: Some(d),
                        ..c.clone()
                    })
                    .collect()
            } else {
                vec![c]
            };
            if candidates.is_empty() {
                eprintln!("no decoration satisfies the template clauses");
                return Ok(Verdict::Fail);
            }
            let mut results = Vec::new();
            let mut pass = true;
            for cand in &candidates {
                match design_one(cand) {
                    Ok(p) => {
                        let template = cand.ball.is_some();
                        results.push((cand.decoration.clone(), Some(p), template));
                    }
                    Err(e) => {
                        eprintln!("{e}");
                        pass = false;
                        results.push((cand.decoration.clone(), None, false));
                    }
                }
            }
            if let (Some(path), Some((_, Some(p), _))) = (&svg, results.first()) {
                write_svg(path, &p.orders())?;
            }
            if json {
                let out: Vec<_> = results
                    .iter()
                    .map(|(d, p, t)| json!({ "decoration": d, "pair": p, "three_meander_template": t }))
                    .collect();
                print_json(&out)?;
            } else {
                for (d, p, t) in &results {
                    if let Some(d) = d {
                        println!(
                            "decoration: N={} S={} WE=[{}] EW=[{}]",
                            d.north,
                            d.south,
                            list(&d.we),
                            list(&d.ew)
                        );
                    }
                    if let Some(p) = p {
                        println!("h0: {}", list(&p.h0));
                        println!("h1: {}", list(&p.h1));
                        println!("sigma: {}", p.sigma);
                        if d.is_some() {
                            println!("3-meander template: {t}");
                        }
                    }
                }
            }
            Ok(if pass { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Retract { input, nose, json } => {
            let orders = input.orders()?;
            match nose {
                None => {
                    let noses = find_noses(&orders);
                    if json {
                        print_json(&noses)?;
                    } else {
                        for n in &noses {
                            println!("{} {} {:?}", n.v1, n.v2, n.side);
                        }
                    }
                    Ok(Verdict::Pass)
                }
                Some(v) => match retract_nose(&orders, v[0], v[1]) {
                    Ok(r) => {
                        let sturm = is_sturm(&r.orders).is_sturm();
                        if json {
                            print_json(&json!({ "retraction": r, "sturm": sturm }))?;
                        } else {
                            println!("sigma: {}", r.sigma);
                            println!("sturm: {sturm}");
                        }
                        Ok(if sturm { Verdict::Pass } else { Verdict::Fail })
                    }
                    Err(e) => {
                        eprintln!("{e}");
                        Ok(Verdict::Fail)
                    }
                },
            }
        }
        Command::Scoop { input, side, json } => {
            let orders = input.orders()?;
            let Some(inv) = require_invariants(&orders)? else {
                return Ok(Verdict::Fail);
            };
            let side = match side {
                Side::East => ScoopSide::East,
                Side::West => ScoopSide::West,
            };
            match scoop(&inv, side) {
                Ok(s) => {
                    if json {
                        print_json(&s)?;
                    } else {
                        println!("removed: {}", list(&s.removed));
                        println!("h0: {}", list(&s.h0));
                        println!("h1: {}", list(&s.h1));
                        println!("sigma: {}", s.sigma_scooped);
                    }
                    Ok(Verdict::Pass)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::Roundtrip { input, planar } => {
            let orders = input.orders()?;
            let ok = if planar {
                planar_roundtrip(&orders.sigma())
            } else {
                let ball = Invariants::new(&orders)
                    .is_ok_and(|inv| is_sturm_3ball(&inv) && ball_anatomy(&inv).is_ok());
                if !ball {
                    eprintln!("not a Sturm 3-ball");
                }
                ball && roundtrip_orders(&orders)
            };
            println!("roundtrip: {ok}");
            Ok(if ok { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Enumerate {
            n,
            ball,
            jobs,
            max_n,
            json,
        } => {
            let all = enumerate_sturm_jobs(n, max_n, jobs)?;
            let kept: Vec<Permutation> = if ball {
                all.into_iter()
                    .filter(|p| {
                        Invariants::new(&Orders::from_permutation(p))
                            .is_ok_and(|inv| is_three_meander_template(&inv).passed())
                    })
                    .collect()
            } else {
                all
            };
            if json {
                print_json(&kept)?;
            } else {
                for p in &kept {
                    println!("{p}");
                }
                eprintln!("{} permutation(s)", kept.len());
            }
            Ok(Verdict::Pass)
        }
        Command::Render { input, svg } => {
            let orders = input.orders()?;
            match &svg {
                Some(path) => write_svg(path, &orders)?,
                None => {
                    let morse = morse_numbers(&orders).ok();
                    print!("{}", render_svg(&orders, morse.as_ref()));
                }
            }
            Ok(Verdict::Pass)
        }
    }
}

/// Input and usage problems map to 2, failed checks inside the domain to 1.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::Parse(_)
            | Error::InvalidOrders(_)
            | Error::Json(_)
            | Error::InvalidComplex(_)
            | Error::BoundExceeded { .. }
            | Error::EvenSize(_),
        ) => 2,
        Some(_) => 1,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
