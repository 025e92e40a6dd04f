use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use twostep::enumerate::{enumerate_puzzles, product_expansion};
use twostep::mutation::{mutation_component, FlawSpec, FlawedPuzzle, FlawedPuzzleJson};
use twostep::pieces::{install, PieceTables};
use twostep::puzzle::{Overlay, Puzzle, PuzzleJson};
use twostep::quantum::{quantum_product, Partition};
use twostep::verify::{self, Suite};
use twostep::{Content, Error, String012};

const TABLE_ENV: &str = "PUZZLE_TABLE_PATH";

#[derive(Parser)]
#[command(name = "twostep", version, about = "Equivariant puzzles for two-step flag varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Svg,
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand the product of two Schubert classes.
    Product {
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ProductFormat,
    },
    /// List the puzzles with a given boundary.
    Puzzles {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
        #[arg(long, value_enum)]
        render: Option<Render>,
        /// Write one file per puzzle into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mutate a flawed puzzle or dump its mutation component.
    Mutate {
        /// Puzzle JSON; a flawed puzzle JSON (with a `flaw` field) may be
        /// given instead of `--flaw`.
        #[arg(long)]
        puzzle: PathBuf,
        /// `gash:SEG:I,J`, `temp:X,Y,U|D` or `scab:X,Y,H|S|B`.
        #[arg(long)]
        flaw: Option<String>,
        #[arg(long, conflicts_with = "component")]
        steps: Option<usize>,
        /// Resolution chosen at each step, comma separated (default 0).
        #[arg(long, requires = "steps")]
        choices: Option<String>,
        #[arg(long)]
        component: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
    },
    /// Quantum product on a Grassmannian.
    Quantum {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Run a verification suite and print a JSON summary.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::FlawMismatch(_) => 3,
            _ => 2,
        };
        Fail(code, e.to_string())
    }
}

fn io_fail(p: &Path, e: impl std::fmt::Display) -> Fail {
    Fail(2, format!("{}: {e}", p.display()))
}

fn string(s: &str) -> Result<String012, Fail> {
    Ok(s.parse::<String012>()?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = load_tables().and_then(|()| dispatch(cli.cmd));
    match run {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Fail(code, msg)) => {
            if code == 1 {
                print!("{msg}");
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn load_tables() -> Result<(), Fail> {
    let Ok(path) = std::env::var(TABLE_ENV) else { return Ok(()) };
    let t = PieceTables::load(Path::new(&path))?;
    install(t)?;
    Ok(())
}

fn dispatch(cmd: Cmd) -> Result<String, Fail> {
    match cmd {
        Cmd::Product { a, b, n, u, v, format } => product(a, b, n, &u, &v, format),
        Cmd::Puzzles { u, v, w, render, out } => puzzles(&u, &v, &w, render, out.as_deref()),
        Cmd::Mutate { puzzle, flaw, steps, choices, component, format } => {
            mutate(&puzzle, flaw.as_deref(), steps, choices.as_deref(), component, format)
        }
        Cmd::Quantum { m, n, lambda, mu } => quantum(m, n, &lambda, &mu),
        Cmd::Verify { suite, max_n } => {
            let s = verify::run(suite, max_n)?;
            let text = serde_json::to_string_pretty(&s).expect("summary serializes") + "\n";
            if s.pass {
                Ok(text)
            } else {
                Err(Fail(1, text))
            }
        }
    }
}

fn product(
    a: Option<usize>,
    b: Option<usize>,
    n: Option<usize>,
    u: &str,
    v: &str,
    format: ProductFormat,
) -> Result<String, Fail> {
    let (u, v) = (string(u)?, string(v)?);
    let inferred = u.content();
    let c = Content::new(a.unwrap_or(inferred.a), b.unwrap_or(inferred.b), n.unwrap_or(inferred.n))?;
    u.check(c)?;
    v.check(c)?;
    let terms = product_expansion(&u, &v)?;
    Ok(match format {
        ProductFormat::Text => terms.iter().fold(String::new(), |mut s, (w, p)| {
            let _ = writeln!(s, "{w}: {p}");
            s
        }),
        ProductFormat::Json => {
            let m: serde_json::Map<String, serde_json::Value> =
                terms.iter().map(|(w, p)| (w.to_string(), p.to_string().into())).collect();
            serde_json::to_string_pretty(&m).expect("map serializes") + "\n"
        }
    })
}

fn puzzles(u: &str, v: &str, w: &str, render: Option<Render>, out: Option<&Path>) -> Result<String, Fail> {
    let (u, v, w) = (string(u)?, string(v)?, string(w)?);
    let ps = enumerate_puzzles(&u, &v, &w)?;
    let mut s = format!("count: {}\n", ps.len());
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| io_fail(dir, e))?;
    }
    for (i, p) in ps.iter().enumerate() {
        let _ = writeln!(s, "{i}: {}", p.weight()?);
        let body = match render {
            Some(Render::Svg) => p.render_svg(&Overlay::default()),
            Some(Render::Text) => p.render_text(),
            Some(Render::Json) | None => serde_json::to_string_pretty(&p.to_json()).expect("puzzle serializes") + "\n",
        };
        match out {
            Some(dir) => {
                let ext = match render {
                    Some(Render::Svg) => "svg",
                    Some(Render::Text) => "txt",
                    _ => "json",
                };
                let path = dir.join(format!("puzzle-{i}.{ext}"));
                std::fs::write(&path, body).map_err(|e| io_fail(&path, e))?;
            }
            None if render.is_some() => s.push_str(&body),
            None => {}
        }
    }
    Ok(s)
}

fn load_flawed(path: &Path, flaw: Option<&str>) -> Result<FlawedPuzzle, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    match flaw {
        Some(spec) => {
            let j: PuzzleJson = serde_json::from_str(&text).map_err(|e| io_fail(path, e))?;
            let p = Puzzle::from_json(&j)?;
            Ok(spec.parse::<FlawSpec>()?.apply(&p)?)
        }
        None => {
            let j: FlawedPuzzleJson = serde_json::from_str(&text)
                .map_err(|e| io_fail(path, format!("{e} (pass --flaw for a plain puzzle)")))?;
            Ok(FlawedPuzzle::from_json(&j)?)
        }
    }
}

fn mutate(
    path: &Path,
    flaw: Option<&str>,
    steps: Option<usize>,
    choices: Option<&str>,
    component: bool,
    format: GraphFormat,
) -> Result<String, Fail> {
    let mut p = load_flawed(path, flaw)?;
    if component {
        let c = mutation_component(&p)?;
        return Ok(match format {
            GraphFormat::Json => serde_json::to_string_pretty(&c.to_json()).expect("graph serializes") + "\n",
            GraphFormat::Dot => c.to_dot(),
        });
    }
    let steps = steps.unwrap_or(0);
    let choices: Vec<usize> = match choices {
        Some(s) => s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Fail(2, format!("bad choice {x:?}"))))
            .collect::<Result<_, _>>()?,
        None => vec![0; steps],
    };
    if choices.len() != steps {
        return Err(Fail(2, format!("{} choices for {steps} steps", choices.len())));
    }
    for c in choices {
        p = p.mutate(c)?;
    }
    Ok(serde_json::to_string_pretty(&p.to_json()).expect("puzzle serializes") + "\n")
}

fn quantum(m: usize, n: usize, lambda: &str, mu: &str) -> Result<String, Fail> {
    let (l, u) = (lambda.parse::<Partition>()?, mu.parse::<Partition>()?);
    let terms = quantum_product(m, n, &l, &u)?;
    Ok(terms.iter().fold(String::new(), |mut s, ((d, nu), p)| {
        let _ = writeln!(s, "q^{d} {nu}: {p}");
        s
    }))
}
