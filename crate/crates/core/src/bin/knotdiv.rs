//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use knotdiv::bracket::{jones, kauffman_bracket};
use knotdiv::diagram;
use knotdiv::moves::{self, verify, MoveSpec};
use knotdiv::tangle::{self, Tangle};
use knotdiv::{auxiliary_f, Error, LinkDiagram, Matching};

#[derive(Parser)]
#[command(name = "knotdiv", version, about = "Bracket polynomials, tangle closures and local-move divisors")]
struct Cli {
    /// Worker threads for parallel state sums.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    verb: Verb,
}

/// A diagram from a file or a named builtin.
#[derive(Args)]
struct Input {
    /// Diagram files; a name that is not a file is tried as a builtin.
    files: Vec<String>,

    /// Builtin, as NAME or NAME:k.
    #[arg(long = "builtin", value_name = "NAME[:k]")]
    builtins: Vec<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Kauffman bracket of a link.
    Bracket(Input),
    /// Jones polynomial in q = t^(1/4).
    Jones(Input),
    /// Auxiliary polynomial f = (-A^3)^(-w) <L>.
    F(Input),
    /// Writhe of an oriented link.
    Writhe(Input),
    /// Perfect matchings of 2n points.
    Matchings {
        n: usize,
        #[arg(long)]
        noncrossing: bool,
        /// Print only how many there are.
        #[arg(long)]
        count: bool,
    },
    /// Closure of a tangle by a matching.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_name = "\"(1 2)(3 4)\"")]
        matching: String,
        /// Replace chord crossings by the orientation-preserving gadget.
        #[arg(long)]
        modified: bool,
    },
    /// Bracket coefficients of a tangle against each closure.
    Decompose(Input),
    /// Divisor of a local move.
    Divisor {
        #[arg(long = "move", value_name = "NAME|FILE")]
        mv: String,
        /// Also list f of both closures for every matching.
        #[arg(long)]
        closures: bool,
    },
    /// Screens whether two links can be related by a move.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long = "move", value_name = "NAME|FILE")]
        mv: String,
    },
    /// Runs the built-in theorem checks.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per randomized check.
        #[arg(long, default_value_t = 25)]
        trials: usize,
    },
}

enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<String, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn links(input: &Input) -> Result<Vec<LinkDiagram>, Failure> {
    let mut out = Vec::new();
    for f in &input.files {
        if Path::new(f).exists() {
            out.push(LinkDiagram::parse(&read(f)?)?);
        } else {
            out.push(diagram::builtin_spec(f).map_err(|e| match e {
                Error::UnknownBuiltin(_) => Failure::Input(format!("{f}: no such file or builtin")),
                e => e.into(),
            })?);
        }
    }
    for b in &input.builtins {
        out.push(diagram::builtin_spec(b)?);
    }
    Ok(out)
}

fn one_link(input: &Input) -> Result<LinkDiagram, Failure> {
    let mut v = links(input)?;
    match v.len() {
        1 => Ok(v.remove(0)),
        n => Err(Failure::Input(format!("expected one link, got {n}"))),
    }
}

fn tangle_from(spec: &str) -> Result<Tangle, Failure> {
    if Path::new(spec).exists() {
        Ok(Tangle::parse(&read(spec)?)?)
    } else {
        tangle::builtin(spec).map_err(|e| match e {
            Error::UnknownBuiltin(_) => Failure::Input(format!("{spec}: no such file or builtin tangle")),
            e => e.into(),
        })
    }
}

fn one_tangle(input: &Input) -> Result<Tangle, Failure> {
    let specs: Vec<&String> = input.files.iter().chain(&input.builtins).collect();
    match specs.as_slice() {
        [s] => tangle_from(s),
        v => Err(Failure::Input(format!("expected one tangle, got {}", v.len()))),
    }
}

fn load_move(spec: &str) -> Result<MoveSpec, Failure> {
    if Path::new(spec).is_file() {
        return Ok(MoveSpec::parse(&read(spec)?)?);
    }
    let (name, arg) = moves::split_move_name(spec);
    if !moves::is_builtin_move(name) {
        return Err(Failure::Input(format!("{spec}: no such file or builtin move")));
    }
    let t = arg.map(tangle_from).transpose()?;
    Ok(moves::builtin_move(name, t.as_ref())?)
}

fn run(verb: Verb) -> Outcome {
    Ok(match verb {
        Verb::Bracket(i) => kauffman_bracket(&one_link(&i)?)?.to_string(),
        Verb::Jones(i) => jones(&one_link(&i)?)?.display_in("q"),
        Verb::F(i) => auxiliary_f(&one_link(&i)?)?.to_string(),
        Verb::Writhe(i) => one_link(&i)?.writhe().to_string(),
        Verb::Matchings { n, noncrossing, count } => {
            if count {
                Matching::count(n, noncrossing)
                    .ok_or_else(|| Failure::Input(format!("count for n = {n} overflows")))?
                    .to_string()
            } else {
                let ms = Matching::enumerate(n, noncrossing)?;
                ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n")
            }
        }
        Verb::Closure {
            input,
            matching,
            modified,
        } => {
            let t = one_tangle(&input)?;
            let m: Matching = matching.parse()?;
            let d = if modified { t.modified_closure(&m)? } else { t.closure(&m)? };
            d.render().trim_end().to_string()
        }
        Verb::Decompose(i) => {
            let q = one_tangle(&i)?.bracket_decompose()?;
            q.iter().map(|(m, p)| format!("{m}: {p}")).collect::<Vec<_>>().join("\n")
        }
        Verb::Divisor { mv, closures } => {
            let mv = load_move(&mv)?;
            let mut out = String::new();
            if closures {
                for r in moves::closure_differences(&mv)? {
                    out.push_str(&format!("{}: {} | {}\n", r.matching, r.f1, r.f2));
                }
            }
            out.push_str(&moves::move_divisor(&mv)?.to_string());
            out
        }
        Verb::Check { input, mv } => {
            let ls = links(&input)?;
            let [l1, l2] = ls.as_slice() else {
                return Err(Failure::Input(format!("check needs two links, got {}", ls.len())));
            };
            let c = moves::check_divisibility(l1, l2, &load_move(&mv)?)?;
            c.to_string().trim_end().to_string()
        }
        Verb::Verify { seed, trials } => {
            let r = verify::verify_theorems(seed, trials)?;
            if r.passed() {
                r.to_string()
            } else {
                return Err(Failure::Check(r.to_string()));
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("knotdiv: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.verb) {
        Ok(s) => {
            println!("{s}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(s)) => {
            println!("{s}");
            ExitCode::from(1)
        }
        Err(Failure::Input(s)) => {
            eprintln!("knotdiv: {s}");
            ExitCode::from(2)
        }
    }
}
