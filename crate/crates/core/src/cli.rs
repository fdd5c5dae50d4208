//! The `gbsn` command line. [`run`] does all the work so it can be tested
//! without spawning a process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, ParseError};
use crate::finquo::{
    build_level_quotient, certificate_search, subgroup_image, SearchBudget, DEFAULT_ENUMERATION_BUDGET,
};
use crate::gog::{baumslag_solitar, identity_loop, leary_minasyan, presentation, GraphOfGroups};
use crate::hnn::{AscHnn, Word};
use crate::json;
use crate::lattice::IntMatrix;
use crate::monodromy::{classify_monodromy, decide_all, default_cap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "gbsn",
    version,
    about = "Exact computations for rank-n generalized Baumslag-Solitar groups"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a graph-of-groups file.
    Validate { path: String },
    /// Print a presentation of the fundamental group.
    Presentation { path: String },
    /// Monodromy generators and their classification.
    Monodromy {
        path: String,
        /// Element cap for the finite-group closure.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
    /// VRC, LERF, residual finiteness and Grothendieck rigidity verdicts.
    Properties {
        path: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
    /// Britton normal form of a word in an ascending HNN extension.
    Normalize {
        path: String,
        /// The word, e.g. `t a1^2 t^-1`; several arguments are joined.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        word: Vec<String>,
    },
    /// Level quotient G_l at the prime p, with images of the given words.
    Quotient {
        path: String,
        p: u64,
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
        /// One word per argument.
        #[arg(allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Search for a finite quotient in which a subgroup has a proper image.
    Certificate {
        path: String,
        /// Subgroup generators, one word per line.
        subgroup: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(2..))]
        primes: Option<Vec<u64>>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_level: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(usize))]
        word_budget: Option<usize>,
    },
    /// Print a built-in graph of groups in file form.
    Examples {
        name: ExampleName,
        /// Matrix for `bs`, e.g. `[[2]]`.
        #[arg(long, default_value = "[[2]]")]
        phi: String,
        /// Rank for `identity-loop`.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        rank: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExampleName {
    LearyMinasyan,
    Bs,
    IdentityLoop,
}

enum Failure {
    Input(String),
    Domain(String, Option<Value>),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string(), None)
    }
}

struct Output {
    text: String,
    json: Value,
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code: 0 on success, 1 for domain errors, 2 for I/O, parse and
/// usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let as_json = cli.json;
    let (code, result) = match dispatch(cli.command) {
        Ok(o) => (EXIT_OK, Ok(o)),
        Err(f) => (
            match f {
                Failure::Input(_) => EXIT_INPUT,
                Failure::Domain(..) => EXIT_DOMAIN,
            },
            Err(f),
        ),
    };
    let io = match result {
        Ok(o) => {
            if as_json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("json"))
            } else {
                write!(out, "{}", o.text)
            }
        }
        Err(Failure::Input(msg)) => {
            if as_json {
                let _ = writeln!(out, "{}", json!({ "error": msg, "kind": "input" }));
            }
            writeln!(err, "error: {msg}")
        }
        Err(Failure::Domain(msg, detail)) => {
            if as_json {
                let v = detail.unwrap_or_else(|| json!({ "error": msg, "kind": "domain" }));
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            writeln!(err, "error: {msg}")
        }
    };
    if io.is_err() {
        return EXIT_INPUT;
    }
    code
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads a graph file, or a built-in when `path` is `builtin:NAME`
/// (`bs` is the `phi = [[2]]` extension, `identity-loop` has rank 2).
fn load_unchecked(path: &str) -> Result<GraphOfGroups, Failure> {
    if let Some(name) = path.strip_prefix("builtin:") {
        return match name {
            "leary-minasyan" => Ok(leary_minasyan()),
            "identity-loop" => Ok(identity_loop(2)),
            "bs" => Ok(baumslag_solitar(IntMatrix::from_rows(&[[2]]))),
            _ => Err(Failure::Input(format!(
                "unknown builtin `{name}` (known: leary-minasyan, bs, identity-loop)"
            ))),
        };
    }
    read(Path::new(path))?
        .parse::<GraphOfGroups>()
        .map_err(|e| Failure::Input(format!("{path}: {e}")))
}

fn load(path: &str) -> Result<GraphOfGroups, Failure> {
    let g = load_unchecked(path)?;
    Ok(g.validated()?)
}

fn load_hnn(path: &str) -> Result<AscHnn, Failure> {
    Ok(AscHnn::from_graph(&load(path)?)?)
}

fn parse_word(text: &str, rank: usize) -> Result<Word, Failure> {
    Word::parse(text, rank).map_err(|e| Failure::Input(format!("word `{text}`: {}", e.message)))
}

/// One word per line; `#` starts a comment.
pub fn parse_word_list(text: &str, rank: usize) -> Result<Vec<Word>, ParseError> {
    let mut words = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        words.push(Word::parse(line, rank).map_err(|e| ParseError::new(i + 1, e.message))?);
    }
    Ok(words)
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { path } => validate(&path),
        Command::Presentation { path } => {
            let p = presentation(&load(&path)?);
            Ok(Output {
                text: p.to_string(),
                json: p.to_json(),
            })
        }
        Command::Monodromy { path, cap } => {
            let g = load(&path)?;
            let report = classify_monodromy(&g, cap.unwrap_or_else(|| default_cap(g.rank())));
            Ok(Output {
                text: format!("{report}\n"),
                json: report.to_json(),
            })
        }
        Command::Properties { path, cap } => {
            let g = load(&path)?;
            let verdicts = decide_all(&g, cap.unwrap_or_else(|| default_cap(g.rank())))?;
            let mut text = String::new();
            for v in &verdicts {
                writeln!(text, "{v}").expect("string write");
            }
            Ok(Output {
                text,
                json: serde_json::to_value(&verdicts).expect("verdicts serialize"),
            })
        }
        Command::Normalize { path, word } => {
            let g = load_hnn(&path)?;
            let w = parse_word(&word.join(" "), g.rank())?;
            let nf = g.normalize(&w);
            let mut j = nf.to_json();
            j["input"] = Value::from(w.to_string());
            j["height"] = Value::from(nf.height());
            Ok(Output {
                text: format!("{}\n", nf.to_word()),
                json: j,
            })
        }
        Command::Quotient { path, p, l, words } => quotient(&path, p, l, &words),
        Command::Certificate {
            path,
            subgroup,
            primes,
            max_level,
            word_budget,
        } => {
            let g = load_hnn(&path)?;
            let gens = parse_word_list(&read(&subgroup)?, g.rank())
                .map_err(|e| Failure::Input(format!("{}: {e}", subgroup.display())))?;
            let mut budget = SearchBudget::default_for(&g);
            if let Some(p) = primes {
                budget.primes = p;
            }
            if let Some(l) = max_level {
                budget.max_level = l;
            }
            if let Some(b) = word_budget {
                budget.word_budget = b;
            }
            let outcome = certificate_search(&g, &gens, &budget);
            let mut j = outcome.to_json();
            j["subgroup"] = gens.iter().map(ToString::to_string).collect::<Vec<_>>().into();
            Ok(Output {
                text: format!("{outcome}\n"),
                json: j,
            })
        }
        Command::Examples { name, phi, rank } => {
            let (label, g) = match name {
                ExampleName::LearyMinasyan => ("leary-minasyan", leary_minasyan()),
                ExampleName::IdentityLoop => ("identity-loop", identity_loop(rank as usize)),
                ExampleName::Bs => {
                    let m: IntMatrix = phi
                        .parse()
                        .map_err(|e: ParseError| Failure::Input(format!("--phi: {}", e.message)))?;
                    if !m.is_square() || m.rows() == 0 {
                        return Err(Failure::Input("--phi must be a nonempty square matrix".into()));
                    }
                    ("bs", baumslag_solitar(m).validated()?)
                }
            };
            let text = g.to_string();
            Ok(Output {
                json: json!({ "name": label, "rank": g.rank(), "graph": text }),
                text,
            })
        }
    }
}

fn validate(path: &str) -> Result<Output, Failure> {
    let g = load_unchecked(path)?;
    match g.validate() {
        Ok(()) => Ok(Output {
            text: format!(
                "valid: rank {}, {} vertices, {} edges\n",
                g.rank(),
                g.vertices().len(),
                g.edges().len()
            ),
            json: json!({
                "valid": true,
                "rank": g.rank(),
                "vertices": g.vertices().len(),
                "edges": g.edges().len(),
                "errors": [],
            }),
        }),
        Err(errors) => {
            let list: Vec<String> = errors.iter().map(ToString::to_string).collect();
            Err(Failure::Domain(
                format!("invalid graph of groups:\n  {}", list.join("\n  ")),
                Some(json!({ "valid": false, "errors": list })),
            ))
        }
    }
}

fn quotient(path: &str, p: u64, l: u32, words: &[String]) -> Result<Output, Failure> {
    let g = load_hnn(path)?;
    let q = build_level_quotient(&g, p, l)?;
    let parsed = words
        .iter()
        .map(|w| parse_word(w, g.rank()))
        .collect::<Result<Vec<_>, _>>()?;
    let images: Vec<_> = parsed.iter().map(|w| q.group().project(w)).collect();
    let order = q.order();
    let mut text = String::new();
    writeln!(
        text,
        "level quotient G_{l} at p = {p}: (Z/{})^{} x| Z/{}",
        q.modulus,
        g.rank(),
        q.r_l
    )
    .expect("write");
    writeln!(text, "M_l = {}", q.m_l).expect("write");
    writeln!(text, "r_l = {}", q.r_l).expect("write");
    writeln!(text, "order = {order}").expect("write");
    for (w, x) in parsed.iter().zip(&images) {
        writeln!(text, "{w} -> {x}").expect("write");
    }
    let mut j = json!({
        "p": p,
        "l": l,
        "modulus": q.modulus,
        "M_l": json::int_matrix(&q.m_l),
        "r_l": q.r_l,
        "order": json::int(&order.into()),
        "images": parsed.iter().zip(&images).map(|(w, x)| json!({ "word": w.to_string(), "image": x.to_json() })).collect::<Vec<_>>(),
    });
    if !parsed.is_empty() {
        match subgroup_image(q.group(), &images, DEFAULT_ENUMERATION_BUDGET) {
            Ok(img) => {
                writeln!(text, "subgroup image order = {} (index {})", img.order, img.index()).expect("write");
                j["image_order"] = img.order.into();
                j["index"] = img.index().into();
            }
            Err(e) => {
                writeln!(text, "subgroup image not computed: {e}").expect("write");
                j["image_order"] = Value::Null;
            }
        }
    }
    Ok(Output { text, json: j })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("gbsn").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn builtin_properties() {
        let (code, out, _) = run_args(&["properties", "builtin:leary-minasyan"]);
        assert_eq!(code, 0);
        assert!(out.contains("VRC: no"));
        assert!(out.contains("GrothendieckRigid: not-applicable"));
    }

    #[test]
    fn examples_text() {
        let (code, out, _) = run_args(&["examples", "bs", "--phi", "[[2]]"]);
        assert_eq!(code, 0);
        assert_eq!(
            out.parse::<GraphOfGroups>().unwrap(),
            baumslag_solitar(IntMatrix::from_rows(&[[2]]))
        );
        let (code, _, err) = run_args(&["examples", "bs", "--phi", "[[1,2]]"]);
        assert_eq!(code, 2);
        assert!(err.contains("square"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["--help"]).0, 0);
        assert_eq!(run_args(&["quotient", "builtin:leary-minasyan", "3", "0"]).0, 2);
    }

    #[test]
    fn word_lists() {
        let ws = parse_word_list("# gens\na1^2\n\n a2  # second\nt\n", 2).unwrap();
        assert_eq!(ws.len(), 3);
        let e = parse_word_list("a1\n\nq\n", 2).unwrap_err();
        assert_eq!(e.line, 3);
    }
}
