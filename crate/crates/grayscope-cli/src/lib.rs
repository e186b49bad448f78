//! Command-line front end: parse/validate interchange documents, build
//! derived structures, run named verification suites, and compare documents.

pub mod suites;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grayscope_core::doc::{self, Document};
use grayscope_core::gray::{gray_dual, validate_gray, GrayDuality};
use grayscope_core::omega::{all_dims, dual, even_dims, odd_dims, CellRef};
use grayscope_core::{comma, cyl, functoriality, grayslice, Error};
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(name = "grayscope", version, about = "checker for finite higher categories")]
pub struct Cli {
    /// report format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// cap the dimension explored by builds that accept one
    #[arg(long, global = true)]
    pub max_dim: Option<usize>,
    /// truncate serialized law-violation witnesses to this many lines
    #[arg(long, global = true)]
    pub witness_limit: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// parse documents and check all structural laws
    Validate { files: Vec<PathBuf> },
    /// construct a derived structure and print it as a document
    Build(BuildArgs),
    /// run a named verification suite (or `all`)
    Check { suite: String },
    /// compare two documents for table identity
    Compare { a: PathBuf, b: PathBuf },
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(subcommand)]
    pub what: BuildCmd,
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    /// cylinder category over a strict category
    Cyl { file: PathBuf },
    /// dual along a dimension set (odd|even|all|comma list) or a gray duality (op|co|o|t|top|cot|to)
    Dual { file: PathBuf, spec: String },
    /// comma category of a cospan of functors
    Comma { f: PathBuf, g: PathBuf },
    /// strict slice over an object
    Slice { file: PathBuf, object: usize },
    /// gray slice over an object
    GraySlice { file: PathBuf, object: usize },
    /// strict witness slice of a family of functors out of one source
    Wtr { base: PathBuf, functors: Vec<PathBuf> },
    /// total category of a strict family document
    Integrate { file: PathBuf },
    /// gray total category of a strict family document
    GrayIntegrate { file: PathBuf },
}

pub struct Outcome {
    pub code: i32,
    pub out: String,
}

fn load(path: &Path) -> Result<Document, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ParseError {
        line: 0,
        detail: format!("{}: {e}", path.display()),
    })?;
    doc::parse(&text)
}

fn need_omega(d: Document, path: &Path) -> Result<Arc<grayscope_core::OmegaCat>, Error> {
    match d {
        Document::Omega(od) => Ok(Arc::new(doc::doc_to_omega(&od)?)),
        other => Err(Error::ParseError {
            line: 0,
            detail: format!("{}: expected an omega document, found {}", path.display(), other.kind()),
        }),
    }
}

fn need_gray(d: Document, path: &Path) -> Result<grayscope_core::gray::GrayCat, Error> {
    match d {
        Document::Gray(gd) => doc::doc_to_gray(&gd),
        other => Err(Error::ParseError {
            line: 0,
            detail: format!("{}: expected a gray document, found {}", path.display(), other.kind()),
        }),
    }
}

fn need_functor(d: Document, path: &Path) -> Result<grayscope_core::OmegaFunctor, Error> {
    match d {
        Document::Functor(fd) => doc::doc_to_functor(&fd),
        other => Err(Error::ParseError {
            line: 0,
            detail: format!("{}: expected a functor document, found {}", path.display(), other.kind()),
        }),
    }
}

fn need_fdata(d: Document, path: &Path) -> Result<functoriality::FData, Error> {
    match d {
        Document::FData(fd) => doc::doc_to_fdata(&fd),
        other => Err(Error::ParseError {
            line: 0,
            detail: format!("{}: expected a family document, found {}", path.display(), other.kind()),
        }),
    }
}

fn parse_dims(spec: &str, truncation: usize) -> Result<Vec<usize>, Error> {
    match spec {
        "odd" => Ok(odd_dims(truncation)),
        "even" => Ok(even_dims(truncation)),
        "all" => Ok(all_dims(truncation)),
        _ => spec
            .split(',')
            .map(|s| {
                s.trim().parse::<usize>().map_err(|_| Error::ParseError {
                    line: 0,
                    detail: format!("bad dimension set `{spec}`"),
                })
            })
            .collect(),
    }
}

fn parse_gray_duality(spec: &str) -> Option<GrayDuality> {
    Some(match spec {
        "op" => GrayDuality::Op,
        "co" => GrayDuality::Co,
        "o" => GrayDuality::O,
        "t" => GrayDuality::T,
        "top" => GrayDuality::Top,
        "cot" => GrayDuality::Cot,
        "to" => GrayDuality::To,
        _ => return None,
    })
}

fn run_inner(cli: &Cli) -> Result<Vec<String>, Error> {
    match &cli.cmd {
        Cmd::Validate { files } => {
            let mut lines = Vec::new();
            for path in files {
                let d = load(path)?;
                match &d {
                    Document::Omega(od) => {
                        doc::doc_to_omega(od)?;
                    }
                    Document::Gray(gd) => {
                        let g = doc::doc_to_gray(gd)?;
                        validate_gray(&g)?;
                    }
                    Document::Functor(fd) => {
                        doc::doc_to_functor(fd)?;
                    }
                    Document::GrayFunctor(fd) => {
                        doc::doc_to_gray_functor(fd)?;
                    }
                    Document::FData(fd) => {
                        doc::doc_to_fdata(fd)?.validate()?;
                    }
                }
                lines.push(format!("{}: valid {}", path.display(), d.kind()));
            }
            Ok(lines)
        }
        Cmd::Build(args) => {
            let d = build(args, cli.max_dim)?;
            Ok(vec![doc::serialize(&d).trim_end().to_string()])
        }
        Cmd::Check { suite } => match suites::run_suite(suite)? {
            Some(lines) => Ok(lines),
            None => Err(Error::ParseError {
                line: 0,
                detail: format!(
                    "unknown suite `{suite}`; known: all, {}",
                    suites::SUITE_NAMES.join(", ")
                ),
            }),
        },
        Cmd::Compare { a, b } => {
            let da = load(a)?;
            let db = load(b)?;
            if doc::serialize(&da) == doc::serialize(&db) {
                Ok(vec!["identical".into()])
            } else {
                Err(Error::MismatchWitness(format!(
                    "{} and {} differ",
                    a.display(),
                    b.display()
                )))
            }
        }
    }
}

fn build(args: &BuildArgs, max_dim: Option<usize>) -> Result<Document, Error> {
    Ok(match &args.what {
        BuildCmd::Cyl { file } => {
            let mut c = need_omega(load(file)?, file)?;
            if let Some(n) = max_dim {
                c = Arc::new(functoriality::truncate_cat(&c, n)?);
            }
            Document::Omega(doc::omega_to_doc(&cyl::cyl(&c)?.cat))
        }
        BuildCmd::Dual { file, spec } => match load(file)? {
            Document::Omega(od) => {
                let c = Arc::new(doc::doc_to_omega(&od)?);
                let dims = parse_dims(spec, c.truncation)?;
                Document::Omega(doc::omega_to_doc(&dual(&c, &dims)))
            }
            Document::Gray(gd) => {
                let g = doc::doc_to_gray(&gd)?;
                let du = parse_gray_duality(spec).ok_or_else(|| Error::ParseError {
                    line: 0,
                    detail: format!("bad gray duality `{spec}`"),
                })?;
                Document::Gray(doc::gray_to_doc(&gray_dual(&g, du)))
            }
            other => {
                return Err(Error::ParseError {
                    line: 0,
                    detail: format!("cannot dualize a {} document", other.kind()),
                })
            }
        },
        BuildCmd::Comma { f, g } => {
            let ff = need_functor(load(f)?, f)?;
            let gg = need_functor(load(g)?, g)?;
            Document::Omega(doc::omega_to_doc(&comma::comma(&ff, &gg)?.total))
        }
        BuildCmd::Slice { file, object } => {
            let c = need_omega(load(file)?, file)?;
            let s = comma::slice(&c, CellRef::stored(0, *object), comma::SliceKind::Over)?;
            Document::Omega(doc::omega_to_doc(&s.total))
        }
        BuildCmd::GraySlice { file, object } => {
            let g = need_gray(load(file)?, file)?;
            Document::Gray(doc::gray_to_doc(&grayslice::slice_gray(&g, *object)?.cat))
        }
        BuildCmd::Wtr { base, functors } => {
            let c = need_omega(load(base)?, base)?;
            let fs = functors
                .iter()
                .map(|p| need_functor(load(p)?, p))
                .collect::<Result<Vec<_>, _>>()?;
            for f in &fs {
                if *f.target != *c {
                    return Err(Error::MismatchedCospan(
                        "witness-slice functors must share the given target".into(),
                    ));
                }
            }
            let fs: Vec<_> = fs
                .into_iter()
                .map(|f| grayscope_core::OmegaFunctor::from_map(&f.source, &c, f.map.clone()))
                .collect();
            let w = functoriality::wtr_build(&c, &fs)?;
            Document::Omega(doc::omega_to_doc(&w.assembly.cat))
        }
        BuildCmd::Integrate { file } => {
            let fd = need_fdata(load(file)?, file)?;
            let ig = functoriality::integrate(&fd)?;
            Document::Omega(doc::omega_to_doc(&ig.total))
        }
        BuildCmd::GrayIntegrate { file } => {
            let fd = need_fdata(load(file)?, file)?;
            let gd = functoriality::gray_fdata_from_strict(&fd)?;
            let gi = functoriality::gray_integrate(&gd)?;
            Document::Gray(doc::gray_to_doc(&gi.total))
        }
    })
}

fn clip(text: String, limit: Option<usize>) -> String {
    match limit {
        Some(n) => {
            let lines: Vec<&str> = text.lines().collect();
            if lines.len() > n {
                let mut kept: Vec<String> = lines[..n].iter().map(|s| s.to_string()).collect();
                kept.push(format!("... ({} more lines)", lines.len() - n));
                kept.join("\n")
            } else {
                text
            }
        }
        None => text,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    if let Cmd::Check { suite } = &cli.cmd {
        if suite != "all" && !suites::SUITE_NAMES.contains(&suite.as_str()) {
            let msg = format!(
                "unknown suite `{suite}`; known: all, {}",
                suites::SUITE_NAMES.join(", ")
            );
            let out = match cli.format {
                Format::Text => format!("usage: {msg}\n"),
                Format::Json => {
                    let v = serde_json::json!({ "status": "usage", "detail": msg });
                    let mut s = serde_json::to_string_pretty(&v).unwrap();
                    s.push('\n');
                    s
                }
            };
            return Outcome { code: 2, out };
        }
    }
    match run_inner(cli) {
        Ok(lines) => {
            let out = match cli.format {
                Format::Text => {
                    let mut s = lines.join("\n");
                    s.push('\n');
                    s
                }
                Format::Json => {
                    let v = serde_json::json!({ "status": "ok", "report": lines });
                    let mut s = serde_json::to_string_pretty(&v).unwrap();
                    s.push('\n');
                    s
                }
            };
            Outcome { code: 0, out }
        }
        Err(e) => {
            let witness = clip(format!("{e}"), cli.witness_limit);
            let out = match cli.format {
                Format::Text => format!("error: {witness}\n"),
                Format::Json => {
                    let v = serde_json::json!({ "status": "error", "witness": witness });
                    let mut s = serde_json::to_string_pretty(&v).unwrap();
                    s.push('\n');
                    s
                }
            };
            Outcome { code: 1, out }
        }
    }
}
