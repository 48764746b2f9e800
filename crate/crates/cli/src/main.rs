//! Command line front end: validation, homology and homotopy reports,
//! basis changes between modules and complexes, factorization in the
//! enlarged simplex categories, and document generation.
//!
//! Exit codes: 0 for success or a true verdict, 1 for a computed negative
//! verdict, 2 for malformed input or a structural error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use deltak::crossed::{crossed_compose, representable_crossed, CrossedMorphism};
use deltak::doc::{read_document, ChainDoc, CrossedDoc, Document, SimplicialDoc};
use deltak::dold_kan::{inflate, moore};
use deltak::family::{lookup, Permutation, SetMap};
use deltak::field::Field;
use deltak::generate::{random_chain_complex, random_full_module, seeded};
use deltak::resolution::point_resolution;
use deltak::selfcheck::{eta_report, render_eta_report, run_selfcheck};
use deltak::simplicial::{
    boundary_module, constant_module, free_standard, point_module, SimplicialModule,
};
use deltak::{Error, Result};

#[derive(Parser)]
#[command(name = "deltak", version, about = "Exact computations with simplicial modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    Field::parse_descriptor(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareMode {
    Pi,
    Chain,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateKind {
    Standard,
    Boundary,
    Constant,
    Point,
    Representable,
    Module,
    Chain,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document's structural laws.
    Validate { file: PathBuf },
    /// Homology dimensions of a complex or of a module's chains.
    Homology {
        file: PathBuf,
        /// Use the normalized chains instead of all chains.
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Combinatorial homotopy dimensions of a full module.
    Pi {
        file: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// The normalized chain complex of a module.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// The unnormalized chain complex of a module.
    Chain {
        file: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// The module whose normalized chains recover the given complex.
    Inflate {
        file: PathBuf,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// The standard resolution of the point in one internal degree.
    Resolve {
        #[arg(long)]
        internal_degree: usize,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Split a set map into a monotone part after a group part.
    Factorize {
        /// Comma separated values of the map on 0,1,...
        #[arg(long)]
        map: String,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value = "symmetric")]
        family: String,
    },
    /// Compose two morphisms given by a permutation then a monotone map.
    Compose {
        #[arg(long)]
        left_perm: String,
        #[arg(long)]
        left_map: String,
        #[arg(long)]
        left_target: usize,
        #[arg(long)]
        right_perm: String,
        #[arg(long)]
        right_map: String,
        #[arg(long)]
        right_target: usize,
        #[arg(long, default_value = "symmetric")]
        family: String,
    },
    /// Invariant and coinvariant dimensions of a crossed module.
    Invariants { file: PathBuf },
    /// Decide whether a map document is an equivalence.
    Compare {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        mode: CompareMode,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Write a named or seeded example document.
    Generate {
        #[arg(long, value_enum)]
        kind: GenerateKind,
        /// Width parameter for the standard and boundary kinds.
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value = "cyclic")]
        family: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Run the built-in structural diagnostics.
    Selfcheck {
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
    },
    /// Report on the two readings of the splitting projection.
    Report {
        #[arg(long, default_value_t = 6)]
        split_level: usize,
        #[arg(long, default_value_t = 4)]
        pair_level: usize,
        #[arg(long, default_value = "q", value_parser = parse_field)]
        field: Field,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Document(format!("could not read '{s}' as a list of numbers")))
        })
        .collect()
}

fn emit_text(text: &str, json_out: &Option<PathBuf>) -> Result<()> {
    match json_out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Document(format!("{}: {e}", path.display()))),
    }
}

fn emit_document(doc: &Document, json_out: &Option<PathBuf>) -> Result<()> {
    emit_text(&doc.to_string_pretty(), json_out)
}

fn emit_value(value: serde_json::Value, json_out: &Option<PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    emit_text(&text, json_out)
}

fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or_else(|| Path::new("."))
        .to_path_buf()
}

fn load_module(path: &Path) -> Result<SimplicialModule> {
    match read_document(path)? {
        Document::Simplicial(doc) | Document::Semisimplicial(doc) => doc.to_module(),
        other => Err(Error::Document(format!(
            "expected a module document, found {}",
            other.kind()
        ))),
    }
}

fn dims_line(label: &str, dims: &[usize]) -> String {
    let rendered: Vec<String> = dims.iter().map(usize::to_string).collect();
    format!("{label}: {}\n", rendered.join(" "))
}

fn run_validate(file: &Path) -> Result<i32> {
    let doc = read_document(file)?;
    let kind = doc.kind();
    let outcome = match doc {
        Document::Chain(c) => c.to_complex()?.validate(),
        Document::Simplicial(s) | Document::Semisimplicial(s) => s.to_module()?.validate(),
        Document::Map(m) => m.to_map(&base_dir(file))?.validate(),
        Document::Crossed(x) => x.to_crossed()?.validate(),
    };
    match outcome {
        Ok(()) => {
            println!("valid {kind}");
            Ok(0)
        }
        Err(reason) => {
            println!("invalid {kind}: {reason}");
            Ok(1)
        }
    }
}

fn run_homology(file: &Path, normalized: bool, json_out: &Option<PathBuf>) -> Result<i32> {
    let complex = match read_document(file)? {
        Document::Chain(doc) => doc.to_complex()?,
        Document::Simplicial(doc) | Document::Semisimplicial(doc) => {
            let module = doc.to_module()?;
            if normalized {
                moore(&module)?
            } else {
                module.chain()
            }
        }
        other => {
            return Err(Error::Document(format!(
                "homology expects a chain or module document, found {}",
                other.kind()
            )))
        }
    };
    complex.validate()?;
    let betti = complex.betti();
    match json_out {
        None => {
            let mut out = String::new();
            for (n, b) in betti.iter().enumerate() {
                out.push_str(&format!("H_{n}: {b}\n"));
            }
            emit_text(&out, json_out)?;
        }
        Some(_) => emit_value(serde_json::json!({ "betti": betti }), json_out)?,
    }
    Ok(0)
}

fn run_pi(file: &Path, json_out: &Option<PathBuf>) -> Result<i32> {
    let module = load_module(file)?;
    let pi = module.pi_dims()?;
    match json_out {
        None => {
            let mut out = String::new();
            for (n, d) in pi.iter().enumerate() {
                out.push_str(&format!("pi_{n}: {d}\n"));
            }
            emit_text(&out, json_out)?;
        }
        Some(_) => emit_value(serde_json::json!({ "pi": pi }), json_out)?,
    }
    Ok(0)
}

fn run_factorize(map: &str, target: usize, family: &str) -> Result<i32> {
    let values = parse_list(map)?;
    let u = SetMap::new(target, values)?;
    let fam = lookup(family)?;
    match fam.factorize(&u) {
        Ok((mono, perm)) => {
            println!("mono {mono}, perm {perm}");
            Ok(0)
        }
        Err(Error::ClosureViolation { family, level }) => {
            println!("no factorization in the {family} family at level {level}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn morphism_from_parts(perm: &str, map: &str, target: usize) -> Result<CrossedMorphism> {
    let label = Permutation::new(parse_list(perm)?)?;
    let mono = deltak::delta::MonotoneMap::new(target, parse_list(map)?)?;
    CrossedMorphism::new(label, mono)
}

#[allow(clippy::too_many_arguments)]
fn run_compose(
    left_perm: &str,
    left_map: &str,
    left_target: usize,
    right_perm: &str,
    right_map: &str,
    right_target: usize,
    family: &str,
) -> Result<i32> {
    let left = morphism_from_parts(left_perm, left_map, left_target)?;
    let right = morphism_from_parts(right_perm, right_map, right_target)?;
    let fam = lookup(family)?;
    match crossed_compose(&left, &right, fam.as_ref()) {
        Ok(composite) => {
            println!("{composite}");
            Ok(0)
        }
        Err(Error::ClosureViolation { family, level }) => {
            println!("no factorization in the {family} family at level {level}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn run_invariants(file: &Path) -> Result<i32> {
    let crossed = match read_document(file)? {
        Document::Crossed(doc) => doc.to_crossed()?,
        other => {
            return Err(Error::Document(format!(
                "invariants expects a crossed document, found {}",
                other.kind()
            )))
        }
    };
    if let Err(reason) = crossed.validate() {
        println!("invalid crossed: {reason}");
        return Ok(1);
    }
    print!("{}", dims_line("invariant dims", &crossed.invariant_dims()));
    print!(
        "{}",
        dims_line("coinvariant dims", &crossed.coinvariant_dims())
    );
    match crossed.invariants() {
        Ok(_) => println!("closed: yes"),
        Err(reason) => println!("closed: no ({reason})"),
    }
    Ok(0)
}

fn run_compare(map: &Path, mode: CompareMode, json_out: &Option<PathBuf>) -> Result<i32> {
    let f = match read_document(map)? {
        Document::Map(doc) => doc.to_map(&base_dir(map))?,
        other => {
            return Err(Error::Document(format!(
                "compare expects a map document, found {}",
                other.kind()
            )))
        }
    };
    f.validate()?;
    let (label, verdict) = match mode {
        CompareMode::Pi => ("pi", f.is_pi_equivalence()?),
        CompareMode::Chain => ("chain", f.is_chain_equivalence()?),
    };
    match json_out {
        None => {
            if verdict {
                println!("equivalent ({label})");
            } else {
                println!("not equivalent ({label})");
            }
        }
        Some(_) => emit_value(
            serde_json::json!({ "mode": label, "equivalent": verdict }),
            json_out,
        )?,
    }
    Ok(if verdict { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn run_generate(
    kind: GenerateKind,
    n: usize,
    max_degree: usize,
    family: &str,
    seed: u64,
    field: Field,
    json_out: &Option<PathBuf>,
) -> Result<i32> {
    let doc = match kind {
        GenerateKind::Standard => Document::from_module(&free_standard(field, n, max_degree), None),
        GenerateKind::Boundary => {
            Document::from_module(&boundary_module(field, n, max_degree), None)
        }
        GenerateKind::Constant => Document::from_module(&constant_module(field, max_degree), None),
        GenerateKind::Point => Document::from_module(&point_module(field, max_degree), None),
        GenerateKind::Representable => {
            let crossed = representable_crossed(field, family, max_degree)?;
            Document::Crossed(CrossedDoc::from_crossed(&crossed, None))
        }
        GenerateKind::Module => Document::from_module(
            &random_full_module(field, max_degree, 2, &mut seeded(seed)),
            None,
        ),
        GenerateKind::Chain => Document::Chain(ChainDoc::from_complex(
            &random_chain_complex(field, max_degree, 5, &mut seeded(seed)),
            None,
        )),
    };
    emit_document(&doc, json_out)?;
    Ok(0)
}

fn run_selfcheck_command(field: Field) -> i32 {
    let results = run_selfcheck(field);
    let mut all_ok = true;
    for (name, ok) in &results {
        if *ok {
            println!("ok {name}");
        } else {
            println!("FAIL {name}");
            all_ok = false;
        }
    }
    if all_ok {
        println!("selfcheck passed");
        0
    } else {
        println!("selfcheck failed");
        1
    }
}

fn run_report(
    split_level: usize,
    pair_level: usize,
    field: Field,
    json_out: &Option<PathBuf>,
) -> Result<i32> {
    let reports = eta_report(field, split_level, pair_level);
    match json_out {
        None => emit_text(&render_eta_report(&reports), json_out)?,
        Some(_) => emit_value(
            serde_json::to_value(&reports).expect("reports serialize"),
            json_out,
        )?,
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Validate { file } => run_validate(&file),
        Command::Homology {
            file,
            normalized,
            json_out,
        } => run_homology(&file, normalized, &json_out),
        Command::Pi { file, json_out } => run_pi(&file, &json_out),
        Command::Normalize { file, json_out } => {
            let complex = moore(&load_module(&file)?)?;
            emit_document(&Document::Chain(ChainDoc::from_complex(&complex, None)), &json_out)?;
            Ok(0)
        }
        Command::Chain { file, json_out } => {
            let complex = load_module(&file)?.chain();
            emit_document(&Document::Chain(ChainDoc::from_complex(&complex, None)), &json_out)?;
            Ok(0)
        }
        Command::Inflate { file, json_out } => {
            let complex = match read_document(&file)? {
                Document::Chain(doc) => doc.to_complex()?,
                other => {
                    return Err(Error::Document(format!(
                        "inflate expects a chain document, found {}",
                        other.kind()
                    )))
                }
            };
            let module = inflate(&complex)?;
            emit_document(
                &Document::Simplicial(SimplicialDoc::from_module(&module, None)),
                &json_out,
            )?;
            Ok(0)
        }
        Command::Resolve {
            internal_degree,
            length,
            field,
            json_out,
        } => {
            let complex = point_resolution(field, internal_degree, length)?;
            emit_document(&Document::Chain(ChainDoc::from_complex(&complex, None)), &json_out)?;
            Ok(0)
        }
        Command::Factorize {
            map,
            target,
            family,
        } => run_factorize(&map, target, &family),
        Command::Compose {
            left_perm,
            left_map,
            left_target,
            right_perm,
            right_map,
            right_target,
            family,
        } => run_compose(
            &left_perm,
            &left_map,
            left_target,
            &right_perm,
            &right_map,
            right_target,
            &family,
        ),
        Command::Invariants { file } => run_invariants(&file),
        Command::Compare {
            map,
            mode,
            json_out,
        } => run_compare(&map, mode, &json_out),
        Command::Generate {
            kind,
            n,
            max_degree,
            family,
            seed,
            field,
            json_out,
        } => run_generate(kind, n, max_degree, &family, seed, field, &json_out),
        Command::Selfcheck { field } => Ok(run_selfcheck_command(field)),
        Command::Report {
            split_level,
            pair_level,
            field,
            json_out,
        } => run_report(split_level, pair_level, field, &json_out),
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}
