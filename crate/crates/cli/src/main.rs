//! `fp`: command-line front end for word calculus in free products of
//! cyclic groups, symmetric automorphisms, kernel bases, and branched-cover
//! sphere-class computations.
//!
//! Exit codes: 0 success (decision results print `true`/`false`), 2
//! parse/format error, 3 domain error (precondition violated), 4 internal
//! failure.

use clap::{Args, Parser, Subcommand};
use fpcyc::cover::{
    obstruction_alpha0, orbit_independence, truncate_cover, unlink_model, CoverError, CoverModel,
    SphereIndex,
};
use fpcyc::props;
use fpcyc::quotient::{KernelLevel, QuotientContext, QuotientError};
use fpcyc::schreier::{KernelBasis, SchreierError};
use fpcyc::symauto::{AutError, SymAut};
use fpcyc::words::{GroupSpec, Word, WordError};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fp", version, about = "Word calculus in free products of cyclic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Number of generators
    #[arg(long)]
    k: usize,
    /// Comma-separated factor orders, 0 for infinite (default: all 0)
    #[arg(long)]
    orders: Option<String>,
}

impl SpecArgs {
    fn spec(&self) -> Result<GroupSpec, Failure> {
        match &self.orders {
            None => Ok(GroupSpec::free(self.k)),
            Some(text) => {
                let orders: Vec<u32> = text
                    .split(',')
                    .map(|t| t.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Parse(format!("bad orders list `{text}`")))?;
                if orders.len() != self.k {
                    return Err(Failure::Domain(format!(
                        "orders list has {} entries, expected k = {}",
                        orders.len(),
                        self.k
                    )));
                }
                Ok(GroupSpec::new(orders).map_err(word_failure)?)
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normalize a word
    Normalize {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        word: String,
    },
    /// Multiply two words
    Mul {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Invert a word
    Inv {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        word: String,
    },
    /// Conjugate a word: prints by·word·by^-1
    Conj {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        word: String,
        #[arg(long)]
        by: String,
    },
    /// Project a free-group word to the quotient with all orders d
    Project {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        word: String,
    },
    /// Apply an automorphism (JSON file) to a word
    Apply {
        #[arg(long)]
        aut: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Compose two automorphisms; prints the composition as JSON
    Compose {
        #[arg(long)]
        aut: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Decide inner-ness; prints true/false and a conjugator when inner
    Inner {
        #[arg(long)]
        aut: PathBuf,
    },
    /// Decide equality in the outer automorphism group
    OuterEq {
        #[arg(long)]
        aut: PathBuf,
        #[arg(long)]
        other: PathBuf,
    },
    /// Test membership in the kernel of the quotient map on automorphisms
    KernelCheck {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        aut: PathBuf,
        /// Test the outer-level kernel instead of the automorphism-level one
        #[arg(long)]
        outer: bool,
    },
    /// Enumerate kernel elements as products of partial conjugations
    KernelEnum {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        max_moves: usize,
        #[arg(long)]
        limit: usize,
        /// Deduplicate at the automorphism level instead of the outer level
        #[arg(long)]
        aut_level: bool,
    },
    /// Print the free basis of the degree-map kernel
    RsBasis {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
    },
    /// Rewrite a degree-zero word in the kernel basis
    RsRewrite {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        word: String,
    },
    /// Restrict an automorphism to the kernel; prints basis images
    RsRestrict {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        aut: PathBuf,
    },
    /// Branched-cover model commands
    #[command(subcommand)]
    Cover(CoverCommand),
    /// Run the randomized property suites
    Selftest {
        #[arg(long, default_value_t = props::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        cases: usize,
    },
}

#[derive(Subcommand)]
enum CoverCommand {
    /// Build the cyclic branched-cover model of the k-component unlink
    BuildUnlink {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        p: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rank of sphere classes in the truncated cover
    Rank {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Semicolon-separated sphere indices `side,g,<deck word>`
        #[arg(long)]
        spheres: String,
    },
    /// Check that deleting a sphere separates the truncated cover
    Separate {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Sphere index `side,g,<deck word>`
        #[arg(long)]
        sphere: String,
    },
    /// Rank of a deck-orbit sample of the obstruction class
    Orbit {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        radius: usize,
        /// Semicolon-separated deck words, e.g. "id; t; t^2"
        #[arg(long)]
        sample: String,
    },
}

enum Failure {
    Parse(String),
    Domain(String),
    Internal(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 3,
            Failure::Internal(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Domain(m) | Failure::Internal(m) => m,
        }
    }
}

fn word_failure(e: WordError) -> Failure {
    match e {
        WordError::BadToken(_) => Failure::Parse(e.to_string()),
        _ => Failure::Domain(e.to_string()),
    }
}

fn aut_failure(e: AutError) -> Failure {
    match e {
        AutError::BadData(_) => Failure::Parse(e.to_string()),
        AutError::InversionFailed => Failure::Internal(e.to_string()),
        AutError::Word(w) => word_failure(w),
        _ => Failure::Domain(e.to_string()),
    }
}

fn quotient_failure(e: QuotientError) -> Failure {
    match e {
        QuotientError::Aut(a) => aut_failure(a),
        QuotientError::Word(w) => word_failure(w),
        _ => Failure::Domain(e.to_string()),
    }
}

fn schreier_failure(e: SchreierError) -> Failure {
    match e {
        SchreierError::BadSymbol(_) => Failure::Parse(e.to_string()),
        SchreierError::Word(w) => word_failure(w),
        _ => Failure::Domain(e.to_string()),
    }
}

fn cover_failure(e: CoverError) -> Failure {
    match e {
        CoverError::BadModel(ref m) if m.starts_with("model json:") => {
            Failure::Parse(e.to_string())
        }
        CoverError::Word(w) => word_failure(w),
        _ => Failure::Domain(e.to_string()),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_aut(path: &Path) -> Result<SymAut, Failure> {
    SymAut::from_json_str(&read_file(path)?).map_err(aut_failure)
}

fn load_model(path: &Path) -> Result<CoverModel, Failure> {
    CoverModel::from_json_str(&read_file(path)?).map_err(cover_failure)
}

/// Deck words: whitespace-separated tokens over the deck-group factors
/// (`x<n>`/`z<n>`), or over the side-2 subgroup generators (`t`, `t<n>`),
/// with optional `^<e>`. `id` or the empty string is the identity.
fn parse_deck_word(model: &CoverModel, text: &str) -> Result<Word, Failure> {
    let deck = model.deck_group();
    let text = text.trim();
    if text.is_empty() || text == "id" {
        return Ok(Word::identity());
    }
    let lambda2 = model.lambda_subgroup(2).map_err(cover_failure)?;
    let mut raw: Vec<(usize, i64)> = Vec::new();
    for token in text.split_whitespace() {
        let bad = || Failure::Parse(format!("bad deck token `{token}`"));
        let (head, exponent) = match token.split_once('^') {
            Some((h, e)) => (h, e.parse::<i64>().map_err(|_| bad())?),
            None => (token, 1),
        };
        if exponent == 0 {
            return Err(bad());
        }
        let index = if let Some(rest) = head.strip_prefix('t') {
            let n: usize = if rest.is_empty() {
                1
            } else {
                rest.parse().map_err(|_| bad())?
            };
            *lambda2
                .factor_indices
                .get(n.checked_sub(1).ok_or_else(bad)?)
                .ok_or_else(|| {
                    Failure::Domain(format!(
                        "the side-2 subgroup has {} generators, token `{token}` is out of range",
                        lambda2.factor_indices.len()
                    ))
                })?
        } else {
            let rest = head.strip_prefix(['x', 'z']).ok_or_else(bad)?;
            let n: usize = rest.parse().map_err(|_| bad())?;
            n.checked_sub(1).ok_or_else(bad)?
        };
        raw.push((index, exponent));
    }
    deck.spec
        .normalize(raw)
        .map_err(|e| Failure::Domain(e.to_string()))
}

/// Sphere index syntax: `side,g,<deck word>`.
fn parse_sphere(model: &CoverModel, text: &str) -> Result<SphereIndex, Failure> {
    let parts: Vec<&str> = text.splitn(3, ',').collect();
    if parts.len() != 3 {
        return Err(Failure::Parse(format!(
            "sphere index `{text}` must be `side,g,<deck word>`"
        )));
    }
    let side: u8 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("bad sphere side `{}`", parts[0])))?;
    let g: u64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Failure::Parse(format!("bad sphere element `{}`", parts[1])))?;
    Ok(SphereIndex::new(side, g, parse_deck_word(model, parts[2])?))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Normalize { spec, word } => {
            let spec = spec.spec()?;
            let w = spec.parse_word(&word).map_err(word_failure)?;
            println!("{}", spec.format_word(&w));
        }
        Command::Mul { spec, a, b } => {
            let spec = spec.spec()?;
            let a = spec.parse_word(&a).map_err(word_failure)?;
            let b = spec.parse_word(&b).map_err(word_failure)?;
            let product = spec.multiply(&a, &b).map_err(word_failure)?;
            println!("{}", spec.format_word(&product));
        }
        Command::Inv { spec, word } => {
            let spec = spec.spec()?;
            let w = spec.parse_word(&word).map_err(word_failure)?;
            let inverse = spec.invert(&w).map_err(word_failure)?;
            println!("{}", spec.format_word(&inverse));
        }
        Command::Conj { spec, word, by } => {
            let spec = spec.spec()?;
            let w = spec.parse_word(&word).map_err(word_failure)?;
            let c = spec.parse_word(&by).map_err(word_failure)?;
            let conjugated = spec.conjugate(&w, &c).map_err(word_failure)?;
            println!("{}", spec.format_word(&conjugated));
        }
        Command::Project { k, d, word } => {
            let source = GroupSpec::free(k);
            let target = GroupSpec::homogeneous(k, d).map_err(word_failure)?;
            let w = source.parse_word(&word).map_err(word_failure)?;
            let image = source.project(&w, d).map_err(word_failure)?;
            println!("{}", target.format_word(&image));
        }
        Command::Apply { aut, word } => {
            let aut = load_aut(&aut)?;
            let w = aut.spec().parse_word(&word).map_err(word_failure)?;
            let image = aut.apply(&w).map_err(aut_failure)?;
            println!("{}", aut.spec().format_word(&image));
        }
        Command::Compose { aut, other } => {
            let left = load_aut(&aut)?;
            let right = load_aut(&other)?;
            let composed = left.compose(&right).map_err(aut_failure)?;
            println!("{}", composed.to_json_string());
        }
        Command::Inner { aut } => {
            let aut = load_aut(&aut)?;
            match aut.is_inner() {
                Some(witness) => {
                    println!("true");
                    println!("conjugator: {}", aut.spec().format_word(&witness));
                }
                None => println!("false"),
            }
        }
        Command::OuterEq { aut, other } => {
            let left = load_aut(&aut)?;
            let right = load_aut(&other)?;
            println!("{}", left.outer_equal(&right).map_err(aut_failure)?);
        }
        Command::KernelCheck { k, d, aut, outer } => {
            let ctx = QuotientContext::new(k, d).map_err(quotient_failure)?;
            let aut = load_aut(&aut)?;
            let member = if outer {
                ctx.in_ker_out(&aut)
            } else {
                ctx.in_ker_hat(&aut)
            }
            .map_err(quotient_failure)?;
            println!("{member}");
        }
        Command::KernelEnum {
            k,
            d,
            max_moves,
            limit,
            aut_level,
        } => {
            let ctx = QuotientContext::new(k, d).map_err(quotient_failure)?;
            let level = if aut_level {
                KernelLevel::Aut
            } else {
                KernelLevel::Outer
            };
            let found = ctx
                .enumerate_kernel(&ctx.partial_conjugation_alphabet(), max_moves, limit, level)
                .map_err(quotient_failure)?;
            for aut in found {
                println!("{}", aut.to_json_string());
            }
        }
        Command::RsBasis { k, d } => {
            let kb = KernelBasis::build(k, d).map_err(schreier_failure)?;
            println!("rank {}", kb.rank());
            for b in 0..kb.rank() {
                let expansion = kb
                    .expand(&kb.free_group().generator(b).map_err(word_failure)?)
                    .map_err(schreier_failure)?;
                println!(
                    "{} = {}",
                    kb.symbol_name(b),
                    kb.ambient().format_word(&expansion)
                );
            }
        }
        Command::RsRewrite { k, d, word } => {
            let kb = KernelBasis::build(k, d).map_err(schreier_failure)?;
            let w = kb.ambient().parse_word(&word).map_err(word_failure)?;
            let rewritten = kb.rewrite(&w).map_err(schreier_failure)?;
            println!("{}", kb.format_basis_word(&rewritten));
        }
        Command::RsRestrict { k, d, aut } => {
            let kb = KernelBasis::build(k, d).map_err(schreier_failure)?;
            let aut = load_aut(&aut)?;
            let images = kb.restrict_aut(&aut).map_err(schreier_failure)?;
            for (b, image) in images.iter().enumerate() {
                println!("{} -> {}", kb.symbol_name(b), kb.format_basis_word(image));
            }
        }
        Command::Cover(cover) => run_cover(cover)?,
        Command::Selftest { seed, cases } => {
            println!("seed {seed}");
            let results = props::run_all(seed, cases);
            let mut failed = false;
            for suite in &results {
                if suite.passed() {
                    println!("{}: ok ({} cases)", suite.name, suite.cases);
                } else {
                    failed = true;
                    println!(
                        "{}: FAILED ({} of {} cases) — {}",
                        suite.name,
                        suite.failures,
                        suite.cases,
                        suite.first_failure.as_deref().unwrap_or("?")
                    );
                }
            }
            if failed {
                return Err(Failure::Internal("selftest failed".into()));
            }
        }
    }
    Ok(())
}

fn run_cover(command: CoverCommand) -> Result<(), Failure> {
    match command {
        CoverCommand::BuildUnlink { k, d, p, output } => {
            let model = unlink_model(k, d, p).map_err(cover_failure)?;
            std::fs::write(&output, model.to_json_string())
                .map_err(|e| Failure::Internal(format!("cannot write {}: {e}", output.display())))?;
            let deck = model.deck_group();
            println!(
                "wrote {} (vertices {}, edges {}, deck rank {})",
                output.display(),
                model.graph().vertices().len(),
                model.graph().edges().len(),
                deck.rank_if_free()
                    .map_or_else(|| "-".into(), |r| r.to_string()),
            );
        }
        CoverCommand::Rank {
            model,
            radius,
            spheres,
        } => {
            let model = load_model(&model)?;
            let indices = spheres
                .split(';')
                .map(|part| parse_sphere(&model, part.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let tc = truncate_cover(&model, radius).map_err(cover_failure)?;
            let rank = tc.sphere_class_rank(&indices).map_err(cover_failure)?;
            println!("radius\tspheres\trelations\trank");
            println!("{radius}\t{}\t{}\t{rank}", indices.len(), tc.row_count());
        }
        CoverCommand::Separate {
            model,
            radius,
            sphere,
        } => {
            let model = load_model(&model)?;
            let index = parse_sphere(&model, &sphere)?;
            let tc = truncate_cover(&model, radius).map_err(cover_failure)?;
            let result = tc.separating_check(&index).map_err(cover_failure)?;
            println!("components\tboth_reach_frontier");
            println!("{}\t{}", result.components, result.both_reach_frontier);
        }
        CoverCommand::Orbit {
            model,
            radius,
            sample,
        } => {
            let model = load_model(&model)?;
            let words = sample
                .split(';')
                .map(|part| parse_deck_word(&model, part))
                .collect::<Result<Vec<_>, _>>()?;
            let report = orbit_independence(&model, &words, radius).map_err(cover_failure)?;
            // also report the bare obstruction class support for context
            let alpha0 = obstruction_alpha0(&model);
            println!("sample\tradius\trank\trank_next\tstable\tclass_support");
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}",
                report.sample_size,
                report.radius,
                report.rank_at_radius,
                report.rank_at_next,
                report.stable,
                alpha0.support_len(),
            );
        }
    }
    Ok(())
}

fn main() {
    let start = Instant::now();
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("fp: {}", failure.message());
            failure.exit_code()
        }
    };
    eprintln!("elapsed: {:.2?}", start.elapsed());
    std::process::exit(code);
}
