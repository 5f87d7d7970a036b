//! `supalg`: a command-line workbench for the calculus of relations,
//! ideals, and filters over finite algebras.
//!
//! Exit codes: 0 = success, 1 = a mathematical check failed or a
//! counterexample was found, 2 = input error (bad JSON, unknown fixture,
//! out-of-cap sizes).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use supalg::algebra::{derive_day_from_maltsev, verify_day, DayTermSequence, FiniteAlgebra, Verdict};
use supalg::congruence::{all_congruences, congruence_lattice};
use supalg::error::Error;
use supalg::filter::{unif_permutes, weber_bracket, RelFilter};
use supalg::ideal::{se_permutes, SuperEquivalence};
use supalg::json::{certificate_json, AlgebraJson, IdealJson, LatticeJson, RelationJson, SCHEMA};
use supalg::lattice::check_modular;
use supalg::relation::Relation;
use supalg::report::{render_table_markdown, table_report, OutputFormat, RunConfig};
use supalg::shifting::{modularity_chain, shifting_witness, supeqv_lattice};
use supalg::space::{exponential_se, SeSpace};
use supalg::suite::{render_suite_text, run_suite};
use supalg::superunif::supunif_lattice;
use supalg::term::Term;

#[derive(Parser)]
#[command(name = "supalg", version, about = "relation/ideal/filter calculus workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// Bundled fixture name (z2..z8, z12, z4ring, z6ring, lattice2,
    /// bare2..bare5, twogroups4) or a path to an algebra JSON file.
    #[arg(long)]
    algebra: Option<String>,
    /// Weber bracket depth.
    #[arg(long)]
    depth: Option<usize>,
    /// Master seed for randomized property runs.
    #[arg(long)]
    seed: Option<u64>,
    /// Carrier-size cap for lattice enumerations.
    #[arg(long)]
    max_carrier: Option<usize>,
    /// Output format.
    #[arg(long, value_parser = ["json", "markdown"])]
    format: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the five Day identities for a term sequence on an algebra.
    VerifyDay {
        #[command(flatten)]
        common: CommonOpts,
        /// Derive the sequence from this ternary term (s-expression).
        #[arg(long)]
        maltsev: Option<String>,
        /// Explicit quaternary terms m0..md (repeatable, in order).
        #[arg(long = "term")]
        terms: Vec<String>,
    },
    /// The four-row lattice/modularity report for an algebra.
    TableReport {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full invariant suite.
    Suite {
        #[command(flatten)]
        common: CommonOpts,
        /// Trial count for randomized properties.
        #[arg(long)]
        trials: Option<usize>,
    },
    /// The congruence lattice of an algebra.
    ConLattice {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The lattice of compatible superequivalences.
    SupeqvLattice {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// The lattice of compatible superuniformities (principal encoding).
    SupunifLattice {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Modularity certificates plus the proof-chain trace over all
    /// admissible triples of compatible superequivalences.
    Modularity {
        #[command(flatten)]
        common: CommonOpts,
        /// Derive Day terms from this Mal'tsev term instead of the
        /// fixture's default.
        #[arg(long)]
        maltsev: Option<String>,
    },
    /// Shifting-lemma witness for given relations R, F, X (JSON files).
    ShiftingWitness {
        #[command(flatten)]
        common: CommonOpts,
        #[arg(long)]
        maltsev: Option<String>,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        x: PathBuf,
    },
    /// Truncated Weber bracket of a relation sequence (JSON array file).
    Weber {
        #[command(flatten)]
        common: CommonOpts,
        /// JSON file holding an array of relations.
        #[arg(long)]
        relations: PathBuf,
    },
    /// Permutability report over all pairs of compatible
    /// superequivalences and congruential uniformities.
    Permutes {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Exponential-object probe with the adjunction verdict.
    Exponential {
        #[command(flatten)]
        common: CommonOpts,
        /// Carrier size for the b and c spaces.
        #[arg(long, default_value_t = 2)]
        size: usize,
        /// Use discrete instead of full structures.
        #[arg(long)]
        discrete: bool,
        #[arg(long, default_value_t = 1 << 16)]
        size_cap: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn load_algebra(common: &CommonOpts) -> Result<FiniteAlgebra, Error> {
    let Some(spec) = &common.algebra else {
        return Err(Error::Parse("missing --algebra".into()));
    };
    if let Some(alg) = supalg::fixtures::by_name(spec) {
        return Ok(alg);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::Parse(format!("cannot read {spec}: {e}")))?;
    supalg::json::parse_algebra(&text)
}

fn load_relation(path: &PathBuf) -> Result<Relation, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    supalg::json::parse_relation(&text)
}

fn config_from(common: &CommonOpts) -> Result<RunConfig, Error> {
    let mut config = RunConfig::default();
    if let Some(d) = common.depth {
        config.weber_depth = d;
    }
    if let Some(s) = common.seed {
        config.seed = s;
    }
    if let Some(m) = common.max_carrier {
        config.max_carrier = m;
    }
    if let Some(f) = &common.format {
        config.format = match f.as_str() {
            "markdown" => OutputFormat::Markdown,
            _ => OutputFormat::Json,
        };
    }
    config.validate()?;
    Ok(config)
}

fn emit(common: &CommonOpts, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(common: &CommonOpts, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Parse(format!("serialization: {e}")))?;
    emit(common, &text)
}

fn day_sequence(
    alg: &FiniteAlgebra,
    maltsev: &Option<String>,
    terms: &[String],
) -> Result<DayTermSequence, Error> {
    if let Some(p) = maltsev {
        return derive_day_from_maltsev(&Term::parse(p)?);
    }
    if !terms.is_empty() {
        let parsed: Result<Vec<Term>, Error> = terms.iter().map(|t| Term::parse(t)).collect();
        return DayTermSequence::new(parsed?);
    }
    supalg::fixtures::day_terms_for(alg)
        .ok_or_else(|| Error::Parse("no Day terms given and none bundled for this algebra".into()))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::VerifyDay {
            common,
            maltsev,
            terms,
        } => {
            let alg = load_algebra(&common)?;
            let m = day_sequence(&alg, &maltsev, &terms)?;
            let verdict = verify_day(&alg, &m)?;
            let report = match &verdict {
                Verdict::Holds => json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "d": m.d(),
                    "identities": ["D1", "D2", "D3", "D4", "D5"],
                    "holds": true,
                }),
                Verdict::Fails(w) => json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "d": m.d(),
                    "holds": false,
                    "violated": w.identity,
                    "term_index": w.term_index,
                    "assignment": w.assignment,
                    "lhs": w.lhs,
                    "rhs": w.rhs,
                }),
            };
            emit_json(&common, &report)?;
            Ok(if verdict.holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::TableReport { common } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let report = table_report(&alg, &config)?;
            match config.format {
                OutputFormat::Markdown => emit(&common, &render_table_markdown(&report))?,
                OutputFormat::Json => emit_json(&common, &report)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Suite { common, trials } => {
            let mut config = config_from(&common)?;
            if let Some(t) = trials {
                config.trials = t;
            }
            let report = run_suite(&config)?;
            match config.format {
                OutputFormat::Markdown => emit(&common, &render_suite_text(&report))?,
                OutputFormat::Json => emit_json(&common, &report)?,
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ConLattice { common } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let lat = congruence_lattice(&alg, config.max_carrier)?;
            let cert = check_modular(&lat);
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "lattice": LatticeJson::from(&lat),
                    "modular": certificate_json(&cert, &lat),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SupeqvLattice { common } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let lat = supeqv_lattice(&alg, config.max_carrier)?;
            let cert = check_modular(&lat);
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "lattice": LatticeJson::from(&lat),
                    "modular": certificate_json(&cert, &lat),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SupunifLattice { common } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let lat = supunif_lattice(&alg, config.max_carrier)?;
            let cert = check_modular(&lat);
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "encoding": "principal-filter",
                    "lattice": LatticeJson::from(&lat),
                    "modular": certificate_json(&cert, &lat),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Modularity { common, maltsev } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let m = day_sequence(&alg, &maltsev, &[])?;
            let congs = all_congruences(&alg, config.max_carrier)?;
            let ses: Result<Vec<SuperEquivalence>, Error> = congs
                .into_iter()
                .map(SuperEquivalence::principal)
                .collect();
            let ses = ses?;
            let mut traces = Vec::new();
            let mut all_hold = true;
            for i in &ses {
                for ip in &ses {
                    for is in &ses {
                        if !i.le(is)? {
                            continue;
                        }
                        let chain = modularity_chain(&alg, &m, i, ip, is)?;
                        all_hold &= chain.law_holds;
                        traces.push(json!({
                            "i": IdealJson::from(&i.ideal),
                            "i_prime": IdealJson::from(&ip.ideal),
                            "i_second": IdealJson::from(&is.ideal),
                            "stabilization_index": chain.stabilization_index,
                            "law_holds": chain.law_holds,
                        }));
                    }
                }
            }
            let lat = supeqv_lattice(&alg, config.max_carrier)?;
            let cert = check_modular(&lat);
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "chain_instances": traces.len(),
                    "all_hold": all_hold,
                    "lattice_modular": certificate_json(&cert, &lat),
                    "traces": traces,
                }),
            )?;
            Ok(if all_hold && cert.modular {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::ShiftingWitness {
            common,
            maltsev,
            r,
            f,
            x,
        } => {
            let alg = load_algebra(&common)?;
            let m = day_sequence(&alg, &maltsev, &[])?;
            let (r, f, x) = (load_relation(&r)?, load_relation(&f)?, load_relation(&x)?);
            let w = shifting_witness(&alg, &m, &r, &f, &x)?;
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "w": RelationJson::from(&w.w),
                    "y": RelationJson::from(&w.y),
                    "holds": w.holds,
                }),
            )?;
            Ok(if w.holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Weber { common, relations } => {
            let config = config_from(&common)?;
            let text = std::fs::read_to_string(&relations)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", relations.display())))?;
            let parsed: Vec<RelationJson> = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("relation array json: {e}")))?;
            let rels: Result<Vec<Relation>, Error> =
                parsed.iter().map(Relation::try_from).collect();
            let rels = rels?;
            let bracket = weber_bracket(&rels, config.weber_depth)?;
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "depth": config.weber_depth,
                    "bracket": RelationJson::from(&bracket),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Permutes { common } => {
            let alg = load_algebra(&common)?;
            let config = config_from(&common)?;
            let congs = all_congruences(&alg, config.max_carrier)?;
            let mut pairs = Vec::new();
            let mut all_permute = true;
            for a in &congs {
                for b in &congs {
                    let se = se_permutes(
                        &SuperEquivalence::principal(a.clone())?,
                        &SuperEquivalence::principal(b.clone())?,
                    )?;
                    let un = unif_permutes(
                        &RelFilter::principal(a.clone()),
                        &RelFilter::principal(b.clone()),
                    )?;
                    all_permute &= se.permutes && un.permutes;
                    pairs.push(json!({
                        "a": RelationJson::from(a),
                        "b": RelationJson::from(b),
                        "superequivalences_permute": se.permutes,
                        "se_join_equals_composition": se.join_equals_composition,
                        "uniformities_permute": un.permutes,
                        "unif_join_equals_composition": un.join_equals_composition,
                        "iff_holds": se.iff_holds() && un.iff_holds(),
                    }));
                }
            }
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "algebra": alg.name,
                    "all_pairs_permute": all_permute,
                    "pairs": pairs,
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Exponential {
            common,
            size,
            discrete,
            size_cap,
        } => {
            let space = |n| {
                if discrete {
                    SeSpace::discrete(n)
                } else {
                    SeSpace::full(n)
                }
            };
            let report = exponential_se(&space(size), &space(size), size_cap)?;
            emit_json(
                &common,
                &json!({
                    "schema": SCHEMA,
                    "exponential_carrier": report.exponential.size,
                    "structure": IdealJson::from(&report.exponential.se.ideal),
                    "probes": report.probes.iter().map(|p| json!({
                        "probe": p.probe,
                        "superequivalent_uncurried": p.superequivalent_uncurried,
                        "superequivalent_curried": p.superequivalent_curried,
                        "bijection": p.bijection,
                    })).collect::<Vec<_>>(),
                    "evaluation_superequivalent": report.evaluation_superequivalent,
                    "adjunction_holds": report.adjunction_holds(),
                }),
            )?;
            Ok(if report.adjunction_holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
