use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use braceforge::catalog::{self, CatalogError};
use braceforge::cohomology::{self, Coefficients, CohomologyError, DerivationLaw};
use braceforge::extension::{self, check_triplet, coupling_of, ext_classes, extension_from_triplet, ExtensionError};
use braceforge::io::{self, CatalogEntry, Kind, Payload, Provenance};
use braceforge::report::Report;
use braceforge::split::{self, ActionTriple, SplitError};
use braceforge::wells::{self, WellsError};
use braceforge::{group, FiniteGroup, Limits, SkewBrace};

const EXIT_ASSERTION: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INVALID: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "braceforge", version, about = "Exhaustive checks for finite skew braces and their extensions")]
struct Cli {
    /// Worker threads for parallel searches (output does not depend on it).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Maximum number of candidates a search may visit.
    #[arg(long, global = true, env = "BRACEFORGE_BUDGET")]
    budget: Option<u64>,
    /// Largest carrier size accepted by enumerations.
    #[arg(long, global = true, default_value_t = group::DEFAULT_ORDER_BOUND)]
    order_bound: usize,
    /// Report format on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LawArg {
    Standard,
    Alternative,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a file holds a group table.
    ValidateGroup { file: PathBuf },
    /// Validate any catalog file; triples and triplets need `--h` and `--i`.
    Validate {
        file: PathBuf,
        #[arg(long)]
        h: Option<PathBuf>,
        #[arg(long)]
        i: Option<PathBuf>,
    },
    /// Structural summary of a group, brace or extension.
    Info { file: PathBuf },
    /// Build the split product `H ⋉ I` of an action triple.
    Semidirect {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        triple: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List every valid action triple of `H` on `I`.
    EnumerateSplit {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: PathBuf,
    },
    /// Build an extension from a triplet.
    BuildExt {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        triplet: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify all extensions of `H` by `I` by coupling and equivalence.
    ClassifyExt {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: PathBuf,
    },
    /// Compute `H²_N(H, I)` for an action triple on an abelian trivial brace.
    Cohomology {
        #[arg(long)]
        h: PathBuf,
        #[arg(long)]
        i: PathBuf,
        #[arg(long)]
        triple: PathBuf,
        /// Use coefficients in the annihilator of `I`.
        #[arg(long)]
        ann: bool,
    },
    /// Verify the Wells exact sequence for an extension.
    WellsCheck {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LawArg::Standard)]
        law: LawArg,
    },
    /// Rebuild a worked example (1 to 5).
    Example {
        n: usize,
        /// Example parameters, e.g. `n p` for example 2.
        params: Vec<usize>,
        /// Save the first product brace.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quick checks on the built-in fixtures.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID);
        }
    }
    let mut limits = Limits { order_bound: cli.order_bound, ..Limits::default() };
    if let Some(b) = cli.budget {
        limits.budget = b;
    }
    match run(&cli.command, &limits) {
        Ok(report) => {
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(EXIT_INVALID);
                }
            }
            match cli.format {
                Format::Text => print!("{}", report.render_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ASSERTION)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let budget = e.chain().any(|c| {
        c.downcast_ref::<ExtensionError>().is_some_and(|x| matches!(x, ExtensionError::SearchBudgetExceeded { .. }))
            || c.downcast_ref::<CohomologyError>().is_some_and(CohomologyError::is_budget)
            || c.downcast_ref::<WellsError>().is_some_and(WellsError::is_budget)
            || c.downcast_ref::<SplitError>()
                .is_some_and(|x| matches!(x, SplitError::Extension(ExtensionError::SearchBudgetExceeded { .. })))
    });
    if budget {
        EXIT_BUDGET
    } else {
        EXIT_INVALID
    }
}

fn load(path: &Path, kind: Kind) -> Result<CatalogEntry> {
    let entry = io::load_as(path, kind)?;
    for w in &entry.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(entry)
}

fn load_brace(path: &Path) -> Result<SkewBrace> {
    match load(path, Kind::Brace)?.payload {
        Payload::Brace(b) => Ok(b),
        _ => unreachable!("kind checked"),
    }
}

fn load_triple(path: &Path) -> Result<ActionTriple> {
    match load(path, Kind::Triple)?.payload {
        Payload::Triple(t) => Ok(t),
        _ => unreachable!("kind checked"),
    }
}

fn load_extension(path: &Path) -> Result<extension::Extension> {
    match load(path, Kind::Extension)?.payload {
        Payload::Extension(e) => Ok(e),
        _ => unreachable!("kind checked"),
    }
}

fn save(output: &Option<PathBuf>, name: &str, payload: Payload, report: &mut Report) -> Result<()> {
    if let Some(path) = output {
        io::save(&CatalogEntry::new(name, payload, Provenance::Derived), path)?;
        report.set("output", json!(path.display().to_string()));
    }
    Ok(())
}

fn group_report(command: &str, g: &FiniteGroup) -> Report {
    let mut r = Report::new(command);
    r.check("group axioms", true, format!("order {}", g.order()));
    r.set("order", json!(g.order()));
    r.set("name", json!(group::identify(g)));
    r.set("abelian", json!(g.is_abelian()));
    r
}

fn brace_checks(r: &mut Report, b: &SkewBrace) {
    r.check("brace axiom a∘(b+c) = a∘b − a + a∘c", true, format!("order {}", b.order()));
    r.check("lambda is a homomorphism (E,∘) -> Aut(E,+)", b.lambda_is_hom(), "");
    r.check("lambda identities", b.identities_hold(), "");
}

fn run(command: &Command, limits: &Limits) -> Result<Report> {
    match command {
        Command::ValidateGroup { file } => match load(file, Kind::Group)?.payload {
            Payload::Group(g) => Ok(group_report("validate-group", &g)),
            _ => unreachable!("kind checked"),
        },
        Command::Validate { file, h, i } => validate(file, h.as_deref(), i.as_deref()),
        Command::Info { file } => info(file, limits),
        Command::Semidirect { h, i, triple, output } => {
            let (h, i, t) = (load_brace(h)?, load_brace(i)?, load_triple(triple)?);
            let e = split::semidirect_product(&h, &i, &t)?;
            let mut r = Report::new("semidirect");
            brace_checks(&mut r, &e);
            r.set("product", catalog::describe_brace(&e));
            save(output, "semidirect product", Payload::Brace(e), &mut r)?;
            Ok(r)
        }
        Command::EnumerateSplit { h, i } => {
            let (h, i) = (load_brace(h)?, load_brace(i)?);
            let triples = split::enumerate_split_triples(&h, &i, limits.order_bound)?;
            let mut r = Report::new("enumerate-split");
            let valid = triples.iter().all(|t| split::validate_split_triple(&h, &i, t).is_ok());
            r.check("every listed triple validates", valid, format!("{} triples", triples.len()));
            r.set("count", json!(triples.len()));
            r.set("triples", json!(triples.iter().map(io::triple_value).collect::<Vec<_>>()));
            Ok(r)
        }
        Command::BuildExt { h, i, triplet, output } => {
            let (h, i) = (load_brace(h)?, load_brace(i)?);
            let t = match load(triplet, Kind::Triplet)?.payload {
                Payload::Triplet(t) => t,
                _ => unreachable!("kind checked"),
            };
            let ext = extension_from_triplet(&h, &i, &t)?;
            let back = extension::triplet(&ext, &ext.canonical_section());
            let mut r = Report::new("build-ext");
            r.check("canonical section recovers the triplet", back == t, "");
            r.set("e", catalog::describe_brace(ext.e()));
            save(output, "extension", Payload::Extension(ext), &mut r)?;
            Ok(r)
        }
        Command::ClassifyExt { h, i } => classify(&load_brace(h)?, &load_brace(i)?, limits),
        Command::Cohomology { h, i, triple, ann } => {
            let (h, i, t) = (load_brace(h)?, load_brace(i)?, load_triple(triple)?);
            let coeffs = if *ann { Coefficients::annihilator(&i, &t)? } else { Coefficients::new(&i, &t)? };
            let g = cohomology::h2n(&h, &coeffs, limits)?;
            let mut r = Report::new("cohomology");
            r.check("B2_N is contained in Z2_N", true, format!("|B2| = {}", g.b2.len()));
            r.check("H2_N is an abelian group", g.check_axioms(), format!("order {}", g.order()));
            r.set("coefficients_order", json!(coeffs.order()));
            r.set("z2_order", json!(g.z2.len()));
            r.set("b2_order", json!(g.b2.len()));
            r.set("h2_order", json!(g.order()));
            r.set("representatives", serde_json::to_value(&g.representatives)?);
            Ok(r)
        }
        Command::WellsCheck { file, law } => {
            let ext = load_extension(file)?;
            let law = match law {
                LawArg::Standard => DerivationLaw::Standard,
                LawArg::Alternative => DerivationLaw::Alternative,
            };
            Ok(wells::verify_exact_sequence(&ext, law, limits)?.to_report())
        }
        Command::Example { n, params, output } => {
            let run = catalog::example(*n, params).map_err(|e| match e {
                CatalogError::ParamOutOfRange { .. } | CatalogError::UnknownExample(_) => anyhow!(e),
                other => anyhow!(other).context("example construction failed"),
            })?;
            let mut r = run.report;
            if let Some(p) = run.products.first() {
                let payload = Payload::Brace(p.clone());
                if let Some(path) = output {
                    let prov = Provenance::Example(*n as u8);
                    io::save(&CatalogEntry::new(r.command.clone(), payload, prov), path)?;
                    r.set("output", json!(path.display().to_string()));
                }
            }
            Ok(r)
        }
        Command::Selftest => selftest(limits),
    }
}

fn validate(file: &Path, h: Option<&Path>, i: Option<&Path>) -> Result<Report> {
    let entry = io::load(file)?;
    for w in &entry.warnings {
        eprintln!("warning: {}: {w}", file.display());
    }
    let mut r = Report::new("validate");
    r.set("kind", json!(entry.kind()));
    let pair = || -> Result<(SkewBrace, SkewBrace)> {
        match (h, i) {
            (Some(h), Some(i)) => Ok((load_brace(h)?, load_brace(i)?)),
            _ => bail!("validating a {} needs --h and --i", entry.kind()),
        }
    };
    match &entry.payload {
        Payload::Group(g) => r.check("group axioms", true, format!("order {}", g.order())),
        Payload::Brace(b) => brace_checks(&mut r, b),
        Payload::Triple(t) => {
            let (h, i) = pair()?;
            let res = split::validate_split_triple(&h, &i, t);
            match res {
                Ok(()) => r.check("split triple laws", true, ""),
                Err(e @ (SplitError::LengthMismatch { .. } | SplitError::NotAutomorphism { .. })) => {
                    return Err(anyhow!(e))
                }
                Err(e) => r.check("split triple laws", false, e.to_string()),
            }
        }
        Payload::Triplet(t) => {
            let (h, i) = pair()?;
            match check_triplet(&h, &i, t) {
                Ok(()) => r.check("triplet identities and cocycle laws", true, ""),
                Err(e) => r.check("triplet identities and cocycle laws", false, e.to_string()),
            }
        }
        Payload::Extension(e) => {
            r.check("exact sequence of brace homomorphisms", true, format!("|E| = {}", e.e().order()));
            r.check("I is an ideal of E", true, "");
        }
    }
    Ok(r)
}

fn info(file: &Path, limits: &Limits) -> Result<Report> {
    let entry = io::load(file)?;
    let mut r = Report::new("info");
    r.set("name", json!(entry.name));
    r.set("kind", json!(entry.kind()));
    match &entry.payload {
        Payload::Group(g) => {
            r.set("order", json!(g.order()));
            r.set("name", json!(group::identify(g)));
            r.set("abelian", json!(g.is_abelian()));
            r.set("automorphisms", json!(g.automorphism_group(limits.order_bound)?.order()));
        }
        Payload::Brace(b) => {
            r.set("brace", catalog::describe_brace(b));
            r.set("automorphisms", json!(b.automorphisms(limits.order_bound)?.order()));
        }
        Payload::Triple(t) => {
            r.set("h_order", json!(t.h_order()));
            r.set("i_order", json!(t.nu.first().map(|p| p.degree()).unwrap_or(0)));
        }
        Payload::Triplet(t) => {
            r.set("h_order", json!(t.chi.h_order()));
            r.set("beta_zero", json!(t.beta.is_zero()));
            r.set("tau_zero", json!(t.tau.is_zero()));
        }
        Payload::Extension(e) => {
            r.set("e", catalog::describe_brace(e.e()));
            r.set("h", catalog::describe_brace(e.h()));
            r.set("i", catalog::describe_brace(e.i()));
            r.set("splits", json!(split::find_split_section(e).is_ok()));
            let t = extension::triplet(e, &e.canonical_section());
            r.set("canonical_triplet", io::triplet_value(&t));
        }
    }
    Ok(r)
}

fn classify(h: &SkewBrace, i: &SkewBrace, limits: &Limits) -> Result<Report> {
    let classes = ext_classes(h, i, limits)?;
    let mut r = Report::new("classify-ext");
    r.set("extensions", json!(classes.extensions.len()));
    r.set("classes", json!(classes.class_count()));
    r.set("couplings", json!(classes.buckets.len()));
    r.check("couplings partition the extensions", classes.equal_without_witness == 0, "");
    let abelian_trivial = i.is_trivial() && i.additive().is_abelian();
    for (k, bucket) in classes.buckets.iter().enumerate() {
        let prefix = format!("coupling {k}");
        let mut sub = Report::new(&prefix);
        sub.set("classes", json!(bucket.classes.len()));
        sub.set("action", io::triple_value(&bucket.coupling.rep));
        r.merge(&prefix, sub);
        if abelian_trivial {
            r.merge(&prefix, cohomology::ext_bijection_check(h, i, &bucket.coupling.rep, limits)?);
        }
        r.merge(&prefix, cohomology::verify_free_transitive(h, i, &bucket.coupling, limits)?);
    }
    Ok(r)
}

fn selftest(limits: &Limits) -> Result<Report> {
    let mut r = Report::new("selftest");
    for (name, b) in catalog::axiom_fixtures()? {
        if !(b.lambda_is_hom() && b.identities_hold()) {
            r.check(format!("brace identities: {name}"), false, "");
        }
    }
    r.check("brace identities on every catalog brace", r.checks.is_empty(), "");
    let ex3 = catalog::example3()?;
    r.merge("example 3", ex3.report);
    for (name, ext) in catalog::extension_fixtures() {
        let t = extension::triplet(&ext, &ext.canonical_section());
        let rebuilt = extension_from_triplet(ext.h(), ext.i(), &t)?;
        let same = extension::triplet(&rebuilt, &rebuilt.canonical_section()) == t;
        r.check(format!("{name}: build after extract is the identity"), same, "");
        let alpha = coupling_of(&ext, limits.order_bound)?;
        let free = cohomology::verify_free_transitive(ext.h(), ext.i(), &alpha, limits)?;
        r.check(format!("{name}: free action of H2_N(H, Ann I)"), free.passed, "");
    }
    let two = catalog::trivial_brace(2);
    let bij = cohomology::ext_bijection_check(&two, &two, &ActionTriple::identity(2, 2), limits)?;
    r.merge("Z2 by Z2", bij);
    for ext in [catalog::z2_by_z3_split(), catalog::z4_over_z2()] {
        let w = wells::verify_exact_sequence(&ext, DerivationLaw::Standard, limits)?;
        r.check(
            format!("Wells sequence for |E| = {}", ext.e().order()),
            w.all_hold(),
            format!("|Autb_I| = {}, |C| = {}, |H2| = {}", w.autb_i_order, w.stabilizer_order, w.h2_order),
        );
    }
    Ok(r)
}
