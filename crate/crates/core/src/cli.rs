//! The `skewhilbert` command line.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::axioms::{self, AxiomSystem};
use crate::codec::{self, format_set, parse_set};
use crate::congruence::{self, CongMode, FilterKind, Partition};
use crate::constructions;
use crate::corpus;
use crate::error::{Error, Result};
use crate::order::ConeDir;
use crate::report::{Item, Report};
use crate::search::{self, SearchSpec};
use crate::structure::FinStructure;
use crate::term::{self, IdealFamily, IdentityMode, MaltsevTerm, Term};

#[derive(Debug, Parser)]
#[command(name = "skewhilbert", version, about = "Finite order-algebra workbench")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// An algebra file, or `corpus:NAME` for a built-in example.
#[derive(Debug, Args)]
pub struct Input {
    pub file: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one axiom system and report the first violation.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        system: AxiomSystem,
        /// List every violated clause instance instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Check every axiom system.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Up and down sets, or the cones of a set of elements.
    Cones {
        #[command(flatten)]
        input: Input,
        /// Elements whose common upper and lower cones are printed.
        #[arg(long)]
        of: Option<String>,
        /// Emit the Hasse diagram in DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate congruences, or check one partition.
    Congruences {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        mode: Option<CongMode>,
        /// Partition such as `{a,b|c|d,1}` to check instead of enumerating.
        #[arg(long)]
        check: Option<String>,
    },
    /// Enumerate filters, or check one set.
    Filters {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        kind: Option<FilterKind>,
        #[arg(long)]
        check: Option<String>,
        /// Verify the congruence/filter correspondence.
        #[arg(long)]
        correspondence: bool,
    },
    /// Quotient by a strong congruence.
    Quotient {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        partition: String,
        /// Print the raw class relation when the partition is not strong.
        #[arg(long)]
        force_preorder: bool,
    },
    /// Build a derived structure.
    Construct {
        kind: ConstructKind,
        #[command(flatten)]
        input: Input,
        /// Base point for `section`.
        #[arg(long)]
        at: Option<String>,
    },
    /// Evaluate terms and check identities.
    Term(TermArgs),
    /// Enumerate finite models.
    Search(SearchArgs),
    /// Check every claim of the example corpus.
    VerifyPaper {
        /// Only this entry.
        #[arg(long)]
        only: Option<String>,
        /// Read `NAME.alg` and `NAME.toml` pairs from a directory.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    TrivialStar,
    Pst,
    Closed,
    Section,
    OiaToSha,
    ShaToOia,
    OmlImplication,
    Dualize,
}

#[derive(Debug, Args)]
pub struct TermArgs {
    #[command(flatten)]
    input: Input,
    /// Identity `lhs = rhs` checked over all assignments.
    #[arg(long)]
    identity: Vec<String>,
    /// Ignore assignments where a side is undefined.
    #[arg(long)]
    defined_only: bool,
    /// Term to evaluate under `--assign`.
    #[arg(long)]
    eval: Option<String>,
    /// Assignment such as `x=a,y=b`.
    #[arg(long, default_value = "")]
    assign: String,
    #[arg(long)]
    maltsev: Vec<MaltsevTerm>,
    #[arg(long)]
    majority: bool,
    /// Set checked for closure under the ideal terms.
    #[arg(long)]
    ideal_closure: Option<String>,
    #[arg(long, default_value = "lattice")]
    family: IdealFamily,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    size: Option<usize>,
    #[arg(long)]
    system: AxiomSystem,
    /// Count labelled models instead of isomorphism classes.
    #[arg(long)]
    labelled: bool,
    /// Fix the order to the one in this algebra file.
    #[arg(long)]
    poset: Option<String>,
    #[arg(long)]
    count_only: bool,
    /// Write one algebra file per model into this directory.
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Look for a smallest model that fails this system.
    #[arg(long)]
    against: Option<AxiomSystem>,
}

fn load(spec: &str) -> Result<FinStructure> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        let text = corpus::algebra_text(name).ok_or_else(|| Error::Invalid(format!("no corpus entry `{name}`")))?;
        return codec::parse(text);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Invalid(format!("{spec}: {e}")))?;
    codec::parse_any(&text)
}

fn label(s: &FinStructure, l: &str) -> Result<usize> {
    s.carrier().index_of(l.trim()).ok_or_else(|| Error::Invalid(format!("unknown label `{l}`")))
}

fn check(input: &Input, sys: AxiomSystem, all: bool) -> Result<Report> {
    let s = load(&input.file)?;
    let mut r = Report::new("check");
    if all {
        let found = axioms::violations(&s, sys)?;
        r.push(Item::check(sys.name(), found.is_empty(), format!("{} violations", found.len())));
        for (clause, w) in found {
            let labels: Vec<String> = w.iter().map(|&x| s.label(x).to_string()).collect();
            r.push(Item::info(clause, format!("({})", labels.join(","))));
        }
    } else {
        let v = axioms::check(&s, sys)?;
        r.push(Item::verdict(sys.name(), &v, s.carrier()));
    }
    Ok(r)
}

fn classify(input: &Input) -> Result<Report> {
    let s = load(&input.file)?;
    let c = axioms::classify(&s);
    let mut r = Report::new("classify");
    for sys in AxiomSystem::ALL {
        let item = if c.passed.contains(&sys) {
            Item::info(sys.name(), "holds")
        } else if let Some((_, v)) = c.failed.iter().find(|(t, _)| *t == sys) {
            Item { pass: None, ..Item::verdict(sys.name(), v, s.carrier()) }
        } else {
            let why = c.not_applicable.iter().find(|(t, _)| *t == sys).map(|(_, e)| e.clone()).unwrap_or_default();
            Item::info(sys.name(), format!("not applicable: {why}"))
        };
        r.push(item);
    }
    Ok(r)
}

fn cones(input: &Input, of: Option<&str>, dot: bool) -> Result<Report> {
    let s = load(&input.file)?;
    let p = s.poset();
    let c = s.carrier();
    let mut r = Report::new("cones");
    match of {
        Some(set) => {
            let a = parse_set(c, set)?;
            r.push(Item::info("U", format_set(c, p.cone(a, ConeDir::Upper))));
            r.push(Item::info("L", format_set(c, p.cone(a, ConeDir::Lower))));
        }
        None => {
            for x in 0..s.size() {
                let detail = format!("up {} down {}", format_set(c, p.up(x)), format_set(c, p.down(x)));
                r.push(Item::info(s.label(x), detail));
            }
        }
    }
    Ok(if dot { r.with_body(p.to_dot()) } else { r })
}

fn congruences(input: &Input, mode: Option<CongMode>, one: Option<&str>) -> Result<Report> {
    let s = load(&input.file)?;
    let mode = mode.unwrap_or_else(|| CongMode::default_for(&s));
    let mut r = Report::new("congruences");
    match one {
        Some(text) => {
            let theta = Partition::parse(s.carrier(), text)?;
            let v = congruence::is_congruence(&s, &theta, mode)?;
            r.push(Item::verdict(format!("{} {mode}", theta.format(s.carrier())), &v, s.carrier()));
        }
        None => {
            let list = congruence::enumerate_congruences(&s, mode)?;
            r.push(Item::info("count", format!("{} {mode} congruences", list.len())));
            for theta in list {
                r.push(Item::info("partition", theta.format(s.carrier())));
            }
        }
    }
    Ok(r)
}

fn filters(input: &Input, kind: Option<FilterKind>, one: Option<&str>, corr: bool) -> Result<Report> {
    let s = load(&input.file)?;
    let kind = kind.unwrap_or(if congruence::lattice_ordered_sha(&s) {
        FilterKind::LatticeFilter
    } else {
        FilterKind::Filter
    });
    let c = s.carrier();
    let mut r = Report::new("filters");
    match one {
        Some(text) => {
            let f = parse_set(c, text)?;
            let v = congruence::is_filter(&s, f, kind)?;
            r.push(Item::verdict(format!("{} {kind}", format_set(c, f)), &v, c));
        }
        None => {
            let list = congruence::enumerate_filters(&s, kind)?;
            r.push(Item::info("count", format!("{} {kind} sets", list.len())));
            for f in list {
                r.push(Item::info("filter", format_set(c, f)));
            }
        }
    }
    if corr {
        let v = congruence::verify_correspondence(&s)?;
        r.push(Item::verdict("correspondence", &v, c));
    }
    Ok(r)
}

fn quotient(input: &Input, text: &str, force: bool) -> Result<Report> {
    let s = load(&input.file)?;
    let theta = Partition::parse(s.carrier(), text)?;
    let mut r = Report::new("quotient");
    let v = congruence::is_strong_congruence(&s, &theta)?;
    r.push(Item::verdict(format!("{} strong", theta.format(s.carrier())), &v, s.carrier()));
    if v.pass {
        let q = constructions::quotient(&s, &theta)?;
        return Ok(r.with_body(codec::emit(&q)));
    }
    if !force {
        return Ok(r);
    }
    let pre = constructions::quotient_preorder(&s, &theta)?;
    let names: Vec<String> = pre.classes.iter().map(|&b| format_set(s.carrier(), b)).collect();
    r.push(Item::info("antisymmetric", pre.antisymmetric.to_string()));
    let mut body = String::new();
    for (i, row) in pre.leq.iter().enumerate() {
        let above: Vec<&str> = row.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| names[j].as_str()).collect();
        body.push_str(&format!("{} <= {}\n", names[i], above.join(" ")));
    }
    Ok(r.with_body(body))
}

fn construct(kind: ConstructKind, input: &Input, at: Option<&str>) -> Result<Report> {
    let s = load(&input.file)?;
    let mut r = Report::new("construct");
    let built = match kind {
        ConstructKind::TrivialStar => constructions::trivial_star(s.poset())?,
        ConstructKind::Pst => {
            let comp = s.comp_table().ok_or(Error::MissingComponent("comp"))?;
            let (t, v) = constructions::pst_construct(s.poset(), comp)?;
            r.push(Item::verdict("complementation conditions", &v, s.carrier()));
            t
        }
        ConstructKind::Closed => constructions::closed_elements(&s)?,
        ConstructKind::Section => {
            let p = label(&s, at.ok_or_else(|| Error::Invalid("`section` needs --at".into()))?)?;
            let v = constructions::section_laws(&s, p)?;
            r.push(Item::verdict(format!("section at {}", s.label(p)), &v, s.carrier()));
            constructions::section(&s, p)?
        }
        ConstructKind::OiaToSha => constructions::oia_to_sha(&s)?,
        ConstructKind::ShaToOia => constructions::sha_to_oia(&s)?,
        ConstructKind::OmlImplication => constructions::oml_implication(&s)?,
        ConstructKind::Dualize => constructions::dualize(&s)?,
    };
    Ok(r.with_body(codec::emit(&built)))
}

fn parse_assign(s: &FinStructure, text: &str) -> Result<Vec<(String, usize)>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|pair| {
            let (k, v) = pair.split_once('=').ok_or_else(|| Error::Invalid(format!("expected `var=label` in `{pair}`")))?;
            Ok((k.trim().to_string(), label(s, v)?))
        })
        .collect()
}

fn term_cmd(a: &TermArgs) -> Result<Report> {
    let s = load(&a.input.file)?;
    let c = s.carrier();
    let mut r = Report::new("term");
    if let Some(text) = &a.eval {
        let t = Term::parse(text)?;
        let env = parse_assign(&s, &a.assign)?;
        let env: Vec<(&str, usize)> = env.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let v = term::eval(&s, &t, &env)?;
        r.push(Item::info(t.to_string(), v.map_or("undefined", |x| s.label(x))));
    }
    let mode = if a.defined_only { IdentityMode::DefinedOnly } else { IdentityMode::Strict };
    for text in &a.identity {
        let (l, rt) = term::parse_identity(text)?;
        let v = term::holds_identity(&s, &l, &rt, mode)?;
        r.push(Item::verdict(text, &v, c));
    }
    for &m in &a.maltsev {
        let v = term::maltsev_check(&s, m)?;
        r.push(Item::verdict(format!("maltsev {m}"), &v, c));
    }
    if a.majority {
        r.push(Item::verdict("majority", &term::majority_check(&s)?, c));
    }
    if let Some(set) = &a.ideal_closure {
        let f = parse_set(c, set)?;
        let v = term::ideal_closure_check(&s, f, a.family)?;
        r.push(Item::verdict(format!("{} closed under {}", format_set(c, f), a.family.names().join(",")), &v, c));
    }
    if r.items.is_empty() {
        return Err(Error::Invalid("nothing to do: give --eval, --identity, --maltsev, --majority or --ideal-closure".into()));
    }
    Ok(r)
}

fn search_cmd(a: &SearchArgs) -> Result<Report> {
    let mut r = Report::new("search");
    if let Some(b) = a.against {
        let max = a.size.unwrap_or(search::SEARCH_CAP);
        match search::find_counterexample(a.system, b, max)? {
            Some(ce) => {
                let s = &ce.structure;
                r.push(Item::info("size", s.size().to_string()));
                r.push(Item { pass: None, ..Item::verdict(b.name(), &ce.verdict, s.carrier()) });
                return Ok(r.with_body(codec::emit(s)));
            }
            None => {
                r.push(Item::info("none", format!("every {} model up to size {max} is {}", a.system.name(), b.name())));
                return Ok(r);
            }
        }
    }
    let mut spec = match &a.poset {
        Some(f) => SearchSpec::new(0, a.system).with_poset(load(f)?.poset().clone()),
        None => SearchSpec::new(a.size.ok_or_else(|| Error::Invalid("search needs --size or --poset".into()))?, a.system),
    };
    if a.labelled {
        spec = spec.labelled();
    }
    let models = search::enumerate_models(&spec)?;
    if let Some(dir) = &a.emit {
        write_models(dir, &models)?;
    }
    if a.count_only {
        return Ok(r.with_body(models.len().to_string()));
    }
    r.push(Item::info("count", models.len().to_string()));
    let body: Vec<String> = models.iter().map(codec::emit).collect();
    Ok(r.with_body(body.join("\n")))
}

fn write_models(dir: &Path, models: &[FinStructure]) -> Result<()> {
    let io = |e: std::io::Error| Error::Invalid(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    for (i, m) in models.iter().enumerate() {
        std::fs::write(dir.join(format!("model_{i:04}.alg")), codec::emit(m)).map_err(io)?;
    }
    Ok(())
}

fn verify_paper(only: Option<&str>, dir: Option<&Path>) -> Result<Report> {
    let mut entries = match dir {
        Some(d) => corpus::from_dir(d)?,
        None => corpus::builtin()?,
    };
    if let Some(name) = only {
        entries.retain(|e| e.name == name);
        if entries.is_empty() {
            return Err(Error::Invalid(format!("no corpus entry `{name}`")));
        }
    }
    let mut r = Report::new("verify-paper");
    let mut total = 0;
    let mut failed = 0;
    for e in corpus::verify(&entries) {
        for c in e.claims {
            total += 1;
            failed += usize::from(!c.pass);
            r.push(Item::check(format!("{} {}", e.name, c.note), c.pass, c.detail));
        }
    }
    r.push(Item::info("summary", format!("{} of {total} claims hold", total - failed)));
    Ok(r)
}

pub fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Check { input, system, all } => check(input, *system, *all),
        Command::Classify { input } => classify(input),
        Command::Cones { input, of, dot } => cones(input, of.as_deref(), *dot),
        Command::Congruences { input, mode, check } => congruences(input, *mode, check.as_deref()),
        Command::Filters { input, kind, check, correspondence } => {
            filters(input, *kind, check.as_deref(), *correspondence)
        }
        Command::Quotient { input, partition, force_preorder } => quotient(input, partition, *force_preorder),
        Command::Construct { kind, input, at } => construct(*kind, input, at.as_deref()),
        Command::Term(a) => term_cmd(a),
        Command::Search(a) => search_cmd(a),
        Command::VerifyPaper { only, dir } => verify_paper(only.as_deref(), dir.as_deref()),
    }
}

/// Errors meaning the input lacks a required property exit with 1, like a
/// failed verdict; malformed input and bad arguments exit with 2.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_)
        | Error::NotStrongCongruence { .. }
        | Error::NoTop
        | Error::NoBounds
        | Error::MissingComponent(_) => 1,
        _ => 2,
    }
}

/// Runs the command line; returns the exit code, stdout and stderr text.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (2, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(r) => (r.exit_code(), if cli.json { r.to_json() + "\n" } else { r.to_text() }, String::new()),
        Err(e) => (error_code(&e), String::new(), format!("error: {e}\n")),
    }
}
