use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stratachow::catalog::{self, catalog};
use stratachow::chowfile::{ChowDocument, ChowFileError};
use stratachow::glue::{reconstruct_class, GlueError, Stratification};
use stratachow::groebner::{
    groebner_basis_with, ideal_equal, is_member, is_nonzerodivisor, kernel_of_map, set_global_degree_cap, GbOptions,
    GroebnerError, Ideal,
};
use stratachow::scenario::{run_scenario, ScenarioError, SCENARIOS};
use stratachow::{PolyError, Polynomial};
use thiserror::Error;

const MAXDEG_ENV: &str = "STRATACHOW_GB_MAXDEG";

#[derive(Parser)]
#[command(
    name = "stratachow",
    version,
    about = "Exact Groebner computations and verification runs over graded Chow ring presentations"
)]
struct Cli {
    /// Extra .chow files, read together with the built-in catalog.
    #[arg(long = "in", global = true, value_name = "FILE")]
    inputs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// A class from the catalog or an input file.
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    class: Option<String>,
    /// A polynomial written in the ideal's ring.
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis of an ideal.
    Gb {
        #[arg(long)]
        ideal: String,
        /// Fail if the computation needs S-pairs above this degree.
        #[arg(long)]
        maxdeg: Option<u32>,
    },
    /// Normal form of a polynomial modulo an ideal.
    Reduce {
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        target: Target,
    },
    /// Membership with a certificate.
    Member {
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        target: Target,
        /// Exit with status 1 unless the polynomial is a member.
        #[arg(long)]
        assert: bool,
    },
    /// Whether two ideals of one ring are equal.
    IdealEq { first: String, second: String },
    /// Generators of the kernel of a declared map (modulo its target ideal).
    Kernel {
        #[arg(long)]
        map: String,
    },
    /// Whether a polynomial is a nonzerodivisor modulo an ideal.
    Nzd {
        #[arg(long)]
        ideal: String,
        #[command(flatten)]
        target: Target,
    },
    /// Glue every stage up to the named glue block and print the result.
    Glue {
        #[arg(long)]
        stage: String,
        #[arg(long, default_value = "restrict.")]
        restrictions: String,
    },
    /// Rebuild a global class from classes named PREFIX/<stratum>.
    Reconstruct {
        #[arg(long)]
        class: String,
        #[arg(long, default_value = "stage.delta111")]
        stage: String,
        #[arg(long, default_value = "restrict.")]
        restrictions: String,
        /// Compare with this class modulo the glued relations.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Run a named verification scenario, or `all`.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Every entry with its kind, checksum and note.
    List,
    /// Canonical print of one entry.
    Show { name: String },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    File(#[from] ChowFileError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Glue(#[from] GlueError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::File(_) | CliError::Poly(_) => 2,
            CliError::Scenario(ScenarioError::UnknownScenario(_)) => 2,
            CliError::Groebner(
                GroebnerError::Poly(_) | GroebnerError::InhomogeneousInput | GroebnerError::NotHomogeneous { .. },
            ) => 2,
            _ => 1,
        }
    }
}

struct Session {
    doc: std::borrow::Cow<'static, ChowDocument>,
}

impl Session {
    fn open(inputs: &[PathBuf]) -> Result<Session, CliError> {
        if inputs.is_empty() {
            return Ok(Session { doc: std::borrow::Cow::Borrowed(catalog()) });
        }
        let mut texts = Vec::new();
        for path in inputs {
            let text =
                std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            texts.push((path.display().to_string(), text));
        }
        let mut sources: Vec<(&str, &str)> = catalog::sources().to_vec();
        sources.extend(texts.iter().map(|(f, t)| (f.as_str(), t.as_str())));
        Ok(Session { doc: std::borrow::Cow::Owned(ChowDocument::parse_sources(&sources)?) })
    }

    fn ideal(&self, name: &str) -> Result<Ideal, CliError> {
        self.doc.ideal(name).ok_or_else(|| CliError::Input(format!("unknown ideal `{name}`")))
    }

    fn target(&self, t: &Target, ideal: &Ideal) -> Result<Polynomial, CliError> {
        match (&t.class, &t.poly) {
            (Some(c), _) => {
                let p = self.doc.class(c).ok_or_else(|| CliError::Input(format!("unknown class `{c}`")))?;
                if !p.ring().same_as(ideal.ring()) {
                    return Err(CliError::Input(format!("class `{c}` does not live in the ideal's ring")));
                }
                Ok(p.clone())
            }
            (None, Some(text)) => Ok(ideal.ring().parse(text)?),
            (None, None) => Err(CliError::Input("give --class or --poly".into())),
        }
    }
}

fn print_lines(out: &mut String, items: &[Polynomial]) {
    for p in items {
        out.push_str(&format!("  {p}\n"));
    }
}

/// Runs one command, returning its standard output and whether it counts
/// as success.
fn run(cli: Cli) -> Result<(String, bool), CliError> {
    let session = Session::open(&cli.inputs)?;
    let mut out = String::new();
    let ok = match cli.command {
        Command::Gb { ideal, maxdeg } => {
            let ideal = session.ideal(&ideal)?;
            let gb = groebner_basis_with(&ideal, &GbOptions { degree_cap: maxdeg, ..GbOptions::default() })?;
            out.push_str(&format!("basis ({} elements):\n", gb.len()));
            print_lines(&mut out, &gb.basis());
            true
        }
        Command::Reduce { ideal, target } => {
            let ideal = session.ideal(&ideal)?;
            let p = session.target(&target, &ideal)?;
            let d = p.degree().unwrap_or(0);
            let gb = groebner_basis_with(&ideal, &GbOptions { truncate_at: Some(d), ..GbOptions::default() })?;
            out.push_str(&format!("{}\n", gb.reduce(&p)?));
            true
        }
        Command::Member { ideal, target, assert } => {
            let ideal = session.ideal(&ideal)?;
            let p = session.target(&target, &ideal)?;
            let report = is_member(&p, &ideal)?;
            out.push_str(&format!("member_over_Q: {}\n", report.member_over_q));
            out.push_str(&format!("smooth_over_Z16: {}\n", report.smooth_over_z16));
            out.push_str(&format!("remainder: {}\n", report.certificate.remainder));
            if report.member_over_q {
                if let Some(cof) = &report.certificate.cofactors {
                    out.push_str("cofactors:\n");
                    for (i, c) in cof.iter().enumerate() {
                        out.push_str(&format!("  [{i}] {c}\n"));
                    }
                }
            }
            !assert || report.member_over_q
        }
        Command::IdealEq { first, second } => {
            let (a, b) = (session.ideal(&first)?, session.ideal(&second)?);
            let b = b.embed(a.ring()).map_err(|_| CliError::Input("the ideals live in different rings".into()))?;
            let eq = ideal_equal(&a, &b)?;
            out.push_str(&format!("equal_over_Q: {eq}\n"));
            eq
        }
        Command::Kernel { map } => {
            let decl = session.doc.map(&map).ok_or_else(|| CliError::Input(format!("unknown map `{map}`")))?;
            let modulo = decl.modulo.as_deref().map(|j| session.ideal(j)).transpose()?;
            let kernel = kernel_of_map(&decl.map, modulo.as_ref())?;
            out.push_str(&format!("kernel ({} generators):\n", kernel.generators().len()));
            print_lines(&mut out, kernel.generators());
            true
        }
        Command::Nzd { ideal, target } => {
            let ideal = session.ideal(&ideal)?;
            let p = session.target(&target, &ideal)?;
            let nzd = is_nonzerodivisor(&p, &ideal)?;
            out.push_str(&format!("nonzerodivisor: {nzd}\n"));
            true
        }
        Command::Glue { stage, restrictions } => {
            let strat = Stratification::from_document(&session.doc, &stage, &restrictions)?;
            let result = strat.run()?;
            for (s, (check, glued)) in strat.stages.iter().zip(&result.stages) {
                out.push_str(&format!(
                    "{}: nonzerodivisor {}, surjective {}, {} relations\n",
                    s.name,
                    check.nonzerodivisor,
                    check.surjective,
                    glued.families.len()
                ));
            }
            if let Some(last) = result.final_presentation() {
                out.push_str("relations:\n");
                print_lines(&mut out, last.relations.generators());
            }
            result.stages.iter().all(|(c, _)| c.holds())
        }
        Command::Reconstruct { class, stage, restrictions, expect } => {
            let strat = Stratification::from_document(&session.doc, &stage, &restrictions)?;
            let data = strat.restriction_data(&session.doc, &class);
            if data.is_empty() {
                return Err(CliError::Input(format!("no classes named `{class}/<stratum>`")));
            }
            let x = match reconstruct_class(&strat, &data) {
                Ok(x) => x,
                Err(GlueError::NotDivisible { stratum, detail }) => {
                    out.push_str(&format!("inconsistent restriction on {stratum}: {detail}\n"));
                    return Ok((out, false));
                }
                Err(e) => return Err(e.into()),
            };
            out.push_str(&format!("class: {x}\n"));
            match expect {
                Some(name) => {
                    let want =
                        session.doc.class(&name).ok_or_else(|| CliError::Input(format!("unknown class `{name}`")))?;
                    let relations = strat.run()?.final_presentation().expect("stages").relations.clone();
                    let d = x.degree().unwrap_or(0);
                    let gb =
                        groebner_basis_with(&relations, &GbOptions { truncate_at: Some(d), ..GbOptions::default() })?;
                    let diff = gb.reduce(&(&x - &want.embed(x.ring())?))?;
                    out.push_str(&format!("congruent to {name}: {}\n", diff.is_zero()));
                    if !diff.is_zero() {
                        out.push_str(&format!("difference: {diff}\n"));
                    }
                    diff.is_zero()
                }
                None => true,
            }
        }
        Command::Verify { suite, json } => {
            let names: Vec<&str> = if suite == "all" { SCENARIOS.to_vec() } else { vec![suite.as_str()] };
            let mut pass = true;
            for name in names {
                let report = run_scenario(name)?;
                pass &= report.pass;
                if json {
                    out.push_str(&serde_json::to_string(&report.to_json()).expect("plain JSON"));
                    out.push('\n');
                } else {
                    out.push_str(&report.to_text());
                }
            }
            pass
        }
        Command::Catalog { action: CatalogAction::List } => {
            for e in &session.doc.entries {
                let entry = catalog::load(&e.name).ok();
                let sum = entry.map(|c| c.checksum[..12].to_string()).unwrap_or_else(|| "-".repeat(12));
                out.push_str(&format!(
                    "{:<8} {:<40} {sum}  {}\n",
                    e.kind.keyword(),
                    e.name,
                    e.note.lines().next().unwrap_or("")
                ));
            }
            true
        }
        Command::Catalog { action: CatalogAction::Show { name } } => {
            let entry = catalog::load(&name).map_err(|e| CliError::Input(e.to_string()))?;
            out.push_str(&format!("{} {}\n", entry.info.kind.keyword(), entry.info.name));
            for line in entry.info.note.lines() {
                out.push_str(&format!("# {line}\n"));
            }
            out.push_str(&entry.canonical);
            out.push_str(&format!("sha256 {}\n", entry.checksum));
            true
        }
    };
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::env::var(MAXDEG_ENV) {
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(d) if d > 0 => set_global_degree_cap(Some(d)),
            _ => {
                eprintln!("error: {MAXDEG_ENV} must be a positive integer, got `{v}`");
                return ExitCode::from(2);
            }
        },
        Err(_) => set_global_degree_cap(None),
    }
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
