mod cache;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use coxeter_core::classify::{
    classify_classes, find_class, normality_report, reports_markdown, reports_tsv, reproduce_tables, ClassifyConfig,
    ClassifyError, CriterionReport, DRule, ExpectedTables, NormalityReport, NormalityVerdict, OutputFormat,
    TableSelection, TablesReport,
};
use coxeter_core::invariants::{surjectivity_jacobian_test, JacobianOptions, DEFAULT_SEED};
use coxeter_core::rootsystems::{parabolic_subsets_up_to_conjugacy, CoxeterType, RootSystem};

const EXIT_ERROR: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_DIFF: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "parabolic",
    version,
    about = "Surjectivity of restriction maps for parabolic subgroups of finite Coxeter groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the exponent criterion on every parabolic class.
    Classify(ClassifyArgs),
    /// Run the Jacobian test on one class.
    Jacobian(JacobianArgs),
    /// Recompute the tables and diff them against the bundled data.
    Tables(TablesArgs),
    /// Normality of regular decomposition class closures.
    Normality(NormalityArgs),
}

#[derive(Args, Debug, Clone)]
struct Caps {
    /// Largest orbit of root sets to enumerate.
    #[arg(long, default_value_t = coxeter_core::groupcalc::DEFAULT_ORBIT_CAP)]
    orbit_cap: usize,
    /// Largest `|C_I|` to enumerate as a matrix group.
    #[arg(long, default_value_t = coxeter_core::groupcalc::DEFAULT_GROUP_CAP)]
    group_cap: usize,
    /// Largest number of flats in an intersection lattice.
    #[arg(long, default_value_t = coxeter_core::arrangements::DEFAULT_POSET_CAP)]
    poset_cap: usize,
    /// Largest degree searched for a dimension witness.
    #[arg(long, default_value_t = coxeter_core::invariants::DEFAULT_REFUTATION_BOUND)]
    refutation_bound: usize,
    /// Seed of the random evaluation point.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Reading of the type-D, j = 0 row of the classical closed form.
    #[arg(long, value_enum, default_value_t = DRuleArg::DOdd)]
    d_rule: DRuleArg,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DRuleArg {
    DOdd,
    MOdd,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Json,
    Markdown,
    Tsv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Markdown => OutputFormat::Markdown,
            FormatArg::Tsv => OutputFormat::Tsv,
        }
    }
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Coxeter type, e.g. E7, I2(7), A3xB2.
    #[arg(long = "type")]
    w: String,
    /// Only this class: comma-separated nodes from 1, `S`, or a label.
    #[arg(long)]
    parabolic: Option<String>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Directory for cached reports.
    #[arg(long, env = "PARABOLIC_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct JacobianArgs {
    #[arg(long = "type")]
    w: String,
    #[arg(long)]
    parabolic: String,
    /// Degrees of the invariants to restrict; defaults to the degrees of
    /// `C_I` when it is a reflection group.
    #[arg(long, value_delimiter = ',')]
    degrees: Option<Vec<u32>>,
    /// Print the restricted invariants.
    #[arg(long)]
    dump: bool,
    /// Always expand the determinant exactly.
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// Table to reproduce; repeat for several. All three by default.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    which: Vec<u8>,
    #[arg(long, default_value_t = 8)]
    max_rank: usize,
    #[arg(long, default_value_t = 12)]
    max_dihedral: u32,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args, Debug)]
struct NormalityArgs {
    #[arg(long = "type")]
    w: String,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(ClassifyError),
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        Failure::Domain(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

fn config(caps: &Caps) -> ClassifyConfig {
    ClassifyConfig {
        orbit_cap: caps.orbit_cap,
        group_cap: caps.group_cap,
        poset_cap: caps.poset_cap,
        refutation_bound: caps.refutation_bound,
        jacobian_options: JacobianOptions { seed: caps.seed, ..Default::default() },
        d_rule: match caps.d_rule {
            DRuleArg::DOdd => DRule::DOdd,
            DRuleArg::MOdd => DRule::MOdd,
        },
        ..ClassifyConfig::default()
    }
}

fn root_system(w: &str) -> Result<RootSystem, Failure> {
    let ct: CoxeterType = w.parse().map_err(|e| Failure::Usage(format!("{e}")))?;
    RootSystem::build(&ct).map_err(|e| Failure::Usage(format!("{e}")))
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

fn cmd_classify(args: &ClassifyArgs) -> Result<u8, Failure> {
    let rs = root_system(&args.w)?;
    let cfg = config(&args.caps);
    let classes = parabolic_subsets_up_to_conjugacy(&rs, cfg.orbit_cap, &cfg.labels).map_err(ClassifyError::from)?;
    let selected = match &args.parabolic {
        Some(sel) => vec![find_class(&rs, &classes, sel)?.clone()],
        None => classes.clone(),
    };
    let key = cache::Key::new(&rs, &selected, &args.caps);
    let cached = args.cache_dir.as_deref().and_then(|d| cache::load(d, &key));
    let reports = match cached {
        Some(r) => r,
        None => {
            let r = if args.parabolic.is_some() {
                let exp_a = coxeter_core::groupcalc::ambient_exponents(&rs, &classes).map_err(ClassifyError::from)?;
                vec![coxeter_core::classify::criterion_by_computation(&rs, &selected[0], &exp_a, &cfg)?]
            } else {
                classify_classes(&rs, &classes, &cfg)?
            };
            if let Some(dir) = &args.cache_dir {
                if let Err(e) = cache::store(dir, &key, &r) {
                    eprintln!("warning: could not write cache: {e}");
                }
            }
            r
        }
    };
    print!("{}", render_reports(&reports, args.format.into()));
    Ok(if reports.iter().all(CriterionReport::is_decided) { 0 } else { EXIT_UNDECIDED })
}

fn render_reports(reports: &[CriterionReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => pretty(&reports),
        OutputFormat::Markdown => reports_markdown(reports),
        OutputFormat::Tsv => reports_tsv(reports),
    }
}

fn cmd_jacobian(args: &JacobianArgs) -> Result<u8, Failure> {
    let rs = root_system(&args.w)?;
    let cfg = config(&args.caps);
    let classes = parabolic_subsets_up_to_conjugacy(&rs, cfg.orbit_cap, &cfg.labels).map_err(ClassifyError::from)?;
    let pc = find_class(&rs, &classes, &args.parabolic)?;
    let degrees = match &args.degrees {
        Some(d) => d.clone(),
        None => {
            let exp_a = coxeter_core::groupcalc::ambient_exponents(&rs, &classes).map_err(ClassifyError::from)?;
            let cfg = ClassifyConfig { jacobian: coxeter_core::classify::JacobianPolicy::Never, ..cfg.clone() };
            let report = coxeter_core::classify::criterion_by_computation(&rs, pc, &exp_a, &cfg)?;
            match report.exp_acx.as_ref().and_then(|e| e.exponents()) {
                Some(e) if e.zeros() == 0 => e.degrees(),
                _ => {
                    return Err(Failure::Usage(format!(
                        "C_I for {} is not a reflection group of full rank; pass --degrees",
                        pc.label
                    )))
                }
            }
        }
    };
    let opts = JacobianOptions { seed: args.caps.seed, always_exact: args.exact, ..Default::default() };
    let result = surjectivity_jacobian_test(&rs, &pc.representative.subset, &degrees, &opts)
        .map_err(|e| Failure::Domain(e.into()))?;
    let mut out = json!({
        "w": rs.coxeter_type().label(),
        "class": pc.label,
        "nodes": pc.representative.subset.iter().map(|s| s + 1).collect::<Vec<_>>(),
    });
    if let (serde_json::Value::Object(o), serde_json::Value::Object(j)) = (&mut out, result.to_json(args.dump)) {
        o.extend(j);
    }
    print!("{}", pretty(&out));
    Ok(0)
}

fn tables_markdown(report: &TablesReport) -> String {
    let mut out = String::new();
    if let Some(t1) = &report.table1 {
        out.push_str("## Classical and dihedral\n\n| W | positive W_I |\n|---|---|\n");
        for g in &t1.groups {
            out.push_str(&format!("| {} | {} |\n", g.w, g.positive.join(", ")));
        }
        out.push_str(&format!("\nmismatches: d odd {}, m odd {}\n\n", t1.d_odd_mismatches, t1.m_odd_mismatches));
    }
    if let Some(t2) = &report.table2 {
        out.push_str("## Exceptional\n\n| W | W_I |\n|---|---|\n");
        for row in t2 {
            out.push_str(&format!("| {} | {} |\n", row.w, row.classes.join(" | ")));
        }
        out.push('\n');
    }
    if let Some(t3) = &report.table3 {
        out.push_str("## C_I\n\n| W | W_I | C_I | degrees |\n|---|---|---|---|\n");
        for row in t3 {
            out.push_str(&format!(
                "| {} | {} | {} | {:?} |\n",
                row.w,
                row.w_i,
                row.c_i.as_deref().unwrap_or("-"),
                row.degrees
            ));
        }
        out.push('\n');
    }
    out
}

fn cmd_tables(args: &TablesArgs) -> Result<u8, Failure> {
    let cfg = config(&args.caps);
    let mut tables = args.which.clone();
    if tables.is_empty() {
        tables = vec![1, 2, 3];
    }
    let sel = TableSelection { tables, max_rank: args.max_rank, max_dihedral: args.max_dihedral };
    let report = reproduce_tables(&sel, &cfg, &ExpectedTables::builtin())?;
    match args.format {
        FormatArg::Markdown => print!("{}", tables_markdown(&report)),
        _ => print!("{}", pretty(&report)),
    }
    if report.is_clean() {
        return Ok(0);
    }
    for d in &report.diffs {
        eprintln!("table {} {} {}: expected {}, found {}", d.table, d.w, d.entry, d.expected, d.found);
    }
    Ok(EXIT_DIFF)
}

fn normality_markdown(report: &NormalityReport) -> String {
    let mut out = format!("## {}\n\n| Levi | nodes | verdict | note |\n|---|---|---|---|\n", report.w_type);
    for e in &report.entries {
        let verdict = match e.verdict {
            NormalityVerdict::Normal => "normal",
            NormalityVerdict::NotNormal => "not normal",
            NormalityVerdict::Undecided => "undecided",
        };
        out.push_str(&format!("| {} | {:?} | {} | {} |\n", e.levi, e.nodes, verdict, e.note.as_deref().unwrap_or("")));
    }
    out
}

fn cmd_normality(args: &NormalityArgs) -> Result<u8, Failure> {
    let rs = root_system(&args.w)?;
    let report = normality_report(&rs, &config(&args.caps))?;
    match args.format {
        FormatArg::Markdown => print!("{}", normality_markdown(&report)),
        _ => print!("{}", pretty(&report)),
    }
    let undecided = report.entries.iter().any(|e| e.verdict == NormalityVerdict::Undecided);
    Ok(if undecided { EXIT_UNDECIDED } else { 0 })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_ERROR),
            };
        }
    };
    let outcome = match &cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Jacobian(a) => cmd_jacobian(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Normality(a) => cmd_normality(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
