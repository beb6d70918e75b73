use std::fmt::Write;
use std::str::FromStr;

use super::{CriterionReport, Evidence, Status, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Markdown,
    Tsv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "tsv" => Ok(OutputFormat::Tsv),
            other => Err(format!("unknown format {other:?} (json, markdown, tsv)")),
        }
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn verdict(r: &CriterionReport) -> &'static str {
    match (&r.status, r.verdict) {
        (Status::Undecided(_), _) | (_, None) => "undecided",
        (_, Some(Verdict::Surjective)) => "surjective",
        (_, Some(Verdict::NotSurjective)) => "not surjective",
    }
}

fn evidence(r: &CriterionReport) -> &'static str {
    match r.evidence {
        Some(Evidence::ClosedForm) => "closed form",
        Some(Evidence::ExponentComputation) => "exponents",
        Some(Evidence::Jacobian) => "jacobian",
        Some(Evidence::DimensionRefutation) => "dimension",
        None => "-",
    }
}

fn nodes(r: &CriterionReport) -> String {
    let v: Vec<String> = r.nodes.iter().map(usize::to_string).collect();
    format!("{{{}}}", v.join(","))
}

/// A table of the positive classes with `∅ ≠ I ≠ S`, one row each, followed
/// by a table of every class.
pub fn reports_markdown(reports: &[CriterionReport]) -> String {
    let mut out = String::new();
    let w = reports.first().map_or("", |r| r.w_type.as_str());
    let exp_a = reports.first().map(|r| r.exp_a.to_string()).unwrap_or_default();
    let _ = writeln!(out, "## {w}: positive classes\n");
    let _ = writeln!(out, "exp(A) = {exp_a}\n");
    let _ = writeln!(out, "| W | W_I | nodes | exp(C_I) = exp(A^X) | evidence |");
    let _ = writeln!(out, "|---|---|---|---|---|");
    for r in reports.iter().filter(|r| r.is_positive_proper()) {
        let _ = writeln!(out, "| {w} | {} | {} | {} | {} |", r.label, nodes(r), opt(&r.exp_ax), evidence(r));
    }
    let _ = writeln!(out, "\n## {w}: all classes\n");
    let _ = writeln!(
        out,
        "| id | W_I | nodes | dim X | orbit | \\|C_I\\| | exp(A^X) | exp(A(X,C_I)) | = | ⊆ | verdict | evidence |"
    );
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|---|---|");
    for r in reports {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.class_id,
            r.label,
            nodes(r),
            r.dim_x,
            r.orbit_size,
            r.c_order,
            opt(&r.exp_ax),
            opt(&r.exp_acx),
            opt(&r.equality),
            opt(&r.containment),
            verdict(r),
            evidence(r),
        );
    }
    out
}

pub fn reports_tsv(reports: &[CriterionReport]) -> String {
    let mut out = String::from(
        "w\tclass\tlabel\tnodes\tdim_x\torbit\tc_order\texp_a\texp_ax\texp_acx\tequality\tcontainment\tverdict\tevidence\n",
    );
    for r in reports {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.w_type,
            r.class_id,
            r.label,
            nodes(r),
            r.dim_x,
            r.orbit_size,
            r.c_order,
            r.exp_a,
            opt(&r.exp_ax),
            opt(&r.exp_acx),
            opt(&r.equality),
            opt(&r.containment),
            verdict(r),
            evidence(r),
        );
    }
    out
}
