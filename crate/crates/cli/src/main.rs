use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use dadew_core::grouppoly::{Family, GroupDescriptor};
use dadew_core::numth::Sign;
use dadew_core::pipeline::{
    enumerate_scenarios, reproduce_bdr_example, w_invariant, BdrReport, WReport,
};
use dadew_core::verify::{run_all, run_suite, Suite, SuiteReport};
use dadew_core::Error;

#[derive(Parser)]
#[command(
    name = "dadew",
    version,
    about = "W(B) for cyclic p-blocks of GL, GU, Sp and Spin"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute W(B) for one block scenario.
    WInvariant {
        #[command(flatten)]
        group: GroupArgs,
        /// Dimension of the support of the defect group (defaults to n).
        #[arg(long)]
        support: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// List every admissible scenario of a group with its W(B).
    Enumerate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the invariant sweeps.
    Verify {
        /// all, numth, ffpoly, dade, signs, grouppoly or pipeline.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the GU_21(5), p = 7 example.
    BdrExample {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// gl, gu, sl, su, sp, spin, spin+ or spin-.
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    p: u64,
}

impl GroupArgs {
    fn descriptor(&self) -> Result<GroupDescriptor, Error> {
        GroupDescriptor::new(self.family, self.n, self.q)
    }
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::ReproductionFailure(_) => Failure::Verification(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<String, Failure> {
    match command {
        Command::WInvariant {
            group,
            support,
            json,
        } => {
            let g = group.descriptor()?;
            let r = w_invariant(&g, group.p, support)?;
            Ok(if json {
                to_json(&r)
            } else {
                report_table(&g, &r)
            })
        }
        Command::Enumerate { group, json } => {
            let g = group.descriptor()?;
            let list = enumerate_scenarios(&g, group.p)?;
            if json {
                let reports: Vec<&WReport> = list.iter().map(|(_, r)| r).collect();
                Ok(to_json(&reports))
            } else {
                Ok(enumeration_table(
                    &g,
                    group.p,
                    &list.into_iter().map(|(_, r)| r).collect::<Vec<_>>(),
                ))
            }
        }
        Command::Verify { suite, json } => {
            let reports = if suite == "all" {
                run_all()
            } else {
                vec![run_suite(suite.parse::<Suite>()?)]
            };
            let out = if json {
                to_json(&reports)
            } else {
                verify_text(&reports)
            };
            if reports.iter().all(SuiteReport::passed) {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::BdrExample { json } => {
            let r = reproduce_bdr_example()?;
            Ok(if json { to_json(&r) } else { bdr_text(&r) })
        }
    }
}

fn render_rows(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn reduced_group(r: &WReport) -> String {
    let fam = if r.eps_reduced == Sign::Minus {
        "GU"
    } else {
        "GL"
    };
    format!("{fam}_{}({})", r.scenario().n_reduced(), r.q_reduced)
}

fn label_set(r: &WReport) -> String {
    let parts: Vec<String> = r.label.indices().iter().map(u32::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn report_table(g: &GroupDescriptor, r: &WReport) -> String {
    let mut rows = vec![
        ("group".to_string(), g.to_string()),
        ("p".into(), r.p.to_string()),
        ("support n0".into(), r.n0.to_string()),
        ("d".into(), r.d.to_string()),
        ("reduced group".into(), reduced_group(r)),
        ("m".into(), r.m.to_string()),
        ("a'".into(), r.aprime.to_string()),
        ("|D|".into(), r.defect_group_order()),
        ("W(B)".into(), r.rendered.clone()),
        ("label A".into(), label_set(r)),
        (
            "trivial".into(),
            if r.trivial { "yes" } else { "no" }.into(),
        ),
        ("chain".into(), r.chain.join(" -> ")),
    ];
    for n in &r.notes {
        rows.push(("note".into(), n.clone()));
    }
    render_rows(&rows)
}

fn enumeration_table(g: &GroupDescriptor, p: u64, reports: &[WReport]) -> String {
    let header = ["n0", "d", "m", "a'", "reduced", "|D|", "W(B)", "notes"];
    let rows: Vec<[String; 8]> = reports
        .iter()
        .map(|r| {
            [
                r.n0.to_string(),
                r.d.to_string(),
                r.m.to_string(),
                r.aprime.to_string(),
                reduced_group(r),
                r.defect_group_order(),
                r.rendered.clone(),
                r.notes.join("; "),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s: String = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| {
                let pad = w - c.chars().count();
                format!("{c}{}  ", " ".repeat(pad))
            })
            .collect();
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = format!("{g}, p = {p}: {} scenario(s)\n", reports.len());
    out += &line(header.to_vec());
    for row in &rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn verify_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    let (mut cases, mut failures) = (0u64, 0u64);
    for rep in reports {
        for sw in &rep.sweeps {
            out += &format!(
                "{} {:<10} {} ({} cases, {} ms)\n",
                if sw.passed() { "PASS" } else { "FAIL" },
                rep.suite.to_string(),
                sw.name,
                sw.cases,
                sw.millis
            );
            for f in &sw.failures {
                out += &format!("    {f}\n");
            }
            cases += sw.cases;
            failures += sw.failure_count;
        }
    }
    out += &format!(
        "{} suite(s), {cases} cases, {failures} failures\n",
        reports.len()
    );
    out
}

fn bdr_text(r: &BdrReport) -> String {
    let mut out = report_table(
        &GroupDescriptor::new(r.report.family, r.report.n, 5).expect("fixed example"),
        &r.report,
    );
    out += &render_rows(&[
        ("witness prime".into(), r.witness_prime.to_string()),
        (
            "eigenvalue field degree".into(),
            r.eigenvalue_field_degree.to_string(),
        ),
        ("Brauer tree edges".into(), r.tree_edges.to_string()),
        (
            "Morita side".into(),
            format!(
                "{} (trivial: {})",
                r.morita_side.rendered, r.morita_side_trivial
            ),
        ),
    ]);
    out += "checks:\n";
    for c in &r.checks {
        out += &format!(
            "  {} {}: {}\n",
            if c.passed { "ok  " } else { "FAIL" },
            c.name,
            c.actual
        );
    }
    out
}
