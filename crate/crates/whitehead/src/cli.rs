//! Command-line front end: family classification, torus slide simulation,
//! analysis of user-supplied diagram files, and brute-force oracles.
//!
//! Exit codes: 0 success, 1 computational rejection (cap exceeded, oracle
//! disagreement), 2 input error.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::families::{
    pretzel_classify, pretzel_diagram, pretzel_normalize, rational_classify,
    rational_diagram, RationalKnot,
};
use crate::handle_search::{decide, enumerate_arcs, Assumptions, DecideOptions, HandleReport};
use crate::{torus, Error};

#[derive(Parser, Debug)]
#[command(
    name = "whitehead",
    about = "circular handle structures of free Seifert surface spines",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// emit a structured JSON report
    #[arg(long)]
    json: bool,
    /// worker threads for the arc search (default: rayon's choice)
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a rational knot given its even continued fraction entries
    Rational {
        /// entries 2b1 2b2 ... (even, nonzero)
        #[arg(required = true, allow_negative_numbers = true)]
        coefficients: Vec<i64>,
        /// write the chain spine diagram to a file
        #[arg(long)]
        export_diagram: Option<PathBuf>,
        /// dump every boundary-parallel arc verdict
        #[arg(long)]
        per_arc: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Classify a pretzel knot P(p,q,r) with odd parameters
    Pretzel {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        r: i64,
        #[arg(long)]
        export_diagram: Option<PathBuf>,
        #[arg(long)]
        per_arc: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the Euclidean slide sequence on the (p,q)-torus sutured manifold
    #[command(name = "torus-slide")]
    TorusSlide {
        p: i64,
        q: i64,
        /// print one line per handle slide
        #[arg(long)]
        trace: bool,
        /// print the (r_i, r_{i+1})-stage diagram in the text format
        #[arg(long)]
        export_stage: Option<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Validate and analyze a diagram file
    Analyze {
        file: PathBuf,
        /// run the boundary-parallel arc search and dump every verdict
        #[arg(long)]
        per_arc: bool,
        /// write the genuine Whitehead graph as a node/edge list
        #[arg(long)]
        export_graph: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Brute-force cross-checks
    Oracle {
        /// compare greedy minimization against exhaustive search
        #[arg(long)]
        minimize: bool,
        /// check the slide-stage ledger on all coprime pairs
        #[arg(long)]
        euclid: bool,
        /// drill/fill roundtrips on a family diagram: `pretzel p q r`,
        /// `rational 2b1 2b2 ...`, or `torus p q`
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        roundtrip: Option<Vec<String>>,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 10)]
        len: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        max_p: i64,
        /// state cap for the exhaustive search
        #[arg(long, default_value_t = crate::oracle::DEFAULT_STATE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let (code, output) = run_to_string(args);
    print!("{output}");
    code
}

/// Parse arguments, run the command, and return (exit code, stdout text).
/// Output is deterministic for fixed arguments and seed, independent of the
/// worker thread count.
pub fn run_to_string<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let mut out = String::new();
    match run(cli.command, &mut out) {
        Ok(code) => (code, out),
        Err(e) => {
            out.push_str(&format!("error: {e}\n"));
            let code = match e {
                Error::CapExceeded { .. } => 1,
                _ => 2,
            };
            (code, out)
        }
    }
}

fn report_text(name: &str, report: &HandleReport, per_arc: bool) -> String {
    let mut out = String::new();
    let fibered = match &report.fibered {
        crate::handle_search::Fibered::Yes { .. } => "fibered",
        crate::handle_search::Fibered::No { .. } => "non-fibered",
        crate::handle_search::Fibered::Unknown => "fiberedness unknown",
    };
    out.push_str(&format!("{name}: {fibered}"));
    match report.h {
        Some(h) => out.push_str(&format!(" h={h}")),
        None => out.push_str(&format!(" h in [{}, {}]", report.h_lower, report.h_upper)),
    }
    if let Some(cw) = report.cw {
        out.push_str(&format!(" cw={cw}"));
    }
    out.push('\n');
    if let Some(w) = &report.witness {
        match w {
            crate::handle_search::Witness::SpineBasis { images, .. } => {
                out.push_str(&format!("witness: spine is a basis ({})\n", images.join(", ")));
            }
            crate::handle_search::Witness::PrimitiveSubset { curves, images, .. } => {
                out.push_str(&format!(
                    "witness: {} associated primitive ({})\n",
                    curves.join(", "),
                    images.join(", ")
                ));
            }
            crate::handle_search::Witness::Arc { arc_id, report } => {
                out.push_str(&format!(
                    "witness: drilled arc {arc_id} between faces {:?}, curves extend to a basis\n",
                    report.candidate.faces
                ));
            }
        }
    }
    for note in &report.assumptions {
        out.push_str(&format!("assuming: {note}\n"));
    }
    if per_arc {
        for arc in &report.per_arc {
            let verdict = if arc.witness.is_some() {
                "one-handle witness".to_string()
            } else {
                arc.fail_reason.clone().unwrap_or_default()
            };
            out.push_str(&format!(
                "arc {:>3} faces ({},{}) length {}{}: {} [{} slides]\n",
                arc.candidate.id,
                arc.candidate.faces.0,
                arc.candidate.faces.1,
                arc.candidate.length,
                arc.candidate
                    .around_vertex
                    .as_deref()
                    .map(|v| format!(" around {v}"))
                    .unwrap_or_default(),
                verdict,
                arc.slides,
            ));
        }
    }
    out
}

fn emit_report(
    buf: &mut String,
    name: &str,
    report: &HandleReport,
    out: &OutputOpts,
    per_arc: bool,
) -> crate::Result<()> {
    if out.json {
        let value = json!({
            "schema": 1,
            "subject": name,
            "report": report,
        });
        buf.push_str(&serde_json::to_string_pretty(&value).expect("report serializes"));
        buf.push('\n');
    } else {
        buf.push_str(&report_text(name, report, per_arc));
    }
    Ok(())
}

fn run(cmd: Command, out_buf: &mut String) -> crate::Result<i32> {
    match cmd {
        Command::Rational { coefficients, export_diagram, per_arc, out } => {
            let knot = RationalKnot::from_even(&coefficients)?;
            let mut report = rational_classify(&knot)?;
            if per_arc && knot.genus_count() == 2 {
                // arc verdicts come from the chain diagram
                let d = rational_diagram(&knot)?;
                let opts = DecideOptions { always_arc_search: true, threads: out.threads };
                let full = decide(
                    &d,
                    &Assumptions {
                        minimal_genus: true,
                        non_fibered: matches!(
                            report.fibered,
                            crate::handle_search::Fibered::No { .. }
                        ),
                        unique_incompressible: false,
                        connected: knot.is_connected(),
                        notes: vec![],
                    },
                    &opts,
                )?;
                report.per_arc = full.per_arc;
            }
            if let Some(path) = export_diagram {
                std::fs::write(&path, rational_diagram(&knot)?.to_text())?;
            }
            let name = format!(
                "rational [{}]",
                coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
            );
            emit_report(out_buf, &name, &report, &out, per_arc)?;
            Ok(0)
        }
        Command::Pretzel { p, q, r, export_diagram, per_arc, out } => {
            let knot = pretzel_normalize(p, q, r)?;
            let opts = DecideOptions { always_arc_search: per_arc, threads: out.threads };
            let report = pretzel_classify(&knot, &opts)?;
            if let Some(path) = export_diagram {
                std::fs::write(&path, pretzel_diagram(&knot)?.to_text())?;
            }
            let (np, nq, nr) = knot.params();
            emit_report(out_buf, &format!("P({np},{nq},{nr})"), &report, &out, per_arc)?;
            Ok(0)
        }
        Command::TorusSlide { p, q, trace, export_stage, out } => {
            let t = torus::build_diagram(p, q, true)?;
            let slide = torus::euclid_slide(&t)?;
            if let Some(stage) = export_stage {
                if stage == 0 || stage >= slide.kappas.len() {
                    return Err(Error::InvalidInput(format!(
                        "stage must be between 1 and {}",
                        slide.kappas.len().saturating_sub(1)
                    )));
                }
                let reference = torus::build_diagram(
                    t.cf.remainder(stage),
                    t.cf.remainder(stage + 1),
                    true,
                )?;
                out_buf.push_str(&reference.diagram.to_text());
                return Ok(0);
            }
            if out.json {
                let value = json!({
                    "schema": 1,
                    "p": p,
                    "q": q,
                    "kappa": slide.kappas,
                    "companion": t.beta_pq,
                    "infinity_side": t.infinity_side,
                    "stages": slide.stages,
                    "lines": if trace { Some(&slide.lines) } else { None },
                    "terminal": {
                        "alpha": slide.terminal_alpha.to_string(),
                        "beta": slide.terminal_beta.to_string(),
                        "crossings_at_infinity": 1,
                    },
                });
                out_buf.push_str(&serde_json::to_string_pretty(&value).expect("serializes"));
                out_buf.push('\n');
            } else {
                out_buf.push_str(&format!(
                    "kappa: {}\n",
                    slide
                        .kappas
                        .iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                ));
                let (r, s) = t.beta_pq.expect("built with companion");
                out_buf.push_str(&format!("companion: ({r},{s})  infinity: {}\n", t.infinity_side));
                if trace {
                    for line in &slide.lines {
                        out_buf.push_str(&format!(
                            "slide {} along {} (kappa {}/{}) complexity {}->{}\n",
                            line.slid,
                            line.along,
                            line.index_in_stage,
                            line.kappa,
                            line.complexity_before,
                            line.complexity_after
                        ));
                    }
                }
                out_buf.push_str("terminal alpha:1 beta:1\n");
            }
            Ok(0)
        }
        Command::Analyze { file, per_arc, export_graph, out } => {
            let text = std::fs::read_to_string(&file)?;
            let d = crate::diagram::Diagram::from_text(&text)?;
            let words = d.trace_words()?;
            let graph = d.gw_graph();
            let analysis = crate::graph::analyze_graph(&graph);
            if let Some(path) = export_graph {
                std::fs::write(&path, graph.export(false))?;
            }
            let spine_like = words.len() == d.rank();
            let report = if spine_like {
                let opts = DecideOptions { always_arc_search: per_arc, threads: out.threads };
                let assumptions = Assumptions {
                    notes: vec![
                        "user-supplied diagram: arc exhaustion is relative to this meridian system"
                            .into(),
                    ],
                    ..Assumptions::default()
                };
                Some(decide(&d, &assumptions, &opts)?)
            } else {
                None
            };
            if out.json {
                let value = json!({
                    "schema": 1,
                    "file": file.display().to_string(),
                    "rank": d.rank(),
                    "curves": words.iter().map(|(l, w)| json!({
                        "label": l, "word": w.to_string(),
                    })).collect::<Vec<_>>(),
                    "faces": d.face_count(),
                    "graph": {
                        "connected": analysis.connected,
                        "complexity": analysis.complexity,
                        "cut_vertices": analysis.cut_vertices.iter()
                            .map(|v| v.to_string()).collect::<Vec<_>>(),
                    },
                    "report": report,
                });
                out_buf.push_str(&serde_json::to_string_pretty(&value).expect("serializes"));
                out_buf.push('\n');
            } else {
                out_buf.push_str(&format!("rank {} with {} curves, {} edges, {} faces\n",
                    d.rank(), words.len(), d.edge_count(), d.face_count()));
                for (label, w) in &words {
                    out_buf.push_str(&format!("curve {label}: {w}\n"));
                }
                out_buf.push_str(&format!(
                    "graph: complexity {}, {}, cut vertices: {}\n",
                    analysis.complexity,
                    if analysis.connected { "connected" } else { "disconnected" },
                    if analysis.cut_vertices.is_empty() {
                        "none".to_string()
                    } else {
                        analysis
                            .cut_vertices
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    }
                ));
                if let Some(report) = &report {
                    out_buf.push_str(&report_text("spine", report, per_arc));
                }
            }
            Ok(0)
        }
        Command::Oracle {
            minimize,
            euclid,
            roundtrip,
            rank,
            len,
            seed,
            samples,
            max_p,
            cap,
            out,
        } => run_oracle(
            out_buf, minimize, euclid, roundtrip, rank, len, seed, samples, max_p, cap, &out,
        ),
    }
}

#[allow(clippy::too_many_arguments)]
fn run_oracle(
    out_buf: &mut String,
    minimize: bool,
    euclid: bool,
    roundtrip: Option<Vec<String>>,
    rank: usize,
    len: usize,
    seed: u64,
    samples: usize,
    max_p: i64,
    cap: usize,
    out: &OutputOpts,
) -> crate::Result<i32> {
    if !(minimize || euclid || roundtrip.is_some()) {
        return Err(Error::InvalidInput(
            "choose an oracle: --minimize, --euclid, or --roundtrip".into(),
        ));
    }
    if rank > 3 || len > 10 || max_p > 30 {
        return Err(Error::InvalidInput(
            "oracle caps: rank <= 3, word length <= 10, p <= 30".into(),
        ));
    }
    let mut failures = 0usize;
    let mut summaries = Vec::new();
    if minimize {
        let agree = crate::oracle::minimize_agreement(rank, len, seed, samples, cap)?;
        summaries.push(format!("minimize: {agree}/{samples} agree"));
        failures += samples - agree;
    }
    if euclid {
        let mut pairs = 0usize;
        for p in 2..=max_p {
            for q in 1..p {
                if torus::gcd(p, q) != 1 {
                    continue;
                }
                let t = torus::build_diagram(p, q, true)?;
                let trace = torus::euclid_slide(&t)?;
                let n = trace.kappas.len();
                for (i, stage) in trace.stages.iter().enumerate().take(n.saturating_sub(1)) {
                    let (a, b) = (t.cf.remainder(i + 1), t.cf.remainder(i + 2));
                    if !torus::stage_matches_reference(stage, a, b)? {
                        failures += 1;
                        summaries.push(format!("euclid: stage {} of ({p},{q}) mismatches", i + 1));
                    }
                }
                pairs += 1;
            }
        }
        summaries.push(format!("euclid: all {pairs} coprime pairs checked"));
    }
    if let Some(spec) = roundtrip {
        let d = match spec.first().map(String::as_str) {
            Some("pretzel") if spec.len() == 4 => {
                let ps: Vec<i64> = spec[1..]
                    .iter()
                    .map(|s| s.parse().map_err(|_| Error::InvalidInput(format!("bad int {s}"))))
                    .collect::<crate::Result<_>>()?;
                pretzel_diagram(&pretzel_normalize(ps[0], ps[1], ps[2])?)?
            }
            Some("rational") if spec.len() >= 2 => {
                let cs: Vec<i64> = spec[1..]
                    .iter()
                    .map(|s| s.parse().map_err(|_| Error::InvalidInput(format!("bad int {s}"))))
                    .collect::<crate::Result<_>>()?;
                rational_diagram(&RationalKnot::from_even(&cs)?)?
            }
            Some("torus") if spec.len() == 3 => {
                let p: i64 = spec[1].parse().map_err(|_| Error::InvalidInput("bad p".into()))?;
                let q: i64 = spec[2].parse().map_err(|_| Error::InvalidInput("bad q".into()))?;
                torus::build_diagram(p, q, false)?.diagram
            }
            _ => {
                return Err(Error::InvalidInput(
                    "roundtrip spec: `pretzel p q r`, `rational 2b1 ...`, or `torus p q`".into(),
                ))
            }
        };
        let arcs = enumerate_arcs(&d)?;
        let mut bad = BTreeSet::new();
        for arc in &arcs {
            if !crate::handle_search::drill_fill_roundtrip(&d, arc)? {
                bad.insert(arc.id);
            }
        }
        if bad.is_empty() {
            summaries.push(format!("roundtrip: all {} face pairs pass", arcs.len()));
        } else {
            failures += bad.len();
            summaries.push(format!("roundtrip: {} of {} face pairs FAIL", bad.len(), arcs.len()));
        }
    }
    if out.json {
        let value = json!({
            "schema": 1,
            "oracle": summaries,
            "failures": failures,
        });
        out_buf.push_str(&serde_json::to_string_pretty(&value).expect("serializes"));
        out_buf.push('\n');
    } else {
        for s in &summaries {
            out_buf.push_str(s);
            out_buf.push('\n');
        }
    }
    Ok(if failures == 0 { 0 } else { 1 })
}
