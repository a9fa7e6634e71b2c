//! Command-line front end. `run` takes the argument list and output sinks
//! and returns the process exit code, so it can be driven from tests.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::circuit::claims::{tally, verify_claims};
use crate::circuit::library::{bell_stages, class_change_circuit, ghz_circuit, teleport_circuit, GhzControl};
use crate::circuit::{parse_circuit, Circuit, ClaimRecord, Observed, Trace};
use crate::classify::{classify, classify_batch, format_display_float, EntanglementReport, TransitionReport};
use crate::ket::Ket;
use crate::par::Execution;
use crate::scalar::{render_rational, GaussianRational};
use crate::symbolic::{is_valid_identifier, SymbolTable, IMAGINARY_UNIT};
use crate::syntax::parse_ket;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
/// `verify-paper` found at least one MISMATCH.
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "bhqc", version, about = "Exact simulator and verifier for the black-hole/qubit gate algebra")]
struct Args {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Show expected and computed states for every ledger entry.
    #[arg(long, global = true)]
    trace: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Execute a circuit file.
    Run { path: PathBuf },
    /// Run one of the published circuits.
    Demo { name: DemoName },
    /// Classify one or more 2- or 3-qubit states.
    Classify {
        #[arg(required = true)]
        states: Vec<String>,
    },
    /// Re-derive every printed identity and report verdicts.
    VerifyPaper,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DemoName {
    Bell,
    Teleport,
    Ghz,
    ClassChange,
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
    trace: bool,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        // a closed pipe is not worth a panic
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn fail(&mut self, s: impl AsRef<str>) -> i32 {
        let _ = writeln!(self.err, "error: {}", s.as_ref());
        EXIT_USAGE
    }

    fn emit_json(&mut self, v: &Value) {
        let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
        self.line(text);
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let parsed = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    let mut o = Output { out, err, json: parsed.json, trace: parsed.trace };
    match parsed.command {
        Command::Run { path } => cmd_run(&mut o, &path),
        Command::Demo { name } => cmd_demo(&mut o, name),
        Command::Classify { states } => cmd_classify(&mut o, &states),
        Command::VerifyPaper => cmd_verify_paper(&mut o),
    }
}

fn cmd_run(o: &mut Output<'_>, path: &PathBuf) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return o.fail(format!("cannot read {}: {e}", path.display())),
    };
    let circuit = match parse_circuit(&text) {
        Ok(c) => c,
        Err(e) => return o.fail(format!("{}: {e}", path.display())),
    };
    let trace = match circuit.run() {
        Ok(t) => t,
        Err(e) => return o.fail(format!("{}: {e}", path.display())),
    };
    if o.json {
        o.emit_json(&trace_json(&trace));
    } else {
        print_trace(o, &circuit, &trace);
    }
    EXIT_OK
}

/// One named circuit execution inside a demo.
struct DemoRun {
    name: String,
    circuit: Circuit,
    trace: Trace,
}

fn demo_runs(name: DemoName) -> Vec<DemoRun> {
    let make = |name: String, circuit: Circuit| {
        let trace = circuit.run().expect("built-in circuits are valid");
        DemoRun { name, circuit, trace }
    };
    match name {
        DemoName::Bell => bell_stages()
            .into_iter()
            .map(|stage| {
                let mut run = make(format!("{} {}", stage.location, stage.id), stage.circuit);
                for claim in &mut run.trace.claims {
                    claim.id = stage.id.to_string();
                    claim.location = stage.location.to_string();
                }
                run
            })
            .collect(),
        DemoName::Teleport => vec![make("teleport".into(), teleport_circuit())],
        DemoName::Ghz => vec![
            make("GHZ control a2".into(), ghz_circuit(GhzControl::A2)),
            make("GHZ control a1".into(), ghz_circuit(GhzControl::A1)),
        ],
        DemoName::ClassChange => vec![make("class change".into(), class_change_circuit())],
    }
}

fn cmd_demo(o: &mut Output<'_>, name: DemoName) -> i32 {
    let runs = demo_runs(name);
    let demo_name = name.to_possible_value().expect("no skipped variants").get_name().to_string();
    if o.json {
        let runs: Vec<Value> = runs
            .iter()
            .map(|r| {
                let mut v = trace_json(&r.trace);
                let obj = v.as_object_mut().expect("trace is an object");
                obj.insert("name".into(), json!(r.name));
                let (report, transition) = analyse(&r.trace);
                obj.insert("report".into(), report.as_ref().map_or(Value::Null, report_json));
                obj.insert("transition".into(), transition.as_ref().map_or(Value::Null, transition_json));
                v
            })
            .collect();
        o.emit_json(&json!({ "demo": demo_name, "runs": runs }));
        return EXIT_OK;
    }
    for (i, r) in runs.iter().enumerate() {
        if i > 0 {
            o.line("");
        }
        o.line(format!("== {} ==", r.name));
        print_trace(o, &r.circuit, &r.trace);
        let final_state = r.trace.final_state();
        match classify(final_state) {
            Ok(report) => {
                for l in report_lines(&report) {
                    o.line(l);
                }
            }
            Err(e) => o.line(format!("classification: skipped ({e})")),
        }
        if let (_, Some(t)) = analyse(&r.trace) {
            o.line("transition:");
            for l in transition_lines(&t) {
                o.line(format!("  {l}"));
            }
        }
    }
    EXIT_OK
}

/// Final-state report and, for 3-qubit runs, the input→output transition.
fn analyse(trace: &Trace) -> (Option<EntanglementReport>, Option<TransitionReport>) {
    let after = classify(trace.final_state()).ok();
    let transition = match (&after, trace.final_state().n_qubits()) {
        (Some(a), 3) => classify(trace.initial_state()).ok().map(|b| TransitionReport::from_reports(b, a.clone())),
        _ => None,
    };
    (after, transition)
}

/// Declares every identifier in `text` so symbolic input parses and is then
/// rejected by the classifier rather than the parser.
fn implicit_symbols(text: &str) -> SymbolTable {
    let mut table = SymbolTable::new();
    let mut word = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            word.push(ch);
            continue;
        }
        let name = word.trim_start_matches(|c: char| c.is_ascii_digit());
        if name != IMAGINARY_UNIT && is_valid_identifier(name) && !table.names().iter().any(|n| n == name) {
            let _ = table.declare(name);
        }
        word.clear();
    }
    table
}

fn cmd_classify(o: &mut Output<'_>, states: &[String]) -> i32 {
    let mut kets: Vec<Ket> = Vec::with_capacity(states.len());
    for s in states {
        match parse_ket(s, &implicit_symbols(s), None) {
            Ok(k) => kets.push(k),
            Err(e) => return o.fail(format!("'{s}': {e}")),
        }
    }
    let mut reports = Vec::with_capacity(kets.len());
    for (s, r) in states.iter().zip(classify_batch(&kets, Execution::Parallel)) {
        match r {
            Ok(report) => reports.push(report),
            Err(e) => return o.fail(format!("'{s}': {e}")),
        }
    }
    if o.json {
        let mut values: Vec<Value> = kets
            .iter()
            .zip(&reports)
            .map(|(k, r)| {
                let mut m = Map::new();
                m.insert("state".into(), json!(k.to_string()));
                if let Value::Object(fields) = report_json(r) {
                    m.extend(fields);
                }
                Value::Object(m)
            })
            .collect();
        let v = if values.len() == 1 { values.remove(0) } else { Value::Array(values) };
        o.emit_json(&v);
        return EXIT_OK;
    }
    for (i, (k, r)) in kets.iter().zip(&reports).enumerate() {
        if i > 0 {
            o.line("");
        }
        o.line(format!("state: {k}"));
        for l in report_lines(r) {
            o.line(l);
        }
    }
    EXIT_OK
}

fn cmd_verify_paper(o: &mut Output<'_>) -> i32 {
    let records = verify_claims();
    let (matched, scalar, mismatched) = tally(&records);
    if o.json {
        let claims: Vec<Value> = records.iter().map(claim_json).collect();
        o.emit_json(&json!({
            "claims": claims,
            "summary": {
                "total": records.len(),
                "match": matched,
                "match_up_to_scalar": scalar,
                "mismatch": mismatched,
            },
        }));
    } else {
        for r in &records {
            o.line(r.ledger_line());
            if o.trace {
                o.line(format!("    expected: {}", r.expected));
                o.line(format!("    computed: {}", r.computed));
            }
        }
        o.line(format!(
            "{} claims: {matched} MATCH, {scalar} MATCH_UP_TO_SCALAR, {mismatched} MISMATCH",
            records.len()
        ));
    }
    if mismatched > 0 {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    }
}

fn print_trace(o: &mut Output<'_>, circuit: &Circuit, trace: &Trace) {
    if let Some(labels) = &circuit.labels {
        o.line(format!("modes: {}", labels.join(" ")));
    }
    let rows: Vec<(String, String)> = trace
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let ins = s.instruction.as_ref().map_or("init".to_string(), ToString::to_string);
            (format!("[{i}] {ins}"), s.state.to_string())
        })
        .collect();
    let width = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0);
    for (left, state) in rows {
        let pad = width - left.chars().count();
        o.line(format!("{left}{}  {state}", " ".repeat(pad)));
    }
    for c in &trace.claims {
        o.line(c.ledger_line());
        if o.trace {
            o.line(format!("    expected: {}", c.expected));
            o.line(format!("    computed: {}", c.computed));
        }
    }
    o.line(format!("final: {}", trace.final_state()));
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_lines(r: &EntanglementReport) -> Vec<String> {
    let ranks = r.flattening_ranks.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    let mut lines = vec![format!("class: {}", r.class_label()), format!("flattening ranks: {ranks}")];
    if r.n_qubits == 2 {
        lines.push(format!("determinant: {}", r.determinant));
        return lines;
    }
    lines.push(format!("hyperdeterminant: {}", r.determinant));
    lines.push(format!("|Det|^2: {}", render_rational(&r.det_abs_sq())));
    if let Some(t) = &r.three_tangle {
        lines.push(format!("3-tangle: {}", format_display_float(t.display)));
    }
    if let Some(rank) = r.fts_rank {
        lines.push(format!("FTS rank: {rank}"));
    }
    if let Some(bh) = &r.black_hole {
        lines.push(format!("SUSY: {}", bh.susy));
        lines.push(format!("size: {}", bh.size));
        lines.push(format!("attractor: {}", yes_no(bh.attractor)));
        if let Some(note) = bh.brane_note {
            lines.push(format!("brane note: {note}"));
        }
    }
    if let Some(s) = r.entropy_display {
        lines.push(format!("entropy: {}", format_display_float(s)));
    }
    lines
}

fn transition_lines(t: &TransitionReport) -> Vec<String> {
    let mut lines = vec![t.class_change.clone(), t.susy_change.clone(), t.size_change.clone(), t.rank_change.clone()];
    lines.extend(t.coset_change.clone());
    lines
}

fn float_json(x: f64) -> Value {
    format_display_float(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn scalar_json(z: &GaussianRational) -> Value {
    json!({ "re": render_rational(&z.re), "im": render_rational(&z.im) })
}

/// `{class, ranks, fts_rank, det, det_abs_sq, tau3, susy, size, attractor, brane_note, entropy}`.
pub fn report_json(r: &EntanglementReport) -> Value {
    let mut m = Map::new();
    m.insert("n_qubits".into(), json!(r.n_qubits));
    m.insert("class".into(), json!(r.class_label()));
    m.insert("ranks".into(), json!(r.flattening_ranks));
    m.insert("fts_rank".into(), r.fts_rank.map_or(Value::Null, |f| json!(f.to_string())));
    m.insert("det".into(), scalar_json(&r.determinant));
    m.insert("det_abs_sq".into(), json!(render_rational(&r.det_abs_sq())));
    m.insert("tau3".into(), r.three_tangle.as_ref().map_or(Value::Null, |t| float_json(t.display)));
    m.insert(
        "tau3_squared".into(),
        r.three_tangle.as_ref().map_or(Value::Null, |t| json!(render_rational(&t.squared))),
    );
    let bh = r.black_hole.as_ref();
    m.insert("susy".into(), bh.map_or(Value::Null, |b| json!(b.susy.to_string())));
    m.insert("size".into(), bh.map_or(Value::Null, |b| json!(b.size.to_string())));
    m.insert("attractor".into(), json!(r.attractor()));
    m.insert("brane_note".into(), bh.and_then(|b| b.brane_note).map_or(Value::Null, |n| json!(n)));
    m.insert("entropy".into(), r.entropy_display.map_or(Value::Null, float_json));
    Value::Object(m)
}

fn transition_json(t: &TransitionReport) -> Value {
    json!({
        "before": t.before.class_label(),
        "after": t.after.class_label(),
        "class_change": t.class_change,
        "susy_change": t.susy_change,
        "size_change": t.size_change,
        "rank_change": t.rank_change,
        "coset_change": t.coset_change,
        "summary": t.summary(),
    })
}

fn observed_json(x: &Observed) -> Value {
    json!(x.to_string())
}

/// `{id, location, verdict, scalar?, expected, computed}`.
pub fn claim_json(c: &ClaimRecord) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), json!(c.id));
    m.insert("location".into(), json!(c.location));
    m.insert("verdict".into(), json!(c.verdict.kind()));
    if let Some(s) = c.verdict.scalar() {
        m.insert("scalar".into(), json!(s.to_string()));
    }
    m.insert("expected".into(), observed_json(&c.expected));
    m.insert("computed".into(), observed_json(&c.computed));
    Value::Object(m)
}

/// `{steps: [{instruction, state}], claims: [...]}`.
pub fn trace_json(t: &Trace) -> Value {
    let steps: Vec<Value> = t
        .steps
        .iter()
        .map(|s| {
            json!({
                "instruction": s.instruction.as_ref().map_or("init".to_string(), ToString::to_string),
                "state": s.state.to_string(),
            })
        })
        .collect();
    let claims: Vec<Value> = t.claims.iter().map(claim_json).collect();
    json!({ "steps": steps, "claims": claims })
}
