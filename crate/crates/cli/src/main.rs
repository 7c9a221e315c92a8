use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qfa_core::constructions::{
    build_l0_dfa, build_l0m_dfa, build_lzm_dfa, build_rotation_mo1qfa, combine, dfa_to_qfac, SetOp,
};
use qfa_core::words::{format_word, parse_word, words_up_to};
use qfa_core::{
    blm_equivalent, brute_force_k_equiv, find_f_construction, find_mm_blocker, load_machine,
    minimize_dfa, qfac_equivalent, qfac_equivalent_all, save_machine, to_canonical_json, Blm,
    Complex64, EquivalenceVerdict, Machine, Qfac,
};

const DEFAULT_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "qfa",
    version,
    about = "Simulate, build, analyze, and compare quantum finite automata"
)]
struct Cli {
    /// Print only decisive result lines.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on a word and print its outcome probabilities.
    ///
    /// Exits 0 when the selected outcome (--outcome, default "a") has
    /// probability at least 1/2, and 1 otherwise.
    Prob {
        machine: PathBuf,
        /// Word over the machine's alphabet ("" for the empty word).
        word: String,
        /// Outcome label deciding the exit code.
        #[arg(long)]
        outcome: Option<String>,
    },
    /// Show the classical path and outcome distribution of a qfac run.
    Trace {
        machine: PathBuf,
        /// Word over the machine's alphabet ("" for the empty word).
        word: String,
    },
    /// Decide whether two machines of the same kind (qfac or blm) agree on
    /// every word. Exits 0 when equivalent, 1 with a witness otherwise.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        /// Compare only this outcome (default: every shared outcome).
        #[arg(long)]
        outcome: Option<String>,
        /// Numerical tolerance (overrides QFA_TOL; default 1e-8).
        #[arg(long)]
        tol: Option<f64>,
        /// Also confirm the verdict by exhaustive search up to this length.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Compare two machines on every word up to a length, with no algebra.
    /// Exits 0 when no difference is found, 1 with a witness otherwise.
    OracleEquiv {
        a: PathBuf,
        b: PathBuf,
        /// Maximum word length to search.
        #[arg(long)]
        max_len: usize,
        /// Outcome to compare (default "a").
        #[arg(long)]
        outcome: Option<String>,
        /// Numerical tolerance (overrides QFA_TOL; default 1e-8).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build one of the example machines or products.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Minimize a DFA and search it for quantum-acceptability obstructions.
    ///
    /// With no flags, runs everything. Detectors run on the minimal
    /// automaton. Exits 1 when a requested detector finds an obstruction.
    Analyze {
        machine: PathBuf,
        /// Report input and minimal state counts.
        #[arg(long)]
        minimize: bool,
        /// Search for an F-construction (exists iff the language is not
        /// accepted by any multi-letter QFA with bounded error).
        #[arg(long)]
        f_construction: bool,
        /// Search for a blocker pattern ruling out bounded-error
        /// measure-many acceptance (its absence is inconclusive).
        #[arg(long)]
        mm_blocker: bool,
        /// Write the minimal DFA to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a machine document parses and satisfies its invariants.
    Validate { machine: PathBuf },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Two-state DFA for "ends in 0" over {0,1}.
    L0 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DFA for "ends in 0 and length divisible by m" (m+1 states).
    L0m {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// DFA for "contains z as a scattered subword and length divisible by m".
    Lzm {
        /// Pattern word over the alphabet.
        #[arg(long)]
        z: String,
        #[arg(long)]
        m: usize,
        /// Alphabet symbols, comma-separated.
        #[arg(long, default_value = "0,1")]
        alphabet: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Single-qubit measure-once machine rotating by π/m per symbol.
    Rotation {
        #[arg(long)]
        m: usize,
        /// Alphabet symbols, comma-separated.
        #[arg(long, default_value = "0,1")]
        alphabet: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Embed a DFA as a qfac accepting with probability exactly 0 or 1.
    #[command(name = "dfa2qfac")]
    Dfa2Qfac {
        dfa: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Boolean product of a DFA and a measure-once machine as a qfac.
    Combine {
        dfa: PathBuf,
        qfa: PathBuf,
        /// intersection | union | diff-dfa-minus-qfa | diff-qfa-minus-dfa
        #[arg(long)]
        op: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = Report::new(cli.quiet);
    match run(cli.command, &mut report) {
        Ok(code) => {
            report.emit();
            ExitCode::from(code)
        }
        Err(e) => {
            report.emit();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Buffered report so output appears once, in order, with banners separated
/// from decisive lines for --quiet.
struct Report {
    quiet: bool,
    buf: String,
}

impl Report {
    fn new(quiet: bool) -> Report {
        Report { quiet, buf: String::new() }
    }

    /// A decisive result line: always printed.
    fn result(&mut self, line: impl AsRef<str>) {
        self.buf.push_str(line.as_ref());
        self.buf.push('\n');
    }

    /// An informational banner: suppressed by --quiet.
    fn info(&mut self, line: impl AsRef<str>) {
        if !self.quiet {
            self.result(line);
        }
    }

    fn emit(&self) {
        print!("{}", self.buf);
    }
}

type CliError = Box<dyn std::error::Error>;

fn run(cmd: Command, report: &mut Report) -> Result<u8, CliError> {
    match cmd {
        Command::Prob { machine, word, outcome } => {
            cmd_prob(&machine, &word, outcome.as_deref(), report)
        }
        Command::Trace { machine, word } => cmd_trace(&machine, &word, report),
        Command::Equiv { a, b, outcome, tol, max_len } => {
            cmd_equiv(&a, &b, outcome.as_deref(), tol, max_len, report)
        }
        Command::OracleEquiv { a, b, max_len, outcome, tol } => {
            cmd_oracle_equiv(&a, &b, max_len, outcome.as_deref(), tol, report)
        }
        Command::Construct(c) => cmd_construct(c, report),
        Command::Analyze { machine, minimize, f_construction, mm_blocker, out } => {
            cmd_analyze(&machine, minimize, f_construction, mm_blocker, out.as_deref(), report)
        }
        Command::Validate { machine } => cmd_validate(&machine, report),
    }
}

/// Tolerance resolution: --tol flag, then QFA_TOL, then the default.
fn resolve_tol(flag: Option<f64>) -> Result<f64, CliError> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var("QFA_TOL") {
        Ok(s) => Ok(s
            .trim()
            .parse::<f64>()
            .map_err(|_| format!("QFA_TOL is not a number: {s:?}"))?),
        Err(_) => Ok(DEFAULT_TOL),
    }
}

fn fmt_prob(p: f64) -> String {
    format!("{p:.9}")
}

fn fmt_value(v: Complex64) -> String {
    if v.im.abs() <= 1e-12 {
        fmt_prob(v.re)
    } else {
        format!("{}{}{}i", fmt_prob(v.re), if v.im < 0.0 { "-" } else { "+" }, fmt_prob(v.im.abs()))
    }
}

fn write_machine(
    m: &Machine,
    out: Option<&std::path::Path>,
    report: &mut Report,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            save_machine(m, path)?;
            report.info(format!("wrote {} machine to {}", m.kind(), path.display()));
        }
        None => {
            // No --out: the document itself is the result.
            report.result(to_canonical_json(m).trim_end());
        }
    }
    Ok(())
}

fn cmd_prob(
    path: &std::path::Path,
    word_text: &str,
    outcome: Option<&str>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let machine = load_machine(path)?;
    let word = parse_word(word_text, machine.alphabet())?;
    // Per-outcome probability table; "other" is unhalted mass left behind by
    // a measure-many run.
    let table: Vec<(String, f64)> = match &machine {
        Machine::Dfa(d) => {
            let acc = d.accepts(&word)?;
            vec![("a".into(), f64::from(acc)), ("r".into(), f64::from(!acc))]
        }
        Machine::Mo(m) => {
            let p = m.accept_prob(&word)?;
            vec![("a".into(), p), ("r".into(), 1.0 - p)]
        }
        Machine::Mm(m) => {
            let (pa, pr) = m.probs(&word)?;
            vec![("a".into(), pa), ("r".into(), pr), ("other".into(), (1.0 - pa - pr).max(0.0))]
        }
        Machine::KLetter(m) => {
            let p = m.accept_prob(&word)?;
            vec![("a".into(), p), ("r".into(), 1.0 - p)]
        }
        Machine::QfaCl(m) => {
            let p = m.accept_prob(&word)?;
            vec![("a".into(), p), ("r".into(), 1.0 - p)]
        }
        Machine::Qfac(m) => {
            let probs = m.outcome_probs(&word)?;
            m.outcomes().iter().cloned().zip(probs).collect()
        }
        Machine::Blm(b) => {
            // A bilinear machine yields a value, not a distribution.
            let v = b.word_fn(&word)?;
            report.result(format!("value: {}", fmt_value(v)));
            return Ok(u8::from(v.re < 0.5));
        }
    };
    for (label, p) in &table {
        report.result(format!("{label}: {}", fmt_prob(*p)));
    }
    let wanted = outcome.unwrap_or("a");
    let Some((_, p)) = table.iter().find(|(label, _)| label == wanted) else {
        let labels: Vec<&str> = table.iter().map(|(l, _)| l.as_str()).collect();
        return Err(
            format!("outcome {wanted:?} not found; available: {}", labels.join(", ")).into()
        );
    };
    Ok(u8::from(*p < 0.5))
}

fn cmd_trace(path: &std::path::Path, word_text: &str, report: &mut Report) -> Result<u8, CliError> {
    let machine = load_machine(path)?;
    let Machine::Qfac(m) = &machine else {
        return Err(format!("trace requires a qfac document, got {}", machine.kind()).into());
    };
    let word = parse_word(word_text, m.alphabet())?;
    let trace = m.run_trace(&word)?;
    let path_str: Vec<String> = trace.classical_path.iter().map(|s| s.to_string()).collect();
    report.result(format!("classical path: {}", path_str.join(" -> ")));
    for (i, q) in trace.quantum_path.iter().enumerate() {
        let amps: Vec<String> = q.iter().map(|&v| fmt_value(v)).collect();
        report.info(format!("psi after {i} symbols: [{}]", amps.join(", ")));
    }
    for (label, p) in m.outcomes().iter().zip(&trace.outcome_distribution) {
        report.result(format!("{label}: {}", fmt_prob(*p)));
    }
    Ok(0)
}

/// One decision plus the outcome label its witness separates (qfac only).
struct Decision {
    verdict: EquivalenceVerdict,
    outcome: Option<String>,
}

fn cmd_equiv(
    path_a: &std::path::Path,
    path_b: &std::path::Path,
    outcome: Option<&str>,
    tol: Option<f64>,
    max_len: Option<usize>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let tol = resolve_tol(tol)?;
    let ma = load_machine(path_a)?;
    let mb = load_machine(path_b)?;
    match (&ma, &mb) {
        (Machine::Qfac(a), Machine::Qfac(b)) => equiv_qfac(a, b, outcome, tol, max_len, report),
        (Machine::Blm(a), Machine::Blm(b)) => equiv_blm(a, b, tol, max_len, report),
        _ => Err(format!(
            "equiv compares two qfac or two blm documents, got {} and {}",
            ma.kind(),
            mb.kind()
        )
        .into()),
    }
}

fn equiv_qfac(
    a: &Qfac,
    b: &Qfac,
    outcome: Option<&str>,
    tol: f64,
    max_len: Option<usize>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let decision = match outcome {
        Some(o) => {
            let verdict = qfac_equivalent(a, b, o, tol)?;
            Decision { verdict, outcome: Some(o.to_string()) }
        }
        None => {
            let (verdict, failing) = qfac_equivalent_all(a, b, tol)?;
            Decision { verdict, outcome: failing }
        }
    };
    let alphabet = a.alphabet().to_vec();
    let code = report_verdict(&decision, &alphabet, report, |w, label| {
        Ok((fmt_prob(a.outcome_prob(w, label)?), fmt_prob(b.outcome_prob(w, label)?)))
    })?;
    if let Some(n) = max_len {
        let outcomes: Vec<String> = match outcome {
            Some(o) => vec![o.to_string()],
            None => a.outcomes().to_vec(),
        };
        let mut brute_witness: Option<(Vec<usize>, String)> = None;
        for o in &outcomes {
            if let Some(w) = brute_force_k_equiv(a, b, o, n, tol)? {
                brute_witness = Some((w, o.clone()));
                break;
            }
        }
        report_confirmation(&decision, brute_witness, n, &alphabet, report);
    }
    Ok(code)
}

fn equiv_blm(
    a: &Blm,
    b: &Blm,
    tol: f64,
    max_len: Option<usize>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let verdict = blm_equivalent(a, b, tol)?;
    let decision = Decision { verdict, outcome: None };
    let alphabet = a.alphabet().to_vec();
    let code = report_verdict(&decision, &alphabet, report, |w, _| {
        Ok((fmt_value(a.word_fn(w)?), fmt_value(b.word_fn(w)?)))
    })?;
    if let Some(n) = max_len {
        let brute = blm_brute_force(a, b, n, tol)?.map(|w| (w, "value".to_string()));
        report_confirmation(&decision, brute, n, &alphabet, report);
    }
    Ok(code)
}

fn report_verdict(
    d: &Decision,
    alphabet: &[String],
    report: &mut Report,
    values_at: impl Fn(&[usize], &str) -> Result<(String, String), CliError>,
) -> Result<u8, CliError> {
    match &d.verdict.witness {
        None => {
            report.result("verdict: equivalent");
            report.info(format!(
                "basis size {}, word length bound {}",
                d.verdict.basis_size, d.verdict.length_bound
            ));
            Ok(0)
        }
        Some(w) => {
            match &d.outcome {
                Some(o) => report.result(format!("verdict: inequivalent on outcome {o:?}")),
                None => report.result("verdict: inequivalent"),
            }
            let label = d.outcome.as_deref().unwrap_or("value");
            let (va, vb) = values_at(w, label)?;
            report.result(format!("witness: \"{}\"", format_word(w, alphabet)));
            report.result(format!("{label} on witness: a={va} b={vb}"));
            Ok(1)
        }
    }
}

/// Cross-checks the algebraic verdict against an exhaustive search. A brute
/// witness under an "equivalent" verdict (or the reverse within the searched
/// range) means the tolerance is unstable for these machines.
fn report_confirmation(
    d: &Decision,
    brute: Option<(Vec<usize>, String)>,
    max_len: usize,
    alphabet: &[String],
    report: &mut Report,
) {
    let decided_equivalent = d.verdict.witness.is_none();
    match (decided_equivalent, brute) {
        (true, None) => {
            report.info(format!("confirmation: no difference on words of length <= {max_len}"));
        }
        (true, Some((w, o))) => {
            report.result(format!(
                "confirmation MISMATCH: exhaustive search found witness \"{}\" on {o:?} \
                 but the decision was 'equivalent'; the tolerance is unstable here",
                format_word(&w, alphabet)
            ));
        }
        (false, Some((w, _))) => {
            report.info(format!(
                "confirmation: exhaustive search agrees (witness \"{}\")",
                format_word(&w, alphabet)
            ));
        }
        (false, None) => {
            let wlen = d.verdict.witness.as_ref().map(Vec::len).unwrap_or(0);
            if wlen > max_len {
                report.info(format!(
                    "confirmation: searched length <= {max_len}, shortest witness has length {wlen}"
                ));
            } else {
                report.result(
                    "confirmation MISMATCH: the decision witness is inside the searched range \
                     but exhaustive search found nothing; the tolerance is unstable here",
                );
            }
        }
    }
}

fn blm_brute_force(
    a: &Blm,
    b: &Blm,
    max_len: usize,
    tol: f64,
) -> Result<Option<Vec<usize>>, CliError> {
    if a.alphabet() != b.alphabet() {
        return Err("machines have different alphabets".into());
    }
    for w in words_up_to(a.alphabet().len(), max_len) {
        if (a.word_fn(&w)? - b.word_fn(&w)?).norm() > tol {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn cmd_oracle_equiv(
    path_a: &std::path::Path,
    path_b: &std::path::Path,
    max_len: usize,
    outcome: Option<&str>,
    tol: Option<f64>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let tol = resolve_tol(tol)?;
    let ma = load_machine(path_a)?;
    let mb = load_machine(path_b)?;
    let (witness, alphabet, describe) = match (&ma, &mb) {
        (Machine::Qfac(a), Machine::Qfac(b)) => {
            let o = outcome.unwrap_or("a");
            let w = brute_force_k_equiv(a, b, o, max_len, tol)?;
            let line = match &w {
                Some(w) => Some(format!(
                    "{o} on witness: a={} b={}",
                    fmt_prob(a.outcome_prob(w, o)?),
                    fmt_prob(b.outcome_prob(w, o)?)
                )),
                None => None,
            };
            (w, a.alphabet().to_vec(), line)
        }
        (Machine::Blm(a), Machine::Blm(b)) => {
            let w = blm_brute_force(a, b, max_len, tol)?;
            let line = match &w {
                Some(w) => Some(format!(
                    "value on witness: a={} b={}",
                    fmt_value(a.word_fn(w)?),
                    fmt_value(b.word_fn(w)?)
                )),
                None => None,
            };
            (w, a.alphabet().to_vec(), line)
        }
        _ => {
            return Err(format!(
                "oracle-equiv compares two qfac or two blm documents, got {} and {}",
                ma.kind(),
                mb.kind()
            )
            .into())
        }
    };
    match witness {
        None => {
            report.result(format!("no difference on words of length <= {max_len}"));
            Ok(0)
        }
        Some(w) => {
            report.result(format!("witness: \"{}\"", format_word(&w, &alphabet)));
            if let Some(line) = describe {
                report.result(line);
            }
            Ok(1)
        }
    }
}

fn parse_alphabet(s: &str) -> Vec<String> {
    if s.contains(',') {
        s.split(',').map(str::to_string).collect()
    } else {
        s.chars().map(|c| c.to_string()).collect()
    }
}

fn cmd_construct(cmd: ConstructCmd, report: &mut Report) -> Result<u8, CliError> {
    let (machine, out): (Machine, Option<PathBuf>) = match cmd {
        ConstructCmd::L0 { out } => (build_l0_dfa().into(), out),
        ConstructCmd::L0m { m, out } => (build_l0m_dfa(m)?.into(), out),
        ConstructCmd::Lzm { z, m, alphabet, out } => {
            let alphabet = parse_alphabet(&alphabet);
            let z = parse_word(&z, &alphabet)?;
            (build_lzm_dfa(&z, m, alphabet)?.into(), out)
        }
        ConstructCmd::Rotation { m, alphabet, out } => {
            (build_rotation_mo1qfa(m, parse_alphabet(&alphabet))?.into(), out)
        }
        ConstructCmd::Dfa2Qfac { dfa, out } => {
            let m = load_machine(&dfa)?;
            let Machine::Dfa(d) = &m else {
                return Err(format!("dfa2qfac requires a dfa document, got {}", m.kind()).into());
            };
            (dfa_to_qfac(d).into(), out)
        }
        ConstructCmd::Combine { dfa, qfa, op, out } => {
            let md = load_machine(&dfa)?;
            let Machine::Dfa(d) = &md else {
                return Err(format!("combine requires a dfa document, got {}", md.kind()).into());
            };
            let mq = load_machine(&qfa)?;
            let Machine::Mo(q) = &mq else {
                return Err(
                    format!("combine requires a mo1qfa document, got {}", mq.kind()).into()
                );
            };
            (combine(d, q, SetOp::parse(&op)?)?.into(), out)
        }
    };
    write_machine(&machine, out.as_deref(), report)?;
    Ok(0)
}

fn cmd_analyze(
    path: &std::path::Path,
    minimize: bool,
    f_construction: bool,
    mm_blocker: bool,
    out: Option<&std::path::Path>,
    report: &mut Report,
) -> Result<u8, CliError> {
    let machine = load_machine(path)?;
    let Machine::Dfa(d) = &machine else {
        return Err(format!("analyze requires a dfa document, got {}", machine.kind()).into());
    };
    let all = !(minimize || f_construction || mm_blocker);
    let minimal = minimize_dfa(d);
    if minimize || all {
        report.result(format!("input: {} states", d.state_count()));
        report.result(format!("minimal: {} states", minimal.state_count()));
    }
    if let Some(p) = out {
        save_machine(&minimal.clone().into(), p)?;
        report.info(format!("wrote minimal dfa to {}", p.display()));
    }
    let alphabet = d.alphabet();
    let mut obstructed = false;
    if (f_construction || mm_blocker || all) && d.state_count() != minimal.state_count() {
        report.info("detectors run on the minimal automaton");
    }
    if f_construction || all {
        match find_f_construction(&minimal)? {
            Some(w) => {
                obstructed = true;
                report.result(format!(
                    "f-construction: q1={} q2={} t=\"{}\" z=\"{}\"",
                    w.q1,
                    w.q2,
                    format_word(&w.t, alphabet),
                    format_word(&w.z, alphabet)
                ));
                report.result("multi-letter acceptability: no (an F-construction exists)");
            }
            None => {
                report.result("f-construction: none");
                report.result("multi-letter acceptability: yes (no F-construction)");
            }
        }
    }
    if mm_blocker || all {
        match find_mm_blocker(&minimal)? {
            Some(w) => {
                obstructed = true;
                report.result(format!(
                    "mm-blocker: p={} q={} x=\"{}\" y=\"{}\" d=\"{}\"",
                    w.p,
                    w.q,
                    format_word(&w.x, alphabet),
                    format_word(&w.y, alphabet),
                    format_word(&w.d, alphabet)
                ));
                report.result("measure-many acceptability: no (a blocker exists)");
            }
            None => {
                report.result("mm-blocker: none");
                report.result("measure-many acceptability: inconclusive (no blocker found)");
            }
        }
    }
    Ok(u8::from(obstructed))
}

fn cmd_validate(path: &std::path::Path, report: &mut Report) -> Result<u8, CliError> {
    let machine = load_machine(path)?;
    report.result(format!("ok: kind={}", machine.kind()));
    report.info(format!("alphabet: {}", machine.alphabet().join(", ")));
    Ok(0)
}
