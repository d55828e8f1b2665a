//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on input or usage errors, 2 when the
//! computation succeeded but the answer is negative (a refuted inequality or a
//! violated bound). Results go to stdout or `--out`; diagnostics to stderr.
//! JSON objects have sorted keys and every float is rounded to 12 significant
//! digits, so identical inputs give byte-identical output.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{self, BoundsReport, Inequality};
use crate::dist::{Configuration, JointTable, Shape, SubsetMask};
use crate::error::{Error, Result};
use crate::estimate::{estimated_rates, read_sequence};
use crate::markov::MarkovModel;
use crate::maximizer::{classify_optimum, maximize, MaximizeConfig, Objective};
use crate::measures::{binding_by_accumulation, pir_profile, MeasureReport};
use crate::processes::{
    giant_bit_process, independent_uniform, known_state, modulo_process, random_simplex,
};
use crate::prover::{self, MeasureCombination, ProofOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "bindinfo",
    version,
    about = "Binding information and related measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entropy, multi-information, binding information and residual entropy of a joint table.
    Measure(MeasureArgs),
    /// Write a canonical joint table.
    Process(ProcessArgs),
    /// Rates and identity checks for a stationary Markov chain.
    Markov(MarkovArgs),
    /// Check the seven linear bounds on one table or a random batch.
    Bounds(BoundsArgs),
    /// Prove or refute `expr >= 0` for a linear combination of H, I and B.
    Prove(ProveArgs),
    /// Maximize binding or multi-information over the simplex.
    Maximize(MaximizeArgs),
    /// Plug-in block estimates from a symbol sequence.
    Estimate(EstimateArgs),
    /// Draw a sequence from a Markov chain.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Joint table file; stdin when omitted or `-`.
    #[arg(long)]
    pub joint: Option<PathBuf>,
    /// 1-based variable order for the accumulated profile, e.g. `1,3,2`.
    #[arg(long, value_delimiter = ',')]
    pub ordering: Option<Vec<usize>>,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProcessKind {
    Parity,
    Modulo,
    GiantBit,
    Independent,
    Known,
    Random,
}

#[derive(Debug, Args)]
pub struct ProcessArgs {
    /// Which canonical distribution to build.
    #[arg(long, value_enum)]
    pub kind: ProcessKind,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Alphabet size.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Residue for parity/modulo.
    #[arg(long, default_value_t = 0)]
    pub m: usize,
    /// 1-based variables that are 1 in the second giant-bit state; all by default.
    #[arg(long, value_delimiter = ',')]
    pub ones: Option<Vec<usize>>,
    /// Symbols of the known state; all zero by default.
    #[arg(long, value_delimiter = ',')]
    pub state: Option<Vec<usize>>,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MarkovArgs {
    /// Transition matrix file: `K`, then `K` rows of `K` probabilities.
    #[arg(long)]
    pub transition: PathBuf,
    /// Largest block length.
    #[arg(long, default_value_t = 8)]
    pub nmax: usize,
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Joint table file; stdin when neither this nor `--random` is given.
    #[arg(long, conflicts_with = "random")]
    pub joint: Option<PathBuf>,
    /// Check uniform-simplex samples instead of one table.
    #[arg(long, requires_all = ["n", "k"])]
    pub random: bool,
    /// Number of variables.
    #[arg(long)]
    pub n: Option<usize>,
    /// Alphabet size.
    #[arg(long)]
    pub k: Option<usize>,
    /// Number of random tables.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write violating rows (CSV, with seeds) here when any bound fails.
    #[arg(long)]
    pub violations: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ProveArgs {
    /// Linear combination of B, I and H with coefficients affine in N, e.g. `(N-1)B-I`.
    #[arg(long)]
    pub target: String,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Use the full elemental cone instead of the symmetric one (N <= 6).
    #[arg(long)]
    pub general: bool,
    /// Also write the proof or refutation JSON to this file.
    #[arg(long)]
    pub emit_certificate: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ObjectiveArg {
    Binding,
    Multi,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    /// Quantity to maximize.
    #[arg(long, value_enum, default_value = "binding")]
    pub objective: ObjectiveArg,
    /// Number of variables.
    #[arg(long)]
    pub n: usize,
    /// Alphabet size.
    #[arg(long)]
    pub k: usize,
    /// Independent random starts.
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Iteration cap per start.
    #[arg(long, default_value_t = 5000)]
    pub max_iters: usize,
    /// Stop when the projected gradient norm falls below this.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Write the best table here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// Whitespace-separated symbols in `0..K`.
    #[arg(long)]
    pub data: PathBuf,
    /// Alphabet size.
    #[arg(long)]
    pub k: usize,
    /// Largest block length.
    #[arg(long, default_value_t = 4)]
    pub nmax: usize,
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Transition matrix file: `K`, then `K` rows of `K` probabilities.
    #[arg(long)]
    pub transition: PathBuf,
    /// Number of symbols.
    #[arg(long)]
    pub length: usize,
    /// Base RNG seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

pub fn run_with<I, T>(
    args: I,
    input: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let mut io = Streams { input, out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            1
        }
    }
}

struct Streams<'a> {
    input: &'a mut dyn Read,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read_joint(&mut self, path: Option<&Path>) -> Result<JointTable> {
        let text = match path {
            Some(p) if p != Path::new("-") => std::fs::read_to_string(p)?,
            _ => {
                let mut s = String::new();
                self.input.read_to_string(&mut s)?;
                s
            }
        };
        JointTable::from_text(&text)
    }

    /// Writes to `path` via a sibling temporary file, or to stdout.
    fn emit(&mut self, path: Option<&Path>, text: &str) -> Result<()> {
        match path {
            Some(p) => write_atomically(p, text),
            None => Ok(self.out.write_all(text.as_bytes())?),
        }
    }
}

fn write_atomically(path: &Path, text: &str) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn dispatch(command: Command, io: &mut Streams<'_>) -> Result<i32> {
    match command {
        Command::Measure(a) => measure(a, io),
        Command::Process(a) => process(a, io),
        Command::Markov(a) => markov(a, io),
        Command::Bounds(a) => bounds(a, io),
        Command::Prove(a) => prove(a, io),
        Command::Maximize(a) => maximize_cmd(a, io),
        Command::Estimate(a) => estimate(a, io),
        Command::Sample(a) => sample(a, io),
    }
}

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if !(n.is_i64() || n.is_u64()) => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round12(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => {
            Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect())
        }
        other => other,
    }
}

/// Pretty JSON with sorted keys and rounded floats, plus a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let mut s =
        serde_json::to_string_pretty(&round_value(v)).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A number as it appears in CSV output.
pub fn csv_number(x: f64) -> String {
    match serde_json::Number::from_f64(round12(x)) {
        Some(n) => n.to_string(),
        None => x.to_string(),
    }
}

fn csv_row(cells: impl IntoIterator<Item = String>) -> String {
    let mut line = cells.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn zero_based(ordering: &[usize], n: usize) -> Result<Vec<usize>> {
    ordering
        .iter()
        .map(|&i| {
            if i == 0 || i > n {
                Err(Error::NotAPermutation(n))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn measure(a: MeasureArgs, io: &mut Streams<'_>) -> Result<i32> {
    let joint = io.read_joint(a.joint.as_deref())?;
    let report = MeasureReport::compute(&joint)?;
    let profile = match &a.ordering {
        Some(o) => {
            let order = zero_based(o, joint.n_vars())?;
            Some((
                pir_profile(&joint, &order)?,
                binding_by_accumulation(&joint, &order)?,
            ))
        }
        None => None,
    };
    let text = match a.format {
        Format::Json => {
            let mut v = serde_json::to_value(&report).map_err(|e| Error::Parse(e.to_string()))?;
            v["n"] = json!(joint.n_vars());
            v["k"] = json!(joint.alphabet_size());
            if let Some((p, b)) = &profile {
                v["pir_profile"] = json!(p);
                v["binding_by_accumulation"] = json!(b);
            }
            to_json(&v)?
        }
        Format::Csv => {
            let n = joint.n_vars();
            let mut header: Vec<String> = [
                "n",
                "k",
                "joint_entropy",
                "multi_information",
                "binding_information",
                "residual_entropy",
            ]
            .map(String::from)
            .to_vec();
            header.extend((1..=n).map(|i| format!("entropy_{i}")));
            let mut row = vec![n.to_string(), joint.alphabet_size().to_string()];
            row.extend(
                [
                    report.joint_entropy,
                    report.multi_information,
                    report.binding_information,
                    report.residual_entropy,
                ]
                .into_iter()
                .chain(report.per_variable_entropies.iter().copied())
                .map(csv_number),
            );
            if let Some((p, b)) = &profile {
                header.extend((1..=n).map(|i| format!("pir_{i}")));
                header.push("binding_by_accumulation".into());
                row.extend(p.iter().copied().map(csv_number));
                row.push(csv_number(*b));
            }
            csv_row(header) + &csv_row(row)
        }
    };
    io.emit(None, &text)?;
    Ok(0)
}

fn process(a: ProcessArgs, io: &mut Streams<'_>) -> Result<i32> {
    let table = match a.kind {
        ProcessKind::Parity | ProcessKind::Modulo => modulo_process(a.n, a.k, a.m)?,
        ProcessKind::GiantBit => {
            let ones = match &a.ones {
                Some(v) => SubsetMask::from_indices(&zero_based(v, a.n)?),
                None => SubsetMask::full(a.n),
            };
            giant_bit_process(a.n, ones)?
        }
        ProcessKind::Independent => independent_uniform(a.n, a.k)?,
        ProcessKind::Known => {
            let state = a.state.clone().unwrap_or_else(|| vec![0; a.n]);
            known_state(a.n, a.k, &Configuration::new(state))?
        }
        ProcessKind::Random => random_simplex(Shape::new(a.n, a.k)?, a.seed),
    };
    io.emit(a.out.as_deref(), &table.to_text())?;
    Ok(0)
}

fn markov(a: MarkovArgs, io: &mut Streams<'_>) -> Result<i32> {
    let model = MarkovModel::from_text(&std::fs::read_to_string(&a.transition)?)?;
    let rates = model.rates();
    let checks = model.identity_checks(a.nmax)?;
    let text = match a.format {
        Format::Json => to_json(&json!({
            "k": model.k(),
            "stationary": model.stationary(),
            "rates": rates,
            "identity_checks": checks,
        }))?,
        Format::Csv => {
            let mut s = csv_row(
                [
                    "n",
                    "block_entropy",
                    "multi_information",
                    "predictive_information",
                    "extensive_entropy_residual",
                    "extensive_multi_information_residual",
                ]
                .map(String::from),
            );
            for r in &checks.rows {
                s += &csv_row(
                    std::iter::once(r.n.to_string()).chain(
                        [
                            r.block_entropy,
                            r.multi_information,
                            r.predictive_information,
                            r.extensive_entropy_residual,
                            r.extensive_multi_information_residual,
                        ]
                        .map(csv_number),
                    ),
                );
            }
            s
        }
    };
    io.emit(None, &text)?;
    Ok(0)
}

fn margin_column(which: Inequality) -> String {
    let v = serde_json::to_value(which).expect("unit variant serializes");
    format!("margin_{}", v.as_str().expect("string"))
}

fn bounds_row(seed: Option<u64>, r: &BoundsReport) -> String {
    let cells = seed.map(|s| s.to_string()).into_iter().chain(
        [r.joint_entropy, r.multi_information, r.binding_information]
            .into_iter()
            .chain(r.margins())
            .map(csv_number),
    );
    csv_row(cells)
}

fn bounds(a: BoundsArgs, io: &mut Streams<'_>) -> Result<i32> {
    let rows: Vec<(Option<u64>, BoundsReport)> = if a.random {
        let n =
            a.n.ok_or_else(|| Error::Parse("--random needs --n".into()))?;
        let k =
            a.k.ok_or_else(|| Error::Parse("--random needs --k".into()))?;
        bounds::random_batch(n, k, a.samples, a.seed)?
            .into_iter()
            .map(|r| (Some(r.seed), r.report))
            .collect()
    } else {
        let joint = io.read_joint(a.joint.as_deref())?;
        vec![(None, bounds::check_bounds(&joint)?)]
    };

    let mut header: Vec<String> = Vec::with_capacity(11);
    if a.random {
        header.push("seed".into());
    }
    header.extend(["joint_entropy", "multi_information", "binding_information"].map(String::from));
    header.extend(Inequality::ALL.iter().map(|&i| margin_column(i)));
    let header = csv_row(header);

    let text = match a.format {
        Format::Csv => {
            let mut s = header.clone();
            for (seed, r) in &rows {
                s += &bounds_row(*seed, r);
            }
            s
        }
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(seed, r)| {
                    let mut v = serde_json::to_value(r).expect("report serializes");
                    if let Some(s) = seed {
                        v["seed"] = json!(s);
                    }
                    v
                })
                .collect();
            if a.random {
                to_json(&items)?
            } else {
                to_json(&items[0])?
            }
        }
    };
    io.emit(a.out.as_deref(), &text)?;

    let mut dump = header;
    let mut violated = false;
    for (seed, r) in &rows {
        if r.all_satisfied() {
            continue;
        }
        violated = true;
        dump += &bounds_row(*seed, r);
        for rec in r.records.iter().filter(|rec| !rec.satisfied) {
            let origin = seed.map_or(String::new(), |s| format!(" (seed {s})"));
            let _ = writeln!(
                io.err,
                "violation{origin}: {} lhs={} rhs={} margin={:e}",
                rec.name, rec.lhs, rec.rhs, rec.margin
            );
        }
    }
    if violated {
        if let Some(p) = &a.violations {
            write_atomically(p, &dump)?;
        }
    }
    Ok(if violated { 2 } else { 0 })
}

fn prove(a: ProveArgs, io: &mut Streams<'_>) -> Result<i32> {
    let combo = MeasureCombination::parse(&a.target)?;
    let (outcome, verified) = if a.general {
        let target = combo.functional(a.n)?;
        let outcome = prover::prove_general(&target)?;
        let ok = match &outcome {
            ProofOutcome::Proven(c) => prover::verify_certificate(&target, c)?,
            ProofOutcome::Refuted(r) => r.check_general(&target),
        };
        (outcome, ok)
    } else {
        let target = combo.symmetric_functional(a.n)?;
        let outcome = prover::prove_symmetric(&target)?;
        let ok = match &outcome {
            ProofOutcome::Proven(c) => prover::verify_symmetric_certificate(&target, c)?,
            ProofOutcome::Refuted(r) => r.check_symmetric(&target),
        };
        (outcome, ok)
    };
    let mut v = serde_json::to_value(&outcome).map_err(|e| Error::Parse(e.to_string()))?;
    v["target"] = json!(combo.to_string());
    v["verified"] = json!(verified);
    let text = to_json(&v)?;
    if let Some(p) = &a.emit_certificate {
        write_atomically(p, &text)?;
    }
    io.emit(None, &text)?;
    if !verified {
        let _ = writeln!(io.err, "error: result failed independent verification");
        return Ok(1);
    }
    Ok(if outcome.is_proven() { 0 } else { 2 })
}

fn maximize_cmd(a: MaximizeArgs, io: &mut Streams<'_>) -> Result<i32> {
    let objective = match a.objective {
        ObjectiveArg::Binding => Objective::Binding,
        ObjectiveArg::Multi => Objective::Multi,
    };
    let config = MaximizeConfig {
        restarts: a.restarts,
        max_iters: a.max_iters,
        tol: a.tol,
        seed: a.seed,
        ..MaximizeConfig::default()
    };
    let result = maximize(objective, a.n, a.k, &config)?;
    let cap = objective.cap(result.best_table.shape());
    let diagnosis = classify_optimum(&result.best_table, 1e-3)?;
    if let Some(p) = &a.out {
        write_atomically(p, &result.best_table.to_text())?;
    }
    let text = to_json(&json!({
        "n": a.n,
        "k": a.k,
        "result": result,
        "cap": cap,
        "fraction_of_cap": result.best_value / cap,
        "diagnosis": diagnosis,
    }))?;
    io.emit(None, &text)?;
    Ok(0)
}

fn estimate(a: EstimateArgs, io: &mut Streams<'_>) -> Result<i32> {
    let seq = read_sequence(&a.data, a.k)?;
    let report = estimated_rates(&seq, a.nmax)?;
    let text = match a.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut s = csv_row(
                [
                    "n",
                    "block_entropy",
                    "entropy_rate",
                    "excess_entropy",
                    "multi_information_rate",
                ]
                .map(String::from),
            );
            for r in &report.rows {
                s += &csv_row(
                    std::iter::once(r.n.to_string()).chain(
                        [
                            r.block_entropy,
                            r.entropy_rate,
                            r.excess_entropy,
                            r.multi_information_rate,
                        ]
                        .map(csv_number),
                    ),
                );
            }
            s
        }
    };
    let _ = writeln!(
        io.err,
        "{} symbols, binding information of the {}-block {:.6} bits, {:.1} windows per state",
        report.length, report.n_max, report.binding_information, report.windows_per_state
    );
    io.emit(None, &text)?;
    Ok(0)
}

fn sample(a: SampleArgs, io: &mut Streams<'_>) -> Result<i32> {
    let model = MarkovModel::from_text(&std::fs::read_to_string(&a.transition)?)?;
    let symbols = model.sample(a.length, a.seed);
    let mut text = String::with_capacity(symbols.len() * 2);
    for s in symbols {
        text.push_str(&s.to_string());
        text.push('\n');
    }
    io.emit(a.out.as_deref(), &text)?;
    Ok(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bindinfo").chain(args.iter().copied());
        let code = run_with(argv, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rounding() {
        assert_eq!(round12(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(round12(1e-17), 1e-17);
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(csv_number(5.000000000000001), "5.0");
        assert_eq!(round12(2.0f64 / 3.0), 0.666666666667);
    }

    #[test]
    fn parity_pipeline() {
        let (code, table, _) = run_capture(&["process", "--kind", "parity", "--n", "6"], "");
        assert_eq!(code, 0);
        let (code, json, _) = run_capture(&["measure"], &table);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["binding_information"], json!(5.0));
        assert_eq!(v["multi_information"], json!(1.0));
        assert_eq!(v["joint_entropy"], json!(5.0));
    }

    #[test]
    fn ordering_is_one_based() {
        let (_, table, _) = run_capture(&["process", "--kind", "giant-bit", "--n", "3"], "");
        let (code, json, _) = run_capture(&["measure", "--ordering", "3,1,2"], &table);
        assert_eq!(code, 0, "{json}");
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["binding_by_accumulation"], json!(1.0));
        let (code, _, err) = run_capture(&["measure", "--ordering", "0,1,2"], &table);
        assert_eq!(code, 1);
        assert!(err.contains("permutation"), "{err}");
    }

    #[test]
    fn bounds_columns_and_exit() {
        let (code, csv, _) = run_capture(
            &[
                "bounds",
                "--random",
                "--n",
                "3",
                "--k",
                "2",
                "--samples",
                "5",
                "--seed",
                "4",
            ],
            "",
        );
        assert_eq!(code, 0);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 6);
        assert!(lines.iter().all(|l| l.split(',').count() == 11));
        assert!(lines[0].starts_with("seed,joint_entropy"));

        let (_, table, _) = run_capture(&["process", "--kind", "independent", "--n", "3"], "");
        let (code, csv, _) = run_capture(&["bounds"], &table);
        assert_eq!(code, 0);
        assert!(csv.lines().all(|l| l.split(',').count() == 10));
    }

    #[test]
    fn prove_exit_codes() {
        let (code, json, _) = run_capture(&["prove", "--target", "(N-1)B-I", "--n", "3"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["status"], json!("proven"));
        assert_eq!(v["verified"], json!(true));
        let (code, json, _) = run_capture(&["prove", "--target", "I-B", "--n", "3"], "");
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["value"], json!("-1/1"));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_capture(&["frobnicate"], "").0, 1);
        assert_eq!(run_capture(&["process", "--n", "3"], "").0, 1);
        assert_eq!(run_capture(&["measure"], "not a table").0, 1);
        let (code, out, _) = run_capture(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("measure"));
    }
}
