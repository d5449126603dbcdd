use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use hopfq::document::{
    analyze as analyze_document, verify_report, AnalysisReport, ParsedState, StateDocument,
};
use hopfq::hopf_s7::{bell_state, mes_state, omega_mes_state};
use hopfq::sampling::{
    random_product_state, random_two_qubit_state, random_unit_quaternion, seeded_rng,
};
use hopfq::viz::{ball_cloud, fiber_clouds, foliation_sweep, Pole, Sweep};
use hopfq::{ComplexOrInfinity, Error, C64};
use rand::Rng;

use crate::output::{cloud_csv, cloud_json, to_json, write_atomic, CloudFormat};
use crate::{CloudKind, GenerateKind, GlobalOpts};

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Normalization(String),
    Oracle(String),
    Io(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Self::Input(_) => 1,
            Self::Normalization(_) => 2,
            Self::Oracle(_) => 3,
            Self::Io(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(m) => write!(f, "invalid input: {m}"),
            Self::Normalization(m) => write!(f, "normalization failure: {m}"),
            Self::Oracle(m) => write!(f, "oracle mismatch: {m}"),
            Self::Io(m) => write!(f, "i/o failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotNormalized { .. } | Error::ZeroNorm => Self::Normalization(e.to_string()),
            Error::OracleMismatch(m) => Self::Oracle(m),
            other => Self::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn BufRead>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

/// Reads a stream of JSON values: NDJSON or concatenated/pretty documents.
fn json_values(
    reader: Box<dyn BufRead>,
) -> impl Iterator<Item = Result<serde_json::Value, Failure>> {
    serde_json::Deserializer::from_reader(reader)
        .into_iter::<serde_json::Value>()
        .map(|v| {
            v.map_err(|e| {
                if e.is_io() {
                    Failure::Io(e.to_string())
                } else {
                    Failure::Input(format!("malformed JSON: {e}"))
                }
            })
        })
}

fn emit<T: serde::Serialize>(out: &mut impl Write, value: &T) -> Result<(), Failure> {
    let mut line = to_json(value).map_err(|e| Failure::Io(e.to_string()))?;
    line.push(b'\n');
    out.write_all(&line)?;
    Ok(())
}

pub fn analyze(opts: &GlobalOpts, input: Option<&Path>, check_oracle: bool) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for value in json_values(open_input(input)?) {
        let value = value?;
        let report = if value.get("input").is_some() {
            // a previously produced report: check its claims, or redo it
            let claimed: AnalysisReport = serde_json::from_value(value)
                .map_err(|e| Failure::Input(format!("not an analysis report: {e}")))?;
            if check_oracle {
                verify_report(&claimed, opts.tolerance)?;
                claimed
            } else {
                analyze_document(&claimed.input, opts.chart, opts.normalize, opts.tolerance)?
            }
        } else {
            let doc: StateDocument = serde_json::from_value(value)
                .map_err(|e| Failure::Input(format!("not a state document: {e}")))?;
            let report = analyze_document(&doc, opts.chart, opts.normalize, opts.tolerance)?;
            if check_oracle {
                verify_report(&report, opts.tolerance)?;
            }
            report
        };
        emit(&mut out, &report)?;
    }
    out.flush()?;
    Ok(())
}

pub fn generate(opts: &GlobalOpts, kind: &GenerateKind, count: usize) -> Result<(), Failure> {
    if let GenerateKind::Mes { phase: Some(p) } | GenerateKind::OmegaMes { phase: Some(p), .. } =
        kind
    {
        if !p.is_finite() {
            return Err(Failure::Input("phase must be finite".into()));
        }
    }
    let mut rng = seeded_rng(opts.seed);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    for i in 0..count {
        let (state, label) = match *kind {
            GenerateKind::Bell { index } => {
                let k = index.map_or(i % 4, usize::from);
                (
                    bell_state(k)?,
                    ["phi+", "phi-", "psi+", "psi-"][k].to_string(),
                )
            }
            GenerateKind::Mes { phase } => {
                let phase = phase.unwrap_or_else(|| {
                    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
                });
                (
                    mes_state(phase, random_unit_quaternion(&mut rng))?,
                    "mes".into(),
                )
            }
            GenerateKind::OmegaMes { omega, phase } => {
                let phase = phase.unwrap_or_else(|| {
                    rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
                });
                let s = omega_mes_state(omega, phase, random_unit_quaternion(&mut rng))?;
                (s, format!("omega-mes:{omega}"))
            }
            GenerateKind::Separable => (random_product_state(&mut rng), "separable".into()),
            GenerateKind::Random => (random_two_qubit_state(&mut rng), "random".into()),
        };
        emit(
            &mut out,
            &StateDocument::from_two_qubit(&state, Some(label)),
        )?;
    }
    out.flush()?;
    Ok(())
}

fn parse_base(s: &str) -> Result<ComplexOrInfinity, Failure> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
        return Ok(ComplexOrInfinity::Infinity);
    }
    let parts: Vec<&str> = t.split(',').collect();
    let bad = || Failure::Input(format!("base {s:?} is not RE,IM or inf"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let im: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(ComplexOrInfinity::Finite(C64::new(re, im)))
}

pub fn cloud(
    opts: &GlobalOpts,
    kind: &CloudKind,
    output: Option<&Path>,
    format: CloudFormat,
) -> Result<(), Failure> {
    let output = output.ok_or_else(|| Failure::Input("--output is required".into()))?;
    let cloud = match kind {
        CloudKind::Fiber { bases, samples } => {
            let bases = bases
                .iter()
                .map(|b| parse_base(b))
                .collect::<Result<Vec<_>, _>>()?;
            fiber_clouds(&bases, *samples, Pole::default())?
        }
        CloudKind::Foliation {
            omega,
            concurrence,
            samples,
        } => {
            let sweep = match (omega.is_empty(), concurrence.is_empty()) {
                (false, true) => Sweep::Omega(omega.clone()),
                (true, false) => Sweep::Concurrence(concurrence.clone()),
                _ => {
                    return Err(Failure::Input(
                        "give exactly one of --omega, --concurrence".into(),
                    ))
                }
            };
            foliation_sweep(&sweep, *samples, opts.seed)?
        }
        CloudKind::Ball { input } => {
            let mut states = Vec::new();
            for value in json_values(open_input(input.as_deref())?) {
                let doc: StateDocument = serde_json::from_value(value?)
                    .map_err(|e| Failure::Input(format!("not a state document: {e}")))?;
                match doc.to_state(opts.normalize)? {
                    ParsedState::TwoQubit(s) => states.push(s),
                    ParsedState::Qubit(_) => {
                        return Err(Failure::Input("ball points need two-qubit states".into()))
                    }
                }
            }
            ball_cloud(&states)
        }
    };
    let bytes = match format {
        CloudFormat::Csv => cloud_csv(&cloud),
        CloudFormat::Json => cloud_json(&cloud).map_err(|e| Failure::Io(e.to_string()))?,
    };
    write_atomic(output, &bytes).map_err(|e| Failure::Io(format!("{}: {e}", output.display())))?;
    eprintln!("{} rows", cloud.points.len());
    Ok(())
}
