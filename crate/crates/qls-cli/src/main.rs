use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qls_core::extensions::{catalog, CatalogName};
use qls_core::json::{
    descriptor_from_json, is_descriptor, matrix_input_from_json, orbit_invariant_to_json, qls_from_json, qls_to_json,
    report_to_json, MatrixInput,
};
use qls_core::orbits::{decide_i_isomorphic, enumerate_partitions, orbit_invariant, projective_scale, FormKind};
use qls_core::space::canonical_gram;
use qls_core::{Field, Matrix, QlsError};
use serde_json::{json, Value};
use thiserror::Error;

/// Exact computations with quadratic Lie superalgebras. Every command prints JSON.
#[derive(Parser)]
#[command(name = "qls", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the algebra described by a double-extension descriptor.
    Build {
        #[arg(long)]
        descriptor: PathBuf,
    },
    /// Check the quadratic Lie superalgebra axioms; exits 1 when any fails.
    Check {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Structural invariants: dup-number, type, center, quadratic dimension.
    Classify {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Adjoint-orbit invariant of a skew map.
    Orbit {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: i64,
    },
    /// Compare two skew maps (same orbit) or two descriptors (i-isomorphism).
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Compare skew maps up to a nonzero scalar.
        #[arg(long)]
        projective: bool,
    },
    /// A named algebra such as g4,1s, g6s, j(4), j(2+2), j(4,1/2) or g[2,1,1].
    Catalog {
        #[arg(long)]
        name: String,
    },
    /// Partitions indexing nilpotent orbits of o(m) (eps = 1) or sp(m) (eps = -1).
    Partitions {
        #[arg(long)]
        m: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: i64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Domain(#[from] QlsError),
}

/// A command result: the JSON document and whether it counts as success.
struct Output {
    value: Value,
    success: bool,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, success: true }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn form_kind(eps: i64) -> Result<FormKind, CliError> {
    FormKind::from_sign(eps).map_err(|e| CliError::Input(e.to_string()))
}

/// Resolves the form sign and Gram matrix of a matrix file.
fn resolve(input: MatrixInput, eps: Option<i64>) -> Result<(Matrix, Matrix, FormKind), CliError> {
    let from_gram = input.gram.as_ref().and_then(|g| {
        if g.is_symmetric() {
            Some(FormKind::Orthogonal)
        } else if g.is_antisymmetric() {
            Some(FormKind::Symplectic)
        } else {
            None
        }
    });
    let flag = eps.map(form_kind).transpose()?;
    let kind = match (flag, input.kind) {
        (Some(a), Some(b)) if a != b => return Err(CliError::Input("eps in the file contradicts --eps".into())),
        (Some(k), _) | (None, Some(k)) => k,
        (None, None) => from_gram.ok_or_else(|| CliError::Input("matrix file needs eps or a Gram matrix".into()))?,
    };
    let gram = match input.gram {
        Some(g) => g,
        None => canonical_gram(input.matrix.rows(), kind.sign() as i8)?,
    };
    Ok((input.matrix, gram, kind))
}

fn load_matrix(path: &Path, eps: Option<i64>) -> Result<(Matrix, Matrix, FormKind), CliError> {
    resolve(matrix_input_from_json(&read_json(path)?)?, eps)
}

fn classify(path: &Path) -> Result<Output, CliError> {
    let g = qls_from_json(&read_json(path)?)?;
    let report = g.check_quadratic()?;
    if !report.all_pass() {
        return Err(QlsError::NotQuadratic("the input fails the structure check".into()).into());
    }
    let class = g.classify()?;
    Ok(json!({
        "dup": g.dup_number()?,
        "type": report_to_json(&class.kind),
        "elementary": class.elementary,
        "center_dim": g.center().len(),
        "derived_dim": g.derived_ideal().len(),
        "reduced": g.is_reduced(),
        "quadratic_dimension": g.quadratic_dimension()?,
    })
    .into())
}

fn compare(a: &Path, b: &Path, projective: bool, field: Field) -> Result<Output, CliError> {
    let (va, vb) = (read_json(a)?, read_json(b)?);
    match (is_descriptor(&va), is_descriptor(&vb)) {
        (true, true) => {
            let decision = decide_i_isomorphic(&descriptor_from_json(&va)?, &descriptor_from_json(&vb)?, field)?;
            Ok(report_to_json(&decision).into())
        }
        (false, false) => {
            let (ca, ga, ka) = resolve(matrix_input_from_json(&va)?, None)?;
            let (cb, gb, kb) = resolve(matrix_input_from_json(&vb)?, None)?;
            if ka != kb || ca.rows() != cb.rows() {
                return Ok(json!({"equal": false}).into());
            }
            let ia = orbit_invariant(&ca, &ga, ka, field)?;
            let ib = orbit_invariant(&cb, &gb, kb, field)?;
            let equal = if projective { projective_scale(&[(&ia, &ib)]).is_some() } else { ia == ib };
            Ok(json!({"equal": equal}).into())
        }
        _ => Err(CliError::Input("compare needs two descriptors or two matrix files".into())),
    }
}

fn run(command: Command, field: Field) -> Result<Output, CliError> {
    match command {
        Command::Build { descriptor } => {
            let d = descriptor_from_json(&read_json(&descriptor)?)?;
            Ok(qls_to_json(&d.build()?).into())
        }
        Command::Check { algebra } => {
            let report = qls_from_json(&read_json(&algebra)?)?.check_quadratic()?;
            Ok(Output { success: report.all_pass(), value: report_to_json(&report) })
        }
        Command::Classify { algebra } => classify(&algebra),
        Command::Orbit { matrix, eps } => {
            let (c, gram, kind) = load_matrix(&matrix, Some(eps))?;
            Ok(orbit_invariant_to_json(&orbit_invariant(&c, &gram, kind, field)?).into())
        }
        Command::Compare { a, b, projective } => compare(&a, &b, projective, field),
        Command::Catalog { name } => {
            let name: CatalogName = name.parse().map_err(|e: QlsError| CliError::Input(e.to_string()))?;
            Ok(qls_to_json(&catalog(&name)?).into())
        }
        Command::Partitions { m, eps } => {
            let list = enumerate_partitions(m, form_kind(eps)?)?;
            Ok(report_to_json(&list).into())
        }
    }
}

fn print(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn error_document(code: &str, detail: &str) -> Value {
    json!({"error": code, "detail": detail})
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let field = match Field::from_env() {
        Ok(f) => f,
        Err(e) => {
            print(&error_document("malformed-input", &e.to_string()));
            return ExitCode::from(2);
        }
    };
    match run(cli.command, field) {
        Ok(out) => {
            print(&out.value);
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Input(detail)) => {
            print(&error_document("malformed-input", &detail));
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) if e.is_malformed_input() => {
            print(&error_document(e.code(), &e.to_string()));
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            print(&error_document(e.code(), &e.to_string()));
            ExitCode::from(1)
        }
    }
}
