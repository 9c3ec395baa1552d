use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lieps::catalog::Builtin;
use lieps::document::{AlgebraDocument, LoadError};
use lieps::expr;
use lieps::foliation;
use lieps::invariants;
use lieps::poisson::{self, Bivector};
use lieps::reductive::{self, ConnectionKind, ReductivePair};
use lieps::{IsotropyModel, Matrix, Rational};

#[derive(Parser)]
#[command(name = "lieps", version, about = "Invariant Poisson structures on homogeneous spaces")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra document and check the isotropy data.
    Validate { file: String },
    /// Basis of the invariant bivectors on g/h.
    Invariants { file: String },
    /// Nonzero entries of the Yang–Baxter tensor of an invariant bivector.
    Ybe {
        file: String,
        #[arg(long)]
        r: String,
    },
    /// Evaluate the r-matrix test on the invariant basis, pairwise sums and extra points.
    Scan {
        file: String,
        /// Additional candidate bivectors.
        #[arg(long)]
        r: Vec<String>,
    },
    /// Leaf algebra, leaf cocycle and decomposition of an r-matrix.
    Leaf {
        file: String,
        #[arg(long)]
        r: String,
    },
    /// Contravariant connection of a given kind with torsion, curvature and compatibility.
    Connection {
        file: String,
        #[arg(long)]
        r: String,
        #[arg(long, default_value = "fedosov")]
        kind: ConnectionKind,
    },
    /// Emit a builtin algebra document.
    Example {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        /// Inner family for `double`.
        #[arg(long)]
        of: Option<String>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<lieps::Error> for Failure {
    fn from(e: lieps::Error) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(e) => Failure::parse(e.to_string()),
            LoadError::Domain(e) => Failure::domain(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?, fmt),
        Command::Invariants { file } => invariants_cmd(&load(file)?, fmt),
        Command::Ybe { file, r } => {
            let doc = load(file)?;
            let iso = doc.model()?;
            ybe(&iso, &bivector(&iso, r)?, fmt)
        }
        Command::Scan { file, r } => {
            let iso = load(file)?.model()?;
            let extra = r.iter().map(|t| Ok((t.clone(), bivector(&iso, t)?))).collect::<Result<Vec<_>, Failure>>()?;
            scan(&iso, &extra, fmt)
        }
        Command::Leaf { file, r } => {
            let iso = load(file)?.model()?;
            leaf(&iso, &bivector(&iso, r)?, fmt)
        }
        Command::Connection { file, r, kind } => {
            let iso = load(file)?.model()?;
            let r = bivector(&iso, r)?;
            connection(iso, &r, *kind, fmt)
        }
        Command::Example { name, n, of } => {
            let builtin = Builtin::from_name(name, *n, of.as_deref()).map_err(Failure::parse)?;
            Ok(builtin.document().to_json() + "\n")
        }
    }
}

fn load(file: &str) -> Result<AlgebraDocument, Failure> {
    let text = if file == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::parse(format!("reading standard input: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::parse(format!("reading {file}: {e}")))?
    };
    AlgebraDocument::parse(&text).map_err(|e| Failure::parse(e.to_string()))
}

fn bivector(iso: &IsotropyModel<Rational>, text: &str) -> Result<Bivector<Rational>, Failure> {
    expr::parse_bivector(text, &iso.complement_labels()).map_err(|e| Failure::parse(format!("--r: {e}")))
}

fn require_invariant(iso: &IsotropyModel<Rational>, r: &Bivector<Rational>) -> Result<(), Failure> {
    if poisson::is_invariant(iso, r) {
        Ok(())
    } else {
        Err(lieps::Error::NotInvariant.into())
    }
}

fn dual_labels(iso: &IsotropyModel<Rational>) -> Vec<String> {
    iso.complement_labels().into_iter().map(|l| format!("{l}*")).collect()
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    json!(m.row_vectors().iter().map(|r| strings(r)).collect::<Vec<_>>())
}

fn matrix_text(m: &Matrix<Rational>, indent: &str) -> String {
    let mut out = String::new();
    for row in m.row_vectors() {
        let _ = writeln!(out, "{indent}{}", strings(&row).join(" "));
    }
    out
}

fn emit(fmt: Format, value: Value, text: String) -> Outcome {
    match fmt {
        Format::Json => Ok(serde_json::to_string_pretty(&value).expect("json values serialize") + "\n"),
        Format::Text => Ok(text),
    }
}

fn validate(doc: &AlgebraDocument, fmt: Format) -> Outcome {
    let iso = doc.model()?;
    let reductive = reductive::check_reductive(&iso);
    let symmetric = reductive && reductive::is_symmetric(&iso);
    let value = json!({
        "name": doc.name,
        "dim": iso.dim_g(),
        "dim_h": iso.dim_h(),
        "codim": iso.codim(),
        "generators": iso.generators().len(),
        "complement": iso.complement_labels(),
        "reductive": reductive,
        "symmetric": symmetric,
    });
    let text = format!(
        "ok {}\ndim {} dim_h {} codim {}\ngenerators {}\ncomplement {}\nreductive {reductive}\nsymmetric {symmetric}\n",
        doc.name,
        iso.dim_g(),
        iso.dim_h(),
        iso.codim(),
        iso.generators().len(),
        iso.complement_labels().join(" "),
    );
    emit(fmt, value, text)
}

fn invariants_cmd(doc: &AlgebraDocument, fmt: Format) -> Outcome {
    let iso = doc.model()?;
    let labels = iso.complement_labels();
    let inv = invariants::invariant_bivectors(&iso);
    let basis: Vec<String> = inv.bivectors().iter().map(|r| expr::format_bivector(r, &labels)).collect();
    let coords: Vec<Vec<String>> = inv.space().basis().iter().map(|v| strings(v)).collect();
    let value = json!({ "dim": inv.dim(), "basis": basis, "coordinates": coords });
    let mut text = format!("dim {}\n", inv.dim());
    for b in &basis {
        let _ = writeln!(text, "{b}");
    }
    emit(fmt, value, text)
}

fn ybe(iso: &IsotropyModel<Rational>, r: &Bivector<Rational>, fmt: Format) -> Outcome {
    require_invariant(iso, r)?;
    let duals = dual_labels(iso);
    let t = poisson::yang_baxter_tensor(iso, r);
    let entries = t.nonzero_entries();
    let listed: Vec<Value> = entries
        .iter()
        .map(|((a, b, c), v)| json!({ "args": [duals[*a], duals[*b], duals[*c]], "value": v.to_string() }))
        .collect();
    let value = json!({ "r_matrix": entries.is_empty(), "nonzero": listed });
    let mut text = String::new();
    if entries.is_empty() {
        text.push_str("r-matrix\n");
    } else {
        text.push_str("not an r-matrix\n");
        for ((a, b, c), v) in &entries {
            let _ = writeln!(text, "[[r,r]]({}, {}, {}) = {v}", duals[*a], duals[*b], duals[*c]);
        }
    }
    emit(fmt, value, text)
}

fn scan(iso: &IsotropyModel<Rational>, extra: &[(String, Bivector<Rational>)], fmt: Format) -> Outcome {
    let labels = iso.complement_labels();
    let basis = invariants::invariant_bivectors(iso).bivectors();
    let mut candidates: Vec<(String, Bivector<Rational>)> = Vec::new();
    for (i, r) in basis.iter().enumerate() {
        candidates.push((format!("b{}", i + 1), r.clone()));
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push((format!("b{}+b{}", i + 1, j + 1), basis[i].add(&basis[j])));
        }
    }
    for (text, r) in extra {
        require_invariant(iso, r).map_err(|_| Failure::domain(format!("candidate `{text}` is not invariant")))?;
        candidates.push((text.clone(), r.clone()));
    }
    let rows: Vec<(String, String, bool)> = candidates
        .into_iter()
        .map(|(name, r)| {
            let ok = poisson::is_r_matrix(iso, &r);
            (name, expr::format_bivector(&r, &labels), ok)
        })
        .collect();
    let value = json!({
        "invariant_dim": basis.len(),
        "candidates": rows
            .iter()
            .map(|(name, r, ok)| json!({ "name": name, "bivector": r, "r_matrix": ok }))
            .collect::<Vec<_>>(),
    });
    let mut text = format!("invariant dim {}\n", basis.len());
    for (name, r, ok) in &rows {
        let _ = writeln!(text, "{name}\t{}\t{r}", if *ok { "r-matrix" } else { "no" });
    }
    emit(fmt, value, text)
}

fn leaf(iso: &IsotropyModel<Rational>, r: &Bivector<Rational>, fmt: Format) -> Outcome {
    require_invariant(iso, r)?;
    if !poisson::is_r_matrix(iso, r) {
        return Err(lieps::Error::NotAnRMatrix.into());
    }
    let g_labels = iso.algebra().labels();
    let data = foliation::leaf_cocycle(iso, r)?;
    let dec = foliation::leaf_decomposition(iso, r)?;
    let basis: Vec<String> = data.basis().iter().map(|v| expr::format_vector(v, g_labels)).collect();
    let radical_is_h = &data.radical() == iso.h();
    let im: Vec<String> = dec.im_part.basis().iter().map(|v| expr::format_vector(v, g_labels)).collect();
    let value = json!({
        "dim": data.dim(),
        "basis": basis,
        "omega": matrix_json(data.omega()),
        "radical_is_h": radical_is_h,
        "image": im,
        "reductive": dec.reductive,
        "symmetric": dec.symmetric,
    });
    let mut text = format!("leaf algebra dim {}\n", data.dim());
    for b in &basis {
        let _ = writeln!(text, "  {b}");
    }
    text.push_str("omega\n");
    text.push_str(&matrix_text(data.omega(), "  "));
    let _ = writeln!(text, "radical = h {radical_is_h}");
    let _ = writeln!(text, "image {}", im.join(", "));
    let _ = writeln!(text, "reductive {}\nsymmetric {}", dec.reductive, dec.symmetric);
    emit(fmt, value, text)
}

fn connection(iso: IsotropyModel<Rational>, r: &Bivector<Rational>, kind: ConnectionKind, fmt: Format) -> Outcome {
    require_invariant(&iso, r)?;
    if !poisson::is_r_matrix(&iso, r) {
        return Err(lieps::Error::NotAnRMatrix.into());
    }
    let duals = dual_labels(&iso);
    let pair = ReductivePair::new(iso)?;
    let b = reductive::build_connection(kind, &pair, r);
    let m = pair.dim_m();
    let mut entries = Vec::new();
    for a in 0..m {
        for c in 0..m {
            entries.push(((a, c), expr::format_vector(b.get(a, c), &duals)));
        }
    }
    let torsion: Vec<((usize, usize), String)> = reductive::torsion_table(&pair, r, &b)
        .into_iter()
        .map(|(ij, t)| (ij, expr::format_vector(&t, &duals)))
        .collect();
    let curvature = reductive::curvature_table(&pair, r, &b);
    let torsion_free = torsion.iter().all(|(_, t)| t == "0");
    let flat = curvature.iter().all(|(_, z)| *z);
    let compatible = reductive::poisson_compat(r, &b);
    let f_connection = reductive::is_f_connection(&b, r);
    let invariant = reductive::ad_invariance_check(&b, &pair);
    let pair_json = |(i, j): (usize, usize)| json!([duals[i], duals[j]]);
    let value = json!({
        "kind": kind.name(),
        "b": entries.iter().map(|(ij, v)| json!({ "args": pair_json(*ij), "value": v })).collect::<Vec<_>>(),
        "torsion": torsion.iter().map(|(ij, v)| json!({ "args": pair_json(*ij), "value": v })).collect::<Vec<_>>(),
        "curvature_zero": curvature.iter().map(|(ij, z)| json!({ "args": pair_json(*ij), "zero": z })).collect::<Vec<_>>(),
        "torsion_free": torsion_free,
        "flat": flat,
        "poisson_compatible": compatible,
        "f_connection": f_connection,
        "invariant": invariant,
    });
    let mut text = format!("kind {}\n", kind.name());
    for ((a, c), v) in &entries {
        let _ = writeln!(text, "b({}, {}) = {v}", duals[*a], duals[*c]);
    }
    text.push_str("torsion\n");
    for ((i, j), v) in &torsion {
        let _ = writeln!(text, "  T({}, {}) = {v}", duals[*i], duals[*j]);
    }
    text.push_str("curvature\n");
    for ((i, j), z) in &curvature {
        let _ = writeln!(text, "  R({}, {}) {}", duals[*i], duals[*j], if *z { "zero" } else { "nonzero" });
    }
    let _ = writeln!(
        text,
        "torsion-free {torsion_free}\nflat {flat}\npoisson-compatible {compatible}\nf-connection {f_connection}\ninvariant {invariant}"
    );
    emit(fmt, value, text)
}
