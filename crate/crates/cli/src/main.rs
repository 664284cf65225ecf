//! `lmapper`: decorated mapper graphs and cosheaf checks from the command line.
//!
//! Exit codes: 0 success, 1 usage error or failed check, 2 validation error
//! (inadmissible cover, nerve not a graph), 3 parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use leray_mapper::convergence::{
    continuous_extension, convergence_table, nested_pairs, pl_preimage_dims, verify_proposition,
    ConvergenceError, TableParams, Window,
};
use leray_mapper::cosheaf::{
    build_cellular_leray, build_decorated_mapper, default_max_deg, CosheafError,
};
use leray_mapper::cover::{nerve, CoverError};
use leray_mapper::homology::homology;
use leray_mapper::io::{parse_complex, CoverFile, GraphJson, ParseError};
use leray_mapper::simplicial::preimage_subcomplex;
use leray_mapper::{
    Cover, Field, FieldKind, Gf2, OpenInterval, Rational, ScalarField, SimplicialComplex,
};

#[derive(Parser)]
#[command(
    name = "lmapper",
    version,
    about = "Decorated mapper graphs and cellular Leray cosheaves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the decorated mapper graph and write it as JSON (and DOT).
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Compare the continuous extension at an interval with the homology of
    /// the preimage.
    Query {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        interval: Vec<f64>,
    },
    /// Check the Mayer–Vietoris squares on seeded nested interval pairs.
    VerifyProp {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Refine uniform covers and tabulate agreement with preimage homology.
    Converge {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, default_value_t = FieldKind::Gf2)]
        field: FieldKind,
        #[arg(long)]
        max_deg: Option<usize>,
        #[arg(long, default_value_t = 2)]
        base_n: usize,
        #[arg(long, default_value_t = 0.45)]
        overlap: f64,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print the nerve of a cover.
    Nerve {
        #[arg(long)]
        cover: PathBuf,
        /// Supplies the range for `uniform` covers without explicit bounds.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    complex: PathBuf,
    #[arg(long)]
    cover: PathBuf,
    #[arg(long, default_value_t = FieldKind::Gf2)]
    field: FieldKind,
    #[arg(long)]
    max_deg: Option<usize>,
}

enum Failure {
    Usage(String),
    Check(String),
    Validation(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Check(_) => 1,
            Failure::Validation(_) => 2,
            Failure::Parse(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Check(m) | Failure::Validation(m) | Failure::Parse(m) => m,
        }
    }
}

impl From<CosheafError> for Failure {
    fn from(e: CosheafError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure::Validation(e.to_string())
    }
}

impl From<ConvergenceError> for Failure {
    fn from(e: ConvergenceError) -> Self {
        match e {
            ConvergenceError::NotAdmissible(_) | ConvergenceError::Cover(_) => {
                Failure::Validation(e.to_string())
            }
            ConvergenceError::InvalidParams(_) | ConvergenceError::NotNested(..) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_failure(path: &Path, e: ParseError) -> Failure {
    Failure::Parse(format!("{}:{}: {}", path.display(), e.line, e.message))
}

fn load_complex(path: &Path) -> Result<(Arc<SimplicialComplex>, ScalarField), Failure> {
    let (x, f) = parse_complex(&read(path)?).map_err(|e| parse_failure(path, e))?;
    Ok((Arc::new(x), f))
}

fn load_cover(path: &Path, f: Option<&ScalarField>) -> Result<Cover, Failure> {
    let cover = CoverFile::parse(&read(path)?).map_err(|e| parse_failure(path, e))?;
    Ok(cover.resolve(f)?)
}

struct Loaded {
    x: Arc<SimplicialComplex>,
    f: ScalarField,
    cover: Cover,
    max_deg: usize,
}

fn load(input: &Input) -> Result<Loaded, Failure> {
    let (x, f) = load_complex(&input.complex)?;
    let cover = load_cover(&input.cover, Some(&f))?;
    let max_deg = input.max_deg.unwrap_or_else(|| default_max_deg(&x));
    Ok(Loaded {
        x,
        f,
        cover,
        max_deg,
    })
}

fn dims(v: &[usize]) -> String {
    let s: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("[{}]", s.join(", "))
}

fn build<F: Field>(l: &Loaded, out: &Path, dot: Option<&Path>) -> Result<(), Failure> {
    let g = build_decorated_mapper::<F>(&l.x, &l.f, &l.cover, l.max_deg)?;
    let json = GraphJson::from_graph(&g);
    write(out, &json.emit())?;
    if let Some(p) = dot {
        write(p, &json.to_dot())?;
    }
    println!("nodes {}  edges {}", json.nodes.len(), json.edges.len());
    for n in &json.nodes {
        println!("  n{}  U{}  betti {}", n.id, n.cover_index, dims(&n.betti));
    }
    Ok(())
}

fn query<F: Field>(l: &Loaded, v: OpenInterval) -> Result<(), Failure> {
    let d = build_cellular_leray::<F>(&l.x, &l.f, &l.cover, l.max_deg)?;
    let ext = continuous_extension(&d, &v)?;
    let c = ext.dims();
    let pl = pl_preimage_dims::<F>(&l.x, &l.f, &Window::new(&v), l.max_deg);
    let combinatorial = homology::<F>(&preimage_subcomplex(&l.x, &l.f, &v), l.max_deg).dims();
    println!("V = ({}, {})", v.lo, v.hi);
    println!(
        "K_V vertices {:?} edges {:?}",
        ext.sub_nerve.vertices, ext.sub_nerve.edges
    );
    println!("C(V)      {}", dims(&c));
    println!("L(V)      {}", dims(&pl));
    println!("L_comb(V) {}", dims(&combinatorial));
    println!("{}", if c == pl { "MATCH" } else { "MISMATCH" });
    Ok(())
}

fn verify_prop<F: Field>(l: &Loaded, samples: usize, seed: u64) -> Result<(), Failure> {
    let d = build_cellular_leray::<F>(&l.x, &l.f, &l.cover, l.max_deg)?;
    println!(
        "{:>4}  {:<28} {:<28} {:<12} {:<12} {:<8}",
        "#", "V", "W", "dims V", "dims W", "result"
    );
    let mut failed = 0;
    for (k, (v, w)) in nested_pairs(&l.f, samples, seed).into_iter().enumerate() {
        let r = verify_proposition(&d, &v, &w)?;
        let ok = r.passed();
        failed += usize::from(!ok);
        println!(
            "{:>4}  {:<28} {:<28} {:<12} {:<12} {:<8}",
            k,
            format!("({:.4}, {:.4})", v.lo, v.hi),
            format!("({:.4}, {:.4})", w.lo, w.hi),
            dims(&r.dims_v),
            dims(&r.dims_w),
            if ok { "pass" } else { "FAIL" }
        );
    }
    println!("{} of {samples} passed", samples - failed);
    if failed > 0 {
        return Err(Failure::Check(format!("{failed} samples failed")));
    }
    Ok(())
}

fn converge<F: Field>(
    x: &Arc<SimplicialComplex>,
    f: &ScalarField,
    p: &TableParams,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    let t = convergence_table::<F>(x, f, p)?;
    println!("critical values {:?}", t.critical_values);
    println!(
        "{:>5} {:>6} {:>12} {:>10} {:>8} {:>11} {:>13}",
        "level", "size", "resolution", "admissible", "samples", "mismatches", "interleaving"
    );
    for r in &t.rows {
        println!(
            "{:>5} {:>6} {:>12.6} {:>10} {:>8} {:>11} {:>13}",
            r.level,
            r.cover_size,
            r.resolution,
            r.admissible,
            r.samples,
            r.mismatches.map_or("-".into(), |m| m.to_string()),
            r.interleaving
                .map_or("-", |b| if b { "pass" } else { "FAIL" }),
        );
    }
    if let Some(p) = csv {
        write(p, &t.to_csv())?;
    }
    if t.rows.iter().any(|r| r.interleaving == Some(false)) {
        return Err(Failure::Check("interleaving check failed".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { input, out, dot } => {
            let l = load(&input)?;
            match input.field {
                FieldKind::Gf2 => build::<Gf2>(&l, &out, dot.as_deref()),
                FieldKind::Rational => build::<Rational>(&l, &out, dot.as_deref()),
            }
        }
        Command::Query { input, interval } => {
            let l = load(&input)?;
            let v = OpenInterval::new(interval[0], interval[1])
                .map_err(|e| Failure::Usage(e.to_string()))?;
            match input.field {
                FieldKind::Gf2 => query::<Gf2>(&l, v),
                FieldKind::Rational => query::<Rational>(&l, v),
            }
        }
        Command::VerifyProp {
            input,
            samples,
            seed,
        } => {
            let l = load(&input)?;
            match input.field {
                FieldKind::Gf2 => verify_prop::<Gf2>(&l, samples, seed),
                FieldKind::Rational => verify_prop::<Rational>(&l, samples, seed),
            }
        }
        Command::Converge {
            complex,
            field,
            max_deg,
            base_n,
            overlap,
            levels,
            samples,
            seed,
            csv,
        } => {
            let (x, f) = load_complex(&complex)?;
            let p = TableParams {
                base_n,
                overlap,
                levels,
                samples,
                seed,
                max_deg: max_deg.unwrap_or_else(|| default_max_deg(&x)),
            };
            match field {
                FieldKind::Gf2 => converge::<Gf2>(&x, &f, &p, csv.as_deref()),
                FieldKind::Rational => converge::<Rational>(&x, &f, &p, csv.as_deref()),
            }
        }
        Command::Nerve { cover, complex } => {
            let f = complex
                .as_deref()
                .map(load_complex)
                .transpose()?
                .map(|(_, f)| f);
            let c = load_cover(&cover, f.as_ref())?;
            let n = nerve(&c)?;
            println!("vertices {}", n.vertex_count());
            for (k, u) in c.elements().iter().enumerate() {
                println!("  {k}: ({}, {})", u.lo, u.hi);
            }
            println!("edges {}", n.edge_count());
            for &(i, j) in n.edges() {
                println!("  {i} -- {j}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
