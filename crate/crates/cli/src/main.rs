use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hochcomp::cochain::Cochain;
use hochcomp::cohomology::Cohomology;
use hochcomp::comparison::Comparison;
use hochcomp::field::format_scalar;
use hochcomp::gerstenhaber::{bracket, cup, product_table, Product};
use hochcomp::verify::{verify_algebra, VerifyConfig};
use hochcomp::{format_input, parse_input, BardzellResolution, Error, Field, MonomialAlgebra};

mod table;

use table::Table;

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "hochcomp", version, about = "Exact Hochschild cohomology of monomial path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args)]
struct Input {
    /// Quiver file.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct ProductArgs {
    #[command(flatten)]
    input: Input,
    /// Degree of the left operand.
    n: usize,
    /// Degree of the right operand.
    m: usize,
    /// Cochain file for the left operand, then for the right one; operands
    /// without a file range over the representatives of their degree.
    #[arg(long = "cochain-file")]
    cochain_files: Vec<PathBuf>,
    #[arg(long, default_value = "rational")]
    field: Field,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a quiver file and check its relations.
    Validate {
        #[command(flatten)]
        input: Input,
        /// Print the input in canonical form.
        #[arg(long)]
        echo: bool,
    },
    /// List the path basis of the algebra.
    Basis {
        #[command(flatten)]
        input: Input,
    },
    /// List AP_n for every n up to the maximal degree.
    Resolution {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_degree: usize,
    },
    /// Dimensions of HH^n and optionally their representatives.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_degree: usize,
        /// `rational` or `p:<prime>`.
        #[arg(long, default_value = "rational")]
        field: Field,
        #[arg(long)]
        representatives: bool,
    },
    /// Cup product HH^n × HH^m → HH^{n+m}.
    Cup(ProductArgs),
    /// Gerstenhaber bracket HH^n × HH^m → HH^{n+m-1}.
    Bracket(ProductArgs),
    /// Run every verification suite.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max_degree: usize,
        /// Number of random bar tensors per sampled suite.
        #[arg(long, default_value_t = 1000)]
        sample_budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on the total length of exhaustively checked bar tensors.
        #[arg(long, default_value_t = 10)]
        length_bound: usize,
        #[arg(long, default_value = "rational")]
        field: Field,
    },
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::AmbiguousMinimum { .. } | Error::Verification(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Arc<MonomialAlgebra>, Failure> {
    let text = read(&input.file)?;
    let inp = parse_input(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?;
    let alg = MonomialAlgebra::new(inp.quiver, inp.relations)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?;
    Ok(Arc::new(alg))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable output") + "\n"
}

#[derive(Serialize)]
struct ValidateJson {
    schema: u32,
    vertices: usize,
    arrows: usize,
    relations: usize,
    dimension: usize,
}

fn validate(input: &Input, echo: bool) -> Outcome {
    let alg = load(input)?;
    if echo {
        let text = read(&input.file)?;
        return Ok((format_input(&parse_input(&text)?), true));
    }
    let q = alg.quiver();
    let summary = ValidateJson {
        schema: SCHEMA,
        vertices: q.num_vertices(),
        arrows: q.num_arrows(),
        relations: alg.relations().len(),
        dimension: alg.dim(),
    };
    Ok(match input.format {
        Format::Json => (json(&summary), true),
        Format::Table => (
            format!(
                "ok: {} vertices, {} arrows, {} relations, dim A = {}\n",
                summary.vertices, summary.arrows, summary.relations, summary.dimension
            ),
            true,
        ),
    })
}

#[derive(Serialize)]
struct BasisJson {
    id: usize,
    path: String,
    length: usize,
    source: usize,
    target: usize,
}

fn basis(input: &Input) -> Outcome {
    let alg = load(input)?;
    let rows: Vec<BasisJson> = alg
        .basis()
        .iter()
        .enumerate()
        .map(|(id, p)| BasisJson {
            id,
            path: alg.quiver().label(p),
            length: p.len(),
            source: p.source() + 1,
            target: p.target() + 1,
        })
        .collect();
    Ok(match input.format {
        Format::Json => (json(&serde_json::json!({ "schema": SCHEMA, "dimension": rows.len(), "basis": rows })), true),
        Format::Table => {
            let mut t = Table::new(&["id", "path", "length", "source", "target"]);
            for r in &rows {
                t.row(vec![
                    r.id.to_string(),
                    r.path.clone(),
                    r.length.to_string(),
                    r.source.to_string(),
                    r.target.to_string(),
                ]);
            }
            (format!("dim A = {}\n{}", rows.len(), t.render()), true)
        }
    })
}

#[derive(Serialize)]
struct ApJson {
    degree: usize,
    label: String,
    support: String,
    offsets: Vec<usize>,
}

fn resolution(input: &Input, max_degree: usize) -> Outcome {
    let alg = load(input)?;
    let res = BardzellResolution::new(alg.clone(), max_degree);
    let rows: Vec<ApJson> = (0..=max_degree)
        .flat_map(|n| {
            let res = &res;
            res.ap(n).iter().enumerate().map(move |(i, w)| ApJson {
                degree: n,
                label: res.label(n, i),
                support: res.algebra().quiver().label(&w.support),
                offsets: w.left_chain.iter().map(|s| s.0).collect(),
            })
        })
        .collect();
    Ok(match input.format {
        Format::Json => (
            json(&serde_json::json!({ "schema": SCHEMA, "max_degree": max_degree, "elements": rows })),
            true,
        ),
        Format::Table => {
            let mut t = Table::new(&["n", "support", "offsets", "label"]);
            for r in &rows {
                let offsets: Vec<String> = r.offsets.iter().map(|o| o.to_string()).collect();
                t.row(vec![r.degree.to_string(), r.support.clone(), offsets.join(","), r.label.clone()]);
            }
            let sizes: Vec<String> = (0..=max_degree).map(|n| format!("|AP_{n}| = {}", res.ap(n).len())).collect();
            (format!("{}\n{}", sizes.join(", "), t.render()), true)
        }
    })
}

#[derive(Serialize)]
struct TermJson {
    ap: String,
    value: String,
}

fn cochain_json(res: &BardzellResolution, f: &Cochain) -> Vec<TermJson> {
    f.values()
        .map(|(&w, v)| TermJson {
            ap: res.label(f.degree, w),
            value: res.algebra().format_element(v),
        })
        .collect()
}

#[derive(Serialize)]
struct GeneratorJson {
    label: String,
    cochain: Vec<TermJson>,
}

#[derive(Serialize)]
struct DegreeJson {
    degree: usize,
    hom_dimension: usize,
    rank_in: usize,
    rank_out: usize,
    dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<GeneratorJson>>,
}

fn cohomology(input: &Input, max_degree: usize, field: Field, reps: bool) -> Outcome {
    let alg = load(input)?;
    let res = Arc::new(BardzellResolution::new(alg, max_degree + 1));
    let hh = Cohomology::compute(res.clone(), field, max_degree)?;
    let degrees: Vec<DegreeJson> = (0..=max_degree)
        .map(|n| {
            let d = hh.degree(n);
            DegreeJson {
                degree: n,
                hom_dimension: d.hom.len(),
                rank_in: d.rank_in,
                rank_out: d.rank_out,
                dimension: d.dimension,
                representatives: reps.then(|| {
                    d.representatives
                        .iter()
                        .enumerate()
                        .map(|(k, f)| GeneratorJson {
                            label: Cohomology::generator_label(n, k),
                            cochain: cochain_json(&res, f),
                        })
                        .collect()
                }),
            }
        })
        .collect();
    Ok(match input.format {
        Format::Json => (
            json(&serde_json::json!({
                "schema": SCHEMA,
                "field": field,
                "max_degree": max_degree,
                "degrees": degrees,
            })),
            true,
        ),
        Format::Table => {
            let mut t = Table::new(&["n", "dim Hom_n", "rank d^n", "rank d^n+1", "dim HH^n"]);
            for d in &degrees {
                t.row(vec![
                    d.degree.to_string(),
                    d.hom_dimension.to_string(),
                    d.rank_in.to_string(),
                    d.rank_out.to_string(),
                    d.dimension.to_string(),
                ]);
            }
            let mut out = format!("field: {field}\n{}", t.render());
            for d in &degrees {
                for g in d.representatives.iter().flatten() {
                    let terms: Vec<String> = g.cochain.iter().map(|c| format!("{} ↦ {}", c.ap, c.value)).collect();
                    writeln!(out, "{} = {}", g.label, if terms.is_empty() { "0".into() } else { terms.join("; ") })
                        .unwrap();
                }
            }
            (out, true)
        }
    })
}

#[derive(Serialize)]
struct ProductJson {
    left: String,
    right: String,
    product: Vec<TermJson>,
    /// Class coordinates, absent when the product is not a cocycle.
    class: Option<Vec<String>>,
}

fn product(args: &ProductArgs, which: Product) -> Outcome {
    let (n, m) = (args.n, args.m);
    let name = match which {
        Product::Cup => "cup",
        Product::Bracket => "bracket",
    };
    let target = match which {
        Product::Cup => n + m,
        Product::Bracket if n >= 1 && m >= 1 => n + m - 1,
        Product::Bracket => return Err(Failure::Input("bracket needs degrees n, m >= 1".into())),
    };
    if args.cochain_files.len() > 2 {
        return Err(Failure::Input("at most two --cochain-file arguments".into()));
    }
    let top = target.max(n).max(m);
    let alg = load(&args.input)?;
    let res = Arc::new(BardzellResolution::new(alg, top + 1));
    let cmp = Comparison::new(res.clone());
    let hh = Cohomology::compute(res.clone(), args.field, top)?;

    if args.cochain_files.is_empty() {
        let t = product_table(&cmp, &hh, which, n, m)?;
        return Ok(match args.input.format {
            Format::Json => (json(&serde_json::json!({ "schema": SCHEMA, "field": args.field, "table": t })), true),
            Format::Table => {
                let mut tab = Table::new(&["left", "right", &format!("class in HH^{target}")]);
                for e in &t.entries {
                    let coords: Vec<String> = t
                        .target_generators
                        .iter()
                        .zip(&e.coordinates)
                        .filter(|(_, c)| c.as_str() != "0")
                        .map(|(g, c)| format!("{c}*{g}"))
                        .collect();
                    let class = if coords.is_empty() { "0".to_string() } else { coords.join(" + ") };
                    tab.row(vec![e.left.clone(), e.right.clone(), class]);
                }
                let header = format!("{name} HH^{n} × HH^{m} → HH^{target}, field {}\n", args.field);
                (header + &tab.render(), true)
            }
        });
    }

    let operand = |k: usize, degree: usize| -> Result<Vec<(String, Cochain)>, Failure> {
        match args.cochain_files.get(k) {
            Some(path) => {
                let f = Cochain::from_text(&res, &read(path)?)
                    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                if f.degree != degree {
                    return Err(Failure::Input(format!(
                        "{}: cochain has degree {}, expected {degree}",
                        path.display(),
                        f.degree
                    )));
                }
                Ok(vec![(path.display().to_string(), f)])
            }
            None => Ok(hh
                .representatives(degree)
                .iter()
                .enumerate()
                .map(|(i, f)| (Cohomology::generator_label(degree, i), f.clone()))
                .collect()),
        }
    };
    let lefts = operand(0, n)?;
    let rights = operand(1, m)?;
    let mut results = Vec::new();
    for (ln, f) in &lefts {
        for (rn, g) in &rights {
            let p = match which {
                Product::Cup => cup(&cmp, f, g)?,
                Product::Bracket => bracket(&cmp, f, g)?,
            }
            .reduce(args.field)?;
            let class = hh.class_of(&p)?.map(|c| c.iter().map(format_scalar).collect());
            results.push(ProductJson {
                left: ln.clone(),
                right: rn.clone(),
                product: cochain_json(&res, &p),
                class,
            });
        }
    }
    Ok(match args.input.format {
        Format::Json => (
            json(&serde_json::json!({
                "schema": SCHEMA,
                "field": args.field,
                "product": name,
                "degrees": [n, m],
                "target_degree": target,
                "results": results,
            })),
            true,
        ),
        Format::Table => {
            let mut tab = Table::new(&["left", "right", "cochain", &format!("class in HH^{target}")]);
            for r in &results {
                let terms: Vec<String> = r.product.iter().map(|c| format!("{} ↦ {}", c.ap, c.value)).collect();
                let class = match &r.class {
                    Some(c) => format!("({})", c.join(", ")),
                    None => "not a cocycle".into(),
                };
                let cochain = if terms.is_empty() { "0".into() } else { terms.join("; ") };
                tab.row(vec![r.left.clone(), r.right.clone(), cochain, class]);
            }
            let header = format!("{name} HH^{n} × HH^{m} → HH^{target}, field {}\n", args.field);
            (header + &tab.render(), true)
        }
    })
}

fn verify(input: &Input, cfg: VerifyConfig) -> Outcome {
    let alg = load(input)?;
    let report = verify_algebra(alg, &cfg)?;
    let text = match input.format {
        Format::Json => json(&report),
        Format::Table => {
            let mut t = Table::new(&["suite", "checked", "result", "counterexample"]);
            for c in &report.checks {
                t.row(vec![
                    c.name.clone(),
                    c.checked.to_string(),
                    if c.passed { "pass" } else { "FAIL" }.into(),
                    c.counterexample.clone().unwrap_or_default(),
                ]);
            }
            let verdict = if report.passed { "all suites passed" } else { "verification FAILED" };
            format!("{}{verdict}\n", t.render())
        }
    };
    Ok((text, report.passed))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("HOCHCOMP_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("HOCHCOMP_THREADS must be a positive integer, got `{value}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Validate { input, echo } => validate(&input, echo),
        Command::Basis { input } => basis(&input),
        Command::Resolution { input, max_degree } => resolution(&input, max_degree),
        Command::Cohomology {
            input,
            max_degree,
            field,
            representatives,
        } => cohomology(&input, max_degree, field, representatives),
        Command::Cup(args) => product(&args, Product::Cup),
        Command::Bracket(args) => product(&args, Product::Bracket),
        Command::Verify {
            input,
            max_degree,
            sample_budget,
            seed,
            length_bound,
            field,
        } => verify(
            &input,
            VerifyConfig {
                max_degree,
                sample_budget,
                seed,
                length_bound,
                field,
            },
        ),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    match run(Cli::parse()) {
        Ok((text, passed)) => {
            print!("{text}");
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
