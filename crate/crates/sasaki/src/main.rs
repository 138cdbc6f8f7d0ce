use std::io::Read as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sasaki::catalog::{catalog, default_lambdas};
use sasaki::format::{form_text, parse_binding_arg, vector_repr, AlgebraFile, DecompositionSpec, ScalarRepr, SeedFile, VectorSpec};
use sasaki::verify::{render_text, verify_all, VerifyOptions};
use sasaki_core::contact::{check_acms, check_sasaki, fundamental_form};
use sasaki_core::reduction::{construct_sasaki, extract_reduction};
use sasaki_core::salamon::print_salamon;
use sasaki_core::standard::{check_rank_one_sasaki, check_standard, check_z_standard, is_pseudo_iwasawa, scan_reeb};
use sasaki_core::Scalar;

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Exact checks for Sasaki and pseudo-Kähler metric Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra and print its normalized structure equations.
    Parse(InputArgs),
    /// Run Jacobi, almost contact metric and Sasaki checks.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        jacobi: bool,
        #[arg(long)]
        acms: bool,
        #[arg(long)]
        sasaki: bool,
    },
    /// Test a decomposition for standardness and the rank-one Sasaki conditions.
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Extract the pseudo-Kähler seed of a z-standard Sasaki algebra.
    Reduce {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Build the z-standard Sasaki extension of a seed file.
    Construct {
        seed: String,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// List or verify the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    Verify {
        /// Glob over entry ids, for example `table1.*`.
        #[arg(long)]
        filter: Option<String>,
        /// Comma-separated λ values, for example `0,1,-1,1/2`.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, conflicts_with = "text")]
        json: bool,
        #[arg(long)]
        text: bool,
        /// Keep wall times in JSON output.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Salamon text or JSON algebra file; `-` reads stdin.
    file: String,
    /// Symbol binding such as `τ=1` or `lambda=1/2`; repeatable.
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Args)]
struct SplitArgs {
    /// Ideal basis: `2,3,4,5` (indices) or `[..];[..]` (coordinates).
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long)]
    e0: Option<String>,
    #[arg(long)]
    xi: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn load(input: &InputArgs) -> Result<AlgebraFile> {
    let mut file = AlgebraFile::from_text(&read_input(&input.file)?)?;
    for b in &input.bind {
        let (k, v) = parse_binding_arg(b)?;
        file.bind.insert(k, v);
    }
    Ok(file)
}

fn vector_list(s: &str) -> Result<Vec<VectorSpec>> {
    let parts: Vec<&str> = if s.contains('[') { s.split(';').collect() } else { s.split(',').collect() };
    Ok(parts.into_iter().map(VectorSpec::parse).collect::<Result<_, _>>()?)
}

/// Command-line split overrides the file's `decomposition`.
fn split_spec(file: &AlgebraFile, split: &SplitArgs) -> Result<DecompositionSpec> {
    let mut spec = file.decomposition.clone().unwrap_or_default();
    if let Some(i) = &split.ideal {
        spec.ideal = vector_list(i)?;
    }
    if let Some(e) = &split.e0 {
        spec.abelian.clear();
        spec.e0 = Some(VectorSpec::parse(e)?);
    }
    if let Some(x) = &split.xi {
        spec.xi = Some(VectorSpec::parse(x)?);
    }
    if spec.ideal.is_empty() {
        bail!("no decomposition: pass --ideal and --e0 or give `decomposition` in the file");
    }
    Ok(spec)
}

/// Reeb vector from the command line, the file, or a unique scan up to sign.
fn reeb(file: &AlgebraFile, spec: &DecompositionSpec, dec: &sasaki_core::standard::Decomposition) -> Result<sasaki_core::Vector> {
    let n = dec.dim();
    if let Some(x) = spec.xi.as_ref().or(file.xi.as_ref()) {
        return Ok(x.to_vector(n)?);
    }
    match scan_reeb(dec)?.as_slice() {
        [] => bail!("no Reeb vector given and none found by the scan"),
        [_, x] | [x] => Ok(x.clone()),
        many => bail!("{} Reeb candidates found; pass --xi", many.len()),
    }
}

fn emit(output: Output, value: Value, text: String) {
    match output {
        Output::Json => println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize")),
        Output::Text => print!("{text}"),
    }
}

fn lines(checks: &[(&str, Value)]) -> String {
    checks.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Parse(input) => {
            let file = load(&input)?;
            let l = file.algebra()?;
            let jacobi = l.jacobi_check().is_ok();
            let salamon = print_salamon(&l);
            let v = json!({ "dim": l.dim(), "salamon": salamon, "jacobi": jacobi });
            emit(input.output, v, format!("{salamon}\ndim: {}\njacobi: {jacobi}\n", l.dim()));
            Ok(true)
        }
        Command::Check { input, jacobi, acms, sasaki } => {
            let all = !(jacobi || acms || sasaki);
            let file = load(&input)?;
            let mut out: Vec<(&str, Value)> = Vec::new();
            let mut ok = true;
            if jacobi || all {
                let j = file.algebra()?.jacobi_check();
                ok &= j.is_ok();
                out.push(("jacobi", json!(j.is_ok())));
                if let Err(e) = j {
                    out.push(("jacobi_defect", json!(e.to_string())));
                }
            }
            if acms || sasaki || all {
                let a = file.structure()?;
                let r = check_acms(&a);
                ok &= r.is_ok();
                out.push(("acms", json!(r.is_ok())));
                if let Err(f) = r {
                    out.push(("acms_failure", json!(format!("{f:?}"))));
                }
                if sasaki || all {
                    let s = check_sasaki(&a)?;
                    ok &= s.verdict && s.characterizations_agree();
                    out.extend([
                        ("normal", json!(s.normal)),
                        ("contact", json!(s.contact)),
                        ("nabla_phi", json!(s.nabla_phi_identity)),
                        ("characterizations_agree", json!(s.characterizations_agree())),
                        ("sasaki", json!(s.verdict)),
                    ]);
                }
            }
            let text = lines(&out);
            emit(input.output, Value::Object(out.into_iter().map(|(k, v)| (k.to_string(), v)).collect()), text);
            Ok(ok)
        }
        Command::Decompose { input, split } => {
            let file = load(&input)?;
            let m = file.metric_algebra()?;
            let spec = split_spec(&file, &split)?;
            let dec = spec.build(&m)?;
            let mut out: Vec<(&str, Value)> = Vec::new();
            let std = check_standard(&dec);
            out.push(("standard", json!(std.is_ok())));
            if let Err(e) = &std {
                out.push(("standard_failure", json!(e.to_string())));
            }
            if std.is_ok() {
                out.push(("pseudo_iwasawa", json!(is_pseudo_iwasawa(&dec))));
            }
            let mut ok = std.is_ok();
            if dec.abelian.len() == 1 {
                let xi = reeb(&file, &spec, &dec)?;
                out.push(("xi", json!(vector_repr(&xi))));
                match check_rank_one_sasaki(&dec, &xi) {
                    Ok(r) => {
                        ok &= r.all_pass();
                        out.push(("rank_one_sasaki", json!(r.all_pass())));
                        out.push(("b", json!(vector_repr(&r.b))));
                        if r.all_pass() {
                            out.push(("z_standard", json!(check_z_standard(&dec, &xi)?)));
                        }
                    }
                    Err(e) => {
                        ok = false;
                        out.push(("rank_one_sasaki", json!(false)));
                        out.push(("rank_one_failure", json!(e.to_string())));
                    }
                }
            }
            let text = lines(&out);
            emit(input.output, Value::Object(out.into_iter().map(|(k, v)| (k.to_string(), v)).collect()), text);
            Ok(ok)
        }
        Command::Reduce { input, split } => {
            let file = load(&input)?;
            let m = file.metric_algebra()?;
            let spec = split_spec(&file, &split)?;
            let dec = spec.build(&m)?;
            let xi = reeb(&file, &spec, &dec)?;
            let r = extract_reduction(&dec, &xi)?;
            let seed = SeedFile::from_seed(&r.seed);
            let quotient = print_salamon(r.sasaki_quotient.metric().algebra());
            let v = json!({
                "b": vector_repr(&r.b),
                "xi": vector_repr(&r.xi),
                "h": ScalarRepr::from(&r.h),
                "tau": ScalarRepr::from(&r.tau),
                "seed": seed,
                "sasaki_quotient": quotient,
                "d_omega_is_db": r.d_omega_is_db,
                "d_deta_is_2db": r.d_deta_is_2db,
            });
            let text = format!(
                "b: {}\nh: {}\ntau: {}\nkahler: {}\nomega: {}\nD: {:?}\nsasaki quotient: {quotient}\n",
                json!(vector_repr(&r.b)),
                r.h,
                r.tau,
                print_salamon(r.seed.metric().algebra()),
                form_text(&r.seed.kahler.omega),
                r.seed.d.to_rows().iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            );
            emit(input.output, v, text);
            Ok(r.d_omega_is_db && r.d_deta_is_2db)
        }
        Command::Construct { seed, output } => {
            let file: SeedFile = serde_json::from_str(&read_input(&seed)?).context("parsing seed JSON")?;
            let c = construct_sasaki(&file.to_seed()?)?;
            let n = c.algebra.dim();
            let sasaki = check_sasaki(&c.structure)?.verdict;
            let mut out = AlgebraFile::describe(&c.algebra);
            out.xi = Some(VectorSpec::Coords(vector_repr(&c.xi)));
            out.fundamental_form = Some(form_text(&fundamental_form(&c.structure)));
            out.decomposition = Some(DecompositionSpec {
                ideal: (1..n).map(VectorSpec::Index).collect(),
                e0: Some(VectorSpec::Index(n)),
                ..Default::default()
            });
            let text = format!(
                "{}\nmetric: {}\nxi: e{}\nPhi: {}\nsasaki: {sasaki}\n",
                print_salamon(c.algebra.algebra()),
                json!(out.metric),
                n - 1,
                out.fundamental_form.as_deref().unwrap_or("")
            );
            emit(output, serde_json::to_value(&out)?, text);
            Ok(sasaki)
        }
        Command::Catalog { action: CatalogAction::List { json } } => {
            if json {
                let rows: Vec<Value> = catalog()
                    .iter()
                    .map(|e| json!({ "id": e.id, "dim": e.dim(), "salamon": e.salamon, "variants": e.variants(&default_lambdas()).len() }))
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                for e in catalog() {
                    println!("{:<11} dim {}  {}", e.id, e.dim(), e.salamon);
                }
            }
            Ok(true)
        }
        Command::Catalog { action: CatalogAction::Verify { filter, lambda, json, text: _, timing } } => {
            let lambdas = match lambda {
                Some(s) => s
                    .split(',')
                    .map(|p| p.trim().parse::<Scalar>().map_err(|e| anyhow::anyhow!("bad λ `{p}`: {e:?}")))
                    .collect::<Result<_>>()?,
                None => default_lambdas(),
            };
            let opts = VerifyOptions { filter, lambdas, timing: timing || !json };
            let summary = verify_all(&opts)?;
            if summary.total == 0 {
                bail!("no catalog entry matches the filter");
            }
            if json {
                println!("{}", serde_json::to_string_pretty(&summary)?);
            } else {
                print!("{}", render_text(&summary));
            }
            Ok(summary.all_pass)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
