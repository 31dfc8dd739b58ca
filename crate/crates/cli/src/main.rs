use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use toric_core::analysis::{analyze, AnalyzeOptions, Report};
use toric_core::bouquet::bouquet_decompose;
use toric_core::exactla::{gale_transform, kernel_lattice_basis};
use toric_core::glm::{build_glm, build_selfdual_family, decompose_to_glm};
use toric_core::graver::{
    circuits_via_bouquet, graver_basis, multiset_graver_count, multiset_graver_from,
    ENUMERATION_LIMIT,
};
use toric_core::io::{
    glm_spec_to_json, is_family_spec, parse_family_spec, parse_glm_spec, parse_matrix, parse_mult,
};
use toric_core::markov::{
    count_minimal_markov_multiset_formula, indispensables_by_splits, universal_markov_by_splits,
    MarkovAnalysis, FIBER_LIMIT,
};
use toric_core::oracle::{box_graver, minimal_markov_bases};
use toric_core::selfdual::{classify_robustness, is_selfdual, ugb_count_single_repeat};
use toric_core::{IntMat, KernelVector, MultisetConfig, ToricError};

#[derive(Parser)]
#[command(name = "toric", version, about = "Exact Graver, Markov and self-duality computations for toric configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Extra copies of each ground column, comma separated
    #[arg(long, global = true)]
    mult: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run internal consistency checks (round trips, theorem vs computation)
    #[arg(long, global = true)]
    verify: bool,
    /// Cross-check against brute-force enumeration in a bounded box
    #[arg(long, global = true)]
    oracle: bool,
    /// Coordinate bound for --oracle
    #[arg(long = "box", global = true, default_value_t = 3)]
    box_bound: i64,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: bouquets, self-duality, robustness, bases and counts
    Analyze { input: String },
    /// Gale transform (rows G(a_i))
    Gale { input: String },
    /// Bouquet decomposition and bouquet matrix
    Bouquets { input: String },
    /// Generalized Lawrence matrices
    Glm {
        #[command(subcommand)]
        action: GlmCommand,
    },
    /// Graver basis
    Graver { input: String },
    /// Circuits
    Circuits { input: String },
    /// One minimal Markov basis
    Markov { input: String },
    /// Indispensable elements
    Indispensable { input: String },
    /// Universal Markov basis
    UniversalMarkov { input: String },
    /// Self-duality verdict
    Selfdual { input: String },
    /// Robustness verdict
    Robust { input: String },
    /// Exact counts
    Count {
        #[command(subcommand)]
        what: CountCommand,
    },
}

#[derive(Subcommand)]
enum GlmCommand {
    /// Build the matrix of a GLM or pyramidal-family spec (JSON)
    Build { spec: String },
    /// Write a matrix in GLM form
    Decompose { input: String },
}

#[derive(Subcommand)]
enum CountCommand {
    Graver { input: String },
    MarkovBases { input: String },
    Ugb { input: String },
}

/// A file path, or the text itself (with `\n` accepted for line breaks).
fn read_input(input: &str) -> anyhow::Result<String> {
    let p = Path::new(input);
    if !input.contains('\n') && !input.contains("\\n") && p.exists() {
        return std::fs::read_to_string(p).with_context(|| format!("reading {input}"));
    }
    if input.contains('\n') || input.contains("\\n") || input.contains(' ') {
        return Ok(input.replace("\\n", "\n"));
    }
    bail!("no such file: {input}")
}

fn load_matrix(input: &str) -> anyhow::Result<IntMat> {
    Ok(parse_matrix(&read_input(input)?)?)
}

fn load_config(input: &str, opts: &Opts) -> anyhow::Result<MultisetConfig> {
    let a = load_matrix(input)?;
    if let Some(mult) = &opts.mult {
        return Ok(MultisetConfig::new(a, parse_mult(mult)?)?);
    }
    let (m, _) = MultisetConfig::fold(&a);
    if m.has_repeats() {
        let mult: Vec<String> = m.mult().iter().map(|k| k.to_string()).collect();
        eprintln!(
            "note: repeated columns folded into {} ground columns with --mult {}",
            m.n_ground(),
            mult.join(",")
        );
    }
    Ok(m)
}

fn vectors_text(vs: &[KernelVector]) -> String {
    vs.iter().map(|v| format!("{v}\n")).collect()
}

fn vectors_json(vs: &[KernelVector]) -> serde_json::Value {
    serde_json::to_value(vs).expect("serializable")
}

fn emit_vectors(vs: &[KernelVector], fmt: Format) -> String {
    match fmt {
        Format::Text => vectors_text(vs),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&vectors_json(vs)).unwrap()),
    }
}

fn emit_count(name: &str, x: &BigInt, fmt: Format) -> String {
    match fmt {
        Format::Text => format!("{x}\n"),
        Format::Json => format!("{}\n", json!({ name: x.to_string() })),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).unwrap())
}

fn oracle_graver(m: &MultisetConfig, computed: &[KernelVector], bound: i64) -> anyhow::Result<()> {
    let brute = box_graver(&m.assembled(), bound)?;
    let in_box: Vec<KernelVector> = computed
        .iter()
        .filter(|u| u.coords().iter().all(|x| x.magnitude() <= &bound.unsigned_abs().into()))
        .cloned()
        .collect();
    if in_box != brute {
        return Err(ToricError::Inconsistent(format!(
            "oracle mismatch: {} Graver elements in the box [-{bound},{bound}], brute force finds {}",
            in_box.len(),
            brute.len()
        ))
        .into());
    }
    eprintln!("oracle: {} Graver elements in the box agree with brute force", brute.len());
    Ok(())
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    s += &format!("matrix: {} x {}\n", r.rows, r.cols);
    if r.mult.iter().any(|&k| k > 0) {
        let mult: Vec<String> = r.mult.iter().map(|k| k.to_string()).collect();
        s += &format!("multiplicities: {}\n", mult.join(","));
    }
    s += &format!("bouquets: {}\n", r.bouquets.len());
    match r.selfdual {
        Some(b) => s += &format!("self-dual: {b}\n"),
        None => s += "self-dual: not decided\n",
    }
    s += &format!("pyramidality: {}\n", r.pyramidality);
    s += &format!("robustness: {}\n", r.robustness.tag.as_str());
    let c = &r.counts;
    for (name, x) in [
        ("graver", &c.graver),
        ("circuits", &c.circuits),
        ("minimal markov size", &c.minimal_markov),
        ("minimal markov bases", &c.markov_bases),
        ("universal groebner", &c.ugb),
    ] {
        if let Some(x) = x {
            s += &format!("{name}: {x}\n");
        }
    }
    for n in &r.notes {
        s += &format!("note: {n}\n");
    }
    s
}

fn multiset_graver_listed(m: &MultisetConfig) -> anyhow::Result<Vec<KernelVector>> {
    let ground = graver_basis(m.ground())?;
    Ok(multiset_graver_from(m, &ground, ENUMERATION_LIMIT)?)
}

fn markov_analysis(m: &MultisetConfig) -> anyhow::Result<MarkovAnalysis> {
    let graver = multiset_graver_listed(m)?;
    Ok(MarkovAnalysis::with_graver(&m.assembled(), graver, FIBER_LIMIT)?)
}

fn check_same(what: &str, fast: &[KernelVector], slow: &[KernelVector]) -> anyhow::Result<()> {
    if fast != slow {
        return Err(ToricError::Inconsistent(format!(
            "oracle mismatch for {what}: {} vs {} elements",
            fast.len(),
            slow.len()
        ))
        .into());
    }
    eprintln!("oracle: {what} agree ({} elements)", fast.len());
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    let o = &cli.opts;
    let fmt = o.format;
    Ok(match &cli.command {
        Command::Analyze { input } => {
            let m = load_config(input, o)?;
            let r = analyze(&m, &AnalyzeOptions { verify: o.verify, ..Default::default() })?;
            if o.oracle {
                if let Some(g) = &r.bases.graver {
                    oracle_graver(&m, g, o.box_bound)?;
                }
            }
            match fmt {
                Format::Text => report_text(&r),
                Format::Json => format!("{}\n", r.to_json()),
            }
        }
        Command::Gale { input } => {
            let a = load_matrix(input)?;
            let g = gale_transform(&a).to_matrix();
            match fmt {
                Format::Text => g.to_string(),
                Format::Json => pretty(&toric_core::io::matrix_to_json(&g)),
            }
        }
        Command::Bouquets { input } => {
            let a = load_matrix(input)?;
            let dec = bouquet_decompose(&a);
            match fmt {
                Format::Text => {
                    let mut s = String::new();
                    for (q, b) in dec.bouquets().iter().enumerate() {
                        let members: Vec<String> = b.members.iter().map(|i| (i + 1).to_string()).collect();
                        let c: Vec<String> = b.c_block().iter().map(|x| x.to_string()).collect();
                        let ab: Vec<String> = b.a.iter().map(|x| x.to_string()).collect();
                        s += &format!(
                            "B{}: {:?} columns {} c_B ({}) a_B ({})\n",
                            q + 1,
                            b.kind,
                            members.join(","),
                            c.join(","),
                            ab.join(",")
                        );
                    }
                    s += "# bouquet matrix\n";
                    s += &dec.bouquet_matrix().to_string();
                    s
                }
                Format::Json => {
                    let bs: Vec<serde_json::Value> = dec
                        .bouquets()
                        .iter()
                        .map(|b| {
                            json!({
                                "members": b.members,
                                "kind": b.kind,
                                "c": b.c_block().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                                "a": b.a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    pretty(&json!({
                        "bouquets": bs,
                        "bouquet_matrix": toric_core::io::matrix_to_json(dec.bouquet_matrix()),
                    }))
                }
            }
        }
        Command::Glm { action: GlmCommand::Build { spec } } => {
            let text = read_input(spec)?;
            let (matrix, mult) = if is_family_spec(&text) {
                let fam = parse_family_spec(&text)?;
                let m = build_selfdual_family(&fam)?;
                (m.ground().clone(), Some(m.mult().to_vec()))
            } else {
                (build_glm(&parse_glm_spec(&text)?)?, None)
            };
            if o.verify {
                verify_round_trip(&matrix)?;
            }
            match fmt {
                Format::Text => {
                    let mut s = String::new();
                    if let Some(mult) = &mult {
                        let mult: Vec<String> = mult.iter().map(|k| k.to_string()).collect();
                        s += &format!("# mult {}\n", mult.join(","));
                    }
                    s + &matrix.to_string()
                }
                Format::Json => {
                    let mut v = toric_core::io::matrix_to_json(&matrix);
                    if let Some(mult) = mult {
                        v["mult"] = json!(mult);
                    }
                    pretty(&v)
                }
            }
        }
        Command::Glm { action: GlmCommand::Decompose { input } } => {
            let a = load_matrix(input)?;
            let (spec, perm) = decompose_to_glm(&a)?;
            if o.verify {
                verify_round_trip(&a)?;
            }
            let perm1: Vec<usize> = perm.iter().map(|i| i + 1).collect();
            let spec_json: serde_json::Value = serde_json::from_str(&glm_spec_to_json(&spec))?;
            match fmt {
                Format::Text => format!(
                    "{}\n# column order: {}\n",
                    glm_spec_to_json(&spec),
                    perm1.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
                ),
                Format::Json => pretty(&json!({ "spec": spec_json, "permutation": perm1 })),
            }
        }
        Command::Graver { input } => {
            let m = load_config(input, o)?;
            let g = multiset_graver_listed(&m)?;
            if o.oracle {
                oracle_graver(&m, &g, o.box_bound)?;
            }
            emit_vectors(&g, fmt)
        }
        Command::Circuits { input } => {
            let m = load_config(input, o)?;
            emit_vectors(&circuits_via_bouquet(&m.assembled())?, fmt)
        }
        Command::Markov { input } => {
            let m = load_config(input, o)?;
            let an = markov_analysis(&m)?;
            let mm = an.minimal_markov();
            if o.oracle {
                let bases = minimal_markov_bases(&m.assembled(), an.graver(), o.box_bound)?;
                let mut sorted = mm.clone();
                sorted.sort();
                if !bases.contains(&sorted) {
                    return Err(ToricError::Inconsistent(
                        "oracle mismatch: the minimal Markov basis is not among the brute-force minimal bases".into(),
                    )
                    .into());
                }
                eprintln!("oracle: basis is one of {} brute-force minimal Markov bases", bases.len());
            }
            emit_vectors(&mm, fmt)
        }
        Command::Indispensable { input } => {
            let m = load_config(input, o)?;
            let ind = markov_analysis(&m)?.indispensables();
            if o.oracle {
                check_same("indispensables", &ind, &indispensables_by_splits(&m.assembled(), FIBER_LIMIT)?)?;
            }
            emit_vectors(&ind, fmt)
        }
        Command::UniversalMarkov { input } => {
            let m = load_config(input, o)?;
            let um = markov_analysis(&m)?.universal_markov();
            if o.oracle {
                check_same("universal Markov", &um, &universal_markov_by_splits(&m.assembled(), FIBER_LIMIT)?)?;
            }
            emit_vectors(&um, fmt)
        }
        Command::Selfdual { input } => {
            let m = load_config(input, o)?;
            let v = is_selfdual(&m)?;
            match fmt {
                Format::Text => {
                    let mut s = format!("self-dual: {}\npath: {:?}\n", v.is_selfdual, v.path);
                    if let Some(r) = &v.reason {
                        s += &format!("reason: {r}\n");
                    }
                    s
                }
                Format::Json => pretty(&serde_json::to_value(&v)?),
            }
        }
        Command::Robust { input } => {
            let m = load_config(input, o)?;
            let v = classify_robustness(&m, o.verify)?;
            match fmt {
                Format::Text => {
                    let mut s = format!("{}\n", v.tag.as_str());
                    if let Some(w) = &v.witness {
                        let show = |x: &[BigInt]| x.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" ");
                        s += &format!("witness: ({}) = ({}) + ({})\n", show(&w.u), show(&w.v), show(&w.w));
                    }
                    if let Some(n) = &v.note {
                        s += &format!("note: {n}\n");
                    }
                    s
                }
                Format::Json => pretty(&serde_json::to_value(&v)?),
            }
        }
        Command::Count { what } => match what {
            CountCommand::Graver { input } => {
                let m = load_config(input, o)?;
                let ground = graver_basis(m.ground())?;
                emit_count("graver", &multiset_graver_count(&ground, m.mult()), fmt)
            }
            CountCommand::MarkovBases { input } => {
                let m = load_config(input, o)?;
                emit_count("markov_bases", &count_markov_bases(&m)?, fmt)
            }
            CountCommand::Ugb { input } => {
                let m = load_config(input, o)?;
                emit_count("ugb", &ugb_count_single_repeat(&m)?, fmt)
            }
        },
    })
}

/// Closed form for multisets when its hypotheses hold, fiber analysis
/// otherwise.
fn count_markov_bases(m: &MultisetConfig) -> anyhow::Result<BigInt> {
    if m.has_repeats() {
        match count_minimal_markov_multiset_formula(m) {
            Ok(x) => return Ok(x),
            Err(e) if e.is_hypothesis_rejection() => {
                eprintln!("note: closed form not applicable ({e}); enumerating fibers")
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(markov_analysis(m)?.count_minimal_markov())
}

/// Decomposing and rebuilding must give the same kernel lattice.
fn verify_round_trip(a: &IntMat) -> anyhow::Result<()> {
    let (spec, perm) = decompose_to_glm(a)?;
    let rebuilt = build_glm(&spec)?;
    let mut inverse = vec![0; perm.len()];
    for (pos, &col) in perm.iter().enumerate() {
        inverse[col] = pos;
    }
    let back = rebuilt.select_columns(&inverse);
    if kernel_lattice_basis(&back) != kernel_lattice_basis(a) {
        return Err(ToricError::Inconsistent("GLM round trip changed the kernel lattice".into()).into());
    }
    eprintln!("verify: GLM round trip preserves the kernel lattice");
    Ok(())
}

fn write_atomically(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.opts.out {
                Some(p) => write_atomically(p, &out),
                None => std::io::stdout().write_all(out.as_bytes()).map_err(Into::into),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let rejected = e.downcast_ref::<ToricError>().is_some_and(ToricError::is_hypothesis_rejection);
            ExitCode::from(if rejected { 2 } else { 1 })
        }
    }
}
