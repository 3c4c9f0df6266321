//! Command-line surface: build and emit the algebra objects, run the
//! verification suites, and stream deterministic machine-readable reports.

use clap::{Args, Parser, Subcommand, ValueEnum};
use glrs::fun::{
    det_reduced, fun_integrity, presentation_fun, quantum_det, verify_det_route, verify_fun,
    DetRoute, FunClaim,
};
use glrs::report::Report;
use glrs::rmatrix::{
    build_eps_bra, build_eps_ket, build_rank_one, build_matrix, verify_identity, EpsFamily,
    MatrixClaim, MatrixKind,
};
use glrs::urs::{casimir, presentation_u, psi_image, u_integrity, verify_u, DjTag, UClaim};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "glrs",
    version,
    about = "Exact constructions and identity verification for the two-parameter quantum matrix algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an object and print it
    Emit {
        #[command(subcommand)]
        object: EmitObject,
    },
    /// Run verification suites and emit reports
    Verify(VerifyArgs),
    /// List suites, claim ids, and supported n ranges
    ListClaims,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum EmitObject {
    /// One of the sparse structure matrices on V x V
    Rmatrix {
        #[arg(long)]
        n: usize,
        /// R, Rhat, Rplus, Rhatplus, M, Mprime, Pplus, Pminus
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The antisymmetric bra and ket tensors
    Eps {
        #[arg(long)]
        n: usize,
        /// minus or plus
        #[arg(long, default_value = "minus")]
        family: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The rank-one matrix A_n (ket times bra)
    An {
        #[arg(long)]
        n: usize,
        /// minus or plus
        #[arg(long, default_value = "minus")]
        family: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The quantum determinant in normal form
    Det {
        #[arg(long)]
        n: usize,
        /// col_sigma, row_sigma, col_reverse, row_reverse, eps_pairing
        #[arg(long, default_value = "col_sigma")]
        route: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The Casimir element c_k in normal form
    Casimir {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The image of a Chevalley-style generator, e.g. e1, f2, a1, b2, a1inv
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gen: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The completed rewriting rules of a presentation
    Presentation {
        /// fun or u
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// matrix, fun, u, or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// comma-separated n values
    #[arg(long, value_delimiter = ',', default_values_t = [2usize])]
    n: Vec<usize>,
    /// comma-separated claim ids, or all
    #[arg(long, value_delimiter = ',', default_values_t = [String::from("all")])]
    claims: Vec<String>,
    /// restrict the k-indexed claims to a single k
    #[arg(long)]
    k: Option<usize>,
    /// restrict det_route_equivalence to one route
    #[arg(long)]
    route: Option<String>,
    /// worker threads (default: available cores)
    #[arg(long)]
    jobs: Option<usize>,
    /// write reports to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// corrupt one completed rule before checking presentation integrity
    #[arg(long)]
    inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Emit { object } => {
            print!("{}", emit(object)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Verify(args) => verify(args),
        Cmd::ListClaims => {
            print!("{}", list_claims());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_family(s: &str) -> Result<EpsFamily, String> {
    match s {
        "minus" => Ok(EpsFamily::Minus),
        "plus" => Ok(EpsFamily::Plus),
        other => Err(format!("unknown family '{other}' (expected minus or plus)")),
    }
}

fn parse_dj_gen(s: &str) -> Result<DjTag, String> {
    let err = || format!("unknown generator '{s}' (expected e<i>, f<i>, a<i>, b<i>, a<i>inv, b<i>inv)");
    let (head, inv) = match s.strip_suffix("inv") {
        Some(head) => (head, true),
        None => (s, false),
    };
    if head.len() < 2 {
        return Err(err());
    }
    let idx: u8 = head[1..].parse().map_err(|_| err())?;
    match (&head[..1], inv) {
        ("e", false) => Ok(DjTag::E(idx)),
        ("f", false) => Ok(DjTag::F(idx)),
        ("a", false) => Ok(DjTag::A(idx)),
        ("b", false) => Ok(DjTag::B(idx)),
        ("a", true) => Ok(DjTag::AInv(idx)),
        ("b", true) => Ok(DjTag::BInv(idx)),
        _ => Err(err()),
    }
}

fn emit(object: EmitObject) -> Result<String, String> {
    match object {
        EmitObject::Rmatrix { n, kind, format } => {
            if !(2..=4).contains(&n) {
                return Err(format!("n = {n} outside supported range 2..=4"));
            }
            let kind = MatrixKind::parse(&kind).ok_or(format!("unknown kind '{kind}'"))?;
            let op = build_matrix(n, kind).map_err(|e| e.to_string())?;
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"kind": kind.as_str(), "matrix": op.to_json()})
                ),
                Format::Text => {
                    let mut out = String::new();
                    for ((row, col), v) in op.entries() {
                        out.push_str(&format!("({row},{col}) = {v}\n"));
                    }
                    out
                }
            })
        }
        EmitObject::Eps { n, family, format } => {
            if !(2..=4).contains(&n) {
                return Err(format!("n = {n} outside supported range 2..=4"));
            }
            let fam = parse_family(&family)?;
            let bra = build_eps_bra(n, fam);
            let ket = build_eps_ket(n, fam);
            let amp_json = |it: Vec<(Vec<u8>, String)>| {
                it.into_iter()
                    .map(|(idx, v)| serde_json::json!({"index": idx, "value": v}))
                    .collect::<Vec<_>>()
            };
            let bra_amps: Vec<(Vec<u8>, String)> = bra
                .amplitudes()
                .map(|(i, v)| (i.0.clone(), v.to_string()))
                .collect();
            let ket_amps: Vec<(Vec<u8>, String)> = ket
                .amplitudes()
                .map(|(i, v)| (i.0.clone(), v.to_string()))
                .collect();
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({
                        "n": n,
                        "family": family,
                        "bra": amp_json(bra_amps),
                        "ket": amp_json(ket_amps),
                    })
                ),
                Format::Text => {
                    let mut out = String::new();
                    for (idx, v) in bra_amps {
                        out.push_str(&format!("bra {idx:?} = {v}\n"));
                    }
                    for (idx, v) in ket_amps {
                        out.push_str(&format!("ket {idx:?} = {v}\n"));
                    }
                    out
                }
            })
        }
        EmitObject::An { n, family, format } => {
            if !(2..=4).contains(&n) {
                return Err(format!("n = {n} outside supported range 2..=4"));
            }
            let fam = parse_family(&family)?;
            let op = build_rank_one(n, fam);
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"family": family, "matrix": op.to_json()})
                ),
                Format::Text => {
                    let mut out = String::new();
                    for ((row, col), v) in op.entries() {
                        out.push_str(&format!("({row},{col}) = {v}\n"));
                    }
                    out
                }
            })
        }
        EmitObject::Det { n, route, format } => {
            if !(2..=4).contains(&n) {
                return Err(format!("n = {n} outside supported range 2..=4"));
            }
            let route = DetRoute::parse(&route, n).ok_or(format!("unknown route '{route}'"))?;
            let pres = presentation_fun(n).map_err(|e| e.to_string())?;
            let det = pres.system.normal_form(&quantum_det(n, &route));
            debug_assert_eq!(det, det_reduced(&pres));
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"n": n, "route": route.label(), "det": det.to_string()})
                ),
                Format::Text => format!("{det}\n"),
            })
        }
        EmitObject::Casimir { n, k, format } => {
            if !(2..=3).contains(&n) || !(1..=n).contains(&k) {
                return Err(format!("need 1 <= k <= n <= 3, got n = {n}, k = {k}"));
            }
            let c = casimir(n, k);
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"n": n, "k": k, "casimir": c.to_string()})
                ),
                Format::Text => format!("{c}\n"),
            })
        }
        EmitObject::Psi { n, gen, format } => {
            if !(2..=3).contains(&n) {
                return Err(format!("n = {n} outside supported range 2..=3"));
            }
            let tag = parse_dj_gen(&gen)?;
            let bound = match tag {
                DjTag::E(i) | DjTag::F(i) => i < n as u8,
                DjTag::A(i) | DjTag::B(i) | DjTag::AInv(i) | DjTag::BInv(i) => i <= n as u8,
            };
            if !bound {
                return Err(format!("generator index out of range for n = {n}"));
            }
            let image = psi_image(n, tag);
            Ok(match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"n": n, "gen": gen, "image": image.to_string()})
                ),
                Format::Text => format!("{image}\n"),
            })
        }
        EmitObject::Presentation { algebra, n, format } => {
            let dump = match algebra.as_str() {
                "fun" => {
                    if !(2..=4).contains(&n) {
                        return Err(format!("n = {n} outside supported range 2..=4"));
                    }
                    presentation_fun(n).map_err(|e| e.to_string())?.system.dump()
                }
                "u" => {
                    if !(2..=3).contains(&n) {
                        return Err(format!("n = {n} outside supported range 2..=3"));
                    }
                    presentation_u(n).map_err(|e| e.to_string())?.system.dump()
                }
                other => return Err(format!("unknown algebra '{other}' (expected fun or u)")),
            };
            Ok(match format {
                Format::Json => {
                    let rules: Vec<&str> = dump.lines().collect();
                    format!(
                        "{}\n",
                        serde_json::json!({"algebra": algebra, "n": n, "rules": rules})
                    )
                }
                Format::Text => dump,
            })
        }
    }
}

const SUITES: [&str; 3] = ["matrix", "fun", "u"];

fn suite_claims(suite: &str) -> Vec<String> {
    match suite {
        "matrix" => MatrixClaim::ALL.iter().map(|c| c.as_str().to_string()).collect(),
        "fun" => {
            let mut v: Vec<String> = FunClaim::ALL.iter().map(|c| c.as_str().to_string()).collect();
            v.push("presentation_integrity".into());
            v
        }
        "u" => {
            let mut v: Vec<String> = UClaim::ALL.iter().map(|c| c.as_str().to_string()).collect();
            v.push("presentation_integrity".into());
            v
        }
        _ => unreachable!(),
    }
}

fn list_claims() -> String {
    let mut out = String::new();
    let range = |s: &str, c: &str| -> String {
        match (s, c) {
            ("matrix", "eps_uniqueness") => "2..=3".into(),
            ("matrix", _) => "2..=4".into(),
            ("fun", name) => FunClaim::parse(name)
                .map(|c| format!("{:?}", c.supported_n()))
                .unwrap_or_else(|| "2..=4".into()),
            ("u", name) => UClaim::parse(name)
                .map(|c| format!("{:?}", c.supported_n()))
                .unwrap_or_else(|| "2..=3".into()),
            _ => unreachable!(),
        }
    };
    for suite in SUITES {
        out.push_str(&format!("suite {suite}\n"));
        for claim in suite_claims(suite) {
            out.push_str(&format!("  {claim} (n {})\n", range(suite, &claim)));
        }
    }
    out
}

type Task = Box<dyn Fn() -> Report + Send + Sync>;

fn verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let suites: Vec<&str> = match args.suite.as_str() {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(format!("unknown suite '{other}' (expected matrix, fun, u, all)")),
    };
    let all_claims = args.claims.iter().any(|c| c == "all");
    let known: Vec<String> = suites.iter().flat_map(|s| suite_claims(s)).collect();
    if !all_claims {
        for c in &args.claims {
            if !known.contains(c) {
                return Err(format!("unknown claim '{c}' for suite {}", args.suite));
            }
        }
    }
    if args.n.is_empty() {
        return Err("no n values given".into());
    }
    for &n in &args.n {
        if !(2..=4).contains(&n) {
            return Err(format!("n = {n} outside supported range 2..=4"));
        }
    }
    let route = match &args.route {
        Some(r) => {
            let n0 = args.n[0];
            Some(DetRoute::parse(r, n0).ok_or(format!("unknown route '{r}'"))?)
        }
        None => None,
    };
    let wants = |claim: &str| all_claims || args.claims.iter().any(|c| c == claim);

    // tasks are created in deterministic (suite, claim, n) order; rayon's
    // indexed parallel map keeps the report order independent of scheduling
    let mut tasks: Vec<Task> = Vec::new();
    for suite in &suites {
        match *suite {
            "matrix" => {
                for claim in MatrixClaim::ALL {
                    if !wants(claim.as_str()) {
                        continue;
                    }
                    for &n in &args.n {
                        tasks.push(Box::new(move || verify_identity(n, claim)));
                    }
                }
            }
            "fun" => {
                for claim in FunClaim::ALL {
                    if !wants(claim.as_str()) {
                        continue;
                    }
                    for &n in &args.n {
                        let route = route.clone();
                        tasks.push(Box::new(move || {
                            match (&route, claim) {
                                (Some(r), FunClaim::DetRouteEquivalence) => verify_det_route(n, r),
                                _ => verify_fun(n, claim),
                            }
                        }));
                    }
                }
                if wants("presentation_integrity") {
                    for &n in &args.n {
                        let corrupt = args.inject_fault;
                        tasks.push(Box::new(move || fun_integrity(n, corrupt)));
                    }
                }
            }
            "u" => {
                for claim in UClaim::ALL {
                    if !wants(claim.as_str()) {
                        continue;
                    }
                    for &n in &args.n {
                        let k = if claim.takes_k() { args.k } else { None };
                        tasks.push(Box::new(move || verify_u(n, claim, k)));
                    }
                }
                if wants("presentation_integrity") {
                    for &n in &args.n {
                        let corrupt = args.inject_fault;
                        tasks.push(Box::new(move || u_integrity(n, corrupt)));
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    let reports: Vec<Report> = {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(args.jobs.unwrap_or(0))
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| tasks.par_iter().map(|t| t()).collect())
    };

    let mut out = String::new();
    match args.format {
        Format::Json => {
            let values: Vec<serde_json::Value> = reports
                .iter()
                .map(|r| serde_json::to_value(r).expect("report serializes"))
                .collect();
            out.push_str(&serde_json::to_string_pretty(&values).expect("array serializes"));
            out.push('\n');
        }
        Format::Text => {
            for r in &reports {
                let status = if r.skipped.is_some() {
                    "SKIP"
                } else if r.pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                let params: Vec<String> = r
                    .parameters
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect();
                let params = if params.is_empty() {
                    String::new()
                } else {
                    format!(" [{}]", params.join(" "))
                };
                out.push_str(&format!("{status} {} n={}{}", r.claim, r.n, params));
                if let Some(reason) = &r.skipped {
                    out.push_str(&format!(" ({reason})"));
                }
                if let Some(w) = &r.witness {
                    out.push_str(&format!(" witness: {} = {}", w.location, w.value));
                }
                out.push('\n');
            }
        }
    }

    match &args.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| e.to_string())?;
            f.write_all(out.as_bytes()).map_err(|e| e.to_string())?;
        }
        None => print!("{out}"),
    }

    let all_pass = reports.iter().all(|r| r.pass || r.skipped.is_some());
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
