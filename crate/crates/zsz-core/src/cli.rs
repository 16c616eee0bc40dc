//! Command-line front end.
//!
//! Every subcommand reads JSON (see [`crate::json`] for the schemas),
//! prints one JSON report to stdout, and keeps status chatter and
//! timing on stderr, so output can be piped or diffed. Exit codes:
//!
//! * `0` — the command ran and every check it performed passed;
//! * `1` — the command ran but the mathematical answer was "no"
//!   (conditions violated, members disagree, claims failed, a map
//!   was rejected);
//! * `2` — the inputs could not be loaded at all (I/O, JSON syntax,
//!   shape errors) or the usage was wrong.

use crate::central_aut::{
    compare_autc_methods, compute_pqrs, decompose_theta, enumerate_ac, verify_abcd_product,
};
use crate::center::{center_via_theorem, centers_agree};
use crate::error::Error;
use crate::hom::central_automorphisms_oracle;
use crate::json::{GroupDto, MatchedPairDto, MatrixDto, ThetaDto};
use crate::matched_pair::{MatchedPair, ZappaSzepGroup};
use crate::p5::P5Instance;
use crate::subgroup::{center_bruteforce, structure_probe};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "zsz",
    version,
    about = "Zappa-Szep products of finite groups: validation, centers, central automorphisms"
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a JSON multiplication table really is a group.
    ValidateGroup {
        /// Group JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Check the six compatibility conditions of a matched pair.
    ValidateMp {
        /// Matched-pair JSON file.
        #[arg(long)]
        input: PathBuf,
    },
    /// Build the product group of a matched pair.
    Build {
        #[arg(long)]
        input: PathBuf,
        /// Write the product group JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compute the center of the product group.
    Center {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = CenterMethod::Both)]
        method: CenterMethod,
    },
    /// Compute the central automorphism group of the product.
    Autc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = AutcMethod::Both)]
        method: AutcMethod,
        /// Write the matrices (block quadruples) here as JSON.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Orders of the distinguished map subgroups P, Q, R, S.
    Pqrs {
        #[arg(long)]
        input: PathBuf,
    },
    /// Test the ABCD product decomposition and its hypothesis.
    Abcd {
        #[arg(long)]
        input: PathBuf,
    },
    /// Build the order-p^5 family member and verify its claims.
    Example {
        /// Odd prime parameter.
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = ExampleCheck::All)]
        check: ExampleCheck,
    },
    /// Split a central automorphism of the product into its blocks.
    Decompose {
        /// Matched-pair JSON file describing the product.
        #[arg(long)]
        input: PathBuf,
        /// Automorphism JSON file (image array over pair indices).
        #[arg(long)]
        theta: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CenterMethod {
    /// Fixed-point characterization over the factors.
    Theorem,
    /// Elementwise commuting scan of the product.
    Brute,
    /// Run both and require agreement.
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutcMethod {
    /// Enumerate homomorphisms into the center of the product.
    Oracle,
    /// Enumerate block matrices over the factors.
    Matrix,
    /// Run both and require the same set.
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleCheck {
    Build,
    Center,
    Pqrs,
    Autc,
    All,
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    };
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}

/// `Err` means "could not even load the question" (exit 2); `Ok(code)`
/// is a completed run with its verdict.
fn dispatch(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::ValidateGroup { input } => validate_group(&input),
        Cmd::ValidateMp { input } => validate_mp(&input),
        Cmd::Build { input, output } => build(&input, output.as_deref()),
        Cmd::Center { input, method } => center(&input, method),
        Cmd::Autc {
            input,
            method,
            output,
        } => autc(&input, method, output.as_deref()),
        Cmd::Pqrs { input } => pqrs(&input),
        Cmd::Abcd { input } => abcd(&input),
        Cmd::Example { p, check } => example(p, check),
        Cmd::Decompose { input, theta } => decompose(&input, &theta),
    }
}

fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("reading {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("parsing {}: {e}", path.display()))
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("report serializes"));
}

fn write_or_print(path: Option<&Path>, value: &serde_json::Value) -> Result<(), String> {
    match path {
        Some(p) => {
            let text = serde_json::to_string_pretty(value).expect("report serializes");
            std::fs::write(p, text + "\n").map_err(|e| format!("writing {}: {e}", p.display()))?;
            eprintln!("wrote {}", p.display());
            Ok(())
        }
        None => {
            emit(value);
            Ok(())
        }
    }
}

fn validate_group(input: &Path) -> Result<u8, String> {
    let dto: GroupDto = load(input)?;
    match dto.to_group() {
        Ok(g) => {
            let probe = structure_probe(&g);
            emit(&json!({
                "valid": true,
                "name": g.name(),
                "order": g.order(),
                "fully_validated": g.fully_validated(),
                "structure": serde_json::to_value(&probe).expect("probe serializes"),
            }));
            Ok(0)
        }
        Err(e @ Error::ShapeMismatch { .. }) => Err(e.to_string()),
        Err(e) => {
            emit(&json!({ "valid": false, "error": e.to_string() }));
            Ok(1)
        }
    }
}

/// Load a pair whose groups and shapes must be well-formed; the
/// compatibility conditions stay the caller's business.
fn load_pair(input: &Path) -> Result<MatchedPair, String> {
    let dto: MatchedPairDto = load(input)?;
    dto.to_pair().map_err(|e| e.to_string())
}

/// Load a pair and insist it is a matched pair with a product.
fn load_product(input: &Path) -> Result<Result<ZappaSzepGroup, String>, String> {
    let mp = load_pair(input)?;
    match mp.build_product() {
        Ok(zs) => Ok(Ok(zs)),
        Err(e @ (Error::InvalidMatchedPair(_) | Error::ProductNotAGroup(_))) => {
            Ok(Err(e.to_string()))
        }
        Err(e) => Err(e.to_string()),
    }
}

fn validate_mp(input: &Path) -> Result<u8, String> {
    let mp = load_pair(input)?;
    let report = mp.validate();
    let valid = report.is_valid();
    emit(&json!({
        "valid": valid,
        "h": mp.h().name(),
        "k": mp.k().name(),
        "report": serde_json::to_value(&report).expect("report serializes"),
    }));
    Ok(if valid { 0 } else { 1 })
}

fn build(input: &Path, output: Option<&Path>) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "built": false, "error": msg }));
            return Ok(1);
        }
    };
    let g = zs.product();
    eprintln!("product of order {}", g.order());
    let dto = GroupDto::from_group(g);
    write_or_print(output, &serde_json::to_value(&dto).expect("group serializes"))?;
    Ok(0)
}

fn center(input: &Path, method: CenterMethod) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "error": msg }));
            return Ok(1);
        }
    };
    match method {
        CenterMethod::Theorem => {
            let z = center_via_theorem(&zs);
            emit(&json!({ "method": "theorem", "order": z.order(), "members": z.members() }));
            Ok(0)
        }
        CenterMethod::Brute => {
            let z = center_bruteforce(zs.product());
            emit(&json!({ "method": "brute", "order": z.order(), "members": z.members() }));
            Ok(0)
        }
        CenterMethod::Both => {
            let (thm, brute, agree) = centers_agree(&zs);
            emit(&json!({
                "method": "both",
                "order": thm.order(),
                "members": thm.members(),
                "brute_order": brute.order(),
                "methods_agree": agree,
            }));
            Ok(if agree { 0 } else { 1 })
        }
    }
}

fn autc(input: &Path, method: AutcMethod, output: Option<&Path>) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "error": msg }));
            return Ok(1);
        }
    };
    let matrices_json = |ms: &[crate::central_aut::CentralAutMatrix]| {
        serde_json::to_value(ms.iter().map(MatrixDto::from_matrix).collect::<Vec<_>>())
            .expect("matrices serialize")
    };
    match method {
        AutcMethod::Oracle => {
            let thetas = central_automorphisms_oracle(zs.product());
            let mut code = 0;
            let mut decomposed = Vec::with_capacity(thetas.len());
            for t in &thetas {
                match decompose_theta(&zs, t) {
                    Ok(m) => decomposed.push(m),
                    Err(e) => {
                        emit(&json!({ "method": "oracle", "error": e.to_string() }));
                        code = 1;
                        break;
                    }
                }
            }
            if code == 0 {
                emit(&json!({ "method": "oracle", "count": thetas.len() }));
                if output.is_some() {
                    decomposed.sort_unstable();
                    write_or_print(output, &matrices_json(&decomposed))?;
                }
            }
            Ok(code)
        }
        AutcMethod::Matrix => {
            let ms = enumerate_ac(zs.mp());
            emit(&json!({ "method": "matrix", "count": ms.len() }));
            if output.is_some() {
                write_or_print(output, &matrices_json(&ms))?;
            }
            Ok(0)
        }
        AutcMethod::Both => {
            let cmp = compare_autc_methods(&zs).map_err(|e| e.to_string())?;
            emit(&json!({
                "method": "both",
                "oracle_count": cmp.oracle_matrices.len(),
                "matrix_count": cmp.enumerated.len(),
                "sets_equal": cmp.sets_equal,
            }));
            if output.is_some() {
                write_or_print(output, &matrices_json(&cmp.enumerated))?;
            }
            Ok(if cmp.sets_equal { 0 } else { 1 })
        }
    }
}

fn pqrs(input: &Path) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "error": msg }));
            return Ok(1);
        }
    };
    match compute_pqrs(zs.mp()) {
        Ok(sub) => {
            emit(&json!({
                "p": sub.p.len(),
                "q": sub.q.len(),
                "r": sub.r.len(),
                "s": sub.s.len(),
            }));
            Ok(0)
        }
        Err(e @ Error::ClaimFailed(_)) => {
            emit(&json!({ "error": e.to_string() }));
            Ok(1)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn abcd(input: &Path) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "error": msg }));
            return Ok(1);
        }
    };
    let report = verify_abcd_product(zs.mp()).map_err(|e| e.to_string())?;
    let contradiction = report.hypothesis_holds && !report.abcd_equals_ac;
    emit(&serde_json::to_value(&report).expect("report serializes"));
    Ok(if contradiction { 1 } else { 0 })
}

fn example(p: u64, check: ExampleCheck) -> Result<u8, String> {
    let inst = P5Instance::build(p).map_err(|e| e.to_string())?;
    eprintln!(
        "built the order-{} member (p = {p})",
        inst.product().order()
    );
    let report = match check {
        ExampleCheck::Build => inst.verify_build(),
        ExampleCheck::Center => inst.verify_center(),
        ExampleCheck::Pqrs => inst.verify_pqrs(),
        ExampleCheck::Autc => inst.verify_autc(),
        ExampleCheck::All => inst.verify_all(),
    };
    let pass = report.all_pass();
    emit(&json!({
        "p": p,
        "all_pass": pass,
        "claims": serde_json::to_value(&report).expect("report serializes")["claims"],
    }));
    Ok(if pass { 0 } else { 1 })
}

fn decompose(input: &Path, theta_path: &Path) -> Result<u8, String> {
    let zs = match load_product(input)? {
        Ok(zs) => zs,
        Err(msg) => {
            emit(&json!({ "error": msg }));
            return Ok(1);
        }
    };
    let dto: ThetaDto = load(theta_path)?;
    if dto.image.len() != zs.product().order() {
        return Err(format!(
            "theta has {} entries, product has order {}",
            dto.image.len(),
            zs.product().order()
        ));
    }
    let theta = match dto.to_theta(zs.product()) {
        Ok(t) => t,
        Err(e) => {
            emit(&json!({ "decomposed": false, "error": e.to_string() }));
            return Ok(1);
        }
    };
    match decompose_theta(&zs, &theta) {
        Ok(m) => {
            let dto = MatrixDto::from_matrix(&m);
            emit(&json!({
                "decomposed": true,
                "matrix": serde_json::to_value(&dto).expect("matrix serializes"),
            }));
            Ok(0)
        }
        Err(e) => {
            emit(&json!({ "decomposed": false, "error": e.to_string() }));
            Ok(1)
        }
    }
}
