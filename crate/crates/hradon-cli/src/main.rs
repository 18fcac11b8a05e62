//! Command-line front end for the hradon library.
//!
//! Five subcommands expose the constructions and verifications: `rho` for
//! the Hurwitz-Radon arithmetic, `algebra` for quotient algebras, `iso` for
//! signed-permutation conjugacy, `design` for orthogonal designs, and
//! `factorize` for 1-factorizations with cycle classification.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical verification
//! failure (the report is still emitted), 2 on usage or input errors.
//! Output is deterministic given the flags, including `--seed`.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hradon::algebra_core::{
    build_free, default_z_signs, quotient, solve_coefficients, verify_h_type, OmegaVector,
};
use hradon::design_core::{
    from_family, random_check_amicable, random_check_od, verify_amicable, verify_eta, verify_od,
    DesignMatrix,
};
use hradon::fixtures;
use hradon::graph_factor::{round_robin, union_cycles, OneFactor, OneFactorization};
use hradon::hr_arith::{self, SignaturePair};
use hradon::hr_family::{block_eta, build_mixed, build_positive_n, verify_family, HRFamily};
use hradon::iso_solver::{build_system, solve_signed_perm, solve_with_matching, verify_conjugacy};
use hradon::IntMatrix;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hradon",
    version,
    about = "Hurwitz-Radon families: quotient algebras, conjugacy, designs, 1-factorizations"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Seed for the randomized numeric cross-checks.
    #[arg(long, global = true, default_value_t = 2026)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Hurwitz-Radon arithmetic: rho, its signature variants, and the two
    /// maximal-signature grids.
    Rho(RhoArgs),
    /// Build the H-type quotient algebra with a prescribed center
    /// signature and verify every axiom.
    Algebra(AlgebraArgs),
    /// Solve for a signed permutation conjugating one family onto another.
    Iso(IsoArgs),
    /// Build and verify orthogonal designs and amicable pairs.
    Design(DesignArgs),
    /// Build 1-factorizations of complete graphs and classify the cycle
    /// types of factor unions.
    Factorize(FactorizeArgs),
}

#[derive(Args)]
struct RhoArgs {
    /// Matrix order n.
    n: Option<u64>,
    /// Print the grid of maximal s values for orders 2..32 and t = 0..4.
    #[arg(long)]
    table1: bool,
    /// Print the grid of maximal t values for orders 2..32 and s = 0..4.
    #[arg(long)]
    table2: bool,
    /// Print rho_t(n) for this t instead of rho(n); n must be a power of
    /// two.
    #[arg(long, value_name = "T")]
    rho_t: Option<u32>,
    /// Print sigma_s(n) for this s instead of rho(n); n must be a power of
    /// two.
    #[arg(long, value_name = "S")]
    sigma_s: Option<u32>,
    /// Print tau(n) instead of rho(n); n must be a power of two.
    #[arg(long)]
    tau: bool,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Half-dimension of the horizontal layer; the generators span R^2k.
    #[arg(long)]
    k: usize,
    /// Center signature as S,T; the center gets dimension S + T.
    #[arg(long, value_name = "S,T", value_parser = parse_pair)]
    sig_z: SignaturePair,
    /// Horizontal signature as S,T; defaults to 2k,0.
    #[arg(long, value_name = "S,T", value_parser = parse_pair)]
    sig_u: Option<SignaturePair>,
    /// JSON file with the 1-factorization supplying the center factors;
    /// defaults to the round-robin factorization of K_2k.
    #[arg(long, value_name = "FILE")]
    factorization: Option<PathBuf>,
    /// Write the verified algebra as JSON to this file.
    #[arg(long, value_name = "FILE")]
    export: Option<PathBuf>,
}

#[derive(Args)]
struct IsoArgs {
    /// Two built-in example names: omega1, omega2, omega3, octonion8.
    #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"], conflicts_with = "files")]
    example: Option<Vec<String>>,
    /// Two JSON files, each holding one family.
    #[arg(value_name = "FILE", num_args = 0..=2)]
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct DesignArgs {
    /// Matrix order n.
    #[arg(long)]
    n: Option<u64>,
    /// Build the design with the maximal number of variables at order n
    /// and verify it symbolically and numerically.
    #[arg(long, conflicts_with_all = ["amicable2", "eta"])]
    verify: bool,
    /// Print and verify the order-2 amicable pair.
    #[arg(long, conflicts_with = "eta")]
    amicable2: bool,
    /// Verify eta-compatibility of the mixed family with this signature at
    /// order n.
    #[arg(long, value_name = "S,T", value_parser = parse_pair)]
    eta: Option<SignaturePair>,
}

#[derive(Args)]
struct FactorizeArgs {
    /// Half-order; the factorization covers the complete graph on 2k
    /// vertices.
    #[arg(long)]
    k: usize,
    /// Construction.
    #[arg(long, value_enum)]
    style: Style,
    /// Classify the union of factors I and J (1-based).
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    classify: Option<Vec<usize>>,
    /// Classify every factor pair.
    #[arg(long)]
    classify_all: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Style {
    /// Round-robin tournament schedule.
    Roundrobin,
    /// XOR construction on power-of-two vertex counts.
    Xor,
    /// The Kirkman factorization of K8.
    Kirkman,
    /// The Steiner factorization of K8.
    Steiner,
}

struct UsageError(String);

type CliResult = Result<(String, u8), UsageError>;

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Rho(a) => run_rho(a, cli.format),
        Command::Algebra(a) => run_algebra(a, cli.format),
        Command::Iso(a) => run_iso(a, cli.format),
        Command::Design(a) => run_design(a, cli.format, cli.seed),
        Command::Factorize(a) => run_factorize(a, cli.format),
    };
    match result {
        Ok((output, code)) => {
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, &output) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            } else {
                print!("{}", output);
            }
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn run_rho(a: &RhoArgs, format: Format) -> CliResult {
    if a.table1 && a.table2 {
        return Err(usage("--table1 and --table2 are mutually exclusive"));
    }
    if a.table1 || a.table2 {
        if a.n.is_some() || a.rho_t.is_some() || a.sigma_s.is_some() || a.tau {
            return Err(usage("a table flag takes no other arguments"));
        }
        return Ok((render_table(a.table1, format)?, 0));
    }
    let n = a
        .n
        .ok_or_else(|| usage("an order n or --table1/--table2 is required"))?;
    let variants = usize::from(a.rho_t.is_some()) + usize::from(a.sigma_s.is_some()) + usize::from(a.tau);
    if variants > 1 {
        return Err(usage("--rho-t, --sigma-s and --tau are mutually exclusive"));
    }
    let (key, extra, value) = if let Some(t) = a.rho_t {
        let v = hr_arith::rho_t(power_exponent(n)?, t).map_err(|e| usage(e.to_string()))?;
        ("rho_t", Some(("t", t)), v)
    } else if let Some(s) = a.sigma_s {
        let v = hr_arith::sigma_s(power_exponent(n)?, s).map_err(|e| usage(e.to_string()))?;
        ("sigma_s", Some(("s", s)), v)
    } else if a.tau {
        ("tau", None, hr_arith::tau(power_exponent(n)?))
    } else {
        ("rho", None, hr_arith::rho(n).map_err(|e| usage(e.to_string()))?)
    };
    let output = match format {
        Format::Text => format!("{}\n", value),
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(n));
            if let Some((name, idx)) = extra {
                obj.insert(name.into(), json!(idx));
            }
            obj.insert(key.into(), json!(value));
            format!("{}\n", Value::Object(obj))
        }
    };
    Ok((output, 0))
}

fn render_table(maximal_s: bool, format: Format) -> Result<String, UsageError> {
    let lookup = |r: u32, idx: u32| {
        if maximal_s {
            hr_arith::max_signature_s(r, idx)
        } else {
            hr_arith::max_signature_t(r, idx)
        }
    };
    let mut rows = Vec::new();
    for r in 1..=5u32 {
        let cells: Vec<Option<u64>> = (0..5)
            .map(|idx| lookup(r, idx).map_err(|e| usage(e.to_string())))
            .collect::<Result<_, _>>()?;
        rows.push((1u64 << r, cells));
    }
    match format {
        Format::Text => {
            let (title, index) = if maximal_s {
                ("maximal s", "t")
            } else {
                ("maximal t", "s")
            };
            let mut out = format!("{}\n", title);
            out.push_str(&format!("{:<7}", format!("order\\{}", index)));
            for idx in 0..5 {
                let _ = write!(out, "{:>4}", idx);
            }
            out.push('\n');
            for (order, cells) in &rows {
                let _ = write!(out, "{:<7}", order);
                for cell in cells {
                    match cell {
                        Some(v) => {
                            let _ = write!(out, "{:>4}", v);
                        }
                        None => {
                            let _ = write!(out, "{:>4}", "-");
                        }
                    }
                }
                out.push('\n');
            }
            Ok(out)
        }
        Format::Json => {
            let name = if maximal_s { "maximal_s" } else { "maximal_t" };
            let rows: Vec<Value> = rows
                .iter()
                .map(|(order, cells)| json!({ "order": order, "cells": cells }))
                .collect();
            Ok(format!(
                "{}\n",
                json!({ "table": name, "indices": [0, 1, 2, 3, 4], "rows": rows })
            ))
        }
    }
}

fn run_algebra(a: &AlgebraArgs, format: Format) -> CliResult {
    let m = a.sig_z.s + a.sig_z.t;
    if m == 0 {
        return Err(usage("the center signature must name at least one direction"));
    }
    let factorization = match &a.factorization {
        Some(path) => OneFactorization::from_json(&read_json(path)?)
            .map_err(|e| usage(format!("{}: {}", path.display(), e)))?,
        None => round_robin(a.k).map_err(|e| usage(e.to_string()))?,
    };
    if factorization.factors.len() < m {
        return Err(usage(format!(
            "center dimension {} needs {} factors, the factorization has {}",
            m,
            m,
            factorization.factors.len()
        )));
    }
    let factors = &factorization.factors[..m];
    let z_signs =
        default_z_signs(a.k, factors, a.sig_z.s, a.sig_z.t).map_err(|e| usage(e.to_string()))?;
    let sig_u = a.sig_u.unwrap_or(SignaturePair { s: 2 * a.k, t: 0 });
    let free = build_free(a.k, sig_u, &z_signs).map_err(|e| usage(e.to_string()))?;
    let solutions = solve_coefficients(factors, &free).map_err(|e| usage(e.to_string()))?;
    let Some(coeffs) = solutions.first() else {
        let reason = format!(
            "no H-type algebra: no coefficient assignment on {} factors satisfies the \
             J-operator equations for sig_z = ({}, {}) and sig_u = ({}, {})",
            m, a.sig_z.s, a.sig_z.t, sig_u.s, sig_u.t
        );
        let output = match format {
            Format::Text => format!("{}\n", reason),
            Format::Json => format!("{}\n", json!({ "pass": false, "reason": reason })),
        };
        return Ok((output, 1));
    };
    let omegas: Vec<OmegaVector> = factors
        .iter()
        .map(|f| {
            let picked = f.pairs().iter().map(|&p| (p, coeffs[&p])).collect();
            OmegaVector::new(f.clone(), picked).expect("signs cover the factor")
        })
        .collect();
    let alg = quotient(&free, &omegas).map_err(|e| usage(e.to_string()))?;
    let report = verify_h_type(&alg);
    if let Some(path) = &a.export {
        fs::write(path, format!("{}\n", alg.to_json()))
            .map_err(|e| usage(format!("cannot write {}: {}", path.display(), e)))?;
    }
    let output = match format {
        Format::Text => format!(
            "H-type algebra: k = {}, dim h = {}, dim z = {}\n\
             sig_h = ({}, {}), sig_z = ({}, {})\n{}\n",
            alg.k,
            alg.dim_h(),
            alg.omega_basis.len(),
            alg.sig_h.s,
            alg.sig_h.t,
            alg.sig_z.s,
            alg.sig_z.t,
            report
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "algebra": alg.to_json(),
                "report": report.to_json(),
                "pass": report.pass,
            })
        ),
    };
    Ok((output, if report.pass { 0 } else { 1 }))
}

fn lookup_example(name: &str) -> Result<HRFamily, UsageError> {
    match name {
        "omega1" => Ok(fixtures::family_1()),
        "omega2" => Ok(fixtures::family_2()),
        "omega3" => Ok(fixtures::family_3()),
        "octonion8" => Ok(fixtures::octonion8()),
        _ => Err(usage(format!(
            "unknown example '{}'; available: omega1, omega2, omega3, octonion8",
            name
        ))),
    }
}

fn run_iso(a: &IsoArgs, format: Format) -> CliResult {
    let (fam1, fam2) = if let Some(names) = &a.example {
        (lookup_example(&names[0])?, lookup_example(&names[1])?)
    } else if a.files.len() == 2 {
        let load = |path: &Path| -> Result<HRFamily, UsageError> {
            HRFamily::from_json(&read_json(path)?)
                .map_err(|e| usage(format!("{}: {}", path.display(), e)))
        };
        (load(&a.files[0])?, load(&a.files[1])?)
    } else {
        return Err(usage("--example FIRST SECOND or two family files are required"));
    };

    if fam1.n != fam2.n || fam1.members.len() != fam2.members.len() {
        let reason = "orders or member counts differ";
        let output = match format {
            Format::Text => format!("conjugator: none ({})\n", reason),
            Format::Json => format!(
                "{}\n",
                json!({ "conjugator": Value::Null, "reason": reason, "pass": false })
            ),
        };
        return Ok((output, 1));
    }

    let system = build_system(&fam1, &fam2).map_err(|e| usage(e.to_string()))?;
    let solved = match solve_signed_perm(&system) {
        Some(b) => {
            let pairing: Vec<usize> = (0..fam1.members.len()).collect();
            Some((b, pairing))
        }
        None => solve_with_matching(&fam1, &fam2),
    };
    let Some((b, pairing)) = solved else {
        let output = match format {
            Format::Text => {
                "conjugator: none\n(no signed permutation B satisfies B J_l B^T = J'_l \
                 under any member pairing)\n"
                    .to_string()
            }
            Format::Json => format!("{}\n", json!({ "conjugator": Value::Null, "pass": false })),
        };
        return Ok((output, 1));
    };

    let exchanged = HRFamily {
        n: fam2.n,
        s: fam2.s,
        t: fam2.t,
        members: pairing.iter().map(|&l| fam2.members[l].clone()).collect(),
    };
    let pass = verify_conjugacy(&b, &fam1, &exchanged);
    let bi = b.as_int();
    let member_checks: Vec<bool> = fam1
        .members
        .iter()
        .zip(&exchanged.members)
        .map(|(e, f)| f.as_int().mul(bi) == bi.mul(e.as_int()))
        .collect();

    let output = match format {
        Format::Text => {
            let mut out = String::from("conjugator:\n");
            out.push_str(&render_matrix(b.as_int()));
            out.push('\n');
            if pairing.iter().enumerate().any(|(i, &l)| i != l) {
                let map: Vec<String> = pairing
                    .iter()
                    .enumerate()
                    .map(|(i, &l)| format!("{} -> {}", i + 1, l + 1))
                    .collect();
                let _ = writeln!(out, "member pairing: {}", map.join(", "));
            }
            for (l, ok) in member_checks.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "check B J_{} B^T = J'_{}: {}",
                    l + 1,
                    pairing[l] + 1,
                    if *ok { "ok" } else { "FAIL" }
                );
            }
            let _ = writeln!(out, "conjugacy: {}", if pass { "pass" } else { "FAIL" });
            out
        }
        Format::Json => format!(
            "{}\n",
            json!({
                "conjugator": b.to_json(),
                "pairing": pairing.iter().map(|&l| l + 1).collect::<Vec<_>>(),
                "member_checks": member_checks,
                "pass": pass,
            })
        ),
    };
    Ok((output, if pass { 0 } else { 1 }))
}

fn run_design(a: &DesignArgs, format: Format, seed: u64) -> CliResult {
    if a.amicable2 {
        return run_amicable2(format, seed);
    }
    if let Some(sig) = a.eta {
        let n = a.n.ok_or_else(|| usage("--eta requires --n"))?;
        return run_eta(n, sig, format);
    }
    if a.verify {
        let n = a.n.ok_or_else(|| usage("--verify requires --n"))?;
        return run_design_verify(n, format, seed);
    }
    Err(usage("one of --verify, --amicable2, --eta is required"))
}

fn run_design_verify(n: u64, format: Format, seed: u64) -> CliResult {
    let vars = hr_arith::rho(n).map_err(|e| usage(e.to_string()))?;
    let fam = if vars == 1 {
        HRFamily {
            n: n as usize,
            s: 0,
            t: 0,
            members: vec![],
        }
    } else {
        build_positive_n(n, vars as usize - 1).map_err(|e| usage(e.to_string()))?
    };
    let design = from_family(&fam, true).map_err(|e| usage(e.to_string()))?;
    let weights = vec![1i64; vars as usize];
    let symbolic = verify_od(&design, &weights);
    let numeric = random_check_od(&design, &weights, seed, 64);
    let pass = symbolic && numeric;
    let output = match format {
        Format::Text => format!(
            "orthogonal design of order {} on {} variable{}\n{}\nsymbolic check: {}\n\
             numeric check (64 samples at seed {}): {}\n",
            n,
            vars,
            if vars == 1 { "" } else { "s" },
            design.render('x'),
            verdict(symbolic),
            seed,
            verdict(numeric),
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "design": design.to_json(),
                "weights": weights,
                "symbolic": symbolic,
                "numeric": numeric,
                "pass": pass,
            })
        ),
    };
    Ok((output, u8::from(!pass)))
}

fn run_amicable2(format: Format, seed: u64) -> CliResult {
    let x = DesignMatrix::new(
        vec![
            vec![Some((1, 1)), Some((2, 1))],
            vec![Some((2, 1)), Some((1, -1))],
        ],
        2,
    )
    .expect("well-formed order-2 design");
    let y = DesignMatrix::new(
        vec![
            vec![Some((1, 1)), Some((2, 1))],
            vec![Some((2, -1)), Some((1, 1))],
        ],
        2,
    )
    .expect("well-formed order-2 design");
    let symbolic = verify_amicable(&x, &y);
    let numeric = random_check_amicable(&x, &y, seed, 64);
    let pass = symbolic && numeric;
    let output = match format {
        Format::Text => format!(
            "X =\n{}\nY =\n{}\namicable: {}\nnumeric check (64 samples at seed {}): {}\n",
            x.render('x'),
            y.render('y'),
            verdict(symbolic),
            seed,
            verdict(numeric),
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "x": x.to_json(),
                "y": y.to_json(),
                "amicable": symbolic,
                "numeric": numeric,
                "pass": pass,
            })
        ),
    };
    Ok((output, u8::from(!pass)))
}

fn run_eta(n: u64, sig: SignaturePair, format: Format) -> CliResult {
    let r = power_exponent(n)?;
    let fam = match build_mixed(r, sig.s, sig.t) {
        Ok(fam) => fam,
        Err(e) => {
            let reason = e.to_string();
            let output = match format {
                Format::Text => format!("{}\n", reason),
                Format::Json => format!("{}\n", json!({ "pass": false, "reason": reason })),
            };
            return Ok((output, 1));
        }
    };
    let eta = block_eta(n as usize).map_err(|e| usage(e.to_string()))?;
    let report = verify_eta(&fam, &eta).map_err(|e| usage(e.to_string()))?;
    let family_report = verify_family(&fam);
    let pass = report.pass && family_report.pass;
    let output = match format {
        Format::Text => format!(
            "family of order {} with signature ({}, {}): {}\n{}\n",
            n,
            fam.s,
            fam.t,
            if family_report.pass { "valid" } else { "INVALID" },
            report
        ),
        Format::Json => format!(
            "{}\n",
            json!({
                "family": fam.to_json(),
                "family_pass": family_report.pass,
                "eta": report.to_json(),
                "pass": pass,
            })
        ),
    };
    Ok((output, u8::from(!pass)))
}

fn run_factorize(a: &FactorizeArgs, format: Format) -> CliResult {
    let factorization = match a.style {
        Style::Roundrobin => round_robin(a.k).map_err(|e| usage(e.to_string()))?,
        Style::Xor => {
            let vertices = 2 * a.k as u64;
            let m = power_exponent(vertices)?;
            hradon::graph_factor::xor_factorization(m).map_err(|e| usage(e.to_string()))?
        }
        Style::Kirkman => {
            if a.k != 4 {
                return Err(usage("the Kirkman factorization is defined at k = 4"));
            }
            fixtures::kirkman_k8()
        }
        Style::Steiner => {
            if a.k != 4 {
                return Err(usage("the Steiner factorization is defined at k = 4"));
            }
            fixtures::steiner_k8()
        }
    };

    let count = factorization.factors.len();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    if let Some(ij) = &a.classify {
        let (i, j) = (ij[0], ij[1]);
        for idx in [i, j] {
            if idx == 0 || idx > count {
                return Err(usage(format!("factor index {} outside 1..{}", idx, count)));
            }
        }
        if i == j {
            return Err(usage("--classify needs two distinct factors"));
        }
        pairs.push((i.min(j) - 1, i.max(j) - 1));
    }
    if a.classify_all {
        for i in 0..count {
            for j in i + 1..count {
                pairs.push((i, j));
            }
        }
    }
    let classified: Vec<(usize, usize, hradon::graph_factor::CycleType)> = pairs
        .iter()
        .map(|&(i, j)| {
            union_cycles(&factorization.factors[i], &factorization.factors[j])
                .map(|ct| (i, j, ct))
                .map_err(|e| usage(e.to_string()))
        })
        .collect::<Result<_, _>>()?;

    let output = match format {
        Format::Text => {
            let mut out = format!("1-factorization of the complete graph on {} vertices\n", 2 * a.k);
            for (idx, factor) in factorization.factors.iter().enumerate() {
                let _ = writeln!(out, "factor {}: {}", idx + 1, render_factor(factor));
            }
            for (i, j, ct) in &classified {
                let _ = writeln!(out, "factors {} and {}: {}", i + 1, j + 1, ct);
            }
            out
        }
        Format::Json => {
            let classifications: Vec<Value> = classified
                .iter()
                .map(|(i, j, ct)| {
                    json!({
                        "factors": [i + 1, j + 1],
                        "cycles": ct.lengths(),
                        "square": ct.is_square(),
                    })
                })
                .collect();
            format!(
                "{}\n",
                json!({
                    "vertices": 2 * a.k,
                    "factorization": factorization.to_json(),
                    "classifications": classifications,
                })
            )
        }
    };
    Ok((output, 0))
}

fn parse_pair(text: &str) -> Result<SignaturePair, String> {
    let (s, t) = text
        .split_once(',')
        .ok_or_else(|| format!("expected S,T, got '{}'", text))?;
    let parse = |v: &str, name: &str| {
        v.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad {}: {}", name, e))
    };
    Ok(SignaturePair {
        s: parse(s, "s")?,
        t: parse(t, "t")?,
    })
}

fn power_exponent(n: u64) -> Result<u32, UsageError> {
    if n >= 2 && n.is_power_of_two() {
        Ok(n.trailing_zeros())
    } else {
        Err(usage(format!("order {} is not a power of two >= 2", n)))
    }
}

fn read_json(path: &Path) -> Result<Value, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {}", path.display(), e)))
}

fn render_matrix(m: &IntMatrix) -> String {
    let rows = m.to_rows();
    let width = rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    rows.iter()
        .map(|row| {
            let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", v)).collect();
            format!("[ {} ]", cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_factor(f: &OneFactor) -> String {
    f.pairs()
        .iter()
        .map(|(a, b)| format!("({}, {})", a, b))
        .collect::<Vec<_>>()
        .join(" ")
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}
