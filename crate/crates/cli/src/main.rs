mod args;
mod output;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use limwit::io::{density_from_json, MatrixFile};
use limwit::states::theorem2_state;
use limwit::witnesses::{
    example1_witness, example2_witness, example3_witness, flip_operator, mc_witness, reduction_witness,
    Example3Class, McConditions,
};
use limwit::*;

use args::{BellArg, Channel, Cli, Command, GlobalOpts, ScanArgs, StateKind, WitnessArgs};
use output::{csv_float, csv_opt, emit, parse_grid, read, render_json};

fn build_state(kind: &StateKind) -> Result<DensityMatrix> {
    let rho = match kind {
        StateKind::Bell { kind } => {
            let k = match kind {
                BellArg::PhiPlus => BellKind::PhiPlus,
                BellArg::PhiMinus => BellKind::PhiMinus,
                BellArg::PsiPlus => BellKind::PsiPlus,
                BellArg::PsiMinus => BellKind::PsiMinus,
            };
            bell_state(k).to_density()
        }
        StateKind::Werner { f } => werner(*f)?,
        StateKind::Isotropic { p } => isotropic(*p)?,
        StateKind::BellDiagonal { p } => {
            let p: [f64; 4] = p.as_slice().try_into().map_err(|_| anyhow!("bell-diagonal needs 4 weights"))?;
            bell_diagonal(p)?
        }
        StateKind::Mc { x } => max_correlated(x)?.to_density(),
        StateKind::Theorem1 { family, a, negative_b } => {
            theorem1_state(&FamilyParams::with_b_sign(*family, *a, *negative_b)?).to_density()
        }
        StateKind::Theorem2 {
            family,
            a,
            negative_b,
            j,
            k,
            d,
        } => theorem2_state(&FamilyParams::with_b_sign(*family, *a, *negative_b)?, *j, *k, *d)?.to_density(),
        StateKind::DampedBell { gamma } => damped_bell(*gamma)?,
    };
    Ok(rho)
}

fn load_state(path: &Path) -> Result<DensityMatrix> {
    density_from_json(&read(path)?).with_context(|| format!("parsing state {}", path.display()))
}

fn cmd_state(g: &GlobalOpts, kind: &StateKind, out: Option<&Path>) -> Result<()> {
    let rho = build_state(kind)?;
    emit(&render_json(&MatrixFile::from(&rho), g.pretty)?, out)
}

fn cmd_record(
    g: &GlobalOpts,
    state: Option<&Path>,
    kind: Option<&StateKind>,
    shots: Option<u64>,
    out: Option<&Path>,
) -> Result<()> {
    let rho = match (state, kind) {
        (Some(path), None) => load_state(path)?,
        (None, Some(kind)) => build_state(kind)?,
        _ => bail!("give either --state FILE or a state kind"),
    };
    let rec = match shots {
        Some(n) => sampled_record(&rho, n, g.seed)?,
        None => exact_record(&rho)?,
    };
    emit(&render_json(&rec, g.pretty)?, out)
}

#[derive(Serialize)]
struct DetectOutput {
    #[serde(flatten)]
    result: DetectionResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    ppt_min_eigenvalue: Option<f64>,
    /// Whether the verdict matches the PPT criterion.
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
}

fn cmd_detect(g: &GlobalOpts, record: &Path, state: Option<&Path>) -> Result<()> {
    let rec = MeasurementRecord::from_json(&read(record)?).with_context(|| format!("parsing record {}", record.display()))?;
    let result = detect_with(
        &rec,
        &DetectOptions {
            sigma_threshold: g.detect_tol,
        },
    );
    let ppt = state.map(load_state).transpose()?.map(|rho| ppt_min_eigenvalue(&rho)).transpose()?;
    let out = DetectOutput {
        result,
        ppt_min_eigenvalue: ppt,
        agrees: ppt.map(|v| (v < 0.0) == result.entangled),
    };
    emit(&render_json(&out, g.pretty)?, None)
}

#[derive(Serialize)]
#[serde(untagged)]
enum Conditions {
    Example3(Example3Class),
    Mc(McConditions),
}

#[derive(Serialize)]
struct WitnessOutput {
    witness: MatrixFile,
    min_eigenvalue: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    is_valid: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conditions: Option<Conditions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<WitnessVerdict>,
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("missing --{flag}"))
}

fn cmd_witness(g: &GlobalOpts, w: &WitnessArgs) -> Result<()> {
    let (witness, is_valid, conditions) = if let Some(family) = w.family {
        let p = FamilyParams::with_b_sign(family, need(w.a, "a")?, w.negative_b)?;
        (extremal_witness(&p), None, None)
    } else if w.example1 {
        (example1_witness(need(w.d, "d")?, need(w.k, "k")?)?, None, None)
    } else if w.example2 {
        let (wit, valid) = example2_witness(need(w.d, "d")?, need(w.p0, "p0")?, &w.p)?;
        (wit, Some(valid), None)
    } else if w.example3 {
        let e = example3_witness(need(w.a, "a")?, need(w.b, "b")?, need(w.c, "c")?)?;
        (e.witness, Some(e.class.is_valid), Some(Conditions::Example3(e.class)))
    } else if w.reduction {
        (reduction_witness(need(w.d, "d")?)?, None, None)
    } else if w.flip {
        (flip_operator(need(w.d, "d")?)?, None, None)
    } else if w.mc {
        let m = mc_witness(need(w.lambda, "lambda")?, &w.x)?;
        (m.witness, Some(m.conditions.is_valid), Some(Conditions::Mc(m.conditions)))
    } else {
        bail!("choose a witness construction");
    };

    let verdict = if w.certify {
        let opts = CertifyOptions {
            restarts: g.restarts,
            iters: g.iters,
            seed: g.seed,
            bp_tol: g.bp_tol,
            eig_tol: g.eig_tol,
            ..CertifyOptions::default()
        };
        Some(block_positivity_min(&witness, &opts)?)
    } else {
        None
    };
    let out = WitnessOutput {
        witness: MatrixFile::from(&witness),
        min_eigenvalue: witness.min_eigenvalue(),
        is_valid,
        conditions,
        verdict,
    };
    emit(&render_json(&out, g.pretty)?, w.out.as_deref())
}

fn write_csv(header: &[&str], rows: Vec<Vec<String>>, out: Option<&Path>) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(&row)?;
    }
    let bytes = wtr.into_inner().map_err(|e| anyhow!("{e}"))?;
    let text = String::from_utf8(bytes)?;
    emit(text.trim_end(), out)
}

fn cmd_scan(s: &ScanArgs) -> Result<()> {
    if let Some(Channel::Ad) = s.channel {
        let grid = parse_grid(need(s.gamma_grid.as_deref(), "gamma-grid")?)?;
        let rows = gamma_scan(&grid)?
            .into_iter()
            .map(|r| vec![csv_float(r.gamma), csv_opt(r.a_lower), csv_opt(r.a_upper), csv_float(r.min_value)])
            .collect();
        write_csv(&["gamma", "a_lower", "a_upper", "min_value"], rows, s.out.as_deref())
    } else if s.werner {
        let grid = parse_grid(need(s.f_grid.as_deref(), "f-grid")?)?;
        let rows = werner_scan(&grid)?
            .into_iter()
            .map(|r| vec![csv_float(r.f), csv_float(r.min_value)])
            .collect();
        write_csv(&["f", "min_value"], rows, s.out.as_deref())
    } else {
        bail!("choose --channel or --werner");
    }
}

fn run(cli: Cli) -> Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::State { kind, out } => cmd_state(g, kind, out.as_deref()),
        Command::Record {
            state,
            kind,
            shots,
            out,
        } => cmd_record(g, state.as_deref(), kind.as_ref(), *shots, out.as_deref()),
        Command::Detect { record, state } => cmd_detect(g, record, state.as_deref()),
        Command::Witness(w) => cmd_witness(g, w),
        Command::Scan(s) => cmd_scan(s),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use limwit::states::generalized_bell;

    #[test]
    fn generalized_bell_is_reachable() {
        let k = StateKind::Theorem2 {
            family: 1,
            a: 1.0,
            negative_b: false,
            j: 1,
            k: 2,
            d: 3,
        };
        let rho = build_state(&k).unwrap();
        let expected = generalized_bell(1, 2, BellKind::PhiPlus, 3).unwrap().to_density();
        assert!(rho.matrix().max_abs_diff(expected.matrix()) < 1e-15);
    }

    #[test]
    fn bell_diagonal_arity() {
        assert!(build_state(&StateKind::BellDiagonal { p: vec![0.5, 0.5] }).is_err());
        assert!(build_state(&StateKind::BellDiagonal {
            p: vec![0.25; 4]
        })
        .is_ok());
    }
}
