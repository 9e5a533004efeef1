//! `gstower presentation`: depths, Hilbert coefficients, growth polynomial,
//! negativity certificate.

use std::path::Path;

use anyhow::{Context, Result};
use gstower::gspoly::NegativityWitness;
use gstower::numfmt::{decimal_string, exact_string};
use gstower::presentation::{rho_estimate, Presentation};

use crate::output::{csv_line, json_rational, rational_pair, render_table, DECIMALS};
use crate::{Format, RunConfig};

pub fn run(config: &RunConfig, file: &Path, max_degree: usize) -> Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let pres = Presentation::from_json_str(&text)?;

    let depths = pres.relator_depths(max_degree)?;
    let hilbert = pres.hilbert_coeffs(max_degree)?;
    let estimate = rho_estimate(&hilbert)?;

    // The polynomial needs every depth resolved; an unresolved one is an
    // inconclusive outcome, not an input error.
    let analysis = match pres.gs_polynomial(max_degree) {
        Ok(poly) => {
            let witness = poly.negativity_witness(&config.tol);
            Some((poly, witness))
        }
        Err(e @ gstower::Error::UnresolvedDepth { .. }) => {
            eprintln!("note: {e}");
            None
        }
        Err(e) => return Err(e.into()),
    };

    let mut certified = false;
    let mut inconclusive_note: Option<String> = None;
    let mut witness_out: Option<NegativityWitness> = None;
    let mut poly_str = String::from("(unresolved relator depth)");
    let mut rho_bound = None;
    if let Some((poly, witness)) = &analysis {
        poly_str = poly.to_string();
        match witness {
            Ok(Some(w)) => {
                certified = true;
                rho_bound = Some(w.inf_hi.recip());
                witness_out = Some(w.clone());
            }
            Ok(None) => {
                inconclusive_note = Some("no witness: polynomial is nonnegative on (0,1)".into());
            }
            Err(gstower::Error::Inconclusive) => {
                inconclusive_note = Some(gstower::Error::Inconclusive.to_string());
            }
            Err(e) => anyhow::bail!("{e}"),
        }
    }

    let coeffs_csv = hilbert
        .coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",");

    match config.format {
        Format::Table => {
            println!(
                "presentation: p = {}, d = {}, {} relator(s), truncation N = {max_degree}",
                pres.p(),
                pres.d(),
                pres.relators().len()
            );
            let depth_rows: Vec<Vec<String>> = depths
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    vec![
                        pres.labels()
                            .and_then(|l| l.get(i).cloned())
                            .unwrap_or_else(|| format!("r{i}")),
                        gstower::word::print_word(&pres.relators()[i], pres.gen_names()),
                        v.to_string(),
                    ]
                })
                .collect();
            if !depth_rows.is_empty() {
                print!(
                    "{}",
                    render_table(&["relator", "word", "depth"], &depth_rows)
                );
            }
            println!("c_0..c_{}: {coeffs_csv}", max_degree - 1);
            println!("stabilized: {}", hilbert.stabilized());
            println!("growth polynomial: {poly_str}");
            match (&witness_out, &inconclusive_note) {
                (Some(w), _) => {
                    println!("negativity witness t0 = {}", rational_pair(&w.t0));
                    println!(
                        "infimum bracket: [{}, {}] (width <= {})",
                        exact_string(&w.inf_lo),
                        exact_string(&w.inf_hi),
                        exact_string(&config.tol)
                    );
                    println!(
                        "rho lower bound: {}",
                        rational_pair(rho_bound.as_ref().unwrap())
                    );
                }
                (None, Some(note)) => println!("certification: {note}"),
                (None, None) => println!("certification: skipped"),
            }
            println!("rho estimate (diagnostic): {}", rational_pair(&estimate));
        }
        Format::Csv => {
            println!("record,values");
            println!("p,{}", pres.p());
            println!("d,{}", pres.d());
            println!("max_degree,{max_degree}");
            for (i, v) in depths.iter().enumerate() {
                println!("depth_{i},{v}");
            }
            println!("coeffs,{coeffs_csv}");
            println!("stabilized,{}", hilbert.stabilized());
            println!("gs_polynomial,{poly_str}");
            if let Some(w) = &witness_out {
                println!(
                    "{}",
                    csv_line(&[
                        "witness_t0".into(),
                        exact_string(&w.t0),
                        decimal_string(&w.t0, DECIMALS)
                    ])
                );
                println!("inf_lo,{}", exact_string(&w.inf_lo));
                println!("inf_hi,{}", exact_string(&w.inf_hi));
                let rho = rho_bound.as_ref().unwrap();
                println!(
                    "{}",
                    csv_line(&[
                        "rho_bound".into(),
                        exact_string(rho),
                        decimal_string(rho, DECIMALS)
                    ])
                );
            } else {
                println!(
                    "certification,{}",
                    inconclusive_note.as_deref().unwrap_or("skipped")
                );
            }
            println!(
                "{}",
                csv_line(&[
                    "rho_estimate".into(),
                    exact_string(&estimate),
                    decimal_string(&estimate, DECIMALS)
                ])
            );
            if let Some(seed) = config.seed {
                println!("seed,{seed}");
            }
        }
        Format::Json => {
            let witness_json = witness_out.as_ref().map(|w| {
                serde_json::json!({
                    "t0": json_rational(&w.t0),
                    "inf_lo": json_rational(&w.inf_lo),
                    "inf_hi": json_rational(&w.inf_hi),
                })
            });
            let value = serde_json::json!({
                "p": pres.p(),
                "d": pres.d(),
                "max_degree": max_degree,
                "relator_depths": depths.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "coeffs": hilbert.coeffs(),
                "stabilized": hilbert.stabilized(),
                "gs_polynomial": poly_str,
                "witness": witness_json,
                "rho_bound": rho_bound.as_ref().map(json_rational),
                "rho_estimate": json_rational(&estimate),
                "certified": certified,
                "note": inconclusive_note,
                "seed": config.seed,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }

    Ok(if certified { 0 } else { 2 })
}
