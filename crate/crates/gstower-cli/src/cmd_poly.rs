//! `gstower poly`: exact analysis of one growth polynomial, from dense
//! coefficients or from vertex-form data (D, R, R', p).

use anyhow::{bail, Result};
use gstower::gspoly::{
    certified_negativity, m_lower_bound, q_at_vertex, vertex_t, GsPolynomial, Rational,
};
use gstower::numfmt::{exact_string, parse_rational};
use num_traits::{One, Signed, Zero};

use crate::output::{json_rational, rational_pair, render_table};
use crate::{Format, RunConfig};

pub fn run(config: &RunConfig, coeffs: Option<&str>, q: Option<&[String]>) -> Result<u8> {
    match (coeffs, q) {
        (Some(text), None) => run_coeffs(config, text),
        (None, Some(parts)) => run_q_form(config, parts),
        _ => bail!("provide exactly one of --coeffs or --q"),
    }
}

fn parse_list(text: &str) -> Result<Vec<Rational>> {
    text.split_whitespace()
        .map(|tok| Ok(parse_rational(tok)?))
        .collect()
}

fn run_coeffs(config: &RunConfig, text: &str) -> Result<u8> {
    let dense = parse_list(text)?;
    let poly = GsPolynomial::from_coeffs(&dense)?;

    let eval_points: Vec<Rational> = (1..10)
        .map(|k| Rational::new(k.into(), 10.into()))
        .collect();
    let witness = poly.negativity_witness(&config.tol)?;
    let rho = witness.as_ref().map(|w| w.inf_hi.recip());

    match config.format {
        Format::Table => {
            println!("polynomial: {poly}");
            let rows: Vec<Vec<String>> = eval_points
                .iter()
                .map(|t| vec![exact_string(t), rational_pair(&poly.eval(t))])
                .collect();
            print!("{}", render_table(&["t", "P(t)"], &rows));
            match &witness {
                Some(w) => {
                    println!("negativity witness t0 = {}", rational_pair(&w.t0));
                    println!(
                        "infimum bracket: [{}, {}]",
                        exact_string(&w.inf_lo),
                        exact_string(&w.inf_hi)
                    );
                    println!("rho lower bound: {}", rational_pair(rho.as_ref().unwrap()));
                }
                None => println!("no witness: polynomial is nonnegative on (0,1)"),
            }
        }
        Format::Csv => {
            println!("record,values");
            println!("polynomial,{poly}");
            for t in &eval_points {
                println!("eval,{},{}", exact_string(t), exact_string(&poly.eval(t)));
            }
            match &witness {
                Some(w) => {
                    println!("witness_t0,{}", exact_string(&w.t0));
                    println!("inf_lo,{}", exact_string(&w.inf_lo));
                    println!("inf_hi,{}", exact_string(&w.inf_hi));
                    println!("rho_bound,{}", exact_string(rho.as_ref().unwrap()));
                }
                None => println!("witness,none"),
            }
        }
        Format::Json => {
            let value = serde_json::json!({
                "polynomial": poly.to_string(),
                "evaluations": eval_points.iter().map(|t| serde_json::json!({
                    "t": exact_string(t),
                    "value": json_rational(&poly.eval(t)),
                })).collect::<Vec<_>>(),
                "witness": witness.as_ref().map(|w| serde_json::json!({
                    "t0": json_rational(&w.t0),
                    "inf_lo": json_rational(&w.inf_lo),
                    "inf_hi": json_rational(&w.inf_hi),
                })),
                "rho_bound": rho.as_ref().map(json_rational),
                "seed": config.seed,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(if witness.is_some() { 0 } else { 2 })
}

fn run_q_form(config: &RunConfig, parts: &[String]) -> Result<u8> {
    let d = parse_rational(&parts[0])?;
    let r = parse_rational(&parts[1])?;
    let rp = parse_rational(&parts[2])?;
    let p: u32 = parts[3]
        .parse()
        .map_err(|_| anyhow::anyhow!("invalid prime `{}`", parts[3]))?;

    let poly = GsPolynomial::q_form(&d, &r, &rp, p)?;
    let tn = vertex_t(&d, &r)?;
    let t_in_range = tn.is_positive() && tn < Rational::one();
    let q_value = q_at_vertex(&d, &r, &rp, p)?;
    let certified = t_in_range && certified_negativity(&d, &r, &rp, p)?;
    let rho = certified.then(|| tn.recip());
    let m_raw = m_lower_bound(&d, &r, &rp, p)?;
    let m_clamped = if m_raw.is_negative() {
        Rational::zero()
    } else {
        m_raw.clone()
    };

    match config.format {
        Format::Table => {
            println!("polynomial: {poly}");
            println!("t_n = D/(2R) = {}", rational_pair(&tn));
            if !t_in_range {
                println!("warning: t_n lies outside (0,1); certificates do not apply");
            }
            println!("Q(t_n) = {}", rational_pair(&q_value));
            println!("certified negative at vertex: {certified}");
            if let Some(rho) = &rho {
                println!("rho lower bound (2R/D): {}", rational_pair(rho));
            }
            println!("m lower bound: {}", rational_pair(&m_clamped));
        }
        Format::Csv => {
            println!("record,values");
            println!("polynomial,{poly}");
            println!("t_n,{}", exact_string(&tn));
            println!("t_in_unit_interval,{t_in_range}");
            println!("q_at_tn,{}", exact_string(&q_value));
            println!("certified,{certified}");
            if let Some(rho) = &rho {
                println!("rho_bound,{}", exact_string(rho));
            }
            println!("m_bound,{}", exact_string(&m_clamped));
        }
        Format::Json => {
            let value = serde_json::json!({
                "polynomial": poly.to_string(),
                "t_n": json_rational(&tn),
                "t_in_unit_interval": t_in_range,
                "q_at_tn": json_rational(&q_value),
                "certified": certified,
                "rho_bound": rho.as_ref().map(json_rational),
                "m_bound": json_rational(&m_clamped),
                "m_bound_raw": json_rational(&m_raw),
                "seed": config.seed,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(if certified { 0 } else { 2 })
}
