//! `gstower tower`: hypothesis report and certified growth table.

use std::io::Read;

use anyhow::{Context, Result};
use gstower::gspoly::Rational;
use gstower::numfmt::{decimal_string, exact_string};
use gstower::tower::{growth_table, GrowthTable, TowerConfig};
use num_traits::Signed;

use crate::output::{json_rational, rational_pair, render_table, DECIMALS};
use crate::{Format, RunConfig};

pub fn run(
    config: &RunConfig,
    source: &str,
    n_start: u32,
    n_end: u32,
    k: Option<u32>,
) -> Result<u8> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading config from stdin")?;
        buf
    } else {
        std::fs::read_to_string(source).with_context(|| format!("reading {source}"))?
    };
    let (spec, dmodel, cmodel) = TowerConfig::from_json_str(&text)?.build()?;
    let k = k.unwrap_or_else(|| spec.k().max(1));

    let report = spec.check_hypotheses();
    emit_hypotheses(config, &report);
    if !report.all_pass() {
        // exit 3, with the failing comparisons already printed
        return Err(gstower::Error::Hypotheses(
            report
                .failures()
                .map(|c| format!("({}) {} {} {}", c.index, c.lhs, c.relation, c.rhs))
                .collect::<Vec<_>>()
                .join("; "),
        )
        .into());
    }

    let table = growth_table(&spec, &dmodel, &cmodel, n_start, n_end, k)?;
    emit_table(config, spec.p(), &table)?;
    Ok(if table.n0_candidate.is_some() { 0 } else { 2 })
}

fn emit_hypotheses(config: &RunConfig, report: &gstower::tower::HypothesisReport) {
    match config.format {
        Format::Table => {
            println!("hypothesis checks:");
            for c in &report.conditions {
                println!(
                    "  ({}) {}: {} {} {} -> {}",
                    c.index,
                    c.description,
                    c.lhs,
                    c.relation,
                    c.rhs,
                    if c.pass { "pass" } else { "FAIL" }
                );
            }
        }
        Format::Csv => {
            for c in &report.conditions {
                println!(
                    "# hypothesis_{},{},{},{},{}",
                    c.index,
                    c.lhs,
                    c.relation,
                    c.rhs,
                    if c.pass { "pass" } else { "fail" }
                );
            }
        }
        Format::Json => {} // folded into the final object
    }
}

fn clamped(m: &Rational) -> Rational {
    if m.is_negative() {
        Rational::new(0.into(), 1.into())
    } else {
        m.clone()
    }
}

fn emit_table(config: &RunConfig, p: u64, table: &GrowthTable) -> Result<()> {
    let headers = [
        "n",
        "D_n",
        "R_n",
        "R_prime_n",
        "t_n",
        "Q(t_n)",
        "certified",
        "rho_bound",
        "rho_bound_dec",
        "m_bound",
        "m_bound_dec",
    ];
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            let sign = match row.q_sign {
                -1 => "-",
                0 => "0",
                _ => "+",
            };
            let (rho_exact, rho_dec) = match &row.rho_bound {
                Some(r) => (exact_string(r), decimal_string(r, DECIMALS)),
                None => ("-".into(), "-".into()),
            };
            let m = clamped(&row.m_bound);
            vec![
                row.profile.n.to_string(),
                row.profile.d_n.to_string(),
                row.profile.r_n.to_string(),
                row.profile.r_prime_n.to_string(),
                exact_string(&row.profile.t_n),
                sign.to_string(),
                row.certified.to_string(),
                rho_exact,
                rho_dec,
                exact_string(&m),
                decimal_string(&m, DECIMALS),
            ]
        })
        .collect();

    let n0 = table
        .n0_candidate
        .map(|n| n.to_string())
        .unwrap_or_else(|| "-".into());

    match config.format {
        Format::Table => {
            print!("{}", render_table(&headers, &rows));
            println!();
            println!("C_max   = {}", rational_pair(&table.c_max));
            println!("A       = {}", rational_pair(&table.const_a));
            println!("B       = {}", rational_pair(&table.const_b));
            println!("A/4 - B = {}", rational_pair(&table.a_quarter_minus_b));
            println!("n0 candidate = {n0} (first certified level; bounds rho >= C*{p}^n)");
        }
        Format::Csv => {
            println!("{}", headers.join(","));
            for row in &rows {
                println!("{}", row.join(","));
            }
            println!(
                "# C_max,{},{}",
                exact_string(&table.c_max),
                decimal_string(&table.c_max, DECIMALS)
            );
            println!("# A,{}", exact_string(&table.const_a));
            println!("# B,{}", exact_string(&table.const_b));
            println!(
                "# A/4-B,{},{}",
                exact_string(&table.a_quarter_minus_b),
                decimal_string(&table.a_quarter_minus_b, DECIMALS)
            );
            println!("# n0,{n0}");
            if let Some(seed) = config.seed {
                println!("# seed,{seed}");
            }
        }
        Format::Json => {
            let rows_json: Vec<serde_json::Value> = table
                .rows
                .iter()
                .map(|row| {
                    // both scalings of the size bound: per p^n and per p^2n
                    let pn = Rational::new(
                        num_bigint::BigInt::from(p).pow(row.profile.n),
                        1.into(),
                    );
                    let m = clamped(&row.m_bound);
                    serde_json::json!({
                        "n": row.profile.n,
                        "D_n": row.profile.d_n.to_string(),
                        "R_n": row.profile.r_n.to_string(),
                        "R_prime_n": row.profile.r_prime_n.to_string(),
                        "t_n": json_rational(&row.profile.t_n),
                        "q_sign": row.q_sign,
                        "t_in_unit_interval": row.t_in_unit_interval,
                        "certified": row.certified,
                        "rho_bound": row.rho_bound.as_ref().map(json_rational),
                        "m_bound": json_rational(&m),
                        "m_bound_over_pn": json_rational(&(&m / &pn)),
                        "m_bound_over_p2n": json_rational(&(&m / (&pn * &pn))),
                        "unit_ranks": row.profile.unit_ranks.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let value = serde_json::json!({
                "rows": rows_json,
                "C_max": json_rational(&table.c_max),
                "A": json_rational(&table.const_a),
                "B": json_rational(&table.const_b),
                "A_quarter_minus_B": json_rational(&table.a_quarter_minus_b),
                "n0_candidate": table.n0_candidate,
                "seed": config.seed,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(())
}
