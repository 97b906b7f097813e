//! Subcommand implementations. Each returns the rendered output so the
//! caller controls where it goes; diagnostics use stderr only.

use serde_json::json;

use gsum_core::reference::{coth_closed_form, hl_oracle, partial_sums_g, richardson};
use gsum_core::rule::cache::rule_to_json;
use gsum_core::summator::{apriori_error_coth, RuleProvider};
use gsum_core::zeros::{density_data, zero_set};
use gsum_core::{adaptive_sum_with, gauss_sum, ConvergenceStatus, Side, Summand};

use crate::expr::Expr;
use crate::output::{fmt_f64, x_label, Csv};
use crate::{CliError, Format};

/// Printed as '-' in the Hardy-Littlewood table, mirroring the
/// below-resolution convention of the reference results.
const HL_DASH_THRESHOLD: f64 = 1e-13;

fn status_name(status: ConvergenceStatus) -> &'static str {
    match status {
        ConvergenceStatus::Converged => "converged",
        ConvergenceStatus::HitNMax => "hit_n_max",
        ConvergenceStatus::StagnatedAtMachineEps => "stagnated_at_machine_eps",
    }
}

pub fn rule(provider: &mut RuleProvider, n: usize, format: Format) -> Result<String, CliError> {
    let rule = provider.rule(n)?;
    Ok(match format {
        Format::Json => rule_to_json(&rule),
        Format::Csv => {
            let mut csv = Csv::new(&["k", "node", "weight"]);
            for (i, (&z, &w)) in rule.nodes().iter().zip(rule.weights()).enumerate() {
                csv.row(&[(i + 1).to_string(), fmt_f64(z), fmt_f64(w)]);
            }
            csv.finish()
        }
    })
}

pub fn sum(
    provider: &mut RuleProvider,
    expr_text: &str,
    ast: Expr,
    side: Side,
    tol: f64,
    n_max: usize,
    format: Format,
) -> Result<String, CliError> {
    let summand = Summand::new(side, expr_text, move |k| ast.eval(k));
    let report = adaptive_sum_with(provider, &summand, tol, n_max)?;

    let deltas: Vec<f64> = report.deltas().map(|(_, d)| d).collect();
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["n", "value", "delta", "chosen"]);
            for (i, (n, v)) in report.values().enumerate() {
                let delta = deltas.get(i).map(|d| fmt_f64(*d)).unwrap_or_default();
                let chosen = if n == report.n_used() { "1" } else { "0" };
                csv.row(&[n.to_string(), fmt_f64(v), delta, chosen.to_string()]);
            }
            csv.finish()
        }
        Format::Json => {
            let history: Vec<_> = report
                .values()
                .enumerate()
                .map(|(i, (n, v))| {
                    json!({
                        "n": n,
                        "value": v,
                        "delta": deltas.get(i).copied(),
                    })
                })
                .collect();
            let doc = json!({
                "value": report.value(),
                "n_used": report.n_used(),
                "status": status_name(report.status()),
                "history": history,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            text
        }
    })
}

pub fn bench_hl(
    provider: &mut RuleProvider,
    xs: &[f64],
    n_max: usize,
    format: Format,
) -> Result<String, CliError> {
    if xs.is_empty() {
        return Err(CliError::Usage("bench hl needs at least one --x value".into()));
    }
    let mut oracles = Vec::with_capacity(xs.len());
    for &x in xs {
        oracles.push(hl_oracle(x, 1e-13)?);
    }
    let mut rows: Vec<(usize, Vec<f64>)> = Vec::new();
    for n in 2..=n_max {
        let rule = provider.rule(n)?;
        let mut errors = Vec::with_capacity(xs.len());
        for (&x, &oracle) in xs.iter().zip(&oracles) {
            let summand =
                Summand::new(Side::PositiveHalf, "sin(x/k)/k", move |k: f64| (x / k).sin() / k);
            let value = gauss_sum(&rule, &summand)?;
            errors.push(((value - oracle) / oracle).abs());
        }
        rows.push((n, errors));
    }

    Ok(match format {
        Format::Csv => {
            let labels: Vec<String> = xs.iter().map(|&x| x_label(x)).collect();
            let mut header: Vec<&str> = vec!["n"];
            header.extend(labels.iter().map(|s| s.as_str()));
            let mut csv = Csv::new(&header);
            for (n, errors) in &rows {
                let mut cells = vec![n.to_string()];
                for &err in errors {
                    cells.push(if err < HL_DASH_THRESHOLD {
                        "-".to_string()
                    } else {
                        fmt_f64(err)
                    });
                }
                csv.row(&cells);
            }
            csv.finish()
        }
        Format::Json => {
            let doc = json!({
                "x": xs,
                "oracle": oracles,
                "rows": rows
                    .iter()
                    .map(|(n, errors)| json!({"n": n, "rel_errors": errors}))
                    .collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            text
        }
    })
}

pub fn bench_coth(
    provider: &mut RuleProvider,
    a: f64,
    n_max: usize,
    format: Format,
) -> Result<String, CliError> {
    let closed = coth_closed_form(a)?;
    let zero_term = 1.0 / (a * a);
    let mut rows: Vec<(usize, f64, f64, bool)> = Vec::new();
    for n in 2..=n_max {
        let rule = provider.rule(n)?;
        let summand =
            Summand::new(Side::TwoSidedNonzero, "1/(a^2+k^2)", move |k| 1.0 / (a * a + k * k));
        let value = gauss_sum(&rule, &summand)? + zero_term;
        let estimate = apriori_error_coth(n, a);
        rows.push((
            n,
            ((value - closed) / closed).abs(),
            estimate.value,
            estimate.advisory,
        ));
    }
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["n", "rel_error", "apriori", "advisory"]);
            for &(n, rel, apriori, advisory) in &rows {
                csv.row(&[
                    n.to_string(),
                    fmt_f64(rel),
                    fmt_f64(apriori),
                    (advisory as u8).to_string(),
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let doc = json!({
                "a": a,
                "closed_form": closed,
                "rows": rows
                    .iter()
                    .map(|&(n, rel, apriori, advisory)| json!({
                        "n": n,
                        "rel_error": rel,
                        "apriori": apriori,
                        "advisory": advisory,
                    }))
                    .collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            text
        }
    })
}

/// Geometric n-grid for the Richardson curves: 10, 20, 40, ... capped and
/// completed by n_max itself.
fn richardson_grid(n_max: usize) -> Vec<usize> {
    let mut grid = Vec::new();
    let mut n = 10usize;
    while n <= n_max {
        grid.push(n);
        n *= 2;
    }
    if grid.last() != Some(&n_max) && n_max >= 1 {
        grid.push(n_max);
    }
    grid
}

pub fn bench_richardson(
    a: f64,
    orders: &[usize],
    n_max: usize,
    format: Format,
) -> Result<String, CliError> {
    if orders.is_empty() {
        return Err(CliError::Usage("bench richardson needs at least one --N order".into()));
    }
    let closed = coth_closed_form(a)?;
    let grid = richardson_grid(n_max);
    let max_order = *orders.iter().max().unwrap();
    let mut wanted: Vec<usize> = grid
        .iter()
        .flat_map(|&n| n..=n + max_order)
        .collect();
    wanted.sort_unstable();
    wanted.dedup();
    let seq = partial_sums_g(a, &wanted)?;

    let mut rows: Vec<(usize, usize, f64)> = Vec::new();
    for &order in orders {
        for &n in &grid {
            let value = richardson(&seq, order, n)?;
            rows.push((order, n, ((value - closed) / closed).abs()));
        }
    }
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["order", "n", "rel_error"]);
            for &(order, n, rel) in &rows {
                csv.row(&[order.to_string(), n.to_string(), fmt_f64(rel)]);
            }
            csv.finish()
        }
        Format::Json => {
            let doc = json!({
                "a": a,
                "closed_form": closed,
                "rows": rows
                    .iter()
                    .map(|&(order, n, rel)| json!({"order": order, "n": n, "rel_error": rel}))
                    .collect::<Vec<_>>(),
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            text
        }
    })
}

pub fn zeros(provider: &mut RuleProvider, n: usize, format: Format) -> Result<String, CliError> {
    let rule = provider.rule(n)?;
    let zset = zero_set(&rule)?;
    let densities = if n >= 2 {
        density_data(&zset)?
    } else {
        Vec::new()
    };
    let nu = zset.nu();

    Ok(match format {
        Format::Csv => {
            // sigma = j/nu (half-range convention); sigma_frac = j/n spans (0, 1]
            let mut csv = Csv::new(&["j", "x", "tau", "sigma", "sigma_frac", "density"]);
            for (i, &x) in zset.x().iter().enumerate() {
                let j = i + 1;
                let density = densities
                    .get(i)
                    .map(|&(_, d)| fmt_f64(d))
                    .unwrap_or_default();
                csv.row(&[
                    j.to_string(),
                    fmt_f64(x),
                    fmt_f64(x / nu),
                    fmt_f64(j as f64 / nu),
                    fmt_f64(j as f64 / n as f64),
                    density,
                ]);
            }
            csv.finish()
        }
        Format::Json => {
            let zeros: Vec<_> = zset
                .x()
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let j = i + 1;
                    json!({
                        "j": j,
                        "x": x,
                        "tau": x / nu,
                        "sigma": j as f64 / nu,
                        "sigma_frac": j as f64 / n as f64,
                        "density": densities.get(i).map(|&(_, d)| d),
                    })
                })
                .collect();
            let doc = json!({
                "n": n,
                "nu": nu,
                "conventions": {
                    "sigma": "j / nu, half-range (0, 1/2)",
                    "sigma_frac": "j / n, full-range (0, 1]",
                },
                "zeros": zeros,
            });
            let mut text = serde_json::to_string_pretty(&doc).expect("json");
            text.push('\n');
            text
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rule_n1_json_has_closed_form_values() {
        let mut provider = RuleProvider::in_memory();
        let text = rule(&mut provider, 1, Format::Json).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        let node = doc["nodes"][0].as_f64().unwrap();
        let weight = doc["weights"][0].as_f64().unwrap();
        assert!((node - PI * PI / 15.0).abs() < 1e-15);
        assert!((weight - PI * PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn richardson_grid_shape() {
        assert_eq!(richardson_grid(100), vec![10, 20, 40, 80, 100]);
        assert_eq!(richardson_grid(8), vec![8]);
        assert_eq!(richardson_grid(40), vec![10, 20, 40]);
    }
}
