use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rieszwalk_core::ansatz::Backbone;
use rieszwalk_core::cmv::{build_cmv, coefficients_from_rationals, BandedUnitary};
use rieszwalk_core::measure::{moments, MeasureVariant};
use rieszwalk_core::schur::{
    cumulative_return_probability, first_return_series, riesz_nonnull_parameters, riesz_schur_function,
};
use rieszwalk_core::walk::{
    coined_walk_matrix, constant_coin_walk, evolve, evolve_with, first_return_numeric, hadamard_alpha,
    position_distribution, riesz_alphas, riesz_walk_matrix, safe_dimension, CoinMatrix, WalkState,
};
use rieszwalk_core::Rational;

use crate::cli::{AlphaSource, CoinSpec, Command, Emit, ReturnMethod, Variant, VerblunskyMethod};
use crate::coin_file::read_coins;
use crate::error::CliError;
use crate::table::Table;

/// Largest allowed gap between the exact and numeric first-return amplitudes.
pub const RETURN_DISCREPANCY_TOLERANCE: f64 = 1e-8;

/// A finished table plus, when a built-in check failed, the reason.
pub struct Report {
    pub table: Table,
    pub failure: Option<String>,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Report { table, failure: None }
    }
}

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Moments { max, variant } => Ok(cmd_moments(*max, *variant).into()),
        Command::Verblunsky { count, method, variant } => cmd_verblunsky(*count, *method, *variant),
        Command::Backbone { count } => Ok(cmd_backbone(*count).into()),
        Command::Limits { count } => Ok(cmd_limits(*count).into()),
        Command::Walk { coin, steps, emit } => cmd_walk(coin, *steps, *emit).map(Into::into),
        Command::FirstReturn { coin, max, method } => cmd_first_return(coin, *max, *method),
        Command::Cmv { dim, alphas } => cmd_cmv(*dim, *alphas).map(Into::into),
    }
}

fn measure_variant(v: Variant) -> MeasureVariant {
    match v {
        Variant::Mu => MeasureVariant::Mu,
        Variant::Nu => MeasureVariant::Nu,
    }
}

fn cmd_moments(max: usize, variant: Variant) -> Table {
    let mut t = Table::new(&["j", "moment"]);
    for (j, m) in moments(max, measure_variant(variant)).into_iter().enumerate() {
        t.push(vec![j.into(), m.into()]);
    }
    t
}

fn cmd_verblunsky(count: usize, method: VerblunskyMethod, variant: Variant) -> Result<Report, CliError> {
    let index = |m: u64| match variant {
        Variant::Nu => m - 1,
        Variant::Mu => 4 * m - 1,
    };
    let schur = match method {
        VerblunskyMethod::Ansatz => Vec::new(),
        _ => riesz_nonnull_parameters(count).map_err(CliError::computation)?,
    };
    let mut backbone = Backbone::for_parameters(count as u64);
    let mut ansatz = |m: u64| backbone.xi(m);

    let mut failure = None;
    let table = match method {
        VerblunskyMethod::Schur => {
            let mut t = Table::new(&["index", "alpha"]);
            for (m, a) in (1..).zip(schur) {
                t.push(vec![index(m).into(), a.into()]);
            }
            t
        }
        VerblunskyMethod::Ansatz => {
            let mut t = Table::new(&["index", "alpha"]);
            for m in 1..=count as u64 {
                t.push(vec![index(m).into(), ansatz(m).into()]);
            }
            t
        }
        VerblunskyMethod::Both => {
            let mut t = Table::new(&["index", "schur", "ansatz", "equal"]);
            for (m, s) in (1..).zip(schur) {
                let a = ansatz(m);
                let equal = a == s;
                if !equal && failure.is_none() {
                    failure = Some(format!(
                        "first mismatch at index {}: schur {s}, ansatz {a}",
                        index(m)
                    ));
                }
                t.push(vec![index(m).into(), s.into(), a.into(), equal.into()]);
            }
            t
        }
    };
    Ok(Report { table, failure })
}

fn cmd_backbone(count: usize) -> Table {
    let b = Backbone::with_len(count);
    let mut t = Table::new(&["i", "value"]);
    for (i, &a) in (1usize..).zip(b.values()) {
        t.push(vec![i.into(), a.into()]);
    }
    t
}

fn cmd_limits(count: usize) -> Table {
    let l = Backbone::new().limit_values(count);
    let mut t = Table::new(&["family", "i", "value"]);
    for (family, first, values) in [("negative", 1usize, l.negative), ("positive", 0, l.positive), ("shifted", 0, l.shifted)] {
        for (i, v) in (first..).zip(values) {
            t.push(vec![family.into(), i.into(), v.into()]);
        }
    }
    t
}

fn walk_matrix(coin: &CoinSpec, dim: usize) -> Result<BandedUnitary, CliError> {
    match coin {
        CoinSpec::Riesz => riesz_walk_matrix(dim),
        CoinSpec::Hadamard => constant_coin_walk(CoinMatrix::hadamard(), dim),
        CoinSpec::File(path) => coined_walk_matrix(&read_coins(path)?, dim),
    }
    .map_err(CliError::computation)
}

fn matrix_table(m: &BandedUnitary) -> Table {
    let mut t = Table::new(&["row", "col", "real", "imag"]);
    for (r, c, v) in m.nonzero_entries() {
        t.push(vec![r.into(), c.into(), v.re.into(), v.im.into()]);
    }
    t
}

fn cmd_walk(coin: &CoinSpec, steps: usize, emit: Emit) -> Result<Table, CliError> {
    let m = walk_matrix(coin, safe_dimension(steps))?;
    let start = WalkState::origin(m.dimension());
    match emit {
        Emit::Matrix => Ok(matrix_table(&m)),
        Emit::NormTrace => {
            let mut t = Table::new(&["step", "total_probability"]);
            t.push(vec![0usize.into(), start.norm_sqr().into()]);
            evolve_with(&m, &start, steps, |step, s| {
                t.push(vec![step.into(), s.norm_sqr().into()]);
            })
            .map_err(CliError::computation)?;
            Ok(t)
        }
        Emit::Distribution => {
            let end = evolve(&m, &start, steps).map_err(CliError::computation)?;
            let d = position_distribution(&end, steps);
            // Probability per unit of x = i/n: each site is a bin of width 1/n.
            let width = if steps == 0 { 1.0 } else { 1.0 / steps as f64 };
            let mut t = Table::new(&["site", "x_over_n", "probability", "density"]);
            for (site, x, p) in d.scaled() {
                t.push(vec![site.into(), x.into(), p.into(), (p / width).into()]);
            }
            Ok(t)
        }
    }
}

fn exact_returns(max: usize) -> Result<Vec<Rational>, CliError> {
    if max == 0 {
        return Ok(Vec::new());
    }
    let f = riesz_schur_function(max, MeasureVariant::Mu).map_err(CliError::computation)?;
    let series = first_return_series(&f, max).map_err(CliError::computation)?;
    Ok(series.amplitudes().to_vec())
}

fn numeric_returns(coin: &CoinSpec, max: usize) -> Result<Vec<Complex64>, CliError> {
    if max == 0 {
        return Ok(Vec::new());
    }
    let m = walk_matrix(coin, safe_dimension(max))?;
    first_return_numeric(&m, max).map_err(CliError::computation)
}

fn cmd_first_return(coin: &CoinSpec, max: usize, method: Option<ReturnMethod>) -> Result<Report, CliError> {
    let method = method.unwrap_or(match coin {
        CoinSpec::Riesz => ReturnMethod::Exact,
        _ => ReturnMethod::Numeric,
    });
    if method != ReturnMethod::Numeric && *coin != CoinSpec::Riesz {
        return Err(CliError::Usage(
            "exact first returns are only available for the riesz coin; use --method numeric".into(),
        ));
    }

    let mut failure = None;
    let table = match method {
        ReturnMethod::Exact => {
            let amplitudes = exact_returns(max)?;
            let series = rieszwalk_core::schur::FirstReturnSeries::new(amplitudes);
            let cumulative = cumulative_return_probability(&series);
            let mut t = Table::new(&["n", "amplitude", "cumulative_probability"]);
            for (n, (a, c)) in (1usize..).zip(series.amplitudes().iter().zip(cumulative.into_iter().skip(1))) {
                t.push(vec![n.into(), a.clone().into(), c.into()]);
            }
            t
        }
        ReturnMethod::Numeric => {
            let mut t = Table::new(&["n", "amplitude", "amplitude_imag", "cumulative_probability"]);
            let mut total = 0.0;
            for (n, a) in (1usize..).zip(numeric_returns(coin, max)?) {
                total += a.norm_sqr();
                t.push(vec![n.into(), a.re.into(), a.im.into(), total.into()]);
            }
            t
        }
        ReturnMethod::Both => {
            let exact = exact_returns(max)?;
            let numeric = numeric_returns(coin, max)?;
            let mut t = Table::new(&["n", "amplitude", "numeric_amplitude", "cumulative_probability", "discrepancy"]);
            let mut total = Rational::zero();
            for (n, (e, x)) in (1usize..).zip(exact.into_iter().zip(numeric)) {
                total += &e * &e;
                let gap = (x - Complex64::new(e.to_f64().unwrap_or(f64::NAN), 0.0)).norm();
                if (gap.is_nan() || gap > RETURN_DISCREPANCY_TOLERANCE) && failure.is_none() {
                    failure = Some(format!("discrepancy {gap:e} at n = {n} exceeds {RETURN_DISCREPANCY_TOLERANCE:e}"));
                }
                t.push(vec![n.into(), e.into(), x.re.into(), total.clone().into(), gap.into()]);
            }
            t
        }
    };
    Ok(Report { table, failure })
}

fn cmd_cmv(dim: usize, alphas: AlphaSource) -> Result<Table, CliError> {
    let coefficients = match alphas {
        AlphaSource::Riesz => coefficients_from_rationals(&riesz_alphas(dim)).map_err(CliError::computation)?,
        AlphaSource::Hadamard => hadamard_alpha(dim),
    };
    let m = build_cmv(&coefficients, dim).map_err(CliError::computation)?;
    Ok(matrix_table(&m))
}
