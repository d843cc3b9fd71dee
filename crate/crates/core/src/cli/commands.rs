use std::path::Path;

use serde::Serialize;

use super::config::{digest, CellSpec, EnsembleKind, ExperimentConfig};
use super::output::{num, opt_num, output_dir, CellRows, RunWriter, Table};
use super::{CellArgs, CliError, GlobalArgs};
use crate::concentration::{
    estimate_tails, fit_rate, log_log_slope, moment_experiment, replicate_map, semicircle_cdf,
    semicircle_distance, EnsembleCell, RateFit, TailEstimate, MIN_USABLE_COUNT,
};
use crate::distributions::calibration::{run_sweep, SweepConfig};
use crate::distributions::derive_seed;
use crate::jacobi::{self, JacobiParams};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn load_config(global: &GlobalArgs) -> Result<ExperimentConfig, CliError> {
    let path = global
        .config
        .as_deref()
        .ok_or_else(|| usage("this command needs --config PATH"))?;
    ExperimentConfig::load(path)
}

fn master_seed(global: &GlobalArgs, cfg: Option<&ExperimentConfig>) -> u64 {
    global.seed.or(cfg.and_then(|c| c.seed)).unwrap_or(0)
}

fn required_out<'a>(
    global: &'a GlobalArgs,
    cfg: &'a ExperimentConfig,
) -> Result<&'a Path, CliError> {
    let dir = global
        .out
        .as_deref()
        .or(cfg.out.as_deref())
        .ok_or_else(|| usage("no output directory: pass --out DIR or set `out` in the config"))?;
    output_dir(dir)
}

impl CellArgs {
    fn given(&self) -> bool {
        self.ensemble.is_some() || self.n.is_some() || self.beta.is_some()
    }

    fn resolve(&self) -> Result<EnsembleCell, CliError> {
        let kind = self
            .ensemble
            .ok_or_else(|| usage("--ensemble is required"))?;
        let spec = CellSpec {
            n: self.n.ok_or_else(|| usage("--n is required"))?,
            beta: self.beta.ok_or_else(|| usage("--beta is required"))?,
            alpha: self.alpha,
            a: self.a,
            b: self.b,
        };
        spec.resolve(kind)
    }
}

/// Cells from flags when any are given, otherwise from the config.
fn cells_from(
    global: &GlobalArgs,
    args: &CellArgs,
) -> Result<(Vec<EnsembleCell>, String, Option<ExperimentConfig>), CliError> {
    if args.given() {
        Ok((vec![args.resolve()?], digest(args), None))
    } else if global.config.is_some() {
        let cfg = load_config(global)?;
        Ok((cfg.cells_only()?, digest(&cfg), Some(cfg)))
    } else {
        Err(usage(
            "give cell flags (--ensemble, --n, --beta, ...) or --config PATH",
        ))
    }
}

fn param_columns(cell: &EnsembleCell) -> [String; 4] {
    match cell {
        EnsembleCell::Laguerre(p) => [
            "laguerre".into(),
            p.n().to_string(),
            num(p.beta()),
            num(p.alpha()),
        ],
        EnsembleCell::Jacobi(p) => [
            "jacobi".into(),
            p.n().to_string(),
            num(p.beta()),
            String::new(),
        ],
    }
}

fn jacobi_ab(cell: &EnsembleCell) -> (String, String) {
    match cell {
        EnsembleCell::Jacobi(p) => (num(p.a()), num(p.b())),
        EnsembleCell::Laguerre(_) => (String::new(), String::new()),
    }
}

fn tail_columns(t: &TailEstimate) -> [String; 6] {
    [
        t.replicates.to_string(),
        t.exceed_count.to_string(),
        num(t.p_hat),
        num(t.ci_lo),
        num(t.ci_hi),
        u8::from(t.exceed_count >= MIN_USABLE_COUNT).to_string(),
    ]
}

pub fn zeros(global: &GlobalArgs, args: &CellArgs) -> Result<(), CliError> {
    let (cells, config_digest, cfg) = cells_from(global, args)?;
    let mut table = Table::new(
        "rmt.zeros.v1",
        &[
            "record",
            "cell",
            "ensemble",
            "n",
            "beta",
            "alpha",
            "a",
            "b",
            "index",
            "value",
            "closed_form",
        ],
    );
    let mut per_cell = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let zeros = cell.zeros()?;
        let [ens, n, beta, alpha] = param_columns(cell);
        let (a, b) = jacobi_ab(cell);
        let prefix = |record: &str| {
            vec![
                record.to_string(),
                i.to_string(),
                ens.clone(),
                n.clone(),
                beta.clone(),
                alpha.clone(),
                a.clone(),
                b.clone(),
            ]
        };
        for (k, &x) in zeros.values().iter().enumerate() {
            let mut row = prefix("zero");
            row.extend([(k + 1).to_string(), num(x), String::new()]);
            table.push(row);
        }
        let (mean_cf, var_cf) = match cell {
            EnsembleCell::Laguerre(p) => (Some(2.0 * p.alpha()), None),
            EnsembleCell::Jacobi(p) => {
                let (y1, y2) = jacobi::zero_moments_closed_form(p)?;
                (Some(y1), Some(y2))
            }
        };
        let mut row = prefix("mean");
        row.extend([String::new(), num(zeros.mean()), opt_num(mean_cf)]);
        table.push(row);
        let mut row = prefix("variance");
        row.extend([String::new(), num(zeros.variance()), opt_num(var_cf)]);
        table.push(row);
        per_cell.push(CellRows {
            cell: i,
            rows: zeros.len() + 2,
        });
    }
    match global.out.as_deref() {
        Some(dir) => {
            let dir = output_dir(dir)?;
            let mut w = RunWriter::new(
                dir,
                "zeros",
                config_digest,
                master_seed(global, cfg.as_ref()),
            );
            w.table("zeros.csv", &table)?;
            w.finish(per_cell)
        }
        None => {
            print!("{}", table.render());
            Ok(())
        }
    }
}

fn predictor_name(kind: EnsembleKind) -> &'static str {
    match kind {
        EnsembleKind::Laguerre => "alpha*eps*min(eps,1)",
        EnsembleKind::Jacobi => "(a+b)*eps^2",
    }
}

fn fit_row(quantity: &str, predictor: &str, fit: &RateFit, total: usize) -> Vec<String> {
    vec![
        quantity.into(),
        predictor.into(),
        num(fit.slope),
        num(fit.intercept),
        num(fit.r_squared),
        fit.predictors.len().to_string(),
        total.to_string(),
    ]
}

const FIT_COLUMNS: &[&str] = &[
    "quantity",
    "predictor",
    "slope",
    "intercept",
    "r_squared",
    "usable_cells",
    "total_cells",
];

pub fn concentration(global: &GlobalArgs) -> Result<(), CliError> {
    let cfg = load_config(global)?;
    let cells = cfg.validate()?;
    if cfg.epsilons.is_empty() {
        return Err(usage(
            "concentration config needs a non-empty `epsilons` list",
        ));
    }
    let dir = required_out(global, &cfg)?;
    let seed = master_seed(global, Some(&cfg));
    let mut w = RunWriter::new(dir, "concentration", digest(&cfg), seed);

    let mut table = Table::new(
        "rmt.concentration.v1",
        &[
            "cell",
            "ensemble",
            "n",
            "beta",
            "alpha",
            "a",
            "b",
            "epsilon",
            "predictor",
            "replicates",
            "exceed_count",
            "p_hat",
            "ci_lo",
            "ci_hi",
            "usable",
        ],
    );
    let mut series = Vec::new();
    let mut per_cell = Vec::new();
    for (i, cell) in cells.iter().enumerate() {
        let tails = estimate_tails(
            cell,
            &cfg.epsilons,
            cfg.replicates,
            derive_seed(seed, i as u64),
        )?;
        let [ens, n, beta, alpha] = param_columns(cell);
        let (a, b) = jacobi_ab(cell);
        for (&eps, t) in cfg.epsilons.iter().zip(&tails) {
            let x = cell.predictor(eps);
            let mut row = vec![
                i.to_string(),
                ens.clone(),
                n.clone(),
                beta.clone(),
                alpha.clone(),
                a.clone(),
                b.clone(),
                num(eps),
                num(x),
            ];
            row.extend(tail_columns(t));
            table.push(row);
            series.push((x, *t));
        }
        per_cell.push(CellRows {
            cell: i,
            rows: tails.len(),
        });
    }
    w.table("concentration.csv", &table)?;

    let fit = fit_rate(&series);
    if let Ok(fit) = &fit {
        let mut ft = Table::new("rmt.fit.v1", FIT_COLUMNS);
        ft.push(fit_row(
            "tail_rate",
            predictor_name(cfg.ensemble),
            fit,
            series.len(),
        ));
        w.table("fit.csv", &ft)?;
        println!("slope={} r_squared={}", num(fit.slope), num(fit.r_squared));
    }
    w.finish(per_cell)?;
    fit.map(|_| ()).map_err(CliError::from)
}

pub fn moments(global: &GlobalArgs) -> Result<(), CliError> {
    let cfg = load_config(global)?;
    if cfg.ensemble != EnsembleKind::Jacobi {
        return Err(usage("moments needs ensemble = \"jacobi\""));
    }
    let params: Vec<JacobiParams> = cfg
        .validate()?
        .into_iter()
        .filter_map(|c| match c {
            EnsembleCell::Jacobi(p) => Some(p),
            EnsembleCell::Laguerre(_) => None,
        })
        .collect();
    let dir = required_out(global, &cfg)?;
    let seed = master_seed(global, Some(&cfg));
    let mut w = RunWriter::new(dir, "moments", digest(&cfg), seed);
    let cells = moment_experiment(&params, cfg.replicates, seed, &cfg.epsilons)?;

    let mut mt = Table::new(
        "rmt.moments.v1",
        &[
            "cell",
            "n",
            "beta",
            "a",
            "b",
            "replicates",
            "expected_m1",
            "expected_m2_leading",
            "y1",
            "y2",
            "mean_m1",
            "var_m1",
            "mean_m2",
            "var_m2",
            "mean_mprime",
            "var_mprime",
            "var_m1_ratio",
        ],
    );
    let mut tt = Table::new(
        "rmt.moments_tails.v1",
        &[
            "cell",
            "epsilon",
            "predictor",
            "replicates",
            "exceed_count",
            "p_hat",
            "ci_lo",
            "ci_hi",
            "usable",
        ],
    );
    let mut series = Vec::new();
    let mut per_cell = Vec::new();
    for (i, c) in cells.iter().enumerate() {
        let p = &c.params;
        let ratio = i.checked_sub(1).map(|j| c.var_m1 / cells[j].var_m1);
        mt.push(vec![
            i.to_string(),
            p.n().to_string(),
            num(p.beta()),
            num(p.a()),
            num(p.b()),
            c.replicates.to_string(),
            num(c.expected_m1),
            num(c.expected_m2_leading),
            num(c.y1),
            num(c.y2),
            num(c.mean_m1),
            num(c.var_m1),
            num(c.mean_m2),
            num(c.var_m2),
            num(c.mean_mprime),
            num(c.var_mprime),
            opt_num(ratio),
        ]);
        for (eps, t) in &c.m1_tails {
            let x = p.big_n() * p.n() as f64 * eps * eps;
            let mut row = vec![i.to_string(), num(*eps), num(x)];
            row.extend(tail_columns(t));
            tt.push(row);
            series.push((x, *t));
        }
        per_cell.push(CellRows {
            cell: i,
            rows: 1 + c.m1_tails.len(),
        });
    }
    w.table("moments.csv", &mt)?;
    if !tt.is_empty() {
        w.table("moments_tails.csv", &tt)?;
    }

    let mut ft = Table::new("rmt.moments_fit.v1", FIT_COLUMNS);
    let scaling = |quantity: &str, predictor: &str, xs: Vec<f64>, ys: Vec<f64>| {
        log_log_slope(&xs, &ys).ok().map(|slope| {
            vec![
                quantity.into(),
                predictor.into(),
                num(slope),
                String::new(),
                String::new(),
                xs.len().to_string(),
                xs.len().to_string(),
            ]
        })
    };
    let nn: Vec<f64> = cells
        .iter()
        .map(|c| c.params.big_n() * c.params.n() as f64)
        .collect();
    let ns: Vec<f64> = cells.iter().map(|c| c.params.n() as f64).collect();
    if let Some(row) = scaling(
        "log_var_m1",
        "log(N*n)",
        nn,
        cells.iter().map(|c| c.var_m1).collect(),
    ) {
        ft.push(row);
    }
    if let Some(row) = scaling(
        "log_var_mprime",
        "log(n)",
        ns,
        cells.iter().map(|c| c.var_mprime).collect(),
    ) {
        ft.push(row);
    }
    let fit = if series.is_empty() {
        None
    } else {
        Some(fit_rate(&series))
    };
    if let Some(Ok(fit)) = &fit {
        ft.push(fit_row("m1_tail_rate", "N*n*eps^2", fit, series.len()));
    }
    if !ft.is_empty() {
        w.table("moments_fit.csv", &ft)?;
    }
    w.finish(per_cell)?;
    match fit {
        Some(Err(e)) => Err(e.into()),
        _ => Ok(()),
    }
}

#[derive(Serialize)]
struct SemicircleRun<'a> {
    cell: &'a CellArgs,
    draws: u64,
}

pub fn semicircle(global: &GlobalArgs, args: &CellArgs, draws: u64) -> Result<(), CliError> {
    let (cells, config_digest, cfg) = if args.given() {
        let d = digest(&SemicircleRun { cell: args, draws });
        (vec![args.resolve()?], d, None)
    } else {
        cells_from(global, args)?
    };
    let p = match cells.as_slice() {
        [EnsembleCell::Jacobi(p)] => *p,
        [_] => return Err(usage("semicircle needs a Jacobi cell")),
        _ => return Err(usage("semicircle takes exactly one cell")),
    };
    let seed = master_seed(global, cfg.as_ref());
    let mut points: Vec<f64> = if draws == 0 {
        jacobi::semicircle_transform(&jacobi::polynomial_zeros(&p)?, &p)
    } else {
        replicate_map(draws, seed, |stream| {
            Ok(jacobi::semicircle_transform(
                &jacobi::sample_spectrum(&p, stream)?,
                &p,
            ))
        })?
        .concat()
    };
    let ks = semicircle_distance(&points)?;
    println!("ks_distance={}", num(ks));
    if let Some(dir) = global.out.as_deref() {
        let dir = output_dir(dir)?;
        points.sort_by(f64::total_cmp);
        let total = points.len() as f64;
        let mut table = Table::new("rmt.semicircle.v1", &["x", "ecdf", "semicircle_cdf"]);
        for (i, &x) in points.iter().enumerate() {
            table.push(vec![
                num(x),
                num((i + 1) as f64 / total),
                num(semicircle_cdf(x)),
            ]);
        }
        let mut w = RunWriter::new(dir, "semicircle", config_digest, seed);
        w.table("semicircle.csv", &table)?;
        w.finish(vec![CellRows {
            cell: 0,
            rows: table.len(),
        }])?;
    }
    Ok(())
}

pub fn calibrate_bounds(global: &GlobalArgs, draws: Option<u64>) -> Result<(), CliError> {
    let mut sweep = SweepConfig::default();
    if let Some(seed) = global.seed {
        sweep.seed = seed;
    }
    if let Some(d) = draws {
        if d == 0 {
            return Err(usage("--draws must be positive"));
        }
        sweep.draws = d;
    }
    let report = run_sweep(&sweep);
    let text = report.calibration.to_toml();
    match global.out.as_deref() {
        Some(dir) => {
            let dir = output_dir(dir)?;
            super::output::write_atomic(&dir.join("calibration.toml"), text.as_bytes())?;
            let c = report.calibration.constants;
            println!(
                "sym_beta={} sym_beta_sqrt_shift={}",
                c.sym_beta, c.sym_beta_sqrt_shift
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}
