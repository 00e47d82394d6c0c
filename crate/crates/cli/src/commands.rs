use hdo_core::convergence::{evaluate, j1_point, ConvergenceReport, Quantity};
use hdo_core::entropies::{conjugate_index, SHANNON_ROUTE_TOL};
use hdo_core::{
    j1_asym, renyi_total, shannon, tsallis_from_renyi, uncertainty_sum, HarmonicState, J1Params,
    Mode, QuadratureSpec, Space,
};
use rayon::prelude::*;

use crate::args::{
    AsymArgs, ConvergeArgs, ModeArg, MomentsArgs, QuantityArg, RenyiArgs, ShannonArgs, SpaceArg,
    StateArgs, SumsArgs,
};
use crate::table::{Cell, Table};
use crate::CliError;

pub struct Context {
    pub spec: QuadratureSpec,
    pub pool: rayon::ThreadPool,
}

impl Context {
    /// Maps `f` over `items` on the pool, keeping input order; the first error by index wins.
    fn par_map<T, R, F>(&self, items: &[T], f: F) -> Result<Vec<R>, CliError>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Result<R, CliError> + Sync,
    {
        self.pool
            .install(|| items.par_iter().map(&f).collect::<Vec<_>>())
            .into_iter()
            .collect()
    }
}

fn numeric(e: hdo_core::Error) -> CliError {
    CliError::Numeric(e.to_string())
}

fn usage(e: hdo_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Position => Space::Position,
            SpaceArg::Momentum => Space::Momentum,
        }
    }
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Asymptotic => Mode::Asymptotic,
        }
    }
}

pub fn resolve_states(a: &StateArgs) -> Result<Vec<HarmonicState>, CliError> {
    let template = a
        .state
        .as_deref()
        .map(str::parse::<HarmonicState>)
        .transpose()
        .map_err(usage)?;
    match (template, &a.grid_d) {
        (Some(t), None) => Ok(vec![t]),
        (Some(t), Some(grid)) => non_empty(grid)?
            .iter()
            .map(|&d| t.with_dim(d).map_err(usage))
            .collect(),
        (None, Some(grid)) => non_empty(grid)?
            .iter()
            .map(|&d| {
                let len = d
                    .checked_sub(1)
                    .filter(|&x| x > 0)
                    .ok_or_else(|| CliError::Usage(format!("D = {d} must be >= 2")))?;
                HarmonicState::from_chain(d, a.lambda, a.n, &vec![a.l; len]).map_err(usage)
            })
            .collect(),
        (None, None) => Err(CliError::Usage(
            "one of --state or --grid-D is required".into(),
        )),
    }
}

fn non_empty<T>(v: &[T]) -> Result<&[T], CliError> {
    if v.is_empty() {
        Err(CliError::Usage("empty grid".into()))
    } else {
        Ok(v)
    }
}

fn check_q(q: f64) -> Result<(), CliError> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "q = {q} must be positive and finite"
        )))
    }
}

fn state_cells(s: &HarmonicState) -> Vec<Cell> {
    vec![s.dim.into(), s.lambda.into(), s.n.into(), s.l().into()]
}

/// Cartesian product of states and a parameter list, states outermost.
fn pairs<P: Copy>(states: &[HarmonicState], params: &[P]) -> Vec<(HarmonicState, P)> {
    states
        .iter()
        .flat_map(|s| params.iter().map(move |&p| (s.clone(), p)))
        .collect()
}

pub fn moments(a: &MomentsArgs, ctx: &Context) -> Result<Table, CliError> {
    let states = resolve_states(&a.state)?;
    for &k in non_empty(&a.k)? {
        if !(k >= 0.0) || !k.is_finite() {
            return Err(CliError::Usage(format!("k = {k} must be finite and >= 0")));
        }
    }
    let space = Space::from(a.space);
    let rows = ctx.par_map(&pairs(&states, &a.k), |(s, k)| {
        let p = evaluate(s, Quantity::Moment { order: *k, space }, &ctx.spec).map_err(numeric)?;
        let mut row = state_cells(s);
        row.extend([
            Cell::from(*k),
            space.as_str().into(),
            p.exact.into(),
            p.asym.into(),
            p.rel_err.into(),
        ]);
        Ok(row)
    })?;
    let mut t = Table::new(vec![
        "D", "lambda", "n", "l", "k", "space", "exact", "asym", "rel_err",
    ]);
    t.rows = rows;
    Ok(t)
}

pub fn renyi(a: &RenyiArgs, ctx: &Context) -> Result<Table, CliError> {
    let states = resolve_states(&a.state)?;
    for &q in non_empty(&a.q)? {
        check_q(q)?;
    }
    let (space, mode) = (Space::from(a.space), Mode::from(a.mode));
    let rows = ctx.par_map(&pairs(&states, &a.q), |(s, q)| {
        let r = renyi_total(s, *q, space, mode, &ctx.spec).map_err(numeric)?;
        let tsallis = if (q - 1.0).abs() < SHANNON_ROUTE_TOL {
            r.value
        } else {
            tsallis_from_renyi(r.value, *q).map_err(numeric)?
        };
        let mut notes = r.notes.clone();
        let tsallis = if tsallis.is_finite() {
            Cell::from(tsallis)
        } else {
            notes.push("Tsallis value exceeds the f64 range".into());
            Cell::Missing
        };
        let mut row = state_cells(s);
        row.extend([
            Cell::from(s.to_string()),
            Cell::from(*q),
            space.as_str().into(),
            mode.as_str().into(),
            r.value.into(),
            r.radial_part.into(),
            r.angular_part.into(),
            tsallis,
            r.conjecture.into(),
            notes.join(" | ").into(),
        ]);
        Ok(row)
    })?;
    let mut t = Table::new(vec![
        "D",
        "lambda",
        "n",
        "l",
        "state",
        "q",
        "space",
        "mode",
        "value",
        "radial",
        "angular",
        "tsallis",
        "conjecture",
        "notes",
    ]);
    t.rows = rows;
    Ok(t)
}

pub fn shannon_cmd(a: &ShannonArgs, ctx: &Context) -> Result<Table, CliError> {
    let states = resolve_states(&a.state)?;
    let (space, mode) = (Space::from(a.space), Mode::from(a.mode));
    let rows = ctx.par_map(&states, |s| {
        let r = shannon(s, space, mode, &ctx.spec).map_err(numeric)?;
        let mut row = state_cells(s);
        row.extend([
            Cell::from(s.to_string()),
            space.as_str().into(),
            mode.as_str().into(),
            r.value.into(),
            r.radial_part.into(),
            r.angular_part.into(),
            r.conjecture.into(),
        ]);
        Ok(row)
    })?;
    let mut t = Table::new(vec![
        "D",
        "lambda",
        "n",
        "l",
        "state",
        "space",
        "mode",
        "value",
        "radial",
        "angular",
        "conjecture",
    ]);
    t.rows = rows;
    Ok(t)
}

pub fn sums(a: &SumsArgs, ctx: &Context) -> Result<Table, CliError> {
    let states = resolve_states(&a.state)?;
    for &q in non_empty(&a.q)? {
        conjugate_index(q).map_err(usage)?;
    }
    let rows = ctx.par_map(&pairs(&states, &a.q), |(s, q)| {
        let r = uncertainty_sum(s, *q, &ctx.spec).map_err(numeric)?;
        let mut row = state_cells(s);
        row.extend([
            Cell::from(s.to_string()),
            r.q.into(),
            r.p.into(),
            r.sum_exact.into(),
            r.sum_asym.into(),
            r.renyi_bound.into(),
            r.renyi_slack.into(),
            r.shannon_sum.into(),
            r.shannon_bound.into(),
            r.shannon_slack.into(),
        ]);
        Ok(row)
    })?;
    let mut t = Table::new(vec![
        "D",
        "lambda",
        "n",
        "l",
        "state",
        "q",
        "p",
        "sum_exact",
        "sum_asym",
        "bound",
        "slack",
        "shannon_sum",
        "shannon_bound",
        "shannon_slack",
    ]);
    t.rows = rows;
    Ok(t)
}

fn report_table(
    first: &'static str,
    exact: &'static str,
    asym: &'static str,
    r: &ConvergenceReport,
) -> Table {
    let slope = r.fit.map(|f| f.slope);
    let ci = r.fit.and_then(|f| f.half_width);
    let mut t = Table::new(vec![
        first,
        exact,
        asym,
        "rel_err",
        "fitted_slope",
        "slope_ci",
    ]);
    t.rows = r
        .points
        .iter()
        .map(|p| {
            vec![
                p.grid_value.into(),
                p.exact.into(),
                p.asym.into(),
                p.rel_err.into(),
                slope.into(),
                ci.into(),
            ]
        })
        .collect();
    t
}

pub fn asym(a: &AsymArgs, ctx: &Context) -> Result<Table, CliError> {
    let alphas = non_empty(&a.alpha_grid)?;
    let params: Vec<J1Params> = alphas
        .iter()
        .map(|&alpha| J1Params::new(a.sigma, a.rate, a.kappa, a.m, alpha))
        .collect();
    for p in &params {
        p.validate().map_err(usage)?;
        j1_asym(p, a.order).map_err(usage)?;
    }
    let points = ctx.par_map(&params, |p| {
        j1_point(p, a.order, &ctx.spec).map_err(numeric)
    })?;
    let report = ConvergenceReport::from_points(format!("j1_order{}", a.order), points);
    Ok(report_table("alpha", "ln_exact", "ln_asym", &report))
}

pub fn converge(a: &ConvergeArgs, ctx: &Context) -> Result<Table, CliError> {
    let states = resolve_states(&a.state)?;
    let space = Space::from(a.space);
    let quantity = match a.quantity {
        QuantityArg::Moment => {
            if !(a.k >= 0.0) || !a.k.is_finite() {
                return Err(CliError::Usage(format!(
                    "k = {} must be finite and >= 0",
                    a.k
                )));
            }
            Quantity::Moment { order: a.k, space }
        }
        QuantityArg::RenyiTotal => Quantity::RenyiTotal { q: a.q, space },
        QuantityArg::RenyiRadial => Quantity::RenyiRadial { q: a.q, space },
        QuantityArg::RenyiAngular => Quantity::RenyiAngular { q: a.q },
        QuantityArg::Shannon => Quantity::Shannon { space },
    };
    check_q(a.q)?;
    let points = ctx.par_map(&states, |s| {
        evaluate(s, quantity, &ctx.spec).map_err(numeric)
    })?;
    let report = ConvergenceReport::from_points(quantity.name(), points);
    Ok(report_table("grid_value", "exact", "asym", &report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(d: &[usize], n: u32, l: i64) -> StateArgs {
        StateArgs {
            state: None,
            grid_d: Some(d.to_vec()),
            n,
            l,
            lambda: 1.0,
        }
    }

    #[test]
    fn grid_templates() {
        let s = resolve_states(&grid(&[3, 10], 1, 2)).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[1].chain(), vec![2; 9]);
        assert_eq!(s[1].n, 1);
    }

    #[test]
    fn state_string_resized() {
        let mut a = grid(&[5, 8], 0, 0);
        a.state = Some("D=4;lambda=2;n=1;mu=2,1^2".into());
        let s = resolve_states(&a).unwrap();
        assert_eq!(s[1].dim, 8);
        assert_eq!(s[1].lambda, 2.0);
    }

    #[test]
    fn missing_state_is_usage_error() {
        let mut a = grid(&[], 0, 0);
        a.grid_d = None;
        assert!(matches!(resolve_states(&a), Err(CliError::Usage(_))));
        assert!(matches!(
            resolve_states(&grid(&[1], 0, 0)),
            Err(CliError::Usage(_))
        ));
    }
}
