use crate::error::Result;
use crate::models::MlfnModel;

/// Worst disagreement between backprop and central differences.
#[derive(Debug, Clone, PartialEq)]
pub struct GradCheckReport {
    /// `|a - n| / max(1e-8, |a| + |n|)`, maximized over parameters.
    pub max_rel_error: f64,
    /// Index into the flattened parameter vector.
    pub worst_param: usize,
    pub analytic: f64,
    pub numeric: f64,
}

fn batch_loss<R: AsRef<[f64]>>(m: &MlfnModel, x: &[R], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| {
            let r = m.forward_unchecked(xi.as_ref()) - yi;
            r * r
        })
        .sum::<f64>()
        / x.len() as f64
}

/// Compares the analytic gradient of the batch mean squared error against
/// `(L(theta + h e_i) - L(theta - h e_i)) / 2h` for every parameter.
pub fn gradient_check<R: AsRef<[f64]>>(
    m: &MlfnModel,
    x: &[R],
    y: &[f64],
    step: f64,
) -> Result<GradCheckReport> {
    let analytic = m.batch_gradient(x, y)?.flatten();
    let theta = m.flatten();
    let mut probe = m.clone();
    let mut params = theta.clone();
    let mut report = GradCheckReport {
        max_rel_error: 0.0,
        worst_param: 0,
        analytic: analytic[0],
        numeric: 0.0,
    };
    let mut first = true;
    for i in 0..theta.len() {
        params[i] = theta[i] + step;
        probe.set_flat(&params)?;
        let plus = batch_loss(&probe, x, y);
        params[i] = theta[i] - step;
        probe.set_flat(&params)?;
        let minus = batch_loss(&probe, x, y);
        params[i] = theta[i];

        let numeric = (plus - minus) / (2.0 * step);
        let a = analytic[i];
        let err = (a - numeric).abs() / (a.abs() + numeric.abs()).max(1e-8);
        if first || err > report.max_rel_error {
            report = GradCheckReport {
                max_rel_error: err,
                worst_param: i,
                analytic: a,
                numeric,
            };
            first = false;
        }
    }
    Ok(report)
}
