//! Damped Gauss-Newton for small nonlinear least-squares problems.
//!
//! Jacobians are central differences. Each step solves the normal
//! equations and is halved until the objective decreases, so the accepted
//! objective sequence is non-increasing.

use nalgebra::{DMatrix, DVector};

use crate::error::{FoilError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussNewton {
    pub max_iterations: usize,
    /// Converged once `|dx| <= step_tolerance * (|x| + step_tolerance)`.
    pub step_tolerance: f64,
    pub max_halvings: usize,
}

impl Default for GaussNewton {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            step_tolerance: 1e-10,
            max_halvings: 40,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub params: Vec<f64>,
    pub residual_rms: f64,
    pub iterations: usize,
    /// Objective `0.5 |r|^2` after every accepted iteration, starting with the initial guess.
    pub objective_history: Vec<f64>,
}

fn objective(r: &DVector<f64>) -> f64 {
    0.5 * r.norm_squared()
}

fn rms(r: &DVector<f64>) -> f64 {
    (r.norm_squared() / r.len() as f64).sqrt()
}

impl GaussNewton {
    /// Minimises `0.5 |r(x)|^2`. `residuals` returns `None` outside its domain.
    pub fn minimize<F>(&self, residuals: F, initial: &[f64]) -> Result<Fit>
    where
        F: Fn(&[f64]) -> Option<Vec<f64>>,
    {
        let eval = |x: &DVector<f64>| residuals(x.as_slice()).map(DVector::from_vec);
        let mut x = DVector::from_column_slice(initial);
        let mut r = eval(&x).ok_or_else(|| {
            FoilError::Precondition("initial guess lies outside the model domain".into())
        })?;
        if r.is_empty() || r.len() < x.len() {
            return Err(FoilError::RankDeficient(format!(
                "{} residuals cannot determine {} parameters",
                r.len(),
                x.len()
            )));
        }
        let mut history = vec![objective(&r)];

        for iteration in 1..=self.max_iterations {
            let jac = self.jacobian(&eval, &x, &r)?;
            let jt = jac.transpose();
            let mut normal = &jt * &jac;
            let gradient = &jt * &r;
            let scale = normal.diagonal().max().max(f64::MIN_POSITIVE);
            for i in 0..normal.nrows() {
                normal[(i, i)] += 1e-14 * scale;
            }
            let step = normal
                .lu()
                .solve(&(-&gradient))
                .ok_or_else(|| FoilError::RankDeficient("singular normal equations".into()))?;

            let current = objective(&r);
            let mut alpha = 1.0;
            let mut accepted = None;
            for _ in 0..=self.max_halvings {
                let trial = &x + alpha * &step;
                if let Some(rt) = eval(&trial) {
                    if rt.iter().all(|v| v.is_finite()) && objective(&rt) < current {
                        accepted = Some((trial, rt));
                        break;
                    }
                }
                alpha *= 0.5;
            }
            let Some((trial, rt)) = accepted else {
                // no descent left along the Gauss-Newton direction
                return Ok(Fit {
                    params: x.as_slice().to_vec(),
                    residual_rms: rms(&r),
                    iterations: iteration,
                    objective_history: history,
                });
            };
            let moved = (&trial - &x).norm();
            x = trial;
            r = rt;
            history.push(objective(&r));
            if moved <= self.step_tolerance * (x.norm() + self.step_tolerance) || objective(&r) == 0.0 {
                return Ok(Fit {
                    params: x.as_slice().to_vec(),
                    residual_rms: rms(&r),
                    iterations: iteration,
                    objective_history: history,
                });
            }
        }
        Err(FoilError::NonConvergence {
            iterations: self.max_iterations,
            residual_rms: rms(&r),
            best: x.as_slice().to_vec(),
        })
    }

    fn jacobian<E>(&self, eval: &E, x: &DVector<f64>, r: &DVector<f64>) -> Result<DMatrix<f64>>
    where
        E: Fn(&DVector<f64>) -> Option<DVector<f64>>,
    {
        let mut jac = DMatrix::zeros(r.len(), x.len());
        for j in 0..x.len() {
            let h = 1e-6 * x[j].abs().max(1.0);
            let mut plus = x.clone();
            plus[j] += h;
            let mut minus = x.clone();
            minus[j] -= h;
            let column = match (eval(&plus), eval(&minus)) {
                (Some(a), Some(b)) => (a - b) / (2.0 * h),
                (Some(a), None) => (a - r) / h,
                (None, Some(b)) => (r - b) / h,
                (None, None) => {
                    return Err(FoilError::Domain(format!(
                        "model undefined around parameter {j} = {}",
                        x[j]
                    )))
                }
            };
            jac.set_column(j, &column);
        }
        Ok(jac)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_exponential_decay() {
        let ts: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 2.5 * (-1.3 * t).exp()).collect();
        let fit = GaussNewton::default()
            .minimize(
                |p| Some(ts.iter().zip(&ys).map(|(t, y)| p[0] * (-p[1] * t).exp() - y).collect()),
                &[1.0, 0.5],
            )
            .unwrap();
        assert!((fit.params[0] - 2.5).abs() < 1e-9);
        assert!((fit.params[1] - 1.3).abs() < 1e-9);
        assert!(fit.objective_history.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn reports_non_convergence() {
        let gn = GaussNewton {
            max_iterations: 2,
            ..GaussNewton::default()
        };
        let ts: Vec<f64> = (0..20).map(|i| 0.1 * i as f64).collect();
        let err = gn
            .minimize(
                |p| Some(ts.iter().map(|t| p[0] * (-p[1] * t).exp() - 3.0 * (-0.2 * t).exp()).collect()),
                &[0.1, 5.0],
            )
            .unwrap_err();
        match err {
            FoilError::NonConvergence { iterations, best, .. } => {
                assert_eq!(iterations, 2);
                assert_eq!(best.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_underdetermined() {
        let err = GaussNewton::default().minimize(|p| Some(vec![p[0] + p[1]]), &[0.0, 0.0]);
        assert!(matches!(err, Err(FoilError::RankDeficient(_))));
    }
}
