use crate::error::{Error, Result};
use crate::hilbert::{DenseOperator, StateVector};
use crate::model::{DrivenOperator, Hamiltonian};

use super::propagator;

/// A generator that can be sampled at any time.
pub trait TimeDependent {
    fn at(&self, t: f64) -> DenseOperator;
}

impl<F: Fn(f64) -> DenseOperator> TimeDependent for F {
    fn at(&self, t: f64) -> DenseOperator {
        self(t)
    }
}

impl TimeDependent for DrivenOperator {
    fn at(&self, t: f64) -> DenseOperator {
        DrivenOperator::at(self, t)
    }
}

impl TimeDependent for Hamiltonian {
    fn at(&self, t: f64) -> DenseOperator {
        Hamiltonian::at(self, t)
    }
}

/// Default step: fifty steps per period of the fastest frequency, and at
/// least a thousand steps over the interval.
pub fn default_dt(omega_max: f64, duration: f64) -> f64 {
    let by_period = if omega_max > 0.0 {
        2.0 * std::f64::consts::PI / omega_max / 50.0
    } else {
        f64::INFINITY
    };
    by_period.min(duration / 1e3)
}

/// Time-ordered midpoint product `ψ ← exp(−iH(t + dt/2)dt) ψ` from `t0` to
/// `t1`. The last step is shortened to land exactly on `t1`.
pub fn propagate_timedep<H: TimeDependent + ?Sized>(
    h: &H,
    t0: f64,
    t1: f64,
    dt: f64,
    psi: &StateVector,
) -> Result<StateVector> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("step must be positive, got {dt}")));
    }
    if !(t1 > t0) {
        return Err(Error::invalid("t1", "end time must follow start time"));
    }
    let steps = ((t1 - t0) / dt).ceil() as usize;
    let mut state = psi.clone();
    for k in 0..steps {
        let start = t0 + k as f64 * dt;
        let end = if k + 1 == steps { t1 } else { (start + dt).min(t1) };
        let step = end - start;
        if step <= 0.0 {
            continue;
        }
        let hm = h.at(start + step / 2.0);
        if !hm.is_finite() {
            return Err(Error::NonFinite("time-dependent generator"));
        }
        state = propagator(&hm, step)?.apply(&state)?;
    }
    Ok(state)
}
