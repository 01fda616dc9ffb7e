use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Minimum unmasked samples for a constancy verdict.
pub const MIN_CONSTANCY_SAMPLES: usize = 8;

/// A scalar function sampled on a grid; `None` marks points where its
/// preconditions failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationSeries {
    pub name: String,
    pub s: Vec<f64>,
    #[serde(serialize_with = "nullable")]
    pub values: Vec<Option<f64>>,
}

fn nullable<S: Serializer>(v: &[Option<f64>], ser: S) -> std::result::Result<S::Ok, S::Error> {
    // Non-finite values have no JSON form.
    ser.collect_seq(v.iter().map(|x| x.filter(|x| x.is_finite())))
}

impl CharacterizationSeries {
    pub fn new(name: impl Into<String>, s: Vec<f64>, values: Vec<Option<f64>>) -> Self {
        debug_assert_eq!(s.len(), values.len());
        CharacterizationSeries {
            name: name.into(),
            s,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().filter_map(|v| *v)
    }

    pub fn defined_count(&self) -> usize {
        self.defined().count()
    }

    pub fn max_abs(&self) -> Option<f64> {
        self.defined().map(f64::abs).reduce(f64::max)
    }

    /// Copy with `k` samples masked at each end.
    pub fn without_ends(&self, k: usize) -> Self {
        let n = self.values.len();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if i < k || i + k >= n { None } else { *v })
            .collect();
        CharacterizationSeries::new(self.name.clone(), self.s.clone(), values)
    }

    /// Values multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        let values = self.values.iter().map(|v| v.map(|x| x * k)).collect();
        CharacterizationSeries::new(self.name.clone(), self.s.clone(), values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstancyVerdict {
    pub is_constant: bool,
    pub mean: f64,
    pub max_abs_dev: f64,
    pub tol: f64,
    /// Grid index of the largest deviation from the mean.
    pub argmax: usize,
}

/// Constant iff `max |w_i − mean| ≤ tol · (1 + |mean|)` over unmasked samples.
pub fn is_constant(series: &CharacterizationSeries, tol: f64) -> Result<ConstancyVerdict> {
    let got = series.defined_count();
    if got < MIN_CONSTANCY_SAMPLES {
        return Err(Error::InsufficientSamples {
            needed: MIN_CONSTANCY_SAMPLES,
            got,
        });
    }
    let mean = series.defined().sum::<f64>() / got as f64;
    let mut max_abs_dev = 0.0;
    let mut argmax = 0;
    for (i, v) in series.values.iter().enumerate() {
        if let Some(v) = v {
            let dev = (v - mean).abs();
            if !(dev <= max_abs_dev) {
                max_abs_dev = dev;
                argmax = i;
            }
        }
    }
    Ok(ConstancyVerdict {
        is_constant: max_abs_dev <= tol * (1.0 + mean.abs()),
        mean,
        max_abs_dev,
        tol,
        argmax,
    })
}

/// Cumulative composite Simpson integral over the grid, starting at 0 on the
/// first point; `mid(i)` is the integrand at the midpoint of interval `i`.
pub fn cumulative_simpson<F>(s: &[f64], at_nodes: &[f64], mut mid: F) -> Result<Vec<f64>>
where
    F: FnMut(usize) -> Result<f64>,
{
    let mut out = Vec::with_capacity(s.len());
    let mut acc = 0.0;
    out.push(acc);
    for i in 1..s.len() {
        let h = s[i] - s[i - 1];
        acc += h / 6.0 * (at_nodes[i - 1] + 4.0 * mid(i - 1)? + at_nodes[i]);
        out.push(acc);
    }
    Ok(out)
}
