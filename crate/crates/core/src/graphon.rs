//! The step-graphon data model: positive block weights summing to one and a
//! symmetric matrix of edge densities in `[0,1]`, constant on each block
//! rectangle. Includes the four-block family used by the counterexample
//! search, generators for test corpora, and lossless JSON serialization.

use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Tolerance for the weight-sum invariant in the float backend.
const WEIGHT_SUM_TOL: f64 = 1e-12;

/// A step graphon with `m` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct StepGraphon<T: Scalar> {
    weights: Vec<T>,
    values: Vec<Vec<T>>,
}

impl<T: Scalar> StepGraphon<T> {
    /// Validate and build. Weights must be positive and sum to one (exactly
    /// in the exact backend, within `1e-12` in the float backend); the value
    /// matrix must be square, symmetric, and entrywise in `[0,1]`.
    pub fn new(weights: Vec<T>, values: Vec<Vec<T>>) -> Result<Self> {
        let m = weights.len();
        if m == 0 {
            return Err(Error::BadWeights {
                reason: "no blocks".to_string(),
            });
        }
        for (i, w) in weights.iter().enumerate() {
            if *w <= T::zero() {
                return Err(Error::BadWeights {
                    reason: format!("weight {i} is {w}, must be positive"),
                });
            }
        }
        let mut sum = T::zero();
        for w in &weights {
            sum = sum + w.clone();
        }
        let sum_ok = if T::EXACT {
            sum == T::one()
        } else {
            (sum.clone() - T::one()).abs_val().to_f64() <= WEIGHT_SUM_TOL
        };
        if !sum_ok {
            return Err(Error::BadWeights {
                reason: format!("weights sum to {sum}, expected 1"),
            });
        }
        if values.len() != m {
            return Err(Error::DimensionMismatch {
                reason: format!("{m} weights but {} value rows", values.len()),
            });
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    reason: format!("value row {i} has {} entries, expected {m}", row.len()),
                });
            }
        }
        for i in 0..m {
            for j in 0..m {
                let v = &values[i][j];
                if *v < T::zero() || *v > T::one() {
                    return Err(Error::OutOfRangeEntry {
                        row: i,
                        col: j,
                        value: v.to_string(),
                    });
                }
                if j > i && values[i][j] != values[j][i] {
                    return Err(Error::NonSymmetric { row: i, col: j });
                }
            }
        }
        Ok(StepGraphon { weights, values })
    }

    /// Like [`StepGraphon::new`] but drops blocks of exactly zero weight
    /// first (rows and columns included). Blocks of negative weight are
    /// still rejected.
    pub fn new_pruned(weights: Vec<T>, values: Vec<Vec<T>>) -> Result<Self> {
        let keep: Vec<usize> = (0..weights.len())
            .filter(|&i| weights[i] != T::zero())
            .collect();
        if keep.len() == weights.len() {
            return Self::new(weights, values);
        }
        let new_weights: Vec<T> = keep.iter().map(|&i| weights[i].clone()).collect();
        let new_values: Vec<Vec<T>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| values[i][j].clone()).collect())
            .collect();
        Self::new(new_weights, new_values)
    }

    pub fn block_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn weight(&self, i: usize) -> &T {
        &self.weights[i]
    }

    pub fn value(&self, i: usize, j: usize) -> &T {
        &self.values[i][j]
    }

    /// The complementary color class: every value `x` becomes `1 - x`.
    pub fn complement(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| T::one() - v.clone()).collect())
            .collect();
        StepGraphon {
            weights: self.weights.clone(),
            values,
        }
    }

    /// One-block graphon with constant value `p`.
    pub fn constant(p: T) -> Result<Self> {
        Self::new(vec![T::one()], vec![vec![p]])
    }

    /// The four-block family: a block `A` of weight `eps` and blocks
    /// `B`, `C`, `D` of weight `(1-eps)/3` each, with value one between `A`
    /// and each other block and inside each of `B`, `C`, `D`, zero
    /// elsewhere. At `eps = 0` the `A` block is dropped, leaving the
    /// three-clique graphon.
    pub fn w_epsilon(eps: T) -> Result<Self> {
        if eps < T::zero() || eps >= T::one() {
            return Err(Error::EpsOutOfRange {
                eps: eps.to_string(),
            });
        }
        let third = (T::one() - eps.clone()) / T::from_int(3);
        let weights = vec![eps, third.clone(), third.clone(), third];
        let one = T::one();
        let zero = T::zero();
        let values = vec![
            vec![zero.clone(), one.clone(), one.clone(), one.clone()],
            vec![one.clone(), one.clone(), zero.clone(), zero.clone()],
            vec![one.clone(), zero.clone(), one.clone(), zero.clone()],
            vec![one.clone(), zero.clone(), zero.clone(), one],
        ];
        Self::new_pruned(weights, values)
    }

    /// Relabel blocks: block `i` of the result is block `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let m = self.block_count();
        let mut seen = vec![false; m];
        if perm.len() != m || perm.iter().any(|&p| p >= m || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::DimensionMismatch {
                reason: format!("{perm:?} is not a permutation of 0..{m}"),
            });
        }
        let weights = perm.iter().map(|&p| self.weights[p].clone()).collect();
        let values = perm
            .iter()
            .map(|&p| perm.iter().map(|&q| self.values[p][q].clone()).collect())
            .collect();
        Self::new(weights, values)
    }

    /// Refine block `i` into two blocks of half its weight with identical
    /// rows; the new block is appended last. Densities are unchanged.
    pub fn split_block(&self, i: usize) -> Result<Self> {
        let m = self.block_count();
        if i >= m {
            return Err(Error::DimensionMismatch {
                reason: format!("block {i} out of range for {m} blocks"),
            });
        }
        let half = self.weights[i].clone() / T::from_int(2);
        let mut weights = self.weights.clone();
        weights[i] = half.clone();
        weights.push(half);
        let mut values: Vec<Vec<T>> = self
            .values
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(row[i].clone());
                r
            })
            .collect();
        let mut last = values[i].clone();
        last[m] = self.values[i][i].clone();
        values.push(last);
        Self::new(weights, values)
    }

    /// JSON object `{"weights": [...], "values": [[...], ...]}` with scalars
    /// encoded per backend (numbers for f64, `"p/q"` strings when exact).
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "weights": self.weights.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            "values": self
                .values
                .iter()
                .map(|row| row.iter().map(|v| v.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value.as_object().ok_or_else(|| {
            Error::parse(1, "expected a JSON object with 'weights' and 'values'")
        })?;
        let weights_raw = obj
            .get("weights")
            .and_then(|w| w.as_array())
            .ok_or_else(|| Error::parse(1, "missing or non-array 'weights'"))?;
        let values_raw = obj
            .get("values")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::parse(1, "missing or non-array 'values'"))?;
        let weights = weights_raw
            .iter()
            .map(|w| T::from_json(w).map_err(|e| Error::parse(1, format!("weights: {e}"))))
            .collect::<Result<Vec<T>>>()?;
        let values = values_raw
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::parse(1, "'values' rows must be arrays"))?
                    .iter()
                    .map(|v| T::from_json(v).map_err(|e| Error::parse(1, format!("values: {e}"))))
                    .collect::<Result<Vec<T>>>()
            })
            .collect::<Result<Vec<Vec<T>>>>()?;
        Self::new(weights, values)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::parse(e.line(), format!("invalid JSON: {e}")))?;
        Self::from_json(&value)
    }
}

impl StepGraphon<f64> {
    /// Weights uniform on the simplex, values i.i.d. uniform on `[0,1]`
    /// symmetrized. Deterministic for a fixed seed.
    pub fn random(m: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let exps: Vec<f64> = (0..m)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let total: f64 = exps.iter().sum();
        let weights: Vec<f64> = exps.iter().map(|e| e / total).collect();
        let mut values = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i..m {
                let v: f64 = rng.gen();
                values[i][j] = v;
                values[j][i] = v;
            }
        }
        Self::new(weights, values)
    }

    /// Round every weight and value to the nearest fraction with the given
    /// denominator, then renormalize the weights exactly. Used to turn a
    /// float search result into an exactly checkable instance.
    pub fn round_to_rationals(&self, denom: u32) -> Result<StepGraphon<Rat>> {
        assert!(denom > 0);
        let d = BigInt::from(denom);
        let to_rat = |x: f64| -> Rat {
            let n = BigInt::from((x * denom as f64).round() as i64);
            Rat::new(n, d.clone())
        };
        let raw: Vec<Rat> = self.weights.iter().map(|&w| to_rat(w)).collect();
        let total: Rat = raw.iter().fold(Rat::zero(), |acc, r| acc + r.clone());
        if total.is_zero() {
            return Err(Error::BadWeights {
                reason: "all weights rounded to zero".to_string(),
            });
        }
        let weights: Vec<Rat> = raw.into_iter().map(|r| r / total.clone()).collect();
        let m = self.block_count();
        let mut values = vec![vec![Rat::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let v = to_rat(self.values[i][j])
                    .max(Rat::zero())
                    .min(Rat::from_int(1));
                values[i][j] = v.clone();
                values[j][i] = v;
            }
        }
        StepGraphon::new_pruned(weights, values)
    }
}

impl StepGraphon<Rat> {
    /// Weights and values on a `1/denom` grid, weights normalized exactly.
    /// The exact-backend analogue of [`StepGraphon::random`] for test
    /// corpora where arbitrary-precision uniform sampling is overkill.
    pub fn random_rational(m: usize, denom: u32, seed: u64) -> Result<Self> {
        assert!(denom > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<i64> = (0..m).map(|_| rng.gen_range(1..=denom as i64)).collect();
        let total: i64 = raw.iter().sum();
        let weights: Vec<Rat> = raw.iter().map(|&n| Rat::from_ratio(n, total)).collect();
        let mut values = vec![vec![Rat::zero(); m]; m];
        for i in 0..m {
            for j in i..m {
                let v = Rat::from_ratio(rng.gen_range(0..=denom as i64), denom as i64);
                values[i][j] = v.clone();
                values[j][i] = v;
            }
        }
        Self::new(weights, values)
    }

    /// Nearest-float image of an exact graphon, renormalized to pass the
    /// float-backend weight check.
    pub fn approx_f64(&self) -> Result<StepGraphon<f64>> {
        let weights: Vec<f64> = self.weights.iter().map(|w| w.to_f64()).collect();
        let total: f64 = weights.iter().sum();
        let weights = weights.into_iter().map(|w| w / total).collect();
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|v| v.to_f64().clamp(0.0, 1.0)).collect())
            .collect();
        StepGraphon::new(weights, values)
    }
}
