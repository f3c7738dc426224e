//! Formal monomial series `x^offset * sum_k c_k x^k`.
//!
//! Only nonzero coefficients are stored, keyed by the integer index `k`
//! relative to the offset. Indices may be negative. Two series whose
//! offsets differ by an integer live on the same exponent lattice and can
//! be combined; equality compares the represented sums, so the same series
//! written against different offsets compares equal.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SeriesInput", into = "RawSeries")]
pub struct OffsetSeries {
    offset: Scalar,
    coeffs: BTreeMap<i64, Scalar>,
}

#[derive(Serialize)]
struct RawSeries {
    offset: Scalar,
    coeffs: BTreeMap<i64, Scalar>,
}

#[derive(Deserialize)]
struct SeriesInput {
    offset: Scalar,
    #[serde(deserialize_with = "int_keyed")]
    coeffs: BTreeMap<i64, Scalar>,
}

impl TryFrom<SeriesInput> for OffsetSeries {
    type Error = Error;
    fn try_from(raw: SeriesInput) -> Result<Self> {
        Ok(OffsetSeries::new(raw.offset, raw.coeffs))
    }
}

/// Reads a map with integer keys written as strings.
///
/// Integer keys do not survive serde's buffering inside internally tagged
/// enums, so they are always taken as strings and parsed here.
pub(crate) fn int_keyed<'de, D>(
    deserializer: D,
) -> std::result::Result<BTreeMap<i64, Scalar>, D::Error>
where
    D: serde::Deserializer<'de>,
{
    let raw = BTreeMap::<String, Scalar>::deserialize(deserializer)?;
    raw.into_iter()
        .map(|(k, v)| {
            k.trim()
                .parse::<i64>()
                .map(|k| (k, v))
                .map_err(|_| serde::de::Error::custom(format!("map key {k:?} is not an integer")))
        })
        .collect()
}

impl From<OffsetSeries> for RawSeries {
    fn from(s: OffsetSeries) -> Self {
        RawSeries {
            offset: s.offset,
            coeffs: s.coeffs,
        }
    }
}

impl OffsetSeries {
    /// Builds a series, dropping zero coefficients.
    pub fn new(offset: Scalar, coeffs: BTreeMap<i64, Scalar>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        OffsetSeries { offset, coeffs }
    }

    pub fn zero() -> Self {
        OffsetSeries::zero_at(Scalar::zero())
    }

    pub fn zero_at(offset: Scalar) -> Self {
        OffsetSeries {
            offset,
            coeffs: BTreeMap::new(),
        }
    }

    /// `coeff * x^exponent`, stored at index 0.
    pub fn monomial(exponent: Scalar, coeff: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, coeff);
        OffsetSeries::new(exponent, coeffs)
    }

    /// Polynomial `sum_k coeffs[k] x^k` with offset 0.
    pub fn polynomial(coeffs: &[Scalar]) -> Self {
        OffsetSeries::new(
            Scalar::zero(),
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (k as i64, c.clone()))
                .collect(),
        )
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at relative index `k` (zero when absent).
    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    /// Coefficient of `x^exponent`, zero when the exponent is off-lattice or absent.
    pub fn coeff_of_exponent(&self, exponent: &Scalar) -> Scalar {
        match (exponent - &self.offset).to_i64() {
            Some(k) => self.coeff(k),
            None => Scalar::zero(),
        }
    }

    /// Stored `(absolute exponent, coefficient)` pairs in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (Scalar, &Scalar)> + '_ {
        self.coeffs
            .iter()
            .map(move |(k, c)| (&self.offset + &Scalar::from_int(*k), c))
    }

    pub fn min_index(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_index(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `x^shift`: the offset moves, the indices stay.
    pub fn shifted(&self, shift: &Scalar) -> Self {
        OffsetSeries {
            offset: &self.offset + shift,
            coeffs: self.coeffs.clone(),
        }
    }

    /// The same series written against `offset`; errors off-lattice.
    pub fn reindexed(&self, offset: &Scalar) -> Result<Self> {
        let delta = (&self.offset - offset)
            .to_i64()
            .ok_or_else(|| Error::IncompatibleOffsets {
                left: Box::new(self.offset.clone()),
                right: Box::new(offset.clone()),
            })?;
        Ok(OffsetSeries {
            offset: offset.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k + delta, c.clone()))
                .collect(),
        })
    }

    /// Rewrites an integer offset as 0 so exponents equal indices.
    pub fn canonical(&self) -> Self {
        if self.offset.is_integer() && !self.offset.is_zero() {
            self.reindexed(&Scalar::zero())
                .expect("integer offsets share the integer lattice")
        } else {
            self.clone()
        }
    }

    /// Keeps only indices in `lo..=hi`.
    pub fn truncated(&self, lo: i64, hi: i64) -> Self {
        OffsetSeries {
            offset: self.offset.clone(),
            coeffs: self
                .coeffs
                .range(lo..=hi)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Self {
        OffsetSeries::new(
            self.offset.clone(),
            self.coeffs.iter().map(|(k, c)| (*k, c * factor)).collect(),
        )
    }

    /// Adds `value` at index `k`, removing the entry if it cancels.
    pub(crate) fn accumulate(&mut self, k: i64, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_default();
        *entry += value;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub(crate) fn set(&mut self, k: i64, value: Scalar) {
        if value.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, value);
        }
    }

    /// Value and first derivative at a real point.
    ///
    /// Non-integer exponents are only evaluated for `x > 0`.
    pub fn eval_f64(&self, x: f64) -> Option<(f64, f64)> {
        let mut value = 0.0;
        let mut deriv = 0.0;
        for (exponent, c) in self.terms() {
            let c = c.to_f64();
            match exponent.to_i64() {
                Some(e) => {
                    let e32 = i32::try_from(e).ok()?;
                    value += c * x.powi(e32);
                    if e != 0 {
                        deriv += c * (e as f64) * x.powi(e32 - 1);
                    }
                }
                None => {
                    if x <= 0.0 {
                        return None;
                    }
                    let e = exponent.to_f64();
                    value += c * x.powf(e);
                    deriv += c * e * x.powf(e - 1.0);
                }
            }
        }
        Some((value, deriv))
    }
}

/// `a + scale * b`, written against the smaller of the two offsets.
pub fn series_combine(a: &OffsetSeries, b: &OffsetSeries, scale: &Scalar) -> Result<OffsetSeries> {
    let base = if a.offset <= b.offset {
        a.offset.clone()
    } else {
        b.offset.clone()
    };
    let mut out = a.reindexed(&base)?;
    let b = b.reindexed(&base)?;
    for (k, c) in &b.coeffs {
        out.accumulate(*k, &(c * scale));
    }
    Ok(out)
}

impl PartialEq for OffsetSeries {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return self.coeffs.is_empty() && other.coeffs.is_empty();
        }
        match other.reindexed(&self.offset) {
            Ok(o) => o.coeffs == self.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for OffsetSeries {}
