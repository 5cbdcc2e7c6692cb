//! Validated probability primitives: distributions, joints and channels.
//!
//! Every type is immutable once constructed. Inputs are never renormalized:
//! a vector whose mass is further than [`MASS_TOLERANCE`] from one is
//! rejected, so the same input always yields the same bits downstream.
//!
//! Supports are decided by exact comparison against `0.0`. Negative-order
//! measures are discontinuous in the support pattern, so thresholding is
//! left to the caller.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest accepted deviation of a total mass from one.
pub const MASS_TOLERANCE: f64 = 1e-9;

fn check_entries(raw: &[f64]) -> Result<()> {
    for (index, &value) in raw.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFinite { index, value });
        }
        if value < 0.0 {
            return Err(Error::NegativeEntry { index, value });
        }
    }
    Ok(())
}

fn check_mass(raw: &[f64]) -> Result<()> {
    let total: f64 = raw.iter().sum();
    let deviation = total - 1.0;
    if deviation.abs() > MASS_TOLERANCE {
        return Err(Error::MassNotOne { deviation });
    }
    Ok(())
}

fn flatten(rows: Vec<Vec<f64>>) -> Result<(usize, usize, Vec<f64>)> {
    let n_rows = rows.len();
    if n_rows == 0 {
        return Err(Error::Empty);
    }
    let n_cols = rows[0].len();
    if n_cols == 0 {
        return Err(Error::Empty);
    }
    let mut flat = Vec::with_capacity(n_rows * n_cols);
    for (row, r) in rows.into_iter().enumerate() {
        if r.len() != n_cols {
            return Err(Error::RaggedMatrix {
                row,
                expected: n_cols,
                found: r.len(),
            });
        }
        flat.extend(r);
    }
    Ok((n_rows, n_cols, flat))
}

/// Boolean mask marking the strictly positive entries of a vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Support {
    mask: Vec<bool>,
}

impl Support {
    pub fn of(values: &[f64]) -> Self {
        Support {
            mask: values.iter().map(|&v| v > 0.0).collect(),
        }
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when every point of `self` is also in `other`.
    pub fn is_subset_of(&self, other: &Support) -> bool {
        self.mask.len() == other.mask.len()
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }
}

/// A probability mass function over an index alphabet `0..len`.
///
/// Serializes as `{"pmf": [...]}` (plus optional `"labels"`); deserializing
/// validates exactly like [`Pmf::new`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPmf")]
pub struct Pmf {
    #[serde(rename = "pmf")]
    probs: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPmf {
    pmf: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl TryFrom<RawPmf> for Pmf {
    type Error = Error;

    fn try_from(raw: RawPmf) -> Result<Self> {
        let p = Pmf::new(raw.pmf)?;
        match raw.labels {
            Some(labels) => p.with_labels(labels),
            None => Ok(p),
        }
    }
}

/// Validates a raw probability vector.
pub fn validate_pmf(raw: &[f64]) -> Result<Pmf> {
    Pmf::new(raw.to_vec())
}

impl Pmf {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        check_entries(&probs)?;
        check_mass(&probs)?;
        Ok(Pmf {
            probs,
            labels: None,
        })
    }

    /// Attaches cosmetic symbol names. They play no role in any computation.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.probs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.probs.len(),
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Pmf {
            probs: vec![1.0 / n as f64; n],
            labels: None,
        })
    }

    pub fn point_mass(n: usize, at: usize) -> Result<Self> {
        if at >= n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: at + 1,
            });
        }
        let mut probs = vec![0.0; n];
        probs[at] = 1.0;
        Ok(Pmf {
            probs,
            labels: None,
        })
    }

    /// The mixture `lambda * a + (1 - lambda) * b`.
    pub fn mix(lambda: f64, a: &Pmf, b: &Pmf) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "mixture weight {lambda} is outside [0, 1]"
            )));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let probs = a
            .probs
            .iter()
            .zip(&b.probs)
            .map(|(&x, &y)| lambda * x + (1.0 - lambda) * y)
            .collect();
        Pmf::new(probs)
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.probs[index]
    }

    pub fn support(&self) -> Support {
        Support::of(&self.probs)
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }

    /// The product measure `self ⊗ other` as a joint.
    pub fn product(&self, other: &Pmf) -> JointPmf {
        let mut probs = Vec::with_capacity(self.len() * other.len());
        for &a in &self.probs {
            probs.extend(other.probs.iter().map(|&b| a * b));
        }
        JointPmf::from_parts(
            self.len(),
            other.len(),
            probs,
            self.probs.clone(),
            other.probs.clone(),
        )
    }
}

/// A joint mass function over `0..n_x` × `0..n_y`, stored row-major.
///
/// Serializes as `{"joint": [[...], ...]}`. Deserializing also accepts
/// `{"p_x": [...], "channel": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawJoint")]
pub struct JointPmf {
    n_x: usize,
    n_y: usize,
    probs: Vec<f64>,
    p_x: Vec<f64>,
    p_y: Vec<f64>,
}

impl Serialize for JointPmf {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("JointPmf", 1)?;
        st.serialize_field("joint", &self.to_rows())?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum RawJoint {
    Joint { joint: Vec<Vec<f64>> },
    Channel { p_x: Vec<f64>, channel: Vec<Vec<f64>> },
}

impl TryFrom<RawJoint> for JointPmf {
    type Error = Error;

    fn try_from(raw: RawJoint) -> Result<Self> {
        match raw {
            RawJoint::Joint { joint } => JointPmf::new(joint),
            RawJoint::Channel { p_x, channel } => {
                joint_from_channel(&Pmf::new(p_x)?, &Channel::new(channel)?)
            }
        }
    }
}

impl JointPmf {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let (n_x, n_y, probs) = flatten(rows)?;
        Self::from_flat(n_x, n_y, probs)
    }

    pub fn from_flat(n_x: usize, n_y: usize, probs: Vec<f64>) -> Result<Self> {
        if n_x == 0 || n_y == 0 {
            return Err(Error::Empty);
        }
        if probs.len() != n_x * n_y {
            return Err(Error::DimensionMismatch {
                expected: n_x * n_y,
                found: probs.len(),
            });
        }
        check_entries(&probs)?;
        check_mass(&probs)?;
        let p_x = (0..n_x)
            .map(|x| probs[x * n_y..(x + 1) * n_y].iter().sum())
            .collect();
        let p_y = column_sums(n_x, n_y, &probs);
        Ok(Self::from_parts(n_x, n_y, probs, p_x, p_y))
    }

    fn from_parts(n_x: usize, n_y: usize, probs: Vec<f64>, p_x: Vec<f64>, p_y: Vec<f64>) -> Self {
        JointPmf {
            n_x,
            n_y,
            probs,
            p_x,
            p_y,
        }
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.probs[x * self.n_y + y]
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.probs[x * self.n_y..(x + 1) * self.n_y]
    }

    /// Row-major entries.
    pub fn as_flat(&self) -> &[f64] {
        &self.probs
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n_x).map(|x| self.row(x).to_vec()).collect()
    }

    pub fn p_x(&self) -> &[f64] {
        &self.p_x
    }

    pub fn p_y(&self) -> &[f64] {
        &self.p_y
    }

    /// The joint of `(Y, X)`.
    pub fn transpose(&self) -> JointPmf {
        let mut probs = Vec::with_capacity(self.probs.len());
        for y in 0..self.n_y {
            probs.extend((0..self.n_x).map(|x| self.get(x, y)));
        }
        JointPmf::from_parts(self.n_y, self.n_x, probs, self.p_y.clone(), self.p_x.clone())
    }

    /// `P_X ⊗ P_Y` built from this joint's marginals.
    pub fn product_of_marginals(&self) -> JointPmf {
        let mut probs = Vec::with_capacity(self.probs.len());
        for &a in &self.p_x {
            probs.extend(self.p_y.iter().map(|&b| a * b));
        }
        JointPmf::from_parts(self.n_x, self.n_y, probs, self.p_x.clone(), self.p_y.clone())
    }

    /// Total-variation distance to the product of this joint's marginals.
    pub fn distance_from_independence(&self) -> f64 {
        let prod = self.product_of_marginals();
        0.5 * self
            .probs
            .iter()
            .zip(&prod.probs)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }
}

fn column_sums(n_rows: usize, n_cols: usize, flat: &[f64]) -> Vec<f64> {
    let mut sums = vec![0.0; n_cols];
    for r in 0..n_rows {
        for (s, &v) in sums.iter_mut().zip(&flat[r * n_cols..(r + 1) * n_cols]) {
            *s += v;
        }
    }
    sums
}

/// A row-stochastic matrix: row `i` is the output law given input `i`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Channel {
    n_in: usize,
    n_out: usize,
    probs: Vec<f64>,
}

impl Channel {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let (n_in, n_out, probs) = flatten(rows)?;
        Self::from_flat(n_in, n_out, probs)
    }

    pub fn from_flat(n_in: usize, n_out: usize, probs: Vec<f64>) -> Result<Self> {
        if n_in == 0 || n_out == 0 {
            return Err(Error::Empty);
        }
        if probs.len() != n_in * n_out {
            return Err(Error::DimensionMismatch {
                expected: n_in * n_out,
                found: probs.len(),
            });
        }
        check_entries(&probs)?;
        for row in probs.chunks(n_out) {
            check_mass(row)?;
        }
        Ok(Channel { n_in, n_out, probs })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut probs = vec![0.0; n * n];
        for i in 0..n {
            probs[i * n + i] = 1.0;
        }
        Self::from_flat(n, n, probs)
    }

    /// Binary symmetric channel with crossover probability `delta`.
    pub fn bsc(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidParameter(format!(
                "crossover probability {delta} is outside [0, 1]"
            )));
        }
        Self::new(vec![vec![1.0 - delta, delta], vec![delta, 1.0 - delta]])
    }

    /// A channel whose every row equals `row`: the output ignores the input.
    pub fn constant(n_in: usize, row: &Pmf) -> Result<Self> {
        if n_in == 0 {
            return Err(Error::Empty);
        }
        let probs = row.probs().repeat(n_in);
        Ok(Channel {
            n_in,
            n_out: row.len(),
            probs,
        })
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn get(&self, input: usize, output: usize) -> f64 {
        self.probs[input * self.n_out + output]
    }

    pub fn row(&self, input: usize) -> &[f64] {
        &self.probs[input * self.n_out..(input + 1) * self.n_out]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n_in).map(|i| self.row(i).to_vec()).collect()
    }

    /// Cascade `self` then `next`: the kernel of `X → Z` for `X → Y → Z`.
    pub fn compose(&self, next: &Channel) -> Result<Channel> {
        if self.n_out != next.n_in {
            return Err(Error::DimensionMismatch {
                expected: self.n_out,
                found: next.n_in,
            });
        }
        let mut probs = vec![0.0; self.n_in * next.n_out];
        for i in 0..self.n_in {
            let out = &mut probs[i * next.n_out..(i + 1) * next.n_out];
            for (m, &w) in self.row(i).iter().enumerate() {
                for (o, &k) in out.iter_mut().zip(next.row(m)) {
                    *o += w * k;
                }
            }
        }
        Ok(Channel {
            n_in: self.n_in,
            n_out: next.n_out,
            probs,
        })
    }

    /// The channel `lambda * a + (1 - lambda) * b`, row by row.
    pub fn mix(lambda: f64, a: &Channel, b: &Channel) -> Result<Channel> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::InvalidParameter(format!(
                "mixture weight {lambda} is outside [0, 1]"
            )));
        }
        if a.n_in != b.n_in || a.n_out != b.n_out {
            return Err(Error::DimensionMismatch {
                expected: a.probs.len(),
                found: b.probs.len(),
            });
        }
        let probs = a
            .probs
            .iter()
            .zip(&b.probs)
            .map(|(&x, &y)| lambda * x + (1.0 - lambda) * y)
            .collect();
        Ok(Channel {
            n_in: a.n_in,
            n_out: a.n_out,
            probs,
        })
    }

    /// `n` conditionally independent uses of the channel on the same input,
    /// with outputs indexed lexicographically over the product alphabet.
    pub fn iid_observations(&self, n: usize) -> Result<Channel> {
        if n == 0 {
            return Err(Error::InvalidParameter("at least one observation is required".into()));
        }
        let n_out = self
            .n_out
            .checked_pow(n as u32)
            .filter(|&m| m <= 10_000)
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "product alphabet {}^{} exceeds 10^4 symbols",
                    self.n_out, n
                ))
            })?;
        let mut probs = Vec::with_capacity(self.n_in * n_out);
        for i in 0..self.n_in {
            let mut row = vec![1.0];
            for _ in 0..n {
                row = row
                    .iter()
                    .flat_map(|&a| self.row(i).iter().map(move |&b| a * b))
                    .collect();
            }
            probs.extend(row);
        }
        Ok(Channel {
            n_in: self.n_in,
            n_out,
            probs,
        })
    }
}

/// Builds the joint of `(X, Y)` from an input law and a channel.
pub fn joint_from_channel(p_x: &Pmf, channel: &Channel) -> Result<JointPmf> {
    if channel.n_in != p_x.len() {
        return Err(Error::DimensionMismatch {
            expected: p_x.len(),
            found: channel.n_in,
        });
    }
    let n_y = channel.n_out;
    let mut probs = Vec::with_capacity(p_x.len() * n_y);
    for (x, &px) in p_x.probs().iter().enumerate() {
        probs.extend(channel.row(x).iter().map(|&c| px * c));
    }
    let p_y = column_sums(p_x.len(), n_y, &probs);
    Ok(JointPmf::from_parts(
        p_x.len(),
        n_y,
        probs,
        p_x.probs().to_vec(),
        p_y,
    ))
}

/// Row and column marginals of a joint.
pub fn marginals(joint: &JointPmf) -> (Pmf, Pmf) {
    (
        Pmf {
            probs: joint.p_x.clone(),
            labels: None,
        },
        Pmf {
            probs: joint.p_y.clone(),
            labels: None,
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    XGivenY,
    YGivenX,
}

/// The conditional law in the requested direction.
///
/// Fails with [`Error::ZeroMarginalRow`] on the first conditioning symbol of
/// zero probability instead of inventing a row for it.
pub fn conditional(joint: &JointPmf, direction: Direction) -> Result<Channel> {
    let oriented;
    let j = match direction {
        Direction::YGivenX => joint,
        Direction::XGivenY => {
            oriented = joint.transpose();
            &oriented
        }
    };
    let mut probs = Vec::with_capacity(j.probs.len());
    for (x, &px) in j.p_x.iter().enumerate() {
        if px <= 0.0 {
            return Err(Error::ZeroMarginalRow { index: x });
        }
        probs.extend(j.row(x).iter().map(|&v| v / px));
    }
    Ok(Channel {
        n_in: j.n_x,
        n_out: j.n_y,
        probs,
    })
}

/// The output law of `dist` pushed through `kernel`.
pub fn push_forward(dist: &Pmf, kernel: &Channel) -> Result<Pmf> {
    if kernel.n_in != dist.len() {
        return Err(Error::DimensionMismatch {
            expected: dist.len(),
            found: kernel.n_in,
        });
    }
    let mut out = vec![0.0; kernel.n_out];
    for (i, &w) in dist.probs().iter().enumerate() {
        for (o, &k) in out.iter_mut().zip(kernel.row(i)) {
            *o += w * k;
        }
    }
    Ok(Pmf {
        probs: out,
        labels: None,
    })
}
