//! Closed-form Dirichlet spectrum of the flat Möbius strip `M_a`.
//!
//! The eigenfunctions separate: `sin(mx)` for odd `m`, and
//! `sin(mx)cos(ny/a)`, `sin(mx)sin(ny/a)` for `m ≥ 1`, `n ≥ 1` with `m+n`
//! odd, with eigenvalue `λ̂(m,n,a) = m² + n²/a²`. A mode with `n = 0`
//! contributes one eigenfunction, a mode with `n > 0` contributes two.
//! For `a = 1` the eigenvalues are integers and all arithmetic here is exact.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("width parameter must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("lambda_max must be nonnegative, got {0}")]
    NegativeLambdaMax(f64),
    #[error("lambda must be nonnegative, got {0}")]
    NegativeLambda(f64),
    #[error("lambda {lambda} exceeds the enumerated range {lambda_max}")]
    LambdaOutOfRange { lambda: f64, lambda_max: f64 },
    #[error("label {label} exceeds the table (last label {last})")]
    LabelOutOfRange { label: usize, last: usize },
    #[error("invalid mode ({m},{n}): require m ≥ 1, m+n odd")]
    InvalidMode { m: u32, n: u32 },
}

/// A separated mode `(m, n)`: `m ≥ 1` is the x-frequency, `n ≥ 0` the
/// y-frequency, and `m + n` must be odd for the function to descend to the
/// Möbius quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModePair {
    pub m: u32,
    pub n: u32,
}

impl ModePair {
    pub fn new(m: u32, n: u32) -> Result<Self, SpectrumError> {
        if m < 1 || (m + n).is_multiple_of(2) {
            return Err(SpectrumError::InvalidMode { m, n });
        }
        Ok(ModePair { m, n })
    }

    /// Number of independent eigenfunctions carried by this mode.
    pub fn multiplicity(&self) -> usize {
        if self.n == 0 {
            1
        } else {
            2
        }
    }

    /// `λ̂(m,n,a) = m² + n²/a²`.
    pub fn eigenvalue(&self, a: f64) -> f64 {
        let m = self.m as f64;
        let n = self.n as f64;
        m * m + n * n / (a * a)
    }
}

// Serialized as the pair `[m, n]`.
impl Serialize for ModePair {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&self.m)?;
        seq.serialize_element(&self.n)?;
        seq.end()
    }
}

/// All modes sharing one eigenvalue, with the contiguous label range they
/// occupy when the spectrum is listed in nondecreasing order starting at 1.
#[derive(Debug, Clone)]
pub struct EigenvalueCluster {
    pub value: f64,
    pub modes: Vec<ModePair>,
    pub multiplicity: usize,
    pub first_label: usize,
    pub last_label: usize,
}

/// The ordered spectrum of `M_a` up to `lambda_max`.
#[derive(Debug, Clone)]
pub struct SpectrumTable {
    pub a: f64,
    pub lambda_max: f64,
    pub clusters: Vec<EigenvalueCluster>,
}

impl Serialize for SpectrumTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct ClusterJson<'a> {
            value: f64,
            modes: &'a [ModePair],
            multiplicity: usize,
            labels: [usize; 2],
        }
        let mut st = serializer.serialize_struct("SpectrumTable", 3)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("lambda_max", &self.lambda_max)?;
        let clusters: Vec<ClusterJson> = self
            .clusters
            .iter()
            .map(|c| ClusterJson {
                value: c.value,
                modes: &c.modes,
                multiplicity: c.multiplicity,
                labels: [c.first_label, c.last_label],
            })
            .collect();
        st.serialize_field("clusters", &clusters)?;
        st.end()
    }
}

impl SpectrumTable {
    /// Last label covered by the table (0 for an empty table).
    pub fn last_label(&self) -> usize {
        self.clusters.last().map_or(0, |c| c.last_label)
    }

    /// Total number of eigenvalues listed, multiplicities counted.
    pub fn total_multiplicity(&self) -> usize {
        self.last_label()
    }
}

/// Enumerate every eigenvalue cluster of `M_a` with value ≤ `lambda_max`.
///
/// For `a = 1` equal eigenvalues are grouped by exact integer arithmetic;
/// for general `a` two values are clustered when they differ by less than
/// `1e-9 · (1 + λ)`, so rational coincidences are not split by rounding.
pub fn enumerate_spectrum(a: f64, lambda_max: f64) -> Result<SpectrumTable, SpectrumError> {
    if a.is_nan() || a <= 0.0 {
        return Err(SpectrumError::NonPositiveWidth(a));
    }
    if lambda_max.is_nan() || lambda_max < 0.0 {
        return Err(SpectrumError::NegativeLambdaMax(lambda_max));
    }

    let mut modes: Vec<(f64, u64, ModePair)> = Vec::new();
    let mut m = 1u32;
    while (m as f64) * (m as f64) <= lambda_max {
        let mut n = if m.is_multiple_of(2) { 1 } else { 0 };
        loop {
            let pair = ModePair { m, n };
            let value = pair.eigenvalue(a);
            if value > lambda_max {
                // Exact integer comparison decides the edge for a = 1.
                if a == 1.0 {
                    let exact = (m as u64) * (m as u64) + (n as u64) * (n as u64);
                    if exact as f64 > lambda_max {
                        break;
                    }
                } else {
                    break;
                }
            }
            let key = if a == 1.0 {
                (m as u64) * (m as u64) + (n as u64) * (n as u64)
            } else {
                0
            };
            modes.push((value, key, pair));
            n += 2;
        }
        m += 1;
    }

    modes.sort_by(|x, y| {
        x.0.partial_cmp(&y.0)
            .unwrap()
            .then_with(|| mode_order_key(&x.2).cmp(&mode_order_key(&y.2)))
    });

    let mut clusters: Vec<EigenvalueCluster> = Vec::new();
    let mut next_label = 1usize;
    for (value, key, pair) in modes {
        let same_cluster = clusters.last().is_some_and(|c: &EigenvalueCluster| {
            if a == 1.0 {
                // Exact integer equality.
                key == c.value as u64
            } else {
                (value - c.value).abs() <= 1e-9 * (1.0 + value)
            }
        });
        if same_cluster {
            let c = clusters.last_mut().unwrap();
            c.modes.push(pair);
            c.multiplicity += pair.multiplicity();
            c.last_label = c.first_label + c.multiplicity - 1;
            next_label = c.last_label + 1;
        } else {
            let mult = pair.multiplicity();
            clusters.push(EigenvalueCluster {
                value,
                modes: vec![pair],
                multiplicity: mult,
                first_label: next_label,
                last_label: next_label + mult - 1,
            });
            next_label += mult;
        }
    }

    // Canonical mode order inside a cluster: pairs with n > 0 first, sorted
    // by min(m,n) and then m; pure sin(mx) modes (n = 0) last.
    for c in &mut clusters {
        c.modes.sort_by_key(mode_order_key);
    }

    Ok(SpectrumTable {
        a,
        lambda_max,
        clusters,
    })
}

fn mode_order_key(p: &ModePair) -> (bool, u32, u32) {
    (p.n == 0, p.m.min(p.n), p.m)
}

/// `N(λ)`: the number of eigenvalues strictly below `lambda`, multiplicities
/// counted. The table must cover `lambda`.
pub fn counting_function(table: &SpectrumTable, lambda: f64) -> Result<usize, SpectrumError> {
    if lambda > table.lambda_max {
        return Err(SpectrumError::LambdaOutOfRange {
            lambda,
            lambda_max: table.lambda_max,
        });
    }
    let mut count = 0usize;
    for c in &table.clusters {
        if c.value < lambda {
            count += c.multiplicity;
        } else {
            break;
        }
    }
    Ok(count)
}

/// Lower bound `πλ/4 − 2√λ + 1` for the counting function of `M_1`.
pub fn weyl_lower_bound(lambda: f64) -> Result<f64, SpectrumError> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(SpectrumError::NegativeLambda(lambda));
    }
    Ok(std::f64::consts::PI * lambda / 4.0 - 2.0 * lambda.sqrt() + 1.0)
}

/// `λ_k` for a 1-based label `k`.
pub fn eigenvalue_at_label(table: &SpectrumTable, k: usize) -> Result<f64, SpectrumError> {
    let last = table.last_label();
    if k == 0 || k > last {
        return Err(SpectrumError::LabelOutOfRange { label: k, last });
    }
    let idx = table
        .clusters
        .partition_point(|c| c.last_label < k);
    Ok(table.clusters[idx].value)
}
