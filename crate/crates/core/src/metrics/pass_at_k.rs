use serde::{Deserialize, Serialize};

use super::MetricsError;
use crate::num::{from_usize, Probability};

/// Samples generated (`n`) and samples passing every test (`c`) for one problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PassAtKInput {
    pub n: u64,
    pub c: u64,
}

impl PassAtKInput {
    pub fn new(n: u64, c: u64) -> Result<Self, MetricsError> {
        if n == 0 {
            return Err(MetricsError::Domain("n must be at least 1".into()));
        }
        if c > n {
            return Err(MetricsError::Domain(format!("c = {c} exceeds n = {n}")));
        }
        Ok(Self { n, c })
    }

    /// The single-sample case: one attempt, passed or not.
    pub fn single(passed: bool) -> Self {
        Self { n: 1, c: passed as u64 }
    }
}

/// Unbiased pass@k estimate `1 - C(n-c, k) / C(n, k)`.
///
/// Evaluated as `1 - prod_{i=n-c+1}^{n} (1 - k/i)`, which never forms a
/// binomial coefficient. Exactly 0 when `c = 0`, exactly 1 when `n - c < k`.
pub fn pass_at_k<T: Probability>(input: PassAtKInput, k: u64) -> Result<T, MetricsError> {
    let PassAtKInput { n, c } = PassAtKInput::new(input.n, input.c)?;
    if k == 0 || k > n {
        return Err(MetricsError::Domain(format!("k = {k} must satisfy 1 <= k <= n = {n}")));
    }
    if c == 0 {
        return Ok(T::zero());
    }
    if n - c < k {
        return Ok(T::one());
    }
    let k_t: T = from_usize(k as usize);
    let mut miss = T::one();
    for i in (n - c + 1)..=n {
        let i_t: T = from_usize(i as usize);
        miss = miss * (T::one() - k_t / i_t);
    }
    Ok(T::one() - miss)
}

/// Mean pass@k over problems.
pub fn pass_at_k_mean<T: Probability>(records: &[PassAtKInput], k: u64) -> Result<T, MetricsError> {
    if records.is_empty() {
        return Err(MetricsError::Empty("pass@k over zero problems"));
    }
    let mut sum = T::zero();
    for r in records {
        sum = sum + pass_at_k::<T>(*r, k)?;
    }
    Ok(sum / from_usize(records.len()))
}

/// pass@1 as a percentage: `100 * mean(c / n)`. With one sample per problem
/// this is `100 * accepted / total`.
pub fn pass_at_1_rate<T: Probability>(records: &[PassAtKInput]) -> Result<T, MetricsError> {
    let hundred: T = from_usize(100);
    pass_at_k_mean::<T>(records, 1).map(|p| p * hundred)
}
