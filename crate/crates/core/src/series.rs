//! Dimension sequences of graded vector spaces and the growth analyzers built
//! on them.
//!
//! Sequences carry an explicit truncation degree; reading past it is an error.
//! The PBW transform turns the dimensions of a graded Lie algebra into those of
//! its enveloping algebra: an exterior factor `(1 + t^i)^{dim L_i}` for every
//! odd degree and a polynomial factor `(1 - t^i)^{-dim L_i}` for every even one.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::SeriesError;

/// `dims[n]` is the dimension in degree `n`, valid for `n <= truncation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionSequence {
    dims: Vec<BigUint>,
}

impl DimensionSequence {
    pub fn new(dims: Vec<BigUint>) -> Self {
        assert!(!dims.is_empty(), "a dimension sequence covers at least degree 0");
        DimensionSequence { dims }
    }

    pub fn from_u64(dims: &[u64]) -> Self {
        DimensionSequence::new(dims.iter().map(|d| BigUint::from(*d)).collect())
    }

    pub fn zeros(truncation: usize) -> Self {
        DimensionSequence::new(vec![BigUint::zero(); truncation + 1])
    }

    /// Builds a sequence from `(degree, dim)` pairs; unlisted degrees are 0.
    pub fn from_degrees<I: IntoIterator<Item = (usize, u64)>>(truncation: usize, it: I) -> Self {
        let mut s = DimensionSequence::zeros(truncation);
        for (d, k) in it {
            if d <= truncation {
                s.dims[d] += BigUint::from(k);
            }
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&BigUint, SeriesError> {
        self.dims.get(n).ok_or(SeriesError::BeyondTruncation {
            degree: n,
            truncation: self.truncation(),
        })
    }

    pub fn dims(&self) -> &[BigUint] {
        &self.dims
    }

    /// Entries as `u64`, saturating.
    pub fn to_u64_vec(&self) -> Vec<u64> {
        self.dims.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }

    pub fn truncate(&self, n: usize) -> Result<Self, SeriesError> {
        self.get(n)?;
        Ok(DimensionSequence::new(self.dims[..=n].to_vec()))
    }

    /// Degreewise sum; the result is valid up to the smaller truncation.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        DimensionSequence::new((0..=n).map(|i| &self.dims[i] + &other.dims[i]).collect())
    }

    /// Largest degree with a nonzero entry.
    pub fn top_degree(&self) -> Option<usize> {
        self.dims.iter().rposition(|d| !d.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dims": self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "truncation": self.truncation(),
        })
    }

    /// Reads `{"dims": ["1", ...], "truncation": N}`; integers are accepted in
    /// place of strings. `truncation` may not exceed the number of entries.
    pub fn from_json(v: &serde_json::Value) -> Result<Self, SeriesError> {
        let arr = v
            .get("dims")
            .and_then(|d| d.as_array())
            .ok_or_else(|| SeriesError::Malformed("missing `dims` array".into()))?;
        let mut dims = Vec::with_capacity(arr.len());
        for (i, x) in arr.iter().enumerate() {
            let s = match x {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(SeriesError::Malformed(format!("entry {i} is not a number"))),
            };
            let d: BigUint = s.trim().parse().map_err(|_| {
                SeriesError::Malformed(format!("entry {i} = `{s}` is not a nonnegative integer"))
            })?;
            dims.push(d);
        }
        if dims.is_empty() {
            return Err(SeriesError::Malformed("empty `dims`".into()));
        }
        let trunc = match v.get("truncation") {
            Some(t) => t
                .as_u64()
                .ok_or_else(|| SeriesError::Malformed("`truncation` is not an integer".into()))?
                as usize,
            None => dims.len() - 1,
        };
        if trunc + 1 > dims.len() {
            return Err(SeriesError::Malformed(format!(
                "truncation {trunc} exceeds the {} listed degrees",
                dims.len()
            )));
        }
        dims.truncate(trunc + 1);
        Ok(DimensionSequence::new(dims))
    }
}

impl Serialize for DimensionSequence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

fn binomial(n: &BigUint, k: usize) -> BigUint {
    let mut c = BigUint::one();
    for j in 0..k {
        c = c * (n - BigUint::from(j)) / BigUint::from(j + 1);
    }
    c
}

/// Multiplies `series` (in place, truncated) by the PBW factor of `m` basis
/// elements of degree `deg`.
fn multiply_factor(series: &mut [BigUint], deg: usize, m: &BigUint) {
    if m.is_zero() || deg == 0 {
        return;
    }
    let n = series.len() - 1;
    let jmax = n / deg;
    let odd = deg % 2 == 1;
    // coefficient of t^{deg j}
    let mut coeffs = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let c = if odd {
            if BigUint::from(j) > *m {
                break;
            }
            binomial(m, j)
        } else {
            binomial(&(m + BigUint::from(j) - BigUint::one()), j)
        };
        coeffs.push(c);
    }
    for total in (0..=n).rev() {
        let mut acc = BigUint::zero();
        for (j, c) in coeffs.iter().enumerate() {
            let shift = deg * j;
            if shift > total {
                break;
            }
            if !series[total - shift].is_zero() {
                acc += c * &series[total - shift];
            }
        }
        series[total] = acc;
    }
}

/// Dimensions of `UL` from those of `L`, through the same truncation.
pub fn pbw_series(lie_dims: &DimensionSequence) -> Result<DimensionSequence, SeriesError> {
    if !lie_dims.dims[0].is_zero() {
        return Err(SeriesError::NonzeroDegreeZero(lie_dims.dims[0].to_string()));
    }
    let n = lie_dims.truncation();
    let mut out = vec![BigUint::zero(); n + 1];
    out[0] = BigUint::one();
    for (deg, m) in lie_dims.dims.iter().enumerate().skip(1) {
        multiply_factor(&mut out, deg, m);
    }
    Ok(DimensionSequence::new(out))
}

/// The unique Lie dimension sequence whose PBW series is `algebra_dims`.
pub fn inverse_pbw(algebra_dims: &DimensionSequence) -> Result<DimensionSequence, SeriesError> {
    if !algebra_dims.dims[0].is_one() {
        return Err(SeriesError::BadUnit(algebra_dims.dims[0].to_string()));
    }
    let n = algebra_dims.truncation();
    let mut cur = vec![BigUint::zero(); n + 1];
    cur[0] = BigUint::one();
    let mut lie = vec![BigUint::zero(); n + 1];
    for deg in 1..=n {
        let want = BigInt::from(algebra_dims.dims[deg].clone());
        let have = BigInt::from(cur[deg].clone());
        let diff = want - have;
        if diff.is_negative() {
            return Err(SeriesError::NoLieRealization { degree: deg, value: diff.to_string() });
        }
        let m = diff.to_biguint().expect("nonnegative");
        multiply_factor(&mut cur, deg, &m);
        lie[deg] = m;
    }
    Ok(DimensionSequence::new(lie))
}

/// Partial sums `sum_{i <= n} dim V_i`.
pub fn cumulative(seq: &DimensionSequence) -> DimensionSequence {
    let mut acc = BigUint::zero();
    let dims = seq
        .dims
        .iter()
        .map(|d| {
            acc += d;
            acc.clone()
        })
        .collect();
    DimensionSequence::new(dims)
}

/// Dimensions of the tensor algebra on generators of the given degrees, i.e.
/// the coefficients of `1 / (1 - sum t^{deg g})`.
pub fn tensor_algebra_series(generator_degrees: &[usize], truncation: usize) -> DimensionSequence {
    let mut out = vec![BigUint::zero(); truncation + 1];
    out[0] = BigUint::one();
    for n in 1..=truncation {
        let mut acc = BigUint::zero();
        for &g in generator_degrees {
            if g >= 1 && g <= n {
                acc += &out[n - g];
            }
        }
        out[n] = acc;
    }
    DimensionSequence::new(out)
}

/// Dimensions of the free graded Lie algebra on generators of the given degrees.
pub fn free_lie_dims(generator_degrees: &[usize], truncation: usize) -> DimensionSequence {
    inverse_pbw(&tensor_algebra_series(generator_degrees, truncation))
        .expect("tensor algebra series always has a Lie realization")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    PolynomialLe(u32),
    SuperpolynomialOnWindow,
    Inconclusive,
}

impl Verdict {
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::PolynomialLe(d) => serde_json::json!({ "polynomial_le": d }),
            Verdict::SuperpolynomialOnWindow => serde_json::json!("superpolynomial_on_window"),
            Verdict::Inconclusive => serde_json::json!("inconclusive"),
        }
    }
}

/// Window estimate of the polynomial growth bound. Every verdict is limited to
/// the window it was computed on.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    pub cumulative: DimensionSequence,
    /// Least-squares slope of log cumulative against log n; diagnostic only.
    pub fitted_exponent: f64,
    /// Slopes on the lower and upper halves of the window; diagnostic only.
    pub half_slopes: (f64, f64),
    /// `C` with `cumulative[n] <= C n^d` for `1 <= n <= truncation`, when the
    /// verdict is `PolynomialLe(d)`.
    pub witness_constant: Option<BigRational>,
    pub window: (usize, usize),
    pub verdict: Verdict,
}

impl GrowthReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict.to_json(),
            "window": [self.window.0, self.window.1],
            "window_limited": true,
            "fitted_exponent": {
                "value": format_diag(self.fitted_exponent),
                "lower_half": format_diag(self.half_slopes.0),
                "upper_half": format_diag(self.half_slopes.1),
                "diagnostic": true,
            },
            "witness_constant": self.witness_constant.as_ref().map(rational_string),
            "cumulative": self.cumulative.to_json(),
        })
    }
}

impl Serialize for GrowthReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

pub(crate) fn format_diag(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "nan".to_string()
    }
}

pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Slack subtracted from the fitted slope before rounding up to an integer
/// exponent; absorbs the lower-order terms of a polynomial count.
pub const EXPONENT_SLACK: f64 = 0.2;
/// Upper-half slope must exceed the lower-half slope by this much (and by
/// [`SUPERPOLY_RATIO`]) to call growth superpolynomial on the window.
pub const SUPERPOLY_GAP: f64 = 1.0;
pub const SUPERPOLY_RATIO: f64 = 1.5;
pub const MIN_WINDOW_POINTS: usize = 8;

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().map(f64::ln).unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().unwrap_or(0.0);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

fn ls_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    if points.len() < 2 {
        return f64::NAN;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        f64::NAN
    } else {
        sxy / sxx
    }
}

/// Estimates `polybd` of the space with dimensions `seq` on the degree window
/// `[lo, hi]`.
///
/// The exponent `d` is `0` exactly when the cumulative count is constant on
/// the upper half of the window; otherwise it is the least integer `>= 1` and
/// `>= slope - EXPONENT_SLACK`. The witness `C` is the exact maximum of
/// `cumulative[n] / n^d` over `1 <= n <= truncation`. Growth is called
/// superpolynomial when the log-log slope accelerates across the window.
pub fn polybd_estimate(
    seq: &DimensionSequence,
    window: (usize, usize),
) -> Result<GrowthReport, SeriesError> {
    let (lo, hi) = window;
    let bad = |reason: &str| SeriesError::InvalidWindow { lo, hi, reason: reason.to_string() };
    if lo < 1 {
        return Err(bad("window must start at degree 1 or later"));
    }
    if hi > seq.truncation() {
        return Err(bad("window exceeds truncation"));
    }
    if hi < lo || hi - lo + 1 < MIN_WINDOW_POINTS {
        return Err(bad("window needs at least 8 points"));
    }
    let cum = cumulative(seq);
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .filter(|&n| !cum.dims[n].is_zero())
        .map(|n| ((n as f64).ln(), ln_big(&cum.dims[n])))
        .collect();
    let mid = lo + (hi - lo) / 2;
    let lower: Vec<_> =
        pts.iter().copied().filter(|p| p.0 <= (mid as f64).ln() + 1e-12).collect();
    let upper: Vec<_> =
        pts.iter().copied().filter(|p| p.0 >= (mid as f64).ln() - 1e-12).collect();
    let slope = ls_slope(&pts);
    let halves = (ls_slope(&lower), ls_slope(&upper));
    let mut report = GrowthReport {
        cumulative: cum.clone(),
        fitted_exponent: slope,
        half_slopes: halves,
        witness_constant: None,
        window,
        verdict: Verdict::Inconclusive,
    };
    if cum.dims[hi].is_zero() {
        return Ok(report);
    }
    if cum.dims[mid] == cum.dims[hi] {
        report.fitted_exponent = 0.0;
        report.witness_constant = Some(max_ratio(&cum, 0));
        report.verdict = Verdict::PolynomialLe(0);
        return Ok(report);
    }
    if pts.len() < MIN_WINDOW_POINTS / 2 || !slope.is_finite() {
        return Ok(report);
    }
    let (s_lo, s_hi) = halves;
    if s_lo.is_finite()
        && s_hi.is_finite()
        && s_hi - s_lo > SUPERPOLY_GAP
        && s_hi > SUPERPOLY_RATIO * s_lo.max(0.0)
    {
        report.verdict = Verdict::SuperpolynomialOnWindow;
        return Ok(report);
    }
    let d = ((slope - EXPONENT_SLACK).ceil().max(1.0)) as u32;
    report.witness_constant = Some(max_ratio(&cum, d));
    report.verdict = Verdict::PolynomialLe(d);
    Ok(report)
}

/// max over `1 <= n <= truncation` of `cum[n] / n^d`.
fn max_ratio(cum: &DimensionSequence, d: u32) -> BigRational {
    let mut best = BigRational::zero();
    for n in 1..=cum.truncation() {
        let r = BigRational::new(
            BigInt::from(cum.dims[n].clone()),
            BigInt::from(n).pow(d),
        );
        if r > best {
            best = r;
        }
    }
    best
}

/// Result of the `C log2 n` bound test.
#[derive(Clone, Debug, PartialEq)]
pub struct Log2Check {
    pub holds: bool,
    /// Constant fitted on the first half of `[2, N]`.
    pub fitted_constant: BigRational,
    /// When `holds`, the least constant on the 1/1000 grid that works for the
    /// whole range `[2, N]`.
    pub witness_constant: Option<BigRational>,
    /// First `n` in the second half violating the fitted bound.
    pub counterexample: Option<usize>,
    pub split: usize,
    pub truncation: usize,
}

impl Log2Check {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "fitted_constant": rational_string(&self.fitted_constant),
            "witness_constant": self.witness_constant.as_ref().map(rational_string),
            "counterexample": self.counterexample,
            "fit_range": [2, self.split],
            "test_range": [self.split + 1, self.truncation],
            "window_limited": true,
        })
    }
}

const LOG2_GRID: u64 = 1000;

/// Exact test of `cum <= C * log2(n)`, i.e. `2^(cum * q) <= n^p` for `C = p/q`.
fn log2_bound_holds(cum: &BigUint, n: usize, c: &BigRational) -> bool {
    if cum.is_zero() {
        return true;
    }
    if c.is_zero() || n < 2 {
        return false;
    }
    let p = c.numer().to_biguint().expect("positive constant");
    let q = c.denom().to_biguint().expect("positive denominator");
    let lhs_bits = cum * &q; // log2 of the left side
    let rhs_log = p.to_f64().unwrap_or(f64::INFINITY) * (n as f64).log2();
    let lhs = lhs_bits.to_f64().unwrap_or(f64::INFINITY);
    let margin = 1e-9 * lhs.max(rhs_log).max(1.0);
    if lhs < rhs_log - margin {
        return true;
    }
    if lhs > rhs_log + margin {
        return false;
    }
    // Too close for floating point: decide exactly.
    let e = lhs_bits.to_u64().expect("exponent fits when the floats agree");
    let pe = p.to_u32().expect("exponent fits when the floats agree");
    (BigUint::one() << e) <= BigUint::from(n).pow(pe)
}

/// Least grid constant making the bound hold at `n`.
fn grid_constant(cum: &BigUint, n: usize) -> BigRational {
    let approx = ln_big(cum) - ((n as f64).log2()).ln();
    let mut k = BigInt::from(((approx.exp() * LOG2_GRID as f64).ceil().max(0.0)) as u64);
    if cum.is_zero() {
        return BigRational::zero();
    }
    let grid = BigInt::from(LOG2_GRID);
    loop {
        let c = BigRational::new(k.clone(), grid.clone());
        if log2_bound_holds(cum, n, &c) {
            // step down in case the float estimate overshot
            while k > BigInt::zero() {
                let smaller = BigRational::new(&k - 1, grid.clone());
                if log2_bound_holds(cum, n, &smaller) {
                    k -= 1;
                } else {
                    break;
                }
            }
            return BigRational::new(k, grid);
        }
        k += 1;
    }
}

/// Tests `sum_{i <= n} dim V_i <= C log2 n` for `2 <= n <= N`: `C` is fitted on
/// the first half of the range and tested on the second half.
pub fn log2_bound_check(seq: &DimensionSequence) -> Result<Log2Check, SeriesError> {
    let n_max = seq.truncation();
    if n_max < 4 {
        return Err(SeriesError::TruncationTooSmall { needed: "4".into(), truncation: n_max });
    }
    let cum = cumulative(seq);
    let split = (2 + n_max) / 2;
    let mut fitted = BigRational::zero();
    for n in 2..=split {
        let c = grid_constant(&cum.dims[n], n);
        if c > fitted {
            fitted = c;
        }
    }
    let counterexample =
        (split + 1..=n_max).find(|&n| !log2_bound_holds(&cum.dims[n], n, &fitted));
    let holds = counterexample.is_none();
    let witness_constant = if holds {
        let mut best = BigRational::zero();
        for n in 2..=n_max {
            let c = grid_constant(&cum.dims[n], n);
            if c > best {
                best = c;
            }
        }
        Some(best)
    } else {
        None
    };
    Ok(Log2Check {
        holds,
        fitted_constant: fitted,
        witness_constant,
        counterexample,
        split,
        truncation: n_max,
    })
}

/// Outcome of the sliding-window lower bound `sum_{i=k+1}^{k+d} dim L_i >= k^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowOutcome {
    /// Holds for every `k` with `k0 <= k <= N - d`.
    Found { k0: usize },
    Failure { largest_violation: usize, first_violation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowReport {
    pub width: usize,
    pub exponent: u32,
    pub k_range: (usize, usize),
    pub outcome: WindowOutcome,
}

impl WindowReport {
    pub fn to_json(&self) -> serde_json::Value {
        let outcome = match &self.outcome {
            WindowOutcome::Found { k0 } => serde_json::json!({ "found": { "k0": k0 } }),
            WindowOutcome::Failure { largest_violation, first_violation } => serde_json::json!({
                "failure": {
                    "largest_violation": largest_violation,
                    "first_violation": first_violation,
                }
            }),
        };
        serde_json::json!({
            "d": self.width,
            "r": self.exponent,
            "k_range": [self.k_range.0, self.k_range.1],
            "outcome": outcome,
            "window_limited": true,
        })
    }
}

/// Smallest `k0` such that `sum_{i=k+1}^{k+d} dim L_i >= k^r` for all
/// `k0 <= k <= N - d`. Fails when the inequality is violated at `k = N - d`.
pub fn theorem5_window(
    seq: &DimensionSequence,
    width: usize,
    exponent: u32,
) -> Result<WindowReport, SeriesError> {
    let n = seq.truncation();
    if width < 1 || exponent < 1 {
        return Err(SeriesError::InvalidWindow {
            lo: width,
            hi: exponent as usize,
            reason: "window width and exponent must be at least 1".into(),
        });
    }
    if n < width + 1 {
        return Err(SeriesError::TruncationTooSmall {
            needed: (width + 1).to_string(),
            truncation: n,
        });
    }
    let k_hi = n - width;
    let holds = |k: usize| -> bool {
        let s: BigUint = seq.dims[k + 1..=k + width].iter().sum();
        s >= BigUint::from(k).pow(exponent)
    };
    let violations: Vec<usize> = (1..=k_hi).filter(|&k| !holds(k)).collect();
    let outcome = match (violations.first(), violations.last()) {
        (None, _) => WindowOutcome::Found { k0: 1 },
        (Some(&first), Some(&last)) if last == k_hi => {
            WindowOutcome::Failure { largest_violation: last, first_violation: first }
        }
        (_, Some(&last)) => WindowOutcome::Found { k0: last + 1 },
        _ => unreachable!(),
    };
    Ok(WindowReport { width, exponent, k_range: (1, k_hi), outcome })
}

/// Checks `sum_{i <= n d(n)} dim (UL)_i >= 2^{d(n)}` where `d(n)` is the
/// cumulative Lie dimension through degree `n`.
pub fn pbw_exponential_check(
    lie_dims: &DimensionSequence,
    n: usize,
) -> Result<bool, SeriesError> {
    let cum = cumulative(lie_dims);
    let dn = cum.get(n)?.clone();
    let reach = BigUint::from(n) * &dn;
    let reach = match reach.to_usize() {
        Some(r) if r <= lie_dims.truncation() => r,
        _ => {
            return Err(SeriesError::TruncationTooSmall {
                needed: reach.to_string(),
                truncation: lie_dims.truncation(),
            })
        }
    };
    let ul = pbw_series(lie_dims)?;
    let total: BigUint = ul.dims[..=reach].iter().sum();
    let e = dn.to_u64().expect("d(n) fits once n d(n) is within truncation");
    Ok(total >= BigUint::one() << e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(xs: &[u64]) -> DimensionSequence {
        DimensionSequence::from_u64(xs)
    }

    #[test]
    fn pbw_of_single_generators() {
        let even = DimensionSequence::from_degrees(8, [(2, 1)]);
        assert_eq!(pbw_series(&even).unwrap(), seq(&[1, 0, 1, 0, 1, 0, 1, 0, 1]));
        let odd = DimensionSequence::from_degrees(8, [(3, 1)]);
        assert_eq!(pbw_series(&odd).unwrap(), seq(&[1, 0, 0, 1, 0, 0, 0, 0, 0]));
    }

    #[test]
    fn pbw_of_odd_one_and_even_two_is_geometric() {
        // Oracle: words in one degree-1 letter, one per degree.
        let l = DimensionSequence::from_degrees(10, [(1, 1), (2, 1)]);
        assert_eq!(pbw_series(&l).unwrap(), seq(&[1; 11]));
    }

    #[test]
    fn pbw_rejects_degree_zero() {
        assert!(matches!(
            pbw_series(&seq(&[1, 1])),
            Err(SeriesError::NonzeroDegreeZero(_))
        ));
    }

    #[test]
    fn inverse_pbw_examples() {
        let ones = seq(&[1; 9]);
        assert_eq!(
            inverse_pbw(&ones).unwrap(),
            DimensionSequence::from_degrees(8, [(1, 1), (2, 1)])
        );
        let pow2: Vec<u64> = (0..9).map(|n| 1u64 << n).collect();
        let l = inverse_pbw(&seq(&pow2)).unwrap();
        assert_eq!(&l.to_u64_vec()[..5], &[0, 2, 3, 2, 3]);
        assert!(matches!(
            inverse_pbw(&seq(&[1, 2, 0])),
            Err(SeriesError::NoLieRealization { degree: 2, .. })
        ));
        assert!(matches!(inverse_pbw(&seq(&[2, 0])), Err(SeriesError::BadUnit(_))));
    }

    #[test]
    fn negative_entries_are_malformed_json() {
        let v = serde_json::json!({"dims": ["1", "0", "-1"], "truncation": 2});
        assert!(matches!(DimensionSequence::from_json(&v), Err(SeriesError::Malformed(_))));
    }

    #[test]
    fn truncation_is_enforced() {
        let s = seq(&[0, 1, 1]);
        assert!(s.get(2).is_ok());
        assert!(matches!(s.get(3), Err(SeriesError::BeyondTruncation { degree: 3, .. })));
        assert_eq!(s.add(&seq(&[0, 1])).truncation(), 1);
    }

    #[test]
    fn cumulative_examples() {
        assert_eq!(cumulative(&seq(&[0, 1, 1, 1])), seq(&[0, 1, 2, 3]));
        assert_eq!(cumulative(&seq(&[0, 0, 0])), seq(&[0, 0, 0]));
        let c = cumulative(&seq(&[1; 20]));
        assert!((0..20).all(|n| c.dims()[n] == BigUint::from(n as u64 + 1)));
    }

    #[test]
    fn polybd_examples() {
        let ones = seq(&[1; 41]);
        let r = polybd_estimate(&ones, (10, 40)).unwrap();
        assert_eq!(r.verdict, Verdict::PolynomialLe(1));
        assert!((r.fitted_exponent - 1.0).abs() < 0.1);
        // Finite support: nothing in the window.
        let fin = DimensionSequence::from_degrees(40, [(1, 2), (3, 1)]);
        assert_eq!(polybd_estimate(&fin, (10, 40)).unwrap().verdict, Verdict::PolynomialLe(0));
        let pow2: Vec<u64> = (0..31).map(|n| 1u64 << n).collect();
        assert_eq!(
            polybd_estimate(&seq(&pow2), (1, 30)).unwrap().verdict,
            Verdict::SuperpolynomialOnWindow
        );
        let zero = DimensionSequence::zeros(20);
        assert_eq!(polybd_estimate(&zero, (5, 20)).unwrap().verdict, Verdict::Inconclusive);
        assert!(polybd_estimate(&ones, (35, 40)).is_err());
        assert!(polybd_estimate(&ones, (0, 40)).is_err());
    }

    #[test]
    fn quadratic_growth_is_degree_two() {
        // dims n+1 => cumulative ~ n^2 / 2
        let v: Vec<u64> = (0..61).map(|n| n + 1).collect();
        let r = polybd_estimate(&seq(&v), (10, 60)).unwrap();
        assert_eq!(r.verdict, Verdict::PolynomialLe(2));
        let c = r.witness_constant.unwrap();
        for n in 1..=60u64 {
            let cum = BigInt::from((n + 1) * (n + 2) / 2);
            assert!(BigRational::from_integer(cum) <= &c * BigRational::from_integer(BigInt::from(n * n)));
        }
    }

    #[test]
    fn log2_examples() {
        let sparse = DimensionSequence::from_degrees(128, (0..8).map(|k| (1usize << k, 1)));
        let r = log2_bound_check(&sparse).unwrap();
        assert!(r.holds);
        assert!(r.witness_constant.unwrap() <= BigRational::from_integer(2.into()));
        let mut ones = vec![1u64; 65];
        ones[0] = 0;
        let r = log2_bound_check(&seq(&ones)).unwrap();
        assert!(!r.holds);
        assert!(r.counterexample.is_some());
        assert!(log2_bound_check(&seq(&[0, 1, 1])).is_err());
    }

    #[test]
    fn window_examples() {
        let mut ones = vec![1u64; 31];
        ones[0] = 0;
        let r = theorem5_window(&seq(&ones), 1, 1).unwrap();
        assert_eq!(r.outcome, WindowOutcome::Failure { largest_violation: 29, first_violation: 2 });
        let z = DimensionSequence::zeros(10);
        let r = theorem5_window(&z, 2, 1).unwrap();
        assert_eq!(r.outcome, WindowOutcome::Failure { largest_violation: 8, first_violation: 1 });
        let free = free_lie_dims(&[1, 1], 30);
        let r = theorem5_window(&free, 1, 2).unwrap();
        assert!(matches!(r.outcome, WindowOutcome::Found { .. }));
    }

    #[test]
    fn exponential_check_examples() {
        let one_odd = DimensionSequence::from_degrees(4, [(1, 1)]);
        assert!(pbw_exponential_check(&one_odd, 1).unwrap());
        let free = free_lie_dims(&[1, 1], 4);
        assert!(pbw_exponential_check(&free, 1).unwrap());
        let empty = DimensionSequence::zeros(4);
        assert!(pbw_exponential_check(&empty, 3).unwrap());
        assert!(pbw_exponential_check(&free, 2).is_err());
    }
}
