//! Closed-form values, bounds and inequalities, evaluated in exact rational
//! arithmetic.
//!
//! Evaluators compute their formula even outside the parameter range in
//! which it is known to hold; such calls carry the [`RANGE_VIOLATED`] flag.
//! Only undefined expressions (poles, empty maxima) are errors.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::binom;
use crate::error::{Error, Result};
use crate::rational::{self, int, ratio, Rational};

pub const RANGE_VIOLATED: &str = "range-violated";

/// Weights `p_0 >= p_1 >= ... >= p_s > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidWeights("empty weight vector".into()));
        }
        if let Some(p) = entries.iter().find(|p| !p.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {} is not positive", rational::format(p))));
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeights("weights must be nonincreasing".into()));
        }
        Ok(WeightVector(entries))
    }

    pub fn from_integers(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&p| int(p)).collect())
    }

    /// `(1, ..., 1)` of length `s + 1`.
    pub fn uniform(s: usize) -> Self {
        WeightVector(vec![Rational::one(); s + 1])
    }

    /// `(p, 1, ..., 1)` of length `s + 1`.
    pub fn leading(p: u64, s: usize) -> Result<Self> {
        let mut v = vec![int(p)];
        v.extend(std::iter::repeat_n(Rational::one(), s));
        Self::new(v)
    }

    /// Parses `"2,1"` or `"3/2, 1"`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.split(',').map(rational::parse).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the top family.
    pub fn s(&self) -> usize {
        self.0.len() - 1
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.0.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `p_1 + ... + p_s`.
    pub fn tail_total(&self) -> Rational {
        self.0[1..].iter().sum()
    }

    /// Whether the vector has the shape `(p, 1, ..., 1)`; returns `p`.
    pub fn leading_weight(&self) -> Option<&Rational> {
        self.0[1..].iter().all(One::is_one).then(|| &self.0[0])
    }

    pub fn label(&self) -> String {
        self.0.iter().map(rational::format).collect::<Vec<_>>().join(",")
    }
}

impl Serialize for WeightVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::serde_rational_vec::serialize(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for WeightVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = rational::serde_rational_vec::deserialize(d)?;
        WeightVector::new(v).map_err(serde::de::Error::custom)
    }
}

/// One evaluated formula.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub params: String,
    #[serde(with = "rational::serde_rational")]
    pub value: Rational,
    pub flags: Vec<String>,
    /// Construction attaining the value, when one is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
}

impl BoundReport {
    fn new(name: &str, params: &[(&str, String)], value: Rational) -> Self {
        let mut p = String::new();
        for (i, (k, v)) in params.iter().enumerate() {
            if i > 0 {
                p.push(',');
            }
            let _ = write!(p, "{k}={v}");
        }
        BoundReport { name: name.into(), params: p, value, flags: Vec::new(), construction: None }
    }

    fn flag_if(mut self, violated: bool) -> Self {
        if violated {
            self.flags.push(RANGE_VIOLATED.into());
        }
        self
    }

    fn attained_by(mut self, tag: &str) -> Self {
        self.construction = Some(tag.into());
        self
    }

    pub fn range_violated(&self) -> bool {
        self.flags.iter().any(|f| f == RANGE_VIOLATED)
    }
}

fn c(m: u64, s: u64) -> Result<Rational> {
    Ok(binom(m, s)?.to_rational())
}

/// `C(m - d, s)` with a negative top treated as an empty count.
fn c_minus(m: u64, d: u64, s: u64) -> Result<Rational> {
    match m.checked_sub(d) {
        Some(top) => c(top, s),
        None => Ok(Rational::zero()),
    }
}

fn max_tagged(terms: Vec<(Rational, &'static str)>) -> (Rational, &'static str) {
    // first maximum wins ties
    terms
        .into_iter()
        .reduce(|best, t| if t.0 > best.0 { t } else { best })
        .expect("nonempty")
}

fn pv(v: u64) -> String {
    v.to_string()
}

/// `f(n, k, m, 1) = max{C(n, k), m C(n-1, k-1)}` for `n >= 2k`.
pub fn hilton_bound(n: u64, k: u64, m: u64) -> Result<BoundReport> {
    let full = c(n, k)?;
    let star = int(m) * c_minus(n, 1, k.saturating_sub(1))?;
    let (v, tag) = max_tagged(vec![(full, "single-full"), (star, "star")]);
    Ok(BoundReport::new("hilton", &[("n", pv(n)), ("k", pv(k)), ("m", pv(m))], v)
        .flag_if(n < 2 * k || m < 1 || k < 1)
        .attained_by(tag))
}

/// Upper bound `max{s C(n, k), (p + s) s C(n-1, k-1)}` for `p = (p, 1, ..., 1)`
/// and `n >= (s + 1)k`.
pub fn thm1_bound(n: u64, k: u64, p: u64, s: u64) -> Result<BoundReport> {
    let a = int(s) * c(n, k)?;
    let b = int((p + s) * s) * c_minus(n, 1, k.saturating_sub(1))?;
    let (v, _) = max_tagged(vec![(a, ""), (b, "")]);
    Ok(BoundReport::new("thm1", &[("n", pv(n)), ("k", pv(k)), ("p", pv(p)), ("s", pv(s))], v)
        .flag_if(n < (s + 1) * k || p < 1 || k < 1))
}

/// `g_k(n, p, s, i) = (p + s) C(n, k) - (p + i) C(n - i, k)`.
pub fn g_value(n: u64, k: u64, p: u64, s: u64, i: u64) -> Result<Rational> {
    if i > s {
        return Err(Error::InvalidParameter(format!("i = {i} outside [0, s = {s}]")));
    }
    Ok(int(p + s) * c(n, k)? - int(p + i) * c_minus(n, i, k)?)
}

pub fn g(n: u64, k: u64, p: u64, s: u64, i: u64) -> Result<BoundReport> {
    let v = g_value(n, k, p, s, i)?;
    Ok(BoundReport::new(
        "g",
        &[("n", pv(n)), ("k", pv(k)), ("p", pv(p)), ("s", pv(s)), ("i", pv(i))],
        v,
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GArgmax {
    pub argmax: u64,
    pub value: Rational,
    pub at_endpoint: bool,
    pub values: Vec<Rational>,
}

/// Direct scan of `g` over `i ∈ [0, s]`; ties resolve to the smaller `i`.
pub fn g_argmax(n: u64, k: u64, p: u64, s: u64) -> Result<GArgmax> {
    let values = (0..=s).map(|i| g_value(n, k, p, s, i)).collect::<Result<Vec<_>>>()?;
    let mut argmax = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[argmax] {
            argmax = i;
        }
    }
    let argmax = argmax as u64;
    Ok(GArgmax {
        argmax,
        value: values[argmax as usize].clone(),
        at_endpoint: argmax == 0 || argmax == s,
        values,
    })
}

/// `u(x) = (p + x) sum_{j<k} 1/(n - j - x) - 1` on `[-p, n - k]`.
pub fn u_eval(x: &Rational, n: u64, k: u64, p: u64) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("u needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let lo = -int(p);
    let hi = int(n - k);
    if *x < lo || *x > hi {
        return Err(Error::Undefined(format!(
            "u({}) outside [-{p}, {}]",
            rational::format(x),
            n - k
        )));
    }
    let mut sum = Rational::zero();
    for j in 0..k {
        let den = int(n - j) - x;
        if den.is_zero() {
            return Err(Error::Undefined(format!("pole of u at x = {}", n - j)));
        }
        sum += den.recip();
    }
    Ok((int(p) + x) * sum - Rational::one())
}

/// Brackets the unique zero of `u` on `[-p, n - k]` to width `<= 2^-20`.
pub fn u_zero(n: u64, k: u64, p: u64) -> Result<(Rational, Rational)> {
    let mut lo = -int(p);
    let mut hi = int(n - k.min(n));
    let ulo = u_eval(&lo, n, k, p)?;
    let uhi = u_eval(&hi, n, k, p)?;
    if !(ulo.is_negative() && uhi.is_positive()) {
        return Err(Error::Undefined(format!(
            "no sign change of u on [-{p}, {}]: u = {}, {}",
            n - k,
            rational::format(&ulo),
            rational::format(&uhi)
        )));
    }
    let width = ratio(1, 1u64 << 20);
    while &hi - &lo > width {
        let mid = (&lo + &hi) / int(2);
        let um = u_eval(&mid, n, k, p)?;
        if um.is_zero() {
            return Ok((mid.clone(), mid));
        }
        if um.is_negative() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo, hi))
}

/// `max{s C(n, k), (p + s)(C(n, k) - C(n - s, k))}` for `n >= 4k^2 s`.
pub fn thm2_value(n: u64, k: u64, p: u64, s: u64) -> Result<BoundReport> {
    let full = c(n, k)?;
    let a = int(s) * &full;
    let b = int(p + s) * (&full - c_minus(n, s, k)?);
    let (v, tag) = max_tagged(vec![(a, "empty-then-full"), (b, "cover")]);
    Ok(BoundReport::new("thm2", &[("n", pv(n)), ("k", pv(k)), ("p", pv(p)), ("s", pv(s))], v)
        .flag_if(n < 4 * k * k * s || p < 1)
        .attained_by(tag))
}

/// `(p_0 + ... + p_s) C((s + 1)k - 1, k)`, the value at `n = (s + 1)k`.
pub fn thm3_value(k: u64, weights: &WeightVector) -> Result<BoundReport> {
    let s = weights.s() as u64;
    let top = ((s + 1) * k).saturating_sub(1);
    let v = weights.total() * c(top, k)?;
    Ok(BoundReport::new("thm3", &[("k", pv(k)), ("s", pv(s)), ("p", weights.label())], v)
        .attained_by("clique"))
}

/// `d = max_{1<=i<=s} i (p_0 + ... + p_s) / (p_1 + ... + p_i)`.
pub fn d_vec(weights: &WeightVector) -> Result<Rational> {
    let s = weights.s();
    if s == 0 {
        return Err(Error::Undefined("d is undefined for s = 0".into()));
    }
    let total = weights.total();
    let mut prefix = Rational::zero();
    let mut best: Option<Rational> = None;
    for i in 1..=s {
        prefix += &weights.entries()[i];
        let d = int(i as u64) * &total / &prefix;
        if best.as_ref().is_none_or(|b| d > *b) {
            best = Some(d);
        }
    }
    Ok(best.expect("s >= 1"))
}

/// `(p_1 + ... + p_s) C(n, k)`, valid for `n >= max{(s + 1)k, ceil(d) k}`.
pub fn thm4_value(n: u64, k: u64, weights: &WeightVector) -> Result<BoundReport> {
    let s = weights.s() as u64;
    let threshold = thm4_threshold(k, weights)?;
    let v = weights.tail_total() * c(n, k)?;
    Ok(BoundReport::new("thm4", &[("n", pv(n)), ("k", pv(k)), ("p", weights.label())], v)
        .flag_if(n < threshold || s == 0)
        .attained_by("empty-then-full"))
}

/// `max{(s + 1)k, ceil(d) k}`.
pub fn thm4_threshold(k: u64, weights: &WeightVector) -> Result<u64> {
    let s = weights.s() as u64;
    let d = rational::ceil_u64(&d_vec(weights)?)?;
    Ok(((s + 1) * k).max(d * k))
}

/// `s C(n - 1, k - 1)`, the size bound for `ν(F) <= s` when `n >= k(s + 1)`.
pub fn gb_emc_bound(n: u64, k: u64, s: u64) -> Result<BoundReport> {
    let v = int(s) * c_minus(n, 1, k.saturating_sub(1))?;
    Ok(BoundReport::new("gb-emc", &[("n", pv(n)), ("k", pv(k)), ("s", pv(s))], v)
        .flag_if(n < k * (s + 1) || k < 1))
}

/// The two chains of binomial inequalities
///
/// ```text
/// l C(m-1, s-1) >= C(m, s) - C(m-l, s) >= l C(m-l, s-1)
/// C(m-l, s) / C(m, s) >= (1 - l/(m-s))^s >= 1 - s l/(m-s)
/// ```
///
/// checked exactly. Returns whether each chain holds.
pub fn bde_check(m: u64, s: u64, l: u64) -> Result<(bool, bool)> {
    if s == 0 || s > m || l > m {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= l <= m and 1 <= s <= m, got m={m}, s={s}, l={l}"
        )));
    }
    if m == s {
        return Err(Error::Undefined("division by m - s = 0".into()));
    }
    let lr = int(l);
    let upper = &lr * c(m - 1, s - 1)?;
    let middle = c(m, s)? - c(m - l, s)?;
    let lower = &lr * c(m - l, s - 1)?;
    let first = upper >= middle && middle >= lower;

    let gap = int(m - s);
    let ratio_v = c(m - l, s)? / c(m, s)?;
    let power = rational::pow(&(Rational::one() - &lr / &gap), s as u32);
    let linear = Rational::one() - int(s) * &lr / &gap;
    let second = ratio_v >= power && power >= linear;
    Ok((first, second))
}

/// `max{s C(n, k), (p + s) C((s+1)k - 1, k), (p + s)(C(n, k) - C(n - s, k))}`.
pub fn conj1_value(n: u64, k: u64, p: u64, s: u64) -> Result<BoundReport> {
    let full = c(n, k)?;
    let a = int(s) * &full;
    let b = int(p + s) * c(((s + 1) * k).saturating_sub(1), k)?;
    let d = int(p + s) * (&full - c_minus(n, s, k)?);
    let (v, tag) = max_tagged(vec![(a, "empty-then-full"), (b, "clique"), (d, "cover")]);
    Ok(BoundReport::new("conj1", &[("n", pv(n)), ("k", pv(k)), ("p", pv(p)), ("s", pv(s))], v)
        .flag_if(n < (s + 1) * k || p < 1)
        .attained_by(tag))
}

/// `max{C((s+1)k - 1, k), C(n, k) - C(n - s, k)}`, the conjectured bound on
/// `min_i |B_i|`.
pub fn conj2_bound(n: u64, k: u64, s: u64) -> Result<BoundReport> {
    let a = c(((s + 1) * k).saturating_sub(1), k)?;
    let b = c(n, k)? - c_minus(n, s, k)?;
    let (v, tag) = max_tagged(vec![(a, "clique"), (b, "cover")]);
    Ok(BoundReport::new("conj2", &[("n", pv(n)), ("k", pv(k)), ("s", pv(s))], v)
        .flag_if(n < (s + 1) * k)
        .attained_by(tag))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: BoundReport) -> Rational {
        r.value
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::from_integers(&[1, 2]).is_err());
        assert!(WeightVector::from_integers(&[0]).is_err());
        assert!(WeightVector::from_integers(&[]).is_err());
        let w = WeightVector::parse("3/2, 1,1").unwrap();
        assert_eq!(w.s(), 2);
        assert_eq!(w.label(), "3/2,1,1");
        assert_eq!(w.leading_weight(), Some(&ratio(3, 2)));
        assert_eq!(WeightVector::from_integers(&[4, 2, 1]).unwrap().leading_weight(), None);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"["3/2",1,1]"#);
        assert!(serde_json::from_str::<WeightVector>("[1,2]").is_err());
    }

    #[test]
    fn hilton_examples() {
        assert_eq!(v(hilton_bound(4, 2, 3).unwrap()), int(9));
        assert_eq!(v(hilton_bound(4, 2, 1).unwrap()), int(6));
        for k in 1..6 {
            let r = hilton_bound(2 * k, k, 2).unwrap();
            assert_eq!(r.value, c(2 * k, k).unwrap());
            assert_eq!(r.construction.as_deref(), Some("single-full"));
        }
        assert!(hilton_bound(3, 2, 2).unwrap().range_violated());
    }

    #[test]
    fn thm1_examples() {
        assert_eq!(v(thm1_bound(6, 2, 1, 2).unwrap()), int(30));
        assert_eq!(v(thm1_bound(8, 2, 2, 1).unwrap()), int(28));
        assert_eq!(v(thm1_bound(6, 2, 1, 0).unwrap()), int(0));
        assert!(thm1_bound(5, 2, 1, 2).unwrap().range_violated());
    }

    #[test]
    fn g_examples() {
        for (n, k, p, s) in [(8, 2, 1, 2), (20, 3, 4, 3), (9, 1, 7, 4)] {
            assert_eq!(g_value(n, k, p, s, 0).unwrap(), int(s) * c(n, k).unwrap());
            assert_eq!(
                g_value(n, k, p, s, s).unwrap(),
                int(p + s) * (c(n, k).unwrap() - c(n - s, k).unwrap())
            );
        }
        assert_eq!(g_value(8, 2, 1, 2, 2).unwrap(), int(39));
        assert!(g_value(8, 2, 1, 2, 3).is_err());
    }

    #[test]
    fn g_argmax_examples() {
        let r = g_argmax(32, 2, 1, 2).unwrap();
        assert!(r.at_endpoint);
        // 2 C(32,2) = 992 vs 3 (496 - 435) = 183
        assert_eq!(r.values[0], int(992));
        assert_eq!(r.values[2], int(183));
        assert_eq!(r.argmax, 0);
        let r = g_argmax(10, 2, 3, 0).unwrap();
        assert_eq!(r.argmax, 0);
        assert!(r.at_endpoint);
    }

    #[test]
    fn u_examples() {
        for (n, k, p) in [(10, 1, 3), (20, 3, 5), (7, 2, 1)] {
            assert_eq!(u_eval(&-int(p), n, k, p).unwrap(), -Rational::one());
        }
        // k = 1: zero at (n - p) / 2
        let (n, p) = (11u64, 4u64);
        let root = ratio(n as i64 - p as i64, 2);
        assert!(u_eval(&root, n, 1, p).unwrap().is_zero());
        let (lo, hi) = u_zero(n, 1, p).unwrap();
        assert!(lo <= root && root <= hi);
        assert!(&hi - &lo <= ratio(1, 1 << 20));
        let (lo, hi) = u_zero(30, 3, 2).unwrap();
        assert!(u_eval(&lo, 30, 3, 2).unwrap() <= Rational::zero());
        assert!(u_eval(&hi, 30, 3, 2).unwrap() >= Rational::zero());
        assert!(u_eval(&int(10), 10, 1, 1).is_err());
        assert!(u_eval(&int(-2), 10, 1, 1).is_err());
    }

    #[test]
    fn u_is_increasing_on_samples() {
        for (n, k, p) in [(12u64, 1u64, 3u64), (20, 2, 1), (30, 3, 7)] {
            let lo = -(p as i64);
            let hi = (n - k) as i64;
            let xs: Vec<Rational> = (0..=40).map(|t| ratio(lo * 40 + (hi - lo) * t, 40)).collect();
            let us: Vec<Rational> = xs.iter().map(|x| u_eval(x, n, k, p).unwrap()).collect();
            assert!(us.windows(2).all(|w| w[0] < w[1]), "n={n} k={k} p={p}");
        }
    }

    #[test]
    fn thm2_examples() {
        assert_eq!(v(thm2_value(8, 1, 5, 2).unwrap()), int(16));
        let r = thm2_value(8, 1, 9, 2).unwrap();
        assert_eq!(r.value, int(22));
        assert_eq!(r.construction.as_deref(), Some("cover"));
        assert!(!r.range_violated());
        assert!(thm2_value(7, 1, 9, 2).unwrap().range_violated());
    }

    #[test]
    fn thm3_examples() {
        let w = WeightVector::from_integers(&[2, 1]).unwrap();
        assert_eq!(v(thm3_value(2, &w).unwrap()), int(9));
        assert_eq!(v(thm3_value(2, &w).unwrap()), v(hilton_bound(4, 2, 3).unwrap()));
        let w = WeightVector::new(vec![ratio(7, 3), ratio(1, 2)]).unwrap();
        assert_eq!(v(thm3_value(1, &w).unwrap()), ratio(17, 6));
        for (k, s) in [(1u64, 1u64), (2, 3), (3, 2), (4, 4)] {
            let lhs = c((s + 1) * k - 1, k).unwrap();
            let rhs = ratio(s as i64, s as i64 + 1) * c((s + 1) * k, k).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn d_vec_examples() {
        for (p, s) in [(1u64, 1usize), (3, 2), (5, 4)] {
            let w = WeightVector::leading(p, s).unwrap();
            assert_eq!(d_vec(&w).unwrap(), int(p + s as u64));
        }
        let w = WeightVector::from_integers(&[4, 2, 1]).unwrap();
        assert_eq!(d_vec(&w).unwrap(), ratio(14, 3));
        assert_eq!(thm4_threshold(1, &w).unwrap(), 5);
        assert_eq!(d_vec(&WeightVector::uniform(1)).unwrap(), int(2));
        assert!(d_vec(&WeightVector::uniform(0)).is_err());
        let r = thm4_value(6, 2, &WeightVector::from_integers(&[2, 1]).unwrap()).unwrap();
        assert_eq!(r.value, int(15));
        assert!(!r.range_violated());
        assert!(thm4_value(5, 2, &WeightVector::from_integers(&[2, 1]).unwrap())
            .unwrap()
            .range_violated());
    }

    #[test]
    fn gb_emc_examples() {
        assert_eq!(v(gb_emc_bound(5, 2, 1).unwrap()), int(4));
        assert_eq!(v(gb_emc_bound(6, 2, 2).unwrap()), int(10));
        assert_eq!(v(gb_emc_bound(6, 2, 0).unwrap()), int(0));
    }

    #[test]
    fn bde_examples() {
        assert_eq!(bde_check(10, 3, 2).unwrap(), (true, true));
        // the exact values of the second chain
        let ratio_v = c(8, 3).unwrap() / c(10, 3).unwrap();
        assert_eq!(ratio_v, ratio(7, 15));
        assert_eq!(rational::pow(&ratio(5, 7), 3), ratio(125, 343));
        assert_eq!(bde_check(10, 3, 0).unwrap(), (true, true));
        assert!(bde_check(5, 5, 0).is_err());
        assert!(bde_check(5, 0, 0).is_err());
    }

    #[test]
    fn conjecture_values() {
        assert_eq!(v(conj1_value(4, 2, 2, 1).unwrap()), int(9));
        assert_eq!(v(conj2_bound(6, 2, 1).unwrap()), int(5));
        for (k, s, p) in [(2u64, 1u64, 3u64), (3, 2, 1), (1, 4, 2)] {
            let w = WeightVector::leading(p, s as usize).unwrap();
            let mid = int(p + s) * c((s + 1) * k - 1, k).unwrap();
            assert_eq!(thm3_value(k, &w).unwrap().value, mid);
        }
    }
}
