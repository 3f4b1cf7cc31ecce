//! Bessel functions of the first kind, integer order.
//!
//! `J_n(x)` is evaluated by its power series for `x <= 12` and by Miller's
//! downward recurrence, normalized with `J_0 + 2 * sum J_2k = 1`, above that.
//! The series branch is accumulated in double-double arithmetic: at `x = 12`
//! the largest term is around 4e3 and plain `f64` summation would leave
//! cancellation error close to 1e-12.

use thiserror::Error;

/// Largest accepted argument.
pub const MAX_ARGUMENT: f64 = 1000.0;

/// Arguments at or below this use the power series.
pub const SERIES_LIMIT: f64 = 12.0;

/// Default bound on the sideband energy left out by truncation.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BesselError {
    #[error("negative Bessel order {0}; use J(-n) = (-1)^n J(n)")]
    NegativeOrder(i32),
    #[error("Bessel argument {0} outside [0, {MAX_ARGUMENT}]")]
    ArgumentOutOfRange(f64),
    #[error("tail tolerance {0} outside (0, 1)")]
    InvalidTolerance(f64),
}

/// `J_order(x)` for `order >= 0` and `0 <= x <= 1000`.
pub fn bessel_j(order: i32, x: f64) -> Result<f64, BesselError> {
    if order < 0 {
        return Err(BesselError::NegativeOrder(order));
    }
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(BesselError::ArgumentOutOfRange(x));
    }
    let n = order as u32;
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if x <= SERIES_LIMIT {
        Ok(series(n, x))
    } else {
        Ok(miller(n, x))
    }
}

fn series(n: u32, x: f64) -> f64 {
    let half = x * 0.5;
    // (x/2)^n / n!
    let mut term = Dd::from(1.0);
    for i in 1..=n {
        term = term.mul_f64(half).div_f64(f64::from(i));
    }
    let neg_sq = Dd::two_prod(half, half).neg();
    let mut sum = term;
    let mut k = 1u32;
    loop {
        let denom = f64::from(k) * f64::from(k + n);
        term = term.mul(neg_sq).div_f64(denom);
        sum = sum.add(term);
        let t = term.hi.abs();
        if f64::from(k) > half && (t == 0.0 || t < 1e-20 * sum.hi.abs() || t < 1e-40) {
            break;
        }
        k += 1;
        if k > 1000 {
            break;
        }
    }
    sum.hi + sum.lo
}

fn miller(n: u32, x: f64) -> f64 {
    const RESCALE_ABOVE: f64 = 1e250;
    const RESCALE_BY: f64 = 1e-250;

    let big = f64::from(n).max(x.ceil());
    let mut start = (big + 30.0 + (60.0 * big).sqrt()).ceil() as u32;
    if start % 2 == 1 {
        start += 1;
    }
    let two_over_x = 2.0 / x;
    let mut above = 0.0_f64; // j_{k+1}
    let mut current = 1e-300_f64; // j_k
    let mut wanted = if start == n { current } else { 0.0 };
    let mut even_sum = 0.0_f64; // 2 * sum of j_2k for k >= 1
    if start.is_multiple_of(2) && start > 0 {
        even_sum += 2.0 * current;
    }
    let mut k = start;
    while k > 0 {
        let below = f64::from(k) * two_over_x * current - above;
        above = current;
        current = below;
        k -= 1;
        if k == n {
            wanted = current;
        }
        if k > 0 && k.is_multiple_of(2) {
            even_sum += 2.0 * current;
        }
        if current.abs() > RESCALE_ABOVE {
            current *= RESCALE_BY;
            above *= RESCALE_BY;
            wanted *= RESCALE_BY;
            even_sum *= RESCALE_BY;
        }
    }
    // `current` now holds the unnormalized j_0.
    wanted / (current + even_sum)
}

/// `J_n(I)` for `n = 0..=N`, truncated by an energy tail bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselCoefficients {
    modulation_index: f64,
    values: Vec<f64>,
    energy_order: usize,
}

impl BesselCoefficients {
    pub fn modulation_index(&self) -> f64 {
        self.modulation_index
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    /// Smallest order at which the energy bound alone is met. Never above
    /// [`max_order`](Self::max_order).
    pub fn energy_order(&self) -> usize {
        self.energy_order
    }

    /// Nonnegative orders `J_0 ..= J_N`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Two-sided lookup using `J_{-n} = (-1)^n J_n`. `None` beyond `N`.
    pub fn get(&self, order: i64) -> Option<f64> {
        let v = *self.values.get(order.unsigned_abs() as usize)?;
        Some(if order < 0 && order % 2 != 0 { -v } else { v })
    }

    /// `sum_{n=-N}^{N} J_n(I)^2`.
    pub fn energy(&self) -> f64 {
        two_sided_energy(&self.values)
    }
}

fn two_sided_energy(values: &[f64]) -> f64 {
    // Smallest terms first.
    let tail: f64 = values.iter().skip(1).rev().map(|v| v * v).sum();
    values[0] * values[0] + 2.0 * tail
}

/// Chooses the smallest `N` with `1 - sum_{|n|<=N} J_n(I)^2 < tail_tolerance`
/// and every omitted coefficient below `tail_tolerance` in magnitude.
///
/// Past `n > I`, `|J_n(I)|` falls monotonically and faster than
/// geometrically, so the omitted amplitudes sum to about `|J_{N+1}|`.
/// If rounding keeps the computed deficit from ever dropping below the
/// tolerance, the row stops once `J_n(I)^2` has fallen below `1e-300`.
pub fn bessel_row(modulation_index: f64, tail_tolerance: f64) -> Result<BesselCoefficients, BesselError> {
    if !(tail_tolerance > 0.0 && tail_tolerance < 1.0) {
        return Err(BesselError::InvalidTolerance(tail_tolerance));
    }
    let mut values = vec![bessel_j(0, modulation_index)?];
    let mut order = 0i32;
    let mut energy_order = None;
    loop {
        let last = *values.last().unwrap();
        if f64::from(order) > modulation_index && last * last < 1e-300 {
            break;
        }
        let next = bessel_j(order + 1, modulation_index)?;
        let energy_met = 1.0 - two_sided_energy(&values) < tail_tolerance;
        if energy_met && energy_order.is_none() {
            energy_order = Some(values.len() - 1);
        }
        if energy_met && f64::from(order + 1) > modulation_index && next.abs() < tail_tolerance {
            break;
        }
        order += 1;
        values.push(next);
    }
    let energy_order = energy_order.unwrap_or(values.len() - 1);
    Ok(BesselCoefficients { modulation_index, values, energy_order })
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl From<f64> for Dd {
    fn from(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }
}

impl Dd {
    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        Dd { hi: s, lo: (a - (s - bb)) + (b - bb) }
    }

    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd { hi: p, lo: a.mul_add(b, -p) }
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        Dd::quick_two_sum(s.hi, s.lo + self.lo + other.lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::two_prod(self.hi, other.hi);
        Dd::quick_two_sum(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }

    fn mul_f64(self, b: f64) -> Dd {
        let p = Dd::two_prod(self.hi, b);
        Dd::quick_two_sum(p.hi, p.lo + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let p = Dd::two_prod(q1, b);
        let r = (self.hi - p.hi - p.lo) + self.lo;
        Dd::quick_two_sum(q1, r / b)
    }
}
