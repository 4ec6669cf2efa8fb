//! Integer-order Bessel functions of the first kind.
//!
//! Every value `J_n(x)` is produced by a deterministic procedure that depends
//! on `(n, x)` only, so a value read from a [`BesselTable`] is bit-identical
//! to the one returned by [`bessel_int`].

/// Largest |x| evaluated by the ascending power series.
pub const SERIES_MAX_ARG: f64 = 4.0;

/// Width coefficient of the Bessel turnover region, in units of |x|^(1/3).
pub const TURNOVER_C: f64 = 10.0;

/// Safety floor added to every order window.
pub const WINDOW_FLOOR: f64 = 12.0;

/// Extra orders between the escalated window and the start of the backward
/// recurrence.
const MILLER_MARGIN: i64 = 40;

/// Half-width of the order window `|n| ≤ W` outside which `J_n(x)` is
/// negligible. `level = 0` is the base window, each further level widens it
/// by another turnover width.
pub fn order_window(x: f64, level: u32) -> i64 {
    let a = x.abs();
    let margin = TURNOVER_C * a.cbrt() + WINDOW_FLOOR;
    (a + margin * (1.0 + level as f64)).ceil() as i64
}

fn miller_start(xa: f64) -> i64 {
    order_window(xa, 1) + MILLER_MARGIN
}

/// `J_n(x)` for integer `n` and real `x`.
pub fn bessel_int(n: i64, x: f64) -> f64 {
    let na = n.unsigned_abs() as i64;
    let xa = x.abs();
    if xa == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let base = if xa <= SERIES_MAX_ARG {
        series_nonneg(na, xa)
    } else {
        let start = miller_start(xa);
        if na <= start {
            miller(xa, start)[na as usize]
        } else {
            miller(xa, na + MILLER_MARGIN)[na as usize]
        }
    };
    signed(base, n, x)
}

/// Applies the reflection signs; zeros stay positive.
fn signed(base: f64, n: i64, x: f64) -> f64 {
    if base == 0.0 {
        0.0
    } else {
        sign_factor(n, x) * base
    }
}

/// `(−1)^n` for each of a negative order and a negative argument.
fn sign_factor(n: i64, x: f64) -> f64 {
    let flip = (n < 0) != (x < 0.0);
    if flip && n.rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Ascending series for `n ≥ 0`, `x > 0`.
fn series_nonneg(n: i64, x: f64) -> f64 {
    let h = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=n {
        term *= h / i as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let q = -h * h;
    let mut sum = term;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + n as f64));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k * (k + n as f64) > h * h {
            break;
        }
        if k > 500.0 {
            break;
        }
        k += 1.0;
    }
    sum
}

/// Backward recurrence from order `start`, normalized with
/// `J_0 + 2 Σ_k J_2k = 1`. Returns `J_0(x) ..= J_start(x)` for `x > 0`.
fn miller(x: f64, start: i64) -> Vec<f64> {
    let start = start as usize;
    let mut v = vec![0.0; start + 2];
    v[start] = 1.0;
    let two_over_x = 2.0 / x;
    for k in (1..=start).rev() {
        v[k - 1] = (k as f64) * two_over_x * v[k] - v[k + 1];
        if v[k - 1].abs() > 1e200 {
            for w in &mut v[k - 1..=start] {
                *w *= 1e-200;
            }
        }
    }
    let mut norm = v[0];
    for k in (2..=start).step_by(2) {
        norm += 2.0 * v[k];
    }
    v.truncate(start + 1);
    for w in &mut v {
        *w /= norm;
    }
    v
}

/// Upper bound on `Σ_{|n| > cut} |J_n(x)|`.
///
/// For `n > |x|` the ratio `J_{n+1}/J_n` lies in `(0, |x| / (2(n+1) − |x|))`,
/// so the tail is dominated by a geometric series. Returns `+∞` when the
/// cut is not past the turning point.
pub fn tail_bound(x: f64, cut: i64) -> f64 {
    let a = x.abs();
    if a == 0.0 {
        return if cut >= 0 { 0.0 } else { f64::INFINITY };
    }
    let n1 = cut + 1;
    if (n1 as f64) <= a {
        return f64::INFINITY;
    }
    let rho = a / (2.0 * (n1 + 1) as f64 - a);
    if rho >= 1.0 {
        return f64::INFINITY;
    }
    2.0 * bessel_int(n1, a).abs() / (1.0 - rho)
}

/// `J_n(x)` for `|n| ≤ half`; orders outside the table read as zero.
#[derive(Debug, Clone)]
pub struct BesselTable {
    x: f64,
    half: i64,
    vals: Vec<f64>,
}

impl BesselTable {
    pub fn new(x: f64, half: i64) -> Self {
        let half = half.max(0);
        let xa = x.abs();
        let base: Vec<f64> = if xa == 0.0 {
            (0..=half).map(|n| if n == 0 { 1.0 } else { 0.0 }).collect()
        } else if xa <= SERIES_MAX_ARG {
            (0..=half).map(|n| series_nonneg(n, xa)).collect()
        } else {
            let start = miller_start(xa);
            let run = miller(xa, start);
            (0..=half).map(|n| if n <= start { run[n as usize] } else { bessel_int(n, xa) }).collect()
        };
        let vals = (-half..=half).map(|n| signed(base[n.unsigned_abs() as usize], n, x)).collect();
        Self { x, half, vals }
    }

    pub fn arg(&self) -> f64 {
        self.x
    }

    pub fn half_width(&self) -> i64 {
        self.half
    }

    #[inline]
    pub fn get(&self, n: i64) -> f64 {
        if n.abs() > self.half {
            0.0
        } else {
            self.vals[(n + self.half) as usize]
        }
    }

    /// Bound on the mass of orders outside the table.
    pub fn tail(&self) -> f64 {
        tail_bound(self.x, self.half)
    }

    /// Bound on `Σ_n |J_n(x)|` over all orders.
    pub fn abs_sum(&self) -> f64 {
        self.vals.iter().map(|v| v.abs()).sum::<f64>() + self.tail()
    }

    /// Nonzero entries as `(order, value)` pairs.
    pub(crate) fn nonzero(&self) -> Vec<(i64, f64)> {
        (-self.half..=self.half).zip(self.vals.iter().copied()).filter(|&(_, v)| v != 0.0).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    // Reference values from an arbitrary-precision evaluation (50 digits).
    #[allow(clippy::excessive_precision)]
    const REFERENCE: &[(i64, f64, f64)] = &[
        (0, 1.0, 0.765_197_686_557_966_55),
        (1, 2.0, 0.576_724_807_756_873_39),
        (5, 3.5, 0.080_441_986_647_991_782),
        (0, 11.9, 0.025_049_441_699_589_645),
        (0, 12.0, 0.047_689_310_796_833_537),
        (1, 12.0, -0.223_447_104_490_627_61),
        (3, 12.5, 0.110_008_136_314_349_27),
        (10, 20.0, 0.186_482_558_023_945_08),
        (40, 30.0, 3.612_023_608_896_585_3e-4),
        (100, 100.0, 0.096_366_673_295_861_56),
        (2, 75.3, -0.060_089_280_559_797_469),
        (25, 1.0, 1.902_951_751_891_382_1e-33),
    ];

    #[test]
    fn matches_reference_values() {
        for &(n, x, want) in REFERENCE {
            let got = bessel_int(n, x);
            assert!((got - want).abs() < 1e-12, "J_{n}({x}) = {got}, want {want}");
        }
    }

    /// Independent oracle: `J_n(x) = (1/2π) ∫_0^2π cos(nθ − x sin θ) dθ`,
    /// evaluated with the periodic trapezoid rule.
    fn integral_oracle(n: i64, x: f64) -> f64 {
        let m = 4096;
        let h = 2.0 * PI / m as f64;
        (0..m)
            .map(|k| {
                let t = k as f64 * h;
                (n as f64 * t - x * t.sin()).cos()
            })
            .sum::<f64>()
            / m as f64
    }

    #[test]
    fn agrees_with_integral_representation() {
        for &x in &[0.3, 2.0, 3.99, 4.01, 7.7, 11.99, 12.01, 18.0, 45.0, -9.0, -60.0] {
            for n in -15..=15 {
                let got = bessel_int(n, x);
                let want = integral_oracle(n, x);
                assert!((got - want).abs() < 1e-12, "J_{n}({x}): {got} vs {want}");
            }
        }
    }

    #[test]
    fn trivial_values() {
        assert_eq!(bessel_int(0, 0.0), 1.0);
        assert_eq!(bessel_int(3, 0.0), 0.0);
        assert_eq!(bessel_int(-3, 0.0), 0.0);
    }

    #[test]
    fn reflection_symmetries() {
        for &x in &[0.7, 5.0, 13.0, 40.0] {
            for n in 0..12 {
                let s = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(bessel_int(-n, x), s * bessel_int(n, x));
                assert_eq!(bessel_int(n, -x), s * bessel_int(n, x));
            }
        }
    }

    #[test]
    fn table_is_bitwise_consistent() {
        for &x in &[0.0, 1.5, -3.0, 4.0, 4.5, 12.0, -44.0, 200.0] {
            let w = order_window(x, 1);
            let t = BesselTable::new(x, w + 50);
            for n in -(w + 50)..=(w + 50) {
                assert_eq!(t.get(n).to_bits(), bessel_int(n, x).to_bits(), "n={n} x={x}");
            }
            assert_eq!(t.get(w + 51), 0.0);
        }
    }

    #[test]
    fn parseval_and_tail() {
        for &x in &[0.5, 3.0, 12.0, 50.0, 300.0] {
            let w = order_window(x, 0);
            let t = BesselTable::new(x, w);
            let s: f64 = (-w..=w).map(|n| t.get(n).powi(2)).sum();
            assert!((s - 1.0).abs() < 1e-13, "x={x}: {s}");
            assert!(t.tail() < 1e-13, "x={x}: tail {}", t.tail());
        }
    }

    #[test]
    fn tail_bound_dominates_actual_tail() {
        for &x in &[1.0, 8.0, 25.0] {
            for cut in [(x as i64) + 1, (x as i64) + 4, (x as i64) + 10] {
                let actual: f64 = (cut + 1..cut + 200).map(|n| 2.0 * bessel_int(n, x).abs()).sum();
                let bound = tail_bound(x, cut);
                assert!(bound >= actual, "x={x} cut={cut}: {bound} < {actual}");
                assert!(bound <= 4.0 * actual + 1e-300);
            }
        }
        assert_eq!(tail_bound(10.0, 5), f64::INFINITY);
    }
}
