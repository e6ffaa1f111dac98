//! Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands,
//! and Wynn's epsilon algorithm for accelerating sequences of partial sums.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Estimate {
    pub value: Complex64,
    /// Truncation error estimate.
    pub error: f64,
    /// Accumulated roundoff floor, `50ε·∫|f|`.
    pub roundoff: f64,
    pub converged: bool,
}

/// One G7/K15 panel: Kronrod value, the QUADPACK truncation estimate (`|K - G|`
/// rescaled by the panel's mean absolute deviation) and a roundoff floor
/// `2ε·∫|f|`.
pub fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut values = [Complex64::new(0.0, 0.0); 15];
    values[7] = f(center);
    for j in 0..7 {
        let dx = half * XGK[j];
        values[j] = f(center - dx);
        values[14 - j] = f(center + dx);
    }
    let weight = |idx: usize| WGK[if idx <= 7 { idx } else { 14 - idx }];
    let mut kronrod = Complex64::new(0.0, 0.0);
    let mut gauss = values[7] * WG[3];
    for (idx, v) in values.iter().enumerate() {
        kronrod += v * weight(idx);
    }
    for j in (1..7).step_by(2) {
        gauss += (values[j] + values[14 - j]) * WG[j / 2];
    }
    let mean = kronrod * 0.5;
    let width = half.abs();
    let resasc = values.iter().enumerate().map(|(idx, v)| weight(idx) * (v - mean).norm()).sum::<f64>() * width;
    let resabs = values.iter().enumerate().map(|(idx, v)| weight(idx) * v.norm()).sum::<f64>() * width;
    let mut err = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    (kronrod * half, err, ROUNDOFF_ULPS * f64::EPSILON * resabs)
}

const ROUNDOFF_ULPS: f64 = 2.0;

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    roundoff: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Integrates over consecutive `breaks`, bisecting the worst panel until the
/// summed truncation estimate drops below `max(abs_tol, rel_tol·|I|)`. Panels
/// whose truncation estimate is already below their roundoff floor are not
/// split further, and count toward `roundoff` instead of `error`.
pub fn integrate<F: Fn(f64) -> Complex64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Estimate {
    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    let mut settled: Vec<Panel> = Vec::new();
    let mut unresolved: Vec<Panel> = Vec::new();
    let mut total = Complex64::new(0.0, 0.0);
    // truncation error of the panels still eligible for bisection
    let mut live_error = 0.0;
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, err, roundoff) = gk15(f, w[0], w[1]);
        total += value;
        live_error += place(Panel { a: w[0], b: w[1], value, error: err, roundoff }, &mut heap, &mut settled);
    }
    let panels = |h: &BinaryHeap<Panel>, s: &Vec<Panel>, u: &Vec<Panel>| h.len() + s.len() + u.len();
    while live_error > abs_tol.max(rel_tol * total.norm()) && panels(&heap, &settled, &unresolved) < max_panels {
        let Some(worst) = heap.pop() else { break };
        live_error -= worst.error;
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            unresolved.push(worst);
            continue;
        }
        let (lv, le, lr) = gk15(f, worst.a, mid);
        let (rv, re, rr) = gk15(f, mid, worst.b);
        total += lv + rv - worst.value;
        live_error += place(Panel { a: worst.a, b: mid, value: lv, error: le, roundoff: lr }, &mut heap, &mut settled);
        live_error += place(Panel { a: mid, b: worst.b, value: rv, error: re, roundoff: rr }, &mut heap, &mut settled);
    }
    // re-sum in k order with compensation to shed the cancellation picked up
    // by the running updates; a settled panel's truncation estimate is below
    // its roundoff floor, so it is booked as roundoff
    let mut all: Vec<(Panel, bool)> = heap
        .into_iter()
        .chain(unresolved)
        .map(|p| (p, true))
        .chain(settled.into_iter().map(|p| (p, false)))
        .collect();
    all.sort_by(|x, y| x.0.a.total_cmp(&y.0.a));
    let mut sum = CompensatedSum::default();
    let (mut error, mut roundoff) = (0.0, 0.0);
    for (p, live) in &all {
        sum.add(p.value);
        roundoff += p.roundoff;
        if *live {
            error += p.error;
        }
    }
    let value = sum.value();
    let converged = error <= abs_tol.max(rel_tol * value.norm());
    Estimate { value, error, roundoff, converged }
}

/// Neumaier summation of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    carry: Complex64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: Complex64) {
        let (re, cr) = two_sum(self.sum.re, x.re);
        let (im, ci) = two_sum(self.sum.im, x.im);
        self.sum = Complex64::new(re, im);
        self.carry += Complex64::new(cr, ci);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Queues a panel for bisection unless it is already at roundoff level, and
/// returns the truncation error it adds to the live total.
fn place(panel: Panel, heap: &mut BinaryHeap<Panel>, settled: &mut Vec<Panel>) -> f64 {
    if panel.error <= panel.roundoff {
        settled.push(panel);
        0.0
    } else {
        let err = panel.error;
        heap.push(panel);
        err
    }
}

/// Wynn's epsilon extrapolation of the limit of `sums`, with the change
/// between the two best diagonal entries as error estimate.
pub fn wynn_epsilon(sums: &[Complex64]) -> (Complex64, f64) {
    let n = sums.len();
    if n < 3 {
        let last = sums.last().copied().unwrap_or_default();
        let err = if n == 2 { (sums[1] - sums[0]).norm() } else { f64::INFINITY };
        return (last, err);
    }
    let mut prev = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut curr: Vec<Complex64> = sums.to_vec();
    let mut best = (sums[n - 1], (sums[n - 1] - sums[n - 2]).norm());
    let mut col = 0;
    while curr.len() > 1 {
        let mut next = Vec::with_capacity(curr.len() - 1);
        for j in 0..curr.len() - 1 {
            let diff = curr[j + 1] - curr[j];
            if diff.norm() == 0.0 {
                return best;
            }
            next.push(prev[j + 1] + diff.inv());
        }
        col += 1;
        prev = curr;
        curr = next;
        if col % 2 == 0 && curr.len() >= 2 {
            let k = curr.len();
            let err = (curr[k - 1] - curr[k - 2]).norm();
            if err < best.1 {
                best = (curr[k - 1], err);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let f = |x: f64| Complex64::new(x.powi(20), -x);
        let (v, _, _) = gk15(&f, 0.0, 1.0);
        assert!((v - Complex64::new(1.0 / 21.0, -0.5)).norm() < 1e-10);
    }

    #[test]
    fn oscillatory_adaptive() {
        let f = |x: f64| Complex64::new(0.0, 50.0 * x).exp();
        let est = integrate(&f, &[0.0, 3.0], 1e-14, 1e-13, 10_000);
        let want = (Complex64::new(0.0, 150.0).exp() - 1.0) / Complex64::new(0.0, 50.0);
        assert!(est.converged);
        assert!((est.value - want).norm() < 1e-13);
    }

    #[test]
    fn epsilon_accelerates_alternating_series() {
        // ln 2 = 1 - 1/2 + 1/3 - ...
        let mut sums = Vec::new();
        let mut s = 0.0;
        for k in 1..=14 {
            s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
            sums.push(Complex64::new(s, 0.0));
        }
        let (v, err) = wynn_epsilon(&sums);
        assert!((v.re - std::f64::consts::LN_2).abs() < 1e-9);
        assert!(err < 1e-8);
    }
}
