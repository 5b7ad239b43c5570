//! Globally adaptive 10-point Gauss / 21-point Kronrod quadrature for
//! complex-valued functions of a real parameter.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::C64;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Nodes and weights of the 21-point Kronrod rule on `[−1, 1]`.
pub(crate) fn kronrod21() -> ([f64; 21], [f64; 21]) {
    let mut x = [0.0; 21];
    let mut w = [0.0; 21];
    for k in 0..10 {
        x[k] = -XGK[k];
        x[20 - k] = XGK[k];
        w[k] = WGK[k];
        w[20 - k] = WGK[k];
    }
    w[10] = WGK[10];
    (x, w)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Panel {
    pub a: f64,
    pub b: f64,
    pub value: C64,
    pub error: f64,
    pub resabs: f64,
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

/// One 21-point Kronrod panel with the QUADPACK error heuristic applied to
/// the modulus of the complex Gauss/Kronrod difference.
pub(crate) fn qk21<F: Fn(f64) -> C64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let habs = half.abs();

    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_g = C64::new(0.0, 0.0);
    let mut resabs = WGK[10] * fc.norm();
    let mut fv1 = [C64::new(0.0, 0.0); 10];
    let mut fv2 = [C64::new(0.0, 0.0); 10];

    for j in 0..5 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_g += (f1 + f2) * WG[j];
        res_k += (f1 + f2) * WGK[jtw];
        resabs += WGK[jtw] * (f1.norm() + f2.norm());
    }
    for j in 0..5 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_k += (f1 + f2) * WGK[jtwm1];
        resabs += WGK[jtwm1] * (f1.norm() + f2.norm());
    }

    let mean = res_k * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).norm() + (fv2[j] - mean).norm());
    }

    let value = res_k * half;
    let resabs = resabs * habs;
    let resasc = resasc * habs;
    let mut error = ((res_k - res_g) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    if !value.re.is_finite() || !value.im.is_finite() {
        error = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value,
        error,
        resabs,
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Adaptive {
    pub value: C64,
    pub error: f64,
    pub evaluations: usize,
    pub converged: bool,
    /// `max(abs, rel·|value|, roundoff floor)` at termination.
    pub target: f64,
}

pub(crate) const EVALS_PER_PANEL: usize = 21;

/// Integrates `f` over the partition given by `breaks` (sorted, at least two
/// points) until the summed error estimate meets `max(abs, rel·|I|)`.
pub(crate) fn adaptive<F: Fn(f64) -> C64>(
    f: &F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Adaptive {
    debug_assert!(breaks.len() >= 2);
    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(qk21(f, w[0], w[1]));
            evaluations += EVALS_PER_PANEL;
        }
    }
    let mut frozen = (C64::new(0.0, 0.0), 0.0, 0.0);
    let totals = |heap: &BinaryHeap<Panel>, frozen: (C64, f64, f64)| {
        heap.iter().fold(frozen, |(v, e, r), p| (v + p.value, e + p.error, r + p.resabs))
    };
    let (mut value, mut error, mut resabs) = totals(&heap, frozen);
    let mut since_resum = 0;

    loop {
        let target = abs_tol.max(rel_tol * value.norm()).max(100.0 * f64::EPSILON * resabs);
        if error <= target {
            // Running sums drift; confirm with a fresh sum before accepting.
            let fresh = totals(&heap, frozen);
            (value, error, resabs) = fresh;
            let target = abs_tol.max(rel_tol * value.norm()).max(100.0 * f64::EPSILON * resabs);
            if error <= target {
                return Adaptive {
                    value,
                    error,
                    evaluations,
                    converged: error.is_finite(),
                    target,
                };
            }
        }
        if evaluations + 2 * EVALS_PER_PANEL > max_evals {
            return Adaptive { value, error, evaluations, converged: false, target };
        }
        let Some(worst) = heap.pop() else {
            return Adaptive { value, error, evaluations, converged: error <= target, target };
        };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b || (worst.b - worst.a) <= 1e-15 * worst.b.abs().max(1.0) {
            // Interval cannot be refined further in double precision.
            frozen = (frozen.0 + worst.value, frozen.1 + worst.error, frozen.2 + worst.resabs);
            continue;
        }
        let left = qk21(f, worst.a, mid);
        let right = qk21(f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        resabs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
        evaluations += 2 * EVALS_PER_PANEL;
        since_resum += 1;
        if since_resum >= 512 {
            since_resum = 0;
            (value, error, resabs) = totals(&heap, frozen);
        }
    }
}
