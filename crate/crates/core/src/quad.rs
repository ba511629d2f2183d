//! Adaptive Gauss–Kronrod quadrature for small vector-valued integrands.
//!
//! A fixed 15- or 21-point Kronrod rule is applied per panel, with the
//! embedded Gauss rule providing the error estimate, and the panel whose
//! scaled error is worst is bisected until every component of the integrand
//! meets the relative target. All components of a vector integrand share the
//! node set, so ratios and differences of the returned values carry strongly
//! correlated quadrature errors.
//!
//! Node and weight tables are the QUADPACK values.
#![allow(clippy::excessive_precision)]

/// Fixed rule applied on each panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rule {
    GaussKronrod15,
    GaussKronrod21,
}

/// Converged integral with the per-component error estimate.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadOutcome<const N: usize> {
    pub value: [f64; N],
    #[allow(dead_code)] // diagnostic, read by tests
    pub panels: usize,
}

/// The subdivision budget was exhausted (or the integrand is not finite)
/// before the relative target was met.
#[derive(Debug, Clone, Copy)]
pub(crate) struct QuadFailure {
    pub achieved_rel: f64,
    pub target_rel: f64,
    pub panels: usize,
}

const GK15_XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const GK15_WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const GK15_WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const GK21_XGK: [f64; 11] = [
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
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const GK21_WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const GK21_WGK: [f64; 11] = [
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

#[derive(Debug, Clone, Copy)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
}

/// QUADPACK error rescaling, with the noise floor lowered to 2ε·resabs so
/// that relative targets down to 1e-15 stay certifiable.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut e = err.abs();
    if resasc != 0.0 && e != 0.0 {
        let scale = (200.0 * e / resasc).powf(1.5);
        e = if scale < 1.0 { resasc * scale } else { resasc };
    }
    let floor = 2.0 * f64::EPSILON * resabs;
    if floor > e {
        e = floor;
    }
    e
}

fn kronrod_panel<const N: usize, F>(f: &F, a: f64, b: f64, rule: Rule) -> Panel<N>
where
    F: Fn(f64) -> [f64; N],
{
    let (xgk, wg, wgk): (&[f64], &[f64], &[f64]) = match rule {
        Rule::GaussKronrod15 => (&GK15_XGK, &GK15_WG, &GK15_WGK),
        Rule::GaussKronrod21 => (&GK21_XGK, &GK21_WG, &GK21_WGK),
    };
    let n = xgk.len();
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut res_k = [0.0; N];
    let mut res_g = [0.0; N];
    let mut res_abs = [0.0; N];
    for i in 0..N {
        res_k[i] = fc[i] * wgk[n - 1];
        res_abs[i] = res_k[i].abs();
        // for even node counts the panel center is also a Gauss node
        if n % 2 == 0 {
            res_g[i] = fc[i] * wg[n / 2 - 1];
        }
    }

    let mut f1 = [[0.0; N]; 10];
    let mut f2 = [[0.0; N]; 10];
    for j in 0..n - 1 {
        let x = half * xgk[j];
        let v1 = f(center - x);
        let v2 = f(center + x);
        f1[j] = v1;
        f2[j] = v2;
        for i in 0..N {
            let sum = v1[i] + v2[i];
            res_k[i] += wgk[j] * sum;
            res_abs[i] += wgk[j] * (v1[i].abs() + v2[i].abs());
            // odd Kronrod indices are the embedded Gauss nodes
            if j % 2 == 1 {
                res_g[i] += wg[j / 2] * sum;
            }
        }
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for i in 0..N {
        let mean = res_k[i] * 0.5;
        let mut res_asc = wgk[n - 1] * (fc[i] - mean).abs();
        for j in 0..n - 1 {
            res_asc += wgk[j] * ((f1[j][i] - mean).abs() + (f2[j][i] - mean).abs());
        }
        let raw = ((res_k[i] - res_g[i]) * half).abs();
        value[i] = res_k[i] * half;
        error[i] = rescale_error(raw, res_abs[i] * half.abs(), res_asc * half.abs());
    }
    Panel { a, b, value, error }
}

/// Integrate `f` over `[a, b]` until every component's summed error estimate
/// is below `rel_target` times that component's integral.
pub(crate) fn integrate<const N: usize, F>(
    f: &F,
    a: f64,
    b: f64,
    rel_target: f64,
    rule: Rule,
    max_panels: usize,
) -> Result<QuadOutcome<N>, QuadFailure>
where
    F: Fn(f64) -> [f64; N],
{
    let mut panels: Vec<Panel<N>> = vec![kronrod_panel(f, a, b, rule)];
    loop {
        // compensated totals so panel summation does not eat the target
        let mut total = [0.0; N];
        let mut comp = [0.0; N];
        let mut err = [0.0; N];
        for p in &panels {
            for i in 0..N {
                let y = p.value[i] - comp[i];
                let t = total[i] + y;
                comp[i] = (t - total[i]) - y;
                total[i] = t;
                err[i] += p.error[i];
            }
        }

        if total.iter().any(|v| !v.is_finite()) {
            return Err(QuadFailure {
                achieved_rel: f64::INFINITY,
                target_rel: rel_target,
                panels: panels.len(),
            });
        }

        let mut worst_rel = 0.0f64;
        for i in 0..N {
            let scale = total[i].abs().max(f64::MIN_POSITIVE);
            worst_rel = worst_rel.max(err[i] / scale);
        }
        if worst_rel <= rel_target {
            return Ok(QuadOutcome {
                value: total,
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(QuadFailure {
                achieved_rel: worst_rel,
                target_rel: rel_target,
                panels: panels.len(),
            });
        }

        let mut worst_idx = 0;
        let mut worst_score = -1.0f64;
        for (k, p) in panels.iter().enumerate() {
            let mut score = 0.0f64;
            for (e, t) in p.error.iter().zip(&total) {
                score = score.max(e / t.abs().max(f64::MIN_POSITIVE));
            }
            if score > worst_score {
                worst_score = score;
                worst_idx = k;
            }
        }

        let Panel { a: pa, b: pb, .. } = panels[worst_idx];
        let mid = 0.5 * (pa + pb);
        if !(mid > pa && mid < pb) {
            // the worst panel is already at floating-point resolution
            return Err(QuadFailure {
                achieved_rel: worst_rel,
                target_rel: rel_target,
                panels: panels.len(),
            });
        }
        panels[worst_idx] = kronrod_panel(f, pa, mid, rule);
        panels.push(kronrod_panel(f, mid, pb, rule));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential_to_machine_precision() {
        let f = |x: f64| [x * x, x.exp()];
        let out = integrate(&f, 0.0, 1.0, 1e-15, Rule::GaussKronrod21, 100).unwrap();
        assert!((out.value[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!((out.value[1] - (std::f64::consts::E - 1.0)).abs() < 3e-15);
    }

    #[test]
    fn sine_over_half_period() {
        let f = |x: f64| [x.sin()];
        let out = integrate(&f, 0.0, std::f64::consts::PI, 1e-14, Rule::GaussKronrod15, 100).unwrap();
        assert!((out.value[0] - 2.0).abs() < 2e-14);
    }

    #[test]
    fn sharp_peak_needs_refinement() {
        // narrow Gaussian inside a wide interval
        let f = |x: f64| [(-1e6 * (x - 0.3) * (x - 0.3)).exp()];
        let out = integrate(&f, 0.0, 1.0, 1e-12, Rule::GaussKronrod21, 2000).unwrap();
        let exact = (std::f64::consts::PI / 1e6_f64).sqrt();
        assert!(((out.value[0] - exact) / exact).abs() < 1e-12);
        assert!(out.panels > 4);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = |x: f64| [(-1e6 * (x - 0.3) * (x - 0.3)).exp()];
        let err = integrate(&f, 0.0, 1.0, 1e-13, Rule::GaussKronrod15, 3).unwrap_err();
        assert_eq!(err.panels, 3);
        assert!(err.achieved_rel > err.target_rel);
    }

    #[test]
    fn non_finite_integrand_fails_cleanly() {
        let f = |x: f64| [1.0 / (x - 0.5)];
        assert!(integrate(&f, 0.0, 1.0, 1e-10, Rule::GaussKronrod15, 50).is_err());
    }
}
