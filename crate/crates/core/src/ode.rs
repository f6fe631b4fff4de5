//! Adaptive Dormand–Prince 8(5,3) integrator for small dense systems.
//!
//! Step-size control follows Hairer, Nørsett & Wanner's DOP853 with the
//! combined 5th/3rd order error estimate. No dense output: callers integrate
//! piecewise between the breakpoints they care about.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct Dop853 {
    pub rtol: f64,
    pub atol: f64,
    /// Largest step magnitude; infinite by default.
    pub h_max: f64,
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

impl Default for Dop853 {
    fn default() -> Self {
        Dop853::new(1e-10, 1e-12)
    }
}

impl Dop853 {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Dop853 { rtol, atol, h_max: f64::INFINITY, max_steps: 5_000_000 }
    }

    pub fn with_max_step(mut self, h_max: f64) -> Self {
        self.h_max = h_max;
        self
    }

    /// Integrates `y' = f(t, y)` from `t0` to `t1` in place. `t1 < t0` runs
    /// backwards.
    pub fn integrate<F>(&self, f: F, t0: f64, t1: f64, y: &mut [f64]) -> Result<Stats>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    {
        self.integrate_observed(f, t0, t1, y, |_, _| Ok(()))
    }

    /// Like [`integrate`](Self::integrate), calling `observe` after every
    /// accepted step.
    pub fn integrate_observed<F, O>(
        &self,
        mut f: F,
        t0: f64,
        t1: f64,
        y: &mut [f64],
        mut observe: O,
    ) -> Result<Stats>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
        O: FnMut(f64, &[f64]) -> Result<()>,
    {
        let n = y.len();
        let mut stats = Stats::default();
        if t1 == t0 || n == 0 {
            return Ok(stats);
        }
        let dir = (t1 - t0).signum();
        let span = (t1 - t0).abs();
        let h_max = self.h_max.min(span);

        let mut k = vec![vec![0.0; n]; 12];
        let mut ytmp = vec![0.0; n];
        let mut ynew = vec![0.0; n];

        let mut t = t0;
        f(t, y, &mut k[0])?;
        stats.evaluations += 1;
        let f0 = k[0].clone();
        let mut h = self.initial_step(&mut f, t, y, &f0, dir, h_max, &mut ytmp, &mut ynew)?;
        stats.evaluations += 1;

        let mut last_rejected = false;
        const SAFE: f64 = 0.9;
        const FACC1: f64 = 1.0 / 0.333;
        const FACC2: f64 = 1.0 / 6.0;
        const EXPO1: f64 = 1.0 / 8.0;

        loop {
            if stats.accepted + stats.rejected >= self.max_steps {
                return Err(Error::Integration { t, reason: "maximum number of steps exceeded".into() });
            }
            let remaining = (t1 - t) * dir;
            let last = h >= remaining * (1.0 - 1e-10);
            if last {
                h = remaining;
            }
            if h <= f64::EPSILON * t.abs().max(span) {
                return Err(Error::Integration { t, reason: format!("step size underflow (h = {h:e})") });
            }
            let hs = h * dir;

            stage(&mut f, t, y, hs, C2, &[(0, A21)], &mut k, 1, &mut ytmp)?;
            stage(&mut f, t, y, hs, C3, &[(0, A31), (1, A32)], &mut k, 2, &mut ytmp)?;
            stage(&mut f, t, y, hs, C4, &[(0, A41), (2, A43)], &mut k, 3, &mut ytmp)?;
            stage(&mut f, t, y, hs, C5, &[(0, A51), (2, A53), (3, A54)], &mut k, 4, &mut ytmp)?;
            stage(&mut f, t, y, hs, C6, &[(0, A61), (3, A64), (4, A65)], &mut k, 5, &mut ytmp)?;
            stage(&mut f, t, y, hs, C7, &[(0, A71), (3, A74), (4, A75), (5, A76)], &mut k, 6, &mut ytmp)?;
            stage(
                &mut f, t, y, hs, C8,
                &[(0, A81), (3, A84), (4, A85), (5, A86), (6, A87)],
                &mut k, 7, &mut ytmp,
            )?;
            stage(
                &mut f, t, y, hs, C9,
                &[(0, A91), (3, A94), (4, A95), (5, A96), (6, A97), (7, A98)],
                &mut k, 8, &mut ytmp,
            )?;
            stage(
                &mut f, t, y, hs, C10,
                &[(0, A101), (3, A104), (4, A105), (5, A106), (6, A107), (7, A108), (8, A109)],
                &mut k, 9, &mut ytmp,
            )?;
            stage(
                &mut f, t, y, hs, C11,
                &[(0, A111), (3, A114), (4, A115), (5, A116), (6, A117), (7, A118), (8, A119), (9, A1110)],
                &mut k, 10, &mut ytmp,
            )?;
            stage(
                &mut f, t, y, hs, 1.0,
                &[
                    (0, A121), (3, A124), (4, A125), (5, A126), (6, A127),
                    (7, A128), (8, A129), (9, A1210), (10, A1211),
                ],
                &mut k, 11, &mut ytmp,
            )?;
            stats.evaluations += 11;

            let mut err = 0.0;
            let mut err2 = 0.0;
            for i in 0..n {
                let bsum = B1 * k[0][i] + B6 * k[5][i] + B7 * k[6][i] + B8 * k[7][i]
                    + B9 * k[8][i] + B10 * k[9][i] + B11 * k[10][i] + B12 * k[11][i];
                ynew[i] = y[i] + hs * bsum;
                let sk = self.atol + self.rtol * y[i].abs().max(ynew[i].abs());
                let e2 = bsum - BHH1 * k[0][i] - BHH2 * k[8][i] - BHH3 * k[11][i];
                err2 += (e2 / sk).powi(2);
                let e = ER1 * k[0][i] + ER6 * k[5][i] + ER7 * k[6][i] + ER8 * k[7][i]
                    + ER9 * k[8][i] + ER10 * k[9][i] + ER11 * k[10][i] + ER12 * k[11][i];
                err += (e / sk).powi(2);
            }
            let mut deno = err + 0.01 * err2;
            if deno <= 0.0 {
                deno = 1.0;
            }
            let err = h * err * (1.0 / (deno * n as f64)).sqrt();
            if !err.is_finite() {
                return Err(Error::Integration { t, reason: "non-finite error estimate".into() });
            }

            let fac11 = err.powf(EXPO1);
            let fac = FACC2.max(FACC1.min(fac11 / SAFE));
            let mut h_new = h / fac;

            if err <= 1.0 {
                stats.accepted += 1;
                t = if last { t1 } else { t + hs };
                y.copy_from_slice(&ynew);
                f(t, y, &mut k[0])?;
                stats.evaluations += 1;
                observe(t, y)?;
                if last {
                    return Ok(stats);
                }
                if last_rejected {
                    h_new = h_new.min(h);
                }
                last_rejected = false;
                h = h_new.min(h_max);
            } else {
                stats.rejected += 1;
                last_rejected = true;
                h /= FACC1.min(fac11 / SAFE);
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn initial_step<F>(
        &self,
        f: &mut F,
        t: f64,
        y: &[f64],
        f0: &[f64],
        dir: f64,
        h_max: f64,
        ytmp: &mut [f64],
        f1: &mut [f64],
    ) -> Result<f64>
    where
        F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
    {
        let n = y.len() as f64;
        let (mut dnf, mut dny) = (0.0, 0.0);
        for i in 0..y.len() {
            let sk = self.atol + self.rtol * y[i].abs();
            dnf += (f0[i] / sk).powi(2);
            dny += (y[i] / sk).powi(2);
        }
        let mut h = if dnf <= 1e-10 || dny <= 1e-10 { 1e-6 } else { (dny / dnf).sqrt() * 0.01 };
        h = h.min(h_max);
        for i in 0..y.len() {
            ytmp[i] = y[i] + dir * h * f0[i];
        }
        f(t + dir * h, ytmp, f1)?;
        let mut der2: f64 = 0.0;
        for i in 0..y.len() {
            let sk = self.atol + self.rtol * y[i].abs();
            der2 += ((f1[i] - f0[i]) / sk).powi(2);
        }
        let der2 = (der2 / n).sqrt() / h;
        let der12 = der2.abs().max((dnf / n).sqrt());
        let h1 = if der12 <= 1e-15 { (h * 1e-3).max(1e-6) } else { (0.01 / der12).powf(1.0 / 8.0) };
        Ok((100.0 * h).min(h1).min(h_max))
    }
}

#[allow(clippy::too_many_arguments)]
fn stage<F>(
    f: &mut F,
    t: f64,
    y: &[f64],
    h: f64,
    c: f64,
    coeffs: &[(usize, f64)],
    k: &mut [Vec<f64>],
    slot: usize,
    ytmp: &mut [f64],
) -> Result<()>
where
    F: FnMut(f64, &[f64], &mut [f64]) -> Result<()>,
{
    for i in 0..y.len() {
        let mut acc = 0.0;
        for &(j, a) in coeffs {
            acc += a * k[j][i];
        }
        ytmp[i] = y[i] + h * acc;
    }
    f(t + c * h, ytmp, &mut k[slot])
}

const A21: f64 = 5.260_015_195_876_773_187_855_875_444_88E-2;
const A31: f64 = 1.972_505_698_453_789_945_445_953_291_83E-2;
const A32: f64 = 5.917_517_095_361_369_836_337_859_875_49E-2;
const A41: f64 = 2.958_758_547_680_684_918_168_929_937_75E-2;
const A43: f64 = 8.876_275_643_042_054_754_506_789_813_24E-2;
const A51: f64 = 2.413_651_341_592_666_855_023_697_986_65E-1;
const A53: f64 = -8.845_494_793_282_860_853_448_649_627_17E-1;
const A54: f64 = 9.248_340_032_617_920_031_157_379_665_43E-1;
const A61: f64 = 3.703_703_703_703_703_703_703_703_703_7E-2;
const A64: f64 = 1.708_286_087_294_738_712_796_044_821_73E-1;
const A65: f64 = 1.254_676_875_668_224_250_166_918_141_23E-1;
const A71: f64 = 3.710_937_5E-2;
const A74: f64 = 1.702_522_110_195_440_393_149_780_602_72E-1;
const A75: f64 = 6.021_653_898_045_596_068_502_193_972_83E-2;
const A76: f64 = -1.757_812_5E-2;
const A81: f64 = 3.709_200_011_850_479_271_087_793_198_36E-2;
const A84: f64 = 1.703_839_257_122_399_938_102_140_547_05E-1;
const A85: f64 = 1.072_620_304_463_732_846_518_091_991_68E-1;
const A86: f64 = -1.531_943_774_862_440_175_279_361_582_36E-2;
const A87: f64 = 8.273_789_163_814_022_887_584_737_660_02E-3;
const A91: f64 = 6.241_109_587_160_757_171_144_295_778_12E-1;
const A94: f64 = -3.360_892_629_446_941_294_068_571_098_25E0;
const A95: f64 = -8.682_193_468_417_260_068_181_898_914_53E-1;
const A96: f64 = 2.759_209_969_944_670_830_494_156_007_97E1;
const A97: f64 = 2.015_406_755_047_789_340_861_867_889_79E1;
const A98: f64 = -4.348_988_418_106_995_884_773_662_551_44E1;
const A101: f64 = 4.776_625_364_382_643_658_904_339_085_27E-1;
const A104: f64 = -2.488_114_619_971_667_641_926_425_864_68E0;
const A105: f64 = -5.902_908_268_368_429_963_714_464_757_43E-1;
const A106: f64 = 2.123_005_144_818_119_423_472_889_498_97E1;
const A107: f64 = 1.527_923_363_288_242_358_325_969_229_38E1;
const A108: f64 = -3.328_821_096_898_486_291_944_532_655_87E1;
const A109: f64 = -2.033_120_170_850_862_613_582_229_285_93E-2;
const A111: f64 = -9.371_424_300_859_873_257_170_402_165_8E-1;
const A114: f64 = 5.186_372_428_844_063_708_300_238_532_09E0;
const A115: f64 = 1.091_437_348_996_729_578_185_002_546_54E0;
const A116: f64 = -8.149_787_010_746_926_125_139_972_673_57E0;
const A117: f64 = -1.852_006_565_999_695_986_415_661_807_01E1;
const A118: f64 = 2.273_948_709_935_050_428_189_700_567_34E1;
const A119: f64 = 2.493_605_552_679_652_389_870_893_967_62E0;
const A1110: f64 = -3.046_764_471_898_219_500_382_366_902_2E0;
const A121: f64 = 2.273_310_147_516_538_207_923_597_684_49E0;
const A124: f64 = -1.053_449_546_673_725_019_840_666_898_79E1;
const A125: f64 = -2.000_872_058_224_862_499_096_757_184_44E0;
const A126: f64 = -1.795_893_186_311_879_891_727_659_505_34E1;
const A127: f64 = 2.794_888_452_941_996_005_084_998_088_37E1;
const A128: f64 = -2.858_998_277_135_023_694_740_655_086_74E0;
const A129: f64 = -8.872_856_933_530_629_544_335_492_892_58E0;
const A1210: f64 = 1.236_056_717_579_430_306_472_662_015_28E1;
const A1211: f64 = 6.433_927_460_157_635_303_559_704_840_46E-1;

const B1: f64 = 5.429_373_411_656_876_223_805_357_663_63E-2;
const B6: f64 = 4.450_312_892_752_408_881_441_139_505_66E0;
const B7: f64 = 1.891_517_899_314_500_383_042_815_990_44E0;
const B8: f64 = -5.801_203_960_010_584_781_467_211_422_7E0;
const B9: f64 = 3.111_643_669_578_198_944_089_160_623_7E-1;
const B10: f64 = -1.521_609_496_625_160_785_561_788_068_05E-1;
const B11: f64 = 2.013_654_008_040_303_483_747_765_375_01E-1;
const B12: f64 = 4.471_061_572_777_259_051_768_855_690_43E-2;

const BHH1: f64 = 0.244_094_488_188_976_377_952_755_905_512E+00;
const BHH2: f64 = 0.733_846_688_281_611_857_341_361_741_547E+00;
const BHH3: f64 = 0.220_588_235_294_117_647_058_823_529_412E-01;

const C2: f64 = 0.526_001_519_587_677_318_785_587_544_488E-01;
const C3: f64 = 0.789_002_279_381_515_978_178_381_316_732E-01;
const C4: f64 = 0.118_350_341_907_227_396_726_757_197_510E+00;
const C5: f64 = 0.281_649_658_092_772_603_273_242_802_490E+00;
const C6: f64 = 0.333_333_333_333_333_333_333_333_333_333E+00;
const C7: f64 = 0.25E+00;
const C8: f64 = 0.307_692_307_692_307_692_307_692_307_692E+00;
const C9: f64 = 0.651_282_051_282_051_282_051_282_051_282E+00;
const C10: f64 = 0.6E+00;
const C11: f64 = 0.857_142_857_142_857_142_857_142_857_142E+00;

const ER1: f64 = 0.131_200_449_941_948_807_325_010_299_6E-01;
const ER6: f64 = -0.122_515_644_637_620_444_072_056_975_3E+01;
const ER7: f64 = -0.495_758_949_657_250_191_521_407_995_2E+00;
const ER8: f64 = 0.166_437_718_245_498_653_696_153_041_5E+01;
const ER9: f64 = -0.350_328_848_749_973_681_688_648_729_0E+00;
const ER10: f64 = 0.334_179_118_713_017_479_029_731_884_1E+00;
const ER11: f64 = 0.819_232_064_851_157_124_657_074_261_3E-01;
const ER12: f64 = -0.223_553_078_638_862_952_588_442_784_5E-01;
