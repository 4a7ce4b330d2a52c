//! Dormand–Prince 8(5,3) integrator with 7th-order dense output, for state
//! vectors of runtime dimension.
//!
//! The driver hands every accepted step to a callback as a [`DenseStep`], so
//! callers can locate section crossings on the interpolant and decide when to
//! stop.

use std::ops::ControlFlow;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Dop853 {
    pub rtol: f64,
    pub atol: f64,
    pub h_max: f64,
    pub max_steps: usize,
}

impl Default for Dop853 {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-12,
            h_max: f64::INFINITY,
            max_steps: 2_000_000,
        }
    }
}

impl Dop853 {
    pub fn with_tolerances(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }
}

/// One accepted step with its continuous extension.
#[derive(Clone, Debug)]
pub struct DenseStep {
    pub t0: f64,
    pub h: f64,
    cont: [Vec<f64>; 8],
}

impl DenseStep {
    pub fn t1(&self) -> f64 {
        self.t0 + self.h
    }

    pub fn dim(&self) -> usize {
        self.cont[0].len()
    }

    /// Interpolated component `k` at time `t` inside the step.
    pub fn component(&self, k: usize, t: f64) -> f64 {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let c = &self.cont;
        let conpar = c[4][k] + s * (c[5][k] + s1 * (c[6][k] + s * c[7][k]));
        c[0][k] + s * (c[1][k] + s1 * (c[2][k] + s * (c[3][k] + s1 * conpar)))
    }

    pub fn state(&self, t: f64) -> Vec<f64> {
        (0..self.dim()).map(|k| self.component(k, t)).collect()
    }

    /// State at the start of the step (exact, not interpolated).
    pub fn start(&self) -> &[f64] {
        &self.cont[0]
    }

    /// State at the end of the step.
    pub fn end(&self) -> Vec<f64> {
        self.cont[0]
            .iter()
            .zip(&self.cont[1])
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Root of component `k` inside `[ta, tb]`, where the interpolant changes
    /// sign. Bisection on the dense output until the bracket is below `tol`.
    pub fn locate_root(&self, k: usize, mut ta: f64, mut tb: f64, tol: f64) -> f64 {
        let mut fa = self.component(k, ta);
        let fb = self.component(k, tb);
        if fa == 0.0 {
            return ta;
        }
        if fb == 0.0 {
            return tb;
        }
        // Illinois-modified regula falsi with a bisection fallback.
        let mut fb = fb;
        let mut side = 0i8;
        for _ in 0..200 {
            if (tb - ta).abs() <= tol {
                break;
            }
            let mut tm = (ta * fb - tb * fa) / (fb - fa);
            if !(tm > ta.min(tb) && tm < ta.max(tb)) {
                tm = 0.5 * (ta + tb);
            }
            let fm = self.component(k, tm);
            if fm == 0.0 {
                return tm;
            }
            if fm.signum() == fb.signum() {
                tb = tm;
                fb = fm;
                if side == -1 {
                    fa *= 0.5;
                }
                side = -1;
            } else {
                ta = tm;
                fa = fm;
                if side == 1 {
                    fb *= 0.5;
                }
                side = 1;
            }
        }
        0.5 * (ta + tb)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Outcome {
    /// The callback requested a stop.
    Stopped { steps: usize },
    /// `t_end` was reached.
    Reached { steps: usize },
}

struct Work {
    k: Vec<Vec<f64>>,
    tmp: Vec<f64>,
}

impl Dop853 {
    /// Integrates `y' = rhs(t, y)` from `t0` towards `t_end`, calling
    /// `on_step` after every accepted step.
    pub fn integrate<F, C>(
        &self,
        mut rhs: F,
        t0: f64,
        y0: &[f64],
        t_end: f64,
        mut on_step: C,
    ) -> Result<Outcome>
    where
        F: FnMut(f64, &[f64], &mut [f64]),
        C: FnMut(&DenseStep) -> ControlFlow<()>,
    {
        let n = y0.len();
        if !(t_end > t0) {
            return Err(Error::Integrator("t_end must exceed t0".into()));
        }
        let mut w = Work {
            k: vec![vec![0.0; n]; 16],
            tmp: vec![0.0; n],
        };
        let mut t = t0;
        let mut y = y0.to_vec();
        let mut y_new = vec![0.0; n];
        rhs(t, &y, &mut w.k[0]);

        let h_max = self.h_max.min(t_end - t0);
        let mut h = self.initial_step(&mut rhs, t, &y, &mut w, h_max);
        let mut last_rejected = false;
        let mut steps = 0usize;

        loop {
            if steps >= self.max_steps {
                return Err(Error::Integrator(format!(
                    "maximum step count {} reached at t = {t}",
                    self.max_steps
                )));
            }
            if h.abs() <= f64::EPSILON * t.abs().max(1.0) {
                return Err(Error::Integrator(format!("step size underflow at t = {t}")));
            }
            let mut finishing = false;
            if t + h >= t_end {
                h = t_end - t;
                finishing = true;
            }

            let err = self.try_step(&mut rhs, t, h, &y, &mut y_new, &mut w);
            steps += 1;
            if !err.is_finite() {
                h *= 0.25;
                last_rejected = true;
                continue;
            }

            let fac11 = err.powf(0.125);
            let fac = (1.0 / 6.0_f64).max((1.0 / 0.333_f64).min(fac11 / 0.9));
            let mut h_new = h / fac;

            if err <= 1.0 {
                let step = self.dense(&mut rhs, t, h, &y, &y_new, &mut w);
                t += h;
                std::mem::swap(&mut y, &mut y_new);
                // k[12] holds f(t + h, y_new), the next step's first stage
                let k13 = std::mem::take(&mut w.k[12]);
                w.k[12] = std::mem::replace(&mut w.k[0], k13);

                if y.iter().any(|v| !v.is_finite()) {
                    return Err(Error::Integrator(format!("non-finite state at t = {t}")));
                }
                if let ControlFlow::Break(()) = on_step(&step) {
                    return Ok(Outcome::Stopped { steps });
                }
                if finishing {
                    return Ok(Outcome::Reached { steps });
                }
                if last_rejected {
                    h_new = h_new.abs().min(h.abs());
                }
                last_rejected = false;
                h = h_new.min(h_max);
            } else {
                h_new = h / (1.0 / 0.333_f64).min(fac11 / 0.9);
                last_rejected = true;
                h = h_new;
            }
        }
    }

    fn initial_step<F>(&self, rhs: &mut F, t: f64, y: &[f64], w: &mut Work, h_max: f64) -> f64
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len() as f64;
        let mut dnf = 0.0;
        let mut dny = 0.0;
        for (yi, fi) in y.iter().zip(&w.k[0]) {
            let sk = self.atol + self.rtol * yi.abs();
            dnf += (fi / sk).powi(2);
            dny += (yi / sk).powi(2);
        }
        let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
            1e-6
        } else {
            (dny / dnf).sqrt() * 0.01
        };
        h = h.min(h_max);
        for ((tmp, yi), fi) in w.tmp.iter_mut().zip(y).zip(&w.k[0]) {
            *tmp = yi + h * fi;
        }
        rhs(t + h, &w.tmp, &mut w.k[1]);
        let mut der2 = 0.0;
        for ((yi, f1), f0) in y.iter().zip(&w.k[1]).zip(&w.k[0]) {
            let sk = self.atol + self.rtol * yi.abs();
            der2 += ((f1 - f0) / sk).powi(2);
        }
        let der2 = der2.sqrt() / h;
        let der12 = der2.abs().max((dnf / n).sqrt().max(dnf.sqrt()));
        let h1 = if der12 <= 1e-15 {
            (h * 1e-3).max(1e-6)
        } else {
            (0.01 / der12).powf(1.0 / 8.0)
        };
        (100.0 * h).min(h1).min(h_max)
    }

    /// Computes stages 2..12 and the candidate `y_new`; returns the scaled error norm.
    fn try_step<F>(
        &self,
        rhs: &mut F,
        t: f64,
        h: f64,
        y: &[f64],
        y_new: &mut [f64],
        w: &mut Work,
    ) -> f64
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        macro_rules! stage {
            ($dst:expr, $c:expr, [$(($a:expr, $src:expr)),*]) => {{
                for i in 0..n {
                    let mut acc = 0.0;
                    $( acc += $a * w.k[$src][i]; )*
                    w.tmp[i] = y[i] + h * acc;
                }
                let (tmp, k) = (&w.tmp, &mut w.k);
                rhs(t + $c * h, tmp, &mut k[$dst]);
            }};
        }
        stage!(1, C2, [(A21, 0)]);
        stage!(2, C3, [(A31, 0), (A32, 1)]);
        stage!(3, C4, [(A41, 0), (A43, 2)]);
        stage!(4, C5, [(A51, 0), (A53, 2), (A54, 3)]);
        stage!(5, C6, [(A61, 0), (A64, 3), (A65, 4)]);
        stage!(6, C7, [(A71, 0), (A74, 3), (A75, 4), (A76, 5)]);
        stage!(7, C8, [(A81, 0), (A84, 3), (A85, 4), (A86, 5), (A87, 6)]);
        stage!(8, C9, [(A91, 0), (A94, 3), (A95, 4), (A96, 5), (A97, 6), (A98, 7)]);
        stage!(9, C10, [(A101, 0), (A104, 3), (A105, 4), (A106, 5), (A107, 6), (A108, 7), (A109, 8)]);
        stage!(10, C11, [(A111, 0), (A114, 3), (A115, 4), (A116, 5), (A117, 6), (A118, 7), (A119, 8), (A1110, 9)]);
        stage!(11, 1.0, [(A121, 0), (A124, 3), (A125, 4), (A126, 5), (A127, 6), (A128, 7), (A129, 8), (A1210, 9), (A1211, 10)]);

        let k = &w.k;
        let mut err = 0.0;
        let mut err2 = 0.0;
        for i in 0..n {
            let incr = B1 * k[0][i]
                + B6 * k[5][i]
                + B7 * k[6][i]
                + B8 * k[7][i]
                + B9 * k[8][i]
                + B10 * k[9][i]
                + B11 * k[10][i]
                + B12 * k[11][i];
            y_new[i] = y[i] + h * incr;
            let sk = self.atol + self.rtol * y[i].abs().max(y_new[i].abs());
            let e2 = incr - BHH1 * k[0][i] - BHH2 * k[8][i] - BHH3 * k[11][i];
            err2 += (e2 / sk).powi(2);
            let e = ER1 * k[0][i]
                + ER6 * k[5][i]
                + ER7 * k[6][i]
                + ER8 * k[7][i]
                + ER9 * k[8][i]
                + ER10 * k[9][i]
                + ER11 * k[10][i]
                + ER12 * k[11][i];
            err += (e / sk).powi(2);
        }
        let mut deno = err + 0.01 * err2;
        if deno <= 0.0 {
            deno = 1.0;
        }
        h.abs() * err * (1.0 / (deno * n as f64)).sqrt()
    }

    /// Builds the continuous extension of an accepted step; leaves
    /// `f(t + h, y_new)` in `k[12]`.
    fn dense<F>(
        &self,
        rhs: &mut F,
        t: f64,
        h: f64,
        y: &[f64],
        y_new: &[f64],
        w: &mut Work,
    ) -> DenseStep
    where
        F: FnMut(f64, &[f64], &mut [f64]),
    {
        let n = y.len();
        rhs(t + h, y_new, &mut w.k[12]);
        macro_rules! stage {
            ($dst:expr, $c:expr, [$(($a:expr, $src:expr)),*]) => {{
                for i in 0..n {
                    let mut acc = 0.0;
                    $( acc += $a * w.k[$src][i]; )*
                    w.tmp[i] = y[i] + h * acc;
                }
                let (tmp, k) = (&w.tmp, &mut w.k);
                rhs(t + $c * h, tmp, &mut k[$dst]);
            }};
        }
        stage!(13, C14, [(A141, 0), (A147, 6), (A148, 7), (A149, 8), (A1410, 9), (A1411, 10), (A1412, 11), (A1413, 12)]);
        stage!(14, C15, [(A151, 0), (A156, 5), (A157, 6), (A158, 7), (A1511, 10), (A1512, 11), (A1513, 12), (A1514, 13)]);
        stage!(15, C16, [(A161, 0), (A166, 5), (A167, 6), (A168, 7), (A169, 8), (A1613, 12), (A1614, 13), (A1615, 14)]);

        let k = &w.k;
        let mut cont: [Vec<f64>; 8] = Default::default();
        for c in cont.iter_mut() {
            *c = vec![0.0; n];
        }
        let d = [D4, D5, D6, D7];
        for i in 0..n {
            let ydiff = y_new[i] - y[i];
            let bspl = h * k[0][i] - ydiff;
            cont[0][i] = y[i];
            cont[1][i] = ydiff;
            cont[2][i] = bspl;
            cont[3][i] = ydiff - h * k[12][i] - bspl;
            for (r, dr) in d.iter().enumerate() {
                // stage order matching the coefficient rows
                let stages = [0, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];
                let mut acc = 0.0;
                for (coef, &s) in dr.iter().zip(stages.iter()) {
                    acc += coef * k[s][i];
                }
                cont[4 + r][i] = h * acc;
            }
        }
        DenseStep { t0: t, h, cont }
    }
}

const C2: f64 = 0.526001519587677318785587544488E-01;
const C3: f64 = 0.789002279381515978178381316732E-01;
const C4: f64 = 0.118350341907227396726757197510E+00;
const C5: f64 = 0.281649658092772603273242802490E+00;
const C6: f64 = 0.333333333333333333333333333333E+00;
const C7: f64 = 0.25E+00;
const C8: f64 = 0.307692307692307692307692307692E+00;
const C9: f64 = 0.651282051282051282051282051282E+00;
const C10: f64 = 0.6E+00;
const C11: f64 = 0.857142857142857142857142857142E+00;
const C14: f64 = 0.1E+00;
const C15: f64 = 0.2E+00;
const C16: f64 = 0.777777777777777777777777777778E+00;

const A21: f64 = 5.26001519587677318785587544488E-2;
const A31: f64 = 1.97250569845378994544595329183E-2;
const A32: f64 = 5.91751709536136983633785987549E-2;
const A41: f64 = 2.95875854768068491816892993775E-2;
const A43: f64 = 8.87627564304205475450678981324E-2;
const A51: f64 = 2.41365134159266685502369798665E-1;
const A53: f64 = -8.84549479328286085344864962717E-1;
const A54: f64 = 9.24834003261792003115737966543E-1;
const A61: f64 = 3.7037037037037037037037037037E-2;
const A64: f64 = 1.70828608729473871279604482173E-1;
const A65: f64 = 1.25467687566822425016691814123E-1;
const A71: f64 = 3.7109375E-2;
const A74: f64 = 1.70252211019544039314978060272E-1;
const A75: f64 = 6.02165389804559606850219397283E-2;
const A76: f64 = -1.7578125E-2;
const A81: f64 = 3.70920001185047927108779319836E-2;
const A84: f64 = 1.70383925712239993810214054705E-1;
const A85: f64 = 1.07262030446373284651809199168E-1;
const A86: f64 = -1.53194377486244017527936158236E-2;
const A87: f64 = 8.27378916381402288758473766002E-3;
const A91: f64 = 6.24110958716075717114429577812E-1;
const A94: f64 = -3.36089262944694129406857109825E0;
const A95: f64 = -8.68219346841726006818189891453E-1;
const A96: f64 = 2.75920996994467083049415600797E1;
const A97: f64 = 2.01540675504778934086186788979E1;
const A98: f64 = -4.34898841810699588477366255144E1;
const A101: f64 = 4.77662536438264365890433908527E-1;
const A104: f64 = -2.48811461997166764192642586468E0;
const A105: f64 = -5.90290826836842996371446475743E-1;
const A106: f64 = 2.12300514481811942347288949897E1;
const A107: f64 = 1.52792336328824235832596922938E1;
const A108: f64 = -3.32882109689848629194453265587E1;
const A109: f64 = -2.03312017085086261358222928593E-2;
const A111: f64 = -9.3714243008598732571704021658E-1;
const A114: f64 = 5.18637242884406370830023853209E0;
const A115: f64 = 1.09143734899672957818500254654E0;
const A116: f64 = -8.14978701074692612513997267357E0;
const A117: f64 = -1.85200656599969598641566180701E1;
const A118: f64 = 2.27394870993505042818970056734E1;
const A119: f64 = 2.49360555267965238987089396762E0;
const A1110: f64 = -3.0467644718982195003823669022E0;
const A121: f64 = 2.27331014751653820792359768449E0;
const A124: f64 = -1.05344954667372501984066689879E1;
const A125: f64 = -2.00087205822486249909675718444E0;
const A126: f64 = -1.79589318631187989172765950534E1;
const A127: f64 = 2.79488845294199600508499808837E1;
const A128: f64 = -2.85899827713502369474065508674E0;
const A129: f64 = -8.87285693353062954433549289258E0;
const A1210: f64 = 1.23605671757943030647266201528E1;
const A1211: f64 = 6.43392746015763530355970484046E-1;

const A141: f64 = 5.61675022830479523392909219681E-2;
const A147: f64 = 2.53500210216624811088794765333E-1;
const A148: f64 = -2.46239037470802489917441475441E-1;
const A149: f64 = -1.24191423263816360469010140626E-1;
const A1410: f64 = 1.5329179827876569731206322685E-1;
const A1411: f64 = 8.20105229563468988491666602057E-3;
const A1412: f64 = 7.56789766054569976138603589584E-3;
const A1413: f64 = -8.298E-3;
const A151: f64 = 3.18346481635021405060768473261E-2;
const A156: f64 = 2.83009096723667755288322961402E-2;
const A157: f64 = 5.35419883074385676223797384372E-2;
const A158: f64 = -5.49237485713909884646569340306E-2;
const A1511: f64 = -1.08347328697249322858509316994E-4;
const A1512: f64 = 3.82571090835658412954920192323E-4;
const A1513: f64 = -3.40465008687404560802977114492E-4;
const A1514: f64 = 1.41312443674632500278074618366E-1;
const A161: f64 = -4.28896301583791923408573538692E-1;
const A166: f64 = -4.69762141536116384314449447206E0;
const A167: f64 = 7.68342119606259904184240953878E0;
const A168: f64 = 4.06898981839711007970213554331E0;
const A169: f64 = 3.56727187455281109270669543021E-1;
const A1613: f64 = -1.39902416515901462129418009734E-3;
const A1614: f64 = 2.9475147891527723389556272149E0;
const A1615: f64 = -9.15095847217987001081870187138E0;

const B1: f64 = 5.42937341165687622380535766363E-2;
const B6: f64 = 4.45031289275240888144113950566E0;
const B7: f64 = 1.89151789931450038304281599044E0;
const B8: f64 = -5.8012039600105847814672114227E0;
const B9: f64 = 3.1116436695781989440891606237E-1;
const B10: f64 = -1.52160949662516078556178806805E-1;
const B11: f64 = 2.01365400804030348374776537501E-1;
const B12: f64 = 4.47106157277725905176885569043E-2;

const BHH1: f64 = 0.244094488188976377952755905512E+00;
const BHH2: f64 = 0.733846688281611857341361741547E+00;
const BHH3: f64 = 0.220588235294117647058823529412E-01;

const ER1: f64 = 0.1312004499419488073250102996E-01;
const ER6: f64 = -0.1225156446376204440720569753E+01;
const ER7: f64 = -0.4957589496572501915214079952E+00;
const ER8: f64 = 0.1664377182454986536961530415E+01;
const ER9: f64 = -0.3503288487499736816886487290E+00;
const ER10: f64 = 0.3341791187130174790297318841E+00;
const ER11: f64 = 0.8192320648511571246570742613E-01;
const ER12: f64 = -0.2235530786388629525884427845E-01;

// Dense-output rows over stages (1, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16).
const D4: [f64; 12] = [
    -0.84289382761090128651353491142E+01,
    0.56671495351937776962531783590E+00,
    -0.30689499459498916912797304727E+01,
    0.23846676565120698287728149680E+01,
    0.21170345824450282767155149946E+01,
    -0.87139158377797299206789907490E+00,
    0.22404374302607882758541771650E+01,
    0.63157877876946881815570249290E+00,
    -0.88990336451333310820698117400E-01,
    0.18148505520854727256656404962E+02,
    -0.91946323924783554000451984436E+01,
    -0.44360363875948939664310572000E+01,
];
const D5: [f64; 12] = [
    0.10427508642579134603413151009E+02,
    0.24228349177525818288430175319E+03,
    0.16520045171727028198505394887E+03,
    -0.37454675472269020279518312152E+03,
    -0.22113666853125306036270938578E+02,
    0.77334326684722638389603898808E+01,
    -0.30674084731089398182061213626E+02,
    -0.93321305264302278729567221706E+01,
    0.15697238121770843886131091075E+02,
    -0.31139403219565177677282850411E+02,
    -0.93529243588444783865713862664E+01,
    0.35816841486394083752465898540E+02,
];
const D6: [f64; 12] = [
    0.19985053242002433820987653617E+02,
    -0.38703730874935176555105901742E+03,
    -0.18917813819516756882830838328E+03,
    0.52780815920542364900561016686E+03,
    -0.11573902539959630126141871134E+02,
    0.68812326946963000169666922661E+01,
    -0.10006050966910838403183860980E+01,
    0.77771377980534432092869265740E+00,
    -0.27782057523535084065932004339E+01,
    -0.60196695231264120758267380846E+02,
    0.84320405506677161018159903784E+02,
    0.11992291136182789328035130030E+02,
];
const D7: [f64; 12] = [
    -0.25693933462703749003312586129E+02,
    -0.15418974869023643374053993627E+03,
    -0.23152937917604549567536039109E+03,
    0.35763911791061412378285349910E+03,
    0.93405324183624310003907691704E+02,
    -0.37458323136451633156875139351E+02,
    0.10409964950896230045147246184E+03,
    0.29840293426660503123344363579E+02,
    -0.43533456590011143754432175058E+02,
    0.96324553959188282948394950600E+02,
    -0.39177261675615439165231486172E+02,
    -0.14972683625798562581422125276E+03,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_full_period() {
        let solver = Dop853::default();
        let mut last = Vec::new();
        let out = solver
            .integrate(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                },
                0.0,
                &[1.0, 0.0],
                2.0 * std::f64::consts::PI,
                |s| {
                    last = s.end();
                    ControlFlow::Continue(())
                },
            )
            .unwrap();
        assert!(matches!(out, Outcome::Reached { .. }));
        assert!((last[0] - 1.0).abs() < 1e-11);
        assert!(last[1].abs() < 1e-11);
    }

    #[test]
    fn dense_output_is_high_order() {
        let solver = Dop853::with_tolerances(1e-10, 1e-10);
        let mut worst: f64 = 0.0;
        solver
            .integrate(
                |_, y, dy| dy[0] = y[0],
                0.0,
                &[1.0],
                2.0,
                |s| {
                    for q in 1..10 {
                        let t = s.t0 + s.h * q as f64 / 10.0;
                        worst = worst.max((s.component(0, t) - t.exp()).abs() / t.exp());
                    }
                    ControlFlow::Continue(())
                },
            )
            .unwrap();
        assert!(worst < 1e-9, "dense output error {worst}");
    }

    #[test]
    fn crossing_located_on_interpolant() {
        // x = cos t crosses zero at pi/2.
        let solver = Dop853::default();
        let mut root = None;
        solver
            .integrate(
                |_, y, dy| {
                    dy[0] = y[1];
                    dy[1] = -y[0];
                },
                0.0,
                &[1.0, 0.0],
                3.0,
                |s| {
                    let a = s.start()[0];
                    let b = s.end()[0];
                    if a > 0.0 && b <= 0.0 {
                        root = Some(s.locate_root(0, s.t0, s.t1(), 1e-14));
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                },
            )
            .unwrap();
        assert!((root.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
    }
}
