//! Dormand–Prince 8(5,3) with the 7th-order continuous extension, on
//! fixed-size arrays.

use crate::error::{Error, Result};

/// Right-hand side of an autonomous or time-dependent system `y' = f(s, y)`.
pub trait OdeSystem<const N: usize> {
    fn rhs(&self, s: f64, y: &[f64; N], dy: &mut [f64; N]) -> Result<()>;
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub rtol: f64,
    pub atol: f64,
    pub h_init: Option<f64>,
    pub h_max: Option<f64>,
    pub max_steps: usize,
    /// Steps shorter than this (in magnitude) abort the integration.
    pub h_min: f64,
    /// Store continuous-extension coefficients for every accepted step.
    pub dense: bool,
}

impl Options {
    pub fn with_tol(tol: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            ..Self::default()
        }
    }
}

impl Default for Options {
    fn default() -> Self {
        Self {
            rtol: 1e-12,
            atol: 1e-12,
            h_init: None,
            h_max: None,
            max_steps: 200_000,
            h_min: 1e-14,
            dense: true,
        }
    }
}

/// Continuous extension over one accepted step.
#[derive(Debug, Clone)]
pub struct DenseStep<const N: usize> {
    pub s_start: f64,
    pub h: f64,
    cont: Box<[[f64; N]; 8]>,
}

impl<const N: usize> DenseStep<N> {
    pub fn s_end(&self) -> f64 {
        self.s_start + self.h
    }

    pub fn eval(&self, s: f64) -> [f64; N] {
        let th = (s - self.s_start) / self.h;
        let th1 = 1.0 - th;
        let c = &*self.cont;
        std::array::from_fn(|i| {
            let conpar = c[4][i] + th * (c[5][i] + th1 * (c[6][i] + th * c[7][i]));
            c[0][i] + th * (c[1][i] + th1 * (c[2][i] + th * (c[3][i] + th1 * conpar)))
        })
    }

    /// Keep only the first `M` components.
    pub fn truncate<const M: usize>(&self) -> DenseStep<M> {
        assert!(M <= N);
        let mut cont = Box::new([[0.0; M]; 8]);
        for (dst, src) in cont.iter_mut().zip(self.cont.iter()) {
            dst.copy_from_slice(&src[..M]);
        }
        DenseStep {
            s_start: self.s_start,
            h: self.h,
            cont,
        }
    }
}

/// Accepted steps of one integration.
#[derive(Debug, Clone)]
pub struct Solution<const N: usize> {
    pub s: Vec<f64>,
    pub y: Vec<[f64; N]>,
    pub dense: Vec<DenseStep<N>>,
    pub accepted: usize,
    pub rejected: usize,
    /// True when the stop predicate ended the integration before `s_end`.
    pub stopped: bool,
}

impl<const N: usize> Solution<N> {
    pub fn last(&self) -> (f64, &[f64; N]) {
        (*self.s.last().unwrap(), self.y.last().unwrap())
    }
}

fn combine<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    std::array::from_fn(|i| {
        let mut acc = 0.0;
        for (c, k) in terms {
            acc += c * k[i];
        }
        y[i] + h * acc
    })
}

struct Stages<const N: usize> {
    k: [[f64; N]; 13],
}

/// One Runge–Kutta step from `(s, y)` with `k1 = f(s, y)`. Returns the new
/// state, the error norm and the stages needed by the continuous extension.
fn attempt<const N: usize, F: OdeSystem<N>>(
    sys: &F,
    s: f64,
    y: &[f64; N],
    k1: &[f64; N],
    h: f64,
    opts: &Options,
    st: &mut Stages<N>,
) -> Result<([f64; N], f64)> {
    st.k[0] = *k1;
    let k = &mut st.k;
    macro_rules! stage {
        ($idx:expr, $c:expr, [$(($a:expr, $j:expr)),*]) => {{
            let y_stage = combine(y, h, &[$(($a, &k[$j])),*]);
            let mut out = [0.0; N];
            sys.rhs(s + $c * h, &y_stage, &mut out)?;
            k[$idx] = out;
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

    let y_new = combine(
        y,
        h,
        &[
            (B1, &k[0]),
            (B6, &k[5]),
            (B7, &k[6]),
            (B8, &k[7]),
            (B9, &k[8]),
            (B10, &k[9]),
            (B11, &k[10]),
            (B12, &k[11]),
        ],
    );

    let mut err = 0.0;
    let mut err2 = 0.0;
    for i in 0..N {
        let sk = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
        let bsum = B1 * k[0][i]
            + B6 * k[5][i]
            + B7 * k[6][i]
            + B8 * k[7][i]
            + B9 * k[8][i]
            + B10 * k[9][i]
            + B11 * k[10][i]
            + B12 * k[11][i];
        let e5 = bsum - BHH1 * k[0][i] - BHH2 * k[8][i] - BHH3 * k[11][i];
        let e3 = ER1 * k[0][i]
            + ER6 * k[5][i]
            + ER7 * k[6][i]
            + ER8 * k[7][i]
            + ER9 * k[8][i]
            + ER10 * k[9][i]
            + ER11 * k[10][i]
            + ER12 * k[11][i];
        err2 += (e5 / sk).powi(2);
        err += (e3 / sk).powi(2);
    }
    let mut deno = err + 0.01 * err2;
    if deno <= 0.0 {
        deno = 1.0;
    }
    let norm = h.abs() * err * (1.0 / (deno * N as f64)).sqrt();
    Ok((y_new, norm))
}

/// Continuous-extension coefficients; `k[12]` must hold `f(s + h, y_new)`.
fn dense_coefficients<const N: usize, F: OdeSystem<N>>(
    sys: &F,
    s: f64,
    y: &[f64; N],
    y_new: &[f64; N],
    h: f64,
    st: &mut Stages<N>,
) -> Result<Box<[[f64; N]; 8]>> {
    let k = &mut st.k;
    let mut c = Box::new([[0.0; N]; 8]);
    for i in 0..N {
        let ydiff = y_new[i] - y[i];
        let bspl = h * k[0][i] - ydiff;
        c[0][i] = y[i];
        c[1][i] = ydiff;
        c[2][i] = bspl;
        c[3][i] = ydiff - h * k[12][i] - bspl;
        c[4][i] = D41 * k[0][i] + D46 * k[5][i] + D47 * k[6][i] + D48 * k[7][i]
            + D49 * k[8][i] + D410 * k[9][i] + D411 * k[10][i] + D412 * k[11][i];
        c[5][i] = D51 * k[0][i] + D56 * k[5][i] + D57 * k[6][i] + D58 * k[7][i]
            + D59 * k[8][i] + D510 * k[9][i] + D511 * k[10][i] + D512 * k[11][i];
        c[6][i] = D61 * k[0][i] + D66 * k[5][i] + D67 * k[6][i] + D68 * k[7][i]
            + D69 * k[8][i] + D610 * k[9][i] + D611 * k[10][i] + D612 * k[11][i];
        c[7][i] = D71 * k[0][i] + D76 * k[5][i] + D77 * k[6][i] + D78 * k[7][i]
            + D79 * k[8][i] + D710 * k[9][i] + D711 * k[10][i] + D712 * k[11][i];
    }
    // Three extra stages. Indices: 0=k1, 5..11 = k6..k12, 12 = f(s+h).
    let y14 = combine(
        y,
        h,
        &[
            (A141, &k[0]),
            (A147, &k[6]),
            (A148, &k[7]),
            (A149, &k[8]),
            (A1410, &k[9]),
            (A1411, &k[10]),
            (A1412, &k[11]),
            (A1413, &k[12]),
        ],
    );
    let mut k14 = [0.0; N];
    sys.rhs(s + C14 * h, &y14, &mut k14)?;
    let y15 = combine(
        y,
        h,
        &[
            (A151, &k[0]),
            (A156, &k[5]),
            (A157, &k[6]),
            (A158, &k[7]),
            (A1511, &k[10]),
            (A1512, &k[11]),
            (A1513, &k[12]),
            (A1514, &k14),
        ],
    );
    let mut k15 = [0.0; N];
    sys.rhs(s + C15 * h, &y15, &mut k15)?;
    let y16 = combine(
        y,
        h,
        &[
            (A161, &k[0]),
            (A166, &k[5]),
            (A167, &k[6]),
            (A168, &k[7]),
            (A169, &k[8]),
            (A1613, &k[12]),
            (A1614, &k14),
            (A1615, &k15),
        ],
    );
    let mut k16 = [0.0; N];
    sys.rhs(s + C16 * h, &y16, &mut k16)?;
    for i in 0..N {
        c[4][i] = h * (c[4][i] + D413 * k[12][i] + D414 * k14[i] + D415 * k15[i] + D416 * k16[i]);
        c[5][i] = h * (c[5][i] + D513 * k[12][i] + D514 * k14[i] + D515 * k15[i] + D516 * k16[i]);
        c[6][i] = h * (c[6][i] + D613 * k[12][i] + D614 * k14[i] + D615 * k15[i] + D616 * k16[i]);
        c[7][i] = h * (c[7][i] + D713 * k[12][i] + D714 * k14[i] + D715 * k15[i] + D716 * k16[i]);
    }
    Ok(c)
}

/// A single step of fixed length `h` with no error control.
pub fn single_step<const N: usize, F: OdeSystem<N>>(
    sys: &F,
    s: f64,
    y: &[f64; N],
    h: f64,
) -> Result<[f64; N]> {
    let mut k1 = [0.0; N];
    sys.rhs(s, y, &mut k1)?;
    let mut st = Stages { k: [[0.0; N]; 13] };
    let (y_new, _) = attempt(sys, s, y, &k1, h, &Options::default(), &mut st)?;
    Ok(y_new)
}

fn initial_step<const N: usize, F: OdeSystem<N>>(
    sys: &F,
    s: f64,
    y: &[f64; N],
    f0: &[f64; N],
    dir: f64,
    h_max: f64,
    opts: &Options,
) -> Result<f64> {
    let sk = |i: usize| opts.atol + opts.rtol * y[i].abs();
    let (mut dnf, mut dny) = (0.0, 0.0);
    for i in 0..N {
        dnf += (f0[i] / sk(i)).powi(2);
        dny += (y[i] / sk(i)).powi(2);
    }
    let mut h = if dnf <= 1e-10 || dny <= 1e-10 {
        1e-6
    } else {
        (dny / dnf).sqrt() * 0.01
    };
    h = h.min(h_max);
    let y1: [f64; N] = std::array::from_fn(|i| y[i] + dir * h * f0[i]);
    let mut f1 = [0.0; N];
    sys.rhs(s + dir * h, &y1, &mut f1)?;
    let mut der2 = 0.0;
    for i in 0..N {
        der2 += ((f1[i] - f0[i]) / sk(i)).powi(2);
    }
    der2 = der2.sqrt() / h;
    let der12 = der2.abs().max(dnf.sqrt());
    let h1 = if der12 <= 1e-15 {
        (1e-6f64).max(h.abs() * 1e-3)
    } else {
        (0.01 / der12).powf(1.0 / 8.0)
    };
    Ok((100.0 * h).min(h1).min(h_max))
}

/// Integrate from `s0` to `s_end` (either direction). After every accepted
/// step `stop(y_prev, y_new)` is consulted; returning `true` ends the run.
pub fn integrate<const N: usize, F, P>(
    sys: &F,
    s0: f64,
    y0: [f64; N],
    s_end: f64,
    opts: &Options,
    mut stop: P,
) -> Result<Solution<N>>
where
    F: OdeSystem<N>,
    P: FnMut(&[f64; N], &[f64; N]) -> bool,
{
    let mut sol = Solution {
        s: vec![s0],
        y: vec![y0],
        dense: Vec::new(),
        accepted: 0,
        rejected: 0,
        stopped: false,
    };
    let span = s_end - s0;
    if span == 0.0 {
        return Ok(sol);
    }
    let dir = span.signum();
    let h_max = opts.h_max.unwrap_or(span.abs()).min(span.abs());

    let mut s = s0;
    let mut y = y0;
    let mut k1 = [0.0; N];
    sys.rhs(s, &y, &mut k1)?;
    let mut h = match opts.h_init {
        Some(h) => h.abs().min(h_max),
        None => initial_step(sys, s, &y, &k1, dir, h_max, opts)?,
    };
    let mut st = Stages { k: [[0.0; N]; 13] };
    let mut last_rejected = false;
    let mut singular: Option<Error> = None;
    let mut steps = 0usize;

    loop {
        if steps >= opts.max_steps {
            return Err(Error::MaxSteps {
                max_steps: opts.max_steps,
                s_end,
            });
        }
        steps += 1;
        if h < opts.h_min {
            return Err(singular.take().unwrap_or(Error::StepCollapse { s, h }));
        }
        let remaining = (s_end - s).abs();
        let last = h >= remaining * (1.0 - 1e-12);
        if last {
            h = remaining;
        }
        let hs = dir * h;
        let (y_new, err) = match attempt(sys, s, &y, &k1, hs, opts, &mut st) {
            Ok(v) => v,
            // A stage landed in a singular region: retry with a shorter step.
            Err(e @ Error::Singular { .. }) => {
                singular = Some(e);
                h *= 0.25;
                sol.rejected += 1;
                last_rejected = true;
                continue;
            }
            Err(e) => return Err(e),
        };

        let fac11 = err.powf(1.0 / 8.0);
        let fac = (fac11 / 0.9).clamp(1.0 / 6.0, 1.0 / 0.333);
        let mut h_new = h / fac;

        if err <= 1.0 && err.is_finite() {
            let s_new = if last { s_end } else { s + hs };
            let mut k_end = [0.0; N];
            sys.rhs(s_new, &y_new, &mut k_end)?;
            st.k[12] = k_end;
            if opts.dense {
                let cont = dense_coefficients(sys, s, &y, &y_new, hs, &mut st)?;
                sol.dense.push(DenseStep {
                    s_start: s,
                    h: hs,
                    cont,
                });
            }
            sol.accepted += 1;
            let halt = stop(&y, &y_new);
            s = s_new;
            y = y_new;
            k1 = k_end;
            sol.s.push(s);
            sol.y.push(y);
            if halt {
                sol.stopped = true;
                return Ok(sol);
            }
            if last {
                return Ok(sol);
            }
            if last_rejected {
                h_new = h_new.min(h);
            }
            last_rejected = false;
            h = h_new.min(h_max);
        } else {
            let shrink = if err.is_finite() { (fac11 / 0.9).min(1.0 / 0.333) } else { 10.0 };
            h /= shrink.max(1.0);
            sol.rejected += 1;
            last_rejected = true;
        }
    }
}

// Butcher tableau (Hairer, Nørsett & Wanner).
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

const D41: f64 = -0.84289382761090128651353491142E+01;
const D46: f64 = 0.56671495351937776962531783590E+00;
const D47: f64 = -0.30689499459498916912797304727E+01;
const D48: f64 = 0.23846676565120698287728149680E+01;
const D49: f64 = 0.21170345824450282767155149946E+01;
const D410: f64 = -0.87139158377797299206789907490E+00;
const D411: f64 = 0.22404374302607882758541771650E+01;
const D412: f64 = 0.63157877876946881815570249290E+00;
const D413: f64 = -0.88990336451333310820698117400E-01;
const D414: f64 = 0.18148505520854727256656404962E+02;
const D415: f64 = -0.91946323924783554000451984436E+01;
const D416: f64 = -0.44360363875948939664310572000E+01;

const D51: f64 = 0.10427508642579134603413151009E+02;
const D56: f64 = 0.24228349177525818288430175319E+03;
const D57: f64 = 0.16520045171727028198505394887E+03;
const D58: f64 = -0.37454675472269020279518312152E+03;
const D59: f64 = -0.22113666853125306036270938578E+02;
const D510: f64 = 0.77334326684722638389603898808E+01;
const D511: f64 = -0.30674084731089398182061213626E+02;
const D512: f64 = -0.93321305264302278729567221706E+01;
const D513: f64 = 0.15697238121770843886131091075E+02;
const D514: f64 = -0.31139403219565177677282850411E+02;
const D515: f64 = -0.93529243588444783865713862664E+01;
const D516: f64 = 0.35816841486394083752465898540E+02;

const D61: f64 = 0.19985053242002433820987653617E+02;
const D66: f64 = -0.38703730874935176555105901742E+03;
const D67: f64 = -0.18917813819516756882830838328E+03;
const D68: f64 = 0.52780815920542364900561016686E+03;
const D69: f64 = -0.11573902539959630126141871134E+02;
const D610: f64 = 0.68812326946963000169666922661E+01;
const D611: f64 = -0.10006050966910838403183860980E+01;
const D612: f64 = 0.77771377980534432092869265740E+00;
const D613: f64 = -0.27782057523535084065932004339E+01;
const D614: f64 = -0.60196695231264120758267380846E+02;
const D615: f64 = 0.84320405506677161018159903784E+02;
const D616: f64 = 0.11992291136182789328035130030E+02;

const D71: f64 = -0.25693933462703749003312586129E+02;
const D76: f64 = -0.15418974869023643374053993627E+03;
const D77: f64 = -0.23152937917604549567536039109E+03;
const D78: f64 = 0.35763911791061412378285349910E+03;
const D79: f64 = 0.93405324183624310003907691704E+02;
const D710: f64 = -0.37458323136451633156875139351E+02;
const D711: f64 = 0.10409964950896230045147246184E+03;
const D712: f64 = 0.29840293426660503123344363579E+02;
const D713: f64 = -0.43533456590011143754432175058E+02;
const D714: f64 = 0.96324553959188282948394950600E+02;
const D715: f64 = -0.39177261675615439165231486172E+02;
const D716: f64 = -0.14972683625798562581422125276E+03;
