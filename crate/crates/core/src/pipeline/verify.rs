//! End-to-end theorem verifiers: one seeded trial builds a curve, cuts it by two
//! hyperplanes, extracts the dual form and certifies what it is.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apolar::{detect_fermat, is_apolar_scheme, perp, FermatVerdict};
use crate::error::{input, Error, Result};
use crate::poly::{LinearFormPoint, Poly, RingSide};

use super::curve::{check_scroll_window, curve_on_scroll, plane_curve, CurveSource, EmbeddedCurve};
use super::cut::{gamma_cut, rational_cut, GammaCut};
use super::reduction::{artinian_reduction, ArtinianReduction, EtaPair};

/// Resampling budget for non-generic choices of `η`.
pub const ETA_RETRY_BUDGET: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremKind {
    ScrollFermat,
    PlaneWaring,
}

/// How the pair `η1, η2` is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EtaRegime {
    /// Through `N - 1` rational points of the surface, when it has minimal degree.
    #[default]
    Rational,
    /// Integer coefficients drawn at random.
    Generic,
}

/// Whether independent trials may run on the rayon pool.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyParams {
    pub kind: TheoremKind,
    pub s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub eta: EtaRegime,
    #[serde(skip)]
    pub timings: bool,
}

impl VerifyParams {
    pub fn scroll(s: u32, a1: u32, a2: u32) -> Self {
        VerifyParams {
            kind: TheoremKind::ScrollFermat,
            s,
            a1: Some(a1),
            a2: Some(a2),
            m: None,
            eta: EtaRegime::default(),
            timings: false,
        }
    }

    pub fn plane(m: u32, s: u32) -> Self {
        VerifyParams {
            kind: TheoremKind::PlaneWaring,
            s,
            a1: None,
            a2: None,
            m: Some(m),
            eta: EtaRegime::default(),
            timings: false,
        }
    }

    pub fn with_eta(mut self, eta: EtaRegime) -> Self {
        self.eta = eta;
        self
    }

    pub fn with_timings(mut self, on: bool) -> Self {
        self.timings = on;
        self
    }

    /// Checks the parameter window; the message names the violated inequality.
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            TheoremKind::ScrollFermat => {
                let (Some(a1), Some(a2)) = (self.a1, self.a2) else {
                    return input("scroll-fermat needs a1 and a2");
                };
                check_scroll_window(self.s, a1, a2)
            }
            TheoremKind::PlaneWaring => {
                let Some(m) = self.m else {
                    return input("plane-waring needs m");
                };
                if m == 0 {
                    return input("requires m >= 1");
                }
                if self.s < 2 {
                    return input("requires s >= 2");
                }
                Ok(())
            }
        }
    }

    /// `N`, the dimension of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        match self.kind {
            TheoremKind::ScrollFermat => (self.a1.unwrap_or(0) + self.a2.unwrap_or(0) + 1) as usize,
            TheoremKind::PlaneWaring => {
                let m = self.m.unwrap_or(0) as usize;
                m * (m + 3) / 2
            }
        }
    }
}

/// Deterministic per-trial seed.
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut z = seed.wrapping_add((trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaReport {
    pub length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<LinearFormPoint>>,
    pub apolar: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Timings {
    pub curve: f64,
    pub normality: f64,
    pub reduction: f64,
    pub fermat: f64,
    pub gamma: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub params: VerifyParams,
    pub seed: u64,
    pub trial: usize,
    pub normality: Vec<bool>,
    pub hilbert_function: Vec<usize>,
    pub dual_form: Option<String>,
    pub fermat_verdict: FermatVerdict,
    pub gamma: Option<GammaReport>,
    pub timings_ms: Option<Timings>,
}

impl PipelineReport {
    /// Whether the trial confirms the theorem for its kind.
    pub fn confirmed(&self) -> bool {
        match self.params.kind {
            TheoremKind::ScrollFermat => self.fermat_verdict.is_fermat(),
            TheoremKind::PlaneWaring => self.gamma.as_ref().is_some_and(|g| g.apolar),
        }
    }

    pub fn dual_form_poly(&self) -> Result<Option<Poly>> {
        let Some(text) = &self.dual_form else {
            return Ok(None);
        };
        Poly::parse_as(text, RingSide::Point, self.params.ambient_dim() - 1).map(Some)
    }

    /// Re-checks the verdict and the stored points against the stored dual form.
    pub fn reverify(&self) -> Result<bool> {
        let Some(f) = self.dual_form_poly()? else {
            return Ok(!self.fermat_verdict.is_fermat());
        };
        let d = self.params.s + 2;
        if f.homogeneous_degree() != Some(d) || !self.fermat_verdict.reverify(&f)? {
            return Ok(false);
        }
        let hf = crate::apolar::hilbert_function(&f)?;
        if hf != self.hilbert_function {
            return Ok(false);
        }
        if let Some(GammaReport {
            points: Some(points),
            apolar,
            length,
        }) = &self.gamma
        {
            if points.len() != *length || is_apolar_scheme(points, &f)?.apolar != *apolar {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

fn build_curve(
    params: &VerifyParams,
    equation: Option<&Poly>,
    rng: &mut ChaCha8Rng,
) -> Result<EmbeddedCurve> {
    let source = match equation {
        Some(g) => CurveSource::Equation(g.clone()),
        None => CurveSource::Sample(rng),
    };
    match params.kind {
        TheoremKind::ScrollFermat => curve_on_scroll(
            params.s,
            params.a1.unwrap_or(0),
            params.a2.unwrap_or(0),
            source,
        ),
        TheoremKind::PlaneWaring => plane_curve(params.m.unwrap_or(0), params.s, source),
    }
}

/// Picks `η`, reduces and cuts, resampling `η` when it turns out not to be general.
fn reduce_and_cut(
    x: &EmbeddedCurve,
    regime: EtaRegime,
    rng: &mut ChaCha8Rng,
) -> Result<(ArtinianReduction, GammaCut)> {
    let surface = x.surface();
    let minimal = surface.degree() as usize + 1 == surface.ambient_dim();
    let top = x.s() + 3;
    let mut last = String::new();
    for attempt in 0..ETA_RETRY_BUDGET {
        let picked = if regime == EtaRegime::Rational && minimal {
            rational_cut(surface, Some(x.equation()), top, rng).map(|c| (c.eta, Some(c.gamma)))
        } else {
            Ok((EtaPair::random(rng, surface.coordinates().len()), None))
        };
        let step = picked.and_then(|(eta, gamma)| {
            let reduction = artinian_reduction(x, &eta)?;
            let gamma = match gamma {
                Some(g) => g,
                None => gamma_cut(surface, &eta, top)?,
            };
            Ok((reduction, gamma))
        });
        match step {
            Ok(found) => return Ok(found),
            Err(Error::Structural(msg)) | Err(Error::Input(msg)) => {
                log::debug!("η attempt {attempt}: {msg}");
                last = msg;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Undetermined(format!(
        "no general η in {ETA_RETRY_BUDGET} attempts: {last}"
    )))
}

fn undetermined(
    params: &VerifyParams,
    seed: u64,
    trial: usize,
    normality: Vec<bool>,
    err: &Error,
) -> PipelineReport {
    PipelineReport {
        params: params.clone(),
        seed,
        trial,
        normality,
        hilbert_function: Vec::new(),
        dual_form: None,
        fermat_verdict: FermatVerdict::Undetermined {
            reason: err.to_string(),
        },
        gamma: None,
        timings_ms: None,
    }
}

/// Runs one trial; errors are folded into the report.
pub fn run_trial(params: &VerifyParams, seed: u64, trial: usize) -> PipelineReport {
    run_trial_with(params, seed, trial, None)
}

/// As [`run_trial`], with the curve equation given in Cox variables instead of sampled.
pub fn run_trial_with(
    params: &VerifyParams,
    seed: u64,
    trial: usize,
    equation: Option<&Poly>,
) -> PipelineReport {
    let start = Instant::now();
    let mut timings = Timings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
    let t = Instant::now();
    let x = match build_curve(params, equation, &mut rng) {
        Ok(x) => x,
        Err(e) => return undetermined(params, seed, trial, Vec::new(), &e),
    };
    timings.curve = ms(t);
    let t = Instant::now();
    let normality = match x.normality() {
        Ok(v) => v.to_vec(),
        Err(e) => return undetermined(params, seed, trial, Vec::new(), &e),
    };
    timings.normality = ms(t);
    if let Some(j) = normality[..=(params.s + 1) as usize]
        .iter()
        .position(|ok| !ok)
    {
        let e = Error::Structural(format!("the curve is not {}-normal", j + 1));
        return undetermined(params, seed, trial, normality, &e);
    }
    let t = Instant::now();
    let (reduction, gamma) = match reduce_and_cut(&x, params.eta, &mut rng) {
        Ok(v) => v,
        Err(e) => return undetermined(params, seed, trial, normality, &e),
    };
    let f = match reduction.dual_form() {
        Ok(f) => f,
        Err(e) => return undetermined(params, seed, trial, normality, &e),
    };
    timings.reduction = ms(t);
    let t = Instant::now();
    let fermat_seed = rng.gen::<u64>();
    let fermat_verdict =
        detect_fermat(&f, fermat_seed).unwrap_or_else(|e| FermatVerdict::Undetermined {
            reason: e.to_string(),
        });
    timings.fermat = ms(t);
    let t = Instant::now();
    let apolar = match &gamma.points {
        Some(points) => is_apolar_scheme(points, &f).map(|c| c.apolar),
        None => perp(&f).map(|p| {
            (1..=params.s + 2).all(|e| p.ideal().piece(e).contains_subspace(gamma.ideal.piece(e)))
        }),
    };
    let gamma_report = match apolar {
        Ok(apolar) => Some(GammaReport {
            length: gamma.length,
            points: gamma.points.clone(),
            apolar,
        }),
        Err(e) => return undetermined(params, seed, trial, normality, &e),
    };
    timings.gamma = ms(t);
    timings.total = ms(start);
    log::info!(
        "trial {trial}: {} in {:.1} ms",
        fermat_verdict.tag(),
        timings.total
    );
    PipelineReport {
        params: params.clone(),
        seed,
        trial,
        normality,
        hilbert_function: reduction.hilbert_function().to_vec(),
        dual_form: Some(f.to_string()),
        fermat_verdict,
        gamma: gamma_report,
        timings_ms: params.timings.then_some(timings),
    }
}

/// Runs `trials` independent trials, returned in trial order.
pub fn verify_theorem(
    params: &VerifyParams,
    trials: usize,
    seed: u64,
    exec: Exec,
) -> Result<Vec<PipelineReport>> {
    params.validate()?;
    Ok(match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            (0..trials)
                .into_par_iter()
                .map(|t| run_trial(params, seed, t))
                .collect()
        }
        _ => (0..trials).map(|t| run_trial(params, seed, t)).collect(),
    })
}
