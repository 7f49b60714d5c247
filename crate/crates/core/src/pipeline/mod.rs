//! From a curve on a surface to its dual form and a certificate of what that form is.

pub mod curve;
pub mod cut;
pub mod reduction;
pub mod verify;

pub use curve::{
    check_scroll_window, curve_ideal_piece, curve_on_scroll, normality_check, plane_curve,
    restriction_rank, sections_on_curve, CurveSource, CurveSummary, EmbeddedCurve,
};
pub use cut::{gamma_cut, rational_cut, GammaCut, RationalCut, CUT_RETRY_BUDGET};
pub use reduction::{
    alpha_map, artinian_reduction, cut_ideal, expected_quartic_hf, ArtinianReduction, EtaPair,
    SectionCoordinates,
};
pub use verify::{
    run_trial, run_trial_with, trial_seed, verify_theorem, EtaRegime, Exec, GammaReport,
    PipelineReport, TheoremKind, Timings, VerifyParams, ETA_RETRY_BUDGET,
};
