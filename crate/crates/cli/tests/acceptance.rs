//! Acceptance suite. Prints one line per criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use apw_core::apolar::{
    detect_fermat, dual_socle_generator, fermat_perp, is_apolar_scheme, perp, waring_from_points,
    ArtinianGorenstein, FermatDecomposition, FermatVerdict, NotFermatWitness,
};
use apw_core::linalg::{rat, Rational};
use apw_core::pipeline::{
    artinian_reduction, curve_on_scroll, cut_ideal, gamma_cut, plane_curve, verify_theorem,
    CurveSource, EmbeddedCurve, EtaPair, EtaRegime, Exec, SectionCoordinates, VerifyParams,
};
use apw_core::poly::{
    apolar_apply, power_of_linear_form, GradedBasis, LinearFormPoint, Poly, RingSide,
};
use apw_core::surfaces::{adjunction_genus, curve_invariants, subcanonical_class};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const REDUCTION_LIST: [(u32, u32, u32); 4] = [(2, 1, 1), (2, 2, 1), (2, 2, 2), (2, 3, 1)];
const SOCLE_LIST: [(u32, u32, u32); 3] = [(3, 1, 1), (3, 2, 1), (4, 1, 1)];
const END_TO_END: [(u32, u32, u32); 5] = [(2, 1, 1), (2, 2, 1), (2, 2, 2), (3, 1, 1), (3, 2, 1)];

fn sampled_curve(s: u32, a1: u32, a2: u32, seed: u64) -> (EmbeddedCurve, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = curve_on_scroll(s, a1, a2, CurveSource::Sample(&mut rng)).expect("curve in the window");
    (x, rng)
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32) -> Poly {
    let basis = GradedBasis::new(n, d);
    loop {
        let c: Vec<Rational> = (0..basis.len())
            .map(|_| rat(rng.gen_range(-9..=9)))
            .collect();
        let f = Poly::from_dense(RingSide::Point, &basis, &c);
        if !f.is_zero() {
            return f;
        }
    }
}

fn distinct_points(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<LinearFormPoint> {
    let mut out: Vec<LinearFormPoint> = Vec::new();
    while out.len() < k {
        let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-5..=5)).collect();
        if let Ok(p) = LinearFormPoint::from_i64(&c) {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn fermat_form(r: usize, d: u32) -> Poly {
    let mut f = Poly::zero(RingSide::Point, r);
    for i in 0..r {
        f = &f + &Poly::var(RingSide::Point, r, i).pow(d);
    }
    f
}

/// `C0^2 = -e`, `C0.f = 1`, `f^2 = 0`, classes written as `x C0 + y f`.
fn dot(e: i64, (x1, y1): (i64, i64), (x2, y2): (i64, i64)) -> i64 {
    -e * x1 * x2 + x1 * y2 + x2 * y1
}

/// Genus of `C = sH - K` on the scroll by adjunction, `H = C0 + a1 f`.
fn adjunction_oracle(s: u32, a1: u32, a2: u32) -> i64 {
    let (s, a1, e) = (s as i64, a1 as i64, (a1 - a2) as i64);
    let k = (-2, -(e + 2));
    let c = (s - k.0, s * a1 - k.1);
    1 + (dot(e, c, c) + dot(e, k, c)) / 2
}

fn genus_oracle(s: u32, a1: u32, a2: u32) -> i64 {
    let (s, a) = (s as i64, (a1 + a2) as i64);
    (s + 1) * (s * a + 2) / 2
}

/// `(1, N-1, g-2N-1, N-1, 1)`.
fn quartic_hf_oracle(s: u32, a1: u32, a2: u32) -> Vec<usize> {
    let n = (a1 + a2 + 1) as i64;
    let g = genus_oracle(s, a1, a2);
    [1, n - 1, g - 2 * n - 1, n - 1, 1]
        .iter()
        .map(|&v| v as usize)
        .collect()
}

fn fermat_perp_identity() {
    for r in 1..=6 {
        for d in 3..=6 {
            let p = perp(&fermat_form(r, d)).unwrap();
            let q = fermat_perp(r, d).unwrap();
            for e in 0..=d + 1 {
                assert_eq!(p.ideal().piece(e), q.ideal().piece(e), "r={r} d={d} e={e}");
            }
        }
    }
}

fn macaulay_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..120 {
        let n = 1 + i % 3;
        let d = 1 + (i / 3) as u32 % 4;
        let f = random_form(&mut rng, n, d);
        let a = ArtinianGorenstein::from_apolar(&perp(&f).unwrap()).unwrap();
        let g = dual_socle_generator(&a).unwrap();
        assert!(g.proportionality(&f).is_some(), "{f} vs {g}");
    }
}

fn apolarity_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..240 {
        let n = 1 + i % 3;
        let d = 2 + (i / 3) as u32 % 3;
        let k = if n == 1 { 1 } else { rng.gen_range(1..=5) };
        let points = distinct_points(&mut rng, n, k);
        let f = if i % 2 == 0 {
            let mut f = Poly::zero(RingSide::Point, n);
            while f.is_zero() {
                for p in &points {
                    let l = rat(rng.gen_range(-4..=4));
                    f = &f + &power_of_linear_form(p, d).unwrap().scale(&l);
                }
            }
            f
        } else {
            random_form(&mut rng, n, d)
        };
        let apolar = is_apolar_scheme(&points, &f).unwrap().apolar;
        let decomposition = waring_from_points(&points, &f).unwrap();
        assert_eq!(apolar, decomposition.is_some(), "{f} at {points:?}");
        if i % 2 == 0 {
            assert!(apolar);
        }
    }
}

fn divisor_grid() {
    let mut seen = 0;
    for s in 2..=5u32 {
        for a1 in 1..=5u32 {
            for a2 in 1..=a1 {
                if a1 > (s + 1) * a2 + 2 {
                    continue;
                }
                let inv = curve_invariants(s, a1, a2).unwrap();
                let oracle = adjunction_oracle(s, a1, a2);
                assert_eq!(inv.genus, oracle, "({s},{a1},{a2})");
                assert_eq!(
                    adjunction_genus(subcanonical_class(s, a1, a2).unwrap()),
                    oracle
                );
                assert_eq!(genus_oracle(s, a1, a2), oracle);
                assert_eq!(inv.ambient_dim, a1 + a2 + 1);
                seen += 1;
            }
        }
    }
    assert!(seen >= 50, "grid too small: {seen}");
}

fn quartic_hilbert_function() {
    for (s, a1, a2) in REDUCTION_LIST {
        for seed in 0..3 {
            let (x, mut rng) = sampled_curve(s, a1, a2, seed);
            let eta = EtaPair::random(&mut rng, x.ambient_dim() + 1);
            let red = artinian_reduction(&x, &eta).unwrap();
            assert_eq!(
                red.hilbert_function(),
                quartic_hf_oracle(s, a1, a2).as_slice()
            );
        }
    }
    assert_eq!(quartic_hf_oracle(2, 1, 1), [1, 2, 2, 2, 1]);
    assert_eq!(quartic_hf_oracle(2, 2, 1), [1, 3, 3, 3, 1]);
}

fn socle_structure() {
    for (s, a1, a2) in SOCLE_LIST {
        for seed in 0..2 {
            let (x, mut rng) = sampled_curve(s, a1, a2, seed);
            let eta = EtaPair::random(&mut rng, x.ambient_dim() + 1);
            let coords = SectionCoordinates::choose(&eta).unwrap();
            let top = s + 4;
            let hf = cut_ideal(x.surface(), &eta, &coords, Some(x.equation()), top)
                .unwrap()
                .hilbert_function();
            let d = (s + 2) as usize;
            assert_eq!((hf[0], hf[d]), (1, 1), "({s},{a1},{a2}) {hf:?}");
            assert!(hf[d + 1..].iter().all(|&h| h == 0), "{hf:?}");
            assert!(hf[..=d].iter().eq(hf[..=d].iter().rev()), "{hf:?}");
        }
    }
}

fn end_to_end() {
    for (s, a1, a2) in END_TO_END {
        for regime in [EtaRegime::Rational, EtaRegime::Generic] {
            let params = VerifyParams::scroll(s, a1, a2).with_eta(regime);
            let reports = verify_theorem(&params, 5, 0, Exec::Parallel).unwrap();
            assert_eq!(reports.len(), 5);
            for r in &reports {
                let FermatVerdict::CertifiedFermat(dec) = &r.fermat_verdict else {
                    panic!("({s},{a1},{a2}) {regime:?}: {:?}", r.fermat_verdict);
                };
                if regime == EtaRegime::Rational {
                    let FermatDecomposition::Rational { points, lambdas } = dec else {
                        panic!("rational cut without explicit decomposition");
                    };
                    assert_eq!(points.len(), (a1 + a2) as usize);
                    assert!(lambdas.iter().all(|l| *l != rat(0)));
                }
                assert!(r.reverify().unwrap());
            }
        }
    }
}

fn normality() {
    let list = REDUCTION_LIST.iter().chain(&SOCLE_LIST).chain(&END_TO_END);
    for &(s, a1, a2) in list {
        let (x, _) = sampled_curve(s, a1, a2, 0);
        let n = x.normality().unwrap();
        assert_eq!(n.len(), (s + 3) as usize);
        assert!(n.iter().all(|&ok| ok), "({s},{a1},{a2}) {n:?}");
    }
}

fn plane_waring() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = plane_curve(1, 2, CurveSource::Sample(&mut rng)).unwrap();
    let eta = EtaPair::random(&mut rng, x.ambient_dim() + 1);
    let red = artinian_reduction(&x, &eta).unwrap();
    let f = red.dual_form().unwrap();
    assert_eq!(red.hilbert_function(), [1, 1, 1, 1, 1]);
    assert_eq!((f.len(), f.homogeneous_degree()), (1, Some(4)));

    for s in [2, 3] {
        let x = plane_curve(2, s, CurveSource::Sample(&mut rng)).unwrap();
        let eta = EtaPair::random(&mut rng, x.ambient_dim() + 1);
        let red = artinian_reduction(&x, &eta).unwrap();
        let f = red.dual_form().unwrap();
        let gamma = gamma_cut(x.surface(), &eta, s + 2).unwrap();
        assert_eq!(gamma.length, 4);
        assert_eq!(&gamma.coordinates, red.coordinates());
        for e in 1..=s + 2 {
            for q in gamma.ideal.basis(e) {
                assert!(apolar_apply(&q, &f).unwrap().is_zero(), "s={s} e={e}");
            }
        }
        if s == 2 {
            assert_eq!(red.hilbert_function(), [1, 4, 4, 4, 1]);
            assert_eq!((x.genus(), x.ambient_dim()), (15, 5));
        }
    }
}

fn negative_controls() {
    type Expect = fn(&NotFermatWitness) -> bool;
    let cases: [(&str, Expect); 3] = [
        ("x0^3*x1", |w| {
            matches!(w, NotFermatWitness::NonReduced { .. })
        }),
        ("x0^2*x1^2", |w| {
            matches!(w, NotFermatWitness::QuadricCount { .. })
        }),
        ("x0^4+x0*x1^3", |w| {
            matches!(
                w,
                NotFermatWitness::QuadricCount {
                    found: 0,
                    expected: 1
                }
            )
        }),
    ];
    for (text, expected) in cases {
        let f = Poly::parse(text).unwrap();
        let FermatVerdict::CertifiedNot(w) = detect_fermat(&f, 0).unwrap() else {
            panic!("{text} not certified negative");
        };
        assert!(expected(&w), "{text}: {w:?}");
        assert!(w.reverify(&f).unwrap());
    }

    let apw = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_apw"))
            .args(args)
            .env_remove("APW_LOG")
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(apw(&["fermat", "x0^4+x1^4"]), Some(0));
    assert_eq!(apw(&["fermat", "x0^3*x1"]), Some(1));
    assert_eq!(apw(&["fermat", "x0^3+x1"]), Some(2));
    assert_eq!(
        apw(&[
            "verify",
            "scroll-fermat",
            "--s",
            "2",
            "--a1",
            "6",
            "--a2",
            "1"
        ]),
        Some(2)
    );
    assert_eq!(
        apw(&["dual", "d0*d1", "d0^4-d1^4", "--degree-cap", "4"]),
        Some(3)
    );
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 10] = [
        ("fermat perp identity", fermat_perp_identity),
        ("macaulay round trip", macaulay_round_trip),
        ("apolarity lemma", apolarity_lemma),
        ("divisor formula grid", divisor_grid),
        (
            "quartic reduction hilbert function",
            quartic_hilbert_function,
        ),
        ("gorenstein socle", socle_structure),
        ("scroll fermat end to end", end_to_end),
        ("projective normality", normality),
        ("plane curves and waring", plane_waring),
        ("negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let secs = start.elapsed().as_secs_f64();
        println!(
            "criterion {:>2} {name:<36} {} ({secs:.1}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        failed += usize::from(!ok);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
