//! Self-test suites: the property checks of every module at two depths.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::curvecoh::{
    curve_from_poly_with, essentiality_report, h_curve, riemann_roch, sigma_essential_curve, triviality_check, CurveOptions,
};
use crate::exactnum::{BiPoly, GaussianRational as G, Matrix, Mobius, Poly1, ProjPoint, Scalar};
use crate::monopole::{
    axisym_build, expected_splitting, lambda_kernel, massless_build, massless_intersection, massless_splitting,
    lambda_cohomology, symmetric_roots, MasslessFrames, MasslessPair,
};
use crate::p1p1coh::cech::{cech_h, cech_mult};
use crate::p1p1coh::{h_line, mult_poly, sheaf_cohomology, verify_regularity, CohBasis, Resolution};
use crate::plurilinear::curve::support_curve;
use crate::plurilinear::random::random_candidate;
use crate::plurilinear::structures::{extension_j, real_eigen_kernel_dim, reparameterize};
use crate::plurilinear::{
    char_poly, is_hypercomplex, normalize_degree_one, random_pair, validate, PluriPair, Status, ValidateOptions,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Smoke,
    Full,
}

impl Level {
    pub fn as_str(self) -> &'static str {
        match self {
            Level::Smoke => "smoke",
            Level::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "smoke" => Some(Level::Smoke),
            "full" => Some(Level::Full),
            _ => None,
        }
    }

    fn pick(self, smoke: usize, full: usize) -> usize {
        if self == Level::Smoke { smoke } else { full }
    }
}

/// Float tolerance for the monopole checks.
pub const MONOPOLE_TOL: f64 = 1e-8;
/// Residual bound for the degree-one normalization round trip.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: Value,
    /// Inputs of the first failing case.
    pub reproducer: Option<Value>,
    pub seconds: f64,
}

impl CriterionResult {
    /// Report entry; timing is left out so that reruns are byte-identical.
    pub fn to_json(&self) -> Value {
        let mut out = json!({"id": self.id, "title": self.title, "passed": self.passed, "detail": self.detail});
        if let Some(r) = &self.reproducer {
            out["reproducer"] = r.clone();
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub level: Level,
    pub seed: u64,
    pub results: Vec<CriterionResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "level": self.level.as_str(),
            "seed": self.seed,
            "passed": self.passed(),
            "criteria": self.results.iter().map(CriterionResult::to_json).collect::<Vec<_>>(),
        })
    }
}

pub const CRITERIA: [(u32, &str); 12] = [
    (1, "hypercomplex recognition"),
    (2, "defining vanishings"),
    (3, "strong regularity"),
    (4, "even-dimension obstruction"),
    (5, "hypercomplex extension"),
    (6, "degree-one normalization round trip"),
    (7, "cohomology oracle"),
    (8, "curve genus and Riemann-Roch"),
    (9, "sigma-essentiality counterexample"),
    (10, "axisymmetric kernel"),
    (11, "massless model"),
    (12, "massless cohomology ingredients"),
];

fn sub_seed(seed: u64, id: u32, i: u64) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(id as u64 * 100_003).wrapping_add(i)
}

struct Outcome {
    passed: bool,
    detail: Value,
    reproducer: Option<Value>,
}

fn fail_first(rep: &mut Option<Value>, v: Value) {
    if rep.is_none() {
        *rep = Some(v);
    }
}

/// Certified random pairs shared by the vanishing and regularity checks.
pub fn suite_pairs(level: Level, seed: u64) -> Vec<(usize, u64, PluriPair<G>)> {
    let count = level.pick(4, 100);
    (0..count as u64)
        .filter_map(|i| {
            let n = if level == Level::Smoke || i % 2 == 0 { 2 } else { 4 };
            let s = sub_seed(seed, 2, i);
            random_pair(n, s, 0.3).ok().map(|p| (n, s, p))
        })
        .collect()
}

fn c1() -> Outcome {
    let t = Instant::now();
    let hyp = PluriPair::<G>::standard_hypercomplex(2).expect("n = 2");
    let diag = BiPoly::from_table(vec![vec![G::from(0), G::from(-1)], vec![G::from(1), G::from(0)]]).expect("table");
    let cp = char_poly(&hyp);
    let square = cp == diag.mul(&diag);
    let k = support_curve(&hyp, 0.0).map(|s| s.k).unwrap_or(0);
    let hc = is_hypercomplex(&hyp);
    let secs = t.elapsed().as_secs_f64();
    Outcome {
        passed: square && k == 1 && hc && secs < 1.0,
        detail: json!({"char_poly_is_diagonal_squared": square, "degree": k, "is_hypercomplex": hc}),
        reproducer: None,
    }
}

fn c2(pairs: &[(usize, u64, PluriPair<G>)], wanted: usize) -> Outcome {
    let mut rep = None;
    let mut ok = 0;
    for (n, s, p) in pairs {
        let res = Resolution::from_pair(p).expect("certified pairs resolve");
        let mut good = true;
        for (a, b) in [(-1, -1), (-2, 0), (0, -2)] {
            let c = sheaf_cohomology(&res, a, b, 0.0);
            good &= (c.h0, c.h1) == (0, 0);
        }
        let c = sheaf_cohomology(&res, 0, 0, 0.0);
        good &= (c.h0, c.h1) == (2 * n, 0);
        if good {
            ok += 1;
        } else {
            fail_first(&mut rep, json!({"n": n, "seed": s, "scale": 0.3}));
        }
    }
    Outcome {
        passed: ok == pairs.len() && pairs.len() == wanted,
        detail: json!({"pairs": pairs.len(), "wanted": wanted, "passing": ok}),
        reproducer: rep,
    }
}

fn c3(pairs: &[(usize, u64, PluriPair<G>)], m_max: usize, wanted: usize) -> Outcome {
    let mut rep = None;
    let mut ok = 0;
    for (n, s, p) in pairs {
        let res = Resolution::from_pair(p).expect("certified pairs resolve");
        let r = verify_regularity(&res, m_max, 0.0);
        if r.passed() {
            ok += 1;
        } else {
            let f: Vec<_> = r.failures().into_iter().map(|t| json!([t.0, t.1])).collect();
            fail_first(&mut rep, json!({"n": n, "seed": s, "scale": 0.3, "failing_twists": f}));
        }
    }
    Outcome {
        passed: ok == pairs.len() && pairs.len() == wanted,
        detail: json!({"pairs": pairs.len(), "m_max": m_max, "passing": ok}),
        reproducer: rep,
    }
}

fn c4(level: Level, seed: u64) -> Outcome {
    let per_scale = level.pick(10, 334);
    let opts = ValidateOptions { samples: 1024, ..Default::default() };
    let mut certified = 0;
    let mut tried = 0;
    let mut counts = serde_json::Map::new();
    let mut rep = None;
    for n in [1usize, 3] {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 4, n as u64));
        let mut tally = [0usize; 3];
        for scale in [0.1, 1.0, 3.0] {
            for _ in 0..per_scale {
                let cand = random_candidate(n, &mut rng, scale);
                tried += 1;
                let st = validate(&cand, &opts).status;
                tally[match st {
                    Status::Certified => 0,
                    Status::Invalid => 1,
                    Status::Unknown => 2,
                }] += 1;
                if st == Status::Certified {
                    certified += 1;
                    fail_first(&mut rep, json!({"n": n, "pair": cand.to_json()}));
                }
            }
        }
        counts.insert(format!("n={n}"), json!({"certified": tally[0], "invalid": tally[1], "unknown": tally[2]}));
    }
    Outcome { passed: certified == 0, detail: json!({"candidates": tried, "verdicts": counts}), reproducer: rep }
}

fn random_gaussian(rng: &mut ChaCha8Rng, range: i64, den_max: i64) -> G {
    let den = rng.gen_range(1..=den_max);
    G::from_fracs((rng.gen_range(-range..=range), den), (rng.gen_range(-range..=range), den))
}

fn c5(level: Level, seed: u64) -> Outcome {
    let count = level.pick(5, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 5, 0));
    let pairs = vec![
        ("hypercomplex", PluriPair::<G>::standard_hypercomplex(2).expect("n = 2")),
        ("random", random_pair(2, sub_seed(seed, 5, 1), 0.3).expect("certified pair")),
    ];
    let mut rep = None;
    let mut checked = 0;
    for (name, pair) in &pairs {
        let n = pair.n();
        for _ in 0..count {
            let z = ProjPoint::Finite(random_gaussian(&mut rng, 12, 6));
            let (Ok(j), Ok(ja)) = (extension_j(pair, &z), extension_j(pair, &z.antipode())) else {
                fail_first(&mut rep, json!({"pair": name, "zeta": z.finite().map(|x| x.to_json())}));
                continue;
            };
            let sq = j.mul(&j) == Matrix::scalar(2 * n, -G::from(1));
            let anti = ja == j.neg();
            let ker = real_eigen_kernel_dim(&j, 0.0);
            if sq && anti && ker == 0 {
                checked += 1;
            } else {
                fail_first(&mut rep, json!({"pair": name, "zeta": z.finite().map(|x| x.to_json()), "square": sq, "antipodal": anti, "kernel": ker}));
            }
        }
    }
    Outcome {
        passed: rep.is_none(),
        detail: json!({"points": checked, "pairs": pairs.len()}),
        reproducer: rep,
    }
}

fn c6(level: Level, seed: u64) -> Outcome {
    let count = level.pick(5, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 6, 0));
    let hyp = PluriPair::<Complex64>::standard_hypercomplex(2).expect("n = 2");
    let mut worst = 0.0f64;
    let mut rep = None;
    let mut done = 0;
    while done < count {
        let mut e = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let (a, b, c, d) = (e(), e(), e(), e());
        if (a * d - b * c).norm() < 0.2 {
            continue;
        }
        done += 1;
        let g = Mobius::new(a, b, c, d).expect("checked determinant");
        let res = reparameterize(&hyp, &g).and_then(|moved| normalize_degree_one(&moved, 1e-9)).map(|nz| nz.residual);
        let r = res.unwrap_or(f64::INFINITY);
        worst = worst.max(r);
        if r >= NORMALIZATION_TOL {
            fail_first(&mut rep, json!({"g": g.entries().iter().map(|x| x.to_json()).collect::<Vec<_>>(), "residual": r}));
        }
    }
    Outcome { passed: rep.is_none(), detail: json!({"maps": count, "max_residual": worst}), reproducer: rep }
}

fn c7(level: Level, seed: u64) -> Outcome {
    let r = level.pick(2, 4) as i64;
    let mut dims_ok = true;
    let mut rep = None;
    for a in -r..=r {
        for b in -r..=r {
            if h_line(a, b) != cech_h(a, b) {
                dims_ok = false;
                fail_first(&mut rep, json!({"twist": [a, b]}));
            }
        }
    }
    let count = level.pick(10, 100);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 7, 0));
    let mut agree = 0;
    for _ in 0..count {
        let (p, q) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
        let f = BiPoly::from_fn(p, q, |_, _| G::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3)));
        let (a, b) = (rng.gen_range(-r..=r - p as i64), rng.gen_range(-r..=r - q as i64));
        let dst = (a + p as i64, b + q as i64);
        let mut same = true;
        for deg in 0..3 {
            let w = mult_poly(&f, &CohBasis::new(a, b, deg), &CohBasis::new(dst.0, dst.1, deg));
            same &= w == cech_mult(&f, (a, b), dst, deg);
        }
        if same {
            agree += 1;
        } else {
            fail_first(&mut rep, json!({"f": crate::exactnum::json::bipoly_to_json(&f), "src": [a, b]}));
        }
    }
    Outcome {
        passed: dims_ok && agree == count,
        detail: json!({"twist_box": r, "dimensions_agree": dims_ok, "polynomials": count, "maps_agree": agree}),
        reproducer: rep,
    }
}

fn c8(level: Level, seed: u64) -> Outcome {
    let kmax = level.pick(2, 4);
    let per_k = level.pick(1, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 8, 0));
    let opts = CurveOptions { certify: false, ..Default::default() };
    let mut rep = None;
    let mut curves = 0;
    for k in 1..=kmax {
        let mut made = 0;
        while made < per_k {
            let p = BiPoly::from_fn(k, k, |_, _| G::from_ints(rng.gen_range(-4..=4), rng.gen_range(-4..=4)));
            let sym = p.add(&p.sigma_transform(k).expect("bounds"));
            if sym.is_zero() {
                continue;
            }
            made += 1;
            curves += 1;
            let c = curve_from_poly_with(&sym, k, &[], &opts).expect("nonzero");
            let genus = h_curve(&c, 0, 0) == (1, (k - 1) * (k - 1)) && c.sigma_invariant();
            for _ in 0..10 {
                let (a, b) = (rng.gen_range(-5..=5i64), rng.gen_range(-5..=5i64));
                let (h0, h1) = h_curve(&c, a, b);
                if h0 as i64 - h1 as i64 != riemann_roch(k, a, b) {
                    fail_first(&mut rep, json!({"P": crate::exactnum::json::bipoly_to_json(&sym), "k": k, "twist": [a, b]}));
                }
            }
            if !genus {
                fail_first(&mut rep, json!({"P": crate::exactnum::json::bipoly_to_json(&sym), "k": k}));
            }
        }
    }
    Outcome { passed: rep.is_none(), detail: json!({"curves": curves, "k_max": kmax, "twists_per_curve": 10}), reproducer: rep }
}

fn c9() -> Outcome {
    let curve = sigma_essential_curve();
    let r = essentiality_report(&curve);
    Outcome {
        passed: r.counterexample() && r.h0_structure == 1 && r.h0_f_minus == 1,
        detail: json!({"P": crate::exactnum::json::bipoly_to_json(&curve.poly), "report": r.to_json()}),
        reproducer: None,
    }
}

fn c10(level: Level, seed: u64) -> Outcome {
    let ks: Vec<usize> = if level == Level::Smoke { vec![2, 3] } else { vec![2, 3, 4, 5] };
    let per_k = level.pick(3, 50);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 10, 0));
    let mut rep = None;
    let mut done = 0;
    for &k in &ks {
        for _ in 0..per_k {
            let two_m = rng.gen_range(1..=6u32);
            let rho = rng.gen_range(0.5..2.0);
            let mut pick = |len: usize| rng.gen_range(0..len);
            let roots = symmetric_roots(k, two_m, rho, &mut pick).expect("enough conjugate pairs");
            let case = || json!({"k": k, "two_m": two_m, "roots": roots.iter().map(|r| r.to_json()).collect::<Vec<_>>()});
            let Ok((mono, curve)) = axisym_build(k, two_m, &roots, MONOPOLE_TOL) else {
                fail_first(&mut rep, case());
                continue;
            };
            let h = h_curve(&curve, k as i64 - 2, k as i64).0 == k * k;
            let triv = triviality_check(&curve, mono.exponent())
                .map(|t| t.h0 >= 1 && t.nowhere_vanishing() == Some(true))
                .unwrap_or(false);
            let lam = lambda_kernel(&mono, &curve).map(|l| l.b_zero && l.domain_dim == k * k).unwrap_or(false);
            if h && triv && lam {
                done += 1;
            } else {
                let mut c = case();
                c["h0_is_k2"] = json!(h);
                c["trivial"] = json!(triv);
                c["b_zero"] = json!(lam);
                fail_first(&mut rep, c);
            }
        }
    }
    Outcome {
        passed: rep.is_none(),
        detail: json!({"charges": ks, "configurations_per_charge": per_k, "passing": done, "tolerance": MONOPOLE_TOL}),
        reproducer: rep,
    }
}

fn random_massless(rng: &mut ChaCha8Rng, k: usize) -> MasslessPair<G> {
    loop {
        let mut coeffs = |d: usize| Poly1::new((0..=d).map(|_| G::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3))).collect());
        let (p, q) = (coeffs(k), coeffs(k));
        if let Ok(m) = MasslessPair::new(k, p, q, 0.0) {
            return m;
        }
    }
}

fn c11(level: Level, seed: u64) -> Outcome {
    let kmax = level.pick(2, 3);
    let per_k = level.pick(3, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, 11, 0));
    let opts = CurveOptions { certify: false, ..Default::default() };
    let mut rep = None;
    let mut done = 0;
    for k in 1..=kmax {
        let mut made = 0;
        while made < per_k {
            let pair = random_massless(&mut rng, k);
            let (data, _) = massless_build(&pair, &opts).expect("valid pair");
            let z0 = random_gaussian(&mut rng, 20, 9);
            let z1 = random_gaussian(&mut rng, 20, 9);
            let Ok(frames) = MasslessFrames::new(&data, 0.0) else { continue };
            let (Ok(f0), Ok(_)) = (frames.frame(&z0), frames.frame(&z1)) else { continue };
            if z0 == z1 {
                continue;
            }
            made += 1;
            let d1 = f0.cols() == 2 * k;
            let inter = massless_intersection(&data, &z0, &z1, 0.0).map(|d| d == 2 * k - 2).unwrap_or(false);
            let split = massless_splitting(&data, 3, sub_seed(seed, 11, made as u64), 0.0)
                .map(|p| p.degrees == expected_splitting(k) && p.d.get(1) == Some(&(2 * k)))
                .unwrap_or(false);
            if d1 && inter && split {
                done += 1;
            } else {
                fail_first(&mut rep, json!({"pair": pair.to_json(), "zeta0": z0.to_json(), "zeta1": z1.to_json(), "d1": d1, "intersection": inter, "splitting": split}));
            }
        }
    }
    Outcome {
        passed: rep.is_none(),
        detail: json!({"k_max": kmax, "pairs_per_k": per_k, "passing": done}),
        reproducer: rep,
    }
}

fn c12(level: Level) -> Outcome {
    let kmax = level.pick(2, 4);
    let mut rep = None;
    let mut rows = Vec::new();
    for k in 1..=kmax {
        match lambda_cohomology(k) {
            Ok(r) => {
                if !(r.acyclic() && r.forced_dimension_ok()) {
                    fail_first(&mut rep, json!({"k": k}));
                }
                rows.push(r.to_json());
            }
            Err(e) => fail_first(&mut rep, json!({"k": k, "error": e.to_string()})),
        }
    }
    Outcome { passed: rep.is_none(), detail: json!({"reports": rows}), reproducer: rep }
}

/// Runs one criterion; pairs for criteria 2 and 3 are generated if not supplied.
pub fn run_criterion(id: u32, level: Level, seed: u64, pairs: Option<&[(usize, u64, PluriPair<G>)]>) -> CriterionResult {
    let t = Instant::now();
    let owned;
    let pairs = match pairs {
        Some(p) => p,
        None if id == 2 || id == 3 => {
            owned = suite_pairs(level, seed);
            &owned[..]
        }
        None => &[],
    };
    let wanted = level.pick(4, 100);
    let o = match id {
        1 => c1(),
        2 => c2(pairs, wanted),
        3 => c3(pairs, level.pick(2, 5), wanted),
        4 => c4(level, seed),
        5 => c5(level, seed),
        6 => c6(level, seed),
        7 => c7(level, seed),
        8 => c8(level, seed),
        9 => c9(),
        10 => c10(level, seed),
        11 => c11(level, seed),
        12 => c12(level),
        _ => Outcome { passed: false, detail: json!({"error": "unknown criterion"}), reproducer: None },
    };
    let title = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown", |c| c.1);
    CriterionResult { id, title, passed: o.passed, detail: o.detail, reproducer: o.reproducer, seconds: t.elapsed().as_secs_f64() }
}

/// All criteria at the given depth, in order; `progress` sees each result as it finishes.
pub fn run_suite(level: Level, seed: u64, progress: &mut dyn FnMut(&CriterionResult)) -> SuiteReport {
    let pairs = suite_pairs(level, seed);
    let mut results = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, level, seed, Some(&pairs));
        progress(&r);
        results.push(r);
    }
    SuiteReport { level, seed, results }
}
