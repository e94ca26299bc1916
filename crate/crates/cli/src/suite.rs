//! The full verification suite: every shipped identity check at its
//! documented desk-scale size, with one deterministic report per check.

use defcalc_core::calculus::{apply_difference_operator, check_leibniz, ShiftMap, UniPoly};
use defcalc_core::duality::{
    check_duality, check_rt_linearity, DualityParams, PolynomialModel,
};
use defcalc_core::glrep::{
    cartan_automorphism_check, check_casimir_central, check_omega_casimir_formula,
    check_omega_decomposition, check_omega_flip, RepSpace, SiteActions, TensorContext,
};
use defcalc_core::kzdd::{
    check_braid_identities, check_identity, CheckMode, IdentityCheck, KzContext, OperatorKind,
};
use defcalc_core::numbers::{deformed_number, specialize_number, DeformationParams, DeformedKind};
use defcalc_core::plane::{
    check_confluence, check_plane_specializations, solve_functional_equation,
};
use defcalc_core::rational::Rational;
use defcalc_core::ratfunc::RatFunc;
use defcalc_core::report::CheckReport;
use defcalc_core::series::{specialize_series, SeriesSpec};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

/// Suite selection and size bounds. Bounds stay within the documented
/// desk-scale limits (ranks <= 4, series order <= 16, model degree <= 4).
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub series_order: u32,
    pub model_degree: u32,
    pub trials: u32,
    /// substring filters on check names; empty means all
    pub select: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 7,
            series_order: 12,
            model_degree: 3,
            trials: 5,
            select: Vec::new(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.series_order > 16 {
            return Err("series order is capped at 16".to_string());
        }
        if self.model_degree > 4 {
            return Err("model degree is capped at 4".to_string());
        }
        if self.model_degree < 1 {
            return Err("model degree must be at least 1".to_string());
        }
        if self.trials < 1 {
            return Err("at least one probabilistic trial".to_string());
        }
        Ok(())
    }

    fn selected(&self, name: &str) -> bool {
        self.select.is_empty() || self.select.iter().any(|s| name.contains(s.as_str()))
    }
}

/// Runs every selected check and returns the reports sorted by name.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckReport> {
    let mut checks: Vec<CheckReport> = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut() -> Vec<CheckReport>| {
        if config.selected(name) {
            checks.extend(f());
        }
    };

    run("numbers/deformed-laws", &mut || {
        vec![numbers_deformed_laws()]
    });
    run("calculus/leibniz-random", &mut || {
        vec![leibniz_random(config.seed)]
    });
    run("calculus/monomial-law", &mut || vec![monomial_law()]);
    run("series/specializations", &mut || {
        series_specializations(config.series_order)
    });
    run("plane/confluence", &mut || {
        vec![check_confluence(200, 8, config.seed)]
    });
    run("plane/specializations", &mut || {
        vec![check_plane_specializations(config.seed)]
    });
    run("plane/funceq", &mut || vec![plane_funceq()]);
    run("glrep/", &mut || gl_structure());
    run("kz/eq", &mut || kz_decomposition());
    run("kz/flatness", &mut || {
        kz_flatness(config.seed, config.trials)
    });
    run("kz/braid", &mut || vec![kz_braid()]);
    run("duality/", &mut || duality_checks(config.model_degree));

    checks.sort_by(|a, b| a.check_name.cmp(&b.check_name));
    checks
}

/// Fixed points (0), (1) for every kind, and both Eq. (3) specializations
/// of the (q,eta)-number for all integers z in [-6, 6].
fn numbers_deformed_laws() -> CheckReport {
    let name = "numbers/deformed-laws";
    let params = DeformationParams::symbolic();
    for kind in DeformedKind::ALL {
        let one = deformed_number(1, kind, &params).expect("symbolic");
        let zero = deformed_number(0, kind, &params).expect("symbolic");
        if !one.is_one() || !zero.is_zero() {
            return CheckReport::fail(name, json!({ "kind": kind.to_string() }));
        }
    }
    for z in -6..=6 {
        let r = specialize_number(z);
        if !r.passed() {
            return CheckReport::fail(name, json!({ "z": z, "inner": r.witness }));
        }
    }
    CheckReport::pass(name).with_param("z_range", "[-6, 6]")
}

fn random_unipoly(rng: &mut ChaCha8Rng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs = (0..=deg)
        .map(|_| {
            let n = rng.gen_range(-9i64..=9);
            let d = rng.gen_range(1i64..=9);
            RatFunc::from_rational(Rational::new(n, d))
        })
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// Leibniz rule for 100 random polynomial pairs (degree <= 6) under each of
/// the three shift maps, exact.
fn leibniz_random(seed: u64) -> CheckReport {
    let name = "calculus/leibniz-random";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts = [
        ("q", ShiftMap::q_symbolic()),
        ("eta", ShiftMap::eta_symbolic()),
        ("q-eta", ShiftMap::q_eta_symbolic()),
    ];
    for (label, shift) in &shifts {
        for i in 0..100 {
            let f = random_unipoly(&mut rng, 6);
            let g = random_unipoly(&mut rng, 6);
            let r = check_leibniz(&f, &g, shift);
            if !r.passed() {
                return CheckReport::fail(
                    name,
                    json!({ "shift": label, "pair_index": i, "inner": r.witness }),
                )
                .with_param("seed", seed);
            }
        }
    }
    CheckReport::pass(name)
        .with_param("seed", seed)
        .with_param("pairs_per_shift", 100)
}

/// del_q x^n = (n)_q x^(n-1) for n <= 10, and del_{q,eta} x^2 = (1+q)x + eta.
fn monomial_law() -> CheckReport {
    let name = "calculus/monomial-law";
    let params = DeformationParams::symbolic();
    for n in 1..=10usize {
        let d = apply_difference_operator(&UniPoly::monomial(RatFunc::one(), n), &ShiftMap::q_symbolic())
            .expect("exact division");
        let nq = deformed_number(n as i64, DeformedKind::Q, &params).expect("symbolic");
        if !d.equal(&UniPoly::monomial(nq, n - 1)) {
            return CheckReport::fail(name, json!({ "n": n, "got": d.to_coeff_strings() }));
        }
    }
    let d = apply_difference_operator(
        &UniPoly::monomial(RatFunc::one(), 2),
        &ShiftMap::q_eta_symbolic(),
    )
    .expect("exact division");
    let expect = UniPoly::from_coeffs(vec![
        RatFunc::symbol("eta"),
        RatFunc::one().add(&RatFunc::symbol("q")),
    ]);
    if !d.equal(&expect) {
        return CheckReport::fail(name, json!({ "case": "qeta-x^2", "got": d.to_coeff_strings() }));
    }
    CheckReport::pass(name).with_param("max_n", 10)
}

/// Exponential specializations to the configured order and three
/// (q,eta)-hypergeometric parameter sets at q = 1 to order 8.
fn series_specializations(order: u32) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let exp_spec = SeriesSpec::exponential(DeformedKind::QEta, order);
    let mut exp_report = CheckReport::pass("series/exp-specializations").with_param("order", order);
    for target in [DeformedKind::Q, DeformedKind::Eta] {
        let r = specialize_series(&exp_spec, target).expect("valid route");
        if !r.passed() {
            exp_report = CheckReport::fail(
                "series/exp-specializations",
                json!({ "target": target.to_string(), "inner": r.witness }),
            );
            break;
        }
    }
    out.push(exp_report);

    let parameter_sets: [(&[i64], &[i64]); 3] = [(&[2], &[3]), (&[1, 3], &[2]), (&[-2], &[4])];
    let mut hyp_report = CheckReport::pass("series/hyp-specializations")
        .with_param("order", 8)
        .with_param("parameter_sets", json!(["a=[2],b=[3]", "a=[1,3],b=[2]", "a=[-2],b=[4]"]));
    'outer: for (a, b) in parameter_sets {
        let spec = SeriesSpec {
            upper: a.to_vec(),
            lower: b.to_vec(),
            kind: DeformedKind::QEta,
            order: 8,
        };
        let r = specialize_series(&spec, DeformedKind::Eta).expect("valid route");
        if !r.passed() {
            hyp_report = CheckReport::fail(
                "series/hyp-specializations",
                json!({ "a": a, "b": b, "inner": r.witness }),
            );
            break 'outer;
        }
    }
    out.push(hyp_report);
    out
}

fn plane_funceq() -> CheckReport {
    match solve_functional_equation(&DeformationParams::symbolic(), 6) {
        Ok(report) => report.to_check_report(),
        Err(e) => CheckReport::degenerate("plane/funceq", json!(e.to_string())),
    }
}

/// The gl_M battery: constructions with relation checks up to M = 4,
/// Casimir centrality, the Omega decomposition and Casimir presentation,
/// the flip identity, and the Cartan automorphism swap.
fn gl_structure() -> Vec<CheckReport> {
    let mut out = Vec::new();

    let mut relations = CheckReport::pass("glrep/relations")
        .with_param("vector_ranks", "1..=4")
        .with_param("symmetric_powers", json!(["S^2 C^2", "S^3 C^2", "S^2 C^3"]));
    let built: Result<Vec<RepSpace>, _> = (1..=4).map(RepSpace::vector).collect();
    let sym_built = RepSpace::symmetric_power(2, 2)
        .and_then(|_| RepSpace::symmetric_power(2, 3))
        .and_then(|_| RepSpace::symmetric_power(3, 2));
    if let Err(e) = built {
        relations = CheckReport::fail("glrep/relations", json!(e.to_string()));
    } else if let Err(e) = sym_built {
        relations = CheckReport::fail("glrep/relations", json!(e.to_string()));
    }
    out.push(relations);

    let contexts: Vec<(&str, TensorContext)> = vec![
        ("vector M=2 N=3", TensorContext::vector_power(2, 3).unwrap()),
        ("vector M=3 N=2", TensorContext::vector_power(3, 2).unwrap()),
        (
            "S^2C^2 x C^2",
            TensorContext::new(vec![
                RepSpace::symmetric_power(2, 2).unwrap(),
                RepSpace::vector(2).unwrap(),
            ])
            .unwrap(),
        ),
    ];
    for check in [
        check_casimir_central as fn(&SiteActions) -> CheckReport,
        check_omega_decomposition,
        check_omega_casimir_formula,
    ] {
        let mut merged: Option<CheckReport> = None;
        for (label, ctx) in &contexts {
            let mut r = check(&SiteActions::from_tensor(ctx));
            if !r.passed() {
                r = r.with_param("context", *label);
                merged = Some(r);
                break;
            }
            merged = Some(r);
        }
        out.push(merged.expect("nonempty contexts"));
    }

    let mut flip = CheckReport::pass("glrep/omega-flip").with_param("ranks", "2..=4");
    for m in 2..=4 {
        let r = check_omega_flip(m).expect("valid context");
        if !r.passed() {
            flip = r;
            break;
        }
    }
    out.push(flip);

    let mut cartan = cartan_automorphism_check(&contexts[0].1);
    if cartan.passed() {
        cartan = cartan_automorphism_check(&contexts[2].1);
    }
    out.push(cartan);
    out
}

fn tensor_context(m: usize, n: usize) -> KzContext {
    let tensor = TensorContext::vector_power(m, n).unwrap();
    KzContext::symbolic(SiteActions::from_tensor(&tensor)).unwrap()
}

/// Substitution-built rt operators equal hbar*t + eta*r as exact operator
/// identities for (M, N) in {1,2,3}^2 on vector representations and on an
/// S^2 C^2 x C^2 configuration.
fn kz_decomposition() -> Vec<CheckReport> {
    let mut eq30 = CheckReport::pass("kz/eq30").with_param("cases", "vector (M,N) in {1,2,3}^2 + S^2C^2 x C^2");
    let mut eq35 = CheckReport::pass("kz/eq35").with_param("cases", "vector (M,N) in {1,2,3}^2 + S^2C^2 x C^2");
    let mut contexts: Vec<(String, KzContext)> = Vec::new();
    for m in 1..=3 {
        for n in 1..=3 {
            contexts.push((format!("vector M={m} N={n}"), tensor_context(m, n)));
        }
    }
    let mixed = TensorContext::new(vec![
        RepSpace::symmetric_power(2, 2).unwrap(),
        RepSpace::vector(2).unwrap(),
    ])
    .unwrap();
    contexts.push((
        "S^2C^2 x C^2".to_string(),
        KzContext::symbolic(SiteActions::from_tensor(&mixed)).unwrap(),
    ));

    for (label, ctx) in &contexts {
        let r30 = check_identity(ctx, IdentityCheck::Eq30, CheckMode::Exact);
        if !r30.passed() && eq30.passed() {
            eq30 = CheckReport::fail("kz/eq30", json!({ "case": label, "inner": r30.witness }));
        }
        let r35 = check_identity(ctx, IdentityCheck::Eq35, CheckMode::Exact);
        if !r35.passed() && eq35.passed() {
            eq35 = CheckReport::fail("kz/eq35", json!({ "case": label, "inner": r35.witness }));
        }
    }
    vec![eq30, eq35]
}

/// Pairwise KZ and DD commutators for each kind at M = 2, N = 3,
/// seeded exact-rational evaluation.
fn kz_flatness(seed: u64, trials: u32) -> Vec<CheckReport> {
    let ctx = tensor_context(2, 3);
    OperatorKind::ALL
        .into_iter()
        .map(|kind| {
            check_identity(
                &ctx,
                IdentityCheck::Flatness(kind),
                CheckMode::Probabilistic { seed, trials },
            )
        })
        .collect()
}

fn kz_braid() -> CheckReport {
    let tensor = TensorContext::vector_power(2, 4).unwrap();
    check_braid_identities(&SiteActions::from_tensor(&tensor))
        .with_param("M", 2)
        .with_param("N", 4)
}

/// The duality battery: the rational identification must vanish for N = 1
/// (any M <= 3) and for M = N = 2 up to the configured degree; the
/// trigonometric and rational-trigonometric identifications run the same
/// comparison with residuals emitted as data; the rt residual must be the
/// hbar/eta combination of the t and r residuals.
fn duality_checks(degree: u32) -> Vec<CheckReport> {
    let params = DualityParams::symbolic();
    let mut out = Vec::new();

    let mut rational = CheckReport::pass("duality/residual-r")
        .with_param("cases", "N=1 M in {1,2,3} d=2; M=N=2 up to configured degree")
        .with_param("degree", degree);
    'rational: {
        for m in 1..=3 {
            let model = PolynomialModel::build(1, m, 2).expect("model checks");
            let report = check_duality(OperatorKind::Rational, &model, &params, CheckMode::Exact).expect("built");
            if !report.all_zero() {
                rational = report.to_check_report(true);
                break 'rational;
            }
        }
        for d in 1..=degree {
            let model = PolynomialModel::build(2, 2, d).expect("model checks");
            let report = check_duality(OperatorKind::Rational, &model, &params, CheckMode::Exact).expect("built");
            if !report.all_zero() {
                rational = report.to_check_report(true);
                break 'rational;
            }
        }
    }
    out.push(rational);

    let model = PolynomialModel::build(2, 2, degree).expect("model checks");
    for kind in [OperatorKind::Trigonometric, OperatorKind::RationalTrigonometric] {
        let report = check_duality(kind, &model, &params, CheckMode::Exact).expect("built");
        out.push(report.to_check_report(false));
    }
    out.push(check_rt_linearity(&model, &params).expect("built"));
    out
}
