//! Rational, trigonometric and rational-trigonometric KZ and dynamical (DD)
//! differential operators, with exact verification of the decomposition and
//! commutativity identities.
//!
//! The rational-trigonometric operators are defined by shifted/scaled
//! substitution into the trigonometric ones (z_k -> z_k + eta/hbar and
//! lambda -> (1 + eta/hbar) lambda for KZ; lambda_b -> lambda_b + eta/hbar
//! and z -> (1 + eta/hbar) z for DD), each multiplied by hbar. The direct
//! form hbar*(t) + eta*(r) must agree, and the checks verify that as an
//! exact operator identity. Derivatives with respect to shifted variables
//! equal derivatives with respect to the originals, so substitution touches
//! coefficients only.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::glrep::SiteActions;
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::ratfunc::{random_rational, RatFunc};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    Rational,
    Trigonometric,
    RationalTrigonometric,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [
        OperatorKind::Rational,
        OperatorKind::Trigonometric,
        OperatorKind::RationalTrigonometric,
    ];
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorKind::Rational => "r",
            OperatorKind::Trigonometric => "t",
            OperatorKind::RationalTrigonometric => "rt",
        };
        write!(f, "{s}")
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "r" => Ok(OperatorKind::Rational),
            "t" => Ok(OperatorKind::Trigonometric),
            "rt" => Ok(OperatorKind::RationalTrigonometric),
            other => Err(Error::Parse(format!("unknown operator kind `{other}`"))),
        }
    }
}

/// How to realize the rational-trigonometric operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// the shifted/scaled substitution definition
    Substitution,
    /// hbar * (trigonometric) + eta * (rational)
    Direct,
}

/// Everything the operator builders need: the representation, the scalar
/// parameters, and the position/dynamical variable names.
#[derive(Clone)]
pub struct KzContext {
    actions: SiteActions,
    kappa: RatFunc,
    hbar: RatFunc,
    eta: RatFunc,
    positions: Vec<String>,
    dynamicals: Vec<String>,
    deriv_vars: Vec<String>,
}

impl KzContext {
    /// Standard naming: positions z1..zN, dynamicals lambda1..lambdaM.
    pub fn new(actions: SiteActions, kappa: RatFunc, hbar: RatFunc, eta: RatFunc) -> Result<Self> {
        let positions = (1..=actions.sites()).map(|i| format!("z{i}")).collect();
        let dynamicals = (1..=actions.rank()).map(|a| format!("lambda{a}")).collect();
        KzContext::with_names(actions, kappa, hbar, eta, positions, dynamicals)
    }

    /// Symbolic kappa, hbar, eta.
    pub fn symbolic(actions: SiteActions) -> Result<Self> {
        KzContext::new(
            actions,
            RatFunc::symbol("kappa"),
            RatFunc::symbol("hbar"),
            RatFunc::symbol("eta"),
        )
    }

    pub fn with_names(
        actions: SiteActions,
        kappa: RatFunc,
        hbar: RatFunc,
        eta: RatFunc,
        positions: Vec<String>,
        dynamicals: Vec<String>,
    ) -> Result<Self> {
        if kappa.is_zero() {
            return Err(Error::DenominatorVanishes("kappa must be nonzero".into()));
        }
        if hbar.is_zero() {
            return Err(Error::DenominatorVanishes(
                "hbar must be nonzero (the rt substitution shifts by eta/hbar)".into(),
            ));
        }
        assert_eq!(positions.len(), actions.sites(), "one position per site");
        assert_eq!(
            dynamicals.len(),
            actions.rank(),
            "one dynamical variable per gl index"
        );
        let mut deriv_vars: Vec<String> =
            positions.iter().chain(dynamicals.iter()).cloned().collect();
        deriv_vars.sort();
        // products (lambda_a - e_aa)(e_aa)_(i) assume the two factors
        // commute; they are simultaneously diagonalizable here
        for a in 1..=actions.rank() {
            let delta = actions.delta(a, a);
            for i in 1..=actions.sites() {
                if !delta.commutator(actions.gen(i, a, a)).is_zero() {
                    return Err(Error::InexactDivision(format!(
                        "[Delta(e_{a}{a}), (e_{a}{a})_({i})] != 0"
                    )));
                }
            }
        }
        Ok(KzContext {
            actions,
            kappa,
            hbar,
            eta,
            positions,
            dynamicals,
            deriv_vars,
        })
    }

    pub fn actions(&self) -> &SiteActions {
        &self.actions
    }

    pub fn sites(&self) -> usize {
        self.actions.sites()
    }

    pub fn rank(&self) -> usize {
        self.actions.rank()
    }

    pub fn dim(&self) -> usize {
        self.actions.dim()
    }

    pub fn positions(&self) -> &[String] {
        &self.positions
    }

    pub fn dynamicals(&self) -> &[String] {
        &self.dynamicals
    }

    pub fn kappa(&self) -> &RatFunc {
        &self.kappa
    }

    fn pos(&self, i: usize) -> RatFunc {
        RatFunc::symbol(&self.positions[i - 1])
    }

    fn dynam(&self, a: usize) -> RatFunc {
        RatFunc::symbol(&self.dynamicals[a - 1])
    }


    fn matrix_op(&self, m: RatMatrix) -> DiffOp {
        DiffOp::from_matrix(m, self.deriv_vars.clone())
    }

    fn deriv_op(&self, coeff: RatMatrix, var: &str) -> DiffOp {
        DiffOp::first_order(coeff, var, self.dim(), self.deriv_vars.clone())
    }
}

/// The KZ operator at a site, Eq-by-Eq:
/// rational:       kappa d_{z_i} - sum_a lambda_a (e_aa)_(i) - sum_{j != i} Omega_(ij)/(z_i - z_j)
/// trigonometric:  kappa z_i d_{z_i} - sum_a (lambda_a - Delta(e_aa))(e_aa)_(i)
///                 - sum_{j != i} (z_i Omega+_(ij) + z_j Omega-_(ij))/(z_i - z_j)
pub fn build_kz(
    ctx: &KzContext,
    kind: OperatorKind,
    site: usize,
    construction: Construction,
) -> Result<DiffOp> {
    let n = ctx.sites();
    if site < 1 || site > n {
        return Err(Error::InvalidSite { site, n });
    }
    let id = RatMatrix::identity(ctx.dim());
    let zvar = ctx.positions[site - 1].clone();
    match kind {
        OperatorKind::Rational => {
            let mut op = ctx.deriv_op(id.scale(&ctx.kappa), &zvar);
            for a in 1..=ctx.rank() {
                let term = ctx.actions.gen(site, a, a).scale(&ctx.dynam(a));
                op = op.sub(&ctx.matrix_op(term));
            }
            for j in 1..=n {
                if j == site {
                    continue;
                }
                let (omega, _, _) = ctx.actions.omega(site, j)?;
                let pole = RatFunc::one().div(&ctx.pos(site).sub(&ctx.pos(j)))?;
                op = op.sub(&ctx.matrix_op(omega.scale(&pole)));
            }
            Ok(op)
        }
        OperatorKind::Trigonometric => {
            let mut op = ctx.deriv_op(id.scale(&ctx.kappa.mul(&ctx.pos(site))), &zvar);
            for a in 1..=ctx.rank() {
                let gen = ctx.actions.gen(site, a, a);
                let term = gen
                    .scale(&ctx.dynam(a))
                    .sub(&ctx.actions.delta(a, a).mul(gen));
                op = op.sub(&ctx.matrix_op(term));
            }
            for j in 1..=n {
                if j == site {
                    continue;
                }
                let (_, plus, minus) = ctx.actions.omega(site, j)?;
                let pole = RatFunc::one().div(&ctx.pos(site).sub(&ctx.pos(j)))?;
                let blend = plus
                    .scale(&ctx.pos(site))
                    .add(&minus.scale(&ctx.pos(j)))
                    .scale(&pole);
                op = op.sub(&ctx.matrix_op(blend));
            }
            Ok(op)
        }
        OperatorKind::RationalTrigonometric => match construction {
            Construction::Direct => {
                let t = build_kz(ctx, OperatorKind::Trigonometric, site, construction)?;
                let r = build_kz(ctx, OperatorKind::Rational, site, construction)?;
                Ok(t.scale(&ctx.hbar).add(&r.scale(&ctx.eta)))
            }
            Construction::Substitution => {
                let t = build_kz(ctx, OperatorKind::Trigonometric, site, construction)?;
                let shift = ctx.eta.div(&ctx.hbar)?;
                let scale = RatFunc::one().add(&shift);
                let mut op = t;
                for z in &ctx.positions {
                    let value = RatFunc::symbol(z).add(&shift);
                    op = op.substitute(z, &value)?;
                }
                for l in &ctx.dynamicals {
                    let value = RatFunc::symbol(l).mul(&scale);
                    op = op.substitute(l, &value)?;
                }
                Ok(op.scale(&ctx.hbar))
            }
        },
    }
}

/// The dynamical (DD) operator at a gl index:
/// rational:       kappa d_{la} - sum_i z_i (e_aa)_(i)
///                 - sum_{b != a} (e_ab e_ba - e_aa)/(la - lb)
/// trigonometric:  kappa la d_{la} + e_aa^2/2 - sum_i z_i (e_aa)_(i)
///                 - sum_b sum_{i<j} (e_ab)_(i)(e_ba)_(j)
///                 - sum_{b != a} lb (e_ab e_ba - e_aa)/(la - lb)
/// where bare e_ab is the N-fold coproduct image.
pub fn build_dd(
    ctx: &KzContext,
    kind: OperatorKind,
    index: usize,
    construction: Construction,
) -> Result<DiffOp> {
    let m = ctx.rank();
    if index < 1 || index > m {
        return Err(Error::InvalidIndex { index, m });
    }
    let id = RatMatrix::identity(ctx.dim());
    let lvar = ctx.dynamicals[index - 1].clone();
    let a = index;
    match kind {
        OperatorKind::Rational => {
            let mut op = ctx.deriv_op(id.scale(&ctx.kappa), &lvar);
            for i in 1..=ctx.sites() {
                let term = ctx.actions.gen(i, a, a).scale(&ctx.pos(i));
                op = op.sub(&ctx.matrix_op(term));
            }
            for b in 1..=m {
                if b == a {
                    continue;
                }
                let num = ctx
                    .actions
                    .delta(a, b)
                    .mul(&ctx.actions.delta(b, a))
                    .sub(&ctx.actions.delta(a, a));
                let pole = RatFunc::one().div(&ctx.dynam(a).sub(&ctx.dynam(b)))?;
                op = op.sub(&ctx.matrix_op(num.scale(&pole)));
            }
            Ok(op)
        }
        OperatorKind::Trigonometric => {
            let mut op = ctx.deriv_op(id.scale(&ctx.kappa.mul(&ctx.dynam(a))), &lvar);
            let delta_aa = ctx.actions.delta(a, a);
            op = op.add(&ctx.matrix_op(
                delta_aa.mul(&delta_aa).scale_rational(&Rational::new(1, 2)),
            ));
            for i in 1..=ctx.sites() {
                let term = ctx.actions.gen(i, a, a).scale(&ctx.pos(i));
                op = op.sub(&ctx.matrix_op(term));
            }
            for b in 1..=m {
                for i in 1..=ctx.sites() {
                    for j in (i + 1)..=ctx.sites() {
                        let term = ctx.actions.gen(i, a, b).mul(ctx.actions.gen(j, b, a));
                        op = op.sub(&ctx.matrix_op(term));
                    }
                }
            }
            for b in 1..=m {
                if b == a {
                    continue;
                }
                let num = ctx
                    .actions
                    .delta(a, b)
                    .mul(&ctx.actions.delta(b, a))
                    .sub(&ctx.actions.delta(a, a));
                let pole = RatFunc::one().div(&ctx.dynam(a).sub(&ctx.dynam(b)))?;
                op = op.sub(&ctx.matrix_op(num.scale(&pole).scale(&ctx.dynam(b))));
            }
            Ok(op)
        }
        OperatorKind::RationalTrigonometric => match construction {
            Construction::Direct => {
                let t = build_dd(ctx, OperatorKind::Trigonometric, index, construction)?;
                let r = build_dd(ctx, OperatorKind::Rational, index, construction)?;
                Ok(t.scale(&ctx.hbar).add(&r.scale(&ctx.eta)))
            }
            Construction::Substitution => {
                let t = build_dd(ctx, OperatorKind::Trigonometric, index, construction)?;
                let shift = ctx.eta.div(&ctx.hbar)?;
                let scale = RatFunc::one().add(&shift);
                let mut op = t;
                for l in &ctx.dynamicals {
                    let value = RatFunc::symbol(l).add(&shift);
                    op = op.substitute(l, &value)?;
                }
                for z in &ctx.positions {
                    let value = RatFunc::symbol(z).mul(&scale);
                    op = op.substitute(z, &value)?;
                }
                Ok(op.scale(&ctx.hbar))
            }
        },
    }
}

/// Which operator identity to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCheck {
    /// substitution-built rt-KZ equals hbar*t + eta*r, every site
    Eq30,
    /// substitution-built rt-DD equals hbar*t + eta*r, every index
    Eq35,
    /// pairwise commutators of same-kind KZ and of same-kind DD operators
    Flatness(OperatorKind),
    /// mixed commutators [KZ_i, DD_a]
    KzDdCompat(OperatorKind),
}

impl fmt::Display for IdentityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityCheck::Eq30 => write!(f, "eq30"),
            IdentityCheck::Eq35 => write!(f, "eq35"),
            IdentityCheck::Flatness(k) => write!(f, "flatness-{k}"),
            IdentityCheck::KzDdCompat(k) => write!(f, "compat-{k}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exact,
    Probabilistic { seed: u64, trials: u32 },
}

/// Builds the residual operators of the requested identity and verifies
/// they vanish, exactly or by seeded random evaluation. Failures are
/// reported (with the full residual as witness), never thrown.
pub fn check_identity(ctx: &KzContext, which: IdentityCheck, mode: CheckMode) -> CheckReport {
    let name = format!("kz/{which}");
    let residuals = match build_residuals(ctx, which) {
        Ok(r) => r,
        Err(e) => return CheckReport::degenerate(&name, json!(e.to_string())),
    };
    verify_residuals(&name, &residuals, mode, ctx)
        .with_param("M", ctx.rank() as u64)
        .with_param("N", ctx.sites() as u64)
        .with_param("dim", ctx.dim() as u64)
}

fn build_residuals(ctx: &KzContext, which: IdentityCheck) -> Result<Vec<(String, DiffOp)>> {
    let mut out = Vec::new();
    match which {
        IdentityCheck::Eq30 => {
            for i in 1..=ctx.sites() {
                let sub = build_kz(ctx, OperatorKind::RationalTrigonometric, i, Construction::Substitution)?;
                let direct = build_kz(ctx, OperatorKind::RationalTrigonometric, i, Construction::Direct)?;
                out.push((format!("kz-rt[site={i}]"), sub.sub(&direct)));
            }
        }
        IdentityCheck::Eq35 => {
            for a in 1..=ctx.rank() {
                let sub = build_dd(ctx, OperatorKind::RationalTrigonometric, a, Construction::Substitution)?;
                let direct = build_dd(ctx, OperatorKind::RationalTrigonometric, a, Construction::Direct)?;
                out.push((format!("dd-rt[a={a}]"), sub.sub(&direct)));
            }
        }
        IdentityCheck::Flatness(kind) => {
            let kz: Vec<DiffOp> = (1..=ctx.sites())
                .map(|i| build_kz(ctx, kind, i, Construction::Substitution))
                .collect::<Result<_>>()?;
            for i in 0..kz.len() {
                for j in (i + 1)..kz.len() {
                    out.push((
                        format!("[kz{}[{kind}], kz{}[{kind}]]", i + 1, j + 1),
                        kz[i].commutator(&kz[j]),
                    ));
                }
            }
            let dd: Vec<DiffOp> = (1..=ctx.rank())
                .map(|a| build_dd(ctx, kind, a, Construction::Substitution))
                .collect::<Result<_>>()?;
            for a in 0..dd.len() {
                for b in (a + 1)..dd.len() {
                    out.push((
                        format!("[dd{}[{kind}], dd{}[{kind}]]", a + 1, b + 1),
                        dd[a].commutator(&dd[b]),
                    ));
                }
            }
        }
        IdentityCheck::KzDdCompat(kind) => {
            for i in 1..=ctx.sites() {
                let kz = build_kz(ctx, kind, i, Construction::Substitution)?;
                for a in 1..=ctx.rank() {
                    let dd = build_dd(ctx, kind, a, Construction::Substitution)?;
                    out.push((format!("[kz{i}[{kind}], dd{a}[{kind}]]"), kz.commutator(&dd)));
                }
            }
        }
    }
    Ok(out)
}

fn verify_residuals(
    name: &str,
    residuals: &[(String, DiffOp)],
    mode: CheckMode,
    ctx: &KzContext,
) -> CheckReport {
    match mode {
        CheckMode::Exact => {
            for (label, op) in residuals {
                if !op.is_zero() {
                    return CheckReport::fail(
                        name,
                        json!({ "residual": label, "operator": op.to_json() }),
                    )
                    .with_param("mode", "exact");
                }
            }
            CheckReport::pass(name).with_param("mode", "exact")
        }
        CheckMode::Probabilistic { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for (label, op) in residuals {
                if op.is_zero() {
                    continue;
                }
                let vars = op.coeff_vars();
                for _trial in 0..trials {
                    let mut done = false;
                    for _attempt in 0..100 {
                        let point = sample_point(&mut rng, &vars, ctx);
                        let Some(point) = point else { continue };
                        match op.is_zero_at(&point) {
                            Ok(true) => {
                                done = true;
                                break;
                            }
                            Ok(false) => {
                                let shown: BTreeMap<&String, String> =
                                    point.iter().map(|(k, v)| (k, v.to_string())).collect();
                                return CheckReport::fail(
                                    name,
                                    json!({ "residual": label, "point": shown }),
                                )
                                .with_param("seed", seed)
                                .with_param("trials", trials);
                            }
                            Err(Error::PoleAtPoint(_)) => continue,
                            Err(e) => {
                                return CheckReport::degenerate(name, json!(e.to_string()))
                                    .with_param("seed", seed)
                            }
                        }
                    }
                    if !done {
                        return CheckReport::degenerate(
                            name,
                            json!({ "residual": label, "reason": "no pole-free sample in 100 attempts" }),
                        )
                        .with_param("seed", seed);
                    }
                }
            }
            CheckReport::pass(name)
                .with_param("seed", seed)
                .with_param("trials", trials)
        }
    }
}

fn sample_point(
    rng: &mut ChaCha8Rng,
    vars: &[String],
    ctx: &KzContext,
) -> Option<BTreeMap<String, Rational>> {
    sample_distinct_point(rng, vars, &[ctx.positions(), ctx.dynamicals()])
}

/// Random assignment of positive rationals to `vars`, requiring the
/// variables inside each `groups` entry to take pairwise distinct values
/// (poles of the operators live on those diagonals). `None` asks the
/// caller to redraw.
pub fn sample_distinct_point(
    rng: &mut ChaCha8Rng,
    vars: &[String],
    groups: &[&[String]],
) -> Option<BTreeMap<String, Rational>> {
    let mut point = BTreeMap::new();
    for v in vars {
        point.insert(v.clone(), random_rational(rng));
    }
    for names in groups {
        let mut seen: Vec<&Rational> = Vec::new();
        for n in *names {
            if let Some(val) = point.get(n) {
                if seen.contains(&val) {
                    return None;
                }
                seen.push(val);
            }
        }
    }
    Some(point)
}

/// The infinitesimal-braid matrix identities behind KZ flatness:
/// [Omega_(ij), Omega_(ik) + Omega_(jk)] = 0 and [Omega_(ij), Omega_(kl)] = 0
/// for disjoint slot pairs, as exact matrix identities.
pub fn check_braid_identities(actions: &SiteActions) -> CheckReport {
    let name = "kz/braid";
    let n = actions.sites();
    let omega = |i: usize, j: usize| actions.omega(i, j).expect("valid slots").0;
    for i in 1..=n {
        for j in (i + 1)..=n {
            for k in 1..=n {
                if k == i || k == j {
                    continue;
                }
                let lhs = omega(i, j).commutator(&omega(i, k).add(&omega(j, k)));
                if !lhs.is_zero() {
                    return CheckReport::fail(
                        name,
                        json!({ "identity": format!("[O({i}{j}), O({i}{k})+O({j}{k})]") }),
                    );
                }
            }
            for k in 1..=n {
                for l in (k + 1)..=n {
                    if k == i || k == j || l == i || l == j {
                        continue;
                    }
                    if !omega(i, j).commutator(&omega(k, l)).is_zero() {
                        return CheckReport::fail(
                            name,
                            json!({ "identity": format!("[O({i}{j}), O({k}{l})]") }),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass(name).with_param("N", n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glrep::{flip_matrix, RepSpace, SiteActions, TensorContext};

    fn vector_ctx(m: usize, n: usize) -> KzContext {
        let tensor = TensorContext::vector_power(m, n).unwrap();
        KzContext::symbolic(SiteActions::from_tensor(&tensor)).unwrap()
    }

    #[test]
    fn single_site_rational_kz_has_no_poles() {
        let ctx = vector_ctx(2, 1);
        let op = build_kz(&ctx, OperatorKind::Rational, 1, Construction::Direct).unwrap();
        // kappa d_z1 - lambda1 E11 - lambda2 E22
        let deriv = op.coeff(&{
            let mut e = vec![0; op.vars().len()];
            let idx = op.vars().iter().position(|v| v == "z1").unwrap();
            e[idx] = 1;
            e
        });
        assert!(deriv.equal(&RatMatrix::identity(2).scale(&RatFunc::symbol("kappa"))));
        let m = op.matrix_part();
        assert!(m.get(0, 0).equal_exact(&RatFunc::symbol("lambda1").neg()));
        assert!(m.get(1, 1).equal_exact(&RatFunc::symbol("lambda2").neg()));
        // every entry is polynomial: no z-denominators anywhere
        for (_, mat) in op.terms() {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(mat.get(i, j).denominator().is_one());
                }
            }
        }
        assert!(matches!(
            build_kz(&ctx, OperatorKind::Rational, 2, Construction::Direct),
            Err(Error::InvalidSite { site: 2, n: 1 })
        ));
    }

    #[test]
    fn rational_kz_matrix_part_is_flip_at_special_point() {
        // M=N=2 vector reps, kappa=1, lambda=0, (z1,z2)=(0,1):
        // matrix part is -Omega/(z1-z2) = +Flip
        let tensor = TensorContext::vector_power(2, 2).unwrap();
        let ctx = KzContext::new(
            SiteActions::from_tensor(&tensor),
            RatFunc::one(),
            RatFunc::symbol("hbar"),
            RatFunc::symbol("eta"),
        )
        .unwrap();
        let op = build_kz(&ctx, OperatorKind::Rational, 1, Construction::Direct).unwrap();
        let mut m = op.matrix_part();
        for (var, val) in [
            ("lambda1", 0i64),
            ("lambda2", 0),
            ("z1", 0),
            ("z2", 1),
        ] {
            m = m
                .try_map(|e| e.substitute_rational(var, &Rational::from_int(val)))
                .unwrap();
        }
        assert!(m.equal(&flip_matrix(2)));
    }

    #[test]
    fn single_factor_rational_dd_shape() {
        // M=2, N=1 vector rep: pole term (e_12 e_21 - e_11) vanishes, so
        // D^r_{lambda1} = kappa d - z1 E11 at lambda=(0,1), z=3 evaluates to -3 E11
        let ctx = vector_ctx(2, 1);
        let op = build_dd(&ctx, OperatorKind::Rational, 1, Construction::Direct).unwrap();
        let m = op
            .matrix_part()
            .try_map(|e| {
                e.substitute_rational("z1", &Rational::from_int(3))?
                    .substitute_rational("lambda1", &Rational::from_int(0))?
                    .substitute_rational("lambda2", &Rational::from_int(1))
            })
            .unwrap();
        let mut expect = RatMatrix::zeros(2, 2);
        expect.set(0, 0, RatFunc::from_int(-3));
        assert!(m.equal(&expect));

        // M=1: no b != a sum at all
        let ctx1 = vector_ctx(1, 2);
        let op1 = build_dd(&ctx1, OperatorKind::Rational, 1, Construction::Direct).unwrap();
        for (_, mat) in op1.terms() {
            assert!(mat.get(0, 0).denominator().is_one());
        }
        assert!(matches!(
            build_dd(&ctx1, OperatorKind::Rational, 2, Construction::Direct),
            Err(Error::InvalidIndex { index: 2, m: 1 })
        ));
    }

    #[test]
    fn eq30_and_eq35_exact_two_by_two() {
        let ctx = vector_ctx(2, 2);
        assert!(check_identity(&ctx, IdentityCheck::Eq30, CheckMode::Exact).passed());
        assert!(check_identity(&ctx, IdentityCheck::Eq35, CheckMode::Exact).passed());
    }

    #[test]
    fn eq30_on_symmetric_power_mix() {
        let tensor = TensorContext::new(vec![
            RepSpace::symmetric_power(2, 2).unwrap(),
            RepSpace::vector(2).unwrap(),
        ])
        .unwrap();
        let ctx = KzContext::symbolic(SiteActions::from_tensor(&tensor)).unwrap();
        assert!(check_identity(&ctx, IdentityCheck::Eq30, CheckMode::Exact).passed());
        assert!(check_identity(&ctx, IdentityCheck::Eq35, CheckMode::Exact).passed());
    }

    #[test]
    fn rt_linearity_at_rational_parameter_pairs() {
        // the map (hbar, eta) -> rt operator is the linear combination
        // hbar*t + eta*r; checked at three parameter pairs via substitution
        let tensor = TensorContext::vector_power(2, 2).unwrap();
        for (h, e) in [(1i64, 2i64), (3, -1), (2, 5)] {
            let ctx = KzContext::new(
                SiteActions::from_tensor(&tensor),
                RatFunc::symbol("kappa"),
                RatFunc::from_int(h),
                RatFunc::from_int(e),
            )
            .unwrap();
            let sub = build_kz(&ctx, OperatorKind::RationalTrigonometric, 1, Construction::Substitution)
                .unwrap();
            let t = build_kz(&ctx, OperatorKind::Trigonometric, 1, Construction::Direct).unwrap();
            let r = build_kz(&ctx, OperatorKind::Rational, 1, Construction::Direct).unwrap();
            let direct = t
                .scale(&RatFunc::from_int(h))
                .add(&r.scale(&RatFunc::from_int(e)));
            assert!(sub.sub(&direct).is_zero(), "hbar={h}, eta={e}");
        }
    }

    #[test]
    fn two_point_rational_kz_flatness_exact() {
        let ctx = vector_ctx(2, 2);
        let report = check_identity(
            &ctx,
            IdentityCheck::Flatness(OperatorKind::Rational),
            CheckMode::Exact,
        );
        assert!(report.passed(), "witness: {:?}", report.witness);
    }

    #[test]
    fn trigonometric_flatness_exact_small() {
        let ctx = vector_ctx(2, 2);
        let report = check_identity(
            &ctx,
            IdentityCheck::Flatness(OperatorKind::Trigonometric),
            CheckMode::Exact,
        );
        assert!(report.passed(), "witness: {:?}", report.witness);
    }

    #[test]
    fn flatness_probabilistic_all_kinds() {
        let ctx = vector_ctx(2, 3);
        for kind in OperatorKind::ALL {
            let report = check_identity(
                &ctx,
                IdentityCheck::Flatness(kind),
                CheckMode::Probabilistic { seed: 7, trials: 2 },
            );
            assert!(report.passed(), "kind {kind}: {:?}", report.witness);
        }
    }

    #[test]
    fn braid_identities_hold() {
        let tensor = TensorContext::vector_power(2, 4).unwrap();
        let report = check_braid_identities(&SiteActions::from_tensor(&tensor));
        assert!(report.passed());
    }
}
