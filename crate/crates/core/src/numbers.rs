//! The three deformations of numbers and their factorials and Pochhammer
//! symbols.
//!
//! For an integer z the trigonometric deformation is
//! (z)_q = (1 - q^z)/(1 - q), the rational one is
//! (z)_eta = z/(1 + eta(z-1)), and the combined rational-trigonometric one is
//! (z)_{q,eta} = (z)_q / (1 + eta (z-1)_q). Positive q-numbers are stored as
//! geometric sums 1 + q + ... + q^(z-1), so no spurious 1-q denominator is
//! ever introduced and the q -> 1 limit is plain substitution.

use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::report::CheckReport;

/// Which deformation to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeformedKind {
    Classical,
    Q,
    Eta,
    QEta,
}

impl DeformedKind {
    pub const ALL: [DeformedKind; 4] = [
        DeformedKind::Classical,
        DeformedKind::Q,
        DeformedKind::Eta,
        DeformedKind::QEta,
    ];
}

impl fmt::Display for DeformedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DeformedKind::Classical => "classical",
            DeformedKind::Q => "q",
            DeformedKind::Eta => "eta",
            DeformedKind::QEta => "qeta",
        };
        write!(f, "{s}")
    }
}

impl FromStr for DeformedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "classical" => Ok(DeformedKind::Classical),
            "q" => Ok(DeformedKind::Q),
            "eta" => Ok(DeformedKind::Eta),
            "qeta" | "q_eta" => Ok(DeformedKind::QEta),
            other => Err(Error::Parse(format!("unknown deformation kind `{other}`"))),
        }
    }
}

/// Deformation parameters; each is either the bare symbol or a rational
/// constant.
#[derive(Clone, Debug)]
pub struct DeformationParams {
    pub q: RatFunc,
    pub eta: RatFunc,
}

impl DeformationParams {
    /// Fully symbolic q and eta.
    pub fn symbolic() -> Self {
        DeformationParams {
            q: RatFunc::symbol("q"),
            eta: RatFunc::symbol("eta"),
        }
    }

    pub fn new(q: RatFunc, eta: RatFunc) -> Self {
        DeformationParams { q, eta }
    }

    pub fn with_q(mut self, q: RatFunc) -> Self {
        self.q = q;
        self
    }

    pub fn with_eta(mut self, eta: RatFunc) -> Self {
        self.eta = eta;
        self
    }
}

impl Default for DeformationParams {
    fn default() -> Self {
        DeformationParams::symbolic()
    }
}

/// (z)_q as an exact rational function of the supplied q.
fn q_number(z: i64, q: &RatFunc) -> Result<RatFunc> {
    if z == 0 {
        return Ok(RatFunc::zero());
    }
    let n = z.unsigned_abs();
    let mut acc = RatFunc::zero();
    let mut power = RatFunc::one();
    for _ in 0..n {
        acc = acc.add(&power);
        power = power.mul(q);
    }
    if z > 0 {
        Ok(acc)
    } else {
        // (−z)_q = −q^z (z)_q with q^z the reciprocal power
        if q.is_zero() {
            return Err(Error::DenominatorVanishes(
                "negative q-number needs invertible q, got q = 0".to_string(),
            ));
        }
        let qn = q.pow(n as i64)?;
        acc.neg().div(&qn)
    }
}

/// The deformed number (z)_kind.
pub fn deformed_number(z: i64, kind: DeformedKind, params: &DeformationParams) -> Result<RatFunc> {
    match kind {
        DeformedKind::Classical => Ok(RatFunc::from_int(z)),
        DeformedKind::Q => q_number(z, &params.q),
        DeformedKind::Eta => {
            let den = RatFunc::one().add(&params.eta.scale(&Rational::from_int(z - 1)));
            if den.is_zero() {
                return Err(Error::DenominatorVanishes(format!(
                    "1 + eta*({}) = 0 at z = {z}",
                    z - 1
                )));
            }
            RatFunc::from_int(z).div(&den)
        }
        DeformedKind::QEta => {
            let num = q_number(z, &params.q)?;
            let den = RatFunc::one().add(&params.eta.mul(&q_number(z - 1, &params.q)?));
            if den.is_zero() {
                return Err(Error::DenominatorVanishes(format!(
                    "1 + eta*({})_q = 0 at z = {z}",
                    z - 1
                )));
            }
            num.div(&den)
        }
    }
}

/// (n)_kind! = (1)_kind (2)_kind ... (n)_kind, with the empty product 1.
pub fn deformed_factorial(
    n: u32,
    kind: DeformedKind,
    params: &DeformationParams,
) -> Result<RatFunc> {
    let mut acc = RatFunc::one();
    for k in 1..=i64::from(n) {
        acc = acc.mul(&deformed_number(k, kind, params)?);
    }
    Ok(acc)
}

/// Deformed Pochhammer symbol ((a)_kind)_(k) = (a)_kind (a+1)_kind ... (a+k-1)_kind.
/// The classical kind recovers a(a+1)...(a+k-1).
pub fn pochhammer(
    a: i64,
    k: u32,
    kind: DeformedKind,
    params: &DeformationParams,
) -> Result<RatFunc> {
    let mut acc = RatFunc::one();
    for j in 0..i64::from(k) {
        acc = acc.mul(&deformed_number(a + j, kind, params)?);
    }
    Ok(acc)
}

/// Verifies that the symbolic (z)_{q,eta} specializes to (z)_eta under the
/// exact limit q -> 1 and to (z)_q under eta = 0.
pub fn specialize_number(z: i64) -> CheckReport {
    let params = DeformationParams::symbolic();
    let name = "numbers/specialize";
    let build = || -> Result<(bool, bool, RatFunc, RatFunc, RatFunc, RatFunc)> {
        let qeta = deformed_number(z, DeformedKind::QEta, &params)?;
        let at_q1 = qeta.limit("q", &Rational::one())?;
        let eta_side = deformed_number(z, DeformedKind::Eta, &params)?;
        let at_eta0 = qeta.substitute_rational("eta", &Rational::zero())?;
        let q_side = deformed_number(z, DeformedKind::Q, &params)?;
        Ok((
            at_q1.equal_exact(&eta_side),
            at_eta0.equal_exact(&q_side),
            at_q1,
            eta_side,
            at_eta0,
            q_side,
        ))
    };
    match build() {
        Ok((eta_ok, q_ok, at_q1, eta_side, at_eta0, q_side)) => CheckReport::of(
            name,
            eta_ok && q_ok,
            || {
                json!({
                    "q_to_1": { "lhs": at_q1.to_string(), "rhs": eta_side.to_string(), "equal": eta_ok },
                    "eta_to_0": { "lhs": at_eta0.to_string(), "rhs": q_side.to_string(), "equal": q_ok },
                })
            },
        )
        .with_param("z", z),
        Err(e) => CheckReport::degenerate(name, json!(e.to_string())).with_param("z", z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> DeformationParams {
        DeformationParams::symbolic()
    }

    fn num(z: i64, kind: DeformedKind) -> RatFunc {
        deformed_number(z, kind, &sym()).unwrap()
    }

    #[test]
    fn fixed_points() {
        for kind in DeformedKind::ALL {
            assert!(num(1, kind).is_one(), "(1)_{kind} = 1");
            assert!(num(0, kind).is_zero(), "(0)_{kind} = 0");
        }
    }

    #[test]
    fn q_number_is_geometric_sum() {
        let q = RatFunc::symbol("q");
        let expect = RatFunc::one().add(&q).add(&q.mul(&q));
        assert_eq!(num(3, DeformedKind::Q), expect);
    }

    #[test]
    fn two_qeta() {
        // (2)_{q,eta} = (1+q)/(1+eta)
        let expect = RatFunc::one()
            .add(&RatFunc::symbol("q"))
            .div(&RatFunc::one().add(&RatFunc::symbol("eta")))
            .unwrap();
        assert_eq!(num(2, DeformedKind::QEta), expect);
    }

    #[test]
    fn negative_q_number() {
        // (-1)_q = -1/q
        let expect = RatFunc::from_int(-1).div(&RatFunc::symbol("q")).unwrap();
        assert!(num(-1, DeformedKind::Q).equal_exact(&expect));
    }

    #[test]
    fn specialize_examples() {
        // z = 5: (5)_{q=1,eta} = 5/(1+4 eta)
        let r = specialize_number(5);
        assert!(r.passed(), "witness: {:?}", r.witness);
        let qeta5 = num(5, DeformedKind::QEta);
        let lim = qeta5.limit("q", &Rational::one()).unwrap();
        let expect = RatFunc::from_int(5)
            .div(&RatFunc::one().add(&RatFunc::symbol("eta").scale(&Rational::from_int(4))))
            .unwrap();
        assert!(lim.equal_exact(&expect));

        assert!(specialize_number(0).passed());
        assert!(specialize_number(1).passed());
    }

    #[test]
    fn specialization_range() {
        for z in -6..=6 {
            let qeta = num(z, DeformedKind::QEta);
            let at_eta0 = qeta.substitute_rational("eta", &Rational::zero()).unwrap();
            assert!(at_eta0.equal_exact(&num(z, DeformedKind::Q)), "z = {z}");
            let at_q1 = qeta.limit("q", &Rational::one()).unwrap();
            assert!(at_q1.equal_exact(&num(z, DeformedKind::Eta)), "z = {z}");
        }
    }

    #[test]
    fn factorial_examples() {
        for kind in DeformedKind::ALL {
            assert!(deformed_factorial(0, kind, &sym()).unwrap().is_one());
        }
        // (3)_{q,eta}! = (1+q)/(1+eta) * (1+q+q^2)/(1+eta(1+q))
        let q = RatFunc::symbol("q");
        let eta = RatFunc::symbol("eta");
        let f2 = RatFunc::one().add(&q).div(&RatFunc::one().add(&eta)).unwrap();
        let f3 = RatFunc::one()
            .add(&q)
            .add(&q.mul(&q))
            .div(&RatFunc::one().add(&eta.mul(&RatFunc::one().add(&q))))
            .unwrap();
        let expect = f2.mul(&f3);
        assert!(deformed_factorial(3, DeformedKind::QEta, &sym())
            .unwrap()
            .equal_exact(&expect));

        // classical limit: (4)! = 24
        let classical = DeformationParams::new(RatFunc::one(), RatFunc::zero());
        assert_eq!(
            deformed_factorial(4, DeformedKind::QEta, &classical).unwrap(),
            RatFunc::from_int(24)
        );
    }

    #[test]
    fn factorial_ratio_recovers_number() {
        for kind in DeformedKind::ALL {
            for n in 1..=8u32 {
                let whole = deformed_factorial(n, kind, &sym()).unwrap();
                let prev = deformed_factorial(n - 1, kind, &sym()).unwrap();
                let ratio = whole.div(&prev).unwrap();
                assert!(
                    ratio.equal_exact(&num(i64::from(n), kind)),
                    "kind {kind}, n {n}"
                );
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        for kind in DeformedKind::ALL {
            assert!(pochhammer(3, 0, kind, &sym()).unwrap().is_one());
        }
        assert_eq!(
            pochhammer(2, 3, DeformedKind::Classical, &sym()).unwrap(),
            RatFunc::from_int(24)
        );
        // ((1)_{q,eta})_(2) = (1)_{q,eta} (2)_{q,eta} = (1+q)/(1+eta)
        let got = pochhammer(1, 2, DeformedKind::QEta, &sym()).unwrap();
        assert!(got.equal_exact(&num(2, DeformedKind::QEta)));
    }

    #[test]
    fn degenerate_parameters_error() {
        let bad = DeformationParams::new(RatFunc::symbol("q"), RatFunc::from_int(-1));
        // 1 + eta*(2-1) = 0 at eta = -1
        assert!(matches!(
            deformed_number(2, DeformedKind::Eta, &bad),
            Err(Error::DenominatorVanishes(_))
        ));
        // 1 + eta*(1)_q = 0 at eta = -1, q anything
        let bad_qeta = DeformationParams::new(RatFunc::one(), RatFunc::from_int(-1));
        assert!(matches!(
            deformed_number(2, DeformedKind::QEta, &bad_qeta),
            Err(Error::DenominatorVanishes(_))
        ));
    }
}
