//! Truncated deformed exponentials and hypergeometric series as exact
//! coefficient streams.
//!
//! The coefficient of x^n in the deformed exponential is 1/(n)_kind!; the
//! hypergeometric coefficient of x^k is the quotient of deformed Pochhammer
//! products over (k)_kind! times the lower Pochhammer products. Everything
//! is a finite list of exact rational functions; no analytic summation.

use serde_json::json;

use crate::error::{Error, Result};
use crate::numbers::{deformed_number, DeformationParams, DeformedKind};
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::report::CheckReport;

/// Parameters of a truncated hypergeometric series.
#[derive(Clone, Debug)]
pub struct SeriesSpec {
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
    pub kind: DeformedKind,
    pub order: u32,
}

impl SeriesSpec {
    pub fn exponential(kind: DeformedKind, order: u32) -> Self {
        SeriesSpec {
            upper: Vec::new(),
            lower: Vec::new(),
            kind,
            order,
        }
    }
}

/// Coefficients c_0..c_K, index = power of x.
#[derive(Clone, Debug)]
pub struct SeriesCoeffs {
    coeffs: Vec<RatFunc>,
}

impl SeriesCoeffs {
    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatFunc {
        &self.coeffs[k]
    }

    pub fn order(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn equal(&self, other: &SeriesCoeffs) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .all(|(a, b)| a.equal_exact(b))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Deformed exponential: coefficient of x^n is 1/(n)_kind!.
pub fn exp_series(
    kind: DeformedKind,
    params: &DeformationParams,
    order: u32,
) -> Result<SeriesCoeffs> {
    let mut coeffs = Vec::with_capacity(order as usize + 1);
    coeffs.push(RatFunc::one());
    for n in 1..=i64::from(order) {
        let d = deformed_number(n, kind, params)?;
        if d.is_zero() {
            return Err(Error::DenominatorVanishes(format!(
                "({n})_{kind} = 0 at the supplied parameters"
            )));
        }
        let prev = coeffs.last().expect("nonempty").clone();
        coeffs.push(prev.div(&d)?);
    }
    Ok(SeriesCoeffs { coeffs })
}

/// Deformed hypergeometric series for the given parameter lists.
pub fn hypergeometric_series(
    spec: &SeriesSpec,
    params: &DeformationParams,
) -> Result<SeriesCoeffs> {
    let mut coeffs = Vec::with_capacity(spec.order as usize + 1);
    coeffs.push(RatFunc::one());
    for k in 1..=i64::from(spec.order) {
        let mut ratio = RatFunc::one();
        for &a in &spec.upper {
            ratio = ratio.mul(&deformed_number(a + k - 1, spec.kind, params)?);
        }
        let kk = deformed_number(k, spec.kind, params)?;
        if kk.is_zero() {
            return Err(Error::DenominatorVanishes(format!(
                "({k})_{} = 0 at the supplied parameters",
                spec.kind
            )));
        }
        ratio = ratio.div(&kk)?;
        for &b in &spec.lower {
            let factor = deformed_number(b + k - 1, spec.kind, params)?;
            if factor.is_zero() {
                return Err(Error::ZeroLowerPochhammer {
                    param: b,
                    k: k as u32,
                });
            }
            ratio = ratio.div(&factor)?;
        }
        let prev = coeffs.last().expect("nonempty").clone();
        coeffs.push(prev.mul(&ratio));
    }
    Ok(SeriesCoeffs { coeffs })
}

/// Which exact substitution carries one deformation kind into another.
fn specialization_route(from: DeformedKind, to: DeformedKind) -> Result<(&'static str, Rational)> {
    match (from, to) {
        (DeformedKind::QEta, DeformedKind::Eta) | (DeformedKind::Q, DeformedKind::Classical) => {
            Ok(("q", Rational::one()))
        }
        (DeformedKind::QEta, DeformedKind::Q) | (DeformedKind::Eta, DeformedKind::Classical) => {
            Ok(("eta", Rational::zero()))
        }
        (from, to) => Err(Error::InvalidSpecialization(format!(
            "{from} does not specialize to {to}"
        ))),
    }
}

/// Verifies coefficient-wise that the series of `spec.kind` specializes, by
/// exact limit or substitution, to the independently computed series of
/// `target`.
pub fn specialize_series(spec: &SeriesSpec, target: DeformedKind) -> Result<CheckReport> {
    let (var, point) = specialization_route(spec.kind, target)?;
    let params = DeformationParams::symbolic();
    let source = hypergeometric_series(spec, &params)?;
    let expect = hypergeometric_series(
        &SeriesSpec {
            kind: target,
            ..spec.clone()
        },
        &params,
    )?;
    let mut specialized = Vec::with_capacity(source.coeffs.len());
    for c in &source.coeffs {
        specialized.push(c.limit(var, &point)?);
    }
    let specialized = SeriesCoeffs {
        coeffs: specialized,
    };
    let ok = specialized.equal(&expect);
    Ok(CheckReport::of("series/specialize", ok, || {
        json!({
            "specialized": specialized.to_strings(),
            "target": expect.to_strings(),
        })
    })
    .with_param("from", spec.kind.to_string())
    .with_param("to", target.to_string())
    .with_param("order", spec.order)
    .with_param("a", json!(spec.upper))
    .with_param("b", json!(spec.lower)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> DeformationParams {
        DeformationParams::symbolic()
    }

    #[test]
    fn classical_exponential() {
        let s = exp_series(DeformedKind::Classical, &sym(), 4).unwrap();
        let expect = ["1", "1", "1/2", "1/6", "1/24"];
        assert_eq!(s.to_strings(), expect);
    }

    #[test]
    fn qeta_degree_two_coefficient() {
        // 1/(2)_{q,eta}! = (1+eta)/(1+q)
        let s = exp_series(DeformedKind::QEta, &sym(), 2).unwrap();
        let expect = RatFunc::one()
            .add(&RatFunc::symbol("eta"))
            .div(&RatFunc::one().add(&RatFunc::symbol("q")))
            .unwrap();
        assert!(s.coeff(2).equal_exact(&expect));
    }

    #[test]
    fn eta_zero_collapses_to_q_series() {
        let qeta = exp_series(
            DeformedKind::QEta,
            &sym().with_eta(RatFunc::zero()),
            8,
        )
        .unwrap();
        let q = exp_series(DeformedKind::Q, &sym(), 8).unwrap();
        assert!(qeta.equal(&q));
    }

    #[test]
    fn empty_hypergeometric_is_exponential() {
        let spec = SeriesSpec::exponential(DeformedKind::QEta, 6);
        let h = hypergeometric_series(&spec, &sym()).unwrap();
        let e = exp_series(DeformedKind::QEta, &sym(), 6).unwrap();
        assert!(h.equal(&e));
    }

    #[test]
    fn geometric_series_from_unit_upper() {
        // a = [1], classical: (1)_(k) / k! = 1 for every k
        let spec = SeriesSpec {
            upper: vec![1],
            lower: vec![],
            kind: DeformedKind::Classical,
            order: 7,
        };
        let h = hypergeometric_series(&spec, &sym()).unwrap();
        for k in 0..=7 {
            assert!(h.coeff(k).is_one(), "k = {k}");
        }
    }

    #[test]
    fn qeta_first_coefficient() {
        // a=[2], b=[1]: coefficient of x is (2)_{q,eta} = (1+q)/(1+eta)
        let spec = SeriesSpec {
            upper: vec![2],
            lower: vec![1],
            kind: DeformedKind::QEta,
            order: 3,
        };
        let h = hypergeometric_series(&spec, &sym()).unwrap();
        let expect = deformed_number(2, DeformedKind::QEta, &sym()).unwrap();
        assert!(h.coeff(1).equal_exact(&expect));
    }

    #[test]
    fn specializations() {
        let exp_spec = SeriesSpec::exponential(DeformedKind::QEta, 8);
        assert!(specialize_series(&exp_spec, DeformedKind::Eta).unwrap().passed());
        assert!(specialize_series(&exp_spec, DeformedKind::Q).unwrap().passed());

        let q_exp = SeriesSpec::exponential(DeformedKind::Q, 8);
        assert!(specialize_series(&q_exp, DeformedKind::Classical)
            .unwrap()
            .passed());

        let hyp = SeriesSpec {
            upper: vec![2],
            lower: vec![3],
            kind: DeformedKind::QEta,
            order: 6,
        };
        assert!(specialize_series(&hyp, DeformedKind::Q).unwrap().passed());
        assert!(specialize_series(&hyp, DeformedKind::Eta).unwrap().passed());

        assert!(matches!(
            specialize_series(&q_exp, DeformedKind::Eta),
            Err(Error::InvalidSpecialization(_))
        ));
    }

    #[test]
    fn three_term_consistency() {
        // c_n (n)_kind = c_{n-1}
        for kind in DeformedKind::ALL {
            let s = exp_series(kind, &sym(), 8).unwrap();
            for n in 1..=8usize {
                let lhs = s
                    .coeff(n)
                    .mul(&deformed_number(n as i64, kind, &sym()).unwrap());
                assert!(lhs.equal_exact(s.coeff(n - 1)), "kind {kind}, n {n}");
            }
        }
    }

    #[test]
    fn matched_upper_lower_cancel() {
        let spec = SeriesSpec {
            upper: vec![2, 5],
            lower: vec![2, 5],
            kind: DeformedKind::QEta,
            order: 6,
        };
        let h = hypergeometric_series(&spec, &sym()).unwrap();
        let e = exp_series(DeformedKind::QEta, &sym(), 6).unwrap();
        assert!(h.equal(&e));
    }

    #[test]
    fn zero_lower_pochhammer_detected() {
        let spec = SeriesSpec {
            upper: vec![1],
            lower: vec![0],
            kind: DeformedKind::Classical,
            order: 3,
        };
        assert!(matches!(
            hypergeometric_series(&spec, &sym()),
            Err(Error::ZeroLowerPochhammer { param: 0, k: 1 })
        ));
        // negative lower parameter hits zero at k = |b| + 1
        let spec2 = SeriesSpec {
            upper: vec![1],
            lower: vec![-2],
            kind: DeformedKind::Q,
            order: 5,
        };
        assert!(matches!(
            hypergeometric_series(&spec2, &sym()),
            Err(Error::ZeroLowerPochhammer { param: -2, k: 3 })
        ));
    }
}
