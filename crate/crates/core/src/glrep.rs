//! Finite-dimensional gl_M modules: Cartan-Weyl generator actions, tensor
//! products with N-fold coproduct embeddings, the Casimir element and the
//! Casimir two-tensor with its +/- decomposition.
//!
//! Generator indices a, b and tensor sites i are 1-based, following the
//! e_ab notation. Every constructed space has its commutation relations
//! [e_ab, e_cd] = d_bc e_ad - d_ad e_cb machine-checked.

use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::Rational;
use crate::ratfunc::RatFunc;
use crate::report::CheckReport;

/// A gl_M module given by explicit e_ab action matrices.
#[derive(Clone)]
pub struct RepSpace {
    m: usize,
    dim: usize,
    basis_labels: Vec<String>,
    actions: Vec<RatMatrix>, // (a-1)*m + (b-1)
}

impl RepSpace {
    /// The vector representation: e_ab acts as the elementary matrix E_ab.
    pub fn vector(m: usize) -> Result<Self> {
        assert!(m >= 1);
        let mut actions = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let mut e = RatMatrix::zeros(m, m);
                e.set(a, b, RatFunc::one());
                actions.push(e);
            }
        }
        let rep = RepSpace {
            m,
            dim: m,
            basis_labels: (1..=m).map(|i| format!("v{i}")).collect(),
            actions,
        };
        rep.validate()?;
        Ok(rep)
    }

    /// The k-th symmetric power: e_ab acts as x_a d/dx_b on degree-k
    /// monomials in x_1..x_M.
    pub fn symmetric_power(m: usize, k: u32) -> Result<Self> {
        assert!(m >= 1);
        let basis = monomials_of_degree(m, k);
        let dim = basis.len();
        let index = |mono: &[u32]| -> usize {
            basis
                .iter()
                .position(|b| b == mono)
                .expect("monomial in basis")
        };
        let mut actions = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let mut e = RatMatrix::zeros(dim, dim);
                for (col, mono) in basis.iter().enumerate() {
                    if mono[b] == 0 {
                        continue;
                    }
                    let mut target = mono.clone();
                    target[b] -= 1;
                    target[a] += 1;
                    let row = index(&target);
                    let c = RatFunc::from_int(i64::from(mono[b]));
                    e.set(row, col, e.get(row, col).add(&c));
                }
                actions.push(e);
            }
        }
        let rep = RepSpace {
            m,
            dim,
            basis_labels: basis.iter().map(|mono| monomial_label(mono)).collect(),
            actions,
        };
        rep.validate()?;
        Ok(rep)
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    /// Action matrix of e_ab (1-based indices).
    pub fn action(&self, a: usize, b: usize) -> &RatMatrix {
        assert!(a >= 1 && a <= self.m && b >= 1 && b <= self.m);
        &self.actions[(a - 1) * self.m + (b - 1)]
    }

    /// C_2 = sum_{a,b} e_ab e_ba on this module.
    pub fn casimir(&self) -> RatMatrix {
        let mut c2 = RatMatrix::zeros(self.dim, self.dim);
        for a in 1..=self.m {
            for b in 1..=self.m {
                c2 = c2.add(&self.action(a, b).mul(self.action(b, a)));
            }
        }
        c2
    }

    fn validate(&self) -> Result<()> {
        check_commutation_relations(self.m, self.dim, |a, b| self.action(a, b))
    }
}

/// Verifies [e_ab, e_cd] = d_bc e_ad - d_ad e_cb for all index quadruples.
pub fn check_commutation_relations<'a>(
    m: usize,
    dim: usize,
    action: impl Fn(usize, usize) -> &'a RatMatrix,
) -> Result<()> {
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                for d in 1..=m {
                    let lhs = action(a, b).commutator(action(c, d));
                    let mut rhs = RatMatrix::zeros(dim, dim);
                    if b == c {
                        rhs = rhs.add(action(a, d));
                    }
                    if a == d {
                        rhs = rhs.sub(action(c, b));
                    }
                    if !lhs.equal(&rhs) {
                        return Err(Error::InexactDivision(format!(
                            "commutation relation failed at (a,b,c,d)=({a},{b},{c},{d})"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn monomials_of_degree(m: usize, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; m];
    fn rec(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(current.clone());
            current[pos] = 0;
            return;
        }
        for e in (0..=remaining).rev() {
            current[pos] = e;
            rec(out, current, pos + 1, remaining - e);
        }
        current[pos] = 0;
    }
    rec(&mut out, &mut current, 0, k);
    out
}

fn monomial_label(mono: &[u32]) -> String {
    let parts: Vec<String> = mono
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// An N-fold tensor product of gl_M modules over a common rank M.
#[derive(Clone)]
pub struct TensorContext {
    factors: Vec<RepSpace>,
    m: usize,
    total_dim: usize,
}

impl TensorContext {
    pub fn new(factors: Vec<RepSpace>) -> Result<Self> {
        assert!(!factors.is_empty(), "at least one tensor factor");
        let m = factors[0].m;
        if factors.iter().any(|f| f.m != m) {
            return Err(Error::Parse(
                "tensor factors must share the same gl rank".to_string(),
            ));
        }
        let total_dim = factors.iter().map(|f| f.dim).product();
        Ok(TensorContext {
            factors,
            m,
            total_dim,
        })
    }

    /// N copies of the vector representation.
    pub fn vector_power(m: usize, n: usize) -> Result<Self> {
        let rep = RepSpace::vector(m)?;
        TensorContext::new(vec![rep; n])
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn factors(&self) -> &[RepSpace] {
        &self.factors
    }

    /// id x ... x e_ab x ... x id with e_ab in slot `site` (1-based).
    pub fn embed_at(&self, a: usize, b: usize, site: usize) -> Result<RatMatrix> {
        let n = self.factors.len();
        if site < 1 || site > n {
            return Err(Error::IndexOutOfRange {
                index: site,
                bound: n,
            });
        }
        let pre: usize = self.factors[..site - 1].iter().map(|f| f.dim).product();
        let post: usize = self.factors[site..].iter().map(|f| f.dim).product();
        let action = self.factors[site - 1].action(a, b);
        let m = RatMatrix::identity(pre).kron(action);
        Ok(m.kron(&RatMatrix::identity(post)))
    }

    /// Delta^N(e_ab) = (e_ab)_(1) + ... + (e_ab)_(N).
    pub fn coproduct(&self, a: usize, b: usize) -> RatMatrix {
        let mut sum = RatMatrix::zeros(self.total_dim, self.total_dim);
        for site in 1..=self.factors.len() {
            sum = sum.add(&self.embed_at(a, b, site).expect("valid site"));
        }
        sum
    }

    /// C_2 embedded through the N-fold coproduct.
    pub fn casimir(&self) -> RatMatrix {
        let mut c2 = RatMatrix::zeros(self.total_dim, self.total_dim);
        for a in 1..=self.m {
            for b in 1..=self.m {
                c2 = c2.add(&self.coproduct(a, b).mul(&self.coproduct(b, a)));
            }
        }
        c2
    }

    /// The Casimir two-tensor on slots (i, j) and its +/- parts:
    /// Omega = sum_{a,b} (e_ab)_(i) (e_ba)_(j), split at the diagonal.
    pub fn omega(&self, i: usize, j: usize) -> Result<(RatMatrix, RatMatrix, RatMatrix)> {
        let n = self.factors.len();
        for site in [i, j] {
            if site < 1 || site > n {
                return Err(Error::IndexOutOfRange {
                    index: site,
                    bound: n,
                });
            }
        }
        if i == j {
            return Err(Error::SameSlot(i));
        }
        let gen = |site: usize, a: usize, b: usize| self.embed_at(a, b, site).expect("in range");
        Ok(omega_from_generators(self.m, self.total_dim, gen, i, j))
    }
}

/// Builds (Omega, Omega+, Omega-) from per-site generator matrices.
pub fn omega_from_generators(
    m: usize,
    dim: usize,
    gen: impl Fn(usize, usize, usize) -> RatMatrix,
    i: usize,
    j: usize,
) -> (RatMatrix, RatMatrix, RatMatrix) {
    let half = Rational::new(1, 2);
    let mut plus = RatMatrix::zeros(dim, dim);
    let mut minus = RatMatrix::zeros(dim, dim);
    for a in 1..=m {
        let diag = gen(i, a, a).mul(&gen(j, a, a)).scale_rational(&half);
        plus = plus.add(&diag);
        minus = minus.add(&diag);
        for b in (a + 1)..=m {
            plus = plus.add(&gen(i, a, b).mul(&gen(j, b, a)));
            minus = minus.add(&gen(i, b, a).mul(&gen(j, a, b)));
        }
    }
    (plus.add(&minus), plus, minus)
}

/// Generator actions (site, a, b) -> matrix on a common space. Tensor
/// contexts materialize their Kronecker embeddings here; the polynomial
/// duality model supplies its own matrices. This is the representation
/// interface the KZ/DD builders consume.
#[derive(Clone)]
pub struct SiteActions {
    rank: usize,
    sites: usize,
    dim: usize,
    gens: Vec<RatMatrix>, // ((site-1)*rank + (a-1))*rank + (b-1)
}

impl SiteActions {
    pub fn new(rank: usize, sites: usize, dim: usize, gens: Vec<RatMatrix>) -> Self {
        assert_eq!(gens.len(), sites * rank * rank);
        SiteActions {
            rank,
            sites,
            dim,
            gens,
        }
    }

    pub fn from_tensor(ctx: &TensorContext) -> Self {
        let rank = ctx.rank();
        let sites = ctx.num_factors();
        let mut gens = Vec::with_capacity(sites * rank * rank);
        for site in 1..=sites {
            for a in 1..=rank {
                for b in 1..=rank {
                    gens.push(ctx.embed_at(a, b, site).expect("valid site"));
                }
            }
        }
        SiteActions::new(rank, sites, ctx.total_dim(), gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// (e_ab)_(site), all indices 1-based.
    pub fn gen(&self, site: usize, a: usize, b: usize) -> &RatMatrix {
        assert!(site >= 1 && site <= self.sites);
        assert!(a >= 1 && a <= self.rank && b >= 1 && b <= self.rank);
        &self.gens[((site - 1) * self.rank + (a - 1)) * self.rank + (b - 1)]
    }

    /// The coproduct image: sum of (e_ab)_(i) over all sites.
    pub fn delta(&self, a: usize, b: usize) -> RatMatrix {
        let mut sum = RatMatrix::zeros(self.dim, self.dim);
        for site in 1..=self.sites {
            sum = sum.add(self.gen(site, a, b));
        }
        sum
    }

    pub fn omega(&self, i: usize, j: usize) -> Result<(RatMatrix, RatMatrix, RatMatrix)> {
        for site in [i, j] {
            if site < 1 || site > self.sites {
                return Err(Error::IndexOutOfRange {
                    index: site,
                    bound: self.sites,
                });
            }
        }
        if i == j {
            return Err(Error::SameSlot(i));
        }
        Ok(omega_from_generators(
            self.rank,
            self.dim,
            |site, a, b| self.gen(site, a, b).clone(),
            i,
            j,
        ))
    }

    /// Per-site commutation relations plus cross-site commutativity.
    pub fn validate(&self) -> Result<()> {
        for site in 1..=self.sites {
            check_commutation_relations(self.rank, self.dim, |a, b| self.gen(site, a, b))?;
        }
        for i in 1..=self.sites {
            for j in (i + 1)..=self.sites {
                for a in 1..=self.rank {
                    for b in 1..=self.rank {
                        for c in 1..=self.rank {
                            for d in 1..=self.rank {
                                if !self
                                    .gen(i, a, b)
                                    .commutator(self.gen(j, c, d))
                                    .is_zero()
                                {
                                    return Err(Error::InexactDivision(format!(
                                        "sites {i},{j} do not commute at ({a},{b}),({c},{d})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// C_2 through the coproduct commutes with every coproduct generator.
pub fn check_casimir_central(actions: &SiteActions) -> CheckReport {
    let name = "glrep/casimir-central";
    let m = actions.rank();
    let mut c2 = RatMatrix::zeros(actions.dim(), actions.dim());
    for a in 1..=m {
        for b in 1..=m {
            c2 = c2.add(&actions.delta(a, b).mul(&actions.delta(b, a)));
        }
    }
    for a in 1..=m {
        for b in 1..=m {
            if !c2.commutator(&actions.delta(a, b)).is_zero() {
                return CheckReport::fail(name, json!({ "generator": [a, b] }))
                    .with_param("M", m as u64)
                    .with_param("N", actions.sites() as u64);
            }
        }
    }
    CheckReport::pass(name)
        .with_param("M", m as u64)
        .with_param("N", actions.sites() as u64)
}

/// Omega = Omega+ + Omega- entry-wise, every slot pair.
pub fn check_omega_decomposition(actions: &SiteActions) -> CheckReport {
    let name = "glrep/omega-decomposition";
    for i in 1..=actions.sites() {
        for j in 1..=actions.sites() {
            if i == j {
                continue;
            }
            let (omega, plus, minus) = actions.omega(i, j).expect("valid slots");
            if !omega.equal(&plus.add(&minus)) {
                return CheckReport::fail(name, json!({ "slots": [i, j] }));
            }
        }
    }
    CheckReport::pass(name)
        .with_param("M", actions.rank() as u64)
        .with_param("N", actions.sites() as u64)
}

/// Omega_(ij) = (Delta_ij(C_2) - (C_2)_(i) - (C_2)_(j)) / 2, the two-slot
/// Casimir presentation, every slot pair.
pub fn check_omega_casimir_formula(actions: &SiteActions) -> CheckReport {
    let name = "glrep/omega-casimir-formula";
    let m = actions.rank();
    let dim = actions.dim();
    let local_casimir = |site: usize| -> RatMatrix {
        let mut c = RatMatrix::zeros(dim, dim);
        for a in 1..=m {
            for b in 1..=m {
                c = c.add(&actions.gen(site, a, b).mul(actions.gen(site, b, a)));
            }
        }
        c
    };
    for i in 1..=actions.sites() {
        for j in 1..=actions.sites() {
            if i == j {
                continue;
            }
            let (omega, _, _) = actions.omega(i, j).expect("valid slots");
            let mut two_slot = RatMatrix::zeros(dim, dim);
            for a in 1..=m {
                for b in 1..=m {
                    let x = actions.gen(i, a, b).add(actions.gen(j, a, b));
                    let y = actions.gen(i, b, a).add(actions.gen(j, b, a));
                    two_slot = two_slot.add(&x.mul(&y));
                }
            }
            let expect = two_slot
                .sub(&local_casimir(i))
                .sub(&local_casimir(j))
                .scale_rational(&Rational::new(1, 2));
            if !omega.equal(&expect) {
                return CheckReport::fail(name, json!({ "slots": [i, j] }));
            }
        }
    }
    CheckReport::pass(name)
        .with_param("M", actions.rank() as u64)
        .with_param("N", actions.sites() as u64)
}

/// On C^M x C^M the Casimir two-tensor is the flip.
pub fn check_omega_flip(m: usize) -> Result<CheckReport> {
    let name = "glrep/omega-flip";
    let ctx = TensorContext::vector_power(m, 2)?;
    let (omega, _, _) = ctx.omega(1, 2)?;
    Ok(
        CheckReport::of(name, omega.equal(&flip_matrix(m)), || {
            json!({ "omega": omega.to_json() })
        })
        .with_param("M", m as u64),
    )
}

/// The flip v x w -> w x v on C^M x C^M.
pub fn flip_matrix(m: usize) -> RatMatrix {
    let mut p = RatMatrix::zeros(m * m, m * m);
    for i in 0..m {
        for j in 0..m {
            p.set(j * m + i, i * m + j, RatFunc::one());
        }
    }
    p
}

/// Applies the Cartan automorphism w(e_ab) = -e_ba generator-wise inside the
/// defining sums of Omega+/- and verifies the images swap; also checks that
/// w preserves the structure constants and squares to the identity.
pub fn cartan_automorphism_check(ctx: &TensorContext) -> CheckReport {
    let name = "glrep/cartan-automorphism";
    let m = ctx.rank();
    let dim = ctx.total_dim();

    // structure constants: w[e_ab, e_cd] = [w(e_ab), w(e_cd)] on the space
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                for d in 1..=m {
                    // w of the bracket's expansion d_bc e_ad - d_ad e_cb
                    let mut lhs = RatMatrix::zeros(dim, dim);
                    if b == c {
                        lhs = lhs.sub(&ctx.coproduct(d, a));
                    }
                    if a == d {
                        lhs = lhs.add(&ctx.coproduct(b, c));
                    }
                    let rhs = ctx
                        .coproduct(b, a)
                        .neg()
                        .commutator(&ctx.coproduct(d, c).neg());
                    if !lhs.equal(&rhs) {
                        return CheckReport::fail(
                            name,
                            json!({
                                "part": "structure-constants",
                                "quadruple": [a, b, c, d],
                            }),
                        );
                    }
                }
            }
        }
    }

    // (w x w)(Omega+/-) = Omega-/+ on every slot pair
    let gen = |site: usize, a: usize, b: usize| ctx.embed_at(a, b, site).expect("in range");
    let omega_gen = |site: usize, a: usize, b: usize| gen(site, b, a).neg();
    let n = ctx.num_factors();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let (_, plus, minus) = omega_from_generators(m, dim, gen, i, j);
            let (_, w_plus, w_minus) = omega_from_generators(m, dim, omega_gen, i, j);
            if !w_plus.equal(&minus) || !w_minus.equal(&plus) {
                return CheckReport::fail(
                    name,
                    json!({
                        "part": "omega-swap",
                        "slots": [i, j],
                        "omega_plus_image": w_plus.to_json(),
                        "omega_minus": minus.to_json(),
                    }),
                );
            }
        }
    }

    CheckReport::pass(name)
        .with_param("M", m as u64)
        .with_param("N", n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rep_elementary_action() {
        let rep = RepSpace::vector(2).unwrap();
        // e_21 sends v1 to v2 and kills v2
        let e21 = rep.action(2, 1);
        assert!(e21.get(1, 0).is_one());
        assert!((0..2).all(|i| e21.get(i, 1).is_zero()));
    }

    #[test]
    fn symmetric_square_weights() {
        let rep = RepSpace::symmetric_power(2, 2).unwrap();
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.basis_labels(), &["x1^2", "x1*x2", "x2^2"]);
        let e11 = rep.action(1, 1);
        for (i, expect) in [2i64, 1, 0].into_iter().enumerate() {
            assert_eq!(e11.get(i, i).as_rational().unwrap(), Rational::from_int(expect));
        }
    }

    #[test]
    fn degree_one_symmetric_power_is_vector_rep() {
        for m in 1..=3 {
            let sym = RepSpace::symmetric_power(m, 1).unwrap();
            let vec = RepSpace::vector(m).unwrap();
            for a in 1..=m {
                for b in 1..=m {
                    assert!(sym.action(a, b).equal(vec.action(a, b)));
                }
            }
        }
    }

    #[test]
    fn single_slot_embedding_is_the_action() {
        let ctx = TensorContext::new(vec![RepSpace::vector(2).unwrap()]).unwrap();
        for a in 1..=2 {
            for b in 1..=2 {
                assert!(ctx
                    .embed_at(a, b, 1)
                    .unwrap()
                    .equal(ctx.factors()[0].action(a, b)));
                assert!(ctx.coproduct(a, b).equal(ctx.factors()[0].action(a, b)));
            }
        }
        assert!(ctx.embed_at(1, 1, 2).is_err());
    }

    #[test]
    fn disjoint_slots_commute() {
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        let x = ctx.embed_at(a, b, 1).unwrap();
                        let y = ctx.embed_at(c, d, 2).unwrap();
                        assert!(x.commutator(&y).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn second_slot_diagonal() {
        // (e_11)_(2) on C^2 x C^2 has diagonal (1, 0, 1, 0)
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        let e = ctx.embed_at(1, 1, 2).unwrap();
        for (i, expect) in [1i64, 0, 1, 0].into_iter().enumerate() {
            assert_eq!(e.get(i, i).as_rational().unwrap(), Rational::from_int(expect));
        }
    }

    #[test]
    fn coproduct_eigenvalue_and_homomorphism() {
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        // e_11 counts copies of v1: eigenvalue 2 on v1 x v1
        let e = ctx.coproduct(1, 1);
        assert_eq!(e.get(0, 0).as_rational().unwrap(), Rational::from_int(2));
        // Delta^N respects the bracket
        let deltas: Vec<RatMatrix> = (1..=2)
            .flat_map(|a| (1..=2).map(move |b| (a, b)))
            .map(|(a, b)| ctx.coproduct(a, b))
            .collect();
        check_commutation_relations(2, 4, |a, b| &deltas[(a - 1) * 2 + (b - 1)]).unwrap();
    }

    #[test]
    fn casimir_values() {
        let rep = RepSpace::vector(2).unwrap();
        assert!(rep
            .casimir()
            .equal(&RatMatrix::identity(2).scale_rational(&Rational::from_int(2))));

        let sym22 = RepSpace::symmetric_power(2, 2).unwrap();
        assert!(sym22
            .casimir()
            .equal(&RatMatrix::identity(3).scale_rational(&Rational::from_int(6))));
    }

    #[test]
    fn casimir_is_central() {
        for m in 2..=3 {
            let rep = RepSpace::vector(m).unwrap();
            let c2 = rep.casimir();
            for a in 1..=m {
                for b in 1..=m {
                    assert!(c2.commutator(rep.action(a, b)).is_zero());
                }
            }
        }
        // and through the coproduct on a tensor square
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        let c2 = ctx.casimir();
        for a in 1..=2 {
            for b in 1..=2 {
                assert!(c2.commutator(&ctx.coproduct(a, b)).is_zero());
            }
        }
    }

    #[test]
    fn omega_is_flip_on_vector_square() {
        for m in 2..=4 {
            let ctx = TensorContext::vector_power(m, 2).unwrap();
            let (omega, plus, minus) = ctx.omega(1, 2).unwrap();
            assert!(omega.equal(&flip_matrix(m)), "M = {m}");
            assert!(omega.equal(&plus.add(&minus)));
        }
    }

    #[test]
    fn omega_from_casimir_identity() {
        // Omega = (Delta(C2) - C2 x id - id x C2) / 2 on two slots
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        let (omega, _, _) = ctx.omega(1, 2).unwrap();
        let single = RepSpace::vector(2).unwrap().casimir();
        let left = single.kron(&RatMatrix::identity(2));
        let right = RatMatrix::identity(2).kron(&single);
        let expect = ctx
            .casimir()
            .sub(&left)
            .sub(&right)
            .scale_rational(&Rational::new(1, 2));
        assert!(omega.equal(&expect));
    }

    #[test]
    fn omega_invariance() {
        // [Omega, Delta(x)] = 0 for all generators
        let ctx = TensorContext::vector_power(3, 2).unwrap();
        let (omega, _, _) = ctx.omega(1, 2).unwrap();
        for a in 1..=3 {
            for b in 1..=3 {
                assert!(omega.commutator(&ctx.coproduct(a, b)).is_zero());
            }
        }
    }

    #[test]
    fn same_slot_rejected() {
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        assert!(matches!(ctx.omega(1, 1), Err(Error::SameSlot(1))));
        assert!(ctx.omega(1, 3).is_err());
    }

    #[test]
    fn cartan_check_passes() {
        let ctx = TensorContext::vector_power(2, 2).unwrap();
        assert!(cartan_automorphism_check(&ctx).passed());
        let mixed = TensorContext::new(vec![
            RepSpace::symmetric_power(2, 2).unwrap(),
            RepSpace::vector(2).unwrap(),
        ])
        .unwrap();
        assert!(cartan_automorphism_check(&mixed).passed());
    }

    #[test]
    fn relations_hold_up_to_m4() {
        for m in 1..=4 {
            RepSpace::vector(m).unwrap();
        }
        RepSpace::symmetric_power(3, 2).unwrap();
        RepSpace::symmetric_power(2, 3).unwrap();
    }
}
