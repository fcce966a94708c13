//! Closed forms for the degree functions of each family, exact limits, and a
//! harness comparing both against the subgroup-lattice oracle.

mod limits;
mod tables;
mod verify;

pub use limits::{limit, limit_convergence_probe, limit_entries, LimitEntry};
pub use tables::{appendix_table, ex54_rows, AppendixCell, Ex54Row, APPENDIX_PROPERTIES};
pub use verify::{verify, Comparison, IdentityCheck, VerificationReport};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{construct, FamilySpec};
use crate::group::{census_with_cap, degrees, MAX_GROUP_ORDER};
use crate::numtheory::{
    b_coeff, big_pow, elem_abelian_subgroup_count, sigma, sigma_prime_power, tau, ExactRational,
};

/// One of the five degree functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeFunction {
    Alpha,
    Beta,
    Cdeg,
    Ndeg,
    Jdeg,
}

impl DegreeFunction {
    pub const ALL: [DegreeFunction; 5] = [
        DegreeFunction::Alpha,
        DegreeFunction::Beta,
        DegreeFunction::Cdeg,
        DegreeFunction::Ndeg,
        DegreeFunction::Jdeg,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DegreeFunction::Alpha => "alpha",
            DegreeFunction::Beta => "beta",
            DegreeFunction::Cdeg => "cdeg",
            DegreeFunction::Ndeg => "ndeg",
            DegreeFunction::Jdeg => "jdeg",
        }
    }
}

impl fmt::Display for DegreeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DegreeFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        DegreeFunction::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::parse(
                    format!("`{s}`"),
                    "unknown function; expected alpha, beta, cdeg, ndeg or jdeg",
                )
            })
    }
}

/// The closed forms known for one spec. Absent fields have no closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeFormulaResult {
    pub spec: FamilySpec,
    pub alpha: Option<ExactRational>,
    pub beta: Option<ExactRational>,
    pub cdeg: Option<ExactRational>,
    pub ndeg: Option<ExactRational>,
    /// Identifiers of the closed forms used, e.g. `beta-quaternion`.
    pub provenance: Vec<String>,
}

impl DegreeFormulaResult {
    fn empty(spec: &FamilySpec) -> Self {
        DegreeFormulaResult {
            spec: spec.clone(),
            alpha: None,
            beta: None,
            cdeg: None,
            ndeg: None,
            provenance: Vec::new(),
        }
    }

    pub fn get(&self, f: DegreeFunction) -> Option<&ExactRational> {
        match f {
            DegreeFunction::Alpha => self.alpha.as_ref(),
            DegreeFunction::Beta => self.beta.as_ref(),
            DegreeFunction::Cdeg => self.cdeg.as_ref(),
            DegreeFunction::Ndeg => self.ndeg.as_ref(),
            DegreeFunction::Jdeg => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_none() && self.beta.is_none() && self.cdeg.is_none() && self.ndeg.is_none()
    }

    fn set(&mut self, f: DegreeFunction, value: ExactRational, id: &str) {
        let slot = match f {
            DegreeFunction::Alpha => &mut self.alpha,
            DegreeFunction::Beta => &mut self.beta,
            DegreeFunction::Cdeg => &mut self.cdeg,
            DegreeFunction::Ndeg => &mut self.ndeg,
            DegreeFunction::Jdeg => unreachable!("no closed form for jdeg"),
        };
        *slot = Some(value);
        if !self.provenance.iter().any(|p| p == id) {
            self.provenance.push(id.to_string());
        }
    }

    /// Fills `cdeg = α/β` when both are known and `cdeg` is not.
    fn derive_cdeg(&mut self) {
        if let (None, Some(a), Some(b)) = (&self.cdeg, &self.alpha, &self.beta) {
            self.cdeg = Some(a / b);
            self.provenance.push("cdeg-alpha-over-beta".into());
        }
    }
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> ExactRational {
    ExactRational::frac(n, d)
}

fn two(e: u32) -> BigInt {
    big_pow(2, e)
}

/// Evaluates every closed form that applies to `spec`.
///
/// Families without closed forms yield an empty result. Parameters outside
/// a family's range are domain errors.
pub fn evaluate(spec: &FamilySpec) -> Result<DegreeFormulaResult> {
    spec.validate()?;
    use DegreeFunction::*;
    use FamilySpec::*;
    let mut out = DegreeFormulaResult::empty(spec);
    match *spec {
        Cyclic { n } => {
            let t = tau(n)?;
            out.set(Alpha, q(t, n), "alpha-cyclic-tau");
            out.set(Beta, q(t, n), "beta-cyclic-tau");
            out.set(Cdeg, ExactRational::one(), "cdeg-cyclic");
            out.set(Ndeg, ExactRational::one(), "ndeg-abelian");
        }
        ElementaryAbelian { p, k } => {
            let order = big_pow(p, k);
            // Identity plus one cyclic subgroup per line.
            let cyclic = 1 + (&order - 1) / BigInt::from(p - 1);
            let total = BigInt::from(elem_abelian_subgroup_count(i64::from(k), p)?);
            out.set(Alpha, q(cyclic, order.clone()), "alpha-elementary-abelian");
            out.set(Beta, q(total, order), "beta-elementary-abelian-gaussian");
            out.derive_cdeg();
            out.set(Ndeg, ExactRational::one(), "ndeg-abelian");
        }
        Dihedral { n } => {
            let t = BigInt::from(tau(n)?);
            let s = BigInt::from(sigma(n)?);
            let n = BigInt::from(n);
            out.set(Alpha, q(&n + &t, 2 * &n), "alpha-dihedral-tau");
            out.set(Beta, q(&s + &t, 2 * &n), "beta-dihedral-sigma-tau");
            out.set(Cdeg, q(&n + &t, &s + &t), "cdeg-dihedral-sigma-tau");
        }
        Dihedral2Power { n } => {
            out.set(Alpha, q(two(n - 1) + n, two(n)), "alpha-dihedral-2-group");
            out.set(Beta, q(two(n) + n - 1, two(n)), "beta-dihedral-2-group");
            out.derive_cdeg();
        }
        Quaternion { n } => {
            out.set(Alpha, q(two(n - 2) + n, two(n)), "alpha-quaternion");
            out.set(Beta, q(two(n - 1) + n - 1, two(n)), "beta-quaternion");
            out.derive_cdeg();
        }
        Semidihedral { n } => {
            out.set(Alpha, q(3 * two(n - 3) + n, two(n)), "alpha-semidihedral");
            out.set(Beta, q(3 * two(n - 2) + n - 1, two(n)), "beta-semidihedral");
            out.derive_cdeg();
        }
        Dicyclic { k } => {
            let count = BigInt::from(tau(2 * k)?) + BigInt::from(sigma(k)?);
            out.set(
                Beta,
                q(count, 4 * BigInt::from(k)),
                "beta-dicyclic-tau-sigma",
            );
        }
        Cyclic2PowerTimesC2 { n } => {
            out.set(Alpha, q(n + 2, two(n + 1)), "alpha-c2n1-x-c2");
            out.set(Beta, q(3 * n + 5, two(n + 2)), "beta-c2n1-x-c2");
            out.set(Cdeg, q(2 * (n + 2), 3 * n + 5), "cdeg-c2n1-x-c2");
            out.set(Ndeg, ExactRational::one(), "ndeg-abelian");
        }
        Cyclic2PowerPTimesC2 { n, p } => {
            let order = two(n) * p;
            out.set(Alpha, q(2 * (n + 1), order.clone()), "alpha-c2np-x-c2");
            out.set(Beta, q(3 * n + 2, order), "beta-c2np-x-c2");
            out.set(Cdeg, q(2 * (n + 1), 3 * n + 2), "cdeg-c2np-x-c2");
            out.set(Ndeg, ExactRational::one(), "ndeg-abelian");
        }
        Hamiltonian { n, ref odd_part } => {
            let (alpha_a, beta_a, source) = odd_part_degrees(odd_part)?;
            out.set(Alpha, q(5, 8) * &alpha_a, "alpha-hamiltonian");
            let b = BigInt::from(b_coeff(n));
            out.set(
                Beta,
                beta_a * q(b, two(n + 3)),
                "beta-hamiltonian-b-coefficient",
            );
            out.derive_cdeg();
            out.set(Ndeg, ExactRational::one(), "ndeg-hamiltonian");
            out.provenance.push(source.into());
        }
        Modular { p } => {
            let cube = BigInt::from(p).pow(3);
            out.set(Alpha, q(2 * p + 2, cube.clone()), "alpha-modular-p3");
            out.set(Beta, q(2 * p + 4, cube), "beta-modular-p3");
            out.set(Cdeg, q(p + 1, p + 2), "cdeg-modular-p3");
        }
        SemidirectPQ { .. } => {}
        DicyclicCpC4 { p, n } => {
            let pn = big_pow(p, n);
            let s = sigma_prime_power(p, n);
            let n1 = BigInt::from(n) + 1;
            let total: BigInt = 2 * &n1 + &s;
            out.set(Alpha, q(&pn + 2 * &n1, 4 * &pn), "alpha-cpn-c4");
            out.set(Beta, q(total.clone(), 4 * &pn), "beta-cpn-c4");
            out.set(Cdeg, q(&pn + 2 * &n1, total.clone()), "cdeg-cpn-c4");
            out.set(Ndeg, q(2 * n + 3, total), "ndeg-cpn-c4");
        }
        DicyclicCpQ { p, n, m } => {
            let pn = big_pow(p, n);
            let s = sigma_prime_power(p, n);
            let n1 = BigInt::from(n) + 1;
            let total: BigInt = m * &n1 + &s * (two(m - 1) - 1);
            out.set(Beta, q(total, two(m) * &pn), "beta-cpn-q2m");
            if m == 3 {
                let total8: BigInt = 3 * (&n1 + &s);
                out.set(Alpha, q(2 * &pn + 3 * &n1, 8 * &pn), "alpha-cpn-q8");
                out.set(Cdeg, q(2 * &pn + 3 * &n1, total8.clone()), "cdeg-cpn-q8");
                out.set(Ndeg, q(3 * n + 6, total8), "ndeg-cpn-q8");
            }
        }
        DicyclicCqCpC4 { p, n, q: qq, m } => {
            let total = 2 * (BigInt::from(n) + 1) * (BigInt::from(m) + 1)
                + sigma_prime_power(p, n) * sigma_prime_power(qq, m);
            let order = 4 * big_pow(qq, m) * big_pow(p, n);
            out.set(Beta, q(total, order), "beta-cqm-cpn-c4");
        }
        DicyclicCqCpQ { p, n, q: qq, m, r } => {
            let total = r * (BigInt::from(n) + 1) * (BigInt::from(m) + 1)
                + (two(r - 1) - 1) * sigma_prime_power(p, n) * sigma_prime_power(qq, m);
            let order = two(r) * big_pow(qq, m) * big_pow(p, n);
            out.set(Beta, q(total, order), "beta-cqm-cpn-q2r");
        }
        DirectProduct(..) => product_formulas(spec, &mut out)?,
    }
    Ok(out)
}

/// `α(A)`, `β(A)` for the odd part of a Hamiltonian group: from closed forms
/// when every factor has them and the factor orders are pairwise coprime,
/// otherwise from the oracle.
fn odd_part_degrees(parts: &[FamilySpec]) -> Result<(ExactRational, ExactRational, &'static str)> {
    let mut alpha = ExactRational::one();
    let mut beta = ExactRational::one();
    let mut seen = num_bigint::BigUint::from(1u32);
    let mut closed = true;
    for part in parts {
        let order = part.declared_order();
        let f = evaluate(part)?;
        match (f.alpha, f.beta) {
            (Some(a), Some(b)) if seen.gcd(&order) == 1u32.into() => {
                alpha = alpha * a;
                beta = beta * b;
            }
            _ => {
                closed = false;
                break;
            }
        }
        seen *= order;
    }
    if closed {
        return Ok((alpha, beta, "odd-part-closed-form"));
    }
    let spec = parts
        .iter()
        .cloned()
        .reduce(|a, b| FamilySpec::DirectProduct(Box::new(a), Box::new(b)))
        .expect("a non-closed odd part has at least one factor");
    let group = construct(&spec)?;
    let d = degrees(&census_with_cap(&group, MAX_GROUP_ORDER)?);
    Ok((d.alpha, d.beta, "odd-part-oracle"))
}

fn factors(spec: &FamilySpec) -> Vec<&FamilySpec> {
    match spec {
        FamilySpec::DirectProduct(a, b) => {
            let mut v = factors(a);
            v.extend(factors(b));
            v
        }
        other => vec![other],
    }
}

fn is_elementary_abelian_2_group(spec: &FamilySpec) -> bool {
    match spec {
        FamilySpec::Cyclic { n } => *n <= 2,
        FamilySpec::ElementaryAbelian { p, .. } => *p == 2,
        _ => false,
    }
}

fn product_formulas(spec: &FamilySpec, out: &mut DegreeFormulaResult) -> Result<()> {
    let parts = factors(spec);

    // D_2n × C_2^m: α does not see the elementary abelian factor.
    let dihedral: Vec<u64> = parts
        .iter()
        .filter_map(|f| match f {
            FamilySpec::Dihedral { n } => Some(*n),
            _ => None,
        })
        .collect();
    if dihedral.len() == 1
        && parts
            .iter()
            .filter(|f| is_elementary_abelian_2_group(f))
            .count()
            == parts.len() - 1
    {
        let n = dihedral[0];
        let t = tau(n)?;
        out.set(
            DegreeFunction::Alpha,
            q(n + t, 2 * BigInt::from(n)),
            "alpha-dihedral-times-elementary-2-group",
        );
        return Ok(());
    }

    let FamilySpec::DirectProduct(a, b) = spec else {
        unreachable!("product_formulas is only called on products")
    };
    if a.declared_order().gcd(&b.declared_order()) != 1u32.into() {
        return Ok(());
    }
    let (fa, fb) = (evaluate(a)?, evaluate(b)?);
    for f in [
        DegreeFunction::Alpha,
        DegreeFunction::Beta,
        DegreeFunction::Cdeg,
        DegreeFunction::Ndeg,
    ] {
        if let (Some(x), Some(y)) = (fa.get(f), fb.get(f)) {
            out.set(f, x * y, "coprime-product");
        }
    }
    for id in fa.provenance.iter().chain(&fb.provenance) {
        if !out.provenance.contains(id) {
            out.provenance.push(id.clone());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str) -> DegreeFormulaResult {
        evaluate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn documented_examples() {
        assert_eq!(eval("SD(16)").beta, Some(q(15, 16)));
        assert_eq!(eval("M(3)").cdeg, Some(q(4, 5)));
        let c = eval("C(12)");
        assert_eq!(c.alpha, Some(q(1, 2)));
        assert_eq!(c.cdeg, Some(ExactRational::one()));
        let e = eval("CpC4(3,1)");
        assert_eq!(
            (e.alpha, e.beta, e.cdeg, e.ndeg),
            (Some(q(7, 12)), Some(q(2, 3)), Some(q(7, 8)), Some(q(5, 8)))
        );
    }

    #[test]
    fn cpn_c4_alpha_matches_general_form() {
        for (p, n) in [(3u64, 1u32), (5, 2), (7, 3), (11, 1)] {
            let pn = big_pow(p, n);
            let want = q(&pn + 2 * (n + 1), 4 * &pn);
            assert_eq!(eval(&format!("CpC4({p},{n})")).alpha, Some(want));
        }
    }

    #[test]
    fn two_group_alpha_product_form() {
        // α = ((c)/(|L|)) · (|L|/2^n) with c, |L| the subgroup counts.
        for n in 3..=12u32 {
            let cases: [(&str, BigInt, BigInt); 3] = [
                ("D", two(n - 1) + n, two(n) + n - 1),
                ("Q", two(n - 2) + n, two(n - 1) + n - 1),
                ("SD", 3 * two(n - 3) + n, 3 * two(n - 2) + n - 1),
            ];
            for (name, c, l) in cases {
                if name == "SD" && n < 4 {
                    continue;
                }
                let spec = format!("{name}({})", two(n));
                let product = q(c, l.clone()) * q(l, two(n));
                assert_eq!(eval(&spec).alpha, Some(product), "{spec}");
            }
        }
    }

    #[test]
    fn cdeg_is_alpha_over_beta_in_the_catalog() {
        let specs = [
            "D(2,6)",
            "D(32)",
            "Q(64)",
            "SD(64)",
            "E(3,4)",
            "Ab2(5)",
            "Ab2p(3,7)",
            "Ham(n=2;C9)",
            "M(11)",
            "CpC4(5,3)",
            "CpQ(3,2,3)",
            "C(12)xM(5)",
            "C(9)xQ(8)",
        ];
        for s in specs {
            let f = eval(s);
            let (a, b, c) = (f.alpha.unwrap(), f.beta.unwrap(), f.cdeg.unwrap());
            assert_eq!(c, &a / &b, "{s}");
        }
    }

    #[test]
    fn out_of_range_is_rejected() {
        for s in ["SD(8)", "Q(4)", "CpQ(3,1,2)", "M(9)", "Ab2p(0,3)"] {
            let spec: std::result::Result<FamilySpec, _> = s.parse();
            if let Ok(spec) = spec {
                assert!(evaluate(&spec).is_err(), "{s}")
            }
        }
    }

    #[test]
    fn semidirect_pq_has_no_closed_form() {
        assert!(eval("PQ(7,3,1,1)").is_empty());
        assert!(eval("PQ(7,3,1,1)xC(2)").is_empty());
    }

    #[test]
    fn dihedral_with_elementary_factor_gets_alpha_only() {
        let f = eval("D(2,5)xE(2,2)");
        assert_eq!(f.alpha, Some(q(7, 10)));
        assert_eq!(f.beta, None);
        assert_eq!(eval("D(2,6)xC(2)xC(2)").alpha, Some(q(10, 12)));
    }

    #[test]
    fn hamiltonian_uses_oracle_for_non_coprime_odd_parts() {
        let f = eval("Ham(n=0;C3,C3)");
        assert!(f.provenance.iter().any(|p| p == "odd-part-oracle"));
        assert_eq!(f.alpha, eval("Ham(n=0;E(3,2))").alpha);
        assert_eq!(f.beta, eval("Ham(n=0;E(3,2))").beta);
    }
}
