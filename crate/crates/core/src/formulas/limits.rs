use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use super::{evaluate, DegreeFunction};
use crate::error::{Error, Result};
use crate::families::FamilyKind;
use crate::numtheory::{big_pow, sigma_prime_power, ExactRational};

type LimitFn = fn(&BTreeMap<String, u64>) -> ExactRational;

struct LimitRule {
    kind: FamilyKind,
    varying: &'static str,
    function: DegreeFunction,
    /// Parameters that must be fixed, besides the varying one.
    fixed: &'static [&'static str],
    /// Required values for some fixed parameters (e.g. the `Q_8` row needs `m = 3`).
    pinned: &'static [(&'static str, u64)],
    expression: &'static str,
    source: &'static str,
    value: LimitFn,
}

/// A limit of one degree function as one family parameter grows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitEntry {
    pub kind: FamilyKind,
    pub varying: String,
    pub fixed: BTreeMap<String, u64>,
    pub function: DegreeFunction,
    /// The limit as an expression in the fixed parameters.
    pub expression: String,
    /// The expression evaluated at `fixed`.
    pub value: ExactRational,
    pub source: String,
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> ExactRational {
    ExactRational::frac(n, d)
}

fn get(p: &BTreeMap<String, u64>, k: &str) -> u64 {
    p[k]
}

fn exp(p: &BTreeMap<String, u64>, k: &str) -> u32 {
    p[k] as u32
}

fn constant(n: i64, d: i64) -> ExactRational {
    q(n, d)
}

/// `σ(p^n)/p^n` with the fixed `p`, `n`.
fn sigma_ratio(p: u64, n: u32) -> ExactRational {
    q(sigma_prime_power(p, n), big_pow(p, n))
}

macro_rules! rule {
    ($kind:ident, $var:literal, $f:ident, [$($fixed:literal),*], [$(($pk:literal, $pv:literal)),*], $expr:literal, $src:literal, $value:expr) => {
        LimitRule {
            kind: FamilyKind::$kind,
            varying: $var,
            function: DegreeFunction::$f,
            fixed: &[$($fixed),*],
            pinned: &[$(($pk, $pv)),*],
            expression: $expr,
            source: $src,
            value: $value,
        }
    };
}

static RULES: &[LimitRule] = &[
    rule!(
        Dihedral2Power,
        "n",
        Beta,
        [],
        [],
        "1",
        "limits-2-groups",
        |_| constant(1, 1)
    ),
    rule!(
        Quaternion,
        "n",
        Beta,
        [],
        [],
        "1/2",
        "limits-2-groups",
        |_| constant(1, 2)
    ),
    rule!(
        Semidihedral,
        "n",
        Beta,
        [],
        [],
        "3/4",
        "limits-2-groups",
        |_| constant(3, 4)
    ),
    rule!(
        Dihedral2Power,
        "n",
        Alpha,
        [],
        [],
        "1/2",
        "limits-2-groups",
        |_| constant(1, 2)
    ),
    rule!(
        Quaternion,
        "n",
        Alpha,
        [],
        [],
        "1/4",
        "limits-2-groups",
        |_| constant(1, 4)
    ),
    rule!(
        Semidihedral,
        "n",
        Alpha,
        [],
        [],
        "3/8",
        "limits-2-groups",
        |_| constant(3, 8)
    ),
    rule!(
        Dihedral2Power,
        "n",
        Cdeg,
        [],
        [],
        "1/2",
        "limits-2-groups",
        |_| constant(1, 2)
    ),
    rule!(
        Quaternion,
        "n",
        Cdeg,
        [],
        [],
        "1/2",
        "limits-2-groups",
        |_| constant(1, 2)
    ),
    rule!(
        Semidihedral,
        "n",
        Cdeg,
        [],
        [],
        "1/2",
        "limits-2-groups",
        |_| constant(1, 2)
    ),
    rule!(
        Dihedral,
        "n",
        Alpha,
        ["m"],
        [],
        "1/2",
        "limit-dihedral-tau",
        |_| constant(1, 2)
    ),
    rule!(
        Cyclic2PowerTimesC2,
        "n",
        Alpha,
        [],
        [],
        "0",
        "limits-abelian-2-groups",
        |_| constant(0, 1)
    ),
    rule!(
        Cyclic2PowerTimesC2,
        "n",
        Beta,
        [],
        [],
        "0",
        "limits-abelian-2-groups",
        |_| constant(0, 1)
    ),
    rule!(
        Cyclic2PowerTimesC2,
        "n",
        Cdeg,
        [],
        [],
        "2/3",
        "limits-abelian-2-groups",
        |_| constant(2, 3)
    ),
    rule!(
        Cyclic2PowerPTimesC2,
        "n",
        Alpha,
        ["p"],
        [],
        "0",
        "limits-abelian-2-groups",
        |_| constant(0, 1)
    ),
    rule!(
        Cyclic2PowerPTimesC2,
        "n",
        Beta,
        ["p"],
        [],
        "0",
        "limits-abelian-2-groups",
        |_| constant(0, 1)
    ),
    rule!(
        Cyclic2PowerPTimesC2,
        "n",
        Cdeg,
        ["p"],
        [],
        "2/3",
        "limits-abelian-2-groups",
        |_| constant(2, 3)
    ),
    rule!(
        Hamiltonian,
        "m",
        Alpha,
        ["n", "p"],
        [],
        "5/(8(p-1))",
        "limit-hamiltonian-alpha",
        |f| { q(5, 8 * (get(f, "p") - 1)) }
    ),
    rule!(
        DicyclicCpC4,
        "n",
        Alpha,
        ["p"],
        [],
        "1/4",
        "limits-cpn-c4",
        |_| constant(1, 4)
    ),
    rule!(
        DicyclicCpC4,
        "n",
        Beta,
        ["p"],
        [],
        "p/(4(p-1))",
        "limits-cpn-c4",
        |f| {
            let p = get(f, "p");
            q(p, 4 * (p - 1))
        }
    ),
    rule!(
        DicyclicCpC4,
        "n",
        Cdeg,
        ["p"],
        [],
        "(p-1)/p",
        "limits-cpn-c4",
        |f| {
            let p = get(f, "p");
            q(p - 1, p)
        }
    ),
    rule!(
        DicyclicCpC4,
        "n",
        Ndeg,
        ["p"],
        [],
        "0",
        "limits-cpn-c4",
        |_| constant(0, 1)
    ),
    rule!(
        DicyclicCpQ,
        "n",
        Beta,
        ["p", "m"],
        [],
        "(p/(p-1))(1/2 - 1/2^m)",
        "limits-cpn-q2m",
        |f| {
            let p = get(f, "p");
            q(p, p - 1) * (q(1, 2) - q(1, big_pow(2, exp(f, "m"))))
        }
    ),
    rule!(
        DicyclicCpQ,
        "m",
        Beta,
        ["p", "n"],
        [],
        "(p^(n+1)-1)/(2p^n(p-1))",
        "limits-cpn-q2m",
        |f| { sigma_ratio(get(f, "p"), exp(f, "n")) * q(1, 2) }
    ),
    rule!(
        DicyclicCpQ,
        "n",
        Alpha,
        ["p", "m"],
        [("m", 3)],
        "1/4",
        "limits-cpn-q8",
        |_| constant(1, 4)
    ),
    rule!(
        DicyclicCpQ,
        "n",
        Cdeg,
        ["p", "m"],
        [("m", 3)],
        "2(p-1)/(3p)",
        "limits-cpn-q8",
        |f| {
            let p = get(f, "p");
            q(2 * (p - 1), 3 * p)
        }
    ),
    rule!(
        DicyclicCpQ,
        "n",
        Ndeg,
        ["p", "m"],
        [("m", 3)],
        "0",
        "limits-cpn-q8",
        |_| constant(0, 1)
    ),
    rule!(
        DicyclicCqCpC4,
        "n",
        Beta,
        ["p", "q", "m"],
        [],
        "p(q^(m+1)-1)/(4(p-1)(q-1)q^m)",
        "limits-cqm-cpn-c4",
        |f| {
            let p = get(f, "p");
            q(p, 4 * (p - 1)) * sigma_ratio(get(f, "q"), exp(f, "m"))
        }
    ),
    rule!(
        DicyclicCqCpC4,
        "m",
        Beta,
        ["p", "n", "q"],
        [],
        "q(p^(n+1)-1)/(4(p-1)(q-1)p^n)",
        "limits-cqm-cpn-c4",
        |f| {
            let qq = get(f, "q");
            q(qq, 4 * (qq - 1)) * sigma_ratio(get(f, "p"), exp(f, "n"))
        }
    ),
    rule!(
        DicyclicCqCpQ,
        "n",
        Beta,
        ["p", "q", "m", "r"],
        [],
        "((2^(r-1)-1)/2^r)(p/(p-1))(q^(m+1)-1)/(q^m(q-1))",
        "limits-cqm-cpn-q2r",
        |f| {
            let p = get(f, "p");
            let r = exp(f, "r");
            q(big_pow(2, r - 1) - 1, big_pow(2, r))
                * q(p, p - 1)
                * sigma_ratio(get(f, "q"), exp(f, "m"))
        }
    ),
    rule!(
        DicyclicCqCpQ,
        "m",
        Beta,
        ["p", "n", "q", "r"],
        [],
        "(2^(r-1)-1)(p^(n+1)-1)q/(2^r p^n (p-1)(q-1))",
        "limits-cqm-cpn-q2r",
        |f| {
            let qq = get(f, "q");
            let r = exp(f, "r");
            q(big_pow(2, r - 1) - 1, big_pow(2, r))
                * q(qq, qq - 1)
                * sigma_ratio(get(f, "p"), exp(f, "n"))
        }
    ),
    rule!(
        DicyclicCqCpQ,
        "r",
        Beta,
        ["p", "n", "q", "m"],
        [],
        "(p^(n+1)-1)(q^(m+1)-1)/(2q^m p^n (p-1)(q-1))",
        "limits-cqm-cpn-q2r",
        |f| {
            q(1, 2) * sigma_ratio(get(f, "p"), exp(f, "n")) * sigma_ratio(get(f, "q"), exp(f, "m"))
        }
    ),
    rule!(
        Modular,
        "p",
        Alpha,
        [],
        [],
        "0",
        "limits-modular-p3",
        |_| constant(0, 1)
    ),
    rule!(Modular, "p", Beta, [], [], "0", "limits-modular-p3", |_| {
        constant(0, 1)
    }),
    rule!(Modular, "p", Cdeg, [], [], "1", "limits-modular-p3", |_| {
        constant(1, 1)
    }),
];

impl LimitRule {
    fn entry(&self, fixed: BTreeMap<String, u64>) -> LimitEntry {
        LimitEntry {
            kind: self.kind,
            varying: self.varying.to_string(),
            function: self.function,
            expression: self.expression.to_string(),
            value: (self.value)(&fixed),
            source: self.source.to_string(),
            fixed,
        }
    }
}

/// `(family, varying parameter, function, expression)` for every stored limit.
pub fn limit_entries() -> Vec<(FamilyKind, &'static str, DegreeFunction, &'static str)> {
    RULES
        .iter()
        .map(|r| (r.kind, r.varying, r.function, r.expression))
        .collect()
}

/// The stored limit of `function` on family `kind` as `varying → ∞`, with the
/// other parameters fixed. `Ok(None)` when no such limit is stored.
///
/// Fixed parameters are checked by building the family at a valid value of
/// the varying parameter, so e.g. an even `p` is a domain error.
pub fn limit(
    kind: FamilyKind,
    function: DegreeFunction,
    varying: &str,
    fixed: &BTreeMap<String, u64>,
) -> Result<Option<LimitEntry>> {
    let Some(rule) = RULES.iter().find(|r| {
        r.kind == kind
            && r.function == function
            && r.varying == varying
            && r.pinned.iter().all(|(k, v)| fixed.get(*k) == Some(v))
    }) else {
        return Ok(None);
    };
    let mut used = BTreeMap::new();
    for &name in rule.fixed {
        match fixed.get(name) {
            Some(&v) => {
                used.insert(name.to_string(), v);
            }
            None if name == "m" && kind == FamilyKind::Dihedral => {
                used.insert(name.to_string(), 0);
            }
            None => {
                return Err(Error::domain(format!(
                    "the limit of {function} on {kind} as {varying} grows needs a fixed {name}"
                )))
            }
        }
    }
    if let Some(extra) = fixed.keys().find(|k| !rule.fixed.contains(&k.as_str())) {
        return Err(Error::domain(format!(
            "parameter {extra} is not a fixed parameter of this limit"
        )));
    }
    // Validate the fixed parameters against the family constraints.
    let mut probe = used.clone();
    probe.insert(varying.to_string(), smallest_valid(kind, varying));
    kind.build(&probe)?;
    Ok(Some(rule.entry(used)))
}

fn smallest_valid(kind: FamilyKind, varying: &str) -> u64 {
    match (kind, varying) {
        (FamilyKind::Quaternion, _)
        | (FamilyKind::DicyclicCpQ, "m")
        | (FamilyKind::DicyclicCqCpQ, "r") => 3,
        (FamilyKind::Semidihedral, _) => 4,
        (FamilyKind::Dihedral2Power, _) => 2,
        (FamilyKind::Modular, _) => 3,
        _ => 1,
    }
}

/// `|value − limit|` at each value of the varying parameter, exactly.
pub fn limit_convergence_probe(
    entry: &LimitEntry,
    values: &[u64],
) -> Result<Vec<(u64, ExactRational)>> {
    values
        .iter()
        .map(|&v| {
            let mut params = entry.fixed.clone();
            params.insert(entry.varying.clone(), v);
            let spec = entry.kind.build(&params)?;
            let result = evaluate(&spec)?;
            let value = result.get(entry.function).ok_or_else(|| {
                Error::domain(format!("no closed form for {} of {spec}", entry.function))
            })?;
            Ok((v, (value - &entry.value).abs()))
        })
        .collect()
}
