//! Parameterized group families and their concrete constructions.

mod parse;

pub use parse::parse_family_spec;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, MAX_GROUP_ORDER};
use crate::numtheory::is_prime;

/// One of the group families the toolkit knows closed forms or constructions for.
///
/// The text form (see [`parse_family_spec`]) is what `Display` prints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `C_n`
    Cyclic {
        n: u64,
    },
    /// `C_p^k`
    ElementaryAbelian {
        p: u64,
        k: u32,
    },
    /// `D_{2n}`, the dihedral group of order `2n`.
    Dihedral {
        n: u64,
    },
    /// `D_{2^n}`, the dihedral group of order `2^n`.
    Dihedral2Power {
        n: u32,
    },
    /// `Q_{2^n}`, `n ≥ 3`.
    Quaternion {
        n: u32,
    },
    /// `SD_{2^n}`, `n ≥ 4`.
    Semidihedral {
        n: u32,
    },
    /// `Dic_k`, of order `4k`.
    Dicyclic {
        k: u64,
    },
    /// `C_{2^{n+1}} × C_2`
    Cyclic2PowerTimesC2 {
        n: u32,
    },
    /// `C_{2^n p} × C_2` for an odd prime `p`.
    Cyclic2PowerPTimesC2 {
        n: u32,
        p: u64,
    },
    /// `Q_8 × C_2^n × A` with `A` the product of `odd_part` (odd order, abelian).
    Hamiltonian {
        n: u32,
        odd_part: Vec<FamilySpec>,
    },
    /// `C_{p^2} ⋊ C_p` with action `a ↦ a^{1+p}`, `p` odd.
    Modular {
        p: u64,
    },
    /// `C_p ⋊ C_{q^n}` where the generator acts with multiplicative order `q^s`.
    SemidirectPQ {
        p: u64,
        q: u64,
        n: u32,
        s: u32,
    },
    /// `C_{p^n} ⋊ C_4`, realized as `Dic_{p^n}`.
    DicyclicCpC4 {
        p: u64,
        n: u32,
    },
    /// `C_{p^n} ⋊ Q_{2^m}`, realized as `Dic_{2^{m-2} p^n}`.
    DicyclicCpQ {
        p: u64,
        n: u32,
        m: u32,
    },
    /// `C_{q^m} ⋊ (C_{p^n} ⋊ C_4)`, realized as `Dic_{p^n q^m}`.
    DicyclicCqCpC4 {
        p: u64,
        n: u32,
        q: u64,
        m: u32,
    },
    /// `C_{q^m} ⋊ (C_{p^n} ⋊ Q_{2^r})`, realized as `Dic_{2^{r-2} p^n q^m}`.
    DicyclicCqCpQ {
        p: u64,
        n: u32,
        q: u64,
        m: u32,
        r: u32,
    },
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
}

fn pow_u64(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

fn big(base: u64, exp: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

fn require_odd_prime(p: u64, family: &str) -> Result<()> {
    require(p >= 3 && is_prime(p), || {
        format!("{family} requires an odd prime, got {p}")
    })
}

impl FamilySpec {
    /// Checks the parameter constraints of the family.
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        match self {
            Cyclic { n } => require(*n >= 1, || "cyclic group needs n >= 1".into()),
            ElementaryAbelian { p, .. } => require(is_prime(*p), || {
                format!("elementary abelian group needs a prime, got {p}")
            }),
            Dihedral { n } => require(*n >= 1, || "dihedral group D_2n needs n >= 1".into()),
            Dihedral2Power { n } => require(*n >= 2, || {
                format!("dihedral 2-group D_2^n needs n >= 2, got {n}")
            }),
            Quaternion { n } => require(*n >= 3, || {
                format!("generalized quaternion group Q_2^n needs n >= 3, got {n}")
            }),
            Semidihedral { n } => require(*n >= 4, || {
                format!("semidihedral group SD_2^n needs n >= 4, got {n}")
            }),
            Dicyclic { k } => require(*k >= 1, || "dicyclic group needs k >= 1".into()),
            Cyclic2PowerTimesC2 { .. } => Ok(()),
            Cyclic2PowerPTimesC2 { n, p } => {
                require(*n >= 1, || format!("C_(2^n p) x C_2 needs n >= 1, got {n}"))?;
                require_odd_prime(*p, "C_(2^n p) x C_2")
            }
            Hamiltonian { odd_part, .. } => {
                for part in odd_part {
                    part.validate()?;
                    require(part.is_abelian_family(), || {
                        format!("Hamiltonian odd part {part} must be abelian")
                    })?;
                    require(part.declared_order().bit(0), || {
                        format!("Hamiltonian odd part {part} must have odd order")
                    })?;
                }
                Ok(())
            }
            Modular { p } => require_odd_prime(*p, "C_(p^2) x| C_p"),
            SemidirectPQ { p, q, n, s } => {
                require(is_prime(*p) && is_prime(*q) && p != q, || {
                    format!("C_p x| C_(q^n) needs distinct primes, got p = {p}, q = {q}")
                })?;
                require(*s >= 1 && s <= n, || {
                    format!("C_p x| C_(q^n) needs 1 <= s <= n, got s = {s}, n = {n}")
                })?;
                let qs = pow_u64(*q, *s).unwrap_or(u64::MAX);
                require((p - 1) % qs == 0, || {
                    format!("C_p x| C_(q^n) needs q^s | p - 1, got q^s = {qs}, p = {p}")
                })
            }
            DicyclicCpC4 { p, n } => {
                require_odd_prime(*p, "C_(p^n) x| C_4")?;
                require(*n >= 1, || format!("C_(p^n) x| C_4 needs n >= 1, got {n}"))
            }
            DicyclicCpQ { p, n, m } => {
                require_odd_prime(*p, "C_(p^n) x| Q_(2^m)")?;
                require(*n >= 1, || {
                    format!("C_(p^n) x| Q_(2^m) needs n >= 1, got {n}")
                })?;
                require(*m >= 3, || {
                    format!("C_(p^n) x| Q_(2^m) needs m >= 3, got {m}")
                })
            }
            DicyclicCqCpC4 { p, n, q, m } => {
                require_odd_prime(*p, "C_(q^m) x| (C_(p^n) x| C_4)")?;
                require_odd_prime(*q, "C_(q^m) x| (C_(p^n) x| C_4)")?;
                require(p != q, || format!("p and q must differ, both are {p}"))?;
                require(*n >= 1 && *m >= 1, || {
                    "exponents n and m must be >= 1".into()
                })
            }
            DicyclicCqCpQ { p, n, q, m, r } => {
                require_odd_prime(*p, "C_(q^m) x| (C_(p^n) x| Q_(2^r))")?;
                require_odd_prime(*q, "C_(q^m) x| (C_(p^n) x| Q_(2^r))")?;
                require(p != q, || format!("p and q must differ, both are {p}"))?;
                require(*n >= 1 && *m >= 1, || {
                    "exponents n and m must be >= 1".into()
                })?;
                require(*r >= 3, || {
                    format!("C_(q^m) x| (C_(p^n) x| Q_(2^r)) needs r >= 3, got {r}")
                })
            }
            DirectProduct(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    fn is_abelian_family(&self) -> bool {
        match self {
            FamilySpec::Cyclic { .. }
            | FamilySpec::ElementaryAbelian { .. }
            | FamilySpec::Cyclic2PowerTimesC2 { .. }
            | FamilySpec::Cyclic2PowerPTimesC2 { .. } => true,
            FamilySpec::DirectProduct(a, b) => a.is_abelian_family() && b.is_abelian_family(),
            _ => false,
        }
    }

    /// The group order the family declares, without building anything.
    pub fn declared_order(&self) -> BigUint {
        use FamilySpec::*;
        match self {
            Cyclic { n } => BigUint::from(*n),
            ElementaryAbelian { p, k } => big(*p, *k),
            Dihedral { n } => BigUint::from(*n) * 2u32,
            Dihedral2Power { n } | Quaternion { n } | Semidihedral { n } => big(2, *n),
            Dicyclic { k } => BigUint::from(*k) * 4u32,
            Cyclic2PowerTimesC2 { n } => big(2, n + 2),
            Cyclic2PowerPTimesC2 { n, p } => big(2, n + 1) * *p,
            Hamiltonian { n, odd_part } => odd_part
                .iter()
                .fold(big(2, n + 3), |acc, part| acc * part.declared_order()),
            Modular { p } => big(*p, 3),
            SemidirectPQ { p, q, n, .. } => big(*q, *n) * *p,
            DicyclicCpC4 { .. }
            | DicyclicCpQ { .. }
            | DicyclicCqCpC4 { .. }
            | DicyclicCqCpQ { .. } => self.dicyclic_parameter().expect("dicyclic family") * 4u32,
            DirectProduct(a, b) => a.declared_order() * b.declared_order(),
        }
    }

    /// For the semidirect families realized as dicyclic groups, the `k` of `Dic_k`.
    pub fn dicyclic_parameter(&self) -> Option<BigUint> {
        use FamilySpec::*;
        match self {
            Dicyclic { k } => Some(BigUint::from(*k)),
            DicyclicCpC4 { p, n } => Some(big(*p, *n)),
            DicyclicCpQ { p, n, m } => Some(big(2, m - 2) * big(*p, *n)),
            DicyclicCqCpC4 { p, n, q, m } => Some(big(*p, *n) * big(*q, *m)),
            DicyclicCqCpQ { p, n, q, m, r } => Some(big(2, r - 2) * big(*p, *n) * big(*q, *m)),
            _ => None,
        }
    }

    /// The kind of this spec.
    pub fn kind(&self) -> FamilyKind {
        use FamilySpec::*;
        match self {
            Cyclic { .. } => FamilyKind::Cyclic,
            ElementaryAbelian { .. } => FamilyKind::ElementaryAbelian,
            Dihedral { .. } => FamilyKind::Dihedral,
            Dihedral2Power { .. } => FamilyKind::Dihedral2Power,
            Quaternion { .. } => FamilyKind::Quaternion,
            Semidihedral { .. } => FamilyKind::Semidihedral,
            Dicyclic { .. } => FamilyKind::Dicyclic,
            Cyclic2PowerTimesC2 { .. } => FamilyKind::Cyclic2PowerTimesC2,
            Cyclic2PowerPTimesC2 { .. } => FamilyKind::Cyclic2PowerPTimesC2,
            Hamiltonian { .. } => FamilyKind::Hamiltonian,
            Modular { .. } => FamilyKind::Modular,
            SemidirectPQ { .. } => FamilyKind::SemidirectPQ,
            DicyclicCpC4 { .. } => FamilyKind::DicyclicCpC4,
            DicyclicCpQ { .. } => FamilyKind::DicyclicCpQ,
            DicyclicCqCpC4 { .. } => FamilyKind::DicyclicCqCpC4,
            DicyclicCqCpQ { .. } => FamilyKind::DicyclicCqCpQ,
            DirectProduct(..) => FamilyKind::DirectProduct,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match self {
            Cyclic { n } => write!(f, "C({n})"),
            ElementaryAbelian { p, k } => write!(f, "E({p},{k})"),
            Dihedral { n } => write!(f, "D(2,{n})"),
            Dihedral2Power { n } => write!(f, "D({})", big(2, *n)),
            Quaternion { n } => write!(f, "Q({})", big(2, *n)),
            Semidihedral { n } => write!(f, "SD({})", big(2, *n)),
            Dicyclic { k } => write!(f, "Dic({k})"),
            Cyclic2PowerTimesC2 { n } => write!(f, "Ab2({n})"),
            Cyclic2PowerPTimesC2 { n, p } => write!(f, "Ab2p({n},{p})"),
            Hamiltonian { n, odd_part } => {
                write!(f, "Ham(n={n}")?;
                for (i, part) in odd_part.iter().enumerate() {
                    write!(f, "{}{part}", if i == 0 { ";" } else { "," })?;
                }
                write!(f, ")")
            }
            Modular { p } => write!(f, "M({p})"),
            SemidirectPQ { p, q, n, s } => write!(f, "PQ({p},{q},{n},{s})"),
            DicyclicCpC4 { p, n } => write!(f, "CpC4({p},{n})"),
            DicyclicCpQ { p, n, m } => write!(f, "CpQ({p},{n},{m})"),
            DicyclicCqCpC4 { p, n, q, m } => write!(f, "CqCpC4({p},{n},{q},{m})"),
            DicyclicCqCpQ { p, n, q, m, r } => write!(f, "CqCpQ({p},{n},{q},{m},{r})"),
            DirectProduct(a, b) => {
                // Products associate to the left when parsed.
                if matches!(**b, DirectProduct(..)) {
                    write!(f, "{a}x({b})")
                } else {
                    write!(f, "{a}x{b}")
                }
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_family_spec(s)
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilySpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Family names without parameters, used for parameter sweeps and limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
    Dihedral2Power,
    Quaternion,
    Semidihedral,
    Dicyclic,
    Cyclic2PowerTimesC2,
    Cyclic2PowerPTimesC2,
    Hamiltonian,
    Modular,
    SemidirectPQ,
    DicyclicCpC4,
    DicyclicCpQ,
    DicyclicCqCpC4,
    DicyclicCqCpQ,
    DirectProduct,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 16] = [
        FamilyKind::Cyclic,
        FamilyKind::ElementaryAbelian,
        FamilyKind::Dihedral,
        FamilyKind::Dihedral2Power,
        FamilyKind::Quaternion,
        FamilyKind::Semidihedral,
        FamilyKind::Dicyclic,
        FamilyKind::Cyclic2PowerTimesC2,
        FamilyKind::Cyclic2PowerPTimesC2,
        FamilyKind::Hamiltonian,
        FamilyKind::Modular,
        FamilyKind::SemidirectPQ,
        FamilyKind::DicyclicCpC4,
        FamilyKind::DicyclicCpQ,
        FamilyKind::DicyclicCqCpC4,
        FamilyKind::DicyclicCqCpQ,
    ];

    /// Short name used on the command line.
    pub fn name(self) -> &'static str {
        use FamilyKind::*;
        match self {
            Cyclic => "C",
            ElementaryAbelian => "E",
            Dihedral => "D2n",
            Dihedral2Power => "D",
            Quaternion => "Q",
            Semidihedral => "SD",
            Dicyclic => "Dic",
            Cyclic2PowerTimesC2 => "Ab2",
            Cyclic2PowerPTimesC2 => "Ab2p",
            Hamiltonian => "Ham",
            Modular => "M",
            SemidirectPQ => "PQ",
            DicyclicCpC4 => "CpC4",
            DicyclicCpQ => "CpQ",
            DicyclicCqCpC4 => "CqCpC4",
            DicyclicCqCpQ => "CqCpQ",
            DirectProduct => "x",
        }
    }

    /// Parameter names, in the order `build` reads them. For `Ham`, `p` and
    /// `m` describe the odd part `C_p^m` (omitted or `m = 0` means trivial).
    pub fn params(self) -> &'static [&'static str] {
        use FamilyKind::*;
        match self {
            Cyclic => &["n"],
            ElementaryAbelian => &["p", "k"],
            Dihedral => &["n", "m"],
            Dihedral2Power | Quaternion | Semidihedral => &["n"],
            Dicyclic => &["k"],
            Cyclic2PowerTimesC2 => &["n"],
            Cyclic2PowerPTimesC2 => &["n", "p"],
            Hamiltonian => &["n", "p", "m"],
            Modular => &["p"],
            SemidirectPQ => &["p", "q", "n", "s"],
            DicyclicCpC4 => &["p", "n"],
            DicyclicCpQ => &["p", "n", "m"],
            DicyclicCqCpC4 => &["p", "n", "q", "m"],
            DicyclicCqCpQ => &["p", "n", "q", "m", "r"],
            DirectProduct => &[],
        }
    }

    /// Parameters that may be left out, with their defaults.
    fn default_param(self, name: &str) -> Option<u64> {
        match (self, name) {
            (FamilyKind::Dihedral, "m") => Some(0),
            (FamilyKind::Hamiltonian, "m") => Some(0),
            (FamilyKind::Hamiltonian, "p") => Some(3),
            _ => None,
        }
    }

    /// Builds a spec from named parameters, e.g. `Q` with `n = 4` is `Q(16)`.
    ///
    /// `D2n` with `m > 0` yields `D_{2n} × C_2^m`.
    pub fn build(self, params: &BTreeMap<String, u64>) -> Result<FamilySpec> {
        let get = |name: &str| -> Result<u64> {
            params
                .get(name)
                .copied()
                .or_else(|| self.default_param(name))
                .ok_or_else(|| {
                    Error::domain(format!("family {} needs parameter {name}", self.name()))
                })
        };
        let exp = |name: &str| -> Result<u32> {
            let v = get(name)?;
            u32::try_from(v)
                .map_err(|_| Error::domain(format!("parameter {name} = {v} is too large")))
        };
        if let Some(extra) = params.keys().find(|k| !self.params().contains(&k.as_str())) {
            return Err(Error::domain(format!(
                "family {} has no parameter {extra}",
                self.name()
            )));
        }
        use FamilyKind::*;
        let spec = match self {
            Cyclic => FamilySpec::Cyclic { n: get("n")? },
            ElementaryAbelian => FamilySpec::ElementaryAbelian {
                p: get("p")?,
                k: exp("k")?,
            },
            Dihedral => {
                let d = FamilySpec::Dihedral { n: get("n")? };
                match exp("m")? {
                    0 => d,
                    m => FamilySpec::DirectProduct(
                        Box::new(d),
                        Box::new(FamilySpec::ElementaryAbelian { p: 2, k: m }),
                    ),
                }
            }
            Dihedral2Power => FamilySpec::Dihedral2Power { n: exp("n")? },
            Quaternion => FamilySpec::Quaternion { n: exp("n")? },
            Semidihedral => FamilySpec::Semidihedral { n: exp("n")? },
            Dicyclic => FamilySpec::Dicyclic { k: get("k")? },
            Cyclic2PowerTimesC2 => FamilySpec::Cyclic2PowerTimesC2 { n: exp("n")? },
            Cyclic2PowerPTimesC2 => FamilySpec::Cyclic2PowerPTimesC2 {
                n: exp("n")?,
                p: get("p")?,
            },
            Hamiltonian => {
                let m = exp("m")?;
                let odd_part = if m == 0 {
                    Vec::new()
                } else {
                    vec![FamilySpec::ElementaryAbelian { p: get("p")?, k: m }]
                };
                FamilySpec::Hamiltonian {
                    n: exp("n")?,
                    odd_part,
                }
            }
            Modular => FamilySpec::Modular { p: get("p")? },
            SemidirectPQ => FamilySpec::SemidirectPQ {
                p: get("p")?,
                q: get("q")?,
                n: exp("n")?,
                s: exp("s")?,
            },
            DicyclicCpC4 => FamilySpec::DicyclicCpC4 {
                p: get("p")?,
                n: exp("n")?,
            },
            DicyclicCpQ => FamilySpec::DicyclicCpQ {
                p: get("p")?,
                n: exp("n")?,
                m: exp("m")?,
            },
            DicyclicCqCpC4 => FamilySpec::DicyclicCqCpC4 {
                p: get("p")?,
                n: exp("n")?,
                q: get("q")?,
                m: exp("m")?,
            },
            DicyclicCqCpQ => FamilySpec::DicyclicCqCpQ {
                p: get("p")?,
                n: exp("n")?,
                q: get("q")?,
                m: exp("m")?,
                r: exp("r")?,
            },
            DirectProduct => {
                return Err(Error::domain("direct products are built from spec strings"))
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for FamilyKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<&str> = FamilyKind::ALL.iter().map(|k| k.name()).collect();
                Error::parse(
                    format!("`{s}`"),
                    format!("unknown family; expected one of {}", names.join(", ")),
                )
            })
    }
}

/// Builds the concrete group a spec describes.
pub fn construct(spec: &FamilySpec) -> Result<FiniteGroup> {
    spec.validate()?;
    let order = spec.declared_order();
    let order = order
        .to_usize()
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or_else(|| Error::OrderLimit {
            order: order.to_string(),
            limit: MAX_GROUP_ORDER,
        })?;

    use FamilySpec::*;
    let group = match spec {
        Cyclic { n } => metacyclic(*n as usize, 1, 1, 0, ("x", "y"))?,
        ElementaryAbelian { p, k } => elementary_abelian(*p as usize, *k)?,
        Dihedral { n } => metacyclic(*n as usize, 2, *n as usize - 1, 0, ("x", "y"))?,
        Dihedral2Power { n } => {
            let half = 1usize << (n - 1);
            metacyclic(half, 2, half - 1, 0, ("x", "y"))?
        }
        Quaternion { n } => {
            // y x y⁻¹ = x^{2^{n-1}-1} = x⁻¹ and y² = x^{2^{n-2}}.
            let half = 1usize << (n - 1);
            metacyclic(half, 2, half - 1, half / 2, ("x", "y"))?
        }
        Semidihedral { n } => {
            let half = 1usize << (n - 1);
            metacyclic(half, 2, half / 2 - 1, 0, ("x", "y"))?
        }
        Dicyclic { k } => dicyclic(*k as usize)?,
        Cyclic2PowerTimesC2 { n } => {
            let left = construct(&Cyclic { n: 1 << (n + 1) })?;
            direct_product(&left, &construct(&Cyclic { n: 2 })?)?
        }
        Cyclic2PowerPTimesC2 { n, p } => {
            let left = construct(&Cyclic { n: (1 << n) * p })?;
            direct_product(&left, &construct(&Cyclic { n: 2 })?)?
        }
        Hamiltonian { n, odd_part } => {
            let mut g = construct(&Quaternion { n: 3 })?;
            if *n > 0 {
                g = direct_product(&g, &construct(&ElementaryAbelian { p: 2, k: *n })?)?;
            }
            for part in odd_part {
                g = direct_product(&g, &construct(part)?)?;
            }
            g
        }
        Modular { p } => {
            let p = *p as usize;
            metacyclic(p * p, p, 1 + p, 0, ("a", "b"))?
        }
        SemidirectPQ { p, q, n, s } => {
            let action = primitive_root_of_order(*p, q.pow(*s));
            metacyclic(
                *p as usize,
                q.pow(*n) as usize,
                action as usize,
                0,
                ("a", "b"),
            )?
        }
        DicyclicCpC4 { .. } | DicyclicCpQ { .. } | DicyclicCqCpC4 { .. } | DicyclicCqCpQ { .. } => {
            let k = spec
                .dicyclic_parameter()
                .and_then(|k| k.to_usize())
                .expect("order already bounded");
            dicyclic(k)?
        }
        DirectProduct(a, b) => direct_product(&construct(a)?, &construct(b)?)?,
    };
    debug_assert_eq!(group.order(), order);
    Ok(group.with_meta(spec.clone()))
}

/// Smallest `r` in `2..p` with multiplicative order exactly `order` mod `p`.
fn primitive_root_of_order(p: u64, order: u64) -> u64 {
    let mult_order = |r: u64| {
        let mut k = 1;
        let mut x = r % p;
        while x != 1 {
            x = x * r % p;
            k += 1;
        }
        k
    };
    (2..p)
        .find(|&r| mult_order(r) == order)
        .expect("an element of every order dividing p - 1 exists")
}

fn dicyclic(k: usize) -> Result<FiniteGroup> {
    // ⟨a, b | a^{2k} = 1, b² = a^k, b a b⁻¹ = a⁻¹⟩
    metacyclic(2 * k, 2, 2 * k - 1, k, ("a", "b"))
}

/// The group `⟨x, y | x^n = 1, y^m = x^c, y x y⁻¹ = x^r⟩` in normal form
/// `x^a y^b` (`0 ≤ a < n`, `0 ≤ b < m`), element index `b·n + a`.
///
/// Requires `r^m ≡ 1` and `r·c ≡ c (mod n)`; the table is validated anyway.
fn metacyclic(n: usize, m: usize, r: usize, c: usize, names: (&str, &str)) -> Result<FiniteGroup> {
    let r = r % n.max(1);
    let mut r_pow = vec![1 % n.max(1); m];
    for b in 1..m {
        r_pow[b] = r_pow[b - 1] * r % n;
    }
    let group = FiniteGroup::from_fn(n * m, |i, j| {
        let (a1, b1) = (i % n, i / n);
        let (a2, b2) = (j % n, j / n);
        // x^{a1} y^{b1} x^{a2} y^{b2} = x^{a1 + a2 r^{b1}} y^{b1 + b2}
        let mut a = a1 + a2 * r_pow[b1];
        let mut b = b1 + b2;
        if b >= m {
            b -= m;
            a += c;
        }
        b * n + a % n
    })?;
    let labels = (0..n * m)
        .map(|i| power_label(names, i % n, i / n))
        .collect();
    group.with_labels(labels)
}

fn power_label((x, y): (&str, &str), a: usize, b: usize) -> String {
    let part = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        e => format!("{name}^{e}"),
    };
    let s = format!("{}{}", part(x, a), part(y, b));
    if s.is_empty() {
        "e".into()
    } else {
        s
    }
}

fn elementary_abelian(p: usize, k: u32) -> Result<FiniteGroup> {
    let order = p.pow(k);
    let digits = |mut i: usize| {
        (0..k)
            .map(|_| {
                let d = i % p;
                i /= p;
                d
            })
            .collect::<Vec<_>>()
    };
    let group = FiniteGroup::from_fn(order, |i, j| {
        let (mut i, mut j) = (i, j);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..k {
            out += (i % p + j % p) % p * place;
            i /= p;
            j /= p;
            place *= p;
        }
        out
    })?;
    let labels = (0..order)
        .map(|i| {
            let d: Vec<String> = digits(i).iter().map(usize::to_string).collect();
            format!("({})", d.join(","))
        })
        .collect();
    group.with_labels(labels)
}
