use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{evaluate, limit, DegreeFunction};
use crate::error::Result;
use crate::families::FamilySpec;
use crate::numtheory::ExactRational;

/// One row of the `C_{p^n} ⋊ C_4` / `C_{p^n} ⋊ Q_8` table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ex54Row {
    pub group: String,
    pub p: u64,
    pub n: u32,
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub cdeg: ExactRational,
    pub ndeg: ExactRational,
}

/// The two rows (`CpC4`, then `CpQ8`) at `(p, n)`.
pub fn ex54_rows(p: u64, n: u32) -> Result<Vec<Ex54Row>> {
    let specs = [
        ("CpC4", FamilySpec::DicyclicCpC4 { p, n }),
        ("CpQ8", FamilySpec::DicyclicCpQ { p, n, m: 3 }),
    ];
    specs
        .into_iter()
        .map(|(group, spec)| {
            let f = evaluate(&spec)?;
            let take = |v: Option<ExactRational>| v.expect("both rows have all four closed forms");
            Ok(Ex54Row {
                group: group.to_string(),
                p,
                n,
                alpha: take(f.alpha),
                beta: take(f.beta),
                cdeg: take(f.cdeg),
                ndeg: take(f.ndeg),
            })
        })
        .collect()
}

/// One cell of the family summary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixCell {
    pub property: String,
    pub family: String,
    pub value: String,
}

/// Properties in row order.
pub const APPENDIX_PROPERTIES: [&str; 8] = [
    "spec",
    "order",
    "subgroups",
    "cyclic_subgroups",
    "alpha",
    "beta",
    "cdeg",
    "limit",
];

struct Column {
    name: &'static str,
    spec: FamilySpec,
    varying: &'static str,
    fixed: Vec<(&'static str, u64)>,
}

/// The family summary table at parameters `n` and `p`: one cell per
/// (property, family), with `-` where the family is undefined at these
/// parameters or has no closed form. The Hamiltonian column uses `A = C_p`
/// and the dicyclic column uses `Dic_n`.
pub fn appendix_table(n: u32, p: u64) -> Vec<AppendixCell> {
    let columns = vec![
        Column {
            name: "D_2^n",
            spec: FamilySpec::Dihedral2Power { n },
            varying: "n",
            fixed: vec![],
        },
        Column {
            name: "Q_2^n",
            spec: FamilySpec::Quaternion { n },
            varying: "n",
            fixed: vec![],
        },
        Column {
            name: "SD_2^n",
            spec: FamilySpec::Semidihedral { n },
            varying: "n",
            fixed: vec![],
        },
        Column {
            name: "C_2^(n+1) x C_2",
            spec: FamilySpec::Cyclic2PowerTimesC2 { n },
            varying: "n",
            fixed: vec![],
        },
        Column {
            name: "C_(2^n p) x C_2",
            spec: FamilySpec::Cyclic2PowerPTimesC2 { n, p },
            varying: "n",
            fixed: vec![("p", p)],
        },
        Column {
            name: "Q_8 x C_2^n x A",
            spec: FamilySpec::Hamiltonian {
                n,
                odd_part: vec![FamilySpec::Cyclic { n: p }],
            },
            varying: "m",
            fixed: vec![("n", u64::from(n)), ("p", p)],
        },
        Column {
            name: "Dic_n",
            spec: FamilySpec::Dicyclic { k: u64::from(n) },
            varying: "k",
            fixed: vec![],
        },
        Column {
            name: "C_p^n : C_4",
            spec: FamilySpec::DicyclicCpC4 { p, n },
            varying: "n",
            fixed: vec![("p", p)],
        },
        Column {
            name: "C_p^n : Q_8",
            spec: FamilySpec::DicyclicCpQ { p, n, m: 3 },
            varying: "n",
            fixed: vec![("p", p), ("m", 3)],
        },
        Column {
            name: "C_p^2 : C_p",
            spec: FamilySpec::Modular { p },
            varying: "p",
            fixed: vec![],
        },
    ];

    let dash = || "-".to_string();
    let mut cells = Vec::new();
    for property in APPENDIX_PROPERTIES {
        for col in &columns {
            let formulas = evaluate(&col.spec).ok();
            let order = col.spec.declared_order();
            let count = |v: Option<&ExactRational>| {
                v.map(|x| {
                    (x * &ExactRational::from_integer(BigInt::from(order.clone()))).to_string()
                })
                .unwrap_or_else(dash)
            };
            let value = match (property, &formulas) {
                (_, None) => dash(),
                ("spec", _) => col.spec.to_string(),
                ("order", _) => order.to_string(),
                ("subgroups", Some(f)) => count(f.beta.as_ref()),
                ("cyclic_subgroups", Some(f)) => count(f.alpha.as_ref()),
                ("alpha", Some(f)) => f.alpha.as_ref().map_or_else(dash, ToString::to_string),
                ("beta", Some(f)) => f.beta.as_ref().map_or_else(dash, ToString::to_string),
                ("cdeg", Some(f)) => f.cdeg.as_ref().map_or_else(dash, ToString::to_string),
                ("limit", Some(_)) => limits_cell(col),
                _ => unreachable!("property list is fixed"),
            };
            cells.push(AppendixCell {
                property: property.to_string(),
                family: col.name.to_string(),
                value,
            });
        }
    }
    cells
}

fn limits_cell(col: &Column) -> String {
    let fixed: BTreeMap<String, u64> = col.fixed.iter().map(|&(k, v)| (k.to_string(), v)).collect();
    let parts: Vec<String> = DegreeFunction::ALL
        .into_iter()
        .filter_map(|f| {
            limit(col.spec.kind(), f, col.varying, &fixed)
                .ok()
                .flatten()
        })
        .map(|e| format!("{}->{} ({}->inf)", e.function, e.value, e.varying))
        .collect();
    if parts.is_empty() {
        "-".to_string()
    } else {
        parts.join("; ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell<'a>(cells: &'a [AppendixCell], property: &str, family: &str) -> &'a str {
        &cells
            .iter()
            .find(|c| c.property == property && c.family == family)
            .unwrap()
            .value
    }

    #[test]
    fn ex54_spot_values() {
        let rows = ex54_rows(3, 1).unwrap();
        let r = &rows[0];
        assert_eq!(
            [&r.alpha, &r.beta, &r.cdeg, &r.ndeg].map(ToString::to_string),
            ["7/12", "2/3", "7/8", "5/8"]
        );
        assert_eq!(rows[1].group, "CpQ8");
        assert!(ex54_rows(4, 1).is_err());
    }

    #[test]
    fn appendix_cells() {
        let cells = appendix_table(4, 3);
        assert_eq!(cells.len(), APPENDIX_PROPERTIES.len() * 10);
        assert_eq!(cell(&cells, "subgroups", "SD_2^n"), "15");
        assert_eq!(cell(&cells, "subgroups", "C_p^2 : C_p"), "10");
        assert_eq!(cell(&cells, "cyclic_subgroups", "C_p^n : C_4"), "91");
        assert_eq!(cell(&cells, "subgroups", "Dic_n"), "11");
        assert_eq!(cell(&cells, "alpha", "Dic_n"), "-");
        assert_eq!(cell(&cells, "limit", "Dic_n"), "-");
        assert!(cell(&cells, "limit", "Q_2^n").contains("beta->1/2"));
        // SD needs n >= 4.
        assert_eq!(cell(&appendix_table(3, 3), "order", "SD_2^n"), "-");
    }
}
