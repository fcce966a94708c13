//! Parameter ranges and sweeps.

use std::collections::BTreeMap;

/// Parses `7`, `3..6` (inclusive) or a comma list of either.
pub fn parse_values(text: &str) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let num = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("`{s}` is not a non-negative integer (in `{text}`)"))
        };
        match part.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?);
                if a > b {
                    return Err(format!("empty range `{part}`"));
                }
                if b - a >= 1_000_000 {
                    return Err(format!("range `{part}` is too long"));
                }
                out.extend(a..=b);
            }
            None => out.push(num(part)?),
        }
    }
    Ok(out)
}

/// Every combination of the given values, in lexicographic order of
/// `order` (earlier names vary slowest). Repeated values collapse.
pub fn sweep(values: &BTreeMap<String, Vec<u64>>, order: &[&str]) -> Vec<BTreeMap<String, u64>> {
    let mut names: Vec<&String> = values.keys().collect();
    names.sort_by_key(|n| order.iter().position(|o| o == n).unwrap_or(usize::MAX));
    let mut combos = vec![BTreeMap::new()];
    for name in names {
        let mut vs = values[name].clone();
        vs.sort_unstable();
        vs.dedup();
        combos = combos
            .into_iter()
            .flat_map(|c| {
                vs.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.insert(name.clone(), v);
                    c
                })
            })
            .collect();
    }
    combos
}

/// `n=3, p=5` style rendering.
pub fn describe(params: &BTreeMap<String, u64>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_are_inclusive() {
        assert_eq!(parse_values("3..6").unwrap(), vec![3, 4, 5, 6]);
        assert_eq!(parse_values("3..=4,9").unwrap(), vec![3, 4, 9]);
        assert_eq!(parse_values("5").unwrap(), vec![5]);
        assert!(parse_values("6..3").is_err());
        assert!(parse_values("x").is_err());
        assert!(parse_values("1..").is_err());
    }

    #[test]
    fn sweep_orders_by_family_parameters() {
        let values = BTreeMap::from([
            ("n".to_string(), vec![2, 1]),
            ("p".to_string(), vec![5, 3, 3]),
        ]);
        let got: Vec<String> = sweep(&values, &["p", "n"]).iter().map(describe).collect();
        assert_eq!(got, ["n=1, p=3", "n=2, p=3", "n=1, p=5", "n=2, p=5"]);
        assert_eq!(sweep(&BTreeMap::new(), &[]).len(), 1);
    }
}
