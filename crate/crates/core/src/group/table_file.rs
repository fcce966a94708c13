//! JSON Cayley-table documents:
//!
//! ```json
//! { "order": 2, "table": [[0, 1], [1, 0]], "labels": ["e", "a"] }
//! ```
//!
//! Entries are 0-based element indices; `labels` is optional.

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDocument {
    order: usize,
    table: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

/// Parses and validates a table document.
pub fn parse_table_document(text: &str) -> Result<FiniteGroup> {
    let doc: TableDocument = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let field_err = |field: String, msg: String| Error::parse(format!("field `{field}`"), msg);

    if doc.table.len() != doc.order {
        return Err(field_err(
            "table".into(),
            format!("has {} rows but order is {}", doc.table.len(), doc.order),
        ));
    }
    if let Some(labels) = &doc.labels {
        if labels.len() != doc.order {
            return Err(field_err(
                "labels".into(),
                format!("has {} entries but order is {}", labels.len(), doc.order),
            ));
        }
    }
    let mut rows = Vec::with_capacity(doc.order);
    for (i, row) in doc.table.iter().enumerate() {
        if row.len() != doc.order {
            return Err(field_err(
                format!("table[{i}]"),
                format!("has {} entries but order is {}", row.len(), doc.order),
            ));
        }
        let mut parsed = Vec::with_capacity(row.len());
        for (j, &v) in row.iter().enumerate() {
            if v < 0 || v as usize >= doc.order {
                return Err(field_err(
                    format!("table[{i}][{j}]"),
                    format!("{v} is not an element index in 0..{}", doc.order),
                ));
            }
            parsed.push(v as usize);
        }
        rows.push(parsed);
    }
    FiniteGroup::from_rows(&rows, doc.labels).map_err(|e| match e {
        Error::Domain(msg) => field_err("table".into(), msg),
        other => other,
    })
}

/// Serializes a group as a table document.
pub fn to_table_document(group: &FiniteGroup) -> String {
    let doc = TableDocument {
        order: group.order(),
        table: group
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(|v| v as i64).collect())
            .collect(),
        labels: group.labels().map(<[String]>::to_vec),
    };
    serde_json::to_string(&doc).expect("table documents always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_klein_four() {
        let text = r#"{"order": 4, "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]],
                       "labels": ["e","a","b","ab"]}"#;
        let g = parse_table_document(text).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.label(3), "ab");
        let again = parse_table_document(&to_table_document(&g)).unwrap();
        assert_eq!(again.rows(), g.rows());
    }

    #[test]
    fn errors_name_the_location() {
        let syntax = parse_table_document("{\"order\": 2,\n \"table\": [[0,1],[1,0]").unwrap_err();
        assert!(syntax.to_string().contains("line 2"), "{syntax}");

        let range = parse_table_document(r#"{"order":2,"table":[[0,1],[1,5]]}"#).unwrap_err();
        assert!(range.to_string().contains("table[1][1]"), "{range}");

        let short = parse_table_document(r#"{"order":2,"table":[[0,1],[1]]}"#).unwrap_err();
        assert!(short.to_string().contains("table[1]"), "{short}");

        let latin = parse_table_document(r#"{"order":2,"table":[[0,1],[0,1]]}"#).unwrap_err();
        assert!(latin.to_string().contains("field `table`"), "{latin}");

        let labels =
            parse_table_document(r#"{"order":1,"table":[[0]],"labels":["e","x"]}"#).unwrap_err();
        assert!(labels.to_string().contains("labels"), "{labels}");

        let unknown = parse_table_document(r#"{"order":1,"table":[[0]],"extra":1}"#).unwrap_err();
        assert!(unknown.to_string().contains("extra"), "{unknown}");
    }
}
