//! The `.sgt` table format and subset specs.
//!
//! ```text
//! 2
//! 0 1
//! 0 1
//! labels: a b
//! ```
//!
//! Line 1 is the order `n`, then `n` rows of `n` indices (row `i`, entry `j`
//! is `i·j`), then an optional `labels:` line.

use crate::error::{Error, Result};
use crate::semigroup::{validate_table, FiniteSemigroup};
use crate::subset::SubsetMask;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

pub fn parse_sgt(text: &str) -> Result<FiniteSemigroup> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(first, format!("expected the order, found `{header}`")))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (lineno, line) = lines
            .next()
            .ok_or_else(|| parse_err(first + rows.len() + 1, "missing table row"))?;
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad entry `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let s = validate_table(n, &rows)?;
    match lines.next() {
        None => Ok(s),
        Some((lineno, line)) => {
            let rest = line
                .strip_prefix("labels:")
                .ok_or_else(|| parse_err(lineno, "expected `labels:` or end of file"))?;
            let labels: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if labels.len() != n {
                return Err(parse_err(lineno, format!("expected {n} labels, found {}", labels.len())));
            }
            if let Some((extra, _)) = lines.next() {
                return Err(parse_err(extra, "trailing content"));
            }
            s.with_labels(labels)
        }
    }
}

pub fn write_sgt(s: &FiniteSemigroup) -> String {
    let mut out = format!("{}\n", s.order());
    for row in s.rows() {
        let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if let Some(labels) = s.labels() {
        out.push_str("labels: ");
        out.push_str(&labels.join(" "));
        out.push('\n');
    }
    out
}

/// `"0,2,5"`, `"@25"` (hex bit-mask) or `""` for the empty set.
pub fn parse_subset(order: usize, spec: &str) -> Result<SubsetMask> {
    let spec = spec.trim();
    if let Some(hex) = spec.strip_prefix('@') {
        let bits = u32::from_str_radix(hex, 16).map_err(|_| parse_err(0, format!("bad mask `{spec}`")))?;
        return SubsetMask::from_bits(order, bits);
    }
    let items = spec
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| parse_err(0, format!("bad index `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    SubsetMask::from_indices(order, items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::*;

    #[test]
    fn roundtrip_with_and_without_labels() {
        let rz = right_zero(2);
        let text = write_sgt(&rz);
        assert_eq!(text, "2\n0 1\n0 1\n");
        assert_eq!(parse_sgt(&text).unwrap(), rz);
        let labelled = rz.with_labels(vec!["a".into(), "b".into()]).unwrap();
        let back = parse_sgt(&write_sgt(&labelled)).unwrap();
        assert_eq!(back.labels().unwrap(), ["a", "b"]);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert!(matches!(parse_sgt(""), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_sgt("2\n0 1\n0 x\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_sgt("2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sgt("2\n1 0\n0 0\n"), Err(Error::NotAssociative { .. })));
        assert!(matches!(parse_sgt("2\n0 1\n0 1\nlabels: a\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_sgt("2\n0 1\n0 2\n"), Err(Error::EntryOutOfRange { .. })));
    }

    #[test]
    fn subset_specs() {
        assert_eq!(parse_subset(6, "0,2,5").unwrap(), SubsetMask::from_indices(6, [0, 2, 5]).unwrap());
        assert_eq!(parse_subset(6, "@25").unwrap(), SubsetMask::from_indices(6, [0, 2, 5]).unwrap());
        assert!(parse_subset(6, "").unwrap().is_empty());
        assert!(parse_subset(2, "3").is_err());
        assert!(parse_subset(2, "@4").is_err());
    }
}
