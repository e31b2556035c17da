//! ASCII text formats for trees and codes.
//!
//! Trees are either a parent array on one line (`p_1 .. p_n`, root written
//! as 0) or an edge list: a `root r` header followed by `n - 1` lines
//! `u v`. Codes are one line of space-separated entries, preceded by an
//! `n=<int>` header when the code is empty.

use crate::error::{Error, Result};
use crate::tree::{Label, LabeledTree};

fn content_lines(text: &str) -> Vec<&str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
}

fn parse_ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

/// Reads either tree format; the `root` header selects the edge list.
pub fn parse_tree(text: &str) -> Result<LabeledTree> {
    let lines = content_lines(text);
    let Some(first) = lines.first() else {
        return Err(Error::Parse("empty tree input".into()));
    };
    if let Some(rest) = first.strip_prefix("root") {
        let root = match parse_ints(rest)?.as_slice() {
            [r] => *r,
            _ => {
                return Err(Error::Parse(format!(
                    "bad header {first:?}, expected \"root r\""
                )))
            }
        };
        let edges = lines[1..]
            .iter()
            .map(|l| match parse_ints(l)?.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::Parse(format!(
                    "bad edge line {l:?}, expected \"u v\""
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        return LabeledTree::from_edges(root, &edges);
    }
    if lines.len() != 1 {
        return Err(Error::Parse(
            "ambiguous tree input: several lines without a \"root\" header".into(),
        ));
    }
    LabeledTree::from_parent_array(&parse_ints(first)?)
}

pub fn write_parent_array(tree: &LabeledTree) -> String {
    join_line(tree.parent_array())
}

pub fn write_edge_list(tree: &LabeledTree) -> String {
    let mut out = format!("root {}\n", tree.root());
    for (p, v) in tree.edges() {
        out.push_str(&format!("{p} {v}\n"));
    }
    out
}

fn join_line(values: &[usize]) -> String {
    let mut out = values
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    out
}

/// A code as read from text: the optional `n=` header and the entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeText {
    pub n: Option<usize>,
    pub entries: Vec<Label>,
}

pub fn parse_code(text: &str) -> Result<CodeText> {
    let mut lines = content_lines(text);
    let mut n = None;
    if let Some(header) = lines.first().and_then(|l| l.strip_prefix("n=")) {
        n = Some(
            header
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad header value {header:?}")))?,
        );
        lines.remove(0);
    }
    let entries = match lines.as_slice() {
        [] => Vec::new(),
        [line] => parse_ints(line)?,
        _ => return Err(Error::Parse("a code is a single line".into())),
    };
    Ok(CodeText { n, entries })
}

/// Writes `entries`, with an `n=` header when they are empty.
pub fn write_code(n: usize, entries: &[Label]) -> String {
    if entries.is_empty() {
        format!("n={n}\n\n")
    } else {
        join_line(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_tree_formats() {
        let a = parse_tree("3 6 0 1 6 3\n").unwrap();
        let b = parse_tree("root 3\n3 1\n3 6\n6 2\n1 4\n6 5\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(write_parent_array(&a), "3 6 0 1 6 3\n");
        assert_eq!(write_edge_list(&a), "root 3\n3 1\n6 2\n1 4\n6 5\n3 6\n");
        assert_eq!(parse_tree(&write_edge_list(&a)).unwrap(), a);
        assert_eq!(parse_tree("root 1\n").unwrap(), LabeledTree::singleton());
    }

    #[test]
    fn tree_format_errors() {
        assert!(matches!(parse_tree(""), Err(Error::Parse(_))));
        assert!(matches!(parse_tree("0 1\n1 2\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_tree("0 x\n"), Err(Error::Parse(_))));
        assert!(matches!(parse_tree("root\n1 2\n"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_tree("root 1\n1 2 3\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_tree("0 3 2\n"),
            Err(Error::CycleDetected(_))
        ));
    }

    #[test]
    fn codes() {
        assert_eq!(
            parse_code("3 3 6 1 6\n").unwrap(),
            CodeText {
                n: None,
                entries: vec![3, 3, 6, 1, 6]
            }
        );
        assert_eq!(
            parse_code("n=2\n\n").unwrap(),
            CodeText {
                n: Some(2),
                entries: vec![]
            }
        );
        assert_eq!(write_code(1, &[]), "n=1\n\n");
        assert_eq!(write_code(3, &[1, 3]), "1 3\n");
        assert!(parse_code("1 2\n3\n").is_err());
        assert!(parse_code("n=x\n1\n").is_err());
    }
}
