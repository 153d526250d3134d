//! Text formats: JSON Lines for trees, CSV for histograms and plain text for
//! coefficient sequences.

use std::io::Write;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use distree_core::tree::{decode, encode, Aggregate};
use distree_core::{PlaneTree, PowerSeries};

use crate::error::{CliError, CliResult};

/// A tree as nested JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTree {
    pub children: Vec<JsonTree>,
    /// Index of the distinguished child, for families that have one.
    #[serde(default)]
    pub dist: Option<usize>,
    /// Whether the edge from the parent to this node is marked.
    #[serde(default)]
    pub mark: bool,
}

/// One line of tree output: the canonical encoding and the nested form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLine {
    #[serde(default)]
    pub encoding: Option<String>,
    #[serde(default)]
    pub tree: Option<JsonTree>,
}

pub fn to_json<T: PlaneTree>(t: &T) -> JsonTree {
    fn node<T: PlaneTree>(t: &T, mark: bool) -> JsonTree {
        let last = t.children().len().wrapping_sub(1);
        JsonTree {
            children: t
                .children()
                .iter()
                .enumerate()
                .map(|(i, c)| node(c, i == last && t.rightmost_marked()))
                .collect(),
            dist: t.distinguished(),
            mark,
        }
    }
    node(t, false)
}

pub fn from_json<T: PlaneTree>(j: &JsonTree) -> distree_core::Result<T> {
    let children = j
        .children
        .iter()
        .map(from_json)
        .collect::<distree_core::Result<Vec<T>>>()?;
    if let Some((_, init)) = j.children.split_last() {
        if init.iter().any(|c| c.mark) {
            return Err(distree_core::Error::InvalidTree(
                "only the rightmost edge of a node may be marked".into(),
            ));
        }
    }
    let marked = j.children.last().is_some_and(|c| c.mark);
    T::from_parts(children, j.dist, marked)
}

pub fn json_line<T: PlaneTree>(t: &T) -> String {
    let line = JsonLine {
        encoding: Some(encode(t)),
        tree: Some(to_json(t)),
    };
    serde_json::to_string(&line).expect("tree JSON always serializes")
}

/// Reads a tree from a line holding either a canonical encoding or a JSON
/// object with an `encoding` or a `tree` field.
pub fn parse_tree_line<T: PlaneTree>(text: &str, line: usize) -> CliResult<T> {
    let input_error = |message: String| CliError::Input { line, message };
    let text = text.trim();
    if !text.starts_with('{') {
        return decode(text).map_err(|e| input_error(e.to_string()));
    }
    let parsed: JsonLine = serde_json::from_str(text).map_err(|e| input_error(e.to_string()))?;
    match (parsed.encoding, parsed.tree) {
        (Some(enc), _) => decode(&enc).map_err(|e| input_error(e.to_string())),
        (None, Some(tree)) => from_json(&tree).map_err(|e| input_error(e.to_string())),
        (None, None) => Err(input_error(
            "object has neither `encoding` nor `tree`".into(),
        )),
    }
}

/// Histogram as CSV: a `value,count` header, one row per value, and a final
/// `total` row with the sum of the parameter.
pub fn write_histogram_csv(out: &mut dyn Write, agg: &Aggregate) -> CliResult<()> {
    writeln!(out, "value,count")?;
    for (value, count) in &agg.distribution {
        writeln!(out, "{value},{count}")?;
    }
    writeln!(out, "total,{}", agg.total)?;
    Ok(())
}

/// Histogram as plain text.
pub fn write_histogram_text(out: &mut dyn Write, agg: &Aggregate) -> CliResult<()> {
    writeln!(out, "family {}", agg.family)?;
    writeln!(out, "n {}", agg.n)?;
    writeln!(out, "parameter {}", agg.parameter)?;
    writeln!(out, "trees {}", agg.count)?;
    writeln!(out, "total {}", agg.total)?;
    let mean = BigRational::new((agg.total as i128).into(), (agg.count as i128).into());
    writeln!(out, "mean {}", rational(&mean))?;
    writeln!(out, "distribution")?;
    for (value, count) in &agg.distribution {
        writeln!(out, "{value}\t{count}")?;
    }
    Ok(())
}

/// `numerator/denominator`, always with both parts.
pub fn rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// One `n<TAB>numerator/denominator` line per coefficient.
pub fn write_series(out: &mut dyn Write, s: &PowerSeries) -> CliResult<()> {
    for (n, c) in s.coeffs().iter().enumerate() {
        writeln!(out, "{n}\t{}", rational(c))?;
    }
    Ok(())
}

/// Coefficients `1..=terms` separated by `", "`; every coefficient must be an
/// integer.
pub fn oeis_line(s: &PowerSeries, terms: usize) -> distree_core::Result<String> {
    let mut parts = Vec::with_capacity(terms);
    for n in 1..=terms {
        let c = s.coeff(n)?;
        if !c.is_integer() {
            return Err(distree_core::Error::Domain(format!(
                "coefficient {n} is not an integer: {}",
                rational(c)
            )));
        }
        parts.push(c.numer().to_string());
    }
    Ok(parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use distree_core::tree::{gen_marked_dist, generate};
    use distree_core::{MarkedDistTree, MarkedTree};

    #[test]
    fn json_round_trip() {
        for t in gen_marked_dist(5).unwrap() {
            let j = to_json(&t);
            assert_eq!(from_json::<MarkedDistTree>(&j).unwrap(), t);
            let line = json_line(&t);
            assert_eq!(parse_tree_line::<MarkedDistTree>(&line, 1).unwrap(), t);
        }
    }

    #[test]
    fn json_shape() {
        let t: MarkedTree = decode("(*(()))").unwrap();
        assert_eq!(
            json_line(&t),
            r#"{"encoding":"(*(()))","tree":{"children":[{"children":[{"children":[],"dist":null,"mark":false}],"dist":null,"mark":true}],"dist":null,"mark":false}}"#
        );
        let _ = generate::<MarkedTree>(3).unwrap();
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(
            parse_tree_line::<MarkedTree>("(()", 7),
            Err(CliError::Input { line: 7, .. })
        ));
        assert!(parse_tree_line::<MarkedTree>("{}", 1).is_err());
        assert!(parse_tree_line::<MarkedTree>("{\"tree\": 3}", 1).is_err());
    }
}
