use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Vertex label.
///
/// Labels are non-empty strings over `[A-Za-z0-9_^().'+-]` and are ordered
/// lexicographically by bytes. That order is used for every tie-break in the
/// crate, so searches replay identically. Decorated labels such as `v^(x)`
/// produced by the K3-expansion are valid labels.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(Arc<str>);

fn allowed(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '^' | '(' | ')' | '.' | '\'' | '+' | '-')
}

impl VertexId {
    pub fn new(label: &str) -> Result<Self> {
        if label.is_empty() {
            return Err(Error::InvalidLabel {
                label: label.to_string(),
                reason: "empty label",
            });
        }
        if !label.chars().all(allowed) {
            return Err(Error::InvalidLabel {
                label: label.to_string(),
                reason: "labels use only [A-Za-z0-9_^().'+-]",
            });
        }
        Ok(VertexId(Arc::from(label)))
    }

    /// `v^(x)`: the vertex of the triangle replacing `v` that faces `x`.
    pub fn decorated(v: &VertexId, x: &VertexId) -> Self {
        VertexId(Arc::from(format!("{}^({})", v.0, x.0)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for VertexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl TryFrom<&str> for VertexId {
    type Error = Error;

    fn try_from(s: &str) -> Result<Self> {
        VertexId::new(s)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Parses a list of labels, panicking on invalid input. Intended for
/// fixtures and tests where the labels are literals.
pub fn labels(items: &[&str]) -> Vec<VertexId> {
    items
        .iter()
        .map(|s| VertexId::new(s).expect("valid literal label"))
        .collect()
}

/// Single-label counterpart of [`labels`].
pub fn vid(label: &str) -> VertexId {
    VertexId::new(label).expect("valid literal label")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_labels() {
        assert!(VertexId::new("").is_err());
        assert!(VertexId::new("a b").is_err());
        assert!(VertexId::new("a=b").is_err());
        assert!(VertexId::new("@x").is_err());
        assert!(VertexId::new("v^(x)").is_ok());
    }

    #[test]
    fn decorated_round_trips_through_parse() {
        let d = VertexId::decorated(&vid("a"), &vid("b"));
        assert_eq!(d.as_str(), "a^(b)");
        assert_eq!(VertexId::new(d.as_str()).unwrap(), d);
    }

    #[test]
    fn order_is_lexicographic() {
        assert!(vid("a") < vid("b"));
        assert!(vid("a") < vid("a^(b)"));
        assert!(vid("10") < vid("9"));
    }
}
