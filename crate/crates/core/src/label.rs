use std::fmt;
use std::sync::Arc;

/// Name of a free generator `x_s`.
///
/// Cloning is a reference-count bump; ordering and hashing go through the
/// string contents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Self {
        Label(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

/// Builds a label list from names, e.g. `labels(&["x", "y"])`.
pub fn labels(names: &[&str]) -> Vec<Label> {
    names.iter().map(|s| Label::new(s)).collect()
}
