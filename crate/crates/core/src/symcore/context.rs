use std::fmt;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};

/// An ordered, immutable list of variable names. Polynomials carry a shared
/// reference to the context they live in; the order fixes exponent layout
/// and the evaluation order of matrix substitutions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableContext {
    names: Vec<String>,
}

pub type Ctx = Arc<VariableContext>;

impl VariableContext {
    pub fn new<I, S>(names: I) -> Result<Ctx>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VariableContext { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// A name derived from `base` that does not occur in this context.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        let mut k = 0;
        while self.index_of(&candidate).is_some() {
            k += 1;
            candidate = format!("{base}_{k}");
        }
        candidate
    }

    /// `extra` variables placed in front of the existing ones.
    pub fn prepended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx> {
        VariableContext::new(
            extra
                .iter()
                .map(|s| s.as_ref().to_string())
                .chain(self.names.iter().cloned()),
        )
    }

    /// `extra` variables placed after the existing ones.
    pub fn appended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ctx> {
        VariableContext::new(
            self.names
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

impl fmt::Display for VariableContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(", "))
    }
}

pub(crate) fn same_context(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

pub(crate) fn check_same(a: &Ctx, b: &Ctx) -> Result<()> {
    if same_context(a, b) {
        Ok(())
    } else {
        Err(AlgebraError::ContextMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates() {
        assert!(VariableContext::new(["x", "y", "x"]).is_err());
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let c = VariableContext::new(["t", "t_1"]).unwrap();
        assert_eq!(c.fresh_name("t"), "t_2");
        assert_eq!(c.fresh_name("s"), "s");
    }
}
