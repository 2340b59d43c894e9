use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role a variable plays in the analysis rings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarRole {
    /// The extra variable `t` used to saturate by a denominator product.
    Saturation,
    /// A free transfer entry (an unknown of the network).
    Unknown,
    /// An entry of the closed-loop map introduced as a fresh variable.
    ClosedLoop,
    /// Helper variables, e.g. from clearing rational constraints.
    Auxiliary,
}

/// An ordered list of named indeterminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableRing {
    names: Vec<String>,
    roles: Vec<VarRole>,
    index: HashMap<String, usize>,
}

impl VariableRing {
    pub fn new<I, S>(vars: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, VarRole)>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut roles = Vec::new();
        let mut index = HashMap::new();
        for (name, role) in vars {
            let name = name.into();
            if name.is_empty() {
                return Err(Error::MalformedInput("empty variable name".into()));
            }
            if index.insert(name.clone(), names.len()).is_some() {
                return Err(Error::MalformedInput(format!(
                    "duplicate variable name `{name}`"
                )));
            }
            names.push(name);
            roles.push(role);
        }
        if roles.iter().filter(|r| **r == VarRole::Saturation).count() > 1 {
            return Err(Error::MalformedInput(
                "at most one saturation variable is allowed".into(),
            ));
        }
        Ok(Arc::new(Self {
            names,
            roles,
            index,
        }))
    }

    /// Ring whose variables are all [`VarRole::Unknown`].
    pub fn unknowns<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        Self::new(names.iter().map(|n| (n.as_ref().to_string(), VarRole::Unknown)))
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn role(&self, i: usize) -> VarRole {
        self.roles[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vars_with_role(&self, role: VarRole) -> Vec<usize> {
        (0..self.arity()).filter(|&i| self.roles[i] == role).collect()
    }

    pub fn saturation_var(&self) -> Option<usize> {
        self.roles.iter().position(|r| *r == VarRole::Saturation)
    }

    /// Sub-ring made of the listed variables, in the listed order.
    pub fn subring(&self, vars: &[usize]) -> Result<Arc<Self>> {
        Self::new(vars.iter().map(|&i| (self.names[i].clone(), self.roles[i])))
    }
}

impl fmt::Display for VariableRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(", "))
    }
}

pub(crate) fn same_ring(a: &Arc<VariableRing>, b: &Arc<VariableRing>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_two_saturation_vars() {
        assert!(VariableRing::unknowns(&["x", "x"]).is_err());
        let r = VariableRing::new([("t", VarRole::Saturation), ("s", VarRole::Saturation)]);
        assert!(r.is_err());
    }

    #[test]
    fn lookup_and_roles() {
        let r = VariableRing::new([
            ("t", VarRole::Saturation),
            ("G1", VarRole::Unknown),
            ("g1", VarRole::ClosedLoop),
        ])
        .unwrap();
        assert_eq!(r.arity(), 3);
        assert_eq!(r.index_of("G1"), Some(1));
        assert_eq!(r.saturation_var(), Some(0));
        assert_eq!(r.vars_with_role(VarRole::ClosedLoop), vec![2]);
        let sub = r.subring(&[2, 1]).unwrap();
        assert_eq!(sub.names(), &["g1".to_string(), "G1".to_string()]);
    }
}
