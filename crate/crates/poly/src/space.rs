//! Variable identifiers and the declaration-ordered variable space.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Index of a variable inside its [`VarSpace`]. Indices are dense from 0 in
/// declaration order; that order fixes the canonical monomial order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An immutable, append-only set of named variables.
///
/// Spaces are extended (never mutated) when fresh variables are introduced,
/// e.g. the primed copies created by the strongest-postcondition transformer.
/// Because extension only appends, a `VarId` minted by a space stays valid in
/// every extension of that space.
#[derive(Debug)]
pub struct VarSpace {
    names: Vec<String>,
    by_name: HashMap<String, VarId>,
}

impl VarSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, String> {
        let mut space = VarSpace {
            names: Vec::new(),
            by_name: HashMap::new(),
        };
        for n in names {
            space.push(n.as_ref())?;
        }
        Ok(Arc::new(space))
    }

    fn push(&mut self, name: &str) -> Result<VarId, String> {
        if self.by_name.contains_key(name) {
            return Err(format!("duplicate variable `{name}`"));
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        Ok(id)
    }

    /// A new space with `extra` appended. Existing ids keep their meaning.
    pub fn extended<S: AsRef<str>>(self: &Arc<Self>, extra: &[S]) -> Result<Arc<Self>, String> {
        let mut space = VarSpace {
            names: self.names.clone(),
            by_name: self.by_name.clone(),
        };
        for n in extra {
            space.push(n.as_ref())?;
        }
        Ok(Arc::new(space))
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len() as u32).map(VarId)
    }

    /// True when `other` agrees with `self` on every variable of `self`.
    pub fn is_prefix_of(&self, other: &VarSpace) -> bool {
        self.names.len() <= other.names.len()
            && self.names.iter().zip(&other.names).all(|(a, b)| a == b)
    }
}

impl PartialEq for VarSpace {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}
impl Eq for VarSpace {}

impl fmt::Display for VarSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

/// Two polynomials may be combined when their spaces are literally the same
/// allocation or one space is a prefix extension of the other.
pub fn join_spaces(a: &Arc<VarSpace>, b: &Arc<VarSpace>) -> Arc<VarSpace> {
    if Arc::ptr_eq(a, b) || b.is_prefix_of(a) {
        a.clone()
    } else if a.is_prefix_of(b) {
        b.clone()
    } else {
        panic!("incompatible variable spaces: {a} vs {b}");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declaration_order_is_dense() {
        let s = VarSpace::new(&["x", "y", "z"]).unwrap();
        assert_eq!(s.lookup("x"), Some(VarId(0)));
        assert_eq!(s.lookup("z"), Some(VarId(2)));
        assert_eq!(s.name(VarId(1)), "y");
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(VarSpace::new(&["x", "x"]).is_err());
    }

    #[test]
    fn extension_preserves_ids() {
        let s = VarSpace::new(&["x", "y"]).unwrap();
        let t = s.extended(&["x'"]).unwrap();
        assert_eq!(t.lookup("x"), Some(VarId(0)));
        assert_eq!(t.lookup("x'"), Some(VarId(2)));
        assert!(s.is_prefix_of(&t));
        assert!(!t.is_prefix_of(&s));
    }
}
