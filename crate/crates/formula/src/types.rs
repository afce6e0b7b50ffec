//! Formula domain types: atoms, conjuncts, DNF formulas, variable partition.

use nlitp_poly::ratio::Rat;
use nlitp_poly::{Polynomial, VarId, VarSpace};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Which side of the interpolation problem a formula belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::A => "phi",
            Side::B => "psi",
        }
    }
}

/// The declared split of variables: common (shared, the interpolant's
/// alphabet), local to side A, local to side B. Pairwise disjoint.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VarPartition {
    pub common: Vec<VarId>,
    pub local_a: Vec<VarId>,
    pub local_b: Vec<VarId>,
}

impl VarPartition {
    pub fn permitted(&self, side: Side) -> BTreeSet<VarId> {
        let mut s: BTreeSet<VarId> = self.common.iter().copied().collect();
        match side {
            Side::A => s.extend(self.local_a.iter().copied()),
            Side::B => s.extend(self.local_b.iter().copied()),
        }
        s
    }
}

/// Non-strict polynomial constraint. Equalities are expanded to inequality
/// pairs before compilation; strict relations never reach this type.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rel {
    Ge0,
    Eq0,
}

#[derive(Clone, PartialEq, Debug)]
pub struct Atom {
    pub poly: Polynomial,
    pub rel: Rel,
}

impl Atom {
    pub fn ge0(poly: Polynomial) -> Self {
        Atom { poly, rel: Rel::Ge0 }
    }

    pub fn eq0(poly: Polynomial) -> Self {
        Atom { poly, rel: Rel::Eq0 }
    }

    pub fn holds_exact(&self, point: &BTreeMap<VarId, Rat>) -> bool {
        match self.poly.eval(point) {
            Ok(v) => match self.rel {
                Rel::Ge0 => !v.is_negative(),
                Rel::Eq0 => v.is_zero(),
            },
            Err(_) => false,
        }
    }

    pub fn holds_f64(&self, point: &[f64], tol: f64) -> bool {
        let v = self.poly.eval_f64(point);
        match self.rel {
            Rel::Ge0 => v >= -tol,
            Rel::Eq0 => v.abs() <= tol,
        }
    }
}

use num_traits::Signed;

/// A conjunction of atoms (nonempty).
#[derive(Clone, PartialEq, Debug)]
pub struct Conjunct {
    pub atoms: Vec<Atom>,
}

impl Conjunct {
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "conjunct needs at least one atom");
        Conjunct { atoms }
    }

    /// Expands `p = 0` into `p >= 0 and -p >= 0` and removes duplicate atoms.
    pub fn expand_equalities(&self) -> Conjunct {
        let mut atoms: Vec<Atom> = Vec::new();
        for a in &self.atoms {
            match a.rel {
                Rel::Ge0 => atoms.push(a.clone()),
                Rel::Eq0 => {
                    atoms.push(Atom::ge0(a.poly.clone()));
                    atoms.push(Atom::ge0(a.poly.neg()));
                }
            }
        }
        let mut dedup: Vec<Atom> = Vec::new();
        for a in atoms {
            if !dedup.iter().any(|b| b.rel == a.rel && b.poly == a.poly) {
                dedup.push(a);
            }
        }
        Conjunct { atoms: dedup }
    }

    pub fn vars_used(&self) -> BTreeSet<VarId> {
        self.atoms
            .iter()
            .flat_map(|a| a.poly.vars_used())
            .collect()
    }

    pub fn holds_exact(&self, point: &BTreeMap<VarId, Rat>) -> bool {
        self.atoms.iter().all(|a| a.holds_exact(point))
    }

    pub fn holds_f64(&self, point: &[f64], tol: f64) -> bool {
        self.atoms.iter().all(|a| a.holds_f64(point, tol))
    }
}

/// A formula in disjunctive normal form over one side's permitted variables.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyFormula {
    pub disjuncts: Vec<Conjunct>,
    pub side: Side,
    pub partition: VarPartition,
    space: Arc<VarSpace>,
}

impl PolyFormula {
    pub fn new(
        space: Arc<VarSpace>,
        partition: VarPartition,
        side: Side,
        disjuncts: Vec<Conjunct>,
    ) -> Result<Self, String> {
        assert!(!disjuncts.is_empty(), "formula needs at least one disjunct");
        let formula = PolyFormula {
            disjuncts,
            side,
            partition,
            space,
        };
        formula.check_side_discipline()?;
        Ok(formula)
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    /// Side-A formulas mention only common and local-A variables; side-B
    /// likewise. Violations are structural errors, not recoverable input.
    pub fn check_side_discipline(&self) -> Result<(), String> {
        let permitted = self.partition.permitted(self.side);
        for c in &self.disjuncts {
            for v in c.vars_used() {
                if !permitted.contains(&v) {
                    return Err(format!(
                        "variable `{}` is not permitted on side {}",
                        self.space.name(v),
                        self.side.label()
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn expand_equalities(&self) -> PolyFormula {
        PolyFormula {
            disjuncts: self.disjuncts.iter().map(|c| c.expand_equalities()).collect(),
            ..self.clone()
        }
    }

    pub fn holds_exact(&self, point: &BTreeMap<VarId, Rat>) -> bool {
        self.disjuncts.iter().any(|c| c.holds_exact(point))
    }

    pub fn holds_f64(&self, point: &[f64], tol: f64) -> bool {
        self.disjuncts.iter().any(|c| c.holds_f64(point, tol))
    }
}

/// An arbitrary and/or tree of atoms, the pre-DNF input shape.
#[derive(Clone, Debug)]
pub enum FormulaTree {
    Leaf(Atom),
    And(Vec<FormulaTree>),
    Or(Vec<FormulaTree>),
}

impl FormulaTree {
    pub fn holds_exact(&self, point: &BTreeMap<VarId, Rat>) -> bool {
        match self {
            FormulaTree::Leaf(a) => a.holds_exact(point),
            FormulaTree::And(ts) => ts.iter().all(|t| t.holds_exact(point)),
            FormulaTree::Or(ts) => ts.iter().any(|t| t.holds_exact(point)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nlitp_poly::parse_polynomial;

    #[test]
    fn equality_expansion() {
        let s = VarSpace::new(&["x"]).unwrap();
        let c = Conjunct::new(vec![Atom::eq0(parse_polynomial("x - 1", &s).unwrap())]);
        let e = c.expand_equalities();
        assert_eq!(e.atoms.len(), 2);
        assert!(e.atoms.iter().all(|a| a.rel == Rel::Ge0));
        let p1: BTreeMap<VarId, Rat> = [(VarId(0), Rat::from_integer(1.into()))].into();
        assert!(e.holds_exact(&p1));
        let p2: BTreeMap<VarId, Rat> = [(VarId(0), Rat::from_integer(2.into()))].into();
        assert!(!e.holds_exact(&p2));
    }

    #[test]
    fn side_discipline_enforced() {
        let s = VarSpace::new(&["x", "y", "z"]).unwrap();
        let part = VarPartition {
            common: vec![VarId(0)],
            local_a: vec![VarId(1)],
            local_b: vec![VarId(2)],
        };
        let atom_with_z = Atom::ge0(parse_polynomial("z", &s).unwrap());
        let r = PolyFormula::new(s, part, Side::A, vec![Conjunct::new(vec![atom_with_z])]);
        assert!(r.is_err());
    }
}
