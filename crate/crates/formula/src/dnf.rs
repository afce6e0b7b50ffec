//! DNF normalization of and/or trees by distribution.

use crate::types::{Atom, Conjunct, FormulaTree};

/// Flattens an and/or tree of atoms into a list of conjuncts (the DNF
/// disjuncts). No simplification is applied beyond removing duplicate atoms
/// inside a conjunct.
pub fn to_dnf(tree: &FormulaTree) -> Vec<Conjunct> {
    dnf_atoms(tree)
        .into_iter()
        .map(|atoms| {
            let mut dedup: Vec<Atom> = Vec::new();
            for a in atoms {
                if !dedup.iter().any(|b| b.rel == a.rel && b.poly == a.poly) {
                    dedup.push(a);
                }
            }
            Conjunct::new(dedup)
        })
        .collect()
}

fn dnf_atoms(tree: &FormulaTree) -> Vec<Vec<Atom>> {
    match tree {
        FormulaTree::Leaf(a) => vec![vec![a.clone()]],
        FormulaTree::Or(ts) => ts.iter().flat_map(dnf_atoms).collect(),
        FormulaTree::And(ts) => {
            let mut acc: Vec<Vec<Atom>> = vec![Vec::new()];
            for t in ts {
                let branches = dnf_atoms(t);
                let mut next = Vec::with_capacity(acc.len() * branches.len());
                for prefix in &acc {
                    for branch in &branches {
                        let mut row = prefix.clone();
                        row.extend(branch.iter().cloned());
                        next.push(row);
                    }
                }
                acc = next;
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nlitp_poly::{parse_polynomial, VarSpace};

    fn leafs(n: usize) -> (Vec<FormulaTree>, Vec<Atom>) {
        let names: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
        let s = VarSpace::new(&names).unwrap();
        let atoms: Vec<Atom> = (0..n)
            .map(|i| Atom::ge0(parse_polynomial(&format!("f{i}"), &s).unwrap()))
            .collect();
        (atoms.iter().cloned().map(FormulaTree::Leaf).collect(), atoms)
    }

    #[test]
    fn paper_ultimate_shape() {
        // ((f1 and f2) or f3) and f4 and f5, or f6
        // expected disjuncts: {f1,f2,f4,f5}, {f3,f4,f5}, {f6}
        let (l, a) = leafs(7);
        let tree = FormulaTree::Or(vec![
            FormulaTree::And(vec![
                FormulaTree::Or(vec![
                    FormulaTree::And(vec![l[1].clone(), l[2].clone()]),
                    l[3].clone(),
                ]),
                l[4].clone(),
                l[5].clone(),
            ]),
            l[6].clone(),
        ]);
        let dnf = to_dnf(&tree);
        assert_eq!(dnf.len(), 3);
        assert_eq!(dnf[0].atoms, vec![a[1].clone(), a[2].clone(), a[4].clone(), a[5].clone()]);
        assert_eq!(dnf[1].atoms, vec![a[3].clone(), a[4].clone(), a[5].clone()]);
        assert_eq!(dnf[2].atoms, vec![a[6].clone()]);
    }

    #[test]
    fn single_atom() {
        let (l, a) = leafs(1);
        let dnf = to_dnf(&l[0]);
        assert_eq!(dnf.len(), 1);
        assert_eq!(dnf[0].atoms, vec![a[0].clone()]);
    }

    #[test]
    fn binary_distribution() {
        // (a or b) and (c or d) -> {a,c} {a,d} {b,c} {b,d}
        let (l, a) = leafs(4);
        let tree = FormulaTree::And(vec![
            FormulaTree::Or(vec![l[0].clone(), l[1].clone()]),
            FormulaTree::Or(vec![l[2].clone(), l[3].clone()]),
        ]);
        let dnf = to_dnf(&tree);
        assert_eq!(dnf.len(), 4);
        assert_eq!(dnf[0].atoms, vec![a[0].clone(), a[2].clone()]);
        assert_eq!(dnf[1].atoms, vec![a[0].clone(), a[3].clone()]);
        assert_eq!(dnf[2].atoms, vec![a[1].clone(), a[2].clone()]);
        assert_eq!(dnf[3].atoms, vec![a[1].clone(), a[3].clone()]);
    }

    #[test]
    fn duplicate_atoms_removed_within_conjunct() {
        let (l, a) = leafs(1);
        let tree = FormulaTree::And(vec![l[0].clone(), l[0].clone()]);
        let dnf = to_dnf(&tree);
        assert_eq!(dnf[0].atoms, vec![a[0].clone()]);
    }
}
