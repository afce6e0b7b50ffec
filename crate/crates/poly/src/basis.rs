//! Monomial bases: the column vector of all monomials up to a degree bound.

use crate::monomial::Monomial;
use crate::space::VarId;
use num_integer::binomial;

/// All monomials of total degree <= `degree` over `vars`, sorted graded-lex
/// ascending (constant first). Size is C(|vars| + d, d).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialBasis {
    pub vars: Vec<VarId>,
    pub degree: u32,
    entries: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(vars: &[VarId], degree: u32) -> Self {
        let mut sorted = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut entries = Vec::new();
        let mut current = vec![Monomial::one()];
        entries.push(Monomial::one());
        for _ in 1..=degree {
            let mut next = Vec::new();
            for m in &current {
                for &v in &sorted {
                    let cand = m.mul(&Monomial::var(v));
                    next.push(cand);
                }
            }
            next.sort();
            next.dedup();
            entries.extend(next.iter().cloned());
            current = next;
        }
        entries.sort();
        entries.dedup();
        MonomialBasis {
            vars: sorted,
            degree,
            entries,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Monomial] {
        &self.entries
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.entries.binary_search(m).ok()
    }

    /// C(n + d, d) for n variables at degree bound d.
    pub fn expected_size(nvars: usize, degree: u32) -> u64 {
        binomial((nvars as u64) + degree as u64, degree as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_vars_degree_two() {
        // vars declared x (0), y (1): expect [1, y, x, y^2, xy, x^2]
        let b = MonomialBasis::new(&[VarId(0), VarId(1)], 2);
        assert_eq!(b.len(), 6);
        let shown: Vec<u32> = b.entries().iter().map(|m| m.degree()).collect();
        assert_eq!(shown, vec![0, 1, 1, 2, 2, 2]);
        assert_eq!(b.entries()[1], Monomial::var(VarId(1)));
        assert_eq!(b.entries()[2], Monomial::var(VarId(0)));
        assert_eq!(
            b.entries()[4],
            Monomial::var(VarId(0)).mul(&Monomial::var(VarId(1)))
        );
    }

    #[test]
    fn degree_zero() {
        let b = MonomialBasis::new(&[VarId(0)], 0);
        assert_eq!(b.entries(), &[Monomial::one()]);
    }

    #[test]
    fn seven_vars_degree_two_size() {
        let vars: Vec<VarId> = (0..7).map(VarId).collect();
        let b = MonomialBasis::new(&vars, 2);
        assert_eq!(b.len() as u64, MonomialBasis::expected_size(7, 2));
        assert_eq!(b.len(), 36);
    }

    #[test]
    fn index_lookup() {
        let b = MonomialBasis::new(&[VarId(0), VarId(1)], 3);
        for (i, m) in b.entries().iter().enumerate() {
            assert_eq!(b.index_of(m), Some(i));
        }
        assert_eq!(b.index_of(&Monomial::from_pairs(&[(VarId(0), 4)])), None);
    }
}
