//! Monomials as sparse exponent lists with the graded-lex order.

use crate::space::{VarId, VarSpace};
use std::cmp::Ordering;
use std::fmt::Write as _;

/// A power product of variables. Exponents are stored sparsely, sorted by
/// variable index, with no zero entries; the constant monomial is the empty
/// list.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    exps: Vec<(VarId, u16)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { exps: vec![(v, 1)] }
    }

    /// Builds from (variable, exponent) pairs; zero exponents are dropped and
    /// repeated variables accumulated.
    pub fn from_pairs(pairs: &[(VarId, u16)]) -> Self {
        let mut exps: Vec<(VarId, u16)> = Vec::with_capacity(pairs.len());
        let mut sorted: Vec<(VarId, u16)> = pairs.to_vec();
        sorted.sort_by_key(|&(v, _)| v);
        for (v, e) in sorted {
            if e == 0 {
                continue;
            }
            match exps.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => exps.push((v, e)),
            }
        }
        Monomial { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn exponent(&self, v: VarId) -> u16 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u16)> + '_ {
        self.exps.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    exps.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((va, ea + eb));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let mut rem = e;
            while j < other.exps.len() && other.exps[j].0 < v {
                return None; // divisor has a variable we lack
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let eb = other.exps[j].1;
                if eb > e {
                    return None;
                }
                rem = e - eb;
                j += 1;
            }
            if rem > 0 {
                exps.push((v, rem));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial { exps })
    }

    pub fn display(&self, space: &VarSpace) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                out.push('*');
            }
            out.push_str(space.name(v));
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

/// Graded lexicographic order: lower total degree first; within a degree,
/// compare exponents variable by variable in declaration order, smaller
/// exponent first. Over `{x, y}` declared in that order this yields
/// `1 < y < x < y^2 < x*y < x^2`, the order every basis and Gram index uses.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // Walk both sparse lists in variable order.
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // A missing variable is exponent 0; the side with the
                    // nonzero exponent on the earlier variable is larger.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                        i += 1;
                        j += 1;
                    }
                },
                // Same degree but one side has trailing variables only:
                // the side with a nonzero exponent on an earlier variable is larger.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(u32, u16)]) -> Monomial {
        Monomial::from_pairs(&pairs.iter().map(|&(v, e)| (VarId(v), e)).collect::<Vec<_>>())
    }

    #[test]
    fn grlex_two_vars() {
        // x = var 0, y = var 1: expect 1 < y < x < y^2 < xy < x^2
        let order = [
            m(&[]),
            m(&[(1, 1)]),
            m(&[(0, 1)]),
            m(&[(1, 2)]),
            m(&[(0, 1), (1, 1)]),
            m(&[(0, 2)]),
        ];
        for w in order.windows(2) {
            assert!(w[0] < w[1], "{:?} !< {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn mul_and_div() {
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(1, 1), (2, 3)]);
        let ab = a.mul(&b);
        assert_eq!(ab, m(&[(0, 2), (1, 2), (2, 3)]));
        assert_eq!(ab.checked_div(&b), Some(a.clone()));
        assert_eq!(ab.checked_div(&m(&[(3, 1)])), None);
        assert_eq!(a.checked_div(&m(&[(0, 3)])), None);
    }

    #[test]
    fn zero_exponents_dropped() {
        let a = m(&[(0, 0), (1, 2)]);
        assert_eq!(a.vars().count(), 1);
        assert_eq!(a.degree(), 2);
        assert_eq!(a.exponent(VarId(0)), 0);
    }
}
