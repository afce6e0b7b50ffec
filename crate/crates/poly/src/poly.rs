//! The polynomial type: a canonical term map over a shared variable space.

use crate::monomial::Monomial;
use crate::ratio::Rat;
use crate::space::{join_spaces, VarId, VarSpace};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficients are stored; terms are keyed by the
/// graded-lex [`Monomial`] order; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    space: Arc<VarSpace>,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(space: Arc<VarSpace>) -> Self {
        Polynomial {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: Arc<VarSpace>, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { space, terms }
    }

    pub fn var(space: Arc<VarSpace>, v: VarId) -> Self {
        assert!(v.index() < space.len(), "variable outside space");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), Rat::one());
        Polynomial { space, terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(
        space: Arc<VarSpace>,
        iter: I,
    ) -> Self {
        let mut p = Polynomial::zero(space);
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn space(&self) -> &Arc<VarSpace> {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max total degree of any term; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    /// Variables actually occurring with nonzero exponent.
    pub fn vars_used(&self) -> Vec<VarId> {
        let mut seen = vec![false; self.space.len()];
        for m in self.terms.keys() {
            for v in m.vars() {
                seen[v.index()] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|&(_, &s)| s)
            .map(|(i, _)| VarId(i as u32))
            .collect()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let space = join_spaces(&self.space, &other.space);
        let mut out = Polynomial::zero(space);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone());
        }
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.space.clone());
        }
        Polynomial {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let space = join_spaces(&self.space, &other.space);
        let mut out = Polynomial::zero(space);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.space.clone(), Rat::one());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Moves the polynomial into a larger space that extends the current one.
    pub fn into_space(&self, space: Arc<VarSpace>) -> Polynomial {
        assert!(
            self.space.is_prefix_of(&space),
            "target space does not extend source space"
        );
        Polynomial {
            space,
            terms: self.terms.clone(),
        }
    }

    /// Exact evaluation at a rational point. Every used variable must be
    /// assigned.
    pub fn eval(&self, point: &BTreeMap<VarId, Rat>) -> Result<Rat, VarId> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (var, e) in m.iter() {
                let x = point.get(&var).ok_or(var)?;
                let mut p = Rat::one();
                for _ in 0..e {
                    p *= x.clone();
                }
                v *= p;
            }
            total += v;
        }
        Ok(total)
    }

    /// IEEE double evaluation; point is a dense slice indexed by `VarId`.
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let mut v = crate::ratio::rat_to_f64(c);
            for (var, e) in m.iter() {
                v *= point[var.index()].powi(e as i32);
            }
            total += v;
        }
        total
    }

    /// Exact parallel substitution: every variable in `bindings` is replaced
    /// by the bound polynomial, other variables stay themselves.
    pub fn substitute(&self, bindings: &BTreeMap<VarId, Polynomial>) -> Polynomial {
        let mut space = self.space.clone();
        for p in bindings.values() {
            space = join_spaces(&space, p.space());
        }
        let mut out = Polynomial::zero(space.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(space.clone(), c.clone());
            for (var, e) in m.iter() {
                let factor = match bindings.get(&var) {
                    Some(p) => p.into_space(space.clone()).pow(e as u32),
                    None => Polynomial::var(space.clone(), var).pow(e as u32),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    /// Renders with coefficients printed exactly (rationals as `a/b`).
    pub fn display_exact(&self) -> String {
        self.render(|c| {
            if c.is_integer() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
    }

    /// Renders with coefficients rounded to `decimals` places.
    pub fn display_decimal(&self, decimals: usize) -> String {
        self.render(|c| crate::ratio::decimal_string(c, decimals))
    }

    fn render(&self, coeff: impl Fn(&Rat) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let cs = coeff(&c.abs());
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let unit_coeff = cs == "1" || cs.trim_end_matches('0').trim_end_matches('.') == "1";
            if m.is_one() {
                out.push_str(&cs);
            } else if unit_coeff {
                out.push_str(&m.display(&self.space));
            } else {
                out.push_str(&cs);
                out.push('*');
                out.push_str(&m.display(&self.space));
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_exact())
    }
}
