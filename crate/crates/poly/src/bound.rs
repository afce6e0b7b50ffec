//! Interval range bounding of polynomials on boxes.
//!
//! The bounds here are sound but deliberately plain: plain term-wise interval
//! arithmetic, matching the coarse hand bounds the soundness analysis needs.
//! Tightness only affects the certification margins, never correctness.

use crate::basis::MonomialBasis;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ratio::Rat;
use crate::space::VarId;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

/// A closed axis-aligned box: per-variable interval with exact rational
/// endpoints, `lo <= hi`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VarBox {
    intervals: BTreeMap<VarId, (Rat, Rat)>,
}

impl VarBox {
    pub fn new() -> Self {
        VarBox::default()
    }

    pub fn set(&mut self, v: VarId, lo: Rat, hi: Rat) {
        assert!(lo <= hi, "empty interval for variable");
        self.intervals.insert(v, (lo, hi));
    }

    pub fn with(mut self, v: VarId, lo: Rat, hi: Rat) -> Self {
        self.set(v, lo, hi);
        self
    }

    pub fn get(&self, v: VarId) -> Option<&(Rat, Rat)> {
        self.intervals.get(&v)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.intervals.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &(Rat, Rat))> + '_ {
        self.intervals.iter().map(|(&v, i)| (v, i))
    }

    pub fn covers(&self, vars: &[VarId]) -> bool {
        vars.iter().all(|v| self.intervals.contains_key(v))
    }

    /// Intersects in place; panics if some intersection is empty.
    pub fn intersect(&mut self, other: &VarBox) -> Result<(), VarId> {
        for (&v, (lo, hi)) in &other.intervals {
            match self.intervals.get_mut(&v) {
                None => {
                    self.intervals.insert(v, (lo.clone(), hi.clone()));
                }
                Some((slo, shi)) => {
                    if lo > slo {
                        *slo = lo.clone();
                    }
                    if hi < shi {
                        *shi = hi.clone();
                    }
                    if slo > shi {
                        return Err(v);
                    }
                }
            }
        }
        Ok(())
    }

    /// max(|lo|, |hi|) per variable.
    pub fn abs_bound(&self, v: VarId) -> Option<Rat> {
        self.intervals
            .get(&v)
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
    }
}

fn interval_pow(lo: &Rat, hi: &Rat, e: u16) -> (Rat, Rat) {
    if e == 0 {
        return (Rat::from_integer(1.into()), Rat::from_integer(1.into()));
    }
    let pow = |x: &Rat| -> Rat {
        let mut r = Rat::from_integer(1.into());
        for _ in 0..e {
            r *= x.clone();
        }
        r
    };
    if e % 2 == 1 {
        (pow(lo), pow(hi))
    } else {
        let plo = pow(lo);
        let phi = pow(hi);
        let upper = plo.clone().max(phi.clone());
        let lower = if lo.is_negative() && !hi.is_negative() {
            Rat::zero()
        } else {
            plo.min(phi)
        };
        (lower, upper)
    }
}

fn interval_mul(a: &(Rat, Rat), b: &(Rat, Rat)) -> (Rat, Rat) {
    let candidates = [
        a.0.clone() * b.0.clone(),
        a.0.clone() * b.1.clone(),
        a.1.clone() * b.0.clone(),
        a.1.clone() * b.1.clone(),
    ];
    let lo = candidates.iter().min().unwrap().clone();
    let hi = candidates.iter().max().unwrap().clone();
    (lo, hi)
}

/// Range of a single monomial over the box.
pub fn monomial_range(m: &Monomial, bx: &VarBox) -> Option<(Rat, Rat)> {
    let mut acc = (Rat::from_integer(1.into()), Rat::from_integer(1.into()));
    for (v, e) in m.iter() {
        let (lo, hi) = bx.get(v)?;
        let powed = interval_pow(lo, hi, e);
        acc = interval_mul(&acc, &powed);
    }
    Some(acc)
}

/// Term-wise interval enclosure of `p` on `bx`. The returned interval
/// contains the true range of `p` on the box; it is sound, not tight.
/// Every variable of `p` must be covered.
pub fn interval_bound(p: &Polynomial, bx: &VarBox) -> Option<(Rat, Rat)> {
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    for (m, c) in p.terms() {
        let (mlo, mhi) = monomial_range(m, bx)?;
        if c.is_negative() {
            lo += c.clone() * mhi;
            hi += c.clone() * mlo;
        } else {
            lo += c.clone() * mlo;
            hi += c.clone() * mhi;
        }
    }
    Some((lo, hi))
}

/// Upper bound of `sum over monomials m of degree <= d of |m|` on the box:
/// the absolute-monomial-sum quantity of the certification analysis. When
/// `ball` carries the radius-squared of an enclosing origin-centred ball
/// (`sum of v^2 <= n`), each homogeneous layer is additionally capped by
/// `(sum |v_i|)^k <= sqrt(r*n)^k`, which is often far tighter than the
/// per-monomial box product.
pub fn abs_monomial_sum_bound(vars: &[VarId], d: u32, bx: &VarBox, ball: Option<&Rat>) -> Rat {
    layered_bound(vars, d, bx, ball, |m, bx| {
        monomial_range(m, bx).map(|(lo, hi)| lo.abs().max(hi.abs()))
    })
}

/// Upper bound of `sum over basis monomials m of degree <= d of m^2` on the
/// box: bounds the basis-norm polynomial E_d^T E_d. With a ball radius
/// (`sum v^2 <= n`), layer k is capped by n^k.
pub fn basis_norm_bound(vars: &[VarId], d: u32, bx: &VarBox, ball: Option<&Rat>) -> Rat {
    // Square-sum layers: sum_{|a|=k} (v^a)^2 <= (sum v^2)^k <= n^k.
    let mut total = Rat::zero();
    let basis = MonomialBasis::new(vars, d);
    let mut per_layer_box: Vec<Rat> = vec![Rat::zero(); d as usize + 1];
    for m in basis.entries() {
        let sq = m.mul(m);
        let contrib = monomial_range(&sq, bx)
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
            .unwrap_or_else(|| panic!("box does not cover basis variable"));
        per_layer_box[m.degree() as usize] += contrib;
    }
    for (k, box_bound) in per_layer_box.into_iter().enumerate() {
        let layer = match ball {
            Some(n) => {
                let mut ball_bound = Rat::from_integer(1.into());
                for _ in 0..k {
                    ball_bound *= n.clone();
                }
                box_bound.min(ball_bound)
            }
            None => box_bound,
        };
        total += layer;
    }
    total
}

fn layered_bound(
    vars: &[VarId],
    d: u32,
    bx: &VarBox,
    ball: Option<&Rat>,
    per_monomial: impl Fn(&Monomial, &VarBox) -> Option<Rat>,
) -> Rat {
    let basis = MonomialBasis::new(vars, d);
    let mut per_layer_box: Vec<Rat> = vec![Rat::zero(); d as usize + 1];
    for m in basis.entries() {
        let contrib =
            per_monomial(m, bx).unwrap_or_else(|| panic!("box does not cover basis variable"));
        per_layer_box[m.degree() as usize] += contrib;
    }
    // abs-sum layers: sum_{|a|=k} |v^a| <= (sum |v_i|)^k, and on the ball
    // sum |v_i| <= sqrt(r * n) by Cauchy-Schwarz.
    let s_cap: Option<Rat> = ball.map(|n| {
        let rn = Rat::from_integer((vars.len() as i64).into()) * n.clone();
        crate::ratio::sqrt_upper(&rn)
    });
    let mut total = Rat::zero();
    for (k, box_bound) in per_layer_box.into_iter().enumerate() {
        let layer = match &s_cap {
            Some(s) => {
                let mut ball_bound = Rat::from_integer(1.into());
                for _ in 0..k {
                    ball_bound *= s.clone();
                }
                box_bound.min(ball_bound)
            }
            None => box_bound,
        };
        total += layer;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ratio::{rat, rat_int};
    use crate::space::VarSpace;

    #[test]
    fn constant_is_tight() {
        let s = VarSpace::new(&["x"]).unwrap();
        let p = parse_polynomial("4", &s).unwrap();
        let bx = VarBox::new().with(VarId(0), rat_int(-7), rat_int(9));
        assert_eq!(interval_bound(&p, &bx), Some((rat_int(4), rat_int(4))));
    }

    #[test]
    fn paper_atom_bound_on_box() {
        // f2 = -y^4 + 2x^4 - a1^4 - 1/100 on [-2,2] per variable: upper 31.99
        let s = VarSpace::new(&["x", "y", "a1"]).unwrap();
        let p = parse_polynomial("-y^4 + 2*x^4 - a1^4 - 0.01", &s).unwrap();
        let mut bx = VarBox::new();
        for v in s.ids() {
            bx.set(v, rat_int(-2), rat_int(2));
        }
        let (_, hi) = interval_bound(&p, &bx).unwrap();
        assert_eq!(hi, rat(3199, 100));
        assert!(hi <= rat_int(32));
    }

    #[test]
    fn even_power_straddling_zero() {
        let s = VarSpace::new(&["x"]).unwrap();
        let p = parse_polynomial("x^2", &s).unwrap();
        let bx = VarBox::new().with(VarId(0), rat_int(-1), rat_int(2));
        assert_eq!(interval_bound(&p, &bx), Some((rat_int(0), rat_int(4))));
        // and when the interval stays positive the lower bound is not 0
        let bx = VarBox::new().with(VarId(0), rat_int(1), rat_int(2));
        assert_eq!(interval_bound(&p, &bx), Some((rat_int(1), rat_int(4))));
    }

    #[test]
    fn abs_monomial_sum_degree_one() {
        // 1 + |x| + |y| on [-2,2]^2 -> 5
        let s = VarSpace::new(&["x", "y"]).unwrap();
        let bx = VarBox::new()
            .with(VarId(0), rat_int(-2), rat_int(2))
            .with(VarId(1), rat_int(-2), rat_int(2));
        let vars: Vec<VarId> = s.ids().collect();
        assert_eq!(abs_monomial_sum_bound(&vars, 1, &bx, None), rat_int(5));
    }

    #[test]
    fn ball_cap_tightens_layers() {
        // 7 variables on [-2,2]^7 with ball sum v^2 <= 4:
        // degree-2 abs layer capped by (sqrt(7*4))^2 = 28 instead of 112.
        let s = VarSpace::new(&["x", "y", "z", "a", "b", "c", "d"]).unwrap();
        let vars: Vec<VarId> = s.ids().collect();
        let mut bx = VarBox::new();
        for v in s.ids() {
            bx.set(v, rat_int(-2), rat_int(2));
        }
        let plain = abs_monomial_sum_bound(&vars, 2, &bx, None);
        assert_eq!(plain, rat_int(1 + 14 + 112));
        let n = rat_int(4);
        let balled = abs_monomial_sum_bound(&vars, 2, &bx, Some(&n));
        assert!(balled < rat_int(36)); // 1 + 5.292 + 28 approx 34.3
        assert!(balled > rat_int(34));
        // basis-norm: E_1: 1 + sum v^2 <= 1 + 4 = 5 with ball, 29 without
        assert_eq!(basis_norm_bound(&vars, 1, &bx, None), rat_int(29));
        assert_eq!(basis_norm_bound(&vars, 1, &bx, Some(&n)), rat_int(5));
    }
}
