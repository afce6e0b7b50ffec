//! Archimedean (boundedness) witnesses for each disjunct.
//!
//! A disjunct is accepted when it carries a syntactic ball atom
//! `N - sum of v^2` over all its variables, or when per-variable bounds can
//! be established (from separated atoms and user boxes), in which case the
//! enclosing ball atom is synthesized and added to the conjunct. Nothing
//! fancier is attempted: deciding Archimedean-ness in general is out of
//! reach, so boundedness must be exhibited, as the worked problems do.

use crate::types::{Atom, Conjunct, PolyFormula, Rel};
use nlitp_poly::bound::{interval_bound, VarBox};
use nlitp_poly::ratio::{sqrt_upper, Rat};
use nlitp_poly::{Monomial, Polynomial, VarId};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone)]
pub enum ArchError {
    #[error("cannot certify Archimedean: disjunct {disjunct} of {side} has no ball atom and no box for variable `{var}`")]
    NotCertified {
        side: &'static str,
        disjunct: usize,
        var: String,
    },
    #[error("every disjunct of {side} is unsatisfiable by interval reasoning")]
    AllDisjunctsEmpty { side: &'static str },
}

/// Per-disjunct compactness witness. `bx` is the box used downstream for
/// sampling and for the certification bounds; `ball_n` is the radius-squared
/// of the origin-centred ball atom present in (or added to) the conjunct.
#[derive(Clone, Debug)]
pub struct ArchimedeanWitness {
    pub disjunct: usize,
    pub ball_n: Rat,
    pub bx: VarBox,
    pub from_ball_atom: bool,
}

/// Finds an atom of the exact shape `N - sum_{v in vars} v^2 >= 0`, N > 0.
pub fn detect_ball_atom(c: &Conjunct, vars: &[VarId]) -> Option<(usize, Rat)> {
    'atoms: for (i, a) in c.atoms.iter().enumerate() {
        if a.rel != Rel::Ge0 {
            continue;
        }
        let p = &a.poly;
        if p.num_terms() != vars.len() + 1 {
            continue;
        }
        let n = p.constant_term();
        if !n.is_positive() {
            continue;
        }
        for &v in vars {
            let sq = Monomial::from_pairs(&[(v, 2)]);
            if p.coeff(&sq) != -Rat::one() {
                continue 'atoms;
            }
        }
        return Some((i, n));
    }
    None
}

/// Interval bounds for variables derivable from the conjunct's atoms.
///
/// Only "separated" atoms (every monomial involves at most one variable)
/// participate. For those, each univariate part that is a shifted even power
/// `e - c (v - a)^{2k}` with `c > 0` yields two-sided bounds; linear parts
/// yield one-sided bounds. Iterated to a fixpoint so one atom's bounds can
/// sharpen another's.
pub fn infer_bounds(c: &Conjunct) -> Result<VarBox, Unsat> {
    let mut lo: BTreeMap<VarId, Rat> = BTreeMap::new();
    let mut hi: BTreeMap<VarId, Rat> = BTreeMap::new();
    let parts: Vec<Option<(Rat, BTreeMap<VarId, Polynomial>)>> =
        c.atoms.iter().map(|a| separate(&a.poly)).collect();

    for _round in 0..6 {
        let mut changed = false;
        for sep in parts.iter().flatten() {
            let (c0, by_var) = sep;
            for (v, qv) in by_var {
                // L = -c0 - sum over other vars of an upper bound of q_w
                let mut budget = -c0.clone();
                let mut ok = true;
                for (w, qw) in by_var {
                    if w == v {
                        continue;
                    }
                    match upper_of(qw, *w, &lo, &hi) {
                        Some(u) => budget -= u,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                match solve_univariate_ge(qv, *v, &budget) {
                    Solved::Unsat => return Err(Unsat),
                    Solved::Nothing => {}
                    Solved::Bounds(nlo, nhi) => {
                        if let Some(b) = nlo {
                            match lo.get_mut(v) {
                                None => {
                                    lo.insert(*v, b);
                                    changed = true;
                                }
                                Some(e) if b > *e => {
                                    *e = b;
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                        if let Some(b) = nhi {
                            match hi.get_mut(v) {
                                None => {
                                    hi.insert(*v, b);
                                    changed = true;
                                }
                                Some(e) if b < *e => {
                                    *e = b;
                                    changed = true;
                                }
                                _ => {}
                            }
                        }
                        if let (Some(l), Some(h)) = (lo.get(v), hi.get(v)) {
                            if l > h {
                                return Err(Unsat);
                            }
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut bx = VarBox::new();
    for (v, l) in &lo {
        if let Some(h) = hi.get(v) {
            bx.set(*v, l.clone(), h.clone());
        }
    }
    Ok(bx)
}

/// Marker: the conjunct's solution set is empty by interval reasoning.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Unsat;

/// Splits `p` into constant + per-variable univariate parts; None when some
/// monomial mixes variables.
fn separate(p: &Polynomial) -> Option<(Rat, BTreeMap<VarId, Polynomial>)> {
    let mut c0 = Rat::zero();
    let mut by_var: BTreeMap<VarId, Polynomial> = BTreeMap::new();
    for (m, coeff) in p.terms() {
        let vars: Vec<VarId> = m.vars().collect();
        match vars.len() {
            0 => c0 = coeff.clone(),
            1 => {
                let v = vars[0];
                let term = Polynomial::from_terms(
                    p.space().clone(),
                    [(m.clone(), coeff.clone())],
                );
                let entry = by_var
                    .entry(v)
                    .or_insert_with(|| Polynomial::zero(p.space().clone()));
                *entry = entry.add(&term);
            }
            _ => return None,
        }
    }
    Some((c0, by_var))
}

/// Upper bound of a univariate `q` over the reals (shifted-power match) or
/// over the variable's currently known interval.
fn upper_of(
    q: &Polynomial,
    v: VarId,
    lo: &BTreeMap<VarId, Rat>,
    hi: &BTreeMap<VarId, Rat>,
) -> Option<Rat> {
    let global = match_shifted_power(q, v).map(|(_c, _a, _k, e)| e);
    let local = match (lo.get(&v), hi.get(&v)) {
        (Some(l), Some(h)) if l <= h => {
            let bx = VarBox::new().with(v, l.clone(), h.clone());
            interval_bound(q, &bx).map(|(_, u)| u)
        }
        _ => None,
    };
    match (global, local) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

enum Solved {
    Unsat,
    Nothing,
    Bounds(Option<Rat>, Option<Rat>),
}

/// Solution bounds of `q(v) >= budget` for univariate `q`.
fn solve_univariate_ge(q: &Polynomial, v: VarId, budget: &Rat) -> Solved {
    if q.degree() == 1 {
        // c1 * v >= budget
        let c1 = q.coeff(&Monomial::var(v));
        if c1.is_zero() {
            return Solved::Nothing;
        }
        let bound = budget / &c1;
        return if c1.is_positive() {
            Solved::Bounds(Some(bound), None)
        } else {
            Solved::Bounds(None, Some(bound))
        };
    }
    if let Some((c, a, k, e)) = match_shifted_power(q, v) {
        // e - c (v-a)^{2k} >= budget  <=>  (v-a)^{2k} <= (e - budget)/c
        let rhs = (e - budget) / c;
        if rhs.is_negative() {
            return Solved::Unsat;
        }
        let r = root_upper(&rhs, 2 * k);
        return Solved::Bounds(Some(&a - &r), Some(&a + &r));
    }
    Solved::Nothing
}

/// Matches `q = e - c (v - a)^{2k}` with `c > 0`; returns (c, a, k, e).
/// Any concave parabola matches with k = 1.
fn match_shifted_power(q: &Polynomial, v: VarId) -> Option<(Rat, Rat, u32, Rat)> {
    let d = q.degree();
    if d < 2 || d % 2 != 0 {
        return None;
    }
    let k = d / 2;
    let lead = q.coeff(&Monomial::from_pairs(&[(v, d as u16)]));
    if !lead.is_negative() {
        return None;
    }
    let c = -lead;
    // coefficient of v^{d-1} in -c (v-a)^d is  c * d * a
    let sub = q.coeff(&Monomial::from_pairs(&[(v, (d - 1) as u16)]));
    let a = sub / (&c * Rat::from_integer(d.into()));
    // verify q + c (v-a)^d is constant
    let shift = Polynomial::var(q.space().clone(), v)
        .sub(&Polynomial::constant(q.space().clone(), a.clone()));
    let back = q.add(&shift.pow(d).scale(&c));
    if back.degree() != 0 {
        return None;
    }
    Some((c, a, k, back.constant_term()))
}

/// A rational `r >= 0` with `r^n >= q`, close to the true n-th root.
pub fn root_upper(q: &Rat, n: u32) -> Rat {
    assert!(!q.is_negative() && n >= 1);
    if n == 1 {
        return q.clone();
    }
    if n == 2 {
        return sqrt_upper(q);
    }
    if q.is_zero() {
        return Rat::zero();
    }
    let pown = |x: &Rat| -> Rat {
        let mut r = Rat::one();
        for _ in 0..n {
            r *= x.clone();
        }
        r
    };
    let mut hi = q.clone().max(Rat::one());
    let mut lo = Rat::zero();
    for _ in 0..96 {
        let mid = (&lo + &hi) / Rat::from_integer(2.into());
        if pown(&mid) >= *q {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Checks one side's disjuncts, augmenting conjuncts with synthesized ball
/// atoms where needed. Returns the (possibly augmented) formula along with
/// one witness per surviving disjunct. Disjuncts shown empty by interval
/// reasoning are dropped.
pub fn check_archimedean(
    formula: &PolyFormula,
    user_box: &VarBox,
) -> Result<(PolyFormula, Vec<ArchimedeanWitness>), ArchError> {
    let side = formula.side.label();
    let mut out_disjuncts: Vec<Conjunct> = Vec::new();
    let mut witnesses: Vec<ArchimedeanWitness> = Vec::new();

    for (di, conj) in formula.disjuncts.iter().enumerate() {
        let mut vars: Vec<VarId> = formula.partition.common.clone();
        for v in conj.vars_used() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
        vars.sort();

        if let Some((_idx, n)) = detect_ball_atom(conj, &vars) {
            let r = sqrt_upper(&n);
            let mut bx = VarBox::new();
            for &v in &vars {
                bx.set(v, -r.clone(), r.clone());
            }
            out_disjuncts.push(conj.clone());
            witnesses.push(ArchimedeanWitness {
                disjunct: out_disjuncts.len() - 1,
                ball_n: n,
                bx,
                from_ball_atom: true,
            });
            continue;
        }

        let mut bx = match infer_bounds(conj) {
            Ok(b) => b,
            Err(Unsat) => continue, // empty disjunct contributes nothing
        };
        if bx.intersect(user_box).is_err() {
            continue; // user box contradicts inferred bounds: empty set
        }
        if let Some(missing) = vars.iter().find(|v| bx.get(**v).is_none()) {
            return Err(ArchError::NotCertified {
                side,
                disjunct: di,
                var: formula.space().name(*missing).to_string(),
            });
        }
        // Ball radius^2 from the box corners, then append the ball atom.
        let mut n = Rat::zero();
        for &v in &vars {
            let m = bx.abs_bound(v).expect("covered");
            n += &m * &m;
        }
        let space = formula.space().clone();
        let mut ball = Polynomial::constant(space.clone(), n.clone());
        for &v in &vars {
            ball = ball.sub(&Polynomial::var(space.clone(), v).pow(2));
        }
        let mut atoms = conj.atoms.clone();
        atoms.push(Atom::ge0(ball));
        out_disjuncts.push(Conjunct::new(atoms));
        witnesses.push(ArchimedeanWitness {
            disjunct: out_disjuncts.len() - 1,
            ball_n: n,
            bx,
            from_ball_atom: false,
        });
    }

    if out_disjuncts.is_empty() {
        return Err(ArchError::AllDisjunctsEmpty { side });
    }
    let augmented = PolyFormula::new(
        formula.space().clone(),
        formula.partition.clone(),
        formula.side,
        out_disjuncts,
    )
    .expect("augmentation preserves side discipline");
    Ok((augmented, witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::{Side, VarPartition};
    use nlitp_poly::ratio::{rat, rat_int};
    use nlitp_poly::{parse_polynomial, VarSpace};
    use std::sync::Arc;

    fn seven_var_space() -> Arc<nlitp_poly::VarSpace> {
        VarSpace::new(&["x", "y", "z", "a1", "b1", "c1", "d1"]).unwrap()
    }

    #[test]
    fn ball_atom_detected() {
        let s = seven_var_space();
        let f1 = parse_polynomial("4 - x^2 - y^2 - z^2 - a1^2 - b1^2 - c1^2 - d1^2", &s).unwrap();
        let c = Conjunct::new(vec![Atom::ge0(f1)]);
        let vars: Vec<VarId> = s.ids().collect();
        let (idx, n) = detect_ball_atom(&c, &vars).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(n, rat_int(4));
        // not a ball over a smaller variable set
        assert!(detect_ball_atom(&c, &vars[..3]).is_none());
    }

    #[test]
    fn synthesized_ball_from_user_box() {
        // car-example style: user box [-2, 55] on vc -> ball 3025 - vc^2
        let s = VarSpace::new(&["vc"]).unwrap();
        let part = VarPartition {
            common: vec![VarId(0)],
            local_a: vec![],
            local_b: vec![],
        };
        let p = parse_polynomial("vc", &s).unwrap();
        let f = PolyFormula::new(
            s.clone(),
            part,
            Side::A,
            vec![Conjunct::new(vec![Atom::ge0(p)])],
        )
        .unwrap();
        let ub = VarBox::new().with(VarId(0), rat_int(-2), rat_int(55));
        let (aug, w) = check_archimedean(&f, &ub).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].ball_n, rat_int(3025));
        assert!(!w[0].from_ball_atom);
        let added = &aug.disjuncts[0].atoms.last().unwrap().poly;
        assert_eq!(added, &parse_polynomial("3025 - vc^2", &s).unwrap());
    }

    #[test]
    fn unbounded_disjunct_rejected() {
        let s = VarSpace::new(&["x"]).unwrap();
        let part = VarPartition {
            common: vec![VarId(0)],
            local_a: vec![],
            local_b: vec![],
        };
        let f = PolyFormula::new(
            s.clone(),
            part,
            Side::A,
            vec![Conjunct::new(vec![Atom::ge0(
                parse_polynomial("x", &s).unwrap(),
            )])],
        )
        .unwrap();
        let e = check_archimedean(&f, &VarBox::new()).unwrap_err();
        assert!(matches!(e, ArchError::NotCertified { .. }));
    }

    #[test]
    fn inference_from_shifted_squares() {
        // 100 - (x+50)^2 >= 0 and 100 - y^2 >= 0: x in [-60,-40], y in [-10,10]
        let s = VarSpace::new(&["x", "y"]).unwrap();
        let c = Conjunct::new(vec![
            Atom::ge0(parse_polynomial("100 - (x+50)^2", &s).unwrap()),
            Atom::ge0(parse_polynomial("100 - y^2", &s).unwrap()),
        ]);
        let bx = infer_bounds(&c).unwrap();
        assert_eq!(bx.get(VarId(0)), Some(&(rat_int(-60), rat_int(-40))));
        assert_eq!(bx.get(VarId(1)), Some(&(rat_int(-10), rat_int(10))));
    }

    #[test]
    fn inference_mixes_linear_and_quartic() {
        // x >= 0 and 100 - (x-5)^2 - (y+3)^4 >= 0
        let s = VarSpace::new(&["x", "y"]).unwrap();
        let c = Conjunct::new(vec![
            Atom::ge0(parse_polynomial("x", &s).unwrap()),
            Atom::ge0(parse_polynomial("100 - (x-5)^2 - (y+3)^4", &s).unwrap()),
        ]);
        let bx = infer_bounds(&c).unwrap();
        let (xlo, xhi) = bx.get(VarId(0)).unwrap();
        assert_eq!(xlo, &rat_int(0));
        assert_eq!(xhi, &rat_int(15));
        let (ylo, yhi) = bx.get(VarId(1)).unwrap();
        // y in [-3 - 10^(1/4) - eps, -3 + 10^(1/4) + eps]
        assert!(ylo > &rat(-62, 10) && ylo < &rat(-61, 10));
        assert!(yhi > &rat(-3, 10) && yhi < &rat(2, 10));
    }

    #[test]
    fn inference_detects_empty() {
        let s = VarSpace::new(&["x"]).unwrap();
        let c = Conjunct::new(vec![
            Atom::ge0(parse_polynomial("x - 10", &s).unwrap()),
            Atom::ge0(parse_polynomial("1 - x^2", &s).unwrap()),
        ]);
        assert_eq!(infer_bounds(&c), Err(Unsat));
    }

    #[test]
    fn vertex_form_inference() {
        // vc(40 - vc) >= 0 is 400 - (vc-20)^2 >= 0: vc in [0, 40]
        let s = VarSpace::new(&["vc"]).unwrap();
        let c = Conjunct::new(vec![Atom::ge0(
            parse_polynomial("vc*(40 - vc)", &s).unwrap(),
        )]);
        let bx = infer_bounds(&c).unwrap();
        assert_eq!(bx.get(VarId(0)), Some(&(rat_int(0), rat_int(40))));
    }
}
