//! Sampling-based satisfiability falsification.
//!
//! A found point proves the two sides are NOT mutually contradictory;
//! finding nothing proves nothing. Unsatisfiability is only ever concluded
//! downstream, by a successful certificate.

use crate::archimedean::ArchimedeanWitness;
use crate::types::PolyFormula;
use nlitp_poly::bound::VarBox;
use nlitp_poly::ratio::{f64_to_rat, rat_to_f64, Rat};
use nlitp_poly::VarId;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// A concrete assignment satisfying both sides simultaneously (equal common
/// part), i.e. a counterexample to mutual contradiction.
#[derive(Clone, Debug)]
pub struct FalsifyWitness {
    pub point: BTreeMap<VarId, Rat>,
    /// Which (phi disjunct, psi disjunct) pair the point satisfies.
    pub pair: (usize, usize),
}

pub struct SampleOptions {
    pub budget: usize,
    pub seed: u64,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions {
            budget: 100_000,
            seed: 0,
        }
    }
}

fn f64_range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

fn box_f64(bx: &VarBox, v: VarId) -> Option<(f64, f64)> {
    bx.get(v)
        .map(|(lo, hi)| (rat_to_f64(lo), rat_to_f64(hi)))
}

/// Exact confirmation of a float candidate: promote coordinates to rationals
/// and re-check both conjuncts exactly.
fn confirm(
    phi: &PolyFormula,
    psi: &PolyFormula,
    i: usize,
    j: usize,
    point: &BTreeMap<VarId, f64>,
) -> Option<FalsifyWitness> {
    let exact: BTreeMap<VarId, Rat> = point
        .iter()
        .map(|(&v, &x)| (v, f64_to_rat(x).unwrap()))
        .collect();
    if phi.disjuncts[i].holds_exact(&exact) && psi.disjuncts[j].holds_exact(&exact) {
        Some(FalsifyWitness {
            point: exact,
            pair: (i, j),
        })
    } else {
        None
    }
}

/// Searches for a point witnessing joint satisfiability of `phi` and `psi`.
///
/// The witnesses provide per-disjunct sampling boxes. The budget is split
/// across disjunct pairs; each shard draws the common coordinates from the
/// intersection of the pair's boxes and local coordinates from each side's
/// own box. For one- and two-dimensional problems with no local variables a
/// deterministic grid pass runs first, so overlapping intervals are found
/// reliably.
pub fn sample_falsify(
    phi: &PolyFormula,
    psi: &PolyFormula,
    wits_a: &[ArchimedeanWitness],
    wits_b: &[ArchimedeanWitness],
    opts: &SampleOptions,
) -> Option<FalsifyWitness> {
    let common = &phi.partition.common;
    let mut pairs: Vec<(usize, usize, VarBox)> = Vec::new();
    for wa in wits_a {
        for wb in wits_b {
            let mut joint = wa.bx.clone();
            if joint.intersect(&wb.bx).is_err() {
                continue; // disjoint common boxes: this pair cannot overlap
            }
            pairs.push((wa.disjunct, wb.disjunct, joint));
        }
    }
    if pairs.is_empty() {
        return None;
    }

    // Grid pass for low-dimensional, local-free pairs.
    for (i, j, joint) in &pairs {
        let locals_free = phi.disjuncts[*i]
            .vars_used()
            .iter()
            .chain(psi.disjuncts[*j].vars_used().iter())
            .all(|v| common.contains(v));
        if !locals_free || common.is_empty() || common.len() > 2 {
            continue;
        }
        let per_axis = if common.len() == 1 { 2048 } else { 128 };
        let axes: Vec<(VarId, f64, f64)> = common
            .iter()
            .filter_map(|&v| box_f64(joint, v).map(|(lo, hi)| (v, lo, hi)))
            .collect();
        if axes.len() != common.len() {
            continue;
        }
        let mut idx = vec![0usize; axes.len()];
        loop {
            let mut point: BTreeMap<VarId, f64> = BTreeMap::new();
            for (k, &(v, lo, hi)) in axes.iter().enumerate() {
                let t = idx[k] as f64 / (per_axis - 1) as f64;
                point.insert(v, lo + t * (hi - lo));
            }
            let dense = densify(&point, phi.space().len());
            if phi.disjuncts[*i].holds_f64(&dense, 0.0)
                && psi.disjuncts[*j].holds_f64(&dense, 0.0)
            {
                if let Some(w) = confirm(phi, psi, *i, *j, &point) {
                    return Some(w);
                }
            }
            // advance odometer
            let mut k = 0;
            loop {
                if k == idx.len() {
                    break;
                }
                idx[k] += 1;
                if idx[k] < per_axis {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }

    // Random pass, seeded and partitioned per pair for reproducibility.
    let shard = opts.budget / pairs.len().max(1);
    for (shard_idx, (i, j, joint)) in pairs.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (shard_idx as u64).wrapping_mul(0x9e3779b97f4a7c15));
        let pa = &phi.disjuncts[*i];
        let pb = &psi.disjuncts[*j];
        let wa = &wits_a.iter().find(|w| w.disjunct == *i).unwrap().bx;
        let wb = &wits_b.iter().find(|w| w.disjunct == *j).unwrap().bx;
        let mut vars: Vec<(VarId, f64, f64)> = Vec::new();
        let mut ok = true;
        for &v in common {
            match box_f64(joint, v) {
                Some((lo, hi)) => vars.push((v, lo, hi)),
                None => ok = false,
            }
        }
        for v in pa.vars_used() {
            if !common.contains(&v) {
                match box_f64(wa, v) {
                    Some((lo, hi)) => vars.push((v, lo, hi)),
                    None => ok = false,
                }
            }
        }
        for v in pb.vars_used() {
            if !common.contains(&v) {
                match box_f64(wb, v) {
                    Some((lo, hi)) => vars.push((v, lo, hi)),
                    None => ok = false,
                }
            }
        }
        if !ok {
            continue;
        }
        for _ in 0..shard {
            let mut point: BTreeMap<VarId, f64> = BTreeMap::new();
            for &(v, lo, hi) in &vars {
                point.insert(v, f64_range(&mut rng, lo, hi));
            }
            let dense = densify(&point, phi.space().len());
            if pa.holds_f64(&dense, 0.0) && pb.holds_f64(&dense, 0.0) {
                if let Some(w) = confirm(phi, psi, *i, *j, &point) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn densify(point: &BTreeMap<VarId, f64>, n: usize) -> Vec<f64> {
    let mut dense = vec![0.0; n];
    for (&v, &x) in point {
        dense[v.index()] = x;
    }
    dense
}

/// Draws up to `budget` samples from `bx` and returns those satisfying the
/// conjunct (float check with zero tolerance). Used by membership flagging
/// and the empirical separation checks.
pub fn rejection_sample(
    conj: &crate::types::Conjunct,
    bx: &VarBox,
    space_len: usize,
    budget: usize,
    want: usize,
    seed: u64,
) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars: Vec<(VarId, f64, f64)> = bx
        .iter()
        .map(|(v, (lo, hi))| (v, rat_to_f64(lo), rat_to_f64(hi)))
        .collect();
    let mut out = Vec::new();
    for _ in 0..budget {
        if out.len() >= want {
            break;
        }
        let mut dense = vec![0.0; space_len];
        for &(v, lo, hi) in &vars {
            dense[v.index()] = f64_range(&mut rng, lo, hi);
        }
        if conj.holds_f64(&dense, 0.0) {
            out.push(dense);
        }
    }
    out
}
