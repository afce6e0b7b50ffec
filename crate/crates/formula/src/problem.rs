//! The `(problem ...)` input format.

use crate::sexpr::{read_one, Pos, Sexpr, SexprError};
use crate::types::{Atom, Conjunct, FormulaTree, PolyFormula, Rel, Side, VarPartition};
use crate::dnf::to_dnf;
use nlitp_poly::bound::VarBox;
use nlitp_poly::ratio::parse_decimal;
use nlitp_poly::{parse_polynomial_at, VarId, VarSpace};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("{0}")]
    Sexpr(#[from] SexprError),
    #[error("{0}")]
    Poly(#[from] nlitp_poly::ParseError),
    #[error("{msg} at line {line}, column {col}")]
    Structure { msg: String, line: usize, col: usize },
    #[error("strict inequality unsupported at line {line}, column {col} (only >= and = are admitted here)")]
    StrictInequality { line: usize, col: usize },
    #[error("variable `{0}` appears on both local sides")]
    BothLocalSides(String),
    #[error("{0}")]
    Semantics(String),
}

fn structure(msg: impl Into<String>, pos: Pos) -> ProblemError {
    ProblemError::Structure {
        msg: msg.into(),
        line: pos.line,
        col: pos.col,
    }
}

/// A parsed interpolation problem: partitioned variables, the two formulas
/// in DNF with equalities expanded, and optional per-variable boxes.
#[derive(Clone, Debug)]
pub struct Problem {
    pub space: Arc<VarSpace>,
    pub partition: VarPartition,
    pub phi: PolyFormula,
    pub psi: PolyFormula,
    pub boxes: VarBox,
}

/// A relational atom as parsed, before strictness policy is applied.
pub enum ParsedRel {
    Ge(Atom),
    Eq(Atom),
    /// Strict `p > 0`, normalized so the relation is "greater".
    Gt(nlitp_poly::Polynomial),
}

/// Parses `(op RAW rhs)` into a normalized relational atom over `poly - rhs`
/// (or `rhs - poly` for `<`/`<=`).
pub fn parse_relation(e: &Sexpr, space: &Arc<VarSpace>) -> Result<ParsedRel, ProblemError> {
    let Sexpr::Relation {
        op,
        raw,
        raw_pos,
        rhs,
        pos,
    } = e
    else {
        return Err(structure("expected a relational form like (>= P 0)", e.pos()));
    };
    let p = parse_polynomial_at(raw, space, raw_pos.line, raw_pos.col)?;
    let c = parse_decimal(rhs)
        .ok_or_else(|| structure(format!("right-hand side `{rhs}` is not a number"), *pos))?;
    let rhs_poly = nlitp_poly::Polynomial::constant(space.clone(), c);
    let norm = p.sub(&rhs_poly);
    Ok(match op.as_str() {
        ">=" => ParsedRel::Ge(Atom::ge0(norm)),
        "=" => ParsedRel::Eq(Atom::eq0(norm)),
        "<=" => ParsedRel::Ge(Atom::ge0(norm.neg())),
        ">" => ParsedRel::Gt(norm),
        "<" => ParsedRel::Gt(norm.neg()),
        _ => unreachable!("reader only emits relational ops"),
    })
}

/// Formula tree parser shared by `phi`/`psi` bodies: nested (and ...)/(or ...)
/// over relational atoms. Strict inequalities are rejected.
fn parse_tree(e: &Sexpr, space: &Arc<VarSpace>) -> Result<FormulaTree, ProblemError> {
    match e {
        Sexpr::Relation { pos, .. } => match parse_relation(e, space)? {
            ParsedRel::Ge(a) => Ok(FormulaTree::Leaf(a)),
            ParsedRel::Eq(a) => Ok(FormulaTree::Leaf(a)),
            ParsedRel::Gt(_) => Err(ProblemError::StrictInequality {
                line: pos.line,
                col: pos.col,
            }),
        },
        Sexpr::List { items, pos } => {
            let head = e
                .head()
                .ok_or_else(|| structure("expected (and ...) or (or ...)", *pos))?;
            let children: Result<Vec<FormulaTree>, ProblemError> =
                items[1..].iter().map(|c| parse_tree(c, space)).collect();
            let children = children?;
            if children.is_empty() {
                return Err(structure(format!("empty ({head} ...)"), *pos));
            }
            match head {
                "and" => Ok(FormulaTree::And(children)),
                "or" => Ok(FormulaTree::Or(children)),
                other => Err(structure(format!("unknown connective `{other}`"), *pos)),
            }
        }
        Sexpr::Atom { pos, .. } => Err(structure("expected a formula", *pos)),
    }
}

fn names_of(items: &[Sexpr]) -> Result<Vec<String>, ProblemError> {
    items
        .iter()
        .map(|e| {
            e.as_atom()
                .map(str::to_string)
                .ok_or_else(|| structure("expected a variable name", e.pos()))
        })
        .collect()
}

/// Parses the `(problem ...)` file text.
pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let top = read_one(text)?;
    let Sexpr::List { items, pos } = &top else {
        return Err(structure("expected (problem ...)", top.pos()));
    };
    if top.head() != Some("problem") {
        return Err(structure("expected (problem ...)", *pos));
    }

    let mut common: Vec<String> = Vec::new();
    let mut local_a: Vec<String> = Vec::new();
    let mut local_b: Vec<String> = Vec::new();
    let mut phi_form: Option<&Sexpr> = None;
    let mut psi_form: Option<&Sexpr> = None;
    let mut boxes_raw: Vec<(&[Sexpr], Pos)> = Vec::new();

    for item in &items[1..] {
        let Sexpr::List {
            items: sub,
            pos: spos,
        } = item
        else {
            return Err(structure("expected a (section ...) form", item.pos()));
        };
        match item.head() {
            Some("common") => common = names_of(&sub[1..])?,
            Some("local-a") => local_a = names_of(&sub[1..])?,
            Some("local-b") => local_b = names_of(&sub[1..])?,
            Some("phi") => {
                phi_form = Some(sub.get(1).ok_or_else(|| structure("empty (phi)", *spos))?)
            }
            Some("psi") => {
                psi_form = Some(sub.get(1).ok_or_else(|| structure("empty (psi)", *spos))?)
            }
            Some("box") => boxes_raw.push((&sub[1..], *spos)),
            other => {
                return Err(structure(
                    format!("unknown section `{}`", other.unwrap_or("?")),
                    *spos,
                ))
            }
        }
    }

    for v in &local_a {
        if local_b.contains(v) {
            return Err(ProblemError::BothLocalSides(v.clone()));
        }
    }
    for v in &common {
        if local_a.contains(v) || local_b.contains(v) {
            return Err(ProblemError::Semantics(format!(
                "variable `{v}` is declared both common and local"
            )));
        }
    }

    let mut all = common.clone();
    all.extend(local_a.iter().cloned());
    all.extend(local_b.iter().cloned());
    let space = VarSpace::new(&all).map_err(ProblemError::Semantics)?;
    let ids = |names: &[String]| -> Vec<VarId> {
        names.iter().map(|n| space.lookup(n).unwrap()).collect()
    };
    let partition = VarPartition {
        common: ids(&common),
        local_a: ids(&local_a),
        local_b: ids(&local_b),
    };

    let phi_tree = parse_tree(
        phi_form.ok_or_else(|| structure("missing (phi ...)", *pos))?,
        &space,
    )?;
    let psi_tree = parse_tree(
        psi_form.ok_or_else(|| structure("missing (psi ...)", *pos))?,
        &space,
    )?;

    let build = |side, tree: &FormulaTree| -> Result<PolyFormula, ProblemError> {
        let disjuncts = to_dnf(tree);
        let f = PolyFormula::new(space.clone(), partition.clone(), side, disjuncts)
            .map_err(ProblemError::Semantics)?;
        Ok(f.expand_equalities())
    };
    let phi = build(Side::A, &phi_tree)?;
    let psi = build(Side::B, &psi_tree)?;

    let mut boxes = VarBox::new();
    for (sub, bpos) in boxes_raw {
        if sub.len() != 3 {
            return Err(structure("box needs (box var lo hi)", bpos));
        }
        let name = sub[0]
            .as_atom()
            .ok_or_else(|| structure("box variable name expected", sub[0].pos()))?;
        let v = space
            .lookup(name)
            .ok_or_else(|| structure(format!("unknown variable `{name}`"), sub[0].pos()))?;
        let lo = sub[1]
            .as_atom()
            .and_then(parse_decimal_atom)
            .ok_or_else(|| structure("box lower bound must be a number", sub[1].pos()))?;
        let hi = sub[2]
            .as_atom()
            .and_then(parse_decimal_atom)
            .ok_or_else(|| structure("box upper bound must be a number", sub[2].pos()))?;
        if lo > hi {
            return Err(structure("box has lo > hi", bpos));
        }
        boxes.set(v, lo, hi);
    }

    Ok(Problem {
        space,
        partition,
        phi,
        psi,
        boxes,
    })
}

fn parse_decimal_atom(s: &str) -> Option<nlitp_poly::ratio::Rat> {
    parse_decimal(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX2: &str = r#"
(problem
  (common x y z)
  (local-a a1 b1 c1 d1)
  (local-b a2 b2 c2 d2)
  (phi (and (>= 4 - x^2 - y^2 - z^2 - a1^2 - b1^2 - c1^2 - d1^2 0)
            (>= -y^4 + 2*x^4 - a1^4 - 0.01 0)
            (>= z^2 - b1^2 - c1^2 - d1^2 - x - 1 0)))
  (psi (and (>= 4 - x^2 - y^2 - z^2 - a2^2 - b2^2 - c2^2 - d2^2 0)
            (>= x^2 - y - a2 - b2 - d2^2 - 3 0)
            (>= x 0)))
)
"#;

    #[test]
    fn parses_seven_variable_problem() {
        let p = parse_problem(EX2).unwrap();
        assert_eq!(p.partition.common.len(), 3);
        assert_eq!(p.partition.local_a.len(), 4);
        assert_eq!(p.phi.disjuncts.len(), 1);
        assert_eq!(p.phi.disjuncts[0].atoms.len(), 3);
        assert_eq!(p.psi.disjuncts[0].atoms.len(), 3);
        // side A only mentions common + local-a
        assert!(p.phi.check_side_discipline().is_ok());
    }

    #[test]
    fn strict_inequality_rejected() {
        let t = "(problem (common x) (local-a) (local-b)
                   (phi (> x 0)) (psi (>= -x 0)))";
        let e = parse_problem(t).unwrap_err();
        assert!(matches!(e, ProblemError::StrictInequality { .. }));
    }

    #[test]
    fn both_local_sides_rejected() {
        let t = "(problem (common x) (local-a y) (local-b y)
                   (phi (>= x 0)) (psi (>= -x 0)))";
        let e = parse_problem(t).unwrap_err();
        assert!(matches!(e, ProblemError::BothLocalSides(v) if v == "y"));
    }

    #[test]
    fn side_discipline_violation_rejected() {
        let t = "(problem (common x) (local-a y) (local-b z)
                   (phi (>= z 0)) (psi (>= -x 0)))";
        assert!(parse_problem(t).is_err());
    }

    #[test]
    fn equalities_expand() {
        let t = "(problem (common x) (local-a) (local-b)
                   (phi (= x 0)) (psi (>= x - 1 0)))";
        let p = parse_problem(t).unwrap();
        assert_eq!(p.phi.disjuncts[0].atoms.len(), 2);
        assert!(p.phi.disjuncts[0]
            .atoms
            .iter()
            .all(|a| a.rel == Rel::Ge0));
    }

    #[test]
    fn dnf_applied_to_nested_or() {
        let t = "(problem (common x) (local-a) (local-b)
                   (phi (and (or (>= x 0) (>= 1 - x 0)) (>= 2 - x 0)))
                   (psi (>= -x - 1 0)))";
        let p = parse_problem(t).unwrap();
        assert_eq!(p.phi.disjuncts.len(), 2);
    }

    #[test]
    fn boxes_parsed() {
        let t = "(problem (common x) (local-a) (local-b)
                   (phi (>= x 0)) (psi (>= -x 0)) (box x -2 55))";
        let p = parse_problem(t).unwrap();
        let (lo, hi) = p.boxes.get(p.partition.common[0]).unwrap();
        assert_eq!(lo, &nlitp_poly::ratio::rat_int(-2));
        assert_eq!(hi, &nlitp_poly::ratio::rat_int(55));
    }
}
