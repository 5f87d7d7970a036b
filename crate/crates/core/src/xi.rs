//! The canonical non-principal superequivalence on the integer line:
//! the ideal generated (under composition) by all reflexive symmetric
//! relations relating only finitely many off-diagonal pairs.

use crate::error::Result;
use crate::ideal::{ig_circ, is_superequivalence, RelIdeal, SeAxiomReport, SuperEquivalence};
use crate::relation::{Carrier, Relation};

/// Membership test. Every representable integer-line relation has a finite
/// off-diagonal pair set, so it is dominated by its own reflexive-symmetric
/// closure, which lies in the generating family; one closure step is the
/// whole reachability argument.
pub fn xi_contains(r: &Relation) -> bool {
    r.carrier() == Carrier::IntLine
}

/// The relation that dominates `r` inside the generating family.
pub fn xi_dominating_generator(r: &Relation) -> Relation {
    r.refl_sym_closure()
}

/// Non-principality witness: a relation in the structure that is not below
/// `r` — add a fresh symmetric pair just beyond `r`'s support.
pub fn xi_nonprincipality_witness(r: &Relation) -> Result<Relation> {
    let fresh = r.support().iter().max().copied().unwrap_or(0) + 1;
    let mut w = Relation::delta(Carrier::IntLine);
    w.insert(fresh, fresh + 1);
    w.insert(fresh + 1, fresh);
    debug_assert!(xi_contains(&w));
    debug_assert!(!w.is_subset(r)?);
    Ok(w)
}

/// The explicit ceiling of the structure restricted to generators with
/// support inside `[-w, w]`: the composition closure of the single-step
/// neighbour relations, computed by fixpoint.
pub fn xi_window(w: i64) -> Result<SuperEquivalence> {
    let mut gens = Vec::new();
    for i in -w..w {
        let mut g = Relation::delta(Carrier::IntLine);
        g.insert(i, i + 1);
        g.insert(i + 1, i);
        gens.push(g);
    }
    if gens.is_empty() {
        gens.push(Relation::delta(Carrier::IntLine));
    }
    SuperEquivalence::new(ig_circ(Carrier::IntLine, gens)?)
}

/// Axiom report for a finite window of the structure, plus spot checks of
/// the lazy rule on sampled members: compositions and opposites of members
/// stay members, and Δ is a member.
pub fn xi_axiom_report(window: i64) -> Result<SeAxiomReport> {
    is_superequivalence(&xi_window(window)?.ideal)
}

/// A sample of members used by the lazy-rule checks.
pub fn xi_sample_members() -> Vec<Relation> {
    let mut out = vec![Relation::delta(Carrier::IntLine)];
    for (a, b) in [(0, 1), (-3, 2), (5, 9)] {
        let mut r = Relation::delta(Carrier::IntLine);
        r.insert(a, b);
        r.insert(b, a);
        out.push(r);
    }
    let mut big = Relation::delta(Carrier::IntLine);
    for (a, b) in [(0, 1), (1, 2), (2, 3), (-1, -5)] {
        big.insert(a, b);
        big.insert(b, a);
    }
    out.push(big);
    out
}

/// The ideal `{R : support(R) ⊆ [-w,w]}`-restricted structure as a plain
/// RelIdeal, for serialization.
pub fn xi_window_ideal(w: i64) -> Result<RelIdeal> {
    Ok(xi_window(w)?.ideal)
}
