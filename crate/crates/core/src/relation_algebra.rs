//! Relations interacting with algebra operations: operation images
//! `ω(R₁,…,Rₙ)`, compatibility, tolerance flags, and the Day-term
//! construction `𝐦(R) = ⋃_i m_i(R,R,R,R)`.

use crate::algebra::{term_table, DayTermSequence, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::relation::Relation;

/// `ω(R₁,…,Rₙ) = {(ω(a⃗), ω(b⃗)) | (aᵢ,bᵢ) ∈ Rᵢ}` for a tabulated
/// operation on a finite carrier.
pub fn apply_table_to_relations(
    table: &[usize],
    arity: usize,
    n: usize,
    rels: &[&Relation],
) -> Result<Relation> {
    if rels.len() != arity {
        return Err(Error::ArityMismatch {
            symbol: "tabulated operation".into(),
            expected: arity,
            got: rels.len(),
        });
    }
    for r in rels {
        if r.carrier() != crate::relation::Carrier::Finite(n) {
            return Err(Error::CarrierMismatch {
                left: r.carrier().to_string(),
                right: format!("finite({n})"),
            });
        }
    }
    let mut out = Relation::empty(crate::relation::Carrier::Finite(n));
    if arity == 0 {
        out.insert(table[0] as i64, table[0] as i64);
        return Ok(out);
    }
    let pair_lists: Vec<Vec<(i64, i64)>> = rels.iter().map(|r| r.iter_pairs()).collect();
    if pair_lists.iter().any(|p| p.is_empty()) {
        return Ok(out);
    }
    // Odometer over one pair index per argument.
    let mut idx = vec![0usize; arity];
    loop {
        let mut ia = 0usize;
        let mut ib = 0usize;
        for (slot, &k) in idx.iter().enumerate() {
            let (a, b) = pair_lists[slot][k];
            ia = ia * n + a as usize;
            ib = ib * n + b as usize;
        }
        out.insert(table[ia] as i64, table[ib] as i64);
        let mut slot = arity;
        loop {
            if slot == 0 {
                return Ok(out);
            }
            slot -= 1;
            idx[slot] += 1;
            if idx[slot] < pair_lists[slot].len() {
                break;
            }
            idx[slot] = 0;
        }
    }
}

/// Operation image for a basic operation symbol of the algebra.
pub fn apply_op_to_relations(
    alg: &FiniteAlgebra,
    sym: &str,
    rels: &[&Relation],
) -> Result<Relation> {
    let op = alg.op(sym)?;
    apply_table_to_relations(&op.table, op.arity, alg.carrier_size, rels)
}

/// True iff `ω(R,…,R) ⊆ R` for every basic operation `ω`.
pub fn is_compatible_relation(alg: &FiniteAlgebra, r: &Relation) -> Result<bool> {
    if r.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: r.carrier().to_string(),
            right: alg.carrier().to_string(),
        });
    }
    for op in &alg.ops {
        let rels: Vec<&Relation> = std::iter::repeat_n(r, op.arity).collect();
        let image = apply_op_to_relations(alg, &op.sym, &rels)?;
        if !image.is_subset(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_congruence(alg: &FiniteAlgebra, r: &Relation) -> bool {
    r.carrier() == alg.carrier()
        && r.is_equivalence()
        && is_compatible_relation(alg, r).unwrap_or(false)
}

/// Property flags of a relation, optionally including compatibility with a
/// given algebra (the tolerance check).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationProps {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub equivalence: bool,
    /// Compatible + reflexive + symmetric, when an algebra was supplied.
    pub tolerance: Option<bool>,
}

pub fn relation_props(r: &Relation, alg: Option<&FiniteAlgebra>) -> Result<RelationProps> {
    let reflexive = r.is_reflexive();
    let symmetric = r.is_symmetric();
    let transitive = r.is_transitive();
    let tolerance = match alg {
        None => None,
        Some(a) => Some(reflexive && symmetric && is_compatible_relation(a, r)?),
    };
    Ok(RelationProps {
        reflexive,
        symmetric,
        transitive,
        equivalence: reflexive && symmetric && transitive,
        tolerance,
    })
}

/// `𝐦(R) = ⋃_i m_i(R,R,R,R)` for a Day sequence; always contains `R`.
pub fn m_of_relation(
    alg: &FiniteAlgebra,
    m: &DayTermSequence,
    r: &Relation,
) -> Result<Relation> {
    if r.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: r.carrier().to_string(),
            right: alg.carrier().to_string(),
        });
    }
    let mut out = Relation::empty(alg.carrier());
    for t in &m.terms {
        let table = term_table(alg, t, 4)?;
        let image = apply_table_to_relations(&table, 4, alg.carrier_size, &[r, r, r, r])?;
        out = out.union(&image)?;
    }
    Ok(out)
}
