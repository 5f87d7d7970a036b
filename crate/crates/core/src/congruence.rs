//! Principal congruence generation and congruence lattices.

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::lattice::{lattice_of_relations, Lattice};
use crate::relation::Relation;
use crate::relation_algebra::apply_op_to_relations;

pub const DEFAULT_MAX_CON_CARRIER: usize = 6;

/// Closes a relation to a congruence: fixpoint under reflexivity,
/// symmetry, transitivity, and all unary polynomial translations (each
/// basic operation applied with all but one argument frozen).
pub fn congruence_closure(alg: &FiniteAlgebra, seed: &Relation) -> Result<Relation> {
    if seed.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: seed.carrier().to_string(),
            right: alg.carrier().to_string(),
        });
    }
    let n = alg.carrier_size;
    let mut cur = seed.equivalence_closure();
    loop {
        let mut next = cur.clone();
        for op in &alg.ops {
            if op.arity == 0 {
                continue;
            }
            // Freeze all arguments except position j to single values.
            for j in 0..op.arity {
                let frozen_slots = op.arity - 1;
                let count = n.pow(frozen_slots as u32);
                for mask in 0..count {
                    let mut rest = mask;
                    let mut args: Vec<Relation> = Vec::with_capacity(op.arity);
                    for slot in 0..op.arity {
                        if slot == j {
                            args.push(cur.clone());
                        } else {
                            let c = rest % n;
                            rest /= n;
                            let mut single = Relation::empty(alg.carrier());
                            single.insert(c as i64, c as i64);
                            args.push(single);
                        }
                    }
                    let arg_refs: Vec<&Relation> = args.iter().collect();
                    let image = apply_op_to_relations(alg, &op.sym, &arg_refs)?;
                    next = next.union(&image)?;
                }
            }
        }
        next = next.equivalence_closure();
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `Cg(a,b)`: the least congruence relating `a` and `b`.
pub fn principal_congruence(alg: &FiniteAlgebra, a: usize, b: usize) -> Result<Relation> {
    let n = alg.carrier_size;
    for v in [a, b] {
        if v >= n {
            return Err(Error::OutOfRange { value: v, carrier: n });
        }
    }
    let mut seed = Relation::empty(alg.carrier());
    seed.insert(a as i64, b as i64);
    congruence_closure(alg, &seed)
}

/// All congruences of the algebra: principal congruences closed under
/// join (join of congruences = transitive closure of union).
pub fn all_congruences(alg: &FiniteAlgebra, max_carrier: usize) -> Result<Vec<Relation>> {
    let n = alg.carrier_size;
    if n > max_carrier {
        return Err(Error::SizeLimit {
            what: "carrier size for congruence lattice",
            limit: max_carrier,
            got: n,
        });
    }
    let mut set: std::collections::BTreeSet<Relation> = std::collections::BTreeSet::new();
    set.insert(Relation::delta(alg.carrier()));
    for a in 0..n {
        for b in 0..n {
            set.insert(principal_congruence(alg, a, b)?);
        }
    }
    loop {
        let mut added = false;
        let snapshot: Vec<Relation> = set.iter().cloned().collect();
        for x in &snapshot {
            for y in &snapshot {
                let joined = x.union(y)?.transitive_closure();
                if !set.contains(&joined) {
                    set.insert(joined);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(set.into_iter().collect());
        }
    }
}

/// The congruence lattice `Con A`, ordered by inclusion. Meets are
/// intersections and joins are transitive closures of unions; both are
/// re-derived by the lattice constructor from the order and cross-checked
/// in tests against the direct computations.
pub fn congruence_lattice(alg: &FiniteAlgebra, max_carrier: usize) -> Result<Lattice> {
    lattice_of_relations(all_congruences(alg, max_carrier)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::lattice::{all_partitions, check_modular};
    use crate::relation::Carrier;
    use crate::relation_algebra::is_compatible_relation;

    /// Oracle: all congruences by exhaustive filtering of all partitions.
    fn congruences_by_partition_filter(alg: &FiniteAlgebra) -> Vec<Relation> {
        all_partitions(alg.carrier_size)
            .into_iter()
            .filter(|r| is_compatible_relation(alg, r).unwrap())
            .collect()
    }

    #[test]
    fn cg_of_diagonal_pair_is_delta() {
        let z4 = fixtures::cyclic_group(4);
        assert_eq!(
            principal_congruence(&z4, 0, 0).unwrap(),
            Relation::delta(Carrier::Finite(4))
        );
    }

    #[test]
    fn cg_on_z4_matches_exhaustive_search() {
        let z4 = fixtures::cyclic_group(4);
        // Oracle: least compatible partition containing the pair.
        let oracle = |a: i64, b: i64| {
            congruences_by_partition_filter(&z4)
                .into_iter()
                .filter(|r| r.contains(a, b))
                .min_by_key(|r| r.pair_count())
                .unwrap()
        };
        assert_eq!(principal_congruence(&z4, 0, 2).unwrap(), oracle(0, 2));
        assert_eq!(
            principal_congruence(&z4, 0, 2).unwrap(),
            fixtures::mod_congruence(4, 2)
        );
        assert_eq!(principal_congruence(&z4, 0, 1).unwrap(), Relation::full(4));
    }

    #[test]
    fn con_z6_is_divisor_lattice() {
        let z6 = fixtures::cyclic_group(6);
        let cons = all_congruences(&z6, 6).unwrap();
        assert_eq!(cons.len(), 4);
        let oracle = congruences_by_partition_filter(&z6);
        assert_eq!(oracle.len(), 4);
        let mut a: Vec<_> = cons.iter().map(|r| r.canonical_key()).collect();
        let mut b: Vec<_> = oracle.iter().map(|r| r.canonical_key()).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);

        let lat = congruence_lattice(&z6, 6).unwrap();
        assert!(check_modular(&lat).modular);
    }

    #[test]
    fn con_one_element_algebra() {
        let one = fixtures::cyclic_group(1);
        assert_eq!(congruence_lattice(&one, 6).unwrap().len(), 1);
    }

    #[test]
    fn con_bare_3_set_is_pi3() {
        let bare = fixtures::bare_set(3);
        let lat = congruence_lattice(&bare, 6).unwrap();
        assert_eq!(lat.len(), 5, "Bell(3) = 5");
    }

    #[test]
    fn join_computed_two_ways_agrees() {
        // Transitive closure of union vs closure under principal joins.
        let z6 = fixtures::cyclic_group(6);
        let cons = all_congruences(&z6, 6).unwrap();
        for x in &cons {
            for y in &cons {
                let direct = x.union(y).unwrap().transitive_closure();
                let via_principals = {
                    let mut acc = Relation::delta(Carrier::Finite(6));
                    for (a, b) in x.iter_pairs().into_iter().chain(y.iter_pairs()) {
                        let pc = principal_congruence(&z6, a as usize, b as usize).unwrap();
                        acc = acc.union(&pc).unwrap().transitive_closure();
                    }
                    acc
                };
                assert_eq!(direct, via_principals);
            }
        }
    }

    #[test]
    fn size_bound_enforced() {
        let z8 = fixtures::cyclic_group(8);
        assert!(matches!(
            congruence_lattice(&z8, 6),
            Err(Error::SizeLimit { .. })
        ));
        assert!(congruence_lattice(&z8, 8).is_ok());
    }

    #[test]
    fn cm_samples_have_modular_con() {
        for alg in fixtures::cm_algebras() {
            let lat = congruence_lattice(&alg, 8).unwrap();
            assert!(check_modular(&lat).modular, "{} should be modular", alg.name);
        }
    }

    #[test]
    fn bare_4_con_is_pi4_non_modular() {
        let bare = fixtures::bare_set(4);
        let lat = congruence_lattice(&bare, 6).unwrap();
        assert_eq!(lat.len(), 15);
        assert!(!check_modular(&lat).modular);
    }
}
