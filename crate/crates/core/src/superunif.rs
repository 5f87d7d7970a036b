//! Superuniformities through the principal-filter encoding.
//!
//! On a finite carrier every filter of relations is principal, so an ideal
//! of filters is faithfully encoded by the ideal of the filters' minima
//! under the order `Fg{R} ≤ Fg{R'}` iff `R ⊆ R'`. The encoding turns the
//! finite collapse from a theorem into a representation invariant:
//! non-principal filters cannot even be constructed here.

use crate::algebra::{verify_day, DayTermSequence, FiniteAlgebra};
use crate::congruence::all_congruences;
use crate::error::{Error, Result};
use crate::filter::RelFilter;
use crate::ideal::{
    is_compatible_superequivalence, is_superequivalence, se_join, se_meet, se_permutes,
    AlgebraOps, PermutabilityReport, RelIdeal, SeAxiomReport, SuperEquivalence,
};
use crate::lattice::{lattice_of_relations, Lattice};
use crate::relation::{Carrier, Relation};
use crate::shifting::{shifting_witness_unchecked, ShiftingWitness};

pub const DEFAULT_MAX_SUPUNIF_CARRIER: usize = 4;

/// An ideal of filters of relations, stored through the principal-filter
/// encoding: each generator relation stands for its principal filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperUniformity {
    pub encoded: RelIdeal,
}

impl SuperUniformity {
    /// Wraps an encoded ideal, requiring every generator to encode a
    /// semiuniformity (reflexive, symmetric minimum) and the ideal to pass
    /// the transitivity and directedness checks under the encoding.
    pub fn new(encoded: RelIdeal) -> Result<SuperUniformity> {
        let report = su_axioms(&encoded)?;
        if !report.is_superuniformity() {
            return Err(Error::HypothesisViolation(format!(
                "encoded ideal fails superuniformity axioms: {report:?}"
            )));
        }
        Ok(SuperUniformity { encoded })
    }

    pub fn carrier(&self) -> Carrier {
        self.encoded.carrier()
    }

    pub fn member_filter(&self, f: &RelFilter) -> Result<bool> {
        self.encoded.member(f.minimum())
    }

    pub fn le(&self, other: &SuperUniformity) -> Result<bool> {
        self.encoded.le(&other.encoded)
    }
}

/// Axiom report under the encoding: SU_r is membership of `Fg{Δ}`, SU_s
/// and SU_t mirror the superequivalence checks, and the generator-encoding
/// condition demands reflexive symmetric minima (the "generated by
/// semiuniformities" characterization).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuAxiomReport {
    /// A generator whose minimum is not reflexive-symmetric, if any.
    pub encoding_witness: Option<Relation>,
    pub ideal_report: SeAxiomReport,
}

impl SuAxiomReport {
    pub fn is_superuniformity(&self) -> bool {
        self.encoding_witness.is_none() && self.ideal_report.is_superequivalence()
    }
}

pub fn su_axioms(encoded: &RelIdeal) -> Result<SuAxiomReport> {
    let encoding_witness = encoded
        .generators()
        .iter()
        .find(|g| !g.is_reflexive() || !g.is_symmetric())
        .cloned();
    Ok(SuAxiomReport {
        encoding_witness,
        ideal_report: is_superequivalence(encoded)?,
    })
}

pub fn is_superuniformity(e: &SuperUniformity) -> Result<SuAxiomReport> {
    su_axioms(&e.encoded)
}

/// `Z(ℐ) = Ig{Fg{J} | J ∈ ℐ}`: generator-preserving under the encoding.
pub fn z_map(i: &SuperEquivalence) -> Result<SuperUniformity> {
    SuperUniformity::new(i.ideal.clone())
}

pub fn su_meet(a: &SuperUniformity, b: &SuperUniformity) -> Result<SuperUniformity> {
    let (sa, sb) = (as_se(a)?, as_se(b)?);
    SuperUniformity::new(se_meet(&sa, &sb)?.ideal)
}

/// Join in `SupUnif`: `Ig∘` of the union of the ceilings, mirrored through
/// the encoding.
pub fn su_join(a: &SuperUniformity, b: &SuperUniformity) -> Result<SuperUniformity> {
    let (sa, sb) = (as_se(a)?, as_se(b)?);
    SuperUniformity::new(se_join(&sa, &sb)?.ideal)
}

pub fn su_permutes(a: &SuperUniformity, b: &SuperUniformity) -> Result<PermutabilityReport> {
    se_permutes(&as_se(a)?, &as_se(b)?)
}

fn as_se(e: &SuperUniformity) -> Result<SuperEquivalence> {
    SuperEquivalence::new(e.encoded.clone())
}

pub fn is_compatible_superuniformity(
    alg: &FiniteAlgebra,
    e: &SuperUniformity,
) -> Result<bool> {
    Ok(
        is_compatible_superequivalence(AlgebraOps::Finite(alg), &as_se(e)?)?
            .is_compatible(),
    )
}

/// Inverse image of a superuniformity along `f`, through the encoding
/// (`f⁻¹` of a principal filter is the principal filter of `f⁻¹` of the
/// minimum).
pub fn inverse_image_su(
    f: &[usize],
    source: usize,
    e: &SuperUniformity,
) -> Result<SuperUniformity> {
    let pulled = crate::ideal::inverse_image_se(f, source, &e.encoded)?;
    SuperUniformity::new(crate::ideal::seg(&pulled)?.ideal)
}

/// Shifting witness for superuniformities on principal encodings. The
/// filters' minima feed the same relation-level construction as the
/// superequivalence version, which is exactly the Z-naturality the suite
/// verifies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuShiftingWitness {
    pub w: RelFilter,
    pub y: RelFilter,
    pub holds: bool,
}

pub fn su_shifting_witness(
    alg: &FiniteAlgebra,
    m: &DayTermSequence,
    g: &RelFilter,
    f: &RelFilter,
    x: &RelFilter,
) -> Result<SuShiftingWitness> {
    if !verify_day(alg, m)?.holds() {
        return Err(Error::HypothesisViolation(
            "Day identities fail on this algebra".into(),
        ));
    }
    for (name, flt) in [("G", g), ("F", f), ("X", x)] {
        if !flt.minimum().is_reflexive() || !flt.minimum().is_symmetric() {
            return Err(Error::HypothesisViolation(format!(
                "{name} must encode a symmetric reflexive filter"
            )));
        }
    }
    let ShiftingWitness { w, y, holds } =
        shifting_witness_unchecked(alg, m, g.minimum(), f.minimum(), x.minimum())?;
    Ok(SuShiftingWitness {
        w: RelFilter::principal(w),
        y: RelFilter::principal(y),
        holds,
    })
}

/// Enumerates the lattice of compatible superuniformities through the
/// encoding and asserts it is isomorphic to the compatible-superequivalence
/// lattice (the image of the Z embedding) and to the congruence lattice.
pub fn supunif_lattice(alg: &FiniteAlgebra, max_carrier: usize) -> Result<Lattice> {
    let n = alg.carrier_size;
    if n > max_carrier {
        return Err(Error::SizeLimit {
            what: "carrier size for superuniformity lattice",
            limit: max_carrier,
            got: n,
        });
    }
    // Route 1: Z of every compatible superequivalence (principal ideals of
    // congruences under the finite collapse).
    let congruences = all_congruences(alg, max_carrier)?;
    let mut via_z: Vec<Relation> = Vec::new();
    for c in &congruences {
        let se = SuperEquivalence::principal(c.clone())?;
        let e = z_map(&se)?;
        if is_compatible_superuniformity(alg, &e)? {
            via_z.push(c.clone());
        }
    }
    // Route 2: filter all principal encodings over the partitions directly.
    let mut via_filtering: Vec<Relation> = Vec::new();
    for e in crate::lattice::all_partitions(n) {
        let ideal = RelIdeal::principal(e.clone());
        if su_axioms(&ideal)?.is_superuniformity() {
            let su = SuperUniformity { encoded: ideal };
            if is_compatible_superuniformity(alg, &su)? {
                via_filtering.push(e);
            }
        }
    }
    let mut a: Vec<String> = via_z.iter().map(|r| r.canonical_key()).collect();
    let mut b: Vec<String> = via_filtering.iter().map(|r| r.canonical_key()).collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::HypothesisViolation(
            "superuniformity enumerations disagree (Z route vs direct filtering)".into(),
        ));
    }
    lattice_of_relations(via_filtering)
}

/// Desk-scale verification of the finite collapse at carrier size `n`:
/// every filter presented by a base is principal, every generated ideal is
/// principal, every generated superequivalence is the principal ideal of
/// an equivalence, and the three lattices (partitions, compatible
/// superequivalences of the bare set, Z-images) coincide.
///
/// Exhaustive over all single and pair presentations for `n ≤ 3`
/// (two-generator collapse plus induction covers every finitely presented
/// filter/ideal); larger carriers use seeded samples via the suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseReport {
    pub carrier: usize,
    pub presentations_checked: usize,
    pub all_filters_principal: bool,
    pub all_ideals_principal: bool,
    pub all_superequivalences_principal_equivalences: bool,
    pub lattices_isomorphic: bool,
}

pub fn collapse_check(n: usize) -> Result<CollapseReport> {
    if n > 3 {
        return Err(Error::SizeLimit {
            what: "carrier size for exhaustive collapse check",
            limit: 3,
            got: n,
        });
    }
    let all_rels: Vec<Relation> = {
        let mut v = Vec::new();
        for bits in 0..(1u32 << (n * n)) {
            let mut r = Relation::empty(Carrier::Finite(n));
            for k in 0..(n * n) {
                if bits >> k & 1 == 1 {
                    r.insert((k / n) as i64, (k % n) as i64);
                }
            }
            v.push(r);
        }
        v
    };

    let mut presentations = 0usize;
    let mut all_filters_principal = true;
    let mut all_ideals_principal = true;
    let mut all_se_principal = true;

    for a in &all_rels {
        for b in &all_rels {
            presentations += 1;
            // Filter: Fg{a,b} must be the principal filter of a∩b.
            let f = RelFilter::generated(vec![a.clone(), b.clone()])?;
            all_filters_principal &= f.minimum() == &a.intersect(b)?;
            // Ideal: Ig{a,b} must be the principal ideal of a∪b.
            let i = crate::ideal::ig(Carrier::Finite(n), vec![a.clone(), b.clone()])?;
            all_ideals_principal &= i.generators() == [a.union(b)?];
        }
    }

    // Superequivalence layer: SEg(gens) = SEg of the reflexive-symmetric
    // closures of the gens, so pairs of reflexive symmetric relations
    // cover every finitely generated superequivalence on the carrier.
    let refl_sym: Vec<&Relation> = all_rels
        .iter()
        .filter(|r| r.is_reflexive() && r.is_symmetric())
        .collect();
    for a in &refl_sym {
        for b in &refl_sym {
            presentations += 1;
            let se = crate::ideal::seg(&crate::ideal::RelIdeal::from_ceiling(
                Carrier::Finite(n),
                vec![(*a).clone(), (*b).clone()],
            )?)?;
            all_se_principal &= se.ideal.generators().len() == 1
                && se.ideal.generators()[0].is_equivalence();
        }
    }

    // Lattice isomorphisms: partitions ↔ compatible superequivalences of
    // the bare set ↔ their Z images share canonical relation keys.
    let bare = crate::fixtures::bare_set(n);
    let eqv = crate::lattice::equivalence_lattice(n)?;
    let supeqv = crate::shifting::supeqv_lattice(&bare, n.max(1))?;
    let supunif = supunif_lattice(&bare, n.max(1))?;
    let lattices_isomorphic = eqv.labels == supeqv.labels && supeqv.labels == supunif.labels;

    Ok(CollapseReport {
        carrier: n,
        presentations_checked: presentations,
        all_filters_principal,
        all_ideals_principal,
        all_superequivalences_principal_equivalences: all_se_principal,
        lattices_isomorphic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn z_of_delta_ideal() {
        let se = SuperEquivalence::principal(Relation::delta(Carrier::Finite(3))).unwrap();
        let e = z_map(&se).unwrap();
        assert!(is_superuniformity(&e).unwrap().is_superuniformity());
        assert_eq!(e.encoded, se.ideal);
    }

    #[test]
    fn z_preserves_meet_and_join() {
        let parts = crate::lattice::all_partitions(4);
        for a in &parts {
            for b in &parts {
                let (sa, sb) = (
                    SuperEquivalence::principal(a.clone()).unwrap(),
                    SuperEquivalence::principal(b.clone()).unwrap(),
                );
                let (za, zb) = (z_map(&sa).unwrap(), z_map(&sb).unwrap());
                assert_eq!(
                    z_map(&se_meet(&sa, &sb).unwrap()).unwrap(),
                    su_meet(&za, &zb).unwrap()
                );
                assert_eq!(
                    z_map(&se_join(&sa, &sb).unwrap()).unwrap(),
                    su_join(&za, &zb).unwrap()
                );
            }
        }
    }

    #[test]
    fn z_injective_on_collapsed_domain() {
        let parts = crate::lattice::all_partitions(4);
        let images: Vec<SuperUniformity> = parts
            .iter()
            .map(|p| z_map(&SuperEquivalence::principal(p.clone()).unwrap()).unwrap())
            .collect();
        for (i, a) in images.iter().enumerate() {
            for (j, b) in images.iter().enumerate() {
                assert_eq!(a == b, i == j);
            }
        }
    }

    #[test]
    fn su_join_idempotent() {
        let e = z_map(&SuperEquivalence::principal(fixtures::mod_congruence(4, 2)).unwrap())
            .unwrap();
        assert_eq!(su_join(&e, &e).unwrap(), e);
    }

    #[test]
    fn encoding_rejects_non_semiuniformity_generators() {
        let nonsym = Relation::from_pairs(Carrier::Finite(3), &[(0, 1)])
            .unwrap()
            .union(&Relation::delta(Carrier::Finite(3)))
            .unwrap();
        let report = su_axioms(&RelIdeal::principal(nonsym)).unwrap();
        assert!(report.encoding_witness.is_some());
        assert!(!report.is_superuniformity());
    }

    #[test]
    fn onto_projection_join_preservation() {
        let pi: Vec<usize> = vec![0, 1, 0, 1];
        let parts = crate::lattice::all_partitions(2);
        for a in &parts {
            for b in &parts {
                let ea = z_map(&SuperEquivalence::principal(a.clone()).unwrap()).unwrap();
                let eb = z_map(&SuperEquivalence::principal(b.clone()).unwrap()).unwrap();
                let lhs = inverse_image_su(&pi, 4, &su_join(&ea, &eb).unwrap()).unwrap();
                let rhs = su_join(
                    &inverse_image_su(&pi, 4, &ea).unwrap(),
                    &inverse_image_su(&pi, 4, &eb).unwrap(),
                )
                .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn supunif_z4_is_3_chain() {
        let z4 = fixtures::cyclic_group(4);
        let lat = supunif_lattice(&z4, 4).unwrap();
        assert_eq!(lat.len(), 3);
        assert!(crate::lattice::check_modular(&lat).modular);
        // Isomorphic to Con(ℤ₄) via Z of principal-congruence ideals.
        let con = crate::congruence::congruence_lattice(&z4, 4).unwrap();
        assert_eq!(lat.labels, con.labels);
    }

    #[test]
    fn supunif_bare4_is_pi4() {
        let bare = fixtures::bare_set(4);
        let lat = supunif_lattice(&bare, 4).unwrap();
        assert_eq!(lat.len(), 15);
        assert!(!crate::lattice::check_modular(&lat).modular);
    }

    #[test]
    fn collapse_check_small() {
        for n in 1..=3 {
            let rep = collapse_check(n).unwrap();
            assert!(rep.all_filters_principal);
            assert!(rep.all_ideals_principal);
            assert!(rep.all_superequivalences_principal_equivalences);
            assert!(rep.lattices_isomorphic);
        }
        assert!(collapse_check(4).is_err());
    }

    #[test]
    fn su_shifting_mirrors_se_shifting() {
        let alg = fixtures::cyclic_group(4);
        let p = crate::term::Term::parse("(add x0 (add (neg x1) x2))").unwrap();
        let m = crate::algebra::derive_day_from_maltsev(&p).unwrap();
        let g = fixtures::mod_congruence(4, 2);
        let f = Relation::full(4);
        let x = fixtures::mod_congruence(4, 2);

        let se_w = crate::shifting::shifting_witness(&alg, &m, &g, &f, &x).unwrap();
        let su_w = su_shifting_witness(
            &alg,
            &m,
            &RelFilter::principal(g),
            &RelFilter::principal(f),
            &RelFilter::principal(x),
        )
        .unwrap();
        assert!(su_w.holds);
        assert_eq!(su_w.w.minimum(), &se_w.w);
        assert_eq!(su_w.y.minimum(), &se_w.y);
    }

    #[test]
    fn trivial_su_shifting_all_deltas() {
        let alg = fixtures::cyclic_group(4);
        let p = crate::term::Term::parse("(add x0 (add (neg x1) x2))").unwrap();
        let m = crate::algebra::derive_day_from_maltsev(&p).unwrap();
        let d = RelFilter::principal(Relation::delta(Carrier::Finite(4)));
        let w = su_shifting_witness(&alg, &m, &d, &d, &d).unwrap();
        assert!(w.holds);
        assert_eq!(w.w.minimum(), &Relation::delta(Carrier::Finite(4)));
        assert_eq!(w.y.minimum(), &Relation::delta(Carrier::Finite(4)));
    }
}
