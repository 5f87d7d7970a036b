//! Filters of relations, (semi)uniformity axioms, Weber's generation
//! formula at bounded depth, and compatible uniformities.
//!
//! Filters are ordered by *reverse* inclusion, so the discrete uniformity
//! `Fg{Δ}` is the bottom and `Fg{full}` the top, mirroring congruences.
//! Worked 2-element example fixing the conventions: on `{0,1}` with
//! `F = Fg{Δ}` and `G = Fg{full}`, the meet `F∧G = Fg(F∪G)` has minimum
//! `Δ ∩ full = Δ` (so `F∧G = F`), and the join `F∨G = F∩G` has minimum
//! `Δ ∪ full = full` (so `F∨G = G`) — meets intersect minima, joins union
//! them, exactly as congruence meet/join behave on the relations.

use itertools::Itertools;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::relation::{Carrier, Relation};
use crate::relation_algebra::apply_op_to_relations;

pub const DEFAULT_WEBER_DEPTH: usize = 3;
pub const MAX_WEBER_DEPTH: usize = 5;

/// A filter of relations presented by a finite base. A finite base always
/// generates a principal filter (all relations above the intersection of
/// the base), so the canonical minimum determines the filter.
#[derive(Debug, Clone)]
pub struct RelFilter {
    carrier: Carrier,
    base: Vec<Relation>,
    minimum: Relation,
}

impl PartialEq for RelFilter {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.minimum == other.minimum
    }
}

impl Eq for RelFilter {}

impl RelFilter {
    /// `Fg`: the filter generated by a nonempty family. The total
    /// intersection is adjoined so the stored base satisfies the
    /// filter-base law.
    pub fn generated(base: Vec<Relation>) -> Result<RelFilter> {
        let Some(first) = base.first() else {
            return Err(Error::EmptyBase);
        };
        let carrier = first.carrier();
        let mut minimum = first.clone();
        for r in &base {
            minimum = minimum.intersect(r)?;
        }
        let mut full_base = base;
        if !full_base.contains(&minimum) {
            full_base.push(minimum.clone());
        }
        Ok(RelFilter {
            carrier,
            base: full_base,
            minimum,
        })
    }

    pub fn principal(r: Relation) -> RelFilter {
        RelFilter {
            carrier: r.carrier(),
            base: vec![r.clone()],
            minimum: r,
        }
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn base(&self) -> &[Relation] {
        &self.base
    }

    pub fn minimum(&self) -> &Relation {
        &self.minimum
    }

    pub fn member(&self, r: &Relation) -> Result<bool> {
        self.minimum.is_subset(r)
    }

    /// Order inherited from reverse inclusion: `F ≤ G` iff `F ⊇ G` iff
    /// `min F ⊆ min G`.
    pub fn le(&self, other: &RelFilter) -> Result<bool> {
        self.minimum.is_subset(&other.minimum)
    }

    pub fn opposite(&self) -> RelFilter {
        RelFilter {
            carrier: self.carrier,
            base: self.base.iter().map(Relation::opposite).collect(),
            minimum: self.minimum.opposite(),
        }
    }
}

/// Composition of filters: base of pairwise compositions.
pub fn filter_compose(f: &RelFilter, g: &RelFilter) -> Result<RelFilter> {
    let mut base = Vec::new();
    for u in f.base() {
        for v in g.base() {
            base.push(u.compose(v)?);
        }
    }
    RelFilter::generated(base)
}

/// Meet (reverse-inclusion order): `Fg` of the union of the bases.
pub fn filter_meet(f: &RelFilter, g: &RelFilter) -> Result<RelFilter> {
    let mut base = f.base().to_vec();
    base.extend(g.base().iter().cloned());
    RelFilter::generated(base)
}

/// Join (reverse-inclusion order): intersection of the filters, which for
/// principal filters is the filter of the union of the minima.
pub fn filter_join(f: &RelFilter, g: &RelFilter) -> Result<RelFilter> {
    Ok(RelFilter::principal(f.minimum().union(g.minimum())?))
}

/// Per-axiom verdicts for a filter. A filter of relations is reflexive
/// when every member is (equivalently, the minimum is), symmetric when it
/// equals its opposite, and transitive when some member's square refines
/// each member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterAxiomReport {
    pub u_r: bool,
    pub u_s: bool,
    /// Witness: the member with no square-refinement below it.
    pub u_t_witness: Option<Relation>,
}

impl FilterAxiomReport {
    pub fn is_semiuniformity(&self) -> bool {
        self.u_r && self.u_s
    }

    pub fn is_uniformity(&self) -> bool {
        self.is_semiuniformity() && self.u_t_witness.is_none()
    }
}

pub fn filter_axioms(f: &RelFilter) -> FilterAxiomReport {
    let min = f.minimum();
    let u_r = min.is_reflexive();
    let u_s = min.is_symmetric();
    // Principal filter: a V with V∘V ⊆ min exists iff min∘min ⊆ min.
    let u_t_witness = match min.compose(min) {
        Ok(sq) if sq.is_subset(min).unwrap_or(false) => None,
        _ => Some(min.clone()),
    };
    FilterAxiomReport {
        u_r,
        u_s,
        u_t_witness,
    }
}

pub fn is_semiuniformity(f: &RelFilter) -> bool {
    filter_axioms(f).is_semiuniformity()
}

pub fn is_uniformity(f: &RelFilter) -> bool {
    filter_axioms(f).is_uniformity()
}

/// Verdicts for a raw family: the filter-base law plus the three
/// uniformity-base conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseCheckReport {
    /// Witness pair with no base element below the intersection.
    pub base_law_witness: Option<(Relation, Relation)>,
    /// BU_r witness: a base element missing the diagonal.
    pub bu_r_witness: Option<Relation>,
    /// BU_s witness: a base element with no opposite-refinement.
    pub bu_s_witness: Option<Relation>,
    /// BU_t witness: a base element with no square-refinement.
    pub bu_t_witness: Option<Relation>,
}

impl BaseCheckReport {
    pub fn is_uniformity_base(&self) -> bool {
        self.base_law_witness.is_none()
            && self.bu_r_witness.is_none()
            && self.bu_s_witness.is_none()
            && self.bu_t_witness.is_none()
    }
}

pub fn base_check(base: &[Relation]) -> Result<BaseCheckReport> {
    if base.is_empty() {
        return Err(Error::EmptyBase);
    }
    let mut base_law_witness = None;
    'law: for u in base {
        for v in base {
            let cap = u.intersect(v)?;
            if !base.iter().any(|w| w.is_subset(&cap).unwrap_or(false)) {
                base_law_witness = Some((u.clone(), v.clone()));
                break 'law;
            }
        }
    }
    let delta = Relation::delta(base[0].carrier());
    let bu_r_witness = base
        .iter()
        .find(|u| !delta.is_subset(u).unwrap_or(false))
        .cloned();
    let mut bu_s_witness = None;
    for u in base {
        if !base
            .iter()
            .any(|v| v.opposite().is_subset(u).unwrap_or(false))
        {
            bu_s_witness = Some(u.clone());
            break;
        }
    }
    let mut bu_t_witness = None;
    for u in base {
        let mut found = false;
        for v in base {
            if let Ok(sq) = v.compose(v) {
                if sq.is_subset(u)? {
                    found = true;
                    break;
                }
            }
        }
        if !found {
            bu_t_witness = Some(u.clone());
            break;
        }
    }
    Ok(BaseCheckReport {
        base_law_witness,
        bu_r_witness,
        bu_s_witness,
        bu_t_witness,
    })
}

/// Truncated Weber bracket: the union over `n ≤ depth` and all
/// permutations `γ` of `{1..n}` of the chains `U_{γ(1)}∘…∘U_{γ(n)}`.
pub fn weber_bracket(seq: &[Relation], depth: usize) -> Result<Relation> {
    if depth == 0 || depth > MAX_WEBER_DEPTH {
        return Err(Error::SizeLimit {
            what: "weber bracket depth",
            limit: MAX_WEBER_DEPTH,
            got: depth,
        });
    }
    if seq.len() < depth {
        return Err(Error::SizeLimit {
            what: "weber bracket sequence length (need one relation per level)",
            limit: depth,
            got: seq.len(),
        });
    }
    let carrier = seq[0].carrier();
    let mut out = Relation::empty(carrier);
    for n in 1..=depth {
        for perm in (0..n).permutations(n) {
            let mut chain = seq[perm[0]].clone();
            for &k in &perm[1..] {
                chain = chain.compose(&seq[k])?;
            }
            out = out.union(&chain)?;
        }
    }
    Ok(out)
}

/// `Ug` of a semiuniformity on a finite carrier: the exact least
/// uniformity above it (computed by fixpoint) together with the Weber
/// truncation at the requested depth, which must refine it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UgReport {
    pub exact: RelFilter,
    pub truncation: Relation,
    pub truncation_contained: bool,
}

pub fn ug_of_semiuniformity(s: &RelFilter, depth: usize) -> Result<UgReport> {
    let report = filter_axioms(s);
    if !report.is_semiuniformity() {
        return Err(Error::HypothesisViolation(
            "Ug formula requires a semiuniformity (reflexive, symmetric filter)".into(),
        ));
    }
    // Least uniformity above a principal semiuniformity: fixpoint of the
    // minimum under composition (it is already reflexive and symmetric).
    let mut min = s.minimum().clone();
    loop {
        let next = min.union(&min.compose(&min)?)?;
        if next == min {
            break;
        }
        min = next;
    }
    let exact = RelFilter::principal(min);
    let seq = vec![s.minimum().clone(); depth];
    let truncation = weber_bracket(&seq, depth)?;
    let truncation_contained = truncation.is_subset(exact.minimum())?;
    Ok(UgReport {
        exact,
        truncation,
        truncation_contained,
    })
}

/// Join of uniformities by the generation formula `⋁ 𝒰ᵢ = Ug(⋂ 𝒰ᵢ)`,
/// cross-checked against an independent route (connected components of
/// the union graph via union-find); disagreement is an error, not a
/// tolerated state.
pub fn uniformity_join(u: &RelFilter, v: &RelFilter) -> Result<RelFilter> {
    let via_formula = ug_of_semiuniformity(&filter_join(u, v)?, 1)?.exact;
    let Carrier::Finite(n) = u.carrier() else {
        return Ok(via_formula);
    };
    let both = u.minimum().union(v.minimum())?;
    let via_components = components_closure(n, &both);
    if &via_components != via_formula.minimum() {
        return Err(Error::HypothesisViolation(
            "uniformity join: Ug(⋂) formula and component search disagree".into(),
        ));
    }
    Ok(via_formula)
}

/// Least equivalence containing a symmetric relation, by union-find over
/// the pair graph. Independent of the composition-based closure.
fn components_closure(n: usize, r: &Relation) -> Relation {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in r.iter_pairs() {
        let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
        parent[ra] = rb;
    }
    let mut out = Relation::empty(Carrier::Finite(n));
    for a in 0..n {
        for b in 0..n {
            if find(&mut parent, a) == find(&mut parent, b) {
                out.insert(a as i64, b as i64);
            }
        }
    }
    out
}

/// Compatibility verdict for a uniformity on a finite algebra. Two routes
/// are computed and compared: the principal-minimum check
/// `ω(U₀,…,U₀) ⊆ U₀`, and a search for some base element `Ū` with
/// `ω(Ū,…,Ū) ⊆ U₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnifCompatReport {
    pub compatible: bool,
    /// The operation that failed, when incompatible.
    pub witness_op: Option<String>,
}

pub fn is_compatible_uniformity(alg: &FiniteAlgebra, u: &RelFilter) -> Result<UnifCompatReport> {
    if u.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: u.carrier().to_string(),
            right: alg.carrier().to_string(),
        });
    }
    let min = u.minimum();
    for op in &alg.ops {
        let rels: Vec<&Relation> = std::iter::repeat_n(min, op.arity).collect();
        let principal_route = apply_op_to_relations(alg, &op.sym, &rels)?
            .is_subset(min)?;
        let mut search_route = false;
        for cand in u.base() {
            let rels: Vec<&Relation> = std::iter::repeat_n(cand, op.arity).collect();
            if apply_op_to_relations(alg, &op.sym, &rels)?.is_subset(min)? {
                search_route = true;
                break;
            }
        }
        if principal_route != search_route {
            return Err(Error::HypothesisViolation(format!(
                "compatibility routes disagree on {}",
                op.sym
            )));
        }
        if !principal_route {
            return Ok(UnifCompatReport {
                compatible: false,
                witness_op: Some(op.sym.clone()),
            });
        }
    }
    Ok(UnifCompatReport {
        compatible: true,
        witness_op: None,
    })
}

/// Permutability of uniformities together with the join-equals-composition
/// equivalence, both evaluated on the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnifPermutabilityReport {
    pub permutes: bool,
    pub join_equals_composition: bool,
}

impl UnifPermutabilityReport {
    pub fn iff_holds(&self) -> bool {
        self.permutes == self.join_equals_composition
    }
}

pub fn unif_permutes(u: &RelFilter, v: &RelFilter) -> Result<UnifPermutabilityReport> {
    let uv = filter_compose(u, v)?;
    let vu = filter_compose(v, u)?;
    let permutes = uv == vu;
    let join = uniformity_join(u, v)?;
    let join_equals_composition = join == uv;
    Ok(UnifPermutabilityReport {
        permutes,
        join_equals_composition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn fin(n: usize, pairs: &[(i64, i64)]) -> Relation {
        Relation::from_pairs(Carrier::Finite(n), pairs).unwrap()
    }

    #[test]
    fn fg_delta_composition_is_identity() {
        let d = RelFilter::principal(Relation::delta(Carrier::Finite(3)));
        let f = RelFilter::principal(fin(3, &[(0, 1)]).refl_sym_closure());
        assert_eq!(filter_compose(&d, &f).unwrap(), f);
        assert_eq!(filter_compose(&f, &d).unwrap(), f);
    }

    #[test]
    fn filter_meet_idempotent() {
        let f = RelFilter::principal(fixtures::mod_congruence(4, 2));
        assert_eq!(filter_meet(&f, &f).unwrap(), f);
    }

    #[test]
    fn compose_minimum_is_compose_of_minimums() {
        // Exhaustive over small 2-element bases on Finite(3).
        let rels: Vec<Relation> = (0..32u32)
            .map(|bits| {
                let mut r = Relation::delta(Carrier::Finite(3));
                for k in 0..5 {
                    if bits >> k & 1 == 1 {
                        r.insert((k / 3) as i64, ((k + 1) % 3) as i64);
                    }
                }
                r
            })
            .collect();
        for a in &rels {
            for b in &rels {
                let f = RelFilter::generated(vec![a.clone(), b.clone()]).unwrap();
                for c in rels.iter().take(8) {
                    let g = RelFilter::principal(c.clone());
                    let composed = filter_compose(&f, &g).unwrap();
                    assert_eq!(
                        composed.minimum(),
                        &f.minimum().compose(g.minimum()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn axiom_reports() {
        let cong = RelFilter::principal(fixtures::mod_congruence(4, 2));
        assert!(is_uniformity(&cong));

        // Reflexive symmetric non-transitive on Finite(3).
        let r = fin(3, &[(0, 1), (1, 0), (1, 2), (2, 1)]).refl_sym_closure();
        let f = RelFilter::principal(r);
        let rep = filter_axioms(&f);
        assert!(rep.is_semiuniformity());
        assert!(!rep.is_uniformity());
        assert!(rep.u_t_witness.is_some());

        assert!(is_uniformity(&RelFilter::principal(Relation::delta(
            Carrier::Finite(3)
        ))));
    }

    #[test]
    fn base_check_verdicts() {
        let d = Relation::delta(Carrier::Finite(3));
        let rep = base_check(&[d.clone()]).unwrap();
        assert!(rep.is_uniformity_base());

        let bad = fin(3, &[(0, 1)]);
        let rep = base_check(&[bad]).unwrap();
        assert!(rep.bu_r_witness.is_some());
        assert!(rep.bu_s_witness.is_some());

        // Base law violation: two incomparable minima without their meet.
        let r1 = fin(3, &[(0, 1)]).union(&d).unwrap();
        let r2 = fin(3, &[(1, 2)]).union(&d).unwrap();
        let rep = base_check(&[r1, r2]).unwrap();
        assert!(rep.base_law_witness.is_some());
    }

    #[test]
    fn weber_bracket_definition_unfolding() {
        let v = fin(4, &[(0, 1)]).refl_sym_closure();
        let b2 = weber_bracket(&[v.clone(), v.clone()], 2).unwrap();
        assert_eq!(b2, v.union(&v.compose(&v).unwrap()).unwrap());

        let b1 = weber_bracket(&[v.clone()], 1).unwrap();
        assert_eq!(b1, v);
    }

    #[test]
    fn weber_depth_guard() {
        let v = Relation::delta(Carrier::Finite(2));
        assert!(weber_bracket(&vec![v.clone(); 6], 6).is_err());
        assert!(weber_bracket(&[v], 0).is_err());
    }

    #[test]
    fn weber_symmetry_step() {
        // Bracket of the opposites, opposed, refines the original bracket
        // for symmetric-closed seeds.
        let seeds = [
            fin(4, &[(0, 1), (2, 3)]).refl_sym_closure(),
            fin(4, &[(1, 2)]).refl_sym_closure(),
            fin(4, &[(0, 3), (1, 3)]).refl_sym_closure(),
        ];
        let ops: Vec<Relation> = seeds.iter().map(Relation::opposite).collect();
        for depth in 1..=3 {
            let b = weber_bracket(&seeds, depth).unwrap();
            let bop = weber_bracket(&ops, depth).unwrap().opposite();
            assert!(bop.is_subset(&b).unwrap());
        }
    }

    #[test]
    fn ug_examples() {
        // Already a uniformity: Ug S = S.
        let cong = RelFilter::principal(fixtures::mod_congruence(4, 2));
        let rep = ug_of_semiuniformity(&cong, 2).unwrap();
        assert_eq!(rep.exact, cong);
        assert!(rep.truncation_contained);

        // Reflexive symmetric R on Finite(3): Ug = transitive closure.
        let r = fin(3, &[(0, 1), (1, 0)]).refl_sym_closure();
        let rep = ug_of_semiuniformity(&RelFilter::principal(r.clone()), 3).unwrap();
        assert_eq!(rep.exact.minimum(), &r.transitive_closure());
        assert!(rep.truncation_contained);
    }

    #[test]
    fn ug_truncations_monotone_in_depth() {
        let r = fin(4, &[(0, 1), (1, 2), (2, 3)]).refl_sym_closure();
        let f = RelFilter::principal(r);
        let mut prev = Relation::empty(Carrier::Finite(4));
        for depth in 1..=4 {
            let rep = ug_of_semiuniformity(&f, depth).unwrap();
            assert!(prev.is_subset(&rep.truncation).unwrap());
            assert!(rep.truncation_contained);
            prev = rep.truncation;
        }
    }

    #[test]
    fn compatible_uniformity_verdicts() {
        let z4 = fixtures::cyclic_group(4);
        let cong = RelFilter::principal(fixtures::mod_congruence(4, 2));
        assert!(is_compatible_uniformity(&z4, &cong).unwrap().compatible);

        let discrete = RelFilter::principal(Relation::delta(Carrier::Finite(4)));
        assert!(is_compatible_uniformity(&z4, &discrete).unwrap().compatible);

        // A non-compatible tolerance on ℤ₄.
        let tol = fin(4, &[(0, 1), (1, 0)]).refl_sym_closure();
        let rep = is_compatible_uniformity(&z4, &RelFilter::principal(tol)).unwrap();
        assert!(!rep.compatible);
        assert_eq!(rep.witness_op.as_deref(), Some("add"));
    }

    #[test]
    fn permutability_on_z12_and_pi4() {
        let z12 = fixtures::cyclic_group(12);
        let congs = crate::congruence::all_congruences(&z12, 12).unwrap();
        for a in &congs {
            for b in &congs {
                let rep = unif_permutes(
                    &RelFilter::principal(a.clone()),
                    &RelFilter::principal(b.clone()),
                )
                .unwrap();
                assert!(rep.permutes && rep.join_equals_composition);
            }
        }

        let e1 = RelFilter::principal(fixtures::partition_relation(4, &[&[0, 1]]));
        let e2 = RelFilter::principal(fixtures::partition_relation(4, &[&[1, 2]]));
        let rep = unif_permutes(&e1, &e2).unwrap();
        assert!(!rep.permutes && !rep.join_equals_composition && rep.iff_holds());
    }

    #[test]
    fn self_permutes() {
        let f = RelFilter::principal(fixtures::mod_congruence(4, 2));
        let rep = unif_permutes(&f, &f).unwrap();
        assert!(rep.permutes && rep.join_equals_composition);
    }

    #[test]
    fn relations_lemma_on_z4() {
        // w(F₁,…,Fⱼ∘F′,…,Fₙ) ≤ w(F₁,…,Fₙ) ∘ w(Δ,…,F′,…,Δ) at the level of
        // principal-filter minima, for every basic operation of ℤ₄ over a
        // deterministic family of reflexive relations.
        use crate::relation_algebra::apply_op_to_relations;
        let z4 = fixtures::cyclic_group(4);
        let family: Vec<Relation> = vec![
            Relation::delta(Carrier::Finite(4)),
            fixtures::mod_congruence(4, 2),
            Relation::full(4),
            fin(4, &[(0, 1), (1, 0)]).refl_sym_closure(),
            fin(4, &[(1, 3)]).refl_sym_closure(),
        ];
        let delta = Relation::delta(Carrier::Finite(4));
        for op in &z4.ops {
            if op.arity == 0 {
                continue;
            }
            for j in 0..op.arity {
                for args in itertools::Itertools::multi_cartesian_product(
                    std::iter::repeat_n(family.iter(), op.arity),
                ) {
                    for fprime in &family {
                        let mut composed_args: Vec<Relation> =
                            args.iter().map(|r| (*r).clone()).collect();
                        composed_args[j] = composed_args[j].compose(fprime).unwrap();
                        let lhs = apply_op_to_relations(
                            &z4,
                            &op.sym,
                            &composed_args.iter().collect::<Vec<_>>(),
                        )
                        .unwrap();
                        let plain =
                            apply_op_to_relations(&z4, &op.sym, &args.to_vec()).unwrap();
                        let mut delta_args: Vec<&Relation> =
                            std::iter::repeat_n(&delta, op.arity).collect();
                        delta_args[j] = fprime;
                        let shift =
                            apply_op_to_relations(&z4, &op.sym, &delta_args).unwrap();
                        let rhs = plain.compose(&shift).unwrap();
                        assert!(lhs.is_subset(&rhs).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn semiuniformity_lattice_on_3_points_distributive() {
        // Semiuniformities on Finite(3) are the principal filters of
        // reflexive symmetric relations; with joins as intersections the
        // lattice is the boolean lattice on the off-diagonal symmetric
        // pairs. The semi-superequivalence counterpart has the same
        // minima, so one scan covers both.
        let mut minima = Vec::new();
        for bits in 0..8u32 {
            let mut r = Relation::delta(Carrier::Finite(3));
            let pairs = [(0i64, 1i64), (0, 2), (1, 2)];
            for (k, &(a, b)) in pairs.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    r.insert(a, b);
                    r.insert(b, a);
                }
            }
            assert!(is_semiuniformity(&RelFilter::principal(r.clone())));
            minima.push(r);
        }
        let lat = crate::lattice::lattice_of_relations(minima).unwrap();
        assert_eq!(lat.len(), 8);
        assert!(crate::lattice::check_distributive(&lat).modular);
        assert!(crate::lattice::check_modular(&lat).modular);
    }

    #[test]
    fn join_matches_partition_scan_oracle() {
        // Third route at small scale: the least equivalence above both
        // minima found by scanning all partitions.
        let parts = crate::lattice::all_partitions(4);
        for a in &parts {
            for b in &parts {
                let join = uniformity_join(
                    &RelFilter::principal(a.clone()),
                    &RelFilter::principal(b.clone()),
                )
                .unwrap();
                let both = a.union(b).unwrap();
                let oracle = parts
                    .iter()
                    .filter(|e| both.is_subset(e).unwrap())
                    .min_by_key(|e| e.pair_count())
                    .unwrap();
                assert_eq!(join.minimum(), oracle);
            }
        }
    }
}
