//! Explicit finite lattices with eager validation, modularity and
//! distributivity certificates, and ideal/filter enumeration.

use crate::error::{Error, Result};
use crate::relation::{Carrier, Relation};

pub const MAX_IDEAL_ENUM: usize = 20;
pub const MAX_PARTITION_CARRIER: usize = 5;

/// A finite lattice: elements carry an opaque payload label (the canonical
/// serialization of whatever they stand for), `leq` is the order matrix,
/// and `meet`/`join` are index tables. All lattice axioms are validated on
/// construction; malformed input is refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    pub labels: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

impl Lattice {
    /// Builds a lattice from payload labels and an order predicate.
    /// Elements are sorted by label first so certificates are deterministic.
    pub fn from_order<T>(
        mut items: Vec<(String, T)>,
        leq_fn: impl Fn(&T, &T) -> bool,
    ) -> Result<Lattice> {
        items.sort_by(|a, b| a.0.cmp(&b.0));
        let n = items.len();
        if n == 0 {
            return Err(Error::MalformedLattice("empty element list".into()));
        }
        let mut leq = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = leq_fn(&items[i].1, &items[j].1);
            }
        }
        Lattice::from_leq(items.into_iter().map(|(l, _)| l).collect(), leq)
    }

    pub fn from_leq(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Lattice> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedLattice("order matrix shape".into()));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(Error::MalformedLattice(format!("not reflexive at {i}")));
            }
            for j in 0..n {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::MalformedLattice(format!(
                        "not antisymmetric at ({i},{j})"
                    )));
                }
                for k in 0..n {
                    if leq[i][j] && leq[j][k] && !leq[i][k] {
                        return Err(Error::MalformedLattice(format!(
                            "not transitive at ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        let mut meet = vec![vec![0usize; n]; n];
        let mut join = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                meet[i][j] = glb(&leq, i, j).ok_or_else(|| {
                    Error::MalformedLattice(format!("no greatest lower bound for ({i},{j})"))
                })?;
                join[i][j] = lub(&leq, i, j).ok_or_else(|| {
                    Error::MalformedLattice(format!("no least upper bound for ({i},{j})"))
                })?;
            }
        }
        let lat = Lattice {
            labels,
            leq,
            meet,
            join,
        };
        lat.check_axioms()?;
        Ok(lat)
    }

    /// Absorption, commutativity, associativity, and order-compatibility.
    /// Mostly redundant given glb/lub construction, but cheap and it is the
    /// contract downstream proofs-by-enumeration rely on.
    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if self.meet[x][y] != self.meet[y][x] || self.join[x][y] != self.join[y][x] {
                    return Err(Error::MalformedLattice("commutativity".into()));
                }
                if self.meet[x][self.join[x][y]] != x || self.join[x][self.meet[x][y]] != x {
                    return Err(Error::MalformedLattice("absorption".into()));
                }
                if (self.leq[x][y]) != (self.meet[x][y] == x) {
                    return Err(Error::MalformedLattice("order/meet compatibility".into()));
                }
                for z in 0..n {
                    if self.meet[self.meet[x][y]][z] != self.meet[x][self.meet[y][z]]
                        || self.join[self.join[x][y]][z] != self.join[x][self.join[y][z]]
                    {
                        return Err(Error::MalformedLattice("associativity".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
            .expect("validated lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq[j][i]))
            .expect("validated lattice has a top")
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// True iff this lattice is a chain (total order).
    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| self.leq[i][j] || self.leq[j][i]))
    }
}

fn glb(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let lowers: Vec<usize> = (0..n).filter(|&x| leq[x][a] && leq[x][b]).collect();
    lowers
        .iter()
        .copied()
        .find(|&m| lowers.iter().all(|&x| leq[x][m]))
}

fn lub(leq: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = leq.len();
    let uppers: Vec<usize> = (0..n).filter(|&x| leq[a][x] && leq[b][x]).collect();
    uppers
        .iter()
        .copied()
        .find(|&m| uppers.iter().all(|&x| leq[m][x]))
}

/// Result of the modular-law scan: a witness is a triple `(x,y,z)` with
/// `x ≤ z` and `x ∨ (y ∧ z) ≠ (x ∨ y) ∧ z`; it is re-checked against the
/// lattice before being returned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularityCertificate {
    pub modular: bool,
    pub witness: Option<(usize, usize, usize)>,
}

pub fn check_modular(l: &Lattice) -> ModularityCertificate {
    let n = l.len();
    for x in 0..n {
        for z in 0..n {
            if !l.leq[x][z] {
                continue;
            }
            for y in 0..n {
                let lhs = l.join[x][l.meet[y][z]];
                let rhs = l.meet[l.join[x][y]][z];
                if lhs != rhs {
                    assert!(l.leq[x][z] && lhs != rhs, "witness must re-check");
                    return ModularityCertificate {
                        modular: false,
                        witness: Some((x, y, z)),
                    };
                }
            }
        }
    }
    ModularityCertificate {
        modular: true,
        witness: None,
    }
}

/// Distributivity scan; witness `(x,y,z)` has
/// `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
pub fn check_distributive(l: &Lattice) -> ModularityCertificate {
    let n = l.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = l.meet[x][l.join[y][z]];
                let rhs = l.join[l.meet[x][y]][l.meet[x][z]];
                if lhs != rhs {
                    return ModularityCertificate {
                        modular: false,
                        witness: Some((x, y, z)),
                    };
                }
            }
        }
    }
    ModularityCertificate {
        modular: true,
        witness: None,
    }
}

/// An ideal or filter of a finite lattice, reported with its principal
/// generator (in a finite lattice every ideal and filter is principal,
/// which the exhaustive enumeration below re-verifies rather than assumes).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalSubset {
    pub members: Vec<usize>,
    pub generator: usize,
}

/// Enumerates every ideal (downset closed under join) by exhaustive scan
/// over downsets. `|L| ≤ 20`.
pub fn ideals_of(l: &Lattice) -> Result<Vec<PrincipalSubset>> {
    enumerate_closed_subsets(l, false)
}

/// Enumerates every filter (upset closed under meet). `|L| ≤ 20`.
pub fn filters_of(l: &Lattice) -> Result<Vec<PrincipalSubset>> {
    enumerate_closed_subsets(l, true)
}

fn enumerate_closed_subsets(l: &Lattice, filters: bool) -> Result<Vec<PrincipalSubset>> {
    let n = l.len();
    if n > MAX_IDEAL_ENUM {
        return Err(Error::SizeLimit {
            what: "lattice size for ideal/filter enumeration",
            limit: MAX_IDEAL_ENUM,
            got: n,
        });
    }
    let below = |i: usize, j: usize| if filters { l.leq[j][i] } else { l.leq[i][j] };
    let combine = |i: usize, j: usize| {
        if filters {
            l.meet[i][j]
        } else {
            l.join[i][j]
        }
    };
    let mut out = Vec::new();
    'mask: for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        for &i in &members {
            for j in 0..n {
                if below(j, i) && mask >> j & 1 == 0 {
                    continue 'mask;
                }
            }
            for &j in &members {
                if mask >> combine(i, j) & 1 == 0 {
                    continue 'mask;
                }
            }
        }
        // Closed: its extreme element is the principal generator.
        let generator = members
            .iter()
            .copied()
            .find(|&g| members.iter().all(|&x| below(x, g)))
            .expect("a finite closed subset has an extreme element");
        out.push(PrincipalSubset { members, generator });
    }
    Ok(out)
}

/// All partitions of `{0..n-1}` as equivalence relations, enumerated via
/// restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Relation> {
    if n == 0 {
        return vec![Relation::empty(Carrier::Finite(0))];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let mut r = Relation::empty(Carrier::Finite(n));
        for a in 0..n {
            for b in 0..n {
                if rgs[a] == rgs[b] {
                    r.insert(a as i64, b as i64);
                }
            }
        }
        out.push(r);
        // Next restricted growth string.
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let max_prefix = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= max_prefix {
                rgs[i] += 1;
                for v in rgs[i + 1..].iter_mut() {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// The partition lattice `Πₙ`, ordered by refinement (inclusion of the
/// corresponding equivalence relations). `n ≤ 5`.
pub fn equivalence_lattice(n: usize) -> Result<Lattice> {
    if n > MAX_PARTITION_CARRIER {
        return Err(Error::SizeLimit {
            what: "carrier size for partition lattice",
            limit: MAX_PARTITION_CARRIER,
            got: n,
        });
    }
    let parts = all_partitions(n);
    lattice_of_relations(parts)
}

/// Builds a lattice from a family of relations ordered by inclusion.
pub fn lattice_of_relations(rels: Vec<Relation>) -> Result<Lattice> {
    let items: Vec<(String, Relation)> =
        rels.into_iter().map(|r| (r.canonical_key(), r)).collect();
    Lattice::from_order(items, |a, b| a.is_subset(b).unwrap_or(false))
}
