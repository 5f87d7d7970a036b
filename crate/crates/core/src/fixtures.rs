//! Bundled example algebras, so every check in the suite runs offline.

use crate::algebra::{FiniteAlgebra, OpTable};
use crate::relation::{Carrier, Relation};

fn table2(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut t = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            t.push(f(a, b));
        }
    }
    t
}

fn table1(n: usize, f: impl Fn(usize) -> usize) -> Vec<usize> {
    (0..n).map(f).collect()
}

/// The cyclic group `ℤₙ` with operations `add`, `neg`, `zero`.
pub fn cyclic_group(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        &format!("z{n}"),
        n,
        vec![
            OpTable {
                sym: "add".into(),
                arity: 2,
                table: table2(n, |a, b| (a + b) % n),
            },
            OpTable {
                sym: "neg".into(),
                arity: 1,
                table: table1(n, |a| (n - a) % n),
            },
            OpTable {
                sym: "zero".into(),
                arity: 0,
                table: vec![0],
            },
        ],
    )
    .expect("cyclic group tables are well-formed")
}

/// The ring `ℤₙ`: the cyclic group plus multiplication.
pub fn cyclic_ring(n: usize) -> FiniteAlgebra {
    let mut ops = cyclic_group(n).ops;
    ops.push(OpTable {
        sym: "mul".into(),
        arity: 2,
        table: table2(n, |a, b| (a * b) % n),
    });
    FiniteAlgebra::new(&format!("z{n}ring"), n, ops).expect("ring tables are well-formed")
}

/// The two-element lattice `{0,1}` as an algebra with `meet` and `join`.
pub fn two_element_lattice() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "lattice2",
        2,
        vec![
            OpTable {
                sym: "meet".into(),
                arity: 2,
                table: table2(2, |a, b| a & b),
            },
            OpTable {
                sym: "join".into(),
                arity: 2,
                table: table2(2, |a, b| a | b),
            },
        ],
    )
    .expect("lattice tables are well-formed")
}

/// A bare set: the empty signature on `{0..n-1}`.
pub fn bare_set(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(&format!("bare{n}"), n, vec![]).expect("empty signature")
}

/// Size-4 carrier with two unrelated group structures: `ℤ₄` as
/// (`add1`, `neg1`) and the Klein four-group as (`add2`, `neg2`).
pub fn two_group_structures() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "twogroups4",
        4,
        vec![
            OpTable {
                sym: "add1".into(),
                arity: 2,
                table: table2(4, |a, b| (a + b) % 4),
            },
            OpTable {
                sym: "neg1".into(),
                arity: 1,
                table: table1(4, |a| (4 - a) % 4),
            },
            OpTable {
                sym: "add2".into(),
                arity: 2,
                table: table2(4, |a, b| a ^ b),
            },
            OpTable {
                sym: "neg2".into(),
                arity: 1,
                table: table1(4, |a| a),
            },
        ],
    )
    .expect("two-group tables are well-formed")
}

/// Adds a fresh constant symbol to an algebra (used to check that identity
/// verdicts ignore unused symbols, and to write terms mentioning it).
pub fn with_constant(alg: &FiniteAlgebra, sym: &str, value: usize) -> FiniteAlgebra {
    let mut ops = alg.ops.clone();
    ops.push(OpTable {
        sym: sym.into(),
        arity: 0,
        table: vec![value],
    });
    FiniteAlgebra::new(&alg.name, alg.carrier_size, ops).expect("constant in range")
}

/// The congruence "equal mod d" on `{0..n-1}`.
pub fn mod_congruence(n: usize, d: usize) -> Relation {
    let mut r = Relation::empty(Carrier::Finite(n));
    for a in 0..n {
        for b in 0..n {
            if a % d == b % d {
                r.insert(a as i64, b as i64);
            }
        }
    }
    r
}

/// The equivalence relation on `{0..n-1}` whose classes are the given
/// blocks (each element must appear in exactly one block).
pub fn partition_relation(n: usize, blocks: &[&[usize]]) -> Relation {
    let mut r = Relation::delta(Carrier::Finite(n));
    for block in blocks {
        for &a in *block {
            for &b in *block {
                r.insert(a as i64, b as i64);
            }
        }
    }
    r
}

/// Every bundled algebra lying in a congruence-modular variety, paired
/// with a Mal'tsev-style witness where one exists. The two-element lattice
/// carries explicit Day terms instead (lattices have no Mal'tsev term).
pub fn cm_algebras() -> Vec<FiniteAlgebra> {
    let mut v: Vec<FiniteAlgebra> = (2..=8).map(cyclic_group).collect();
    v.push(cyclic_ring(4));
    v.push(cyclic_ring(6));
    v.push(two_element_lattice());
    v
}

/// The standard group Mal'tsev term `x - y + z` over `(add, neg)`.
pub fn group_maltsev_term() -> crate::term::Term {
    crate::term::Term::parse("(add x0 (add (neg x1) x2))").expect("well-formed term")
}

/// Day terms for lattices, with d = 3:
/// `⟨x, (x∧(y∨w))∨(y∧z∧w), (w∧(x∨z))∨(x∧y∧z), w⟩`.
/// The middle terms agree on the `(x,y,y,z)` pattern, where both evaluate
/// to the median `(x∧y)∨(x∧z)∨(y∧z)`.
pub fn lattice_day_terms() -> crate::algebra::DayTermSequence {
    let m1 = crate::term::Term::parse(
        "(join (meet x0 (join x1 x3)) (meet x1 (meet x2 x3)))",
    )
    .expect("well-formed term");
    let m2 = crate::term::Term::parse(
        "(join (meet x3 (join x0 x2)) (meet x0 (meet x1 x2)))",
    )
    .expect("well-formed term");
    crate::algebra::DayTermSequence::new(vec![
        crate::term::Term::Var(0),
        m1,
        m2,
        crate::term::Term::Var(3),
    ])
    .expect("quaternary sequence")
}

/// A Day sequence appropriate to a bundled algebra: derived from the group
/// Mal'tsev term when `add`/`neg` are present, the lattice sequence when
/// `meet`/`join` are, and none for bare sets.
pub fn day_terms_for(alg: &FiniteAlgebra) -> Option<crate::algebra::DayTermSequence> {
    let has = |s: &str| alg.ops.iter().any(|o| o.sym == s);
    if has("add") && has("neg") {
        Some(
            crate::algebra::derive_day_from_maltsev(&group_maltsev_term())
                .expect("ternary Mal'tsev term"),
        )
    } else if has("meet") && has("join") {
        Some(lattice_day_terms())
    } else {
        None
    }
}

/// Resolves a bundled fixture by name (`z2`..`z8`, `z4ring`, `z6ring`,
/// `lattice2`, `bare2`..`bare5`, `twogroups4`).
pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    if let Some(num) = name.strip_prefix("bare") {
        if let Ok(n) = num.parse::<usize>() {
            if (1..=5).contains(&n) {
                return Some(bare_set(n));
            }
        }
        return None;
    }
    match name {
        "lattice2" => Some(two_element_lattice()),
        "twogroups4" => Some(two_group_structures()),
        "z4ring" => Some(cyclic_ring(4)),
        "z6ring" => Some(cyclic_ring(6)),
        _ => {
            let n = name.strip_prefix('z')?.parse::<usize>().ok()?;
            if (1..=12).contains(&n) {
                Some(cyclic_group(n))
            } else {
                None
            }
        }
    }
}

pub fn fixture_names() -> Vec<&'static str> {
    vec![
        "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z12", "z4ring", "z6ring", "lattice2",
        "bare2", "bare3", "bare4", "bare5", "twogroups4",
    ]
}
