//! Finite algebras: an operation signature together with total operation
//! tables over a carrier `{0..n-1}`, plus term evaluation and the
//! Mal'tsev / Day term identity checks.

use crate::error::{Error, Result};
use crate::relation::{Carrier, Relation};
use crate::term::Term;

/// Identity checks enumerate every tuple; larger carriers are refused so
/// the results stay guarantees rather than samples.
pub const MAX_EXHAUSTIVE_CARRIER: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTable {
    pub sym: String,
    pub arity: usize,
    /// Row-major, length `n^arity`, last argument varies fastest.
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub name: String,
    pub carrier_size: usize,
    pub ops: Vec<OpTable>,
}

impl FiniteAlgebra {
    pub fn new(name: &str, carrier_size: usize, ops: Vec<OpTable>) -> Result<FiniteAlgebra> {
        let alg = FiniteAlgebra {
            name: name.to_string(),
            carrier_size,
            ops,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let n = self.carrier_size;
        let mut seen = std::collections::BTreeSet::new();
        for op in &self.ops {
            if !seen.insert(&op.sym) {
                return Err(Error::Parse(format!("duplicate operation symbol {}", op.sym)));
            }
            if n == 0 && op.arity == 0 {
                return Err(Error::Parse(format!(
                    "constant {} not allowed on an empty carrier",
                    op.sym
                )));
            }
            let expect = n.checked_pow(op.arity as u32).ok_or(Error::SizeLimit {
                what: "operation table size",
                limit: usize::MAX,
                got: op.arity,
            })?;
            if op.table.len() != expect {
                return Err(Error::ArityMismatch {
                    symbol: op.sym.clone(),
                    expected: expect,
                    got: op.table.len(),
                });
            }
            if let Some(&bad) = op.table.iter().find(|&&v| v >= n) {
                return Err(Error::OutOfRange {
                    value: bad,
                    carrier: n,
                });
            }
        }
        Ok(())
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::Finite(self.carrier_size)
    }

    pub fn op(&self, sym: &str) -> Result<&OpTable> {
        self.ops
            .iter()
            .find(|o| o.sym == sym)
            .ok_or_else(|| Error::UnknownSymbol(sym.to_string()))
    }

    pub fn apply(&self, sym: &str, args: &[usize]) -> Result<usize> {
        let op = self.op(sym)?;
        if args.len() != op.arity {
            return Err(Error::ArityMismatch {
                symbol: sym.to_string(),
                expected: op.arity,
                got: args.len(),
            });
        }
        let n = self.carrier_size;
        let mut idx = 0;
        for &a in args {
            if a >= n {
                return Err(Error::OutOfRange { value: a, carrier: n });
            }
            idx = idx * n + a;
        }
        Ok(op.table[idx])
    }

    fn check_exhaustive_size(&self) -> Result<()> {
        if self.carrier_size > MAX_EXHAUSTIVE_CARRIER {
            return Err(Error::SizeLimit {
                what: "carrier size for exhaustive identity checking",
                limit: MAX_EXHAUSTIVE_CARRIER,
                got: self.carrier_size,
            });
        }
        Ok(())
    }
}

/// Evaluates a term at an environment (one value per variable slot).
pub fn eval_term(alg: &FiniteAlgebra, t: &Term, env: &[usize]) -> Result<usize> {
    match t {
        Term::Var(i) => env.get(*i).copied().ok_or(Error::EnvTooShort {
            needed: i + 1,
            got: env.len(),
        }),
        Term::App(sym, args) => {
            let vals: Result<Vec<usize>> =
                args.iter().map(|a| eval_term(alg, a, env)).collect();
            alg.apply(sym, &vals?)
        }
    }
}

/// Tabulates the `arity`-ary term operation induced by `t`, row-major with
/// the last argument varying fastest. Requires `t.var_span() ≤ arity`.
pub fn term_table(alg: &FiniteAlgebra, t: &Term, arity: usize) -> Result<Vec<usize>> {
    if t.var_span() > arity {
        return Err(Error::ArityMismatch {
            symbol: t.to_string(),
            expected: arity,
            got: t.var_span(),
        });
    }
    let n = alg.carrier_size;
    let size = n.pow(arity as u32);
    let mut table = Vec::with_capacity(size);
    let mut env = vec![0usize; arity];
    for idx in 0..size {
        let mut rest = idx;
        for slot in (0..arity).rev() {
            env[slot] = rest % n;
            rest /= n;
        }
        table.push(eval_term(alg, t, &env)?);
    }
    Ok(table)
}

/// Outcome of an identity check: either everything held, or the first
/// violating assignment together with the two values that differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(IdentityWitness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityWitness {
    /// Which identity failed, e.g. "p(x,x,y)=y" or "D4".
    pub identity: String,
    /// Index into the Day sequence, when applicable.
    pub term_index: Option<usize>,
    pub assignment: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

/// A sequence `m_0, …, m_d` of quaternary terms. `d` is `terms.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayTermSequence {
    pub terms: Vec<Term>,
}

impl DayTermSequence {
    pub fn new(terms: Vec<Term>) -> Result<DayTermSequence> {
        if terms.len() < 2 {
            return Err(Error::ArityMismatch {
                symbol: "Day sequence length".into(),
                expected: 2,
                got: terms.len(),
            });
        }
        for t in &terms {
            if t.var_span() > 4 {
                return Err(Error::ArityMismatch {
                    symbol: t.to_string(),
                    expected: 4,
                    got: t.var_span(),
                });
            }
        }
        Ok(DayTermSequence { terms })
    }

    pub fn d(&self) -> usize {
        self.terms.len() - 1
    }
}

/// Checks the Mal'tsev identities `p(x,x,y)=y` and `p(x,y,y)=x`
/// exhaustively; on failure returns the violating `(x,y)`.
pub fn verify_maltsev(alg: &FiniteAlgebra, p: &Term) -> Result<Verdict> {
    if p.var_span() > 3 {
        return Err(Error::ArityMismatch {
            symbol: p.to_string(),
            expected: 3,
            got: p.var_span(),
        });
    }
    alg.check_exhaustive_size()?;
    let n = alg.carrier_size;
    let table = term_table(alg, p, 3)?;
    let at = |x: usize, y: usize, z: usize| table[(x * n + y) * n + z];
    for x in 0..n {
        for y in 0..n {
            let v = at(x, x, y);
            if v != y {
                return Ok(Verdict::Fails(IdentityWitness {
                    identity: "p(x,x,y)=y".into(),
                    term_index: None,
                    assignment: vec![x, y],
                    lhs: v,
                    rhs: y,
                }));
            }
            let v = at(x, y, y);
            if v != x {
                return Ok(Verdict::Fails(IdentityWitness {
                    identity: "p(x,y,y)=x".into(),
                    term_index: None,
                    assignment: vec![x, y],
                    lhs: v,
                    rhs: x,
                }));
            }
        }
    }
    Ok(Verdict::Holds)
}

/// From a ternary Mal'tsev term builds the standard three-term Day sequence
/// `⟨x, p(x, p(z,y,x), w), w⟩` (so `d = 2`).
pub fn derive_day_from_maltsev(p: &Term) -> Result<DayTermSequence> {
    if p.var_span() > 3 {
        return Err(Error::ArityMismatch {
            symbol: p.to_string(),
            expected: 3,
            got: p.var_span(),
        });
    }
    let inner = p.substitute(&[Term::Var(2), Term::Var(1), Term::Var(0)])?;
    let m1 = p.substitute(&[Term::Var(0), inner, Term::Var(3)])?;
    DayTermSequence::new(vec![Term::Var(0), m1, Term::Var(3)])
}

/// Exhaustively checks the five Day identities:
/// D1: `m_i(x,y,y,x) = x` for all `i`;
/// D2: `m_0(x,y,z,w) = x`;
/// D3: `m_d(x,y,z,w) = w`;
/// D4: `m_i(x,x,y,y) = m_{i+1}(x,x,y,y)` for even `i < d`;
/// D5: `m_i(x,y,y,z) = m_{i+1}(x,y,y,z)` for odd `i < d`.
pub fn verify_day(alg: &FiniteAlgebra, m: &DayTermSequence) -> Result<Verdict> {
    alg.check_exhaustive_size()?;
    let n = alg.carrier_size;
    let d = m.d();
    let tables: Result<Vec<Vec<usize>>> =
        m.terms.iter().map(|t| term_table(alg, t, 4)).collect();
    let tables = tables?;
    let at = |i: usize, x: usize, y: usize, z: usize, w: usize| {
        tables[i][((x * n + y) * n + z) * n + w]
    };

    for (i, _) in m.terms.iter().enumerate() {
        for x in 0..n {
            for y in 0..n {
                let v = at(i, x, y, y, x);
                if v != x {
                    return Ok(Verdict::Fails(IdentityWitness {
                        identity: "D1".into(),
                        term_index: Some(i),
                        assignment: vec![x, y],
                        lhs: v,
                        rhs: x,
                    }));
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let v = at(0, x, y, z, w);
                    if v != x {
                        return Ok(Verdict::Fails(IdentityWitness {
                            identity: "D2".into(),
                            term_index: Some(0),
                            assignment: vec![x, y, z, w],
                            lhs: v,
                            rhs: x,
                        }));
                    }
                    let v = at(d, x, y, z, w);
                    if v != w {
                        return Ok(Verdict::Fails(IdentityWitness {
                            identity: "D3".into(),
                            term_index: Some(d),
                            assignment: vec![x, y, z, w],
                            lhs: v,
                            rhs: w,
                        }));
                    }
                }
            }
        }
    }
    for i in 0..d {
        if i % 2 == 0 {
            for x in 0..n {
                for y in 0..n {
                    let (l, r) = (at(i, x, x, y, y), at(i + 1, x, x, y, y));
                    if l != r {
                        return Ok(Verdict::Fails(IdentityWitness {
                            identity: "D4".into(),
                            term_index: Some(i),
                            assignment: vec![x, y],
                            lhs: l,
                            rhs: r,
                        }));
                    }
                }
            }
        } else {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (l, r) = (at(i, x, y, y, z), at(i + 1, x, y, y, z));
                        if l != r {
                            return Ok(Verdict::Fails(IdentityWitness {
                                identity: "D5".into(),
                                term_index: Some(i),
                                assignment: vec![x, y, z],
                                lhs: l,
                                rhs: r,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Verdict::Holds)
}

/// A witness that the Day-term congruence criterion failed at one tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyLemmaWitness {
    pub tuple: (usize, usize, usize, usize),
    /// Whether `(a,c) ∈ γ` held at the counterexample.
    pub a_gamma_c: bool,
    /// Whether all `m_i(a,a,c,c) γ m_i(a,b,d,c)` held.
    pub all_mi_related: bool,
}

/// Exhaustively confirms, for a congruence `γ` and verified Day terms:
/// for all `a,b,c,d` with `b γ d`,
/// `a γ c` iff for all `i`, `m_i(a,a,c,c) γ m_i(a,b,d,c)`.
pub fn key_lemma_check(
    alg: &FiniteAlgebra,
    m: &DayTermSequence,
    gamma: &Relation,
) -> Result<std::result::Result<(), KeyLemmaWitness>> {
    alg.check_exhaustive_size()?;
    if gamma.carrier() != alg.carrier() {
        return Err(Error::CarrierMismatch {
            left: gamma.carrier().to_string(),
            right: alg.carrier().to_string(),
        });
    }
    if !crate::relation_algebra::is_congruence(alg, gamma) {
        return Err(Error::NotACongruence(gamma.canonical_key()));
    }
    let n = alg.carrier_size;
    let tables: Result<Vec<Vec<usize>>> =
        m.terms.iter().map(|t| term_table(alg, t, 4)).collect();
    let tables = tables?;
    let at = |i: usize, x: usize, y: usize, z: usize, w: usize| {
        tables[i][((x * n + y) * n + z) * n + w]
    };
    for b in 0..n {
        for d in 0..n {
            if !gamma.contains(b as i64, d as i64) {
                continue;
            }
            for a in 0..n {
                for c in 0..n {
                    let lhs = gamma.contains(a as i64, c as i64);
                    let rhs = (0..tables.len()).all(|i| {
                        gamma.contains(at(i, a, a, c, c) as i64, at(i, a, b, d, c) as i64)
                    });
                    if lhs != rhs {
                        return Ok(Err(KeyLemmaWitness {
                            tuple: (a, b, c, d),
                            a_gamma_c: lhs,
                            all_mi_related: rhs,
                        }));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn x_minus_y_plus_z() -> Term {
        // x - y + z over the group signature (add, neg, zero).
        Term::parse("(add x0 (add (neg x1) x2))").unwrap()
    }

    #[test]
    fn eval_examples() {
        let z5 = fixtures::cyclic_group(5);
        assert_eq!(eval_term(&z5, &x_minus_y_plus_z(), &[1, 2, 3]).unwrap(), 2);

        let z8 = fixtures::cyclic_group(8);
        assert_eq!(eval_term(&z8, &Term::Var(1), &[4, 7]).unwrap(), 7);

        let z4 = fixtures::cyclic_group(4);
        // m1(x,y,z,w) = y - z + w at (0,1,2,3): 1 - 2 + 3 = 2 mod 4.
        let m1 = Term::parse("(add x1 (add (neg x2) x3))").unwrap();
        assert_eq!(eval_term(&z4, &m1, &[0, 1, 2, 3]).unwrap(), 2);
    }

    #[test]
    fn eval_error_paths() {
        let z4 = fixtures::cyclic_group(4);
        assert!(matches!(
            eval_term(&z4, &Term::parse("(mul x0 x1)").unwrap(), &[0, 1]),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            eval_term(&z4, &Term::parse("(add x0)").unwrap(), &[0]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            eval_term(&z4, &Term::Var(3), &[0, 1]),
            Err(Error::EnvTooShort { .. })
        ));
    }

    #[test]
    fn maltsev_verdicts() {
        let z6 = fixtures::cyclic_group(6);
        assert!(verify_maltsev(&z6, &x_minus_y_plus_z()).unwrap().holds());

        let bad = Term::parse("(add x0 (add x1 x2))").unwrap();
        match verify_maltsev(&z6, &bad).unwrap() {
            Verdict::Fails(w) => assert_eq!(w.assignment, vec![0, 1]),
            Verdict::Holds => panic!("x+y+z is not a Mal'tsev term on ℤ₆"),
        }

        let one = fixtures::cyclic_group(1);
        assert!(verify_maltsev(&one, &bad).unwrap().holds());
    }

    #[test]
    fn derived_day_terms() {
        let m = derive_day_from_maltsev(&x_minus_y_plus_z()).unwrap();
        assert_eq!(m.d(), 2);
        let z4 = fixtures::cyclic_group(4);
        assert!(verify_day(&z4, &m).unwrap().holds());

        // m1 = p(x, p(z,y,x), w) evaluates as y - z + w on ℤ₄: compare the
        // induced tables against the directly written term.
        let direct = Term::parse("(add x1 (add (neg x2) x3))").unwrap();
        assert_eq!(
            term_table(&z4, &m.terms[1], 4).unwrap(),
            term_table(&z4, &direct, 4).unwrap()
        );
    }

    #[test]
    fn day_mutations_rejected() {
        let z4 = fixtures::cyclic_group(4);
        // m1 mutated to y - z + w + 1: D1 fails at x=0, y=0.
        let mutated = DayTermSequence::new(vec![
            Term::Var(0),
            Term::parse("(add x1 (add (neg x2) (add x3 (one))))").unwrap(),
            Term::Var(3),
        ])
        .unwrap();
        let z4_with_one = fixtures::with_constant(&z4, "one", 1);
        match verify_day(&z4_with_one, &mutated).unwrap() {
            Verdict::Fails(w) => {
                assert_eq!(w.identity, "D1");
                assert_eq!(w.assignment, vec![0, 0]);
            }
            Verdict::Holds => panic!("mutated sequence must fail"),
        }

        // ⟨x, x, w⟩ on ℤ₂ violates D5 at i=1 (x vs z).
        let proj = DayTermSequence::new(vec![Term::Var(0), Term::Var(0), Term::Var(3)]).unwrap();
        let z2 = fixtures::cyclic_group(2);
        match verify_day(&z2, &proj).unwrap() {
            Verdict::Fails(w) => assert_eq!(w.identity, "D5"),
            Verdict::Holds => panic!("projection sequence must fail D5"),
        }
    }

    #[test]
    fn unused_symbols_do_not_affect_verdicts() {
        let z4 = fixtures::cyclic_group(4);
        let padded = fixtures::with_constant(&z4, "spare", 3);
        let m = derive_day_from_maltsev(&x_minus_y_plus_z()).unwrap();
        assert_eq!(
            verify_day(&z4, &m).unwrap(),
            verify_day(&padded, &m).unwrap()
        );
    }

    #[test]
    fn empty_carrier_vacuous() {
        let empty = FiniteAlgebra::new(
            "empty",
            0,
            vec![OpTable {
                sym: "f".into(),
                arity: 2,
                table: vec![],
            }],
        )
        .unwrap();
        let m = derive_day_from_maltsev(&Term::parse("(f x0 x2)").unwrap()).unwrap();
        assert!(verify_day(&empty, &m).unwrap().holds());
    }

    #[test]
    fn empty_carrier_rejects_constants() {
        assert!(FiniteAlgebra::new(
            "bad",
            0,
            vec![OpTable {
                sym: "c".into(),
                arity: 0,
                table: vec![],
            }],
        )
        .is_err());
    }

    #[test]
    fn size_guard() {
        let z9 = fixtures::cyclic_group(9);
        assert!(matches!(
            verify_maltsev(&z9, &x_minus_y_plus_z()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn key_lemma_on_z4() {
        let z4 = fixtures::cyclic_group(4);
        let m = derive_day_from_maltsev(&x_minus_y_plus_z()).unwrap();
        let mod2 = fixtures::mod_congruence(4, 2);
        assert!(key_lemma_check(&z4, &m, &mod2).unwrap().is_ok());
        assert!(key_lemma_check(&z4, &m, &Relation::delta(Carrier::Finite(4)))
            .unwrap()
            .is_ok());
        assert!(key_lemma_check(&z4, &m, &Relation::full(4)).unwrap().is_ok());
    }

    #[test]
    fn key_lemma_rejects_non_congruence() {
        let z4 = fixtures::cyclic_group(4);
        let m = derive_day_from_maltsev(&x_minus_y_plus_z()).unwrap();
        let not_cong = Relation::from_pairs(Carrier::Finite(4), &[(0, 1), (1, 0)])
            .unwrap()
            .refl_sym_closure();
        assert!(matches!(
            key_lemma_check(&z4, &m, &not_cong),
            Err(Error::NotACongruence(_))
        ));
    }
}
