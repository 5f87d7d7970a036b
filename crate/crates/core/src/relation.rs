//! Binary relations over a finite carrier `{0..n-1}` or the integer line.
//!
//! Finite relations are packed row-major into 64-bit words so the exhaustive
//! loops that dominate the workbench are word-level operations. Integer-line
//! relations store a finite set of off-diagonal pairs plus a flag meaning
//! "the whole diagonal is included"; all operations keep that class exact or
//! refuse with an explicit error.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// The underlying set of a relation: a finite set `{0..n-1}` or all of `ℤ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Carrier {
    Finite(usize),
    IntLine,
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Finite(n) => write!(f, "finite({n})"),
            Carrier::IntLine => write!(f, "intline"),
        }
    }
}

/// A binary relation. `opposite` is what some texts write as `R⁻¹`; both
/// names denote `{(b,a) | (a,b) ∈ R}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    Finite {
        n: usize,
        /// Row-major bit matrix, `(n+63)/64` words per row. Padding bits of
        /// each row word are kept zero so equality is plain word equality.
        words: Vec<u64>,
    },
    IntLine {
        /// Off-diagonal pairs only; finite by construction.
        pairs: BTreeSet<(i64, i64)>,
        /// Whether the full diagonal `Δ_ℤ` is included.
        diagonal: bool,
    },
}

fn words_per_row(n: usize) -> usize {
    n.div_ceil(64)
}

impl Relation {
    pub fn empty(carrier: Carrier) -> Relation {
        match carrier {
            Carrier::Finite(n) => Relation::Finite {
                n,
                words: vec![0; n * words_per_row(n)],
            },
            Carrier::IntLine => Relation::IntLine {
                pairs: BTreeSet::new(),
                diagonal: false,
            },
        }
    }

    /// The identity relation `Δ` on the carrier.
    pub fn delta(carrier: Carrier) -> Relation {
        match carrier {
            Carrier::Finite(n) => {
                let mut r = Relation::empty(carrier);
                for i in 0..n {
                    r.insert(i as i64, i as i64);
                }
                r
            }
            Carrier::IntLine => Relation::IntLine {
                pairs: BTreeSet::new(),
                diagonal: true,
            },
        }
    }

    /// The full relation on a finite carrier.
    pub fn full(n: usize) -> Relation {
        let mut r = Relation::empty(Carrier::Finite(n));
        for i in 0..n {
            for j in 0..n {
                r.insert(i as i64, j as i64);
            }
        }
        r
    }

    pub fn from_pairs(carrier: Carrier, pairs: &[(i64, i64)]) -> Result<Relation> {
        let mut r = Relation::empty(carrier);
        for &(a, b) in pairs {
            if let Carrier::Finite(n) = carrier {
                for v in [a, b] {
                    if v < 0 || v as usize >= n {
                        return Err(Error::OutOfRange {
                            value: v.unsigned_abs() as usize,
                            carrier: n,
                        });
                    }
                }
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn carrier(&self) -> Carrier {
        match self {
            Relation::Finite { n, .. } => Carrier::Finite(*n),
            Relation::IntLine { .. } => Carrier::IntLine,
        }
    }

    fn check_same_carrier(&self, other: &Relation) -> Result<()> {
        if self.carrier() != other.carrier() {
            return Err(Error::CarrierMismatch {
                left: self.carrier().to_string(),
                right: other.carrier().to_string(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, a: i64, b: i64) -> bool {
        match self {
            Relation::Finite { n, words } => {
                if a < 0 || b < 0 || a as usize >= *n || b as usize >= *n {
                    return false;
                }
                let wpr = words_per_row(*n);
                let (a, b) = (a as usize, b as usize);
                words[a * wpr + b / 64] >> (b % 64) & 1 == 1
            }
            Relation::IntLine { pairs, diagonal } => {
                (a == b && *diagonal) || pairs.contains(&(a, b))
            }
        }
    }

    /// Inserts a pair. On the integer line a diagonal pair sets the
    /// whole-diagonal flag, since isolated diagonal points are not
    /// representable there.
    pub fn insert(&mut self, a: i64, b: i64) {
        match self {
            Relation::Finite { n, words } => {
                let wpr = words_per_row(*n);
                let (a, b) = (a as usize, b as usize);
                assert!(a < *n && b < *n, "pair out of carrier range");
                words[a * wpr + b / 64] |= 1 << (b % 64);
            }
            Relation::IntLine { pairs, diagonal } => {
                if a == b {
                    *diagonal = true;
                } else {
                    pairs.insert((a, b));
                }
            }
        }
    }

    /// Off-diagonal pairs plus, on finite carriers, explicit diagonal pairs.
    /// Sorted lexicographically (canonical order).
    pub fn iter_pairs(&self) -> Vec<(i64, i64)> {
        match self {
            Relation::Finite { n, .. } => {
                let mut out = Vec::new();
                for a in 0..*n as i64 {
                    for b in 0..*n as i64 {
                        if self.contains(a, b) {
                            out.push((a, b));
                        }
                    }
                }
                out
            }
            Relation::IntLine { pairs, .. } => pairs.iter().copied().collect(),
        }
    }

    pub fn has_diagonal_flag(&self) -> bool {
        match self {
            Relation::Finite { .. } => false,
            Relation::IntLine { diagonal, .. } => *diagonal,
        }
    }

    pub fn pair_count(&self) -> usize {
        match self {
            Relation::Finite { words, .. } => {
                words.iter().map(|w| w.count_ones() as usize).sum()
            }
            Relation::IntLine { pairs, .. } => pairs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Relation::Finite { words, .. } => words.iter().all(|&w| w == 0),
            Relation::IntLine { pairs, diagonal } => pairs.is_empty() && !diagonal,
        }
    }

    /// The set of integers appearing in stored off-diagonal pairs.
    pub fn support(&self) -> BTreeSet<i64> {
        match self {
            Relation::Finite { .. } => self
                .iter_pairs()
                .into_iter()
                .flat_map(|(a, b)| [a, b])
                .collect(),
            Relation::IntLine { pairs, .. } => {
                pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
            }
        }
    }

    pub fn union(&self, other: &Relation) -> Result<Relation> {
        self.check_same_carrier(other)?;
        Ok(match (self, other) {
            (Relation::Finite { n, words: w1 }, Relation::Finite { words: w2, .. }) => {
                Relation::Finite {
                    n: *n,
                    words: w1.iter().zip(w2).map(|(a, b)| a | b).collect(),
                }
            }
            (
                Relation::IntLine { pairs: p1, diagonal: d1 },
                Relation::IntLine { pairs: p2, diagonal: d2 },
            ) => Relation::IntLine {
                pairs: p1.union(p2).copied().collect(),
                diagonal: *d1 || *d2,
            },
            _ => unreachable!(),
        })
    }

    pub fn intersect(&self, other: &Relation) -> Result<Relation> {
        self.check_same_carrier(other)?;
        Ok(match (self, other) {
            (Relation::Finite { n, words: w1 }, Relation::Finite { words: w2, .. }) => {
                Relation::Finite {
                    n: *n,
                    words: w1.iter().zip(w2).map(|(a, b)| a & b).collect(),
                }
            }
            (
                Relation::IntLine { pairs: p1, diagonal: d1 },
                Relation::IntLine { pairs: p2, diagonal: d2 },
            ) => Relation::IntLine {
                pairs: p1.intersection(p2).copied().collect(),
                diagonal: *d1 && *d2,
            },
            _ => unreachable!(),
        })
    }

    pub fn is_subset(&self, other: &Relation) -> Result<bool> {
        self.check_same_carrier(other)?;
        Ok(match (self, other) {
            (Relation::Finite { words: w1, .. }, Relation::Finite { words: w2, .. }) => {
                w1.iter().zip(w2).all(|(a, b)| a & !b == 0)
            }
            (
                Relation::IntLine { pairs: p1, diagonal: d1 },
                Relation::IntLine { pairs: p2, diagonal: d2 },
            ) => (!*d1 || *d2) && p1.is_subset(p2),
            _ => unreachable!(),
        })
    }

    pub fn opposite(&self) -> Relation {
        match self {
            Relation::Finite { n, .. } => {
                let mut r = Relation::empty(Carrier::Finite(*n));
                for (a, b) in self.iter_pairs() {
                    r.insert(b, a);
                }
                r
            }
            Relation::IntLine { pairs, diagonal } => Relation::IntLine {
                pairs: pairs.iter().map(|&(a, b)| (b, a)).collect(),
                diagonal: *diagonal,
            },
        }
    }

    /// Relational composition `{(a,c) | ∃b: a R b and b R' c}`.
    ///
    /// On the integer line the result is exact; compositions whose result
    /// includes isolated diagonal points (only possible when the result's
    /// diagonal flag would be off) are refused rather than truncated.
    pub fn compose(&self, other: &Relation) -> Result<Relation> {
        self.check_same_carrier(other)?;
        match (self, other) {
            (Relation::Finite { n, words: w1 }, Relation::Finite { words: w2, .. }) => {
                let n = *n;
                let wpr = words_per_row(n);
                let mut out = vec![0u64; n * wpr];
                for a in 0..n {
                    for b in 0..n {
                        if w1[a * wpr + b / 64] >> (b % 64) & 1 == 1 {
                            let (dst, src) = (a * wpr, b * wpr);
                            for k in 0..wpr {
                                out[dst + k] |= w2[src + k];
                            }
                        }
                    }
                }
                Ok(Relation::Finite { n, words: out })
            }
            (
                Relation::IntLine { pairs: p1, diagonal: d1 },
                Relation::IntLine { pairs: p2, diagonal: d2 },
            ) => {
                let diagonal = *d1 && *d2;
                let mut pairs: BTreeSet<(i64, i64)> = BTreeSet::new();
                if *d2 {
                    pairs.extend(p1.iter().copied());
                }
                if *d1 {
                    pairs.extend(p2.iter().copied());
                }
                for &(a, b) in p1 {
                    for &(b2, c) in p2 {
                        if b == b2 {
                            if a != c {
                                pairs.insert((a, c));
                            } else if !diagonal {
                                return Err(Error::PartialDiagonal(format!(
                                    "({a},{b})∘({b2},{c}) yields isolated ({a},{a})"
                                )));
                            }
                        }
                    }
                }
                Ok(Relation::IntLine { pairs, diagonal })
            }
            _ => unreachable!(),
        }
    }

    /// `R^{∘k}` for `k ≥ 1`.
    pub fn power(&self, k: usize) -> Result<Relation> {
        if k == 0 {
            return Err(Error::SizeLimit {
                what: "relation power exponent (must be ≥ 1)",
                limit: 1,
                got: 0,
            });
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// `R ∪ Rᵒᵖ ∪ Δ`.
    pub fn refl_sym_closure(&self) -> Relation {
        let sym = self.union(&self.opposite()).expect("same carrier");
        sym.union(&Relation::delta(self.carrier())).expect("same carrier")
    }

    pub fn is_reflexive(&self) -> bool {
        match self {
            Relation::Finite { n, .. } => (0..*n as i64).all(|i| self.contains(i, i)),
            Relation::IntLine { diagonal, .. } => *diagonal,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Relation::Finite { .. } => self
                .iter_pairs()
                .into_iter()
                .all(|(a, b)| self.contains(b, a)),
            Relation::IntLine { pairs, .. } => {
                pairs.iter().all(|&(a, b)| pairs.contains(&(b, a)))
            }
        }
    }

    pub fn is_transitive(&self) -> bool {
        match self {
            Relation::Finite { .. } => match self.compose(self) {
                Ok(sq) => sq.is_subset(self).expect("same carrier"),
                Err(_) => unreachable!("finite composition cannot fail"),
            },
            Relation::IntLine { pairs, diagonal } => {
                // Pair-pair products only; diagonal steps are no-ops.
                for &(a, b) in pairs {
                    for &(b2, c) in pairs {
                        if b == b2 && !self.contains(a, c) {
                            return false;
                        }
                    }
                }
                let _ = diagonal;
                true
            }
        }
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_reflexive() && self.is_symmetric() && self.is_transitive()
    }

    /// Reflexive-transitive-symmetric closure (the least equivalence
    /// relation containing `self`). Finite carriers only.
    pub fn equivalence_closure(&self) -> Relation {
        let mut cur = self.refl_sym_closure();
        loop {
            let next = cur
                .union(&cur.compose(&cur).expect("finite"))
                .expect("same carrier");
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Transitive closure.
    pub fn transitive_closure(&self) -> Relation {
        let mut cur = self.clone();
        loop {
            let next = cur
                .union(&cur.compose(&cur).expect("finite"))
                .expect("same carrier");
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Canonical textual form: sorted pair list plus diagonal marker.
    /// Used for deterministic ordering of lattice elements and certificates.
    pub fn canonical_key(&self) -> String {
        let mut s = String::new();
        match self.carrier() {
            Carrier::Finite(n) => s.push_str(&format!("f{n}:")),
            Carrier::IntLine => s.push_str("z:"),
        }
        for (a, b) in self.iter_pairs() {
            s.push_str(&format!("{a},{b};"));
        }
        if self.has_diagonal_flag() {
            s.push_str("+d");
        }
        s
    }
}

/// Image of a relation along a function between finite carriers:
/// `f(R) = {(f a, f b) | (a,b) ∈ R}`.
pub fn image_along(f: &[usize], target: usize, r: &Relation) -> Result<Relation> {
    let Carrier::Finite(n) = r.carrier() else {
        return Err(Error::CarrierMismatch {
            left: "intline".into(),
            right: "finite function domain".into(),
        });
    };
    if f.len() != n {
        return Err(Error::ArityMismatch {
            symbol: "function table".into(),
            expected: n,
            got: f.len(),
        });
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= target) {
        return Err(Error::OutOfRange {
            value: bad,
            carrier: target,
        });
    }
    let mut out = Relation::empty(Carrier::Finite(target));
    for (a, b) in r.iter_pairs() {
        out.insert(f[a as usize] as i64, f[b as usize] as i64);
    }
    Ok(out)
}

/// Preimage of a relation along a function:
/// `f⁻¹(R) = {(a,b) | (f a, f b) ∈ R}`.
pub fn preimage_along(f: &[usize], source: usize, r: &Relation) -> Result<Relation> {
    let Carrier::Finite(target) = r.carrier() else {
        return Err(Error::CarrierMismatch {
            left: "intline".into(),
            right: "finite function codomain".into(),
        });
    };
    if f.len() != source {
        return Err(Error::ArityMismatch {
            symbol: "function table".into(),
            expected: source,
            got: f.len(),
        });
    }
    if let Some(&bad) = f.iter().find(|&&v| v >= target) {
        return Err(Error::OutOfRange {
            value: bad,
            carrier: target,
        });
    }
    let mut out = Relation::empty(Carrier::Finite(source));
    for a in 0..source {
        for b in 0..source {
            if r.contains(f[a] as i64, f[b] as i64) {
                out.insert(a as i64, b as i64);
            }
        }
    }
    Ok(out)
}

/// Basic operations of the integer-line group `(ℤ, +, -)`, used to probe
/// compatibility of integer-line structures. Constants are omitted: a
/// constant's image is a single diagonal point, which the pair-set
/// representation cannot hold, and compatibility with constants is vacuous
/// for any structure containing `Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineOp {
    Add,
    Neg,
}

impl LineOp {
    pub fn arity(self) -> usize {
        match self {
            LineOp::Add => 2,
            LineOp::Neg => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineOp::Add => "add",
            LineOp::Neg => "neg",
        }
    }
}

/// Applies an integer-line group operation to relations:
/// `ω(R₁,…,Rₙ) = {(ω(a⃗), ω(b⃗)) | (aᵢ,bᵢ) ∈ Rᵢ}`.
///
/// A diagonal flag on one argument combined with an off-diagonal pair on
/// another produces pairs at every translate, so the result would have
/// infinite support; such calls are refused before any enumeration.
pub fn apply_line_op(op: LineOp, rels: &[&Relation]) -> Result<Relation> {
    if rels.len() != op.arity() {
        return Err(Error::ArityMismatch {
            symbol: op.name().into(),
            expected: op.arity(),
            got: rels.len(),
        });
    }
    for r in rels {
        if r.carrier() != Carrier::IntLine {
            return Err(Error::CarrierMismatch {
                left: r.carrier().to_string(),
                right: "intline".into(),
            });
        }
    }
    match op {
        LineOp::Neg => {
            let (pairs, diagonal) = match rels[0] {
                Relation::IntLine { pairs, diagonal } => (pairs, *diagonal),
                _ => unreachable!(),
            };
            Ok(Relation::IntLine {
                pairs: pairs.iter().map(|&(a, b)| (-a, -b)).collect(),
                diagonal,
            })
        }
        LineOp::Add => {
            let (p1, d1) = match rels[0] {
                Relation::IntLine { pairs, diagonal } => (pairs, *diagonal),
                _ => unreachable!(),
            };
            let (p2, d2) = match rels[1] {
                Relation::IntLine { pairs, diagonal } => (pairs, *diagonal),
                _ => unreachable!(),
            };
            if (d1 && !p2.is_empty()) || (d2 && !p1.is_empty()) {
                return Err(Error::InfiniteSupport(
                    "diagonal flag shifted by an off-diagonal pair under +".into(),
                ));
            }
            let diagonal = d1 && d2;
            let mut pairs = BTreeSet::new();
            for &(a1, b1) in p1 {
                for &(a2, b2) in p2 {
                    let (a, b) = (a1 + a2, b1 + b2);
                    if a != b {
                        pairs.insert((a, b));
                    } else if !diagonal {
                        return Err(Error::PartialDiagonal(format!(
                            "({a1},{b1})+({a2},{b2}) yields isolated ({a},{a})"
                        )));
                    }
                }
            }
            Ok(Relation::IntLine { pairs, diagonal })
        }
    }
}
