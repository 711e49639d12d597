//! Posemigroups: multiplication tables over posets that are associative and
//! order-compatible, with the adjoined identity of `S¹` kept as an optional
//! multiplier rather than a carrier element.

use crate::error::{Error, Result};
use crate::order::{is_monotone, LowerSet, Poset, DEFAULT_CAP};
use crate::subset::Subset;
use crate::verdict::Verdict;

/// A multiplier drawn from `S¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OptElement {
    /// The formal identity; multiplying by it omits the factor.
    Identity,
    Elem(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Posemigroup {
    poset: Poset,
    /// Row-major `n * n` table.
    table: Vec<usize>,
    identity: Option<usize>,
}

/// Why an element map is not a morphism of the requested kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismFailure {
    /// The map has the wrong length or points outside the codomain.
    NotTotal,
    NotMonotone { x: usize, y: usize },
    NotMultiplicative { x: usize, y: usize },
    /// An admissible subset whose image is not admissible.
    MarkingNotPreserved { set: Subset },
    /// An admissible subset whose join is not sent to the join of its image.
    JoinNotPreserved { set: Subset },
    /// An admissible subset of the source without a join.
    SourceJoinMissing { set: Subset },
}

impl Posemigroup {
    /// Validates `table[x][y] = x·y` for associativity, then compatibility.
    pub fn new(poset: Poset, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = poset.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::MalformedTable(format!(
                "expected {n} rows of {n} entries"
            )));
        }
        if let Some(&bad) = table.iter().flatten().find(|&&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry {bad} is out of range")));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |x: usize, y: usize| flat[x * n + y];
        let name = |i: usize| poset.name(i).to_string();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul(mul(x, y), z) != mul(x, mul(y, z)) {
                        return Err(Error::AssociativityViolation {
                            x: name(x),
                            y: name(y),
                            z: name(z),
                        });
                    }
                }
            }
        }
        for a1 in 0..n {
            for b1 in poset.up_set(a1).iter() {
                for a2 in 0..n {
                    for b2 in poset.up_set(a2).iter() {
                        if !poset.leq(mul(a1, a2), mul(b1, b2)) {
                            return Err(Error::CompatibilityViolation {
                                a1: name(a1),
                                b1: name(b1),
                                a2: name(a2),
                                b2: name(b2),
                            });
                        }
                    }
                }
            }
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x));
        Ok(Posemigroup {
            poset,
            table: flat,
            identity,
        })
    }

    /// Builds a posemigroup from a product function.
    pub fn from_fn<F: Fn(usize, usize) -> usize>(poset: Poset, mul: F) -> Result<Self> {
        let n = poset.len();
        let table = (0..n).map(|x| (0..n).map(|y| mul(x, y)).collect()).collect();
        Self::new(poset, table)
    }

    /// Builds a posemigroup from rows of element names.
    pub fn from_named_rows<R, S>(poset: Poset, rows: &[R]) -> Result<Self>
    where
        R: AsRef<[S]>,
        S: AsRef<str>,
    {
        let table = rows
            .iter()
            .map(|row| {
                row.as_ref()
                    .iter()
                    .map(|s| poset.index_of(s.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, table)
    }

    #[must_use]
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.poset = self.poset.with_cap(cap);
        self
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// A carrier element acting as a two-sided identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn mul_left(&self, a: OptElement, x: usize) -> usize {
        match a {
            OptElement::Identity => x,
            OptElement::Elem(a) => self.mul(a, x),
        }
    }

    pub fn mul_right(&self, x: usize, b: OptElement) -> usize {
        match b {
            OptElement::Identity => x,
            OptElement::Elem(b) => self.mul(x, b),
        }
    }

    /// `a·x·b` with `a, b ∈ S¹`.
    pub fn mul_opt(&self, a: OptElement, x: usize, b: OptElement) -> usize {
        self.mul_right(self.mul_left(a, x), b)
    }

    /// Product of two multipliers in `S¹`.
    pub fn compose_opt(&self, a: OptElement, b: OptElement) -> OptElement {
        match (a, b) {
            (OptElement::Identity, b) => b,
            (a, OptElement::Identity) => a,
            (OptElement::Elem(a), OptElement::Elem(b)) => OptElement::Elem(self.mul(a, b)),
        }
    }

    /// The multipliers of `S¹`. When `S` already has an identity, `S¹ = S`.
    pub fn opt_elements(&self) -> Vec<OptElement> {
        let elems = (0..self.len()).map(OptElement::Elem);
        if self.identity.is_some() {
            elems.collect()
        } else {
            std::iter::once(OptElement::Identity).chain(elems).collect()
        }
    }

    /// All pairs `(a, b)` of multipliers from `S¹`.
    pub fn opt_pairs(&self) -> Vec<(OptElement, OptElement)> {
        let opts = self.opt_elements();
        opts.iter()
            .flat_map(|&a| opts.iter().map(move |&b| (a, b)))
            .collect()
    }

    /// `aXb = { a·x·b | x ∈ X }`.
    pub fn translate(&self, a: OptElement, x: Subset, b: OptElement) -> Subset {
        x.iter().map(|i| self.mul_opt(a, i, b)).collect()
    }

    /// `X·Y = { xy | x ∈ X, y ∈ Y }↓`.
    pub fn set_product(&self, x: Subset, y: Subset) -> LowerSet {
        let raw: Subset = x
            .iter()
            .flat_map(|i| y.iter().map(move |j| (i, j)))
            .map(|(i, j)| self.mul(i, j))
            .collect();
        self.poset.down_closure(raw)
    }

    /// Cartesian product with pointwise order and multiplication. Elements
    /// are named `x.y`, in row-major order `(i, j) -> i * |other| + j`.
    pub fn product(&self, other: &Posemigroup) -> Result<Posemigroup> {
        let (n, m) = (self.len(), other.len());
        let names = (0..n * m)
            .map(|k| format!("{}.{}", self.name(k / m), other.name(k % m)))
            .collect();
        let poset = Poset::from_relation(names, |p, q| {
            self.poset.leq(p / m, q / m) && other.poset.leq(p % m, q % m)
        })?;
        Posemigroup::from_fn(poset, |p, q| {
            self.mul(p / m, q / m) * m + other.mul(p % m, q % m)
        })
    }

    /// First witness that `map` is not a posemigroup morphism into `dst`.
    pub fn check_morphism(&self, map: &[usize], dst: &Posemigroup) -> Verdict<MorphismFailure> {
        if map.len() != self.len() || map.iter().any(|&v| v >= dst.len()) {
            return Verdict::Fail(MorphismFailure::NotTotal);
        }
        if !is_monotone(map, &self.poset, &dst.poset) {
            for x in 0..self.len() {
                for y in self.poset.up_set(x).iter() {
                    if !dst.poset.leq(map[x], map[y]) {
                        return Verdict::Fail(MorphismFailure::NotMonotone { x, y });
                    }
                }
            }
        }
        for x in 0..self.len() {
            for y in 0..self.len() {
                if map[self.mul(x, y)] != dst.mul(map[x], map[y]) {
                    return Verdict::Fail(MorphismFailure::NotMultiplicative { x, y });
                }
            }
        }
        Verdict::Pass
    }
}

/// Bounded free posemigroup over an alphabet: non-empty words up to a fixed
/// length, ordered as an antichain, with concatenation undefined once the
/// result would exceed the bound.
#[derive(Clone, Debug)]
pub struct TruncatedFree {
    words: Vec<Vec<usize>>,
    poset: Poset,
    alphabet: Vec<String>,
    max_len: usize,
}

/// Free marked posemigroup, truncated at `max_word_len`. Its marking is the
/// singleton marking.
pub fn free_marked_posemigroup<S: AsRef<str>>(
    alphabet: &[S],
    max_word_len: usize,
) -> Result<TruncatedFree> {
    free_marked_posemigroup_with_cap(alphabet, max_word_len, DEFAULT_CAP)
}

pub fn free_marked_posemigroup_with_cap<S: AsRef<str>>(
    alphabet: &[S],
    max_word_len: usize,
    cap: usize,
) -> Result<TruncatedFree> {
    let k = alphabet.len();
    let size: usize = (1..=max_word_len)
        .map(|l| k.saturating_pow(l as u32))
        .fold(0usize, usize::saturating_add);
    if size > cap {
        return Err(Error::CapExceeded { size, cap });
    }
    let mut words: Vec<Vec<usize>> = Vec::with_capacity(size);
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_word_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..k).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    let alphabet: Vec<String> = alphabet.iter().map(|s| s.as_ref().to_string()).collect();
    let names: Vec<String> = words
        .iter()
        .map(|w| w.iter().map(|&c| alphabet[c].as_str()).collect())
        .collect();
    let poset = Poset::from_relation(names, |x, y| x == y)?;
    Ok(TruncatedFree {
        words,
        poset,
        alphabet,
        max_len: max_word_len,
    })
}

impl TruncatedFree {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    /// Concatenation, or `None` when the result is longer than the bound.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        let mut w = self.words[x].clone();
        w.extend_from_slice(&self.words[y]);
        self.words.iter().position(|v| *v == w)
    }

    /// True if some product falls outside the truncation.
    pub fn is_truncated(&self) -> bool {
        self.words.iter().any(|w| 2 * w.len() > self.max_len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn three() -> Posemigroup {
        let p = Poset::new(["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap();
        Posemigroup::from_named_rows(p, &[["a", "c", "c"], ["a", "c", "c"], ["a", "c", "c"]])
            .unwrap()
    }

    fn set(sg: &Posemigroup, names: &[&str]) -> Subset {
        names.iter().map(|n| sg.poset().index_of(n).unwrap()).collect()
    }

    #[test]
    fn example_tables_validate() {
        let s = three();
        assert_eq!(s.identity(), None);
        assert_eq!(s.mul(0, 1), 2);
        let names: Vec<String> = (0..8).map(|i| format!("s{i}")).collect();
        let b3 = Poset::from_relation(names, |x, y| x & !y == 0).unwrap();
        let inter = Posemigroup::from_fn(b3, |x, y| x & y).unwrap();
        assert_eq!(inter.identity(), Some(7));
        assert_eq!(inter.opt_elements().len(), 8);
    }

    #[test]
    fn invalid_tables_report_witnesses() {
        // Brute-force oracle over all triples decides which failure comes first.
        let p = Poset::new(["x", "y"], &[("x", "y")]).unwrap();
        let t = [[1usize, 0], [0, 0]];
        let assoc_fails = (0..2).any(|x| {
            (0..2).any(|y| (0..2).any(|z| t[t[x][y]][z] != t[x][t[y][z]]))
        });
        assert!(assoc_fails);
        let err = Posemigroup::new(p.clone(), t.iter().map(|r| r.to_vec()).collect()).unwrap_err();
        assert!(matches!(err, Error::AssociativityViolation { .. }), "{err:?}");

        // Z/2 under addition is associative, but 0 < 1 gives 0+1 = 1 !<= 1+1 = 0.
        let q = Poset::new(["x", "y"], &[("x", "y")]).unwrap();
        let err = Posemigroup::from_fn(q, |a, b| a ^ b).unwrap_err();
        assert!(matches!(err, Error::CompatibilityViolation { .. }), "{err:?}");

        assert!(matches!(
            Posemigroup::new(p, vec![vec![0]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn translation_examples() {
        let s = three();
        let bc = set(&s, &["b", "c"]);
        assert_eq!(s.translate(OptElement::Identity, bc, OptElement::Identity), bc);
        assert_eq!(
            s.translate(OptElement::Elem(0), bc, OptElement::Identity),
            set(&s, &["c"])
        );
    }

    #[test]
    fn set_product_examples() {
        let s = three();
        let a = set(&s, &["a"]);
        assert!(s.set_product(Subset::EMPTY, a).is_empty());
        assert!(s.set_product(a, Subset::EMPTY).is_empty());
        assert_eq!(s.set_product(a, a).set(), s.poset().carrier());
        for x in 0..3 {
            for y in 0..3 {
                let px = s.poset().principal(x).set();
                let py = s.poset().principal(y).set();
                assert_eq!(s.set_product(px, py), s.poset().principal(s.mul(x, y)));
            }
        }
    }

    #[test]
    fn translation_composes() {
        let s = three();
        for g in Subset::all(3) {
            for (a, b) in s.opt_pairs() {
                for (c, d) in s.opt_pairs() {
                    let inner = s.translate(c, g, d);
                    assert_eq!(
                        s.translate(a, inner, b),
                        s.translate(s.compose_opt(a, c), g, s.compose_opt(d, b))
                    );
                }
            }
        }
    }

    #[test]
    fn set_product_is_monotone_and_associative() {
        let s = three();
        let ls = s.poset().lower_sets().unwrap();
        for &x in &ls {
            for &y in &ls {
                for &z in &ls {
                    let xy = s.set_product(x.set(), y.set());
                    let yz = s.set_product(y.set(), z.set());
                    assert_eq!(s.set_product(xy.set(), z.set()), s.set_product(x.set(), yz.set()));
                    if x.is_subset_of(y) {
                        assert!(s.set_product(x.set(), z.set()).is_subset_of(s.set_product(y.set(), z.set())));
                        assert!(s.set_product(z.set(), x.set()).is_subset_of(s.set_product(z.set(), y.set())));
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_chain_validates() {
        let s = three();
        let chain = Poset::new(["0", "1"], &[("0", "1")]).unwrap();
        let two = Posemigroup::from_fn(chain, |x, y| x.min(y)).unwrap();
        let p = s.product(&two).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.name(1), "a.1");
        // Projections are posemigroup morphisms.
        let pr1: Vec<usize> = (0..6).map(|k| k / 2).collect();
        let pr2: Vec<usize> = (0..6).map(|k| k % 2).collect();
        assert!(p.check_morphism(&pr1, &s).is_pass());
        assert!(p.check_morphism(&pr2, &two).is_pass());
    }

    #[test]
    fn morphism_failures() {
        let s = three();
        assert!(s.check_morphism(&[0, 1, 2], &s).is_pass());
        // b·b = c, so the constant map to b is not multiplicative.
        assert_eq!(
            s.check_morphism(&[1, 1, 1], &s),
            Verdict::Fail(MorphismFailure::NotMultiplicative { x: 0, y: 0 })
        );
        assert_eq!(s.check_morphism(&[0, 1], &s), Verdict::Fail(MorphismFailure::NotTotal));
    }

    #[test]
    fn truncated_free_posemigroup() {
        let f = free_marked_posemigroup(&["x"], 3).unwrap();
        assert_eq!(f.poset().names(), ["x", "xx", "xxx"]);
        assert!(f.poset().hasse().is_empty());
        assert_eq!(f.mul(1, 0), Some(2));
        assert_eq!(f.mul(1, 1), None);
        assert!(f.is_truncated());
        assert!(!f.poset().leq(1, 0));
        assert!(matches!(
            free_marked_posemigroup(&["x", "y"], 4),
            Err(Error::CapExceeded { size: 30, .. })
        ));
    }
}
