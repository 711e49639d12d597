//! Finite quantales given by an order and a multiplication table.
//!
//! A finite poset is a complete lattice as soon as it has a bottom and all
//! binary joins, and in a finite lattice distributivity over arbitrary joins
//! is the same as distributivity over binary joins plus `a·⊥ = ⊥·a = ⊥`.
//! Every check here relies on that reduction.
//!
//! The carrier is not tied to [`Subset`] width, so quotients of `P(S)` with
//! more than 64 lower sets are still representable.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::order::Poset;
use crate::posemigroup::Posemigroup;
use crate::subset::Subset;
use crate::verdict::Verdict;

/// Largest carrier accepted by [`find_isomorphism`].
pub const ISOMORPHISM_CAP: usize = 24;

#[derive(Clone, Debug)]
pub struct FiniteQuantale {
    labels: Vec<String>,
    sets: Option<Vec<Subset>>,
    set_index: HashMap<Subset, usize>,
    leq: Vec<bool>,
    table: Vec<usize>,
    lattice: OnceLock<Lattice>,
}

#[derive(Clone, Debug)]
struct Lattice {
    join: Vec<Option<usize>>,
    meet: Vec<Option<usize>>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl PartialEq for FiniteQuantale {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.sets == other.sets
            && self.leq == other.leq
            && self.table == other.table
    }
}

impl Eq for FiniteQuantale {}

impl FiniteQuantale {
    /// A candidate quantale. The order must be a partial order and the
    /// table must stay in range; lattice and distributivity laws are left
    /// to [`quantale_axioms`].
    pub fn new<L, M>(labels: Vec<String>, leq: L, mul: M) -> Result<Self>
    where
        L: Fn(usize, usize) -> bool,
        M: Fn(usize, usize) -> usize,
    {
        let n = labels.len();
        let mut rel = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                rel[x * n + y] = leq(x, y);
            }
        }
        for x in 0..n {
            if !rel[x * n + x] {
                return Err(Error::MalformedTable(format!("order is not reflexive at {}", labels[x])));
            }
            for y in 0..n {
                if x != y && rel[x * n + y] && rel[y * n + x] {
                    return Err(Error::AntisymmetryViolation {
                        cycle: vec![labels[x].clone(), labels[y].clone(), labels[x].clone()],
                    });
                }
                for z in 0..n {
                    if rel[x * n + y] && rel[y * n + z] && !rel[x * n + z] {
                        return Err(Error::MalformedTable(format!(
                            "order is not transitive at {} <= {} <= {}",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let v = mul(x, y);
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "product of {} and {} is out of range",
                        labels[x], labels[y]
                    )));
                }
                table.push(v);
            }
        }
        Ok(FiniteQuantale {
            labels,
            sets: None,
            set_index: HashMap::new(),
            leq: rel,
            table,
            lattice: OnceLock::new(),
        })
    }

    /// A quantale whose elements are subsets of `poset`'s carrier, ordered
    /// by inclusion and labelled by their canonical names. `mul` receives
    /// the two subsets and must return one of them.
    pub fn from_sets<M>(poset: &Poset, sets: Vec<Subset>, mul: M) -> Result<Self>
    where
        M: Fn(Subset, Subset) -> Subset,
    {
        let set_index: HashMap<Subset, usize> =
            sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        if set_index.len() != sets.len() {
            return Err(Error::MalformedTable("repeated carrier set".into()));
        }
        let mut table = Vec::with_capacity(sets.len() * sets.len());
        for &x in &sets {
            for &y in &sets {
                let z = mul(x, y);
                let &k = set_index.get(&z).ok_or_else(|| {
                    Error::MalformedTable(format!("product {} is not in the carrier", poset.set_name(z)))
                })?;
                table.push(k);
            }
        }
        let n = sets.len();
        let mut leq = vec![false; n * n];
        for (i, &x) in sets.iter().enumerate() {
            for (j, &y) in sets.iter().enumerate() {
                leq[i * n + j] = x.is_subset_of(y);
            }
        }
        Ok(FiniteQuantale {
            labels: sets.iter().map(|&s| poset.set_name(s)).collect(),
            sets: Some(sets),
            set_index,
            leq,
            table,
            lattice: OnceLock::new(),
        })
    }

    /// The posemigroup itself, read as a candidate quantale.
    pub fn from_posemigroup(sg: &Posemigroup) -> Self {
        let p = sg.poset();
        FiniteQuantale::new(p.names().to_vec(), |x, y| p.leq(x, y), |x, y| sg.mul(x, y))
            .expect("a posemigroup order is a partial order")
    }

    /// Forgets the lattice structure. Needs at most 64 elements.
    pub fn to_posemigroup(&self) -> Result<Posemigroup> {
        let p = Poset::from_relation(self.labels.clone(), |x, y| self.leq(x, y))?;
        Posemigroup::from_fn(p, |x, y| self.mul(x, y))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Underlying subsets, when built by [`FiniteQuantale::from_sets`].
    pub fn sets(&self) -> Option<&[Subset]> {
        self.sets.as_deref()
    }

    pub fn set(&self, i: usize) -> Option<Subset> {
        self.sets.as_ref().map(|s| s[i])
    }

    pub fn index_of_set(&self, s: Subset) -> Option<usize> {
        self.set_index.get(&s).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.len() + y]
    }

    /// Overwrites one table entry. Used to build corrupted candidates.
    pub fn set_mul(&mut self, x: usize, y: usize, v: usize) {
        assert!(v < self.len());
        let n = self.len();
        self.table[x * n + y] = v;
    }

    fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| {
            let n = self.len();
            let least = |cands: Vec<usize>| {
                cands
                    .iter()
                    .copied()
                    .find(|&z| cands.iter().all(|&w| self.leq(z, w)))
            };
            let greatest = |cands: Vec<usize>| {
                cands
                    .iter()
                    .copied()
                    .find(|&z| cands.iter().all(|&w| self.leq(w, z)))
            };
            let mut join = Vec::with_capacity(n * n);
            let mut meet = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    join.push(least((0..n).filter(|&z| self.leq(x, z) && self.leq(y, z)).collect()));
                    meet.push(greatest((0..n).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect()));
                }
            }
            Lattice {
                join,
                meet,
                bottom: least((0..n).collect()),
                top: greatest((0..n).collect()),
            }
        })
    }

    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        self.lattice().join[x * self.len() + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.lattice().meet[x * self.len() + y]
    }

    pub fn bottom(&self) -> Option<usize> {
        self.lattice().bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.lattice().top
    }

    /// Join of a family; the empty family gives the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> Option<usize> {
        xs.into_iter()
            .try_fold(self.bottom()?, |acc, x| self.join(acc, x))
    }

    /// Cover pairs `(x, y)`, sorted by index.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |x: usize, y: usize| x != y && self.leq(x, y);
        let mut edges = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    pub fn is_order_embedding(&self, map: &[usize], dst: &FiniteQuantale) -> bool {
        map.len() == self.len()
            && (0..self.len()).all(|x| {
                (0..self.len()).all(|y| self.leq(x, y) == dst.leq(map[x], map[y]))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaleFailure {
    NoBottom,
    NoTop,
    MissingJoin { x: usize, y: usize },
    MissingMeet { x: usize, y: usize },
    NotAssociative { x: usize, y: usize, z: usize },
    /// `a·(x ∨ y) != a·x ∨ a·y`
    LeftDistributivity { a: usize, x: usize, y: usize },
    /// `(x ∨ y)·a != x·a ∨ y·a`
    RightDistributivity { a: usize, x: usize, y: usize },
    /// `a·⊥` or `⊥·a` is not `⊥`.
    BottomNotAbsorbing { a: usize },
}

/// Complete lattice, associativity, binary distributivity on both sides,
/// and absorbing bottom.
pub fn quantale_axioms(q: &FiniteQuantale) -> Verdict<QuantaleFailure> {
    let n = q.len();
    let Some(bot) = q.bottom() else {
        return Verdict::Fail(QuantaleFailure::NoBottom);
    };
    if q.top().is_none() {
        return Verdict::Fail(QuantaleFailure::NoTop);
    }
    for x in 0..n {
        for y in 0..n {
            if q.join(x, y).is_none() {
                return Verdict::Fail(QuantaleFailure::MissingJoin { x, y });
            }
            if q.meet(x, y).is_none() {
                return Verdict::Fail(QuantaleFailure::MissingMeet { x, y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if q.mul(q.mul(x, y), z) != q.mul(x, q.mul(y, z)) {
                    return Verdict::Fail(QuantaleFailure::NotAssociative { x, y, z });
                }
            }
        }
    }
    for a in 0..n {
        if q.mul(a, bot) != bot || q.mul(bot, a) != bot {
            return Verdict::Fail(QuantaleFailure::BottomNotAbsorbing { a });
        }
        for x in 0..n {
            for y in x + 1..n {
                let j = q.join(x, y).unwrap();
                if q.mul(a, j) != q.join(q.mul(a, x), q.mul(a, y)).unwrap() {
                    return Verdict::Fail(QuantaleFailure::LeftDistributivity { a, x, y });
                }
                if q.mul(j, a) != q.join(q.mul(x, a), q.mul(y, a)).unwrap() {
                    return Verdict::Fail(QuantaleFailure::RightDistributivity { a, x, y });
                }
            }
        }
    }
    Verdict::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuantaleMorphismFailure {
    NotTotal,
    NotMultiplicative { x: usize, y: usize },
    JoinNotPreserved { x: usize, y: usize },
    BottomNotPreserved,
}

/// Multiplication, binary joins and bottom are preserved. Both sides are
/// assumed to pass [`quantale_axioms`].
pub fn check_quantale_morphism(
    map: &[usize],
    src: &FiniteQuantale,
    dst: &FiniteQuantale,
) -> Verdict<QuantaleMorphismFailure> {
    let n = src.len();
    if map.len() != n || map.iter().any(|&y| y >= dst.len()) {
        return Verdict::Fail(QuantaleMorphismFailure::NotTotal);
    }
    if src.bottom().map(|b| map[b]) != dst.bottom() {
        return Verdict::Fail(QuantaleMorphismFailure::BottomNotPreserved);
    }
    for x in 0..n {
        for y in 0..n {
            if map[src.mul(x, y)] != dst.mul(map[x], map[y]) {
                return Verdict::Fail(QuantaleMorphismFailure::NotMultiplicative { x, y });
            }
            if src.join(x, y).map(|j| map[j]) != dst.join(map[x], map[y]) {
                return Verdict::Fail(QuantaleMorphismFailure::JoinNotPreserved { x, y });
            }
        }
    }
    Verdict::Pass
}

/// Order invariants used to prune the isomorphism search.
fn invariants(q: &FiniteQuantale) -> Vec<(usize, usize, usize, bool)> {
    let n = q.len();
    let mut height = vec![0usize; n];
    // Longest strict chain ending at each element; elements sorted by the
    // size of their down-set form a linear extension.
    let down: Vec<usize> = (0..n).map(|x| (0..n).filter(|&y| q.leq(y, x)).count()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| down[x]);
    for &x in &order {
        height[x] = (0..n)
            .filter(|&y| y != x && q.leq(y, x))
            .map(|y| height[y] + 1)
            .max()
            .unwrap_or(0);
    }
    (0..n)
        .map(|x| {
            let up = (0..n).filter(|&y| q.leq(x, y)).count();
            (down[x], up, height[x], q.mul(x, x) == x)
        })
        .collect()
}

/// A bijection preserving and reflecting the order and preserving the
/// multiplication, or `None`.
pub fn find_isomorphism(q1: &FiniteQuantale, q2: &FiniteQuantale) -> Result<Option<Vec<usize>>> {
    for q in [q1, q2] {
        if q.len() > ISOMORPHISM_CAP {
            return Err(Error::CapExceeded { size: q.len(), cap: ISOMORPHISM_CAP });
        }
    }
    if q1.len() != q2.len() {
        return Ok(None);
    }
    let n = q1.len();
    let (inv1, inv2) = (invariants(q1), invariants(q2));
    let mut s1 = inv1.clone();
    let mut s2 = inv2.clone();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return Ok(None);
    }
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|x| (0..n).filter(|&y| inv1[x] == inv2[y]).collect())
        .collect();
    // Most constrained elements first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (candidates[x].len(), x));

    struct Search<'a> {
        q1: &'a FiniteQuantale,
        q2: &'a FiniteQuantale,
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        map: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn consistent(&self, x: usize, y: usize) -> bool {
            for (z, &mz) in self.map.iter().enumerate() {
                let Some(w) = mz else { continue };
                if self.q1.leq(x, z) != self.q2.leq(y, w) || self.q1.leq(z, x) != self.q2.leq(w, y) {
                    return false;
                }
                for (a, b, fa, fb) in [(x, z, y, w), (z, x, w, y)] {
                    if let Some(p) = self.map[self.q1.mul(a, b)] {
                        if p != self.q2.mul(fa, fb) {
                            return false;
                        }
                    }
                }
            }
            match self.map[self.q1.mul(x, x)] {
                Some(p) => p == self.q2.mul(y, y),
                None => self.q1.mul(x, x) != x || self.q2.mul(y, y) == y,
            }
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let x = self.order[depth];
            for k in 0..self.candidates[x].len() {
                let y = self.candidates[x][k];
                if self.used[y] || !self.consistent(x, y) {
                    continue;
                }
                self.map[x] = Some(y);
                self.used[y] = true;
                if self.run(depth + 1) {
                    return true;
                }
                self.map[x] = None;
                self.used[y] = false;
            }
            false
        }
    }

    let mut search = Search {
        q1,
        q2,
        order,
        candidates,
        map: vec![None; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let map: Vec<usize> = search.map.into_iter().map(|m| m.unwrap()).collect();
    debug_assert!(q1.is_order_embedding(&map, q2));
    debug_assert!((0..n).all(|x| (0..n).all(|y| map[q1.mul(x, y)] == q2.mul(map[x], map[y]))));
    Ok(Some(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chain(n: usize) -> FiniteQuantale {
        let labels = (0..n).map(|i| i.to_string()).collect();
        FiniteQuantale::new(labels, |x, y| x <= y, |x, y| x.min(y)).unwrap()
    }

    fn powerset(k: usize) -> FiniteQuantale {
        let n = 1usize << k;
        let labels = (0..n).map(|i| format!("{i:0k$b}")).collect();
        FiniteQuantale::new(labels, |x, y| x & !y == 0, |x, y| x & y).unwrap()
    }

    #[test]
    fn chains_and_powersets_are_quantales() {
        for n in 1..5 {
            assert!(quantale_axioms(&chain(n)).is_pass());
        }
        for k in 0..4 {
            assert!(quantale_axioms(&powerset(k)).is_pass());
        }
    }

    #[test]
    fn lattice_operations_on_the_cube() {
        let q = powerset(3);
        assert_eq!(q.join(0b001, 0b010), Some(0b011));
        assert_eq!(q.meet(0b011, 0b110), Some(0b010));
        assert_eq!(q.bottom(), Some(0));
        assert_eq!(q.top(), Some(7));
        assert_eq!(q.join_all([]), Some(0));
        assert_eq!(q.join_all([1, 2, 4]), Some(7));
        assert_eq!(q.hasse().len(), 12);
    }

    #[test]
    fn corrupted_entry_is_caught() {
        let mut q = powerset(2);
        q.set_mul(0b01, 0b10, 0b11);
        assert!(!quantale_axioms(&q).is_pass());
        // Bumping ⊥·⊥ keeps associativity on a 2-chain but breaks absorption.
        let mut q = chain(2);
        q.set_mul(0, 0, 1);
        assert!(matches!(
            quantale_axioms(&q),
            Verdict::Fail(QuantaleFailure::NotAssociative { .. } | QuantaleFailure::BottomNotAbsorbing { .. })
        ));
    }

    #[test]
    fn missing_structure_is_reported() {
        let anti = FiniteQuantale::new(vec!["p".into(), "q".into()], |x, y| x == y, |x, _| x).unwrap();
        assert_eq!(quantale_axioms(&anti), Verdict::Fail(QuantaleFailure::NoBottom));
        assert!(matches!(
            FiniteQuantale::new(vec!["p".into(), "q".into()], |_, _| true, |x, _| x),
            Err(Error::AntisymmetryViolation { .. })
        ));
    }

    #[test]
    fn isomorphism_search() {
        let q = powerset(2);
        assert_eq!(find_isomorphism(&q, &q).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(find_isomorphism(&chain(2), &chain(3)).unwrap(), None);
        // Same lattice, different multiplication.
        let m = FiniteQuantale::new(
            (0..4).map(|i| i.to_string()).collect(),
            |x, y| x & !y == 0,
            |x, y| if x == 0 || y == 0 { 0 } else { 3 },
        )
        .unwrap();
        assert!(quantale_axioms(&m).is_pass());
        assert_eq!(find_isomorphism(&q, &m).unwrap(), None);
        // Relabelled chain.
        let rev = FiniteQuantale::new(
            (0..3).map(|i| i.to_string()).collect(),
            |x, y| x >= y,
            |x, y| x.max(y),
        )
        .unwrap();
        assert_eq!(find_isomorphism(&chain(3), &rev).unwrap(), Some(vec![2, 1, 0]));
        assert!(matches!(
            find_isomorphism(&chain(25), &chain(25)),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn morphism_checks() {
        let two = chain(2);
        let cube = powerset(2);
        // Indicator of the top element is a meet- and join-preserving map
        // only when it also sends ⊥ to ⊥ and is multiplicative.
        let f = [0, 0, 0, 1];
        assert_eq!(
            check_quantale_morphism(&f, &cube, &two),
            Verdict::Fail(QuantaleMorphismFailure::JoinNotPreserved { x: 1, y: 2 })
        );
        let g = [0, 1, 0, 1];
        assert!(check_quantale_morphism(&g, &cube, &two).is_pass());
        assert_eq!(
            check_quantale_morphism(&[1, 1, 1, 1], &cube, &two),
            Verdict::Fail(QuantaleMorphismFailure::BottomNotPreserved)
        );
    }

    #[test]
    fn posemigroup_round_trip() {
        let q = powerset(2);
        let sg = q.to_posemigroup().unwrap();
        assert_eq!(FiniteQuantale::from_posemigroup(&sg), q);
    }

    fn relabel(q: &FiniteQuantale, perm: &[usize]) -> FiniteQuantale {
        // New element perm[i] plays the role of old element i.
        let n = q.len();
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        FiniteQuantale::new(
            (0..n).map(|i| q.label(inv[i]).to_string()).collect(),
            |x, y| q.leq(inv[x], inv[y]),
            |x, y| perm[q.mul(inv[x], inv[y])],
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn relabelling_is_found_both_ways(perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle()) {
            let q = powerset(3);
            let r = relabel(&q, &perm);
            let there = find_isomorphism(&q, &r).unwrap();
            let back = find_isomorphism(&r, &q).unwrap();
            prop_assert!(there.is_some() && back.is_some());
            let m = there.unwrap();
            prop_assert!(q.is_order_embedding(&m, &r));
            prop_assert!(check_quantale_morphism(&m, &q, &r).is_pass());
        }
    }
}
