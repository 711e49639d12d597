//! Finite posets: validated orders, lower sets, joins and meets, Hasse covers.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_CARRIER};

/// Default bound on carriers whose full subset lattice is enumerated.
pub const DEFAULT_CAP: usize = 16;

/// A subset that is closed downward in its poset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LowerSet(Subset);

impl LowerSet {
    pub const EMPTY: LowerSet = LowerSet(Subset::EMPTY);

    pub fn set(self) -> Subset {
        self.0
    }

    pub fn union(self, other: LowerSet) -> LowerSet {
        LowerSet(self.0.union(other.0))
    }

    pub fn intersection(self, other: LowerSet) -> LowerSet {
        LowerSet(self.0.intersection(other.0))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn is_subset_of(self, other: LowerSet) -> bool {
        self.0.is_subset_of(other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }

    pub fn len(self) -> usize {
        self.0.len()
    }
}

impl From<LowerSet> for Subset {
    fn from(l: LowerSet) -> Subset {
        l.0
    }
}

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    /// `down[x]` = { y | y <= x }
    down: Vec<Subset>,
    /// `up[x]` = { y | x <= y }
    up: Vec<Subset>,
    /// Position of each element when names are sorted.
    name_rank: Vec<usize>,
    cap: usize,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.down == other.down
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from declared names and generating pairs `(lower, upper)`.
    ///
    /// The order is the reflexive-transitive closure of the pairs. A cycle
    /// through distinct elements is rejected with the cycle as witness.
    pub fn new<N, S>(names: N, pairs: &[(S, S)]) -> Result<Self>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let index = index_names(&names)?;
        let n = names.len();
        let mut edges = vec![Vec::new(); n];
        for (lo, hi) in pairs {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            if lo != hi {
                edges[lo].push(hi);
            }
        }
        // up[x] by BFS over the generator graph.
        let mut up = vec![Subset::EMPTY; n];
        for (x, slot) in up.iter_mut().enumerate() {
            let mut seen = Subset::singleton(x);
            let mut queue = VecDeque::from([x]);
            while let Some(v) = queue.pop_front() {
                for &w in &edges[v] {
                    if !seen.contains(w) {
                        seen.insert(w);
                        queue.push_back(w);
                    }
                }
            }
            *slot = seen;
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    let mut cycle = path(&edges, x, y);
                    cycle.extend(path(&edges, y, x).into_iter().skip(1));
                    return Err(Error::AntisymmetryViolation {
                        cycle: cycle.into_iter().map(|i| names[i].clone()).collect(),
                    });
                }
            }
        }
        Ok(Self::assemble(names, index, up))
    }

    /// Builds a poset from a full order relation, which must already be a
    /// partial order.
    pub fn from_relation<F>(names: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let index = index_names(&names)?;
        let n = names.len();
        let up: Vec<Subset> = (0..n)
            .map(|x| (0..n).filter(|&y| leq(x, y)).collect())
            .collect();
        for x in 0..n {
            if !up[x].contains(x) {
                return Err(Error::InvalidMap(format!(
                    "relation is not reflexive at `{}`",
                    names[x]
                )));
            }
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(Error::AntisymmetryViolation {
                        cycle: vec![names[x].clone(), names[y].clone(), names[x].clone()],
                    });
                }
                if !up[y].is_subset_of(up[x]) {
                    let z = up[y].difference(up[x]).first().unwrap();
                    return Err(Error::InvalidMap(format!(
                        "relation is not transitive: {} <= {} <= {}",
                        names[x], names[y], names[z]
                    )));
                }
            }
        }
        Ok(Self::assemble(names, index, up))
    }

    fn assemble(names: Vec<String>, index: HashMap<String, usize>, up: Vec<Subset>) -> Self {
        let n = names.len();
        let mut down = vec![Subset::EMPTY; n];
        for (x, ups) in up.iter().enumerate() {
            for y in ups.iter() {
                down[y].insert(x);
            }
        }
        let mut sorted: Vec<usize> = (0..n).collect();
        sorted.sort_by(|&a, &b| names[a].cmp(&names[b]));
        let mut name_rank = vec![0; n];
        for (rank, &i) in sorted.iter().enumerate() {
            name_rank[i] = rank;
        }
        Poset {
            names,
            index,
            down,
            up,
            name_rank,
            cap: DEFAULT_CAP,
        }
    }

    /// Sets the subset-enumeration cap used by [`Poset::lower_sets`] and
    /// every exhaustive check built on top of this poset.
    #[must_use]
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn ensure_within_cap(&self) -> Result<()> {
        if self.len() > self.cap || self.len() >= MAX_CARRIER {
            Err(Error::CapExceeded {
                size: self.len(),
                cap: self.cap.min(MAX_CARRIER - 1),
            })
        } else {
            Ok(())
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x↓`
    pub fn principal(&self, x: usize) -> LowerSet {
        LowerSet(self.down[x])
    }

    /// `x↑`
    pub fn up_set(&self, x: usize) -> Subset {
        self.up[x]
    }

    pub fn down_closure(&self, x: Subset) -> LowerSet {
        LowerSet(x.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.down[i])))
    }

    pub fn up_closure(&self, x: Subset) -> Subset {
        x.iter().fold(Subset::EMPTY, |acc, i| acc.union(self.up[i]))
    }

    pub fn is_lower(&self, x: Subset) -> bool {
        x.iter().all(|i| self.down[i].is_subset_of(x))
    }

    /// Wraps `x` as a lower set if it is one.
    pub fn lower_set(&self, x: Subset) -> Option<LowerSet> {
        self.is_lower(x).then_some(LowerSet(x))
    }

    pub fn upper_bounds(&self, x: Subset) -> Subset {
        x.iter().fold(self.carrier(), |acc, i| acc.intersection(self.up[i]))
    }

    pub fn lower_bounds(&self, x: Subset) -> Subset {
        x.iter().fold(self.carrier(), |acc, i| acc.intersection(self.down[i]))
    }

    /// Least element of `x`, if `x` has one.
    pub fn least_of(&self, x: Subset) -> Option<usize> {
        x.iter().find(|&u| x.is_subset_of(self.up[u]))
    }

    pub fn greatest_of(&self, x: Subset) -> Option<usize> {
        x.iter().find(|&u| x.is_subset_of(self.down[u]))
    }

    /// Least upper bound of `x`. For `x = ∅` this is the bottom, if any.
    pub fn join(&self, x: Subset) -> Option<usize> {
        self.least_of(self.upper_bounds(x))
    }

    /// Greatest lower bound of `x`. For `x = ∅` this is the top, if any.
    pub fn meet(&self, x: Subset) -> Option<usize> {
        self.greatest_of(self.lower_bounds(x))
    }

    pub fn bottom(&self) -> Option<usize> {
        self.join(Subset::EMPTY)
    }

    pub fn top(&self) -> Option<usize> {
        self.meet(Subset::EMPTY)
    }

    pub fn is_chain(&self, x: Subset) -> bool {
        x.iter()
            .all(|a| x.is_subset_of(self.up[a].union(self.down[a])))
    }

    /// All lower sets, canonically ordered. Fails if the carrier exceeds the cap.
    pub fn lower_sets(&self) -> Result<Vec<LowerSet>> {
        self.ensure_within_cap()?;
        let mut out: Vec<LowerSet> = Subset::all(self.len())
            .filter(|&s| self.is_lower(s))
            .map(LowerSet)
            .collect();
        out.sort_by(|a, b| self.canonical_cmp(a.set(), b.set()));
        Ok(out)
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in self.up[x].iter() {
                if y != x && self.up[x].intersection(self.down[y]).len() == 2 {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    /// Cardinality first, then lexicographic on the sorted element names.
    pub fn canonical_cmp(&self, a: Subset, b: Subset) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            let key = |s: Subset| {
                let mut r: Vec<usize> = s.iter().map(|i| self.name_rank[i]).collect();
                r.sort_unstable();
                r
            };
            key(a).cmp(&key(b))
        })
    }

    pub fn sort_canonical(&self, sets: &mut [Subset]) {
        sets.sort_by(|a, b| self.canonical_cmp(*a, *b));
    }

    /// All subsets of the carrier in canonical order.
    pub fn subsets_canonical(&self) -> Result<Vec<Subset>> {
        self.ensure_within_cap()?;
        let mut all: Vec<Subset> = Subset::all(self.len()).collect();
        self.sort_canonical(&mut all);
        Ok(all)
    }

    /// Renders a subset as `{a,b}` with names sorted; `{}` for the empty set.
    pub fn set_name(&self, x: Subset) -> String {
        let mut names: Vec<&str> = x.iter().map(|i| self.name(i)).collect();
        names.sort_unstable();
        format!("{{{}}}", names.join(","))
    }

    /// Parses `{a,b}` (or `{}`) against this carrier.
    pub fn parse_set(&self, text: &str) -> Result<Subset> {
        let inner = text
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| Error::UnknownElement(text.to_string()))?;
        inner
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.index_of(s))
            .collect::<Result<Vec<_>>>()
            .map(Subset::from_indices)
    }

    /// Image of a subset under an element map.
    pub fn image(map: &[usize], x: Subset) -> Subset {
        x.iter().map(|i| map[i]).collect()
    }

    /// Preimage of a subset (of the codomain) under an element map.
    pub fn preimage(map: &[usize], y: Subset) -> Subset {
        (0..map.len()).filter(|&i| y.contains(map[i])).collect()
    }
}

/// `x <= y  <=>  f(x) <= f(y)` for all `x, y`.
pub fn is_order_embedding(map: &[usize], src: &Poset, dst: &Poset) -> bool {
    map.len() == src.len()
        && (0..src.len())
            .all(|x| (0..src.len()).all(|y| src.leq(x, y) == dst.leq(map[x], map[y])))
}

pub fn is_monotone(map: &[usize], src: &Poset, dst: &Poset) -> bool {
    (0..src.len()).all(|x| src.up_set(x).iter().all(|y| dst.leq(map[x], map[y])))
}

fn index_names(names: &[String]) -> Result<HashMap<String, usize>> {
    if names.len() >= MAX_CARRIER {
        return Err(Error::CapExceeded {
            size: names.len(),
            cap: MAX_CARRIER - 1,
        });
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_string()))
}

/// Shortest generator path `from -> .. -> to`, inclusive.
fn path(edges: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; edges.len()];
    let mut queue = VecDeque::from([from]);
    prev[from] = from;
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &w in &edges[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut out = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        out.push(cur);
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn three() -> Poset {
        Poset::new(["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap()
    }

    fn five() -> Poset {
        Poset::new(["a", "b", "c", "d", "e"], &[("d", "b"), ("d", "c")]).unwrap()
    }

    fn set(p: &Poset, names: &[&str]) -> Subset {
        names.iter().map(|n| p.index_of(n).unwrap()).collect()
    }

    #[test]
    fn validates_example_poset_with_top() {
        let p = three();
        assert_eq!(p.top(), Some(0));
        assert_eq!(p.bottom(), None);
        assert!(p.lt(1, 0) && p.lt(2, 0) && !p.leq(1, 2));
    }

    #[test]
    fn singleton_and_cycles() {
        let p = Poset::new(["x"], &[] as &[(&str, &str)]).unwrap();
        assert!(p.leq(0, 0));
        let err = Poset::new(["p", "q"], &[("p", "q"), ("q", "p")]).unwrap_err();
        match err {
            Error::AntisymmetryViolation { cycle } => {
                assert_eq!(cycle.first(), cycle.last());
                assert!(cycle.contains(&"p".to_string()) && cycle.contains(&"q".to_string()));
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = Poset::new(["p", "q", "r"], &[("p", "q"), ("q", "r"), ("r", "p")]).unwrap_err();
        assert!(matches!(err, Error::AntisymmetryViolation { ref cycle } if cycle.len() == 4));
        assert_eq!(
            Poset::new(["p"], &[("p", "zz")]).unwrap_err(),
            Error::UnknownElement("zz".into())
        );
        assert_eq!(
            Poset::new(["p", "p"], &[] as &[(&str, &str)]).unwrap_err(),
            Error::DuplicateElement("p".into())
        );
    }

    #[test]
    fn transitive_closure_of_generators() {
        let p = Poset::new(["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.hasse(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn down_closure_examples() {
        let p = five();
        assert_eq!(p.down_closure(set(&p, &["b"])).set(), set(&p, &["b", "d"]));
        assert!(p.down_closure(Subset::EMPTY).is_empty());
        let q = three();
        assert_eq!(q.down_closure(set(&q, &["a"])).set(), q.carrier());
    }

    #[test]
    fn joins_and_meets() {
        let q = three();
        assert_eq!(q.join(set(&q, &["b", "c"])), Some(0));
        assert_eq!(q.join(set(&q, &["b"])), Some(1));
        assert_eq!(q.meet(set(&q, &["b", "c"])), None);
        let p = five();
        assert_eq!(p.join(set(&p, &["b", "c"])), None);
        assert_eq!(p.meet(set(&p, &["b", "c"])), p.index_of("d").ok());
        assert_eq!(p.join(Subset::EMPTY), None);
    }

    #[test]
    fn lower_set_counts() {
        assert_eq!(five().lower_sets().unwrap().len(), 20);
        let q = three();
        let ls = q.lower_sets().unwrap();
        let names: Vec<String> = ls.iter().map(|l| q.set_name(l.set())).collect();
        assert_eq!(names, ["{}", "{b}", "{c}", "{b,c}", "{a,b,c}"]);
        let anti = Poset::new(["p", "q", "r", "s"], &[] as &[(&str, &str)]).unwrap();
        assert_eq!(anti.lower_sets().unwrap().len(), 16);
    }

    #[test]
    fn cap_is_enforced() {
        let names: Vec<String> = (0..17).map(|i| format!("e{i}")).collect();
        let p = Poset::new(names, &[] as &[(&str, &str)]).unwrap();
        assert!(matches!(p.lower_sets(), Err(Error::CapExceeded { size: 17, cap: 16 })));
        assert_eq!(p.clone().with_cap(17).cap(), 17);
    }

    #[test]
    fn hasse_examples() {
        let q = three();
        assert_eq!(q.hasse(), vec![(1, 0), (2, 0)]);
        // Boolean cube B_3 on bitmask names.
        let names: Vec<String> = (0..8).map(|i| format!("s{i}")).collect();
        let b3 = Poset::from_relation(names, |x, y| x & !y == 0).unwrap();
        assert_eq!(b3.hasse().len(), 12);
    }

    #[test]
    fn order_embedding_examples() {
        let q = three();
        assert!(is_order_embedding(&[0, 1, 2], &q, &q));
        let chain = Poset::new(["x", "y"], &[("x", "y")]).unwrap();
        assert!(!is_order_embedding(&[0, 0], &chain, &chain));
    }

    #[test]
    fn set_names_round_trip() {
        let q = three();
        let s = set(&q, &["c", "b"]);
        assert_eq!(q.set_name(s), "{b,c}");
        assert_eq!(q.parse_set("{b, c}").unwrap(), s);
        assert_eq!(q.parse_set("{}").unwrap(), Subset::EMPTY);
        assert!(q.parse_set("{b,zz}").is_err());
    }

    fn random_poset() -> impl Strategy<Value = Poset> {
        (1usize..=7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..12).prop_map(move |pairs| {
                // Orient every pair upward by index so no cycles arise.
                let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                let pairs: Vec<(String, String)> = pairs
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(|(a, b)| (names[a.min(b)].clone(), names[a.max(b)].clone()))
                    .collect();
                Poset::new(names, &pairs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn down_closure_is_a_closure(p in random_poset(), a in any::<u8>(), b in any::<u8>()) {
            let full = p.carrier();
            let x = Subset::from_bits(a as u64).intersection(full);
            let y = Subset::from_bits(b as u64).intersection(full).union(x);
            let dx = p.down_closure(x);
            prop_assert_eq!(p.down_closure(dx.set()), dx);
            prop_assert!(x.is_subset_of(dx.set()));
            prop_assert!(dx.is_subset_of(p.down_closure(y)));
        }

        #[test]
        fn join_is_least_upper_bound(p in random_poset(), a in any::<u8>()) {
            let x = Subset::from_bits(a as u64).intersection(p.carrier());
            if let Some(j) = p.join(x) {
                prop_assert!(x.iter().all(|i| p.leq(i, j)));
                for u in 0..p.len() {
                    if x.iter().all(|i| p.leq(i, u)) {
                        prop_assert!(p.leq(j, u));
                    }
                }
            } else {
                // No element is an upper bound below every other upper bound.
                let ubs: Vec<usize> = (0..p.len()).filter(|&u| x.iter().all(|i| p.leq(i, u))).collect();
                prop_assert!(ubs.iter().all(|&u| ubs.iter().any(|&v| !p.leq(u, v))));
            }
        }

        #[test]
        fn lower_sets_form_a_sublattice(p in random_poset()) {
            let ls = p.lower_sets().unwrap();
            let all: std::collections::HashSet<LowerSet> = ls.iter().copied().collect();
            for &a in &ls {
                for &b in &ls {
                    prop_assert!(all.contains(&a.union(b)));
                    prop_assert!(all.contains(&a.intersection(b)));
                }
            }
        }

        #[test]
        fn hasse_regenerates_order(p in random_poset()) {
            let pairs: Vec<(String, String)> = p
                .hasse()
                .into_iter()
                .map(|(x, y)| (p.name(x).to_string(), p.name(y).to_string()))
                .collect();
            let q = Poset::new(p.names().to_vec(), &pairs).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
