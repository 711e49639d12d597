//! Markings: families of admissible subsets closed under two-sided
//! translation, marked posemigroups, and the marked-quantale conditions.
//!
//! Predicate markings are never materialized unless an exhaustive pass asks
//! for the admissible family; decisions are memoized per marked posemigroup,
//! since `D`-admissibility depends on the multiplication.
//!
//! For a finite carrier the countable and `κ`-small families collapse to
//! [`Marking::Full`], and "finite non-empty" to [`Marking::CardLe`] with
//! `n = |S|`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::posemigroup::{MorphismFailure, OptElement, Posemigroup};
use crate::subset::Subset;
use crate::verdict::Verdict;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Marking {
    /// `{ {x} | x ∈ S }`: every posemigroup.
    Singletons,
    /// Every subset, including `∅`.
    Full,
    /// Subsets whose join exists and is preserved by all two-sided
    /// translations; includes `∅` exactly when a bottom absorbs every
    /// translation.
    D,
    /// Non-empty subsets with at most `n` elements.
    CardLe(usize),
    /// Non-empty chains.
    Chains,
    /// Non-empty subsets in which every pair has an upper bound inside.
    Directed,
    /// Non-empty subsets with an upper bound in `S`.
    Bounded,
    /// `{ {a, b} | a <= b }`.
    BoundedPairs,
    /// Exactly the listed subsets.
    Explicit(BTreeSet<Subset>),
}

impl Marking {
    /// The singletons together with the listed subsets.
    pub fn singletons_plus<I: IntoIterator<Item = Subset>>(n: usize, sets: I) -> Marking {
        let mut all: BTreeSet<Subset> = (0..n).map(Subset::singleton).collect();
        all.extend(sets);
        Marking::Explicit(all)
    }

    /// Admissibility decided from the kind alone.
    fn decide(&self, sg: &Posemigroup, m: Subset) -> bool {
        let p = sg.poset();
        match self {
            Marking::Singletons => m.len() == 1,
            Marking::Full => true,
            Marking::D => is_d_admissible(sg, m),
            Marking::CardLe(n) => !m.is_empty() && m.len() <= *n,
            Marking::Chains => !m.is_empty() && p.is_chain(m),
            Marking::Directed => {
                !m.is_empty()
                    && m.iter().all(|x| {
                        m.iter()
                            .all(|y| !p.up_set(x).intersection(p.up_set(y)).intersection(m).is_empty())
                    })
            }
            Marking::Bounded => !m.is_empty() && !p.upper_bounds(m).is_empty(),
            Marking::BoundedPairs => m.len() == 1 || (m.len() == 2 && p.is_chain(m)),
            Marking::Explicit(sets) => sets.contains(&m),
        }
    }

    pub fn describe(&self, sg: &Posemigroup) -> String {
        match self {
            Marking::Singletons => "singletons".into(),
            Marking::Full => "full".into(),
            Marking::D => "D".into(),
            Marking::CardLe(n) => format!("card<={n}"),
            Marking::Chains => "chains".into(),
            Marking::Directed => "directed".into(),
            Marking::Bounded => "bounded".into(),
            Marking::BoundedPairs => "bounded-pairs".into(),
            Marking::Explicit(sets) => {
                let mut v: Vec<Subset> = sets.iter().copied().collect();
                sg.poset().sort_canonical(&mut v);
                let parts: Vec<String> = v.iter().map(|&s| sg.poset().set_name(s)).collect();
                format!("explicit-only {}", parts.join(" "))
            }
        }
    }
}

/// `M` is `D`-admissible: `⋁M` exists, and for all `a, b ∈ S¹` the join of
/// `aMb` exists and equals `a(⋁M)b`.
pub fn is_d_admissible(sg: &Posemigroup, m: Subset) -> bool {
    d_admissibility_failure(sg, m).is_none()
}

/// `None` if `M` is `D`-admissible; otherwise `Some(None)` when `⋁M` is
/// missing, or the first translation pair that breaks distributivity.
fn d_admissibility_failure(
    sg: &Posemigroup,
    m: Subset,
) -> Option<Option<(OptElement, OptElement)>> {
    let p = sg.poset();
    let Some(j) = p.join(m) else {
        return Some(None);
    };
    sg.opt_pairs()
        .into_iter()
        .find(|&(a, b)| p.join(sg.translate(a, m, b)) != Some(sg.mul_opt(a, j, b)))
        .map(Some)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    /// This singleton is not admissible.
    MissingSingleton(usize),
    /// The translate `left · set · right` is not admissible.
    NotTranslationClosed {
        set: Subset,
        left: OptElement,
        right: OptElement,
    },
}

/// Checks that every singleton is admissible and that admissible sets are
/// closed under two-sided translation by `S¹`. Predicate kinds are checked over every admissible
/// subset, which requires the carrier to be within the cap.
pub fn check_marking_axioms(sg: &Posemigroup, marking: &Marking) -> Result<Verdict<AxiomFailure>> {
    let memo = Memo::default();
    let admissible = |m: Subset| memo.get_or(m, || marking.decide(sg, m));
    if let Some(x) = (0..sg.len()).find(|&x| !admissible(Subset::singleton(x))) {
        return Ok(Verdict::Fail(AxiomFailure::MissingSingleton(x)));
    }
    let family: Vec<Subset> = match marking {
        Marking::Explicit(sets) => sets.iter().copied().collect(),
        _ => sg
            .poset()
            .subsets_canonical()?
            .into_iter()
            .filter(|&m| admissible(m))
            .collect(),
    };
    let pairs = sg.opt_pairs();
    for set in family {
        for &(left, right) in &pairs {
            if !admissible(sg.translate(left, set, right)) {
                return Ok(Verdict::Fail(AxiomFailure::NotTranslationClosed { set, left, right }));
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Default)]
struct Memo(RwLock<HashMap<Subset, bool>>);

impl Memo {
    fn get_or<F: FnOnce() -> bool>(&self, m: Subset, decide: F) -> bool {
        if let Some(&v) = self.0.read().unwrap().get(&m) {
            return v;
        }
        let v = decide();
        self.0.write().unwrap().insert(m, v);
        v
    }
}

/// A posemigroup together with a valid marking.
pub struct MarkedPosemigroup {
    sg: Posemigroup,
    marking: Marking,
    memo: Memo,
    admissible: OnceLock<Vec<Subset>>,
}

impl Clone for MarkedPosemigroup {
    fn clone(&self) -> Self {
        MarkedPosemigroup {
            sg: self.sg.clone(),
            marking: self.marking.clone(),
            memo: Memo::default(),
            admissible: self.admissible.clone(),
        }
    }
}

impl fmt::Debug for MarkedPosemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MarkedPosemigroup")
            .field("sg", &self.sg)
            .field("marking", &self.marking)
            .finish()
    }
}

impl MarkedPosemigroup {
    /// Validates the marking against `sg`: explicit subsets must lie in the
    /// carrier, `∅` may only be listed when `sg` has a bottom, and the marking axioms
    /// must hold.
    pub fn new(sg: Posemigroup, marking: Marking) -> Result<Self> {
        match &marking {
            Marking::Explicit(sets) => {
                if sets.iter().any(|s| !s.is_subset_of(sg.poset().carrier())) {
                    return Err(Error::InvalidMarking("subset outside the carrier".into()));
                }
                if sets.contains(&Subset::EMPTY) && sg.poset().bottom().is_none() {
                    return Err(Error::InvalidMarking(
                        "the empty set is admissible but there is no bottom".into(),
                    ));
                }
            }
            Marking::CardLe(0) => {
                return Err(Error::InvalidMarking("card<=N needs N >= 1".into()));
            }
            _ => {}
        }
        if let Verdict::Fail(w) = check_marking_axioms(&sg, &marking)? {
            return Err(Error::InvalidMarking(describe_axiom_failure(&sg, &w)));
        }
        Ok(MarkedPosemigroup {
            sg,
            marking,
            memo: Memo::default(),
            admissible: OnceLock::new(),
        })
    }

    pub fn posemigroup(&self) -> &Posemigroup {
        &self.sg
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    pub fn len(&self) -> usize {
        self.sg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sg.is_empty()
    }

    pub fn is_admissible(&self, m: Subset) -> bool {
        self.memo.get_or(m, || self.marking.decide(&self.sg, m))
    }

    /// Every admissible subset, canonically ordered.
    pub fn admissible_sets(&self) -> Result<&[Subset]> {
        if let Some(v) = self.admissible.get() {
            return Ok(v);
        }
        let family: Vec<Subset> = match &self.marking {
            Marking::Explicit(sets) => {
                let mut v: Vec<Subset> = sets.iter().copied().collect();
                self.sg.poset().sort_canonical(&mut v);
                v
            }
            _ => self
                .sg
                .poset()
                .subsets_canonical()?
                .into_iter()
                .filter(|&m| self.is_admissible(m))
                .collect(),
        };
        Ok(self.admissible.get_or_init(|| family))
    }

    /// Every admissible subset paired with its join. Fails if some
    /// admissible subset has no join.
    pub fn admissible_joins(&self) -> Result<Vec<(Subset, usize)>> {
        let p = self.sg.poset();
        self.admissible_sets()?
            .iter()
            .map(|&m| {
                p.join(m)
                    .map(|j| (m, j))
                    .ok_or_else(|| Error::MissingJoin(p.set_name(m)))
            })
            .collect()
    }

    /// Product marking `{ G1 × G2 | Gi admissible, both non-empty }` on the
    /// cartesian product, plus `∅` when both factors admit it. Both
    /// projections are verified as marked morphisms.
    pub fn product(&self, other: &MarkedPosemigroup) -> Result<MarkedProduct> {
        let sg = self.sg.product(&other.sg)?;
        let m = other.len();
        let rect = |g1: Subset, g2: Subset| -> Subset {
            g1.iter()
                .flat_map(|i| g2.iter().map(move |j| i * m + j))
                .collect()
        };
        // `∅ × G` projects to `∅`, not `G`, so the empty rectangle is only
        // kept when both factors admit `∅`.
        let mut sets = BTreeSet::new();
        for &g1 in self.admissible_sets()? {
            for &g2 in other.admissible_sets()? {
                if g1.is_empty() != g2.is_empty() {
                    continue;
                }
                sets.insert(rect(g1, g2));
            }
        }
        let ms = MarkedPosemigroup {
            sg,
            marking: Marking::Explicit(sets),
            memo: Memo::default(),
            admissible: OnceLock::new(),
        };
        if let Verdict::Fail(w) = check_marking_axioms(&ms.sg, &ms.marking)? {
            return Err(Error::InvalidMarking(describe_axiom_failure(&ms.sg, &w)));
        }
        let proj1: Vec<usize> = (0..ms.len()).map(|k| k / m).collect();
        let proj2: Vec<usize> = (0..ms.len()).map(|k| k % m).collect();
        for (proj, target) in [(&proj1, self), (&proj2, other)] {
            if let Verdict::Fail(w) = check_marked_morphism(proj, &ms, target, MorphismLevel::Marked)? {
                return Err(Error::PreconditionFailed(format!(
                    "projection is not a marked morphism: {w:?}"
                )));
            }
        }
        Ok(MarkedProduct { ms, proj1, proj2 })
    }
}

#[derive(Clone, Debug)]
pub struct MarkedProduct {
    pub ms: MarkedPosemigroup,
    pub proj1: Vec<usize>,
    pub proj2: Vec<usize>,
}

/// The singleton marking and the full marking.
pub fn trivial_markings() -> (Marking, Marking) {
    (Marking::Singletons, Marking::Full)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedQuantaleFailure {
    pub set: Subset,
    /// `None` when the join itself is missing.
    pub pair: Option<(OptElement, OptElement)>,
}

/// Every admissible subset has a join preserved by all two-sided
/// translations, i.e. the marking is contained in `D`.
pub fn check_marked_quantale(ms: &MarkedPosemigroup) -> Result<Verdict<MarkedQuantaleFailure>> {
    for &set in ms.admissible_sets()? {
        if let Some(pair) = d_admissibility_failure(&ms.sg, set) {
            return Ok(Verdict::Fail(MarkedQuantaleFailure { set, pair }));
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MorphismLevel {
    /// Monotone and multiplicative.
    Posemigroup,
    /// Additionally sends admissible subsets to admissible subsets.
    Marked,
    /// Additionally preserves joins of admissible subsets.
    MarkedQuantale,
}

pub fn check_marked_morphism(
    map: &[usize],
    src: &MarkedPosemigroup,
    dst: &MarkedPosemigroup,
    level: MorphismLevel,
) -> Result<Verdict<MorphismFailure>> {
    let base = src.sg.check_morphism(map, &dst.sg);
    if !base.is_pass() || level == MorphismLevel::Posemigroup {
        return Ok(base);
    }
    let (sp, dp) = (src.sg.poset(), dst.sg.poset());
    for &set in src.admissible_sets()? {
        let image = crate::order::Poset::image(map, set);
        if !dst.is_admissible(image) {
            return Ok(Verdict::Fail(MorphismFailure::MarkingNotPreserved { set }));
        }
        if level == MorphismLevel::MarkedQuantale {
            let Some(j) = sp.join(set) else {
                return Ok(Verdict::Fail(MorphismFailure::SourceJoinMissing { set }));
            };
            if dp.join(image) != Some(map[j]) {
                return Ok(Verdict::Fail(MorphismFailure::JoinNotPreserved { set }));
            }
        }
    }
    Ok(Verdict::Pass)
}

fn opt_name(sg: &Posemigroup, a: OptElement) -> String {
    match a {
        OptElement::Identity => "1".into(),
        OptElement::Elem(i) => sg.name(i).into(),
    }
}

pub fn describe_axiom_failure(sg: &Posemigroup, w: &AxiomFailure) -> String {
    match w {
        AxiomFailure::MissingSingleton(x) => format!("singleton {{{}}} is not admissible", sg.name(*x)),
        AxiomFailure::NotTranslationClosed { set, left, right } => format!(
            "translate {}·{}·{} = {} is not admissible",
            opt_name(sg, *left),
            sg.poset().set_name(*set),
            opt_name(sg, *right),
            sg.poset().set_name(sg.translate(*left, *set, *right))
        ),
    }
}

pub fn describe_marked_quantale_failure(sg: &Posemigroup, w: &MarkedQuantaleFailure) -> String {
    let name = sg.poset().set_name(w.set);
    match w.pair {
        None => format!("admissible {name} has no join"),
        Some((a, b)) => format!(
            "admissible {name} breaks distributivity at a = {}, b = {}",
            opt_name(sg, a),
            opt_name(sg, b)
        ),
    }
}

pub fn describe_morphism_failure(src: &Posemigroup, dst: &Posemigroup, map: &[usize], w: &MorphismFailure) -> String {
    let p = src.poset();
    match *w {
        MorphismFailure::NotTotal => "map is not total".into(),
        MorphismFailure::NotMonotone { x, y } => format!(
            "not monotone: {} <= {} but {} !<= {}",
            src.name(x),
            src.name(y),
            dst.name(map[x]),
            dst.name(map[y])
        ),
        MorphismFailure::NotMultiplicative { x, y } => format!(
            "not multiplicative at ({}, {}): f({}) = {} but f({})f({}) = {}",
            src.name(x),
            src.name(y),
            src.name(src.mul(x, y)),
            dst.name(map[src.mul(x, y)]),
            src.name(x),
            src.name(y),
            dst.name(dst.mul(map[x], map[y]))
        ),
        MorphismFailure::MarkingNotPreserved { set } => format!(
            "image of admissible {} is not admissible",
            p.set_name(set)
        ),
        MorphismFailure::JoinNotPreserved { set } => {
            format!("join of admissible {} is not preserved", p.set_name(set))
        }
        MorphismFailure::SourceJoinMissing { set } => {
            format!("admissible {} has no join in the source", p.set_name(set))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Poset;

    fn three() -> Posemigroup {
        let p = Poset::new(["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap();
        Posemigroup::from_named_rows(p, &[["a", "c", "c"], ["a", "c", "c"], ["a", "c", "c"]])
            .unwrap()
    }

    /// Boolean cube of subsets of {1,2,3} under intersection:
    /// u=∅, a={1}, b={2}, c={3}, d={1,2}, e={1,3}, f={2,3}, v.
    fn cube() -> Posemigroup {
        let names = ["u", "a", "b", "c", "d", "e", "f", "v"];
        let bits = [0b000u8, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111];
        let p = Poset::from_relation(names.iter().map(|s| s.to_string()).collect(), |x, y| {
            bits[x] & !bits[y] == 0
        })
        .unwrap();
        Posemigroup::from_fn(p, |x, y| bits.iter().position(|&b| b == bits[x] & bits[y]).unwrap())
            .unwrap()
    }

    fn set(sg: &Posemigroup, names: &[&str]) -> Subset {
        names.iter().map(|n| sg.poset().index_of(n).unwrap()).collect()
    }

    #[test]
    fn explicit_marking_membership() {
        let s = cube();
        let a = Marking::singletons_plus(
            8,
            [set(&s, &["b", "c"]), set(&s, &["u", "b"]), set(&s, &["u", "c"])],
        );
        let ms = MarkedPosemigroup::new(s.clone(), a).unwrap();
        assert!(ms.is_admissible(set(&s, &["b", "c"])));
        assert!(ms.is_admissible(set(&s, &["v"])));
        assert!(!ms.is_admissible(set(&s, &["d", "e"])));
        assert!(check_marked_quantale(&ms).unwrap().is_pass());
    }

    #[test]
    fn d_admissibility_examples() {
        let s = three();
        assert!(!is_d_admissible(&s, set(&s, &["b", "c"])));
        assert!(is_d_admissible(&s, set(&s, &["b"])));
        // A quantale: every subset of the Boolean cube, ∅ included, is D-admissible.
        let q = cube();
        assert!(Subset::all(8).all(|m| is_d_admissible(&q, m)));
    }

    #[test]
    fn empty_set_is_d_admissible_only_with_absorbing_bottom() {
        assert!(!is_d_admissible(&three(), Subset::EMPTY));
        // 2-chain with max as multiplication: bottom 0 is not absorbing, 1·0 = 1.
        let p = Poset::new(["0", "1"], &[("0", "1")]).unwrap();
        let join = Posemigroup::from_fn(p.clone(), |x, y| x.max(y)).unwrap();
        assert!(!is_d_admissible(&join, Subset::EMPTY));
        let meet = Posemigroup::from_fn(p, |x, y| x.min(y)).unwrap();
        assert!(is_d_admissible(&meet, Subset::EMPTY));
    }

    #[test]
    fn axiom_checks() {
        let s = three();
        assert!(check_marking_axioms(&s, &Marking::Singletons).unwrap().is_pass());
        let only_bc = Marking::Explicit([set(&s, &["b", "c"])].into_iter().collect());
        assert_eq!(
            check_marking_axioms(&s, &only_bc).unwrap(),
            Verdict::Fail(AxiomFailure::MissingSingleton(0))
        );
        // Not translation closed: a·{b,c}·1 = {c}, fine, but b·{a}... use {a,b}.
        let ab = Marking::singletons_plus(3, [set(&s, &["a", "b"])]);
        let v = check_marking_axioms(&s, &ab).unwrap();
        assert!(matches!(v, Verdict::Fail(AxiomFailure::NotTranslationClosed { .. })));
        assert!(matches!(
            MarkedPosemigroup::new(s.clone(), ab),
            Err(Error::InvalidMarking(_))
        ));
    }

    #[test]
    fn bounded_pairs_on_a_three_chain() {
        let p = Poset::new(["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        let sg = Posemigroup::from_fn(p, |x, y| x.min(y)).unwrap();
        assert!(check_marking_axioms(&sg, &Marking::BoundedPairs).unwrap().is_pass());
        let ms = MarkedPosemigroup::new(sg, Marking::BoundedPairs).unwrap();
        assert!(check_marked_quantale(&ms).unwrap().is_pass());
        // Strictly between singletons and D.
        let n = ms.admissible_sets().unwrap().len();
        assert_eq!(n, 3 + 3);
        let d = MarkedPosemigroup::new(ms.posemigroup().clone(), Marking::D).unwrap();
        assert!(d.admissible_sets().unwrap().len() > n);
    }

    #[test]
    fn builtin_kinds_match_brute_force() {
        let s = three();
        let p = s.poset();
        for m in Subset::all(3) {
            let directed = !m.is_empty()
                && m.iter().all(|x| {
                    m.iter()
                        .all(|y| m.iter().any(|z| p.leq(x, z) && p.leq(y, z)))
                });
            assert_eq!(Marking::Directed.decide(&s, m), directed);
            let chain = !m.is_empty() && m.iter().all(|x| m.iter().all(|y| p.leq(x, y) || p.leq(y, x)));
            assert_eq!(Marking::Chains.decide(&s, m), chain);
        }
        for kind in [
            Marking::Singletons,
            Marking::Full,
            Marking::D,
            Marking::CardLe(2),
            Marking::Chains,
            Marking::Directed,
            Marking::Bounded,
            Marking::BoundedPairs,
        ] {
            assert!(check_marking_axioms(&s, &kind).unwrap().is_pass(), "{kind:?}");
        }
    }

    #[test]
    fn marked_quantale_failures() {
        let s = three();
        let ms = MarkedPosemigroup::new(s.clone(), Marking::Singletons).unwrap();
        assert!(check_marked_quantale(&ms).unwrap().is_pass());
        let bc = set(&s, &["b", "c"]);
        let ms = MarkedPosemigroup::new(s.clone(), Marking::singletons_plus(3, [bc])).unwrap();
        let v = check_marked_quantale(&ms).unwrap();
        assert_eq!(v.witness().map(|w| w.set), Some(bc));
        assert!(v.witness().unwrap().pair.is_some());
    }

    #[test]
    fn empty_explicit_set_needs_bottom() {
        let s = three();
        let m = Marking::singletons_plus(3, [Subset::EMPTY]);
        assert!(matches!(MarkedPosemigroup::new(s, m), Err(Error::InvalidMarking(_))));
        let m = Marking::singletons_plus(8, [Subset::EMPTY]);
        assert!(MarkedPosemigroup::new(cube(), m).is_ok());
    }

    #[test]
    fn marked_morphisms() {
        let s = three();
        let ms = MarkedPosemigroup::new(s.clone(), Marking::D).unwrap();
        for level in [MorphismLevel::Posemigroup, MorphismLevel::Marked, MorphismLevel::MarkedQuantale] {
            assert!(check_marked_morphism(&[0, 1, 2], &ms, &ms, level).unwrap().is_pass());
        }
        assert!(matches!(
            check_marked_morphism(&[1, 1, 1], &ms, &ms, MorphismLevel::Posemigroup).unwrap(),
            Verdict::Fail(MorphismFailure::NotMultiplicative { .. })
        ));
    }

    #[test]
    fn products_of_markings() {
        let s = three();
        let et = MarkedPosemigroup::new(s.clone(), Marking::Singletons).unwrap();
        let prod = et.product(&et).unwrap();
        assert_eq!(prod.ms.len(), 9);
        assert!(prod.ms.admissible_sets().unwrap().iter().all(|m| m.len() == 1));
        assert_eq!(prod.ms.admissible_sets().unwrap().len(), 9);

        let one = Posemigroup::from_fn(Poset::new(["o"], &[] as &[(&str, &str)]).unwrap(), |_, _| 0).unwrap();
        let one = MarkedPosemigroup::new(one, Marking::D).unwrap();
        let d = MarkedPosemigroup::new(s.clone(), Marking::D).unwrap();
        let p = one.product(&d).unwrap();
        assert_eq!(p.ms.len(), 3);
        // Renaming o.x -> x is a marking-preserving isomorphism.
        let lifted: Vec<Subset> = d.admissible_sets().unwrap().to_vec();
        assert!(!lifted.contains(&Subset::EMPTY));
        let mut got: Vec<Subset> = p.ms.admissible_sets().unwrap().to_vec();
        got.sort();
        let mut want = lifted;
        want.sort();
        assert_eq!(got, want);

        let chain = Poset::new(["0", "1"], &[("0", "1")]).unwrap();
        let two = MarkedPosemigroup::new(Posemigroup::from_fn(chain, |x, y| x.min(y)).unwrap(), Marking::D).unwrap();
        let p = d.product(&two).unwrap();
        assert_eq!(p.ms.len(), 6);
        assert!(check_marking_axioms(p.ms.posemigroup(), p.ms.marking()).unwrap().is_pass());
    }
}
