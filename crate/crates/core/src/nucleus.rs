//! Operators on the lower-set quantale `P(S)` of a posemigroup: quantic
//! nucleus laws, quotients by fixpoints, and the facts about nuclei that fix
//! every principal down-set.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::posemigroup::Posemigroup;
use crate::quantale::{check_quantale_morphism, quantale_axioms, FiniteQuantale};
use crate::subset::Subset;
use crate::verdict::Verdict;

type Op = Box<dyn Fn(Subset) -> Subset + Send + Sync>;

/// A named operator on lower sets with a memo table.
pub struct NucleusFn {
    name: String,
    op: Op,
    cache: RwLock<HashMap<Subset, Subset>>,
}

impl fmt::Debug for NucleusFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NucleusFn").field("name", &self.name).finish()
    }
}

impl NucleusFn {
    pub fn new<F>(name: impl Into<String>, op: F) -> Self
    where
        F: Fn(Subset) -> Subset + Send + Sync + 'static,
    {
        NucleusFn {
            name: name.into(),
            op: Box::new(op),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn identity() -> Self {
        NucleusFn::new("identity", |d| d)
    }

    /// `D ↦ (⋁D)↓`, defined on every lower set when `sg` is a finite
    /// quantale. Sets without a join are sent to the whole carrier.
    pub fn principal_join(sg: &Posemigroup) -> Self {
        let p = sg.poset().clone();
        NucleusFn::new("principal-join", move |d| match p.join(d) {
            Some(s) => p.principal(s).set(),
            None => p.carrier(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn apply(&self, d: Subset) -> Subset {
        if let Some(&v) = self.cache.read().unwrap().get(&d) {
            return v;
        }
        let v = (self.op)(d);
        self.cache.write().unwrap().insert(d, v);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NucleusFailure {
    NotLower { d: Subset },
    NotInflationary { d: Subset },
    /// `d ⊆ e` but `j(d) ⊄ j(e)`.
    NotMonotone { d: Subset, e: Subset },
    NotIdempotent { d: Subset },
    /// `j(a)·j(b) ⊄ j(a·b)`.
    NotSubmultiplicative { a: Subset, b: Subset },
}

/// Inflationary, monotone, idempotent and submultiplicative on every lower
/// set, with lower values. Monotonicity is checked on covers `D ⊂ D ∪ {x}`
/// of the lower-set lattice, which suffices by transitivity.
pub fn check_quantic_nucleus(sg: &Posemigroup, j: &NucleusFn) -> Result<Verdict<NucleusFailure>> {
    let p = sg.poset();
    let lowers: Vec<Subset> = p.lower_sets()?.into_iter().map(|l| l.set()).collect();
    for &d in &lowers {
        let jd = j.apply(d);
        if !p.is_lower(jd) {
            return Ok(Verdict::Fail(NucleusFailure::NotLower { d }));
        }
        if !d.is_subset_of(jd) {
            return Ok(Verdict::Fail(NucleusFailure::NotInflationary { d }));
        }
        if j.apply(jd) != jd {
            return Ok(Verdict::Fail(NucleusFailure::NotIdempotent { d }));
        }
    }
    for &d in &lowers {
        for x in d.complement(p.len()).iter() {
            let e = d.with(x);
            if p.is_lower(e) && !j.apply(d).is_subset_of(j.apply(e)) {
                return Ok(Verdict::Fail(NucleusFailure::NotMonotone { d, e }));
            }
        }
    }
    for &a in &lowers {
        for &b in &lowers {
            let lhs = sg.set_product(j.apply(a), j.apply(b)).set();
            let rhs = j.apply(sg.set_product(a, b).set());
            if !lhs.is_subset_of(rhs) {
                return Ok(Verdict::Fail(NucleusFailure::NotSubmultiplicative { a, b }));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// First element `s` with `j(s↓) != s↓`.
pub fn principal_closed_failure(sg: &Posemigroup, j: &NucleusFn) -> Option<usize> {
    let p = sg.poset();
    (0..p.len()).find(|&s| j.apply(p.principal(s).set()) != p.principal(s).set())
}

pub fn is_principal_closed(sg: &Posemigroup, j: &NucleusFn) -> bool {
    principal_closed_failure(sg, j).is_none()
}

/// Fixpoints of `j` among the lower sets, canonically ordered.
pub fn fixpoints(sg: &Posemigroup, j: &NucleusFn) -> Result<Vec<Subset>> {
    Ok(sg
        .poset()
        .lower_sets()?
        .into_iter()
        .map(|l| l.set())
        .filter(|&d| j.apply(d) == d)
        .collect())
}

/// The quotient quantale `P(S)_j`: fixpoints ordered by inclusion with
/// `A ⊗ B = j(A·B)`. Joins in the quotient are `j(A ∪ B)` and meets are
/// intersections.
pub fn quotient(sg: &Posemigroup, j: &NucleusFn) -> Result<FiniteQuantale> {
    if let Verdict::Fail(w) = check_quantic_nucleus(sg, j)? {
        return Err(Error::NucleusInvalid(describe_nucleus_failure(sg, j, &w)));
    }
    quotient_unchecked(sg, j)
}

/// [`quotient`] without re-validating `j`.
pub fn quotient_unchecked(sg: &Posemigroup, j: &NucleusFn) -> Result<FiniteQuantale> {
    let sets = fixpoints(sg, j)?;
    FiniteQuantale::from_sets(sg.poset(), sets, |a, b| j.apply(sg.set_product(a, b).set()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopolOutcome {
    /// `⋁D` exists and lies in `j(D)`, and both conclusions hold.
    Holds,
    /// `⋁D` is missing or not in `j(D)`.
    Vacuous,
    /// The hypothesis holds but `j(D) != (⋁D)↓` or `⋁j(D) != ⋁D`.
    Fails,
}

/// For a principal-closed `j` and a lower set `D` with `⋁D ∈ j(D)`:
/// `j(D) = (⋁D)↓` and `⋁j(D) = ⋁D`.
pub fn check_prop_topol(sg: &Posemigroup, j: &NucleusFn, d: Subset) -> Result<TopolOutcome> {
    if let Some(s) = principal_closed_failure(sg, j) {
        return Err(Error::PreconditionFailed(format!(
            "{} does not fix {}↓",
            j.name(),
            sg.name(s)
        )));
    }
    let p = sg.poset();
    let jd = j.apply(d);
    match p.join(d) {
        Some(s) if jd.contains(s) => {
            if jd == p.principal(s).set() && p.join(jd) == Some(s) {
                Ok(TopolOutcome::Holds)
            } else {
                Ok(TopolOutcome::Fails)
            }
        }
        _ => Ok(TopolOutcome::Vacuous),
    }
}

/// For a finite quantale `S` and a nucleus with `j(D) = (⋁D)↓` on every
/// lower set, returns `s ↦ index of s↓` as a verified isomorphism
/// `S → P(S)_j`.
pub fn check_representation(sg: &Posemigroup, j: &NucleusFn) -> Result<Vec<usize>> {
    let s = FiniteQuantale::from_posemigroup(sg);
    if let Verdict::Fail(w) = quantale_axioms(&s) {
        return Err(Error::PreconditionFailed(format!("not a quantale: {w:?}")));
    }
    let p = sg.poset();
    for l in p.lower_sets()? {
        let d = l.set();
        let want = p.join(d).map(|x| p.principal(x).set());
        if Some(j.apply(d)) != want {
            return Err(Error::HypothesisFailed(format!(
                "{}({}) is not the principal down-set of the join",
                j.name(),
                p.set_name(d)
            )));
        }
    }
    let q = quotient(sg, j)?;
    let map: Vec<usize> = (0..p.len())
        .map(|x| {
            q.index_of_set(p.principal(x).set())
                .ok_or_else(|| Error::HypothesisFailed(format!("{}↓ is not a fixpoint", p.name(x))))
        })
        .collect::<Result<_>>()?;
    let onto = q.len() == p.len();
    if !onto || !s.is_order_embedding(&map, &q) {
        return Err(Error::HypothesisFailed("s ↦ s↓ is not an order isomorphism".into()));
    }
    if let Verdict::Fail(w) = check_quantale_morphism(&map, &s, &q) {
        return Err(Error::HypothesisFailed(format!("s ↦ s↓ is not a quantale morphism: {w:?}")));
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub order_embedding: bool,
    /// First subset `X` with a meet `m` and `m↓ != ⋂ x↓`.
    pub meets_preserved: Verdict<Subset>,
    /// First fixpoint that is not the quotient join of its principal
    /// down-sets.
    pub join_dense: Verdict<Subset>,
}

impl EtaReport {
    pub fn is_pass(&self) -> bool {
        self.order_embedding && self.meets_preserved.is_pass() && self.join_dense.is_pass()
    }
}

/// Properties of `η(s) = s↓` into `P(S)_j` for a principal-closed `j`.
pub fn eta_properties(sg: &Posemigroup, j: &NucleusFn) -> Result<EtaReport> {
    if let Some(s) = principal_closed_failure(sg, j) {
        return Err(Error::PreconditionFailed(format!(
            "{} does not fix {}↓",
            j.name(),
            sg.name(s)
        )));
    }
    let q = quotient_unchecked(sg, j)?;
    eta_report(sg, &q)
}

/// Shared by the reflections: `s ↦ s↓` into a quantale of lower sets.
pub(crate) fn eta_report(sg: &Posemigroup, q: &FiniteQuantale) -> Result<EtaReport> {
    let p = sg.poset();
    let map: Option<Vec<usize>> = (0..p.len())
        .map(|x| q.index_of_set(p.principal(x).set()))
        .collect();
    let Some(map) = map else {
        return Err(Error::PreconditionFailed("some s↓ is not in the quotient".into()));
    };
    let order_embedding =
        (0..p.len()).all(|x| (0..p.len()).all(|y| p.leq(x, y) == q.leq(map[x], map[y])));
    let meets_preserved = Verdict::from_failure(p.subsets_canonical()?.into_iter().find(|&x| {
        p.meet(x).is_some_and(|m| {
            let cap = x
                .iter()
                .fold(p.carrier(), |acc, y| acc.intersection(p.principal(y).set()));
            p.principal(m).set() != cap
        })
    }));
    let sets = q.sets().expect("quotient of lower sets");
    let join_dense = Verdict::from_failure(
        (0..q.len())
            .find(|&k| q.join_all(sets[k].iter().map(|d| map[d])) != Some(k))
            .map(|k| sets[k]),
    );
    Ok(EtaReport {
        order_embedding,
        meets_preserved,
        join_dense,
    })
}

pub fn describe_nucleus_failure(sg: &Posemigroup, j: &NucleusFn, w: &NucleusFailure) -> String {
    let name = |s: Subset| sg.poset().set_name(s);
    match *w {
        NucleusFailure::NotLower { d } => format!("{}({}) is not a lower set", j.name(), name(d)),
        NucleusFailure::NotInflationary { d } => {
            format!("{}({}) = {} misses part of its argument", j.name(), name(d), name(j.apply(d)))
        }
        NucleusFailure::NotMonotone { d, e } => {
            format!("{} ⊆ {} but their images are not nested", name(d), name(e))
        }
        NucleusFailure::NotIdempotent { d } => format!("{} is not idempotent at {}", j.name(), name(d)),
        NucleusFailure::NotSubmultiplicative { a, b } => {
            format!("{} is not submultiplicative at ({}, {})", j.name(), name(a), name(b))
        }
    }
}
