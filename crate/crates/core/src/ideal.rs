//! `A`-ideals: lower sets closed under joins of their admissible subsets.
//! They form the quantale `Id_A(S)`, the target of the reflection
//! `t(s) = s↓`.

use crate::error::{Error, Result};
use crate::marking::{
    check_marked_morphism, check_marked_quantale, describe_marked_quantale_failure,
    describe_morphism_failure, MarkedPosemigroup, MorphismLevel,
};
use crate::nucleus::NucleusFn;
use crate::order::Poset;
use crate::quantale::{quantale_axioms, FiniteQuantale};
use crate::reflection::{
    functor_map, induce, principal_map, reflection_report, uniqueness, FunctorMap, InducedMap,
    Reflection, Uniqueness,
};
use crate::subset::Subset;
use crate::verdict::Verdict;

/// `D` is lower and contains `⋁M` for every admissible `M ⊆ D`.
pub fn is_a_ideal(ms: &MarkedPosemigroup, d: Subset) -> Result<bool> {
    let p = ms.posemigroup().poset();
    if !p.is_lower(d) {
        return Ok(false);
    }
    Ok(ms
        .admissible_joins()?
        .iter()
        .all(|&(m, s)| !m.is_subset_of(d) || d.contains(s)))
}

/// The least `A`-ideal containing `c`, by saturation: down-close, then add
/// `(⋁M)↓` for each admissible `M` already inside, until nothing changes.
pub fn j_a(ms: &MarkedPosemigroup, c: Subset) -> Result<Subset> {
    let joins = ms.admissible_joins()?;
    Ok(saturate(ms.posemigroup().poset(), &joins, c))
}

fn saturate(p: &Poset, joins: &[(Subset, usize)], c: Subset) -> Subset {
    let mut d = p.down_closure(c).set();
    loop {
        let before = d;
        for &(m, s) in joins {
            if m.is_subset_of(d) && !d.contains(s) {
                d = d.union(p.principal(s).set());
            }
        }
        if d == before {
            return d;
        }
    }
}

/// Intersection of every `A`-ideal containing `c`, by enumeration.
pub fn j_a_oracle(ms: &MarkedPosemigroup, c: Subset) -> Result<Subset> {
    let p = ms.posemigroup().poset();
    let mut acc = p.carrier();
    for d in ideals(ms)? {
        if c.is_subset_of(d) {
            acc = acc.intersection(d);
        }
    }
    Ok(acc)
}

/// Every `A`-ideal, canonically ordered.
pub fn ideals(ms: &MarkedPosemigroup) -> Result<Vec<Subset>> {
    let p = ms.posemigroup().poset();
    let joins = ms.admissible_joins()?;
    Ok(p.lower_sets()?
        .into_iter()
        .map(|l| l.set())
        .filter(|&d| joins.iter().all(|&(m, s)| !m.is_subset_of(d) || d.contains(s)))
        .collect())
}

/// `j_A` as a nucleus on the lower sets.
pub fn ideal_nucleus(ms: &MarkedPosemigroup) -> Result<NucleusFn> {
    let joins = ms.admissible_joins()?;
    let p = ms.posemigroup().poset().clone();
    Ok(NucleusFn::new("j_A", move |c| saturate(&p, &joins, c)))
}

/// `Id_A(S)` with `V ⊗ W = j_A(V·W)`, joins `j_A(V ∪ W)` and meets `V ∩ W`.
pub fn ideal_quantale(ms: &MarkedPosemigroup) -> Result<FiniteQuantale> {
    let sg = ms.posemigroup();
    let j = ideal_nucleus(ms)?;
    FiniteQuantale::from_sets(sg.poset(), ideals(ms)?, |a, b| j.apply(sg.set_product(a, b).set()))
}

fn require_marked_quantale(ms: &MarkedPosemigroup) -> Result<()> {
    match check_marked_quantale(ms)? {
        Verdict::Pass => Ok(()),
        Verdict::Fail(w) => Err(Error::NotMarkedQuantale(describe_marked_quantale_failure(
            ms.posemigroup(),
            &w,
        ))),
    }
}

/// `t(s) = s↓` into `Id_A(S)`, with its verification report.
pub fn reflection_t(ms: &MarkedPosemigroup) -> Result<Reflection> {
    require_marked_quantale(ms)?;
    let q = ideal_quantale(ms)?;
    let report = reflection_report(ms.posemigroup(), &q, ms.admissible_sets()?)?;
    Ok(Reflection {
        map: principal_map(ms.posemigroup(), &q)?,
        quantale: q,
        report,
    })
}

/// First reason `f: S → q` is not a marked-quantale map into `q` with the
/// full marking.
fn into_quantale_failure(ms: &MarkedPosemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<Option<String>> {
    let sg = ms.posemigroup();
    let p = sg.poset();
    let n = p.len();
    if f.len() != n || f.iter().any(|&v| v >= q.len()) {
        return Ok(Some("map is not total".into()));
    }
    if let Verdict::Fail(w) = quantale_axioms(q) {
        return Ok(Some(format!("target is not a quantale: {w:?}")));
    }
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) && !q.leq(f[x], f[y]) {
                return Ok(Some(format!("not monotone at {} <= {}", p.name(x), p.name(y))));
            }
            if f[sg.mul(x, y)] != q.mul(f[x], f[y]) {
                return Ok(Some(format!("not multiplicative at ({}, {})", p.name(x), p.name(y))));
            }
        }
    }
    for &(m, s) in &ms.admissible_joins()? {
        if Some(f[s]) != q.join_all(m.iter().map(|x| f[x])) {
            return Ok(Some(format!("join of admissible {} is not preserved", p.set_name(m))));
        }
    }
    Ok(None)
}

/// `g(D) = ⋁ f(D)` from `Id_A(S)` into `q`, verified as a quantale
/// morphism with `g∘t = f`.
pub fn reflect_morphism_g(ms: &MarkedPosemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<InducedMap> {
    require_marked_quantale(ms)?;
    if let Some(why) = into_quantale_failure(ms, q, f)? {
        return Err(Error::PreconditionFailed(why));
    }
    let src = ideal_quantale(ms)?;
    let t = principal_map(ms.posemigroup(), &src)?;
    induce(&src, &t, q, f)
}

/// Enumerates every quantale morphism `h: Id_A(S) → q` with `h∘t = f`.
pub fn uniqueness_check(ms: &MarkedPosemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<Uniqueness> {
    require_marked_quantale(ms)?;
    if let Some(why) = into_quantale_failure(ms, q, f)? {
        return Err(Error::PreconditionFailed(why));
    }
    let src = ideal_quantale(ms)?;
    let t = principal_map(ms.posemigroup(), &src)?;
    uniqueness(&src, &t, q, f)
}

/// `Id(f)(D) = j_B(f(D)↓)` for a marked-quantale map `f: (S,A) → (T,B)`.
pub fn functor_id(f: &[usize], src: &MarkedPosemigroup, dst: &MarkedPosemigroup) -> Result<FunctorMap> {
    require_marked_quantale(src)?;
    require_marked_quantale(dst)?;
    if let Verdict::Fail(w) = check_marked_morphism(f, src, dst, MorphismLevel::MarkedQuantale)? {
        return Err(Error::PreconditionFailed(describe_morphism_failure(
            src.posemigroup(),
            dst.posemigroup(),
            f,
            &w,
        )));
    }
    let jb = ideal_nucleus(dst)?;
    functor_map(
        f,
        src.posemigroup(),
        ideal_quantale(src)?,
        dst.posemigroup(),
        ideal_quantale(dst)?,
        |x| jb.apply(x),
    )
}
