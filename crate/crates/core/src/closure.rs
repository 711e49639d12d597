//! The closure of lower sets by two-sided translations, the quantale `Q(S)`
//! of closed sets, closure-preserving morphisms, and the reflection
//! `τ(s) = s↓` into `Q(S)`.
//!
//! `x ∈ cl(D)` iff for every multiplier pair `(b, c)` from `S¹` and every
//! `a` with `bDc ⊆ a↓`, also `bxc ≤ a`. For a fixed pair the admissible
//! values of `bxc` are the intersection of `a↓` over all upper bounds `a`
//! of `bDc`, so each pair costs one pass over the carrier.

use crate::error::{Error, Result};
use crate::ideal::ideals;
use crate::marking::{check_marked_quantale, describe_marked_quantale_failure, is_d_admissible, MarkedPosemigroup};
use crate::nucleus::{quotient, NucleusFn};
use crate::order::{is_order_embedding, Poset};
use crate::posemigroup::{OptElement, Posemigroup};
use crate::quantale::{check_quantale_morphism, quantale_axioms, FiniteQuantale};
use crate::reflection::{
    functor_map, induce, principal_map, reflection_report, uniqueness, FunctorMap, InducedMap,
    Reflection, Uniqueness,
};
use crate::subset::Subset;
use crate::verdict::Verdict;

/// Elements `y` with `l·y·r ≤ a` for every `a ≥ l·x·r`, over every
/// multiplier pair `(l, r)` in `pairs`.
fn translate_closure(sg: &Posemigroup, x: Subset, pairs: &[(OptElement, OptElement)]) -> Subset {
    let p = sg.poset();
    let mut result = p.carrier();
    for &(l, r) in pairs {
        let image = sg.translate(l, x, r);
        let bound = p
            .upper_bounds(image)
            .iter()
            .fold(p.carrier(), |acc, a| acc.intersection(p.principal(a).set()));
        result = result
            .iter()
            .filter(|&y| bound.contains(sg.mul_opt(l, y, r)))
            .collect();
    }
    result
}

/// The closure `cl(D)`, with multipliers from `S¹`. Meant for lower `D`;
/// on other subsets it computes the same formula.
pub fn closure(sg: &Posemigroup, d: Subset) -> Subset {
    translate_closure(sg, d, &sg.opt_pairs())
}

pub fn closure_nucleus(sg: &Posemigroup) -> NucleusFn {
    let sg = sg.clone();
    NucleusFn::new("closure", move |d| closure(&sg, d))
}

/// Closed lower sets, canonically ordered.
pub fn closed_sets(sg: &Posemigroup) -> Result<Vec<Subset>> {
    Ok(sg
        .poset()
        .lower_sets()?
        .into_iter()
        .map(|l| l.set())
        .filter(|&d| closure(sg, d) == d)
        .collect())
}

/// `Q(S)`: the quotient of the lower-set quantale by [`closure`].
pub fn closed_quantale(sg: &Posemigroup) -> Result<FiniteQuantale> {
    quotient(sg, &closure_nucleus(sg))
}

/// The variant with all three multipliers drawn from `S`: `x` is kept iff
/// `aIc ⊆ b↓` implies `axc ≤ b` for all `a, b, c ∈ S`.
pub fn cl_variant(sg: &Posemigroup, i: Subset) -> Subset {
    let pairs: Vec<(OptElement, OptElement)> = (0..sg.len())
        .flat_map(|a| (0..sg.len()).map(move |c| (OptElement::Elem(a), OptElement::Elem(c))))
        .collect();
    translate_closure(sg, i, &pairs)
}

/// `X* = X^ul ∩ X^L ∩ X^R ∩ X^T` on arbitrary subsets, each component
/// evaluated directly from its quantifiers over `S`.
pub fn star_closure(sg: &Posemigroup, x: Subset) -> Subset {
    let p = sg.poset();
    let n = p.len();
    let below = |set: Subset, b: usize| set.iter().all(|y| p.leq(y, b));
    let ul: Subset = (0..n)
        .filter(|&s| (0..n).all(|b| !below(x, b) || p.leq(s, b)))
        .collect();
    let right: Subset = (0..n)
        .filter(|&s| {
            (0..n).all(|a| {
                let xa: Subset = x.iter().map(|y| sg.mul(y, a)).collect();
                (0..n).all(|b| !below(xa, b) || p.leq(sg.mul(s, a), b))
            })
        })
        .collect();
    let left: Subset = (0..n)
        .filter(|&s| {
            (0..n).all(|a| {
                let ax: Subset = x.iter().map(|y| sg.mul(a, y)).collect();
                (0..n).all(|b| !below(ax, b) || p.leq(sg.mul(a, s), b))
            })
        })
        .collect();
    let two: Subset = (0..n)
        .filter(|&s| {
            (0..n).all(|a| {
                (0..n).all(|c| {
                    let axc: Subset = x.iter().map(|y| sg.mul(sg.mul(a, y), c)).collect();
                    (0..n).all(|b| !below(axc, b) || p.leq(sg.mul(sg.mul(a, s), c), b))
                })
            })
        })
        .collect();
    ul.intersection(right).intersection(left).intersection(two)
}

/// Fixpoints of [`star_closure`] among all subsets, with `X ⊗ Y = (XY)*`
/// for the elementwise product `XY`.
pub fn star_quantale(sg: &Posemigroup) -> Result<FiniteQuantale> {
    let p = sg.poset();
    let sets: Vec<Subset> = p
        .subsets_canonical()?
        .into_iter()
        .filter(|&x| star_closure(sg, x) == x)
        .collect();
    FiniteQuantale::from_sets(p, sets, |a, b| {
        let prod: Subset = a.iter().flat_map(|x| b.iter().map(move |y| sg.mul(x, y))).collect();
        star_closure(sg, prod)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosurePreservation {
    /// First `M ⊆ S` with `f(cl(M↓)) ⊄ cl(f(M)↓)`.
    pub preserves: Verdict<Subset>,
    /// First lower `M` with `cl(f(cl M)↓) != cl(f(M)↓)`.
    pub closure_of_image: Verdict<Subset>,
    /// First closed `N ⊆ T` with `cl(f⁻¹(N)↓) != f⁻¹(N)`.
    pub preimage_closed: Verdict<Subset>,
}

impl ClosurePreservation {
    pub fn is_pass(&self) -> bool {
        self.preserves.is_pass()
    }

    /// The three equivalent conditions give the same answer.
    pub fn agree(&self) -> bool {
        let p = self.preserves.is_pass();
        p == self.closure_of_image.is_pass() && p == self.preimage_closed.is_pass()
    }
}

/// Checks that `f` is closure preserving along with the two equivalent
/// reformulations. `f` must be a posemigroup morphism.
pub fn is_closure_preserving(f: &[usize], src: &Posemigroup, dst: &Posemigroup) -> Result<ClosurePreservation> {
    if let Verdict::Fail(w) = src.check_morphism(f, dst) {
        return Err(Error::PreconditionFailed(format!("not a posemigroup morphism: {w:?}")));
    }
    let (sp, dp) = (src.poset(), dst.poset());
    let img = |m: Subset| dp.down_closure(Poset::image(f, m)).set();
    let preserves = Verdict::from_failure(sp.subsets_canonical()?.into_iter().find(|&m| {
        let lhs = Poset::image(f, closure(src, sp.down_closure(m).set()));
        !lhs.is_subset_of(closure(dst, img(m)))
    }));
    let lowers: Vec<Subset> = sp.lower_sets()?.into_iter().map(|l| l.set()).collect();
    let closure_of_image = Verdict::from_failure(
        lowers
            .iter()
            .copied()
            .find(|&m| closure(dst, img(closure(src, m))) != closure(dst, img(m))),
    );
    let preimage_closed = Verdict::from_failure(closed_sets(dst)?.into_iter().find(|&n| {
        let pre = Poset::preimage(f, n);
        closure(src, sp.down_closure(pre).set()) != pre
    }));
    Ok(ClosurePreservation {
        preserves,
        closure_of_image,
        preimage_closed,
    })
}

/// `τ(s) = s↓` into `Q(S)`. Admissible joins in the report are those of
/// the `D`-admissible subsets.
pub fn reflection_tau(sg: &Posemigroup) -> Result<Reflection> {
    let q = closed_quantale(sg)?;
    let d_sets: Vec<Subset> = sg
        .poset()
        .subsets_canonical()?
        .into_iter()
        .filter(|&m| is_d_admissible(sg, m))
        .collect();
    let mut report = reflection_report(sg, &q, &d_sets)?;
    let map = principal_map(sg, &q)?;
    if q.len() <= crate::subset::MAX_CARRIER {
        let qs = q.to_posemigroup()?;
        report.closure_preserving = Some(is_closure_preserving(&map, sg, &qs)?.is_pass());
    }
    Ok(Reflection { map, quantale: q, report })
}

fn into_quantale_precondition(sg: &Posemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<Posemigroup> {
    if let Verdict::Fail(w) = quantale_axioms(q) {
        return Err(Error::PreconditionFailed(format!("target is not a quantale: {w:?}")));
    }
    let qs = q.to_posemigroup()?;
    if let Verdict::Fail(w) = sg.check_morphism(f, &qs) {
        return Err(Error::PreconditionFailed(format!("not a posemigroup morphism: {w:?}")));
    }
    if let Verdict::Fail(m) = is_closure_preserving(f, sg, &qs)?.preserves {
        return Err(Error::PreconditionFailed(format!(
            "not closure preserving at {}",
            sg.poset().set_name(m)
        )));
    }
    Ok(qs)
}

/// `g(D) = ⋁ f(D)` from `Q(S)` into `q` for a closure-preserving
/// posemigroup morphism `f: S → q`.
pub fn reflect_morphism_closure(sg: &Posemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<InducedMap> {
    into_quantale_precondition(sg, q, f)?;
    let src = closed_quantale(sg)?;
    let t = principal_map(sg, &src)?;
    induce(&src, &t, q, f)
}

/// Every quantale morphism `h: Q(S) → q` with `h∘τ = f`.
pub fn uniqueness_check_closure(sg: &Posemigroup, q: &FiniteQuantale, f: &[usize]) -> Result<Uniqueness> {
    into_quantale_precondition(sg, q, f)?;
    let src = closed_quantale(sg)?;
    let t = principal_map(sg, &src)?;
    uniqueness(&src, &t, q, f)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionReport {
    /// First closed set that is not an `A`-ideal.
    pub closed_are_ideals: Verdict<Subset>,
    /// First `D` with a join and `cl(D↓) ⊄ (⋁D)↓`.
    pub below_join: Verdict<Subset>,
    /// First admissible `M` with `cl(M↓) != (⋁M)↓` or `⋁cl(M↓) != ⋁M`.
    pub admissible_closure: Verdict<Subset>,
    pub closed: usize,
    pub ideals: usize,
}

impl InclusionReport {
    pub fn is_pass(&self) -> bool {
        self.closed_are_ideals.is_pass() && self.below_join.is_pass() && self.admissible_closure.is_pass()
    }

    /// Both families coincide.
    pub fn equal(&self) -> bool {
        self.is_pass() && self.closed == self.ideals
    }
}

/// `Q(S) ⊆ Id_A(S)` for a marked quantale, with the closure bounds by
/// principal down-sets of joins.
pub fn inclusion_check(ms: &MarkedPosemigroup) -> Result<InclusionReport> {
    if let Verdict::Fail(w) = check_marked_quantale(ms)? {
        return Err(Error::NotMarkedQuantale(describe_marked_quantale_failure(ms.posemigroup(), &w)));
    }
    let sg = ms.posemigroup();
    let p = sg.poset();
    let closed = closed_sets(sg)?;
    let ids = ideals(ms)?;
    let closed_are_ideals = Verdict::from_failure(closed.iter().copied().find(|d| !ids.contains(d)));
    let below_join = Verdict::from_failure(p.subsets_canonical()?.into_iter().find(|&d| {
        p.join(d)
            .is_some_and(|s| !closure(sg, p.down_closure(d).set()).is_subset_of(p.principal(s).set()))
    }));
    let admissible_closure = Verdict::from_failure(ms.admissible_joins()?.into_iter().find_map(|(m, s)| {
        let c = closure(sg, p.down_closure(m).set());
        (c != p.principal(s).set() || p.join(c) != Some(s)).then_some(m)
    }));
    Ok(InclusionReport {
        closed_are_ideals,
        below_join,
        admissible_closure,
        closed: closed.len(),
        ideals: ids.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismProperties {
    pub closure_preserving: bool,
    /// `Some((quantale morphism, closure preserving))` when both ends are
    /// quantales; the two must coincide.
    pub quantale_equivalence: Option<(bool, bool)>,
    /// First admissible `M` whose join is not sent to the join of `f(M)`.
    pub admissible_joins: Verdict<Subset>,
    /// For closure-preserving `f`: first `D` with `f(D)` admissible and
    /// `⋁f(cl(D↓)) != ⋁cl(f(D)↓)`.
    pub join_of_closures: Verdict<Subset>,
}

impl MorphismProperties {
    /// No implication between the properties is violated.
    pub fn consistent(&self) -> bool {
        let equivalence = self.quantale_equivalence.is_none_or(|(q, c)| q == c);
        let joins = !self.closure_preserving || self.admissible_joins.is_pass();
        equivalence && joins && self.join_of_closures.is_pass()
    }
}

/// For a posemigroup morphism `f` between marked quantales: closure
/// preservation versus quantale morphisms, admissible joins, and joins of
/// closures of admissible images.
pub fn check_morphism_properties(
    f: &[usize],
    src: &MarkedPosemigroup,
    dst: &MarkedPosemigroup,
) -> Result<MorphismProperties> {
    for ms in [src, dst] {
        if let Verdict::Fail(w) = check_marked_quantale(ms)? {
            return Err(Error::NotMarkedQuantale(describe_marked_quantale_failure(ms.posemigroup(), &w)));
        }
    }
    let (ss, ds) = (src.posemigroup(), dst.posemigroup());
    let (sp, dp) = (ss.poset(), ds.poset());
    let closure_preserving = is_closure_preserving(f, ss, ds)?.is_pass();
    let (qs, qd) = (FiniteQuantale::from_posemigroup(ss), FiniteQuantale::from_posemigroup(ds));
    let quantale_equivalence = (quantale_axioms(&qs).is_pass() && quantale_axioms(&qd).is_pass())
        .then(|| (check_quantale_morphism(f, &qs, &qd).is_pass(), closure_preserving));
    let admissible_joins = Verdict::from_failure(
        src.admissible_joins()?
            .into_iter()
            .find(|&(m, s)| dp.join(Poset::image(f, m)) != Some(f[s]))
            .map(|(m, _)| m),
    );
    let join_of_closures = if closure_preserving {
        Verdict::from_failure(sp.subsets_canonical()?.into_iter().find(|&d| {
            let image = Poset::image(f, d);
            dst.is_admissible(image) && {
                let lhs = dp.join(Poset::image(f, closure(ss, sp.down_closure(d).set())));
                let rhs = dp.join(closure(ds, dp.down_closure(image).set()));
                lhs.is_none() || lhs != rhs
            }
        }))
    } else {
        Verdict::Pass
    };
    Ok(MorphismProperties {
        closure_preserving,
        quantale_equivalence,
        admissible_joins,
        join_of_closures,
    })
}

/// `Q(f)(D) = cl(f(D)↓)` for a closure-preserving `f: S → T`.
pub fn functor_q(f: &[usize], src: &Posemigroup, dst: &Posemigroup) -> Result<FunctorMap> {
    if let Verdict::Fail(m) = is_closure_preserving(f, src, dst)?.preserves {
        return Err(Error::PreconditionFailed(format!(
            "not closure preserving at {}",
            src.poset().set_name(m)
        )));
    }
    let dp = dst.poset();
    functor_map(f, src, closed_quantale(src)?, dst, closed_quantale(dst)?, |x| {
        closure(dst, dp.down_closure(x).set())
    })
}

/// `f` reflects and preserves the order and is a posemigroup morphism.
pub fn is_embedding_morphism(f: &[usize], src: &Posemigroup, dst: &Posemigroup) -> bool {
    src.check_morphism(f, dst).is_pass() && is_order_embedding(f, src.poset(), dst.poset())
}

pub fn describe_closure_failure(src: &Posemigroup, dst: &Posemigroup, f: &[usize], m: Subset) -> String {
    let (sp, dp) = (src.poset(), dst.poset());
    let lhs = Poset::image(f, closure(src, sp.down_closure(m).set()));
    let rhs = closure(dst, dp.down_closure(Poset::image(f, m)).set());
    format!(
        "M = {}: f(cl(M↓)) = {} ⊄ {} = cl(f(M)↓)",
        sp.set_name(m),
        dp.set_name(lhs),
        dp.set_name(rhs)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marking::Marking;
    use crate::nucleus::{check_quantic_nucleus, is_principal_closed};

    fn three() -> Posemigroup {
        let p = Poset::new(["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap();
        Posemigroup::from_named_rows(p, &[["a", "c", "c"], ["a", "c", "c"], ["a", "c", "c"]])
            .unwrap()
    }

    fn five() -> Posemigroup {
        let p = Poset::new(["a", "b", "c", "d", "e"], &[("d", "b"), ("d", "c")]).unwrap();
        Posemigroup::from_named_rows(
            p,
            &[
                ["b", "a", "a", "a", "a"],
                ["a", "b", "b", "b", "b"],
                ["a", "b", "b", "b", "b"],
                ["a", "b", "b", "d", "d"],
                ["a", "b", "c", "d", "e"],
            ],
        )
        .unwrap()
    }

    fn s1() -> Posemigroup {
        let p = Poset::new(
            ["a", "b", "c", "d", "e"],
            &[("b", "a"), ("c", "a"), ("d", "a"), ("b", "e"), ("c", "e"), ("d", "e")],
        )
        .unwrap();
        Posemigroup::from_fn(p, |_, _| 0).unwrap()
    }

    fn s2() -> Posemigroup {
        let p = Poset::new(
            ["s", "a", "b", "c", "d", "e"],
            &[("b", "s"), ("c", "s"), ("b", "d"), ("c", "d"), ("s", "e"), ("d", "e"), ("e", "a")],
        )
        .unwrap();
        Posemigroup::from_fn(p, |_, _| 1).unwrap()
    }

    fn set(sg: &Posemigroup, names: &str) -> Subset {
        sg.poset().parse_set(names).unwrap()
    }

    #[test]
    fn closures_in_the_worked_examples() {
        let s = three();
        assert_eq!(closure(&s, set(&s, "{b,c}")), set(&s, "{b,c}"));
        assert_eq!(closure(&s, Subset::EMPTY), Subset::EMPTY);
        let s = s1();
        assert_eq!(closure(&s, set(&s, "{b,c}")), set(&s, "{b,c,d}"));
        let t = s2();
        assert_eq!(closure(&t, set(&t, "{b,c}")), set(&t, "{b,c}"));
    }

    #[test]
    fn closed_sets_of_example_64() {
        let s = five();
        let names: Vec<String> = closed_sets(&s).unwrap().iter().map(|&d| s.poset().set_name(d)).collect();
        assert_eq!(
            names,
            ["{}", "{a}", "{d}", "{e}", "{b,d}", "{c,d}", "{d,e}", "{b,c,d}", "{b,c,d,e}", "{a,b,c,d,e}"]
        );
    }

    #[test]
    fn closure_is_a_principal_closed_nucleus() {
        for s in [three(), five(), s1(), s2()] {
            let j = closure_nucleus(&s);
            assert!(check_quantic_nucleus(&s, &j).unwrap().is_pass());
            assert!(is_principal_closed(&s, &j));
            assert!(quantale_axioms(&closed_quantale(&s).unwrap()).is_pass());
        }
    }

    #[test]
    fn star_closure_matches_closure_of_down_closure() {
        for s in [three(), five(), s1(), s2()] {
            let p = s.poset();
            for x in Subset::all(s.len()) {
                assert_eq!(star_closure(&s, x), closure(&s, p.down_closure(x).set()));
            }
            let iso = crate::quantale::find_isomorphism(&closed_quantale(&s).unwrap(), &star_quantale(&s).unwrap());
            assert!(iso.unwrap().is_some());
        }
    }

    #[test]
    fn variant_agrees_with_an_identity() {
        // The 2-chain under min has identity 1.
        let p = Poset::new(["0", "1"], &[("0", "1")]).unwrap();
        let s = Posemigroup::from_fn(p, |x, y| x.min(y)).unwrap();
        for i in Subset::all(2) {
            assert_eq!(cl_variant(&s, i), closure(&s, i));
        }
        let s = three();
        assert_eq!(cl_variant(&s, Subset::full(3)), Subset::full(3));
        // Without the identity as a multiplier the variant can collapse.
        assert_eq!(closure(&s, set(&s, "{b}")), set(&s, "{b}"));
        assert_eq!(cl_variant(&s, set(&s, "{b}")), Subset::full(3));
    }

    #[test]
    fn iota_is_not_closure_preserving() {
        let (a, b) = (s1(), s2());
        let iota: Vec<usize> = (0..5).map(|i| b.poset().index_of(a.name(i)).unwrap()).collect();
        let r = is_closure_preserving(&iota, &a, &b).unwrap();
        assert_eq!(r.preserves, Verdict::Fail(set(&a, "{b,c}")));
        assert!(r.agree());
    }

    #[test]
    fn constant_map_is_closure_preserving() {
        let s = three();
        let r = is_closure_preserving(&[0, 0, 0], &s, &s).unwrap();
        assert!(r.is_pass() && r.agree());
        assert_eq!(Poset::image(&[0, 0, 0], closure(&s, set(&s, "{b,c}"))), set(&s, "{a}"));
        let fm = functor_q(&[0, 0, 0], &s, &s).unwrap();
        assert!(fm.is_pass());
    }

    #[test]
    fn tau_reflection() {
        for s in [three(), five()] {
            let r = reflection_tau(&s).unwrap();
            assert!(r.report.is_pass(), "{:?}", r.report);
            let g = reflect_morphism_closure(&s, &r.quantale, &r.map).unwrap();
            assert!(g.is_pass() && g.order_embedding);
        }
    }

    #[test]
    fn inclusion_in_example_64() {
        let ms = MarkedPosemigroup::new(five(), Marking::D).unwrap();
        let r = inclusion_check(&ms).unwrap();
        assert!(r.is_pass());
        assert_eq!((r.closed, r.ideals), (10, 20));
        let ms = MarkedPosemigroup::new(three(), Marking::D).unwrap();
        assert!(inclusion_check(&ms).unwrap().equal());
    }

    #[test]
    fn properties_of_iota() {
        let (a, b) = (s1(), s2());
        let iota: Vec<usize> = (0..5).map(|i| b.poset().index_of(a.name(i)).unwrap()).collect();
        let ma = MarkedPosemigroup::new(a, Marking::D).unwrap();
        let mb = MarkedPosemigroup::new(b, Marking::D).unwrap();
        let r = check_morphism_properties(&iota, &ma, &mb).unwrap();
        assert!(!r.closure_preserving);
        assert!(r.admissible_joins.is_pass());
        assert!(r.consistent());
    }
}
