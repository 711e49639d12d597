//! Pieces shared by the two reflections `s ↦ s↓`: the report on the unit
//! map, the induced map `g(D) = ⋁ f(D)`, and exhaustive enumeration of
//! factorizations for uniqueness checks.

use crate::error::{Error, Result};
use crate::nucleus::{eta_report, EtaReport};
use crate::posemigroup::Posemigroup;
use crate::quantale::{check_quantale_morphism, FiniteQuantale, QuantaleMorphismFailure};
use crate::subset::Subset;
use crate::verdict::Verdict;

/// Largest source and target accepted by the uniqueness enumeration.
pub const UNIQUENESS_CAP: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionReport {
    /// First pair `(x, y)` with `t(xy) != t(x)·t(y)`.
    pub multiplicative: Verdict<(usize, usize)>,
    /// First admissible `M` with `t(⋁M) != ⋁ t(M)`.
    pub admissible_joins: Verdict<Subset>,
    pub eta: EtaReport,
    /// Whether the unit map is itself closure preserving, when checked.
    pub closure_preserving: Option<bool>,
    /// Subsets with at least two elements whose join exists in `S` but is
    /// not sent to the join of the images. Informational: only admissible
    /// joins are required to be preserved.
    pub unpreserved_joins: Vec<Subset>,
}

impl ReflectionReport {
    pub fn is_pass(&self) -> bool {
        self.multiplicative.is_pass()
            && self.admissible_joins.is_pass()
            && self.eta.is_pass()
            && self.closure_preserving != Some(false)
    }
}

/// A unit map `S → Q` together with its target and report.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub map: Vec<usize>,
    pub quantale: FiniteQuantale,
    pub report: ReflectionReport,
}

/// `s ↦ index of s↓` in a quantale of lower sets.
pub(crate) fn principal_map(sg: &Posemigroup, q: &FiniteQuantale) -> Result<Vec<usize>> {
    let p = sg.poset();
    (0..p.len())
        .map(|x| {
            q.index_of_set(p.principal(x).set())
                .ok_or_else(|| Error::PreconditionFailed(format!("{}↓ is not in the quantale", p.name(x))))
        })
        .collect()
}

pub(crate) fn reflection_report(
    sg: &Posemigroup,
    q: &FiniteQuantale,
    admissible: &[Subset],
) -> Result<ReflectionReport> {
    let p = sg.poset();
    let t = principal_map(sg, q)?;
    let n = p.len();
    let multiplicative = Verdict::from_failure(
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| t[sg.mul(x, y)] != q.mul(t[x], t[y])),
    );
    let preserved = |m: Subset| match p.join(m) {
        Some(s) => Some(t[s]) == q.join_all(m.iter().map(|x| t[x])),
        None => false,
    };
    let admissible_joins = Verdict::from_failure(admissible.iter().copied().find(|&m| !preserved(m)));
    let unpreserved_joins = p
        .subsets_canonical()?
        .into_iter()
        .filter(|&m| m.len() >= 2 && p.join(m).is_some() && !preserved(m))
        .collect();
    Ok(ReflectionReport {
        multiplicative,
        admissible_joins,
        eta: eta_report(sg, q)?,
        closure_preserving: None,
        unpreserved_joins,
    })
}

/// The map `g(D) = ⋁ f(D)` out of a quantale of lower sets, with its
/// verification results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub map: Vec<usize>,
    pub quantale_morphism: Verdict<QuantaleMorphismFailure>,
    /// First `s` with `g(t(s)) != f(s)`.
    pub factors: Verdict<usize>,
    pub order_embedding: bool,
}

impl InducedMap {
    pub fn is_pass(&self) -> bool {
        self.quantale_morphism.is_pass() && self.factors.is_pass()
    }
}

pub(crate) fn induce(
    src: &FiniteQuantale,
    t: &[usize],
    dst: &FiniteQuantale,
    f: &[usize],
) -> Result<InducedMap> {
    let sets = src.sets().expect("source is a quantale of lower sets");
    let map: Vec<usize> = sets
        .iter()
        .map(|d| {
            dst.join_all(d.iter().map(|x| f[x]))
                .ok_or_else(|| Error::PreconditionFailed("target lacks a join".into()))
        })
        .collect::<Result<_>>()?;
    let factors = Verdict::from_failure((0..t.len()).find(|&s| map[t[s]] != f[s]));
    Ok(InducedMap {
        quantale_morphism: check_quantale_morphism(&map, src, dst),
        factors,
        order_embedding: src.is_order_embedding(&map, dst),
        map,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uniqueness {
    /// Every quantale morphism `h` with `h∘t = f`.
    pub factorizations: Vec<Vec<usize>>,
    /// Exactly one factorization exists and it is the induced map.
    pub unique: bool,
}

/// Enumerates all quantale morphisms `h: src → dst` with `h∘t = f`. Only
/// monotone assignments are explored; the values on `t(S)` are fixed up
/// front.
pub(crate) fn enumerate_factorizations(
    src: &FiniteQuantale,
    t: &[usize],
    dst: &FiniteQuantale,
    f: &[usize],
) -> Result<Vec<Vec<usize>>> {
    for q in [src, dst] {
        if q.len() > UNIQUENESS_CAP {
            return Err(Error::CapExceeded { size: q.len(), cap: UNIQUENESS_CAP });
        }
    }
    let n = src.len();
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for (s, &k) in t.iter().enumerate() {
        match fixed[k] {
            Some(v) if v != f[s] => return Ok(Vec::new()),
            _ => fixed[k] = Some(f[s]),
        }
    }
    let mut out = Vec::new();
    let mut h = vec![0usize; n];
    fn go(
        k: usize,
        src: &FiniteQuantale,
        dst: &FiniteQuantale,
        fixed: &[Option<usize>],
        h: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == src.len() {
            if check_quantale_morphism(h, src, dst).is_pass() {
                out.push(h.clone());
            }
            return;
        }
        let choices: Vec<usize> = match fixed[k] {
            Some(v) => vec![v],
            None => (0..dst.len()).collect(),
        };
        for v in choices {
            let monotone = (0..k).all(|i| {
                (!src.leq(i, k) || dst.leq(h[i], v)) && (!src.leq(k, i) || dst.leq(v, h[i]))
            });
            if monotone {
                h[k] = v;
                go(k + 1, src, dst, fixed, h, out);
            }
        }
    }
    go(0, src, dst, &fixed, &mut h, &mut out);
    Ok(out)
}

pub(crate) fn uniqueness(
    src: &FiniteQuantale,
    t: &[usize],
    dst: &FiniteQuantale,
    f: &[usize],
) -> Result<Uniqueness> {
    let factorizations = enumerate_factorizations(src, t, dst, f)?;
    let g = induce(src, t, dst, f)?;
    let unique = factorizations.len() == 1 && factorizations[0] == g.map;
    Ok(Uniqueness { factorizations, unique })
}

/// Result of pushing a morphism through one of the reflector functors.
#[derive(Clone, Debug)]
pub struct FunctorMap {
    pub map: Vec<usize>,
    pub src: FiniteQuantale,
    pub dst: FiniteQuantale,
    pub quantale_morphism: Verdict<QuantaleMorphismFailure>,
    /// First `s` where the square `F(f)∘t_S = t_T∘f` fails.
    pub square: Verdict<usize>,
}

impl FunctorMap {
    pub fn is_pass(&self) -> bool {
        self.quantale_morphism.is_pass() && self.square.is_pass()
    }
}

pub(crate) fn functor_map<F>(
    f: &[usize],
    src_sg: &Posemigroup,
    src: FiniteQuantale,
    dst_sg: &Posemigroup,
    dst: FiniteQuantale,
    push: F,
) -> Result<FunctorMap>
where
    F: Fn(Subset) -> Subset,
{
    let sets = src.sets().expect("quantale of lower sets").to_vec();
    let map: Vec<usize> = sets
        .iter()
        .map(|&d| {
            let image = push(crate::order::Poset::image(f, d));
            dst.index_of_set(image).ok_or_else(|| {
                Error::PreconditionFailed(format!(
                    "image {} is not in the target quantale",
                    dst_sg.poset().set_name(image)
                ))
            })
        })
        .collect::<Result<_>>()?;
    let ts = principal_map(src_sg, &src)?;
    let tt = principal_map(dst_sg, &dst)?;
    let square = Verdict::from_failure((0..src_sg.len()).find(|&s| map[ts[s]] != tt[f[s]]));
    Ok(FunctorMap {
        quantale_morphism: check_quantale_morphism(&map, &src, &dst),
        map,
        src,
        dst,
        square,
    })
}
