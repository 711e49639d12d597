//! Line-oriented text format for marked posemigroups and maps between them.
//!
//! ```text
//! # comment
//! posemigroup S
//! elements: a b c
//! order: b<a c<a
//! table:
//! a: a c c
//! b: a c c
//! c: a c c
//! marking: D
//!
//! morphism f: a->a b->a c->a from S to S
//! ```
//!
//! `order:` lists generating relations (chains such as `c<b<a` are allowed)
//! and may be repeated or omitted. Each table row gives the products of the
//! row element with every element, in `elements:` order.
//!
//! Markings: `D`, `singletons`, `full`, `card<=N`, `chains`, `directed`,
//! `bounded`, `bounded-pairs`, `explicit {..} ..` (the listed sets plus all
//! singletons) and `explicit-only {..} ..`. Without a `marking:` line the
//! marking is `D`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::marking::{MarkedPosemigroup, Marking};
use crate::order::Poset;
use crate::posemigroup::Posemigroup;
use crate::subset::Subset;

#[derive(Clone, Debug)]
pub struct NamedPosemigroup {
    pub name: String,
    pub marked: MarkedPosemigroup,
}

impl NamedPosemigroup {
    pub fn posemigroup(&self) -> &Posemigroup {
        self.marked.posemigroup()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    /// `map[i]` is the image of source element `i`.
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Scenario {
    pub posemigroups: Vec<NamedPosemigroup>,
    pub morphisms: Vec<MorphismSpec>,
}

impl PartialEq for Scenario {
    fn eq(&self, other: &Self) -> bool {
        self.morphisms == other.morphisms
            && self.posemigroups.len() == other.posemigroups.len()
            && self.posemigroups.iter().zip(&other.posemigroups).all(|(a, b)| {
                a.name == b.name
                    && a.posemigroup() == b.posemigroup()
                    && a.marked.marking() == b.marked.marking()
            })
    }
}

impl Scenario {
    pub fn posemigroup(&self, name: &str) -> Result<&NamedPosemigroup> {
        self.posemigroups
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::UnknownElement(format!("posemigroup `{name}`")))
    }

    pub fn morphism(&self, name: &str) -> Result<&MorphismSpec> {
        self.morphisms
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::UnknownElement(format!("morphism `{name}`")))
    }

    /// Source and target of a morphism.
    pub fn endpoints(&self, m: &MorphismSpec) -> Result<(&NamedPosemigroup, &NamedPosemigroup)> {
        Ok((self.posemigroup(&m.from)?, self.posemigroup(&m.to)?))
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        line,
        reason: reason.into(),
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || ":<>{},#".contains(c))
}

/// Splits `{a,b} {c}` into brace groups, tolerating spaces inside them.
fn brace_groups(text: &str, line: usize) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('{') {
            return Err(parse_err(line, format!("expected `{{` at `{rest}`")));
        }
        let end = rest
            .find('}')
            .ok_or_else(|| parse_err(line, "unterminated `{`"))?;
        out.push(&rest[..=end]);
        rest = rest[end + 1..].trim_start();
    }
    Ok(out)
}

#[derive(Default)]
struct Draft {
    name: String,
    line: usize,
    elements: Option<Vec<String>>,
    order: Vec<(String, String)>,
    rows: Vec<(usize, String, Vec<String>)>,
    in_table: bool,
    marking: Option<(usize, String)>,
}

fn parse_marking(p: &Poset, text: &str, line: usize) -> Result<Marking> {
    let text = text.trim();
    let (kind, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let sets = |rest: &str| -> Result<BTreeSet<Subset>> {
        brace_groups(rest, line)?
            .into_iter()
            .map(|g| p.parse_set(g).map_err(|e| parse_err(line, e.to_string())))
            .collect()
    };
    let simple = |m: Marking| {
        if rest.trim().is_empty() {
            Ok(m)
        } else {
            Err(parse_err(line, format!("marking `{kind}` takes no arguments")))
        }
    };
    match kind {
        "D" => simple(Marking::D),
        "singletons" => simple(Marking::Singletons),
        "full" => simple(Marking::Full),
        "chains" => simple(Marking::Chains),
        "directed" => simple(Marking::Directed),
        "bounded" => simple(Marking::Bounded),
        "bounded-pairs" => simple(Marking::BoundedPairs),
        "explicit" => Ok(Marking::singletons_plus(p.len(), sets(rest)?)),
        "explicit-only" => Ok(Marking::Explicit(sets(rest)?)),
        k => match k.strip_prefix("card<=") {
            Some(n) => simple(Marking::CardLe(
                n.parse()
                    .map_err(|_| parse_err(line, format!("bad cardinality `{n}`")))?,
            )),
            None => Err(parse_err(line, format!("unknown marking `{k}`"))),
        },
    }
}

/// Parses a marking in the `marking:` syntax against a carrier.
pub fn parse_marking_spec(p: &Poset, text: &str) -> Result<Marking> {
    parse_marking(p, text, 0)
}

fn finish(d: Draft, cap: usize) -> Result<NamedPosemigroup> {
    let elements = d
        .elements
        .ok_or_else(|| parse_err(d.line, format!("posemigroup `{}` has no elements line", d.name)))?;
    let poset = Poset::new(elements.clone(), &d.order)?;
    let mut table: Vec<Option<Vec<usize>>> = vec![None; elements.len()];
    for (line, row, products) in &d.rows {
        let r = poset
            .index_of(row)
            .map_err(|_| parse_err(*line, format!("undeclared element `{row}`")))?;
        if table[r].is_some() {
            return Err(parse_err(*line, format!("duplicate row `{row}`")));
        }
        if products.len() != elements.len() {
            return Err(parse_err(
                *line,
                format!("row `{row}` has {} entries, expected {}", products.len(), elements.len()),
            ));
        }
        let cells = products
            .iter()
            .map(|c| {
                poset
                    .index_of(c)
                    .map_err(|_| parse_err(*line, format!("undeclared element `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        table[r] = Some(cells);
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.ok_or_else(|| {
                parse_err(d.line, format!("table of `{}` lacks row `{}`", d.name, elements[i]))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sg = Posemigroup::new(poset, table)?.with_cap(cap);
    let marking = match &d.marking {
        Some((line, text)) => parse_marking(sg.poset(), text, *line)?,
        None => Marking::D,
    };
    Ok(NamedPosemigroup {
        name: d.name,
        marked: MarkedPosemigroup::new(sg, marking)?,
    })
}

struct MorphismDraft {
    line: usize,
    name: String,
    from: String,
    to: String,
    pairs: Vec<(String, String)>,
}

fn parse_morphism_line(rest: &str, line: usize) -> Result<MorphismDraft> {
    let (name, body) = rest
        .split_once(':')
        .ok_or_else(|| parse_err(line, "expected `morphism <name>: ...`"))?;
    let name = name.trim();
    if !valid_name(name) {
        return Err(parse_err(line, format!("bad morphism name `{name}`")));
    }
    let tokens: Vec<&str> = body.split_whitespace().collect();
    let n = tokens.len();
    if n < 4 || tokens[n - 4] != "from" || tokens[n - 2] != "to" {
        return Err(parse_err(line, "expected `... from <source> to <target>`"));
    }
    let pairs = tokens[..n - 4]
        .iter()
        .map(|t| {
            t.split_once("->")
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .ok_or_else(|| parse_err(line, format!("expected `x->y`, got `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MorphismDraft {
        line,
        name: name.to_string(),
        from: tokens[n - 3].to_string(),
        to: tokens[n - 1].to_string(),
        pairs,
    })
}

fn resolve_morphism(s: &Scenario, m: MorphismDraft) -> Result<MorphismSpec> {
    let find = |n: &str| {
        s.posemigroup(n)
            .map_err(|_| parse_err(m.line, format!("undeclared posemigroup `{n}`")))
    };
    let src = find(&m.from)?.posemigroup().poset();
    let dst = find(&m.to)?.posemigroup().poset();
    let mut map: Vec<Option<usize>> = vec![None; src.len()];
    for (a, b) in &m.pairs {
        let x = src
            .index_of(a)
            .map_err(|_| parse_err(m.line, format!("`{a}` is not in `{}`", m.from)))?;
        let y = dst
            .index_of(b)
            .map_err(|_| parse_err(m.line, format!("`{b}` is not in `{}`", m.to)))?;
        if map[x].replace(y).is_some() {
            return Err(parse_err(m.line, format!("`{a}` is mapped twice")));
        }
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(i, y)| y.ok_or_else(|| parse_err(m.line, format!("`{}` has no image", src.name(i)))))
        .collect::<Result<Vec<_>>>()?;
    Ok(MorphismSpec {
        name: m.name,
        from: m.from,
        to: m.to,
        map,
    })
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    parse_scenario_with_cap(text, crate::order::DEFAULT_CAP)
}

/// Parses and validates every posemigroup, marking and morphism. `cap`
/// bounds subset enumeration on each carrier.
pub fn parse_scenario_with_cap(text: &str, cap: usize) -> Result<Scenario> {
    let mut scenario = Scenario::default();
    let mut morphisms = Vec::new();
    let mut current: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        if head == "posemigroup" {
            if let Some(d) = current.take() {
                scenario.posemigroups.push(finish(d, cap)?);
            }
            if !valid_name(rest) {
                return Err(parse_err(line, format!("bad posemigroup name `{rest}`")));
            }
            if scenario.posemigroups.iter().any(|p| p.name == rest) {
                return Err(parse_err(line, format!("posemigroup `{rest}` declared twice")));
            }
            current = Some(Draft {
                name: rest.to_string(),
                line,
                ..Draft::default()
            });
            continue;
        }
        if head == "morphism" {
            morphisms.push(parse_morphism_line(rest, line)?);
            continue;
        }
        let d = current
            .as_mut()
            .ok_or_else(|| parse_err(line, "expected `posemigroup <name>` first"))?;
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, format!("unrecognised line `{content}`")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "elements" => {
                if d.elements.is_some() {
                    return Err(parse_err(line, "elements declared twice"));
                }
                let names: Vec<String> = value.split_whitespace().map(String::from).collect();
                if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                    return Err(parse_err(line, format!("bad element name `{bad}`")));
                }
                d.elements = Some(names);
                d.in_table = false;
            }
            "order" => {
                for chain in value.split_whitespace() {
                    let parts: Vec<&str> = chain.split('<').collect();
                    if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
                        return Err(parse_err(line, format!("expected `x<y`, got `{chain}`")));
                    }
                    for w in parts.windows(2) {
                        d.order.push((w[0].to_string(), w[1].to_string()));
                    }
                }
                d.in_table = false;
            }
            "table" => {
                if !value.is_empty() {
                    return Err(parse_err(line, "table rows go on the following lines"));
                }
                d.in_table = true;
            }
            "marking" => {
                if d.marking.is_some() {
                    return Err(parse_err(line, "marking declared twice"));
                }
                d.marking = Some((line, value.to_string()));
                d.in_table = false;
            }
            row if d.in_table => {
                let known = d.elements.as_ref().is_some_and(|e| e.iter().any(|n| n == row));
                if !known {
                    return Err(parse_err(line, format!("undeclared element `{row}`")));
                }
                d.rows.push((
                    line,
                    row.to_string(),
                    value.split_whitespace().map(String::from).collect(),
                ));
            }
            other => return Err(parse_err(line, format!("unknown key `{other}`"))),
        }
    }
    if let Some(d) = current.take() {
        scenario.posemigroups.push(finish(d, cap)?);
    }
    for m in morphisms {
        if scenario.morphisms.iter().any(|x| x.name == m.name) {
            return Err(parse_err(m.line, format!("morphism `{}` declared twice", m.name)));
        }
        let spec = resolve_morphism(&scenario, m)?;
        scenario.morphisms.push(spec);
    }
    Ok(scenario)
}

fn print_marking(p: &Poset, m: &Marking) -> String {
    match m {
        Marking::D => "D".into(),
        Marking::Singletons => "singletons".into(),
        Marking::Full => "full".into(),
        Marking::CardLe(n) => format!("card<={n}"),
        Marking::Chains => "chains".into(),
        Marking::Directed => "directed".into(),
        Marking::Bounded => "bounded".into(),
        Marking::BoundedPairs => "bounded-pairs".into(),
        Marking::Explicit(sets) => {
            let with_singletons = (0..p.len()).all(|i| sets.contains(&Subset::singleton(i)));
            let mut listed: Vec<Subset> = sets
                .iter()
                .copied()
                .filter(|s| !with_singletons || s.len() != 1)
                .collect();
            p.sort_canonical(&mut listed);
            let mut out = String::from(if with_singletons { "explicit" } else { "explicit-only" });
            for s in listed {
                out.push(' ');
                out.push_str(&p.set_name(s));
            }
            out
        }
    }
}

/// Writes a scenario back in the text format. Orders are given by their
/// covering pairs.
pub fn print_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    for (k, np) in s.posemigroups.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let sg = np.posemigroup();
        let p = sg.poset();
        let _ = writeln!(out, "posemigroup {}", np.name);
        let _ = writeln!(out, "elements: {}", p.names().join(" "));
        let covers: Vec<String> = p
            .hasse()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", p.name(x), p.name(y)))
            .collect();
        if !covers.is_empty() {
            let _ = writeln!(out, "order: {}", covers.join(" "));
        }
        out.push_str("table:\n");
        for x in 0..sg.len() {
            let row: Vec<&str> = (0..sg.len()).map(|y| p.name(sg.mul(x, y))).collect();
            let _ = writeln!(out, "{}: {}", p.name(x), row.join(" "));
        }
        let _ = writeln!(out, "marking: {}", print_marking(p, np.marked.marking()));
    }
    if !s.morphisms.is_empty() {
        out.push('\n');
    }
    for m in &s.morphisms {
        let (src, dst) = match s.endpoints(m) {
            Ok(e) => e,
            Err(_) => continue,
        };
        let (sp, dp) = (src.posemigroup().poset(), dst.posemigroup().poset());
        let pairs: Vec<String> = m
            .map
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", sp.name(x), dp.name(y)))
            .collect();
        let _ = writeln!(out, "morphism {}: {} from {} to {}", m.name, pairs.join(" "), m.from, m.to);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX63: &str = "\
# three elements
posemigroup S
elements: a b c
order: b<a c<a
table:
a: a c c
b: a c c
c: a c c
marking: D

morphism f: a->a b->a c->a from S to S
";

    #[test]
    fn parses_a_small_file() {
        let s = parse_scenario(EX63).unwrap();
        let sg = s.posemigroup("S").unwrap().posemigroup();
        assert_eq!(sg.len(), 3);
        assert!(sg.poset().leq(1, 0));
        assert_eq!(sg.mul(0, 1), 2);
        assert_eq!(s.morphism("f").unwrap().map, vec![0, 0, 0]);
    }

    #[test]
    fn round_trip() {
        let s = parse_scenario(EX63).unwrap();
        let printed = print_scenario(&s);
        let again = parse_scenario(&printed).unwrap();
        assert_eq!(s, again);
        assert_eq!(print_scenario(&again), printed);
    }

    #[test]
    fn markings_round_trip() {
        for m in [
            "singletons",
            "full",
            "card<=2",
            "chains",
            "directed",
            "bounded",
            "bounded-pairs",
            "explicit-only {a} {b} {c}",
        ] {
            let text = EX63.replace("marking: D", &format!("marking: {m}"));
            let s = match parse_scenario(&text) {
                Ok(s) => s,
                // Not every kind is a marking on this posemigroup.
                Err(Error::InvalidMarking(_)) => continue,
                Err(e) => panic!("{m}: {e}"),
            };
            assert_eq!(parse_scenario(&print_scenario(&s)).unwrap(), s, "{m}");
        }
    }

    #[test]
    fn undeclared_element_in_table() {
        let text = EX63.replace("b: a c c", "b: a q c");
        match parse_scenario(&text) {
            Err(Error::Parse { line, reason }) => {
                assert_eq!(line, 7);
                assert!(reason.contains("`q`"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
        let text = EX63.replace("b: a c c", "q: a c c");
        assert!(matches!(parse_scenario(&text), Err(Error::Parse { line: 7, .. })));
    }

    #[test]
    fn non_associative_table() {
        let text = "posemigroup T\nelements: a b\ntable:\na: b a\nb: a a\nmarking: singletons\n";
        assert!(matches!(
            parse_scenario(text),
            Err(Error::AssociativityViolation { .. })
        ));
    }

    #[test]
    fn structural_errors_carry_lines() {
        let cases = [
            ("elements: a\n", 1),
            ("posemigroup S\nelements: a\ntable:\na: a\nmarking: weird\n", 5),
            ("posemigroup S\nelements: a\ntable:\na: a\nfoo: bar\n", 5),
            ("posemigroup S\nelements: a\ntable:\na: a\nmorphism g: a->a from S to T\n", 5),
            ("posemigroup S\nelements: a b\ntable:\na: a a\nb: b b\nmorphism g: a->a from S to S\n", 6),
            ("posemigroup S\nelements: a\ntable:\na: a a\n", 4),
            ("posemigroup S\nelements: a\norder: a<\ntable:\na: a\n", 3),
        ];
        for (text, want) in cases {
            match parse_scenario(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn explicit_adds_singletons() {
        let text = EX63.replace("marking: D", "marking: explicit { b , c }");
        let s = parse_scenario(&text).unwrap();
        let ms = &s.posemigroups[0].marked;
        assert!(ms.is_admissible(Subset::from_indices([1, 2])));
        assert!(ms.is_admissible(Subset::singleton(0)));
        assert!(!ms.is_admissible(Subset::from_indices([0, 1])));
    }
}
