//! Command dispatch for the `posq` binary.
//!
//! Every command returns its report text and a [`Status`]; `main` maps the
//! status to the exit code (0 computed or passed, 1 failed with a witness,
//! 2 error).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use posq::bundled;
use posq::closure::{
    closed_quantale, closed_sets, describe_closure_failure, inclusion_check, is_closure_preserving, reflect_morphism_closure,
    reflection_tau, uniqueness_check_closure,
};
use posq::dot::emit_dot;
use posq::ideal::{ideal_quantale, ideals, reflect_morphism_g, reflection_t, uniqueness_check};
use posq::marking::{
    check_marked_morphism, check_marked_quantale, check_marking_axioms, describe_axiom_failure,
    describe_marked_quantale_failure, describe_morphism_failure,
};
use posq::quantale::{find_isomorphism, quantale_axioms};
use posq::reflection::{InducedMap, Reflection, ReflectionReport, Uniqueness, UNIQUENESS_CAP};
use posq::scenario::{parse_marking_spec, parse_scenario_with_cap, MorphismSpec, NamedPosemigroup, Scenario};
use posq::word::{word_join_checks, JoinBound, WordJoinConfig};
use posq::{Error, FiniteQuantale, MarkedPosemigroup, MorphismLevel, Posemigroup, Subset, Verdict};

#[derive(Parser, Debug)]
#[command(name = "posq", version, about = "Markings, A-ideals and closed sets of finite posemigroups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Largest carrier for subset enumeration.
    #[arg(long, global = true, default_value_t = posq::order::DEFAULT_CAP)]
    pub cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Posemigroup,
    Marked,
    Quantale,
    Closure,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Ideals,
    Closed,
    Poset,
}

/// Which posemigroup of a scenario to use, and with which marking.
#[derive(clap::Args, Debug, Clone)]
pub struct Input {
    /// A scenario file, or the name of a bundled one.
    pub input: String,
    /// Posemigroup to analyse; the first one by default.
    #[arg(long)]
    pub sg: Option<String>,
    /// Replace the file's marking, e.g. `D` or `explicit {b,c}`.
    #[arg(long)]
    pub marking: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a scenario.
    Validate {
        /// A scenario file, or the name of a bundled one.
        input: String,
    },
    /// Check the marking axioms and whether the marking makes a marked quantale.
    MarkingCheck(Input),
    /// List the A-ideals.
    Ideals(Input),
    /// List the closed lower sets.
    Closed(Input),
    /// Report on t: S → Id_A(S), or factor a morphism through it.
    ReflectIdeal {
        #[command(flatten)]
        input: Input,
        /// Morphism into a finite quantale to factor through t.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Report on τ: S → Q(S), or factor a morphism through it.
    ReflectClosure {
        #[command(flatten)]
        input: Input,
        /// Morphism into a finite quantale to factor through τ.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Check a morphism of the scenario at the given level.
    CheckMorphism {
        /// A scenario file, or the name of a bundled one.
        input: String,
        #[arg(long)]
        morphism: String,
        #[arg(long, value_enum, default_value_t = Level::Posemigroup)]
        level: Level,
    },
    /// Compare Q(S) with Id_A(S).
    Compare(Input),
    /// Emit a Hasse diagram as DOT.
    Dot {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Target::Closed)]
        target: Target,
    },
    /// Replay the bundled scenarios and their expected values.
    Examples,
    /// Joins in the word posemigroup.
    WordCheck {
        /// Numbers in candidate upper bounds range over 0..=N.
        #[arg(long, default_value_t = 3)]
        max_coeff: u64,
        /// Multipliers have at most this many letters.
        #[arg(long, default_value_t = 2)]
        sample_letters: usize,
        /// Multipliers use numbers up to this value.
        #[arg(long, default_value_t = 3)]
        sample_coeff: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
        }
    }

    fn and(self, ok: bool) -> Status {
        if ok {
            self
        } else {
            Status::Fail
        }
    }
}

pub struct Report {
    pub text: String,
    pub status: Status,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, status: Status::Ok }
    }
}

fn read_scenario(input: &str, cap: usize) -> Result<Scenario, Error> {
    let text = if Path::new(input).exists() {
        std::fs::read_to_string(input).map_err(|e| Error::PreconditionFailed(format!("{input}: {e}")))?
    } else {
        bundled::text(input)
            .ok_or_else(|| Error::PreconditionFailed(format!("{input}: no such file or bundled scenario")))?
            .to_string()
    };
    parse_scenario_with_cap(&text, cap)
}

fn select<'a>(s: &'a Scenario, name: Option<&str>) -> Result<&'a NamedPosemigroup, Error> {
    match name {
        Some(n) => s.posemigroup(n),
        None => s
            .posemigroups
            .first()
            .ok_or_else(|| Error::PreconditionFailed("scenario declares no posemigroup".into())),
    }
}

/// The selected posemigroup with its marking, overridden if requested.
fn marked(s: &Scenario, input: &Input) -> Result<(String, MarkedPosemigroup), Error> {
    let np = select(s, input.sg.as_deref())?;
    let ms = match &input.marking {
        Some(spec) => {
            let sg = np.posemigroup();
            MarkedPosemigroup::new(sg.clone(), parse_marking_spec(sg.poset(), spec)?)?
        }
        None => np.marked.clone(),
    };
    Ok((np.name.clone(), ms))
}

fn list_sets(out: &mut String, sg: &Posemigroup, sets: &[Subset]) {
    for &s in sets {
        let _ = writeln!(out, "  {}", sg.poset().set_name(s));
    }
}

fn verdict_line<W>(out: &mut String, what: &str, v: &Verdict<W>, describe: impl Fn(&W) -> String) -> bool {
    match v {
        Verdict::Pass => {
            let _ = writeln!(out, "{what}: PASS");
            true
        }
        Verdict::Fail(w) => {
            let _ = writeln!(out, "{what}: FAIL, witness {}", describe(w));
            false
        }
    }
}

fn reflection_text(out: &mut String, sg: &Posemigroup, unit: &str, r: &Reflection) -> bool {
    let p = sg.poset();
    let q = &r.quantale;
    let ReflectionReport {
        multiplicative,
        admissible_joins,
        eta,
        closure_preserving,
        unpreserved_joins,
    } = &r.report;
    let _ = writeln!(out, "{unit}: S -> quantale of {} elements", q.len());
    for (x, &k) in r.map.iter().enumerate() {
        let _ = writeln!(out, "  {unit}({}) = {}", p.name(x), q.label(k));
    }
    let mut pass = verdict_line(out, "multiplicative", multiplicative, |&(x, y)| {
        format!("({}, {})", p.name(x), p.name(y))
    });
    pass &= verdict_line(out, "admissible joins preserved", admissible_joins, |&m| p.set_name(m));
    let _ = writeln!(out, "order embedding: {}", if eta.order_embedding { "PASS" } else { "FAIL" });
    pass &= eta.order_embedding;
    pass &= verdict_line(out, "meets preserved", &eta.meets_preserved, |&m| p.set_name(m));
    pass &= verdict_line(out, "join dense", &eta.join_dense, |&d| p.set_name(d));
    if let Some(cp) = closure_preserving {
        let _ = writeln!(out, "closure preserving: {}", if *cp { "PASS" } else { "FAIL" });
        pass &= *cp;
    }
    if !unpreserved_joins.is_empty() {
        let names: Vec<String> = unpreserved_joins.iter().map(|&m| p.set_name(m)).collect();
        let _ = writeln!(out, "joins not preserved (not admissible): {}", names.join(" "));
    }
    pass
}

fn induced_text(out: &mut String, src: &FiniteQuantale, dst: &FiniteQuantale, g: &InducedMap, u: Option<&Uniqueness>) -> bool {
    let _ = writeln!(out, "g(D) = join of f(D):");
    for (d, &k) in g.map.iter().enumerate() {
        let _ = writeln!(out, "  g({}) = {}", src.label(d), dst.label(k));
    }
    let mut pass = verdict_line(out, "quantale morphism", &g.quantale_morphism, |w| format!("{w:?}"));
    pass &= verdict_line(out, "factors f", &g.factors, |&s| format!("element {s}"));
    let _ = writeln!(out, "order embedding: {}", if g.order_embedding { "yes" } else { "no" });
    match u {
        Some(u) => {
            let _ = writeln!(out, "factorizations found: {}", u.factorizations.len());
            let _ = writeln!(out, "unique: {}", if u.unique { "PASS" } else { "FAIL" });
            pass &= u.unique;
        }
        None => {
            let _ = writeln!(out, "uniqueness: skipped (more than {UNIQUENESS_CAP} elements)");
        }
    }
    pass
}

fn morphism_target(s: &Scenario, name: &str) -> Result<(MorphismSpec, FiniteQuantale), Error> {
    let m = s.morphism(name)?.clone();
    let (_, dst) = s.endpoints(&m)?;
    let q = FiniteQuantale::from_posemigroup(dst.posemigroup());
    if let Verdict::Fail(w) = quantale_axioms(&q) {
        return Err(Error::PreconditionFailed(format!("target `{}` is not a quantale: {w:?}", m.to)));
    }
    Ok((m, q))
}

fn check_source(s: &Scenario, m: &MorphismSpec, sg_name: &str) -> Result<(), Error> {
    if m.from != sg_name {
        return Err(Error::PreconditionFailed(format!(
            "morphism `{}` starts at `{}`, not `{sg_name}`",
            m.name, m.from
        )));
    }
    s.posemigroup(&m.from).map(|_| ())
}

fn validate(s: &Scenario) -> Report {
    let mut out = String::new();
    for np in &s.posemigroups {
        let sg = np.posemigroup();
        let _ = writeln!(
            out,
            "posemigroup {}: {} elements, marking {}",
            np.name,
            sg.len(),
            np.marked.marking().describe(sg)
        );
    }
    for m in &s.morphisms {
        let _ = writeln!(out, "morphism {}: {} -> {}", m.name, m.from, m.to);
    }
    out.push_str("valid\n");
    Report::ok(out)
}

fn marking_check(name: &str, ms: &MarkedPosemigroup) -> Result<Report, Error> {
    let sg = ms.posemigroup();
    let mut out = String::new();
    let _ = writeln!(out, "{name}: marking {}", ms.marking().describe(sg));
    out.push_str("marking axioms: PASS\n");
    let _ = writeln!(out, "admissible sets: {}", ms.admissible_sets()?.len());
    let v = check_marked_quantale(ms)?;
    let pass = verdict_line(&mut out, "marked quantale", &v, |w| describe_marked_quantale_failure(sg, w));
    Ok(Report {
        text: out,
        status: Status::Ok.and(pass),
    })
}

fn dot_or_list(
    format: Format,
    title: &str,
    sg: &Posemigroup,
    sets: &[Subset],
    q: impl FnOnce() -> Result<FiniteQuantale, Error>,
) -> Result<Report, Error> {
    if format == Format::Dot {
        return Ok(Report::ok(emit_dot(title, &q()?)));
    }
    let mut out = format!("{title}: {} sets\n", sets.len());
    list_sets(&mut out, sg, sets);
    Ok(Report::ok(out))
}

fn reflect_ideal(s: &Scenario, input: &Input, morphism: Option<&str>) -> Result<Report, Error> {
    let (name, ms) = marked(s, input)?;
    let sg = ms.posemigroup();
    let mut out = String::new();
    let pass = match morphism {
        None => {
            let r = reflection_t(&ms)?;
            reflection_text(&mut out, sg, "t", &r)
        }
        Some(mname) => {
            let (m, q) = morphism_target(s, mname)?;
            check_source(s, &m, &name)?;
            let g = reflect_morphism_g(&ms, &q, &m.map)?;
            let src = ideal_quantale(&ms)?;
            let u = if src.len() <= UNIQUENESS_CAP && q.len() <= UNIQUENESS_CAP {
                Some(uniqueness_check(&ms, &q, &m.map)?)
            } else {
                None
            };
            induced_text(&mut out, &src, &q, &g, u.as_ref())
        }
    };
    Ok(Report {
        text: out,
        status: Status::Ok.and(pass),
    })
}

fn reflect_closure(s: &Scenario, input: &Input, morphism: Option<&str>) -> Result<Report, Error> {
    let np = select(s, input.sg.as_deref())?;
    let sg = np.posemigroup();
    let mut out = String::new();
    let pass = match morphism {
        None => {
            let r = reflection_tau(sg)?;
            reflection_text(&mut out, sg, "tau", &r)
        }
        Some(mname) => {
            let (m, q) = morphism_target(s, mname)?;
            check_source(s, &m, &np.name)?;
            let g = reflect_morphism_closure(sg, &q, &m.map)?;
            let src = closed_quantale(sg)?;
            let u = if src.len() <= UNIQUENESS_CAP && q.len() <= UNIQUENESS_CAP {
                Some(uniqueness_check_closure(sg, &q, &m.map)?)
            } else {
                None
            };
            induced_text(&mut out, &src, &q, &g, u.as_ref())
        }
    };
    Ok(Report {
        text: out,
        status: Status::Ok.and(pass),
    })
}

fn check_morphism(s: &Scenario, name: &str, level: Level) -> Result<Report, Error> {
    let m = s.morphism(name)?;
    let (src, dst) = s.endpoints(m)?;
    let (ss, ds) = (src.posemigroup(), dst.posemigroup());
    let mut out = format!("morphism {}: {} -> {}\n", m.name, m.from, m.to);
    let pass = match level {
        Level::Closure => {
            let base = ss.check_morphism(&m.map, ds);
            if !verdict_line(&mut out, "posemigroup morphism", &base, |w| describe_morphism_failure(ss, ds, &m.map, w)) {
                false
            } else {
                let cp = is_closure_preserving(&m.map, ss, ds)?;
                let pass = verdict_line(&mut out, "closure preserving", &cp.preserves, |&w| {
                    describe_closure_failure(ss, ds, &m.map, w)
                });
                let _ = writeln!(
                    out,
                    "equivalent conditions agree: {}",
                    if cp.agree() { "yes" } else { "no" }
                );
                pass && cp.agree()
            }
        }
        _ => {
            let lvl = match level {
                Level::Posemigroup => MorphismLevel::Posemigroup,
                Level::Marked => MorphismLevel::Marked,
                _ => MorphismLevel::MarkedQuantale,
            };
            let label = match lvl {
                MorphismLevel::Posemigroup => "posemigroup morphism",
                MorphismLevel::Marked => "marked morphism",
                MorphismLevel::MarkedQuantale => "marked quantale morphism",
            };
            let v = check_marked_morphism(&m.map, &src.marked, &dst.marked, lvl)?;
            verdict_line(&mut out, label, &v, |w| describe_morphism_failure(ss, ds, &m.map, w))
        }
    };
    Ok(Report {
        text: out,
        status: Status::Ok.and(pass),
    })
}

fn compare(s: &Scenario, input: &Input) -> Result<Report, Error> {
    let (name, ms) = marked(s, input)?;
    let sg = ms.posemigroup();
    let q = closed_quantale(sg)?;
    let id = ideal_quantale(&ms)?;
    let mut out = format!("{name}: marking {}\n", ms.marking().describe(sg));
    let _ = writeln!(out, "|Q(S)| = {}", q.len());
    let _ = writeln!(out, "|Id_A(S)| = {}", id.len());
    let mut pass = true;
    if check_marked_quantale(&ms)?.is_pass() {
        let r = inclusion_check(&ms)?;
        pass &= verdict_line(&mut out, "Q(S) inside Id_A(S)", &r.closed_are_ideals, |&d| sg.poset().set_name(d));
        let _ = writeln!(out, "equal: {}", if r.equal() { "yes" } else { "no" });
    } else {
        out.push_str("Q(S) inside Id_A(S): skipped (not a marked quantale)\n");
    }
    let iso = |a: &FiniteQuantale, b: &FiniteQuantale| -> Result<&'static str, Error> {
        Ok(match find_isomorphism(a, b) {
            Ok(Some(_)) => "isomorphic",
            Ok(None) => "not isomorphic",
            Err(Error::CapExceeded { .. }) => "too large to search",
            Err(e) => return Err(e),
        })
    };
    let _ = writeln!(out, "Q(S) vs Id_A(S): {}", iso(&q, &id)?);
    let sq = FiniteQuantale::from_posemigroup(sg);
    if quantale_axioms(&sq).is_pass() {
        let _ = writeln!(out, "S vs Q(S): {}", iso(&sq, &q)?);
        let _ = writeln!(out, "S vs Id_A(S): {}", iso(&sq, &id)?);
    }
    Ok(Report {
        text: out,
        status: Status::Ok.and(pass),
    })
}

fn dot(s: &Scenario, input: &Input, target: Target) -> Result<Report, Error> {
    let (name, ms) = marked(s, input)?;
    let sg = ms.posemigroup();
    Ok(Report::ok(match target {
        Target::Poset => emit_dot(&name, sg.poset()),
        Target::Ideals => emit_dot(&format!("Id_A({name})"), &ideal_quantale(&ms)?),
        Target::Closed => emit_dot(&format!("Q({name})"), &closed_quantale(sg)?),
    }))
}

/// Expected values for the bundled scenarios.
fn examples() -> Result<Report, Error> {
    let mut out = String::new();
    let mut all = true;
    let mut line = |ok: bool, what: String| {
        let _ = writeln!(out, "{} {what}", if ok { "PASS" } else { "FAIL" });
        all &= ok;
    };
    let load = |n: &str| bundled::load(n).expect("bundled name");

    let s = load("three")?;
    let np = s.posemigroup("S")?;
    let n_id = ideals(&np.marked)?.len();
    let n_q = closed_sets(np.posemigroup())?.len();
    line(n_id == 5 && n_q == 5, format!("three: |Id_D| = {n_id}, |Q| = {n_q} (want 5, 5)"));
    let unpreserved = reflection_t(&np.marked)?.report.unpreserved_joins;
    line(
        unpreserved == vec![np.posemigroup().poset().parse_set("{b,c}")?],
        "three: t does not preserve b ∨ c".into(),
    );
    let f = &s.morphism("const")?.map;
    let cp = is_closure_preserving(f, np.posemigroup(), np.posemigroup())?;
    line(cp.is_pass(), "three: the constant map is closure preserving".into());

    let s = load("five")?;
    let np = s.posemigroup("S")?;
    let n_id = ideals(&np.marked)?.len();
    let n_q = closed_sets(np.posemigroup())?.len();
    line(n_id == 20 && n_q == 10, format!("five: |Id_D| = {n_id}, |Q| = {n_q} (want 20, 10)"));

    let s = load("cube")?;
    let np = s.posemigroup("S")?;
    let n_a = ideals(&np.marked)?.len();
    let d = MarkedPosemigroup::new(np.posemigroup().clone(), posq::Marking::D)?;
    let n_d = ideals(&d)?.len();
    line(n_a == 15 && n_d == 8, format!("cube: |Id_A| = {n_a}, |Id_D| = {n_d} (want 15, 8)"));

    let s = load("inclusion")?;
    let m = s.morphism("iota")?;
    let (a, b) = s.endpoints(m)?;
    let cp = is_closure_preserving(&m.map, a.posemigroup(), b.posemigroup())?;
    let want = a.posemigroup().poset().parse_set("{b,c}")?;
    line(
        cp.preserves == Verdict::Fail(want),
        "inclusion: iota fails closure preservation at {b,c}".into(),
    );

    let s = load("quantales")?;
    for np in &s.posemigroups {
        let sg = np.posemigroup();
        let sq = FiniteQuantale::from_posemigroup(sg);
        let ok = find_isomorphism(&sq, &closed_quantale(sg)?)?.is_some()
            && find_isomorphism(&sq, &ideal_quantale(&np.marked)?)?.is_some();
        line(ok, format!("quantales: {} ≅ Q ≅ Id_D", np.name));
    }

    let r = word_join_checks(WordJoinConfig::default());
    line(r.is_pass(), "words: one-sided translations preserve the join, two-sided do not".into());

    Ok(Report {
        text: out,
        status: Status::Ok.and(all),
    })
}

fn word_check(max_coeff: u64, sample_letters: usize, sample_coeff: u64) -> Report {
    let r = word_join_checks(WordJoinConfig {
        sample_letters,
        sample_coeff,
        bound: JoinBound { max_coeff },
    });
    let show = |w: &Option<posq::word::Word>| w.as_ref().map_or("none within bound".into(), |w| w.to_string());
    let mut out = String::new();
    let _ = writeln!(out, "join of {{0x0, 0y0}}: {}", show(&r.join));
    let _ = writeln!(out, "sampled multipliers: {}", r.sampled);
    verdict_line(&mut out, "left multiplication preserves the join", &r.left, |w| w.to_string());
    verdict_line(&mut out, "right multiplication preserves the join", &r.right, |w| w.to_string());
    let _ = writeln!(out, "1·(join)·1 = {}", show(&r.translated_join));
    let _ = writeln!(out, "join of 1·M·1 = {}", show(&r.join_of_translates));
    let _ = writeln!(out, "strictly below: {}", if r.strictly_below { "yes" } else { "no" });
    let pass = r.is_pass();
    let _ = writeln!(out, "{}", if pass { "PASS" } else { "FAIL" });
    Report {
        text: out,
        status: Status::Ok.and(pass),
    }
}

/// Runs one command.
pub fn run(cli: &Cli) -> Result<Report, Error> {
    let cap = cli.cap;
    let load = |input: &str| read_scenario(input, cap);
    match &cli.command {
        Command::Validate { input } => Ok(validate(&load(input)?)),
        Command::MarkingCheck(input) => {
            let s = load(&input.input)?;
            if let Some(spec) = &input.marking {
                let np = select(&s, input.sg.as_deref())?;
                let sg = np.posemigroup();
                let m = parse_marking_spec(sg.poset(), spec)?;
                if let Verdict::Fail(w) = check_marking_axioms(sg, &m)? {
                    return Ok(Report {
                        text: format!("{}: marking {}\nmarking axioms: FAIL, witness {}\n", np.name, m.describe(sg), describe_axiom_failure(sg, &w)),
                        status: Status::Fail,
                    });
                }
            }
            let (name, ms) = marked(&s, input)?;
            marking_check(&name, &ms)
        }
        Command::Ideals(input) => {
            let s = load(&input.input)?;
            let (name, ms) = marked(&s, input)?;
            let sets = ideals(&ms)?;
            dot_or_list(cli.format, &format!("Id_A({name})"), ms.posemigroup(), &sets, || ideal_quantale(&ms))
        }
        Command::Closed(input) => {
            let s = load(&input.input)?;
            let (name, ms) = marked(&s, input)?;
            let sg = ms.posemigroup();
            let sets = closed_sets(sg)?;
            dot_or_list(cli.format, &format!("Q({name})"), sg, &sets, || closed_quantale(sg))
        }
        Command::ReflectIdeal { input, morphism } => reflect_ideal(&load(&input.input)?, input, morphism.as_deref()),
        Command::ReflectClosure { input, morphism } => reflect_closure(&load(&input.input)?, input, morphism.as_deref()),
        Command::CheckMorphism { input, morphism, level } => check_morphism(&load(input)?, morphism, *level),
        Command::Compare(input) => compare(&load(&input.input)?, input),
        Command::Dot { input, target } => dot(&load(&input.input)?, input, *target),
        Command::Examples => examples(),
        Command::WordCheck {
            max_coeff,
            sample_letters,
            sample_coeff,
        } => Ok(word_check(*max_coeff, *sample_letters, *sample_coeff)),
    }
}
