//! The command-line front end.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::catcore::PullbackMode;
use crate::constructions::{
    comparison_witnesses, double_nerve_diag, forgetful_equivalence, ob_s, s_simplicial, t_simplicial, Direction,
};
use crate::dot::{export_dot, DotObject};
use crate::double::{
    check_completion_axioms, validate_squares_category, weak_equivalences, CompletionData, CompletionMode,
    SquaresCat,
};
use crate::error::{Error, Result};
use crate::examples::{
    finset_squares, graph_squares, interval_polytopes, partial_monoid_squares, path_double_category, GraphData,
    GraphInput, GraphVariant,
};
use crate::interchange::{parse_json, read_partial_monoid, read_squares, read_sset, write_squares, write_sset};
use crate::k0::{check_sum_existence, k0_group};
use crate::simplicial::{
    check_2segal_comparisons, check_2segal_groupoids, check_segal, check_segal1_in_cat, find_isomorphism,
    validate_truncated, validate_truncated_cat, SegalDegree, TruncSSet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Check the squares category axioms and any supplied completions.
    Validate,
    /// List the horizontal and vertical weak equivalences.
    Weq,
    /// Compute the Grothendieck group.
    K0,
    /// Build and validate the T and S levels and the object nerves.
    Nerve,
    /// Run the Segal checks.
    Segal,
    /// Construct the comparison witnesses and forgetful equivalences.
    Compare,
    /// Path construction followed by the object nerve.
    Roundtrip,
    /// Export the squares as a DOT graph.
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Proto,
    Stable,
}

impl From<Mode> for CompletionMode {
    fn from(m: Mode) -> CompletionMode {
        match m {
            Mode::Proto => CompletionMode::ProtoWaldhausen,
            Mode::Stable => CompletionMode::Stable,
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(name = "sqcat", about = "Checks and constructions for finite squares categories")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// An interchange JSON file.
    pub input: Option<PathBuf>,
    /// Builder spec: finset:N, pmonoid:FILE, graph:1:FILE, graph:2:N,
    /// graph:3:N, intervals:Q:L or path:FILE.
    #[arg(long)]
    pub builder: Option<String>,
    /// Truncation level.
    #[arg(long, default_value_t = 4)]
    pub levels: usize,
    #[arg(long, value_enum, default_value_t = Mode::Stable)]
    pub mode: Mode,
    /// Output file for dot, validate (interchange JSON) and nerve (object
    /// nerve JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Exit status and report text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

impl Outcome {
    fn checked(passed: bool, report: String) -> Outcome {
        Outcome { code: if passed { 0 } else { 1 }, report }
    }

    fn malformed(e: &Error) -> Outcome {
        Outcome { code: 2, report: format!("malformed input: {e}\n") }
    }
}

struct Input {
    d: SquaresCat,
    comp: Option<CompletionData>,
    sset: Option<TruncSSet>,
    label: String,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Malformed {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn bad_spec(spec: &str, message: impl Into<String>) -> Error {
    Error::Malformed { path: format!("--builder {spec}"), message: message.into() }
}

fn number(spec: &str, s: &str, max: usize) -> Result<usize> {
    let n: usize = s.parse().map_err(|_| bad_spec(spec, format!("`{s}` is not a number")))?;
    if n > max {
        return Err(bad_spec(spec, format!("{n} exceeds the supported maximum {max}")));
    }
    Ok(n)
}

fn build(spec: &str) -> Result<Input> {
    let parts: Vec<&str> = spec.splitn(3, ':').collect();
    let input = |d, comp, sset| Input { d, comp, sset, label: spec.to_string() };
    // Builder failures on well-formed parameters are malformed input too.
    let as_input_error = |e: Error| match e {
        Error::Malformed { .. } => e,
        other => bad_spec(spec, other.to_string()),
    };
    match parts.as_slice() {
        ["finset", n] => {
            let (d, comp) = finset_squares(number(spec, n, 4)?);
            Ok(input(d, Some(comp), None))
        }
        ["pmonoid", file] => {
            let m = read_partial_monoid(&read(Path::new(file))?)?;
            let d = partial_monoid_squares(&m).map_err(as_input_error)?;
            Ok(input(d, None, None))
        }
        ["graph", "1", file] => {
            let g: GraphData = parse_json(&read(Path::new(file))?)?;
            let d = graph_squares(GraphVariant::Ambient, GraphInput::Ambient(&g)).map_err(as_input_error)?;
            Ok(input(d, None, None))
        }
        ["graph", v @ ("2" | "3"), n] => {
            let variant = if *v == "2" { GraphVariant::VertexPushout } else { GraphVariant::GraphPushout };
            let d = graph_squares(variant, GraphInput::Bound(number(spec, n, 4)?)).map_err(as_input_error)?;
            Ok(input(d, None, None))
        }
        ["intervals", q, l] => {
            let q = number(spec, q, 4)?;
            let l = number(spec, l, 4)?;
            if q == 0 || q * l > 8 {
                return Err(bad_spec(spec, "need q ≥ 1 and q·L ≤ 8"));
            }
            Ok(input(interval_polytopes(q, l), None, None))
        }
        ["path", file] => {
            let x = read_sset(&read(Path::new(file))?)?;
            let d = path_double_category(&x).map_err(as_input_error)?;
            Ok(input(d, None, Some(x)))
        }
        _ => Err(bad_spec(spec, "unknown builder")),
    }
}

fn load(cmd: &Command) -> Result<Input> {
    match (&cmd.builder, &cmd.input) {
        (Some(spec), None) => build(spec),
        (None, Some(path)) => {
            let (d, comp) = read_squares(&read(path)?)?;
            Ok(Input { d, comp, sset: None, label: path.display().to_string() })
        }
        _ => Err(Error::Malformed {
            path: "(arguments)".into(),
            message: "give exactly one of an input file or --builder".into(),
        }),
    }
}

fn write_out(path: &Path, text: &str) -> std::result::Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

/// Parses arguments and runs; clap usage errors exit with status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Command::try_parse_from(args) {
        Ok(cmd) => {
            let out = run(&cmd);
            print!("{}", out.report);
            out.code
        }
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            code
        }
    }
}

pub fn run(cmd: &Command) -> Outcome {
    let input = match load(cmd) {
        Ok(i) => i,
        Err(e) => return Outcome::malformed(&e),
    };
    let mut r = format!("input: {}\n", input.label);
    let result = match cmd.verb {
        Verb::Validate => validate(cmd, &input, &mut r),
        Verb::Weq => weq(&input, &mut r),
        Verb::K0 => k0(&input, &mut r),
        Verb::Nerve => nerve(cmd, &input, &mut r),
        Verb::Segal => segal(cmd, &input, &mut r),
        Verb::Compare => compare(cmd, &input, &mut r),
        Verb::Roundtrip => roundtrip(cmd, &input, &mut r),
        Verb::Dot => dot(cmd, &input, &mut r),
    };
    match result {
        Ok(passed) => Outcome::checked(passed, r),
        Err(msg) => {
            r.push_str(&format!("error: {msg}\n"));
            Outcome { code: 1, report: r }
        }
    }
}

/// Grid diagrams grow quadratically in the level, so the diagonal stops
/// early.
const DIAGONAL_LEVELS: usize = 2;

/// Extended diagrams of length four already exhaust memory on small
/// inputs.
const COMPARE_LEVELS: usize = 3;

type VerbResult = std::result::Result<bool, String>;

fn validate(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let v = validate_squares_category(d);
    let _ = write!(r, "{v}");
    let mut ok = v.passed();
    if ok {
        if let Some(comp) = &input.comp {
            let c = check_completion_axioms(d, comp, cmd.mode.into()).map_err(|e| e.to_string())?;
            let _ = write!(r, "{c}");
            ok &= c.passed();
        }
    }
    if let Some(path) = &cmd.out {
        write_out(path, &write_squares(d, input.comp.as_ref()))?;
        let _ = writeln!(r, "wrote {}", path.display());
    }
    Ok(ok)
}

fn weq(input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let w = weak_equivalences(d);
    let _ = writeln!(r, "horizontal weak equivalences: {}", w.hweq.len());
    for &f in w.hweq.keys() {
        let _ = writeln!(r, "  {}", d.h().morphism_name(f));
    }
    let _ = writeln!(r, "vertical weak equivalences: {}", w.vweq.len());
    for &u in w.vweq.keys() {
        let _ = writeln!(r, "  {}", d.v().morphism_name(u));
    }
    Ok(true)
}

fn k0(input: &Input, r: &mut String) -> VerbResult {
    let k = k0_group(&input.d);
    let _ = write!(r, "{k}");
    let s = check_sum_existence(&input.d);
    let verdict = if s.passed() { "holds" } else { "fails" };
    let detail = s.items.first().map(|i| i.detail.clone()).unwrap_or_default();
    let _ = writeln!(r, "sum hypothesis {verdict} ({detail})");
    Ok(true)
}

fn nerve(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let n = cmd.levels;
    let mut ok = true;
    for (name, sc) in [("T", t_simplicial(d, n)), ("S", s_simplicial(d, n))] {
        for (k, c) in sc.levels.iter().enumerate() {
            let _ = writeln!(r, "{name}_{k}: {} objects, {} morphisms", c.n_objects(), c.n_morphisms());
        }
        let v = validate_truncated_cat(&sc);
        let _ = write!(r, "{v}");
        ok &= v.passed();
    }
    let obs = ob_s(d, n);
    let diag = double_nerve_diag(d, n.min(DIAGONAL_LEVELS));
    let _ = writeln!(r, "ob S sizes: {:?}", obs.sizes());
    let _ = writeln!(r, "double nerve diagonal sizes: {:?}", diag.sizes());
    for x in [&obs, &diag] {
        let v = validate_truncated(x);
        ok &= v.passed();
        let _ = write!(r, "{v}");
    }
    if let Some(path) = &cmd.out {
        write_out(path, &write_sset(&obs))?;
        let _ = writeln!(r, "wrote {}", path.display());
    }
    Ok(ok)
}

fn segal(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let n = cmd.levels.max(3);
    let t = check_segal1_in_cat(&t_simplicial(d, n));
    let _ = write!(r, "T levels: {t}");
    let mut ok = t.passed();
    let s = s_simplicial(d, n);
    match check_2segal_groupoids(&s) {
        Ok(rep) => {
            let _ = write!(r, "S levels: {rep}");
            ok &= rep.passed();
        }
        Err(e @ Error::NotGroupoid { .. }) => {
            let _ = writeln!(r, "S levels: {e}");
            let rep = check_2segal_comparisons(&s, PullbackMode::General).map_err(|e| e.to_string())?;
            let _ = write!(r, "S levels (iso-comma comparison): {rep}");
            ok &= rep.passed();
        }
        Err(e) => return Err(e.to_string()),
    }
    let set = check_segal(&ob_s(d, n), SegalDegree::Two);
    let _ = write!(r, "object nerve, informational: {set}");
    Ok(ok)
}

fn completions(cmd: &Command, input: &Input) -> CompletionData {
    match &input.comp {
        Some(c) => c.clone(),
        None => CompletionData::search(&input.d, cmd.mode.into()),
    }
}

fn compare(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let comp = completions(cmd, input);
    let mut ok = true;
    let top = cmd.levels.min(COMPARE_LEVELS);
    if top < cmd.levels {
        let _ = writeln!(r, "levels capped at {COMPARE_LEVELS}");
    }
    for n in 1..=top {
        let rep = comparison_witnesses(d, &comp, n).map_err(|e| e.to_string())?;
        let _ = write!(r, "{rep}");
        ok &= rep.passed();
        for dir in [Direction::H, Direction::V] {
            if dir == Direction::V && cmd.mode == Mode::Proto {
                continue;
            }
            let rep = forgetful_equivalence(d, &comp, n, dir).map_err(|e| e.to_string())?;
            let _ = write!(r, "{rep}");
            ok &= rep.passed();
        }
    }
    Ok(ok)
}

fn roundtrip(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let d = &input.d;
    let (x, y) = match &input.sset {
        Some(x) => {
            let top = x.bound().min(cmd.levels).max(3);
            let y = ob_s(d, top);
            (x.truncate(top.min(x.bound())), y)
        }
        None => {
            let top = cmd.levels.max(3);
            let x = ob_s(d, top);
            let e = path_double_category(&x).map_err(|e| e.to_string())?;
            (x, ob_s(&e, top))
        }
    };
    let _ = writeln!(r, "sizes before: {:?}", x.sizes());
    let _ = writeln!(r, "sizes after: {:?}", y.sizes());
    let y = y.truncate(x.bound());
    let iso = find_isomorphism(&y, &x);
    let _ = writeln!(r, "levelwise isomorphism: {}", if iso.is_some() { "found" } else { "none" });
    let seg = check_segal(&y, SegalDegree::Two);
    let _ = write!(r, "{seg}");
    Ok(iso.is_some() && seg.passed())
}

fn dot(cmd: &Command, input: &Input, r: &mut String) -> VerbResult {
    let text = export_dot(&input.d, DotObject::AllSquares);
    match &cmd.out {
        Some(path) => {
            write_out(path, &text)?;
            let _ = writeln!(r, "wrote {} squares to {}", input.d.squares().len(), path.display());
        }
        None => r.push_str(&text),
    }
    Ok(true)
}
