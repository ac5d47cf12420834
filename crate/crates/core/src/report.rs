//! Line-oriented reports for the command-line driver.
//!
//! Every record is one `key = value` line. Keys start with the name of the
//! code or homomorphism they describe (`A~B` for a pair of codes), so the
//! output can be filtered with grep. The last line is always `exit = N` with
//! the process exit status: 0 when everything was computed, 1 when a decision
//! came out negative, 2 on errors.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::checks::{CodeReport, Verdict};
use crate::code::{FunctionGroup, DEFAULT_CODE_CAP};
use crate::group::GroupMap;
use crate::hom::{Biseparation, CodeHom};
use crate::instance::{parse_instance, InstanceFile};
use crate::representation::{
    check_propositions, decide_equivalence, decompose, minimal_supports_oracle, DecomposeOptions, Equivalence,
    PropStatus, RepresentationError, DEFAULT_SEARCH_CAP, singleton_support,
};
use crate::sets::DEFAULT_CLOSURE_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    CheckCode,
    CheckHom,
    Decompose,
    Equivalent,
    OracleSupports,
    Props,
    /// Re-emit the parsed instance in canonical form.
    Fmt,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::CheckCode,
        Command::CheckHom,
        Command::Decompose,
        Command::Equivalent,
        Command::OracleSupports,
        Command::Props,
        Command::Fmt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckCode => "check-code",
            Command::CheckHom => "check-hom",
            Command::Decompose => "decompose",
            Command::Equivalent => "equivalent",
            Command::OracleSupports => "oracle-supports",
            Command::Props => "props",
            Command::Fmt => "fmt",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub closure_cap: usize,
    pub code_cap: usize,
    pub search_cap: u64,
    /// Cross-check support points against the subset-enumeration oracle.
    pub oracle: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            closure_cap: DEFAULT_CLOSURE_CAP,
            code_cap: DEFAULT_CODE_CAP,
            search_cap: DEFAULT_SEARCH_CAP,
            oracle: false,
        }
    }
}

/// Which codes and homomorphisms to report on; empty means all, in
/// declaration order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Selection {
    pub codes: Vec<String>,
    pub homs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    command: Command,
    records: Vec<(String, String)>,
    exit: u8,
    /// Set by `fmt`; printed verbatim instead of records.
    text: Option<String>,
}

impl Report {
    fn new(command: Command) -> Self {
        Self { command, records: Vec::new(), exit: 0, text: None }
    }

    fn push(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.records.push((key.into(), value.to_string()));
    }

    fn fail(&mut self, status: u8) {
        self.exit = self.exit.max(status);
    }

    fn error(&mut self, key: &str, e: impl fmt::Display) {
        let key = if key.is_empty() { "error".to_string() } else { format!("{key}.error") };
        self.push(key, e);
        self.fail(2);
    }

    pub fn command(&self) -> Command {
        self.command
    }

    pub fn records(&self) -> &[(String, String)] {
        &self.records
    }

    /// First value recorded under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.records.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn exit_code(&self) -> u8 {
        self.exit
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let (Some(text), 0) = (&self.text, self.exit) {
            return f.write_str(text);
        }
        writeln!(f, "command = {}", self.command.name())?;
        for (k, v) in &self.records {
            writeln!(f, "{k} = {v}")?;
        }
        writeln!(f, "exit = {}", self.exit)
    }
}

/// Parses `text` and runs `command`; parse errors become an error report.
pub fn run_text(command: Command, text: &str, selection: &Selection, config: &Config) -> Report {
    match parse_instance(text, config.code_cap) {
        Ok(inst) => run_command(command, &inst, selection, config),
        Err(e) => {
            let mut r = Report::new(command);
            r.error("", e);
            r
        }
    }
}

pub fn run_command(command: Command, inst: &InstanceFile, selection: &Selection, config: &Config) -> Report {
    let mut r = Report::new(command);
    let codes = match select(inst.codes().keys(), &selection.codes, "code") {
        Ok(c) => c,
        Err(e) => {
            r.error("", e);
            return r;
        }
    };
    let homs = match select(inst.homs().keys(), &selection.homs, "hom") {
        Ok(h) => h,
        Err(e) => {
            r.error("", e);
            return r;
        }
    };
    let code = |name: &str| &inst.codes()[name].code;
    let hom = |name: &str| &inst.homs()[name].hom;
    match command {
        Command::CheckCode => {
            for name in codes {
                check_code(&mut r, name, code(name), config);
            }
        }
        Command::CheckHom => {
            for name in homs {
                check_hom(&mut r, name, hom(name));
            }
        }
        Command::Decompose => {
            for name in homs {
                run_decompose(&mut r, name, hom(name), config);
            }
        }
        Command::Equivalent => {
            if codes.len() < 2 {
                r.error("", "equivalent needs at least two codes");
            }
            for (i, a) in codes.iter().enumerate() {
                for b in &codes[i + 1..] {
                    equivalent(&mut r, &format!("{a}~{b}"), code(a), code(b), config);
                }
            }
        }
        Command::OracleSupports => {
            for name in homs {
                oracle_supports(&mut r, name, hom(name));
            }
        }
        Command::Props => {
            for name in homs {
                props(&mut r, name, hom(name), config);
            }
        }
        Command::Fmt => r.text = Some(inst.serialize()),
    }
    r
}

fn select<'a>(
    all: impl Iterator<Item = &'a String>,
    wanted: &'a [String],
    kind: &str,
) -> Result<Vec<&'a str>, String> {
    let all: Vec<&str> = all.map(String::as_str).collect();
    if wanted.is_empty() {
        return Ok(all);
    }
    wanted
        .iter()
        .map(|w| {
            all.iter()
                .find(|n| **n == w.as_str())
                .copied()
                .ok_or_else(|| format!("unknown {kind} `{w}`"))
        })
        .collect()
}

fn points(code: &FunctionGroup, pts: &[usize]) -> String {
    pts.iter().map(|&x| code.space().label(x)).collect::<Vec<_>>().join(" ")
}

fn verdict<W>(r: &mut Report, key: &str, v: &Verdict<W>, witness: impl FnOnce(&mut Report, &str, &W)) {
    r.push(key, v.holds());
    if let Some(w) = v.witness() {
        witness(r, &format!("{key}.witness"), w);
    }
}

fn code_report(r: &mut Report, key: &str, code: &FunctionGroup, report: &CodeReport) {
    verdict(r, &format!("{key}.separates_points"), &report.separates_points, |r, k, &(x1, x2)| {
        r.push(k, points(code, &[x1, x2]))
    });
    verdict(r, &format!("{key}.strongly_separates_points"), &report.strongly_separates_points, |r, k, &(x1, x2)| {
        r.push(k, points(code, &[x1, x2]))
    });
    verdict(r, &format!("{key}.pointwise_dense"), &report.pointwise_dense, |r, k, &x| r.push(k, points(code, &[x])));
    verdict(r, &format!("{key}.controllable"), &report.controllable, |r, k, w| {
        r.push(format!("{k}.f"), code.format_function(code.element(w.f)));
        r.push(format!("{k}.d1"), code.format_set(w.d1));
        r.push(format!("{k}.d2"), code.format_set(w.d2));
    });
}

fn check_code(r: &mut Report, name: &str, code: &FunctionGroup, config: &Config) {
    r.push(format!("{name}.points"), code.n_points());
    r.push(format!("{name}.size"), code.len());
    match CodeReport::compute(code, config.closure_cap) {
        Ok(report) => code_report(r, name, code, &report),
        Err(e) => r.error(name, e),
    }
}

fn element_pair(r: &mut Report, key: &str, code: &FunctionGroup, (f, g): (usize, usize)) {
    r.push(format!("{key}.f"), code.format_function(code.element(f)));
    r.push(format!("{key}.g"), code.format_function(code.element(g)));
}

fn check_hom(r: &mut Report, name: &str, hom: &CodeHom) {
    let separating = hom.is_separating();
    r.push(format!("{name}.separating"), separating.holds());
    if let Some(&w) = separating.witness() {
        element_pair(r, &format!("{name}.separating.witness"), hom.source(), w);
    }
    r.push(format!("{name}.injective"), hom.is_injective());
    r.push(format!("{name}.bijective"), hom.is_bijective());
    let key = format!("{name}.biseparating");
    match hom.is_biseparating() {
        Ok(Biseparation::Biseparating) => r.push(key, true),
        Ok(Biseparation::ForwardFails(w)) => {
            r.push(&key, false);
            r.push(format!("{key}.reason"), "forward-not-separating");
            element_pair(r, &format!("{key}.witness"), hom.source(), w);
        }
        Ok(Biseparation::BackwardFails(w)) => {
            r.push(&key, false);
            r.push(format!("{key}.reason"), "inverse-not-separating");
            element_pair(r, &format!("{key}.witness"), hom.target(), w);
        }
        Err(_) => {
            r.push(&key, false);
            r.push(format!("{key}.reason"), "not-bijective");
        }
    }
}

/// `prefix.name(y)(g) = g'` for every `g` in the domain of `w`.
fn group_map(r: &mut Report, key: &str, code: &FunctionGroup, w: &GroupMap) {
    let group = code.group();
    for (g, image) in w.images().iter().enumerate() {
        if let Some(image) = image {
            r.push(format!("{key}({})", group.label(g)), group.label(*image));
        }
    }
}

/// The decomposition is impossible, as opposed to a failed computation.
fn is_negative(e: &RepresentationError) -> bool {
    use RepresentationError::*;
    matches!(
        e,
        NotSeparating { .. } | NullFunctional { .. } | SupportAmbiguous { .. } | WeightIllDefined { .. } | RepresentationFailed { .. }
    )
}

fn run_decompose(r: &mut Report, name: &str, hom: &CodeHom, config: &Config) {
    let options = DecomposeOptions { closure_cap: config.closure_cap, oracle: config.oracle };
    let d = match decompose(hom, &options) {
        Ok(d) => d,
        Err(e) if is_negative(&e) => {
            r.push(format!("{name}.decomposable"), false);
            r.push(format!("{name}.reason"), e);
            r.fail(1);
            return;
        }
        Err(e) => return r.error(name, e),
    };
    let (a, b) = (hom.source(), hom.target());
    r.push(format!("{name}.decomposable"), true);
    for (y, &x) in d.support_map().iter().enumerate() {
        r.push(format!("{name}.h({})", b.space().label(y)), a.space().label(x));
    }
    for (y, w) in d.weights().iter().enumerate() {
        group_map(r, &format!("{name}.omega({})", b.space().label(y)), a, w);
    }
    for y in 0..b.n_points() {
        r.push(format!("{name}.weight_kind({})", b.space().label(y)), d.weight_kind(y));
    }
    let hyp = d.hypotheses().expect("decompose records hypotheses");
    let holds = |ok: bool| if ok { "hold" } else { "unmet" };
    r.push(format!("{name}.hypotheses.source"), holds(hyp.source.satisfies_representation_hypotheses()));
    r.push(format!("{name}.hypotheses.target"), holds(hyp.target.satisfies_representation_hypotheses()));
    r.push(format!("{name}.hypotheses.biseparating"), hyp.biseparation == Some(Biseparation::Biseparating));
    r.push(format!("{name}.hypotheses"), holds(hyp.all_hold()));
    match d.inverse() {
        Some(inv) => {
            for (x, &y) in inv.support_map.iter().enumerate() {
                r.push(format!("{name}.inverse.k({})", a.space().label(x)), b.space().label(y));
            }
            for (x, w) in inv.weights.iter().enumerate() {
                group_map(r, &format!("{name}.inverse.rho({})", a.space().label(x)), a, w);
            }
            r.push(format!("{name}.inverse_consistent"), true);
        }
        None => r.push(format!("{name}.inverse_consistent"), "skipped: hypotheses unmet"),
    }
}

fn equivalent(r: &mut Report, key: &str, a: &Arc<FunctionGroup>, b: &Arc<FunctionGroup>, config: &Config) {
    match decide_equivalence(a, b, config.search_cap) {
        Ok(Equivalence::Equivalent(d)) => {
            r.push(format!("{key}.equivalent"), true);
            for (y, &x) in d.support_map().iter().enumerate() {
                r.push(format!("{key}.h({})", b.space().label(y)), a.space().label(x));
            }
            for (y, w) in d.weights().iter().enumerate() {
                group_map(r, &format!("{key}.omega({})", b.space().label(y)), a, w);
            }
        }
        Ok(Equivalence::NotEquivalent(reason)) => {
            r.push(format!("{key}.equivalent"), false);
            r.push(format!("{key}.reason"), reason);
            r.fail(1);
        }
        Err(e) => r.error(key, e),
    }
}

fn oracle_supports(r: &mut Report, name: &str, hom: &CodeHom) {
    let (a, b) = (hom.source(), hom.target());
    for y in 0..b.n_points() {
        let key = format!("{name}.supports({})", b.space().label(y));
        let phi = hom.point_functional(y);
        if phi.is_null() {
            r.push(&key, "null-functional");
            continue;
        }
        match minimal_supports_oracle(&phi) {
            Ok(report) => {
                let minimal: Vec<String> = report.minimal.iter().map(|&s| a.format_set(s)).collect();
                r.push(format!("{key}.minimal"), minimal.join(" "));
                let singleton = report.singleton_minimum.map_or("none", |x| a.space().label(x));
                r.push(format!("{key}.singleton_minimum"), singleton);
                let fast = singleton_support(&phi).map_or("none", |x| a.space().label(x));
                r.push(format!("{key}.fast_path"), fast);
                r.push(format!("{key}.agree"), report.singleton_minimum == singleton_support(&phi).ok());
            }
            Err(e) => return r.error(&key, e),
        }
    }
}

fn props(r: &mut Report, name: &str, hom: &CodeHom, config: &Config) {
    match check_propositions(hom, config.closure_cap) {
        Ok(report) => {
            for (p, status) in &report.entries {
                r.push(format!("{name}.prop.{}", p.key()), status);
                if matches!(status, PropStatus::Fail(_)) {
                    r.fail(1);
                }
            }
        }
        Err(e) => r.error(name, e),
    }
}
