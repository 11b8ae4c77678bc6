use std::fmt::Write;

use serde::Serialize;

use super::{AggregateReport, ClosureOutput, ForceReport, MemberReport, SymmetryReport};
use crate::closure::{ClosureReport, SymmetrySearch};
use crate::forcing::{ForcingUniversality, Infects, MinimalForcing};
use crate::verify::{CaseStatus, VerifyReport};

/// Human-readable report text.
pub trait Render {
    fn text(&self) -> String;
}

fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".into(),
    }
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    let v: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(", ")
    }
}

fn closure_lines(out: &mut String, r: &ClosureReport) {
    let _ = writeln!(out, "family      {} (n = {})", tag(&r.family), r.n);
    let _ = writeln!(out, "dimension   {} of {} = {}", r.dimension, r.ambient, r.ambient_dimension);
    let _ = writeln!(out, "universal   {}", r.universal);
    let _ = writeln!(out, "verdict     {}", tag(&r.verdict));
    let _ = writeln!(
        out,
        "method      {} ({} mode, {} rounds, {} brackets{})",
        tag(&r.method),
        r.mode,
        r.rounds,
        r.brackets,
        if r.early_exit { ", early exit" } else { "" }
    );
    let dims: Vec<String> = r.stability.runs.iter().map(|s| format!("{}:{}", s.seed, s.dimension)).collect();
    let _ = writeln!(
        out,
        "seeds       {} ({})",
        dims.join(" "),
        if r.stability.agree { "stable" } else { "unstable" }
    );
    if !r.coefficients.is_empty() {
        let cs: Vec<String> = r.coefficients.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "coeffs      {}", cs.join(" "));
    }
    if let Some(h) = &r.hypotheses {
        let _ = writeln!(
            out,
            "hypotheses  {}",
            if h.hold { "hold".to_string() } else { format!("violated: {}", h.violated.join(", ")) }
        );
    }
    let _ = writeln!(
        out,
        "symmetries  {}{}",
        list(&r.symmetries),
        if r.symmetry_search_complete { "" } else { " (search incomplete)" }
    );
    for note in &r.notes {
        let _ = writeln!(out, "note        {note}");
    }
}

impl Render for ClosureOutput {
    fn text(&self) -> String {
        let mut s = String::new();
        closure_lines(&mut s, &self.report);
        if let Some(d) = self.oracle_dimension {
            let agree = if d == self.report.dimension { "agrees" } else { "DISAGREES" };
            let _ = writeln!(s, "oracle      {d} ({agree})");
        }
        s.trim_end().to_string()
    }
}

impl Render for MemberReport {
    fn text(&self) -> String {
        let mut s = format!(
            "target      {}\nmember      {}\ndimension   {} ({} mode, seed {})",
            self.target, self.member, self.dimension, self.mode, self.seed
        );
        for t in &self.coefficients {
            let _ = write!(s, "\n  row {:>4}  pivot {}  coeff {}", t.row, t.pivot, t.coeff);
        }
        s
    }
}

fn universality_lines(out: &mut String, u: &ForcingUniversality) {
    let _ = writeln!(
        out,
        "closure     dimension {} of {}, universal {}",
        u.dimension, u.ambient_dimension, u.universal
    );
    for c in &u.checks {
        let predicted = match c.predicted {
            Some(true) => "predicted",
            _ => "no prediction",
        };
        let _ = writeln!(out, "  {:<10} member {:<5} ({predicted})", c.target, c.member);
    }
    let _ = writeln!(out, "mismatches  {}", list(&u.mismatches));
    for note in &u.notes {
        let _ = writeln!(out, "note        {note}");
    }
}

impl Render for ForceReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "process     {}", self.mode.name());
        let _ = writeln!(s, "initial     {{{}}}", list(&self.initial_vertices));
        if !self.initial_2edges.is_empty() {
            let es = self.initial_2edges.iter().map(|(u, v)| format!("{u}-{v}"));
            let _ = writeln!(s, "2-edges     {}", list(es));
        }
        let _ = writeln!(s, "forcing     {}", self.forcing);
        let _ = writeln!(s, "infected    {{{}}}", list(&self.state.infected_vertices));
        for (i, st) in self.state.trace.iter().enumerate() {
            let target = match &st.infects {
                Infects::Vertex(v) => v.to_string(),
                Infects::Edge([u, v]) => format!("{u}-{v}"),
            };
            let by: Vec<String> = st.by.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  {:>3}. {} by {} -> {}", i + 1, st.rule, by.join("+"), target);
        }
        if let Some(u) = &self.universality {
            universality_lines(&mut s, u);
        }
        s.trim_end().to_string()
    }
}

impl Render for MinimalForcing {
    fn text(&self) -> String {
        let mut s = format!("process     {}\n", self.mode.name());
        match self.size {
            Some(k) => {
                let _ = writeln!(s, "minimum     {k} ({} sets)", self.sets.len());
                for set in &self.sets {
                    let _ = writeln!(s, "  {{{}}}", list(set));
                }
            }
            None => {
                let _ = writeln!(s, "minimum     none within the size limit");
            }
        }
        let _ = write!(s, "examined    {}", self.examined);
        s
    }
}

fn symmetry_lines(out: &mut String, r: &SymmetrySearch, show_empty: bool) {
    if r.certificates.is_empty() && show_empty {
        let _ = writeln!(out, "symmetries  none");
    }
    for c in &r.certificates {
        let _ = writeln!(out, "symmetry    {}  image {:?}", c.cycles, c.permutation);
    }
    let _ = writeln!(
        out,
        "search      {}{}, {} nodes",
        if r.complete { "complete" } else { "incomplete" },
        if r.involutions_only { " (involutions only)" } else { "" },
        r.nodes
    );
}

impl Render for SymmetryReport {
    fn text(&self) -> String {
        let mut s = format!("family      {} (n = {})\n", tag(&self.family), self.n);
        symmetry_lines(&mut s, &self.search, true);
        s.trim_end().to_string()
    }
}

impl Render for VerifyReport {
    fn text(&self) -> String {
        let mut s = String::new();
        for c in &self.cases {
            let status = match c.status {
                CaseStatus::Pass => "pass",
                CaseStatus::Fail => "FAIL",
                CaseStatus::Skipped => "skip",
            };
            let _ = writeln!(s, "{status:<5} {}", c.label());
            if let Some(r) = &c.reason {
                let _ = writeln!(s, "      reason: {r}");
            }
            if let Some(step) = &c.failing_step {
                let _ = writeln!(s, "      failing step: {step}");
                if let Some(d) = c.step(step).and_then(|o| o.diff.as_ref()) {
                    let _ = writeln!(s, "      lhs - rhs = {d}");
                }
            }
        }
        for f in &self.findings {
            let _ = writeln!(s, "finding {f}");
        }
        let _ = write!(
            s,
            "seed {}: {} passed, {} failed, {} skipped",
            self.seed, self.passed, self.failed, self.skipped
        );
        s
    }
}

impl Render for AggregateReport {
    fn text(&self) -> String {
        let mut s = String::new();
        closure_lines(&mut s, &self.closure);
        symmetry_lines(&mut s, &self.symmetry, false);
        if let Some(u) = &self.forcing {
            let _ = writeln!(s, "forcing     {} process: {}", u.mode.name(), u.forcing);
            universality_lines(&mut s, u);
        }
        s.trim_end().to_string()
    }
}
