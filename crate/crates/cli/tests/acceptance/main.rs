//! Acceptance suite. Each criterion runs under its own time budget and
//! prints exactly one PASS or FAIL line. Any FAIL makes the target fail.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the end-to-end golden files.

/// Returns `Err(message)` from the enclosing criterion when `cond` is false.
macro_rules! check {
    ($cond:expr, $($arg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($arg)+));
        }
    };
}

mod conservation;
mod distribution;
mod end_to_end;
mod fixtures;
mod iqr;
mod pass_at_k;
mod published_counts;
mod verdicts;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// A one-line detail on success, the reason on failure.
pub type CriterionResult = Result<String, String>;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> CriterionResult,
}

fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        Criterion { name: "pass@k matches brute-force subset enumeration", budget: secs(1), run: pass_at_k::run },
        Criterion {
            name: "acceptance rates from published outcome counts",
            budget: secs(1),
            run: published_counts::run,
        },
        Criterion { name: "outcome-table conservation (property)", budget: None, run: conservation::run },
        Criterion { name: "crash safety of both passes", budget: secs(30), run: crash::run },
        Criterion { name: "local-judge verdict fixture", budget: secs(15), run: verdicts::run },
        Criterion { name: "IQR fences and summary statistics", budget: None, run: iqr::run },
        Criterion { name: "end-to-end desk run against golden files", budget: secs(60), run: end_to_end::run },
        Criterion { name: "CDF and histogram properties", budget: None, run: distribution::run },
    ]
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<String>()
        .cloned()
        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panicked".to_string())
}

fn main() {
    // `cargo test -- <filter>` narrows the run to matching criteria
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria() {
        if filter.as_deref().is_some_and(|f| !c.name.contains(f)) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| Err(panic_message(p)));
        let elapsed = start.elapsed();
        let timing = match c.budget {
            Some(b) => format!("{:.2} s of {:.0} s", elapsed.as_secs_f64(), b.as_secs_f64()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        let over = c.budget.is_some_and(|b| elapsed > b);
        let line = match (&result, over) {
            (Err(e), _) => format!("FAIL {} ({timing}): {e}", c.name),
            (Ok(_), true) => format!("FAIL {} ({timing}): over the time budget", c.name),
            (Ok(d), false) => format!("PASS {} ({timing}): {d}", c.name),
        };
        if result.is_err() || over {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", ran - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
