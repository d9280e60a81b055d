#![allow(dead_code)]

use chrono::{TimeZone, Utc};
use codegauntlet_core::store::{Problem, ProblemCorpus, SamplePair};
use codegauntlet_core::ScriptedClock;

pub fn problem(id: &str, difficulty: f64, statement: &str) -> Problem {
    Problem {
        id: id.to_string(),
        title: format!("Problem {id}"),
        difficulty,
        statement: statement.to_string(),
        samples: vec![SamplePair::new("1 2\n", "3\n")],
        cpu_time_limit: 1.0,
        memory_limit: 256.0,
        submission_language: "python".to_string(),
    }
}

/// `n` problems `p01..`, each statement carrying a unique `[[pNN]]` marker
/// that mock scripts can match on.
pub fn corpus(n: usize) -> ProblemCorpus {
    let problems = (1..=n)
        .map(|i| {
            let id = format!("p{i:02}");
            problem(&id, 1.0 + (i as f64 * 0.9) % 9.0, &format!("Add two numbers. [[{id}]]"))
        })
        .collect();
    ProblemCorpus::from_problems(problems).unwrap()
}

pub fn frozen_clock(corpus: &ProblemCorpus) -> ScriptedClock {
    let mut clock = ScriptedClock::frozen(Utc.with_ymd_and_hms(2026, 3, 1, 12, 0, 0).unwrap());
    for (i, id) in corpus.ids().enumerate() {
        clock = clock.with_duration(id, 1.0 + i as f64 * 0.5);
    }
    clock
}
