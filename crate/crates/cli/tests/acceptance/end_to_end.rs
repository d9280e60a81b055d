//! Full desk run over the 10-problem fixture: ingest, generate with two
//! mock-runtime models, judge locally, report, and compare the bundle with
//! the golden files byte for byte.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;

use clap::Parser;
use codegauntlet_cli::{Cli, Context, ExitStatus};
use codegauntlet_core::mock::MockRuntime;
use serde_json::json;

use crate::fixtures;
use crate::CriterionResult;

const RUN_ID: &str = "desk-run";

/// (model, runtime script, recorded seconds per problem)
type ModelScript = (&'static str, &'static str, [(&'static str, f64); 10]);

/// Scripted generation times per model and problem. The mock runtime's
/// programmed delays exercise the real request path; these values are what
/// the frozen clock records so the bundle is reproducible.
const DURATIONS: [ModelScript; 2] = [
    (
        "alpha-coder",
        "runtime_alpha.json",
        [
            ("addtwo", 2.31),
            ("digitsum", 2.78),
            ("fizzbuzz", 1.64),
            ("maxof", 3.02),
            ("palindrome", 2.12),
            ("parity", 2.49),
            ("reverse", 1.87),
            ("squares", 41.5),
            ("vowels", 2.55),
            ("wordcount", 1.95),
        ],
    ),
    (
        "beta-coder",
        "runtime_beta.json",
        [
            ("addtwo", 5.1),
            ("digitsum", 5.7),
            ("fizzbuzz", 4.9),
            ("maxof", 6.2),
            ("palindrome", 5.3),
            ("parity", 5.0),
            ("reverse", 4.8),
            ("squares", 6.0),
            ("vowels", 5.5),
            ("wordcount", 5.2),
        ],
    ),
];

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/e2e")
}

fn invoke(args: &[&str], ctx: &Context) -> Result<String, String> {
    let cli = Cli::try_parse_from(std::iter::once("codegauntlet").chain(args.iter().copied()))
        .map_err(|e| format!("{args:?}: {e}"))?;
    let mut out = Vec::new();
    let status = codegauntlet_cli::run(&cli, ctx, &mut out).map_err(|e| format!("{args:?}: {e}"))?;
    check!(status == ExitStatus::Success, "{args:?} exited with {status:?}");
    Ok(String::from_utf8_lossy(&out).into_owned())
}

fn write_config(dir: &Path, urls: &[(String, String)]) -> Result<PathBuf, String> {
    let models: Vec<_> = urls
        .iter()
        .map(|(model, url)| json!({ "base_url": url, "model_name": model, "max_retries": 0, "retry_backoff_s": 0 }))
        .collect();
    let cfg = json!({
        "corpus_path": "kattis_problems.json",
        "store_dir": "store",
        "report_dir": "reports",
        "models": models,
        "judge": { "backend": "local" },
        "histogram_bins": 5
    });
    let path = dir.join("config.json");
    std::fs::write(&path, serde_json::to_vec_pretty(&cfg).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok(path)
}

fn compare_with_golden(bundle: &Path) -> Result<String, String> {
    let got = fixtures::snapshot(bundle)?;
    let golden = golden_dir();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let _ = std::fs::remove_dir_all(&golden);
        std::fs::create_dir_all(&golden).map_err(|e| e.to_string())?;
        for (name, bytes) in &got {
            std::fs::write(golden.join(name), bytes).map_err(|e| e.to_string())?;
        }
        return Ok(format!("golden files rewritten ({} files)", got.len()));
    }
    let want = fixtures::snapshot(&golden).map_err(|e| format!("{e}; run with UPDATE_GOLDEN=1 to create"))?;
    let got_names: Vec<&String> = got.keys().collect();
    let want_names: Vec<&String> = want.keys().collect();
    check!(got_names == want_names, "bundle files {got_names:?}, golden {want_names:?}");
    for (name, bytes) in &want {
        check!(
            &got[name] == bytes,
            "{name} differs from golden:\n--- got\n{}\n--- golden\n{}",
            String::from_utf8_lossy(&got[name]),
            String::from_utf8_lossy(bytes)
        );
    }
    Ok(format!("{} files match", want.len()))
}

pub fn run() -> CriterionResult {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus_path = tmp.path().join("kattis_problems.json");
    let ingest = Command::new(env!("CARGO_BIN_EXE_codegauntlet"))
        .arg("ingest")
        .arg(fixtures::problem_tree())
        .arg("--output")
        .arg(&corpus_path)
        .output()
        .map_err(|e| e.to_string())?;
    check!(ingest.status.success(), "ingest failed: {}", String::from_utf8_lossy(&ingest.stderr));
    let ingest_out = String::from_utf8_lossy(&ingest.stdout);
    check!(ingest_out.contains("10 problems (Easy 3, Medium 3, Hard 4)"), "ingest said {ingest_out:?}");

    let mut servers = Vec::new();
    let mut urls = Vec::new();
    for (model, script, _) in &DURATIONS {
        let server = MockRuntime::start(fixtures::runtime_script(script)?).map_err(|e| e.to_string())?;
        urls.push((model.to_string(), server.url()));
        servers.push(server);
    }
    let config = write_config(tmp.path(), &urls)?;
    let config = config.to_str().ok_or("non-UTF-8 temp path")?;

    for (model, _, durations) in &DURATIONS {
        let ctx = Context { clock: Arc::new(fixtures::scripted_clock(durations)), stop: None };
        let out = invoke(&["--config", config, "generate", "--model", model], &ctx)?;
        let succeeded = if *model == "beta-coder" { "9 succeeded, 1 failed" } else { "10 succeeded, 0 failed" };
        check!(out.contains(&format!("generate {model}: {succeeded}, 0 skipped")), "{out}");
    }
    for (server, (model, _, _)) in servers.iter().zip(&DURATIONS) {
        let log = server.requests();
        check!(log.len() == 10, "{model}: {} runtime requests", log.len());
        check!(log.iter().all(|r| r.model == *model && r.stream == Some(false)), "{model}: bad request body");
    }

    let frozen = Context { clock: Arc::new(fixtures::scripted_clock(&[])), stop: None };
    let out = invoke(&["--config", config, "submit", "--all-models"], &frozen)?;
    check!(out.contains("submit alpha-coder: 8 succeeded, 2 failed, 0 skipped"), "{out}");
    check!(out.contains("submit beta-coder: 4 succeeded, 6 failed, 0 skipped"), "{out}");

    // rerunning every stage is a no-op against the runtime
    invoke(&["--config", config, "generate", "--all-models"], &frozen)?;
    let total: usize = servers.iter().map(|s| s.requests().len()).sum();
    check!(total == 20, "rerun reached the runtime ({total} requests)");

    invoke(&["--config", config, "report", "--run-id", RUN_ID], &frozen)?;
    let status = invoke(&["--config", config, "status"], &frozen)?;
    check!(status.matches("10/10 done").count() == 4, "status:\n{status}");
    let detail = compare_with_golden(&tmp.path().join("reports").join(RUN_ID))?;
    Ok(format!("{} models x 10 problems; {detail}", DURATIONS.len()))
}
