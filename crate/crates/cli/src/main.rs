use std::sync::atomic::{AtomicBool, Ordering};

use clap::Parser;
use codegauntlet_cli::{run, Cli, Context};

static STOP: AtomicBool = AtomicBool::new(false);

#[cfg(unix)]
extern "C" fn on_signal(sig: libc::c_int) {
    STOP.store(true, Ordering::SeqCst);
    // a second signal terminates immediately
    // SAFETY: signal() is async-signal-safe.
    unsafe {
        libc::signal(sig, libc::SIG_DFL);
    }
}

#[cfg(unix)]
fn install_handlers() {
    let handler = on_signal as extern "C" fn(libc::c_int) as libc::sighandler_t;
    // SAFETY: the handler only touches an atomic and calls signal().
    unsafe {
        libc::signal(libc::SIGINT, handler);
        libc::signal(libc::SIGTERM, handler);
    }
}

#[cfg(not(unix))]
fn install_handlers() {}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    install_handlers();
    let ctx = Context { stop: Some(&STOP), ..Context::default() };
    let mut stdout = std::io::stdout();
    let status = match run(&cli, &ctx, &mut stdout) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_status()
        }
    };
    std::process::exit(status.code());
}
