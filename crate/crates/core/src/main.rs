use std::process::ExitCode;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("CCFLAB_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let out = ccflab::cli::run_args(std::env::args_os());
    print!("{}", out.stdout);
    if let Some(m) = out.message {
        eprintln!("{m}");
    }
    ExitCode::from(out.code as u8)
}
