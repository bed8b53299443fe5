fn main() {
    let seed = std::env::var("QC_SEED").ok();
    let code = qc_cli::run(
        std::env::args_os(),
        seed.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
