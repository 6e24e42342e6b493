fn main() {
    let code = stabcoh::cli::main_with_args(
        std::env::args_os(),
        std::env::var(stabcoh::cli::SEED_ENV).ok(),
    );
    std::process::exit(code);
}
