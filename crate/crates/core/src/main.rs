fn main() {
    let env_seed = std::env::var(focal_kit::cli::SEED_ENV).ok();
    std::process::exit(focal_kit::cli::main_with(std::env::args_os(), env_seed.as_deref()));
}
