fn main() {
    std::process::exit(beta_ensembles::cli::run(std::env::args_os()));
}
