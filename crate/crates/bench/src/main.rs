fn main() {
    std::process::exit(cantor_star_bench::cli::main_with_args(std::env::args_os()));
}
