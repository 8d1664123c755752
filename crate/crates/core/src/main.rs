fn main() {
    std::process::exit(theta_kernel::cli::run(std::env::args_os()));
}
