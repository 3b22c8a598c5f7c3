fn main() { std::process::exit(positroid::cli::run(std::env::args_os())); }
