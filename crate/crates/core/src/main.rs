fn main() {
    std::process::exit(bindinfo::cli::run(std::env::args_os()));
}
