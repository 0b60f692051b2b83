fn main() {
    std::process::exit(tdembed::cli::main_with(std::env::args_os()));
}
