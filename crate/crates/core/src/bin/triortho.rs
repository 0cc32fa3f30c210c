fn main() {
    std::process::exit(triortho::cli::run(std::env::args_os()) as i32);
}
