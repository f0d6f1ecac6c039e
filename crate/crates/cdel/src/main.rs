fn main() {
    std::process::exit(cdel::main_with_args(std::env::args_os()));
}
