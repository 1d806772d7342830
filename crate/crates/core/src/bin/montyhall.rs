fn main() {
    std::process::exit(montyhall::cli::main_entry());
}
