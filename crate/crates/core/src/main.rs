fn main() {
    std::process::exit(nbe_kernel::cli::main_with_stdio());
}
