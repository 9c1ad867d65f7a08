fn main() -> std::process::ExitCode {
    homlie::cli::main()
}
