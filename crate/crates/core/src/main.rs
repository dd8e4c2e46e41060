fn main() -> std::process::ExitCode {
    genus2::cli::main()
}
