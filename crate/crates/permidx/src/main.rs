fn main() -> std::process::ExitCode {
    permidx::cli::run()
}
