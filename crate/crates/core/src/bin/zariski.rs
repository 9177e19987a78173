fn main() -> std::process::ExitCode {
    zariski::cli::run()
}
