fn main() -> std::process::ExitCode {
    mzeta::cli::main_with(std::env::args_os())
}
