fn main() {
    env_logger::init();
    std::process::exit(exactldl::cli::run(std::env::args_os()));
}
