fn main() {
    std::process::exit(dbs_cli::run());
}
