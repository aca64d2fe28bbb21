fn main() {
    std::process::exit(groupoid_atlas::cli::run());
}
