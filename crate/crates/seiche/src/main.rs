fn main() {
    std::process::exit(seiche::cli_main());
}
