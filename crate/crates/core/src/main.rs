fn main() {
    std::process::exit(photon_wf::cli::run());
}
