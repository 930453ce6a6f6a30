fn main() {
    std::process::exit(qdgraph::cli::run(std::env::args_os()));
}
