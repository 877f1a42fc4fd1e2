fn main() {
    std::process::exit(sparse_summa::bench::main_with_args(std::env::args_os()));
}
