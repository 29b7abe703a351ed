fn main() {
    let (code, text) = kpstrain_cli::main_with_args(std::env::args_os());
    if code == 0 {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    std::process::exit(code);
}
