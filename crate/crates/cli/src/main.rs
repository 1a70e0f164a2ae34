fn main() {
    let out = dnilp::run(std::env::args());
    print!("{}", out.output);
    std::process::exit(out.code);
}
