fn main() {
    // Placeholder while the library crates are under construction.
    eprintln!("g2voa: command-line interface not yet wired up");
    std::process::exit(2);
}
