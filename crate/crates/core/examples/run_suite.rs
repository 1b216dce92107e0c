// Dev driver: run one verification suite and print its checks.
fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "unitarity".into());
    match dnls_ist::verify::run_suite(&name) {
        Ok(report) => {
            for c in &report.checks {
                println!(
                    "{} {}: measured {:.6e} target {:.6e} tol {:.2e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.target,
                    c.tolerance
                );
            }
            println!("suite {}: {}", report.suite, if report.pass { "PASS" } else { "FAIL" });
        }
        Err(e) => {
            eprintln!("suite {name} errored: {e}");
            std::process::exit(1);
        }
    }
}
