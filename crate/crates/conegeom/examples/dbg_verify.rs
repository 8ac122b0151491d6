use conegeom::quad::QuadSettings;
use conegeom::verify;

fn main() {
    let st = QuadSettings::default();
    let args: Vec<String> = std::env::args().collect();
    let ids: Vec<usize> = if args.len() > 1 {
        args[1..].iter().map(|s| s.parse().unwrap()).collect()
    } else {
        (1..=13).collect()
    };
    let mut all_ok = true;
    for id in ids {
        match verify::run_criterion(id, &st) {
            Ok(rep) => {
                println!(
                    "[{}] {} {} ({:.2}s)",
                    if rep.passed { "PASS" } else { "FAIL" },
                    rep.id,
                    rep.name,
                    rep.seconds
                );
                for c in &rep.checks {
                    if !c.passed || c.informational {
                        println!(
                            "    {} {}: {:.3e} (tol {:.1e})",
                            if c.informational { "INFO" } else { "FAIL" },
                            c.label,
                            c.value,
                            c.tolerance
                        );
                    }
                }
                all_ok &= rep.passed;
            }
            Err(e) => {
                println!("[ERROR] {id}: {e}");
                all_ok = false;
            }
        }
    }
    std::process::exit(if all_ok { 0 } else { 1 });
}
