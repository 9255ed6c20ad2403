//! Drive the command-line front end in-process: simulate a series to a
//! temporary CSV, then run the analysis commands on it.
//!
//! Run with `cargo run --release --example command_line`.

use tsbreak::cli::run;

fn main() {
    let dir = std::env::temp_dir().join(format!("tsbreak-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create temp dir");
    let csv = dir.join("sim.csv");
    let csv = csv.to_str().expect("utf-8 path");

    let commands: Vec<Vec<&str>> = vec![
        vec![
            "simulate", "--kind", "drift", "--T", "241", "--drift", "0.5", "--sigma", "1",
            "--seed", "42", "--out", csv,
        ],
        vec!["lag", "--T", "241"],
        vec!["adf", "--input", csv, "--nlag", "5"],
        vec!["kpss", "--input", csv],
        vec![
            "chow", "--input", csv, "--point", "2010-10", "--model", "trend",
        ],
        vec![
            "breakpoints",
            "--input",
            csv,
            "--start",
            "2010-01",
            "--end",
            "2014-01",
            "--h",
            "5",
            "--json",
        ],
        vec!["adf", "--input", "missing.csv"],
    ];
    for args in commands {
        println!("$ tsbreak {}", args.join(" "));
        let result = run(std::iter::once("tsbreak").chain(args));
        print!("{}{}", result.stdout, result.stderr);
        println!("[exit {}]\n", result.exit_code);
    }
    let _ = std::fs::remove_dir_all(&dir);
}
