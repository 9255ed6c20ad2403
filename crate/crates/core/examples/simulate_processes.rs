//! Reproducible draws from each supported process.
//!
//! Run with `cargo run --example simulate_processes`.

use tsbreak::simulate::{generate, GaussianRng, ProcessKind, ProcessSpec};

fn main() -> tsbreak::Result<()> {
    let mut rng = GaussianRng::new(42);
    let first: Vec<f64> = (0..3).map(|_| rng.standard_normal()).collect();
    println!("first N(0,1) draws for seed 42: {first:?}");

    for kind in [
        ProcessKind::WhiteNoise,
        ProcessKind::RandomWalk,
        ProcessKind::RandomWalkDrift,
        ProcessKind::TrendStationary,
        ProcessKind::Ar1,
    ] {
        let spec = ProcessSpec {
            sigma: 1.0,
            ..ProcessSpec::new(kind, 241, 42)
        };
        let s = generate(&spec)?;
        let v = s.values();
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        println!(
            "{kind:?}: {} .. {}, first {:.3}, last {:.3}, mean {:.3}",
            s.first_period(),
            s.last_period(),
            v[0],
            v[v.len() - 1],
            mean
        );
    }

    // identical spec, identical series
    let spec = ProcessSpec::new(ProcessKind::Ar1, 50, 9);
    assert_eq!(generate(&spec)?, generate(&spec)?);
    Ok(())
}
