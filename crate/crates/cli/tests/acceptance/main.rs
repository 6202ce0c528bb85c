//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod brute;
mod cli;
mod engine;
mod exact;
mod homology;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

pub type Outcome = Result<String, Box<dyn std::error::Error>>;

/// Fails the criterion with a message unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}
pub(crate) use ensure;

struct Criterion {
    name: &'static str,
    /// Wall-clock limit in seconds.
    limit: f64,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { name: "route agreement", limit: 60.0, run: engine::route_agreement },
        Criterion { name: "exactness of evaluation", limit: 60.0, run: engine::exactness },
        Criterion { name: "implication oracle vs brute force", limit: 300.0, run: brute::implication_oracle },
        Criterion { name: "universal representation evaluates to T", limit: 60.0, run: engine::delta_is_t },
        Criterion { name: "Serre closure of the kernel", limit: 60.0, run: engine::serre_closure },
        Criterion { name: "direct sums of closed pairs", limit: 60.0, run: engine::closed_direct_sums },
        Criterion { name: "Nori fixtures over Z", limit: 30.0, run: homology::nori_fixtures },
        Criterion { name: "exact linear algebra kernel", limit: 120.0, run: exact::linalg_contract },
        Criterion { name: "CLI determinism and round-trip", limit: 120.0, run: cli::determinism_and_round_trip },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}").into())
        });
        let secs = start.elapsed().as_secs_f64();
        let result = match result {
            Ok(detail) if secs > c.limit => Err(format!("{detail}; took {secs:.1}s, limit {}s", c.limit).into()),
            other => other,
        };
        match result {
            Ok(detail) => println!("PASS [{}] {}: {detail} ({secs:.2}s)", i + 1, c.name),
            Err(e) => {
                failed += 1;
                println!("FAIL [{}] {}: {e} ({secs:.2}s)", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
