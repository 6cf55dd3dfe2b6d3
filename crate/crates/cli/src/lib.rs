//! Command-line front-end for `locinv-core`: gate files, invariant reports,
//! table verification, Weyl-surface and Haar-sampling output, and
//! gate-count bounds.

pub mod args;
pub mod error;
pub mod gatefile;
pub mod report;
pub mod source;
pub mod tables;

use std::collections::BTreeMap;
use std::io::{self, Write};

use locinv_core::{
    eta_numeric, eta_numeric_with_basis, gate_count_lower_bound, generator_basis,
    locally_equivalent, random_local, random_su, weyl_surface_samples, SurfaceSample,
    TolerancePolicy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use args::{Cli, Command};
pub use error::CliError;
use report::{display_number, InvariantReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 2;

/// Runs a parsed command, writing results to `out`. Returns the exit code
/// for outcomes that are not errors (a failed verification still prints
/// its report before exiting with 2).
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let io_err = |e: io::Error| CliError::io("<stdout>", e);
    match cli.command {
        Command::Invariants { gate, method, tol, plain, degrees } => {
            let tol = policy(tol)?;
            let u = gate.source()?.load(&tol)?;
            let report = InvariantReport::compute(&u, method.into(), &tol)?;
            let text =
                if plain { report.to_plain(degrees) } else { report.to_json(degrees) + "\n" };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(if report.is_consistent() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::VerifyTables { tol } => {
            let tol = policy(tol)?;
            let rows = tables::verify_all(&tol);
            let passed = rows.iter().filter(|r| r.pass).count();
            for r in &rows {
                writeln!(out, "{r}").map_err(io_err)?;
            }
            writeln!(out, "verify-tables: {passed} of {} rows passed", rows.len())
                .map_err(io_err)?;
            Ok(if passed == rows.len() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Surface { ns, nt, out: path } => {
            let samples = weyl_surface_samples(ns, nt)?;
            match path {
                Some(path) => {
                    let file = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
                    let mut w = io::BufWriter::new(file);
                    write_surface(&samples, &mut w)
                        .and_then(|_| w.flush())
                        .map_err(|e| CliError::io(&path, e))?;
                    writeln!(out, "wrote {} rows to {}", samples.len(), path.display())
                        .map_err(io_err)?;
                }
                None => write_surface(&samples, out).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
        Command::Sample { count, seed, plain } => {
            if count == 0 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            let summary = sample_eta(count, seed)?;
            let text = if plain { summary.to_plain() } else { summary.to_json() + "\n" };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Bound { n, gate, plain } => {
            let tol = TolerancePolicy::DEFAULT;
            let u = gate.source()?.load(&tol)?;
            let eta = eta_numeric(&u, &tol)?.eta;
            let bound = gate_count_lower_bound(n, eta)?;
            let label = u.label().unwrap_or("gate").to_string();
            let text = if plain {
                format!("{bound}\n")
            } else {
                let json = BoundReport { gate: &label, n, eta, bound };
                serde_json::to_string(&json).expect("bound serializes") + "\n"
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Equiv { a, b, tol, plain } => {
            let tol = policy(tol)?;
            let u = source::parse_operand(&a)?.load(&tol)?;
            let v = source::parse_operand(&b)?.load(&tol)?;
            let eq = locally_equivalent(&u, &v, tol.eps_match, &tol)?;
            let triple = |g: locinv_core::MakhlinInvariants| g.as_array().map(display_number);
            let text = if plain {
                format!(
                    "{}\ng(a) = {:?}\ng(b) = {:?}\n",
                    eq.equivalent,
                    triple(eq.makhlin.0),
                    triple(eq.makhlin.1)
                )
            } else {
                let json = EquivReport {
                    equivalent: eq.equivalent,
                    makhlin_a: triple(eq.makhlin.0),
                    makhlin_b: triple(eq.makhlin.1),
                    canonical_a: eq.canonical.0.as_array().map(display_number),
                    canonical_b: eq.canonical.1.as_array().map(display_number),
                };
                serde_json::to_string(&json).expect("verdict serializes") + "\n"
            };
            out.write_all(text.as_bytes()).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Dump { gate, seed, out: path } => {
            let tol = TolerancePolicy::DEFAULT;
            let mut u = gate.source()?.load(&tol)?;
            if let Some(seed) = seed {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let k1 = random_local(u.n(), &mut rng).gate();
                let k2 = random_local(u.n(), &mut rng).gate();
                u = k1.then_after(&u).then_after(&k2);
            }
            match path {
                Some(path) => {
                    gatefile::write_gate(&u, &path)?;
                    writeln!(out, "wrote {}-qubit gate to {}", u.n(), path.display())
                        .map_err(io_err)?;
                }
                None => out.write_all(gatefile::render_gate(&u).as_bytes()).map_err(io_err)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn policy(eps_match: Option<f64>) -> Result<TolerancePolicy, CliError> {
    let tol = match eps_match {
        Some(eps) => TolerancePolicy::DEFAULT.with_match(eps),
        None => TolerancePolicy::DEFAULT,
    };
    if tol.is_valid() {
        Ok(tol)
    } else {
        Err(CliError::Usage("--tol must be a positive finite number".into()))
    }
}

/// CSV with header `s,t,g1,g2,g3`, 17 significant digits per value.
pub fn write_surface(samples: &[SurfaceSample], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "s,t,g1,g2,g3")?;
    for p in samples {
        writeln!(w, "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}", p.s, p.t, p.g.g1, p.g.g2, p.g.g3)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSummary {
    pub count: usize,
    pub seed: u64,
    /// Occurrences per `eta` value; values never seen are omitted.
    pub histogram: BTreeMap<usize, usize>,
    pub mean_eta: f64,
    pub min_eta: usize,
    pub max_eta: usize,
}

impl SampleSummary {
    fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serializes")
    }

    fn to_plain(&self) -> String {
        let mut out = format!("samples {} (seed {})\n", self.count, self.seed);
        for (eta, n) in &self.histogram {
            out.push_str(&format!("eta {eta}: {n}\n"));
        }
        out.push_str(&format!(
            "mean {} min {} max {}\n",
            self.mean_eta, self.min_eta, self.max_eta
        ));
        out
    }
}

/// Numeric `eta` of `count` Haar gates. Sample `i` is drawn from its own
/// ChaCha8 stream of `seed`, so results do not depend on evaluation order.
pub fn sample_eta(count: usize, seed: u64) -> Result<SampleSummary, CliError> {
    let tol = TolerancePolicy::DEFAULT;
    let basis = generator_basis(2)?;
    let mut histogram = BTreeMap::new();
    for i in 0..count {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let u = random_su(4, &mut rng);
        let eta = eta_numeric_with_basis(&u, &basis, &tol)?.eta;
        *histogram.entry(eta).or_insert(0) += 1;
    }
    let total: usize = histogram.iter().map(|(eta, n)| eta * n).sum();
    Ok(SampleSummary {
        count,
        seed,
        mean_eta: total as f64 / count as f64,
        min_eta: *histogram.keys().next().expect("count >= 1"),
        max_eta: *histogram.keys().next_back().expect("count >= 1"),
        histogram,
    })
}

#[derive(Serialize)]
struct BoundReport<'a> {
    gate: &'a str,
    n: usize,
    eta: usize,
    bound: u64,
}

#[derive(Serialize)]
struct EquivReport {
    equivalent: bool,
    makhlin_a: [f64; 3],
    makhlin_b: [f64; 3],
    canonical_a: [f64; 3],
    canonical_b: [f64; 3],
}
