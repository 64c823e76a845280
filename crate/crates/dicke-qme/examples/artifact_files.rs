// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic experiment artifacts and metadata round-trips.
//!
//! Every experiment runner writes CSV artifacts whose head is a block of
//! `# key = value` metadata: the full parameter set needed to reproduce the
//! file. This example runs a small quench, writes the artifact, parses the
//! metadata back into a run configuration, reruns it, and verifies the two
//! files are byte-identical — the reproducibility contract the command-line
//! interface is built on.
//!
//! Run with: `cargo run --release --example artifact_files`

use dicke_qme::cli::RunConfig;
use dicke_qme::dynamics::{self, IntegratorOptions};
use dicke_qme::output;

fn main() -> dicke_qme::Result<()> {
    let dir = std::env::temp_dir().join("dicke-qme-artifact-example");
    std::fs::create_dir_all(&dir).map_err(dicke_qme::Error::from)?;

    let config = RunConfig::default();
    let lambda = 17.5;
    let run = |config: &RunConfig| -> dicke_qme::Result<std::path::PathBuf> {
        let p = config.model_params(lambda)?;
        let grid = dynamics::uniform_grid(10.0, 0.05)?;
        let curves = dynamics::quench_experiment_with(
            &p,
            &[lambda],
            &grid,
            &IntegratorOptions::default(),
            config.workers,
        )?;
        let mut metadata = config.common_metadata("quench");
        metadata.push(("lambda".into(), output::format_float(lambda)));
        metadata.push(("tmax".into(), output::format_float(10.0)));
        metadata.push(("dt".into(), output::format_float(0.05)));
        output::write_quench_curve(&dir, &curves[0], &metadata)
    };

    let first = run(&config)?;
    let text = std::fs::read_to_string(&first).map_err(dicke_qme::Error::from)?;
    println!("wrote {}", first.display());
    println!("metadata head:");
    for (key, value) in output::parse_metadata(&text) {
        println!("  {key} = {value}");
    }

    // Reconstruct the configuration from the artifact alone and rerun.
    let recovered = RunConfig::from_metadata(&output::parse_metadata(&text))?;
    let second = run(&recovered)?;
    let rerun = std::fs::read_to_string(&second).map_err(dicke_qme::Error::from)?;
    assert_eq!(text, rerun, "rerun from recovered metadata must be byte-identical");
    println!("rerun from parsed metadata: byte-identical ({} bytes)", rerun.len());
    Ok(())
}
