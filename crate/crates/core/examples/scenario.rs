// Runs a scenario held in a string and prints the report, as the
// `tiltcheck` binary does for files.

use tilted_giraud::scenario::{run, RunOptions, Scenario};

const SCENARIO: &str = r#"{
  "version": 1,
  "field": 3,
  "quiver": { "vertices": ["a", "b", "c"], "arrows": [["a", "b"], ["b", "c"]] },
  "corner": ["a", "c"],
  "pairs": {
    "simples_b": { "torsion": ["Sb"], "free": ["Sa", "Pa", "Ia", "Sc", "Pb"] }
  },
  "bounds": { "dim": 1, "depth": 3, "heart": 2 },
  "commands": [
    { "cmd": "enumerate-pairs" },
    { "cmd": "validate-pair", "pair": "simples_b" },
    { "cmd": "verify-tt11" },
    { "cmd": "t-cohomology", "pair": "simples_b", "complex": { "stalk": "Pa", "degree": 1 }, "degree": 0 }
  ]
}"#;

fn main() -> tilted_giraud::Result<()> {
    let scenario = Scenario::parse(SCENARIO)?;
    let report = run(&scenario, &RunOptions { no_timing: true, ..Default::default() })?;
    for c in &report.commands {
        println!("{:<16} {:?}", c.cmd, c.verdict);
    }
    println!("{}", serde_json::to_string_pretty(&report.commands[2].result).expect("reports serialize"));
    if !report.passed {
        return Err(tilted_giraud::Error::Scenario("a verification failed".into()));
    }
    Ok(())
}
