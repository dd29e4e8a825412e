//! Run the identity catalog against both ball models and print one row
//! per law, the same report the `check` subcommand renders.

use gyroball::identities::{run_suite, Suite, VerifyConfig};
use gyroball::{BallParams, GyroModel, ModelKind, TolerancePolicy};

fn main() {
    let config = VerifyConfig {
        samples: 2000,
        seed: 42,
        cap: 0.9,
        policy: TolerancePolicy::default(),
    };

    for kind in [ModelKind::Einstein, ModelKind::Mobius] {
        let model = GyroModel::new(kind, BallParams::unit(3));
        println!("model: {kind}   samples: {}   seed: {}", config.samples, config.seed);
        println!("{:<28} {:>14} {:>8}", "identity", "max residual", "result");
        for report in run_suite(&model, &Suite::All, &config) {
            println!(
                "{:<28} {:>14.3e} {:>8}",
                report.identity.name(),
                report.max_residual,
                if report.pass { "pass" } else { "FAIL" }
            );
        }
        println!();
    }

    // Single identities can be selected by name, exactly as on the
    // command line.
    let suite = Suite::parse("gyrocommutativity").expect("known identity");
    let model = GyroModel::mobius(BallParams::unit(2));
    let report = &run_suite(&model, &suite, &config)[0];
    println!(
        "single identity '{}': worst of {} samples is {:.3e}",
        report.identity.name(),
        report.samples,
        report.max_residual
    );
}
