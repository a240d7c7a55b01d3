use typea_core::{
    check_verdict_against_integration, classify, random_rank2_model, OracleConfig, OracleOutcome,
    SplitMix64,
};

use crate::emit::{to_pretty_json, write_text};
use crate::error::{CliError, CliResult};
use crate::model::ModelDocument;
use crate::opts::Flags;
use crate::report::{SweepDisagreement, SweepReport, VerdictJson};

/// Rank filter tolerance for sampled models.
const RANK_FILTER_TOL: f64 = 1e-8;

pub fn run(args: &[String]) -> CliResult<()> {
    let flags = Flags::parse(args, &["count", "seed", "horizon", "report", "tol"])?;
    if !flags.positional().is_empty() {
        return Err(CliError::Input(
            "usage: typea sweep --count N [--seed S] [--horizon T] [--report PATH] [--tol T]"
                .into(),
        ));
    }
    let count = flags.get_usize("count", 0)?;
    if count == 0 {
        return Err(CliError::Input("--count must be at least 1".into()));
    }
    let seed = flags.get_u64("seed", 0)?;
    let horizon = flags.get_f64("horizon", 200.0)?;
    if horizon <= 0.0 {
        return Err(CliError::Input("--horizon must be positive".into()));
    }
    let tol = flags.get_f64("tol", typea_core::DEFAULT_RANK_TOL)?;

    let cfg = OracleConfig {
        horizon,
        ..OracleConfig::default()
    };
    let mut rng = SplitMix64::new(seed);
    let mut report = SweepReport {
        count,
        seed,
        horizon,
        rank_filter_tol: RANK_FILTER_TOL,
        agreements: 0,
        confirmed_incomplete: 0,
        confirmed_complete: 0,
        disagreements: Vec::new(),
    };
    for index in 0..count {
        let c = random_rank2_model(&mut rng, RANK_FILTER_TOL);
        let verdict = classify(&c, tol)?;
        let outcome = check_verdict_against_integration(&c, &verdict, &cfg, &mut rng)?;
        match outcome {
            OracleOutcome::ConfirmedIncomplete { .. } => {
                report.agreements += 1;
                report.confirmed_incomplete += 1;
            }
            OracleOutcome::ConfirmedComplete { .. } => {
                report.agreements += 1;
                report.confirmed_complete += 1;
            }
            OracleOutcome::Disagreement { reason } => {
                report.disagreements.push(SweepDisagreement {
                    index,
                    model: ModelDocument::from_symbols(&c, None),
                    branch: VerdictJson::from_verdict(&verdict).branch,
                    reason,
                });
            }
            OracleOutcome::NotApplicable => {
                report.disagreements.push(SweepDisagreement {
                    index,
                    model: ModelDocument::from_symbols(&c, None),
                    branch: VerdictJson::from_verdict(&verdict).branch,
                    reason: "rank-2 filter produced a non-rank-2 verdict".into(),
                });
            }
        }
    }

    let text = to_pretty_json(&report)?;
    write_text(flags.get("report"), &text)?;
    if !report.disagreements.is_empty() {
        return Err(CliError::Numeric(format!(
            "{} of {} models disagreed with the integration oracle",
            report.disagreements.len(),
            count
        )));
    }
    Ok(())
}
