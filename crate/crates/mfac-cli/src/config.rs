//! Loading, overriding, and re-serializing experiment configurations.

use std::path::Path;

use mfac_core::controller::Compensation;
use mfac_core::harness::ExperimentConfig;

use crate::CliError;

/// Parse a config file; schema violations name the offending key.
pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

pub fn to_json(cfg: &ExperimentConfig) -> String {
    let mut s = serde_json::to_string_pretty(cfg).expect("config serializes");
    s.push('\n');
    s
}

/// Apply one `key=value` override, type-checked against the schema.
/// Overriding then re-serializing is equivalent to editing the file.
pub fn apply_set(cfg: &mut ExperimentConfig, assignment: &str) -> Result<(), CliError> {
    let Some((key, value)) = assignment.split_once('=') else {
        return Err(CliError::Config(format!(
            "override `{assignment}` is not of the form key=value"
        )));
    };
    let bad_value =
        |what: &str| CliError::Config(format!("override {key}={value}: expected {what}"));
    match key {
        "plant_id" => cfg.plant_id = value.to_string(),
        "trajectory_id" => cfg.trajectory_id = value.to_string(),
        "disturbance_id" => cfg.disturbance_id = value.to_string(),
        "lambda" => cfg.lambda = value.parse().map_err(|_| bad_value("a number"))?,
        "l_y" => {
            cfg.l_y = value
                .parse()
                .map_err(|_| bad_value("a nonnegative integer"))?
        }
        "l_u" => {
            cfg.l_u = value
                .parse()
                .map_err(|_| bad_value("a nonnegative integer"))?
        }
        "compensation" => cfg.compensation = Compensation::parse(value)?,
        "observer_gain" => cfg.observer_gain = value.parse().map_err(|_| bad_value("a number"))?,
        "horizon" => cfg.horizon = value.parse().map_err(|_| bad_value("a positive integer"))?,
        "out" => cfg.out = Some(value.to_string()),
        "rms_exclude_after_switch" => {
            cfg.rms_exclude_after_switch = Some(
                value
                    .parse()
                    .map_err(|_| bad_value("a nonnegative integer"))?,
            )
        }
        other => {
            return Err(CliError::Config(format!("unknown config key: {other}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_json() -> String {
        r#"{
            "plant_id": "ex2",
            "trajectory_id": "traj_eq24",
            "disturbance_id": "dist_ex2",
            "lambda": 0.0,
            "l_y": 0,
            "l_u": 1,
            "compensation": "true_disturbance",
            "observer_gain": 1.0,
            "horizon": 400
        }"#
        .to_string()
    }

    #[test]
    fn parse_and_roundtrip() {
        let cfg: ExperimentConfig = serde_json::from_str(&base_json()).unwrap();
        assert_eq!(cfg.plant_id, "ex2");
        let text = to_json(&cfg);
        let again: ExperimentConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, again);
    }

    #[test]
    fn unknown_key_is_named() {
        let bad = base_json().replace("\"horizon\"", "\"horizons\"");
        let err = serde_json::from_str::<ExperimentConfig>(&bad).unwrap_err();
        assert!(err.to_string().contains("horizons"), "{err}");
    }

    #[test]
    fn observer_gain_defaults() {
        let trimmed = base_json().replace("\"observer_gain\": 1.0,", "");
        let cfg: ExperimentConfig = serde_json::from_str(&trimmed).unwrap();
        assert_eq!(cfg.observer_gain, 1.0);
    }

    #[test]
    fn set_override_equals_direct_edit() {
        let mut cfg: ExperimentConfig = serde_json::from_str(&base_json()).unwrap();
        apply_set(&mut cfg, "lambda=0.5").unwrap();
        apply_set(&mut cfg, "compensation=none").unwrap();
        let edited = base_json()
            .replace("\"lambda\": 0.0", "\"lambda\": 0.5")
            .replace("true_disturbance", "none");
        let direct: ExperimentConfig = serde_json::from_str(&edited).unwrap();
        assert_eq!(cfg, direct);
        assert_eq!(to_json(&cfg), to_json(&direct));
    }

    #[test]
    fn set_override_rejects_unknown_and_mistyped() {
        let mut cfg: ExperimentConfig = serde_json::from_str(&base_json()).unwrap();
        let err = apply_set(&mut cfg, "lambdas=0.5").unwrap_err();
        assert!(err.to_string().contains("lambdas"));
        let err = apply_set(&mut cfg, "lambda=abc").unwrap_err();
        assert!(err.to_string().contains("expected a number"));
        let err = apply_set(&mut cfg, "nonsense").unwrap_err();
        assert!(err.exit_code() == 2 && err.to_string().contains("key=value"));
    }
}
