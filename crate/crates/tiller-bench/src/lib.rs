//! Shared fixtures for the criterion benchmarks.

use tiller_core::controller::{BankParams, ControllerConfig, HelmController};

pub fn type1_controller() -> HelmController {
    HelmController::new(ControllerConfig::type1(), &BankParams::default()).expect("default banks are valid")
}

pub fn it2_controller(fou: f64) -> HelmController {
    HelmController::new(ControllerConfig::interval_type2(fou), &BankParams::default())
        .expect("default banks are valid")
}
