//! Inverse problems and scalar analyses built on the forward models.

mod calibrate;
mod design;
mod energy;
pub mod optimize;

pub use calibrate::{
    calibrate_dynamic, calibrate_dynamic_with, calibrate_static, calibrate_static_with, model_effective_stiffness,
    CalibrationResult, DynamicCalibration, MeasuredGainCurve, StaticCalibration,
};
pub use design::{
    achievable_band, pressure_for_frequency, speed_envelope, strouhal, SpeedEnvelope, StrouhalPoint,
    BIOLOGICAL_STROUHAL, FREQUENCY_TOLERANCE_HZ,
};
pub use energy::{
    foil_inflation_energy, inflation_energy, inflation_energy_with_nodes, EnergyReport, DEFAULT_NODES,
    ENERGY_ASSUMPTIONS,
};
