macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(inflate_tube, "inflate_tube.rs", inflate_tube_runs);
example!(static_test, "static_test.rs", static_test_runs);
example!(resonance_sweep, "resonance_sweep.rs", resonance_sweep_runs);
example!(operating_envelope, "operating_envelope.rs", operating_envelope_runs);
example!(time_history, "time_history.rs", time_history_runs);
example!(calibration, "calibration.rs", calibration_runs);
example!(inverse_design, "inverse_design.rs", inverse_design_runs);
example!(inflation_energy, "inflation_energy.rs", inflation_energy_runs);
