//! Every example in `examples/` runs to completion.

mod measures {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/measures.rs"));
}

mod optimal_strategy {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/optimal_strategy.rs"));
}

mod binary_capacity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/binary_capacity.rs"));
}

mod f_leakage {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/f_leakage.rs"));
}

mod hard_distortion_put {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hard_distortion_put.rs"));
}

mod type_distance {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/type_distance.rs"));
}

mod hamming_datasets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/hamming_datasets.rs"));
}

mod average_hamming {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/average_hamming.rs"));
}

mod sensitive_attribute {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sensitive_attribute.rs"));
}

#[test]
fn measures_example_runs() {
    measures::run_example().expect("measures example should run");
}

#[test]
fn optimal_strategy_example_runs() {
    optimal_strategy::run_example().expect("optimal_strategy example should run");
}

#[test]
fn binary_capacity_example_runs() {
    binary_capacity::run_example().expect("binary_capacity example should run");
}

#[test]
fn f_leakage_example_runs() {
    f_leakage::run_example().expect("f_leakage example should run");
}

#[test]
fn hard_distortion_put_example_runs() {
    hard_distortion_put::run_example().expect("hard_distortion_put example should run");
}

#[test]
fn type_distance_example_runs() {
    type_distance::run_example().expect("type_distance example should run");
}

#[test]
fn hamming_datasets_example_runs() {
    hamming_datasets::run_example().expect("hamming_datasets example should run");
}

#[test]
fn average_hamming_example_runs() {
    average_hamming::run_example().expect("average_hamming example should run");
}

#[test]
fn sensitive_attribute_example_runs() {
    sensitive_attribute::run_example().expect("sensitive_attribute example should run");
}
