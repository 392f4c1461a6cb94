use nalgebra::Vector3;
use relqit::harness::entropy_sweep;
use relqit::{MomentumLabel, PartitionSpec, StateVector};
use std::f64::consts::FRAC_PI_4;

#[test]
fn probe() {
    let p = MomentumLabel::new(1.0, 0.0, 0.0, 1.0).unwrap();
    let q = MomentumLabel::new(1.0, 0.0, 0.0, -1.0).unwrap();
    let s = StateVector::friis(FRAC_PI_4, FRAC_PI_4, p, q).unwrap();
    let partitions: Vec<PartitionSpec> = vec![
        "p1.mom".parse().unwrap(),
        "p1.spin".parse().unwrap(),
        "p1.spin,p2.spin".parse().unwrap(),
        "p1.mom,p2.mom".parse().unwrap(),
        "particle1".parse().unwrap(),
        "p1.mom,p2.spin".parse().unwrap(),
    ];
    let grid: Vec<f64> = (0..7).map(|i| i as f64 * 0.5).collect();
    for axis in [Vector3::x(), Vector3::z()] {
        let table = entropy_sweep(&s, axis, &grid, &partitions).unwrap();
        eprintln!("=== axis {:?}", axis.as_slice());
        eprintln!("{table}");
    }
}
