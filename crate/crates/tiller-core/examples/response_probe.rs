//! Prints the rudder-change response vs error for each FOU size.
//! Scratch tool for inspecting the control surfaces.

use tiller_core::controller::{BankParams, ControllerConfig, HelmController};

fn main() {
    let banks = BankParams::default();
    let t1 = HelmController::new(ControllerConfig::type1(), &banks).unwrap();
    let it2: Vec<(f64, HelmController)> = [0.0, 5.0, 10.0, 15.0, 20.0, 25.0]
        .iter()
        .map(|&m| {
            (
                m,
                HelmController::new(ControllerConfig::interval_type2(m), &banks).unwrap(),
            )
        })
        .collect();

    println!("delta = 0");
    print!("{:>8}", "error");
    print!("{:>10}", "t1");
    for (m, _) in &it2 {
        print!("{:>10}", format!("m={m}"));
    }
    println!();
    for e in [1.0, 2.0, 5.0, 8.0, 10.0, 15.0, 20.0, 25.0, 30.0, 45.0, 60.0, 90.0] {
        print!("{e:>8.1}");
        print!("{:>10.4}", t1.rudder_change(e, 0.0).value);
        for (_, ctrl) in &it2 {
            print!("{:>10.4}", ctrl.rudder_change(e, 0.0).value);
        }
        println!();
    }

    println!("\nerror = 10, varying delta");
    print!("{:>8}", "delta");
    print!("{:>10}", "t1");
    for (m, _) in &it2 {
        print!("{:>10}", format!("m={m}"));
    }
    println!();
    for d in [-10.0, -5.0, -2.0, 0.0, 2.0, 5.0, 10.0] {
        print!("{d:>8.1}");
        print!("{:>10.4}", t1.rudder_change(10.0, d).value);
        for (_, ctrl) in &it2 {
            print!("{:>10.4}", ctrl.rudder_change(10.0, d).value);
        }
        println!();
    }
}
