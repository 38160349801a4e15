use apxcount::lp::*;
use apxcount::scalar::{rat, rat_to_f64};
use std::time::Instant;
fn main() {
    let third = rat(1, 3);
    println!("-- criterion 5a: min D2 with D1=0, eps <= 1/3");
    for (n, w) in [(64u64, 2u64), (144, 4), (256, 8)] {
        let t = Instant::now();
        let d = min_degree_search(
            DegreeFamily::PrimalVaryD2 { n, w, d1: 0, restricted: false },
            &SearchThreshold::EpsAtMost(third.clone()), 40).unwrap();
        println!("  (N={n}, w={w}): min D2 = {:?} target sqrt(N/w) = {:.2}  [{:?}]", d, ((n/w) as f64).sqrt(), t.elapsed());
    }
    println!("-- criterion 5b: min D1 with D2=0, eps <= 1/3, N = 8w");
    for w in [8u64, 27, 64] {
        let n = 8 * w;
        let t = Instant::now();
        let d = min_degree_search(
            DegreeFamily::PrimalVaryD1 { n, w, d2: 0, restricted: false },
            &SearchThreshold::EpsAtMost(third.clone()), 40).unwrap();
        println!("  (N={n}, w={w}): min D1 = {:?} target w^(1/3) = {:.2}  [{:?}]", d, (w as f64).cbrt(), t.elapsed());
    }
    println!("-- criterion 6: min degree with alpha > 0");
    for (n, w) in [(16u64, 2u64), (24, 2), (32, 3)] {
        let t = Instant::now();
        let d = min_degree_search(DegreeFamily::Sbqp { n, w }, &SearchThreshold::AlphaPositive, 12).unwrap();
        println!("  (N={n}, w={w}): min degree = {:?} target min{{w, sqrt(N/w)}} = {:.2}  [{:?}]",
            d, (w as f64).min(((n as f64)/(w as f64)).sqrt()), t.elapsed());
    }
    println!("-- criterion 2 regression: objective at (8192,64,2)");
    let wit = apxcount::witness::build_witness(&apxcount::witness::WitnessParams::new(8192, 64, 2).unwrap()).unwrap();
    println!("  objective = {} ~ {:.9}", apxcount::scalar::format_rat(&wit.dual_objective()), rat_to_f64(&wit.dual_objective()));
}
