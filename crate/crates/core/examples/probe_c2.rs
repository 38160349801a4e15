use apxcount::witness::*;
fn main() {
    for (n, w, c) in [(512u64, 8u64, 3u64), (2048, 27, 3), (8192, 64, 2), (8192, 64, 4)] {
        let p = WitnessParams::new(n, w, c).unwrap();
        let wit = build_witness(&p).unwrap();
        let cap = wit.support.orthogonality_cap();
        let sums = wit.moment_sums(p.d1 + p.d2);
        let nonzero: Vec<u64> = sums.iter().filter(|(_, s)| !num_traits::Zero::is_zero(s)).map(|(j, _)| *j).collect();
        println!("({n},{w},{c}): d1={} d2={} |T|={} cap={} nonzero_moments_up_to_d1+d2={nonzero:?} objective={:.6}",
            p.d1, p.d2, wit.support.full.len(), cap, apxcount::scalar::rat_to_f64(&wit.dual_objective()));
    }
    // c-monotonicity at (8192, 64)
    let o2 = build_witness(&WitnessParams::new(8192, 64, 2).unwrap()).unwrap().dual_objective();
    let o4 = build_witness(&WitnessParams::new(8192, 64, 4).unwrap()).unwrap().dual_objective();
    println!("objective(c=4) > objective(c=2): {} ({:.6} vs {:.6})", o4 > o2,
        apxcount::scalar::rat_to_f64(&o4), apxcount::scalar::rat_to_f64(&o2));
}
