use apxcount::constructions::*;
fn main() {
    for w in [8u64, 27, 64, 125, 100] {
        match fedja_construct(w) {
            Ok(fp) => {
                let rep = fedja_verify(&fp, 3 * w).unwrap();
                println!("w={w}: d={} deg={} cap={} a={} b={} jump={:.3} low={} mid={} high={} cont={} viol={}",
                    fp.d, rep.degree, rep.degree_cap,
                    apxcount::scalar::format_rat(&fp.corrector_a), apxcount::scalar::format_rat(&fp.corrector_b),
                    apxcount::scalar::rat_to_f64(&fp.jump_value),
                    rep.low_ok, rep.mid_ok, rep.high_ok, rep.continuous_high_ok, rep.violations.len());
            }
            Err(e) => println!("w={w}: FAILED {e}"),
        }
    }
}
