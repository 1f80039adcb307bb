use fchain::cutproject::is_singular;
use fchain::GoldenRational;
use rand::Rng;

/// A random `b = frac((p + q tau)/den)` off the singular leaf.
pub fn random_intercept<R: Rng>(rng: &mut R) -> GoldenRational {
    loop {
        let den = rng.gen_range(2i64..1000);
        let b = GoldenRational::new(rng.gen_range(-500..500), rng.gen_range(-50..50), den)
            .expect("nonzero denominator")
            .frac();
        if !b.is_zero() && !is_singular(&b) {
            return b;
        }
    }
}
