//! The network with m hidden units whose coarse sublevel complexity is m - 2,
//! next to the value on a few random networks of the same shape.

use plmorse::complex::{is_generic, is_transversal, CanonicalComplex};
use plmorse::complexity::coarse_complexities;
use plmorse::network::{coarse_bound_network, random_network, Scheme};

fn main() -> plmorse::Result<()> {
    for m in 3..=5 {
        let c = coarse_complexities(&CanonicalComplex::build(&coarse_bound_network(m)));
        println!("coarse_bound({m}): sublevel {:?} superlevel {:?}", c.sublevel, c.superlevel);
        for seed in 0..3 {
            let net = random_network(&[2, m, 1], seed, Scheme::Gaussian)?;
            if !is_generic(&net) || !is_transversal(&net) {
                continue;
            }
            let c = coarse_complexities(&CanonicalComplex::build(&net));
            println!("  seed {seed}: totals {} / {} (bound {})", c.sublevel_total(), c.superlevel_total(), m - 2);
        }
    }
    Ok(())
}
