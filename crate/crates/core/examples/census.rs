//! Builds the canonical complex of a random generic shallow network on the
//! plane and compares its cell counts with those of a line arrangement.

use plmorse::complex::{is_generic, CanonicalComplex};
use plmorse::network::{random_network, Scheme};

fn main() -> plmorse::Result<()> {
    let m = 4;
    let net = (0..)
        .map(|seed| random_network(&[2, m, 1], seed, Scheme::Gaussian))
        .find(|n| n.as_ref().map_or(true, is_generic))
        .expect("some seed is generic")?;
    let cx = CanonicalComplex::build(&net);
    let census = cx.census();
    for d in 0..=2 {
        println!("dim {d}: {} bounded, {} unbounded", census.bounded[d], census.unbounded[d]);
    }
    // m lines in general position
    let expected = [m * (m - 1) / 2, m * m, 1 + m + m * (m - 1) / 2];
    for (d, e) in expected.iter().enumerate() {
        assert_eq!(census.total(d), *e);
    }
    println!("matches the arrangement of {m} lines in general position");
    Ok(())
}
