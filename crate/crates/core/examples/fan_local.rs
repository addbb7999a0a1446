//! Local complexity of the flat cell at the center of the fan networks.

use plmorse::complex::CanonicalComplex;
use plmorse::complexity::global_h_complexity;
use plmorse::network::fan_network;
use plmorse::rational::{format_rational, int};

fn main() -> plmorse::Result<()> {
    let origin = [int(0), int(0)];
    for n in 1..=3 {
        let cx = CanonicalComplex::build(&fan_network(n));
        let center = cx.locate(&origin)?;
        let (global, locals) = global_h_complexity(&cx)?;
        let local = locals.iter().find(|l| l.cells.contains(&center)).expect("the origin is flat");
        println!(
            "fan({n}): level {} ranks {:?} (global {global})",
            format_rational(&local.level),
            local.ranks
        );
    }
    Ok(())
}
