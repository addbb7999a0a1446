//! Writes a drawing of the canonical complex of the fan network to fan.svg.

use plmorse::complex::CanonicalComplex;
use plmorse::network::fan_network;
use plmorse::svg::export_svg;

fn main() -> plmorse::Result<()> {
    let svg = export_svg(&CanonicalComplex::build(&fan_network(2)))?;
    std::fs::write("fan.svg", &svg)?;
    println!("wrote fan.svg ({} bytes)", svg.len());
    Ok(())
}
