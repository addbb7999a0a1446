//! Compares exact sublevel-set Betti numbers with a cubical approximation on
//! a box that holds every vertex of the complex.

use plmorse::compact::sublevel_model;
use plmorse::complex::CanonicalComplex;
use plmorse::complexity::model_betti;
use plmorse::homology::{grid_oracle, GridPredicate};
use plmorse::network::{Activation, AffineLayer, Network};
use plmorse::rational::{frac, int, vec_of};

fn main() -> plmorse::Result<()> {
    // lines x = 0, y = 0, x + y = 1
    let first = AffineLayer::from_ints(&[&[1, 0, 0], &[0, -1, 0], &[-1, -1, 1]], Activation::Relu)?;
    let net = Network::shallow(first, vec_of(&[2, -3, 1]), int(0))?;
    let cx = CanonicalComplex::build(&net);
    let h = int(4);
    for c in [frac(1, 3), frac(4, 3), frac(10, 3)] {
        let exact = model_betti(&sublevel_model(&cx.refine(std::slice::from_ref(&c)), &c), 3);
        let grid = grid_oracle(&net, &[-h.clone(), -h.clone()], &[h.clone(), h.clone()], &frac(1, 32), &GridPredicate::AtMost(c.clone()));
        println!("F <= {c}: exact {exact:?}, grid {:?} ({} cubes, margin {:.2e})", grid.betti, grid.cubes, grid.margin);
    }
    Ok(())
}
