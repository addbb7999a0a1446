//! Classifies every vertex of a depth-2 network as regular, non-degenerate
//! critical (with its index) or degenerate critical.

use plmorse::complex::CanonicalComplex;
use plmorse::complexity::{classify_vertex, is_pl_morse_depth2, VertexClass};
use plmorse::network::{random_network, Scheme};
use plmorse::rational::to_f64;

fn main() -> plmorse::Result<()> {
    // first seed with a critical vertex
    let (net, cx) = (0..)
        .map(|seed| random_network(&[2, 5, 1], seed, Scheme::Gaussian).expect("valid architecture"))
        .map(|net| {
            let cx = CanonicalComplex::build(&net);
            (net, cx)
        })
        .find(|(_, cx)| cx.cells_of_dim(0).any(|v| matches!(classify_vertex(cx, v), Ok(VertexClass::Nondegenerate { .. }))))
        .expect("critical vertices occur with positive probability");
    for v in cx.cells_of_dim(0) {
        let cell = cx.cell(v);
        let p: Vec<String> = cell.interior_point.iter().map(|x| format!("{:.3}", to_f64(x))).collect();
        let class = match classify_vertex(&cx, v)? {
            VertexClass::Nondegenerate { index } => format!("critical of index {index}"),
            c => c.name().to_string(),
        };
        println!("({}) F = {:.4}: {class}", p.join(", "), to_f64(&cell.form.eval(&cell.interior_point)));
    }
    println!("PL Morse: {}", is_pl_morse_depth2(&net)?);
    Ok(())
}
