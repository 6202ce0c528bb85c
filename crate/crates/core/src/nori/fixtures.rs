//! Small simplicial complexes and pair data used by tests, benches and the CLI.

use super::complex::{PairsCategoryData, SimplicialComplex, SimplicialMap, SimplicialPair, Triple};

/// Boundary of a triangle.
pub fn circle() -> SimplicialComplex {
    SimplicialComplex::simplex_boundary(2)
}

/// Klein bottle: a 3x3 grid of squares, each cut along a diagonal, with the
/// vertical sides glued straight and the horizontal sides glued with a flip.
pub fn klein_bottle() -> SimplicialComplex {
    let label = |x: u32, y: u32| -> u32 {
        let (x, y) = if x == 3 { (0, (3 - y % 3) % 3) } else { (x, y % 3) };
        3 * x + y
    };
    let mut faces = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            let (a, b, c, d) = (label(x, y), label(x + 1, y), label(x, y + 1), label(x + 1, y + 1));
            faces.push(vec![a, b, d]);
            faces.push(vec![a, c, d]);
        }
    }
    SimplicialComplex::from_faces(faces).expect("valid triangulation")
}

/// Triangle, its boundary and a point: pairs `(Δ², ∂Δ²)`, `(∂Δ², pt)`, the
/// total pair `(Δ², pt)` with both inclusions, and the triple.
pub fn disc_data() -> PairsCategoryData {
    let disc = SimplicialComplex::simplex(2);
    let bd = SimplicialComplex::simplex_boundary(2);
    let pt = SimplicialComplex::simplex(0);
    let pairs = vec![
        SimplicialPair::new("disc_rel", disc.clone(), bd.clone()).expect("subcomplex"),
        SimplicialPair::new("circle_pt", bd, pt.clone()).expect("subcomplex"),
        SimplicialPair::new("disc_pt", disc, pt).expect("subcomplex"),
    ];
    let id = |n: u32| (0..n).map(|v| (v, v)).collect();
    let maps = vec![
        SimplicialMap {
            name: "incl_circle".into(),
            source: 1,
            target: 2,
            vertex_map: id(3),
        },
        SimplicialMap {
            name: "quot_disc".into(),
            source: 2,
            target: 0,
            vertex_map: id(3),
        },
    ];
    let triples = vec![Triple {
        name: "disc_triple".into(),
        outer: 0,
        inner: 1,
    }];
    PairsCategoryData::new(pairs, maps, triples).expect("consistent fixture")
}
