//! Building images from lattice points and from graphs, adjacency counts,
//! connectivity and JSON round trips.

use digitop::image::{kappa_count, DigitalImage, LatticeSpec, PointId};

fn main() -> digitop::Result<()> {
    for (t, n) in [(1, 2), (2, 2), (1, 3), (3, 3)] {
        println!("kappa({t},{n}) = {}", kappa_count(t, n)?);
    }

    // an L shape in Z^2 with 8-adjacency
    let spec = LatticeSpec { dim: 2, t: 2, points: vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 1]] };
    let l = DigitalImage::from_lattice(spec)?.with_name("l-shape");
    println!("{} points, {} edges, connected: {}", l.size(), l.edge_count(), l.is_connected());
    println!("N*(0) = {:?}", l.neighborhood(PointId(0), true)?);
    println!("0-1-2 is a path: {}", l.is_path(&[PointId(0), PointId(1), PointId(2)])?);

    let g = DigitalImage::from_graph(6, &[(0, 1), (1, 2), (3, 4)])?;
    let conn = g.connectivity();
    println!("components of the graph: {:?}", conn.components);

    let json = l.to_json();
    println!("{json}");
    let back = DigitalImage::from_json(&json)?;
    assert_eq!(back, l);

    let bad = DigitalImage::from_graph(3, &[(0, 0)]);
    println!("self-loop rejected: {}", bad.unwrap_err());
    Ok(())
}
