//! Generators for the shipped example complexes and a few classical
//! triangulations used as homology references.

use crate::simplicial::{build_complex, ScalarField, SimplicialComplex};

type Built = (SimplicialComplex, ScalarField);

fn build(simplices: &[Vec<usize>], values: &[f64]) -> Built {
    let values: Vec<(usize, f64)> = values.iter().copied().enumerate().collect();
    build_complex(simplices, &values).expect("generated complexes are well formed")
}

/// Heights of the hexagon around the circle.
pub const HEXAGON_HEIGHTS: [f64; 6] = [0.0, 1.0, 2.0, 3.0, 2.0, 1.0];

/// A 6-cycle standing upright: heights 0, 1, 2, 3, 2, 1.
pub fn hexagon() -> Built {
    hexagon_subdivided(1)
}

/// The hexagon with every edge cut into `m` equal pieces; the function is
/// interpolated linearly, so the PL map is unchanged.
pub fn hexagon_subdivided(m: usize) -> Built {
    assert!(m >= 1);
    let n = 6 * m;
    let values: Vec<f64> = (0..n)
        .map(|v| {
            let (side, step) = (v / m, v % m);
            let a = HEXAGON_HEIGHTS[side];
            let b = HEXAGON_HEIGHTS[(side + 1) % 6];
            a + (b - a) * step as f64 / m as f64
        })
        .collect();
    let edges: Vec<Vec<usize>> = (0..n).map(|v| vec![v, (v + 1) % n]).collect();
    build(&edges, &values)
}

/// Rounds to four decimals, the precision of the shipped files.
fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

/// A torus of revolution (radii 2 and 1) standing on its side, sampled on an
/// `m x k` grid, with `f` the height. Each grid square is split along the
/// diagonal with the smaller height difference.
///
/// Critical values are -3 (minimum), -1 and 1 (saddles) and 3 (maximum).
pub fn standing_torus(m: usize, k: usize) -> Built {
    assert!(m >= 3 && k >= 3);
    let idx = |i: usize, j: usize| (i % m) * k + (j % k);
    let values: Vec<f64> = (0..m * k)
        .map(|v| {
            let (i, j) = (v / k, v % k);
            let phi = std::f64::consts::TAU * j as f64 / k as f64;
            let theta = std::f64::consts::TAU * i as f64 / m as f64 - std::f64::consts::FRAC_PI_2;
            round4((2.0 + phi.cos()) * theta.sin())
        })
        .collect();
    let mut tris = Vec::with_capacity(2 * m * k);
    for i in 0..m {
        for j in 0..k {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i, j + 1), idx(i + 1, j + 1));
            if (values[a] - values[d]).abs() <= (values[b] - values[c]).abs() {
                tris.push(vec![a, b, d]);
                tris.push(vec![a, c, d]);
            } else {
                tris.push(vec![a, b, c]);
                tris.push(vec![b, c, d]);
            }
        }
    }
    build(&tris, &values)
}

/// Grid sizes of the shipped torus.
pub const TORUS_GRID: (usize, usize) = (48, 20);

/// Subdivision of the shipped convergence hexagon.
pub const HEXAGON_SUBDIVISION: usize = 8;

/// Boundary of a cycle on `n` vertices, `f(v) = v`.
pub fn circle(n: usize) -> Built {
    let edges: Vec<Vec<usize>> = (0..n).map(|v| vec![v, (v + 1) % n]).collect();
    build(&edges, &(0..n).map(|v| v as f64).collect::<Vec<_>>())
}

/// The boundary of the tetrahedron, a 2-sphere.
pub fn tetrahedron_boundary() -> Built {
    let tris = vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]];
    build(&tris, &[0.0, 1.0, 2.0, 3.0])
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn seven_vertex_torus() -> Built {
    let tris: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    build(&tris, &(0..7).map(|v| v as f64).collect::<Vec<_>>())
}

/// Square-grid surface on an `n x n` grid whose left and right sides are glued
/// straight and whose top and bottom are glued straight (`twist = false`, a
/// torus) or with a reflection (`twist = true`, a Klein bottle).
pub fn grid_surface(n: usize, twist: bool) -> Built {
    assert!(n >= 3);
    let vertex = |i: usize, j: usize| {
        let j = j % n;
        if i == n {
            if twist {
                (n - j) % n
            } else {
                j
            }
        } else {
            i * n + j
        }
    };
    let mut tris = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            let (a, b, c, d) = (
                vertex(i, j),
                vertex(i + 1, j),
                vertex(i, j + 1),
                vertex(i + 1, j + 1),
            );
            tris.push(vec![a, b, d]);
            tris.push(vec![a, c, d]);
        }
    }
    build(&tris, &(0..n * n).map(|v| v as f64).collect::<Vec<_>>())
}

pub fn klein_bottle() -> Built {
    grid_surface(4, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closed_surface(x: &SimplicialComplex) -> bool {
        // every edge lies in exactly two triangles
        let mut uses = vec![0; x.count(1)];
        for t in 0..x.count(2) {
            for &e in x.faces(2, t) {
                uses[e] += 1;
            }
        }
        uses.iter().all(|&u| u == 2)
    }

    #[test]
    fn hexagons() {
        let (x, f) = hexagon();
        assert_eq!(f.values(), &HEXAGON_HEIGHTS);
        assert_eq!(x.count(1), 6);
        let (x, f) = hexagon_subdivided(4);
        assert_eq!(x.vertex_count(), 24);
        assert_eq!(f.value(2), 0.5);
        assert_eq!(f.value(23), 0.25);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn surfaces_are_closed() {
        for (x, chi) in [
            (tetrahedron_boundary().0, 2),
            (seven_vertex_torus().0, 0),
            (grid_surface(4, false).0, 0),
            (klein_bottle().0, 0),
            (standing_torus(12, 6).0, 0),
        ] {
            assert!(closed_surface(&x));
            assert_eq!(x.euler_characteristic(), chi);
        }
        let (x, _) = seven_vertex_torus();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (7, 21, 14));
        let (x, _) = klein_bottle();
        assert_eq!((x.count(0), x.count(1), x.count(2)), (16, 48, 32));
    }

    #[test]
    fn torus_heights() {
        let (x, f) = standing_torus(48, 20);
        assert_eq!(x.vertex_count(), 960);
        assert_eq!(x.count(2), 1920);
        assert_eq!(f.range(), Some((-3.0, 3.0)));
    }
}
