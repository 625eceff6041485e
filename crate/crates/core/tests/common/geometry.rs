//! Floating-point geometry of points on the unit circle.

use std::f64::consts::PI;

pub const TOLERANCE: f64 = 1e-9;

/// Point `k` of `2n`, clockwise from the top.
pub fn point(n: usize, k: usize) -> (f64, f64) {
    let angle = PI / 2.0 - 2.0 * PI * (k as f64 - 1.0) / (2 * n) as f64;
    (angle.cos(), angle.sin())
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Whether the origin lies in the closed convex polygon with these
/// vertices given in circular order.
pub fn contains_origin(vertices: &[(f64, f64)]) -> bool {
    let origin = (0.0, 0.0);
    let sides: Vec<f64> =
        (0..vertices.len()).map(|i| cross(vertices[i], vertices[(i + 1) % vertices.len()], origin)).collect();
    sides.iter().all(|&s| s >= -TOLERANCE) || sides.iter().all(|&s| s <= TOLERANCE)
}

/// Whether the quadrilateral on four circle points (any order) contains the center.
pub fn quadrilateral_contains_center(n: usize, labels: [usize; 4]) -> bool {
    let mut sorted = labels;
    sorted.sort_unstable();
    let vertices: Vec<(f64, f64)> = sorted.iter().map(|&k| point(n, k)).collect();
    contains_origin(&vertices)
}

/// Whether the ray from the center to point `p` crosses chord `a-b`
/// (endpoints excluded).
pub fn ray_crosses(n: usize, a: usize, b: usize, p: usize) -> bool {
    let (pa, pb, pp) = (point(n, a), point(n, b), point(n, p));
    let origin = (0.0, 0.0);
    // Segment intersection of origin->pp with pa->pb.
    let d1 = cross(pa, pb, origin);
    let d2 = cross(pa, pb, pp);
    let d3 = cross(origin, pp, pa);
    let d4 = cross(origin, pp, pb);
    d1 * d2 < -TOLERANCE && d3 * d4 < -TOLERANCE
}

/// Signed area orientation of the center relative to the directed chord `i -> j`:
/// negative when the center lies to the right.
pub fn center_side(n: usize, i: usize, j: usize) -> f64 {
    cross(point(n, i), point(n, j), (0.0, 0.0))
}
