// Mixed area of a square and a triangle, by mixed cells and by the shoelace formula.

use topoflow::geometry::{mixed_volume, PointConfiguration};

/// Twice the area of the convex hull of `pts` (monotone chain plus shoelace).
pub fn twice_hull_area(pts: &[(i64, i64)]) -> i64 {
    let mut p = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return 0;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 { Box::new(p.iter()) } else { Box::new(p.iter().rev()) };
        for &q in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    let m = hull.len();
    (0..m).map(|i| hull[i].0 * hull[(i + 1) % m].1 - hull[(i + 1) % m].0 * hull[i].1).sum::<i64>().abs()
}

/// `area(P + Q) - area(P) - area(Q)`.
pub fn shoelace_mixed_area(p: &[(i64, i64)], q: &[(i64, i64)]) -> i64 {
    let sum: Vec<(i64, i64)> = p.iter().flat_map(|a| q.iter().map(move |b| (a.0 + b.0, a.1 + b.1))).collect();
    let twice = twice_hull_area(&sum) - twice_hull_area(p) - twice_hull_area(q);
    assert_eq!(twice % 2, 0);
    twice / 2
}

pub const SQUARE: [(i64, i64); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];
pub const TRIANGLE: [(i64, i64); 3] = [(0, 0), (2, 1), (1, 2)];

pub fn config(pts: &[(i64, i64)]) -> PointConfiguration {
    PointConfiguration::from_unsorted(2, pts.iter().map(|&(x, y)| vec![x, y])).expect("planar points")
}

fn main() -> topoflow::Result<()> {
    let cells = mixed_volume(&[config(&SQUARE), config(&TRIANGLE)], 0)?;
    for c in &cells.cells {
        println!("cell {:?} volume {}", c.selection, c.volume);
    }
    println!("mixed cells: {}", cells.total);
    println!("shoelace:    {}", shoelace_mixed_area(&SQUARE, &TRIANGLE));
    Ok(())
}
