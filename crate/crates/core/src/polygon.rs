//! Lower convex hulls of integer point clouds with infinite ordinates,
//! principal parts, lambda-components and Minkowski sums.

use crate::arith::Valuation;
use crate::error::{Error, Result};
use num_integer::Integer as _;
use std::cmp::Ordering;

/// A cloud point (abscissa, ordinate); infinite ordinate marks a zero
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyPoint {
    pub x: i64,
    pub y: Valuation,
}

/// Slope of a polygon side: -h/e in lowest terms (e >= 1), or -infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slope {
    NegInf,
    Finite { h: i64, e: i64 },
}

impl Slope {
    pub fn finite(h: i64, e: i64) -> Slope {
        assert!(e > 0);
        let g = h.gcd(&e);
        if g > 1 {
            Slope::Finite { h: h / g, e: e / g }
        } else {
            Slope::Finite { h, e }
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Slope::NegInf => true,
            Slope::Finite { h, .. } => *h > 0,
        }
    }

    /// Total order by slope value, -infinity first.
    pub fn cmp_value(&self, other: &Slope) -> Ordering {
        match (self, other) {
            (Slope::NegInf, Slope::NegInf) => Ordering::Equal,
            (Slope::NegInf, _) => Ordering::Less,
            (_, Slope::NegInf) => Ordering::Greater,
            (Slope::Finite { h: h1, e: e1 }, Slope::Finite { h: h2, e: e2 }) => {
                // -h1/e1 < -h2/e2  <=>  h1*e2 > h2*e1
                (h2 * e1).cmp(&(h1 * e2))
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Slope::NegInf => "-inf".into(),
            Slope::Finite { h, e } if *e == 1 => format!("{}", -h),
            Slope::Finite { h, e } => format!("-{h}/{e}"),
        }
    }
}

/// A side of a Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Side {
    pub slope: Slope,
    pub x0: i64,
    pub y0: Valuation,
    pub x1: i64,
    pub y1: Valuation,
}

impl Side {
    pub fn length(&self) -> i64 {
        self.x1 - self.x0
    }

    /// Degree of the side: length / e for finite slopes, length for -inf.
    pub fn degree(&self) -> i64 {
        match self.slope {
            Slope::NegInf => self.length(),
            Slope::Finite { e, .. } => self.length() / e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub sides: Vec<Side>,
}

impl NewtonPolygon {
    pub fn length(&self) -> i64 {
        self.sides.iter().map(|s| s.length()).sum()
    }

    /// Sides of negative slope only (the principal part).
    pub fn principal(&self) -> NewtonPolygon {
        NewtonPolygon {
            sides: self
                .sides
                .iter()
                .filter(|s| s.slope.is_negative())
                .cloned()
                .collect(),
        }
    }

    pub fn slopes(&self) -> Vec<Slope> {
        self.sides.iter().map(|s| s.slope).collect()
    }
}

/// Lower convex hull of a point cloud. Points with infinite ordinate are
/// absent from the hull; an all-infinite prefix at abscissas 0..k-1 yields
/// an initial -infinity side of length k.
pub fn lower_hull(points: &[PolyPoint]) -> Result<NewtonPolygon> {
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let mut finite: Vec<(i64, i64)> = points
        .iter()
        .filter_map(|p| p.y.finite().map(|y| (p.x, y)))
        .collect();
    if finite.is_empty() {
        return Err(Error::EmptyCloud);
    }
    finite.sort();
    // keep the lowest ordinate per abscissa
    finite.dedup_by(|a, b| {
        if a.0 == b.0 {
            if a.1 < b.1 {
                b.1 = a.1;
            }
            true
        } else {
            false
        }
    });
    // monotone chain, lower hull
    let mut hull: Vec<(i64, i64)> = vec![];
    for &p in &finite {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // drop b if it is above or on segment a-p
            if (b.1 - a.1) * (p.0 - a.0) >= (p.1 - a.1) * (b.0 - a.0) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut sides = vec![];
    let min_x = points.iter().map(|p| p.x).min().unwrap();
    let first = hull[0];
    if first.0 > min_x {
        sides.push(Side {
            slope: Slope::NegInf,
            x0: min_x,
            y0: Valuation::Infinite,
            x1: first.0,
            y1: Valuation::Finite(first.1),
        });
    }
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let dx = b.0 - a.0;
        let dy = b.1 - a.1;
        sides.push(Side {
            slope: Slope::finite(-dy, dx),
            x0: a.0,
            y0: Valuation::Finite(a.1),
            x1: b.0,
            y1: Valuation::Finite(b.1),
        });
    }
    if sides.is_empty() {
        // single vertex: zero-length polygon anchored at the vertex
        sides.push(Side {
            slope: Slope::finite(0, 1),
            x0: first.0,
            y0: Valuation::Finite(first.1),
            x1: first.0,
            y1: Valuation::Finite(first.1),
        });
    }
    Ok(NewtonPolygon { sides })
}

/// The lambda-component of a cloud for lambda = -h/e: minimal value
/// W = min(e*y + h*x) over finite points, with the abscissa range
/// [s0, s1] of points attaining it.
pub fn lambda_component(points: &[PolyPoint], h: i64, e: i64) -> Result<(i64, i64, i64)> {
    let mut best: Option<(i64, i64, i64)> = None;
    for p in points {
        if let Valuation::Finite(y) = p.y {
            let w = e * y + h * p.x;
            best = Some(match best {
                None => (w, p.x, p.x),
                Some((bw, s0, s1)) => match w.cmp(&bw) {
                    Ordering::Less => (w, p.x, p.x),
                    Ordering::Equal => (bw, s0.min(p.x), s1.max(p.x)),
                    Ordering::Greater => (bw, s0, s1),
                },
            });
        }
    }
    best.ok_or(Error::EmptyCloud)
}

/// Minkowski sum of two polygons: merge the side multisets by increasing
/// slope (-infinity first) and chain them from the summed left endpoint.
pub fn minkowski_sum(a: &NewtonPolygon, b: &NewtonPolygon) -> NewtonPolygon {
    let mut sides: Vec<&Side> = a.sides.iter().chain(b.sides.iter()).collect();
    sides.retain(|s| s.length() > 0);
    sides.sort_by(|s, t| s.slope.cmp_value(&t.slope));

    let start_x = a.sides.first().map_or(0, |s| s.x0)
        + b.sides.first().map_or(0, |s| s.x0);
    let ay = a
        .sides
        .iter()
        .find_map(|s| s.y0.finite())
        .unwrap_or(0);
    let by = b
        .sides
        .iter()
        .find_map(|s| s.y0.finite())
        .unwrap_or(0);
    // ordinate where the finite part begins: sum of first finite ordinates
    let mut x = start_x;
    let mut out: Vec<Side> = vec![];
    let neg_len: i64 = sides
        .iter()
        .filter(|s| s.slope == Slope::NegInf)
        .map(|s| s.length())
        .sum();
    let mut y = ay + by;
    if neg_len > 0 {
        out.push(Side {
            slope: Slope::NegInf,
            x0: x,
            y0: Valuation::Infinite,
            x1: x + neg_len,
            y1: Valuation::Finite(y),
        });
        x += neg_len;
    }
    let mut iter = sides.into_iter().filter(|s| s.slope != Slope::NegInf).peekable();
    while let Some(s) = iter.next() {
        let mut len = s.length();
        let mut drop = match s.slope {
            Slope::Finite { h, e } => (len / e) * h,
            Slope::NegInf => unreachable!(),
        };
        while let Some(t) = iter.peek() {
            if t.slope == s.slope {
                let t = iter.next().unwrap();
                len += t.length();
                if let Slope::Finite { h, e } = t.slope {
                    drop += (t.length() / e) * h;
                }
            } else {
                break;
            }
        }
        out.push(Side {
            slope: s.slope,
            x0: x,
            y0: Valuation::Finite(y),
            x1: x + len,
            y1: Valuation::Finite(y - drop),
        });
        x += len;
        y -= drop;
    }
    if out.is_empty() && (!a.sides.is_empty() || !b.sides.is_empty()) {
        // both operands were single vertices; keep the summed vertex
        out.push(Side {
            slope: Slope::Finite { h: 0, e: 1 },
            x0: x,
            y0: Valuation::Finite(y),
            x1: x,
            y1: Valuation::Finite(y),
        });
    }
    NewtonPolygon { sides: out }
}

/// Plain-text rendering of a polygon on a character grid.
pub fn render_ascii(n: &NewtonPolygon) -> String {
    let mut vertices: Vec<(i64, Option<i64>)> = vec![];
    for (i, s) in n.sides.iter().enumerate() {
        if i == 0 {
            vertices.push((s.x0, s.y0.finite()));
        }
        vertices.push((s.x1, s.y1.finite()));
    }
    let xs: Vec<i64> = vertices.iter().map(|v| v.0).collect();
    let ys: Vec<i64> = vertices.iter().filter_map(|v| v.1).collect();
    if ys.is_empty() {
        return "(empty polygon)".into();
    }
    let (xmin, xmax) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
    let (ymin, ymax) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
    let w = (xmax - xmin + 1).max(1) as usize;
    let hgt = (ymax - ymin + 1).max(1) as usize;
    let mut grid = vec![vec![b' '; w]; hgt];
    // mark interpolated integer-abscissa heights along each side
    for s in &n.sides {
        if let (Valuation::Finite(y0), Valuation::Finite(y1)) = (s.y0, s.y1) {
            for x in s.x0..=s.x1 {
                let dx = s.x1 - s.x0;
                let y = if dx == 0 {
                    y0
                } else {
                    // round toward the segment
                    num_integer::Integer::div_floor(&(y0 * (s.x1 - x) + y1 * (x - s.x0) + dx / 2), &dx)
                };
                let row = (ymax - y) as usize;
                let col = (x - xmin) as usize;
                grid[row][col] = b'*';
            }
        } else if s.slope == Slope::NegInf {
            if let Valuation::Finite(y1) = s.y1 {
                let row = (ymax - y1) as usize;
                for x in s.x0..s.x1 {
                    let col = (x - xmin) as usize;
                    if row > 0 {
                        grid[row - 1][col] = b'^';
                    } else {
                        grid[row][col] = b'^';
                    }
                }
            }
        }
    }
    let mut out = String::new();
    for (i, row) in grid.iter().enumerate() {
        let y = ymax - i as i64;
        out.push_str(&format!("{y:>4} |"));
        out.push_str(std::str::from_utf8(row).unwrap().trim_end());
        out.push('\n');
    }
    out.push_str("     +");
    out.push_str(&"-".repeat(w));
    out.push('\n');
    out.push_str(&format!("      {}..{}\n", xmin, xmax));
    let slopes: Vec<String> = n.sides.iter().map(|s| s.slope.render()).collect();
    out.push_str(&format!("slopes: [{}]\n", slopes.join(", ")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, Option<i64>)]) -> Vec<PolyPoint> {
        v.iter()
            .map(|&(x, y)| PolyPoint {
                x,
                y: y.map_or(Valuation::Infinite, Valuation::Finite),
            })
            .collect()
    }

    #[test]
    fn hull_single_side() {
        // {(0,2), (1,4), (2,0)} -> one side of slope -1 from (0,2) to (2,0)
        let n = lower_hull(&pts(&[(0, Some(2)), (1, Some(4)), (2, Some(0))])).unwrap();
        assert_eq!(n.sides.len(), 1);
        assert_eq!(n.sides[0].slope, Slope::finite(1, 1));
        assert_eq!((n.sides[0].x0, n.sides[0].x1), (0, 2));
    }

    #[test]
    fn hull_two_sides() {
        // {(0,5), (1,2), (2,0)} -> slopes -3 then -2
        let n = lower_hull(&pts(&[(0, Some(5)), (1, Some(2)), (2, Some(0))])).unwrap();
        assert_eq!(n.slopes(), vec![Slope::finite(3, 1), Slope::finite(2, 1)]);
    }

    #[test]
    fn hull_neg_inf_prefix() {
        // zero coefficients at abscissas 0..1 give a -inf side of length 2
        let n = lower_hull(&pts(&[(0, None), (1, None), (2, Some(1)), (3, Some(0))]))
            .unwrap();
        assert_eq!(n.sides[0].slope, Slope::NegInf);
        assert_eq!(n.sides[0].length(), 2);
        assert_eq!(n.sides[1].slope, Slope::finite(1, 1));
    }

    #[test]
    fn hull_phi_power() {
        // g = phi^3 exactly: one finite vertex at (3, 3V), -inf side length 3
        let n = lower_hull(&pts(&[(0, None), (1, None), (2, None), (3, Some(6))]))
            .unwrap();
        assert_eq!(n.sides.len(), 1);
        assert_eq!(n.sides[0].slope, Slope::NegInf);
        assert_eq!(n.sides[0].length(), 3);
    }

    #[test]
    fn empty_cloud_rejected() {
        assert!(matches!(lower_hull(&[]), Err(Error::EmptyCloud)));
        assert!(matches!(
            lower_hull(&pts(&[(0, None), (1, None)])),
            Err(Error::EmptyCloud)
        ));
    }

    #[test]
    fn principal_filters_nonnegative() {
        let n = lower_hull(&pts(&[(0, Some(3)), (1, Some(0)), (2, Some(0)), (3, Some(2))]))
            .unwrap();
        let p = n.principal();
        assert_eq!(p.sides.len(), 1);
        assert_eq!(p.sides[0].slope, Slope::finite(3, 1));
    }

    #[test]
    fn lambda_component_picks_support() {
        let cloud = pts(&[(0, Some(2)), (1, Some(4)), (2, Some(0))]);
        // lambda = -1: touching line value, attained at x=0 and x=2
        let (w, s0, s1) = lambda_component(&cloud, 1, 1).unwrap();
        assert_eq!((w, s0, s1), (2, 0, 2));
        // lambda = -2: the touching line rests on the vertex (0,2)
        let (w, s0, s1) = lambda_component(&cloud, 2, 1).unwrap();
        assert_eq!((w, s0, s1), (2, 0, 0));
        // lambda = -1/2: vertex (2,0)
        let (w, s0, s1) = lambda_component(&cloud, 1, 2).unwrap();
        assert_eq!((w, s0, s1), (2, 2, 2));
    }

    #[test]
    fn minkowski_merges_sides() {
        let a = lower_hull(&pts(&[(0, Some(3)), (1, Some(1)), (2, Some(0))])).unwrap();
        let b = lower_hull(&pts(&[(0, Some(2)), (1, Some(0))])).unwrap();
        let s = minkowski_sum(&a, &b);
        // slopes -2, -2, -1 merge to a length-2 side of slope -2 then -1
        assert_eq!(
            s.slopes(),
            vec![Slope::finite(2, 1), Slope::finite(1, 1)]
        );
        assert_eq!(s.sides[0].length(), 2);
        assert_eq!(s.length(), 3);
        assert_eq!(s.sides[0].y0, Valuation::Finite(5));
        assert_eq!(s.sides[1].y1, Valuation::Finite(0));
    }

    #[test]
    fn slope_ordering() {
        let s1 = Slope::finite(3, 1);
        let s2 = Slope::finite(2, 1);
        let s3 = Slope::finite(1, 2);
        assert_eq!(s1.cmp_value(&s2), Ordering::Less);
        assert_eq!(s2.cmp_value(&s3), Ordering::Less);
        assert_eq!(Slope::NegInf.cmp_value(&s1), Ordering::Less);
    }

    #[test]
    fn render_smoke() {
        let n = lower_hull(&pts(&[(0, Some(5)), (1, Some(2)), (2, Some(0))])).unwrap();
        let s = render_ascii(&n);
        assert!(s.contains("slopes: [-3, -2]"));
    }
}
