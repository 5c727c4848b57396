//! Delaunay triangulation by incremental (Bowyer–Watson) insertion.
//!
//! The builder keeps "ghost" triangles that join every convex-hull edge to a
//! symbolic vertex at infinity, so points outside the current hull are
//! inserted with the same cavity search as interior points and no bounding
//! super-triangle is ever materialised.
//!
//! In-circle ties (cocircular points) are resolved with
//! [`incircle_perturbed`], keyed on the point index. A cocircular
//! quadrilateral is therefore always split by the diagonal that contains its
//! lowest-indexed vertex, independent of insertion order.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{
    double_area, incircle, incircle_perturbed, orient2d, Point, Sign,
};
use crate::scalar::Scalar;

const GHOST: usize = usize::MAX;
const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("need at least 3 points, got {count}")]
    TooFewPoints { count: usize },
    #[error("all points are collinear; no Delaunay triangulation exists")]
    AllCollinear,
    #[error("points {first} and {second} coincide")]
    DuplicatePoint { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("triangle {triangle} references vertex {vertex} out of range")]
    VertexOutOfRange { triangle: usize, vertex: usize },
    #[error("triangle {triangle} repeats a vertex")]
    RepeatedVertex { triangle: usize },
    #[error("triangle {triangle} is not counterclockwise")]
    NotCounterclockwise { triangle: usize },
    #[error("adjacency of triangle {triangle} is inconsistent")]
    BadAdjacency { triangle: usize },
    #[error("edge ({a}, {b}) is used by more than two triangles")]
    OverusedEdge { a: usize, b: usize },
    #[error("point {point} is not a vertex of any triangle")]
    UnusedPoint { point: usize },
    #[error("triangle areas sum to {triangles} but the convex hull has area {hull}")]
    AreaMismatch { triangles: Scalar, hull: Scalar },
}

/// Counterclockwise triple of vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub v: [usize; 3],
}

impl Triangle {
    pub fn new(v0: usize, v1: usize, v2: usize) -> Triangle {
        Triangle { v: [v0, v1, v2] }
    }

    /// Directed edge opposite vertex slot `i`.
    pub fn edge(&self, i: usize) -> (usize, usize) {
        (self.v[(i + 1) % 3], self.v[(i + 2) % 3])
    }

    /// Vertices rotated so the smallest index comes first (orientation kept).
    pub fn canonical(&self) -> Triangle {
        let k = (0..3).min_by_key(|&i| self.v[i]).unwrap();
        Triangle::new(self.v[k], self.v[(k + 1) % 3], self.v[(k + 2) % 3])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub triangles: Vec<Triangle>,
    /// `adjacency[t][i]` is the triangle across the edge opposite `v[i]`,
    /// or `None` on the convex hull.
    pub adjacency: Vec<[Option<usize>; 3]>,
}

impl Triangulation {
    pub fn triangle_points(&self, t: usize) -> [&Point; 3] {
        let [a, b, c] = self.triangles[t].v;
        [&self.points[a], &self.points[b], &self.points[c]]
    }

    /// Undirected edges as sorted index pairs, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut set: Vec<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| (0..3).map(move |i| t.edge(i)))
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.sort_unstable();
        set.dedup();
        set
    }

    /// Directed hull edges (interior on the left), one per `None` adjacency.
    pub fn hull_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (t, adj) in self.adjacency.iter().enumerate() {
            for (i, n) in adj.iter().enumerate() {
                if n.is_none() {
                    out.push(self.triangles[t].edge(i));
                }
            }
        }
        out
    }

    /// Hull vertices (collinear ones included) in counterclockwise order.
    pub fn hull_cycle(&self) -> Vec<usize> {
        let edges = self.hull_edges();
        let next: HashMap<usize, usize> = edges.iter().copied().collect();
        let Some(&(start, _)) = edges.iter().min() else {
            return Vec::new();
        };
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start && cycle.len() <= edges.len() {
            cycle.push(cur);
            cur = next[&cur];
        }
        cycle
    }

    /// Exact area of triangle `t`.
    pub fn triangle_area(&self, t: usize) -> Scalar {
        let [a, b, c] = self.triangle_points(t);
        double_area(a, b, c) / Scalar::from_int(2)
    }
}

/// Exact area of the union of all triangles, which is the convex hull area.
pub fn convex_hull_area(t: &Triangulation) -> Scalar {
    let doubled = t
        .triangles
        .iter()
        .map(|tri| {
            let [a, b, c] = tri.v;
            double_area(&t.points[a], &t.points[b], &t.points[c])
        })
        .fold(Scalar::zero(), |acc, x| acc + x);
    doubled / Scalar::from_int(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerificationResult {
    Pass,
    /// `point` lies strictly inside the circumcircle of `triangle`.
    Fail { triangle: usize, point: usize },
}

impl VerificationResult {
    pub fn passed(&self) -> bool {
        matches!(self, VerificationResult::Pass)
    }
}

/// Brute-force empty-circumcircle check over every (triangle, point) pair.
///
/// Shares no code with the builder beyond the in-circle predicate. The
/// reported witness is the lowest triangle index, then the lowest point index.
pub fn verify_delaunay(t: &Triangulation) -> Result<VerificationResult, StructureError> {
    check_triangles(t)?;
    let witness = (0..t.triangles.len()).into_par_iter().find_map_first(|ti| {
        let [a, b, c] = t.triangle_points(ti);
        let tri = t.triangles[ti];
        t.points.iter().enumerate().find_map(|(pi, p)| {
            if tri.v.contains(&pi) {
                return None;
            }
            match incircle(a, b, c, p) {
                Ok(Sign::Positive) => Some((ti, pi)),
                _ => None,
            }
        })
    });
    Ok(match witness {
        Some((triangle, point)) => VerificationResult::Fail { triangle, point },
        None => VerificationResult::Pass,
    })
}

fn check_triangles(t: &Triangulation) -> Result<(), StructureError> {
    let n = t.points.len();
    for (ti, tri) in t.triangles.iter().enumerate() {
        if let Some(&vertex) = tri.v.iter().find(|&&v| v >= n) {
            return Err(StructureError::VertexOutOfRange { triangle: ti, vertex });
        }
        let [a, b, c] = tri.v;
        if a == b || b == c || a == c {
            return Err(StructureError::RepeatedVertex { triangle: ti });
        }
        if orient2d(&t.points[a], &t.points[b], &t.points[c]) != Sign::Positive {
            return Err(StructureError::NotCounterclockwise { triangle: ti });
        }
    }
    Ok(())
}

/// Full structural validation: orientation, edge manifoldness, adjacency
/// symmetry, vertex coverage and the area partition of the convex hull.
pub fn check_structure(t: &Triangulation) -> Result<(), StructureError> {
    check_triangles(t)?;
    if t.adjacency.len() != t.triangles.len() {
        return Err(StructureError::BadAdjacency { triangle: t.adjacency.len().min(t.triangles.len()) });
    }
    let mut directed: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (ti, tri) in t.triangles.iter().enumerate() {
        for i in 0..3 {
            let e = tri.edge(i);
            if directed.insert(e, (ti, i)).is_some() {
                return Err(StructureError::OverusedEdge { a: e.0, b: e.1 });
            }
        }
    }
    for (ti, tri) in t.triangles.iter().enumerate() {
        for i in 0..3 {
            let (a, b) = tri.edge(i);
            let twin = directed.get(&(b, a)).map(|&(tj, _)| tj);
            if twin != t.adjacency[ti][i] {
                return Err(StructureError::BadAdjacency { triangle: ti });
            }
        }
    }
    let used: HashSet<usize> = t.triangles.iter().flat_map(|tri| tri.v).collect();
    if let Some(point) = (0..t.points.len()).find(|p| !used.contains(p)) {
        return Err(StructureError::UnusedPoint { point });
    }
    // Hull polygon from boundary edges; its shoelace area must match.
    let cycle = t.hull_cycle();
    let mut hull2 = Scalar::zero();
    for k in 0..cycle.len() {
        let p = &t.points[cycle[k]];
        let q = &t.points[cycle[(k + 1) % cycle.len()]];
        hull2 = hull2 + (&p.x * &q.y - &q.x * &p.y);
    }
    let hull = hull2 / Scalar::from_int(2);
    let tris = convex_hull_area(t);
    if hull != tris || cycle.len() != t.hull_edges().len() {
        return Err(StructureError::AreaMismatch { triangles: tris, hull });
    }
    // Every hull turn must be convex or straight.
    for k in 0..cycle.len() {
        let a = &t.points[cycle[k]];
        let b = &t.points[cycle[(k + 1) % cycle.len()]];
        let c = &t.points[cycle[(k + 2) % cycle.len()]];
        if orient2d(a, b, c) == Sign::Negative {
            return Err(StructureError::AreaMismatch { triangles: tris, hull });
        }
    }
    Ok(())
}

/// Delaunay triangulation of `points`, inserted in index order.
pub fn delaunay(points: &[Point]) -> Result<Triangulation, TriangulationError> {
    Ok(DelaunayBuilder::new(points.to_vec())?.triangulation())
}

#[derive(Debug, Clone)]
struct Slot {
    v: [usize; 3],
    n: [usize; 3],
    alive: bool,
}

impl Slot {
    fn is_ghost(&self) -> bool {
        self.v[2] == GHOST
    }
}

/// Incrementally maintained Delaunay triangulation.
#[derive(Debug, Clone)]
pub struct DelaunayBuilder {
    points: Vec<Point>,
    slots: Vec<Slot>,
    free: Vec<usize>,
    last: usize,
    walk_seed: u64,
}

impl DelaunayBuilder {
    /// Builds the triangulation of `points`. Fails on fewer than three points,
    /// duplicates, or a fully collinear set.
    pub fn new(points: Vec<Point>) -> Result<DelaunayBuilder, TriangulationError> {
        if points.len() < 3 {
            return Err(TriangulationError::TooFewPoints { count: points.len() });
        }
        let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(TriangulationError::DuplicatePoint { first, second: i });
            }
            seen.insert(p, i);
        }
        drop(seen);
        let k = (2..points.len())
            .find(|&k| orient2d(&points[0], &points[1], &points[k]) != Sign::Zero)
            .ok_or(TriangulationError::AllCollinear)?;
        let first = if orient2d(&points[0], &points[1], &points[k]) == Sign::Positive {
            [0, 1, k]
        } else {
            [0, k, 1]
        };
        let mut b = DelaunayBuilder {
            points,
            slots: Vec::new(),
            free: Vec::new(),
            last: 0,
            walk_seed: 0x9e37_79b9_7f4a_7c15,
        };
        b.seed_triangle(first);
        for i in 2..b.points.len() {
            if i != k {
                b.insert_index(i)?;
            }
        }
        Ok(b)
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Inserts a new point and returns its index.
    pub fn insert(&mut self, p: Point) -> Result<usize, TriangulationError> {
        self.points.push(p);
        let idx = self.points.len() - 1;
        if let Err(e) = self.insert_index(idx) {
            self.points.pop();
            return Err(e);
        }
        Ok(idx)
    }

    /// Live finite triangles, in slot order.
    pub fn triangles(&self) -> impl Iterator<Item = Triangle> + '_ {
        self.slots
            .iter()
            .filter(|s| s.alive && !s.is_ghost())
            .map(|s| Triangle { v: s.v })
    }

    pub fn triangulation(&self) -> Triangulation {
        let mut remap = vec![NIL; self.slots.len()];
        let mut triangles = Vec::new();
        for (si, s) in self.slots.iter().enumerate() {
            if s.alive && !s.is_ghost() {
                remap[si] = triangles.len();
                triangles.push(Triangle { v: s.v });
            }
        }
        let adjacency = self
            .slots
            .iter()
            .filter(|s| s.alive && !s.is_ghost())
            .map(|s| s.n.map(|nb| Some(remap[nb]).filter(|&r| r != NIL)))
            .collect();
        Triangulation { points: self.points.clone(), triangles, adjacency }
    }

    fn seed_triangle(&mut self, v: [usize; 3]) {
        let mut slots = vec![Slot { v, n: [NIL; 3], alive: true }];
        for i in 0..3 {
            let (a, b) = (v[(i + 1) % 3], v[(i + 2) % 3]);
            slots.push(Slot { v: [b, a, GHOST], n: [NIL; 3], alive: true });
        }
        let mut edges: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (si, s) in slots.iter().enumerate() {
            for i in 0..3 {
                edges.insert((s.v[(i + 1) % 3], s.v[(i + 2) % 3]), (si, i));
            }
        }
        for s in slots.iter_mut() {
            for i in 0..3 {
                let (a, b) = (s.v[(i + 1) % 3], s.v[(i + 2) % 3]);
                s.n[i] = edges[&(b, a)].0;
            }
        }
        self.slots = slots;
        self.last = 0;
    }

    fn pt(&self, i: usize) -> &Point {
        &self.points[i]
    }

    fn conflicts(&self, si: usize, p: usize) -> bool {
        let s = &self.slots[si];
        let [a, b, c] = s.v;
        if c == GHOST {
            let (pa, pb, pp) = (self.pt(a), self.pt(b), self.pt(p));
            match orient2d(pa, pb, pp) {
                Sign::Positive => true,
                Sign::Negative => false,
                Sign::Zero => strictly_between(pa, pb, pp),
            }
        } else {
            incircle_perturbed([self.pt(a), self.pt(b), self.pt(c), self.pt(p)], [a, b, c, p])
                == Sign::Positive
        }
    }

    fn next_rand(&mut self) -> u64 {
        self.walk_seed ^= self.walk_seed << 13;
        self.walk_seed ^= self.walk_seed >> 7;
        self.walk_seed ^= self.walk_seed << 17;
        self.walk_seed
    }

    /// Visibility walk towards `p`; returns a slot whose closure contains `p`
    /// or a ghost whose hull edge sees `p`.
    fn locate(&mut self, p: usize) -> usize {
        let mut t = self.last;
        if !self.slots[t].alive {
            t = self.slots.iter().position(|s| s.alive).expect("live triangle");
        }
        if self.slots[t].is_ghost() {
            t = self.slots[t].n[2];
        }
        let limit = 4 * self.slots.len() + 16;
        for _ in 0..limit {
            if self.slots[t].is_ghost() {
                return t;
            }
            let start = (self.next_rand() % 3) as usize;
            let v = self.slots[t].v;
            let step = (0..3).map(|k| (start + k) % 3).find(|&i| {
                orient2d(self.pt(v[(i + 1) % 3]), self.pt(v[(i + 2) % 3]), self.pt(p)) == Sign::Negative
            });
            match step {
                Some(i) => t = self.slots[t].n[i],
                None => return t,
            }
        }
        self.locate_scan(p)
    }

    fn locate_scan(&self, p: usize) -> usize {
        let contains = |s: &Slot| {
            !s.is_ghost()
                && (0..3).all(|i| {
                    orient2d(self.pt(s.v[(i + 1) % 3]), self.pt(s.v[(i + 2) % 3]), self.pt(p)) != Sign::Negative
                })
        };
        self.slots
            .iter()
            .position(|s| s.alive && contains(s))
            .or_else(|| (0..self.slots.len()).find(|&si| self.slots[si].alive && self.conflicts(si, p)))
            .expect("every point lies in a triangle or sees a hull edge")
    }

    fn alloc(&mut self, slot: Slot) -> usize {
        match self.free.pop() {
            Some(i) => {
                self.slots[i] = slot;
                i
            }
            None => {
                self.slots.push(slot);
                self.slots.len() - 1
            }
        }
    }

    fn insert_index(&mut self, p: usize) -> Result<(), TriangulationError> {
        let start = self.locate(p);
        if let Some(&v) = self.slots[start].v.iter().find(|&&v| v != GHOST && self.points[v] == self.points[p]) {
            return Err(TriangulationError::DuplicatePoint { first: v, second: p });
        }
        debug_assert!(self.conflicts(start, p));

        // Cavity: connected set of conflicting slots.
        let mut cavity = vec![start];
        let mut in_cavity = HashSet::from([start]);
        let mut boundary: Vec<(usize, usize, usize)> = Vec::new();
        let mut k = 0;
        while k < cavity.len() {
            let t = cavity[k];
            k += 1;
            for i in 0..3 {
                let nb = self.slots[t].n[i];
                if in_cavity.contains(&nb) {
                    continue;
                }
                if self.conflicts(nb, p) {
                    in_cavity.insert(nb);
                    cavity.push(nb);
                } else {
                    let v = self.slots[t].v;
                    boundary.push((v[(i + 1) % 3], v[(i + 2) % 3], nb));
                }
            }
        }
        for &t in &cavity {
            self.slots[t].alive = false;
            self.free.push(t);
        }

        let mut by_start: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut by_end: HashMap<usize, usize> = HashMap::with_capacity(boundary.len());
        let mut created = Vec::with_capacity(boundary.len());
        for &(a, b, outside) in &boundary {
            // New triangle (a, b, p); ghost vertex rotated into the last slot.
            let (v, n) = if a == GHOST {
                ([b, p, GHOST], [NIL, outside, NIL])
            } else if b == GHOST {
                ([p, a, GHOST], [outside, NIL, NIL])
            } else {
                ([a, b, p], [NIL, NIL, outside])
            };
            let si = self.alloc(Slot { v, n, alive: true });
            // Re-point the outside neighbour at the new slot.
            let os = &mut self.slots[outside];
            for j in 0..3 {
                let (x, y) = (os.v[(j + 1) % 3], os.v[(j + 2) % 3]);
                if x == b && y == a {
                    os.n[j] = si;
                }
            }
            by_start.insert(a, si);
            by_end.insert(b, si);
            created.push((si, a, b));
        }
        for &(si, a, b) in &created {
            // Edge (b, p) is shared with the triangle starting at b; edge
            // (p, a) with the triangle ending at a.
            let after = by_start[&b];
            let before = by_end[&a];
            let s = &mut self.slots[si];
            for j in 0..3 {
                let (x, y) = (s.v[(j + 1) % 3], s.v[(j + 2) % 3]);
                if x == b && y == p {
                    s.n[j] = after;
                } else if x == p && y == a {
                    s.n[j] = before;
                }
            }
        }
        self.last = created
            .iter()
            .map(|&(si, _, _)| si)
            .find(|&si| !self.slots[si].is_ghost())
            .unwrap_or(created[0].0);
        Ok(())
    }
}

/// `p` strictly inside segment `ab`, given that the three are collinear.
fn strictly_between(a: &Point, b: &Point, p: &Point) -> bool {
    let dot = |u: &Point, v: &Point, w: &Point| (&w.x - &u.x) * (&v.x - &u.x) + (&w.y - &u.y) * (&v.y - &u.y);
    dot(a, b, p).is_positive() && dot(b, a, p).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(raw: &[(i64, i64)]) -> Vec<Point> {
        raw.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()
    }

    #[test]
    fn single_triangle() {
        let t = delaunay(&pts(&[(0, 0), (2, 0), (0, 2)])).unwrap();
        assert_eq!(t.triangles.len(), 1);
        assert_eq!(t.adjacency, vec![[None, None, None]]);
        assert_eq!(convex_hull_area(&t), Scalar::from_int(2));
        check_structure(&t).unwrap();
    }

    #[test]
    fn cocircular_square_takes_lowest_index_diagonal() {
        let t = delaunay(&pts(&[(0, 0), (2, 0), (2, 2), (0, 2)])).unwrap();
        assert_eq!(t.triangles.len(), 2);
        assert!(t.edges().contains(&(0, 2)));
        assert_eq!(verify_delaunay(&t), Ok(VerificationResult::Pass));
        assert_eq!(convex_hull_area(&t), Scalar::from_int(4));

        // Same square, different labelling: diagonal still hits vertex 0.
        let t = delaunay(&pts(&[(2, 0), (0, 0), (2, 2), (0, 2)])).unwrap();
        assert!(t.edges().contains(&(0, 3)));
        check_structure(&t).unwrap();
    }

    #[test]
    fn collinear_input_is_rejected() {
        assert_eq!(
            delaunay(&pts(&[(0, 0), (1, 1), (2, 2), (3, 3)])),
            Err(TriangulationError::AllCollinear)
        );
    }

    #[test]
    fn too_few_and_duplicates() {
        assert_eq!(
            delaunay(&pts(&[(0, 0), (1, 1)])),
            Err(TriangulationError::TooFewPoints { count: 2 })
        );
        assert_eq!(
            delaunay(&pts(&[(0, 0), (4, 0), (0, 4), (4, 0)])),
            Err(TriangulationError::DuplicatePoint { first: 1, second: 3 })
        );
    }

    #[test]
    fn duplicate_on_incremental_insert() {
        let mut b = DelaunayBuilder::new(pts(&[(0, 0), (4, 0), (0, 4)])).unwrap();
        assert_eq!(
            b.insert(Point::from_ints(4, 0)),
            Err(TriangulationError::DuplicatePoint { first: 1, second: 3 })
        );
        assert_eq!(b.points().len(), 3);
        b.insert(Point::from_ints(3, 3)).unwrap();
        assert_eq!(b.triangulation().triangles.len(), 2);
    }

    #[test]
    fn collinear_prefix_then_off_line_point() {
        // Four collinear points before the first turn; later points on the
        // hull line extension and on a hull edge.
        let t = delaunay(&pts(&[(0, 0), (2, 0), (4, 0), (6, 0), (3, 5), (8, 0), (-2, 0), (1, 0)])).unwrap();
        check_structure(&t).unwrap();
        assert!(verify_delaunay(&t).unwrap().passed());
        // n = 8 points, all but (3,5) on the hull line plus (3,5): h = 8.
        assert_eq!(t.triangles.len(), 2 * 8 - 8 - 2);
    }

    #[test]
    fn wrong_diagonal_is_caught() {
        // Fanning the pentagon from (2,5) leaves (4,2) and (0,2) inside the
        // circumcircle of (0,0),(4,0),(2,5).
        let points = pts(&[(0, 0), (4, 0), (4, 2), (0, 2), (2, 5)]);
        let good = delaunay(&points).unwrap();
        assert!(verify_delaunay(&good).unwrap().passed());
        assert!(good.edges().contains(&(0, 2)));
        let bad = Triangulation {
            points: points.clone(),
            triangles: vec![
                Triangle::new(0, 1, 4),
                Triangle::new(0, 4, 3),
                Triangle::new(1, 2, 4),
            ],
            adjacency: vec![[Some(2), Some(1), None], [None, None, Some(0)], [None, Some(0), None]],
        };
        check_structure(&bad).unwrap();
        // Circle through (0,0),(4,0),(2,5): centre (2, 2.1), R² = 8.41;
        // (4,2) sits at distance² 4.01.
        assert_eq!(verify_delaunay(&bad), Ok(VerificationResult::Fail { triangle: 0, point: 2 }));
    }

    #[test]
    fn structure_errors() {
        let points = pts(&[(0, 0), (2, 0), (0, 2)]);
        let cw = Triangulation {
            points: points.clone(),
            triangles: vec![Triangle::new(0, 2, 1)],
            adjacency: vec![[None; 3]],
        };
        assert_eq!(verify_delaunay(&cw), Err(StructureError::NotCounterclockwise { triangle: 0 }));
        let oob = Triangulation {
            points,
            triangles: vec![Triangle::new(0, 1, 7)],
            adjacency: vec![[None; 3]],
        };
        assert_eq!(
            check_structure(&oob),
            Err(StructureError::VertexOutOfRange { triangle: 0, vertex: 7 })
        );
    }

    #[test]
    fn hull_cycle_is_counterclockwise() {
        let t = delaunay(&pts(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 1)])).unwrap();
        let cyc = t.hull_cycle();
        assert_eq!(cyc, vec![0, 1, 2, 3]);
    }
}
