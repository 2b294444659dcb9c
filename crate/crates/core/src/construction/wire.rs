//! Wires as axis-aligned polylines through square anchors.
//!
//! Each waypoint names a unit square the walker passes through. Crossing from
//! one square to the next, the shared edge gets 1 on the walker's left and 2
//! on its right. At a right turn the outer corner of the turn square is 1, at
//! a left turn it is 2; without that fill the turn square would be a 1212 or
//! trichromatic square.

use thiserror::Error;

use crate::grid::{Color, Coord, Direction, GridPoint, Region, UnitSquare};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WireError {
    #[error("a wire needs at least two waypoints")]
    TooFewWaypoints,
    #[error("segment {index} is not axis-aligned or has zero length")]
    NotAxisAligned { index: usize },
    #[error("segments {index} and {} do not meet at a right angle", index + 1)]
    NotATurn { index: usize },
    #[error("segment {index} has length {len}, below the minimum of 2")]
    ShortSegment { index: usize, len: Coord },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WirePolyline {
    waypoints: Vec<GridPoint>,
    bbox: Region,
}

/// One straight run: `from` and `to` are square anchors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub from: GridPoint,
    pub to: GridPoint,
    pub dir: Direction,
}

impl Segment {
    pub fn len(&self) -> Coord {
        (self.to.x - self.from.x).abs() + (self.to.y - self.from.y).abs()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl WirePolyline {
    pub fn new(waypoints: Vec<GridPoint>) -> Result<Self, WireError> {
        if waypoints.len() < 2 {
            return Err(WireError::TooFewWaypoints);
        }
        let mut prev: Option<Direction> = None;
        for (i, pair) in waypoints.windows(2).enumerate() {
            let d = Direction::between(pair[0], pair[1]).ok_or(WireError::NotAxisAligned { index: i })?;
            let len = pair[0].linf(pair[1]);
            if len < 2 {
                return Err(WireError::ShortSegment { index: i, len });
            }
            if let Some(p) = prev {
                if d == p || d == p.opposite() {
                    return Err(WireError::NotATurn { index: i - 1 });
                }
            }
            prev = Some(d);
        }
        let xs = waypoints.iter().map(|p| p.x);
        let ys = waypoints.iter().map(|p| p.y);
        let bbox = Region::new(
            xs.clone().min().unwrap(),
            ys.clone().min().unwrap(),
            xs.max().unwrap() + 1,
            ys.max().unwrap() + 1,
        );
        Ok(WirePolyline { waypoints, bbox })
    }

    /// Convenience for literal coordinates.
    pub fn from_coords(pts: &[(Coord, Coord)]) -> Result<Self, WireError> {
        WirePolyline::new(pts.iter().map(|&(x, y)| GridPoint::new(x, y)).collect())
    }

    pub fn waypoints(&self) -> &[GridPoint] {
        &self.waypoints
    }

    /// Bounding rectangle of every point the wire colors.
    pub fn bbox(&self) -> Region {
        self.bbox
    }

    pub fn first_square(&self) -> UnitSquare {
        UnitSquare { anchor: self.waypoints[0] }
    }

    pub fn last_square(&self) -> UnitSquare {
        UnitSquare {
            anchor: *self.waypoints.last().unwrap(),
        }
    }

    pub fn translated(&self, dx: Coord, dy: Coord) -> WirePolyline {
        WirePolyline {
            waypoints: self.waypoints.iter().map(|p| p.offset(dx, dy)).collect(),
            bbox: Region::new(self.bbox.x0 + dx, self.bbox.y0 + dy, self.bbox.x1 + dx, self.bbox.y1 + dy),
        }
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.waypoints.windows(2).map(|w| Segment {
            from: w[0],
            to: w[1],
            dir: Direction::between(w[0], w[1]).expect("validated"),
        })
    }

    /// Squares visited, in order.
    pub fn squares(&self) -> Vec<UnitSquare> {
        let mut out = vec![self.first_square()];
        for seg in self.segments() {
            let mut s = UnitSquare { anchor: seg.from };
            for _ in 0..seg.len() {
                s = s.neighbor(seg.dir);
                out.push(s);
            }
        }
        out
    }

    /// Interior waypoints with the incoming and outgoing directions.
    fn turns(&self) -> impl Iterator<Item = (GridPoint, Direction, Direction)> + '_ {
        let dirs: Vec<Direction> = self.segments().map(|s| s.dir).collect();
        (1..self.waypoints.len() - 1).map(move |k| (self.waypoints[k], dirs[k - 1], dirs[k]))
    }

    /// Color this wire gives `p`, if any. Pure arithmetic over the segments.
    pub fn color_at(&self, p: GridPoint) -> Option<Color> {
        if !self.bbox.contains(p) {
            return None;
        }
        let mut prev_dir: Option<Direction> = None;
        for w in self.waypoints.windows(2) {
            let (a, b) = (w[0], w[1]);
            let d = Direction::between(a, b).expect("validated");
            let hit = match d {
                Direction::Right if p.x > a.x && p.x <= b.x => row_hit(p.y, a.y, Color::Two, Color::One),
                Direction::Left if p.x > b.x && p.x <= a.x => row_hit(p.y, a.y, Color::One, Color::Two),
                Direction::Up if p.y > a.y && p.y <= b.y => row_hit(p.x, a.x, Color::One, Color::Two),
                Direction::Down if p.y > b.y && p.y <= a.y => row_hit(p.x, a.x, Color::Two, Color::One),
                _ => None,
            };
            if hit.is_some() {
                return hit;
            }
            if let Some(d1) = prev_dir {
                let (fp, fc) = turn_fill(a, d1, d);
                if fp == p {
                    return Some(fc);
                }
            }
            prev_dir = Some(d);
        }
        None
    }

    /// Every colored point, in travel order, found by walking the squares and
    /// painting each crossed edge.
    pub fn colored_points(&self) -> Vec<(GridPoint, Color)> {
        let mut out = Vec::new();
        let segs: Vec<Segment> = self.segments().collect();
        let mut s = self.first_square();
        for (i, seg) in segs.iter().enumerate() {
            if i > 0 {
                let fill = corner_off_both_edges(s, segs[i - 1].dir, seg.dir);
                let c = if seg.dir == segs[i - 1].dir.cw() {
                    Color::One
                } else {
                    Color::Two
                };
                out.push((fill, c));
            }
            for _ in 0..seg.len() {
                let (l, r) = s.edge(seg.dir);
                out.push((l, Color::One));
                out.push((r, Color::Two));
                s = s.neighbor(seg.dir);
            }
        }
        out
    }

    /// The ordered 1-track and 2-track.
    pub fn tracks(&self) -> (Vec<GridPoint>, Vec<GridPoint>) {
        let mut ones: Vec<GridPoint> = Vec::new();
        let mut twos: Vec<GridPoint> = Vec::new();
        let push = |v: &mut Vec<GridPoint>, p: GridPoint| {
            if v.last() != Some(&p) {
                v.push(p);
            }
        };
        let segs: Vec<Segment> = self.segments().collect();
        let mut s = self.first_square();
        for (i, seg) in segs.iter().enumerate() {
            if i > 0 {
                let fill = corner_off_both_edges(s, segs[i - 1].dir, seg.dir);
                if seg.dir == segs[i - 1].dir.cw() {
                    push(&mut ones, fill);
                } else {
                    push(&mut twos, fill);
                }
            }
            for _ in 0..seg.len() {
                let (l, r) = s.edge(seg.dir);
                push(&mut ones, l);
                push(&mut twos, r);
                s = s.neighbor(seg.dir);
            }
        }
        (ones, twos)
    }

    /// Number of squares visited.
    pub fn square_count(&self) -> u128 {
        1 + self.segments().map(|s| s.len() as u128).sum::<u128>()
    }

    /// Fill corners of the interior turns, with their colors.
    pub fn fills(&self) -> Vec<(GridPoint, Color)> {
        self.turns().map(|(w, d1, d2)| turn_fill(w, d1, d2)).collect()
    }
}

/// Free-function form of [`WirePolyline::color_at`].
pub fn wire_color_at(w: &WirePolyline, p: GridPoint) -> Option<Color> {
    w.color_at(p)
}

/// A gate line at offset `line` colors `line` with `at` and `line + 1` with `above`.
fn row_hit(v: Coord, line: Coord, at: Color, above: Color) -> Option<Color> {
    if v == line {
        Some(at)
    } else if v == line + 1 {
        Some(above)
    } else {
        None
    }
}

/// Corner of the turn square on side `d1` and on the side opposite `d2`.
fn turn_fill(w: GridPoint, d1: Direction, d2: Direction) -> (GridPoint, Color) {
    let side = |d: Direction| match d {
        Direction::Up => (None, Some(w.y + 1)),
        Direction::Down => (None, Some(w.y)),
        Direction::Right => (Some(w.x + 1), None),
        Direction::Left => (Some(w.x), None),
    };
    let (x1, y1) = side(d1);
    let (x2, y2) = side(d2.opposite());
    let p = GridPoint::new(x1.or(x2).unwrap(), y1.or(y2).unwrap());
    let c = if d2 == d1.cw() { Color::One } else { Color::Two };
    (p, c)
}

/// The corner of turn square `s` on neither the entry edge nor the exit edge.
fn corner_off_both_edges(s: UnitSquare, d_in: Direction, d_out: Direction) -> GridPoint {
    let c = s.corners();
    let (a, b) = UnitSquare::entry_edge(d_in);
    let (e, f) = UnitSquare::exit_edge(d_out);
    let i = (0..4).find(|&i| i != a && i != b && i != e && i != f).expect("perpendicular edges share a corner");
    c[i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashMap;

    pub(crate) fn sample_wire() -> WirePolyline {
        WirePolyline::from_coords(&[(1, -1), (1, 5), (4, 5), (4, 2), (7, 2)]).unwrap()
    }

    type Points = Vec<(Coord, Coord)>;

    /// Hand transcription of a bent wire: 1 at the grey points, 2 at the black.
    fn sample_wire_points() -> (Points, Points) {
        let grey = vec![
            (1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 6), (3, 6), (4, 6), (5, 6),
            (5, 5), (5, 4), (5, 3), (6, 3), (7, 3),
        ];
        let black = vec![
            (2, 0), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 5), (4, 5), (4, 4), (4, 3), (4, 2),
            (5, 2), (6, 2), (7, 2),
        ];
        (grey, black)
    }

    #[test]
    fn sample_wire_reproduced_on_window() {
        let w = sample_wire();
        let (grey, black) = sample_wire_points();
        for y in 0..=8 {
            for x in 0..=8 {
                let want = if grey.contains(&(x, y)) {
                    Some(Color::One)
                } else if black.contains(&(x, y)) {
                    Some(Color::Two)
                } else {
                    None
                };
                assert_eq!(w.color_at(GridPoint::new(x, y)), want, "({x},{y})");
            }
        }
    }

    #[test]
    fn straight_up_wire() {
        let w = WirePolyline::from_coords(&[(3, 0), (3, 6)]).unwrap();
        assert_eq!(w.color_at(GridPoint::new(3, 2)), Some(Color::One));
        assert_eq!(w.color_at(GridPoint::new(4, 2)), Some(Color::Two));
        assert_eq!(w.color_at(GridPoint::new(5, 2)), None);
        assert_eq!(w.color_at(GridPoint::new(40, 40)), None);
    }

    #[test]
    fn rejects_bad_geometry() {
        assert_eq!(WirePolyline::from_coords(&[(0, 0)]), Err(WireError::TooFewWaypoints));
        assert_eq!(
            WirePolyline::from_coords(&[(0, 0), (2, 2)]),
            Err(WireError::NotAxisAligned { index: 0 })
        );
        assert_eq!(
            WirePolyline::from_coords(&[(0, 0), (0, 1)]),
            Err(WireError::ShortSegment { index: 0, len: 1 })
        );
        assert_eq!(
            WirePolyline::from_coords(&[(0, 0), (0, 4), (0, 8)]),
            Err(WireError::NotATurn { index: 0 })
        );
        assert_eq!(
            WirePolyline::from_coords(&[(0, 0), (0, 4), (0, 2)]),
            Err(WireError::NotATurn { index: 0 })
        );
    }

    #[test]
    fn tracks_are_unit_step_paths() {
        let (ones, twos) = sample_wire().tracks();
        for t in [&ones, &twos] {
            for pair in t.windows(2) {
                assert_eq!((pair[0].x - pair[1].x).abs() + (pair[0].y - pair[1].y).abs(), 1);
            }
        }
        assert_eq!(ones.first(), Some(&GridPoint::new(1, 0)));
        assert_eq!(twos.last(), Some(&GridPoint::new(7, 2)));
    }

    fn arb_wire() -> impl Strategy<Value = WirePolyline> {
        (
            -20i128..20,
            -20i128..20,
            0usize..4,
            proptest::collection::vec((2i128..7, any::<bool>()), 1..6),
        )
            .prop_map(|(x, y, d0, legs)| {
                let mut d = Direction::ALL[d0];
                let mut p = GridPoint::new(x, y);
                let mut pts = vec![p];
                for (i, (len, right)) in legs.into_iter().enumerate() {
                    if i > 0 {
                        d = if right { d.cw() } else { d.ccw() };
                    }
                    let (dx, dy) = d.delta();
                    p = p.offset(dx * len, dy * len);
                    pts.push(p);
                }
                WirePolyline::new(pts).unwrap()
            })
    }

    proptest! {
        #[test]
        fn arithmetic_and_painted_colors_agree(w in arb_wire()) {
            let painted = w.colored_points();
            let mut seen: HashMap<GridPoint, Color> = HashMap::new();
            let mut self_overlap = false;
            for &(p, c) in &painted {
                if let Some(&old) = seen.get(&p) {
                    if old != c { self_overlap = true; }
                }
                seen.insert(p, c);
            }
            // Self-crossing polylines may paint one point twice; skip those.
            prop_assume!(!self_overlap);
            for p in w.bbox().points() {
                prop_assert_eq!(w.color_at(p), seen.get(&p).copied(), "{}", p);
            }
            prop_assert!(painted.iter().all(|(p, _)| w.bbox().contains(*p)));
        }

        #[test]
        fn translation_commutes_with_color(w in arb_wire(), dx in -9i128..9, dy in -9i128..9, px in -30i128..30, py in -30i128..30) {
            let p = GridPoint::new(px, py);
            prop_assert_eq!(w.translated(dx, dy).color_at(p.offset(dx, dy)), w.color_at(p));
        }
    }
}
