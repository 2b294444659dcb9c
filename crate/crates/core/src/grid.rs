//! Lattice points, colors, unit squares and triangles, and the two colored
//! domains: the square Brouwer grid and the triangular Sperner grid.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Grid coordinates. 128 bits cover every domain this crate can build.
pub type Coord = i128;

/// Largest size parameter accepted anywhere in the crate.
pub const MAX_SIZE_PARAM: u32 = 120;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("point ({x}, {y}) is outside the domain of size parameter {m}")]
    OutOfDomain { x: Coord, y: Coord, m: u32 },
    #[error("size parameter {0} is out of range")]
    BadSizeParam(u32),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("grid has {got} cells but {expected} were expected")]
    SizeMismatch { expected: usize, got: usize },
    #[error("region of {cells} cells exceeds the limit of {limit}")]
    RegionTooLarge { cells: u128, limit: u128 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub x: Coord,
    pub y: Coord,
}

impl GridPoint {
    pub const fn new(x: Coord, y: Coord) -> Self {
        GridPoint { x, y }
    }

    pub fn step(self, d: Direction) -> Self {
        let (dx, dy) = d.delta();
        GridPoint::new(self.x + dx, self.y + dy)
    }

    pub fn offset(self, dx: Coord, dy: Coord) -> Self {
        GridPoint::new(self.x + dx, self.y + dy)
    }

    pub fn linf(self, other: GridPoint) -> Coord {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum Color {
    #[default]
    Zero = 0,
    One = 1,
    Two = 2,
}

impl Color {
    pub const ALL: [Color; 3] = [Color::Zero, Color::One, Color::Two];

    pub fn from_digit(c: char) -> Option<Color> {
        match c {
            '0' => Some(Color::Zero),
            '1' => Some(Color::One),
            '2' => Some(Color::Two),
            _ => None,
        }
    }

    pub fn digit(self) -> char {
        (b'0' + self as u8) as char
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", *self as u8)
    }
}

/// True iff the colors include all of 0, 1 and 2.
pub fn is_trichromatic(colors: &[Color]) -> bool {
    colors.iter().fold(0u8, |acc, c| acc | c.bit()) == 0b111
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Up,
    Right,
    Down,
    Left,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Right, Direction::Down, Direction::Left];

    pub fn cw(self) -> Direction {
        match self {
            Direction::Up => Direction::Right,
            Direction::Right => Direction::Down,
            Direction::Down => Direction::Left,
            Direction::Left => Direction::Up,
        }
    }

    pub fn ccw(self) -> Direction {
        self.cw().opposite()
    }

    pub fn opposite(self) -> Direction {
        self.cw().cw()
    }

    pub fn delta(self) -> (Coord, Coord) {
        match self {
            Direction::Up => (0, 1),
            Direction::Right => (1, 0),
            Direction::Down => (0, -1),
            Direction::Left => (-1, 0),
        }
    }

    /// Direction of travel from `a` to `b` when they differ in exactly one coordinate.
    pub fn between(a: GridPoint, b: GridPoint) -> Option<Direction> {
        match ((b.x - a.x).signum(), (b.y - a.y).signum()) {
            (0, 1) => Some(Direction::Up),
            (1, 0) => Some(Direction::Right),
            (0, -1) => Some(Direction::Down),
            (-1, 0) => Some(Direction::Left),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Up => "up",
            Direction::Right => "right",
            Direction::Down => "down",
            Direction::Left => "left",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Direction::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown direction {s:?}"))
    }
}

/// Corner indices of a unit square, counterclockwise from the lower left.
pub const BL: usize = 0;
pub const BR: usize = 1;
pub const TR: usize = 2;
pub const TL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSquare {
    pub anchor: GridPoint,
}

impl UnitSquare {
    pub const fn new(x: Coord, y: Coord) -> Self {
        UnitSquare {
            anchor: GridPoint::new(x, y),
        }
    }

    pub fn corners(self) -> [GridPoint; 4] {
        let a = self.anchor;
        [a, a.offset(1, 0), a.offset(1, 1), a.offset(0, 1)]
    }

    pub fn neighbor(self, d: Direction) -> UnitSquare {
        UnitSquare {
            anchor: self.anchor.step(d),
        }
    }

    /// Corner indices `(left, right)` of the edge crossed when leaving in
    /// direction `d`, as seen looking outward.
    pub const fn exit_edge(d: Direction) -> (usize, usize) {
        match d {
            Direction::Up => (TL, TR),
            Direction::Right => (TR, BR),
            Direction::Down => (BR, BL),
            Direction::Left => (BL, TL),
        }
    }

    /// Corner indices `(left, right)` of the edge crossed when entering while
    /// moving in direction `d`.
    pub const fn entry_edge(d: Direction) -> (usize, usize) {
        match d {
            Direction::Up => (BL, BR),
            Direction::Right => (TL, BL),
            Direction::Down => (TR, TL),
            Direction::Left => (BR, TR),
        }
    }

    /// The exit edge as points `(left, right)`.
    pub fn edge(self, d: Direction) -> (GridPoint, GridPoint) {
        let c = self.corners();
        let (l, r) = UnitSquare::exit_edge(d);
        (c[l], c[r])
    }
}

impl fmt::Display for UnitSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "square {}", self.anchor)
    }
}

/// Opposite corners agree, adjacent corners differ, and only 1 and 2 occur.
pub fn is_1212(c: &[Color; 4]) -> bool {
    c[BL] == c[TR] && c[BR] == c[TL] && c[BL] != c[BR] && c[BL] != Color::Zero && c[BR] != Color::Zero
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriangleKind {
    /// Vertices (x,y), (x+1,y), (x,y+1).
    Lower,
    /// Vertices (x+1,y), (x+1,y+1), (x,y+1).
    Upper,
}

impl TriangleKind {
    pub fn name(self) -> &'static str {
        match self {
            TriangleKind::Lower => "lower",
            TriangleKind::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub anchor: GridPoint,
    pub kind: TriangleKind,
}

impl Triangle {
    pub const fn lower(x: Coord, y: Coord) -> Self {
        Triangle {
            anchor: GridPoint::new(x, y),
            kind: TriangleKind::Lower,
        }
    }

    pub const fn upper(x: Coord, y: Coord) -> Self {
        Triangle {
            anchor: GridPoint::new(x, y),
            kind: TriangleKind::Upper,
        }
    }

    /// Vertices in counterclockwise order.
    pub fn vertices(self) -> [GridPoint; 3] {
        let a = self.anchor;
        match self.kind {
            TriangleKind::Lower => [a, a.offset(1, 0), a.offset(0, 1)],
            TriangleKind::Upper => [a.offset(1, 0), a.offset(1, 1), a.offset(0, 1)],
        }
    }

    /// The triangle across edge `i`, which joins vertex `i` to vertex `i+1`.
    pub fn across(self, edge: usize) -> Triangle {
        let (x, y) = (self.anchor.x, self.anchor.y);
        match (self.kind, edge) {
            (TriangleKind::Lower, 0) => Triangle::upper(x, y - 1),
            (TriangleKind::Lower, 1) => Triangle::upper(x, y),
            (TriangleKind::Lower, 2) => Triangle::upper(x - 1, y),
            (TriangleKind::Upper, 0) => Triangle::lower(x + 1, y),
            (TriangleKind::Upper, 1) => Triangle::lower(x, y + 1),
            (TriangleKind::Upper, 2) => Triangle::lower(x, y),
            _ => panic!("triangle edge index {edge} out of range"),
        }
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} triangle {}", self.kind.name(), self.anchor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainShape {
    /// `0 <= x, y < 2^m`
    Square,
    /// `x, y >= 0`, `x + y < 2^m`
    Triangular,
}

/// A colored domain of side `2^m`, queried point by point.
pub trait Coloring: Sync {
    fn size_param(&self) -> u32;

    fn shape(&self) -> DomainShape;

    /// Color of `p`. Callers keep `p` inside the domain; implementations
    /// may answer anything for points outside it.
    fn color(&self, p: GridPoint) -> Color;

    fn side(&self) -> Coord {
        1 << self.size_param()
    }

    fn in_domain(&self, p: GridPoint) -> bool {
        let s = self.side();
        match self.shape() {
            DomainShape::Square => p.x >= 0 && p.y >= 0 && p.x < s && p.y < s,
            DomainShape::Triangular => p.x >= 0 && p.y >= 0 && p.x + p.y < s,
        }
    }

    fn color_checked(&self, p: GridPoint) -> Result<Color, GridError> {
        if self.in_domain(p) {
            Ok(self.color(p))
        } else {
            Err(GridError::OutOfDomain {
                x: p.x,
                y: p.y,
                m: self.size_param(),
            })
        }
    }

    /// Color with off-domain points read as 0.
    fn color_or_zero(&self, p: GridPoint) -> Color {
        if self.in_domain(p) {
            self.color(p)
        } else {
            Color::Zero
        }
    }
}

/// Marker for square-domain colorings subject to the Brouwer boundary rule.
pub trait BrouwerInstance: Coloring {}

/// Marker for triangular-domain colorings subject to the Sperner boundary rule.
pub trait SpernerInstance: Coloring {}

macro_rules! forward_coloring {
    ($($ptr:ty => $($extra:ident)?),*) => {$(
        impl<T: Coloring + ?Sized $(+ $extra)?> Coloring for $ptr {
            fn size_param(&self) -> u32 { (**self).size_param() }
            fn shape(&self) -> DomainShape { (**self).shape() }
            fn color(&self, p: GridPoint) -> Color { (**self).color(p) }
            fn side(&self) -> Coord { (**self).side() }
            fn in_domain(&self, p: GridPoint) -> bool { (**self).in_domain(p) }
        }
        impl<T: BrouwerInstance + ?Sized $(+ $extra)?> BrouwerInstance for $ptr {}
        impl<T: SpernerInstance + ?Sized $(+ $extra)?> SpernerInstance for $ptr {}
    )*};
}

forward_coloring!(&T =>, Box<T> =>, Arc<T> => Send);

/// Color forced by the Brouwer boundary rule, or `None` for interior points.
pub fn boundary_color_brouwer(m: u32, p: GridPoint) -> Result<Option<Color>, GridError> {
    if m == 0 || m > MAX_SIZE_PARAM {
        return Err(GridError::BadSizeParam(m));
    }
    let last: Coord = (1 << m) - 1;
    if p.x < 0 || p.y < 0 || p.x > last || p.y > last {
        return Err(GridError::OutOfDomain { x: p.x, y: p.y, m });
    }
    Ok(if p.x == 0 {
        Some(Color::One)
    } else if p.y == 0 {
        Some(Color::Two)
    } else if p.x == last || p.y == last {
        Some(Color::Zero)
    } else {
        None
    })
}

/// Whether color `c` at `p` is allowed by the Sperner boundary rule.
pub fn sperner_boundary_allows(m: u32, p: GridPoint, c: Color) -> bool {
    let s: Coord = 1 << m;
    !(p.x == 0 && c == Color::Zero || p.y == 0 && c == Color::One || p.x + p.y == s - 1 && c == Color::Two)
}

pub fn square_in_domain<I: Coloring + ?Sized>(inst: &I, s: UnitSquare) -> bool {
    inst.in_domain(s.anchor) && inst.in_domain(s.anchor.offset(1, 1))
}

pub fn square_colors<I: Coloring + ?Sized>(inst: &I, s: UnitSquare) -> [Color; 4] {
    s.corners().map(|p| inst.color(p))
}

pub fn trichromatic_square<I: BrouwerInstance + ?Sized>(inst: &I, s: UnitSquare) -> Result<bool, GridError> {
    if !square_in_domain(inst, s) {
        return Err(GridError::OutOfDomain {
            x: s.anchor.x,
            y: s.anchor.y,
            m: inst.size_param(),
        });
    }
    Ok(is_trichromatic(&square_colors(inst, s)))
}

pub fn triangle_in_domain<I: Coloring + ?Sized>(inst: &I, t: Triangle) -> bool {
    t.vertices().iter().all(|&v| inst.in_domain(v))
}

pub fn triangle_colors<I: Coloring + ?Sized>(inst: &I, t: Triangle) -> [Color; 3] {
    t.vertices().map(|p| inst.color(p))
}

pub fn trichromatic_triangle<I: SpernerInstance + ?Sized>(inst: &I, t: Triangle) -> Result<bool, GridError> {
    if !triangle_in_domain(inst, t) {
        return Err(GridError::OutOfDomain {
            x: t.anchor.x,
            y: t.anchor.y,
            m: inst.size_param(),
        });
    }
    Ok(is_trichromatic(&triangle_colors(inst, t)))
}

/// Inclusive rectangle of grid points; empty when a max is below its min.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Region {
    pub x0: Coord,
    pub y0: Coord,
    pub x1: Coord,
    pub y1: Coord,
}

impl Region {
    pub const fn new(x0: Coord, y0: Coord, x1: Coord, y1: Coord) -> Self {
        Region { x0, y0, x1, y1 }
    }

    pub fn empty() -> Self {
        Region::new(0, 0, -1, -1)
    }

    /// The full `2^m` by `2^m` square.
    pub fn full(m: u32) -> Self {
        let last = (1 << m) - 1;
        Region::new(0, 0, last, last)
    }

    pub fn is_empty(&self) -> bool {
        self.x1 < self.x0 || self.y1 < self.y0
    }

    pub fn width(&self) -> Coord {
        if self.is_empty() {
            0
        } else {
            self.x1 - self.x0 + 1
        }
    }

    pub fn height(&self) -> Coord {
        if self.is_empty() {
            0
        } else {
            self.y1 - self.y0 + 1
        }
    }

    pub fn area(&self) -> u128 {
        self.width() as u128 * self.height() as u128
    }

    pub fn contains(&self, p: GridPoint) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    /// Row-major from the bottom row.
    pub fn points(&self) -> impl Iterator<Item = GridPoint> + '_ {
        let r = *self;
        (r.y0..=r.y1).flat_map(move |y| (r.x0..=r.x1).map(move |x| GridPoint::new(x, y)))
    }

    pub fn intersect(&self, other: &Region) -> Region {
        Region::new(
            self.x0.max(other.x0),
            self.y0.max(other.y0),
            self.x1.min(other.x1),
            self.y1.min(other.y1),
        )
    }
}

impl FromStr for Region {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(format!("expected x0,y0,x1,y1 but got {s:?}"));
        }
        let mut v = [0 as Coord; 4];
        for (slot, part) in v.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| format!("bad coordinate {part:?}"))?;
        }
        Ok(Region::new(v[0], v[1], v[2], v[3]))
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.x0, self.y0, self.x1, self.y1)
    }
}

/// Materialized colors over a rectangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DenseGrid {
    region: Region,
    cells: Vec<Color>,
}

impl DenseGrid {
    pub fn filled(region: Region, c: Color) -> Self {
        DenseGrid {
            region,
            cells: vec![c; region.area() as usize],
        }
    }

    pub fn from_cells(region: Region, cells: Vec<Color>) -> Result<Self, GridError> {
        let expected = region.area() as usize;
        if cells.len() != expected {
            return Err(GridError::SizeMismatch {
                expected,
                got: cells.len(),
            });
        }
        Ok(DenseGrid { region, cells })
    }

    /// Rows given from the top down, as in the text format.
    pub fn from_rows(x0: Coord, y0: Coord, rows: &[&str]) -> Result<Self, GridError> {
        let h = rows.len() as Coord;
        let w = rows.first().map_or(0, |r| r.chars().count()) as Coord;
        let region = Region::new(x0, y0, x0 + w - 1, y0 + h - 1);
        let mut grid = DenseGrid::filled(region, Color::Zero);
        for (i, row) in rows.iter().enumerate() {
            let y = y0 + h - 1 - i as Coord;
            let chars: Vec<char> = row.chars().collect();
            if chars.len() as Coord != w {
                return Err(GridError::Parse {
                    line: i + 1,
                    message: format!("row has {} cells, expected {w}", chars.len()),
                });
            }
            for (j, ch) in chars.into_iter().enumerate() {
                let c = Color::from_digit(ch).ok_or_else(|| GridError::Parse {
                    line: i + 1,
                    message: format!("invalid color {ch:?}"),
                })?;
                grid.set(GridPoint::new(x0 + j as Coord, y), c);
            }
        }
        Ok(grid)
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    fn index(&self, p: GridPoint) -> Option<usize> {
        if !self.region.contains(p) {
            return None;
        }
        let w = self.region.width();
        Some(((p.y - self.region.y0) * w + (p.x - self.region.x0)) as usize)
    }

    pub fn get(&self, p: GridPoint) -> Option<Color> {
        self.index(p).map(|i| self.cells[i])
    }

    /// Panics when `p` is outside the grid.
    pub fn set(&mut self, p: GridPoint, c: Color) {
        let i = self.index(p).unwrap_or_else(|| panic!("{p} outside {:?}", self.region));
        self.cells[i] = c;
    }

    /// Points where the two grids differ, in row-major order.
    pub fn diff(&self, other: &DenseGrid) -> Vec<GridPoint> {
        self.region
            .points()
            .filter(|&p| self.get(p) != other.get(p))
            .collect()
    }

    /// FNV-1a over region and cells; stable across runs and platforms.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        };
        for v in [self.region.x0, self.region.y0, self.region.x1, self.region.y1] {
            v.to_le_bytes().into_iter().for_each(&mut eat);
        }
        self.cells.iter().for_each(|&c| eat(c as u8));
        h
    }
}

fn check_param(m: u32) -> Result<(), GridError> {
    if m == 0 || m > MAX_SIZE_PARAM {
        Err(GridError::BadSizeParam(m))
    } else {
        Ok(())
    }
}

/// A Brouwer instance stored cell by cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseBrouwer {
    m: u32,
    grid: DenseGrid,
}

impl DenseBrouwer {
    pub fn new(m: u32, grid: DenseGrid) -> Result<Self, GridError> {
        check_param(m)?;
        if m > 16 || grid.region() != Region::full(m) {
            return Err(GridError::SizeMismatch {
                expected: if m > 16 { 0 } else { Region::full(m).area() as usize },
                got: grid.cells().len(),
            });
        }
        Ok(DenseBrouwer { m, grid })
    }

    /// Rows from the top down.
    pub fn from_rows(m: u32, rows: &[&str]) -> Result<Self, GridError> {
        DenseBrouwer::new(m, DenseGrid::from_rows(0, 0, rows)?)
    }

    pub fn grid(&self) -> &DenseGrid {
        &self.grid
    }

    pub fn set(&mut self, p: GridPoint, c: Color) {
        self.grid.set(p, c);
    }

    /// Border points that disagree with the boundary rule.
    pub fn boundary_violations(&self) -> Vec<GridPoint> {
        self.grid
            .region()
            .points()
            .filter(|&p| {
                matches!(boundary_color_brouwer(self.m, p), Ok(Some(c)) if c != self.color(p))
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let s = self.side();
        let mut out = format!("brouwer {}\n", self.m);
        for y in (0..s).rev() {
            out.extend((0..s).map(|x| self.color(GridPoint::new(x, y)).digit()));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, GridError> {
        let (m, rows) = parse_header(text, "brouwer")?;
        let side = 1usize << m;
        if rows.len() != side {
            return Err(GridError::SizeMismatch {
                expected: side,
                got: rows.len(),
            });
        }
        DenseBrouwer::from_rows(m, &rows)
    }
}

impl Coloring for DenseBrouwer {
    fn size_param(&self) -> u32 {
        self.m
    }

    fn shape(&self) -> DomainShape {
        DomainShape::Square
    }

    fn color(&self, p: GridPoint) -> Color {
        self.grid.get(p).unwrap_or(Color::Zero)
    }
}

impl BrouwerInstance for DenseBrouwer {}

/// A Sperner instance stored cell by cell; cells with `x + y >= 2^m` are unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseSperner {
    m: u32,
    grid: DenseGrid,
}

impl DenseSperner {
    pub fn new(m: u32, grid: DenseGrid) -> Result<Self, GridError> {
        check_param(m)?;
        if m > 16 || grid.region() != Region::full(m) {
            return Err(GridError::SizeMismatch {
                expected: if m > 16 { 0 } else { Region::full(m).area() as usize },
                got: grid.cells().len(),
            });
        }
        Ok(DenseSperner { m, grid })
    }

    pub fn grid(&self) -> &DenseGrid {
        &self.grid
    }

    pub fn set(&mut self, p: GridPoint, c: Color) {
        self.grid.set(p, c);
    }

    pub fn boundary_violations(&self) -> Vec<GridPoint> {
        self.grid
            .region()
            .points()
            .filter(|&p| self.in_domain(p) && !sperner_boundary_allows(self.m, p, self.color(p)))
            .collect()
    }

    /// Row `y` holds the `2^m - y` points of the triangular domain.
    pub fn to_text(&self) -> String {
        let s = self.side();
        let mut out = format!("sperner {}\n", self.m);
        for y in (0..s).rev() {
            out.extend((0..s - y).map(|x| self.color(GridPoint::new(x, y)).digit()));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, GridError> {
        let (m, rows) = parse_header(text, "sperner")?;
        let side = 1usize << m;
        if rows.len() != side {
            return Err(GridError::SizeMismatch {
                expected: side,
                got: rows.len(),
            });
        }
        let mut grid = DenseGrid::filled(Region::full(m), Color::Zero);
        for (i, row) in rows.iter().enumerate() {
            let y = (side - 1 - i) as Coord;
            let want = side - y as usize;
            if row.chars().count() != want {
                return Err(GridError::Parse {
                    line: i + 2,
                    message: format!("row has {} cells, expected {want}", row.chars().count()),
                });
            }
            for (x, ch) in row.chars().enumerate() {
                let c = Color::from_digit(ch).ok_or_else(|| GridError::Parse {
                    line: i + 2,
                    message: format!("invalid color {ch:?}"),
                })?;
                grid.set(GridPoint::new(x as Coord, y), c);
            }
        }
        DenseSperner::new(m, grid)
    }
}

impl Coloring for DenseSperner {
    fn size_param(&self) -> u32 {
        self.m
    }

    fn shape(&self) -> DomainShape {
        DomainShape::Triangular
    }

    fn color(&self, p: GridPoint) -> Color {
        self.grid.get(p).unwrap_or(Color::Zero)
    }
}

impl SpernerInstance for DenseSperner {}

fn parse_header<'a>(text: &'a str, kind: &str) -> Result<(u32, Vec<&'a str>), GridError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(GridError::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some(kind) {
        return Err(GridError::Parse {
            line: 1,
            message: format!("expected header `{kind} <m>`"),
        });
    }
    let m: u32 = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| GridError::Parse {
            line: 1,
            message: "missing size parameter".into(),
        })?;
    if m == 0 || m > 16 {
        return Err(GridError::BadSizeParam(m));
    }
    Ok((m, lines.filter(|l| !l.trim().is_empty()).collect()))
}

/// Wraps any square-domain function as a Brouwer instance.
pub struct FnBrouwer<F> {
    m: u32,
    f: F,
}

impl<F: Fn(GridPoint) -> Color + Sync> FnBrouwer<F> {
    pub fn new(m: u32, f: F) -> Self {
        FnBrouwer { m, f }
    }
}

impl<F: Fn(GridPoint) -> Color + Sync> Coloring for FnBrouwer<F> {
    fn size_param(&self) -> u32 {
        self.m
    }

    fn shape(&self) -> DomainShape {
        DomainShape::Square
    }

    fn color(&self, p: GridPoint) -> Color {
        (self.f)(p)
    }
}

impl<F: Fn(GridPoint) -> Color + Sync> BrouwerInstance for FnBrouwer<F> {}

/// The smallest valid instance of size `m`: boundary colors, interior 0.
pub fn blank_brouwer(m: u32) -> FnBrouwer<impl Fn(GridPoint) -> Color + Sync> {
    FnBrouwer::new(m, move |p| {
        boundary_color_brouwer(m, p).ok().flatten().unwrap_or(Color::Zero)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample_grid() -> DenseBrouwer {
        DenseBrouwer::from_rows(2, &["1000", "1120", "1210", "1222"]).unwrap()
    }

    #[test]
    fn boundary_rule_examples() {
        let b = |x, y| boundary_color_brouwer(3, GridPoint::new(x, y)).unwrap();
        assert_eq!(b(0, 5), Some(Color::One));
        assert_eq!(b(3, 0), Some(Color::Two));
        assert_eq!(b(0, 0), Some(Color::One));
        assert_eq!(b(7, 4), Some(Color::Zero));
        assert_eq!(b(4, 4), None);
        assert_eq!(b(0, 7), Some(Color::One));
        assert_eq!(b(7, 0), Some(Color::Two));
        assert!(boundary_color_brouwer(3, GridPoint::new(8, 0)).is_err());
        assert!(boundary_color_brouwer(3, GridPoint::new(-1, 0)).is_err());
    }

    #[test]
    fn trichromatic_examples() {
        use Color::*;
        assert!(is_trichromatic(&[One, Two, Zero, Zero]));
        assert!(!is_trichromatic(&[One, Two, One, Two]));
        assert!(is_trichromatic(&[Zero, One, Two]));
        assert!(!is_trichromatic(&[One, One, Two]));
    }

    #[test]
    fn sample_grid_solutions() {
        let inst = sample_grid();
        assert!(inst.boundary_violations().is_empty());
        let sols: Vec<_> = (0..3)
            .flat_map(|y| (0..3).map(move |x| UnitSquare::new(x, y)))
            .filter(|&s| trichromatic_square(&inst, s).unwrap())
            .collect();
        // The walk ends at (2,0); (2,1) and (1,2) are trichromatic too.
        assert_eq!(sols, vec![UnitSquare::new(2, 0), UnitSquare::new(2, 1), UnitSquare::new(1, 2)]);
        assert!(trichromatic_square(&inst, UnitSquare::new(3, 0)).is_err());
    }

    #[test]
    fn text_round_trip() {
        let inst = sample_grid();
        let text = inst.to_text();
        assert_eq!(text, "brouwer 2\n1000\n1120\n1210\n1222\n");
        assert_eq!(DenseBrouwer::parse_text(&text).unwrap(), inst);
        assert!(DenseBrouwer::parse_text("brouwer 2\n1000\n").is_err());
        assert!(DenseBrouwer::parse_text("sperner 2\n").is_err());
    }

    #[test]
    fn sperner_text_round_trip() {
        let mut grid = DenseGrid::filled(Region::full(2), Color::Zero);
        for y in 1..4 {
            grid.set(GridPoint::new(0, y), Color::One);
        }
        grid.set(GridPoint::new(0, 0), Color::Two);
        grid.set(GridPoint::new(1, 0), Color::Two);
        grid.set(GridPoint::new(1, 1), Color::Two);
        let inst = DenseSperner::new(2, grid).unwrap();
        assert!(inst.boundary_violations().is_empty());
        let text = inst.to_text();
        assert_eq!(text, "sperner 2\n1\n10\n120\n2200\n");
        assert_eq!(DenseSperner::parse_text(&text).unwrap(), inst);
    }

    #[test]
    fn triangle_adjacency_is_symmetric() {
        for t in [Triangle::lower(3, 4), Triangle::upper(3, 4)] {
            let vs = t.vertices();
            for e in 0..3 {
                let n = t.across(e);
                let shared: Vec<_> = n.vertices().into_iter().filter(|v| vs.contains(v)).collect();
                assert_eq!(shared.len(), 2, "{t} edge {e}");
                assert!(shared.contains(&vs[e]) && shared.contains(&vs[(e + 1) % 3]));
                assert!((0..3).any(|f| n.across(f) == t));
            }
        }
    }

    #[test]
    fn region_parsing_and_size() {
        let r: Region = "1,2,3,5".parse().unwrap();
        assert_eq!((r.width(), r.height(), r.area()), (3, 4, 12));
        assert!(Region::empty().is_empty());
        assert_eq!(Region::empty().area(), 0);
        assert!("1,2,3".parse::<Region>().is_err());
    }

    proptest! {
        #[test]
        fn trichromatic_ignores_vertex_order(cs in proptest::collection::vec(0u8..3, 4), rot in 0usize..4) {
            let colors: Vec<Color> = cs.iter().map(|&c| Color::ALL[c as usize]).collect();
            let mut other = colors.clone();
            other.rotate_left(rot);
            other.swap(0, 3);
            prop_assert_eq!(is_trichromatic(&colors), is_trichromatic(&other));
        }

        #[test]
        fn exit_and_entry_edges_match_across_neighbors(x in -50i128..50, y in -50i128..50, d in 0usize..4) {
            let d = Direction::ALL[d];
            let s = UnitSquare::new(x, y);
            let (l, r) = s.edge(d);
            let n = s.neighbor(d);
            let c = n.corners();
            let (el, er) = UnitSquare::entry_edge(d);
            prop_assert_eq!((c[el], c[er]), (l, r));
        }
    }
}
