//! Brute-force checkers for everything the construction promises.
//!
//! Two modes: exhaustive checks materialize the coloring and scan it, which
//! is feasible up to about three variables; trace-based checks only walk
//! between terminals and scale to any instance the oracle can answer.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construction::{layout, ConstructedBrouwer, ConstructionError, LayoutParams, WireRole, WirePolyline};
use crate::grid::{
    boundary_color_brouwer, is_1212, is_trichromatic, BrouwerInstance, Color, Coloring, Coord, DenseBrouwer,
    DenseGrid, Direction, DomainShape, GridError, GridPoint, Region, SpernerInstance, Triangle, UnitSquare,
};
use crate::qbf::{eval_qbf, Prefix, QbfError, QbfFormula};
use crate::reduction::{brouwer_to_sperner, sperner_solution_to_brouwer};
use crate::walker::{
    brouwer_step, brouwer_walk_with, default_cap, sperner_walk_with, BrouwerEol, EolInstance, Outcome, StepOutcome,
    TraceMode, WalkConfig, WalkState,
};

/// Default cap on materialized cells.
pub const DEFAULT_DENSIFY_LIMIT: u128 = 1 << 24;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Qbf(#[from] QbfError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// First offending point, when there is one.
    pub counterexample: Option<GridPoint>,
    pub detail: String,
}

impl CheckResult {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            counterexample: None,
            detail: detail.into(),
        }
    }

    pub fn fail(name: impl Into<String>, at: Option<GridPoint>, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            counterexample: at,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}", self.name)?;
        if let Some(p) = self.counterexample {
            write!(f, " at {p}")?;
        }
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Materialization and solution scans

pub fn densify<I: Coloring + ?Sized>(inst: &I, region: Region) -> Result<DenseGrid, GridError> {
    densify_with_limit(inst, region, DEFAULT_DENSIFY_LIMIT)
}

/// Points outside the domain read as 0. Rows are filled in parallel.
pub fn densify_with_limit<I: Coloring + ?Sized>(inst: &I, region: Region, limit: u128) -> Result<DenseGrid, GridError> {
    let cells = region.area();
    if cells > limit {
        return Err(GridError::RegionTooLarge { cells, limit });
    }
    if region.is_empty() {
        return Ok(DenseGrid::filled(region, Color::Zero));
    }
    let w = region.width() as usize;
    let mut out = vec![Color::Zero; cells as usize];
    out.par_chunks_mut(w).enumerate().for_each(|(i, row)| {
        let y = region.y0 + i as Coord;
        for (j, c) in row.iter_mut().enumerate() {
            *c = inst.color_or_zero(GridPoint::new(region.x0 + j as Coord, y));
        }
    });
    DenseGrid::from_cells(region, out)
}

/// The whole square domain as a dense instance.
pub fn densify_brouwer<B: BrouwerInstance + ?Sized>(inst: &B) -> Result<DenseBrouwer, GridError> {
    let m = inst.size_param();
    let grid = densify(inst, Region::full(m))?;
    DenseBrouwer::new(m, grid)
}

/// Trichromatic squares with all four corners in `grid`, sorted.
pub fn square_solutions(grid: &DenseGrid) -> Vec<UnitSquare> {
    let r = grid.region();
    if r.width() < 2 || r.height() < 2 {
        return Vec::new();
    }
    let mut out: Vec<UnitSquare> = (r.y0..r.y1)
        .into_par_iter()
        .flat_map_iter(|y| {
            (r.x0..r.x1).filter_map(move |x| {
                let s = UnitSquare::new(x, y);
                let c = s.corners().map(|p| grid.get(p).expect("inside grid"));
                is_trichromatic(&c).then_some(s)
            })
        })
        .collect();
    out.sort_by_key(|s| (s.anchor.y, s.anchor.x));
    out
}

/// Exhaustive list of trichromatic squares inside `region` and the domain.
pub fn enumerate_solutions<B: BrouwerInstance + ?Sized>(inst: &B, region: Region) -> Result<Vec<UnitSquare>, GridError> {
    let region = region.intersect(&Region::full(inst.size_param()));
    Ok(square_solutions(&densify(inst, region)?))
}

/// Exhaustive list of trichromatic triangles inside `region` and the domain.
pub fn enumerate_sperner_solutions<S: SpernerInstance + ?Sized>(
    inst: &S,
    region: Region,
) -> Result<Vec<Triangle>, GridError> {
    let region = region.intersect(&Region::full(inst.size_param()));
    let grid = densify(inst, region)?;
    let mut out = Vec::new();
    for y in region.y0..region.y1 {
        for x in region.x0..region.x1 {
            for t in [Triangle::lower(x, y), Triangle::upper(x, y)] {
                let vs = t.vertices();
                if vs.iter().all(|&v| inst.in_domain(v)) && is_trichromatic(&vs.map(|v| grid.get(v).expect("inside"))) {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Mutation wrapper

/// An instance with some points overridden. Used to seed defects.
#[derive(Debug, Clone)]
pub struct Mutated<B> {
    inner: B,
    overrides: HashMap<GridPoint, Color>,
}

impl<B: Coloring> Mutated<B> {
    pub fn new(inner: B) -> Self {
        Mutated {
            inner,
            overrides: HashMap::new(),
        }
    }

    pub fn with(mut self, p: GridPoint, c: Color) -> Self {
        self.overrides.insert(p, c);
        self
    }

    /// Swaps 1 and 2 at `p`; a 0 becomes 1.
    pub fn flipped(inner: B, p: GridPoint) -> Self {
        let c = match inner.color(p) {
            Color::One => Color::Two,
            Color::Two => Color::One,
            Color::Zero => Color::One,
        };
        Mutated::new(inner).with(p, c)
    }

    pub fn inner(&self) -> &B {
        &self.inner
    }
}

impl<B: Coloring> Coloring for Mutated<B> {
    fn size_param(&self) -> u32 {
        self.inner.size_param()
    }

    fn shape(&self) -> DomainShape {
        self.inner.shape()
    }

    fn color(&self, p: GridPoint) -> Color {
        self.overrides.get(&p).copied().unwrap_or_else(|| self.inner.color(p))
    }
}

impl<B: BrouwerInstance> BrouwerInstance for Mutated<B> {}
impl<B: SpernerInstance> SpernerInstance for Mutated<B> {}

// ---------------------------------------------------------------------------
// Wires

fn right_of(d: Direction) -> (Coord, Coord) {
    d.cw().delta()
}

fn left_of(d: Direction) -> (Coord, Coord) {
    d.ccw().delta()
}

fn unit_direction(a: GridPoint, b: GridPoint) -> Option<Direction> {
    Direction::ALL.into_iter().find(|&d| a.step(d) == b)
}

/// The wire conditions, checked against the full coloring: each track has
/// the right color and moves by unit steps; moving along the 1-track there is
/// a 2-track point on the right and a 0 on the left, and moving along the
/// 2-track a 1-track point on the left and a 0 on the right. Off-domain
/// points count as 0.
pub fn check_wire_wellformed<B: Coloring + ?Sized>(w: &WirePolyline, ctx: &B) -> CheckResult {
    const NAME: &str = "wire well-formed";
    let (ones, twos) = w.tracks();
    let one_set: HashSet<GridPoint> = ones.iter().copied().collect();
    let two_set: HashSet<GridPoint> = twos.iter().copied().collect();
    for (track, want) in [(&ones, Color::One), (&twos, Color::Two)] {
        if let Some(&p) = track.iter().find(|&&p| ctx.color_or_zero(p) != want) {
            return CheckResult::fail(
                NAME,
                Some(p),
                format!("track point colored {} instead of {}", ctx.color_or_zero(p).digit(), want.digit()),
            );
        }
    }
    let check_track = |track: &[GridPoint], partner: &HashSet<GridPoint>, partner_right: bool| -> Option<CheckResult> {
        for pair in track.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let Some(d) = unit_direction(a, b) else {
                return Some(CheckResult::fail(NAME, Some(a), format!("track jumps from {a} to {b}")));
            };
            let (pd, zd) = if partner_right {
                (right_of(d), left_of(d))
            } else {
                (left_of(d), right_of(d))
            };
            let partner_ok = [a, b].iter().any(|p| partner.contains(&p.offset(pd.0, pd.1)));
            let zero_ok = [a, b].iter().any(|p| ctx.color_or_zero(p.offset(zd.0, zd.1)) == Color::Zero);
            if !partner_ok {
                return Some(CheckResult::fail(NAME, Some(a), format!("no partner track beside the step {a} -> {b}")));
            }
            if !zero_ok {
                return Some(CheckResult::fail(NAME, Some(a), format!("no 0 outside the step {a} -> {b}")));
            }
        }
        None
    };
    if let Some(f) = check_track(&ones, &two_set, true) {
        return f;
    }
    if let Some(f) = check_track(&twos, &one_set, false) {
        return f;
    }
    CheckResult::pass(NAME, format!("{} + {} track points", ones.len(), twos.len()))
}

/// A wire with an owner label, for reports.
#[derive(Debug, Clone)]
pub struct LabeledWire {
    pub owner: String,
    pub role: WireRole,
    pub wire: WirePolyline,
}

/// All wires of a constructed instance, labeled by owning prefix.
pub fn labeled_wires(inst: &ConstructedBrouwer) -> Vec<LabeledWire> {
    inst.all_wires()
        .into_iter()
        .map(|(x, role, wire)| LabeledWire {
            owner: if x.is_empty() { "root".into() } else { x.to_string() },
            role,
            wire,
        })
        .collect()
}

/// Distinct wires keep L∞ distance at least 2, except next to a square where
/// one ends and the other begins. No wire touches the border except the
/// origin wire, and painted points never disagree.
pub fn check_separation(wires: &[LabeledWire], m: u32) -> CheckResult {
    const NAME: &str = "wire separation";
    let last: Coord = (1 << m) - 1;
    let mut owner: HashMap<GridPoint, (usize, Color)> = HashMap::new();
    let joined = |i: usize, j: usize| -> Option<UnitSquare> {
        let (a, b) = (&wires[i].wire, &wires[j].wire);
        if a.last_square() == b.first_square() {
            Some(a.last_square())
        } else if b.last_square() == a.first_square() {
            Some(b.last_square())
        } else {
            None
        }
    };
    let near = |s: UnitSquare, p: GridPoint| {
        Region::new(s.anchor.x - 1, s.anchor.y - 1, s.anchor.x + 2, s.anchor.y + 2).contains(p)
    };
    let excused = |i: usize, j: usize, p: GridPoint, q: GridPoint| joined(i, j).is_some_and(|s| near(s, p) && near(s, q));
    for (i, lw) in wires.iter().enumerate() {
        for (p, c) in lw.wire.colored_points() {
            let on_border = p.x <= 0 || p.y <= 0 || p.x >= last || p.y >= last;
            if on_border && lw.role != WireRole::Origin {
                return CheckResult::fail(NAME, Some(p), format!("{} {} touches the border", lw.owner, lw.role));
            }
            match owner.get(&p) {
                Some(&(j, c2)) if j != i && (c2 != c || !excused(i, j, p, p)) => {
                    return CheckResult::fail(
                        NAME,
                        Some(p),
                        format!("{} {} overlaps {} {}", lw.owner, lw.role, wires[j].owner, wires[j].role),
                    );
                }
                Some(&(j, c2)) if j == i && c2 != c => {
                    return CheckResult::fail(NAME, Some(p), format!("{} {} paints a point twice", lw.owner, lw.role));
                }
                Some(_) => {}
                None => {
                    owner.insert(p, (i, c));
                }
            }
        }
    }
    let mut pts: Vec<(&GridPoint, &(usize, Color))> = owner.iter().collect();
    pts.sort_by_key(|(p, _)| (p.y, p.x));
    for (&p, &(i, _)) in pts {
        for dx in -1..=1 {
            for dy in -1..=1 {
                let q = p.offset(dx, dy);
                if let Some(&(j, _)) = owner.get(&q) {
                    if j != i && !excused(i, j, p, q) {
                        return CheckResult::fail(
                            NAME,
                            Some(p),
                            format!(
                                "{} {} comes within distance 1 of {} {}",
                                wires[i].owner, wires[i].role, wires[j].owner, wires[j].role
                            ),
                        );
                    }
                }
            }
        }
    }
    CheckResult::pass(NAME, format!("{} wires, {} painted points", wires.len(), owner.len()))
}

/// Paints every wire onto a blank domain, independently of the oracle.
/// Returns the grid and the points where two wires disagree.
pub fn rasterize_construction(inst: &ConstructedBrouwer) -> Result<(DenseBrouwer, Vec<GridPoint>), VerifyError> {
    let m = inst.size_param();
    let full = Region::full(m);
    if full.area() > DEFAULT_DENSIFY_LIMIT {
        return Err(GridError::RegionTooLarge {
            cells: full.area(),
            limit: DEFAULT_DENSIFY_LIMIT,
        }
        .into());
    }
    let mut grid = DenseGrid::filled(full, Color::Zero);
    let mut painted: HashMap<GridPoint, Color> = HashMap::new();
    let mut conflicts = Vec::new();
    for (_, _, w) in inst.all_wires() {
        for (p, c) in w.colored_points() {
            if !full.contains(p) {
                conflicts.push(p);
                continue;
            }
            if let Some(&old) = painted.get(&p) {
                if old != c {
                    conflicts.push(p);
                }
            }
            painted.insert(p, c);
            grid.set(p, c);
        }
    }
    let last = inst.side() - 1;
    for i in 0..=last {
        for p in [
            GridPoint::new(i, 0),
            GridPoint::new(i, last),
            GridPoint::new(0, i),
            GridPoint::new(last, i),
        ] {
            if let Some(c) = boundary_color_brouwer(m, p)? {
                grid.set(p, c);
            }
        }
    }
    conflicts.sort_by_key(|p| (p.y, p.x));
    conflicts.dedup();
    Ok((DenseBrouwer::new(m, grid)?, conflicts))
}

/// Per-point agreement of two colorings over the whole square domain.
pub fn check_agreement<A: Coloring + ?Sized>(lazy: &A, dense: &DenseGrid) -> CheckResult {
    const NAME: &str = "lazy/dense agreement";
    let r = dense.region();
    let bad = (r.y0..=r.y1).into_par_iter().find_map_first(|y| {
        (r.x0..=r.x1)
            .map(|x| GridPoint::new(x, y))
            .find(|&p| Some(lazy.color(p)) != dense.get(p))
    });
    match bad {
        Some(p) => CheckResult::fail(NAME, Some(p), "oracle and painted grid differ"),
        None => CheckResult::pass(NAME, format!("{} points", r.area())),
    }
}

/// Border points against the boundary rule.
pub fn check_boundary<B: Coloring + ?Sized>(inst: &B) -> CheckResult {
    const NAME: &str = "boundary";
    let m = inst.size_param();
    let last = inst.side() - 1;
    if last > 1 << 24 {
        return CheckResult::fail(NAME, None, "domain too large for an exhaustive border scan");
    }
    for i in 0..=last {
        for p in [
            GridPoint::new(i, 0),
            GridPoint::new(i, last),
            GridPoint::new(0, i),
            GridPoint::new(last, i),
        ] {
            let want = boundary_color_brouwer(m, p).ok().flatten();
            if want.is_some_and(|c| c != inst.color(p)) {
                return CheckResult::fail(NAME, Some(p), "border color breaks the boundary rule");
            }
        }
    }
    CheckResult::pass(NAME, format!("{} border points", 4 * last))
}

// ---------------------------------------------------------------------------
// Structure routing

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoutingMode {
    /// Also scan every square of the box for stray solutions.
    #[default]
    Exhaustive,
    /// Only walk between terminals.
    TraceBased,
}

fn square_inside(b: &crate::construction::BoxRect, s: UnitSquare) -> bool {
    b.contains(s.anchor) && b.contains(s.anchor.offset(1, 1))
}

/// Walks from an incoming terminal until it reaches one of `targets`,
/// failing if the walk leaves the box or stops inside it.
fn walk_in_box<B: BrouwerInstance + ?Sized>(
    inst: &B,
    bbox: &crate::construction::BoxRect,
    start: UnitSquare,
    entered: Direction,
    targets: &[UnitSquare],
) -> Result<UnitSquare, (GridPoint, String)> {
    let cap = (bbox.w * bbox.h) as u128 * 2;
    let mut st = WalkState::at(start, Some(entered));
    loop {
        if st.steps > 0 && targets.contains(&st.current) {
            return Ok(st.current);
        }
        if st.steps > cap {
            return Err((st.current.anchor, "walk does not reach a terminal".into()));
        }
        match brouwer_step(inst, &st) {
            Ok(StepOutcome::Solution(s)) => return Err((s.anchor, format!("walk stops at {s} inside the box"))),
            Ok(StepOutcome::Next(next)) => {
                if !square_inside(bbox, next.current) {
                    return Err((next.current.anchor, "walk leaves the box".into()));
                }
                st = next;
            }
            Err(e) => return Err((st.current.anchor, e.to_string())),
        }
    }
}

/// Routing of `S(Φ_x)` on any coloring that should equal the construction:
/// left_in reaches yes_out exactly when `Φ_x` is true, right_in reaches the
/// other outgoing terminal, and (exhaustively) no square inside the box is a
/// solution.
pub fn check_structure_routing_on<B: BrouwerInstance + ?Sized>(
    inst: &B,
    formula: &QbfFormula,
    x: &Prefix,
    params: LayoutParams,
    mode: RoutingMode,
) -> Result<Report, VerifyError> {
    let l = layout(formula, x, params)?;
    let truth = eval_qbf(formula, x)?;
    let tag = if x.is_empty() { "root".to_string() } else { x.to_string() };
    let (want_left, want_right) = if truth {
        (l.yes_out.square, l.no_out.square)
    } else {
        (l.no_out.square, l.yes_out.square)
    };
    let outs = [l.yes_out.square, l.no_out.square];
    let mut report = Report::new();
    for (name, start, entered, want) in [
        ("left_in", l.left_in.square, Direction::Right, want_left),
        ("right_in", l.right_in.square, Direction::Left, want_right),
    ] {
        let check = format!("routing {tag} {name}");
        report.push(match walk_in_box(inst, &l.bbox, start, entered, &outs) {
            Ok(end) if end == want => CheckResult::pass(check, format!("reaches {end}")),
            Ok(end) => CheckResult::fail(check, Some(end.anchor), format!("reaches {end}, expected {want}")),
            Err((p, why)) => CheckResult::fail(check, Some(p), why),
        });
    }
    if mode == RoutingMode::Exhaustive {
        let check = format!("no internal ends {tag}");
        let r = l.bbox.region();
        let grid = densify(inst, r)?;
        report.push(match square_solutions(&grid).first() {
            Some(s) => CheckResult::fail(check, Some(s.anchor), format!("solution {s} inside the box")),
            None => CheckResult::pass(check, format!("{} squares scanned", (r.width() - 1) * (r.height() - 1))),
        });
    }
    Ok(report)
}

/// [`check_structure_routing_on`] against a freshly built instance.
pub fn check_structure_routing(
    formula: &QbfFormula,
    x: &Prefix,
    params: LayoutParams,
) -> Result<Report, VerifyError> {
    let inst = crate::construction::build_brouwer(formula, params)?;
    let area = inst.layout(x)?.bbox.region().area();
    let mode = if area <= DEFAULT_DENSIFY_LIMIT {
        RoutingMode::Exhaustive
    } else {
        RoutingMode::TraceBased
    };
    check_structure_routing_on(&inst, formula, x, params, mode)
}

/// A point of some wire owned by `S(Φ_x)`, strictly inside its box, chosen
/// by `pick`. Flipping it must break the routing check.
pub fn mutation_point(inst: &ConstructedBrouwer, x: &Prefix, pick: usize) -> Result<Option<GridPoint>, VerifyError> {
    let b = inst.layout(x)?.bbox;
    let inner = crate::construction::BoxRect {
        x: b.x + 1,
        y: b.y + 1,
        w: b.w - 2,
        h: b.h - 2,
    };
    let pts: Vec<GridPoint> = inst
        .structure_wires(x)?
        .into_iter()
        .flat_map(|(_, w)| w.colored_points().into_iter().map(|(p, _)| p))
        .filter(|&p| inner.contains(p))
        .collect();
    Ok((!pts.is_empty()).then(|| pts[pick % pts.len()]))
}

// ---------------------------------------------------------------------------
// Reduction correspondence

/// Builds `I′` from a dense copy of `inst` and compares the two walks.
pub fn check_reduction_correspondence<B: BrouwerInstance + ?Sized>(inst: &B) -> Result<Report, VerifyError> {
    let dense = densify_brouwer(inst)?;
    let sperner = brouwer_to_sperner(&dense);
    Ok(check_reduction_correspondence_with(&dense, &sperner))
}

/// Compares a Brouwer instance with a Sperner instance meant to be its
/// reduction. Solutions of `sperner` are searched among triangles touching a
/// 1 that copies a 1 of `inst`, or the left column, since every
/// trichromatic triangle has a 1 corner.
pub fn check_reduction_correspondence_with<B, S>(inst: &B, sperner: &S) -> Report
where
    B: BrouwerInstance + ?Sized,
    S: SpernerInstance + ?Sized,
{
    let mut report = Report::new();
    let m = inst.size_param();
    let side = inst.side();

    // Solutions of I′ map to solutions of I.
    let mut candidates: HashSet<GridPoint> = HashSet::new();
    for y in 0..side {
        for x in 0..side {
            if inst.color(GridPoint::new(x, y)) == Color::One {
                let (a, b) = (2 * x, 2 * y);
                for p in [
                    GridPoint::new(a, b),
                    GridPoint::new(a + 1, b),
                    GridPoint::new(a, b + 1),
                    GridPoint::new(a - 1, b - 1),
                ] {
                    candidates.insert(p);
                }
            }
        }
    }
    for y in 0..sperner.side() {
        candidates.insert(GridPoint::new(0, y));
    }
    let mut tris: Vec<Triangle> = candidates
        .iter()
        .filter(|&&p| sperner.in_domain(p) && sperner.color(p) == Color::One)
        .flat_map(|&v| {
            let (x, y) = (v.x, v.y);
            [
                Triangle::lower(x, y),
                Triangle::lower(x - 1, y),
                Triangle::lower(x, y - 1),
                Triangle::upper(x - 1, y - 1),
                Triangle::upper(x - 1, y),
                Triangle::upper(x, y - 1),
            ]
        })
        .filter(|t| t.vertices().iter().all(|&v| sperner.in_domain(v)))
        .collect();
    tris.sort();
    tris.dedup();
    let solutions: Vec<Triangle> = tris
        .into_iter()
        .filter(|t| is_trichromatic(&t.vertices().map(|v| sperner.color(v))))
        .collect();
    let bad = solutions.iter().find(|t| {
        let s = sperner_solution_to_brouwer(**t);
        !(s.anchor.x >= 0 && s.anchor.y >= 0 && s.anchor.x + 1 < side && s.anchor.y + 1 < side)
            || !is_trichromatic(&s.corners().map(|p| inst.color(p)))
    });
    report.push(match bad {
        Some(t) => CheckResult::fail(
            "reduction preserves solutions",
            Some(t.anchor),
            format!("{t} maps to {}, which is not a solution", sperner_solution_to_brouwer(*t)),
        ),
        None => CheckResult::pass(
            "reduction preserves solutions",
            format!("{} trichromatic triangles", solutions.len()),
        ),
    });

    // The two walks in lockstep.
    let bcfg = WalkConfig::new(default_cap(m)).with_trace(TraceMode::Full);
    let bw = brouwer_walk_with(inst, &bcfg, None);
    let scfg = WalkConfig::new(default_cap(sperner.size_param())).with_trace(TraceMode::Full);
    let sw = sperner_walk_with(sperner, &scfg, None);
    let bpath: Vec<UnitSquare> = bw.trace.unwrap_or_default().into_iter().map(|e| e.cell).collect();
    let mut collapsed: Vec<UnitSquare> = Vec::new();
    for e in sw.trace.unwrap_or_default() {
        let g = sperner_solution_to_brouwer(e.cell);
        if collapsed.last() != Some(&g) {
            collapsed.push(g);
        }
    }
    let mismatch = collapsed.iter().zip(&bpath).position(|(a, b)| a != b);
    report.push(match (mismatch, collapsed.len() == bpath.len()) {
        (None, true) => CheckResult::pass("walks in lockstep", format!("{} squares", bpath.len())),
        (Some(i), _) => CheckResult::fail(
            "walks in lockstep",
            Some(collapsed[i].anchor),
            format!("step {i}: triangle walk in {}, square walk in {}", collapsed[i], bpath[i]),
        ),
        (None, false) => CheckResult::fail(
            "walks in lockstep",
            collapsed.last().map(|s| s.anchor),
            format!("triangle walk covers {} squares, square walk {}", collapsed.len(), bpath.len()),
        ),
    });

    let endpoint = match (&bw.outcome, &sw.outcome) {
        (Outcome::Solution(s), Outcome::Solution(t)) if sperner_solution_to_brouwer(*t) == *s => {
            CheckResult::pass("walk endpoints correspond", format!("{t} lies in {s}"))
        }
        (Outcome::Solution(s), Outcome::Solution(t)) => CheckResult::fail(
            "walk endpoints correspond",
            Some(t.anchor),
            format!("{t} maps to {}, square walk ends at {s}", sperner_solution_to_brouwer(*t)),
        ),
        (b, s) => CheckResult::fail("walk endpoints correspond", None, format!("walks ended {b:?} and {s:?}")),
    };
    report.push(endpoint);
    report
}

// ---------------------------------------------------------------------------
// End-of-line view

/// In- and out-degree at most one at every node, and successor/predecessor
/// agreement. Squares without both a 1 and a 2 corner have no arcs and are
/// skipped.
pub fn check_eol_degrees<B: BrouwerInstance>(eol: &BrouwerEol<B>) -> CheckResult {
    const NAME: &str = "end-of-line degrees";
    let inst = eol.instance();
    let side = inst.side();
    if side > 1 << 12 {
        return CheckResult::fail(NAME, None, "domain too large for a full node scan");
    }
    let mut indeg: HashMap<u128, u32> = HashMap::new();
    let mut outdeg: HashMap<u128, u32> = HashMap::new();
    let mut arcs = 0u64;
    for y in 0..side - 1 {
        for x in 0..side - 1 {
            let s = UnitSquare::new(x, y);
            let c = s.corners().map(|p| inst.color(p));
            if !c.contains(&Color::One) || !c.contains(&Color::Two) {
                continue;
            }
            let tags: &[u128] = if is_1212(&c) { &[0, 1] } else { &[0] };
            for &tag in tags {
                let u = eol.encode(s, tag);
                let v = eol.successor(u);
                if v == u {
                    continue;
                }
                if eol.predecessor(v) != u {
                    return CheckResult::fail(NAME, Some(s.anchor), format!("successor of node {u} does not point back"));
                }
                arcs += 1;
                *outdeg.entry(u).or_default() += 1;
                *indeg.entry(v).or_default() += 1;
            }
        }
    }
    for (map, what) in [(&indeg, "in"), (&outdeg, "out")] {
        if let Some((&u, &d)) = map.iter().filter(|(_, &d)| d > 1).min_by_key(|(&u, _)| u) {
            let (s, _) = eol.decode(u);
            return CheckResult::fail(NAME, Some(s.anchor), format!("node {u} has {what}-degree {d}"));
        }
    }
    CheckResult::pass(NAME, format!("{arcs} arcs"))
}

// ---------------------------------------------------------------------------
// Whole-instance suite

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteOptions {
    pub mode: RoutingMode,
    /// Also seed one defect per structure and require the routing check to
    /// notice it.
    pub mutation: bool,
}

/// Every check that applies to a constructed instance.
pub fn verify_construction(inst: &ConstructedBrouwer, opts: SuiteOptions) -> Result<Report, VerifyError> {
    let mut report = Report::new();
    let formula = inst.formula().clone();
    let params = inst.params();
    let truth = eval_qbf(&formula, &Prefix::empty())?;
    let t = inst.terminals();
    let want = if truth { t.yes } else { t.no };

    let walk = brouwer_walk_with(inst, &WalkConfig::new(default_cap(inst.size_param())), None);
    report.push(match walk.solution() {
        Some(s) if s == want => CheckResult::pass("end-to-end", format!("{} steps to {s}", walk.steps)),
        Some(s) => CheckResult::fail("end-to-end", Some(s.anchor), format!("walk ends at {s}, expected {want}")),
        None => CheckResult::fail("end-to-end", None, format!("walk ended {:?}", walk.outcome)),
    });

    let exhaustive = opts.mode == RoutingMode::Exhaustive && Region::full(inst.size_param()).area() <= DEFAULT_DENSIFY_LIMIT;
    let n = formula.num_vars() as usize;
    if exhaustive {
        let (dense, conflicts) = rasterize_construction(inst)?;
        report.push(match conflicts.first() {
            Some(&p) => CheckResult::fail("painting", Some(p), format!("{} conflicting points", conflicts.len())),
            None => CheckResult::pass("painting", "no conflicts"),
        });
        report.push(check_agreement(inst, dense.grid()));
        report.push(check_boundary(inst));
        let sols = square_solutions(dense.grid());
        let mut expect = vec![t.yes, t.no, t.aux_source];
        expect.sort_by_key(|s| (s.anchor.y, s.anchor.x));
        report.push(if sols == expect {
            CheckResult::pass("solution set", "exactly the three terminal squares")
        } else {
            let stray = sols.iter().find(|s| !expect.contains(s)).or(expect.iter().find(|s| !sols.contains(s)));
            CheckResult::fail("solution set", stray.map(|s| s.anchor), format!("{} solutions", sols.len()))
        });
        let wires = labeled_wires(inst);
        let bad_wire = wires
            .iter()
            .map(|lw| (lw, check_wire_wellformed(&lw.wire, &dense)))
            .find(|(_, r)| !r.passed);
        report.push(match bad_wire {
            Some((lw, r)) => CheckResult::fail(
                "wires well-formed",
                r.counterexample,
                format!("{} {}: {}", lw.owner, lw.role, r.detail),
            ),
            None => CheckResult::pass("wires well-formed", format!("{} wires", wires.len())),
        });
        report.push(check_separation(&wires, inst.size_param()));
        for x in Prefix::all_up_to(n) {
            report.extend(check_structure_routing_on(&dense, &formula, &x, params, RoutingMode::Exhaustive)?);
        }
        report.extend(check_reduction_correspondence_with(&dense, &brouwer_to_sperner(&dense)));
        if opts.mutation {
            for (k, x) in Prefix::all_up_to(n).enumerate() {
                report.push(mutation_check(&dense, inst, &x, k)?);
            }
        }
    } else {
        // Only the root-to-leaf chain along all-zero bits, plus its siblings.
        let mut x = Prefix::empty();
        loop {
            report.extend(check_structure_routing_on(inst, &formula, &x, params, RoutingMode::TraceBased)?);
            if x.len() == n {
                break;
            }
            report.extend(check_structure_routing_on(
                inst,
                &formula,
                &x.child(true),
                params,
                RoutingMode::TraceBased,
            )?);
            x = x.child(false);
        }
    }
    Ok(report)
}

/// Flips one wire point of `S(Φ_x)` in `base` and expects the routing check to fail.
pub fn mutation_check<B: BrouwerInstance>(
    base: &B,
    inst: &ConstructedBrouwer,
    x: &Prefix,
    pick: usize,
) -> Result<CheckResult, VerifyError> {
    let tag = if x.is_empty() { "root".to_string() } else { x.to_string() };
    let name = format!("mutation detected {tag}");
    let Some(p) = mutation_point(inst, x, pick)? else {
        return Ok(CheckResult::fail(name, None, "structure owns no interior wire point"));
    };
    let mutated = Mutated::flipped(base, p);
    let r = check_structure_routing_on(&mutated, inst.formula(), x, inst.params(), RoutingMode::Exhaustive)?;
    Ok(if r.passed() {
        CheckResult::fail(name, Some(p), "flipped point went unnoticed")
    } else {
        CheckResult::pass(name, format!("flip at {p} caught"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_brouwer;
    use crate::grid::blank_brouwer;
    use crate::qbf::Quantifier;
    use crate::walker::brouwer_as_eol;

    fn sample_grid() -> DenseBrouwer {
        DenseBrouwer::from_rows(2, &["1000", "1120", "1210", "1222"]).unwrap()
    }

    fn build(prefix: &[Quantifier], clauses: &[&[i32]]) -> ConstructedBrouwer {
        build_brouwer(&QbfFormula::from_ints(prefix, clauses).unwrap(), LayoutParams::default()).unwrap()
    }

    #[test]
    fn densify_reproduces_and_repeats() {
        let f = sample_grid();
        let a = densify(&f, Region::full(2)).unwrap();
        assert_eq!(&a, f.grid());
        assert_eq!(a, densify(&f, Region::full(2)).unwrap());
        assert!(matches!(
            densify_with_limit(&f, Region::full(2), 15),
            Err(GridError::RegionTooLarge { cells: 16, limit: 15 })
        ));
    }

    #[test]
    fn sample_grid_solutions() {
        let sols = enumerate_solutions(&sample_grid(), Region::full(2)).unwrap();
        assert_eq!(sols, vec![UnitSquare::new(2, 0), UnitSquare::new(2, 1), UnitSquare::new(1, 2)]);
    }

    #[test]
    fn blank_instance_solutions_sit_on_the_border() {
        let sols = enumerate_solutions(&blank_brouwer(3), Region::full(3)).unwrap();
        assert!(!sols.is_empty());
        for s in sols {
            assert!(s.anchor.x == 0 || s.anchor.y == 0 || s.anchor.x == 6 || s.anchor.y == 6, "{s}");
        }
    }

    #[test]
    fn exists_x_has_exactly_three_solutions() {
        let inst = build(&[Quantifier::Exists], &[&[1]]);
        let dense = densify(&inst, Region::full(inst.size_param())).unwrap();
        let t = inst.terminals();
        let mut want = vec![t.yes, t.no, t.aux_source];
        want.sort_by_key(|s| (s.anchor.y, s.anchor.x));
        assert_eq!(square_solutions(&dense), want);
    }

    #[test]
    fn sample_wire_alone_is_wellformed() {
        let w = WirePolyline::from_coords(&[(1, -1), (1, 5), (4, 5), (4, 2), (7, 2)]).unwrap();
        let mut grid = DenseGrid::filled(Region::new(-3, -3, 12, 12), Color::Zero);
        for (p, c) in w.colored_points() {
            grid.set(p, c);
        }
        let ctx = crate::grid::FnBrouwer::new(4, move |p| grid.get(p).unwrap_or(Color::Zero));
        let r = check_wire_wellformed(&w, &ctx);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn parallel_wires_at_distance_one_fail() {
        let a = WirePolyline::from_coords(&[(3, 2), (3, 10)]).unwrap();
        let b = WirePolyline::from_coords(&[(1, 2), (1, 10)]).unwrap();
        let mut grid = DenseGrid::filled(Region::new(0, 0, 15, 15), Color::Zero);
        for w in [&a, &b] {
            for (p, c) in w.colored_points() {
                grid.set(p, c);
            }
        }
        let ctx = crate::grid::FnBrouwer::new(4, move |p| grid.get(p).unwrap_or(Color::Zero));
        assert!(!check_wire_wellformed(&a, &ctx).passed);
        let labeled: Vec<LabeledWire> = [a, b]
            .into_iter()
            .map(|wire| LabeledWire {
                owner: "t".into(),
                role: WireRole::LeafLeft,
                wire,
            })
            .collect();
        assert!(!check_separation(&labeled, 4).passed);
    }

    #[test]
    fn small_instances_pass_the_suite() {
        for prefix in [
            vec![Quantifier::Forall],
            vec![Quantifier::Exists, Quantifier::Forall],
        ] {
            for clauses in [vec![vec![1i32]], vec![vec![-1], vec![1, -2]]] {
                let cl: Vec<&[i32]> = clauses.iter().filter(|c| c.iter().all(|&l| l.unsigned_abs() as usize <= prefix.len())).map(|c| c.as_slice()).collect();
                let inst = build(&prefix, &cl);
                let opts = SuiteOptions {
                    mode: RoutingMode::Exhaustive,
                    mutation: true,
                };
                let r = verify_construction(&inst, opts).unwrap();
                assert!(r.passed(), "{}\n{r}", inst.formula());
            }
        }
    }

    #[test]
    fn forall_children_true_false_feeds_back() {
        // x1=0 makes the matrix true, x1=1 makes it false.
        let f = QbfFormula::from_ints(&[Quantifier::Forall], &[&[-1]]).unwrap();
        let r = check_structure_routing(&f, &Prefix::empty(), LayoutParams::default()).unwrap();
        assert!(r.passed(), "{r}");
        let l = layout(&f, &Prefix::empty(), LayoutParams::default()).unwrap();
        let c0 = layout(&f, &"0".parse().unwrap(), LayoutParams::default()).unwrap();
        let inst = build_brouwer(&f, LayoutParams::default()).unwrap();
        let mut seen = Vec::new();
        let mut st = WalkState::at(l.left_in.square, Some(Direction::Right));
        while st.current != l.no_out.square {
            seen.push(st.current);
            match brouwer_step(&inst, &st).unwrap() {
                StepOutcome::Next(n) => st = n,
                StepOutcome::Solution(s) => panic!("stopped at {s}"),
            }
        }
        assert!(seen.contains(&c0.right_in.square));
    }

    #[test]
    fn reduction_sample_grid() {
        let r = check_reduction_correspondence(&sample_grid()).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn corrupted_reduction_is_caught() {
        let inst = build(&[Quantifier::Exists, Quantifier::Exists], &[&[1, 2]]);
        let dense = densify_brouwer(&inst).unwrap();
        let sperner = brouwer_to_sperner(&dense);
        assert!(check_reduction_correspondence_with(&dense, &sperner).passed());
        // Blank out a 1 corner of a triangle halfway along the walk.
        let sw = sperner_walk_with(&sperner, &WalkConfig::new(1 << 30).with_trace(TraceMode::Full), None);
        let trace = sw.trace.unwrap();
        let t = trace[trace.len() / 2].cell;
        let v = *t.vertices().iter().find(|&&v| sperner.color(v) == Color::One).unwrap();
        let bad = Mutated::new(&sperner).with(v, Color::Zero);
        let r = check_reduction_correspondence_with(&dense, &bad);
        assert!(r.failures().any(|c| c.name == "walks in lockstep"), "{r}");
    }

    #[test]
    fn eol_degrees_on_construction() {
        let inst = build(&[Quantifier::Forall, Quantifier::Exists], &[&[1, 2], &[-1, -2]]);
        let dense = densify_brouwer(&inst).unwrap();
        let r = check_eol_degrees(&brouwer_as_eol(&dense).unwrap());
        assert!(r.passed, "{r}");
    }

    #[test]
    fn mutation_is_caught_at_every_structure() {
        let inst = build(&[Quantifier::Exists, Quantifier::Forall], &[&[1, -2]]);
        let dense = densify_brouwer(&inst).unwrap();
        for (k, x) in Prefix::all_up_to(2).enumerate() {
            for pick in [k, 7 * k + 3, 101] {
                let r = mutation_check(&dense, &inst, &x, pick).unwrap();
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn report_display() {
        let mut r = Report::new();
        r.push(CheckResult::pass("a", "ok"));
        r.push(CheckResult::fail("b", Some(GridPoint::new(1, 2)), "bad"));
        assert_eq!(r.to_string(), "PASS a: ok\nFAIL b at (1, 2): bad\n");
        assert!(!r.passed());
    }
}
