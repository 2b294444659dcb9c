//! Path-following walkers for both grid problems, and the Brouwer walk seen
//! as an End-of-Line graph.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::grid::{
    is_1212, is_trichromatic, square_in_domain, BrouwerInstance, Color, Coord, Direction, GridPoint,
    SpernerInstance, Triangle, UnitSquare, BL, BR, TL, TR,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("{0} has no exit edge with 1 on the left and 2 on the right")]
    NoExit(UnitSquare),
    #[error("leaving {from} toward {toward} exits the domain")]
    LeavesDomain { from: UnitSquare, toward: Direction },
    #[error("{0} lies outside the domain")]
    OutOfDomain(UnitSquare),
    #[error("{0} has no exit edge")]
    TriangleNoExit(Triangle),
    #[error("{0} has {1} exit edges")]
    TriangleAmbiguous(Triangle, usize),
    #[error("leaving {from} reaches {to}, outside the domain")]
    TriangleLeavesDomain { from: Triangle, to: Triangle },
    #[error("virtual start chain left the domain at height {0}")]
    VirtualLeavesDomain(Coord),
    #[error("size parameter {0} is too large for 128-bit node identifiers")]
    NodeSpaceTooLarge(u32),
}

/// Square walker position. `prev_dir` is `None` only before the first move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalkState {
    pub current: UnitSquare,
    pub prev_dir: Option<Direction>,
    pub steps: u128,
}

impl WalkState {
    pub fn start() -> Self {
        WalkState {
            current: UnitSquare::new(0, 0),
            prev_dir: None,
            steps: 0,
        }
    }

    pub fn at(current: UnitSquare, prev_dir: Option<Direction>) -> Self {
        WalkState {
            current,
            prev_dir,
            steps: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    Solution(UnitSquare),
    Next(WalkState),
}

/// Exit taken from a square with corner colors `c`, or `None` if there is none.
///
/// On a 1212 square both opposite exits qualify and the one turning right
/// relative to `prev` wins.
pub fn exit_direction(c: &[Color; 4], prev: Option<Direction>) -> Option<Direction> {
    let is_exit = |d: Direction| {
        let (l, r) = UnitSquare::exit_edge(d);
        c[l] == Color::One && c[r] == Color::Two
    };
    if is_1212(c) {
        return prev.map(Direction::cw).filter(|&d| is_exit(d));
    }
    Direction::ALL.into_iter().find(|&d| is_exit(d))
}

pub fn brouwer_step<B: BrouwerInstance + ?Sized>(inst: &B, st: &WalkState) -> Result<StepOutcome, WalkError> {
    if !square_in_domain(inst, st.current) {
        return Err(WalkError::OutOfDomain(st.current));
    }
    let c = st.current.corners().map(|p| inst.color(p));
    step_with_colors(inst, st, &c)
}

fn step_with_colors<B: BrouwerInstance + ?Sized>(
    inst: &B,
    st: &WalkState,
    c: &[Color; 4],
) -> Result<StepOutcome, WalkError> {
    if is_trichromatic(c) {
        return Ok(StepOutcome::Solution(st.current));
    }
    let d = exit_direction(c, st.prev_dir).ok_or(WalkError::NoExit(st.current))?;
    let next = st.current.neighbor(d);
    if !square_in_domain(inst, next) {
        return Err(WalkError::LeavesDomain {
            from: st.current,
            toward: d,
        });
    }
    Ok(StepOutcome::Next(WalkState {
        current: next,
        prev_dir: Some(d),
        steps: st.steps + 1,
    }))
}

/// Anything a walk can end on.
pub trait Cell: Copy + fmt::Debug {
    fn anchor(&self) -> GridPoint;
}

impl Cell for UnitSquare {
    fn anchor(&self) -> GridPoint {
        self.anchor
    }
}

impl Cell for Triangle {
    fn anchor(&self) -> GridPoint {
        self.anchor
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<C> {
    Solution(C),
    CapExceeded,
    Failed(WalkError),
}

/// One visited cell. `label` is the direction of the move that entered a
/// square (`start` for the first), or the kind of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry<C> {
    pub step: u128,
    pub cell: C,
    pub label: &'static str,
}

impl<C: Cell> fmt::Display for TraceEntry<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.cell.anchor();
        write!(f, "{} {} {} {}", self.step, a.x, a.y, self.label)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkResult<C> {
    pub outcome: Outcome<C>,
    /// Moves made.
    pub steps: u128,
    pub trace: Option<Vec<TraceEntry<C>>>,
}

impl<C: Copy> WalkResult<C> {
    pub fn solution(&self) -> Option<C> {
        match self.outcome {
            Outcome::Solution(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMode {
    #[default]
    Off,
    /// Keep only the last `k` cells.
    Last(usize),
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub cap: u128,
    pub trace: TraceMode,
}

impl WalkConfig {
    pub fn new(cap: u128) -> Self {
        WalkConfig {
            cap,
            trace: TraceMode::Off,
        }
    }

    pub fn with_trace(mut self, trace: TraceMode) -> Self {
        self.trace = trace;
        self
    }
}

/// `2^(2m)`, the number of squares, saturating.
pub fn default_cap(m: u32) -> u128 {
    1u128.checked_shl(2 * m).unwrap_or(u128::MAX)
}

struct Recorder<C> {
    mode: TraceMode,
    buf: VecDeque<TraceEntry<C>>,
}

impl<C> Recorder<C> {
    fn new(mode: TraceMode) -> Self {
        Recorder {
            mode,
            buf: VecDeque::new(),
        }
    }

    fn push(&mut self, e: TraceEntry<C>) {
        match self.mode {
            TraceMode::Off => {}
            TraceMode::Full => self.buf.push_back(e),
            TraceMode::Last(k) => {
                if k == 0 {
                    return;
                }
                if self.buf.len() == k {
                    self.buf.pop_front();
                }
                self.buf.push_back(e);
            }
        }
    }

    fn finish(self) -> Option<Vec<TraceEntry<C>>> {
        match self.mode {
            TraceMode::Off => None,
            _ => Some(self.buf.into()),
        }
    }
}

fn dir_label(d: Option<Direction>) -> &'static str {
    d.map_or("start", Direction::name)
}

pub type SquareObserver<'a> = &'a mut dyn FnMut(&TraceEntry<UnitSquare>);

pub fn brouwer_walk<B: BrouwerInstance + ?Sized>(inst: &B, cap: u128) -> WalkResult<UnitSquare> {
    brouwer_walk_with(inst, &WalkConfig::new(cap), None)
}

/// Walks from the bottom-left square. `observer` sees every visited square.
pub fn brouwer_walk_with<B: BrouwerInstance + ?Sized>(
    inst: &B,
    config: &WalkConfig,
    observer: Option<SquareObserver<'_>>,
) -> WalkResult<UnitSquare> {
    brouwer_walk_from(inst, WalkState::start(), config, observer)
}

/// Same as [`brouwer_walk_with`] from an arbitrary state.
pub fn brouwer_walk_from<B: BrouwerInstance + ?Sized>(
    inst: &B,
    start: WalkState,
    config: &WalkConfig,
    mut observer: Option<SquareObserver<'_>>,
) -> WalkResult<UnitSquare> {
    let mut rec = Recorder::new(config.trace);
    let mut st = start;
    let finish = |outcome, steps, rec: Recorder<UnitSquare>| WalkResult {
        outcome,
        steps,
        trace: rec.finish(),
    };
    if !square_in_domain(inst, st.current) {
        return finish(Outcome::Failed(WalkError::OutOfDomain(st.current)), st.steps, rec);
    }
    let mut c = st.current.corners().map(|p| inst.color(p));
    loop {
        let entry = TraceEntry {
            step: st.steps,
            cell: st.current,
            label: dir_label(st.prev_dir),
        };
        if let Some(obs) = observer.as_mut() {
            obs(&entry);
        }
        rec.push(entry);
        if is_trichromatic(&c) {
            return finish(Outcome::Solution(st.current), st.steps, rec);
        }
        if st.steps - start.steps >= config.cap {
            return finish(Outcome::CapExceeded, st.steps, rec);
        }
        match step_with_colors(inst, &st, &c) {
            Ok(StepOutcome::Next(next)) => {
                let d = next.prev_dir.expect("moves record a direction");
                c = shift_corners(inst, next.current, d, &c);
                st = next;
            }
            Ok(StepOutcome::Solution(s)) => return finish(Outcome::Solution(s), st.steps, rec),
            Err(e) => return finish(Outcome::Failed(e), st.steps, rec),
        }
    }
}

/// Corner colors of the square entered by moving `d`, reusing the shared edge.
fn shift_corners<B: BrouwerInstance + ?Sized>(inst: &B, s: UnitSquare, d: Direction, old: &[Color; 4]) -> [Color; 4] {
    let p = s.corners();
    let mut c = [Color::Zero; 4];
    let (keep, fresh) = match d {
        Direction::Up => ([(BL, TL), (BR, TR)], [TL, TR]),
        Direction::Right => ([(BL, BR), (TL, TR)], [BR, TR]),
        Direction::Down => ([(TL, BL), (TR, BR)], [BL, BR]),
        Direction::Left => ([(BR, BL), (TR, TL)], [BL, TL]),
    };
    for (new_i, old_i) in keep {
        c[new_i] = old[old_i];
    }
    for i in fresh {
        c[i] = inst.color(p[i]);
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpernerStep {
    Solution(Triangle),
    Next(Triangle),
}

/// Index of the unique edge with 2 at its start and 1 at its end, going
/// counterclockwise; looking outward, 1 is then on the left.
fn triangle_exit(c: &[Color; 3]) -> Result<usize, usize> {
    let exits: Vec<usize> = (0..3)
        .filter(|&i| c[i] == Color::Two && c[(i + 1) % 3] == Color::One)
        .collect();
    match exits.as_slice() {
        [e] => Ok(*e),
        _ => Err(exits.len()),
    }
}

fn triangle_in_sperner<S: SpernerInstance + ?Sized>(inst: &S, t: Triangle) -> bool {
    t.vertices().iter().all(|&v| inst.in_domain(v))
}

pub fn sperner_step<S: SpernerInstance + ?Sized>(inst: &S, t: Triangle) -> Result<SpernerStep, WalkError> {
    let c = t.vertices().map(|v| inst.color(v));
    if is_trichromatic(&c) {
        return Ok(SpernerStep::Solution(t));
    }
    let e = triangle_exit(&c).map_err(|n| match n {
        0 => WalkError::TriangleNoExit(t),
        n => WalkError::TriangleAmbiguous(t, n),
    })?;
    Ok(SpernerStep::Next(t.across(e)))
}

/// A position of the triangle walk: a real triangle, or the virtual triangle
/// `{p, (0,y), (0,y+1)}` with `p` to the left of the domain, colored 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Place {
    Virtual(Coord),
    Real(Triangle),
}

pub type TriangleObserver<'a> = &'a mut dyn FnMut(&TraceEntry<Triangle>);

pub fn sperner_walk<S: SpernerInstance + ?Sized>(inst: &S, cap: u128) -> WalkResult<Triangle> {
    sperner_walk_with(inst, &WalkConfig::new(cap), None)
}

/// Starts in the virtual triangle below `(0,1)`; virtual moves count as steps
/// but only real triangles are traced.
pub fn sperner_walk_with<S: SpernerInstance + ?Sized>(
    inst: &S,
    config: &WalkConfig,
    mut observer: Option<TriangleObserver<'_>>,
) -> WalkResult<Triangle> {
    let mut rec = Recorder::new(config.trace);
    let mut place = Place::Virtual(0);
    let mut steps: u128 = 0;
    let side = inst.side();
    let finish = |outcome, steps, rec: Recorder<Triangle>| WalkResult {
        outcome,
        steps,
        trace: rec.finish(),
    };
    loop {
        let next = match place {
            Place::Virtual(y) => {
                if y < 0 || y + 1 >= side {
                    return finish(Outcome::Failed(WalkError::VirtualLeavesDomain(y)), steps, rec);
                }
                let a = inst.color(GridPoint::new(0, y));
                let b = inst.color(GridPoint::new(0, y + 1));
                // Edges: p->(0,y), (0,y)->(0,y+1), (0,y+1)->p, with p colored 1.
                let c = [Color::One, a, b];
                match triangle_exit(&c) {
                    Ok(0) => Place::Virtual(y - 1),
                    Ok(1) => Place::Real(Triangle::lower(0, y)),
                    Ok(_) => Place::Virtual(y + 1),
                    Err(_) => {
                        return finish(
                            Outcome::Failed(WalkError::VirtualLeavesDomain(y)),
                            steps,
                            rec,
                        )
                    }
                }
            }
            Place::Real(t) => {
                let entry = TraceEntry {
                    step: steps,
                    cell: t,
                    label: t.kind.name(),
                };
                if let Some(obs) = observer.as_mut() {
                    obs(&entry);
                }
                rec.push(entry);
                match sperner_step(inst, t) {
                    Ok(SpernerStep::Solution(t)) => return finish(Outcome::Solution(t), steps, rec),
                    Ok(SpernerStep::Next(n)) => {
                        if n.anchor.x < 0 && n.anchor.y >= 0 {
                            // Crossing the left column back into the virtual strip.
                            Place::Virtual(n.anchor.y)
                        } else if triangle_in_sperner(inst, n) {
                            Place::Real(n)
                        } else {
                            return finish(
                                Outcome::Failed(WalkError::TriangleLeavesDomain { from: t, to: n }),
                                steps,
                                rec,
                            );
                        }
                    }
                    Err(e) => return finish(Outcome::Failed(e), steps, rec),
                }
            }
        };
        if steps >= config.cap {
            return finish(Outcome::CapExceeded, steps, rec);
        }
        steps += 1;
        place = next;
    }
}

/// Successor/predecessor graph over fixed-width node identifiers.
pub trait EolInstance {
    fn node_bits(&self) -> u32;
    fn successor(&self, u: u128) -> u128;
    fn predecessor(&self, v: u128) -> u128;

    /// Arc `u -> v` exists iff `S(u) = v`, `P(v) = u` and `u != v`.
    fn has_arc(&self, u: u128, v: u128) -> bool {
        u != v && self.successor(u) == v && self.predecessor(v) == u
    }
}

/// End-of-Line instance given by two closures.
pub struct FnEol<S, P> {
    bits: u32,
    s: S,
    p: P,
}

impl<S: Fn(u128) -> u128, P: Fn(u128) -> u128> FnEol<S, P> {
    pub fn new(bits: u32, s: S, p: P) -> Self {
        FnEol { bits, s, p }
    }
}

impl<S: Fn(u128) -> u128, P: Fn(u128) -> u128> EolInstance for FnEol<S, P> {
    fn node_bits(&self) -> u32 {
        self.bits
    }

    fn successor(&self, u: u128) -> u128 {
        (self.s)(u)
    }

    fn predecessor(&self, v: u128) -> u128 {
        (self.p)(v)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EolError {
    #[error("no sink reached within {0} arcs")]
    CapExceeded(u128),
    #[error("arc from node {0} returns to the source")]
    ReturnsToSource(u128),
    #[error("node {node} does not fit in {bits} bits")]
    NodeOutOfRange { node: u128, bits: u32 },
}

/// Follows arcs from node 0 to the first node without an outgoing arc.
pub fn eol_follow<E: EolInstance + ?Sized>(e: &E, cap: u128) -> Result<u128, EolError> {
    let bits = e.node_bits();
    let fits = |u: u128| bits >= 128 || u >> bits == 0;
    let mut u = 0u128;
    let mut followed = 0u128;
    loop {
        let v = e.successor(u);
        if v == u || e.predecessor(v) != u {
            return Ok(u);
        }
        if !fits(v) {
            return Err(EolError::NodeOutOfRange { node: v, bits });
        }
        if v == 0 {
            return Err(EolError::ReturnsToSource(u));
        }
        if followed >= cap {
            return Err(EolError::CapExceeded(cap));
        }
        followed += 1;
        u = v;
    }
}

/// The Brouwer walk as an End-of-Line graph.
///
/// A node is `(y << (m+1)) | (x << 1) | tag` for the square anchored at
/// `(x,y)`. The tag separates the two passages through a 1212 square: 0 when
/// entered moving right or up, 1 when entered moving left or down. Other
/// squares use tag 0 only. Node 0 is the start square.
pub struct BrouwerEol<B> {
    inst: B,
    m: u32,
}

pub fn brouwer_as_eol<B: BrouwerInstance>(inst: B) -> Result<BrouwerEol<B>, WalkError> {
    let m = inst.size_param();
    if m > 63 {
        return Err(WalkError::NodeSpaceTooLarge(m));
    }
    Ok(BrouwerEol { inst, m })
}

fn tag_of(d: Direction) -> u128 {
    match d {
        Direction::Right | Direction::Up => 0,
        Direction::Left | Direction::Down => 1,
    }
}

impl<B: BrouwerInstance> BrouwerEol<B> {
    pub fn instance(&self) -> &B {
        &self.inst
    }

    pub fn encode(&self, s: UnitSquare, tag: u128) -> u128 {
        ((s.anchor.y as u128) << (self.m + 1)) | ((s.anchor.x as u128) << 1) | tag
    }

    pub fn decode(&self, u: u128) -> (UnitSquare, u128) {
        let mask = (1u128 << self.m) - 1;
        let x = (u >> 1) & mask;
        let y = u >> (self.m + 1);
        (UnitSquare::new(x as Coord, y as Coord), u & 1)
    }

    /// Square and colors of a node, if it names a real node.
    fn node(&self, u: u128) -> Option<(UnitSquare, u128, [Color; 4])> {
        let (s, tag) = self.decode(u);
        let last = (1 as Coord) << self.m;
        if s.anchor.y >= last - 1 || s.anchor.x >= last - 1 {
            return None;
        }
        let c = s.corners().map(|p| self.inst.color(p));
        if tag == 1 && !is_1212(&c) {
            return None;
        }
        Some((s, tag, c))
    }

    fn tag_entering(&self, s: UnitSquare, d: Direction) -> u128 {
        let c = s.corners().map(|p| self.inst.color(p));
        if is_1212(&c) {
            tag_of(d)
        } else {
            0
        }
    }

    /// Move direction that entered the node, if the node has a predecessor edge.
    fn entry_direction(&self, tag: u128, c: &[Color; 4]) -> Option<Direction> {
        Direction::ALL.into_iter().find(|&d| {
            let (l, r) = UnitSquare::entry_edge(d);
            c[l] == Color::One && c[r] == Color::Two && (!is_1212(c) || tag_of(d) == tag)
        })
    }
}

impl<B: BrouwerInstance> EolInstance for BrouwerEol<B> {
    fn node_bits(&self) -> u32 {
        2 * self.m + 1
    }

    fn successor(&self, u: u128) -> u128 {
        let Some((s, tag, c)) = self.node(u) else { return u };
        if is_trichromatic(&c) {
            return u;
        }
        let prev = if is_1212(&c) {
            // Entered perpendicular to the exits; the tag fixes which way.
            let (l, r) = UnitSquare::exit_edge(Direction::Right);
            let horizontal_exits = c[l] == Color::One && c[r] == Color::Two;
            Some(match (horizontal_exits, tag) {
                (true, 0) => Direction::Up,
                (true, _) => Direction::Down,
                (false, 0) => Direction::Right,
                (false, _) => Direction::Left,
            })
        } else {
            None
        };
        let Some(d) = exit_direction(&c, prev) else { return u };
        let next = s.neighbor(d);
        if !square_in_domain(&self.inst, next) {
            return u;
        }
        self.encode(next, self.tag_entering(next, d))
    }

    fn predecessor(&self, v: u128) -> u128 {
        let Some((s, tag, c)) = self.node(v) else { return v };
        let Some(d) = self.entry_direction(tag, &c) else { return v };
        let prev = s.neighbor(d.opposite());
        if !square_in_domain(&self.inst, prev) {
            return v;
        }
        // A 1212 predecessor must have been entered so that its right turn is `d`.
        self.encode(prev, self.tag_entering(prev, d.ccw()))
    }
}
