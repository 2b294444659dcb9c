//! Brouwer to Sperner: each grid point of `I` is spread over a 2x2 block of
//! the doubled triangular grid, plus the odd-odd point below-left of it.

use crate::grid::{
    BrouwerInstance, Color, Coloring, Coord, DomainShape, GridPoint, SpernerInstance, Triangle, UnitSquare,
};

/// Lazy Sperner instance of size `m + 2` built from a Brouwer instance of size `m`.
#[derive(Debug, Clone)]
pub struct ReducedSperner<B> {
    inner: B,
}

pub fn brouwer_to_sperner<B: BrouwerInstance>(inst: B) -> ReducedSperner<B> {
    ReducedSperner { inner: inst }
}

impl<B: BrouwerInstance> ReducedSperner<B> {
    pub fn inner(&self) -> &B {
        &self.inner
    }

    /// The point of `I` whose color `p` copies, if any.
    pub fn source(&self, p: GridPoint) -> Option<GridPoint> {
        let (x, y) = (p.x, p.y);
        let src = match (x % 2, y % 2) {
            (0, 0) => GridPoint::new(x / 2, y / 2),
            (1, 0) => GridPoint::new((x - 1) / 2, y / 2),
            (0, 1) => GridPoint::new(x / 2, (y - 1) / 2),
            _ => GridPoint::new((x + 1) / 2, (y + 1) / 2),
        };
        self.inner.in_domain(src).then_some(src)
    }
}

impl<B: BrouwerInstance> Coloring for ReducedSperner<B> {
    fn size_param(&self) -> u32 {
        self.inner.size_param() + 2
    }

    fn shape(&self) -> DomainShape {
        DomainShape::Triangular
    }

    fn color(&self, p: GridPoint) -> Color {
        let half: Coord = self.inner.side() * 2;
        if p.x == 0 {
            return if p.y == 0 { Color::Two } else { Color::One };
        }
        if p.y == 0 {
            return if p.x < half { Color::Two } else { Color::Zero };
        }
        self.source(p).map_or(Color::Zero, |s| self.inner.color(s))
    }
}

impl<B: BrouwerInstance> SpernerInstance for ReducedSperner<B> {}

/// The square of `I` that, doubled, contains triangle `t`.
pub fn sperner_solution_to_brouwer(t: Triangle) -> UnitSquare {
    UnitSquare::new(t.anchor.x.div_euclid(2), t.anchor.y.div_euclid(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{
        sperner_boundary_allows, trichromatic_square, trichromatic_triangle, DenseBrouwer, Region, TriangleKind,
    };
    use crate::walker::{brouwer_walk, sperner_walk};
    use proptest::prelude::*;

    fn sample_grid() -> DenseBrouwer {
        DenseBrouwer::from_rows(2, &["1000", "1120", "1210", "1222"]).unwrap()
    }

    fn at(s: &impl Coloring, x: Coord, y: Coord) -> Color {
        s.color(GridPoint::new(x, y))
    }

    #[test]
    fn doubling_examples() {
        let r = brouwer_to_sperner(sample_grid());
        assert_eq!(r.size_param(), 4);
        for (x, y) in [(2, 2), (3, 2), (2, 3), (1, 1)] {
            assert_eq!(at(&r, x, y), Color::Two, "({x},{y})");
        }
        assert_eq!(at(&r, 0, 5), Color::One);
        assert_eq!(at(&r, 0, 0), Color::Two);
        assert_eq!(at(&r, 7, 0), Color::Two);
        assert_eq!(at(&r, 8, 0), Color::Zero);
    }

    #[test]
    fn solution_map_examples() {
        assert_eq!(sperner_solution_to_brouwer(Triangle::upper(5, 3)), UnitSquare::new(2, 1));
        assert_eq!(sperner_solution_to_brouwer(Triangle::lower(5, 3)), UnitSquare::new(2, 1));
        assert_eq!(sperner_solution_to_brouwer(Triangle::lower(0, 0)), UnitSquare::new(0, 0));
    }

    #[test]
    fn sample_grid_solutions_map_to_its_square() {
        let base = sample_grid();
        let r = brouwer_to_sperner(&base);
        let s = r.side();
        let mut found = 0;
        for y in 0..s {
            for x in 0..s - y {
                for kind in [TriangleKind::Lower, TriangleKind::Upper] {
                    let t = Triangle { anchor: GridPoint::new(x, y), kind };
                    if t.vertices().iter().all(|&v| r.in_domain(v)) && trichromatic_triangle(&r, t).unwrap() {
                        found += 1;
                        let sq = sperner_solution_to_brouwer(t);
                        assert!(trichromatic_square(&base, sq).unwrap(), "{t}");
                    }
                }
            }
        }
        assert!(found >= 1);
        let tri = sperner_walk(&r, 1000).solution().unwrap();
        assert_eq!(Some(sperner_solution_to_brouwer(tri)), brouwer_walk(&base, 100).solution());
    }

    fn arb_brouwer() -> impl Strategy<Value = DenseBrouwer> {
        (2u32..=3).prop_flat_map(|m| {
            let side = 1usize << m;
            proptest::collection::vec(0u8..3, side * side).prop_map(move |cells| {
                let mut inst = DenseBrouwer::new(m, crate::grid::DenseGrid::filled(Region::full(m), Color::Zero))
                    .unwrap();
                for (i, c) in cells.into_iter().enumerate() {
                    let p = GridPoint::new((i % side) as Coord, (i / side) as Coord);
                    let c = crate::grid::boundary_color_brouwer(m, p)
                        .unwrap()
                        .unwrap_or(Color::ALL[c as usize]);
                    inst.set(p, c);
                }
                inst
            })
        })
    }

    proptest! {
        #[test]
        fn reduced_instances_respect_sperner_boundary(inst in arb_brouwer()) {
            let r = brouwer_to_sperner(&inst);
            let m = r.size_param();
            for p in Region::full(m).points().filter(|&p| r.in_domain(p)) {
                prop_assert!(sperner_boundary_allows(m, p, r.color(p)), "{p}");
            }
        }

        #[test]
        fn reduced_solutions_map_to_solutions(inst in arb_brouwer()) {
            let r = brouwer_to_sperner(&inst);
            let s = r.side();
            for y in 0..s {
                for x in 0..s - y {
                    for kind in [TriangleKind::Lower, TriangleKind::Upper] {
                        let t = Triangle { anchor: GridPoint::new(x, y), kind };
                        if t.vertices().iter().all(|&v| r.in_domain(v)) && trichromatic_triangle(&r, t).unwrap() {
                            prop_assert!(trichromatic_square(&inst, sperner_solution_to_brouwer(t)).unwrap(), "{}", t);
                        }
                    }
                }
            }
        }
    }
}
