//! Cube molecules mounted in unit cells.
//!
//! The reference cube has edge `1/√2` and is centred at the origin with a
//! horizontal top face whose vertices sit at angles `0, π/2, π, 3π/2` and
//! radius `1/2`, coloured R, G, B, Y in that order. Antipodal vertices share
//! a colour. A molecule's orientation is `Rz(π/6) · g` with `g` a rotation
//! of the reference cube onto itself. Rotations are counterclockwise seen
//! from the positive end of their axis.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};
use std::fmt;

use nalgebra::{Matrix3, Point2, Rotation3, Vector3};

use crate::coloring::{Color, ColorPermutation};

pub const EDGE: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Rotation of every molecule about the vertical axis relative to the
/// reference cube.
pub const MOUNT_ANGLE: f64 = FRAC_PI_6;

const TOL: f64 = 1e-9;

/// Colours of the reference top-face vertices at angles `k·π/2`.
const REFERENCE_COLORS: [Color; 4] = [Color::R, Color::G, Color::B, Color::Y];

fn rz(angle: f64) -> Matrix3<f64> {
    *Rotation3::from_axis_angle(&Vector3::z_axis(), angle).matrix()
}

fn rx(angle: f64) -> Matrix3<f64> {
    *Rotation3::from_axis_angle(&Vector3::x_axis(), angle).matrix()
}

fn mount() -> Matrix3<f64> {
    rz(MOUNT_ANGLE)
}

/// The eight vertices of the reference cube with their colours.
fn reference_vertices() -> [(Vector3<f64>, Color); 8] {
    let h = EDGE / 2.0;
    std::array::from_fn(|k| {
        let angle = (k % 4) as f64 * FRAC_PI_2;
        let v = Vector3::new(0.5 * angle.cos(), 0.5 * angle.sin(), h);
        let v = if k < 4 { v } else { -v };
        (v, REFERENCE_COLORS[k % 4])
    })
}

/// The 24 rotations of the reference cube, identity first.
pub fn cube_group() -> Vec<Matrix3<f64>> {
    let r45 = rz(FRAC_PI_4);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::with_capacity(24);
    for p in perms {
        for signs in 0..8u8 {
            let mut s = Matrix3::zeros();
            for row in 0..3 {
                s[(row, p[row])] = if signs >> row & 1 == 0 { 1.0 } else { -1.0 };
            }
            if s.determinant() > 0.0 {
                out.push(r45 * s * r45.transpose());
            }
        }
    }
    out
}

/// The 24 allowed molecule orientations, `Rz(π/6) · g`.
pub fn orientations() -> Vec<Matrix3<f64>> {
    cube_group().into_iter().map(|g| mount() * g).collect()
}

/// Index of the allowed orientation nearest to `m`, with the max-entry
/// distance to it.
pub fn nearest_orientation(m: &Matrix3<f64>) -> (usize, f64) {
    orientations()
        .iter()
        .map(|o| (m - o).abs().max())
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("group is non-empty")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("orientation is {distance:.3e} away from every allowed orientation")]
    NotAllowed { distance: f64 },
    #[error("molecules are not centred on a 2x2 block of unit cells")]
    CellLayout,
    #[error("|{segment}| = {found} but {expected} was expected")]
    TranscriptionMismatch {
        segment: &'static str,
        expected: f64,
        found: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Molecule {
    pub center: Point2<f64>,
    pub orientation: Matrix3<f64>,
}

impl Molecule {
    /// Molecule with the `k`-th allowed orientation.
    pub fn new(center: (f64, f64), k: usize) -> Self {
        Molecule {
            center: Point2::new(center.0, center.1),
            orientation: orientations()[k],
        }
    }

    pub fn with_orientation(center: (f64, f64), orientation: Matrix3<f64>) -> Self {
        Molecule {
            center: Point2::new(center.0, center.1),
            orientation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectedVertex {
    pub point: Point2<f64>,
    pub color: Color,
}

/// Distances `(p, q)` from a projected vertex to the two nearest cell
/// edges.
pub fn mount_offsets() -> (f64, f64) {
    (0.5 - 0.5 * MOUNT_ANGLE.cos(), 0.5 - 0.5 * MOUNT_ANGLE.sin())
}

/// The top face seen from above, vertex `k` at angle `π/6 + k·π/2`.
pub fn top_face_projection(m: &Molecule) -> Result<[ProjectedVertex; 4], GeometryError> {
    let (_, distance) = nearest_orientation(&m.orientation);
    if distance > TOL {
        return Err(GeometryError::NotAllowed { distance });
    }
    let mut top: Vec<(f64, ProjectedVertex)> = reference_vertices()
        .into_iter()
        .map(|(v, color)| (m.orientation * v, color))
        .filter(|(v, _)| v.z > 0.0)
        .map(|(v, color)| {
            let slot = (v.y.atan2(v.x) - MOUNT_ANGLE).rem_euclid(2.0 * PI);
            let point = Point2::new(m.center.x + v.x, m.center.y + v.y);
            (slot, ProjectedVertex { point, color })
        })
        .collect();
    // Slot angles are multiples of π/2 up to rounding; 2π wraps to 0.
    top.sort_by_key(|a| slot_key(a.0));
    Ok(std::array::from_fn(|k| top[k].1))
}

fn slot_key(angle: f64) -> usize {
    (angle / FRAC_PI_2).round() as usize % 4
}

/// Top-face colours by vertex slot.
pub fn top_face_colors(m: &Molecule) -> Result<[Color; 4], GeometryError> {
    top_face_projection(m).map(|vs| vs.map(|v| v.color))
}

/// The three rotations of the phase shift, applied in this order to the
/// reference cube: `Rz(π/6 + π)`, `Rx(π)` about the horizontal left-right
/// axis, then `Rz(−π/6)`.
pub fn phase_shift_rotation() -> Matrix3<f64> {
    phase_shift_with(PI)
}

/// The phase shift with an arbitrary angle for the middle rotation.
pub fn phase_shift_with(tilt: f64) -> Matrix3<f64> {
    rz(-FRAC_PI_6) * rx(tilt) * rz(FRAC_PI_6 + PI)
}

/// Colour permutation carrying the identity molecule's top face to the
/// phase-shifted one, read cyclically from the R vertex.
pub fn phase_shift_permutation() -> ColorPermutation {
    let before = top_face_colors(&Molecule::new((0.0, 0.0), 0)).expect("identity is allowed");
    let after = top_face_colors(&Molecule::with_orientation((0.0, 0.0), phase_shift_rotation()))
        .expect("phase shift lands on an allowed orientation");
    induced_permutation(before, after)
}

fn induced_permutation(before: [Color; 4], after: [Color; 4]) -> ColorPermutation {
    let rot = |f: [Color; 4]| {
        let k = f.iter().position(|&c| c == Color::R).expect("R is on every face");
        std::array::from_fn::<Color, 4, _>(|s| f[(k + s) % 4])
    };
    let (before, after) = (rot(before), rot(after));
    let mut map = Color::ALL;
    for s in 0..4 {
        map[before[s].index()] = after[s];
    }
    ColorPermutation(map)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FreeRotation {
    /// Space diagonal of the molecule.
    pub diagonal: f64,
    /// Largest edge of a cube that turns freely inside a unit cell.
    pub threshold_edge: f64,
    pub can_rotate: bool,
}

pub fn free_rotation_bound() -> FreeRotation {
    let diagonal = EDGE * 3f64.sqrt();
    let threshold_edge = 1.0 / 3f64.sqrt();
    FreeRotation {
        diagonal,
        threshold_edge,
        can_rotate: diagonal <= 1.0 && EDGE <= threshold_edge,
    }
}

impl fmt::Display for FreeRotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "diagonal {:.6}, free-rotation edge bound {:.6}: {}",
            self.diagonal,
            self.threshold_edge,
            if self.can_rotate { "rotates freely" } else { "cannot rotate freely" }
        )
    }
}

/// Labelled points of four molecules on a 2x2 block of cells, ordered
/// SW, SE, NW, NE. `a` is the SW vertex nearest the shared corner.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourCellReport {
    pub a: ProjectedVertex,
    pub b: ProjectedVertex,
    pub c: ProjectedVertex,
    pub d: ProjectedVertex,
    pub e: ProjectedVertex,
    /// Sides `(horizontal, vertical)` of the rectangle spanned by `a` and
    /// the shared corner.
    pub rectangle: (f64, f64),
    pub ab: f64,
    pub ac: f64,
    pub ad: f64,
    pub ae: f64,
}

/// Four molecules in one orientation; no other assignment keeps equal
/// colours at distance 1 or more.
pub fn four_cell_configuration() -> [Molecule; 4] {
    [(0.5, 0.5), (1.5, 0.5), (0.5, 1.5), (1.5, 1.5)].map(|c| Molecule::new(c, 0))
}

pub fn four_cell_distances(config: &[Molecule; 4]) -> Result<FourCellReport, GeometryError> {
    let sw = config[0].center;
    let expected = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
    for (m, (dx, dy)) in config.iter().zip(expected) {
        if (m.center.x - sw.x - dx).abs() > TOL || (m.center.y - sw.y - dy).abs() > TOL {
            return Err(GeometryError::CellLayout);
        }
    }
    let faces = [
        top_face_projection(&config[0])?,
        top_face_projection(&config[1])?,
        top_face_projection(&config[2])?,
        top_face_projection(&config[3])?,
    ];
    let (a, b, c, d, e) = (faces[0][0], faces[1][2], faces[3][2], faces[2][0], faces[1][0]);
    let corner = Point2::new(sw.x + 0.5, sw.y + 0.5);
    let dist = |u: ProjectedVertex, v: ProjectedVertex| (u.point - v.point).norm();
    let report = FourCellReport {
        a,
        b,
        c,
        d,
        e,
        rectangle: ((corner.x - a.point.x).abs(), (corner.y - a.point.y).abs()),
        ab: dist(a, b),
        ac: dist(a, c),
        ad: dist(a, d),
        ae: dist(a, e),
    };
    let short = (2.0 - 3f64.sqrt()).sqrt();
    for (segment, expected, found) in [
        ("ab", short, report.ab),
        ("ac", short, report.ac),
        ("ad", 1.0, report.ad),
        ("ae", 1.0, report.ae),
    ] {
        if (found - expected).abs() > TOL {
            return Err(GeometryError::TranscriptionMismatch {
                segment,
                expected,
                found,
            });
        }
    }
    Ok(report)
}

/// Smallest distance between equally coloured top-face vertices of
/// different molecules; infinite for fewer than two molecules.
pub fn min_same_color_distance(config: &[Molecule]) -> Result<f64, GeometryError> {
    let faces = config
        .iter()
        .map(top_face_projection)
        .collect::<Result<Vec<_>, _>>()?;
    let mut best = f64::INFINITY;
    for (k, f) in faces.iter().enumerate() {
        for g in &faces[k + 1..] {
            for u in f {
                for v in g.iter().filter(|v| v.color == u.color) {
                    best = best.min((u.point - v.point).norm());
                }
            }
        }
    }
    Ok(best)
}

/// The same-colour distance rule.
pub fn satisfies_distance_rule(config: &[Molecule]) -> Result<bool, GeometryError> {
    min_same_color_distance(config).map(|d| d >= 1.0 - TOL)
}
