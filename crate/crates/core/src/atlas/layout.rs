//! Fixed constants of the R³ picture. Only the structure is meaningful; the
//! sizes and offsets are arbitrary choices.

/// Major radius of the B/D torus; also the half-width of the A/B square in x.
pub const TORUS_MAJOR_RADIUS: f64 = 1.0;
/// Minor radius of the B/D torus; also the half-width of the A/B square in y.
pub const TORUS_MINOR_RADIUS: f64 = 0.5;
/// Peak height of the two A/B sheets above and below the square.
pub const SHEET_HEIGHT: f64 = 0.6;
/// Radius of the four B/C circles.
pub const CIRCLE_RADIUS: f64 = 0.2;
/// Gap between a BB anchor and its B/C circle.
pub const CIRCLE_GAP: f64 = 0.1;

/// Orthographic camera for the SVG projection: azimuth about z, then elevation.
pub const CAMERA_AZIMUTH: f64 = -0.6;
pub const CAMERA_ELEVATION: f64 = 0.45;
