//! Column spaces, piecewise translation maps and the continuity decision.

pub mod interval;
pub mod line;
pub mod map;
pub mod space;

pub use interval::{Interval, IntervalUnion, Q};
pub use line::{build_line_map, build_line_space, line_case, spectrum, LineRealization, TransferCase};
pub use map::{
    compose, invert, is_bijection, is_continuous, power, ContinuityReport, Discontinuity, MapError,
    Piece, PiecewiseMap, Side,
};
pub use space::{ColumnIndex, ColumnSpace};
