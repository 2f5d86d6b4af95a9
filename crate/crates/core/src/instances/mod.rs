//! Problem instances, counting oracles and instance generators.

pub mod generators;
pub mod io;
pub mod maps;
pub mod oracle;
pub mod results;

pub use generators::*;
pub use maps::{Map1D, Map2D, PrefixCounts, TritMap1D};
pub use oracle::{CountingOracle, Ledger, Meter};
pub use results::{rect_rank, rect_size, segment_len, square_size, Rect, Segment, Square};
