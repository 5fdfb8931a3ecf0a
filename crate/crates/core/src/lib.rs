//! Combinatorics of taut and veering ideal triangulations.
//!
//! Triangulations are read from gluing lists, oriented, and then examined for
//! taut angle structures, veering colourings, taut coorientations and strict
//! angle structures. Angles are exact rationals measured in units of `pi`.

pub mod angle;
pub mod error;
pub mod lp;
pub mod perm;
pub mod ptb;
pub mod qmatch;
pub mod quad;
pub mod report;
pub mod taut;
pub mod triangulation;

pub use angle::{
    enumerate_taut_angle_structures, is_generalised_angle_structure, semi_angle_check,
    strict_angle_structure, AngleAssignment, AngleClass, StrictWitness, TautAngleStructure,
};
pub use error::{ParseError, StructureError, TriangulationError, WordError};
pub use perm::Perm4;
pub use ptb::{layered_ptb, random_word, Letter, MonodromyWord};
pub use qmatch::{
    build_q_system, classify_quads, diagonal_colour_check, formal_euler, strictness_cross_check,
    vertical_only_solution, QMatchingSystem, QSolution, QuadClass,
};
pub use quad::{tau, QuadId, QuadSlot, TauConvention};
pub use report::{census_dir, report_text, veering_report, CensusSummary, Report, ReportOptions};
pub use taut::{
    check_stacking_order, find_taut_structures, find_veering_colouring, one_sided_degrees, Colour,
    TautStructure, VeeringColouring,
};
pub use triangulation::{
    orient, parse_tgl, to_tgl, Corner, EdgeClass, Gluing, Oriented, QuadSequence, Triangulation,
    VertexLink,
};
