use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
    #[error("tetrahedron {tet} face {face} is glued to tetrahedron {target}, but there are only {count}")]
    TetOutOfRange {
        tet: usize,
        face: u8,
        target: usize,
        count: usize,
    },
    #[error("tetrahedron {tet} face {face} is not glued to anything")]
    UngluedFace { tet: usize, face: u8 },
    #[error("tetrahedron {tet} face {face} is glued to itself")]
    FaceGluedToItself { tet: usize, face: u8 },
    #[error("gluing of tetrahedron {tet} face {face} is not matched by the reverse gluing")]
    NonInvolutive { tet: usize, face: u8 },
    #[error("edge {{{a},{b}}} of tetrahedron {tet} is identified with itself in reverse")]
    InvalidEdge { tet: usize, a: u8, b: u8 },
    #[error("triangulation is not orientable")]
    NonOrientable,
    #[error("relabelling has {got} permutations for {expected} tetrahedra")]
    RelabellingLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Invalid(#[from] TriangulationError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    /// Line number of a syntax error, if this is one.
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } => Some(*line),
            ParseError::Invalid(_) => None,
        }
    }
}

/// Errors raised when an angle assignment or taut structure does not fit
/// the triangulation it is used with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no angle given for quad {0}")]
    MissingQuad(String),
    #[error("not a taut angle structure: {0}")]
    InvalidTaut(String),
    #[error("taut structure and colouring do not fit together: {0}")]
    Incompatible(String),
    #[error("edge {edge} has {count} pi angles, expected exactly 2")]
    PiCount { edge: usize, count: usize },
    #[error("not a veering colouring: {0}")]
    NotVeering(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("monodromy word is empty")]
    Empty,
    #[error("unexpected `{letter}` at position {position}; words use only R and L")]
    BadLetter { letter: char, position: usize },
    #[error("word `{0}` uses only one letter; it needs both R and L")]
    Degenerate(String),
    #[error("a word needs length at least 2, got {0}")]
    TooShort(usize),
}
