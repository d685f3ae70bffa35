use thiserror::Error;

/// Failures of the Clifford-algebra kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("ambient dimension n = {0} is below the minimum of 2")]
    DimensionTooSmall(usize),
    #[error("ambient dimension n = {0} exceeds the supported maximum of {max}", max = crate::clifford::MAX_DIMENSION)]
    DimensionTooLarge(usize),
    #[error("signature mismatch: left operand has n = {left}, right operand has n = {right}")]
    SignatureMismatch { left: usize, right: usize },
    #[error("expected a pure grade-{expected} element")]
    WrongGrade { expected: usize },
    #[error("element has mixed grades {0:?}")]
    MixedGrade(Vec<usize>),
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },
    #[error("not a unit versor (normalized residual {residual:e})")]
    NotUnitVersor { residual: f64 },
    #[error("not a unit vector: expected square -1, found {square}")]
    NotUnitVector { square: f64 },
    #[error("generator index {index} outside 1..={n}")]
    GeneratorIndex { index: usize, n: usize },
}

/// Failures of the Moebius-geometric dictionary.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("point vector is not null (relative residual {residual:e})")]
    NotNull { residual: f64 },
    #[error("zero vector does not represent a point")]
    ZeroVector,
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("plane normal must have unit length, got |u| = {0}")]
    NonUnitNormal(f64),
    #[error("coordinate vector has {found} entries, expected {expected}")]
    CoordinateCount { expected: usize, found: usize },
    #[error("sphere_through needs between 2 and {max} points, got {found}")]
    PointCount { max: usize, found: usize },
    #[error("points are degenerate: wedge vanishes (relative magnitude {residual:e})")]
    Degenerate { residual: f64 },
    #[error("cross ratio denominator vanishes (coincident point classes)")]
    DegenerateDenominator,
    #[error("blade is not pure")]
    NotPure,
    #[error("plane is spacelike: no real points")]
    NoRealPoints,
    #[error("plane is tangent to the light cone: a single point")]
    Tangent,
    #[error("circles are not distinct")]
    NotDistinct,
    #[error("circles do not lie on a common 2-sphere")]
    NotCospherical,
    #[error("points are not concircular (relative residual {residual:e})")]
    NotConcircular { residual: f64 },
    #[error("point pairs separate each other on their circle")]
    Separating,
    #[error("both edges of the quadruple are degenerate")]
    BothEdgesDegenerate,
    #[error("sphere dimension {m} not supported in ambient dimension {n}")]
    SphereDimension { m: usize, n: usize },
}

/// Failures of lattice construction, frame integration and net checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid lattice extents {0:?}")]
    Extents(Vec<usize>),
    #[error("field has {found} entries, lattice has {expected} vertices")]
    FieldLength { expected: usize, found: usize },
    #[error("data belongs to ambient dimension {found}, expected {expected}")]
    AmbientDimension { expected: usize, found: usize },
    #[error("axis {axis} out of range for a {m}-dimensional lattice")]
    Axis { axis: usize, m: usize },
    #[error("net carries no frames")]
    MissingFrames,
    #[error("missing edge data at {base:?} along axis {axis}")]
    MissingEdge { base: Vec<usize>, axis: usize },
    #[error("edge at {base:?} along axis {axis}: the two sphere orderings differ (residual {residual:e})")]
    EdgeAsymmetry { base: Vec<usize>, axis: usize, residual: f64 },
    #[error("degenerate edge: <e_0, s> or <e_inf, s> vanishes")]
    DegenerateEdge,
    #[error("degenerate face: a closed-form denominator vanishes")]
    DegenerateFace,
    #[error("Maurer-Cartan condition violated on face {base:?} axes {axes:?} (residual {residual:e})")]
    MaurerCartan { base: Vec<usize>, axes: (usize, usize), residual: f64 },
    #[error("inconsistent sphere signs on face {base:?} axes {axes:?} (residual {residual:e})")]
    InconsistentSign { base: Vec<usize>, axes: (usize, usize), residual: f64 },
    #[error("edge sphere at {base:?} along axis {axis} does not match the integrated frames (residual {residual:e})")]
    EdgeMismatch { base: Vec<usize>, axis: usize, residual: f64 },
    #[error("edge quadruple at {base:?} along axis {axis}: {source}")]
    EdgeRecovery { base: Vec<usize>, axis: usize, source: GeometryError },
    #[error("cell at {base:?} axes {axes:?} has too few generic vertices")]
    DegenerateCell { base: Vec<usize>, axes: Vec<usize> },
    #[error("congruence needs lattice dimension m = {m} below n = {n}")]
    CongruenceDimension { m: usize, n: usize },
    #[error("frame at {base:?} does not map e_0, e_inf to the given points (residual {residual:e})")]
    FrameMismatch { base: Vec<usize>, residual: f64 },
}

/// Failures of Miquel completion, lattice filling and seeding.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CompletionError {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("lattice dimension {0} is below 2")]
    Dimension(usize),
    #[error("initial data lacks the vertex {0:?}")]
    MissingVertex(Vec<usize>),
    #[error("subnets disagree at shared vertex {index:?} (distance {distance:e})")]
    SubnetConflict { index: Vec<usize>, distance: f64 },
    #[error("subnet for axes {axes:?} has {found} points, expected {expected}")]
    SubnetSize { axes: (usize, usize), expected: usize, found: usize },
    #[error("initial face at {base:?} axes {axes:?} is not concircular (residual {residual:e})")]
    InitialFace { base: Vec<usize>, axes: (usize, usize), residual: f64 },
    #[error("initial edge quadruple at {base:?} along axis {axis}: {source}")]
    EdgeQuadruple { base: Vec<usize>, axis: usize, source: GeometryError },
    #[error("face {0} of the 3-cell is not concircular (residual {1:e})")]
    CellFace(usize, f64),
    #[error("the seven points do not lie on a common 2-sphere (residual {0:e})")]
    NotCospherical(f64),
    #[error("both intersection candidates lie on the third circle: degenerate cell")]
    Ambiguous,
    #[error("completion circles do not meet in two points: {0}")]
    CirclesDisjoint(&'static str),
    #[error("no intersection candidate lies on the third circle (residual {0:e})")]
    Inconsistent(f64),
    #[error("completing vertex {index:?} of {} on axes {axes:?}: {source}", if *hat { "F̂" } else { "F" })]
    Cell { index: Vec<usize>, axes: [usize; 3], hat: bool, source: Box<CompletionError> },
    #[error("vertex {index:?} is determined inconsistently by 3-cells (discrepancy {discrepancy:e})")]
    Discrepancy { index: Vec<usize>, discrepancy: f64 },
    #[error("hypercube of dimension {k} with given {i}-cells is not supported")]
    HypercubeShape { k: usize, i: usize },
    #[error("{expected} circle parameters needed for given 1-cells, found {found}")]
    Parameters { expected: usize, found: usize },
    #[error("invalid seed parameter: {0}")]
    Seed(String),
}
