use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("encoding error: tuple has {got} bits, expected width {expected}")]
    Encoding { expected: u32, got: usize },

    #[error("bit width {width} is not allowed (must be between 1 and {cap})")]
    Width { width: u32, cap: u32 },

    #[error("truth table has {got} entries, expected 2^{arity_in} = {expected}")]
    TableLength {
        arity_in: u32,
        expected: usize,
        got: usize,
    },

    #[error("truth table entry at index {index} is {value}, which does not fit in {arity_out} bits")]
    EntryOutOfRange {
        index: usize,
        value: u32,
        arity_out: u32,
    },

    #[error("input {x} is outside the domain of a function on {arity} bits")]
    Domain { x: u32, arity: u32 },

    #[error("cannot compose: inner function produces {inner_out} bits, outer function expects {outer_in}")]
    Compose { inner_out: u32, outer_in: u32 },

    #[error("pipeline needs at least two registers and one step")]
    EmptyPipeline,

    #[error("pipeline has {registers} registers but {steps} steps (need registers = steps + 1)")]
    StepCount { registers: usize, steps: usize },

    #[error("step {step} maps {got_in} -> {got_out} bits, but registers require {want_in} -> {want_out}")]
    StepArity {
        step: usize,
        want_in: u32,
        want_out: u32,
        got_in: u32,
        got_out: u32,
    },

    #[error("total width {total} exceeds the cap of {cap} bits")]
    TotalWidth { total: u32, cap: u32 },

    #[error("step index {step} out of range 1..={steps}")]
    StepIndex { step: usize, steps: usize },

    #[error("register index {register} out of range (pipeline has {registers} registers)")]
    RegisterIndex { register: usize, registers: usize },

    #[error("value {value} does not fit in register {register} of width {width}")]
    RegisterValue { register: usize, value: u32, width: u32 },

    #[error("expected {expected} register values, got {got}")]
    RegisterCount { expected: usize, got: usize },

    #[error("mapping is not a bijection of 0..{size}: {reason}")]
    NotBijection { size: usize, reason: String },

    #[error("width mismatch: {left} bits vs {right} bits")]
    WidthMismatch { left: u32, right: u32 },

    #[error("generator set is empty")]
    NoGenerators,

    #[error("group enumeration exceeded the element cap of {cap}")]
    ElementCap { cap: usize },

    #[error("element index {index} out of range (group has {order} elements)")]
    ElementIndex { index: usize, order: usize },

    #[error("a Coxeter presentation needs at least {min} generators, got {got}")]
    PresentationSize { min: usize, got: usize },

    #[error("relator references generator {generator}, but there are only {count}")]
    RelatorSymbol { generator: usize, count: usize },

    #[error("expected {expected} generators for this presentation, got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("state precondition violated: {0}")]
    State(String),

    #[error("unknown generator symbol {symbol:?}")]
    Symbol { symbol: String },

    #[error("malformed pipeline document: {0}")]
    Parse(String),

    #[error("unsupported format_version {found} (this build reads version {supported})")]
    FormatVersion { found: u32, supported: u32 },

    #[error("invalid hex string {text:?} in function {function}, table index {index}")]
    Hex {
        function: usize,
        index: usize,
        text: String,
    },
}
