//! Pulse-level operations on a chain of wells and the CNOT sequence between
//! the first and last qubit.

mod ops;
mod register;
mod sequence;
mod timing;

pub use ops::{op_cm_swap, op_m, op_sn, op_v1, v1_phase, Direction, GateKind, GateOp};
pub use register::WellRegister;
pub use sequence::{
    cnot_between_ends, cnot_target, compose_cnot, noisy_cnot_fidelity, restricted_matrix, verify_cnot,
    CnotVerification,
    GateSequence, NoisyGateReport, ProtocolTiming, DENSE_LIMIT, NOISY_LIMIT,
};
pub use timing::{swap_duration, timing_budget, TimingBudget};
