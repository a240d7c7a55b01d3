pub mod classify;
pub mod flow;
pub mod integrate;
pub mod log_geodesics;
pub mod moduli;
pub mod normalize;
pub mod ricci;
pub mod sweep;
