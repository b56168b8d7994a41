//! Theorem pipelines: the tangent-chord iteration between an inner conic `C`
//! and an outer conic `D`, Darboux completion of a gon inscribed in a curve,
//! and the porism pencil with its incidence certificate.
//!
//! Iteration is float-only. The linear-algebra certificates run on either
//! backend.

mod darboux;
mod iteration;
mod porism;

pub use darboux::{darboux_complete, DarbouxCompletion};
pub use iteration::{poncelet_step, step_back, trace_gon, ClosureReport, PonceletFlag, MATCH_TOL};
pub use porism::{
    check_member, incidence_count_on_d, porism_pencil, split_gamma, GammaSplit,
    IncidenceCertificate, LineIncidence, MemberCheck, PorismPencil,
};
