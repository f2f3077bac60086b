//! Protocol builders and verifiers on top of the simulators.

pub mod cluster;
pub mod entangler;
pub mod ghz_verify;
pub mod horseshoe;
pub mod teleport;

pub use cluster::{
    build_lcs2, build_logical_physical, cross_cz, ghz_fan, lcs2_graph, push_through_check, PushThroughReport,
};
pub use teleport::{encoded_teleport, teleport_register, HopOutcome, InjectedError, Stage, TeleportConfig, TeleportReport};
pub use entangler::{entangler_report, nine_gate_entangler, EntanglerReport};
pub use ghz_verify::{ghz_verify_logical, GhzVerifyReport};
pub use horseshoe::{build_horseshoe_logical, HorseshoeReport};
