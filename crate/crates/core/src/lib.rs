//! Exact checks of identities linking partitions with distinct even parts
//! (ped partitions) to 4-regular partitions.
//!
//! Two independent routes are provided:
//!
//! - [`partition`] and [`bijection`] enumerate the restricted classes and run
//!   the explicit maps between them;
//! - [`qseries`] builds the generating functions as truncated integer power
//!   series.
//!
//! [`verify`] runs both routes and ties them together, producing
//! [`IdentityReport`]s. [`cli`] is the command-line front end.

pub mod bijection;
pub mod cli;
pub mod partition;
pub mod qseries;
pub mod report;
pub mod verify;

pub use bijection::{
    phi1, phi3, psi1, psi3, verify_bijection_layer, Bijection, BijectionError, CaseTag, MappedPartition,
};
pub use partition::{
    count_class, enumerate_all, enumerate_class, CountTable, Partition, PartitionClass, PartitionError,
};
pub use qseries::{
    gf_4regular, gf_de1, gf_de2, gf_de3, gf_ped, pochhammer, theorem_sides, Coeff, DeSum, Length,
    PochhammerSpec, Series, SeriesError, SeriesExpr, Sign, Theorem,
};
pub use report::{CheckedRange, IdentityId, IdentityReport, Method, Verdict, Witness};
pub use verify::{verify_all, verify_identity, Fault, Verifier, VerifyError};
