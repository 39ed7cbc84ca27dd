//! Static analysis of BDI-style plan libraries: summary information for event
//! goals, a ground reference semantics, and abstract planning over the
//! summaries.

pub mod dsl;
pub mod logic;
pub mod summarize;
pub mod oracle;
pub mod abstraction;
pub mod cli;
pub mod synth;
