//! Text formats: PD code, JSON documents, canonical checksums, the builtin
//! corpus and trace files.

pub mod canonical;
pub mod corpus;
pub mod doc;
pub mod pd;

pub use canonical::canonical_checksum;
pub use doc::{serialize, ColoredDiagramDoc, DocError, Metadata, TraceFile};
pub use pd::{parse_pd, to_pd, PdError};
