//! Block sources: the node gRPC client and recorded fixtures.

mod client;
pub mod fault;
mod fixture;
pub mod grpc;
mod message;
mod retry;
mod source;

pub use client::{BlockPair, HEAD_CACHE_TTL, NodeClient};
pub use fixture::{
    FixtureArchive, FixtureError, FixtureManifest, FixtureSource, FixtureWriter, MANIFEST_FILE,
    block_file,
    info_file, record, write_archive,
};
pub use grpc::{GrpcSource, WalletServer};
pub use message::{RawBlockMessage, RawInfoMessage};
pub use retry::RetryPolicy;
pub use source::{BlockSource, MemorySource, SourceError};
