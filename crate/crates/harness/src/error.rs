use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown workload '{0}' (valid: {list})", list = crate::workload::WorkloadId::valid_list())]
    UnknownWorkload(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{workload}: {source}")]
    Kernel {
        workload: String,
        #[source]
        source: xbench_core::Error,
    },

    #[error("statistics of an empty sample list")]
    EmptySamples,

    #[error("aggregation error: {0}")]
    Aggregation(String),

    #[error("unsupported result schema version {found}, expected {expected}")]
    SchemaVersion { found: u64, expected: u64 },

    #[error("invalid result file: {0}")]
    Schema(String),

    #[error("another workload is already running in this process")]
    Busy,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
