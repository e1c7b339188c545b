use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use super::PipelineError;
use crate::node::{FixtureSource, GrpcSource, NodeClient, RetryPolicy};
use crate::sink::{ClickHouseSink, LocalSink, Sink};
use crate::synth::{SynthConfig, SynthMode, generate};

/// Where blocks come from.
#[derive(Debug, Clone, PartialEq)]
pub enum SourceSpec {
    Grpc(String),
    Fixture(PathBuf),
    Synthetic(SynthConfig),
}

impl FromStr for SourceSpec {
    type Err = PipelineError;

    /// `grpc://host:port`, `http://host:port`, `fixture:DIR`,
    /// `synthetic:seed=N,blocks=M[,mode=all-types]`, or a bare directory.
    fn from_str(s: &str) -> Result<Self, PipelineError> {
        if let Some(rest) = s.strip_prefix("synthetic:").or(if s == "synthetic" { Some("") } else { None }) {
            let mut config = SynthConfig::default();
            for part in rest.split(',').filter(|p| !p.is_empty()) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| PipelineError::Config(format!("bad synthetic option {part:?}")))?;
                let num = || {
                    v.parse::<u64>()
                        .map_err(|_| PipelineError::Config(format!("bad number {v:?} for {k}")))
                };
                match k {
                    "seed" => config.seed = num()?,
                    "blocks" => config.blocks = num()?,
                    "txs" => config.avg_txs_per_block = num()? as u32,
                    "witnesses" => config.witnesses = num()? as u32,
                    "mode" => {
                        config.mode = match v {
                            "mixed" => SynthMode::Mixed,
                            "all-types" => SynthMode::AllTypes,
                            _ => return Err(PipelineError::Config(format!("unknown mode {v:?}"))),
                        }
                    }
                    _ => return Err(PipelineError::Config(format!("unknown synthetic option {k:?}"))),
                }
            }
            if config.mode == SynthMode::AllTypes {
                config.blocks = 2;
            }
            return Ok(SourceSpec::Synthetic(config));
        }
        if let Some(dir) = s.strip_prefix("fixture:") {
            return Ok(SourceSpec::Fixture(dir.into()));
        }
        if let Some(rest) = s.strip_prefix("grpc://") {
            return Ok(SourceSpec::Grpc(format!("http://{rest}")));
        }
        if s.starts_with("http://") || s.starts_with("https://") {
            return Ok(SourceSpec::Grpc(s.to_owned()));
        }
        let path = PathBuf::from(s);
        if path.is_dir() {
            return Ok(SourceSpec::Fixture(path));
        }
        if s.contains(':') && !s.contains('/') {
            return Ok(SourceSpec::Grpc(format!("http://{s}")));
        }
        Err(PipelineError::Config(format!(
            "source {s:?} is neither an endpoint nor a fixture directory"
        )))
    }
}

impl SourceSpec {
    pub fn client(&self, retry_budget: u32) -> Result<NodeClient, PipelineError> {
        let client = match self {
            SourceSpec::Grpc(url) => {
                NodeClient::new(GrpcSource::connect_lazy(url, Duration::from_secs(30))?)
            }
            SourceSpec::Fixture(dir) => NodeClient::new(FixtureSource::open(dir)?),
            SourceSpec::Synthetic(config) => NodeClient::new(generate(config).source()),
        };
        Ok(client.with_retry(RetryPolicy::with_budget(retry_budget)))
    }
}

/// Where rows go.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SinkSpec {
    ClickHouse(String),
    Local(PathBuf),
}

impl FromStr for SinkSpec {
    type Err = PipelineError;

    fn from_str(s: &str) -> Result<Self, PipelineError> {
        if s.starts_with("clickhouse://") || s.starts_with("http://") || s.starts_with("https://") {
            Ok(SinkSpec::ClickHouse(s.to_owned()))
        } else if s.is_empty() {
            Err(PipelineError::Config("empty sink".into()))
        } else {
            Ok(SinkSpec::Local(s.strip_prefix("local:").unwrap_or(s).into()))
        }
    }
}

impl SinkSpec {
    pub fn open(&self) -> Result<Arc<dyn Sink>, PipelineError> {
        Ok(match self {
            SinkSpec::ClickHouse(url) => Arc::new(ClickHouseSink::connect(url)?),
            SinkSpec::Local(dir) => Arc::new(LocalSink::open(dir)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources() {
        assert_eq!(
            "grpc://node:50051".parse::<SourceSpec>().unwrap(),
            SourceSpec::Grpc("http://node:50051".into())
        );
        assert_eq!(
            "node:50051".parse::<SourceSpec>().unwrap(),
            SourceSpec::Grpc("http://node:50051".into())
        );
        let SourceSpec::Synthetic(c) = "synthetic:seed=3,blocks=10".parse().unwrap() else {
            panic!("expected synthetic");
        };
        assert_eq!((c.seed, c.blocks), (3, 10));
        assert!("synthetic:colour=red".parse::<SourceSpec>().is_err());
        assert!("/definitely/not/here".parse::<SourceSpec>().is_err());
    }

    #[test]
    fn parses_sinks() {
        assert!(matches!("clickhouse://h/db".parse(), Ok(SinkSpec::ClickHouse(_))));
        assert_eq!("out".parse::<SinkSpec>().unwrap(), SinkSpec::Local("out".into()));
    }
}
