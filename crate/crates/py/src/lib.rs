//! Python bindings: `import tronetl`.

use std::future::Future;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyBytes;
use tron_etl::chain::{self, EventSignature, Hash32};
use tron_etl::contracts::{self, ContractKind, TxContext};
use tron_etl::pipeline::{self, RunConfig, SinkSpec, SourceSpec, Stat, StatParams};
use tron_etl::schema::{self, Dialect, SchemaManifest};
use tron_etl::sink::BlockRange;
use tron_etl::synth::{SynthConfig, SynthMode};

create_exception!(tronetl, EtlError, PyException);

fn etl_err(e: impl std::fmt::Display) -> PyErr {
    EtlError::new_err(e.to_string())
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands structured results over as plain Python objects.
fn to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(etl_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Runs a future on a fresh runtime with the GIL released.
fn block_on<T: Send>(py: Python<'_>, fut: impl Future<Output = T> + Send) -> PyResult<T> {
    py.detach(|| {
        let rt = tokio::runtime::Builder::new_multi_thread()
            .enable_all()
            .build()
            .map_err(etl_err)?;
        Ok(rt.block_on(fut))
    })
}

/// A 21-byte TRON account address.
#[pyclass(name = "Address", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyAddress(chain::Address);

#[pymethods]
impl PyAddress {
    #[new]
    fn new(raw: &[u8]) -> PyResult<Self> {
        chain::Address::from_bytes(raw).map(PyAddress).map_err(value_err)
    }

    #[staticmethod]
    fn from_base58(text: &str) -> PyResult<Self> {
        chain::Address::from_base58(text).map(PyAddress).map_err(value_err)
    }

    #[staticmethod]
    fn from_hex(text: &str) -> PyResult<Self> {
        chain::Address::from_hex(text).map(PyAddress).map_err(value_err)
    }

    fn to_base58(&self) -> String {
        self.0.to_base58()
    }

    fn to_hex(&self) -> String {
        self.0.to_hex()
    }

    fn __bytes__<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, self.0.as_bytes())
    }

    fn __str__(&self) -> String {
        self.0.to_base58()
    }

    fn __repr__(&self) -> String {
        format!("Address('{}')", self.0.to_base58())
    }
}

#[pyfunction]
fn encode_address(raw: &[u8]) -> PyResult<String> {
    chain::encode_address(raw).map_err(value_err)
}

#[pyfunction]
fn decode_address<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyBytes>> {
    let raw = chain::decode_address(text).map_err(value_err)?;
    Ok(PyBytes::new(py, &raw))
}

/// topic0 (hex) of a canonical event signature such as `Transfer(address,address,uint256)`.
#[pyfunction]
fn event_topic(signature: &str) -> PyResult<String> {
    Ok(EventSignature::new(signature).map_err(value_err)?.topic0().to_hex())
}

/// Canonical signature for a known topic0, else None.
#[pyfunction]
fn lookup_signature(topic0: &str) -> PyResult<Option<String>> {
    let hash = Hash32::from_hex(topic0).map_err(value_err)?;
    Ok(chain::lookup_signature(&hash).map(|s| s.canonical().to_owned()))
}

#[pyfunction]
fn classify<'py>(py: Python<'py>, type_name: &str) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &contracts::classify(type_name))
}

#[pyfunction]
fn contract_types() -> Vec<&'static str> {
    ContractKind::ALL.iter().map(|k| k.type_name()).collect()
}

/// Decodes one contract parameter into `{table, fallback, row}` where `row`
/// maps column names to values.
#[pyfunction]
#[pyo3(signature = (type_name, parameter, type_url = None))]
fn decode_parameter<'py>(
    py: Python<'py>,
    type_name: &str,
    parameter: &[u8],
    type_url: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let url = type_url
        .map(str::to_owned)
        .unwrap_or_else(|| format!("type.googleapis.com/protocol.{type_name}"));
    let ctx = TxContext {
        transaction_hash: Hash32::ZERO,
        block_num: 0,
    };
    let (row, error) = contracts::decode_or_fallback(type_name, &url, parameter, ctx);
    let table = row.table_name();
    let columns = schema::schema_for(table).map_err(etl_err)?.columns;
    let fields: serde_json::Map<String, serde_json::Value> = columns
        .iter()
        .zip(row.to_values())
        .map(|(c, v)| Ok((c.name.clone(), serde_json::to_value(v)?)))
        .collect::<Result<_, serde_json::Error>>()
        .map_err(etl_err)?;
    let out = serde_json::json!({
        "table": table,
        "fallback": row.is_fallback(),
        "error": error.map(|e| e.to_string()),
        "row": fields,
    });
    to_py(py, &out)
}

#[pyfunction]
fn table_names() -> Vec<String> {
    schema::table_names()
}

#[pyfunction]
#[pyo3(signature = (table, dialect = "generic"))]
fn ddl(table: &str, dialect: &str) -> PyResult<String> {
    let dialect: Dialect = dialect.parse().map_err(value_err)?;
    schema::ddl_for(table, dialect).map_err(value_err)
}

#[pyfunction]
fn schema_manifest(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &SchemaManifest::current())
}

/// Writes a synthetic fixture archive and returns its ground truth.
#[pyfunction]
#[pyo3(signature = (out, seed = 1, blocks = 100, txs = 10, witnesses = 4, all_types = false))]
fn generate_fixture<'py>(
    py: Python<'py>,
    out: std::path::PathBuf,
    seed: u64,
    blocks: u64,
    txs: u32,
    witnesses: u32,
    all_types: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let config = if all_types {
        SynthConfig::all_types(seed)
    } else {
        SynthConfig {
            seed,
            blocks,
            avg_txs_per_block: txs,
            witnesses,
            mode: SynthMode::Mixed,
        }
    };
    let chain = py.detach(|| {
        let chain = tron_etl::synth::generate(&config);
        chain.write_fixture(&out).map(|_| chain)
    });
    to_py(py, &chain.map_err(etl_err)?.truth)
}

fn endpoints(source: &str, sink: &str, retry_budget: u32) -> PyResult<(tron_etl::node::NodeClient, std::sync::Arc<dyn tron_etl::sink::Sink>)> {
    let client = source
        .parse::<SourceSpec>()
        .and_then(|s| s.client(retry_budget))
        .map_err(etl_err)?;
    let sink = sink.parse::<SinkSpec>().and_then(|s| s.open()).map_err(etl_err)?;
    Ok((client, sink))
}

/// Loads `[from_block, to_block]` and returns the run report.
#[pyfunction]
#[pyo3(signature = (source, sink, from_block, to_block, batch = 1000, window = 8, retry_budget = 5, restart = false))]
#[allow(clippy::too_many_arguments)]
fn run<'py>(
    py: Python<'py>,
    source: &str,
    sink: &str,
    from_block: u64,
    to_block: u64,
    batch: u64,
    window: usize,
    retry_budget: u32,
    restart: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let mut config = RunConfig::new(from_block, to_block).batch(batch).window(window);
    config.retry_budget = retry_budget;
    config.restart = restart;
    config.validate().map_err(etl_err)?;
    let (client, sink) = endpoints(source, sink, retry_budget)?;
    let report = block_on(py, async move { pipeline::run(&config, &client, sink.as_ref()).await })?;
    to_py(py, &report.map_err(etl_err)?)
}

#[pyfunction]
#[pyo3(signature = (source, sink, from_block, to_block, batch = 1000, window = 8))]
fn verify<'py>(
    py: Python<'py>,
    source: &str,
    sink: &str,
    from_block: u64,
    to_block: u64,
    batch: u64,
    window: usize,
) -> PyResult<Bound<'py, PyAny>> {
    if from_block > to_block {
        return Err(value_err(format!("from_block {from_block} is after to_block {to_block}")));
    }
    let (client, sink) = endpoints(source, sink, 5)?;
    let range = BlockRange::new(from_block, to_block);
    let report = block_on(py, async move {
        pipeline::verify(range, &client, sink.as_ref(), batch, window).await
    })?;
    to_py(py, &report.map_err(etl_err)?)
}

/// Computes a named statistic; returns a list of row dicts, or CSV text
/// with `format="csv"`.
#[pyfunction]
#[pyo3(signature = (sink, name, top = 50, address = None, by = "count", format = "json"))]
fn stats<'py>(
    py: Python<'py>,
    sink: &str,
    name: &str,
    top: usize,
    address: Option<String>,
    by: &str,
    format: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let stat: Stat = name.parse().map_err(value_err)?;
    let params = StatParams {
        top,
        address,
        by: by.parse().map_err(value_err)?,
        range: None,
    };
    let sink = sink.parse::<SinkSpec>().and_then(|s| s.open()).map_err(etl_err)?;
    let table = block_on(py, async move { pipeline::compute_stat(sink.as_ref(), stat, &params).await })?
        .map_err(etl_err)?;
    match format {
        "json" => to_py(py, &table.to_json()),
        "csv" => Ok(table.to_csv().into_pyobject(py)?.into_any()),
        other => Err(value_err(format!("format must be json or csv, got {other:?}"))),
    }
}

#[pymodule]
fn tronetl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EtlError", m.py().get_type::<EtlError>())?;
    m.add_class::<PyAddress>()?;
    m.add_function(wrap_pyfunction!(encode_address, m)?)?;
    m.add_function(wrap_pyfunction!(decode_address, m)?)?;
    m.add_function(wrap_pyfunction!(event_topic, m)?)?;
    m.add_function(wrap_pyfunction!(lookup_signature, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(contract_types, m)?)?;
    m.add_function(wrap_pyfunction!(decode_parameter, m)?)?;
    m.add_function(wrap_pyfunction!(table_names, m)?)?;
    m.add_function(wrap_pyfunction!(ddl, m)?)?;
    m.add_function(wrap_pyfunction!(schema_manifest, m)?)?;
    m.add_function(wrap_pyfunction!(generate_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(stats, m)?)?;
    Ok(())
}
