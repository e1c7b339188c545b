use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use async_trait::async_trait;

use super::rowfile::{self, RowFileHeader};
use super::{BlockRange, Checkpoint, Sink, SinkError, TableCount, now_ms};
use crate::schema::{Row, TableSchema, Value, schema_for, table_names};

const CHECKPOINT_DIR: &str = "_checkpoints";
const EXT: &str = "rows";

/// A directory of row files, `<table>/<first>-<last>.rows`. Writes are
/// atomic renames; duplicates are resolved on read by primary key with the
/// highest sequence number winning.
#[derive(Clone)]
pub struct LocalSink {
    inner: Arc<Inner>,
}

struct Inner {
    root: PathBuf,
    schemas: HashMap<String, TableSchema>,
    sequence: Mutex<u64>,
    table_locks: HashMap<String, Mutex<()>>,
    checkpoint_lock: Mutex<()>,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> SinkError + '_ {
    move |e| SinkError::StoreUnavailable(format!("{}: {e}", path.display()))
}

fn corrupt(path: &Path, e: impl ToString) -> SinkError {
    SinkError::Corrupt {
        path: path.display().to_string(),
        reason: e.to_string(),
    }
}

fn parse_file_name(name: &str) -> Option<BlockRange> {
    let stem = name.strip_suffix(".rows")?;
    let (a, b) = stem.split_once('-')?;
    let (first, last) = (a.parse().ok()?, b.parse().ok()?);
    (first <= last).then(|| BlockRange::new(first, last))
}

fn file_name(range: BlockRange) -> String {
    format!("{}-{}.{EXT}", range.first, range.last)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), SinkError> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes).map_err(io_err(&tmp))?;
    let f = fs::File::open(&tmp).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

struct Loaded {
    path: PathBuf,
    range: BlockRange,
    header: RowFileHeader,
    rows: Vec<Row>,
}

impl Inner {
    fn schema(&self, table: &str) -> Result<&TableSchema, SinkError> {
        match self.schemas.get(table) {
            Some(s) => Ok(s),
            None => Err(schema_for(table).unwrap_err().into()),
        }
    }

    fn table_dir(&self, table: &str) -> PathBuf {
        self.root.join(table)
    }

    fn files(&self, table: &str) -> Result<Vec<(PathBuf, BlockRange)>, SinkError> {
        let dir = self.table_dir(table);
        let mut out = Vec::new();
        let entries = match fs::read_dir(&dir) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(io_err(&dir)(e)),
        };
        for entry in entries {
            let entry = entry.map_err(io_err(&dir))?;
            let name = entry.file_name();
            if let Some(range) = name.to_str().and_then(parse_file_name) {
                out.push((entry.path(), range));
            }
        }
        out.sort_by_key(|(_, r)| *r);
        Ok(out)
    }

    fn load(&self, table: &str, filter: Option<BlockRange>) -> Result<Vec<Loaded>, SinkError> {
        let schema = self.schema(table)?;
        let mut loaded = Vec::new();
        for (path, range) in self.files(table)? {
            if filter.is_some_and(|f| !f.overlaps(&range)) {
                continue;
            }
            let bytes = fs::read(&path).map_err(io_err(&path))?;
            let file = rowfile::decode(&bytes).map_err(|e| corrupt(&path, e))?;
            if file.header.columns != schema.columns {
                return Err(corrupt(&path, "column layout differs from the table schema"));
            }
            loaded.push(Loaded {
                path,
                range,
                header: file.header,
                rows: file.rows,
            });
        }
        loaded.sort_by_key(|l| l.header.sequence);
        Ok(loaded)
    }

    fn next_sequence(&self) -> u64 {
        let mut seq = self.sequence.lock().expect("sequence lock");
        *seq += 1;
        *seq
    }

    fn insert(&self, table: &str, range: BlockRange, rows: &[Row]) -> Result<u64, SinkError> {
        let schema = self.schema(table)?;
        let block_col = schema.column_index("blockNum");
        for row in rows {
            schema.check_row(row).map_err(|reason| SinkError::SchemaMismatch {
                table: table.to_owned(),
                reason,
            })?;
            if let Some(b) = block_col.and_then(|i| row[i].as_u64())
                && !range.contains(b) {
                    return Err(SinkError::SchemaMismatch {
                        table: table.to_owned(),
                        reason: format!("row for block {b} outside batch {range}"),
                    });
                }
        }
        let _guard = self.table_locks[table].lock().expect("table lock");
        let dir = self.table_dir(table);
        fs::create_dir_all(&dir).map_err(io_err(&dir))?;
        let header = RowFileHeader {
            sequence: self.next_sequence(),
            table: table.to_owned(),
            first_block: range.first,
            last_block: range.last,
            columns: schema.columns.clone(),
            row_count: rows.len() as u64,
        };
        write_atomic(&dir.join(file_name(range)), &rowfile::encode(&header, rows))?;
        Ok(rows.len() as u64)
    }

    /// Latest version of each key, ordered by key.
    fn dedup(&self, table: &str, loaded: &[Loaded], filter: Option<BlockRange>) -> Result<BTreeMap<Vec<Value>, Row>, SinkError> {
        let schema = self.schema(table)?;
        let pk = schema.primary_key_indices();
        let block_col = schema.column_index("blockNum");
        let mut rows = BTreeMap::new();
        for file in loaded {
            for row in &file.rows {
                if let (Some(f), Some(i)) = (filter, block_col)
                    && !row[i].as_u64().is_some_and(|b| f.contains(b)) {
                        continue;
                    }
                let key: Vec<Value> = pk.iter().map(|&i| row[i].clone()).collect();
                rows.insert(key, row.clone());
            }
        }
        Ok(rows)
    }

    fn optimize(&self, table: &str) -> Result<(), SinkError> {
        let schema = self.schema(table)?;
        let _guard = self.table_locks[table].lock().expect("table lock");
        let loaded = self.load(table, None)?;
        // Files whose ranges touch or overlap form one run and merge into
        // one file, so coverage gaps stay visible.
        let mut by_range: Vec<&Loaded> = loaded.iter().collect();
        by_range.sort_by_key(|l| l.range);
        let mut runs: Vec<Vec<&Loaded>> = Vec::new();
        for l in by_range {
            match runs.last_mut() {
                Some(run)
                    if run.iter().map(|r| r.range.last).max().unwrap_or(0).saturating_add(1)
                        >= l.range.first =>
                {
                    run.push(l);
                }
                _ => runs.push(vec![l]),
            }
        }
        for run in runs {
            if run.len() == 1 {
                continue;
            }
            let range = BlockRange::new(
                run.iter().map(|l| l.range.first).min().unwrap(),
                run.iter().map(|l| l.range.last).max().unwrap(),
            );
            let mut ordered: Vec<&Loaded> = run.clone();
            ordered.sort_by_key(|l| l.header.sequence);
            let pk = schema.primary_key_indices();
            let mut merged = BTreeMap::new();
            for file in &ordered {
                for row in &file.rows {
                    merged.insert(pk.iter().map(|&i| row[i].clone()).collect::<Vec<_>>(), row.clone());
                }
            }
            let rows: Vec<Row> = merged.into_values().collect();
            let header = RowFileHeader {
                sequence: self.next_sequence(),
                table: table.to_owned(),
                first_block: range.first,
                last_block: range.last,
                columns: schema.columns.clone(),
                row_count: rows.len() as u64,
            };
            let target = self.table_dir(table).join(file_name(range));
            write_atomic(&target, &rowfile::encode(&header, &rows))?;
            for file in run {
                if file.path != target {
                    fs::remove_file(&file.path).map_err(io_err(&file.path))?;
                }
            }
        }
        Ok(())
    }

    fn checkpoint_path(&self, group: &str) -> PathBuf {
        self.root.join(CHECKPOINT_DIR).join(format!("{group}.json"))
    }

    fn checkpoint_read(&self, group: &str) -> Result<Option<Checkpoint>, SinkError> {
        let path = self.checkpoint_path(group);
        match fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes)
                .map(Some)
                .map_err(|e| corrupt(&path, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io_err(&path)(e)),
        }
    }

    fn checkpoint_advance(&self, group: &str, block: u64) -> Result<Checkpoint, SinkError> {
        let _guard = self.checkpoint_lock.lock().expect("checkpoint lock");
        if let Some(current) = self.checkpoint_read(group)?
            && current.last_loaded_block >= block {
                return Ok(current);
            }
        let cp = Checkpoint {
            table_group: group.to_owned(),
            last_loaded_block: block,
            updated_at: now_ms(),
        };
        let path = self.checkpoint_path(group);
        let dir = path.parent().expect("checkpoint dir");
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        write_atomic(&path, &serde_json::to_vec_pretty(&cp).expect("checkpoint serializes"))?;
        Ok(cp)
    }

    fn count(&self, table: &str, range: Option<BlockRange>) -> Result<TableCount, SinkError> {
        let loaded = self.load(table, range)?;
        let schema = self.schema(table)?;
        let block_col = schema.column_index("blockNum");
        let physical = loaded
            .iter()
            .flat_map(|l| &l.rows)
            .filter(|row| match (range, block_col) {
                (Some(r), Some(i)) => row[i].as_u64().is_some_and(|b| r.contains(b)),
                _ => true,
            })
            .count() as u64;
        let logical = self.dedup(table, &loaded, range)?.len() as u64;
        Ok(TableCount { physical, logical })
    }
}

impl LocalSink {
    /// Opens (creating if needed) a sink rooted at `root`.
    pub fn open(root: impl AsRef<Path>) -> Result<Self, SinkError> {
        let root = root.as_ref().to_owned();
        fs::create_dir_all(&root).map_err(io_err(&root))?;
        let schemas: HashMap<String, TableSchema> = crate::schema::registry()
            .into_iter()
            .map(|s| (s.name.clone(), s))
            .collect();
        let table_locks = table_names().into_iter().map(|t| (t, Mutex::new(()))).collect();
        let inner = Inner {
            root,
            schemas,
            sequence: Mutex::new(0),
            table_locks,
            checkpoint_lock: Mutex::new(()),
        };
        let mut max_seq = 0;
        for table in table_names() {
            for (path, _) in inner.files(&table)? {
                let bytes = fs::read(&path).map_err(io_err(&path))?;
                let header = rowfile::decode_header_only(&bytes).map_err(|e| corrupt(&path, e))?;
                max_seq = max_seq.max(header.sequence);
            }
        }
        *inner.sequence.lock().expect("sequence lock") = max_seq;
        Ok(LocalSink {
            inner: Arc::new(inner),
        })
    }

    pub fn root(&self) -> &Path {
        &self.inner.root
    }

    /// Row files currently stored for `table`.
    pub fn files(&self, table: &str) -> Result<Vec<(PathBuf, BlockRange)>, SinkError> {
        self.inner.schema(table)?;
        self.inner.files(table)
    }

    async fn blocking<T, F>(&self, f: F) -> Result<T, SinkError>
    where
        T: Send + 'static,
        F: FnOnce(&Inner) -> Result<T, SinkError> + Send + 'static,
    {
        let inner = self.inner.clone();
        tokio::task::spawn_blocking(move || f(&inner))
            .await
            .map_err(|e| SinkError::StoreUnavailable(format!("sink worker failed: {e}")))?
    }
}

#[async_trait]
impl Sink for LocalSink {
    fn describe(&self) -> String {
        format!("local:{}", self.inner.root.display())
    }

    async fn ensure_tables(&self) -> Result<(), SinkError> {
        self.blocking(|inner| {
            for table in inner.schemas.keys() {
                let dir = inner.table_dir(table);
                fs::create_dir_all(&dir).map_err(io_err(&dir))?;
            }
            Ok(())
        })
        .await
    }

    async fn insert_batch(&self, table: &str, range: BlockRange, rows: &[Row]) -> Result<u64, SinkError> {
        let table = table.to_owned();
        let rows = rows.to_vec();
        self.blocking(move |inner| inner.insert(&table, range, &rows)).await
    }

    async fn optimize(&self, table: &str) -> Result<(), SinkError> {
        let table = table.to_owned();
        self.blocking(move |inner| inner.optimize(&table)).await
    }

    async fn checkpoint_read(&self, group: &str) -> Result<Option<Checkpoint>, SinkError> {
        let group = group.to_owned();
        self.blocking(move |inner| inner.checkpoint_read(&group)).await
    }

    async fn checkpoint_advance(&self, group: &str, block: u64) -> Result<Checkpoint, SinkError> {
        let group = group.to_owned();
        self.blocking(move |inner| inner.checkpoint_advance(&group, block)).await
    }

    async fn count(&self, table: &str, range: Option<BlockRange>) -> Result<TableCount, SinkError> {
        let table = table.to_owned();
        self.blocking(move |inner| inner.count(&table, range)).await
    }

    async fn coverage(&self, table: &str) -> Result<Vec<BlockRange>, SinkError> {
        let table = table.to_owned();
        self.blocking(move |inner| {
            inner.schema(&table)?;
            Ok(inner.files(&table)?.into_iter().map(|(_, r)| r).collect())
        })
        .await
    }

    async fn scan(&self, table: &str, range: Option<BlockRange>) -> Result<Vec<Row>, SinkError> {
        let table = table.to_owned();
        self.blocking(move |inner| {
            let loaded = inner.load(&table, range)?;
            Ok(inner.dedup(&table, &loaded, range)?.into_values().collect())
        })
        .await
    }
}
