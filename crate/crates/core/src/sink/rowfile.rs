//! Self-describing, length-prefixed binary row files. The layout is
//! documented in `docs/rowfile-format.md`.

use std::io::{self, Read, Write};

use crate::schema::{ColumnDef, ColumnType, Row, Value};

pub const MAGIC: &[u8; 8] = b"TRROWS\0\x01";
pub const TRAILER: &[u8; 8] = b"TRROWEND";

const TAG_NULL: u8 = 0;
const TAG_UINT: u8 = 1;
const TAG_INT: u8 = 2;
const TAG_BOOL: u8 = 3;
const TAG_TEXT: u8 = 4;
const TAG_ARRAY: u8 = 5;

/// Everything before the column data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFileHeader {
    pub sequence: u64,
    pub table: String,
    pub first_block: u64,
    pub last_block: u64,
    pub columns: Vec<ColumnDef>,
    pub row_count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowFile {
    pub header: RowFileHeader,
    pub rows: Vec<Row>,
}

fn bad(msg: impl Into<String>) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.into())
}

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, u32::try_from(s.len()).expect("string under 4 GiB"));
    out.extend_from_slice(s.as_bytes());
}

fn put_value(out: &mut Vec<u8>, v: &Value) {
    match v {
        Value::Null => out.push(TAG_NULL),
        Value::UInt(n) => {
            out.push(TAG_UINT);
            put_u64(out, *n);
        }
        Value::Int(n) => {
            out.push(TAG_INT);
            out.extend_from_slice(&n.to_le_bytes());
        }
        Value::Bool(b) => {
            out.push(TAG_BOOL);
            out.push(u8::from(*b));
        }
        Value::Text(s) => {
            out.push(TAG_TEXT);
            put_str(out, s);
        }
        Value::Array(items) => {
            out.push(TAG_ARRAY);
            put_u32(out, u32::try_from(items.len()).expect("array under 4G items"));
            for item in items {
                put_value(out, item);
            }
        }
    }
}

/// Serializes a row file. Rows are stored column-major, each column as a
/// length-prefixed block of tagged values.
pub fn encode(header: &RowFileHeader, rows: &[Row]) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    put_u64(&mut out, header.sequence);
    put_str(&mut out, &header.table);
    put_u64(&mut out, header.first_block);
    put_u64(&mut out, header.last_block);
    put_u32(&mut out, header.columns.len() as u32);
    for c in &header.columns {
        put_str(&mut out, &c.name);
        put_str(&mut out, &c.ty.to_string());
        out.push(u8::from(c.nullable));
    }
    put_u64(&mut out, rows.len() as u64);
    let mut block = Vec::new();
    for i in 0..header.columns.len() {
        block.clear();
        for row in rows {
            put_value(&mut block, &row[i]);
        }
        put_u64(&mut out, block.len() as u64);
        out.extend_from_slice(&block);
    }
    out.extend_from_slice(TRAILER);
    out
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> io::Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.buf.len())
            .ok_or_else(|| bad("truncated row file"))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> io::Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> io::Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> io::Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn str(&mut self) -> io::Result<String> {
        let n = self.u32()? as usize;
        String::from_utf8(self.take(n)?.to_vec()).map_err(|_| bad("invalid utf-8 string"))
    }

    fn value(&mut self) -> io::Result<Value> {
        Ok(match self.u8()? {
            TAG_NULL => Value::Null,
            TAG_UINT => Value::UInt(self.u64()?),
            TAG_INT => Value::Int(i64::from_le_bytes(self.take(8)?.try_into().unwrap())),
            TAG_BOOL => Value::Bool(self.u8()? != 0),
            TAG_TEXT => Value::Text(self.str()?),
            TAG_ARRAY => {
                let n = self.u32()? as usize;
                let mut items = Vec::with_capacity(n.min(1 << 16));
                for _ in 0..n {
                    items.push(self.value()?);
                }
                Value::Array(items)
            }
            t => return Err(bad(format!("unknown value tag {t}"))),
        })
    }
}

fn decode_header(c: &mut Cursor<'_>) -> io::Result<RowFileHeader> {
    if c.take(8)? != MAGIC {
        return Err(bad("not a row file"));
    }
    let sequence = c.u64()?;
    let table = c.str()?;
    let first_block = c.u64()?;
    let last_block = c.u64()?;
    let ncols = c.u32()? as usize;
    let mut columns = Vec::with_capacity(ncols);
    for _ in 0..ncols {
        let name = c.str()?;
        let ty: ColumnType = c
            .str()?
            .parse()
            .map_err(|e| bad(format!("column {name}: {e}")))?;
        let nullable = c.u8()? != 0;
        columns.push(ColumnDef { name, ty, nullable });
    }
    let row_count = c.u64()?;
    Ok(RowFileHeader {
        sequence,
        table,
        first_block,
        last_block,
        columns,
        row_count,
    })
}

/// Reads only the header, leaving the column blocks unparsed.
pub fn decode_header_only(buf: &[u8]) -> io::Result<RowFileHeader> {
    decode_header(&mut Cursor { buf, pos: 0 })
}

pub fn decode(buf: &[u8]) -> io::Result<RowFile> {
    let mut c = Cursor { buf, pos: 0 };
    let header = decode_header(&mut c)?;
    let n = usize::try_from(header.row_count).map_err(|_| bad("row count overflow"))?;
    let mut rows: Vec<Row> = (0..n)
        .map(|_| Vec::with_capacity(header.columns.len()))
        .collect();
    for _ in &header.columns {
        let len = usize::try_from(c.u64()?).map_err(|_| bad("block length overflow"))?;
        let mut block = Cursor {
            buf: c.take(len)?,
            pos: 0,
        };
        for row in rows.iter_mut() {
            row.push(block.value()?);
        }
        if block.pos != block.buf.len() {
            return Err(bad("column block has trailing bytes"));
        }
    }
    if c.take(8)? != TRAILER || c.pos != buf.len() {
        return Err(bad("missing row file trailer"));
    }
    Ok(RowFile { header, rows })
}

pub fn write_to(mut w: impl Write, header: &RowFileHeader, rows: &[Row]) -> io::Result<()> {
    w.write_all(&encode(header, rows))
}

pub fn read_from(mut r: impl Read) -> io::Result<RowFile> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode(&buf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (RowFileHeader, Vec<Row>) {
        let header = RowFileHeader {
            sequence: 3,
            table: "t".into(),
            first_block: 10,
            last_block: 12,
            columns: vec![
                ColumnDef::new("a", ColumnType::UInt64),
                ColumnDef::nullable("b", ColumnType::Hash),
                ColumnDef::new("c", ColumnType::array(ColumnType::Amount)),
            ],
            row_count: 2,
        };
        let rows = vec![
            vec![Value::UInt(1), Value::Null, Value::Array(vec![Value::Int(-1)])],
            vec![Value::UInt(2), Value::text("ab"), Value::Array(vec![])],
        ];
        (header, rows)
    }

    #[test]
    fn round_trip() {
        let (header, rows) = sample();
        let bytes = encode(&header, &rows);
        let file = decode(&bytes).unwrap();
        assert_eq!(file.header, header);
        assert_eq!(file.rows, rows);
        assert_eq!(decode_header_only(&bytes).unwrap(), header);
    }

    #[test]
    fn truncation_detected() {
        let (header, rows) = sample();
        let bytes = encode(&header, &rows);
        for cut in [4, 20, bytes.len() - 1] {
            assert!(decode(&bytes[..cut]).is_err());
        }
    }
}
