//! Minimal top-level scanner over the Protocol Buffers wire format, used to
//! find fields a typed decode did not account for.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WireField<'a> {
    pub number: u32,
    pub wire_type: u8,
    /// The complete encoded field, key included.
    pub raw: &'a [u8],
}

fn read_varint(buf: &[u8], pos: &mut usize) -> Option<u64> {
    let mut value = 0u64;
    for shift in (0..64).step_by(7) {
        let byte = *buf.get(*pos)?;
        *pos += 1;
        value |= u64::from(byte & 0x7f) << shift;
        if byte & 0x80 == 0 {
            return Some(value);
        }
    }
    None
}

/// Splits `buf` into its top-level fields, or `None` if it is not a
/// well-formed message.
pub fn scan_fields(buf: &[u8]) -> Option<Vec<WireField<'_>>> {
    let mut fields = Vec::new();
    let mut pos = 0;
    while pos < buf.len() {
        let start = pos;
        let key = read_varint(buf, &mut pos)?;
        let number = u32::try_from(key >> 3).ok().filter(|&n| n > 0)?;
        let wire_type = (key & 0x7) as u8;
        match wire_type {
            0 => {
                read_varint(buf, &mut pos)?;
            }
            1 => pos = pos.checked_add(8)?,
            2 => {
                let len = usize::try_from(read_varint(buf, &mut pos)?).ok()?;
                pos = pos.checked_add(len)?;
            }
            5 => pos = pos.checked_add(4)?,
            _ => return None,
        }
        if pos > buf.len() {
            return None;
        }
        fields.push(WireField {
            number,
            wire_type,
            raw: &buf[start..pos],
        });
    }
    Some(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scans_varint_and_bytes() {
        // field 1 varint 150, field 2 bytes "hi"
        let buf = [0x08, 0x96, 0x01, 0x12, 0x02, b'h', b'i'];
        let fields = scan_fields(&buf).unwrap();
        assert_eq!(fields.len(), 2);
        assert_eq!(fields[0].number, 1);
        assert_eq!(fields[0].raw, &buf[..3]);
        assert_eq!(fields[1].number, 2);
        assert_eq!(fields[1].wire_type, 2);
    }

    #[test]
    fn truncated_input_rejected() {
        assert_eq!(scan_fields(&[0x12, 0x05, b'a']), None);
        assert_eq!(scan_fields(&[0x08]), None);
        assert_eq!(scan_fields(&[0x00, 0x01]), None);
    }
}
