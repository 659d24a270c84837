//! On-disk field dump format.
//!
//! One JSON header line `{dim, n, period, name, time}` terminated by `\n`,
//! followed by the raw samples as little-endian float64 pairs (re, im) in
//! row-major order. The header is serialized with a fixed field order and
//! shortest-round-trip floats, so a dump is byte-for-byte reproducible for
//! identical inputs.

use crate::error::{Result, SpectralError};
use crate::field::SpectralField;
use crate::grid::Grid;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};

#[derive(Debug, Serialize, Deserialize)]
struct DumpHeader {
    dim: usize,
    n: usize,
    period: f64,
    name: String,
    time: f64,
}

/// Writes a field dump to `w`.
pub fn write_field_dump(w: &mut impl Write, f: &SpectralField, name: &str, time: f64) -> Result<()> {
    let header = DumpHeader {
        dim: f.grid().dim(),
        n: f.grid().points_per_axis(),
        period: f.grid().period(),
        name: name.to_string(),
        time,
    };
    let line = serde_json::to_string(&header).map_err(|e| SpectralError::Header(e.to_string()))?;
    w.write_all(line.as_bytes())?;
    w.write_all(b"\n")?;
    let mut buf = Vec::with_capacity(f.values().len() * 16);
    for v in f.values() {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Reads one field dump, returning the field with its name and time stamp.
pub fn read_field_dump(r: &mut impl Read) -> Result<(SpectralField, String, f64)> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        r.read_exact(&mut byte)?;
        if byte[0] == b'\n' {
            break;
        }
        line.push(byte[0]);
        if line.len() > 1 << 16 {
            return Err(SpectralError::Header("unterminated header line".into()));
        }
    }
    let header: DumpHeader =
        serde_json::from_slice(&line).map_err(|e| SpectralError::Header(e.to_string()))?;
    let grid = Grid::new(header.dim, header.n, header.period)?;
    let mut payload = vec![0u8; grid.len() * 16];
    r.read_exact(&mut payload)?;
    let values = payload
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("chunk size"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("chunk size"));
            Complex64::new(re, im)
        })
        .collect();
    Ok((SpectralField::from_values(grid, values)?, header.name, header.time))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_preserves_bytes_and_values() {
        let grid = Grid::new(2, 8, 2.5).unwrap();
        let f = SpectralField::from_fn(grid, |x| Complex64::new(x[0] * 1.1, -x[1]));
        let mut buf = Vec::new();
        write_field_dump(&mut buf, &f, "test_field", 0.125).unwrap();

        let header_end = buf.iter().position(|&b| b == b'\n').unwrap();
        let header = std::str::from_utf8(&buf[..header_end]).unwrap();
        assert_eq!(header, r#"{"dim":2,"n":8,"period":2.5,"name":"test_field","time":0.125}"#);

        let (back, name, time) = read_field_dump(&mut buf.as_slice()).unwrap();
        assert_eq!(name, "test_field");
        assert_eq!(time, 0.125);
        assert_eq!(back.values(), f.values());

        // Same input, same bytes.
        let mut buf2 = Vec::new();
        write_field_dump(&mut buf2, &f, "test_field", 0.125).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn malformed_header_is_rejected() {
        let mut data = b"{\"dim\":2}\n".to_vec();
        data.extend_from_slice(&[0u8; 64]);
        assert!(read_field_dump(&mut data.as_slice()).is_err());
    }
}
