//! graph6 encoding for graphs of order at most 62.
//!
//! Layout: one header byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! big-endian into 6-bit groups (zero-padded), each emitted as `value + 63`.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub fn encode(g: &SimpleGraph) -> Vec<u8> {
    let n = g.order();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    out
}

pub fn encode_string(g: &SimpleGraph) -> String {
    String::from_utf8(encode(g)).expect("graph6 is ASCII")
}

pub fn decode(bytes: &[u8]) -> Result<SimpleGraph> {
    let bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    let (&head, body) = bytes
        .split_first()
        .ok_or_else(|| Error::ParseError("empty input".into()))?;
    if !(63..=125).contains(&head) {
        return Err(Error::ParseError(format!("bad size byte {head}")));
    }
    let n = (head - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::ParseError(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let mut values = Vec::with_capacity(expected);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::ParseError(format!("bad data byte {b}")));
        }
        values.push(b - 63);
    }
    if !nbits.is_multiple_of(6) {
        let pad = 6 - nbits % 6;
        if values[expected - 1] & ((1 << pad) - 1) != 0 {
            return Err(Error::ParseError("non-zero padding bits".into()));
        }
    }
    let mut g = SimpleGraph::empty(n).map_err(|e| Error::ParseError(e.to_string()))?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if values[k / 6] >> (5 - k % 6) & 1 == 1 {
                g.insert_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads one graph per non-empty line.
pub fn read_all<R: BufRead>(reader: R) -> std::io::Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let g = decode(line.as_bytes()).map_err(|e| {
            std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("line {}: {e}", lineno + 1),
            )
        })?;
        out.push(g);
    }
    Ok(out)
}

pub fn write_all<'a, W, I>(mut writer: W, graphs: I) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a SimpleGraph>,
{
    for g in graphs {
        writer.write_all(&encode(g))?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
