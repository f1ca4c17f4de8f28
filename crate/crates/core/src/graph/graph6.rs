use super::{Graph, GraphError};

const HEADER: &[u8] = b">>graph6<<";
const SHORT_MAX: usize = 62;
const MEDIUM_MAX: usize = 258_047;

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// line terminators are accepted. All three vertex-count encodings are
/// supported.
pub fn parse_graph6(text: &[u8]) -> Result<Graph, GraphError> {
    let mut end = text.len();
    while end > 0 && matches!(text[end - 1], b'\n' | b'\r') {
        end -= 1;
    }
    let start = if text[..end].starts_with(HEADER) { HEADER.len() } else { 0 };
    let body = &text[start..end];
    if let Some(i) = body.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(start + i, format!("byte {} outside 63..=126", body[i])));
    }
    if body.is_empty() {
        return Err(err(start, "missing vertex count"));
    }

    let (n, consumed) = if body[0] != 126 {
        ((body[0] - 63) as usize, 1)
    } else if body.len() >= 2 && body[1] != 126 {
        if body.len() < 4 {
            return Err(err(start + body.len(), "truncated 18-bit vertex count"));
        }
        (be_sextets(&body[1..4]), 4)
    } else {
        if body.len() < 8 {
            return Err(err(start + body.len(), "truncated 36-bit vertex count"));
        }
        (be_sextets(&body[2..8]), 8)
    };
    // non-minimal encodings are rejected so that the encoding stays canonical
    if (consumed == 4 && n <= SHORT_MAX) || (consumed == 8 && n <= MEDIUM_MAX) {
        return Err(err(start, format!("non-minimal length prefix for n={n}")));
    }

    let bits = n
        .checked_mul(n.saturating_sub(1))
        .ok_or_else(|| err(start, format!("vertex count {n} too large")))?
        / 2;
    let expected = bits.div_ceil(6);
    let data = &body[consumed..];
    if data.len() != expected {
        return Err(err(
            start + consumed + data.len().min(expected),
            format!("expected {expected} adjacency bytes for n={n}, found {}", data.len()),
        ));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = data[expected - 1] - 63;
        let pad = 6 - bits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(start + consumed + expected - 1, "nonzero padding bits"));
        }
    }
    Graph::from_edges(n, edges)
}

fn be_sextets(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
}

fn push_sextets(out: &mut Vec<u8>, value: usize, count: usize) {
    for i in (0..count).rev() {
        out.push(((value >> (6 * i)) & 63) as u8 + 63);
    }
}

/// Encodes `g` under its current vertex order (no header, no newline).
pub fn to_graph6(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    if n <= SHORT_MAX {
        out.push(n as u8 + 63);
    } else if n <= MEDIUM_MAX {
        out.push(126);
        push_sextets(&mut out, n, 3);
    } else {
        out.extend([126, 126]);
        push_sextets(&mut out, n, 6);
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for &(u, v) in g.edges() {
        // u < v, bit index of x(u, v) in column-major upper triangle
        let k = v * (v - 1) / 2 + u;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| b + 63));
    out
}
