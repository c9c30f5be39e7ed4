//! graph6 text encoding.
//!
//! Only undirected graphs with at most 64 vertices are handled, so the size
//! header is either one byte (`n <= 62`) or `~` followed by three bytes.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        reason: reason.into(),
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` and a trailing line break
/// are accepted. Byte offsets in errors refer to the text as passed in.
pub fn decode(text: &str) -> Result<Graph> {
    let body = text
        .strip_suffix('\n')
        .map(|s| s.strip_suffix('\r').unwrap_or(s))
        .unwrap_or(text);
    let (base, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    let sixes = |pos: usize| -> Result<u8> {
        match bytes.get(pos) {
            None => Err(parse_err(base + pos, "unexpected end of input")),
            Some(&b) if (63..=126).contains(&b) => Ok(b - 63),
            Some(&b) => Err(parse_err(base + pos, format!("byte 0x{b:02x} outside graph6 range"))),
        }
    };

    let first = sixes(0)?;
    let (n, mut pos) = if first < 63 {
        (first as usize, 1)
    } else {
        if bytes.get(1) == Some(&126) {
            return Err(parse_err(base + 1, "eight-byte size header exceeds 64 vertices"));
        }
        let mut n = 0usize;
        for p in 1..4 {
            n = (n << 6) | sixes(p)? as usize;
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(parse_err(base, format!("{n} vertices exceeds the limit of {MAX_VERTICES}")));
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let mut rows = vec![0u64; n];
    let mut bit = 0usize;
    for _ in 0..nbytes {
        let chunk = sixes(pos)?;
        for b in (0..6).rev() {
            let set = (chunk >> b) & 1 == 1;
            if bit < nbits {
                if set {
                    let (i, j) = pair_of(bit);
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            } else if set {
                return Err(parse_err(base + pos, "nonzero padding bits"));
            }
            bit += 1;
        }
        pos += 1;
    }
    if pos < bytes.len() {
        return Err(parse_err(base + pos, "trailing bytes after graph"));
    }
    Graph::from_rows(rows)
}

/// Inverse of the column-major upper-triangle order `(0,1),(0,2),(1,2),(0,3),..`.
fn pair_of(index: usize) -> (usize, usize) {
    let mut j = 1;
    let mut start = 0;
    while start + j <= index {
        start += j;
        j += 1;
    }
    (index - start, j)
}

/// Decodes every non-blank line of a graph6 stream.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(decode)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_examples() {
        assert_eq!(decode("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode("B?").unwrap(), Graph::empty(3).unwrap());
        assert_eq!(decode("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(encode(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(encode(&Graph::empty(3).unwrap()), "B?");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(decode(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode("Bw\r\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn long_header_round_trip() {
        for n in [62, 63, 64] {
            let g = Graph::cycle(n).unwrap();
            let s = encode(&g);
            assert_eq!(s.starts_with('~'), n >= 63);
            assert_eq!(decode(&s).unwrap(), g);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(decode("").unwrap_err(), parse_err(0, "unexpected end of input"));
        assert!(matches!(decode("B"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(decode("Bww"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(decode("B x"), Err(Error::Parse { offset: 1, .. })));
        // bit pattern 111001: one padding bit set
        assert!(matches!(decode("Bx"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(decode(">>graph6<<B"), Err(Error::Parse { offset: 11, .. })));
        assert!(matches!(decode("~?A?"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(decode("~~??????"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn pair_order() {
        let got: Vec<_> = (0..6).map(pair_of).collect();
        assert_eq!(got, vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let edges: Vec<_> = (1..n)
                    .flat_map(|j| (0..j).map(move |i| (i, j)))
                    .zip(bits)
                    .filter(|&(_, b)| b)
                    .map(|(e, _)| e)
                    .collect();
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn round_trip(g in arb_graph(20)) {
            let s = encode(&g);
            let back = decode(&s).unwrap();
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.rows(), g.rows());
            prop_assert_eq!(encode(&back), s);
        }
    }
}
