//! graph6 encoding: size header followed by the upper adjacency triangle,
//! column by column, packed into 6-bit groups offset by 63.

use crate::error::GraphError;
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub(crate) fn parse(text: &str) -> Result<Graph, GraphError> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(GraphError::Graph6(format!(
            "byte {:#04x} at offset {pos} outside [63, 126]",
            bytes[pos]
        )));
    }
    let (n, body) = match bytes {
        [] => return Err(GraphError::Graph6("empty line".into())),
        [126, 126, ..] => return Err(GraphError::Graph6("8-byte size header not supported".into())),
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(GraphError::Graph6("truncated size header".into()));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            if n < 63 {
                return Err(GraphError::Graph6(format!("long header used for n = {n}")));
            }
            (n, &rest[3..])
        }
        [h, rest @ ..] => (usize::from(h - 63), rest),
    };
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(GraphError::Graph6(format!(
            "n = {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (nbits..expected * 6).any(bit) {
        return Err(GraphError::Graph6("nonzero padding bits".into()));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    Ok(g)
}

pub(crate) fn emit(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k2_round_trip() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.to_graph6(), "A_");
        assert_eq!(Graph::from_graph6("A_").unwrap(), k2);
    }

    #[test]
    fn header_only() {
        let g = Graph::from_graph6("@").unwrap();
        assert_eq!((g.order(), g.size()), (1, 0));
        assert_eq!(Graph::from_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn known_string() {
        // same graph as the petgraph fixture: edges ac, ae, bd, de
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.to_graph6(), "DQc");
    }

    #[test]
    fn long_header() {
        let mut g = Graph::empty(70).unwrap();
        g.add_edge(0, 69).unwrap();
        g.add_edge(33, 34).unwrap();
        let s = g.to_graph6();
        assert!(s.starts_with('~'));
        assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Graph::from_graph6("").is_err());
        assert!(Graph::from_graph6("A").is_err()); // missing data byte
        assert!(Graph::from_graph6("A`").is_err()); // padding bit set
        assert!(Graph::from_graph6("A \n").is_err()); // space below 63
        assert!(Graph::from_graph6("~?").is_err());
    }

    #[test]
    fn accepts_header_and_newline() {
        assert_eq!(Graph::from_graph6(">>graph6<<A_\n").unwrap().size(), 1);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..40, seed in any::<u64>()) {
            let g = crate::random::gnp(n, 0.3, seed);
            let text = g.to_graph6();
            prop_assert_eq!(Graph::from_graph6(&text).unwrap(), g);
            prop_assert_eq!(Graph::from_graph6(&text).unwrap().to_graph6(), text);
        }
    }
}
