//! graph6 encoding: `N(n)` followed by the upper triangle of the adjacency
//! matrix read column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`), packed
//! six bits per printable byte with offset 63.

use super::{Graph, GraphError, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * (n - 1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push((n >> 12 & 0x3f) as u8 + 63);
        out.push((n >> 6 & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn decode_graph6(text: &str) -> Result<Graph, GraphError> {
    let err = |m: &str| GraphError::Graph6(m.to_string());
    let s = text.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    if s.is_empty() {
        return Err(err("empty input"));
    }
    if let Some(b) = s.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(GraphError::Graph6(format!("byte {b:#04x} outside 63..=126")));
    }
    let (n, body) = if s[0] != 126 {
        ((s[0] - 63) as usize, &s[1..])
    } else if s.len() >= 2 && s[1] == 126 {
        return Err(GraphError::Graph6(format!("orders above {MAX_ORDER} are not supported")));
    } else if s.len() >= 4 {
        let n = s[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &s[4..])
    } else {
        return Err(err("truncated order prefix"));
    };
    if n == 0 || n > MAX_ORDER {
        return Err(GraphError::Graph6(format!("unsupported order {n}")));
    }
    let bits = n * (n - 1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(GraphError::Graph6(format!(
            "expected {} data bytes for order {n}, found {}",
            bits.div_ceil(6),
            body.len()
        )));
    }
    let bit_at = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..body.len() * 6).any(bit_at) {
        return Err(err("nonzero padding bits"));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        assert_eq!(encode_graph6(&g), "A_");
        assert_eq!(decode_graph6("A_").unwrap(), g);
        assert_eq!(encode_graph6(&Graph::empty(1).unwrap()), "@");
    }

    #[test]
    fn known_strings() {
        // C_5 and the petgraph test graph (edges 0-2, 0-4, 1-3, 3-4).
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert_eq!(encode_graph6(&c5), "Dhc");
        let g = Graph::new(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode_graph6(&g), "DQc");
        assert_eq!(decode_graph6(">>graph6<<Dhc\n").unwrap(), c5);
    }

    #[test]
    fn long_order_prefix() {
        for n in [62, 63, 64] {
            let g = Graph::new(n, &[(0, n - 1), (1, 2)]).unwrap();
            let s = encode_graph6(&g);
            assert_eq!(s.starts_with('~'), n > 62);
            assert_eq!(decode_graph6(&s).unwrap(), g);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(decode_graph6("garbage!").is_err());
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("A").is_err());
        assert!(decode_graph6("A_?").is_err());
        assert!(decode_graph6("A`").is_err());
        assert!(decode_graph6("?").is_err());
        assert!(decode_graph6("~~??????").is_err());
    }
}
