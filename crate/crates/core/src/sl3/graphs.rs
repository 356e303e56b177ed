//! Named closed cubic graphs, given as planar rotation systems.

use super::reduce::graph_invariant;
use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;
use crate::web::{VertexJson, WebJson};

/// Builds a closed cubic graph from clockwise neighbour lists. Each unordered
/// pair of adjacent vertices must appear exactly once on each side.
pub fn from_rotation(rot: &[[usize; 3]]) -> Result<WebJson> {
    let n = rot.len();
    let mut edges = Vec::new();
    for (v, nbrs) in rot.iter().enumerate() {
        for (s, &u) in nbrs.iter().enumerate() {
            if u >= n || u == v {
                return Err(Error::Web(format!("bad neighbour {u} at vertex {v}")));
            }
            let back: Vec<usize> = (0..3).filter(|&t| rot[u][t] == v).collect();
            let here: Vec<usize> = (0..3).filter(|&t| nbrs[t] == u).collect();
            if back.len() != here.len() {
                return Err(Error::Web(format!("vertices {v} and {u} disagree on adjacency")));
            }
            if v < u {
                let k = here.iter().position(|&t| t == s).unwrap();
                edges.push([(3 * v + s) as u32, (3 * u + back[back.len() - 1 - k]) as u32]);
            }
        }
    }
    Ok(WebJson {
        boundary: Vec::new(),
        vertices: (0..n)
            .map(|v| VertexJson { kind: None, halfedges: (0..3).map(|s| (3 * v + s) as u32).collect() })
            .collect(),
        edges,
        loops: 0,
    })
}

/// A single oriented circle.
pub fn circle() -> WebJson {
    WebJson { boundary: Vec::new(), vertices: Vec::new(), edges: Vec::new(), loops: 1 }
}

/// Two vertices joined by three edges.
pub fn theta() -> WebJson {
    from_rotation(&[[1, 1, 1], [0, 0, 0]]).unwrap()
}

/// The twelve-vertex web arising from the three-coloured knot 6_1: three
/// squares `a`, `b`, `d` linked in a ring.
pub fn prime_web_6_1() -> WebJson {
    // a1..a4 = 0..3, b1..b4 = 4..7, d1..d4 = 8..11
    let rot = [
        [3, 1, 9],
        [2, 4, 0],
        [7, 1, 3],
        [10, 2, 0],
        [7, 5, 1],
        [6, 8, 4],
        [11, 5, 7],
        [2, 6, 4],
        [11, 9, 5],
        [10, 0, 8],
        [3, 9, 11],
        [6, 10, 8],
    ];
    from_rotation(&rot).unwrap()
}

/// `[2]^4 [3] + 2 [2]^2 [3]`.
pub fn prime_web_6_1_expected() -> LaurentPoly {
    use crate::qpoly::qint;
    let (two, three) = (qint(2), qint(3));
    let two2 = &two * &two;
    &(&(&two2 * &two2) * &three) + &(&(&two2 * &three) * &LaurentPoly::constant(2))
}

pub fn prime_web_6_1_value() -> Result<LaurentPoly> {
    graph_invariant(&prime_web_6_1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::qint;

    #[test]
    fn named_graphs() {
        assert_eq!(graph_invariant(&circle()).unwrap(), qint(3));
        assert_eq!(graph_invariant(&theta()).unwrap(), -&(&qint(3) * &qint(2)));
        assert_eq!(prime_web_6_1_value().unwrap(), prime_web_6_1_expected());
    }

    #[test]
    fn rotation_rejects_mismatch() {
        assert!(from_rotation(&[[1, 1, 1], [0, 0, 2], [1, 1, 1]]).is_err());
    }
}
