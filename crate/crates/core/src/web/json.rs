use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Kind, Sign, Web};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BoundaryJson {
    pub sign: String,
    pub halfedge: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VertexJson {
    /// `"source"`, `"sink"`, or absent for an unoriented cubic graph.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Half-edge ids in clockwise order.
    pub halfedges: Vec<u32>,
}

/// Interchange format: boundary points and vertices own half-edge ids;
/// `edges` pairs them up.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WebJson {
    #[serde(default)]
    pub boundary: Vec<BoundaryJson>,
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub loops: u32,
}

fn is_zero(x: &u32) -> bool {
    *x == 0
}

impl WebJson {
    pub fn from_web(w: &Web) -> WebJson {
        let nb = w.nb();
        WebJson {
            boundary: (0..nb)
                .map(|b| BoundaryJson {
                    sign: w.signs[b].symbol().to_string(),
                    halfedge: b as u32,
                })
                .collect(),
            vertices: (0..w.nv())
                .map(|v| VertexJson {
                    kind: Some(
                        match w.kinds[v] {
                            Kind::Source => "source",
                            Kind::Sink => "sink",
                        }
                        .to_string(),
                    ),
                    halfedges: (0..3).map(|s| (nb + 3 * v + s) as u32).collect(),
                })
                .collect(),
            edges: (0..w.ndarts())
                .filter(|&d| d < w.twin(d))
                .map(|d| [d as u32, w.twin(d) as u32])
                .collect(),
            loops: w.loops,
        }
    }

    /// Maps half-edge ids to dart indices and returns the twin array.
    fn twin_array(&self) -> Result<Vec<u32>> {
        let mut dart: HashMap<u32, usize> = HashMap::new();
        let mut next = 0usize;
        let mut claim = |h: u32| -> Result<()> {
            if dart.insert(h, next).is_some() {
                return Err(Error::Parse(format!("half-edge {h} used twice")));
            }
            next += 1;
            Ok(())
        };
        for b in &self.boundary {
            claim(b.halfedge)?;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if v.halfedges.len() != 3 {
                return Err(Error::Web(format!("vertex {i} is not trivalent")));
            }
            for &h in &v.halfedges {
                claim(h)?;
            }
        }
        let mut twin = vec![u32::MAX; next];
        for &[a, b] in &self.edges {
            let (Some(&da), Some(&db)) = (dart.get(&a), dart.get(&b)) else {
                return Err(Error::Parse(format!("edge [{a},{b}] names an unknown half-edge")));
            };
            if da == db || twin[da] != u32::MAX || twin[db] != u32::MAX {
                return Err(Error::Parse(format!("half-edge in edge [{a},{b}] is paired twice")));
            }
            twin[da] = db as u32;
            twin[db] = da as u32;
        }
        if twin.contains(&u32::MAX) {
            return Err(Error::Parse("some half-edge is not on any edge".into()));
        }
        Ok(twin)
    }

    fn signs(&self) -> Result<Vec<Sign>> {
        self.boundary
            .iter()
            .map(|b| match b.sign.as_str() {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                s => Err(Error::Parse(format!("bad boundary sign {s:?}"))),
            })
            .collect()
    }

    /// Builds and validates an oriented web; every vertex needs a kind.
    pub fn to_web(&self) -> Result<Web> {
        let kinds = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| match v.kind.as_deref() {
                Some("source") => Ok(Kind::Source),
                Some("sink") => Ok(Kind::Sink),
                Some(k) => Err(Error::Parse(format!("vertex {i}: unknown kind {k:?}"))),
                None => Err(Error::Parse(format!("vertex {i} has no kind"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Web::from_parts(self.signs()?, kinds, self.twin_array()?, self.loops)
    }

    /// Orients a closed cubic graph by two-colouring: colour-0 vertices become
    /// sources (or sinks with `flip`). Given kinds are ignored.
    pub fn to_bipartite_web(&self, flip: bool) -> Result<Web> {
        if !self.boundary.is_empty() {
            return Err(Error::Web("graph input must have no boundary".into()));
        }
        let twin = self.twin_array()?;
        let nv = self.vertices.len();
        let mut colour = vec![u8::MAX; nv];
        for s in 0..nv {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for k in 0..3 {
                    let u = twin[3 * v + k] as usize / 3;
                    if colour[u] == u8::MAX {
                        colour[u] = 1 - colour[v];
                        stack.push(u);
                    } else if colour[u] == colour[v] {
                        return Err(Error::Web(format!("graph is not bipartite (vertices {v}, {u})")));
                    }
                }
            }
        }
        let kinds = colour
            .iter()
            .map(|&c| if (c == 0) != flip { Kind::Source } else { Kind::Sink })
            .collect();
        Web::from_parts(Vec::new(), kinds, twin, self.loops)
    }
}
