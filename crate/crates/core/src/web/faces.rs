use super::Web;

/// A face of the map, traced with the boundary circle added.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Web darts on the face, in traversal order (circle darts omitted).
    pub darts: Vec<usize>,
    /// True if the face touches the boundary circle.
    pub boundary: bool,
}

impl Face {
    /// Number of vertices (equivalently edges) around the face.
    pub fn size(&self) -> usize {
        self.darts.len()
    }

    /// Interior faces with fewer than six sides are reducible.
    pub fn is_elliptic(&self) -> bool {
        !self.boundary && self.size() < 6
    }
}

impl Web {
    /// Extended dart space: web darts, then `CN(b) = n + 2b` and `CP(b) = n + 2b + 1`.
    fn ext_phi(&self, d: usize) -> usize {
        let n = self.ndarts();
        let nb = self.nb();
        let cn = |b: usize| n + 2 * b;
        let cp = |b: usize| n + 2 * b + 1;
        let tw = if d < n {
            self.twin(d)
        } else {
            let b = (d - n) / 2;
            if (d - n).is_multiple_of(2) {
                cp((b + 1) % nb)
            } else {
                cn((b + nb - 1) % nb)
            }
        };
        if tw < nb {
            cp(tw)
        } else if tw < n {
            self.rot(tw)
        } else {
            let b = (tw - n) / 2;
            if (tw - n).is_multiple_of(2) {
                b
            } else {
                cn(b)
            }
        }
    }

    /// All face orbits in the extended dart space, each starting at its
    /// smallest dart, ordered by that dart.
    pub(crate) fn face_orbits(&self) -> Vec<Vec<usize>> {
        let total = self.ndarts() + 2 * self.nb();
        let mut seen = vec![false; total];
        let mut out = Vec::new();
        for s in 0..total {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                orbit.push(d);
                d = self.ext_phi(d);
            }
            out.push(orbit);
        }
        out
    }

    /// Faces, excluding the outer face, with the boundary flag set. A closed
    /// component is drawn with the face containing its smallest dart
    /// outermost, so that face is excluded too.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.ndarts();
        let nb = self.nb();
        let (labels, nclosed) = self.component_labels();
        let mut outer_darts = vec![usize::MAX; nclosed];
        for v in (0..self.nv()).rev() {
            if let Some(k) = labels[v] {
                outer_darts[k] = nb + 3 * v;
            }
        }
        if nb > 0 {
            outer_darts.push(n);
        }
        self.face_orbits()
            .into_iter()
            .filter(|o| !outer_darts.iter().any(|d| o.contains(d)))
            .map(|o| {
                let boundary = o.iter().any(|&d| d >= n);
                Face {
                    darts: o.into_iter().filter(|&d| d < n).collect(),
                    boundary,
                }
            })
            .collect()
    }

    /// Interior faces only (these consist of vertex darts).
    pub fn interior_faces(&self) -> Vec<Face> {
        self.faces().into_iter().filter(|f| !f.boundary).collect()
    }

    /// True if the web has no free loop and no interior face of size below six.
    pub fn is_non_elliptic(&self) -> bool {
        self.loops == 0 && self.interior_faces().iter().all(|f| f.size() >= 6)
    }
}
