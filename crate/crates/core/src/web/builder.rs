use super::{Kind, Sign, Web};
use crate::error::{Error, Result};

/// Handle to an attachment point in a [`WebBuilder`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Port(usize);

#[derive(Clone, Copy, Debug)]
enum PortKind {
    Boundary(usize),
    Slot(usize, usize),
    Wire(usize, usize),
}

/// Assembles webs from boundary points, vertices, pass-through wires and
/// embedded webs. Wires let callers route strands through intermediate
/// points; chains of wires collapse into single edges on `finish`.
#[derive(Default)]
pub struct WebBuilder {
    ports: Vec<PortKind>,
    link: Vec<usize>,
    signs: Vec<Sign>,
    kinds: Vec<Kind>,
    wires: Vec<[usize; 2]>,
    loops: u32,
}

impl WebBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn port(&mut self, k: PortKind) -> usize {
        self.ports.push(k);
        self.link.push(usize::MAX);
        self.ports.len() - 1
    }

    /// Appends the next boundary point in clockwise order.
    pub fn boundary(&mut self, sign: Sign) -> Port {
        let b = self.signs.len();
        self.signs.push(sign);
        Port(self.port(PortKind::Boundary(b)))
    }

    /// Adds a trivalent vertex; its ports are in clockwise order.
    pub fn vertex(&mut self, kind: Kind) -> [Port; 3] {
        let v = self.kinds.len();
        self.kinds.push(kind);
        [0, 1, 2].map(|s| Port(self.port(PortKind::Slot(v, s))))
    }

    /// A two-ended pass-through.
    pub fn wire(&mut self) -> [Port; 2] {
        let w = self.wires.len();
        let a = self.port(PortKind::Wire(w, 0));
        let b = self.port(PortKind::Wire(w, 1));
        self.wires.push([a, b]);
        [Port(a), Port(b)]
    }

    pub fn add_loops(&mut self, n: u32) {
        self.loops += n;
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        assert!(a != b, "cannot connect a port to itself");
        assert!(
            self.link[a.0] == usize::MAX && self.link[b.0] == usize::MAX,
            "port connected twice"
        );
        self.link[a.0] = b.0;
        self.link[b.0] = a.0;
    }

    /// Copies `w` in and returns one dangling port per boundary point of `w`,
    /// in `w`'s boundary order.
    pub fn embed(&mut self, w: &Web) -> Vec<Port> {
        let nb = w.nb();
        let verts: Vec<[Port; 3]> = w.kinds.iter().map(|&k| self.vertex(k)).collect();
        let wires: Vec<[Port; 2]> = (0..nb).map(|_| self.wire()).collect();
        let at = |d: usize| -> Port {
            if d < nb {
                wires[d][0]
            } else {
                verts[(d - nb) / 3][(d - nb) % 3]
            }
        };
        for d in 0..w.ndarts() {
            let t = w.twin(d);
            if d < t {
                self.connect(at(d), at(t));
            }
        }
        self.loops += w.loops;
        wires.iter().map(|x| x[1]).collect()
    }

    fn dart(&self, p: usize) -> Option<usize> {
        let nb = self.signs.len();
        match self.ports[p] {
            PortKind::Boundary(b) => Some(b),
            PortKind::Slot(v, s) => Some(nb + 3 * v + s),
            PortKind::Wire(..) => None,
        }
    }

    /// Resolves wires and validates orientation; planarity is checked in
    /// debug builds.
    pub fn finish(self) -> Result<Web> {
        let w = self.finish_unchecked()?;
        for d in 0..w.ndarts() {
            if w.dart_out(d) == w.dart_out(w.twin(d)) {
                return Err(Error::Web(format!("orientation mismatch at dart {d}")));
            }
        }
        debug_assert!(w.validate().is_ok(), "builder produced invalid web: {:?}", w.validate());
        Ok(w)
    }

    /// Like [`finish`](Self::finish) but also runs the full planarity check.
    pub fn finish_validated(self) -> Result<Web> {
        let w = self.finish_unchecked()?;
        w.validate()?;
        Ok(w)
    }

    fn finish_unchecked(self) -> Result<Web> {
        if let Some(p) = self.link.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Web(format!("port {p} left unconnected")));
        }
        let nb = self.signs.len();
        let nd = nb + 3 * self.kinds.len();
        let mut twin = vec![u32::MAX; nd];
        let mut wire_seen = vec![false; self.wires.len()];
        for p in 0..self.ports.len() {
            let Some(d) = self.dart(p) else { continue };
            let mut q = self.link[p];
            while let PortKind::Wire(w, end) = self.ports[q] {
                wire_seen[w] = true;
                q = self.link[self.wires[w][1 - end]];
            }
            twin[d] = self.dart(q).unwrap() as u32;
        }
        let mut loops = self.loops;
        for start in 0..self.wires.len() {
            if wire_seen[start] {
                continue;
            }
            loops += 1;
            let (mut w, mut end) = (start, 0);
            loop {
                wire_seen[w] = true;
                let q = self.link[self.wires[w][1 - end]];
                let PortKind::Wire(n, en) = self.ports[q] else {
                    unreachable!("wire cycle reached a real port")
                };
                if n == start {
                    break;
                }
                w = n;
                end = en;
            }
        }
        Ok(Web {
            signs: self.signs,
            kinds: self.kinds,
            twin,
            loops,
        })
    }
}
