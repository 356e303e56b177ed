use super::{Kind, Sign, Web};
use crate::error::{Error, Result};

/// Relabelling produced by a traversal: new index and rotation offset per vertex.
struct Relabel {
    order: Vec<usize>,
    offset: Vec<usize>,
    new_id: Vec<usize>,
}

impl Web {
    /// Breadth-first traversal from the given entry darts. Each vertex is
    /// numbered on first discovery, with slot 0 set to its entry dart.
    fn traverse(&self, entries: impl IntoIterator<Item = usize>, allowed: &dyn Fn(usize) -> bool) -> Relabel {
        let nb = self.nb();
        let nv = self.nv();
        let mut r = Relabel {
            order: Vec::new(),
            offset: vec![0; nv],
            new_id: vec![usize::MAX; nv],
        };
        let visit = |r: &mut Relabel, d: usize| {
            let v = (d - nb) / 3;
            if r.new_id[v] == usize::MAX && allowed(v) {
                r.new_id[v] = r.order.len();
                r.offset[v] = (d - nb) % 3;
                r.order.push(v);
            }
        };
        for d in entries {
            if d >= nb {
                visit(&mut r, d);
            } else {
                let t = self.twin(d);
                if t >= nb {
                    visit(&mut r, t);
                }
            }
        }
        let mut head = 0;
        while head < r.order.len() {
            let v = r.order[head];
            head += 1;
            for k in 0..3 {
                let d = nb + 3 * v + (r.offset[v] + k) % 3;
                let t = self.twin(d);
                if t >= nb {
                    visit(&mut r, t);
                }
            }
        }
        r
    }

    fn relabel_map(&self, r: &Relabel, d: usize) -> usize {
        let nb = self.nb();
        if d < nb {
            d
        } else {
            let v = (d - nb) / 3;
            let s = (d - nb) % 3;
            nb + 3 * r.new_id[v] + (s + 3 - r.offset[v]) % 3
        }
    }

    /// Code of a closed component traversed from `start`: kinds then twins,
    /// with darts numbered locally from 0.
    fn closed_code(&self, start: usize, comp: &dyn Fn(usize) -> bool) -> (Vec<Kind>, Vec<u32>, Relabel) {
        let nb = self.nb();
        let r = self.traverse([start], comp);
        let kinds = r.order.iter().map(|&v| self.kinds[v]).collect();
        let mut twin = vec![0u32; 3 * r.order.len()];
        for (i, &v) in r.order.iter().enumerate() {
            for k in 0..3 {
                let d = nb + 3 * v + (r.offset[v] + k) % 3;
                twin[3 * i + k] = (self.relabel_map(&r, self.twin(d)) - nb) as u32;
            }
        }
        (kinds, twin, r)
    }

    /// Canonical representative: isotopic webs with the same labelled
    /// boundary give identical values. Boundary-connected vertices come
    /// first in traversal order from boundary point 0; closed components
    /// follow, each in its lexicographically least traversal, sorted.
    pub fn canonical(&self) -> Web {
        let nb = self.nb();
        let (labels, nclosed) = self.component_labels();
        let main = self.traverse(0..nb, &|v| labels[v].is_none());
        let mut kinds: Vec<Kind> = main.order.iter().map(|&v| self.kinds[v]).collect();
        let mut twin = vec![0u32; nb + 3 * self.nv()];
        for b in 0..nb {
            twin[b] = self.relabel_map(&main, self.twin(b)) as u32;
        }
        for (i, &v) in main.order.iter().enumerate() {
            for k in 0..3 {
                let d = nb + 3 * v + (main.offset[v] + k) % 3;
                twin[nb + 3 * i + k] = self.relabel_map(&main, self.twin(d)) as u32;
            }
        }
        if nclosed > 0 {
            let mut codes: Vec<(Vec<Kind>, Vec<u32>)> = Vec::with_capacity(nclosed);
            for c in 0..nclosed {
                let inside = |v: usize| labels[v] == Some(c);
                let mut best: Option<(Vec<Kind>, Vec<u32>)> = None;
                for v in (0..self.nv()).filter(|&v| inside(v)) {
                    for s in 0..3 {
                        let (k, t, _) = self.closed_code(nb + 3 * v + s, &inside);
                        if best.as_ref().is_none_or(|b| (&k, &t) < (&b.0, &b.1)) {
                            best = Some((k, t));
                        }
                    }
                }
                codes.push(best.unwrap());
            }
            codes.sort();
            for (k, t) in codes {
                let base = 3 * kinds.len() as u32;
                kinds.extend(k);
                for (j, x) in t.into_iter().enumerate() {
                    twin[nb + base as usize + j] = nb as u32 + base + x;
                }
            }
        }
        Web {
            signs: self.signs.clone(),
            kinds,
            twin,
            loops: self.loops,
        }
    }

    /// Canonical form of a closed connected web over every starting dart,
    /// ignoring which boundary labelling it came from.
    pub fn canonical_closed(&self) -> Web {
        debug_assert_eq!(self.nb(), 0);
        self.canonical()
    }

    /// Text form of this web's data; decodable by [`Web::from_key_string`].
    pub fn key_string(&self) -> String {
        let signs: String = self.signs.iter().map(|s| s.symbol()).collect();
        let kinds: String = self
            .kinds
            .iter()
            .map(|k| match k {
                Kind::Source => 'o',
                Kind::Sink => 'i',
            })
            .collect();
        let twin: Vec<String> = self.twin.iter().map(|t| t.to_string()).collect();
        let mut s = format!("{signs}|{kinds}|{}", twin.join(","));
        if self.loops > 0 {
            s.push_str(&format!("|{}", self.loops));
        }
        s
    }

    /// Canonical key; free loops must have been removed first.
    pub fn canonical_key(&self) -> Result<String> {
        if self.loops > 0 {
            return Err(Error::Web("canonical key requested for a web with free loops".into()));
        }
        Ok(self.canonical().key_string())
    }

    pub fn from_key_string(s: &str) -> Result<Web> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() < 3 || parts.len() > 4 {
            return Err(Error::Parse(format!("bad web key {s:?}")));
        }
        let signs = parts[0]
            .chars()
            .map(|c| Sign::from_symbol(c).ok_or_else(|| Error::Parse(format!("bad sign in key {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let kinds = parts[1]
            .chars()
            .map(|c| match c {
                'o' => Ok(Kind::Source),
                'i' => Ok(Kind::Sink),
                _ => Err(Error::Parse(format!("bad vertex kind in key {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let twin = if parts[2].is_empty() {
            Vec::new()
        } else {
            parts[2]
                .split(',')
                .map(|x| x.parse::<u32>().map_err(|_| Error::Parse(format!("bad dart in key {s:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        let loops = match parts.get(3) {
            Some(l) => l.parse().map_err(|_| Error::Parse(format!("bad loop count in key {s:?}")))?,
            None => 0,
        };
        Web::from_parts(signs, kinds, twin, loops)
    }
}
