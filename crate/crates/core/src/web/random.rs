//! Random closed webs, drawn as a bottom-to-top sweep over a row of open
//! strands.

use rand::Rng;

use super::{Kind, Port, Sign, Web, WebBuilder};

/// A closed web with at least two and at most `max_vertices` vertices.
/// Free loops may occur.
pub fn random_closed_web<R: Rng>(rng: &mut R, max_vertices: usize) -> Web {
    assert!(max_vertices >= 2, "a closed web with vertices needs at least two");
    loop {
        let steps = rng.gen_range(max_vertices / 2..=2 * max_vertices);
        let w = sweep(rng, steps);
        if (2..=max_vertices).contains(&w.nv()) {
            return w;
        }
    }
}

fn sweep<R: Rng>(rng: &mut R, steps: usize) -> Web {
    let mut b = WebBuilder::new();
    // Open strands left to right; `Plus` means the edge points up.
    let mut row: Vec<(Port, Sign)> = Vec::new();
    for _ in 0..steps {
        let n = row.len();
        match rng.gen_range(0..3) {
            0 if n < 6 => {
                let p = rng.gen_range(0..=n);
                let [l, r] = b.wire();
                let t = if rng.gen() { Sign::Plus } else { Sign::Minus };
                row.splice(p..p, [(l, t), (r, t.flip())]);
            }
            1 if n >= 1 => {
                let p = rng.gen_range(0..n);
                let (port, t) = row[p];
                let v = b.vertex(kind_of(t));
                b.connect(v[2], port);
                row.splice(p..=p, [(v[0], t.flip()), (v[1], t.flip())]);
            }
            2 if n >= 2 => {
                let p = rng.gen_range(0..n - 1);
                join(&mut b, &mut row, p);
            }
            _ => {}
        }
    }
    while !row.is_empty() {
        let p = (0..row.len() - 1).find(|&i| row[i].1 != row[i + 1].1).unwrap_or(0);
        join(&mut b, &mut row, p);
    }
    b.finish().expect("sweep produces a consistent web")
}

/// Caps strands `p` and `p + 1` if their types differ, merges them at a
/// vertex otherwise. The row's type sum stays 0 mod 3, so closing never
/// stalls at a single strand.
fn join(b: &mut WebBuilder, row: &mut Vec<(Port, Sign)>, p: usize) {
    let ((lp, lt), (rp, rt)) = (row[p], row[p + 1]);
    if lt != rt {
        b.connect(lp, rp);
        row.drain(p..=p + 1);
    } else {
        let v = b.vertex(kind_of(lt));
        b.connect(v[1], rp);
        b.connect(v[2], lp);
        row.splice(p..=p + 1, [(v[0], lt.flip())]);
    }
}

fn kind_of(upward: Sign) -> Kind {
    match upward {
        Sign::Plus => Kind::Sink,
        Sign::Minus => Kind::Source,
    }
}
