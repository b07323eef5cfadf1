//! Canonical relabeling of colored diagrams and the SHA-256 checksum over it.
//!
//! Relabeling runs breadth-first from a start crossing. Each crossing gets
//! a rotation in {0, 2} (rotating by two keeps the under/over pairing); a
//! newly reached crossing is rotated so the arrival port lands on local
//! port 0 or 1. Start crossings are narrowed by a key built from the
//! colors around each crossing, refined over neighbors a few times; every
//! start with the least key is tried in both rotations and the
//! lexicographically least code wins.

use sha2::{Digest, Sha256};

use crate::diagram::{CrossingId, Port};
use crate::moves::ColoredDiagram;

/// Code word for one port: neighbor label, neighbor local port, edge color.
type Code = Vec<(usize, u8, u64)>;

fn color_key(cd: &ColoredDiagram, x: CrossingId) -> (u64, u64, u64) {
    let (a, b, c) = cd.crossing_colors(x);
    (a.min(c), b, a.max(c))
}

fn relabel_from(cd: &ColoredDiagram, start: CrossingId, rot: u8) -> Code {
    let d = &cd.diagram;
    let cap = d.crossing_capacity();
    let mut label: Vec<Option<(usize, u8)>> = vec![None; cap];
    let mut order = vec![start];
    label[start.0] = Some((0, rot));
    let mut code = Vec::with_capacity(4 * d.crossing_count());
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        let (_, r) = label[x.0].expect("labeled");
        head += 1;
        for q in 0..4u8 {
            let port = Port::new(x, r + q);
            let far = d.other_end(port);
            let (far_label, far_rot) = match label[far.crossing.0] {
                Some(l) => l,
                None => {
                    let far_rot = far.index - far.index % 2;
                    let l = (order.len(), far_rot);
                    label[far.crossing.0] = Some(l);
                    order.push(far.crossing);
                    l
                }
            };
            let local = (far.index + 4 - far_rot) % 4;
            code.push((far_label, local, cd.color(d.at(port))));
        }
    }
    code
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

const REFINE_ROUNDS: usize = 6;

/// Crossings allowed to start the relabeling. Depends on the diagram only
/// up to renaming.
fn starts(cd: &ColoredDiagram) -> Vec<CrossingId> {
    let d = &cd.diagram;
    let xs: Vec<CrossingId> = d.crossing_ids().collect();
    let mut key = vec![0u64; d.crossing_capacity()];
    for &x in &xs {
        let (a, b, c) = color_key(cd, x);
        key[x.0] = mix(mix(mix(a) ^ b) ^ c);
    }
    let least = |key: &[u64]| {
        let m = xs.iter().map(|x| key[x.0]).min().expect("nonempty");
        xs.iter().copied().filter(|x| key[x.0] == m).collect::<Vec<_>>()
    };
    let mut best = least(&key);
    for _ in 0..REFINE_ROUNDS {
        if best.len() <= 1 {
            break;
        }
        let mut next = key.clone();
        for &x in &xs {
            let mut around: Vec<u64> = (0..4u8)
                .map(|i| {
                    let far = d.other_end(Port::new(x, i));
                    mix(key[far.crossing.0] ^ (((i % 2) as u64) << 1 | (far.index % 2) as u64))
                })
                .collect();
            around.sort_unstable();
            next[x.0] = around.into_iter().fold(mix(key[x.0]), |h, k| mix(h ^ k));
        }
        key = next;
        let refined = least(&key);
        if refined.len() >= best.len() {
            break;
        }
        best = refined;
    }
    best
}

/// The canonical code: least over all admissible starts.
pub fn canonical_code(cd: &ColoredDiagram) -> Vec<(usize, u8, u64)> {
    if cd.diagram.crossing_count() == 0 {
        return Vec::new();
    }
    starts(cd).into_iter().flat_map(|x| [relabel_from(cd, x, 0), relabel_from(cd, x, 2)]).min().expect("nonempty")
}

/// 64 hex characters identifying a colored diagram up to id renaming.
pub fn canonical_checksum(cd: &ColoredDiagram) -> String {
    let mut h = Sha256::new();
    h.update(b"foxcolor/v1\n");
    h.update(cd.p.to_le_bytes());
    h.update((cd.diagram.crossing_count() as u64).to_le_bytes());
    if cd.diagram.crossing_count() == 0 {
        let s = cd.diagram.semiarc_ids().next().expect("unknot loop");
        h.update(cd.color(s).to_le_bytes());
    }
    for (label, port, color) in canonical_code(cd) {
        h.update((label as u64).to_le_bytes());
        h.update([port]);
        h.update(color.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
