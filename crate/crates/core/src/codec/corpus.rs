//! Builtin diagrams with their PD text and determinants.

use crate::coloring::{self, ColoringError, FoxColoring};
use crate::diagram::{Diagram, SemiArcId};
use crate::moves::ColoredDiagram;

use super::pd::{parse_pd, to_pd};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub pd: String,
    pub determinant: u64,
    /// Default 17-coloring by arc, for entries that are 17-colorable.
    pub coloring17: Option<Vec<u64>>,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Diagram {
        parse_pd(&self.pd).expect("builtin PD is valid")
    }

    /// The entry with its default 17-coloring.
    pub fn colored17(&self) -> Option<ColoredDiagram> {
        let col = FoxColoring { p: 17, colors: self.coloring17.clone()? };
        Some(ColoredDiagram::from_fox(self.diagram(), &col).expect("builtin coloring matches arcs"))
    }
}

pub const NAMES: [&str; 7] = ["unknot", "kink", "trefoil", "figure-eight", "7_5", "T(2,17)", "T(2,17)#T(2,17)"];

/// PD text of the standard (2, n) torus closed braid diagram.
pub fn torus_2n_pd(n: usize) -> String {
    (1..=n)
        .map(|k| {
            let m = 2 * n;
            format!("X({},{},{},{})", 2 * k - 1, (2 * k + n - 2) % m + 1, 2 * k, (2 * k + n - 1) % m + 1)
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// The nontrivial coloring with arc 0 colored 0 and the first arc not
/// forced to 0 colored 1.
pub fn default_coloring(d: &Diagram, p: u64) -> Result<FoxColoring, ColoringError> {
    let space = coloring::solve_colorings(d, p)?;
    if space.dimension < 2 {
        return Err(ColoringError::NotColorable(p));
    }
    let v = &space.basis[1];
    let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero basis vector");
    let scale = coloring::modp::inv(lead, p).expect("unit");
    Ok(FoxColoring { p, colors: v.iter().map(|&x| x * scale % p).collect() })
}

/// Connected sum of two copies of T(2,17) with its default coloring on the
/// first copy and `3x + v` on the second, `v` chosen so the colors agree
/// at the junction.
fn torus_sum() -> (Diagram, Vec<u64>) {
    let t = parse_pd(&torus_2n_pd(17)).expect("valid torus diagram");
    let col = default_coloring(&t, 17).expect("T(2,17) is 17-colorable");
    let one = ColoredDiagram::from_fox(t.clone(), &col).expect("coloring fits");
    let cut = SemiArcId(0);
    let x = one.color(cut);
    let v = (x + 17 * 3 - 3 * x % 17) % 17;
    let col2 = coloring::affine_transform(&col, 3, v).expect("3 is a unit");
    let two = ColoredDiagram::from_fox(t.clone(), &col2).expect("coloring fits");
    assert_eq!(two.color(cut), x);
    let (sum, _, shift) = t.connected_sum(cut, &t, cut).expect("planar sum");
    let mut colors = vec![0; sum.semiarc_capacity()];
    for s in t.semiarc_ids() {
        colors[s.0] = one.color(s);
        colors[s.0 + shift] = two.color(s);
    }
    let cd = ColoredDiagram::from_semiarc_colors(sum, 17, colors);
    // Round-trip through PD so ids follow the text.
    let pd = to_pd(&cd.diagram);
    let parsed = parse_pd(&pd).expect("valid sum");
    let fox = cd.to_fox().expect("valid");
    let arcs_orig = cd.diagram.arcs().expect("valid");
    let arcs_new = parsed.arcs().expect("valid");
    let mut by_new = vec![0; arcs_new.len()];
    for s in parsed.semiarc_ids() {
        by_new[arcs_new.arc_of(s).0] = fox.colors[arcs_orig.arc_of(s).0];
    }
    (parsed, by_new)
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    let simple = |name: &'static str, pd: &str, det: u64| {
        let pd = pd.to_string();
        let d = parse_pd(&pd).expect("builtin PD is valid");
        let coloring17 = default_coloring(&d, 17).ok().map(|c| c.colors);
        CorpusEntry { name, pd, determinant: det, coloring17 }
    };
    Some(match name {
        "unknot" => simple("unknot", "", 1),
        "kink" => simple("kink", "X(1,2,2,1)", 1),
        "trefoil" | "3_1" => simple("trefoil", "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)", 3),
        "figure-eight" | "4_1" => simple("figure-eight", "X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)", 5),
        "7_5" => {
            simple("7_5", "X(14,3,1,4),X(2,9,3,10),X(4,11,5,12),X(6,13,7,14),X(8,1,9,2),X(10,7,11,8),X(12,5,13,6)", 17)
        }
        "T(2,17)" | "t2_17" => simple("T(2,17)", &torus_2n_pd(17), 17),
        "T(2,17)#T(2,17)" | "t2_17_sum" => {
            let (d, colors) = torus_sum();
            CorpusEntry { name: "T(2,17)#T(2,17)", pd: to_pd(&d), determinant: 289, coloring17: Some(colors) }
        }
        _ => return None,
    })
}

pub fn builtin_corpus() -> Vec<CorpusEntry> {
    NAMES.iter().map(|n| entry(n).expect("known name")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn determinants_match_annotations() {
        for e in builtin_corpus() {
            let d = e.diagram();
            assert!(d.validate().is_valid(), "{}", e.name);
            assert_eq!(coloring::determinant(&d).unwrap(), BigUint::from(e.determinant), "{}", e.name);
        }
    }

    #[test]
    fn torus_shape() {
        let d = entry("T(2,17)").unwrap().diagram();
        assert_eq!(d.crossing_count(), 17);
        assert_eq!(d.arcs().unwrap().len(), 17);
        assert_eq!(d.faces().unwrap().len(), 19);
        assert_eq!(torus_2n_pd(3), "X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)");
    }

    #[test]
    fn default_colorings_are_valid() {
        for e in builtin_corpus() {
            let Some(cd) = e.colored17() else {
                assert_ne!(e.determinant % 17, 0, "{}", e.name);
                continue;
            };
            assert!(cd.is_valid_coloring(), "{}", e.name);
            assert!(!cd.is_trivial(), "{}", e.name);
        }
        let t = entry("T(2,17)").unwrap().colored17().unwrap();
        assert_eq!(t.palette().len(), 17);
    }

    #[test]
    fn torus_sum_counts() {
        let d = entry("T(2,17)#T(2,17)").unwrap().diagram();
        assert_eq!(d.crossing_count(), 34);
        assert_eq!(coloring::count_colorings(&d, 17).unwrap(), 17u128.pow(3));
    }
}
