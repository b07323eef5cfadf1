//! Fox colorings: validation, the solution space over Z_p, counts,
//! determinants and palette analysis.

pub mod linalg;
pub mod modp;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcMap, Diagram, DiagramError};
use crate::par::{self, Execution};

pub type Color = u64;

/// Default limit on the solution-space dimension for palette enumeration.
pub const DEFAULT_DIMENSION_CAP: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("coloring assigns {got} arcs but the diagram has {expected}")]
    MissingAssignment { expected: usize, got: usize },
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("color {color} out of range for p = {p}")]
    ColorOutOfRange { color: u64, p: u64 },
    #[error("solution space dimension {dimension} exceeds cap {cap}")]
    DimensionCap { dimension: usize, cap: usize },
    #[error("diagram is not {0}-colorable")]
    NotColorable(u64),
    #[error("{u} is not a unit mod {p}")]
    NotInvertible { u: u64, p: u64 },
}

/// A color per arc, indexed by [`crate::ArcId`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FoxColoring {
    pub p: u64,
    pub colors: Vec<Color>,
}

impl FoxColoring {
    pub fn new(p: u64, colors: Vec<Color>) -> Self {
        let colors = colors.into_iter().map(|c| c % p).collect();
        FoxColoring { p, colors }
    }

    pub fn constant(p: u64, arcs: usize, x: Color) -> Self {
        FoxColoring { p, colors: vec![x % p; arcs] }
    }

    pub fn is_trivial(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }
}

/// The colorings of a diagram mod p: every coloring is a Z_p-combination of
/// `basis`. The first basis vector is the all-ones vector, so the remaining
/// `dimension - 1` vectors span the colorings vanishing on arc 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringSpace {
    pub p: u64,
    pub dimension: usize,
    pub basis: Vec<Vec<Color>>,
}

impl ColoringSpace {
    /// `p^dimension`, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        (self.p as u128).checked_pow(self.dimension as u32).unwrap_or(u128::MAX)
    }

    pub fn arc_count(&self) -> usize {
        self.basis.first().map_or(0, Vec::len)
    }

    pub fn combine(&self, coeffs: &[Color]) -> FoxColoring {
        let mut colors = vec![0; self.arc_count()];
        for (v, &k) in self.basis.iter().zip(coeffs) {
            for (x, &y) in colors.iter_mut().zip(v) {
                *x = modp::add(*x, modp::mul(k, y, self.p), self.p);
            }
        }
        FoxColoring { p: self.p, colors }
    }

    /// Some nontrivial coloring, if one exists.
    pub fn sample_nontrivial(&self) -> Option<FoxColoring> {
        if self.dimension < 2 {
            return None;
        }
        let mut coeffs = vec![0; self.dimension];
        coeffs[1] = 1;
        Some(self.combine(&coeffs))
    }
}

fn check_modulus(p: u64) -> Result<(), ColoringError> {
    if p < 3 || !modp::is_prime(p) {
        return Err(ColoringError::BadModulus(p));
    }
    Ok(())
}

/// Integer crossing-relation matrix: one row per crossing (in id order),
/// one column per arc, row `x_a + x_c - 2 x_b`.
pub fn relation_matrix(d: &Diagram, arcs: &ArcMap) -> Vec<Vec<i64>> {
    d.crossings()
        .map(|x| {
            let mut row = vec![0i64; arcs.len()];
            row[arcs.arc_of(x.ports[0]).0] += 1;
            row[arcs.arc_of(x.ports[2]).0] += 1;
            row[arcs.arc_of(x.ports[1]).0] -= 2;
            row
        })
        .collect()
}

fn relation_matrix_mod(d: &Diagram, arcs: &ArcMap, p: u64) -> Vec<Vec<u64>> {
    relation_matrix(d, arcs).into_iter().map(|r| r.into_iter().map(|x| modp::reduce(x, p)).collect()).collect()
}

/// True iff `a + c ≡ 2b (mod p)` at every crossing.
pub fn validate_coloring(d: &Diagram, col: &FoxColoring) -> Result<bool, ColoringError> {
    let arcs = d.arcs()?;
    if col.colors.len() != arcs.len() {
        return Err(ColoringError::MissingAssignment { expected: arcs.len(), got: col.colors.len() });
    }
    if let Some(&bad) = col.colors.iter().find(|&&c| c >= col.p) {
        return Err(ColoringError::ColorOutOfRange { color: bad, p: col.p });
    }
    let p = col.p;
    Ok(d.crossings().all(|x| {
        let a = col.colors[arcs.arc_of(x.ports[0]).0];
        let b = col.colors[arcs.arc_of(x.ports[1]).0];
        let c = col.colors[arcs.arc_of(x.ports[2]).0];
        (a + c) % p == (2 * b) % p
    }))
}

pub fn solve_colorings(d: &Diagram, p: u64) -> Result<ColoringSpace, ColoringError> {
    check_modulus(p)?;
    let arcs = d.arcs()?;
    let n = arcs.len();
    let mut rows = relation_matrix_mod(d, &arcs, p);
    // Pin arc 0 to zero; the constant vector restores the lost direction.
    let mut pin = vec![0u64; n];
    pin[0] = 1;
    rows.push(pin);
    let pinned = linalg::kernel_mod_p(&rows, n, p);
    let mut basis = Vec::with_capacity(pinned.len() + 1);
    basis.push(vec![1; n]);
    basis.extend(pinned);
    Ok(ColoringSpace { p, dimension: basis.len(), basis })
}

/// Counts p-colorings by trying every assignment of colors to arcs.
/// Exponential in the number of arcs; an oracle for small diagrams.
pub fn brute_force_count(d: &Diagram, p: u64) -> Result<u128, ColoringError> {
    check_modulus(p)?;
    let arcs = d.arcs()?;
    let rels: Vec<[usize; 3]> = d.crossings().map(|x| [0, 1, 2].map(|i| arcs.arc_of(x.ports[i]).0)).collect();
    let mut colors = vec![0u64; arcs.len()];
    let mut count = 0u128;
    loop {
        if rels.iter().all(|&[a, b, c]| (colors[a] + colors[c]) % p == 2 * colors[b] % p) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == colors.len() {
                return Ok(count);
            }
            colors[i] += 1;
            if colors[i] < p {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

/// Dimension of the space of p-colorings, trivial ones included.
pub fn coloring_dimension(d: &Diagram, p: u64) -> Result<usize, ColoringError> {
    check_modulus(p)?;
    let arcs = d.arcs()?;
    let rows: Vec<Vec<(usize, u64)>> = d
        .crossings()
        .map(|x| {
            let arc = |i: usize| arcs.arc_of(x.ports[i]).0;
            vec![(arc(0), 1), (arc(2), 1), (arc(1), p - 2)]
        })
        .collect();
    Ok(arcs.len() - linalg::sparse_rank_mod_p(&rows, arcs.len(), p))
}

pub fn count_colorings(d: &Diagram, p: u64) -> Result<u128, ColoringError> {
    let dim = coloring_dimension(d, p)?;
    Ok((p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX))
}

pub fn is_p_colorable(d: &Diagram, p: u64) -> Result<bool, ColoringError> {
    Ok(coloring_dimension(d, p)? >= 2)
}

/// |det| of the relation matrix with the last row and column removed.
/// The crossingless unknot has determinant 1.
pub fn determinant(d: &Diagram) -> Result<BigUint, ColoringError> {
    let arcs = d.arcs()?;
    if d.crossing_count() == 0 {
        return Ok(BigUint::from(1u32));
    }
    let mut m = relation_matrix(d, &arcs);
    m.pop();
    for row in m.iter_mut() {
        row.pop();
    }
    Ok(linalg::abs_determinant(&m).to_biguint().expect("absolute value"))
}

pub fn palette(col: &FoxColoring) -> BTreeSet<Color> {
    col.colors.iter().copied().collect()
}

/// `x -> u x + v` applied to every color.
pub fn affine_transform(col: &FoxColoring, u: u64, v: u64) -> Result<FoxColoring, ColoringError> {
    let p = col.p;
    if modp::inv(u, p).is_none() {
        return Err(ColoringError::NotInvertible { u, p });
    }
    let colors = col.colors.iter().map(|&x| modp::add(modp::mul(u % p, x, p), v % p, p)).collect();
    Ok(FoxColoring { p, colors })
}

/// `floor(log2 p) + 2`.
pub fn lower_bound(p: u64) -> u32 {
    p.ilog2() + 2
}

/// Known values of the minimal color number for small primes, with the
/// value 6 for p = 17.
pub const MIN_COLOR_TABLE: [(u64, u32); 6] = [(3, 3), (5, 4), (7, 4), (11, 5), (13, 5), (17, 6)];

/// Minimum palette size over all nontrivial colorings of `d` mod `p`.
///
/// Palette size is invariant under `x -> u x + v`, so only colorings
/// vanishing on arc 0 whose first nonzero coefficient is 1 are visited.
pub fn min_palette_over_colorings(d: &Diagram, p: u64, cap: usize, exec: Execution) -> Result<usize, ColoringError> {
    let space = solve_colorings(d, p)?;
    if space.dimension > cap {
        return Err(ColoringError::DimensionCap { dimension: space.dimension, cap });
    }
    if space.dimension < 2 {
        return Err(ColoringError::NotColorable(p));
    }
    let pinned = &space.basis[1..];
    let k = pinned.len();
    // Work items: (leading index j, value of coefficient j+1 if any).
    let mut items = Vec::new();
    for j in 0..k {
        if j + 1 < k {
            items.extend((0..p).map(|t| (j, Some(t))));
        } else {
            items.push((j, None));
        }
    }
    let best = AtomicUsize::new(usize::MAX);
    let n = space.arc_count();
    let results = par::map(&items, exec, |&(j, next)| {
        let mut coeffs = vec![0u64; k];
        coeffs[j] = 1;
        let free_start = match next {
            Some(t) => {
                coeffs[j + 1] = t;
                j + 2
            }
            None => j + 1,
        };
        let mut local = usize::MAX;
        let mut colors = vec![0u64; n];
        let mut seen = vec![false; p as usize];
        loop {
            colors.iter_mut().for_each(|x| *x = 0);
            for (v, &cf) in pinned.iter().zip(&coeffs) {
                if cf == 0 {
                    continue;
                }
                for (x, &y) in colors.iter_mut().zip(v) {
                    *x = (*x + cf * y) % p;
                }
            }
            let limit = local.min(best.load(Ordering::Relaxed));
            seen.iter_mut().for_each(|s| *s = false);
            let mut size = 0;
            for &x in &colors {
                if !seen[x as usize] {
                    seen[x as usize] = true;
                    size += 1;
                    if size >= limit {
                        break;
                    }
                }
            }
            if size < limit {
                local = size;
                best.fetch_min(size, Ordering::Relaxed);
            }
            // Odometer over the free coefficients.
            let mut i = free_start;
            loop {
                if i >= k {
                    return local;
                }
                coeffs[i] += 1;
                if coeffs[i] < p {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    });
    Ok(results.into_iter().min().expect("at least one nontrivial coloring"))
}
