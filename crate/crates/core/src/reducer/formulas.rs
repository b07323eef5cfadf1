//! New colors produced by each deformation and the values of the
//! neighbor colors for which they would reintroduce a removed color.

use std::collections::BTreeSet;

use thiserror::Error;

use super::schedule::P;
use crate::coloring::modp::{reduce, INV2_MOD17, INV3_MOD17, INV4_MOD17};
use crate::coloring::Color;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FormulaError {
    #[error("neighbor color {0} equals the color being removed")]
    NeighborEqualsC(Color),
    #[error("neighbor colors coincide ({0})")]
    NeighborsEqual(Color),
}

fn m(x: i64) -> Color {
    reduce(x, P)
}

/// Clasp at an over-arc colored `c` with under color `a`: `(2a-c, 3a-2c)`.
pub fn case2_colors(a: Color, c: Color) -> Result<(Color, Color), FormulaError> {
    if a % P == c % P {
        return Err(FormulaError::NeighborEqualsC(a));
    }
    let (a, c) = (a as i64, c as i64);
    Ok((m(2 * a - c), m(3 * a - 2 * c)))
}

/// Under-arc colored `c` whose two flanking over colors are both `a`.
pub fn case3_equal_colors(a: Color, c: Color) -> Result<(Color, Color), FormulaError> {
    if a % P == c % P {
        return Err(FormulaError::NeighborEqualsC(a));
    }
    let (a, c) = (a as i64, c as i64);
    Ok((m(3 * a - 2 * c), m(4 * a - 3 * c)))
}

/// Under-arc colored `c` flanked by over colors `a != b`, sliding `a`.
pub fn case3_diff_colors(a: Color, b: Color, c: Color) -> Result<(Color, Color), FormulaError> {
    if a % P == b % P {
        return Err(FormulaError::NeighborsEqual(a));
    }
    let (a, b, c) = (a as i64, b as i64, c as i64);
    Ok((m(2 * a - b), m(2 * a - 2 * b + c)))
}

/// As [`case3_diff_colors`] with the roles of `a` and `b` exchanged.
pub fn case3_alt_colors(a: Color, b: Color, c: Color) -> Result<(Color, Color), FormulaError> {
    case3_diff_colors(b, a, c)
}

/// `{c} ∪ {9(c+f), 6(f+2c), 13(f+3c) : f ∈ forbidden}`.
pub fn exclusions_for_a(c: Color, forbidden: &[Color]) -> BTreeSet<Color> {
    let mut out = BTreeSet::from([c % P]);
    for &f in forbidden {
        out.insert((INV2_MOD17 * (c + f)) % P);
        out.insert((INV3_MOD17 * (f + 2 * c)) % P);
        out.insert((INV4_MOD17 * (f + 3 * c)) % P);
    }
    out
}

/// `{2a-c} ∪ {2a-f, a+9c-9f : f ∈ forbidden}`.
pub fn exclusions_for_b(a: Color, c: Color, forbidden: &[Color]) -> BTreeSet<Color> {
    let (ai, ci) = (a as i64, c as i64);
    let mut out = BTreeSet::from([m(2 * ai - ci)]);
    for &f in forbidden {
        let fi = f as i64;
        out.insert(m(2 * ai - fi));
        out.insert(m(ai + 9 * ci - 9 * fi));
    }
    out
}

/// Neighbor pairs for which the alternative slide still reintroduces a
/// removed color: seven families over `f = c_k` and ordered pairs
/// `(c_k, c_l)` of distinct forbidden colors.
pub fn alt_exclusion_pairs(c: Color, forbidden: &[Color]) -> BTreeSet<(Color, Color)> {
    let ci = c as i64;
    let mut out = BTreeSet::new();
    for &k in forbidden {
        let k = k as i64;
        out.insert((m(6 * k + 12 * ci), m(12 * k + 6 * ci)));
        out.insert((m(6 * ci + 12 * k), m(12 * ci + 6 * k)));
        out.insert((m(10 * k + 8 * ci), m(2 * k - ci)));
        out.insert((m(2 * k - ci), m(10 * k + 8 * ci)));
        for &l in forbidden {
            let l = l as i64;
            if l == k {
                continue;
            }
            out.insert((m(6 * l + 12 * k), m(12 * l + 6 * k)));
            out.insert((m(l + k - ci), m(l + 9 * k + 8 * ci)));
            out.insert((m(9 * l + k + 8 * ci), m(l + k - ci)));
        }
    }
    out
}
