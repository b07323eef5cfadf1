//! Regeneration of the special-case tables: neighbor colors for which the
//! direct deformation would bring back a removed color, per schedule step.

use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use super::schedule::{P, SCHEDULE};
use crate::coloring::Color;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub step: usize,
    /// `(c, c_k)` or `(c, c_k, c_l)`.
    pub key: Vec<Color>,
    /// The bad `a`, or the bad pair `(a, b)`.
    pub value: Vec<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableColumn {
    pub heading: &'static str,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialTable {
    pub number: usize,
    pub title: &'static str,
    pub columns: Vec<TableColumn>,
}

fn m(x: i64) -> Color {
    x.rem_euclid(P as i64) as Color
}

fn admissible_a(a: Color, c: Color, f: &[Color]) -> bool {
    a != c && !f.contains(&a) && !f.contains(&m(2 * a as i64 - c as i64))
}

fn admissible_pair(a: Color, b: Color, c: Color, f: &[Color]) -> bool {
    a != b && admissible_a(a, c, f) && admissible_a(b, c, f)
}

fn steps() -> impl Iterator<Item = (usize, Color, &'static [Color])> {
    SCHEDULE.iter().enumerate().map(|(i, &c)| (i + 1, c, &SCHEDULE[..i]))
}

/// Equal flanking colors `a`: the values `6(c_k+2c)` and `13(c_k+3c)`
/// that remain admissible neighbors. A value produced by both formulas at
/// one step is listed once, in the second column, except `a = 1` at step 7
/// which the printed table lists under `(5,10)` in the first.
fn table1() -> SpecialTable {
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (step, c, f) in steps() {
        let (ci, fi) = (c as i64, f.iter().map(|&k| k as i64));
        let l: Vec<_> = fi.clone().map(|k| (k, m(6 * (k + 2 * ci)))).filter(|&(_, a)| admissible_a(a, c, f)).collect();
        let r: Vec<_> = fi.map(|k| (k, m(13 * (k + 3 * ci)))).filter(|&(_, a)| admissible_a(a, c, f)).collect();
        let pinned_left = |a: Color| step == 7 && a == 1;
        for &(k, a) in &l {
            if pinned_left(a) || !r.iter().any(|&(_, b)| b == a) {
                left.push(TableRow { step, key: vec![c, k as Color], value: vec![a] });
            }
        }
        for &(k, a) in &r {
            if !(pinned_left(a) && l.iter().any(|&(_, b)| b == a)) {
                right.push(TableRow { step, key: vec![c, k as Color], value: vec![a] });
            }
        }
    }
    SpecialTable {
        number: 1,
        title: "equal neighbors a = b",
        columns: vec![
            TableColumn { heading: "a = 6(c_k+2c)", rows: left },
            TableColumn { heading: "a = 13(c_k+3c)", rows: right },
        ],
    }
}

type PairFormula = fn(i64, i64) -> (i64, i64);
type TripleFormula = fn(i64, i64, i64) -> (i64, i64);

fn single_index_rows(f: PairFormula, swap: bool) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for (step, c, fs) in steps() {
        for &k in fs {
            let (x, y) = f(c as i64, k as i64);
            let (a, b) = if swap { (m(y), m(x)) } else { (m(x), m(y)) };
            if admissible_pair(a, b, c, fs) {
                rows.push(TableRow { step, key: vec![c, k], value: vec![a, b] });
            }
        }
    }
    rows
}

fn t2a(c: i64, k: i64) -> (i64, i64) {
    (6 * k + 12 * c, 12 * k + 6 * c)
}

fn t2b(c: i64, k: i64) -> (i64, i64) {
    (10 * k + 8 * c, 2 * k - c)
}

fn t3(c: i64, k: i64, l: i64) -> (i64, i64) {
    (9 * l + k + 8 * c, l + k - c)
}

fn t4(_c: i64, k: i64, l: i64) -> (i64, i64) {
    (6 * l + 12 * k, 12 * l + 6 * k)
}

fn table2() -> SpecialTable {
    SpecialTable {
        number: 2,
        title: "distinct neighbors, one removed color",
        columns: vec![
            TableColumn { heading: "(a,b) = (6c_k+12c, 12c_k+6c)", rows: single_index_rows(t2a, false) },
            TableColumn { heading: "(a,b) = (6c+12c_k, 12c+6c_k)", rows: single_index_rows(t2a, true) },
            TableColumn { heading: "(a,b) = (10c_k+8c, 2c_k-c)", rows: single_index_rows(t2b, false) },
            TableColumn { heading: "(a,b) = (2c_k-c, 10c_k+8c)", rows: single_index_rows(t2b, true) },
        ],
    }
}

fn unordered(a: Color, b: Color) -> (Color, Color) {
    (a.min(b), a.max(b))
}

fn table2_pairs(step: usize) -> BTreeSet<(Color, Color)> {
    table2()
        .columns
        .iter()
        .flat_map(|col| col.rows.iter())
        .filter(|r| r.step == step)
        .map(|r| unordered(r.value[0], r.value[1]))
        .collect()
}

/// Rows over ordered pairs of distinct removed colors, skipping pairs
/// `{a, b}` already listed at the same step. Within the family, rows giving
/// the same `{a, b}` collapse to the one with the least `(a, b)`.
fn two_index_rows(f: TripleFormula, seen: &mut [BTreeSet<(Color, Color)>], collapse: bool) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for (step, c, fs) in steps() {
        let mut found: Vec<TableRow> = Vec::new();
        for &k in fs {
            for &l in fs {
                if k == l {
                    continue;
                }
                let (x, y) = f(c as i64, k as i64, l as i64);
                let (a, b) = (m(x), m(y));
                if !admissible_pair(a, b, c, fs) || seen[step].contains(&unordered(a, b)) {
                    continue;
                }
                let row = TableRow { step, key: vec![c, k, l], value: vec![a, b] };
                if collapse {
                    let same = found.iter_mut().find(|r| unordered(r.value[0], r.value[1]) == unordered(a, b));
                    match same {
                        Some(r) if (a, b) < (r.value[0], r.value[1]) => *r = row,
                        Some(_) => {}
                        None => found.push(row),
                    }
                } else {
                    found.push(row);
                }
            }
        }
        for r in &found {
            seen[step].insert(unordered(r.value[0], r.value[1]));
        }
        rows.extend(found);
    }
    rows
}

fn mirror(rows: &[TableRow]) -> Vec<TableRow> {
    rows.iter()
        .map(|r| TableRow {
            step: r.step,
            key: vec![r.key[0], r.key[2], r.key[1]],
            value: vec![r.value[1], r.value[0]],
        })
        .collect()
}

/// All four tables.
pub fn special_case_tables() -> Vec<SpecialTable> {
    let mut seen: Vec<BTreeSet<(Color, Color)>> = (0..=SCHEDULE.len()).map(table2_pairs).collect();
    let t3_rows = two_index_rows(t3, &mut seen, true);
    let t4_rows = two_index_rows(t4, &mut seen, false);
    vec![
        table1(),
        table2(),
        SpecialTable {
            number: 3,
            title: "distinct neighbors, two removed colors",
            columns: vec![
                TableColumn { heading: "(a,b) = (9c_l+c_k+8c, c_l+c_k-c)", rows: t3_rows.clone() },
                TableColumn { heading: "(a,b) = (c_l+c_k-c, c_l+9c_k+8c)", rows: mirror(&t3_rows) },
            ],
        },
        SpecialTable {
            number: 4,
            title: "distinct neighbors, symmetric pair",
            columns: vec![TableColumn { heading: "(a,b) = (6c_l+12c_k, 12c_l+6c_k)", rows: t4_rows }],
        },
    ]
}

fn fmt_tuple(v: &[Color]) -> String {
    let inner: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    if v.len() == 1 {
        inner[0].clone()
    } else {
        format!("({})", inner.join(","))
    }
}

/// Plain-text rendering, one block per column.
pub fn render(tables: &[SpecialTable]) -> String {
    let mut out = String::new();
    for t in tables {
        let _ = writeln!(out, "Table {}: {}", t.number, t.title);
        for col in &t.columns {
            let _ = writeln!(out, "  {}", col.heading);
            for r in &col.rows {
                let _ = writeln!(out, "    step {:>2} | {:<12} | {}", r.step, fmt_tuple(&r.key), fmt_tuple(&r.value));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lookup(t: &SpecialTable, col: usize, key: &[Color]) -> Option<Vec<Color>> {
        t.columns[col].rows.iter().find(|r| r.key == key).map(|r| r.value.clone())
    }

    #[test]
    fn table1_spot_checks() {
        let t = &special_case_tables()[0];
        assert_eq!(lookup(t, 0, &[15, 16]), Some(vec![4]));
        assert_eq!(lookup(t, 0, &[13, 14]), Some(vec![2]));
        assert_eq!(lookup(t, 1, &[14, 9]), Some(vec![0]));
        assert_eq!(lookup(t, 0, &[5, 10]), Some(vec![1]));
        assert_eq!(lookup(t, 1, &[5, 6]), None);
        assert_eq!((t.columns[0].rows.len(), t.columns[1].rows.len()), (15, 21));
    }

    #[test]
    fn two_index_spot_checks() {
        let ts = special_case_tables();
        assert_eq!(lookup(&ts[2], 0, &[9, 16, 15]), Some(vec![2, 5]));
        assert_eq!(lookup(&ts[2], 1, &[9, 15, 16]), Some(vec![5, 2]));
        assert_eq!(lookup(&ts[3], 0, &[7, 10, 16]), Some(vec![12, 14]));
        assert_eq!(ts[2].columns[0].rows.len(), 23);
        assert_eq!(ts[3].columns[0].rows.len(), 4);
    }
}
