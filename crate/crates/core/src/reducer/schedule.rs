use std::collections::BTreeSet;

use crate::coloring::Color;

pub const P: u64 = 17;

/// Colors removed in order.
pub const SCHEDULE: [Color; 11] = [16, 15, 9, 10, 6, 7, 5, 1, 11, 14, 13];

/// Colors that remain.
pub const TARGET: [Color; 6] = [0, 2, 3, 4, 8, 12];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EliminationSchedule;

impl EliminationSchedule {
    pub fn colors(&self) -> &'static [Color] {
        &SCHEDULE
    }

    pub fn target(&self) -> BTreeSet<Color> {
        TARGET.into_iter().collect()
    }

    /// The color removed at 1-based step `i`.
    pub fn color(&self, step: usize) -> Color {
        SCHEDULE[step - 1]
    }

    /// Colors already removed before 1-based step `i`.
    pub fn forbidden_before(&self, step: usize) -> &'static [Color] {
        &SCHEDULE[..step - 1]
    }

    pub fn len(&self) -> usize {
        SCHEDULE.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
