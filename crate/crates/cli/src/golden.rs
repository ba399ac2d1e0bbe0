//! Printed reference values the regenerated tables are compared against.

pub const POLY_BOUNDS: [(usize, f64); 9] = [
    (2, 1.277171240),
    (4, 1.277148060),
    (6, 1.277137688),
    (8, 1.277135865),
    (10, 1.277135348),
    (12, 1.277135173),
    (14, 1.277135104),
    (16, 1.277135074),
    (20, 1.277135052),
];

pub const L2_BOUNDS: [(usize, f64); 9] = [
    (10, 1.277199350),
    (50, 1.277136017),
    (100, 1.277135195),
    (150, 1.277135093),
    (200, 1.277135065),
    (300, 1.277135050),
    (400, 1.277135046),
    (500, 1.277135044),
    (1000, 1.277135042),
];

pub const H0_ZEROS: [f64; 10] = [1.5839, 2.5715, 3.5573, 4.5470, 5.5395, 6.5340, 7.5297, 8.5264, 9.5238, 10.5220];

/// At `d = 1000`.
pub const L2_ZEROS: [f64; 10] = [1.5866, 2.5648, 3.5525, 4.5444, 5.5387, 6.5344, 7.5311, 8.5284, 9.5261, 10.5243];
pub const L2_ZEROS_D: usize = 1000;
