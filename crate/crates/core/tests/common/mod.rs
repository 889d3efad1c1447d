//! Published example matrices shared by the integration and acceptance tests.
//! Matrices printed with rounded decimals are validated at `FIXTURE_TOL`.

#![allow(dead_code)]

use pcm_core::{validate, ReciprocalMatrix, DEFAULT_RECIPROCITY_TOL, FIXTURE_TOL};

pub fn exact(rows: &[&[f64]]) -> ReciprocalMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    validate(&rows, DEFAULT_RECIPROCITY_TOL).expect("exact fixture is reciprocal")
}

pub fn rounded(rows: &[&[f64]]) -> ReciprocalMatrix {
    let rows: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    validate(&rows, FIXTURE_TOL).expect("rounded fixture is reciprocal within 1e-3")
}

/// `|got - want| <= tol * max(1, |want|)`.
pub fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

pub fn max_entry_error(got: &ReciprocalMatrix, want: &ReciprocalMatrix) -> f64 {
    assert_eq!(got.order(), want.order());
    got.as_slice()
        .iter()
        .zip(want.as_slice())
        .map(|(g, w)| (g - w).abs() / w.abs().max(1.0))
        .fold(0.0, f64::max)
}

/// Row sums (3.6, 4.5, 3.0): well-behaved of the first type.
pub fn type_one_3x3() -> ReciprocalMatrix {
    exact(&[&[1.0, 2.0, 3.0 / 5.0], &[1.0 / 2.0, 1.0, 3.0], &[5.0 / 3.0, 1.0 / 3.0, 1.0]])
}

/// Well-behaved of the second type.
pub fn type_two_3x3() -> ReciprocalMatrix {
    exact(&[&[1.0, 6.0 / 5.0, 1.0], &[5.0 / 6.0, 1.0, 1.0], &[1.0, 1.0, 1.0]])
}

/// Cyclic 3x3 with constant row sums 6.2.
pub fn cyclic_3x3() -> ReciprocalMatrix {
    exact(&[&[1.0, 5.0, 1.0 / 5.0], &[1.0 / 5.0, 1.0, 5.0], &[5.0, 1.0 / 5.0, 1.0]])
}

/// Not well-behaved 3x3 with nonincreasing row sums; the base of both the
/// sink extension and the efficient extension examples.
pub fn base_3x3() -> ReciprocalMatrix {
    exact(&[
        &[1.0, 1.0 / 5.0, 51.0 / 10.0],
        &[5.0, 1.0, 2.0 / 9.0],
        &[10.0 / 51.0, 9.0 / 2.0, 1.0],
    ])
}

/// Constant-row-sum extension of `base_3x3`, as printed.
pub const SINK_EXTENSION_ROOT: f64 = 0.39137;
pub const SINK_EXTENSION_LAST_ROW: [f64; 3] = [2.5551, 2.1315, 1.0047];
pub const SINK_EXTENSION_LAST_COLUMN: [f64; 3] = [0.39137, 0.46915, 0.99529];

/// Efficient extension of `base_3x3` through column 2.
pub const EFFICIENT_ROOT: f64 = 0.00864;
pub const EFFICIENT_COLUMN: usize = 1;
pub fn efficient_scaled_3x3() -> ReciprocalMatrix {
    rounded(&[&[1.0, 1.0, 114.75], &[1.0, 1.0, 1.0], &[0.008715, 1.0, 1.0]])
}
pub fn efficient_extension_4x4() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 1.0 / 5.0, 51.0 / 10.0, 0.001728],
        &[5.0, 1.0, 2.0 / 9.0, 113.76],
        &[10.0 / 51.0, 9.0 / 2.0, 1.0, 516.38],
        &[578.7, 0.00879, 0.001937, 1.0],
    ])
}

/// Intermediate 4x4 whose leading 3x3 block is `type_one_3x3`.
pub fn intermediate_4x4() -> ReciprocalMatrix {
    exact(&[
        &[1.0, 2.0, 3.0 / 5.0, 2.0],
        &[1.0 / 2.0, 1.0, 3.0, 1.0 / 2.0],
        &[5.0 / 3.0, 1.0 / 3.0, 1.0, 3.0 / 2.0],
        &[1.0 / 2.0, 2.0, 2.0 / 3.0, 1.0],
    ])
}
pub const INTERMEDIATE_PERRON: [f64; 4] = [1.3348, 1.1829, 1.0946, 1.0];
pub fn intermediate_constant_form() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 1.7724, 0.4920, 1.4984],
        &[0.5642, 1.0, 2.7761, 0.4227],
        &[2.0324, 0.3602, 1.0, 1.3704],
        &[0.6674, 2.3658, 0.7297, 1.0],
    ])
}
/// Inefficient 5x5 built from `intermediate_4x4` with `a = c = 1`.
pub fn inefficient_5x5() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 2.0, 3.0 / 5.0, 2.0, 1.3348],
        &[1.0 / 2.0, 1.0, 3.0, 1.0 / 2.0, 1.1829],
        &[5.0 / 3.0, 1.0 / 3.0, 1.0, 3.0 / 2.0, 1.0946],
        &[1.0 / 2.0, 2.0, 2.0 / 3.0, 1.0, 1.0],
        &[0.7492, 0.8454, 0.9136, 1.0, 1.0],
    ])
}

/// Classic 4x4 with inefficient Perron vector; vertex 3 is a sink.
pub fn blanquero_4x4() -> ReciprocalMatrix {
    exact(&[
        &[1.0, 2.0, 6.0, 2.0],
        &[1.0 / 2.0, 1.0, 4.0, 3.0],
        &[1.0 / 6.0, 1.0 / 4.0, 1.0, 1.0 / 2.0],
        &[1.0 / 2.0, 1.0 / 3.0, 2.0, 1.0],
    ])
}
pub const BLANQUERO_PERRON: [f64; 4] = [2.9038, 2.057, 0.48282, 1.0];
pub fn blanquero_constant_form() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 1.4168, 0.99764, 0.68876],
        &[0.70584, 1.0, 0.93889, 1.4585],
        &[1.0024, 1.0651, 1.0, 1.0356],
        &[1.4519, 0.68565, 0.96563, 1.0],
    ])
}

/// Perron vector `e_6`, inefficient, no sink and no source, every 5x5
/// principal submatrix well-behaved with `e_5` inefficient.
pub fn no_sink_6x6() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 1.2783, 0.2364, 1.0245, 2.0221, 4.5197],
        &[0.7823, 1.0, 2.4655, 1.6028, 2.1091, 2.1214],
        &[4.2304, 0.4056, 1.0, 1.3002, 1.7109, 1.4340],
        &[0.9761, 0.6239, 0.7691, 1.0, 6.5795, 0.1324],
        &[0.4945, 0.4741, 0.5845, 0.1520, 1.0, 7.3759],
        &[0.2213, 0.4714, 0.6973, 7.5555, 0.1356, 1.0],
    ])
}

/// Perron vector `e_5`, inefficient with sink 4, and `e_4` inefficient for
/// every 4x4 principal submatrix.
pub fn sink_without_subvectors_5x5() -> ReciprocalMatrix {
    rounded(&[
        &[1.0, 2.032, 0.53386, 0.86855, 0.88385],
        &[0.4923, 1.0, 2.1018, 0.88907, 0.83513],
        &[1.8731, 0.47578, 1.0, 0.97616, 0.99334],
        &[1.1513, 1.1248, 1.0244, 1.0, 1.0176],
        &[1.1314, 1.1974, 1.0067, 0.9827, 1.0],
    ])
}
