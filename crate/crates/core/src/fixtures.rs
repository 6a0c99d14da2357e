//! Bundled example data: the solid octahedron.

use crate::meander::{Orders, Permutation};

/// Boundary order at `x = 0` of the 27 octahedron equilibria.
pub const OCTAHEDRON_H0: [usize; 27] = [
    1, 10, 20, 9, 4, 13, 24, 17, 6, 18, 5, 14, 25, 15, 22, 16, 23, 12, 19, 27, 21, 7, 26, 8, 3, 11,
    2,
];

/// Boundary order at `x = 1`.
pub const OCTAHEDRON_H1: [usize; 27] = [
    1, 8, 19, 9, 4, 12, 23, 17, 6, 16, 3, 11, 22, 15, 25, 18, 24, 13, 20, 27, 26, 7, 21, 10, 5, 14,
    2,
];

/// `σ = h0⁻¹ ∘ h1` of the octahedron.
pub const OCTAHEDRON_SIGMA: [usize; 27] = [
    1, 24, 19, 4, 5, 18, 17, 8, 9, 16, 25, 26, 15, 14, 13, 10, 7, 6, 3, 20, 23, 22, 21, 2, 11, 12,
    27,
];

/// The octahedron as a decorated 3-cell template.
pub const OCTAHEDRON_JSON: &str = include_str!("../../../fixtures/octahedron.json");

/// Two-line order file for the octahedron.
pub const OCTAHEDRON_ORDERS_TEXT: &str = include_str!("../../../fixtures/oct.perm");

pub fn octahedron_orders() -> Orders {
    Orders::new(OCTAHEDRON_H0.to_vec(), OCTAHEDRON_H1.to_vec()).expect("valid octahedron orders")
}

pub fn octahedron_sigma() -> Permutation {
    Permutation::new(OCTAHEDRON_SIGMA.to_vec()).expect("valid octahedron permutation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_is_quotient_of_orders() {
        assert_eq!(octahedron_orders().sigma(), octahedron_sigma());
    }
}
