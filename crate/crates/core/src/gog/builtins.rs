use super::{Edge, GraphOfGroups};
use crate::lattice::IntMatrix;

pub const BUILTIN_NAMES: &[&str] = &["leary-minasyan", "bs", "identity-loop"];

/// `<t, a, b | [a,b], t a^2 b^-1 t^-1 = a^2 b, t a b^2 t^-1 = a^-1 b^2>`.
///
/// One vertex, one loop; the inclusion columns are the exponent vectors of
/// the two edge-group generators on each side.
pub fn leary_minasyan() -> GraphOfGroups {
    GraphOfGroups::new(
        2,
        vec!["v0".into()],
        vec![Edge {
            name: "t".into(),
            from: 0,
            to: 0,
            alpha: IntMatrix::from_rows(&[[2, 1], [-1, 2]]),
            omega: IntMatrix::from_rows(&[[2, -1], [1, 2]]),
        }],
    )
}

/// The ascending HNN extension `<A, t | t a t^-1 = phi(a)>`; for `phi = [[k]]`
/// this is `BS(1, k)`.
pub fn baumslag_solitar(phi: IntMatrix) -> GraphOfGroups {
    GraphOfGroups::ascending_hnn(phi)
}

/// One vertex with an `alpha = omega = I` loop: `Z^n x Z`.
pub fn identity_loop(rank: usize) -> GraphOfGroups {
    GraphOfGroups::ascending_hnn(IntMatrix::identity(rank))
}
