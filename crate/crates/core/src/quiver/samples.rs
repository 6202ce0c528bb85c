//! Small quivers used throughout the tests and examples.

use super::Quiver;

/// `1 --a--> 2`
pub fn a2() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", "1", "2")]).expect("valid quiver")
}

/// `1 --a--> 2 --b--> 3`
pub fn a3() -> Quiver {
    Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).expect("valid quiver")
}

/// Two length-two routes `1 -> 4`: `b*a` through 2 and `d*c` through 3.
pub fn square() -> Quiver {
    Quiver::new(
        &["1", "2", "3", "4"],
        &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
    )
    .expect("valid quiver")
}

/// Kronecker quiver: two parallel arrows `1 -> 2`.
pub fn kronecker() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).expect("valid quiver")
}
