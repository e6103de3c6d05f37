#![allow(dead_code)]

use recoll_core::algebra::{path_algebra, IdempotentSet, Quiver};
use recoll_core::linalg::DEFAULT_PRIME as P;
use recoll_core::recollement::{Caps, Recollement};

pub fn build(n: usize, arrows: &[(usize, usize)], e: &[usize]) -> Recollement {
    let a = path_algebra("A", &Quiver::new(n, arrows).unwrap(), P).unwrap();
    Recollement::new(a, IdempotentSet::new(n, e.iter().copied()).unwrap(), Caps::default()).unwrap()
}

/// `1 -> 2`, `e = e_2`.
pub fn f1() -> Recollement {
    build(2, &[(0, 1)], &[1])
}

/// `1 -> 2 -> 3`, `e = e_3`.
pub fn f2() -> Recollement {
    build(3, &[(0, 1), (1, 2)], &[2])
}

/// Kronecker quiver, `e = e_2`.
pub fn f3() -> Recollement {
    build(2, &[(0, 1), (0, 1)], &[1])
}

pub fn fixtures() -> Vec<(&'static str, Recollement)> {
    vec![("F1", f1()), ("F2", f2()), ("F3", f3())]
}
