//! Fixtures shared by the criterion benches.

use upd_core::{Monomial, MonomialIdeal};

/// `(x_1, .., x_d)^k ∩ (x_1^{k+1} x_2, ..)`: many generators and an embedded
/// maximal component.
pub fn dense_ideal(dim: usize, k: u64) -> MonomialIdeal {
    let maximal = MonomialIdeal::prime_from_indices(dim, 0..dim);
    let extra = (0..dim).map(|i| {
        let mut e = vec![0; dim];
        e[i] = k + 1;
        e[(i + 1) % dim] += 1;
        Monomial::new(e)
    });
    let extra = MonomialIdeal::new(dim, extra).expect("fixed dimension");
    maximal.power(k).intersect(&extra)
}

/// `(x^{n+1}, x*y)` in two variables.
pub fn affine_control(n: u64) -> MonomialIdeal {
    MonomialIdeal::new(
        2,
        [Monomial::new(vec![n + 1, 0]), Monomial::new(vec![1, 1])],
    )
    .expect("fixed dimension")
}
