//! Seeded random operators and states for sweeps and tests.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{ComplexMatrix, DensityMatrix, UnitVector};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Ginibre matrix: i.i.d. standard complex Gaussian entries.
pub fn random_operator<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, dim, |_, _| gaussian(rng))
}

pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    random_operator(dim, rng).hermitian_part()
}

/// Full-rank mixed state `G G† / Tr[G G†]` from a Ginibre `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = random_operator(dim, rng);
    let w = g.product(&g.dagger());
    let tr = w.trace().expect("square").re;
    DensityMatrix::from_trusted(w.scale_real(1.0 / tr).hermitian_part())
}

/// Haar-random pure state.
pub fn random_unit_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> UnitVector {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian(rng)).collect();
        if let Ok(u) = UnitVector::normalized(v) {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerances;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in [2, 3, 5, 13] {
            let rho = random_density_matrix(d, &mut rng);
            assert!(DensityMatrix::new(rho.matrix().clone(), &Tolerances::default()).is_ok());
        }
    }
}
