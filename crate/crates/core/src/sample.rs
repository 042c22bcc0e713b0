//! Seeded random inputs.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, so a seed fixes
//! every sample on every platform. Coefficients are integers drawn uniformly
//! from `[-height, height]`.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::polyring::{int, GradedForm, Monomial, MonomialBasis, Scalar, Side};
use crate::quotalg::FormTuple;
use crate::resultant::{random_unimodular, resultant_nonvanishing};

pub const DEFAULT_HEIGHT: i64 = 9;

/// Rejection-sampling budget; running out is an error, never a smaller sample.
pub const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    height: i64,
}

impl Sampler {
    pub fn new(seed: u64, height: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), height: height.max(1) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn height(&self) -> i64 {
        self.height
    }

    pub fn scalar(&mut self) -> Scalar {
        int(self.rng.gen_range(-self.height..=self.height))
    }

    /// A nonzero integer in `[-height, height]`.
    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    /// Dense random form: every monomial gets an independent coefficient.
    pub fn form(&mut self, side: Side, n: usize, degree: u32) -> GradedForm {
        let basis = MonomialBasis::new(n, degree);
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| self.scalar()).collect();
        GradedForm::from_dense(side, &basis, &coeffs)
    }

    pub fn tuple(&mut self, n: usize, d: u32) -> FormTuple {
        FormTuple::new((0..n).map(|_| self.form(Side::X, n, d)).collect()).expect("uniform shape")
    }

    /// A tuple with `Res != 0`, by rejection.
    pub fn good_tuple(&mut self, n: usize, d: u32) -> Result<FormTuple> {
        for _ in 0..MAX_ATTEMPTS {
            let t = self.tuple(n, d);
            if resultant_nonvanishing(&t) {
                return Ok(t);
            }
        }
        Err(Error::SamplingExhausted(MAX_ATTEMPTS))
    }

    /// A tuple whose forms share the zero `p`, a random nonzero integer point.
    ///
    /// Each form is random and then corrected by a multiple of `x_k^d`, where
    /// `p_k != 0`, so that it vanishes at `p`.
    pub fn degenerate_tuple(&mut self, n: usize, d: u32) -> FormTuple {
        let p: Vec<Scalar> = loop {
            let p: Vec<Scalar> = (0..n).map(|_| int(self.rng.gen_range(-2..=2))).collect();
            if p.iter().any(|v| !v.is_zero()) {
                break p;
            }
        };
        let k = p.iter().position(|v| !v.is_zero()).unwrap();
        let mut e = vec![0; n];
        e[k] = d;
        let power = GradedForm::term(Side::X, int(1), Monomial::new(e));
        let scale = num_traits::pow(p[k].clone(), d as usize);
        let forms = (0..n)
            .map(|_| {
                let f = self.form(Side::X, n, d);
                let fix = f.eval(&p) / &scale;
                f.sub(&power.scale(&fix)).expect("same shape")
            })
            .collect();
        FormTuple::new(forms).expect("uniform shape")
    }

    /// Integer matrix with nonzero determinant, by rejection.
    pub fn invertible_matrix(&mut self, n: usize) -> Result<Matrix> {
        for _ in 0..MAX_ATTEMPTS {
            let m = Matrix::from_fn(n, n, |_, _| int(self.rng.gen_range(-self.height..=self.height)));
            if !m.det()?.is_zero() {
                return Ok(m);
            }
        }
        Err(Error::SamplingExhausted(MAX_ATTEMPTS))
    }

    /// Random element of `SL_n(Z)`.
    pub fn unimodular(&mut self, n: usize) -> Matrix {
        random_unimodular(n, &mut self.rng)
    }
}
