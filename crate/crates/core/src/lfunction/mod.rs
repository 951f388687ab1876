//! The L-polynomial `L(E, T)`: the product over places, the two brute-force
//! oracles, Newton's identities, the functional equation, the Newton polygon
//! and the check that all roots have absolute value `1/q`.

mod closed_form;
mod newton;
mod oracle;
mod roots;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use closed_form::{closed_form_lpolynomial, closed_form_with_character, expand_place_factors};
pub use newton::{
    coeffs_from_power_sums, complete_by_functional_equation, functional_equation_sign, log_coeffs_of, newton_polygon,
    valuation, NewtonPolygon,
};
pub use oracle::{default_n_max, oracle_log_coeffs, oracle_point_counts, PointCountEntry, PointCountTable};
pub use roots::{rh_check, RhReport, RH_DEGREE_LIMIT};

/// `L(T) = sum c_k T^k` with integer coefficients and `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    pub q: u64,
    pub coeffs: Vec<BigInt>,
}

impl LPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// `L(x)` for a rational `x`, by Horner.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// `L(1/q)`.
    pub fn eval_at_inverse_q(&self) -> BigRational {
        self.eval(&BigRational::new(BigInt::one(), BigInt::from(self.q)))
    }
}

/// Power sums `c_n = sum_i alpha_i^n` of the inverse roots, `n = 1..=n_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogLCoeffs {
    pub values: Vec<BigInt>,
}

impl LogLCoeffs {
    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// `c_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n - 1]
    }
}
