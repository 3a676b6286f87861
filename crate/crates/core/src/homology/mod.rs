//! Exact homology over `Z`, `Q` and `F_p`.

mod group;
mod reduce;
mod ring;
mod snf;

use num_bigint::BigInt;
use thiserror::Error;

pub use group::{is_direct_summand, AbelianGroup};
pub use reduce::{reduce, Overflow, Reduced};
pub use ring::{is_prime, BigZ, Fp, Int64, Rationals, Ring};
pub use snf::{dense_snf, smith_normal_form};
pub(crate) use snf::to_dense;

use crate::complex::SparseIntMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("consecutive maps do not compose to zero")]
    NotAComplex,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
}

/// `ker(d_out) / im(d_in)` with `d_in: A -> C` and `d_out: C -> B`.
pub fn homology_of_pair(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> Result<AbelianGroup, HomologyError> {
    if d_in.rows() != d_out.cols() {
        return Err(HomologyError::Dimensions(format!(
            "image in rank {} but kernel of a map from rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let composite = match d_out.mul(d_in) {
        Some(m) => m.is_zero(),
        None => big_composite_is_zero(d_in, d_out),
    };
    if !composite {
        return Err(HomologyError::NotAComplex);
    }
    let f_in = smith_normal_form(d_in);
    let r_out = smith_normal_form(d_out).len();
    let free = d_out.cols() - r_out - f_in.len();
    Ok(AbelianGroup::from_invariant_factors(free, &f_in))
}

fn big_composite_is_zero(d_in: &SparseIntMatrix, d_out: &SparseIntMatrix) -> bool {
    (0..d_in.cols()).all(|c| {
        let mut acc = std::collections::BTreeMap::<usize, BigInt>::new();
        for &(k, v) in d_in.column(c) {
            for &(r, w) in d_out.column(k as usize) {
                *acc.entry(r as usize).or_default() += BigInt::from(v) * BigInt::from(w);
            }
        }
        acc.values().all(|v| v == &BigInt::default())
    })
}

/// Rank over `Q` (`char = 0`) or `F_p`.
pub fn rank_over_field(m: &SparseIntMatrix, char: u64) -> Result<usize, HomologyError> {
    let dims = [m.cols(), m.rows()];
    let maps = std::slice::from_ref(m);
    let r = if char == 0 {
        reduce(&Rationals, &dims, maps).map(|r| r.cancelled[0])
    } else if is_prime(char) && char < 1 << 31 {
        reduce(&Fp(char as u32), &dims, maps).map(|r| r.cancelled[0])
    } else {
        return Err(HomologyError::NotPrime(char));
    };
    Ok(r.expect("fields do not overflow"))
}
