//! Exact closed-form counting and density bounds.
//!
//! Everything here is arbitrary-precision integer or rational arithmetic;
//! `(2n-1)^p` outgrows fixed-width integers around `p = 40`, and the
//! monotonicity checks need exact comparisons. Decimal rendering is left to
//! callers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::freegroup::Rank;

/// Exact rational value, stored in lowest terms with positive denominator.
pub type Exact = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("closed form requires rank at least 2, got {0}")]
    RankBelowTwo(u32),
    #[error("length range requires 1 <= k <= p, got k={k}, p={p}")]
    LengthRange { k: usize, p: usize },
    #[error("tail-equality bounds are stated for k >= 1")]
    ZeroLengthBound,
}

fn require_rank2(rank: Rank) -> Result<u64, FormulaError> {
    let n = u64::from(rank.get());
    if n < 2 {
        return Err(FormulaError::RankBelowTwo(rank.get()));
    }
    Ok(n)
}

fn ratio(num: BigUint, den: BigUint) -> Exact {
    Exact::new(BigInt::from(num), BigInt::from(den))
}

/// `W(k)`: the number of reduced words of length exactly `k`, which is
/// `2n(2n-1)^(k-1)` for `k >= 1` and 1 for the empty word.
pub fn count_words_exact(rank: Rank, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    let n = u64::from(rank.get());
    BigUint::from(2 * n) * BigUint::from(2 * n - 1).pow(k as u32 - 1)
}

/// `|G_p| = (n(2n-1)^p - 1)/(n - 1)`, the ball size including the empty
/// word. The closed form divides exactly for every `n >= 2`; rank 1 is
/// rejected (the ball there has `2p + 1` words, available by enumeration).
pub fn count_ball(rank: Rank, p: usize) -> Result<BigUint, FormulaError> {
    let n = require_rank2(rank)?;
    let numerator = BigUint::from(n) * BigUint::from(2 * n - 1).pow(p as u32) - BigUint::one();
    debug_assert!((&numerator % BigUint::from(n - 1)).is_zero());
    Ok(numerator / BigUint::from(n - 1))
}

/// `S(k,p)`: the number of words of length between `k` and `p`, as the ball
/// difference `|G_p| - |G_(k-1)|`.
pub fn count_shell(rank: Rank, k: usize, p: usize) -> Result<BigUint, FormulaError> {
    require_rank2(rank)?;
    if k < 1 || k > p {
        return Err(FormulaError::LengthRange { k, p });
    }
    Ok(count_ball(rank, p)? - count_ball(rank, k - 1)?)
}

/// `U(k,p) = S(k,p)/|G_p|`: the probability that a uniform word of the ball
/// has length at least `k`.
pub fn prob_length_between(rank: Rank, k: usize, p: usize) -> Result<Exact, FormulaError> {
    Ok(ratio(count_shell(rank, k, p)?, count_ball(rank, p)?))
}

/// Density upper bound `(3n-2) / (2n(2n-1)^k)` for the set of remnant maps
/// carrying some tail equality of length `k >= 1`.
pub fn tail_equality_bound(rank: Rank, k: usize) -> Result<Exact, FormulaError> {
    let n = require_rank2(rank)?;
    if k == 0 {
        return Err(FormulaError::ZeroLengthBound);
    }
    Ok(ratio(
        BigUint::from(3 * n - 2),
        BigUint::from(2 * n) * BigUint::from(2 * n - 1).pow(k as u32),
    ))
}

/// The three collision patterns behind [`tail_equality_bound`], named by the
/// shape of the shared length-`k` tail, plus the total weighted by the
/// `C(2n,2)` choices of the colliding pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TailEqualityCases {
    /// Tail ends with the first generator's own inverse.
    pub own_inverse: Exact,
    /// Tail ends with the other generator's inverse.
    pub other_inverse: Exact,
    /// Tail ends with no inverse letter involved.
    pub positive: Exact,
    /// `C(2n,2) * (sum of the three cases)`; equals the bound exactly.
    pub weighted_total: Exact,
}

pub fn tail_equality_case_probs(rank: Rank, k: usize) -> Result<TailEqualityCases, FormulaError> {
    let n = require_rank2(rank)?;
    if k == 0 {
        return Err(FormulaError::ZeroLengthBound);
    }
    let w_k = count_words_exact(rank, k);
    let w_k1 = count_words_exact(rank, k + 1);
    let own_inverse = ratio(BigUint::one(), BigUint::from(2 * n) * &w_k1);
    let other_inverse = ratio(
        BigUint::one(),
        BigUint::from(2 * n) * BigUint::from(2 * n - 1) * &w_k,
    );
    let positive = ratio(
        BigUint::from(n - 1),
        BigUint::from(n) * BigUint::from(2 * n - 1) * &w_k1,
    );
    // C(2n,2) = n(2n-1)
    let pair_choices = Exact::from(BigInt::from(n * (2 * n - 1)));
    let weighted_total = (&own_inverse + &other_inverse + &positive) * pair_choices;
    Ok(TailEqualityCases {
        own_inverse,
        other_inverse,
        positive,
        weighted_total,
    })
}

/// Sum of [`tail_equality_bound`] over all `k >= 1`: the geometric series
/// collapses to `(3n-2)/(2n(2n-2))`.
pub fn tail_equality_bound_sum(rank: Rank) -> Result<Exact, FormulaError> {
    let n = require_rank2(rank)?;
    Ok(ratio(
        BigUint::from(3 * n - 2),
        BigUint::from(2 * n) * BigUint::from(2 * n - 2),
    ))
}

/// Lower bound `1 - (3n-2)/(2n(2n-2))` for the density of certified-Wecken
/// endomorphisms; strictly increasing in `n` and tending to 1.
pub fn wecken_density_lower_bound(rank: Rank) -> Result<Exact, FormulaError> {
    Ok(Exact::one() - tail_equality_bound_sum(rank)?)
}

/// Probability of the own-inverse collision pattern inside the finite ball
/// of radius `p`: `U(k,p)/(2n) * U(k+1,p)/W(k+1)`. Needs `k + 1 <= p` so
/// both shell factors exist.
pub fn bounded_case_prob(rank: Rank, k: usize, p: usize) -> Result<Exact, FormulaError> {
    let n = require_rank2(rank)?;
    if k < 1 || k + 1 > p {
        return Err(FormulaError::LengthRange { k, p });
    }
    let u_k = prob_length_between(rank, k, p)?;
    let u_k1 = prob_length_between(rank, k + 1, p)?;
    let denom = Exact::from(BigInt::from(2 * n))
        * Exact::from(BigInt::from(count_words_exact(rank, k + 1)));
    Ok(u_k * u_k1 / denom)
}

/// `U(k,p) / U(k,p+1)`; at most 1 for every valid `k <= p`, which is what
/// makes [`bounded_case_prob`] nondecreasing in `p`.
pub fn shell_prob_ratio(rank: Rank, k: usize, p: usize) -> Result<Exact, FormulaError> {
    Ok(prob_length_between(rank, k, p)? / prob_length_between(rank, k, p + 1)?)
}
