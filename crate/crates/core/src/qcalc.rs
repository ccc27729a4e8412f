//! q-integers, q-factorials, and their classical counterparts.
//!
//! Every quotient of q-factorials is formed as a falling product, so the
//! whole module stays division-free.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly::QPoly;

/// `[s]_q = 1 + q + ... + q^(s-1)`. `[0]_q` is the zero polynomial.
pub fn q_int(s: usize) -> QPoly {
    QPoly::from_coeffs(vec![BigInt::one(); s])
}

/// `[s]_q [s-1]_q ... [s-k+1]_q`; the empty product is 1 and the result is
/// zero whenever `k > s`.
pub fn q_falling(s: usize, k: usize) -> QPoly {
    if k > s {
        return QPoly::zero();
    }
    (s - k + 1..=s).fold(QPoly::one(), |acc, i| acc * q_int(i))
}

/// `[s]_q!`
pub fn q_factorial(s: usize) -> QPoly {
    q_falling(s, s)
}

/// `(t)_k = t (t-1) ... (t-k+1)`, with `(t)_0 = 1`.
pub fn falling_classic(t: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut f = t.clone();
    for _ in 0..k {
        acc *= &f;
        f -= 1;
    }
    acc
}

/// Binomial coefficient, zero when `k > n`.
pub fn binom(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}
