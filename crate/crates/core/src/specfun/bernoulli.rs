use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const MAX_INDEX: usize = 80;

fn table() -> &'static Vec<BigRational> {
    static T: OnceLock<Vec<BigRational>> = OnceLock::new();
    T.get_or_init(|| {
        // sum_{k=0}^{n} C(n+1, k) B_k = 0, B_1 = -1/2 convention
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_INDEX + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_INDEX {
            let mut binom = BigInt::one(); // C(n+1, 0)
            let mut acc = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from_integer(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            // binom is now C(n+1, n) = n + 1
            b.push(-acc / BigRational::from_integer(binom));
        }
        b
    })
}

/// Exact Bernoulli number `B_n` (`B_1 = -1/2`), `n <= 80`.
pub fn bernoulli(n: usize) -> BigRational {
    assert!(n <= MAX_INDEX, "Bernoulli index {n} beyond table");
    table()[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        assert_eq!(bernoulli(20), q(-174611, 330));
    }
}
