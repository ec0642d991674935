use num_traits::{One, Zero};

use super::rational::{factorial, Rational};

/// Coefficients of `(e^t - 1)/t = sum t^n/(n+1)!` through `t^n`.
pub fn exp_quotient_coeffs(n: usize) -> Vec<Rational> {
    (0..=n).map(|k| factorial(k + 1).recip()).collect()
}

/// Coefficients of `t/(e^t - 1)` through `t^n`, by inverting
/// [`exp_quotient_coeffs`].
pub fn todd_coeffs(n: usize) -> Vec<Rational> {
    let p = exp_quotient_coeffs(n);
    let mut q: Vec<Rational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut s = if k == 0 { Rational::one() } else { Rational::zero() };
        for i in 1..=k {
            s -= &p[i] * &q[k - i];
        }
        q.push(s);
    }
    q
}

/// `B_m` defined by `T/(1 - e^{-T}) = sum B_m T^m/m!`, so `B_1 = 1/2`.
pub fn bernoulli(m: usize) -> Rational {
    let b = &todd_coeffs(m)[m] * factorial(m);
    if m % 2 == 1 {
        -b
    } else {
        b
    }
}

/// `B_m` for `T/(e^T - 1)`, i.e. `B_1 = -1/2`; equal to `(-1)^m bernoulli(m)`.
pub fn bernoulli_minus(m: usize) -> Rational {
    &todd_coeffs(m)[m] * factorial(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formal::rational::{int, rat};

    #[test]
    fn first_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli_minus(1), rat(-1, 2));
    }

    #[test]
    fn generating_function_identity() {
        // sum B_m T^m/m! * (1 - e^{-T}) = T + O(T^21)
        let m = 20;
        let b: Vec<Rational> = (0..=m).map(|k| bernoulli(k) / factorial(k)).collect();
        let one_minus_exp: Vec<Rational> = (0..=m)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    let s = factorial(k).recip();
                    if k % 2 == 1 {
                        s
                    } else {
                        -s
                    }
                }
            })
            .collect();
        for n in 0..=m {
            let c: Rational = (0..=n).map(|i| &b[i] * &one_minus_exp[n - i]).sum();
            assert_eq!(c, if n == 1 { int(1) } else { int(0) }, "T^{n}");
        }
    }
}
