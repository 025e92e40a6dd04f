//! The ring `Z[zeta]` for a primitive twelfth root of unity `zeta`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// `c0 + c1 z + c2 z^2 + c3 z^3`, reduced with `z^4 = z^2 - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cyc12(pub [i64; 4]);

impl Cyc12 {
    pub const fn int(c: i64) -> Cyc12 {
        Cyc12([c, 0, 0, 0])
    }

    /// `zeta^k` for any integer `k`.
    ///
    /// ```
    /// use twostep::cyclotomic::Cyc12;
    /// assert_eq!(Cyc12::zeta_pow(6), Cyc12::int(-1));
    /// assert_eq!(Cyc12::zeta_pow(4), Cyc12([-1, 0, 1, 0]));
    /// ```
    pub fn zeta_pow(k: i64) -> Cyc12 {
        let k = k.rem_euclid(12);
        let (k, sign) = if k >= 6 { (k - 6, -1) } else { (k, 1) };
        let mut c = [0; 4];
        match k {
            0..=3 => c[k as usize] = sign,
            4 => c = [-sign, 0, sign, 0],
            _ => c = [0, -sign, 0, sign],
        }
        Cyc12(c)
    }

    /// Complex conjugation, `zeta -> zeta^11`.
    pub fn conj(self) -> Cyc12 {
        (0..4).fold(Cyc12::zero(), |acc, k| {
            acc + Cyc12::zeta_pow(-(k as i64)) * Cyc12::int(self.0[k])
        })
    }

    pub fn to_complex(self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.0.iter().enumerate() {
            let a = std::f64::consts::PI / 6.0 * k as f64;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re, im)
    }

    pub fn scale(self, k: i64) -> Cyc12 {
        Cyc12(self.0.map(|c| c * k))
    }
}

impl Add for Cyc12 {
    type Output = Cyc12;
    fn add(self, o: Cyc12) -> Cyc12 {
        Cyc12([0, 1, 2, 3].map(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Cyc12 {
    type Output = Cyc12;
    fn sub(self, o: Cyc12) -> Cyc12 {
        Cyc12([0, 1, 2, 3].map(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Cyc12 {
    type Output = Cyc12;
    fn neg(self) -> Cyc12 {
        Cyc12(self.0.map(|c| -c))
    }
}

impl AddAssign for Cyc12 {
    fn add_assign(&mut self, o: Cyc12) {
        *self = *self + o;
    }
}

impl SubAssign for Cyc12 {
    fn sub_assign(&mut self, o: Cyc12) {
        *self = *self - o;
    }
}

impl Mul for Cyc12 {
    type Output = Cyc12;
    fn mul(self, o: Cyc12) -> Cyc12 {
        let mut prod = [0i64; 7];
        for i in 0..4 {
            for j in 0..4 {
                prod[i + j] += self.0[i] * o.0[j];
            }
        }
        // z^k = z^(k-2) - z^(k-4) for k >= 4
        for k in (4..7).rev() {
            let c = prod[k];
            prod[k] = 0;
            prod[k - 2] += c;
            prod[k - 4] -= c;
        }
        Cyc12([prod[0], prod[1], prod[2], prod[3]])
    }
}

impl Zero for Cyc12 {
    fn zero() -> Cyc12 {
        Cyc12::default()
    }
    fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }
}

impl One for Cyc12 {
    fn one() -> Cyc12 {
        Cyc12::int(1)
    }
}

impl fmt::Display for Cyc12 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..4).rev() {
            let c = self.0[k];
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            let unit = match k {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{k}"),
            };
            match (mag, unit.is_empty()) {
                (_, true) => write!(f, "{mag}")?,
                (1, false) => write!(f, "{unit}")?,
                _ => write!(f, "{mag}*{unit}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn powers() {
        assert_eq!(Cyc12::zeta_pow(0), Cyc12::one());
        assert_eq!(Cyc12::zeta_pow(12), Cyc12::one());
        assert_eq!(Cyc12::zeta_pow(6), -Cyc12::one());
        for k in -24..24 {
            assert_eq!(Cyc12::zeta_pow(k) * Cyc12::zeta_pow(1), Cyc12::zeta_pow(k + 1));
        }
        // three unit vectors at 120 degrees
        let s = Cyc12::zeta_pow(11) + Cyc12::zeta_pow(7) + Cyc12::zeta_pow(3);
        assert!(s.is_zero());
        assert_eq!(Cyc12::zeta_pow(5).conj(), Cyc12::zeta_pow(7));
    }

    #[test]
    fn display() {
        assert_eq!(Cyc12::zeta_pow(5).to_string(), "z^3 - z");
        assert_eq!(Cyc12::zero().to_string(), "0");
        assert_eq!(Cyc12([2, 0, 0, -1]).to_string(), "-z^3 + 2");
    }

    fn arb() -> impl Strategy<Value = Cyc12> {
        prop::array::uniform4(-20i64..20).prop_map(Cyc12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn product_matches_floating_point(a in arb(), b in arb()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (a * b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
        }

        #[test]
        fn ring_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a * b, b * a);
        }
    }
}
