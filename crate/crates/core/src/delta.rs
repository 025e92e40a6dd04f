//! Forms that are linear in `d0, d1, d2` (the variables attached to the
//! simple labels), and the tower ring that holds auras and the recursion.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::cyclotomic::Cyc12;
use crate::label::Label;
use crate::poly::{Coeff, Poly, YPoly};

/// `c0*d0 + c1*d1 + c2*d2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DeltaForm<T>(pub [T; 3]);

impl<T: Coeff> DeltaForm<T> {
    pub fn zero() -> Self {
        DeltaForm([T::zero(), T::zero(), T::zero()])
    }

    /// `d_a` for a simple label `a`.
    pub fn delta(a: Label) -> Self {
        assert!(a.is_simple(), "d_{a} is only defined for simple labels");
        let mut f = Self::zero();
        f.0[a.index()] = T::one();
        f
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, k: &T) -> Self {
        DeltaForm(self.0.clone().map(|c| c * k.clone()))
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> DeltaForm<U> {
        DeltaForm([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }

    /// Substitutes numbers for `d0, d1, d2`.
    pub fn specialize(&self, d: [T; 3]) -> T {
        let [a, b, c] = self.0.clone();
        let [x, y, z] = d;
        a * x + b * y + c * z
    }
}

impl<T: Coeff> Add for &DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn add(self, o: &DeltaForm<T>) -> DeltaForm<T> {
        DeltaForm([0, 1, 2].map(|i| self.0[i].clone() + o.0[i].clone()))
    }
}

impl<T: Coeff> Sub for &DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn sub(self, o: &DeltaForm<T>) -> DeltaForm<T> {
        DeltaForm([0, 1, 2].map(|i| self.0[i].clone() - o.0[i].clone()))
    }
}

impl<T: Coeff> Neg for &DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn neg(self) -> DeltaForm<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Coeff> Add for DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn add(self, o: DeltaForm<T>) -> DeltaForm<T> {
        &self + &o
    }
}

impl<T: Coeff> Sub for DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn sub(self, o: DeltaForm<T>) -> DeltaForm<T> {
        &self - &o
    }
}

impl<T: Coeff> Neg for DeltaForm<T> {
    type Output = DeltaForm<T>;
    fn neg(self) -> DeltaForm<T> {
        -&self
    }
}

impl<T: Coeff> fmt::Display for DeltaForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, body) = c.split_sign();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if body.is_empty() {
                write!(f, "d{i}")?;
            } else {
                write!(f, "{body}*d{i}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A δ-linear aura with cyclotomic coefficients.
pub type Aura = DeltaForm<Cyc12>;

/// A δ-linear form over cyclotomic polynomials in `y`.
pub type EquivAura = DeltaForm<Poly<Cyc12>>;

impl Aura {
    /// `d_a * zeta^k`.
    pub fn unit(a: Label, k: i64) -> Aura {
        Aura::delta(a).scale(&Cyc12::zeta_pow(k))
    }

    /// Rotation by `k` sixth-turns.
    pub fn rotate(&self, sixths: i64) -> Aura {
        self.scale(&Cyc12::zeta_pow(2 * sixths))
    }

    pub fn times_poly(&self, p: &YPoly) -> EquivAura {
        let pc = p.map_coeffs(|&c| Cyc12::int(c));
        self.map(|c| pc.scale(c))
    }
}

/// An element of `Z[zeta][d0,d1,d2][y]` of δ-degree at most one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerElem {
    pub delta: EquivAura,
    pub free: Poly<Cyc12>,
}

impl TowerElem {
    pub fn zero() -> TowerElem {
        TowerElem { delta: EquivAura::zero(), free: Poly::zero() }
    }

    pub fn from_delta(delta: EquivAura) -> TowerElem {
        TowerElem { delta, free: Poly::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.free.is_zero()
    }

    pub fn scale_poly(&self, p: &Poly<Cyc12>) -> TowerElem {
        TowerElem { delta: self.delta.scale(p), free: &self.free * p }
    }

    pub fn scale_y(&self, p: &YPoly) -> TowerElem {
        self.scale_poly(&p.map_coeffs(|&c| Cyc12::int(c)))
    }

    pub fn scale_zeta(&self, k: i64) -> TowerElem {
        self.scale_poly(&Poly::constant(Cyc12::zeta_pow(k)))
    }
}

impl Add for &TowerElem {
    type Output = TowerElem;
    fn add(self, o: &TowerElem) -> TowerElem {
        TowerElem { delta: &self.delta + &o.delta, free: &self.free + &o.free }
    }
}

impl Sub for &TowerElem {
    type Output = TowerElem;
    fn sub(self, o: &TowerElem) -> TowerElem {
        TowerElem { delta: &self.delta - &o.delta, free: &self.free - &o.free }
    }
}

impl Add for TowerElem {
    type Output = TowerElem;
    fn add(self, o: TowerElem) -> TowerElem {
        &self + &o
    }
}

impl Sub for TowerElem {
    type Output = TowerElem;
    fn sub(self, o: TowerElem) -> TowerElem {
        &self - &o
    }
}

/// Multiplying two δ-forms would leave δ-degree one, so only δ-free
/// factors are allowed.
impl Mul<&YPoly> for &TowerElem {
    type Output = TowerElem;
    fn mul(self, p: &YPoly) -> TowerElem {
        self.scale_y(p)
    }
}

impl fmt::Display for TowerElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.delta.is_zero(), self.free.is_zero()) {
            (_, true) => write!(f, "{}", self.delta),
            (true, false) => write!(f, "{}", self.free),
            _ => write!(f, "{} + {}", self.delta, self.free),
        }
    }
}

impl<T: Coeff> Zero for DeltaForm<T> {
    fn zero() -> Self {
        DeltaForm::zero()
    }
    fn is_zero(&self) -> bool {
        DeltaForm::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_and_rotation() {
        let a = Aura::unit(Label::ZERO, 3);
        assert_eq!(a.rotate(6), a);
        assert_eq!(a.rotate(3), -a.clone());
        assert_eq!(a.to_string(), "z^3*d0");
        let s = &Aura::unit(Label::ONE, 5) + &Aura::unit(Label::ZERO, 1);
        assert_eq!(s.to_string(), "z*d0 + (z^3 - z)*d1");
    }

    #[test]
    fn specialization() {
        let f = DeltaForm([2i64, -1, 0]);
        assert_eq!(f.specialize([2, 1, 0]), 3);
    }

    #[test]
    fn tower_arithmetic() {
        let t = TowerElem::from_delta(Aura::unit(Label::TWO, 0).times_poly(&YPoly::var(2)));
        let u = t.scale_zeta(6);
        assert!((&t + &u).is_zero());
        assert_eq!((&t * &YPoly::var(1)).delta.0[2].degree(), Some(2));
    }
}
