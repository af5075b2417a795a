use std::fmt;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::{rational_roots_with, FactorEffort, Rational, UniPoly};
use crate::error::{Error, Result};

/// Rational parametrizations of the resolvent curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamId {
    Eta,
    Alpha3,
    Beta3,
    Kappa,
    Mu3,
    Alpha4,
    Beta4,
    Delta,
    Iota,
    Mu4,
}

impl ParamId {
    pub const ALL: [ParamId; 10] = [
        ParamId::Eta,
        ParamId::Alpha3,
        ParamId::Beta3,
        ParamId::Kappa,
        ParamId::Mu3,
        ParamId::Alpha4,
        ParamId::Beta4,
        ParamId::Delta,
        ParamId::Iota,
        ParamId::Mu4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParamId::Eta => "eta",
            ParamId::Alpha3 => "alpha3",
            ParamId::Beta3 => "beta3",
            ParamId::Kappa => "kappa",
            ParamId::Mu3 => "mu3",
            ParamId::Alpha4 => "alpha4",
            ParamId::Beta4 => "beta4",
            ParamId::Delta => "delta",
            ParamId::Iota => "iota",
            ParamId::Mu4 => "mu4",
        }
    }
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for ParamId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A rational function `num / den` over Q in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    pub id: ParamId,
    num: UniPoly,
    den: UniPoly,
}

fn poly(c: &[i64]) -> UniPoly {
    UniPoly::from_ints(c)
}

impl Parametrization {
    /// `num / den` with any common factor cancelled.
    pub fn new(id: ParamId, num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, den) =
            if g.degree().unwrap_or(0) > 0 { (num.exact_div(&g)?, den.exact_div(&g)?) } else { (num, den) };
        Ok(Parametrization { id, num, den })
    }

    pub fn get(id: ParamId) -> Self {
        let p = |n: &[i64], d: &[i64]| Parametrization::new(id, poly(n), poly(d)).expect("catalog");
        match id {
            // (t^3 + 3t^2 - 6t + 1) / (t(t - 1))
            ParamId::Eta => p(&[1, -6, 3, 1], &[0, -1, 1]),
            // (1 + t)^2 / (1 - t + t^2)
            ParamId::Alpha3 => p(&[1, 2, 1], &[1, -1, 1]),
            // t^2 (3 - t)
            ParamId::Beta3 => p(&[0, 0, 3, -1], &[1]),
            // (t^3 - 3t^2 - 6t - 1)^2 / (1 + t + t^2)^3
            ParamId::Kappa => {
                Parametrization::new(id, poly(&[-1, -6, -3, 1]).pow(2), poly(&[1, 1, 1]).pow(3)).expect("catalog")
            }
            // alpha3 composed with (t^3 - 3t - 1) / (t^3 + 3t^2 - 1)
            ParamId::Mu3 => {
                Parametrization::get(ParamId::Alpha3).compose(&poly(&[-1, -3, 0, 1]), &poly(&[-1, 0, 3, 1])).with_id(id)
            }
            // 4t^2 / (t^2 + 3)
            ParamId::Alpha4 => p(&[0, 0, 4], &[3, 0, 1]),
            // 4t^2 / (t^2 + 15)
            ParamId::Beta4 => p(&[0, 0, 4], &[15, 0, 1]),
            // (t - 1)^2 (t + 2)
            ParamId::Delta => p(&[2, -3, 0, 1], &[1]),
            // beta4 composed with 45(1 + t - t^2) / ((2t - 1)(t^2 - t - 11))
            ParamId::Iota => Parametrization::get(ParamId::Beta4)
                .compose(&poly(&[45, 45, -45]), &(&poly(&[-1, 2]) * &poly(&[-11, -1, 1])))
                .with_id(id),
            // alpha4 composed with 9t(t + 1) / ((t - 1)(2 + t)(2t + 1))
            ParamId::Mu4 => Parametrization::get(ParamId::Alpha4)
                .compose(&poly(&[0, 9, 9]), &(&(&poly(&[-1, 1]) * &poly(&[2, 1])) * &poly(&[1, 2])))
                .with_id(id),
        }
    }

    fn with_id(mut self, id: ParamId) -> Self {
        self.id = id;
        self
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    /// `self(p / q)` in lowest terms, by homogenizing both parts to the
    /// degree of the rational function.
    pub fn compose(&self, p: &UniPoly, q: &UniPoly) -> Self {
        let d = self.num.deg().max(self.den.deg());
        let homog = |f: &UniPoly| {
            let mut acc = UniPoly::zero();
            for (i, c) in f.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = &p.pow(i as u32) * &q.pow((d - i) as u32);
                acc = &acc + &term.scale(c);
            }
            acc
        };
        Parametrization::new(self.id, homog(&self.num), homog(&self.den)).expect("nonzero denominator")
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = self.den.eval(t);
        (!d.is_zero()).then(|| self.num.eval(t) / d)
    }

    /// Rational poles.
    pub fn undefined_points(&self) -> Result<Vec<Rational>> {
        if self.den.is_constant() {
            return Ok(Vec::new());
        }
        crate::arith::rational_roots(&self.den)
    }

    /// A rational `t` with `self(t) = v`, if one exists.
    pub fn preimage(&self, v: &Rational, effort: &FactorEffort) -> Result<Option<Rational>> {
        let f = &self.num - &self.den.scale(v);
        if f.is_zero() {
            // Constant function equal to v: any non-pole works.
            return Ok(Some(Rational::zero()).filter(|t| self.eval(t).is_some()));
        }
        if f.is_constant() {
            return Ok(None);
        }
        let roots = rational_roots_with(&f, effort)?;
        Ok(roots.into_iter().find(|t| !self.den.eval(t).is_zero()))
    }

    /// Whether `v` lies in the image of this function on `Q`.
    pub fn image_contains(&self, v: &Rational) -> Result<bool> {
        Ok(self.preimage(v, &FactorEffort::default())?.is_some())
    }

    pub fn display(&self) -> String {
        if self.den.is_constant() && self.den.lc() == Rational::from_integer(1.into()) {
            return self.num.display_in("t");
        }
        format!("({}) / ({})", self.num.display_in("t"), self.den.display_in("t"))
    }
}

impl Serialize for Parametrization {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Parametrization", 2)?;
        st.serialize_field("name", self.id.name())?;
        st.serialize_field("formula", &self.display())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn get(id: ParamId) -> Parametrization {
        Parametrization::get(id)
    }

    #[test]
    fn stored_formulas() {
        assert_eq!(get(ParamId::Eta).num(), &poly(&[1, -6, 3, 1]));
        assert_eq!(get(ParamId::Eta).den(), &poly(&[0, -1, 1]));
        assert_eq!(get(ParamId::Kappa).num().deg(), 6);
        assert_eq!(get(ParamId::Kappa).den(), &poly(&[1, 3, 6, 7, 6, 3, 1]));
        assert_eq!(get(ParamId::Delta).num(), &poly(&[2, -3, 0, 1]));
        assert_eq!(get(ParamId::Beta4).den(), &poly(&[15, 0, 1]));
    }

    #[test]
    fn compositions_agree_pointwise() {
        let m3 = |t: &Rational| {
            let n = poly(&[-1, -3, 0, 1]).eval(t);
            let d = poly(&[-1, 0, 3, 1]).eval(t);
            n / d
        };
        let i4 = |t: &Rational| {
            let n = poly(&[45, 45, -45]).eval(t);
            let d = poly(&[-1, 2]).eval(t) * poly(&[-11, -1, 1]).eval(t);
            n / d
        };
        let m4 = |t: &Rational| {
            let n = poly(&[0, 9, 9]).eval(t);
            let d = poly(&[-1, 1]).eval(t) * poly(&[2, 1]).eval(t) * poly(&[1, 2]).eval(t);
            n / d
        };
        for t in [int(2), rat(-3, 7), rat(5, 2), int(-4)] {
            let inner = m3(&t);
            assert_eq!(get(ParamId::Mu3).eval(&t), get(ParamId::Alpha3).eval(&inner));
            assert_eq!(get(ParamId::Iota).eval(&t), get(ParamId::Beta4).eval(&i4(&t)));
            assert_eq!(get(ParamId::Mu4).eval(&t), get(ParamId::Alpha4).eval(&m4(&t)));
        }
    }

    #[test]
    fn composition_is_defined_where_the_inner_map_has_a_pole() {
        // t = 1 is a pole of 9t(t+1)/((t-1)(2+t)(2t+1)); alpha4 tends to 4 there.
        assert_eq!(get(ParamId::Mu4).eval(&int(1)), Some(int(4)));
    }

    #[test]
    fn membership_examples() {
        let eta = get(ParamId::Eta);
        // 2t^3 - 3t^2 - 3t + 2 = (t - 2)(2t - 1)(t + 1).
        assert_eq!(eta.eval(&int(2)), Some(rat(9, 2)));
        assert_eq!(eta.preimage(&rat(9, 2), &FactorEffort::default()).unwrap(), Some(int(-1)));
        assert!(!get(ParamId::Alpha4).image_contains(&int(4)).unwrap());
        assert!(get(ParamId::Beta3).image_contains(&int(2)).unwrap());
        assert_eq!(get(ParamId::Kappa).eval(&int(1)), Some(int(3)));
        assert!(get(ParamId::Kappa).image_contains(&int(3)).unwrap());
    }

    #[test]
    fn images_round_trip() {
        for id in ParamId::ALL {
            let p = get(id);
            for t in [int(2), rat(-1, 3), rat(7, 5), int(11)] {
                if let Some(v) = p.eval(&t) {
                    let w = p.preimage(&v, &FactorEffort::default()).unwrap().expect("in image");
                    assert_eq!(p.eval(&w), Some(v), "{id} at {t}");
                }
            }
        }
    }
}
