//! Rectangular complex intervals.

use num_bigint::BigInt;

use super::dyadic::{Dyadic, Round};
use super::interval::RInterval;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CInterval {
    pub re: RInterval,
    pub im: RInterval,
}

impl CInterval {
    pub fn new(re: RInterval, im: RInterval) -> Self {
        CInterval { re, im }
    }

    pub fn point(re: Dyadic, im: Dyadic, prec: u32) -> Self {
        CInterval {
            re: RInterval::point(re, prec),
            im: RInterval::point(im, prec),
        }
    }

    pub fn from_int(n: &BigInt, prec: u32) -> Self {
        CInterval {
            re: RInterval::from_int(n.clone(), prec),
            im: RInterval::zero(prec),
        }
    }

    pub fn zero(prec: u32) -> Self {
        CInterval::point(Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn one(prec: u32) -> Self {
        CInterval::point(Dyadic::one(), Dyadic::zero(), prec)
    }

    /// Disk of radius `r` around a point, enclosed in a square.
    pub fn disk(center: &CInterval, r: &Dyadic) -> Self {
        let prec = center.re.precision();
        let rad = RInterval::new(r.neg(), r.clone(), prec);
        CInterval {
            re: center.re.add(&rad),
            im: center.im.add(&rad),
        }
    }

    pub fn add(&self, o: &CInterval) -> CInterval {
        CInterval {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &CInterval) -> CInterval {
        CInterval {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> CInterval {
        CInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &CInterval) -> CInterval {
        CInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, k: &RInterval) -> CInterval {
        CInterval {
            re: self.re.mul(k),
            im: self.im.mul(k),
        }
    }

    pub fn norm_sqr(&self) -> RInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self) -> RInterval {
        self.norm_sqr().sqrt().expect("norm is non-negative")
    }

    pub fn div(&self, o: &CInterval) -> Result<CInterval> {
        let den = o.norm_sqr();
        if den.contains_zero() {
            return Err(Error::Domain("complex division by an interval containing 0".into()));
        }
        let num = CInterval {
            re: self.re.mul(&o.re).add(&self.im.mul(&o.im)),
            im: self.im.mul(&o.re).sub(&self.re.mul(&o.im)),
        };
        Ok(CInterval {
            re: num.re.div(&den)?,
            im: num.im.div(&den)?,
        })
    }

    /// Midpoint rounded to `prec` bits.
    pub fn mid(&self, prec: u32) -> CInterval {
        CInterval::point(
            self.re.mid().round(prec, Round::Down),
            self.im.mid().round(prec, Round::Down),
            prec,
        )
    }

    /// Upper bound on `|z|`.
    pub fn abs_hi(&self) -> Dyadic {
        self.abs().hi().clone()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.mid_f64(), self.im.mid_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_and_division() {
        let p = 64;
        let a = CInterval::new(RInterval::from_int(3, p), RInterval::from_int(4, p));
        assert!(a.abs().contains(&Dyadic::from_int(5)));
        let b = CInterval::new(RInterval::from_int(1, p), RInterval::from_int(-2, p));
        let q = a.mul(&b).div(&b).unwrap();
        assert!(q.re.contains(&Dyadic::from_int(3)) && q.im.contains(&Dyadic::from_int(4)));
    }
}
