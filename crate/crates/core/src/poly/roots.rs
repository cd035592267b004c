//! Certified complex roots and Mahler measures.
//!
//! Roots are approximated in `f64` by Aberth iteration, refined by Newton
//! steps at the working precision, and then enclosed in inclusion disks:
//! with `W_j = f(z_j) / (a_n ∏_{k≠j}(z_j - z_k))`, every root lies in a disk
//! `|z - z_j| <= n|W_j|`, and a connected union of `m` disks holds exactly
//! `m` roots.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Signed;

use super::IntPoly;
use crate::error::{Error, Result};
use crate::rigor::complex::CInterval;
use crate::rigor::{ln_interval, Dyadic, RInterval};

fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let r0 = if a[0] != 0.0 {
        a[0].abs().powf(1.0 / n as f64)
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(r0, t)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let off = w / (Complex64::new(1.0, 0.0) - w * s);
            if off.is_finite() {
                z[k] -= off;
                worst = worst.max(off.norm() / z[k].norm().max(1e-300));
            }
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn horner(f: &[CInterval], z: &CInterval) -> CInterval {
    let prec = z.re.precision();
    f.iter().rev().fold(CInterval::zero(prec), |acc, c| acc.mul(z).add(c))
}

/// One inclusion disk.
#[derive(Clone, Debug)]
pub struct RootDisk {
    pub center: CInterval,
    pub radius: Dyadic,
}

/// Inclusion disks grouped into connected components.
#[derive(Clone, Debug)]
pub struct CertifiedRoots {
    pub disks: Vec<RootDisk>,
    pub components: Vec<Vec<usize>>,
}

impl CertifiedRoots {
    /// Every component is a single disk, so each disk isolates one root.
    pub fn isolated(&self) -> bool {
        self.components.iter().all(|c| c.len() == 1)
    }

    /// Enclosure of a root as a complex box; only meaningful when isolated.
    pub fn root_box(&self, j: usize) -> CInterval {
        CInterval::disk(&self.disks[j].center, &self.disks[j].radius)
    }

    /// Modulus range and multiplicity of each component.
    pub fn component_moduli(&self) -> Vec<(RInterval, usize)> {
        self.components
            .iter()
            .map(|comp| {
                let mut lo: Option<Dyadic> = None;
                let mut hi: Option<Dyadic> = None;
                let mut prec = 0;
                for &j in comp {
                    let d = &self.disks[j];
                    let m = d.center.abs();
                    prec = m.precision();
                    let l = m.lo().sub_exact(&d.radius);
                    let h = m.hi().add_exact(&d.radius);
                    lo = Some(lo.map_or(l.clone(), |x| x.min(l)));
                    hi = Some(hi.map_or(h.clone(), |x| x.max(h)));
                }
                let lo = lo.unwrap().max(Dyadic::zero());
                (RInterval::new(lo, hi.unwrap(), prec).with_precision(prec), comp.len())
            })
            .collect()
    }
}

fn polish(f: &[CInterval], df: &[CInterval], z: &mut CInterval, wp: u32) {
    let tol = Dyadic::one().mul_pow2(-(wp as i64) + 8);
    for _ in 0..60 {
        let fz = horner(f, z);
        let dz = horner(df, z);
        let step = match fz.div(&dz) {
            Ok(s) => s.mid(wp),
            Err(_) => return,
        };
        *z = z.sub(&step).mid(wp);
        let size = z.abs_hi().max(Dyadic::one());
        if step.abs_hi() <= size.mul_exact(&tol) {
            return;
        }
    }
}

fn attempt(f: &IntPoly, prec: u32) -> Result<CertifiedRoots> {
    let n = f.degree();
    let wp = prec + 32;
    let fc: Vec<CInterval> = f.coeffs().iter().map(|c| CInterval::from_int(c, wp)).collect();
    let dfc: Vec<CInterval> = f
        .derivative()
        .coeffs()
        .iter()
        .map(|c| CInterval::from_int(c, wp))
        .collect();
    let approx = aberth(&f.to_f64());
    let mut zs: Vec<CInterval> = approx
        .iter()
        .map(|c| {
            CInterval::point(
                Dyadic::from_f64(c.re).unwrap_or_else(Dyadic::zero),
                Dyadic::from_f64(c.im).unwrap_or_else(Dyadic::zero),
                wp,
            )
        })
        .collect();
    for z in zs.iter_mut() {
        polish(&fc, &dfc, z, wp);
    }
    let lead = CInterval::from_int(&f.lead(), wp);
    let nn = Dyadic::from_int(n as u64);
    let mut disks = Vec::with_capacity(n);
    for j in 0..n {
        let mut den = lead.clone();
        for k in 0..n {
            if k != j {
                den = den.mul(&zs[j].sub(&zs[k]));
            }
        }
        let w = horner(&fc, &zs[j])
            .div(&den)
            .map_err(|_| Error::precision(prec * 2, "coincident root approximations"))?;
        disks.push(RootDisk {
            center: zs[j].clone(),
            radius: w.abs_hi().mul_exact(&nn),
        });
    }
    // Union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let dist = disks[i].center.sub(&disks[j].center).abs();
            if dist.lo() <= &disks[i].radius.add_exact(&disks[j].radius) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if index[r] == usize::MAX {
            index[r] = comps.len();
            comps.push(vec![]);
        }
        comps[index[r]].push(i);
    }
    zs.clear();
    Ok(CertifiedRoots {
        disks,
        components: comps,
    })
}

/// Inclusion disks for the roots of `f` (degree >= 1). When `need_isolation`
/// is set, precision is raised until every disk is separate.
pub fn certified_roots(f: &IntPoly, prec: u32, need_isolation: bool) -> Result<CertifiedRoots> {
    if f.is_zero() || f.degree() == 0 {
        return Err(Error::Domain("roots of a constant polynomial".into()));
    }
    let mut p = prec;
    for _ in 0..4 {
        match attempt(f, p) {
            Ok(r) if !need_isolation || r.isolated() => return Ok(r),
            Ok(_) | Err(Error::Precision { .. }) => p *= 2,
            Err(e) => return Err(e),
        }
    }
    Err(Error::precision(p, format!("could not isolate the roots of {f}")))
}

fn max1(x: &RInterval) -> RInterval {
    x.max(&RInterval::one(x.precision()))
}

/// Enclosure of the Mahler measure `|a_n| ∏ max(1, |root|)`.
pub fn mahler_measure(f: &IntPoly, prec: u32) -> Result<RInterval> {
    if f.is_zero() {
        return Err(Error::Domain("Mahler measure of the zero polynomial".into()));
    }
    let n = f.degree();
    let lead = f.lead().abs();
    match n {
        0 => Ok(RInterval::from_int(lead, prec)),
        1 => Ok(RInterval::from_int(lead.max(f.coeff(0).abs()), prec)),
        2 => {
            let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
            let disc: BigInt = &b * &b - BigInt::from(4) * &a * &c;
            if disc.is_negative() {
                // conjugate pair with |z|^2 = c/a
                return Ok(RInterval::from_int(a.abs().max(c.abs()), prec));
            }
            let wp = prec + 16;
            let s = if disc.sqrt().pow(2) == disc {
                RInterval::from_int(disc.sqrt(), wp)
            } else {
                RInterval::from_int(disc, wp).sqrt()?
            };
            let two_a = RInterval::from_int(BigInt::from(2) * &a, wp);
            let mb = RInterval::from_int(-b, wp);
            let r1 = mb.add(&s).div(&two_a)?;
            let r2 = mb.sub(&s).div(&two_a)?;
            Ok(RInterval::from_int(lead, wp)
                .mul(&max1(&r1.abs()))
                .mul(&max1(&r2.abs()))
                .with_precision(prec))
        }
        _ => {
            let roots = certified_roots(f, prec, false)?;
            let mut m = RInterval::from_int(lead, prec + 32);
            for (modulus, mult) in roots.component_moduli() {
                m = m.mul(&max1(&modulus).powi(mult as u64));
            }
            Ok(m.with_precision(prec))
        }
    }
}

/// Enclosure of `log M(f)`.
pub fn log_mahler_measure(f: &IntPoly, prec: u32) -> Result<RInterval> {
    let m = mahler_measure(f, prec + 8)?;
    let l = ln_interval(&m)?;
    Ok(l.clamp_nonneg().with_precision(prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measures_of_small_polynomials() {
        let m = mahler_measure(&IntPoly::from_i64(&[-11, 0, 13]), 128).unwrap();
        assert!(m.contains(&Dyadic::from_int(13)));
        let m = mahler_measure(&IntPoly::from_i64(&[5, -6, 5]), 128).unwrap();
        assert!(m.contains(&Dyadic::from_int(5)));
        let m = mahler_measure(&IntPoly::from_i64(&[-1, -1, 1]), 128).unwrap();
        assert!((m.mid_f64() - 1.618033988749895).abs() < 1e-15);
    }

    #[test]
    fn lehmer_measure() {
        let f = IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure(&f, 128).unwrap();
        assert!((m.mid_f64() - 1.1762808182599175).abs() < 1e-14);
        assert!(m.width_f64() < 1e-25);
        let roots = certified_roots(&f, 128, true).unwrap();
        assert_eq!(roots.disks.len(), 10);
    }

    #[test]
    fn binomial_roots_share_a_circle() {
        let f = IntPoly::from_i64(&[-23, 0, 0, 29]);
        let m = mahler_measure(&f, 128).unwrap();
        assert!(m.contains(&Dyadic::from_int(29)));
        assert!(m.width_f64() < 1e-25);
    }
}
