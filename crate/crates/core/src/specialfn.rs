//! Complete elliptic integral of the first kind and the Jacobi elliptic
//! functions `sn`, `cn`, `dn`.
//!
//! Every routine here takes the **modulus** `k`, not the parameter `m = k²`:
//!
//! ```text
//!          π/2
//!          ⌠           dθ
//! K(k)  =  │  ─────────────────────
//!          ⌡   √(1 − k² sin²θ)
//!          0
//! ```

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Elliptic modulus `k` with `0 ≤ k ≤ 1`.
///
/// `k = 1` is representable because the Jacobi functions have a finite
/// hyperbolic limit there; [`complete_elliptic_k`] rejects it.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::Domain(format!("elliptic modulus must be ≥ 0, got {k}")));
        }
        if k > 1.0 {
            return Err(Error::Domain(format!(
                "elliptic modulus must be ≤ 1, got {k}"
            )));
        }
        Ok(EllipticModulus(k))
    }

    pub fn k(self) -> f64 {
        self.0
    }

    /// Complementary modulus `k' = √(1 − k²)`, computed without cancellation.
    pub fn complementary(self) -> f64 {
        ((1.0 - self.0) * (1.0 + self.0)).sqrt()
    }
}

/// `(sn, cn, dn)` at one argument.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= f64::EPSILON * an {
            return 0.5 * (an + bn);
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// `K(k) = π / (2·AGM(1, k'))`.
pub fn complete_elliptic_k(k: EllipticModulus) -> Result<f64> {
    if k.k() >= 1.0 {
        return Err(Error::Domain(
            "modulus at or beyond singular limit (K diverges at k = 1)".into(),
        ));
    }
    Ok(FRAC_PI_2 / agm(1.0, k.complementary()))
}

/// `sn, cn, dn` by the descending Landen (AGM) scheme.
///
/// Arguments are reduced modulo the real period `4K` first so that the
/// periodicity identities hold to rounding.
pub fn jacobi_elliptic(u: f64, k: EllipticModulus) -> Result<JacobiTriple> {
    if !u.is_finite() {
        return Err(Error::Domain(format!("Jacobi argument must be finite, got {u}")));
    }
    let kk = k.k();
    if kk == 0.0 {
        let (s, c) = u.sin_cos();
        return Ok(JacobiTriple { sn: s, cn: c, dn: 1.0 });
    }
    if kk == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple { sn: u.tanh(), cn: sech, dn: sech });
    }

    let period = 4.0 * complete_elliptic_k(k)?;
    let u = u - period * (u / period).round();

    let mut a = [0.0f64; 32];
    let mut c = [0.0f64; 32];
    a[0] = 1.0;
    c[0] = kk;
    let mut b = k.complementary();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON && n < 31 {
        let an = 0.5 * (a[n] + b);
        c[n + 1] = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = an;
    }

    let mut phi = u * a[n] * (1u64 << n) as f64;
    while n > 0 {
        phi = 0.5 * (phi + (c[n] * phi.sin() / a[n]).asin());
        n -= 1;
    }
    let (sn, cn) = phi.sin_cos();
    // dn² = cn² + k'² sn²: both terms non-negative, no cancellation.
    let kc = k.complementary();
    let dn = (cn * cn + kc * kc * sn * sn).sqrt();
    Ok(JacobiTriple { sn, cn, dn })
}

/// Convenience for callers that already validated the modulus.
pub(crate) fn sn_cn_dn(u: f64, k: EllipticModulus) -> JacobiTriple {
    jacobi_elliptic(u, k).expect("validated modulus and finite argument")
}
