//! Modified spherical Bessel functions i_l and k_l, in log space.
//!
//! The first kind is built from ratios obtained by downward recurrence
//! (upward recurrence is unstable for i_l); the third kind recurses upward,
//! which is stable, with a shared power-of-two-free rescaling. Logarithmic
//! derivatives come along for free from the same ratios:
//!
//!   (x i_l)'/i_l = x i_{l-1}/i_l - l,     (x k_l)'/k_l = -x k_{l-1}/k_l - l.

/// Log-space table of i_l(x), k_l(x) and their Riccati logarithmic
/// derivatives for l = 0..=l_max at fixed argument x.
pub struct BesselLn {
    /// ln i_l(x)
    pub ln_i: Vec<f64>,
    /// ln k_l(x)
    pub ln_k: Vec<f64>,
    /// (x i_l(x))' / i_l(x)
    pub di: Vec<f64>,
    /// (x k_l(x))' / k_l(x), negative
    pub dk: Vec<f64>,
}

impl BesselLn {
    pub fn new(l_max: usize, x: f64) -> Self {
        assert!(x > 0.0 && x.is_finite(), "argument must be positive");
        let n = l_max + 1;

        // Ratios rho_l = i_l/i_{l-1} by downward recurrence from a start
        // order high enough that the seed error has died out. The ratio
        // iteration needs O(x) extra levels once x exceeds l_max.
        let start = l_max + 32 + x.ceil() as usize;
        let mut rho_next = x / (2.0 * start as f64 + 3.0);
        let mut rho = vec![0.0; start + 1];
        for l in (1..=start).rev() {
            let r = x / ((2.0 * l as f64 + 1.0) + x * rho_next);
            rho[l] = r;
            rho_next = r;
        }

        // ln i_0 = ln(sinh x / x), written to stay accurate for all x
        let f0 = -(-2.0 * x).exp_m1() / (2.0 * x);
        let ln_i0 = x + f0.ln();
        let mut ln_i = Vec::with_capacity(n);
        let mut di = Vec::with_capacity(n);
        ln_i.push(ln_i0);
        di.push(x / f64::tanh(x));
        let mut acc = ln_i0;
        for l in 1..=l_max {
            acc += rho[l].ln();
            ln_i.push(acc);
            di.push(x / rho[l] - l as f64);
        }

        // k_l upward with a shared log-scale offset
        let mut ln_k = Vec::with_capacity(n);
        let mut dk = Vec::with_capacity(n);
        let ln_k0 = (std::f64::consts::PI / (2.0 * x)).ln() - x;
        ln_k.push(ln_k0);
        dk.push(-x);
        if l_max >= 1 {
            // mantissas for k_{l-1}, k_l relative to the offset e
            let mut km1 = 1.0;
            let mut kl = 1.0 + 1.0 / x;
            let mut e = ln_k0;
            ln_k.push(kl.ln() + e);
            dk.push(-x * km1 / kl - 1.0);
            for l in 1..l_max {
                let knext = km1 + (2.0 * l as f64 + 1.0) / x * kl;
                km1 = kl;
                kl = knext;
                if kl > 1e250 {
                    km1 /= kl;
                    e += kl.ln();
                    kl = 1.0;
                }
                ln_k.push(kl.ln() + e);
                dk.push(-x * km1 / kl - (l as f64 + 1.0));
            }
        }

        BesselLn { ln_i, ln_k, di, dk }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_low_order() {
        // i_l(x) k_{l+1}(x) + i_{l+1}(x) k_l(x) = pi / (2 x^2)
        for &x in &[0.07, 1.0, 13.0, 210.0] {
            let b = BesselLn::new(6, x);
            for l in 0..5 {
                let w = (b.ln_i[l] + b.ln_k[l + 1]).exp() + (b.ln_i[l + 1] + b.ln_k[l]).exp();
                let expect = std::f64::consts::PI / (2.0 * x * x);
                assert!(
                    (w / expect - 1.0).abs() < 1e-12,
                    "wronskian off at l={l}, x={x}"
                );
            }
        }
    }
}
