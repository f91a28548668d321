//! Associated Legendre functions on t > 1 and the angular functions the
//! scattering kernels are built from, all as logarithms.
//!
//! With p_l^m(t) = (t^2-1)^{m/2} d^m P_l(t)/dt^m (no Condon-Shortley phase,
//! so everything is positive on t > 1), the two angular combinations are
//!
//!   pi_lm(t)  = m p_l^m(t) / sqrt(t^2-1),
//!   tau_lm(t) = [ l t p_l^m(t) - (l+m) p_{l-1}^m(t) ] / sqrt(t^2-1),
//!
//! the second being sqrt(t^2-1) d p_l^m/dt rewritten through the recurrence.
//! The upward l-recurrence is stable on t > 1; mantissas of consecutive
//! orders share one scale factor so the tau difference never mixes scales.

/// ln pi_lm and ln tau_lm for l = l_min..=l_max over a set of nodes.
/// Row r corresponds to l = l_min + r. Entries are -inf where the function
/// vanishes (all of pi for m = 0).
pub struct AngularLn {
    pub l_min: usize,
    pub l_max: usize,
    /// row-major [l index][node]
    pub ln_pi: Vec<f64>,
    pub ln_tau: Vec<f64>,
    pub n_nodes: usize,
}

impl AngularLn {
    pub fn new(m: usize, l_max: usize, t: &[f64]) -> Self {
        let l_min = m.max(1);
        assert!(l_max >= l_min);
        let nl = l_max - l_min + 1;
        let ni = t.len();
        let mut ln_pi = vec![f64::NEG_INFINITY; nl * ni];
        let mut ln_tau = vec![f64::NEG_INFINITY; nl * ni];

        let ln_dfact = crate::special::ln_double_factorial_odd(2 * m as i64 - 1);
        for (i, &ti) in t.iter().enumerate() {
            debug_assert!(ti > 1.0);
            let ln_s = 0.5 * (ti * ti - 1.0).ln();
            // seed at l = m: mantissa 1 with scale ln p_m^m
            let mut e = ln_dfact + m as f64 * ln_s;
            let mut pm1 = 0.0f64;
            let mut pl = 1.0f64;
            for l in l_min..=l_max {
                if l > m {
                    let lf = l as f64;
                    let mf = m as f64;
                    let pnext =
                        ((2.0 * lf - 1.0) * ti * pl - (lf - 1.0 + mf) * pm1) / (lf - mf);
                    pm1 = pl;
                    pl = pnext;
                    if pl > 1e250 {
                        let s = pl;
                        pl = 1.0;
                        pm1 /= s;
                        e += s.ln();
                    }
                }
                let r = l - l_min;
                if m > 0 {
                    ln_pi[r * ni + i] = (m as f64 * pl).ln() + e - ln_s;
                }
                let num = l as f64 * ti * pl - (l + m) as f64 * pm1;
                if num > 0.0 {
                    ln_tau[r * ni + i] = num.ln() + e - ln_s;
                }
            }
        }

        AngularLn {
            l_min,
            l_max,
            ln_pi,
            ln_tau,
            n_nodes: ni,
        }
    }

    #[inline]
    pub fn pi_row(&self, l: usize) -> &[f64] {
        let r = l - self.l_min;
        &self.ln_pi[r * self.n_nodes..(r + 1) * self.n_nodes]
    }

    #[inline]
    pub fn tau_row(&self, l: usize) -> &[f64] {
        let r = l - self.l_min;
        &self.ln_tau[r * self.n_nodes..(r + 1) * self.n_nodes]
    }
}
