//! Fixed-grid trapezoid reference for the reduction factor.
//!
//! Shares no code with the library: dielectric values, reflection amplitudes
//! and the double integral are all written out here from the textbook
//! formulas and integrated on a log-spaced product grid.

#![allow(dead_code)]

pub const C: f64 = 299_792_458.0;
pub const EV: f64 = 1.519267e15;

/// Imaginary-axis dielectric value as a function of xi (rad/s).
pub type EpsFn = Box<dyn Fn(f64) -> f64 + Sync>;

pub fn drude(omega_p: f64, gamma: f64) -> EpsFn {
    Box::new(move |xi| 1.0 + omega_p * omega_p / (xi * (xi + gamma)))
}

pub fn plasma(omega_p: f64) -> EpsFn {
    Box::new(move |xi| 1.0 + omega_p * omega_p / (xi * xi))
}

pub fn two_carrier(omega_p: f64, ratio: f64, ga: f64, gb: f64) -> EpsFn {
    Box::new(move |xi| {
        let w2 = xi * xi;
        let big_r = (w2 + ga * ga) / (w2 + gb * gb);
        let g = ga / (1.0 + ratio * big_r) + gb / (1.0 + 1.0 / (ratio * big_r));
        1.0 + omega_p * omega_p / (xi * (xi + g))
    })
}

pub fn classical_au() -> EpsFn {
    drude(9.0 * EV, 0.02 * EV)
}

pub fn annealed_au() -> EpsFn {
    two_carrier(9.0 * EV, 0.0077, 0.93e14, 25e14)
}

pub fn nonannealed_au() -> EpsFn {
    two_carrier(9.0 * EV, 0.058, 1.18e14, 25e14)
}

/// A single optional film on a substrate; `substrate = None` is an ideal mirror.
pub struct Mirror {
    pub film: Option<(f64, EpsFn)>,
    pub substrate: Option<EpsFn>,
}

fn interface(e1: f64, k1: f64, e2: f64, k2: f64) -> (f64, f64) {
    (
        (k1 - k2) / (k1 + k2),
        (e2 * k1 - e1 * k2) / (e2 * k1 + e1 * k2),
    )
}

impl Mirror {
    fn amplitudes(
        &self,
        eps_film: Option<f64>,
        eps_sub: Option<f64>,
        xi: f64,
        q: f64,
    ) -> (f64, f64) {
        let k = |e: f64| (e * xi * xi / (C * C) + q * q).sqrt();
        let k0 = k(1.0);
        match (&self.film, eps_film) {
            (None, _) => match eps_sub {
                None => (-1.0, 1.0),
                Some(es) => interface(1.0, k0, es, k(es)),
            },
            (Some((d, _)), Some(ef)) => {
                let kf = k(ef);
                let (fs, fp) = interface(1.0, k0, ef, kf);
                let (bs, bp) = match eps_sub {
                    None => (-1.0, 1.0),
                    Some(es) => interface(ef, kf, es, k(es)),
                };
                let x = (-2.0 * kf * d).exp();
                (
                    (fs + bs * x) / (1.0 + fs * bs * x),
                    (fp + bp * x) / (1.0 + fp * bp * x),
                )
            }
            (Some(_), None) => unreachable!(),
        }
    }

    fn eps(&self, xi: f64) -> (Option<f64>, Option<f64>) {
        (
            self.film.as_ref().map(|(_, f)| f(xi)),
            self.substrate.as_ref().map(|f| f(xi)),
        )
    }
}

fn log_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}

/// eta on an `n x n` grid in scaled variables t = 2 L xi / c, u = 2 L Q.
pub fn eta_trapezoid(m1: &Mirror, m2: &Mirror, separation: f64, n: usize) -> f64 {
    let t = log_nodes(1e-7, 60.0, n);
    let mut u = vec![0.0];
    u.extend(log_nodes(1e-7, 60.0, n - 1));
    let wt = trapezoid_weights(&t);
    let wu = trapezoid_weights(&u);
    let mut total = 0.0;
    for (i, &ti) in t.iter().enumerate() {
        let xi = C * ti / (2.0 * separation);
        let (f1, s1) = m1.eps(xi);
        let (f2, s2) = m2.eps(xi);
        let mut row = 0.0;
        for (j, &uj) in u.iter().enumerate() {
            let y = (ti * ti + uj * uj).sqrt();
            let q = uj / (2.0 * separation);
            let (r1s, r1p) = m1.amplitudes(f1, s1, xi, q);
            let (r2s, r2p) = m2.amplitudes(f2, s2, xi, q);
            let e = (-y).exp();
            let g = |rho: f64| rho * e / (1.0 - rho * e);
            row += wu[j] * uj * y * (g(r1s * r2s) + g(r1p * r2p));
        }
        total += wt[i] * row;
    }
    15.0 / (2.0 * std::f64::consts::PI.powi(4)) * total
}
