//! Classical fixed-step Runge-Kutta integration of small dense systems.

/// One RK4 step of `y' = f(t, y)`.
pub fn rk4_step<const N: usize>(f: &impl Fn(f64, &[f64; N]) -> [f64; N], t: f64, y: &[f64; N], h: f64) -> [f64; N] {
    let shift = |y: &[f64; N], k: &[f64; N], s: f64| {
        let mut out = *y;
        for i in 0..N {
            out[i] += s * k[i];
        }
        out
    };
    let k1 = f(t, y);
    let k2 = f(t + h / 2.0, &shift(y, &k1, h / 2.0));
    let k3 = f(t + h / 2.0, &shift(y, &k2, h / 2.0));
    let k4 = f(t + h, &shift(y, &k3, h));
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrate from `t0` over `steps` steps of size `h`, returning every state
/// including the initial one.
pub fn rk4_trajectory<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    h: f64,
    steps: usize,
) -> Vec<(f64, [f64; N])> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push((t0, y));
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        y = rk4_step(&f, t, &y, h);
        out.push((t0 + (k + 1) as f64 * h, y));
    }
    out
}

/// Final state only.
pub fn rk4_final<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    h: f64,
    steps: usize,
) -> [f64; N] {
    let mut y = y0;
    for k in 0..steps {
        y = rk4_step(&f, t0 + k as f64 * h, &y, h);
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let y = rk4_final(|_, y: &[f64; 2]| [y[1], -y[0]], 0.0, [1.0, 0.0], 1e-3, 6283);
        let err = (y[0] - (6.283f64).cos()).abs();
        assert!(err < 1e-10, "{err}");
    }
}
