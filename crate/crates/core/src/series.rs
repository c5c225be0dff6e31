//! Summation helpers for the impedance mode sums.

use num_complex::Complex64;

/// Neumaier-compensated accumulator for complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: Neumaier,
    im: Neumaier,
}

impl CompensatedSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    compensation: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

// B_2, B_4, ..., B_14
const BERNOULLI_EVEN: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Hurwitz zeta `sum_{k>=0} (a + k)^(-s)` for integer `s >= 2`, `a > 0`.
///
/// Direct summation until the argument reaches 16, then Euler-Maclaurin
/// with seven Bernoulli corrections; relative error is near machine precision.
pub fn hurwitz_zeta(s: u32, a: f64) -> f64 {
    assert!(s >= 2, "hurwitz_zeta diverges for s < 2");
    assert!(a > 0.0, "hurwitz_zeta needs a > 0");
    const SHIFT: f64 = 16.0;
    let exponent = -(s as i32);
    let s = f64::from(s);

    let mut head = 0.0;
    let mut x = a;
    while x < SHIFT {
        head += x.powi(exponent);
        x += 1.0;
    }

    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    let mut rising = s; // s (s+1) ... (s+2j-2)
    let mut factorial = 2.0; // (2j)!
    let mut power = x.powf(-s - 1.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        tail += b / factorial * rising * power;
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (s + k - 1.0) * (s + k);
        factorial *= (k + 1.0) * (k + 2.0);
        power /= x * x;
    }
    head + tail
}
