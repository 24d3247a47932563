//! Compensated (Kahan–Babuška–Neumaier) summation and double-double
//! arithmetic.

/// Running sum that carries the rounding error of every addition.
#[derive(Debug, Default, Clone, Copy, PartialEq)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new(initial: f64) -> Self {
        Self {
            sum: initial,
            compensation: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl core::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    let bb = s - a;
    DoubleDouble {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

fn quick_two_sum(a: f64, b: f64) -> DoubleDouble {
    let s = a + b;
    DoubleDouble { hi: s, lo: b - (s - a) }
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    /// Exact a − b.
    pub fn difference(a: f64, b: f64) -> Self {
        two_sum(a, -b)
    }

    pub fn is_zero(&self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn value(&self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul(self, b: Self) -> Self {
        let p = self.hi * b.hi;
        let e = libm::fma(self.hi, b.hi, -p) + (self.hi * b.lo + self.lo * b.hi);
        quick_two_sum(p, e)
    }

    pub fn div(self, d: Self) -> Self {
        let q1 = self.hi / d.hi;
        let r = self.sub(d.mul(Self { hi: q1, lo: 0.0 }));
        let q2 = r.hi / d.hi;
        let r = r.sub(d.mul(Self { hi: q2, lo: 0.0 }));
        let q3 = r.hi / d.hi;
        let q = quick_two_sum(q1, q2);
        quick_two_sum(q.hi, q.lo + q3)
    }

    pub fn div_f64(self, d: f64) -> Self {
        self.div(Self { hi: d, lo: 0.0 })
    }

    pub fn add(self, b: Self) -> Self {
        let s = two_sum(self.hi, b.hi);
        let t = two_sum(self.lo, b.lo);
        let s = quick_two_sum(s.hi, s.lo + t.hi);
        quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn sub(self, b: Self) -> Self {
        self.add(Self { hi: -b.hi, lo: -b.lo })
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}
