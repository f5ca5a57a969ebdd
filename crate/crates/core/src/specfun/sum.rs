//! Compensated accumulation and tail acceleration for slowly converging series.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// Result of a Richardson extrapolation on geometrically spaced partial sums.
#[derive(Debug, Clone, Copy)]
pub struct Extrapolated {
    pub value: f64,
    pub error: f64,
}

/// Extrapolates partial sums `s[i]` taken at `N0 * 2^i` terms, assuming the
/// remainder behaves like `sum_k c_k N^{-p_k}`. Repeated exponents remove
/// `N^{-p} ln N` terms as well.
pub fn richardson(sums: &[f64], exponents: &[f64]) -> Extrapolated {
    assert!(!sums.is_empty());
    let mut row = sums.to_vec();
    let mut prev_best = row[row.len() - 1];
    for &p in exponents.iter().take(sums.len() - 1) {
        let f = 2f64.powf(p);
        prev_best = row[row.len() - 1];
        row = row
            .windows(2)
            .map(|w| (f * w[1] - w[0]) / (f - 1.0))
            .collect();
    }
    let value = row[row.len() - 1];
    let error = if row.len() > 1 {
        (row[row.len() - 1] - row[row.len() - 2]).abs()
    } else {
        (value - prev_best).abs()
    };
    Extrapolated { value, error }
}

/// Merges exponent families `start + k` (k = 0, 1, ...) into one sorted list
/// of at most `count` entries.
pub fn exponent_ladder(starts: &[f64], count: usize) -> Vec<f64> {
    let mut all: Vec<f64> = starts
        .iter()
        .flat_map(|&s| (0..count).map(move |k| s + k as f64))
        .collect();
    all.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // snap near-coincident exponents so the repeated-exponent rule applies
    for i in 1..all.len() {
        if (all[i] - all[i - 1]).abs() < 1e-9 {
            all[i] = all[i - 1];
        }
    }
    all.truncate(count);
    all
}
