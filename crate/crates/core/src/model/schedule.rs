use crate::scalar::Real;

/// Geometric time staircase `T_1 = 3√(T/n)`, `T_j = 3 T_{j-1}`, with `d`
/// stages where `9^{d-1} < n ≤ 9^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<S> {
    stage_times: Vec<S>,
}

impl<S: Real> Schedule<S> {
    pub fn d(&self) -> usize {
        self.stage_times.len()
    }

    pub fn stage_times(&self) -> &[S] {
        &self.stage_times
    }

    /// `T_j` for `1 ≤ j ≤ d`; `T_0 = 0`.
    pub fn time(&self, j: usize) -> S {
        if j == 0 {
            S::zero()
        } else {
            self.stage_times[j - 1]
        }
    }

    /// Horizon of the final checker in procedure A: `T_{ℓ+1}`, or `T_d` when `ℓ = d`.
    pub fn final_horizon(&self, ell: usize) -> S {
        self.time((ell + 1).min(self.d()))
    }
}

/// `d = ⌈log_9 n⌉` by integer comparison, at least 1.
pub fn stage_count(n: usize) -> usize {
    assert!(n >= 1, "stage_count needs n >= 1");
    let mut d = 1;
    let mut pow: u128 = 9;
    while pow < n as u128 {
        pow *= 9;
        d += 1;
    }
    d
}

pub fn build_schedule<S: Real>(n: usize, budget: S) -> Schedule<S> {
    assert!(budget > S::zero(), "schedule needs a positive budget");
    let d = stage_count(n);
    let three = S::lit(3.0);
    let mut stage_times = Vec::with_capacity(d);
    let mut t = three * (budget / S::from_count(n)).sqrt();
    for _ in 0..d {
        stage_times.push(t);
        t = t * three;
    }
    Schedule { stage_times }
}

/// Smallest `ℓ ≥ 0` with `m·9^ℓ ≥ n`, i.e. `⌈log_9(n/m)⌉`. Returns 0 for `m ≥ n`.
pub fn stage_index(n: usize, m: usize) -> usize {
    assert!(m >= 1, "stage_index needs m >= 1");
    let mut ell = 0;
    let mut scaled = m as u128;
    while scaled < n as u128 {
        scaled *= 9;
        ell += 1;
    }
    ell
}
