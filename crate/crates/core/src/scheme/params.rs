use libm::{ceil, floor, log, log2, pow};

use crate::dict::DictBackend;

/// Which parameter regime the encoder runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// `s` is a free knob trading label size against decoder inspections.
    Tradeoff,
    /// Parameters fixed as functions of `log n`; residual heavy pairs and
    /// residual hubs get their own sections.
    Fast,
}

impl Profile {
    pub fn code(self) -> u8 {
        match self {
            Profile::Tradeoff => 0,
            Profile::Fast => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Profile::Tradeoff),
            1 => Some(Profile::Fast),
            _ => None,
        }
    }

    pub fn default_backend(self) -> DictBackend {
        match self {
            Profile::Tradeoff => DictBackend::Sorted,
            Profile::Fast => DictBackend::Compressed,
        }
    }
}

/// Resolved knobs for one encoding of an `n`-vertex order.
#[derive(Clone, Debug, PartialEq)]
pub struct SchemeParams {
    pub profile: Profile,
    pub n: usize,
    /// Budget for the cover set `S`.
    pub s: usize,
    /// A pair is heavy when it covers at least `γn` vertices.
    pub gamma: f64,
    /// A vertex is a hub when it has at least `δn` vertices below and above it.
    pub delta: f64,
    /// Out-degree cut for the `V⁺` / `V⁻` split of the non-hubs.
    pub ell: usize,
    /// Budget for the hub-covering pair list `T`.
    pub t: usize,
    pub dict: DictBackend,
}

const EPS: f64 = 1e-9;

/// Ceiling that ignores floating-point noise just above an integer.
pub(crate) fn ceil_tol(x: f64) -> f64 {
    ceil(x - EPS * x.abs().max(1.0))
}

/// Floor that ignores floating-point noise just below an integer.
pub(crate) fn floor_tol(x: f64) -> f64 {
    floor(x + EPS * x.abs().max(1.0))
}

fn to_count(x: f64) -> usize {
    if x <= 0.0 {
        0
    } else if x >= usize::MAX as f64 {
        usize::MAX
    } else {
        x as usize
    }
}

impl SchemeParams {
    /// `max(1, ⌈γn⌉)`: a pair covering nothing is never heavy.
    pub fn heavy_threshold(&self) -> usize {
        to_count(ceil_tol(self.gamma * self.n as f64)).max(1)
    }

    /// `max(1, ⌈δn⌉)`
    pub fn hub_threshold(&self) -> usize {
        to_count(ceil_tol(self.delta * self.n as f64)).max(1)
    }

    /// `⌊γn⌋`, the degree bound inside every light in/out-neighbourhood graph.
    pub fn light_degree_bound(&self) -> usize {
        to_count(floor_tol(self.gamma * self.n as f64))
    }

    /// `⌊2γn⌋`, the degeneracy bound of the residual heavy-pair graph.
    pub fn residual_degeneracy_bound(&self) -> usize {
        to_count(floor_tol(2.0 * self.gamma * self.n as f64))
    }

    pub fn with_dict(mut self, dict: DictBackend) -> Self {
        self.dict = dict;
        self
    }
}

fn log2n(n: usize) -> f64 {
    // n < 2 would make log n vanish; the formulas are evaluated at n = 2 instead
    log2(n.max(2) as f64)
}

/// Evaluates the parameter formulas of a profile. `s` is ignored for
/// [`Profile::Fast`].
pub fn derive_params(n: usize, s: usize, profile: Profile) -> SchemeParams {
    let nf = n as f64;
    let ln_n = log(n.max(2) as f64);
    match profile {
        Profile::Tradeoff => {
            let s = s.max(1);
            let sf = s as f64;
            let gamma = 3.0 * ln_n / sf;
            let delta = pow(sf, -1.0 / 3.0) * ln_n;
            SchemeParams {
                profile,
                n,
                s,
                gamma,
                delta,
                ell: to_count(floor_tol(pow(sf, -1.0 / 3.0) * nf * ln_n)),
                t: to_count(ceil_tol(pow(sf, 2.0 / 3.0))),
                dict: profile.default_backend(),
            }
        }
        Profile::Fast => {
            let lg = log2n(n);
            let delta = pow(lg, -0.25);
            let gamma = pow(lg, -0.75);
            SchemeParams {
                profile,
                n,
                s: to_count(ceil_tol(-2.0 * log(gamma) / gamma)),
                gamma,
                delta,
                ell: to_count(floor_tol(delta * nf)),
                t: to_count(ceil_tol(-log(delta) / (delta * delta))),
                dict: profile.default_backend(),
            }
        }
    }
}

/// Default cover budget `s = ⌈n^{3/4}⌉`.
pub fn default_s(n: usize) -> usize {
    to_count(ceil_tol(pow(n.max(1) as f64, 0.75))).max(1)
}

/// Profile plus optional overrides, resolved against a vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchemeConfig {
    pub profile: Profile,
    pub s: Option<usize>,
    pub dict: Option<DictBackend>,
}

impl SchemeConfig {
    pub fn new(profile: Profile) -> Self {
        SchemeConfig { profile, s: None, dict: None }
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_dict(mut self, dict: DictBackend) -> Self {
        self.dict = Some(dict);
        self
    }

    pub fn resolve(&self, n: usize) -> SchemeParams {
        let s = self.s.unwrap_or_else(|| default_s(n));
        let params = derive_params(n, s, self.profile);
        match self.dict {
            Some(d) => params.with_dict(d),
            None => params,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tradeoff_small_example() {
        let p = derive_params(10, 4, Profile::Tradeoff);
        let ln10 = core::f64::consts::LN_10;
        assert!((p.gamma - 3.0 * ln10 / 4.0).abs() < 1e-12);
        assert!((p.gamma - 1.727).abs() < 1e-3);
        assert!((p.delta - 1.450).abs() < 1e-3);
        assert_eq!(p.ell, 14);
        assert_eq!(p.t, 3);
        assert_eq!(p.dict, DictBackend::Sorted);
        // γ > 1: the heavy threshold exceeds n
        assert!(p.heavy_threshold() > 10);
    }

    #[test]
    fn fast_example_at_two_to_sixteen() {
        let p = derive_params(1 << 16, 0, Profile::Fast);
        assert!((p.delta - 0.5).abs() < 1e-12);
        assert!((p.gamma - 0.125).abs() < 1e-12);
        assert_eq!(p.s, 34);
        assert_eq!(p.t, 3);
        assert_eq!(p.dict, DictBackend::Compressed);
    }

    #[test]
    fn integer_rounding_is_stable() {
        // 8^{2/3} = 4 exactly
        assert_eq!(derive_params(100, 8, Profile::Tradeoff).t, 4);
        assert_eq!(default_s(16), 8);
        assert_eq!(default_s(10), 6);
    }

    #[test]
    fn config_overrides() {
        let p = SchemeConfig::new(Profile::Tradeoff).with_s(5).with_dict(DictBackend::Compressed).resolve(50);
        assert_eq!(p.s, 5);
        assert_eq!(p.dict, DictBackend::Compressed);
        assert_eq!(SchemeConfig::new(Profile::Tradeoff).resolve(81).s, 27);
    }
}
