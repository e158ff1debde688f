use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Perturbation pivots drawn from a seeded RNG.
    #[default]
    Randomized,
    /// Pivots chosen greedily by walk counting; the seed is ignored.
    Deterministic,
}

/// Parameters of the bounded-difference product. `None` for `delta` or
/// `rho` selects the size-dependent default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BdProductConfig {
    pub w: i64,
    pub delta: Option<usize>,
    pub rho: Option<usize>,
    pub mode: Mode,
    pub seed: u64,
    pub recursion_cutoff: usize,
    pub improved_phase2: bool,
}

impl Default for BdProductConfig {
    fn default() -> Self {
        BdProductConfig {
            w: 1,
            delta: None,
            rho: None,
            mode: Mode::Randomized,
            seed: 0,
            recursion_cutoff: 64,
            improved_phase2: false,
        }
    }
}

impl BdProductConfig {
    pub fn with_w(w: i64) -> Self {
        BdProductConfig {
            w,
            ..Self::default()
        }
    }

    /// Fixes `delta` and `rho` for a problem whose largest dimension is `n`.
    pub fn resolve(&self, n: usize) -> Result<ResolvedConfig> {
        if self.w < 0 {
            return Err(Error::InvalidConfig(format!("W must be non-negative, got {}", self.w)));
        }
        let delta = match self.delta {
            Some(0) => return Err(Error::InvalidConfig("delta must be at least 1".into())),
            Some(d) => d.min(n.max(1)),
            None => auto_delta(n),
        };
        Ok(ResolvedConfig {
            w: self.w,
            delta,
            rho: self.rho.unwrap_or_else(|| auto_rho(n)),
            mode: self.mode,
            seed: self.seed,
            recursion_cutoff: self.recursion_cutoff,
            improved_phase2: self.improved_phase2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedConfig {
    pub w: i64,
    pub delta: usize,
    pub rho: usize,
    pub mode: Mode,
    pub seed: u64,
    pub recursion_cutoff: usize,
    pub improved_phase2: bool,
}

impl ResolvedConfig {
    /// `ΔW`, the unit all thresholds are multiples of, if `48ΔW` stays in
    /// the product range.
    pub fn unit(&self) -> Option<i64> {
        let unit = (self.delta as i64).checked_mul(self.w)?;
        (unit.checked_mul(48)? <= crate::score::MAX_FINITE).then_some(unit)
    }
}

/// `⌈n^0.3⌉` rounded to the nearest power of two (ties upward), within `[1, n]`.
pub fn auto_delta(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let target = (n as f64).powf(0.3).ceil() as usize;
    let lo = if target.is_power_of_two() {
        target
    } else {
        target.next_power_of_two() / 2
    };
    let hi = target.next_power_of_two();
    let pick = if target - lo < hi - target { lo } else { hi };
    pick.clamp(1, n)
}

/// `⌈n^0.45⌉`.
pub fn auto_rho(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (n as f64).powf(0.45).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_parameters() {
        assert_eq!(auto_delta(1), 1);
        assert_eq!(auto_delta(8), 2); // ceil(1.87) = 2
        assert_eq!(auto_delta(64), 4); // ceil(3.48) = 4
        assert_eq!(auto_delta(128), 4); // ceil(4.28) = 5, nearer to 4
        assert_eq!(auto_delta(1024), 8); // ceil(7.99) = 8
        assert_eq!(auto_rho(128), 9);
        assert_eq!(auto_rho(1), 1);
    }

    #[test]
    fn resolve_clamps_delta() {
        let cfg = BdProductConfig {
            delta: Some(100),
            rho: Some(3),
            ..BdProductConfig::default()
        };
        let r = cfg.resolve(16).unwrap();
        assert_eq!((r.delta, r.rho), (16, 3));
        assert!(BdProductConfig {
            delta: Some(0),
            ..BdProductConfig::default()
        }
        .resolve(4)
        .is_err());
        assert!(BdProductConfig::with_w(-1).resolve(4).is_err());
    }

    #[test]
    fn zero_width_unit() {
        let r = BdProductConfig::with_w(0).resolve(8).unwrap();
        assert_eq!(r.unit(), Some(0));
    }
}
