/// Size caps and execution strategy shared by every analysis.
///
/// All algorithms here are exponential in the worst case, so exceeding a cap
/// is reported as [`crate::Error::SizeCap`] instead of running away.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    /// Largest carrier accepted by constructions and analyses.
    pub max_carrier: usize,
    /// Largest congruence lattice that will be materialised.
    pub max_con: usize,
    /// Use the data-parallel code paths. Ignored without the `parallel` feature.
    pub parallel: bool,
}

pub const DEFAULT_MAX_CARRIER: usize = 4096;
pub const DEFAULT_MAX_CON: usize = 20_000;

impl Default for Config {
    fn default() -> Self {
        Config {
            max_carrier: DEFAULT_MAX_CARRIER,
            max_con: DEFAULT_MAX_CON,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config {
            parallel: false,
            ..Config::default()
        }
    }

    pub fn with_max_carrier(mut self, n: usize) -> Self {
        self.max_carrier = n;
        self
    }

    pub fn check_carrier(&self, actual: usize) -> crate::Result<()> {
        if actual > self.max_carrier {
            return Err(crate::Error::SizeCap {
                what: "carrier",
                limit: self.max_carrier,
                actual,
            });
        }
        Ok(())
    }
}
