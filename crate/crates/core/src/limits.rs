/// Enumeration budgets. Exceeding one is an error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Candidate nodes visited by the frame-map search.
    pub max_nodes: u64,
    /// Points in a constructed carrier (products, powers of the Sierpinski space).
    pub max_points: usize,
    /// Size of a point-function space `|B|^|A|` or of an L-set space `|L|^|X|`.
    pub max_maps: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_nodes: 1_000_000, max_points: 10_000, max_maps: 1_000_000 }
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub fn power(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

impl Limits {
    pub(crate) fn check_maps(&self, what: &'static str, base: usize, exp: usize) -> crate::Result<()> {
        let needed = power(base, exp);
        if needed > self.max_maps {
            return Err(crate::Error::CapExceeded { what, needed, limit: self.max_maps });
        }
        Ok(())
    }

    pub(crate) fn check_points(&self, what: &'static str, needed: u128) -> crate::Result<()> {
        if needed > self.max_points as u128 {
            return Err(crate::Error::CapExceeded { what, needed, limit: self.max_points as u128 });
        }
        Ok(())
    }
}
