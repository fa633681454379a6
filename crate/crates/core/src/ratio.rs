use core::cmp::Ordering;
use core::fmt;

/// Exact ratio of two matching sizes, `num / den`.
///
/// `0 / 0` counts as 1 (both graphs have no matching) and `k / 0` with
/// `k > 0` as infinite.
#[derive(Debug, Clone, Copy)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };

    pub fn new(num: usize, den: usize) -> Self {
        Ratio {
            num: num as u64,
            den: den as u64,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0 && self.num > 0
    }

    pub fn value(&self) -> f64 {
        match (self.num, self.den) {
            (0, 0) => 1.0,
            (_, 0) => f64::INFINITY,
            (a, b) => a as f64 / b as f64,
        }
    }

    fn normalized(&self) -> (u64, u64) {
        if self.num == 0 && self.den == 0 {
            (1, 1)
        } else {
            (self.num, self.den)
        }
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = self.normalized();
        let (c, d) = other.normalized();
        match (b == 0, d == 0) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (a as u128 * d as u128).cmp(&(c as u128 * b as u128)),
        }
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "{}/0 (inf)", self.num)
        } else {
            write!(f, "{}/{} ({:.6})", self.num, self.den, self.value())
        }
    }
}
