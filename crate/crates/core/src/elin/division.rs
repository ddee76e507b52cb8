use std::fmt;

use super::ElinError;

/// Repeated division of `p` by `d = floor(log2 p)` until the quotient drops
/// below `d`. `quotients[l - 1]` and `remainders[l - 1]` are `Q_l` and `R_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedDivision {
    pub p: u64,
    pub divisor: u64,
    pub quotients: Vec<u64>,
    pub remainders: Vec<u64>,
}

impl IteratedDivision {
    /// Number of divisions, `ℓ`.
    pub fn ell(&self) -> usize {
        self.quotients.len()
    }

    /// `((Q_ℓ d + R_ℓ) d + R_{ℓ-1}) d + ... + R_1`.
    pub fn reconstruct(&self) -> u64 {
        let mut acc = *self.quotients.last().expect("at least one division");
        for r in self.remainders.iter().rev() {
            acc = acc * self.divisor + r;
        }
        acc
    }

    /// `Q_{l}` with `Q_0 = p`.
    pub fn q(&self, l: usize) -> u64 {
        if l == 0 {
            self.p
        } else {
            self.quotients[l - 1]
        }
    }

    pub fn r(&self, l: usize) -> u64 {
        self.remainders[l - 1]
    }
}

impl fmt::Display for IteratedDivision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self
            .quotients
            .iter()
            .zip(&self.remainders)
            .map(|(q, r)| format!("({q},{r})"))
            .collect();
        write!(f, "{}", chain.join(" "))
    }
}

pub fn iterated_division(p: u64) -> Result<IteratedDivision, ElinError> {
    if p < 4 {
        return Err(ElinError::BaseCase(p));
    }
    let divisor = u64::from(p.ilog2());
    let mut quotients = Vec::new();
    let mut remainders = Vec::new();
    let mut q = p;
    loop {
        remainders.push(q % divisor);
        q /= divisor;
        quotients.push(q);
        if q < divisor {
            break;
        }
    }
    Ok(IteratedDivision {
        p,
        divisor,
        quotients,
        remainders,
    })
}
