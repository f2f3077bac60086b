use std::f64::consts::FRAC_PI_2;
use std::fmt;

use crate::error::{Error, Result};

/// Tolerance for deciding whether `Rz(ξ)` is a multiple of `π/2`.
pub const CLIFFORD_ANGLE_TOL: f64 = 1e-12;

/// The fixed gate set. Qubit indices are 0-based.
///
/// `Rz(ξ) = diag(e^{-iξ/2}, e^{iξ/2})`; the remaining gates are the usual
/// matrices with `S = diag(1, i)` and `CZ = diag(1, 1, 1, -1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    S(usize),
    Rz(usize, f64),
    Cz(usize, usize),
}

impl Gate {
    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) | Gate::S(q) | Gate::Rz(q, _) => vec![q],
            Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cz(..))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::S(_) => "S",
            Gate::Rz(..) => "RZ",
            Gate::Cz(..) => "CZ",
        }
    }

    /// For `Rz`, the number of quarter turns `k ∈ {0,1,2,3}` with
    /// `Rz(ξ) ∝ S^k`, or `None` when `ξ` is not a multiple of `π/2`.
    /// Other gates return `None`.
    pub fn rz_quarter_turns(&self) -> Option<u8> {
        match *self {
            Gate::Rz(_, xi) if xi.is_finite() => {
                let k = (xi / FRAC_PI_2).round();
                ((xi - k * FRAC_PI_2).abs() < CLIFFORD_ANGLE_TOL).then(|| (k as i64).rem_euclid(4) as u8)
            }
            _ => None,
        }
    }

    pub fn is_clifford(&self) -> bool {
        match self {
            Gate::Rz(..) => self.rz_quarter_turns().is_some(),
            _ => true,
        }
    }

    /// Inverse up to global phase. `S†` is expressed as `Rz(-π/2)`.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Rz(q, -FRAC_PI_2),
            Gate::Rz(q, xi) => Gate::Rz(q, -xi),
            g => g,
        }
    }

    /// Same gate with every target remapped through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Y(q) => Gate::Y(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Rz(q, xi) => Gate::Rz(f(q), xi),
            Gate::Cz(a, b) => Gate::Cz(f(a), f(b)),
        }
    }

    pub fn check_targets(&self, n: usize) -> Result<()> {
        if let Gate::Rz(_, xi) = self {
            if !xi.is_finite() {
                return Err(Error::InvalidGate(format!("Rz angle {xi} is not finite")));
            }
        }
        if let Gate::Cz(a, b) = self {
            if a == b {
                return Err(Error::InvalidGate(format!("CZ needs two distinct targets, got ({a}, {b})")));
            }
        }
        for q in self.targets() {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Rz(q, xi) => write!(f, "RZ({xi})[{q}]"),
            Gate::Cz(a, b) => write!(f, "CZ[{a},{b}]"),
            g => write!(f, "{}[{}]", g.name(), g.targets()[0]),
        }
    }
}

impl serde::Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rz_clifford_detection() {
        assert_eq!(Gate::Rz(0, 0.0).rz_quarter_turns(), Some(0));
        assert_eq!(Gate::Rz(0, PI).rz_quarter_turns(), Some(2));
        assert_eq!(Gate::Rz(0, -FRAC_PI_2).rz_quarter_turns(), Some(3));
        assert_eq!(Gate::Rz(0, 5.0 * FRAC_PI_2).rz_quarter_turns(), Some(1));
        assert!(!Gate::Rz(0, 0.1).is_clifford());
        assert!(!Gate::Rz(0, FRAC_PI_2 + 1e-9).is_clifford());
    }

    #[test]
    fn cz_targets_validated() {
        assert!(Gate::Cz(1, 1).check_targets(3).is_err());
        assert!(Gate::Cz(0, 3).check_targets(3).is_err());
        assert!(Gate::Cz(0, 2).check_targets(3).is_ok());
        assert!(Gate::Rz(0, f64::NAN).check_targets(1).is_err());
    }
}
