//! Dense state-vector simulator.
//!
//! Amplitude ordering: qubit 0 is the most significant bit of the basis index,
//! so `|q0 q1 … q_{n-1}⟩` sits at index `Σ q_k · 2^{n-1-k}`. Every other module
//! relies on this convention (see `basis_index_ordering` below).

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_complex::Complex64 as C;
use rand::{Rng, RngCore};
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{Basis, Circuit, Gate, Instruction, PauliString};

pub const MAX_DENSE_QUBITS: usize = 24;
pub const NORM_TOL: f64 = 1e-10;
/// States are "equal up to global phase" when `fidelity ≥ 1 - STATE_EQ_TOL`.
pub const STATE_EQ_TOL: f64 = 1e-9;
const FORCE_MIN_PROB: f64 = 1e-12;

/// Single-qubit product-state symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    Zero,
    One,
    Plus,
    Minus,
}

impl Symbol {
    pub fn from_char(c: char) -> Result<Self> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            '+' => Ok(Symbol::Plus),
            '-' => Ok(Symbol::Minus),
            c => Err(Error::InvalidSymbol(c)),
        }
    }

    pub fn parse_all(s: &str) -> Result<Vec<Symbol>> {
        s.chars().map(Symbol::from_char).collect()
    }

    pub fn amplitudes(self) -> [C; 2] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self {
            Symbol::Zero => [C::new(1.0, 0.0), C::new(0.0, 0.0)],
            Symbol::One => [C::new(0.0, 0.0), C::new(1.0, 0.0)],
            Symbol::Plus => [C::new(h, 0.0), C::new(h, 0.0)],
            Symbol::Minus => [C::new(h, 0.0), C::new(-h, 0.0)],
        }
    }
}

/// How to resolve a measurement outcome.
pub enum Outcome<'a> {
    Sample(&'a mut dyn RngCore),
    Forced(u8),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasurementRecord {
    pub qubit: usize,
    #[serde(serialize_with = "ser_basis")]
    pub basis: Basis,
    pub outcome: u8,
    /// Probability of `outcome` before collapse.
    pub probability: f64,
}

fn ser_basis<S: serde::Serializer>(b: &Basis, s: S) -> std::result::Result<S::Ok, S::Error> {
    match b {
        Basis::Z => s.serialize_str("Z"),
        Basis::X => s.serialize_str("X"),
        Basis::XY(xi) => s.collect_str(&format_args!("XY({xi})")),
    }
}

impl MeasurementRecord {
    pub fn is_deterministic(&self) -> bool {
        (self.probability - 1.0).abs() < NORM_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct AmplitudeEntry(pub usize, pub f64, pub f64);

impl StateVector {
    fn check_size(n: usize) -> Result<()> {
        if n > MAX_DENSE_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_DENSE_QUBITS });
        }
        Ok(())
    }

    pub fn init(assignment: &[Symbol]) -> Result<Self> {
        let locals: Vec<[C; 2]> = assignment.iter().map(|s| s.amplitudes()).collect();
        Self::product(&locals)
    }

    /// `|0…0⟩` on `n` qubits.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::init(&vec![Symbol::Zero; n])
    }

    /// Product of normalized single-qubit states, qubit 0 first.
    pub fn product(locals: &[[C; 2]]) -> Result<Self> {
        let n = locals.len();
        Self::check_size(n)?;
        let mut amps = vec![C::new(1.0, 0.0)];
        for local in locals {
            let norm = (local[0].norm_sqr() + local[1].norm_sqr()).sqrt();
            if (norm - 1.0).abs() > NORM_TOL {
                return Err(Error::Parse(format!("single-qubit state has norm {norm}")));
            }
            amps = amps.iter().flat_map(|a| [a * local[0], a * local[1]]).collect();
        }
        Ok(StateVector { n, amps })
    }

    /// Takes ownership of raw amplitudes; length must be a power of two and
    /// the vector normalized.
    pub fn from_amplitudes(amps: Vec<C>) -> Result<Self> {
        let len = amps.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::Parse(format!("amplitude vector length {len} is not a power of two")));
        }
        let n = len.trailing_zeros() as usize;
        Self::check_size(n)?;
        let s = StateVector { n, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::Parse(format!("amplitude vector has norm {norm}")));
        }
        Ok(s)
    }

    /// Like [`from_amplitudes`](Self::from_amplitudes) but rescales to unit norm.
    pub fn normalized(mut amps: Vec<C>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < FORCE_MIN_PROB {
            return Err(Error::Parse("cannot normalize a zero vector".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    /// Gaussian-random normalized state.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        Self::check_size(n)?;
        let amps = (0..1usize << n)
            .map(|_| C::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
        }
        Ok(())
    }

    /// `self ⊗ other`, with `self`'s qubits first.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        Self::check_size(self.n + other.n)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector { n: self.n + other.n, amps })
    }

    fn apply_matrix(&mut self, q: usize, m: [[C; 2]; 2]) {
        let mask = self.mask(q);
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | mask]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    fn apply_diag(&mut self, q: usize, d0: C, d1: C) {
        let mask = self.mask(q);
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & mask == 0 { d0 } else { d1 };
        }
    }

    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        g.check_targets(self.n)?;
        let one = C::new(1.0, 0.0);
        let zero = C::new(0.0, 0.0);
        let h = C::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match *g {
            Gate::H(q) => self.apply_matrix(q, [[h, h], [h, -h]]),
            Gate::X(q) => {
                let mask = self.mask(q);
                for i in 0..self.amps.len() {
                    if i & mask == 0 {
                        self.amps.swap(i, i | mask);
                    }
                }
            }
            Gate::Y(q) => self.apply_matrix(q, [[zero, C::new(0.0, -1.0)], [C::new(0.0, 1.0), zero]]),
            Gate::Z(q) => self.apply_diag(q, one, -one),
            Gate::S(q) => self.apply_diag(q, one, C::new(0.0, 1.0)),
            Gate::Rz(q, xi) => self.apply_diag(q, C::from_polar(1.0, -xi / 2.0), C::from_polar(1.0, xi / 2.0)),
            Gate::Cz(a, b) => {
                let both = self.mask(a) | self.mask(b);
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    if i & both == both {
                        *amp = -*amp;
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_gates<'g>(&mut self, gates: impl IntoIterator<Item = &'g Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Applies a Pauli string including its phase.
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::LengthMismatch(p.n(), self.n));
        }
        let mut out = vec![C::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let (j, phase) = p.apply_to_basis(i);
            out[j] = a * phase;
        }
        self.amps = out;
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliString) -> Result<C> {
        let mut image = self.clone();
        image.apply_pauli(p)?;
        inner(self, &image)
    }

    fn prob_one(&self, q: usize) -> f64 {
        let mask = self.mask(q);
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Rotation taking `basis` eigenstates to the computational basis.
    fn to_z_basis(basis: Basis) -> Option<[[C; 2]; 2]> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match basis {
            Basis::Z => None,
            Basis::X => Some([[C::new(h, 0.0), C::new(h, 0.0)], [C::new(h, 0.0), C::new(-h, 0.0)]]),
            // H · diag(1, e^{-iξ})
            Basis::XY(xi) => {
                let e = C::from_polar(h, -xi);
                Some([[C::new(h, 0.0), e], [C::new(h, 0.0), -e]])
            }
        }
    }

    fn adjoint(m: [[C; 2]; 2]) -> [[C; 2]; 2] {
        [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
    }

    /// Projective measurement; the measured qubit is left in the observed
    /// basis eigenstate.
    pub fn measure(&mut self, qubit: usize, basis: Basis, outcome: Outcome<'_>) -> Result<MeasurementRecord> {
        self.check_qubit(qubit)?;
        let rot = Self::to_z_basis(basis);
        if let Some(m) = rot {
            self.apply_matrix(qubit, m);
        }
        let p1 = self.prob_one(qubit).clamp(0.0, 1.0);
        let p0 = (1.0 - p1).clamp(0.0, 1.0);
        let m = match outcome {
            Outcome::Forced(m) => {
                let p = if m == 0 { p0 } else { p1 };
                if p < FORCE_MIN_PROB {
                    if let Some(r) = rot {
                        self.apply_matrix(qubit, Self::adjoint(r));
                    }
                    return Err(Error::ImpossibleOutcome { qubit, outcome: m, probability: p });
                }
                m
            }
            Outcome::Sample(rng) => u8::from(rng.gen::<f64>() >= p0),
        };
        let p = if m == 0 { p0 } else { p1 };
        let mask = self.mask(qubit);
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i & mask != 0) as u8) == m {
                *a *= scale;
            } else {
                *a = C::new(0.0, 0.0);
            }
        }
        if let Some(r) = rot {
            self.apply_matrix(qubit, Self::adjoint(r));
        }
        Ok(MeasurementRecord { qubit, basis, outcome: m, probability: p })
    }

    /// Executes a circuit. `forced` pins outcomes per result slot; other
    /// slots are sampled from `rng`.
    pub fn run(
        &mut self,
        circuit: &Circuit,
        rng: &mut dyn RngCore,
        forced: &HashMap<usize, u8>,
    ) -> Result<BTreeMap<usize, MeasurementRecord>> {
        if circuit.n() != self.n {
            return Err(Error::LengthMismatch(circuit.n(), self.n));
        }
        let mut slots = BTreeMap::new();
        for op in circuit.instructions() {
            match op {
                Instruction::Gate(g) => self.apply(g)?,
                Instruction::Measure { qubit, basis, slot } => {
                    let mode = match forced.get(slot) {
                        Some(&m) => Outcome::Forced(m),
                        None => Outcome::Sample(&mut *rng),
                    };
                    let rec = self.measure(*qubit, *basis, mode)?;
                    slots.insert(*slot, rec);
                }
                Instruction::CorrectIf { slot, pauli } => {
                    let rec = slots.get(slot).ok_or(Error::Slot(*slot, "read before written"))?;
                    if rec.outcome == 1 {
                        self.apply_pauli(pauli)?;
                    }
                }
            }
        }
        Ok(slots)
    }

    /// Pure state of `subset` (in the given order), provided the rest of the
    /// register factorizes off. Errors when the cut carries entanglement.
    pub fn extract(&self, subset: &[usize]) -> Result<StateVector> {
        for &q in subset {
            self.check_qubit(q)?;
        }
        let rest: Vec<usize> = (0..self.n).filter(|q| !subset.contains(q)).collect();
        if rest.len() + subset.len() != self.n {
            return Err(Error::Parse("subset contains duplicates".into()));
        }
        let (ds, dr) = (1usize << subset.len(), 1usize << rest.len());
        let index = |s: usize, r: usize| -> usize {
            let mut i = 0;
            for (k, &q) in subset.iter().enumerate() {
                if (s >> (subset.len() - 1 - k)) & 1 == 1 {
                    i |= self.mask(q);
                }
            }
            for (k, &q) in rest.iter().enumerate() {
                if (r >> (rest.len() - 1 - k)) & 1 == 1 {
                    i |= self.mask(q);
                }
            }
            i
        };
        // Column of largest weight gives the candidate subset state.
        let best = (0..dr)
            .max_by(|&a, &b| {
                let wa: f64 = (0..ds).map(|s| self.amps[index(s, a)].norm_sqr()).sum();
                let wb: f64 = (0..ds).map(|s| self.amps[index(s, b)].norm_sqr()).sum();
                wa.total_cmp(&wb)
            })
            .unwrap_or(0);
        let col: Vec<C> = (0..ds).map(|s| self.amps[index(s, best)]).collect();
        let sub = StateVector::normalized(col)?;
        // φ_r = ⟨sub| M[:, r]; residual = ‖M − sub ⊗ φ‖².
        let mut residual = 0.0;
        for r in 0..dr {
            let phi: C = (0..ds).map(|s| sub.amps[s].conj() * self.amps[index(s, r)]).sum();
            for s in 0..ds {
                residual += (self.amps[index(s, r)] - sub.amps[s] * phi).norm_sqr();
            }
        }
        if residual > NORM_TOL {
            return Err(Error::EntangledCut(residual));
        }
        Ok(sub)
    }

    /// Nonzero amplitudes as `(index, re, im)`.
    pub fn dump(&self) -> Vec<AmplitudeEntry> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-12)
            .map(|(i, a)| AmplitudeEntry(i, a.re, a.im))
            .collect()
    }

    pub fn dump_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.dump())?)
    }
}

/// `⟨a|b⟩`.
pub fn inner(a: &StateVector, b: &StateVector) -> Result<C> {
    if a.n != b.n {
        return Err(Error::LengthMismatch(a.n, b.n));
    }
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// `|⟨a|b⟩|`, insensitive to global phase.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(inner(a, b)?.norm().min(1.0))
}

pub fn equal_up_to_phase(a: &StateVector, b: &StateVector) -> Result<bool> {
    Ok(fidelity(a, b)? >= 1.0 - STATE_EQ_TOL)
}

/// Haar-random single-qubit amplitudes `(α, β)`.
pub fn random_qubit(rng: &mut impl Rng) -> [C; 2] {
    let cos_theta: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let half = cos_theta.acos() / 2.0;
    [C::new(half.cos(), 0.0), C::from_polar(half.sin(), phi)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn basis_index_ordering() {
        let s = StateVector::init(&Symbol::parse_all("100").unwrap()).unwrap();
        assert_eq!(s.amplitude(0b100), c(1.0, 0.0));
        let mut t = StateVector::zeros(3).unwrap();
        t.apply(&Gate::X(2)).unwrap();
        assert_eq!(t.amplitude(0b001), c(1.0, 0.0));
    }

    #[test]
    fn init_plus() {
        let s = StateVector::init(&[Symbol::Plus]).unwrap();
        assert!((s.amplitude(0) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.amplitude(1) - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_qubit_cluster() {
        let mut s = StateVector::init(&[Symbol::Plus, Symbol::Plus]).unwrap();
        s.apply(&Gate::Cz(0, 1)).unwrap();
        let zero_plus = StateVector::init(&[Symbol::Zero, Symbol::Plus]).unwrap();
        let one_minus = StateVector::init(&[Symbol::One, Symbol::Minus]).unwrap();
        let want: Vec<C> = zero_plus
            .amplitudes()
            .iter()
            .zip(one_minus.amplitudes())
            .map(|(a, b)| (a + b) * FRAC_1_SQRT_2)
            .collect();
        let want = StateVector::from_amplitudes(want).unwrap();
        assert!(fidelity(&s, &want).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn budget_enforced() {
        assert!(matches!(StateVector::zeros(25), Err(Error::TooManyQubits { .. })));
    }

    #[test]
    fn rz_quarter_turn_on_plus() {
        let mut s = StateVector::init(&[Symbol::Plus]).unwrap();
        s.apply(&Gate::Rz(0, FRAC_PI_2)).unwrap();
        let want = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)]).unwrap();
        assert!(equal_up_to_phase(&s, &want).unwrap());
    }

    #[test]
    fn x_measurement_of_plus_is_deterministic() {
        let mut s = StateVector::init(&[Symbol::Plus]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = s.measure(0, Basis::X, Outcome::Sample(&mut rng)).unwrap();
        assert_eq!(r.outcome, 0);
        assert!(r.is_deterministic());
    }

    #[test]
    fn xy_eigenstate_measures_zero() {
        let xi = 0.7;
        let mut s = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.0), C::from_polar(FRAC_1_SQRT_2, xi)]).unwrap();
        let r = s.measure(0, Basis::XY(xi), Outcome::Forced(0)).unwrap();
        assert!((r.probability - 1.0).abs() < 1e-12);
        assert!(s.measure(0, Basis::XY(xi), Outcome::Forced(1)).is_err());
    }

    #[test]
    fn forced_outcome_records_true_probability() {
        let mut s = StateVector::init(&[Symbol::Plus]).unwrap();
        let r = s.measure(0, Basis::Z, Outcome::Forced(1)).unwrap();
        assert!((r.probability - 0.5).abs() < 1e-12);
        assert_eq!(s.amplitude(1), c(1.0, 0.0));
    }

    #[test]
    fn fidelity_orthogonal_and_self() {
        let zero = StateVector::init(&[Symbol::Zero]).unwrap();
        let one = StateVector::init(&[Symbol::One]).unwrap();
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);
        assert!((fidelity(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!(fidelity(&zero, &StateVector::zeros(2).unwrap()).is_err());
    }

    #[test]
    fn extract_product_and_reject_bell() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = StateVector::random(2, &mut rng).unwrap();
        let joint = StateVector::zeros(1).unwrap().tensor(&psi).unwrap();
        let got = joint.extract(&[1, 2]).unwrap();
        assert!(equal_up_to_phase(&got, &psi).unwrap());

        let mut bell = StateVector::zeros(2).unwrap();
        bell.apply(&Gate::H(0)).unwrap();
        bell.apply(&Gate::H(1)).unwrap();
        bell.apply(&Gate::Cz(0, 1)).unwrap();
        bell.apply(&Gate::H(1)).unwrap();
        assert!(matches!(bell.extract(&[0]), Err(Error::EntangledCut(_))));
    }

    #[test]
    fn dump_lists_nonzero_amplitudes() {
        let s = StateVector::init(&Symbol::parse_all("1+").unwrap()).unwrap();
        let d = s.dump();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, 0b10);
        assert_eq!(d[1].0, 0b11);
    }
}
