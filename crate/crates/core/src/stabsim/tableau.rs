//! Aaronson–Gottesman stabilizer tableau with full sign tracking.

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::qcore::{Gate, Pauli, PauliString, Phase};
use crate::svsim::{Outcome, Symbol};

/// Tableau over `n` qubits: rows `0..n` are destabilizers, rows `n..2n`
/// stabilizer generators. Stabilizer rows always carry a real sign.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau {
    n: usize,
    rows: Vec<PauliString>,
}

/// Result of a tableau measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TabOutcome {
    pub outcome: u8,
    pub deterministic: bool,
}

/// Single-qubit basis the tableau can measure in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliBasis {
    Z,
    X,
}

impl Tableau {
    pub fn init(assignment: &[Symbol]) -> Self {
        let n = assignment.len();
        let mut rows = Vec::with_capacity(2 * n);
        for (q, s) in assignment.iter().enumerate() {
            let destab = match s {
                Symbol::Zero | Symbol::One => Pauli::X,
                Symbol::Plus | Symbol::Minus => Pauli::Z,
            };
            rows.push(PauliString::single(n, q, destab));
        }
        for (q, s) in assignment.iter().enumerate() {
            let (p, sign) = match s {
                Symbol::Zero => (Pauli::Z, Phase::ONE),
                Symbol::One => (Pauli::Z, Phase::MINUS_ONE),
                Symbol::Plus => (Pauli::X, Phase::ONE),
                Symbol::Minus => (Pauli::X, Phase::MINUS_ONE),
            };
            rows.push(PauliString::single(n, q, p).with_phase(sign));
        }
        Tableau { n, rows }
    }

    pub fn zeros(n: usize) -> Self {
        Self::init(&vec![Symbol::Zero; n])
    }

    /// Builds a tableau from explicit destabilizer and stabilizer rows.
    /// The caller guarantees the symplectic structure; it is checked.
    pub fn from_rows(destabilizers: Vec<PauliString>, stabilizers: Vec<PauliString>) -> Result<Self> {
        let n = stabilizers.len();
        if destabilizers.len() != n {
            return Err(Error::LengthMismatch(destabilizers.len(), n));
        }
        for r in destabilizers.iter().chain(&stabilizers) {
            if r.n() != n {
                return Err(Error::LengthMismatch(r.n(), n));
            }
        }
        let t = Tableau { n, rows: destabilizers.into_iter().chain(stabilizers).collect() };
        t.check_symplectic()?;
        Ok(t)
    }

    /// Verifies commutation structure: stabilizers commute pairwise,
    /// destabilizer `i` anticommutes only with stabilizer `i`.
    pub fn check_symplectic(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let s_i = &self.rows[n + i];
                if !s_i.commutes_with(&self.rows[n + j]) {
                    return Err(Error::Parse(format!("stabilizers {i} and {j} anticommute")));
                }
                let anti = !self.rows[i].commutes_with(&self.rows[n + j]);
                if anti != (i == j) {
                    return Err(Error::Parse(format!("destabilizer {i} vs stabilizer {j} breaks symplectic structure")));
                }
            }
            if !self.rows[n + i].phase().is_real() {
                return Err(Error::Parse(format!("stabilizer {i} has imaginary sign")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.rows[self.n..]
    }

    pub fn destabilizers(&self) -> &[PauliString] {
        &self.rows[..self.n]
    }

    pub fn apply(&mut self, g: &Gate) -> Result<()> {
        g.check_targets(self.n)?;
        if !g.is_clifford() {
            if let Gate::Rz(_, xi) = g {
                return Err(Error::NonClifford(*xi));
            }
        }
        for r in &mut self.rows {
            r.conjugate_in_place(g)?;
        }
        Ok(())
    }

    pub fn apply_gates<'g>(&mut self, gates: impl IntoIterator<Item = &'g Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    /// Applies a Pauli operator (signs of anticommuting rows flip).
    pub fn apply_pauli(&mut self, p: &PauliString) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::LengthMismatch(p.n(), self.n));
        }
        for r in &mut self.rows[self.n..] {
            if !r.commutes_with(p) {
                let flipped = r.phase() * Phase::MINUS_ONE;
                *r = r.clone().with_phase(flipped);
            }
        }
        Ok(())
    }

    pub fn measure(&mut self, qubit: usize, basis: PauliBasis, outcome: Outcome<'_>) -> Result<TabOutcome> {
        if qubit >= self.n {
            return Err(Error::QubitOutOfRange { qubit, n: self.n });
        }
        if basis == PauliBasis::X {
            self.apply(&Gate::H(qubit))?;
        }
        let res = self.measure_z(qubit, outcome);
        if basis == PauliBasis::X {
            self.apply(&Gate::H(qubit))?;
        }
        res
    }

    /// Sign of `±Z_q` if it is in the stabilizer group.
    pub fn peek_z(&self, qubit: usize) -> Option<u8> {
        let n = self.n;
        if self.rows[n..].iter().any(|r| r.x_bits()[qubit]) {
            return None;
        }
        let mut acc = PauliString::identity(n);
        for i in 0..n {
            if self.rows[i].x_bits()[qubit] {
                acc = acc.compose(&self.rows[n + i]).expect("rows share n");
            }
        }
        Some(u8::from(acc.phase() == Phase::MINUS_ONE))
    }

    fn measure_z(&mut self, q: usize, outcome: Outcome<'_>) -> Result<TabOutcome> {
        let n = self.n;
        if let Some(det) = self.peek_z(q) {
            if let Outcome::Forced(m) = outcome {
                if m != det {
                    return Err(Error::ImpossibleOutcome { qubit: q, outcome: m, probability: 0.0 });
                }
            }
            return Ok(TabOutcome { outcome: det, deterministic: true });
        }
        let p = (n..2 * n).find(|&i| self.rows[i].x_bits()[q]).expect("random branch has an anticommuting row");
        let pivot = self.rows[p].clone();
        for i in 0..2 * n {
            if i != p && self.rows[i].x_bits()[q] {
                self.rows[i] = self.rows[i].compose(&pivot).expect("rows share n");
            }
        }
        let m = match outcome {
            Outcome::Forced(m) => m,
            Outcome::Sample(rng) => u8::from(rng.gen::<bool>()),
        };
        self.rows[p - n] = pivot;
        let sign = if m == 1 { Phase::MINUS_ONE } else { Phase::ONE };
        self.rows[p] = PauliString::single(n, q, Pauli::Z).with_phase(sign);
        Ok(TabOutcome { outcome: m, deterministic: false })
    }

    /// Measures `qubit` in Z and flips it to the requested local state.
    pub fn reset(&mut self, qubit: usize, symbol: Symbol, rng: &mut dyn RngCore) -> Result<()> {
        let r = self.measure(qubit, PauliBasis::Z, Outcome::Sample(rng))?;
        if r.outcome == 1 {
            self.apply(&Gate::X(qubit))?;
        }
        match symbol {
            Symbol::Zero => {}
            Symbol::One => self.apply(&Gate::X(qubit))?,
            Symbol::Plus => self.apply(&Gate::H(qubit))?,
            Symbol::Minus => {
                self.apply(&Gate::X(qubit))?;
                self.apply(&Gate::H(qubit))?;
            }
        }
        Ok(())
    }

    /// Row-reduced stabilizer generators; equal groups (signs included)
    /// give identical output.
    pub fn canonical_generators(&self) -> Vec<PauliString> {
        let order: Vec<(usize, bool)> = (0..self.n).flat_map(|q| [(q, true), (q, false)]).collect();
        let mut rows = self.stabilizers().to_vec();
        row_reduce(&mut rows, &order);
        rows
    }

    /// Stabilizer group of `subset` (in that order), valid when the rest of
    /// the register is disentangled from it. Returns the qubits outside
    /// `subset` that are still entangled with something on error.
    pub fn restrict(&self, subset: &[usize]) -> std::result::Result<Vec<PauliString>, Vec<usize>> {
        let rest: Vec<usize> = (0..self.n).filter(|q| !subset.contains(q)).collect();
        let order: Vec<(usize, bool)> = rest
            .iter()
            .chain(subset)
            .flat_map(|&q| [(q, true), (q, false)])
            .collect();
        let mut rows = self.stabilizers().to_vec();
        row_reduce(&mut rows, &order);
        let inside: Vec<PauliString> = rows
            .iter()
            .filter(|r| rest.iter().all(|&q| r.get(q) == Pauli::I))
            .map(|r| project(r, subset))
            .collect();
        if inside.len() == subset.len() {
            return Ok(inside);
        }
        let entangled = rest
            .iter()
            .copied()
            .filter(|&q| self.single_qubit_stabilizer(q).is_none())
            .collect();
        Err(entangled)
    }

    /// The `±P_q` stabilizing qubit `q` alone, if the qubit is in a pure
    /// single-qubit stabilizer state.
    pub fn single_qubit_stabilizer(&self, q: usize) -> Option<PauliString> {
        let others: Vec<(usize, bool)> = (0..self.n)
            .filter(|&o| o != q)
            .flat_map(|o| [(o, true), (o, false)])
            .chain([(q, true), (q, false)])
            .collect();
        let mut rows = self.stabilizers().to_vec();
        row_reduce(&mut rows, &others);
        rows.into_iter().find(|r| r.support() == vec![q])
    }

    /// Expands the stabilizer group (2^n elements; small `n` only).
    pub fn group_elements(&self) -> Vec<PauliString> {
        let gens = self.stabilizers();
        let mut out = vec![PauliString::identity(self.n)];
        for g in gens {
            let more: Vec<PauliString> = out.iter().map(|e| e.compose(g).expect("rows share n")).collect();
            out.extend(more);
        }
        out
    }

    pub fn dump(&self) -> Vec<String> {
        self.stabilizers().iter().map(|p| p.to_string()).collect()
    }
}

fn project(p: &PauliString, qubits: &[usize]) -> PauliString {
    let paulis: Vec<Pauli> = qubits.iter().map(|&q| p.get(q)).collect();
    PauliString::from_paulis(&paulis).with_phase(p.phase())
}

fn bit(p: &PauliString, (q, is_x): (usize, bool)) -> bool {
    if is_x {
        p.x_bits()[q]
    } else {
        p.z_bits()[q]
    }
}

/// Reduced row echelon form over GF(2) with columns visited in `order`
/// (`(qubit, true)` is the X bit, `(qubit, false)` the Z bit). Row products
/// carry phases. Returns the pivot columns in row order.
pub fn row_reduce(rows: &mut [PauliString], order: &[(usize, bool)]) -> Vec<(usize, bool)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in order {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], col)) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, col) {
                *row = row.compose(&pivot).expect("rows share n");
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Equality of stabilizer groups including signs.
pub fn stab_equal(a: &Tableau, b: &Tableau) -> bool {
    a.n == b.n && a.canonical_generators() == b.canonical_generators()
}

/// First canonical generator where two tableaux differ.
pub fn first_difference(a: &Tableau, b: &Tableau) -> Option<(Option<PauliString>, Option<PauliString>)> {
    let (ca, cb) = (a.canonical_generators(), b.canonical_generators());
    let len = ca.len().max(cb.len());
    (0..len)
        .find(|&i| ca.get(i) != cb.get(i))
        .map(|i| (ca.get(i).cloned(), cb.get(i).cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn init_generators() {
        let t = Tableau::init(&[Symbol::Zero]);
        assert_eq!(t.stabilizers(), &[p("+Z")]);
        let t = Tableau::init(&[Symbol::Plus, Symbol::Plus]);
        assert_eq!(t.stabilizers(), &[p("+XI"), p("+IX")]);
        t.check_symplectic().unwrap();
    }

    #[test]
    fn cz_on_plus_plus() {
        let mut t = Tableau::init(&[Symbol::Plus, Symbol::Plus]);
        t.apply(&Gate::Cz(0, 1)).unwrap();
        assert_eq!(t.stabilizers(), &[p("+XZ"), p("+ZX")]);
    }

    #[test]
    fn non_clifford_rejected() {
        let mut t = Tableau::zeros(1);
        assert!(matches!(t.apply(&Gate::Rz(0, 0.2)), Err(Error::NonClifford(_))));
    }

    #[test]
    fn plus_measures_zero_in_x() {
        let mut t = Tableau::init(&[Symbol::Plus]);
        let r = t.measure(0, PauliBasis::X, Outcome::Forced(0)).unwrap();
        assert_eq!(r, TabOutcome { outcome: 0, deterministic: true });
        assert!(t.measure(0, PauliBasis::X, Outcome::Forced(1)).is_err());
    }

    #[test]
    fn bell_pair_collapses_consistently() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..8 {
            let mut t = Tableau::init(&[Symbol::Plus, Symbol::Zero]);
            t.apply_gates(&[Gate::H(1), Gate::Cz(0, 1), Gate::H(1)]).unwrap();
            let a = t.measure(0, PauliBasis::Z, Outcome::Sample(&mut rng)).unwrap();
            assert!(!a.deterministic);
            let b = t.measure(1, PauliBasis::Z, Outcome::Sample(&mut rng)).unwrap();
            assert!(b.deterministic);
            assert_eq!(a.outcome, b.outcome);
        }
    }

    #[test]
    fn zero_and_one_differ_by_sign() {
        let a = Tableau::init(&[Symbol::Zero]);
        let b = Tableau::init(&[Symbol::One]);
        assert!(stab_equal(&a, &a));
        assert!(!stab_equal(&a, &b));
    }

    #[test]
    fn restrict_reports_entangled_qubits() {
        let mut t = Tableau::init(&[Symbol::Plus, Symbol::Plus, Symbol::Zero]);
        t.apply(&Gate::Cz(0, 1)).unwrap();
        assert_eq!(t.restrict(&[2]).unwrap(), vec![p("+Z")]);
        assert_eq!(t.restrict(&[0, 2]).unwrap_err(), vec![1]);
    }
}
