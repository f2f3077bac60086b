//! CZ between distant qubits through a chain of X-measured `|+⟩` ancillae.
//!
//! For `u – a_1 – … – a_{2k} – v`, measuring every `a_i` in X leaves
//! `Z_u^{s_2 ⊕ s_4 ⊕ …} Z_v^{s_1 ⊕ s_3 ⊕ …} CZ_{uv}` on the endpoints.

use num_complex::Complex64 as C;

use crate::error::{Error, Result};
use crate::qcore::{Basis, Gate, Pauli, PauliString};
use crate::svsim::{Outcome, StateVector, Symbol};

/// Z byproducts `(on u, on v)` for the interior outcomes listed from `u`
/// to `v`.
pub fn bridge_byproduct(outcomes: &[u8]) -> Result<(bool, bool)> {
    if outcomes.len() % 2 == 1 {
        return Err(Error::Lattice(format!("bridge interior has odd length {}", outcomes.len())));
    }
    let (mut zu, mut zv) = (false, false);
    for (i, &s) in outcomes.iter().enumerate() {
        if s == 1 {
            // 1-based odd positions land on v
            if i % 2 == 0 {
                zv = !zv;
            } else {
                zu = !zu;
            }
        }
    }
    Ok((zu, zv))
}

/// Dense run of a bridge with the given interior outcomes forced: returns
/// the endpoint state (u, v) after the measurements, and the byproduct
/// Pauli predicted for it.
pub fn dense_bridge(u: [C; 2], v: [C; 2], outcomes: &[u8]) -> Result<(StateVector, PauliString)> {
    let k = outcomes.len();
    let (zu, zv) = bridge_byproduct(outcomes)?;
    let mut locals = vec![u];
    locals.extend(std::iter::repeat_n(Symbol::Plus.amplitudes(), k));
    locals.push(v);
    let n = k + 2;
    let mut s = StateVector::product(&locals)?;
    for q in 0..n - 1 {
        s.apply(&Gate::Cz(q, q + 1))?;
    }
    for (i, &m) in outcomes.iter().enumerate() {
        s.measure(i + 1, Basis::X, Outcome::Forced(m))?;
    }
    let out = s.extract(&[0, n - 1])?;
    let mut p = PauliString::identity(2);
    if zu {
        p.set(0, Pauli::Z);
    }
    if zv {
        p.set(1, Pauli::Z);
    }
    Ok((out, p))
}
