//! Cycle-structured circuit IR: alternating single-qubit ("easy") layers and
//! CZ ("hard") layers, plus Haar sampling, ZXZXZ extraction, KAK synthesis
//! and measurement-basis compilation.
//!
//! A [`Circuit`] always begins and ends with an easy cycle by construction;
//! the depth reported by [`Circuit::hard_cycle_count`] is the number of CZ
//! layers, which is the unit all benchmarking and noise attribution uses.

mod kak;

pub use kak::kak_decompose;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{dagger, is_unitary, kron_all, CMat, C_ONE, C_ZERO};
use crate::pauli::{PauliError, PauliLetter, PauliString};

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("matrix is not unitary (deviation {0:.2e})")]
    NotUnitary(f64),
    #[error("expected a {expected}-qubit operator, got dimension {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("CZ pairs in a hard cycle must be disjoint")]
    OverlappingCz,
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("measurement basis for the identity observable is undefined")]
    IdentityObservable,
    #[error("cannot parse circuit line {0:?}")]
    Parse(String),
    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub fn rx(theta: f64) -> CMat {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = Complex64::new(0.0, -(theta / 2.0).sin());
    CMat::from_row_slice(2, 2, &[c, s, s, c])
}

pub fn ry(theta: f64) -> CMat {
    let c = Complex64::new((theta / 2.0).cos(), 0.0);
    let s = (theta / 2.0).sin();
    CMat::from_row_slice(
        2,
        2,
        &[c, Complex64::new(-s, 0.0), Complex64::new(s, 0.0), c],
    )
}

pub fn rz(theta: f64) -> CMat {
    CMat::from_row_slice(
        2,
        2,
        &[
            Complex64::from_polar(1.0, -theta / 2.0),
            C_ZERO,
            C_ZERO,
            Complex64::from_polar(1.0, theta / 2.0),
        ],
    )
}

pub fn hadamard() -> CMat {
    let s = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    CMat::from_row_slice(2, 2, &[s, s, s, -s])
}

/// ZYZ Euler angles `(theta, phi, lam)` with `V ~ Rz(phi) Ry(theta) Rz(lam)`
/// up to global phase.
fn zyz_angles(v: &CMat) -> (f64, f64, f64) {
    let det = v[(0, 0)] * v[(1, 1)] - v[(0, 1)] * v[(1, 0)];
    let scale = det.sqrt().inv();
    let u00 = v[(0, 0)] * scale;
    let u10 = v[(1, 0)] * scale;
    let u11 = v[(1, 1)] * scale;
    let (a, b) = (u00.norm(), u10.norm());
    let theta = 2.0 * b.atan2(a);
    if b < 1e-12 {
        (theta, 2.0 * u11.arg(), 0.0)
    } else if a < 1e-12 {
        (theta, 2.0 * u10.arg(), 0.0)
    } else {
        let ang1 = u11.arg();
        let ang2 = u10.arg();
        (theta, ang1 + ang2, ang1 - ang2)
    }
}

/// One SU(2) stored as `Rz(z3) Rx(x2) Rz(z2) Rx(x1) Rz(z1)` angles
/// (`Rz(z1)` applied first).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Angles {
    pub z1: f64,
    pub x1: f64,
    pub z2: f64,
    pub x2: f64,
    pub z3: f64,
}

impl Su2Angles {
    pub const IDENTITY: Su2Angles = Su2Angles { z1: 0.0, x1: 0.0, z2: 0.0, x2: 0.0, z3: 0.0 };

    pub fn matrix(&self) -> CMat {
        rz(self.z3) * rx(self.x2) * rz(self.z2) * rx(self.x1) * rz(self.z1)
    }

    pub fn is_identity_angles(&self) -> bool {
        self.z1 == 0.0 && self.x1 == 0.0 && self.z2 == 0.0 && self.x2 == 0.0 && self.z3 == 0.0
    }
}

/// ZXZXZ angles reproducing `v` up to global phase, with the two X pulses
/// fixed at π/2 (virtual-Z convention). Diagonal inputs collapse to a single
/// Z angle so trivial layers stay trivial.
pub fn zxzxz_angles(v: &CMat) -> Result<Su2Angles, CircuitError> {
    if v.nrows() != 2 || v.ncols() != 2 {
        return Err(CircuitError::WrongDimension { expected: 1, got: v.nrows() });
    }
    if !is_unitary(v, 1e-10) {
        let dev = (dagger(v) * v - CMat::identity(2, 2)).norm();
        return Err(CircuitError::NotUnitary(dev));
    }
    if v[(0, 1)].norm() < 1e-13 && v[(1, 0)].norm() < 1e-13 {
        let z = (v[(1, 1)] * v[(0, 0)].inv()).arg();
        return Ok(Su2Angles { z1: z, x1: 0.0, z2: 0.0, x2: 0.0, z3: 0.0 });
    }
    let (theta, phi, lam) = zyz_angles(v);
    Ok(Su2Angles {
        z1: lam - PI,
        x1: FRAC_PI_2,
        z2: PI - theta,
        x2: FRAC_PI_2,
        z3: phi,
    })
}

/// A layer of one single-qubit gate per qubit.
#[derive(Debug, Clone, PartialEq)]
pub struct EasyCycle {
    gates: Vec<Su2Angles>,
}

impl EasyCycle {
    pub fn identity(n_qubits: usize) -> Self {
        EasyCycle { gates: vec![Su2Angles::IDENTITY; n_qubits] }
    }

    pub fn from_angles(gates: Vec<Su2Angles>) -> Self {
        EasyCycle { gates }
    }

    /// Build from per-qubit 2×2 unitaries.
    pub fn from_matrices(mats: &[CMat]) -> Result<Self, CircuitError> {
        let gates = mats.iter().map(zxzxz_angles).collect::<Result<Vec<_>, _>>()?;
        Ok(EasyCycle { gates })
    }

    pub fn n_qubits(&self) -> usize {
        self.gates.len()
    }

    pub fn gate(&self, qubit: usize) -> &Su2Angles {
        &self.gates[qubit]
    }

    pub fn gate_matrix(&self, qubit: usize) -> CMat {
        self.gates[qubit].matrix()
    }

    /// Full tensor-product unitary (qubit 0 most significant).
    pub fn unitary(&self) -> CMat {
        let factors: Vec<CMat> = self.gates.iter().map(|g| g.matrix()).collect();
        kron_all(&factors)
    }

    /// This cycle followed by `gate` on `qubit`.
    pub fn then_gate(&self, qubit: usize, gate: &CMat) -> Result<Self, CircuitError> {
        let mut out = self.clone();
        out.gates[qubit] = zxzxz_angles(&(gate * self.gates[qubit].matrix()))?;
        Ok(out)
    }

    /// `gate` on `qubit` followed by this cycle.
    pub fn after_gate(&self, qubit: usize, gate: &CMat) -> Result<Self, CircuitError> {
        let mut out = self.clone();
        out.gates[qubit] = zxzxz_angles(&(self.gates[qubit].matrix() * gate))?;
        Ok(out)
    }

    /// Per-qubit composition: this cycle applied first, `then` second.
    pub fn then(&self, then: &EasyCycle) -> Result<Self, CircuitError> {
        let mats: Vec<CMat> = (0..self.gates.len())
            .map(|q| then.gates[q].matrix() * self.gates[q].matrix())
            .collect();
        Self::from_matrices(&mats)
    }
}

/// A layer of CZ gates on disjoint qubit pairs; unpaired qubits idle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardCycle {
    n_qubits: usize,
    pairs: Vec<(usize, usize)>,
}

impl HardCycle {
    pub fn new(n_qubits: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self, CircuitError> {
        let mut seen = vec![false; n_qubits];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            for q in [p.0, p.1] {
                if q >= n_qubits {
                    return Err(CircuitError::QubitOutOfRange { index: q, n_qubits });
                }
                if seen[q] {
                    return Err(CircuitError::OverlappingCz);
                }
                seen[q] = true;
            }
            if p.0 == p.1 {
                return Err(CircuitError::OverlappingCz);
            }
        }
        pairs.sort_unstable();
        Ok(HardCycle { n_qubits, pairs })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn idle_qubits(&self) -> Vec<usize> {
        let mut busy = vec![false; self.n_qubits];
        for &(a, b) in &self.pairs {
            busy[a] = true;
            busy[b] = true;
        }
        (0..self.n_qubits).filter(|&q| !busy[q]).collect()
    }

    /// Stable identifier used to attach noise to this layer shape.
    pub fn signature(&self) -> String {
        let mut s = format!("n{}", self.n_qubits);
        for &(a, b) in &self.pairs {
            s.push_str(&format!(":cz{a}-{b}"));
        }
        s
    }

    pub fn gates(&self) -> Vec<crate::pauli::CliffordGate> {
        self.pairs.iter().map(|&(a, b)| crate::pauli::CliffordGate::Cz(a, b)).collect()
    }

    pub fn unitary(&self) -> CMat {
        let dim = 1usize << self.n_qubits;
        let mut m = CMat::from_diagonal_element(dim, dim, C_ONE);
        for idx in 0..dim {
            let mut sign = 1.0;
            for &(a, b) in &self.pairs {
                let bit_a = (idx >> (self.n_qubits - 1 - a)) & 1;
                let bit_b = (idx >> (self.n_qubits - 1 - b)) & 1;
                if bit_a == 1 && bit_b == 1 {
                    sign = -sign;
                }
            }
            m[(idx, idx)] = Complex64::new(sign, 0.0);
        }
        m
    }
}

/// Alternating easy/hard cycle circuit. Structure enforces the invariants:
/// the first cycle is easy, every hard cycle is followed by an easy one.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    first: EasyCycle,
    rest: Vec<(HardCycle, EasyCycle)>,
}

/// Cycles of a circuit in application order.
#[derive(Debug, Clone)]
pub enum Cycle<'a> {
    Easy(&'a EasyCycle),
    Hard(&'a HardCycle),
}

impl Circuit {
    pub fn identity(n_qubits: usize) -> Self {
        Circuit { n_qubits, first: EasyCycle::identity(n_qubits), rest: Vec::new() }
    }

    pub fn from_parts(first: EasyCycle, rest: Vec<(HardCycle, EasyCycle)>) -> Self {
        let n = first.n_qubits();
        for (h, e) in &rest {
            assert_eq!(h.n_qubits(), n);
            assert_eq!(e.n_qubits(), n);
        }
        Circuit { n_qubits: n, first, rest }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn hard_cycle_count(&self) -> usize {
        self.rest.len()
    }

    pub fn first_easy(&self) -> &EasyCycle {
        &self.first
    }

    pub fn first_easy_mut(&mut self) -> &mut EasyCycle {
        &mut self.first
    }

    pub fn rest(&self) -> &[(HardCycle, EasyCycle)] {
        &self.rest
    }

    pub fn rest_mut(&mut self) -> &mut [(HardCycle, EasyCycle)] {
        &mut self.rest
    }

    pub fn last_easy(&self) -> &EasyCycle {
        self.rest.last().map(|(_, e)| e).unwrap_or(&self.first)
    }

    fn last_easy_mut(&mut self) -> &mut EasyCycle {
        self.rest.last_mut().map(|(_, e)| e).unwrap_or(&mut self.first)
    }

    /// Append a hard cycle followed by an easy cycle.
    pub fn push(&mut self, hard: HardCycle, easy: EasyCycle) {
        assert_eq!(hard.n_qubits(), self.n_qubits);
        assert_eq!(easy.n_qubits(), self.n_qubits);
        self.rest.push((hard, easy));
    }

    pub fn cycles(&self) -> impl Iterator<Item = Cycle<'_>> {
        std::iter::once(Cycle::Easy(&self.first)).chain(self.rest.iter().flat_map(|(h, e)| {
            [Cycle::Hard(h), Cycle::Easy(e)]
        }))
    }

    /// `self` followed by `other`; the junction easy cycles are merged.
    pub fn concat(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        assert_eq!(self.n_qubits, other.n_qubits);
        let mut out = self.clone();
        *out.last_easy_mut() = out.last_easy().then(&other.first)?;
        out.rest.extend(other.rest.iter().cloned());
        Ok(out)
    }

    /// Product of all cycle unitaries in application order.
    pub fn net_unitary(&self) -> CMat {
        assert!(self.n_qubits <= 4, "net_unitary is dense; n_qubits must be <= 4");
        let mut u = self.first.unitary();
        for (h, e) in &self.rest {
            u = h.unitary() * u;
            u = e.unitary() * u;
        }
        u
    }

    /// Compose the final easy cycle with the basis change that maps the
    /// eigenbasis of `observable` to the computational basis: measuring Z/I
    /// on the result equals measuring `observable` on the original circuit.
    pub fn append_measurement_basis(
        &self,
        observable: &PauliString,
    ) -> Result<Circuit, CircuitError> {
        if observable.is_identity() {
            return Err(CircuitError::IdentityObservable);
        }
        if observable.n_qubits() != self.n_qubits {
            return Err(CircuitError::WrongDimension {
                expected: self.n_qubits,
                got: observable.n_qubits(),
            });
        }
        let mut out = self.clone();
        for q in 0..self.n_qubits {
            match observable.letter(q) {
                PauliLetter::X => {
                    *out.last_easy_mut() = out.last_easy().then_gate(q, &ry(-FRAC_PI_2))?;
                }
                PauliLetter::Y => {
                    *out.last_easy_mut() = out.last_easy().then_gate(q, &rx(FRAC_PI_2))?;
                }
                PauliLetter::Z | PauliLetter::I => {}
            }
        }
        Ok(out)
    }

    /// Line-oriented text form; round-trips bit-exactly.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let write_easy = |s: &mut String, e: &EasyCycle| {
            s.push_str("easy");
            for q in 0..e.n_qubits() {
                let g = e.gate(q);
                s.push_str(&format!(
                    " q{}:({},{},{},{},{})",
                    q, g.z1, g.x1, g.z2, g.x2, g.z3
                ));
            }
            s.push('\n');
        };
        write_easy(&mut s, &self.first);
        for (h, e) in &self.rest {
            s.push_str("hard");
            for &(a, b) in h.pairs() {
                s.push_str(&format!(" cz:({a},{b})"));
            }
            s.push('\n');
            write_easy(&mut s, e);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Circuit, CircuitError> {
        let mut easies: Vec<EasyCycle> = Vec::new();
        let mut hards: Vec<HardCycle> = Vec::new();
        let mut n_qubits = 0usize;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = || CircuitError::Parse(line.to_string());
            if let Some(rest) = line.strip_prefix("easy") {
                let mut gates = Vec::new();
                for tok in rest.split_whitespace() {
                    let (_, body) = tok.split_once(":(").ok_or_else(bad)?;
                    let body = body.strip_suffix(')').ok_or_else(bad)?;
                    let vals: Vec<f64> = body
                        .split(',')
                        .map(|v| v.parse::<f64>().map_err(|_| bad()))
                        .collect::<Result<_, _>>()?;
                    if vals.len() != 5 {
                        return Err(bad());
                    }
                    gates.push(Su2Angles {
                        z1: vals[0],
                        x1: vals[1],
                        z2: vals[2],
                        x2: vals[3],
                        z3: vals[4],
                    });
                }
                if gates.is_empty() {
                    return Err(bad());
                }
                if n_qubits == 0 {
                    n_qubits = gates.len();
                }
                easies.push(EasyCycle::from_angles(gates));
            } else if let Some(rest) = line.strip_prefix("hard") {
                let mut pairs = Vec::new();
                for tok in rest.split_whitespace() {
                    let body = tok
                        .strip_prefix("cz:(")
                        .and_then(|b| b.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    let (a, b) = body.split_once(',').ok_or_else(bad)?;
                    pairs.push((
                        a.parse().map_err(|_| bad())?,
                        b.parse().map_err(|_| bad())?,
                    ));
                }
                hards.push(HardCycle::new(n_qubits, pairs)?);
            } else {
                return Err(bad());
            }
        }
        if easies.len() != hards.len() + 1 {
            return Err(CircuitError::Parse("cycle alternation broken".into()));
        }
        let first = easies.remove(0);
        let rest = hards.into_iter().zip(easies).collect();
        Ok(Circuit::from_parts(first, rest))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl FromStr for Circuit {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Circuit::from_text(s)
    }
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * PI * u2).cos()
}

/// Haar-distributed special unitary on `n_qubits` (Ginibre + QR with the
/// R-diagonal phase fix), determinant normalized to 1.
pub fn haar_random_unitary<R: Rng>(n_qubits: usize, rng: &mut R) -> CMat {
    assert!(n_qubits <= 4);
    let dim = 1usize << n_qubits;
    let mut g = CMat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            g[(i, j)] = Complex64::new(standard_normal(rng), standard_normal(rng));
        }
    }
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C_ONE };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    let det = q.determinant();
    let corr = Complex64::from_polar(1.0, -det.arg() / dim as f64);
    q.map(|x| corr * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dist_up_to_phase;
    use approx::assert_abs_diff_eq;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zxzxz_identity_accepts_zero_angles() {
        let id = CMat::identity(2, 2);
        let a = zxzxz_angles(&id).unwrap();
        assert!(a.is_identity_angles());
    }

    #[test]
    fn zxzxz_reconstructs_hadamard() {
        let h = hadamard();
        let a = zxzxz_angles(&h).unwrap();
        assert!(dist_up_to_phase(&a.matrix(), &h) < 1e-10);
    }

    #[test]
    fn zxzxz_reconstructs_haar_su2() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let u = haar_random_unitary(1, &mut rng);
            let a = zxzxz_angles(&u).unwrap();
            assert!(dist_up_to_phase(&a.matrix(), &u) < 1e-10);
            assert_abs_diff_eq!(a.x1, FRAC_PI_2);
            assert_abs_diff_eq!(a.x2, FRAC_PI_2);
        }
    }

    #[test]
    fn zxzxz_rejects_non_unitary() {
        let m = CMat::from_row_slice(2, 2, &[C_ONE, C_ONE, C_ZERO, C_ONE]);
        assert!(matches!(zxzxz_angles(&m), Err(CircuitError::NotUnitary(_))));
    }

    #[test]
    fn haar_is_deterministic_under_seed() {
        let u1 = haar_random_unitary(2, &mut ChaCha8Rng::seed_from_u64(5));
        let u2 = haar_random_unitary(2, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(u1, u2);
    }

    #[test]
    fn haar_is_unitary_with_unit_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let u = haar_random_unitary(2, &mut rng);
            assert!(is_unitary(&u, 1e-12));
            assert!((u.determinant() - C_ONE).norm() < 1e-10);
        }
    }

    #[test]
    fn haar_first_moment_matches_su4() {
        // E |Tr U|^2 = 1 for Haar SU(d)
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 2000;
        let mean: f64 = (0..n)
            .map(|_| haar_random_unitary(2, &mut rng).trace().norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 1.0).abs() < 0.1, "mean |Tr U|^2 = {mean}");
    }

    #[test]
    fn hard_cycle_rejects_overlap() {
        assert!(HardCycle::new(3, vec![(0, 1), (1, 2)]).is_err());
        assert!(HardCycle::new(3, vec![(0, 0)]).is_err());
        assert!(HardCycle::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn hard_cycle_signature_is_order_independent() {
        let a = HardCycle::new(4, vec![(2, 3), (1, 0)]).unwrap();
        let b = HardCycle::new(4, vec![(0, 1), (3, 2)]).unwrap();
        assert_eq!(a.signature(), b.signature());
        assert_eq!(a.signature(), "n4:cz0-1:cz2-3");
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::identity(2);
        assert_eq!(c.hard_cycle_count(), 0);
        assert!((c.net_unitary() - CMat::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn concat_composes_net_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10 {
            let c1 = kak_decompose(&haar_random_unitary(2, &mut rng)).unwrap();
            let c2 = kak_decompose(&haar_random_unitary(2, &mut rng)).unwrap();
            let joined = c1.concat(&c2).unwrap();
            assert_eq!(joined.hard_cycle_count(), 6);
            let expect = c2.net_unitary() * c1.net_unitary();
            assert!(dist_up_to_phase(&joined.net_unitary(), &expect) < 1e-9);
        }
    }

    #[test]
    fn measurement_basis_z_observable_is_noop() {
        let c = Circuit::identity(2);
        let m = c.append_measurement_basis(&"ZZ".parse().unwrap()).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn measurement_basis_rejects_identity() {
        let c = Circuit::identity(2);
        assert!(matches!(
            c.append_measurement_basis(&PauliString::identity(2)),
            Err(CircuitError::IdentityObservable)
        ));
    }

    #[test]
    fn measurement_basis_preserves_depth_and_rotates_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = kak_decompose(&haar_random_unitary(2, &mut rng)).unwrap();
        let obs: PauliString = "XY".parse().unwrap();
        let m = c.append_measurement_basis(&obs).unwrap();
        assert_eq!(m.hard_cycle_count(), c.hard_cycle_count());
        // B ρ B† measured in Z equals ρ measured in the observable basis:
        // B† (Z⊗Z) B == X⊗Y
        let b = m.net_unitary() * dagger(&c.net_unitary());
        let zz: PauliString = "ZZ".parse().unwrap();
        let img = dagger(&b) * zz.matrix() * &b;
        assert!((img - obs.matrix()).norm() < 1e-9);
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = kak_decompose(&haar_random_unitary(2, &mut rng)).unwrap();
        let text = c.to_text();
        let back = Circuit::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn text_parse_rejects_garbage() {
        assert!(Circuit::from_text("easy q0:(0,0,0,0)").is_err());
        assert!(Circuit::from_text("junk").is_err());
        assert!(Circuit::from_text("easy q0:(0,0,0,0,0)\nhard cz:(0,1)").is_err());
    }
}
