//! Exact algebra of the signed N-qubit Pauli group, Clifford conjugation and
//! Pauli-transfer-matrix construction.
//!
//! Pauli strings are stored in symplectic form: one X bit and one Z bit per
//! qubit plus a power of `i`, so products and commutators are integer
//! arithmetic with no floating-point sign drift. Qubit 0 is the most
//! significant tensor factor everywhere (matrices, basis indices, text form).

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{kron_all, CMat, C_ONE, C_ZERO};

#[derive(Debug, Error, PartialEq)]
pub enum PauliError {
    #[error("pauli strings act on different qubit counts ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("cannot parse pauli string {0:?}")]
    Parse(String),
    #[error("kraus set is not trace preserving (deviation {0:.2e})")]
    NotTracePreserving(f64),
}

/// Phase of a Pauli operator relative to the plain tensor product of
/// {I, X, Y, Z}: one of +1, +i, -1, -i stored as the exponent of i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Phase(u8);

impl Phase {
    pub const PLUS_ONE: Phase = Phase(0);
    pub const PLUS_I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn as_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// The ±1 value, if the phase is real.
    pub fn real_sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => Ok(()),
            1 => write!(f, "i"),
            2 => write!(f, "-"),
            _ => write!(f, "-i"),
        }
    }
}

/// A signed Pauli operator on `n_qubits` qubits.
///
/// Internally the operator is `i^phase_xz · Π_q X_q^{x_q} Z_q^{z_q}`; the
/// public [`PauliString::phase`] is relative to the Hermitian letters, i.e.
/// `"Y"` parses to phase +1 even though `Y = i X Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x_bits: u32,
    z_bits: u32,
    phase_xz: u8,
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliLetter {
    I,
    X,
    Y,
    Z,
}

impl PauliLetter {
    fn bits(self) -> (u32, u32) {
        match self {
            PauliLetter::I => (0, 0),
            PauliLetter::X => (1, 0),
            PauliLetter::Y => (1, 1),
            PauliLetter::Z => (0, 1),
        }
    }

    pub fn matrix(self) -> CMat {
        let i = Complex64::new(0.0, 1.0);
        match self {
            PauliLetter::I => CMat::from_row_slice(2, 2, &[C_ONE, C_ZERO, C_ZERO, C_ONE]),
            PauliLetter::X => CMat::from_row_slice(2, 2, &[C_ZERO, C_ONE, C_ONE, C_ZERO]),
            PauliLetter::Y => CMat::from_row_slice(2, 2, &[C_ZERO, -i, i, C_ZERO]),
            PauliLetter::Z => CMat::from_row_slice(2, 2, &[C_ONE, C_ZERO, C_ZERO, -C_ONE]),
        }
    }

    fn ch(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }
}

impl PauliString {
    /// The identity on `n_qubits` qubits.
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1 && n_qubits <= 16, "qubit count out of range");
        PauliString { n_qubits, x_bits: 0, z_bits: 0, phase_xz: 0 }
    }

    /// Build from per-qubit letters (qubit 0 first) and a sign phase.
    pub fn from_letters(letters: &[PauliLetter], phase: Phase) -> Self {
        assert!(!letters.is_empty() && letters.len() <= 16);
        let mut x_bits = 0u32;
        let mut z_bits = 0u32;
        let mut n_y = 0u8;
        for (q, l) in letters.iter().enumerate() {
            let (x, z) = l.bits();
            x_bits |= x << q;
            z_bits |= z << q;
            if matches!(l, PauliLetter::Y) {
                n_y += 1;
            }
        }
        // letters = (-i)^{nY} X^x Z^z  =>  i^{phase_xz} = phase · i^{nY}
        let phase_xz = (phase.exponent() + n_y) % 4;
        PauliString { n_qubits: letters.len(), x_bits, z_bits, phase_xz }
    }

    /// A single non-identity letter at `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, letter: PauliLetter) -> Result<Self, PauliError> {
        if qubit >= n_qubits {
            return Err(PauliError::QubitOutOfRange { index: qubit, n_qubits });
        }
        let mut letters = vec![PauliLetter::I; n_qubits];
        letters[qubit] = letter;
        Ok(Self::from_letters(&letters, Phase::PLUS_ONE))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn letter(&self, qubit: usize) -> PauliLetter {
        match ((self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1) {
            (0, 0) => PauliLetter::I,
            (1, 0) => PauliLetter::X,
            (1, 1) => PauliLetter::Y,
            _ => PauliLetter::Z,
        }
    }

    pub fn letters(&self) -> Vec<PauliLetter> {
        (0..self.n_qubits).map(|q| self.letter(q)).collect()
    }

    /// Phase relative to the Hermitian letter product.
    pub fn phase(&self) -> Phase {
        let n_y = (self.x_bits & self.z_bits).count_ones() as u8;
        Phase((self.phase_xz + 4 - n_y % 4) % 4)
    }

    /// Same operator with phase reset to +1.
    pub fn unsigned(&self) -> PauliString {
        Self::from_letters(&self.letters(), Phase::PLUS_ONE)
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits == 0 && self.z_bits == 0
    }

    /// Number of qubits with a non-identity letter.
    pub fn weight(&self) -> usize {
        (self.x_bits | self.z_bits).count_ones() as usize
    }

    pub fn y_count(&self) -> usize {
        (self.x_bits & self.z_bits).count_ones() as usize
    }

    /// Qubits with a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| (self.x_bits | self.z_bits) >> q & 1 == 1)
            .collect()
    }

    /// Product `self · other` with exact phase.
    pub fn mul(&self, other: &PauliString) -> Result<PauliString, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        // (X^a Z^b)(X^c Z^d) = (-1)^{b·c} X^{a+c} Z^{b+d}
        let swaps = (self.z_bits & other.x_bits).count_ones() as u8;
        Ok(PauliString {
            n_qubits: self.n_qubits,
            x_bits: self.x_bits ^ other.x_bits,
            z_bits: self.z_bits ^ other.z_bits,
            phase_xz: (self.phase_xz + other.phase_xz + 2 * swaps) % 4,
        })
    }

    /// True iff the operators commute (symplectic inner product is 0).
    pub fn commutes(&self, other: &PauliString) -> Result<bool, PauliError> {
        if self.n_qubits != other.n_qubits {
            return Err(PauliError::DimensionMismatch(self.n_qubits, other.n_qubits));
        }
        let sp = (self.x_bits & other.z_bits).count_ones()
            + (self.z_bits & other.x_bits).count_ones();
        Ok(sp % 2 == 0)
    }

    pub fn negated(&self) -> PauliString {
        PauliString { phase_xz: (self.phase_xz + 2) % 4, ..self.clone() }
    }

    /// Index into the fixed Pauli basis ordering: lexicographic in the
    /// per-qubit letters (I, X, Y, Z), qubit 0 most significant.
    pub fn basis_index(&self) -> usize {
        let mut idx = 0usize;
        for q in 0..self.n_qubits {
            let digit = match self.letter(q) {
                PauliLetter::I => 0,
                PauliLetter::X => 1,
                PauliLetter::Y => 2,
                PauliLetter::Z => 3,
            };
            idx = idx * 4 + digit;
        }
        idx
    }

    /// Inverse of [`basis_index`](Self::basis_index), with phase +1.
    pub fn from_basis_index(n_qubits: usize, index: usize) -> Self {
        let mut letters = vec![PauliLetter::I; n_qubits];
        let mut rem = index;
        for q in (0..n_qubits).rev() {
            letters[q] = match rem % 4 {
                0 => PauliLetter::I,
                1 => PauliLetter::X,
                2 => PauliLetter::Y,
                _ => PauliLetter::Z,
            };
            rem /= 4;
        }
        Self::from_letters(&letters, Phase::PLUS_ONE)
    }

    /// Dense matrix representation including the phase.
    pub fn matrix(&self) -> CMat {
        let factors: Vec<CMat> = self.letters().iter().map(|l| l.matrix()).collect();
        let m = kron_all(&factors);
        let p = self.phase().as_complex();
        m.map(|x| p * x)
    }
}

/// All `4^n` Pauli strings in basis order (identity first).
pub fn all_paulis(n_qubits: usize) -> impl Iterator<Item = PauliString> {
    (0..4usize.pow(n_qubits as u32)).map(move |i| PauliString::from_basis_index(n_qubits, i))
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase())?;
        for q in 0..self.n_qubits {
            write!(f, "{}", self.letter(q).ch())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim();
        let (phase, rest) = if let Some(r) = body.strip_prefix("-i") {
            (Phase::MINUS_I, r)
        } else if let Some(r) = body.strip_prefix("+i") {
            (Phase::PLUS_I, r)
        } else if let Some(r) = body.strip_prefix('i') {
            (Phase::PLUS_I, r)
        } else if let Some(r) = body.strip_prefix('-') {
            (Phase::MINUS_ONE, r)
        } else if let Some(r) = body.strip_prefix('+') {
            (Phase::PLUS_ONE, r)
        } else {
            (Phase::PLUS_ONE, body)
        };
        if rest.is_empty() || rest.len() > 16 {
            return Err(PauliError::Parse(s.into()));
        }
        let mut letters = Vec::with_capacity(rest.len());
        for ch in rest.chars() {
            letters.push(match ch {
                'I' | 'i' => PauliLetter::I,
                'X' | 'x' => PauliLetter::X,
                'Y' | 'y' => PauliLetter::Y,
                'Z' | 'z' => PauliLetter::Z,
                _ => return Err(PauliError::Parse(s.into())),
            });
        }
        Ok(Self::from_letters(&letters, phase))
    }
}

/// The Clifford gates that appear in this toolkit's circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliffordGate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cz(usize, usize),
}

impl CliffordGate {
    fn max_qubit(&self) -> usize {
        match *self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q) => q,
            CliffordGate::Cz(a, b) => a.max(b),
        }
    }

    /// Image of the X generator on `qubit` under conjugation, as
    /// `(letters on touched qubits, sign)`.
    fn image_x(&self, n: usize, qubit: usize) -> PauliString {
        let mk = |pairs: &[(usize, PauliLetter)], neg: bool| {
            let mut letters = vec![PauliLetter::I; n];
            for &(q, l) in pairs {
                letters[q] = l;
            }
            let p = PauliString::from_letters(&letters, Phase::PLUS_ONE);
            if neg { p.negated() } else { p }
        };
        match *self {
            CliffordGate::H(q) => mk(&[(q, PauliLetter::Z)], false),
            CliffordGate::S(q) => mk(&[(q, PauliLetter::Y)], false),
            CliffordGate::X(q) => mk(&[(q, PauliLetter::X)], false),
            CliffordGate::Y(q) => mk(&[(q, PauliLetter::X)], true),
            CliffordGate::Z(q) => mk(&[(q, PauliLetter::X)], true),
            CliffordGate::Cz(a, b) => {
                let other = if qubit == a { b } else { a };
                mk(&[(qubit, PauliLetter::X), (other, PauliLetter::Z)], false)
            }
        }
    }

    fn image_z(&self, n: usize, qubit: usize) -> PauliString {
        let mk = |pairs: &[(usize, PauliLetter)], neg: bool| {
            let mut letters = vec![PauliLetter::I; n];
            for &(q, l) in pairs {
                letters[q] = l;
            }
            let p = PauliString::from_letters(&letters, Phase::PLUS_ONE);
            if neg { p.negated() } else { p }
        };
        match *self {
            CliffordGate::H(q) => mk(&[(q, PauliLetter::X)], false),
            CliffordGate::S(_) | CliffordGate::Cz(..) | CliffordGate::Z(_) => {
                mk(&[(qubit, PauliLetter::Z)], false)
            }
            CliffordGate::X(q) | CliffordGate::Y(q) => mk(&[(q, PauliLetter::Z)], true),
        }
    }

    fn touches(&self, qubit: usize) -> bool {
        match *self {
            CliffordGate::H(q)
            | CliffordGate::S(q)
            | CliffordGate::X(q)
            | CliffordGate::Y(q)
            | CliffordGate::Z(q) => q == qubit,
            CliffordGate::Cz(a, b) => qubit == a || qubit == b,
        }
    }

    /// Dense unitary on `n_qubits`.
    pub fn matrix(&self, n_qubits: usize) -> CMat {
        let i = Complex64::new(0.0, 1.0);
        match *self {
            CliffordGate::Cz(a, b) => {
                let dim = 1usize << n_qubits;
                let mut m = CMat::zeros(dim, dim);
                for idx in 0..dim {
                    // qubit 0 is the most significant bit
                    let bit_a = (idx >> (n_qubits - 1 - a)) & 1;
                    let bit_b = (idx >> (n_qubits - 1 - b)) & 1;
                    let sign = if bit_a == 1 && bit_b == 1 { -C_ONE } else { C_ONE };
                    m[(idx, idx)] = sign;
                }
                m
            }
            _ => {
                let q = self.max_qubit();
                let g = match *self {
                    CliffordGate::H(_) => {
                        let s = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
                        CMat::from_row_slice(2, 2, &[s, s, s, -s])
                    }
                    CliffordGate::S(_) => CMat::from_row_slice(2, 2, &[C_ONE, C_ZERO, C_ZERO, i]),
                    CliffordGate::X(_) => PauliLetter::X.matrix(),
                    CliffordGate::Y(_) => PauliLetter::Y.matrix(),
                    CliffordGate::Z(_) => PauliLetter::Z.matrix(),
                    CliffordGate::Cz(..) => unreachable!(),
                };
                let factors: Vec<CMat> = (0..n_qubits)
                    .map(|k| if k == q { g.clone() } else { PauliLetter::I.matrix() })
                    .collect();
                kron_all(&factors)
            }
        }
    }
}

/// Exact signed conjugation `G P G†`.
pub fn conjugate_through(p: &PauliString, gate: CliffordGate) -> Result<PauliString, PauliError> {
    let n = p.n_qubits();
    if gate.max_qubit() >= n {
        return Err(PauliError::QubitOutOfRange { index: gate.max_qubit(), n_qubits: n });
    }
    // G (i^φ Π X^a Z^b) G† = i^φ Π (G X_q G†)^{a_q} (G Z_q G†)^{b_q}
    let mut out = PauliString::identity(n);
    out.phase_xz = p.phase_xz;
    for q in 0..n {
        let x_here = (p.x_bits >> q) & 1 == 1;
        let z_here = (p.z_bits >> q) & 1 == 1;
        if x_here {
            let img = if gate.touches(q) {
                gate.image_x(n, q)
            } else {
                PauliString::single(n, q, PauliLetter::X)?
            };
            out = out.mul(&img)?;
        }
        if z_here {
            let img = if gate.touches(q) {
                gate.image_z(n, q)
            } else {
                PauliString::single(n, q, PauliLetter::Z)?
            };
            out = out.mul(&img)?;
        }
    }
    Ok(out)
}

/// Conjugation through a sequence of gates, applied left to right:
/// `G_k … G_1 P G_1† … G_k†`.
pub fn conjugate_through_all(
    p: &PauliString,
    gates: &[CliffordGate],
) -> Result<PauliString, PauliError> {
    let mut out = p.clone();
    for &g in gates {
        out = conjugate_through(&out, g)?;
    }
    Ok(out)
}

/// A quantum channel in one of the three forms the toolkit builds noise from.
#[derive(Debug, Clone)]
pub enum Channel {
    Unitary(CMat),
    /// Probability map over non-identity Paulis; the remaining weight is
    /// the identity.
    Pauli(Vec<(PauliString, f64)>),
    Kraus(Vec<CMat>),
}

impl Channel {
    pub fn apply(&self, rho: &CMat) -> CMat {
        match self {
            Channel::Unitary(u) => u * rho * u.adjoint(),
            Channel::Pauli(probs) => {
                let p_rest: f64 = 1.0 - probs.iter().map(|(_, p)| p).sum::<f64>();
                let mut out = rho.map(|x| x * Complex64::new(p_rest, 0.0));
                for (p, prob) in probs {
                    let m = p.matrix();
                    out += (&m * rho * m.adjoint()).map(|x| x * Complex64::new(*prob, 0.0));
                }
                out
            }
            Channel::Kraus(ops) => {
                let dim = rho.nrows();
                let mut out = CMat::zeros(dim, dim);
                for k in ops {
                    out += k * rho * k.adjoint();
                }
                out
            }
        }
    }
}

/// Pauli-transfer-matrix representation of a channel: real, `4^n × 4^n`,
/// indexed by [`PauliString::basis_index`].
#[derive(Debug, Clone)]
pub struct Ptm {
    pub n_qubits: usize,
    pub matrix: DMatrix<f64>,
}

impl Ptm {
    pub fn identity(n_qubits: usize) -> Self {
        let d = 4usize.pow(n_qubits as u32);
        Ptm { n_qubits, matrix: DMatrix::identity(d, d) }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.matrix.nrows()).map(|i| self.matrix[(i, i)]).collect()
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let mut m = 0.0f64;
        for i in 0..self.matrix.nrows() {
            for j in 0..self.matrix.ncols() {
                if i != j {
                    m = m.max(self.matrix[(i, j)].abs());
                }
            }
        }
        m
    }

    pub fn compose(&self, inner: &Ptm) -> Ptm {
        assert_eq!(self.n_qubits, inner.n_qubits);
        Ptm { n_qubits: self.n_qubits, matrix: &self.matrix * &inner.matrix }
    }
}

/// PTM of a channel: entries `Tr(P_i Λ(P_j)) / 2^n`.
pub fn ptm_of(n_qubits: usize, channel: &Channel) -> Result<Ptm, PauliError> {
    assert!(n_qubits <= 4, "ptm_of is exponential; n_qubits must be <= 4");
    if let Channel::Kraus(ops) = channel {
        let dim = 1usize << n_qubits;
        let mut acc = CMat::zeros(dim, dim);
        for k in ops {
            acc += k.adjoint() * k;
        }
        let dev = (acc - CMat::identity(dim, dim)).norm();
        if dev > 1e-10 {
            return Err(PauliError::NotTracePreserving(dev));
        }
    }
    let d = 4usize.pow(n_qubits as u32);
    let dim = 1usize << n_qubits;
    let mut m = DMatrix::zeros(d, d);
    let basis: Vec<CMat> = all_paulis(n_qubits).map(|p| p.matrix()).collect();
    for (j, pj) in basis.iter().enumerate() {
        let image = channel.apply(pj);
        for (i, pi) in basis.iter().enumerate() {
            let tr: Complex64 = (pi * &image).trace();
            m[(i, j)] = tr.re / dim as f64;
        }
    }
    Ok(Ptm { n_qubits, matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use approx::assert_abs_diff_eq;

    // Independent dense oracle: raw 2x2 arrays, kron'd directly.
    fn dense(letters: &str) -> CMat {
        let i = Complex64::new(0.0, 1.0);
        let one = C_ONE;
        let mut out = CMat::identity(1, 1);
        for ch in letters.chars() {
            let f = match ch {
                'I' => CMat::from_row_slice(2, 2, &[one, C_ZERO, C_ZERO, one]),
                'X' => CMat::from_row_slice(2, 2, &[C_ZERO, one, one, C_ZERO]),
                'Y' => CMat::from_row_slice(2, 2, &[C_ZERO, -i, i, C_ZERO]),
                'Z' => CMat::from_row_slice(2, 2, &[one, C_ZERO, C_ZERO, -one]),
                _ => panic!(),
            };
            out = kron(&out, &f);
        }
        out
    }

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_y_is_iz() {
        let r = p("X").mul(&p("Y")).unwrap();
        assert_eq!(r, p("iZ"));
    }

    #[test]
    fn identity_is_neutral() {
        let id = PauliString::identity(2);
        for q in all_paulis(2) {
            assert_eq!(id.mul(&q).unwrap(), q);
            assert_eq!(q.mul(&id).unwrap(), q);
        }
    }

    #[test]
    fn all_three_qubit_products_match_dense_oracle() {
        let paulis: Vec<PauliString> = all_paulis(3).collect();
        for a in &paulis {
            let ma = a.matrix();
            for b in &paulis {
                let r = a.mul(b).unwrap();
                let expect = &ma * b.matrix();
                assert!((r.matrix() - expect).norm() < 1e-12, "{a} * {b} != {r}");
            }
        }
    }

    #[test]
    fn commutes_matches_dense_commutator() {
        for a in all_paulis(2) {
            let ma = a.matrix();
            for b in all_paulis(2) {
                let mb = b.matrix();
                let comm = (&ma * &mb - &mb * &ma).norm();
                assert_eq!(a.commutes(&b).unwrap(), comm < 1e-12, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn commutes_trivial_cases() {
        assert!(p("X").commutes(&p("X")).unwrap());
        assert!(!p("X").commutes(&p("Z")).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_error() {
        assert_eq!(
            p("X").mul(&p("XX")).unwrap_err(),
            PauliError::DimensionMismatch(1, 2)
        );
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn cz_conjugation_examples() {
        let cz = CliffordGate::Cz(0, 1);
        assert_eq!(conjugate_through(&p("ZZ"), cz).unwrap(), p("ZZ"));
        assert_eq!(conjugate_through(&p("XI"), cz).unwrap(), p("XZ"));
        assert_eq!(conjugate_through(&p("XX"), cz).unwrap(), p("YY"));
    }

    #[test]
    fn conjugation_matches_dense_for_all_gates() {
        let gates = [
            CliffordGate::H(0),
            CliffordGate::S(0),
            CliffordGate::X(0),
            CliffordGate::Y(1),
            CliffordGate::Z(1),
            CliffordGate::Cz(0, 1),
        ];
        for gate in gates {
            let g = gate.matrix(2);
            for a in all_paulis(2) {
                let img = conjugate_through(&a, gate).unwrap();
                let expect = &g * a.matrix() * g.adjoint();
                assert!((img.matrix() - expect).norm() < 1e-12, "{gate:?} on {a}");
            }
        }
    }

    #[test]
    fn conjugation_round_trip_is_identity() {
        // every gate in the set is self-inverse up to phase except S
        for gate in [CliffordGate::H(0), CliffordGate::X(1), CliffordGate::Cz(0, 1)] {
            for a in all_paulis(2) {
                let there = conjugate_through(&a, gate).unwrap();
                let back = conjugate_through(&there, gate).unwrap();
                assert_eq!(back, a);
            }
        }
    }

    #[test]
    fn qubit_out_of_range_is_error() {
        let r = conjugate_through(&p("X"), CliffordGate::Cz(0, 1));
        assert!(matches!(r, Err(PauliError::QubitOutOfRange { .. })));
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["XIZ", "-YY", "iXZ", "-iZZI", "Y"] {
            let ps = p(s);
            assert_eq!(format!("{ps}"), s);
        }
        assert_eq!(p("+X"), p("X"));
        assert!("".parse::<PauliString>().is_err());
        assert!("XQ".parse::<PauliString>().is_err());
    }

    #[test]
    fn weight_and_support() {
        assert_eq!(p("IXYZ").weight(), 3);
        assert_eq!(p("IXYZ").support(), vec![1, 2, 3]);
        assert_eq!(PauliString::identity(3).weight(), 0);
    }

    #[test]
    fn basis_index_round_trip() {
        for (i, q) in all_paulis(2).enumerate() {
            assert_eq!(q.basis_index(), i);
            assert_eq!(PauliString::from_basis_index(2, i), q);
        }
        // lexicographic with qubit 0 most significant: index 4 = "XI"
        assert_eq!(PauliString::from_basis_index(2, 4), p("XI"));
        assert_eq!(PauliString::from_basis_index(2, 3), p("IZ"));
    }

    #[test]
    fn matrices_match_dense_oracle() {
        for s in ["XYZ", "IIZ", "YYI"] {
            assert!((p(s).matrix() - dense(s)).norm() < 1e-12);
        }
        let m = p("-iYX").matrix();
        let expect = dense("YX").map(|x| Complex64::new(0.0, -1.0) * x);
        assert!((m - expect).norm() < 1e-12);
    }

    #[test]
    fn ptm_of_identity_channel() {
        let ch = Channel::Unitary(CMat::identity(2, 2));
        let ptm = ptm_of(1, &ch).unwrap();
        assert!((ptm.matrix - DMatrix::<f64>::identity(4, 4)).norm() < 1e-12);
    }

    #[test]
    fn ptm_of_depolarizing() {
        let pr = 0.1;
        let probs: Vec<(PauliString, f64)> =
            ["X", "Y", "Z"].iter().map(|s| (p(s), pr / 3.0)).collect();
        let ptm = ptm_of(1, &Channel::Pauli(probs)).unwrap();
        let diag = ptm.diagonal();
        assert_abs_diff_eq!(diag[0], 1.0, epsilon = 1e-12);
        for k in 1..4 {
            assert_abs_diff_eq!(diag[k], 1.0 - 4.0 * pr / 3.0, epsilon = 1e-12);
        }
        assert!(ptm.max_off_diagonal() < 1e-12);
    }

    #[test]
    fn ptm_of_coherent_z_rotation() {
        // exp(-i θ/2 Z): diag (1, cosθ, cosθ, 1) with ±sinθ in the X/Y block
        let theta = 0.3;
        let u = crate::linalg::expm_hermitian(&dense("Z"), -theta / 2.0);
        let ptm = ptm_of(1, &Channel::Unitary(u)).unwrap();
        let m = &ptm.matrix;
        assert_abs_diff_eq!(m[(0, 0)], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(1, 1)], theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(m[(2, 2)], theta.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(m[(3, 3)], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(2, 1)].abs(), theta.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(m[(1, 2)].abs(), theta.sin(), epsilon = 1e-12);
    }

    #[test]
    fn ptm_rejects_incomplete_kraus() {
        let k = vec![CMat::identity(2, 2).map(|x| x * Complex64::new(0.9, 0.0))];
        assert!(matches!(
            ptm_of(1, &Channel::Kraus(k)),
            Err(PauliError::NotTracePreserving(_))
        ));
    }

    #[test]
    fn ptm_of_unitary_is_orthogonal() {
        let u = crate::linalg::expm_hermitian(&dense("XY"), 0.7);
        let ptm = ptm_of(2, &Channel::Unitary(u)).unwrap();
        let gram = &ptm.matrix * ptm.matrix.transpose();
        assert!((gram - DMatrix::<f64>::identity(16, 16)).norm() < 1e-10);
    }

    #[test]
    fn ptm_cptp_first_row() {
        let probs = vec![(p("XZ"), 0.05), (p("YI"), 0.02)];
        let ptm = ptm_of(2, &Channel::Pauli(probs)).unwrap();
        assert_abs_diff_eq!(ptm.matrix[(0, 0)], 1.0, epsilon = 1e-12);
        for j in 1..16 {
            assert_abs_diff_eq!(ptm.matrix[(0, j)], 0.0, epsilon = 1e-12);
        }
    }
}
