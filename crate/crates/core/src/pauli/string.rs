use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 64;

/// Single-qubit Pauli factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    I,
    X,
    Y,
    Z,
}

impl Axis {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Axis::I => (false, false),
            Axis::X => (true, false),
            Axis::Y => (true, true),
            Axis::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Axis::I,
            (true, false) => Axis::X,
            (true, true) => Axis::Y,
            (false, true) => Axis::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Axis::I => 'I',
            Axis::X => 'X',
            Axis::Y => 'Y',
            Axis::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Axis::I),
            'X' => Some(Axis::X),
            'Y' => Some(Axis::Y),
            'Z' => Some(Axis::Z),
            _ => None,
        }
    }
}

/// Tensor product of I/X/Y/Z over `n` qubits in symplectic form.
///
/// Bit `j` of `x` is set iff qubit `j` (0-based) carries X or Y; bit `j` of
/// `z` is set iff it carries Z or Y. Masks never have bits at positions `>= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u32,
    x: u64,
    z: u64,
}

fn mask_for(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_masks(n, 0, 0)
    }

    pub fn from_masks(n: usize, x: u64, z: u64) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::QubitCount(n));
        }
        let m = mask_for(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask bits set beyond qubit count {n}"
            )));
        }
        Ok(PauliString { n: n as u32, x, z })
    }

    /// Build from `(qubit, axis)` factors with 0-based qubit indices.
    /// Repeated qubits multiply up to phase, which is rejected.
    pub fn from_factors(n: usize, factors: &[(usize, Axis)]) -> Result<Self> {
        let mut p = Self::identity(n)?;
        for &(q, axis) in factors {
            if q >= n {
                return Err(Error::QubitIndex { index: q, n });
            }
            if p.axis(q) != Axis::I {
                return Err(Error::InvalidArgument(format!(
                    "qubit {} appears twice in one Pauli string",
                    q + 1
                )));
            }
            let (bx, bz) = axis.bits();
            if bx {
                p.x |= 1 << q;
            }
            if bz {
                p.z |= 1 << q;
            }
        }
        Ok(p)
    }

    /// Single-qubit string, 0-based qubit.
    pub fn single(n: usize, qubit: usize, axis: Axis) -> Result<Self> {
        Self::from_factors(n, &[(qubit, axis)])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn support_mask(&self) -> u64 {
        self.x | self.z
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// True iff every factor is I or Z.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn axis(&self, qubit: usize) -> Axis {
        Axis::from_bits(self.x >> qubit & 1 == 1, self.z >> qubit & 1 == 1)
    }

    /// Non-identity factors in ascending qubit order (0-based).
    pub fn factors(&self) -> Vec<(usize, Axis)> {
        let mut out = Vec::with_capacity(self.weight() as usize);
        let mut s = self.support_mask();
        while s != 0 {
            let q = s.trailing_zeros() as usize;
            out.push((q, self.axis(q)));
            s &= s - 1;
        }
        out
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// `P·Q = i^k · R`; returns `(k mod 4, R)`.
    pub fn product(&self, other: &Self) -> Result<(u8, PauliString)> {
        self.check_n(other)?;
        Ok(self.product_unchecked(other))
    }

    #[inline]
    pub(crate) fn product_unchecked(&self, other: &Self) -> (u8, PauliString) {
        // sigma(x,z) = i^{x.z} X^x Z^z, and Z^z X^x' = (-1)^{z.x'} X^x' Z^z
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 3 * (x & z).count_ones();
        (
            (k & 3) as u8,
            PauliString { n: self.n, x, z },
        )
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_n(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// Relabel qubits: factor on qubit `j` moves to qubit `perm[j]` (0-based).
    pub(crate) fn permuted(&self, perm: &[usize]) -> PauliString {
        let mut x = 0u64;
        let mut z = 0u64;
        let mut s = self.support_mask();
        while s != 0 {
            let q = s.trailing_zeros() as usize;
            let t = perm[q];
            x |= (self.x >> q & 1) << t;
            z |= (self.z >> q & 1) << t;
            s &= s - 1;
        }
        PauliString { n: self.n, x, z }
    }
}

impl Ord for PauliString {
    /// Canonical order: qubit count, weight, then x mask, then z mask.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.z.cmp(&other.z))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    /// `Z1*Z2` style, 1-based; identity renders as `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let mut first = true;
        for (q, a) in self.factors() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}{}", a.letter(), q + 1)?;
        }
        Ok(())
    }
}
