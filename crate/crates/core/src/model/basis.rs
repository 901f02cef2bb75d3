//! Basis descriptors and state vectors.
//!
//! Two bases are supported:
//!
//! * **Single excitation** — dimension `N + 2`, ordered
//!   `[cw, ccw, spin_0, ..., spin_{N-1}]`.
//! * **Truncated Fock** — dimension `(M+1)^2 * 2^N` for photon occupations
//!   `0..=M` per mode. Indices are lexicographic with the cw occupation
//!   outermost, then the ccw occupation, then the spin bitstring with
//!   `spin_0` as the most significant bit:
//!   `index = (n_cw * (M+1) + n_ccw) * 2^N + bits`.
//!
//! Serialized states are portable across implementations as long as this
//! ordering is preserved.

use nalgebra::{Complex, DVector};

use crate::error::{Error, Result};
use crate::scalar::{real, to_f64, Scalar};

/// Dimension guard for truncated Fock bases.
pub const DEFAULT_DIMENSION_LIMIT: usize = 1 << 20;

/// Identifies a Hilbert-space basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisSpec {
    SingleExcitation { spins: usize },
    Fock { spins: usize, photon_cutoff: usize },
}

impl BasisSpec {
    pub fn single_excitation(spins: usize) -> Self {
        Self::SingleExcitation { spins }
    }

    /// Truncated Fock basis with per-mode occupation cutoff `photon_cutoff`.
    pub fn fock(spins: usize, photon_cutoff: usize) -> Result<Self> {
        Self::fock_with_limit(spins, photon_cutoff, DEFAULT_DIMENSION_LIMIT)
    }

    /// Fock basis with an explicit dimension limit.
    pub fn fock_with_limit(spins: usize, photon_cutoff: usize, limit: usize) -> Result<Self> {
        if photon_cutoff < 1 {
            return Err(Error::BasisTooSmall { needed: 1, cutoff: photon_cutoff });
        }
        let levels = photon_cutoff + 1;
        let dim = levels
            .checked_mul(levels)
            .and_then(|p| 1usize.checked_shl(spins as u32).and_then(|s| p.checked_mul(s)))
            .unwrap_or(usize::MAX);
        if dim > limit {
            return Err(Error::BasisTooLarge { dim, limit });
        }
        Ok(Self::Fock { spins, photon_cutoff })
    }

    /// Fock basis at the recommended cutoff `M = 2N`.
    pub fn fock_default(spins: usize) -> Result<Self> {
        Self::fock(spins, 2 * spins)
    }

    pub fn spins(&self) -> usize {
        match *self {
            Self::SingleExcitation { spins } | Self::Fock { spins, .. } => spins,
        }
    }

    pub fn photon_cutoff(&self) -> Option<usize> {
        match *self {
            Self::SingleExcitation { .. } => None,
            Self::Fock { photon_cutoff, .. } => Some(photon_cutoff),
        }
    }

    pub fn dimension(&self) -> usize {
        match *self {
            Self::SingleExcitation { spins } => spins + 2,
            Self::Fock { spins, photon_cutoff } => {
                (photon_cutoff + 1) * (photon_cutoff + 1) * (1 << spins)
            }
        }
    }

    /// Fock index of `(n_cw, n_ccw, spin bits)`.
    ///
    /// `bits` uses `spin_0` as the most significant of `spins` bits.
    pub fn fock_index(&self, n_cw: usize, n_ccw: usize, bits: usize) -> usize {
        let Self::Fock { spins, photon_cutoff } = *self else {
            panic!("fock_index on a non-Fock basis");
        };
        debug_assert!(n_cw <= photon_cutoff && n_ccw <= photon_cutoff);
        debug_assert!(bits < (1 << spins));
        (n_cw * (photon_cutoff + 1) + n_ccw) * (1 << spins) + bits
    }

    /// Inverse of [`BasisSpec::fock_index`].
    pub fn fock_unpack(&self, index: usize) -> (usize, usize, usize) {
        let Self::Fock { spins, photon_cutoff } = *self else {
            panic!("fock_unpack on a non-Fock basis");
        };
        let bits = index & ((1 << spins) - 1);
        let photons = index >> spins;
        (photons / (photon_cutoff + 1), photons % (photon_cutoff + 1), bits)
    }

    /// Bit value of spin `m` within a spin bitstring (`spin_0` most
    /// significant).
    pub fn spin_bit(&self, bits: usize, spin: usize) -> bool {
        let n = self.spins();
        debug_assert!(spin < n);
        bits >> (n - 1 - spin) & 1 == 1
    }

    /// Total excitation number carried by a basis index.
    pub fn excitation_number(&self, index: usize) -> usize {
        match *self {
            Self::SingleExcitation { .. } => 1,
            Self::Fock { .. } => {
                let (n_cw, n_ccw, bits) = self.fock_unpack(index);
                n_cw + n_ccw + bits.count_ones() as usize
            }
        }
    }

    /// Fock indices of the one-excitation sector, ordered like the
    /// single-excitation basis: `[cw, ccw, spin_0, ..., spin_{N-1}]`.
    pub fn one_excitation_indices(&self) -> Vec<usize> {
        let Self::Fock { spins, .. } = *self else {
            panic!("one_excitation_indices on a non-Fock basis");
        };
        let mut indices = Vec::with_capacity(spins + 2);
        indices.push(self.fock_index(1, 0, 0));
        indices.push(self.fock_index(0, 1, 0));
        for m in 0..spins {
            indices.push(self.fock_index(0, 0, 1 << (spins - 1 - m)));
        }
        indices
    }
}

/// A product configuration: photon occupations plus a set of excited spins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExcitationPattern {
    pub cw_photons: usize,
    pub ccw_photons: usize,
    pub excited_spins: Vec<usize>,
}

impl ExcitationPattern {
    pub fn vacuum() -> Self {
        Self { cw_photons: 0, ccw_photons: 0, excited_spins: Vec::new() }
    }

    /// One excitation on spin `m`.
    pub fn spin(m: usize) -> Self {
        Self { cw_photons: 0, ccw_photons: 0, excited_spins: vec![m] }
    }

    /// Excitations on several distinct spins.
    pub fn spins(ms: &[usize]) -> Self {
        Self { cw_photons: 0, ccw_photons: 0, excited_spins: ms.to_vec() }
    }

    /// `n` photons in the cw mode.
    pub fn cw(n: usize) -> Self {
        Self { cw_photons: n, ccw_photons: 0, excited_spins: Vec::new() }
    }

    /// `n` photons in the ccw mode.
    pub fn ccw(n: usize) -> Self {
        Self { cw_photons: 0, ccw_photons: n, excited_spins: Vec::new() }
    }

    pub fn total_excitations(&self) -> usize {
        self.cw_photons + self.ccw_photons + self.excited_spins.len()
    }

    fn validate_spins(&self, count: usize) -> Result<()> {
        let mut seen = vec![false; count];
        for &m in &self.excited_spins {
            if m >= count {
                return Err(Error::SpinIndex { index: m, count });
            }
            if seen[m] {
                return Err(Error::InvalidPattern(format!("spin {m} listed twice")));
            }
            seen[m] = true;
        }
        Ok(())
    }

    /// Basis index of this pattern, checking it fits the basis.
    pub fn index_in(&self, basis: &BasisSpec) -> Result<usize> {
        self.validate_spins(basis.spins())?;
        match *basis {
            BasisSpec::SingleExcitation { spins } => {
                if self.total_excitations() != 1 {
                    return Err(Error::InvalidPattern(format!(
                        "single-excitation basis needs exactly one excitation, got {}",
                        self.total_excitations()
                    )));
                }
                if self.cw_photons == 1 {
                    Ok(0)
                } else if self.ccw_photons == 1 {
                    Ok(1)
                } else {
                    let _ = spins;
                    Ok(2 + self.excited_spins[0])
                }
            }
            BasisSpec::Fock { spins, photon_cutoff } => {
                if self.cw_photons > photon_cutoff || self.ccw_photons > photon_cutoff {
                    return Err(Error::BasisTooSmall {
                        needed: self.cw_photons.max(self.ccw_photons),
                        cutoff: photon_cutoff,
                    });
                }
                let mut bits = 0usize;
                for &m in &self.excited_spins {
                    bits |= 1 << (spins - 1 - m);
                }
                Ok(basis.fock_index(self.cw_photons, self.ccw_photons, bits))
            }
        }
    }
}

/// Complex amplitude vector tagged with its basis.
///
/// The norm is forced to one (within the construction tolerance) when a
/// state is built.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState<T: Scalar> {
    amplitudes: DVector<Complex<T>>,
    basis: BasisSpec,
}

impl<T: Scalar> QuantumState<T> {
    /// Wrap an amplitude vector; it must already be normalized.
    pub fn new(amplitudes: DVector<Complex<T>>, basis: BasisSpec) -> Result<Self> {
        if amplitudes.len() != basis.dimension() {
            return Err(Error::BasisMismatch(format!(
                "amplitude vector length {} does not match basis dimension {}",
                amplitudes.len(),
                basis.dimension()
            )));
        }
        let norm = amplitudes.norm();
        if (norm - T::one()).abs() > real(T::STATE_NORM_TOL) {
            return Err(Error::Normalization { norm: to_f64(norm) });
        }
        Ok(Self { amplitudes, basis })
    }

    /// Basis state for a single excitation pattern.
    pub fn from_pattern(basis: BasisSpec, pattern: &ExcitationPattern) -> Result<Self> {
        let index = pattern.index_in(&basis)?;
        let mut amplitudes = DVector::zeros(basis.dimension());
        amplitudes[index] = Complex::new(T::one(), T::zero());
        Ok(Self { amplitudes, basis })
    }

    /// Normalized superposition of excitation patterns.
    pub fn superposition(
        basis: BasisSpec,
        components: &[(Complex<T>, ExcitationPattern)],
    ) -> Result<Self> {
        let mut amplitudes = DVector::zeros(basis.dimension());
        for (coeff, pattern) in components {
            amplitudes[pattern.index_in(&basis)?] += *coeff;
        }
        let norm = amplitudes.norm();
        if norm <= real(T::STATE_NORM_TOL) {
            return Err(Error::Normalization { norm: to_f64(norm) });
        }
        amplitudes /= Complex::new(norm, T::zero());
        Ok(Self { amplitudes, basis })
    }

    pub fn amplitudes(&self) -> &DVector<Complex<T>> {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex<T> {
        self.amplitudes[index]
    }

    pub fn basis(&self) -> &BasisSpec {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> T {
        self.amplitudes.norm()
    }

    /// `<self|other>`, requiring matching bases.
    pub fn overlap(&self, other: &Self) -> Result<Complex<T>> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch(format!(
                "{:?} vs {:?}",
                self.basis, other.basis
            )));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    pub(crate) fn from_raw(amplitudes: DVector<Complex<T>>, basis: BasisSpec) -> Self {
        Self { amplitudes, basis }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fock_dimension_matches_counting() {
        let b = BasisSpec::fock(2, 2).unwrap();
        assert_eq!(b.dimension(), 36); // (M+1)^2 * 2^N = 9 * 4
        assert_eq!(BasisSpec::single_excitation(4).dimension(), 6);
    }

    #[test]
    fn fock_index_roundtrip_and_ordering() {
        let b = BasisSpec::fock(3, 2).unwrap();
        // cw outermost, then ccw, then spin bits with spin_0 most significant
        assert_eq!(b.fock_index(0, 0, 0), 0);
        assert_eq!(b.fock_index(0, 0, 1), 1);
        assert_eq!(b.fock_index(0, 1, 0), 8);
        assert_eq!(b.fock_index(1, 0, 0), 24);
        for idx in 0..b.dimension() {
            let (ncw, nccw, bits) = b.fock_unpack(idx);
            assert_eq!(b.fock_index(ncw, nccw, bits), idx);
        }
        // spin_0 most significant: for N=3 its bit value is 4
        assert!(b.spin_bit(0b100, 0));
        assert!(!b.spin_bit(0b100, 2));
    }

    #[test]
    fn one_excitation_sector_ordering() {
        let b = BasisSpec::fock(2, 1).unwrap();
        let idx = b.one_excitation_indices();
        assert_eq!(idx.len(), 4);
        assert_eq!(b.fock_unpack(idx[0]), (1, 0, 0));
        assert_eq!(b.fock_unpack(idx[1]), (0, 1, 0));
        assert_eq!(b.fock_unpack(idx[2]), (0, 0, 0b10)); // spin_0
        assert_eq!(b.fock_unpack(idx[3]), (0, 0, 0b01)); // spin_1
    }

    #[test]
    fn dimension_guard() {
        assert!(matches!(
            BasisSpec::fock(30, 2),
            Err(Error::BasisTooLarge { .. })
        ));
        assert!(BasisSpec::fock_with_limit(2, 2, 36).is_ok());
        assert!(BasisSpec::fock_with_limit(2, 2, 35).is_err());
        assert!(matches!(BasisSpec::fock(2, 0), Err(Error::BasisTooSmall { .. })));
    }

    #[test]
    fn patterns_validate() {
        let b = BasisSpec::single_excitation(4);
        assert_eq!(ExcitationPattern::cw(1).index_in(&b).unwrap(), 0);
        assert_eq!(ExcitationPattern::ccw(1).index_in(&b).unwrap(), 1);
        assert_eq!(ExcitationPattern::spin(2).index_in(&b).unwrap(), 4);
        assert!(ExcitationPattern::spins(&[0, 1]).index_in(&b).is_err());
        assert!(ExcitationPattern::spin(7).index_in(&b).is_err());
        assert!(ExcitationPattern::spins(&[1, 1])
            .index_in(&BasisSpec::fock(4, 2).unwrap())
            .is_err());
    }

    #[test]
    fn state_construction_enforces_norm() {
        let b = BasisSpec::single_excitation(1);
        let bad = DVector::from_vec(vec![Complex::new(0.5f64, 0.0); 3]);
        assert!(matches!(
            QuantumState::new(bad, b),
            Err(Error::Normalization { .. })
        ));
        let s: QuantumState<f64> = QuantumState::superposition(
            b,
            &[
                (Complex::new(0.6, 0.0), ExcitationPattern::spin(0)),
                (Complex::new(0.0, 0.8), ExcitationPattern::cw(1)),
            ],
        )
        .unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        assert!((s.amplitude(2).re - 0.6).abs() < 1e-15);
    }

    #[test]
    fn overlap_requires_same_basis() {
        let a: QuantumState<f64> = QuantumState::from_pattern(
            BasisSpec::single_excitation(2),
            &ExcitationPattern::spin(0),
        )
        .unwrap();
        let b = QuantumState::from_pattern(
            BasisSpec::fock(2, 1).unwrap(),
            &ExcitationPattern::spin(0),
        )
        .unwrap();
        assert!(matches!(a.overlap(&b), Err(Error::BasisMismatch(_))));
        assert_eq!(a.overlap(&a).unwrap().re, 1.0);
    }
}
