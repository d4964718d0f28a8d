use crate::error::{invalid, Result};
use crate::quantum::{CompositeSpace, PureState, SubsystemSpec};

/// `n` wells, each holding a qubit ion and a centre-of-mass mode, laid out as
/// `(qubit_1, cm_1, qubit_2, cm_2, ...)`. Qubit basis `(|down>, |up>)`.
///
/// Wells are numbered from 1.
#[derive(Clone, Debug, PartialEq)]
pub struct WellRegister {
    wells: usize,
    truncation: usize,
    space: CompositeSpace,
}

impl WellRegister {
    pub fn new(wells: usize, truncation: usize) -> Result<Self> {
        if wells < 2 {
            return Err(invalid("wells", format!("need at least 2 wells, got {wells}")));
        }
        if truncation < 2 {
            return Err(invalid("truncation", format!("need at least 2 Fock levels, got {truncation}")));
        }
        let mut factors = Vec::with_capacity(2 * wells);
        for j in 1..=wells {
            factors.push(SubsystemSpec::two_level(format!("qubit{j}")));
            factors.push(SubsystemSpec::mode(format!("cm{j}"), truncation)?);
        }
        Ok(Self { wells, truncation, space: CompositeSpace::new(factors)? })
    }

    pub fn wells(&self) -> usize {
        self.wells
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total_dim()
    }

    fn check_well(&self, well: usize) -> Result<()> {
        if well == 0 || well > self.wells {
            return Err(invalid("well", format!("wells are numbered 1..={}, got {well}", self.wells)));
        }
        Ok(())
    }

    /// Factor index of the qubit in `well`.
    pub fn qubit(&self, well: usize) -> Result<usize> {
        self.check_well(well)?;
        Ok(2 * (well - 1))
    }

    /// Factor index of the CM mode in `well`.
    pub fn cm(&self, well: usize) -> Result<usize> {
        self.check_well(well)?;
        Ok(2 * (well - 1) + 1)
    }

    /// Digits for qubit values `bits` (0 = down, 1 = up) and CM occupations
    /// `phonons`, both given per well.
    pub fn digits(&self, bits: &[usize], phonons: &[usize]) -> Result<Vec<usize>> {
        if bits.len() != self.wells || phonons.len() != self.wells {
            return Err(invalid("digits", format!("need {} entries per list", self.wells)));
        }
        Ok(bits.iter().zip(phonons).flat_map(|(&b, &p)| [b, p]).collect())
    }

    pub fn basis_state(&self, bits: &[usize], phonons: &[usize]) -> Result<PureState> {
        PureState::basis(&self.space, &self.digits(bits, phonons)?)
    }

    /// Qubit values of computational basis index `k`, qubit 1 most significant.
    pub fn computational_bits(&self, k: usize) -> Vec<usize> {
        (0..self.wells).map(|j| (k >> (self.wells - 1 - j)) & 1).collect()
    }

    /// Full-space indices of the `2^n` qubit configurations with every CM in
    /// vacuum, ordered as `computational_bits`.
    pub fn computational_indices(&self) -> Vec<usize> {
        let vacuum = vec![0; self.wells];
        (0..1usize << self.wells)
            .map(|k| {
                let digits = self.digits(&self.computational_bits(k), &vacuum).expect("well count");
                self.space.index_of(&digits).expect("digits in range")
            })
            .collect()
    }
}
