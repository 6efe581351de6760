//! Quantum thermal machines: stroke and continuous engines, open-system
//! dynamics, fluctuation statistics, thermoelectric transport and
//! information-thermodynamic bounds.
//!
//! Units throughout: `ħ = k_B = 1`. The thermoelectric module additionally
//! sets `e = h = 1` (see its module docs).

// `!(x > 0.0)` is used on purpose: it rejects NaN along with the bad range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baths;
pub mod continuous;
pub mod cycles;
pub mod error;
pub mod fluctuations;
pub mod hilbert;
pub mod information;
pub mod lindblad;
pub mod nonthermal;
pub mod numerics;
pub mod thermoelectric;

pub use error::{Error, Result};
pub use baths::{BathSpec, SpectralDensity};
pub use cycles::{CycleResult, Mode};
pub use fluctuations::{JointDistribution, OutcomeDistribution, StrokeProtocol};
pub use hilbert::{DensityMatrix, HilbertFactorization, Operator, C64};
pub use information::{Bits, InfoUnits, Nats};
pub use lindblad::{LiouvillianModel, ThermalDissipator};
pub use thermoelectric::{LeadSpec, TransmissionFunction};
