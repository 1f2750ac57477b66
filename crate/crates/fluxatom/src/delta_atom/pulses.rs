//! Pulse schedules driving the three-level atom.
//!
//! Each of the three transitions (1<-0, 2<-1, 2<-0) is addressed by one
//! pulse with a complex Rabi envelope
//!
//! ```text
//! Omega_mn(t) = factor * Omega_0 * exp(i phase - (t - center)^2 / width^2)
//! ```
//!
//! Times are dimensionless (units of the common pulse width tau) and Rabi
//! scales are in units of 1/tau. The derived quantities controlling the
//! adiabatic eigensystem are
//!
//! ```text
//! omega'   = d20 - d10 - d21          (detuning combination)
//! phi_tot  = phase20 - phase10 - phase21
//! beta(t)  = omega' t + phi_tot
//! ```
//!
//! chosen so that `det H = 2 A10 A21 A20 cos(beta)` holds identically for
//! the rotating-wave Hamiltonian built from this schedule (A's are the
//! envelope moduli). That identity is what makes `beta` the one phase that
//! the instantaneous spectrum can depend on.

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Envelope shape. Constant pulses hold `factor * Omega_0` forever and are
/// mainly useful for stationary-frame checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PulseShape {
    #[default]
    Gaussian,
    Constant,
}

/// One drive pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSpec {
    /// Peak amplitude as a multiple of the schedule's `omega0`.
    pub amplitude_factor: f64,
    /// Constant phase in radians.
    pub phase: f64,
    /// Center time in units of tau.
    pub center: f64,
    /// Envelope width in units of tau (1.0 for the common-width schedules).
    pub width: f64,
    pub shape: PulseShape,
}

impl PulseSpec {
    pub fn gaussian(amplitude_factor: f64, phase: f64, center: f64) -> Self {
        Self {
            amplitude_factor,
            phase,
            center,
            width: 1.0,
            shape: PulseShape::Gaussian,
        }
    }

    pub fn validate(&self, name: &str) -> Result<()> {
        if !(self.amplitude_factor >= 0.0) {
            return Err(Error::config(
                format!("{name}.amplitude_factor"),
                format!("must be non-negative, got {}", self.amplitude_factor),
            ));
        }
        if !(self.width > 0.0) {
            return Err(Error::config(
                format!("{name}.width"),
                format!("must be positive, got {}", self.width),
            ));
        }
        for (field, v) in [("phase", self.phase), ("center", self.center)] {
            if !v.is_finite() {
                return Err(Error::config(format!("{name}.{field}"), "must be finite"));
            }
        }
        Ok(())
    }

    /// Envelope modulus at `t`, as a multiple of `omega0`.
    pub fn envelope(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Gaussian => {
                let u = (t - self.center) / self.width;
                self.amplitude_factor * (-u * u).exp()
            }
            PulseShape::Constant => self.amplitude_factor,
        }
    }

    /// Time derivative of the envelope modulus, as a multiple of `omega0`.
    pub fn envelope_derivative(&self, t: f64) -> f64 {
        match self.shape {
            PulseShape::Gaussian => {
                -2.0 * (t - self.center) / (self.width * self.width) * self.envelope(t)
            }
            PulseShape::Constant => 0.0,
        }
    }
}

/// Carrier detunings `d_mn` for the three drives, in units of 1/tau.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Detunings {
    pub d10: f64,
    pub d21: f64,
    pub d20: f64,
}

/// Complex Rabi values of the three pulses at one instant.
#[derive(Clone, Copy, Debug)]
pub struct RabiValues {
    pub omega_10: C64,
    pub omega_21: C64,
    pub omega_20: C64,
}

/// Full three-pulse drive schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PulseSchedule {
    pub pulse_10: PulseSpec,
    pub pulse_21: PulseSpec,
    pub pulse_20: PulseSpec,
    /// Rabi scale Omega_0 in units of 1/tau.
    pub omega0: f64,
    pub detunings: Detunings,
}

impl PulseSchedule {
    pub fn new(
        pulse_10: PulseSpec,
        pulse_21: PulseSpec,
        pulse_20: PulseSpec,
        omega0: f64,
        detunings: Detunings,
    ) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::config(
                "omega0",
                format!("must be positive, got {omega0}"),
            ));
        }
        pulse_10.validate("pulse_10")?;
        pulse_21.validate("pulse_21")?;
        pulse_20.validate("pulse_20")?;
        Ok(Self {
            pulse_10,
            pulse_21,
            pulse_20,
            omega0,
            detunings,
        })
    }

    /// Staggered resonant schedule with centers `(c21, c10, c20)` on the
    /// (2<-1, 1<-0, 2<-0) pulses, peak factors (1.0, 0.9, 0.85), common
    /// width, zero phases and zero detunings.
    pub fn staggered(omega0: f64, c21: f64, c10: f64, c20: f64) -> Result<Self> {
        Self::new(
            PulseSpec::gaussian(0.9, 0.0, c10),
            PulseSpec::gaussian(1.0, 0.0, c21),
            PulseSpec::gaussian(0.85, 0.0, c20),
            omega0,
            Detunings::default(),
        )
    }

    /// Complex Rabi values `(Omega_10, Omega_21, Omega_20)` at time `t`:
    /// Gaussian moduli, constant pulse phases. Detuning factors are applied
    /// by the Hamiltonian assembly, not here.
    pub fn rabi(&self, t: f64) -> RabiValues {
        let v = |p: &PulseSpec| C64::from_polar(self.omega0 * p.envelope(t), p.phase);
        RabiValues {
            omega_10: v(&self.pulse_10),
            omega_21: v(&self.pulse_21),
            omega_20: v(&self.pulse_20),
        }
    }

    /// Envelope moduli `(A10, A21, A20)` at `t`, in units of 1/tau.
    pub fn moduli(&self, t: f64) -> [f64; 3] {
        [
            self.omega0 * self.pulse_10.envelope(t),
            self.omega0 * self.pulse_21.envelope(t),
            self.omega0 * self.pulse_20.envelope(t),
        ]
    }

    /// Time derivatives of the envelope moduli.
    pub fn moduli_derivatives(&self, t: f64) -> [f64; 3] {
        [
            self.omega0 * self.pulse_10.envelope_derivative(t),
            self.omega0 * self.pulse_21.envelope_derivative(t),
            self.omega0 * self.pulse_20.envelope_derivative(t),
        ]
    }

    /// Detuning combination `omega' = d20 - d10 - d21`.
    pub fn omega_prime(&self) -> f64 {
        self.detunings.d20 - self.detunings.d10 - self.detunings.d21
    }

    /// Total pulse phase `phi_tot = phase20 - phase10 - phase21`.
    pub fn total_phase(&self) -> f64 {
        self.pulse_20.phase - self.pulse_10.phase - self.pulse_21.phase
    }

    /// `beta(t) = omega' t + phi_tot`, wrapped into `(-pi, pi]`.
    pub fn beta(&self, t: f64) -> f64 {
        wrap_angle(self.omega_prime() * t + self.total_phase())
    }

    /// Copy with the 2<-0 pulse phase adjusted so that `total_phase()`
    /// equals `phi` (the other phases are held).
    pub fn with_total_phase(&self, phi: f64) -> Self {
        let mut s = *self;
        s.pulse_20.phase = phi + self.pulse_10.phase + self.pulse_21.phase;
        s
    }

    /// Earliest and latest pulse centers.
    pub fn center_span(&self) -> (f64, f64) {
        let cs = [
            self.pulse_10.center,
            self.pulse_21.center,
            self.pulse_20.center,
        ];
        (
            cs.iter().cloned().fold(f64::INFINITY, f64::min),
            cs.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let r = x.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}
