use std::fmt;

use crate::operators::ParamsF64;
use crate::polyops::{tau_images, Chart, Polynomial};
use crate::spectra::ground_state_at;

/// Scalar functions of the squared distances used by the checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestFunction {
    One,
    Tau1,
    Tau2,
    Tau1Squared,
    ExpTau1,
    /// Ground state of the exactly solvable problem at `ω = γ = 1`.
    GroundState,
}

const GROUND: ParamsF64 = ParamsF64 {
    omega: 1.0,
    gamma: 1.0,
    a: 0.0,
    n: 0.0,
};

impl TestFunction {
    pub const SUITE: [TestFunction; 6] = [
        TestFunction::One,
        TestFunction::Tau1,
        TestFunction::Tau2,
        TestFunction::Tau1Squared,
        TestFunction::ExpTau1,
        TestFunction::GroundState,
    ];

    pub fn id(self) -> &'static str {
        match self {
            TestFunction::One => "1",
            TestFunction::Tau1 => "tau1",
            TestFunction::Tau2 => "tau2",
            TestFunction::Tau1Squared => "tau1^2",
            TestFunction::ExpTau1 => "exp(-tau1)",
            TestFunction::GroundState => "psi0_es",
        }
    }

    pub fn eval(self, rho: &[f64; 3]) -> f64 {
        let [a, b, c] = *rho;
        let t1 = a + b + c;
        match self {
            TestFunction::One => 1.0,
            TestFunction::Tau1 => t1,
            TestFunction::Tau2 => a * b + a * c + b * c,
            TestFunction::Tau1Squared => t1 * t1,
            TestFunction::ExpTau1 => (-t1).exp(),
            TestFunction::GroundState => ground_state_at(&GROUND, 0.0, *rho),
        }
    }

    /// The function as a rho polynomial, when it is one.
    pub fn polynomial(self) -> Option<Polynomial> {
        let [t1, t2, _] = tau_images();
        match self {
            TestFunction::One => Some(Polynomial::one(Chart::Rho)),
            TestFunction::Tau1 => Some(t1),
            TestFunction::Tau2 => Some(t2),
            TestFunction::Tau1Squared => Some(t1.pow(2)),
            TestFunction::ExpTau1 | TestFunction::GroundState => None,
        }
    }

    pub fn is_polynomial(self) -> bool {
        self.polynomial().is_some()
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Radial profiles `ψ(w1, w2)` for the separation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WProfile {
    One,
    W2Squared,
    Gaussian,
}

impl WProfile {
    pub const ALL: [WProfile; 3] = [WProfile::One, WProfile::W2Squared, WProfile::Gaussian];

    pub fn id(self) -> &'static str {
        match self {
            WProfile::One => "1",
            WProfile::W2Squared => "w2^2",
            WProfile::Gaussian => "w2^2 exp(-w1/2)",
        }
    }

    pub fn eval(self, w1: f64, w2: f64) -> f64 {
        match self {
            WProfile::One => 1.0,
            WProfile::W2Squared => w2 * w2,
            WProfile::Gaussian => w2 * w2 * (-0.5 * w1).exp(),
        }
    }
}

impl fmt::Display for WProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}
