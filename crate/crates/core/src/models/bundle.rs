use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{FockBasis, OperatorMatrix, C64};

/// Scalar time dependence of a drive term, with bounds used to pick a safe
/// integration step.
#[derive(Clone)]
pub struct Envelope {
    f: Arc<dyn Fn(f64) -> C64 + Send + Sync>,
    /// Upper bound on `|f(t)|`.
    pub max_abs: f64,
    /// Upper bound on the angular frequencies present in `f`.
    pub max_freq: f64,
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope").field("max_abs", &self.max_abs).field("max_freq", &self.max_freq).finish()
    }
}

impl Envelope {
    pub fn new(f: impl Fn(f64) -> C64 + Send + Sync + 'static, max_abs: f64, max_freq: f64) -> Self {
        Self { f: Arc::new(f), max_abs, max_freq }
    }

    pub fn constant(c: C64) -> Self {
        Self::new(move |_| c, c.norm(), 0.0)
    }

    /// `offset + amp cos(omega t + phase)`.
    pub fn cosine(offset: f64, amp: f64, omega: f64, phase: f64) -> Self {
        Self::new(
            move |t| C64::new(offset + amp * (omega * t + phase).cos(), 0.0),
            offset.abs() + amp.abs(),
            omega.abs(),
        )
    }

    #[inline]
    pub fn eval(&self, t: f64) -> C64 {
        (self.f)(t)
    }

    /// `c * f(t) * exp(i omega t)`.
    pub fn rotate(&self, c: C64, omega: f64) -> Self {
        let f = self.f.clone();
        Self::new(
            move |t| c * f(t) * C64::from_polar(1.0, omega * t),
            c.norm() * self.max_abs,
            self.max_freq + omega.abs(),
        )
    }
}

/// A time-dependent term `env(t) * op`, plus its adjoint when `add_adjoint`.
#[derive(Debug, Clone)]
pub struct Drive {
    pub name: String,
    pub op: OperatorMatrix,
    pub envelope: Envelope,
    pub add_adjoint: bool,
}

/// A resonator coupling `c(t) * i C (a^dag - a)` with Hermitian `C` acting
/// only on non-resonator sectors.
#[derive(Debug, Clone)]
pub struct ResonatorCoupling {
    pub name: String,
    pub op: OperatorMatrix,
    /// `None` for a static coupling with `c = 1`.
    pub envelope: Option<Envelope>,
}

/// Resonator-related pieces of a model, kept separate so the dynamics can be
/// written in a frame rotating with the resonator.
#[derive(Debug, Clone)]
pub struct Resonator {
    pub omega_r: f64,
    pub a: OperatorMatrix,
    pub couplings: Vec<ResonatorCoupling>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Frame {
    Lab,
    /// Frame rotating at the given angular frequency on the resonator only.
    Rotating(f64),
}

/// Static part plus drives, as seen in some frame.
#[derive(Debug, Clone)]
pub struct Generator {
    pub h_static: OperatorMatrix,
    pub drives: Vec<Drive>,
}

impl Generator {
    /// Full Hamiltonian at time `t`.
    pub fn at(&self, t: f64) -> OperatorMatrix {
        self.drives.iter().fold(self.h_static.clone(), |acc, d| {
            let term = d.op.scale(d.envelope.eval(t));
            let acc = &acc + &term;
            if d.add_adjoint {
                &acc + &term.adjoint()
            } else {
                acc
            }
        })
    }

    /// Bound on the largest frequency scale: spectral spread of the static
    /// part plus drive amplitudes and drive frequencies.
    pub fn omega_max(&self) -> f64 {
        let mut w = self.h_static.spectral_spread_bound();
        for d in &self.drives {
            let mult = if d.add_adjoint { 2.0 } else { 1.0 };
            w += mult * d.envelope.max_abs * d.op.row_sum_bound() + d.envelope.max_freq;
        }
        w
    }
}

/// A model Hamiltonian together with its observables.
#[derive(Debug, Clone)]
pub struct ModelBundle {
    pub basis: Arc<FockBasis>,
    /// Time-independent lab-frame Hamiltonian.
    pub h_static: OperatorMatrix,
    /// Non-resonator drives (parameter modulations).
    pub drives: Vec<Drive>,
    /// System Hamiltonian without the resonator energy and couplings.
    pub h_system: OperatorMatrix,
    pub resonator: Option<Resonator>,
    pub observables: BTreeMap<String, OperatorMatrix>,
    /// Name of the observable that the dynamics must conserve.
    pub qnd_observable: Option<String>,
    /// Basis states whose population signals truncation error.
    pub edge_states: Vec<usize>,
}

impl ModelBundle {
    pub fn observable(&self, name: &str) -> Option<&OperatorMatrix> {
        self.observables.get(name)
    }

    /// Hamiltonian generator in the requested frame.
    ///
    /// In a frame rotating at `w`, `a -> a e^{-i w t}` exactly; the resonator
    /// energy becomes `(omega_r - w) a^dag a` and each coupling term picks up
    /// the phase `e^{i w t}` on its `a^dag` part.
    pub fn generator(&self, frame: Frame) -> Generator {
        let Some(res) = &self.resonator else {
            return Generator { h_static: self.h_system.clone(), drives: self.drives.clone() };
        };
        let w = match frame {
            Frame::Lab => 0.0,
            Frame::Rotating(w) => w,
        };
        let ad = res.a.adjoint();
        let n = &ad * &res.a;
        let mut h_static = &self.h_system + &n.scale_re(res.omega_r - w);
        let mut drives = self.drives.clone();
        let i = C64::new(0.0, 1.0);
        for c in &res.couplings {
            let cad = &c.op * &ad;
            match (&c.envelope, w == 0.0) {
                (None, true) => {
                    let term = cad.scale(i);
                    h_static = &h_static + &(&term + &term.adjoint());
                }
                (None, false) => drives.push(Drive {
                    name: c.name.clone(),
                    op: cad,
                    envelope: Envelope::constant(C64::new(1.0, 0.0)).rotate(i, w),
                    add_adjoint: true,
                }),
                (Some(env), _) => drives.push(Drive {
                    name: c.name.clone(),
                    op: cad,
                    envelope: env.rotate(i, w),
                    add_adjoint: true,
                }),
            }
        }
        Generator { h_static, drives }
    }
}
