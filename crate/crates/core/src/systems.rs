//! The benchmark systems: the standard map, a two-dimensional torus map,
//! the forced van der Pol oscillator and the planar circular restricted
//! three-body problem.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;

/// A map of a two-dimensional phase space.
pub trait PlanarMap<T: Real> {
    fn step(&self, s: [T; 2]) -> [T; 2];
    /// Derivative of one step, before any modular reduction.
    fn jacobian(&self, s: [T; 2]) -> [[T; 2]; 2];
}

/// Right-hand side of `x' = f(t, x)`.
pub trait VectorField<T: Real, const D: usize> {
    fn eval(&self, t: T, x: &[T; D]) -> Result<[T; D]>;
}

impl<T: Real, const D: usize, F> VectorField<T, D> for F
where
    F: Fn(T, &[T; D]) -> Result<[T; D]>,
{
    fn eval(&self, t: T, x: &[T; D]) -> Result<[T; D]> {
        self(t, x)
    }
}

/// `x mod m` in `[0, m)`.
pub fn reduce_mod<T: Real>(x: T, m: T) -> T {
    let r = x - m * (x / m).floor();
    if r < T::zero() {
        r + m
    } else if r >= m {
        r - m
    } else {
        r
    }
}

/// `x mod 2π` shifted into `[-π, π)`.
pub fn wrap_centered<T: Real>(x: T) -> T {
    reduce_mod(x + T::pi(), T::two_pi()) - T::pi()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Standard,
    Torus2d,
    Vdp,
    ThreeBody,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeKind {
    Discrete,
    Continuous,
}

impl SystemKind {
    pub fn name(self) -> &'static str {
        match self {
            SystemKind::Standard => "standard",
            SystemKind::Torus2d => "torus2d",
            SystemKind::Vdp => "vdp",
            SystemKind::ThreeBody => "threebody",
        }
    }

    pub fn state_dim(self) -> usize {
        match self {
            SystemKind::ThreeBody => 4,
            _ => 2,
        }
    }

    pub fn time_kind(self) -> TimeKind {
        match self {
            SystemKind::Standard | SystemKind::Torus2d => TimeKind::Discrete,
            SystemKind::Vdp | SystemKind::ThreeBody => TimeKind::Continuous,
        }
    }
}

impl fmt::Display for SystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "standard" | "standardmap" | "stdmap" => Ok(SystemKind::Standard),
            "torus2d" | "torus" | "torusmap" => Ok(SystemKind::Torus2d),
            "vdp" | "vanderpol" => Ok(SystemKind::Vdp),
            "threebody" | "3body" | "cr3bp" => Ok(SystemKind::ThreeBody),
            _ => Err(Error::InvalidInput(format!("unknown system {s:?}"))),
        }
    }
}

/// A configured system, for callers that pick the system at run time.
#[derive(Debug, Clone)]
pub enum SystemSpec<T> {
    Standard(StandardMap),
    Torus2d(TorusMap<T>),
    Vdp(VanDerPol<T>),
    ThreeBody(ThreeBody<T>),
}

impl<T: Real> SystemSpec<T> {
    pub fn kind(&self) -> SystemKind {
        match self {
            SystemSpec::Standard(_) => SystemKind::Standard,
            SystemSpec::Torus2d(_) => SystemKind::Torus2d,
            SystemSpec::Vdp(_) => SystemKind::Vdp,
            SystemSpec::ThreeBody(_) => SystemKind::ThreeBody,
        }
    }

    pub fn jacobian(&self, s: [T; 2]) -> Result<[[T; 2]; 2]> {
        match self {
            SystemSpec::Standard(m) => Ok(m.jacobian(s)),
            SystemSpec::Torus2d(m) => Ok(m.jacobian(s)),
            _ => Err(Error::Unsupported("a Jacobian (flows have none here)")),
        }
    }
}

/// Chirikov's standard map on `[0, 2π)²`:
/// `y' = y + sin x`, `x' = x + y'`.
#[derive(Debug, Clone, Copy, Default)]
pub struct StandardMap;

impl<T: Real> PlanarMap<T> for StandardMap {
    #[inline]
    fn step(&self, [x, y]: [T; 2]) -> [T; 2] {
        let y1 = y + x.sin();
        let x1 = x + y1;
        [reduce_mod(x1, T::two_pi()), reduce_mod(y1, T::two_pi())]
    }

    fn jacobian(&self, [x, _]: [T; 2]) -> [[T; 2]; 2] {
        let c = x.cos();
        [[T::one() + c, T::one()], [c, T::one()]]
    }
}

/// The `b_{1,2}` entry of the torus-map table, printed as "0504" in the
/// source; read as a decimal in (0,1) like its neighbours.
pub const TORUS_B12: &str = "0.504";

#[derive(Debug, Clone)]
pub struct TorusCoefficients<T> {
    pub epsilon: T,
    pub omega: [T; 2],
    pub a: [[T; 4]; 2],
    pub b: [[T; 4]; 2],
    pub r: [i64; 4],
    pub s: [i64; 4],
}

impl<T: Real> TorusCoefficients<T> {
    /// The reference coefficient table, parsed at the precision of `T`.
    pub fn table() -> Self {
        let p = |s: &str| T::parse(s).expect("table literal");
        let row = |v: [&str; 4]| [p(v[0]), p(v[1]), p(v[2]), p(v[3])];
        TorusCoefficients {
            epsilon: p("0.4234823"),
            omega: [
                p("0.71151134457776362264681206697006238"),
                p("0.87735009811261456100917086672849971"),
            ],
            a: [row(["-0.268", "-0.9106", "0.3", "-0.04"]), row(["0.08", "-0.56", "0.947", "-0.4003"])],
            b: [row(["0.985", TORUS_B12, "0.947", "0.2334"]), row(["0.99", "0.33", "0.29", "0.155"])],
            r: [1, 0, 1, 0],
            s: [0, 1, 1, -1],
        }
    }

    /// Pure rotation by `omega`.
    pub fn rigid(omega: [T; 2]) -> Self {
        TorusCoefficients {
            epsilon: T::zero(),
            omega,
            a: [[T::zero(); 4]; 2],
            b: [[T::zero(); 4]; 2],
            r: [0; 4],
            s: [0; 4],
        }
    }
}

/// `T_i = x_i + ω_i + (ε/2π) P_i(x, y) mod 1` with
/// `P_i = Σ_j a_ij sin 2π(r_j x + s_j y + b_ij)`.
#[derive(Debug, Clone)]
pub struct TorusMap<T> {
    pub coeffs: TorusCoefficients<T>,
}

impl<T: Real> TorusMap<T> {
    pub fn new(coeffs: TorusCoefficients<T>) -> Self {
        TorusMap { coeffs }
    }

    pub fn table() -> Self {
        Self::new(TorusCoefficients::table())
    }

    /// `(P_1, P_2)` at `(x, y)`.
    pub fn forcing(&self, x: T, y: T) -> [T; 2] {
        self.sum_terms(x, y, |s, _| s)
    }

    fn sum_terms(&self, x: T, y: T, f: impl Fn(T, T) -> T) -> [T; 2] {
        // f picks sin (the map) or cos (its derivative) of each phase
        let c = &self.coeffs;
        let mut out = [T::zero(); 2];
        for (i, o) in out.iter_mut().enumerate() {
            for j in 0..4 {
                if c.a[i][j] == T::zero() {
                    continue;
                }
                let alpha = x.mul_mod1(c.r[j]) + y.mul_mod1(c.s[j]) + c.b[i][j];
                let (sn, cs) = alpha.sincos_2pi();
                *o += c.a[i][j] * f(sn, cs);
            }
        }
        out
    }

    /// The lifted displacement `T(x) - x`, before reduction mod 1.
    pub fn increment(&self, [x, y]: [T; 2]) -> [T; 2] {
        let c = &self.coeffs;
        if c.epsilon == T::zero() {
            return c.omega;
        }
        let p = self.forcing(x, y);
        let k = c.epsilon / T::two_pi();
        [c.omega[0] + k * p[0], c.omega[1] + k * p[1]]
    }
}

impl<T: Real> PlanarMap<T> for TorusMap<T> {
    #[inline]
    fn step(&self, s: [T; 2]) -> [T; 2] {
        let d = self.increment(s);
        [(s[0] + d[0]).fract(), (s[1] + d[1]).fract()]
    }

    fn jacobian(&self, [x, y]: [T; 2]) -> [[T; 2]; 2] {
        let c = &self.coeffs;
        let mut jac = [[T::one(), T::zero()], [T::zero(), T::one()]];
        if c.epsilon == T::zero() {
            return jac;
        }
        // d/dx (ε/2π) a sin 2πα = ε a r cos 2πα
        for i in 0..2 {
            for j in 0..4 {
                let alpha = x.mul_mod1(c.r[j]) + y.mul_mod1(c.s[j]) + c.b[i][j];
                let cs = alpha.sincos_2pi().1;
                let g = c.epsilon * c.a[i][j] * cs;
                jac[i][0] += g * T::from_i64(c.r[j]);
                jac[i][1] += g * T::from_i64(c.s[j]);
            }
        }
        jac
    }
}

/// `x'' = 0.2(1 - x²)x' - 20x³ + F sin(0.83 t)`, state `(x, x')`.
#[derive(Debug, Clone, Copy)]
pub struct VanDerPol<T> {
    pub forcing: T,
    omega: T,
}

impl<T: Real> VanDerPol<T> {
    pub fn new(forcing: T) -> Self {
        VanDerPol { forcing, omega: T::parse("0.83").expect("literal") }
    }

    /// The forcing period `2π/0.83`.
    pub fn period(&self) -> T {
        T::two_pi() / self.omega
    }
}

impl<T: Real> VectorField<T, 2> for VanDerPol<T> {
    #[inline]
    fn eval(&self, t: T, &[x, v]: &[T; 2]) -> Result<[T; 2]> {
        let damping = T::from_f64(0.2) * (T::one() - x * x) * v;
        let a = damping - T::from_f64(20.0) * x * x * x + self.forcing * (self.omega * t).sin();
        Ok([v, a])
    }
}

/// Distance below which the three-body field reports a collision.
pub const COLLISION_DISTANCE: f64 = 1e-8;

/// Planar circular restricted three-body problem in the rotating frame.
/// The planet (mass `1-μ`) sits at `(-μ, 0)`, the moon (mass `μ`) at
/// `(1-μ, 0)`; state `(q1, q2, p1, p2)`.
#[derive(Debug, Clone, Copy)]
pub struct ThreeBody<T> {
    pub mu: T,
}

impl<T: Real> Default for ThreeBody<T> {
    fn default() -> Self {
        ThreeBody { mu: T::from_f64(0.1) }
    }
}

impl<T: Real> ThreeBody<T> {
    pub fn new(mu: T) -> Self {
        ThreeBody { mu }
    }

    /// `(d_planet, d_moon)`, checked against the collision limit.
    pub fn distances(&self, q1: T, q2: T) -> Result<(T, T)> {
        let one = T::one();
        let dp = ((q1 + self.mu).sqr() + q2 * q2).sqrt();
        let dm = ((q1 - one + self.mu).sqr() + q2 * q2).sqrt();
        let lim = T::from_f64(COLLISION_DISTANCE);
        if dp < lim || dm < lim {
            return Err(Error::Collision { distance: dp.min(dm).to_f64() });
        }
        Ok((dp, dm))
    }

    /// Gravitational potential `(1-μ)/d_planet + μ/d_moon`.
    pub fn potential(&self, q1: T, q2: T) -> Result<T> {
        let (dp, dm) = self.distances(q1, q2)?;
        Ok((T::one() - self.mu) / dp + self.mu / dm)
    }

    /// `H = (p1² + p2²)/2 + (q2 p1 - q1 p2) - V(q1, q2)`.
    pub fn hamiltonian(&self, s: &[T; 4]) -> Result<T> {
        let [q1, q2, p1, p2] = *s;
        let kinetic = (p1 * p1 + p2 * p2) / T::from_f64(2.0);
        let angular = q2 * p1 - q1 * p2;
        Ok(kinetic + angular - self.potential(q1, q2)?)
    }

    /// The state on the section `q2 = 0` with the given `(q1, p1)` and energy,
    /// taking the root with `dq2/dt > 0`.
    pub fn section_state(&self, q1: T, p1: T, energy: T) -> Result<[T; 4]> {
        let v = self.potential(q1, T::zero())?;
        let disc = q1 * q1 - p1 * p1 + T::from_f64(2.0) * (v + energy);
        if !(disc > T::zero()) {
            return Err(Error::InvalidInput(format!(
                "no section state at q1={}, p1={} for H={}",
                q1.to_f64(),
                p1.to_f64(),
                energy.to_f64()
            )));
        }
        Ok([q1, T::zero(), p1, q1 + disc.sqrt()])
    }
}

impl<T: Real> VectorField<T, 4> for ThreeBody<T> {
    #[inline]
    fn eval(&self, _t: T, &[q1, q2, p1, p2]: &[T; 4]) -> Result<[T; 4]> {
        let (dp, dm) = self.distances(q1, q2)?;
        let one = T::one();
        let gp = (one - self.mu) / (dp * dp * dp);
        let gm = self.mu / (dm * dm * dm);
        Ok([
            p1 + q2,
            p2 - q1,
            p2 - gm * (q1 - one + self.mu) - gp * (q1 + self.mu),
            -p1 - gm * q2 - gp * q2,
        ])
    }
}
