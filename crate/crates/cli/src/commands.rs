use wbavg::flows::{IntegratorConfig, Rk8, SectionConfig, SectionEvent};
use wbavg::fourier::{
    decay_fit, fit_exponential_decay, fourier_coeffs_1d, fourier_coeffs_2d, reconstruct_conjugacy, DecayFit,
};
use wbavg::lyapunov::lyapunov_exponents;
use wbavg::pipelines::{
    map_orbit, standard_map_circle, three_body_circle, three_body_section_points, torus_increments,
    torus_rotation, vdp_circle, vdp_stroboscopic, CircleOrbit, StroboscopicConfig,
};
use wbavg::rotation::{periodic_part, rotation_from_increments};
use wbavg::study::{convergence_study, fit_slope};
use wbavg::systems::{StandardMap, SystemKind, ThreeBody, TorusMap, VanDerPol};
use wbavg::{normalized_weights, Error, Real, Result};

use crate::config::{Command, RunConfig};
use crate::output::{Cell, Report};

pub fn execute<T: Real>(cfg: &RunConfig) -> Result<Report> {
    let run = Run::<T>::new(cfg)?;
    match cfg.command {
        Command::Orbit => run.orbit(),
        Command::Rotnum => run.rotnum(),
        Command::Fourier => run.fourier(),
        Command::Conjugacy => run.conjugacy(),
        Command::Lyapunov => run.lyapunov(),
        Command::Convergence => run.convergence(),
        Command::Section => run.section(),
    }
}

struct Run<'a, T> {
    cfg: &'a RunConfig,
    ic: Vec<T>,
    integrator: IntegratorConfig<T>,
    section: SectionConfig<T>,
}

fn c<T: Real>(x: T) -> Cell {
    Cell::real(x)
}

impl<'a, T: Real> Run<'a, T> {
    fn new(cfg: &'a RunConfig) -> Result<Self> {
        let step: T = RunConfig::real(&cfg.step)?;
        let tol: T = RunConfig::real(&cfg.tol)?;
        Ok(Run {
            cfg,
            ic: cfg.ic_values()?,
            integrator: IntegratorConfig::new(step)?,
            section: SectionConfig::q2().with_tol(tol),
        })
    }

    fn ic2(&self) -> [T; 2] {
        [self.ic[0], self.ic[1]]
    }

    fn vdp(&self) -> Result<VanDerPol<T>> {
        Ok(VanDerPol::new(RunConfig::real(&self.cfg.forcing)?))
    }

    fn strobe(&self) -> StroboscopicConfig<T> {
        StroboscopicConfig { burn_in: self.cfg.burn_in, integrator: self.integrator }
    }

    fn three_body(&self) -> Result<(ThreeBody<T>, [T; 4])> {
        let tb = ThreeBody::new(RunConfig::real(&self.cfg.mu)?);
        let x0 = if self.ic.len() == 4 {
            [self.ic[0], self.ic[1], self.ic[2], self.ic[3]]
        } else {
            tb.section_state(self.ic[0], self.ic[1], RunConfig::real(&self.cfg.energy)?)?
        };
        Ok((tb, x0))
    }

    fn sections(&self, count: usize) -> Result<(ThreeBody<T>, [T; 4], Vec<SectionEvent<T, 4>>)> {
        let (tb, x0) = self.three_body()?;
        let ev = three_body_section_points(&tb, x0, count, self.integrator, self.section)?;
        Ok((tb, x0, ev))
    }

    /// The invariant circle of a one-dimensional system, `count` points.
    fn circle(&self, count: usize) -> Result<CircleOrbit<T>> {
        match self.cfg.system {
            SystemKind::Standard => standard_map_circle(self.ic2(), count - 1),
            SystemKind::Vdp => vdp_circle(&self.vdp()?, self.ic2(), count - 1, &self.strobe()),
            SystemKind::ThreeBody => three_body_circle(&self.sections(count)?.2),
            SystemKind::Torus2d => Err(Error::Unsupported("a circle parameterization for the torus map")),
        }
    }

    /// `count` unwrapped angle increments of a scalar angle.
    fn increments(&self, count: usize) -> Result<Vec<T>> {
        if self.cfg.system == SystemKind::Torus2d {
            let d = self.cfg.component - 1;
            Ok(torus_increments(&TorusMap::table(), self.ic2(), count).iter().map(|p| p[d]).collect())
        } else {
            Ok(self.circle(count + 1)?.increments)
        }
    }

    fn orbit(&self) -> Result<Report> {
        let n = self.cfg.n;
        match self.cfg.system {
            SystemKind::Standard | SystemKind::Torus2d => {
                let pts = if self.cfg.system == SystemKind::Standard {
                    map_orbit(&StandardMap, self.ic2(), n)
                } else {
                    map_orbit(&TorusMap::table(), self.ic2(), n)
                };
                let mut r = Report::with_columns(&["n", "x", "y"]);
                for (i, p) in pts.iter().enumerate() {
                    r.row(vec![i.into(), c(p[0]), c(p[1])]);
                }
                Ok(r)
            }
            SystemKind::Vdp => {
                let vdp = self.vdp()?;
                let rk = Rk8::new();
                let h = self.integrator.step;
                let mut x = self.ic2();
                let mut r = Report::with_columns(&["t", "x", "v"]);
                for i in 0..n {
                    let t = T::from_i64(i as i64) * h;
                    r.row(vec![c(t), c(x[0]), c(x[1])]);
                    x = rk.step(&vdp, t, &x, h)?;
                }
                Ok(r)
            }
            SystemKind::ThreeBody => {
                let (tb, mut x) = self.three_body()?;
                let rk = Rk8::new();
                let h = self.integrator.step;
                let mut r = Report::with_columns(&["t", "q1", "q2", "p1", "p2", "H"]);
                for i in 0..n {
                    let t = T::from_i64(i as i64) * h;
                    r.row(vec![c(t), c(x[0]), c(x[1]), c(x[2]), c(x[3]), c(tb.hamiltonian(&x)?)]);
                    x = rk.step(&tb, t, &x, h)?;
                }
                Ok(r)
            }
        }
    }

    fn rotnum(&self) -> Result<Report> {
        let n = self.cfg.n;
        let w = normalized_weights::<T>(self.cfg.kernel, n)?;
        if self.cfg.system == SystemKind::Torus2d {
            let est = torus_rotation(&TorusMap::table(), self.ic2(), w)?;
            let mut r = Report::with_columns(&["n", "rho1", "rho2"]);
            r.put_real("rho1", est.rho[0]);
            r.put_real("rho2", est.rho[1]);
            for (k, v) in &est.diagnostics {
                r.row(vec![(*k).into(), c(v[0]), c(v[1])]);
            }
            return Ok(r);
        }
        let circle = self.circle(n + 1)?;
        let est = circle.rotation(&w)?;
        let mut r = Report::with_columns(&["n", "rho"]);
        r.put_real("rho", est.rho[0]);
        r.put_real("center_x", circle.center[0]);
        r.put_real("center_y", circle.center[1]);
        for (k, v) in &est.diagnostics {
            r.row(vec![(*k).into(), c(v[0])]);
        }
        Ok(r)
    }

    fn put_decay(r: &mut Report, fit: Result<DecayFit>) {
        match fit {
            Ok(f) => {
                r.put_real("decay_alpha", f.alpha);
                r.put_real("decay_beta", f.beta);
                r.put_real("decay_residual", f.residual);
            }
            Err(e) => r.put("decay_fit", e.to_string().as_str()),
        }
    }

    /// Conjugacy samples `g_n` and the rotation number of a 1D system.
    fn conjugacy_spectrum(&self) -> Result<(T, wbavg::fourier::FourierSpectrum1D<T>)> {
        let n = self.cfg.n;
        let w = normalized_weights::<T>(self.cfg.kernel, n)?;
        let circle = self.circle(n + 1)?;
        let rho = circle.rotation(&w)?.rho[0];
        let g = circle.conjugacy_samples(rho, n)?;
        Ok((rho, fourier_coeffs_1d(&g, rho, self.cfg.kmax, &w)?))
    }

    fn fourier(&self) -> Result<Report> {
        let n = self.cfg.n;
        if self.cfg.system != SystemKind::Torus2d {
            let (rho, s) = self.conjugacy_spectrum()?;
            let mut r = Report::with_columns(&["k", "b", "c", "magnitude"]);
            r.put_real("rho", rho);
            Self::put_decay(&mut r, decay_fit(&s));
            for (k, m) in s.magnitudes().into_iter().enumerate() {
                r.row(vec![k.into(), c(s.b[k]), c(s.c[k]), c(m)]);
            }
            return Ok(r);
        }
        let w = normalized_weights::<T>(self.cfg.kernel, n)?;
        let map = TorusMap::table();
        let inc = torus_increments(&map, self.ic2(), n);
        let rho = rotation_from_increments(w.clone(), |i| Ok(inc[i]))?.rho;
        let d = self.cfg.component - 1;
        let comp: Vec<T> = inc.iter().map(|p| p[d]).collect();
        let g = periodic_part(&comp, rho[d], n)?;
        let kmax = self.cfg.kmax;
        let s = fourier_coeffs_2d(&g, rho, kmax, kmax, &w)?;
        let mut r = Report::with_columns(&["family", "j", "k", "re", "im", "magnitude"]);
        r.put_real("rho1", rho[0]);
        r.put_real("rho2", rho[1]);
        Self::put_decay(&mut r, fit_exponential_decay(&s.radial_magnitudes(), 10.0 * T::EPSILON));
        for family in ["plus", "minus"] {
            for j in 0..=kmax {
                for k in 0..=kmax {
                    let z = if family == "plus" { s.plus(j, k) } else { s.minus(j, k) };
                    r.row(vec![family.into(), j.into(), k.into(), c(z.re), c(z.im), c(z.norm())]);
                }
            }
        }
        Ok(r)
    }

    fn conjugacy(&self) -> Result<Report> {
        let (rho, s) = self.conjugacy_spectrum()?;
        let m = self.cfg.samples;
        let g = reconstruct_conjugacy(&s, m);
        let mut r = Report::with_columns(&["theta", "g", "h"]);
        r.put_real("rho", rho);
        let mm = T::from_i64(m as i64);
        for (i, gi) in g.into_iter().enumerate() {
            let theta = T::from_i64(i as i64) / mm;
            r.row(vec![c(theta), c(gi), c(theta + gi)]);
        }
        Ok(r)
    }

    fn lyapunov(&self) -> Result<Report> {
        let w = normalized_weights::<T>(self.cfg.kernel, self.cfg.n)?;
        let res = match self.cfg.system {
            SystemKind::Standard => lyapunov_exponents(&StandardMap, self.ic2(), &w)?,
            SystemKind::Torus2d => lyapunov_exponents(&TorusMap::table(), self.ic2(), &w)?,
            _ => return Err(Error::Unsupported("Lyapunov exponents of flows")),
        };
        let mut r = Report::with_columns(&["index", "exponent"]);
        r.put_real("sum", res.sum());
        for (i, e) in res.exponents.iter().enumerate() {
            r.row(vec![(i + 1).into(), c(*e)]);
        }
        Ok(r)
    }

    fn convergence(&self) -> Result<Report> {
        let inc = self.increments(self.cfg.n_star)?;
        let table = convergence_study(
            |k, n| Ok(rotation_from_increments(normalized_weights(k, n)?, |i| Ok([inc[i]]))?.rho[0]),
            &self.cfg.kernels,
            &self.cfg.grid,
            Some(self.cfg.n_star),
        )?;
        let mut r = Report::with_columns(&["kernel", "N", "error"]);
        r.put("n_star", table.n_star);
        for &k in &self.cfg.kernels {
            if let Some(v) = table.reference(k) {
                r.put_real(&format!("reference_{k}"), v);
            }
            match fit_slope(&table, k) {
                Ok(f) => r.put_real(&format!("slope_{k}"), f.slope),
                Err(e) => r.put(&format!("slope_{k}"), e.to_string().as_str()),
            }
        }
        for row in &table.rows {
            r.row(vec![row.kernel.name().into(), row.n.into(), c(row.error)]);
        }
        Ok(r)
    }

    fn section(&self) -> Result<Report> {
        let n = self.cfg.n;
        if self.cfg.system == SystemKind::Vdp {
            let vdp = self.vdp()?;
            let pts = vdp_stroboscopic(&vdp, self.ic2(), n, &self.strobe())?;
            let mut r = Report::with_columns(&["k", "t", "x", "v"]);
            for (i, p) in pts.iter().enumerate() {
                let t = T::from_i64((self.cfg.burn_in + i) as i64) * vdp.period();
                r.row(vec![i.into(), c(t), c(p[0]), c(p[1])]);
            }
            return Ok(r);
        }
        let (tb, x0, ev) = self.sections(n)?;
        let h0 = tb.hamiltonian(&x0)?;
        let mut r = Report::with_columns(&["k", "t", "q1", "p1", "p2", "residual", "dH"]);
        let mut drift = T::zero();
        let mut worst = T::zero();
        for (i, e) in ev.iter().enumerate() {
            let dh = tb.hamiltonian(&e.state)? - h0;
            drift = drift.max(dh.abs());
            worst = worst.max(e.residual);
            r.row(vec![i.into(), c(e.time), c(e.state[0]), c(e.state[2]), c(e.state[3]), c(e.residual), c(dh)]);
        }
        r.put_real("energy", h0);
        r.put_real("max_abs_dH", drift);
        r.put_real("max_residual", worst);
        Ok(r)
    }
}
