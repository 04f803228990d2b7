// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Lindblad integrator for idle evolution.
//!
//! Integrates `dρ/dt = Σ_k γ_k (L_k ρ L_k† − ½{L_k†L_k, ρ})` with `H = 0`,
//! `L_1 = σ⁻` at rate `1/T1` and `L_φ = σ_z` at rate `γ_φ/2`, where
//! `γ_φ = 1/T2 − 1/(2·T1)`. Classical RK4 with a fixed step.

use num_complex::Complex64;

use super::{NoiseError, NoiseModel};

type Mat2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[ZERO; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn dagger(a: &Mat2) -> Mat2 {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn axpy(alpha: f64, x: &Mat2, y: &Mat2) -> Mat2 {
    let mut out = *y;
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] += x[i][j] * alpha;
        }
    }
    out
}

/// 2×2 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: Mat2,
}

impl DensityMatrix {
    pub fn new(entries: Mat2) -> Result<DensityMatrix, NoiseError> {
        let rho = DensityMatrix { entries };
        rho.check(1e-10)?;
        Ok(rho)
    }

    pub fn from_pure(psi: [Complex64; 2]) -> Result<DensityMatrix, NoiseError> {
        let norm = psi[0].norm_sqr() + psi[1].norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(NoiseError::InvalidState(format!("state norm² {norm} ≠ 1")));
        }
        DensityMatrix::new([[psi[0] * psi[0].conj(), psi[0] * psi[1].conj()], [psi[1] * psi[0].conj(), psi[1] * psi[1].conj()]])
    }

    pub fn ground() -> DensityMatrix {
        DensityMatrix::from_pure([Complex64::new(1.0, 0.0), ZERO]).expect("valid")
    }

    pub fn excited() -> DensityMatrix {
        DensityMatrix::from_pure([ZERO, Complex64::new(1.0, 0.0)]).expect("valid")
    }

    /// The six ±X, ±Y, ±Z eigenstates, in that order.
    pub fn axis_states() -> [([Complex64; 2], DensityMatrix); 6] {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = |v: f64| Complex64::new(v, 0.0);
        let i = |v: f64| Complex64::new(0.0, v);
        [[r(h), r(h)], [r(h), r(-h)], [r(h), i(h)], [r(h), i(-h)], [r(1.0), r(0.0)], [r(0.0), r(1.0)]]
            .map(|psi| (psi, DensityMatrix::from_pure(psi).expect("normalized")))
    }

    pub fn entries(&self) -> &Mat2 {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i][j]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries[0][0] + self.entries[1][1]
    }

    /// Checks Hermiticity, unit trace and positivity to `tol`.
    pub fn check(&self, tol: f64) -> Result<(), NoiseError> {
        let m = &self.entries;
        if (m[0][1] - m[1][0].conj()).norm() > tol || m[0][0].im.abs() > tol || m[1][1].im.abs() > tol {
            return Err(NoiseError::InvalidState("not Hermitian".into()));
        }
        if (self.trace() - 1.0).norm() > tol {
            return Err(NoiseError::InvalidState(format!("trace {} ≠ 1", self.trace())));
        }
        // 2×2 Hermitian: PSD iff diagonal ≥ 0 and det ≥ 0
        let det = m[0][0].re * m[1][1].re - m[0][1].norm_sqr();
        if m[0][0].re < -tol || m[1][1].re < -tol || det < -tol {
            return Err(NoiseError::InvalidState("not positive semidefinite".into()));
        }
        Ok(())
    }

    /// `⟨ψ|ρ|ψ⟩`.
    pub fn overlap(&self, psi: &[Complex64; 2]) -> f64 {
        let m = &self.entries;
        let mut acc = ZERO;
        for i in 0..2 {
            for j in 0..2 {
                acc += psi[i].conj() * m[i][j] * psi[j];
            }
        }
        acc.re
    }
}

struct Dissipator {
    ops: Vec<(f64, Mat2)>,
}

impl Dissipator {
    /// Rates in 1/ns.
    fn new(nm: &NoiseModel) -> Dissipator {
        let one = Complex64::new(1.0, 0.0);
        let lowering = [[ZERO, one], [ZERO, ZERO]];
        let sigma_z = [[one, ZERO], [ZERO, -one]];
        let gamma_1 = 1.0 / (nm.t1_us * 1000.0);
        let gamma_phi = nm.pure_dephasing_rate() / 1000.0;
        Dissipator { ops: vec![(gamma_1, lowering), (gamma_phi / 2.0, sigma_z)] }
    }

    fn rhs(&self, rho: &Mat2) -> Mat2 {
        let mut out = [[ZERO; 2]; 2];
        for (rate, l) in &self.ops {
            let ld = dagger(l);
            let ldl = mul(&ld, l);
            let jump = mul(&mul(l, rho), &ld);
            let anti = axpy(1.0, &mul(&ldl, rho), &mul(rho, &ldl));
            out = axpy(*rate, &axpy(-0.5, &anti, &jump), &out);
        }
        out
    }

    fn rk4_step(&self, rho: &Mat2, h: f64) -> Mat2 {
        let k1 = self.rhs(rho);
        let k2 = self.rhs(&axpy(h / 2.0, &k1, rho));
        let k3 = self.rhs(&axpy(h / 2.0, &k2, rho));
        let k4 = self.rhs(&axpy(h, &k3, rho));
        let mut next = *rho;
        for (k, w) in [(&k1, 1.0), (&k2, 2.0), (&k3, 2.0), (&k4, 1.0)] {
            next = axpy(h * w / 6.0, k, &next);
        }
        next
    }
}

/// Evolves `initial` for `t_ns` under idle decoherence with step ≤ `dt_ns`.
pub fn lindblad_oracle(initial: &DensityMatrix, t_ns: f64, nm: &NoiseModel, dt_ns: f64) -> Result<DensityMatrix, NoiseError> {
    nm.validate()?;
    if !(t_ns >= 0.0 && t_ns.is_finite()) {
        return Err(NoiseError::StepSize { dt_ns, t_ns });
    }
    if t_ns == 0.0 {
        return Ok(*initial);
    }
    if !(dt_ns > 0.0 && dt_ns <= t_ns / 100.0) {
        return Err(NoiseError::StepSize { dt_ns, t_ns });
    }
    let steps = (t_ns / dt_ns).ceil() as usize;
    let h = t_ns / steps as f64;
    let dissipator = Dissipator::new(nm);
    let mut rho = initial.entries;
    for _ in 0..steps {
        rho = dissipator.rk4_step(&rho, h);
    }
    Ok(DensityMatrix { entries: rho })
}

/// Six-state average fidelity of the integrated idle channel.
pub fn oracle_average_fidelity(t_ns: f64, nm: &NoiseModel, dt_ns: f64) -> Result<f64, NoiseError> {
    let mut sum = 0.0;
    for (psi, rho) in DensityMatrix::axis_states() {
        sum += lindblad_oracle(&rho, t_ns, nm, dt_ns)?.overlap(&psi);
    }
    Ok(sum / 6.0)
}
