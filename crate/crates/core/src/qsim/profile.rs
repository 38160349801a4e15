//! Acceptance profiles q(k) of small fixed circuits over the oracle models.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Counters, QsimError, StateVector};

/// Circuit primitives. Registers are created by the `Prepare*` primitives and
/// indexed in creation order; N-dimensional registers hold an index 1..=N,
/// the V register has dimension N^2 + 1 with index 0 the adjoined axis.
#[derive(Clone, Debug, Serialize)]
pub enum Prim {
    /// New register in the uniform superposition over S (one QSample copy).
    PrepareSample,
    /// New register in the uniform superposition over [N] (input-independent).
    PrepareUniform,
    /// New (N^2+1)-dimensional register in the adjoined all-zeros axis.
    PrepareVRegister,
    /// Phase oracle: -1 on basis states of the register lying in S.
    MembershipQuery { reg: usize },
    /// Reflection 1 - 2|S><S| on an N-dimensional register.
    ReflectS { reg: usize },
    /// Reflection about (|0^m> - |S>|S>)/sqrt(2) on a V register.
    ApplyV { reg: usize },
    /// Input-independent diagonal: -1 on a fixed, known index set.
    PhaseFixedSet { reg: usize, set: Vec<u64> },
}

/// Final projective acceptance.
#[derive(Clone, Debug, Serialize)]
pub enum Acceptance {
    Always,
    /// All N-dimensional registers measured equal.
    AllSampleRegsEqual,
    /// Projection onto the uniform state of one register.
    ProjectUniform { reg: usize },
    /// Projection onto the adjoined axis of a V register.
    ProjectZeroAxis { reg: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Circuit {
    pub prims: Vec<Prim>,
    pub accept: Acceptance,
}

#[derive(Clone, Debug)]
pub struct CircuitOutcome {
    pub accept_probability: f64,
    pub counters: Counters,
}

enum RegKind {
    Index,
    VSpace,
}

struct Machine {
    n: u64,
    dims: Vec<usize>,
    kinds: Vec<RegKind>,
    state: StateVector,
    counters: Counters,
}

impl Machine {
    fn new(n: u64) -> Self {
        Machine {
            n,
            dims: Vec::new(),
            kinds: Vec::new(),
            state: StateVector { amps: vec![Complex64::new(1.0, 0.0)] },
            counters: Counters::default(),
        }
    }

    fn push_register(&mut self, kind: RegKind, init: Vec<Complex64>) {
        let old = std::mem::take(&mut self.state.amps);
        let d = init.len();
        let mut amps = Vec::with_capacity(old.len() * d);
        for a in &old {
            for b in &init {
                amps.push(a * b);
            }
        }
        self.state.amps = amps;
        self.dims.push(d);
        self.kinds.push(kind);
    }

    /// Stride layout: last-created register varies fastest.
    fn stride(&self, reg: usize) -> usize {
        self.dims[reg + 1..].iter().product()
    }

    /// Applies `op` to the amplitudes of register `reg` for every fixed
    /// configuration of the other registers.
    fn apply_to_register(&mut self, reg: usize, op: impl Fn(&mut [Complex64])) {
        let d = self.dims[reg];
        let stride = self.stride(reg);
        let block = d * stride;
        let total = self.state.amps.len();
        let mut scratch = vec![Complex64::default(); d];
        for base in (0..total).step_by(block) {
            for off in 0..stride {
                for i in 0..d {
                    scratch[i] = self.state.amps[base + off + i * stride];
                }
                op(&mut scratch);
                for i in 0..d {
                    self.state.amps[base + off + i * stride] = scratch[i];
                }
            }
        }
    }

    fn s_axis(&self, s: &[u64]) -> Vec<Complex64> {
        let mut v = vec![Complex64::default(); self.n as usize];
        let amp = 1.0 / (s.len() as f64).sqrt();
        for &i in s {
            v[(i - 1) as usize] = Complex64::new(amp, 0.0);
        }
        v
    }

    fn run_prim(&mut self, prim: &Prim, s: &[u64]) -> Result<(), QsimError> {
        match prim {
            Prim::PrepareSample => {
                let axis = self.s_axis(s);
                self.push_register(RegKind::Index, axis);
                self.counters.samples += 1;
            }
            Prim::PrepareUniform => {
                let amp = Complex64::new(1.0 / (self.n as f64).sqrt(), 0.0);
                self.push_register(RegKind::Index, vec![amp; self.n as usize]);
            }
            Prim::PrepareVRegister => {
                let dim = (self.n * self.n + 1) as usize;
                let mut init = vec![Complex64::default(); dim];
                init[0] = Complex64::new(1.0, 0.0);
                self.push_register(RegKind::VSpace, init);
            }
            Prim::MembershipQuery { reg } => {
                self.expect_kind(*reg, false)?;
                let marked: Vec<bool> = (1..=self.n).map(|i| s.contains(&i)).collect();
                self.apply_to_register(*reg, |amps| {
                    for (i, a) in amps.iter_mut().enumerate() {
                        if marked[i] {
                            *a = -*a;
                        }
                    }
                });
                self.counters.queries += 1;
            }
            Prim::ReflectS { reg } => {
                self.expect_kind(*reg, false)?;
                let axis = self.s_axis(s);
                self.apply_to_register(*reg, |amps| reflect(amps, &axis));
                self.counters.reflections += 1;
            }
            Prim::ApplyV { reg } => {
                self.expect_kind(*reg, true)?;
                let n = self.n as usize;
                let mut axis = vec![Complex64::default(); n * n + 1];
                axis[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                let pair_amp = -std::f64::consts::FRAC_1_SQRT_2 / s.len() as f64;
                for &i in s {
                    for &j in s {
                        axis[1 + (i as usize - 1) * n + (j as usize - 1)] =
                            Complex64::new(pair_amp, 0.0);
                    }
                }
                self.apply_to_register(*reg, |amps| reflect(amps, &axis));
                self.counters.v_uses += 1;
            }
            Prim::PhaseFixedSet { reg, set } => {
                // Input-independent diagonal. On an index register it phases
                // members of the fixed set; on a V register it phases the
                // first pair component, leaving the adjoined axis alone.
                let n = self.n as usize;
                let marked: Vec<bool> = (1..=self.n).map(|i| set.contains(&i)).collect();
                match self.kinds.get(*reg) {
                    Some(RegKind::Index) => {
                        self.apply_to_register(*reg, |amps| {
                            for (i, a) in amps.iter_mut().enumerate() {
                                if marked[i] {
                                    *a = -*a;
                                }
                            }
                        });
                    }
                    Some(RegKind::VSpace) => {
                        self.apply_to_register(*reg, |amps| {
                            for (idx, a) in amps.iter_mut().enumerate().skip(1) {
                                if marked[(idx - 1) / n] {
                                    *a = -*a;
                                }
                            }
                        });
                    }
                    None => {
                        return Err(QsimError::UnsupportedPrimitive(format!(
                            "register {reg} missing"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    fn expect_kind(&self, reg: usize, want_v: bool) -> Result<(), QsimError> {
        let ok = match self.kinds.get(reg) {
            Some(RegKind::Index) => !want_v,
            Some(RegKind::VSpace) => want_v,
            None => false,
        };
        if !ok {
            return Err(QsimError::UnsupportedPrimitive(format!(
                "register {reg} missing or of the wrong kind"
            )));
        }
        Ok(())
    }

    fn accept_probability(&self, accept: &Acceptance) -> Result<f64, QsimError> {
        match accept {
            Acceptance::Always => Ok(1.0),
            Acceptance::AllSampleRegsEqual => {
                let idx_regs: Vec<usize> = self
                    .kinds
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| matches!(k, RegKind::Index))
                    .map(|(r, _)| r)
                    .collect();
                if idx_regs.is_empty() {
                    return Err(QsimError::UnsupportedPrimitive(
                        "equality acceptance needs at least one index register".into(),
                    ));
                }
                let mut p = 0.0;
                for (idx, a) in self.state.amps.iter().enumerate() {
                    let components = self.unpack(idx);
                    let first = components[idx_regs[0]];
                    if idx_regs.iter().all(|&r| components[r] == first) {
                        p += a.norm_sqr();
                    }
                }
                Ok(p)
            }
            Acceptance::ProjectUniform { reg } => {
                self.expect_kind(*reg, false)?;
                Ok(self.project_axis(*reg, &vec![
                    Complex64::new(1.0 / (self.n as f64).sqrt(), 0.0);
                    self.n as usize
                ]))
            }
            Acceptance::ProjectZeroAxis { reg } => {
                self.expect_kind(*reg, true)?;
                let mut axis = vec![Complex64::default(); self.dims[*reg]];
                axis[0] = Complex64::new(1.0, 0.0);
                Ok(self.project_axis(*reg, &axis))
            }
        }
    }

    fn unpack(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for r in (0..self.dims.len()).rev() {
            out[r] = idx % self.dims[r];
            idx /= self.dims[r];
        }
        out
    }

    /// || (|axis><axis| (x) 1) psi ||^2 for one register.
    fn project_axis(&self, reg: usize, axis: &[Complex64]) -> f64 {
        let d = self.dims[reg];
        let stride = self.stride(reg);
        let block = d * stride;
        let mut p = 0.0;
        for base in (0..self.state.amps.len()).step_by(block) {
            for off in 0..stride {
                let mut overlap = Complex64::default();
                for i in 0..d {
                    overlap += axis[i].conj() * self.state.amps[base + off + i * stride];
                }
                p += overlap.norm_sqr();
            }
        }
        p
    }
}

/// In-place reflection 1 - 2|axis><axis| restricted to one register block.
fn reflect(amps: &mut [Complex64], axis: &[Complex64]) {
    let mut overlap = Complex64::default();
    for (a, x) in amps.iter().zip(axis) {
        overlap += x.conj() * a;
    }
    let two_overlap = overlap * 2.0;
    for (a, x) in amps.iter_mut().zip(axis) {
        *a -= two_overlap * x;
    }
}

/// Runs the circuit against a fixed set S, returning the exact acceptance
/// probability of the final projective measurement plus resource counters.
/// The norm is checked after every primitive.
pub fn run_circuit(circuit: &Circuit, n: u64, s: &[u64]) -> Result<CircuitOutcome, QsimError> {
    if s.is_empty() || s.iter().any(|&i| i < 1 || i > n) {
        return Err(QsimError::BadParams("S must be a nonempty subset of 1..=N".into()));
    }
    let mut machine = Machine::new(n);
    for prim in &circuit.prims {
        machine.run_prim(prim, s)?;
        machine.state.check_norm()?;
    }
    Ok(CircuitOutcome {
        accept_probability: machine.accept_probability(&circuit.accept)?,
        counters: machine.counters,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfilePoint {
    pub k: u64,
    pub q: f64,
    /// Standard error when sampled; zero in exact mode.
    pub std_err: f64,
}

/// q(k) = E_{|S|=k}[accept] for k = 1..=N.
///
/// Exact mode (N <= 12) enumerates every C(N,k) subset; otherwise subsets are
/// Monte Carlo sampled with a seed-deterministic stream per k.
pub fn acceptance_profile(
    circuit: &Circuit,
    n: u64,
    exact: bool,
    seed: u64,
    mc_subsets: u64,
) -> Result<Vec<ProfilePoint>, QsimError> {
    if exact && n > 12 {
        return Err(QsimError::BadParams(format!("exact mode capped at N = 12, got {n}")));
    }
    let mut out = Vec::new();
    for k in 1..=n {
        if exact {
            let mut total = 0.0;
            let mut count = 0u64;
            let mut mask: u64 = (1u64 << k) - 1;
            let limit = 1u64 << n;
            while mask < limit {
                let s: Vec<u64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
                total += run_circuit(circuit, n, &s)?.accept_probability;
                count += 1;
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                mask = ((r ^ mask) >> 2) / c | r;
            }
            out.push(ProfilePoint { k, q: total / count as f64, std_err: 0.0 });
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k.wrapping_mul(0x9e3779b97f4a7c15)));
            let mut vals = Vec::with_capacity(mc_subsets as usize);
            for _ in 0..mc_subsets {
                let mut all: Vec<u64> = (1..=n).collect();
                all.shuffle(&mut rng);
                let mut s: Vec<u64> = all[..k as usize].to_vec();
                s.sort_unstable();
                vals.push(run_circuit(circuit, n, &s)?.accept_probability);
            }
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                / (vals.len().max(2) - 1) as f64;
            out.push(ProfilePoint { k, q: mean, std_err: (var / vals.len() as f64).sqrt() });
        }
    }
    Ok(out)
}

/// Fixture circuits used across tests and the CLI.
pub mod fixtures {
    use super::*;

    /// One sample, accept always: q(k) = 1.
    pub fn always_accept() -> Circuit {
        Circuit { prims: vec![Prim::PrepareSample], accept: Acceptance::Always }
    }

    /// Two samples, accept iff equal: q(k) = 1/k.
    pub fn two_sample_collision() -> Circuit {
        Circuit {
            prims: vec![Prim::PrepareSample, Prim::PrepareSample],
            accept: Acceptance::AllSampleRegsEqual,
        }
    }

    /// Uniform state, one reflection about |S>, project back onto uniform:
    /// q(k) = (1 - 2k/N)^2.
    pub fn single_reflection() -> Circuit {
        Circuit {
            prims: vec![Prim::PrepareUniform, Prim::ReflectS { reg: 0 }],
            accept: Acceptance::ProjectUniform { reg: 0 },
        }
    }

    /// V, fixed-set phase, V, project onto the adjoined axis. Closed form:
    /// q(k) = E[(1 - 2|S cap F|/k)^2] over |S| = k, a span of {1, 1/k}.
    pub fn v_probe(fixed: Vec<u64>) -> Circuit {
        Circuit {
            prims: vec![
                Prim::PrepareVRegister,
                Prim::ApplyV { reg: 0 },
                Prim::PhaseFixedSet { reg: 0, set: fixed },
                Prim::ApplyV { reg: 0 },
            ],
            accept: Acceptance::ProjectZeroAxis { reg: 0 },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn always_accept_profile() {
        let prof = acceptance_profile(&always_accept(), 6, true, 0, 0).unwrap();
        for p in prof {
            assert!((p.q - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn collision_profile_is_inverse_k() {
        let prof = acceptance_profile(&two_sample_collision(), 8, true, 0, 0).unwrap();
        for p in prof {
            assert!((p.q - 1.0 / p.k as f64).abs() < 1e-12, "k = {}", p.k);
        }
    }

    #[test]
    fn reflection_profile_closed_form() {
        let n = 10u64;
        let prof = acceptance_profile(&single_reflection(), n, true, 0, 0).unwrap();
        for p in prof {
            let expect = (1.0 - 2.0 * p.k as f64 / n as f64).powi(2);
            assert!((p.q - expect).abs() < 1e-12, "k = {}", p.k);
        }
    }

    #[test]
    fn v_probe_closed_form() {
        // q(k) = E[(k - 2X)^2]/k^2 with X hypergeometric(N, |F|, k).
        let n = 8u64;
        let f: Vec<u64> = vec![1, 2, 3];
        let prof = acceptance_profile(&v_probe(f.clone()), n, true, 0, 0).unwrap();
        let ff = f.len() as f64;
        let nn = n as f64;
        for p in prof {
            let k = p.k as f64;
            let e_x = k * ff / nn;
            let e_xx1 = k * (k - 1.0) * ff * (ff - 1.0) / (nn * (nn - 1.0));
            let e_x2 = e_xx1 + e_x;
            let expect = (k * k - 4.0 * k * e_x + 4.0 * e_x2) / (k * k);
            assert!((p.q - expect).abs() < 1e-10, "k = {} got {} want {}", p.k, p.q, expect);
        }
    }

    #[test]
    fn counters_track_primitives() {
        let c = Circuit {
            prims: vec![
                Prim::PrepareSample,
                Prim::PrepareUniform,
                Prim::MembershipQuery { reg: 1 },
                Prim::ReflectS { reg: 1 },
                Prim::ReflectS { reg: 0 },
            ],
            accept: Acceptance::Always,
        };
        let out = run_circuit(&c, 6, &[1, 4]).unwrap();
        assert_eq!(out.counters, Counters { queries: 1, samples: 1, reflections: 2, v_uses: 0 });
    }

    #[test]
    fn relabeling_invariance() {
        // Acceptance depends only on |S| for these circuits.
        let circuits = [two_sample_collision(), single_reflection()];
        for c in &circuits {
            let a = run_circuit(c, 9, &[1, 2, 5]).unwrap().accept_probability;
            let b = run_circuit(c, 9, &[4, 7, 9]).unwrap().accept_probability;
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bad_register_rejected() {
        let c = Circuit {
            prims: vec![Prim::PrepareSample, Prim::ApplyV { reg: 0 }],
            accept: Acceptance::Always,
        };
        assert!(matches!(run_circuit(&c, 4, &[1]), Err(QsimError::UnsupportedPrimitive(_))));
    }
}
