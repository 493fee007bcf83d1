use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use super::rng::SimRng;
use crate::error::{Error, Result};
use crate::oracle::BooleanOracle;

/// Largest state the simulator will allocate (2^26 amplitudes, 1 GiB).
pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Below this total probability a state cannot be measured.
const DEGENERATE_NORM: f64 = 1e-9;
/// Largest tolerated deviation of the norm from 1 before measuring.
const DRIFT_TOLERANCE: f64 = 1e-8;

/// Pure state of `q` qubits; qubit `k` is bit `k` of the amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

/// Index bookkeeping for acting on a register while the other qubits are spectators.
struct Layout {
    /// `inner[v]` is the index offset of register value `v`.
    inner: Vec<usize>,
    /// Base indices with every register (and excluded) bit clear.
    outer: Vec<usize>,
}

impl StateVector {
    /// The computational basis state `|index⟩`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(num_qubits)?;
        if index >> num_qubits != 0 {
            return Err(Error::QubitIndex(format!(
                "basis index {index} needs more than {num_qubits} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    pub fn zero(num_qubits: usize) -> Result<Self> {
        Self::basis(num_qubits, 0)
    }

    /// Equal superposition over all `2^q` basis states.
    pub fn init_uniform(num_qubits: usize) -> Result<Self> {
        check_qubits(num_qubits)?;
        let a = (-(num_qubits as f64) / 2.0).exp2();
        Ok(Self {
            num_qubits,
            amps: vec![Complex64::new(a, 0.0); 1 << num_qubits],
        })
    }

    /// Wraps explicit amplitudes; the length must be a power of two. The
    /// amplitudes are taken as given, without normalization.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::QubitIndex(format!(
                "{} amplitudes is not a power of two",
                amps.len()
            )));
        }
        let num_qubits = amps.len().trailing_zeros() as usize;
        check_qubits(num_qubits)?;
        Ok(Self { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    /// `Σ |a|²`, summed in ascending index order.
    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    fn layout(&self, register: &[usize], spectators: &[usize]) -> Result<Layout> {
        let q = self.num_qubits;
        let mut used = 0usize;
        for &k in register.iter().chain(spectators) {
            if k >= q {
                return Err(Error::QubitIndex(format!(
                    "qubit {k} out of range for {q} qubits"
                )));
            }
            if used & (1 << k) != 0 {
                return Err(Error::QubitIndex(format!("qubit {k} listed twice")));
            }
            used |= 1 << k;
        }
        let contiguous = register.windows(2).all(|w| w[1] == w[0] + 1);
        let inner = if contiguous {
            let shift = register.first().copied().unwrap_or(0);
            (0..1usize << register.len()).map(|v| v << shift).collect()
        } else {
            (0..1usize << register.len())
                .map(|v| {
                    register
                        .iter()
                        .enumerate()
                        .filter(|&(bit, _)| v >> bit & 1 == 1)
                        .map(|(_, &k)| 1 << k)
                        .sum()
                })
                .collect()
        };
        let outer = (0..self.amps.len()).filter(|i| i & used == 0).collect();
        Ok(Layout { inner, outer })
    }

    fn check_arity(oracle: &BooleanOracle, inputs: &[usize]) -> Result<()> {
        if oracle.arity() != inputs.len() {
            return Err(Error::ArityMismatch {
                left: oracle.arity(),
                right: inputs.len(),
            });
        }
        Ok(())
    }

    pub fn apply_hadamard(&mut self, qubit: usize) -> Result<()> {
        self.layout(&[qubit], &[])?;
        let bit = 1 << qubit;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a, b) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
            }
        }
        Ok(())
    }

    pub fn apply_hadamard_layer(&mut self, qubits: &[usize]) -> Result<()> {
        self.layout(qubits, &[])?;
        qubits.iter().try_for_each(|&k| self.apply_hadamard(k))
    }

    /// Pauli X (NOT) on one qubit.
    pub fn apply_x(&mut self, qubit: usize) -> Result<()> {
        self.layout(&[qubit], &[])?;
        let bit = 1 << qubit;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                self.amps.swap(i, i | bit);
            }
        }
        Ok(())
    }

    /// `|x⟩|y⟩ → |x⟩|y ⊕ h(x)⟩`, evaluating the oracle once per input value.
    pub fn apply_xor_oracle(
        &mut self,
        oracle: &BooleanOracle,
        inputs: &[usize],
        target: usize,
    ) -> Result<()> {
        Self::check_arity(oracle, inputs)?;
        let layout = self.layout(inputs, &[target])?;
        let flip = 1 << target;
        let bits = oracle.application_table();
        for &base in &layout.outer {
            for (x, &off) in layout.inner.iter().enumerate() {
                if bits[x] {
                    self.amps.swap(base + off, base + off + flip);
                }
            }
        }
        Ok(())
    }

    /// Negates every amplitude whose input-register value satisfies the predicate.
    pub fn apply_phase_oracle(
        &mut self,
        predicate: &BooleanOracle,
        inputs: &[usize],
    ) -> Result<()> {
        Self::check_arity(predicate, inputs)?;
        let layout = self.layout(inputs, &[])?;
        let bits = predicate.application_table();
        self.phase_flip(&layout, &bits, None);
        Ok(())
    }

    /// [`Self::apply_phase_oracle`] acting only where `control` is 1.
    pub fn apply_controlled_phase_oracle(
        &mut self,
        predicate: &BooleanOracle,
        inputs: &[usize],
        control: usize,
    ) -> Result<()> {
        Self::check_arity(predicate, inputs)?;
        let layout = self.layout(inputs, &[control])?;
        let bits = predicate.application_table();
        self.phase_flip(&layout, &bits, Some(control));
        Ok(())
    }

    fn phase_flip(&mut self, layout: &Layout, bits: &[bool], control: Option<usize>) {
        let ctrl = control.map_or(0, |c| 1 << c);
        for &base in &layout.outer {
            let base = base | ctrl;
            for (x, &off) in layout.inner.iter().enumerate() {
                if bits[x] {
                    self.amps[base + off] = -self.amps[base + off];
                }
            }
        }
    }

    /// Inversion about the mean, `2|s⟩⟨s| − I`, on the input register.
    pub fn apply_diffusion(&mut self, inputs: &[usize]) -> Result<()> {
        let layout = self.layout(inputs, &[])?;
        self.diffuse(&layout, None);
        Ok(())
    }

    /// [`Self::apply_diffusion`] acting only where `control` is 1.
    pub fn apply_controlled_diffusion(&mut self, inputs: &[usize], control: usize) -> Result<()> {
        let layout = self.layout(inputs, &[control])?;
        self.diffuse(&layout, Some(control));
        Ok(())
    }

    fn diffuse(&mut self, layout: &Layout, control: Option<usize>) {
        let ctrl = control.map_or(0, |c| 1 << c);
        let scale = 2.0 / layout.inner.len() as f64;
        for &base in &layout.outer {
            let base = base | ctrl;
            let sum: Complex64 = layout.inner.iter().map(|&off| self.amps[base + off]).sum();
            let twice_mean = sum * scale;
            for &off in &layout.inner {
                self.amps[base + off] = twice_mean - self.amps[base + off];
            }
        }
    }

    /// One Grover iterate (phase oracle, then diffusion) controlled on `control`.
    pub fn apply_controlled_grover(
        &mut self,
        predicate: &BooleanOracle,
        inputs: &[usize],
        control: usize,
    ) -> Result<()> {
        self.apply_controlled_phase_oracle(predicate, inputs, control)?;
        self.apply_controlled_diffusion(inputs, control)
    }

    /// Discrete Fourier transform on the register value:
    /// `|y⟩ → 2^{-t/2} Σ_k e^{2πi yk/2^t} |k⟩`. Register qubit `j` is bit `j` of `y`.
    pub fn apply_qft(&mut self, register: &[usize]) -> Result<()> {
        self.fourier(register, 1.0)
    }

    /// Inverse of [`Self::apply_qft`].
    pub fn apply_inverse_qft(&mut self, register: &[usize]) -> Result<()> {
        self.fourier(register, -1.0)
    }

    fn fourier(&mut self, register: &[usize], sign: f64) -> Result<()> {
        let layout = self.layout(register, &[])?;
        let size = layout.inner.len();
        let twiddle: Vec<Complex64> = (0..size)
            .map(|j| Complex64::from_polar(1.0, sign * 2.0 * PI * j as f64 / size as f64))
            .collect();
        let scale = 1.0 / (size as f64).sqrt();
        let mut block = vec![Complex64::new(0.0, 0.0); size];
        for &base in &layout.outer {
            for (slot, &off) in block.iter_mut().zip(&layout.inner) {
                *slot = self.amps[base + off];
            }
            for (k, &off) in layout.inner.iter().enumerate() {
                let acc: Complex64 = block
                    .iter()
                    .enumerate()
                    .map(|(y, &a)| a * twiddle[(y * k) % size])
                    .sum();
                self.amps[base + off] = acc * scale;
            }
        }
        Ok(())
    }

    /// Marginal outcome probabilities of the register, indexed by register value.
    pub fn register_probabilities(&self, register: &[usize]) -> Result<Vec<f64>> {
        let layout = self.layout(register, &[])?;
        Ok(layout
            .inner
            .iter()
            .map(|&off| {
                layout
                    .outer
                    .iter()
                    .map(|&b| self.amps[b + off].norm_sqr())
                    .sum()
            })
            .collect())
    }

    /// Born-rule measurement of the register.
    ///
    /// A single uniform draw is compared against the cumulative outcome
    /// probabilities in ascending register-value order. The state collapses
    /// onto the observed value and is renormalized.
    pub fn measure_register(&mut self, register: &[usize], rng: &mut SimRng) -> Result<u64> {
        self.measure_with_norm(register, rng).map(|(v, _)| v)
    }

    /// [`Self::measure_register`], also returning the pre-measurement norm.
    pub(crate) fn measure_with_norm(
        &mut self,
        register: &[usize],
        rng: &mut SimRng,
    ) -> Result<(u64, f64)> {
        let probs = self.register_probabilities(register)?;
        let total: f64 = probs.iter().sum();
        if total < DEGENERATE_NORM {
            return Err(Error::DegenerateState(total));
        }
        if (total - 1.0).abs() > DRIFT_TOLERANCE {
            return Err(Error::NormDrift(total));
        }
        let u = rng.uniform() * total;
        let mut acc = 0.0;
        let mut outcome = probs.len() - 1;
        for (v, &p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                outcome = v;
                break;
            }
        }
        // Guard against landing on a zero-probability tail through rounding.
        while probs[outcome] == 0.0 && outcome > 0 {
            outcome -= 1;
        }

        let layout = self.layout(register, &[])?;
        let keep = layout.inner[outcome];
        let reg_mask: usize = register.iter().map(|&k| 1 << k).sum();
        let scale = 1.0 / probs[outcome].sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & reg_mask == keep {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok((outcome as u64, total))
    }
}

fn check_qubits(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > DEFAULT_QUBIT_CAP {
        return Err(Error::TooManyQubits {
            requested: num_qubits,
            cap: DEFAULT_QUBIT_CAP,
        });
    }
    Ok(())
}
