//! Seeded sampling for sweeps and random-trial suites.
//!
//! The generator is SplitMix64 with its published constants, implemented
//! here so that draws are byte-reproducible across platforms and easy to
//! replay from another language. Reports record the constants.

use num_complex::Complex64;

use crate::linalg::spectral_norm;
use crate::matrix::ComplexMatrix;

pub const GENERATOR_NAME: &str = "splitmix64";

const INCREMENT: u64 = 0x9e37_79b9_7f4a_7c15;
const MIX_1: u64 = 0xbf58_476d_1ce4_e5b9;
const MIX_2: u64 = 0x94d0_49bb_1331_11eb;

/// SplitMix64: counter plus finalizer, passes the usual statistical batteries
/// and is trivially portable.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(INCREMENT);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(MIX_1);
        z = (z ^ (z >> 27)).wrapping_mul(MIX_2);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn next_usize(&mut self, bound: usize) -> usize {
        (self.next_f64() * bound as f64) as usize % bound.max(1)
    }
}

/// Stable per-trial seed derived from a master seed and a trial index, so
/// sweeps can run in any order and still reproduce.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = SplitMix64::new(master ^ index.wrapping_add(1).wrapping_mul(INCREMENT));
    rng.next_u64()
}

/// Uniform point of the open disk of the given radius, by rejection from the
/// surrounding square.
pub fn sample_disk(rng: &mut SplitMix64, radius: f64) -> Complex64 {
    loop {
        let re = rng.next_in(-radius, radius);
        let im = rng.next_in(-radius, radius);
        if re * re + im * im < radius * radius {
            return Complex64::new(re, im);
        }
    }
}

pub fn sample_omegas(rng: &mut SplitMix64, n: usize, radius: f64) -> Vec<Complex64> {
    (0..n).map(|_| sample_disk(rng, radius)).collect()
}

/// Entries uniform in the unit box [-1, 1]^2.
pub fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.next_in(-1.0, 1.0), rng.next_in(-1.0, 1.0))
    })
}

/// Random matrix rescaled to the exact target spectral norm.
pub fn random_with_norm(
    rng: &mut SplitMix64,
    rows: usize,
    cols: usize,
    target_norm: f64,
) -> ComplexMatrix {
    loop {
        let m = random_matrix(rng, rows, cols);
        let norm = spectral_norm(&m);
        if norm > 1e-8 {
            return m.scale(Complex64::new(target_norm / norm, 0.0));
        }
    }
}

/// Random contraction with spectral norm drawn uniformly below `max_norm`.
pub fn random_contraction(rng: &mut SplitMix64, n: usize, max_norm: f64) -> ComplexMatrix {
    let target = rng.next_in(0.05 * max_norm, max_norm);
    random_with_norm(rng, n, n, target)
}

/// Random unitary via modified Gram-Schmidt on a random matrix; the QR route
/// to Haar-ish unitaries, good enough for invariance tests.
pub fn random_unitary(rng: &mut SplitMix64, n: usize) -> ComplexMatrix {
    'outer: loop {
        let m = random_matrix(rng, n, n);
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|i| m[(i, j)]).collect())
            .collect();
        for j in 0..n {
            for k in 0..j {
                let mut proj = Complex64::new(0.0, 0.0);
                for (a, b) in cols[k].iter().zip(&cols[j]) {
                    proj += a.conj() * b;
                }
                let reference = cols[k].clone();
                for (b, a) in cols[j].iter_mut().zip(&reference) {
                    *b -= proj * a;
                }
            }
            let norm: f64 = cols[j].iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                continue 'outer;
            }
            for value in cols[j].iter_mut() {
                *value /= norm;
            }
        }
        return ComplexMatrix::from_fn(n, n, |i, j| cols[j][i]);
    }
}

/// Deterministic sequences of disk points for truncation experiments.
#[derive(Clone, Debug, PartialEq)]
pub enum OmegaRule {
    /// The same point at every index.
    Constant(Complex64),
    /// omega_k = 1 - q^k for k = 1, 2, ...; approaches the boundary while the
    /// convergence condition stays summable.
    Geometric(f64),
}

impl OmegaRule {
    /// Parses "constant:re\[,im\]" or "geometric:q".
    pub fn parse(text: &str) -> Result<Self, String> {
        let (kind, arg) = text
            .split_once(':')
            .ok_or_else(|| format!("expected rule:parameter, got \"{text}\""))?;
        match kind {
            "constant" => {
                let (re, im) = match arg.split_once(',') {
                    Some((re, im)) => (
                        re.parse::<f64>().map_err(|e| e.to_string())?,
                        im.parse::<f64>().map_err(|e| e.to_string())?,
                    ),
                    None => (arg.parse::<f64>().map_err(|e| e.to_string())?, 0.0),
                };
                Ok(OmegaRule::Constant(Complex64::new(re, im)))
            }
            "geometric" => {
                let q = arg.parse::<f64>().map_err(|e| e.to_string())?;
                if !(0.0 < q && q < 1.0) {
                    return Err(format!("geometric ratio must be in (0, 1), got {q}"));
                }
                Ok(OmegaRule::Geometric(q))
            }
            other => Err(format!("unknown rule \"{other}\"; use constant: or geometric:")),
        }
    }

    pub fn sample(&self, n_max: usize) -> Vec<Complex64> {
        match self {
            OmegaRule::Constant(c) => vec![*c; n_max],
            OmegaRule::Geometric(q) => (1..=n_max)
                .map(|k| Complex64::new(1.0 - q.powi(k as i32), 0.0))
                .collect(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            OmegaRule::Constant(c) => format!("constant:{},{}", c.re, c.im),
            OmegaRule::Geometric(q) => format!("geometric:{q}"),
        }
    }
}
