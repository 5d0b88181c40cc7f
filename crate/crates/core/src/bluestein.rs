//! Short DFTs as cyclic convolutions (chirp transform).
//!
//! A length-S DFT with root ω becomes a length-S cyclic convolution by
//! weighting with powers of a square root η of ω: since 2·i·k = i² + k² −
//! (k−i)², each output is η^(k²) times a convolution coefficient. The
//! convolution itself is delegated to an injected callback, so the same code
//! runs against a naive convolver in tests and the full bivariate machinery
//! in the recursive multiplication pipeline.

use crate::dft::{self, PolyModXL};
use crate::error::{Error, Result};
use crate::fp::FieldElement;

/// The chirp weights for one (S, ω, η) choice: f_weights[i] = η^(i²) and
/// g_chirp[i] = η^(−i²), exponents reduced mod 2S where η has full order.
#[derive(Clone, Debug)]
pub struct ChirpPair<'p> {
    eta: FieldElement<'p>,
    f_weights: Vec<FieldElement<'p>>,
    g_chirp: PolyModXL<'p>,
}

impl<'p> ChirpPair<'p> {
    /// Builds the weight tables. `eta` must square to `omega`, which must
    /// have exact order `short_len` (a power of two).
    pub fn new(
        omega: &FieldElement<'p>,
        short_len: usize,
        eta: FieldElement<'p>,
    ) -> Result<Self> {
        dft::check_root_order(short_len, omega)?;
        if &eta.square() != omega {
            return Err(Error::PlanInvalid(
                "chirp base does not square to the transform root".into(),
            ));
        }
        let two_s = 2 * short_len;
        // η^j for j < 2S; η^(2S) = 1 since η² = ω and ω^S = 1.
        let mut powers = Vec::with_capacity(two_s);
        let mut acc = FieldElement::one(eta.context());
        for _ in 0..two_s {
            powers.push(acc.clone());
            acc = acc.mul(&eta);
        }
        debug_assert!(acc == FieldElement::one(eta.context()), "η^2S ≠ 1");
        let mut f_weights = Vec::with_capacity(short_len);
        let mut g_vals = Vec::with_capacity(short_len);
        for i in 0..short_len {
            let e = (i * i) % two_s;
            f_weights.push(powers[e].clone());
            g_vals.push(powers[(two_s - e) % two_s].clone());
        }
        debug_assert!(f_weights
            .iter()
            .zip(&g_vals)
            .all(|(f, g)| f.mul(g) == FieldElement::one(eta.context())));
        Ok(ChirpPair {
            eta,
            f_weights,
            g_chirp: PolyModXL::new(g_vals)?,
        })
    }

    /// η as ζ^(L/2S) when 2S divides the long length, otherwise as a square
    /// root of ω computed directly.
    pub fn derive(
        zeta: &FieldElement<'p>,
        long_len: usize,
        short_len: usize,
    ) -> Result<Self> {
        dft::check_root_order(long_len, zeta)?;
        let omega = zeta.pow_u64((long_len / short_len) as u64);
        if long_len % (2 * short_len) == 0 {
            let eta = zeta.pow_u64((long_len / (2 * short_len)) as u64);
            ChirpPair::new(&omega, short_len, eta)
        } else {
            ChirpPair::from_short_root(&omega, short_len)
        }
    }

    /// η as a square root of ω; needs 2S to divide p − 1.
    pub fn from_short_root(omega: &FieldElement<'p>, short_len: usize) -> Result<Self> {
        let eta = omega.sqrt().ok_or(Error::RootUnavailable {
            order: 2 * short_len as u64,
            exponent: omega.context().two_adicity(),
        })?;
        ChirpPair::new(omega, short_len, eta)
    }

    pub fn len(&self) -> usize {
        self.f_weights.len()
    }

    pub fn is_empty(&self) -> bool {
        false // S ≥ 1 by construction
    }

    pub fn eta(&self) -> &FieldElement<'p> {
        &self.eta
    }

    pub fn f_weights(&self) -> &[FieldElement<'p>] {
        &self.f_weights
    }

    pub fn g_chirp(&self) -> &PolyModXL<'p> {
        &self.g_chirp
    }
}

/// Length-S DFT through one cyclic convolution: weight the input by
/// f_weights, convolve with g_chirp via the injected callback, weight the
/// result by f_weights again. Output equals `dft_naive` against ω.
pub fn short_dft_via_convolution<'p, C>(
    a: &PolyModXL<'p>,
    chirp: &ChirpPair<'p>,
    convolver: &C,
) -> Result<PolyModXL<'p>>
where
    C: Fn(PolyModXL<'p>, PolyModXL<'p>) -> Result<PolyModXL<'p>>,
{
    if a.len() != chirp.len() {
        return Err(Error::PlanInvalid(format!(
            "input length {} does not match chirp length {}",
            a.len(),
            chirp.len()
        )));
    }
    let weighted = PolyModXL::new(
        a.coeffs()
            .iter()
            .zip(chirp.f_weights())
            .map(|(c, w)| c.mul(w))
            .collect(),
    )?;
    let h = convolver(weighted, chirp.g_chirp().clone())?;
    if h.len() != chirp.len() {
        return Err(Error::PlanInvalid(format!(
            "convolver returned length {}, expected {}",
            h.len(),
            chirp.len()
        )));
    }
    PolyModXL::new(
        h.coeffs()
            .iter()
            .zip(chirp.f_weights())
            .map(|(c, w)| c.mul(w))
            .collect(),
    )
}
