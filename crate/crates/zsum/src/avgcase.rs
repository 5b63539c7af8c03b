//! Success amplification for average-case solvers: uniform masking turns an
//! arbitrary input into many independent uniform instances, and one extra
//! inner run over the mask sums stitches the per-group answers together.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::signed::{verify_certificate, ZeroSumCertificate};
use crate::vec::{PrimeModulus, SeqSlice, VecSequence};

/// Deterministic random stream with a recoverable seed.
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn residue(&mut self, p: PrimeModulus) -> u16 {
        self.rng.random_range(0..p.get())
    }

    /// `len` vectors drawn uniformly from Z_p^n, in index order.
    pub fn sequence(&mut self, p: PrimeModulus, n: usize, len: usize) -> Result<VecSequence> {
        let mut seq = VecSequence::empty(p, n)?;
        for slot in seq.push_raw(len) {
            *slot = self.rng.random_range(0..p.get());
        }
        Ok(seq)
    }
}

/// What one amplification run produced.
#[derive(Clone, Debug)]
pub struct BoostOutcome {
    /// A verified zero-sum certificate into the consumed prefix, if found.
    pub certificate: Option<ZeroSumCertificate>,
    /// Per group: whether the inner solver returned a valid local answer.
    pub group_success: Vec<bool>,
}

impl BoostOutcome {
    fn miss(group_success: Vec<bool>) -> Self {
        BoostOutcome {
            certificate: None,
            group_success,
        }
    }
}

/// Amplify an inner zero-sum search that succeeds with probability at least
/// `delta` on uniformly random windows of `width` vectors.
///
/// Consumes exactly `ceil(1/delta) * width^2` vectors: every vector is
/// shifted by a fresh uniform mask, the masked sequence is cut into groups
/// of `width` (each one uniformly distributed regardless of the input), and
/// the inner solver runs per group. With at least `width` valid groups, one
/// more inner run over the groups' mask sums selects groups whose combined
/// raw vectors sum to zero. Invalid inner answers only mark their group
/// failed; the final certificate is verified against the raw input before
/// being returned, so a reported success is always real.
pub fn boost(
    inner: &mut dyn FnMut(SeqSlice<'_>) -> Option<ZeroSumCertificate>,
    width: usize,
    delta: f64,
    seq: SeqSlice<'_>,
    rng: &mut RandomSource,
) -> Result<BoostOutcome> {
    if width == 0 {
        return Err(Error::BadParameter("width must be positive".into()));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::BadParameter(format!(
            "success bound {delta} must lie in (0, 1]"
        )));
    }
    let p = seq.p();
    let n = seq.dim();
    let m = p.modops();
    let repeat = (1.0 / delta).ceil() as usize;
    let group_count = repeat
        .checked_mul(width)
        .ok_or(Error::LengthOverflow(width as u128))?;
    let required = group_count
        .checked_mul(width)
        .ok_or(Error::LengthOverflow(width as u128))?;
    if seq.len() < required {
        return Err(Error::TooShort {
            required: required as u128,
            have: seq.len(),
        });
    }

    let masks = rng.sequence(p, n, required)?;
    let mut masked = VecSequence::empty(p, n)?;
    for i in 0..required {
        let row: Vec<u16> = seq
            .row(i)
            .iter()
            .zip(masks.row(i))
            .map(|(&a, &b)| m.add(a, b))
            .collect();
        masked.push_row(&row)?;
    }

    let mut group_success = Vec::with_capacity(group_count);
    let mut local: Vec<Option<ZeroSumCertificate>> = Vec::with_capacity(group_count);
    for g in 0..group_count {
        let window = masked.window(g * width, width);
        let found = inner(window)
            .filter(|cert| verify_certificate(window, cert).is_ok());
        group_success.push(found.is_some());
        local.push(found);
    }

    let lucky: Vec<usize> = group_success
        .iter()
        .enumerate()
        .filter(|(_, &ok)| ok)
        .map(|(g, _)| g)
        .take(width)
        .collect();
    if lucky.len() < width {
        return Ok(BoostOutcome::miss(group_success));
    }

    // Mask sums of the selected groups: the raw vectors under each local
    // certificate sum to minus that group's mask sum, so an inner hit over
    // these sums cancels everything.
    let mut mask_sums = VecSequence::empty(p, n)?;
    for &g in &lucky {
        let cert = local[g].as_ref().expect("lucky group has a certificate");
        let mut acc = vec![0u16; n];
        for &i in cert.indices() {
            for (a, &v) in acc.iter_mut().zip(masks.row(g * width + i as usize)) {
                *a = m.add(*a, v);
            }
        }
        mask_sums.push_row(&acc)?;
    }
    let outer = match inner(mask_sums.as_slice())
        .filter(|cert| verify_certificate(mask_sums.as_slice(), cert).is_ok())
    {
        Some(cert) => cert,
        None => return Ok(BoostOutcome::miss(group_success)),
    };

    let mut indices = Vec::new();
    for &k in outer.indices() {
        let g = lucky[k as usize];
        let cert = local[g].as_ref().expect("lucky group has a certificate");
        indices.extend(cert.indices().iter().map(|&i| (g * width) as u32 + i));
    }
    let combined = ZeroSumCertificate::from_unsorted(indices)?;
    if verify_certificate(seq.window(0, required), &combined).is_err() {
        return Ok(BoostOutcome::miss(group_success));
    }
    Ok(BoostOutcome {
        certificate: Some(combined),
        group_success,
    })
}
